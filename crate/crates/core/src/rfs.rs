//! The standard recursive fermion system `(a, ζ, φ)` in `O_2` and the CAR
//! generators `Φ(a_n) = ζ^{n−1}(a)` it produces.

use crate::config::Limits;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::maps::{apply_phi, apply_zeta, iterate};
use crate::monomial::{words, Monomial};
use crate::report::{Check, Report};
use crate::scalar::Scalar;

/// The seed `a = ψ_1 ψ_2*`.
pub fn rfs_seed() -> Element {
    Element::from_monomial(2, Monomial::new(vec![1], vec![2]), Scalar::from_int(1))
}

/// The image of the CAR annihilator `a_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CarGenerator {
    pub n: usize,
    pub value: Element,
}

pub fn car_generator(n: usize, limits: &Limits) -> Result<CarGenerator> {
    if n == 0 {
        return Err(Error::InvalidArgument("CAR mode index starts at 1".into()));
    }
    Limits::check("CAR mode index", n, limits.max_car_index)?;
    Ok(CarGenerator {
        n,
        value: iterate(apply_zeta, &rfs_seed(), n - 1)?,
    })
}

fn generators(count: usize, limits: &Limits) -> Result<Vec<Element>> {
    (1..=count)
        .map(|n| car_generator(n, limits).map(|g| g.value))
        .collect()
}

/// Membership in the CAR subalgebra `A_C = O_2^{U(1)}`: every monomial balanced.
pub fn in_car_subalgebra(x: &Element) -> bool {
    x.d() == 2 && x.is_gauge_invariant()
}

/// All monomials `ψ_I ψ_J*` over `{1, 2}` with `|I|, |J| ≤ level`.
pub fn monomial_basis(level: usize) -> Vec<Element> {
    let all_words: Vec<Vec<u8>> = (0..=level).flat_map(|len| words(2, len)).collect();
    let mut out = Vec::with_capacity(all_words.len() * all_words.len());
    for i in &all_words {
        for j in &all_words {
            out.push(Element::from_monomial(
                2,
                Monomial::new(i.clone(), j.clone()),
                Scalar::from_int(1),
            ));
        }
    }
    out
}

/// Balanced monomials `ψ_I ψ_J*` with `|I| = |J| ≤ level`, spanning the UHF levels of `A_C`.
pub fn balanced_basis(level: usize) -> Vec<Element> {
    let mut out = Vec::new();
    for len in 0..=level {
        let ws: Vec<Vec<u8>> = words(2, len).collect();
        for i in &ws {
            for j in &ws {
                out.push(Element::from_monomial(
                    2,
                    Monomial::new(i.clone(), j.clone()),
                    Scalar::from_int(1),
                ));
            }
        }
    }
    out
}

/// Anticommutation relations among the first `modes` CAR generators:
/// `{a_m, a_n} = 0` for `m ≤ n` and `{a_m, a_n*} = δ_{mn} I` for all `m, n`.
/// The relations `{a_m*, a_n*} = 0` are adjoints of the first family and are not listed.
pub fn check_car_relations(modes: usize, limits: &Limits) -> Result<Report> {
    let gens = generators(modes, limits)?;
    let adjoints: Vec<Element> = gens.iter().map(Element::adjoint).collect();
    let zero = Element::zero(2);
    let id = Element::identity(2);
    let mut report = Report::new(format!("CAR relations, {} modes", modes));
    for m in 0..modes {
        for n in m..modes {
            let ac = gens[m].anticommutator(&gens[n])?;
            report.push(Check::identity(
                format!("{{a_{}, a_{}}} = 0", m + 1, n + 1),
                vec![m + 1, n + 1],
                &ac,
                &zero,
            ));
        }
    }
    for m in 0..modes {
        for n in 0..modes {
            let ac = gens[m].anticommutator(&adjoints[n])?;
            let expected = if m == n { &id } else { &zero };
            report.push(Check::identity(
                format!("{{a_{}, a_{}*}} = {}", m + 1, n + 1, if m == n { "I" } else { "0" }),
                vec![m + 1, n + 1],
                &ac,
                expected,
            ));
        }
    }
    Ok(report)
}

/// Evaluates both sides of the reduction
/// `{a_m, a_n} = φ^{m−1}({a, ζ^{n−m}(a)})` and
/// `{a_m, a_n*} = φ^{m−1}({a, ζ^{n−m}(a*)})` for `m ≤ n ≤ modes`.
pub fn check_reduction_chain(modes: usize, limits: &Limits) -> Result<Report> {
    let gens = generators(modes, limits)?;
    let a = rfs_seed();
    let a_adj = a.adjoint();
    let mut report = Report::new(format!("RFS reduction chain, {} modes", modes));
    for m in 1..=modes {
        for n in m..=modes {
            let (gm, gn) = (&gens[m - 1], &gens[n - 1]);
            let inner = a.anticommutator(&iterate(apply_zeta, &a, n - m)?)?;
            let reduced = iterate(apply_phi, &inner, m - 1)?;
            report.push(Check::identity(
                format!("{{a_{m}, a_{n}}} = phi^{}({{a, zeta^{}(a)}})", m - 1, n - m),
                vec![m, n],
                &gm.anticommutator(gn)?,
                &reduced,
            ));
            let inner = a.anticommutator(&iterate(apply_zeta, &a_adj, n - m)?)?;
            let reduced = iterate(apply_phi, &inner, m - 1)?;
            report.push(Check::identity(
                format!("{{a_{m}, a_{n}*}} = phi^{}({{a, zeta^{}(a*)}})", m - 1, n - m),
                vec![m, n],
                &gm.anticommutator(&gn.adjoint())?,
                &reduced,
            ));
        }
    }
    Ok(report)
}

/// Recursive-fermion-system axioms for the standard triple:
/// `a² = 0`, `{a, a*} = I`, and for every basis monomial `X`, `Y` of level
/// at most `level`: `{a, ζ(X)} = 0`, `ζ(X)* = ζ(X*)`, `ζ(X)ζ(Y) = φ(XY)`.
pub fn check_rfs_axioms(level: usize, limits: &Limits) -> Result<Report> {
    Limits::check("basis level", level, limits.max_basis_level)?;
    let a = rfs_seed();
    let id = Element::identity(2);
    let zero = Element::zero(2);
    let mut report = Report::new(format!("RFS axioms, basis level {}", level));
    report.push(Check::identity("a^2 = 0", vec![], &a.checked_mul(&a)?, &zero));
    report.push(Check::identity(
        "{a, a*} = I",
        vec![],
        &a.anticommutator(&a.adjoint())?,
        &id,
    ));

    let basis = monomial_basis(level);
    let zetas = basis.iter().map(apply_zeta).collect::<Result<Vec<_>>>()?;
    for (i, x) in basis.iter().enumerate() {
        report.push(Check::identity(
            "{a, zeta(X)} = 0",
            vec![i],
            &a.anticommutator(&zetas[i])?,
            &zero,
        ));
        report.push(Check::identity(
            "zeta(X)* = zeta(X*)",
            vec![i],
            &zetas[i].adjoint(),
            &apply_zeta(&x.adjoint())?,
        ));
    }
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            report.push(Check::identity(
                "zeta(X) zeta(Y) = phi(X Y)",
                vec![i, j],
                &zetas[i].checked_mul(&zetas[j])?,
                &apply_phi(&x.checked_mul(y)?)?,
            ));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::apply_delta_star;

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn seed_relations() {
        let a = rfs_seed();
        assert_eq!(a, Element::monomial(2, &[1], &[2]).unwrap());
        assert!((&a * &a).is_zero());
        assert!(a.anticommutator(&a.adjoint()).unwrap().equals(&Element::identity(2)));
    }

    #[test]
    fn generator_examples() {
        assert_eq!(car_generator(1, &limits()).unwrap().value, rfs_seed());
        let a2 = car_generator(2, &limits()).unwrap().value;
        let expected = &Element::monomial(2, &[1, 1], &[1, 2]).unwrap()
            - &Element::monomial(2, &[2, 1], &[2, 2]).unwrap();
        assert_eq!(a2, expected);
        assert_eq!(car_generator(4, &limits()).unwrap().value.len(), 8);
    }

    #[test]
    fn generator_shape() {
        for n in 1..=7 {
            let g = car_generator(n, &limits()).unwrap().value;
            assert_eq!(g.len(), 1 << (n - 1));
            assert!(g.terms().all(|(m, _)| m.creators().len() == n && m.level() == n));
            assert!(in_car_subalgebra(&g));
            assert!((&g * &g).is_zero());
        }
    }

    #[test]
    fn generator_errors() {
        assert!(matches!(car_generator(0, &limits()), Err(Error::InvalidArgument(_))));
        assert!(car_generator(13, &limits()).unwrap_err().is_resource_bound());
        let small = Limits {
            max_car_index: 3,
            ..Limits::default()
        };
        assert!(car_generator(4, &small).unwrap_err().is_resource_bound());
    }

    #[test]
    fn transfer_steps_down_one_mode() {
        for n in 1..=6 {
            let next = car_generator(n + 1, &limits()).unwrap().value;
            let this = car_generator(n, &limits()).unwrap().value;
            assert!(apply_delta_star(&next).unwrap().equals(&this));
        }
    }

    #[test]
    fn relation_counts() {
        let r = check_car_relations(1, &limits()).unwrap();
        assert_eq!(r.checks.len(), 2);
        assert!(r.all_passed());
        let r = check_car_relations(2, &limits()).unwrap();
        assert_eq!(r.checks.len(), 7);
        assert!(r.all_passed());
        let r = check_car_relations(5, &limits()).unwrap();
        assert_eq!(r.checks.len(), 40);
        assert!(r.all_passed(), "{}", r);
    }

    #[test]
    fn reduction_chain_holds() {
        let r = check_reduction_chain(4, &limits()).unwrap();
        assert!(r.all_passed(), "{}", r);
    }

    #[test]
    fn chain_with_phi_on_adjoint_does_not_hold() {
        // {a, φ(a*)} = 2 ψ_1ψ_2ψ_1*ψ_2*, so the middle identity needs ζ, not φ.
        let a = rfs_seed();
        let lhs = a.anticommutator(&apply_phi(&a.adjoint()).unwrap()).unwrap();
        let expected = Element::monomial(2, &[1, 2], &[2, 1]).unwrap().scale(&Scalar::from_int(2));
        assert!(lhs.equals(&expected));
    }

    #[test]
    fn axioms_small_levels() {
        let r = check_rfs_axioms(0, &limits()).unwrap();
        assert_eq!(r.checks.len(), 5);
        assert!(r.all_passed());
        let r = check_rfs_axioms(1, &limits()).unwrap();
        assert!(r.all_passed(), "{}", r);
        assert!(check_rfs_axioms(5, &limits()).unwrap_err().is_resource_bound());
        let x = Element::monomial(2, &[1], &[2]).unwrap();
        assert_eq!(
            apply_zeta(&x).unwrap().adjoint(),
            apply_zeta(&Element::monomial(2, &[2], &[1]).unwrap()).unwrap()
        );
    }

    #[test]
    fn membership() {
        assert!(in_car_subalgebra(&car_generator(3, &limits()).unwrap().value));
        assert!(!in_car_subalgebra(&Element::generator(2, 1).unwrap()));
        assert!(in_car_subalgebra(&Element::identity(2)));
        assert!(!in_car_subalgebra(&Element::identity(3)));
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(monomial_basis(0).len(), 1);
        assert_eq!(monomial_basis(1).len(), 9);
        assert_eq!(balanced_basis(1).len(), 5);
        assert_eq!(balanced_basis(2).len(), 21);
    }
}
