//! The maps on `O_2` used by the construction: the canonical endomorphism
//! `ρ` (which is also the `φ` of the standard recursive fermion system),
//! the twisted map `ζ`, the shift `δ` and its transfer operator `δ_*`.

use std::fmt;
use std::str::FromStr;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::report::{Check, Report};
use crate::scalar::Scalar;
use crate::uhf;

fn require_o2(x: &Element) -> Result<()> {
    if x.d() != 2 {
        Err(Error::UnsupportedGeneratorCount(x.d()))
    } else {
        Ok(())
    }
}

/// `Σ_i sign_i ψ_i x ψ_i*` over the given `(letter, sign)` pairs.
fn conjugate_sum(x: &Element, letters: &[(u8, i64)]) -> Result<Element> {
    require_o2(x)?;
    let mut terms = Vec::with_capacity(x.len() * letters.len());
    for &(letter, sign) in letters {
        let s = Scalar::from_int(sign);
        for (m, c) in x.terms() {
            let wrapped = m.prepend_creator(letter).prepend_annihilator(letter);
            terms.push((wrapped, c * &s));
        }
    }
    Element::from_terms(2, terms)
}

/// `ρ(x) = ψ_1 x ψ_1* + ψ_2 x ψ_2*`.
pub fn apply_rho(x: &Element) -> Result<Element> {
    conjugate_sum(x, &[(1, 1), (2, 1)])
}

/// `φ = ρ` for the standard recursive fermion system.
pub fn apply_phi(x: &Element) -> Result<Element> {
    apply_rho(x)
}

/// `ζ(x) = ψ_1 x ψ_1* − ψ_2 x ψ_2*`.
pub fn apply_zeta(x: &Element) -> Result<Element> {
    conjugate_sum(x, &[(1, 1), (2, -1)])
}

/// `δ(x) = ψ_1 x ψ_1*`. Multiplicative but not unital.
pub fn apply_delta(x: &Element) -> Result<Element> {
    conjugate_sum(x, &[(1, 1)])
}

/// `δ_*(x) = ψ_1* x ψ_1`.
pub fn apply_delta_star(x: &Element) -> Result<Element> {
    require_o2(x)?;
    let s1 = Element::generator(2, 1)?;
    s1.adjoint().checked_mul(x)?.checked_mul(&s1)
}

/// Applies `f` `n` times.
pub fn iterate(f: fn(&Element) -> Result<Element>, x: &Element, n: usize) -> Result<Element> {
    let mut acc = x.clone();
    for _ in 0..n {
        acc = f(&acc)?;
    }
    Ok(acc)
}

/// `δ^k(I) = ψ_1^k ψ_1^{*k}`, the range projection of `ψ_1^k`.
pub fn range_projection(k: usize) -> Element {
    let w = vec![1u8; k];
    Element::from_monomial(2, Monomial::new(w.clone(), w), Scalar::from_int(1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedMap {
    Rho,
    Zeta,
    Phi,
    Delta,
    DeltaStar,
}

impl NamedMap {
    pub const ALL: [NamedMap; 5] = [
        NamedMap::Rho,
        NamedMap::Zeta,
        NamedMap::Phi,
        NamedMap::Delta,
        NamedMap::DeltaStar,
    ];

    pub fn apply(self, x: &Element) -> Result<Element> {
        match self {
            NamedMap::Rho => apply_rho(x),
            NamedMap::Zeta => apply_zeta(x),
            NamedMap::Phi => apply_phi(x),
            NamedMap::Delta => apply_delta(x),
            NamedMap::DeltaStar => apply_delta_star(x),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            NamedMap::Rho => "rho",
            NamedMap::Zeta => "zeta",
            NamedMap::Phi => "phi",
            NamedMap::Delta => "delta",
            NamedMap::DeltaStar => "delta-star",
        }
    }
}

impl fmt::Display for NamedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedMap {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rho" => Ok(NamedMap::Rho),
            "zeta" => Ok(NamedMap::Zeta),
            "phi" => Ok(NamedMap::Phi),
            "delta" => Ok(NamedMap::Delta),
            "delta-star" | "delta_star" => Ok(NamedMap::DeltaStar),
            _ => Err(Error::InvalidArgument(format!("unknown map {:?}", s))),
        }
    }
}

/// Fixed non-real scalar used for the linearity checks.
fn linearity_scalar() -> Scalar {
    &Scalar::from_fraction(1, 2) + &(&Scalar::i() * &Scalar::sqrt2())
}

/// Positivity of `δ_*` on `x*x`, via its conditional expectation onto the
/// gauge-invariant part (which is positive whenever the element is).
pub(crate) fn positivity_check(x: &Element, index: usize, tolerance: f64) -> Result<Check> {
    let image = apply_delta_star(&x.adjoint().checked_mul(x)?)?;
    let a0 = image.degree_part(0);
    let level = a0.min_level();
    let min_eig = uhf::to_matrix_level(&a0, level)?.min_hermitian_eigenvalue();
    Ok(Check::condition(
        "E(delta_star(x* x)) >= 0",
        vec![index],
        min_eig >= -tolerance,
    )
    .with_detail(format!("min eigenvalue {:.3e}", min_eig)))
}

/// Checks the *-endomorphism identities of `map` on the samples: linearity,
/// multiplicativity (for `ζ` replaced by `ζ(x)ζ(y) = φ(xy)`), adjoint
/// preservation, degree preservation and unitality where it applies.
/// For `δ_*`, which is not multiplicative, positivity replaces multiplicativity.
pub fn verify_endomorphism(map: NamedMap, samples: &[Element]) -> Result<Report> {
    let mut report = Report::new(format!("endomorphism {}", map));
    let c = linearity_scalar();
    let images = samples.iter().map(|x| map.apply(x)).collect::<Result<Vec<_>>>()?;

    for (i, x) in samples.iter().enumerate() {
        for (j, y) in samples.iter().enumerate() {
            let lhs = map.apply(&x.checked_add(&y.scale(&c))?)?;
            let rhs = images[i].checked_add(&images[j].scale(&c))?;
            report.push(Check::identity("f(x + c y) = f(x) + c f(y)", vec![i, j], &lhs, &rhs));

            let product = x.checked_mul(y)?;
            match map {
                NamedMap::Rho | NamedMap::Phi | NamedMap::Delta => {
                    let lhs = map.apply(&product)?;
                    let rhs = images[i].checked_mul(&images[j])?;
                    report.push(Check::identity("f(x y) = f(x) f(y)", vec![i, j], &lhs, &rhs));
                }
                NamedMap::Zeta => {
                    let lhs = images[i].checked_mul(&images[j])?;
                    let rhs = apply_phi(&product)?;
                    report.push(Check::identity("zeta(x) zeta(y) = phi(x y)", vec![i, j], &lhs, &rhs));
                }
                NamedMap::DeltaStar => {}
            }
        }
    }

    for (i, x) in samples.iter().enumerate() {
        let lhs = map.apply(&x.adjoint())?;
        let rhs = images[i].adjoint();
        report.push(Check::identity("f(x*) = f(x)*", vec![i], &lhs, &rhs));

        let preserves_degree = x.grade().components().iter().all(|(&g, part)| {
            map.apply(part)
                .map(|img| img.is_empty() || img.homogeneous_degree() == Some(g))
                .unwrap_or(false)
        });
        report.push(Check::condition("f preserves gauge degree", vec![i], preserves_degree));
        if x.is_gauge_invariant() {
            report.push(Check::condition(
                "f(A_C) in A_C",
                vec![i],
                images[i].is_gauge_invariant(),
            ));
        }
        if map == NamedMap::DeltaStar {
            report.push(positivity_check(x, i, 1e-9)?);
        }
    }

    let id = Element::identity(2);
    match map {
        NamedMap::Rho | NamedMap::Phi => {
            report.push(Check::identity("f(I) = I", vec![], &map.apply(&id)?, &id));
        }
        NamedMap::Delta => {
            let image = map.apply(&id)?;
            report.push(Check::identity("delta(I) = s1 s1*", vec![], &image, &range_projection(1)));
            report.push(Check::condition("delta(I) != I", vec![], !image.equals(&id)));
        }
        NamedMap::DeltaStar => {
            report.push(Check::identity("delta_star(I) = I", vec![], &map.apply(&id)?, &id));
        }
        NamedMap::Zeta => {
            let z = map.apply(&id)?;
            report.push(Check::identity("zeta(I)^2 = I", vec![], &z.checked_mul(&z)?, &id));
        }
    }
    Ok(report)
}

/// Checks that `δ_*` is a full transfer operator for `δ` on the samples:
/// `δ_*(δ(x) y) = x δ_*(y)` for every ordered pair, `δ(δ_*(x)) = δ(I) x δ(I)`,
/// `δ_*(δ(x)) = x`, adjoint preservation and positivity for every sample.
pub fn verify_transfer(samples: &[Element]) -> Result<Report> {
    let mut report = Report::new("transfer operator delta_star");
    let e1 = range_projection(1);
    for (i, x) in samples.iter().enumerate() {
        let dx = apply_delta(x)?;
        for (j, y) in samples.iter().enumerate() {
            let lhs = apply_delta_star(&dx.checked_mul(y)?)?;
            let rhs = x.checked_mul(&apply_delta_star(y)?)?;
            report.push(Check::identity(
                "delta_star(delta(x) y) = x delta_star(y)",
                vec![i, j],
                &lhs,
                &rhs,
            ));
        }
        let lhs = apply_delta(&apply_delta_star(x)?)?;
        let rhs = e1.checked_mul(x)?.checked_mul(&e1)?;
        report.push(Check::identity(
            "delta(delta_star(x)) = delta(I) x delta(I)",
            vec![i],
            &lhs,
            &rhs,
        ));
        report.push(Check::identity(
            "delta_star(delta(x)) = x",
            vec![i],
            &apply_delta_star(&dx)?,
            x,
        ));
        report.push(Check::identity(
            "delta_star(x*) = delta_star(x)*",
            vec![i],
            &apply_delta_star(&x.adjoint())?,
            &apply_delta_star(x)?.adjoint(),
        ));
        report.push(positivity_check(x, i, 1e-9)?);
    }
    Ok(report)
}
