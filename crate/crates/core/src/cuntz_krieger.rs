//! The core `F_A` of the Cuntz-Krieger algebra with the all-ones matrix,
//! realised inside `O_2` with `S_i = ψ_i`, and its strict inclusion in `A_C`.

use std::collections::BTreeMap;

use num::Zero;
use serde::Serialize;

use crate::config::Limits;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::monomial::{words, Monomial};
use crate::report::{Check, Report};
use crate::scalar::Scalar;

/// Generators `S_μ P_i S_ν*` with `|μ| = |ν| = k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaLevel {
    pub k: usize,
    pub generators: Vec<Monomial>,
}

impl FaLevel {
    pub fn elements(&self) -> Vec<Element> {
        self.generators
            .iter()
            .map(|m| Element::from_monomial(2, m.clone(), Scalar::from_int(1)))
            .collect()
    }
}

pub fn fa_generators(k: usize, limits: &Limits) -> Result<FaLevel> {
    Limits::check("F_A level", k + 1, limits.max_level)?;
    let ws: Vec<Vec<u8>> = words(2, k).collect();
    let mut generators = Vec::with_capacity(2 * ws.len() * ws.len());
    for mu in &ws {
        for nu in &ws {
            for i in 1..=2u8 {
                let mut c = mu.clone();
                c.push(i);
                let mut a = nu.clone();
                a.push(i);
                generators.push(Monomial::new(c, a));
            }
        }
    }
    Ok(FaLevel { k, generators })
}

/// `P_i = ψ_iψ_i*`.
pub fn projection(i: u8) -> Element {
    Element::from_monomial(2, Monomial::new(vec![i], vec![i]), Scalar::from_int(1))
}

/// `S = (ψ_1 + ψ_2)/√2`.
pub fn average_isometry() -> Element {
    let s = Element::from_terms(
        2,
        [
            (Monomial::new(vec![1], vec![]), Scalar::from_int(1)),
            (Monomial::new(vec![2], vec![]), Scalar::from_int(1)),
        ],
    )
    .expect("letters are in range");
    s.scale(&Scalar::inv_sqrt2())
}

type SparseVector = BTreeMap<Monomial, Scalar>;

/// Row echelon basis over the coefficient field; each stored row has a
/// distinct smallest key with coefficient one.
#[derive(Default)]
struct Echelon {
    rows: BTreeMap<Monomial, SparseVector>,
}

impl Echelon {
    fn reduce(&self, mut v: SparseVector) -> SparseVector {
        let mut cursor: Option<Monomial> = None;
        loop {
            let next = v
                .keys()
                .find(|m| cursor.as_ref().is_none_or(|c| *m > c) && self.rows.contains_key(*m))
                .cloned();
            let Some(pivot) = next else { break };
            let factor = v[&pivot].clone();
            for (m, c) in &self.rows[&pivot] {
                let updated = v.get(m).cloned().unwrap_or_else(Scalar::zero) - &factor * c;
                if updated.is_zero() {
                    v.remove(m);
                } else {
                    v.insert(m.clone(), updated);
                }
            }
            cursor = Some(pivot);
        }
        v
    }

    /// Adds `v` to the span; returns whether the rank grew.
    fn insert(&mut self, v: SparseVector) -> bool {
        let v = self.reduce(v);
        let Some((pivot, lead)) = v.iter().next() else {
            return false;
        };
        let inv = lead.inv().expect("leading coefficient is non-zero");
        let pivot = pivot.clone();
        let row = v.into_iter().map(|(m, c)| (m, &c * &inv)).collect();
        self.rows.insert(pivot, row);
        true
    }

    fn contains(&self, v: SparseVector) -> bool {
        self.reduce(v).is_empty()
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

fn vector_at_level(x: &Element, level: usize) -> Result<SparseVector> {
    Ok(x
        .expand_to_level(level)?
        .terms()
        .map(|(m, c)| (m.clone(), c.clone()))
        .collect())
}

fn span(level: &FaLevel) -> Echelon {
    let mut e = Echelon::default();
    for m in &level.generators {
        e.insert(BTreeMap::from([(m.clone(), Scalar::from_int(1))]));
    }
    e
}

/// Exact rank of a family of elements, compared at a common level.
pub fn rank(elements: &[Element]) -> Result<usize> {
    let level = elements.iter().map(Element::min_level).max().unwrap_or(0);
    let mut e = Echelon::default();
    for x in elements {
        e.insert(vector_at_level(x, level)?);
    }
    Ok(e.rank())
}

/// Whether `x`, expanded to level `k + 1`, lies in the span of the level-`k` generators.
pub fn fa_span_membership(x: &Element, k: usize, limits: &Limits) -> Result<bool> {
    if x.d() != 2 {
        return Err(Error::UnsupportedGeneratorCount(x.d()));
    }
    x.ensure_gauge_invariant()?;
    let level = fa_generators(k, limits)?;
    let v = vector_at_level(x, k + 1)?;
    Ok(span(&level).contains(v))
}

/// Dimension comparison at UHF level `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaComparison {
    pub k: usize,
    pub fa_dim: usize,
    pub car_dim: usize,
    /// Membership of `ψ_1ψ_2*` in the `F_A` span at level `k`.
    pub witness_in_fa: bool,
}

pub fn compare_fa_vs_car(k: usize, limits: &Limits) -> Result<FaComparison> {
    if k == 0 {
        return Err(Error::InvalidArgument("F_A comparison level starts at 1".into()));
    }
    let level = fa_generators(k - 1, limits)?;
    let fa_dim = rank(&level.elements())?;
    let car: Vec<Element> = words(2, k)
        .flat_map(|i| {
            words(2, k)
                .map(move |j| Element::from_monomial(2, Monomial::new(i.clone(), j), Scalar::from_int(1)))
        })
        .collect();
    let car_dim = rank(&car)?;
    let witness = Element::from_monomial(2, Monomial::new(vec![1], vec![2]), Scalar::from_int(1));
    let witness_in_fa = fa_span_membership(&witness, k - 1, limits)?;
    Ok(FaComparison {
        k,
        fa_dim,
        car_dim,
        witness_in_fa,
    })
}

/// Structural checks on `F_A` for levels `1..=k` plus the isometry and `Q_i = I`.
pub fn check_fa(k: usize, limits: &Limits) -> Result<Report> {
    let mut report = Report::new(format!("F_A core, levels 1..={}", k));
    let id = Element::identity(2);
    let s = average_isometry();
    report.push(Check::identity("S* S = I", vec![], &s.adjoint().checked_mul(&s)?, &id));
    report.push(Check::condition(
        "S S* != I",
        vec![],
        !s.checked_mul(&s.adjoint())?.equals(&id),
    ));
    let q = projection(1).checked_add(&projection(2))?;
    report.push(Check::identity("Q_i = P_1 + P_2 = I", vec![], &q, &id));
    let witness = Element::from_monomial(2, Monomial::new(vec![1], vec![2]), Scalar::from_int(1));
    let split = Element::from_terms(
        2,
        [
            (Monomial::new(vec![1, 1], vec![2, 1]), Scalar::from_int(1)),
            (Monomial::new(vec![1, 2], vec![2, 2]), Scalar::from_int(1)),
        ],
    )?;
    report.push(Check::identity("s1 s2* = S_1 P_1 S_2* + S_1 P_2 S_2*", vec![], &witness, &split));

    for level in 1..=k {
        let cmp = compare_fa_vs_car(level, limits)?;
        report.push(
            Check::condition(
                format!("dim F_A = 2^(2k-1) at k = {}", level),
                vec![level],
                cmp.fa_dim == 1 << (2 * level - 1),
            )
            .with_detail(format!("rank {}", cmp.fa_dim)),
        );
        report.push(
            Check::condition(
                format!("dim A_C = 2^(2k) at k = {}", level),
                vec![level],
                cmp.car_dim == 1 << (2 * level),
            )
            .with_detail(format!("rank {}", cmp.car_dim)),
        );
        // The witness leaves the span only at the first level: once expanded,
        // ψ_1ψ_2* = S_1 P_1 S_2* + S_1 P_2 S_2*.
        report.push(Check::condition(
            format!("s1 s2* in F_A at k = {} iff k >= 2", level),
            vec![level],
            cmp.witness_in_fa == (level >= 2),
        ));

        let gens = fa_generators(level - 1, limits)?;
        let elems = gens.elements();
        let fa = span(&gens);
        let star_closed = elems
            .iter()
            .map(|g| vector_at_level(&g.adjoint(), level).map(|v| fa.contains(v)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .all(|b| b);
        report.push(Check::condition(format!("F_A *-closed at k = {}", level), vec![level], star_closed));

        if level <= 2 {
            let mut closed = true;
            for x in &elems {
                for y in &elems {
                    closed &= fa.contains(vector_at_level(&x.checked_mul(y)?, level)?);
                }
            }
            report.push(Check::condition(
                format!("F_A closed under products at k = {}", level),
                vec![level],
                closed,
            ));
        }

        if level < k {
            let next = span(&fa_generators(level, limits)?);
            let mut coherent = true;
            for g in &elems {
                coherent &= next.contains(vector_at_level(g, level + 1)?);
            }
            report.push(Check::condition(
                format!("F_A level {} embeds in level {}", level, level + 1),
                vec![level],
                coherent,
            ));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rfs::in_car_subalgebra;

    fn limits() -> Limits {
        Limits::default()
    }

    fn mono(c: &[u8], a: &[u8]) -> Element {
        Element::monomial(2, c, a).unwrap()
    }

    #[test]
    fn generator_examples() {
        let l0 = fa_generators(0, &limits()).unwrap();
        assert_eq!(
            l0.generators,
            vec![Monomial::new(vec![1], vec![1]), Monomial::new(vec![2], vec![2])]
        );
        let l1 = fa_generators(1, &limits()).unwrap();
        assert_eq!(l1.generators.len(), 8);
        assert!(l1.elements().iter().all(in_car_subalgebra));
        assert!(fa_generators(8, &limits()).unwrap_err().is_resource_bound());
    }

    #[test]
    fn membership_examples() {
        assert!(fa_span_membership(&mono(&[1], &[1]), 0, &limits()).unwrap());
        assert!(!fa_span_membership(&mono(&[1], &[2]), 0, &limits()).unwrap());
        for k in 1..=3 {
            assert!(fa_span_membership(&mono(&[1], &[2]), k, &limits()).unwrap());
        }
        assert!(fa_span_membership(&Element::identity(2), 2, &limits()).unwrap());
        assert!(fa_span_membership(&Element::generator(2, 1).unwrap(), 0, &limits()).is_err());
        assert!(matches!(
            fa_span_membership(&mono(&[1, 2, 1], &[2, 2, 1]), 0, &limits()),
            Err(Error::LevelTooSmall { .. })
        ));
    }

    #[test]
    fn membership_of_combinations() {
        let x = &mono(&[1, 2], &[2, 2]) + &mono(&[1], &[1]).scale(&Scalar::sqrt2());
        assert!(fa_span_membership(&x, 1, &limits()).unwrap());
        let y = &x + &mono(&[2, 1], &[2, 2]);
        assert!(!fa_span_membership(&y, 1, &limits()).unwrap());
    }

    #[test]
    fn isometry() {
        let s = average_isometry();
        assert!((&s.adjoint() * &s).equals(&Element::identity(2)));
        let ss = &s * &s.adjoint();
        let expected = (&(&mono(&[1], &[1]) + &mono(&[1], &[2])) + &(&mono(&[2], &[1]) + &mono(&[2], &[2])))
            .scale(&Scalar::from_fraction(1, 2));
        assert!(ss.equals(&expected));
        assert!((&ss * &ss).equals(&ss));
        assert!(!in_car_subalgebra(&s));
    }

    #[test]
    fn dimensions() {
        for (k, fa, car, witness) in [(1, 2, 4, false), (2, 8, 16, true), (3, 32, 64, true)] {
            let c = compare_fa_vs_car(k, &limits()).unwrap();
            assert_eq!((c.fa_dim, c.car_dim, c.witness_in_fa), (fa, car, witness));
        }
    }

    #[test]
    fn rank_detects_dependence() {
        let a = mono(&[1], &[1]);
        let b = mono(&[2], &[2]);
        let c = &a + &b;
        assert_eq!(rank(&[a.clone(), b.clone(), c]).unwrap(), 2);
        assert_eq!(rank(&[a, b, Element::identity(2)]).unwrap(), 2);
        assert_eq!(rank(&[]).unwrap(), 0);
    }

    #[test]
    fn structural_report() {
        let r = check_fa(3, &limits()).unwrap();
        assert!(r.all_passed(), "{}", r);
    }
}
