//! `O_2` as the crossed product `A_C ×_δ Z`.
//!
//! Every polynomial `x ∈ O_2` is written uniquely as
//!
//! ```text
//! x = Σ_{k>0} ψ_1^{*k} a_{-k} + a_0 + Σ_{k>0} a_k ψ_1^k,   a_k ∈ A_C,
//! ```
//!
//! with coefficients reduced against the range projections `e_k = ψ_1^kψ_1^{*k}`:
//! `a_k = a_k e_k` and `a_{-k} = e_k a_{-k}`. Without that reduction the
//! coefficients are only determined up to the kernel of right (left)
//! multiplication by `ψ_1^k` (`ψ_1^{*k}`).

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::config::Limits;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::maps::{apply_delta, apply_delta_star, iterate, range_projection};
use crate::monomial::Monomial;
use crate::permutative::norm_lower_bounds;
use crate::report::{Check, Outcome, Report};
use crate::scalar::Scalar;
use crate::uhf::norm_gauge_invariant;

/// Finitely supported map `k ↦ a_k` with `a_k ∈ A_C`. Positive `k` stands for
/// `a_k ψ_1^k`, negative `k` for `ψ_1^{*|k|} a_k`, zero for `a_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedElement {
    coeffs: BTreeMap<i64, Element>,
}

fn s1_power(k: usize) -> Element {
    Element::from_monomial(2, Monomial::new(vec![1; k], vec![]), Scalar::from_int(1))
}

fn s1_adjoint_power(k: usize) -> Element {
    Element::from_monomial(2, Monomial::new(vec![], vec![1; k]), Scalar::from_int(1))
}

fn delta_power(x: &Element, k: usize) -> Result<Element> {
    iterate(apply_delta, x, k)
}

fn delta_star_power(x: &Element, k: usize) -> Result<Element> {
    iterate(apply_delta_star, x, k)
}

impl CrossedElement {
    pub fn zero() -> Self {
        Self {
            coeffs: BTreeMap::new(),
        }
    }

    /// Builds a crossed element, reducing each coefficient against its range
    /// projection and dropping coefficients that vanish.
    pub fn new<I>(coeffs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, Element)>,
    {
        let mut acc: BTreeMap<i64, Element> = BTreeMap::new();
        for (k, a) in coeffs {
            if a.d() != 2 {
                return Err(Error::UnsupportedGeneratorCount(a.d()));
            }
            a.ensure_gauge_invariant()?;
            let entry = acc.entry(k).or_insert_with(|| Element::zero(2));
            *entry = entry.checked_add(&a)?;
        }
        let mut coeffs = BTreeMap::new();
        for (k, a) in acc {
            let e = range_projection(k.unsigned_abs() as usize);
            let reduced = if k >= 0 { a.checked_mul(&e)? } else { e.checked_mul(&a)? };
            let reduced = reduced.normalize();
            if !reduced.is_empty() {
                coeffs.insert(k, reduced);
            }
        }
        Ok(Self { coeffs })
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, Element> {
        &self.coeffs
    }

    pub fn coefficient(&self, k: i64) -> Element {
        self.coeffs.get(&k).cloned().unwrap_or_else(|| Element::zero(2))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// Prints the normal-form layout, e.g. `s1*^2 (a_-2) + (a_0) + (a_1) s1^1`.
impl fmt::Display for CrossedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(&k, a)| match k {
                0 => format!("({})", a),
                k if k > 0 => format!("({}) s1^{}", a, k),
                k => format!("s1*^{} ({})", -k, a),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Decomposes a polynomial: `a_g = x_g ψ_1^{*g}` for `g > 0`, `a_g = ψ_1^{|g|} x_g`
/// for `g < 0`, where `x_g` is the degree-`g` component.
pub fn from_cuntz(x: &Element) -> Result<CrossedElement> {
    if x.d() != 2 {
        return Err(Error::UnsupportedGeneratorCount(x.d()));
    }
    let mut coeffs = Vec::new();
    for (&g, part) in x.grade().components() {
        let k = g.unsigned_abs() as usize;
        let a = match g {
            0 => part.clone(),
            g if g > 0 => part.checked_mul(&s1_adjoint_power(k))?,
            _ => s1_power(k).checked_mul(part)?,
        };
        coeffs.push((g, a));
    }
    CrossedElement::new(coeffs)
}

pub fn to_cuntz(ce: &CrossedElement) -> Result<Element> {
    let mut acc = Element::zero(2);
    for (&k, a) in &ce.coeffs {
        a.ensure_gauge_invariant()?;
        let n = k.unsigned_abs() as usize;
        let term = match k {
            0 => a.clone(),
            k if k > 0 => a.checked_mul(&s1_power(n))?,
            _ => s1_adjoint_power(n).checked_mul(a)?,
        };
        acc = acc.checked_add(&term)?;
    }
    Ok(acc)
}

/// Product of two single terms in normal form, as `(k, coefficient)`.
fn term_product(k: i64, a: &Element, l: i64, b: &Element) -> Result<(i64, Element)> {
    let (ku, lu) = (k.unsigned_abs() as usize, l.unsigned_abs() as usize);
    match (k >= 0, l >= 0) {
        // (a ψ^k)(b ψ^l) = a δ^k(b) ψ^{k+l}
        (true, true) => Ok((k + l, a.checked_mul(&delta_power(b, ku)?)?)),
        // (ψ^{*k} a)(ψ^{*l} b) = ψ^{*(k+l)} δ^l(a) b
        (false, false) => Ok((k + l, delta_power(a, lu)?.checked_mul(b)?)),
        // (ψ^{*k} a)(b ψ^l) = ψ^{*k} c ψ^l with c = ab, contracted by δ_*
        (false, true) => {
            let c = a.checked_mul(b)?;
            let steps = ku.min(lu);
            Ok((l + k, delta_star_power(&c, steps)?))
        }
        // (a ψ^k)(ψ^{*l} b): ψ^k ψ^{*l} = ψ^{k−l} e_l or e_k ψ^{*(l−k)}
        (true, false) => {
            if ku >= lu {
                let inner = range_projection(lu).checked_mul(b)?;
                Ok((k + l, a.checked_mul(&delta_power(&inner, ku - lu)?)?))
            } else {
                let inner = a.checked_mul(&range_projection(ku))?;
                Ok((k + l, delta_power(&inner, lu - ku)?.checked_mul(b)?))
            }
        }
    }
}

/// Multiplication carried out in normal form using `ψ_1 a = δ(a) ψ_1`,
/// `ψ_1* c ψ_1 = δ_*(c)` and `ψ_1^k ψ_1^{*k} = δ^k(I)`.
pub fn mul_crossed(u: &CrossedElement, v: &CrossedElement) -> Result<CrossedElement> {
    let mut terms = Vec::new();
    for (&k, a) in &u.coeffs {
        a.ensure_gauge_invariant()?;
        for (&l, b) in &v.coeffs {
            b.ensure_gauge_invariant()?;
            terms.push(term_product(k, a, l, b)?);
        }
    }
    CrossedElement::new(terms)
}

/// Covariance `ψ_1 a = δ(a) ψ_1` on gauge-invariant samples.
pub fn check_covariance(samples: &[Element]) -> Result<Report> {
    let s1 = s1_power(1);
    let mut report = Report::new("covariance s1 a = delta(a) s1");
    for (i, a) in samples.iter().enumerate() {
        a.ensure_gauge_invariant()?;
        let lhs = s1.checked_mul(a)?;
        let rhs = apply_delta(a)?.checked_mul(&s1)?;
        report.push(Check::identity("s1 a = delta(a) s1", vec![i], &lhs, &rhs));
    }
    Ok(report)
}

/// Result of checking `‖a_0‖ ≤ ‖x‖` for one element.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoefficientBound {
    /// Exact-structure norm of the degree-0 coefficient.
    pub a0_norm: f64,
    /// Compression norms of `x` at cutoffs `1..=depth`.
    pub lower_bounds: Vec<f64>,
    pub monotone: bool,
    /// `Pass` when `‖a_0‖ ≤ ℓ_depth + tolerance`, otherwise `Inconclusive`.
    pub outcome: Outcome,
}

impl CoefficientBound {
    pub fn lower_bound(&self) -> f64 {
        self.lower_bounds.last().copied().unwrap_or(0.0)
    }
}

/// Slack allowed between consecutive compression norms, which agree only up to rounding.
pub const MONOTONE_SLACK: f64 = 1e-12;

pub fn check_coefficient_bound(
    x: &Element,
    depth: usize,
    tolerance: f64,
    limits: &Limits,
) -> Result<CoefficientBound> {
    if x.d() != 2 {
        return Err(Error::UnsupportedGeneratorCount(x.d()));
    }
    let a0 = x.degree_part(0);
    let a0_norm = norm_gauge_invariant(&a0)?;
    let lower_bounds = norm_lower_bounds(x, depth, limits)?;
    let monotone = lower_bounds.windows(2).all(|w| w[1] >= w[0] - MONOTONE_SLACK);
    let last = *lower_bounds.last().expect("depth is positive");
    let outcome = if a0_norm <= last + tolerance {
        Outcome::Pass
    } else {
        Outcome::Inconclusive
    };
    Ok(CoefficientBound {
        a0_norm,
        lower_bounds,
        monotone,
        outcome,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rfs::car_generator;

    fn mono(c: &[u8], a: &[u8]) -> Element {
        Element::monomial(2, c, a).unwrap()
    }

    fn s(i: usize) -> Element {
        Element::generator(2, i).unwrap()
    }

    fn single(k: i64, a: Element) -> CrossedElement {
        CrossedElement::new([(k, a)]).unwrap()
    }

    #[test]
    fn generators_decompose_at_k_one() {
        assert_eq!(from_cuntz(&s(1)).unwrap(), single(1, mono(&[1], &[1])));
        assert_eq!(from_cuntz(&s(2)).unwrap(), single(1, mono(&[2], &[1])));
        let x = &s(1) * &s(2);
        let ce = from_cuntz(&x).unwrap();
        assert_eq!(ce, single(2, mono(&[1, 2], &[1, 1])));
        assert!(to_cuntz(&ce).unwrap().equals(&x));
    }

    #[test]
    fn to_cuntz_examples() {
        assert!(to_cuntz(&single(1, mono(&[1], &[1]))).unwrap().equals(&s(1)));
        assert!(to_cuntz(&single(0, Element::identity(2)))
            .unwrap()
            .equals(&Element::identity(2)));
    }

    #[test]
    fn negative_degrees() {
        let x = &s(2).adjoint() + &mono(&[], &[2, 1]);
        let ce = from_cuntz(&x).unwrap();
        assert_eq!(ce.coeffs().keys().copied().collect::<Vec<_>>(), vec![-2, -1]);
        assert!(to_cuntz(&ce).unwrap().equals(&x));
    }

    #[test]
    fn coefficients_are_reduced() {
        // I ψ_1 = ψ_1ψ_1* ψ_1, so the identity coefficient at k = 1 reduces to e_1.
        assert_eq!(single(1, Element::identity(2)), single(1, mono(&[1], &[1])));
        // a_1 = ψ_2ψ_2* is annihilated by e_1 on the right
        assert!(single(1, mono(&[2], &[2])).is_zero());
        assert!(CrossedElement::new([(1, s(1))]).is_err());
    }

    #[test]
    fn crossed_products() {
        let p = mul_crossed(&from_cuntz(&s(1)).unwrap(), &from_cuntz(&s(2)).unwrap()).unwrap();
        assert_eq!(p, single(2, mono(&[1, 2], &[1, 1])));
        let a = mono(&[1], &[2]);
        let b = car_generator(2, &Limits::default()).unwrap().value;
        let p = mul_crossed(&single(0, a.clone()), &single(0, b.clone())).unwrap();
        assert_eq!(p, single(0, (&a * &b).normalize()));
        let p = mul_crossed(&from_cuntz(&s(1)).unwrap(), &from_cuntz(&s(1).adjoint()).unwrap()).unwrap();
        assert_eq!(p, single(0, mono(&[1], &[1])));
        let p = mul_crossed(&from_cuntz(&s(1).adjoint()).unwrap(), &from_cuntz(&s(1)).unwrap()).unwrap();
        assert_eq!(p, single(0, Element::identity(2)));
    }

    #[test]
    fn covariance_examples() {
        let samples = vec![
            mono(&[1], &[2]),
            Element::identity(2),
            car_generator(2, &Limits::default()).unwrap().value,
        ];
        let r = check_covariance(&samples).unwrap();
        assert!(r.all_passed());
        assert!((&s(1) * &mono(&[1], &[2])).equals(&mono(&[1, 1], &[2])));
        assert!(check_covariance(&[s(1)]).is_err());
    }

    #[test]
    fn coefficient_bound_examples() {
        let limits = Limits::default();
        let sx = &mono(&[1], &[2]) + &mono(&[2], &[1]);
        let r = check_coefficient_bound(&sx, 6, 1e-9, &limits).unwrap();
        assert!((r.a0_norm - 1.0).abs() < 1e-12);
        assert!((r.lower_bound() - 1.0).abs() < 1e-9);
        assert_eq!(r.outcome, Outcome::Pass);

        let r = check_coefficient_bound(&s(1), 4, 1e-9, &limits).unwrap();
        assert_eq!(r.a0_norm, 0.0);
        assert_eq!(r.outcome, Outcome::Pass);

        let x = &Element::identity(2) + &s(1);
        let r = check_coefficient_bound(&x, 8, 1e-9, &limits).unwrap();
        assert!((r.a0_norm - 1.0).abs() < 1e-12);
        assert!(r.lower_bound() >= 1.0 - 1e-9);
        assert!(r.monotone);
        assert_eq!(r.outcome, Outcome::Pass);
    }
}
