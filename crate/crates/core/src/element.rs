//! Polynomial elements of the Cuntz algebra `O_d`.
//!
//! An [`Element`] is a finite linear combination of [`Monomial`]s with
//! coefficients in Q(i, √2). The term map never stores a zero coefficient,
//! but distinct term maps can denote the same operator because of
//! `Σ_i ψ_iψ_i* = I`; use [`Element::equals`] for semantic equality.
//!
//! The decision procedure rests on the fact that, within a fixed gauge
//! degree, monomials with fixed word lengths `(|I|, |J|)` are linearly
//! independent. Expanding every term of a degree class to a common
//! annihilator length therefore yields a canonical coefficient vector.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Signed};

use crate::error::{Error, Result};
use crate::monomial::{words, Monomial, Word};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    d: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

fn check_d(d: usize) -> Result<()> {
    if d < 2 || d > u8::MAX as usize {
        Err(Error::InvalidGeneratorCount(d))
    } else {
        Ok(())
    }
}

fn insert_term(terms: &mut BTreeMap<Monomial, Scalar>, m: Monomial, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += &c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl Element {
    pub fn zero(d: usize) -> Self {
        Self {
            d,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(d: usize) -> Self {
        Self::scalar(d, Scalar::one())
    }

    pub fn scalar(d: usize, c: Scalar) -> Self {
        Self::from_monomial(d, Monomial::identity(), c)
    }

    /// Single-term element. Letters must lie in `1..=d`; use [`Element::from_terms`]
    /// for validated construction.
    pub fn from_monomial(d: usize, m: Monomial, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        insert_term(&mut terms, m, c);
        Self { d, terms }
    }

    pub fn monomial(d: usize, creators: &[u8], annihilators: &[u8]) -> Result<Self> {
        Self::from_terms(
            d,
            [(Monomial::new(creators.to_vec(), annihilators.to_vec()), Scalar::one())],
        )
    }

    /// Sums the given terms, validating `d` and every letter.
    pub fn from_terms<I>(d: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        check_d(d)?;
        let mut map = BTreeMap::new();
        for (m, c) in terms {
            if let Some(&bad) = m
                .creators()
                .iter()
                .chain(m.annihilators())
                .find(|&&l| l == 0 || l as usize > d)
            {
                return Err(Error::GeneratorOutOfRange {
                    index: bad as usize,
                    d,
                });
            }
            insert_term(&mut map, m, c);
        }
        Ok(Self { d, terms: map })
    }

    /// The isometry `ψ_i`.
    pub fn generator(d: usize, i: usize) -> Result<Self> {
        check_d(d)?;
        if i == 0 || i > d {
            return Err(Error::GeneratorOutOfRange { index: i, d });
        }
        Ok(Self::from_monomial(
            d,
            Monomial::new(vec![i as u8], vec![]),
            Scalar::one(),
        ))
    }

    /// `ψ_i*`.
    pub fn generator_adjoint(d: usize, i: usize) -> Result<Self> {
        Ok(Self::generator(d, i)?.adjoint())
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms.get(m)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Structurally empty term map. See [`Element::is_zero`] for the semantic test.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_d(&self, other: &Element) -> Result<()> {
        if self.d == other.d {
            Ok(())
        } else {
            Err(Error::GeneratorMismatch {
                left: self.d,
                right: other.d,
            })
        }
    }

    pub fn checked_add(&self, other: &Element) -> Result<Element> {
        self.same_d(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            insert_term(&mut terms, m.clone(), c.clone());
        }
        Ok(Element { d: self.d, terms })
    }

    pub fn checked_sub(&self, other: &Element) -> Result<Element> {
        self.checked_add(&other.neg_ref())
    }

    /// Bilinear extension of [`mul_monomial`].
    pub fn checked_mul(&self, other: &Element) -> Result<Element> {
        self.same_d(other)?;
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some(m) = m1.mul(m2) {
                    insert_term(&mut terms, m, c1 * c2);
                }
            }
        }
        Ok(Element { d: self.d, terms })
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element::zero(self.d);
        }
        Element {
            d: self.d,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    fn neg_ref(&self) -> Element {
        Element {
            d: self.d,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), -v)).collect(),
        }
    }

    /// `(Σ c ψ_I ψ_J*)* = Σ conj(c) ψ_J ψ_I*`.
    pub fn adjoint(&self) -> Element {
        Element {
            d: self.d,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.adjoint(), c.conj()))
                .collect(),
        }
    }

    pub fn anticommutator(&self, other: &Element) -> Result<Element> {
        self.checked_mul(other)?.checked_add(&other.checked_mul(self)?)
    }

    pub fn commutator(&self, other: &Element) -> Result<Element> {
        self.checked_mul(other)?.checked_sub(&other.checked_mul(self)?)
    }

    pub fn max_letter(&self) -> usize {
        self.terms.keys().map(|m| m.max_letter() as usize).max().unwrap_or(0)
    }

    /// Smallest level every term can be expanded to: the longest annihilator word.
    pub fn min_level(&self) -> usize {
        self.terms.keys().map(Monomial::level).max().unwrap_or(0)
    }

    /// Rewrites every term `(I, J)` as `Σ_{|W| = L−|J|} (I·W, J·W)` using `Σ ψ_iψ_i* = I`.
    ///
    /// Afterwards every monomial of degree `g` has `|J| = L` and `|I| = L + g`.
    pub fn expand_to_level(&self, level: usize) -> Result<Element> {
        let required = self.min_level();
        if level < required {
            return Err(Error::LevelTooSmall { level, required });
        }
        Ok(Element {
            d: self.d,
            terms: expand_terms(self.d, &self.terms, level),
        })
    }

    /// Semantic zero test: each degree class is expanded to its own minimal level.
    pub fn is_zero(&self) -> bool {
        self.grade()
            .components
            .values()
            .all(|part| expand_terms(part.d, &part.terms, part.min_level()).is_empty())
    }

    /// Semantic equality in `O_d`. Elements over different `d` are never equal.
    pub fn equals(&self, other: &Element) -> bool {
        match self.checked_sub(other) {
            Ok(diff) => diff.is_zero(),
            Err(_) => false,
        }
    }

    /// Canonical representative of the semantic class: each degree class is
    /// expanded to its minimal level and then collapsed bottom-up wherever all
    /// `d` one-letter extensions of a monomial carry the same coefficient.
    pub fn normalize(&self) -> Element {
        let mut terms = BTreeMap::new();
        for part in self.grade().components.into_values() {
            let level = part.min_level();
            let expanded = expand_terms(part.d, &part.terms, level);
            for (m, c) in collapse(self.d, expanded, level) {
                insert_term(&mut terms, m, c);
            }
        }
        Element { d: self.d, terms }
    }

    pub fn grade(&self) -> GradedDecomposition {
        let mut components: BTreeMap<i64, Element> = BTreeMap::new();
        for (m, c) in &self.terms {
            components
                .entry(m.degree())
                .or_insert_with(|| Element::zero(self.d))
                .terms
                .insert(m.clone(), c.clone());
        }
        GradedDecomposition {
            d: self.d,
            components,
        }
    }

    /// Homogeneous component of the given degree (the Fourier coefficient `a_g`).
    pub fn degree_part(&self, degree: i64) -> Element {
        Element {
            d: self.d,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// All monomials balanced, i.e. fixed by the gauge action.
    pub fn is_gauge_invariant(&self) -> bool {
        self.terms.keys().all(Monomial::is_balanced)
    }

    pub fn ensure_gauge_invariant(&self) -> Result<()> {
        match self.terms.keys().find(|m| !m.is_balanced()) {
            Some(m) => Err(Error::NotGaugeInvariant { degree: m.degree() }),
            None => Ok(()),
        }
    }

    /// Degree of a homogeneous element; `None` for mixed degrees. The empty element has degree 0.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => Some(0),
            Some(g) => degrees.all(|h| h == g).then_some(g),
        }
    }

    /// The gauge automorphism `τ(z)`: scales the degree-`g` part by `z^g`.
    pub fn gauge_rotate(&self, z: &Scalar) -> Result<Element> {
        if !z.is_unit_modulus() {
            return Err(Error::NotUnitModulus(z.to_string()));
        }
        let mut powers: BTreeMap<i64, Scalar> = BTreeMap::new();
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let g = m.degree();
            let zg = match powers.get(&g) {
                Some(p) => p.clone(),
                None => {
                    let p = z.pow(g)?;
                    powers.insert(g, p.clone());
                    p
                }
            };
            insert_term(&mut terms, m.clone(), c * &zg);
        }
        Ok(Element { d: self.d, terms })
    }

    /// `x^n` for `n >= 0`.
    pub fn pow(&self, n: u32) -> Element {
        let mut acc = Element::identity(self.d);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

/// Product of two monomials over the same `d`, as an element.
pub fn mul_monomial(d: usize, m1: &Monomial, m2: &Monomial) -> Element {
    match m1.mul(m2) {
        Some(m) => Element::from_monomial(d, m, Scalar::one()),
        None => Element::zero(d),
    }
}

fn expand_terms(
    d: usize,
    terms: &BTreeMap<Monomial, Scalar>,
    level: usize,
) -> BTreeMap<Monomial, Scalar> {
    let mut out = BTreeMap::new();
    let mut cache: BTreeMap<usize, Vec<Word>> = BTreeMap::new();
    for (m, c) in terms {
        let extra = level - m.level();
        if extra == 0 {
            insert_term(&mut out, m.clone(), c.clone());
            continue;
        }
        let ws = cache.entry(extra).or_insert_with(|| words(d, extra).collect());
        for w in ws.iter() {
            insert_term(&mut out, m.extended(w), c.clone());
        }
    }
    out
}

/// Inverse of level expansion on a single degree class whose terms all sit at `level`.
fn collapse(
    d: usize,
    mut current: BTreeMap<Monomial, Scalar>,
    level: usize,
) -> BTreeMap<Monomial, Scalar> {
    let mut done = BTreeMap::new();
    for _ in 0..level {
        // Group by the parent obtained by stripping a common last letter.
        let mut groups: BTreeMap<Monomial, Vec<(u8, Monomial, Scalar)>> = BTreeMap::new();
        for (m, c) in std::mem::take(&mut current) {
            let (ci, ai) = (m.creators(), m.annihilators());
            match (ci.last(), ai.last()) {
                (Some(&x), Some(&y)) if x == y => {
                    let parent =
                        Monomial::new(ci[..ci.len() - 1].to_vec(), ai[..ai.len() - 1].to_vec());
                    groups.entry(parent).or_default().push((x, m, c));
                }
                _ => {
                    done.insert(m, c);
                }
            }
        }
        for (parent, children) in groups {
            let uniform = children.len() == d && children.iter().all(|(_, _, c)| *c == children[0].2);
            if uniform {
                current.insert(parent, children[0].2.clone());
            } else {
                for (_, m, c) in children {
                    done.insert(m, c);
                }
            }
        }
    }
    done.extend(current);
    done
}

/// An element split into homogeneous gauge-degree components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedDecomposition {
    d: usize,
    components: BTreeMap<i64, Element>,
}

impl GradedDecomposition {
    pub fn components(&self) -> &BTreeMap<i64, Element> {
        &self.components
    }

    pub fn component(&self, degree: i64) -> Element {
        self.components
            .get(&degree)
            .cloned()
            .unwrap_or_else(|| Element::zero(self.d))
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.components.keys().copied()
    }

    pub fn sum(&self) -> Element {
        let mut acc = Element::zero(self.d);
        for part in self.components.values() {
            acc = &acc + part;
        }
        acc
    }
}

/// Panics on mismatched `d`; use [`Element::checked_add`] for a fallible version.
impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        self.checked_add(rhs).expect("Element addition")
    }
}

impl Add for Element {
    type Output = Element;
    fn add(self, rhs: Element) -> Element {
        &self + &rhs
    }
}

/// Panics on mismatched `d`; use [`Element::checked_sub`] for a fallible version.
impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.checked_sub(rhs).expect("Element subtraction")
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, rhs: Element) -> Element {
        &self - &rhs
    }
}

/// Panics on mismatched `d`; use [`Element::checked_mul`] for a fallible version.
impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        self.checked_mul(rhs).expect("Element multiplication")
    }
}

impl Mul for Element {
    type Output = Element;
    fn mul(self, rhs: Element) -> Element {
        &self * &rhs
    }
}

impl Mul<&Element> for &Scalar {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        rhs.scale(self)
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.neg_ref()
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.neg_ref()
    }
}

fn write_coefficient(f: &mut fmt::Formatter<'_>, c: &Scalar, m: &Monomial, first: bool) -> fmt::Result {
    // Rational coefficients print bare with the sign pulled out; others are parenthesised.
    let (negative, body) = match c.as_rational() {
        Some(r) => {
            let mag = r.abs();
            let body = if mag.is_one() {
                String::new()
            } else {
                mag.to_string()
            };
            (r.is_negative(), body)
        }
        None => (false, format!("({})", c)),
    };
    match (first, negative) {
        (true, true) => write!(f, "-")?,
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
        (true, false) => {}
    }
    match (body.is_empty(), m.is_identity()) {
        (true, _) => write!(f, "{}", m),
        (false, true) if c.as_rational().is_some() => write!(f, "{}", body),
        (false, _) => write!(f, "{} {}", body, m),
    }
}

/// Prints in the expression syntax accepted by the parser, e.g. `s1 s2* - 1/2 I`.
impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            write_coefficient(f, c, m, k == 0)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(i: usize) -> Element {
        Element::generator(2, i).unwrap()
    }

    fn sa(i: usize) -> Element {
        Element::generator_adjoint(2, i).unwrap()
    }

    fn mono(c: &[u8], a: &[u8]) -> Element {
        Element::monomial(2, c, a).unwrap()
    }

    fn id() -> Element {
        Element::identity(2)
    }

    #[test]
    fn swap_squared() {
        let x = &mono(&[1], &[2]) + &mono(&[2], &[1]);
        let expected = &mono(&[1], &[1]) + &mono(&[2], &[2]);
        assert_eq!(&x * &x, expected);
    }

    #[test]
    fn identity_and_isometry() {
        let x = mono(&[1, 2], &[2]);
        assert_eq!(&id() * &x, x);
        assert_eq!(&sa(2) * &s(2), id());
        assert!((&sa(1) * &s(2)).is_empty());
    }

    #[test]
    fn mismatched_d_is_an_error() {
        let a = Element::generator(2, 1).unwrap();
        let b = Element::generator(3, 1).unwrap();
        assert_eq!(
            a.checked_mul(&b),
            Err(Error::GeneratorMismatch { left: 2, right: 3 })
        );
        assert!(!a.equals(&b));
    }

    #[test]
    fn adjoint_examples() {
        assert_eq!(mono(&[1], &[2]).adjoint(), mono(&[2], &[1]));
        let i_id = Element::scalar(2, Scalar::i());
        assert_eq!(i_id.adjoint(), Element::scalar(2, -Scalar::i()));
        // adjoint(ψ_1ψ_2ψ_2*) = ψ_2ψ_2*ψ_1*
        let x = &(&s(1) * &s(2)) * &sa(2);
        assert_eq!(x.adjoint(), &(&s(2) * &sa(2)) * &sa(1));
    }

    #[test]
    fn expansion_examples() {
        let expanded = id().expand_to_level(1).unwrap();
        assert_eq!(expanded, &mono(&[1], &[1]) + &mono(&[2], &[2]));
        let expanded = s(1).expand_to_level(1).unwrap();
        assert_eq!(expanded, &mono(&[1, 1], &[1]) + &mono(&[1, 2], &[2]));
        let a = mono(&[1], &[2]);
        assert_eq!(a.expand_to_level(1).unwrap(), a);
        assert_eq!(
            mono(&[], &[1, 2]).expand_to_level(1),
            Err(Error::LevelTooSmall {
                level: 1,
                required: 2
            })
        );
    }

    #[test]
    fn equality_examples() {
        assert!(id().equals(&(&mono(&[1], &[1]) + &mono(&[2], &[2]))));
        assert!(!s(1).equals(&s(2)));
        assert!((&(&s(1) * &sa(1)) * &s(1)).equals(&s(1)));
        // degree classes never cancel each other
        assert!(!(&s(1) + &sa(1)).is_zero());
    }

    #[test]
    fn cuntz_relations_general_d() {
        for d in 2..=4 {
            let mut sum = Element::zero(d);
            for i in 1..=d {
                let gi = Element::generator(d, i).unwrap();
                for j in 1..=d {
                    let gj = Element::generator(d, j).unwrap();
                    let prod = &gi.adjoint() * &gj;
                    let expected = if i == j {
                        Element::identity(d)
                    } else {
                        Element::zero(d)
                    };
                    assert!(prod.equals(&expected));
                }
                sum = &sum + &(&gi * &gi.adjoint());
            }
            assert!(sum.equals(&Element::identity(d)));
        }
    }

    #[test]
    fn grading_examples() {
        let x = &s(1) + &mono(&[1], &[2]);
        let g = x.grade();
        assert_eq!(g.degrees().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(g.component(1), s(1));
        assert_eq!(g.component(0), mono(&[1], &[2]));
        assert_eq!(g.sum(), x);
        assert_eq!(id().grade().component(0), id());
        assert_eq!(mono(&[1, 2], &[1]).grade().degrees().collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn gauge_examples() {
        assert_eq!(
            s(1).gauge_rotate(&Scalar::i()).unwrap(),
            Element::from_monomial(2, Monomial::new(vec![1], vec![]), Scalar::i())
        );
        let a = mono(&[1], &[2]);
        assert_eq!(a.gauge_rotate(&Scalar::eighth_root_of_unity()).unwrap(), a);
        let x = mono(&[1, 2], &[]);
        assert_eq!(x.gauge_rotate(&Scalar::from_int(-1)).unwrap(), x);
        assert!(matches!(
            x.gauge_rotate(&Scalar::from_int(2)),
            Err(Error::NotUnitModulus(_))
        ));
        // degree -1 uses the inverse power
        assert_eq!(
            sa(1).gauge_rotate(&Scalar::i()).unwrap(),
            sa(1).scale(&-Scalar::i())
        );
    }

    #[test]
    fn normalize_collapses_expansions() {
        let x = &mono(&[1, 1], &[1]) + &mono(&[1, 2], &[2]);
        assert_eq!(x.normalize(), s(1));
        let y = &mono(&[1, 1], &[2, 1]) + &mono(&[1, 2], &[2, 2]);
        assert_eq!(y.normalize(), mono(&[1], &[2]));
        let sum = &mono(&[1], &[1]) + &mono(&[2], &[2]);
        assert_eq!(sum.normalize(), id());
        // a partial sum does not collapse
        assert_eq!(mono(&[1], &[1]).normalize(), mono(&[1], &[1]));
    }

    #[test]
    fn display_format() {
        let x = &mono(&[1], &[2]) - &id().scale(&Scalar::from_fraction(1, 2));
        assert_eq!(x.to_string(), "-1/2 + s1 s2*");
        assert_eq!(Element::zero(2).to_string(), "0");
        let y = s(1).scale(&Scalar::inv_sqrt2());
        assert_eq!(y.to_string(), "(1/2 sqrt2) s1");
    }
}
