//! Seeded random elements for the verification suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::element::Element;
use crate::monomial::Monomial;
use crate::scalar::Scalar;

/// Deterministic source of random polynomials.
pub struct Sampler {
    rng: ChaCha8Rng,
    /// Largest number of terms in a sampled element.
    pub max_terms: usize,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_terms: 4,
        }
    }

    /// Small non-zero coefficient from `Q(i, √2)`.
    pub fn scalar(&mut self) -> Scalar {
        loop {
            let part = |rng: &mut ChaCha8Rng, p: f64| {
                if rng.gen_bool(p) {
                    let num = rng.gen_range(-3..=3);
                    let den = *[1, 1, 2, 3].choose(rng).expect("non-empty");
                    Scalar::from_fraction(num, den)
                } else {
                    Scalar::from_int(0)
                }
            };
            let a = part(&mut self.rng, 0.9);
            let b = part(&mut self.rng, 0.3);
            let c = part(&mut self.rng, 0.25);
            let d = part(&mut self.rng, 0.15);
            let s = a + &b * &Scalar::sqrt2() + &c * &Scalar::i() + &(&d * &Scalar::sqrt2()) * &Scalar::i();
            if !s.is_zero() {
                return s;
            }
        }
    }

    pub fn word(&mut self, d: usize, len: usize) -> Vec<u8> {
        (0..len).map(|_| self.rng.gen_range(1..=d as u8)).collect()
    }

    fn build(&mut self, d: usize, mut monomial: impl FnMut(&mut Self) -> Monomial) -> Element {
        let n = self.rng.gen_range(1..=self.max_terms);
        let terms: Vec<(Monomial, Scalar)> = (0..n)
            .map(|_| {
                let m = monomial(self);
                (m, self.scalar())
            })
            .collect();
        Element::from_terms(d, terms).expect("letters are in range")
    }

    /// Polynomial with `|I|, |J| ≤ level`.
    pub fn polynomial(&mut self, d: usize, level: usize) -> Element {
        self.build(d, |s| {
            let (i, j) = (s.rng.gen_range(0..=level), s.rng.gen_range(0..=level));
            Monomial::new(s.word(d, i), s.word(d, j))
        })
    }

    /// Gauge-invariant element of `O_2` with `|I| = |J| ≤ level`.
    pub fn balanced(&mut self, level: usize) -> Element {
        self.build(2, |s| {
            let k = s.rng.gen_range(0..=level);
            Monomial::new(s.word(2, k), s.word(2, k))
        })
    }

    /// Gauge-invariant element whose monomials all have `|I| = |J| = level`.
    pub fn balanced_at_level(&mut self, level: usize) -> Element {
        self.build(2, |s| Monomial::new(s.word(2, level), s.word(2, level)))
    }

    pub fn index(&mut self, bound: usize) -> usize {
        self.rng.gen_range(0..bound)
    }
}
