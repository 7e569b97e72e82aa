//! Truncated permutative representation of `O_2` on `ℓ²(ℕ)`.
//!
//! `ψ_1 e_n = e_{2n}` and `ψ_2 e_n = e_{2n+1}` are isometries with
//! complementary ranges, so this is a representation of `O_2`, faithful
//! because `O_2` is simple. Compressing an element to `span{e_0, …, e_{2^L − 1}}`
//! therefore gives an operator whose norm never exceeds the C*-norm, and the
//! compression norms are nondecreasing in `L`.

use nalgebra::DMatrix;
use num::complex::Complex64;
use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::Limits;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::uhf::top_singular;

/// Cutoffs above this are refused regardless of configuration.
pub const MAX_PERMUTATIVE_DEPTH: usize = 24;

/// Below this dimension the compression norm is computed by a dense Hermitian eigensolve.
const DENSE_DIM: usize = 256;
const LANCZOS_STEPS: usize = 80;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PermutativeRep {
    cutoff: usize,
}

/// A compressed operator stored by columns: `columns[n]` lists `(row, value)`.
#[derive(Clone, Debug)]
pub struct Compression {
    dim: usize,
    columns: Vec<Vec<(usize, Complex64)>>,
}

impl PermutativeRep {
    pub fn new(cutoff: usize) -> Result<Self> {
        if cutoff == 0 {
            return Err(Error::InvalidArgument("cutoff must be positive".into()));
        }
        Limits::check("permutative depth", cutoff, MAX_PERMUTATIVE_DEPTH)?;
        Ok(Self { cutoff })
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn dim(&self) -> usize {
        1 << self.cutoff
    }

    /// Image of `e_n` under `ψ_I ψ_J*` in the untruncated representation, or
    /// `None` when it vanishes (or leaves the `u64` index range).
    pub fn apply_monomial(m: &Monomial, n: u64) -> Option<u64> {
        let mut k = n;
        // ψ_J* = ψ_{j_n}* … ψ_{j_1}*, so j_1 acts first.
        for &j in m.annihilators() {
            let bit = (j - 1) as u64;
            if k & 1 != bit {
                return None;
            }
            k >>= 1;
        }
        for &i in m.creators().iter().rev() {
            k = k.checked_mul(2)?.checked_add((i - 1) as u64)?;
        }
        Some(k)
    }

    pub fn compress(&self, x: &Element) -> Result<Compression> {
        if x.d() != 2 {
            return Err(Error::UnsupportedGeneratorCount(x.d()));
        }
        let dim = self.dim();
        let terms: Vec<(&Monomial, Complex64)> =
            x.terms().map(|(m, c)| (m, c.to_complex())).collect();
        let columns = (0..dim)
            .map(|n| {
                terms
                    .iter()
                    .filter_map(|(m, c)| {
                        Self::apply_monomial(m, n as u64)
                            .filter(|&row| row < dim as u64)
                            .map(|row| (row as usize, *c))
                    })
                    .collect()
            })
            .collect();
        Ok(Compression { dim, columns })
    }
}

impl Compression {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::zero(); self.dim];
        for (n, col) in self.columns.iter().enumerate() {
            if v[n].is_zero() {
                continue;
            }
            for &(row, c) in col {
                out[row] += c * v[n];
            }
        }
        out
    }

    pub fn apply_adjoint(&self, w: &[Complex64]) -> Vec<Complex64> {
        self.columns
            .iter()
            .map(|col| col.iter().map(|&(row, c)| c.conj() * w[row]).sum())
            .collect()
    }

    /// `v ↦ M* M v`.
    fn gram(&self, v: &[Complex64]) -> Vec<Complex64> {
        self.apply_adjoint(&self.apply(v))
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for (n, col) in self.columns.iter().enumerate() {
            for &(row, c) in col {
                m[(row, n)] += c;
            }
        }
        m
    }

    /// `‖M v‖² / ‖v‖²`, a lower bound for `‖M‖²` attained by an actual vector.
    fn rayleigh(&self, v: &[Complex64]) -> f64 {
        let n = norm2(v);
        if n == 0.0 {
            return 0.0;
        }
        let mv = norm2(&self.apply(v));
        (mv / n) * (mv / n)
    }

    /// Top eigenpair of `M* M`; the square root of the value is the norm.
    /// Every candidate vector (dense SVD, or Lanczos from a random start and
    /// from `start`, plus `start` itself) is scored by its exact Rayleigh
    /// quotient, so the value is a certified lower bound and never falls
    /// below the quotient of `start`.
    fn top_gram_eigen(&self, start: Option<&[Complex64]>) -> (f64, Vec<Complex64>) {
        let mut candidates = Vec::new();
        if self.dim <= DENSE_DIM {
            candidates.push(top_singular(&self.to_dense()).1);
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(self.dim as u64);
            let random: Vec<Complex64> = (0..self.dim)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            candidates.push(lanczos_top(|v| self.gram(v), &random).1);
            if let Some(s) = start {
                candidates.push(lanczos_top(|v| self.gram(v), s).1);
            }
        }
        if let Some(s) = start {
            candidates.push(s.to_vec());
        }
        candidates
            .into_iter()
            .map(|v| (self.rayleigh(&v), v))
            .max_by(|a, b| a.0.total_cmp(&b.0))
            .expect("at least one candidate")
    }

    pub fn norm(&self) -> f64 {
        self.top_gram_eigen(None).0.sqrt()
    }
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm2(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Lanczos with full reorthogonalisation for the largest eigenvalue of a
/// Hermitian positive semidefinite operator. Near breakdown the tridiagonal
/// model can drift from the operator, so callers rescore the returned vector.
fn lanczos_top<F>(op: F, start: &[Complex64]) -> (f64, Vec<Complex64>)
where
    F: Fn(&[Complex64]) -> Vec<Complex64>,
{
    let dim = start.len();
    let n0 = norm2(start);
    if n0 == 0.0 {
        return (0.0, vec![Complex64::zero(); dim]);
    }
    let mut basis: Vec<Vec<Complex64>> = vec![start.iter().map(|x| x / n0).collect()];
    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new();
    let mut last_top = f64::NEG_INFINITY;
    let mut ritz = (0.0, basis[0].clone());

    for step in 0..LANCZOS_STEPS.min(dim) {
        let q = &basis[step];
        let mut w = op(q);
        let alpha = dot(q, &w).re;
        alphas.push(alpha);
        for _ in 0..2 {
            for b in &basis {
                let proj = dot(b, &w);
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= proj * bi;
                }
            }
        }
        let beta = norm2(&w);
        let converged_space = beta <= 1e-10 * alpha.abs().max(1.0);

        if step % 5 == 4 || converged_space || step + 1 == LANCZOS_STEPS.min(dim) {
            ritz = ritz_top(&alphas, &betas, &basis);
            if converged_space || (ritz.0 - last_top).abs() <= 1e-15 * ritz.0.max(1.0) {
                break;
            }
            last_top = ritz.0;
        }
        betas.push(beta);
        basis.push(w.iter().map(|x| x / beta).collect());
    }
    ritz
}

fn ritz_top(alphas: &[f64], betas: &[f64], basis: &[Vec<Complex64>]) -> (f64, Vec<Complex64>) {
    let k = alphas.len();
    let t = DMatrix::from_fn(k, k, |i, j| {
        if i == j {
            alphas[i]
        } else if i + 1 == j {
            betas[i]
        } else if j + 1 == i {
            betas[j]
        } else {
            0.0
        }
    });
    // T is positive semidefinite, so its top singular pair is its top eigenpair.
    let (value, y) = top_singular(&t);
    let dim = basis[0].len();
    let mut v = vec![Complex64::zero(); dim];
    for (coef, q) in y.iter().zip(basis) {
        for (vi, qi) in v.iter_mut().zip(q) {
            *vi += qi * *coef;
        }
    }
    (value.max(0.0), v)
}

/// Compression norms of `x` at cutoffs `1..=depth`. Each level is seeded with
/// the top singular vector of the previous one, so the sequence is monotone up
/// to rounding.
pub fn norm_lower_bounds(x: &Element, depth: usize, limits: &Limits) -> Result<Vec<f64>> {
    if depth == 0 {
        return Err(Error::InvalidArgument("depth must be positive".into()));
    }
    Limits::check("permutative depth", depth, limits.max_depth)?;
    let mut out = Vec::with_capacity(depth);
    let mut warm: Option<Vec<Complex64>> = None;
    for level in 1..=depth {
        let rep = PermutativeRep::new(level)?;
        let compression = rep.compress(x)?;
        let padded = warm.map(|mut v| {
            v.resize(rep.dim(), Complex64::zero());
            v
        });
        let (value, vector) = compression.top_gram_eigen(padded.as_deref());
        out.push(value.sqrt());
        warm = Some(vector);
    }
    Ok(out)
}

/// Norm of the compression of `x` at cutoff `depth`; a lower bound for the C*-norm of `x`.
pub fn norm_lower_bound(x: &Element, depth: usize, limits: &Limits) -> Result<f64> {
    Ok(*norm_lower_bounds(x, depth, limits)?
        .last()
        .expect("depth is positive"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn generators_act_by_index_maps() {
        let s1 = Monomial::new(vec![1], vec![]);
        let s2 = Monomial::new(vec![2], vec![]);
        assert_eq!(PermutativeRep::apply_monomial(&s1, 5), Some(10));
        assert_eq!(PermutativeRep::apply_monomial(&s2, 5), Some(11));
        assert_eq!(PermutativeRep::apply_monomial(&s1.adjoint(), 10), Some(5));
        assert_eq!(PermutativeRep::apply_monomial(&s1.adjoint(), 11), None);
        // ψ_1ψ_2 e_n = ψ_1 e_{2n+1} = e_{4n+2}
        let s12 = Monomial::new(vec![1, 2], vec![]);
        assert_eq!(PermutativeRep::apply_monomial(&s12, 1), Some(6));
        // (ψ_1ψ_2)* undoes it
        assert_eq!(PermutativeRep::apply_monomial(&s12.adjoint(), 6), Some(1));
    }

    #[test]
    fn cuntz_relations_hold_exactly_in_the_representation() {
        // Σ ψ_iψ_i* acts as the identity on every basis vector.
        for n in 0..64u64 {
            let hits: Vec<u64> = [1u8, 2]
                .iter()
                .filter_map(|&i| PermutativeRep::apply_monomial(&Monomial::new(vec![i], vec![i]), n))
                .collect();
            assert_eq!(hits, vec![n]);
        }
    }

    #[test]
    fn identity_has_norm_one() {
        for depth in [1, 4, 9] {
            let b = norm_lower_bound(&Element::identity(2), depth, &limits()).unwrap();
            assert!((b - 1.0).abs() < 1e-12, "{}", b);
        }
    }

    #[test]
    fn isometry_bound_approaches_one() {
        let s1 = Element::generator(2, 1).unwrap();
        let b = norm_lower_bound(&s1, 8, &limits()).unwrap();
        assert!(b > 0.0 && b <= 1.0 + 1e-12);
        assert!(b > 1.0 - 1e-9);
    }

    #[test]
    fn sum_of_generators_tends_to_sqrt2() {
        let x = &Element::generator(2, 1).unwrap() + &Element::generator(2, 2).unwrap();
        let bounds = norm_lower_bounds(&x, 10, &limits()).unwrap();
        let last = *bounds.last().unwrap();
        assert!(last <= std::f64::consts::SQRT_2 + 1e-12);
        assert!(last > 1.40, "{:?}", bounds);
        for w in bounds.windows(2) {
            assert!(w[1] >= w[0] - 1e-12, "{:?}", bounds);
        }
    }

    #[test]
    fn lanczos_agrees_with_dense() {
        // Level 9 (dim 512) goes through Lanczos; compare with the dense path.
        let x = &(&Element::generator(2, 1).unwrap() + &Element::monomial(2, &[2], &[1, 2]).unwrap())
            + &Element::scalar(2, Scalar::from_fraction(1, 3));
        let rep = PermutativeRep::new(9).unwrap();
        let c = rep.compress(&x).unwrap();
        let dense = c.to_dense();
        let sv = dense.singular_values();
        let exact = sv.iter().cloned().fold(0.0, f64::max);
        assert!((c.norm() - exact).abs() < 1e-9, "{} vs {}", c.norm(), exact);
    }

    #[test]
    fn depth_limits() {
        let x = Element::identity(2);
        assert!(norm_lower_bound(&x, 13, &limits()).unwrap_err().is_resource_bound());
        assert!(norm_lower_bound(&x, 0, &limits()).is_err());
        assert!(PermutativeRep::new(25).unwrap_err().is_resource_bound());
    }

    #[test]
    fn dense_levels_stay_finite() {
        // A compression whose Gram matrix has a highly repeated spectrum.
        let x = crate::expr::parse_expression("(1/2 - 2 i) s1 s1 s2* s1* + 2 s1 s1 s2*").unwrap();
        let bounds = norm_lower_bounds(&x, 9, &limits()).unwrap();
        assert!(bounds.iter().all(|b| b.is_finite()));
        assert!(bounds.windows(2).all(|w| w[1] >= w[0] - 1e-12));
        assert!((bounds[8] - 8.25f64.sqrt()).abs() < 1e-9);
    }
}
