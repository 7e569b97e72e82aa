//! Exact matrix realisation of the gauge-invariant subalgebra.
//!
//! A balanced monomial `ψ_I ψ_J*` with `|I| = |J| = k` is sent to the matrix
//! unit `E_{I,J}` in `M_{2^k}`. Rows and columns are indexed by words in
//! lexicographic order with the first letter as the most significant bit, so
//! `ρ(X) = I ⊗ X`, `ζ(X) = Z ⊗ X` and the level embedding is `X ↦ X ⊗ I`.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use nalgebra::{ComplexField, DMatrix};
use num::complex::Complex64;
use num::{One, Zero};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::scalar::Scalar;

/// Dense exact matrices are refused above this level regardless of configuration.
pub const MAX_DENSE_LEVEL: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UhfMatrix {
    level: usize,
    dim: usize,
    entries: Vec<Scalar>,
}

/// Row/column index of a word over `{1, 2}`; the first letter is the most significant bit.
pub fn word_index(word: &[u8]) -> usize {
    word.iter().fold(0, |acc, &l| (acc << 1) | (l as usize - 1))
}

fn dense_guard(level: usize) -> Result<()> {
    crate::config::Limits::check("matrix level", level, MAX_DENSE_LEVEL)
}

impl UhfMatrix {
    pub fn zero(level: usize) -> Result<Self> {
        dense_guard(level)?;
        let dim = 1usize << level;
        Ok(Self {
            level,
            dim,
            entries: vec![Scalar::zero(); dim * dim],
        })
    }

    pub fn identity(level: usize) -> Result<Self> {
        let mut m = Self::zero(level)?;
        for i in 0..m.dim {
            m.entries[i * m.dim + i] = Scalar::one();
        }
        Ok(m)
    }

    /// Builds a level-`level` matrix from a row-major list of scalars.
    pub fn from_entries(level: usize, entries: Vec<Scalar>) -> Result<Self> {
        dense_guard(level)?;
        let dim = 1usize << level;
        if entries.len() != dim * dim {
            return Err(Error::InvalidArgument(format!(
                "expected {} entries for level {}, got {}",
                dim * dim,
                level,
                entries.len()
            )));
        }
        Ok(Self {
            level,
            dim,
            entries,
        })
    }

    pub fn from_integers(level: usize, rows: &[&[i64]]) -> Result<Self> {
        let entries = rows.iter().flat_map(|r| r.iter().map(|&v| Scalar::from_int(v))).collect();
        Self::from_entries(level, entries)
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &Scalar {
        &self.entries[row * self.dim + col]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    fn same_level(&self, other: &Self) -> Result<()> {
        if self.level == other.level {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "matrix level mismatch: {} vs {}",
                self.level, other.level
            )))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_level(other)?;
        Ok(Self {
            level: self.level,
            dim: self.dim,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_level(other)?;
        Ok(Self {
            level: self.level,
            dim: self.dim,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        })
    }

    /// Exact product; zero entries are skipped, so sparse operands stay cheap.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_level(other)?;
        let n = self.dim;
        let rows_b: Vec<Vec<(usize, &Scalar)>> = (0..n)
            .map(|k| {
                (0..n)
                    .map(|j| (j, other.get(k, j)))
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        let mut out = vec![Scalar::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for (j, b) in &rows_b[k] {
                    out[i * n + j] += &(a * *b);
                }
            }
        }
        Ok(Self {
            level: self.level,
            dim: n,
            entries: out,
        })
    }

    pub fn conjugate_transpose(&self) -> Self {
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(self.get(j, i).conj());
            }
        }
        Self {
            level: self.level,
            dim: n,
            entries,
        }
    }

    pub fn anticommutator(&self, other: &Self) -> Result<Self> {
        self.checked_mul(other)?.checked_add(&other.checked_mul(self)?)
    }

    /// Kronecker product `self ⊗ other`; `self` supplies the leading letters.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        let level = self.level + other.level;
        dense_guard(level)?;
        let n = self.dim * other.dim;
        let mut entries = vec![Scalar::zero(); n * n];
        for i in 0..self.dim {
            for j in 0..self.dim {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.dim {
                    for l in 0..other.dim {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            entries[(i * other.dim + k) * n + j * other.dim + l] = a * b;
                        }
                    }
                }
            }
        }
        Ok(Self {
            level,
            dim: n,
            entries,
        })
    }

    /// Level embedding `X ↦ X ⊗ I_2`.
    pub fn embed(&self) -> Result<Self> {
        self.kron(&Self::identity(1)?)
    }

    pub fn to_complex(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.dim, self.dim, |i, j| self.get(i, j).to_complex())
    }

    /// Largest singular value, in floating point.
    pub fn operator_norm(&self) -> f64 {
        let sv = self.to_complex().singular_values();
        sv.iter().cloned().fold(0.0, f64::max)
    }

    /// Smallest eigenvalue of the Hermitian part `(X + X*)/2`.
    pub fn min_hermitian_eigenvalue(&self) -> f64 {
        let m = self.to_complex();
        let h = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
        min_hermitian_eigenvalue_of(&h)
    }

    pub fn is_hermitian(&self) -> bool {
        *self == self.conjugate_transpose()
    }
}

impl Add for &UhfMatrix {
    type Output = UhfMatrix;
    fn add(self, rhs: &UhfMatrix) -> UhfMatrix {
        self.checked_add(rhs).expect("UhfMatrix addition")
    }
}

impl Sub for &UhfMatrix {
    type Output = UhfMatrix;
    fn sub(self, rhs: &UhfMatrix) -> UhfMatrix {
        self.checked_sub(rhs).expect("UhfMatrix subtraction")
    }
}

impl Mul for &UhfMatrix {
    type Output = UhfMatrix;
    fn mul(self, rhs: &UhfMatrix) -> UhfMatrix {
        self.checked_mul(rhs).expect("UhfMatrix multiplication")
    }
}

impl fmt::Display for UhfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

fn require_o2(x: &Element) -> Result<()> {
    if x.d() != 2 {
        return Err(Error::UnsupportedGeneratorCount(x.d()));
    }
    Ok(())
}

/// Matrix of a gauge-invariant element at UHF level `k`.
pub fn to_matrix_level(x: &Element, k: usize) -> Result<UhfMatrix> {
    require_o2(x)?;
    x.ensure_gauge_invariant()?;
    let expanded = x.expand_to_level(k)?;
    let mut m = UhfMatrix::zero(k)?;
    for (mono, c) in expanded.terms() {
        let idx = word_index(mono.creators()) * m.dim + word_index(mono.annihilators());
        m.entries[idx] = c.clone();
    }
    Ok(m)
}

/// Inverse of [`to_matrix_level`]: the sum of `entry · E_{I,J}` as an element of `O_2`.
pub fn from_matrix(m: &UhfMatrix) -> Element {
    let words: Vec<Vec<u8>> = crate::monomial::words(2, m.level).collect();
    let terms = (0..m.dim).flat_map(|i| {
        let words = &words;
        (0..m.dim).filter_map(move |j| {
            let c = m.get(i, j);
            (!c.is_zero()).then(|| (Monomial::new(words[i].clone(), words[j].clone()), c.clone()))
        })
    });
    Element::from_terms(2, terms.collect::<Vec<_>>()).expect("letters are 1 or 2")
}

/// `Z^{⊗(n−1)} ⊗ E_{12} ⊗ I^{⊗(N−n)}` with `Z = diag(1, −1)`.
pub fn jordan_wigner(n: usize, modes: usize) -> Result<UhfMatrix> {
    if n == 0 || n > modes {
        return Err(Error::InvalidArgument(format!(
            "mode {} outside 1..={}",
            n, modes
        )));
    }
    dense_guard(modes)?;
    let z = UhfMatrix::from_integers(1, &[&[1, 0], &[0, -1]])?;
    let raise = UhfMatrix::from_integers(1, &[&[0, 1], &[0, 0]])?;
    let id = UhfMatrix::identity(1)?;
    let mut acc = UhfMatrix::identity(0)?;
    for mode in 1..=modes {
        let factor = match mode.cmp(&n) {
            std::cmp::Ordering::Less => &z,
            std::cmp::Ordering::Equal => &raise,
            std::cmp::Ordering::Greater => &id,
        };
        acc = acc.kron(factor)?;
    }
    Ok(acc)
}

/// Operator norm of a gauge-invariant element, computed at its minimal level.
pub fn norm_gauge_invariant(x: &Element) -> Result<f64> {
    require_o2(x)?;
    x.ensure_gauge_invariant()?;
    if x.is_empty() {
        return Ok(0.0);
    }
    Ok(to_matrix_level(x, x.min_level())?.operator_norm())
}

/// Largest singular value of `m` with a matching right singular vector.
/// Spectral quantities are taken from the SVD throughout: nalgebra's
/// symmetric eigen-solver returns wrong spectra on some large, highly
/// degenerate matrices, while its SVD does not.
pub(crate) fn top_singular<T>(m: &DMatrix<T>) -> (f64, Vec<T>)
where
    T: ComplexField<RealField = f64>,
{
    let svd = m.clone().svd(false, true);
    let (idx, &value) = svd
        .singular_values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("nonempty matrix");
    let v_t = svd.v_t.expect("requested right singular vectors");
    let vector = v_t.row(idx).iter().map(|z| z.clone().conjugate()).collect();
    (value, vector)
}

/// Smallest eigenvalue of a Hermitian `h`, as `σ_min(h + cI) − c` with `c = ‖h‖`
/// (the shifted matrix is positive semidefinite, so its singular values are its eigenvalues).
pub(crate) fn min_hermitian_eigenvalue_of(h: &DMatrix<Complex64>) -> f64 {
    let c = h.singular_values().max();
    let shifted = h + DMatrix::<Complex64>::identity(h.nrows(), h.ncols()) * Complex64::new(c, 0.0);
    shifted.singular_values().min() - c
}
