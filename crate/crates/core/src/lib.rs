//! Exact symbolic computation in the Cuntz algebra `O_2`: the CAR algebra
//! realised through the standard recursive fermion system, the shift
//! endomorphism `δ(a) = ψ_1 a ψ_1*` with its transfer operator, and the
//! crossed-product normal form `Σ ψ_1^{*k} a_{-k} + a_0 + Σ a_k ψ_1^k`.

pub mod cli;
pub mod config;
pub mod crossed;
pub mod cuntz_krieger;
pub mod element;
pub mod error;
pub mod expr;
pub mod json;
pub mod maps;
pub mod monomial;
pub mod permutative;
pub mod report;
pub mod rfs;
pub mod sample;
pub mod scalar;
pub mod suites;
pub mod uhf;

pub use element::{mul_monomial, Element, GradedDecomposition};
pub use error::{Error, Result};
pub use monomial::{Monomial, Word};
pub use scalar::Scalar;
