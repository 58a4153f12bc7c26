//! Exact projectively equivariant quantization and symbol calculus.
//!
//! The crate works in one affine chart of `Sⁿ` with coordinates `x¹..xⁿ` and
//! dual momenta `ξ₁..ξₙ`. Symbols are polynomials in `(x, ξ)`, optionally
//! multiplied by rational powers of declared ξ-homogeneous bases (the round
//! Hamiltonian `H` and `1 + ‖x‖²`). On these the crate evaluates the
//! quantization map `Q_{λ,μ}` and its inverse `σ_{λ,μ}` as hypergeometric series
//! in the Euler and divergence operators, normal-orders symbols into differential
//! operators, and verifies `sl(n+1)` equivariance by exact computation.
//!
//! Everything is exact: coefficients are rationals, and `iħ` is the formal unit
//! `ν` of [`Scalar`].
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod equivariance;
pub mod error;
pub mod operator;
pub mod quantize;
pub mod sphere;
pub mod symbols;

pub use algebra::{int, rat, Monomial, Poly, Rational, Scalar};
pub use error::{Error, Family, ResonanceWitness, Result};
pub use operator::DiffOperator;
pub use quantize::QContext;
pub use symbols::{BaseTable, RadicalSymbol};
