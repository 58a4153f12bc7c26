use alloc::string::String;

use crate::algebra::Rational;

/// Which coefficient family a resonance was detected in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// Coefficients `C_m` of the quantization map.
    Quantization,
    /// Coefficients `C~_m` of the symbol map.
    Symbol,
}

impl core::fmt::Display for Family {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Family::Quantization => f.write_str("quantization"),
            Family::Symbol => f.write_str("symbol"),
        }
    }
}

/// The first `(k, m)` at which a coefficient denominator vanishes.
///
/// `degree` is the ξ-degree `k` of the homogeneous component the series acts on and
/// `order` the power `m` of the divergence operator whose coefficient cannot be formed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResonanceWitness {
    pub family: Family,
    pub degree: Rational,
    pub order: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right} variables")]
    DimensionMismatch { left: usize, right: usize },

    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },

    #[error("symbols are defined over different base tables")]
    BaseTableMismatch,

    #[error("invalid base `{name}`: {reason}")]
    InvalidBase { name: String, reason: String },

    #[error("invalid context: {0}")]
    InvalidContext(String),

    #[error(
        "resonant weights: {} coefficient of order {} on degree {} has a vanishing denominator",
        .0.family, .0.order, .0.degree
    )]
    Resonance(ResonanceWitness),

    #[error("series on degree {degree} did not terminate within {steps} applications of D")]
    NonterminatingSeries { degree: Rational, steps: usize },

    #[error("not an operator symbol: {0}")]
    NotOperatorSymbol(String),

    #[error("degenerate curvature data: {0}")]
    DegenerateCurvature(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
