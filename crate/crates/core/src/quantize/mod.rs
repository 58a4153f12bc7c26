//! The quantization map `Q_{λ,μ}` and the symbol map `σ_{λ,μ}`.
//!
//! On a ξ-homogeneous component of degree `k` both maps are finite (or truncated)
//! sums `Σ_m c_m(k − m) ν^m D^m`, i.e. hypergeometric series in the Euler operator
//! `E` and the divergence `D` with `D` ordered to the right: the coefficient is
//! evaluated on the degree reached after `D^m` has acted.
//!
//! * [`coeffs`] holds the coefficient families, both as closed Pochhammer ratios
//!   and as the degree recursions, plus the triangular inversion oracle.
//! * [`series`] applies a coefficient family to a symbol.
//! * [`ordering`] converts between symbols and differential operators.

pub mod coeffs;
pub mod ordering;
pub mod series;

use alloc::format;

use num_traits::{One, Signed, ToPrimitive};

use crate::algebra::{int, Rational};
use crate::error::{Error, Family, ResonanceWitness, Result};

pub use coeffs::{
    coeff_q_closed, coeff_q_recursive, coeff_s_closed, coeff_s_recursive, invert_triangular,
    pochhammer, CoeffTable, Coefficients, SeriesCoefficients, TruncatedCoefficients,
};
pub use ordering::{normal_order, unorder};
pub use series::{apply_series, hypergeom_apply, quantize, series_terms, symbolize, Series};

/// Dimension and density weights of one quantization problem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QContext {
    n: usize,
    lambda: Rational,
    mu: Rational,
    delta: Rational,
}

impl QContext {
    pub fn new(n: usize, lambda: Rational, mu: Rational) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidContext(format!("dimension must be at least 1, got {n}")));
        }
        let delta = &mu - &lambda;
        Ok(QContext {
            n,
            lambda,
            mu,
            delta,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn mu(&self) -> &Rational {
        &self.mu
    }

    /// `δ = μ − λ`, the weight of the symbol space.
    pub fn delta(&self) -> &Rational {
        &self.delta
    }

    /// `(n + 1)λ`, the shift of the upper parameter `E + (n+1)λ`.
    pub(crate) fn upper_shift(&self) -> Rational {
        int(self.n as i64 + 1) * &self.lambda
    }

    /// `(n + 1)(1 − δ)`, the shift of the lower parameter `2E + (n+1)(1−δ)`.
    pub(crate) fn lower_shift(&self) -> Rational {
        int(self.n as i64 + 1) * (Rational::one() - &self.delta)
    }

    /// `ℓ` when `δ = 1 + ℓ/(n+1)` for a nonnegative integer `ℓ`.
    pub fn resonance_level(&self) -> Option<u64> {
        let l = -self.lower_shift();
        if l.is_integer() && !l.is_negative() {
            l.to_integer().to_u64()
        } else {
            None
        }
    }

    pub fn is_resonant(&self) -> bool {
        self.resonance_level().is_some()
    }

    /// For a resonant context, the lowest integer degree `k` and order `m ≤ k` whose
    /// quantization coefficient `C_m^k` hits a zero denominator.
    ///
    /// The recursion step `C_j^k → C_{j+1}^k` divides by `2k − j − 2 − ℓ`, which first
    /// vanishes at `k = ⌈(ℓ+2)/2⌉`, `j = 2k − 2 − ℓ`.
    pub fn resonance_witness(&self) -> Option<ResonanceWitness> {
        let l = self.resonance_level()?;
        let k = (l + 3) / 2;
        let j = 2 * k - 2 - l;
        Some(ResonanceWitness {
            family: Family::Quantization,
            degree: Rational::from_integer(k.into()),
            order: j as usize + 1,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use num_traits::Zero;

    fn ctx(n: usize, delta: Rational) -> QContext {
        QContext::new(n, Rational::zero(), delta).unwrap()
    }

    #[test]
    fn resonance_predicate() {
        assert!(ctx(1, int(1)).is_resonant());
        assert_eq!(ctx(1, int(1)).resonance_level(), Some(0));
        assert!(ctx(2, rat(4, 3)).is_resonant());
        assert_eq!(ctx(2, rat(4, 3)).resonance_level(), Some(1));
        assert!(!ctx(2, rat(1, 2)).is_resonant());
        assert!(!ctx(2, rat(5, 4)).is_resonant());
        assert!(!ctx(3, int(0)).is_resonant());
    }

    #[test]
    fn witnesses() {
        let w = ctx(1, int(1)).resonance_witness().unwrap();
        assert_eq!((w.degree, w.order), (int(1), 1));
        let w = ctx(2, rat(4, 3)).resonance_witness().unwrap();
        assert_eq!((w.degree, w.order), (int(2), 2));
        assert!(ctx(2, rat(1, 2)).resonance_witness().is_none());
    }

    #[test]
    fn rejects_zero_dimension() {
        assert!(matches!(
            QContext::new(0, int(0), int(0)),
            Err(Error::InvalidContext(_))
        ));
    }
}
