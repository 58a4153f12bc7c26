//! Exact scalars and canonical sparse polynomials.

mod poly;
mod scalar;

pub use poly::{Monomial, Poly};
pub use scalar::Scalar;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// `num/den` as a [`Rational`]. Panics when `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// The integer `k` as a [`Rational`].
pub fn int(k: i64) -> Rational {
    Rational::from_integer(k.into())
}
