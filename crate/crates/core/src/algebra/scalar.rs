//! Laurent polynomials in the formal unit `ν` with exact rational coefficients.
//!
//! All dependence on Planck's constant enters through `ν = iħ`, so no complex
//! arithmetic is needed anywhere: `(−iħ)^k` is `(−1)^k ν^k` and `−ħ²` is `ν²`.

use alloc::collections::btree_map::{self, BTreeMap};
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use super::Rational;

/// A finite sum `Σ c_k ν^k` with `k ∈ ℤ` and nonzero `c_k ∈ ℚ`.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scalar {
    terms: BTreeMap<i32, Rational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_rational(Rational::from_integer(c.into()))
    }

    /// `c · ν^power`.
    pub fn monomial(c: Rational, power: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(power, c);
        }
        Self { terms }
    }

    /// `ν^power`.
    pub fn nu_pow(power: i32) -> Self {
        Self::monomial(Rational::one(), power)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(One::is_one)
    }

    /// Coefficient of `ν^power` (zero when absent).
    pub fn coeff(&self, power: i32) -> Rational {
        self.terms.get(&power).cloned().unwrap_or_else(Rational::zero)
    }

    /// Returns the rational value if this scalar has no `ν` dependence.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    /// Terms in ascending power of `ν`.
    pub fn terms(&self) -> btree_map::Iter<'_, i32, Rational> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    /// `1/(c ν^k)` for a single nonzero term; Laurent polynomials with several
    /// terms have no inverse here.
    pub fn inverse(&self) -> Option<Self> {
        let mut it = self.terms.iter();
        match (it.next(), it.next()) {
            (Some((&k, c)), None) => Some(Self::monomial(c.recip(), -k)),
            _ => None,
        }
    }

    /// Multiplies by `ν^shift`.
    pub fn shift(&self, shift: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(&k, v)| (k + shift, v.clone())).collect(),
        }
    }

    fn add_term(&mut self, power: i32, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(power) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }
}

impl From<Rational> for Scalar {
    fn from(c: Rational) -> Self {
        Self::from_rational(c)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (&k, v) in &rhs.terms {
            self.add_term(k, v.clone());
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        for (&k, v) in &rhs.terms {
            self.add_term(k, -v.clone());
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (&a, ca) in &self.terms {
            for (&b, cb) in &rhs.terms {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(&k, v)| (k, -v.clone())).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Renders as `c0 + c1*nu + c2*nu^2`, ascending in the power of `ν`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&k, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write_nu(f, k)?,
                (_, false) => {
                    write!(f, "{mag}*")?;
                    write_nu(f, k)?;
                }
            }
        }
        Ok(())
    }
}

fn write_nu(f: &mut fmt::Formatter<'_>, k: i32) -> fmt::Result {
    match k {
        1 => f.write_str("nu"),
        k if k < 0 => write!(f, "nu^({k})"),
        k => write!(f, "nu^{k}"),
    }
}
