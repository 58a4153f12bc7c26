//! Sparse multivariate polynomials with [`Scalar`] coefficients.
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], whose ordering is graded
//! lexicographic. Every serialization walks that map, so output order is fixed.

use alloc::collections::btree_map::{self, BTreeMap};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::Zero;

use super::{Rational, Scalar};
use crate::error::{Error, Result};

/// Exponent vector of a monomial.
///
/// Ordered graded-lexicographically: total degree first, then the exponent of the
/// first variable, then the second, and so on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Degree in the variables `range`.
    pub fn degree_in(&self, range: core::ops::Range<usize>) -> u32 {
        self.0[range].iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<_>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `nvars` commuting variables over the `ν`-Laurent scalars.
///
/// Symbols on an `n`-dimensional chart use `nvars = 2n`: `x¹..xⁿ` followed by `ξ₁..ξₙ`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        Self::from_term(Monomial::one(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Scalar::one())
    }

    pub fn from_term(mono: Monomial, c: Scalar) -> Self {
        let mut p = Self::zero(mono.nvars());
        p.add_term(mono, c);
        p
    }

    /// The single variable with the given index.
    pub fn var(nvars: usize, index: usize) -> Result<Self> {
        if index >= nvars {
            return Err(Error::IndexOutOfRange { index, nvars });
        }
        Ok(Self::from_term(Monomial::var(nvars, index), Scalar::one()))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> btree_map::Iter<'_, Monomial, Scalar> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &Monomial) -> Scalar {
        self.terms.get(mono).cloned().unwrap_or_default()
    }

    /// Returns the constant scalar when the polynomial has no variable dependence.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(m, _)| m.is_one())
                .map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    pub fn add_term(&mut self, mono: Monomial, c: Scalar) {
        debug_assert_eq!(mono.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(self + other)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(self - other)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(self * other)
    }

    pub fn scalar_mul(&self, c: &Scalar) -> Poly {
        let mut out = Poly::zero(self.nvars);
        if c.is_zero() {
            return out;
        }
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v.scale(c))).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative in variable `var`.
    pub fn partial(&self, var: usize) -> Result<Poly> {
        if var >= self.nvars {
            return Err(Error::IndexOutOfRange {
                index: var,
                nvars: self.nvars,
            });
        }
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var] -= 1;
            out.add_term(
                Monomial(exps),
                c.scale(&Rational::from_integer(e.into())),
            );
        }
        Ok(out)
    }

    /// Keeps only the terms for which `keep` returns true.
    /// The exact quotient `self / g`, or `None` when `g` does not divide `self` or
    /// its leading coefficient is not a single power of `ν`.
    ///
    /// A single polynomial is a Gröbner basis of the ideal it generates, so the
    /// division algorithm decides divisibility. It stops at the first leading
    /// monomial that `g` cannot reach.
    pub fn div_exact(&self, g: &Poly) -> Option<Poly> {
        assert_eq!(self.nvars, g.nvars, "polynomial variable count mismatch");
        let (lead, lc) = g.terms.iter().next_back()?;
        let inv = lc.inverse()?;
        let mut rem = self.clone();
        let mut quotient = Poly::zero(self.nvars);
        while let Some((m, c)) = rem.terms.iter().next_back() {
            let t = Poly::from_term(m.checked_div(lead)?, c * &inv);
            rem -= &(&t * g);
            quotient += &t;
        }
        Some(quotient)
    }

    pub fn filter(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Maximal degree over the variables `range` (zero for the zero polynomial).
    pub fn max_degree_in(&self, range: core::ops::Range<usize>) -> u32 {
        self.terms
            .keys()
            .map(|m| m.degree_in(range.clone()))
            .max()
            .unwrap_or(0)
    }

    /// Embeds into a ring with more variables, placing variable `i` at `map[i]`.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Poly {
        let mut out = Poly::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0; nvars];
            for (i, &x) in m.0.iter().enumerate() {
                e[map[i]] += x;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        assert_eq!(self.nvars, rhs.nvars, "polynomial variable count mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        assert_eq!(self.nvars, rhs.nvars, "polynomial variable count mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "polynomial variable count mismatch");
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl core::fmt::Debug for Poly {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(m, c)| (&m.0, c)))
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    // n = 1: variable 0 is x¹, variable 1 is ξ₁.
    fn x() -> Poly {
        Poly::var(2, 0).unwrap()
    }
    fn p() -> Poly {
        Poly::var(2, 1).unwrap()
    }

    #[test]
    fn cancellation() {
        let s = &(&x() + &p()) + &(-&p());
        assert_eq!(s, x());
    }

    #[test]
    fn monomial_product() {
        let xp = &x() * &p();
        let sq = &xp * &xp;
        assert_eq!(sq, Poly::from_term(Monomial::new(vec![2, 2]), Scalar::one()));
    }

    #[test]
    fn nu_terms_cancel_to_empty_map() {
        let a = x().scalar_mul(&Scalar::nu_pow(1));
        let z = &a - &a;
        assert!(z.is_zero());
        assert_eq!(z.terms().count(), 0);
    }

    #[test]
    fn partials() {
        let x2p = Poly::from_term(Monomial::new(vec![2, 1]), Scalar::one());
        assert_eq!(x2p.partial(0).unwrap(), (&x() * &p()).scale(&rat(2, 1)));
        assert!(x().partial(1).unwrap().is_zero());
        assert_eq!(p().pow(3).partial(1).unwrap(), p().pow(2).scale(&rat(3, 1)));
        assert!(matches!(x().partial(2), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn equality_is_canonical() {
        assert_eq!(&x() + &p(), &p() + &x());
        assert!(Poly::zero(2).is_zero());
        assert_eq!(x().scale(&rat(2, 1)), &x() + &x());
    }

    #[test]
    fn exact_division() {
        let one = Poly::one(2);
        let g = &(&x() * &x()) + &one;
        let q = &(&p() * &x()) - &Poly::constant(2, Scalar::nu_pow(1));
        assert_eq!((&g * &q).div_exact(&g), Some(q.clone()));
        assert_eq!((&(&g * &q) + &one).div_exact(&g), None);
        assert_eq!(Poly::zero(2).div_exact(&g), Some(Poly::zero(2)));
        assert_eq!(g.div_exact(&Poly::zero(2)), None);
    }

    #[test]
    fn mismatched_nvars_is_an_error() {
        let a = Poly::var(2, 0).unwrap();
        let b = Poly::var(4, 0).unwrap();
        assert_eq!(
            a.try_add(&b),
            Err(Error::DimensionMismatch { left: 2, right: 4 })
        );
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn graded_lex_order() {
        let a = Monomial::new(vec![1, 0]);
        let b = Monomial::new(vec![0, 2]);
        let c = Monomial::new(vec![0, 1]);
        assert!(b > a);
        assert!(a > c);
    }
}
