//! Coefficient families of the quantization and symbol maps.
//!
//! With `a = (n+1)λ`, `b = (n+1)(1−δ)` and `E` the degree after `D^m` has acted:
//!
//! ```text
//! C_m(E)  = (1/m!)       (E + a)_m / (2E + b + m − 1)_m        quantization
//! C~_m(E) = ((−1)^m/m!)  (E + a)_m / (2E + b)_m                symbol
//! ```
//!
//! On integer degrees these are `C_m^k` and `C~_m^k` with `E = k − m`, which are also
//! produced by the first-order recursions in `m`. Both forms are kept: they are
//! checked against each other, and [`invert_triangular`] rebuilds `C~` from `C` alone.

use alloc::collections::BTreeMap;
use core::cell::RefCell;

use num_traits::{One, Zero};

use super::QContext;
use crate::algebra::{int, Rational};
use crate::error::{Error, Family, ResonanceWitness, Result};

/// Rising factorial `(a)_m = a(a+1)⋯(a+m−1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: &Rational, m: usize) -> Rational {
    (0..m).fold(Rational::one(), |acc, j| acc * (a + int(j as i64)))
}

fn factorial(m: usize) -> Rational {
    pochhammer(&Rational::one(), m)
}

fn resonance(family: Family, degree: Rational, order: usize) -> Error {
    Error::Resonance(ResonanceWitness {
        family,
        degree,
        order,
    })
}

/// `C_m(E)` from the closed Pochhammer form.
pub fn coeff_q_closed(ctx: &QContext, e: &Rational, m: usize) -> Result<Rational> {
    let b = ctx.lower_shift();
    // factor t of the lower Pochhammer symbol is the denominator of recursion step m−1−t
    let base = int(2) * e + &b + int(m as i64 - 1);
    for j in 0..m {
        let t = m - 1 - j;
        if (&base + int(t as i64)).is_zero() {
            return Err(resonance(Family::Quantization, e + int(m as i64), j + 1));
        }
    }
    let upper = pochhammer(&(e + ctx.upper_shift()), m);
    Ok(upper / (pochhammer(&base, m) * factorial(m)))
}

/// `C_m^k` from the recursion
/// `C_{j+1}^k = (k − j − 1 + a) / ((j+1)(2k − j − 2 + b)) · C_j^k`, `C_0^k = 1`.
pub fn coeff_q_recursive(ctx: &QContext, k: &Rational, m: usize) -> Result<Rational> {
    let a = ctx.upper_shift();
    let b = ctx.lower_shift();
    let mut c = Rational::one();
    for j in 0..m {
        let jj = int(j as i64);
        let den = int(j as i64 + 1) * (int(2) * k - &jj - int(2) + &b);
        if den.is_zero() {
            return Err(resonance(Family::Quantization, k.clone(), j + 1));
        }
        c = c * (k - &jj - int(1) + &a) / den;
    }
    Ok(c)
}

/// `C~_m(E)` from the closed confluent form.
pub fn coeff_s_closed(ctx: &QContext, e: &Rational, m: usize) -> Result<Rational> {
    let base = int(2) * e + ctx.lower_shift();
    for j in 0..m {
        if (&base + int(j as i64)).is_zero() {
            return Err(resonance(Family::Symbol, e + int(j as i64 + 1), j + 1));
        }
    }
    let sign = if m.is_multiple_of(2) { int(1) } else { int(-1) };
    let upper = pochhammer(&(e + ctx.upper_shift()), m);
    Ok(sign * upper / (pochhammer(&base, m) * factorial(m)))
}

/// `C~_m^k` by chaining
/// `C~_{j+1}^{κ+1} = −(κ + a) / ((j+1)(2κ − j + b)) · C~_j^κ` from `C~_0^{k−m} = 1`.
pub fn coeff_s_recursive(ctx: &QContext, k: &Rational, m: usize) -> Result<Rational> {
    let a = ctx.upper_shift();
    let b = ctx.lower_shift();
    let mut c = Rational::one();
    for j in 0..m {
        let kappa = k - int((m - j) as i64);
        let den = int(j as i64 + 1) * (int(2) * &kappa - int(j as i64) + &b);
        if den.is_zero() {
            return Err(resonance(Family::Symbol, kappa + int(1), j + 1));
        }
        c = -c * (kappa + &a) / den;
    }
    Ok(c)
}

/// Coefficients of both families keyed by `(family, k, m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffTable {
    ctx: QContext,
    entries: BTreeMap<(Family, Rational, usize), Rational>,
}

impl CoeffTable {
    pub fn new(ctx: QContext) -> Self {
        CoeffTable {
            ctx,
            entries: BTreeMap::new(),
        }
    }

    pub fn context(&self) -> &QContext {
        &self.ctx
    }

    pub fn get(&self, family: Family, k: &Rational, m: usize) -> Option<&Rational> {
        self.entries.get(&(family, k.clone(), m))
    }

    pub fn insert(&mut self, family: Family, k: Rational, m: usize, value: Rational) {
        self.entries.insert((family, k, m), value);
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Family, Rational, usize), &Rational)> {
        self.entries.iter()
    }
}

/// Builds `C_m^k` for `0 ≤ m ≤ k ≤ max_degree` and derives `C~_m^k` by inverting the
/// triangular action of `Q` degree by degree.
///
/// `σ∘Q = id` on a degree-`k` component reads `Σ_{m=0}^{p} C~_{p−m}^{k−m} C_m^k = 0`
/// for `p ≥ 1`, which determines `C~_p^k` from lower entries. The symbol recursion is
/// not used.
pub fn invert_triangular(ctx: &QContext, max_degree: usize) -> Result<CoeffTable> {
    let mut table = CoeffTable::new(ctx.clone());
    for k in 0..=max_degree {
        let kr = int(k as i64);
        for m in 0..=k {
            let c = coeff_q_recursive(ctx, &kr, m)?;
            table.insert(Family::Quantization, kr.clone(), m, c);
        }
    }
    for k in 0..=max_degree {
        let kr = int(k as i64);
        table.insert(Family::Symbol, kr.clone(), 0, Rational::one());
        for p in 1..=k {
            let mut acc = Rational::zero();
            for m in 1..=p {
                let q = &table.entries[&(Family::Quantization, kr.clone(), m)];
                let s = &table.entries[&(Family::Symbol, int((k - m) as i64), p - m)];
                acc += q * s;
            }
            table.insert(Family::Symbol, kr.clone(), p, -acc);
        }
    }
    Ok(table)
}

/// A source of series coefficients: the factor multiplying `ν^m D^m` on a
/// homogeneous component of degree `degree`.
pub trait Coefficients {
    fn context(&self) -> &QContext;

    fn coefficient(&self, degree: &Rational, m: usize) -> Result<Rational>;
}

/// The quantization or symbol family of a context, cached by `(k, m)`.
///
/// The cache lives in a `RefCell`, so a value of this type belongs to one thread.
#[derive(Debug)]
pub struct SeriesCoefficients {
    ctx: QContext,
    family: Family,
    table: RefCell<CoeffTable>,
}

impl SeriesCoefficients {
    pub fn new(ctx: &QContext, family: Family) -> Self {
        SeriesCoefficients {
            ctx: ctx.clone(),
            family,
            table: RefCell::new(CoeffTable::new(ctx.clone())),
        }
    }

    pub fn quantization(ctx: &QContext) -> Self {
        Self::new(ctx, Family::Quantization)
    }

    pub fn symbol(ctx: &QContext) -> Self {
        Self::new(ctx, Family::Symbol)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Snapshot of the cached entries.
    pub fn table(&self) -> CoeffTable {
        self.table.borrow().clone()
    }
}

impl Coefficients for SeriesCoefficients {
    fn context(&self) -> &QContext {
        &self.ctx
    }

    fn coefficient(&self, degree: &Rational, m: usize) -> Result<Rational> {
        if let Some(c) = self.table.borrow().get(self.family, degree, m) {
            return Ok(c.clone());
        }
        let e = degree - int(m as i64);
        let c = match self.family {
            Family::Quantization => coeff_q_closed(&self.ctx, &e, m)?,
            Family::Symbol => coeff_s_closed(&self.ctx, &e, m)?,
        };
        self.table
            .borrow_mut()
            .insert(self.family, degree.clone(), m, c.clone());
        Ok(c)
    }
}

/// Wraps a family and zeroes every coefficient above `max_order`.
pub struct TruncatedCoefficients<'a> {
    inner: &'a dyn Coefficients,
    max_order: usize,
}

impl<'a> TruncatedCoefficients<'a> {
    pub fn new(inner: &'a dyn Coefficients, max_order: usize) -> Self {
        TruncatedCoefficients { inner, max_order }
    }
}

impl Coefficients for TruncatedCoefficients<'_> {
    fn context(&self) -> &QContext {
        self.inner.context()
    }

    fn coefficient(&self, degree: &Rational, m: usize) -> Result<Rational> {
        if m > self.max_order {
            Ok(Rational::zero())
        } else {
            self.inner.coefficient(degree, m)
        }
    }
}
