//! Linear differential operators with radical coefficient functions.
//!
//! An operator is stored normal-ordered: `A = Σ_I a_I(x) ∂^I` with every coefficient
//! to the left of the derivatives. Coefficients are [`RadicalSymbol`]s free of `ξ`,
//! so rational functions of `1 + ‖x‖²` and its fractional powers are allowed.

use alloc::collections::btree_map::{self, BTreeMap};
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_traits::Zero;

use crate::algebra::{Monomial, Rational, Scalar};
use crate::error::{Error, Result};
use crate::symbols::{BaseTable, RadicalSymbol};

#[derive(Clone)]
pub struct DiffOperator {
    table: Arc<BaseTable>,
    terms: BTreeMap<Monomial, RadicalSymbol>,
}

impl DiffOperator {
    pub fn zero(table: &Arc<BaseTable>) -> Self {
        DiffOperator {
            table: table.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// Multiplication by the function `f`.
    pub fn multiplication(f: RadicalSymbol) -> Result<Self> {
        let table = f.table().clone();
        Self::from_term(&table, Monomial::one(table.n()), f)
    }

    pub fn identity(table: &Arc<BaseTable>) -> Self {
        Self::multiplication(RadicalSymbol::one(table)).expect("constant is x-only")
    }

    /// `∂/∂x^{i+1}`.
    pub fn derivative(table: &Arc<BaseTable>, i: usize) -> Result<Self> {
        if i >= table.n() {
            return Err(Error::IndexOutOfRange {
                index: i,
                nvars: table.n(),
            });
        }
        Self::from_term(table, Monomial::var(table.n(), i), RadicalSymbol::one(table))
    }

    /// `coeff · ∂^index`. The coefficient must not depend on `ξ`.
    pub fn from_term(table: &Arc<BaseTable>, index: Monomial, coeff: RadicalSymbol) -> Result<Self> {
        let mut op = Self::zero(table);
        op.add_term(index, coeff)?;
        Ok(op)
    }

    /// Adds `coeff · ∂^index` in place.
    pub fn add_term(&mut self, index: Monomial, coeff: RadicalSymbol) -> Result<()> {
        if index.nvars() != self.table.n() {
            return Err(Error::DimensionMismatch {
                left: self.table.n(),
                right: index.nvars(),
            });
        }
        if !coeff.same_table(&RadicalSymbol::zero(&self.table)) {
            return Err(Error::BaseTableMismatch);
        }
        if !is_x_only(&coeff) {
            return Err(Error::NotOperatorSymbol(alloc::format!(
                "operator coefficient depends on the momenta: {coeff}"
            )));
        }
        self.add_unchecked(index, coeff);
        Ok(())
    }

    fn add_unchecked(&mut self, index: Monomial, coeff: RadicalSymbol) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(index) {
            btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn table(&self) -> &Arc<BaseTable> {
        &self.table
    }

    pub fn n(&self) -> usize {
        self.table.n()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order of the derivative multi-index.
    pub fn terms(&self) -> btree_map::Iter<'_, Monomial, RadicalSymbol> {
        self.terms.iter()
    }

    pub fn coeff(&self, index: &Monomial) -> RadicalSymbol {
        self.terms
            .get(index)
            .cloned()
            .unwrap_or_else(|| RadicalSymbol::zero(&self.table))
    }

    /// Highest derivative order present (zero for the zero operator).
    pub fn order(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// The part of exact order `k`.
    pub fn homogeneous_part(&self, k: u32) -> DiffOperator {
        DiffOperator {
            table: self.table.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(i, _)| i.degree() == k)
                .map(|(i, c)| (i.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scalar_mul(&self, c: &Scalar) -> DiffOperator {
        let mut out = Self::zero(&self.table);
        for (i, a) in &self.terms {
            out.add_unchecked(i.clone(), a.scalar_mul(c));
        }
        out
    }

    /// Left multiplication by a function: `f ∘ A`.
    pub fn left_mul(&self, f: &RadicalSymbol) -> Result<DiffOperator> {
        if !is_x_only(f) {
            return Err(Error::NotOperatorSymbol(alloc::format!(
                "multiplier depends on the momenta: {f}"
            )));
        }
        let mut out = Self::zero(&self.table);
        for (i, a) in &self.terms {
            out.add_unchecked(i.clone(), a.try_mul(f)?);
        }
        Ok(out)
    }

    /// Applies the operator to a function of `x`.
    pub fn apply(&self, f: &RadicalSymbol) -> Result<RadicalSymbol> {
        let mut out = RadicalSymbol::zero(&self.table);
        for (i, a) in &self.terms {
            let d = partial_multi(f, i)?;
            out = &out + &a.try_mul(&d)?;
        }
        Ok(out)
    }

    /// Operator product `self ∘ other`, normal-ordered by the Leibniz rule
    /// `∂^I ∘ b = Σ_{K ≤ I} binom(I, K) (∂^K b) ∂^{I−K}`.
    pub fn compose(&self, other: &DiffOperator) -> Result<DiffOperator> {
        if !self.same_table(other) {
            return Err(Error::BaseTableMismatch);
        }
        let n = self.n();
        let mut out = Self::zero(&self.table);
        for (i, a) in &self.terms {
            let splits = sub_indices(i.exponents());
            for (j, b) in &other.terms {
                for k in &splits {
                    let weight = multi_binomial(i.exponents(), k);
                    let db = partial_multi(b, &Monomial::new(k.clone()))?;
                    if db.is_zero() {
                        continue;
                    }
                    let index: Vec<u32> = (0..n)
                        .map(|v| i.exponents()[v] - k[v] + j.exponents()[v])
                        .collect();
                    out.add_unchecked(Monomial::new(index), (a * &db).scale(&weight));
                }
            }
        }
        Ok(out)
    }

    /// `[self, other] = self ∘ other − other ∘ self`.
    pub fn commutator(&self, other: &DiffOperator) -> Result<DiffOperator> {
        Ok(&self.compose(other)? - &other.compose(self)?)
    }

    pub fn same_table(&self, other: &DiffOperator) -> bool {
        Arc::ptr_eq(&self.table, &other.table) || *self.table == *other.table
    }

    /// Mathematical equality of all coefficients.
    pub fn op_eq(&self, other: &DiffOperator) -> Result<bool> {
        if !self.same_table(other) {
            return Err(Error::BaseTableMismatch);
        }
        Ok((self - other).is_zero())
    }
}

/// True when `f` has no polynomial `ξ` dependence and no power of a ξ-bearing base.
pub(crate) fn is_x_only(f: &RadicalSymbol) -> bool {
    let table = f.table();
    f.max_poly_xi_degree() == 0
        && f.sectors().all(|(e, _)| {
            e.as_slice()
                .iter()
                .zip(table.bases())
                .all(|(x, b)| b.xi_degree == 0 || x.is_zero())
        })
}

/// `∂^index f` over the `x` variables.
pub(crate) fn partial_multi(f: &RadicalSymbol, index: &Monomial) -> Result<RadicalSymbol> {
    let mut out = f.clone();
    for (v, &e) in index.exponents().iter().enumerate() {
        for _ in 0..e {
            if out.is_zero() {
                return Ok(out);
            }
            out = out.partial_x(v)?;
        }
    }
    Ok(out)
}

/// All multi-indices `K ≤ I` componentwise.
fn sub_indices(i: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &e in i {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for prefix in &out {
            for k in 0..=e {
                let mut v = prefix.clone();
                v.push(k);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

fn binomial(n: u32, k: u32) -> Rational {
    let mut acc = Rational::from_integer(1.into());
    for t in 0..k {
        acc = acc * Rational::from_integer((n - t).into()) / Rational::from_integer((t + 1).into());
    }
    acc
}

fn multi_binomial(i: &[u32], k: &[u32]) -> Rational {
    i.iter()
        .zip(k)
        .map(|(&a, &b)| binomial(a, b))
        .fold(Rational::from_integer(1.into()), |x, y| x * y)
}

impl<'a> Add<&'a DiffOperator> for &'a DiffOperator {
    type Output = DiffOperator;

    fn add(self, rhs: &DiffOperator) -> DiffOperator {
        assert!(self.same_table(rhs), "operators over different base tables");
        let mut out = self.clone();
        for (i, c) in &rhs.terms {
            out.add_unchecked(i.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a DiffOperator> for &'a DiffOperator {
    type Output = DiffOperator;

    fn sub(self, rhs: &DiffOperator) -> DiffOperator {
        self + &(-rhs)
    }
}

impl Neg for &DiffOperator {
    type Output = DiffOperator;

    fn neg(self) -> DiffOperator {
        DiffOperator {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(i, c)| (i.clone(), -c)).collect(),
        }
    }
}

impl PartialEq for DiffOperator {
    fn eq(&self, other: &Self) -> bool {
        self.op_eq(other).unwrap_or(false)
    }
}

/// Renders as `coeff*d1^2*d2 + ...`, highest derivative multi-index first.
impl fmt::Display for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (i, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let mut derivs = String::new();
            for (v, &e) in i.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !derivs.is_empty() {
                    derivs.push('*');
                }
                derivs.push_str(&alloc::format!("d{}", v + 1));
                if e > 1 {
                    derivs.push_str(&alloc::format!("^{e}"));
                }
            }
            let coeff = alloc::format!("{c}");
            match (derivs.is_empty(), coeff.as_str()) {
                (true, _) => write!(f, "({coeff})")?,
                (false, "1") => f.write_str(&derivs)?,
                (false, _) => write!(f, "({coeff})*{derivs}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl RadicalSymbol {
    /// Value at `x = 0` of a ξ-free symbol whose bases all equal 1 at the origin.
    pub fn at_origin(&self) -> Option<Scalar> {
        let table = self.table();
        let one = Monomial::one(table.nvars());
        let origin_ok = |e: &crate::symbols::Exponents| {
            e.as_slice().iter().zip(table.bases()).all(|(x, b)| {
                x.is_zero() || (b.xi_degree == 0 && b.poly.coeff(&one).is_one())
            })
        };
        if !is_x_only(self) {
            return None;
        }
        let mut acc = Scalar::zero();
        for (e, p) in self.sectors() {
            if !origin_ok(e) {
                return None;
            }
            acc += &p.coeff(&one);
        }
        Some(acc)
    }
}
