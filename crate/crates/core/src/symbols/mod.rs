//! Polynomial and radical symbols on `T*ℝⁿ`.
//!
//! A [`RadicalSymbol`] is a finite sum of sectors `P · Π_j B_j^{e_j}` where `P` is a
//! polynomial in `(x, ξ)`, the `B_j` are bases declared in a [`BaseTable`] and the
//! exponents `e_j` are rationals. Each base is ξ-homogeneous, so the Euler operator
//! acts on every sector with a rational eigenvalue per monomial.
//!
//! Two sectors whose exponent vectors differ by an integer vector are always merged.
//! The merged sector is keyed by the componentwise minimum of the contributing
//! exponents and of the fractional representative in `[0, 1)`; the integer excess
//! of every contribution is multiplied into the polynomial part. With every
//! exponent zero a radical symbol is just a polynomial symbol.

mod display;
mod ops;

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{ToPrimitive, Zero};

use crate::algebra::{Monomial, Poly, Rational, Scalar};
use crate::error::{Error, Result};

pub use ops::HomogeneousPart;

/// One declared base polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Base {
    pub name: String,
    pub poly: Poly,
    pub xi_degree: u32,
}

/// The ordered list of bases that radical exponents refer to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseTable {
    n: usize,
    bases: Vec<Base>,
}

impl BaseTable {
    /// A table without bases: symbols over it are plain polynomials.
    pub fn empty(n: usize) -> Self {
        BaseTable {
            n,
            bases: Vec::new(),
        }
    }

    /// Appends a base. It must be nonzero, homogeneous in `ξ`, and its name unused.
    pub fn with_base(mut self, name: &str, poly: Poly) -> Result<Self> {
        let invalid = |reason: &str| Error::InvalidBase {
            name: name.to_string(),
            reason: reason.to_string(),
        };
        if poly.nvars() != 2 * self.n {
            return Err(Error::DimensionMismatch {
                left: 2 * self.n,
                right: poly.nvars(),
            });
        }
        if self.bases.iter().any(|b| b.name == name) {
            return Err(invalid("duplicate name"));
        }
        if poly.is_zero() {
            return Err(invalid("zero base"));
        }
        let n = self.n;
        let mut degrees = poly.terms().map(|(m, _)| m.degree_in(n..2 * n));
        let xi_degree = degrees.next().unwrap_or(0);
        if degrees.any(|d| d != xi_degree) {
            return Err(invalid("not homogeneous in the momenta"));
        }
        self.bases.push(Base {
            name: name.to_string(),
            poly,
            xi_degree,
        });
        Ok(self)
    }

    /// Chart dimension `n`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of polynomial variables, `2n`.
    pub fn nvars(&self) -> usize {
        2 * self.n
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn bases(&self) -> &[Base] {
        &self.bases
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.bases.iter().position(|b| b.name == name)
    }

    /// `Π_j B_j^{k_j}` for nonnegative integer powers.
    fn monomial_power(&self, powers: &[u32]) -> Poly {
        let mut out = Poly::one(self.nvars());
        for (b, &k) in self.bases.iter().zip(powers) {
            if k > 0 {
                out = &out * &b.poly.pow(k);
            }
        }
        out
    }
}

/// Exponent vector of a radical sector, one rational per base.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponents(Vec<Rational>);

impl Exponents {
    pub fn zero(len: usize) -> Self {
        Exponents(vec![Rational::zero(); len])
    }

    pub fn new(exps: Vec<Rational>) -> Self {
        Exponents(exps)
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    fn add(&self, other: &Exponents) -> Exponents {
        Exponents(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn fract(&self) -> Exponents {
        Exponents(self.0.iter().map(|e| e - e.floor()).collect())
    }

    /// Contribution of the bases to the ξ-degree of a sector.
    pub fn xi_degree(&self, table: &BaseTable) -> Rational {
        self.0
            .iter()
            .zip(table.bases())
            .map(|(e, b)| e * Rational::from_integer(b.xi_degree.into()))
            .fold(Rational::zero(), |a, b| a + b)
    }
}

/// `self − key` as nonnegative integers; `key` must lie below `self` in the same class.
fn integer_excess(e: &Exponents, key: &Exponents) -> Vec<u32> {
    e.0.iter()
        .zip(&key.0)
        .map(|(a, b)| {
            let d = a - b;
            debug_assert!(d.is_integer() && d >= Rational::zero());
            d.to_integer().to_u32().expect("exponent excess fits in u32")
        })
        .collect()
}

/// A finite sum of polynomial multiples of rational powers of the declared bases.
#[derive(Clone)]
pub struct RadicalSymbol {
    table: Arc<BaseTable>,
    sectors: BTreeMap<Exponents, Poly>,
}

/// Accumulates raw `(exponents, poly)` pieces into canonical sectors.
struct SectorBuilder<'a> {
    table: &'a BaseTable,
    by_class: BTreeMap<Exponents, (Exponents, Poly)>,
}

impl<'a> SectorBuilder<'a> {
    fn new(table: &'a BaseTable) -> Self {
        SectorBuilder {
            table,
            by_class: BTreeMap::new(),
        }
    }

    fn push(&mut self, e: Exponents, p: Poly) {
        if p.is_zero() {
            return;
        }
        let class = e.fract();
        match self.by_class.get_mut(&class) {
            None => {
                let key = Exponents(
                    e.0.iter()
                        .zip(&class.0)
                        .map(|(a, f)| a.clone().min(f.clone()))
                        .collect(),
                );
                let poly = &p * &self.table.monomial_power(&integer_excess(&e, &key));
                self.by_class.insert(class, (key, poly));
            }
            Some((key, poly)) => {
                let lowered = Exponents(
                    key.0.iter().zip(&e.0).map(|(a, b)| a.clone().min(b.clone())).collect(),
                );
                if lowered != *key {
                    let lift = self.table.monomial_power(&integer_excess(key, &lowered));
                    *poly = &*poly * &lift;
                    *key = lowered;
                }
                *poly += &(&p * &self.table.monomial_power(&integer_excess(&e, key)));
            }
        }
    }

    fn finish(self, table: Arc<BaseTable>) -> RadicalSymbol {
        let bases = self.table.bases();
        let sectors = self
            .by_class
            .into_iter()
            .filter(|(_, (_, p))| !p.is_zero())
            .map(|(class, (mut key, mut poly))| {
                // lift a negative offset back toward the class value while the base
                // divides the polynomial, undoing merges whose lower terms cancelled
                for (j, base) in bases.iter().enumerate() {
                    while key.0[j] < class.0[j] {
                        match poly.div_exact(&base.poly) {
                            Some(q) => {
                                poly = q;
                                key.0[j] += Rational::from_integer(1.into());
                            }
                            None => break,
                        }
                    }
                }
                (key, poly)
            })
            .collect();
        RadicalSymbol { table, sectors }
    }
}

impl RadicalSymbol {
    pub fn zero(table: &Arc<BaseTable>) -> Self {
        RadicalSymbol {
            table: table.clone(),
            sectors: BTreeMap::new(),
        }
    }

    pub fn from_poly(table: &Arc<BaseTable>, poly: Poly) -> Result<Self> {
        Self::from_sector(table, Exponents::zero(table.len()), poly)
    }

    pub fn constant(table: &Arc<BaseTable>, c: Scalar) -> Self {
        Self::from_poly(table, Poly::constant(table.nvars(), c)).expect("matching dimension")
    }

    pub fn one(table: &Arc<BaseTable>) -> Self {
        Self::constant(table, Scalar::one())
    }

    /// `poly · Π B_j^{e_j}`, canonicalized.
    pub fn from_sector(table: &Arc<BaseTable>, exps: Exponents, poly: Poly) -> Result<Self> {
        if poly.nvars() != table.nvars() {
            return Err(Error::DimensionMismatch {
                left: table.nvars(),
                right: poly.nvars(),
            });
        }
        if exps.0.len() != table.len() {
            return Err(Error::DimensionMismatch {
                left: table.len(),
                right: exps.0.len(),
            });
        }
        Ok(Self::from_pieces(table, [(exps, poly)]))
    }

    /// The base called `name` raised to `exponent`.
    pub fn base_power(table: &Arc<BaseTable>, name: &str, exponent: Rational) -> Result<Self> {
        let j = table.index_of(name).ok_or_else(|| Error::InvalidBase {
            name: name.to_string(),
            reason: "not declared in the base table".to_string(),
        })?;
        let mut e = Exponents::zero(table.len());
        e.0[j] = exponent;
        Self::from_sector(table, e, Poly::one(table.nvars()))
    }

    /// The coordinate `x^{i+1}` (0-based `i`).
    pub fn x(table: &Arc<BaseTable>, i: usize) -> Result<Self> {
        if i >= table.n() {
            return Err(Error::IndexOutOfRange {
                index: i,
                nvars: table.n(),
            });
        }
        Self::from_poly(table, Poly::var(table.nvars(), i)?)
    }

    /// The momentum `ξ_{i+1}` (0-based `i`).
    pub fn xi(table: &Arc<BaseTable>, i: usize) -> Result<Self> {
        if i >= table.n() {
            return Err(Error::IndexOutOfRange {
                index: i,
                nvars: table.n(),
            });
        }
        Self::from_poly(table, Poly::var(table.nvars(), table.n() + i)?)
    }

    fn from_pieces(
        table: &Arc<BaseTable>,
        pieces: impl IntoIterator<Item = (Exponents, Poly)>,
    ) -> Self {
        let mut b = SectorBuilder::new(table);
        for (e, p) in pieces {
            b.push(e, p);
        }
        b.finish(table.clone())
    }

    pub fn table(&self) -> &Arc<BaseTable> {
        &self.table
    }

    pub fn n(&self) -> usize {
        self.table.n()
    }

    pub fn is_zero(&self) -> bool {
        self.sectors.is_empty()
    }

    /// Sectors in ascending exponent order.
    pub fn sectors(&self) -> impl Iterator<Item = (&Exponents, &Poly)> {
        self.sectors.iter()
    }

    /// The polynomial part when every sector exponent is zero.
    pub fn as_poly(&self) -> Option<Poly> {
        match self.sectors.len() {
            0 => Some(Poly::zero(self.table.nvars())),
            1 => self
                .sectors
                .iter()
                .next()
                .filter(|(e, _)| e.is_zero())
                .map(|(_, p)| p.clone()),
            _ => None,
        }
    }

    pub fn same_table(&self, other: &RadicalSymbol) -> bool {
        Arc::ptr_eq(&self.table, &other.table) || *self.table == *other.table
    }

    fn check(&self, other: &RadicalSymbol) -> Result<()> {
        if self.same_table(other) {
            Ok(())
        } else {
            Err(Error::BaseTableMismatch)
        }
    }

    pub fn try_add(&self, other: &RadicalSymbol) -> Result<Self> {
        self.check(other)?;
        Ok(self + other)
    }

    pub fn try_sub(&self, other: &RadicalSymbol) -> Result<Self> {
        self.check(other)?;
        Ok(self - other)
    }

    pub fn try_mul(&self, other: &RadicalSymbol) -> Result<Self> {
        self.check(other)?;
        Ok(self * other)
    }

    /// Mathematical equality: sectors of one class are aligned to a common exponent
    /// and their polynomial parts compared.
    pub fn rs_eq(&self, other: &RadicalSymbol) -> Result<bool> {
        self.check(other)?;
        Ok((self - other).is_zero())
    }

    pub fn scalar_mul(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.table);
        }
        RadicalSymbol {
            table: self.table.clone(),
            sectors: self
                .sectors
                .iter()
                .map(|(e, p)| (e.clone(), p.scalar_mul(c)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.scalar_mul(&Scalar::from_rational(c.clone()))
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        Self::from_pieces(
            &self.table,
            self.sectors.iter().map(|(e, q)| (e.clone(), q * p)),
        )
    }

    /// Nonnegative integer power.
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.table);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative in polynomial variable `var` (`0..n` are `x`, `n..2n` are `ξ`).
    ///
    /// Uses `∂(P·B^e) = (∂P)·B^e + Σ_j e_j·P·(∂B_j)·B^{e−1_j}`.
    pub fn partial(&self, var: usize) -> Result<Self> {
        if var >= self.table.nvars() {
            return Err(Error::IndexOutOfRange {
                index: var,
                nvars: self.table.nvars(),
            });
        }
        let mut b = SectorBuilder::new(&self.table);
        for (e, p) in &self.sectors {
            b.push(e.clone(), p.partial(var)?);
            for (j, base) in self.table.bases().iter().enumerate() {
                if e.0[j].is_zero() {
                    continue;
                }
                let db = base.poly.partial(var)?;
                if db.is_zero() {
                    continue;
                }
                let mut lowered = e.clone();
                lowered.0[j] -= Rational::from_integer(1.into());
                b.push(lowered, (p * &db).scale(&e.0[j]));
            }
        }
        Ok(b.finish(self.table.clone()))
    }

    /// `∂/∂x^{i+1}`.
    pub fn partial_x(&self, i: usize) -> Result<Self> {
        if i >= self.n() {
            return Err(Error::IndexOutOfRange {
                index: i,
                nvars: self.n(),
            });
        }
        self.partial(i)
    }

    /// `∂/∂ξ_{i+1}`.
    pub fn partial_xi(&self, i: usize) -> Result<Self> {
        if i >= self.n() {
            return Err(Error::IndexOutOfRange {
                index: i,
                nvars: self.n(),
            });
        }
        self.partial(self.n() + i)
    }

    /// Largest polynomial degree in `ξ` over all sectors.
    pub fn max_poly_xi_degree(&self) -> u32 {
        let n = self.n();
        self.sectors
            .values()
            .map(|p| p.max_degree_in(n..2 * n))
            .max()
            .unwrap_or(0)
    }

    /// Largest polynomial degree in `x` over all sectors.
    pub fn max_poly_x_degree(&self) -> u32 {
        let n = self.n();
        self.sectors
            .values()
            .map(|p| p.max_degree_in(0..n))
            .max()
            .unwrap_or(0)
    }

    /// True when every sector exponent is zero.
    pub fn is_polynomial(&self) -> bool {
        self.sectors.keys().all(Exponents::is_zero)
    }

    /// ξ-degree of one monomial within the sector keyed by `e`.
    pub fn monomial_degree(&self, e: &Exponents, m: &Monomial) -> Rational {
        let n = self.n();
        Rational::from_integer(m.degree_in(n..2 * n).into()) + e.xi_degree(&self.table)
    }
}

impl<'a> Add<&'a RadicalSymbol> for &'a RadicalSymbol {
    type Output = RadicalSymbol;

    fn add(self, rhs: &RadicalSymbol) -> RadicalSymbol {
        assert!(self.same_table(rhs), "radical symbols over different base tables");
        RadicalSymbol::from_pieces(
            &self.table,
            self.sectors
                .iter()
                .chain(rhs.sectors.iter())
                .map(|(e, p)| (e.clone(), p.clone())),
        )
    }
}

impl<'a> Sub<&'a RadicalSymbol> for &'a RadicalSymbol {
    type Output = RadicalSymbol;

    fn sub(self, rhs: &RadicalSymbol) -> RadicalSymbol {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RadicalSymbol> for &'a RadicalSymbol {
    type Output = RadicalSymbol;

    fn mul(self, rhs: &RadicalSymbol) -> RadicalSymbol {
        assert!(self.same_table(rhs), "radical symbols over different base tables");
        let mut b = SectorBuilder::new(&self.table);
        for (ea, pa) in &self.sectors {
            for (eb, pb) in &rhs.sectors {
                b.push(ea.add(eb), pa * pb);
            }
        }
        b.finish(self.table.clone())
    }
}

impl Neg for &RadicalSymbol {
    type Output = RadicalSymbol;

    fn neg(self) -> RadicalSymbol {
        RadicalSymbol {
            table: self.table.clone(),
            sectors: self.sectors.iter().map(|(e, p)| (e.clone(), -p)).collect(),
        }
    }
}

impl PartialEq for RadicalSymbol {
    fn eq(&self, other: &Self) -> bool {
        self.rs_eq(other).unwrap_or(false)
    }
}

impl core::fmt::Debug for RadicalSymbol {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{self}")
    }
}
