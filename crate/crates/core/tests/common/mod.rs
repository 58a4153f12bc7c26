#![allow(dead_code)]

use std::sync::Arc;

use projquant::symbols::Exponents;
use projquant::{BaseTable, Monomial, Poly, RadicalSymbol, Rational, Scalar};
use proptest::prelude::*;

/// `(x exponents, ξ exponents, numerator, denominator, ν power)`.
pub type RawTerm = (Vec<u32>, Vec<u32>, i64, i64, i32);

pub fn raw_terms(n: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Vec<RawTerm>> {
    prop::collection::vec(
        (
            prop::collection::vec(0..=max_exp, n),
            prop::collection::vec(0..=max_exp, n),
            -6i64..=6,
            1i64..=4,
            0i32..=2,
        ),
        1..=max_terms,
    )
}

pub fn poly_from(n: usize, terms: &[RawTerm]) -> Poly {
    let mut p = Poly::zero(2 * n);
    for (x, xi, num, den, nu) in terms {
        let mono = Monomial::new(x.iter().chain(xi).copied().collect());
        p.add_term(mono, Scalar::monomial(Rational::new((*num).into(), (*den).into()), *nu));
    }
    p
}

pub fn symbol_from(table: &Arc<BaseTable>, terms: &[RawTerm]) -> RadicalSymbol {
    RadicalSymbol::from_poly(table, poly_from(table.n(), terms)).unwrap()
}

/// A polynomial times `H^a r2^b`, with exponents in quarters.
pub fn radical_from(table: &Arc<BaseTable>, terms: &[RawTerm], h: i64, r: i64) -> RadicalSymbol {
    let q = |k: i64| Rational::new(k.into(), 4.into());
    let mut e = vec![q(0); table.len()];
    e[table.index_of("r2").unwrap()] = q(r);
    e[table.index_of("H").unwrap()] = q(h);
    RadicalSymbol::from_sector(table, Exponents::new(e), poly_from(table.n(), terms)).unwrap()
}
