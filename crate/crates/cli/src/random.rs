//! Seeded generators for randomized suites. The same seed always yields the same
//! symbols, on every platform.

use std::sync::Arc;

use projquant::symbols::Exponents;
use projquant::{BaseTable, Monomial, Poly, RadicalSymbol, Rational, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Nonzero rational with small numerator and denominator.
pub fn rational(rng: &mut impl Rng) -> Rational {
    let mut num = rng.random_range(1..=9i64);
    if rng.random_bool(0.5) {
        num = -num;
    }
    Rational::new(num.into(), rng.random_range(1..=5i64).into())
}

fn exponents(rng: &mut impl Rng, n: usize, max_degree: u32) -> Vec<u32> {
    let mut e = vec![0; n];
    let total = rng.random_range(0..=max_degree);
    for _ in 0..total {
        e[rng.random_range(0..n)] += 1;
    }
    e
}

/// Polynomial with up to `max_terms` terms, x-degree and ξ-degree at most
/// `max_degree` each, and `ν` powers drawn from `nu_powers`.
pub fn poly(
    rng: &mut impl Rng,
    n: usize,
    max_degree: u32,
    max_terms: usize,
    nu_powers: std::ops::RangeInclusive<i32>,
) -> Poly {
    let mut p = Poly::zero(2 * n);
    for _ in 0..rng.random_range(1..=max_terms) {
        let mut e = exponents(rng, n, max_degree);
        e.extend(exponents(rng, n, max_degree));
        let c = Scalar::monomial(rational(rng), rng.random_range(nu_powers.clone()));
        p.add_term(Monomial::new(e), c);
    }
    p
}

/// Random polynomial symbol with rational coefficients.
pub fn polynomial_symbol(rng: &mut impl Rng, table: &Arc<BaseTable>, max_degree: u32) -> RadicalSymbol {
    let p = poly(rng, table.n(), max_degree, 4, 0..=0);
    RadicalSymbol::from_poly(table, p).expect("table dimension")
}

/// Random symbol with up to three sectors whose base exponents are small
/// rationals, and coefficients carrying positive and negative powers of `ν`.
pub fn radical_symbol(rng: &mut impl Rng, table: &Arc<BaseTable>) -> RadicalSymbol {
    let mut out = RadicalSymbol::zero(table);
    for _ in 0..rng.random_range(1..=3) {
        let exps = (0..table.len())
            .map(|_| {
                if rng.random_bool(0.4) {
                    Rational::from_integer(0.into())
                } else {
                    Rational::new(rng.random_range(-5..=5i64).into(), rng.random_range(2..=4i64).into())
                }
            })
            .collect();
        let p = poly(rng, table.n(), 2, 3, -1..=2);
        let s = RadicalSymbol::from_sector(table, Exponents::new(exps), p).expect("table dimension");
        out = &out + &s;
    }
    out
}
