//! Normal ordering: symbols polynomial in `ξ` versus differential operators.
//!
//! A monomial `P(x) ξ^I` is sent to `ν^{|I|} P(x) ∂^I`. The unit is the same `ν` that
//! multiplies `D` in the quantization series; with this pairing the maps of
//! [`super::series`] intertwine the symbol and operator actions of `sl(n+1)`.

use alloc::format;

use crate::algebra::{Monomial, Poly, Scalar};
use crate::error::{Error, Result};
use crate::operator::DiffOperator;
use crate::symbols::RadicalSymbol;

/// Power of `ν` attached to a derivative of total order `k`.
fn unit_power(k: u32) -> Scalar {
    Scalar::nu_pow(k as i32)
}

/// Splits a `2n`-variable monomial into its `x` part (as a `2n`-variable monomial)
/// and its `ξ` exponents.
fn split(m: &Monomial, n: usize) -> (Monomial, Monomial) {
    let e = m.exponents();
    let mut x = e.to_vec();
    for v in x.iter_mut().skip(n) {
        *v = 0;
    }
    (Monomial::new(x), Monomial::new(e[n..].to_vec()))
}

/// The differential operator of a symbol that is polynomial in `ξ`.
///
/// Powers of ξ-free bases (such as `1 + ‖x‖²`) stay in the coefficients. A sector
/// carrying a nonzero power of a ξ-bearing base has no operator counterpart.
pub fn normal_order(s: &RadicalSymbol) -> Result<DiffOperator> {
    let table = s.table();
    let n = table.n();
    let mut op = DiffOperator::zero(table);
    for (e, p) in s.sectors() {
        for (x, b) in e.as_slice().iter().zip(table.bases()) {
            if b.xi_degree != 0 && !num_traits::Zero::is_zero(x) {
                return Err(Error::NotOperatorSymbol(format!(
                    "sector carries {}^({x}), which is not polynomial in the momenta",
                    b.name
                )));
            }
        }
        for (m, c) in p.terms() {
            let (xm, index) = split(m, n);
            let coeff_poly = Poly::from_term(xm, c * &unit_power(index.degree()));
            let coeff = RadicalSymbol::from_sector(table, e.clone(), coeff_poly)?;
            op.add_term(index, coeff)?;
        }
    }
    Ok(op)
}

/// Inverse of [`normal_order`].
pub fn unorder(op: &DiffOperator) -> RadicalSymbol {
    let table = op.table();
    let n = table.n();
    let mut out = RadicalSymbol::zero(table);
    for (index, coeff) in op.terms() {
        let mut exps = alloc::vec![0; 2 * n];
        exps[n..].copy_from_slice(index.exponents());
        let xi = Poly::from_term(Monomial::new(exps), Scalar::nu_pow(-(index.degree() as i32)));
        out = &out + &coeff.mul_poly(&xi);
    }
    out
}

#[cfg(test)]
mod tests {
    use alloc::sync::Arc;

    use super::*;
    use crate::algebra::rat;
    use crate::symbols::BaseTable;

    #[test]
    fn first_order_monomial() {
        let t = Arc::new(BaseTable::empty(1));
        let x = RadicalSymbol::x(&t, 0).unwrap();
        let p = RadicalSymbol::xi(&t, 0).unwrap();
        let op = normal_order(&(&x * &p)).unwrap();
        let expected =
            DiffOperator::from_term(&t, Monomial::new(alloc::vec![1]), x.scalar_mul(&Scalar::nu_pow(1)))
                .unwrap();
        assert_eq!(op, expected);
    }

    #[test]
    fn constant_is_identity() {
        let t = Arc::new(BaseTable::empty(2));
        assert_eq!(normal_order(&RadicalSymbol::one(&t)).unwrap(), DiffOperator::identity(&t));
    }

    #[test]
    fn round_trip() {
        let t = Arc::new(BaseTable::empty(2));
        let x1 = RadicalSymbol::x(&t, 0).unwrap();
        let p1 = RadicalSymbol::xi(&t, 0).unwrap();
        let p2 = RadicalSymbol::xi(&t, 1).unwrap();
        let s = &(&(&x1 * &p2.pow(2)) + &p1) + &x1.scale(&rat(-3, 4));
        assert_eq!(unorder(&normal_order(&s).unwrap()), s);
    }

    #[test]
    fn radical_momentum_power_is_rejected() {
        let p = Poly::var(2, 1).unwrap();
        let t = Arc::new(BaseTable::empty(1).with_base("H", &p * &p).unwrap());
        let s = RadicalSymbol::base_power(&t, "H", rat(-1, 2)).unwrap();
        assert!(matches!(normal_order(&s), Err(Error::NotOperatorSymbol(_))));
    }
}
