use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{Exponents, RadicalSymbol};
use crate::algebra::{Poly, Rational};

/// A ξ-homogeneous piece of a symbol: `E(symbol) = degree · symbol`.
#[derive(Clone, Debug, PartialEq)]
pub struct HomogeneousPart {
    pub degree: Rational,
    pub symbol: RadicalSymbol,
}

impl RadicalSymbol {
    /// Euler operator `E = Σ ξ_i ∂/∂ξ_i`.
    pub fn euler(&self) -> RadicalSymbol {
        let n = self.n();
        let mut out = RadicalSymbol::zero(&self.table);
        for i in 0..n {
            let xi = RadicalSymbol::xi(&self.table, i).expect("index in range");
            let d = self.partial_xi(i).expect("index in range");
            out = &out + &(&xi * &d);
        }
        out
    }

    /// Divergence operator `D = Σ ∂/∂x^i ∂/∂ξ_i`.
    pub fn divergence(&self) -> RadicalSymbol {
        let n = self.n();
        let mut out = RadicalSymbol::zero(&self.table);
        for i in 0..n {
            let d = self
                .partial_xi(i)
                .and_then(|s| s.partial_x(i))
                .expect("index in range");
            out = &out + &d;
        }
        out
    }

    /// Splits into ξ-homogeneous parts of pairwise distinct degree, ascending.
    ///
    /// The degree of a monomial is its polynomial ξ-degree plus the weighted
    /// ξ-degrees of the sector's bases.
    pub fn decompose(&self) -> Vec<HomogeneousPart> {
        let mut parts: BTreeMap<Rational, BTreeMap<Exponents, Poly>> = BTreeMap::new();
        for (e, p) in &self.sectors {
            let mut by_degree: BTreeMap<Rational, Poly> = BTreeMap::new();
            for (m, c) in p.terms() {
                let d = self.monomial_degree(e, m);
                by_degree
                    .entry(d)
                    .or_insert_with(|| Poly::zero(p.nvars()))
                    .add_term(m.clone(), c.clone());
            }
            for (d, q) in by_degree {
                parts.entry(d).or_default().insert(e.clone(), q);
            }
        }
        parts
            .into_iter()
            .map(|(degree, sectors)| HomogeneousPart {
                degree,
                symbol: RadicalSymbol {
                    table: self.table.clone(),
                    sectors,
                },
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use alloc::sync::Arc;

    use super::*;
    use crate::algebra::{int, rat, Monomial, Scalar};
    use crate::symbols::BaseTable;

    fn mono(t: &Arc<BaseTable>, exps: &[u32]) -> RadicalSymbol {
        RadicalSymbol::from_poly(t, Poly::from_term(Monomial::new(exps.to_vec()), Scalar::one()))
            .unwrap()
    }

    #[test]
    fn euler_and_divergence_on_monomials() {
        let t = Arc::new(BaseTable::empty(1));
        let xp = mono(&t, &[1, 1]);
        assert_eq!(xp.euler(), xp);
        assert_eq!(xp.divergence(), RadicalSymbol::one(&t));
        let x2p2 = mono(&t, &[2, 2]);
        assert_eq!(x2p2.divergence(), xp.scale(&int(4)));
        assert_eq!(x2p2.divergence().divergence(), RadicalSymbol::one(&t).scale(&int(4)));
        assert!(x2p2.divergence().divergence().divergence().is_zero());
    }

    #[test]
    fn decompose_polynomial() {
        let t = Arc::new(BaseTable::empty(1));
        let s = &mono(&t, &[1, 1]) + &mono(&t, &[0, 2]);
        let parts = s.decompose();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].degree, int(1));
        assert_eq!(parts[1].degree, int(2));
        assert!(RadicalSymbol::zero(&t).decompose().is_empty());
    }

    #[test]
    fn decompose_radical_degree() {
        // ξ-degree-2 base to the power −1/2 has degree −1
        let p = Poly::var(2, 1).unwrap();
        let t = Arc::new(BaseTable::empty(1).with_base("B", &p * &p).unwrap());
        let s = RadicalSymbol::base_power(&t, "B", rat(-1, 2)).unwrap();
        let parts = s.decompose();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].degree, int(-1));
        assert_eq!(s.euler(), s.scale(&int(-1)));
    }
}
