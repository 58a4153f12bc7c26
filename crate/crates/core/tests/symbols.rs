mod common;

use common::{poly_from, radical_from, raw_terms, symbol_from};
use projquant::sphere::sphere_table;
use projquant::{int, rat, RadicalSymbol};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn poly_ring_axioms(a in raw_terms(2, 2, 4), b in raw_terms(2, 2, 4), c in raw_terms(2, 2, 4)) {
        let (a, b, c) = (poly_from(2, &a), poly_from(2, &b), poly_from(2, &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn exact_division_inverts_multiplication(a in raw_terms(2, 2, 4), b in raw_terms(2, 2, 3)) {
        let (a, b) = (poly_from(2, &a), poly_from(2, &b));
        prop_assume!(!b.is_zero() && b.terms().next_back().unwrap().1.inverse().is_some());
        prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
    }

    #[test]
    fn leibniz_rule_on_radicals(
        a in raw_terms(2, 2, 3), b in raw_terms(2, 2, 3),
        ha in -6i64..6, hb in -6i64..6, ra in -4i64..4,
        var in 0usize..4,
    ) {
        let t = sphere_table(2).unwrap();
        let f = radical_from(&t, &a, ha, ra);
        let g = radical_from(&t, &b, hb, 0);
        let lhs = (&f * &g).partial(var).unwrap();
        let rhs = &(&f.partial(var).unwrap() * &g) + &(&f * &g.partial(var).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn partials_commute(a in raw_terms(2, 2, 3), h in -6i64..6, i in 0usize..4, j in 0usize..4) {
        let t = sphere_table(2).unwrap();
        let f = radical_from(&t, &a, h, 1);
        prop_assert_eq!(
            f.partial(i).unwrap().partial(j).unwrap(),
            f.partial(j).unwrap().partial(i).unwrap()
        );
    }

    #[test]
    fn euler_divergence_commutator(a in raw_terms(2, 3, 4), h in -6i64..6) {
        // E∘D = D∘E − D
        let t = sphere_table(2).unwrap();
        let s = &symbol_from(&t, &a) + &radical_from(&t, &a, h, 0);
        prop_assert_eq!(s.divergence().euler(), &s.euler().divergence() - &s.divergence());
    }

    #[test]
    fn decompose_is_a_partition(a in raw_terms(3, 3, 5), h in -6i64..6) {
        let t = sphere_table(3).unwrap();
        let s = &symbol_from(&t, &a) + &radical_from(&t, &a, h, 2);
        let parts = s.decompose();
        let mut sum = RadicalSymbol::zero(&t);
        for p in &parts {
            prop_assert_eq!(p.symbol.euler(), p.symbol.scale(&p.degree));
            let again = p.symbol.decompose();
            prop_assert_eq!(again.len(), 1);
            prop_assert_eq!(&again[0].symbol, &p.symbol);
            sum = &sum + &p.symbol;
        }
        prop_assert_eq!(sum, s);
        prop_assert!(parts.windows(2).all(|w| w[0].degree < w[1].degree));
    }

    #[test]
    fn divergence_is_nilpotent_on_polynomials(a in raw_terms(2, 3, 4)) {
        let t = sphere_table(2).unwrap();
        let mut s = symbol_from(&t, &a);
        let k = s.max_poly_xi_degree();
        for _ in 0..=k {
            s = s.divergence();
        }
        prop_assert!(s.is_zero());
    }
}

#[test]
fn divergence_of_square_root_hamiltonian_in_one_dimension() {
    // For n = 1, H = (1 + x²)² ξ², so H^{1/2} = (1 + x²) ξ on ξ > 0 and
    // D(H^{1/2}) = ∂_x ∂_ξ ((1 + x²) ξ) = 2x. The library keeps H^{1/2} radical, so
    // compare squares, which are polynomial after cancellation.
    let t = sphere_table(1).unwrap();
    let h = RadicalSymbol::base_power(&t, "H", rat(1, 2)).unwrap();
    let d = h.divergence();
    let x = RadicalSymbol::x(&t, 0).unwrap();
    assert_eq!(&d * &d, (&x * &x).scale(&int(4)));
    assert!((&d * &d).is_polynomial());
}
