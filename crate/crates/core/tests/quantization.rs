mod common;

use common::{radical_from, raw_terms, symbol_from};
use projquant::quantize::{
    coeff_q_closed, coeff_q_recursive, coeff_s_closed, coeff_s_recursive, invert_triangular, normal_order,
    pochhammer, quantize, series_terms, symbolize, unorder, SeriesCoefficients,
};
use projquant::sphere::sphere_table;
use projquant::{int, rat, Family, QContext, RadicalSymbol, Rational, Scalar};
use proptest::prelude::*;

fn contexts() -> Vec<QContext> {
    let mut out = Vec::new();
    for n in 1..=3 {
        for (l, m) in [(rat(1, 2), rat(1, 2)), (int(0), rat(1, 3)), (rat(1, 4), rat(1, 4))] {
            out.push(QContext::new(n, l, m).unwrap());
        }
    }
    out
}

#[test]
fn closed_and_recursive_forms_agree() {
    for ctx in contexts() {
        let table = invert_triangular(&ctx, 10).unwrap();
        for k in 0..=10i64 {
            for m in 0..=k as usize {
                let kk = int(k);
                let e = &kk - int(m as i64);
                assert_eq!(coeff_q_recursive(&ctx, &kk, m).unwrap(), coeff_q_closed(&ctx, &e, m).unwrap());
                let s = coeff_s_recursive(&ctx, &kk, m).unwrap();
                assert_eq!(s, coeff_s_closed(&ctx, &e, m).unwrap());
                assert_eq!(Some(&s), table.get(Family::Symbol, &kk, m));
            }
        }
    }
}

#[test]
fn half_density_coefficients_are_confluent() {
    // with E' = E + n/2 the coefficients collapse to (2E')_m / (m! 4^m (E')_m)
    for n in 1..=3 {
        let ctx = QContext::new(n, rat(1, 2), rat(1, 2)).unwrap();
        for k in 0..=8i64 {
            for m in 0..=k as usize {
                let e = int(k - m as i64);
                let ep = &e + rat(n as i64, 2);
                let confluent = pochhammer(&(int(2) * &ep), m)
                    / (pochhammer(&int(1), m) * int(4).pow(m as i32) * pochhammer(&ep, m));
                assert_eq!(coeff_q_closed(&ctx, &e, m).unwrap(), confluent, "n={n} k={k} m={m}");
            }
        }
    }
}

#[test]
fn resonant_contexts_fail_at_the_witness() {
    for (n, delta) in [(1, int(1)), (2, rat(4, 3)), (3, rat(3, 2))] {
        let ctx = QContext::new(n, int(0), delta).unwrap();
        let w = ctx.resonance_witness().unwrap();
        let err = coeff_q_recursive(&ctx, &w.degree, w.order).unwrap_err();
        assert!(matches!(err, projquant::Error::Resonance(_)), "{err}");
        // every lower degree still evaluates
        let k = w.degree.to_integer();
        for kk in 0..k.try_into().unwrap() {
            for m in 0..=kk as usize {
                coeff_q_recursive(&ctx, &int(kk), m).unwrap();
            }
        }
    }
}

#[test]
fn monomial_round_trips() {
    for ctx in contexts() {
        let t = sphere_table(ctx.n()).unwrap();
        let x = |i| RadicalSymbol::x(&t, i).unwrap();
        let p = |i| RadicalSymbol::xi(&t, i).unwrap();
        let mut s = RadicalSymbol::one(&t);
        for d in 0..4 {
            s = &(&s * &x(d % ctx.n())) * &p((d + 1) % ctx.n());
            assert_eq!(symbolize(&ctx, &quantize(&ctx, &s).unwrap()).unwrap(), s);
            assert_eq!(quantize(&ctx, &symbolize(&ctx, &s).unwrap()).unwrap(), s);
        }
    }
}

#[test]
fn length_element_series_collapses() {
    for (n, alpha) in [(3, rat(-1, 2)), (5, int(-1))] {
        let ctx = QContext::new(n, rat(1, 3), rat(1, 3)).unwrap();
        let t = sphere_table(n).unwrap();
        let h = RadicalSymbol::base_power(&t, "H", alpha).unwrap();
        assert_eq!(quantize(&ctx, &h).unwrap(), h);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_round_trips(a in raw_terms(2, 3, 5), n in 1usize..=3, which in 0usize..3) {
        let ctx = contexts().into_iter().filter(|c| c.n() == n).nth(which).unwrap();
        let t = sphere_table(n).unwrap();
        let mut terms = a.clone();
        for term in &mut terms {
            term.0.resize(n, 0);
            term.1.resize(n, 0);
        }
        let s = symbol_from(&t, &terms);
        prop_assert_eq!(symbolize(&ctx, &quantize(&ctx, &s).unwrap()).unwrap(), s.clone());
        prop_assert_eq!(quantize(&ctx, &symbolize(&ctx, &s).unwrap()).unwrap(), s.clone());
        prop_assert_eq!(unorder(&normal_order(&s).unwrap()), s);
    }

    #[test]
    fn quantization_preserves_the_filtration(a in raw_terms(2, 3, 5)) {
        let ctx = QContext::new(2, rat(1, 5), rat(2, 3)).unwrap();
        let t = sphere_table(2).unwrap();
        let s = symbol_from(&t, &a);
        let q = quantize(&ctx, &s).unwrap();
        prop_assert!(q.max_poly_xi_degree() <= s.max_poly_xi_degree());
        // the ν^m part of Q(s) − s is exactly the m-th series term
        let coeffs = SeriesCoefficients::quantization(&ctx);
        let (terms, _) = series_terms(&coeffs, &s, None).unwrap();
        let mut rebuilt = RadicalSymbol::zero(&t);
        for (m, term) in terms.iter().enumerate() {
            rebuilt = &rebuilt + &term.scalar_mul(&Scalar::nu_pow(m as i32));
        }
        prop_assert_eq!(rebuilt, q);
    }

    #[test]
    fn truncated_radical_round_trip(a in raw_terms(1, 2, 2), h in -7i64..-1) {
        // σ∘Q truncated at order N agrees with the identity up to ν^N
        use projquant::quantize::hypergeom_apply;
        // a generic context, so no radical degree lands on a resonance
        let ctx = QContext::new(1, rat(1, 5), rat(2, 7)).unwrap();
        let t = sphere_table(1).unwrap();
        let s = radical_from(&t, &a, h, 0);
        let q = hypergeom_apply(&ctx, Family::Quantization, &s, Some(2)).unwrap().value;
        let back = hypergeom_apply(&ctx, Family::Symbol, &q, Some(2)).unwrap().value;
        let diff = &back - &s;
        for (_, p) in diff.sectors() {
            for (_, c) in p.terms() {
                prop_assert!(c.terms().all(|(&k, _)| k > 2), "{}", diff);
            }
        }
    }
}

#[test]
fn spot_coefficients() {
    let half = QContext::new(1, rat(1, 2), rat(1, 2)).unwrap();
    assert_eq!(coeff_q_closed(&half, &int(0), 1).unwrap(), rat(1, 2));
    assert_eq!(coeff_s_recursive(&half, &int(1), 1).unwrap(), rat(-1, 2));
    assert_eq!(coeff_q_closed(&half, &int(0), 2).unwrap(), rat(1, 12));
    let zero = QContext::new(2, int(0), int(0)).unwrap();
    assert_eq!(coeff_q_recursive(&zero, &int(2), 1).unwrap(), rat(1, 5));
    assert_eq!(coeff_q_recursive(&zero, &int(2), 2).unwrap(), Rational::from_integer(0.into()));
}
