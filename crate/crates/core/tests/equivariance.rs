mod common;

use common::{raw_terms, symbol_from};
use projquant::equivariance::{
    act_on_density_op, act_on_symbol, check_equivariance, check_equivariance_with, check_symbol_equivariance,
    sl_generators, VectorField, Weight,
};
use projquant::quantize::{SeriesCoefficients, TruncatedCoefficients};
use projquant::sphere::sphere_table;
use projquant::{int, rat, QContext, RadicalSymbol};
use proptest::prelude::*;

#[test]
fn density_action_is_a_representation() {
    // L_[X,Y] = [L_X, L_Y] on densities of any weight
    let n = 2;
    let t = sphere_table(n).unwrap();
    let w = Weight(rat(2, 7));
    let gens = sl_generators(n);
    for x in &gens {
        for y in &gens {
            let lx = act_on_density_op(&t, x, &w).unwrap();
            let ly = act_on_density_op(&t, y, &w).unwrap();
            let lxy = act_on_density_op(&t, &x.bracket(y).unwrap(), &w).unwrap();
            assert_eq!(lx.commutator(&ly).unwrap(), lxy, "X = {x}, Y = {y}");
        }
    }
}

#[test]
fn affine_fields_commute_with_the_bare_ordering() {
    // with every correction dropped affine fields stay equivariant, the projective ones do not
    let ctx = QContext::new(2, rat(1, 3), rat(3, 4)).unwrap();
    let t = sphere_table(2).unwrap();
    let x1 = RadicalSymbol::x(&t, 0).unwrap();
    let p2 = RadicalSymbol::xi(&t, 1).unwrap();
    let s = &(&x1 * &p2) * &p2;
    let full = SeriesCoefficients::quantization(&ctx);
    let bare = TruncatedCoefficients::new(&full, 0);
    let mut broken = 0;
    for x in sl_generators(2) {
        let report = check_equivariance_with(&bare, &s, &x).unwrap();
        if x.is_affine() {
            assert!(report.passed, "{x}");
        } else if !report.passed {
            broken += 1;
        }
    }
    assert!(broken > 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn symbol_action_is_a_representation(a in raw_terms(2, 2, 4), i in 0usize..8, j in 0usize..8) {
        let t = sphere_table(2).unwrap();
        let s = symbol_from(&t, &a);
        let gens = sl_generators(2);
        let (x, y) = (&gens[i], &gens[j]);
        let d = Weight(rat(-3, 5));
        let lx = |s: &RadicalSymbol| act_on_symbol(x, &d, s).unwrap();
        let ly = |s: &RadicalSymbol| act_on_symbol(y, &d, s).unwrap();
        let lhs = act_on_symbol(&x.bracket(y).unwrap(), &d, &s).unwrap();
        prop_assert_eq!(lhs, &lx(&ly(&s)) - &ly(&lx(&s)));
    }

    #[test]
    fn random_symbols_are_equivariant(a in raw_terms(2, 2, 3), which in 0usize..8) {
        let ctx = QContext::new(2, rat(1, 5), rat(2, 3)).unwrap();
        let t = sphere_table(2).unwrap();
        let s = symbol_from(&t, &a);
        let x = &sl_generators(2)[which];
        prop_assert!(check_equivariance(&ctx, &s, x).unwrap().passed);
        prop_assert!(check_symbol_equivariance(&ctx, &s, x).unwrap().0);
    }
}

#[test]
fn user_supplied_projective_field() {
    // a combination of generators is checked like any generator
    let n = 1;
    let ctx = QContext::new(n, int(0), rat(1, 2)).unwrap();
    let t = sphere_table(n).unwrap();
    let gens = sl_generators(n);
    let comps = gens
        .iter()
        .zip([int(3), int(-1), rat(1, 2)])
        .fold(projquant::Poly::zero(2 * n), |acc, (g, c)| &acc + &g.components()[0].scale(&c));
    let x = VectorField::new(n, vec![comps]).unwrap();
    assert_eq!(x.sl_coordinates().unwrap(), vec![int(3), int(-1), rat(1, 2)]);
    let p = RadicalSymbol::xi(&t, 0).unwrap();
    let s = &(&p * &p) * &p;
    assert!(check_equivariance(&ctx, &s, &x).unwrap().passed);
}
