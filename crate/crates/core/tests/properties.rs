use std::sync::Arc;

use loopyang_core::cartan::CartanDatum;
use loopyang_core::drinfeld::{detecting_m, DrinfeldY};
use loopyang_core::series::special::g_series;
use loopyang_core::series::text::{from_text, to_text};
use loopyang_core::series::{q_frac, GradedSeries, Mono, USeries, VarContext};
use loopyang_core::y0::{Sign, Y0Algebra, U};
use proptest::prelude::*;

fn small_ctx() -> Arc<VarContext> {
    VarContext::new(vec![("hbar", 1), ("x", 1), ("y", 2)], 5).unwrap()
}

fn terms(nv: usize) -> impl Strategy<Value = Vec<(Vec<i16>, i64, i64)>> {
    prop::collection::vec((prop::collection::vec(0i16..3, nv), -4i64..5, 1i64..4), 0..6)
}

fn series(ctx: &Arc<VarContext>, t: &[(Vec<i16>, i64, i64)]) -> GradedSeries {
    GradedSeries::from_terms(ctx, t.iter().map(|(e, n, d)| (Mono::from_exps(e.clone()), q_frac(*n, *d))))
}

/// Random element of Y⁰: products of at most two generators with ℏ powers.
fn y0_element(alg: &Y0Algebra, t: &[(usize, usize, usize, usize, u8, i64)]) -> GradedSeries {
    let ctx = alg.ctx();
    let mut acc = GradedSeries::zero(&ctx);
    for &(f1, r1, f2, r2, h, c) in t {
        let f1 = f1 % alg.families();
        let f2 = f2 % alg.families();
        let x = &alg.gen_series(&ctx, f1, r1 % 3) * &alg.gen_series(&ctx, f2, r2 % 3);
        acc = &acc + &x.mul_var(0, h as i16).scale_int(c);
    }
    acc
}

fn y0_terms() -> impl Strategy<Value = Vec<(usize, usize, usize, usize, u8, i64)>> {
    prop::collection::vec((0usize..3, 0usize..3, 0usize..3, 0usize..3, 0u8..2, -3i64..4), 1..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exp_log_round_trip(t in terms(3)) {
        let ctx = small_ctx();
        let x = series(&ctx, &t).filter(|m| !m.is_one());
        let e = x.exp().unwrap();
        prop_assert_eq!(e.log().unwrap(), x.clone());
        prop_assert_eq!(e.unit_inverse().unwrap(), (-&x).exp().unwrap());
    }

    #[test]
    fn multiplication_associates(a in terms(3), b in terms(3), c in terms(3)) {
        let ctx = small_ctx();
        let (a, b, c) = (series(&ctx, &a), series(&ctx, &b), series(&ctx, &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn text_round_trip(t in terms(3)) {
        let ctx = small_ctx();
        let x = series(&ctx, &t);
        prop_assert_eq!(from_text(&ctx, &to_text(&x)).unwrap(), x);
    }

    #[test]
    fn shift_round_trip(t in prop::collection::vec(terms(3), 4), c in terms(3)) {
        let ctx = small_ctx();
        let modes: Vec<GradedSeries> = t.iter().map(|x| series(&ctx, x)).collect();
        let a = USeries::from_modes(&ctx, 3, modes);
        let c = series(&ctx, &c).filter(|m| !m.is_one());
        let back = a.shift(&c).unwrap().shift(&-&c).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn borel_is_linear(a in prop::collection::vec(terms(3), 3), b in prop::collection::vec(terms(3), 3), k in -3i64..4) {
        let ctx = small_ctx();
        let v = 1;
        let mk = |t: &Vec<Vec<(Vec<i16>, i64, i64)>>| {
            USeries::from_tail(&ctx, 3, t.iter().map(|x| series(&ctx, x).filter(|m| m.exp(v) == 0)).collect())
        };
        let (x, y) = (mk(&a), mk(&b));
        let kk = GradedSeries::int(&ctx, k);
        let lhs = x.scale(&kk).add(&y).unwrap().borel(v).unwrap();
        let rhs = &x.borel(v).unwrap().scale_int(k) + &y.borel(v).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn lambda_plus_minus_is_identity(t in y0_terms(), i in 0usize..2) {
        let alg = Y0Algebra::semisimple(&CartanDatum::builtin("B2").unwrap(), 4).unwrap();
        let x = y0_element(&alg, &t);
        let y = alg.lambda(Sign::Minus, i, &alg.lambda(Sign::Plus, i, &x, U), U);
        prop_assert_eq!(y, x);
    }

    #[test]
    fn dy_is_multiplicative(s in y0_terms(), t in y0_terms(), m in 1usize..4) {
        let alg = Y0Algebra::semisimple(&CartanDatum::builtin("A1").unwrap(), 5).unwrap();
        let dy = DrinfeldY::new(&alg, m);
        let (x, y) = (y0_element(&alg, &s), y0_element(&alg, &t));
        prop_assert_eq!(dy.apply(&(&x * &y)), &dy.apply(&x) * &dy.apply(&y));
        prop_assert_eq!(dy.apply(&(&x + &y)), &dy.apply(&x) + &dy.apply(&y));
    }

    #[test]
    fn dy_detects_nonzero_elements(t in y0_terms()) {
        let alg = Y0Algebra::semisimple(&CartanDatum::builtin("A1").unwrap(), 5).unwrap();
        let x = y0_element(&alg, &t);
        prop_assume!(!x.is_zero());
        prop_assert!(detecting_m(&alg, &x, 5).is_some());
    }
}

#[test]
fn g_is_even() {
    let ctx = VarContext::new(vec![("v", 1)], 12).unwrap();
    let g = g_series(&ctx, 0);
    assert!(g.terms().iter().all(|(m, _)| m.exp(0) % 2 == 0));
    let minus = g.eval_hom(&ctx, &[-&GradedSeries::var(&ctx, 0)]);
    assert_eq!(minus, g);
    // G(v) = −v²/24 + v⁴/2880 − …
    assert_eq!(g.coeff(&Mono::var(1, 0, 2)), q_frac(-1, 24));
    assert_eq!(g.coeff(&Mono::var(1, 0, 4)), q_frac(1, 2880));
}
