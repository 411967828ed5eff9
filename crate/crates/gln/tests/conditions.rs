use loopyang_gln::central::{central_series, gln_algebra};
use loopyang_gln::family::{gln_condition_check, gln_g_family, lambda_closed_report};

#[test]
fn rank_one_conditions_at_order_six() {
    let alg = gln_algebra(2, 6).unwrap();
    let cs = central_series(&alg).unwrap();
    let g = gln_g_family(&alg, &cs);
    let reps = gln_condition_check(&alg, &g);
    assert!(!reps.iter().any(|r| r.id == "gln.C2"));
    for r in reps.into_iter().chain(lambda_closed_report(&alg, &g)) {
        assert!(r.passed(), "{}", r);
    }
}

#[test]
fn gl3_conditions_at_order_five() {
    let alg = gln_algebra(3, 5).unwrap();
    let cs = central_series(&alg).unwrap();
    let g = gln_g_family(&alg, &cs);
    let reps = gln_condition_check(&alg, &g);
    assert!(reps.iter().any(|r| r.id == "gln.C2"));
    for r in reps {
        assert!(r.passed(), "{}", r);
    }
}
