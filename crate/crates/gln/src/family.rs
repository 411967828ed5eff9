//! The gl_n g-family built from the Todd series, conditions (A), (B), (C0)–(C2), and the
//! closed forms of the λ-action on it.

use std::time::Instant;

use loopyang_core::cartan::hbar_over_qdiff;
use loopyang_core::checker::{b_window, check_a, check_b_all, condition_c_sides, exp_quotient};
use loopyang_core::phi::GFamily;
use loopyang_core::report::{param, CheckReport};
use loopyang_core::series::{q_frac, GradedSeries};
use loopyang_core::y0::{Sign, Y0Algebra, H, U, V};

use crate::central::{todd, CentralSeries};

/// g^±_i(v) = q^{∓(Δ_0 + θ_{·,0})}·ℏ/(q − q⁻¹)·Td^±_i(v), with θ_{i,0} for + and θ_{i+1,0} for −.
pub fn gln_g_family(alg: &Y0Algebra, cs: &CentralSeries) -> GFamily {
    let ctx = alg.ctx();
    let c = hbar_over_qdiff(&ctx, H, 1);
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for i in 0..alg.nodes() {
        let half = |f: usize, s: i64| {
            let t = &cs.zeta[0] + &alg.gen_series(&ctx, f, 0);
            t.mul_var(H, 1).scale(&q_frac(s, 2)).exp().expect("weight 1")
        };
        plus.push(&(&half(i, -1) * &c) * &todd(alg, cs, Sign::Plus, i + 1));
        minus.push(&(&half(i + 1, 1) * &c) * &todd(alg, cs, Sign::Minus, i + 1));
    }
    GFamily { plus, minus, gauge: "todd".into() }
}

fn c_report(id: &str, alg: &Y0Algebra, g: &GFamily, sign: Sign, i: usize, j: usize, left: &GradedSeries, right: &GradedSeries) -> CheckReport {
    let t = Instant::now();
    let (lhs, rhs) = condition_c_sides(alg, g, sign, i, j, left, right);
    CheckReport::compare(
        id,
        vec![param("sign", sign.symbol()), param("i", i + 1), param("j", j + 1), param("N", alg.order())],
        &lhs,
        &rhs,
        t,
    )
}

fn pow_pm(x: &GradedSeries, sign: Sign) -> GradedSeries {
    match sign {
        Sign::Plus => x.clone(),
        Sign::Minus => x.unit_inverse().expect("unit"),
    }
}

/// (A) for all pairs, (B) on the k-window, (C0), (C1), (C2).
pub fn gln_condition_check(alg: &Y0Algebra, g: &GFamily) -> Vec<CheckReport> {
    let ctx = alg.ctx();
    let n = alg.nodes();
    let (u, v, h) = (GradedSeries::var(&ctx, U), GradedSeries::var(&ctx, V), GradedSeries::var(&ctx, H));
    let one = GradedSeries::one(&ctx);
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut r = check_a(alg, g, i, j);
            r.id = "gln.A".into();
            out.push(r);
        }
    }
    for i in 0..n {
        for mut r in check_b_all(alg, g, i, &b_window(alg.order())) {
            r.id = "gln.B".into();
            out.push(r);
        }
    }
    for sign in [Sign::Plus, Sign::Minus] {
        let sh = h.scale_int(sign.sgn());
        for i in 0..n {
            for j in 0..n {
                if i.abs_diff(j) > 1 {
                    out.push(c_report("gln.C0", alg, g, sign, i, j, &one, &one));
                }
            }
            let left = exp_quotient(&ctx, U, &(&v + &sh)).expect("divisible");
            let right = exp_quotient(&ctx, V, &(&u + &sh)).expect("divisible");
            out.push(c_report("gln.C1", alg, g, sign, i, i, &left, &right));
            if i + 1 < n {
                let left = pow_pm(&exp_quotient(&ctx, U, &v).expect("divisible"), sign);
                let shifted = exp_quotient(&ctx, U, &(&v + &h)).expect("divisible");
                let right = pow_pm(&(&h.scale(&q_frac(-1, 2)).exp().expect("weight 1") * &shifted), sign);
                out.push(c_report("gln.C2", alg, g, sign, i, i + 1, &left, &right));
            }
        }
    }
    out
}

/// F^+ = e^{ℏ/2}(e^v − e^u)/(v − u)·(v + ℏ − u)/(e^{v+ℏ} − e^u) and F^- with ℏ ↦ −ℏ.
pub fn lambda_factor(alg: &Y0Algebra, sign: Sign) -> GradedSeries {
    let ctx = alg.ctx();
    let hs = GradedSeries::var(&ctx, H).scale_int(sign.sgn());
    let v = GradedSeries::var(&ctx, V);
    let a = exp_quotient(&ctx, U, &v).expect("divisible");
    let b = exp_quotient(&ctx, U, &(&v + &hs)).expect("divisible");
    let e = hs.scale(&q_frac(1, 2)).exp().expect("weight 1");
    &(&e * &a) * &b.unit_inverse().expect("unit")
}

/// λ^ε_{i'}(u)(g^±_i(v)) = g^±_i(v)·F^{±}(u, v)^{m} with m ∈ {−1, 0, 1}.
pub fn lambda_closed_report(alg: &Y0Algebra, g: &GFamily) -> Vec<CheckReport> {
    let n = alg.nodes();
    let fp = lambda_factor(alg, Sign::Plus);
    let fm = lambda_factor(alg, Sign::Minus);
    let mut out = Vec::new();
    for i in 0..n {
        for gs in [Sign::Plus, Sign::Minus] {
            let gi = g.get(gs, i);
            for i2 in 0..n {
                for ls in [Sign::Plus, Sign::Minus] {
                    let t = Instant::now();
                    // exponent of F for λ⁺; λ⁻ inverts it
                    let m = match gs {
                        Sign::Plus if i2 == i => 1,
                        Sign::Plus if i2 + 1 == i => -1,
                        Sign::Minus if i2 == i + 1 => 1,
                        Sign::Minus if i2 == i => -1,
                        _ => 0,
                    } * ls.sgn();
                    let f = match gs {
                        Sign::Plus => &fp,
                        Sign::Minus => &fm,
                    };
                    let want = match m {
                        1 => gi * f,
                        -1 => gi * &f.unit_inverse().expect("unit"),
                        _ => gi.clone(),
                    };
                    let lhs = alg.lambda(ls, i2, gi, U);
                    out.push(CheckReport::compare(
                        "gln.lambda_closed",
                        vec![
                            param("g", gs.symbol()),
                            param("i", i + 1),
                            param("lambda", ls.symbol()),
                            param("i'", i2 + 1),
                            param("N", alg.order()),
                        ],
                        &lhs,
                        &want,
                        t,
                    ));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::central::{central_series, gln_algebra};

    #[test]
    fn gl2_conditions_low_order() {
        let alg = gln_algebra(2, 4).unwrap();
        let cs = central_series(&alg).unwrap();
        let g = gln_g_family(&alg, &cs);
        for r in gln_condition_check(&alg, &g).into_iter().chain(lambda_closed_report(&alg, &g)) {
            assert!(r.passed(), "{}", r);
        }
    }

    #[test]
    fn gl3_c2_low_order() {
        let alg = gln_algebra(3, 3).unwrap();
        let cs = central_series(&alg).unwrap();
        let g = gln_g_family(&alg, &cs);
        let reps = gln_condition_check(&alg, &g);
        assert!(reps.iter().any(|r| r.id == "gln.C2"));
        for r in reps {
            assert!(r.passed(), "{}", r);
        }
    }

    #[test]
    fn perturbed_family_fails() {
        let alg = gln_algebra(2, 4).unwrap();
        let cs = central_series(&alg).unwrap();
        let g = gln_g_family(&alg, &cs);
        assert!(!g.plus[0].poly().is_constant());
        let bad = loopyang_core::checker::mutate(&g, Sign::Plus, 0, 1, 1, q_frac(1, 7));
        assert!(gln_condition_check(&alg, &bad).iter().any(|r| !r.passed()));
    }
}
