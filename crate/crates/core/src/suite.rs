//! Report-producing versions of the λ-calculus and adapted-generator identities.

use std::time::Instant;

use num_traits::Zero;

use crate::report::{param, CheckReport};
use crate::series::{q_frac, q_int, GradedSeries, Mono, Q};
use crate::y0::{factorial, Sign, Y0Algebra, Y0Kind, H, U, V};

fn first<T>(it: impl IntoIterator<Item = Result<(), T>>) -> Result<(), T> {
    it.into_iter().collect()
}

fn same(a: &GradedSeries, b: &GradedSeries, what: impl FnOnce() -> String) -> Result<(), String> {
    match a.first_difference(b) {
        None => Ok(()),
        Some(d) => Err(format!("{}: {}", what(), d)),
    }
}

/// λ⁺λ⁻ = id, pairwise commutation, weight preservation and (semisimple) the closed form of
/// t_{i,r} − λ⁺_j(v)t_{i,r}; generators t_{f,r} with r ≤ `r_max`.
pub fn lambda_report(alg: &Y0Algebra, r_max: usize) -> Vec<CheckReport> {
    let ctx = alg.ctx();
    let r_max = r_max.min(alg.order() as usize);
    let nodes = alg.nodes();
    let mut out = Vec::new();
    let t_of = |f: usize, r: usize| alg.gen_series(&ctx, f, r);
    let signs = [Sign::Plus, Sign::Minus];
    for f in 0..alg.families() {
        for i in 0..nodes {
            let ps = || vec![param("family", f + 1), param("i", i + 1), param("r_max", r_max), param("N", alg.order())];

            let t = Instant::now();
            let res = first((0..=r_max).flat_map(|r| {
                signs.iter().map(move |&s| {
                    let x = t_of(f, r);
                    let back = alg.lambda(s.flip(), i, &alg.lambda(s, i, &x, U), U);
                    same(&back, &x, || format!("λ{}λ{} on t_{}", s.flip().symbol(), s.symbol(), r))
                })
            }));
            out.push(CheckReport::from_result("lambda.inverse", ps(), res, t));

            let t = Instant::now();
            let res = first((0..=r_max).map(|r| {
                let x = t_of(f, r);
                for &s in &signs {
                    let y = alg.lambda(s, i, &x, U);
                    if let Some((m, _)) = y.terms().iter().find(|(m, _)| y.weight_of(m) != r as i64) {
                        return Err(format!("λ{}(t_{}) has the term {} of the wrong weight", s.symbol(), r, y.mono_name(m)));
                    }
                }
                Ok(())
            }));
            out.push(CheckReport::from_result("lambda.degree0", ps(), res, t));

            let t = Instant::now();
            let res = first((0..nodes).flat_map(|j| {
                (0..=r_max).map(move |r| {
                    let x = t_of(f, r);
                    for &s1 in &signs {
                        for &s2 in &signs {
                            let a = alg.lambda(s2, j, &alg.lambda(s1, i, &x, U), V);
                            let b = alg.lambda(s1, i, &alg.lambda(s2, j, &x, V), U);
                            same(&a, &b, || format!("λ{}_{}(u), λ{}_{}(v) on t_{}", s1.symbol(), i + 1, s2.symbol(), j + 1, r))?;
                        }
                    }
                    Ok(())
                })
            }));
            out.push(CheckReport::from_result("lambda.commute", ps(), res, t));

            if let Y0Kind::Semisimple(c) = alg.kind() {
                let t = Instant::now();
                let b = c.b(f, i);
                let res = first((0..=r_max).map(|r| {
                    let x = t_of(f, r);
                    let want = levendorskii(alg, b, r);
                    same(&(&x - &alg.lambda(Sign::Plus, i, &x, V)), &want, || format!("λ⁺ on t_{}", r))?;
                    same(&(&alg.lambda(Sign::Minus, i, &x, V) - &x), &want, || format!("λ⁻ on t_{}", r))
                }));
                out.push(CheckReport::from_result("lambda.levendorskii", ps(), res, t));
            }
        }
    }
    out
}

/// Σ_l C(r, 2l)·b·(b/2)^{2l}/(2l+1)·ℏ^{2l} v^{r−2l}.
fn levendorskii(alg: &Y0Algebra, b: i64, r: usize) -> GradedSeries {
    let ctx = alg.ctx();
    let nv = ctx.nvars();
    let mut want = GradedSeries::zero(&ctx);
    for l in 0..=r / 2 {
        let binom = factorial(r) / (factorial(2 * l) * factorial(r - 2 * l));
        let mut coef = Q::from_integer(binom) * q_int(b) * q_frac(1, 2 * l as i64 + 1);
        for _ in 0..2 * l {
            coef *= q_frac(b, 2);
        }
        if coef.is_zero() {
            continue;
        }
        let m = Mono::var(nv, H, 2 * l as i16).mul(&Mono::var(nv, V, (r - 2 * l) as i16));
        want = &want + &GradedSeries::monomial(&ctx, m, coef);
    }
    want
}

/// λ^±_i(u)ϖ_{j,r} = ϖ_{j,r} ± δ_ij u^r for r ≤ `r_max`, and the coordinate round trip.
/// In rank one ϖ is t′ and the report id says so.
pub fn adapted_report(alg: &Y0Algebra, r_max: usize) -> Vec<CheckReport> {
    let t = Instant::now();
    let ps = vec![param("r_max", r_max), param("N", alg.order())];
    let ad = match alg.adapted() {
        Ok(a) => a,
        Err(e) => return vec![CheckReport::from_result("adapted.law", ps, Err(e.to_string()), t)],
    };
    let id = if alg.nodes() == 1 { "adapted.t_prime" } else { "adapted.varpi" };
    let mut out = vec![CheckReport::from_result(id, ps.clone(), ad.verify_law(alg, r_max), t)];
    let t = Instant::now();
    let ctx = alg.ctx();
    let res = first((0..alg.families()).flat_map(|f| {
        let ad = &ad;
        let ctx = &ctx;
        (0..=r_max.min(alg.order() as usize)).map(move |r| {
            let x = alg.gen_series(ctx, f, r);
            same(&ad.from_varpi(alg, &ad.to_varpi(alg, &x)), &x, || format!("t_{},{}", f + 1, r))
        })
    }));
    out.push(CheckReport::from_result("adapted.round_trip", ps, res, t));
    out
}
