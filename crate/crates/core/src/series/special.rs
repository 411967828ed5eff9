//! Named series: G, J, the λ-kernels and the exponential divided difference.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::context::VarContext;
use super::graded::GradedSeries;
use super::poly::{q_int, Mono, Q};
use crate::error::SeriesError;

/// Bernoulli numbers B_0..=B_n with B_1 = -1/2.
pub fn bernoulli(n: usize) -> Vec<Q> {
    let mut b: Vec<Q> = vec![Q::one()];
    for m in 1..=n {
        // Σ_{k=0}^{m} binom(m+1,k) B_k = 0
        let mut s = Q::zero();
        let mut binom = BigInt::one();
        for (k, bk) in b.iter().enumerate() {
            s += bk * Q::from_integer(binom.clone());
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        b.push(-s / Q::from_integer(BigInt::from(m + 1)));
    }
    b
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}

/// G(v) = log(v/(e^{v/2} − e^{−v/2})) = −Σ_{k≥1} B_{2k} v^{2k}/(2k·(2k)!).
pub fn g_series(ctx: &Arc<VarContext>, v: usize) -> GradedSeries {
    let n = ctx.order() as usize;
    let b = bernoulli(n);
    let mut terms = Vec::new();
    let mut k = 1;
    while 2 * k <= n && (2 * k) as u32 * ctx.weight(v) <= ctx.order() {
        let c = -(&b[2 * k]) / Q::from_integer(BigInt::from(2 * k) * factorial(2 * k));
        terms.push((Mono::var(ctx.nvars(), v, (2 * k) as i16), c));
        k += 1;
    }
    GradedSeries::from_terms(ctx, terms)
}

/// J(v) = G(v) + v/2.
pub fn j_series(ctx: &Arc<VarContext>, v: usize) -> GradedSeries {
    &g_series(ctx, v) + &GradedSeries::var(ctx, v).scale(&Q::new(1.into(), 2.into()))
}

/// exp(c·x_v).
pub fn exp_linear(c: &GradedSeries, v: usize) -> Result<GradedSeries, SeriesError> {
    c.mul_var(v, 1).exp()
}

/// `num(ctx')/x_v` where `num` is built in the context of order N+1 and must be divisible by x_v.
pub fn divide_by_var<F>(ctx: &Arc<VarContext>, v: usize, num: F) -> Result<GradedSeries, SeriesError>
where
    F: FnOnce(&Arc<VarContext>) -> Result<GradedSeries, SeriesError>,
{
    let up = ctx.with_order(ctx.order() + ctx.weight(v));
    let n = num(&up)?;
    let q = n.div_var(v)?;
    q.retruncate(ctx)
}

/// (e^{a·v} − e^{−a·v})/v for a scalar series `a` of positive weight.
pub fn kernel(a: &GradedSeries, v: usize) -> Result<GradedSeries, SeriesError> {
    let ctx = a.ctx().clone();
    divide_by_var(&ctx, v, |up| {
        let a = a.retruncate(up)?;
        Ok(&exp_linear(&a, v)? - &exp_linear(&(-&a), v)?)
    })
}

/// (1 − e^{−c·v})/v, the gl_n kernel shape.
pub fn kernel_one_sided(c: &GradedSeries, v: usize) -> Result<GradedSeries, SeriesError> {
    let ctx = c.ctx().clone();
    divide_by_var(&ctx, v, |up| {
        let c = c.retruncate(up)?;
        Ok(&GradedSeries::one(up) - &exp_linear(&(-&c), v)?)
    })
}

/// P(x, y) = (e^x − e^y)/(x − y) = Σ_{n≥1} h_{n−1}(x, y)/n!, for x, y of positive weight.
pub fn divided_exp(x: &GradedSeries, y: &GradedSeries) -> Result<GradedSeries, SeriesError> {
    let ctx = x.ctx().clone();
    for s in [x, y] {
        if s.min_weight() == Some(0) {
            return Err(SeriesError::ExpConstantTerm(s.to_string()));
        }
    }
    let n = ctx.order() as usize;
    let mut xp = vec![GradedSeries::one(&ctx)];
    let mut yp = vec![GradedSeries::one(&ctx)];
    for k in 1..=n {
        let a = &xp[k - 1] * x;
        xp.push(a);
        let b = &yp[k - 1] * y;
        yp.push(b);
    }
    let mut acc = GradedSeries::zero(&ctx);
    for m in 0..=n {
        // h_m(x, y)/(m+1)!
        let mut h = GradedSeries::zero(&ctx);
        for a in 0..=m {
            h = &h + &(&xp[a] * &yp[m - a]);
        }
        if h.is_zero() {
            continue;
        }
        acc = &acc + &h.scale(&Q::new(BigInt::one(), factorial(m + 1)));
    }
    Ok(acc)
}

/// The integer `n` as a series.
pub fn int(ctx: &Arc<VarContext>, n: i64) -> GradedSeries {
    GradedSeries::constant(ctx, q_int(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::poly::q_frac;

    #[test]
    fn bernoulli_small() {
        let b = bernoulli(8);
        assert_eq!(b[1], q_frac(-1, 2));
        assert_eq!(b[2], q_frac(1, 6));
        assert_eq!(b[4], q_frac(-1, 30));
        assert_eq!(b[6], q_frac(1, 42));
        assert_eq!(b[8], q_frac(-1, 30));
        assert!(b[3].is_zero() && b[5].is_zero());
    }

    #[test]
    fn g_matches_log_oracle() {
        let c = VarContext::new(vec![("v", 1)], 5).unwrap();
        let g = g_series(&c, 0);
        let expect = GradedSeries::from_terms(
            &c,
            vec![(Mono::var(1, 0, 2), q_frac(-1, 24)), (Mono::var(1, 0, 4), q_frac(1, 2880))],
        );
        assert_eq!(g, expect);
        // oracle: log of the reciprocal of (e^{v/2} − e^{−v/2})/v
        for n in [5u32, 8] {
            let c = VarContext::new(vec![("v", 1)], n).unwrap();
            let half = GradedSeries::constant(&c, q_frac(1, 2));
            let s = kernel(&half, 0).unwrap();
            let oracle = s.unit_inverse().unwrap().log().unwrap();
            assert_eq!(g_series(&c, 0), oracle);
        }
    }

    #[test]
    fn j_minus_g() {
        let c = VarContext::new(vec![("v", 1)], 6).unwrap();
        let d = &j_series(&c, 0) - &g_series(&c, 0);
        assert_eq!(d, GradedSeries::var(&c, 0).scale(&q_frac(1, 2)));
    }

    #[test]
    fn kernel_of_hbar() {
        let c = VarContext::new(vec![("hbar", 1), ("v", 1)], 5).unwrap();
        let h = GradedSeries::var(&c, 0);
        let k = kernel(&h, 1).unwrap();
        // oracle: 2 Σ_k h^{2k+1} v^{2k}/(2k+1)!
        let v = GradedSeries::var(&c, 1);
        let expect = &(&h.scale(&q_int(2)) + &(&h.pow(3) * &v.pow(2)).scale(&q_frac(1, 3)))
            + &(&h.pow(5) * &v.pow(4)).scale(&q_frac(2, 120));
        assert_eq!(k, expect);
    }

    #[test]
    fn divided_exp_matches_division() {
        let c = VarContext::new(vec![("hbar", 1), ("u", 1), ("v", 1), ("w", 1)], 6).unwrap();
        let u = GradedSeries::var(&c, 1);
        let h = GradedSeries::var(&c, 0);
        let y = &GradedSeries::var(&c, 2) + &h;
        let p = divided_exp(&u, &y).unwrap();
        // oracle: (e^{u} − e^{y}) · (u − y)^{-1} via substitution u = y + w, divide by w
        let w = 3;
        let q = divide_by_var(&c, w, |up| {
            let y = y.retruncate(up)?;
            let ww = GradedSeries::var(up, w);
            let e1 = (&y + &ww).exp()?;
            Ok(&e1 - &y.exp()?)
        })
        .unwrap();
        let back = q.translate(w, &(&u - &y)).free_of(&[w]);
        assert_eq!(p, back);
    }
}
