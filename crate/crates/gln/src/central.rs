//! Quantum determinant, Δ, 𝔷, the y_j series, the Todd series, and their images under Ψ_Y.

use std::sync::Arc;
use std::time::Instant;

use loopyang_core::cartan::GlnDatum;
use loopyang_core::phi::gamma_combo;
use loopyang_core::report::{param, CheckReport};
use loopyang_core::series::special::{divide_by_var, j_series};
use loopyang_core::series::{q_frac, q_int, GradedSeries, USeries, VarContext, Q};
use loopyang_core::y0::{Sign, Y0Algebra, H, U, V};

use crate::flag::FlagPartition;
use crate::rep::{Rep, Side};
use crate::GlnError;

/// Offset of x_1 in the homology layout [ℏ, u, v, w, x_1..x_d].
pub const X0: usize = 4;

/// Series context over ℏ, u, v, w and x_1..x_d, all of weight 1.
pub fn y_ctx(d: usize, order: u32) -> Arc<VarContext> {
    let mut syms: Vec<(String, u32)> = ["hbar", "u", "v", "w"].iter().map(|s| (s.to_string(), 1)).collect();
    for k in 1..=d {
        syms.push((format!("x{}", k), 1));
    }
    VarContext::new(syms, order).expect("unique symbols")
}

/// Homology-side operators in the layout of `y_ctx`.
pub fn y_rep(n: usize, d: usize) -> Result<Rep, GlnError> {
    let names = y_ctx(d, 1).names().to_vec();
    Rep::with_layout(Side::Y, n, d, names, X0)
}

pub fn gln_algebra(n: usize, order: u32) -> Result<Y0Algebra, GlnError> {
    if n < 2 {
        return Err(GlnError::BadShape(n, 0));
    }
    Ok(Y0Algebra::gln(GlnDatum { n }, order)?)
}

/// Ψ_Y on one component: d_{j,r} ↦ its closed image, scalars fixed.
pub fn psi_y(alg: &Y0Algebra, rep: &Rep, dd: &FlagPartition, x: &GradedSeries, target: &Arc<VarContext>) -> GradedSeries {
    let src = x.ctx();
    let mut images: Vec<GradedSeries> = (0..X0).map(|s| GradedSeries::var(target, s)).collect();
    for sym in X0..src.nvars() {
        let (f, r) = alg.gen_of(sym).expect("generator symbol");
        images.push(GradedSeries::from_poly(target, rep.d_y_mode(dd, f + 1, r)));
    }
    x.eval_hom(target, &images)
}

fn psi_useries(alg: &Y0Algebra, rep: &Rep, dd: &FlagPartition, x: &USeries, target: &Arc<VarContext>) -> Vec<GradedSeries> {
    x.modes().iter().map(|m| psi_y(alg, rep, dd, m, target)).collect()
}

/// Abstract central series of the gl_n Y⁰.
#[derive(Clone, Debug)]
pub struct CentralSeries {
    /// log qdet(u) = Σ_j d_j(u − (j−1)ℏ), in the context of order 2N+1.
    pub log_qdet: USeries,
    pub qdet: USeries,
    /// Borel transform of log qdet.
    pub bq: GradedSeries,
    /// B(𝔷)(v).
    pub bz: GradedSeries,
    /// 𝔷_r, r = 0..=N, at order N.
    pub zeta: Vec<GradedSeries>,
    /// Δ(u) = exp(𝔷(u)) at order N.
    pub delta: USeries,
    /// B(y_j)(v), j = 1..n, at order 2N+1.
    pub by: Vec<GradedSeries>,
}

fn exp_hv(ctx: &Arc<VarContext>, c: i64) -> GradedSeries {
    GradedSeries::var(ctx, H).mul_var(V, 1).scale_int(c).exp().expect("positive weight")
}

/// Σ_{k≥0} (c ℏv)^k/(k+1)! = (e^{cℏv} − 1)/(cℏv).
fn phi1(ctx: &Arc<VarContext>, c: i64) -> GradedSeries {
    let x = GradedSeries::var(ctx, H).mul_var(V, 1).scale_int(c);
    let mut acc = GradedSeries::zero(ctx);
    let mut pw = GradedSeries::one(ctx);
    let mut fact = Q::from_integer(1.into());
    let mut k = 0i64;
    while !pw.is_zero() {
        fact = fact * q_int(k + 1);
        acc = &acc + &pw.scale(&fact.recip());
        pw = &pw * &x;
        k += 1;
    }
    acc
}

pub fn central_series(alg: &Y0Algebra) -> Result<CentralSeries, GlnError> {
    let n = alg.families();
    let nn = alg.order();
    let big = alg.ctx_at(2 * nn + 1);
    let window = nn as usize + 1;
    let mut log_qdet = USeries::zero(&big, window);
    for j in 1..=n {
        let dj = alg.t_useries(&[(j - 1, 1)], &big, window);
        let c = GradedSeries::var(&big, H).scale_int(-(j as i64 - 1));
        log_qdet = log_qdet.add(&dj.shift(&c)?)?;
    }
    let qdet = log_qdet.exp()?;
    let bq = log_qdet.borel(V)?;
    // B(𝔷) = (1 − e^{ℏv})/(e^{(n−1)ℏv} − 1)·B(log qdet)
    let m = n as i64 - 1;
    let kfac = &phi1(&big, 1).scale_int(-1) * &phi1(&big, m).scale_int(m).unit_inverse()?;
    let bz = &kfac * &bq;
    let ctx = alg.ctx();
    let mut zeta = Vec::new();
    let mut fact = q_int(1);
    for r in 0..=nn as usize {
        if r > 0 {
            fact = fact * q_int(r as i64);
        }
        let c = bz.coeff_of_var(V, r as i16).div_var(H)?.scale(&fact).retruncate(&ctx)?;
        zeta.push(c);
    }
    let tail = zeta.iter().map(|z| z.mul_var(H, 1)).collect();
    let delta = USeries::from_tail(&ctx, nn as usize, tail).exp()?;
    let mut by = Vec::new();
    for j in 1..=n {
        let mut y = &exp_hv(&big, -(j as i64 - 1)) * &bz;
        y = &y + &alg.b_series_in(&big, j - 1, V);
        for s in 1..j {
            let f = &exp_hv(&big, -(s as i64)) - &exp_hv(&big, -(s as i64 - 1));
            y = &y + &(&f * &alg.b_series_in(&big, j - s - 1, V));
        }
        by.push(y);
    }
    Ok(CentralSeries { log_qdet, qdet, bq, bz, zeta, delta, by })
}

/// td^±_i(v) (node `i` 1-based) at order N.
pub fn todd_log(alg: &Y0Algebra, cs: &CentralSeries, sign: Sign, i: usize) -> GradedSeries {
    let nn = alg.order();
    let ctx = alg.ctx();
    let jctx = alg.ctx_at(2 * nn + 2);
    let (by, shift, outer) = match sign {
        Sign::Plus => (&cs.by[i - 1], 1, 1),
        Sign::Minus => (&cs.by[i], 0, -1),
    };
    let hb = GradedSeries::var(&jctx, H).scale_int(shift);
    let mut jd = j_series(&jctx, V).derivative(V);
    let mut acc = GradedSeries::zero(&ctx);
    for r in 0..=nn as usize {
        let c = by.coeff_of_var(V, r as i16).retruncate(&ctx).expect("same symbols");
        let term = jd.translate(V, &hb).retruncate(&ctx).expect("same symbols");
        let sg = if r % 2 == 0 { outer } else { -outer };
        acc = &acc + &(&c * &term).scale_int(sg);
        jd = jd.derivative(V);
    }
    acc
}

pub fn todd(alg: &Y0Algebra, cs: &CentralSeries, sign: Sign, i: usize) -> GradedSeries {
    todd_log(alg, cs, sign, i).exp().expect("positive weight")
}

/// g(y) = (1 − e^{−y})/y truncated in `ctx`.
fn g_of(ctx: &Arc<VarContext>, y: &GradedSeries) -> GradedSeries {
    let mut acc = GradedSeries::zero(ctx);
    let mut pw = GradedSeries::one(ctx);
    let mut fact = q_int(1);
    let mut k = 0i64;
    while !pw.is_zero() {
        fact = fact * q_int(k + 1);
        let sg = if k % 2 == 0 { 1 } else { -1 };
        acc = &acc + &pw.scale(&(q_int(sg) / &fact));
        pw = &pw * y;
        k += 1;
    }
    acc
}

/// Closed product for Ψ_Y(Td^±_i(v)) on a component.
pub fn todd_closed(ctx: &Arc<VarContext>, dd: &FlagPartition, sign: Sign, i: usize) -> GradedSeries {
    let (block, s) = match sign {
        Sign::Plus => (dd.block(i), 1),
        Sign::Minus => (dd.block(i + 1), -1),
    };
    let mut acc = GradedSeries::one(ctx);
    for k in block {
        let y = &GradedSeries::var(ctx, V) - &GradedSeries::var(ctx, X0 + k);
        let ys = &y + &GradedSeries::var(ctx, H).scale_int(s);
        let f = g_of(ctx, &y).unit_inverse().expect("unit");
        acc = &(&acc * &f) * &g_of(ctx, &ys);
    }
    acc
}

/// u⁻¹-coefficients 1..=len of Π_k (1 + Σ_s a_k(s) u^{-s}) where a_k(s) = c(x_k + b)^{s−1}.
fn closed_u_product(ctx: &Arc<VarContext>, d: usize, c: &GradedSeries, b: &GradedSeries, len: usize) -> USeries {
    let mut acc = USeries::one(ctx, len);
    for k in 0..d {
        let y = &GradedSeries::var(ctx, X0 + k) + b;
        let mut tail = Vec::new();
        let mut pw = c.clone();
        for _ in 0..len {
            tail.push(pw.clone());
            pw = &pw * &y;
        }
        acc = acc.mul(&USeries::one(ctx, len).add(&USeries::from_tail(ctx, len, tail)).expect("shape")).expect("shape");
    }
    acc
}

fn compare_modes(a: &[GradedSeries], b: &[GradedSeries]) -> Result<(), String> {
    for (s, (x, y)) in a.iter().zip(b).enumerate() {
        if let Some(e) = x.first_difference(y) {
            return Err(format!("u^-{}: {}", s, e));
        }
    }
    Ok(())
}

fn diff(a: &GradedSeries, b: &GradedSeries) -> Result<(), String> {
    match a.first_difference(b) {
        None => Ok(()),
        Some(e) => Err(e),
    }
}

/// Representation checks for qdet, Δ, 𝔷 and B(y_j) on every component of (n, d).
pub fn central_report(alg: &Y0Algebra, cs: &CentralSeries, d: usize) -> Result<Vec<CheckReport>, GlnError> {
    let n = alg.families();
    let nn = alg.order();
    let rep = y_rep(n, d)?;
    let ctx = y_ctx(d, nn);
    let big = y_ctx(d, 2 * nn + 1);
    let len = nn as usize;
    let h = GradedSeries::var(&ctx, H);
    let mut out = Vec::new();
    for dd in rep.partitions() {
        let base = vec![param("n", n), param("d", d), param("dd", &dd), param("N", nn)];

        let t = Instant::now();
        let lhs = psi_useries(alg, &rep, &dd, &cs.qdet, &ctx);
        let c = h.scale_int(n as i64 - 1);
        let want = closed_u_product(&ctx, d, &c, &c, len);
        out.push(CheckReport::from_result("gln.qdet", base.clone(), compare_modes(&lhs[..=len], want.modes()), t));

        let t = Instant::now();
        let lhs = psi_useries(alg, &rep, &dd, &cs.delta, &ctx);
        let want = closed_u_product(&ctx, d, &(-&h), &GradedSeries::zero(&ctx), len);
        out.push(CheckReport::from_result("gln.delta", base.clone(), compare_modes(&lhs, want.modes()), t));

        let t = Instant::now();
        let z0 = psi_y(alg, &rep, &dd, &cs.zeta[0], &ctx);
        let mut r = diff(&z0, &GradedSeries::int(&ctx, -(d as i64)));
        if r.is_ok() {
            r = zeta_symmetric(alg, &rep, &dd, cs, &ctx);
        }
        out.push(CheckReport::from_result("gln.zeta", base.clone(), r, t));

        for j in 1..=n {
            let t = Instant::now();
            let lhs = psi_y(alg, &rep, &dd, &cs.by[j - 1], &big);
            let want = by_closed(&big, &dd, j);
            let mut p = base.clone();
            p.push(param("j", j));
            out.push(CheckReport::compare("gln.by", p, &lhs, &want, t));
        }
    }
    Ok(out)
}

/// (1 − e^{ℏv})/v·Σ_{k∈I_j} e^{x_k v}.
pub fn by_closed(ctx: &Arc<VarContext>, dd: &FlagPartition, j: usize) -> GradedSeries {
    let k = divide_by_var(ctx, V, |up| Ok(&GradedSeries::one(up) - &exp_hv(up, 1))).expect("v-divisible");
    let mut s = GradedSeries::zero(ctx);
    for x in dd.block(j) {
        s = &s + &GradedSeries::var(ctx, X0 + x).mul_var(V, 1).exp().expect("weight 2");
    }
    &k * &s
}

fn zeta_symmetric(alg: &Y0Algebra, rep: &Rep, dd: &FlagPartition, cs: &CentralSeries, ctx: &Arc<VarContext>) -> Result<(), String> {
    let d = rep.d();
    for (r, z) in cs.zeta.iter().enumerate() {
        let p = psi_y(alg, rep, dd, z, ctx);
        for a in 0..d {
            for b in a + 1..d {
                let mut perm: Vec<usize> = (0..ctx.nvars()).collect();
                perm.swap(X0 + a, X0 + b);
                if GradedSeries::from_poly(ctx, p.poly().permute(&perm)) != p {
                    return Err(format!("zeta_{} not symmetric in x{}, x{}", r, a + 1, b + 1));
                }
            }
        }
    }
    Ok(())
}

/// Abstract identities: the two routes to B(log qdet), λ-invariance of 𝔷 and the λ-action on B(y_j).
pub fn central_abstract_report(alg: &Y0Algebra, cs: &CentralSeries) -> Vec<CheckReport> {
    let n = alg.families();
    let nn = alg.order();
    let big = alg.ctx_at(2 * nn + 1);
    let base = vec![param("n", n), param("N", nn)];
    let mut out = Vec::new();

    let t = Instant::now();
    let mut bq = GradedSeries::zero(&big);
    for j in 1..=n {
        bq = &bq + &(&exp_hv(&big, j as i64 - 1) * &alg.b_series_in(&big, j - 1, V));
    }
    out.push(CheckReport::compare("gln.borel_qdet", base.clone(), &cs.bq, &bq, t));

    let t = Instant::now();
    let mut r = Ok(());
    'z: for i in 0..alg.nodes() {
        for sign in [Sign::Plus, Sign::Minus] {
            for (k, z) in cs.zeta.iter().enumerate() {
                if let Some(e) = alg.lambda(sign, i, z, U).first_difference(z) {
                    r = Err(format!("lambda{}_{} zeta_{}: {}", sign.symbol(), i + 1, k, e));
                    break 'z;
                }
            }
        }
    }
    out.push(CheckReport::from_result("gln.zeta_lambda", base.clone(), r, t));

    // (λ^±_i(u) − 1)B(y_j)(v) = ±(δ_ij − δ_{j,i+1})(e^{ℏv} − 1)/v·e^{uv}
    let kern = divide_by_var(&big, V, |up| Ok(&exp_hv(up, 1) - &GradedSeries::one(up))).expect("v-divisible");
    let euv = GradedSeries::var(&big, U).mul_var(V, 1).exp().expect("weight 2");
    let rhs = &kern * &euv;
    for i in 0..alg.nodes() {
        for sign in [Sign::Plus, Sign::Minus] {
            for j in 0..n {
                let t = Instant::now();
                let lhs = &alg.lambda(sign, i, &cs.by[j], U) - &cs.by[j];
                let c = sign.sgn() * ((i == j) as i64 - (j == i + 1) as i64);
                let mut p = base.clone();
                p.extend([param("sign", sign.symbol()), param("i", i + 1), param("j", j + 1)]);
                out.push(CheckReport::compare("gln.by_lambda", p, &lhs, &rhs.scale_int(c), t));
            }
        }
    }
    out
}

/// Todd checks: closed products on every component and the G-series identity.
pub fn todd_report(alg: &Y0Algebra, cs: &CentralSeries, d: usize) -> Result<Vec<CheckReport>, GlnError> {
    let n = alg.families();
    let nn = alg.order();
    let rep = y_rep(n, d)?;
    let ctx = y_ctx(d, nn);
    let actx = alg.ctx();
    let mut out = Vec::new();
    for i in 1..n {
        let t = Instant::now();
        let sum = &todd_log(alg, cs, Sign::Plus, i) + &todd_log(alg, cs, Sign::Minus, i);
        let d0 = &alg.gen_series(&actx, i, 0) - &alg.gen_series(&actx, i - 1, 0);
        let lhs = &sum + &d0.mul_var(H, 1).scale(&q_frac(1, 2));
        let want = gamma_combo(alg, &[(i, 1), (i - 1, -1)]);
        out.push(CheckReport::compare("gln.todd_gamma", vec![param("n", n), param("i", i), param("N", nn)], &lhs, &want, t));
        for sign in [Sign::Plus, Sign::Minus] {
            let td = todd(alg, cs, sign, i);
            for dd in rep.partitions() {
                let t = Instant::now();
                let lhs = psi_y(alg, &rep, &dd, &td, &ctx);
                let want = todd_closed(&ctx, &dd, sign, i);
                out.push(CheckReport::compare(
                    "gln.todd",
                    vec![param("n", n), param("d", d), param("dd", &dd), param("sign", sign.symbol()), param("i", i), param("N", nn)],
                    &lhs,
                    &want,
                    t,
                ));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn central_small() {
        let alg = gln_algebra(2, 4).unwrap();
        let cs = central_series(&alg).unwrap();
        for r in central_report(&alg, &cs, 2).unwrap() {
            assert!(r.passed(), "{}", r);
        }
        for r in central_abstract_report(&alg, &cs) {
            assert!(r.passed(), "{}", r);
        }
    }

    #[test]
    fn todd_small() {
        let alg = gln_algebra(2, 4).unwrap();
        let cs = central_series(&alg).unwrap();
        for r in todd_report(&alg, &cs, 1).unwrap() {
            assert!(r.passed(), "{}", r);
        }
    }

    #[test]
    fn empty_block_gives_trivial_todd() {
        let ctx = y_ctx(1, 4);
        let dd = FlagPartition::new(vec![0, 0, 1]).unwrap();
        assert_eq!(todd_closed(&ctx, &dd, Sign::Plus, 1), GradedSeries::one(&ctx));
        let low = todd_closed(&ctx, &FlagPartition::new(vec![0, 1, 1]).unwrap(), Sign::Plus, 1).below_weight(2);
        // f(y)g(y + ℏ) = 1 − ℏ/2 + …
        let want = &GradedSeries::one(&ctx) - &GradedSeries::var(&ctx, H).scale(&q_frac(1, 2));
        assert_eq!(low, want);
    }
}
