//! Universal Drinfeld polynomial evaluations D^U, D^Y, the exponential map between their targets,
//! and the identities checked through them.

use std::sync::Arc;
use std::time::Instant;

use num_traits::One;

use crate::checker::condition_b_sides;
use crate::phi::GFamily;
use crate::report::{param, CheckReport};
use crate::series::{q_frac, q_int, GradedSeries, Mono, Poly, RationalFunction, USeries, VarContext, Q};
use crate::y0::{Y0Algebra, H};

/// Elements of U⁰ that D^U evaluates.
#[derive(Clone, Debug, PartialEq)]
pub enum UElem {
    H(i64),
    /// ψ_r, r ≥ 0.
    Psi(u32),
    /// φ_{−r}, r ≥ 0.
    Phi(u32),
    Product(Vec<UElem>),
}

/// D^U into Laurent polynomials in q, A_1..A_m (variable 0 is q).
#[derive(Clone, Debug)]
pub struct DrinfeldU {
    m: usize,
}

/// Product of truncated power series in an auxiliary variable with Laurent-polynomial coefficients.
pub fn ser_mul(a: &[Poly], b: &[Poly], len: usize, nv: usize) -> Vec<Poly> {
    let mut out = vec![Poly::zero(nv); len];
    for (i, x) in a.iter().enumerate().take(len) {
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

/// log of such a series with constant term 1.
pub fn ser_log(a: &[Poly], nv: usize) -> Vec<Poly> {
    assert!(a[0] == Poly::one(nv), "log needs constant term 1");
    let mut l = vec![Poly::zero(nv); a.len()];
    for n in 1..a.len() {
        let mut s = Poly::zero(nv);
        for k in 1..n {
            s = s.add(&l[k].mul(&a[n - k]).scale(&q_int(k as i64)));
        }
        l[n] = a[n].sub(&s.scale(&q_frac(1, n as i64)));
    }
    l
}

impl DrinfeldU {
    pub fn new(m: usize) -> Self {
        assert!(m >= 1, "m ≥ 1");
        DrinfeldU { m }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn nvars(&self) -> usize {
        self.m + 1
    }

    fn mono(&self, qe: i16, ae: &[(usize, i16)]) -> Poly {
        let mut v = vec![0i16; self.nvars()];
        v[0] = qe;
        for &(i, e) in ae {
            v[1 + i] += e;
        }
        Poly::monomial(Mono::from_exps(v), q_int(1))
    }

    /// q^e.
    pub fn q(&self, e: i16) -> Poly {
        self.mono(e, &[])
    }

    /// A_i^e, i = 0..m.
    pub fn a(&self, i: usize, e: i16) -> Poly {
        self.mono(0, &[(i, e)])
    }

    /// Power sum Σ A_i^r.
    pub fn power_sum(&self, r: i16) -> Poly {
        (0..self.m).fold(Poly::zero(self.nvars()), |acc, i| acc.add(&self.a(i, r)))
    }

    /// [n]_q = (q^n − q^{−n})/(q − q⁻¹) as a Laurent polynomial.
    pub fn q_number(&self, n: i64) -> Poly {
        let k = n.unsigned_abs() as i64;
        let mut p = Poly::zero(self.nvars());
        for j in 0..k {
            p = p.add(&self.q((k - 1 - 2 * j) as i16));
        }
        if n < 0 {
            p.neg()
        } else {
            p
        }
    }

    /// Coefficients of z^{−k}, k = 0..=len−1, of Π (qz − q⁻¹A_i)/(z − A_i) expanded at z = ∞.
    pub fn psi_expansion(&self, len: usize) -> Vec<Poly> {
        let nv = self.nvars();
        let diff = self.q(1).sub(&self.q(-1));
        let mut acc = vec![Poly::zero(nv); len];
        acc[0] = Poly::one(nv);
        for i in 0..self.m {
            let f: Vec<Poly> = (0..len)
                .map(|k| if k == 0 { self.q(1) } else { diff.mul(&self.a(i, k as i16)) })
                .collect();
            acc = ser_mul(&acc, &f, len, nv);
        }
        acc
    }

    /// Coefficients of z^{k} of the same product expanded at z = 0.
    pub fn phi_expansion(&self, len: usize) -> Vec<Poly> {
        let nv = self.nvars();
        let diff = self.q(-1).sub(&self.q(1));
        let mut acc = vec![Poly::zero(nv); len];
        acc[0] = Poly::one(nv);
        for i in 0..self.m {
            let f: Vec<Poly> = (0..len)
                .map(|k| if k == 0 { self.q(-1) } else { diff.mul(&self.a(i, -(k as i16))) })
                .collect();
            acc = ser_mul(&acc, &f, len, nv);
        }
        acc
    }

    /// Π_{j≠i} (qA_i − q⁻¹A_j)/(A_i − A_j).
    fn residue_factor(&self, i: usize) -> RationalFunction {
        let nv = self.nvars();
        let mut f = RationalFunction::from_poly(Poly::one(nv));
        for j in (0..self.m).filter(|&j| j != i) {
            let num = self.mono(1, &[(i, 1)]).sub(&self.mono(-1, &[(j, 1)]));
            let den = self.a(i, 1).sub(&self.a(j, 1));
            f = f.mul(&RationalFunction::new(num, den));
        }
        f
    }

    /// Σ_i A_i^r Π_{j≠i} (qA_i − q⁻¹A_j)/(A_i − A_j) as a rational function.
    pub fn residue_sum(&self, r: i16) -> RationalFunction {
        let nv = self.nvars();
        let mut s = RationalFunction::from_poly(Poly::zero(nv));
        for i in 0..self.m {
            s = s.add(&RationalFunction::from_poly(self.a(i, r)).mul(&self.residue_factor(i)));
        }
        s
    }

    /// D^U(ψ_r): the z-expansion coefficient, certified against the partial-fraction closed form.
    pub fn psi(&self, r: u32) -> Poly {
        let p = self.psi_expansion(r as usize + 1).pop().expect("nonempty");
        let closed = if r == 0 {
            RationalFunction::from_poly(self.q(self.m as i16))
        } else {
            RationalFunction::from_poly(self.q(1).sub(&self.q(-1))).mul(&self.residue_sum(r as i16))
        };
        assert!(RationalFunction::from_poly(p.clone()).equals(&closed), "D^U(ψ_{}) closed form disagrees with expansion", r);
        p
    }

    /// D^U(φ_{−r}), certified the same way.
    pub fn phi(&self, r: u32) -> Poly {
        let p = self.phi_expansion(r as usize + 1).pop().expect("nonempty");
        let closed = if r == 0 {
            RationalFunction::from_poly(self.q(-(self.m as i16)))
        } else {
            RationalFunction::from_poly(self.q(-1).sub(&self.q(1))).mul(&self.residue_sum(-(r as i16)))
        };
        assert!(RationalFunction::from_poly(p.clone()).equals(&closed), "D^U(φ_-{}) closed form disagrees with expansion", r);
        p
    }

    /// D^U(H_r) = q^{−r}[r]_q/r · Σ A_i^r (H_0 ↦ m), certified against the logarithm of the expansion.
    pub fn h(&self, r: i64) -> Poly {
        let nv = self.nvars();
        if r == 0 {
            return Poly::constant(nv, q_int(self.m as i64));
        }
        let ps = self.power_sum(r as i16);
        let closed = self.q(-(r as i16)).mul(&self.q_number(r)).mul(&ps).scale(&q_frac(1, r));
        let diff = self.q(1).sub(&self.q(-1));
        let s = r.unsigned_abs() as usize;
        // (q − q⁻¹)H_r from the literal formula (1 − q^{−2r})/r Σ A^r
        let literal = Poly::one(nv).sub(&self.q(-2 * r as i16)).mul(&ps).scale(&q_frac(1, r));
        assert_eq!(diff.mul(&closed), literal, "D^U(H_{}) closed form", r);
        // ψ_0⁻¹ψ(z) = exp((q − q⁻¹)Σ H_s z^{−s}); φ_0⁻¹φ(z) = exp(−(q − q⁻¹)Σ H_{−s} z^{s})
        let (exp, norm, sign) = if r > 0 {
            (self.psi_expansion(s + 1), self.q(-(self.m as i16)), 1)
        } else {
            (self.phi_expansion(s + 1), self.q(self.m as i16), -1)
        };
        let normed: Vec<Poly> = exp.iter().map(|c| c.mul(&norm)).collect();
        let l = ser_log(&normed, nv);
        assert_eq!(l[s].scale(&q_int(sign)), literal, "D^U(H_{}) against the logarithm of the expansion", r);
        closed
    }

    pub fn eval(&self, e: &UElem) -> Poly {
        match e {
            UElem::H(r) => self.h(*r),
            UElem::Psi(r) => self.psi(*r),
            UElem::Phi(r) => self.phi(*r),
            UElem::Product(v) => v.iter().fold(Poly::one(self.nvars()), |acc, x| acc.mul(&self.eval(x))),
        }
    }

    /// D^U(ψ_k − φ_k) for k ∈ ℤ.
    pub fn psi_minus_phi(&self, k: i64) -> Poly {
        match k {
            0 => self.psi(0).sub(&self.phi(0)),
            k if k > 0 => self.psi(k as u32),
            k => self.phi((-k) as u32).neg(),
        }
    }
}

/// True iff the polynomial is invariant under every adjacent transposition of `vars`.
pub fn is_symmetric(p: &Poly, vars: &[usize]) -> bool {
    let n = p.nvars();
    vars.windows(2).all(|w| {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(w[0], w[1]);
        p.permute(&perm) == *p
    })
}

/// D^Y: Y⁰ → ℚ[ℏ, a_1..a_m] completed, with independent variables per generator family.
/// The target keeps ℏ, u, v, w at the positions used by Y⁰ and appends the a-symbols.
#[derive(Clone, Debug)]
pub struct DrinfeldY {
    m: usize,
    families: usize,
    ctx: Arc<VarContext>,
    images: Vec<GradedSeries>,
}

impl DrinfeldY {
    pub fn new(alg: &Y0Algebra, m: usize) -> Self {
        assert!(m >= 1, "m ≥ 1");
        let families = alg.families();
        let src = alg.ctx();
        let mut syms: Vec<(String, u32)> = (0..4).map(|s| (src.name(s).to_string(), 1)).collect();
        for f in 0..families {
            for k in 0..m {
                let name = if families == 1 { format!("a{}", k + 1) } else { format!("a{}_{}", f + 1, k + 1) };
                syms.push((name, 1));
            }
        }
        let ctx = VarContext::new(syms, alg.order()).expect("distinct symbols");
        let mut me = DrinfeldY { m, families, ctx, images: Vec::new() };
        let mut images: Vec<GradedSeries> = (0..4).map(|s| GradedSeries::var(&me.ctx, s)).collect();
        for sym in 4..src.nvars() {
            let (f, r) = alg.gen_of(sym).expect("generator symbol");
            images.push(me.t_image(f, r));
        }
        me.images = images;
        me
    }

    pub fn ctx(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Symbol index of a_{f,k}.
    pub fn a_sym(&self, f: usize, k: usize) -> usize {
        4 + f * self.m + k
    }

    pub fn a_syms(&self, f: usize) -> Vec<usize> {
        (0..self.m).map(|k| self.a_sym(f, k)).collect()
    }

    /// D^Y(t_{f,r}) = Σ_k Σ_{j≤r} binom(r+1, j)/(r+1) (−1)^{r−j} a_k^j ℏ^{r−j}.
    pub fn t_image(&self, f: usize, r: usize) -> GradedSeries {
        let nv = self.ctx.nvars();
        let mut terms = Vec::new();
        let mut binom = Q::one();
        for j in 0..=r {
            let sign = if (r - j) % 2 == 0 { 1 } else { -1 };
            let c = &binom * q_frac(sign, r as i64 + 1);
            for k in 0..self.m {
                let mono = Mono::var(nv, self.a_sym(f, k), j as i16).mul(&Mono::var(nv, H, (r - j) as i16));
                terms.push((mono, c.clone()));
            }
            binom = binom * q_frac((r + 1 - j) as i64, j as i64 + 1);
        }
        GradedSeries::from_terms(&self.ctx, terms)
    }

    pub fn apply(&self, x: &GradedSeries) -> GradedSeries {
        assert_eq!(x.ctx().nvars(), self.images.len(), "element of a different Y⁰");
        x.eval_hom(&self.ctx, &self.images)
    }

    /// ℏ·D^Y(t_{f,r}) for r < window from log Π_k (u − a_k + ℏ)/(u − a_k) expanded in u⁻¹.
    pub fn t_via_log(&self, f: usize, window: usize) -> Result<Vec<GradedSeries>, crate::error::SeriesError> {
        let up = self.ctx.with_order(self.ctx.order() + 1);
        let mut acc = USeries::one(&up, window);
        for k in 0..self.m {
            let a = GradedSeries::var(&up, self.a_sym(f, k));
            // 1 + ℏ Σ_{s≥1} a^{s−1} u^{−s}
            let tail = (0..window).map(|s| a.pow(s as u32).mul_var(H, 1)).collect();
            let fac = USeries::one(&up, window).add(&USeries::from_tail(&up, window, tail))?;
            acc = acc.mul(&fac)?;
        }
        let l = acc.log()?;
        (0..window).map(|r| l.mode(r + 1).retruncate(&self.ctx)).collect()
    }

    /// Σ_k a_k^r Π_{l≠k} (a_k − a_l + ℏ)/(a_k − a_l), the closed form of D^Y(ξ_{f,r}).
    pub fn xi_closed(&self, f: usize, r: usize) -> RationalFunction {
        let nv = self.ctx.nvars();
        let a = |k: usize| Poly::var(nv, self.a_sym(f, k));
        let mut s = RationalFunction::from_poly(Poly::zero(nv));
        for k in 0..self.m {
            let mut term = RationalFunction::from_poly(a(k).pow(r as u32));
            for l in (0..self.m).filter(|&l| l != k) {
                let d = a(k).sub(&a(l));
                term = term.mul(&RationalFunction::new(d.add(&Poly::var(nv, H)), d));
            }
            s = s.add(&term);
        }
        s
    }

    /// (1 − e^{−ℏv})/v · Σ_k e^{a_k v}, the image of B_f(v).
    pub fn b_closed(&self, f: usize, v: usize) -> GradedSeries {
        let up = self.ctx.with_order(self.ctx.order() + 1);
        let hv = GradedSeries::var(&up, H).mul_var(v, 1);
        let num = &GradedSeries::one(&up) - &(-&hv).exp().expect("positive weight");
        let q = num.div_var(v).expect("v-divisible").retruncate(&self.ctx).expect("same symbols");
        let mut s = GradedSeries::zero(&self.ctx);
        for k in 0..self.m {
            s = &s + &GradedSeries::var(&self.ctx, self.a_sym(f, k)).mul_var(v, 1).exp().expect("positive weight");
        }
        &q * &s
    }

    pub fn families(&self) -> usize {
        self.families
    }
}

/// eexp: q ↦ e^{ℏ/2}, A_k ↦ e^{a_k} (family 0), truncated in the D^Y target.
pub fn eexp(p: &Poly, dy: &DrinfeldY) -> GradedSeries {
    let ctx = dy.ctx();
    assert_eq!(p.nvars(), dy.m() + 1, "D^U target of a different rank");
    let mut acc = GradedSeries::zero(ctx);
    for (mono, c) in p.terms() {
        let mut lin = GradedSeries::var(ctx, H).scale(&q_frac(mono.exp(0) as i64, 2));
        for k in 0..dy.m() {
            let e = mono.exp(1 + k);
            if e != 0 {
                lin = &lin + &GradedSeries::var(ctx, dy.a_sym(0, k)).scale_int(e as i64);
            }
        }
        acc = &acc + &lin.exp().expect("positive weight").scale(c);
    }
    acc
}

fn rank_one(alg: &Y0Algebra) {
    assert!(alg.nodes() == 1 && alg.families() == 1 && alg.node_d(0) == 1, "rank-one algebra with d = 1 expected");
}

/// eexp(D^U(H_r)) = D^Y(Φ⁰(H_r)) for each r, at the truncation of `alg` (rank one).
pub fn diagram_check(alg: &Y0Algebra, rs: &[i64], m: usize) -> Vec<CheckReport> {
    rank_one(alg);
    let du = DrinfeldU::new(m);
    let dy = DrinfeldY::new(alg, m);
    rs.iter()
        .map(|&r| {
            let t = Instant::now();
            let lhs = eexp(&du.h(r), &dy);
            let rhs = dy.apply(&alg.phi0_h(0, r));
            CheckReport::compare(
                "drinfeld.diagram",
                vec![param("m", m), param("r", r), param("N", alg.order())],
                &lhs,
                &rhs,
                t,
            )
        })
        .collect()
}

/// Condition (B) for node 0 evaluated under D^Y, and the right side against eexp∘D^U:
/// D^Y(lhs) = D^Y(rhs) and eexp(D^U(ψ_k − φ_k)) = eexp(q − q⁻¹)·D^Y(rhs).
pub fn condition_b_drinfeld(alg: &Y0Algebra, g: &GFamily, m: usize, k: i64) -> CheckReport {
    rank_one(alg);
    let t = Instant::now();
    let du = DrinfeldU::new(m);
    let dy = DrinfeldY::new(alg, m);
    let (lhs, rhs) = condition_b_sides(alg, g, 0, k);
    let dl = dy.apply(&lhs);
    let dr = dy.apply(&rhs);
    let r = match dl.first_difference(&dr) {
        Some(d) => Err(format!("D^Y sides: {}", d)),
        None => {
            let u = eexp(&du.psi_minus_phi(k), &dy);
            let qd = eexp(&du.q(1).sub(&du.q(-1)), &dy);
            match u.first_difference(&(&qd * &dr)) {
                Some(d) => Err(format!("eexp∘D^U: {}", d)),
                None => Ok(()),
            }
        }
    };
    CheckReport::from_result("drinfeld.B", vec![param("m", m), param("k", k), param("N", alg.order())], r, t)
}

/// Σ_i Π_{j≠i} (qA_i − q⁻¹A_j)/(A_i − A_j) = [m]_q, cross-multiplied.
pub fn symmetrizer_identity(m: usize) -> CheckReport {
    let t = Instant::now();
    let du = DrinfeldU::new(m);
    let lhs = du.residue_sum(0);
    let rhs = RationalFunction::from_poly(du.q_number(m as i64));
    let r = if lhs.equals(&rhs) {
        Ok(())
    } else {
        Err(format!("numerator·den mismatch for m = {}", m))
    };
    CheckReport::from_result("drinfeld.symmetrizer", vec![param("m", m)], r, t)
}

/// Smallest m ≤ m_max with D^Y(x) ≠ 0, if any.
pub fn detecting_m(alg: &Y0Algebra, x: &GradedSeries, m_max: usize) -> Option<usize> {
    (1..=m_max).find(|&m| !DrinfeldY::new(alg, m).apply(x).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanDatum;
    use crate::phi::{g_family, Gauge};

    fn a1(n: u32) -> Y0Algebra {
        Y0Algebra::semisimple(&CartanDatum::builtin("A1").unwrap(), n).unwrap()
    }

    #[test]
    fn du_small_values() {
        let du = DrinfeldU::new(1);
        assert_eq!(du.h(0), Poly::constant(2, q_int(1)));
        // (q − q⁻¹)H_1 ↦ (1 − q⁻²)A_1
        let want = Poly::one(2).sub(&du.q(-2)).mul(&du.a(0, 1));
        assert_eq!(du.q(1).sub(&du.q(-1)).mul(&du.h(1)), want);
        for m in 1..=3 {
            let du = DrinfeldU::new(m);
            assert_eq!(du.psi(0), du.q(m as i16));
            assert_eq!(du.h(0), Poly::constant(m + 1, q_int(m as i64)));
        }
    }

    #[test]
    fn du_images_are_symmetric() {
        let du = DrinfeldU::new(3);
        let vars = [1, 2, 3];
        for r in 1..=3 {
            assert!(is_symmetric(&du.psi(r), &vars));
            assert!(is_symmetric(&du.phi(r), &vars));
            assert!(is_symmetric(&du.h(r as i64), &vars));
            assert!(is_symmetric(&du.h(-(r as i64)), &vars));
        }
    }

    #[test]
    fn dy_generator_values() {
        let a = a1(6);
        let dy = DrinfeldY::new(&a, 1);
        let ctx = dy.ctx().clone();
        let a1v = GradedSeries::var(&ctx, dy.a_sym(0, 0));
        let h = GradedSeries::var(&ctx, H);
        assert_eq!(dy.t_image(0, 1), &a1v - &h.scale(&q_frac(1, 2)));
        // ξ_0 ↦ m
        for m in 1..=3 {
            let dy = DrinfeldY::new(&a, m);
            assert_eq!(dy.apply(&a.xi_modes(0)[0]), GradedSeries::int(dy.ctx(), m as i64));
        }
        // ξ_1 ↦ a_1 + a_2 + ℏ for m = 2
        let dy = DrinfeldY::new(&a, 2);
        let ctx = dy.ctx().clone();
        let want = &(&GradedSeries::var(&ctx, dy.a_sym(0, 0)) + &GradedSeries::var(&ctx, dy.a_sym(0, 1)))
            + &GradedSeries::var(&ctx, H);
        assert_eq!(dy.apply(&a.xi_modes(0)[1]), want);
    }

    #[test]
    fn dy_xi_matches_partial_fractions() {
        let a = a1(5);
        for m in 1..=3 {
            let dy = DrinfeldY::new(&a, m);
            for r in 0..=5 {
                let img = dy.apply(&a.xi_modes(0)[r]);
                assert!(RationalFunction::from_poly(img.poly().clone()).equals(&dy.xi_closed(0, r)), "m={} r={}", m, r);
            }
        }
    }

    #[test]
    fn dy_t_matches_log_route() {
        let a = a1(6);
        for m in 1..=3 {
            let dy = DrinfeldY::new(&a, m);
            let via = dy.t_via_log(0, 6).unwrap();
            for (r, x) in via.iter().enumerate() {
                assert_eq!(*x, dy.t_image(0, r).mul_var(H, 1), "m={} r={}", m, r);
            }
        }
    }

    #[test]
    fn dy_borel_closed_form() {
        let a = a1(6);
        let dy = DrinfeldY::new(&a, 2);
        let b = a.b_series_in(&a.ctx(), 0, crate::y0::V);
        assert_eq!(dy.apply(&b), dy.b_closed(0, crate::y0::V));
    }

    #[test]
    fn eexp_examples() {
        let a = a1(4);
        let dy = DrinfeldY::new(&a, 1);
        let du = DrinfeldU::new(1);
        let ctx = dy.ctx().clone();
        let h = GradedSeries::var(&ctx, H);
        let want = &(&(&GradedSeries::one(&ctx) + &h.scale(&q_frac(1, 2))) + &h.pow(2).scale(&q_frac(1, 8)))
            + &(&h.pow(3).scale(&q_frac(1, 48)) + &h.pow(4).scale(&q_frac(1, 384)));
        assert_eq!(eexp(&du.q(1), &dy), want);
        // cosh: 2 + a² + a⁴/12
        let x = GradedSeries::var(&ctx, dy.a_sym(0, 0));
        let want = &(&GradedSeries::int(&ctx, 2) + &x.pow(2)) + &x.pow(4).scale(&q_frac(1, 12));
        assert_eq!(eexp(&du.a(0, 1).add(&du.a(0, -1)), &dy), want);
        // (1 − e^{−ℏ})e^{a} = D^Y(B(1))
        let lhs = eexp(&Poly::one(2).sub(&du.q(-2)).mul(&du.a(0, 1)), &dy);
        // v has weight 1, so B(v) is built at order 2N+1 before v := 1
        let big = a.ctx_at(9);
        let b1 = a.b_series_in(&big, 0, crate::y0::V).eval_var(crate::y0::V, &q_int(1)).unwrap();
        let b1 = b1.retruncate(&a.ctx()).unwrap();
        assert_eq!(lhs, dy.apply(&b1));
    }

    #[test]
    fn diagram_commutes() {
        let a = a1(6);
        for m in 1..=2 {
            for rep in diagram_check(&a, &[-2, -1, 0, 1, 2], m) {
                assert!(rep.passed(), "{}", rep);
            }
        }
    }

    #[test]
    fn condition_b_through_drinfeld() {
        let a = a1(5);
        let g = g_family(&a, Gauge::Rational);
        for m in 1..=2 {
            for k in -2..=2 {
                let rep = condition_b_drinfeld(&a, &g, m, k);
                assert!(rep.passed(), "{}", rep);
            }
        }
    }

    #[test]
    fn symmetrizer_small() {
        for m in 1..=4 {
            assert!(symmetrizer_identity(m).passed());
        }
        let du = DrinfeldU::new(2);
        assert_eq!(du.q_number(2), du.q(1).add(&du.q(-1)));
    }
}
