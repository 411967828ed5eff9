//! The commutative subalgebra Y⁰: generators, λ-operators, Borel series, ξ-modes, Φ⁰ and
//! adapted generators. One implementation covers semisimple and gl_n kernels.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cartan::{hbar_over_qdiff, CartanDatum, GlnDatum};
use crate::error::SeriesError;
use crate::series::special::{kernel, kernel_one_sided};
use crate::series::{q_frac, q_int, GradedSeries, Mono, USeries, VarContext, Q};

/// Scalar symbol slots shared by every Y⁰ context.
pub const H: usize = 0;
pub const U: usize = 1;
pub const V: usize = 2;
pub const W: usize = 3;
const NSCALAR: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Y0Kind {
    Semisimple(CartanDatum),
    Gln(GlnDatum),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn sgn(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

pub(crate) fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}

pub(crate) fn inv_fact(n: usize) -> Q {
    Q::new(BigInt::one(), factorial(n))
}

type LambdaKey = (Sign, usize, usize, u32);

pub struct Y0Algebra {
    kind: Y0Kind,
    order: u32,
    nfam: usize,
    nnodes: usize,
    rmax: usize,
    symbols: Vec<(String, u32)>,
    ctxs: Mutex<HashMap<u32, Arc<VarContext>>>,
    rho: Vec<Vec<Vec<Q>>>,
    lam_cache: RwLock<HashMap<LambdaKey, Arc<Vec<GradedSeries>>>>,
    xi_cache: RwLock<HashMap<(usize, u32), Arc<Vec<GradedSeries>>>>,
}

impl std::fmt::Debug for Y0Algebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Y0Algebra").field("kind", &self.kind).field("order", &self.order).finish()
    }
}

impl Y0Algebra {
    pub fn semisimple(datum: &CartanDatum, order: u32) -> Result<Self, SeriesError> {
        Self::build(Y0Kind::Semisimple(datum.clone()), order)
    }

    pub fn gln(datum: GlnDatum, order: u32) -> Result<Self, SeriesError> {
        Self::build(Y0Kind::Gln(datum), order)
    }

    fn build(kind: Y0Kind, order: u32) -> Result<Self, SeriesError> {
        let (nfam, nnodes, prefix) = match &kind {
            Y0Kind::Semisimple(c) => (c.rank(), c.rank(), "t"),
            Y0Kind::Gln(g) => (g.n, g.n - 1, "d"),
        };
        let rmax = order as usize + 1;
        let mut symbols: Vec<(String, u32)> =
            vec![("hbar".into(), 1), ("u".into(), 1), ("v".into(), 1), ("w".into(), 1)];
        for f in 0..nfam {
            for r in 0..=rmax {
                symbols.push((format!("{}{}_{}", prefix, f + 1, r), r as u32));
            }
        }
        let mut alg = Y0Algebra {
            kind,
            order,
            nfam,
            nnodes,
            rmax,
            symbols,
            ctxs: Mutex::new(HashMap::new()),
            rho: Vec::new(),
            lam_cache: RwLock::new(HashMap::new()),
            xi_cache: RwLock::new(HashMap::new()),
        };
        alg.rho = alg.kernel_table()?;
        Ok(alg)
    }

    /// ρ[i][f][k] with K_{i,f}(y) = Σ_k ρ_k ℏ^{k+1} y^k, extracted from the exact kernel series.
    fn kernel_table(&self) -> Result<Vec<Vec<Vec<Q>>>, SeriesError> {
        let kmax = self.rmax;
        let hv = VarContext::new(vec![("hbar", 1), ("y", 1)], 2 * kmax as u32 + 1)?;
        let mut table = Vec::new();
        for i in 0..self.nnodes {
            let mut row = Vec::new();
            for f in 0..self.nfam {
                let k = match &self.kind {
                    Y0Kind::Semisimple(c) => {
                        let a = GradedSeries::var(&hv, 0).scale(&q_frac(c.b(i, f), 2));
                        kernel(&a, 1)?
                    }
                    Y0Kind::Gln(g) => {
                        let c = g.c(f + 1, i + 1);
                        let a = GradedSeries::var(&hv, 0).scale(&q_int(c));
                        kernel_one_sided(&a, 1)?
                    }
                };
                let mut rho = Vec::with_capacity(kmax + 1);
                for (e, part) in k.split_var(1) {
                    let e = e as usize;
                    if e > kmax {
                        continue;
                    }
                    // the coefficient of y^e must be exactly ρ ℏ^{e+1}
                    let mut p = part;
                    for _ in 0..=e {
                        p = p.div_var(0)?;
                    }
                    if !p.poly().is_constant() {
                        return Err(SeriesError::NotDivisible("hbar".into()));
                    }
                    while rho.len() < e {
                        rho.push(Q::zero());
                    }
                    rho.push(p.constant_term());
                }
                while rho.len() <= kmax {
                    rho.push(Q::zero());
                }
                row.push(rho);
            }
            table.push(row);
        }
        Ok(table)
    }

    pub fn kind(&self) -> &Y0Kind {
        &self.kind
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn families(&self) -> usize {
        self.nfam
    }

    pub fn nodes(&self) -> usize {
        self.nnodes
    }

    /// Largest generator index available as a symbol (N+1).
    pub fn rmax(&self) -> usize {
        self.rmax
    }

    pub fn ctx(&self) -> Arc<VarContext> {
        self.ctx_at(self.order)
    }

    pub fn ctx_at(&self, order: u32) -> Arc<VarContext> {
        let mut m = self.ctxs.lock().expect("context cache poisoned");
        m.entry(order)
            .or_insert_with(|| VarContext::new(self.symbols.clone(), order).expect("unique symbols"))
            .clone()
    }

    pub fn gen(&self, f: usize, r: usize) -> usize {
        assert!(f < self.nfam && r <= self.rmax, "generator ({}, {}) out of range", f, r);
        NSCALAR + f * (self.rmax + 1) + r
    }

    /// Inverse of `gen`.
    pub fn gen_of(&self, sym: usize) -> Option<(usize, usize)> {
        if sym < NSCALAR {
            return None;
        }
        let k = sym - NSCALAR;
        Some((k / (self.rmax + 1), k % (self.rmax + 1)))
    }

    pub fn gen_series(&self, ctx: &Arc<VarContext>, f: usize, r: usize) -> GradedSeries {
        GradedSeries::var(ctx, self.gen(f, r))
    }

    pub fn generator_symbols(&self) -> Vec<usize> {
        (NSCALAR..self.symbols.len()).collect()
    }

    /// Symmetrizer of a node (1 for gl_n).
    pub fn node_d(&self, i: usize) -> i64 {
        match &self.kind {
            Y0Kind::Semisimple(c) => c.d(i),
            Y0Kind::Gln(_) => 1,
        }
    }

    /// Family combination whose exponential is the node's ξ-series.
    pub fn node_combo(&self, i: usize) -> Vec<(usize, i64)> {
        match &self.kind {
            Y0Kind::Semisimple(_) => vec![(i, 1)],
            Y0Kind::Gln(_) => vec![(i + 1, 1), (i, -1)],
        }
    }

    pub fn kernel_coeffs(&self, i: usize, f: usize) -> &[Q] {
        &self.rho[i][f]
    }

    /// K_{i,f}(y) = Σ ρ_k ℏ^{k+1} y^k in `ctx`, in the symbol `y`.
    pub fn kernel_series(&self, ctx: &Arc<VarContext>, i: usize, f: usize, y: usize) -> GradedSeries {
        let nv = ctx.nvars();
        let terms = self.rho[i][f].iter().enumerate().map(|(k, c)| {
            let m = Mono::var(nv, H, k as i16 + 1).mul(&Mono::var(nv, y, k as i16));
            (m, c.clone())
        });
        GradedSeries::from_terms(ctx, terms)
    }

    /// Images of every symbol under λ^±_i(x): generators shift, scalars are fixed.
    pub fn lambda_images(&self, sign: Sign, i: usize, aux: usize, ctx: &Arc<VarContext>) -> Arc<Vec<GradedSeries>> {
        let key = (sign, i, aux, ctx.order());
        if let Some(v) = self.lam_cache.read().expect("λ cache poisoned").get(&key) {
            if crate::series::same_context(v[0].ctx(), ctx) {
                return v.clone();
            }
        }
        let nv = ctx.nvars();
        let mut images = Vec::with_capacity(nv);
        for sym in 0..nv {
            let x = GradedSeries::var(ctx, sym);
            let img = match self.gen_of(sym) {
                None => x,
                Some((f, r)) => {
                    let rho = &self.rho[i][f];
                    let fr = Q::from_integer(factorial(r));
                    let mut terms = Vec::new();
                    for (k, c) in rho.iter().enumerate().take(r + 1) {
                        if c.is_zero() {
                            continue;
                        }
                        let m = Mono::var(nv, H, k as i16).mul(&Mono::var(nv, aux, (r - k) as i16));
                        let coef = -(c * &fr * inv_fact(r - k)) * q_int(sign.sgn());
                        terms.push((m, coef));
                    }
                    &x + &GradedSeries::from_terms(ctx, terms)
                }
            };
            images.push(img);
        }
        let v = Arc::new(images);
        self.lam_cache.write().expect("λ cache poisoned").insert(key, v.clone());
        v
    }

    /// λ^±_i(aux) applied to `x` as an algebra homomorphism.
    pub fn lambda(&self, sign: Sign, i: usize, x: &GradedSeries, aux: usize) -> GradedSeries {
        let imgs = self.lambda_images(sign, i, aux, x.ctx());
        x.eval_hom(x.ctx(), &imgs)
    }

    /// ℏ Σ_r t_{f,r} y^r/r! truncated in `ctx`.
    pub fn b_series_in(&self, ctx: &Arc<VarContext>, f: usize, y: usize) -> GradedSeries {
        let nv = ctx.nvars();
        let terms = (0..=self.rmax).map(|r| {
            let m = Mono::var(nv, H, 1).mul(&Mono::var(nv, y, r as i16)).mul(&Mono::var(nv, self.gen(f, r), 1));
            (m, inv_fact(r))
        });
        GradedSeries::from_terms(ctx, terms)
    }

    /// B_f(v) = ℏ Σ_{r<N} t_{f,r} v^r/r!, in the context of order 2N−1 that holds exactly these terms.
    pub fn b_series(&self, f: usize, n: u32) -> GradedSeries {
        let ctx = self.ctx_at((2 * n).max(2) - 1);
        self.b_series_in(&ctx, f, V)
    }

    /// Σ_f c_f B_f evaluated at the integer `s`, landing in `ctx` (order ≤ N+1).
    fn b_at(&self, combo: &[(usize, i64)], s: i64, ctx: &Arc<VarContext>) -> GradedSeries {
        let big = self.ctx_at(2 * ctx.order() + 1);
        let mut acc = GradedSeries::zero(&big);
        for &(f, c) in combo {
            acc = &acc + &self.b_series_in(&big, f, V).scale_int(c);
        }
        acc.eval_var(V, &q_int(s)).expect("v has weight 1").retruncate(ctx).expect("same symbols")
    }

    /// t(u) = ℏ Σ_r (Σ_f c_f t_{f,r}) u^{-r-1}.
    pub fn t_useries(&self, combo: &[(usize, i64)], ctx: &Arc<VarContext>, window: usize) -> USeries {
        let tail = (0..window)
            .map(|r| {
                let mut acc = GradedSeries::zero(ctx);
                if r <= self.rmax {
                    for &(f, c) in combo {
                        acc = &acc + &self.gen_series(ctx, f, r).scale_int(c);
                    }
                }
                acc.mul_var(H, 1)
            })
            .collect();
        USeries::from_tail(ctx, window, tail)
    }

    /// ξ-modes of a combination: exp(t(u)) = 1 + ℏ Σ ξ_r u^{-r-1}, for r = 0..=N at order N.
    pub fn xi_modes_combo(&self, combo: &[(usize, i64)]) -> Vec<GradedSeries> {
        let n = self.order as usize;
        let ctx = self.ctx();
        let up = self.ctx_at(self.order + 1);
        let e = self.t_useries(combo, &up, n + 1).exp().expect("positive weight");
        (0..=n)
            .map(|r| e.mode(r + 1).div_var(H).expect("ℏ-divisible").retruncate(&ctx).expect("same symbols"))
            .collect()
    }

    /// ξ_{i,r} for r = 0..=N, expressed in generators (θ_{i+1}θ_i⁻¹ modes for gl_n).
    pub fn xi_modes(&self, i: usize) -> Arc<Vec<GradedSeries>> {
        let key = (i, self.order);
        if let Some(v) = self.xi_cache.read().expect("ξ cache poisoned").get(&key) {
            return v.clone();
        }
        let v = Arc::new(self.xi_modes_combo(&self.node_combo(i)));
        self.xi_cache.write().expect("ξ cache poisoned").insert(key, v.clone());
        v
    }

    /// Context holding ℏ and ξ-type symbols `x{f}_{r}` (θ for gl_n), order N.
    pub fn xi_ctx(&self) -> Arc<VarContext> {
        let mut syms: Vec<(String, u32)> = vec![("hbar".into(), 1)];
        for f in 0..self.nfam {
            for r in 0..=self.rmax {
                syms.push((format!("xi{}_{}", f + 1, r), r as u32));
            }
        }
        VarContext::new(syms, self.order).expect("unique symbols")
    }

    pub fn xi_sym(&self, f: usize, r: usize) -> usize {
        1 + f * (self.rmax + 1) + r
    }

    /// t_{f,r} in the ξ-type generators of the same family (log of the generating series).
    pub fn t_in_xi(&self, xctx: &Arc<VarContext>, f: usize, r: usize) -> GradedSeries {
        let up = xctx.with_order(xctx.order() + 1);
        let n = self.order as usize;
        let tail = (0..=n)
            .map(|k| GradedSeries::var(&up, self.xi_sym(f, k)).mul_var(0, 1))
            .collect();
        let xi = USeries::one(&up, n + 1).add(&USeries::from_tail(&up, n + 1, tail)).expect("same shape");
        let l = xi.log().expect("constant term 1");
        l.mode(r + 1).div_var(0).expect("ℏ-divisible").retruncate(xctx).expect("same symbols")
    }

    /// Sends ξ-type symbols to their expressions in the t-generators of `ctx`.
    pub fn xi_to_t(&self, x: &GradedSeries) -> GradedSeries {
        let ctx = self.ctx();
        let nv = x.ctx().nvars();
        let mut images = vec![GradedSeries::var(&ctx, H)];
        for f in 0..self.nfam {
            let modes = self.xi_modes_combo(&[(f, 1)]);
            for r in 0..=self.rmax {
                images.push(modes.get(r).cloned().unwrap_or_else(|| GradedSeries::zero(&ctx)));
            }
        }
        assert_eq!(images.len(), nv);
        x.eval_hom(&ctx, &images)
    }

    /// F with each power u^m replaced by ξ_{i,m} (u^0 by ξ_{i,0}).
    pub fn xi_substitute(&self, i: usize, f: &GradedSeries) -> Result<GradedSeries, SeriesError> {
        let xi = self.xi_modes(i);
        let ctx = f.ctx().clone();
        f.substitute_powers(U, |m| match xi.get(m) {
            Some(x) => x.retruncate(&ctx).expect("same symbols"),
            None => GradedSeries::zero(&ctx),
        })
    }

    /// Φ⁰(H_{i,r}) (semisimple) or Φ⁰(D_{j,r}) (gl_n, `i` is the family).
    pub fn phi0_h(&self, i: usize, r: i64) -> GradedSeries {
        let ctx = self.ctx();
        let e = self.node_d(i);
        if r == 0 {
            return self.gen_series(&ctx, i, 0).scale(&q_frac(1, e));
        }
        let up = self.ctx_at(self.order + 1);
        let b = self.b_at(&[(i, 1)], r, &up);
        let b = b.div_var(H).expect("ℏ-divisible").retruncate(&ctx).expect("same symbols");
        &b * &hbar_over_qdiff(&ctx, H, e)
    }

    /// Φ⁰((ψ_{i,k} − φ_{i,k})/(q_i − q_i⁻¹)); for gl_n the modes of (P⁺ − P⁻)/(q − q⁻¹).
    pub fn psi_phi_diff(&self, i: usize, k: i64) -> GradedSeries {
        let ctx = self.ctx();
        let up = self.ctx_at(self.order + 1);
        let combo = self.node_combo(i);
        let mut t0 = GradedSeries::zero(&up);
        for &(f, c) in &combo {
            t0 = &t0 + &self.gen_series(&up, f, 0).scale_int(c);
        }
        let half = t0.mul_var(H, 1).scale(&q_frac(1, 2));
        let num = if k == 0 {
            &half.exp().expect("weight 1") - &(-&half).exp().expect("weight 1")
        } else {
            let w = k.unsigned_abs() as usize;
            let sg = k.signum();
            let modes: Vec<GradedSeries> = (1..=w as i64).map(|s| self.b_at(&combo, sg * s, &up).scale_int(sg)).collect();
            let series = USeries::from_tail(&up, w, modes).exp().expect("positive weight");
            let pref = half.scale_int(sg).exp().expect("weight 1");
            (series.mode(w) * &pref).scale_int(sg)
        };
        let q = num.div_var(H).expect("ℏ-divisible").retruncate(&ctx).expect("same symbols");
        &q * &hbar_over_qdiff(&ctx, H, self.node_d(i))
    }

    /// Expresses ϖ_{i,r} and t_{i,r} in each other; semisimple only.
    pub fn adapted(&self) -> Result<Adapted, SeriesError> {
        let c = match &self.kind {
            Y0Kind::Semisimple(c) => c,
            Y0Kind::Gln(_) => return Err(SeriesError::NonUnit("adapted generators need a Cartan matrix".into())),
        };
        let n = c.rank();
        let len = self.rmax + 1;
        // Q(y) with Q_ij = Σ_k ρ_k y^k
        let qm: Vec<Vec<Vec<Q>>> = (0..n).map(|i| (0..n).map(|j| self.rho[i][j].clone()).collect()).collect();
        let q0: Vec<Vec<Q>> = (0..n).map(|i| (0..n).map(|j| qm[i][j][0].clone()).collect()).collect();
        let q0inv = mat_inverse(&q0).ok_or_else(|| SeriesError::NonUnit("singular Q constant term".into()))?;
        let mut x: Vec<Vec<Vec<Q>>> = vec![q0inv.clone()];
        for k in 1..len {
            let mut acc = vec![vec![Q::zero(); n]; n];
            for l in 1..=k {
                let ml: Vec<Vec<Q>> = (0..n).map(|i| (0..n).map(|j| qm[i][j][l].clone()).collect()).collect();
                acc = mat_add(&acc, &mat_mul(&ml, &x[k - l]));
            }
            let xk = mat_mul(&q0inv, &acc).into_iter().map(|r| r.into_iter().map(|v| -v).collect()).collect();
            x.push(xk);
        }
        let xinv: Vec<Vec<Vec<Q>>> = (0..n).map(|i| (0..n).map(|j| x.iter().map(|m| m[i][j].clone()).collect()).collect()).collect();
        let ctx = self.ctx();
        let build = |coef: &Vec<Vec<Vec<Q>>>| -> Vec<Vec<GradedSeries>> {
            (0..n)
                .map(|i| {
                    (0..=self.rmax)
                        .map(|r| {
                            let mut terms = Vec::new();
                            let nv = ctx.nvars();
                            for j in 0..n {
                                for k in 0..=r {
                                    let cf = &coef[i][j][k];
                                    if cf.is_zero() {
                                        continue;
                                    }
                                    let m = r - k;
                                    let mono = Mono::var(nv, H, k as i16).mul(&Mono::var(nv, self.gen(j, m), 1));
                                    let val = -(cf * Q::from_integer(factorial(r)) * inv_fact(m));
                                    terms.push((mono, val));
                                }
                            }
                            GradedSeries::from_terms(&ctx, terms)
                        })
                        .collect()
                })
                .collect()
        };
        Ok(Adapted { varpi: build(&xinv), t_of_varpi: build(&qm), rmax: self.rmax })
    }
}

/// ϖ_{i,r} in t-coordinates and t_{i,r} in ϖ-coordinates (ϖ written in the generator slots).
#[derive(Clone, Debug)]
pub struct Adapted {
    pub varpi: Vec<Vec<GradedSeries>>,
    pub t_of_varpi: Vec<Vec<GradedSeries>>,
    rmax: usize,
}

impl Adapted {
    fn images(&self, alg: &Y0Algebra, ctx: &Arc<VarContext>, table: &[Vec<GradedSeries>]) -> Vec<GradedSeries> {
        (0..ctx.nvars())
            .map(|s| match alg.gen_of(s) {
                None => GradedSeries::var(ctx, s),
                Some((f, r)) if r <= self.rmax => table[f][r].retruncate(ctx).expect("same symbols"),
                Some(_) => GradedSeries::zero(ctx),
            })
            .collect()
    }

    /// Rewrites a t-coordinate series in ϖ-coordinates.
    pub fn to_varpi(&self, alg: &Y0Algebra, x: &GradedSeries) -> GradedSeries {
        let imgs = self.images(alg, x.ctx(), &self.t_of_varpi);
        x.eval_hom(x.ctx(), &imgs)
    }

    /// Rewrites a ϖ-coordinate series in t-coordinates.
    pub fn from_varpi(&self, alg: &Y0Algebra, x: &GradedSeries) -> GradedSeries {
        let imgs = self.images(alg, x.ctx(), &self.varpi);
        x.eval_hom(x.ctx(), &imgs)
    }

    /// Checks λ^±_i(u) ϖ_{j,r} = ϖ_{j,r} ± δ_ij u^r for r ≤ r_max.
    pub fn verify_law(&self, alg: &Y0Algebra, r_max: usize) -> Result<(), String> {
        let ctx = alg.ctx();
        let n = self.varpi.len();
        for sign in [Sign::Plus, Sign::Minus] {
            for i in 0..n {
                for j in 0..n {
                    for r in 0..=r_max.min(alg.order() as usize) {
                        let w = &self.varpi[j][r];
                        let got = &alg.lambda(sign, i, w, U) - w;
                        let want = if i == j {
                            GradedSeries::var(&ctx, U).pow(r as u32).scale_int(sign.sgn())
                        } else {
                            GradedSeries::zero(&ctx)
                        };
                        if let Some(d) = got.first_difference(&want) {
                            return Err(format!("λ{}_{}(u) on varpi_{},{}: {}", sign.symbol(), i + 1, j + 1, r, d));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

fn mat_mul(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = a.len();
    let m = b[0].len();
    let mut out = vec![vec![Q::zero(); m]; n];
    for i in 0..n {
        for k in 0..b.len() {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

fn mat_add(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p + q).collect()).collect()
}

/// Gauss–Jordan inverse over ℚ.
pub fn mat_inverse(a: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = a.len();
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let p = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x = &*x / &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let prow = m[col].clone();
                for (x, y) in m[r].iter_mut().zip(prow) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl2(n: u32) -> Y0Algebra {
        Y0Algebra::semisimple(&CartanDatum::builtin("A1").unwrap(), n).unwrap()
    }

    fn poly_from(alg: &Y0Algebra, terms: Vec<(Vec<(usize, i16)>, Q)>) -> GradedSeries {
        let ctx = alg.ctx();
        let nv = ctx.nvars();
        GradedSeries::from_terms(
            &ctx,
            terms.into_iter().map(|(es, c)| {
                let m = es.into_iter().fold(Mono::one(nv), |m, (s, e)| m.mul(&Mono::var(nv, s, e)));
                (m, c)
            }),
        )
    }

    #[test]
    fn sl2_lambda_on_t1_t2() {
        let a = sl2(4);
        let ctx = a.ctx();
        let t1 = a.gen_series(&ctx, 0, 1);
        let t2 = a.gen_series(&ctx, 0, 2);
        let l1 = a.lambda(Sign::Plus, 0, &t1, V);
        assert_eq!(l1, &t1 - &GradedSeries::var(&ctx, V).scale_int(2));
        let l2 = a.lambda(Sign::Plus, 0, &t2, V);
        let expect = poly_from(
            &a,
            vec![(vec![(a.gen(0, 2), 1)], q_int(1)), (vec![(V, 2)], q_int(-2)), (vec![(H, 2)], q_frac(-2, 3))],
        );
        assert_eq!(l2, expect);
    }

    #[test]
    fn kernel_table_matches_closed_form() {
        for name in ["A1", "A2", "B2", "G2"] {
            let c = CartanDatum::builtin(name).unwrap();
            let a = Y0Algebra::semisimple(&c, 6).unwrap();
            for i in 0..c.rank() {
                for j in 0..c.rank() {
                    // oracle: 2c^{2m+1}/(2m+1)! with c = d_i a_ij/2
                    let cc = q_frac(c.b(i, j), 2);
                    for (k, rho) in a.kernel_coeffs(i, j).iter().enumerate() {
                        let want = if k % 2 == 1 {
                            Q::zero()
                        } else {
                            let mut p = Q::one();
                            for _ in 0..=k {
                                p *= &cc;
                            }
                            p * q_int(2) * inv_fact(k + 1)
                        };
                        assert_eq!(rho, &want, "{} {} {} {}", name, i, j, k);
                    }
                }
            }
        }
        let g = Y0Algebra::gln(GlnDatum { n: 3 }, 5).unwrap();
        for i in 0..2 {
            for f in 0..3 {
                let c = GlnDatum { n: 3 }.c(f + 1, i + 1);
                for (k, rho) in g.kernel_coeffs(i, f).iter().enumerate() {
                    // −(−c)^{k+1}/(k+1)!
                    let mut p = q_int(-1);
                    for _ in 0..=k {
                        p *= q_int(-c);
                    }
                    assert_eq!(rho, &(p * inv_fact(k + 1)));
                }
            }
        }
    }

    #[test]
    fn levendorskii_closed_form() {
        for name in ["A1", "A2", "B2"] {
            let c = CartanDatum::builtin(name).unwrap();
            let a = Y0Algebra::semisimple(&c, 8).unwrap();
            let ctx = a.ctx();
            for i in 0..c.rank() {
                for j in 0..c.rank() {
                    let b = c.b(i, j);
                    for r in 0..=6usize {
                        let t = a.gen_series(&ctx, i, r);
                        let got = &t - &a.lambda(Sign::Plus, j, &t, V);
                        let mut want = GradedSeries::zero(&ctx);
                        for l in 0..=r / 2 {
                            let binom = factorial(r) / (factorial(2 * l) * factorial(r - 2 * l));
                            let mut coef = Q::from_integer(binom) * q_int(b) * q_frac(1, 2 * l as i64 + 1);
                            for _ in 0..2 * l {
                                coef *= q_frac(b, 2);
                            }
                            let m = Mono::var(ctx.nvars(), H, 2 * l as i16).mul(&Mono::var(ctx.nvars(), V, (r - 2 * l) as i16));
                            want = &want + &GradedSeries::monomial(&ctx, m, coef);
                        }
                        assert_eq!(got, want, "{} i={} j={} r={}", name, i, j, r);
                    }
                }
            }
        }
    }

    #[test]
    fn xi_t_conversions() {
        let a = sl2(4);
        let ctx = a.ctx();
        let xi = a.xi_modes(0);
        assert_eq!(xi[0], a.gen_series(&ctx, 0, 0));
        // ξ_1 = t_1 + ℏ t_0^2/2
        let t0 = a.gen_series(&ctx, 0, 0);
        let want = &a.gen_series(&ctx, 0, 1) + &(&t0 * &t0).mul_var(H, 1).scale(&q_frac(1, 2));
        assert_eq!(xi[1], want);
        // t_1 = ξ_1 − ℏ ξ_0^2/2
        let x = a.xi_ctx();
        let t1 = a.t_in_xi(&x, 0, 1);
        let x0 = GradedSeries::var(&x, a.xi_sym(0, 0));
        let want = &GradedSeries::var(&x, a.xi_sym(0, 1)) - &(&x0 * &x0).mul_var(0, 1).scale(&q_frac(1, 2));
        assert_eq!(t1, want);
        // round trip on every generator
        for r in 0..=4 {
            assert_eq!(a.xi_to_t(&a.t_in_xi(&x, 0, r)), a.gen_series(&ctx, 0, r));
        }
    }

    #[test]
    fn xi_substitute_examples() {
        let a = sl2(4);
        let ctx = a.ctx();
        let xi = a.xi_modes(0);
        assert_eq!(a.xi_substitute(0, &GradedSeries::one(&ctx)).unwrap(), xi[0]);
        assert_eq!(a.xi_substitute(0, &GradedSeries::var(&ctx, U)).unwrap(), xi[1]);
        let k = 3;
        let e = GradedSeries::var(&ctx, U).scale_int(k).exp().unwrap();
        let mut want = GradedSeries::zero(&ctx);
        for m in 0..=4usize {
            want = &want + &xi[m].scale(&(q_int(k.pow(m as u32)) * inv_fact(m)));
        }
        assert_eq!(a.xi_substitute(0, &e).unwrap(), want);
    }

    #[test]
    fn b_series_coefficients() {
        let a = sl2(4);
        let b = a.b_series(0, 4);
        let c = b.ctx().clone();
        assert_eq!(b.coeff_of_var(V, 0), GradedSeries::var(&c, H).mul_var(a.gen(0, 0), 1));
        assert_eq!(b.coeff_of_var(V, 2), GradedSeries::var(&c, H).mul_var(a.gen(0, 2), 1).scale(&q_frac(1, 2)));
        assert!(b.coeff_of_var(V, 4).is_zero());
        assert_eq!(b.eval_var(V, &Q::zero()).unwrap(), GradedSeries::var(&c, H).mul_var(a.gen(0, 0), 1));
    }

    #[test]
    fn phi0_examples() {
        let a = sl2(2);
        let ctx = a.ctx();
        let t = |r| a.gen_series(&ctx, 0, r);
        // Φ⁰(H_1) = t_0 + t_1 + t_2/2 − ℏ² t_0/24 at N = 2
        let want = &(&(&t(0) + &t(1)) + &t(2).scale(&q_frac(1, 2))) - &t(0).mul_var(H, 2).scale(&q_frac(1, 24));
        assert_eq!(a.phi0_h(0, 1), want);
        let b2 = Y0Algebra::semisimple(&CartanDatum::builtin("B2").unwrap(), 3).unwrap();
        assert_eq!(b2.phi0_h(0, 0), b2.gen_series(&b2.ctx(), 0, 0).scale(&q_frac(1, 2)));
        // k = 0 difference is t_0 mod ℏ²
        let a6 = sl2(6);
        let d = a6.psi_phi_diff(0, 0);
        let low = d.filter(|m| m.exp(H) < 2);
        assert_eq!(low, a6.gen_series(&a6.ctx(), 0, 0));
    }

    #[test]
    fn lambda_inverse_and_commuting() {
        let c = CartanDatum::builtin("A2").unwrap();
        let a = Y0Algebra::semisimple(&c, 6).unwrap();
        let ctx = a.ctx();
        for f in 0..2 {
            for r in 0..=6 {
                let t = a.gen_series(&ctx, f, r);
                for i in 0..2 {
                    let back = a.lambda(Sign::Minus, i, &a.lambda(Sign::Plus, i, &t, V), V);
                    assert_eq!(back, t);
                    for j in 0..2 {
                        for (s1, s2) in [(Sign::Plus, Sign::Minus), (Sign::Plus, Sign::Plus)] {
                            let x = a.lambda(s2, j, &a.lambda(s1, i, &t, U), V);
                            let y = a.lambda(s1, i, &a.lambda(s2, j, &t, V), U);
                            assert_eq!(x, y);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn adapted_generators_law() {
        for (name, n) in [("A1", 8u32), ("A2", 4), ("B2", 4)] {
            let c = CartanDatum::builtin(name).unwrap();
            let a = Y0Algebra::semisimple(&c, n).unwrap();
            let ad = a.adapted().unwrap();
            ad.verify_law(&a, n as usize).unwrap();
            // ϖ and t coordinates are mutually inverse
            let ctx = a.ctx();
            for f in 0..c.rank() {
                for r in 0..=n as usize {
                    let t = a.gen_series(&ctx, f, r);
                    assert_eq!(ad.from_varpi(&a, &ad.to_varpi(&a, &t)), t);
                }
            }
        }
        // t′_0 = −t_0/2 + O(ℏ)
        let a = sl2(4);
        let ad = a.adapted().unwrap();
        let low = ad.varpi[0][0].filter(|m| m.exp(H) == 0);
        assert_eq!(low, a.gen_series(&a.ctx(), 0, 0).scale(&q_frac(-1, 2)));
    }
}
