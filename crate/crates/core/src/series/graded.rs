//! Truncated graded series: a `Poly` whose monomials all have weight ≤ N.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::context::{same_context, VarContext};
use super::poly::{mono_string, q_int, Mono, Poly, Q};
use crate::error::SeriesError;

#[derive(Clone, Debug)]
pub struct GradedSeries {
    ctx: Arc<VarContext>,
    poly: Poly,
}

impl PartialEq for GradedSeries {
    fn eq(&self, other: &Self) -> bool {
        same_context(&self.ctx, &other.ctx) && self.poly == other.poly
    }
}

impl GradedSeries {
    pub fn zero(ctx: &Arc<VarContext>) -> Self {
        GradedSeries { ctx: ctx.clone(), poly: Poly::zero(ctx.nvars()) }
    }

    pub fn one(ctx: &Arc<VarContext>) -> Self {
        Self::constant(ctx, Q::one())
    }

    pub fn constant(ctx: &Arc<VarContext>, c: Q) -> Self {
        GradedSeries { ctx: ctx.clone(), poly: Poly::constant(ctx.nvars(), c) }
    }

    pub fn int(ctx: &Arc<VarContext>, c: i64) -> Self {
        Self::constant(ctx, q_int(c))
    }

    pub fn var(ctx: &Arc<VarContext>, i: usize) -> Self {
        Self::monomial(ctx, Mono::var(ctx.nvars(), i, 1), Q::one())
    }

    pub fn var_named(ctx: &Arc<VarContext>, name: &str) -> Self {
        Self::var(ctx, ctx.idx(name))
    }

    pub fn monomial(ctx: &Arc<VarContext>, m: Mono, c: Q) -> Self {
        Self::from_poly(ctx, Poly::monomial(m, c))
    }

    /// Truncates `p` into the context.
    pub fn from_poly(ctx: &Arc<VarContext>, p: Poly) -> Self {
        assert_eq!(p.nvars(), ctx.nvars(), "variable count mismatch");
        let n = ctx.order() as i64;
        let w = ctx.weights();
        let poly = if p.terms().iter().all(|(m, _)| m.weight(w) <= n) { p } else { p.filter(|m| m.weight(w) <= n) };
        GradedSeries { ctx: ctx.clone(), poly }
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, Q)>>(ctx: &Arc<VarContext>, it: I) -> Self {
        Self::from_poly(ctx, Poly::from_terms(ctx.nvars(), it))
    }

    pub fn ctx(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn into_poly(self) -> Poly {
        self.poly
    }

    pub fn terms(&self) -> &[(Mono, Q)] {
        self.poly.terms()
    }

    pub fn len(&self) -> usize {
        self.poly.len()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn order(&self) -> u32 {
        self.ctx.order()
    }

    pub fn coeff(&self, m: &Mono) -> Q {
        self.poly.coeff(m)
    }

    pub fn constant_term(&self) -> Q {
        self.poly.constant_term()
    }

    pub fn weight_of(&self, m: &Mono) -> i64 {
        m.weight(self.ctx.weights())
    }

    /// Smallest weight among stored monomials.
    pub fn min_weight(&self) -> Option<i64> {
        self.terms().iter().map(|(m, _)| self.weight_of(m)).min()
    }

    /// Homogeneous components indexed by weight 0..=N.
    pub fn components(&self) -> Vec<Poly> {
        let n = self.order() as usize;
        let mut parts: Vec<Vec<(Mono, Q)>> = vec![Vec::new(); n + 1];
        for (m, c) in self.terms() {
            parts[self.weight_of(m) as usize].push((m.clone(), c.clone()));
        }
        parts.into_iter().map(|t| Poly::from_sorted_unchecked(self.ctx.nvars(), t)).collect()
    }

    pub fn weight_component(&self, w: u32) -> GradedSeries {
        let p = self.poly.filter(|m| self.weight_of(m) == w as i64);
        GradedSeries { ctx: self.ctx.clone(), poly: p }
    }

    /// Keeps monomials of weight < w.
    pub fn below_weight(&self, w: u32) -> GradedSeries {
        let p = self.poly.filter(|m| self.weight_of(m) < w as i64);
        GradedSeries { ctx: self.ctx.clone(), poly: p }
    }

    fn check(&self, other: &Self) -> Result<(), SeriesError> {
        if same_context(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(SeriesError::ContextMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        Ok(GradedSeries { ctx: self.ctx.clone(), poly: self.poly.add(&other.poly) })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        Ok(GradedSeries { ctx: self.ctx.clone(), poly: self.poly.sub(&other.poly) })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        let poly = self.poly.mul_trunc(&other.poly, self.ctx.weights(), self.ctx.order());
        Ok(GradedSeries { ctx: self.ctx.clone(), poly })
    }

    pub fn scale(&self, c: &Q) -> Self {
        GradedSeries { ctx: self.ctx.clone(), poly: self.poly.scale(c) }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&q_int(c))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one(&self.ctx);
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = &r * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        r
    }

    /// Multiplicative inverse; the weight-0 part must be a nonzero rational.
    pub fn unit_inverse(&self) -> Result<Self, SeriesError> {
        let comps = self.components();
        if !comps[0].is_constant() || comps[0].is_zero() {
            return Err(SeriesError::NonUnit(self.show_poly(&comps[0])));
        }
        let c0 = comps[0].constant_term();
        let inv0 = c0.recip();
        let nv = self.ctx.nvars();
        let mut out: Vec<Poly> = vec![Poly::constant(nv, inv0.clone())];
        for w in 1..comps.len() {
            let mut acc = Poly::zero(nv);
            for k in 1..=w {
                if comps[k].is_zero() || out[w - k].is_zero() {
                    continue;
                }
                acc = acc.add(&comps[k].mul(&out[w - k]));
            }
            out.push(acc.scale(&(-inv0.clone())));
        }
        Ok(self.from_components(out))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, SeriesError> {
        self.try_mul(&other.unit_inverse()?)
    }

    pub fn exp(&self) -> Result<Self, SeriesError> {
        let comps = self.components();
        if !comps[0].is_zero() {
            return Err(SeriesError::ExpConstantTerm(self.show_poly(&comps[0])));
        }
        let nv = self.ctx.nvars();
        let mut out: Vec<Poly> = vec![Poly::one(nv)];
        for w in 1..comps.len() {
            let mut acc = Poly::zero(nv);
            for k in 1..=w {
                if comps[k].is_zero() || out[w - k].is_zero() {
                    continue;
                }
                acc = acc.add(&comps[k].mul(&out[w - k]).scale(&q_int(k as i64)));
            }
            out.push(acc.scale(&Q::new(1.into(), (w as i64).into())));
        }
        Ok(self.from_components(out))
    }

    pub fn log(&self) -> Result<Self, SeriesError> {
        let comps = self.components();
        if comps[0] != Poly::one(self.ctx.nvars()) {
            return Err(SeriesError::LogConstantTerm(self.show_poly(&comps[0])));
        }
        let nv = self.ctx.nvars();
        let mut out: Vec<Poly> = vec![Poly::zero(nv)];
        for w in 1..comps.len() {
            let mut acc = Poly::zero(nv);
            for k in 1..w {
                if out[k].is_zero() || comps[w - k].is_zero() {
                    continue;
                }
                acc = acc.add(&out[k].mul(&comps[w - k]).scale(&q_int(k as i64)));
            }
            let lw = comps[w].sub(&acc.scale(&Q::new(1.into(), (w as i64).into())));
            out.push(lw);
        }
        Ok(self.from_components(out))
    }

    fn from_components(&self, comps: Vec<Poly>) -> Self {
        let nv = self.ctx.nvars();
        let mut terms = Vec::new();
        for c in comps {
            terms.extend(c.into_terms());
        }
        GradedSeries { ctx: self.ctx.clone(), poly: Poly::from_terms(nv, terms) }
    }

    /// Moves the series to a context with identical symbols (possibly a different order).
    pub fn retruncate(&self, ctx: &Arc<VarContext>) -> Result<Self, SeriesError> {
        if !self.ctx.same_symbols(ctx) {
            return Err(SeriesError::ContextMismatch);
        }
        Ok(Self::from_poly(ctx, self.poly.clone()))
    }

    pub fn mul_var(&self, i: usize, e: i16) -> Self {
        let m = Mono::var(self.ctx.nvars(), i, e);
        Self::from_poly(&self.ctx, self.poly.mul_mono(&m))
    }

    /// Exact division by the symbol `i`; fails if some term lacks it.
    pub fn div_var(&self, i: usize) -> Result<Self, SeriesError> {
        if self.terms().iter().any(|(m, _)| m.exp(i) < 1) {
            return Err(SeriesError::NotDivisible(self.ctx.name(i).to_string()));
        }
        let m = Mono::var(self.ctx.nvars(), i, -1);
        Ok(GradedSeries { ctx: self.ctx.clone(), poly: self.poly.mul_mono(&m) })
    }

    /// Coefficient of `x_i^e`, as a series free of `x_i`.
    pub fn coeff_of_var(&self, i: usize, e: i16) -> Self {
        let terms: Vec<(Mono, Q)> = self
            .terms()
            .iter()
            .filter(|(m, _)| m.exp(i) == e)
            .map(|(m, c)| (m.with_exp(i, 0), c.clone()))
            .collect();
        GradedSeries { ctx: self.ctx.clone(), poly: Poly::from_terms(self.ctx.nvars(), terms) }
    }

    /// Splits by exponent of `x_i`; each part is free of `x_i`.
    pub fn split_var(&self, i: usize) -> BTreeMap<i16, GradedSeries> {
        let mut parts: BTreeMap<i16, Vec<(Mono, Q)>> = BTreeMap::new();
        for (m, c) in self.terms() {
            parts.entry(m.exp(i)).or_default().push((m.with_exp(i, 0), c.clone()));
        }
        parts
            .into_iter()
            .map(|(e, t)| (e, GradedSeries { ctx: self.ctx.clone(), poly: Poly::from_terms(self.ctx.nvars(), t) }))
            .collect()
    }

    pub fn max_exp(&self, i: usize) -> i16 {
        self.poly.max_exp(i)
    }

    pub fn derivative(&self, i: usize) -> Self {
        GradedSeries { ctx: self.ctx.clone(), poly: self.poly.derivative(i) }
    }

    /// Replaces `x_i` by a rational number. Refused for weight-0 symbols.
    pub fn eval_var(&self, i: usize, x: &Q) -> Result<Self, SeriesError> {
        if self.ctx.weight(i) == 0 {
            return Err(SeriesError::WeightZeroTarget(self.ctx.name(i).to_string()));
        }
        Ok(GradedSeries { ctx: self.ctx.clone(), poly: self.poly.eval_var(i, x) })
    }

    /// Replaces each power `x_i^m` by `image(m)` (a linear, not multiplicative, rule).
    pub fn substitute_powers<F: FnMut(usize) -> GradedSeries>(&self, i: usize, mut image: F) -> Result<Self, SeriesError> {
        if self.ctx.weight(i) == 0 {
            return Err(SeriesError::WeightZeroTarget(self.ctx.name(i).to_string()));
        }
        let mut acc = Self::zero(&self.ctx);
        for (e, part) in self.split_var(i) {
            let img = image(e as usize);
            acc = acc.try_add(&part.try_mul(&img)?)?;
        }
        Ok(acc)
    }

    /// Applies `x_i ↦ x_i + delta`.
    pub fn translate(&self, i: usize, delta: &GradedSeries) -> Self {
        let parts = self.split_var(i);
        let top = match parts.keys().next_back() {
            Some(&t) => t,
            None => return self.clone(),
        };
        if top == 0 {
            return self.clone();
        }
        let base = &Self::var(&self.ctx, i) + delta;
        let mut powers = vec![Self::one(&self.ctx)];
        for k in 1..=top as usize {
            let p = &powers[k - 1] * &base;
            powers.push(p);
        }
        let mut acc = Self::zero(&self.ctx);
        for (e, part) in parts {
            acc = &acc + &(&part * &powers[e as usize]);
        }
        acc
    }

    /// Ring homomorphism sending symbol `k` to `images[k]` (series in `target`).
    pub fn eval_hom(&self, target: &Arc<VarContext>, images: &[GradedSeries]) -> GradedSeries {
        assert_eq!(images.len(), self.ctx.nvars(), "one image per symbol");
        let mut terms: Vec<&(Mono, Q)> = self.terms().iter().collect();
        terms.sort_by(|a, b| a.0.exps().cmp(b.0.exps()));
        let mut cache: Vec<Vec<GradedSeries>> = vec![Vec::new(); images.len()];
        hom_rec(&terms, 0, target, images, &mut cache)
    }

    /// Sends symbol `from` to symbol `to` (exponents merge), leaving others fixed.
    pub fn rename(&self, from: usize, to: usize) -> Self {
        let poly = self.poly.map_monos(self.ctx.nvars(), |m| {
            let e = m.exp(from);
            m.with_exp(from, 0).with_exp(to, m.exp(to) + e)
        });
        Self::from_poly(&self.ctx, poly)
    }

    /// Keeps terms satisfying the predicate.
    pub fn filter<F: Fn(&Mono) -> bool>(&self, f: F) -> Self {
        GradedSeries { ctx: self.ctx.clone(), poly: self.poly.filter(f) }
    }

    /// Terms whose monomial involves none of the listed symbols.
    pub fn free_of(&self, syms: &[usize]) -> Self {
        self.filter(|m| syms.iter().all(|&s| m.exp(s) == 0))
    }

    /// The first monomial (canonical order) where the two series differ, rendered with both coefficients.
    pub fn first_difference(&self, other: &Self) -> Option<String> {
        let d = self.poly.sub(&other.poly);
        d.terms().first().map(|(m, _)| {
            format!(
                "{} (left {}, right {})",
                self.mono_name(m),
                self.poly.coeff(m),
                other.poly.coeff(m)
            )
        })
    }

    pub fn mono_name(&self, m: &Mono) -> String {
        let s = mono_string(m, self.ctx.names());
        if s.is_empty() {
            "1".into()
        } else {
            s
        }
    }

    fn show_poly(&self, p: &Poly) -> String {
        p.display_with(self.ctx.names())
    }
}

fn hom_rec(
    terms: &[&(Mono, Q)],
    var: usize,
    target: &Arc<VarContext>,
    images: &[GradedSeries],
    cache: &mut Vec<Vec<GradedSeries>>,
) -> GradedSeries {
    if terms.is_empty() {
        return GradedSeries::zero(target);
    }
    if var == images.len() {
        let mut c = Q::zero();
        for t in terms {
            c += &t.1;
        }
        return GradedSeries::constant(target, c);
    }
    let mut acc = GradedSeries::zero(target);
    let mut start = 0;
    while start < terms.len() {
        let e = terms[start].0.exp(var);
        let mut end = start + 1;
        while end < terms.len() && terms[end].0.exp(var) == e {
            end += 1;
        }
        let inner = hom_rec(&terms[start..end], var + 1, target, images, cache);
        if e == 0 {
            acc = &acc + &inner;
        } else {
            assert!(e > 0, "eval_hom needs nonnegative exponents");
            let pw = power_cached(cache, images, var, e as usize, target);
            acc = &acc + &(&inner * &pw);
        }
        start = end;
    }
    acc
}

fn power_cached(
    cache: &mut [Vec<GradedSeries>],
    images: &[GradedSeries],
    var: usize,
    e: usize,
    target: &Arc<VarContext>,
) -> GradedSeries {
    let c = &mut cache[var];
    if c.is_empty() {
        c.push(GradedSeries::one(target));
    }
    while c.len() <= e {
        let next = &c[c.len() - 1] * &images[var];
        c.push(next);
    }
    c[e].clone()
}

impl<'a> Add for &'a GradedSeries {
    type Output = GradedSeries;
    fn add(self, o: &'a GradedSeries) -> GradedSeries {
        self.try_add(o).expect("context mismatch in +")
    }
}

impl<'a> Sub for &'a GradedSeries {
    type Output = GradedSeries;
    fn sub(self, o: &'a GradedSeries) -> GradedSeries {
        self.try_sub(o).expect("context mismatch in -")
    }
}

impl<'a> Mul for &'a GradedSeries {
    type Output = GradedSeries;
    fn mul(self, o: &'a GradedSeries) -> GradedSeries {
        self.try_mul(o).expect("context mismatch in *")
    }
}

impl<'a> Neg for &'a GradedSeries {
    type Output = GradedSeries;
    fn neg(self) -> GradedSeries {
        GradedSeries { ctx: self.ctx.clone(), poly: self.poly.neg() }
    }
}

impl fmt::Display for GradedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly.display_with(self.ctx.names()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::poly::q_frac;

    fn ctx1(n: u32) -> Arc<VarContext> {
        VarContext::new(vec![("v", 1)], n).unwrap()
    }

    #[test]
    fn exp_times_exp_neg_is_one() {
        let c = ctx1(4);
        let v = GradedSeries::var(&c, 0);
        let a = v.exp().unwrap();
        let b = (-&v).exp().unwrap();
        assert_eq!(&a * &b, GradedSeries::one(&c));
        // oracle: explicit factorial expansion
        let mut fact = 1i64;
        for k in 0..=4 {
            if k > 0 {
                fact *= k;
            }
            assert_eq!(a.coeff(&Mono::var(1, 0, k as i16)), q_frac(1, fact));
        }
    }

    #[test]
    fn geometric_inverse() {
        let c = ctx1(3);
        let one = GradedSeries::one(&c);
        let v = GradedSeries::var(&c, 0);
        let inv = (&one - &v).unit_inverse().unwrap();
        let expect = &(&(&one + &v) + &v.pow(2)) + &v.pow(3);
        assert_eq!(inv, expect);
    }

    #[test]
    fn difference_of_squares() {
        let c = VarContext::new(vec![("hbar", 1)], 5).unwrap();
        let one = GradedSeries::one(&c);
        let h = GradedSeries::var(&c, 0);
        assert_eq!(&(&one + &h) * &(&one - &h), &one - &h.pow(2));
    }

    #[test]
    fn log_of_one_plus_weighted() {
        // ξ weight 1, ℏ weight 1, N = 2: log(1 + ℏξ) = ℏξ
        let c = VarContext::new(vec![("hbar", 1), ("xi", 1)], 2).unwrap();
        let hx = &GradedSeries::var(&c, 0) * &GradedSeries::var(&c, 1);
        let s = &GradedSeries::one(&c) + &hx;
        assert_eq!(s.log().unwrap(), hx);
        assert_eq!(GradedSeries::zero(&c).exp().unwrap(), GradedSeries::one(&c));
    }

    #[test]
    fn exp_refuses_weight_zero() {
        let c = VarContext::new(vec![("t0", 0), ("hbar", 1)], 3).unwrap();
        let t = GradedSeries::var(&c, 0);
        assert!(matches!(t.exp(), Err(SeriesError::ExpConstantTerm(_))));
        assert!(matches!((&t + &GradedSeries::one(&c)).unit_inverse(), Err(SeriesError::NonUnit(_))));
        assert!(matches!(GradedSeries::var(&c, 1).log(), Err(SeriesError::LogConstantTerm(_))));
    }

    #[test]
    fn context_mismatch_is_reported() {
        let a = GradedSeries::one(&ctx1(3));
        let b = GradedSeries::one(&ctx1(4));
        assert_eq!(a.try_add(&b), Err(SeriesError::ContextMismatch));
    }

    #[test]
    fn eval_hom_matches_direct_substitution() {
        let c = VarContext::new(vec![("x", 1), ("y", 1)], 6).unwrap();
        let x = GradedSeries::var(&c, 0);
        let y = GradedSeries::var(&c, 1);
        let f = &(&x * &x) + &(&x * &y.pow(2));
        let imgs = vec![&x + &y, x.clone()];
        let g = f.eval_hom(&c, &imgs);
        let xy = &x + &y;
        let expect = &(&xy * &xy) + &(&xy * &x.pow(2));
        assert_eq!(g, expect);
    }

    #[test]
    fn translate_is_binomial() {
        let c = VarContext::new(vec![("t", 1), ("u", 1)], 4).unwrap();
        let t = GradedSeries::var(&c, 0);
        let u = GradedSeries::var(&c, 1);
        let f = t.pow(3);
        assert_eq!(f.translate(0, &u), (&t + &u).pow(3));
    }
}
