//! Series in u⁻¹ with a finite mode window: `Σ_{k=0}^{K} c_k u^{-k}`, each `c_k` a graded series.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::context::{same_context, VarContext};
use super::graded::GradedSeries;
use super::poly::Q;
use crate::error::SeriesError;

#[derive(Clone, Debug, PartialEq)]
pub struct USeries {
    ctx: Arc<VarContext>,
    modes: Vec<GradedSeries>,
}

fn binom_neg(k: i64, j: i64) -> Q {
    // binom(-k, j) = (-1)^j binom(k+j-1, j)
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for t in 0..j {
        num *= BigInt::from(k + t);
        den *= BigInt::from(t + 1);
    }
    let v = Q::new(num, den);
    if j % 2 == 1 {
        -v
    } else {
        v
    }
}

impl USeries {
    /// Zero series with modes u^0 .. u^{-window}.
    pub fn zero(ctx: &Arc<VarContext>, window: usize) -> Self {
        USeries { ctx: ctx.clone(), modes: vec![GradedSeries::zero(ctx); window + 1] }
    }

    pub fn one(ctx: &Arc<VarContext>, window: usize) -> Self {
        let mut s = Self::zero(ctx, window);
        s.modes[0] = GradedSeries::one(ctx);
        s
    }

    pub fn constant(c: GradedSeries, window: usize) -> Self {
        let mut s = Self::zero(c.ctx(), window);
        s.modes[0] = c;
        s
    }

    /// Builds from coefficients of u^0, u^{-1}, ...; missing modes are zero.
    pub fn from_modes(ctx: &Arc<VarContext>, window: usize, modes: Vec<GradedSeries>) -> Self {
        let mut s = Self::zero(ctx, window);
        for (k, m) in modes.into_iter().enumerate() {
            if k <= window {
                assert!(same_context(m.ctx(), ctx), "mode lives in a foreign context");
                s.modes[k] = m;
            }
        }
        s
    }

    /// `Σ_{r} c_r u^{-r-1}` from the list `c_0, c_1, ...`.
    pub fn from_tail(ctx: &Arc<VarContext>, window: usize, tail: Vec<GradedSeries>) -> Self {
        let mut modes = vec![GradedSeries::zero(ctx)];
        modes.extend(tail);
        Self::from_modes(ctx, window, modes)
    }

    pub fn ctx(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn window(&self) -> usize {
        self.modes.len() - 1
    }

    /// Coefficient of u^{-k}.
    pub fn mode(&self, k: usize) -> &GradedSeries {
        &self.modes[k]
    }

    pub fn modes(&self) -> &[GradedSeries] {
        &self.modes
    }

    fn check(&self, o: &Self) -> Result<(), SeriesError> {
        if same_context(&self.ctx, &o.ctx) && self.window() == o.window() {
            Ok(())
        } else {
            Err(SeriesError::ContextMismatch)
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self, SeriesError> {
        self.check(o)?;
        let modes = self.modes.iter().zip(&o.modes).map(|(a, b)| a + b).collect();
        Ok(USeries { ctx: self.ctx.clone(), modes })
    }

    pub fn sub(&self, o: &Self) -> Result<Self, SeriesError> {
        self.check(o)?;
        let modes = self.modes.iter().zip(&o.modes).map(|(a, b)| a - b).collect();
        Ok(USeries { ctx: self.ctx.clone(), modes })
    }

    pub fn mul(&self, o: &Self) -> Result<Self, SeriesError> {
        self.check(o)?;
        let k = self.window();
        let mut modes = vec![GradedSeries::zero(&self.ctx); k + 1];
        for (a, x) in self.modes.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in o.modes.iter().enumerate().take(k + 1 - a) {
                if y.is_zero() {
                    continue;
                }
                modes[a + b] = &modes[a + b] + &(x * y);
            }
        }
        Ok(USeries { ctx: self.ctx.clone(), modes })
    }

    pub fn scale(&self, c: &GradedSeries) -> Self {
        USeries { ctx: self.ctx.clone(), modes: self.modes.iter().map(|m| m * c).collect() }
    }

    pub fn map<F: FnMut(&GradedSeries) -> GradedSeries>(&self, f: F) -> Self {
        USeries { ctx: self.ctx.clone(), modes: self.modes.iter().map(f).collect() }
    }

    /// Same modes, coefficients moved to a context with identical symbols.
    pub fn retruncate(&self, ctx: &Arc<VarContext>) -> Result<Self, SeriesError> {
        let modes = self.modes.iter().map(|m| m.retruncate(ctx)).collect::<Result<_, _>>()?;
        Ok(USeries { ctx: ctx.clone(), modes })
    }

    fn tail_only(&self) -> Self {
        let mut s = self.clone();
        s.modes[0] = GradedSeries::zero(&self.ctx);
        s
    }

    /// Power series `Σ_j coeffs[j] x^j` in the u⁻¹-tail `x` (mode 0 of `x` must vanish).
    fn compose_tail(x: &Self, coeffs: &dyn Fn(usize) -> Q) -> Self {
        let k = x.window();
        let mut acc = Self::zero(&x.ctx, k);
        let mut p = Self::one(&x.ctx, k);
        for j in 0..=k {
            let c = coeffs(j);
            if !c.is_zero() {
                acc = acc.add(&p.map(|m| m.scale(&c))).expect("same shape");
            }
            p = p.mul(x).expect("same shape");
        }
        acc
    }

    pub fn exp(&self) -> Result<Self, SeriesError> {
        let e0 = self.modes[0].exp()?;
        let mut fact = BigInt::one();
        let facts: Vec<BigInt> = (0..=self.window())
            .map(|j| {
                if j > 0 {
                    fact *= BigInt::from(j);
                }
                fact.clone()
            })
            .collect();
        let t = Self::compose_tail(&self.tail_only(), &|j| Q::new(BigInt::one(), facts[j].clone()));
        Ok(t.scale(&e0))
    }

    pub fn log(&self) -> Result<Self, SeriesError> {
        let a0 = &self.modes[0];
        let l0 = a0.log()?;
        let inv0 = a0.unit_inverse()?;
        let x = self.tail_only().scale(&inv0);
        let t = Self::compose_tail(&x, &|j| {
            if j == 0 {
                Q::zero()
            } else {
                let v = Q::new(BigInt::one(), BigInt::from(j));
                if j % 2 == 0 {
                    -v
                } else {
                    v
                }
            }
        });
        let mut out = t;
        out.modes[0] = &out.modes[0] + &l0;
        Ok(out)
    }

    pub fn unit_inverse(&self) -> Result<Self, SeriesError> {
        let inv0 = self.modes[0].unit_inverse()?;
        let x = self.tail_only().scale(&inv0);
        let t = Self::compose_tail(&x, &|j| if j % 2 == 0 { Q::one() } else { -Q::one() });
        Ok(t.scale(&inv0))
    }

    /// `a(u + c)`; `c` must have no weight-0 part.
    pub fn shift(&self, c: &GradedSeries) -> Result<Self, SeriesError> {
        if !same_context(c.ctx(), &self.ctx) {
            return Err(SeriesError::ContextMismatch);
        }
        if c.is_zero() {
            return Ok(self.clone());
        }
        if c.min_weight() == Some(0) {
            return Err(SeriesError::WeightZeroShift);
        }
        let k = self.window();
        let mut cpow = vec![GradedSeries::one(&self.ctx)];
        for j in 1..=k {
            let p = &cpow[j - 1] * c;
            cpow.push(p);
        }
        let mut modes = self.modes.clone();
        for m in 1..=k {
            modes[m] = GradedSeries::zero(&self.ctx);
        }
        for m in 1..=k {
            let a = &self.modes[m];
            if a.is_zero() {
                continue;
            }
            for j in 0..=(k - m) {
                if cpow[j].is_zero() {
                    break;
                }
                let term = (a * &cpow[j]).scale(&binom_neg(m as i64, j as i64));
                modes[m + j] = &modes[m + j] + &term;
            }
        }
        Ok(USeries { ctx: self.ctx.clone(), modes })
    }

    /// Inverse Borel transform u^{-r-1} ↦ v^r/r! into the symbol `v` of the same context.
    pub fn borel(&self, v: usize) -> Result<GradedSeries, SeriesError> {
        if !self.modes[0].is_zero() {
            return Err(SeriesError::PositivePowers);
        }
        let mut acc = GradedSeries::zero(&self.ctx);
        let mut fact = BigInt::one();
        for r in 0..self.window() {
            if r > 0 {
                fact *= BigInt::from(r);
            }
            let c = &self.modes[r + 1];
            if c.is_zero() {
                continue;
            }
            let term = c.mul_var(v, r as i16).scale(&Q::new(BigInt::one(), fact.clone()));
            acc = &acc + &term;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::poly::{q_frac, q_int};

    fn ctx() -> Arc<VarContext> {
        VarContext::new(vec![("hbar", 1), ("p", 1), ("v", 1)], 6).unwrap()
    }

    #[test]
    fn shift_of_inverse_u() {
        let c = VarContext::new(vec![("hbar", 1)], 3).unwrap();
        let h = GradedSeries::var(&c, 0);
        let a = USeries::from_tail(&c, 3, vec![GradedSeries::one(&c)]);
        let s = a.shift(&h).unwrap();
        assert_eq!(s.mode(1), &GradedSeries::one(&c));
        assert_eq!(s.mode(2), &(-&h));
        assert_eq!(s.mode(3), &h.pow(2));
        assert_eq!(a.shift(&GradedSeries::zero(&c)).unwrap(), a);
        assert_eq!(a.shift(&GradedSeries::one(&c)), Err(SeriesError::WeightZeroShift));
    }

    #[test]
    fn borel_of_log_linear_factor() {
        // B(log(1 - p u^{-1})) = (1 - e^{pv})/v
        let c = ctx();
        let p = GradedSeries::var(&c, 1);
        let one = USeries::one(&c, 6);
        let lin = USeries::from_tail(&c, 6, vec![-&p]);
        let l = one.add(&lin).unwrap().log().unwrap();
        let b = l.borel(2).unwrap();
        // oracle: -Σ_{r≥0} p^{r+1} v^r/(r+1)!, weight 2r+1 ≤ 6
        let v = GradedSeries::var(&c, 2);
        let mut expect = GradedSeries::zero(&c);
        let mut f = 1i64;
        for r in 0..=2 {
            f *= r + 1;
            expect = &expect - &(&p.pow(r as u32 + 1) * &v.pow(r as u32)).scale(&q_frac(1, f));
        }
        assert_eq!(b, expect);
        let u1 = USeries::from_tail(&c, 6, vec![GradedSeries::one(&c)]);
        assert_eq!(u1.borel(2).unwrap(), GradedSeries::one(&c));
        assert_eq!(USeries::one(&c, 2).borel(2), Err(SeriesError::PositivePowers));
    }

    #[test]
    fn exp_log_round_trip() {
        let c = ctx();
        let h = GradedSeries::var(&c, 0);
        let p = GradedSeries::var(&c, 1);
        let a = USeries::from_modes(&c, 5, vec![GradedSeries::zero(&c), &h * &p, h.scale(&q_int(3)), p.clone()]);
        let e = a.exp().unwrap();
        assert_eq!(e.log().unwrap(), a);
        let inv = e.unit_inverse().unwrap();
        assert_eq!(inv.mul(&e).unwrap(), USeries::one(&c, 5));
    }

    #[test]
    fn shift_round_trip() {
        let c = ctx();
        let h = GradedSeries::var(&c, 0);
        let a = USeries::from_tail(&c, 5, vec![h.clone(), GradedSeries::var(&c, 1), GradedSeries::one(&c)]);
        let back = a.shift(&h).unwrap().shift(&(-&h)).unwrap();
        assert_eq!(back, a);
    }
}
