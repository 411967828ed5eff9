//! The gl_n Φ acting on the homology-side module, the map eexp, and the intertwining check
//! eexp(X·p) = Φ(X)·eexp(p).

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use loopyang_core::report::{param, CheckReport};
use loopyang_core::series::{q_frac, GradedSeries, Poly, VarContext};
use loopyang_core::y0::{Sign, Y0Algebra, H, V};
use rayon::prelude::*;

use crate::central::{central_series, gln_algebra, psi_y, todd, y_ctx, y_rep, CentralSeries, X0};
use crate::flag::FlagPartition;
use crate::rep::{PVector, Rep, Side};
use crate::GlnError;

/// Generators of the quantum loop algebra, 1-based as in E_{i,r}, F_{i,r}, D_{j,r}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gen {
    D(usize, i64),
    E(usize, i64),
    F(usize, i64),
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::D(j, r) => write!(f, "D{},{}", j, r),
            Gen::E(i, r) => write!(f, "E{},{}", i, r),
            Gen::F(i, r) => write!(f, "F{},{}", i, r),
        }
    }
}

/// All generators with |r| ≤ window.
pub fn generators(n: usize, window: i64) -> Vec<Gen> {
    let mut out = Vec::new();
    for r in -window..=window {
        out.extend((1..=n).map(|j| Gen::D(j, r)));
        out.extend((1..n).map(|i| Gen::E(i, r)));
        out.extend((1..n).map(|i| Gen::F(i, r)));
    }
    out
}

fn trunc(p: &Poly, w: i64) -> Poly {
    p.filter(|m| (m.degree() as i64) <= w)
}

/// Φ on R(P) = ⊕ R^{S(d)}, truncated at weight N, with vectors in the layout of `y_ctx`.
pub struct PhiGln {
    alg: Y0Algebra,
    cs: CentralSeries,
    rep: Rep,
    ctx: Arc<VarContext>,
}

impl PhiGln {
    pub fn new(n: usize, d: usize, order: u32) -> Result<Self, GlnError> {
        let alg = gln_algebra(n, order)?;
        let cs = central_series(&alg)?;
        Ok(PhiGln { rep: y_rep(n, d)?, ctx: y_ctx(d, order), alg, cs })
    }

    pub fn rep(&self) -> &Rep {
        &self.rep
    }

    pub fn ctx(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn order(&self) -> u32 {
        self.alg.order()
    }

    /// e^{rv}·q^{∓(Δ_0 + θ_{·,0})}·Td^±_i(v) in Y⁰.
    fn shifted_todd(&self, sign: Sign, i: usize, r: i64) -> GradedSeries {
        let ctx = self.alg.ctx();
        let f = match sign {
            Sign::Plus => i - 1,
            Sign::Minus => i,
        };
        let t0 = &self.cs.zeta[0] + &self.alg.gen_series(&ctx, f, 0);
        let q = t0.mul_var(H, 1).scale(&q_frac(-sign.sgn(), 2)).exp().expect("weight 1");
        let shift = GradedSeries::var(&ctx, V).scale_int(r).exp().expect("weight 1");
        &(&shift * &q) * &todd(&self.alg, &self.cs, sign, i)
    }

    /// The multiplication coefficients of Φ(gen) on component `dd`: one entry per e/f mode s
    /// (entry s is Ψ_Y of the v^s coefficient), or a single entry for D.
    pub fn coefficients(&self, gen: Gen, dd: &FlagPartition) -> Vec<Poly> {
        match gen {
            Gen::D(j, r) => {
                let c = self.alg.phi0_h(j - 1, r);
                vec![psi_y(&self.alg, &self.rep, dd, &c, &self.ctx).into_poly()]
            }
            Gen::E(i, r) | Gen::F(i, r) => {
                let sign = if matches!(gen, Gen::E(..)) { Sign::Plus } else { Sign::Minus };
                let s = psi_y(&self.alg, &self.rep, dd, &self.shifted_todd(sign, i, r), &self.ctx);
                (0..=self.order() as i16).map(|k| s.coeff_of_var(V, k).into_poly()).collect()
            }
        }
    }

    /// Φ(gen)·v: the coefficient multiplies first, then the e/f mode acts.
    pub fn apply(&self, gen: Gen, v: &PVector) -> Result<PVector, GlnError> {
        let mut cache = HashMap::new();
        self.apply_cached(gen, v, &mut cache)
    }

    fn apply_cached(&self, gen: Gen, v: &PVector, cache: &mut HashMap<FlagPartition, Vec<Poly>>) -> Result<PVector, GlnError> {
        let nn = self.order() as i64;
        let mut out = PVector::new();
        for (dd, p) in v.iter() {
            let c = cache.entry(dd.clone()).or_insert_with(|| self.coefficients(gen, dd));
            match gen {
                Gen::D(..) => out.add_to(dd, trunc(&p.mul(&c[0]), nn)),
                Gen::E(i, _) | Gen::F(i, _) => {
                    for (s, cs) in c.iter().enumerate() {
                        let w = trunc(&cs.mul(p), nn - s as i64);
                        if w.is_zero() {
                            continue;
                        }
                        let src = PVector::single(dd, w);
                        let img = match gen {
                            Gen::E(..) => self.rep.raise(i, s as i64, &src)?,
                            _ => self.rep.lower(i, s as i64, &src)?,
                        };
                        out = out.add(&img);
                    }
                }
            }
        }
        Ok(out.map(|_, p| trunc(p, nn)))
    }
}

/// Ψ_U(gen)·v on the equivariant K-theory side.
pub fn psi_u_apply(rep: &Rep, gen: Gen, v: &PVector) -> Result<PVector, GlnError> {
    match gen {
        Gen::D(j, r) => Ok(rep.multiply(|dd| rep.d_u_mode(dd, j, r), v)),
        Gen::E(i, r) => rep.raise(i, r, v),
        Gen::F(i, r) => rep.lower(i, r, v),
    }
}

/// eexp: q ↦ e^{ℏ/2}, X_k ↦ e^{x_k}, from the compact U layout into `ctx`.
pub fn eexp(v: &PVector, ctx: &Arc<VarContext>) -> PVector {
    let mut memo: HashMap<Vec<i16>, Poly> = HashMap::new();
    let mut out = PVector::new();
    for (dd, p) in v.iter() {
        let mut acc = GradedSeries::zero(ctx);
        for (m, c) in p.terms() {
            let img = memo.entry(m.exps().to_vec()).or_insert_with(|| {
                let mut lin = GradedSeries::var(ctx, H).scale(&q_frac(m.exp(0) as i64, 2));
                for k in 1..m.len() {
                    lin = &lin + &GradedSeries::var(ctx, X0 + k - 1).scale_int(m.exp(k) as i64);
                }
                lin.exp().expect("weight 1").into_poly()
            });
            acc = &acc + &GradedSeries::from_poly(ctx, img.clone()).scale(c);
        }
        out.add_to(dd, acc.into_poly());
    }
    out
}

/// First basis vector on which the two routes disagree.
pub fn intertwine_on(phi: &PhiGln, urep: &Rep, gen: Gen, basis: &[PVector]) -> Result<(), String> {
    let mut cache = HashMap::new();
    for p in basis {
        let lhs = psi_u_apply(urep, gen, p).map_err(|e| e.to_string())?;
        let lhs = eexp(&lhs, phi.ctx());
        let rhs = phi.apply_cached(gen, &eexp(p, phi.ctx()), &mut cache).map_err(|e| e.to_string())?;
        if let Some(e) = lhs.first_difference(&rhs, phi.ctx().names()) {
            let src: Vec<String> = p.iter().map(|(dd, q)| format!("{} {}", dd, q.display_with(urep.names()))).collect();
            return Err(format!("on {}: {}", src.join(" "), e));
        }
    }
    Ok(())
}

/// Both routes of eexp(X·p) = Φ(X)·eexp(p) for every generator with |r| ≤ `window` and every
/// orbit-sum basis vector of degree ≤ `deg`; one report per generator.
pub fn intertwine_check(n: usize, d: usize, order: u32, window: i64, deg: usize) -> Result<Vec<CheckReport>, GlnError> {
    let phi = PhiGln::new(n, d, order)?;
    let urep = Rep::new(Side::U, n, d)?;
    let basis = urep.basis(deg);
    let gens = generators(n, window);
    Ok(gens
        .par_iter()
        .map(|&gen| {
            let t = Instant::now();
            CheckReport::from_result(
                "gln.intertwine",
                vec![param("gen", gen), param("n", n), param("d", d), param("N", order), param("deg", deg)],
                intertwine_on(&phi, &urep, gen, &basis),
                t,
            )
            .with_note(format!("{} basis vectors", basis.len()))
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one(rep: &Rep) -> Poly {
        Poly::one(rep.nvars())
    }

    #[test]
    fn e0_transports_one_in_rank_one() {
        let phi = PhiGln::new(2, 1, 4).unwrap();
        let src = FlagPartition::new(vec![0, 0, 1]).unwrap();
        let dst = FlagPartition::new(vec![0, 1, 1]).unwrap();
        let out = phi.apply(Gen::E(1, 0), &PVector::single(&src, one(phi.rep()))).unwrap();
        assert_eq!(out, PVector::single(&dst, one(phi.rep())));
    }

    #[test]
    fn d0_is_the_block_count() {
        let phi = PhiGln::new(3, 2, 3).unwrap();
        for dd in phi.rep().partitions() {
            for j in 1..=3 {
                let c = phi.coefficients(Gen::D(j, 0), &dd);
                let want = (2 - dd.block_len(j)) as i64;
                assert_eq!(c[0], phi.rep().int(want), "{} j={}", dd, j);
            }
        }
    }

    #[test]
    fn eexp_of_q() {
        let urep = Rep::new(Side::U, 2, 1).unwrap();
        let ctx = y_ctx(1, 3);
        let dd = FlagPartition::new(vec![0, 1, 1]).unwrap();
        let out = eexp(&PVector::single(&dd, urep.q_pow(1)), &ctx);
        let h = GradedSeries::var(&ctx, H);
        let want = &(&GradedSeries::one(&ctx) + &h.scale(&q_frac(1, 2))) + &(&h * &h).scale(&q_frac(1, 8));
        let want = &want + &(&(&h * &h) * &h).scale(&q_frac(1, 48));
        assert_eq!(out.get(&dd).unwrap(), want.poly());
    }

    #[test]
    fn e1_on_power_sum() {
        let phi = PhiGln::new(2, 2, 6).unwrap();
        let urep = Rep::new(Side::U, 2, 2).unwrap();
        let dd = FlagPartition::new(vec![0, 1, 2]).unwrap();
        let p = PVector::single(&dd, urep.x(0).add(&urep.x(1)));
        assert_eq!(intertwine_on(&phi, &urep, Gen::E(1, 1), &[p]), Ok(()));
    }

    #[test]
    fn small_grid() {
        for r in intertwine_check(2, 2, 4, 1, 2).unwrap() {
            assert!(r.passed(), "{}", r);
        }
    }

    #[test]
    fn wrong_mode_is_detected() {
        let phi = PhiGln::new(2, 2, 4).unwrap();
        let urep = Rep::new(Side::U, 2, 2).unwrap();
        let dd = FlagPartition::new(vec![0, 1, 2]).unwrap();
        let p = eexp(&PVector::single(&dd, urep.x(1)), phi.ctx());
        let a = phi.apply(Gen::E(1, 1), &p).unwrap();
        let b = phi.apply(Gen::E(1, -1), &p).unwrap();
        assert_ne!(a, b);
    }
}
