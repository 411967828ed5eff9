//! Suite orchestration: every check of a scenario, run over a work-stealing pool.

use std::time::Instant;

use anyhow::{Context, Result};
use loopyang_core::cartan::CartanDatum;
use loopyang_core::checker::{
    check_all, check_gauge_axioms, equal_up_to_scalar, gauge_solve, mutate, random_unit, torus_gauge, xi_gauge,
};
use loopyang_core::drinfeld::{condition_b_drinfeld, diagram_check, symmetrizer_identity};
use loopyang_core::phi::{degeneration_report, g_family, GFamily, Gauge};
use loopyang_core::report::{param, CheckReport};
use loopyang_core::series::{q_frac, q_int};
use loopyang_core::suite::{adapted_report, lambda_report};
use loopyang_core::y0::{Sign, Y0Algebra};
use loopyang_gln::central::{central_abstract_report, central_report, central_series, gln_algebra, todd_report};
use loopyang_gln::family::{gln_condition_check, gln_g_family, lambda_closed_report};
use loopyang_gln::intertwine::intertwine_check;
use loopyang_gln::relations::relations_check;
use loopyang_gln::Side;
use rayon::prelude::*;

use crate::cache::SeriesCache;
use crate::scenario::{Scenario, Suite};

type Job<'a> = Box<dyn Fn() -> Result<Vec<CheckReport>> + Send + Sync + 'a>;

fn tag(mut reps: Vec<CheckReport>, prefix: &str) -> Vec<CheckReport> {
    for r in &mut reps {
        if !r.id.contains('.') {
            r.id = format!("{}.{}", prefix, r.id);
        }
    }
    reps
}

fn with_param(mut reps: Vec<CheckReport>, k: &str, v: impl std::fmt::Display) -> Vec<CheckReport> {
    let p = param(k, v);
    for r in &mut reps {
        r.params.insert(0, p.clone());
    }
    reps
}

/// The g-family for a semisimple scenario, through the cache when one is configured.
pub fn family_for(s: &Scenario, c: &CartanDatum, alg: &Y0Algebra) -> Result<GFamily> {
    let g = match &s.cache_dir {
        Some(dir) => SeriesCache::new(dir).g_family(c, alg, Gauge::Rational).context("series cache")?.0,
        None => g_family(alg, Gauge::Rational),
    };
    Ok(if s.mutate { mutate(&g, Sign::Plus, 0, 1, 1, q_int(1)) } else { g })
}

/// Runs a validated scenario; reports come back in a canonical order.
pub fn run_suite(s: &Scenario) -> Result<Vec<CheckReport>> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(s.jobs).build().context("thread pool")?;
    let mut reps = pool.install(|| -> Result<Vec<CheckReport>> {
        let jobs = match s.suite {
            Suite::Semisimple => semisimple_jobs(s)?,
            Suite::Gln => gln_jobs(s),
            Suite::Drinfeld => drinfeld_jobs(s)?,
            Suite::Gauge => gauge_jobs(s)?,
        };
        let parts: Vec<Result<Vec<CheckReport>>> = jobs.par_iter().map(|j| j()).collect();
        let mut out = Vec::new();
        for p in parts {
            out.extend(p?);
        }
        Ok(out)
    })?;
    reps.sort_by_key(|r| r.sort_key());
    Ok(reps)
}

fn semisimple_jobs(s: &Scenario) -> Result<Vec<Job<'_>>> {
    let c = s.cartan()?;
    let alg = Y0Algebra::semisimple(&c, s.order)?;
    let g = family_for(s, &c, &alg)?;
    let ks = s.ks();
    let n = alg.nodes();
    let r_max = (s.order as usize).min(6);
    let adapted_r = if n == 1 { s.order as usize } else { (s.order as usize).min(4) };
    let shared = std::sync::Arc::new((alg, g));
    let mut jobs: Vec<Job> = Vec::new();
    for i in 0..n {
        let sh = shared.clone();
        let ks = ks.clone();
        jobs.push(Box::new(move || {
            let (alg, g) = &*sh;
            let mut out = Vec::new();
            for j in 0..n {
                out.push(loopyang_core::checker::check_a(alg, g, i, j));
            }
            out.extend(loopyang_core::checker::check_b_all(alg, g, i, &ks));
            for sign in [Sign::Plus, Sign::Minus] {
                for j in 0..n {
                    out.push(loopyang_core::checker::check_c(alg, g, sign, i, j));
                }
            }
            Ok(tag(out, "cond"))
        }));
    }
    let sh = shared.clone();
    jobs.push(Box::new(move || Ok(lambda_report(&sh.0, r_max))));
    let sh = shared.clone();
    jobs.push(Box::new(move || Ok(adapted_report(&sh.0, adapted_r))));
    let sh = shared.clone();
    jobs.push(Box::new(move || Ok(degeneration_report(&sh.0, &sh.1, 3))));
    let sh = shared;
    jobs.push(Box::new(move || Ok(tag(gauge_axiom_reports(&sh.0, 1)?, "gauge"))));
    Ok(jobs)
}

/// (A₀), (B₀), (C₀^±) for a torus gauge and for the ξ-gauge of `random_unit(seed)`.
pub fn gauge_axiom_reports(alg: &Y0Algebra, seed: u64) -> Result<Vec<CheckReport>> {
    let n = alg.nodes();
    let s: Vec<_> = (0..n).map(|i| q_frac(2 * i as i64 + 3, 2 - (i as i64 % 2))).collect();
    let mut out = with_param(check_gauge_axioms(alg, &torus_gauge(alg, &s)), "gauge", "torus");
    let xi = random_unit(alg, seed, alg.order().min(4));
    out.extend(with_param(check_gauge_axioms(alg, &xi_gauge(alg, &xi)?), "gauge", format!("xi{}", seed)));
    Ok(out)
}

/// gauge_solve(ξ-gauge of random_unit(seed)) agrees with the seed up to a scalar.
pub fn gauge_roundtrip(alg: &Y0Algebra, seed: u64) -> CheckReport {
    let t = Instant::now();
    let xi0 = random_unit(alg, seed, alg.order().min(4));
    let res = xi_gauge(alg, &xi0)
        .map_err(|e| e.to_string())
        .and_then(|r| gauge_solve(alg, &r.plus).map_err(|e| e.to_string()))
        .and_then(|xi| equal_up_to_scalar(alg, &xi, &xi0));
    CheckReport::from_result("gauge.roundtrip", vec![param("seed", seed), param("N", alg.order())], res, t)
}

fn gauge_jobs(s: &Scenario) -> Result<Vec<Job<'_>>> {
    let c = s.cartan()?;
    let alg = std::sync::Arc::new(Y0Algebra::semisimple(&c, s.order)?);
    let mut jobs: Vec<Job> = Vec::new();
    for seed in 0..s.seeds {
        let a = alg.clone();
        jobs.push(Box::new(move || Ok(vec![gauge_roundtrip(&a, seed)])));
    }
    jobs.push(Box::new(move || Ok(tag(gauge_axiom_reports(&alg, 1)?, "gauge"))));
    Ok(jobs)
}

fn drinfeld_jobs(s: &Scenario) -> Result<Vec<Job<'_>>> {
    let c = s.cartan()?;
    let alg = Y0Algebra::semisimple(&c, s.order)?;
    let g = family_for(s, &c, &alg)?;
    let shared = std::sync::Arc::new((alg, g));
    let rs: Vec<i64> = (-s.r_window..=s.r_window).collect();
    let mut jobs: Vec<Job> = Vec::new();
    for m in 1..=s.modes {
        jobs.push(Box::new(move || Ok(vec![symmetrizer_identity(m)])));
        let sh = shared.clone();
        let rs = rs.clone();
        jobs.push(Box::new(move || Ok(diagram_check(&sh.0, &rs, m))));
        for k in s.ks() {
            let sh = shared.clone();
            jobs.push(Box::new(move || Ok(vec![condition_b_drinfeld(&sh.0, &sh.1, m, k)])));
        }
    }
    Ok(jobs)
}

fn gln_jobs(s: &Scenario) -> Vec<Job<'_>> {
    let mut jobs: Vec<Job> = Vec::new();
    let window = s.modes as i64;
    let mut ranks: Vec<usize> = s.grid.iter().map(|&(n, _)| n).collect();
    ranks.sort_unstable();
    ranks.dedup();
    for &(n, d) in &s.grid {
        for side in [Side::Y, Side::U] {
            jobs.push(Box::new(move || Ok(relations_check(side, n, d, window, s.deg)?)));
        }
        jobs.push(Box::new(move || {
            let alg = gln_algebra(n, s.order)?;
            let cs = central_series(&alg)?;
            let mut out = central_report(&alg, &cs, d)?;
            out.extend(todd_report(&alg, &cs, d)?);
            Ok(with_param(out, "d", d))
        }));
        jobs.push(Box::new(move || Ok(intertwine_check(n, d, s.order, s.r_window, s.deg)?)));
    }
    for n in ranks {
        jobs.push(Box::new(move || {
            let alg = gln_algebra(n, s.order)?;
            let cs = central_series(&alg)?;
            let mut g = gln_g_family(&alg, &cs);
            if s.mutate {
                g = mutate(&g, Sign::Plus, 0, 1, 1, q_int(1));
            }
            let mut out = gln_condition_check(&alg, &g);
            out.extend(lambda_closed_report(&alg, &g));
            out.extend(central_abstract_report(&alg, &cs));
            Ok(with_param(out, "n", n))
        }));
    }
    jobs
}

/// Exposed for the acceptance runner: all (A), (B), (C) for a family.
pub fn conditions(alg: &Y0Algebra, g: &GFamily, ks: &[i64]) -> Vec<CheckReport> {
    tag(check_all(alg, g, ks), "cond")
}
