//! Canonical text form: `#` header lines, then one `e1,e2,...:num/den` record per term.

use std::sync::Arc;

use num_bigint::BigInt;

use super::context::VarContext;
use super::graded::GradedSeries;
use super::poly::{Mono, Q};
use crate::error::SeriesError;

pub fn context_header(ctx: &VarContext) -> String {
    let syms: Vec<String> = ctx.names().iter().zip(ctx.weights()).map(|(n, w)| format!("{}:{}", n, w)).collect();
    format!("# order {}\n# symbols {}\n", ctx.order(), syms.join(" "))
}

pub fn to_text(s: &GradedSeries) -> String {
    let mut out = context_header(s.ctx());
    for (m, c) in s.terms() {
        let e: Vec<String> = m.exps().iter().map(|x| x.to_string()).collect();
        out.push_str(&format!("{}:{}/{}\n", e.join(","), c.numer(), c.denom()));
    }
    out
}

/// Parses records into `ctx`; header lines must match the context exactly.
pub fn from_text(ctx: &Arc<VarContext>, text: &str) -> Result<GradedSeries, SeriesError> {
    let want = context_header(ctx);
    let header: String = text.lines().filter(|l| l.starts_with('#')).map(|l| format!("{}\n", l)).collect();
    if header != want {
        return Err(SeriesError::Parse("context header does not match".into()));
    }
    let mut terms = Vec::new();
    for line in text.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty()) {
        let (exps, coeff) = line.split_once(':').ok_or_else(|| SeriesError::Parse(line.into()))?;
        let exps: Vec<i16> = exps
            .split(',')
            .map(|x| x.trim().parse::<i16>().map_err(|_| SeriesError::Parse(line.into())))
            .collect::<Result<_, _>>()?;
        if exps.len() != ctx.nvars() {
            return Err(SeriesError::Parse(format!("wrong exponent count in `{}`", line)));
        }
        let (n, d) = coeff.split_once('/').ok_or_else(|| SeriesError::Parse(line.into()))?;
        let n: BigInt = n.trim().parse().map_err(|_| SeriesError::Parse(line.into()))?;
        let d: BigInt = d.trim().parse().map_err(|_| SeriesError::Parse(line.into()))?;
        if d == BigInt::from(0) {
            return Err(SeriesError::Parse(format!("zero denominator in `{}`", line)));
        }
        terms.push((Mono::from_exps(exps), Q::new(n, d)));
    }
    Ok(GradedSeries::from_terms(ctx, terms))
}
