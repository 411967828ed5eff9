//! Scenarios: a flat `key = value` file, overridden by command-line flags, validated once.

use std::fmt;
use std::path::PathBuf;

use loopyang_core::cartan::{Algebra, CartanDatum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default hard cap on the truncation order.
pub const ORDER_CAP: u32 = 10;

#[derive(Debug, Error, PartialEq)]
pub enum ScenarioError {
    #[error("field `{field}`: {reason}")]
    Field { field: String, reason: String },
    #[error("line {0}: expected `key = value`")]
    Syntax(usize),
}

fn bad(field: &str, reason: impl Into<String>) -> ScenarioError {
    ScenarioError::Field { field: field.to_string(), reason: reason.into() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Semisimple,
    Gln,
    Drinfeld,
    Gauge,
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Semisimple => "semisimple",
            Suite::Gln => "gln",
            Suite::Drinfeld => "drinfeld",
            Suite::Gauge => "gauge",
        })
    }
}

/// A fully resolved run description; every report embeds it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub suite: Suite,
    /// Built-in type (`A1`, `B2`, `gl_n(2)`, ...) or the name given to a Cartan file.
    pub algebra: String,
    pub cartan_file: Option<PathBuf>,
    pub order: u32,
    /// k ∈ [−K, K] for condition (B); `None` means the N+1 values of `b_window`.
    pub k_window: Option<i64>,
    /// |r| bound for generator modes (λ suite, Drinfeld diagram, intertwining).
    pub r_window: i64,
    /// Largest m for Drinfeld evaluations; mode bound for gl_n relations.
    pub modes: usize,
    /// (n, d) pairs for the gl_n suite.
    pub grid: Vec<(usize, usize)>,
    /// Basis degree bound for gl_n module checks.
    pub deg: usize,
    pub seeds: u64,
    /// Perturbs g⁺_1 by ℏv before checking (mutation fixture).
    pub mutate: bool,
    pub cache_dir: Option<PathBuf>,
    pub jobs: usize,
    pub cap: u32,
}

impl Scenario {
    pub fn new(suite: Suite) -> Self {
        let (algebra, order) = match suite {
            Suite::Gln => ("gl_n(2)", 6),
            Suite::Gauge => ("A1", 5),
            _ => ("A1", 6),
        };
        Scenario {
            suite,
            algebra: algebra.into(),
            cartan_file: None,
            order,
            k_window: None,
            r_window: 2,
            modes: 3,
            grid: Vec::new(),
            deg: 3,
            seeds: 20,
            mutate: false,
            cache_dir: None,
            jobs: 0,
            cap: ORDER_CAP,
        }
    }

    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ScenarioError> {
        let (key, v) = (key.trim(), value.trim());
        fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, ScenarioError> {
            v.parse().map_err(|_| bad(key, format!("`{}` is not a number", v)))
        }
        match key {
            "type" | "algebra" => self.algebra = v.to_string(),
            "cartan" => self.cartan_file = Some(PathBuf::from(v)),
            "order" | "N" => self.order = num(key, v)?,
            "k_window" => self.k_window = Some(num(key, v)?),
            "r_window" => self.r_window = num(key, v)?,
            "modes" => self.modes = num(key, v)?,
            "n" => {
                let n: usize = num(key, v)?;
                self.algebra = format!("gl_n({})", n);
            }
            "d" => {
                let d: usize = num(key, v)?;
                let n = self.gl_rank().ok_or_else(|| bad("d", "needs a gl_n algebra"))?;
                self.grid = vec![(n, d)];
            }
            "grid" => self.grid = parse_grid(v)?,
            "deg" => self.deg = num(key, v)?,
            "seeds" => self.seeds = num(key, v)?,
            "mutate" => self.mutate = parse_bool(key, v)?,
            "cache" => self.cache_dir = if v.is_empty() { None } else { Some(PathBuf::from(v)) },
            "jobs" => self.jobs = num(key, v)?,
            "cap" => self.cap = num(key, v)?,
            other => return Err(bad(other, "unknown key")),
        }
        Ok(())
    }

    /// Reads a flat config: `key = value` per line, `#` comments.
    pub fn apply_text(&mut self, text: &str) -> Result<(), ScenarioError> {
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or(ScenarioError::Syntax(no + 1))?;
            self.set(k, v)?;
        }
        Ok(())
    }

    pub fn gl_rank(&self) -> Option<usize> {
        match Algebra::load(&self.algebra) {
            Ok(Algebra::Gln(g)) => Some(g.n),
            _ => None,
        }
    }

    /// The semisimple Cartan datum (file takes precedence over the type name).
    pub fn cartan(&self) -> Result<CartanDatum, ScenarioError> {
        if let Some(path) = &self.cartan_file {
            let text = std::fs::read_to_string(path).map_err(|e| bad("cartan", format!("{}: {}", path.display(), e)))?;
            return CartanDatum::from_text(&self.algebra, &text).map_err(|e| bad("cartan", e.to_string()));
        }
        match Algebra::load(&self.algebra) {
            Ok(Algebra::Semisimple(c)) => Ok(c),
            Ok(Algebra::Gln(_)) => Err(bad("type", "a semisimple type is required for this suite")),
            Err(e) => Err(bad("type", e.to_string())),
        }
    }

    /// Checks every field; fills the default gl_n grid.
    pub fn validate(mut self) -> Result<Self, ScenarioError> {
        if self.order == 0 {
            return Err(bad("order", "must be positive"));
        }
        if self.order > self.cap {
            return Err(bad("order", format!("{} exceeds the cap {} (raise `cap` to allow it)", self.order, self.cap)));
        }
        if let Some(k) = self.k_window {
            if k <= 0 {
                return Err(bad("k_window", "must be positive"));
            }
        }
        if self.r_window <= 0 {
            return Err(bad("r_window", "must be positive"));
        }
        if self.modes == 0 {
            return Err(bad("modes", "must be positive"));
        }
        if self.deg == 0 {
            return Err(bad("deg", "must be positive"));
        }
        match self.suite {
            Suite::Gln => {
                let n = self.gl_rank().ok_or_else(|| bad("type", format!("`{}` is not gl_n(n)", self.algebra)))?;
                if n < 2 {
                    return Err(bad("n", "must be at least 2"));
                }
                if self.grid.is_empty() {
                    self.grid = (1..=3).map(|d| (n, d)).collect();
                }
                if let Some(&(m, d)) = self.grid.iter().find(|&&(m, d)| m < 2 || d == 0) {
                    return Err(bad("grid", format!("({}, {}) needs n >= 2 and d >= 1", m, d)));
                }
            }
            Suite::Drinfeld => {
                let c = self.cartan()?;
                if c.rank() != 1 || c.d(0) != 1 {
                    return Err(bad("type", "Drinfeld evaluation is implemented for rank one with d = 1"));
                }
            }
            Suite::Semisimple | Suite::Gauge => {
                self.cartan()?;
            }
        }
        if self.suite == Suite::Gauge && self.seeds == 0 {
            return Err(bad("seeds", "must be positive"));
        }
        Ok(self)
    }

    /// The k values for condition (B).
    pub fn ks(&self) -> Vec<i64> {
        match self.k_window {
            Some(k) => (-k..=k).collect(),
            None => loopyang_core::checker::b_window(self.order),
        }
    }
}

fn parse_bool(key: &str, v: &str) -> Result<bool, ScenarioError> {
    match v {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(bad(key, format!("`{}` is not a boolean", v))),
    }
}

/// `2x1, 2x2, 3x2`
fn parse_grid(v: &str) -> Result<Vec<(usize, usize)>, ScenarioError> {
    v.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            let (a, b) = s.trim().split_once('x').ok_or_else(|| bad("grid", format!("`{}` is not NxD", s.trim())))?;
            let a = a.trim().parse().map_err(|_| bad("grid", format!("bad n in `{}`", s.trim())))?;
            let b = b.trim().parse().map_err(|_| bad("grid", format!("bad d in `{}`", s.trim())))?;
            Ok((a, b))
        })
        .collect()
}

/// Parses the `--set key=value` form.
pub fn split_override(s: &str) -> Result<(String, String), ScenarioError> {
    let (k, v) = s.split_once('=').ok_or(ScenarioError::Syntax(0))?;
    Ok((k.trim().to_string(), v.trim().to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_text_and_errors() {
        let mut s = Scenario::new(Suite::Semisimple);
        s.apply_text("# sl2\ntype = A2\norder = 5\nk_window = 2\n").unwrap();
        assert_eq!((s.algebra.as_str(), s.order, s.ks()), ("A2", 5, vec![-2, -1, 0, 1, 2]));
        let e = Scenario::new(Suite::Semisimple).apply_text("order = many").unwrap_err();
        assert!(matches!(e, ScenarioError::Field { ref field, .. } if field == "order"));
        assert_eq!(Scenario::new(Suite::Gln).apply_text("n 3"), Err(ScenarioError::Syntax(1)));
        let mut s = Scenario::new(Suite::Semisimple);
        s.order = 11;
        assert!(matches!(s.validate(), Err(ScenarioError::Field { field, .. }) if field == "order"));
    }

    #[test]
    fn gln_grid_defaults_and_overrides() {
        let mut s = Scenario::new(Suite::Gln);
        s.set("n", "3").unwrap();
        let v = s.clone().validate().unwrap();
        assert_eq!(v.grid, vec![(3, 1), (3, 2), (3, 3)]);
        s.set("d", "2").unwrap();
        assert_eq!(s.validate().unwrap().grid, vec![(3, 2)]);
        let mut s = Scenario::new(Suite::Gln);
        s.set("grid", "2x1, 2x2,3x2").unwrap();
        assert_eq!(s.grid, vec![(2, 1), (2, 2), (3, 2)]);
        let mut s = Scenario::new(Suite::Gln);
        s.set("type", "B2").unwrap();
        assert!(s.validate().is_err());
    }

    #[test]
    fn drinfeld_needs_rank_one() {
        let mut s = Scenario::new(Suite::Drinfeld);
        s.set("type", "A2").unwrap();
        assert!(matches!(s.validate(), Err(ScenarioError::Field { field, .. }) if field == "type"));
    }
}
