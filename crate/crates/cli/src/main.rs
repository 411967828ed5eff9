use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use loopyang::cache::SeriesCache;
use loopyang::scenario::split_override;
use loopyang::{emit, run_suite, Format, Scenario, Suite};

#[derive(Parser)]
#[command(name = "loopyang", version, about = "Exact checks for the loop-algebra to Yangian homomorphism")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a verification suite.
    Verify {
        #[command(subcommand)]
        what: VerifyCmd,
    },
    /// Gauge transformations.
    Gauge {
        #[command(subcommand)]
        what: GaugeCmd,
    },
    /// Series cache maintenance.
    Cache {
        #[command(subcommand)]
        what: CacheCmd,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Conditions, λ suite, adapted generators, degeneration and gauge axioms.
    Semisimple(Common),
    /// gl_n relations, central and Todd series, conditions and intertwining.
    Gln(Common),
    /// Drinfeld polynomial evaluations (rank one).
    Drinfeld(Common),
}

#[derive(Subcommand)]
enum GaugeCmd {
    /// gauge_solve on ξ-gauges of random units, compared up to scalar.
    Roundtrip(Common),
}

#[derive(Subcommand)]
enum CacheCmd {
    /// Delete every cached series.
    Purge {
        #[arg(long, default_value = ".loopyang-cache")]
        cache: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Fmt {
    Json,
    Text,
}

#[derive(Args)]
struct Common {
    /// Flat `key = value` scenario file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Extra `key=value` settings, applied last.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    #[arg(long = "type")]
    ty: Option<String>,
    #[arg(long, value_name = "FILE")]
    cartan: Option<PathBuf>,
    #[arg(long, value_name = "N")]
    order: Option<u32>,
    #[arg(long, value_name = "K")]
    k_window: Option<i64>,
    #[arg(long, value_name = "R")]
    r_window: Option<i64>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long, value_name = "M")]
    modes: Option<usize>,
    #[arg(long)]
    deg: Option<usize>,
    #[arg(long)]
    seeds: Option<u64>,
    #[arg(long, value_name = "DIR")]
    cache: Option<PathBuf>,
    /// Perturb g⁺_1 before checking.
    #[arg(long)]
    mutate: bool,
    /// Allow truncation orders above the default cap.
    #[arg(long, value_name = "N")]
    cap: Option<u32>,
    #[arg(long, value_enum, default_value = "text")]
    format: Fmt,
    #[arg(long, value_name = "P", default_value_t = 0)]
    jobs: usize,
    /// Omit wall-clock times so reruns are byte-identical.
    #[arg(long)]
    stable: bool,
}

impl Common {
    fn scenario(&self, suite: Suite) -> Result<Scenario> {
        let mut s = Scenario::new(suite);
        if let Some(p) = &self.config {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            s.apply_text(&text)?;
        }
        let mut kv: Vec<(String, String)> = Vec::new();
        let mut put = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                kv.push((k.to_string(), v));
            }
        };
        put("type", self.ty.clone());
        put("cartan", self.cartan.as_ref().map(|p| p.display().to_string()));
        put("order", self.order.map(|x| x.to_string()));
        put("k_window", self.k_window.map(|x| x.to_string()));
        put("r_window", self.r_window.map(|x| x.to_string()));
        put("n", self.n.map(|x| x.to_string()));
        put("d", self.d.map(|x| x.to_string()));
        put("modes", self.modes.map(|x| x.to_string()));
        put("deg", self.deg.map(|x| x.to_string()));
        put("seeds", self.seeds.map(|x| x.to_string()));
        put("cache", self.cache.as_ref().map(|p| p.display().to_string()));
        put("cap", self.cap.map(|x| x.to_string()));
        if self.mutate {
            put("mutate", Some("true".into()));
        }
        for (k, v) in kv {
            s.set(&k, &v)?;
        }
        for o in &self.set {
            let (k, v) = split_override(o)?;
            s.set(&k, &v)?;
        }
        if self.jobs > 0 {
            s.jobs = self.jobs;
        }
        Ok(s.validate()?)
    }

    fn run(&self, suite: Suite) -> Result<bool> {
        let s = self.scenario(suite)?;
        let reps = run_suite(&s)?;
        let fmt = match self.format {
            Fmt::Json => Format::Json,
            Fmt::Text => Format::Text,
        };
        print!("{}", emit(Some(&s), &reps, fmt, self.stable));
        Ok(reps.iter().all(|r| r.passed()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.cmd {
        Cmd::Verify { what } => match what {
            VerifyCmd::Semisimple(c) => c.run(Suite::Semisimple),
            VerifyCmd::Gln(c) => c.run(Suite::Gln),
            VerifyCmd::Drinfeld(c) => c.run(Suite::Drinfeld),
        },
        Cmd::Gauge { what: GaugeCmd::Roundtrip(c) } => c.run(Suite::Gauge),
        Cmd::Cache { what: CacheCmd::Purge { cache } } => SeriesCache::new(cache).purge().map(|k| {
            println!("removed {} cached entries from {}", k, cache.display());
            true
        }).map_err(Into::into),
    };
    match res {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(2)
        }
    }
}
