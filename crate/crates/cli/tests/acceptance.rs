//! One pass/fail line per acceptance criterion; exits nonzero if any criterion fails.

use std::process::ExitCode;

use loopyang::acceptance::{run, CRITERIA};

fn main() -> ExitCode {
    let only: Vec<u8> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut all = true;
    for c in CRITERIA.iter().filter(|c| only.is_empty() || only.contains(&c.number)) {
        let line = match run(c.number) {
            Ok(o) => {
                let ok = o.passed(c);
                all &= ok;
                let budget = c.budget.map(|b| format!(", budget {}s", b.as_secs())).unwrap_or_default();
                let mut s = format!(
                    "criterion {:>2}: {}  {} ({} checks, {} failing, {:.1}s{})",
                    c.number,
                    if ok { "PASS" } else { "FAIL" },
                    c.title,
                    o.reports.len(),
                    o.failures(),
                    o.elapsed.as_secs_f64(),
                    budget
                );
                if let Some(r) = o.reports.iter().find(|r| !r.passed()) {
                    s.push_str(&format!("\n    first failing check: {}", r));
                }
                s
            }
            Err(e) => {
                all = false;
                format!("criterion {:>2}: FAIL  {} (error: {:#})", c.number, c.title, e)
            }
        };
        println!("{}", line);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
