//! JSON and text renderings of a report set.

use std::collections::BTreeMap;

use loopyang_core::report::{CheckReport, Status};
use serde::{Deserialize, Serialize};

use crate::scenario::Scenario;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub id: String,
    pub params: BTreeMap<String, String>,
    pub status: String,
    pub first_failure: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub scenario: Option<Scenario>,
    pub summary: Summary,
    pub reports: Vec<Record>,
}

impl Record {
    /// `stable` drops the wall-clock field so reruns are byte-identical.
    pub fn from_report(r: &CheckReport, stable: bool) -> Self {
        Record {
            id: r.id.clone(),
            params: r.params.iter().cloned().collect(),
            status: r.status.to_string(),
            first_failure: r.first_failure.clone(),
            note: r.note.clone(),
            millis: if stable { None } else { Some(r.millis) },
        }
    }
}

pub fn document(scenario: Option<&Scenario>, reports: &[CheckReport], stable: bool) -> Document {
    let passed = reports.iter().filter(|r| r.status == Status::Pass).count();
    Document {
        scenario: scenario.cloned(),
        summary: Summary { total: reports.len(), passed, failed: reports.len() - passed },
        reports: reports.iter().map(|r| Record::from_report(r, stable)).collect(),
    }
}

pub fn emit(scenario: Option<&Scenario>, reports: &[CheckReport], format: Format, stable: bool) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&document(scenario, reports, stable)).expect("plain data");
            s.push('\n');
            s
        }
        Format::Text => text(scenario, reports, stable),
    }
}

fn text(scenario: Option<&Scenario>, reports: &[CheckReport], stable: bool) -> String {
    let rows: Vec<[String; 4]> = reports
        .iter()
        .map(|r| {
            [
                r.status.to_string(),
                r.id.clone(),
                r.param_string(),
                if stable { String::new() } else { format!("{}ms", r.millis) },
            ]
        })
        .collect();
    let mut w = [6, 2, 6, 0];
    for row in &rows {
        for (k, c) in row.iter().enumerate() {
            w[k] = w[k].max(c.chars().count());
        }
    }
    let pad = |s: &str, n: usize| format!("{}{}", s, " ".repeat(n.saturating_sub(s.chars().count())));
    let mut out = String::new();
    if let Some(s) = scenario {
        out.push_str(&format!("# {}\n", serde_json::to_string(s).expect("plain data")));
    }
    let header = format!("{}  {}  {}  time", pad("status", w[0]), pad("id", w[1]), pad("params", w[2]));
    out.push_str(&header);
    out.push('\n');
    for (row, r) in rows.iter().zip(reports) {
        let line = format!("{}  {}  {}  {}", pad(&row[0], w[0]), pad(&row[1], w[1]), pad(&row[2], w[2]), row[3]);
        out.push_str(line.trim_end());
        out.push('\n');
        if let Some(f) = &r.first_failure {
            out.push_str(&format!("    first failure: {}\n", f));
        }
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    out.push_str(&format!("{} checks, {} passed, {} failed\n", reports.len(), reports.len() - failed, failed));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use loopyang_core::report::param;
    use std::time::Instant;

    fn rec(ok: bool) -> CheckReport {
        let r = if ok { Ok(()) } else { Err("hbar^2*v: 1 vs 0".to_string()) };
        CheckReport::from_result("cond.B", vec![param("i", 1), param("k", -2)], r, Instant::now())
    }

    #[test]
    fn empty_document_is_valid() {
        let s = emit(None, &[], Format::Json, true);
        let d: Document = serde_json::from_str(&s).unwrap();
        assert_eq!(d.summary, Summary { total: 0, passed: 0, failed: 0 });
        assert!(d.reports.is_empty());
        assert!(emit(None, &[], Format::Text, true).ends_with("0 checks, 0 passed, 0 failed\n"));
    }

    #[test]
    fn pass_record_round_trips() {
        let r = rec(true);
        let d: Document = serde_json::from_str(&emit(None, &[r.clone()], Format::Json, false)).unwrap();
        assert_eq!(d.reports, vec![Record::from_report(&r, false)]);
        assert_eq!(d.reports[0].params["k"], "-2");
    }

    #[test]
    fn failing_record_keeps_monomial() {
        let s = emit(None, &[rec(false)], Format::Json, true);
        assert!(s.contains("\"first_failure\": \"hbar^2*v: 1 vs 0\""));
        assert!(!s.contains("millis"));
        let t = emit(None, &[rec(false), rec(true)], Format::Text, true);
        assert!(t.contains("first failure: hbar^2*v"));
        assert!(t.ends_with("2 checks, 1 passed, 1 failed\n"));
    }
}
