use std::fmt;
use std::time::Instant;

use crate::series::GradedSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

/// Outcome of one identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub id: String,
    pub params: Vec<(String, String)>,
    pub status: Status,
    pub first_failure: Option<String>,
    pub note: Option<String>,
    pub millis: u64,
}

pub fn param<V: fmt::Display>(k: &str, v: V) -> (String, String) {
    (k.to_string(), v.to_string())
}

impl CheckReport {
    pub fn from_result(id: &str, params: Vec<(String, String)>, r: Result<(), String>, start: Instant) -> Self {
        let (status, first_failure) = match r {
            Ok(()) => (Status::Pass, None),
            Err(e) => (Status::Fail, Some(e)),
        };
        CheckReport {
            id: id.to_string(),
            params,
            status,
            first_failure,
            note: None,
            millis: start.elapsed().as_millis() as u64,
        }
    }

    /// Passes iff the two series are identical; otherwise records the first differing monomial.
    pub fn compare(id: &str, params: Vec<(String, String)>, lhs: &GradedSeries, rhs: &GradedSeries, start: Instant) -> Self {
        let r = match lhs.first_difference(rhs) {
            None => Ok(()),
            Some(d) => Err(d),
        };
        Self::from_result(id, params, r, start)
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Stable key for ordering merged report sets.
    pub fn sort_key(&self) -> (String, Vec<(String, String)>) {
        (self.id.clone(), self.params.clone())
    }

    pub fn param_string(&self) -> String {
        self.params.iter().map(|(k, v)| format!("{}={}", k, v)).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}] {}", self.id, self.param_string(), self.status)?;
        if let Some(x) = &self.first_failure {
            write!(f, " at {}", x)?;
        }
        Ok(())
    }
}

pub fn all_pass(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.passed())
}
