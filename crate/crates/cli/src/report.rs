// SPDX-License-Identifier: Apache-2.0

//! The machine-readable report.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Flag,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Flag => "flag",
            Status::Fail => "fail",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub family: u8,
    pub check: String,
    pub samples: usize,
    /// `null` in JSON when the check could not be evaluated.
    pub max_residual: f64,
    pub status: Status,
    pub notes: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub checks: Vec<CheckRecord>,
    pub seed: u64,
    pub tolerance: f64,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }

    pub fn has_failure(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    /// `0` when nothing failed, `1` otherwise.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.has_failure())
    }

    /// Plain-text table, one line per check.
    pub fn table(&self) -> String {
        let mut out = format!("seed {}  tolerance {:e}\n", self.seed, self.tolerance);
        out.push_str("family  check         samples  max_residual  status  notes\n");
        for c in &self.checks {
            out.push_str(&format!(
                "{:>6}  {:<12}  {:>7}  {:>12.3e}  {:<6}  {}\n",
                c.family, c.check, c.samples, c.max_residual, c.status, c.notes
            ));
        }
        let count = |s: Status| self.checks.iter().filter(|c| c.status == s).count();
        out.push_str(&format!(
            "{} pass, {} flag, {} fail\n",
            count(Status::Pass),
            count(Status::Flag),
            count(Status::Fail)
        ));
        out
    }
}
