//! Suite results and their JSON and Markdown renderings.

use std::fmt::Write as _;
use std::time::Duration;

use constraint_forge_core::{Finding, Status};
use serde::{Serialize, Serializer};

fn status_str<S: Serializer>(s: &Status, ser: S) -> Result<S::Ok, S::Error> {
    ser.serialize_str(s.as_str())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    #[serde(serialize_with = "status_str")]
    pub status: Status,
    pub residual: Option<String>,
    pub elapsed_ms: f64,
    pub citation: String,
}

impl CheckReport {
    pub fn from_finding(f: Finding, elapsed: Duration) -> Self {
        Self {
            name: f.name,
            status: f.status,
            residual: f.residual,
            elapsed_ms: (elapsed.as_secs_f64() * 1e6).round() / 1e3,
            citation: f.citation,
        }
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

/// Exit code for a finished suite: 0 iff nothing failed.
pub fn exit_code(reports: &[CheckReport]) -> i32 {
    if reports.iter().any(CheckReport::failed) {
        1
    } else {
        0
    }
}

pub fn to_json(reports: &[CheckReport]) -> String {
    serde_json::to_string_pretty(reports).expect("reports serialize")
}

fn cell(s: &str) -> String {
    s.replace('|', "\\|").replace('\n', " ")
}

/// Markdown table, with the sign conventions in the header.
pub fn to_markdown(reports: &[CheckReport], seed: u64) -> String {
    let mut out = String::new();
    let passed = reports.iter().filter(|r| r.status == Status::Pass).count();
    let failed = reports.iter().filter(|r| r.failed()).count();
    let _ = writeln!(out, "# constraint-forge report\n");
    let _ = writeln!(out, "Conventions: eps^{{12}} = +1, omega_ab = -eps_ab (inverse of omega^ab). Seed: {seed}.\n");
    let _ = writeln!(out, "{passed} passed, {failed} failed, {} info.\n", reports.len() - passed - failed);
    let _ = writeln!(out, "| name | status | residual | elapsed_ms | citation |");
    let _ = writeln!(out, "|---|---|---|---|---|");
    for r in reports {
        let _ = writeln!(
            out,
            "| {} | {} | {} | {:.3} | {} |",
            cell(&r.name),
            r.status,
            cell(r.residual.as_deref().unwrap_or("")),
            r.elapsed_ms,
            cell(&r.citation)
        );
    }
    out
}
