//! Check specifications and reports.

use crate::error::{Error, Result};
use serde::Serialize;
use std::path::PathBuf;

/// Every registered check, in report order.
pub const CHECKS: [&str; 10] = [
    "fourier-involution",
    "parseval",
    "action-laws",
    "mu-equivariance",
    "mu-chain",
    "unitality",
    "associativity-symmetry",
    "intertwiner-trace",
    "intertwiner-unit",
    "oracle-integration",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Exact,
    OracleCompare,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckParams {
    pub q: u32,
    pub levels: i32,
    pub trials: usize,
    pub seed: u64,
    pub budget: i32,
}

impl Default for CheckParams {
    fn default() -> Self {
        Self {
            q: 3,
            levels: 2,
            trials: 100,
            seed: 42,
            budget: 6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckSpec {
    pub name: String,
    pub params: CheckParams,
    pub golden_dir: Option<PathBuf>,
}

impl CheckSpec {
    pub fn new(name: &str, params: CheckParams) -> Result<Self> {
        if !CHECKS.contains(&name) {
            return Err(Error::UnknownCheck(name.to_string()));
        }
        if params.levels < 1 || params.budget < 1 {
            return Err(Error::Config("levels and budget must be positive".into()));
        }
        Ok(Self {
            name: name.to_string(),
            params,
            golden_dir: None,
        })
    }

    pub fn with_golden_dir(mut self, dir: PathBuf) -> Self {
        self.golden_dir = Some(dir);
        self
    }

    pub fn mode(&self) -> Mode {
        match self.name.as_str() {
            "mu-chain"
            | "intertwiner-trace"
            | "unitality"
            | "associativity-symmetry"
            | "action-laws"
            | "mu-equivariance" => Mode::Exact,
            _ => Mode::OracleCompare,
        }
    }
}

/// One failed comparison with a reproducer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub input: String,
    pub lhs: String,
    pub rhs: String,
    pub first_diff: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub mode: Mode,
    pub params: CheckParams,
    pub trials: usize,
    pub failures: Vec<Failure>,
    pub elapsed_ms: u128,
    pub status: Status,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Summary line plus one block per failure.
    pub fn to_text(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let mut s = format!(
            "{status} {} trials={} failures={} elapsed_ms={}\n",
            self.check,
            self.trials,
            self.failures.len(),
            self.elapsed_ms
        );
        for f in &self.failures {
            s.push_str(&format!("  input:\n{}", indent(&f.input)));
            s.push_str(&format!(
                "  lhs:\n{}  rhs:\n{}",
                indent(&f.lhs),
                indent(&f.rhs)
            ));
            if let Some(d) = &f.first_diff {
                s.push_str(&format!("  first diff: {d}\n"));
            }
        }
        s
    }
}

fn indent(s: &str) -> String {
    s.lines().map(|l| format!("    {l}\n")).collect()
}
