//! Verification reports shared by every module and the CLI.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

pub const REPORT_VERSION: &str = "report_v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub witness: Option<Vec<String>>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status: Status::Pass,
            witness: None,
        }
    }

    pub fn fail(name: impl Into<String>, witness: Vec<String>) -> Self {
        Self {
            name: name.into(),
            status: Status::Fail,
            witness: Some(witness),
        }
    }

    /// Pass when `witness` is None.
    pub fn from_witness(name: impl Into<String>, witness: Option<Vec<String>>) -> Self {
        match witness {
            None => Self::pass(name),
            Some(w) => Self::fail(name, w),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub case: String,
    pub algebra: String,
    pub window: Option<[i64; 2]>,
    pub safe_window: Option<[i64; 2]>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(case: impl Into<String>, algebra: impl Into<String>) -> Self {
        Self {
            version: REPORT_VERSION.into(),
            case: case.into(),
            algebra: algebra.into(),
            window: None,
            safe_window: None,
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn note(&mut self, n: impl Into<String>) {
        self.notes.push(n.into());
    }

    /// Appends the checks and notes of `other`, prefixing check names.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}{}", c.name);
            self.checks.push(c);
        }
        self.notes.extend(other.notes);
        if self.window.is_none() {
            self.window = other.window;
            self.safe_window = other.safe_window;
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed()).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "case {} on {}", self.case, self.algebra);
        if let Some([lo, hi]) = self.window {
            let _ = write!(s, "window x^{lo}..x^{hi}");
            if let Some([a, b]) = self.safe_window {
                let _ = write!(s, ", safe x^{a}..x^{b}");
            }
            s.push('\n');
        }
        for c in &self.checks {
            let tag = if c.passed() { "PASS" } else { "FAIL" };
            let _ = writeln!(s, "  [{tag}] {}", c.name);
            if let Some(w) = &c.witness {
                for line in w {
                    let _ = writeln!(s, "         {line}");
                }
            }
        }
        for n in &self.notes {
            let _ = writeln!(s, "  note: {n}");
        }
        let _ = writeln!(
            s,
            "{} of {} checks passed",
            self.checks.iter().filter(|c| c.passed()).count(),
            self.checks.len()
        );
        s
    }
}
