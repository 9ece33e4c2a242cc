//! Check results and reports shared by the verifiers and the CLI.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub details: String,
    pub witnesses: Vec<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>, details: impl Into<String>) -> Check {
        Check { name: name.into(), status: Status::Pass, details: details.into(), witnesses: Vec::new() }
    }

    /// A failing check always carries a witness; an empty list gets the details as one.
    pub fn fail(name: impl Into<String>, details: impl Into<String>, witnesses: Vec<String>) -> Check {
        let details = details.into();
        let witnesses = if witnesses.is_empty() { vec![details.clone()] } else { witnesses };
        Check { name: name.into(), status: Status::Fail, details, witnesses }
    }

    pub fn skip(name: impl Into<String>, reason: impl Into<String>) -> Check {
        Check { name: name.into(), status: Status::Skip, details: reason.into(), witnesses: Vec::new() }
    }

    /// PASS when `witness` is `None`, otherwise FAIL with it.
    pub fn from_witness(name: impl Into<String>, details: impl Into<String>, witness: Option<String>) -> Check {
        match witness {
            None => Check::pass(name, details),
            Some(w) => Check::fail(name, details, vec![w]),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Prefixes the check name, for grouping sub-checks.
    pub fn prefixed(mut self, prefix: &str) -> Check {
        self.name = format!("{prefix}.{}", self.name);
        self
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<4} {}", self.status, self.name)?;
        if !self.details.is_empty() {
            write!(f, ": {}", self.details)?;
        }
        for w in &self.witnesses {
            write!(f, "\n       witness: {w}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    pub params: BTreeMap<String, serde_json::Value>,
    pub checks: Vec<Check>,
    /// Computed values backing the checks (tables, kernel dimensions).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Report {
        Report { command: command.into(), params: BTreeMap::new(), checks: Vec::new(), data: None, elapsed_ms: 0 }
    }

    pub fn param(&mut self, key: &str, value: impl Into<serde_json::Value>) {
        self.params.insert(key.to_string(), value.into());
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        self.checks.extend(checks);
    }

    pub fn any_failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    pub fn any_skipped(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Skip)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.command)?;
        for (k, v) in &self.params {
            write!(f, " {k}={v}")?;
        }
        writeln!(f)?;
        for c in &self.checks {
            writeln!(f, "  {c}")?;
        }
        let passed = self.checks.iter().filter(|c| c.passed()).count();
        write!(f, "{passed}/{} checks passed ({} ms)", self.checks.len(), self.elapsed_ms)
    }
}
