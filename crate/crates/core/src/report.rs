//! Structured results for verification runs.
//!
//! A [`VerificationReport`] collects named check outcomes plus the parameters
//! the suite ran with. [`VerificationReport::render`] produces a line-oriented
//! document that is byte-identical across runs with the same inputs; wall
//! clock durations are kept only in memory for stderr diagnostics and never
//! serialized.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Duration;

/// Identifier of the rendered document layout, bumped on any change to the
/// line format so consumers can tell old archives from new ones.
pub const REPORT_SCHEMA: &str = "lieform-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skip,
}

impl CheckStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Skip => "skip",
        }
    }
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One named check with a short human-readable detail line.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
    /// Wall time, reported on stderr only so rendered documents stay
    /// reproducible.
    pub duration: Option<Duration>,
}

/// Aggregated outcome of one verification suite.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub suite: String,
    pub engine_version: String,
    pub parameters: BTreeMap<String, String>,
    pub checks: Vec<CheckOutcome>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, engine_version: impl Into<String>) -> Self {
        Self {
            suite: suite.into(),
            engine_version: engine_version.into(),
            parameters: BTreeMap::new(),
            checks: Vec::new(),
        }
    }

    pub fn set_param(&mut self, key: impl Into<String>, value: impl fmt::Display) {
        self.parameters.insert(key.into(), value.to_string());
    }

    pub fn record(
        &mut self,
        name: impl Into<String>,
        status: CheckStatus,
        detail: impl Into<String>,
    ) {
        self.checks.push(CheckOutcome {
            name: name.into(),
            status,
            detail: detail.into(),
            duration: None,
        });
    }

    pub fn record_timed(
        &mut self,
        name: impl Into<String>,
        status: CheckStatus,
        detail: impl Into<String>,
        duration: Duration,
    ) {
        self.checks.push(CheckOutcome {
            name: name.into(),
            status,
            detail: detail.into(),
            duration: Some(duration),
        });
    }

    /// Records a boolean check: `true` becomes pass, `false` becomes fail.
    pub fn record_bool(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.record(
            name,
            if ok { CheckStatus::Pass } else { CheckStatus::Fail },
            detail,
        );
    }

    pub fn passed(&self) -> usize {
        self.checks
            .iter()
            .filter(|c| c.status == CheckStatus::Pass)
            .count()
    }

    pub fn failed(&self) -> usize {
        self.checks
            .iter()
            .filter(|c| c.status == CheckStatus::Fail)
            .count()
    }

    pub fn skipped(&self) -> usize {
        self.checks
            .iter()
            .filter(|c| c.status == CheckStatus::Skip)
            .count()
    }

    /// True when no check failed. Skipped checks do not count against this.
    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }

    /// Process exit code convention: 0 all passed, 1 at least one failure.
    pub fn exit_code(&self) -> i32 {
        if self.all_passed() {
            0
        } else {
            1
        }
    }

    /// Puts the checks into the canonical order: sorted by name, stable for
    /// equal names. Suites record in execution order and call this once
    /// before rendering.
    pub fn sort_checks(&mut self) {
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
    }

    /// Appends another report's checks, keeping names and outcomes. The
    /// absorbed parameters are dropped; the host report already carries the
    /// run configuration.
    pub fn absorb_checks(&mut self, sub: VerificationReport) {
        self.checks.extend(sub.checks);
    }

    /// Renders the reproducible report document.
    ///
    /// Lines are emitted in a fixed order and all free-form text is folded
    /// onto one line, so equal inputs produce byte-equal documents.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("schema: {REPORT_SCHEMA}\n"));
        out.push_str(&format!("suite: {}\n", one_line(&self.suite)));
        out.push_str(&format!("engine: {}\n", one_line(&self.engine_version)));
        for (k, v) in &self.parameters {
            out.push_str(&format!("param {}: {}\n", one_line(k), one_line(v)));
        }
        for c in &self.checks {
            if c.detail.is_empty() {
                out.push_str(&format!("check [{}] {}\n", c.status, one_line(&c.name)));
            } else {
                out.push_str(&format!(
                    "check [{}] {}: {}\n",
                    c.status,
                    one_line(&c.name),
                    one_line(&c.detail)
                ));
            }
        }
        out.push_str(&format!(
            "summary: {} passed, {} failed, {} skipped\n",
            self.passed(),
            self.failed(),
            self.skipped()
        ));
        out
    }
}

fn one_line(s: &str) -> String {
    if s.contains('\n') {
        s.replace('\n', "; ")
    } else {
        s.to_string()
    }
}
