//! Check reports in machine-readable and human-readable form.

use std::fmt::Write as _;

use serde::Serialize;

use msk_core::verdict::{Outcome, Verdict};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ItemReport {
    pub label: String,
    pub verdict: &'static str,
    pub validity: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub items: Vec<ItemReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub op: String,
    /// `pass`, `fail` or `error`.
    pub verdict: &'static str,
    pub validity: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    /// Denominator loci of a generic verdict.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub locus: Vec<String>,
    /// Sample points of a sampled verdict.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub items: Vec<ItemReport>,
    pub millis: u64,
}

fn outcome_label(o: Outcome) -> &'static str {
    match o {
        Outcome::Pass => "pass",
        Outcome::Fail => "fail",
        Outcome::Skipped => "skipped",
    }
}

fn item(v: &Verdict) -> ItemReport {
    ItemReport {
        label: v.label.clone(),
        verdict: outcome_label(v.outcome),
        validity: v.validity.label(),
        residual: v.residual.as_ref().map(ToString::to_string),
        detail: v.detail.clone(),
        items: v.items.iter().map(item).collect(),
    }
}

impl CheckReport {
    pub fn new(name: String, op: &str, outcome: msk_core::Result<Verdict>, millis: u64) -> Self {
        match outcome {
            Ok(v) => CheckReport {
                name,
                op: op.to_string(),
                verdict: if v.passed() { "pass" } else { "fail" },
                validity: v.validity.label(),
                residual: v.residual.as_ref().map(ToString::to_string),
                locus: v.validity.locus().iter().map(ToString::to_string).collect(),
                points: v.validity.points().iter().map(ToString::to_string).collect(),
                detail: v.detail.clone(),
                error: None,
                items: v.items.iter().map(item).collect(),
                millis,
            },
            Err(e) => CheckReport {
                name,
                op: op.to_string(),
                verdict: "error",
                validity: "none",
                residual: None,
                locus: Vec::new(),
                points: Vec::new(),
                detail: None,
                error: Some(e.to_string()),
                items: Vec::new(),
                millis,
            },
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub scenario: String,
    pub seed: u64,
    pub checks: Vec<CheckReport>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckReport::passed)
    }

    /// 0 when every check passes, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.all_passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON with timing fields zeroed, for byte comparisons.
    pub fn to_json_untimed(&self) -> String {
        let mut r = self.clone();
        for c in &mut r.checks {
            c.millis = 0;
        }
        r.to_json()
    }

    pub fn to_human(&self) -> String {
        let mut out = format!("scenario {} (seed {})\n", self.scenario, self.seed);
        for c in &self.checks {
            let _ = write!(out, "{} {} [{}]", c.verdict.to_uppercase(), c.name, c.validity);
            if let Some(e) = &c.error {
                let _ = write!(out, " error: {e}");
            }
            if let Some(r) = &c.residual {
                let _ = write!(out, " residual: {r}");
            }
            if let Some(d) = &c.detail {
                let _ = write!(out, " ({d})");
            }
            let _ = writeln!(out, " {}ms", c.millis);
            if !c.locus.is_empty() {
                let _ = writeln!(out, "    off: {}", c.locus.join("; "));
            }
            if !c.passed() {
                for it in &c.items {
                    failing_items(&mut out, it, 1);
                }
            }
        }
        let failed = self.checks.iter().filter(|c| !c.passed()).count();
        let _ = writeln!(out, "{} checks, {} passed, {} not passed", self.checks.len(), self.checks.len() - failed, failed);
        out
    }
}

fn failing_items(out: &mut String, it: &ItemReport, depth: usize) {
    if it.verdict == "pass" || depth > 3 {
        return;
    }
    let _ = write!(out, "{}{} {}", "  ".repeat(depth), it.verdict.to_uppercase(), it.label);
    if let Some(r) = &it.residual {
        let _ = write!(out, " residual: {r}");
    }
    if let Some(d) = &it.detail {
        let _ = write!(out, " ({d})");
    }
    out.push('\n');
    for sub in &it.items {
        failing_items(out, sub, depth + 1);
    }
}
