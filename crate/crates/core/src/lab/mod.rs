//! Witness searches for the density and transitivity constructions, plus
//! exhaustive checks of the two counterexample groups.

mod conjugacy;
mod examples;
mod kernels;


use std::fmt;

use serde::Serialize;

use crate::group::Element;

pub use conjugacy::{icc_invariant_split, separating_conjugator, IccSplit, Separation};
pub use examples::{ex_ab_exhaustive, ex_vc_checks, AbCensus};
pub use kernels::{lemd_kernel, tt_kernel};

/// One verified statement: what was expected and what was computed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub description: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl Check {
    pub fn new(description: impl Into<String>, expected: impl fmt::Display, actual: impl fmt::Display) -> Self {
        let expected = expected.to_string();
        let actual = actual.to_string();
        Check {
            description: description.into(),
            pass: expected == actual,
            expected,
            actual,
        }
    }

    /// A check whose pass/fail is decided by the caller.
    pub fn holds(description: impl Into<String>, expected: impl fmt::Display, actual: impl fmt::Display, pass: bool) -> Self {
        Check {
            description: description.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            pass,
        }
    }
}

/// A candidate the search discarded, with the first failing condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rejection {
    pub candidate: Element,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    /// A candidate passed every check.
    Accepted,
    /// The distance vector is inconsistent, so the target set is hit trivially.
    VacuouslyInD,
    /// No candidate up to this radius passed; a window statement only.
    NotFoundWithinRadius { radius: usize },
    /// An exhaustive verification ran to completion.
    Verified,
    Failed,
}

/// Audit trail of a kernel run; `overall` is the conjunction of `checks`.
#[derive(Debug, Clone, Serialize)]
pub struct ConstructionReport {
    pub kernel: &'static str,
    pub inputs: serde_json::Value,
    pub witness: Option<Element>,
    pub weight: Option<serde_json::Value>,
    pub checks: Vec<Check>,
    pub candidates_tried: usize,
    pub rejected: Vec<Rejection>,
    pub outcome: Outcome,
    pub overall: bool,
}

impl ConstructionReport {
    pub(crate) fn new(kernel: &'static str, inputs: serde_json::Value) -> Self {
        ConstructionReport {
            kernel,
            inputs,
            witness: None,
            weight: None,
            checks: Vec::new(),
            candidates_tried: 0,
            rejected: Vec::new(),
            outcome: Outcome::Failed,
            overall: false,
        }
    }

    pub(crate) fn finish(mut self, outcome: Outcome) -> Self {
        self.outcome = outcome;
        self.overall = self.checks.iter().all(|c| c.pass);
        self
    }

    /// Plain-text rendering: one line per check.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}: {:?}\n", self.kernel, self.outcome);
        if let Some(w) = &self.witness {
            out.push_str(&format!("witness: {w}\n"));
        }
        out.push_str(&format!(
            "candidates tried: {}, rejected: {}\n",
            self.candidates_tried,
            self.rejected.len()
        ));
        for c in &self.checks {
            out.push_str(&format!(
                "[{}] {} (expected {}, got {})\n",
                if c.pass { "ok" } else { "FAIL" },
                c.description,
                c.expected,
                c.actual
            ));
        }
        out.push_str(&format!("overall: {}\n", if self.overall { "pass" } else { "fail" }));
        out
    }
}
