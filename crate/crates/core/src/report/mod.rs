//! Verification reports: named checks with a verdict and a witness, grouped
//! into suites. Ordering is fixed by construction, never by completion
//! order, so the JSON form is byte-stable.

mod suites;

pub use suites::{
    ad_chain_and_induction, cube_root_branch, determinants, lie_axioms, module_families,
    q_half_checks, q_minus_one_cases, quasifinite_round_trip, scaling_embeddings,
    virasoro_subalgebra, winf_graded, Criterion,
};

use std::fmt;

use serde::Serialize;

use crate::constraints::Check;
use crate::par::Exec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    /// Recorded for reference; does not enter the verdict.
    Note,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Note => "NOTE",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub anchor: String,
    pub verdict: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub assembled: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
}

impl CheckResult {
    pub fn new(
        id: impl Into<String>,
        anchor: impl Into<String>,
        pass: bool,
        witness: impl Into<String>,
    ) -> Self {
        CheckResult {
            id: id.into(),
            anchor: anchor.into(),
            verdict: if pass { Outcome::Pass } else { Outcome::Fail },
            witness: Some(witness.into()).filter(|w: &String| !w.is_empty()),
            assembled: None,
            expected: None,
        }
    }

    /// Wraps a constraint check; `note` marks it as outside the verdict.
    pub fn from_check(id: impl Into<String>, c: &Check, note: bool) -> Self {
        CheckResult {
            id: id.into(),
            anchor: c.label.clone(),
            verdict: match (note, c.pass) {
                (true, _) => Outcome::Note,
                (false, true) => Outcome::Pass,
                (false, false) => Outcome::Fail,
            },
            witness: c.witness.clone(),
            assembled: Some(c.assembled.clone()),
            expected: Some(c.expected.clone()),
        }
    }

    pub fn failed(&self) -> bool {
        self.verdict == Outcome::Fail
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Algebra,
    Weights,
    IntSeries,
    Constraints,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 5] = ["algebra", "weights", "intseries", "constraints", "all"];

    pub fn parse(s: &str) -> Option<Suite> {
        Some(match s {
            "algebra" => Suite::Algebra,
            "weights" => Suite::Weights,
            "intseries" => Suite::IntSeries,
            "constraints" => Suite::Constraints,
            "all" => Suite::All,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Weights => "weights",
            Suite::IntSeries => "intseries",
            Suite::Constraints => "constraints",
            Suite::All => "all",
        }
    }

    /// Criteria that make up the suite, in report order.
    pub fn criteria(self) -> Vec<Criterion> {
        use Criterion::*;
        match self {
            Suite::Algebra => vec![LieAxioms, Virasoro, Scaling, AdChain, WInfinity],
            Suite::Weights => vec![Quasifinite],
            Suite::IntSeries => vec![ModuleFamilies],
            Suite::Constraints => vec![Determinants, CubeRoot, QHalf, QMinusOne],
            Suite::All => [
                Suite::Algebra,
                Suite::Weights,
                Suite::IntSeries,
                Suite::Constraints,
            ]
            .into_iter()
            .flat_map(Suite::criteria)
            .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn new(suite: impl Into<String>, checks: Vec<CheckResult>) -> Self {
        Report {
            suite: suite.into(),
            checks,
        }
    }

    pub fn pass(&self) -> bool {
        !self.checks.iter().any(CheckResult::failed)
    }

    pub fn count(&self, o: Outcome) -> usize {
        self.checks.iter().filter(|c| c.verdict == o).count()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One line per check when `verbose`, otherwise failures only, then a summary.
    pub fn to_text(&self, verbose: bool) -> String {
        let mut out = String::new();
        for c in &self.checks {
            if !verbose && c.verdict != Outcome::Fail {
                continue;
            }
            out.push_str(&format!("{} {}  {}", c.verdict, c.id, c.anchor));
            if let Some(w) = &c.witness {
                out.push_str(&format!("  [{w}]"));
            }
            out.push('\n');
            if c.verdict == Outcome::Fail {
                if let (Some(a), Some(e)) = (&c.assembled, &c.expected) {
                    out.push_str(&format!("    assembled: {a}\n    expected:  {e}\n"));
                }
            }
        }
        out.push_str(&format!(
            "suite {}: {} passed, {} failed, {} notes\n",
            self.suite,
            self.count(Outcome::Pass),
            self.count(Outcome::Fail),
            self.count(Outcome::Note)
        ));
        out
    }
}

/// Runs every criterion of the suite.
pub fn run_suite(suite: Suite, exec: Exec) -> Report {
    let checks = suite
        .criteria()
        .into_iter()
        .flat_map(|c| c.run(exec))
        .collect();
    Report::new(suite.name(), checks)
}
