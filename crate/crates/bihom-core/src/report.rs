//! Per-identity verdicts with failure witnesses, and their text/JSON
//! renderings.

use serde_json::{json, Value};

use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        }
    }
}

/// Confirmation of a symbolic failure by the independent numeric oracle
/// at random parameter points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleConfirmation {
    pub points_total: usize,
    pub points_failing: usize,
}

impl OracleConfirmation {
    /// A nonzero value at any single point already proves the residual
    /// is nonzero; zero failing points means the verdicts disagree.
    pub fn agreed(&self) -> bool {
        self.points_failing > 0
    }
}

/// One identity check. A failing check carries the lexicographically
/// first failing basis tuple (1-based) and the full residual vector
/// there; a passing check carries neither.
#[derive(Clone, Debug)]
pub struct Check {
    pub identity: String,
    pub verdict: Verdict,
    pub witness: Option<Vec<usize>>,
    pub residual: Option<Vec<Scalar>>,
    /// Which sub-condition failed, for aggregate checks.
    pub detail: Option<String>,
    /// Informational checks do not affect the overall verdict.
    pub informational: bool,
    pub oracle: Option<OracleConfirmation>,
}

impl Check {
    pub fn pass(identity: &str) -> Check {
        Check {
            identity: identity.to_string(),
            verdict: Verdict::Pass,
            witness: None,
            residual: None,
            detail: None,
            informational: false,
            oracle: None,
        }
    }

    pub fn fail(identity: &str, witness: Vec<usize>, residual: Vec<Scalar>) -> Check {
        Check {
            identity: identity.to_string(),
            verdict: Verdict::Fail,
            witness: Some(witness),
            residual: Some(residual),
            detail: None,
            informational: false,
            oracle: None,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Check {
        self.detail = Some(detail.into());
        self
    }

    pub fn informational(mut self) -> Check {
        self.informational = true;
        self
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub checks: Vec<Check>,
    /// Classification label, e.g. flagging a non-BiHom-commutative
    /// multiplication on an otherwise verified structure.
    pub label: Option<String>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn single(check: Check) -> Report {
        Report {
            checks: vec![check],
            label: None,
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn merge(&mut self, other: Report) {
        self.checks.extend(other.checks);
        if self.label.is_none() {
            self.label = other.label;
        }
    }

    pub fn check(&self, identity: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.identity == identity)
    }

    /// Overall verdict; informational checks are excluded.
    pub fn overall(&self) -> Verdict {
        if self
            .checks
            .iter()
            .any(|c| c.verdict == Verdict::Fail && !c.informational)
        {
            Verdict::Fail
        } else {
            Verdict::Pass
        }
    }

    pub fn passed(&self) -> bool {
        self.overall() == Verdict::Pass
    }

    /// Every failing check has been confirmed by the numeric oracle.
    pub fn failures_confirmed(&self) -> bool {
        self.checks
            .iter()
            .filter(|c| c.verdict == Verdict::Fail)
            .all(|c| c.oracle.as_ref().map(|o| o.agreed()).unwrap_or(false))
    }

    fn witness_text(check: &Check) -> String {
        match &check.witness {
            None => String::new(),
            Some(w) => {
                let elems: Vec<String> = w.iter().map(|i| format!("e_{}", i)).collect();
                match (check.identity.as_str(), w.len()) {
                    ("commuting_maps", _) | ("module_maps_commute", _) => {
                        format!(
                            " entry ({})",
                            w.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
                        )
                    }
                    (_, 1) => format!(" (x)=({})", elems.join(",")),
                    (_, 2) => format!(" (x,y)=({})", elems.join(",")),
                    (_, 3) => format!(" (x,y,z)=({})", elems.join(",")),
                    _ => format!(" ({})", elems.join(",")),
                }
            }
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for check in &self.checks {
            out.push_str(check.verdict.as_str());
            out.push(' ');
            out.push_str(&check.identity);
            if let Some(detail) = &check.detail {
                out.push_str(&format!(" [{}]", detail));
            }
            if check.informational {
                out.push_str(" (informational)");
            }
            out.push_str(&Self::witness_text(check));
            if let Some(res) = &check.residual {
                let parts: Vec<String> = res.iter().map(|s| s.to_string()).collect();
                out.push_str(&format!(" residual [{}]", parts.join(", ")));
            }
            if let Some(oracle) = &check.oracle {
                out.push_str(&format!(
                    " oracle {}/{} points confirm{}",
                    oracle.points_failing,
                    oracle.points_total,
                    if oracle.agreed() {
                        ""
                    } else {
                        " (DISAGREEMENT)"
                    }
                ));
            }
            out.push('\n');
        }
        if let Some(label) = &self.label {
            out.push_str(&format!("label: {}\n", label));
        }
        out.push_str(&format!("overall: {}\n", self.overall().as_str()));
        out
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                json!({
                    "detail": c.detail,
                    "identity": c.identity,
                    "informational": c.informational,
                    "oracle": c.oracle.as_ref().map(|o| json!({
                        "agreed": o.agreed(),
                        "points_failing": o.points_failing,
                        "points_total": o.points_total,
                    })),
                    "residual": c.residual.as_ref().map(|r| {
                        r.iter().map(|s| s.to_string()).collect::<Vec<_>>()
                    }),
                    "verdict": c.verdict.as_str(),
                    "witness": c.witness,
                })
            })
            .collect();
        json!({
            "checks": checks,
            "label": self.label,
            "overall": self.overall().as_str(),
        })
    }
}
