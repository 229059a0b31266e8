//! Oracle run results, as text for people and JSON for tools.

use std::fmt::Write;

use serde::Serialize;

use super::Oracle;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Too many inputs were discarded, or there were none.
    Inconclusive,
    Timeout,
    /// The host failed for a reason other than a guard.
    Fault,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
            Verdict::Timeout => "timeout",
            Verdict::Fault => "fault",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleResult {
    pub name: String,
    pub satisfaction: String,
    /// `name: Type` per parameter.
    pub params: Vec<String>,
    pub verdict: Verdict,
    pub attempted: usize,
    pub pass: usize,
    pub fail: usize,
    pub discard: usize,
    /// `param = value` for the first failing input.
    pub witness: Option<Vec<String>>,
    /// Location of the assert that failed on the witness.
    pub failed_assert: Option<String>,
    pub message: Option<String>,
}

impl OracleResult {
    pub(crate) fn new(o: &Oracle) -> Self {
        OracleResult {
            name: o.name.clone(),
            satisfaction: o.satisfaction.clone(),
            params: o
                .params
                .iter()
                .map(|p| format!("{}: {}", p.name, p.ty))
                .collect(),
            verdict: Verdict::Pass,
            attempted: 0,
            pass: 0,
            fail: 0,
            discard: 0,
            witness: None,
            failed_assert: None,
            message: None,
        }
    }

    /// Fixes the verdict of a run that went through all its inputs.
    pub(crate) fn settle(&mut self, max_discard_ratio: f64) {
        self.attempted = self.pass + self.fail + self.discard;
        self.verdict = if self.fail > 0 {
            Verdict::Fail
        } else if self.attempted == 0
            || self.discard as f64 > max_discard_ratio * self.attempted as f64
        {
            Verdict::Inconclusive
        } else {
            Verdict::Pass
        };
    }

    pub fn discard_ratio(&self) -> f64 {
        if self.attempted == 0 {
            0.0
        } else {
            self.discard as f64 / self.attempted as f64
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub budget: usize,
    pub seed: u64,
    pub results: Vec<OracleResult>,
}

impl OracleReport {
    /// True iff every oracle passed.
    pub fn ok(&self) -> bool {
        self.results.iter().all(|r| r.verdict == Verdict::Pass)
    }

    pub fn count(&self, v: Verdict) -> usize {
        self.results.iter().filter(|r| r.verdict == v).count()
    }

    pub fn result(&self, name: &str) -> Option<&OracleResult> {
        self.results.iter().find(|r| r.name == name)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            let _ = writeln!(
                out,
                "oracle {}({}) from {}: {}",
                r.name,
                r.params.join(", "),
                r.satisfaction,
                r.verdict.as_str()
            );
            let _ = writeln!(
                out,
                "  attempted {} pass {} fail {} discard {}",
                r.attempted, r.pass, r.fail, r.discard
            );
            if let Some(w) = &r.witness {
                let _ = writeln!(
                    out,
                    "  witness: {}",
                    if w.is_empty() {
                        "()".into()
                    } else {
                        w.join(", ")
                    }
                );
            }
            if let Some(a) = &r.failed_assert {
                let _ = writeln!(out, "  failed assert at {a}");
            }
            if let Some(m) = &r.message {
                let _ = writeln!(out, "  {m}");
            }
        }
        let _ = writeln!(
            out,
            "{} oracles: {} passed, {} failed, {} inconclusive, {} timed out, {} faulted (budget {}, seed {})",
            self.results.len(),
            self.count(Verdict::Pass),
            self.count(Verdict::Fail),
            self.count(Verdict::Inconclusive),
            self.count(Verdict::Timeout),
            self.count(Verdict::Fault),
            self.budget,
            self.seed
        );
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
