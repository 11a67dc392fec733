//! Verification reports: one verdict per checked case, summary counts, and a
//! JSON form that depends only on the suite parameters.

use std::time::Duration;

use serde::Serialize;

use crate::margin::{Bounded, Margin};

pub const SCHEMA: &str = "toplat-verify/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    ExactPass,
    SoundOnlyPass,
    BoundaryExcluded,
    Fail,
}

impl Verdict {
    pub fn from_check(ok: bool) -> Verdict {
        if ok {
            Verdict::ExactPass
        } else {
            Verdict::Fail
        }
    }

    /// A bounded answer compared with the true one. A sound-only negative
    /// that the oracle contradicts lost its witness to the truncation and
    /// is excluded rather than failed; a wrong positive always fails.
    pub fn from_bounded(b: Bounded, oracle: bool) -> Verdict {
        match (b.margin, b.value) {
            (_, None) => Verdict::BoundaryExcluded,
            (_, Some(true)) if !oracle => Verdict::Fail,
            (Margin::Exact, Some(v)) => Verdict::from_check(v == oracle),
            (_, Some(true)) => Verdict::SoundOnlyPass,
            (_, Some(false)) if oracle => Verdict::BoundaryExcluded,
            (_, Some(false)) => Verdict::SoundOnlyPass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Case {
    pub index: usize,
    pub check: String,
    pub input: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub cases: usize,
    pub exact_pass: usize,
    pub sound_only_pass: usize,
    pub boundary_excluded: usize,
    pub fail: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fuzz: Option<usize>,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub module: String,
    pub params: Params,
    pub summary: Summary,
    pub cases: Vec<Case>,
    /// Kept out of the JSON so reports are reproducible byte for byte.
    #[serde(skip)]
    pub wall: Duration,
}

impl SuiteReport {
    pub fn new(suite: &str, module: &str, params: Params) -> SuiteReport {
        SuiteReport {
            suite: suite.to_string(),
            module: module.to_string(),
            params,
            summary: Summary::default(),
            cases: Vec::new(),
            wall: Duration::ZERO,
        }
    }

    pub fn push(
        &mut self,
        check: &str,
        input: impl Into<String>,
        verdict: Verdict,
        note: Option<String>,
    ) {
        let s = &mut self.summary;
        s.cases += 1;
        match verdict {
            Verdict::ExactPass => s.exact_pass += 1,
            Verdict::SoundOnlyPass => s.sound_only_pass += 1,
            Verdict::BoundaryExcluded => s.boundary_excluded += 1,
            Verdict::Fail => s.fail += 1,
        }
        self.cases.push(Case {
            index: self.cases.len(),
            check: check.to_string(),
            input: input.into(),
            verdict,
            note,
        });
    }

    /// Records a plain pass/fail check.
    pub fn check(&mut self, check: &str, input: impl Into<String>, ok: bool) {
        self.push(check, input, Verdict::from_check(ok), None);
    }

    pub fn passes(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| c.verdict == Verdict::Fail)
    }

    /// One summary line plus one line per failing case (at most `limit`).
    pub fn text(&self, limit: usize) -> String {
        let s = &self.summary;
        let mut out = format!(
            "{:<10} {:<4} cases={} exact={} sound-only={} excluded={} fail={} ({:.2}s)\n",
            self.suite,
            if self.passes() { "PASS" } else { "FAIL" },
            s.cases,
            s.exact_pass,
            s.sound_only_pass,
            s.boundary_excluded,
            s.fail,
            self.wall.as_secs_f64()
        );
        for c in self.failures().take(limit) {
            out.push_str(&format!("  fail #{} {}: {}", c.index, c.check, c.input));
            if let Some(n) = &c.note {
                out.push_str(&format!(" ({n})"));
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub schema: &'static str,
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn new(suites: Vec<SuiteReport>) -> VerifyReport {
        VerifyReport {
            schema: SCHEMA,
            suites,
        }
    }

    pub fn passes(&self) -> bool {
        self.suites.iter().all(SuiteReport::passes)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
