//! Structured pass/fail reports produced by the verification suites.

use std::fmt;

use serde::Serialize;

use crate::element::Element;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Outcome {
    Pass,
    Fail,
    /// A one-sided numeric check that did not confirm at the tested depth.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub identity: String,
    pub samples: Vec<usize>,
    pub outcome: Outcome,
    /// `lhs − rhs` for a failed identity.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Element>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(identity: impl Into<String>, samples: Vec<usize>, outcome: Outcome) -> Self {
        Self {
            identity: identity.into(),
            samples,
            outcome,
            counterexample: None,
            detail: None,
        }
    }

    /// Compares two elements with [`Element::equals`], keeping `lhs − rhs` on failure.
    pub fn identity(identity: impl Into<String>, samples: Vec<usize>, lhs: &Element, rhs: &Element) -> Self {
        let mut check = Self::new(identity, samples, Outcome::Pass);
        if !lhs.equals(rhs) {
            check.outcome = Outcome::Fail;
            check.counterexample = lhs.checked_sub(rhs).ok().map(|e| e.normalize());
        }
        check
    }

    pub fn condition(identity: impl Into<String>, samples: Vec<usize>, holds: bool) -> Self {
        let outcome = if holds { Outcome::Pass } else { Outcome::Fail };
        Self::new(identity, samples, outcome)
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Self {
            suite: suite.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn count(&self, outcome: Outcome) -> usize {
        self.checks.iter().filter(|c| c.outcome == outcome).count()
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: {} checks, {} pass, {} fail, {} inconclusive",
            self.suite,
            self.checks.len(),
            self.count(Outcome::Pass),
            self.count(Outcome::Fail),
            self.count(Outcome::Inconclusive)
        )?;
        for check in self.failures() {
            write!(f, "  {:?} {} {:?}", check.outcome, check.identity, check.samples)?;
            if let Some(detail) = &check.detail {
                write!(f, " ({})", detail)?;
            }
            if let Some(ce) = &check.counterexample {
                write!(f, " lhs-rhs = {}", ce)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
