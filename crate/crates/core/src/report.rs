//! Per-condition verification evidence.

use std::fmt;

use serde::{Deserialize, Serialize};

/// The condition a check verifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConditionKind {
    /// Leibniz condition `A(i,n)` on the maps sigma.
    A,
    /// Associativity condition `B(i,j,n)`.
    B,
    /// Split injectivity of `Phi_n`, `C(n)`.
    C,
    /// Internal direct sum decomposition `D(n)`.
    D,
    /// Direct sum of the tail summands of `U_n`.
    Claim,
    /// `rank U_n = sum_{i<=n} rank V_i`.
    RankLaw,
    /// `f_{i-1} sigma_{i,*}` is a chain map.
    Homotopy,
    /// `d_n d_{n+1} = 0`.
    BoundarySquare,
    /// Every differential entry lies in the maximal ideal.
    Minimality,
    /// `dim ker d_n = dim im d_{n+1}`.
    Exactness,
    /// `dim coker d_1 = dim M`.
    H0,
    AlphaSymmetry,
    AlphaAssociativity,
    AlphaLeibniz,
    /// `beta^Q_n = sum_{i<=n} beta^R_i`.
    Poincare,
    /// Descended Betti number equals the independently computed one.
    BettiMatch,
}

impl ConditionKind {
    pub fn name(&self) -> &'static str {
        match self {
            ConditionKind::A => "A",
            ConditionKind::B => "B",
            ConditionKind::C => "C",
            ConditionKind::D => "D",
            ConditionKind::Claim => "claim",
            ConditionKind::RankLaw => "rank-law",
            ConditionKind::Homotopy => "homotopy",
            ConditionKind::BoundarySquare => "d^2=0",
            ConditionKind::Minimality => "minimality",
            ConditionKind::Exactness => "exactness",
            ConditionKind::H0 => "H0",
            ConditionKind::AlphaSymmetry => "alpha-symmetry",
            ConditionKind::AlphaAssociativity => "alpha-associativity",
            ConditionKind::AlphaLeibniz => "alpha-leibniz",
            ConditionKind::Poincare => "poincare",
            ConditionKind::BettiMatch => "betti-match",
        }
    }
}

/// What the theory predicts for a check.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expectation {
    #[default]
    Holds,
    Fails,
    /// No prediction either way.
    Open,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub kind: ConditionKind,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub i: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub j: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<usize>,
    pub passed: bool,
    pub expectation: Expectation,
    /// Locating data for a failure, e.g. the offending matrix entry.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(kind: ConditionKind, passed: bool) -> Self {
        Check { kind, i: None, j: None, k: None, n: None, passed, expectation: Expectation::Holds, detail: None }
    }

    pub fn i(mut self, i: usize) -> Self {
        self.i = Some(i);
        self
    }

    pub fn j(mut self, j: usize) -> Self {
        self.j = Some(j);
        self
    }

    pub fn k(mut self, k: usize) -> Self {
        self.k = Some(k);
        self
    }

    pub fn n(mut self, n: usize) -> Self {
        self.n = Some(n);
        self
    }

    pub fn detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn detail_if_failed(self, detail: impl FnOnce() -> String) -> Self {
        if self.passed {
            self
        } else {
            let d = detail();
            self.detail(d)
        }
    }

    /// The outcome agrees with the prediction.
    pub fn consistent(&self) -> bool {
        match self.expectation {
            Expectation::Holds => self.passed,
            Expectation::Fails => !self.passed,
            Expectation::Open => true,
        }
    }

    pub fn label(&self) -> String {
        let idx: Vec<String> = [("i", self.i), ("j", self.j), ("k", self.k), ("n", self.n)]
            .iter()
            .filter_map(|(name, v)| v.map(|v| format!("{name}={v}")))
            .collect();
        if idx.is_empty() {
            self.kind.name().to_string()
        } else {
            format!("{}({})", self.kind.name(), idx.join(","))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub title: String,
    /// Every check is confined to homological degrees `<= truncation`.
    pub truncation: usize,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(title: impl Into<String>, truncation: usize) -> Self {
        VerificationReport { title: title.into(), truncation, checks: Vec::new() }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Checks whose outcome contradicts the prediction.
    pub fn violations(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.consistent())
    }

    pub fn consistent(&self) -> bool {
        self.checks.iter().all(Check::consistent)
    }

    pub fn of_kind(&self, kind: ConditionKind) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(move |c| c.kind == kind)
    }

    pub fn count(&self, kind: ConditionKind) -> usize {
        self.of_kind(kind).count()
    }

    pub fn kind_passed(&self, kind: ConditionKind) -> bool {
        self.of_kind(kind).all(|c| c.passed)
    }

    pub fn first_failure(&self, kind: ConditionKind) -> Option<&Check> {
        self.of_kind(kind).find(|c| !c.passed)
    }

    /// Sets the prediction for every check of `kind`.
    pub fn expect(&mut self, kind: ConditionKind, expectation: Expectation) {
        for c in self.checks.iter_mut().filter(|c| c.kind == kind) {
            c.expectation = expectation;
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} (truncated at degree {})", self.title, self.truncation)?;
        let mut kinds: Vec<ConditionKind> = Vec::new();
        for c in &self.checks {
            if !kinds.contains(&c.kind) {
                kinds.push(c.kind);
            }
        }
        for kind in kinds {
            let total = self.count(kind);
            let passed = self.of_kind(kind).filter(|c| c.passed).count();
            writeln!(f, "  {:<20} {passed}/{total} pass", kind.name())?;
        }
        for c in self.checks.iter().filter(|c| !c.passed || !c.consistent()) {
            let tag = if c.consistent() { "expected failure" } else { "VIOLATION" };
            write!(f, "  {tag}: {}", c.label())?;
            if !c.passed {
                write!(f, " fails")?;
            } else {
                write!(f, " holds")?;
            }
            if let Some(d) = &c.detail {
                write!(f, " ({d})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
