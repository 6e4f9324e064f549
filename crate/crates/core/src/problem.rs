//! Problem specifications, the end-to-end pipeline and the reports emitted by
//! each command.

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::{AlgebraElement, ElementClass, LocalAlgebra, Projection};
use crate::complex::{minimal_resolution, verify_complex, FreeComplex, FreeModuleMap, ModulePresentation};
use crate::descent::{betti_match, betti_table, descend, poincare_check, BettiTable, PoincareCheck};
use crate::dg::{build_sigma_system, homotopy_check, verify_conditions, SigmaSystem};
use crate::error::{Error, Result};
use crate::groebner::GroebnerLimits;
use crate::poly::Polynomial;
use crate::report::{Check, ConditionKind, Expectation, VerificationReport};
use crate::tate::{is_exact_pair, verify_tate_algebra, ExactPairWitness, TateData};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

fn default_degree() -> usize {
    8
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub characteristic: u32,
    pub variables: Vec<String>,
    pub ideal: Vec<String>,
    pub f: String,
    pub g: String,
    /// Presentation matrix of `M`, one row per generator.
    pub module: Vec<Vec<String>>,
    #[serde(default = "default_degree")]
    pub degree: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

impl ProblemSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: ProblemSpec = serde_json::from_str(text).map_err(|e| Error::Parse(format!("problem spec: {e}")))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.degree < 1 {
            return Err(Error::Parse("degree must be at least 1".into()));
        }
        if self.variables.is_empty() {
            return Err(Error::Parse("at least one variable is required".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for v in &self.variables {
            let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::Parse(format!("invalid variable name {v:?}")));
            }
            if !seen.insert(v) {
                return Err(Error::Parse(format!("duplicate variable {v}")));
            }
        }
        if self.module.is_empty() {
            return Err(Error::Parse("module presentation needs at least one generator row".into()));
        }
        Ok(())
    }

    /// SHA-256 of the canonical JSON of the mathematical content (the output
    /// path is excluded).
    pub fn input_hash(&self) -> String {
        let canonical = ProblemSpec { output: None, ..self.clone() };
        let bytes = serde_json::to_vec(&canonical).expect("spec serializes");
        hex::encode(Sha256::digest(bytes))
    }
}

/// A parsed problem: the ring, the pair and the module.
#[derive(Clone, Debug)]
pub struct Problem {
    pub spec: ProblemSpec,
    pub algebra: Arc<LocalAlgebra>,
    pub f: AlgebraElement,
    pub g: AlgebraElement,
    pub module: ModulePresentation,
}

impl Problem {
    pub fn build(spec: &ProblemSpec, limits: GroebnerLimits) -> Result<Self> {
        spec.validate()?;
        let field = crate::field::PrimeField::new(spec.characteristic)?;
        let ideal =
            spec.ideal.iter().map(|s| Polynomial::parse(s, &spec.variables, field)).collect::<Result<Vec<_>>>()?;
        let algebra = Arc::new(LocalAlgebra::build(spec.characteristic, &spec.variables, &ideal, limits)?);
        let f = algebra.parse_element(&spec.f)?;
        let g = algebra.parse_element(&spec.g)?;
        let module = ModulePresentation::parse(algebra.clone(), &spec.module)?;
        Ok(Problem { spec: spec.clone(), algebra, f, g, module })
    }

    pub fn tate(&self) -> Result<TateData> {
        TateData::new(self.algebra.clone(), self.f.clone(), self.g.clone(), self.spec.degree)
    }

    pub fn quotient(&self) -> Result<(Arc<LocalAlgebra>, Projection)> {
        let (r, p) = self.algebra.quotient_by_principal(&self.f)?;
        Ok((Arc::new(r), p))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSummary {
    pub characteristic: u32,
    pub variables: Vec<String>,
    pub groebner_basis: Vec<String>,
    pub dim: usize,
    pub basis: Vec<String>,
}

impl AlgebraSummary {
    pub fn of(alg: &LocalAlgebra) -> Self {
        AlgebraSummary {
            characteristic: alg.characteristic(),
            variables: alg.variables().to_vec(),
            groebner_basis: alg.ideal().iter().map(|p| p.display(alg.variables()).to_string()).collect(),
            dim: alg.dim(),
            basis: alg.basis().iter().map(|m| m.display(alg.variables()).to_string()).collect(),
        }
    }
}

impl fmt::Display for AlgebraSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "F_{}[{}]/({}), dim {}, basis {{{}}}",
            self.characteristic,
            self.variables.join(","),
            self.groebner_basis.join(", "),
            self.dim,
            self.basis.join(", ")
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingReport {
    pub tool_version: String,
    pub input_hash: String,
    pub algebra: AlgebraSummary,
    pub f_class: ElementClass,
    pub g_class: ElementClass,
    pub fg_zero: bool,
    pub exact_pair: ExactPairWitness,
    pub quotient: AlgebraSummary,
    pub module_dim: usize,
}

impl fmt::Display for RingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Q = {}", self.algebra)?;
        writeln!(f, "R = Q/(f) = {}", self.quotient)?;
        writeln!(f, "f: {}, g: {}, fg = 0: {}", self.f_class, self.g_class, self.fg_zero)?;
        writeln!(f, "exact_pair: {}", self.exact_pair.exact)?;
        writeln!(
            f,
            "  ann(f) = ({}), equals (g): {}",
            self.exact_pair.annihilator_of_f.join(", "),
            self.exact_pair.annihilator_of_f_is_g
        )?;
        writeln!(
            f,
            "  ann(g) = ({}), equals (f): {}",
            self.exact_pair.annihilator_of_g.join(", "),
            self.exact_pair.annihilator_of_g_is_f
        )?;
        writeln!(f, "dim_k M = {}", self.module_dim)?;
        writeln!(f, "input hash {}", self.input_hash)
    }
}

/// Validates the ring and the hypotheses on `(f, g)`.
pub fn check_ring(spec: &ProblemSpec, limits: GroebnerLimits) -> Result<RingReport> {
    let problem = Problem::build(spec, limits)?;
    problem.tate()?;
    let (r, _) = problem.quotient()?;
    let alg = &problem.algebra;
    Ok(RingReport {
        tool_version: TOOL_VERSION.into(),
        input_hash: spec.input_hash(),
        algebra: AlgebraSummary::of(alg),
        f_class: alg.classify(&problem.f),
        g_class: alg.classify(&problem.g),
        fg_zero: alg.mul(&problem.f, &problem.g).is_zero(),
        exact_pair: is_exact_pair(alg, &problem.f, &problem.g),
        quotient: AlgebraSummary::of(&r),
        module_dim: problem.module.dim(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Ring {
    Q,
    R,
}

/// Small matrices inline, larger ones by shape only.
fn write_matrix(f: &mut fmt::Formatter<'_>, name: &str, map: &FreeModuleMap, shown: &str) -> fmt::Result {
    if map.target_rank() * map.source_rank() <= 16 {
        writeln!(f, "{name} = {shown}")
    } else {
        writeln!(f, "{name}: {} x {} matrix (see JSON output)", map.target_rank(), map.source_rank())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionReport {
    pub tool_version: String,
    pub input_hash: String,
    pub over: Ring,
    pub algebra: AlgebraSummary,
    pub betti: BettiTable,
    /// `d_1, ..., d_N`, entries as coefficient vectors in the basis above.
    pub differentials: Vec<FreeModuleMap>,
    pub display: Vec<String>,
    pub verification: VerificationReport,
}

impl ResolutionReport {
    fn new(spec: &ProblemSpec, over: Ring, module: &ModulePresentation, complex: &FreeComplex) -> Self {
        let alg = complex.algebra();
        ResolutionReport {
            tool_version: TOOL_VERSION.into(),
            input_hash: spec.input_hash(),
            over,
            algebra: AlgebraSummary::of(alg),
            betti: betti_table(complex),
            differentials: complex.differentials().to_vec(),
            display: complex.differentials().iter().map(|d| d.format(alg)).collect(),
            verification: verify_complex(complex, module),
        }
    }
}

impl fmt::Display for ResolutionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "minimal free resolution over {:?} = {}", self.over, self.algebra)?;
        write!(f, "{}", self.betti)?;
        for (n, d) in self.differentials.iter().enumerate() {
            write_matrix(f, &format!("d_{}", n + 1), d, &self.display[n])?;
        }
        write!(f, "{}", self.verification)
    }
}

pub fn resolve(spec: &ProblemSpec, over: Ring, limits: GroebnerLimits) -> Result<ResolutionReport> {
    let problem = Problem::build(spec, limits)?;
    let module = match over {
        Ring::Q => problem.module.clone(),
        Ring::R => {
            let (r, p) = problem.quotient()?;
            if !problem.module.annihilated_by(&problem.f) {
                return Err(Error::NotAnnihilated);
            }
            problem.module.base_change(r, &p)
        }
    };
    let complex = minimal_resolution(&module, spec.degree);
    Ok(ResolutionReport::new(spec, over, &module, &complex))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DgReport {
    pub tool_version: String,
    pub input_hash: String,
    pub degree: usize,
    pub betti: BettiTable,
    pub complement_ranks: Vec<usize>,
    pub conditions: VerificationReport,
    pub homotopies: VerificationReport,
}

impl DgReport {
    pub fn passed(&self) -> bool {
        self.conditions.all_passed() && self.homotopies.all_passed()
    }
}

impl fmt::Display for DgReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.betti)?;
        writeln!(f, "rank V_n: {:?}", self.complement_ranks)?;
        write!(f, "{}{}", self.conditions, self.homotopies)
    }
}

pub fn dg(spec: &ProblemSpec, limits: GroebnerLimits) -> Result<(SigmaSystem, DgReport)> {
    let problem = Problem::build(spec, limits)?;
    let tate = problem.tate()?;
    let u = minimal_resolution(&problem.module, spec.degree);
    let s = build_sigma_system(&tate, &u, &problem.module)?;
    let report = DgReport {
        tool_version: TOOL_VERSION.into(),
        input_hash: spec.input_hash(),
        degree: spec.degree,
        betti: betti_table(&u),
        complement_ranks: s.complement_ranks(),
        conditions: verify_conditions(&s),
        homotopies: homotopy_check(&s),
    };
    Ok((s, report))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TateReport {
    pub tool_version: String,
    pub input_hash: String,
    pub exact_pair: ExactPairWitness,
    pub verification: VerificationReport,
}

impl fmt::Display for TateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "exact_pair: {}", self.exact_pair.exact)?;
        write!(f, "{}", self.verification)
    }
}

pub fn verify_tate(spec: &ProblemSpec, limits: GroebnerLimits) -> Result<TateReport> {
    let problem = Problem::build(spec, limits)?;
    let tate = problem.tate()?;
    Ok(TateReport {
        tool_version: TOOL_VERSION.into(),
        input_hash: spec.input_hash(),
        exact_pair: is_exact_pair(&problem.algebra, &problem.f, &problem.g),
        verification: verify_tate_algebra(&tate),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageReport {
    pub betti: BettiTable,
    pub verification: VerificationReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescentStage {
    pub betti: BettiTable,
    pub differentials: Vec<FreeModuleMap>,
    pub display: Vec<String>,
    pub verification: VerificationReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub tool_version: String,
    pub input_hash: String,
    pub degree: usize,
    pub algebra: AlgebraSummary,
    pub quotient: AlgebraSummary,
    pub exact_pair: ExactPairWitness,
    pub tate: VerificationReport,
    pub resolution_over_q: StageReport,
    pub complement_ranks: Vec<usize>,
    pub conditions: VerificationReport,
    pub homotopies: VerificationReport,
    pub descended: DescentStage,
    pub resolution_over_r: StageReport,
    pub betti_match: VerificationReport,
    pub poincare: PoincareCheck,
    pub annotations: Vec<String>,
    /// Every outcome agrees with its prediction.
    pub consistent: bool,
    pub violations: Vec<String>,
}

impl PipelineReport {
    fn reports(&self) -> [&VerificationReport; 7] {
        [
            &self.tate,
            &self.resolution_over_q.verification,
            &self.conditions,
            &self.homotopies,
            &self.descended.verification,
            &self.resolution_over_r.verification,
            &self.betti_match,
        ]
    }

    pub fn exit_code(&self) -> i32 {
        if self.consistent {
            0
        } else {
            1
        }
    }
}

impl fmt::Display for PipelineReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Q = {}", self.algebra)?;
        writeln!(f, "R = {}", self.quotient)?;
        writeln!(f, "exact_pair: {}", self.exact_pair.exact)?;
        for r in self.reports() {
            write!(f, "{r}")?;
        }
        writeln!(f, "betti over Q:")?;
        write!(f, "{}", self.resolution_over_q.betti)?;
        writeln!(f, "betti of descended complex:")?;
        write!(f, "{}", self.descended.betti)?;
        for (n, d) in self.descended.differentials.iter().enumerate() {
            write_matrix(f, &format!("d'_{}", n + 1), d, &self.descended.display[n])?;
        }
        writeln!(f, "betti over R:")?;
        write!(f, "{}", self.resolution_over_r.betti)?;
        match self.poincare.first_failure {
            None => writeln!(f, "poincare: holds")?,
            Some(n) => writeln!(f, "poincare: fails at degree {n}")?,
        }
        for a in &self.annotations {
            writeln!(f, "note: {a}")?;
        }
        for v in &self.violations {
            writeln!(f, "VIOLATION: {v}")?;
        }
        writeln!(f, "consistent: {}", self.consistent)?;
        writeln!(f, "input hash {}", self.input_hash)
    }
}

/// Resolution over `Q`, dg structure, descent, independent resolution over
/// `R`, and the comparisons between them.
pub fn full_pipeline(spec: &ProblemSpec, limits: GroebnerLimits) -> Result<PipelineReport> {
    let problem = Problem::build(spec, limits)?;
    let top = spec.degree;
    let tate = problem.tate()?;
    let witness = is_exact_pair(&problem.algebra, &problem.f, &problem.g);
    let exact = witness.exact;
    let conditional = if exact { Expectation::Holds } else { Expectation::Open };

    let u = minimal_resolution(&problem.module, top);
    let resolution_over_q = StageReport { betti: betti_table(&u), verification: verify_complex(&u, &problem.module) };

    let s = build_sigma_system(&tate, &u, &problem.module)?;
    let conditions = verify_conditions(&s);
    let homotopies = homotopy_check(&s);

    let (r, projection) = problem.quotient()?;
    let module_r = problem.module.base_change(r.clone(), &projection);
    let descended = descend(&s, r.clone(), &projection)?;
    let mut descended_verification = verify_complex(&descended.complex, &module_r);
    descended_verification.title = "descended complex".into();
    descended_verification.expect(ConditionKind::Exactness, conditional);

    let oracle = minimal_resolution(&module_r, top);
    let mut oracle_verification = verify_complex(&oracle, &module_r);
    oracle_verification.title = "free resolution over R".into();

    let descended_betti = betti_table(&descended.complex);
    let oracle_betti = betti_table(&oracle);
    let mut matched = betti_match(&descended_betti, &oracle_betti, top - 1);
    matched.expect(ConditionKind::BettiMatch, conditional);

    let mut poincare = poincare_check(&resolution_over_q.betti, &oracle_betti, top)?;
    for c in &mut poincare.checks {
        c.expectation = conditional;
    }

    let mut annotations = Vec::new();
    if exact {
        annotations
            .push("exact pair: the descended complex is predicted to be the minimal resolution over R".to_string());
    } else {
        let mut note = "exact-pair hypothesis unmet".to_string();
        if let Some(n) = descended_verification.first_failure(ConditionKind::Exactness).and_then(|c| c.n) {
            note.push_str(&format!("; descent not exact at {n}"));
        }
        if let Some(n) = poincare.first_failure {
            note.push_str(&format!("; poincare identity fails at {n}"));
        }
        annotations.push(note);
    }

    let descended_stage = DescentStage {
        betti: descended_betti,
        display: descended.complex.differentials().iter().map(|d| d.format(&r)).collect(),
        differentials: descended.complex.differentials().to_vec(),
        verification: descended_verification,
    };
    let mut report = PipelineReport {
        tool_version: TOOL_VERSION.into(),
        input_hash: spec.input_hash(),
        degree: top,
        algebra: AlgebraSummary::of(&problem.algebra),
        quotient: AlgebraSummary::of(&r),
        exact_pair: witness,
        tate: verify_tate_algebra(&tate),
        resolution_over_q,
        complement_ranks: s.complement_ranks(),
        conditions,
        homotopies,
        descended: descended_stage,
        resolution_over_r: StageReport { betti: oracle_betti, verification: oracle_verification },
        betti_match: matched,
        poincare,
        annotations,
        consistent: true,
        violations: Vec::new(),
    };
    let violations: Vec<String> = report
        .reports()
        .iter()
        .flat_map(|r| r.violations().map(|c| format!("{}: {}", r.title, c.label())).collect::<Vec<_>>())
        .chain(report.poincare.checks.iter().filter(|c| !c.consistent()).map(Check::label))
        .collect();
    report.consistent = violations.is_empty();
    report.violations = violations;
    Ok(report)
}
