//! Descent of a dg module structure to a complex over `R = Q/(f)`:
//! `U' = U ⊗_A R` has `U'_n = V_n ⊗_Q R` and differential the `V_{n-1}`
//! component of `d_n|V_n`, reduced modulo `f`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{LocalAlgebra, Projection};
use crate::complex::{FreeComplex, FreeModuleMap};
use crate::dg::SigmaSystem;
use crate::error::{Error, Result};
use crate::report::{Check, ConditionKind, VerificationReport};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescendedComplex {
    pub complex: FreeComplex,
}

impl DescendedComplex {
    pub fn ranks(&self) -> &[usize] {
        self.complex.ranks()
    }

    pub fn differential(&self, n: usize) -> &FreeModuleMap {
        self.complex.differential(n)
    }
}

pub fn descend(s: &SigmaSystem, r: Arc<LocalAlgebra>, projection: &Projection) -> Result<DescendedComplex> {
    let q = s.tate().algebra();
    let u = s.complex();
    let top = s.degree();
    let mut differentials = Vec::with_capacity(top);
    for n in 1..=top {
        let coordinates = s.decomposition(n - 1)?;
        let restricted = u.differential(n).select_columns(q, s.complement(n));
        let components = coordinates.compose(q, &restricted);
        // the V_{n-1} summand comes first in the decomposition
        let rows = s.complement(n - 1).len();
        let block: Vec<Vec<_>> = (0..restricted.source_rank())
            .map(|c| components.column(c)[..rows].iter().map(|e| projection.apply(e)).collect())
            .collect();
        differentials.push(FreeModuleMap::from_columns(&r, rows, &block));
    }
    let complex = FreeComplex::new(r, s.complement_ranks(), differentials)?;
    Ok(DescendedComplex { complex })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BettiTable {
    pub values: Vec<usize>,
}

impl BettiTable {
    pub fn get(&self, n: usize) -> Option<usize> {
        self.values.get(n).copied()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl From<Vec<usize>> for BettiTable {
    fn from(values: Vec<usize>) -> Self {
        BettiTable { values }
    }
}

/// Aligned two-row table: degrees over Betti numbers.
impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .values
            .iter()
            .enumerate()
            .map(|(n, b)| n.to_string().len().max(b.to_string().len()))
            .max()
            .unwrap_or(1);
        write!(f, "n   ")?;
        for n in 0..self.values.len() {
            write!(f, " {n:>width$}")?;
        }
        writeln!(f)?;
        write!(f, "beta")?;
        for b in &self.values {
            write!(f, " {b:>width$}")?;
        }
        writeln!(f)
    }
}

pub fn betti_table(complex: &FreeComplex) -> BettiTable {
    BettiTable::from(complex.ranks().to_vec())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoincareCheck {
    pub holds: bool,
    pub first_failure: Option<usize>,
    pub checks: Vec<Check>,
}

/// `beta^Q_n = sum_{i <= n} beta^R_i` for `0 <= n <= degree`, i.e.
/// `P^R(t) = (1 - t) P^Q(t)` up to `t^degree`.
pub fn poincare_check(over_q: &BettiTable, over_r: &BettiTable, degree: usize) -> Result<PoincareCheck> {
    if over_q.len() <= degree || over_r.len() <= degree {
        return Err(Error::Dimension(format!("Betti tables must reach degree {degree}")));
    }
    let mut partial = 0;
    let mut checks = Vec::with_capacity(degree + 1);
    for n in 0..=degree {
        partial += over_r.values[n];
        let bq = over_q.values[n];
        checks.push(
            Check::new(ConditionKind::Poincare, bq == partial)
                .n(n)
                .detail_if_failed(|| format!("beta^Q = {bq}, partial sum of beta^R = {partial}")),
        );
    }
    let first_failure = checks.iter().find(|c| !c.passed).and_then(|c| c.n);
    Ok(PoincareCheck { holds: first_failure.is_none(), first_failure, checks })
}

/// Degree-by-degree comparison of two Betti tables for `0 <= n <= degree`.
pub fn betti_match(descended: &BettiTable, oracle: &BettiTable, degree: usize) -> VerificationReport {
    let mut report = VerificationReport::new("betti comparison", degree);
    for n in 0..=degree {
        let (a, b) = (descended.get(n), oracle.get(n));
        report.push(
            Check::new(ConditionKind::BettiMatch, a.is_some() && a == b)
                .n(n)
                .detail_if_failed(|| format!("descended {a:?}, oracle {b:?}")),
        );
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{minimal_resolution, verify_complex, ModulePresentation};
    use crate::dg::build_sigma_system;
    use crate::tate::TateData;

    struct Case {
        descended: DescendedComplex,
        module_r: ModulePresentation,
        oracle: FreeComplex,
        over_q: FreeComplex,
    }

    fn run(vars: &[&str], ideal: &[&str], f: &str, g: &str, module: Option<&[&str]>, n: usize) -> Case {
        let q = Arc::new(LocalAlgebra::parse(101, vars, ideal).unwrap());
        let e = |s: &str| q.parse_element(s).unwrap();
        let tate = TateData::new(q.clone(), e(f), e(g), n).unwrap();
        let m = match module {
            None => ModulePresentation::residue_field(q.clone()),
            Some(rel) => ModulePresentation::cyclic(q.clone(), &rel.iter().map(|s| e(s)).collect::<Vec<_>>()),
        };
        let u = minimal_resolution(&m, n);
        let s = build_sigma_system(&tate, &u, &m).unwrap();
        let (r, proj) = q.quotient_by_principal(tate.f()).unwrap();
        let r = Arc::new(r);
        let descended = descend(&s, r.clone(), &proj).unwrap();
        let module_r = m.base_change(r, &proj);
        let oracle = minimal_resolution(&module_r, n);
        Case { descended, module_r, oracle, over_q: u }
    }

    #[test]
    fn dual_numbers_descend_to_residue_field() {
        let c = run(&["x"], &["x^2"], "x", "x", None, 8);
        assert_eq!(c.descended.ranks(), &[1, 0, 0, 0, 0, 0, 0, 0, 0]);
        assert!(verify_complex(&c.descended.complex, &c.module_r).all_passed());
        assert_eq!(betti_table(&c.oracle).values, vec![1, 0, 0, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn complete_intersection_descends_to_periodic_resolution() {
        let c = run(&["x", "y"], &["x^2", "y^2"], "x", "x", None, 6);
        assert_eq!(c.descended.ranks(), &[1; 7]);
        let r = c.descended.complex.algebra().clone();
        for n in 1..=6 {
            let d = c.descended.differential(n).entry(0, 0);
            // a unit multiple of y: nonzero, in n \ n^2
            assert_eq!(r.classify(d), crate::algebra::ElementClass::InMaximalNotSquare);
        }
        let report = verify_complex(&c.descended.complex, &c.module_r);
        assert!(report.all_passed(), "{report}");
        assert_eq!(betti_table(&c.over_q).values, vec![1, 2, 3, 4, 5, 6, 7]);
        let p = poincare_check(&betti_table(&c.over_q), &betti_table(&c.descended.complex), 6).unwrap();
        assert!(p.holds);
    }

    #[test]
    fn non_exact_pair_descent_fails_at_two() {
        let c = run(&["x", "y"], &["x^2", "x*y", "y^3"], "x", "y", Some(&["x"]), 6);
        assert_eq!(&c.descended.ranks()[..3], &[1, 0, 1]);
        let d2 = c.descended.differential(2);
        assert_eq!((d2.target_rank(), d2.source_rank()), (0, 1));
        let report = verify_complex(&c.descended.complex, &c.module_r);
        assert_eq!(report.first_failure(ConditionKind::Exactness).and_then(|f| f.n), Some(2));
        let p = poincare_check(&betti_table(&c.over_q), &betti_table(&c.oracle), 6).unwrap();
        assert!(!p.holds);
        assert_eq!(p.first_failure, Some(2));
    }

    #[test]
    fn ascii_table() {
        let t = BettiTable::from(vec![1, 2, 13]);
        assert_eq!(t.to_string(), "n     0  1  2\nbeta  1  2 13\n");
    }
}
