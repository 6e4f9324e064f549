//! Semi-free dg module structure over the Tate construction on a minimal free
//! resolution `U` of `M`, with `fM = 0`.
//!
//! The action of `y_i` on `U_n` is the map `sigma(i, n) : U_n -> U_{i+n}`.
//! Alongside the maps the builder chooses complements `V_n`, so that
//! `U_n = V_n ⊕ sigma(1, n-1) V_{n-1} ⊕ ... ⊕ sigma(n, 0) V_0`.
//!
//! Four families of conditions, all exact matrix identities inside the
//! truncation window `i + n <= N`:
//!
//! * `A(i, n)`: `d sigma(i, n) + (-1)^(i+1) sigma(i, n-1) d = f_i sigma(i-1, n)`
//! * `B(i, j, n)`: `sigma(i, n) sigma(j, n-j) = alpha(i, j) sigma(i+j, n-j)`
//! * `C(n)`: `Phi_n = [sigma(n+1-m, m)|V_m]_m : V_0 ⊕ ... ⊕ V_n -> U_{n+1}` is
//!   a split injection
//! * `D(n)`: the decomposition of `U_n` above is a direct sum

use std::borrow::Cow;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, LocalAlgebra};
use crate::complex::{invert, solve_preimages, FreeComplex, FreeModuleMap, ModulePresentation};
use crate::error::{Error, Result};
use crate::linalg::Subspace;
use crate::report::{Check, ConditionKind, VerificationReport};
use crate::tate::TateData;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaSystem {
    tate: TateData,
    complex: FreeComplex,
    /// `sigma[n][i - 1]` is `sigma(i, n)` for `1 <= i <= N - n`.
    sigma: Vec<Vec<FreeModuleMap>>,
    /// Columns of `U_n` spanning `V_n`.
    complements: Vec<Vec<usize>>,
    /// `phi[n]` for `n < N`, blocks ordered `m = 0..=n`.
    phi: Vec<FreeModuleMap>,
}

impl SigmaSystem {
    pub fn tate(&self) -> &TateData {
        &self.tate
    }

    pub fn complex(&self) -> &FreeComplex {
        &self.complex
    }

    pub fn degree(&self) -> usize {
        self.tate.degree()
    }

    fn algebra(&self) -> &LocalAlgebra {
        self.tate.algebra()
    }

    /// `sigma(i, n)` for `i >= 1`, `i + n <= N`.
    pub fn sigma(&self, i: usize, n: usize) -> &FreeModuleMap {
        assert!(i >= 1 && i + n <= self.degree(), "sigma({i},{n}) outside the truncation window");
        &self.sigma[n][i - 1]
    }

    pub fn sigma_mut(&mut self, i: usize, n: usize) -> &mut FreeModuleMap {
        assert!(i >= 1 && i + n <= self.degree(), "sigma({i},{n}) outside the truncation window");
        &mut self.sigma[n][i - 1]
    }

    /// `sigma(i, n)` including `sigma(0, n) = id`.
    fn sigma_or_identity(&self, i: usize, n: usize) -> Cow<'_, FreeModuleMap> {
        if i == 0 {
            Cow::Owned(FreeModuleMap::identity(self.algebra(), self.complex.rank(n)))
        } else {
            Cow::Borrowed(self.sigma(i, n))
        }
    }

    /// Basis columns of `U_n` spanning `V_n`.
    pub fn complement(&self, n: usize) -> &[usize] {
        &self.complements[n]
    }

    pub fn complement_ranks(&self) -> Vec<usize> {
        self.complements.iter().map(Vec::len).collect()
    }

    /// `Phi_n` as assembled by the builder, `n < N`.
    pub fn phi(&self, n: usize) -> &FreeModuleMap {
        &self.phi[n]
    }

    /// Every stored `(i, n)`, in storage order.
    pub fn indices(&self) -> Vec<(usize, usize)> {
        (0..=self.degree()).flat_map(|n| (1..=self.degree() - n).map(move |i| (i, n))).collect()
    }

    /// `y_i u` for `u in U_n`.
    pub fn act(&self, i: usize, n: usize, u: &[AlgebraElement]) -> Result<Vec<AlgebraElement>> {
        if i + n > self.degree() {
            return Err(Error::OutOfTruncation { i, n, degree: self.degree() });
        }
        if u.len() != self.complex.rank(n) {
            return Err(Error::Dimension(format!(
                "U_{n} has rank {}, got {} coordinates",
                self.complex.rank(n),
                u.len()
            )));
        }
        if i == 0 {
            return Ok(u.to_vec());
        }
        Ok(self.sigma(i, n).apply(self.algebra(), u))
    }

    /// The square matrix `[incl V_n | sigma(1, n-1)|V_{n-1} | ... | sigma(n, 0)|V_0]`.
    pub fn basis_change(&self, n: usize) -> FreeModuleMap {
        let alg = self.algebra();
        let rank = self.complex.rank(n);
        let mut blocks = vec![FreeModuleMap::identity(alg, rank).select_columns(alg, &self.complements[n])];
        for k in 1..=n {
            blocks.push(self.sigma(k, n - k).select_columns(alg, &self.complements[n - k]));
        }
        FreeModuleMap::hcat(alg, rank, &blocks)
    }

    /// Coordinates of `U_n` with respect to the decomposition
    /// `V_n ⊕ sigma(1, n-1) V_{n-1} ⊕ ... ⊕ sigma(n, 0) V_0`.
    pub fn decomposition(&self, n: usize) -> Result<FreeModuleMap> {
        invert(self.algebra(), &self.basis_change(n))
    }
}

/// Standard basis columns of `U = Q^rank` whose residues extend a basis of the
/// residue image of `phi`, first index first.
fn complement_columns(alg: &LocalAlgebra, phi: &FreeModuleMap, rank: usize) -> Vec<usize> {
    let residues = phi.residue_matrix(alg);
    let mut span = Subspace::column_space(&residues);
    let mut chosen = Vec::new();
    for c in 0..rank {
        let mut e = vec![0u32; rank];
        e[c] = 1;
        if span.insert(&e) {
            chosen.push(c);
        }
    }
    chosen
}

/// The double induction: outer on `n`, inner on `i = 1..=N-n`.
pub fn build_sigma_system(tate: &TateData, complex: &FreeComplex, module: &ModulePresentation) -> Result<SigmaSystem> {
    let alg = tate.algebra();
    if complex.algebra().as_ref() != alg.as_ref() || module.algebra().as_ref() != alg.as_ref() {
        return Err(Error::Hypothesis("resolution, module and Tate data must live over the same ring".into()));
    }
    let top = tate.degree();
    if complex.degree() < top {
        return Err(Error::Dimension(format!("resolution has length {}, need {top}", complex.degree())));
    }
    if !module.annihilated_by(tate.f()) {
        return Err(Error::NotAnnihilated);
    }
    let field = alg.field();

    let mut sigma: Vec<Vec<FreeModuleMap>> = Vec::with_capacity(top + 1);
    let mut complements: Vec<Vec<usize>> = Vec::with_capacity(top + 1);
    let mut phi: Vec<FreeModuleMap> = Vec::with_capacity(top);

    for n in 0..=top {
        let rank = complex.rank(n);
        let v_n = if n == 0 { (0..rank).collect() } else { complement_columns(alg, &phi[n - 1], rank) };

        let mut blocks = vec![FreeModuleMap::identity(alg, rank).select_columns(alg, &v_n)];
        for k in 1..=n {
            blocks.push(sigma[n - k][k - 1].select_columns(alg, &complements[n - k]));
        }
        let basis_change = FreeModuleMap::hcat(alg, rank, &blocks);
        if basis_change.source_rank() != rank {
            return Err(Error::Internal(format!(
                "D({n}): {} summand generators for U_{n} of rank {rank}",
                basis_change.source_rank()
            )));
        }
        let inverse =
            invert(alg, &basis_change).map_err(|_| Error::Internal(format!("D({n}): decomposition is not direct")))?;

        let mut row: Vec<FreeModuleMap> = Vec::with_capacity(top - n);
        for i in 1..=top - n {
            let f_i = tate.f_index(i);
            let sign = if i % 2 == 1 { 1 } else { field.neg(1) }; // (-1)^(i+1)
            let targets: Vec<Vec<AlgebraElement>> = v_n
                .iter()
                .map(|&c| {
                    let previous = if i == 1 {
                        let mut e = vec![alg.zero(); rank];
                        e[c] = alg.one();
                        e
                    } else {
                        row[i - 2].column(c)
                    };
                    let mut t: Vec<AlgebraElement> = previous.iter().map(|a| alg.mul(f_i, a)).collect();
                    if n >= 1 {
                        let through = sigma[n - 1][i - 1].apply(alg, &complex.differential(n).column(c));
                        for (x, y) in t.iter_mut().zip(&through) {
                            *x = alg.sub(x, &alg.scale(sign, y));
                        }
                    }
                    t
                })
                .collect();
            let mut columns = solve_preimages(alg, complex.differential(i + n), &targets).map_err(|_| {
                if i == 1 && n == 0 {
                    Error::NotAnnihilated
                } else {
                    Error::Internal(format!("sigma({i},{n}): no preimage on V_{n}"))
                }
            })?;
            for k in 1..=n {
                let a = tate.alpha(i, k);
                let s = &sigma[n - k][i + k - 1];
                for &c in &complements[n - k] {
                    columns.push(s.column(c).iter().map(|e| alg.scale(a, e)).collect());
                }
            }
            let on_summands = FreeModuleMap::from_columns(alg, complex.rank(i + n), &columns);
            row.push(on_summands.compose(alg, &inverse));
        }
        sigma.push(row);
        complements.push(v_n);

        if n < top {
            let blocks: Vec<FreeModuleMap> =
                (0..=n).map(|m| sigma[m][n - m].select_columns(alg, &complements[m])).collect();
            let phi_n = FreeModuleMap::hcat(alg, complex.rank(n + 1), &blocks);
            if phi_n.residue_matrix(alg).rank() != phi_n.source_rank() {
                return Err(Error::Internal(format!("C({n}): Phi_{n} is not a split injection")));
            }
            phi.push(phi_n);
        }
    }

    let differentials = complex.differentials()[..top].to_vec();
    let complex = FreeComplex::new(complex.algebra().clone(), complex.ranks()[..=top].to_vec(), differentials)?;
    Ok(SigmaSystem { tate: tate.clone(), complex, sigma, complements, phi })
}

fn mismatch(alg: &LocalAlgebra, lhs: &FreeModuleMap, rhs: &FreeModuleMap) -> String {
    match lhs.first_difference(rhs) {
        Some((r, c)) if r < lhs.target_rank() && c < lhs.source_rank() => {
            format!("entry ({r},{c}): {} != {}", alg.format(lhs.entry(r, c)), alg.format(rhs.entry(r, c)))
        }
        _ => "shape mismatch".into(),
    }
}

/// Re-checks every condition from the stored maps and complements alone; the
/// builder's `Phi` and basis changes are not consulted.
pub fn verify_conditions(s: &SigmaSystem) -> VerificationReport {
    let alg = s.algebra();
    let field = alg.field();
    let u = s.complex();
    let top = s.degree();
    let mut report = VerificationReport::new("dg module structure", top);

    for n in 0..=top {
        for i in 1..=top - n {
            let mut lhs = u.differential(i + n).compose(alg, s.sigma(i, n));
            if n >= 1 {
                let sign = if i % 2 == 1 { 1 } else { field.neg(1) };
                let tail = s.sigma(i, n - 1).compose(alg, u.differential(n)).scale_scalar(alg, sign);
                lhs = lhs.add(alg, &tail);
            }
            let rhs = s.sigma_or_identity(i - 1, n).scale(alg, s.tate().f_index(i));
            let ok = lhs == rhs;
            report.push(Check::new(ConditionKind::A, ok).i(i).n(n).detail_if_failed(|| mismatch(alg, &lhs, &rhs)));
        }
    }

    for n in 0..=top {
        for j in 0..=n {
            for i in 0..=top - n {
                let lhs = s.sigma_or_identity(i, n).compose(alg, &s.sigma_or_identity(j, n - j));
                let rhs = s.sigma_or_identity(i + j, n - j).scale_scalar(alg, crate::tate::alpha(i, j, field));
                let ok = lhs == rhs;
                report.push(
                    Check::new(ConditionKind::B, ok).i(i).j(j).n(n).detail_if_failed(|| mismatch(alg, &lhs, &rhs)),
                );
            }
        }
    }

    let valid_selection = |n: usize| {
        let v = &s.complements[n];
        v.windows(2).all(|w| w[0] < w[1]) && v.iter().all(|&c| c < u.rank(n))
    };
    let restricted = |k: usize, m: usize| s.sigma_or_identity(k, m).select_columns(alg, &s.complements[m]);

    for n in 0..top {
        let blocks: Vec<FreeModuleMap> = (0..=n).map(|m| restricted(n + 1 - m, m)).collect();
        let phi = FreeModuleMap::hcat(alg, u.rank(n + 1), &blocks);
        let rank = phi.residue_matrix(alg).rank();
        let ok = (0..=n).all(valid_selection) && rank == phi.source_rank();
        report.push(
            Check::new(ConditionKind::C, ok)
                .n(n)
                .detail_if_failed(|| format!("residue rank {rank} of {} columns", phi.source_rank())),
        );
    }

    for n in 0..=top {
        let blocks: Vec<FreeModuleMap> = (0..=n).map(|k| restricted(k, n - k)).collect();
        let b = FreeModuleMap::hcat(alg, u.rank(n), &blocks);
        let square = b.source_rank() == u.rank(n);
        let det = if square { b.residue_matrix(alg).determinant() } else { 0 };
        let ok = valid_selection(n) && square && det != 0;
        report.push(Check::new(ConditionKind::D, ok).n(n).detail_if_failed(|| {
            if square {
                "singular modulo n".into()
            } else {
                format!("{} summand generators for rank {}", b.source_rank(), u.rank(n))
            }
        }));
    }

    for n in 1..=top {
        for j in 1..=n {
            let full: Vec<FreeModuleMap> = (j..=n).map(|k| s.sigma(k, n - k).clone()).collect();
            let parts: Vec<FreeModuleMap> = (j..=n).map(|k| restricted(k, n - k)).collect();
            let sum_dim = FreeModuleMap::hcat(alg, u.rank(n), &full).expand(alg).rank();
            let direct_dim = FreeModuleMap::hcat(alg, u.rank(n), &parts).expand(alg).rank();
            let part_dims: usize = parts.iter().map(|p| p.expand(alg).rank()).sum();
            let ok = sum_dim == direct_dim && direct_dim == part_dims;
            report.push(Check::new(ConditionKind::Claim, ok).j(j).n(n).detail_if_failed(|| {
                format!("dim sum = {sum_dim}, dim span = {direct_dim}, sum of dims = {part_dims}")
            }));
        }
    }

    for n in 0..=top {
        let total: usize = s.complements[..=n].iter().map(Vec::len).sum();
        report.push(
            Check::new(ConditionKind::RankLaw, total == u.rank(n))
                .n(n)
                .detail_if_failed(|| format!("rank U_{n} = {}, sum of rank V = {total}", u.rank(n))),
        );
    }
    report
}

/// `f_{i-1} sigma(i, -)` is a chain map of degree `i` for `i >= 2`.
pub fn homotopy_check(s: &SigmaSystem) -> VerificationReport {
    let alg = s.algebra();
    let field = alg.field();
    let u = s.complex();
    let top = s.degree();
    let mut report = VerificationReport::new("homotopies", top);
    for i in 2..=top {
        let f = s.tate().f_index(i - 1);
        for n in 0..=top - i {
            let lhs = u.differential(i + n).compose(alg, s.sigma(i, n)).scale(alg, f);
            let rhs = if n == 0 {
                FreeModuleMap::zero(alg, lhs.target_rank(), lhs.source_rank())
            } else {
                let sign = if i % 2 == 0 { 1 } else { field.neg(1) };
                s.sigma(i, n - 1).compose(alg, u.differential(n)).scale(alg, f).scale_scalar(alg, sign)
            };
            let ok = lhs == rhs;
            report
                .push(Check::new(ConditionKind::Homotopy, ok).i(i).n(n).detail_if_failed(|| mismatch(alg, &lhs, &rhs)));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::complex::minimal_resolution;

    fn setup(vars: &[&str], ideal: &[&str], f: &str, g: &str, module: Option<&[&str]>, n: usize) -> SigmaSystem {
        let q = Arc::new(LocalAlgebra::parse(101, vars, ideal).unwrap());
        let e = |s: &str| q.parse_element(s).unwrap();
        let tate = TateData::new(q.clone(), e(f), e(g), n).unwrap();
        let m = match module {
            None => ModulePresentation::residue_field(q.clone()),
            Some(rel) => ModulePresentation::cyclic(q.clone(), &rel.iter().map(|s| e(s)).collect::<Vec<_>>()),
        };
        let u = minimal_resolution(&m, n);
        build_sigma_system(&tate, &u, &m).unwrap()
    }

    #[test]
    fn dual_numbers() {
        let s = setup(&["x"], &["x^2"], "x", "x", None, 8);
        let alg = s.tate().algebra().clone();
        assert_eq!(s.complement_ranks(), vec![1, 0, 0, 0, 0, 0, 0, 0, 0]);
        for i in 1..=8 {
            assert_eq!(s.sigma(i, 0), &FreeModuleMap::identity(&alg, 1));
        }
        assert!(s.sigma(1, 1).is_zero());
        let e0 = vec![alg.one()];
        assert_eq!(s.act(3, 0, &e0).unwrap(), vec![alg.one()]);
        assert_eq!(s.act(0, 0, &e0).unwrap(), e0);
        assert_eq!(s.act(9, 0, &e0).unwrap_err(), Error::OutOfTruncation { i: 9, n: 0, degree: 8 });
        let r = verify_conditions(&s);
        assert!(r.all_passed(), "{r}");
        assert!(homotopy_check(&s).all_passed());
    }

    #[test]
    fn complete_intersection_residue_field() {
        let s = setup(&["x", "y"], &["x^2", "y^2"], "x", "x", None, 6);
        assert_eq!(s.complement_ranks(), vec![1; 7]);
        let r = verify_conditions(&s);
        assert!(r.all_passed(), "{r}");
        assert!(homotopy_check(&s).all_passed());
    }

    #[test]
    fn non_exact_pair() {
        let s = setup(&["x", "y"], &["x^2", "x*y", "y^3"], "x", "y", Some(&["x"]), 6);
        assert_eq!(&s.complement_ranks()[..3], &[1, 0, 1]);
        let alg = s.tate().algebra().clone();
        assert_eq!(s.sigma(1, 0), &FreeModuleMap::identity(&alg, 1));
        assert_eq!(s.sigma(2, 0), &FreeModuleMap::from_columns(&alg, 2, &[vec![alg.zero(), alg.one()]]));
        let r = verify_conditions(&s);
        assert!(r.all_passed(), "{r}");
        assert!(homotopy_check(&s).all_passed());
    }

    #[test]
    fn module_not_annihilated() {
        let q = Arc::new(LocalAlgebra::parse(101, &["x", "y"], &["x^2", "y^2"]).unwrap());
        let x = q.parse_element("x").unwrap();
        let tate = TateData::new(q.clone(), x.clone(), x, 3).unwrap();
        let m = ModulePresentation::cyclic(q.clone(), &[q.parse_element("y").unwrap()]);
        let u = minimal_resolution(&m, 3);
        assert_eq!(build_sigma_system(&tate, &u, &m).unwrap_err(), Error::NotAnnihilated);
    }

    #[test]
    fn mutation_is_detected() {
        let mut s = setup(&["x"], &["x^2"], "x", "x", None, 4);
        let alg = s.tate().algebra().clone();
        let entry = alg.add(s.sigma(1, 1).entry(0, 0), &alg.one());
        s.sigma_mut(1, 1).set(0, 0, entry);
        let r = verify_conditions(&s);
        assert!(!r.kind_passed(ConditionKind::A) || !r.kind_passed(ConditionKind::B));
    }

    #[test]
    fn decomposition_inverts_basis_change() {
        let s = setup(&["x", "y"], &["x^2", "y^2"], "x", "x", None, 4);
        let alg = s.tate().algebra().clone();
        for n in 0..=4 {
            let d = s.decomposition(n).unwrap();
            assert_eq!(d.compose(&alg, &s.basis_change(n)), FreeModuleMap::identity(&alg, s.complex().rank(n)));
        }
    }
}
