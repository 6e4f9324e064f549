//! Free Q-modules, Q-linear maps as matrices of algebra elements, truncated
//! complexes and the minimal free resolution engine.
//!
//! Every module-theoretic question is answered by expanding a Q-linear map
//! into its k-linear matrix on the basis `{e_j * basis[b]}`; coordinates are
//! flattened as `j * dim + b`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, LocalAlgebra, Projection, SubmoduleBasis};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::report::{Check, ConditionKind, VerificationReport};

/// A Q-linear map `Q^source_rank -> Q^target_rank`, entries stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeModuleMap {
    source_rank: usize,
    target_rank: usize,
    entries: Vec<AlgebraElement>,
}

impl FreeModuleMap {
    pub fn zero(alg: &LocalAlgebra, target_rank: usize, source_rank: usize) -> Self {
        FreeModuleMap { source_rank, target_rank, entries: vec![alg.zero(); target_rank * source_rank] }
    }

    pub fn identity(alg: &LocalAlgebra, rank: usize) -> Self {
        let mut m = Self::zero(alg, rank, rank);
        for i in 0..rank {
            m.set(i, i, alg.one());
        }
        m
    }

    pub fn from_columns(alg: &LocalAlgebra, target_rank: usize, columns: &[Vec<AlgebraElement>]) -> Self {
        let mut m = Self::zero(alg, target_rank, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), target_rank, "column length must equal the target rank");
            for (r, a) in col.iter().enumerate() {
                m.set(r, c, a.clone());
            }
        }
        m
    }

    pub fn from_rows(alg: &LocalAlgebra, source_rank: usize, rows: &[Vec<AlgebraElement>]) -> Self {
        let mut m = Self::zero(alg, rows.len(), source_rank);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), source_rank, "row length must equal the source rank");
            for (c, a) in row.iter().enumerate() {
                m.set(r, c, a.clone());
            }
        }
        m
    }

    pub fn source_rank(&self) -> usize {
        self.source_rank
    }

    pub fn target_rank(&self) -> usize {
        self.target_rank
    }

    pub fn entry(&self, r: usize, c: usize) -> &AlgebraElement {
        &self.entries[r * self.source_rank + c]
    }

    pub fn set(&mut self, r: usize, c: usize, a: AlgebraElement) {
        self.entries[r * self.source_rank + c] = a;
    }

    pub fn entries(&self) -> &[AlgebraElement] {
        &self.entries
    }

    pub fn column(&self, c: usize) -> Vec<AlgebraElement> {
        (0..self.target_rank).map(|r| self.entry(r, c).clone()).collect()
    }

    pub fn select_columns(&self, alg: &LocalAlgebra, cols: &[usize]) -> FreeModuleMap {
        let columns: Vec<Vec<AlgebraElement>> = cols.iter().map(|&c| self.column(c)).collect();
        Self::from_columns(alg, self.target_rank, &columns)
    }

    /// Horizontal concatenation of maps into the same target.
    pub fn hcat(alg: &LocalAlgebra, target_rank: usize, blocks: &[FreeModuleMap]) -> FreeModuleMap {
        let columns: Vec<Vec<AlgebraElement>> = blocks
            .iter()
            .flat_map(|b| {
                assert_eq!(b.target_rank, target_rank);
                (0..b.source_rank).map(move |c| b.column(c))
            })
            .collect();
        Self::from_columns(alg, target_rank, &columns)
    }

    /// `self ∘ other`
    pub fn compose(&self, alg: &LocalAlgebra, other: &FreeModuleMap) -> FreeModuleMap {
        assert_eq!(self.source_rank, other.target_rank, "composition of incompatible maps");
        let mut out = Self::zero(alg, self.target_rank, other.source_rank);
        for r in 0..self.target_rank {
            for c in 0..other.source_rank {
                let mut acc = alg.zero();
                for m in 0..self.source_rank {
                    let a = self.entry(r, m);
                    let b = other.entry(m, c);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = alg.add(&acc, &alg.mul(a, b));
                }
                out.set(r, c, acc);
            }
        }
        out
    }

    pub fn add(&self, alg: &LocalAlgebra, other: &FreeModuleMap) -> FreeModuleMap {
        assert_eq!((self.target_rank, self.source_rank), (other.target_rank, other.source_rank));
        FreeModuleMap {
            source_rank: self.source_rank,
            target_rank: self.target_rank,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| alg.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, alg: &LocalAlgebra, other: &FreeModuleMap) -> FreeModuleMap {
        self.add(alg, &other.scale_scalar(alg, alg.field().neg(1)))
    }

    /// Multiplies every entry by the algebra element `a`.
    pub fn scale(&self, alg: &LocalAlgebra, a: &AlgebraElement) -> FreeModuleMap {
        self.map_entries(|e| alg.mul(a, e))
    }

    pub fn scale_scalar(&self, alg: &LocalAlgebra, c: u32) -> FreeModuleMap {
        self.map_entries(|e| alg.scale(c, e))
    }

    pub fn map_entries(&self, f: impl Fn(&AlgebraElement) -> AlgebraElement) -> FreeModuleMap {
        FreeModuleMap {
            source_rank: self.source_rank,
            target_rank: self.target_rank,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(AlgebraElement::is_zero)
    }

    /// First entry `(row, column)` where the two maps differ.
    pub fn first_difference(&self, other: &FreeModuleMap) -> Option<(usize, usize)> {
        if (self.target_rank, self.source_rank) != (other.target_rank, other.source_rank) {
            return Some((0, 0));
        }
        (0..self.entries.len())
            .find(|&i| self.entries[i] != other.entries[i])
            .map(|i| (i / self.source_rank, i % self.source_rank))
    }

    pub fn apply(&self, alg: &LocalAlgebra, v: &[AlgebraElement]) -> Vec<AlgebraElement> {
        assert_eq!(v.len(), self.source_rank);
        (0..self.target_rank)
            .map(|r| {
                v.iter().enumerate().fold(alg.zero(), |acc, (c, x)| {
                    if x.is_zero() {
                        acc
                    } else {
                        alg.add(&acc, &alg.mul(self.entry(r, c), x))
                    }
                })
            })
            .collect()
    }

    /// The matrix over k obtained by applying the augmentation entrywise.
    pub fn residue_matrix(&self, alg: &LocalAlgebra) -> Matrix {
        let mut m = Matrix::zeros(alg.field(), self.target_rank, self.source_rank);
        for r in 0..self.target_rank {
            for c in 0..self.source_rank {
                m.set(r, c, self.entry(r, c).augmentation());
            }
        }
        m
    }

    /// The k-linear matrix of this map.
    pub fn expand(&self, alg: &LocalAlgebra) -> Matrix {
        let dim = alg.dim();
        let mut m = Matrix::zeros(alg.field(), self.target_rank * dim, self.source_rank * dim);
        for c in 0..self.source_rank {
            for b in 0..dim {
                for r in 0..self.target_rank {
                    let img = alg.mul_by_basis(b, self.entry(r, c));
                    for (t, &x) in img.coeffs().iter().enumerate() {
                        m.set(r * dim + t, c * dim + b, x);
                    }
                }
            }
        }
        m
    }

    pub fn format(&self, alg: &LocalAlgebra) -> String {
        let rows: Vec<String> = (0..self.target_rank)
            .map(|r| {
                let cells: Vec<String> = (0..self.source_rank).map(|c| alg.format(self.entry(r, c))).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }
}

/// k-basis of `ker φ`.
pub fn kernel(alg: &LocalAlgebra, map: &FreeModuleMap) -> SubmoduleBasis {
    let ker = map.expand(alg).kernel();
    SubmoduleBasis::new(map.source_rank(), Subspace::span(alg.field(), map.source_rank() * alg.dim(), ker))
}

/// k-basis of `im φ`.
pub fn image(alg: &LocalAlgebra, map: &FreeModuleMap) -> Subspace {
    Subspace::column_space(&map.expand(alg))
}

/// Minimal generators of a submodule of a free module.
pub fn minimal_generators(alg: &LocalAlgebra, submodule: &SubmoduleBasis) -> Vec<Vec<AlgebraElement>> {
    submodule.minimal_generators(alg)
}

/// A preimage of `target` under `map`: the RREF solution of the expanded
/// system with all free variables set to zero.
pub fn solve_preimage(
    alg: &LocalAlgebra,
    map: &FreeModuleMap,
    target: &[AlgebraElement],
) -> Result<Vec<AlgebraElement>> {
    if target.len() != map.target_rank() {
        return Err(Error::Dimension(format!(
            "target has rank {}, map has target rank {}",
            target.len(),
            map.target_rank()
        )));
    }
    Ok(solve_preimages(alg, map, &[target.to_vec()])?.pop().unwrap())
}

/// [`solve_preimage`] for several targets sharing one elimination.
pub fn solve_preimages(
    alg: &LocalAlgebra,
    map: &FreeModuleMap,
    targets: &[Vec<AlgebraElement>],
) -> Result<Vec<Vec<AlgebraElement>>> {
    let rhs: Vec<Vec<u32>> = targets.iter().map(|t| alg.flatten(t)).collect();
    map.expand(alg)
        .solve_many(&rhs)
        .into_iter()
        .map(|x| {
            let mut v = alg.split(&x.ok_or(Error::NoPreimage)?);
            v.resize(map.source_rank(), alg.zero());
            Ok(v)
        })
        .collect()
}

/// Inverse of a square map that is invertible over Q.
pub fn invert(alg: &LocalAlgebra, map: &FreeModuleMap) -> Result<FreeModuleMap> {
    let r = map.source_rank();
    if map.target_rank() != r {
        return Err(Error::Dimension("only square maps can be inverted".into()));
    }
    let units: Vec<Vec<AlgebraElement>> = (0..r)
        .map(|j| {
            let mut e = vec![alg.zero(); r];
            e[j] = alg.one();
            e
        })
        .collect();
    let columns = solve_preimages(alg, map, &units).map_err(|_| Error::Internal("map is not invertible".into()))?;
    let inv = FreeModuleMap::from_columns(alg, r, &columns);
    if inv.compose(alg, map) != FreeModuleMap::identity(alg, r) {
        return Err(Error::Internal("map is not invertible".into()));
    }
    Ok(inv)
}

/// A truncated complex `U_N -> ... -> U_1 -> U_0` of finite free modules.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeComplex {
    algebra: Arc<LocalAlgebra>,
    ranks: Vec<usize>,
    /// `differentials[n - 1]` is `d_n : U_n -> U_{n-1}`.
    differentials: Vec<FreeModuleMap>,
}

impl FreeComplex {
    pub fn new(algebra: Arc<LocalAlgebra>, ranks: Vec<usize>, differentials: Vec<FreeModuleMap>) -> Result<Self> {
        if ranks.is_empty() || differentials.len() + 1 != ranks.len() {
            return Err(Error::Dimension("a complex needs ranks U_0..U_N and differentials d_1..d_N".into()));
        }
        for (n, d) in differentials.iter().enumerate() {
            if d.source_rank() != ranks[n + 1] || d.target_rank() != ranks[n] {
                return Err(Error::Dimension(format!("d_{} has the wrong shape", n + 1)));
            }
        }
        Ok(FreeComplex { algebra, ranks, differentials })
    }

    pub fn algebra(&self) -> &Arc<LocalAlgebra> {
        &self.algebra
    }

    /// Truncation degree `N`.
    pub fn degree(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks[n]
    }

    /// `d_n` for `1 <= n <= N`.
    pub fn differential(&self, n: usize) -> &FreeModuleMap {
        assert!(n >= 1 && n <= self.degree(), "d_{n} outside the truncation window");
        &self.differentials[n - 1]
    }

    pub fn differentials(&self) -> &[FreeModuleMap] {
        &self.differentials
    }
}

/// `M = coker(relations : Q^a -> Q^b)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModulePresentation {
    algebra: Arc<LocalAlgebra>,
    relations: FreeModuleMap,
}

impl ModulePresentation {
    pub fn new(algebra: Arc<LocalAlgebra>, relations: FreeModuleMap) -> Self {
        ModulePresentation { algebra, relations }
    }

    /// The residue field `k = Q / n`.
    pub fn residue_field(algebra: Arc<LocalAlgebra>) -> Self {
        let row: Vec<AlgebraElement> = (0..algebra.variables().len()).map(|i| algebra.variable(i).clone()).collect();
        let relations = FreeModuleMap::from_rows(&algebra, row.len(), &[row]);
        ModulePresentation { algebra, relations }
    }

    /// The cyclic module `Q / (elements)`.
    pub fn cyclic(algebra: Arc<LocalAlgebra>, elements: &[AlgebraElement]) -> Self {
        let relations = FreeModuleMap::from_rows(&algebra, elements.len(), &[elements.to_vec()]);
        ModulePresentation { algebra, relations }
    }

    /// Parses a `b x a` matrix of polynomial strings (one row per generator).
    pub fn parse(algebra: Arc<LocalAlgebra>, rows: &[Vec<String>]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Parse("module presentation needs at least one generator row".into()));
        }
        let a = rows[0].len();
        if rows.iter().any(|r| r.len() != a) {
            return Err(Error::Parse("module presentation rows have different lengths".into()));
        }
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| algebra.parse_element(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let relations = FreeModuleMap::from_rows(&algebra, a, &parsed);
        Ok(ModulePresentation { algebra, relations })
    }

    pub fn algebra(&self) -> &Arc<LocalAlgebra> {
        &self.algebra
    }

    pub fn relations(&self) -> &FreeModuleMap {
        &self.relations
    }

    pub fn generators(&self) -> usize {
        self.relations.target_rank()
    }

    /// `dim_k M`.
    pub fn dim(&self) -> usize {
        self.generators() * self.algebra.dim() - self.relations.expand(&self.algebra).rank()
    }

    /// Whether `a M = 0`.
    pub fn annihilated_by(&self, a: &AlgebraElement) -> bool {
        let alg = &self.algebra;
        let im = image(alg, &self.relations);
        (0..self.generators()).all(|j| {
            let mut v = vec![alg.zero(); self.generators()];
            v[j] = a.clone();
            im.contains(&alg.flatten(&v))
        })
    }

    /// The same relations read over a quotient ring.
    pub fn base_change(&self, target: Arc<LocalAlgebra>, projection: &Projection) -> Self {
        let relations = self.relations.map_entries(|e| projection.apply(e));
        ModulePresentation { algebra: target, relations }
    }
}

/// Minimal free resolution of `M` up to homological degree `degree`.
pub fn minimal_resolution(module: &ModulePresentation, degree: usize) -> FreeComplex {
    let alg = module.algebra().clone();
    let dim = alg.dim();
    let b = module.generators();
    let rel = module.relations();

    // minimal generators of M among the standard basis vectors
    let relation_image = image(&alg, rel);
    let mut acc = relation_image.clone();
    for j in 0..b {
        for t in 1..dim {
            let mut v = vec![0u32; b * dim];
            v[j * dim + t] = 1;
            acc.insert(&v);
        }
    }
    let mut chosen = Vec::new();
    for j in 0..b {
        let mut v = vec![0u32; b * dim];
        v[j * dim] = 1;
        if acc.insert(&v) {
            chosen.push(j);
        }
    }
    let r0 = chosen.len();

    // ker(U_0 -> M) = { v : inclusion(v) in im(rel) }
    let inclusion = FreeModuleMap::identity(&alg, b).select_columns(&alg, &chosen);
    let combined = FreeModuleMap::hcat(&alg, b, &[inclusion, rel.clone()]);
    let syz: Vec<Vec<u32>> = combined.expand(&alg).kernel().into_iter().map(|v| v[..r0 * dim].to_vec()).collect();
    let mut current = SubmoduleBasis::new(r0, Subspace::span(alg.field(), r0 * dim, syz));

    let mut ranks = vec![r0];
    let mut differentials = Vec::with_capacity(degree);
    for n in 1..=degree {
        let gens = current.minimal_generators(&alg);
        let d = FreeModuleMap::from_columns(&alg, ranks[n - 1], &gens);
        ranks.push(gens.len());
        if n < degree {
            current = kernel(&alg, &d);
        }
        differentials.push(d);
    }
    FreeComplex::new(alg, ranks, differentials).expect("shapes are consistent by construction")
}

/// Checks `d^2 = 0`, minimality, exactness at `1..N-1` and `dim coker d_1 = dim M`.
pub fn verify_complex(complex: &FreeComplex, module: &ModulePresentation) -> VerificationReport {
    let alg = complex.algebra();
    let top = complex.degree();
    let mut report = VerificationReport::new("free resolution", top);

    for n in 1..top {
        let dd = complex.differential(n).compose(alg, complex.differential(n + 1));
        let check = Check::new(ConditionKind::BoundarySquare, dd.is_zero()).n(n);
        report.push(check.detail_if_failed(|| {
            let (r, c) = dd.first_difference(&FreeModuleMap::zero(alg, dd.target_rank(), dd.source_rank())).unwrap();
            format!("entry ({r},{c}) = {}", alg.format(dd.entry(r, c)))
        }));
    }
    for n in 1..=top {
        let d = complex.differential(n);
        let unit = (0..d.target_rank())
            .flat_map(|r| (0..d.source_rank()).map(move |c| (r, c)))
            .find(|&(r, c)| alg.is_unit(d.entry(r, c)));
        let check = Check::new(ConditionKind::Minimality, unit.is_none()).n(n);
        report.push(check.detail_if_failed(|| {
            let (r, c) = unit.unwrap();
            format!("unit entry ({r},{c}) = {}", alg.format(d.entry(r, c)))
        }));
    }
    let ranks: Vec<usize> = (1..=top).map(|n| complex.differential(n).expand(alg).rank()).collect();
    for n in 1..top {
        let ker = complex.rank(n) * alg.dim() - ranks[n - 1];
        let im = ranks[n];
        report.push(
            Check::new(ConditionKind::Exactness, ker == im)
                .n(n)
                .detail_if_failed(|| format!("dim ker = {ker}, dim im = {im}")),
        );
    }
    let coker = complex.rank(0) * alg.dim() - ranks.first().copied().unwrap_or(0);
    let want = module.dim();
    report.push(
        Check::new(ConditionKind::H0, coker == want)
            .n(0)
            .detail_if_failed(|| format!("dim coker d_1 = {coker}, dim M = {want}")),
    );
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(vars: &[&str], gens: &[&str]) -> Arc<LocalAlgebra> {
        Arc::new(LocalAlgebra::parse(101, vars, gens).unwrap())
    }

    fn el(a: &LocalAlgebra, s: &str) -> AlgebraElement {
        a.parse_element(s).unwrap()
    }

    #[test]
    fn kernel_examples() {
        let q = alg(&["x"], &["x^2"]);
        let m = FreeModuleMap::from_rows(&q, 1, &[vec![el(&q, "x")]]);
        let k = kernel(&q, &m);
        assert_eq!(k.dim(), 1);
        assert_eq!(q.split(&k.vectors()[0]), vec![el(&q, "x")]);
        assert_eq!(kernel(&q, &FreeModuleMap::identity(&q, 1)).dim(), 0);
    }

    #[test]
    fn minimal_generator_examples() {
        let q = alg(&["x"], &["x^2"]);
        let k = kernel(&q, &FreeModuleMap::from_rows(&q, 1, &[vec![el(&q, "x")]]));
        assert_eq!(minimal_generators(&q, &k), vec![vec![el(&q, "x")]]);

        let q = alg(&["x", "y"], &["x^2", "y^2"]);
        let k = kernel(&q, &FreeModuleMap::from_rows(&q, 1, &[vec![el(&q, "x")]]));
        assert_eq!(minimal_generators(&q, &k).len(), 1);

        let q = alg(&["x", "y"], &["x^2", "x*y", "y^3"]);
        let k = kernel(&q, &FreeModuleMap::from_rows(&q, 1, &[vec![el(&q, "x")]]));
        assert_eq!(minimal_generators(&q, &k).len(), 2);
    }

    #[test]
    fn solve_preimage_examples() {
        let q = alg(&["x"], &["x^2"]);
        let m = FreeModuleMap::from_rows(&q, 1, &[vec![el(&q, "x")]]);
        assert_eq!(solve_preimage(&q, &m, &[el(&q, "x")]).unwrap(), vec![q.one()]);
        assert_eq!(solve_preimage(&q, &m, &[q.one()]).unwrap_err(), Error::NoPreimage);

        let q = alg(&["x", "y"], &["x^2", "x*y", "y^3"]);
        let m = FreeModuleMap::from_rows(&q, 2, &[vec![el(&q, "x"), el(&q, "y")]]);
        assert_eq!(solve_preimage(&q, &m, &[el(&q, "y")]).unwrap(), vec![q.zero(), q.one()]);
    }

    #[test]
    fn resolution_of_residue_field_over_dual_numbers() {
        let q = alg(&["x"], &["x^2"]);
        let m = ModulePresentation::residue_field(q.clone());
        let u = minimal_resolution(&m, 5);
        assert_eq!(u.ranks(), &[1, 1, 1, 1, 1, 1]);
        for n in 1..=5 {
            assert_eq!(u.differential(n), &FreeModuleMap::from_rows(&q, 1, &[vec![el(&q, "x")]]));
        }
        assert!(verify_complex(&u, &m).all_passed());
    }

    #[test]
    fn resolution_of_cyclic_module() {
        let q = alg(&["x", "y"], &["x^2", "x*y", "y^3"]);
        let m = ModulePresentation::cyclic(q.clone(), &[el(&q, "x")]);
        let u = minimal_resolution(&m, 2);
        assert_eq!(u.ranks(), &[1, 1, 2]);
        assert_eq!(u.differential(2), &FreeModuleMap::from_rows(&q, 2, &[vec![el(&q, "x"), el(&q, "y")]]));
        assert!(verify_complex(&u, &m).all_passed());
    }

    #[test]
    fn redundant_presentation_is_minimized() {
        // M = Q/(x) presented with a redundant generator e_2 = 0 and relation x e_1
        let q = alg(&["x", "y"], &["x^2", "y^2"]);
        let rows = vec![vec![el(&q, "x"), q.zero()], vec![q.zero(), q.one()]];
        let m = ModulePresentation::new(q.clone(), FreeModuleMap::from_rows(&q, 2, &rows));
        assert_eq!(m.dim(), 2);
        let u = minimal_resolution(&m, 3);
        assert_eq!(u.rank(0), 1);
        assert!(verify_complex(&u, &m).all_passed());
    }

    #[test]
    fn verify_flags_unit_differential() {
        let q = alg(&["x"], &["x^2"]);
        let m = ModulePresentation::residue_field(q.clone());
        let bad = FreeComplex::new(q.clone(), vec![1, 1], vec![FreeModuleMap::identity(&q, 1)]).unwrap();
        let report = verify_complex(&bad, &m);
        assert!(!report.kind_passed(ConditionKind::Minimality));
    }

    #[test]
    fn free_module_has_zero_resolution_tail() {
        let q = alg(&["x"], &["x^2"]);
        let m = ModulePresentation::parse(q.clone(), &[vec![]]).unwrap();
        let u = minimal_resolution(&m, 3);
        assert_eq!(u.ranks(), &[1, 0, 0, 0]);
        assert!(verify_complex(&u, &m).all_passed());
    }

    #[test]
    fn invert_unit_matrix() {
        let q = alg(&["x", "y"], &["x^2", "y^2"]);
        let rows = vec![vec![el(&q, "1 + x"), el(&q, "y")], vec![el(&q, "x*y"), el(&q, "2 - y")]];
        let m = FreeModuleMap::from_rows(&q, 2, &rows);
        let inv = invert(&q, &m).unwrap();
        assert_eq!(m.compose(&q, &inv), FreeModuleMap::identity(&q, 2));
        let singular = FreeModuleMap::from_rows(&q, 1, &[vec![el(&q, "x")]]);
        assert!(invert(&q, &singular).is_err());
    }
}
