//! Artinian local k-algebras `Q = k[x_1..x_m]/I` given by structure
//! constants on a standard monomial basis.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::groebner::{buchberger, normal_form, standard_monomials, GroebnerLimits};
use crate::linalg::{Matrix, Subspace};
use crate::poly::{Monomial, MonomialOrder, Polynomial};

/// Coordinates of an algebra element in the standard monomial basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AlgebraElement(Vec<u32>);

impl AlgebraElement {
    pub fn from_coeffs(coeffs: Vec<u32>) -> Self {
        AlgebraElement(coeffs)
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Image under the augmentation `Q -> k`.
    pub fn augmentation(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ElementClass {
    Unit,
    #[serde(rename = "in-n-minus-n2")]
    InMaximalNotSquare,
    #[serde(rename = "in-n2")]
    InMaximalSquare,
}

impl fmt::Display for ElementClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ElementClass::Unit => "unit",
            ElementClass::InMaximalNotSquare => "in n minus n^2",
            ElementClass::InMaximalSquare => "in n^2",
        })
    }
}

/// A k-basis, in RREF, of a Q-submodule of the free module `Q^ambient_rank`.
/// Vectors are flattened: free coordinate `j`, basis index `b` sits at
/// position `j * dim + b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubmoduleBasis {
    ambient_rank: usize,
    space: Subspace,
}

impl SubmoduleBasis {
    pub fn new(ambient_rank: usize, space: Subspace) -> Self {
        SubmoduleBasis { ambient_rank, space }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn vectors(&self) -> &[Vec<u32>] {
        self.space.basis()
    }

    /// The k-span of `n * K`.
    pub fn maximal_ideal_multiple(&self, alg: &LocalAlgebra) -> Subspace {
        let mut out = Subspace::zero(alg.field(), self.space.ambient());
        for v in self.vectors() {
            for b in 1..alg.dim() {
                out.insert(&alg.mul_flat_by_basis(b, v));
            }
        }
        out
    }

    /// Elements whose residues form a k-basis of `K / nK`: the RREF basis
    /// vectors of `K` that are independent modulo `nK`, first index first.
    pub fn minimal_generators(&self, alg: &LocalAlgebra) -> Vec<Vec<AlgebraElement>> {
        let mut acc = self.maximal_ideal_multiple(alg);
        let mut gens = Vec::new();
        for v in self.vectors() {
            if acc.insert(v) {
                gens.push(alg.split(v));
            }
        }
        gens
    }
}

/// Annihilator of an element, with minimal generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Annihilator {
    pub space: SubmoduleBasis,
    pub generators: Vec<AlgebraElement>,
}

/// The surjection `Q -> R = Q/(f)` as images of the basis of `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Projection {
    field: PrimeField,
    /// Indices of the basis elements of `Q` kept as the basis of `R`.
    pub kept: Vec<usize>,
    images: Vec<AlgebraElement>,
}

impl Projection {
    pub fn apply(&self, a: &AlgebraElement) -> AlgebraElement {
        let k = self.field;
        let mut out = vec![0u32; self.kept.len()];
        for (i, &c) in a.coeffs().iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(self.images[i].coeffs()) {
                *o = k.mul_add(c, x, *o);
            }
        }
        AlgebraElement(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalAlgebra {
    field: PrimeField,
    variables: Vec<String>,
    order: MonomialOrder,
    /// Reduced Groebner basis of the defining ideal.
    ideal: Vec<Polynomial>,
    basis: Vec<Monomial>,
    /// `mult[i][j] = basis[i] * basis[j]`
    mult: Vec<Vec<AlgebraElement>>,
    variable_elements: Vec<AlgebraElement>,
    maximal_square: Subspace,
}

fn coefficient_vector(p: &Polynomial, index: &BTreeMap<&Monomial, usize>, dim: usize) -> AlgebraElement {
    let mut v = vec![0u32; dim];
    for (m, c) in p.terms() {
        v[index[m]] = c;
    }
    AlgebraElement(v)
}

impl LocalAlgebra {
    /// Builds and validates `k[vars]/(gens)` with `k = F_p`.
    pub fn build(p: u32, variables: &[String], gens: &[Polynomial], limits: GroebnerLimits) -> Result<Self> {
        let field = PrimeField::new(p)?;
        if gens.is_empty() {
            return Err(Error::Hypothesis("ideal generators must be nonempty".into()));
        }
        let order = MonomialOrder::DegRevLex;
        let nvars = variables.len();
        let ideal = buchberger(gens, order, limits)?;
        let basis = standard_monomials(&ideal, order, variables)?;
        let dim = basis.len();
        let index: BTreeMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();

        let mut mult = vec![vec![AlgebraElement(vec![0; dim]); dim]; dim];
        for i in 0..dim {
            for j in i..dim {
                let prod = Polynomial::term(field, basis[i].mul(&basis[j]), 1);
                let v = coefficient_vector(&normal_form(&prod, &ideal, order), &index, dim);
                mult[i][j] = v.clone();
                mult[j][i] = v;
            }
        }
        let variable_elements = (0..nvars)
            .map(|v| {
                coefficient_vector(&normal_form(&Polynomial::variable(field, v, nvars), &ideal, order), &index, dim)
            })
            .collect();

        let alg = Self::from_parts(field, variables.to_vec(), order, ideal, basis, mult, variable_elements);
        for (v, x) in alg.variable_elements.iter().enumerate() {
            let mut power = x.clone();
            for _ in 1..dim.max(1) {
                power = alg.mul(&power, x);
            }
            if !power.is_zero() {
                return Err(Error::NotLocal { variable: variables[v].clone() });
            }
        }
        if let Some(g) = gens.iter().find(|g| g.constant_term() != 0) {
            return Err(Error::AugmentationUndefined { generator: g.display(variables).to_string() });
        }
        Ok(alg)
    }

    /// Parses the generators and calls [`LocalAlgebra::build`].
    pub fn parse(p: u32, variables: &[&str], gens: &[&str]) -> Result<Self> {
        let vars: Vec<String> = variables.iter().map(|s| s.to_string()).collect();
        let field = PrimeField::new(p)?;
        let polys = gens.iter().map(|g| Polynomial::parse(g, &vars, field)).collect::<Result<Vec<_>>>()?;
        Self::build(p, &vars, &polys, GroebnerLimits::default())
    }

    fn from_parts(
        field: PrimeField,
        variables: Vec<String>,
        order: MonomialOrder,
        ideal: Vec<Polynomial>,
        basis: Vec<Monomial>,
        mult: Vec<Vec<AlgebraElement>>,
        variable_elements: Vec<AlgebraElement>,
    ) -> Self {
        let dim = basis.len();
        let maximal_square = Subspace::span(
            field,
            dim,
            (1..dim).flat_map(|i| (1..dim).map(move |j| (i, j))).map(|(i, j)| mult[i][j].0.clone()),
        );
        LocalAlgebra { field, variables, order, ideal, basis, mult, variable_elements, maximal_square }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn ideal(&self) -> &[Polynomial] {
        &self.ideal
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// k-basis of the square of the maximal ideal, as coordinate vectors.
    pub fn maximal_square(&self) -> &Subspace {
        &self.maximal_square
    }

    pub fn variable(&self, i: usize) -> &AlgebraElement {
        &self.variable_elements[i]
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement(vec![0; self.dim()])
    }

    pub fn one(&self) -> AlgebraElement {
        self.basis_element(0)
    }

    pub fn basis_element(&self, i: usize) -> AlgebraElement {
        let mut v = vec![0; self.dim()];
        v[i] = 1;
        AlgebraElement(v)
    }

    pub fn scalar(&self, c: u32) -> AlgebraElement {
        let mut v = vec![0; self.dim()];
        if !v.is_empty() {
            v[0] = self.field.reduce(c as u64);
        }
        AlgebraElement(v)
    }

    pub fn add(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        AlgebraElement(a.0.iter().zip(&b.0).map(|(&x, &y)| self.field.add(x, y)).collect())
    }

    pub fn sub(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        AlgebraElement(a.0.iter().zip(&b.0).map(|(&x, &y)| self.field.sub(x, y)).collect())
    }

    pub fn neg(&self, a: &AlgebraElement) -> AlgebraElement {
        AlgebraElement(a.0.iter().map(|&x| self.field.neg(x)).collect())
    }

    pub fn scale(&self, c: u32, a: &AlgebraElement) -> AlgebraElement {
        AlgebraElement(a.0.iter().map(|&x| self.field.mul(c, x)).collect())
    }

    pub fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let k = self.field;
        let mut out = vec![0u32; self.dim()];
        for (i, &ai) in a.0.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.0.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                let c = k.mul(ai, bj);
                for (o, &m) in out.iter_mut().zip(&self.mult[i][j].0) {
                    if m != 0 {
                        *o = k.mul_add(c, m, *o);
                    }
                }
            }
        }
        AlgebraElement(out)
    }

    /// `basis[b] * a`
    pub fn mul_by_basis(&self, b: usize, a: &AlgebraElement) -> AlgebraElement {
        let k = self.field;
        let mut out = vec![0u32; self.dim()];
        for (i, &ai) in a.0.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (o, &m) in out.iter_mut().zip(&self.mult[i][b].0) {
                *o = k.mul_add(ai, m, *o);
            }
        }
        AlgebraElement(out)
    }

    pub fn is_unit(&self, a: &AlgebraElement) -> bool {
        a.augmentation() != 0
    }

    /// Flattens a free-module element into k-coordinates.
    pub fn flatten(&self, v: &[AlgebraElement]) -> Vec<u32> {
        v.iter().flat_map(|a| a.0.iter().copied()).collect()
    }

    /// Inverse of [`LocalAlgebra::flatten`].
    pub fn split(&self, v: &[u32]) -> Vec<AlgebraElement> {
        let dim = self.dim();
        if dim == 0 {
            return Vec::new();
        }
        v.chunks(dim).map(|c| AlgebraElement(c.to_vec())).collect()
    }

    /// Multiplies every coordinate of a flattened free-module element by `basis[b]`.
    pub fn mul_flat_by_basis(&self, b: usize, v: &[u32]) -> Vec<u32> {
        let dim = self.dim();
        let mut out = Vec::with_capacity(v.len());
        for chunk in v.chunks(dim) {
            out.extend(self.mul_by_basis(b, &AlgebraElement(chunk.to_vec())).0);
        }
        out
    }

    /// The k-span of the Q-submodule of `Q^rank` generated by `elements`.
    pub fn module_span(&self, rank: usize, elements: &[Vec<AlgebraElement>]) -> Subspace {
        let mut s = Subspace::zero(self.field, rank * self.dim());
        for e in elements {
            let flat = self.flatten(e);
            for b in 0..self.dim() {
                s.insert(&self.mul_flat_by_basis(b, &flat));
            }
        }
        s
    }

    /// Matrix of `x -> a * x` on the basis.
    pub fn multiplication_matrix(&self, a: &AlgebraElement) -> Matrix {
        let cols: Vec<Vec<u32>> = (0..self.dim()).map(|b| self.mul_by_basis(b, a).0).collect();
        Matrix::from_columns(self.field, self.dim(), &cols)
    }

    /// The principal ideal `(a)` as a k-subspace.
    pub fn principal_ideal(&self, a: &AlgebraElement) -> Subspace {
        Subspace::column_space(&self.multiplication_matrix(a))
    }

    pub fn classify(&self, a: &AlgebraElement) -> ElementClass {
        if self.is_unit(a) {
            ElementClass::Unit
        } else if self.maximal_square.contains(&a.0) {
            ElementClass::InMaximalSquare
        } else {
            ElementClass::InMaximalNotSquare
        }
    }

    pub fn annihilator(&self, a: &AlgebraElement) -> Annihilator {
        let kernel = self.multiplication_matrix(a).kernel();
        let space = SubmoduleBasis::new(1, Subspace::span(self.field, self.dim(), kernel));
        let generators = space.minimal_generators(self).into_iter().map(|mut v| v.remove(0)).collect();
        Annihilator { space, generators }
    }

    /// `R = Q/(f)` with basis the first basis monomials of `Q` whose residues
    /// are independent, together with the projection `Q -> R`.
    pub fn quotient_by_principal(&self, f: &AlgebraElement) -> Result<(LocalAlgebra, Projection)> {
        let dim = self.dim();
        let ideal_f = self.principal_ideal(f);
        let mut acc = ideal_f.clone();
        let mut kept = Vec::new();
        for i in 0..dim {
            if acc.insert(&self.basis_element(i).0) {
                kept.push(i);
            }
        }
        let mut columns: Vec<Vec<u32>> = kept.iter().map(|&i| self.basis_element(i).0).collect();
        columns.extend(ideal_f.basis().iter().cloned());
        let change = Matrix::from_columns(self.field, dim, &columns);
        let images: Vec<AlgebraElement> = (0..dim)
            .map(|i| {
                let x = change.solve(&self.basis_element(i).0).expect("kept basis and (f) span Q");
                AlgebraElement(x[..kept.len()].to_vec())
            })
            .collect();
        let projection = Projection { field: self.field, kept: kept.clone(), images };

        let mut gens = self.ideal.clone();
        gens.push(self.to_polynomial(f));
        let ideal = buchberger(&gens, self.order, GroebnerLimits::default())?;
        let basis: Vec<Monomial> = kept.iter().map(|&i| self.basis[i].clone()).collect();
        let r_dim = kept.len();
        let mut mult = vec![vec![AlgebraElement(vec![0; r_dim]); r_dim]; r_dim];
        for (a, &i) in kept.iter().enumerate() {
            for (b, &j) in kept.iter().enumerate() {
                mult[a][b] = projection.apply(&self.mult[i][j]);
            }
        }
        let variable_elements = self.variable_elements.iter().map(|x| projection.apply(x)).collect();
        let r = LocalAlgebra::from_parts(
            self.field,
            self.variables.clone(),
            self.order,
            ideal,
            basis,
            mult,
            variable_elements,
        );
        Ok((r, projection))
    }

    /// Evaluates a polynomial in the variables of this algebra.
    pub fn element_from_polynomial(&self, p: &Polynomial) -> AlgebraElement {
        let mut out = self.zero();
        for (m, c) in p.terms() {
            let mut t = self.one();
            for (v, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    t = self.mul(&t, &self.variable_elements[v]);
                }
            }
            out = self.add(&out, &self.scale(c, &t));
        }
        out
    }

    pub fn parse_element(&self, s: &str) -> Result<AlgebraElement> {
        let p = Polynomial::parse(s, &self.variables, self.field)?;
        Ok(self.element_from_polynomial(&p))
    }

    /// Lifts an element to a polynomial supported on the basis monomials.
    pub fn to_polynomial(&self, a: &AlgebraElement) -> Polynomial {
        let mut p = Polynomial::zero(self.field, self.variables.len());
        for (m, &c) in self.basis.iter().zip(&a.0) {
            p.add_term(m.clone(), c);
        }
        p
    }

    pub fn format(&self, a: &AlgebraElement) -> String {
        self.to_polynomial(a).display(&self.variables).to_string()
    }

    /// Exhaustive check that the structure constants are commutative,
    /// associative and unital.
    pub fn check_structure(&self) -> bool {
        let dim = self.dim();
        let one = self.one();
        for i in 0..dim {
            let ei = self.basis_element(i);
            if self.mul(&one, &ei) != ei {
                return false;
            }
            for j in 0..dim {
                if self.mult[i][j] != self.mult[j][i] {
                    return false;
                }
                for l in 0..dim {
                    let left = self.mul_by_basis(l, &self.mult[i][j]);
                    let right = self.mul_by_basis(i, &self.mult[j][l]);
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }
}
