//! The Tate construction `A = Q<y, t | dy = f, dt = g y>` over an artinian
//! local ring with `f g = 0`.
//!
//! `A` is free over `Q` on `y_0, y_1, ...` with `y_{2i} = t^(i)`,
//! `y_{2i+1} = y t^(i)`, differential `d y_i = f_i y_{i-1}` and products
//! `y_i y_j = alpha(i, j) y_{i+j}`. Only the structure constants are stored.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, ElementClass, LocalAlgebra};
use crate::complex::{FreeComplex, FreeModuleMap};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::report::{Check, ConditionKind, Expectation, VerificationReport};

/// `binom(n, k)` over the integers; `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for t in 0..k {
        // acc = binom(n, t) here, and binom(n, t) * (n - t) is divisible by t + 1
        acc = acc.checked_mul((n - t) as u128)? / (t as u128 + 1);
    }
    Some(acc)
}

/// The integer structure constant `alpha(i, j)`.
pub fn alpha_integer(i: usize, j: usize) -> Option<u128> {
    let (i, j) = (i as u64, j as u64);
    match (i % 2, j % 2) {
        (1, 1) => Some(0),
        (0, 0) => binomial((i + j) / 2, i / 2),
        (0, 1) => binomial((i + j - 1) / 2, i / 2),
        _ => binomial((i + j - 1) / 2, (i - 1) / 2),
    }
}

/// `alpha(i, j)` reduced into `field`.
pub fn alpha(i: usize, j: usize, field: PrimeField) -> u32 {
    match alpha_integer(i, j) {
        Some(a) => (a % field.characteristic() as u128) as u32,
        None => {
            // far outside desk scale: fall back to Pascal's rule mod p
            let (n, k) = match (i % 2, j % 2) {
                (1, 1) => return 0,
                (0, 0) => ((i + j) / 2, i / 2),
                (0, 1) => ((i + j - 1) / 2, i / 2),
                _ => ((i + j - 1) / 2, (i - 1) / 2),
            };
            binomial_mod(n, k, field)
        }
    }
}

fn binomial_mod(n: usize, k: usize, field: PrimeField) -> u32 {
    let mut row = vec![0u32; k + 1];
    row[0] = 1;
    for m in 1..=n {
        for t in (1..=k.min(m)).rev() {
            row[t] = field.add(row[t], row[t - 1]);
        }
    }
    row[k]
}

/// `f_i`: `f` for odd `i`, `g` for even `i`.
pub fn f_index<'a>(i: usize, f: &'a AlgebraElement, g: &'a AlgebraElement) -> &'a AlgebraElement {
    assert!(i >= 1, "f_i is defined for i >= 1");
    if i % 2 == 1 {
        f
    } else {
        g
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TateData {
    algebra: Arc<LocalAlgebra>,
    f: AlgebraElement,
    g: AlgebraElement,
    degree: usize,
    /// `alpha[i][j]` for `0 <= i, j <= degree`.
    alpha: Vec<Vec<u32>>,
}

impl TateData {
    pub fn new(algebra: Arc<LocalAlgebra>, f: AlgebraElement, g: AlgebraElement, degree: usize) -> Result<Self> {
        for (name, e) in [("f", &f), ("g", &g)] {
            match algebra.classify(e) {
                ElementClass::InMaximalNotSquare => {}
                ElementClass::Unit => return Err(Error::Hypothesis(format!("{name} is a unit"))),
                ElementClass::InMaximalSquare => return Err(Error::Hypothesis(format!("{name} in n^2"))),
            }
        }
        if !algebra.mul(&f, &g).is_zero() {
            return Err(Error::Hypothesis("f*g != 0".into()));
        }
        let field = algebra.field();
        let alpha = (0..=degree).map(|i| (0..=degree).map(|j| self::alpha(i, j, field)).collect()).collect();
        Ok(TateData { algebra, f, g, degree, alpha })
    }

    pub fn algebra(&self) -> &Arc<LocalAlgebra> {
        &self.algebra
    }

    pub fn f(&self) -> &AlgebraElement {
        &self.f
    }

    pub fn g(&self) -> &AlgebraElement {
        &self.g
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Tabulated `alpha(i, j)`, `i, j <= degree`.
    pub fn alpha(&self, i: usize, j: usize) -> u32 {
        self.alpha[i][j]
    }

    pub fn f_index(&self, i: usize) -> &AlgebraElement {
        f_index(i, &self.f, &self.g)
    }
}

/// The periodic rank-one complex `... -> Q y_2 -g-> Q y_1 -f-> Q y_0`.
pub fn tate_complex(tate: &TateData) -> FreeComplex {
    let alg = tate.algebra();
    let n = tate.degree();
    let differentials = (1..=n).map(|i| FreeModuleMap::from_rows(alg, 1, &[vec![tate.f_index(i).clone()]])).collect();
    FreeComplex::new(alg.clone(), vec![1; n + 1], differentials).expect("rank-one shapes")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactPairWitness {
    pub exact: bool,
    /// `ann(f) = (g)`
    pub annihilator_of_f_is_g: bool,
    /// `ann(g) = (f)`
    pub annihilator_of_g_is_f: bool,
    pub annihilator_of_f: Vec<String>,
    pub annihilator_of_g: Vec<String>,
}

pub fn is_exact_pair(alg: &LocalAlgebra, f: &AlgebraElement, g: &AlgebraElement) -> ExactPairWitness {
    let ann_f = alg.annihilator(f);
    let ann_g = alg.annihilator(g);
    let annihilator_of_f_is_g = ann_f.space.space() == &alg.principal_ideal(g);
    let annihilator_of_g_is_f = ann_g.space.space() == &alg.principal_ideal(f);
    ExactPairWitness {
        exact: annihilator_of_f_is_g && annihilator_of_g_is_f,
        annihilator_of_f_is_g,
        annihilator_of_g_is_f,
        annihilator_of_f: ann_f.generators.iter().map(|a| alg.format(a)).collect(),
        annihilator_of_g: ann_g.generators.iter().map(|a| alg.format(a)).collect(),
    }
}

/// Structure-constant identities for all indices up to the truncation, plus
/// `d^2 = 0` and exactness of the periodic complex.
pub fn verify_tate_algebra(tate: &TateData) -> VerificationReport {
    let alg = tate.algebra();
    let field = alg.field();
    let top = tate.degree();
    let mut report = VerificationReport::new("tate construction", top);
    let a = |i, j| alpha(i, j, field);

    for i in 0..=top {
        for j in 0..=top {
            report.push(
                Check::new(ConditionKind::AlphaSymmetry, a(i, j) == a(j, i))
                    .i(i)
                    .j(j)
                    .detail_if_failed(|| format!("{} != {}", a(i, j), a(j, i))),
            );
        }
    }
    for i in 0..=top {
        for j in 0..=top {
            for k in 0..=top {
                let lhs = field.mul(a(i, j), a(i + j, k));
                let rhs = field.mul(a(j, k), a(i, j + k));
                report.push(
                    Check::new(ConditionKind::AlphaAssociativity, lhs == rhs)
                        .i(i)
                        .j(j)
                        .k(k)
                        .detail_if_failed(|| format!("{lhs} != {rhs}")),
                );
            }
        }
    }
    for i in 1..=top {
        for j in 1..=top {
            let sign = if i % 2 == 0 { 1 } else { field.neg(1) };
            let lhs = alg.add(
                &alg.scale(a(i - 1, j), tate.f_index(i)),
                &alg.scale(field.mul(sign, a(i, j - 1)), tate.f_index(j)),
            );
            let rhs = alg.scale(a(i, j), tate.f_index(i + j));
            report.push(
                Check::new(ConditionKind::AlphaLeibniz, lhs == rhs)
                    .i(i)
                    .j(j)
                    .detail_if_failed(|| format!("{} != {}", alg.format(&lhs), alg.format(&rhs))),
            );
        }
    }

    let complex = tate_complex(tate);
    for n in 1..top {
        let dd = complex.differential(n).compose(alg, complex.differential(n + 1));
        report.push(Check::new(ConditionKind::BoundarySquare, dd.is_zero()).n(n));
    }
    let witness = is_exact_pair(alg, tate.f(), tate.g());
    let ranks: Vec<usize> = (1..=top).map(|n| complex.differential(n).expand(alg).rank()).collect();
    for n in 1..top {
        let ker = alg.dim() - ranks[n - 1];
        let im = ranks[n];
        // H_n = ann(f_n) / (f_{n+1})
        let predicted = if n % 2 == 1 { witness.annihilator_of_f_is_g } else { witness.annihilator_of_g_is_f };
        let mut check = Check::new(ConditionKind::Exactness, ker == im)
            .n(n)
            .detail_if_failed(|| format!("dim ker = {ker}, dim im = {im}"));
        check.expectation = if predicted { Expectation::Holds } else { Expectation::Fails };
        report.push(check);
    }
    report
}
