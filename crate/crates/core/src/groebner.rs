//! Normal forms, Buchberger's algorithm and standard monomial bases for
//! zero-dimensional ideals.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, Polynomial};

/// Resource bound on the size of intermediate Groebner bases.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroebnerLimits {
    pub max_basis: usize,
}

impl GroebnerLimits {
    pub const ENV_VAR: &'static str = "TATE_RESOLVE_MAX_BASIS";

    /// Reads the bound from `TATE_RESOLVE_MAX_BASIS`, falling back to the default.
    pub fn from_env() -> Self {
        std::env::var(Self::ENV_VAR)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .map(|max_basis| GroebnerLimits { max_basis })
            .unwrap_or_default()
    }
}

impl Default for GroebnerLimits {
    fn default() -> Self {
        GroebnerLimits { max_basis: 2000 }
    }
}

/// Fully reduces `p` by `basis`: no term of the result is divisible by a
/// leading monomial of `basis`.
pub fn normal_form(p: &Polynomial, basis: &[Polynomial], order: MonomialOrder) -> Polynomial {
    let leads: Vec<(Monomial, u32)> =
        basis.iter().filter_map(|g| g.leading_term(order).map(|(m, c)| (m.clone(), c))).collect();
    let divisors: Vec<(&Polynomial, &(Monomial, u32))> =
        basis.iter().filter(|g| !g.is_zero()).zip(leads.iter()).collect();
    let k = p.field();
    let mut rest = p.clone();
    let mut remainder = Polynomial::zero(k, p.nvars());
    while let Some((m, c)) = rest.leading_term(order).map(|(m, c)| (m.clone(), c)) {
        match divisors.iter().find(|(_, (lm, _))| lm.divides(&m)) {
            Some((g, (lm, lc))) => {
                let q = m.div(lm).expect("divisibility checked");
                let factor = k.mul(c, k.inv(*lc).expect("nonzero leading coefficient"));
                rest = rest.sub(&g.mul_term(&q, factor));
            }
            None => {
                remainder.add_term(m.clone(), c);
                rest.add_term(m, k.neg(c));
            }
        }
    }
    remainder
}

fn s_polynomial(f: &Polynomial, g: &Polynomial, order: MonomialOrder) -> Polynomial {
    let (mf, cf) = f.leading_term(order).expect("nonzero");
    let (mg, cg) = g.leading_term(order).expect("nonzero");
    let k = f.field();
    let l = mf.lcm(mg);
    let a = f.mul_term(&l.div(mf).unwrap(), k.inv(cf).unwrap());
    let b = g.mul_term(&l.div(mg).unwrap(), k.inv(cg).unwrap());
    a.sub(&b)
}

/// Reduced Groebner basis of the ideal generated by `gens`.
///
/// Critical pairs are processed by the normal strategy (smallest lcm of
/// leading monomials first), ties broken by lexicographic pair index. The
/// result is monic and sorted by increasing leading monomial.
pub fn buchberger(gens: &[Polynomial], order: MonomialOrder, limits: GroebnerLimits) -> Result<Vec<Polynomial>> {
    let mut basis: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic(order)).collect();
    if basis.len() > limits.max_basis {
        return Err(Error::ResourceLimit { limit: limits.max_basis });
    }
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.insert((i, j));
        }
    }
    loop {
        let next = pairs.iter().copied().min_by(|&(a, b), &(c, d)| {
            let l1 = basis[a].leading_monomial(order).unwrap().lcm(basis[b].leading_monomial(order).unwrap());
            let l2 = basis[c].leading_monomial(order).unwrap().lcm(basis[d].leading_monomial(order).unwrap());
            order.cmp(&l1, &l2).then_with(|| (a, b).cmp(&(c, d)))
        });
        let Some((i, j)) = next else { break };
        pairs.remove(&(i, j));
        let lm_i = basis[i].leading_monomial(order).unwrap();
        let lm_j = basis[j].leading_monomial(order).unwrap();
        if lm_i.is_coprime(lm_j) {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], order);
        let r = normal_form(&s, &basis, order);
        if !r.is_zero() {
            basis.push(r.monic(order));
            if basis.len() > limits.max_basis {
                return Err(Error::ResourceLimit { limit: limits.max_basis });
            }
            let n = basis.len() - 1;
            for i in 0..n {
                pairs.insert((i, n));
            }
        }
    }
    Ok(reduce_basis(basis, order))
}

fn reduce_basis(basis: Vec<Polynomial>, order: MonomialOrder) -> Vec<Polynomial> {
    // drop elements whose leading monomial is divisible by an earlier-kept or other one
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (idx, g) in basis.iter().enumerate() {
        let lm = g.leading_monomial(order).unwrap();
        let redundant = basis.iter().enumerate().any(|(jdx, h)| {
            let lh = h.leading_monomial(order).unwrap();
            jdx != idx && lh.divides(lm) && (lh != lm || jdx < idx)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Polynomial> =
            minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
        let lm = minimal[i].leading_term(order).map(|(m, c)| (m.clone(), c)).unwrap();
        let tail = {
            let mut t = minimal[i].clone();
            t.add_term(lm.0.clone(), minimal[i].field().neg(lm.1));
            normal_form(&t, &others, order)
        };
        let mut g = tail;
        g.add_term(lm.0, lm.1);
        reduced.push(g.monic(order));
    }
    reduced.sort_by(|a, b| order.cmp(a.leading_monomial(order).unwrap(), b.leading_monomial(order).unwrap()));
    reduced
}

/// Monomials outside the leading-term ideal of `gb`, sorted by degree and,
/// within a degree, from largest to smallest under `order`.
///
/// Fails with [`Error::NotArtinian`] when some variable has no pure power
/// among the leading monomials.
pub fn standard_monomials(gb: &[Polynomial], order: MonomialOrder, vars: &[String]) -> Result<Vec<Monomial>> {
    let nvars = vars.len();
    let leads: Vec<&Monomial> = gb.iter().filter_map(|g| g.leading_monomial(order)).collect();
    let mut bounds = vec![None::<u32>; nvars];
    for m in &leads {
        if m.is_one() {
            return Ok(Vec::new());
        }
        if let Some(v) = m.pure_power_of() {
            let e = m.exponents()[v];
            bounds[v] = Some(bounds[v].map_or(e, |b: u32| b.min(e)));
        }
    }
    let bounds: Vec<u32> = bounds
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| Error::NotArtinian { variable: vars[i].clone() }))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    let mut exps = vec![0u32; nvars];
    loop {
        let m = Monomial::new(exps.clone());
        if !leads.iter().any(|l| l.divides(&m)) {
            out.push(m);
        }
        // odometer over the box
        let mut i = 0;
        while i < nvars {
            exps[i] += 1;
            if exps[i] < bounds[i] {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
        if i == nvars {
            break;
        }
    }
    out.sort_by(|a, b| match a.degree().cmp(&b.degree()) {
        Ordering::Equal => order.cmp(b, a),
        o => o,
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn polys(v: &[String], ss: &[&str]) -> Vec<Polynomial> {
        let k = PrimeField::new(101).unwrap();
        ss.iter().map(|s| Polynomial::parse(s, v, k).unwrap()).collect()
    }

    const O: MonomialOrder = MonomialOrder::DegRevLex;

    #[test]
    fn normal_form_examples() {
        let v = vars(&["x", "y"]);
        let g = polys(&v, &["x^2"]);
        assert!(normal_form(&polys(&v, &["x^2"])[0], &g, O).is_zero());

        let g = polys(&v, &["x^2", "y^2"]);
        let p = polys(&v, &["x*y + y"])[0].clone();
        assert_eq!(normal_form(&p, &g, O), p);

        // x^3 + x  ->  x*(x^2 - y) leaves x*y + x, which is reduced
        let g = polys(&v, &["x^2 - y", "y^2"]);
        let p = polys(&v, &["x^3 + x"])[0].clone();
        assert_eq!(normal_form(&p, &g, O), polys(&v, &["x*y + x"])[0]);
    }

    #[test]
    fn buchberger_examples() {
        let v = vars(&["x", "y"]);
        let lim = GroebnerLimits::default();
        let gb = buchberger(&polys(&v, &["x^2"]), O, lim).unwrap();
        assert_eq!(gb, polys(&v, &["x^2"]));

        let mut gb = buchberger(&polys(&v, &["x^2", "y^2"]), O, lim).unwrap();
        gb.sort_by(|a, b| a.leading_monomial(O).cmp(&b.leading_monomial(O)));
        let mut want = polys(&v, &["x^2", "y^2"]);
        want.sort_by(|a, b| a.leading_monomial(O).cmp(&b.leading_monomial(O)));
        assert_eq!(gb, want);

        let gb = buchberger(&polys(&v, &["x^2", "x*y", "y^3"]), O, lim).unwrap();
        assert_eq!(gb.len(), 3);
        for g in polys(&v, &["x^2", "x*y", "y^3"]) {
            assert!(gb.contains(&g));
        }
    }

    #[test]
    fn buchberger_completes_non_basis() {
        // (x^2 - y, x*y) needs y^2 added: y*(x^2 - y) - x*(x*y) = -y^2
        let v = vars(&["x", "y"]);
        let gb = buchberger(&polys(&v, &["x^2 - y", "x*y"]), O, GroebnerLimits::default()).unwrap();
        assert!(gb.contains(&polys(&v, &["y^2"])[0]));
        let sm = standard_monomials(&gb, O, &v).unwrap();
        assert_eq!(sm.len(), 3);
    }

    #[test]
    fn buchberger_resource_limit() {
        let v = vars(&["x", "y"]);
        let err = buchberger(&polys(&v, &["x^2 - y", "x*y"]), O, GroebnerLimits { max_basis: 2 }).unwrap_err();
        assert_eq!(err, Error::ResourceLimit { limit: 2 });
    }

    #[test]
    fn standard_monomial_examples() {
        let vx = vars(&["x"]);
        let sm = standard_monomials(&polys(&vx, &["x^2"]), O, &vx).unwrap();
        assert_eq!(sm, vec![Monomial::new(vec![0]), Monomial::new(vec![1])]);

        let v = vars(&["x", "y"]);
        let sm = standard_monomials(&polys(&v, &["x^2", "y^2"]), O, &v).unwrap();
        let want: Vec<Monomial> = [[0, 0], [1, 0], [0, 1], [1, 1]].iter().map(|e| Monomial::new(e.to_vec())).collect();
        assert_eq!(sm, want);

        let sm = standard_monomials(&polys(&v, &["x^2", "x*y", "y^3"]), O, &v).unwrap();
        let want: Vec<Monomial> = [[0, 0], [1, 0], [0, 1], [0, 2]].iter().map(|e| Monomial::new(e.to_vec())).collect();
        assert_eq!(sm, want);
    }

    #[test]
    fn standard_monomials_rejects_non_artinian() {
        let v = vars(&["x", "y"]);
        let err = standard_monomials(&polys(&v, &["x^2", "x*y"]), O, &v).unwrap_err();
        assert_eq!(err, Error::NotArtinian { variable: "y".into() });
    }
}
