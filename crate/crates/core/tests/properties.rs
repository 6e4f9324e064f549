mod common;

use std::sync::Arc;

use proptest::prelude::*;

use tate_resolve::algebra::{AlgebraElement, LocalAlgebra};
use tate_resolve::complex::{minimal_resolution, verify_complex, FreeModuleMap, ModulePresentation};
use tate_resolve::descent::{betti_table, descend};
use tate_resolve::dg::{build_sigma_system, homotopy_check, verify_conditions};
use tate_resolve::field::PrimeField;
use tate_resolve::groebner::{buchberger, normal_form, GroebnerLimits};
use tate_resolve::linalg::{Matrix, Subspace};
use tate_resolve::poly::{Monomial, MonomialOrder, Polynomial};
use tate_resolve::tate::{alpha, TateData};
use tate_resolve::Error;

const PRIMES: [u32; 6] = [2, 3, 5, 7, 101, 65521];

fn prime() -> impl Strategy<Value = u32> {
    prop::sample::select(PRIMES.to_vec())
}

fn poly_terms() -> impl Strategy<Value = Vec<(u32, u32, u32)>> {
    prop::collection::vec((0u32..4, 0u32..4, any::<u32>()), 0..5)
}

fn poly(k: PrimeField, terms: &[(u32, u32, u32)]) -> Polynomial {
    let mut p = Polynomial::zero(k, 2);
    for &(a, b, c) in terms {
        p.add_term(Monomial::new(vec![a, b]), k.reduce(c as u64));
    }
    p
}

fn element(alg: &LocalAlgebra, coeffs: &[u32]) -> AlgebraElement {
    let k = alg.field();
    AlgebraElement::from_coeffs((0..alg.dim()).map(|i| k.reduce(coeffs[i % coeffs.len()] as u64)).collect())
}

fn vars() -> Vec<String> {
    vec!["x".into(), "y".into()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_inverse_and_distributivity(p in prime(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let k = PrimeField::new(p).unwrap();
        let (a, b, c) = (k.reduce(a as u64), k.reduce(b as u64), k.reduce(c as u64));
        if a != 0 {
            prop_assert_eq!(k.mul(a, k.inv(a).unwrap()), 1);
        }
        prop_assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
        prop_assert_eq!(k.add(k.sub(a, b), b), a);
    }

    #[test]
    fn polynomial_display_round_trips(p in prime(), terms in poly_terms()) {
        let k = PrimeField::new(p).unwrap();
        let f = poly(k, &terms);
        let shown = f.display(&vars()).to_string();
        prop_assert_eq!(Polynomial::parse(&shown, &vars(), k).unwrap(), f);
    }

    #[test]
    fn groebner_basis_reduces_its_ideal(p in prime(), t1 in poly_terms(), t2 in poly_terms(), m in poly_terms()) {
        let k = PrimeField::new(p).unwrap();
        let order = MonomialOrder::DegRevLex;
        // x^4 and y^4 keep the quotient finite
        let gens = vec![
            Polynomial::parse("x^4", &vars(), k).unwrap(),
            Polynomial::parse("y^4", &vars(), k).unwrap(),
            poly(k, &t1),
            poly(k, &t2),
        ];
        let gb = match buchberger(&gens, order, GroebnerLimits { max_basis: 200 }) {
            Ok(gb) => gb,
            Err(Error::ResourceLimit { .. }) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        for g in &gens {
            prop_assert!(normal_form(g, &gb, order).is_zero());
        }
        let combo = poly(k, &m).mul(&gens[2]).add(&gens[3]);
        prop_assert!(normal_form(&combo, &gb, order).is_zero());
        let h = poly(k, &m);
        let nf = normal_form(&h, &gb, order);
        prop_assert_eq!(&normal_form(&nf, &gb, order), &nf);
        prop_assert!(normal_form(&h.sub(&nf), &gb, order).is_zero());
    }

    #[test]
    fn algebra_is_commutative_associative_and_polynomial_evaluation_is_multiplicative(
        p in prime(), a in prop::collection::vec(any::<u32>(), 1..6),
        b in prop::collection::vec(any::<u32>(), 1..6), c in prop::collection::vec(any::<u32>(), 1..6),
        t1 in poly_terms(), t2 in poly_terms(),
    ) {
        let q = LocalAlgebra::parse(p, &["x", "y"], &["x^2", "x*y", "y^3"]).unwrap();
        let (a, b, c) = (element(&q, &a), element(&q, &b), element(&q, &c));
        prop_assert_eq!(q.mul(&a, &b), q.mul(&b, &a));
        prop_assert_eq!(q.mul(&q.mul(&a, &b), &c), q.mul(&a, &q.mul(&b, &c)));
        prop_assert_eq!(q.mul(&a, &q.add(&b, &c)), q.add(&q.mul(&a, &b), &q.mul(&a, &c)));
        let k = q.field();
        let (f, g) = (poly(k, &t1), poly(k, &t2));
        prop_assert_eq!(
            q.element_from_polynomial(&f.mul(&g)),
            q.mul(&q.element_from_polynomial(&f), &q.element_from_polynomial(&g))
        );
    }

    #[test]
    fn linear_algebra_rank_nullity_and_solve(
        p in prime(), rows in 1usize..6, cols in 1usize..6,
        data in prop::collection::vec(any::<u32>(), 36), y in prop::collection::vec(any::<u32>(), 6),
    ) {
        let k = PrimeField::new(p).unwrap();
        let m = Matrix::from_rows(k, cols, &(0..rows).map(|r| (0..cols).map(|c| k.reduce(data[r * 6 + c] as u64)).collect()).collect::<Vec<_>>());
        let ker = m.kernel();
        prop_assert_eq!(m.rank() + ker.len(), cols);
        for v in &ker {
            prop_assert!(m.mul_vec(v).iter().all(|&x| x == 0));
        }
        let y: Vec<u32> = (0..cols).map(|c| k.reduce(y[c] as u64)).collect();
        let b = m.mul_vec(&y);
        let x = m.solve(&b).expect("b is in the column space");
        prop_assert_eq!(m.mul_vec(&x), b);
        // canonical subspace representation
        let mut rev = ker.clone();
        rev.reverse();
        prop_assert_eq!(Subspace::span(k, cols, ker), Subspace::span(k, cols, rev));
    }

    #[test]
    fn alpha_identities(p in prime(), i in 0usize..60, j in 0usize..60, l in 0usize..60) {
        let k = PrimeField::new(p).unwrap();
        prop_assert_eq!(alpha(i, j, k), alpha(j, i, k));
        prop_assert_eq!(k.mul(alpha(i, j, k), alpha(i + j, l, k)), k.mul(alpha(j, l, k), alpha(i, j + l, k)));
    }

    #[test]
    fn free_module_map_round_trips(a in prop::collection::vec(any::<u32>(), 2..8)) {
        let q = LocalAlgebra::parse(101, &["x", "y"], &["x^2", "y^2"]).unwrap();
        let m = FreeModuleMap::from_rows(&q, 2, &[vec![element(&q, &a), q.one()], vec![q.zero(), element(&q, &a[1..])]]);
        let json = serde_json::to_string(&m).unwrap();
        prop_assert_eq!(serde_json::from_str::<FreeModuleMap>(&json).unwrap(), m);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn resolutions_of_cyclic_modules_verify(a in prop::collection::vec(0u32..5, 4), b in prop::collection::vec(0u32..5, 4)) {
        let q = Arc::new(LocalAlgebra::parse(5, &["x", "y"], &["x^2", "x*y", "y^3"]).unwrap());
        let m = ModulePresentation::cyclic(q.clone(), &[element(&q, &a), element(&q, &b)]);
        let u = minimal_resolution(&m, 3);
        let report = verify_complex(&u, &m);
        prop_assert!(report.all_passed(), "{}", report);
        prop_assert_eq!(betti_table(&u).values, common::tor_dims(&m, 3));
    }

    /// `f = x + c y`, `g = x - c y` is an exact pair in `k[x,y]/(x^2, y^2)`;
    /// every module killed by `f` gets a verified structure that descends to
    /// the minimal resolution over `Q/(f)`.
    #[test]
    fn dg_structures_on_modules_killed_by_f(c in 1u32..101, extra in prop::collection::vec(0u32..101, 4)) {
        let q = Arc::new(LocalAlgebra::parse(101, &["x", "y"], &["x^2", "y^2"]).unwrap());
        let f = q.parse_element(&format!("x + {c}*y")).unwrap();
        let g = q.parse_element(&format!("x - {c}*y")).unwrap();
        let a = element(&q, &extra);
        let m = ModulePresentation::cyclic(q.clone(), &[f.clone(), a]);
        let n = 5;
        let tate = TateData::new(q.clone(), f.clone(), g, n).unwrap();
        let u = minimal_resolution(&m, n);
        let s = build_sigma_system(&tate, &u, &m).unwrap();
        let conditions = verify_conditions(&s);
        prop_assert!(conditions.all_passed(), "{}", conditions);
        prop_assert!(homotopy_check(&s).all_passed());

        let (r, proj) = q.quotient_by_principal(&f).unwrap();
        let r = Arc::new(r);
        let d = descend(&s, r.clone(), &proj).unwrap();
        let module_r = m.base_change(r, &proj);
        let report = verify_complex(&d.complex, &module_r);
        prop_assert!(report.all_passed(), "{}", report);
        let oracle = minimal_resolution(&module_r, n);
        prop_assert_eq!(&betti_table(&d.complex).values[..n], &betti_table(&oracle).values[..n]);
    }
}
