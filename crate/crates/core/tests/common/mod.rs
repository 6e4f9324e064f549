#![allow(dead_code)]

use std::sync::Arc;

use tate_resolve::algebra::{AlgebraElement, LocalAlgebra};
use tate_resolve::complex::{FreeModuleMap, ModulePresentation};
use tate_resolve::linalg::Matrix;
use tate_resolve::tate::TateData;

pub struct Ring {
    pub name: &'static str,
    pub q: Arc<LocalAlgebra>,
    pub f: AlgebraElement,
    pub g: AlgebraElement,
    pub module: ModulePresentation,
}

impl Ring {
    pub fn new(
        name: &'static str,
        p: u32,
        vars: &[&str],
        ideal: &[&str],
        f: &str,
        g: &str,
        module: Option<&[&str]>,
    ) -> Ring {
        let q = Arc::new(LocalAlgebra::parse(p, vars, ideal).unwrap());
        let e = |s: &str| q.parse_element(s).unwrap();
        let module = match module {
            None => ModulePresentation::residue_field(q.clone()),
            Some(rel) => ModulePresentation::cyclic(q.clone(), &rel.iter().map(|s| e(s)).collect::<Vec<_>>()),
        };
        Ring { name, f: e(f), g: e(g), q, module }
    }

    pub fn tate(&self, n: usize) -> TateData {
        TateData::new(self.q.clone(), self.f.clone(), self.g.clone(), n).unwrap()
    }

    pub fn el(&self, s: &str) -> AlgebraElement {
        self.q.parse_element(s).unwrap()
    }
}

/// k[x]/(x^2), f = g = x, M = k.
pub fn e1(p: u32) -> Ring {
    Ring::new("E1", p, &["x"], &["x^2"], "x", "x", None)
}

/// k[x,y]/(x^2,y^2), f = g = x, M = k.
pub fn e2(p: u32) -> Ring {
    Ring::new("E2", p, &["x", "y"], &["x^2", "y^2"], "x", "x", None)
}

/// k[x,y]/(x^2,xy,y^3), f = x, g = y, M = Q/(x).
pub fn e3(p: u32) -> Ring {
    Ring::new("E3", p, &["x", "y"], &["x^2", "x*y", "y^3"], "x", "y", Some(&["x"]))
}

/// k[x,y,z]/(x^2,xy,y^2,z^2), f = g = z, M = k.
pub fn e4(p: u32) -> Ring {
    Ring::new("E4", p, &["x", "y", "z"], &["x^2", "x*y", "y^2", "z^2"], "z", "z", None)
}

/// `dim_k Tor_n(M, k)` for `n <= top`, from a deliberately non-minimal free
/// resolution: each syzygy module is generated by its whole k-basis. Shares
/// no code with the minimal-generator selection of the engine.
pub fn tor_dims(module: &ModulePresentation, top: usize) -> Vec<usize> {
    let alg = module.algebra();
    let dim = alg.dim();
    let mut ranks = vec![module.generators()];
    let mut maps: Vec<FreeModuleMap> = vec![module.relations().clone()];
    while maps.len() <= top {
        let d = maps.last().unwrap();
        ranks.push(d.source_rank());
        let kernel = d.expand(alg).kernel();
        let cols: Vec<Vec<AlgebraElement>> = kernel.iter().map(|v| alg.split(v)).collect();
        let cols: Vec<Vec<AlgebraElement>> =
            if dim == 0 { Vec::new() } else { cols.into_iter().map(|c| pad(alg, c, d.source_rank())).collect() };
        maps.push(FreeModuleMap::from_columns(alg, d.source_rank(), &cols));
    }
    // F_n = Q^ranks[n], d_{n+1} = maps[n] : F_{n+1} -> F_n
    let residue_rank = |m: &FreeModuleMap| -> usize { m.residue_matrix(alg).rank() };
    (0..=top)
        .map(|n| {
            let out = if n == 0 { 0 } else { residue_rank(&maps[n - 1]) };
            ranks[n] - out - residue_rank(&maps[n])
        })
        .collect()
}

fn pad(alg: &LocalAlgebra, mut v: Vec<AlgebraElement>, rank: usize) -> Vec<AlgebraElement> {
    v.resize(rank, alg.zero());
    v
}

/// Brute-force `dim_k` of the kernel of a k-matrix over a tiny field.
pub fn brute_force_kernel_dim(m: &Matrix) -> usize {
    let p = m.field().characteristic() as usize;
    let cols = m.cols();
    let total = p.pow(cols as u32);
    let mut count = 0usize;
    let mut v = vec![0u32; cols];
    for idx in 0..total {
        let mut t = idx;
        for x in v.iter_mut() {
            *x = (t % p) as u32;
            t /= p;
        }
        if m.mul_vec(&v).iter().all(|&x| x == 0) {
            count += 1;
        }
    }
    // count = p^dim
    let mut dim = 0;
    let mut c = count;
    while c > 1 {
        c /= p;
        dim += 1;
    }
    dim
}
