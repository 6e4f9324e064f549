//! Dense exact linear algebra over a prime field: reduced row echelon form,
//! kernels, particular solutions and subspaces kept in RREF.

use serde::{Deserialize, Serialize};

use crate::field::PrimeField;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(field: PrimeField, rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            debug_assert_eq!(col.len(), rows);
            for (r, &v) in col.iter().enumerate() {
                m.set(r, c, v);
            }
        }
        m
    }

    pub fn from_rows(field: PrimeField, cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(field, rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            debug_assert_eq!(row.len(), cols);
            m.data[r * cols..(r + 1) * cols].copy_from_slice(row);
        }
        m
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        debug_assert_eq!(v.len(), self.cols);
        let k = self.field;
        (0..self.rows).map(|r| self.row(r).iter().zip(v).fold(0u32, |acc, (&a, &b)| k.mul_add(a, b, acc))).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// In-place reduced row echelon form, scanning columns left to right.
    /// Returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        self.rref_within(self.cols)
    }

    /// As [`Matrix::rref`], but only columns `< limit` may hold pivots; the
    /// remaining columns are carried along by the row operations.
    fn rref_within(&mut self, limit: usize) -> Vec<usize> {
        let k = self.field;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..limit {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c) != 0) else { continue };
            self.swap_rows(r, p);
            let inv = k.inv(self.get(r, c)).unwrap();
            for j in c..self.cols {
                let v = self.get(r, j);
                self.set(r, j, k.mul(v, inv));
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor == 0 {
                    continue;
                }
                let neg = k.neg(factor);
                for j in c..self.cols {
                    let v = k.mul_add(neg, self.get(r, j), self.get(i, j));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the null space, one vector per free column (free variable
    /// set to 1, others to 0).
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let k = self.field;
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = k.neg(m.get(r, free));
            }
            basis.push(v);
        }
        basis
    }

    /// A solution of `self * x = b` with every free variable set to zero,
    /// or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        self.solve_many(&[b.to_vec()]).pop().unwrap()
    }

    /// [`Matrix::solve`] for several right-hand sides with one elimination.
    pub fn solve_many(&self, bs: &[Vec<u32>]) -> Vec<Option<Vec<u32>>> {
        let width = self.cols + bs.len();
        let mut aug = Matrix::zeros(self.field, self.rows, width);
        for r in 0..self.rows {
            aug.data[r * width..r * width + self.cols].copy_from_slice(self.row(r));
            for (t, b) in bs.iter().enumerate() {
                debug_assert_eq!(b.len(), self.rows);
                aug.set(r, self.cols + t, b[r]);
            }
        }
        let pivots = aug.rref_within(self.cols);
        (0..bs.len())
            .map(|t| {
                let c = self.cols + t;
                if (pivots.len()..self.rows).any(|r| aug.get(r, c) != 0) {
                    return None;
                }
                let mut x = vec![0u32; self.cols];
                for (r, &p) in pivots.iter().enumerate() {
                    x[p] = aug.get(r, c);
                }
                Some(x)
            })
            .collect()
    }

    pub fn determinant(&self) -> u32 {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let k = self.field;
        let mut m = self.clone();
        let mut det = 1u32;
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| m.get(i, c) != 0) else { return 0 };
            if p != c {
                m.swap_rows(p, c);
                det = k.neg(det);
            }
            let pivot = m.get(c, c);
            det = k.mul(det, pivot);
            let inv = k.inv(pivot).unwrap();
            for i in c + 1..m.rows {
                let factor = k.mul(m.get(i, c), inv);
                if factor == 0 {
                    continue;
                }
                let neg = k.neg(factor);
                for j in c..m.cols {
                    let v = k.mul_add(neg, m.get(c, j), m.get(i, j));
                    m.set(i, j, v);
                }
            }
        }
        det
    }
}

/// A subspace of `k^ambient`, stored as the rows of its reduced row echelon
/// basis. The representation is canonical: equal subspaces have equal rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subspace {
    field: PrimeField,
    ambient: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient: usize) -> Self {
        Subspace { field, ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: PrimeField, ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|i| {
                let mut v = vec![0; ambient];
                v[i] = 1;
                v
            })
            .collect();
        Subspace { field, ambient, rows, pivots: (0..ambient).collect() }
    }

    pub fn span<I: IntoIterator<Item = Vec<u32>>>(field: PrimeField, ambient: usize, vectors: I) -> Self {
        let vectors: Vec<Vec<u32>> = vectors.into_iter().collect();
        if vectors.is_empty() {
            return Self::zero(field, ambient);
        }
        let mut m = Matrix::from_rows(field, ambient, &vectors);
        let pivots = m.rref();
        let rows = (0..pivots.len()).map(|r| m.row(r).to_vec()).collect();
        Subspace { field, ambient, rows, pivots }
    }

    /// Column space of a matrix.
    pub fn column_space(m: &Matrix) -> Self {
        Self::span(m.field(), m.rows(), (0..m.cols()).map(|c| m.column(c)))
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Reduces `v` against the echelon basis; the result is zero iff `v`
    /// lies in the subspace.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let k = self.field;
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = w[p];
            if c == 0 {
                continue;
            }
            let neg = k.neg(c);
            for (x, &y) in w.iter_mut().zip(row) {
                *x = k.mul_add(neg, y, *x);
            }
        }
        w
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns `true` when the dimension grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let k = self.field;
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|&x| x != 0) else { return false };
        let inv = k.inv(w[p]).unwrap();
        for x in w.iter_mut() {
            *x = k.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let c = row[p];
            if c == 0 {
                continue;
            }
            let neg = k.neg(c);
            for (x, &y) in row.iter_mut().zip(&w) {
                *x = k.mul_add(neg, y, *x);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, w);
        self.pivots.insert(at, p);
        true
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for v in &other.rows {
            s.insert(v);
        }
        s
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|v| other.contains(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn rref_and_rank() {
        let m = Matrix::from_rows(k(7), 3, &[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(m.rank(), 2);
        let mut r = m.clone();
        assert_eq!(r.rref(), vec![0, 1]);
        assert_eq!(r.row(0), &[1, 0, 1]);
        assert_eq!(r.row(1), &[0, 1, 1]);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = Matrix::from_rows(k(5), 4, &[vec![1, 2, 0, 3], vec![0, 0, 1, 4]]);
        let ker = m.kernel();
        assert_eq!(ker.len(), 2);
        for v in ker {
            assert!(m.mul_vec(&v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn solve_sets_free_variables_to_zero() {
        let m = Matrix::from_rows(k(5), 3, &[vec![1, 1, 0], vec![0, 0, 1]]);
        assert_eq!(m.solve(&[2, 3]), Some(vec![2, 0, 3]));
        let singular = Matrix::from_rows(k(5), 2, &[vec![1, 1], vec![1, 1]]);
        assert_eq!(singular.solve(&[1, 0]), None);
    }

    #[test]
    fn determinant_small() {
        let m = Matrix::from_rows(k(101), 2, &[vec![2, 3], vec![5, 7]]);
        assert_eq!(m.determinant(), k(101).from_i64(-1));
        assert_eq!(Matrix::identity(k(3), 4).determinant(), 1);
        let m = Matrix::from_rows(k(3), 2, &[vec![1, 2], vec![2, 1]]);
        assert_eq!(m.determinant(), 0);
    }

    #[test]
    fn subspace_insert_matches_span() {
        let f = k(3);
        let vs = vec![vec![1, 2, 0, 1], vec![0, 1, 1, 0], vec![1, 0, 1, 1], vec![2, 2, 2, 2]];
        let mut s = Subspace::zero(f, 4);
        for v in &vs {
            s.insert(v);
        }
        assert_eq!(s, Subspace::span(f, 4, vs.clone()));
        for v in &vs {
            assert!(s.contains(v));
        }
    }
}
