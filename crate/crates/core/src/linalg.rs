//! Exact linear algebra over a [`Field`].
//!
//! Elimination is deterministic: the pivot of each step is the first nonzero
//! entry in row-major order among the remaining rows, so two runs on the same
//! matrix produce the same transcript.

use std::fmt;

use crate::gf::{Elem, Field};

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Elem::ZERO; rows * cols],
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<Elem>>) -> Matrix {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r);
        }
        Matrix {
            rows: n,
            cols,
            data,
        }
    }

    /// Builds a matrix from column vectors of equal length.
    pub fn from_columns(rows: usize, columns: &[Vec<Elem>]) -> Matrix {
        let mut m = Matrix::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, &v) in col.iter().enumerate() {
                m.set(r, c, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [Elem] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Elem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                m.set(r, j, self.get(r, c));
            }
        }
        m
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(c, r, self.get(r, c));
            }
        }
        m
    }

    pub fn push_row(&mut self, row: &[Elem]) {
        assert_eq!(row.len(), self.cols);
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduces to reduced row echelon form in place and returns the pivot columns.
    pub fn rref(&mut self, f: &Field) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut lead = 0;
        for col in 0..self.cols {
            if lead == self.rows {
                break;
            }
            let Some(pr) = (lead..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(lead, pr);
            let inv = f.inv(self.get(lead, col)).expect("nonzero pivot");
            for v in self.row_mut(lead)[col..].iter_mut() {
                *v = f.mul(*v, inv);
            }
            let pivot_row: Vec<Elem> = self.row(lead)[col..].to_vec();
            for r in 0..self.rows {
                if r == lead {
                    continue;
                }
                let factor = self.get(r, col);
                if factor.is_zero() {
                    continue;
                }
                let nf = f.neg(factor);
                let row = &mut self.row_mut(r)[col..];
                for (v, &pv) in row.iter_mut().zip(&pivot_row) {
                    if !pv.is_zero() {
                        *v = f.mul_add(*v, nf, pv);
                    }
                }
            }
            pivots.push(col);
            lead += 1;
        }
        pivots
    }

    pub fn rank(&self, f: &Field) -> usize {
        // eliminate along the shorter side
        if self.cols < self.rows {
            return self.transpose().rank(f);
        }
        let mut e = Echelon::new(self.cols);
        for r in 0..self.rows {
            e.insert(f, self.row(r).to_vec());
            if e.rank() == self.cols {
                break;
            }
        }
        e.rank()
    }

    /// Basis of `{v : M v = 0}`, one vector per free column, in RREF-canonical form.
    pub fn nullspace(&self, f: &Field) -> Vec<Vec<Elem>> {
        let mut m = self.clone();
        let pivots = m.rref(f);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Elem::ZERO; self.cols];
            v[free] = Elem::ONE;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(m.get(r, free));
            }
            basis.push(v);
        }
        basis
    }

    /// `M v`
    pub fn mul_vec(&self, f: &Field, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|r| f.dot(self.row(r), v)).collect()
    }
}

/// Incremental row echelon basis of a subspace of `F^len`.
///
/// Stored rows are fully reduced against each other with pivot entries 1, so
/// membership tests and reductions are a single pass over the basis. Inserting
/// rows in any order yields the same span and rank.
#[derive(Debug, Clone)]
pub struct Echelon {
    len: usize,
    rows: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(len: usize) -> Echelon {
        Echelon {
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<Elem>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the basis in place.
    pub fn reduce(&self, f: &Field, v: &mut [Elem]) {
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c.is_zero() {
                continue;
            }
            let nc = f.neg(c);
            for (x, &y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = f.mul_add(*x, nc, y);
                }
            }
        }
    }

    pub fn contains(&self, f: &Field, v: &[Elem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(f, &mut w);
        w.iter().all(|e| e.is_zero())
    }

    /// Adds `v` to the span; returns true when the rank grew.
    pub fn insert(&mut self, f: &Field, mut v: Vec<Elem>) -> bool {
        debug_assert_eq!(v.len(), self.len);
        self.reduce(f, &mut v);
        let Some(pc) = v.iter().position(|e| !e.is_zero()) else {
            return false;
        };
        let inv = f.inv(v[pc]).expect("nonzero");
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if c.is_zero() {
                continue;
            }
            let nc = f.neg(c);
            for (x, &y) in row.iter_mut().zip(&v) {
                if !y.is_zero() {
                    *x = f.mul_add(*x, nc, y);
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(pc);
        true
    }

    /// Folds another echelon state into this one (associative merge used by
    /// batched column streams).
    pub fn merge(&mut self, f: &Field, other: Echelon) {
        for row in other.rows {
            if self.rank() == self.len {
                break;
            }
            self.insert(f, row);
        }
    }
}

/// Rank of a set of column vectors (each of length `rows`).
pub fn column_rank(f: &Field, rows: usize, columns: &[Vec<Elem>]) -> usize {
    let mut e = Echelon::new(rows);
    for c in columns {
        if e.rank() == rows {
            break;
        }
        e.insert(f, c.clone());
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(f: &Field, rng: &mut ChaCha8Rng, r: usize, c: usize) -> Matrix {
        let rows = (0..r)
            .map(|_| {
                (0..c)
                    .map(|_| f.decode(rng.gen_range(0..f.order() as u64)).unwrap())
                    .collect()
            })
            .collect();
        Matrix::from_rows(c, rows)
    }

    #[test]
    fn rank_of_products_is_bounded() {
        let f = Field::new(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let a = random_matrix(&f, &mut rng, 5, 2);
            let b = random_matrix(&f, &mut rng, 2, 7);
            let mut prod = Matrix::zeros(5, 7);
            for i in 0..5 {
                for j in 0..7 {
                    prod.set(i, j, f.dot(a.row(i), &b.column(j)));
                }
            }
            assert!(prod.rank(&f) <= 2);
            assert_eq!(prod.rank(&f), prod.transpose().rank(&f));
        }
    }

    #[test]
    fn nullspace_vectors_are_annihilated() {
        let f = Field::new(2, 6).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..30 {
            let m = random_matrix(&f, &mut rng, 4, 9);
            let ns = m.nullspace(&f);
            assert_eq!(ns.len(), 9 - m.rank(&f));
            for v in ns {
                assert!(m.mul_vec(&f, &v).iter().all(|e| e.is_zero()));
            }
        }
    }

    #[test]
    fn echelon_merge_matches_single_pass() {
        let f = Field::new(7, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let m = random_matrix(&f, &mut rng, 3, 6);
        // duplicate rows in a different order
        let mut a = Echelon::new(6);
        let mut b = Echelon::new(6);
        for r in 0..3 {
            a.insert(&f, m.row(r).to_vec());
            b.insert(&f, m.row(2 - r).to_vec());
        }
        a.merge(&f, b);
        assert_eq!(a.rank(), m.rank(&f));
        for r in 0..3 {
            assert!(a.contains(&f, m.row(r)));
        }
    }

    #[test]
    fn rref_is_canonical() {
        let f = Field::new(3, 1).unwrap();
        let one = Elem::ONE;
        let two = f.from_int(2);
        let mut m = Matrix::from_rows(3, vec![vec![two, two, one], vec![one, one, Elem::ZERO]]);
        let piv = m.rref(&f);
        assert_eq!(piv, vec![0, 2]);
        assert_eq!(m.row(0), &[one, one, Elem::ZERO]);
        assert_eq!(m.row(1), &[Elem::ZERO, Elem::ZERO, one]);
    }
}
