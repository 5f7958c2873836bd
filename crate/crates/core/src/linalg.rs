//! Dense exact Gaussian elimination over a [`Scalar`] field.
//!
//! The graded pieces handled here stay well under a hundred dimensions, so
//! dense row reduction is enough; no sparse machinery.

use crate::field::Scalar;

/// Dense matrix, row-major. Rows may be empty (zero columns).
#[derive(Clone, Debug)]
pub struct DMatrix<S> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> DMatrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DMatrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn at(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &S) {
        let cur = self.at(r, c).add(v);
        self.set(r, c, cur);
    }

    /// self * other.
    pub fn mul(&self, other: &DMatrix<S>) -> DMatrix<S> {
        assert_eq!(self.cols, other.rows);
        let mut out = DMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = a.mul(other.at(k, j));
                    out.add_at(i, j, &v);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    /// Row echelon form in place; returns pivot columns in order.
    fn echelonize(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..self.cols {
                    let tmp = self.at(row, c).clone();
                    self.set(row, c, self.at(p, c).clone());
                    self.set(p, c, tmp);
                }
            }
            let inv = self.at(row, col).inv().expect("nonzero pivot");
            for c in col..self.cols {
                let v = self.at(row, c).mul(&inv);
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r != row && !self.at(r, col).is_zero() {
                    let factor = self.at(r, col).clone();
                    for c in col..self.cols {
                        let v = self.at(r, c).sub(&factor.mul(self.at(row, c)));
                        self.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.echelonize().len()
    }

    /// Basis of the right null space, as column vectors.
    pub fn nullspace(&self) -> Vec<Vec<S>> {
        let mut m = self.clone();
        let pivots = m.echelonize();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![S::zero(); self.cols];
            v[free] = S::one();
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = m.at(prow, free).neg();
            }
            basis.push(v);
        }
        basis
    }

    /// Does `self * x = b` have a solution?
    pub fn solvable(&self, b: &[S]) -> bool {
        assert_eq!(b.len(), self.rows);
        let mut aug = DMatrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.at(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let rank_a = self.rank();
        let rank_aug = aug.rank();
        rank_a == rank_aug
    }
}

/// Dimension profile of a column-spanned subspace against the filtration by
/// trailing coordinates: entry `d` is dim(V intersected with the span of
/// coordinates `>= d`), for `d = 0..=rows`. Requires coordinates ordered by
/// filtration degree ascending.
pub fn filtered_dims<S: Scalar>(span: &[Vec<S>], rows: usize) -> Vec<usize> {
    // Column-reduce so every column has a distinct topmost nonzero row; a
    // column whose topmost row is r then witnesses V meeting F_{>= r}.
    let mut cols: Vec<Vec<S>> = span.to_vec();
    let mut pivot_of_row: Vec<Option<usize>> = vec![None; rows];
    let mut tops: Vec<usize> = Vec::new();
    for ci in 0..cols.len() {
        loop {
            let Some(top) = (0..rows).find(|&r| !cols[ci][r].is_zero()) else {
                break;
            };
            match pivot_of_row[top] {
                None => {
                    pivot_of_row[top] = Some(ci);
                    tops.push(top);
                    break;
                }
                Some(other) => {
                    let factor = cols[ci][top].mul(
                        &cols[other][top].inv().expect("pivot entry nonzero"),
                    );
                    for r in 0..rows {
                        let v = cols[ci][r].sub(&factor.mul(&cols[other][r]));
                        cols[ci][r] = v;
                    }
                }
            }
        }
    }
    let mut out = vec![0usize; rows + 1];
    for d in 0..=rows {
        out[d] = tops.iter().filter(|&&t| t >= d).count();
    }
    out
}
