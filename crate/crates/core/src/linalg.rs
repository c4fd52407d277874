//! Dense exact linear algebra over the Gaussian rationals: reduced row
//! echelon form, kernel bases, and linear solves. Row operations skip zero
//! entries, which keeps elimination fast on the sparse constraint matrices
//! the slice engine produces.

use crate::scalar::GaussianRational;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<GaussianRational>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![GaussianRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = GaussianRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            assert_eq!(row.len(), ncols, "ragged rows");
            data.extend(row);
        }
        Self {
            rows: nrows,
            cols: ncols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &GaussianRational {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut GaussianRational {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[GaussianRational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn hermitian_transpose(&self) -> Mat {
        let mut out = Mat::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.at_mut(c, r) = self.at(r, c).conj();
            }
        }
        out
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Mat::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.at(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a * b;
                    *out.at_mut(r, c) += &prod;
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a -= b;
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// In-place reduced row echelon form; returns the pivot columns in row
    /// order. Deterministic: the first row with a nonzero entry is chosen at
    /// each step.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut pivot_row = 0usize;
        for col in 0..self.cols {
            if pivot_row >= self.rows {
                break;
            }
            let Some(src) = (pivot_row..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(pivot_row, src);
            let inv = self.at(pivot_row, col).inv();
            for c in col..self.cols {
                if !self.at(pivot_row, c).is_zero() {
                    let scaled = self.at(pivot_row, c) * &inv;
                    *self.at_mut(pivot_row, c) = scaled;
                }
            }
            for r in 0..self.rows {
                if r == pivot_row || self.at(r, col).is_zero() {
                    continue;
                }
                let factor = self.at(r, col).clone();
                for c in col..self.cols {
                    if !self.at(pivot_row, c).is_zero() {
                        let sub = &factor * self.at(pivot_row, c);
                        *self.at_mut(r, c) -= &sub;
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        work.rref().len()
    }

    /// A basis of `{x : A x = 0}` whose vectors, stacked as rows, are in
    /// reduced row echelon form (deterministic, comparable across runs).
    pub fn kernel_basis(&self) -> Vec<Vec<GaussianRational>> {
        let mut work = self.clone();
        let pivots = work.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut vectors = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![GaussianRational::zero(); self.cols];
            v[f] = GaussianRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -work.at(row, f);
            }
            vectors.push(v);
        }
        if vectors.is_empty() {
            return vectors;
        }
        let mut stacked = Mat::from_rows(vectors);
        stacked.rref();
        (0..stacked.rows())
            .map(|r| stacked.row(r).to_vec())
            .collect()
    }

    /// Solves `A X = B` columnwise for nonsingular square `A`.
    pub fn solve_matrix(&self, rhs: &Mat) -> Option<Mat> {
        assert_eq!(self.rows, rhs.rows);
        let mut out = Mat::zero(self.cols, rhs.cols);
        for c in 0..rhs.cols {
            let b: Vec<GaussianRational> = (0..rhs.rows).map(|r| rhs.at(r, c).clone()).collect();
            let x = self.solve(&b)?;
            for (r, v) in x.into_iter().enumerate() {
                *out.at_mut(r, c) = v;
            }
        }
        Some(out)
    }

    /// Plain transpose without conjugation.
    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        out
    }

    /// Solves `A x = b` for nonsingular square `A`.
    pub fn solve(&self, b: &[GaussianRational]) -> Option<Vec<GaussianRational>> {
        assert_eq!(self.rows, self.cols, "solve needs a square matrix");
        assert_eq!(b.len(), self.rows);
        let mut work = Mat::zero(self.rows, self.cols + 1);
        for (r, rhs) in b.iter().enumerate() {
            for c in 0..self.cols {
                *work.at_mut(r, c) = self.at(r, c).clone();
            }
            *work.at_mut(r, self.cols) = rhs.clone();
        }
        let pivots = work.rref();
        if pivots.len() != self.cols || pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        Some((0..self.rows).map(|r| work.at(r, self.cols).clone()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational as G;

    fn m(rows: Vec<Vec<i64>>) -> Mat {
        Mat::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(G::from_integer).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(vec![vec![0, 1, 1]]);
        assert_eq!(a.rank(), 1);
        let kernel = a.kernel_basis();
        assert_eq!(kernel.len(), 2);
        // kernel rows are themselves in reduced echelon form
        assert_eq!(kernel[0], vec![G::one(), G::zero(), G::zero()]);
        assert_eq!(kernel[1], vec![G::zero(), G::one(), -G::one()]);
        for v in &kernel {
            let sum = &v[1] + &v[2];
            assert!(sum.is_zero());
        }
    }

    #[test]
    fn kernel_of_full_rank_is_empty() {
        let a = m(vec![vec![1, 2], vec![3, 4]]);
        assert_eq!(a.rank(), 2);
        assert!(a.kernel_basis().is_empty());
    }

    #[test]
    fn solve_exact() {
        let a = m(vec![vec![2, 1], vec![1, 3]]);
        let b = vec![G::from_integer(5), G::from_integer(10)];
        let x = a.solve(&b).unwrap();
        assert_eq!(x[0], G::from_integer(1));
        assert_eq!(x[1], G::from_integer(3));
        let singular = m(vec![vec![1, 2], vec![2, 4]]);
        assert!(singular.solve(&b).is_none());
    }

    #[test]
    fn complex_elimination() {
        let i = G::i();
        let a = Mat::from_rows(vec![
            vec![G::one(), i.clone()],
            vec![-&i, G::one()],
        ]);
        // second row is -i times the first
        assert_eq!(a.rank(), 1);
        let k = a.kernel_basis();
        assert_eq!(k.len(), 1);
        // x + i*y = 0, normalized to leading coefficient 1: (1, i)
        assert_eq!(k[0], vec![G::one(), i.clone()]);
        let residual = &k[0][0] + &(&i * &k[0][1]);
        assert!(residual.is_zero());
    }

    #[test]
    fn hermitian_transpose_conjugates() {
        let a = Mat::from_rows(vec![vec![G::i(), G::one()]]);
        let at = a.hermitian_transpose();
        assert_eq!(at.at(0, 0), &-G::i());
        assert_eq!(at.at(1, 0), &G::one());
    }
}
