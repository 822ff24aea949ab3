//! Dense row-major matrices over `Z/p` with Gaussian elimination.

use super::field::PrimeField;
use crate::error::Error;

/// Dense matrix over a prime field. `0 x n` and `n x 0` shapes are legal and
/// show up constantly as degenerate fibers.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: PrimeField,
    data: Vec<u64>,
}

/// Result of row reduction: `transform * original = echelon`, with
/// `transform` invertible and pivot columns strictly increasing.
pub struct Echelon {
    pub echelon: Matrix,
    pub transform: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, field: PrimeField) -> Self {
        Matrix {
            rows,
            cols,
            field,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, field: PrimeField) -> Self {
        let mut m = Self::zeros(n, n, field);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<u64>>, cols: usize, field: PrimeField) -> Self {
        let mut m = Self::zeros(rows.len(), cols, field);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, field.reduce(v));
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows, self.field);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Classical cubic-time product.
    pub fn multiply(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in multiply");
        let f = self.field;
        let p = f.modulus() as u128;
        let mut out = Matrix::zeros(self.rows, other.cols, f);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let a = a as u128;
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b == 0 {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = ((out.data[idx] as u128 + a * b as u128) % p) as u64;
                }
            }
        }
        out
    }

    /// Copy `block` into `self` with its upper-left corner at `(i0, j0)`.
    pub fn set_block(&mut self, i0: usize, j0: usize, block: &Matrix) {
        assert!(i0 + block.rows <= self.rows && j0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(i0 + i, j0 + j, block.get(i, j));
            }
        }
    }

    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(row_idx.len(), col_idx.len(), self.field);
        for (i, &ri) in row_idx.iter().enumerate() {
            for (j, &cj) in col_idx.iter().enumerate() {
                m.set(i, j, self.get(ri, cj));
            }
        }
        m
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// Apply the matrix to a vector: `self * v`.
    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        let f = self.field;
        let mut out = vec![0u64; self.rows];
        for i in 0..self.rows {
            let mut acc = 0u64;
            for j in 0..self.cols {
                acc = f.add(acc, f.mul(self.get(i, j), v[j]));
            }
            out[i] = acc;
        }
        out
    }

    /// Reduced row echelon form with the transform tracked, so that
    /// `transform * self = echelon`. Pivot entries are 1 and pivot columns
    /// are cleared above and below, which makes the output canonical.
    pub fn row_echelon(&self) -> Echelon {
        let f = self.field;
        let mut a = self.clone();
        let mut t = Matrix::identity(self.rows, f);
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            // first nonzero entry at or below r
            let Some(pr) = (r..a.rows).find(|&i| a.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                a.swap_rows(pr, r);
                t.swap_rows(pr, r);
            }
            let inv = f.inv(a.get(r, c));
            a.scale_row(r, inv);
            t.scale_row(r, inv);
            for i in 0..a.rows {
                if i != r {
                    let factor = a.get(i, c);
                    if factor != 0 {
                        a.row_axpy(i, r, f.neg(factor));
                        t.row_axpy(i, r, f.neg(factor));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon {
            echelon: a,
            transform: t,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.row_echelon().pivots.len()
    }

    /// Basis of the null space, returned as the columns of a matrix.
    ///
    /// The basis is in echelon form with respect to the standard basis: the
    /// smallest nonzero indices of the columns are distinct and strictly
    /// increasing. Column count is `cols - rank`.
    pub fn kernel_basis(&self) -> Matrix {
        let f = self.field;
        let n = self.cols;
        // Reduce with columns reversed so the kernel vectors come out with
        // distinct leading (smallest) indices.
        let mut rev = Matrix::zeros(self.rows, n, f);
        for i in 0..self.rows {
            for j in 0..n {
                rev.set(i, j, self.get(i, n - 1 - j));
            }
        }
        let ech = rev.row_echelon();
        let pivot_set: Vec<bool> = {
            let mut s = vec![false; n];
            for &p in &ech.pivots {
                s[p] = true;
            }
            s
        };
        let free: Vec<usize> = (0..n).filter(|&j| !pivot_set[j]).collect();
        let mut out = Matrix::zeros(n, free.len(), f);
        // Free columns in decreasing reversed-index order give increasing
        // pivot indices after mapping back.
        for (k, &j) in free.iter().rev().enumerate() {
            out.set(n - 1 - j, k, 1);
            for (ri, &pc) in ech.pivots.iter().enumerate() {
                let v = ech.echelon.get(ri, j);
                if v != 0 {
                    out.set(n - 1 - pc, k, f.neg(v));
                }
            }
        }
        out
    }

    /// Echelon basis of the row space: the nonzero rows of the reduced row
    /// echelon form, with strictly increasing pivot columns.
    pub fn row_space_echelon(&self) -> Matrix {
        let ech = self.row_echelon();
        let r = ech.pivots.len();
        let mut out = Matrix::zeros(r, self.cols, self.field);
        for i in 0..r {
            for j in 0..self.cols {
                out.set(i, j, ech.echelon.get(i, j));
            }
        }
        out
    }

    /// Express `v` in the column span of `self`, or report that it is not in
    /// the span. The returned coordinates set all free columns to zero.
    pub fn solve_in_span(&self, v: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(v.len(), self.rows);
        let f = self.field;
        let mut aug = Matrix::zeros(self.rows, self.cols + 1, f);
        aug.set_block(0, 0, self);
        for i in 0..self.rows {
            aug.set(i, self.cols, f.reduce(v[i]));
        }
        let ech = aug.row_echelon();
        if ech.pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![0u64; self.cols];
        for (ri, &pc) in ech.pivots.iter().enumerate() {
            x[pc] = ech.echelon.get(ri, self.cols);
        }
        Some(x)
    }

    /// Solve `self * X = rhs` for square invertible `self`.
    pub fn solve_square(&self, rhs: &Matrix) -> Result<Matrix, Error> {
        assert_eq!(self.rows, self.cols);
        assert_eq!(self.rows, rhs.rows);
        let ech = self.row_echelon();
        if ech.pivots.len() != self.rows {
            return Err(Error::Dimension("singular matrix in solve".into()));
        }
        // transform * self = I, so X = transform * rhs
        Ok(ech.transform.multiply(rhs))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, i: usize, by: u64) {
        if by == 1 {
            return;
        }
        let f = self.field;
        for j in 0..self.cols {
            let idx = i * self.cols + j;
            self.data[idx] = f.mul(self.data[idx], by);
        }
    }

    /// `row[i] += factor * row[src]`
    fn row_axpy(&mut self, i: usize, src: usize, factor: u64) {
        let f = self.field;
        for j in 0..self.cols {
            let v = f.mul(self.data[src * self.cols + j], factor);
            let idx = i * self.cols + j;
            self.data[idx] = f.add(self.data[idx], v);
        }
    }
}

impl std::fmt::Display for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}
