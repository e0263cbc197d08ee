//! Dense matrices over an exact [`Field`] with row reduction, rank, kernels
//! and linear solves. Matrices here are small (one weight space at a time),
//! so a dense row-major layout is all that is needed.

use std::fmt;

use crate::field::Field;

#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.data[r * self.cols..(r + 1) * self.cols].iter().map(|x| format!("{x:?}")).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Reduced row echelon form together with its pivot columns.
pub struct Echelon<F> {
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        Matrix { rows: n, cols, data }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<F>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (r, x) in col.iter().enumerate() {
                m.set(r, c, x.clone());
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

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: F) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.data[r * other.cols + c].add_mul_assign(a, b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|r| {
                let mut acc = F::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    acc.add_mul_assign(a, b);
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, s: &F) -> Matrix<F> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.mul(s)).collect() }
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn put_block(&mut self, r0: usize, c0: usize, block: &Matrix<F>) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix<F> {
        let mut out = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out.set(r, c, self.get(r0 + r, c0 + c).clone());
            }
        }
        out
    }

    /// Keeps the listed columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix<F> {
        let mut out = Self::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (k, &c) in cols.iter().enumerate() {
                out.set(r, k, self.get(r, c).clone());
            }
        }
        out
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.cols, "column mismatch in vstack");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.rows, other.rows, "row mismatch in hstack");
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        out.put_block(0, 0, self);
        out.put_block(0, self.cols, other);
        out
    }

    /// Gauss-Jordan elimination. Pivot rows are normalized to leading 1 and
    /// the first nonzero entry of each column is used as pivot, so the result
    /// is deterministic. Zero rows are dropped.
    pub fn rref(&self) -> Echelon<F> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead_row = 0;
        for c in 0..m.cols {
            if lead_row == m.rows {
                break;
            }
            let Some(p) = (lead_row..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            m.swap_rows(lead_row, p);
            let inv = m.get(lead_row, c).inv();
            for k in c..m.cols {
                let x = m.get(lead_row, k).mul(&inv);
                m.set(lead_row, k, x);
            }
            for r in 0..m.rows {
                if r == lead_row {
                    continue;
                }
                let factor = m.get(r, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for k in c..m.cols {
                    let pk = m.get(lead_row, k);
                    if pk.is_zero() {
                        continue;
                    }
                    let x = m.get(r, k).sub(&factor.mul(pk));
                    m.set(r, k, x);
                }
            }
            pivots.push(c);
            lead_row += 1;
        }
        m.data.truncate(lead_row * m.cols);
        m.rows = lead_row;
        Echelon { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        // Eliminate along the smaller dimension.
        if self.rows < self.cols {
            self.transpose().rref().pivots.len()
        } else {
            self.rref().pivots.len()
        }
    }

    /// Basis of `{x : self * x = 0}`, one vector per free column with a 1 in
    /// that column.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let ech = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !ech.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (row, &p) in ech.pivots.iter().enumerate() {
                    v[p] = ech.matrix.get(row, f).neg();
                }
                v
            })
            .collect()
    }

    /// Some solution of `self * x = b`, or `None` when inconsistent. Free
    /// variables are set to zero.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let augmented = self.hstack(&Matrix::from_columns(&[b.to_vec()], self.rows));
        let ech = augmented.rref();
        if ech.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (row, &p) in ech.pivots.iter().enumerate() {
            x[p] = ech.matrix.get(row, self.cols).clone();
        }
        Some(x)
    }
}

/// Coordinates on a quotient `V / K` where `V = F^n` and `K` is spanned by
/// given vectors. Representatives of quotient basis vectors are the unit
/// vectors of the non-pivot coordinates.
#[derive(Clone, Debug)]
pub struct Quotient<F> {
    ambient: usize,
    kept: Vec<usize>,
    /// `dim(V/K) x n` matrix sending a vector to its class.
    projection: Matrix<F>,
    /// Number of independent vectors in `K`.
    kernel_rank: usize,
}

impl<F: Field> Quotient<F> {
    /// `relations` holds spanning vectors of `K` as rows.
    pub fn new(ambient: usize, relations: &Matrix<F>) -> Self {
        assert_eq!(relations.cols(), ambient);
        let ech = relations.rref();
        let kept: Vec<usize> = (0..ambient).filter(|c| !ech.pivots.contains(c)).collect();
        let mut projection = Matrix::zeros(kept.len(), ambient);
        let slot: Vec<Option<usize>> = {
            let mut s = vec![None; ambient];
            for (k, &c) in kept.iter().enumerate() {
                s[c] = Some(k);
            }
            s
        };
        for (k, _) in kept.iter().enumerate() {
            projection.set(k, kept[k], F::one());
        }
        // A pivot coordinate c satisfies e_c = -sum_{kept j} row[j] e_j mod K.
        for (row, &p) in ech.pivots.iter().enumerate() {
            for (j, s) in slot.iter().enumerate() {
                if let Some(k) = s {
                    let x = ech.matrix.get(row, j);
                    if !x.is_zero() {
                        projection.set(*k, p, x.neg());
                    }
                }
            }
        }
        Quotient { ambient, kept, projection, kernel_rank: ech.pivots.len() }
    }

    /// The trivial quotient `V / 0`.
    pub fn whole(ambient: usize) -> Self {
        Quotient {
            ambient,
            kept: (0..ambient).collect(),
            projection: Matrix::identity(ambient),
            kernel_rank: 0,
        }
    }

    pub fn dim(&self) -> usize {
        self.kept.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn kernel_rank(&self) -> usize {
        self.kernel_rank
    }

    pub fn kept(&self) -> &[usize] {
        &self.kept
    }

    pub fn projection(&self) -> &Matrix<F> {
        &self.projection
    }

    /// `n x dim(V/K)` matrix of the chosen representatives.
    pub fn lift(&self) -> Matrix<F> {
        let mut m = Matrix::zeros(self.ambient, self.kept.len());
        for (k, &c) in self.kept.iter().enumerate() {
            m.set(c, k, F::one());
        }
        m
    }
}

/// Returns a basis (as columns, in input order) of the span of `vectors`.
pub fn independent_subset<F: Field>(vectors: &[Vec<F>], dim: usize) -> Vec<usize> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_columns(vectors, dim);
    m.rref().pivots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    fn mat(rows: &[&[i64]]) -> Matrix<Rational> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect(), cols)
    }

    #[test]
    fn rank_and_kernel() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let ker = m.kernel();
        assert_eq!(ker.len(), 1);
        assert!(m.mul_vec(&ker[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = mat(&[&[1, 1], &[1, -1]]);
        let x = m.solve(&[q(3), q(1)]).unwrap();
        assert_eq!(x, vec![q(2), q(1)]);
        let s = mat(&[&[1, 1], &[2, 2]]);
        assert!(s.solve(&[q(1), q(3)]).is_none());
    }

    #[test]
    fn quotient_projection_kills_relations() {
        let rel = mat(&[&[1, -1, 0], &[0, 1, 1]]);
        let quo = Quotient::new(3, &rel);
        assert_eq!(quo.dim(), 1);
        for r in 0..rel.rows() {
            let img = quo.projection().mul_vec(rel.row(r));
            assert!(img.iter().all(|x| x.is_zero()));
        }
        let round = quo.projection().mul(&quo.lift());
        assert_eq!(round, Matrix::identity(1));
    }

    #[test]
    fn empty_shapes() {
        let m: Matrix<Rational> = Matrix::zeros(0, 3);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.kernel().len(), 3);
        let q0 = Quotient::new(3, &m);
        assert_eq!(q0.dim(), 3);
    }
}
