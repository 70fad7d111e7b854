use std::fmt;
use std::ops::{Index, IndexMut};

use super::{Field, Scalar};

/// A dense matrix over a single exact field, stored row-major.
///
/// All arithmetic is exact; there is no tolerance anywhere. Dimension or
/// field mismatches are programming errors and panic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn new(field: Field, rows: usize, cols: usize, entries: Vec<Scalar>) -> Matrix {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        for e in &entries {
            assert_eq!(e.field(), field, "mixed-field arithmetic is rejected");
        }
        Matrix {
            field,
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    /// Builds a matrix from signed integer rows; handy for fixtures.
    pub fn from_i64_rows(field: Field, rows: &[&[i64]]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend(row.iter().map(|&x| field.from_i64(x)));
        }
        Matrix::new(field, r, c, entries)
    }

    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Matrix {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix::new(field, rows, cols, entries)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Matrix::identity(self.field, self.rows)
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        (0..self.cols).map(|j| self[(i, j)].clone()).collect()
    }

    /// Assembles a matrix whose columns are the given vectors.
    pub fn from_cols(field: Field, rows: usize, cols: &[Vec<Scalar>]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for i in 0..rows {
                m[(i, j)] = c[i].clone();
            }
        }
        m
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| {
            self[(j, i)].clone()
        })
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.check_same_shape(other);
        Matrix::from_fn(self.field, self.rows, self.cols, |i, j| {
            self[(i, j)].add(&other[(i, j)])
        })
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.check_same_shape(other);
        Matrix::from_fn(self.field, self.rows, self.cols, |i, j| {
            self[(i, j)].sub(&other[(i, j)])
        })
    }

    pub fn neg(&self) -> Matrix {
        Matrix::from_fn(self.field, self.rows, self.cols, |i, j| self[(i, j)].neg())
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        assert_eq!(c.field(), self.field, "mixed-field arithmetic is rejected");
        Matrix::from_fn(self.field, self.rows, self.cols, |i, j| self[(i, j)].mul(c))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            self.field, other.field,
            "mixed-field arithmetic is rejected"
        );
        assert_eq!(
            self.cols, other.rows,
            "dimension mismatch in matrix product"
        );
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a.mul(&other[(k, j)]);
                    out[(i, j)] = out[(i, j)].add(&t);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(
            self.cols,
            v.len(),
            "dimension mismatch in matrix-vector product"
        );
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for k in 0..self.cols {
                    acc = acc.add(&self[(i, k)].mul(&v[k]));
                }
                acc
            })
            .collect()
    }

    pub fn trace(&self) -> Scalar {
        assert!(self.is_square(), "trace requires a square matrix");
        let mut acc = self.field.zero();
        for i in 0..self.rows {
            acc = acc.add(&self[(i, i)]);
        }
        acc
    }

    fn check_same_shape(&self, other: &Matrix) {
        assert_eq!(
            self.field, other.field,
            "mixed-field arithmetic is rejected"
        );
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "dimension mismatch"
        );
    }

    /// Reduced row echelon form with the leftmost-column, topmost-row pivot
    /// convention. Returns the echelon matrix and the pivot column indices.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m[(r, c)].inv().expect("pivot is nonzero");
            for j in c..m.cols {
                m[(r, j)] = m[(r, j)].mul(&inv);
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let factor = m[(i, c)].clone();
                    for j in c..m.cols {
                        let t = factor.mul(&m[(r, j)]);
                        m[(i, j)] = m[(i, j)].sub(&t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Basis of the kernel, one vector per free column of the reduced
    /// echelon form, returned as the columns of a `cols x nullity` matrix.
    pub fn kernel_basis(&self) -> Matrix {
        let (rref, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Matrix::zeros(self.field, self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            basis[(f, k)] = self.field.one();
            for (r, &p) in pivots.iter().enumerate() {
                basis[(p, k)] = rref[(r, f)].neg();
            }
        }
        basis
    }

    /// Canonical basis of the column space: the nonzero rows of the reduced
    /// echelon form of the transpose, returned as columns.
    pub fn column_space_basis(&self) -> Matrix {
        let (rref_t, pivots) = self.transpose().rref();
        let mut basis = Matrix::zeros(self.field, self.rows, pivots.len());
        for r in 0..pivots.len() {
            for i in 0..self.rows {
                basis[(i, r)] = rref_t[(r, i)].clone();
            }
        }
        basis
    }

    /// Solves `self * X = rhs` columnwise. Returns the particular solution
    /// with all free variables zero, or `None` if any column is inconsistent.
    pub fn solve_matrix(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.field, rhs.field, "mixed-field arithmetic is rejected");
        assert_eq!(self.rows, rhs.rows, "dimension mismatch in solve");
        let mut aug = Matrix::zeros(self.field, self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..rhs.cols {
                aug[(i, self.cols + j)] = rhs[(i, j)].clone();
            }
        }
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.field, self.cols, rhs.cols);
        for (row, &p) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x[(p, j)] = r[(row, self.cols + j)].clone();
            }
        }
        Some(x)
    }

    pub fn solve_vec(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        let rhs = Matrix::from_cols(self.field, self.rows, &[b.to_vec()]);
        self.solve_matrix(&rhs).map(|x| x.col(0))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert!(self.is_square(), "inverse requires a square matrix");
        let sol = self.solve_matrix(&Matrix::identity(self.field, self.rows))?;
        if self.rank() < self.rows {
            return None;
        }
        Some(sol)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Determinant by fraction-free-enough forward elimination with row
    /// swaps. The empty matrix has determinant one.
    pub fn det(&self) -> Scalar {
        assert!(self.is_square(), "determinant requires a square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = self.field.one();
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return self.field.zero();
            };
            if pr != c {
                m.swap_rows(c, pr);
                det = det.neg();
            }
            det = det.mul(&m[(c, c)]);
            let inv = m[(c, c)].inv().expect("pivot is nonzero");
            for i in (c + 1)..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].mul(&inv);
                for j in c..n {
                    let t = factor.mul(&m[(c, j)]);
                    m[(i, j)] = m[(i, j)].sub(&t);
                }
            }
        }
        det
    }

    /// Basis of the subspace fixed pointwise by a square matrix, i.e. the
    /// kernel of `A - I`, as columns.
    pub fn fixed_subspace(&self) -> Matrix {
        assert!(self.is_square(), "fixed subspace requires a square matrix");
        self.sub(&Matrix::identity(self.field, self.rows))
            .kernel_basis()
    }

    /// Direct sum with another square-or-rectangular block on the diagonal.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            self.field, other.field,
            "mixed-field arithmetic is rejected"
        );
        let mut out = Matrix::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    /// Horizontal concatenation.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            self.field, other.field,
            "mixed-field arithmetic is rejected"
        );
        assert_eq!(self.rows, other.rows, "dimension mismatch in hstack");
        Matrix::from_fn(self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            self.field, other.field,
            "mixed-field arithmetic is rejected"
        );
        assert_eq!(self.cols, other.cols, "dimension mismatch in vstack");
        Matrix::from_fn(self.field, self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self[(i, j)].clone()
            } else {
                other[(i - self.rows, j)].clone()
            }
        })
    }
}

/// The ambient rank-one update `I - col * e_t^T` (zero-based column index
/// `t`), the matrix that subtracts `col` scaled by the `t`-th coordinate.
pub fn rank_one_update(t: usize, col: &[Scalar]) -> Matrix {
    let n = col.len();
    assert!(t < n, "index out of range in rank_one_update");
    let field = col
        .first()
        .map(Scalar::field)
        .expect("rank_one_update needs a nonempty column");
    let mut m = Matrix::identity(field, n);
    for i in 0..n {
        m[(i, t)] = m[(i, t)].sub(&col[i]);
    }
    m
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
