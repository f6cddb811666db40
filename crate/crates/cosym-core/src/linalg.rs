//! Exact linear algebra over the rationals: reduced row echelon form,
//! kernels, canonical subspace arithmetic, the generalized eigenspace
//! filtration at the eigenvalue 1, characteristic polynomials and exterior
//! powers.
//!
//! Matrices act on column vectors; the columns of a matrix are the images of
//! the basis vectors. Subspaces are kept in reduced echelon form so that
//! equality of subspaces is structural equality of their representations.

use crate::polynomial::Poly;
use crate::rational::Rational;
use num_traits::{One, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
}

/// Dense matrix over `Rational`, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|c| crate::rational::display(self.at(r, c)))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Matrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(
            rows.iter().all(|r| r.len() == ncols),
            "ragged rows in matrix literal"
        );
        Matrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Integer literal convenience, used heavily by fixtures.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| crate::rational::int(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> Vec<Rational> {
        (0..self.cols).map(|c| self.at(r, c).clone()).collect()
    }

    pub fn col(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |r, c| self.at(r, c) + other.at(r, c))
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |r, c| self.at(r, c) - other.at(r, c))
    }

    pub fn scale(&self, s: &Rational) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |r, c| self.at(r, c) * s)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, other.rows,
            "matrix product dimension mismatch: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        Matrix::from_fn(self.rows, other.cols, |r, c| {
            let mut acc = Rational::zero();
            for k in 0..self.cols {
                acc += self.at(r, k) * other.at(k, c);
            }
            acc
        })
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    acc += self.at(r, k) * &v[k];
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn trace(&self) -> Rational {
        assert!(self.is_square());
        (0..self.rows).map(|i| self.at(i, i).clone()).sum()
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(src) = (pivot_row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            if src != pivot_row {
                for c in 0..m.cols {
                    m.entries.swap(pivot_row * m.cols + c, src * m.cols + c);
                }
            }
            let inv = Rational::one() / m.at(pivot_row, col).clone();
            for c in col..m.cols {
                let v = m.at(pivot_row, c) * &inv;
                m.set(pivot_row, c, v);
            }
            for r in 0..m.rows {
                if r != pivot_row && !m.at(r, col).is_zero() {
                    let factor = m.at(r, col).clone();
                    for c in col..m.cols {
                        let v = m.at(r, c) - &factor * m.at(pivot_row, c);
                        m.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Echelon-canonical basis of the null space; `dim = cols - rank`.
    pub fn kernel_basis(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row, &col) in pivots.iter().enumerate() {
                v[col] = Some(row);
            }
            v
        };
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut vec = vec![Rational::zero(); self.cols];
            vec[free] = Rational::one();
            for (col, &pr) in pivot_set.iter().enumerate() {
                if let Some(row) = pr {
                    vec[col] = -r.at(row, free).clone();
                }
            }
            basis.push(vec);
        }
        Subspace::from_vectors(self.cols, basis)
    }

    /// Echelon-canonical basis of the column space.
    pub fn image_basis(&self) -> Subspace {
        Subspace::from_vectors(self.rows, (0..self.cols).map(|c| self.col(c)).collect())
    }

    /// Echelon-canonical particular solution of `self · x = rhs` (free
    /// variables set to zero); `None` when the system is inconsistent.
    pub fn solve(&self, rhs: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(rhs.len(), self.rows, "right-hand side length mismatch");
        let augmented = Matrix::from_fn(self.rows, self.cols + 1, |r, c| {
            if c < self.cols {
                self.at(r, c).clone()
            } else {
                rhs[r].clone()
            }
        });
        let (reduced, pivots) = augmented.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            x[col] = reduced.at(row, self.cols).clone();
        }
        Some(x)
    }

    /// Determinant by fraction-free forward elimination.
    pub fn det(&self) -> Rational {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(src) = (col..n).find(|&r| !m.at(r, col).is_zero()) else {
                return Rational::zero();
            };
            if src != col {
                for c in 0..n {
                    m.entries.swap(col * n + c, src * n + c);
                }
                det = -det;
            }
            let pivot = m.at(col, col).clone();
            det *= &pivot;
            for r in col + 1..n {
                if !m.at(r, col).is_zero() {
                    let factor = m.at(r, col) / &pivot;
                    for c in col..n {
                        let v = m.at(r, c) - &factor * m.at(col, c);
                        m.set(r, c, v);
                    }
                }
            }
        }
        det
    }

    /// Monic characteristic polynomial det(λI - m), exact.
    ///
    /// Evaluates the determinant at degree+1 integer points and interpolates;
    /// this keeps the route independent of the Faddeev-LeVerrier recurrence
    /// used as a cross-check in the test suite.
    pub fn char_poly(&self) -> Result<Poly, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let points: Vec<(Rational, Rational)> = (0..=n as i64)
            .map(|t| {
                let lam = crate::rational::int(t);
                let shifted = Matrix::from_fn(n, n, |r, c| {
                    if r == c {
                        &lam - self.at(r, c)
                    } else {
                        -self.at(r, c).clone()
                    }
                });
                (lam, shifted.det())
            })
            .collect();
        Ok(Poly::lagrange_interpolate(&points))
    }

    /// The action on the k-th exterior power, with basis the lexicographically
    /// ordered k-element subsets. Entry (I, J) is the minor det m[I, J], so
    /// columns of the result are the images of the basis k-vectors.
    pub fn exterior_power(&self, k: usize) -> Matrix {
        assert!(self.is_square(), "exterior power of a non-square matrix");
        let n = self.rows;
        assert!(k <= n, "exterior power degree exceeds dimension");
        let subsets = lex_subsets(n, k);
        Matrix::from_fn(subsets.len(), subsets.len(), |i, j| {
            self.minor(&subsets[i], &subsets[j])
        })
    }

    fn minor(&self, row_idx: &[usize], col_idx: &[usize]) -> Rational {
        let k = row_idx.len();
        Matrix::from_fn(k, k, |r, c| self.at(row_idx[r], col_idx[c]).clone()).det()
    }

    /// Generalized eigenspace filtration at λ=1: dims[j-1] = dim ker (m-id)^j
    /// until the dimensions stabilize.
    pub fn eigen1_filtration(&self) -> Result<Eigen1Filtration, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = Matrix::sub(self, &Matrix::identity(self.rows));
        let mut power = n.clone();
        let mut dims = Vec::new();
        let mut kernels = Vec::new();
        loop {
            let ker = power.kernel_basis();
            let dim = ker.dim();
            if dims.last() == Some(&dim) {
                break;
            }
            if dim == 0 {
                // 1 is not an eigenvalue at all
                return Ok(Eigen1Filtration {
                    dims: vec![0],
                    r: 0,
                    kernels: vec![ker],
                });
            }
            dims.push(dim);
            kernels.push(ker);
            power = power.mul(&n);
        }
        let r = dims.len();
        Ok(Eigen1Filtration { dims, r, kernels })
    }
}

/// Result of [`Matrix::eigen1_filtration`]: the kernels of (m-id)^j with
/// their dimensions, and r = the multiplicity of 1 as a root of the minimal
/// polynomial (0 when 1 is not an eigenvalue).
#[derive(Debug, Clone)]
pub struct Eigen1Filtration {
    pub dims: Vec<usize>,
    pub r: usize,
    /// kernels[j] = ker (m-id)^{j+1}, echelon-canonical.
    pub kernels: Vec<Subspace>,
}

impl Eigen1Filtration {
    /// Jordan block sizes at λ=1, recovered from first differences of the
    /// filtration dimensions. Sorted ascending.
    pub fn jordan_blocks(&self) -> Vec<usize> {
        if self.r == 0 {
            return Vec::new();
        }
        let mut diffs = Vec::with_capacity(self.r);
        let mut prev = 0;
        for &d in &self.dims {
            diffs.push(d - prev);
            prev = d;
        }
        // diffs[j] = number of blocks of size > j
        let mut blocks = Vec::new();
        for j in 0..diffs.len() {
            let next = if j + 1 < diffs.len() { diffs[j + 1] } else { 0 };
            for _ in 0..diffs[j] - next {
                blocks.push(j + 1);
            }
        }
        blocks.sort_unstable();
        blocks
    }
}

/// Subspace of Q^n in reduced echelon form: the representation is unique per
/// subspace, so `PartialEq` decides subspace equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    /// Rows of the reduced echelon form, zero rows dropped.
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace::from_vectors(
            ambient,
            (0..ambient)
                .map(|i| {
                    let mut v = vec![Rational::zero(); ambient];
                    v[i] = Rational::one();
                    v
                })
                .collect(),
        )
    }

    pub fn from_vectors(ambient: usize, vectors: Vec<Vec<Rational>>) -> Self {
        for v in &vectors {
            assert_eq!(v.len(), ambient, "vector length differs from ambient dim");
        }
        if vectors.is_empty() {
            return Subspace::zero(ambient);
        }
        let m = Matrix::from_rows(vectors);
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i)).collect();
        Subspace {
            ambient,
            basis,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    /// Reduce `v` against the echelon basis; returns the residual.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.ambient, "ambient dimension mismatch");
        let mut w = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if !w[p].is_zero() {
                let factor = w[p].clone();
                for (wi, ri) in w.iter_mut().zip(row) {
                    *wi -= &factor * ri;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(other)?;
        let mut vectors = self.basis.clone();
        vectors.extend(other.basis.iter().cloned());
        Ok(Subspace::from_vectors(self.ambient, vectors))
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient));
        }
        // Solve a·B1 - b·B2 = 0: kernel of the matrix whose columns are the
        // basis vectors of B1 followed by -B2, then map the a-part through B1.
        let d1 = self.dim();
        let cols = d1 + other.dim();
        let m = Matrix::from_fn(self.ambient, cols, |r, c| {
            if c < d1 {
                self.basis[c][r].clone()
            } else {
                -other.basis[c - d1][r].clone()
            }
        });
        let ker = m.kernel_basis();
        let vectors = ker
            .basis()
            .iter()
            .map(|coeffs| {
                let mut v = vec![Rational::zero(); self.ambient];
                for (i, base) in self.basis.iter().enumerate() {
                    for (vi, bi) in v.iter_mut().zip(base) {
                        *vi += &coeffs[i] * bi;
                    }
                }
                v
            })
            .collect();
        Ok(Subspace::from_vectors(self.ambient, vectors))
    }

    /// Echelon-canonical representatives of a basis of `self / modulo`.
    /// Each representative is reduced against `modulo` and against the
    /// previously chosen ones, with leading coefficient normalized to 1.
    pub fn quotient_representatives(&self, modulo: &Subspace) -> Vec<Vec<Rational>> {
        assert_eq!(self.ambient, modulo.ambient);
        let mut acc = modulo.clone();
        let mut reps = Vec::new();
        for v in &self.basis {
            let red = acc.reduce(v);
            if red.iter().all(Zero::is_zero) {
                continue;
            }
            let lead = red.iter().find(|x| !x.is_zero()).unwrap().clone();
            let normalized: Vec<Rational> = red.iter().map(|x| x / &lead).collect();
            acc = acc
                .sum(&Subspace::from_vectors(self.ambient, vec![normalized.clone()]))
                .unwrap();
            reps.push(normalized);
        }
        reps
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::DimensionMismatch(format!(
                "subspaces of Q^{} and Q^{}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }
}

/// Lexicographically ordered k-element subsets of {0, .., n-1}.
pub fn lex_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(n, k, i + 1, current, out);
            current.pop();
        }
    }
    rec(n, k, 0, &mut current, &mut out);
    out
}

pub fn unit_vector(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn vec_is_zero(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}
