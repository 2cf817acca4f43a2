//! Exact linear algebra over the rationals.
//!
//! Cohomology dimensions, obstruction classes and quotient bases all hang off
//! these routines, so reduction is fully deterministic: the pivot is always
//! the first nonzero entry of the leftmost unfinished column (no pivot-size
//! heuristics), which makes every basis and particular solution canonical and
//! reproducible across runs.

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Arbitrary-precision rational scalar. Always kept in lowest terms with a
/// positive denominator by the underlying type.
pub type Scalar = BigRational;

/// Integer constant as a scalar.
pub fn int(k: i64) -> Scalar {
    BigRational::from_integer(k.into())
}

/// Rational constant p/q. Panics if q = 0.
pub fn frac(p: i64, q: i64) -> Scalar {
    BigRational::new(p.into(), q.into())
}

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// Builds a matrix from complete rows. Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Matrix { rows: r, cols: c, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        let mut m = Matrix::zero(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, f(r, c));
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

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        Matrix::from_fn(self.rows, other.cols, |r, c| {
            let mut acc = Scalar::zero();
            for k in 0..self.cols {
                let a = self.at(r, k);
                if !a.is_zero() {
                    acc += a * other.at(k, c);
                }
            }
            acc
        })
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero();
                for c in 0..self.cols {
                    let a = self.at(r, c);
                    if !a.is_zero() && !v[c].is_zero() {
                        acc += a * &v[c];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |r, c| self.at(r, c) + other.at(r, c))
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |r, c| self.at(r, c) - other.at(r, c))
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |r, c| self.at(r, c) * s)
    }

    /// AB - BA.
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        self.matmul(other).sub(&other.matmul(self))
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "shape mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "shape mismatch");
        Matrix::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.at(r, c).clone()
            } else {
                other.at(r, c - self.cols).clone()
            }
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form with the fixed pivoting rule: scan columns
    /// left to right, take the first nonzero entry among the remaining rows.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..m.cols {
            if next == m.rows {
                break;
            }
            let hit = (next..m.rows).find(|&r| !m.at(r, col).is_zero());
            let Some(hit) = hit else { continue };
            m.swap_rows(next, hit);
            let lead = m.at(next, col).clone();
            if !lead.is_one() {
                for c in col..m.cols {
                    if !m.at(next, c).is_zero() {
                        let v = m.at(next, c) / &lead;
                        m.set(next, c, v);
                    }
                }
            }
            for r in 0..m.rows {
                if r == next || m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m.at(r, col).clone();
                for c in col..m.cols {
                    if !m.at(next, c).is_zero() {
                        let v = m.at(r, c) - &factor * m.at(next, c);
                        m.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            next += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Canonical null-space basis: one vector per free column, carrying 1 in
    /// that coordinate, listed in ascending free-column order.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let Rref { matrix: r, pivots } = self.rref();
        let mut basis = Vec::new();
        let mut piv_iter = pivots.iter().copied().peekable();
        let mut free_cols = Vec::new();
        for c in 0..self.cols {
            if piv_iter.peek() == Some(&c) {
                piv_iter.next();
            } else {
                free_cols.push(c);
            }
        }
        for f in free_cols {
            let mut v = vec![Scalar::zero(); self.cols];
            v[f] = Scalar::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.at(i, f).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Column space as a canonical subspace (row reduction of the transpose).
    pub fn column_space(&self) -> Subspace {
        let t = self.transpose();
        let rows: Vec<Vec<Scalar>> = (0..t.rows).map(|r| t.row(r).to_vec()).collect();
        Subspace::from_spanning(rows, self.rows)
    }

    /// One particular solution of `self * x = rhs`, or None if inconsistent.
    /// Free coordinates are set to zero, so the answer is canonical.
    pub fn solve(&self, rhs: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(self.rows, rhs.len(), "shape mismatch");
        let mut aug = Matrix::zero(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.at(r, c).clone());
            }
            aug.set(r, self.cols, rhs[r].clone());
        }
        let Rref { matrix: m, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = m.at(i, self.cols).clone();
        }
        Some(x)
    }
}

/// Result of row reduction: the reduced matrix plus the pivot columns in
/// order. `pivots.len()` is the rank.
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

/// A linear subspace of Q^ambient held by its canonical RREF basis.
///
/// Two subspaces are equal as subspaces iff their `Subspace` values are equal,
/// which is what makes cohomology representatives comparable across runs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Matrix::zero(0, ambient),
            pivots: Vec::new(),
        }
    }

    /// Span of the given vectors, stored in RREF with zero rows dropped.
    pub fn from_spanning(vectors: Vec<Vec<Scalar>>, ambient: usize) -> Subspace {
        for v in &vectors {
            assert_eq!(v.len(), ambient, "vector length != ambient dimension");
        }
        if vectors.is_empty() {
            return Subspace::zero(ambient);
        }
        let Rref { matrix, pivots } = Matrix::from_rows(vectors).rref();
        let rank = pivots.len();
        let rows: Vec<Vec<Scalar>> = (0..rank).map(|r| matrix.row(r).to_vec()).collect();
        Subspace {
            ambient,
            basis: Matrix::from_rows(rows),
            pivots,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.dim()).map(|r| self.basis.row(r).to_vec()).collect()
    }

    pub fn basis_matrix(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Eliminates the pivot coordinates of `v` against the basis. The residue
    /// is zero iff `v` lies in the subspace; it is a canonical representative
    /// of `v` modulo the subspace either way.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient, "vector length != ambient dimension");
        let mut w = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            if w[p].is_zero() {
                continue;
            }
            let coef = w[p].clone();
            for c in 0..self.ambient {
                let b = self.basis.at(i, c);
                if !b.is_zero() {
                    w[c] -= &coef * b;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|r| self.contains(other.basis.row(r)))
    }

    /// Coefficients of `v` in the RREF basis (just the pivot coordinates),
    /// or None when `v` is outside the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Span of the union.
    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut rows = self.basis_rows();
        rows.extend(other.basis_rows());
        Subspace::from_spanning(rows, self.ambient)
    }

    /// dim(self / sub). None unless `sub` really is a subspace of `self`.
    pub fn quotient_dim(&self, sub: &Subspace) -> Option<usize> {
        if !self.contains_subspace(sub) {
            return None;
        }
        Some(self.dim() - sub.dim())
    }
}
