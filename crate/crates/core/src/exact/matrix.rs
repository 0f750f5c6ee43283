use std::fmt::Debug;
use std::ops::Neg;

use num_traits::{Num, Zero};

use super::{ExactError, GaussianRational, Polynomial, Rational};

/// Field elements usable as matrix entries.
pub trait Scalar: Clone + PartialEq + Debug + Num + Neg<Output = Self> {}

impl<T: Clone + PartialEq + Debug + Num + Neg<Output = T>> Scalar for T {}

/// Dense row-major matrix over an exact field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type RatMatrix = Matrix<Rational>;
pub type GaussMatrix = Matrix<GaussianRational>;

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self, ExactError> {
        if rows == 0 || cols == 0 {
            return Err(ExactError::EmptyMatrix);
        }
        if data.len() != rows * cols {
            return Err(ExactError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, ExactError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 {
            return Err(ExactError::EmptyMatrix);
        }
        let mut data = Vec::with_capacity(r * c);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != c {
                return Err(ExactError::RaggedMatrix {
                    row: i,
                    expected: c,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix { rows: r, cols: c, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        assert!(rows > 0 && cols > 0, "empty matrix");
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(entries: &[T]) -> Self {
        let n = entries.len();
        Matrix::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { T::zero() })
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

    pub fn require_square(&self) -> Result<usize, ExactError> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(ExactError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<U: Scalar>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    /// Matrix product. Panics on incompatible shapes.
    pub fn mul(&self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "incompatible shapes for product");
        let mut out: Matrix<T> = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.get(i, j).clone() + a.clone() * rhs.get(k, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn scale(&self, k: &T) -> Matrix<T> {
        self.map(|v| v.clone() * k.clone())
    }

    /// `M - λI`.
    pub fn shifted(&self, lambda: &T) -> Matrix<T> {
        let mut out = self.clone();
        for i in 0..self.rows.min(self.cols) {
            let v = out.get(i, i).clone() - lambda.clone();
            out.set(i, i, v);
        }
        out
    }

    /// `M v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    /// `vᵀ M` for a row vector `v`.
    pub fn vec_mul(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.rows);
        (0..self.cols)
            .map(|j| {
                (0..self.rows).fold(T::zero(), |acc, i| acc + v[i].clone() * self.get(i, j).clone())
            })
            .collect()
    }

    /// Rank by Bareiss fraction-free elimination.
    ///
    /// Each step replaces `a_ij` by `(p·a_ij − a_ik·a_pj) / prev` where `p`
    /// is the current pivot and `prev` the previous one; over a field every
    /// step is an invertible row operation so the rank is exact.
    pub fn rank(&self) -> usize {
        let mut a = self.to_rows();
        let (m, n) = (self.rows, self.cols);
        let mut prev = T::one();
        let mut r = 0;
        for col in 0..n {
            if r == m {
                break;
            }
            let Some(piv) = (r..m).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            a.swap(r, piv);
            let p = a[r][col].clone();
            for i in r + 1..m {
                let factor = a[i][col].clone();
                for j in col + 1..n {
                    let v = (p.clone() * a[i][j].clone() - factor.clone() * a[r][j].clone()) / prev.clone();
                    a[i][j] = v;
                }
                a[i][col] = T::zero();
            }
            prev = p;
            r += 1;
        }
        r
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix<T>, Vec<usize>) {
        let mut a = self.to_rows();
        let (m, n) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..n {
            if r == m {
                break;
            }
            let Some(piv) = (r..m).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            a.swap(r, piv);
            let inv = T::one() / a[r][col].clone();
            for j in col..n {
                a[r][j] = a[r][j].clone() * inv.clone();
            }
            for i in 0..m {
                if i == r || a[i][col].is_zero() {
                    continue;
                }
                let factor = a[i][col].clone();
                for j in col..n {
                    a[i][j] = a[i][j].clone() - factor.clone() * a[r][j].clone();
                }
            }
            pivots.push(col);
            r += 1;
        }
        let data = a.into_iter().flatten().collect();
        (Matrix { rows: m, cols: n, data }, pivots)
    }

    /// Basis of the right nullspace, one vector per free column.
    ///
    /// Each basis vector has a `1` in its free coordinate.
    pub fn nullspace_basis(&self) -> Vec<Vec<T>> {
        let (r, pivots) = self.rref();
        let n = self.cols;
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![T::zero(); n];
                v[f] = T::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, f).clone();
                }
                v
            })
            .collect()
    }

    /// Gauss–Jordan inverse.
    pub fn inverse(&self) -> Result<Matrix<T>, ExactError> {
        let n = self.require_square()?;
        let aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                T::one()
            } else {
                T::zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(ExactError::Singular);
        }
        Ok(Matrix::from_fn(n, n, |i, j| r.get(i, j + n).clone()))
    }

    /// `k`-th power, `k >= 0`.
    pub fn pow(&self, k: u32) -> Result<Matrix<T>, ExactError> {
        let n = self.require_square()?;
        let mut acc = Matrix::identity(n);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        Ok(acc)
    }

    /// Block assembly helper: copies `src` into `self` at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, src: &Matrix<T>) {
        for i in 0..src.rows {
            for j in 0..src.cols {
                self.set(r0 + i, c0 + j, src.get(i, j).clone());
            }
        }
    }
}

impl RatMatrix {
    /// Characteristic polynomial `det(xI − M)` by the Faddeev–LeVerrier
    /// recurrence over the rationals.
    pub fn char_poly(&self) -> Result<Polynomial, ExactError> {
        let n = self.require_square()?;
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::from_integer(1.into());
        // aux = A·M_k, with M_1 = I.
        let mut aux = self.clone();
        for k in 1..=n {
            let kk = Rational::from_integer(k.into());
            let c = -aux.trace() / kk;
            coeffs[n - k] = c.clone();
            if k < n {
                let m_next = aux.shifted(&-c);
                aux = self.mul(&m_next);
            }
        }
        Ok(Polynomial::new(coeffs))
    }

    pub fn to_gaussian(&self) -> GaussMatrix {
        self.map(|v| GaussianRational::new(v.clone(), Rational::zero()))
    }

    /// Row sums as a vector.
    pub fn row_sums(&self) -> Vec<Rational> {
        (0..self.rows)
            .map(|i| self.row(i).iter().fold(Rational::zero(), |acc, v| acc + v))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn m(rows: &[&[i64]]) -> RatMatrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()).unwrap()
    }

    fn a1() -> RatMatrix {
        m(&[&[0, 0, 598], &[1, 0, 20], &[0, 1, 21]])
    }

    #[test]
    fn construction_rejects_degenerate_shapes() {
        assert_eq!(RatMatrix::from_rows(vec![]), Err(ExactError::EmptyMatrix));
        assert_eq!(RatMatrix::from_rows(vec![vec![]]), Err(ExactError::EmptyMatrix));
        assert!(matches!(
            RatMatrix::from_rows(vec![vec![int(1)], vec![int(1), int(2)]]),
            Err(ExactError::RaggedMatrix { row: 1, .. })
        ));
    }

    #[test]
    fn char_poly_examples() {
        let p = a1().char_poly().unwrap();
        assert_eq!(p.coeffs(), &[int(-598), int(-20), int(-21), int(1)]);
        let z = RatMatrix::zeros(2, 2);
        assert_eq!(z.char_poly().unwrap(), Polynomial::monomial(2));
        assert!(matches!(RatMatrix::zeros(2, 3).char_poly(), Err(ExactError::NotSquare { .. })));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(RatMatrix::identity(5).rank(), 5);
        assert_eq!(RatMatrix::zeros(3, 4).rank(), 0);
        assert_eq!(a1().shifted(&int(23)).rank(), 2);
    }

    #[test]
    fn nullspace_examples() {
        assert!(RatMatrix::identity(4).nullspace_basis().is_empty());
        assert_eq!(RatMatrix::zeros(1, 1).nullspace_basis(), vec![vec![int(1)]]);
        let ns = a1().shifted(&int(23)).nullspace_basis();
        assert_eq!(ns.len(), 1);
        // Right eigenvector of the companion at 23 is the quotient (26, 2, 1).
        let v = &ns[0];
        let k = &v[2];
        let scaled: Vec<Rational> = v.iter().map(|x: &Rational| x / k).collect();
        assert_eq!(scaled, vec![int(26), int(2), int(1)]);
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), RatMatrix::identity(3));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).inverse(), Err(ExactError::Singular));
    }

    #[test]
    fn gaussian_rank() {
        // [[1, i], [i, -1]] has rank 1 over Q(i).
        let g = GaussMatrix::from_rows(vec![
            vec![GaussianRational::new(int(1), int(0)), GaussianRational::new(int(0), int(1))],
            vec![GaussianRational::new(int(0), int(1)), GaussianRational::new(int(-1), int(0))],
        ])
        .unwrap();
        assert_eq!(g.rank(), 1);
        assert_eq!(g.nullspace_basis().len(), 1);
    }

    #[test]
    fn row_sums_and_vectors() {
        let a = m(&[&[0, 2], &[1, 1]]);
        assert_eq!(a.row_sums(), vec![int(2), int(2)]);
        assert_eq!(a.mul_vec(&[int(1), int(1)]), vec![int(2), int(2)]);
        assert_eq!(a.vec_mul(&[int(1), int(2)]), vec![int(2), int(4)]);
        assert_eq!(a.scale(&rat(1, 2)).get(0, 1), &int(1));
    }
}
