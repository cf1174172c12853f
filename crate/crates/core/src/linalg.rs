//! Dense exact linear algebra.
//!
//! Matrices are generic over the scalar. Ranks over the rationals are
//! computed with fraction-free (Bareiss) elimination on integer matrices;
//! kernels and subspace sums use Gauss-Jordan over an exact field.

use std::fmt::{self, Debug};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::{Int, Rational};

/// Commutative ring with exact equality.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
{
}

/// A ring without zero divisors that supports exact division when the
/// quotient is known to exist. Bareiss elimination only needs this.
pub trait IntegralDomain: Ring {
    /// `self / rhs`, where `rhs` divides `self` exactly.
    fn div_exact(&self, rhs: &Self) -> Self;
}

impl<T> IntegralDomain for T
where
    T: Ring + Integer + Signed,
{
    fn div_exact(&self, rhs: &Self) -> Self {
        debug_assert!(self.is_multiple_of(rhs), "inexact division in Bareiss step");
        self.clone() / rhs.clone()
    }
}

/// An exact field.
pub trait Field: Ring + Div<Output = Self> {}

impl<T> Field for Ratio<T> where T: Clone + Integer + Signed + Debug {}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Debug> Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:?}", self.data[r * self.cols + c])?;
            }
        }
        write!(f, "]")
    }
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    /// Builds a matrix from rows. `cols` is needed to describe `0 x cols`
    /// matrices; every row must have exactly `cols` entries.
    pub fn from_rows(cols: usize, rows: Vec<Vec<T>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix row");
            data.extend(row);
        }
        Matrix { rows: n, cols, data }
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<T>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
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

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: T) {
        self.data[r * self.cols + c] = value;
    }

    pub fn add_to(&mut self, r: usize, c: usize, value: T) {
        let slot = &mut self.data[r * self.cols + c];
        *slot = slot.clone() + value;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
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

    /// Matrix product; panics on a shape mismatch.
    pub fn mul(&self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in matrix product");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.add_to(i, j, a.clone() * b.clone());
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn scale(&self, s: &T) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.clone() * s.clone()).collect(),
        }
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Sub-matrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m.set(i, j, self.get(r, c).clone());
            }
        }
        m
    }
}

/// Rank by fraction-free Gaussian elimination.
///
/// Every intermediate entry is a minor of the input, so the division in each
/// step is exact and the entries stay in the ring.
pub fn rank_fraction_free<T: IntegralDomain>(m: &Matrix<T>) -> usize {
    let mut a = m.to_rows();
    let rows = m.rows();
    let cols = m.cols();
    let mut prev = T::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        let p = a[rank][col].clone();
        for r in rank + 1..rows {
            let factor = a[r][col].clone();
            for c in col + 1..cols {
                let v = p.clone() * a[r][c].clone() - factor.clone() * a[rank][c].clone();
                a[r][c] = v.div_exact(&prev);
            }
            a[r][col] = T::zero();
        }
        prev = p;
        rank += 1;
    }
    rank
}

/// Scales each row of a rational matrix by the lcm of its denominators.
/// Row scaling by nonzero integers preserves rank and kernels of the transpose.
pub fn clear_denominators(m: &Matrix<Rational>) -> Matrix<Int> {
    let mut out = Matrix::zeros(m.rows(), m.cols());
    for r in 0..m.rows() {
        let lcm = m.row(r).iter().fold(Int::one(), |acc, x| acc.lcm(x.denom()));
        for c in 0..m.cols() {
            let x = m.get(r, c);
            out.set(r, c, x.numer() * (&lcm / x.denom()));
        }
    }
    out
}

/// Exact rank of a rational matrix.
pub fn rank_rational(m: &Matrix<Rational>) -> usize {
    rank_fraction_free(&clear_denominators(m))
}

/// Basis of the right kernel `{x : m x = 0}` via reduced row echelon form.
pub fn kernel_basis<F: Field>(m: &Matrix<F>) -> Vec<Vec<F>> {
    let (rref, pivots) = reduced_row_echelon(m);
    let cols = m.cols();
    let mut is_pivot = vec![None; cols];
    for (row, &pc) in pivots.iter().enumerate() {
        is_pivot[pc] = Some(row);
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if is_pivot[free].is_some() {
            continue;
        }
        let mut v = vec![F::zero(); cols];
        v[free] = F::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -rref.get(row, free).clone();
        }
        basis.push(v);
    }
    basis
}

/// Reduced row echelon form and the pivot column of each nonzero row.
pub fn reduced_row_echelon<F: Field>(m: &Matrix<F>) -> (Matrix<F>, Vec<usize>) {
    let mut a = m.to_rows();
    let rows = m.rows();
    let cols = m.cols();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = F::one() / a[r][c].clone();
        for x in a[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let v = a[i][j].clone() - f.clone() * a[r][j].clone();
                    a[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (Matrix::from_rows(cols, a), pivots)
}

/// Dimension of the span of a set of vectors in a space of dimension `ambient`.
pub fn span_dimension(ambient: usize, vectors: &[Vec<Rational>]) -> usize {
    if vectors.is_empty() || ambient == 0 {
        return 0;
    }
    rank_rational(&Matrix::from_columns(ambient, vectors))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(rows: Vec<Vec<i64>>) -> Matrix<i64> {
        let cols = rows.first().map_or(0, Vec::len);
        Matrix::from_rows(cols, rows)
    }

    #[test]
    fn bareiss_rank_small() {
        assert_eq!(rank_fraction_free(&int(vec![vec![1, 2], vec![2, 4]])), 1);
        assert_eq!(rank_fraction_free(&int(vec![vec![0, 1], vec![1, 0]])), 2);
        assert_eq!(rank_fraction_free(&Matrix::<i64>::zeros(0, 4)), 0);
        assert_eq!(rank_fraction_free(&Matrix::<i64>::zeros(3, 0)), 0);
        // 3-cycle incidence has rank 2
        let cyc = int(vec![vec![-1, 0, -1], vec![1, -1, 0], vec![0, 1, 1]]);
        assert_eq!(rank_fraction_free(&cyc), 2);
    }

    #[test]
    fn bareiss_agrees_across_scalars() {
        let rows = vec![vec![2, -3, 5, 7], vec![4, -6, 10, 14], vec![1, 1, 1, 1]];
        let small = int(rows.clone());
        let big = small.map(|x| Int::from(*x));
        assert_eq!(rank_fraction_free(&small), 2);
        assert_eq!(rank_fraction_free(&big), 2);
    }

    #[test]
    fn rational_rank_and_kernel() {
        let half = Rational::new(Int::from(1), Int::from(2));
        let m = Matrix::from_rows(
            2,
            vec![vec![half.clone(), Rational::one()], vec![Rational::one(), Rational::from(Int::from(2))]],
        );
        assert_eq!(rank_rational(&m), 1);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 1);
        assert!(m.apply(&k[0]).iter().all(Zero::is_zero));
    }
}
