//! Dense rational matrices and the exact linear algebra the oracle needs:
//! products, commutators, kernels, ranks, and leading-principal-minor
//! positivity tests. Everything is exact; sizes stay small (the largest
//! algebra handled is 99-dimensional), so simple Gaussian elimination with
//! full rational pivoting is entirely adequate.

use crate::exactnum::Rational;
use nalgebra::DMatrix;
use std::fmt;
use std::ops::{Index, IndexMut};

/// A dense matrix of exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMat {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMat { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds from integer entries, row-major.
    pub fn from_ints(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        RatMat {
            rows,
            cols,
            data: entries.iter().map(|&e| Rational::from_int(e)).collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        RatMat { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        RatMat { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Self {
        RatMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        RatMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let prod = a * b;
                        out[(i, j)] += &prod;
                    }
                }
            }
        }
        out
    }

    /// [A, B] = AB − BA.
    pub fn commutator(&self, other: &Self) -> Self {
        self.matmul(other).sub(&other.matmul(self))
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn trace(&self) -> Rational {
        assert!(self.is_square());
        let mut t = Rational::zero();
        for i in 0..self.rows {
            t += &self[(i, i)];
        }
        t
    }

    /// Is this `c`·identity? Returns the first offending entry otherwise.
    pub fn scalar_deviation(&self, c: &Rational) -> Option<(usize, usize)> {
        assert!(self.is_square());
        for i in 0..self.rows {
            for j in 0..self.cols {
                let expect = if i == j { c.clone() } else { Rational::zero() };
                if self[(i, j)] != expect {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].to_f64())
    }

    /// Applies `v ↦ M·v` to a coordinate vector.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (j, x) in v.iter().enumerate() {
                    if !x.is_zero() && !self[(i, j)].is_zero() {
                        acc += &(&self[(i, j)] * x);
                    }
                }
                acc
            })
            .collect()
    }
}

impl Index<(usize, usize)> for RatMat {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RatMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(m: &mut RatMat) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.ncols() {
        if row == m.nrows() {
            break;
        }
        let Some(p) = (row..m.nrows()).find(|&r| !m[(r, col)].is_zero()) else {
            continue;
        };
        if p != row {
            for j in 0..m.ncols() {
                let tmp = m[(p, j)].clone();
                m[(p, j)] = m[(row, j)].clone();
                m[(row, j)] = tmp;
            }
        }
        let inv = m[(row, col)].recip().expect("pivot is nonzero");
        for j in 0..m.ncols() {
            m[(row, j)] *= &inv;
        }
        for r in 0..m.nrows() {
            if r != row && !m[(r, col)].is_zero() {
                let factor = m[(r, col)].clone();
                for j in 0..m.ncols() {
                    let delta = &factor * &m[(row, j)];
                    m[(r, j)] -= &delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Rank of a rational matrix.
pub fn rank(m: &RatMat) -> usize {
    let mut work = m.clone();
    rref(&mut work).len()
}

/// Basis of the right kernel {x : M·x = 0}.
pub fn kernel_basis(m: &RatMat) -> Vec<Vec<Rational>> {
    let mut work = m.clone();
    let pivots = rref(&mut work);
    let n = m.ncols();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Rational::zero(); n];
            v[fc] = Rational::one();
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = -&work[(prow, fc)];
            }
            v
        })
        .collect()
}

/// Any exact solution x of M·x = b, or None when the system is
/// inconsistent (free variables are set to zero).
pub fn solve(m: &RatMat, b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(m.nrows(), b.len());
    let mut aug = RatMat::zeros(m.nrows(), m.ncols() + 1);
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, m.ncols())] = b[i].clone();
    }
    let pivots = rref(&mut aug);
    if pivots.contains(&m.ncols()) {
        return None;
    }
    let mut x = vec![Rational::zero(); m.ncols()];
    for (row, &col) in pivots.iter().enumerate() {
        x[col] = aug[(row, m.ncols())].clone();
    }
    Some(x)
}

/// Rank of the span of a set of coordinate vectors.
pub fn span_rank(vectors: &[Vec<Rational>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let cols = vectors[0].len();
    let mut m = RatMat::zeros(vectors.len(), cols);
    for (i, v) in vectors.iter().enumerate() {
        for (j, x) in v.iter().enumerate() {
            m[(i, j)] = x.clone();
        }
    }
    rank(&m)
}

/// Exact positive-definiteness of a symmetric matrix via pivots of
/// elimination without row exchanges: the k-th leading principal minor is
/// the product of the first k pivots, so all minors are positive iff all
/// pivots are positive (a zero pivot means a zero minor — not definite).
pub fn is_positive_definite(m: &RatMat) -> bool {
    assert!(m.is_square());
    let n = m.nrows();
    let mut work = m.clone();
    for k in 0..n {
        if !work[(k, k)].is_positive() {
            return false;
        }
        let inv = work[(k, k)].recip().expect("checked positive");
        for r in (k + 1)..n {
            if work[(r, k)].is_zero() {
                continue;
            }
            let factor = &work[(r, k)] * &inv;
            for c in k..n {
                let delta = &factor * &work[(k, c)];
                work[(r, c)] -= &delta;
            }
        }
    }
    true
}
