//! Small dense matrices over a [`Scalar`], stored row-major.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<S>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Matrix { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<S>]) -> Self {
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
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

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: S) {
        self.data[i * self.cols + j] = value;
    }

    pub fn data(&self) -> &[S] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension");
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                dot(row, v)
            })
            .collect()
    }

    pub fn scale(&self, s: &S) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.clone() * s.clone()).collect(),
        }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn conj(&self) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(Scalar::conj).collect(),
        }
    }

    /// Kronecker product; the left factor acts on the slow (row-block) index.
    pub fn kron(&self, other: &Self) -> Self {
        let (r2, c2) = (other.rows, other.cols);
        Self::from_fn(self.rows * r2, self.cols * c2, |i, j| {
            self.get(i / r2, j / c2).clone() * other.get(i % r2, j % c2).clone()
        })
    }

    pub fn trace(&self) -> S {
        (0..self.rows.min(self.cols)).fold(S::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        &(self * other) + &(other * self)
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(Scalar::modulus).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a.clone() - b.clone()).modulus())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.rows, self.cols) == (other.rows, other.cols)
            && self.data.iter().zip(&other.data).all(|(a, b)| a.approx_eq(b, tol))
    }

    pub fn is_zero_within(&self, tol: f64) -> bool {
        self.data.iter().all(|x| x.is_zero_within(tol))
    }

    pub fn to_float(&self) -> Matrix<Complex64> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(Scalar::to_c64).collect(),
        }
    }
}

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter()
        .zip(b)
        .fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// `Σ conj(a_i) b_i`.
pub fn inner<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter()
        .zip(b)
        .fold(S::zero(), |acc, (x, y)| acc + x.conj() * y.clone())
}

pub fn vec_add<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn vec_sub<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn vec_scale<S: Scalar>(a: &[S], s: &S) -> Vec<S> {
    a.iter().map(|x| x.clone() * s.clone()).collect()
}

pub fn vec_max_abs<S: Scalar>(a: &[S]) -> f64 {
    a.iter().map(Scalar::modulus).fold(0.0, f64::max)
}

impl<S: Scalar> Mul for &Matrix<S> {
    type Output = Matrix<S>;

    fn mul(self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension");
        let (n, m, p) = (self.rows, self.cols, rhs.cols);
        let mut data = vec![S::zero(); n * p];
        for i in 0..n {
            for k in 0..m {
                let a = &self.data[i * m + k];
                if *a == S::zero() {
                    continue;
                }
                for j in 0..p {
                    let b = &rhs.data[k * p + j];
                    if *b == S::zero() {
                        continue;
                    }
                    let idx = i * p + j;
                    data[idx] = data[idx].clone() + a.clone() * b.clone();
                }
            }
        }
        Matrix { rows: n, cols: p, data }
    }
}

impl<S: Scalar> Add for &Matrix<S> {
    type Output = Matrix<S>;

    fn add(self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: vec_add(&self.data, &rhs.data),
        }
    }
}

impl<S: Scalar> Sub for &Matrix<S> {
    type Output = Matrix<S>;

    fn sub(self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: vec_sub(&self.data, &rhs.data),
        }
    }
}

/// Incremental row-echelon form used for rank and span-membership tests.
///
/// In exact mode a residual is independent iff it is nonzero. In float mode
/// the largest residual entry must exceed `rel_tol` times the largest entry of
/// the candidate.
#[derive(Clone, Debug)]
pub struct Echelon<S> {
    rows: Vec<(usize, Vec<S>)>,
    rel_tol: f64,
}

impl<S: Scalar> Echelon<S> {
    pub fn new(rel_tol: f64) -> Self {
        Echelon {
            rows: Vec::new(),
            rel_tol,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[S]) -> Vec<S> {
        let mut r = v.to_vec();
        for (p, row) in &self.rows {
            let c = r[*p].clone();
            if c == S::zero() {
                continue;
            }
            for (x, y) in r.iter_mut().zip(row) {
                if *y != S::zero() {
                    *x = x.clone() - c.clone() * y.clone();
                }
            }
        }
        r
    }

    fn pivot_of(&self, residual: &[S], scale: f64) -> Option<usize> {
        let (idx, best) = residual
            .iter()
            .enumerate()
            .map(|(i, x)| (i, x.modulus()))
            .fold((0, 0.0), |acc, (i, m)| if m > acc.1 { (i, m) } else { acc });
        if S::EXACT {
            residual.iter().position(|x| *x != S::zero())
        } else if best > self.rel_tol * scale && best > f64::MIN_POSITIVE {
            Some(idx)
        } else {
            None
        }
    }

    /// True when `v` lies in the span of the inserted vectors.
    pub fn contains(&self, v: &[S]) -> bool {
        let scale = vec_max_abs(v);
        let r = self.reduce(v);
        self.pivot_of(&r, scale).is_none()
    }

    /// Inserts `v` if it is independent of the stored vectors. Returns whether
    /// it was inserted.
    pub fn insert(&mut self, v: &[S]) -> bool {
        let scale = vec_max_abs(v);
        let mut r = self.reduce(v);
        let Some(p) = self.pivot_of(&r, scale) else {
            return false;
        };
        let inv = S::one() / r[p].clone();
        for x in r.iter_mut() {
            *x = x.clone() * inv.clone();
        }
        // keep earlier rows free of the new pivot so later reductions stay valid
        for (_, row) in self.rows.iter_mut() {
            let c = row[p].clone();
            if c != S::zero() {
                for (x, y) in row.iter_mut().zip(&r) {
                    *x = x.clone() - c.clone() * y.clone();
                }
            }
        }
        self.rows.push((p, r));
        true
    }
}

/// Rank of a matrix (row rank through [`Echelon`]).
pub fn rank<S: Scalar>(m: &Matrix<S>, rel_tol: f64) -> usize {
    let mut e = Echelon::new(rel_tol);
    for i in 0..m.rows() {
        e.insert(&m.data()[i * m.cols()..(i + 1) * m.cols()]);
    }
    e.rank()
}

/// Null space basis by reduced row echelon form. Intended for exact scalars;
/// float callers should prefer the SVD route in [`crate::linalg`].
pub fn nullspace_rref<S: Scalar>(m: &Matrix<S>, rel_tol: f64) -> Vec<Vec<S>> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<S>> = (0..rows).map(|i| m.data()[i * cols..(i + 1) * cols].to_vec()).collect();
    let scale = m.max_abs();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let (best_row, best) =
            (r..rows)
                .map(|i| (i, a[i][c].modulus()))
                .fold((r, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        let nonzero = if S::EXACT {
            (r..rows).find(|&i| a[i][c] != S::zero())
        } else if best > rel_tol * scale {
            Some(best_row)
        } else {
            None
        };
        let Some(pr) = nonzero else { continue };
        a.swap(r, pr);
        let inv = S::one() / a[r][c].clone();
        for x in a[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && a[i][c] != S::zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let t = a[r][j].clone();
                    a[i][j] = a[i][j].clone() - f.clone() * t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![S::zero(); cols];
            v[f] = S::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][f].clone();
            }
            v
        })
        .collect()
}
