//! Float-only dense kernels: exponential, spectra, null spaces.
//!
//! Decompositions are delegated to `nalgebra`; results are checked by
//! residuals at the call sites rather than by trusting solver flags.

use nalgebra::{DMatrix, SymmetricEigen, SVD};
use num_complex::Complex64;

use crate::matrix::Matrix;

pub type CMatrix = Matrix<Complex64>;

pub fn to_na(m: &CMatrix) -> DMatrix<Complex64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| *m.get(i, j))
}

pub fn from_na(m: &DMatrix<Complex64>) -> CMatrix {
    Matrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// SVD with a convergence threshold below machine precision; the default
/// threshold leaves reconstruction errors near `1e-7` on some operator bases.
fn svd(m: DMatrix<Complex64>, u: bool, v: bool) -> SVD<Complex64, nalgebra::Dyn, nalgebra::Dyn> {
    SVD::try_new(m.clone(), u, v, 1e-18, 100_000).unwrap_or_else(|| SVD::new(m, u, v))
}

/// Matrix exponential (nalgebra's scaling and squaring Padé approximant).
pub fn expm(a: &CMatrix) -> CMatrix {
    assert!(a.is_square(), "expm needs a square matrix");
    if a.rows() == 0 {
        return a.clone();
    }
    from_na(&to_na(a).exp())
}

/// Deterministic unitary from the QR factor of a fixed trigonometric matrix.
fn mixing_unitary(n: usize, seed: usize) -> DMatrix<Complex64> {
    let m = DMatrix::from_fn(n, n, |i, j| {
        let phase = (seed * 7919 + i * n + j + 1) as f64;
        Complex64::new(phase.sin(), (1.618 * phase).cos())
    });
    m.qr().q()
}

/// Eigenvalues of a general complex matrix from the diagonal of its Schur form.
///
/// The shifted QR iteration can stall on some exactly structured inputs, so
/// a stalled run is retried on unitarily similar matrices.
pub fn eigenvalues(a: &CMatrix) -> Vec<Complex64> {
    use nalgebra::linalg::Schur;
    let n = a.rows();
    let m = to_na(a);
    let max_iter = 500 * n.max(1);
    let diag = |s: Schur<Complex64, nalgebra::Dyn>| {
        let (_, t) = s.unpack();
        (0..t.nrows()).map(|i| t[(i, i)]).collect()
    };
    if let Some(s) = Schur::try_new(m.clone(), f64::EPSILON, max_iter) {
        return diag(s);
    }
    for seed in 0..8 {
        let q = mixing_unitary(n, seed);
        let rotated = q.adjoint() * &m * &q;
        if let Some(s) = Schur::try_new(rotated, f64::EPSILON, max_iter) {
            return diag(s);
        }
    }
    let s = Schur::try_new(m, 1e3 * f64::EPSILON, 100 * max_iter).expect("Schur iteration converges");
    diag(s)
}

/// Singular values, descending.
pub fn singular_values(a: &CMatrix) -> Vec<f64> {
    let svd = svd(to_na(a), false, false);
    let mut s: Vec<f64> = svd.singular_values.iter().copied().collect();
    s.sort_by(|x, y| y.total_cmp(x));
    s
}

/// Orthonormal null-space basis. A singular value counts as zero when it is
/// at most `rel_tol` times the largest one (or when the matrix is zero).
pub fn nullspace(a: &CMatrix, rel_tol: f64) -> Vec<Vec<Complex64>> {
    let (rows, cols) = (a.rows(), a.cols());
    if cols == 0 {
        return Vec::new();
    }
    // pad to at least square so that V is complete
    let padded = DMatrix::from_fn(rows.max(cols), cols, |i, j| {
        if i < rows {
            *a.get(i, j)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let svd = svd(padded, false, true);
    let v_t = svd.v_t.expect("requested V");
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let cutoff = rel_tol * smax;
    let mut out: Vec<(f64, Vec<Complex64>)> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| smax == 0.0 || s <= cutoff)
        .map(|(k, &s)| (s, (0..cols).map(|j| v_t[(k, j)].conj()).collect()))
        .collect();
    out.sort_by(|x, y| x.0.total_cmp(&y.0));
    out.into_iter().map(|(_, v)| v).collect()
}

/// Right singular vectors whose singular value is at most `abs_tol`,
/// ascending by singular value.
pub fn small_singular_vectors(a: &CMatrix, abs_tol: f64) -> Vec<(f64, Vec<Complex64>)> {
    let (rows, cols) = (a.rows(), a.cols());
    let padded = DMatrix::from_fn(rows.max(cols), cols, |i, j| {
        if i < rows {
            *a.get(i, j)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let svd = svd(padded, false, true);
    let v_t = svd.v_t.expect("requested V");
    let mut out: Vec<(f64, Vec<Complex64>)> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= abs_tol)
        .map(|(k, &s)| (s, (0..cols).map(|j| v_t[(k, j)].conj()).collect()))
        .collect();
    out.sort_by(|x, y| x.0.total_cmp(&y.0));
    out
}

/// Eigen-decomposition of a Hermitian matrix: ascending eigenvalues and the
/// matching orthonormal eigenvectors as columns.
pub fn hermitian_eigen(a: &CMatrix) -> (Vec<f64>, Vec<Vec<Complex64>>) {
    let sym = to_na(&hermitian_part(a));
    let eig = SymmetricEigen::try_new(sym.clone(), f64::EPSILON, 1000 * sym.nrows().max(1))
        .unwrap_or_else(|| SymmetricEigen::new(sym));
    let mut pairs: Vec<(f64, Vec<Complex64>)> = (0..eig.eigenvalues.len())
        .map(|k| (eig.eigenvalues[k], eig.eigenvectors.column(k).iter().copied().collect()))
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    pairs.into_iter().unzip()
}

pub fn hermitian_part(a: &CMatrix) -> CMatrix {
    let h = a + &a.adjoint();
    h.scale(&Complex64::new(0.5, 0.0))
}

/// Least-squares coordinates of `b` in the column span of `a`.
pub fn solve_least_squares(a: &CMatrix, b: &[Complex64]) -> Vec<Complex64> {
    let svd = svd(to_na(a), true, true);
    let rhs = nalgebra::DVector::from_column_slice(b);
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let x = svd
        .solve(&rhs, 1e-12 * smax.max(f64::MIN_POSITIVE))
        .expect("SVD with U and V");
    x.iter().copied().collect()
}

/// Moore–Penrose pseudo-inverse.
pub fn pseudo_inverse(a: &CMatrix, rel_tol: f64) -> CMatrix {
    let svd = svd(to_na(a), true, true);
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let p = svd
        .pseudo_inverse(rel_tol * smax.max(f64::MIN_POSITIVE))
        .expect("SVD with U and V");
    from_na(&p)
}

pub fn inverse(a: &CMatrix) -> Option<CMatrix> {
    to_na(a).try_inverse().map(|m| from_na(&m))
}

pub fn vector_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}
