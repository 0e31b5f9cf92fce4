//! Tracial GNS construction, GNS representations of states over a closed
//! operator basis, commutants and purity.
//!
//! Everything here works in floating point; kernels are decided by the
//! cutoff `λ ⩽ 1e-8 · λ_max` on the positive Gram matrix.

use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::AlgebraSpec;
use crate::enveloping::{Enveloping, GeneratedSubalgebra, MultOp};
use crate::error::{NaqmError, Result};
use crate::linalg::{self, CMatrix};
use crate::matrix::{inner, Matrix};
use crate::scalar::Scalar;
use crate::states::{StateFunctional, TraceFunctional};

/// Relative cutoff separating the Gram kernel from its range.
pub const KERNEL_CUTOFF: f64 = 1e-8;

type C = Complex64;

/// Quotient of an ambient coordinate space by the zero-norm vectors.
#[derive(Clone, Debug)]
pub struct PreHilbert {
    pub ambient_dim: usize,
    /// Columns `V_r` spanning the range of the ambient Gram matrix.
    pub quotient_basis: Vec<Vec<C>>,
    /// `V_r† G V_r`, positive definite.
    pub gram: CMatrix,
    pub vacuum: Vec<C>,
    /// Eigenvalues of the ambient Gram matrix, ascending.
    pub gram_eigenvalues: Vec<f64>,
}

impl PreHilbert {
    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    /// `(u, v) = u† gram v`.
    pub fn inner(&self, u: &[C], v: &[C]) -> C {
        inner(u, &self.gram.mul_vec(v))
    }

    /// Quotient coordinates of an ambient vector.
    pub fn project(&self, v: &[C]) -> Vec<C> {
        self.quotient_basis.iter().map(|b| inner(b, v)).collect()
    }

    /// Adjoint of `m` with respect to the quotient inner product.
    pub fn adjoint(&self, m: &CMatrix) -> CMatrix {
        let ginv = linalg::inverse(&self.gram).expect("quotient Gram is positive definite");
        &(&ginv * &m.adjoint()) * &self.gram
    }
}

#[derive(Clone, Debug)]
enum Source {
    /// Operators act on algebra coefficients directly.
    Tracial,
    /// Operators act by left composition on a closed basis.
    State {
        basis: Vec<CMatrix>,
        pinv: CMatrix,
        tol: f64,
    },
}

/// `X ↦ π(X)` on the quotient space.
#[derive(Clone, Debug)]
pub struct Representation {
    pub dim: usize,
    source: Source,
    /// `V_r`: ambient × quotient.
    lift: CMatrix,
}

impl Representation {
    /// Matrix of `X` in ambient coordinates.
    fn ambient(&self, x: &CMatrix) -> Result<CMatrix> {
        match &self.source {
            Source::Tracial => {
                if x.rows() != self.lift.rows() {
                    return Err(NaqmError::dims(self.lift.rows(), x.rows()));
                }
                Ok(x.clone())
            }
            Source::State { basis, pinv, tol } => {
                let n = basis[0].rows();
                if x.rows() != n {
                    return Err(NaqmError::dims(n, x.rows()));
                }
                let m = basis.len();
                let flat = flatten(basis);
                let mut out = Matrix::zeros(m, m);
                for (j, b) in basis.iter().enumerate() {
                    let prod = x * b;
                    let coords = pinv.mul_vec(prod.data());
                    let back = flat.mul_vec(&coords);
                    let resid = back
                        .iter()
                        .zip(prod.data())
                        .map(|(a, b)| (a - b).norm())
                        .fold(0.0, f64::max);
                    if resid > tol * prod.max_abs().max(1.0) {
                        return Err(NaqmError::NonClosedBasis);
                    }
                    for (i, c) in coords.into_iter().enumerate() {
                        out.set(i, j, c);
                    }
                }
                Ok(out)
            }
        }
    }

    pub fn map_matrix(&self, x: &CMatrix) -> Result<CMatrix> {
        let a = self.ambient(x)?;
        Ok(&(&self.lift.adjoint() * &a) * &self.lift)
    }

    pub fn map(&self, x: &MultOp<C>) -> Result<CMatrix> {
        self.map_matrix(x.matrix())
    }
}

/// Flattened basis matrices as columns of an `n² × m` matrix.
fn flatten(basis: &[CMatrix]) -> CMatrix {
    let cols: Vec<Vec<C>> = basis.iter().map(|b| b.data().to_vec()).collect();
    Matrix::from_columns(basis[0].rows() * basis[0].cols(), &cols)
}

/// Range of a PSD Hermitian matrix: `(V_r, all eigenvalues ascending)`.
/// With a trivial kernel `V_r` is the identity.
fn range_basis(g: &CMatrix, tol: f64) -> Result<(Vec<Vec<C>>, Vec<f64>)> {
    let n = g.rows();
    let (vals, vecs) = linalg::hermitian_eigen(g);
    let lmax = vals.iter().copied().fold(0.0, f64::max);
    let lmin = vals.first().copied().unwrap_or(0.0);
    if lmin < -tol.max(KERNEL_CUTOFF * lmax) {
        return Err(NaqmError::InvalidState(format!(
            "Gram matrix has negative eigenvalue {lmin:e}"
        )));
    }
    let cutoff = KERNEL_CUTOFF * lmax;
    if vals.iter().all(|v| *v > cutoff) {
        let id = (0..n)
            .map(|i| (0..n).map(|j| C::new(if i == j { 1.0 } else { 0.0 }, 0.0)).collect())
            .collect();
        return Ok((id, vals));
    }
    let kept = vals
        .iter()
        .zip(vecs)
        .filter(|(v, _)| **v > cutoff)
        .map(|(_, v)| v)
        .collect();
    Ok((kept, vals))
}

fn build(g: &CMatrix, vacuum_ambient: &[C], source: Source, tol: f64) -> Result<(PreHilbert, Representation)> {
    let gh = linalg::hermitian_part(g);
    if g.max_abs_diff(&gh) > tol.max(KERNEL_CUTOFF * g.max_abs()) {
        return Err(NaqmError::InvalidState("Gram matrix is not Hermitian".into()));
    }
    let (basis, eigenvalues) = range_basis(&gh, tol)?;
    let lift = Matrix::from_columns(g.rows(), &basis);
    let gram = &(&lift.adjoint() * &gh) * &lift;
    let pre = PreHilbert {
        ambient_dim: g.rows(),
        vacuum: basis.iter().map(|b| inner(b, vacuum_ambient)).collect(),
        quotient_basis: basis,
        gram,
        gram_eigenvalues: eigenvalues,
    };
    let rep = Representation {
        dim: pre.dim(),
        source,
        lift,
    };
    Ok((pre, rep))
}

/// Kernel of `G_μν = τ(e_μ* e_ν)` and whether it is a left ideal under the
/// generators `L_μ`, `R_μ`.
#[derive(Clone, Debug)]
pub struct ZeroNormIdeal {
    pub basis: Vec<Vec<C>>,
    pub left_ideal: bool,
}

pub fn zero_norm_ideal<S: Scalar>(alg: &AlgebraSpec<S>, tau: &TraceFunctional<S>, tol: f64) -> ZeroNormIdeal {
    let alg = alg.to_float();
    let tau = TraceFunctional::new(&alg, tau.covector().iter().map(Scalar::to_c64).collect()).expect("same dimension");
    let g = tau.gram(&alg);
    let (vals, vecs) = linalg::hermitian_eigen(&g);
    let lmax = vals.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let basis: Vec<Vec<C>> = vals
        .iter()
        .zip(vecs)
        .filter(|(v, _)| v.abs() <= KERNEL_CUTOFF * lmax)
        .map(|(_, v)| v)
        .collect();
    let env = Enveloping::new(&alg);
    let scale = g.max_abs().max(1.0);
    let left_ideal = env
        .left_generators()
        .iter()
        .chain(env.right_generators().iter())
        .all(|x| {
            basis.iter().all(|k| {
                let xk = x.matrix().mul_vec(k);
                g.mul_vec(&xk).iter().all(|c| c.norm() <= tol.max(1e-9) * scale)
            })
        });
    ZeroNormIdeal { basis, left_ideal }
}

/// GNS space of the trace: the algebra with `(ψ_a, ψ_b) = τ(a* b)` modulo
/// zero-norm vectors, and `π_τ(X) ψ_a = ψ_{X ▷ a}`.
pub fn tracial_gns<S: Scalar>(
    alg: &AlgebraSpec<S>,
    tau: &TraceFunctional<S>,
    tol: f64,
) -> Result<(PreHilbert, Representation)> {
    let report = tau.check_axioms(alg, tol);
    if !report.passed {
        return Err(NaqmError::TraceAxiomFailure(report.failures.join(", ")));
    }
    let falg = alg.to_float();
    let ftau = TraceFunctional::new(&falg, tau.covector().iter().map(Scalar::to_c64).collect())?;
    let g = ftau.gram(&falg);
    let unit = falg.unit().into_coeffs();
    build(&g, &unit, Source::Tracial, tol)
}

/// GNS construction for a state restricted to the span of a closed operator
/// basis: `G_ij = ω(B_i* ∘ B_j)`, quotient by the Gel'fand ideal, and
/// `π_ω(X)` acting by left composition.
pub fn gns_from_state(
    env: &Enveloping<C>,
    omega: &StateFunctional<C>,
    op_basis: &GeneratedSubalgebra<C>,
    tol: f64,
) -> Result<(PreHilbert, Representation)> {
    if !op_basis.closed || op_basis.basis.is_empty() {
        return Err(NaqmError::NonClosedBasis);
    }
    let m = op_basis.dim;
    let stars: Vec<MultOp<C>> = op_basis.basis.iter().map(|b| env.star_op(b)).collect::<Result<_>>()?;
    let g = Matrix::from_fn(m, m, |i, j| {
        omega.eval_matrix(&(stars[i].matrix() * op_basis.basis[j].matrix()))
    });
    let mats: Vec<CMatrix> = op_basis.basis.iter().map(|b| b.matrix().clone()).collect();
    let flat = flatten(&mats);
    let pinv = linalg::pseudo_inverse(&flat, 1e-12);
    let id = Matrix::<C>::identity(env.dim());
    let unit_coords = pinv.mul_vec(id.data());
    let back = flat.mul_vec(&unit_coords);
    if back.iter().zip(id.data()).any(|(a, b)| (a - b).norm() > 1e-8) {
        return Err(NaqmError::InvalidInput(
            "operator basis does not contain the identity".into(),
        ));
    }
    let source = Source::State {
        basis: mats,
        pinv,
        tol: tol.max(1e-9),
    };
    build(&g, &unit_coords, source, tol)
}

/// Operators commuting with every `map(B_i)`.
pub fn commutant(images: &[CMatrix], rel_tol: f64) -> Vec<CMatrix> {
    let Some(first) = images.first() else {
        return Vec::new();
    };
    let d = first.rows();
    let id = Matrix::<C>::identity(d);
    let blocks: Vec<CMatrix> = images.iter().map(|m| &m.kron(&id) - &id.kron(&m.transpose())).collect();
    let rows = blocks.len() * d * d;
    let stacked = Matrix::from_fn(rows, d * d, |r, c| *blocks[r / (d * d)].get(r % (d * d), c));
    linalg::nullspace(&stacked, rel_tol)
        .into_iter()
        .map(|v| Matrix::from_vec(d, d, v))
        .collect()
}

/// Commutant of `π(B)` for every basis member `B`.
pub fn commutant_of(rep: &Representation, generators: &[MultOp<C>]) -> Result<Vec<CMatrix>> {
    let images = generators.iter().map(|g| rep.map(g)).collect::<Result<Vec<_>>>()?;
    if images.is_empty() {
        return Ok(Vec::new());
    }
    Ok(commutant(&images, KERNEL_CUTOFF))
}

#[derive(Clone, Debug, Serialize)]
pub struct GnsReport {
    pub quotient_dim: usize,
    pub gram_eigenvalues: Vec<f64>,
    pub commutant_dim: usize,
    pub pure: bool,
}

/// Builds the GNS representation and reports purity by commutant dimension.
pub fn gns_report(
    env: &Enveloping<C>,
    omega: &StateFunctional<C>,
    op_basis: &GeneratedSubalgebra<C>,
    tol: f64,
) -> Result<GnsReport> {
    let (pre, rep) = gns_from_state(env, omega, op_basis, tol)?;
    let commutant_dim = commutant_of(&rep, &op_basis.basis)?.len();
    Ok(GnsReport {
        quotient_dim: pre.dim(),
        gram_eigenvalues: pre.gram_eigenvalues.clone(),
        commutant_dim,
        pure: commutant_dim == 1,
    })
}

/// A state is pure when its GNS representation has scalar commutant.
pub fn is_pure(
    env: &Enveloping<C>,
    omega: &StateFunctional<C>,
    op_basis: &GeneratedSubalgebra<C>,
    tol: f64,
) -> Result<bool> {
    Ok(gns_report(env, omega, op_basis, tol)?.pure)
}
