//! Eigenvectors of multiplication operators, eigenstate checks and the
//! spectral construction of Jordan eigenvectors.

use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::{AlgebraSpec, Element};
use crate::enveloping::{Enveloping, GeneratedSubalgebra, MultOp};
use crate::error::{NaqmError, Result};
use crate::instances::{MatrixModel, ProductKind};
use crate::linalg::{self, CMatrix};
use crate::matrix::{inner, Matrix};
use crate::states::{StateFunctional, TraceFunctional};

type C = Complex64;

/// Eigenvalues closer than this are treated as one cluster.
pub const CLUSTER_TOL: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct EigenPair {
    pub value: C,
    pub vector: Element<C>,
    /// `max |X ψ − λ ψ|`.
    pub residual: f64,
    /// Set for generalized eigenvectors of a defective cluster.
    pub generalized: bool,
}

fn clusters(mut values: Vec<C>) -> Vec<(C, usize)> {
    values.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let mut out: Vec<(Vec<C>, C)> = Vec::new();
    for v in values {
        match out.iter_mut().find(|(_, c)| (*c - v).norm() < CLUSTER_TOL) {
            Some((members, centre)) => {
                members.push(v);
                *centre = members.iter().sum::<C>() / members.len() as f64;
            }
            None => out.push((vec![v], v)),
        }
    }
    out.into_iter().map(|(m, c)| (c, m.len())).collect()
}

fn shifted(x: &CMatrix, lambda: C) -> CMatrix {
    x - &Matrix::identity(x.rows()).scale(&lambda)
}

fn max_norm(v: &[C]) -> f64 {
    v.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Orthonormalizes in `(u, v) = u† G v`, or Euclidean when `G` is absent or
/// degenerate on the span.
fn orthonormalize(vs: Vec<Vec<C>>, gram: Option<&CMatrix>) -> Vec<Vec<C>> {
    let ip = |u: &[C], v: &[C]| match gram {
        Some(g) => inner(u, &g.mul_vec(v)),
        None => inner(u, v),
    };
    let mut out: Vec<Vec<C>> = Vec::new();
    for mut v in vs {
        for u in &out {
            let c = ip(u, &v);
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi -= c * ui;
            }
        }
        let n2 = ip(&v, &v).re;
        let n2 = if n2 > 1e-20 { n2 } else { inner(&v, &v).re };
        if n2 <= 1e-28 {
            continue;
        }
        let s = 1.0 / n2.sqrt();
        out.push(v.iter().map(|c| c * s).collect());
    }
    out
}

/// Fixes the global phase: the largest-modulus coordinate becomes real positive.
fn fix_phase(v: &mut [C]) {
    let Some(k) = (0..v.len()).max_by(|&a, &b| {
        v[a].norm()
            .partial_cmp(&v[b].norm())
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(b.cmp(&a))
    }) else {
        return;
    };
    if v[k].norm() == 0.0 {
        return;
    }
    let phase = v[k].conj() / v[k].norm();
    for c in v.iter_mut() {
        *c *= phase;
    }
}

/// Full eigen-decomposition of `X` acting on the algebra. Eigenvectors in a
/// cluster are orthonormalized in the trace inner product when a trace is
/// given. Sorted by `(Re λ, Im λ)` descending, then residual.
pub fn operator_eigen(alg: &AlgebraSpec<C>, tau: Option<&TraceFunctional<C>>, x: &MultOp<C>) -> Result<Vec<EigenPair>> {
    let m = x.matrix();
    if m.rows() != alg.dim() {
        return Err(NaqmError::dims(alg.dim(), m.rows()));
    }
    let n = m.rows();
    let gram = tau.map(|t| t.gram(alg));
    let scale = m.max_abs().max(1.0) * n as f64;
    let null_tol = 1e-7 * scale;
    let mut pairs = Vec::new();
    for (lambda, mult) in clusters(linalg::eigenvalues(m)) {
        let a = shifted(m, lambda);
        let mut found: Vec<Vec<C>> = linalg::small_singular_vectors(&a, null_tol)
            .into_iter()
            .take(mult)
            .map(|(_, v)| v)
            .collect();
        let proper = found.len();
        if proper < mult {
            // defective cluster: complete with vectors from ker (X − λ)^mult
            let mut power = a.clone();
            for _ in 1..mult {
                power = &power * &a;
            }
            let tol = 1e-7 * power.max_abs().max(1.0) * n as f64;
            for (_, v) in linalg::small_singular_vectors(&power, tol) {
                if found.len() == mult {
                    break;
                }
                let mut w = v.clone();
                for u in &found {
                    let c = inner(u, &w) / inner(u, u);
                    for (wi, ui) in w.iter_mut().zip(u) {
                        *wi -= c * ui;
                    }
                }
                if linalg::vector_norm(&w) > 1e-6 {
                    found.push(w);
                }
            }
        }
        let (eig, gen) = found.split_at(proper.min(found.len()));
        for (vecs, generalized) in [(eig.to_vec(), false), (gen.to_vec(), true)] {
            for mut v in orthonormalize(vecs, gram.as_ref()) {
                fix_phase(&mut v);
                let xv = m.mul_vec(&v);
                let residual = max_norm(&xv.iter().zip(&v).map(|(a, b)| a - lambda * b).collect::<Vec<_>>());
                pairs.push(EigenPair {
                    value: lambda,
                    vector: Element::new(v),
                    residual,
                    generalized,
                });
            }
        }
    }
    // real parts within the cluster tolerance count as equal
    let key = |x: f64| (x / CLUSTER_TOL).round() + 0.0;
    pairs.sort_by(|a, b| {
        key(b.value.re)
            .total_cmp(&key(a.value.re))
            .then(key(b.value.im).total_cmp(&key(a.value.im)))
            .then(a.residual.total_cmp(&b.residual))
    });
    Ok(pairs)
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenstateReport {
    pub lambda: [f64; 2],
    /// `max_i |ω(B_i ∘ X) − λ ω(B_i)|`.
    pub max_residual: f64,
    /// `ω((X − λ)* ∘ (X − λ))` when `X` carries a word.
    pub variance: Option<f64>,
    pub passed: bool,
}

/// Checks `ω(B ∘ X) = λ ω(B)` on every member of a closed operator basis.
pub fn eigenstate_check(
    env: &Enveloping<C>,
    omega: &StateFunctional<C>,
    x: &MultOp<C>,
    lambda: C,
    op_basis: &GeneratedSubalgebra<C>,
    tol: f64,
) -> Result<EigenstateReport> {
    if !op_basis.closed {
        return Err(NaqmError::NonClosedBasis);
    }
    let mut worst = 0.0f64;
    // ω(B ∘ X) − λ ω(B) = ω(B ∘ (X − λ))
    let shifted = x.sub(&env.identity().scale(&lambda))?;
    for b in &op_basis.basis {
        worst = worst.max(omega.eval_product(b, &shifted).norm());
    }
    let variance = match x.word() {
        Some(_) => Some(omega.eval_product(&env.star_op(&shifted)?, &shifted).re),
        None => None,
    };
    Ok(EigenstateReport {
        lambda: [lambda.re, lambda.im],
        max_residual: worst,
        variance,
        passed: worst <= tol && variance.is_none_or(|v| v.abs() <= tol),
    })
}

/// `φ = Σ_i √p_i φ_i φ_i†` from orthonormal λ-eigenvectors `φ_i` of the
/// Hermitian matrix of `a`. The result satisfies `a φ = λ φ` in the Jordan
/// product, and `τ(φ²) = 1` requires `Σ p_i = n`.
pub fn jordan_spectral_eigen(
    model: &MatrixModel<C>,
    a: &Element<C>,
    lambda: f64,
    probs: &[f64],
    tol: f64,
) -> Result<Element<C>> {
    if model.kind() != ProductKind::Jordan {
        return Err(NaqmError::UnsupportedOperation(
            "spectral eigenvectors need a Jordan matrix algebra".into(),
        ));
    }
    let alg = model.algebra();
    let residual = alg.star(a)?.sub(a).max_abs();
    if residual > tol {
        return Err(NaqmError::ObservableViolation { residual });
    }
    let am = model.to_matrix(a)?;
    let (vals, vecs) = linalg::hermitian_eigen(&am);
    let eigvecs: Vec<Vec<C>> = vals
        .iter()
        .zip(vecs)
        .filter(|(v, _)| (**v - lambda).abs() < CLUSTER_TOL.max(tol))
        .map(|(_, v)| v)
        .collect();
    if eigvecs.is_empty() {
        return Err(NaqmError::NoEigenvector { lambda });
    }
    if probs.is_empty() || probs.len() > eigvecs.len() {
        return Err(NaqmError::ProbabilityMismatch(format!(
            "{} weights for an eigenspace of dimension {}",
            probs.len(),
            eigvecs.len()
        )));
    }
    let k = model.size() as f64;
    let total: f64 = probs.iter().sum();
    if probs.iter().any(|p| *p < 0.0) || (total - k).abs() > tol.max(1e-12) {
        return Err(NaqmError::ProbabilityMismatch(format!(
            "weights must be nonnegative with sum {k}, got {total}"
        )));
    }
    let size = model.size();
    let mut phi = Matrix::zeros(size, size);
    for (p, v) in probs.iter().zip(&eigvecs) {
        let proj = Matrix::from_fn(size, size, |i, j| v[i] * v[j].conj());
        phi = &phi + &proj.scale(&C::new(p.sqrt(), 0.0));
    }
    let out = model.from_matrix(&phi)?;
    let check = alg.multiply(a, &out)?.sub(&out.scale(&C::new(lambda, 0.0)));
    if check.max_abs() > 1e-8 {
        return Err(NaqmError::NoEigenvector { lambda });
    }
    Ok(out)
}
