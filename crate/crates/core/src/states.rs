//! Traces, states on the multiplication algebra, density elements,
//! uncertainties, entropy and bracketing classes.

use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::{AlgebraSpec, AxiomCheck, AxiomReport, Element};
use crate::enveloping::{Enveloping, MultOp};
use crate::error::{NaqmError, Result};
use crate::linalg;
use crate::matrix::{dot, Matrix};
use crate::scalar::Scalar;

/// Linear functional `τ(a) = Σ_μ t_μ a_μ`.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceFunctional<S> {
    covector: Vec<S>,
}

impl<S: Scalar> TraceFunctional<S> {
    pub fn new(alg: &AlgebraSpec<S>, covector: Vec<S>) -> Result<Self> {
        if covector.len() != alg.dim() {
            return Err(NaqmError::dims(alg.dim(), covector.len()));
        }
        Ok(TraceFunctional { covector })
    }

    /// The trace attached to the algebra.
    pub fn of(alg: &AlgebraSpec<S>) -> Result<Self> {
        let t = alg
            .trace_covector()
            .ok_or_else(|| NaqmError::InvalidInput(format!("algebra '{}' has no trace", alg.label())))?;
        Self::new(alg, t.to_vec())
    }

    pub fn covector(&self) -> &[S] {
        &self.covector
    }

    pub fn eval(&self, a: &Element<S>) -> S {
        dot(&self.covector, a.coeffs())
    }

    /// `τ(a* b)`.
    pub fn inner(&self, alg: &AlgebraSpec<S>, a: &Element<S>, b: &Element<S>) -> Result<S> {
        Ok(self.eval(&alg.multiply(&alg.star(a)?, b)?))
    }

    /// `G_μν = τ(e_μ* e_ν)`.
    pub fn gram(&self, alg: &AlgebraSpec<S>) -> Matrix<S> {
        let n = alg.dim();
        let stars: Vec<Element<S>> = (0..n).map(|mu| alg.star(&alg.basis(mu)).expect("basis")).collect();
        Matrix::from_fn(n, n, |mu, nu| {
            self.eval(&alg.multiply(&stars[mu], &alg.basis(nu)).expect("basis"))
        })
    }

    /// Normalization, 2-cyclicity, 3-cyclicity on all basis triples and
    /// positive semi-definiteness of the Gram matrix.
    pub fn check_axioms(&self, alg: &AlgebraSpec<S>, tol: f64) -> AxiomReport {
        let n = alg.dim();
        let basis: Vec<Element<S>> = (0..n).map(|i| alg.basis(i)).collect();

        let norm = self.eval(&alg.unit());
        let norm_res = (norm.clone() - S::one()).modulus();
        let norm_ok = norm.approx_eq(&S::one(), tol);

        let products: Vec<Vec<Element<S>>> = basis
            .iter()
            .map(|a| basis.iter().map(|b| alg.multiply(a, b).expect("basis")).collect())
            .collect();
        let mut two_res = 0.0f64;
        let mut two_ok = true;
        for a in 0..n {
            for b in 0..n {
                let (x, y) = (self.eval(&products[a][b]), self.eval(&products[b][a]));
                two_res = two_res.max((x.clone() - y.clone()).modulus());
                two_ok &= x.approx_eq(&y, tol);
            }
        }
        let mut three_res = 0.0f64;
        let mut three_ok = true;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = self.eval(&alg.multiply(&basis[a], &products[b][c]).expect("basis"));
                    let rhs = self.eval(&alg.multiply(&basis[c], &products[a][b]).expect("basis"));
                    three_res = three_res.max((lhs.clone() - rhs.clone()).modulus());
                    three_ok &= lhs.approx_eq(&rhs, tol);
                }
            }
        }
        let gram = self.gram(alg);
        let min_eig = min_hermitian_eigenvalue(&gram.to_float());
        let herm_ok = gram.approx_eq(&gram.adjoint(), tol);
        let pos_ok = herm_ok && if S::EXACT { is_psd_exact(&gram) } else { min_eig >= -tol };
        let checks = vec![
            AxiomCheck::new("normalization", norm_ok, norm_res),
            AxiomCheck::new("two_cyclic", two_ok, two_res),
            AxiomCheck::new("three_cyclic", three_ok, three_res),
            AxiomCheck::new("positivity", pos_ok, (-min_eig).max(0.0)),
        ];
        AxiomReport::from_checks(format!("trace on {}", alg.label()), S::EXACT, checks)
    }
}

pub(crate) fn min_hermitian_eigenvalue(m: &Matrix<Complex64>) -> f64 {
    if m.rows() == 0 {
        return 0.0;
    }
    linalg::hermitian_eigen(m).0[0]
}

/// Exact positive semi-definiteness of a Hermitian matrix by symmetric
/// elimination: a zero pivot requires its whole remaining row to vanish.
pub fn is_psd_exact<S: Scalar>(m: &Matrix<S>) -> bool {
    let n = m.rows();
    let mut a: Vec<Vec<S>> = (0..n).map(|i| (0..n).map(|j| m.get(i, j).clone()).collect()).collect();
    for k in 0..n {
        let d = a[k][k].clone();
        let dc = d.to_c64();
        if d == S::zero() {
            if (k + 1..n).any(|j| a[k][j] != S::zero()) {
                return false;
            }
            continue;
        }
        if dc.re < 0.0 || d != d.conj() {
            return false;
        }
        for i in k + 1..n {
            if a[i][k] == S::zero() {
                continue;
            }
            let f = a[i][k].clone() / d.clone();
            for j in k..n {
                let v = a[i][j].clone() - f.clone() * a[k][j].clone();
                a[i][j] = v;
            }
        }
    }
    true
}

/// Which construction produced a state.
#[derive(Clone, Debug)]
pub enum StateKind<S> {
    Tracial,
    Vector {
        psi: Element<S>,
    },
    Mixed {
        probs: Vec<S>,
        psis: Vec<Element<S>>,
    },
    /// Image of another state under a Krauss family of the given size.
    Transformed {
        source: Box<StateKind<S>>,
        family_size: usize,
    },
    Raw,
}

impl<S> StateKind<S> {
    pub fn name(&self) -> &'static str {
        match self {
            StateKind::Tracial => "tracial",
            StateKind::Vector { .. } => "vector",
            StateKind::Mixed { .. } => "mixed",
            StateKind::Transformed { .. } => "transformed",
            StateKind::Raw => "raw",
        }
    }
}

/// Rank-one terms `u vᵀ` of a weight matrix.
pub type Factors<S> = Vec<(Vec<S>, Vec<S>)>;

/// Linear functional on the multiplication algebra, stored as a weight
/// matrix `W` with `ω(X) = Σ_ij W_ij X_ij`, together with its provenance and
/// a factorization `W = Σ_k u_k v_kᵀ`.
#[derive(Clone, Debug)]
pub struct StateFunctional<S> {
    kind: StateKind<S>,
    weights: Matrix<S>,
    factors: Factors<S>,
}

impl<S: Scalar> StateFunctional<S> {
    pub fn kind(&self) -> &StateKind<S> {
        &self.kind
    }

    pub fn weights(&self) -> &Matrix<S> {
        &self.weights
    }

    pub fn factors(&self) -> &Factors<S> {
        &self.factors
    }

    pub fn dim(&self) -> usize {
        self.weights.rows()
    }

    /// Functional from raw weights, factored by rows.
    pub fn raw(weights: Matrix<S>) -> Self {
        let n = weights.rows();
        let factors = (0..n)
            .map(|i| {
                let e = (0..n).map(|k| if k == i { S::one() } else { S::zero() }).collect();
                let row = (0..weights.cols()).map(|j| weights.get(i, j).clone()).collect();
                (e, row)
            })
            .collect();
        StateFunctional {
            kind: StateKind::Raw,
            weights,
            factors,
        }
    }

    pub(crate) fn from_factors(kind: StateKind<S>, n: usize, factors: Factors<S>) -> Self {
        let mut weights = Matrix::zeros(n, n);
        for (u, v) in &factors {
            weights = &weights + &Matrix::from_fn(n, n, |i, j| u[i].clone() * v[j].clone());
        }
        StateFunctional { kind, weights, factors }
    }

    pub fn eval_matrix(&self, x: &Matrix<S>) -> S {
        dot(self.weights.data(), x.data())
    }

    pub fn eval(&self, x: &MultOp<S>) -> S {
        self.eval_matrix(x.matrix())
    }

    /// `ω(A ∘ B)` as `Σ_k (u_kᵀ A)(B v_k)`, without forming the product. This
    /// stays accurate when `B` nearly annihilates the state vectors.
    pub fn eval_product(&self, a: &MultOp<S>, b: &MultOp<S>) -> S {
        let at = a.matrix().transpose();
        let mut total = S::zero();
        for (u, v) in &self.factors {
            total = total + dot(&at.mul_vec(u), &b.matrix().mul_vec(v));
        }
        total
    }

    pub fn to_float(&self) -> StateFunctional<Complex64> {
        let f = |x: &Vec<S>| x.iter().map(Scalar::to_c64).collect::<Vec<_>>();
        StateFunctional {
            kind: map_kind(&self.kind),
            weights: self.weights.to_float(),
            factors: self.factors.iter().map(|(u, v)| (f(u), f(v))).collect(),
        }
    }
}

fn map_kind<S: Scalar>(k: &StateKind<S>) -> StateKind<Complex64> {
    let f = |e: &Element<S>| e.map(Scalar::to_c64);
    match k {
        StateKind::Tracial => StateKind::Tracial,
        StateKind::Vector { psi } => StateKind::Vector { psi: f(psi) },
        StateKind::Mixed { probs, psis } => StateKind::Mixed {
            probs: probs.iter().map(Scalar::to_c64).collect(),
            psis: psis.iter().map(f).collect(),
        },
        StateKind::Transformed { source, family_size } => StateKind::Transformed {
            source: Box::new(map_kind(source)),
            family_size: *family_size,
        },
        StateKind::Raw => StateKind::Raw,
    }
}

/// `(g, ψ)` with `g_ρ = τ(φ e_ρ)`, so that `gᵀ X ψ = τ(φ (X ▷ ψ))`.
fn sandwich_factor<S: Scalar>(
    alg: &AlgebraSpec<S>,
    tau: &TraceFunctional<S>,
    left: &Element<S>,
    psi: &Element<S>,
) -> (Vec<S>, Vec<S>) {
    let g = (0..alg.dim())
        .map(|rho| tau.eval(&alg.multiply(left, &alg.basis(rho)).expect("basis")))
        .collect();
    (g, psi.coeffs().to_vec())
}

/// `ω_τ(X) = τ(X ▷ 𝟙)`.
pub fn tracial_state<S: Scalar>(alg: &AlgebraSpec<S>, tau: &TraceFunctional<S>) -> StateFunctional<S> {
    let factor = (tau.covector().to_vec(), alg.unit().coeffs().to_vec());
    StateFunctional::from_factors(StateKind::Tracial, alg.dim(), vec![factor])
}

/// `τ(ψ* ψ)`.
pub fn norm_squared<S: Scalar>(alg: &AlgebraSpec<S>, tau: &TraceFunctional<S>, psi: &Element<S>) -> Result<S> {
    tau.inner(alg, psi, psi)
}

fn check_normalized<S: Scalar>(
    alg: &AlgebraSpec<S>,
    tau: &TraceFunctional<S>,
    psi: &Element<S>,
    tol: f64,
) -> Result<()> {
    let n2 = norm_squared(alg, tau, psi)?;
    if n2.approx_eq(&S::one(), tol) {
        Ok(())
    } else {
        Err(NaqmError::NotNormalized { norm: n2.to_c64().re })
    }
}

/// Rescales `ψ` so that `τ(ψ* ψ) = 1`. Exact arithmetic needs a rational norm.
pub fn normalize<S: Scalar>(alg: &AlgebraSpec<S>, tau: &TraceFunctional<S>, psi: &Element<S>) -> Result<Element<S>> {
    let n2 = norm_squared(alg, tau, psi)?;
    if n2.is_zero_within(0.0) {
        return Err(NaqmError::NotNormalized { norm: 0.0 });
    }
    let r = n2
        .real_sqrt()
        .ok_or_else(|| NaqmError::UnsupportedOperation(format!("norm {} has no exact square root", n2.to_c64().re)))?;
    Ok(psi.scale(&(S::one() / r)))
}

/// `ω_ψ(X) = τ(ψ* (X ▷ ψ))`; requires `τ(ψ* ψ) = 1`.
pub fn vector_state<S: Scalar>(
    alg: &AlgebraSpec<S>,
    tau: &TraceFunctional<S>,
    psi: &Element<S>,
    tol: f64,
) -> Result<StateFunctional<S>> {
    alg.check_dim(psi)?;
    check_normalized(alg, tau, psi, tol)?;
    let factor = sandwich_factor(alg, tau, &alg.star(psi)?, psi);
    Ok(StateFunctional::from_factors(
        StateKind::Vector { psi: psi.clone() },
        alg.dim(),
        vec![factor],
    ))
}

fn check_probs<S: Scalar>(probs: &[S], tol: f64) -> Result<()> {
    let mut total = S::zero();
    for p in probs {
        let c = p.to_c64();
        if c.re < -tol || !(p.clone() - p.conj()).is_zero_within(tol) {
            return Err(NaqmError::InvalidState(format!("invalid probability {c}")));
        }
        total = total + p.clone();
    }
    if !total.approx_eq(&S::one(), tol) {
        return Err(NaqmError::InvalidState(format!(
            "probabilities sum to {}",
            total.to_c64().re
        )));
    }
    Ok(())
}

/// `Σ_l p_l ω_{ψ_l}`.
pub fn mixed_state<S: Scalar>(
    alg: &AlgebraSpec<S>,
    tau: &TraceFunctional<S>,
    probs: &[S],
    psis: &[Element<S>],
    tol: f64,
) -> Result<StateFunctional<S>> {
    if probs.len() != psis.len() || probs.is_empty() {
        return Err(NaqmError::dims(psis.len(), probs.len()));
    }
    check_probs(probs, tol)?;
    let mut factors = Vec::new();
    for (p, psi) in probs.iter().zip(psis) {
        for (u, v) in vector_state(alg, tau, psi, tol)?.factors {
            factors.push((u.iter().map(|x| x.clone() * p.clone()).collect(), v));
        }
    }
    let kind = StateKind::Mixed {
        probs: probs.to_vec(),
        psis: psis.to_vec(),
    };
    Ok(StateFunctional::from_factors(kind, alg.dim(), factors))
}

/// `ρ = Σ_l p_l ψ_l ψ_l*`.
#[derive(Clone, Debug)]
pub struct DensityElement<S> {
    pub rho: Element<S>,
    pub sources: Vec<(S, Element<S>)>,
}

impl<S: Scalar> DensityElement<S> {
    /// `τ(ρ a)`.
    pub fn expectation(&self, alg: &AlgebraSpec<S>, tau: &TraceFunctional<S>, a: &Element<S>) -> Result<S> {
        Ok(tau.eval(&alg.multiply(&self.rho, a)?))
    }
}

fn density_from_parts<S: Scalar>(
    alg: &AlgebraSpec<S>,
    tau: &TraceFunctional<S>,
    parts: Vec<(S, Element<S>)>,
    tol: f64,
) -> Result<DensityElement<S>> {
    let mut rho = Element::zero(alg.dim());
    for (p, psi) in &parts {
        let term = alg.multiply(psi, &alg.star(psi)?)?;
        rho = rho.add(&term.scale(p));
    }
    let herm = alg.star(&rho)?;
    if !herm.approx_eq(&rho, tol) {
        return Err(NaqmError::InvalidState("density element is not self-adjoint".into()));
    }
    let tr = tau.eval(&rho);
    if !tr.approx_eq(&S::one(), tol) {
        return Err(NaqmError::NotNormalized { norm: tr.to_c64().re });
    }
    Ok(DensityElement { rho, sources: parts })
}

/// `ρ_ψ = ψ ψ*`.
pub fn density_element<S: Scalar>(
    alg: &AlgebraSpec<S>,
    tau: &TraceFunctional<S>,
    psi: &Element<S>,
    tol: f64,
) -> Result<DensityElement<S>> {
    check_normalized(alg, tau, psi, tol)?;
    density_from_parts(alg, tau, vec![(S::one(), psi.clone())], tol)
}

pub fn mixed_density<S: Scalar>(
    alg: &AlgebraSpec<S>,
    tau: &TraceFunctional<S>,
    probs: &[S],
    psis: &[Element<S>],
    tol: f64,
) -> Result<DensityElement<S>> {
    if probs.len() != psis.len() {
        return Err(NaqmError::dims(psis.len(), probs.len()));
    }
    check_probs(probs, tol)?;
    for psi in psis {
        check_normalized(alg, tau, psi, tol)?;
    }
    let parts = probs.iter().cloned().zip(psis.iter().cloned()).collect();
    density_from_parts(alg, tau, parts, tol)
}

/// Checks `X* = X` through word provenance.
pub fn require_observable<S: Scalar>(env: &Enveloping<S>, o: &MultOp<S>, tol: f64) -> Result<()> {
    let s = env.star_op(o)?;
    let residual = s.matrix().max_abs_diff(o.matrix());
    if s.approx_eq(o, tol) {
        Ok(())
    } else {
        Err(NaqmError::ObservableViolation { residual })
    }
}

/// `Δ_ω O = sqrt(ω((O − ⟨O⟩)∘(O − ⟨O⟩)))`.
pub fn uncertainty<S: Scalar>(env: &Enveloping<S>, omega: &StateFunctional<S>, o: &MultOp<S>, tol: f64) -> Result<f64> {
    require_observable(env, o, tol)?;
    let mean = omega.eval(o);
    let shifted = o.sub(&env.identity().scale(&mean))?;
    let var = omega.eval_product(&shifted, &shifted).to_c64();
    if var.re < -tol {
        return Err(NaqmError::PositivityViolation { value: var.re });
    }
    Ok(var.re.max(0.0).sqrt())
}

#[derive(Clone, Debug, Serialize)]
pub struct UncertaintyReport {
    pub delta1: f64,
    pub delta2: f64,
    pub lhs: f64,
    pub commutator_expectation: [f64; 2],
    pub rhs: f64,
    pub slack: f64,
    pub holds: bool,
}

/// `Δ₁ Δ₂ ⩾ ½ |ω([O₁, O₂]∘)|`.
pub fn check_uncertainty_relation<S: Scalar>(
    env: &Enveloping<S>,
    omega: &StateFunctional<S>,
    o1: &MultOp<S>,
    o2: &MultOp<S>,
    tol: f64,
) -> Result<UncertaintyReport> {
    let delta1 = uncertainty(env, omega, o1, tol)?;
    let delta2 = uncertainty(env, omega, o2, tol)?;
    let c = omega.eval(&o1.commutator(o2)?).to_c64();
    let lhs = delta1 * delta2;
    let rhs = 0.5 * c.norm();
    Ok(UncertaintyReport {
        delta1,
        delta2,
        lhs,
        commutator_expectation: [c.re, c.im],
        rhs,
        slack: lhs - rhs,
        holds: lhs >= rhs - tol,
    })
}

/// `−Σ p log p` with `0 log 0 = 0`.
pub fn shannon_entropy(probs: &[f64], tol: f64) -> Result<f64> {
    if probs.iter().any(|p| !p.is_finite() || *p < -tol) {
        return Err(NaqmError::InvalidState("negative probability".into()));
    }
    let total: f64 = probs.iter().sum();
    if (total - 1.0).abs() > tol {
        return Err(NaqmError::InvalidState(format!("probabilities sum to {total}")));
    }
    Ok(-probs.iter().filter(|p| **p > 0.0).map(|p| p * p.ln()).sum::<f64>())
}

/// Catalan number `C_n`.
pub fn catalan(n: usize) -> usize {
    (0..n).fold(1usize, |c, k| c * 2 * (2 * k + 1) / (k + 2))
}

#[derive(Clone, Debug)]
pub struct BracketingReport<S> {
    /// `τ` of every bracketing, in enumeration order.
    pub values: Vec<S>,
    pub distinct: Vec<S>,
    /// `C_{n−2}`.
    pub bound: usize,
    pub within_bound: bool,
}

fn bracketings<S: Scalar>(alg: &AlgebraSpec<S>, xs: &[Element<S>]) -> Vec<Element<S>> {
    if xs.len() == 1 {
        return vec![xs[0].clone()];
    }
    let mut out = Vec::new();
    for split in 1..xs.len() {
        let left = bracketings(alg, &xs[..split]);
        let right = bracketings(alg, &xs[split..]);
        for l in &left {
            for r in &right {
                out.push(alg.multiply(l, r).expect("shared algebra"));
            }
        }
    }
    out
}

/// Evaluates `τ` on all `C_{n−1}` bracketings of `a₁ a₂ ⋯ a_n` and groups
/// equal values.
pub fn bracketing_classes<S: Scalar>(
    alg: &AlgebraSpec<S>,
    tau: &TraceFunctional<S>,
    elements: &[Element<S>],
    tol: f64,
) -> Result<BracketingReport<S>> {
    let n = elements.len();
    if !(2..=7).contains(&n) {
        return Err(NaqmError::InvalidInput(format!(
            "bracketing classes need 2 to 7 elements, got {n}"
        )));
    }
    for e in elements {
        alg.check_dim(e)?;
    }
    let values: Vec<S> = bracketings(alg, elements).iter().map(|x| tau.eval(x)).collect();
    let mut distinct: Vec<S> = Vec::new();
    for v in &values {
        if !distinct.iter().any(|d| d.approx_eq(v, tol)) {
            distinct.push(v.clone());
        }
    }
    let bound = catalan(n - 2);
    Ok(BracketingReport {
        within_bound: distinct.len() <= bound,
        values,
        distinct,
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{jordan_matrix_algebra, octonion_algebra};
    use crate::scalar::Exact;

    #[test]
    fn catalan_numbers() {
        let c: Vec<usize> = (0..7).map(catalan).collect();
        assert_eq!(c, vec![1, 1, 2, 5, 14, 42, 132]);
    }

    #[test]
    fn canonical_traces_pass_exactly() {
        let o = octonion_algebra::<Exact>();
        assert!(TraceFunctional::of(&o).unwrap().check_axioms(&o, 0.0).passed);
        let j = jordan_matrix_algebra::<Exact>(2).unwrap();
        assert!(TraceFunctional::of(&j).unwrap().check_axioms(&j, 0.0).passed);
    }

    #[test]
    fn unnormalized_trace_fails_normalization() {
        let o = octonion_algebra::<Exact>();
        let mut t = vec![Exact::zero(); 8];
        t[0] = Exact::from_ratio(2, 1);
        let tau = TraceFunctional::new(&o, t).unwrap();
        let r = tau.check_axioms(&o, 0.0);
        assert_eq!(r.failures, vec!["normalization".to_string()]);
    }

    #[test]
    fn exact_psd() {
        let m = |v: Vec<i64>| Matrix::from_vec(2, 2, v.into_iter().map(|x| Exact::from_ratio(x, 1)).collect());
        assert!(is_psd_exact(&m(vec![1, 1, 1, 1])));
        assert!(is_psd_exact(&m(vec![0, 0, 0, 3])));
        assert!(!is_psd_exact(&m(vec![0, 1, 1, 0])));
        assert!(!is_psd_exact(&m(vec![1, 2, 2, 1])));
    }

    #[test]
    fn entropy_values() {
        assert_eq!(shannon_entropy(&[1.0, 0.0], 1e-12).unwrap(), 0.0);
        assert!((shannon_entropy(&[0.5, 0.5], 1e-12).unwrap() - 2f64.ln()).abs() < 1e-15);
        assert!((shannon_entropy(&[0.25; 4], 1e-12).unwrap() - 4f64.ln()).abs() < 1e-15);
        assert!(shannon_entropy(&[0.7, 0.7], 1e-12).is_err());
    }

    #[test]
    fn unit_vector_state_is_tracial() {
        let o = octonion_algebra::<Exact>();
        let tau = TraceFunctional::of(&o).unwrap();
        let v = vector_state(&o, &tau, &o.unit(), 0.0).unwrap();
        assert_eq!(v.weights(), tracial_state(&o, &tau).weights());
    }

    #[test]
    fn unnormalized_vector_rejected() {
        let o = octonion_algebra::<Exact>();
        let tau = TraceFunctional::of(&o).unwrap();
        let psi = o.basis(0).add(&o.basis(1));
        assert!(matches!(
            vector_state(&o, &tau, &psi, 0.0),
            Err(NaqmError::NotNormalized { .. })
        ));
    }
}
