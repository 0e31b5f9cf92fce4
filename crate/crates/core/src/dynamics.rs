//! Unitary evolution, Heisenberg and Schrödinger pictures, Krauss maps, the
//! Lindblad generator and dual states.

use num_complex::Complex64;

use crate::algebra::{AlgebraSpec, Element};
use crate::enveloping::{Enveloping, MultOp, Word};
use crate::error::{NaqmError, Result};
use crate::linalg;
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::states::{require_observable, DensityElement, StateFunctional, StateKind, TraceFunctional};

type C = Complex64;

/// A star-fixed operator `H` together with the constant `ħ`.
#[derive(Clone, Debug)]
pub struct Hamiltonian<S> {
    pub op: MultOp<S>,
    pub hbar: S,
}

impl<S: Scalar> Hamiltonian<S> {
    pub fn new(env: &Enveloping<S>, op: MultOp<S>, hbar: S, tol: f64) -> Result<Self> {
        require_observable(env, &op, tol)?;
        let h = hbar.to_c64();
        if !(h.re > 0.0 && h.im == 0.0) {
            return Err(NaqmError::InvalidInput(format!("hbar must be positive, got {h}")));
        }
        Ok(Hamiltonian { op, hbar })
    }
}

impl Hamiltonian<C> {
    /// `U_t = exp(−(i/ħ) t H)`, carrying an exponential word so that
    /// `star_op(U_t) = U_{−t}`.
    pub fn unitary(&self, t: f64) -> MultOp<C> {
        let scale = C::new(0.0, -t) / self.hbar;
        let gen = self.op.matrix().scale(&scale);
        let matrix = linalg::expm(&gen);
        match self.op.word() {
            Some(w) => MultOp::with_word(matrix, Word::exp(scale, w.clone())),
            None => MultOp::from_matrix(matrix),
        }
    }

    /// `ψ(t) = U_t ▷ ψ₀`.
    pub fn schrodinger_evolve(&self, psi0: &Element<C>, t: f64) -> Result<Element<C>> {
        self.unitary(t).act(psi0)
    }

    /// `O(t) = U_t* ∘ O ∘ U_t`.
    pub fn heisenberg_evolve(&self, env: &Enveloping<C>, o: &MultOp<C>, t: f64) -> Result<MultOp<C>> {
        let u = self.unitary(t);
        let ustar = match u.word() {
            Some(_) => env.star_op(&u)?,
            None => self.unitary(-t),
        };
        ustar.compose(o)?.compose(&u)
    }
}

/// `(i/ħ)(H ∘ O − O ∘ H)`.
pub fn heisenberg_rhs<S: Scalar>(h: &Hamiltonian<S>, o: &MultOp<S>) -> Result<MultOp<S>> {
    let factor = S::i() / h.hbar.clone();
    Ok(h.op.commutator(o)?.scale(&factor))
}

/// `(i/ħ)[H, O]∘ + Σ_k (L_k* ∘ O ∘ L_k − ½ {L_k* ∘ L_k, O}∘)`.
pub fn lindblad_rhs<S: Scalar>(
    env: &Enveloping<S>,
    h: &Hamiltonian<S>,
    jumps: &[MultOp<S>],
    o: &MultOp<S>,
) -> Result<MultOp<S>> {
    let mut out = heisenberg_rhs(h, o)?;
    let half = S::from_ratio(1, 2);
    for l in jumps {
        let ls = env.star_op(l)?;
        let sandwich = ls.compose(o)?.compose(l)?;
        let lsl = ls.compose(l)?;
        let anti = lsl.anticommutator(o)?.scale(&half);
        out = out.add(&sandwich.sub(&anti)?)?;
    }
    Ok(out)
}

/// Operators `A_k` of a completely positive map.
#[derive(Clone, Debug)]
pub struct KraussFamily<S> {
    pub ops: Vec<MultOp<S>>,
    /// When false, `Σ A_k* ∘ A_k = 𝟙` is not required and only the
    /// normalization of the transformed state is checked.
    pub require_normalized: bool,
}

impl<S: Scalar> KraussFamily<S> {
    pub fn new(ops: Vec<MultOp<S>>) -> Self {
        KraussFamily {
            ops,
            require_normalized: true,
        }
    }

    /// A family that is only required to preserve the normalization of the
    /// states it is applied to.
    pub fn unnormalized(ops: Vec<MultOp<S>>) -> Self {
        KraussFamily {
            ops,
            require_normalized: false,
        }
    }

    /// `max |Σ A_k* ∘ A_k − 𝟙|`.
    pub fn normalization_residual(&self, env: &Enveloping<S>) -> Result<f64> {
        let n = env.dim();
        let mut sum = Matrix::zeros(n, n);
        for a in &self.ops {
            sum = &sum + env.star_op(a)?.compose(a)?.matrix();
        }
        Ok(sum.max_abs_diff(&Matrix::identity(n)))
    }
}

/// `ω̃(O) = Σ_k ω(A_k* ∘ O ∘ A_k)`.
pub fn krauss_map<S: Scalar>(
    env: &Enveloping<S>,
    family: &KraussFamily<S>,
    omega: &StateFunctional<S>,
    tol: f64,
) -> Result<StateFunctional<S>> {
    if family.ops.is_empty() {
        return Err(NaqmError::InvalidInput("empty Krauss family".into()));
    }
    if family.require_normalized {
        let residual = family.normalization_residual(env)?;
        if residual > tol || (S::EXACT && residual != 0.0) {
            return Err(NaqmError::KraussNormalization { residual });
        }
    }
    // ω(A* O A) = Σ_l (A*ᵀ u_l)ᵀ O (A v_l)
    let mut factors = Vec::new();
    for a in &family.ops {
        let astar_t = env.star_op(a)?.matrix().transpose();
        for (u, v) in omega.factors() {
            factors.push((astar_t.mul_vec(u), a.matrix().mul_vec(v)));
        }
    }
    let kind = StateKind::Transformed {
        source: Box::new(omega.kind().clone()),
        family_size: family.ops.len(),
    };
    let out = StateFunctional::from_factors(kind, env.dim(), factors);
    let norm = out.eval(&env.identity());
    if !norm.approx_eq(&S::one(), tol) {
        return Err(NaqmError::KraussNormalization {
            residual: (norm - S::one()).modulus(),
        });
    }
    Ok(out)
}

/// `ρ̃ = Σ_k (A_k ▷ ψ)(A_k ▷ ψ)*`.
pub fn krauss_density<S: Scalar>(
    alg: &AlgebraSpec<S>,
    tau: &TraceFunctional<S>,
    family: &KraussFamily<S>,
    psi: &Element<S>,
    tol: f64,
) -> Result<DensityElement<S>> {
    let mut rho = Element::zero(alg.dim());
    let mut sources = Vec::new();
    for a in &family.ops {
        let v = a.act(psi)?;
        rho = rho.add(&alg.multiply(&v, &alg.star(&v)?)?);
        sources.push((S::one(), v));
    }
    let tr = tau.eval(&rho);
    if !tr.approx_eq(&S::one(), tol) {
        return Err(NaqmError::KraussNormalization {
            residual: (tr - S::one()).modulus(),
        });
    }
    Ok(DensityElement { rho, sources })
}

/// `μ^∨_ψ(b* b) = Σ_k τ(b̂ ∘ â_k ∘ ψ̂ ∘ ψ̂* ∘ â_k* ∘ b̂* ▷ 𝟙)`.
pub fn dual_state<S: Scalar>(
    env: &Enveloping<S>,
    tau: &TraceFunctional<S>,
    psi: &Element<S>,
    a_ks: &[Element<S>],
    b: &Element<S>,
    tol: f64,
) -> Result<f64> {
    let alg = env.algebra();
    let n2 = tau.inner(alg, psi, psi)?;
    if !n2.approx_eq(&S::one(), tol) {
        return Err(NaqmError::NotNormalized { norm: n2.to_c64().re });
    }
    let hat = |x: &Element<S>| env.left_op(x);
    let bh = hat(b)?;
    let ph = hat(psi)?;
    let sandwich = ph.compose(&env.star_op(&ph)?)?;
    let mut total = S::zero();
    for a in a_ks {
        let ah = hat(a)?;
        let op = bh
            .compose(&ah)?
            .compose(&sandwich)?
            .compose(&env.star_op(&ah)?)?
            .compose(&env.star_op(&bh)?)?;
        total = total + tau.eval(&op.act(&alg.unit())?);
    }
    let v = total.to_c64();
    if v.re < -tol || v.im.abs() > tol.max(1e-9 * v.norm()) {
        return Err(NaqmError::PositivityViolation { value: v.re });
    }
    Ok(v.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::octonion_algebra;
    use crate::scalar::Exact;

    #[test]
    fn lindblad_annihilates_identity_exactly() {
        let o = octonion_algebra::<Exact>();
        let env = Enveloping::new(&o);
        let h = Hamiltonian {
            op: env.left_op(&o.basis(7)).unwrap().scale(&Exact::i()),
            hbar: Exact::one(),
        };
        let jumps = vec![env.left_op(&o.basis(1)).unwrap(), env.right_op(&o.basis(3)).unwrap()];
        let r = lindblad_rhs(&env, &h, &jumps, &env.identity()).unwrap();
        assert!(r.matrix().data().iter().all(|c| *c == Exact::zero()));
    }

    #[test]
    fn unitary_at_zero_is_identity() {
        let o = octonion_algebra::<C>();
        let env = Enveloping::new(&o);
        let h = Hamiltonian::new(
            &env,
            env.left_op(&o.basis(7)).unwrap().scale(&C::new(0.0, 1.0)),
            C::new(1.0, 0.0),
            1e-12,
        )
        .unwrap();
        assert!(h.unitary(0.0).matrix().approx_eq(&Matrix::identity(8), 1e-15));
    }

    #[test]
    fn non_observable_hamiltonian_rejected() {
        let o = octonion_algebra::<C>();
        let env = Enveloping::new(&o);
        let r = Hamiltonian::new(&env, env.left_op(&o.basis(7)).unwrap(), C::new(1.0, 0.0), 1e-12);
        assert!(matches!(r, Err(NaqmError::ObservableViolation { .. })));
    }
}
