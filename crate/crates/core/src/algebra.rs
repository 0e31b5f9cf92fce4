//! Finite-dimensional unital ∗-algebras given by structure constants.

use serde::Serialize;

use crate::error::{NaqmError, Result};
use crate::matrix::{vec_add, vec_max_abs, vec_scale, vec_sub, Matrix};
use crate::scalar::Scalar;

/// Coefficient vector in the basis of some algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct Element<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Element<S> {
    pub fn new(coeffs: Vec<S>) -> Self {
        Element { coeffs }
    }

    pub fn zero(dim: usize) -> Self {
        Element {
            coeffs: vec![S::zero(); dim],
        }
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        let mut e = Self::zero(dim);
        e.coeffs[index] = S::one();
        e
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn add(&self, other: &Self) -> Self {
        Element::new(vec_add(&self.coeffs, &other.coeffs))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Element::new(vec_sub(&self.coeffs, &other.coeffs))
    }

    pub fn scale(&self, s: &S) -> Self {
        Element::new(vec_scale(&self.coeffs, s))
    }

    pub fn max_abs(&self) -> f64 {
        vec_max_abs(&self.coeffs)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dim() == other.dim() && self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a.approx_eq(b, tol))
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Element<T> {
        Element::new(self.coeffs.iter().map(f).collect())
    }
}

/// Structure constants, star map and unit of a unital ∗-algebra over ℂ.
///
/// `e_μ e_ν = Σ_ρ c[μ][ν][ρ] e_ρ` and `(e_μ)* = Σ_ν S[μ][ν] e_ν`, extended
/// antilinearly. The unit is either a basis element or, for instances such
/// as Jordan matrix algebras, an explicit coefficient vector.
#[derive(Clone, Debug)]
pub struct AlgebraSpec<S> {
    label: String,
    labels: Vec<String>,
    dim: usize,
    structure: Vec<S>,
    star: Matrix<S>,
    unit: Vec<S>,
    unit_index: Option<usize>,
    trace: Option<Vec<S>>,
}

/// Where the unit of an algebra lives.
#[derive(Clone, Debug)]
pub enum Unit<S> {
    Index(usize),
    Vector(Vec<S>),
}

impl<S: Scalar> AlgebraSpec<S> {
    /// Builds an algebra from dense structure constants indexed `(μ·n + ν)·n + ρ`.
    pub fn new(
        label: impl Into<String>,
        labels: Vec<String>,
        dim: usize,
        structure: Vec<S>,
        star: Matrix<S>,
        unit: Unit<S>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(NaqmError::InvalidInput("algebra dimension must be positive".into()));
        }
        if structure.len() != dim * dim * dim {
            return Err(NaqmError::dims(dim * dim * dim, structure.len()));
        }
        if star.rows() != dim || star.cols() != dim {
            return Err(NaqmError::dims(dim, star.rows().max(star.cols())));
        }
        let labels = if labels.is_empty() {
            (0..dim).map(|i| format!("e{i}")).collect()
        } else if labels.len() != dim {
            return Err(NaqmError::dims(dim, labels.len()));
        } else {
            labels
        };
        let (unit, unit_index) = match unit {
            Unit::Index(u) if u < dim => (Element::<S>::basis(dim, u).into_coeffs(), Some(u)),
            Unit::Index(u) => {
                return Err(NaqmError::InvalidInput(format!(
                    "unit index {u} out of range for dimension {dim}"
                )))
            }
            Unit::Vector(v) if v.len() == dim => (v, None),
            Unit::Vector(v) => return Err(NaqmError::dims(dim, v.len())),
        };
        Ok(AlgebraSpec {
            label: label.into(),
            labels,
            dim,
            structure,
            star,
            unit,
            unit_index,
            trace: None,
        })
    }

    /// Attaches a trace covector `t` with `τ(a) = Σ t_μ a_μ`.
    pub fn with_trace(mut self, covector: Vec<S>) -> Result<Self> {
        if covector.len() != self.dim {
            return Err(NaqmError::dims(self.dim, covector.len()));
        }
        self.trace = Some(covector);
        Ok(self)
    }

    pub fn trace_covector(&self) -> Option<&[S]> {
        self.trace.as_deref()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Builds an algebra from a product rule on basis pairs.
    pub fn from_products(
        label: impl Into<String>,
        labels: Vec<String>,
        dim: usize,
        mut product: impl FnMut(usize, usize) -> Vec<(usize, S)>,
        star: Matrix<S>,
        unit: Unit<S>,
    ) -> Result<Self> {
        let mut structure = vec![S::zero(); dim * dim * dim];
        for mu in 0..dim {
            for nu in 0..dim {
                for (rho, c) in product(mu, nu) {
                    let idx = (mu * dim + nu) * dim + rho;
                    structure[idx] = structure[idx].clone() + c;
                }
            }
        }
        Self::new(label, labels, dim, structure, star, unit)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit_index(&self) -> Option<usize> {
        self.unit_index
    }

    pub fn unit(&self) -> Element<S> {
        Element::new(self.unit.clone())
    }

    pub fn basis(&self, index: usize) -> Element<S> {
        Element::basis(self.dim, index)
    }

    pub fn star_matrix(&self) -> &Matrix<S> {
        &self.star
    }

    pub fn structure_constant(&self, mu: usize, nu: usize, rho: usize) -> &S {
        &self.structure[(mu * self.dim + nu) * self.dim + rho]
    }

    /// Converts the algebra to another scalar type.
    pub fn map_scalar<T: Scalar>(&self, f: impl Fn(&S) -> T) -> AlgebraSpec<T> {
        AlgebraSpec {
            label: self.label.clone(),
            labels: self.labels.clone(),
            dim: self.dim,
            structure: self.structure.iter().map(&f).collect(),
            star: Matrix::from_fn(self.dim, self.dim, |i, j| f(self.star.get(i, j))),
            unit: self.unit.iter().map(&f).collect(),
            unit_index: self.unit_index,
            trace: self.trace.as_ref().map(|t| t.iter().map(&f).collect()),
        }
    }

    pub fn to_float(&self) -> AlgebraSpec<num_complex::Complex64> {
        self.map_scalar(Scalar::to_c64)
    }

    pub fn check_dim(&self, a: &Element<S>) -> Result<()> {
        if a.dim() != self.dim {
            Err(NaqmError::dims(self.dim, a.dim()))
        } else {
            Ok(())
        }
    }

    fn basis_product(&self, mu: usize, nu: usize) -> &[S] {
        let start = (mu * self.dim + nu) * self.dim;
        &self.structure[start..start + self.dim]
    }

    /// `a b = Σ a_μ b_ν c[μ][ν][·]`; no associativity or commutativity assumed.
    pub fn multiply(&self, a: &Element<S>, b: &Element<S>) -> Result<Element<S>> {
        self.check_dim(a)?;
        self.check_dim(b)?;
        let n = self.dim;
        let zero = S::zero();
        let mut out = vec![S::zero(); n];
        for (mu, am) in a.coeffs().iter().enumerate() {
            if *am == zero {
                continue;
            }
            for (nu, bn) in b.coeffs().iter().enumerate() {
                if *bn == zero {
                    continue;
                }
                let w = am.clone() * bn.clone();
                for (o, c) in out.iter_mut().zip(self.basis_product(mu, nu)) {
                    if *c != zero {
                        *o = o.clone() + w.clone() * c.clone();
                    }
                }
            }
        }
        Ok(Element::new(out))
    }

    /// Antilinear involution `a ↦ a*`.
    pub fn star(&self, a: &Element<S>) -> Result<Element<S>> {
        self.check_dim(a)?;
        let n = self.dim;
        let out = (0..n)
            .map(|nu| {
                a.coeffs().iter().enumerate().fold(S::zero(), |acc, (mu, am)| {
                    acc + am.conj() * self.star.get(mu, nu).clone()
                })
            })
            .collect();
        Ok(Element::new(out))
    }

    /// `(a b) c − a (b c)`.
    pub fn associator(&self, a: &Element<S>, b: &Element<S>, c: &Element<S>) -> Result<Element<S>> {
        let left = self.multiply(&self.multiply(a, b)?, c)?;
        let right = self.multiply(a, &self.multiply(b, c)?)?;
        Ok(left.sub(&right))
    }

    /// `a b − b a`.
    pub fn commutator(&self, a: &Element<S>, b: &Element<S>) -> Result<Element<S>> {
        Ok(self.multiply(a, b)?.sub(&self.multiply(b, a)?))
    }

    /// `[a,[b,c]] + [c,[a,b]] + [b,[c,a]]`.
    pub fn jacobiator(&self, a: &Element<S>, b: &Element<S>, c: &Element<S>) -> Result<Element<S>> {
        let t1 = self.commutator(a, &self.commutator(b, c)?)?;
        let t2 = self.commutator(c, &self.commutator(a, b)?)?;
        let t3 = self.commutator(b, &self.commutator(c, a)?)?;
        Ok(t1.add(&t2).add(&t3))
    }

    /// Matrix of `x ↦ a x`; column ν is `a e_ν`.
    pub fn left_matrix(&self, a: &Element<S>) -> Result<Matrix<S>> {
        self.check_dim(a)?;
        let n = self.dim;
        let mut m = Matrix::zeros(n, n);
        for nu in 0..n {
            let col = self.multiply(a, &self.basis(nu))?;
            for (rho, v) in col.into_coeffs().into_iter().enumerate() {
                m.set(rho, nu, v);
            }
        }
        Ok(m)
    }

    /// Matrix of `x ↦ x a`.
    pub fn right_matrix(&self, a: &Element<S>) -> Result<Matrix<S>> {
        self.check_dim(a)?;
        let n = self.dim;
        let mut m = Matrix::zeros(n, n);
        for nu in 0..n {
            let col = self.multiply(&self.basis(nu), a)?;
            for (rho, v) in col.into_coeffs().into_iter().enumerate() {
                m.set(rho, nu, v);
            }
        }
        Ok(m)
    }

    pub fn is_commutative(&self, tol: f64) -> bool {
        (0..self.dim).all(|mu| {
            (0..self.dim).all(|nu| {
                self.basis_product(mu, nu)
                    .iter()
                    .zip(self.basis_product(nu, mu))
                    .all(|(x, y)| x.approx_eq(y, tol))
            })
        })
    }

    /// Verifies unitality, involutivity of ∗ and the antihomomorphism law on
    /// all basis elements. Never fails; failures are listed in the report.
    pub fn check_axioms(&self, tol: f64) -> AxiomReport {
        let n = self.dim;
        let unit = self.unit();
        let basis: Vec<Element<S>> = (0..n).map(|i| self.basis(i)).collect();
        let residual = |x: &Element<S>, y: &Element<S>| x.sub(y).max_abs();

        let mut unitality = 0.0f64;
        let mut involution = 0.0f64;
        let mut antihom = 0.0f64;
        let mut unit_ok = true;
        let mut inv_ok = true;
        let mut anti_ok = true;
        let stars: Vec<Element<S>> = basis.iter().map(|e| self.star(e).expect("basis dimension")).collect();
        for (mu, e) in basis.iter().enumerate() {
            let l = self.multiply(&unit, e).expect("basis dimension");
            let r = self.multiply(e, &unit).expect("basis dimension");
            unitality = unitality.max(residual(&l, e)).max(residual(&r, e));
            unit_ok &= l.approx_eq(e, tol) && r.approx_eq(e, tol);

            let back = self.star(&stars[mu]).expect("basis dimension");
            involution = involution.max(residual(&back, e));
            inv_ok &= back.approx_eq(e, tol);

            for (nu, f) in basis.iter().enumerate() {
                let lhs = self
                    .star(&self.multiply(e, f).expect("basis dimension"))
                    .expect("basis dimension");
                let rhs = self.multiply(&stars[nu], &stars[mu]).expect("basis dimension");
                antihom = antihom.max(residual(&lhs, &rhs));
                anti_ok &= lhs.approx_eq(&rhs, tol);
            }
        }
        let checks = vec![
            AxiomCheck::new("unitality", unit_ok, unitality),
            AxiomCheck::new("star_involution", inv_ok, involution),
            AxiomCheck::new("star_antihomomorphism", anti_ok, antihom),
        ];
        AxiomReport::from_checks(self.label.clone(), S::EXACT, checks)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomCheck {
    pub name: String,
    pub passed: bool,
    pub worst_residual: f64,
}

impl AxiomCheck {
    pub fn new(name: &str, passed: bool, worst_residual: f64) -> Self {
        AxiomCheck {
            name: name.to_string(),
            passed,
            worst_residual,
        }
    }
}

/// Pass/fail per axiom with worst-case residuals.
#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub label: String,
    pub exact: bool,
    pub passed: bool,
    pub checks: Vec<AxiomCheck>,
    pub failures: Vec<String>,
}

impl AxiomReport {
    pub fn from_checks(label: String, exact: bool, checks: Vec<AxiomCheck>) -> Self {
        let failures: Vec<String> = checks.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect();
        AxiomReport {
            label,
            exact,
            passed: failures.is_empty(),
            checks,
            failures,
        }
    }

    pub fn check(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Exact;

    /// ℂ ⊕ ℂ e with e² = 0 (dual numbers), e* = e.
    fn dual_numbers() -> AlgebraSpec<Exact> {
        AlgebraSpec::from_products(
            "dual",
            vec![],
            2,
            |mu, nu| match (mu, nu) {
                (0, k) | (k, 0) => vec![(k, Exact::one())],
                _ => vec![],
            },
            Matrix::identity(2),
            Unit::Index(0),
        )
        .unwrap()
    }

    #[test]
    fn unit_acts_trivially() {
        let a = dual_numbers();
        let x = Element::new(vec![Exact::from_ratio(3, 2), Exact::from_ratio(-1, 5)]);
        assert_eq!(a.multiply(&a.unit(), &x).unwrap(), x);
        assert_eq!(a.multiply(&x, &a.unit()).unwrap(), x);
    }

    #[test]
    fn scalar_star_conjugates() {
        let a = dual_numbers();
        let z = Exact::from_parts(2.0, 3.0);
        let s = a.star(&a.unit().scale(&z)).unwrap();
        assert_eq!(s, a.unit().scale(&z.conj()));
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = dual_numbers();
        let bad = Element::<Exact>::zero(3);
        assert!(matches!(
            a.multiply(&a.unit(), &bad),
            Err(NaqmError::DimensionMismatch { expected: 2, found: 3 })
        ));
    }

    #[test]
    fn corrupted_unit_row_fails_unitality_only() {
        let good = dual_numbers();
        assert!(good.check_axioms(0.0).passed);
        let bad = AlgebraSpec::from_products(
            "bad",
            vec![],
            2,
            |mu, nu| match (mu, nu) {
                (0, 1) => vec![(0, Exact::one())],
                (0, k) | (k, 0) => vec![(k, Exact::one())],
                _ => vec![],
            },
            Matrix::identity(2),
            Unit::Index(0),
        )
        .unwrap();
        let report = bad.check_axioms(0.0);
        assert!(!report.passed);
        assert!(report.failures.contains(&"unitality".to_string()));
        assert!(report.check("star_involution").unwrap().passed);
    }

    #[test]
    fn rejects_out_of_range_unit() {
        let r = AlgebraSpec::<Exact>::new("x", vec![], 1, vec![Exact::one()], Matrix::identity(1), Unit::Index(3));
        assert!(r.is_err());
    }
}
