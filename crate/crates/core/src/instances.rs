//! Concrete algebras: octonions, Jordan matrix algebras, the Pauli Jordan
//! algebra, ordinary matrix algebras and unitized Lie algebras, together with
//! structure checks on their multiplication operators.

use crate::algebra::{AlgebraSpec, Element, Unit};
use crate::enveloping::{Enveloping, MultOp};
use crate::error::{NaqmError, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// The seven oriented triples with `η_ijk = 1`.
pub const OCTONION_TRIPLES: [(usize, usize, usize); 7] = [
    (1, 2, 3),
    (1, 4, 5),
    (1, 7, 6),
    (2, 4, 6),
    (2, 5, 7),
    (3, 4, 7),
    (3, 6, 5),
];

/// Totally antisymmetric octonion structure constants.
pub struct OctonionTable;

impl OctonionTable {
    /// `η_ijk` for `i, j, k ∈ 1..=7`; zero off the triple set.
    pub fn eta(i: usize, j: usize, k: usize) -> i32 {
        for &(a, b, c) in &OCTONION_TRIPLES {
            let even = [(a, b, c), (b, c, a), (c, a, b)];
            let odd = [(b, a, c), (a, c, b), (c, b, a)];
            if even.contains(&(i, j, k)) {
                return 1;
            }
            if odd.contains(&(i, j, k)) {
                return -1;
            }
        }
        0
    }

    pub fn n0() -> Vec<(usize, usize, usize)> {
        OCTONION_TRIPLES.to_vec()
    }

    /// Even permutations of the base triples.
    pub fn n_plus() -> Vec<(usize, usize, usize)> {
        OCTONION_TRIPLES
            .iter()
            .flat_map(|&(a, b, c)| [(a, b, c), (b, c, a), (c, a, b)])
            .collect()
    }

    /// Odd permutations of the base triples.
    pub fn n_minus() -> Vec<(usize, usize, usize)> {
        OCTONION_TRIPLES
            .iter()
            .flat_map(|&(a, b, c)| [(b, a, c), (a, c, b), (c, b, a)])
            .collect()
    }

    pub fn n_all() -> Vec<(usize, usize, usize)> {
        let mut v = Self::n_plus();
        v.extend(Self::n_minus());
        v
    }
}

fn labels(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// The octonions with basis `e₀ … e₇`, unit `e₀`, `e_i* = −e_i` and trace
/// covector `(1, 0, …, 0)`.
pub fn octonion_algebra<S: Scalar>() -> AlgebraSpec<S> {
    let star = Matrix::from_fn(8, 8, |i, j| {
        if i != j {
            S::zero()
        } else if i == 0 {
            S::one()
        } else {
            -S::one()
        }
    });
    let alg = AlgebraSpec::from_products(
        "octonions",
        labels("e", 8),
        8,
        |mu, nu| match (mu, nu) {
            (0, k) | (k, 0) => vec![(k, S::one())],
            (i, j) if i == j => vec![(0, -S::one())],
            (i, j) => (1..8)
                .filter_map(|k| match OctonionTable::eta(i, j, k) {
                    0 => None,
                    s => Some((k, S::from_ratio(s as i64, 1))),
                })
                .collect(),
        },
        star,
        Unit::Index(0),
    )
    .expect("octonion table is well formed");
    let mut trace = vec![S::zero(); 8];
    trace[0] = S::one();
    alg.with_trace(trace).expect("trace length")
}

/// Left multiplication matrices `E_μ`; `E₀` is the identity.
pub fn octonion_left_matrices<S: Scalar>() -> Vec<Matrix<S>> {
    let alg = octonion_algebra::<S>();
    (0..8)
        .map(|mu| alg.left_matrix(&alg.basis(mu)).expect("basis"))
        .collect()
}

/// How a matrix-model algebra multiplies in terms of the matrix product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductKind {
    /// `a b = ½(a·b + b·a)`.
    Jordan,
    /// `a b = a·b`.
    Associative,
}

/// An algebra realized on `k×k` matrices, keeping the matrix of each basis
/// element so that the underlying associative product is available.
#[derive(Clone, Debug)]
pub struct MatrixModel<S> {
    algebra: AlgebraSpec<S>,
    size: usize,
    kind: ProductKind,
    basis: Vec<Matrix<S>>,
    /// `coeff_μ(m) = Tr(dual_μ · m)`.
    dual: Vec<Matrix<S>>,
}

impl<S: Scalar> MatrixModel<S> {
    #[allow(clippy::too_many_arguments)]
    fn build(
        label: String,
        labels: Vec<String>,
        size: usize,
        kind: ProductKind,
        basis: Vec<Matrix<S>>,
        dual: Vec<Matrix<S>>,
        star: Matrix<S>,
        unit: Unit<S>,
    ) -> Result<Self> {
        let dim = basis.len();
        let coords = |m: &Matrix<S>| -> Vec<(usize, S)> {
            dual.iter()
                .enumerate()
                .map(|(rho, d)| (rho, (d * m).trace()))
                .filter(|(_, c)| *c != S::zero())
                .collect()
        };
        let half = S::from_ratio(1, 2);
        let algebra = AlgebraSpec::from_products(
            label,
            labels,
            dim,
            |mu, nu| {
                let ab = &basis[mu] * &basis[nu];
                match kind {
                    ProductKind::Associative => coords(&ab),
                    ProductKind::Jordan => {
                        let ba = &basis[nu] * &basis[mu];
                        coords(&(&ab + &ba).scale(&half))
                    }
                }
            },
            star,
            unit,
        )?;
        let tr_scale = S::from_ratio(1, size as i64);
        let trace = basis.iter().map(|b| b.trace() * tr_scale.clone()).collect();
        let algebra = algebra.with_trace(trace)?;
        Ok(MatrixModel {
            algebra,
            size,
            kind,
            basis,
            dual,
        })
    }

    pub fn algebra(&self) -> &AlgebraSpec<S> {
        &self.algebra
    }

    pub fn into_algebra(self) -> AlgebraSpec<S> {
        self.algebra
    }

    /// Matrix size `k` of the realization.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn kind(&self) -> ProductKind {
        self.kind
    }

    pub fn to_matrix(&self, a: &Element<S>) -> Result<Matrix<S>> {
        self.algebra.check_dim(a)?;
        let k = self.size;
        let mut m = Matrix::zeros(k, k);
        for (c, b) in a.coeffs().iter().zip(&self.basis) {
            if *c != S::zero() {
                m = &m + &b.scale(c);
            }
        }
        Ok(m)
    }

    pub fn from_matrix(&self, m: &Matrix<S>) -> Result<Element<S>> {
        if m.rows() != self.size || m.cols() != self.size {
            return Err(NaqmError::dims(self.size, m.rows()));
        }
        Ok(Element::new(self.dual.iter().map(|d| (d * m).trace()).collect()))
    }

    /// The underlying associative matrix product `a·b`.
    pub fn matrix_product(&self, a: &Element<S>, b: &Element<S>) -> Result<Element<S>> {
        self.from_matrix(&(&self.to_matrix(a)? * &self.to_matrix(b)?))
    }

    /// `[a, b]_· = a·b − b·a` in the underlying matrix product.
    pub fn matrix_commutator(&self, a: &Element<S>, b: &Element<S>) -> Result<Element<S>> {
        let (ma, mb) = (self.to_matrix(a)?, self.to_matrix(b)?);
        self.from_matrix(&ma.commutator(&mb))
    }
}

fn matrix_unit<S: Scalar>(k: usize, i: usize, j: usize) -> Matrix<S> {
    let mut m = Matrix::zeros(k, k);
    m.set(i, j, S::one());
    m
}

fn matrix_unit_model<S: Scalar>(k: usize, kind: ProductKind, label: String) -> Result<MatrixModel<S>> {
    let basis: Vec<Matrix<S>> = (0..k * k).map(|idx| matrix_unit(k, idx / k, idx % k)).collect();
    let dual: Vec<Matrix<S>> = (0..k * k).map(|idx| matrix_unit(k, idx % k, idx / k)).collect();
    let labels = (0..k * k)
        .map(|idx| format!("e{}{}", idx / k + 1, idx % k + 1))
        .collect();
    // (e_ij)* = e_ji
    let star = Matrix::from_fn(k * k, k * k, |a, b| {
        if b == (a % k) * k + a / k {
            S::one()
        } else {
            S::zero()
        }
    });
    let mut unit = vec![S::zero(); k * k];
    for i in 0..k {
        unit[i * k + i] = S::one();
    }
    MatrixModel::build(label, labels, k, kind, basis, dual, star, Unit::Vector(unit))
}

/// Jordan algebra on `M_n(ℂ)` in the row-major matrix-unit basis `e_ij ↦ i·n + j`,
/// with unit `Σ e_ii` and trace `Tr/n`.
pub fn jordan_model<S: Scalar>(n: usize) -> Result<MatrixModel<S>> {
    if n < 2 {
        return Err(NaqmError::InvalidInput(format!(
            "Jordan matrix algebra needs n >= 2, got {n}"
        )));
    }
    matrix_unit_model(n, ProductKind::Jordan, format!("jordan_M{n}"))
}

pub fn jordan_matrix_algebra<S: Scalar>(n: usize) -> Result<AlgebraSpec<S>> {
    jordan_model(n).map(MatrixModel::into_algebra)
}

/// Ordinary associative `M_k(ℂ)` in the matrix-unit basis.
pub fn matrix_model<S: Scalar>(k: usize) -> Result<MatrixModel<S>> {
    if k < 1 {
        return Err(NaqmError::InvalidInput("matrix size must be positive".into()));
    }
    matrix_unit_model(k, ProductKind::Associative, format!("matrix_M{k}"))
}

pub fn matrix_algebra<S: Scalar>(k: usize) -> Result<AlgebraSpec<S>> {
    matrix_model(k).map(MatrixModel::into_algebra)
}

/// Pauli matrices `σ₁, σ₂, σ₃`.
pub fn pauli_matrices<S: Scalar>() -> [Matrix<S>; 3] {
    let (o, z, i) = (S::one(), S::zero(), S::i());
    [
        Matrix::from_vec(2, 2, vec![z.clone(), o.clone(), o.clone(), z.clone()]),
        Matrix::from_vec(2, 2, vec![z.clone(), -i.clone(), i, z.clone()]),
        Matrix::from_vec(2, 2, vec![o.clone(), z.clone(), z, -o]),
    ]
}

/// The Jordan algebra `M₂(ℂ)` in the basis `{𝟙, σ₁, σ₂, σ₃}`.
pub fn pauli_model<S: Scalar>() -> MatrixModel<S> {
    let [s1, s2, s3] = pauli_matrices::<S>();
    let basis = vec![Matrix::identity(2), s1, s2, s3];
    let half = S::from_ratio(1, 2);
    let dual = basis.iter().map(|b| b.scale(&half)).collect();
    let labels = ["1", "x", "y", "z"].iter().map(|s| s.to_string()).collect();
    MatrixModel::build(
        "pauli_jordan".into(),
        labels,
        2,
        ProductKind::Jordan,
        basis,
        dual,
        Matrix::identity(4),
        Unit::Index(0),
    )
    .expect("Pauli basis is well formed")
}

pub fn pauli_jordan<S: Scalar>() -> AlgebraSpec<S> {
    pauli_model().into_algebra()
}

/// `Π(a) = ½(a⊗𝟙 + 𝟙⊗aᵀ)` on `ℂⁿ⊗ℂⁿ`, left factor on the row index.
pub fn jordan_pi<S: Scalar>(a: &Matrix<S>) -> Matrix<S> {
    let n = a.rows();
    let id = Matrix::identity(n);
    (&a.kron(&id) + &id.kron(&a.transpose())).scale(&S::from_ratio(1, 2))
}

/// Unitization `ℂ ⊕ 𝔤` of a Lie algebra with real bracket constants
/// `[g_i, g_j] = Σ_k f[i][j][k] g_k`. Basis index 0 is the unit, `g_i` sits at
/// index `i + 1`, and `g_i* = −g_i`.
pub fn lie_unitization<S: Scalar>(dim_g: usize, f: &[S], tol: f64) -> Result<AlgebraSpec<S>> {
    let m = dim_g;
    if f.len() != m * m * m {
        return Err(NaqmError::dims(m * m * m, f.len()));
    }
    let fc = |i: usize, j: usize, k: usize| f[(i * m + j) * m + k].clone();
    for x in f {
        if !(x.clone() - x.conj()).is_zero_within(tol) {
            return Err(NaqmError::InvalidInput("bracket constants must be real".into()));
        }
    }
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                if !(fc(i, j, k) + fc(j, i, k)).is_zero_within(tol) {
                    return Err(NaqmError::InvalidInput(format!(
                        "bracket not antisymmetric at ({i},{j},{k})"
                    )));
                }
            }
        }
    }
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                for l in 0..m {
                    let mut s = S::zero();
                    for p in 0..m {
                        s = s + fc(j, k, p) * fc(i, p, l) + fc(i, j, p) * fc(k, p, l) + fc(k, i, p) * fc(j, p, l);
                    }
                    if !s.is_zero_within(tol) {
                        return Err(NaqmError::InvalidInput(format!(
                            "Jacobi identity fails at ({i},{j},{k}) component {l}"
                        )));
                    }
                }
            }
        }
    }
    let n = m + 1;
    let star = Matrix::from_fn(n, n, |a, b| match (a, b) {
        (0, 0) => S::one(),
        (a, b) if a == b => -S::one(),
        _ => S::zero(),
    });
    let mut labels = vec!["1".to_string()];
    labels.extend((1..=m).map(|i| format!("g{i}")));
    let alg = AlgebraSpec::from_products(
        "lie_unitization",
        labels,
        n,
        |mu, nu| match (mu, nu) {
            (0, k) | (k, 0) => vec![(k, S::one())],
            (a, b) => (0..m)
                .map(|k| (k + 1, fc(a - 1, b - 1, k)))
                .filter(|(_, c)| *c != S::zero())
                .collect(),
        },
        star,
        Unit::Index(0),
    )?;
    let mut trace = vec![S::zero(); n];
    trace[0] = S::one();
    alg.with_trace(trace)
}

/// Structure constants `ε_ijk` of 𝔰𝔲(2).
pub fn su2_constants<S: Scalar>() -> Vec<S> {
    let mut f = vec![S::zero(); 27];
    for &(a, b, c) in &[(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        f[(a * 3 + b) * 3 + c] = S::one();
        f[(b * 3 + a) * 3 + c] = -S::one();
    }
    f
}

/// True iff each row and each column has exactly one entry, equal to ±1.
pub fn signed_permutation_check<S: Scalar>(x: &Matrix<S>, tol: f64) -> bool {
    if !x.is_square() {
        return false;
    }
    let n = x.rows();
    let is_unit = |v: &S| v.approx_eq(&S::one(), tol) || v.approx_eq(&-S::one(), tol);
    let line_ok = |entries: Vec<&S>| {
        let nonzero: Vec<&&S> = entries.iter().filter(|v| !v.is_zero_within(tol)).collect();
        nonzero.len() == 1 && is_unit(nonzero[0])
    };
    (0..n).all(|i| line_ok((0..n).map(|j| x.get(i, j)).collect()))
        && (0..n).all(|j| line_ok((0..n).map(|i| x.get(i, j)).collect()))
}

/// `P_ijk = E_i·E_j·E_k` for an octonion triple.
#[derive(Clone, Debug)]
pub struct PhaseMatrix<S> {
    pub indices: (usize, usize, usize),
    /// `η_ijk`: the diagonal is `η_ijk · (−1 on {0,i,j,k}, +1 elsewhere)`.
    pub orientation: i32,
    pub matrix: Matrix<S>,
}

impl<S: Scalar> PhaseMatrix<S> {
    pub fn diagonal(&self) -> Vec<S> {
        (0..8).map(|i| self.matrix.get(i, i).clone()).collect()
    }
}

pub fn phase_matrix<S: Scalar>(i: usize, j: usize, k: usize) -> Result<PhaseMatrix<S>> {
    let orientation = if (1..8).contains(&i) && (1..8).contains(&j) && (1..8).contains(&k) {
        OctonionTable::eta(i, j, k)
    } else {
        0
    };
    if orientation == 0 {
        return Err(NaqmError::InvalidInput(format!(
            "({i},{j},{k}) is not an octonion triple"
        )));
    }
    let e = octonion_left_matrices::<S>();
    let matrix = &(&e[i] * &e[j]) * &e[k];
    let sign = S::from_ratio(orientation as i64, 1);
    let expected = Matrix::from_fn(8, 8, |r, c| {
        if r != c {
            S::zero()
        } else if [0, i, j, k].contains(&r) {
            -sign.clone()
        } else {
            sign.clone()
        }
    });
    if matrix != expected {
        return Err(NaqmError::InvalidInput(format!(
            "E_{i}E_{j}E_{k} does not have the phase pattern"
        )));
    }
    Ok(PhaseMatrix {
        indices: (i, j, k),
        orientation,
        matrix,
    })
}

/// The 16×16 matrices `Γ_μ = [[0, E_μ], [Ē_μ, 0]]` with `Ē₀ = E₀`, `Ē_i = −E_i`.
pub fn clifford_gamma<S: Scalar>() -> Vec<Matrix<S>> {
    let e = octonion_left_matrices::<S>();
    e.iter()
        .enumerate()
        .map(|(mu, em)| {
            let bar = if mu == 0 { em.clone() } else { em.scale(&-S::one()) };
            Matrix::from_fn(16, 16, |r, c| match (r < 8, c < 8) {
                (true, false) => em.get(r, c - 8).clone(),
                (false, true) => bar.get(r - 8, c).clone(),
                _ => S::zero(),
            })
        })
        .collect()
}

/// Checks `{Γ_μ, Γ_ν} = 2δ_μν 𝟙` for all pairs.
pub fn clifford_check<S: Scalar>(gammas: &[Matrix<S>], tol: f64) -> bool {
    let n = gammas.first().map(Matrix::rows).unwrap_or(0);
    let two_id = Matrix::<S>::identity(n).scale(&S::from_ratio(2, 1));
    let zero = Matrix::<S>::zeros(n, n);
    gammas.iter().enumerate().all(|(mu, a)| {
        gammas.iter().enumerate().all(|(nu, b)| {
            let target = if mu == nu { &two_id } else { &zero };
            a.anticommutator(b).approx_eq(target, tol)
        })
    })
}

/// `scale · (z(y y) − (z y) y)^`. For Jordan models this is checked against
/// `¼ · scale · ([[z, y]_·, y]_·)^`.
pub fn bonafide_hamiltonian<S: Scalar>(
    model: &MatrixModel<S>,
    y: &Element<S>,
    z: &Element<S>,
    scale: &S,
    tol: f64,
) -> Result<MultOp<S>> {
    let alg = model.algebra();
    let env = Enveloping::new(alg);
    let yy = alg.multiply(y, y)?;
    let zyy = alg.multiply(z, &yy)?;
    let zy_y = alg.multiply(&alg.multiply(z, y)?, y)?;
    let h = env.left_op(&zyy)?.sub(&env.left_op(&zy_y)?)?.scale(scale);
    if model.kind() == ProductKind::Jordan {
        let inner = model.matrix_commutator(&model.matrix_commutator(z, y)?, y)?;
        let quarter = S::from_ratio(1, 4) * scale.clone();
        let alt = env.left_op(&inner)?.scale(&quarter);
        if !h.approx_eq(&alt, tol) {
            return Err(NaqmError::InvalidInput(
                "Hamiltonian disagrees with its double-commutator form".into(),
            ));
        }
    }
    Ok(h)
}
