//! The multiplication algebra of an algebra in its regular birepresentation.
//!
//! Operators are n×n matrices acting on coefficient vectors. Each operator may
//! carry a formal word over the generators `L_μ: x ↦ e_μ x` and
//! `R_μ: x ↦ x e_μ`, which is what the prime and star involutions act on.

use serde_json::{json, Value};

use crate::algebra::{AlgebraSpec, Element};
use crate::error::{NaqmError, Result};
use crate::matrix::{Echelon, Matrix};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    L,
    R,
}

impl Side {
    pub fn swap(self) -> Side {
        match self {
            Side::L => Side::R,
            Side::R => Side::L,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Side::L => "L",
            Side::R => "R",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Factor<S> {
    /// Left or right multiplication by the basis element `e_index`.
    Gen { side: Side, index: usize },
    /// `exp(scale · word)` under the composition product.
    Exp { scale: S, word: Word<S> },
}

/// `coeff · f₁ ∘ f₂ ∘ ⋯ ∘ f_k`; an empty factor list is the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct Term<S> {
    pub coeff: S,
    pub factors: Vec<Factor<S>>,
}

/// Weighted sum of generator sequences. The empty sum is zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Word<S> {
    pub terms: Vec<Term<S>>,
}

impl<S: Scalar> Word<S> {
    pub fn zero() -> Self {
        Word { terms: Vec::new() }
    }

    pub fn identity() -> Self {
        Self::scalar(S::one())
    }

    pub fn scalar(c: S) -> Self {
        Word {
            terms: vec![Term {
                coeff: c,
                factors: Vec::new(),
            }],
        }
    }

    pub fn generator(side: Side, index: usize) -> Self {
        Word {
            terms: vec![Term {
                coeff: S::one(),
                factors: vec![Factor::Gen { side, index }],
            }],
        }
    }

    /// Single generator sequence with unit weight.
    pub fn sequence(gens: &[(Side, usize)]) -> Self {
        Word {
            terms: vec![Term {
                coeff: S::one(),
                factors: gens.iter().map(|&(side, index)| Factor::Gen { side, index }).collect(),
            }],
        }
    }

    pub fn exp(scale: S, word: Word<S>) -> Self {
        Word {
            terms: vec![Term {
                coeff: S::one(),
                factors: vec![Factor::Exp { scale, word }],
            }],
        }
    }

    /// Merges terms with identical factor lists and drops exact zeros.
    pub fn simplify(mut self) -> Self {
        let mut out: Vec<Term<S>> = Vec::with_capacity(self.terms.len());
        for t in self.terms.drain(..) {
            if let Some(existing) = out.iter_mut().find(|o| o.factors == t.factors) {
                existing.coeff = existing.coeff.clone() + t.coeff;
            } else {
                out.push(t);
            }
        }
        out.retain(|t| t.coeff != S::zero());
        Word { terms: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Word { terms }.simplify()
    }

    pub fn scale(&self, s: &S) -> Self {
        Word {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: t.coeff.clone() * s.clone(),
                    factors: t.factors.clone(),
                })
                .collect(),
        }
        .simplify()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    /// Composition: `self ∘ other`, distributed over the sums.
    pub fn compose(&self, other: &Self) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                let mut factors = a.factors.clone();
                factors.extend(b.factors.iter().cloned());
                terms.push(Term {
                    coeff: a.coeff.clone() * b.coeff.clone(),
                    factors,
                });
            }
        }
        Word { terms }.simplify()
    }

    /// Anti-automorphism `′`: reverses sequences and swaps L ↔ R.
    pub fn prime(&self) -> Self {
        Word {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: t.coeff.clone(),
                    factors: t.factors.iter().rev().map(Factor::prime).collect(),
                })
                .collect(),
        }
    }

    /// Antilinear anti-automorphism `∗`: reverses sequences, conjugates
    /// weights and replaces each generator by the generator of the starred
    /// basis element.
    pub fn star(&self, star_matrix: &Matrix<S>) -> Self {
        let mut terms = Vec::new();
        for t in &self.terms {
            // each factor expands into a sum; distribute
            let mut partial = vec![Term {
                coeff: t.coeff.conj(),
                factors: Vec::new(),
            }];
            for f in t.factors.iter().rev() {
                let options = f.star(star_matrix);
                let mut next = Vec::with_capacity(partial.len() * options.len());
                for p in &partial {
                    for (w, g) in &options {
                        let mut factors = p.factors.clone();
                        factors.push(g.clone());
                        next.push(Term {
                            coeff: p.coeff.clone() * w.clone(),
                            factors,
                        });
                    }
                }
                partial = next;
            }
            terms.extend(partial);
        }
        Word { terms }.simplify()
    }

    /// Number of generator symbols in the longest sequence.
    pub fn length(&self) -> usize {
        self.terms.iter().map(|t| t.factors.len()).max().unwrap_or(0)
    }

    pub fn max_index(&self) -> Option<usize> {
        self.terms
            .iter()
            .flat_map(|t| t.factors.iter())
            .filter_map(|f| match f {
                Factor::Gen { index, .. } => Some(*index),
                Factor::Exp { word, .. } => word.max_index(),
            })
            .max()
    }

    pub fn map_scalar<T: Scalar>(&self, f: &impl Fn(&S) -> T) -> Word<T> {
        Word {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: f(&t.coeff),
                    factors: t
                        .factors
                        .iter()
                        .map(|fa| match fa {
                            Factor::Gen { side, index } => Factor::Gen {
                                side: *side,
                                index: *index,
                            },
                            Factor::Exp { scale, word } => Factor::Exp {
                                scale: f(scale),
                                word: word.map_scalar(f),
                            },
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

impl<S: Scalar> Factor<S> {
    fn prime(&self) -> Self {
        match self {
            Factor::Gen { side, index } => Factor::Gen {
                side: side.swap(),
                index: *index,
            },
            Factor::Exp { scale, word } => Factor::Exp {
                scale: scale.clone(),
                word: word.prime(),
            },
        }
    }

    fn star(&self, star_matrix: &Matrix<S>) -> Vec<(S, Factor<S>)> {
        match self {
            Factor::Gen { side, index } => (0..star_matrix.cols())
                .filter(|&nu| *star_matrix.get(*index, nu) != S::zero())
                .map(|nu| {
                    (
                        star_matrix.get(*index, nu).clone(),
                        Factor::Gen { side: *side, index: nu },
                    )
                })
                .collect(),
            Factor::Exp { scale, word } => vec![(
                S::one(),
                Factor::Exp {
                    scale: scale.conj(),
                    word: word.star(star_matrix),
                },
            )],
        }
    }
}

/// Element of the multiplication algebra.
#[derive(Clone, Debug)]
pub struct MultOp<S> {
    matrix: Matrix<S>,
    word: Option<Word<S>>,
}

impl<S: Scalar> MultOp<S> {
    /// Operator without word provenance.
    pub fn from_matrix(matrix: Matrix<S>) -> Self {
        MultOp { matrix, word: None }
    }

    pub fn with_word(matrix: Matrix<S>, word: Word<S>) -> Self {
        MultOp {
            matrix,
            word: Some(word),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::with_word(Matrix::identity(n), Word::identity())
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    pub fn word(&self) -> Option<&Word<S>> {
        self.word.as_ref()
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn without_word(&self) -> Self {
        Self::from_matrix(self.matrix.clone())
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            Err(NaqmError::dims(self.dim(), other.dim()))
        } else {
            Ok(())
        }
    }

    /// Composition product `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(MultOp {
            matrix: &self.matrix * &other.matrix,
            word: match (&self.word, &other.word) {
                (Some(a), Some(b)) => Some(a.compose(b)),
                _ => None,
            },
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(MultOp {
            matrix: &self.matrix + &other.matrix,
            word: match (&self.word, &other.word) {
                (Some(a), Some(b)) => Some(a.add(b)),
                _ => None,
            },
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(MultOp {
            matrix: &self.matrix - &other.matrix,
            word: match (&self.word, &other.word) {
                (Some(a), Some(b)) => Some(a.sub(b)),
                _ => None,
            },
        })
    }

    pub fn scale(&self, s: &S) -> Self {
        MultOp {
            matrix: self.matrix.scale(s),
            word: self.word.as_ref().map(|w| w.scale(s)),
        }
    }

    /// `X ∘ Y − Y ∘ X`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.compose(other)?.sub(&other.compose(self)?)
    }

    /// `X ∘ Y + Y ∘ X`.
    pub fn anticommutator(&self, other: &Self) -> Result<Self> {
        self.compose(other)?.add(&other.compose(self)?)
    }

    /// `x ↦ X ▷ x`.
    pub fn act(&self, x: &Element<S>) -> Result<Element<S>> {
        if x.dim() != self.dim() {
            return Err(NaqmError::dims(self.dim(), x.dim()));
        }
        Ok(Element::new(self.matrix.mul_vec(x.coeffs())))
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.matrix.approx_eq(&other.matrix, tol)
    }

    pub fn map_scalar<T: Scalar>(&self, f: impl Fn(&S) -> T) -> MultOp<T> {
        MultOp {
            matrix: Matrix::from_fn(self.dim(), self.dim(), |i, j| f(self.matrix.get(i, j))),
            word: self.word.as_ref().map(|w| w.map_scalar(&f)),
        }
    }

    pub fn to_float(&self) -> MultOp<num_complex::Complex64> {
        self.map_scalar(Scalar::to_c64)
    }
}

/// A list of linearly independent operators and the dimension of their span.
#[derive(Clone, Debug)]
pub struct GeneratedSubalgebra<S> {
    pub basis: Vec<MultOp<S>>,
    /// Generator indices of each basis member, leftmost first.
    pub sequences: Vec<Vec<usize>>,
    pub dim: usize,
    pub closed: bool,
    pub generator_count: usize,
}

impl<S: Scalar> GeneratedSubalgebra<S> {
    /// Wraps an arbitrary operator list, keeping only independent members.
    /// The result is not marked closed; see [`GeneratedSubalgebra::verify_closed`].
    pub fn from_basis(ops: Vec<MultOp<S>>, rel_tol: f64) -> Self {
        let mut ech = Echelon::new(rel_tol);
        let mut basis = Vec::new();
        let mut sequences = Vec::new();
        for (k, op) in ops.into_iter().enumerate() {
            if ech.insert(op.matrix().data()) {
                basis.push(op);
                sequences.push(vec![k]);
            }
        }
        let dim = basis.len();
        GeneratedSubalgebra {
            generator_count: dim,
            basis,
            sequences,
            dim,
            closed: false,
        }
    }

    /// Checks that every product of two basis members lies in the span.
    pub fn verify_closed(&mut self, rel_tol: f64) -> bool {
        let mut ech = Echelon::new(rel_tol);
        for b in &self.basis {
            ech.insert(b.matrix().data());
        }
        let closed = self.basis.iter().all(|x| {
            self.basis.iter().all(|y| {
                let p = x.matrix() * y.matrix();
                ech.contains(p.data())
            })
        });
        self.closed = closed;
        closed
    }

    pub fn contains(&self, op: &MultOp<S>, rel_tol: f64) -> bool {
        let mut ech = Echelon::new(rel_tol);
        for b in &self.basis {
            ech.insert(b.matrix().data());
        }
        ech.contains(op.matrix().data())
    }

    pub fn report(&self, label: &str) -> Value {
        json!({
            "label": label,
            "generator_count": self.generator_count,
            "dim": self.dim,
            "closed": self.closed,
        })
    }
}

/// The multiplication algebra of a fixed algebra.
#[derive(Clone, Debug)]
pub struct Enveloping<S> {
    alg: AlgebraSpec<S>,
    left: Vec<Matrix<S>>,
    right: Vec<Matrix<S>>,
}

impl<S: Scalar> Enveloping<S> {
    pub fn new(alg: &AlgebraSpec<S>) -> Self {
        let n = alg.dim();
        let left = (0..n)
            .map(|mu| alg.left_matrix(&alg.basis(mu)).expect("basis dimension"))
            .collect();
        let right = (0..n)
            .map(|mu| alg.right_matrix(&alg.basis(mu)).expect("basis dimension"))
            .collect();
        Enveloping {
            alg: alg.clone(),
            left,
            right,
        }
    }

    pub fn algebra(&self) -> &AlgebraSpec<S> {
        &self.alg
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn identity(&self) -> MultOp<S> {
        MultOp::identity(self.dim())
    }

    pub fn generator(&self, side: Side, index: usize) -> Result<MultOp<S>> {
        self.evaluate_word(&Word::generator(side, index))
    }

    fn element_op(&self, side: Side, a: &Element<S>) -> Result<MultOp<S>> {
        self.alg.check_dim(a)?;
        let n = self.dim();
        let mut matrix = Matrix::zeros(n, n);
        let mut terms = Vec::new();
        for (mu, c) in a.coeffs().iter().enumerate() {
            if *c == S::zero() {
                continue;
            }
            let g = match side {
                Side::L => &self.left[mu],
                Side::R => &self.right[mu],
            };
            matrix = &matrix + &g.scale(c);
            terms.push(Term {
                coeff: c.clone(),
                factors: vec![Factor::Gen { side, index: mu }],
            });
        }
        Ok(MultOp::with_word(matrix, Word { terms }))
    }

    /// `â`: the operator `x ↦ a x`.
    pub fn left_op(&self, a: &Element<S>) -> Result<MultOp<S>> {
        self.element_op(Side::L, a)
    }

    /// `â′`: the operator `x ↦ x a`.
    pub fn right_op(&self, a: &Element<S>) -> Result<MultOp<S>> {
        self.element_op(Side::R, a)
    }

    pub fn act(&self, x_op: &MultOp<S>, x: &Element<S>) -> Result<Element<S>> {
        x_op.act(x)
    }

    /// Multiplies the generator matrices of each sequence left to right.
    pub fn evaluate_word(&self, word: &Word<S>) -> Result<MultOp<S>> {
        let matrix = self.word_matrix(word)?;
        Ok(MultOp::with_word(matrix, word.clone()))
    }

    fn word_matrix(&self, word: &Word<S>) -> Result<Matrix<S>> {
        let n = self.dim();
        let mut total = Matrix::zeros(n, n);
        for term in &word.terms {
            let mut m: Option<Matrix<S>> = None;
            for f in &term.factors {
                let fm = match f {
                    Factor::Gen { side, index } => {
                        if *index >= n {
                            return Err(NaqmError::UnknownSymbol(format!(
                                "{}{} (algebra dimension {n})",
                                side.symbol(),
                                index
                            )));
                        }
                        match side {
                            Side::L => self.left[*index].clone(),
                            Side::R => self.right[*index].clone(),
                        }
                    }
                    Factor::Exp { scale, word } => {
                        let inner = self.word_matrix(word)?.scale(scale);
                        S::matrix_exp(&inner).ok_or_else(|| {
                            NaqmError::UnsupportedOperation("operator exponential needs float arithmetic".into())
                        })?
                    }
                };
                m = Some(match m {
                    None => fm,
                    Some(prev) => &prev * &fm,
                });
            }
            let m = m.unwrap_or_else(|| Matrix::identity(n));
            total = &total + &m.scale(&term.coeff);
        }
        Ok(total)
    }

    fn provenance<'a>(&self, x: &'a MultOp<S>, what: &str) -> Result<&'a Word<S>> {
        x.word()
            .ok_or_else(|| NaqmError::UnsupportedOperation(format!("{what} needs word provenance")))
    }

    /// `X ↦ X′`.
    pub fn prime_op(&self, x: &MultOp<S>) -> Result<MultOp<S>> {
        let w = self.provenance(x, "prime_op")?;
        self.evaluate_word(&w.prime())
    }

    /// `X ↦ X*`.
    pub fn star_op(&self, x: &MultOp<S>) -> Result<MultOp<S>> {
        let w = self.provenance(x, "star_op")?;
        self.evaluate_word(&w.star(self.alg.star_matrix()))
    }

    /// Re-evaluates the word and compares with the stored matrix.
    pub fn provenance_residual(&self, x: &MultOp<S>) -> Result<f64> {
        let w = self.provenance(x, "provenance check")?;
        Ok(self.word_matrix(w)?.max_abs_diff(x.matrix()))
    }

    /// `L_μ` for every basis element μ.
    pub fn left_generators(&self) -> Vec<MultOp<S>> {
        (0..self.dim())
            .map(|mu| MultOp::with_word(self.left[mu].clone(), Word::generator(Side::L, mu)))
            .collect()
    }

    /// `R_μ` for every basis element μ.
    pub fn right_generators(&self) -> Vec<MultOp<S>> {
        (0..self.dim())
            .map(|mu| MultOp::with_word(self.right[mu].clone(), Word::generator(Side::R, mu)))
            .collect()
    }

    /// Breadth-first closure of the span of `generators` under composition.
    ///
    /// Each round multiplies the newly added basis members on the left by
    /// every generator; candidates are tried in order of sequence length and
    /// then generator order. Stops once the span is all of `M_n`.
    pub fn span_closure(
        &self,
        generators: &[MultOp<S>],
        include_unit: bool,
        rel_tol: f64,
    ) -> Result<GeneratedSubalgebra<S>> {
        let n = self.dim();
        let full = n * n;
        for g in generators {
            if g.dim() != n {
                return Err(NaqmError::dims(n, g.dim()));
            }
        }
        let mut ech = Echelon::new(rel_tol);
        let mut basis: Vec<MultOp<S>> = Vec::new();
        let mut sequences: Vec<Vec<usize>> = Vec::new();
        let mut frontier: Vec<usize> = Vec::new();

        if include_unit {
            let id = self.identity();
            if ech.insert(id.matrix().data()) {
                basis.push(id);
                sequences.push(Vec::new());
                frontier.push(0);
            }
        }
        for (k, g) in generators.iter().enumerate() {
            if ech.rank() == full {
                break;
            }
            if ech.insert(g.matrix().data()) {
                frontier.push(basis.len());
                basis.push(g.clone());
                sequences.push(vec![k]);
            }
        }

        while !frontier.is_empty() && ech.rank() < full {
            let mut candidates: Vec<(Vec<usize>, usize, usize)> = Vec::new();
            for &m in &frontier {
                for gi in 0..generators.len() {
                    let mut seq = Vec::with_capacity(sequences[m].len() + 1);
                    seq.push(gi);
                    seq.extend_from_slice(&sequences[m]);
                    candidates.push((seq, gi, m));
                }
            }
            candidates.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
            let mut next = Vec::new();
            for (seq, gi, m) in candidates {
                if ech.rank() == full {
                    break;
                }
                let op = generators[gi].compose(&basis[m])?;
                if ech.insert(op.matrix().data()) {
                    next.push(basis.len());
                    basis.push(op);
                    sequences.push(seq);
                }
            }
            frontier = next;
        }

        let dim = basis.len();
        Ok(GeneratedSubalgebra {
            basis,
            sequences,
            dim,
            closed: true,
            generator_count: generators.len(),
        })
    }
}

fn parse_pair(v: &Value, ctx: &str) -> Result<(f64, f64)> {
    let bad = || NaqmError::Parse {
        source_name: "word".into(),
        message: format!("{ctx}: expected [re, im]"),
    };
    let a = v.as_array().ok_or_else(bad)?;
    if a.len() != 2 {
        return Err(bad());
    }
    Ok((a[0].as_f64().ok_or_else(bad)?, a[1].as_f64().ok_or_else(bad)?))
}

fn pair_json<S: Scalar>(s: &S) -> Value {
    let c = s.to_c64();
    json!([c.re, c.im])
}

fn factor_from_json<S: Scalar>(v: &Value, ctx: &str) -> Result<(S, Option<Factor<S>>)> {
    let err = |m: String| NaqmError::Parse {
        source_name: "word".into(),
        message: format!("{ctx}: {m}"),
    };
    let obj = v.as_object().ok_or_else(|| err("expected an object".into()))?;
    let weight = match obj.get("weight") {
        Some(w) => {
            let (re, im) = parse_pair(w, &format!("{ctx}.weight"))?;
            S::from_parts(re, im)
        }
        None => S::one(),
    };
    let gen = obj
        .get("gen")
        .and_then(Value::as_str)
        .ok_or_else(|| err("missing \"gen\"".into()))?;
    let index = || -> Result<usize> {
        obj.get("index")
            .and_then(Value::as_u64)
            .map(|i| i as usize)
            .ok_or_else(|| err("missing or negative \"index\"".into()))
    };
    let factor = match gen {
        "L" => Some(Factor::Gen {
            side: Side::L,
            index: index()?,
        }),
        "R" => Some(Factor::Gen {
            side: Side::R,
            index: index()?,
        }),
        "I" => None,
        "exp" => {
            let (re, im) = parse_pair(
                obj.get("scale").ok_or_else(|| err("missing \"scale\"".into()))?,
                &format!("{ctx}.scale"),
            )?;
            let inner = word_from_json(obj.get("word").ok_or_else(|| err("missing \"word\"".into()))?)?;
            Some(Factor::Exp {
                scale: S::from_parts(re, im),
                word: inner,
            })
        }
        other => return Err(NaqmError::UnknownSymbol(other.to_string())),
    };
    Ok((weight, factor))
}

/// Parses a word: an array of sequences, each an array of factor objects
/// `{"gen": "L"|"R", "index": μ, "weight": [re, im]}`. A bare sequence is
/// read as a single term. `{"gen": "I"}` is the identity and
/// `{"gen": "exp", "scale": [re, im], "word": [...]}` an exponential.
pub fn word_from_json<S: Scalar>(v: &Value) -> Result<Word<S>> {
    let outer = v.as_array().ok_or_else(|| NaqmError::Parse {
        source_name: "word".into(),
        message: "expected an array of sequences".into(),
    })?;
    let single = outer.iter().all(Value::is_object) && !outer.is_empty();
    let sequences: Vec<&Value> = if single { vec![v] } else { outer.iter().collect() };
    let mut terms = Vec::new();
    for (t, seq) in sequences.iter().enumerate() {
        let items = seq.as_array().ok_or_else(|| NaqmError::Parse {
            source_name: "word".into(),
            message: format!("term {t}: expected an array of factors"),
        })?;
        let mut coeff = S::one();
        let mut factors = Vec::new();
        for (k, item) in items.iter().enumerate() {
            let (w, f) = factor_from_json::<S>(item, &format!("term {t} factor {k}"))?;
            coeff = coeff * w;
            factors.extend(f);
        }
        terms.push(Term { coeff, factors });
    }
    Ok(Word { terms })
}

pub fn word_to_json<S: Scalar>(w: &Word<S>) -> Value {
    let terms: Vec<Value> = w
        .terms
        .iter()
        .map(|t| {
            if t.factors.is_empty() {
                return json!([{"gen": "I", "weight": pair_json(&t.coeff)}]);
            }
            let items: Vec<Value> = t
                .factors
                .iter()
                .enumerate()
                .map(|(k, f)| {
                    let weight = if k == 0 { pair_json(&t.coeff) } else { json!([1.0, 0.0]) };
                    match f {
                        Factor::Gen { side, index } => json!({
                            "gen": side.symbol(),
                            "index": index,
                            "weight": weight,
                        }),
                        Factor::Exp { scale, word } => json!({
                            "gen": "exp",
                            "scale": pair_json(scale),
                            "word": word_to_json(word),
                            "weight": weight,
                        }),
                    }
                })
                .collect();
            Value::Array(items)
        })
        .collect();
    Value::Array(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Unit;
    use crate::scalar::Exact;

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
    fn left_op_of_unit_is_identity() {
        let alg = dual_numbers();
        let env = Enveloping::new(&alg);
        let l = env.left_op(&alg.unit()).unwrap();
        assert_eq!(l.matrix(), &Matrix::identity(2));
    }

    #[test]
    fn prime_swaps_sides_and_is_involutive() {
        let alg = dual_numbers();
        let env = Enveloping::new(&alg);
        let x = env
            .evaluate_word(&Word::sequence(&[(Side::L, 1), (Side::R, 0)]))
            .unwrap();
        let p = env.prime_op(&x).unwrap();
        assert_eq!(p.word().unwrap(), &Word::sequence(&[(Side::L, 0), (Side::R, 1)]));
        let pp = env.prime_op(&p).unwrap();
        assert_eq!(pp.word(), x.word());
    }

    #[test]
    fn missing_provenance_is_unsupported() {
        let alg = dual_numbers();
        let env = Enveloping::new(&alg);
        let x = MultOp::from_matrix(Matrix::<Exact>::identity(2));
        assert!(matches!(env.star_op(&x), Err(NaqmError::UnsupportedOperation(_))));
    }

    #[test]
    fn unknown_generator_index() {
        let alg = dual_numbers();
        let env = Enveloping::new(&alg);
        let r = env.evaluate_word(&Word::<Exact>::generator(Side::L, 5));
        assert!(matches!(r, Err(NaqmError::UnknownSymbol(_))));
    }

    #[test]
    fn identity_closure_is_one_dimensional() {
        let alg = dual_numbers();
        let env = Enveloping::new(&alg);
        let s = env.span_closure(&[env.identity()], false, 0.0).unwrap();
        assert_eq!(s.dim, 1);
    }

    #[test]
    fn word_json_roundtrip() {
        let w = Word::<Exact>::sequence(&[(Side::L, 1), (Side::R, 0)])
            .scale(&Exact::from_parts(0.5, -2.0))
            .add(&Word::identity());
        let back: Word<Exact> = word_from_json(&word_to_json(&w)).unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn bare_sequence_is_one_term() {
        let v: Value = serde_json::from_str(r#"[{"gen":"L","index":1,"weight":[0,1]},{"gen":"R","index":0}]"#).unwrap();
        let w: Word<Exact> = word_from_json(&v).unwrap();
        assert_eq!(w.terms.len(), 1);
        assert_eq!(w.terms[0].coeff, Exact::i());
    }
}
