//! JSON file formats and deterministic report output.

use std::path::Path;

use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::algebra::{AlgebraSpec, Element, Unit};
use crate::enveloping::{word_from_json, Word};
use crate::error::{NaqmError, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

fn parse_err(source: &str, message: impl Into<String>) -> NaqmError {
    NaqmError::Parse {
        source_name: source.to_string(),
        message: message.into(),
    }
}

fn from_json_text<T: for<'de> Deserialize<'de>>(text: &str, source: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        let line = text.lines().nth(e.line().saturating_sub(1)).unwrap_or("").trim();
        let context = if line.is_empty() {
            String::new()
        } else {
            format!(" near `{}`", truncate(line, 60))
        };
        parse_err(source, format!("{e}{context}"))
    })
}

fn truncate(s: &str, n: usize) -> String {
    if s.chars().count() <= n {
        s.to_string()
    } else {
        let head: String = s.chars().take(n).collect();
        format!("{head}...")
    }
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| NaqmError::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

/// A complex number written as `[re, im]` or as a bare real.
#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(untagged)]
pub enum ComplexRepr {
    Pair([f64; 2]),
    Real(f64),
}

impl ComplexRepr {
    pub fn to_scalar<S: Scalar>(self) -> S {
        match self {
            ComplexRepr::Pair([re, im]) => S::from_parts(re, im),
            ComplexRepr::Real(re) => S::from_parts(re, 0.0),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct StarFile {
    matrix: Vec<Value>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    #[serde(default)]
    label: Option<String>,
    dim: usize,
    #[serde(default)]
    unit_index: Option<usize>,
    #[serde(default)]
    unit_vector: Option<Vec<ComplexRepr>>,
    #[serde(default)]
    labels: Vec<String>,
    structure_constants: Vec<Vec<f64>>,
    star: StarFile,
    #[serde(default)]
    trace: Option<Vec<ComplexRepr>>,
}

fn index_of(x: f64, dim: usize, what: &str, source: &str) -> Result<usize> {
    if x.fract() != 0.0 || x < 0.0 || x >= dim as f64 {
        return Err(parse_err(
            source,
            format!("{what}: index {x} is not an integer in 0..{dim}"),
        ));
    }
    Ok(x as usize)
}

fn complex_of<S: Scalar>(v: &Value, what: &str, source: &str) -> Result<S> {
    serde_json::from_value::<ComplexRepr>(v.clone())
        .map(ComplexRepr::to_scalar)
        .map_err(|_| parse_err(source, format!("{what}: expected [re, im] or a number")))
}

/// Parses an algebra definition.
///
/// `structure_constants` holds sparse entries `[μ, ν, ρ, re, im]`; the star
/// matrix is either `n²` row-major `[re, im]` entries or `n` rows of `n`.
pub fn algebra_from_str<S: Scalar>(text: &str, source: &str) -> Result<AlgebraSpec<S>> {
    let file: AlgebraFile = from_json_text(text, source)?;
    let n = file.dim;
    if n == 0 {
        return Err(parse_err(source, "dim must be positive"));
    }
    let mut structure = vec![S::zero(); n * n * n];
    for (k, entry) in file.structure_constants.iter().enumerate() {
        let what = format!("structure_constants[{k}]");
        if entry.len() != 5 && entry.len() != 4 {
            return Err(parse_err(source, format!("{what}: expected [mu, nu, rho, re, im]")));
        }
        let mu = index_of(entry[0], n, &what, source)?;
        let nu = index_of(entry[1], n, &what, source)?;
        let rho = index_of(entry[2], n, &what, source)?;
        let im = entry.get(4).copied().unwrap_or(0.0);
        let idx = (mu * n + nu) * n + rho;
        structure[idx] = structure[idx].clone() + S::from_parts(entry[3], im);
    }
    let is_scalar = |v: &Value| {
        v.is_number()
            || v.as_array()
                .is_some_and(|a| a.len() == 2 && a.iter().all(Value::is_number))
    };
    let star_entries: Vec<S> = if file.star.matrix.len() == n * n && file.star.matrix.iter().all(is_scalar) {
        file.star
            .matrix
            .iter()
            .enumerate()
            .map(|(k, v)| complex_of(v, &format!("star.matrix[{k}]"), source))
            .collect::<Result<_>>()?
    } else if file.star.matrix.len() == n {
        let mut out = Vec::with_capacity(n * n);
        for (i, row) in file.star.matrix.iter().enumerate() {
            let row = row
                .as_array()
                .filter(|r| r.len() == n)
                .ok_or_else(|| parse_err(source, format!("star.matrix[{i}]: expected {n} entries")))?;
            for (j, v) in row.iter().enumerate() {
                out.push(complex_of(v, &format!("star.matrix[{i}][{j}]"), source)?);
            }
        }
        out
    } else {
        return Err(parse_err(
            source,
            format!(
                "star.matrix: expected {} entries, found {}",
                n * n,
                file.star.matrix.len()
            ),
        ));
    };
    let star = Matrix::from_vec(n, n, star_entries);
    let unit = match (file.unit_index, file.unit_vector) {
        (Some(_), Some(_)) => return Err(parse_err(source, "give either unit_index or unit_vector, not both")),
        (Some(u), None) => {
            if u >= n {
                return Err(parse_err(source, format!("unit_index {u} out of range for dim {n}")));
            }
            Unit::Index(u)
        }
        (None, Some(v)) => {
            if v.len() != n {
                return Err(parse_err(source, format!("unit_vector: expected {n} entries")));
            }
            Unit::Vector(v.into_iter().map(ComplexRepr::to_scalar).collect())
        }
        (None, None) => Unit::Index(0),
    };
    if !file.labels.is_empty() && file.labels.len() != n {
        return Err(parse_err(
            source,
            format!("labels: expected {n} names, found {}", file.labels.len()),
        ));
    }
    let label = file.label.unwrap_or_else(|| source.to_string());
    let alg = AlgebraSpec::new(label, file.labels, n, structure, star, unit)?;
    match file.trace {
        Some(t) => {
            if t.len() != n {
                return Err(parse_err(
                    source,
                    format!("trace: expected {n} entries, found {}", t.len()),
                ));
            }
            alg.with_trace(t.into_iter().map(ComplexRepr::to_scalar).collect())
        }
        None => Ok(alg),
    }
}

pub fn load_algebra<S: Scalar>(path: &Path) -> Result<AlgebraSpec<S>> {
    algebra_from_str(&read_text(path)?, &path.display().to_string())
}

pub fn complex_json<S: Scalar>(s: &S) -> Value {
    let c = s.to_c64();
    json!([c.re, c.im])
}

pub fn complex_vec_json<S: Scalar>(v: &[S]) -> Value {
    Value::Array(v.iter().map(complex_json).collect())
}

/// Serializes an algebra in the file format read by [`algebra_from_str`].
pub fn algebra_to_json<S: Scalar>(alg: &AlgebraSpec<S>) -> Value {
    let n = alg.dim();
    let mut sc = Vec::new();
    for mu in 0..n {
        for nu in 0..n {
            for rho in 0..n {
                let c = alg.structure_constant(mu, nu, rho);
                if *c != S::zero() {
                    let z = c.to_c64();
                    sc.push(json!([mu, nu, rho, z.re, z.im]));
                }
            }
        }
    }
    let mut m = Map::new();
    m.insert("label".into(), json!(alg.label()));
    m.insert("dim".into(), json!(n));
    m.insert("labels".into(), json!(alg.labels()));
    match alg.unit_index() {
        Some(u) => m.insert("unit_index".into(), json!(u)),
        None => m.insert("unit_vector".into(), complex_vec_json(alg.unit().coeffs())),
    };
    m.insert("structure_constants".into(), Value::Array(sc));
    m.insert(
        "star".into(),
        json!({"matrix": complex_vec_json(alg.star_matrix().data())}),
    );
    if let Some(t) = alg.trace_covector() {
        m.insert("trace".into(), complex_vec_json(t));
    }
    Value::Object(m)
}

/// Reads a word from JSON text.
pub fn word_from_str<S: Scalar>(text: &str, source: &str) -> Result<Word<S>> {
    let v: Value = from_json_text(text, source)?;
    word_from_json(&v).map_err(|e| match e {
        NaqmError::Parse { message, .. } => parse_err(source, message),
        other => other,
    })
}

pub fn load_word<S: Scalar>(path: &Path) -> Result<Word<S>> {
    word_from_str(&read_text(path)?, &path.display().to_string())
}

/// Coefficient vector given inline as JSON (`[1, 0, ...]` or
/// `[[re, im], ...]`), or as a path to a file holding such JSON.
pub fn parse_vector<S: Scalar>(spec: &str, dim: usize) -> Result<Element<S>> {
    let text = if spec.trim_start().starts_with('[') {
        spec.to_string()
    } else {
        read_text(Path::new(spec))?
    };
    let v: Vec<ComplexRepr> = from_json_text(&text, "vector")?;
    if v.len() != dim {
        return Err(NaqmError::dims(dim, v.len()));
    }
    Ok(Element::new(v.into_iter().map(ComplexRepr::to_scalar).collect()))
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateDef {
    pub kind: String,
    #[serde(default)]
    pub psi: Option<Value>,
    #[serde(default)]
    pub probs: Option<Vec<f64>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeGrid {
    pub t0: f64,
    pub t1: f64,
    pub steps: usize,
}

impl TimeGrid {
    pub fn validate(&self) -> Result<()> {
        if self.t1.partial_cmp(&self.t0) != Some(std::cmp::Ordering::Greater)
            || self.steps == 0
            || !self.t0.is_finite()
            || !self.t1.is_finite()
        {
            return Err(NaqmError::InvalidInput(
                "time grid must be strictly increasing with at least one step".into(),
            ));
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<f64> {
        (0..=self.steps)
            .map(|k| self.t0 + (self.t1 - self.t0) * k as f64 / self.steps as f64)
            .collect()
    }
}

/// Inputs shared by the analysis subcommands.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default)]
    pub algebra: Option<String>,
    #[serde(default)]
    pub trace: Option<Vec<ComplexRepr>>,
    #[serde(default)]
    pub state: Option<StateDef>,
    #[serde(default)]
    pub hamiltonian: Option<Value>,
    #[serde(default)]
    pub observables: Vec<Value>,
    #[serde(default)]
    pub hbar: Option<f64>,
    #[serde(default)]
    pub time: Option<TimeGrid>,
    #[serde(default)]
    pub psi0: Option<Value>,
    #[serde(default)]
    pub out: Option<String>,
}

pub fn scenario_from_str(text: &str, source: &str) -> Result<Scenario> {
    let s: Scenario = from_json_text(text, source)?;
    if let Some(t) = &s.time {
        t.validate()?;
    }
    Ok(s)
}

pub fn load_scenario(path: &Path) -> Result<Scenario> {
    scenario_from_str(&read_text(path)?, &path.display().to_string())
}

/// Rounds to 12 significant digits and normalizes `−0`.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    let r: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn canonicalize(v: &Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round12(n.as_f64().unwrap_or(0.0));
            if x.fract() == 0.0 && x.abs() < 1e15 {
                json!(x as i64)
            } else {
                serde_json::Number::from_f64(x)
                    .map(Value::Number)
                    .unwrap_or(Value::Null)
            }
        }
        Value::Array(a) => Value::Array(a.iter().map(canonicalize).collect()),
        Value::Object(o) => {
            // serde_json's default map keeps keys sorted
            Value::Object(o.iter().map(|(k, v)| (k.clone(), canonicalize(v))).collect())
        }
        other => other.clone(),
    }
}

/// Deterministic rendering: sorted keys, floats at 12 significant digits.
pub fn canonical_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(&canonicalize(v)).expect("JSON values serialize");
    s.push('\n');
    s
}

/// Float formatted at 12 significant digits for CSV output.
pub fn csv_float(x: f64) -> String {
    format!("{}", round12(x))
}

/// Renders an element as a linear combination of basis labels.
pub fn format_element<S: Scalar>(alg: &AlgebraSpec<S>, a: &Element<S>) -> String {
    let mut parts = Vec::new();
    for (c, label) in a.coeffs().iter().zip(alg.labels()) {
        let z = c.to_c64();
        if z.norm() == 0.0 {
            continue;
        }
        let (re, im) = (round12(z.re), round12(z.im));
        let coeff = if im == 0.0 {
            match re {
                1.0 => String::new(),
                -1.0 => "-".to_string(),
                x => format!("{x}*"),
            }
        } else if re == 0.0 {
            match im {
                1.0 => "i*".to_string(),
                -1.0 => "-i*".to_string(),
                x => format!("{x}i*"),
            }
        } else {
            format!("({re}{:+}i)*", im)
        };
        parts.push(format!("{coeff}{label}"));
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ").replace("+ -", "- ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{jordan_matrix_algebra, octonion_algebra};
    use crate::scalar::Exact;

    #[test]
    fn algebra_roundtrip() {
        for alg in [octonion_algebra::<Exact>(), jordan_matrix_algebra::<Exact>(2).unwrap()] {
            let text = canonical_json(&algebra_to_json(&alg));
            let back: AlgebraSpec<Exact> = algebra_from_str(&text, "roundtrip").unwrap();
            assert_eq!(back.dim(), alg.dim());
            for mu in 0..alg.dim() {
                for nu in 0..alg.dim() {
                    let (a, b) = (alg.basis(mu), alg.basis(nu));
                    assert_eq!(back.multiply(&a, &b).unwrap(), alg.multiply(&a, &b).unwrap());
                }
            }
            assert_eq!(back.unit(), alg.unit());
            assert_eq!(back.trace_covector(), alg.trace_covector());
            assert_eq!(back.star_matrix(), alg.star_matrix());
        }
    }

    #[test]
    fn syntax_error_reports_line() {
        let text = "{\n  \"dim\": 2,\n  \"structure_constants\": [[0,0,0,1,0],,]\n}";
        let err = algebra_from_str::<Exact>(text, "bad.json").unwrap_err().to_string();
        assert!(err.contains("bad.json") && err.contains("line 3"), "{err}");
    }

    #[test]
    fn out_of_range_index_is_named() {
        let text = r#"{"dim": 1, "structure_constants": [[0,0,3,1,0]], "star": {"matrix": [[1,0]]}}"#;
        let err = algebra_from_str::<Exact>(text, "x").unwrap_err().to_string();
        assert!(err.contains("structure_constants[0]"), "{err}");
    }

    #[test]
    fn canonical_rounding() {
        let v = json!({"b": 0.1 + 0.2, "a": -0.0, "c": 2.0});
        assert_eq!(canonical_json(&v), "{\n  \"a\": 0,\n  \"b\": 0.3,\n  \"c\": 2\n}\n");
    }

    #[test]
    fn element_formatting() {
        let o = octonion_algebra::<Exact>();
        let x = o.basis(3).sub(&o.basis(0).scale(&Exact::from_ratio(1, 2)));
        assert_eq!(format_element(&o, &x), "-0.5*e0 + e3");
    }
}
