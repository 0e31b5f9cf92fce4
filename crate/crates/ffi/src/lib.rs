//! C ABI over the floating-point mode of `naqm`.
//!
//! Algebras are opaque handles created by `naqm_algebra_builtin` or
//! `naqm_algebra_from_json` and released with `naqm_algebra_free`. Every
//! fallible call returns a `NaqmStatus`; the message for the most recent
//! failure on the calling thread is available from `naqm_last_error`.
//! Element buffers hold `dim` values of `NaqmComplex`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use naqm::cli::resolve_algebra;
use naqm::dynamics::Hamiltonian;
use naqm::eigen::operator_eigen;
use naqm::io::{algebra_from_str, word_from_str};
use naqm::states::{normalize, uncertainty, vector_state};
use naqm::{AlgebraSpec, Element, Enveloping, MultOp, NaqmError, TraceFunctional};
use num_complex::Complex64;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NaqmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    DimensionMismatch = 3,
    Parse = 4,
    Io = 5,
    NotNormalized = 6,
    NotObservable = 7,
    Unsupported = 8,
    BufferTooSmall = 9,
    Failed = 10,
    Panic = 11,
}

/// A complex number with the layout of `double[2]`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NaqmComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for NaqmComplex {
    fn from(z: Complex64) -> Self {
        NaqmComplex { re: z.re, im: z.im }
    }
}

impl From<NaqmComplex> for Complex64 {
    fn from(z: NaqmComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

/// Opaque algebra handle with its enveloping data and trace, if any.
pub struct NaqmAlgebra {
    alg: AlgebraSpec<Complex64>,
    env: Enveloping<Complex64>,
    tau: Option<TraceFunctional<Complex64>>,
}

impl NaqmAlgebra {
    fn new(alg: AlgebraSpec<Complex64>) -> Self {
        let env = Enveloping::new(&alg);
        let tau = TraceFunctional::of(&alg).ok();
        NaqmAlgebra { alg, env, tau }
    }

    fn trace(&self) -> Result<&TraceFunctional<Complex64>, Failure> {
        self.tau
            .as_ref()
            .ok_or_else(|| Failure::new(NaqmStatus::Unsupported, "algebra has no trace"))
    }

    fn operator(&self, word_json: *const c_char) -> Result<MultOp<Complex64>, Failure> {
        let text = str_arg(word_json, "word")?;
        let word = word_from_str(text, "word")?;
        Ok(self.env.evaluate_word(&word)?)
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure {
    status: NaqmStatus,
    message: String,
}

impl Failure {
    fn new(status: NaqmStatus, message: impl Into<String>) -> Self {
        Failure {
            status,
            message: message.into(),
        }
    }

    fn null(name: &str) -> Self {
        Failure::new(NaqmStatus::NullPointer, format!("{name} is null"))
    }
}

impl From<NaqmError> for Failure {
    fn from(e: NaqmError) -> Self {
        let status = match &e {
            NaqmError::DimensionMismatch { .. } => NaqmStatus::DimensionMismatch,
            NaqmError::Parse { .. } => NaqmStatus::Parse,
            NaqmError::Io(_) => NaqmStatus::Io,
            NaqmError::NotNormalized { .. } => NaqmStatus::NotNormalized,
            NaqmError::ObservableViolation { .. } => NaqmStatus::NotObservable,
            NaqmError::UnsupportedOperation(_) => NaqmStatus::Unsupported,
            NaqmError::InvalidInput(_) | NaqmError::UnknownSymbol(_) => NaqmStatus::InvalidInput,
            _ => NaqmStatus::Failed,
        };
        Failure::new(status, e.to_string())
    }
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> NaqmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            NaqmStatus::Ok
        }
        Ok(Err(failure)) => {
            set_error(failure.message);
            failure.status
        }
        Err(_) => {
            set_error("internal panic".into());
            NaqmStatus::Panic
        }
    }
}

fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::null(name));
    }
    // SAFETY: the caller passes a NUL-terminated string that outlives the call.
    unsafe { CStr::from_ptr(p) }
        .to_str()
        .map_err(|_| Failure::new(NaqmStatus::InvalidInput, format!("{name} is not valid UTF-8")))
}

fn handle<'a>(p: *const NaqmAlgebra) -> Result<&'a NaqmAlgebra, Failure> {
    // SAFETY: non-null handles come from `naqm_algebra_*` constructors and are live.
    unsafe { p.as_ref() }.ok_or_else(|| Failure::null("algebra"))
}

fn element(p: *const NaqmComplex, dim: usize, name: &str) -> Result<Element<Complex64>, Failure> {
    if p.is_null() {
        return Err(Failure::null(name));
    }
    // SAFETY: the caller provides `dim` readable values.
    let s = unsafe { std::slice::from_raw_parts(p, dim) };
    Ok(Element::new(s.iter().map(|&z| z.into()).collect()))
}

fn write_element(out: *mut NaqmComplex, e: &Element<Complex64>) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::null("out"));
    }
    for (k, &z) in e.coeffs().iter().enumerate() {
        // SAFETY: the caller provides `dim` writable values.
        unsafe { out.add(k).write(z.into()) };
    }
    Ok(())
}

fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::null("out"));
    }
    // SAFETY: checked non-null; the caller provides a writable slot.
    unsafe { out.write(value) };
    Ok(())
}

fn new_handle(out: *mut *mut NaqmAlgebra, alg: AlgebraSpec<Complex64>) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::null("out"));
    }
    let raw = Box::into_raw(Box::new(NaqmAlgebra::new(alg)));
    // SAFETY: checked non-null.
    unsafe { out.write(raw) };
    Ok(())
}

/// Message for the last failed call on this thread, or NULL after a
/// successful call. Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn naqm_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Creates a builtin algebra: `octonion`, `jordan:N`, `pauli`, `matrix:N` or `su2`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a writable handle slot.
#[no_mangle]
pub unsafe extern "C" fn naqm_algebra_builtin(name: *const c_char, out: *mut *mut NaqmAlgebra) -> NaqmStatus {
    guard(|| {
        let name = str_arg(name, "name")?;
        let alg = resolve_algebra::<Complex64>(&format!("builtin:{name}"))?;
        new_handle(out, alg)
    })
}

/// Creates an algebra from its JSON description.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable handle slot.
#[no_mangle]
pub unsafe extern "C" fn naqm_algebra_from_json(json: *const c_char, out: *mut *mut NaqmAlgebra) -> NaqmStatus {
    guard(|| {
        let text = str_arg(json, "json")?;
        let alg = algebra_from_str::<Complex64>(text, "json")?;
        new_handle(out, alg)
    })
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `alg` must be NULL or a live handle, which is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn naqm_algebra_free(alg: *mut NaqmAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// Writes the algebra dimension.
///
/// # Safety
/// `alg` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn naqm_algebra_dim(alg: *const NaqmAlgebra, out: *mut usize) -> NaqmStatus {
    guard(|| write(out, handle(alg)?.alg.dim()))
}

/// Checks the algebra axioms at tolerance `tol` and writes the verdict.
///
/// # Safety
/// `alg` must be a live handle and `passed` writable.
#[no_mangle]
pub unsafe extern "C" fn naqm_algebra_check(alg: *const NaqmAlgebra, tol: f64, passed: *mut bool) -> NaqmStatus {
    guard(|| write(passed, handle(alg)?.alg.check_axioms(tol).passed))
}

/// Writes the product `a b`.
///
/// # Safety
/// `a`, `b` and `out` must each hold `dim` values.
#[no_mangle]
pub unsafe extern "C" fn naqm_multiply(
    alg: *const NaqmAlgebra,
    a: *const NaqmComplex,
    b: *const NaqmComplex,
    out: *mut NaqmComplex,
) -> NaqmStatus {
    guard(|| {
        let h = handle(alg)?;
        let n = h.alg.dim();
        let p = h.alg.multiply(&element(a, n, "a")?, &element(b, n, "b")?)?;
        write_element(out, &p)
    })
}

/// Writes the involution `a*`.
///
/// # Safety
/// `a` and `out` must each hold `dim` values.
#[no_mangle]
pub unsafe extern "C" fn naqm_star(
    alg: *const NaqmAlgebra,
    a: *const NaqmComplex,
    out: *mut NaqmComplex,
) -> NaqmStatus {
    guard(|| {
        let h = handle(alg)?;
        let s = h.alg.star(&element(a, h.alg.dim(), "a")?)?;
        write_element(out, &s)
    })
}

/// Writes the canonical trace `τ(a)`.
///
/// # Safety
/// `a` must hold `dim` values and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn naqm_trace(
    alg: *const NaqmAlgebra,
    a: *const NaqmComplex,
    out: *mut NaqmComplex,
) -> NaqmStatus {
    guard(|| {
        let h = handle(alg)?;
        let v = h.trace()?.eval(&element(a, h.alg.dim(), "a")?);
        write(out, v.into())
    })
}

/// Writes the dimension of the operator algebra generated by the left
/// multiplications, or by left and right multiplications when `both` is set.
///
/// # Safety
/// `alg` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn naqm_enveloping_dim(alg: *const NaqmAlgebra, both: bool, out: *mut usize) -> NaqmStatus {
    guard(|| {
        let env = &handle(alg)?.env;
        let mut gens = env.left_generators();
        if both {
            gens.extend(env.right_generators());
        }
        write(out, env.span_closure(&gens, true, 1e-8)?.dim)
    })
}

/// Rescales `psi` in place to unit norm `τ(ψ* ψ) = 1`.
///
/// # Safety
/// `psi` must hold `dim` values.
#[no_mangle]
pub unsafe extern "C" fn naqm_normalize(alg: *const NaqmAlgebra, psi: *mut NaqmComplex) -> NaqmStatus {
    guard(|| {
        let h = handle(alg)?;
        let v = normalize(&h.alg, h.trace()?, &element(psi, h.alg.dim(), "psi")?)?;
        write_element(psi, &v)
    })
}

/// Writes the expectation `τ(ψ* (X ψ))` of the operator word `word_json`
/// in the normalized vector `psi`.
///
/// # Safety
/// `word_json` must be a NUL-terminated string, `psi` hold `dim` values and
/// `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn naqm_expectation(
    alg: *const NaqmAlgebra,
    word_json: *const c_char,
    psi: *const NaqmComplex,
    out: *mut NaqmComplex,
) -> NaqmStatus {
    guard(|| {
        let h = handle(alg)?;
        let x = h.operator(word_json)?;
        let w = vector_state(&h.alg, h.trace()?, &element(psi, h.alg.dim(), "psi")?, 1e-10)?;
        write(out, w.eval(&x).into())
    })
}

/// Writes the uncertainty of the observable `word_json` in the normalized
/// vector `psi`.
///
/// # Safety
/// `word_json` must be a NUL-terminated string, `psi` hold `dim` values and
/// `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn naqm_uncertainty(
    alg: *const NaqmAlgebra,
    word_json: *const c_char,
    psi: *const NaqmComplex,
    out: *mut f64,
) -> NaqmStatus {
    guard(|| {
        let h = handle(alg)?;
        let x = h.operator(word_json)?;
        let w = vector_state(&h.alg, h.trace()?, &element(psi, h.alg.dim(), "psi")?, 1e-10)?;
        write(out, uncertainty(&h.env, &w, &x, 1e-10)?)
    })
}

/// Writes the eigenvalues of the operator word into `values`, sorted by
/// descending real part. `capacity` is the length of `values`; `count`
/// receives the number of eigenvalues, which equals `dim`.
///
/// # Safety
/// `word_json` must be a NUL-terminated string, `values` hold `capacity`
/// writable values and `count` be writable.
#[no_mangle]
pub unsafe extern "C" fn naqm_eigenvalues(
    alg: *const NaqmAlgebra,
    word_json: *const c_char,
    values: *mut NaqmComplex,
    capacity: usize,
    count: *mut usize,
) -> NaqmStatus {
    guard(|| {
        let h = handle(alg)?;
        let x = h.operator(word_json)?;
        let pairs = operator_eigen(&h.alg, h.tau.as_ref(), &x)?;
        write(count, pairs.len())?;
        if capacity < pairs.len() {
            return Err(Failure::new(
                NaqmStatus::BufferTooSmall,
                format!("need {} values, got {capacity}", pairs.len()),
            ));
        }
        let ev = Element::new(pairs.iter().map(|p| p.value).collect());
        write_element(values, &ev)
    })
}

/// Evolves `psi` in place under `i ħ dψ/dt = H ψ` for time `t`, where `H`
/// is the observable word `hamiltonian_json`.
///
/// # Safety
/// `hamiltonian_json` must be a NUL-terminated string and `psi` hold `dim`
/// values.
#[no_mangle]
pub unsafe extern "C" fn naqm_evolve(
    alg: *const NaqmAlgebra,
    hamiltonian_json: *const c_char,
    hbar: f64,
    t: f64,
    psi: *mut NaqmComplex,
) -> NaqmStatus {
    guard(|| {
        let h = handle(alg)?;
        let op = h.operator(hamiltonian_json)?;
        let ham = Hamiltonian::new(&h.env, op, Complex64::new(hbar, 0.0), 1e-10)?;
        let v = ham.schrodinger_evolve(&element(psi, h.alg.dim(), "psi")?, t)?;
        write_element(psi, &v)
    })
}
