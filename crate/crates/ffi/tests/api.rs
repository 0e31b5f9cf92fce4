use std::ffi::{CStr, CString};
use std::ptr;

use naqm_ffi::*;

fn cs(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn builtin(name: &str) -> *mut NaqmAlgebra {
    let mut h = ptr::null_mut();
    assert_eq!(
        unsafe { naqm_algebra_builtin(cs(name).as_ptr(), &mut h) },
        NaqmStatus::Ok
    );
    assert!(!h.is_null());
    h
}

fn basis(dim: usize, k: usize) -> Vec<NaqmComplex> {
    (0..dim)
        .map(|i| NaqmComplex {
            re: if i == k { 1.0 } else { 0.0 },
            im: 0.0,
        })
        .collect()
}

fn last_error() -> String {
    let p = naqm_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn zero() -> NaqmComplex {
    NaqmComplex { re: 0.0, im: 0.0 }
}

#[test]
fn octonion_products_and_trace() {
    let h = builtin("octonion");
    let mut dim = 0;
    assert_eq!(unsafe { naqm_algebra_dim(h, &mut dim) }, NaqmStatus::Ok);
    assert_eq!(dim, 8);
    assert!(naqm_last_error().is_null());
    let mut out = vec![zero(); 8];
    assert_eq!(
        unsafe { naqm_multiply(h, basis(8, 1).as_ptr(), basis(8, 2).as_ptr(), out.as_mut_ptr()) },
        NaqmStatus::Ok
    );
    assert_eq!(out, basis(8, 3));
    assert_eq!(
        unsafe { naqm_star(h, basis(8, 5).as_ptr(), out.as_mut_ptr()) },
        NaqmStatus::Ok
    );
    assert_eq!(out[5], NaqmComplex { re: -1.0, im: 0.0 });
    let mut t = zero();
    assert_eq!(unsafe { naqm_trace(h, basis(8, 0).as_ptr(), &mut t) }, NaqmStatus::Ok);
    assert_eq!(t, NaqmComplex { re: 1.0, im: 0.0 });
    let mut passed = false;
    assert_eq!(unsafe { naqm_algebra_check(h, 1e-12, &mut passed) }, NaqmStatus::Ok);
    assert!(passed);
    let (mut left, mut both) = (0, 0);
    assert_eq!(unsafe { naqm_enveloping_dim(h, false, &mut left) }, NaqmStatus::Ok);
    assert_eq!(unsafe { naqm_enveloping_dim(h, true, &mut both) }, NaqmStatus::Ok);
    assert_eq!((left, both), (64, 64));
    unsafe { naqm_algebra_free(h) };
}

#[test]
fn jordan_eigenvalues_and_evolution() {
    let h = builtin("pauli");
    let z = cs(r#"[[{"gen": "L", "index": 3, "weight": [1, 0]}]]"#);
    let mut vals = vec![zero(); 4];
    let mut count = 0;
    assert_eq!(
        unsafe { naqm_eigenvalues(h, z.as_ptr(), vals.as_mut_ptr(), 4, &mut count) },
        NaqmStatus::Ok
    );
    assert_eq!(count, 4);
    let want = [1.0, 0.0, 0.0, -1.0];
    for (v, w) in vals.iter().zip(want) {
        assert!((v.re - w).abs() < 1e-12 && v.im.abs() < 1e-12);
    }
    assert_eq!(
        unsafe { naqm_eigenvalues(h, z.as_ptr(), vals.as_mut_ptr(), 2, &mut count) },
        NaqmStatus::BufferTooSmall
    );
    assert_eq!(count, 4);

    // ψ₀ ∝ 𝟙 + z is a z-eigenvector, so H = 2ẑ only multiplies it by e^{−2it}
    let h2 = cs(r#"[[{"gen": "L", "index": 3, "weight": [2, 0]}]]"#);
    let mut psi = vec![
        NaqmComplex { re: 0.5, im: 0.0 },
        zero(),
        zero(),
        NaqmComplex { re: 0.5, im: 0.0 },
    ];
    assert_eq!(unsafe { naqm_normalize(h, psi.as_mut_ptr()) }, NaqmStatus::Ok);
    let t = 0.7;
    assert_eq!(
        unsafe { naqm_evolve(h, h2.as_ptr(), 1.0, t, psi.as_mut_ptr()) },
        NaqmStatus::Ok
    );
    let s = psi[0].re / (2.0 * t).cos();
    assert!((psi[3].im + s * (2.0 * t).sin()).abs() < 1e-12);
    let mut e = zero();
    assert_eq!(
        unsafe { naqm_expectation(h, z.as_ptr(), psi.as_ptr(), &mut e) },
        NaqmStatus::Ok
    );
    assert!((e.re - 1.0).abs() < 1e-12 && e.im.abs() < 1e-12);
    let mut du = 0.0;
    assert_eq!(
        unsafe { naqm_uncertainty(h, z.as_ptr(), psi.as_ptr(), &mut du) },
        NaqmStatus::Ok
    );
    assert!(du.abs() < 1e-12);
    unsafe { naqm_algebra_free(h) };
}

#[test]
fn algebra_from_json_text() {
    let json = cs(
        r#"{"dim": 2, "unit_index": 0, "structure_constants": [[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1]], "star": {"matrix": [1, 0, 0, 1]}}"#,
    );
    let mut h = ptr::null_mut();
    let status = unsafe { naqm_algebra_from_json(json.as_ptr(), &mut h) };
    assert_eq!(
        status,
        NaqmStatus::Ok,
        "{}",
        if status == NaqmStatus::Ok {
            String::new()
        } else {
            last_error()
        }
    );
    let mut dim = 0;
    assert_eq!(unsafe { naqm_algebra_dim(h, &mut dim) }, NaqmStatus::Ok);
    assert_eq!(dim, 2);
    let mut t = zero();
    assert_eq!(
        unsafe { naqm_trace(h, basis(2, 0).as_ptr(), &mut t) },
        NaqmStatus::Unsupported
    );
    assert!(last_error().contains("trace"));
    unsafe { naqm_algebra_free(h) };
}

#[test]
fn error_codes_and_messages() {
    let mut h = ptr::null_mut();
    assert_eq!(
        unsafe { naqm_algebra_builtin(cs("nothing").as_ptr(), &mut h) },
        NaqmStatus::InvalidInput
    );
    assert!(h.is_null());
    assert!(last_error().contains("nothing"));
    assert_eq!(
        unsafe { naqm_algebra_builtin(ptr::null(), &mut h) },
        NaqmStatus::NullPointer
    );
    assert_eq!(
        unsafe { naqm_algebra_from_json(cs("{\n\"dim\": 2,\n[").as_ptr(), &mut h) },
        NaqmStatus::Parse
    );
    assert!(last_error().contains("line"));

    let mut dim = 0;
    assert_eq!(
        unsafe { naqm_algebra_dim(ptr::null(), &mut dim) },
        NaqmStatus::NullPointer
    );
    let o = builtin("octonion");
    let mut out = vec![zero(); 8];
    assert_eq!(
        unsafe { naqm_multiply(o, ptr::null(), basis(8, 1).as_ptr(), out.as_mut_ptr()) },
        NaqmStatus::NullPointer
    );

    let bad_word = cs(r#"[[{"gen": "L", "index": 9, "weight": [1, 0]}]]"#);
    let mut e = zero();
    let status = unsafe { naqm_expectation(o, bad_word.as_ptr(), basis(8, 0).as_ptr(), &mut e) };
    assert_ne!(status, NaqmStatus::Ok);
    let e1 = cs(r#"[[{"gen": "L", "index": 1, "weight": [1, 0]}]]"#);
    let mut unnormalized = basis(8, 0);
    unnormalized[0].re = 2.0;
    assert_eq!(
        unsafe { naqm_expectation(o, e1.as_ptr(), unnormalized.as_ptr(), &mut e) },
        NaqmStatus::NotNormalized
    );
    let mut du = 0.0;
    assert_eq!(
        unsafe { naqm_uncertainty(o, e1.as_ptr(), basis(8, 0).as_ptr(), &mut du) },
        NaqmStatus::NotObservable
    );
    assert_eq!(
        unsafe { naqm_evolve(o, e1.as_ptr(), 1.0, 1.0, out.as_mut_ptr()) },
        NaqmStatus::NotObservable
    );
    let ie1 = cs(r#"[[{"gen": "L", "index": 1, "weight": [0, 1]}]]"#);
    assert_eq!(
        unsafe { naqm_evolve(o, ie1.as_ptr(), -1.0, 1.0, out.as_mut_ptr()) },
        NaqmStatus::InvalidInput
    );

    let m = builtin("matrix:2");
    let mut t = zero();
    assert_eq!(unsafe { naqm_trace(m, basis(4, 0).as_ptr(), &mut t) }, NaqmStatus::Ok);
    assert_eq!(t, NaqmComplex { re: 0.5, im: 0.0 });
    unsafe {
        naqm_algebra_free(o);
        naqm_algebra_free(m);
        naqm_algebra_free(ptr::null_mut());
    }
}

#[test]
fn errors_are_thread_local() {
    let mut h = ptr::null_mut();
    assert_ne!(
        unsafe { naqm_algebra_builtin(cs("nothing").as_ptr(), &mut h) },
        NaqmStatus::Ok
    );
    std::thread::spawn(|| assert!(naqm_last_error().is_null()))
        .join()
        .unwrap();
    assert!(!naqm_last_error().is_null());
}
