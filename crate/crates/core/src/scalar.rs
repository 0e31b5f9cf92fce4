//! Ground-field arithmetic.
//!
//! Two number systems are supported: double-precision complex numbers
//! ([`Complex64`]) compared up to a tolerance, and exact Gaussian rationals
//! ([`Exact`]) where every comparison is equality. Algebraic identities are
//! checked exactly; spectral work and exponentials use floats.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::matrix::Matrix;

/// Exact complex rational number.
pub type Exact = Complex<BigRational>;

/// Default equality tolerance for float mode.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Environment variable that overrides [`DEFAULT_TOL`].
pub const TOL_ENV: &str = "NAQM_TOL";

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True when arithmetic is exact and comparisons ignore the tolerance.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn i() -> Self;
    fn conj(&self) -> Self;
    fn from_real(x: f64) -> Self;
    fn from_parts(re: f64, im: f64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn to_c64(&self) -> Complex64;
    /// Modulus, as a float. Exact values are rounded.
    fn modulus(&self) -> f64;
    /// Square root of a nonnegative real value, if representable.
    fn real_sqrt(&self) -> Option<Self>;

    fn is_zero_within(&self, tol: f64) -> bool {
        if Self::EXACT {
            *self == Self::zero()
        } else {
            self.modulus() <= tol
        }
    }

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.clone() - other.clone()).is_zero_within(tol)
    }

    fn scale_real(&self, x: f64) -> Self {
        self.clone() * Self::from_real(x)
    }

    /// Matrix exponential, when the number system supports it.
    fn matrix_exp(_m: &Matrix<Self>) -> Option<Matrix<Self>> {
        None
    }
}

impl Scalar for Complex64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn i() -> Self {
        Complex64::new(0.0, 1.0)
    }
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn from_real(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn from_parts(re: f64, im: f64) -> Self {
        Complex64::new(re, im)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn modulus(&self) -> f64 {
        self.norm()
    }
    fn real_sqrt(&self) -> Option<Self> {
        if self.re >= 0.0 {
            Some(Complex64::new(self.re.sqrt(), 0.0))
        } else {
            None
        }
    }
    fn matrix_exp(m: &Matrix<Self>) -> Option<Matrix<Self>> {
        Some(crate::linalg::expm(m))
    }
}

fn rational_from_f64(x: f64) -> BigRational {
    // Every finite double is a dyadic rational, so this conversion is exact.
    BigRational::from_float(x).unwrap_or_else(BigRational::zero)
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

impl Scalar for Exact {
    const EXACT: bool = true;

    fn zero() -> Self {
        Complex::new(BigRational::zero(), BigRational::zero())
    }
    fn one() -> Self {
        Complex::new(BigRational::one(), BigRational::zero())
    }
    fn i() -> Self {
        Complex::new(BigRational::zero(), BigRational::one())
    }
    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }
    fn from_real(x: f64) -> Self {
        Complex::new(rational_from_f64(x), BigRational::zero())
    }
    fn from_parts(re: f64, im: f64) -> Self {
        Complex::new(rational_from_f64(re), rational_from_f64(im))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Complex::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
    fn modulus(&self) -> f64 {
        self.to_c64().norm()
    }
    fn real_sqrt(&self) -> Option<Self> {
        if !self.im.is_zero() {
            return None;
        }
        rational_sqrt(&self.re).map(|r| Complex::new(r, BigRational::zero()))
    }
}

/// Float tolerance taken from `NAQM_TOL` when set and parseable.
pub fn tolerance_from_env() -> f64 {
    std::env::var(TOL_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<f64>().ok())
        .filter(|t| t.is_finite() && *t > 0.0)
        .unwrap_or(DEFAULT_TOL)
}

/// Converts an exact value into a float value.
pub fn exact_to_float(x: &Exact) -> Complex64 {
    x.to_c64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_roundtrip_of_dyadic_values() {
        let x = Exact::from_parts(0.5, -0.25);
        assert_eq!(x.to_c64(), Complex64::new(0.5, -0.25));
        assert!(x.clone().approx_eq(&x, 0.0));
    }

    #[test]
    fn exact_sqrt_only_for_squares() {
        assert_eq!(Exact::from_ratio(9, 4).real_sqrt(), Some(Exact::from_ratio(3, 2)));
        assert_eq!(Exact::from_ratio(2, 1).real_sqrt(), None);
        assert_eq!(Exact::from_ratio(-1, 1).real_sqrt(), None);
    }

    #[test]
    fn float_comparison_uses_tolerance() {
        let a = Complex64::new(1.0, 0.0);
        let b = Complex64::new(1.0 + 1e-12, 0.0);
        assert!(a.approx_eq(&b, 1e-10));
        assert!(!a.approx_eq(&b, 1e-13));
    }

    #[test]
    fn exact_comparison_ignores_tolerance() {
        let a = Exact::from_ratio(1, 3);
        let b = Exact::from_ratio(1, 3) + Exact::from_ratio(1, 1_000_000_000);
        assert!(!a.approx_eq(&b, 1.0));
    }
}
