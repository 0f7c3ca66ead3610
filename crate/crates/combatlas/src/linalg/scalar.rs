use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::inertia::{self, Inertia};
use super::matrix::SymmetricMatrix;
use super::LinalgError;

/// Exact rational scalar.
pub type Rational = BigRational;

/// Arithmetic backend carried by every matrix and vector container.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Rational,
    Float,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Rational => f.write_str("rational"),
            Backend::Float => f.write_str("float"),
        }
    }
}

/// Zero threshold for the float backend, relative to a scale.
///
/// The exact backend ignores it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub eps: f64,
}

impl Tolerance {
    pub const DEFAULT_EPS: f64 = 1e-9;

    pub fn new(eps: f64) -> Self {
        Tolerance { eps }
    }

    /// Absolute threshold for values measured against `scale`.
    pub fn threshold(&self, scale: f64) -> f64 {
        self.eps * scale
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { eps: Self::DEFAULT_EPS }
    }
}

/// Field operations shared by the exact and float backends.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + PartialOrd
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    const BACKEND: Backend;

    fn from_rational(r: &Rational) -> Self;
    fn from_int(v: i64) -> Self;
    /// Nearby value of the backend; exact backends round to a dyadic fraction.
    fn from_f64_approx(x: f64) -> Self;
    fn to_f64(&self) -> f64;
    /// Exact value, when the backend has one.
    fn to_rational(&self) -> Option<Rational>;
    fn abs(&self) -> Self;
    /// Sign, treating magnitudes at or below `threshold` as zero on the float backend.
    fn sign_with(&self, threshold: f64) -> Ordering;
    /// Equality up to `tol` relative to max(1, |a|, |b|) on the float backend.
    fn near(&self, other: &Self, tol: &Tolerance) -> bool;
    fn render(&self) -> String;
    fn inertia_with(m: &SymmetricMatrix<Self>, tol: &Tolerance, scale: f64) -> Inertia;

    fn sign(&self) -> Ordering {
        self.sign_with(0.0)
    }
}

impl Scalar for Rational {
    const BACKEND: Backend = Backend::Rational;

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn from_int(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_f64_approx(x: f64) -> Self {
        const DEN: i64 = 1 << 24;
        let num = (x * DEN as f64).round();
        Rational::new(BigInt::from(num as i64), BigInt::from(DEN))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn sign_with(&self, _threshold: f64) -> Ordering {
        self.cmp(&Rational::zero())
    }

    fn near(&self, other: &Self, _tol: &Tolerance) -> bool {
        self == other
    }

    fn render(&self) -> String {
        self.to_string()
    }

    fn inertia_with(m: &SymmetricMatrix<Self>, _tol: &Tolerance, _scale: f64) -> Inertia {
        inertia::exact_inertia(m)
    }
}

impl Scalar for f64 {
    const BACKEND: Backend = Backend::Float;

    fn from_rational(r: &Rational) -> Self {
        Scalar::to_f64(r)
    }

    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn from_f64_approx(x: f64) -> Self {
        x
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_rational(&self) -> Option<Rational> {
        None
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn sign_with(&self, threshold: f64) -> Ordering {
        if f64::abs(*self) <= threshold {
            Ordering::Equal
        } else if *self > 0.0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    fn near(&self, other: &Self, tol: &Tolerance) -> bool {
        let scale = 1.0f64.max(f64::abs(*self)).max(f64::abs(*other));
        f64::abs(self - other) <= tol.eps * scale
    }

    fn render(&self) -> String {
        format!("{self}")
    }

    fn inertia_with(m: &SymmetricMatrix<Self>, tol: &Tolerance, scale: f64) -> Inertia {
        inertia::float_inertia(m, tol, scale)
    }
}

/// Parses `p/q`, an integer, or a finite decimal such as `-0.125` exactly.
pub fn parse_rational(text: &str) -> Result<Rational, LinalgError> {
    let s = text.trim();
    let bad = || LinalgError::BadRational(text.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let int_digits = int.trim_start_matches(['-', '+']);
        if !int_digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{int_digits}{frac}");
        let mut num = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).map_err(|_| bad())?;
        if negative {
            num = -num;
        }
        let den = num_traits::pow(BigInt::from(10u32), frac.len());
        return Ok(Rational::new(num, den));
    }
    BigInt::from_str(s).map(Rational::from_integer).map_err(|_| bad())
}

pub fn rational(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}
