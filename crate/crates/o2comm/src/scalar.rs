//! Scalar backends: exact rational-complex and double-precision complex.
//!
//! The exact backend is closed under `+`, `*` and conjugation with no
//! rounding; it is the default for identity suites. The double backend is
//! for large truncation levels where exact coefficients would blow up.

use num::bigint::BigInt;
use num::complex::Complex;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact complex scalar: Gaussian rational.
pub type CRat = Complex<BigRational>;
/// Double-precision complex scalar.
pub type C64 = Complex<f64>;

/// Which scalar backend an element (and all its blocks) lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Backend {
    Exact,
    F64,
}

impl std::fmt::Display for Backend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Backend::Exact => write!(f, "exact"),
            Backend::F64 => write!(f, "double"),
        }
    }
}

/// A tagged scalar value, matching one of the two backends.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(CRat),
    F64(C64),
}

impl Scalar {
    pub fn backend(&self) -> Backend {
        match self {
            Scalar::Exact(_) => Backend::Exact,
            Scalar::F64(_) => Backend::F64,
        }
    }

    /// Integer scalar on the given backend.
    pub fn from_integer(n: i64, backend: Backend) -> Self {
        match backend {
            Backend::Exact => Scalar::Exact(CRat::new(
                BigRational::from_integer(BigInt::from(n)),
                BigRational::zero(),
            )),
            Backend::F64 => Scalar::F64(C64::new(n as f64, 0.0)),
        }
    }

    /// Real rational scalar `p/q` on the given backend (rounded on `F64`).
    pub fn from_ratio(p: i64, q: i64, backend: Backend) -> Self {
        assert!(q != 0, "zero denominator");
        match backend {
            Backend::Exact => Scalar::Exact(CRat::new(
                BigRational::new(BigInt::from(p), BigInt::from(q)),
                BigRational::zero(),
            )),
            Backend::F64 => Scalar::F64(C64::new(p as f64 / q as f64, 0.0)),
        }
    }

    /// Real scalar from an exact rational, converted if the backend is `F64`.
    pub fn from_rational(r: &BigRational, backend: Backend) -> Self {
        match backend {
            Backend::Exact => Scalar::Exact(CRat::new(r.clone(), BigRational::zero())),
            Backend::F64 => Scalar::F64(C64::new(rat_to_f64(r), 0.0)),
        }
    }

    pub fn from_complex_rational(re: &BigRational, im: &BigRational, backend: Backend) -> Self {
        match backend {
            Backend::Exact => Scalar::Exact(CRat::new(re.clone(), im.clone())),
            Backend::F64 => Scalar::F64(C64::new(rat_to_f64(re), rat_to_f64(im))),
        }
    }

    pub fn zero(backend: Backend) -> Self {
        Self::from_integer(0, backend)
    }

    pub fn one(backend: Backend) -> Self {
        Self::from_integer(1, backend)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(z) => z.is_zero(),
            Scalar::F64(z) => z.re == 0.0 && z.im == 0.0,
        }
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Ok(Scalar::Exact(a * b)),
            (Scalar::F64(a), Scalar::F64(b)) => Ok(Scalar::F64(a * b)),
            _ => Err(Error::BackendMismatch),
        }
    }
}

/// Arithmetic interface shared by the two concrete entry types. Blocks are
/// stored as homogeneous matrices over one of these.
pub trait Entry: Clone + PartialEq + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;
    fn scale_rational(&self, r: &BigRational) -> Self;
    /// `|z|^2` as an outward-rounded f64 pair `(lo, hi)`.
    fn abs_sq_bounds(&self) -> (f64, f64);
    /// Nearest double-precision image (for power-iteration starts).
    fn to_c64(&self) -> C64;
    fn backend() -> Backend;
}

impl Entry for CRat {
    fn zero() -> Self {
        CRat::new(BigRational::zero(), BigRational::zero())
    }
    fn one() -> Self {
        CRat::new(BigRational::one(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn conj(&self) -> Self {
        CRat::new(self.re.clone(), -self.im.clone())
    }
    fn scale_rational(&self, r: &BigRational) -> Self {
        CRat::new(&self.re * r, &self.im * r)
    }
    fn abs_sq_bounds(&self) -> (f64, f64) {
        let sq = &self.re * &self.re + &self.im * &self.im;
        (rat_to_f64_down(&sq), rat_to_f64_up(&sq))
    }
    fn to_c64(&self) -> C64 {
        C64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
    fn backend() -> Backend {
        Backend::Exact
    }
}

impl Entry for C64 {
    fn zero() -> Self {
        C64::new(0.0, 0.0)
    }
    fn one() -> Self {
        C64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        C64::new(self.re, -self.im)
    }
    fn scale_rational(&self, r: &BigRational) -> Self {
        let f = rat_to_f64(r);
        C64::new(self.re * f, self.im * f)
    }
    fn abs_sq_bounds(&self) -> (f64, f64) {
        let lo = add_down(mul_down(self.re, self.re), mul_down(self.im, self.im)).max(0.0);
        let hi = add_up(mul_up(self.re, self.re), mul_up(self.im, self.im));
        (lo, hi)
    }
    fn to_c64(&self) -> C64 {
        *self
    }
    fn backend() -> Backend {
        Backend::F64
    }
}

// ---------------------------------------------------------------------------
// Directed rounding helpers. Hardware rounding modes are not portable, so
// every floating operation on a certified bound is followed by a one-ulp
// outward nudge.
// ---------------------------------------------------------------------------

pub fn next_up(x: f64) -> f64 {
    x.next_up()
}

pub fn next_down(x: f64) -> f64 {
    x.next_down()
}

pub fn add_up(a: f64, b: f64) -> f64 {
    (a + b).next_up()
}

pub fn add_down(a: f64, b: f64) -> f64 {
    (a + b).next_down()
}

pub fn sub_up(a: f64, b: f64) -> f64 {
    (a - b).next_up()
}

pub fn sub_down(a: f64, b: f64) -> f64 {
    (a - b).next_down()
}

pub fn mul_up(a: f64, b: f64) -> f64 {
    (a * b).next_up()
}

pub fn mul_down(a: f64, b: f64) -> f64 {
    (a * b).next_down()
}

pub fn div_up(a: f64, b: f64) -> f64 {
    (a / b).next_up()
}

pub fn div_down(a: f64, b: f64) -> f64 {
    (a / b).next_down()
}

pub fn sqrt_up(x: f64) -> f64 {
    x.sqrt().next_up()
}

pub fn sqrt_down(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x.sqrt().next_down().max(0.0)
    }
}

/// Nearest f64 image of an exact rational (no soundness guarantee).
pub fn rat_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fall back to a quotient of clamped parts; only reachable for
        // magnitudes far outside anything this crate produces.
        let n = r.numer().to_f64().unwrap_or(f64::MAX);
        let d = r.denom().to_f64().unwrap_or(f64::MAX);
        n / d
    })
}

fn f64_cmp_rational(x: f64, r: &BigRational) -> std::cmp::Ordering {
    let xr = BigRational::from_float(x).expect("finite float");
    xr.cmp(r)
}

/// Largest f64 that is `<=` the exact rational.
pub fn rat_to_f64_down(r: &BigRational) -> f64 {
    let mut x = rat_to_f64(r);
    if !x.is_finite() {
        return if r.is_negative() { f64::MIN } else { f64::MAX };
    }
    while f64_cmp_rational(x, r) == std::cmp::Ordering::Greater {
        x = x.next_down();
    }
    x
}

/// Smallest f64 that is `>=` the exact rational.
pub fn rat_to_f64_up(r: &BigRational) -> f64 {
    let mut x = rat_to_f64(r);
    if !x.is_finite() {
        return if r.is_negative() { f64::MIN } else { f64::MAX };
    }
    while f64_cmp_rational(x, r) == std::cmp::Ordering::Less {
        x = x.next_up();
    }
    x
}

/// Exact rational image of a finite f64.
pub fn f64_to_rat(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::FromPrimitive;

    #[test]
    fn directed_rational_conversion_brackets() {
        let third = BigRational::new(BigInt::from(1), BigInt::from(3));
        let lo = rat_to_f64_down(&third);
        let hi = rat_to_f64_up(&third);
        assert!(f64_to_rat(lo) <= third && third <= f64_to_rat(hi));
        assert!(hi - lo <= f64::EPSILON);

        let exact = BigRational::from_f64(0.625).unwrap();
        assert_eq!(rat_to_f64_down(&exact), 0.625);
        assert_eq!(rat_to_f64_up(&exact), 0.625);
    }

    #[test]
    fn exact_scalar_closure() {
        let a = Scalar::from_ratio(1, 3, Backend::Exact);
        let b = Scalar::from_ratio(1, 7, Backend::Exact);
        let c = a.mul(&b).unwrap();
        match c {
            Scalar::Exact(z) => {
                assert_eq!(z.re, BigRational::new(BigInt::from(1), BigInt::from(21)));
                assert!(z.im.is_zero());
            }
            _ => panic!("backend changed"),
        }
    }

    #[test]
    fn mixed_backend_rejected() {
        let a = Scalar::from_integer(1, Backend::Exact);
        let b = Scalar::from_integer(1, Backend::F64);
        assert!(matches!(a.mul(&b), Err(Error::BackendMismatch)));
    }
}
