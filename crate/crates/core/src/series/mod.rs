//! Dirichlet series weighted by ω(n) and ω(n)².
//!
//! Two independent routes per identity: [`oracle`] sums `w(n)f(n)/n^s`
//! over `n ≤ N` from sieve factorizations, while [`closed`] assembles the
//! closed form from ζ, prime zeta, shifted prime zeta, L-functions and Euler
//! products over a separately generated prime table.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub mod ap;
pub mod closed;
pub mod lfunc;
pub mod oracle;
pub mod prime_zeta;
pub mod primes;
pub mod zeta;

pub use ap::{compute_ap, APCoefficient};
pub use closed::{closed_form_series, SeriesEngine, SeriesIdentity};
pub use lfunc::l_function;
pub use oracle::{truncated_weighted_series, SeriesWeight};
pub use prime_zeta::{prime_zeta, shifted_prime_zeta};
pub use primes::PrimeSums;
pub use zeta::{zeta, zeta_direct};

/// A point `s = σ + it`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexS {
    pub sigma: f64,
    pub t: f64,
}

impl ComplexS {
    pub fn new(sigma: f64, t: f64) -> Self {
        Self { sigma, t }
    }

    pub fn real(sigma: f64) -> Self {
        Self { sigma, t: 0.0 }
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.sigma, self.t)
    }

    pub fn is_real(self) -> bool {
        self.t == 0.0
    }

    /// Errors unless `σ > floor`.
    pub fn require_sigma_above(self, floor: f64, what: &str) -> Result<()> {
        if self.sigma.is_finite() && self.t.is_finite() && self.sigma > floor {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "{what} needs Re(s) > {floor}, got s = {self}"
            )))
        }
    }
}

impl From<f64> for ComplexS {
    fn from(sigma: f64) -> Self {
        Self::real(sigma)
    }
}

impl From<Complex64> for ComplexS {
    fn from(z: Complex64) -> Self {
        Self::new(z.re, z.im)
    }
}

impl fmt::Display for ComplexS {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.t == 0.0 {
            write!(f, "{}", self.sigma)
        } else {
            write!(f, "{}{:+}i", self.sigma, self.t)
        }
    }
}

/// How a [`SeriesResult::tail_bound`] was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    /// Provable up to floating-point rounding.
    Rigorous,
    /// Extrapolated from the decay of the last computed blocks.
    Heuristic,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesResult {
    pub value: Complex64,
    /// Last `n` (or largest prime) included explicitly.
    pub truncation: u64,
    /// Estimated bound on `|value − exact|`; infinite when unknown.
    pub tail_bound: f64,
    pub converged: bool,
    pub bound_kind: BoundKind,
}

impl SeriesResult {
    pub(crate) fn bounded(&self) -> Bounded {
        Bounded::new(self.value, self.tail_bound)
    }
}

/// A complex value with an absolute error bound, propagated through
/// arithmetic to first order plus the second-order cross term.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bounded {
    pub value: Complex64,
    pub err: f64,
}

impl Bounded {
    pub fn new(value: Complex64, err: f64) -> Self {
        Self { value, err }
    }

    pub fn exact(value: Complex64) -> Self {
        Self { value, err: 0.0 }
    }

    pub fn real(x: f64) -> Self {
        Self::exact(Complex64::new(x, 0.0))
    }

    pub fn scale(self, c: f64) -> Self {
        Self { value: self.value * c, err: self.err * c.abs() }
    }

    pub fn powu(self, k: u32) -> Self {
        (0..k).fold(Self::real(1.0), |acc, _| acc * self)
    }

    /// Errors when the divisor's bound does not exclude zero.
    pub fn checked_div(self, rhs: Self) -> Result<Self> {
        let b = rhs.value.norm();
        if b <= rhs.err || b == 0.0 {
            return Err(Error::Singular("division by a value indistinguishable from 0".into()));
        }
        let value = self.value / rhs.value;
        let err = (self.err * b + self.value.norm() * rhs.err) / (b * (b - rhs.err))
            + 4.0 * f64::EPSILON * value.norm();
        Ok(Self { value, err })
    }

    pub fn into_result(self, truncation: u64, bound_kind: BoundKind, tol: f64) -> SeriesResult {
        SeriesResult {
            value: self.value,
            truncation,
            tail_bound: self.err,
            converged: self.err.is_finite() && self.err <= tol,
            bound_kind,
        }
    }
}

impl Add for Bounded {
    type Output = Bounded;
    fn add(self, rhs: Self) -> Self {
        let value = self.value + rhs.value;
        Self { value, err: self.err + rhs.err + 2.0 * f64::EPSILON * value.norm() }
    }
}

impl Sub for Bounded {
    type Output = Bounded;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for Bounded {
    type Output = Bounded;
    fn neg(self) -> Self {
        Self { value: -self.value, err: self.err }
    }
}

impl Mul for Bounded {
    type Output = Bounded;
    fn mul(self, rhs: Self) -> Self {
        let value = self.value * rhs.value;
        let err = self.value.norm() * rhs.err
            + rhs.value.norm() * self.err
            + self.err * rhs.err
            + 4.0 * f64::EPSILON * value.norm();
        Self { value, err }
    }
}

/// Heuristic tail from two consecutive block sums of absolute values,
/// `d0` then `d1`: extrapolates their ratio geometrically and doubles the
/// result. Infinite when the blocks do not decay.
pub(crate) fn geometric_tail(d0: f64, d1: f64) -> f64 {
    if d1 == 0.0 {
        return 0.0;
    }
    let rho = d1 / d0;
    if !(rho < 1.0) {
        return f64::INFINITY;
    }
    2.0 * d1 * rho / (1.0 - rho)
}

/// `ln(1 + u)` accurate for small `|u|`, principal branch.
pub(crate) fn ln_1p(u: Complex64) -> Complex64 {
    let re = 0.5 * (2.0 * u.re + u.norm_sqr()).ln_1p();
    let im = u.im.atan2(1.0 + u.re);
    Complex64::new(re, im)
}

/// `x^{-s}` for `x > 0` given `ln x`.
pub(crate) fn pow_neg(ln_x: f64, s: Complex64) -> Complex64 {
    let mag = (-s.re * ln_x).exp();
    if s.im == 0.0 {
        Complex64::new(mag, 0.0)
    } else {
        Complex64::from_polar(mag, -s.im * ln_x)
    }
}
