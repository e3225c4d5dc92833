//! Euler-factor coefficients `a_p = Σ_{m ≥ 1} f(p^m) p^{-ms}`.

use num_complex::Complex64;

use super::ComplexS;
use crate::error::{Error, Result};
use crate::functions::FnSpec;

pub const MAX_AP_TERMS: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct APCoefficient {
    pub p: u64,
    pub value: Complex64,
    /// Bound on the truncation error of `value`.
    pub err: f64,
}

/// `a_p` for a multiplicative `f`. Completely multiplicative functions use
/// the geometric closed form `x/(1 − x)` with `x = f(p)/p^s`; anything else
/// is summed until the relative term size drops below machine epsilon.
/// Fails on divergence and when `a_p = −1`.
pub fn compute_ap(spec: &FnSpec, p: u64, s: impl Into<ComplexS>, tol: f64) -> Result<APCoefficient> {
    let s = s.into();
    let z = s.to_complex();
    let lp = (p as f64).ln();
    let one = Complex64::new(1.0, 0.0);
    let (value, err) = if spec.is_completely_multiplicative() {
        let x = spec.prime_power_complex(p, 1)? * super::pow_neg(lp, z);
        if !(x.norm() < 1.0) {
            return Err(Error::Domain(format!(
                "a_{p} diverges at s = {s}: |f(p)/p^s| = {} ≥ 1",
                x.norm()
            )));
        }
        (x / (one - x), 0.0)
    } else {
        sum_prime_power_series(spec, p, z, lp, tol)?
    };
    if (one + value).norm() <= 64.0 * f64::EPSILON * (1.0 + value.norm()) {
        return Err(Error::Singular(format!("a_{p} = -1 at s = {s}")));
    }
    Ok(APCoefficient { p, value, err })
}

fn sum_prime_power_series(
    spec: &FnSpec,
    p: u64,
    z: Complex64,
    lp: f64,
    tol: f64,
) -> Result<(Complex64, f64)> {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut prev = f64::NAN;
    let mut last = f64::INFINITY;
    for m in 1..=MAX_AP_TERMS {
        let term = spec.prime_power_complex(p, m)? * super::pow_neg(lp * f64::from(m), z);
        sum += term;
        let size = term.norm();
        if m >= 2 && size <= f64::EPSILON * sum.norm() {
            return Ok((sum, f64::EPSILON * sum.norm()));
        }
        prev = last;
        last = size;
    }
    let ratio = last / prev;
    if ratio.is_finite() && ratio < 1.0 {
        let err = last * ratio / (1.0 - ratio);
        if err <= tol {
            return Ok((sum, err));
        }
    }
    Err(Error::Domain(format!(
        "a_{p} does not converge within {MAX_AP_TERMS} terms (term ratio {ratio})"
    )))
}
