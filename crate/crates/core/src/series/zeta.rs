//! Riemann zeta for `Re(s) > 1` by Euler–Maclaurin summation.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::{pow_neg, BoundKind, ComplexS, SeriesResult};
use crate::error::Result;
use crate::reduce::{rounding_bound, tree_sum};

const MAX_CORRECTIONS: usize = 40;
const MAX_HEAD: u64 = 1 << 22;

/// `B_{2j} / (2j)!` for `j = 1..=MAX_CORRECTIONS + 1`, index `j - 1`.
fn bernoulli_coefficients() -> &'static [f64] {
    static COEFFS: OnceLock<Vec<f64>> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let n = 2 * (MAX_CORRECTIONS + 1);
        // Akiyama–Tanigawa
        let mut a: Vec<BigRational> = Vec::with_capacity(n + 1);
        let mut b = Vec::with_capacity(n + 1);
        for m in 0..=n {
            a.push(BigRational::new(BigInt::from(1), BigInt::from(m + 1)));
            for j in (1..=m).rev() {
                let diff = &a[j - 1] - &a[j];
                a[j - 1] = diff * BigRational::from_integer(BigInt::from(j));
            }
            b.push(a[0].clone());
        }
        let mut fact = BigRational::from_integer(BigInt::from(1));
        let mut out = Vec::with_capacity(MAX_CORRECTIONS + 1);
        for m in 1..=n {
            fact *= BigRational::from_integer(BigInt::from(m));
            if m % 2 == 0 {
                out.push((&b[m] / &fact).to_f64().unwrap_or(0.0));
            }
        }
        out
    })
}

/// Euler–Maclaurin with head length `n` and up to `MAX_CORRECTIONS`
/// corrections, stopping once the remainder bound drops below `target`.
/// Returns value, remainder bound and rounding bound.
fn euler_maclaurin(s: Complex64, n: u64, target: f64) -> (Complex64, f64, f64) {
    let head_terms: Vec<Complex64> = (1..n).map(|k| pow_neg((k as f64).ln(), s)).collect();
    let head = tree_sum(&head_terms);
    let abs_head: f64 = head_terms.iter().map(|z| z.norm()).sum();

    let nf = n as f64;
    let ln_n = nf.ln();
    let n_s = pow_neg(ln_n, s);
    let one = Complex64::new(1.0, 0.0);
    let mut tail = n_s * nf / (s - one) + n_s * 0.5;

    let coeffs = bernoulli_coefficients();
    let sigma = s.re;
    // rising = s (s+1) ... (s+2j-2), power = N^{-s-2j+1}
    let mut rising = s;
    let mut power = n_s / nf;
    let mut bound = f64::INFINITY;
    for j in 1..=MAX_CORRECTIONS {
        tail += rising * power * coeffs[j - 1];
        let jf = j as f64;
        let next_rising = rising * (s + (2.0 * jf - 1.0)) * (s + 2.0 * jf);
        let next_power = power / (nf * nf);
        bound = (coeffs[j] * next_rising.norm() * next_power.norm() * (s + 2.0 * jf + 1.0).norm()
            / (sigma + 2.0 * jf + 1.0))
            .abs();
        rising = next_rising;
        power = next_power;
        if bound <= target {
            break;
        }
    }
    let value = head + tail;
    let rounding = rounding_bound(n as usize, abs_head + tail.norm());
    (value, bound, rounding)
}

/// `ζ(s)` to absolute accuracy `tol`, for `Re(s) > 1`.
pub fn zeta(s: impl Into<ComplexS>, tol: f64) -> Result<SeriesResult> {
    let s = s.into();
    s.require_sigma_above(1.0, "zeta")?;
    let z = s.to_complex();
    let mut n = 10 + z.im.abs().ceil() as u64;
    loop {
        let (value, remainder, rounding) = euler_maclaurin(z, n, tol * 0.5);
        if remainder <= tol * 0.5 || n >= MAX_HEAD {
            let tail_bound = remainder + rounding;
            return Ok(SeriesResult {
                value,
                truncation: n,
                tail_bound,
                converged: tail_bound <= tol,
                bound_kind: BoundKind::Rigorous,
            });
        }
        n *= 2;
    }
}

/// Plain partial sum `Σ_{n ≤ N} n^{-s}` with the integral tail bound
/// `N^{1-σ}/(σ-1)`.
pub fn zeta_direct(s: impl Into<ComplexS>, n_terms: u64) -> Result<SeriesResult> {
    let s = s.into();
    s.require_sigma_above(1.0, "zeta_direct")?;
    let z = s.to_complex();
    let terms: Vec<Complex64> = (1..=n_terms.max(1)).map(|k| pow_neg((k as f64).ln(), z)).collect();
    let value = crate::reduce::par_tree_sum(&terms);
    let nf = n_terms.max(1) as f64;
    let tail_bound = nf.powf(1.0 - s.sigma) / (s.sigma - 1.0);
    Ok(SeriesResult {
        value,
        truncation: n_terms,
        tail_bound,
        converged: tail_bound.is_finite(),
        bound_kind: BoundKind::Rigorous,
    })
}

pub(crate) fn zeta_value(s: Complex64, tol: f64) -> Result<(Complex64, f64)> {
    let r = zeta(s, tol)?;
    Ok((r.value, r.tail_bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn bernoulli_known_values() {
        let c = bernoulli_coefficients();
        assert!((c[0] - 1.0 / 12.0).abs() < 1e-17);
        assert!((c[1] + 1.0 / 720.0).abs() < 1e-18);
        assert!((c[2] - 1.0 / 30240.0).abs() < 1e-20);
    }

    #[test]
    fn even_values() {
        let z2 = zeta(2.0, 1e-14).unwrap();
        assert!((z2.value.re - PI * PI / 6.0).abs() < 1e-14);
        assert!(z2.tail_bound <= 1e-14 && z2.converged);
        let z4 = zeta(4.0, 1e-14).unwrap();
        assert!((z4.value.re - PI.powi(4) / 90.0).abs() < 1e-14);
    }

    #[test]
    fn odd_value_against_direct_sum() {
        let em = zeta(3.0, 1e-13).unwrap();
        let direct = zeta_direct(3.0, 10_000_000).unwrap();
        assert!(direct.tail_bound < 1e-13);
        assert!((em.value - direct.value).norm() <= 1e-10);
        assert!((em.value.re - 1.202_056_903_159_594_2).abs() <= em.tail_bound);
    }

    #[test]
    fn complex_argument() {
        let z = zeta(ComplexS::new(2.0, 1.0), 1e-13).unwrap();
        let direct = zeta_direct(ComplexS::new(2.0, 1.0), 2_000_000).unwrap();
        assert!((z.value - direct.value).norm() < direct.tail_bound + 1e-12);
        // large imaginary part
        let z = zeta(ComplexS::new(1.5, 40.0), 1e-12).unwrap();
        assert!(z.converged);
    }

    #[test]
    fn rejects_sigma_at_most_one() {
        assert!(zeta(1.0, 1e-9).is_err());
        assert!(zeta(ComplexS::new(0.5, 14.0), 1e-9).is_err());
        assert!(zeta_direct(1.0, 10).is_err());
    }
}
