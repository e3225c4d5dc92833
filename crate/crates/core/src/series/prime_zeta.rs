//! Prime zeta `P(s) = Σ_p p^{-s}` and shifted prime zeta
//! `P(s, a) = Σ_p 1/(p^s + a)`.

use num_complex::Complex64;

use super::{pow_neg, BoundKind, Bounded, ComplexS, PrimeSums, SeriesResult};
use crate::error::{Error, Result};

impl PrimeSums {
    /// `P(s)`: explicit sum over the table plus the accelerated tail.
    pub fn prime_zeta(&self, s: ComplexS, tol: f64) -> Result<SeriesResult> {
        s.require_sigma_above(1.0, "prime_zeta")?;
        let z = s.to_complex();
        let head = self.bounded_sum(|_, lp| Ok(pow_neg(lp, z)))?;
        let tail = self.tail(z)?;
        let total = head + Bounded::new(tail.value, tail.err);
        Ok(total.into_result(self.largest(), BoundKind::Rigorous, tol))
    }

    /// `P(s, a)` for `|a| < 2`. `a = 0` returns [`Self::prime_zeta`] itself.
    pub fn shifted_prime_zeta(&self, s: ComplexS, a: Complex64, tol: f64) -> Result<SeriesResult> {
        s.require_sigma_above(1.0, "shifted_prime_zeta")?;
        if !(a.norm() < 2.0) {
            return Err(Error::Domain(format!("shifted prime zeta needs |a| < 2, got a = {a}")));
        }
        if a == Complex64::new(0.0, 0.0) {
            return self.prime_zeta(s, tol);
        }
        let z = s.to_complex();
        let head = self.bounded_sum(|_, lp| {
            let d = (z * lp).exp() + a;
            Ok(d.inv())
        })?;
        // Σ_{p>L} 1/(p^s + a) = Σ_{m≥1} (−a)^{m−1} Σ_{p>L} p^{−ms}
        let first = self.tail(z)?;
        let tail = if first.accelerated {
            let mut value = first.value;
            let mut err = first.err;
            let mut coeff = Complex64::new(1.0, 0.0);
            let l = self.limit() as f64;
            for m in 2..=256u32 {
                coeff *= -a;
                let x = s.sigma * f64::from(m);
                let rest = coeff.norm() * (l.ln() * (1.0 - x)).exp() / (x - 1.0)
                    / (1.0 - a.norm() / l.powf(s.sigma));
                if rest <= 0.25 * f64::EPSILON * (head.value.norm() + value.norm()) {
                    err += rest;
                    break;
                }
                let t = self.tail(z * f64::from(m))?;
                value += coeff * t.value;
                err += coeff.norm() * t.err;
            }
            Bounded::new(value, err)
        } else {
            // |p^s + a| ≥ p^σ − |a| ≥ p^σ (1 − |a|/(L+1)^σ)
            let shrink = 1.0 - a.norm() / ((self.limit() + 1) as f64).powf(s.sigma);
            Bounded::new(Complex64::new(0.0, 0.0), first.err / shrink)
        };
        Ok((head + tail).into_result(self.largest(), BoundKind::Rigorous, tol))
    }
}

pub fn prime_zeta(s: impl Into<ComplexS>, prime_limit: u64, tol: f64) -> Result<SeriesResult> {
    let s = s.into();
    s.require_sigma_above(1.0, "prime_zeta")?;
    PrimeSums::new(prime_limit)?.prime_zeta(s, tol)
}

pub fn shifted_prime_zeta(
    s: impl Into<ComplexS>,
    a: Complex64,
    prime_limit: u64,
    tol: f64,
) -> Result<SeriesResult> {
    let s = s.into();
    s.require_sigma_above(1.0, "shifted_prime_zeta")?;
    if !(a.norm() < 2.0) {
        return Err(Error::Domain(format!("shifted prime zeta needs |a| < 2, got a = {a}")));
    }
    PrimeSums::new(prime_limit)?.shifted_prime_zeta(s, a, tol)
}
