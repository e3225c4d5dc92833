//! Prime table for the closed-form side, and prime sums with tails.
//!
//! The tail `Σ_{p > L} p^{-z}` is evaluated through
//! `Σ_k μ(k)/k · log ζ_L(kz)`, where `ζ_L` is ζ with the Euler factors of
//! the primes `≤ L` removed. The series in `k` converges like `L^{-kσ}`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::{ln_1p, pow_neg, zeta::zeta_value};
use crate::error::{Error, Result};
use crate::reduce::{par_tree_sum, rounding_bound};

const MAX_MOBIUS_TERMS: u32 = 256;

/// Primes up to a limit, from a sieve of Eratosthenes.
#[derive(Clone, Debug)]
pub struct PrimeSums {
    limit: u64,
    primes: Vec<u64>,
    ln_primes: Vec<f64>,
}

/// Estimate of `Σ_{p > L} p^{-z}` with an absolute error bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrimeTail {
    pub value: Complex64,
    pub err: f64,
    /// `false` when the tail was only bounded, not evaluated (`value = 0`).
    pub accelerated: bool,
}

impl PrimeSums {
    pub fn new(limit: u64) -> Result<Self> {
        if limit < 2 || limit > u32::MAX as u64 {
            return Err(Error::Capacity(format!("prime limit {limit} outside [2, 2^32)")));
        }
        let n = limit as usize;
        let mut composite = vec![false; n + 1];
        let mut primes = Vec::new();
        for i in 2..=n {
            if composite[i] {
                continue;
            }
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
        let ln_primes = primes.iter().map(|&p| (p as f64).ln()).collect();
        Ok(Self { limit, primes, ln_primes })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Largest prime in the table.
    pub fn largest(&self) -> u64 {
        *self.primes.last().expect("table holds at least 2")
    }

    /// `Σ_{p ≤ L} g(p, ln p)` and `Σ |g|`, reduced deterministically.
    pub fn sum<G>(&self, g: G) -> Result<(Complex64, f64)>
    where
        G: Fn(u64, f64) -> Result<Complex64> + Sync,
    {
        let terms: Vec<Complex64> = self
            .primes
            .par_iter()
            .zip(&self.ln_primes)
            .map(|(&p, &lp)| g(p, lp))
            .collect::<Result<_>>()?;
        let abs: Vec<f64> = terms.par_iter().map(|z| z.norm()).collect();
        Ok((par_tree_sum(&terms), par_tree_sum(&abs)))
    }

    /// `Σ_{p ≤ L} g(p)` with a rounding bound on the result.
    pub fn bounded_sum<G>(&self, g: G) -> Result<super::Bounded>
    where
        G: Fn(u64, f64) -> Result<Complex64> + Sync,
    {
        let (value, abs) = self.sum(g)?;
        Ok(super::Bounded::new(value, rounding_bound(self.primes.len(), abs)))
    }

    /// Upper bound for `Σ_{n > L} n^{-x}`, which dominates `log ζ_L(x)`.
    fn integer_tail_bound(&self, x: f64) -> f64 {
        let l = self.limit as f64;
        (l.ln() * (1.0 - x)).exp() / (x - 1.0)
    }

    /// `log ζ_L(z)` on the branch that vanishes as `Re z → ∞`, with an
    /// error bound. The branch is fixed by reducing the imaginary part to
    /// `(−π, π]`, valid while `log ζ_L(Re z) < π`.
    fn log_zeta_tail(&self, z: Complex64) -> Result<(Complex64, f64)> {
        let (zv, zerr) = zeta_value(z, 1e-16)?;
        let lz = zv.ln();
        let terms: Vec<Complex64> = self
            .ln_primes
            .par_iter()
            .map(|&lp| ln_1p(-pow_neg(lp, z)))
            .collect();
        let abs: Vec<f64> = terms.par_iter().map(|t| t.norm()).collect();
        let s = par_tree_sum(&terms);
        let abs_s = par_tree_sum(&abs);
        let mut v = lz + s;
        if z.im != 0.0 {
            v.im -= 2.0 * PI * (v.im / (2.0 * PI)).round();
        } else {
            v.im = 0.0;
        }
        let err = 2.0 * zerr / zv.norm()
            + rounding_bound(self.primes.len(), abs_s + lz.norm())
            + 4.0 * f64::EPSILON * lz.norm();
        Ok((v, err))
    }

    /// `Σ_{p > L} p^{-z}` for `Re z > 1`.
    pub fn tail(&self, z: Complex64) -> Result<PrimeTail> {
        if !(z.re > 1.0) {
            return Err(Error::Domain(format!("prime tail needs Re(z) > 1, got {z}")));
        }
        let sigma = z.re;
        if z.im != 0.0 {
            let (lr, _) = self.log_zeta_tail(Complex64::new(sigma, 0.0))?;
            if lr.re >= 3.0 {
                let real = self.tail(Complex64::new(sigma, 0.0))?;
                return Ok(PrimeTail {
                    value: Complex64::new(0.0, 0.0),
                    err: real.value.re + real.err,
                    accelerated: false,
                });
            }
        }
        let mut value = Complex64::new(0.0, 0.0);
        let mut err = 0.0;
        let mut k = 1u32;
        loop {
            let kf = f64::from(k);
            let mu = mobius_small(k);
            if mu != 0 {
                let (l, e) = self.log_zeta_tail(z * kf)?;
                value += l * (f64::from(mu) / kf);
                err += e / kf;
            }
            k += 1;
            let x = sigma * f64::from(k);
            let rest = self.integer_tail_bound(x) / f64::from(k)
                / (1.0 - (self.limit as f64).powf(-sigma));
            if rest <= 0.25 * f64::EPSILON * value.norm() || rest < 1e-300 || k > MAX_MOBIUS_TERMS {
                err += rest;
                break;
            }
        }
        Ok(PrimeTail { value, err, accelerated: true })
    }
}

fn mobius_small(mut k: u32) -> i32 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= k {
        if k % p == 0 {
            k /= p;
            if k % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if k > 1 {
        sign = -sign;
    }
    sign
}
