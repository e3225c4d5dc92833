//! The direct side: `Σ_{n ≤ N} w(n) f(n) / n^s` from sieve factorizations.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;

use super::{geometric_tail, pow_neg, BoundKind, ComplexS, SeriesResult};
use crate::error::{Error, Result};
use crate::functions::{mobius, omega, FnSpec};
use crate::reduce::{par_tree_sum, rounding_bound};
use crate::sieve::SpfSieve;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeriesWeight {
    /// `ω(n)`
    Omega,
    /// `ω(n)²`
    OmegaSq,
    /// `μ(n) ω(n)`
    MuOmega,
    /// `|μ(n)| ω(n)`
    AbsMuOmega,
}

impl SeriesWeight {
    pub const ALL: [SeriesWeight; 4] =
        [SeriesWeight::Omega, SeriesWeight::OmegaSq, SeriesWeight::MuOmega, SeriesWeight::AbsMuOmega];

    pub fn id(self) -> &'static str {
        match self {
            SeriesWeight::Omega => "omega",
            SeriesWeight::OmegaSq => "omega_sq",
            SeriesWeight::MuOmega => "mu_omega",
            SeriesWeight::AbsMuOmega => "absmu_omega",
        }
    }

    fn at(self, w: usize, mu: i8) -> f64 {
        let w = w as f64;
        match self {
            SeriesWeight::Omega => w,
            SeriesWeight::OmegaSq => w * w,
            SeriesWeight::MuOmega => f64::from(mu) * w,
            SeriesWeight::AbsMuOmega => f64::from(mu.abs()) * w,
        }
    }
}

impl fmt::Display for SeriesWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for SeriesWeight {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|w| w.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Domain(format!("unknown series weight {s:?}")))
    }
}

/// `Σ_{n ≤ N} w(n) f(n) n^{-s}`.
///
/// The tail bound is heuristic: the absolute sums over the last two blocks
/// `(N/b², N/b]` and `(N/b, N]` (`b = 10`, or `2` for small `N`) are
/// extrapolated geometrically. It is infinite for `N < 4`.
pub fn truncated_weighted_series(
    spec: &FnSpec,
    s: impl Into<ComplexS>,
    n: u64,
    weight: SeriesWeight,
    sieve: &SpfSieve,
) -> Result<SeriesResult> {
    let s = s.into();
    s.require_sigma_above(1.0, "truncated_weighted_series")?;
    if n == 0 {
        return Err(Error::Domain("truncation N must be at least 1".into()));
    }
    if n > sieve.limit() {
        return Err(Error::Capacity(format!(
            "truncation N = {n} exceeds the sieve limit {}",
            sieve.limit()
        )));
    }
    let z = s.to_complex();
    let terms: Vec<Complex64> = (1..=n)
        .into_par_iter()
        .map(|k| {
            let f = sieve.factorize(k)?;
            let w = weight.at(omega(&f), mobius(&f));
            if w == 0.0 {
                return Ok(Complex64::new(0.0, 0.0));
            }
            Ok(spec.eval_complex(&f)? * w * pow_neg((k as f64).ln(), z))
        })
        .collect::<Result<_>>()?;
    let abs: Vec<f64> = terms.par_iter().map(|t| t.norm()).collect();
    let value = par_tree_sum(&terms);

    let base = if n >= 100 { 10 } else { 2 };
    let tail = if n >= 4 {
        let b1 = (n / base) as usize;
        let b0 = (n / (base * base)) as usize;
        geometric_tail(par_tree_sum(&abs[b0..b1]), par_tree_sum(&abs[b1..]))
    } else {
        f64::INFINITY
    };
    let err = tail + rounding_bound(terms.len(), par_tree_sum(&abs));
    Ok(SeriesResult {
        value,
        truncation: n,
        tail_bound: err,
        converged: err.is_finite(),
        bound_kind: BoundKind::Heuristic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::Catalog;

    fn sieve() -> SpfSieve {
        SpfSieve::new(100_000).unwrap()
    }

    #[test]
    fn ten_terms_by_hand() {
        // ω: n=2..10 → 1,1,1,1,2,1,1,1,2
        let want = 1.0 / 4.0 + 1.0 / 9.0 + 1.0 / 16.0 + 1.0 / 25.0 + 2.0 / 36.0 + 1.0 / 49.0
            + 1.0 / 64.0 + 1.0 / 81.0 + 2.0 / 100.0;
        let r = truncated_weighted_series(&FnSpec::one(), 2.0, 10, SeriesWeight::Omega, &sieve()).unwrap();
        assert!((r.value.re - want).abs() < 1e-15);
        assert_eq!(r.bound_kind, BoundKind::Heuristic);
    }

    #[test]
    fn n_one_is_zero() {
        for w in SeriesWeight::ALL {
            let r = truncated_weighted_series(&FnSpec::builtin(Catalog::Liouville), 3.0, 1, w, &sieve()).unwrap();
            assert_eq!(r.value, Complex64::new(0.0, 0.0));
            assert!(!r.converged);
        }
    }

    #[test]
    fn weights_by_hand() {
        // n ≤ 6, s = 1.5 is irrelevant here: compare with explicit weights
        let s = sieve();
        let z = 2.0;
        let sum = |ws: [f64; 6]| -> f64 {
            ws.iter().enumerate().map(|(i, w)| w / ((i + 1) as f64).powf(z)).sum()
        };
        let cases = [
            (SeriesWeight::Omega, [0.0, 1.0, 1.0, 1.0, 1.0, 2.0]),
            (SeriesWeight::OmegaSq, [0.0, 1.0, 1.0, 1.0, 1.0, 4.0]),
            (SeriesWeight::MuOmega, [0.0, -1.0, -1.0, 0.0, -1.0, 2.0]),
            (SeriesWeight::AbsMuOmega, [0.0, 1.0, 1.0, 0.0, 1.0, 2.0]),
        ];
        for (w, ws) in cases {
            let r = truncated_weighted_series(&FnSpec::one(), z, 6, w, &s).unwrap();
            assert!((r.value.re - sum(ws)).abs() < 1e-15, "{w}");
        }
    }

    #[test]
    fn guards() {
        let s = sieve();
        assert!(matches!(
            truncated_weighted_series(&FnSpec::one(), 2.0, 100_001, SeriesWeight::Omega, &s),
            Err(Error::Capacity(_))
        ));
        assert!(matches!(
            truncated_weighted_series(&FnSpec::one(), 1.0, 10, SeriesWeight::Omega, &s),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn heuristic_tail_covers_extension() {
        let s = sieve();
        let a = truncated_weighted_series(&FnSpec::one(), 2.0, 10_000, SeriesWeight::Omega, &s).unwrap();
        let b = truncated_weighted_series(&FnSpec::one(), 2.0, 100_000, SeriesWeight::Omega, &s).unwrap();
        assert!((b.value - a.value).norm() <= a.tail_bound);
    }
}
