//! Dirichlet L-functions `L(s, χ) = Σ χ(n) n^{-s}` for `Re(s) > 1`.

use num_complex::Complex64;
use rayon::prelude::*;

use super::{pow_neg, zeta::zeta, BoundKind, Bounded, ComplexS, SeriesResult};
use crate::characters::CharacterTable;
use crate::error::Result;
use crate::reduce::{par_tree_sum, rounding_bound};

pub const MAX_L_TERMS: u64 = 50_000_000;

/// Principal characters go through `ζ(s) ∏_{p|q} (1 − p^{-s})`. Otherwise
/// the series is summed directly up to the `N` at which the Abel-summation
/// bound `φ(q)(1 + |s|/σ) N^{-σ}` falls below `tol/2`.
pub fn l_function(s: impl Into<ComplexS>, chi: &CharacterTable, tol: f64) -> Result<SeriesResult> {
    let s = s.into();
    s.require_sigma_above(1.0, "l_function")?;
    let z = s.to_complex();
    let q = chi.modulus();

    if chi.is_principal() {
        let zr = zeta(s, tol * 0.5)?;
        let mut acc = zr.bounded();
        for p in (2..=q).filter(|&p| q % p == 0 && (2..p).all(|d| p % d != 0)) {
            let factor = Complex64::new(1.0, 0.0) - pow_neg((p as f64).ln(), z);
            acc = acc * Bounded::exact(factor);
        }
        return Ok(acc.into_result(zr.truncation, BoundKind::Rigorous, tol));
    }

    let phi = (0..q).filter(|&n| chi.exponent(n).is_some()).count() as f64;
    let scale = phi * (1.0 + z.norm() / s.sigma);
    let wanted = (scale / (0.5 * tol)).powf(1.0 / s.sigma).ceil();
    let n = if wanted.is_finite() { (wanted as u64).clamp(q, MAX_L_TERMS) } else { MAX_L_TERMS };

    let terms: Vec<Complex64> = (1..=n)
        .into_par_iter()
        .map(|k| match chi.exponent(k) {
            None => Complex64::new(0.0, 0.0),
            Some(_) => chi.value(k) * pow_neg((k as f64).ln(), z),
        })
        .collect();
    let abs: Vec<f64> = terms.par_iter().map(|t| t.norm()).collect();
    let value = par_tree_sum(&terms);
    let tail = scale * (n as f64).powf(-s.sigma);
    let err = tail + rounding_bound(terms.len(), par_tree_sum(&abs));
    Ok(Bounded::new(value, err).into_result(n, BoundKind::Rigorous, tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::build_characters;
    use std::f64::consts::PI;

    const CATALAN: f64 = 0.915_965_594_177_219_015;

    #[test]
    fn principal_mod_one_is_zeta() {
        let chi = &build_characters(1).unwrap()[0];
        let r = l_function(2.0, chi, 1e-12).unwrap();
        assert!((r.value.re - PI * PI / 6.0).abs() < 1e-12);
    }

    #[test]
    fn catalan() {
        let chi = &build_characters(4).unwrap()[1];
        let r = l_function(2.0, chi, 1e-10).unwrap();
        assert!((r.value.re - CATALAN).abs() < 1e-10, "{}", r.value.re);
        assert!(r.converged);
    }

    #[test]
    fn mod_three_matches_partial_sum() {
        let chi = build_characters(3).unwrap().into_iter().find(|c| !c.is_principal()).unwrap();
        let r = l_function(2.0, &chi, 1e-11).unwrap();
        let partial: f64 = (1..=1_000_000u64).map(|n| chi.value(n).re / (n as f64 * n as f64)).sum();
        // alternating-block tail after 10^6 terms is below 10^{-12}
        assert!((r.value.re - partial).abs() < 1e-11);
        // L(2, χ_{-3}) = 0.7813024128964862...
        assert!((r.value.re - 0.781_302_412_896_486_3).abs() < 1e-11);
    }

    #[test]
    fn principal_mod_four() {
        let chi = &build_characters(4).unwrap()[0];
        let r = l_function(2.0, chi, 1e-12).unwrap();
        assert!((r.value.re - PI * PI / 8.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_sigma_at_most_one() {
        let chi = &build_characters(4).unwrap()[1];
        assert!(l_function(1.0, chi, 1e-9).is_err());
    }
}
