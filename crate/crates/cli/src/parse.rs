//! Argument parsing beyond what clap handles: complex numbers and function names.

use std::sync::Arc;

use num_complex::Complex64;
use omega_sums::{build_characters, CharacterTable, Catalog, Exponent, FnSpec};

/// Parses `2`, `-1.5`, `2+1i`, `0.5-3i`, `i`, `-2i`.
pub fn complex(text: &str) -> Result<Complex64, String> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("cannot parse {text:?} as a complex number");
    let real = |x: &str| x.parse::<f64>().map_err(|_| bad());
    let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) else {
        return Ok(Complex64::new(real(&t)?, 0.0));
    };
    let split = body
        .char_indices()
        .skip(1)
        .filter(|&(i, c)| (c == '+' || c == '-') && !matches!(body.as_bytes()[i - 1], b'e' | b'E'))
        .map(|(i, _)| i)
        .last();
    let (re, im) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => real(x)?,
    };
    Ok(Complex64::new(real(re)?, im))
}

/// Integer exponents stay exact; anything else becomes complex.
pub fn exponent(text: &str) -> Result<Exponent, String> {
    if let Ok(k) = text.trim().parse::<i64>() {
        return Ok(Exponent::Int(k));
    }
    complex(text).map(Exponent::Complex)
}

pub fn character(modulus: u64, index: usize) -> Result<Arc<CharacterTable>, String> {
    let mut chars = build_characters(modulus).map_err(|e| e.to_string())?;
    if index >= chars.len() {
        return Err(format!("mod {modulus} has {} characters, index {index} is out of range", chars.len()));
    }
    Ok(Arc::new(chars.swap_remove(index)))
}

pub const FUNCTION_NAMES: &str = "one, power, inverse-power, mobius, abs-mobius, liouville, totient, \
jordan, psi, sigma, divisor-count, divisor-count-square, divisor-count-squared, two-omega, chi";

/// A catalog function by name. `k` feeds the parametrised entries.
pub fn function(
    name: &str,
    k: Option<Exponent>,
    chi: impl FnOnce() -> Result<Arc<CharacterTable>, String>,
) -> Result<FnSpec, String> {
    let k_or = |default: i64| k.unwrap_or(Exponent::Int(default));
    let catalog = match name.to_ascii_lowercase().as_str() {
        "one" | "1" => Catalog::One,
        "power" | "id" => Catalog::Power(k_or(1)),
        "inverse-power" => Catalog::InversePower(k_or(1)),
        "mobius" | "mu" => Catalog::Mobius,
        "abs-mobius" | "absmu" => Catalog::AbsMobius,
        "liouville" | "lambda" => Catalog::Liouville,
        "totient" | "phi" => Catalog::Totient,
        "jordan" => Catalog::Jordan(k.ok_or("jordan needs --k")?),
        "psi" => Catalog::DedekindPsi,
        "sigma" => Catalog::Sigma(k_or(1)),
        "divisor-count" | "d" => Catalog::DivisorCount,
        "divisor-count-square" => Catalog::DivisorCountOfSquare,
        "divisor-count-squared" => Catalog::DivisorCountSquared,
        "two-omega" => Catalog::TwoPowOmega,
        "chi" => Catalog::Character(chi()?),
        _ => return Err(format!("unknown function {name:?}; expected one of: {FUNCTION_NAMES}")),
    };
    Ok(FnSpec::builtin(catalog))
}
