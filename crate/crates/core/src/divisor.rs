//! Exact divisor-sum identities weighted by ω.
//!
//! Left sides are always computed by enumerating divisors; right sides come
//! from the closed forms over the distinct primes of `n`. The two paths
//! share nothing beyond [`ExactValue`] arithmetic and function evaluation.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::ExactValue;
use crate::functions::{divisors, jordan_totient, mobius, omega, FnSpec};
use crate::sieve::{FactoredInteger, SpfSieve};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DivisorIdentity {
    /// `Σ μ(d)ω(d)f(d) = ∏(1−f(p))·Σ f(p)/(f(p)−1)`
    Finite1,
    /// `Σ μ(d)ω(d)f(d) = (Σ μ(d)f(d))·Σ f(p)/(f(p)−1)`
    FiniteCor1,
    /// `Σ |μ(d)|ω(d)f(d) = ∏(1+f(p))·Σ f(p)/(1+f(p))`
    Finite2,
    /// `Σ |μ(d)|ω(d)f(d) = (Σ |μ(d)|f(d))·Σ f(p)/(1+f(p))`
    Finite2Cor,
    /// `Σ |μ(d)|ω(d) = ω(n)·2^{ω(n)−1}`
    Finite4,
    /// `Σ μ(d)ω(d)(n/d)^k = J_k(n)·Σ 1/(1−p^k)`
    Finite6,
    /// `Σ |μ(d)|ω(d)(n/d)^k = (J_{2k}(n)/J_k(n))·Σ 1/(1+p^k)`
    Finite9,
    /// `Σ |μ(d)|ω(d)(n/d) = ψ(n)·Σ 1/(1+p)`
    PsiCor,
    /// `Σ ω(d)d^k = (J_{2k}(n)/J_k(n))·Σ p^k/(1+p^k)`, squarefree `n`
    SquarefreeDk,
    /// `Σ μ(d)f(d) = ∏(1−f(p))`
    MultApostol,
}

impl DivisorIdentity {
    pub const ALL: [DivisorIdentity; 10] = [
        Self::Finite1,
        Self::FiniteCor1,
        Self::Finite2,
        Self::Finite2Cor,
        Self::Finite4,
        Self::Finite6,
        Self::Finite9,
        Self::PsiCor,
        Self::SquarefreeDk,
        Self::MultApostol,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Self::Finite1 => "finite1",
            Self::FiniteCor1 => "finitecor1",
            Self::Finite2 => "finite2",
            Self::Finite2Cor => "finite2cor",
            Self::Finite4 => "finite4",
            Self::Finite6 => "finite6",
            Self::Finite9 => "finite9",
            Self::PsiCor => "psiCor",
            Self::SquarefreeDk => "squarefreeDk",
            Self::MultApostol => "multApostol",
        }
    }

    /// Whether the identity takes the user's `f`; the rest fix their own.
    pub fn uses_spec(self) -> bool {
        matches!(
            self,
            Self::Finite1 | Self::FiniteCor1 | Self::Finite2 | Self::Finite2Cor | Self::MultApostol
        )
    }

    pub fn needs_k(self) -> bool {
        matches!(self, Self::Finite6 | Self::Finite9 | Self::SquarefreeDk)
    }
}

impl fmt::Display for DivisorIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for DivisorIdentity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|i| i.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Domain(format!("unknown divisor identity {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DivisorWeight {
    MuOmega,
    AbsMuOmega,
    Mu,
    AbsMu,
    Omega,
    None,
}

impl DivisorWeight {
    pub fn at(self, d: &FactoredInteger) -> i64 {
        let w = omega(d) as i64;
        let mu = i64::from(mobius(d));
        match self {
            Self::MuOmega => mu * w,
            Self::AbsMuOmega => mu.abs() * w,
            Self::Mu => mu,
            Self::AbsMu => mu.abs(),
            Self::Omega => w,
            Self::None => 1,
        }
    }
}

/// `Σ_{d|n} w(d) f(d)` by full divisor enumeration.
pub fn divisor_sum(n: &FactoredInteger, spec: &FnSpec, weight: DivisorWeight) -> Result<ExactValue> {
    divisors(n).iter().try_fold(ExactValue::zero(), |acc, d| {
        let w = weight.at(d);
        if w == 0 {
            return Ok(acc);
        }
        Ok(&acc + &(&ExactValue::from_int(w) * &spec.eval_exact(d)?))
    })
}

/// `Σ_{d|n} w(d) f(n/d)` by full divisor enumeration.
pub fn divisor_convolution(
    n: &FactoredInteger,
    spec: &FnSpec,
    weight: DivisorWeight,
) -> Result<ExactValue> {
    divisors(n).iter().try_fold(ExactValue::zero(), |acc, d| {
        let w = weight.at(d);
        if w == 0 {
            return Ok(acc);
        }
        let cofactor = complement(n, d);
        Ok(&acc + &(&ExactValue::from_int(w) * &spec.eval_exact(&cofactor)?))
    })
}

fn complement(n: &FactoredInteger, d: &FactoredInteger) -> FactoredInteger {
    let factors = n
        .factors()
        .iter()
        .filter_map(|&(p, a)| {
            let b = d.factors().iter().find(|&&(q, _)| q == p).map_or(0, |&(_, b)| b);
            (a > b).then_some((p, a - b))
        })
        .collect();
    FactoredInteger::from_factors(factors).expect("cofactor of a divisor")
}

fn require_k(id: DivisorIdentity, k: Option<i64>) -> Result<i64> {
    k.ok_or_else(|| Error::Precondition(format!("{id} needs an integer k")))
}

fn jordan_k(k: i64, n: &FactoredInteger) -> Result<ExactValue> {
    let k = u32::try_from(k)
        .map_err(|_| Error::Precondition(format!("Jordan totient needs k ≥ 0, got {k}")))?;
    Ok(jordan_totient(k, n))
}

fn power_spec(k: i64) -> FnSpec {
    FnSpec::builtin(crate::functions::Catalog::Power(crate::functions::Exponent::Int(k)))
}

/// Left side of an identity, by divisor enumeration.
pub fn lhs(id: DivisorIdentity, n: &FactoredInteger, spec: &FnSpec, k: Option<i64>) -> Result<ExactValue> {
    use DivisorIdentity::*;
    match id {
        Finite1 | FiniteCor1 => divisor_sum(n, spec, DivisorWeight::MuOmega),
        Finite2 | Finite2Cor => divisor_sum(n, spec, DivisorWeight::AbsMuOmega),
        Finite4 => divisor_sum(n, &FnSpec::one(), DivisorWeight::AbsMuOmega),
        Finite6 => divisor_convolution(n, &power_spec(require_k(id, k)?), DivisorWeight::MuOmega),
        Finite9 => divisor_convolution(n, &power_spec(require_k(id, k)?), DivisorWeight::AbsMuOmega),
        PsiCor => divisor_convolution(n, &power_spec(1), DivisorWeight::AbsMuOmega),
        SquarefreeDk => divisor_sum(n, &power_spec(require_k(id, k)?), DivisorWeight::Omega),
        MultApostol => divisor_sum(n, spec, DivisorWeight::Mu),
    }
}

/// `Σ_{p|n} g(p)`, zero for `n = 1`.
fn prime_sum(n: &FactoredInteger, mut g: impl FnMut(u64) -> Result<ExactValue>) -> Result<ExactValue> {
    n.primes().try_fold(ExactValue::zero(), |acc, p| Ok(&acc + &g(p)?))
}

fn prime_product(n: &FactoredInteger, mut g: impl FnMut(u64) -> Result<ExactValue>) -> Result<ExactValue> {
    n.primes().try_fold(ExactValue::one(), |acc, p| Ok(&acc * &g(p)?))
}

fn ratio(num: ExactValue, den: ExactValue, what: impl FnOnce() -> String) -> Result<ExactValue> {
    num.checked_div(&den).ok_or_else(|| Error::Singular(what()))
}

/// Right side of an identity, from the closed form over the primes of `n`.
pub fn closed_form(id: DivisorIdentity, n: &FactoredInteger, spec: &FnSpec, k: Option<i64>) -> Result<ExactValue> {
    use DivisorIdentity::*;
    let one = ExactValue::one();
    let f_at = |p: u64| spec.prime_power_exact(p, 1);
    match id {
        Finite1 | FiniteCor1 => {
            let s = prime_sum(n, |p| {
                let fp = f_at(p)?;
                ratio(fp.clone(), &fp - &one, || format!("f({p}) = 1"))
            })?;
            let front = if id == Finite1 {
                prime_product(n, |p| Ok(&one - &f_at(p)?))?
            } else {
                divisor_sum(n, spec, DivisorWeight::Mu)?
            };
            Ok(&front * &s)
        }
        Finite2 | Finite2Cor => {
            let s = prime_sum(n, |p| {
                let fp = f_at(p)?;
                ratio(fp.clone(), &fp + &one, || format!("f({p}) = -1"))
            })?;
            let front = if id == Finite2 {
                prime_product(n, |p| Ok(&one + &f_at(p)?))?
            } else {
                divisor_sum(n, spec, DivisorWeight::AbsMu)?
            };
            Ok(&front * &s)
        }
        Finite4 => {
            let w = omega(n) as i64;
            if w == 0 {
                return Ok(ExactValue::zero());
            }
            Ok(ExactValue::from_int(w) * ExactValue::int_pow(2, w - 1))
        }
        Finite6 => {
            let k = require_k(id, k)?;
            let s = prime_sum(n, |p| {
                ratio(one.clone(), &one - &ExactValue::int_pow(p, k), || format!("{p}^{k} = 1"))
            })?;
            Ok(&jordan_k(k, n)? * &s)
        }
        Finite9 | PsiCor | SquarefreeDk => {
            let k = if id == PsiCor { 1 } else { require_k(id, k)? };
            if id == SquarefreeDk && !n.is_squarefree() {
                return Err(Error::Precondition(format!("{} is not squarefree", n.value())));
            }
            let front = if id == PsiCor {
                FnSpec::builtin(crate::functions::Catalog::DedekindPsi).eval_exact(n)?
            } else {
                let jk = jordan_k(k, n)?;
                ratio(jordan_k(2 * k, n)?, jk, || format!("J_{k}({}) = 0", n.value()))?
            };
            let s = prime_sum(n, |p| {
                let pk = ExactValue::int_pow(p, k);
                let num = if id == SquarefreeDk { pk.clone() } else { one.clone() };
                ratio(num, &one + &pk, || format!("{p}^{k} = -1"))
            })?;
            Ok(&front * &s)
        }
        MultApostol => prime_product(n, |p| Ok(&one - &f_at(p)?)),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DivisorIdentityReport {
    pub identity: DivisorIdentity,
    pub n: u64,
    pub k: Option<i64>,
    pub lhs: Option<ExactValue>,
    pub rhs: Option<ExactValue>,
    pub equal: bool,
    /// Set when `n` violates a precondition or hits a singular point.
    pub skipped: Option<Error>,
}

impl DivisorIdentityReport {
    pub fn is_failure(&self) -> bool {
        self.skipped.is_none() && !self.equal
    }
}

/// Checks one `n`. Singular or precondition-violating `n` yield a skip.
pub fn check_one(
    id: DivisorIdentity,
    n: &FactoredInteger,
    spec: &FnSpec,
    k: Option<i64>,
) -> DivisorIdentityReport {
    let skip = |e: Error| DivisorIdentityReport {
        identity: id,
        n: n.value(),
        k,
        lhs: None,
        rhs: None,
        equal: false,
        skipped: Some(e),
    };
    let rhs = match closed_form(id, n, spec, k) {
        Ok(v) => v,
        Err(e) => return skip(e),
    };
    let lhs = match lhs(id, n, spec, k) {
        Ok(v) => v,
        Err(e) => return skip(e),
    };
    DivisorIdentityReport {
        identity: id,
        n: n.value(),
        k,
        equal: lhs == rhs,
        lhs: Some(lhs),
        rhs: Some(rhs),
        skipped: None,
    }
}

/// One report per `n` in the range, ordered by `n`.
pub fn verify_identity(
    id: DivisorIdentity,
    range: RangeInclusive<u64>,
    spec: &FnSpec,
    k: Option<i64>,
    sieve: &SpfSieve,
) -> Result<Vec<DivisorIdentityReport>> {
    check_range(&range, sieve)?;
    Ok(range
        .into_par_iter()
        .map(|n| check_one(id, &sieve.factorize(n).expect("range checked"), spec, k))
        .collect())
}

fn check_range(range: &RangeInclusive<u64>, sieve: &SpfSieve) -> Result<()> {
    if *range.start() == 0 {
        return Err(Error::Domain("n must be positive".into()));
    }
    if *range.end() > sieve.limit() {
        return Err(Error::Capacity(format!(
            "range end {} exceeds sieve limit {}",
            range.end(),
            sieve.limit()
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Finite4Summary {
    pub checked: u64,
    pub failures: Vec<u64>,
}

/// `Σ_{d|n} |μ(d)|ω(d) = ω(n)·2^{ω(n)−1}` over a range in machine integers.
///
/// Divisors are still enumerated one by one (as exponent vectors), so the
/// left side stays a brute-force sum.
pub fn verify_finite4_fast(range: RangeInclusive<u64>, sieve: &SpfSieve) -> Result<Finite4Summary> {
    check_range(&range, sieve)?;
    let failures: Vec<u64> = range
        .clone()
        .into_par_iter()
        .filter(|&n| {
            let exps: Vec<u32> = sieve.prime_powers(n).map(|(_, a)| a).collect();
            let lhs = sum_over_divisor_exponents(&exps, |d| {
                if d.iter().all(|&b| b <= 1) {
                    d.iter().filter(|&&b| b == 1).count() as u64
                } else {
                    0
                }
            });
            let w = exps.len() as u64;
            let rhs = if w == 0 { 0 } else { w << (w - 1) };
            lhs != rhs
        })
        .collect();
    Ok(Finite4Summary {
        checked: range.end() - range.start() + 1,
        failures,
    })
}

fn sum_over_divisor_exponents(max: &[u32], mut f: impl FnMut(&[u32]) -> u64) -> u64 {
    let mut cur = vec![0u32; max.len()];
    let mut total = 0;
    loop {
        total += f(&cur);
        let mut i = 0;
        loop {
            if i == cur.len() {
                return total;
            }
            cur[i] += 1;
            if cur[i] <= max[i] {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}
