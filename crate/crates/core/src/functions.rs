//! Arithmetic functions on factored integers and the multiplicative
//! function catalog.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::characters::CharacterTable;
use crate::error::{Error, Result};
use crate::exact::ExactValue;
use crate::sieve::FactoredInteger;

/// Number of distinct prime factors; `ω(1) = 0`.
pub fn omega(f: &FactoredInteger) -> usize {
    f.factors().len()
}

pub fn mobius(f: &FactoredInteger) -> i8 {
    if !f.is_squarefree() {
        0
    } else if omega(f) % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn liouville(f: &FactoredInteger) -> i8 {
    let total: u32 = f.factors().iter().map(|&(_, a)| a).sum();
    if total % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `J_k(n) = n^k ∏_{p|n} (1 - p^{-k})`, evaluated as `∏ (p^{αk} - p^{(α-1)k})`.
pub fn jordan_totient(k: u32, f: &FactoredInteger) -> ExactValue {
    f.factors()
        .iter()
        .map(|&(p, a)| {
            let hi = ExactValue::int_pow(p, i64::from(a) * i64::from(k));
            let lo = ExactValue::int_pow(p, i64::from(a - 1) * i64::from(k));
            &hi - &lo
        })
        .product()
}

/// All divisors `∏ p^β` with `0 ≤ β ≤ α`, in odometer order starting at 1.
pub fn divisors(f: &FactoredInteger) -> Vec<FactoredInteger> {
    let base = f.factors();
    let count: usize = base.iter().map(|&(_, a)| a as usize + 1).product();
    let mut out = Vec::with_capacity(count);
    let mut exps = vec![0u32; base.len()];
    loop {
        let factors = base
            .iter()
            .zip(&exps)
            .filter(|(_, &e)| e > 0)
            .map(|(&(p, _), &e)| (p, e))
            .collect();
        out.push(FactoredInteger::from_factors(factors).expect("divisor of a valid integer"));
        let mut i = 0;
        loop {
            if i == exps.len() {
                return out;
            }
            exps[i] += 1;
            if exps[i] <= base[i].1 {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

/// Exponent parameter of a catalog function: an integer keeps the function
/// on the exact path, a complex value routes it to floating evaluation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Exponent {
    Int(i64),
    Complex(Complex64),
}

impl Exponent {
    pub fn as_complex(self) -> Complex64 {
        match self {
            Exponent::Int(k) => Complex64::new(k as f64, 0.0),
            Exponent::Complex(z) => z,
        }
    }

    fn exact(self) -> Result<i64> {
        match self {
            Exponent::Int(k) => Ok(k),
            Exponent::Complex(z) => Err(Error::Evaluation(format!(
                "exponent {z} has no exact evaluation"
            ))),
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Int(k) => write!(f, "{k}"),
            Exponent::Complex(z) => write!(f, "{z}"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Catalog {
    One,
    /// `n^k`
    Power(Exponent),
    /// `1/n^k`
    InversePower(Exponent),
    Mobius,
    AbsMobius,
    Liouville,
    Totient,
    Jordan(Exponent),
    /// Dedekind psi, `J_2 / J_1`.
    DedekindPsi,
    /// Sum of `k`-th powers of divisors.
    Sigma(Exponent),
    DivisorCount,
    /// `d(n²)`
    DivisorCountOfSquare,
    /// `d(n)²`
    DivisorCountSquared,
    TwoPowOmega,
    Character(Arc<CharacterTable>),
}

impl Catalog {
    pub fn completely_multiplicative(&self) -> bool {
        matches!(
            self,
            Catalog::One
                | Catalog::Power(_)
                | Catalog::InversePower(_)
                | Catalog::Liouville
                | Catalog::Character(_)
        )
    }

    fn name(&self) -> String {
        match self {
            Catalog::One => "one".into(),
            Catalog::Power(k) => format!("power(k={k})"),
            Catalog::InversePower(k) => format!("inverse-power(k={k})"),
            Catalog::Mobius => "mobius".into(),
            Catalog::AbsMobius => "abs-mobius".into(),
            Catalog::Liouville => "liouville".into(),
            Catalog::Totient => "totient".into(),
            Catalog::Jordan(k) => format!("jordan(k={k})"),
            Catalog::DedekindPsi => "psi".into(),
            Catalog::Sigma(k) => format!("sigma(k={k})"),
            Catalog::DivisorCount => "divisor-count".into(),
            Catalog::DivisorCountOfSquare => "divisor-count-square".into(),
            Catalog::DivisorCountSquared => "divisor-count-squared".into(),
            Catalog::TwoPowOmega => "two-omega".into(),
            Catalog::Character(c) => format!("chi({})", c.label()),
        }
    }

    fn exact_at(&self, p: u64, m: u32) -> Result<ExactValue> {
        let m64 = i64::from(m);
        Ok(match self {
            Catalog::One => ExactValue::one(),
            Catalog::Power(k) => ExactValue::int_pow(p, m64 * k.exact()?),
            Catalog::InversePower(k) => ExactValue::int_pow(p, -m64 * k.exact()?),
            Catalog::Mobius => match m {
                1 => ExactValue::from_int(-1),
                _ => ExactValue::zero(),
            },
            Catalog::AbsMobius => match m {
                1 => ExactValue::one(),
                _ => ExactValue::zero(),
            },
            Catalog::Liouville => ExactValue::from_int(if m % 2 == 0 { 1 } else { -1 }),
            Catalog::Totient => &ExactValue::int_pow(p, m64) - &ExactValue::int_pow(p, m64 - 1),
            Catalog::Jordan(k) => {
                let k = k.exact()?;
                &ExactValue::int_pow(p, m64 * k) - &ExactValue::int_pow(p, (m64 - 1) * k)
            }
            Catalog::DedekindPsi => &ExactValue::int_pow(p, m64) + &ExactValue::int_pow(p, m64 - 1),
            Catalog::Sigma(k) => {
                let k = k.exact()?;
                (0..=m64).map(|j| ExactValue::int_pow(p, j * k)).sum()
            }
            Catalog::DivisorCount => ExactValue::from_int(m64 + 1),
            Catalog::DivisorCountOfSquare => ExactValue::from_int(2 * m64 + 1),
            Catalog::DivisorCountSquared => ExactValue::from_int((m64 + 1) * (m64 + 1)),
            Catalog::TwoPowOmega => ExactValue::from_int(2),
            Catalog::Character(chi) => chi
                .exact_value(p)
                .ok_or_else(|| {
                    Error::Evaluation(format!(
                        "χ({p}) mod {} is not a Gaussian rational",
                        chi.modulus()
                    ))
                })?
                .pow(m),
        })
    }

    fn complex_at(&self, p: u64, m: u32) -> Complex64 {
        let lp = (p as f64).ln();
        let mf = f64::from(m);
        let pw = |e: Complex64| (e * lp).exp();
        let real = |x: f64| Complex64::new(x, 0.0);
        match self {
            Catalog::One => Complex64::one(),
            Catalog::Power(k) => pw(k.as_complex() * mf),
            Catalog::InversePower(k) => pw(-k.as_complex() * mf),
            Catalog::Mobius => real(if m == 1 { -1.0 } else { 0.0 }),
            Catalog::AbsMobius => real(if m == 1 { 1.0 } else { 0.0 }),
            Catalog::Liouville => real(if m % 2 == 0 { 1.0 } else { -1.0 }),
            Catalog::Totient => real((p as f64).powi(m as i32 - 1) * (p as f64 - 1.0)),
            Catalog::Jordan(k) => {
                let k = k.as_complex();
                pw(k * mf) - pw(k * (mf - 1.0))
            }
            Catalog::DedekindPsi => real((p as f64).powi(m as i32 - 1) * (p as f64 + 1.0)),
            Catalog::Sigma(k) => {
                let k = k.as_complex();
                (0..=m).map(|j| pw(k * f64::from(j))).sum()
            }
            Catalog::DivisorCount => real(mf + 1.0),
            Catalog::DivisorCountOfSquare => real(2.0 * mf + 1.0),
            Catalog::DivisorCountSquared => real((mf + 1.0) * (mf + 1.0)),
            Catalog::TwoPowOmega => real(2.0),
            Catalog::Character(chi) => chi.value(p).powu(m),
        }
    }
}

type ExactRule = dyn Fn(u64, u32) -> Option<ExactValue> + Send + Sync;
type ComplexRule = dyn Fn(u64, u32) -> Option<Complex64> + Send + Sync;

/// A user-supplied multiplicative function, given by its values at prime
/// powers `p^m` (`m ≥ 1`). A rule returns `None` where it is undefined.
#[derive(Clone)]
pub struct PrimePowerRule {
    name: String,
    exact: Option<Arc<ExactRule>>,
    complex: Arc<ComplexRule>,
}

impl PrimePowerRule {
    /// Rule with only a floating-point evaluation.
    pub fn complex(
        name: impl Into<String>,
        rule: impl Fn(u64, u32) -> Option<Complex64> + Send + Sync + 'static,
    ) -> Self {
        Self { name: name.into(), exact: None, complex: Arc::new(rule) }
    }

    /// Rule with an exact evaluation; the floating one is derived from it.
    pub fn exact(
        name: impl Into<String>,
        rule: impl Fn(u64, u32) -> Option<ExactValue> + Send + Sync + 'static,
    ) -> Self {
        let rule: Arc<ExactRule> = Arc::new(rule);
        let for_complex = Arc::clone(&rule);
        Self {
            name: name.into(),
            exact: Some(rule),
            complex: Arc::new(move |p, m| {
                for_complex(p, m).map(|v| {
                    let (re, im) = v.to_f64_pair();
                    Complex64::new(re, im)
                })
            }),
        }
    }
}

#[derive(Clone)]
pub enum FnKind {
    Builtin(Catalog),
    Rule(PrimePowerRule),
}

/// A multiplicative function, described by its values on prime powers.
#[derive(Clone)]
pub struct FnSpec {
    kind: FnKind,
    completely_multiplicative: bool,
}

impl FnSpec {
    pub fn builtin(c: Catalog) -> Self {
        let completely_multiplicative = c.completely_multiplicative();
        Self { kind: FnKind::Builtin(c), completely_multiplicative }
    }

    pub fn rule(rule: PrimePowerRule, completely_multiplicative: bool) -> Self {
        Self { kind: FnKind::Rule(rule), completely_multiplicative }
    }

    pub fn one() -> Self {
        Self::builtin(Catalog::One)
    }

    pub fn kind(&self) -> &FnKind {
        &self.kind
    }

    pub fn is_completely_multiplicative(&self) -> bool {
        self.completely_multiplicative
    }

    pub fn name(&self) -> String {
        match &self.kind {
            FnKind::Builtin(c) => c.name(),
            FnKind::Rule(r) => r.name.clone(),
        }
    }

    pub fn prime_power_exact(&self, p: u64, m: u32) -> Result<ExactValue> {
        match &self.kind {
            FnKind::Builtin(c) => c.exact_at(p, m),
            FnKind::Rule(r) => {
                let rule = r.exact.as_ref().ok_or_else(|| {
                    Error::Evaluation(format!("rule {} has no exact evaluation", r.name))
                })?;
                rule(p, m).ok_or_else(|| {
                    Error::Evaluation(format!("rule {} undefined at {p}^{m}", r.name))
                })
            }
        }
    }

    pub fn prime_power_complex(&self, p: u64, m: u32) -> Result<Complex64> {
        let v = match &self.kind {
            FnKind::Builtin(c) => c.complex_at(p, m),
            FnKind::Rule(r) => (r.complex)(p, m).ok_or_else(|| {
                Error::Evaluation(format!("rule {} undefined at {p}^{m}", r.name))
            })?,
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Evaluation(format!("{} is not finite at {p}^{m}", self.name())))
        }
    }

    pub fn eval_exact(&self, f: &FactoredInteger) -> Result<ExactValue> {
        let mut acc = ExactValue::one();
        for &(p, a) in f.factors() {
            acc = &acc * &self.prime_power_exact(p, a)?;
        }
        Ok(acc)
    }

    pub fn eval_complex(&self, f: &FactoredInteger) -> Result<Complex64> {
        f.factors()
            .iter()
            .try_fold(Complex64::one(), |acc, &(p, a)| Ok(acc * self.prime_power_complex(p, a)?))
    }
}

impl fmt::Debug for FnSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FnSpec")
            .field("name", &self.name())
            .field("completely_multiplicative", &self.completely_multiplicative)
            .finish()
    }
}

/// Value of a catalog or rule function: exact whenever the spec allows it.
#[derive(Clone, Debug, PartialEq)]
pub enum FnValue {
    Exact(ExactValue),
    Complex(Complex64),
}

pub fn eval_fn(spec: &FnSpec, f: &FactoredInteger) -> Result<FnValue> {
    match spec.eval_exact(f) {
        Ok(v) => Ok(FnValue::Exact(v)),
        Err(_) => spec.eval_complex(f).map(FnValue::Complex),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::build_characters;
    use crate::sieve::SpfSieve;

    fn sieve() -> SpfSieve {
        SpfSieve::new(10_000).unwrap()
    }

    fn exact(c: Catalog, n: u64) -> ExactValue {
        FnSpec::builtin(c).eval_exact(&sieve().factorize(n).unwrap()).unwrap()
    }

    #[test]
    fn omega_examples() {
        let s = sieve();
        assert_eq!(omega(&s.factorize(5).unwrap()), 1);
        assert_eq!(omega(&s.factorize(10).unwrap()), 2);
        assert_eq!(omega(&s.factorize(100).unwrap()), 2);
        assert_eq!(omega(&s.factorize(1).unwrap()), 0);
    }

    #[test]
    fn mobius_and_liouville_examples() {
        let s = sieve();
        let mu = |n| mobius(&s.factorize(n).unwrap());
        let la = |n| liouville(&s.factorize(n).unwrap());
        assert_eq!((mu(1), mu(4), mu(6)), (1, 0, 1));
        assert_eq!((la(1), la(8), la(12)), (1, -1, -1));
    }

    #[test]
    fn jordan_examples() {
        let s = sieve();
        let coprime_count = (1..=6u64).filter(|&m| num_integer::gcd(m, 6) == 1).count() as i64;
        assert_eq!(jordan_totient(1, &s.factorize(6).unwrap()), ExactValue::from_int(coprime_count));
        assert_eq!(jordan_totient(1, &s.factorize(1).unwrap()), ExactValue::one());
        // 36·(1-1/4)(1-1/9)
        let direct = &(&ExactValue::from_int(36) * &ExactValue::from_ratio(3, 4))
            * &ExactValue::from_ratio(8, 9);
        assert_eq!(jordan_totient(2, &s.factorize(6).unwrap()), direct);
        assert_eq!(direct, ExactValue::from_int(24));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(exact(Catalog::Power(Exponent::Int(2)), 6), ExactValue::from_int(36));
        assert_eq!(exact(Catalog::TwoPowOmega, 12), ExactValue::from_int(4));
        let squarefree_divisors = (1..=12u64)
            .filter(|d| 12 % d == 0)
            .filter(|d| (2..=*d).all(|k| d % (k * k) != 0))
            .count() as i64;
        assert_eq!(squarefree_divisors, 4);
        let divisor_count = (1..=12u64).filter(|d| 12 % d == 0).count() as i64;
        assert_eq!(exact(Catalog::Sigma(Exponent::Int(0)), 12), ExactValue::from_int(divisor_count));
        assert_eq!(exact(Catalog::DivisorCount, 12), ExactValue::from_int(6));
        assert_eq!(exact(Catalog::Mobius, 1), ExactValue::one());
    }

    #[test]
    fn complex_exponent_has_no_exact_path() {
        let spec = FnSpec::builtin(Catalog::InversePower(Exponent::Complex(Complex64::new(0.5, 1.0))));
        let f = sieve().factorize(12).unwrap();
        assert!(matches!(spec.eval_exact(&f), Err(Error::Evaluation(_))));
        assert!(matches!(eval_fn(&spec, &f).unwrap(), FnValue::Complex(_)));
        let v = spec.eval_complex(&f).unwrap();
        let direct = (-Complex64::new(0.5, 1.0) * 12f64.ln()).exp();
        assert!((v - direct).norm() < 1e-14);
    }

    #[test]
    fn undefined_rule_errors() {
        let rule = PrimePowerRule::exact("undefined at 3", |p, _| {
            (p != 3).then(|| ExactValue::from_int(p as i64))
        });
        let spec = FnSpec::rule(rule, false);
        let s = sieve();
        assert!(spec.eval_exact(&s.factorize(10).unwrap()).is_ok());
        assert!(matches!(spec.eval_exact(&s.factorize(6).unwrap()), Err(Error::Evaluation(_))));
        assert!(matches!(spec.eval_complex(&s.factorize(6).unwrap()), Err(Error::Evaluation(_))));
    }

    #[test]
    fn divisors_examples() {
        let s = sieve();
        let mut d: Vec<u64> = divisors(&s.factorize(12).unwrap()).iter().map(|f| f.value()).collect();
        d.sort();
        assert_eq!(d, vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(&FactoredInteger::one()).len(), 1);
        let d: Vec<u64> = divisors(&s.factorize(7919).unwrap()).iter().map(|f| f.value()).collect();
        assert_eq!(d, vec![1, 7919]);
    }

    #[test]
    fn exact_and_complex_paths_agree() {
        let s = sieve();
        let chi = Arc::new(build_characters(5).unwrap().remove(1));
        let specs = [
            Catalog::Jordan(Exponent::Int(2)),
            Catalog::Sigma(Exponent::Int(1)),
            Catalog::DedekindPsi,
            Catalog::Totient,
            Catalog::DivisorCountSquared,
            Catalog::Character(chi),
        ];
        for c in specs {
            let spec = FnSpec::builtin(c);
            for n in 1..=300 {
                let f = s.factorize(n).unwrap();
                let (re, im) = spec.eval_exact(&f).unwrap().to_f64_pair();
                let z = spec.eval_complex(&f).unwrap();
                assert!((z - Complex64::new(re, im)).norm() <= 1e-9 * (1.0 + re.abs()), "{} at {n}", spec.name());
            }
        }
    }
}
