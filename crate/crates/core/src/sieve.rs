//! Smallest-prime-factor sieve and factored integers.

use std::fmt;

use crate::error::{Error, Result};

/// Largest sieve accepted by [`SpfSieve::new`]; one `u32` per entry.
pub const DEFAULT_SIEVE_CAP: u64 = 100_000_000;

/// Table of smallest prime factors for `2..=limit`, built with a linear sieve.
#[derive(Clone)]
pub struct SpfSieve {
    limit: u64,
    spf: Vec<u32>,
    primes: Vec<u32>,
}

impl SpfSieve {
    pub fn new(limit: u64) -> Result<Self> {
        Self::with_cap(limit, DEFAULT_SIEVE_CAP)
    }

    pub fn with_cap(limit: u64, cap: u64) -> Result<Self> {
        if limit < 2 || limit > cap || limit > u32::MAX as u64 {
            return Err(Error::Capacity(format!(
                "sieve limit {limit} outside [2, {}]",
                cap.min(u32::MAX as u64)
            )));
        }
        let n = limit as usize;
        let mut spf = vec![0u32; n + 1];
        let mut primes = Vec::new();
        for i in 2..=n {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            let si = spf[i];
            for &p in &primes {
                let m = i * p as usize;
                if p > si || m > n {
                    break;
                }
                spf[m] = p;
            }
        }
        Ok(Self { limit, spf, primes })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Smallest prime factor of `n`, or `None` for `n < 2` or beyond the limit.
    pub fn spf(&self, n: u64) -> Option<u64> {
        if n < 2 || n > self.limit {
            return None;
        }
        Some(self.spf[n as usize] as u64)
    }

    pub fn is_prime(&self, n: u64) -> bool {
        self.spf(n) == Some(n)
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.primes.iter().map(|&p| p as u64)
    }

    pub fn prime_count(&self) -> usize {
        self.primes.len()
    }

    fn check(&self, n: u64) -> Result<()> {
        if n == 0 {
            return Err(Error::Domain("cannot factor 0".into()));
        }
        if n > self.limit {
            return Err(Error::Capacity(format!(
                "{n} exceeds sieve limit {}",
                self.limit
            )));
        }
        Ok(())
    }

    pub fn factorize(&self, n: u64) -> Result<FactoredInteger> {
        self.check(n)?;
        Ok(FactoredInteger {
            n,
            factors: self.prime_powers(n).collect(),
        })
    }

    /// Iterates `(p, α)` over the factorization of `n` without allocating.
    ///
    /// Panics if `n` is zero or above the limit; use [`Self::factorize`] for
    /// checked access.
    pub fn prime_powers(&self, n: u64) -> PrimePowers<'_> {
        assert!(n >= 1 && n <= self.limit, "{n} outside sieve range");
        PrimePowers { spf: &self.spf, rest: n as usize }
    }
}

impl fmt::Debug for SpfSieve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SpfSieve")
            .field("limit", &self.limit)
            .field("primes", &self.primes.len())
            .finish()
    }
}

pub struct PrimePowers<'a> {
    spf: &'a [u32],
    rest: usize,
}

impl Iterator for PrimePowers<'_> {
    type Item = (u64, u32);

    fn next(&mut self) -> Option<(u64, u32)> {
        if self.rest <= 1 {
            return None;
        }
        let p = self.spf[self.rest] as usize;
        let mut e = 0;
        while self.rest % p == 0 {
            self.rest /= p;
            e += 1;
        }
        Some((p as u64, e))
    }
}

/// A positive integer together with its prime-power factorization,
/// primes strictly increasing.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FactoredInteger {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl FactoredInteger {
    pub fn one() -> Self {
        Self { n: 1, factors: Vec::new() }
    }

    /// Builds `∏ p^α` from a factor list. Primality of the bases is the
    /// caller's responsibility; ordering, exponents and overflow are checked.
    pub fn from_factors(factors: Vec<(u64, u32)>) -> Result<Self> {
        let mut n: u64 = 1;
        for (i, &(p, a)) in factors.iter().enumerate() {
            if p < 2 || a == 0 {
                return Err(Error::Domain(format!("invalid prime power {p}^{a}")));
            }
            if i > 0 && factors[i - 1].0 >= p {
                return Err(Error::Domain("primes must be strictly increasing".into()));
            }
            let pa = p
                .checked_pow(a)
                .ok_or_else(|| Error::Capacity(format!("{p}^{a} overflows u64")))?;
            n = n
                .checked_mul(pa)
                .ok_or_else(|| Error::Capacity("product overflows u64".into()))?;
        }
        Ok(Self { n, factors })
    }

    pub fn value(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, a)| a == 1)
    }

    /// Product of the distinct primes dividing `n`.
    pub fn radical(&self) -> Self {
        let factors: Vec<_> = self.factors.iter().map(|&(p, _)| (p, 1)).collect();
        let n = factors.iter().map(|&(p, _)| p).product();
        Self { n, factors }
    }

    /// Product of two factored integers, merging exponents.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() || j < other.factors.len() {
            match (self.factors.get(i), other.factors.get(j)) {
                (Some(&(p, a)), Some(&(q, b))) if p == q => {
                    out.push((p, a + b));
                    i += 1;
                    j += 1;
                }
                (Some(&(p, a)), Some(&(q, _))) if p < q => {
                    out.push((p, a));
                    i += 1;
                }
                (Some(&(p, a)), None) => {
                    out.push((p, a));
                    i += 1;
                }
                (_, Some(&(q, b))) => {
                    out.push((q, b));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Self::from_factors(out)
    }
}

impl fmt::Display for FactoredInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|&(p, a)| if a == 1 { p.to_string() } else { format!("{p}^{a}") })
            .collect();
        write!(f, "{}", parts.join(" * "))
    }
}

impl fmt::Debug for FactoredInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.n, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spf_small_table() {
        let s = SpfSieve::new(10).unwrap();
        let got: Vec<u64> = (2..=10).map(|n| s.spf(n).unwrap()).collect();
        assert_eq!(got, vec![2, 3, 2, 5, 2, 7, 2, 3, 2]);
        assert_eq!(s.spf(1), None);
        assert_eq!(s.spf(11), None);
    }

    #[test]
    fn smallest_limit() {
        let s = SpfSieve::new(2).unwrap();
        assert_eq!(s.spf(2), Some(2));
    }

    #[test]
    fn limit_out_of_range() {
        assert!(matches!(SpfSieve::new(1), Err(Error::Capacity(_))));
        assert!(matches!(SpfSieve::with_cap(1000, 100), Err(Error::Capacity(_))));
    }

    #[test]
    fn factorize_examples() {
        let s = SpfSieve::new(1000).unwrap();
        assert!(s.factorize(1).unwrap().factors().is_empty());
        assert_eq!(s.factorize(100).unwrap().factors(), &[(2, 2), (5, 2)]);
        assert_eq!(s.factorize(12).unwrap().factors(), &[(2, 2), (3, 1)]);
        assert!(matches!(s.factorize(0), Err(Error::Domain(_))));
        assert!(matches!(s.factorize(1001), Err(Error::Capacity(_))));
    }

    #[test]
    fn spf_invariants() {
        let s = SpfSieve::new(20_000).unwrap();
        for n in 2..=20_000u64 {
            let p = s.spf(n).unwrap();
            assert_eq!(n % p, 0);
            assert!(p * p <= n || p == n);
            let trial_prime = (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(p == n, trial_prime, "n = {n}");
        }
    }

    #[test]
    fn radical_and_multiply() {
        let s = SpfSieve::new(1000).unwrap();
        let a = s.factorize(72).unwrap();
        assert_eq!(a.radical().value(), 6);
        let b = s.factorize(15).unwrap();
        let ab = a.multiply(&b).unwrap();
        assert_eq!(ab.value(), 1080);
        assert_eq!(ab.factors(), &[(2, 3), (3, 3), (5, 1)]);
        assert!(FactoredInteger::from_factors(vec![(3, 1), (2, 1)]).is_err());
    }
}
