//! Dirichlet characters as explicit value tables.
//!
//! The unit group mod `q` is split by CRT into cyclic factors, one generator
//! per factor (two for `2^a`, `a ≥ 3`). A character is a choice of root of
//! unity for each generator; every table stores `χ(n)` as an exponent `k`
//! with `χ(n) = exp(2πi k / order)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::ExactValue;

pub const DEFAULT_CHARACTER_CAP: u64 = 100;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    modulus: u64,
    order: u64,
    exps: Vec<Option<u64>>,
}

impl CharacterTable {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Common order of the roots of unity used in the table.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_principal(&self) -> bool {
        self.exps.iter().all(|e| matches!(e, None | Some(0)))
    }

    /// Exponent of `χ(n)` as a root of unity, `None` when `χ(n) = 0`.
    pub fn exponent(&self, n: u64) -> Option<u64> {
        self.exps[(n % self.modulus) as usize]
    }

    pub fn value(&self, n: u64) -> Complex64 {
        match self.exponent(n) {
            None => Complex64::zero(),
            Some(0) => Complex64::one(),
            Some(k) if 2 * k == self.order => Complex64::new(-1.0, 0.0),
            Some(k) if 4 * k == self.order => Complex64::new(0.0, 1.0),
            Some(k) if 4 * k == 3 * self.order => Complex64::new(0.0, -1.0),
            Some(k) => Complex64::from_polar(1.0, 2.0 * PI * k as f64 / self.order as f64),
        }
    }

    /// `χ(n)` exactly, when it lies in `{0, ±1, ±i}`.
    pub fn exact_value(&self, n: u64) -> Option<ExactValue> {
        match self.exponent(n) {
            None => Some(ExactValue::zero()),
            Some(k) if (4 * k) % self.order == 0 => Some(match (4 * k / self.order) % 4 {
                0 => ExactValue::one(),
                1 => ExactValue::i(),
                2 => ExactValue::from_int(-1),
                _ => -ExactValue::i(),
            }),
            Some(_) => None,
        }
    }

    /// Short label listing the exponents, e.g. `mod 5 [-,0,1,3,2]/4`.
    pub fn label(&self) -> String {
        let exps: Vec<String> = self
            .exps
            .iter()
            .map(|e| e.map_or_else(|| "-".to_string(), |k| k.to_string()))
            .collect();
        format!("mod {} [{}]/{}", self.modulus, exps.join(","), self.order)
    }

    /// Values for residues `0..q`.
    pub fn values(&self) -> Vec<Complex64> {
        (0..self.modulus).map(|n| self.value(n)).collect()
    }
}

/// All `φ(q)` characters mod `q`, principal first.
pub fn build_characters(q: u64) -> Result<Vec<CharacterTable>> {
    build_characters_with_cap(q, DEFAULT_CHARACTER_CAP)
}

pub fn build_characters_with_cap(q: u64, cap: u64) -> Result<Vec<CharacterTable>> {
    if q == 0 {
        return Err(Error::Domain("character modulus must be positive".into()));
    }
    if q > cap {
        return Err(Error::Capacity(format!("character modulus {q} above cap {cap}")));
    }
    let gens = unit_group_generators(q);
    let order = gens.iter().fold(1u64, |acc, &(_, o)| acc.lcm(&o));

    // discrete log of every unit with respect to the generators
    let mut dlog: Vec<Option<Vec<u64>>> = vec![None; q as usize];
    let mut exps = vec![0u64; gens.len()];
    loop {
        let mut x = 1 % q;
        for (&(g, _), &e) in gens.iter().zip(&exps) {
            x = x * pow_mod(g, e, q) % q;
        }
        dlog[x as usize] = Some(exps.clone());
        if !odometer(&mut exps, gens.iter().map(|&(_, o)| o)) {
            break;
        }
    }

    let mut tables = Vec::new();
    let mut choice = vec![0u64; gens.len()];
    loop {
        let table_exps = dlog
            .iter()
            .map(|log| {
                log.as_ref().map(|log| {
                    gens.iter()
                        .zip(log)
                        .zip(&choice)
                        .map(|((&(_, o), &e), &c)| c * e % o * (order / o))
                        .sum::<u64>()
                        % order
                })
            })
            .collect();
        tables.push(CharacterTable { modulus: q, order, exps: table_exps });
        if !odometer(&mut choice, gens.iter().map(|&(_, o)| o)) {
            break;
        }
    }
    Ok(tables)
}

fn odometer(digits: &mut [u64], radices: impl Iterator<Item = u64>) -> bool {
    for (d, r) in digits.iter_mut().zip(radices) {
        *d += 1;
        if *d < r {
            return true;
        }
        *d = 0;
    }
    false
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn prime_power_split(mut q: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut a = 0;
            while q % p == 0 {
                q /= p;
                a += 1;
            }
            out.push((p, a));
        }
        p += 1;
    }
    if q > 1 {
        out.push((q, 1));
    }
    out
}

fn primitive_root_mod_prime(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let rs: Vec<u64> = prime_power_split(p - 1).into_iter().map(|(r, _)| r).collect();
    (2..p)
        .find(|&g| rs.iter().all(|&r| pow_mod(g, (p - 1) / r, p) != 1))
        .expect("every prime has a primitive root")
}

/// Generators (lifted to residues mod `q`) and their orders.
fn unit_group_generators(q: u64) -> Vec<(u64, u64)> {
    let mut gens = Vec::new();
    for (p, a) in prime_power_split(q) {
        let pa = p.pow(a);
        let local: Vec<(u64, u64)> = if p == 2 {
            match a {
                1 => vec![],
                2 => vec![(3, 2)],
                _ => vec![(pa - 1, 2), (5, pa / 4)],
            }
        } else {
            let mut g = primitive_root_mod_prime(p);
            if a > 1 && pow_mod(g, p - 1, p * p) == 1 {
                g += p;
            }
            vec![(g, pa / p * (p - 1))]
        };
        let rest = q / pa;
        for (g, o) in local {
            // x ≡ g (mod p^a), x ≡ 1 (mod q / p^a)
            let lifted = (0..rest)
                .map(|t| g + t * pa)
                .find(|x| x % rest == 1 % rest)
                .expect("CRT lift exists");
            gens.push((lifted, o));
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gcd(a: u64, b: u64) -> u64 {
        a.gcd(&b)
    }

    #[test]
    fn modulus_one() {
        let cs = build_characters(1).unwrap();
        assert_eq!(cs.len(), 1);
        for n in 0..10 {
            assert_eq!(cs[0].value(n), Complex64::one());
        }
    }

    #[test]
    fn modulus_four() {
        let cs = build_characters(4).unwrap();
        assert_eq!(cs.len(), 2);
        assert!(cs[0].is_principal());
        assert!(!cs[1].is_principal());
        assert_eq!(cs[1].value(3), Complex64::new(-1.0, 0.0));
        assert_eq!(cs[1].exact_value(3).unwrap(), ExactValue::from_int(-1));
    }

    #[test]
    fn modulus_five_fourth_powers() {
        let cs = build_characters(5).unwrap();
        assert_eq!(cs.len(), 4);
        for c in &cs {
            let v = c.exact_value(2).unwrap();
            assert_eq!(v.pow(4), ExactValue::one());
        }
    }

    #[test]
    fn domain_and_cap() {
        assert!(matches!(build_characters(0), Err(Error::Domain(_))));
        assert!(matches!(build_characters(101), Err(Error::Capacity(_))));
    }

    #[test]
    fn table_invariants_up_to_cap() {
        for q in 1..=100u64 {
            let cs = build_characters(q).unwrap();
            let phi = (1..=q).filter(|&n| gcd(n, q) == 1).count();
            assert_eq!(cs.len(), phi, "q = {q}");
            let mut seen = std::collections::HashSet::new();
            for c in &cs {
                assert_eq!(c.value(1), Complex64::one());
                for n in 0..q {
                    assert_eq!(c.exponent(n).is_none(), gcd(n, q) != 1);
                    assert_eq!(c.exponent(n + q), c.exponent(n));
                    for m in 0..q {
                        let lhs = c.value(n * m);
                        let rhs = c.value(n) * c.value(m);
                        assert!((lhs - rhs).norm() < 1e-12);
                    }
                }
                let total: Complex64 = (0..q).map(|n| c.value(n)).sum();
                if c.is_principal() {
                    assert!((total.re - phi as f64).abs() < 1e-9);
                } else {
                    assert!(total.norm() < 1e-9, "q = {q}: {total}");
                }
                assert!(seen.insert(c.exps.clone()), "duplicate character mod {q}");
            }
        }
    }
}
