//! Elementary symmetric polynomials and the factorization identities built
//! on their generating function `∏ (1 + t·xᵢ) = Σ eₖ tᵏ`.
//!
//! Each identity returns both sides so callers choose the comparison:
//! exact equality for rationals, a tolerance for floating complex input.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::ExactValue;

/// Field operations needed by the symmetric-function kernels.
pub trait Scalar:
    Clone + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn from_i64(v: i64) -> Self;
    /// `None` when `rhs` is zero.
    fn try_div(&self, rhs: &Self) -> Option<Self>;
}

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(v.into())
    }
    fn try_div(&self, rhs: &Self) -> Option<Self> {
        (!rhs.is_zero()).then(|| self / rhs)
    }
}

impl Scalar for ExactValue {
    fn from_i64(v: i64) -> Self {
        ExactValue::from_int(v)
    }
    fn try_div(&self, rhs: &Self) -> Option<Self> {
        self.checked_div(rhs)
    }
}

impl Scalar for Complex64 {
    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
    fn try_div(&self, rhs: &Self) -> Option<Self> {
        (!rhs.is_zero()).then(|| self / rhs)
    }
}

/// `[e₀, e₁, …, eₙ]` for the inputs, by multiplying out `∏ (1 + t·xᵢ)`.
pub fn elementary_symmetric<T: Scalar>(xs: &[T]) -> Vec<T> {
    let mut e = Vec::with_capacity(xs.len() + 1);
    e.push(T::one());
    for x in xs {
        e.push(T::zero());
        for k in (1..e.len()).rev() {
            let term = e[k - 1].clone() * x.clone();
            e[k] = e[k].clone() + term;
        }
    }
    e
}

fn sum_of_ratios<T: Scalar>(xs: &[T], denom: impl Fn(&T) -> T, pole: &str) -> Result<T> {
    xs.iter().enumerate().try_fold(T::zero(), |acc, (i, x)| {
        let q = x
            .try_div(&denom(x))
            .ok_or_else(|| Error::Singular(format!("x[{i}] = {pole}")))?;
        Ok(acc + q)
    })
}

fn product_of<T: Scalar>(xs: &[T], factor: impl Fn(&T) -> T) -> T {
    xs.iter().fold(T::one(), |acc, x| acc * factor(x))
}

/// `(∏(1−xᵢ))·Σ xᵢ/(xᵢ−1)` and `Σ (−1)ᵏ k eₖ`. Every `xᵢ` must differ from 1.
pub fn identity_main_sides<T: Scalar>(xs: &[T]) -> Result<(T, T)> {
    let ratios = sum_of_ratios(xs, |x| x.clone() - T::one(), "1")?;
    let lhs = product_of(xs, |x| T::one() - x.clone()) * ratios;
    let rhs = elementary_symmetric(xs)
        .into_iter()
        .enumerate()
        .skip(1)
        .fold(T::zero(), |acc, (k, ek)| {
            let term = T::from_i64(k as i64) * ek;
            if k % 2 == 0 {
                acc + term
            } else {
                acc - term
            }
        });
    Ok((lhs, rhs))
}

/// `(∏(1+xᵢ))·Σ xᵢ/(xᵢ+1)` and `Σ k eₖ`. Every `xᵢ` must differ from −1.
pub fn identity_mainpos_sides<T: Scalar>(xs: &[T]) -> Result<(T, T)> {
    let ratios = sum_of_ratios(xs, |x| x.clone() + T::one(), "-1")?;
    let lhs = product_of(xs, |x| T::one() + x.clone()) * ratios;
    let rhs = weighted_sum(&elementary_symmetric(xs), |k| k);
    Ok((lhs, rhs))
}

/// `Σ k² eₖ` and `(∏(1+xᵢ))·[(Σ xᵢ/(1+xᵢ))² + Σ xᵢ/(1+xᵢ)²]`.
/// Every `xᵢ` must differ from −1.
pub fn identity_second_order_sides<T: Scalar>(xs: &[T]) -> Result<(T, T)> {
    let lhs = weighted_sum(&elementary_symmetric(xs), |k| k * k);
    let first = sum_of_ratios(xs, |x| x.clone() + T::one(), "-1")?;
    let second = sum_of_ratios(
        xs,
        |x| {
            let d = x.clone() + T::one();
            d.clone() * d
        },
        "-1",
    )?;
    let rhs = product_of(xs, |x| T::one() + x.clone()) * (first.clone() * first + second);
    Ok((lhs, rhs))
}

fn weighted_sum<T: Scalar>(e: &[T], weight: impl Fn(i64) -> i64) -> T {
    e.iter()
        .enumerate()
        .skip(1)
        .fold(T::zero(), |acc, (k, ek)| acc + T::from_i64(weight(k as i64)) * ek.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn ints(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| q(x, 1)).collect()
    }

    #[test]
    fn elementary_examples() {
        assert_eq!(elementary_symmetric::<BigRational>(&[]), ints(&[1]));
        assert_eq!(elementary_symmetric(&ints(&[1, 2, 3])), ints(&[1, 6, 11, 6]));
        assert_eq!(elementary_symmetric(&[q(5, 7)]), vec![q(1, 1), q(5, 7)]);
    }

    #[test]
    fn main_identity_examples() {
        assert_eq!(identity_main_sides::<BigRational>(&[]).unwrap(), (q(0, 1), q(0, 1)));
        assert_eq!(identity_main_sides(&ints(&[2])).unwrap(), (q(-2, 1), q(-2, 1)));
        assert_eq!(identity_main_sides(&ints(&[2, 3])).unwrap(), (q(7, 1), q(7, 1)));
        assert!(matches!(identity_main_sides(&ints(&[2, 1])), Err(Error::Singular(_))));
    }

    #[test]
    fn mainpos_identity_examples() {
        assert_eq!(identity_mainpos_sides(&ints(&[2, 3])).unwrap(), (q(17, 1), q(17, 1)));
        assert_eq!(identity_mainpos_sides::<BigRational>(&[]).unwrap(), (q(0, 1), q(0, 1)));
        assert_eq!(identity_mainpos_sides(&ints(&[1])).unwrap(), (q(1, 1), q(1, 1)));
        assert!(matches!(identity_mainpos_sides(&ints(&[-1])), Err(Error::Singular(_))));
    }

    #[test]
    fn second_order_examples() {
        assert_eq!(identity_second_order_sides::<BigRational>(&[]).unwrap(), (q(0, 1), q(0, 1)));
        assert_eq!(identity_second_order_sides(&ints(&[1])).unwrap(), (q(1, 1), q(1, 1)));
        // 12·[(17/12)² + 2/9 + 3/16] = 29
        let hand = q(12, 1) * (q(17, 12) * q(17, 12) + q(2, 9) + q(3, 16));
        assert_eq!(hand, q(29, 1));
        assert_eq!(identity_second_order_sides(&ints(&[2, 3])).unwrap(), (q(29, 1), hand));
        assert!(matches!(identity_second_order_sides(&ints(&[3, -1])), Err(Error::Singular(_))));
    }

    #[test]
    fn complex_inputs_within_tolerance() {
        let xs = [Complex64::new(0.3, 0.2), Complex64::new(-0.5, 1.5), Complex64::new(2.0, -1.0)];
        for f in [identity_main_sides::<Complex64>, identity_mainpos_sides, identity_second_order_sides] {
            let (l, r) = f(&xs).unwrap();
            assert!((l - r).norm() < 1e-12);
        }
    }

    #[test]
    fn gaussian_inputs_exact() {
        let xs = vec![ExactValue::i(), &ExactValue::from_int(2) - &ExactValue::i(), ExactValue::from_ratio(1, 3)];
        let (l, r) = identity_second_order_sides(&xs).unwrap();
        assert_eq!(l, r);
        let (l, r) = identity_main_sides(&xs).unwrap();
        assert_eq!(l, r);
    }
}
