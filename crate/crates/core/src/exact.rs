//! Exact Gaussian-rational scalars.
//!
//! Every divisor-sum identity is checked with these. Values with a zero
//! imaginary part behave exactly like [`BigRational`]; the imaginary part is
//! there so that characters of order dividing four can be evaluated exactly.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactValue {
    re: BigRational,
    im: BigRational,
}

impl ExactValue {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_int(v: i64) -> Self {
        Self::real(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn real(re: BigRational) -> Self {
        Self { re, im: BigRational::zero() }
    }

    pub fn i() -> Self {
        Self { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// `base^exp` for an integer base and a possibly negative exponent.
    pub fn int_pow(base: u64, exp: i64) -> Self {
        let b = BigRational::from_integer(BigInt::from(base));
        let mag = num_traits::pow(b, exp.unsigned_abs() as usize);
        if exp < 0 {
            Self::real(mag.recip())
        } else {
            Self::real(mag)
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `|z|^2`, always real.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn checked_recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.is_real() {
            return Some(Self::real(self.re.recip()));
        }
        let n = self.norm_sqr();
        Some(Self { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_real() {
            if rhs.re.is_zero() {
                return None;
            }
            return Some(Self { re: &self.re / &rhs.re, im: &self.im / &rhs.re });
        }
        rhs.checked_recip().map(|r| self * &r)
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl Zero for ExactValue {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for ExactValue {
    fn one() -> Self {
        Self::real(BigRational::one())
    }
}

impl From<BigRational> for ExactValue {
    fn from(re: BigRational) -> Self {
        Self::real(re)
    }
}

impl From<i64> for ExactValue {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl<'a> Add<&'a ExactValue> for &'a ExactValue {
    type Output = ExactValue;
    fn add(self, rhs: &ExactValue) -> ExactValue {
        ExactValue { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl<'a> Sub<&'a ExactValue> for &'a ExactValue {
    type Output = ExactValue;
    fn sub(self, rhs: &ExactValue) -> ExactValue {
        ExactValue { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl<'a> Mul<&'a ExactValue> for &'a ExactValue {
    type Output = ExactValue;
    fn mul(self, rhs: &ExactValue) -> ExactValue {
        if self.is_real() && rhs.is_real() {
            return ExactValue::real(&self.re * &rhs.re);
        }
        ExactValue {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Add for ExactValue {
    type Output = ExactValue;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl Sub for ExactValue {
    type Output = ExactValue;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl Mul for ExactValue {
    type Output = ExactValue;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

/// Panics on division by zero, like the rational type it wraps.
impl Div for ExactValue {
    type Output = ExactValue;
    fn div(self, rhs: Self) -> Self {
        self.checked_div(&rhs).expect("division by zero")
    }
}

impl Neg for ExactValue {
    type Output = ExactValue;
    fn neg(self) -> Self {
        ExactValue { re: -self.re, im: -self.im }
    }
}

impl std::iter::Sum for ExactValue {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| &a + &b)
    }
}

impl std::iter::Product for ExactValue {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |a, b| &a * &b)
    }
}

/// Renders as `a/b`, `a/b+c/di` or `c/di`, with integers written bare.
impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "{}i", self.im);
        }
        let sign = if self.im.is_negative() { "-" } else { "+" };
        write!(f, "{}{}{}i", self.re, sign, self.im.abs())
    }
}

impl fmt::Debug for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactValue({self})")
    }
}
