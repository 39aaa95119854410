//! The coefficient field.
//!
//! Everything above this module is generic over [`Scalar`], an exact field
//! element. Two instances exist: [`Rational`] (arbitrary precision ℚ) and
//! [`RatFunc`](super::RatFunc) (univariate rational functions over ℚ, used for
//! symbolic identities in one parameter).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{euclid_gcd, Poly};
use crate::error::{Error, Result};

pub type Rational = BigRational;

pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn from_rational(r: &Rational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    /// Only used for pretty-printing signs; symbolic values answer `false`.
    fn is_negative(&self) -> bool {
        false
    }

    /// Wrap in parentheses when printed as a polynomial coefficient.
    fn needs_parens(&self) -> bool {
        false
    }

    /// Monic gcd of two polynomials over this field.
    fn gcd_poly(a: &Poly<Self>, b: &Poly<Self>) -> Poly<Self>
    where
        Self: Sized,
    {
        euclid_gcd(a, b)
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn needs_parens(&self) -> bool {
        !self.is_integer()
    }
    fn gcd_poly(a: &Poly<Self>, b: &Poly<Self>) -> Poly<Self> {
        super::poly::rational_gcd(a, b)
    }
}

/// Builds a rational from machine integers. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses a rational literal: a decimal integer or `p/q` with `q > 0`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational literal {s:?}"));
    match s.split_once('/') {
        None => BigInt::from_str(s)
            .map(Rational::from_integer)
            .map_err(|_| bad()),
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if !q.is_positive() {
                return Err(Error::Parse(format!(
                    "denominator must be positive in {s:?}"
                )));
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// Formats a rational the way [`parse_rational`] reads it.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
