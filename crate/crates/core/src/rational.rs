// Copyright 2026 The maxplus-tc Authors
// SPDX-License-Identifier: Apache-2.0

//! Exact rational numbers.
//!
//! Every model parameter (rates, bursts, intervals) is a [`Rational`]. Values
//! are kept in lowest terms with a positive denominator, so structural
//! equality is value equality.

use core::cmp::Ordering;
use core::fmt;
use core::iter::Sum;
use core::ops::{Add, Div, Mul, Neg, Sub};
use core::str::FromStr;

use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::error::Error;

/// An exact fraction `num / den` with `den > 0`, stored in lowest terms.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(Ratio<i128>);

impl Rational {
    pub const ZERO: Rational = Rational(Ratio::new_raw(0, 1));
    pub const ONE: Rational = Rational(Ratio::new_raw(1, 1));

    /// Builds `num / den`, normalising sign and common factors.
    pub fn new(num: i128, den: i128) -> Result<Self, Error> {
        if den == 0 {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(Ratio::new(num, den)))
    }

    pub fn from_integer(value: i128) -> Self {
        Rational(Ratio::from_integer(value))
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    /// Always positive.
    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.numer() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.numer() < 0
    }

    /// Smallest integer `>= self`.
    pub fn ceil(&self) -> i128 {
        self.0.ceil().to_integer()
    }

    /// Largest integer `<= self`.
    pub fn floor(&self) -> i128 {
        self.0.floor().to_integer()
    }

    /// `(x)⁺ = max{x, 0}`.
    pub fn positive_part(&self) -> Self {
        if self.is_negative() {
            Rational::ZERO
        } else {
            *self
        }
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Multiplicative inverse; fails on zero.
    pub fn recip(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn min(self, other: Self) -> Self {
        core::cmp::min(self, other)
    }

    pub fn max(self, other: Self) -> Self {
        core::cmp::max(self, other)
    }

    /// Compares `self` with the integer `value` without building a rational.
    pub fn cmp_integer(&self, value: i128) -> Ordering {
        self.numer().cmp(&(value * self.denom()))
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::ZERO
    }
}

impl From<i128> for Rational {
    fn from(value: i128) -> Self {
        Rational::from_integer(value)
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::from_integer(value as i128)
    }
}

impl From<u64> for Rational {
    fn from(value: u64) -> Self {
        Rational::from_integer(value as i128)
    }
}

impl From<usize> for Rational {
    fn from(value: usize) -> Self {
        Rational::from_integer(value as i128)
    }
}

impl From<i32> for Rational {
    fn from(value: i32) -> Self {
        Rational::from_integer(value as i128)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for Rational {
    type Output = Rational;

    /// Panics on division by zero, like integer division.
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "division of a rational by zero");
        Rational(self.0 / rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::ZERO, |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::ZERO, |acc, x| acc + *x)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `"7"`, `"-3/4"` or `"12/8"`.
impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let parse = |part: &str| part.trim().parse::<i128>().map_err(|_| Error::Parse);
        match s.split_once('/') {
            Some((num, den)) => Rational::new(parse(num)?, parse(den)?),
            None => Ok(Rational::from_integer(parse(s)?)),
        }
    }
}
