//! Exact non-negative rationals for exponents and thresholds.
//!
//! Comparisons are integer-exact; no floating point is involved anywhere.

use std::fmt;
use std::str::FromStr;

use num::rational::Ratio;

use crate::error::{Error, Result};

/// A non-negative rational stored in lowest terms.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(Ratio<u64>);

impl Rational {
    pub fn new(numerator: u64, denominator: u64) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(Ratio::new(numerator, denominator)))
    }

    pub fn integer(n: u64) -> Self {
        Rational(Ratio::from_integer(n))
    }

    pub fn numerator(&self) -> u64 {
        *self.0.numer()
    }

    pub fn denominator(&self) -> u64 {
        *self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }
}

impl From<u64> for Rational {
    fn from(n: u64) -> Self {
        Rational::integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numerator())
        } else {
            write!(f, "{}/{}", self.numerator(), self.denominator())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid rational {text:?}; expected P or P/Q"));
        match text.split_once('/') {
            None => {
                let n: u64 = text.trim().parse().map_err(|_| bad())?;
                Ok(Rational::integer(n))
            }
            Some((num, den)) => {
                let n: u64 = num.trim().parse().map_err(|_| bad())?;
                let d: u64 = den.trim().parse().map_err(|_| bad())?;
                Rational::new(n, d)
            }
        }
    }
}
