//! Exact rational scalars.
//!
//! Measures, metric values and thresholds are all kept as reduced fractions
//! over `i128`. Every arithmetic step is checked; overflow surfaces as
//! [`Error::Overflow`] instead of wrapping or panicking.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(Ratio<i128>);

impl Rational {
    pub const ZERO: Rational = Rational(Ratio::new_raw(0, 1));
    pub const ONE: Rational = Rational(Ratio::new_raw(1, 1));

    pub fn new(num: i128, den: i128) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidArgument(format!("zero denominator in {num}/0")));
        }
        Ok(Rational(Ratio::new(num, den)))
    }

    pub fn from_integer(n: i128) -> Self {
        Rational(Ratio::from_integer(n))
    }

    /// `count / total`, the measure of `count` cells out of `total`.
    pub fn fraction(count: usize, total: usize) -> Self {
        assert!(total > 0, "fraction with empty total");
        Rational(Ratio::new(count as i128, total as i128))
    }

    /// `1 / m`.
    pub fn recip_of(m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("reciprocal of zero".into()));
        }
        Ok(Rational(Ratio::new(1, m as i128)))
    }

    /// `2^{-exp}`.
    pub fn pow2_neg(exp: u32) -> Result<Self> {
        let den = 1i128
            .checked_shl(exp)
            .filter(|d| *d > 0)
            .ok_or(Error::Overflow("power of two"))?;
        Ok(Rational(Ratio::new_raw(1, den)))
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.numer() > 0
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.0.checked_add(&rhs.0).map(Rational).ok_or(Error::Overflow("rational add"))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.0.checked_sub(&rhs.0).map(Rational).ok_or(Error::Overflow("rational sub"))
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.0.checked_mul(&rhs.0).map(Rational).ok_or(Error::Overflow("rational mul"))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::InvalidArgument("division by zero".into()));
        }
        self.0.checked_div(&rhs.0).map(Rational).ok_or(Error::Overflow("rational div"))
    }

    /// Smallest integer `>= self`.
    pub fn ceil(&self) -> i128 {
        self.0.ceil().to_integer()
    }

    /// Whether `self` lies in the open interval (0, 1).
    pub fn in_open_unit(&self) -> bool {
        self.is_positive() && *self < Rational::ONE
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::ZERO
    }
}

impl From<Ratio<i128>> for Rational {
    fn from(r: Ratio<i128>) -> Self {
        Rational(r)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `a/b` or a bare integer.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidArgument(format!("not a rational: {s:?}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: i128 = n.trim().parse().map_err(|_| bad())?;
                let d: i128 = d.trim().parse().map_err(|_| bad())?;
                Rational::new(n, d)
            }
            None => s.parse::<i128>().map(Rational::from_integer).map_err(|_| bad()),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_reduces() {
        let r: Rational = "6/8".parse().unwrap();
        assert_eq!((r.numer(), r.denom()), (3, 4));
        assert_eq!("3".parse::<Rational>().unwrap(), Rational::from_integer(3));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let tiny = Rational::pow2_neg(120).unwrap();
        let other = Rational::new(1, 3i128.pow(40)).unwrap();
        assert_eq!(tiny.checked_add(&other), Err(Error::Overflow("rational add")));
        assert!(Rational::pow2_neg(127).is_err());
    }

    #[test]
    fn ceil_and_unit_interval() {
        assert_eq!("7/2".parse::<Rational>().unwrap().ceil(), 4);
        assert_eq!(Rational::from_integer(4).ceil(), 4);
        assert!("1/2".parse::<Rational>().unwrap().in_open_unit());
        assert!(!Rational::ONE.in_open_unit());
        assert!(!Rational::ZERO.in_open_unit());
    }

    #[test]
    fn serde_as_string() {
        let r = Rational::new(3, 2).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, "\"3/2\"");
        assert_eq!(serde_json::from_str::<Rational>(&s).unwrap(), r);
    }
}
