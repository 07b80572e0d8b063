//! Exact non-negative rationals for nearness values and thresholds.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A non-negative rational kept in lowest terms.
///
/// Equality is structural (valid because of the normal form) and ordering
/// uses cross-multiplication in 128-bit arithmetic, so no comparison ever
/// goes through floating point.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Rational {
    numerator: u64,
    denominator: u64,
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Rational {
    pub const ZERO: Rational = Rational {
        numerator: 0,
        denominator: 1,
    };
    pub const ONE: Rational = Rational {
        numerator: 1,
        denominator: 1,
    };

    pub fn new(numerator: u64, denominator: u64) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::InvalidRational(format!("{numerator}/0")));
        }
        Self::reduced(numerator as u128, denominator as u128)
    }

    fn reduced(num: u128, den: u128) -> Result<Self> {
        let g = gcd(num, den).max(1);
        let (num, den) = (num / g, den / g);
        match (u64::try_from(num), u64::try_from(den)) {
            (Ok(numerator), Ok(denominator)) => Ok(Rational {
                numerator,
                denominator,
            }),
            _ => Err(Error::InvalidRational(format!("{num}/{den} overflows"))),
        }
    }

    pub fn numerator(&self) -> u64 {
        self.numerator
    }

    pub fn denominator(&self) -> u64 {
        self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator == 0
    }

    pub fn checked_add(self, rhs: Rational) -> Result<Rational> {
        let num = self.numerator as u128 * rhs.denominator as u128
            + rhs.numerator as u128 * self.denominator as u128;
        let den = self.denominator as u128 * rhs.denominator as u128;
        Self::reduced(num, den)
    }

    /// Divides by a positive integer.
    pub fn checked_div_int(self, divisor: u64) -> Result<Rational> {
        if divisor == 0 {
            return Err(Error::InvalidRational("division by zero".into()));
        }
        Self::reduced(
            self.numerator as u128,
            self.denominator as u128 * divisor as u128,
        )
    }

    /// Lossy conversion for display and statistics only.
    pub fn to_f64(&self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }

    /// Parses a decimal such as `0.20` or `1` into the exact rational it
    /// denotes (`1/5`).
    fn parse_decimal(s: &str) -> Result<Self> {
        let bad = || Error::InvalidRational(s.to_string());
        let (int_part, frac_part) = s.split_once('.').unwrap_or((s, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        let digits = |p: &str| p.bytes().all(|c| c.is_ascii_digit());
        if !digits(int_part) || !digits(frac_part) || frac_part.len() > 18 {
            return Err(bad());
        }
        let scale = 10u128.pow(frac_part.len() as u32);
        let int_val: u128 = if int_part.is_empty() {
            0
        } else {
            int_part.parse().map_err(|_| bad())?
        };
        let frac_val: u128 = if frac_part.is_empty() {
            0
        } else {
            frac_part.parse().map_err(|_| bad())?
        };
        let num = int_val
            .checked_mul(scale)
            .and_then(|v| v.checked_add(frac_val))
            .ok_or_else(bad)?;
        Self::reduced(num, scale)
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::ZERO
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self.numerator as u128 * other.denominator as u128;
        let rhs = other.numerator as u128 * self.denominator as u128;
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for Rational {
    type Output = Rational;

    /// Panics on overflow; use [`Rational::checked_add`] otherwise.
    fn add(self, rhs: Rational) -> Rational {
        self.checked_add(rhs).expect("rational addition overflowed")
    }
}

/// Accepts `num/den`, an integer, or a decimal (`0.20`).
impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n = n
                    .trim()
                    .parse::<u64>()
                    .map_err(|_| Error::InvalidRational(s.to_string()))?;
                let d = d
                    .trim()
                    .parse::<u64>()
                    .map_err(|_| Error::InvalidRational(s.to_string()))?;
                Rational::new(n, d)
            }
            None => Rational::parse_decimal(s),
        }
    }
}

impl TryFrom<String> for Rational {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Rational> for String {
    fn from(r: Rational) -> String {
        r.to_string()
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn lowest_terms() {
        assert_eq!(Rational::new(2, 14).unwrap(), Rational::new(1, 7).unwrap());
        assert_eq!(Rational::new(0, 7).unwrap(), Rational::ZERO);
        assert_eq!(Rational::new(0, 7).unwrap().to_string(), "0/1");
        assert!(Rational::new(1, 0).is_err());
    }

    #[test]
    fn decimals_are_exact() {
        assert_eq!(r("0.20"), Rational::new(1, 5).unwrap());
        assert_eq!(r("0.2"), Rational::new(1, 5).unwrap());
        assert_eq!(r(".05"), Rational::new(1, 20).unwrap());
        assert_eq!(r("1.0"), Rational::ONE);
        assert_eq!(r("1"), Rational::ONE);
        assert_eq!(r("3/15"), Rational::new(1, 5).unwrap());
        for bad in ["", ".", "-0.1", "1/x", "0.2.1", "abc"] {
            assert!(bad.parse::<Rational>().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn ordering_is_exact_at_boundaries() {
        assert!(r("1/7") < r("1/5"));
        assert!(r("2/7") > r("1/5"));
        assert_eq!(r("2/10").cmp(&r("1/5")), Ordering::Equal);
        // 0.1 + 0.2 style float pitfalls cannot occur
        assert_eq!(r("0.1") + r("0.2"), r("0.3"));
    }

    #[test]
    fn arithmetic() {
        assert_eq!(r("1/7") + r("2/7"), r("3/7"));
        assert_eq!(r("3/7").checked_div_int(3).unwrap(), r("1/7"));
        assert!(r("1/2").checked_div_int(0).is_err());
    }
}
