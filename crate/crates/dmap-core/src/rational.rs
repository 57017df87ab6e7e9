//! Exact points of the circle `S¹ = ℝ/ℤ`, represented as reduced fractions
//! in `[0, 1)`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A point of the circle as a reduced fraction `num/den` with
/// `0 <= num < den` and `gcd(num, den) = 1`.
///
/// The representative of `x + ℤ` is always taken in `[0, 1)`; in particular
/// the point 1 is identified with 0. Denominators are arbitrary-precision:
/// cycles of length n live on denominators dividing `dⁿ - 1`, which outgrows
/// machine words quickly.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational {
    num: BigUint,
    den: BigUint,
}

impl Rational {
    /// Builds the class of `num/den` in `[0, 1)`, reducing to lowest terms.
    pub fn new(num: BigUint, den: BigUint) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let num = num % &den;
        let g = num.gcd(&den);
        Ok(Self {
            num: num / &g,
            den: den / g,
        })
    }

    pub fn from_ints(num: u64, den: u64) -> Result<Self> {
        Self::new(BigUint::from(num), BigUint::from(den))
    }

    pub fn zero() -> Self {
        Self {
            num: BigUint::zero(),
            den: BigUint::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numer(&self) -> &BigUint {
        &self.num
    }

    pub fn denom(&self) -> &BigUint {
        &self.den
    }

    /// One application of the base-`d` map `x ↦ dx (mod 1)`.
    pub fn dmap_step(&self, base: u32) -> Result<Self> {
        check_base(base)?;
        Self::new(&self.num * base, self.den.clone())
    }

    /// First digit of the base-`d` expansion, i.e. `floor(d · x)`.
    ///
    /// Requires `base >= 2`; the result is always `< base`.
    pub fn leading_digit(&self, base: u32) -> u32 {
        debug_assert!(base >= 2);
        let q = (&self.num * base) / &self.den;
        // x < 1 so the quotient fits in a digit.
        q.try_into().expect("digit fits in u32")
    }

    /// `floor(x · scale)`, the index of the grid cell of width `1/scale`
    /// containing the point.
    pub fn scaled_floor(&self, scale: &BigUint) -> BigUint {
        (&self.num * scale) / &self.den
    }
}

pub(crate) fn check_base(base: u32) -> Result<()> {
    if base < 2 {
        Err(Error::InvalidBase(base))
    } else {
        Ok(())
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse = |t: &str| -> Option<BigUint> { t.trim().parse().ok() };
        let bad = || Error::ParseRational(s.to_owned());
        match s.split_once('/') {
            Some((num, den)) => {
                let num = parse(num).ok_or_else(bad)?;
                let den = parse(den).ok_or_else(bad)?;
                if den.is_zero() {
                    return Err(bad());
                }
                Self::new(num, den)
            }
            None => {
                // Bare integers are circle points too; they all reduce to 0.
                parse(s).ok_or_else(bad)?;
                Ok(Self::zero())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn doubling_three_sevenths() {
        assert_eq!(q("3/7").dmap_step(2).unwrap(), q("6/7"));
    }

    #[test]
    fn zero_is_fixed() {
        assert_eq!(Rational::zero().dmap_step(5).unwrap(), Rational::zero());
    }

    #[test]
    fn tripling_reduces() {
        // 11/242 is 1/22 in lowest terms; one step lands on 3/22 = 33/242.
        assert_eq!(q("11/242").dmap_step(3).unwrap(), q("33/242"));
        assert_eq!(q("11/242"), q("1/22"));
    }

    #[test]
    fn base_below_two_rejected() {
        assert!(matches!(
            q("1/3").dmap_step(1),
            Err(Error::InvalidBase(1))
        ));
    }

    #[test]
    fn one_wraps_to_zero() {
        assert_eq!(Rational::from_ints(7, 7).unwrap(), Rational::zero());
        assert_eq!(Rational::from_ints(9, 4).unwrap(), q("1/4"));
    }

    #[test]
    fn ordering_is_by_value() {
        let mut pts = vec![q("6/7"), q("3/7"), q("5/7")];
        pts.sort();
        assert_eq!(pts, vec![q("3/7"), q("5/7"), q("6/7")]);
    }

    #[test]
    fn leading_digits() {
        assert_eq!(q("3/7").leading_digit(2), 0);
        assert_eq!(q("5/7").leading_digit(2), 1);
        assert_eq!(q("4/5").leading_digit(3), 2);
        assert_eq!(Rational::zero().leading_digit(9), 0);
    }

    #[test]
    fn display_round_trips() {
        for s in ["0/1", "3/7", "164/165"] {
            assert_eq!(q(s).to_string(), s);
        }
        assert_eq!(q("0").to_string(), "0/1");
        assert!( "2/0".parse::<Rational>().is_err());
        assert!("x/3".parse::<Rational>().is_err());
    }
}
