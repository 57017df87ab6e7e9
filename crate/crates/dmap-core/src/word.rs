//! Finite base-`d` digit words and their interplay with circle points.
//!
//! A periodic point of the `d`-map is exactly a repeating word: the value of
//! `(0.w̄)_d` is `int_d(w) / (dⁿ - 1)`. Shifting the word left is one step of
//! the map.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{check_base, Rational};

/// A finite sequence of digits in `{0, …, base-1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DigitWord {
    base: u32,
    digits: Vec<u32>,
}

impl DigitWord {
    pub fn new(base: u32, digits: Vec<u32>) -> Result<Self> {
        check_base(base)?;
        for &digit in &digits {
            if digit >= base {
                return Err(Error::InvalidDigit { digit, base });
            }
        }
        Ok(Self { base, digits })
    }

    /// Parses the textual form: bare digit characters for bases up to 10,
    /// comma-separated integers beyond.
    pub fn parse(base: u32, s: &str) -> Result<Self> {
        check_base(base)?;
        let digits = if base <= 10 {
            s.trim()
                .chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::InvalidInput(format!("bad digit {c:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::InvalidInput(format!("bad digit {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Self::new(base, digits)
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// True when the word has no proper period: there is no `k < n` with
    /// `digits[i] = digits[(i + k) mod n]` for all `i`.
    pub fn is_primitive(&self) -> bool {
        is_primitive(&self.digits)
    }

    /// Left rotation by `shift` places.
    pub fn rotated(&self, shift: usize) -> Self {
        let n = self.digits.len();
        if n == 0 {
            return self.clone();
        }
        let shift = shift % n;
        let mut digits = Vec::with_capacity(n);
        digits.extend_from_slice(&self.digits[shift..]);
        digits.extend_from_slice(&self.digits[..shift]);
        Self {
            base: self.base,
            digits,
        }
    }

    /// The integer with these digits in base `d`.
    pub fn as_integer(&self) -> BigUint {
        self.digits
            .iter()
            .fold(BigUint::zero(), |acc, &b| acc * self.base + b)
    }

    /// The value of the purely periodic expansion `(0.w̄)_d`, namely
    /// `int_d(w) / (dⁿ - 1)`. The all-`(d-1)` word evaluates to 1 and is
    /// therefore canonicalized to 0.
    pub fn periodic_value(&self) -> Result<Rational> {
        if self.digits.is_empty() {
            return Err(Error::InvalidInput("empty word has no value".into()));
        }
        let den = BigUint::from(self.base).pow(self.digits.len() as u32) - BigUint::one();
        Rational::new(self.as_integer(), den)
    }
}

pub(crate) fn is_primitive(digits: &[u32]) -> bool {
    let n = digits.len();
    if n == 0 {
        return false;
    }
    for period in 1..n {
        if n % period == 0 && digits.iter().enumerate().all(|(i, &b)| b == digits[i % period]) {
            return false;
        }
    }
    true
}

impl fmt::Display for DigitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.base <= 10 {
            for &b in &self.digits {
                write!(f, "{b}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.digits.iter().map(|b| b.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl fmt::Debug for DigitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})_{}", self.base)
    }
}

impl Rational {
    /// First `len` digits of the canonical base-`d` expansion (the one with
    /// no infinite tail of `d - 1`).
    pub fn expansion(&self, base: u32, len: usize) -> Result<DigitWord> {
        check_base(base)?;
        let mut digits = Vec::with_capacity(len);
        let mut num = self.numer().clone();
        let den = self.denom().clone();
        for _ in 0..len {
            let scaled = num * base;
            let digit = &scaled / &den;
            num = scaled - &digit * &den;
            digits.push(u32::try_from(digit).expect("digit fits in u32"));
        }
        DigitWord::new(base, digits)
    }

    /// Splits the expansion of the point into its minimal preperiodic part
    /// and minimal period: `x = (0.pre p̄er)_d` with `|pre|` and `|per|` both
    /// as small as possible. `|pre| = 0` exactly when the denominator is
    /// coprime to the base.
    pub fn decompose(&self, base: u32) -> Result<(DigitWord, DigitWord)> {
        check_base(base)?;
        let mut seen: HashMap<Rational, usize> = HashMap::new();
        let mut trail = Vec::new();
        let mut x = self.clone();
        let (preperiod, period) = loop {
            if let Some(&start) = seen.get(&x) {
                break (start, trail.len() - start);
            }
            seen.insert(x.clone(), trail.len());
            trail.push(x.clone());
            x = x.dmap_step(base)?;
        };
        let pre = self.expansion(base, preperiod)?;
        let per = trail[preperiod].expansion(base, period)?;
        Ok((pre, per))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn w(base: u32, s: &str) -> DigitWord {
        DigitWord::parse(base, s).unwrap()
    }

    #[test]
    fn periodic_values() {
        assert_eq!(w(2, "10").periodic_value().unwrap(), q("2/3"));
        assert_eq!(w(7, "0").periodic_value().unwrap(), Rational::zero());
        assert_eq!(w(3, "00102").periodic_value().unwrap(), q("11/242"));
        // 9 + 2 = 11 over 3^5 - 1 = 242, and five shifts return to the start.
        let mut x = w(3, "00102").periodic_value().unwrap();
        for _ in 0..5 {
            x = x.dmap_step(3).unwrap();
        }
        assert_eq!(x, q("11/242"));
    }

    #[test]
    fn all_top_digits_word_is_the_point_zero() {
        assert_eq!(w(2, "111").periodic_value().unwrap(), Rational::zero());
        assert_eq!(w(5, "44").periodic_value().unwrap(), Rational::zero());
    }

    #[test]
    fn expansions() {
        assert_eq!(q("1/3").expansion(2, 4).unwrap(), w(2, "0101"));
        assert_eq!(Rational::zero().expansion(3, 3).unwrap(), w(3, "000"));
        assert_eq!(q("11/242").expansion(3, 5).unwrap(), w(3, "00102"));
        // Terminating expansions get the all-zero tail, not the all-top one.
        assert_eq!(q("1/2").expansion(2, 4).unwrap(), w(2, "1000"));
    }

    #[test]
    fn decompositions() {
        assert_eq!(
            q("5/6").decompose(2).unwrap(),
            (w(2, "1"), w(2, "10"))
        );
        assert_eq!(q("1/3").decompose(2).unwrap(), (w(2, ""), w(2, "01")));
        assert_eq!(q("1/4").decompose(2).unwrap(), (w(2, "01"), w(2, "0")));
        assert_eq!(Rational::zero().decompose(7).unwrap(), (w(7, ""), w(7, "0")));
    }

    #[test]
    fn primitivity() {
        assert!(w(2, "0011").is_primitive());
        assert!(!w(2, "0101").is_primitive());
        assert!(!w(2, "111").is_primitive());
        assert!(w(2, "0").is_primitive());
        assert!(w(4, "0012").is_primitive());
    }

    #[test]
    fn rotation_matches_map_step() {
        for word in [w(2, "0011"), w(3, "00102"), w(4, "0012"), w(2, "1")] {
            let stepped = word.periodic_value().unwrap().dmap_step(word.base()).unwrap();
            assert_eq!(stepped, word.rotated(1).periodic_value().unwrap());
        }
    }

    #[test]
    fn expansion_of_period_inverts_value() {
        // Denominator coprime to the base: one full period of digits
        // recovers the word.
        for (base, s) in [(2, "0011"), (3, "00102"), (5, "1403")] {
            let word = w(base, s);
            let x = word.periodic_value().unwrap();
            assert_eq!(x.expansion(base, word.len()).unwrap(), word);
        }
    }

    #[test]
    fn decompose_is_minimal_for_small_denominators() {
        // Brute force: the decomposition reproduces x and no componentwise
        // smaller (preperiod, period) pair does.
        for den in 1..=60u64 {
            for num in 0..den {
                let x = Rational::from_ints(num, den).unwrap();
                let (pre, per) = x.decompose(2).unwrap();
                let (n1, n2) = (pre.len(), per.len());
                assert_eq!(eventually_periodic_value(&pre, &per).unwrap(), x);
                for a in 0..=n1 {
                    for b in 1..=n2 {
                        if (a, b) == (n1, n2) {
                            continue;
                        }
                        let head = x.expansion(2, a).unwrap();
                        let mut y = x.clone();
                        for _ in 0..a {
                            y = y.dmap_step(2).unwrap();
                        }
                        let tail = y.expansion(2, b).unwrap();
                        let rebuilt = eventually_periodic_value(&head, &tail).unwrap();
                        assert_ne!(rebuilt, x, "({a},{b}) also reproduces {x}");
                    }
                }
            }
        }
    }

    // Test-side helper: the value of (0.pre p̄er)_d.
    fn eventually_periodic_value(pre: &DigitWord, per: &DigitWord) -> Result<Rational> {
        let base = pre.base();
        let d_pow = BigUint::from(base).pow(pre.len() as u32);
        let per_den = BigUint::from(base).pow(per.len() as u32) - BigUint::one();
        let num = pre.as_integer() * &per_den + per.as_integer();
        Rational::new(num, d_pow * per_den)
    }

    #[test]
    fn word_parsing_and_display() {
        assert_eq!(w(2, "0011").to_string(), "0011");
        let wide = DigitWord::new(16, vec![10, 0, 15]).unwrap();
        assert_eq!(wide.to_string(), "10,0,15");
        assert_eq!(DigitWord::parse(16, "10,0,15").unwrap(), wide);
        assert!(DigitWord::parse(2, "012").is_err());
        assert!(DigitWord::new(2, vec![2]).is_err());
    }
}
