//! Cycles and precycles of the `d`-map as structured objects.
//!
//! A cycle is a finite set on which the map acts as a transitive
//! permutation; a precycle is the full forward orbit of a rational point (a
//! transient of length `n₁` feeding a cycle of length `n₂`).
//!
//! Indexing convention: points are sorted increasingly and indexed `1..=n`,
//! so `sigma(r)` and crossing positions can be compared with pencil-and-paper
//! computations directly. Slice accesses subtract one.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::rational::{check_base, Rational};
use crate::word::DigitWord;

/// A finite invariant set on which the `d`-map is a transitive permutation.
#[derive(Clone, PartialEq, Eq)]
pub struct Cycle {
    base: u32,
    points: Vec<Rational>,
    /// `sigma[r - 1]` is the 1-based sorted position of the image of the
    /// r-th smallest point.
    sigma: Vec<usize>,
}

impl Cycle {
    /// The cycle swept out by all rotations of a primitive word.
    ///
    /// The all-`(d-1)` word of length 1 is accepted and yields `{0}`; longer
    /// constant words are not primitive.
    pub fn from_word(word: &DigitWord) -> Result<Self> {
        if !word.is_primitive() {
            return Err(Error::NotPrimitive(word.to_string()));
        }
        let base = word.base();
        let n = word.len();
        let modulus = BigUint::from(base).pow(n as u32) - BigUint::one();

        // Rotation i+1 is the image of rotation i, so the successor map can
        // be read off without re-applying the map.
        let mut value = word.as_integer() % &modulus;
        let mut rotations = Vec::with_capacity(n);
        for i in 0..n {
            rotations.push((Rational::new(value.clone(), modulus.clone())?, i));
            value = value * base % &modulus;
        }
        rotations.sort();

        if n > 1 {
            for pair in rotations.windows(2) {
                if pair[0].0 == pair[1].0 {
                    // Unreachable for primitive words: distinct rotations
                    // have distinct integer numerators below the modulus.
                    return Err(Error::NotPrimitive(word.to_string()));
                }
            }
        }

        let mut position_of_rotation = vec![0usize; n];
        for (pos, &(_, rot)) in rotations.iter().enumerate() {
            position_of_rotation[rot] = pos + 1;
        }
        let sigma = rotations
            .iter()
            .map(|&(_, rot)| position_of_rotation[(rot + 1) % n])
            .collect();
        Ok(Self {
            base,
            points: rotations.into_iter().map(|(p, _)| p).collect(),
            sigma,
        })
    }

    /// Validates that the given set is a cycle and builds it. The error
    /// names the first point whose image leaves the set.
    pub fn from_points(points: &[Rational], base: u32) -> Result<Self> {
        check_base(base)?;
        if points.is_empty() {
            return Err(Error::EmptySet);
        }
        let mut sorted = points.to_vec();
        sorted.sort();
        sorted.dedup();
        let sigma = successor_map(&sorted, base)?;
        let n = sorted.len();

        // Transitive permutation: following sigma from position 1 must walk
        // through all n positions and close up.
        let mut seen = vec![false; n];
        let mut r = 1usize;
        for _ in 0..n {
            if seen[r - 1] {
                return Err(Error::NotTransitive(base));
            }
            seen[r - 1] = true;
            r = sigma[r - 1];
        }
        if r != 1 || seen.iter().any(|&s| !s) {
            return Err(Error::NotTransitive(base));
        }
        Ok(Self {
            base,
            points: sorted,
            sigma,
        })
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Sorted points `c₁ < c₂ < … < c_n`.
    pub fn points(&self) -> &[Rational] {
        &self.points
    }

    /// The permutation as 1-based image positions.
    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn sigma_of(&self, r: usize) -> usize {
        self.sigma[r - 1]
    }

    pub fn point(&self, r: usize) -> &Rational {
        &self.points[r - 1]
    }

    /// The lexicographically smallest rotation of the cycle's word: the
    /// expansion of the smallest point. This is the canonical identifier
    /// used for deduplication and serialization.
    pub fn word(&self) -> DigitWord {
        self.points[0]
            .expansion(self.base, self.points.len())
            .expect("base already validated")
    }
}

impl std::fmt::Debug for Cycle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Cycle(base {}, {:?})", self.base, self.points)
    }
}

/// True when the `d`-map permutes the set transitively.
pub fn is_cycle(points: &[Rational], base: u32) -> Result<bool> {
    check_base(base)?;
    if points.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(matches!(Cycle::from_points(points, base), Ok(_)))
}

/// The forward orbit of a rational point: `n₁` transient points feeding a
/// cycle of `n₂` points.
#[derive(Clone, PartialEq, Eq)]
pub struct Precycle {
    base: u32,
    points: Vec<Rational>,
    /// `successor[r - 1]` is the 1-based sorted position of the image of the
    /// r-th smallest point. Not a permutation when `n₁ > 0`: one position
    /// has no preimage and one has two.
    successor: Vec<usize>,
    preperiod_len: usize,
    period_len: usize,
}

/// The forward orbit of `x` under the `d`-map.
pub fn orbit(x: &Rational, base: u32) -> Result<Precycle> {
    check_base(base)?;
    let mut seen: HashMap<Rational, usize> = HashMap::new();
    let mut trail = Vec::new();
    let mut point = x.clone();
    let (preperiod_len, period_len) = loop {
        if let Some(&start) = seen.get(&point) {
            break (start, trail.len() - start);
        }
        seen.insert(point.clone(), trail.len());
        trail.push(point.clone());
        point = point.dmap_step(base)?;
    };

    let mut points = trail;
    points.sort();
    let successor = successor_map(&points, base)?;
    Ok(Precycle {
        base,
        points,
        successor,
        preperiod_len,
        period_len,
    })
}

impl Precycle {
    /// Validates that a point set is a single forward orbit and builds it.
    pub fn from_points(points: &[Rational], base: u32) -> Result<Self> {
        check_base(base)?;
        if points.is_empty() {
            return Err(Error::EmptySet);
        }
        let mut sorted = points.to_vec();
        sorted.sort();
        sorted.dedup();
        let successor = successor_map(&sorted, base)?;
        let n = sorted.len();

        let mut preimages = vec![0usize; n];
        for &s in &successor {
            preimages[s - 1] += 1;
        }
        let heads: Vec<usize> = (1..=n).filter(|&r| preimages[r - 1] == 0).collect();
        let head = match heads.len() {
            0 => 1, // closed under the map with no free end: must be a cycle
            1 => heads[0],
            _ => return Err(Error::NotSingleOrbit),
        };

        // The walk from the head must cover every point.
        let mut seen = vec![false; n];
        let mut r = head;
        let (preperiod_len, period_len) = loop {
            if seen[r - 1] {
                // First revisit closes the cycle; everything before it on
                // the walk is transient.
                let mut s = head;
                let mut steps = 0;
                while s != r {
                    s = successor[s - 1];
                    steps += 1;
                }
                let visited = seen.iter().filter(|&&v| v).count();
                break (steps, visited - steps);
            }
            seen[r - 1] = true;
            r = successor[r - 1];
        };
        if seen.iter().any(|&s| !s) {
            return Err(Error::NotSingleOrbit);
        }
        Ok(Self {
            base,
            points: sorted,
            successor,
            preperiod_len,
            period_len,
        })
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[Rational] {
        &self.points
    }

    pub fn successor(&self) -> &[usize] {
        &self.successor
    }

    pub fn preperiod_len(&self) -> usize {
        self.preperiod_len
    }

    pub fn period_len(&self) -> usize {
        self.period_len
    }

    /// The generating point: the unique point with no preimage inside the
    /// set, or the smallest point when the orbit is already a cycle.
    pub fn head(&self) -> &Rational {
        if self.preperiod_len == 0 {
            return &self.points[0];
        }
        let n = self.points.len();
        let mut has_preimage = vec![false; n];
        for &s in &self.successor {
            has_preimage[s - 1] = true;
        }
        let r = (1..=n)
            .find(|&r| !has_preimage[r - 1])
            .expect("transient orbit has a free end");
        &self.points[r - 1]
    }

    /// Transient digits followed by one period of the cycle digits.
    pub fn word(&self) -> DigitWord {
        self.head()
            .expansion(self.base, self.preperiod_len + self.period_len)
            .expect("base already validated")
    }

    /// The underlying cycle when the orbit has no transient part.
    pub fn as_cycle(&self) -> Option<Cycle> {
        if self.preperiod_len == 0 {
            Cycle::from_points(&self.points, self.base).ok()
        } else {
            None
        }
    }
}

impl std::fmt::Debug for Precycle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Precycle(base {}, n1 {}, n2 {}, {:?})",
            self.base, self.preperiod_len, self.period_len, self.points
        )
    }
}

/// 1-based image positions for a sorted, map-closed point set.
fn successor_map(sorted: &[Rational], base: u32) -> Result<Vec<usize>> {
    sorted
        .iter()
        .map(|p| {
            let image = p.dmap_step(base)?;
            sorted
                .binary_search(&image)
                .map(|i| i + 1)
                .map_err(|_| Error::NotInvariant {
                    point: p.to_string(),
                    base,
                })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn qs(list: &[&str]) -> Vec<Rational> {
        list.iter().map(|s| q(s)).collect()
    }

    fn w(base: u32, s: &str) -> DigitWord {
        DigitWord::parse(base, s).unwrap()
    }

    #[test]
    fn orbit_of_five_sixths() {
        let pre = orbit(&q("5/6"), 2).unwrap();
        assert_eq!(pre.points(), qs(&["1/3", "2/3", "5/6"]).as_slice());
        assert_eq!((pre.preperiod_len(), pre.period_len()), (1, 2));
        assert_eq!(pre.head(), &q("5/6"));
        assert_eq!(pre.word(), w(2, "110"));
    }

    #[test]
    fn orbit_of_zero() {
        let pre = orbit(&Rational::zero(), 2).unwrap();
        assert_eq!(pre.points(), &[Rational::zero()]);
        assert_eq!((pre.preperiod_len(), pre.period_len()), (0, 1));
    }

    #[test]
    fn orbit_of_a_periodic_point_is_its_cycle() {
        let pre = orbit(&q("11/242"), 3).unwrap();
        let cycle = Cycle::from_word(&w(3, "00102")).unwrap();
        assert_eq!(pre.points(), cycle.points());
        assert_eq!((pre.preperiod_len(), pre.period_len()), (0, 5));
        assert_eq!(pre.as_cycle().unwrap(), cycle);
    }

    #[test]
    fn cycle_from_word_001() {
        let cycle = Cycle::from_word(&w(2, "001")).unwrap();
        assert_eq!(cycle.points(), qs(&["1/7", "2/7", "4/7"]).as_slice());
    }

    #[test]
    fn fixed_point_cycle() {
        let cycle = Cycle::from_word(&w(2, "0")).unwrap();
        assert_eq!(cycle.points(), &[Rational::zero()]);
        assert_eq!(cycle.sigma(), &[1]);
        // The other 1-digit word names the same fixed point.
        assert_eq!(Cycle::from_word(&w(2, "1")).unwrap(), cycle);
    }

    #[test]
    fn cycle_0011_sigma() {
        let cycle = Cycle::from_word(&w(2, "0011")).unwrap();
        assert_eq!(
            cycle.points(),
            qs(&["1/5", "2/5", "3/5", "4/5"]).as_slice()
        );
        assert_eq!(cycle.sigma(), &[2, 4, 1, 3]);
        assert_eq!(cycle.word(), w(2, "0011"));
    }

    #[test]
    fn nonprimitive_word_rejected() {
        assert!(matches!(
            Cycle::from_word(&w(2, "0101")),
            Err(Error::NotPrimitive(_))
        ));
        assert!(matches!(
            Cycle::from_word(&w(3, "22")),
            Err(Error::NotPrimitive(_))
        ));
    }

    #[test]
    fn is_cycle_checks() {
        assert!(is_cycle(&qs(&["3/7", "5/7", "6/7"]), 2).unwrap());
        assert!(!is_cycle(&qs(&["1/3"]), 2).unwrap());
        assert!(is_cycle(&[Rational::zero()], 9).unwrap());
        // Union of two cycles is invariant but not transitive.
        assert!(!is_cycle(&qs(&["1/3", "2/3", "1/7", "2/7", "4/7"]), 2).unwrap());
        assert!(is_cycle(&[], 2).is_err());
    }

    #[test]
    fn from_points_names_escaping_point() {
        match Cycle::from_points(&qs(&["1/3", "1/5"]), 2) {
            Err(Error::NotInvariant { point, base }) => {
                assert_eq!(base, 2);
                assert_eq!(point, "1/5");
            }
            other => panic!("expected escape error, got {other:?}"),
        }
    }

    #[test]
    fn precycle_from_points_matches_orbit() {
        let from_orbit = orbit(&q("5/6"), 2).unwrap();
        let from_points = Precycle::from_points(&qs(&["5/6", "2/3", "1/3"]), 2).unwrap();
        assert_eq!(from_orbit, from_points);

        // Two disjoint cycles are not a single forward orbit.
        assert!(matches!(
            Precycle::from_points(&qs(&["1/3", "2/3", "1/7", "2/7", "4/7"]), 2),
            Err(Error::NotSingleOrbit)
        ));
    }

    #[test]
    fn orbit_size_matches_decomposition() {
        for (num, den, base) in [(5u64, 6u64, 2u32), (1, 4, 2), (7, 12, 2), (5, 18, 3), (3, 20, 5)] {
            let x = Rational::from_ints(num, den).unwrap();
            let (pre, per) = x.decompose(base).unwrap();
            let orb = orbit(&x, base).unwrap();
            assert_eq!(orb.len(), pre.len() + per.len());
            assert_eq!(orb.preperiod_len(), pre.len());
            assert_eq!(orb.period_len(), per.len());
        }
    }
}
