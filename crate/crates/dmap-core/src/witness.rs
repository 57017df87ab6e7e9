//! Piecewise-linear circle maps certifying the degree of a cycle.
//!
//! For a cycle with crossings at `i₁ < … < i_η`, split the circle at the
//! midpoints of the crossing gaps, send each midpoint to 0 and each cycle
//! point to its image, and interpolate linearly. Each of the η pieces wraps
//! the circle exactly once, so the map has degree η and agrees with the
//! base map on the cycle.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::orbit::Cycle;
use crate::rational::Rational;

/// A piecewise-linear degree-positive circle map, stored as breakpoints
/// `(position, value)` with strictly increasing positions in `[0, 1)`.
///
/// Between consecutive breakpoints (cyclically) the map interpolates the
/// lift that increases by `(value difference) mod 1`, with a full turn when
/// the values agree. Every such map is continuous; total winding is the
/// number of non-increasing value steps around the circle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessMap {
    breakpoints: Vec<(Rational, Rational)>,
}

impl WitnessMap {
    /// Validates raw breakpoints: nonempty, positions strictly increasing.
    /// Duplicate positions would make the map discontinuous.
    pub fn new(breakpoints: Vec<(Rational, Rational)>) -> Result<Self> {
        if breakpoints.is_empty() {
            return Err(Error::InvalidMap("no breakpoints".into()));
        }
        for pair in breakpoints.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::InvalidMap(format!(
                    "two values at position {}",
                    pair[0].0
                )));
            }
            if pair[0].0 > pair[1].0 {
                return Err(Error::InvalidMap("breakpoints not sorted".into()));
            }
        }
        Ok(Self { breakpoints })
    }

    pub fn breakpoints(&self) -> &[(Rational, Rational)] {
        &self.breakpoints
    }

    /// Total winding of the lift around the circle, always a positive
    /// integer: each segment lifts by the fractional value difference, so
    /// the wraps are exactly the non-increasing steps.
    pub fn winding_number(&self) -> usize {
        let n = self.breakpoints.len();
        (0..n)
            .filter(|&j| {
                let v = &self.breakpoints[j].1;
                let w = &self.breakpoints[(j + 1) % n].1;
                w <= v
            })
            .count()
    }

    /// Evaluates the map at any circle point.
    pub fn eval(&self, x: &Rational) -> Rational {
        let n = self.breakpoints.len();
        // Last breakpoint at position <= x, else wrap to the final one.
        let idx = match self
            .breakpoints
            .binary_search_by(|(pos, _)| pos.cmp(x))
        {
            Ok(j) => return self.breakpoints[j].1.clone(),
            Err(0) => n - 1,
            Err(j) => j - 1,
        };
        let (x0, v0) = &self.breakpoints[idx];
        let (x1, v1) = &self.breakpoints[(idx + 1) % n];

        // Segment span and offset, unwrapped across 0 where needed. A
        // single-breakpoint map has one segment spanning the whole circle.
        let span = full_turn_gap(x0, x1);
        let offset = circle_gap(x0, x);
        let rise = full_turn_gap(v0, v1);

        // value = v0 + rise * offset / span  (mod 1)
        let num = v0.numer() * &span.0 * &rise.1 * &offset.1
            + &rise.0 * &offset.0 * &span.1 * v0.denom();
        let den = v0.denom() * &span.0 * &rise.1 * &offset.1;
        debug_assert!(!den.is_zero());
        Rational::new(num, den).expect("positive denominator")
    }
}

/// Counterclockwise gap from `a` to `b` as an unreduced fraction; a full
/// turn when the points coincide is never needed here (`a != b`).
fn circle_gap(a: &Rational, b: &Rational) -> (BigUint, BigUint) {
    let den = a.denom() * b.denom();
    let from = a.numer() * b.denom();
    let to = b.numer() * a.denom();
    if to >= from {
        (to - from, den)
    } else {
        (&den + to - from, den)
    }
}

/// Gap from `a` counterclockwise to `b`, reading coincident points as a
/// full turn. Used both for lift rises and for the span of a segment.
fn full_turn_gap(a: &Rational, b: &Rational) -> (BigUint, BigUint) {
    let (num, den) = circle_gap(a, b);
    if num.is_zero() {
        (den.clone(), den)
    } else {
        (num, den)
    }
}

/// Midpoint of the counterclockwise arc from `a` to `b`.
fn arc_midpoint(a: &Rational, b: &Rational) -> Rational {
    let (gap_num, gap_den) = circle_gap(a, b);
    // a + gap/2
    let num = a.numer() * &gap_den * 2u32 + &gap_num * a.denom();
    let den = a.denom() * gap_den * 2u32;
    Rational::new(num, den).expect("positive denominator")
}

/// The explicit piecewise-linear map of minimal degree agreeing with the
/// base map on the cycle. Undefined for fixed points, where the base map
/// itself already realizes degree 0.
pub fn witness_map(cycle: &Cycle) -> Result<WitnessMap> {
    let n = cycle.len();
    if n <= 1 {
        return Err(Error::DegenerateWitness);
    }
    let crossings = cycle.crossings();
    debug_assert!(!crossings.is_empty(), "multi-point cycles have crossings");

    let mut breakpoints: Vec<(Rational, Rational)> = Vec::with_capacity(n + crossings.count());
    for (r, point) in cycle.points().iter().enumerate() {
        let image = cycle.point(cycle.sigma_of(r + 1)).clone();
        breakpoints.push((point.clone(), image));
    }
    for &i in crossings.indices() {
        let a = cycle.point(i);
        let b = cycle.point(if i == n { 1 } else { i + 1 });
        breakpoints.push((arc_midpoint(a, b), Rational::zero()));
    }
    breakpoints.sort_by(|(p, _), (q, _)| p.cmp(q));
    WitnessMap::new(breakpoints)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::DigitWord;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn cycle_of_points(base: u32, pts: &[&str]) -> Cycle {
        let pts: Vec<Rational> = pts.iter().map(|s| q(s)).collect();
        Cycle::from_points(&pts, base).unwrap()
    }

    #[test]
    fn witness_for_three_sevenths_cycle() {
        let c = cycle_of_points(2, &["3/7", "5/7", "6/7"]);
        let f = witness_map(&c).unwrap();
        assert_eq!(f.winding_number(), 1);
        // Agrees with the doubling map on the cycle.
        assert_eq!(f.eval(&q("5/7")), q("3/7"));
        assert_eq!(f.eval(&q("3/7")), q("6/7"));
        assert_eq!(f.eval(&q("6/7")), q("5/7"));
        // Off-cycle samples of the interpolation.
        assert_eq!(f.eval(&q("1/2")), q("13/14"));
        assert_eq!(f.eval(&q("4/7")), Rational::zero());
        assert_eq!(f.eval(&Rational::zero()), q("3/4"));
    }

    #[test]
    fn witness_for_degree_two_cycle_under_tripling() {
        let c = cycle_of_points(3, &["1/5", "2/5", "3/5", "4/5"]);
        let f = witness_map(&c).unwrap();
        assert_eq!(f.winding_number(), 2);
        assert_eq!(f.eval(&q("4/5")), q("2/5"));
        for p in c.points() {
            assert_eq!(f.eval(p), p.dmap_step(3).unwrap());
        }
        // Midpoints of the two crossing gaps hit 0.
        assert_eq!(f.eval(&q("3/10")), Rational::zero());
        assert_eq!(f.eval(&q("7/10")), Rational::zero());
    }

    #[test]
    fn witness_winding_equals_crossing_count_for_0011() {
        let c = Cycle::from_word(&DigitWord::parse(2, "0011").unwrap()).unwrap();
        assert_eq!(witness_map(&c).unwrap().winding_number(), 2);
    }

    #[test]
    fn identity_like_single_piece_has_degree_one() {
        let id = WitnessMap::new(vec![(Rational::zero(), Rational::zero())]).unwrap();
        assert_eq!(id.winding_number(), 1);
        assert_eq!(id.eval(&q("3/8")), q("3/8"));
        assert_eq!(id.eval(&q("12/13")), q("12/13"));
    }

    #[test]
    fn fixed_point_has_no_witness() {
        let c = Cycle::from_points(&[Rational::zero()], 2).unwrap();
        assert!(matches!(witness_map(&c), Err(Error::DegenerateWitness)));
    }

    #[test]
    fn invalid_breakpoints_rejected() {
        assert!(WitnessMap::new(vec![]).is_err());
        assert!(WitnessMap::new(vec![
            (q("1/3"), q("1/2")),
            (q("1/3"), q("2/3")),
        ])
        .is_err());
        assert!(WitnessMap::new(vec![
            (q("2/3"), q("1/2")),
            (q("1/3"), q("2/3")),
        ])
        .is_err());
    }

    #[test]
    fn wrap_segment_interpolates_across_zero() {
        // Two breakpoints; the wrap segment from 3/4 back to 1/4 spans 0.
        let f = WitnessMap::new(vec![(q("1/4"), q("1/2")), (q("3/4"), Rational::zero())]).unwrap();
        // Wrap segment: from (3/4, 0) to (5/4, 1/2): at x = 0, halfway.
        assert_eq!(f.eval(&Rational::zero()), q("1/4"));
        assert_eq!(f.winding_number(), 1);
    }
}
