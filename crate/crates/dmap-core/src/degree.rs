//! Crossings, degree, digit portraits and generated partitions.
//!
//! Sort the points of a cycle, take consecutive pairs (including the wrap
//! pair), and call a pair a crossing when the images strictly reverse:
//! `0 < d·c_{i+1} (mod 1) < d·c_i (mod 1) < 1`. The number of crossings
//! equals the degree of the cycle. All of this applies verbatim to the
//! sorted points of a precycle, except that a degree reported for a precycle
//! is by definition its crossing number.

use crate::error::{Error, Result};
use crate::orbit::{Cycle, Precycle};
use crate::rational::Rational;

/// Sorted 1-based positions `i` at which `(c_i, c_{i+1})` is a crossing;
/// `i = n` denotes the wrap pair `(c_n, c₁)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingSet {
    indices: Vec<usize>,
}

impl CrossingSet {
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn count(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// The counting map `F(j) = |C ∩ [0, (j+1)/d)|` of a cycle, together with
/// the digit statistic it carries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitPortrait {
    base: u32,
    values: Vec<usize>,
}

impl DigitPortrait {
    pub fn new(base: u32, values: Vec<usize>) -> Result<Self> {
        crate::rational::check_base(base)?;
        if values.len() != base as usize {
            return Err(Error::InvalidPortrait(format!(
                "expected {base} values, got {}",
                values.len()
            )));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidPortrait("values must be non-decreasing".into()));
        }
        Ok(Self { base, values })
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    /// `F(0), …, F(d-1)`.
    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// Number of distinct positive values of `F`; equivalently the number of
    /// distinct leading digits over the set.
    pub fn dig(&self) -> usize {
        let mut distinct = 0;
        let mut prev = 0;
        for &v in &self.values {
            if v > prev {
                distinct += 1;
                prev = v;
            }
        }
        distinct
    }
}

/// The ordered blocks `P₁, …, P_m` generated by a cycle, with the first
/// crossing position `i₁`. Blocks hold 1-based point positions sorted
/// increasingly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionSpec {
    blocks: Vec<Vec<usize>>,
    i1: usize,
}

impl PartitionSpec {
    pub fn new(blocks: Vec<Vec<usize>>, i1: usize) -> Self {
        Self { blocks, i1 }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn i1(&self) -> usize {
        self.i1
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }
}

/// Core crossing scan over sorted points. Index arithmetic is 1-based.
fn crossing_indices(points: &[Rational], base: u32) -> Vec<usize> {
    let n = points.len();
    let images: Vec<Rational> = points
        .iter()
        .map(|p| p.dmap_step(base).expect("base validated at construction"))
        .collect();
    (1..=n)
        .filter(|&i| {
            let current = &images[i - 1];
            let next = &images[i % n];
            !next.is_zero() && next < current
        })
        .collect()
}

fn portrait_values(points: &[Rational], base: u32) -> Vec<usize> {
    let mut per_digit = vec![0usize; base as usize];
    for p in points {
        per_digit[p.leading_digit(base) as usize] += 1;
    }
    let mut running = 0;
    per_digit
        .iter()
        .map(|&c| {
            running += c;
            running
        })
        .collect()
}

/// Blocks of successor values cut at the crossing positions `i₁ < … < i_m`:
/// `P_t = {σ(r) : i_t < r ≤ i_{t+1}}` for `t < m`, and the wrap block
/// `P_m = {σ(r) : i_m < r ≤ n} ∪ {σ(r) : 1 ≤ r ≤ i₁}`.
fn partition_blocks(successor: &[usize], crossings: &[usize]) -> Result<PartitionSpec> {
    let n = successor.len();
    let m = crossings.len();
    if m == 0 {
        return Err(Error::NoCrossings);
    }
    let mut blocks = Vec::with_capacity(m);
    for t in 0..m {
        let mut block: Vec<usize> = if t + 1 < m {
            (crossings[t] + 1..=crossings[t + 1])
                .map(|r| successor[r - 1])
                .collect()
        } else {
            (crossings[m - 1] + 1..=n)
                .chain(1..=crossings[0])
                .map(|r| successor[r - 1])
                .collect()
        };
        block.sort_unstable();
        blocks.push(block);
    }
    Ok(PartitionSpec::new(blocks, crossings[0]))
}

impl Cycle {
    pub fn crossings(&self) -> CrossingSet {
        CrossingSet {
            indices: crossing_indices(self.points(), self.base()),
        }
    }

    /// The degree of the cycle: its crossing number.
    pub fn degree(&self) -> usize {
        self.crossings().count()
    }

    pub fn digit_portrait(&self) -> DigitPortrait {
        DigitPortrait {
            base: self.base(),
            values: portrait_values(self.points(), self.base()),
        }
    }

    /// Number of distinct digits appearing in the expansions of the points.
    pub fn dig(&self) -> usize {
        self.digit_portrait().dig()
    }

    /// The partition generated by the cycle; undefined for fixed points.
    pub fn partition(&self) -> Result<PartitionSpec> {
        partition_blocks(self.sigma(), self.crossings().indices())
    }
}

impl Precycle {
    pub fn crossings(&self) -> CrossingSet {
        CrossingSet {
            indices: crossing_indices(self.points(), self.base()),
        }
    }

    /// The crossing number, reported as the degree of the precycle.
    pub fn degree(&self) -> usize {
        self.crossings().count()
    }

    pub fn digit_portrait(&self) -> DigitPortrait {
        DigitPortrait {
            base: self.base(),
            values: portrait_values(self.points(), self.base()),
        }
    }

    pub fn dig(&self) -> usize {
        self.digit_portrait().dig()
    }

    /// Blocks cut from the successor map at the crossing positions. The
    /// successor map of a proper precycle is not injective, so the blocks
    /// may repeat values and need not partition `{1..n}`.
    pub fn partition(&self) -> Result<PartitionSpec> {
        partition_blocks(self.successor(), self.crossings().indices())
    }
}
