//! Constructive results: a degree-`m` cycle arbitrarily close to any point
//! whose expansion uses `m` digits, and the unique reconstruction of a cycle
//! from its `(partition, i₁, portrait)` key.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::degree::{DigitPortrait, PartitionSpec};
use crate::error::{Error, Result};
use crate::orbit::Cycle;
use crate::rational::{check_base, Rational};
use crate::word::{is_primitive, DigitWord};

/// Input for the explicit cycle construction: a target prefix `α₁…α_q` over
/// a digit set `B = {b₁ < … < b_m}`, and a pad length `N` strictly larger
/// than the multiplicity of every `b_t` in the prefix.
#[derive(Clone, Debug)]
pub struct ApproximationRequest {
    base: u32,
    digit_set: Vec<u32>,
    prefix: Vec<u32>,
    pad: usize,
}

impl ApproximationRequest {
    pub fn new(base: u32, digit_set: Vec<u32>, prefix: Vec<u32>, pad: usize) -> Result<Self> {
        check_base(base)?;
        let mut digits = digit_set;
        digits.sort_unstable();
        let len_before = digits.len();
        digits.dedup();
        if digits.len() != len_before {
            return Err(Error::InvalidInput("repeated digit in digit set".into()));
        }
        if digits.len() < 2 {
            // A single-digit prefix names a fixed point; the construction
            // degenerates there and is rejected outright.
            return Err(Error::DegenerateDigitSet);
        }
        for &digit in &digits {
            if digit >= base {
                return Err(Error::InvalidDigit { digit, base });
            }
        }
        if prefix.is_empty() {
            return Err(Error::InvalidInput("prefix must be nonempty".into()));
        }
        for &a in &prefix {
            if !digits.contains(&a) {
                return Err(Error::InvalidInput(format!(
                    "prefix digit {a} is outside the digit set"
                )));
            }
        }
        for &digit in &digits {
            let multiplicity = prefix.iter().filter(|&&a| a == digit).count();
            if pad <= multiplicity {
                return Err(Error::InsufficientPadding {
                    digit,
                    multiplicity,
                    pad,
                });
            }
        }
        Ok(Self {
            base,
            digit_set: digits,
            prefix,
            pad,
        })
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn digit_set(&self) -> &[u32] {
        &self.digit_set
    }

    pub fn prefix(&self) -> &[u32] {
        &self.prefix
    }

    pub fn pad(&self) -> usize {
        self.pad
    }

    /// Size of the cycle the request produces: `q + 2N(m-1) + 1`.
    pub fn cycle_size(&self) -> usize {
        self.prefix.len() + 2 * self.pad * (self.digit_set.len() - 1) + 1
    }
}

/// Builds the periodic word `α ⟨b_m⟩⟨b₁⟩⟨b_{m-1}⟩⟨b₁⟩…⟨b₂⟩⟨b₁⟩ b_m` (where
/// `⟨b⟩` is `b` repeated `N` times) and returns its value `c` together with
/// its cycle. The cycle has size `q + 2N(m-1) + 1`, degree exactly `m`, and
/// `c` agrees with the prefix to `q` digits, hence lies within `d^{-q}` of
/// the prefix value.
pub fn approximate_with_cycle(request: &ApproximationRequest) -> Result<(Rational, Cycle)> {
    let b = &request.digit_set;
    let m = b.len();
    let pad = request.pad;

    let mut digits = request.prefix.clone();
    for t in (1..m).rev() {
        digits.extend(std::iter::repeat(b[t]).take(pad));
        digits.extend(std::iter::repeat(b[0]).take(pad));
    }
    digits.push(b[m - 1]);
    assert!(
        is_primitive(&digits),
        "padded word must be primitive when the pad exceeds every prefix multiplicity"
    );

    let word = DigitWord::new(request.base, digits)?;
    let c = word.periodic_value()?;
    let cycle = Cycle::from_word(&word)?;
    debug_assert_eq!(cycle.len(), request.cycle_size());
    Ok((c, cycle))
}

/// The reconstruction key of a cycle: everything the uniqueness result
/// needs to rebuild it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleKey {
    pub base: u32,
    pub degree: usize,
    pub size: usize,
    pub partition: PartitionSpec,
    pub portrait: DigitPortrait,
}

impl CycleKey {
    pub fn reconstruct(&self) -> Result<Option<Cycle>> {
        reconstruct_cycle(self.base, self.degree, self.size, &self.partition, &self.portrait)
    }
}

/// Reads the reconstruction key off a cycle with more than one point.
pub fn extract_key(cycle: &Cycle) -> Result<CycleKey> {
    let partition = cycle.partition()?;
    Ok(CycleKey {
        base: cycle.base(),
        degree: cycle.degree(),
        size: cycle.len(),
        partition,
        portrait: cycle.digit_portrait(),
    })
}

/// Rebuilds the unique cycle matching `(d, m, n, P, i₁, F)`, if one exists.
///
/// The successor permutation is forced by `(P, i₁)` (blocks consumed in
/// increasing element order), the leading digits by `F`, and each point by
/// its forced digit word. The candidate is accepted only if every claimed
/// property validates on the result: sorted order matching index order,
/// degree `m`, crossings exactly at `i₁ … i_m`, generated partition `P`,
/// and portrait `F`. Structurally malformed keys are errors; well-formed
/// keys with no matching cycle return `None`.
pub fn reconstruct_cycle(
    base: u32,
    degree: usize,
    size: usize,
    partition: &PartitionSpec,
    portrait: &DigitPortrait,
) -> Result<Option<Cycle>> {
    check_base(base)?;
    let n = size;
    let m = degree;
    let blocks = partition.blocks();
    if m == 0 || blocks.len() != m {
        return Err(Error::InvalidPartition(format!(
            "expected {m} blocks, found {}",
            blocks.len()
        )));
    }
    let mut cover = vec![false; n];
    for block in blocks {
        if block.is_empty() {
            return Err(Error::InvalidPartition("empty block".into()));
        }
        if block.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPartition(
                "block elements must increase strictly".into(),
            ));
        }
        for &r in block {
            if r == 0 || r > n {
                return Err(Error::InvalidPartition(format!("element {r} out of range")));
            }
            if cover[r - 1] {
                return Err(Error::InvalidPartition(format!("element {r} repeated")));
            }
            cover[r - 1] = true;
        }
    }
    if cover.iter().any(|&c| !c) {
        return Err(Error::InvalidPartition(format!("blocks do not cover 1..={n}")));
    }
    let i1 = partition.i1();
    let wrap_block = &blocks[m - 1];
    if i1 == 0 || i1 > wrap_block.len() {
        return Err(Error::InvalidPartition(format!(
            "i1 = {i1} must lie in 1..=|P_m| = {}",
            wrap_block.len()
        )));
    }
    if portrait.base() != base {
        return Err(Error::InvalidPortrait("portrait base mismatch".into()));
    }
    let portrait_values = portrait.values();
    if portrait_values.last() != Some(&n) {
        return Err(Error::InvalidPortrait(format!(
            "top value must equal the cycle size {n}"
        )));
    }

    // Crossing positions forced by the block sizes: i_{t+1} = i_t + |P_t|.
    let mut crossing_positions = Vec::with_capacity(m);
    crossing_positions.push(i1);
    for t in 0..m - 1 {
        crossing_positions.push(crossing_positions[t] + blocks[t].len());
    }
    debug_assert!(*crossing_positions.last().unwrap() <= n);

    // Successor: blocks consumed in increasing element order, the wrap block
    // split between the tail `i_m < r <= n` and the head `r <= i₁`.
    let i_m = crossing_positions[m - 1];
    let mut sigma = vec![0usize; n];
    for r in 1..=n {
        sigma[r - 1] = if r <= i1 {
            wrap_block[r + n - i_m - 1]
        } else if r > i_m {
            wrap_block[r - i_m - 1]
        } else {
            let t = crossing_positions.partition_point(|&i| i < r);
            // i_t < r <= i_{t+1} for the t-th block (1-based t).
            blocks[t - 1][r - crossing_positions[t - 1] - 1]
        };
    }

    // A cycle's successor is a single n-cycle; other permutations cannot
    // come from a transitive orbit.
    let mut visited = vec![false; n];
    let mut r = 1usize;
    let mut count = 0usize;
    while !visited[r - 1] {
        visited[r - 1] = true;
        count += 1;
        r = sigma[r - 1];
    }
    if count != n || r != 1 {
        return Ok(None);
    }

    // Leading digits forced by the portrait: b(r) = j when F(j-1) < r <= F(j).
    let mut leading = vec![0u32; n];
    for r in 1..=n {
        let j = portrait_values.partition_point(|&f| f < r);
        debug_assert!(j < base as usize);
        leading[r - 1] = j as u32;
    }

    // Candidate points: the digit word of c_r reads the leading digits along
    // the successor orbit.
    let modulus = BigUint::from(base).pow(n as u32) - BigUint::one();
    let mut candidates = Vec::with_capacity(n);
    for r in 1..=n {
        let mut value = BigUint::zero();
        let mut s = r;
        for _ in 0..n {
            value = value * base + leading[s - 1];
            s = sigma[s - 1];
        }
        candidates.push(Rational::new(value, modulus.clone())?);
    }

    // Validation, point by point and invariant by invariant.
    if candidates.windows(2).any(|w| w[0] >= w[1]) {
        return Ok(None);
    }
    let cycle = match Cycle::from_points(&candidates, base) {
        Ok(c) => c,
        Err(_) => return Ok(None),
    };
    if cycle.len() != n || cycle.sigma() != sigma.as_slice() {
        return Ok(None);
    }
    if cycle.degree() != m {
        return Ok(None);
    }
    if cycle.crossings().indices() != crossing_positions.as_slice() {
        return Ok(None);
    }
    match cycle.partition() {
        Ok(p) if &p == partition => {}
        _ => return Ok(None),
    }
    if &cycle.digit_portrait() != portrait {
        return Ok(None);
    }
    Ok(Some(cycle))
}
