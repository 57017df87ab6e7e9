//! Exhaustive generation of cycles and precycles, with degree censuses.
//!
//! Cycles of size n correspond to aperiodic necklaces of length n, so the
//! generator walks lexicographically minimal rotations (one representative
//! per cycle, no duplicates, no scan over denominators). Censuses avoid
//! bignum arithmetic entirely: for the sizes the work limit admits, every
//! point of an n-cycle is `k/(dⁿ-1)` with `k` a machine integer, and the
//! crossing scan needs nothing beyond exact integer products.

use std::collections::BTreeMap;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::orbit::{orbit, Cycle, Precycle};
use crate::rational::{check_base, Rational};
use crate::word::DigitWord;

/// Guard against runaway enumerations: a call touching a word space of more
/// than `max_candidates` candidates is rejected up front.
#[derive(Clone, Copy, Debug)]
pub struct WorkBudget {
    pub max_candidates: u128,
}

impl Default for WorkBudget {
    fn default() -> Self {
        Self {
            max_candidates: 1 << 26,
        }
    }
}

impl WorkBudget {
    pub fn new(max_candidates: u128) -> Self {
        Self { max_candidates }
    }

    fn admit(&self, base: u32, len: usize) -> Result<u128> {
        let candidates = u32::try_from(len)
            .ok()
            .and_then(|exp| (base as u128).checked_pow(exp))
            .ok_or(Error::WorkLimitExceeded {
                candidates: u128::MAX,
                limit: self.max_candidates,
            })?;
        if candidates > self.max_candidates {
            return Err(Error::WorkLimitExceeded {
                candidates,
                limit: self.max_candidates,
            });
        }
        // The integer fast path multiplies values below dⁿ by d.
        if candidates > 1 << 63 {
            return Err(Error::WorkLimitExceeded {
                candidates,
                limit: 1 << 63,
            });
        }
        Ok(candidates)
    }
}

/// A slice of the enumeration keyed by the first two digits of the
/// canonical word: shard `i` of `c` owns the words whose leading digit pair
/// ranks `i (mod c)`. Shards are disjoint, cover everything, and merge by
/// summation.
#[derive(Clone, Copy, Debug)]
pub struct ShardSpec {
    pub index: u32,
    pub count: u32,
}

impl ShardSpec {
    pub fn new(index: u32, count: u32) -> Result<Self> {
        if count == 0 || index >= count {
            return Err(Error::InvalidInput(format!(
                "shard index {index} outside 0..{count}"
            )));
        }
        Ok(Self { index, count })
    }

    fn owns(&self, word: &[u32], base: u32) -> bool {
        let key = word[0] as u64 * base as u64 + word.get(1).copied().unwrap_or(0) as u64;
        key % self.count as u64 == self.index as u64
    }
}

/// Iterative generator for the lexicographically increasing sequence of
/// aperiodic necklace representatives (lexicographically minimal rotations)
/// of length exactly `n` over `{0, …, d-1}`.
struct NecklaceWords {
    base: u32,
    len: usize,
    buf: Vec<u32>,
    started: bool,
}

impl NecklaceWords {
    fn new(base: u32, len: usize) -> Self {
        Self {
            base,
            len,
            buf: Vec::with_capacity(len),
            started: false,
        }
    }

    /// Advances `buf` to the next representative; false when exhausted.
    /// Standard prefix-doubling walk: extend the current word periodically
    /// to full length, strip trailing top digits, increment the last digit.
    /// A yielded buffer of full length is aperiodic by construction.
    fn advance(&mut self) -> bool {
        loop {
            if !self.started {
                self.started = true;
                self.buf.push(0);
            } else {
                let len = self.buf.len();
                if len == 0 {
                    return false;
                }
                for i in len..self.len {
                    self.buf.push(self.buf[i % len]);
                }
                while let Some(&last) = self.buf.last() {
                    if last == self.base - 1 {
                        self.buf.pop();
                    } else {
                        break;
                    }
                }
                match self.buf.last_mut() {
                    None => return false,
                    Some(last) => *last += 1,
                }
            }
            if self.buf.len() == self.len {
                // Fixed points repeat under the identification of 1 with 0:
                // the all-(d-1) word names the same point as the all-0 word.
                if self.len == 1 && self.buf[0] == self.base - 1 {
                    continue;
                }
                return true;
            }
        }
    }
}

/// Crossing number of the cycle of an aperiodic word, computed on machine
/// integers: points are `k/(dⁿ-1)`, sorting and the strict image comparison
/// only ever compare numerators over the common denominator.
fn word_crossing_number(word: &[u32], base: u32, values: &mut Vec<u128>) -> usize {
    let n = word.len();
    let modulus = (base as u128).pow(n as u32) - 1;
    values.clear();
    let mut k: u128 = word.iter().fold(0, |acc, &b| acc * base as u128 + b as u128);
    k %= modulus;
    for _ in 0..n {
        values.push(k);
        k = k * base as u128 % modulus;
    }
    values.sort_unstable();
    (0..n)
        .filter(|&i| {
            let image = values[i] * base as u128 % modulus;
            let next_image = values[(i + 1) % n] * base as u128 % modulus;
            next_image > 0 && next_image < image
        })
        .count()
}

fn word_distinct_digits(word: &[u32]) -> usize {
    let mut seen = [false; 64];
    let mut fallback = Vec::new();
    let mut count = 0;
    for &b in word {
        if (b as usize) < seen.len() {
            if !seen[b as usize] {
                seen[b as usize] = true;
                count += 1;
            }
        } else if !fallback.contains(&b) {
            fallback.push(b);
            count += 1;
        }
    }
    count
}

/// Streams every n-point cycle of the base-`d` map exactly once, in
/// lexicographic order of canonical words. For `n = 1` these are the
/// `d - 1` fixed points `k/(d-1)`.
pub fn enumerate_cycles(
    base: u32,
    len: usize,
    budget: WorkBudget,
) -> Result<impl Iterator<Item = Cycle>> {
    check_base(base)?;
    if len == 0 {
        return Err(Error::InvalidInput("cycle size must be positive".into()));
    }
    budget.admit(base, len)?;
    let mut gen = NecklaceWords::new(base, len);
    Ok(std::iter::from_fn(move || {
        if gen.advance() {
            let word = DigitWord::new(gen.base, gen.buf.clone()).expect("digits below base");
            Some(Cycle::from_word(&word).expect("generated words are aperiodic"))
        } else {
            None
        }
    }))
}

/// Which counting statement a census row is measured against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CensusKind {
    Cycles,
    Precycles,
}

impl CensusKind {
    /// Exponent of `n` in the counting bound `n^e · m^{n-1}`.
    fn bound_exponent(self, base: u32, degree: usize) -> u32 {
        let offset = match self {
            CensusKind::Cycles => 1,
            CensusKind::Precycles => 3,
        };
        (base as i64 - degree as i64 + offset).max(0) as u32
    }
}

/// Degree histogram of all size-`n` cycles (or precycles) for one base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRow {
    pub base: u32,
    pub size: usize,
    pub kind: CensusKind,
    pub counts_by_degree: BTreeMap<usize, u64>,
    pub total: u64,
}

impl CensusRow {
    /// The counting bound `n^{e} · m^{n-1}` for degree `m` rows.
    pub fn bound(&self, degree: usize) -> BigUint {
        let e = self.kind.bound_exponent(self.base, degree);
        BigUint::from(self.size).pow(e) * BigUint::from(degree).pow(self.size as u32 - 1)
    }

    /// `(count, bound)` as an exact ratio; `None` when the bound vanishes
    /// (degree 0 at sizes above 1).
    pub fn bound_ratio(&self, degree: usize) -> Option<(u64, BigUint)> {
        use num_traits::Zero;
        let count = *self.counts_by_degree.get(&degree)?;
        let bound = self.bound(degree);
        if bound.is_zero() {
            None
        } else {
            Some((count, bound))
        }
    }

    /// The ratio rounded to a float, for reporting.
    pub fn bound_ratio_f64(&self, degree: usize) -> Option<f64> {
        use num_traits::ToPrimitive;
        let (count, bound) = self.bound_ratio(degree)?;
        Some(count as f64 / bound.to_f64().unwrap_or(f64::INFINITY))
    }

    pub fn merge(&mut self, other: &CensusRow) {
        assert_eq!(
            (self.base, self.size, self.kind),
            (other.base, other.size, other.kind),
            "can only merge shards of the same census"
        );
        for (&m, &c) in &other.counts_by_degree {
            *self.counts_by_degree.entry(m).or_insert(0) += c;
        }
        self.total += other.total;
    }
}

/// Degree histogram over all size-`n` cycles, optionally restricted to one
/// shard of the word space.
pub fn census_sharded(
    base: u32,
    len: usize,
    budget: WorkBudget,
    shard: Option<ShardSpec>,
) -> Result<CensusRow> {
    check_base(base)?;
    if len == 0 {
        return Err(Error::InvalidInput("cycle size must be positive".into()));
    }
    budget.admit(base, len)?;
    let mut counts_by_degree = BTreeMap::new();
    let mut total = 0u64;
    let mut gen = NecklaceWords::new(base, len);
    let mut scratch = Vec::with_capacity(len);
    while gen.advance() {
        if let Some(spec) = shard {
            if !spec.owns(&gen.buf, base) {
                continue;
            }
        }
        let eta = word_crossing_number(&gen.buf, base, &mut scratch);
        *counts_by_degree.entry(eta).or_insert(0) += 1;
        total += 1;
    }
    Ok(CensusRow {
        base,
        size: len,
        kind: CensusKind::Cycles,
        counts_by_degree,
        total,
    })
}

pub fn census(base: u32, len: usize, budget: WorkBudget) -> Result<CensusRow> {
    census_sharded(base, len, budget, None)
}

/// Streams `(crossing number, distinct digit count)` over every size-`len`
/// cycle, computed on machine integers without materializing the cycles.
/// This is what makes exhaustive sweeps over millions of cycles cheap.
pub fn degree_digit_scan(
    base: u32,
    len: usize,
    budget: WorkBudget,
) -> Result<impl Iterator<Item = (usize, usize)>> {
    check_base(base)?;
    if len == 0 {
        return Err(Error::InvalidInput("cycle size must be positive".into()));
    }
    budget.admit(base, len)?;
    let mut gen = NecklaceWords::new(base, len);
    let mut scratch = Vec::with_capacity(len);
    Ok(std::iter::from_fn(move || {
        if gen.advance() {
            let eta = word_crossing_number(&gen.buf, base, &mut scratch);
            Some((eta, word_distinct_digits(&gen.buf)))
        } else {
            None
        }
    }))
}

/// Streams every size-`n` precycle exactly once.
///
/// A precycle is determined by its generating point, whose expansion is a
/// transient word of length `n₁` followed by a rotation of a cycle word of
/// length `n₂ = n - n₁`. The transient is minimal exactly when its last
/// digit differs from the cycle digit preceding the entry point, and in
/// that case all `n₁ + n₂` orbit points are distinct.
pub fn enumerate_precycles(
    base: u32,
    len: usize,
    budget: WorkBudget,
) -> Result<impl Iterator<Item = Precycle>> {
    check_base(base)?;
    if len == 0 {
        return Err(Error::InvalidInput("orbit size must be positive".into()));
    }
    budget.admit(base, len)?;
    Ok(PrecycleWords::new(base, len).map(move |head| {
        orbit(&head, base).expect("valid base")
    }))
}

/// Degree histogram over all size-`n` precycles.
pub fn precycle_census(base: u32, len: usize, budget: WorkBudget) -> Result<CensusRow> {
    let mut counts_by_degree: BTreeMap<usize, u64> = BTreeMap::new();
    let mut total = 0u64;
    for pre in enumerate_precycles(base, len, budget)? {
        *counts_by_degree.entry(pre.degree()).or_insert(0) += 1;
        total += 1;
    }
    Ok(CensusRow {
        base,
        size: len,
        kind: CensusKind::Precycles,
        counts_by_degree,
        total,
    })
}

/// Generating points of all size-`n` precycles: iterates cycle length
/// `n₂`, necklace word, entry rotation, and admissible transient words.
struct PrecycleWords {
    base: u32,
    len: usize,
    period_len: usize,
    necklaces: NecklaceWords,
    have_word: bool,
    rotation: usize,
    transient: Vec<u32>,
    transient_live: bool,
}

impl PrecycleWords {
    fn new(base: u32, len: usize) -> Self {
        Self {
            base,
            len,
            period_len: 0,
            necklaces: NecklaceWords::new(base, 0),
            have_word: false,
            rotation: 0,
            transient: Vec::new(),
            transient_live: false,
        }
    }

    /// Digit of the cycle word that precedes the entry point of the current
    /// rotation; a minimal transient must end on something else.
    fn forbidden_last_digit(&self) -> u32 {
        let word = &self.necklaces.buf;
        let n2 = self.period_len;
        word[(self.rotation + n2 - 1) % n2]
    }

    fn head_value(&self) -> Rational {
        let n1 = self.len - self.period_len;
        let n2 = self.period_len;
        let word = &self.necklaces.buf;
        let mut period_int = BigUint::from(0u32);
        for i in 0..n2 {
            period_int = period_int * self.base + word[(self.rotation + i) % n2];
        }
        let transient_int = self
            .transient
            .iter()
            .fold(BigUint::from(0u32), |acc, &b| acc * self.base + b);
        let period_den = BigUint::from(self.base).pow(n2 as u32) - 1u32;
        let num = transient_int * &period_den + period_int;
        let den = BigUint::from(self.base).pow(n1 as u32) * period_den;
        Rational::new(num, den).expect("positive denominator")
    }

    /// Odometer over transient words, skipping forbidden last digits.
    fn bump_transient(&mut self) -> bool {
        if !self.transient_live {
            return false;
        }
        loop {
            let mut pos = self.transient.len();
            loop {
                if pos == 0 {
                    self.transient_live = false;
                    return false;
                }
                pos -= 1;
                if self.transient[pos] + 1 < self.base {
                    self.transient[pos] += 1;
                    for later in self.transient[pos + 1..].iter_mut() {
                        *later = 0;
                    }
                    break;
                }
                self.transient[pos] = 0;
            }
            if self.transient.last() != Some(&self.forbidden_last_digit()) {
                return true;
            }
        }
    }

    fn reset_transient(&mut self) {
        self.transient = vec![0; self.len - self.period_len];
        self.transient_live = true;
        if self.transient.is_empty() {
            return;
        }
        if self.forbidden_last_digit() == 0 {
            // All-zero transient forbidden; advance to the first legal one.
            if !self.bump_transient() {
                self.transient_live = false;
            }
        }
    }
}

impl Iterator for PrecycleWords {
    type Item = Rational;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            if self.have_word && self.transient_live {
                let head = self.head_value();
                // Step the odometer for the next call.
                if self.len == self.period_len {
                    // No transient: each necklace contributes exactly one
                    // orbit (the cycle itself), entry rotation irrelevant.
                    self.transient_live = false;
                } else if !self.bump_transient() {
                    self.transient_live = false;
                }
                return Some(head);
            }
            if self.have_word && self.len > self.period_len && self.rotation + 1 < self.period_len
            {
                self.rotation += 1;
                self.reset_transient();
                continue;
            }
            // Next necklace word, or next period length.
            loop {
                if self.period_len > 0 {
                    self.have_word = self.necklaces.advance();
                    if self.have_word {
                        break;
                    }
                }
                if self.period_len >= self.len {
                    return None;
                }
                self.period_len += 1;
                self.necklaces = NecklaceWords::new(self.base, self.period_len);
            }
            self.rotation = 0;
            self.reset_transient();
        }
    }
}
