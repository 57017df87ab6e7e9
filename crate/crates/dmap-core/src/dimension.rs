//! Box counting over base-`d` grids and log-log slope fits.
//!
//! The digit-restricted Cantor set (expansions using digits `0..m` only) is
//! covered by exactly `m^k` grid intervals of width `d^{-k}`, so its fitted
//! slope is `log m / log d` on the nose. Finite unions of cycle points are
//! counted exactly and fitted over scales where the counts are not yet
//! saturated; every count is an exact integer and floating point enters only
//! in the final regression.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigUint;

use crate::enumerate::{enumerate_cycles, WorkBudget};
use crate::error::{Error, Result};
use crate::rational::{check_base, Rational};

/// Exact number of occupied grid cells `[j·d^{-k}, (j+1)·d^{-k})` at one
/// scale.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverReport {
    pub base: u32,
    pub scale_exponent: u32,
    pub box_count: u64,
}

/// Cover of the stage-`k` set of the digit-restricted Cantor construction:
/// `m^k` intervals of width `d^{-k}`.
pub fn cantor_boxes(m: u32, d: u32, k: u32) -> Result<CoverReport> {
    check_base(d)?;
    if m < 1 || m > d {
        return Err(Error::InvalidInput(format!(
            "digit count {m} must lie in 1..={d}"
        )));
    }
    let box_count = (m as u64).checked_pow(k).ok_or(Error::WorkLimitExceeded {
        candidates: u128::MAX,
        limit: u64::MAX as u128,
    })?;
    Ok(CoverReport {
        base: d,
        scale_exponent: k,
        box_count,
    })
}

/// The stage-`k` intervals themselves: `[v, v + d^{-k}]` for every value
/// `v` whose `k` digits all lie below `m`.
pub fn cantor_intervals(
    m: u32,
    d: u32,
    k: u32,
    budget: WorkBudget,
) -> Result<Vec<(Rational, Rational)>> {
    let report = cantor_boxes(m, d, k)?;
    if report.box_count as u128 > budget.max_candidates {
        return Err(Error::WorkLimitExceeded {
            candidates: report.box_count as u128,
            limit: budget.max_candidates,
        });
    }
    let scale = BigUint::from(d).pow(k);
    let mut digits = vec![0u32; k as usize];
    let mut intervals = Vec::with_capacity(report.box_count as usize);
    loop {
        let index = digits
            .iter()
            .fold(BigUint::from(0u32), |acc, &b| acc * d + b);
        let lo = Rational::new(index.clone(), scale.clone())?;
        // Right endpoints are closed in the construction; the value may
        // wrap to 0 at the top of the circle.
        let hi = Rational::new(index + 1u32, scale.clone())?;
        intervals.push((lo, hi));
        // Odometer over digits below m.
        let mut pos = digits.len();
        loop {
            if pos == 0 {
                return Ok(intervals);
            }
            pos -= 1;
            if digits[pos] + 1 < m {
                digits[pos] += 1;
                for later in digits[pos + 1..].iter_mut() {
                    *later = 0;
                }
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// Number of distinct occupied cells of the base-`d` grid at scale `d^{-k}`
/// over a finite point set.
pub fn pointset_boxcount<'a, I>(points: I, d: u32, k: u32) -> Result<CoverReport>
where
    I: IntoIterator<Item = &'a Rational>,
{
    check_base(d)?;
    let scale = BigUint::from(d).pow(k);
    let mut seen: HashSet<BigUint> = HashSet::new();
    let mut any = false;
    for p in points {
        any = true;
        seen.insert(p.scaled_floor(&scale));
    }
    if !any {
        return Err(Error::EmptySet);
    }
    Ok(CoverReport {
        base: d,
        scale_exponent: k,
        box_count: seen.len() as u64,
    })
}

/// Union of the points of all cycles of degree exactly `m` and size at most
/// `n_max`: a finite stand-in for the closure of the degree-`m` cycles.
pub fn build_e_approx(
    d: u32,
    m: usize,
    n_max: usize,
    budget: WorkBudget,
) -> Result<BTreeSet<Rational>> {
    check_base(d)?;
    if m < 1 || m > d as usize {
        return Err(Error::InvalidInput(format!(
            "degree {m} must lie in 1..={d}"
        )));
    }
    let mut points = BTreeSet::new();
    for n in 1..=n_max {
        for cycle in enumerate_cycles(d, n, budget)? {
            if cycle.degree() == m {
                points.extend(cycle.points().iter().cloned());
            }
        }
    }
    Ok(points)
}

/// Least-squares slope of `log N` against `k · log d`.
#[derive(Clone, Debug)]
pub struct DimensionFit {
    pub beta: f64,
    pub intercept: f64,
    pub max_residual: f64,
    pub scales_used: Vec<u32>,
}

/// Fits `log N = β · (k log d) + intercept` over the given reports.
/// Requires at least two distinct scales.
pub fn fit_dimension(reports: &[CoverReport]) -> Result<DimensionFit> {
    let mut distinct: Vec<u32> = reports.iter().map(|r| r.scale_exponent).collect();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() < 2 {
        return Err(Error::InsufficientData);
    }

    let xs: Vec<f64> = reports
        .iter()
        .map(|r| r.scale_exponent as f64 * (r.base as f64).ln())
        .collect();
    let ys: Vec<f64> = reports.iter().map(|r| (r.box_count as f64).ln()).collect();
    let n = xs.len() as f64;
    let sum_x: f64 = xs.iter().sum();
    let sum_y: f64 = ys.iter().sum();
    let sum_xx: f64 = xs.iter().map(|x| x * x).sum();
    let sum_xy: f64 = xs.iter().zip(&ys).map(|(x, y)| x * y).sum();
    let beta = (n * sum_xy - sum_x * sum_y) / (n * sum_xx - sum_x * sum_x);
    let intercept = (sum_y - beta * sum_x) / n;
    let max_residual = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - (beta * x + intercept)).abs())
        .fold(0.0, f64::max);

    let mut scales_used: Vec<u32> = reports.iter().map(|r| r.scale_exponent).collect();
    scales_used.sort_unstable();
    Ok(DimensionFit {
        beta,
        intercept,
        max_residual,
        scales_used,
    })
}

/// Drops scales whose counts are saturated for a finite sample of
/// `point_count` points: kept scales satisfy `2N < d^k` (the grid is far
/// from full) and `N < point_count` (the sample is not yet fully resolved).
/// Fine scales flatten toward the sample size and bias slopes to 0.
pub fn unsaturated_reports(reports: &[CoverReport], point_count: usize) -> Vec<CoverReport> {
    reports
        .iter()
        .filter(|r| {
            let grid = BigUint::from(r.base).pow(r.scale_exponent);
            let doubled = BigUint::from(r.box_count) * 2u32;
            doubled < grid && (r.box_count as u128) < point_count as u128
        })
        .cloned()
        .collect()
}
