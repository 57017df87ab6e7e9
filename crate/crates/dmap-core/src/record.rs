//! Serializable records for the machine-readable outputs.
//!
//! Rationals appear as `"num/den"` strings, digit words in their textual
//! form, and all combinatorial indices (successor values, crossing
//! positions, partition blocks) are 1-based over the sorted points.

use serde::Serialize;

use crate::degree::PartitionSpec;
use crate::dimension::DimensionFit;
use crate::orbit::{Cycle, Precycle};

#[derive(Clone, Debug, Serialize)]
pub struct PartitionRecord {
    pub blocks: Vec<Vec<usize>>,
    pub i1: usize,
}

impl From<&PartitionSpec> for PartitionRecord {
    fn from(p: &PartitionSpec) -> Self {
        Self {
            blocks: p.blocks().to_vec(),
            i1: p.i1(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CycleRecord {
    pub base: u32,
    pub n: usize,
    pub word: String,
    pub points: Vec<String>,
    pub sigma: Vec<usize>,
    pub degree: usize,
    pub crossings: Vec<usize>,
    pub portrait: Vec<usize>,
    pub partition: Option<PartitionRecord>,
}

impl From<&Cycle> for CycleRecord {
    fn from(cycle: &Cycle) -> Self {
        Self {
            base: cycle.base(),
            n: cycle.len(),
            word: cycle.word().to_string(),
            points: cycle.points().iter().map(|p| p.to_string()).collect(),
            sigma: cycle.sigma().to_vec(),
            degree: cycle.degree(),
            crossings: cycle.crossings().indices().to_vec(),
            portrait: cycle.digit_portrait().values().to_vec(),
            partition: cycle.partition().ok().map(|p| PartitionRecord::from(&p)),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PrecycleRecord {
    pub base: u32,
    pub n: usize,
    pub word: String,
    pub points: Vec<String>,
    pub sigma: Vec<usize>,
    pub preperiod_len: usize,
    pub period_len: usize,
    pub degree: usize,
    /// Degrees of precycles are reported as crossing numbers.
    pub degree_basis: &'static str,
    pub crossings: Vec<usize>,
    pub portrait: Vec<usize>,
    pub partition: Option<PartitionRecord>,
}

impl From<&Precycle> for PrecycleRecord {
    fn from(pre: &Precycle) -> Self {
        Self {
            base: pre.base(),
            n: pre.len(),
            word: pre.word().to_string(),
            points: pre.points().iter().map(|p| p.to_string()).collect(),
            sigma: pre.successor().to_vec(),
            preperiod_len: pre.preperiod_len(),
            period_len: pre.period_len(),
            degree: pre.degree(),
            degree_basis: "crossing-number",
            crossings: pre.crossings().indices().to_vec(),
            portrait: pre.digit_portrait().values().to_vec(),
            partition: pre.partition().ok().map(|p| PartitionRecord::from(&p)),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FitRecord {
    pub beta: f64,
    pub intercept: f64,
    pub max_residual: f64,
    pub scales_used: Vec<u32>,
}

impl From<&DimensionFit> for FitRecord {
    fn from(fit: &DimensionFit) -> Self {
        Self {
            beta: fit.beta,
            intercept: fit.intercept,
            max_residual: fit.max_residual,
            scales_used: fit.scales_used.clone(),
        }
    }
}
