//! Exact arithmetic for the expanding circle maps `x ↦ dx (mod 1)`.
//!
//! The crate builds cycles and forward orbits of rational points, computes
//! their crossing numbers (= degrees), digit portraits and generated
//! partitions, constructs witness maps and degree-`m` cycles near arbitrary
//! targets, enumerates all cycles of a given size, and estimates box-counting
//! dimensions of degree-graded cycle closures. All core logic is integer
//! exact; floating point appears only in the final log-log slope fits.

pub mod construct;
pub mod degree;
pub mod dimension;
pub mod enumerate;
pub mod error;
pub mod orbit;
pub mod rational;
pub mod record;
pub mod witness;
pub mod word;

pub use construct::{approximate_with_cycle, extract_key, reconstruct_cycle, ApproximationRequest, CycleKey};
pub use degree::{CrossingSet, DigitPortrait, PartitionSpec};
pub use dimension::{
    build_e_approx, cantor_boxes, cantor_intervals, fit_dimension, pointset_boxcount,
    unsaturated_reports, CoverReport, DimensionFit,
};
pub use enumerate::{
    census, census_sharded, degree_digit_scan, enumerate_cycles, enumerate_precycles,
    precycle_census, CensusKind, CensusRow, ShardSpec, WorkBudget,
};
pub use error::{Error, Result};
pub use orbit::{is_cycle, orbit, Cycle, Precycle};
pub use rational::Rational;
pub use witness::{witness_map, WitnessMap};
pub use word::DigitWord;
