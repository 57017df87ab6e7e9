use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("base must be at least 2, got {0}")]
    InvalidBase(u32),

    #[error("digit {digit} is not a base-{base} digit")]
    InvalidDigit { digit: u32, base: u32 },

    #[error("denominator must be positive")]
    ZeroDenominator,

    #[error("cannot parse {0:?} as a rational in [0, 1)")]
    ParseRational(String),

    #[error("word {0:?} has a proper period")]
    NotPrimitive(String),

    #[error("point set is empty")]
    EmptySet,

    #[error("point {point} escapes the set under the {base}-map")]
    NotInvariant { point: String, base: u32 },

    #[error("the {0}-map does not act transitively on the point set")]
    NotTransitive(u32),

    #[error("the point set is not a single forward orbit")]
    NotSingleOrbit,

    #[error("a set with no crossings generates no partition")]
    NoCrossings,

    #[error("a fixed point needs no witness map; the base map itself has degree 0 on it")]
    DegenerateWitness,

    #[error("invalid piecewise-linear circle map: {0}")]
    InvalidMap(String),

    #[error("digit set must contain at least two digits")]
    DegenerateDigitSet,

    #[error(
        "pad length {pad} must exceed the multiplicity {multiplicity} of digit {digit} in the prefix"
    )]
    InsufficientPadding {
        digit: u32,
        multiplicity: usize,
        pad: usize,
    },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid digit portrait: {0}")]
    InvalidPortrait(String),

    #[error("{candidates} candidate words exceed the work limit {limit}")]
    WorkLimitExceeded { candidates: u128, limit: u128 },

    #[error("need at least two distinct scales to fit a slope")]
    InsufficientData,

    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
