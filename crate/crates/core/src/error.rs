use thiserror::Error;

use crate::rational::Rational;

/// Everything that can go wrong while building spaces or running the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("EmptyDomain: the {0} list is empty")]
    EmptyDomain(&'static str),

    #[error("EmptyDomain: the set of likelihood mappings is empty")]
    EmptyDelta,

    #[error("DuplicateId: {kind} id {id:?} appears more than once")]
    DuplicateId { kind: &'static str, id: String },

    #[error("InvalidId: {kind} ids must be non-empty")]
    EmptyId { kind: &'static str },

    #[error("UnknownId: no {kind} named {id:?}")]
    UnknownId { kind: &'static str, id: String },

    #[error("MissingEntry: {context} has no value for {kind} {id:?}")]
    MissingEntry { context: String, kind: &'static str, id: String },

    #[error("DimensionMismatch: {context} expected {expected} entries, found {found}")]
    DimensionMismatch { context: String, expected: usize, found: usize },

    #[error("ProbabilityOutOfRange: {context} has value {value} outside [0, 1]")]
    ProbabilityOutOfRange { context: String, value: Rational },

    #[error("NonNormalizedLikelihood: {context} sums to {sum}, not 1")]
    NonNormalizedLikelihood { context: String, sum: Rational },

    #[error("NonNormalizedDistribution: {context} sums to {sum}, not 1")]
    NonNormalizedDistribution { context: String, sum: Rational },

    #[error("ImpossibleObservation: under likelihood mapping #{mapping} every hypothesis gives observation {observation:?} probability 0")]
    ImpossibleObservation { mapping: usize, observation: String },

    #[error("UndefinedCombination: the pointwise product of the two mass functions is zero everywhere")]
    UndefinedCombination,

    #[error("ConditioningOnNull: observation {observation:?} has probability 0 under the joint")]
    ConditioningOnNull { observation: String },

    #[error("EmptyPosteriorSet: every prior/weight combination is undefined")]
    EmptyPosteriorSet,

    #[error("EmptyResult: every combination of weights along the sequence is undefined")]
    EmptyResult,

    #[error("ImpossibleSequence: every hypothesis gives the observation sequence probability 0")]
    ImpossibleSequence,

    #[error("EmptySequence: an observation sequence needs at least one observation")]
    EmptySequence,

    #[error(
        "ZeroDenominator: bound formula denominator vanishes at observation {observation:?}, hypothesis {hypothesis:?}"
    )]
    ZeroDenominator { observation: String, hypothesis: String },

    #[error("CorrelatedSpace: the set of likelihood mappings is not a product of per-hypothesis sets")]
    CorrelatedSpace,

    #[error("ExplosionGuard: {what} would need {count} enumerations (limit {limit})")]
    ExplosionGuard { what: &'static str, count: String, limit: u64 },

    #[error("InvalidSurjection: {0}")]
    InvalidSurjection(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Upper limit on brute-force enumerations (selections, corner extensions,
/// per-observation mapping choices).
pub const ENUMERATION_LIMIT: u64 = 1_000_000;

/// Product of `factors`, failing with [`Error::ExplosionGuard`] once it
/// exceeds [`ENUMERATION_LIMIT`].
pub(crate) fn guarded_product(what: &'static str, factors: impl IntoIterator<Item = usize>) -> Result<usize> {
    let mut count: u128 = 1;
    let mut overflowed = false;
    for f in factors {
        match count.checked_mul(f as u128) {
            Some(c) => count = c,
            None => {
                overflowed = true;
                break;
            }
        }
    }
    if overflowed || count > ENUMERATION_LIMIT as u128 {
        return Err(Error::ExplosionGuard {
            what,
            count: if overflowed { "more than 2^128".to_string() } else { count.to_string() },
            limit: ENUMERATION_LIMIT,
        });
    }
    Ok(count as usize)
}
