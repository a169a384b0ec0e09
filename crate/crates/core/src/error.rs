use thiserror::Error;

use crate::blocks::Block;

/// Errors raised by field construction, enumeration, verification and the
/// parameter recurrences.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DesignError {
    #[error("field exponent {m} outside supported range {min}..={max}")]
    Exponent { m: u32, min: u32, max: u32 },

    #[error("{what} = {value} outside valid range {min}..={max}")]
    Range {
        what: &'static str,
        value: u64,
        min: u64,
        max: u64,
    },

    #[error("coset shift must be a nonzero field element")]
    InvalidShift,

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("search space of {required} nodes exceeds the enumeration budget of {budget}")]
    Resource { required: u128, budget: u64 },

    #[error("block {block} has no representative: every element is paired with its shift by {alpha}")]
    NoRepresentative { block: Block, alpha: u32 },

    #[error("block {block} is outside the map's domain: {reason}")]
    Domain { block: Block, reason: String },

    #[error("map sends {source_block} to {image:?}, which leaves the codomain: {reason}")]
    MapViolation {
        source_block: Block,
        image: Vec<u32>,
        reason: String,
    },

    #[error("block size mismatch: expected {expected}, found {found}")]
    Shape { expected: usize, found: usize },

    #[error("block element {element} is not a design point")]
    Containment { element: u32 },

    #[error("groups do not partition the point set: {0}")]
    Partition(String),

    #[error("observed parameters requested from a failing report")]
    State,

    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T, E = DesignError> = std::result::Result<T, E>;
