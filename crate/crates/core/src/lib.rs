//! Balanced incomplete block designs and group divisible designs built from
//! zero-sum subsets of binary fields.
//!
//! For 3 ≤ k ≤ 2^m − 4 the k-subsets of F_{2^m}^* whose elements sum to zero
//! form a (2^m − 1, k, λ_k) BIBD. Lifting to F_{2^{m+1}} and a nonzero shift α,
//! the k-subsets of F_{2^{m+1}} ∖ {0, α} that sum to α and meet every pair
//! {x, x + α} at most once form a GDD whose groups are those pairs and whose
//! balance parameter is 2^{k−3}λ_k.
//!
//! The crate enumerates these families ([`blocks`]), verifies them by pair
//! sweeps ([`designs`]) and computes every parameter from exact recurrences
//! ([`params`]) so the two can be cross-checked.

pub mod blocks;
pub mod designs;
mod error;
pub mod field;
pub mod params;

pub use blocks::{Block, BlockFamily, Enumerator, FamilyKind, FamilySpec, DEFAULT_BUDGET};
pub use designs::{
    observed_params, verify_bibd, verify_gdd, Counterexample, DesignReport, GddReport,
    ObservedParams, Verdict,
};
pub use error::{DesignError, Result};
pub use field::{BinaryField, Coset, CosetOrdering, FieldElement, QuotientIso};
pub use params::{ParamRow, ParamTable};
