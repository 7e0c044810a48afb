//! Error types shared across the crate.
//!
//! The distinctions matter to callers: precondition and domain errors are the
//! caller's fault, `NotSpanned` is a probe result some callers rely on, and
//! `InternalConsistency` means an object guaranteed to exist by the exchange
//! theory could not be found — i.e. the independence oracle is broken.

use alloc::string::String;
use core::fmt;

use crate::set::ElementId;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Error {
    /// An element id outside the matroid's ground set.
    InvalidElement { id: ElementId, ground: u32 },
    /// A ground set larger than the 64-element cap.
    GroundTooLarge { size: usize },
    /// Malformed representation data (bad endpoint, ragged matrix, ...).
    Construction(String),
    /// The operation requires an independent set but got a dependent one.
    DependentInput,
    /// `fundamental_circuit(i, x)` with `x` already in `i`.
    ElementPresent { id: ElementId },
    /// `i + x` is independent, so `x` has no support in `i`.
    NotSpanned { id: ElementId },
    /// Element not a member of the base it must come from.
    NotInBase { id: ElementId, base: char },
    /// The two claimed bases overlap or one of them is not a base.
    InvalidBasePair(String),
    /// Two arguments must be distinct.
    DuplicateElement { id: ElementId },
    /// A stated precondition does not hold (wrong rank, invalid sequence,
    /// lemma hypothesis violated, ...). Distinct from a `false` result.
    Precondition(String),
    /// A sequence is malformed (length mismatch, repeated elements,
    /// membership violations, certificate mismatch).
    Structure(String),
    /// A guaranteed-to-exist object was not found: the oracle is broken.
    InternalConsistency(String),
    /// A search exceeded its step budget.
    BudgetExhausted { steps: u64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidElement { id, ground } => {
                write!(f, "element {id} is outside the ground set [0,{ground})")
            }
            Error::GroundTooLarge { size } => {
                write!(f, "ground set of {size} elements exceeds the 64-element cap")
            }
            Error::Construction(msg) => write!(f, "invalid matroid data: {msg}"),
            Error::DependentInput => write!(f, "expected an independent set"),
            Error::ElementPresent { id } => write!(f, "element {id} is already in the set"),
            Error::NotSpanned { id } => write!(f, "element {id} is not spanned by the set"),
            Error::NotInBase { id, base } => write!(f, "element {id} is not in base {base}"),
            Error::InvalidBasePair(msg) => write!(f, "invalid base pair: {msg}"),
            Error::DuplicateElement { id } => write!(f, "elements must be distinct, got {id} twice"),
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            Error::Structure(msg) => write!(f, "malformed sequence: {msg}"),
            Error::InternalConsistency(msg) => {
                write!(f, "internal consistency failure (broken oracle?): {msg}")
            }
            Error::BudgetExhausted { steps } => {
                write!(f, "search budget of {steps} steps exhausted")
            }
        }
    }
}

impl core::error::Error for Error {}

/// Errors raised by the corpus/check harness, as opposed to the algorithms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum HarnessError {
    /// A check name not present in the registry.
    UnknownCheck(String),
    /// Desk-scale guard: rank cap exceeded without the explicit override.
    RankCapExceeded { max_rank: u32 },
    /// A finding cannot be replayed (missing or inconsistent witness).
    Replay(String),
    /// Corpus generation failed outright (not per-instance trouble).
    Generation(String),
}

impl fmt::Display for HarnessError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HarnessError::UnknownCheck(name) => write!(f, "unknown check name: {name}"),
            HarnessError::RankCapExceeded { max_rank } => write!(
                f,
                "max_rank {max_rank} exceeds the desk-scale cap of 6 (pass allow_large to override)"
            ),
            HarnessError::Replay(msg) => write!(f, "cannot replay finding: {msg}"),
            HarnessError::Generation(msg) => write!(f, "corpus generation failed: {msg}"),
        }
    }
}

impl core::error::Error for HarnessError {}
