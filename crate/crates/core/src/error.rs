//! Error taxonomy shared across the crate.
//!
//! Errors are grouped into three classes for callers that need to map them
//! to exit codes or retry policies:
//!
//! * spec/parse errors — the input recurrence itself is malformed,
//! * numeric failures — a certified computation could not be resolved at the
//!   working precision (often fixable by escalation),
//! * method-scope refusals — the input is well-formed but outside what the
//!   certification method covers (reducible support, nonpositive terms, ...).

use thiserror::Error;

/// Coarse classification of an [`Error`], used for exit codes and for
/// deciding whether precision escalation can help.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Malformed input: bad order, zero trailing coefficient, parse failure.
    Spec,
    /// Numeric/precision failure: enclosures too wide to decide, clusters
    /// unresolved, no bracketing sign change.
    Numeric,
    /// Method-scope refusal: the recurrence is valid but the certification
    /// method does not apply to it as given.
    Scope,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid recurrence: {0}")]
    InvalidSpec(String),

    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("nonpositive-term: a_{index} is not strictly positive")]
    NonpositiveTerm { index: usize },

    #[error("ratio R_{n} is undefined (defined only for n >= 2 with a_{{n-1}} > 0)")]
    UndefinedRatio { n: usize },

    #[error("exact-check-too-large: n = {n} exceeds the exact comparison cap {cap}")]
    ExactCheckTooLarge { n: usize, cap: usize },

    #[error("support gcd is 1; nothing to reduce")]
    NothingToReduce,

    #[error("reducible: support gcd {d} > 1; reduce first")]
    Reducible { d: usize },

    #[error("operation requires the standard initial values 0,...,0,1")]
    NondefaultInitialValues,

    #[error("no-sign-change: cannot bracket a positive real root")]
    NoSignChange,

    #[error("cluster-unresolved: root enclosures cannot be made pairwise disjoint at {bits} bits")]
    ClusterUnresolved { bits: u32 },

    #[error("distinctness-required: root enclosures overlap")]
    DistinctnessRequired,

    #[error("not-dominant: no strictly dominant positive root certified at {bits} bits")]
    NotDominant { bits: u32 },

    #[error("unresolved: strict comparison undecided at {bits} bits")]
    Unresolved { bits: u32 },

    #[error("dominance condition fails: f'(lambda) <= 1")]
    DominanceConditionFails,

    #[error("no-threshold: no tail threshold found below cap {cap}")]
    NoThreshold { cap: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::InvalidSpec(_) | Error::Parse { .. } | Error::Precondition(_) => {
                ErrorClass::Spec
            }
            Error::NoSignChange
            | Error::ClusterUnresolved { .. }
            | Error::DistinctnessRequired
            | Error::Unresolved { .. }
            | Error::NoThreshold { .. }
            | Error::Internal(_) => ErrorClass::Numeric,
            Error::NonpositiveTerm { .. }
            | Error::UndefinedRatio { .. }
            | Error::ExactCheckTooLarge { .. }
            | Error::NothingToReduce
            | Error::Reducible { .. }
            | Error::NondefaultInitialValues
            | Error::NotDominant { .. }
            | Error::DominanceConditionFails => ErrorClass::Scope,
        }
    }

    /// Whether retrying the same computation at a higher working precision
    /// could plausibly succeed.
    pub fn precision_soft(&self) -> bool {
        matches!(
            self,
            Error::ClusterUnresolved { .. }
                | Error::DistinctnessRequired
                | Error::Unresolved { .. }
                | Error::NotDominant { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
