//! Crate-wide error type.

use std::fmt;

/// Errors reported by constructors and fallible queries.
///
/// Matching itself never fails: once a matcher is built, queries over any
/// text drawn from the same alphabet are total. Errors arise from invalid
/// build inputs (bad symbols, empty patterns, impossible parameters) or
/// from resource limits (tabulation budgets).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A symbol value is outside the declared alphabet `[0, sigma)`.
    SymbolOutOfRange {
        /// Position of the offending symbol in its input slice.
        index: usize,
        /// The symbol value encountered.
        symbol: u32,
        /// The declared alphabet size.
        sigma: u32,
    },
    /// An empty pattern was supplied where a non-empty one is required.
    EmptyPattern,
    /// An empty pattern set was supplied.
    NoPatterns,
    /// A tabulated matcher would exceed its memory budget.
    BudgetExceeded {
        /// Minimal budget (in bytes) that would admit the requested table.
        required: u64,
        /// The budget that was configured.
        budget: u64,
    },
    /// Interval family handed to the 1D stabbing structure is not laminar.
    NonLaminar,
    /// A parameter violates a documented precondition.
    InvalidParameter(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::SymbolOutOfRange {
                index,
                symbol,
                sigma,
            } => write!(
                f,
                "symbol {symbol} at position {index} is outside the alphabet [0, {sigma})"
            ),
            Error::EmptyPattern => write!(f, "patterns must be non-empty"),
            Error::NoPatterns => write!(f, "at least one pattern is required"),
            Error::BudgetExceeded { required, budget } => write!(
                f,
                "tabulation needs at least {required} bytes but the budget is {budget} bytes"
            ),
            Error::NonLaminar => write!(f, "interval family is not laminar"),
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
