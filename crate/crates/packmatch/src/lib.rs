//! Exact single- and multi-pattern string matching over bit-packed text.
//!
//! The engines in this crate scan a packed text in blocks of symbols rather
//! than one symbol at a time. The multi-pattern matcher
//! ([`acsim::MultiMatcher`]) simulates a pattern-matching automaton whose
//! transition and reporting steps are answered by geometric stabbing queries
//! over rank intervals of the pattern prefix/suffix sets; the single-pattern
//! matcher ([`single::SingleMatcher`]) exploits the periodic structure of
//! pattern factors to verify a whole window of candidate alignments with a
//! constant number of word-level comparisons. Tabulated variants
//! ([`tabmulti::TabMultiMatcher`], [`single::TabSingleMatcher`]) trade
//! memory for even fewer per-block operations by precomputing answers for
//! every short block.
//!
//! Layered modules:
//!
//! * [`bitpack`] — packed strings, word-parallel compare/LCP/LCS, and
//!   periodic-repetition scans.
//! * [`strorder`] — prefix/suffix lexicographic orders, rank/count
//!   reference functions, polynomial fingerprints, and a minimal perfect
//!   hash dictionary keyed by strings.
//! * [`stab`] — interval and rectangle stabbing plus longest prefix/suffix
//!   indexes.
//! * [`acsim`] — the block-wise multi-pattern matcher.
//! * [`tabmulti`] — the tabulated multi-pattern matcher.
//! * [`single`] — the periodicity-based single-pattern matcher and its
//!   tabulated variant.
//! * [`oracle`] — textbook reference implementations (naive scan,
//!   Knuth-Morris-Pratt, Aho-Corasick) used for differential testing.
//! * [`cli`] — the `packmatch` command-line interface.
//!
//! All matchers are immutable once built and safe to share across threads.

pub mod acsim;
pub mod bitpack;
pub mod cli;
mod error;
pub mod oracle;
pub mod selftest;
pub mod single;
pub mod stab;
pub mod strorder;
pub mod tabmulti;

pub use error::{Error, Result};

use serde::Serialize;

/// One reported match: `pattern_id` occurs at text positions
/// `[start, end]`, both inclusive, so `end == start + len - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Occurrence {
    /// Index of the matched pattern in the pattern list the matcher was
    /// built from.
    pub pattern_id: usize,
    /// Position of the first matched symbol.
    pub start: usize,
    /// Position of the last matched symbol (inclusive).
    pub end: usize,
}

impl Occurrence {
    /// Canonical report order: by end position, then start, then pattern id.
    pub fn sort_key(&self) -> (usize, usize, usize) {
        (self.end, self.start, self.pattern_id)
    }
}

/// Sorts occurrences into the canonical report order.
pub fn sort_occurrences(occ: &mut [Occurrence]) {
    occ.sort_unstable_by_key(Occurrence::sort_key);
}
