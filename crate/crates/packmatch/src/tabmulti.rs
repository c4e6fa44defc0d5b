//! Multi-pattern matching with a tabulated short-occurrence table.
//!
//! [`MultiMatcher`](crate::acsim::MultiMatcher) consumes blocks of the
//! shortest pattern length, which degrades when one pattern is very short.
//! This wrapper picks the block length `alpha` freely and restores
//! completeness with precomputed tables: the block machinery reports every
//! occurrence that starts at or before a block boundary, and any remaining
//! occurrence lies strictly inside one block — inside a window of at most
//! `alpha - 1` symbols — so a table indexed by the window's packed contents
//! lists those directly.
//!
//! For every window length `u` in `1..alpha` the table stores, for each of
//! the `sigma^u` possible windows, the complete occurrence list of all
//! patterns inside that window. All lists are filled by one depth-first
//! enumeration of the length-`(alpha-1)` strings, walking a classic
//! multi-pattern automaton and snapshotting the running occurrence list at
//! every depth. The accounting model charges 24 bytes (one list header)
//! per table entry; construction refuses budgets the chosen `alpha` would
//! exceed, and [`alpha_for_budget`] picks the largest affordable `alpha`.

use crate::acsim::{MultiMatcher, QueryStats, StructureStats};
use crate::bitpack::{PackedSlice, PackedText};
use crate::error::{Error, Result};
use crate::oracle::AcAutomaton;
use crate::{sort_occurrences, Occurrence};

/// Bytes charged per table entry (one occurrence-list header).
const BYTES_PER_ENTRY: u64 = 24;

/// Table bytes required for block length `alpha` over alphabet `sigma`
/// under the per-entry accounting model, saturating at `u64::MAX`.
pub fn required_table_bytes(sigma: u32, alpha: usize) -> u64 {
    let mut total: u64 = 0;
    let mut term: u64 = 1;
    for _ in 1..alpha {
        term = match term.checked_mul(sigma as u64) {
            Some(t) => t,
            None => return u64::MAX,
        };
        total = match term
            .checked_mul(BYTES_PER_ENTRY)
            .and_then(|b| total.checked_add(b))
        {
            Some(t) => t,
            None => return u64::MAX,
        };
    }
    total
}

/// Largest block length whose tables fit in `budget_bytes` (at least 1;
/// block length 1 needs no tables).
pub fn alpha_for_budget(sigma: u32, budget_bytes: u64) -> usize {
    debug_assert!(sigma >= 1);
    let mut alpha = 1usize;
    while required_table_bytes(sigma, alpha + 1) <= budget_bytes {
        alpha += 1;
    }
    alpha
}

/// Occurrences `(pattern id, start, end)` inside one short window.
type ShortHits = Vec<(u32, u32, u32)>;

/// Block matcher with an explicit block length and tabulated reporting of
/// occurrences lying strictly inside a block.
#[derive(Debug)]
pub struct TabMultiMatcher {
    inner: MultiMatcher,
    sigma: u32,
    alpha: usize,
    /// `tables[u][code]` for `u` in `1..alpha`: occurrences
    /// `(pattern id, start, end)` inside the `u`-symbol window whose
    /// little-endian base-`sigma` code is `code`. `tables[0]` stays empty.
    tables: Vec<Vec<ShortHits>>,
}

impl TabMultiMatcher {
    /// Builds the matcher with block length `alpha`, refusing to allocate
    /// tables beyond `budget_bytes`.
    pub fn build(
        patterns: &[Vec<u32>],
        sigma: u32,
        alpha: usize,
        budget_bytes: u64,
    ) -> Result<TabMultiMatcher> {
        if alpha == 0 {
            return Err(Error::InvalidParameter("block length must be positive"));
        }
        let required = required_table_bytes(sigma, alpha);
        if required > budget_bytes {
            return Err(Error::BudgetExceeded {
                required,
                budget: budget_bytes,
            });
        }
        let inner = MultiMatcher::build_with_block_size(patterns, sigma, alpha)?;
        let mut tables: Vec<Vec<ShortHits>> = Vec::with_capacity(alpha);
        tables.push(Vec::new());
        for u in 1..alpha {
            tables.push(vec![Vec::new(); (sigma as usize).pow(u as u32)]);
        }
        if alpha >= 2 {
            let ac = AcAutomaton::new(patterns);
            let mut cur: Vec<(u32, u32, u32)> = Vec::new();
            fill_tables(&ac, sigma, alpha, 0, 0, 0, &mut cur, &mut tables);
        }
        Ok(TabMultiMatcher {
            inner,
            sigma,
            alpha,
            tables,
        })
    }

    /// Block length.
    pub fn alpha(&self) -> usize {
        self.alpha
    }

    /// Total number of table entries (windows) across all lengths.
    pub fn table_entries(&self) -> usize {
        self.tables.iter().map(Vec::len).sum()
    }

    /// Structure sizes of the underlying block matcher.
    pub fn structure_stats(&self) -> StructureStats {
        self.inner.structure_stats()
    }

    /// Occurrences `(pattern id, start, end)` inside the window `w`,
    /// offsets relative to the window start. The window must be shorter
    /// than the block length.
    pub fn query_short(&self, w: PackedSlice<'_>) -> &[(u32, u32, u32)] {
        assert!(w.len() < self.alpha, "window as long as a block");
        if w.is_empty() {
            return &[];
        }
        &self.tables[w.len()][self.window_code(w)]
    }

    /// Little-endian base-`sigma` code of a window. For power-of-two
    /// alphabets the packed bits are the code already; otherwise the
    /// symbols are folded positionally.
    fn window_code(&self, w: PackedSlice<'_>) -> usize {
        let bpc = w.bits_per_char();
        if self.sigma == 1 << bpc {
            debug_assert!(w.len() as u32 * bpc <= 64);
            w.block_bits(0, w.len()) as usize
        } else {
            let mut code = 0usize;
            let mut mul = 1usize;
            for i in 0..w.len() {
                code += w.char_at(i) as usize * mul;
                mul *= self.sigma as usize;
            }
            code
        }
    }

    /// All occurrences of all patterns in `text`, sorted by
    /// (end, start, pattern id).
    pub fn find_all(&self, text: &PackedText) -> Result<Vec<Occurrence>> {
        Ok(self.find_all_with_stats(text)?.0)
    }

    /// [`TabMultiMatcher::find_all`] plus the query counters of the
    /// underlying block matcher (table probes are not counted — they are
    /// plain array reads).
    pub fn find_all_with_stats(&self, text: &PackedText) -> Result<(Vec<Occurrence>, QueryStats)> {
        if text.sigma() != self.sigma {
            return Err(Error::InvalidParameter(
                "text alphabet size differs from the matcher's",
            ));
        }
        let n = text.len();
        let mut out = Vec::new();
        let mut stats = QueryStats::default();
        if n == 0 {
            return Ok((out, stats));
        }
        let mut scratch = Vec::new();
        let mut state = 0u32;
        let mut abs = 0usize;
        loop {
            let blocklen = self.alpha.min(n - abs);
            // Ends in this block, starts at or before its first symbol.
            self.inner.report_block_with_stats(
                state,
                text.slice(abs, blocklen),
                abs,
                &mut out,
                &mut scratch,
                &mut stats,
            );
            // Strictly inside this block: within the window that skips the
            // block's first symbol.
            if blocklen >= 2 {
                for &(pid, rs, re) in self.query_short(text.slice(abs + 1, blocklen - 1)) {
                    out.push(Occurrence {
                        pattern_id: pid as usize,
                        start: abs + 1 + rs as usize,
                        end: abs + 1 + re as usize,
                    });
                }
            }
            if abs + self.alpha >= n {
                break;
            }
            state =
                self.inner
                    .transition_with_stats(state, text.slice(abs, self.alpha), &mut stats);
            abs += self.alpha;
        }
        sort_occurrences(&mut out);
        Ok((out, stats))
    }
}

/// Depth-first enumeration of all strings of length `< alpha`, snapshotting
/// the occurrence list accumulated along the path into the table entry of
/// every visited string.
#[allow(clippy::too_many_arguments)]
fn fill_tables(
    ac: &AcAutomaton,
    sigma: u32,
    alpha: usize,
    depth: usize,
    code: usize,
    state: u32,
    cur: &mut ShortHits,
    tables: &mut [Vec<ShortHits>],
) {
    if depth > 0 {
        tables[depth][code] = cur.clone();
    }
    if depth + 1 >= alpha {
        return;
    }
    let mul = (sigma as usize).pow(depth as u32);
    for c in 0..sigma {
        let ns = ac.step(state, c);
        let before = cur.len();
        for &(pid, plen) in ac.outputs_at(ns) {
            // Ends at position `depth`; anything matched within a string
            // of depth+1 symbols fits the window by construction.
            debug_assert!(plen as usize <= depth + 1);
            cur.push((pid, (depth + 1 - plen as usize) as u32, depth as u32));
        }
        fill_tables(
            ac,
            sigma,
            alpha,
            depth + 1,
            code + c as usize * mul,
            ns,
            cur,
            tables,
        );
        cur.truncate(before);
    }
}

// ===== tests =====
