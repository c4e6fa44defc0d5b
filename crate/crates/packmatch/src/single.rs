//! Single-pattern matching driven by the periodic structure of pattern
//! factors, plus a tabulated variant for very short patterns.
//!
//! [`SingleMatcher`] slides a window of `m + h` symbols (`h = ⌊m/3⌋`) over
//! the text in steps of `h + 1` and decides all `h + 1` candidate
//! alignments of one window together. The key observation: an occurrence
//! of the pattern `p` starting anywhere in the window forces the fixed
//! text factor `q = W[h .. m)` (length `m − h`) to appear inside `p`, so a
//! dictionary lookup on `q` either rules out the whole window or pins the
//! candidate starts to an arithmetic progression derived from `q`'s
//! occurrence list in `p`. Because all occurrences of a repeated factor sit
//! `period(q)` apart, the progression is verified with a constant number
//! of word-level comparisons (two repetition scans plus two remainder
//! compares) instead of one verification per candidate.
//!
//! [`TabSingleMatcher`] handles patterns much shorter than a machine word
//! by precomputing, for every string of `alpha` symbols, the pattern's
//! occurrence starts within that string's first `alpha/2` positions; the
//! text is then consumed `alpha/2` symbols per table probe.

use crate::bitpack::{
    compare_equal, longest_prefix_repetition, longest_suffix_repetition, PackedSlice, PackedText,
};
use crate::oracle::KmpMatcher;
use crate::strorder::StringMph;
use crate::{sort_occurrences, Error, Occurrence, Result};

/// Occurrence summary of one distinct pattern factor of length `m − h`.
///
/// `period` is meaningful only when `count >= 2`; a factor that occurs
/// twice inside `p` at distance at most half its length is periodic, and
/// all its occurrences form one arithmetic progression with this period.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorTriplet {
    /// Offset of the factor's first (leftmost) occurrence in the pattern.
    pub first_occ: usize,
    /// Total number of occurrences of the factor in the pattern.
    pub count: usize,
    /// Shortest period of the factor; `0` when `count == 1`.
    pub period: usize,
}

/// Per-factor data derived at build time.
#[derive(Debug, Clone, Copy)]
struct FactorInfo {
    triplet: FactorTriplet,
    /// `|q| mod period` — length of the leading partial repetition `u`
    /// in the decomposition `q = (uv)^t u`. Zero when `count == 1`.
    u_len: usize,
    /// Last index (inclusive) of the factor's occurrence run in `p`:
    /// `first_occ + (count-1)*period + |q| - 1`. Zero when `count == 1`.
    run_end: usize,
    /// Whether `p[0 .. first_occ)` (the part of `p` left of the run) is a
    /// suffix of one period `uv`; decides all non-leftmost candidates.
    left_rem_is_uv_suffix: bool,
    /// Whether `p[run_end+1 .. m)` (the part right of the run) is a
    /// prefix of one rotated period `vu`; decides all non-rightmost
    /// candidates.
    right_rem_is_vu_prefix: bool,
}

/// Window machinery for patterns of length at least 3.
#[derive(Debug)]
struct Windowed {
    p: PackedText,
    /// Pattern length.
    m: usize,
    /// `⌊m/3⌋`; each window owns the `h + 1` candidate starts `[0, h]`.
    h: usize,
    /// Factor length `m − h`.
    flen: usize,
    /// Distinct length-`flen` factor -> index into `infos`.
    dict: StringMph<u32>,
    infos: Vec<FactorInfo>,
}

#[derive(Debug)]
enum Mode {
    /// Patterns of length 1 or 2: the window machinery degenerates
    /// (`h = 0`), so a failure-function scan is used instead.
    Short(KmpMatcher),
    Windowed(Windowed),
}

/// Matcher for one pattern over alphabet `[0, sigma)` that verifies a
/// whole window of candidate alignments per dictionary probe.
#[derive(Debug)]
pub struct SingleMatcher {
    sigma: u32,
    mode: Mode,
}

impl SingleMatcher {
    /// Builds the matcher for `pattern` over alphabet `[0, sigma)`.
    pub fn build(pattern: &[u32], sigma: u32) -> Result<SingleMatcher> {
        if pattern.is_empty() {
            return Err(Error::EmptyPattern);
        }
        for (index, &symbol) in pattern.iter().enumerate() {
            if symbol >= sigma {
                return Err(Error::SymbolOutOfRange {
                    index,
                    symbol,
                    sigma,
                });
            }
        }
        let m = pattern.len();
        if m < 3 {
            return Ok(SingleMatcher {
                sigma,
                mode: Mode::Short(KmpMatcher::new(pattern)),
            });
        }
        let h = m / 3;
        let flen = m - h;
        let p = PackedText::from_symbols(pattern, sigma)?;

        // Group the h+1 factor start positions by factor equality. Two
        // suffixes of p share the same length-flen prefix exactly when
        // they stay connected by LCP >= flen in suffix-array order, so one
        // pass over the array splits the groups.
        let sa = suffix_array(pattern);
        let lcps = lcp_array(pattern, &sa);
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut cur: Vec<usize> = Vec::new();
        let mut chain = usize::MAX;
        for r in 0..m {
            if r > 0 {
                chain = chain.min(lcps[r]);
            }
            if sa[r] <= h {
                if !cur.is_empty() && chain < flen {
                    groups.push(std::mem::take(&mut cur));
                }
                cur.push(sa[r]);
                chain = usize::MAX;
            }
        }
        if !cur.is_empty() {
            groups.push(cur);
        }
        debug_assert_eq!(groups.iter().map(Vec::len).sum::<usize>(), h + 1);

        let mut infos = Vec::with_capacity(groups.len());
        for starts in &mut groups {
            starts.sort_unstable();
            let first_occ = starts[0];
            let count = starts.len();
            let info = if count >= 2 {
                let period = starts[1] - starts[0];
                // Any two occurrences of the factor lie at most h <=
                // |q|/2 apart, so all of them sit on one arithmetic
                // progression stepped by the shortest period.
                for (k, &s) in starts.iter().enumerate() {
                    assert_eq!(
                        s,
                        first_occ + k * period,
                        "occurrences of a repeated factor must form a single periodic run"
                    );
                }
                assert!(
                    period >= 1 && 2 * period <= flen,
                    "period of a repeated factor must be at most half its length"
                );
                #[cfg(debug_assertions)]
                check_shortest_period(pattern, first_occ, flen, period);
                let u_len = flen % period;
                let run_end = first_occ + (count - 1) * period + flen - 1;
                let left_len = first_occ;
                let right_len = m - 1 - run_end;
                // `uv` is the factor's first period, `vu` the rotation
                // that continues the run to the right.
                let left_rem_is_uv_suffix = left_len <= period
                    && compare_equal(
                        p.slice(0, left_len),
                        p.slice(first_occ + period - left_len, left_len),
                    );
                let right_rem_is_vu_prefix = right_len <= period
                    && compare_equal(
                        p.slice(run_end + 1, right_len),
                        p.slice(first_occ + u_len, right_len),
                    );
                FactorInfo {
                    triplet: FactorTriplet {
                        first_occ,
                        count,
                        period,
                    },
                    u_len,
                    run_end,
                    left_rem_is_uv_suffix,
                    right_rem_is_vu_prefix,
                }
            } else {
                FactorInfo {
                    triplet: FactorTriplet {
                        first_occ,
                        count: 1,
                        period: 0,
                    },
                    u_len: 0,
                    run_end: 0,
                    left_rem_is_uv_suffix: false,
                    right_rem_is_vu_prefix: false,
                }
            };
            infos.push(info);
        }

        let keys: Vec<(PackedSlice<'_>, u32)> = infos
            .iter()
            .enumerate()
            .map(|(i, info)| (p.slice(info.triplet.first_occ, flen), i as u32))
            .collect();
        let dict = StringMph::build(&keys);

        Ok(SingleMatcher {
            sigma,
            mode: Mode::Windowed(Windowed {
                p,
                m,
                h,
                flen,
                dict,
                infos,
            }),
        })
    }

    /// Alphabet size the matcher was built for.
    pub fn sigma(&self) -> u32 {
        self.sigma
    }

    /// Length of the pattern.
    pub fn pattern_len(&self) -> usize {
        match &self.mode {
            Mode::Short(kmp) => kmp.pattern().len(),
            Mode::Windowed(w) => w.m,
        }
    }

    /// Whether the window machinery is active (pattern length >= 3).
    pub fn is_windowed(&self) -> bool {
        matches!(self.mode, Mode::Windowed(_))
    }

    /// Full window length `m + h`; `None` for short patterns.
    pub fn window_len(&self) -> Option<usize> {
        match &self.mode {
            Mode::Short(_) => None,
            Mode::Windowed(w) => Some(w.m + w.h),
        }
    }

    /// Factor length `m − h`; `None` for short patterns.
    pub fn factor_len(&self) -> Option<usize> {
        match &self.mode {
            Mode::Short(_) => None,
            Mode::Windowed(w) => Some(w.flen),
        }
    }

    /// Number of distinct factors in the dictionary (0 for short
    /// patterns). Always at most `h + 1`.
    pub fn factor_count(&self) -> usize {
        match &self.mode {
            Mode::Short(_) => 0,
            Mode::Windowed(w) => w.infos.len(),
        }
    }

    /// Occurrence summary of `factor` within the pattern, or `None` if
    /// `factor` is not one of the pattern's length-`(m − h)` factors (or
    /// the matcher runs in short mode).
    pub fn factor_triplet(&self, factor: &[u32]) -> Option<FactorTriplet> {
        let w = match &self.mode {
            Mode::Short(_) => return None,
            Mode::Windowed(w) => w,
        };
        if factor.len() != w.flen || factor.iter().any(|&c| c >= self.sigma) {
            return None;
        }
        let packed = PackedText::from_symbols(factor, self.sigma).ok()?;
        let info = w.info_for(packed.as_slice())?;
        Some(info.triplet)
    }

    /// Repetition counts of a repeated factor inside one window: returns
    /// `(i_left, i_right, c)` where `i_left` periods extend the factor's
    /// central occurrence to the left of window position `h`, `i_right`
    /// periods extend it to the right of position `m`, and
    /// `c = i_left + i_right + 1` is the exact number of occurrences of
    /// the factor in the window.
    ///
    /// Requires a windowed matcher, `triplet.count >= 2`, a window of
    /// length in `[m, m + h]`, and `window[h .. m) ==` the triplet's
    /// factor.
    pub fn count_factor_occurrences(
        &self,
        window: PackedSlice<'_>,
        triplet: &FactorTriplet,
    ) -> (usize, usize, usize) {
        let w = match &self.mode {
            Mode::Short(_) => panic!("factor counting requires a pattern of length >= 3"),
            Mode::Windowed(w) => w,
        };
        assert!(
            triplet.count >= 2,
            "factor counting requires a repeated factor"
        );
        let wl = window.len();
        assert!(
            wl >= w.m && wl <= w.m + w.h,
            "window length must lie in [m, m + h]"
        );
        debug_assert!(compare_equal(
            window.slice(w.h, w.flen),
            w.p.slice(triplet.first_occ, w.flen)
        ));
        let g = triplet.period;
        let uv = w.p.slice(triplet.first_occ, g);
        let vu = w.p.slice(triplet.first_occ + w.flen % g, g);
        let i_left = longest_suffix_repetition(uv, window.slice(0, w.h));
        let i_right = longest_prefix_repetition(vu, window.slice(w.m, wl - w.m));
        (i_left, i_right, i_left + i_right + 1)
    }

    /// All occurrences of the pattern starting at window offsets
    /// `[0, h]`, reported at absolute positions `window_abs + offset`.
    /// The window is `text[window_abs .. window_abs + m + h)`, truncated
    /// at the end of the text; candidates whose full extent does not fit
    /// in the window are discarded. Requires a windowed matcher.
    pub fn match_window(&self, window: PackedSlice<'_>, window_abs: usize) -> Vec<Occurrence> {
        let mut out = Vec::new();
        match &self.mode {
            Mode::Short(_) => debug_assert!(false, "match_window requires a windowed matcher"),
            Mode::Windowed(w) => w.match_window_into(window, window_abs, &mut out),
        }
        out
    }

    /// All occurrences of the pattern in `text`, sorted by
    /// (end, start, pattern id). The single pattern has id 0.
    pub fn find_all(&self, text: &PackedText) -> Result<Vec<Occurrence>> {
        if text.sigma() != self.sigma {
            return Err(Error::InvalidParameter(
                "text alphabet size differs from the matcher's",
            ));
        }
        let n = text.len();
        let mut out = Vec::new();
        match &self.mode {
            Mode::Short(kmp) => {
                let m = kmp.pattern().len();
                let mut state = 0usize;
                for i in 0..n {
                    state = kmp.step(state, text.char_at(i));
                    if state == m {
                        out.push(Occurrence {
                            pattern_id: 0,
                            start: i + 1 - m,
                            end: i,
                        });
                    }
                }
            }
            Mode::Windowed(w) => {
                let mut start = 0usize;
                while start + w.m <= n {
                    let wl = (w.m + w.h).min(n - start);
                    w.match_window_into(text.slice(start, wl), start, &mut out);
                    start += w.h + 1;
                }
            }
        }
        sort_occurrences(&mut out);
        Ok(out)
    }
}

impl Windowed {
    /// Dictionary lookup with verification: `None` unless `q` is exactly
    /// one of the stored factors.
    fn info_for(&self, q: PackedSlice<'_>) -> Option<&FactorInfo> {
        let &idx = self.dict.lookup(q)?;
        let info = &self.infos[idx as usize];
        if compare_equal(q, self.p.slice(info.triplet.first_occ, self.flen)) {
            Some(info)
        } else {
            None
        }
    }

    fn match_window_into(&self, win: PackedSlice<'_>, abs: usize, out: &mut Vec<Occurrence>) {
        let (m, h, flen) = (self.m, self.h, self.flen);
        let wl = win.len();
        if wl < m {
            return;
        }
        debug_assert!(wl <= m + h);
        // An occurrence of p at window offset a makes q = win[h .. m)
        // equal to p's factor at offset h - a, so a miss here clears all
        // h + 1 candidates at once.
        let info = match self.info_for(win.slice(h, flen)) {
            Some(info) => info,
            None => return,
        };
        let alpha = info.triplet.first_occ;
        let beta = info.triplet.count;
        if beta == 1 {
            // q occurs in p only at alpha, pinning the single candidate.
            let a = h - alpha;
            if a + m <= wl
                && compare_equal(win.slice(a, alpha), self.p.slice(0, alpha))
                && compare_equal(
                    win.slice(m, h - alpha),
                    self.p.slice(alpha + flen, h - alpha),
                )
            {
                out.push(Occurrence {
                    pattern_id: 0,
                    start: abs + a,
                    end: abs + a + m - 1,
                });
            }
            return;
        }

        // Repeated factor: occurrences of q in the window form one run
        // around the central copy, and each one shifts the candidate
        // start of p by the factor period g.
        let g = info.triplet.period;
        let run_end = info.run_end;
        let uv = self.p.slice(alpha, g);
        let vu = self.p.slice(alpha + info.u_len, g);
        let i_left = longest_suffix_repetition(uv, win.slice(0, h));
        let i_right = longest_prefix_repetition(vu, win.slice(m, wl - m));
        let c_win = i_left + i_right + 1;
        if c_win < beta {
            // Fewer copies of q in the window than p itself contains.
            return;
        }
        let candidates = c_win - beta + 1;

        // p = left_rem . (uv)^t' u . right_rem. The outermost candidates
        // place one remainder outside the window's periodic run, where it
        // must be compared literally; every other remainder falls inside
        // the run and is decided by the precomputed one-period flags.
        let left_len = alpha;
        let right_len = m - 1 - run_end;
        let left_edge_eq = {
            let end = h - i_left * g;
            end >= left_len
                && compare_equal(
                    win.slice(end - left_len, left_len),
                    self.p.slice(0, left_len),
                )
        };
        let right_edge_eq = {
            let start = m + i_right * g;
            start + right_len <= wl
                && compare_equal(
                    win.slice(start, right_len),
                    self.p.slice(run_end + 1, right_len),
                )
        };

        // Candidate start for progression index j is h - alpha + j*g,
        // with j ranging over [-i_left, i_right - beta + 1].
        let before = out.len();
        let j_lo = -(i_left as i64);
        let j_hi = i_right as i64 - beta as i64 + 1;
        let mut emit = |j: i64| {
            let a = h as i64 - alpha as i64 + j * g as i64;
            if a >= 0 && (a as usize) <= h && a as usize + m <= wl {
                out.push(Occurrence {
                    pattern_id: 0,
                    start: abs + a as usize,
                    end: abs + a as usize + m - 1,
                });
            }
        };
        if candidates == 1 {
            if left_edge_eq && right_edge_eq {
                emit(j_lo);
            }
        } else {
            if left_edge_eq && info.right_rem_is_vu_prefix {
                emit(j_lo);
            }
            if info.left_rem_is_uv_suffix && info.right_rem_is_vu_prefix {
                let mut j = j_lo + 1;
                while j < j_hi {
                    emit(j);
                    j += 1;
                }
            }
            if right_edge_eq && info.left_rem_is_uv_suffix {
                emit(j_hi);
            }
        }
        debug_assert!(out.len() - before <= candidates);
    }
}

/// Suffix array by prefix doubling (adequate for patterns at desk scale).
fn suffix_array(s: &[u32]) -> Vec<usize> {
    let n = s.len();
    let mut sa: Vec<usize> = (0..n).collect();
    let mut rank: Vec<i64> = s.iter().map(|&c| c as i64).collect();
    let mut tmp: Vec<i64> = vec![0; n];
    let mut k = 1usize;
    fn key(rank: &[i64], i: usize, k: usize) -> (i64, i64) {
        let second = if i + k < rank.len() { rank[i + k] } else { -1 };
        (rank[i], second)
    }
    while k < n {
        sa.sort_unstable_by_key(|&i| key(&rank, i, k));
        tmp[sa[0]] = 0;
        for r in 1..n {
            let bump = (key(&rank, sa[r], k) != key(&rank, sa[r - 1], k)) as i64;
            tmp[sa[r]] = tmp[sa[r - 1]] + bump;
        }
        std::mem::swap(&mut rank, &mut tmp);
        if rank[sa[n - 1]] == (n - 1) as i64 {
            break;
        }
        k <<= 1;
    }
    sa
}

/// LCP array (`lcp[r]` = longest common prefix of `sa[r-1]` and `sa[r]`)
/// by Kasai's rank-walk.
fn lcp_array(s: &[u32], sa: &[usize]) -> Vec<usize> {
    let n = s.len();
    let mut inv = vec![0usize; n];
    for (r, &i) in sa.iter().enumerate() {
        inv[i] = r;
    }
    let mut lcp = vec![0usize; n];
    let mut k = 0usize;
    for i in 0..n {
        if inv[i] == 0 {
            k = 0;
            continue;
        }
        let j = sa[inv[i] - 1];
        while i + k < n && j + k < n && s[i + k] == s[j + k] {
            k += 1;
        }
        lcp[inv[i]] = k;
        k = k.saturating_sub(1);
    }
    lcp
}

/// Debug-build check that `period` really is the shortest period of the
/// factor at `first_occ` and that every short period is a multiple of it.
#[cfg(debug_assertions)]
fn check_shortest_period(pattern: &[u32], first_occ: usize, flen: usize, period: usize) {
    if pattern.len() > 64 {
        return;
    }
    let q = &pattern[first_occ..first_occ + flen];
    let is_period = |g: usize| (0..flen - g).all(|i| q[i] == q[i + g]);
    let shortest = (1..=flen).find(|&g| is_period(g)).unwrap();
    debug_assert_eq!(shortest, period, "stored period must be the shortest one");
    for g in 1..=flen / 2 {
        if is_period(g) {
            debug_assert_eq!(
                g % period,
                0,
                "short periods must be multiples of the shortest"
            );
        }
    }
}

/// Bytes needed by the short-pattern table over all `sigma^alpha`
/// strings, counting one occurrence-list header per entry. Saturates at
/// `u64::MAX` when the table is astronomically out of reach.
pub fn required_table_bytes(sigma: u32, alpha: usize) -> u64 {
    const BYTES_PER_ENTRY: u64 = 24;
    let mut entries: u64 = 1;
    for _ in 0..alpha {
        entries = match entries.checked_mul(sigma as u64) {
            Some(v) => v,
            None => return u64::MAX,
        };
    }
    entries.saturating_mul(BYTES_PER_ENTRY)
}

#[derive(Debug)]
struct TabTable {
    p: PackedText,
    m: usize,
    /// Code of an `alpha`-symbol string -> pattern occurrence starts
    /// within its first `alpha/2` positions.
    table: Vec<Vec<u32>>,
}

#[derive(Debug)]
enum TabMode {
    /// Pattern too long for the table to cover its occurrences:
    /// the windowed matcher already answers in the required time.
    Delegate(SingleMatcher),
    Table(TabTable),
}

/// Tabulated single-pattern matcher: processes `alpha/2` symbols per
/// table probe once every length-`alpha` block's occurrence starts have
/// been precomputed.
#[derive(Debug)]
pub struct TabSingleMatcher {
    sigma: u32,
    alpha: usize,
    mode: TabMode,
}

impl TabSingleMatcher {
    /// Builds the matcher for `pattern` over `[0, sigma)` with table
    /// block length `alpha` (must be even and positive). Patterns longer
    /// than `alpha/2` delegate to [`SingleMatcher`]; otherwise the table
    /// over all `sigma^alpha` strings must fit in `budget_bytes`.
    pub fn build(
        pattern: &[u32],
        sigma: u32,
        alpha: usize,
        budget_bytes: u64,
    ) -> Result<TabSingleMatcher> {
        if alpha == 0 || !alpha.is_multiple_of(2) {
            return Err(Error::InvalidParameter(
                "table block length must be even and positive",
            ));
        }
        if pattern.is_empty() {
            return Err(Error::EmptyPattern);
        }
        for (index, &symbol) in pattern.iter().enumerate() {
            if symbol >= sigma {
                return Err(Error::SymbolOutOfRange {
                    index,
                    symbol,
                    sigma,
                });
            }
        }
        let m = pattern.len();
        if m > alpha / 2 {
            return Ok(TabSingleMatcher {
                sigma,
                alpha,
                mode: TabMode::Delegate(SingleMatcher::build(pattern, sigma)?),
            });
        }
        let required = required_table_bytes(sigma, alpha);
        if required > budget_bytes {
            return Err(Error::BudgetExceeded {
                required,
                budget: budget_bytes,
            });
        }
        let entries = (required / 24) as usize;
        let mut table: Vec<Vec<u32>> = vec![Vec::new(); entries];
        let mut mults = Vec::with_capacity(alpha);
        let mut mul = 1u64;
        for _ in 0..alpha {
            mults.push(mul);
            mul = mul.saturating_mul(sigma as u64);
        }
        let kmp = KmpMatcher::new(pattern);
        let mut cur = Vec::new();
        fill_table(&kmp, sigma, alpha, 0, 0, 0, &mults, &mut cur, &mut table);
        let p = PackedText::from_symbols(pattern, sigma)?;
        Ok(TabSingleMatcher {
            sigma,
            alpha,
            mode: TabMode::Table(TabTable { p, m, table }),
        })
    }

    /// Alphabet size the matcher was built for.
    pub fn sigma(&self) -> u32 {
        self.sigma
    }

    /// Table block length.
    pub fn alpha(&self) -> usize {
        self.alpha
    }

    /// Whether the table is active (as opposed to delegating to the
    /// windowed matcher).
    pub fn is_tabulated(&self) -> bool {
        matches!(self.mode, TabMode::Table(_))
    }

    /// Number of table slots (`sigma^alpha`), or 0 when delegating.
    pub fn table_len(&self) -> usize {
        match &self.mode {
            TabMode::Delegate(_) => 0,
            TabMode::Table(t) => t.table.len(),
        }
    }

    /// The precomputed occurrence starts for the length-`alpha` string
    /// `block` (starts within its first `alpha/2` positions), or `None`
    /// when delegating or `block` is not a valid length-`alpha` string.
    pub fn table_entry(&self, block: &[u32]) -> Option<&[u32]> {
        let t = match &self.mode {
            TabMode::Delegate(_) => return None,
            TabMode::Table(t) => t,
        };
        if block.len() != self.alpha || block.iter().any(|&c| c >= self.sigma) {
            return None;
        }
        let mut code = 0usize;
        let mut mul = 1usize;
        for &c in block {
            code += c as usize * mul;
            mul *= self.sigma as usize;
        }
        Some(&t.table[code])
    }

    /// All occurrences of the pattern in `text`, sorted by
    /// (end, start, pattern id). The single pattern has id 0.
    pub fn find_all(&self, text: &PackedText) -> Result<Vec<Occurrence>> {
        if text.sigma() != self.sigma {
            return Err(Error::InvalidParameter(
                "text alphabet size differs from the matcher's",
            ));
        }
        let t = match &self.mode {
            TabMode::Delegate(sm) => return sm.find_all(text),
            TabMode::Table(t) => t,
        };
        let n = text.len();
        let half = self.alpha / 2;
        let mut out = Vec::new();
        let mut i = 0usize;
        while i * half + self.alpha <= n {
            let base = i * half;
            let code = window_code(text.slice(base, self.alpha), self.sigma);
            for &rel in &t.table[code] {
                let start = base + rel as usize;
                out.push(Occurrence {
                    pattern_id: 0,
                    start,
                    end: start + t.m - 1,
                });
            }
            i += 1;
        }
        // Starts not owned by any full table window: plain scan over the
        // sub-alpha tail.
        if n >= t.m {
            for a in i * half..=(n - t.m) {
                if compare_equal(text.slice(a, t.m), t.p.as_slice()) {
                    out.push(Occurrence {
                        pattern_id: 0,
                        start: a,
                        end: a + t.m - 1,
                    });
                }
            }
        }
        sort_occurrences(&mut out);
        Ok(out)
    }
}

/// Little-endian base-`sigma` code of a window; the packed bits are the
/// code already when `sigma` is a power of two.
fn window_code(w: PackedSlice<'_>, sigma: u32) -> usize {
    let bpc = w.bits_per_char();
    if sigma == 1 << bpc {
        debug_assert!(w.len() as u32 * bpc <= 64);
        w.block_bits(0, w.len()) as usize
    } else {
        let mut code = 0usize;
        let mut mul = 1usize;
        for i in 0..w.len() {
            code += w.char_at(i) as usize * mul;
            mul *= sigma as usize;
        }
        code
    }
}

/// Depth-first enumeration of all `sigma^alpha` strings, carrying the KMP
/// state so each occurrence is recorded once at the depth where it
/// completes; the occurrence list is snapshotted at every leaf.
#[allow(clippy::too_many_arguments)]
fn fill_table(
    kmp: &KmpMatcher,
    sigma: u32,
    alpha: usize,
    depth: usize,
    code: usize,
    state: usize,
    mults: &[u64],
    cur: &mut Vec<u32>,
    table: &mut Vec<Vec<u32>>,
) {
    if depth == alpha {
        table[code] = cur.clone();
        return;
    }
    let m = kmp.pattern().len();
    for c in 0..sigma {
        let next = kmp.step(state, c);
        let mut pushed = false;
        if next == m {
            let start = depth + 1 - m;
            if start < alpha / 2 {
                cur.push(start as u32);
                pushed = true;
            }
        }
        let child = code + c as usize * mults[depth] as usize;
        fill_table(kmp, sigma, alpha, depth + 1, child, next, mults, cur, table);
        if pushed {
            cur.pop();
        }
    }
}
