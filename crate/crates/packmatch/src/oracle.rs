//! Textbook reference matchers over plain symbol slices.
//!
//! These are deliberately simple, independent implementations used as
//! ground truth by the test suites and the differential self-test, and as
//! construction-time helpers (the tabulated engines drive [`KmpMatcher`]
//! and [`AcAutomaton`] while enumerating short strings). None of them touch
//! the packed representation.

use std::collections::HashMap;

use crate::Occurrence;

/// Finds every occurrence of every pattern by direct comparison at every
/// text position. Quadratic and obviously correct.
pub fn naive_find_all(patterns: &[Vec<u32>], text: &[u32]) -> Vec<Occurrence> {
    let mut out = Vec::new();
    for (pid, p) in patterns.iter().enumerate() {
        if p.is_empty() || p.len() > text.len() {
            continue;
        }
        for start in 0..=text.len() - p.len() {
            if &text[start..start + p.len()] == p.as_slice() {
                out.push(Occurrence {
                    pattern_id: pid,
                    start,
                    end: start + p.len() - 1,
                });
            }
        }
    }
    crate::sort_occurrences(&mut out);
    out
}

/// Classic failure-function matcher for one pattern.
#[derive(Debug, Clone)]
pub struct KmpMatcher {
    pattern: Vec<u32>,
    fail: Vec<usize>,
}

impl KmpMatcher {
    /// Builds the failure function. The pattern must be non-empty.
    pub fn new(pattern: &[u32]) -> KmpMatcher {
        assert!(!pattern.is_empty(), "empty pattern");
        let mut fail = vec![0usize; pattern.len()];
        let mut k = 0usize;
        for i in 1..pattern.len() {
            while k > 0 && pattern[k] != pattern[i] {
                k = fail[k - 1];
            }
            if pattern[k] == pattern[i] {
                k += 1;
            }
            fail[i] = k;
        }
        KmpMatcher {
            pattern: pattern.to_vec(),
            fail,
        }
    }

    /// The pattern this matcher was built for.
    pub fn pattern(&self) -> &[u32] {
        &self.pattern
    }

    /// Advances the matcher state (= length of the longest pattern prefix
    /// that is a suffix of the input read so far) by one symbol. A full
    /// match is signalled when the returned state equals the pattern
    /// length; feeding further symbols continues correctly.
    pub fn step(&self, state: usize, symbol: u32) -> usize {
        let mut k = if state == self.pattern.len() {
            self.fail[state - 1]
        } else {
            state
        };
        while k > 0 && self.pattern[k] != symbol {
            k = self.fail[k - 1];
        }
        if self.pattern[k] == symbol {
            k + 1
        } else {
            0
        }
    }

    /// All occurrences of the pattern in `text` (pattern id 0).
    pub fn find_all(&self, text: &[u32]) -> Vec<Occurrence> {
        let mut out = Vec::new();
        let mut state = 0usize;
        for (i, &c) in text.iter().enumerate() {
            state = self.step(state, c);
            if state == self.pattern.len() {
                out.push(Occurrence {
                    pattern_id: 0,
                    start: i + 1 - self.pattern.len(),
                    end: i,
                });
            }
        }
        out
    }
}

/// Classic multi-pattern automaton with goto/failure links and
/// materialized output sets.
///
/// States are the distinct prefixes of the patterns; the state reached
/// after reading a text is the longest pattern prefix that is a suffix of
/// that text. [`AcAutomaton::node_prefix`] exposes each state's prefix
/// string, which lets tests identify states with rank-based encodings.
#[derive(Debug)]
pub struct AcAutomaton {
    goto: Vec<HashMap<u32, u32>>,
    fail: Vec<u32>,
    /// Per state: ids of patterns ending at this state or at a state on
    /// its failure chain, with their lengths (materialized by BFS).
    outputs: Vec<Vec<(u32, u32)>>,
    /// Per state: the pattern prefix spelling the path from the root.
    prefixes: Vec<Vec<u32>>,
}

impl AcAutomaton {
    /// Builds the automaton. Empty patterns are ignored (they match
    /// nowhere under the occurrence model used here).
    pub fn new(patterns: &[Vec<u32>]) -> AcAutomaton {
        let mut goto: Vec<HashMap<u32, u32>> = vec![HashMap::new()];
        let mut ends: Vec<Vec<u32>> = vec![Vec::new()];
        let mut prefixes: Vec<Vec<u32>> = vec![Vec::new()];
        for (pid, p) in patterns.iter().enumerate() {
            if p.is_empty() {
                continue;
            }
            let mut s = 0u32;
            for &c in p {
                s = if let Some(&t) = goto[s as usize].get(&c) {
                    t
                } else {
                    let t = goto.len() as u32;
                    goto.push(HashMap::new());
                    ends.push(Vec::new());
                    let mut pre = prefixes[s as usize].clone();
                    pre.push(c);
                    prefixes.push(pre);
                    goto[s as usize].insert(c, t);
                    t
                };
            }
            ends[s as usize].push(pid as u32);
        }
        let n = goto.len();
        let mut fail = vec![0u32; n];
        let mut outputs: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n];
        for (s, out) in outputs.iter_mut().enumerate() {
            for &pid in &ends[s] {
                out.push((pid, prefixes[s].len() as u32));
            }
        }
        // BFS order guarantees fail[s] is final before s is processed.
        let mut queue: std::collections::VecDeque<u32> = goto[0].values().copied().collect();
        while let Some(s) = queue.pop_front() {
            let transitions: Vec<(u32, u32)> =
                goto[s as usize].iter().map(|(&c, &t)| (c, t)).collect();
            for (c, t) in transitions {
                let mut f = fail[s as usize];
                loop {
                    if let Some(&g) = goto[f as usize].get(&c) {
                        if g != t {
                            fail[t as usize] = g;
                        }
                        break;
                    }
                    if f == 0 {
                        break;
                    }
                    f = fail[f as usize];
                }
                let inherited = outputs[fail[t as usize] as usize].clone();
                outputs[t as usize].extend(inherited);
                queue.push_back(t);
            }
        }
        AcAutomaton {
            goto,
            fail,
            outputs,
            prefixes,
        }
    }

    /// Number of states (distinct pattern prefixes, including the root).
    pub fn state_count(&self) -> usize {
        self.goto.len()
    }

    /// The pattern prefix identifying `state`.
    pub fn node_prefix(&self, state: u32) -> &[u32] {
        &self.prefixes[state as usize]
    }

    /// One automaton step.
    pub fn step(&self, mut state: u32, symbol: u32) -> u32 {
        loop {
            if let Some(&t) = self.goto[state as usize].get(&symbol) {
                return t;
            }
            if state == 0 {
                return 0;
            }
            state = self.fail[state as usize];
        }
    }

    /// State reached after reading `text` from the root: identifies the
    /// longest pattern prefix that is a suffix of `text`.
    pub fn state_after(&self, text: &[u32]) -> u32 {
        let mut s = 0u32;
        for &c in text {
            s = self.step(s, c);
        }
        s
    }

    /// Pattern ids and lengths matched when standing at `state` (i.e.
    /// patterns that are suffixes of the input read so far).
    pub fn outputs_at(&self, state: u32) -> &[(u32, u32)] {
        &self.outputs[state as usize]
    }

    /// All occurrences of all patterns in `text`, sorted by
    /// (end, start, pattern id).
    pub fn find_all(&self, text: &[u32]) -> Vec<Occurrence> {
        let mut out = Vec::new();
        let mut s = 0u32;
        for (i, &c) in text.iter().enumerate() {
            s = self.step(s, c);
            for &(pid, plen) in &self.outputs[s as usize] {
                out.push(Occurrence {
                    pattern_id: pid as usize,
                    start: i + 1 - plen as usize,
                    end: i,
                });
            }
        }
        crate::sort_occurrences(&mut out);
        out
    }
}

// ===== tests =====
