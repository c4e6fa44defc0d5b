//! Randomized differential test suites: every engine against the
//! quadratic reference scan.
//!
//! [`run`] generates seeded random cases across the alphabet sizes,
//! pattern-set shapes, and text-length classes the engines are designed
//! for, prepends a fixed adversarial suite (maximally periodic patterns
//! and texts, Fibonacci words, duplicate patterns), and compares the
//! occurrence sets of every applicable engine against
//! [`crate::oracle::naive_find_all`]. Any disagreement is a bug in one of
//! the engines — the reference scan is too simple to be wrong.

use crate::acsim::MultiMatcher;
use crate::bitpack::PackedText;
use crate::oracle::{naive_find_all, AcAutomaton, KmpMatcher};
use crate::single::{SingleMatcher, TabSingleMatcher};
use crate::tabmulti::TabMultiMatcher;
use crate::{sort_occurrences, Occurrence};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Outcome of a differential run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelftestReport {
    /// Input cases exercised (random plus adversarial).
    pub cases: usize,
    /// Engine-versus-reference comparisons performed.
    pub checks: usize,
    /// Comparisons that disagreed with the reference scan.
    pub failures: usize,
    /// Description of the first disagreement, if any.
    pub first_failure: Option<String>,
}

impl SelftestReport {
    /// Whether every comparison agreed with the reference scan.
    pub fn is_ok(&self) -> bool {
        self.failures == 0
    }
}

/// One generated input: a pattern set and a text over a shared alphabet.
struct Case {
    desc: String,
    sigma: u32,
    patterns: Vec<Vec<u32>>,
    text: Vec<u32>,
    /// Block length for the tabulated multi-pattern engine.
    tab_alpha: usize,
}

/// Runs the adversarial suite plus `cases` seeded random cases and
/// compares every applicable engine against the reference scan.
pub fn run(seed: u64, cases: usize) -> SelftestReport {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut report = SelftestReport {
        cases: 0,
        checks: 0,
        failures: 0,
        first_failure: None,
    };
    for case in adversarial_cases() {
        check_case(&case, &mut report);
    }
    for i in 0..cases {
        let case = random_case(&mut rng, i);
        check_case(&case, &mut report);
    }
    report
}

/// Inputs chosen to stress the periodic-run reasoning: every window fully
/// periodic, Fibonacci words (maximally self-overlapping aperiodic
/// strings), unary strings, and duplicate patterns.
fn adversarial_cases() -> Vec<Case> {
    let mut cases = Vec::new();
    let ab = |k: usize| -> Vec<u32> {
        let mut v = Vec::with_capacity(2 * k);
        for _ in 0..k {
            v.push(0);
            v.push(1);
        }
        v
    };
    // p = (ab)^k a inside (ab)^K: the candidate progressions are as long
    // as the window allows.
    for k in 1..=4usize {
        let mut p = ab(k);
        p.push(0);
        for big in [k + 1, 3 * k + 4] {
            cases.push(Case {
                desc: format!("adversarial periodic k={k} K={big}"),
                sigma: 2,
                patterns: vec![p.clone()],
                text: ab(big),
                tab_alpha: 4,
            });
        }
    }
    // Fibonacci words: f(1) = b, f(2) = a, f(n) = f(n-1) f(n-2).
    let mut fib: Vec<Vec<u32>> = vec![vec![1], vec![0]];
    while fib.last().unwrap().len() < 250 {
        let mut next = fib[fib.len() - 1].clone();
        next.extend_from_slice(&fib[fib.len() - 2]);
        fib.push(next);
    }
    let text = fib.last().unwrap().clone();
    for take in [3usize, 5, 8, 13] {
        let pattern: Vec<u32> = text[..take].to_vec();
        cases.push(Case {
            desc: format!("adversarial fibonacci prefix len={take}"),
            sigma: 2,
            patterns: vec![pattern],
            text: text.clone(),
            tab_alpha: 5,
        });
    }
    cases.push(Case {
        desc: "adversarial fibonacci factor set".to_string(),
        sigma: 2,
        patterns: vec![text[2..7].to_vec(), text[5..11].to_vec(), vec![0, 0]],
        text: text.clone(),
        tab_alpha: 6,
    });
    // Unary strings: every position periodic with period 1.
    for m in [1usize, 3, 7, 12] {
        cases.push(Case {
            desc: format!("adversarial unary m={m}"),
            sigma: 2,
            patterns: vec![vec![0; m]],
            text: vec![0; 30],
            tab_alpha: 4,
        });
    }
    // Duplicate patterns must be reported once per pattern id.
    cases.push(Case {
        desc: "adversarial duplicate patterns".to_string(),
        sigma: 2,
        patterns: vec![vec![0, 1], vec![0, 1], vec![0]],
        text: ab(8),
        tab_alpha: 3,
    });
    cases
}

fn random_case(rng: &mut StdRng, index: usize) -> Case {
    let sigma = [2u32, 4, 16, 256][rng.random_range(0..4)];
    // Pattern-set size, weighted toward the small end but reaching 16;
    // single-pattern cases are common so the windowed engines get
    // exercised on every alphabet.
    let d = match rng.random_range(0..100) {
        0..40 => 1,
        40..65 => rng.random_range(2..=4),
        65..85 => rng.random_range(5..=8),
        _ => rng.random_range(9..=16),
    };
    // Text length classes: mostly tiny (where off-by-one bugs live), a
    // tail of large texts (where block arithmetic bugs live).
    let n = match rng.random_range(0..100) {
        0..70 => rng.random_range(0..=32),
        70..90 => rng.random_range(33..=256),
        90..99 => rng.random_range(257..=2048),
        _ => rng.random_range(2049..=10_000),
    };
    let text: Vec<u32> = (0..n).map(|_| rng.random_range(0..sigma)).collect();
    let mut patterns = Vec::with_capacity(d);
    for _ in 0..d {
        let len = match rng.random_range(0..100) {
            0..70 => rng.random_range(1..=12),
            70..90 => rng.random_range(13..=32),
            _ => rng.random_range(33..=64),
        };
        // Half the patterns are planted text factors so matches are
        // plentiful; the rest are random (mostly absent on the larger
        // alphabets).
        let pattern = if n >= len && rng.random_bool(0.5) {
            let s = rng.random_range(0..=n - len);
            text[s..s + len].to_vec()
        } else {
            (0..len).map(|_| rng.random_range(0..sigma)).collect()
        };
        patterns.push(pattern);
    }
    let tab_alpha = match sigma {
        2 => rng.random_range(2..=8),
        4 => rng.random_range(2..=5),
        16 => rng.random_range(2..=3),
        _ => 2,
    };
    Case {
        desc: format!("random case {index} sigma={sigma} d={d} n={n}"),
        sigma,
        patterns,
        text,
        tab_alpha,
    }
}

/// Compares every engine applicable to `case` against the reference scan.
fn check_case(case: &Case, report: &mut SelftestReport) {
    report.cases += 1;
    let expected = naive_find_all(&case.patterns, &case.text);
    let packed = PackedText::from_symbols(&case.text, case.sigma)
        .expect("generated text must fit its alphabet");

    let record = |engine: &str, got: Vec<Occurrence>, report: &mut SelftestReport| {
        report.checks += 1;
        if got != expected {
            report.failures += 1;
            if report.first_failure.is_none() {
                report.first_failure = Some(format!(
                    "{}: engine {engine} reported {} occurrences, reference {}",
                    case.desc,
                    got.len(),
                    expected.len()
                ));
            }
        }
    };

    let acsim = MultiMatcher::build(&case.patterns, case.sigma)
        .expect("generated patterns must be buildable");
    record("acsim", acsim.find_all(&packed).unwrap(), report);

    let tabmulti = TabMultiMatcher::build(&case.patterns, case.sigma, case.tab_alpha, u64::MAX)
        .expect("selftest block lengths are chosen to fit any budget");
    record("tabmulti", tabmulti.find_all(&packed).unwrap(), report);

    let ac = AcAutomaton::new(&case.patterns);
    record("ac", ac.find_all(&case.text), report);

    if case.patterns.len() <= 4 {
        let mut got = Vec::new();
        for (pid, pattern) in case.patterns.iter().enumerate() {
            let kmp = KmpMatcher::new(pattern);
            got.extend(kmp.find_all(&case.text).into_iter().map(|o| Occurrence {
                pattern_id: pid,
                ..o
            }));
        }
        sort_occurrences(&mut got);
        record("kmp", got, report);
    }

    if case.patterns.len() == 1 {
        let pattern = &case.patterns[0];
        let single = SingleMatcher::build(pattern, case.sigma).unwrap();
        record("single", single.find_all(&packed).unwrap(), report);

        // Table block length covering the pattern when the table stays
        // small; otherwise a deliberately undersized block exercises the
        // delegation path.
        let full = 2 * pattern.len();
        let alpha = if crate::single::required_table_bytes(case.sigma, full) <= 24 << 16 {
            full
        } else {
            2
        };
        let singletab = TabSingleMatcher::build(pattern, case.sigma, alpha, u64::MAX).unwrap();
        record("singletab", singletab.find_all(&packed).unwrap(), report);
    }
}
