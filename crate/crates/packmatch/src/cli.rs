//! The `packmatch` command-line interface.
//!
//! Three subcommands: `match` streams occurrences of a pattern set in a
//! text file, `bench` times engines against each other on one input, and
//! `selftest` runs the randomized differential suites. Patterns and text
//! are raw bytes; a byte-to-symbol map built from the pattern bytes keeps
//! the packing alphabet as small as the patterns allow, which is where
//! the packed engines get their speed.

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::acsim::{MultiMatcher, QueryStats};
use crate::bitpack::PackedText;
use crate::oracle::{naive_find_all, AcAutomaton, KmpMatcher};
use crate::selftest;
use crate::single::{self, SingleMatcher, TabSingleMatcher};
use crate::tabmulti::TabMultiMatcher;
use crate::Occurrence;

/// Maps text bytes to the dense symbol alphabet of the pattern set.
///
/// Every byte occurring in a pattern gets its own code; all remaining
/// bytes share one reserved code. A text position carrying the shared
/// code can never lie inside an occurrence, so collapsing foreign bytes
/// preserves the match set while keeping the alphabet — and with it the
/// packed representation — as small as possible.
#[derive(Debug)]
pub struct AlphabetMap {
    codes: [u32; 256],
    sigma: u32,
    other_code: u32,
}

impl AlphabetMap {
    /// Builds the map from the bytes of `patterns`. The alphabet size is
    /// the number of distinct pattern bytes plus one reserved code,
    /// rounded up to a power of two for packing.
    pub fn from_patterns<P: AsRef<[u8]>>(patterns: &[P]) -> AlphabetMap {
        let mut seen = [false; 256];
        for pattern in patterns {
            for &byte in pattern.as_ref() {
                seen[byte as usize] = true;
            }
        }
        let mut codes = [0u32; 256];
        let mut next = 0u32;
        for byte in 0..256 {
            if seen[byte] {
                codes[byte] = next;
                next += 1;
            }
        }
        let other_code = next;
        // When every byte value occurs in some pattern the reserved code
        // is unreachable and need not widen the alphabet.
        let used = if next == 256 { next } else { next + 1 };
        for byte in 0..256 {
            if !seen[byte] {
                codes[byte] = other_code;
            }
        }
        AlphabetMap {
            codes,
            sigma: used.next_power_of_two(),
            other_code,
        }
    }

    /// Alphabet size handed to the matchers (a power of two).
    pub fn sigma(&self) -> u32 {
        self.sigma
    }

    /// The code shared by all bytes absent from every pattern.
    pub fn other_code(&self) -> u32 {
        self.other_code
    }

    /// Encodes raw bytes into matcher symbols.
    pub fn encode(&self, bytes: &[u8]) -> Vec<u32> {
        bytes.iter().map(|&b| self.codes[b as usize]).collect()
    }
}

#[derive(Parser)]
#[command(
    name = "packmatch",
    version,
    about = "Exact single- and multi-pattern search over bit-packed text"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report every occurrence of the patterns in the text.
    Match(MatchArgs),
    /// Time engines on one input and report throughput and counters.
    Bench(BenchArgs),
    /// Run the randomized differential suites.
    Selftest(SelftestArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Engine {
    /// Block-at-a-time multi-pattern matcher.
    Acsim,
    /// Tabulated multi-pattern matcher.
    Tabmulti,
    /// Periodicity-window single-pattern matcher.
    Single,
    /// Tabulated single-pattern matcher.
    Singletab,
    /// Quadratic reference scan.
    Naive,
    /// Knuth-Morris-Pratt (single pattern).
    Kmp,
    /// Aho-Corasick, one symbol at a time.
    Ac,
}

impl Engine {
    fn name(self) -> &'static str {
        match self {
            Engine::Acsim => "acsim",
            Engine::Tabmulti => "tabmulti",
            Engine::Single => "single",
            Engine::Singletab => "singletab",
            Engine::Naive => "naive",
            Engine::Kmp => "kmp",
            Engine::Ac => "ac",
        }
    }
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Format {
    /// One line per occurrence: pattern_id, start, end (tab-separated).
    Tsv,
    /// One JSON object per occurrence per line.
    Json,
}

#[derive(Args)]
struct MatchArgs {
    /// File with one pattern per line (raw bytes, newline-delimited;
    /// empty lines are rejected).
    #[arg(long)]
    patterns: PathBuf,
    /// File with the text to scan (raw bytes).
    #[arg(long)]
    text: PathBuf,
    /// Engine to run (default: acsim for several patterns, single for
    /// one).
    #[arg(long, value_enum)]
    engine: Option<Engine>,
    /// Block length for the tabulated engines.
    #[arg(long)]
    alpha: Option<usize>,
    /// Memory budget in bytes for the tabulated engines.
    #[arg(long, default_value_t = 256 << 20)]
    budget: u64,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    format: Format,
    /// Print structure-query and transition counters to standard error.
    #[arg(long)]
    stats: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// File with one pattern per line (raw bytes).
    #[arg(long)]
    patterns: PathBuf,
    /// File with the text to scan (raw bytes).
    #[arg(long)]
    text: PathBuf,
    /// Comma-separated list of engines to time.
    #[arg(long, value_delimiter = ',', required = true)]
    engines: Vec<Engine>,
    /// Scans to run per engine (build time is excluded).
    #[arg(long, default_value_t = 1)]
    repeat: usize,
    /// Block length for the tabulated engines.
    #[arg(long)]
    alpha: Option<usize>,
    /// Memory budget in bytes for the tabulated engines.
    #[arg(long, default_value_t = 256 << 20)]
    budget: u64,
}

#[derive(Args)]
struct SelftestArgs {
    /// Seed for the case generator.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of random cases (the adversarial suite always runs).
    #[arg(long, default_value_t = 500)]
    cases: usize,
}

/// Parses `argv` and runs the selected subcommand. Returns the process
/// exit status: 0 on success, 1 on a selftest mismatch, 2 on usage or
/// input errors.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            // Help and version requests exit cleanly; everything else is
            // a usage error.
            return if err.use_stderr() { 2 } else { 0 };
        }
    };
    let outcome = match cli.command {
        Command::Match(args) => run_match(&args),
        Command::Bench(args) => run_bench(&args),
        Command::Selftest(args) => Ok(run_selftest(&args)),
    };
    match outcome {
        Ok(code) => code,
        Err(message) => {
            eprintln!("packmatch: {message}");
            2
        }
    }
}

/// Loaded and encoded input files.
struct LoadedInput {
    map: AlphabetMap,
    patterns: Vec<Vec<u32>>,
    text: Vec<u32>,
    packed: PackedText,
}

fn load_input(patterns_path: &Path, text_path: &Path) -> Result<LoadedInput, String> {
    let pattern_bytes = std::fs::read(patterns_path)
        .map_err(|e| format!("cannot read patterns file {}: {e}", patterns_path.display()))?;
    let text_bytes = std::fs::read(text_path)
        .map_err(|e| format!("cannot read text file {}: {e}", text_path.display()))?;
    let raw_patterns = parse_patterns(&pattern_bytes)?;
    let map = AlphabetMap::from_patterns(&raw_patterns);
    let patterns: Vec<Vec<u32>> = raw_patterns.iter().map(|p| map.encode(p)).collect();
    let text = map.encode(&text_bytes);
    let packed = PackedText::from_symbols(&text, map.sigma())
        .map_err(|e| format!("cannot pack text: {e}"))?;
    Ok(LoadedInput {
        map,
        patterns,
        text,
        packed,
    })
}

/// Splits a patterns file into lines of raw bytes. A trailing newline is
/// a delimiter, not an empty final pattern; empty lines anywhere are
/// rejected because empty patterns are meaningless.
fn parse_patterns(bytes: &[u8]) -> Result<Vec<Vec<u8>>, String> {
    let mut lines: Vec<&[u8]> = bytes.split(|&b| b == b'\n').collect();
    if lines.last().is_some_and(|l| l.is_empty()) {
        lines.pop();
    }
    if lines.is_empty() {
        return Err("patterns file contains no patterns".to_string());
    }
    for (i, line) in lines.iter().enumerate() {
        if line.is_empty() {
            return Err(format!("patterns file line {} is empty", i + 1));
        }
    }
    Ok(lines.into_iter().map(<[u8]>::to_vec).collect())
}

/// A constructed engine, ready to scan texts.
enum BuiltEngine {
    Acsim(MultiMatcher),
    TabMulti(TabMultiMatcher),
    Single(SingleMatcher),
    SingleTab(TabSingleMatcher),
    Naive(Vec<Vec<u32>>),
    Kmp(KmpMatcher),
    Ac(AcAutomaton),
}

fn build_engine(
    engine: Engine,
    input: &LoadedInput,
    alpha: Option<usize>,
    budget: u64,
) -> Result<BuiltEngine, String> {
    let d = input.patterns.len();
    let single_only = matches!(engine, Engine::Single | Engine::Singletab | Engine::Kmp);
    if single_only && d != 1 {
        return Err(format!(
            "engine {} requires exactly one pattern, got {d}",
            engine.name()
        ));
    }
    let sigma = input.map.sigma();
    let build_err = |e: crate::Error| format!("cannot build engine {}: {e}", engine.name());
    Ok(match engine {
        Engine::Acsim => {
            BuiltEngine::Acsim(MultiMatcher::build(&input.patterns, sigma).map_err(build_err)?)
        }
        Engine::Tabmulti => {
            let alpha = alpha.unwrap_or(2);
            BuiltEngine::TabMulti(
                TabMultiMatcher::build(&input.patterns, sigma, alpha, budget).map_err(build_err)?,
            )
        }
        Engine::Single => {
            BuiltEngine::Single(SingleMatcher::build(&input.patterns[0], sigma).map_err(build_err)?)
        }
        Engine::Singletab => {
            let m = input.patterns[0].len();
            let alpha = alpha.unwrap_or_else(|| {
                // Largest useful block: one covering the whole pattern.
                // When its table cannot fit, fall back to the delegating
                // configuration.
                if single::required_table_bytes(sigma, 2 * m) <= budget {
                    2 * m
                } else {
                    2
                }
            });
            BuiltEngine::SingleTab(
                TabSingleMatcher::build(&input.patterns[0], sigma, alpha, budget)
                    .map_err(build_err)?,
            )
        }
        Engine::Naive => BuiltEngine::Naive(input.patterns.clone()),
        Engine::Kmp => BuiltEngine::Kmp(KmpMatcher::new(&input.patterns[0])),
        Engine::Ac => BuiltEngine::Ac(AcAutomaton::new(&input.patterns)),
    })
}

impl BuiltEngine {
    /// Scans the input, returning occurrences and, for the block
    /// engines, the query counters.
    fn scan(&self, input: &LoadedInput) -> (Vec<Occurrence>, Option<QueryStats>) {
        match self {
            BuiltEngine::Acsim(m) => {
                let (occ, stats) = m
                    .find_all_with_stats(&input.packed)
                    .expect("text was packed with the matcher's alphabet");
                (occ, Some(stats))
            }
            BuiltEngine::TabMulti(m) => {
                let (occ, stats) = m
                    .find_all_with_stats(&input.packed)
                    .expect("text was packed with the matcher's alphabet");
                (occ, Some(stats))
            }
            BuiltEngine::Single(m) => (
                m.find_all(&input.packed)
                    .expect("text was packed with the matcher's alphabet"),
                None,
            ),
            BuiltEngine::SingleTab(m) => (
                m.find_all(&input.packed)
                    .expect("text was packed with the matcher's alphabet"),
                None,
            ),
            BuiltEngine::Naive(patterns) => (naive_find_all(patterns, &input.text), None),
            BuiltEngine::Kmp(m) => (m.find_all(&input.text), None),
            BuiltEngine::Ac(m) => (m.find_all(&input.text), None),
        }
    }

    /// Writes a `key value` construction/query report to standard error.
    fn print_stats(&self, engine: Engine, stats: Option<&QueryStats>) {
        eprintln!("engine {}", engine.name());
        if let Some(s) = stats {
            eprintln!("report_calls {}", s.report_calls);
            eprintln!("transitions {}", s.transitions);
            eprintln!("stab1_queries {}", s.stab1_queries);
            eprintln!("stab2_queries {}", s.stab2_queries);
            eprintln!("suffix_index_queries {}", s.b1_queries);
            eprintln!("factor_dict_queries {}", s.b2_queries);
            eprintln!("prefix_rank_queries {}", s.b3_queries);
        }
        match self {
            BuiltEngine::Acsim(m) => print_structure(&m.structure_stats()),
            BuiltEngine::TabMulti(m) => {
                print_structure(&m.structure_stats());
                eprintln!("table_block_len {}", m.alpha());
                eprintln!("table_entries {}", m.table_entries());
            }
            BuiltEngine::Single(m) => {
                eprintln!("pattern_len {}", m.pattern_len());
                if let Some(wl) = m.window_len() {
                    eprintln!("window_len {wl}");
                }
                eprintln!("factor_keys {}", m.factor_count());
            }
            BuiltEngine::SingleTab(m) => {
                eprintln!("table_block_len {}", m.alpha());
                eprintln!("table_slots {}", m.table_len());
            }
            _ => eprintln!("no_instrumentation 1"),
        }
    }
}

fn print_structure(s: &crate::acsim::StructureStats) {
    eprintln!("states {}", s.state_count);
    eprintln!("block_len {}", s.block_len);
    eprintln!("stab1_intervals {}", s.stab1_intervals);
    eprintln!("stab2_rects {}", s.stab2_rects);
    eprintln!("factor_keys {}", s.factor_keys);
}

fn run_match(args: &MatchArgs) -> Result<i32, String> {
    let input = load_input(&args.patterns, &args.text)?;
    let engine = args.engine.unwrap_or(if input.patterns.len() >= 2 {
        Engine::Acsim
    } else {
        Engine::Single
    });
    let built = build_engine(engine, &input, args.alpha, args.budget)?;
    let (occurrences, stats) = built.scan(&input);
    if args.stats {
        built.print_stats(engine, stats.as_ref());
    }
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    for occ in &occurrences {
        let line = match args.format {
            Format::Tsv => format!("{}\t{}\t{}", occ.pattern_id, occ.start, occ.end),
            Format::Json => serde_json::to_string(occ).expect("occurrences serialize"),
        };
        writeln!(out, "{line}").map_err(|e| format!("cannot write output: {e}"))?;
    }
    out.flush()
        .map_err(|e| format!("cannot write output: {e}"))?;
    Ok(0)
}

fn run_bench(args: &BenchArgs) -> Result<i32, String> {
    if args.repeat == 0 {
        return Err("--repeat must be positive".to_string());
    }
    let input = load_input(&args.patterns, &args.text)?;
    let n = input.text.len();
    println!("engine\tchars_per_sec\ttransitions\tstab_queries");
    for &engine in &args.engines {
        let built = build_engine(engine, &input, args.alpha, args.budget)?;
        let mut last = built.scan(&input); // warm-up, excluded from timing
        let start = Instant::now();
        for _ in 0..args.repeat {
            last = built.scan(&input);
        }
        let elapsed = start.elapsed().as_secs_f64().max(1e-9);
        let throughput = (n as f64 * args.repeat as f64) / elapsed;
        let (transitions, stab) = match &last.1 {
            Some(s) => (s.transitions, s.stab1_queries + s.stab2_queries),
            None => (0, 0),
        };
        println!(
            "{}\t{:.0}\t{}\t{}",
            engine.name(),
            throughput,
            transitions,
            stab
        );
    }
    Ok(0)
}

fn run_selftest(args: &SelftestArgs) -> i32 {
    let report = selftest::run(args.seed, args.cases);
    println!("cases\t{}", report.cases);
    println!("checks\t{}", report.checks);
    println!("failures\t{}", report.failures);
    if let Some(failure) = &report.first_failure {
        eprintln!("packmatch: first failure: {failure}");
    }
    if report.is_ok() {
        0
    } else {
        1
    }
}
