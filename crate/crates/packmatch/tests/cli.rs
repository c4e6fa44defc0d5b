//! End-to-end checks of the command-line binary: spawn the real
//! executable on real files and assert on streams and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_packmatch"))
}

fn write_file(dir: &tempfile::TempDir, name: &str, bytes: &[u8]) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, bytes).unwrap();
    path
}

fn run_match(patterns: &[u8], text: &[u8], extra: &[&str]) -> Output {
    let dir = tempfile::tempdir().unwrap();
    let p = write_file(&dir, "patterns", patterns);
    let t = write_file(&dir, "text", text);
    bin()
        .arg("match")
        .arg("--patterns")
        .arg(&p)
        .arg("--text")
        .arg(&t)
        .args(extra)
        .output()
        .unwrap()
}

#[test]
fn match_prints_tab_separated_occurrences() {
    let out = run_match(b"ab\n", b"abab", &["--engine", "acsim"]);
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(String::from_utf8_lossy(&out.stdout), "0\t0\t1\n0\t2\t3\n");
}

#[test]
fn text_bytes_outside_the_pattern_alphabet_still_scan() {
    let out = run_match(b"ab\n", b"xxabzz", &[]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "0\t2\t3\n");
}

#[test]
fn every_engine_prints_identical_output() {
    // One pattern: all seven engines accept the input.
    let mut outputs = Vec::new();
    for engine in [
        "acsim",
        "tabmulti",
        "single",
        "singletab",
        "naive",
        "kmp",
        "ac",
    ] {
        let out = run_match(b"aba\n", b"zabababz aba", &["--engine", engine]);
        assert!(out.status.success(), "engine {engine} failed");
        outputs.push((engine, out.stdout));
    }
    for (engine, stdout) in &outputs {
        assert_eq!(stdout, &outputs[0].1, "engine {engine} disagrees");
    }
    // Several patterns: the multi-pattern engines agree too.
    let mut outputs = Vec::new();
    for engine in ["acsim", "tabmulti", "naive", "ac"] {
        let out = run_match(b"ab\nba\nabba\n", b"abbabab", &["--engine", engine]);
        assert!(out.status.success(), "engine {engine} failed");
        outputs.push((engine, out.stdout));
    }
    for (engine, stdout) in &outputs {
        assert_eq!(stdout, &outputs[0].1, "engine {engine} disagrees");
    }
}

#[test]
fn json_format_emits_one_parsable_object_per_line() {
    let out = run_match(b"ab\n", b"abab", &["--format", "json"]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines.len(), 2);
    let parsed: Vec<serde_json::Value> = lines
        .iter()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(parsed[0]["pattern_id"], 0);
    assert_eq!(parsed[0]["start"], 0);
    assert_eq!(parsed[0]["end"], 1);
    assert_eq!(parsed[1]["start"], 2);
}

#[test]
fn stats_flag_prints_counters_to_stderr_only() {
    let with = run_match(b"ab\n", b"abababab", &["--engine", "acsim", "--stats"]);
    let without = run_match(b"ab\n", b"abababab", &["--engine", "acsim"]);
    assert!(with.status.success());
    assert_eq!(with.stdout, without.stdout, "stats must not disturb stdout");
    let stderr = String::from_utf8(with.stderr).unwrap();
    for key in [
        "report_calls",
        "transitions",
        "stab1_queries",
        "stab2_queries",
    ] {
        assert!(stderr.contains(key), "missing {key} in stats: {stderr}");
    }
    assert!(without.stderr.is_empty());
}

#[test]
fn single_pattern_engines_reject_several_patterns() {
    for engine in ["single", "singletab", "kmp"] {
        let out = run_match(b"ab\ncd\n", b"abcd", &["--engine", engine]);
        assert_eq!(out.status.code(), Some(2), "engine {engine}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn empty_pattern_lines_are_an_input_error() {
    let out = run_match(b"ab\n\ncd\n", b"abcd", &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn missing_files_and_bad_flags_are_usage_errors() {
    let out = bin()
        .args([
            "match",
            "--patterns",
            "/no/such/file",
            "--text",
            "/no/such/file",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = bin().args(["match", "--bogus-flag"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = bin().arg("--help").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn selftest_subcommand_reports_clean_run() {
    let out = bin()
        .args(["selftest", "--seed", "3", "--cases", "40"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("failures\t0"), "stdout: {stdout}");
}

#[test]
fn bench_subcommand_emits_a_throughput_table() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_file(&dir, "patterns", b"abra\ncadabra\n");
    let text: Vec<u8> = b"abracadabra".repeat(2000);
    let t = write_file(&dir, "text", &text);
    let out = bin()
        .arg("bench")
        .arg("--patterns")
        .arg(&p)
        .arg("--text")
        .arg(&t)
        .args(["--engines", "acsim,ac", "--repeat", "2"])
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let stdout = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines[0], "engine\tchars_per_sec\ttransitions\tstab_queries");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("acsim\t"));
    assert!(lines[2].starts_with("ac\t"));
}
