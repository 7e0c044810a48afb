//! Command-level tests against the built binary: exit codes, report shape,
//! file-format errors, and output stability.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn serex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_serex"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn json_report(out: &Output) -> Value {
    serde_json::from_str(&stdout(out)).expect("valid JSON report")
}

#[test]
fn exchange_constructive_on_k4() {
    let f = fixture("k4.matroid");
    let out = serex(&[
        "exchange",
        f.to_str().unwrap(),
        "--A",
        "e1,e2,e3",
        "--B",
        "e4,e5,e6",
        "--subset",
        "e1,e2",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("a-order: e2, e1"), "{text}");
    assert!(text.contains("b-order: e5, e4"), "{text}");
    assert!(text.contains("after step 2"), "{text}");
}

#[test]
fn exchange_json_uses_external_labels() {
    let f = fixture("k4.matroid");
    let out = serex(&[
        "exchange",
        f.to_str().unwrap(),
        "--A",
        "e1,e2,e3",
        "--B",
        "e4,e5,e6",
        "--subset",
        "e1,e2",
        "--json",
        "--verify",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let report = json_report(&out);
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["tool"]["name"], "serex");
    assert_eq!(report["command"], "exchange");
    assert_eq!(report["exit_code"], 0);
    let seq = &report["payload"]["sequence"];
    assert_eq!(seq["a_order"], serde_json::json!(["e2", "e1"]));
    assert_eq!(seq["b_order"], serde_json::json!(["e5", "e4"]));
    let cert = seq["certificate"].as_array().unwrap();
    assert_eq!(cert.len(), 4);
    assert_eq!(cert[0], serde_json::json!(["e1", "e3", "e5"]));
}

#[test]
fn exchange_sequence_json_matches_golden_file() {
    let f = fixture("k4.matroid");
    let out = serex(&[
        "exchange",
        f.to_str().unwrap(),
        "--A",
        "e1,e2,e3",
        "--B",
        "e4,e5,e6",
        "--subset",
        "e1,e2",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = json_report(&out);
    let golden: Value = serde_json::from_str(include_str!("golden/k4_exchange.json")).unwrap();
    assert_eq!(report["payload"]["sequence"], golden);
}

#[test]
fn exchange_usage_errors_exit_one() {
    let f = fixture("u24.matroid");
    // size-1 subset without --brute
    let out = serex(&[
        "exchange", f.to_str().unwrap(), "--A", "1,2", "--B", "3,4", "--subset", "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("exactly two"), "{}", stderr(&out));

    // unknown label
    let out = serex(&[
        "exchange", f.to_str().unwrap(), "--A", "1,2", "--B", "3,4", "--subset", "zz",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("unknown element label 'zz'"));

    // overlapping bases
    let out = serex(&[
        "exchange", f.to_str().unwrap(), "--A", "1,2", "--B", "2,3", "--subset", "1,2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("invalid base pair"));

    // subset not inside A
    let out = serex(&[
        "exchange", f.to_str().unwrap(), "--A", "1,2", "--B", "3,4", "--subset", "1,3",
    ]);
    assert_eq!(out.status.code(), Some(1));

    // clap-level usage error must also exit 1, not clap's default 2
    let out = serex(&["exchange", "--bogus-flag"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn exchange_brute_mode() {
    let f = fixture("u36.matroid");
    let out = serex(&[
        "exchange",
        f.to_str().unwrap(),
        "--A",
        "1,2,3",
        "--B",
        "4,5,6",
        "--subset",
        "1,2,3",
        "--brute",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let report = json_report(&out);
    assert_eq!(report["payload"]["found"], true);
    assert_eq!(
        report["payload"]["sequence"]["a_order"],
        serde_json::json!(["1", "2", "3"])
    );

    // size-1 subsets are fine under --brute
    let out = serex(&[
        "exchange", f.to_str().unwrap(), "--A", "1,2,3", "--B", "4,5,6", "--subset", "1",
        "--brute",
    ]);
    assert_eq!(out.status.code(), Some(0));

    // size-5 subsets are not
    let big = fixture("i4block.matroid");
    let out = serex(&[
        "exchange", big.to_str().unwrap(), "--A", "1,2,3,4", "--B", "5,6,7,8",
        "--subset", "1,2,3,4,5", "--brute",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn graph_reports_counts_and_diameter() {
    let out = serex(&["graph", fixture("u24.matroid").to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json_report(&out);
    assert_eq!(report["payload"]["vertices"], 6);
    assert_eq!(report["payload"]["edges"], 12);
    assert_eq!(report["payload"]["connected"], true);
    assert_eq!(report["payload"]["diameter"], 2);

    let out = serex(&["graph", fixture("i3i3.matroid").to_str().unwrap(), "--json"]);
    let report = json_report(&out);
    assert_eq!(report["payload"]["vertices"], 8);
    assert_eq!(report["payload"]["diameter"], 3);

    let out = serex(&["graph", fixture("rational.matroid").to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let report = json_report(&out);
    assert_eq!(report["payload"]["diameter"], 2);
}

#[test]
fn graph_rejects_non_block_input() {
    let out = serex(&["graph", fixture("nonblock.matroid").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("not a block matroid"), "{}", stderr(&out));
}

#[test]
fn graph_export_format() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("u24.graph");
    let out = serex(&[
        "graph",
        fixture("u24.matroid").to_str().unwrap(),
        "--export",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 6 + 12);
    assert!(lines[0].starts_with("vertex 0: "));
    assert!(lines[6].starts_with("edge "));
    // vertex lines carry external labels
    assert!(lines.iter().take(6).all(|l| l.contains(' ')));
}

#[test]
fn cyclic_finds_orders() {
    let out = serex(&[
        "cyclic",
        fixture("u24.matroid").to_str().unwrap(),
        "--A",
        "1,2",
        "--B",
        "3,4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("cyclic base order: 1, 2, 3, 4"));

    let out = serex(&[
        "cyclic",
        fixture("i4block.matroid").to_str().unwrap(),
        "--A",
        "1,2,3,4",
        "--B",
        "5,6,7,8",
        "--json",
        "--verify",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = json_report(&out);
    assert_eq!(report["payload"]["found"], true);
    assert_eq!(report["payload"]["order"]["sequence"].as_array().unwrap().len(), 8);
}

#[test]
fn parse_errors_carry_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.matroid");
    std::fs::write(&path, "kind: graphic\nvertices: 2\nedge: a 0 7\n").unwrap();
    let out = serex(&["graph", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));
}

#[test]
fn check_exit_codes_and_summary_invariant() {
    let out = serex(&[
        "check", "--family", "uniform", "--max-rank", "3", "--checks", "all", "--json",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let report = json_report(&out);
    // summary counts must equal the finding tallies
    let findings = report["findings"].as_array().unwrap();
    let total = report["summary"]["totals"]["pass"].as_u64().unwrap()
        + report["summary"]["totals"]["violation"].as_u64().unwrap()
        + report["summary"]["totals"]["error"].as_u64().unwrap();
    assert_eq!(findings.len() as u64, total);
    let passes = findings
        .iter()
        .filter(|f| f["status"] == "pass")
        .count() as u64;
    assert_eq!(passes, report["summary"]["totals"]["pass"].as_u64().unwrap());

    // unknown check name is a usage error
    let out = serex(&["check", "--family", "uniform", "--checks", "bogus"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("unknown check name"));

    // non-block fixtures produce error findings and exit 1
    let out = serex(&[
        "check",
        "--family",
        "fixtures",
        "--fixtures",
        fixture("nonblock.matroid").to_str().unwrap(),
        "--checks",
        "cyclic-order",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("not a block matroid"));

    // budget exhaustion is an operational error, exit 1
    let out = serex(&[
        "check", "--family", "uniform", "--max-rank", "3", "--checks", "cyclic-order",
        "--max-steps", "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn check_runs_fixture_families_end_to_end() {
    let out = serex(&[
        "check",
        "--family",
        "fixtures",
        "--fixtures",
        fixture("k4.matroid").to_str().unwrap(),
        fixture("i3i3.matroid").to_str().unwrap(),
        fixture("rational.matroid").to_str().unwrap(),
        "--checks",
        "all",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let report = json_report(&out);
    assert_eq!(report["summary"]["totals"]["violation"], 0);
    assert_eq!(report["summary"]["totals"]["error"], 0);
}

#[test]
fn check_json_is_stable_under_fixed_seed() {
    let args = [
        "check", "--family", "linear-gf2", "--rank", "3", "--count", "5", "--seed", "7",
        "--json",
    ];
    let first = stdout(&serex(&args));
    let second = stdout(&serex(&args));
    assert_eq!(first, second);
    assert!(!first.is_empty());
}

#[test]
fn config_file_with_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.toml");
    std::fs::write(
        &cfg,
        "family = \"uniform\"\nmax_rank = 2\nseed = 9\nchecks = [\"diameter\"]\n",
    )
    .unwrap();

    // config alone
    let out = serex(&["check", "--config", cfg.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let report = json_report(&out);
    assert_eq!(report["config"]["max_rank"], 2);
    assert_eq!(report["config"]["seed"], 9);
    assert_eq!(report["summary"]["totals"]["pass"], 2);

    // flags win key by key
    let out = serex(&[
        "check", "--config", cfg.to_str().unwrap(), "--max-rank", "3", "--seed", "11",
        "--json",
    ]);
    let report = json_report(&out);
    assert_eq!(report["config"]["max_rank"], 3);
    assert_eq!(report["config"]["seed"], 11);
    assert_eq!(report["summary"]["totals"]["pass"], 3);

    // malformed config is a usage error
    std::fs::write(&cfg, "family = \"uniform\"\nnonsense_key = 1\n").unwrap();
    let out = serex(&["check", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn findings_jsonl_replays_in_process() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("findings.jsonl");
    let out = serex(&[
        "check", "--family", "graphic", "--graphs", "k4", "--checks",
        "pair-exchange-constructive", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let finding: serex_core::harness::Finding =
        serde_json::from_str(text.lines().next().unwrap()).unwrap();
    let replayed = serex_core::harness::replay(
        &finding,
        &serex_core::harness::SuiteOptions::default(),
    )
    .unwrap();
    assert_eq!(replayed.status, finding.status);
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(serex(&["--help"]).status.code(), Some(0));
    assert_eq!(serex(&["--version"]).status.code(), Some(0));
}

#[test]
fn reports_validate_against_the_shipped_schema() {
    let schema: Value = serde_json::from_str(include_str!("../../../docs/report-schema.json"))
        .expect("schema parses");
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");

    let k4 = fixture("k4.matroid");
    let i3i3 = fixture("i3i3.matroid");
    let u24 = fixture("u24.matroid");
    let runs: Vec<Vec<&str>> = vec![
        vec![
            "exchange",
            k4.to_str().unwrap(),
            "--A",
            "e1,e2,e3",
            "--B",
            "e4,e5,e6",
            "--subset",
            "e1,e2",
            "--json",
        ],
        vec![
            "check", "--family", "uniform", "--max-rank", "2", "--checks",
            "diameter,conn-nonsingleton", "--json",
        ],
        vec!["graph", i3i3.to_str().unwrap(), "--json"],
        vec![
            "cyclic",
            u24.to_str().unwrap(),
            "--A",
            "1,2",
            "--B",
            "3,4",
            "--json",
        ],
    ];
    for args in runs {
        let out = serex(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", stderr(&out));
        let report = json_report(&out);
        let errors: Vec<String> = validator
            .iter_errors(&report)
            .map(|e| format!("{e}"))
            .collect();
        assert!(errors.is_empty(), "{args:?} schema violations: {errors:?}");
    }
}
