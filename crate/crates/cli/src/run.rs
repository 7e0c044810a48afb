//! Command implementations. Each returns a [`Report`] plus the human
//! rendering; exit codes are 0 for success, 1 for usage/domain/operational
//! errors, and 2 for conjecture-relevant outcomes (a violation finding, or
//! non-existence in brute mode).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde_json::json;
use serex_core::cobase;
use serex_core::harness::{
    self, CorpusSpec, Family, NamedMatroid, Status, SuiteOptions,
};
use serex_core::{BasePair, Budget};

use crate::format::{load_matroid_file, render_set, resolve_elements};
use crate::report::{
    self, cyclic_to_json, sequence_to_json, summarize, summary_table, FindingsOut, Report,
};

/// A command failure destined for stderr; `code` follows the exit contract.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: 1,
            message: message.into(),
        }
    }
}

pub struct CmdResult {
    pub report: Report,
    pub human: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FallbackMode {
    None,
    Brute,
}

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_MAX_STEPS: u64 = 10_000_000;

/// Global flags; `None` means the flag was not given, so a config file may
/// still supply the value before the default kicks in.
#[derive(Clone, Debug)]
pub struct GlobalOpts {
    pub json: bool,
    pub seed: Option<u64>,
    pub max_steps: Option<u64>,
    pub fallback: FallbackMode,
    pub verify: bool,
}

impl GlobalOpts {
    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }

    pub fn max_steps(&self) -> u64 {
        self.max_steps.unwrap_or(DEFAULT_MAX_STEPS)
    }
}

fn base_pair_from_args<'m>(
    named: &'m NamedMatroid,
    base_a: &str,
    base_b: &str,
) -> Result<BasePair<'m>, CliError> {
    let a = resolve_elements(&named.labels, base_a).map_err(CliError::usage)?;
    let b = resolve_elements(&named.labels, base_b).map_err(CliError::usage)?;
    BasePair::new(&named.matroid, a, b)
        .map_err(|e| CliError::usage(format!("invalid base pair: {e}")))
}

pub struct ExchangeArgs {
    pub file: PathBuf,
    pub base_a: String,
    pub base_b: String,
    pub subset: String,
    pub brute: bool,
}

pub fn cmd_exchange(args: &ExchangeArgs, globals: &GlobalOpts) -> Result<CmdResult, CliError> {
    let named = load_matroid_file(&args.file).map_err(CliError::usage)?;
    let pair = base_pair_from_args(&named, &args.base_a, &args.base_b)?;
    let subset = resolve_elements(&named.labels, &args.subset).map_err(CliError::usage)?;
    if !subset.is_subset(pair.a_base()) {
        return Err(CliError::usage(format!(
            "--subset {} is not contained in --A",
            render_set(&named.labels, subset)
        )));
    }

    let config = json!({
        "file": args.file.display().to_string(),
        "A": render_set(&named.labels, pair.a_base()),
        "B": render_set(&named.labels, pair.b_base()),
        "subset": render_set(&named.labels, subset),
        "brute": args.brute,
        "seed": globals.seed(),
        "max_steps": globals.max_steps(),
    });

    let sequence = if args.brute {
        if subset.is_empty() || subset.len() > 4 {
            return Err(CliError::usage(
                "--brute handles subset sizes 1 through 4",
            ));
        }
        let mut budget = Budget::new(globals.max_steps());
        match pair.brute_force_serial_exchange_budgeted(subset, &mut budget) {
            Ok(Some(seq)) => seq,
            Ok(None) => {
                // a non-existence here contradicts the serial-exchange
                // conjecture at this size; surface it loudly
                let report = Report {
                    schema_version: report::SCHEMA_VERSION,
                    tool: report::tool(),
                    command: "exchange".into(),
                    config,
                    payload: Some(json!({"found": false})),
                    summary: summarize(&[]),
                    findings: None,
                    exit_code: 2,
                };
                let human = format!(
                    "NO serial symmetric exchange exists for subset {} — potential counterexample\n",
                    render_set(&named.labels, subset)
                );
                return Ok(CmdResult { report, human });
            }
            Err(e) => return Err(CliError::usage(format!("search failed: {e}"))),
        }
    } else {
        if subset.len() != 2 {
            return Err(CliError::usage(
                "constructive mode needs --subset of exactly two elements (use --brute for sizes 1-4)",
            ));
        }
        let mut it = subset.iter();
        let (a1, a2) = (it.next().unwrap(), it.next().unwrap());
        pair.pair_serial_exchange(a1, a2)
            .map_err(|e| CliError::usage(format!("exchange construction failed: {e}")))?
    };

    if globals.verify {
        // belt and suspenders: a fresh oracle instance re-checks the result
        let fresh = load_matroid_file(&args.file).map_err(CliError::usage)?;
        let fresh_pair = base_pair_from_args(&fresh, &args.base_a, &args.base_b)?;
        match fresh_pair.verify_sequence(&sequence) {
            Ok(true) => {}
            other => {
                return Err(CliError {
                    code: 1,
                    message: format!("re-verification through a fresh oracle failed: {other:?}"),
                })
            }
        }
    }

    let mut human = format!("serial symmetric exchange of {} steps\n", sequence.len());
    let _ = writeln!(
        human,
        "  a-order: {}",
        sequence
            .a_order()
            .iter()
            .map(|e| named.labels[e.index()].as_str())
            .collect::<Vec<_>>()
            .join(", ")
    );
    let _ = writeln!(
        human,
        "  b-order: {}",
        sequence
            .b_order()
            .iter()
            .map(|e| named.labels[e.index()].as_str())
            .collect::<Vec<_>>()
            .join(", ")
    );
    for (i, pair_sets) in sequence.certificate().chunks(2).enumerate() {
        let _ = writeln!(
            human,
            "  after step {}: A side {}  B side {}",
            i + 1,
            render_set(&named.labels, pair_sets[0]),
            render_set(&named.labels, pair_sets[1]),
        );
    }
    if globals.verify {
        human.push_str("re-verified through a fresh oracle\n");
    }

    let report = Report {
        schema_version: report::SCHEMA_VERSION,
        tool: report::tool(),
        command: "exchange".into(),
        config,
        payload: Some(json!({
            "found": true,
            "sequence": sequence_to_json(&sequence, &named.labels),
        })),
        summary: summarize(&[]),
        findings: None,
        exit_code: 0,
    };
    Ok(CmdResult { report, human })
}

pub struct CheckArgs {
    pub config: Option<PathBuf>,
    pub family: Option<String>,
    pub max_rank: Option<u32>,
    pub checks: Option<String>,
    pub graphs: Option<String>,
    pub count: Option<u32>,
    pub rank: Option<u32>,
    pub max_vertices: Option<u32>,
    pub fixtures: Vec<PathBuf>,
    pub out: Option<PathBuf>,
    pub allow_large: bool,
}

/// Keys accepted in the TOML config file; command-line flags win.
#[derive(Debug, Default, serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    family: Option<String>,
    max_rank: Option<u32>,
    seed: Option<u64>,
    checks: Option<Vec<String>>,
    graphs: Option<Vec<String>>,
    count: Option<u32>,
    rank: Option<u32>,
    max_vertices: Option<u32>,
    fixtures: Option<Vec<String>>,
    out: Option<String>,
    max_steps: Option<u64>,
    fallback: Option<String>,
    allow_large: Option<bool>,
}

pub fn cmd_check(args: &CheckArgs, globals: &GlobalOpts) -> Result<CmdResult, CliError> {
    let started = std::time::Instant::now();
    let file_cfg: FileConfig = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
            toml::from_str(&text)
                .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?
        }
        None => FileConfig::default(),
    };

    let family = args.family.clone().or(file_cfg.family);
    let max_rank = args.max_rank.or(file_cfg.max_rank);
    let seed = globals.seed.or(file_cfg.seed).unwrap_or(DEFAULT_SEED);
    let checks: Vec<String> = match (&args.checks, file_cfg.checks) {
        (Some(list), _) => list.split(',').map(|s| s.trim().to_string()).collect(),
        (None, Some(list)) => list,
        (None, None) => vec!["all".to_string()],
    };
    let graphs: Vec<String> = match (&args.graphs, file_cfg.graphs) {
        (Some(list), _) => list.split(',').map(|s| s.trim().to_string()).collect(),
        (None, Some(list)) => list,
        (None, None) => vec![],
    };
    let count = args.count.or(file_cfg.count).unwrap_or(50);
    let rank = args.rank.or(file_cfg.rank);
    let max_vertices = args.max_vertices.or(file_cfg.max_vertices).unwrap_or(6);
    let fixture_paths: Vec<PathBuf> = if args.fixtures.is_empty() {
        file_cfg
            .fixtures
            .unwrap_or_default()
            .into_iter()
            .map(PathBuf::from)
            .collect()
    } else {
        args.fixtures.clone()
    };
    let out = args.out.clone().or(file_cfg.out.map(PathBuf::from));
    let max_steps = globals
        .max_steps
        .or(file_cfg.max_steps)
        .unwrap_or(DEFAULT_MAX_STEPS);
    let fallback_brute = match (&globals.fallback, file_cfg.fallback.as_deref()) {
        (FallbackMode::Brute, _) => true,
        (FallbackMode::None, Some("brute")) => true,
        (FallbackMode::None, Some(other)) => {
            return Err(CliError::usage(format!("unknown fallback '{other}'")))
        }
        (FallbackMode::None, None) => false,
    };
    let allow_large = args.allow_large || file_cfg.allow_large.unwrap_or(false);

    let families = match family.as_deref() {
        None | Some("default") => harness::default_corpus(seed).families,
        Some("uniform") => vec![Family::Uniform {
            max_rank: max_rank.unwrap_or(5),
        }],
        Some("graphic") => vec![Family::GraphicCurated { graphs }],
        Some("graphic-random") => vec![Family::GraphicRandom {
            max_vertices,
            per_size: count,
        }],
        Some("linear-gf2") => {
            let rank = rank.ok_or_else(|| {
                CliError::usage("--family linear-gf2 needs --rank")
            })?;
            vec![Family::LinearGf2 { rank, count }]
        }
        Some("fixtures") => {
            if fixture_paths.is_empty() {
                return Err(CliError::usage("--family fixtures needs --fixtures files"));
            }
            let loaded = fixture_paths
                .iter()
                .map(|p| load_matroid_file(p))
                .collect::<Result<Vec<_>, _>>()
                .map_err(CliError::usage)?;
            vec![Family::Fixtures(loaded)]
        }
        Some(other) => {
            return Err(CliError::usage(format!(
                "unknown family '{other}' (uniform, graphic, graphic-random, linear-gf2, fixtures, default)"
            )))
        }
    };

    let spec = CorpusSpec {
        families,
        max_rank: max_rank.unwrap_or(harness::DESK_RANK_CAP),
        seed,
        allow_large,
    };
    let resolved = harness::resolve_checks(&checks)
        .map_err(|e| CliError::usage(e.to_string()))?;
    let opts = SuiteOptions {
        max_steps,
        fallback_brute,
        ..SuiteOptions::default()
    };
    let findings = harness::run_property_suite(&spec, &resolved, &opts)
        .map_err(|e| CliError::usage(e.to_string()))?;

    let elapsed = started.elapsed();
    let summary = summarize(&findings);
    let exit_code = if summary.totals.violation > 0 {
        2
    } else if summary.totals.error > 0 {
        1
    } else {
        0
    };

    let mut human = summary_table(&summary);
    for f in &findings {
        if f.status != Status::Pass {
            let _ = writeln!(
                human,
                "{}: {} on {} — {}",
                match f.status {
                    Status::Violation => "VIOLATION",
                    Status::Error => "ERROR",
                    Status::Pass => unreachable!(),
                },
                f.check,
                f.matroid,
                f.detail.as_deref().unwrap_or("(no detail)")
            );
        }
    }
    if summary.totals.violation > 0 {
        human.push_str("violations found — witnesses are replayable from the findings stream\n");
    }
    // wall clock goes to the human rendering only; the JSON report stays
    // byte-stable under a fixed seed
    let _ = writeln!(human, "completed in {} ms", elapsed.as_millis());

    let findings_out = match &out {
        Some(path) => {
            report::write_findings_jsonl(path, &findings)
                .map_err(|e| CliError { code: 1, message: e })?;
            let _ = writeln!(human, "findings written to {} ({} lines)", path.display(), findings.len());
            FindingsOut::Path {
                path: path.display().to_string(),
            }
        }
        None => FindingsOut::Inline(findings),
    };

    let config_echo = json!({
        "families": family.as_deref().unwrap_or("default"),
        "max_rank": spec.max_rank,
        "seed": seed,
        "rng": harness::RNG_ALGORITHM,
        "checks": checks,
        "count": count,
        "max_steps": max_steps,
        "fallback_brute": fallback_brute,
        "allow_large": allow_large,
        "out": out.as_ref().map(|p| p.display().to_string()),
    });

    let report = Report {
        schema_version: report::SCHEMA_VERSION,
        tool: report::tool(),
        command: "check".into(),
        config: config_echo,
        payload: None,
        summary,
        findings: Some(findings_out),
        exit_code,
    };
    Ok(CmdResult { report, human })
}

pub struct GraphArgs {
    pub file: PathBuf,
    pub export: Option<PathBuf>,
}

pub fn cmd_graph(args: &GraphArgs, globals: &GlobalOpts) -> Result<CmdResult, CliError> {
    let named = load_matroid_file(&args.file).map_err(CliError::usage)?;
    let graph = cobase::build_graph(&named.matroid)
        .map_err(|e| CliError::usage(format!("{e}")))?;
    let connected = graph.is_connected().map_err(|e| CliError::usage(e.to_string()))?;
    let diameter = graph.diameter().map_err(|e| CliError::usage(e.to_string()))?;
    let component_diameters = graph.component_diameters();

    if let Some(path) = &args.export {
        export_graph(path, &graph, &named.labels)?;
    }

    let mut human = format!(
        "base-cobase graph of {}\n  vertices: {}\n  edges: {}\n  connected: {}\n",
        args.file.display(),
        graph.vertex_count(),
        graph.edge_count(),
        if connected { "yes" } else { "no" },
    );
    match diameter {
        Some(d) => {
            let _ = writeln!(human, "  diameter: {d} (rank {})", graph.rank());
        }
        None => {
            let _ = writeln!(
                human,
                "  diameter: undefined (disconnected); per-component: {component_diameters:?}"
            );
        }
    }
    if let Some(path) = &args.export {
        let _ = writeln!(human, "  adjacency written to {}", path.display());
    }

    let report = Report {
        schema_version: report::SCHEMA_VERSION,
        tool: report::tool(),
        command: "graph".into(),
        config: json!({
            "file": args.file.display().to_string(),
            "export": args.export.as_ref().map(|p| p.display().to_string()),
            "seed": globals.seed(),
        }),
        payload: Some(json!({
            "rank": graph.rank(),
            "vertices": graph.vertex_count(),
            "edges": graph.edge_count(),
            "connected": connected,
            "diameter": diameter,
            "component_diameters": component_diameters,
        })),
        summary: summarize(&[]),
        findings: None,
        exit_code: 0,
    };
    Ok(CmdResult { report, human })
}

/// Vertex per line (its members as labels), then the edge list by vertex
/// index.
fn export_graph(
    path: &Path,
    graph: &cobase::BaseCobaseGraph,
    labels: &[String],
) -> Result<(), CliError> {
    let mut out = String::new();
    for (i, v) in graph.vertices().iter().enumerate() {
        let members: Vec<&str> = v.iter().map(|e| labels[e.index()].as_str()).collect();
        let _ = writeln!(out, "vertex {i}: {}", members.join(" "));
    }
    for (i, j) in graph.edges() {
        let _ = writeln!(out, "edge {i} {j}");
    }
    std::fs::write(path, out).map_err(|e| CliError {
        code: 1,
        message: format!("cannot write {}: {e}", path.display()),
    })
}

pub struct CyclicArgs {
    pub file: PathBuf,
    pub base_a: String,
    pub base_b: String,
}

pub fn cmd_cyclic(args: &CyclicArgs, globals: &GlobalOpts) -> Result<CmdResult, CliError> {
    let named = load_matroid_file(&args.file).map_err(CliError::usage)?;
    let pair = base_pair_from_args(&named, &args.base_a, &args.base_b)?;
    let config = json!({
        "file": args.file.display().to_string(),
        "A": render_set(&named.labels, pair.a_base()),
        "B": render_set(&named.labels, pair.b_base()),
        "seed": globals.seed(),
        "max_steps": globals.max_steps(),
    });
    let mut budget = Budget::new(globals.max_steps());
    let found = cobase::find_cyclic_order_budgeted(&pair, &mut budget)
        .map_err(|e| CliError::usage(format!("search failed: {e}")))?;

    match found {
        Some(order) => {
            if globals.verify && !order.windows_verified(&named.matroid).map_err(|e| CliError::usage(e.to_string()))? {
                return Err(CliError {
                    code: 1,
                    message: "cyclic order failed window re-verification".into(),
                });
            }
            let rendered: Vec<&str> = order
                .sequence()
                .iter()
                .map(|e| named.labels[e.index()].as_str())
                .collect();
            let human = format!(
                "cyclic base order: {}\nall {} windows are bases\n",
                rendered.join(", "),
                order.len()
            );
            let report = Report {
                schema_version: report::SCHEMA_VERSION,
                tool: report::tool(),
                command: "cyclic".into(),
                config,
                payload: Some(json!({
                    "found": true,
                    "order": cyclic_to_json(&order, &named.labels),
                })),
                summary: summarize(&[]),
                findings: None,
                exit_code: 0,
            };
            Ok(CmdResult { report, human })
        }
        None => {
            let human = format!(
                "NO cyclic base order exists for A={} B={} — potential counterexample, replay with the same inputs\n",
                render_set(&named.labels, pair.a_base()),
                render_set(&named.labels, pair.b_base()),
            );
            let report = Report {
                schema_version: report::SCHEMA_VERSION,
                tool: report::tool(),
                command: "cyclic".into(),
                config,
                payload: Some(json!({"found": false})),
                summary: summarize(&[]),
                findings: None,
                exit_code: 2,
            };
            Ok(CmdResult { report, human })
        }
    }
}
