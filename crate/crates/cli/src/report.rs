//! The JSON report emitted by every command (schema shipped in
//! `docs/report-schema.json`) and the label-based JSON forms of sequences
//! and cyclic orders.
//!
//! Reports deliberately carry no wall-clock data so that `--json` output is
//! byte-stable under a fixed seed; elapsed time goes to the human rendering
//! only.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};
use serex_core::cobase::CyclicOrder;
use serex_core::harness::{Finding, Status};
use serex_core::ExchangeSequence;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Debug)]
pub struct Report {
    pub schema_version: u32,
    pub tool: Tool,
    pub command: String,
    pub config: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub payload: Option<Value>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub findings: Option<FindingsOut>,
    pub exit_code: i32,
}

#[derive(Serialize, Debug)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

pub fn tool() -> Tool {
    Tool {
        name: "serex",
        version: env!("CARGO_PKG_VERSION"),
    }
}

#[derive(Serialize, Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct Counts {
    pub pass: u64,
    pub violation: u64,
    pub error: u64,
}

#[derive(Serialize, Debug, Default)]
pub struct Summary {
    pub per_check: BTreeMap<String, Counts>,
    pub totals: Counts,
}

#[derive(Serialize, Debug)]
#[serde(untagged)]
pub enum FindingsOut {
    Inline(Vec<Finding>),
    Path { path: String },
}

/// Tallies findings per check; the totals always equal the finding list.
pub fn summarize(findings: &[Finding]) -> Summary {
    let mut summary = Summary::default();
    for f in findings {
        let counts = summary.per_check.entry(f.check.clone()).or_default();
        let slot = match f.status {
            Status::Pass => [&mut counts.pass, &mut summary.totals.pass],
            Status::Violation => [&mut counts.violation, &mut summary.totals.violation],
            Status::Error => [&mut counts.error, &mut summary.totals.error],
        };
        for s in slot {
            *s += 1;
        }
    }
    summary
}

/// One finding per line, compact JSON — the stream format consumed by
/// downstream tooling and compared byte-for-byte in the determinism check.
pub fn findings_to_jsonl(findings: &[Finding]) -> Vec<u8> {
    let mut buf = Vec::new();
    for f in findings {
        serde_json::to_writer(&mut buf, f).expect("finding serialization");
        buf.push(b'\n');
    }
    buf
}

pub fn write_findings_jsonl(path: &Path, findings: &[Finding]) -> Result<(), String> {
    let mut file = std::fs::File::create(path)
        .map_err(|e| format!("cannot create {}: {e}", path.display()))?;
    file.write_all(&findings_to_jsonl(findings))
        .map_err(|e| format!("cannot write {}: {e}", path.display()))
}

/// `{a_order, b_order, certificate}` with external labels throughout.
pub fn sequence_to_json(seq: &ExchangeSequence, labels: &[String]) -> Value {
    let name = |e: &serex_core::ElementId| labels[e.index()].clone();
    json!({
        "a_order": seq.a_order().iter().map(name).collect::<Vec<_>>(),
        "b_order": seq.b_order().iter().map(name).collect::<Vec<_>>(),
        "certificate": seq
            .certificate()
            .iter()
            .map(|set| set.iter().map(|e| labels[e.index()].clone()).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

pub fn cyclic_to_json(order: &CyclicOrder, labels: &[String]) -> Value {
    json!({
        "sequence": order
            .sequence()
            .iter()
            .map(|e| labels[e.index()].clone())
            .collect::<Vec<_>>(),
    })
}

/// Plain-text summary table for the human rendering of `check`.
pub fn summary_table(summary: &Summary) -> String {
    let mut out = String::new();
    let width = summary
        .per_check
        .keys()
        .map(String::len)
        .max()
        .unwrap_or(5)
        .max(5);
    out.push_str(&format!(
        "{:width$}  {:>6}  {:>9}  {:>6}\n",
        "check", "pass", "violation", "error"
    ));
    for (check, c) in &summary.per_check {
        out.push_str(&format!(
            "{check:width$}  {:>6}  {:>9}  {:>6}\n",
            c.pass, c.violation, c.error
        ));
    }
    out.push_str(&format!(
        "{:width$}  {:>6}  {:>9}  {:>6}\n",
        "total", summary.totals.pass, summary.totals.violation, summary.totals.error
    ));
    out
}
