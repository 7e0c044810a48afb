//! Acceptance suite: every release-gating property, one test per criterion,
//! each printing a PASS line (visible under `--nocapture`).
//!
//! The corpus is the default one: uniform U(k,2k) up to rank 5, the curated
//! graphs, and 50 seeded GF(2) block pairs for each rank 3..=5, seed 42.

use std::process::Command;
use std::time::Instant;

use serex_core::cobase;
use serex_core::harness::{
    self, default_corpus, Emitted, Instance, Status, SuiteOptions,
};
use serex_core::{BasePair, ElementId, ElementSet};

fn corpus() -> Vec<Instance> {
    harness::enumerate_block_pairs(&default_corpus(42))
        .expect("default corpus generates")
        .into_iter()
        .map(|e| match e {
            Emitted::Pair(i) => i,
            Emitted::NotBlock { desc, .. } => panic!("{desc} unexpectedly not block"),
        })
        .collect()
}

fn unordered_a_pairs(pair: &BasePair<'_>) -> Vec<(ElementId, ElementId)> {
    let a: Vec<ElementId> = pair.a_base().to_vec();
    let mut out = Vec::new();
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            out.push((a[i], a[j]));
        }
    }
    out
}

/// Criterion 1: the two-element serial exchange construction succeeds and
/// verifies on every unordered A-pair of every corpus instance, within 60
/// seconds of wall clock.
#[test]
fn criterion_1_pair_exchange_totality() {
    let started = Instant::now();
    let mut pairs_run = 0u32;
    for inst in corpus() {
        let pair = inst.pair().unwrap();
        for (a1, a2) in unordered_a_pairs(&pair) {
            let seq = pair
                .pair_serial_exchange(a1, a2)
                .unwrap_or_else(|e| panic!("{}: ({a1},{a2}): {e}", inst.desc));
            assert_eq!(
                pair.verify_sequence(&seq),
                Ok(true),
                "{}: ({a1},{a2})",
                inst.desc
            );
            pairs_run += 1;
        }
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs() < 60,
        "corpus run took {elapsed:?}, budget is 60 s"
    );
    println!(
        "criterion 1 (pair-exchange totality): PASS — {pairs_run} pairs in {elapsed:?}"
    );
}

/// Criterion 2: on the same instances, exhaustive search yields a non-empty
/// solution set containing the constructive output (exact membership).
#[test]
fn criterion_2_oracle_agreement() {
    let mut checked = 0u32;
    for inst in corpus() {
        let pair = inst.pair().unwrap();
        for (a1, a2) in unordered_a_pairs(&pair) {
            let seq = pair.pair_serial_exchange(a1, a2).unwrap();
            let all = pair
                .enumerate_serial_exchanges(ElementSet::from_ids([a1, a2]))
                .unwrap();
            assert!(!all.is_empty(), "{}: empty solution set", inst.desc);
            assert!(
                all.contains(&(seq.a_order().to_vec(), seq.b_order().to_vec())),
                "{}: constructive output not in the solution set",
                inst.desc
            );
            checked += 1;
        }
    }
    println!("criterion 2 (brute-force oracle agreement): PASS — {checked} pairs");
}

/// Criterion 3: the rank-4 procedure succeeds on 100% of rank-4 block
/// pairs; with the fallback armed, zero activations occur.
#[test]
fn criterion_3_rank4_totality() {
    let mut rank4 = 0u32;
    for inst in corpus() {
        let pair = inst.pair().unwrap();
        if pair.rank() != 4 {
            continue;
        }
        let seq = pair
            .full_serial_exchange_rank4()
            .unwrap_or_else(|e| panic!("{}: {e}", inst.desc));
        assert_eq!(seq.len(), 4);
        assert_eq!(pair.verify_sequence(&seq), Ok(true), "{}", inst.desc);
        rank4 += 1;
    }
    assert!(rank4 >= 50, "expected at least the 50 GF(2) rank-4 pairs");

    // a fallback activation would surface as a violation finding
    let opts = SuiteOptions {
        fallback_brute: true,
        ..SuiteOptions::default()
    };
    let findings =
        harness::run_property_suite(&default_corpus(42), &["full-exchange-rank4"], &opts)
            .unwrap();
    let activations = findings
        .iter()
        .filter(|f| f.status != Status::Pass)
        .count();
    assert_eq!(activations, 0, "fallback activations logged");
    println!("criterion 3 (rank-4 totality): PASS — {rank4} pairs, 0 fallback activations");
}

/// Criterion 4: connector sets take sizes in {0, 2, 3, ...} and are never
/// singletons, over all ordered A-pairs of every instance.
#[test]
fn criterion_4_connector_nonsingleton() {
    let mut sizes_seen = std::collections::BTreeSet::new();
    for inst in corpus() {
        let pair = inst.pair().unwrap();
        for src in pair.a_base().iter() {
            for tgt in pair.a_base().iter() {
                if src == tgt {
                    continue;
                }
                let conn = pair.conn_set(src, tgt).unwrap();
                assert_ne!(
                    conn.len(),
                    1,
                    "{}: Conn({src},{tgt}) = {}",
                    inst.desc,
                    conn.members()
                );
                sizes_seen.insert(conn.len());
            }
        }
    }
    assert!(!sizes_seen.contains(&1));
    println!(
        "criterion 4 (connector sets never singletons): PASS — sizes seen {sizes_seen:?}"
    );
}

/// Criterion 5: the support-stability and support-inheritance properties
/// hold on all admissible tuples (exhaustive for ground <= 8, 10^4 samples
/// per larger instance), and the serial-support identity holds for every
/// prefix of every sequence produced by criteria 1-3.
#[test]
fn criterion_5_lemma_suite() {
    let opts = SuiteOptions::default();
    assert_eq!(opts.exhaustive_ground_cap, 8);
    assert_eq!(opts.sample_tuples, 10_000);
    let findings = harness::run_property_suite(
        &default_corpus(42),
        &["support-stability", "support-inheritance", "serial-support-identity"],
        &opts,
    )
    .unwrap();
    for f in &findings {
        assert_eq!(f.status, Status::Pass, "{} on {}: {:?}", f.check, f.matroid, f.detail);
    }
    println!(
        "criterion 5 (support lemma suite): PASS — {} findings, all pass",
        findings.len()
    );
}

/// Criterion 6: every corpus block matroid has a connected base-cobase
/// graph whose diameter equals the rank, exactly.
#[test]
fn criterion_6_diameter_equals_rank() {
    let mut graphs = 0u32;
    for inst in corpus() {
        let graph = cobase::build_graph(&inst.matroid).unwrap();
        let connected = graph.is_connected().unwrap();
        assert!(connected, "{}: disconnected (finding-worthy witness)", inst.desc);
        let diameter = graph.diameter().unwrap().unwrap();
        assert_eq!(
            diameter,
            inst.matroid.full_rank(),
            "{}: diameter {diameter} != rank {} — violation witness: {} vertices",
            inst.desc,
            inst.matroid.full_rank(),
            graph.vertex_count()
        );
        graphs += 1;
    }
    println!("criterion 6 (diameter = rank at desk scale): PASS — {graphs} graphs");
}

/// Criterion 7: a cyclic base order exists for every corpus instance, and
/// the rank-3/4 constructive sequences lay out as verified cyclic orders.
#[test]
fn criterion_7_cyclic_orders() {
    let mut found = 0u32;
    let mut converted = 0u32;
    for inst in corpus() {
        let pair = inst.pair().unwrap();
        let order = cobase::find_cyclic_order(&pair)
            .unwrap()
            .unwrap_or_else(|| panic!("{}: no cyclic order — counterexample!", inst.desc));
        assert!(order.windows_verified(&inst.matroid).unwrap());
        found += 1;
        let seq = match pair.rank() {
            3 => Some(pair.full_serial_exchange_rank3().unwrap()),
            4 => Some(pair.full_serial_exchange_rank4().unwrap()),
            _ => None,
        };
        if let Some(seq) = seq {
            let order = cobase::serial_to_cyclic(&pair, &seq).unwrap();
            assert!(order.windows_verified(&inst.matroid).unwrap());
            converted += 1;
        }
    }
    println!(
        "criterion 7 (cyclic base orders): PASS — {found} found, {converted} serial layouts verified"
    );
}

/// Criterion 8: two `check --seed 42` runs produce byte-identical findings
/// streams.
#[test]
fn criterion_8_byte_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| -> Vec<u8> {
        let path = dir.path().join(name);
        let out = Command::new(env!("CARGO_BIN_EXE_serex"))
            .args(["check", "--seed", "42", "--out", path.to_str().unwrap()])
            .output()
            .expect("binary runs");
        assert_eq!(
            out.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        std::fs::read(&path).unwrap()
    };
    let first = run("first.jsonl");
    let second = run("second.jsonl");
    assert!(!first.is_empty());
    assert_eq!(first, second, "findings streams differ between runs");
    println!(
        "criterion 8 (byte-identical findings): PASS — {} bytes per stream",
        first.len()
    );
}
