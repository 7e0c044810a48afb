//! Deterministic corpora of small block matroids and a registry of property
//! checks over them.
//!
//! Every check runs against one [`Instance`] (a matroid plus one base/cobase
//! pair) and yields a [`Finding`] whose witness is enough to replay the check
//! from scratch: the matroid data, the label table, both bases, and the
//! per-instance seed for sampled checks. Identical corpus spec and seed give
//! a byte-identical finding stream.

use alloc::borrow::ToOwned;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cobase;
use crate::error::{Error, HarnessError};
use crate::exchange::{BasePair, Budget, ExchangeSequence};
use crate::linalg;
use crate::matroid::Matroid;
use crate::set::{ElementId, ElementSet};

/// Desk-scale guard on the rank of generated matroids.
pub const DESK_RANK_CAP: u32 = 6;

/// Identity of the pseudo-random generator behind all sampling, recorded in
/// reports so corpora can be reproduced elsewhere.
pub const RNG_ALGORITHM: &str = "chacha8";

/// One family of generated matroids.
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    /// `U(k, 2k)` for `k = 1..=max_rank`, split down the middle.
    Uniform { max_rank: u32 },
    /// The curated graph list (all of it when `graphs` is empty), filtered
    /// to candidates with `2(v-1)` edges that split into two edge-disjoint
    /// spanning trees.
    GraphicCurated { graphs: Vec<String> },
    /// Seeded random loop-free multigraphs on `3..=max_vertices` vertices
    /// with `2(v-1)` edges, kept when they decompose into two spanning
    /// trees; `per_size` accepted graphs per vertex count.
    GraphicRandom { max_vertices: u32, per_size: u32 },
    /// `[I_r | M]` over GF(2) with `M` an invertible random `r×r` block
    /// (rejection-sampled); `count` instances.
    LinearGf2 { rank: u32, count: u32 },
    /// Externally loaded matroids; non-block ones produce error findings.
    Fixtures(Vec<NamedMatroid>),
}

/// A matroid with its display name and external element labels.
#[derive(Clone, Debug, PartialEq)]
pub struct NamedMatroid {
    pub name: String,
    pub labels: Vec<String>,
    pub matroid: Matroid,
}

/// What to generate and under which seed.
#[derive(Clone, Debug, PartialEq)]
pub struct CorpusSpec {
    pub families: Vec<Family>,
    /// Instances of larger rank are skipped.
    pub max_rank: u32,
    pub seed: u64,
    /// Explicit override of the desk-scale rank cap.
    pub allow_large: bool,
}

impl CorpusSpec {
    fn validate(&self) -> Result<(), HarnessError> {
        if self.max_rank > DESK_RANK_CAP && !self.allow_large {
            return Err(HarnessError::RankCapExceeded {
                max_rank: self.max_rank,
            });
        }
        Ok(())
    }
}

/// The corpus backing the default `check` run: uniform up to `U(5,10)`, the
/// curated graphs, and 50 seeded GF(2) pairs per rank 3..=5.
pub fn default_corpus(seed: u64) -> CorpusSpec {
    CorpusSpec {
        families: vec![
            Family::Uniform { max_rank: 5 },
            Family::GraphicCurated { graphs: vec![] },
            Family::LinearGf2 { rank: 3, count: 50 },
            Family::LinearGf2 { rank: 4, count: 50 },
            Family::LinearGf2 { rank: 5, count: 50 },
        ],
        max_rank: DESK_RANK_CAP,
        seed,
        allow_large: false,
    }
}

/// A generated block pair: the matroid, its labels, one base/cobase split,
/// and the seed driving any sampling inside checks.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub desc: String,
    pub labels: Vec<String>,
    pub matroid: Matroid,
    pub a: ElementSet,
    pub b: ElementSet,
    pub seed: u64,
}

impl Instance {
    pub fn pair(&self) -> Result<BasePair<'_>, Error> {
        BasePair::new(&self.matroid, self.a, self.b)
    }
}

/// Output of corpus enumeration: either a usable instance or a fixture that
/// failed the block-matroid precondition (reported, never silently dropped).
#[derive(Clone, Debug, PartialEq)]
pub enum Emitted {
    Pair(Instance),
    NotBlock { desc: String, reason: String },
}

/// Name, vertex count, edge list.
type CuratedGraph = (&'static str, u32, &'static [(u32, u32)]);

const CURATED: &[CuratedGraph] = &[
    (
        "k4",
        4,
        &[(0, 1), (1, 2), (2, 3), (0, 2), (1, 3), (0, 3)],
    ),
    (
        "w4",
        5,
        &[
            (0, 1),
            (0, 2),
            (0, 3),
            (0, 4),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 1),
        ],
    ),
    (
        "prism",
        6,
        &[
            (0, 1),
            (1, 2),
            (2, 0),
            (3, 4),
            (4, 5),
            (5, 3),
            (0, 3),
            (1, 4),
            (2, 5),
        ],
    ),
    (
        "k5mm",
        5,
        &[
            (0, 2),
            (0, 3),
            (0, 4),
            (1, 2),
            (1, 3),
            (1, 4),
            (2, 4),
            (3, 4),
        ],
    ),
];

/// Names of the curated graphs, in generation order.
pub fn curated_graph_names() -> Vec<&'static str> {
    CURATED.iter().map(|(name, _, _)| *name).collect()
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn numeric_labels(n: u32) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

fn edge_labels(n: u32) -> Vec<String> {
    (1..=n).map(|i| format!("e{i}")).collect()
}

fn rng_below(rng: &mut ChaCha8Rng, n: u32) -> u32 {
    rng.next_u32() % n
}

/// Enumerates the corpus in a deterministic order. Generated families only
/// ever emit valid block pairs; fixtures that fail the block precondition
/// come back as [`Emitted::NotBlock`].
pub fn enumerate_block_pairs(spec: &CorpusSpec) -> Result<Vec<Emitted>, HarnessError> {
    spec.validate()?;
    let mut out = Vec::new();
    let mut counter = 0u64;
    let mut instance_seed = |spec: &CorpusSpec| {
        counter += 1;
        splitmix64(spec.seed ^ splitmix64(counter))
    };

    for family in &spec.families {
        match family {
            Family::Uniform { max_rank } => {
                for k in 1..=(*max_rank).min(spec.max_rank) {
                    let matroid = Matroid::uniform(k, 2 * k)
                        .map_err(|e| HarnessError::Generation(e.to_string()))?;
                    let a = ElementSet::full(k);
                    let b = a.complement(2 * k);
                    out.push(Emitted::Pair(Instance {
                        desc: format!("uniform({k},{})", 2 * k),
                        labels: numeric_labels(2 * k),
                        matroid,
                        a,
                        b,
                        seed: instance_seed(spec),
                    }));
                }
            }
            Family::GraphicCurated { graphs } => {
                for requested in normalize_graph_list(graphs)? {
                    let (name, vertices, edges) = CURATED
                        .iter()
                        .find(|(name, _, _)| *name == requested)
                        .expect("normalized name");
                    // block candidates must carry exactly 2(v-1) edges
                    if edges.len() as u32 != 2 * (vertices - 1) {
                        continue;
                    }
                    if vertices - 1 > spec.max_rank {
                        continue;
                    }
                    let matroid = Matroid::graphic(*vertices, edges.to_vec())
                        .map_err(|e| HarnessError::Generation(e.to_string()))?;
                    if let Some((a, b)) = cobase::find_block_pair(&matroid) {
                        out.push(Emitted::Pair(Instance {
                            desc: format!("graphic({name})"),
                            labels: edge_labels(edges.len() as u32),
                            matroid,
                            a,
                            b,
                            seed: instance_seed(spec),
                        }));
                    }
                }
            }
            Family::GraphicRandom {
                max_vertices,
                per_size,
            } => {
                for v in 3..=*max_vertices {
                    if v - 1 > spec.max_rank {
                        break;
                    }
                    let mut rng =
                        ChaCha8Rng::seed_from_u64(splitmix64(spec.seed ^ u64::from(v)));
                    let mut accepted = 0;
                    let mut attempts = 0;
                    while accepted < *per_size && attempts < per_size * 200 {
                        attempts += 1;
                        let edges: Vec<(u32, u32)> = (0..2 * (v - 1))
                            .map(|_| {
                                let u = rng_below(&mut rng, v);
                                let mut w = rng_below(&mut rng, v - 1);
                                if w >= u {
                                    w += 1;
                                }
                                (u.min(w), u.max(w))
                            })
                            .collect();
                        let edge_count = edges.len() as u32;
                        let Ok(matroid) = Matroid::graphic(v, edges) else {
                            continue;
                        };
                        if let Some((a, b)) = cobase::find_block_pair(&matroid) {
                            out.push(Emitted::Pair(Instance {
                                desc: format!("graphic-random(v{v},#{accepted})"),
                                labels: edge_labels(edge_count),
                                matroid,
                                a,
                                b,
                                seed: instance_seed(spec),
                            }));
                            accepted += 1;
                        }
                    }
                }
            }
            Family::LinearGf2 { rank, count } => {
                let r = *rank;
                if r == 0 {
                    return Err(HarnessError::Generation(
                        "linear-gf2 family needs rank >= 1".to_string(),
                    ));
                }
                if r > spec.max_rank {
                    continue;
                }
                let mask = if r == 64 { u64::MAX } else { (1u64 << r) - 1 };
                let mut rng =
                    ChaCha8Rng::seed_from_u64(splitmix64(spec.seed ^ (u64::from(r) << 32)));
                for i in 0..*count {
                    // rejection-sample an invertible block, column by column
                    let block: Vec<u64> = loop {
                        let cols: Vec<u64> =
                            (0..r).map(|_| rng.next_u64() & mask).collect();
                        if linalg::gf2_rank(cols.iter().copied()) == r {
                            break cols;
                        }
                    };
                    let mut cols: Vec<u64> = (0..r).map(|j| 1u64 << j).collect();
                    cols.extend(block);
                    let matroid = Matroid::linear_gf2(r, cols)
                        .map_err(|e| HarnessError::Generation(e.to_string()))?;
                    let a = ElementSet::full(r);
                    let b = a.complement(2 * r);
                    out.push(Emitted::Pair(Instance {
                        desc: format!("linear-gf2(r{r},#{i})"),
                        labels: numeric_labels(2 * r),
                        matroid,
                        a,
                        b,
                        seed: instance_seed(spec),
                    }));
                }
            }
            Family::Fixtures(fixtures) => {
                for fixture in fixtures {
                    if fixture.matroid.full_rank() > spec.max_rank {
                        out.push(Emitted::NotBlock {
                            desc: format!("fixture({})", fixture.name),
                            reason: format!(
                                "rank {} exceeds the configured max rank {}",
                                fixture.matroid.full_rank(),
                                spec.max_rank
                            ),
                        });
                        continue;
                    }
                    match cobase::find_block_pair(&fixture.matroid) {
                        Some((a, b)) => out.push(Emitted::Pair(Instance {
                            desc: format!("fixture({})", fixture.name),
                            labels: fixture.labels.clone(),
                            matroid: fixture.matroid.clone(),
                            a,
                            b,
                            seed: instance_seed(spec),
                        })),
                        None => out.push(Emitted::NotBlock {
                            desc: format!("fixture({})", fixture.name),
                            reason: not_block_reason(&fixture.matroid),
                        }),
                    }
                }
            }
        }
    }
    Ok(out)
}

fn not_block_reason(m: &Matroid) -> String {
    let ground = m.ground_size();
    if !ground.is_multiple_of(2) {
        format!("odd ground size {ground}")
    } else if m.full_rank() * 2 != ground {
        format!("rank {} != ground/2 = {}", m.full_rank(), ground / 2)
    } else {
        "no base has a base complement".to_string()
    }
}

fn normalize_graph_list(graphs: &[String]) -> Result<Vec<&'static str>, HarnessError> {
    if graphs.is_empty() {
        return Ok(curated_graph_names());
    }
    graphs
        .iter()
        .map(|g| {
            CURATED
                .iter()
                .map(|(name, _, _)| *name)
                .find(|name| *name == g)
                .ok_or_else(|| {
                    HarnessError::Generation(format!("unknown curated graph '{g}'"))
                })
        })
        .collect()
}

/// Outcome status of one check on one instance.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Violation,
    Error,
}

/// One check result. Violations always carry a replayable witness; the
/// detail is a human-readable rendering using external labels.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Finding {
    pub matroid: String,
    pub check: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// Everything needed to re-run one check: matroid data, the label table,
/// both bases (as external labels), and the sampling seed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub matroid: Matroid,
    pub labels: Vec<String>,
    pub a_base: Vec<String>,
    pub b_base: Vec<String>,
    pub seed: u64,
}

/// Knobs shared by all checks.
#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    /// Step budget per (instance, check) for the exhaustive searches.
    pub max_steps: u64,
    /// Degrade the rank-4 procedure to brute force when its construction
    /// reports an internal-consistency error. The activation itself is
    /// still reported as a violation.
    pub fallback_brute: bool,
    /// Ground sizes up to this run the lemma checks exhaustively.
    pub exhaustive_ground_cap: u32,
    /// Tuple samples per instance above the exhaustive cap.
    pub sample_tuples: u32,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            max_steps: 10_000_000,
            fallback_brute: false,
            exhaustive_ground_cap: 8,
            sample_tuples: 10_000,
        }
    }
}

struct Ctx<'i> {
    inst: &'i Instance,
    opts: SuiteOptions,
}

enum Outcome {
    Pass(Option<String>),
    Violation(String),
    Fail(String),
}

type CheckFn = fn(&Ctx<'_>) -> Outcome;

/// The check registry, in canonical execution order.
pub const CHECK_NAMES: &[&str] = &[
    "oracle-axioms",
    "rank-axioms",
    "circuit-support",
    "circuit-elimination",
    "exchange-criteria",
    "partner-exists",
    "two-disjoint",
    "conn-nonsingleton",
    "pair-exchange-constructive",
    "pair-exchange-oracle",
    "full-exchange-rank3",
    "full-exchange-rank4",
    "serial-support-identity",
    "support-stability",
    "support-inheritance",
    "subset-serial-brute",
    "cyclic-order",
    "serial-to-cyclic",
    "diameter",
];

fn check_fn(name: &str) -> Option<CheckFn> {
    Some(match name {
        "oracle-axioms" => check_oracle_axioms,
        "rank-axioms" => check_rank_axioms,
        "circuit-support" => check_circuit_support,
        "circuit-elimination" => check_circuit_elimination,
        "exchange-criteria" => check_exchange_criteria,
        "partner-exists" => check_partner_exists,
        "two-disjoint" => check_two_disjoint,
        "conn-nonsingleton" => check_conn_nonsingleton,
        "pair-exchange-constructive" => check_pair_exchange_constructive,
        "pair-exchange-oracle" => check_pair_exchange_oracle,
        "full-exchange-rank3" => check_full_exchange_rank3,
        "full-exchange-rank4" => check_full_exchange_rank4,
        "serial-support-identity" => check_serial_support_identity,
        "support-stability" => check_support_stability,
        "support-inheritance" => check_support_inheritance,
        "subset-serial-brute" => check_subset_serial_brute,
        "cyclic-order" => check_cyclic_order,
        "serial-to-cyclic" => check_serial_to_cyclic,
        "diameter" => check_diameter,
        _ => return None,
    })
}

/// Expands `all` and validates the requested check names, preserving their
/// order.
pub fn resolve_checks(requested: &[String]) -> Result<Vec<&'static str>, HarnessError> {
    if requested.is_empty() || requested.iter().any(|c| c == "all") {
        return Ok(CHECK_NAMES.to_vec());
    }
    requested
        .iter()
        .map(|name| {
            CHECK_NAMES
                .iter()
                .copied()
                .find(|n| n == name)
                .ok_or_else(|| HarnessError::UnknownCheck(name.clone()))
        })
        .collect()
}

/// Runs every requested check over every emitted block pair, in generation
/// order. Fixtures that are not block matroids yield one error finding per
/// requested check.
pub fn run_property_suite(
    spec: &CorpusSpec,
    checks: &[&'static str],
    opts: &SuiteOptions,
) -> Result<Vec<Finding>, HarnessError> {
    for name in checks {
        if check_fn(name).is_none() {
            return Err(HarnessError::UnknownCheck((*name).to_owned()));
        }
    }
    let mut findings = Vec::new();
    for emitted in enumerate_block_pairs(spec)? {
        match emitted {
            Emitted::Pair(inst) => {
                let ctx = Ctx {
                    inst: &inst,
                    opts: *opts,
                };
                for name in checks {
                    let outcome = (check_fn(name).unwrap())(&ctx);
                    findings.push(finding_from(&inst, name, outcome));
                }
            }
            Emitted::NotBlock { desc, reason } => {
                for name in checks {
                    findings.push(Finding {
                        matroid: desc.clone(),
                        check: (*name).to_owned(),
                        status: Status::Error,
                        detail: Some(format!("not a block matroid: {reason}")),
                        witness: None,
                    });
                }
            }
        }
    }
    Ok(findings)
}

fn finding_from(inst: &Instance, check: &str, outcome: Outcome) -> Finding {
    let (status, detail) = match outcome {
        Outcome::Pass(detail) => (Status::Pass, detail),
        Outcome::Violation(detail) => (Status::Violation, Some(detail)),
        Outcome::Fail(detail) => (Status::Error, Some(detail)),
    };
    Finding {
        matroid: inst.desc.clone(),
        check: check.to_owned(),
        status,
        detail,
        witness: Some(Witness {
            matroid: inst.matroid.clone(),
            labels: inst.labels.clone(),
            a_base: inst.a.iter().map(|e| inst.labels[e.index()].clone()).collect(),
            b_base: inst.b.iter().map(|e| inst.labels[e.index()].clone()).collect(),
            seed: inst.seed,
        }),
    }
}

/// Re-executes exactly one check on a finding's witness. The caller compares
/// the returned status against the original (determinism guard).
pub fn replay(finding: &Finding, opts: &SuiteOptions) -> Result<Finding, HarnessError> {
    let witness = finding
        .witness
        .as_ref()
        .ok_or_else(|| HarnessError::Replay("finding carries no witness".to_string()))?;
    if witness.labels.len() != witness.matroid.ground_size() as usize {
        return Err(HarnessError::Replay(format!(
            "label table has {} entries for {} elements",
            witness.labels.len(),
            witness.matroid.ground_size()
        )));
    }
    let resolve = |labels: &[String]| -> Result<ElementSet, HarnessError> {
        let mut set = ElementSet::EMPTY;
        for label in labels {
            let idx = witness
                .labels
                .iter()
                .position(|l| l == label)
                .ok_or_else(|| HarnessError::Replay(format!("stale element label '{label}'")))?;
            set = set.with(ElementId(idx as u32));
        }
        Ok(set)
    };
    let inst = Instance {
        desc: finding.matroid.clone(),
        labels: witness.labels.clone(),
        matroid: witness.matroid.clone(),
        a: resolve(&witness.a_base)?,
        b: resolve(&witness.b_base)?,
        seed: witness.seed,
    };
    let check = check_fn(&finding.check)
        .ok_or_else(|| HarnessError::UnknownCheck(finding.check.clone()))?;
    let ctx = Ctx {
        inst: &inst,
        opts: *opts,
    };
    Ok(finding_from(&inst, &finding.check, check(&ctx)))
}

// ---------------------------------------------------------------------------
// check implementations
// ---------------------------------------------------------------------------

fn render_set(inst: &Instance, s: ElementSet) -> String {
    let mut out = String::from("{");
    for (i, e) in s.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&inst.labels[e.index()]);
    }
    out.push('}');
    out
}

fn lbl(inst: &Instance, e: ElementId) -> &str {
    &inst.labels[e.index()]
}

fn pair_or_fail<'i>(ctx: &'i Ctx<'_>) -> Result<BasePair<'i>, Outcome> {
    ctx.inst
        .pair()
        .map_err(|e| Outcome::Fail(format!("instance bases invalid: {e}")))
}

macro_rules! try_pair {
    ($ctx:expr) => {
        match pair_or_fail($ctx) {
            Ok(pair) => pair,
            Err(outcome) => return outcome,
        }
    };
}

fn rng_for(inst: &Instance) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(inst.seed)
}

fn random_subset(rng: &mut ChaCha8Rng, ground: u32) -> ElementSet {
    ElementSet::from_bits(rng.next_u64() & ElementSet::full(ground).bits())
}

fn greedy_independent(m: &Matroid, s: ElementSet) -> ElementSet {
    let mut cur = ElementSet::EMPTY;
    for e in s.iter() {
        if m.indep_unchecked(cur.with(e)) {
            cur = cur.with(e);
        }
    }
    cur
}

/// Hereditary and exchange axioms on seeded random subsets.
fn check_oracle_axioms(ctx: &Ctx<'_>) -> Outcome {
    let inst = ctx.inst;
    let m = &inst.matroid;
    let mut rng = rng_for(inst);
    if m.ground_size() == 0 {
        return Outcome::Pass(Some("vacuous: empty ground set".to_string()));
    }
    for _ in 0..300 {
        let raw = random_subset(&mut rng, m.ground_size());
        if m.indep_unchecked(raw) {
            for y in raw.iter() {
                if !m.indep_unchecked(raw.without(y)) {
                    return Outcome::Violation(format!(
                        "hereditary axiom failed: {} independent but {} is not",
                        render_set(inst, raw),
                        render_set(inst, raw.without(y))
                    ));
                }
            }
        }
        let s = greedy_independent(m, raw);
        let t = greedy_independent(m, random_subset(&mut rng, m.ground_size()));
        let (small, big) = if s.len() < t.len() { (s, t) } else { (t, s) };
        if small.len() < big.len() {
            let extends = big
                .difference(small)
                .iter()
                .any(|x| m.indep_unchecked(small.with(x)));
            if !extends {
                return Outcome::Violation(format!(
                    "exchange axiom failed between {} and {}",
                    render_set(inst, small),
                    render_set(inst, big)
                ));
            }
        }
    }
    Outcome::Pass(None)
}

/// Monotonicity and submodularity of the rank function on sampled pairs.
fn check_rank_axioms(ctx: &Ctx<'_>) -> Outcome {
    let inst = ctx.inst;
    let m = &inst.matroid;
    let mut rng = rng_for(inst);
    if m.rank_of(ElementSet::EMPTY) != Ok(0) {
        return Outcome::Violation("rank of the empty set is not 0".to_string());
    }
    for _ in 0..200 {
        let s = random_subset(&mut rng, m.ground_size());
        let t = random_subset(&mut rng, m.ground_size());
        let (rs, rt) = (m.rank_unchecked(s), m.rank_unchecked(t));
        let (ru, ri) = (
            m.rank_unchecked(s.union(t)),
            m.rank_unchecked(s.intersection(t)),
        );
        if rs > ru || rt > ru {
            return Outcome::Violation(format!(
                "rank not monotone on {} and {}",
                render_set(inst, s),
                render_set(inst, t)
            ));
        }
        if ru + ri > rs + rt {
            return Outcome::Violation(format!(
                "rank not submodular on {} and {}: {ru}+{ri} > {rs}+{rt}",
                render_set(inst, s),
                render_set(inst, t)
            ));
        }
    }
    Outcome::Pass(None)
}

/// Every fundamental circuit relative to either base is dependent, minimal,
/// and the unique circuit of base + element.
fn check_circuit_support(ctx: &Ctx<'_>) -> Outcome {
    let inst = ctx.inst;
    let m = &inst.matroid;
    let pair = try_pair!(ctx);
    let mut sides = vec![(pair.b_base(), pair.a_base()), (pair.a_base(), pair.b_base())];
    for (base, other) in sides.drain(..) {
        for x in other.iter() {
            let circuit = match m.fundamental_circuit(base, x) {
                Ok(c) => c,
                Err(e) => return Outcome::Fail(format!("support of {} failed: {e}", lbl(inst, x))),
            };
            let members = circuit.members();
            if m.indep_unchecked(members) {
                return Outcome::Violation(format!(
                    "claimed circuit {} is independent",
                    render_set(inst, members)
                ));
            }
            for y in members.iter() {
                if !m.indep_unchecked(members.without(y)) {
                    return Outcome::Violation(format!(
                        "claimed circuit {} is not minimal at {}",
                        render_set(inst, members),
                        lbl(inst, y)
                    ));
                }
            }
            let brute = minimal_dependent_subsets(m, base.with(x));
            if brute.len() != 1 || brute[0] != members {
                return Outcome::Violation(format!(
                    "{} is not the unique circuit of {}",
                    render_set(inst, members),
                    render_set(inst, base.with(x))
                ));
            }
        }
    }
    Outcome::Pass(None)
}

/// All subsets of `within` that are dependent with every proper subset
/// independent (single deletions suffice).
fn minimal_dependent_subsets(m: &Matroid, within: ElementSet) -> Vec<ElementSet> {
    let bits = within.bits();
    let mut out = Vec::new();
    let mut sub = bits;
    loop {
        let s = ElementSet::from_bits(sub);
        if !s.is_empty() && !m.indep_unchecked(s) {
            let minimal = s.iter().all(|y| m.indep_unchecked(s.without(y)));
            if minimal {
                out.push(s);
            }
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & bits;
    }
    out.sort_unstable();
    out
}

/// Circuit elimination across pairs of fundamental circuits: for
/// `x ∈ C1 ∩ C2` and `y ∈ C1 \ C2` the union minus `x` still has a circuit
/// through `y` (checked by rank: `y` is spanned by the rest).
fn check_circuit_elimination(ctx: &Ctx<'_>) -> Outcome {
    let inst = ctx.inst;
    let m = &inst.matroid;
    let pair = try_pair!(ctx);
    let mut circuits: Vec<ElementSet> = Vec::new();
    for x in pair.a_base().iter() {
        match m.fundamental_circuit(pair.b_base(), x) {
            Ok(c) => circuits.push(c.members()),
            Err(e) => return Outcome::Fail(e.to_string()),
        }
    }
    for x in pair.b_base().iter() {
        match m.fundamental_circuit(pair.a_base(), x) {
            Ok(c) => circuits.push(c.members()),
            Err(e) => return Outcome::Fail(e.to_string()),
        }
    }
    circuits.sort_unstable();
    circuits.dedup();
    for (i, &c1) in circuits.iter().enumerate() {
        for &c2 in &circuits[i + 1..] {
            for x in c1.intersection(c2).iter() {
                let remainder = c1.union(c2).without(x);
                for y in c1.difference(c2).iter() {
                    // some circuit of `remainder` contains y iff removing y
                    // does not drop the rank
                    let with_y = m.rank_unchecked(remainder);
                    let without_y = m.rank_unchecked(remainder.without(y));
                    if with_y != without_y {
                        return Outcome::Violation(format!(
                            "no circuit through {} in {} after dropping {}",
                            lbl(inst, y),
                            render_set(inst, remainder),
                            lbl(inst, x)
                        ));
                    }
                }
            }
        }
    }
    Outcome::Pass(None)
}

/// The two formulations of symmetric exchangeability agree everywhere.
fn check_exchange_criteria(ctx: &Ctx<'_>) -> Outcome {
    let inst = ctx.inst;
    let m = &inst.matroid;
    let pair = try_pair!(ctx);
    for a in pair.a_base().iter() {
        for b in pair.b_base().iter() {
            let by_bases = match pair.is_symmetric_exchange(a, b) {
                Ok(v) => v,
                Err(e) => return Outcome::Fail(e.to_string()),
            };
            let in_ca = match m.support(pair.a_base(), b) {
                Ok(c) => c.contains(a),
                Err(e) => return Outcome::Fail(e.to_string()),
            };
            let in_cb = match m.support(pair.b_base(), a) {
                Ok(c) => c.contains(b),
                Err(e) => return Outcome::Fail(e.to_string()),
            };
            if by_bases != (in_ca && in_cb) {
                return Outcome::Violation(format!(
                    "criteria disagree on ({},{})",
                    lbl(inst, a),
                    lbl(inst, b)
                ));
            }
        }
    }
    Outcome::Pass(None)
}

/// Every element of either base has a symmetric partner across it.
fn check_partner_exists(ctx: &Ctx<'_>) -> Outcome {
    let inst = ctx.inst;
    let pair = try_pair!(ctx);
    for (tag, p) in [("A", pair), ("B", pair.swapped())] {
        for a in p.a_base().iter() {
            if let Err(e) = p.find_symmetric_partner(a) {
                return Outcome::Violation(format!(
                    "{} of base {tag} has no symmetric partner: {e}",
                    lbl(inst, a)
                ));
            }
        }
    }
    Outcome::Pass(None)
}

/// Two disjoint symmetric exchanges exist whenever the rank exceeds 1.
fn check_two_disjoint(ctx: &Ctx<'_>) -> Outcome {
    let inst = ctx.inst;
    let pair = try_pair!(ctx);
    if pair.rank() <= 1 {
        return Outcome::Pass(Some("vacuous: rank 1".to_string()));
    }
    match pair.find_two_disjoint_exchanges() {
        Ok(((a, b), (a2, b2))) => {
            if a == a2 || b == b2 {
                return Outcome::Violation(format!(
                    "returned exchanges ({},{}) and ({},{}) overlap",
                    lbl(inst, a),
                    lbl(inst, b),
                    lbl(inst, a2),
                    lbl(inst, b2)
                ));
            }
            Outcome::Pass(None)
        }
        Err(e) => Outcome::Violation(format!("no two disjoint exchanges: {e}")),
    }
}

/// Connector sets are never singletons, in either direction.
fn check_conn_nonsingleton(ctx: &Ctx<'_>) -> Outcome {
    let inst = ctx.inst;
    let pair = try_pair!(ctx);
    for p in [pair, pair.swapped()] {
        for src in p.a_base().iter() {
            for tgt in p.a_base().iter() {
                if src == tgt {
                    continue;
                }
                match p.conn_set(src, tgt) {
                    Ok(conn) if conn.len() == 1 => {
                        return Outcome::Violation(format!(
                            "Conn({},{}) is the singleton {}",
                            lbl(inst, src),
                            lbl(inst, tgt),
                            render_set(inst, conn.members())
                        ));
                    }
                    Ok(_) => {}
                    Err(e) => return Outcome::Fail(e.to_string()),
                }
            }
        }
    }
    Outcome::Pass(None)
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

/// The two-element serial exchange construction succeeds and verifies on
/// every unordered pair of A-elements.
fn check_pair_exchange_constructive(ctx: &Ctx<'_>) -> Outcome {
    let inst = ctx.inst;
    let pair = try_pair!(ctx);
    if pair.rank() < 2 {
        return Outcome::Pass(Some("vacuous: rank 1".to_string()));
    }
    for (a1, a2) in unordered_a_pairs(&pair) {
        match pair.pair_serial_exchange(a1, a2) {
            Ok(seq) => match pair.verify_sequence(&seq) {
                Ok(true) => {}
                Ok(false) => {
                    return Outcome::Violation(format!(
                        "sequence for {{{},{}}} failed verification",
                        lbl(inst, a1),
                        lbl(inst, a2)
                    ))
                }
                Err(e) => return Outcome::Fail(e.to_string()),
            },
            Err(Error::InternalConsistency(msg)) => {
                return Outcome::Violation(format!(
                    "construction failed on {{{},{}}}: {msg}",
                    lbl(inst, a1),
                    lbl(inst, a2)
                ))
            }
            Err(e) => return Outcome::Fail(e.to_string()),
        }
    }
    Outcome::Pass(None)
}

/// Brute-force cross-validation: the solution set is non-empty and contains
/// the constructive output.
fn check_pair_exchange_oracle(ctx: &Ctx<'_>) -> Outcome {
    let inst = ctx.inst;
    let pair = try_pair!(ctx);
    if pair.rank() < 2 {
        return Outcome::Pass(Some("vacuous: rank 1".to_string()));
    }
    let mut budget = Budget::new(ctx.opts.max_steps);
    for (a1, a2) in unordered_a_pairs(&pair) {
        let constructed = match pair.pair_serial_exchange(a1, a2) {
            Ok(seq) => seq,
            Err(e) => return Outcome::Fail(format!("construction failed: {e}")),
        };
        let subset = ElementSet::from_ids([a1, a2]);
        let all = match pair.enumerate_serial_exchanges_budgeted(subset, &mut budget) {
            Ok(all) => all,
            Err(e) => return Outcome::Fail(e.to_string()),
        };
        if all.is_empty() {
            return Outcome::Violation(format!(
                "brute force found no serial exchange for {{{},{}}}",
                lbl(inst, a1),
                lbl(inst, a2)
            ));
        }
        let key = (constructed.a_order().to_vec(), constructed.b_order().to_vec());
        if !all.contains(&key) {
            return Outcome::Violation(format!(
                "constructive output for {{{},{}}} is outside the brute-force solution set",
                lbl(inst, a1),
                lbl(inst, a2)
            ));
        }
    }
    Outcome::Pass(None)
}

/// The rank-3 full serial exchange succeeds, verifies, and sits inside the
/// brute-force solution set.
fn check_full_exchange_rank3(ctx: &Ctx<'_>) -> Outcome {
    let pair = try_pair!(ctx);
    if pair.rank() != 3 {
        return Outcome::Pass(Some("vacuous: rank != 3".to_string()));
    }
    let seq = match pair.full_serial_exchange_rank3() {
        Ok(seq) => seq,
        Err(Error::InternalConsistency(msg)) => return Outcome::Violation(msg),
        Err(e) => return Outcome::Fail(e.to_string()),
    };
    full_exchange_oracle_check(ctx, &pair, &seq)
}

/// The rank-4 full serial exchange succeeds on every rank-4 pair; a fallback
/// activation is itself a violation.
fn check_full_exchange_rank4(ctx: &Ctx<'_>) -> Outcome {
    let pair = try_pair!(ctx);
    if pair.rank() != 4 {
        return Outcome::Pass(Some("vacuous: rank != 4".to_string()));
    }
    let seq = match pair.full_serial_exchange_rank4() {
        Ok(seq) => seq,
        Err(Error::InternalConsistency(msg)) => {
            if ctx.opts.fallback_brute {
                let fallback = pair.brute_force_serial_exchange(pair.a_base());
                return Outcome::Violation(format!(
                    "constructive rank-4 procedure failed ({msg}); brute-force fallback {}",
                    match fallback {
                        Ok(Some(_)) => "found a sequence",
                        Ok(None) => "found none either",
                        Err(_) => "errored",
                    }
                ));
            }
            return Outcome::Violation(format!("constructive rank-4 procedure failed: {msg}"));
        }
        Err(e) => return Outcome::Fail(e.to_string()),
    };
    full_exchange_oracle_check(ctx, &pair, &seq)
}

fn full_exchange_oracle_check(
    ctx: &Ctx<'_>,
    pair: &BasePair<'_>,
    seq: &ExchangeSequence,
) -> Outcome {
    match pair.verify_sequence(seq) {
        Ok(true) => {}
        Ok(false) => return Outcome::Violation("constructed sequence failed verification".into()),
        Err(e) => return Outcome::Fail(e.to_string()),
    }
    let mut budget = Budget::new(ctx.opts.max_steps);
    match pair.enumerate_serial_exchanges_budgeted(pair.a_base(), &mut budget) {
        Ok(all) => {
            let key = (seq.a_order().to_vec(), seq.b_order().to_vec());
            if !all.contains(&key) {
                return Outcome::Violation(
                    "constructed sequence is outside the brute-force solution set".into(),
                );
            }
            Outcome::Pass(None)
        }
        Err(Error::BudgetExhausted { steps }) => {
            Outcome::Fail(format!("budget of {steps} steps exhausted"))
        }
        Err(e) => Outcome::Fail(e.to_string()),
    }
}

/// The serial-support identity holds for every prefix of every sequence the
/// constructive routines produce.
fn check_serial_support_identity(ctx: &Ctx<'_>) -> Outcome {
    let inst = ctx.inst;
    let pair = try_pair!(ctx);
    let mut sequences = Vec::new();
    for (a1, a2) in unordered_a_pairs(&pair) {
        match pair.pair_serial_exchange(a1, a2) {
            Ok(seq) => sequences.push(seq),
            Err(e) => return Outcome::Fail(e.to_string()),
        }
    }
    if pair.rank() == 3 {
        match pair.full_serial_exchange_rank3() {
            Ok(seq) => sequences.push(seq),
            Err(e) => return Outcome::Fail(e.to_string()),
        }
    }
    if pair.rank() == 4 {
        match pair.full_serial_exchange_rank4() {
            Ok(seq) => sequences.push(seq),
            Err(e) => return Outcome::Fail(e.to_string()),
        }
    }
    for seq in &sequences {
        for k in 1..=seq.len() {
            match pair.serial_support_identity_check(seq, k) {
                Ok(true) => {}
                Ok(false) => {
                    return Outcome::Violation(format!(
                        "serial-support identity failed at k={k} for a_order {:?}",
                        seq.a_order()
                            .iter()
                            .map(|e| lbl(inst, *e))
                            .collect::<Vec<_>>()
                    ))
                }
                Err(e) => return Outcome::Fail(e.to_string()),
            }
        }
    }
    Outcome::Pass(None)
}

fn pick(rng: &mut ChaCha8Rng, s: ElementSet) -> ElementId {
    let idx = rng_below(rng, s.len());
    s.iter().nth(idx as usize).unwrap()
}

/// Per-instance tuple stream: exhaustive for small grounds, seeded samples
/// above the cap. Inadmissible tuples (precondition errors) do not count.
fn check_support_stability(ctx: &Ctx<'_>) -> Outcome {
    let inst = ctx.inst;
    let pair = try_pair!(ctx);
    if pair.rank() < 2 {
        return Outcome::Pass(Some("vacuous: rank 1".to_string()));
    }
    let mut verdicts = Vec::new();
    if inst.matroid.ground_size() <= ctx.opts.exhaustive_ground_cap {
        for a1 in pair.a_base().iter() {
            for a2 in pair.a_base().iter() {
                for b1 in pair.b_base().iter() {
                    for b2 in pair.b_base().iter() {
                        if a1 != a2 && b1 != b2 {
                            verdicts.push((a1, a2, b1, b2, pair.support_stability_check(a1, a2, b1, b2)));
                        }
                    }
                }
            }
        }
    } else {
        let mut rng = rng_for(inst);
        for _ in 0..ctx.opts.sample_tuples {
            let a1 = pick(&mut rng, pair.a_base());
            let a2 = pick(&mut rng, pair.a_base().without(a1));
            let b1 = pick(&mut rng, pair.b_base());
            let b2 = pick(&mut rng, pair.b_base().without(b1));
            verdicts.push((a1, a2, b1, b2, pair.support_stability_check(a1, a2, b1, b2)));
        }
    }
    for (a1, a2, b1, b2, verdict) in verdicts {
        match verdict {
            Ok(true) => {}
            Ok(false) => {
                return Outcome::Violation(format!(
                    "support membership changed for ({},{},{},{})",
                    lbl(inst, a1),
                    lbl(inst, a2),
                    lbl(inst, b1),
                    lbl(inst, b2)
                ))
            }
            Err(Error::Precondition(_)) => {} // inadmissible tuple
            Err(e) => return Outcome::Fail(e.to_string()),
        }
    }
    Outcome::Pass(None)
}

/// Same driving scheme for the support-inheritance property.
fn check_support_inheritance(ctx: &Ctx<'_>) -> Outcome {
    let inst = ctx.inst;
    let pair = try_pair!(ctx);
    if pair.rank() < 2 {
        return Outcome::Pass(Some("vacuous: rank 1".to_string()));
    }
    let mut verdicts = Vec::new();
    if inst.matroid.ground_size() <= ctx.opts.exhaustive_ground_cap {
        for a in pair.a_base().iter() {
            for b in pair.b_base().iter() {
                for b_prime in pair.b_base().without(b).iter() {
                    verdicts.push((a, b, b_prime, pair.support_inheritance_check(a, b, b_prime)));
                }
            }
        }
    } else {
        let mut rng = rng_for(inst);
        for _ in 0..ctx.opts.sample_tuples {
            let a = pick(&mut rng, pair.a_base());
            let b = pick(&mut rng, pair.b_base());
            let b_prime = pick(&mut rng, pair.b_base().without(b));
            verdicts.push((a, b, b_prime, pair.support_inheritance_check(a, b, b_prime)));
        }
    }
    for (a, b, b_prime, verdict) in verdicts {
        match verdict {
            Ok(true) => {}
            Ok(false) => {
                return Outcome::Violation(format!(
                    "support inheritance failed for ({},{},{})",
                    lbl(inst, a),
                    lbl(inst, b),
                    lbl(inst, b_prime)
                ))
            }
            Err(Error::Precondition(_)) => {}
            Err(e) => return Outcome::Fail(e.to_string()),
        }
    }
    Outcome::Pass(None)
}

/// Brute-force serial exchanges exist for every A-subset up to the size cap.
fn check_subset_serial_brute(ctx: &Ctx<'_>) -> Outcome {
    let inst = ctx.inst;
    let pair = try_pair!(ctx);
    let mut budget = Budget::new(ctx.opts.max_steps);
    let a_bits = pair.a_base().bits();
    let mut sub = a_bits;
    let mut subsets: Vec<ElementSet> = Vec::new();
    loop {
        let s = ElementSet::from_bits(sub);
        if !s.is_empty() && s.len() <= 4 {
            subsets.push(s);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & a_bits;
    }
    subsets.sort_unstable();
    for subset in subsets {
        match pair.brute_force_serial_exchange_budgeted(subset, &mut budget) {
            Ok(Some(_)) => {}
            Ok(None) => {
                return Outcome::Violation(format!(
                    "no serial symmetric exchange for subset {}",
                    render_set(inst, subset)
                ))
            }
            Err(Error::BudgetExhausted { steps }) => {
                return Outcome::Fail(format!("budget of {steps} steps exhausted"))
            }
            Err(e) => return Outcome::Fail(e.to_string()),
        }
    }
    Outcome::Pass(None)
}

/// A cyclic base order exists (its absence would be a counterexample).
fn check_cyclic_order(ctx: &Ctx<'_>) -> Outcome {
    let pair = try_pair!(ctx);
    let mut budget = Budget::new(ctx.opts.max_steps);
    match cobase::find_cyclic_order_budgeted(&pair, &mut budget) {
        Ok(Some(_)) => Outcome::Pass(None),
        Ok(None) => Outcome::Violation(
            "no cyclic base order exists for this pair (counterexample)".to_string(),
        ),
        Err(Error::BudgetExhausted { steps }) => {
            Outcome::Fail(format!("budget of {steps} steps exhausted"))
        }
        Err(e) => Outcome::Fail(e.to_string()),
    }
}

/// Full rank-3/4 sequences lay out as cyclic orders whose windows verify.
fn check_serial_to_cyclic(ctx: &Ctx<'_>) -> Outcome {
    let pair = try_pair!(ctx);
    let seq = match pair.rank() {
        3 => pair.full_serial_exchange_rank3(),
        4 => pair.full_serial_exchange_rank4(),
        _ => return Outcome::Pass(Some("vacuous: rank not in {3,4}".to_string())),
    };
    let seq = match seq {
        Ok(seq) => seq,
        Err(Error::InternalConsistency(msg)) => return Outcome::Violation(msg),
        Err(e) => return Outcome::Fail(e.to_string()),
    };
    match cobase::serial_to_cyclic(&pair, &seq) {
        Ok(order) => match order.windows_verified(pair.matroid()) {
            Ok(true) => Outcome::Pass(None),
            Ok(false) => Outcome::Violation("cyclic windows failed verification".to_string()),
            Err(e) => Outcome::Fail(e.to_string()),
        },
        Err(e) => Outcome::Violation(format!("layout as cyclic order failed: {e}")),
    }
}

/// Base-cobase graph connectivity and the diameter-equals-rank property.
fn check_diameter(ctx: &Ctx<'_>) -> Outcome {
    let inst = ctx.inst;
    let graph = match cobase::build_graph(&inst.matroid) {
        Ok(g) => g,
        Err(e) => return Outcome::Fail(e.to_string()),
    };
    match graph.diameter() {
        Ok(Some(d)) => {
            if d == graph.rank() {
                Outcome::Pass(None)
            } else {
                Outcome::Violation(format!(
                    "diameter {d} != rank {} ({} vertices, {} edges)",
                    graph.rank(),
                    graph.vertex_count(),
                    graph.edge_count()
                ))
            }
        }
        Ok(None) => {
            let comps = graph.components();
            let diameters = graph.component_diameters();
            Outcome::Violation(format!(
                "base-cobase graph disconnected: {} components with diameters {:?}",
                comps.len(),
                diameters
            ))
        }
        Err(e) => Outcome::Fail(e.to_string()),
    }
}
