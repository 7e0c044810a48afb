//! Base-cobase graphs of block matroids and cyclic base orders.
//!
//! A block matroid's ground set splits into two disjoint bases. Its
//! base-cobase graph has one vertex per base whose complement is also a
//! base, and an edge wherever two vertices differ by exactly two elements.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exchange::{BasePair, Budget, ExchangeSequence};
use crate::matroid::Matroid;
use crate::set::{ElementId, ElementSet};

/// The base-cobase graph of a block matroid. Vertices are stored in
/// ascending bitset order; edges as index pairs `(i, j)` with `i < j`.
#[derive(Clone, Debug)]
pub struct BaseCobaseGraph {
    rank: u32,
    vertices: Vec<ElementSet>,
    edges: Vec<(u32, u32)>,
    neighbors: Vec<Vec<u32>>,
}

/// Builds the base-cobase graph. Errors with a witness description when the
/// matroid is not block (odd ground set, rank off, or no base/cobase
/// partition at all).
pub fn build_graph(m: &Matroid) -> Result<BaseCobaseGraph, Error> {
    let ground = m.ground_size();
    if !ground.is_multiple_of(2) {
        return Err(Error::Precondition(format!(
            "not a block matroid: odd ground size {ground}"
        )));
    }
    if m.full_rank() * 2 != ground {
        return Err(Error::Precondition(format!(
            "not a block matroid: rank {} on {ground} elements",
            m.full_rank()
        )));
    }
    let vertices = enumerate_vertices(m, false);
    if vertices.is_empty() {
        return Err(Error::Precondition(
            "not a block matroid: no base has a base complement".to_string(),
        ));
    }
    let mut edges = Vec::new();
    let mut neighbors = vec![Vec::new(); vertices.len()];
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            if vertices[i].symmetric_difference(vertices[j]).len() == 2 {
                edges.push((i as u32, j as u32));
                neighbors[i].push(j as u32);
                neighbors[j].push(i as u32);
            }
        }
    }
    Ok(BaseCobaseGraph {
        rank: m.full_rank(),
        vertices,
        edges,
        neighbors,
    })
}

/// Finds one base/cobase partition of a block matroid, if any.
pub fn find_block_pair(m: &Matroid) -> Option<(ElementSet, ElementSet)> {
    if !m.ground_size().is_multiple_of(2) || m.full_rank() * 2 != m.ground_size() {
        return None;
    }
    let first = enumerate_vertices(m, true).into_iter().next()?;
    Some((first, first.complement(m.ground_size())))
}

/// Backtracking over element ids in ascending order, assigning each to the
/// vertex set or its complement and pruning as soon as either side goes
/// dependent or over rank.
fn enumerate_vertices(m: &Matroid, first_only: bool) -> Vec<ElementSet> {
    struct State<'a> {
        m: &'a Matroid,
        rank: u32,
        ground: u32,
        out: Vec<ElementSet>,
        first_only: bool,
    }

    fn recurse(st: &mut State<'_>, next: u32, inside: ElementSet, outside: ElementSet) -> bool {
        if inside.len() > st.rank || outside.len() > st.rank {
            return false;
        }
        if next == st.ground {
            st.out.push(inside);
            return st.first_only;
        }
        let e = ElementId(next);
        if st.m.indep_unchecked(inside.with(e))
            && recurse(st, next + 1, inside.with(e), outside)
        {
            return true;
        }
        if st.m.indep_unchecked(outside.with(e))
            && recurse(st, next + 1, inside, outside.with(e))
        {
            return true;
        }
        false
    }

    let mut st = State {
        m,
        rank: m.full_rank(),
        ground: m.ground_size(),
        out: Vec::new(),
        first_only,
    };
    recurse(&mut st, 0, ElementSet::EMPTY, ElementSet::EMPTY);
    let mut vertices = st.out;
    vertices.sort_unstable();
    vertices
}

impl BaseCobaseGraph {
    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn vertices(&self) -> &[ElementSet] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.neighbors[v as usize]
    }

    fn bfs_distances(&self, from: u32) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.vertices.len()];
        dist[from as usize] = Some(0);
        let mut queue = VecDeque::new();
        queue.push_back(from);
        while let Some(v) = queue.pop_front() {
            let d = dist[v as usize].unwrap();
            for &w in &self.neighbors[v as usize] {
                if dist[w as usize].is_none() {
                    dist[w as usize] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Whether every vertex is reachable from vertex 0.
    pub fn is_connected(&self) -> Result<bool, Error> {
        if self.vertices.is_empty() {
            return Err(Error::Precondition("empty graph".to_string()));
        }
        Ok(self.bfs_distances(0).iter().all(Option::is_some))
    }

    /// Maximum eccentricity over all vertices (all-pairs BFS), or `None`
    /// when the graph is disconnected.
    pub fn diameter(&self) -> Result<Option<u32>, Error> {
        if self.vertices.is_empty() {
            return Err(Error::Precondition("empty graph".to_string()));
        }
        let mut best = 0;
        for v in 0..self.vertices.len() as u32 {
            let dist = self.bfs_distances(v);
            for d in &dist {
                match d {
                    Some(d) => best = best.max(*d),
                    None => return Ok(None),
                }
            }
        }
        Ok(Some(best))
    }

    /// Connected components as sorted vertex-index lists, in order of their
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.vertices.len()];
        let mut out = Vec::new();
        for start in 0..self.vertices.len() as u32 {
            if seen[start as usize] {
                continue;
            }
            let mut comp = Vec::new();
            for (v, d) in self.bfs_distances(start).iter().enumerate() {
                if d.is_some() {
                    seen[v] = true;
                    comp.push(v as u32);
                }
            }
            out.push(comp);
        }
        out
    }

    /// Diameter of each component, aligned with [`Self::components`];
    /// supplementary data for disconnected graphs.
    pub fn component_diameters(&self) -> Vec<u32> {
        self.components()
            .iter()
            .map(|comp| {
                let mut best = 0;
                for &v in comp {
                    for d in self.bfs_distances(v).iter().flatten() {
                        best = best.max(*d);
                    }
                }
                best
            })
            .collect()
    }
}

/// An ordering of the `2n` elements of two disjoint bases in which every
/// `n` consecutive elements (cyclically) form a base, the first `n` drawn
/// from the first base.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CyclicOrder {
    sequence: Vec<ElementId>,
}

impl CyclicOrder {
    pub fn sequence(&self) -> &[ElementId] {
        &self.sequence
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    /// The cyclic window of `n = len/2` elements starting at `start`.
    pub fn window(&self, start: usize) -> ElementSet {
        let n = self.sequence.len() / 2;
        (0..n)
            .map(|i| self.sequence[(start + i) % self.sequence.len()])
            .collect()
    }

    /// Re-checks every cyclic window against the oracle.
    pub fn windows_verified(&self, m: &Matroid) -> Result<bool, Error> {
        for start in 0..self.sequence.len() {
            if !m.is_base(self.window(start))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Searches for a cyclic base order of the pair: a full serial symmetric
/// exchange found depth-first (interleaved choices, ascending), then laid
/// out as `a_1..a_n b_1..b_n`. `None` is a counterexample to the cyclic
/// base-order property and worth reporting loudly.
pub fn find_cyclic_order(pair: &BasePair<'_>) -> Result<Option<CyclicOrder>, Error> {
    find_cyclic_order_budgeted(pair, &mut Budget::unlimited())
}

pub fn find_cyclic_order_budgeted(
    pair: &BasePair<'_>,
    budget: &mut Budget,
) -> Result<Option<CyclicOrder>, Error> {
    match pair.brute_force_serial_exchange_budgeted(pair.a_base(), budget)? {
        Some(seq) => Ok(Some(serial_to_cyclic(pair, &seq)?)),
        None => Ok(None),
    }
}

/// Lays out a full serial symmetric exchange as a cyclic base order: the
/// concatenation `a_1..a_n b_1..b_n`. Every window equals one of the
/// sequence's prefix sets (or a base itself), and all are re-verified.
pub fn serial_to_cyclic(
    pair: &BasePair<'_>,
    seq: &ExchangeSequence,
) -> Result<CyclicOrder, Error> {
    if seq.len() != pair.rank() as usize {
        return Err(Error::Precondition(format!(
            "sequence length {} does not cover the rank-{} bases",
            seq.len(),
            pair.rank()
        )));
    }
    if !pair.verify_sequence(seq)? {
        return Err(Error::Precondition(
            "sequence is not a valid serial symmetric exchange".to_string(),
        ));
    }
    let mut sequence = Vec::with_capacity(2 * seq.len());
    sequence.extend_from_slice(seq.a_order());
    sequence.extend_from_slice(seq.b_order());
    let order = CyclicOrder { sequence };
    if !order.windows_verified(pair.matroid())? {
        return Err(Error::InternalConsistency(
            "cyclic windows failed re-verification".to_string(),
        ));
    }
    Ok(order)
}
