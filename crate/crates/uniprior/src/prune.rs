//! Arc pruning and the optimal-length formula.
//!
//! A vertex with several outgoing arcs, at least one of which lies on no
//! cycle, is over-serving: broadcasting its message uncoded covers every
//! request for it, so all but one of those arcs are redundant. Pruning
//! removes them until no such vertex remains, then splits the survivor
//! graph into non-trivial strongly connected components (served by XOR
//! chains) and residual arcs (served uncoded). The optimal codelength reads
//! off that decomposition: one bit less than each component's size, plus
//! one bit per residual arc.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::graph::{Arc, InformationFlowGraph, Vertex};

/// How to resolve the free choices in [`prune`]: which qualifying vertex to
/// process and which non-cycle arc of it to keep. The optimal length is the
/// same under every policy; only the removal record differs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TieBreak {
    /// Smallest qualifying vertex, keeping its non-cycle arc with the
    /// smallest head. Reproducible output for fixed input.
    Deterministic,
    /// Both choices drawn from a seeded generator. Used to demonstrate that
    /// the computed length does not depend on the choices.
    Seeded(u64),
}

/// The outcome of pruning: the surviving graph, its non-trivial strongly
/// connected components, the arcs outside them, and a record of what was
/// removed and why.
#[derive(Debug, Clone)]
pub struct PruneResult {
    pruned: InformationFlowGraph,
    components: Vec<Vec<Vertex>>,
    residual_arcs: Vec<Arc>,
    removed_arcs: Vec<RemovedArc>,
}

/// A deleted arc together with the surviving arc that justified deleting it:
/// both leave the same vertex, and the kept one lies on no cycle, so the
/// message is broadcast uncoded and the deleted request is still served.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RemovedArc {
    pub removed: Arc,
    pub kept: Arc,
}

impl PruneResult {
    /// The graph after all removals.
    pub fn pruned(&self) -> &InformationFlowGraph {
        &self.pruned
    }

    /// Non-trivial strongly connected components of the pruned graph, each
    /// sorted ascending, listed by smallest contained vertex.
    pub fn components(&self) -> &[Vec<Vertex>] {
        &self.components
    }

    /// Arcs of the pruned graph that lie inside no non-trivial component.
    pub fn residual_arcs(&self) -> &[Arc] {
        &self.residual_arcs
    }

    pub fn removed_arcs(&self) -> &[RemovedArc] {
        &self.removed_arcs
    }

    /// Arcs of the pruned graph that lie inside the given component.
    pub fn component_arcs(&self, component: &[Vertex]) -> Vec<Arc> {
        self.pruned
            .arcs()
            .iter()
            .copied()
            .filter(|&(t, h)| {
                component.binary_search(&t).is_ok() && component.binary_search(&h).is_ok()
            })
            .collect()
    }
}

/// Removes redundant outgoing arcs until no vertex both exceeds out-degree 1
/// and has an outgoing arc on no cycle, then decomposes the result.
///
/// Cycle membership is recomputed against the current graph after every
/// removal round, since removals can break cycles and qualify new vertices.
/// Terminates in at most `|arcs|` rounds because each round deletes at least
/// one arc.
pub fn prune(g: &InformationFlowGraph, tiebreak: TieBreak) -> PruneResult {
    let mut rng = match tiebreak {
        TieBreak::Deterministic => None,
        TieBreak::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
    };
    let mut current = g.clone();
    let mut removed_arcs = Vec::new();

    loop {
        let scc = current.scc();
        // A vertex qualifies if it has more than one outgoing arc and at
        // least one of them leaves its strongly connected component (i.e.
        // lies on no cycle).
        let mut candidates: Vec<(Vertex, Vec<Arc>)> = Vec::new();
        for v in current.vertices() {
            if current.out_degree(v) <= 1 {
                continue;
            }
            let off_cycle: Vec<Arc> = current
                .out_neighbors(v)
                .iter()
                .map(|&h| (v, h))
                .filter(|&(t, h)| !scc.same_component(t, h))
                .collect();
            if !off_cycle.is_empty() {
                candidates.push((v, off_cycle));
            }
        }
        let Some((vertex, keepable)) = (match &mut rng {
            None => candidates.into_iter().next(),
            Some(rng) => {
                let picked = candidates.choose(rng).cloned();
                picked
            }
        }) else {
            break;
        };
        let kept = match &mut rng {
            None => keepable[0],
            Some(rng) => *keepable.choose(rng).expect("keepable is non-empty"),
        };
        let dropped: Vec<Arc> = current
            .out_neighbors(vertex)
            .iter()
            .map(|&h| (vertex, h))
            .filter(|&a| a != kept)
            .collect();
        for &removed in &dropped {
            removed_arcs.push(RemovedArc { removed, kept });
        }
        current = current.without_arcs(&dropped);
    }

    let scc = current.scc();
    let components: Vec<Vec<Vertex>> = scc.nontrivial().cloned().collect();
    let residual_arcs: Vec<Arc> = current
        .arcs()
        .iter()
        .copied()
        .filter(|&(t, h)| !scc.same_component(t, h))
        .collect();
    PruneResult {
        pruned: current,
        components,
        residual_arcs,
        removed_arcs,
    }
}

/// The optimal codelength of the graph the result was pruned from: each
/// non-trivial component of `V` vertices needs `V - 1` chained XOR bits, and
/// each residual arc one uncoded bit.
pub fn optimal_length(pr: &PruneResult) -> usize {
    let chain_bits: usize = pr.components.iter().map(|c| c.len() - 1).sum();
    chain_bits + pr.residual_arcs.len()
}
