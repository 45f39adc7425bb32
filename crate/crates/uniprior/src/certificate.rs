//! Optimality certificates built from ear decompositions.
//!
//! Why the pruned decomposition's length cannot be beaten: inside any
//! strongly connected graph one can find a spanning witness subgraph that is
//! acyclic with maximum out-degree 1 and has exactly `V - 1` arcs. Such a
//! witness is itself an instance whose optimal codelength equals its arc
//! count (every arc demands a distinct uncoded bit), and dropping arcs never
//! makes a problem harder — so the original graph needs at least `V - 1`
//! bits. The witness comes from an ear decomposition: grow the graph from a
//! cycle by attaching ears (paths or cycles whose endpoints already exist
//! and whose inner vertices are new), then delete each ear's first arc and
//! one arc of the initial cycle.
//!
//! [`certificate_for`] assembles the per-component witnesses and the
//! residual arcs into one certificate for a whole pruned graph, with arc
//! count equal to the claimed optimal length.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Arc, InformationFlowGraph, Vertex};
use crate::prune::{optimal_length, PruneResult};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CertificateError {
    #[error("graph is not strongly connected on at least two vertices")]
    NotStronglyConnected,
    #[error("witness claims {found} vertices but the graph has {expected}")]
    VertexMismatch { expected: usize, found: usize },
    #[error("witness arc ({0}, {1}) does not exist in the graph")]
    ForeignArc(Vertex, Vertex),
    #[error("witness vertex {0} has more than one outgoing arc")]
    OutDegree(Vertex),
    #[error("witness contains a cycle")]
    Cyclic,
    #[error("witness has {actual} arcs but claims length {claimed}")]
    CountMismatch { claimed: usize, actual: usize },
}

/// An ear: a trail `k_1, ..., k_K` whose endpoints were already in the graph
/// being grown and whose inner vertices were new. Open ears are paths
/// (`k_1 != k_K`, `K >= 2`); closed ears return to their start (`k_1 == k_K`,
/// `K >= 3`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ear {
    vertices: Vec<Vertex>,
}

impl Ear {
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn is_closed(&self) -> bool {
        self.vertices.first() == self.vertices.last()
    }

    pub fn first_arc(&self) -> Arc {
        (self.vertices[0], self.vertices[1])
    }

    pub fn arcs(&self) -> Vec<Arc> {
        self.vertices.windows(2).map(|w| (w[0], w[1])).collect()
    }
}

/// A strongly connected graph rebuilt as an initial cycle plus a sequence of
/// ears. Every strongly connected graph on two or more vertices admits one,
/// and the arcs of the cycle and the ears partition the graph's arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EarDecomposition {
    n: usize,
    initial_cycle: Vec<Vertex>,
    ears: Vec<Ear>,
}

impl EarDecomposition {
    /// The initial cycle as a vertex sequence; the closing arc back to the
    /// first vertex is implied.
    pub fn initial_cycle(&self) -> &[Vertex] {
        &self.initial_cycle
    }

    pub fn initial_cycle_arcs(&self) -> Vec<Arc> {
        let mut arcs: Vec<Arc> = self
            .initial_cycle
            .windows(2)
            .map(|w| (w[0], w[1]))
            .collect();
        arcs.push((
            *self.initial_cycle.last().expect("cycle is non-empty"),
            self.initial_cycle[0],
        ));
        arcs
    }

    pub fn ears(&self) -> &[Ear] {
        &self.ears
    }

    /// True if the cycle and ear arcs exactly partition the arcs of `g`.
    pub fn covers(&self, g: &InformationFlowGraph) -> bool {
        let mut seen = HashSet::new();
        for a in self
            .initial_cycle_arcs()
            .into_iter()
            .chain(self.ears.iter().flat_map(|e| e.arcs()))
        {
            if !g.has_arc(a.0, a.1) || !seen.insert(a) {
                return false;
            }
        }
        seen.len() == g.arc_count()
    }

    /// Deletes each ear's first arc and the initial-cycle arc with the
    /// smallest tail, leaving an acyclic witness with out-degrees at most 1
    /// and exactly `V - 1` arcs.
    pub fn witness(&self) -> LowerBoundCertificate {
        let cycle_arcs = self.initial_cycle_arcs();
        let cut = cycle_arcs
            .iter()
            .copied()
            .min_by_key(|&(t, _)| t)
            .expect("cycle has arcs");
        let mut arcs: Vec<(Arc, ArcOrigin)> = cycle_arcs
            .into_iter()
            .filter(|&a| a != cut)
            .map(|a| (a, ArcOrigin::InitialCycleSurvivor))
            .collect();
        for ear in &self.ears {
            let first = ear.first_arc();
            arcs.extend(
                ear.arcs()
                    .into_iter()
                    .filter(|&a| a != first)
                    .map(|a| (a, ArcOrigin::EarRemainder)),
            );
        }
        arcs.sort_unstable_by_key(|&(a, _)| a);
        assert_eq!(arcs.len(), self.n - 1, "one arc must survive per vertex bar one");
        LowerBoundCertificate {
            n: self.n,
            arcs,
            claimed_length: self.n - 1,
        }
    }
}

/// Decomposes a strongly connected graph into an initial cycle plus ears.
///
/// Choices are fixed for reproducibility: the initial cycle is a shortest
/// cycle through vertex 1, and each ear starts at the lexicographically
/// smallest uncovered arc leaving the grown subgraph, continuing by
/// breadth-first search through new vertices until it reattaches.
pub fn ear_decomposition(
    g: &InformationFlowGraph,
) -> Result<EarDecomposition, CertificateError> {
    let n = g.vertex_count();
    if n < 2 || g.scc().components().len() != 1 {
        return Err(CertificateError::NotStronglyConnected);
    }

    let initial_cycle = shortest_cycle_through(g, 1);
    let mut in_graph = vec![false; n + 1];
    for &v in &initial_cycle {
        in_graph[v] = true;
    }
    let mut covered: HashSet<Arc> = HashSet::new();
    for w in initial_cycle.windows(2) {
        covered.insert((w[0], w[1]));
    }
    covered.insert((*initial_cycle.last().unwrap(), initial_cycle[0]));

    let mut ears = Vec::new();
    while covered.len() < g.arc_count() {
        // Covered arcs always have both endpoints grown, so while anything
        // remains uncovered, strong connectivity provides an uncovered arc
        // leaving a grown vertex.
        let &(tail, head) = g
            .arcs()
            .iter()
            .find(|&&a| in_graph[a.0] && !covered.contains(&a))
            .expect("strong connectivity leaves a startable ear");
        let vertices = if in_graph[head] {
            vec![tail, head]
        } else {
            let mut path = walk_to_grown(g, head, &in_graph);
            path.insert(0, tail);
            path
        };
        for w in vertices.windows(2) {
            covered.insert((w[0], w[1]));
        }
        for &v in &vertices {
            in_graph[v] = true;
        }
        ears.push(Ear { vertices });
    }

    Ok(EarDecomposition {
        n,
        initial_cycle,
        ears,
    })
}

/// A shortest cycle through `start`, as a vertex sequence.
fn shortest_cycle_through(g: &InformationFlowGraph, start: Vertex) -> Vec<Vertex> {
    let n = g.vertex_count();
    let mut dist = vec![usize::MAX; n + 1];
    let mut parent = vec![0; n + 1];
    dist[start] = 0;
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for &w in g.out_neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    // The best closing arc (u, start) minimizes the cycle length, ties going
    // to the smaller u; wants(start) lists exactly the candidate tails.
    let u = g
        .wants(start)
        .into_iter()
        .filter(|&u| dist[u] != usize::MAX)
        .min_by_key(|&u| (dist[u], u))
        .expect("a strongly connected graph has a cycle through every vertex");
    let mut path = vec![u];
    let mut v = u;
    while v != start {
        v = parent[v];
        path.push(v);
    }
    path.reverse();
    path
}

/// BFS from `from` through vertices outside the grown subgraph, stopping at
/// the first grown vertex reached; returns the path `from..=stop`.
fn walk_to_grown(g: &InformationFlowGraph, from: Vertex, in_graph: &[bool]) -> Vec<Vertex> {
    let mut parent = vec![0; in_graph.len()];
    let mut seen = vec![false; in_graph.len()];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        for &w in g.out_neighbors(v) {
            if seen[w] {
                continue;
            }
            parent[w] = v;
            if in_graph[w] {
                let mut path = vec![w];
                let mut x = w;
                while x != from {
                    x = parent[x];
                    path.push(x);
                }
                path.reverse();
                return path;
            }
            seen[w] = true;
            queue.push_back(w);
        }
    }
    unreachable!("strong connectivity guarantees a way back to the grown subgraph");
}

/// Where a witness arc came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ArcOrigin {
    InitialCycleSurvivor,
    EarRemainder,
    Residual,
}

/// A machine-checkable lower bound on the optimal codelength: a spanning
/// subgraph that is acyclic with out-degrees at most 1, whose arc count
/// equals the claimed length. Such a subgraph needs one uncoded bit per arc
/// even with unrestricted coding, and a subgraph's demand never exceeds the
/// original's.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBoundCertificate {
    n: usize,
    arcs: Vec<(Arc, ArcOrigin)>,
    claimed_length: usize,
}

impl LowerBoundCertificate {
    /// Assembles a certificate from raw parts, e.g. one received from an
    /// untrusted source; [`check`](Self::check) validates it.
    pub fn from_parts(n: usize, arcs: Vec<(Arc, ArcOrigin)>, claimed_length: usize) -> Self {
        let mut arcs = arcs;
        arcs.sort_unstable_by_key(|&(a, _)| a);
        Self {
            n,
            arcs,
            claimed_length,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[(Arc, ArcOrigin)] {
        &self.arcs
    }

    pub fn claimed_length(&self) -> usize {
        self.claimed_length
    }

    /// The witness as a graph in its own right.
    pub fn witness_graph(&self) -> InformationFlowGraph {
        InformationFlowGraph::new(self.n, self.arcs.iter().map(|&(a, _)| a))
            .expect("checked witnesses only contain valid arcs")
    }

    /// Validates the certificate against the graph it claims to bound:
    /// same vertices, arcs drawn from the graph, acyclic, out-degrees at
    /// most 1, and arc count equal to the claimed length.
    pub fn check(&self, g: &InformationFlowGraph) -> Result<(), CertificateError> {
        if self.n != g.vertex_count() {
            return Err(CertificateError::VertexMismatch {
                expected: g.vertex_count(),
                found: self.n,
            });
        }
        for &((t, h), _) in &self.arcs {
            if !g.has_arc(t, h) {
                return Err(CertificateError::ForeignArc(t, h));
            }
        }
        let witness = InformationFlowGraph::new(self.n, self.arcs.iter().map(|&(a, _)| a))
            .map_err(|_| {
                let (t, h) = self.arcs[0].0;
                CertificateError::ForeignArc(t, h)
            })?;
        if let Some(v) = witness.vertices().find(|&v| witness.out_degree(v) > 1) {
            return Err(CertificateError::OutDegree(v));
        }
        if !witness.is_acyclic() {
            return Err(CertificateError::Cyclic);
        }
        if self.arcs.len() != self.claimed_length {
            return Err(CertificateError::CountMismatch {
                claimed: self.claimed_length,
                actual: self.arcs.len(),
            });
        }
        Ok(())
    }
}

/// Builds the lower-bound certificate matching a prune decomposition: each
/// non-trivial component contributes its ear-decomposition witness, and
/// every residual arc joins as-is. The claimed length equals
/// [`optimal_length`] of the decomposition, closing the gap with the
/// constructed code.
pub fn certificate_for(g: &InformationFlowGraph, pr: &PruneResult) -> LowerBoundCertificate {
    let mut arcs: Vec<(Arc, ArcOrigin)> = Vec::new();
    for comp in pr.components() {
        let (sub, map) = pr.pruned().induced_subgraph(comp);
        let dec = ear_decomposition(&sub)
            .expect("a non-trivial strongly connected component decomposes");
        for &((t, h), origin) in dec.witness().arcs() {
            arcs.push(((map.to_original(t), map.to_original(h)), origin));
        }
    }
    arcs.extend(
        pr.residual_arcs()
            .iter()
            .map(|&a| (a, ArcOrigin::Residual)),
    );
    arcs.sort_unstable_by_key(|&(a, _)| a);
    let cert = LowerBoundCertificate {
        n: g.vertex_count(),
        arcs,
        claimed_length: optimal_length(pr),
    };
    debug_assert_eq!(cert.check(g), Ok(()));
    cert
}
