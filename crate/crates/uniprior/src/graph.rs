//! Information-flow graphs.
//!
//! A problem instance is a directed graph on vertices `1..=n`: vertex `i`
//! stands for both receiver `i` and the message `x_i` it holds, and an arc
//! `(i, j)` records that receiver `j` wants message `x_i`. Arcs are simple
//! (no self-loops, no duplicates); isolated vertices are permitted so that
//! subgraphs produced by arc removal remain representable, but
//! [`InformationFlowGraph::preprocess`] strips them before any length or
//! code computation, since a receiver that wants nothing and whose message
//! nobody wants cannot affect either.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Vertex = usize;
pub type Arc = (Vertex, Vertex);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("arc ({0}, {1}) mentions a vertex outside 1..={2}")]
    VertexOutOfRange(Vertex, Vertex, usize),
    #[error("self-loop at vertex {0}: a receiver already knows its own message")]
    SelfLoop(Vertex),
    #[error("duplicate arc ({0}, {1})")]
    DuplicateArc(Vertex, Vertex),
    #[error("graph contains a cycle, no acyclic ordering exists")]
    HasCycle,
    #[error("graph has no arcs: the problem is trivial and the optimal codelength is 0")]
    NoArcs,
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("line 1: expected the vertex count, got {0:?}")]
    BadVertexCount(String),
    #[error("line {line}: expected \"tail head\", got {text:?}")]
    BadArcLine { line: usize, text: String },
    #[error("invalid JSON graph: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A directed graph describing who wants which message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InformationFlowGraph {
    n: usize,
    arcs: Vec<Arc>,
    out_adj: Vec<Vec<Vertex>>,
}

impl InformationFlowGraph {
    /// Builds a graph on vertices `1..=n` with the given arcs, which are
    /// deduplicated-checked, range-checked, and stored sorted.
    pub fn new(n: usize, arcs: impl IntoIterator<Item = Arc>) -> Result<Self, GraphError> {
        let mut arcs: Vec<Arc> = arcs.into_iter().collect();
        arcs.sort_unstable();
        for w in arcs.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::DuplicateArc(w[0].0, w[0].1));
            }
        }
        let mut out_adj = vec![Vec::new(); n + 1];
        for &(t, h) in &arcs {
            if t < 1 || t > n || h < 1 || h > n {
                return Err(GraphError::VertexOutOfRange(t, h, n));
            }
            if t == h {
                return Err(GraphError::SelfLoop(t));
            }
            out_adj[t].push(h);
        }
        Ok(Self { n, arcs, out_adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// All arcs, sorted lexicographically.
    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        1..=self.n
    }

    pub fn has_arc(&self, tail: Vertex, head: Vertex) -> bool {
        self.out_adj[tail].binary_search(&head).is_ok()
    }

    pub fn out_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.out_adj[v]
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.out_adj[v].len()
    }

    pub fn max_out_degree(&self) -> usize {
        (1..=self.n).map(|v| self.out_degree(v)).max().unwrap_or(0)
    }

    /// The messages receiver `v` wants: tails of the arcs into `v`.
    pub fn wants(&self, v: Vertex) -> Vec<Vertex> {
        self.arcs
            .iter()
            .filter(|&&(_, h)| h == v)
            .map(|&(t, _)| t)
            .collect()
    }

    /// True if some walk of one or more arcs leads from `from` to `to`.
    /// With `from == to` this asks whether the vertex lies on a cycle.
    pub fn reachable(&self, from: Vertex, to: Vertex) -> bool {
        let mut seen = vec![false; self.n + 1];
        let mut queue: VecDeque<Vertex> = self.out_adj[from].iter().copied().collect();
        for &v in &self.out_adj[from] {
            seen[v] = true;
        }
        while let Some(v) = queue.pop_front() {
            if v == to {
                return true;
            }
            for &w in &self.out_adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        false
    }

    /// True if the arc belongs to some cycle, i.e. its head can walk back to
    /// its tail.
    pub fn arc_on_cycle(&self, (tail, head): Arc) -> bool {
        debug_assert!(self.has_arc(tail, head));
        self.reachable(head, tail)
    }

    pub fn is_acyclic(&self) -> bool {
        self.scc().components().iter().all(|c| c.len() == 1)
    }

    /// Strongly connected components via Tarjan's algorithm (iterative, so
    /// deep graphs cannot overflow the call stack).
    pub fn scc(&self) -> SccDecomposition {
        let n = self.n;
        let mut index = vec![usize::MAX; n + 1];
        let mut low = vec![0usize; n + 1];
        let mut on_stack = vec![false; n + 1];
        let mut stack: Vec<Vertex> = Vec::new();
        let mut next_index = 0usize;
        let mut components: Vec<Vec<Vertex>> = Vec::new();
        // (vertex, position in its out-neighbor list)
        let mut work: Vec<(Vertex, usize)> = Vec::new();

        for root in 1..=n {
            if index[root] != usize::MAX {
                continue;
            }
            work.push((root, 0));
            index[root] = next_index;
            low[root] = next_index;
            next_index += 1;
            stack.push(root);
            on_stack[root] = true;

            while let Some(&mut (v, ref mut pos)) = work.last_mut() {
                if let Some(&w) = self.out_adj[v].get(*pos) {
                    *pos += 1;
                    if index[w] == usize::MAX {
                        index[w] = next_index;
                        low[w] = next_index;
                        next_index += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        work.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                } else {
                    work.pop();
                    if let Some(&(parent, _)) = work.last() {
                        low[parent] = low[parent].min(low[v]);
                    }
                    if low[v] == index[v] {
                        let mut comp = Vec::new();
                        loop {
                            let w = stack.pop().expect("tarjan stack underflow");
                            on_stack[w] = false;
                            comp.push(w);
                            if w == v {
                                break;
                            }
                        }
                        comp.sort_unstable();
                        components.push(comp);
                    }
                }
            }
        }

        components.sort_unstable_by_key(|c| c[0]);
        let mut component_index = vec![usize::MAX; n + 1];
        for (i, comp) in components.iter().enumerate() {
            for &v in comp {
                component_index[v] = i;
            }
        }
        SccDecomposition {
            components,
            component_index,
        }
    }

    /// Orders the vertices as `z_1, ..., z_n` so that every arc goes from a
    /// later position to an earlier one, with the sink vertices (out-degree
    /// zero) occupying the lowest positions in ascending label order.
    ///
    /// Fails with [`GraphError::HasCycle`] if the graph has a cycle.
    pub fn acyclic_order(&self) -> Result<VertexOrdering, GraphError> {
        let n = self.n;
        let mut remaining: Vec<usize> = (0..=n).map(|v| self.out_adj.get(v).map_or(0, Vec::len)).collect();
        let mut in_adj = vec![Vec::new(); n + 1];
        for &(t, h) in &self.arcs {
            in_adj[h].push(t);
        }
        for preds in &mut in_adj {
            preds.sort_unstable();
        }
        let mut queue: VecDeque<Vertex> = (1..=n).filter(|&v| remaining[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &u in &in_adj[v] {
                remaining[u] -= 1;
                if remaining[u] == 0 {
                    queue.push_back(u);
                }
            }
        }
        if order.len() != n {
            return Err(GraphError::HasCycle);
        }
        let mut position = vec![0usize; n + 1];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        Ok(VertexOrdering { order, position })
    }

    /// Drops vertices with no incident arc and relabels the rest to
    /// `1..=m`, preserving relative order. One pass suffices: removing an
    /// isolated vertex never isolates another.
    ///
    /// Fails with [`GraphError::NoArcs`] when nothing remains — a problem
    /// where nobody wants anything needs no transmission at all, and callers
    /// should report length 0 rather than run the pipeline.
    pub fn preprocess(&self) -> Result<(InformationFlowGraph, LabelMap), GraphError> {
        if self.arcs.is_empty() {
            return Err(GraphError::NoArcs);
        }
        let mut incident = vec![false; self.n + 1];
        for &(t, h) in &self.arcs {
            incident[t] = true;
            incident[h] = true;
        }
        let kept: Vec<Vertex> = (1..=self.n).filter(|&v| incident[v]).collect();
        Ok(self.induced_subgraph(&kept))
    }

    /// The subgraph induced by `keep` (sorted ascending), relabeled to
    /// `1..=keep.len()` in that order.
    pub fn induced_subgraph(&self, keep: &[Vertex]) -> (InformationFlowGraph, LabelMap) {
        debug_assert!(keep.windows(2).all(|w| w[0] < w[1]), "keep must be sorted");
        let map = LabelMap::new(self.n, keep);
        let arcs: Vec<Arc> = self
            .arcs
            .iter()
            .filter_map(|&(t, h)| Some((map.to_new(t)?, map.to_new(h)?)))
            .collect();
        let g = InformationFlowGraph::new(keep.len(), arcs)
            .expect("induced subgraph of a valid graph is valid");
        (g, map)
    }

    /// A copy with the given arcs removed. Arcs not present are ignored.
    pub fn without_arcs(&self, remove: &[Arc]) -> InformationFlowGraph {
        let arcs: Vec<Arc> = self
            .arcs
            .iter()
            .copied()
            .filter(|a| !remove.contains(a))
            .collect();
        InformationFlowGraph::new(self.n, arcs).expect("arc removal preserves validity")
    }

    /// Parses the plain text format: first line the vertex count, then one
    /// `tail head` pair per line.
    pub fn from_edge_list(text: &str) -> Result<Self, ParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (_, first) = lines.next().ok_or(ParseError::Empty)?;
        let n: usize = first
            .parse()
            .map_err(|_| ParseError::BadVertexCount(first.to_string()))?;
        let mut arcs = Vec::new();
        for (line, text) in lines {
            let mut it = text.split_whitespace();
            let arc = (|| {
                let t = it.next()?.parse().ok()?;
                let h = it.next()?.parse().ok()?;
                if it.next().is_some() {
                    return None;
                }
                Some((t, h))
            })();
            match arc {
                Some(a) => arcs.push(a),
                None => {
                    return Err(ParseError::BadArcLine {
                        line,
                        text: text.to_string(),
                    })
                }
            }
        }
        Ok(Self::new(n, arcs)?)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for &(t, h) in &self.arcs {
            out.push_str(&format!("{t} {h}\n"));
        }
        out
    }

    /// Parses the JSON form `{"n": ..., "arcs": [[tail, head], ...]}`.
    pub fn from_json(text: &str) -> Result<Self, ParseError> {
        let doc: GraphJson = serde_json::from_str(text)?;
        Ok(Self::new(doc.n, doc.arcs)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&GraphJson {
            n: self.n,
            arcs: self.arcs.clone(),
        })
        .expect("graph serialization cannot fail")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    n: usize,
    arcs: Vec<Arc>,
}

/// The strongly connected components of a graph, each sorted ascending and
/// listed in ascending order of their smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccDecomposition {
    components: Vec<Vec<Vertex>>,
    component_index: Vec<usize>,
}

impl SccDecomposition {
    pub fn components(&self) -> &[Vec<Vertex>] {
        &self.components
    }

    /// Components with two or more vertices — the ones that contain cycles.
    pub fn nontrivial(&self) -> impl Iterator<Item = &Vec<Vertex>> {
        self.components.iter().filter(|c| c.len() > 1)
    }

    pub fn component_of(&self, v: Vertex) -> usize {
        self.component_index[v]
    }

    pub fn same_component(&self, u: Vertex, v: Vertex) -> bool {
        self.component_index[u] == self.component_index[v]
    }
}

/// An acyclic ordering: `order()[i]` is the vertex at position `i`, and
/// every arc runs from a higher position to a lower one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexOrdering {
    order: Vec<Vertex>,
    position: Vec<usize>,
}

impl VertexOrdering {
    pub fn order(&self) -> &[Vertex] {
        &self.order
    }

    pub fn position_of(&self, v: Vertex) -> usize {
        self.position[v]
    }
}

/// Relabeling produced when vertices are dropped: new labels are contiguous
/// `1..=len`, and each maps back to its original vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelMap {
    to_original: Vec<Vertex>, // index 0 unused
    to_new: Vec<Option<Vertex>>,
}

impl LabelMap {
    fn new(original_n: usize, kept: &[Vertex]) -> Self {
        let mut to_new = vec![None; original_n + 1];
        let mut to_original = Vec::with_capacity(kept.len() + 1);
        to_original.push(0);
        for (i, &v) in kept.iter().enumerate() {
            to_original.push(v);
            to_new[v] = Some(i + 1);
        }
        Self {
            to_original,
            to_new,
        }
    }

    pub fn identity(n: usize) -> Self {
        let all: Vec<Vertex> = (1..=n).collect();
        Self::new(n, &all)
    }

    pub fn len(&self) -> usize {
        self.to_original.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_original(&self, new: Vertex) -> Vertex {
        self.to_original[new]
    }

    pub fn to_new(&self, original: Vertex) -> Option<Vertex> {
        self.to_new[original]
    }

    pub fn is_identity(&self) -> bool {
        self.to_original.iter().skip(1).enumerate().all(|(i, &v)| v == i + 1)
    }

    /// Composes with an inner map: `self` relabels the original graph, and
    /// `inner` relabels the result again.
    pub fn compose(&self, inner: &LabelMap) -> LabelMap {
        let kept: Vec<Vertex> = (1..=inner.len())
            .map(|v| self.to_original(inner.to_original(v)))
            .collect();
        let original_n = self.to_new.len() - 1;
        LabelMap::new(original_n, &kept)
    }
}
