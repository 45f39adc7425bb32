//! Shared fixtures for the integration suites: an independent reachability
//! oracle, exhaustive enumeration of small valid graphs, and the mixed
//! generated corpus the property and acceptance suites run over.

// Compiled once per test binary; each binary uses a different subset.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use uniprior::{generate, Arc, GraphKind, InformationFlowGraph, Vertex};

/// Transitive closure with path length >= 1 (Floyd-Warshall), computed
/// without any of the library's graph machinery. `closure[i][j]` is true iff
/// a non-empty directed walk leads from `i` to `j`.
#[allow(clippy::needless_range_loop)] // textbook k/i/j form, vertex-indexed
pub fn closure(n: usize, arcs: &[Arc]) -> Vec<Vec<bool>> {
    let mut reach = vec![vec![false; n + 1]; n + 1];
    for &(t, h) in arcs {
        reach[t][h] = true;
    }
    for k in 1..=n {
        for i in 1..=n {
            if !reach[i][k] {
                continue;
            }
            for j in 1..=n {
                if reach[k][j] {
                    reach[i][j] = true;
                }
            }
        }
    }
    reach
}

/// All ordered vertex pairs of `1..=n`, the candidate arcs.
pub fn all_arcs(n: usize) -> Vec<Arc> {
    let mut arcs = Vec::new();
    for t in 1..=n {
        for h in 1..=n {
            if t != h {
                arcs.push((t, h));
            }
        }
    }
    arcs
}

/// Every valid information-flow graph on exactly `n` vertices: each subset
/// of the possible arcs under which no vertex is isolated. Feasible for
/// `n <= 4` (at most 2^12 subsets).
pub fn enumerate_valid_graphs(n: usize) -> Vec<InformationFlowGraph> {
    let candidates = all_arcs(n);
    assert!(candidates.len() <= 20, "enumeration explodes past n=4");
    let mut graphs = Vec::new();
    'subsets: for mask in 0u32..1 << candidates.len() {
        let arcs: Vec<Arc> = candidates
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &a)| a)
            .collect();
        let mut incident = vec![false; n + 1];
        for &(t, h) in &arcs {
            incident[t] = true;
            incident[h] = true;
        }
        if incident[1..].iter().any(|&covered| !covered) {
            continue 'subsets;
        }
        graphs.push(InformationFlowGraph::new(n, arcs).expect("subsets of all_arcs are valid"));
    }
    graphs
}

/// Deterministic stream of generated graphs of one kind, sizes cycling
/// through `sizes`, seeds drawn consecutively from `seed_start`.
pub fn generated(kind: GraphKind, sizes: &[usize], count: usize, seed_start: u64) -> Vec<InformationFlowGraph> {
    (0..count)
        .map(|i| {
            let n = sizes[i % sizes.len()];
            generate(kind, n, seed_start + i as u64)
        })
        .collect()
}

/// Random unconstrained graphs where every vertex is incident to an arc
/// (generation keeps drawing seeds until enough qualify).
pub fn random_valid_graphs(n: usize, count: usize, seed_start: u64) -> Vec<InformationFlowGraph> {
    let mut graphs = Vec::new();
    let mut seed = seed_start;
    while graphs.len() < count {
        let g = generate(GraphKind::General, n, seed);
        seed += 1;
        let incident_all = g.vertices().all(|v| {
            g.out_degree(v) > 0 || g.arcs().iter().any(|&(_, h)| h == v)
        });
        if incident_all {
            graphs.push(g);
        }
    }
    graphs
}

/// A general-purpose directed acyclic graph with unconstrained out-degrees:
/// arcs only point from later to earlier in a hidden random order.
pub fn random_dag(n: usize, seed: u64) -> InformationFlowGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<Vertex> = (1..=n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        order.swap(i, j);
    }
    let mut arcs = Vec::new();
    for i in 1..n {
        for j in 0..i {
            if rng.gen_bool(0.3) {
                arcs.push((order[i], order[j]));
            }
        }
    }
    InformationFlowGraph::new(n, arcs).expect("downward arcs form a valid DAG")
}

/// The mixed corpus the cross-cutting suites run over: hand-picked shapes
/// plus all three generated families at a spread of sizes.
pub fn corpus() -> Vec<InformationFlowGraph> {
    let mut graphs = vec![
        InformationFlowGraph::new(2, [(1, 2)]).unwrap(),
        InformationFlowGraph::new(2, [(1, 2), (2, 1)]).unwrap(),
        InformationFlowGraph::new(3, [(1, 2), (2, 3), (3, 1)]).unwrap(),
        InformationFlowGraph::new(3, [(1, 2), (2, 1), (1, 3)]).unwrap(),
        InformationFlowGraph::new(5, [(1, 2), (2, 1), (3, 4), (4, 3), (5, 3)]).unwrap(),
        InformationFlowGraph::new(6, [(1, 2), (2, 1), (1, 3), (1, 4), (4, 1), (2, 5), (5, 6)])
            .unwrap(),
    ];
    graphs.extend(generated(GraphKind::AcyclicOutDegreeOne, &[2, 3, 4, 6, 8, 10], 30, 100));
    graphs.extend(generated(GraphKind::StronglyConnected, &[2, 3, 4, 5, 6, 8], 30, 200));
    graphs.extend(generated(GraphKind::General, &[3, 4, 5, 6, 8, 10, 12], 35, 300));
    graphs
}
