//! Cross-cutting invariants, each checked against independent evidence:
//! reachability recomputed by Floyd-Warshall, decompositions replayed
//! arc-by-arc, codes exercised on concrete message words.

mod common;

use std::collections::HashSet;

use uniprior::{
    certificate_for, construct_code, derive_decoders, ear_decomposition, generate,
    min_linear_length, optimal_length, prune, DecodabilityInstance, Gf2Matrix, GraphKind,
    InformationFlowGraph, TieBreak,
};

use common::{closure, corpus, generated, random_dag};

#[test]
fn scc_components_partition_the_vertices() {
    for g in corpus() {
        let scc = g.scc();
        let mut seen = vec![false; g.vertex_count() + 1];
        for comp in scc.components() {
            for &v in comp {
                assert!(!seen[v], "vertex {v} in two components");
                seen[v] = true;
            }
        }
        assert!(g.vertices().all(|v| seen[v]), "some vertex missing");
        for comp in scc.nontrivial() {
            assert!(comp.len() >= 2);
        }
    }
}

#[test]
#[allow(clippy::needless_range_loop)] // i, j range over vertices, not indices
fn scc_agrees_with_floyd_warshall_reachability() {
    let mut checked = 0;
    for g in corpus().into_iter().filter(|g| g.vertex_count() <= 7) {
        let n = g.vertex_count();
        let reach = closure(n, g.arcs());
        let scc = g.scc();
        for i in 1..=n {
            for j in 1..=n {
                if i == j {
                    continue;
                }
                let together = reach[i][j] && reach[j][i];
                assert_eq!(
                    scc.same_component(i, j),
                    together,
                    "vertices {i},{j} of {:?}",
                    g.arcs()
                );
            }
        }
        for &(t, h) in g.arcs() {
            assert_eq!(g.arc_on_cycle((t, h)), reach[h][t], "arc ({t},{h})");
            assert_eq!(g.reachable(t, h), reach[t][h]);
        }
        checked += 1;
    }
    assert!(checked >= 30, "corpus too thin at n <= 7: {checked}");
}

#[test]
fn acyclic_order_invariant_on_a_thousand_dags() {
    for seed in 0..1000 {
        let n = 2 + (seed as usize % 9);
        let g = random_dag(n, seed);
        let ord = g.acyclic_order().expect("random DAGs are acyclic");
        for &(t, h) in g.arcs() {
            assert!(
                ord.position_of(t) > ord.position_of(h),
                "arc ({t},{h}) runs forward in {:?}",
                ord.order()
            );
        }
        // Sink vertices occupy the lowest positions.
        let sinks = g.vertices().filter(|&v| g.out_degree(v) == 0).count();
        for (pos, &v) in ord.order().iter().enumerate() {
            assert_eq!(pos < sinks, g.out_degree(v) == 0, "position {pos}");
        }
    }
}

#[test]
fn preprocess_is_idempotent_across_the_corpus() {
    for g in corpus() {
        let (once, _) = g.preprocess().expect("corpus graphs have arcs");
        let (twice, map) = once.preprocess().expect("still has arcs");
        assert_eq!(twice, once);
        assert!(map.is_identity());
    }
}

#[test]
fn prune_partitions_arcs_and_confines_fanout() {
    // Observation-style structure checks on 1,000 random graphs (n <= 10).
    for seed in 0..1000 {
        let n = 2 + (seed as usize % 9);
        let g = generate(GraphKind::General, n, 7000 + seed);
        let pr = prune(&g, TieBreak::Deterministic);
        let pruned = pr.pruned();

        // Component arcs and residual arcs are disjoint and exactly cover
        // the pruned graph's arcs.
        let mut covered: HashSet<_> = HashSet::new();
        for comp in pr.components() {
            for arc in pr.component_arcs(comp) {
                assert!(covered.insert(arc), "arc {arc:?} double-covered");
            }
        }
        for &arc in pr.residual_arcs() {
            assert!(covered.insert(arc), "residual arc {arc:?} double-covered");
        }
        assert_eq!(covered.len(), pruned.arc_count(), "seed {seed}");

        // Any vertex still fanning out lives inside a non-trivial component.
        for v in pruned.vertices() {
            if pruned.out_degree(v) > 1 {
                assert!(
                    pr.components().iter().any(|c| c.binary_search(&v).is_ok()),
                    "fanout vertex {v} outside all components, seed {seed}"
                );
            }
        }

        // Every surviving cycle lies inside one component.
        for &arc in pruned.arcs() {
            if pruned.arc_on_cycle(arc) {
                assert!(
                    pr.components()
                        .iter()
                        .any(|c| c.binary_search(&arc.0).is_ok()
                            && c.binary_search(&arc.1).is_ok()),
                    "cycle arc {arc:?} outside components, seed {seed}"
                );
            }
        }

        // Removal bookkeeping: every removal names a surviving justifier.
        for ra in pr.removed_arcs() {
            assert_eq!(ra.removed.0, ra.kept.0);
            assert!(pr.residual_arcs().contains(&ra.kept), "seed {seed}");
        }
        assert_eq!(
            pruned.arc_count() + pr.removed_arcs().len(),
            g.arc_count(),
            "arcs neither pruned nor kept, seed {seed}"
        );
    }
}

#[test]
fn ear_decomposition_replays_to_the_input() {
    // 500 random strongly connected graphs: the initial cycle and the ears
    // must partition the arcs exactly.
    for (i, g) in generated(GraphKind::StronglyConnected, &[2, 3, 4, 5, 6, 7, 8], 500, 40_000)
        .iter()
        .enumerate()
    {
        let dec = ear_decomposition(g).expect("generated graphs are strongly connected");
        assert!(dec.covers(g), "graph {i}: decomposition does not replay");
        for ear in dec.ears() {
            let v = ear.vertices();
            assert!(v.len() >= 2);
            if ear.is_closed() {
                assert!(v.len() >= 3, "closed ear too short: {v:?}");
            }
        }
    }
}

#[test]
fn certificates_match_the_claimed_length_everywhere() {
    for g in corpus() {
        let pr = prune(&g, TieBreak::Deterministic);
        let cert = certificate_for(&g, &pr);
        assert_eq!(cert.claimed_length(), optimal_length(&pr));
        assert_eq!(cert.check(&g), Ok(()), "graph {:?}", g.arcs());
        // The witness spans the same vertices using only original arcs.
        let wg = cert.witness_graph();
        assert_eq!(wg.vertex_count(), g.vertex_count());
        assert!(wg.arcs().iter().all(|&(t, h)| g.has_arc(t, h)));
    }
}

#[test]
fn certificate_soundness_chain_at_desk_scale() {
    // The full lower-bound argument, checked by brute force: the witness
    // needs exactly its arc count, and the original graph needs at least
    // as much as its witness subgraph.
    for g in common::enumerate_valid_graphs(3)
        .into_iter()
        .chain(common::enumerate_valid_graphs(4))
    {
        let pr = prune(&g, TieBreak::Deterministic);
        let cert = certificate_for(&g, &pr);
        let n = g.vertex_count();

        let witness_inst =
            DecodabilityInstance::from_arcs(n, cert.arcs().iter().map(|&(a, _)| a));
        let witness_min =
            min_linear_length(&witness_inst, n).expect("identity always decodes");
        assert_eq!(witness_min, cert.claimed_length(), "witness demands its arc count");

        let full_min = min_linear_length(&DecodabilityInstance::from_graph(&g), n)
            .expect("identity always decodes");
        assert!(full_min >= witness_min, "dropping arcs made the problem harder");
    }
}

#[test]
fn receivers_inside_a_component_can_reconstruct_all_of_it() {
    for g in corpus() {
        let pr = prune(&g, TieBreak::Deterministic);
        let code = construct_code(&pr);
        for comp in pr.components() {
            for &receiver in comp {
                let mut rows: Vec<Vec<bool>> = (0..code.length())
                    .map(|r| code.encoder().row_bits(r))
                    .collect();
                let mut own = vec![false; g.vertex_count()];
                own[receiver - 1] = true;
                rows.push(own);
                let matrix = Gf2Matrix::from_rows(&rows);
                for &message in comp {
                    let mut target = vec![false; g.vertex_count()];
                    target[message - 1] = true;
                    assert!(
                        matrix.solve(&target).is_some(),
                        "receiver {receiver} cannot rebuild x{message} in component {comp:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn removed_requests_are_still_served() {
    for g in corpus() {
        let pr = prune(&g, TieBreak::Deterministic);
        let code = derive_decoders(&g, construct_code(&pr)).expect("codes always decode");
        for ra in pr.removed_arcs() {
            let (message, receiver) = ra.removed;
            let decoder = code.decoder_for(receiver).expect("receiver exists");
            assert!(
                decoder.recipes().iter().any(|r| r.message() == message),
                "removed arc ({message},{receiver}) lost its decoder"
            );
        }
    }
}

#[test]
fn derived_decoders_reproduce_sampled_words() {
    // Spot-check the actual arithmetic (exhaustive sweeps live in the
    // acceptance suite): 40 corpus graphs x 64 random words each.
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
    for g in corpus().into_iter().take(40) {
        let pr = prune(&g, TieBreak::Deterministic);
        let code = derive_decoders(&g, construct_code(&pr)).expect("codes always decode");
        for _ in 0..64 {
            let message: Vec<bool> = (0..g.vertex_count()).map(|_| rng.gen()).collect();
            let codeword = code.encode(&message);
            for receiver in g.vertices() {
                let decoded = code.decode(receiver, message[receiver - 1], &codeword);
                let expected: Vec<bool> = g
                    .wants(receiver)
                    .iter()
                    .map(|&j| message[j - 1])
                    .collect();
                assert_eq!(decoded, expected, "receiver {receiver} on {:?}", g.arcs());
            }
        }
    }
}

#[test]
fn edge_list_and_json_round_trip_generated_graphs() {
    for (i, g) in generated(GraphKind::General, &[2, 5, 9, 13], 40, 90_000)
        .iter()
        .enumerate()
    {
        let from_text = InformationFlowGraph::from_edge_list(&g.to_edge_list()).unwrap();
        assert_eq!(&from_text, g, "edge list round trip, graph {i}");
        let from_json = InformationFlowGraph::from_json(&g.to_json()).unwrap();
        assert_eq!(&from_json, g, "json round trip, graph {i}");
    }
}
