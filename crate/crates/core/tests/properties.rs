//! Seeded randomized checks of the module invariants that the acceptance
//! suite does not already sweep exhaustively.

use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use graphinv::catalog::{
    connected_catalog, random_connected, random_loopy_weighted, random_signature,
};
use graphinv::families::{corona, is_self_invertible};
use graphinv::graph::WeightedGraph;
use graphinv::inverse::{invert_graph, structural_inverse};
use graphinv::iso::is_valid_isomorphism;
use graphinv::matrix::ExactMatrix;
use graphinv::rational::int;
use graphinv::sachs::{det_via_sachs, enumerate_sachs, has_unique_sachs, SachsSubgraph};
use graphinv::spectra::{eigenvalues, spectrum_splits};

#[test]
fn parse_serialize_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for _ in 0..200 {
        let g = random_loopy_weighted(&mut rng, 8);
        assert_eq!(WeightedGraph::parse(&g.to_text()).unwrap(), g);
        assert!(g.adjacency_matrix().is_symmetric());
    }
}

#[test]
fn switching_is_an_involution_and_preserves_balance() {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    for _ in 0..150 {
        let n = rng.random_range(1..=8);
        let base = random_connected(&mut rng, n);
        let sg = random_signature(&mut rng, &base);
        let side: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.5)).collect();
        assert_eq!(sg.switch_cut(&side).switch_cut(&side), sg);
        assert_eq!(
            sg.is_balanced().unwrap(),
            sg.switch_cut(&side).is_balanced().unwrap()
        );
    }
}

#[test]
fn delete_vertex_removes_exactly_the_incident_edges() {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    for _ in 0..150 {
        let g = random_loopy_weighted(&mut rng, 8);
        let n = g.vertex_count();
        let v = rng.random_range(0..n);
        let reduced = g.delete_vertex(v);
        assert_eq!(reduced.vertex_count(), n - 1);
        assert_eq!(reduced.edge_count(), g.edge_count() - g.degree(v));
    }
}

#[test]
fn every_enumerated_sachs_subgraph_is_valid() {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    for _ in 0..60 {
        let g = random_loopy_weighted(&mut rng, 7);
        for s in enumerate_sachs(&g).unwrap() {
            assert!(s.is_valid_for(&g), "invalid subgraph {s:?} for\n{g}");
        }
    }
}

#[test]
fn unique_sachs_decision_matches_enumeration_on_random_eight_vertex_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    let mut checked = 0;
    while checked < 150 {
        let g = random_connected(&mut rng, 8);
        let count = enumerate_sachs(&g).unwrap().len();
        match has_unique_sachs(&g).unwrap() {
            Some(w) => {
                assert_eq!(count, 1);
                assert!(w.is_valid_for(&g));
            }
            None => assert_ne!(count, 1),
        }
        checked += 1;
    }
}

#[test]
fn pendant_reduction_trace_replays_on_the_original_graph() {
    use graphinv::sachs::pendant_reduce;
    for g in connected_catalog(6).unwrap() {
        let trace = pendant_reduce(&g).unwrap();
        let n = g.vertex_count();
        let mut adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v)).collect();
        let mut alive = vec![true; n];
        for &(v, u) in &trace.removed {
            // v is recorded as the degree-one endpoint of its step
            assert!(alive[v] && alive[u], "removed edge touches a dead vertex");
            assert_eq!(adj[v], vec![u], "edge was not pendant at its step");
            alive[v] = false;
            alive[u] = false;
            let partners = std::mem::take(&mut adj[u]);
            adj[v].clear();
            for w in partners {
                adj[w].retain(|&x| x != u);
            }
        }
        let survivors: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
        assert_eq!(survivors, trace.residual_vertices);
        assert_eq!(g.induced(&survivors), trace.residual);
        // nothing pendant is left
        for v in 0..trace.residual.vertex_count() {
            assert_ne!(trace.residual.degree(v), 1);
        }
    }
}

#[test]
fn pendant_reduction_outcome_is_order_independent() {
    // Re-run the reduction with random pendant choices; the unique-Sachs
    // decision must match, and so must the witness when it exists.
    fn random_order_witness<R: Rng>(g: &WeightedGraph, rng: &mut R) -> Option<SachsSubgraph> {
        let n = g.vertex_count();
        let mut adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v)).collect();
        let mut alive = vec![true; n];
        let mut removed = Vec::new();
        loop {
            let pendants: Vec<usize> = (0..n).filter(|&v| alive[v] && adj[v].len() == 1).collect();
            if pendants.is_empty() {
                break;
            }
            let v = pendants[rng.random_range(0..pendants.len())];
            let u = adj[v][0];
            removed.push((v.min(u), v.max(u)));
            alive[v] = false;
            alive[u] = false;
            let partners = std::mem::take(&mut adj[u]);
            adj[v].clear();
            for w in partners {
                adj[w].retain(|&x| x != u);
            }
        }
        // the residual must be a disjoint union of odd cycles
        let mut cycles = Vec::new();
        let mut seen = vec![false; n];
        for start in 0..n {
            if !alive[start] || seen[start] {
                continue;
            }
            if adj[start].len() != 2 {
                return None;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut prev = start;
            let mut cur = *adj[start].iter().min().unwrap();
            while cur != start {
                if adj[cur].len() != 2 {
                    return None;
                }
                seen[cur] = true;
                cycle.push(cur);
                let next = if adj[cur][0] == prev {
                    adj[cur][1]
                } else {
                    adj[cur][0]
                };
                prev = cur;
                cur = next;
            }
            if cycle.len() % 2 == 0 {
                return None;
            }
            cycles.push(cycle);
        }
        removed.sort_unstable();
        cycles.sort();
        Some(SachsSubgraph {
            cycles,
            matching: removed,
            loops: Vec::new(),
        })
    }

    let mut rng = ChaCha8Rng::seed_from_u64(106);
    for g in connected_catalog(6).unwrap() {
        let deterministic = has_unique_sachs(&g).unwrap();
        for _ in 0..5 {
            let shuffled = random_order_witness(&g, &mut rng);
            assert_eq!(
                deterministic.is_some(),
                shuffled.is_some(),
                "decision differs for\n{g}"
            );
            if let (Some(a), Some(b)) = (&deterministic, &shuffled) {
                assert_eq!(a, b, "witness differs for\n{g}");
            }
        }
    }
}

#[test]
fn signed_unique_sachs_with_perfect_matching_has_unit_determinant() {
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    let mut cases = 0;
    for g in connected_catalog(7).unwrap() {
        let Some(witness) = has_unique_sachs(&g).unwrap() else {
            continue;
        };
        if !witness.is_perfect_matching() {
            continue;
        }
        for _ in 0..3 {
            let sg = random_signature(&mut rng, &g);
            let det = det_via_sachs(sg.graph()).unwrap();
            let expect = if witness.matching.len() % 2 == 1 {
                int(-1)
            } else {
                int(1)
            };
            assert_eq!(det, expect, "Cor sign determinant for\n{}", sg.graph());
            cases += 1;
        }
    }
    assert!(cases >= 60);
}

#[test]
fn bipartite_sachs_subgraphs_have_even_cycles_and_unique_means_matching() {
    for g in connected_catalog(7).unwrap() {
        if !g.is_bipartite() {
            continue;
        }
        let subs = enumerate_sachs(&g).unwrap();
        for s in &subs {
            for cycle in &s.cycles {
                assert_eq!(cycle.len() % 2, 0, "odd cycle in bipartite graph\n{g}");
            }
        }
        if subs.len() == 1 {
            let w = has_unique_sachs(&g).unwrap().unwrap();
            assert!(w.is_perfect_matching());
        }
    }
}

#[test]
fn double_inversion_restores_the_graph() {
    let mut rng = ChaCha8Rng::seed_from_u64(108);
    let mut done = 0;
    while done < 60 {
        let g = random_loopy_weighted(&mut rng, 7);
        if det_via_sachs(&g).unwrap().is_zero() {
            continue;
        }
        let inv = structural_inverse(&g).unwrap();
        assert_eq!(structural_inverse(&inv).unwrap(), g);
        done += 1;
    }
}

#[test]
fn structural_inverse_is_a_true_matrix_inverse() {
    let mut rng = ChaCha8Rng::seed_from_u64(109);
    let mut done = 0;
    while done < 80 {
        let g = random_loopy_weighted(&mut rng, 8);
        if det_via_sachs(&g).unwrap().is_zero() {
            continue;
        }
        let inv = structural_inverse(&g).unwrap();
        let product = g.adjacency_matrix().mul(&inv.adjacency_matrix());
        assert_eq!(product, ExactMatrix::identity(g.vertex_count()));
        done += 1;
    }
}

#[test]
fn admissible_path_data_reconstructs_the_inverse_entries() {
    use graphinv::inverse::enumerate_admissible_paths;
    use graphinv::rational::Rational;
    use num_bigint::BigInt;

    let mut rng = ChaCha8Rng::seed_from_u64(117);
    let mut done = 0;
    while done < 40 {
        let g = random_loopy_weighted(&mut rng, 6);
        let det = det_via_sachs(&g).unwrap();
        if det.is_zero() {
            continue;
        }
        let oracle = invert_graph(&g).unwrap().inverse;
        let n = g.vertex_count();
        for i in 0..n {
            for j in (i + 1)..n {
                let mut acc = Rational::zero();
                for path in enumerate_admissible_paths(&g, i, j).unwrap() {
                    assert!(!path.complement_sachs.is_empty());
                    let edges = path.vertices.len() - 1;
                    let mut weight = Rational::from_integer(1.into());
                    for e in path.vertices.windows(2) {
                        assert!(g.has_edge(e[0], e[1]));
                        weight *= g.weight(e[0], e[1]).unwrap();
                    }
                    let mut inner = Rational::zero();
                    for s in &path.complement_sachs {
                        let mut term = Rational::from_integer(BigInt::from(1) << s.cycles.len());
                        for cycle in &s.cycles {
                            for k in 0..cycle.len() {
                                term *= g.weight(cycle[k], cycle[(k + 1) % cycle.len()]).unwrap();
                            }
                        }
                        for &v in &s.loops {
                            term *= g.weight(v, v).unwrap();
                        }
                        for &(a, b) in &s.matching {
                            let w = g.weight(a, b).unwrap();
                            term *= w * w;
                        }
                        let exponent = s.cycles.len() + s.loops.len() + s.edge_count() + edges;
                        if exponent % 2 == 1 {
                            inner -= term;
                        } else {
                            inner += term;
                        }
                    }
                    acc += weight * inner;
                }
                let entry = acc / &det;
                let expect = oracle.weight(i, j).cloned().unwrap_or_else(Rational::zero);
                assert_eq!(entry, expect, "entry ({i},{j}) of\n{g}");
            }
        }
        done += 1;
    }
}

#[test]
fn loop_free_structural_inverse_forces_perfect_matching_witness() {
    // one direction of the simple-inverse theorem; the converse is not
    // asserted (the paw graph is the standard counterexample)
    let mut rng = ChaCha8Rng::seed_from_u64(110);
    for g in connected_catalog(7).unwrap() {
        let Some(witness) = has_unique_sachs(&g).unwrap() else {
            continue;
        };
        let sg = random_signature(&mut rng, &g);
        let inv = structural_inverse(sg.graph()).unwrap();
        let loop_free = (0..inv.vertex_count()).all(|v| !inv.has_loop(v));
        if loop_free {
            assert!(
                witness.is_perfect_matching(),
                "simple inverse without matching witness for\n{}",
                sg.graph()
            );
        }
    }
}

#[test]
fn invertible_bipartite_graphs_are_simply_invertible() {
    let mut rng = ChaCha8Rng::seed_from_u64(115);
    let mut done = 0;
    while done < 60 {
        let g = graphinv::catalog::random_bipartite_weighted(&mut rng, 8);
        if det_via_sachs(&g).unwrap().is_zero() {
            continue;
        }
        assert!(
            graphinv::inverse::is_simply_invertible(&g).unwrap(),
            "bipartite invertible graph with loopy inverse\n{g}"
        );
        done += 1;
    }
}

#[test]
fn corona_graphs_have_unique_matching_sachs_and_are_self_invertible() {
    let mut rng = ChaCha8Rng::seed_from_u64(111);
    for n in 1..=6 {
        for h in graphinv::catalog::connected_graphs_up_to_iso(n).unwrap() {
            let c = corona(&h).unwrap();
            let witness = has_unique_sachs(&c).unwrap().unwrap();
            assert!(witness.is_perfect_matching());
            assert_eq!(witness.matching.len(), c.vertex_count() / 2);

            if c.vertex_count() <= 16 {
                let sg = random_signature(&mut rng, &c);
                let phi = is_self_invertible(&sg).unwrap().unwrap();
                let inv = invert_graph(sg.graph()).unwrap().inverse;
                assert!(is_valid_isomorphism(sg.graph(), &inv, &phi));
            }
        }
    }
}

#[test]
fn split_certificate_is_sound_on_random_signatures() {
    // at least 50 underlying unique-Sachs matching graphs, 10 signatures
    // each: a certificate must imply an actually split spectrum
    let mut rng = ChaCha8Rng::seed_from_u64(112);
    let mut graphs: Vec<WeightedGraph> = Vec::new();
    for g in connected_catalog(7).unwrap() {
        if g.vertex_count() < 2 || g.vertex_count() % 2 == 1 {
            continue;
        }
        if let Some(w) = has_unique_sachs(&g).unwrap() {
            if w.is_perfect_matching() {
                graphs.push(g);
            }
        }
    }
    while graphs.len() < 50 {
        let g = random_connected(&mut rng, 8);
        if let Ok(Some(w)) = has_unique_sachs(&g) {
            if w.is_perfect_matching() {
                graphs.push(g);
            }
        }
    }
    let mut signatures = 0;
    for g in &graphs {
        for _ in 0..10 {
            let sg = random_signature(&mut rng, g);
            assert!(graphinv::spectra::split_certificate(&sg).unwrap());
            let spectrum = eigenvalues(&sg.graph().adjacency_matrix().to_float()).unwrap();
            assert!(
                spectrum_splits(&spectrum),
                "certified but unsplit spectrum for\n{}",
                sg.graph()
            );
            signatures += 1;
        }
    }
    assert!(signatures >= 500);
}

#[test]
fn random_relabelings_are_always_detected_as_isomorphic() {
    let mut rng = ChaCha8Rng::seed_from_u64(116);
    for _ in 0..100 {
        let g = random_loopy_weighted(&mut rng, 10);
        let n = g.vertex_count();
        // random permutation by sorting random keys
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = rng.random_range(0..=i);
            perm.swap(i, j);
        }
        let mut relabeled = WeightedGraph::new(n);
        for (u, v, w) in g.edges() {
            relabeled.add_edge(perm[u], perm[v], w.clone()).unwrap();
        }
        let phi = graphinv::iso::is_isomorphic(&g, &relabeled)
            .unwrap()
            .expect("relabeling must be isomorphic");
        assert!(is_valid_isomorphism(&g, &relabeled, &phi));
    }
}

#[test]
fn eigensolver_satisfies_residual_and_trace_bounds_on_random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(113);
    for _ in 0..100 {
        let n = rng.random_range(1..=10);
        let mut m = graphinv::FloatMatrix::zero(n);
        for i in 0..n {
            for j in i..n {
                let v: f64 = rng.random_range(-3.0..3.0);
                m.set(i, j, v);
                m.set(j, i, v);
            }
        }
        let s = eigenvalues(&m).unwrap();
        assert!(s.max_residual() <= 1e-9 * m.frobenius_norm().max(1.0));
        let trace_err = (s.values().iter().sum::<f64>() - m.trace()).abs();
        assert!(trace_err <= 1e-8 * n as f64);
    }
}

#[test]
fn inverse_spectra_are_reciprocal_on_random_invertible_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(114);
    let mut done = 0;
    while done < 40 {
        let g = random_loopy_weighted(&mut rng, 7);
        let det = det_via_sachs(&g).unwrap();
        if det.is_zero() || det.abs().to_f64().unwrap() < 1e-3 {
            continue;
        }
        let inv = invert_graph(&g).unwrap().inverse;
        let s_g = eigenvalues(&g.adjacency_matrix().to_float()).unwrap();
        let s_inv = eigenvalues(&inv.adjacency_matrix().to_float()).unwrap();
        let mut reciprocals: Vec<f64> = s_g.values().iter().map(|v| 1.0 / v).collect();
        reciprocals.sort_by(|a, b| b.total_cmp(a));
        for (a, b) in s_inv.values().iter().zip(&reciprocals) {
            assert!((a - b).abs() <= 1e-7, "reciprocity violated for\n{g}");
        }
        done += 1;
    }
}
