//! Isomorphism of underlying unweighted graphs (weights ignored, loops
//! respected) by degree-partition pruning plus backtracking. Desk scale:
//! capped at 16 vertices.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

pub const ISO_CAP: usize = 16;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
struct VertexClass {
    has_loop: bool,
    degree: usize,
    neighbor_degrees: Vec<(bool, usize)>,
}

fn classes(g: &WeightedGraph) -> Vec<VertexClass> {
    let n = g.vertex_count();
    let base: Vec<(bool, usize)> = (0..n)
        .map(|v| (g.has_loop(v), g.neighbors(v).len()))
        .collect();
    (0..n)
        .map(|v| {
            let mut nd: Vec<(bool, usize)> = g.neighbors(v).iter().map(|&u| base[u]).collect();
            nd.sort_unstable();
            VertexClass {
                has_loop: base[v].0,
                degree: base[v].1,
                neighbor_degrees: nd,
            }
        })
        .collect()
}

/// Returns a vertex bijection `phi` with `{i, j} in E1  iff  {phi(i), phi(j)} in E2`,
/// or `None` when the underlying graphs are not isomorphic.
pub fn is_isomorphic(g1: &WeightedGraph, g2: &WeightedGraph) -> Result<Option<Vec<usize>>> {
    let n = g1.vertex_count();
    for g in [g1, g2] {
        if g.vertex_count() > ISO_CAP {
            return Err(Error::TooLarge {
                n: g.vertex_count(),
                cap: ISO_CAP,
            });
        }
    }
    if n != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return Ok(None);
    }
    if n == 0 {
        return Ok(Some(Vec::new()));
    }

    let c1 = classes(g1);
    let c2 = classes(g2);
    let mut hist1: BTreeMap<&VertexClass, usize> = BTreeMap::new();
    let mut hist2: BTreeMap<&VertexClass, usize> = BTreeMap::new();
    for c in &c1 {
        *hist1.entry(c).or_insert(0) += 1;
    }
    for c in &c2 {
        *hist2.entry(c).or_insert(0) += 1;
    }
    if hist1 != hist2 {
        return Ok(None);
    }

    // Candidate targets per vertex of g1, by matching class.
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|v| (0..n).filter(|&u| c2[u] == c1[v]).collect())
        .collect();

    // Assign most-constrained vertices first.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (candidates[v].len(), std::cmp::Reverse(c1[v].degree), v));

    let mut mapping: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];

    fn dfs(
        depth: usize,
        order: &[usize],
        candidates: &[Vec<usize>],
        g1: &WeightedGraph,
        g2: &WeightedGraph,
        mapping: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let v = order[depth];
        'next: for &u in &candidates[v] {
            if used[u] {
                continue;
            }
            for w in 0..mapping.len() {
                if let Some(wu) = mapping[w] {
                    if g1.has_edge(v, w) != g2.has_edge(u, wu) {
                        continue 'next;
                    }
                }
            }
            mapping[v] = Some(u);
            used[u] = true;
            if dfs(depth + 1, order, candidates, g1, g2, mapping, used) {
                return true;
            }
            mapping[v] = None;
            used[u] = false;
        }
        false
    }

    if dfs(0, &order, &candidates, g1, g2, &mut mapping, &mut used) {
        Ok(Some(mapping.into_iter().map(Option::unwrap).collect()))
    } else {
        Ok(None)
    }
}

/// Checks that `phi` maps edges of `g1` exactly onto edges of `g2`.
pub fn is_valid_isomorphism(g1: &WeightedGraph, g2: &WeightedGraph, phi: &[usize]) -> bool {
    let n = g1.vertex_count();
    if phi.len() != n || g2.vertex_count() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &u in phi {
        if u >= n || seen[u] {
            return false;
        }
        seen[u] = true;
    }
    for i in 0..n {
        for j in i..n {
            if g1.has_edge(i, j) != g2.has_edge(phi[i], phi[j]) {
                return false;
            }
        }
    }
    true
}
