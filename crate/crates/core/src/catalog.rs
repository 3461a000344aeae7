//! Exhaustive catalogs of small graphs up to isomorphism, the alkane tree
//! family, and seeded random graph samplers for the verification sweeps.
//!
//! Catalogs are generated by vertex augmentation with canonical-form
//! deduplication (minimum edge bitmask over all vertex permutations),
//! which is exact and fast enough through seven vertices.

use num_bigint::BigInt;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{SignedGraph, WeightedGraph};
use crate::rational::Rational;

pub const CATALOG_CAP: usize = 7;

fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    j * (j - 1) / 2 + i
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn heap(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, items, out);
            if k.is_multiple_of(2) {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    let mut items: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    heap(n, &mut items, &mut out);
    out
}

/// For each permutation of `0..n`, where each vertex-pair bit moves.
fn pair_relabelings(n: usize) -> Vec<Vec<usize>> {
    permutations(n)
        .iter()
        .map(|p| {
            let mut map = vec![0usize; n * (n - 1) / 2];
            for j in 1..n {
                for i in 0..j {
                    let (a, b) = (p[i].min(p[j]), p[i].max(p[j]));
                    map[pair_index(i, j)] = pair_index(a, b);
                }
            }
            map
        })
        .collect()
}

fn canonical(mask: u32, relabelings: &[Vec<usize>]) -> u32 {
    let mut best = u32::MAX;
    for map in relabelings {
        let mut relabeled = 0u32;
        let mut bits = mask;
        while bits != 0 {
            let b = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            relabeled |= 1 << map[b];
        }
        best = best.min(relabeled);
    }
    best
}

fn graph_from_mask(n: usize, mask: u32) -> WeightedGraph {
    let mut edges = Vec::new();
    for j in 1..n {
        for i in 0..j {
            if mask >> pair_index(i, j) & 1 == 1 {
                edges.push((i, j));
            }
        }
    }
    WeightedGraph::from_edges(n, &edges).unwrap()
}

/// All simple graphs on exactly `n` vertices up to isomorphism, as
/// unit-weight graphs in a deterministic order.
pub fn graphs_up_to_iso(n: usize) -> Result<Vec<WeightedGraph>> {
    if n > CATALOG_CAP {
        return Err(Error::TooLarge {
            n,
            cap: CATALOG_CAP,
        });
    }
    if n == 0 {
        return Ok(vec![WeightedGraph::new(0)]);
    }
    let mut level: Vec<u32> = vec![0]; // the one graph on a single vertex
    for k in 2..=n {
        let relabelings = pair_relabelings(k);
        let mut canon: Vec<u32> = Vec::new();
        for &mask in &level {
            for subset in 0..(1u32 << (k - 1)) {
                let mut extended = mask;
                for i in 0..(k - 1) {
                    if subset >> i & 1 == 1 {
                        extended |= 1 << pair_index(i, k - 1);
                    }
                }
                canon.push(canonical(extended, &relabelings));
            }
        }
        canon.sort_unstable();
        canon.dedup();
        level = canon;
    }
    Ok(level.into_iter().map(|m| graph_from_mask(n, m)).collect())
}

pub fn connected_graphs_up_to_iso(n: usize) -> Result<Vec<WeightedGraph>> {
    Ok(graphs_up_to_iso(n)?
        .into_iter()
        .filter(WeightedGraph::is_connected)
        .collect())
}

/// Every connected simple graph with between 1 and `max_n` vertices, up to
/// isomorphism.
pub fn connected_catalog(max_n: usize) -> Result<Vec<WeightedGraph>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(connected_graphs_up_to_iso(n)?);
    }
    Ok(out)
}

pub fn is_tree(g: &WeightedGraph) -> bool {
    g.vertex_count() >= 1
        && g.is_simple()
        && g.is_connected()
        && g.edge_count() + 1 == g.vertex_count()
}

pub fn trees_up_to_iso(n: usize) -> Result<Vec<WeightedGraph>> {
    Ok(connected_graphs_up_to_iso(n)?
        .into_iter()
        .filter(is_tree)
        .collect())
}

/// Trees whose degrees all lie in {1, 4}: hydrogen-completed carbon
/// skeletons with one through five carbons (methane through the three
/// pentanes), the largest on 17 vertices.
pub fn alkane_trees() -> Vec<WeightedGraph> {
    let mut out = Vec::new();
    for carbons in 1..=5 {
        for skeleton in trees_up_to_iso(carbons).unwrap() {
            if (0..carbons).any(|v| skeleton.degree(v) > 4) {
                continue;
            }
            let missing: Vec<usize> = (0..carbons).map(|v| 4 - skeleton.degree(v)).collect();
            let total = carbons + missing.iter().sum::<usize>();
            let mut edges: Vec<(usize, usize)> = skeleton.edges().map(|(u, v, _)| (u, v)).collect();
            let mut next = carbons;
            for (v, &count) in missing.iter().enumerate() {
                for _ in 0..count {
                    edges.push((v, next));
                    next += 1;
                }
            }
            let tree = WeightedGraph::from_edges(total, &edges).unwrap();
            debug_assert!(is_tree(&tree));
            debug_assert!((0..total).all(|v| tree.degree(v) == 1 || tree.degree(v) == 4));
            out.push(tree);
        }
    }
    out
}

/// Nonzero rational in `[-bound, bound]` with denominator at most `max_den`.
pub fn random_rational<R: Rng>(rng: &mut R, bound: i64, max_den: i64) -> Rational {
    let den = rng.random_range(1..=max_den);
    let mut num = 0i64;
    while num == 0 {
        num = rng.random_range(-(bound * den)..=(bound * den));
    }
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Random graph with loops allowed and exact rational weights in
/// `[-2, 2] \ {0}`; the vertex count is uniform in `1..=max_n`.
pub fn random_loopy_weighted<R: Rng>(rng: &mut R, max_n: usize) -> WeightedGraph {
    let n = rng.random_range(1..=max_n);
    let mut g = WeightedGraph::new(n);
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.random_bool(0.4) {
                g.add_edge(i, j, random_rational(rng, 2, 8)).unwrap();
            }
        }
    }
    for v in 0..n {
        if rng.random_bool(0.25) {
            g.add_edge(v, v, random_rational(rng, 2, 8)).unwrap();
        }
    }
    g
}

/// Random connected unit-weight simple graph: a random recursive tree plus
/// extra edges.
pub fn random_connected<R: Rng>(rng: &mut R, n: usize) -> WeightedGraph {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for v in 1..n {
        edges.push((rng.random_range(0..v), v));
    }
    let mut g = WeightedGraph::from_edges(n, &edges).unwrap();
    for i in 0..n {
        for j in (i + 1)..n {
            if !g.has_edge(i, j) && rng.random_bool(0.25) {
                g.add_edge(i, j, Rational::from_integer(1.into())).unwrap();
            }
        }
    }
    g
}

/// Uniformly random signature on the edges of `g`.
pub fn random_signature<R: Rng>(rng: &mut R, g: &WeightedGraph) -> SignedGraph {
    let mut signed = WeightedGraph::new(g.vertex_count());
    for (u, v, _) in g.edges() {
        let s = if rng.random_bool(0.5) { 1 } else { -1 };
        signed
            .add_edge(u, v, Rational::from_integer(s.into()))
            .unwrap();
    }
    SignedGraph::from_graph(signed).unwrap()
}

/// Random simple bipartite graph with rational weights; `n` is uniform in
/// `2..=max_n` and the sides are a random split.
pub fn random_bipartite_weighted<R: Rng>(rng: &mut R, max_n: usize) -> WeightedGraph {
    let n = rng.random_range(2..=max_n);
    let left = rng.random_range(1..n);
    let mut g = WeightedGraph::new(n);
    for i in 0..left {
        for j in left..n {
            if rng.random_bool(0.5) {
                g.add_edge(i, j, random_rational(rng, 2, 8)).unwrap();
            }
        }
    }
    g
}

/// Random weighted loopy graph with nonzero determinant, by rejection.
pub fn random_invertible_weighted<R: Rng>(rng: &mut R, max_n: usize) -> WeightedGraph {
    use num_traits::Zero;
    loop {
        let g = random_loopy_weighted(rng, max_n);
        if !g.adjacency_matrix().det().is_zero() {
            return g;
        }
    }
}
