//! Stellated and corona graphs and their closed-form signed inverses.
//!
//! The stellation st(G) is the line graph of the once-subdivided G:
//! every vertex becomes a clique on its incident edge-ends and every
//! original edge becomes a matching edge between cliques. The corona of H
//! attaches one pendant vertex to each vertex of H. Both carry a canonical
//! perfect matching, and when the matching is the unique one the inverse
//! is again a signed graph given by alternating-path signs.

use std::collections::BTreeMap;

use num_traits::One;

use crate::error::{Error, Result};
use crate::graph::{SignedGraph, WeightedGraph};
use crate::inverse::invert_graph;
use crate::iso::is_isomorphic;
use crate::rational::{int, Rational};
use crate::sachs::perfect_matchings_bounded;

/// How st(G) relates back to G: the clique replacing each vertex and the
/// matching edge mirroring each original edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StellationMap {
    pub clique_of: Vec<Vec<usize>>,
    pub matching_edge: BTreeMap<(usize, usize), (usize, usize)>,
}

/// Builds st(G) with unit weights. One st-vertex per (vertex, incident
/// edge) pair, numbered in sorted iteration order. Isolated vertices of G
/// contribute nothing (their clique is empty).
pub fn stellate(g: &WeightedGraph) -> Result<(WeightedGraph, StellationMap)> {
    if !g.is_simple() {
        return Err(Error::HasLoops);
    }
    let n = g.vertex_count();
    let mut ids: BTreeMap<(usize, (usize, usize)), usize> = BTreeMap::new();
    let mut clique_of: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut counter = 0;
    for v in 0..n {
        for (a, b, _) in g.edges() {
            if a == v || b == v {
                ids.insert((v, (a, b)), counter);
                clique_of[v].push(counter);
                counter += 1;
            }
        }
    }

    let mut st = WeightedGraph::new(counter);
    for members in &clique_of {
        for (k, &x) in members.iter().enumerate() {
            for &y in &members[k + 1..] {
                st.add_edge(x, y, Rational::one())?;
            }
        }
    }
    let mut matching_edge = BTreeMap::new();
    for (a, b, _) in g.edges() {
        let x = ids[&(a, (a, b))];
        let y = ids[&(b, (a, b))];
        st.add_edge(x, y, Rational::one())?;
        matching_edge.insert((a, b), (x.min(y), x.max(y)));
    }
    Ok((
        st,
        StellationMap {
            clique_of,
            matching_edge,
        },
    ))
}

/// Corona of `h`: vertices `0..n` are `h`, vertex `n + i` is the pendant
/// partner of `i`. All weights are set to 1.
pub fn corona(h: &WeightedGraph) -> Result<WeightedGraph> {
    if !h.is_simple() {
        return Err(Error::HasLoops);
    }
    let n = h.vertex_count();
    let mut g = WeightedGraph::new(2 * n);
    for (u, v, _) in h.edges() {
        g.add_edge(u, v, Rational::one())?;
    }
    for i in 0..n {
        g.add_edge(i, n + i, Rational::one())?;
    }
    Ok(g)
}

/// Validates the corona pendant labeling and returns `|V(H)|`.
pub fn corona_half(g: &WeightedGraph) -> Result<usize> {
    let n2 = g.vertex_count();
    if n2 == 0 {
        return Err(Error::NotCorona("empty graph".into()));
    }
    if !n2.is_multiple_of(2) {
        return Err(Error::NotCorona("odd vertex count".into()));
    }
    if !g.is_simple() {
        return Err(Error::NotCorona("loops present".into()));
    }
    let n = n2 / 2;
    for i in 0..n {
        if !g.has_edge(i, n + i) {
            return Err(Error::NotCorona(format!(
                "missing pendant edge {i} {}",
                n + i
            )));
        }
        if g.degree(n + i) != 1 {
            return Err(Error::NotCorona(format!(
                "vertex {} should be pendant but has degree {}",
                n + i,
                g.degree(n + i)
            )));
        }
    }
    Ok(n)
}

/// Validates that `g` is the stellation of a tree and returns its unique
/// perfect matching: the graph must be connected and simple, carry exactly
/// one perfect matching, decompose into cliques after removing it, and
/// have every matching edge joining two distinct cliques.
pub fn stellated_tree_matching(g: &WeightedGraph) -> Result<Vec<(usize, usize)>> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::NotStellatedTree("fewer than two vertices".into()));
    }
    if !g.is_simple() {
        return Err(Error::NotStellatedTree("loops present".into()));
    }
    if !g.is_connected() {
        return Err(Error::NotStellatedTree("not connected".into()));
    }
    let pms = perfect_matchings_bounded(g, 2)?;
    let m = match pms.len() {
        1 => pms.into_iter().next().unwrap(),
        0 => return Err(Error::NotStellatedTree("no perfect matching".into())),
        _ => {
            return Err(Error::NotStellatedTree(
                "perfect matching not unique".into(),
            ))
        }
    };

    let mut without_m = WeightedGraph::new(n);
    let in_m: Vec<(usize, usize)> = m.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    for (u, v, w) in g.edges() {
        if !in_m.contains(&(u, v)) {
            without_m.add_edge(u, v, w.clone())?;
        }
    }
    let components = without_m.connected_components();
    let mut component_of = vec![usize::MAX; n];
    for (idx, comp) in components.iter().enumerate() {
        for &v in comp {
            component_of[v] = idx;
        }
        for (k, &x) in comp.iter().enumerate() {
            for &y in &comp[k + 1..] {
                if !without_m.has_edge(x, y) {
                    return Err(Error::NotStellatedTree(
                        "non-matching edges do not decompose into cliques".into(),
                    ));
                }
            }
        }
    }
    for &(a, b) in &in_m {
        if component_of[a] == component_of[b] {
            return Err(Error::NotStellatedTree(
                "matching edge inside a clique".into(),
            ));
        }
    }
    let mut m = in_m;
    m.sort_unstable();
    Ok(m)
}

/// An M-alternating path: all vertices matched, edges alternating between
/// the matching and its complement, first and last edges in the matching.
/// `tau` counts the non-matching edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternatingPath {
    pub vertices: Vec<usize>,
    pub tau: usize,
}

fn matching_partners(g: &WeightedGraph, m: &[(usize, usize)]) -> Result<Vec<usize>> {
    let n = g.vertex_count();
    let mut partner = vec![usize::MAX; n];
    for &(a, b) in m {
        if a == b || a >= n || b >= n || !g.has_edge(a, b) {
            return Err(Error::NotPerfectMatching);
        }
        if partner[a] != usize::MAX || partner[b] != usize::MAX {
            return Err(Error::NotPerfectMatching);
        }
        partner[a] = b;
        partner[b] = a;
    }
    if partner.contains(&usize::MAX) {
        return Err(Error::NotPerfectMatching);
    }
    Ok(partner)
}

/// The M-alternating path joining `i` and `j`, if one exists. When the
/// host graph admits several (it cannot for stellated trees or coronas),
/// the lexicographically first by ascending-neighbor search is returned.
pub fn alternating_path_between(
    g: &WeightedGraph,
    m: &[(usize, usize)],
    i: usize,
    j: usize,
) -> Result<Option<AlternatingPath>> {
    let partner = matching_partners(g, m)?;
    if i == j {
        return Ok(None);
    }
    if partner[i] == j {
        return Ok(Some(AlternatingPath {
            vertices: vec![i, j],
            tau: 0,
        }));
    }
    let n = g.vertex_count();
    let mut on_path = vec![false; n];
    on_path[i] = true;
    on_path[partner[i]] = true;
    let mut path = vec![i, partner[i]];

    fn search(
        g: &WeightedGraph,
        partner: &[usize],
        target: usize,
        path: &mut Vec<usize>,
        on_path: &mut Vec<bool>,
    ) -> Option<Vec<usize>> {
        let cur = *path.last().unwrap();
        for x in g.neighbors(cur) {
            if on_path[x] || partner[cur] == x {
                continue; // next edge must leave the matching
            }
            let y = partner[x];
            if on_path[y] {
                continue;
            }
            path.push(x);
            path.push(y);
            on_path[x] = true;
            on_path[y] = true;
            if y == target {
                let found = path.clone();
                on_path[x] = false;
                on_path[y] = false;
                path.pop();
                path.pop();
                return Some(found);
            }
            if let Some(found) = search(g, partner, target, path, on_path) {
                on_path[x] = false;
                on_path[y] = false;
                path.pop();
                path.pop();
                return Some(found);
            }
            on_path[x] = false;
            on_path[y] = false;
            path.pop();
            path.pop();
        }
        None
    }

    match search(g, &partner, j, &mut path, &mut on_path) {
        Some(vertices) => {
            let tau = vertices
                .windows(2)
                .filter(|e| partner[e[0]] != e[1])
                .count();
            Ok(Some(AlternatingPath { vertices, tau }))
        }
        None => Ok(None),
    }
}

fn path_sign(sg: &SignedGraph, vertices: &[usize]) -> i64 {
    let mut sign = 1i64;
    for e in vertices.windows(2) {
        if sg.sign(e[0], e[1]) == Some(-1) {
            sign = -sign;
        }
    }
    sign
}

/// Inverse of a signed stellated tree: `ij` is an inverse edge exactly
/// when an M-alternating path joins `i` and `j`, with sign
/// `(-1)^tau * sigma(P)`.
pub fn stellated_tree_inverse(sg: &SignedGraph) -> Result<SignedGraph> {
    let g = sg.graph();
    let m = stellated_tree_matching(g)?;
    let n = g.vertex_count();
    let mut inv = WeightedGraph::new(n);
    for i in 0..n {
        for j in (i + 1)..n {
            if let Some(p) = alternating_path_between(g, &m, i, j)? {
                let mut sign = path_sign(sg, &p.vertices);
                if p.tau % 2 == 1 {
                    sign = -sign;
                }
                inv.add_edge(i, j, int(sign))?;
            }
        }
    }
    SignedGraph::from_graph(inv)
}

/// Inverse of a signed corona graph under the pendant labeling: pendant
/// edges keep their sign, and `u_i u_j` appears with the negated sign
/// product of the path `u_i v_i v_j u_j` whenever `v_i v_j` is an edge.
pub fn corona_inverse(sg: &SignedGraph) -> Result<SignedGraph> {
    let g = sg.graph();
    let n = corona_half(g)?;
    let mut inv = WeightedGraph::new(2 * n);
    for i in 0..n {
        inv.add_edge(i, n + i, g.weight(i, n + i).unwrap().clone())?;
    }
    for (u, v, _) in g.edges() {
        if u < n && v < n && u != v {
            let sign = -path_sign(sg, &[n + u, u, v, n + v]);
            inv.add_edge(n + u, n + v, int(sign))?;
        }
    }
    SignedGraph::from_graph(inv)
}

/// Self-invertibility: the inverse must again be a signed graph and its
/// underlying graph isomorphic to the original's. Returns the witness
/// bijection.
pub fn is_self_invertible(sg: &SignedGraph) -> Result<Option<Vec<usize>>> {
    let inverse = invert_graph(sg.graph())?.inverse;
    if !inverse.is_signed() {
        return Err(Error::NotSigned);
    }
    is_isomorphic(sg.graph(), &inverse)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::is_valid_isomorphism;

    fn path(n: usize) -> WeightedGraph {
        let edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        WeightedGraph::from_edges(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> WeightedGraph {
        let mut edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        edges.push((0, n - 1));
        WeightedGraph::from_edges(n, &edges).unwrap()
    }

    fn star(k: usize) -> WeightedGraph {
        let edges: Vec<(usize, usize)> = (1..=k).map(|i| (0, i)).collect();
        WeightedGraph::from_edges(k + 1, &edges).unwrap()
    }

    fn complete(n: usize) -> WeightedGraph {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                edges.push((i, j));
            }
        }
        WeightedGraph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn stellation_examples() {
        let (st_k2, map) = stellate(&path(2)).unwrap();
        assert_eq!(st_k2, path(2));
        assert_eq!(map.clique_of, vec![vec![0], vec![1]]);

        let (st_c3, _) = stellate(&cycle(3)).unwrap();
        assert_eq!(st_c3.vertex_count(), 6);
        assert!(is_isomorphic(&st_c3, &cycle(6)).unwrap().is_some());

        let (st_star, map) = stellate(&star(4)).unwrap();
        assert_eq!(st_star, corona(&complete(4)).unwrap());
        assert_eq!(map.clique_of[0], vec![0, 1, 2, 3]);
    }

    #[test]
    fn corona_examples() {
        assert_eq!(corona(&WeightedGraph::new(1)).unwrap(), path(2));
        let net = corona(&cycle(3)).unwrap();
        assert_eq!(net.vertex_count(), 6);
        assert_eq!(net.edge_count(), 6);
        assert!(is_isomorphic(&corona(&path(2)).unwrap(), &path(4))
            .unwrap()
            .is_some());
        assert_eq!(corona_half(&net).unwrap(), 3);
        assert!(corona_half(&cycle(4)).is_err());
    }

    #[test]
    fn alternating_path_examples() {
        let p4 = path(4);
        let m = vec![(0, 1), (2, 3)];
        let whole = alternating_path_between(&p4, &m, 0, 3).unwrap().unwrap();
        assert_eq!(whole.vertices, vec![0, 1, 2, 3]);
        assert_eq!(whole.tau, 1);

        assert_eq!(alternating_path_between(&p4, &m, 0, 2).unwrap(), None);

        let partner = alternating_path_between(&p4, &m, 2, 3).unwrap().unwrap();
        assert_eq!(partner.vertices, vec![2, 3]);
        assert_eq!(partner.tau, 0);

        assert!(matches!(
            alternating_path_between(&p4, &[(0, 1)], 0, 3),
            Err(Error::NotPerfectMatching)
        ));
    }

    #[test]
    fn stellated_tree_recognition() {
        assert!(stellated_tree_matching(&path(4)).is_ok()); // st(P3)
        assert!(stellated_tree_matching(&path(2)).is_ok()); // st(K2)
        let (st_star, _) = stellate(&star(4)).unwrap();
        assert_eq!(stellated_tree_matching(&st_star).unwrap().len(), 4);

        // paw has a unique perfect matching but is not a stellation
        let paw = WeightedGraph::from_edges(4, &[(0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(matches!(
            stellated_tree_matching(&paw),
            Err(Error::NotStellatedTree(_))
        ));
        // st(C3) = C6 has two perfect matchings
        assert!(matches!(
            stellated_tree_matching(&cycle(6)),
            Err(Error::NotStellatedTree(_))
        ));
    }

    #[test]
    fn stellated_inverse_matches_oracle_on_examples() {
        // st(P3) = P4, all positive
        let p4 = SignedGraph::all_positive(&path(4));
        let inv = stellated_tree_inverse(&p4).unwrap();
        assert_eq!(inv.sign(0, 1), Some(1));
        assert_eq!(inv.sign(2, 3), Some(1));
        assert_eq!(inv.sign(0, 3), Some(-1));
        assert_eq!(inv.graph().edge_count(), 3);
        assert_eq!(inv.graph(), &invert_graph(&path(4)).unwrap().inverse);

        let k2 = SignedGraph::all_positive(&path(2));
        assert_eq!(stellated_tree_inverse(&k2).unwrap(), k2);

        // st(K_{1,4}): matching edges +1, a negative K4 on the matched
        // partners of the central clique
        let (st_star, map) = stellate(&star(4)).unwrap();
        let signed = SignedGraph::all_positive(&st_star);
        let inv = stellated_tree_inverse(&signed).unwrap();
        assert_eq!(inv.graph(), &invert_graph(&st_star).unwrap().inverse);
        for &(x, y) in map.matching_edge.values() {
            assert_eq!(inv.sign(x, y), Some(1));
        }
        // pendant side vertices 4..8 form the negative clique
        for u in 4..8 {
            for v in (u + 1)..8 {
                assert_eq!(inv.sign(u, v), Some(-1));
            }
        }
    }

    #[test]
    fn corona_inverse_matches_oracle_on_examples() {
        let k2 = SignedGraph::all_positive(&corona(&WeightedGraph::new(1)).unwrap());
        let inv = corona_inverse(&k2).unwrap();
        assert_eq!(inv, k2);

        let p4 = SignedGraph::all_positive(&corona(&path(2)).unwrap());
        let inv = corona_inverse(&p4).unwrap();
        assert_eq!(inv.graph(), &invert_graph(p4.graph()).unwrap().inverse);
        assert_eq!(inv.sign(0, 2), Some(1));
        assert_eq!(inv.sign(1, 3), Some(1));
        assert_eq!(inv.sign(2, 3), Some(-1));

        let net = SignedGraph::all_positive(&corona(&cycle(3)).unwrap());
        let inv = corona_inverse(&net).unwrap();
        assert_eq!(inv.graph(), &invert_graph(net.graph()).unwrap().inverse);
        for i in 0..3 {
            assert_eq!(inv.sign(i, 3 + i), Some(1));
        }
        for (u, v) in [(3, 4), (4, 5), (3, 5)] {
            assert_eq!(inv.sign(u, v), Some(-1));
        }
    }

    #[test]
    fn self_invertibility_examples() {
        let net = SignedGraph::all_positive(&corona(&cycle(3)).unwrap());
        let phi = is_self_invertible(&net).unwrap().unwrap();
        let inv = invert_graph(net.graph()).unwrap().inverse;
        assert!(is_valid_isomorphism(net.graph(), &inv, &phi));
        // the pendant swap map is itself a witness
        let swap: Vec<usize> = vec![3, 4, 5, 0, 1, 2];
        assert!(is_valid_isomorphism(net.graph(), &inv, &swap));

        let k2 = SignedGraph::all_positive(&path(2));
        assert!(is_self_invertible(&k2).unwrap().is_some());

        let c3 = SignedGraph::all_positive(&cycle(3));
        assert!(matches!(is_self_invertible(&c3), Err(Error::NotSigned)));
    }
}
