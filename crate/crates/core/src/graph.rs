//! Weighted and signed graphs.
//!
//! A weighted graph has nonzero rational edge weights; loops are allowed,
//! multiple edges are not. Vertices are `0..n` and edges are keyed by the
//! unordered pair `(min, max)`, so iteration order is deterministic
//! everywhere. A signed graph is a weighted graph whose weights are all
//! `+1` or `-1`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::rational::{format_rational, parse_rational, Rational};

fn key(u: usize, v: usize) -> (usize, usize) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGraph {
    n: usize,
    edges: BTreeMap<(usize, usize), Rational>,
}

impl WeightedGraph {
    pub fn new(n: usize) -> Self {
        WeightedGraph {
            n,
            edges: BTreeMap::new(),
        }
    }

    /// Builds a unit-weight graph from an edge list.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = WeightedGraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v, Rational::one())?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize, weight: Rational) -> Result<()> {
        for idx in [u, v] {
            if idx >= self.n {
                return Err(Error::IndexOutOfRange {
                    index: idx,
                    n: self.n,
                });
            }
        }
        if weight.is_zero() {
            return Err(Error::ZeroWeight { u, v });
        }
        let k = key(u, v);
        if self.edges.contains_key(&k) {
            return Err(Error::DuplicateEdge { u: k.0, v: k.1 });
        }
        self.edges.insert(k, weight);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<&Rational> {
        self.edges.get(&key(u, v))
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains_key(&key(u, v))
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.edges.contains_key(&(v, v))
    }

    /// Edges as `(u, v, weight)` with `u <= v`, sorted by `(u, v)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.edges.iter().map(|(&(u, v), w)| (u, v, w))
    }

    /// Neighbors of `v` other than `v` itself, ascending.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for &(a, b) in self.edges.keys() {
            if a == v && b != v {
                out.push(b);
            } else if b == v && a != v {
                out.push(a);
            }
        }
        out.sort_unstable();
        out
    }

    /// Number of incident edges; a loop counts once.
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .keys()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn is_simple(&self) -> bool {
        self.edges.keys().all(|&(a, b)| a != b)
    }

    pub fn is_unit_weighted(&self) -> bool {
        self.edges.values().all(|w| w.is_one())
    }

    pub fn is_signed(&self) -> bool {
        self.edges
            .values()
            .all(|w| w.denom().is_one() && w.numer().abs().is_one())
    }

    pub fn adjacency_matrix(&self) -> ExactMatrix {
        let mut m = ExactMatrix::zero(self.n);
        for (&(u, v), w) in &self.edges {
            m.set(u, v, w.clone());
            if u != v {
                m.set(v, u, w.clone());
            }
        }
        m
    }

    /// Deletes vertex `v` with its loop and incident edges; remaining
    /// vertices are renumbered downward to stay contiguous.
    pub fn delete_vertex(&self, v: usize) -> WeightedGraph {
        assert!(v < self.n, "vertex out of range");
        let shift = |x: usize| if x > v { x - 1 } else { x };
        let mut g = WeightedGraph::new(self.n - 1);
        for (&(a, b), w) in &self.edges {
            if a == v || b == v {
                continue;
            }
            g.edges.insert(key(shift(a), shift(b)), w.clone());
        }
        g
    }

    /// Induced subgraph on `keep` (ascending vertex ids), renumbered to
    /// `0..keep.len()`.
    pub fn induced(&self, keep: &[usize]) -> WeightedGraph {
        debug_assert!(keep.windows(2).all(|w| w[0] < w[1]));
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
        }
        let mut g = WeightedGraph::new(keep.len());
        for (&(a, b), w) in &self.edges {
            if pos[a] != usize::MAX && pos[b] != usize::MAX {
                g.edges.insert(key(pos[a], pos[b]), w.clone());
            }
        }
        g
    }

    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut components = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            let mut comp = Vec::new();
            seen[start] = true;
            while let Some(v) = stack.pop() {
                comp.push(v);
                for u in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.connected_components().len() == 1
    }

    /// Two-coloring of the underlying graph, ignoring weights. A loop makes
    /// the graph non-bipartite.
    pub fn bipartition(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let mut color: Vec<i8> = vec![0; self.n];
        for start in 0..self.n {
            if color[start] != 0 {
                continue;
            }
            color[start] = 1;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                if self.has_loop(v) {
                    return None;
                }
                for u in self.neighbors(v) {
                    if color[u] == 0 {
                        color[u] = -color[v];
                        stack.push(u);
                    } else if color[u] == color[v] {
                        return None;
                    }
                }
            }
        }
        let left = (0..self.n).filter(|&v| color[v] == 1).collect();
        let right = (0..self.n).filter(|&v| color[v] == -1).collect();
        Some((left, right))
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Parses the graph text format: a header `n m`, then `m` lines
    /// `u v w`. `u == v` denotes a loop. Lines starting with `#` and blank
    /// lines are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty input".into()))?;
        let mut parts = header.split_whitespace();
        let n: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad header {header:?}")))?;
        let m: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad header {header:?}")))?;
        if parts.next().is_some() {
            return Err(Error::Parse(format!("trailing data in header {header:?}")));
        }
        let mut g = WeightedGraph::new(n);
        for _ in 0..m {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("expected {m} edge lines")))?;
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(Error::Parse(format!("bad edge line {line:?}")));
            }
            let u: usize = fields[0]
                .parse()
                .map_err(|_| Error::Parse(format!("bad vertex in {line:?}")))?;
            let v: usize = fields[1]
                .parse()
                .map_err(|_| Error::Parse(format!("bad vertex in {line:?}")))?;
            let w = parse_rational(fields[2])?;
            g.add_edge(u, v, w)?;
        }
        if let Some(extra) = lines.next() {
            return Err(Error::Parse(format!("unexpected trailing line {extra:?}")));
        }
        Ok(g)
    }

    /// Serializes in the same text format; edges sorted by `(min, max)`.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for (&(u, v), w) in &self.edges {
            out.push_str(&format!("{} {} {}\n", u, v, format_rational(w)));
        }
        out
    }
}

impl fmt::Display for WeightedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// A weighted graph whose weights are all `+1` or `-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedGraph(WeightedGraph);

impl SignedGraph {
    pub fn from_graph(graph: WeightedGraph) -> Result<Self> {
        if !graph.is_signed() {
            return Err(Error::NotSigned);
        }
        Ok(SignedGraph(graph))
    }

    /// All-positive signature on the given underlying graph.
    pub fn all_positive(graph: &WeightedGraph) -> Self {
        let mut g = WeightedGraph::new(graph.vertex_count());
        for (u, v, _) in graph.edges() {
            g.add_edge(u, v, Rational::one()).unwrap();
        }
        SignedGraph(g)
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.0
    }

    pub fn into_graph(self) -> WeightedGraph {
        self.0
    }

    pub fn sign(&self, u: usize, v: usize) -> Option<i8> {
        self.0
            .weight(u, v)
            .map(|w| if w.is_positive() { 1 } else { -1 })
    }

    /// Negates the sign of every edge with exactly one endpoint in `side`.
    /// Loops never cross a cut and are unchanged.
    pub fn switch_cut(&self, side: &[usize]) -> SignedGraph {
        let mut in_side = vec![false; self.0.n];
        for &v in side {
            assert!(v < self.0.n, "vertex out of range");
            in_side[v] = true;
        }
        let mut g = WeightedGraph::new(self.0.n);
        for (&(u, v), w) in &self.0.edges {
            let crossing = in_side[u] != in_side[v];
            let w = if crossing { -w.clone() } else { w.clone() };
            g.edges.insert((u, v), w);
        }
        SignedGraph(g)
    }

    /// A signed graph is balanced when some switching makes every sign
    /// positive, equivalently when every cycle has positive sign product.
    /// Balance is undefined for graphs with loops.
    pub fn is_balanced(&self) -> Result<bool> {
        if !self.0.is_simple() {
            return Err(Error::HasLoops);
        }
        // Propagate tentative switch states over a spanning forest; each
        // non-tree edge then closes a cycle whose sign product is checked.
        let mut state: Vec<Option<bool>> = vec![None; self.0.n];
        for start in 0..self.0.n {
            if state[start].is_some() {
                continue;
            }
            state[start] = Some(false);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for u in self.0.neighbors(v) {
                    let negative = self.sign(v, u) == Some(-1);
                    let expected = state[v].unwrap() ^ negative;
                    match state[u] {
                        None => {
                            state[u] = Some(expected);
                            stack.push(u);
                        }
                        Some(s) => {
                            if s != expected {
                                return Ok(false);
                            }
                        }
                    }
                }
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rational};

    pub(crate) fn path(n: usize) -> WeightedGraph {
        let edges: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        WeightedGraph::from_edges(n, &edges).unwrap()
    }

    pub(crate) fn cycle(n: usize) -> WeightedGraph {
        let mut edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        edges.push((0, n - 1));
        WeightedGraph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn parse_examples_from_format() {
        let k2 = WeightedGraph::parse("2 1\n0 1 1\n").unwrap();
        assert_eq!(k2.vertex_count(), 2);
        assert_eq!(k2.weight(0, 1), Some(&int(1)));

        let loop5 = WeightedGraph::parse("1 1\n0 0 5\n").unwrap();
        assert!(loop5.has_loop(0));
        assert_eq!(loop5.weight(0, 0), Some(&int(5)));

        let c3 = WeightedGraph::parse("3 3\n0 1 1\n1 2 1\n0 2 1\n").unwrap();
        assert_eq!(c3.edge_count(), 3);
        assert!(c3.has_edge(2, 0));

        let commented = WeightedGraph::parse("# a triangle\n3 3\n0 1 1\n# middle\n1 2 1\n0 2 1\n");
        assert!(commented.is_ok());
    }

    #[test]
    fn parse_error_cases() {
        assert!(matches!(
            WeightedGraph::parse("2 2\n0 1 1\n1 0 2\n"),
            Err(Error::DuplicateEdge { u: 0, v: 1 })
        ));
        assert!(matches!(
            WeightedGraph::parse("2 1\n0 1 0\n"),
            Err(Error::ZeroWeight { .. })
        ));
        assert!(matches!(
            WeightedGraph::parse("2 1\n0 2 1\n"),
            Err(Error::IndexOutOfRange { index: 2, n: 2 })
        ));
        assert!(WeightedGraph::parse("2 1\n0 1 1e3\n").is_err());
    }

    #[test]
    fn serialize_round_trip_sorted() {
        let mut g = WeightedGraph::new(4);
        g.add_edge(3, 0, rational(-1, 2)).unwrap();
        g.add_edge(1, 1, int(2)).unwrap();
        g.add_edge(2, 1, rational(1, 3)).unwrap();
        let text = g.to_text();
        assert_eq!(text, "4 3\n0 3 -1/2\n1 1 2\n1 2 1/3\n");
        assert_eq!(WeightedGraph::parse(&text).unwrap(), g);
    }

    #[test]
    fn adjacency_matrix_examples() {
        let k2 = path(2);
        let a = k2.adjacency_matrix();
        assert_eq!(a.get(0, 1), &int(1));
        assert_eq!(a.get(0, 0), &int(0));
        assert!(a.is_symmetric());

        let mut looped = WeightedGraph::new(1);
        looped.add_edge(0, 0, int(5)).unwrap();
        assert_eq!(looped.adjacency_matrix().get(0, 0), &int(5));

        let p4 = path(4);
        let a = p4.adjacency_matrix();
        for i in 0..4usize {
            for j in 0..4 {
                let expect = if i.abs_diff(j) == 1 { 1 } else { 0 };
                assert_eq!(a.get(i, j), &int(expect));
            }
        }
    }

    #[test]
    fn delete_vertex_examples() {
        // star K_{1,4}, center 0
        let star = WeightedGraph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let rest = star.delete_vertex(0);
        assert_eq!(rest.vertex_count(), 4);
        assert_eq!(rest.edge_count(), 0);

        let c3 = cycle(3);
        let p2 = c3.delete_vertex(1);
        assert_eq!(p2.edge_count(), 1);
        assert!(p2.has_edge(0, 1));

        let p4 = path(4);
        let p3 = p4.delete_vertex(3);
        assert_eq!(p3, path(3));
    }

    #[test]
    fn delete_vertex_removes_degree_many_edges() {
        let mut g = cycle(4);
        g.add_edge(0, 0, int(3)).unwrap();
        let before = g.edge_count();
        let deg0 = g.degree(0);
        assert_eq!(deg0, 3); // two cycle edges plus the loop
        assert_eq!(g.delete_vertex(0).edge_count(), before - deg0);
    }

    #[test]
    fn switch_cut_examples() {
        let k2 = SignedGraph::all_positive(&path(2));
        assert_eq!(k2.switch_cut(&[]), k2);
        assert_eq!(k2.switch_cut(&[0, 1]), k2);
        let switched = k2.switch_cut(&[0]);
        assert_eq!(switched.sign(0, 1), Some(-1));
        assert_eq!(switched.switch_cut(&[0]), k2);
    }

    #[test]
    fn balance_examples() {
        let c3 = SignedGraph::all_positive(&cycle(3));
        assert!(c3.is_balanced().unwrap());

        let negative_edge = c3.switch_cut(&[0]); // two edges flip: still balanced
        assert!(negative_edge.is_balanced().unwrap());

        let mut one_neg = WeightedGraph::new(3);
        one_neg.add_edge(0, 1, int(1)).unwrap();
        one_neg.add_edge(1, 2, int(1)).unwrap();
        one_neg.add_edge(0, 2, int(-1)).unwrap();
        let one_neg = SignedGraph::from_graph(one_neg).unwrap();
        assert!(!one_neg.is_balanced().unwrap());

        // signed trees are always balanced
        let mut tree = WeightedGraph::new(4);
        tree.add_edge(0, 1, int(-1)).unwrap();
        tree.add_edge(1, 2, int(-1)).unwrap();
        tree.add_edge(1, 3, int(1)).unwrap();
        assert!(SignedGraph::from_graph(tree)
            .unwrap()
            .is_balanced()
            .unwrap());

        let mut looped = WeightedGraph::new(1);
        looped.add_edge(0, 0, int(1)).unwrap();
        assert!(matches!(
            SignedGraph::from_graph(looped).unwrap().is_balanced(),
            Err(Error::HasLoops)
        ));
    }

    #[test]
    fn bipartition_detects_odd_cycles_and_loops() {
        assert!(path(5).is_bipartite());
        assert!(cycle(4).is_bipartite());
        assert!(!cycle(5).is_bipartite());
        let mut g = path(2);
        g.add_edge(0, 0, int(1)).unwrap();
        assert!(!g.is_bipartite());
    }
}
