//! Graph inversion: the exact matrix oracle and the structural path-sum
//! formula, each implemented independently so that one validates the other.
//!
//! For an invertible weighted graph the off-diagonal inverse weights are
//!
//! ```text
//!   w'(ij) = (1/det A) * sum over paths P from i to j of
//!               w(P) * sum over Sachs subgraphs S of G - V(P) of
//!                   w(C u L) * w(M)^2 * 2^|C| * (-1)^(|C|+|L|+|E(S)|+|E(P)|)
//! ```
//!
//! and the diagonal entries are det(A with row/column i removed) / det(A).
//! The inner sum over S is itself the Sachs determinant of `G - V(P)`, with
//! the empty graph contributing exactly 1.

use std::collections::HashMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{SignedGraph, WeightedGraph};
use crate::matrix::ExactMatrix;
use crate::rational::{is_integer, Rational};
use crate::sachs::{
    det_via_sachs, enumerate_sachs, has_unique_sachs, SachsSubgraph, ENUMERATION_CAP,
};

/// Exact inverse of a rational matrix; errors on singular input.
pub fn invert_matrix_exact(m: &ExactMatrix) -> Result<ExactMatrix> {
    m.inverse()
}

/// Reads a symmetric rational matrix back as a weighted graph: nonzero
/// off-diagonal entries become edges, nonzero diagonal entries loops.
pub fn graph_from_matrix(m: &ExactMatrix) -> WeightedGraph {
    debug_assert!(m.is_symmetric());
    let n = m.dim();
    let mut g = WeightedGraph::new(n);
    for i in 0..n {
        for j in i..n {
            let w = m.get(i, j);
            if !w.is_zero() {
                g.add_edge(i, j, w.clone()).unwrap();
            }
        }
    }
    g
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InverseMethod {
    Structural,
    Oracle,
    Both,
}

impl InverseMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            InverseMethod::Structural => "structural",
            InverseMethod::Oracle => "oracle",
            InverseMethod::Both => "both",
        }
    }
}

/// An inverse graph plus how it was obtained. When `method` is `Both` the
/// two routes agreed; a disagreement never produces a report.
#[derive(Clone, Debug)]
pub struct InverseReport {
    pub inverse: WeightedGraph,
    pub method: InverseMethod,
    pub agreement: Option<bool>,
}

/// Inverts the adjacency matrix exactly and reinterprets it as a graph.
pub fn invert_graph(g: &WeightedGraph) -> Result<InverseReport> {
    let inv = g.adjacency_matrix().inverse()?;
    Ok(InverseReport {
        inverse: graph_from_matrix(&inv),
        method: InverseMethod::Oracle,
        agreement: None,
    })
}

/// A path whose removal leaves a graph that still has a Sachs subgraph.
/// `complement_sachs` lists those subgraphs in the original vertex ids;
/// for a spanning path it holds the single empty subgraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissiblePath {
    pub vertices: Vec<usize>,
    pub complement_sachs: Vec<SachsSubgraph>,
}

fn remap_subgraph(s: &SachsSubgraph, ids: &[usize]) -> SachsSubgraph {
    let mut out = SachsSubgraph {
        cycles: s
            .cycles
            .iter()
            .map(|c| c.iter().map(|&v| ids[v]).collect())
            .collect(),
        matching: s
            .matching
            .iter()
            .map(|&(u, v)| (ids[u].min(ids[v]), ids[u].max(ids[v])))
            .collect(),
        loops: s.loops.iter().map(|&v| ids[v]).collect(),
    };
    out.matching.sort_unstable();
    out.loops.sort_unstable();
    out.cycles.sort();
    out
}

/// All simple `i`-`j` paths whose complement has at least one Sachs
/// subgraph. `i` and `j` must be distinct.
pub fn enumerate_admissible_paths(
    g: &WeightedGraph,
    i: usize,
    j: usize,
) -> Result<Vec<AdmissiblePath>> {
    let n = g.vertex_count();
    if n > ENUMERATION_CAP {
        return Err(Error::TooLarge {
            n,
            cap: ENUMERATION_CAP,
        });
    }
    assert!(i != j, "admissible paths join two distinct vertices");
    assert!(i < n && j < n, "vertex out of range");

    let mut out = Vec::new();
    let mut path = vec![i];
    let mut on_path = vec![false; n];
    on_path[i] = true;
    path_dfs(g, j, &mut path, &mut on_path, &mut |p: &[usize]| {
        let complement: Vec<usize> = (0..n).filter(|v| !p.contains(v)).collect();
        let sub = g.induced(&complement);
        let subs = enumerate_sachs(&sub)?;
        if !subs.is_empty() {
            out.push(AdmissiblePath {
                vertices: p.to_vec(),
                complement_sachs: subs
                    .iter()
                    .map(|s| remap_subgraph(s, &complement))
                    .collect(),
            });
        }
        Ok(())
    })?;
    Ok(out)
}

fn path_dfs(
    g: &WeightedGraph,
    target: usize,
    path: &mut Vec<usize>,
    on_path: &mut Vec<bool>,
    emit: &mut impl FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    let cur = *path.last().unwrap();
    for u in g.neighbors(cur) {
        if on_path[u] {
            continue;
        }
        path.push(u);
        on_path[u] = true;
        if u == target {
            emit(path)?;
        } else {
            path_dfs(g, target, path, on_path, emit)?;
        }
        on_path[u] = false;
        path.pop();
    }
    Ok(())
}

/// Sachs determinant of the induced subgraph on the complement of a vertex
/// mask, memoized; the empty vertex set yields 1.
struct ComplementDets<'a> {
    g: &'a WeightedGraph,
    memo: HashMap<u32, Rational>,
}

impl ComplementDets<'_> {
    fn get(&mut self, removed: u32) -> Result<Rational> {
        if let Some(v) = self.memo.get(&removed) {
            return Ok(v.clone());
        }
        let keep: Vec<usize> = (0..self.g.vertex_count())
            .filter(|&v| removed & (1 << v) == 0)
            .collect();
        let value = det_via_sachs(&self.g.induced(&keep))?;
        self.memo.insert(removed, value.clone());
        Ok(value)
    }
}

/// Inverse graph computed purely from Sachs subgraphs and path sums,
/// without touching the matrix oracle.
pub fn structural_inverse(g: &WeightedGraph) -> Result<WeightedGraph> {
    let n = g.vertex_count();
    if n > ENUMERATION_CAP {
        return Err(Error::TooLarge {
            n,
            cap: ENUMERATION_CAP,
        });
    }
    let det = det_via_sachs(g)?;
    if det.is_zero() {
        return Err(Error::Singular);
    }
    let mut dets = ComplementDets {
        g,
        memo: HashMap::new(),
    };
    let mut inverse = WeightedGraph::new(n);

    for i in 0..n {
        let diagonal = dets.get(1 << i)? / &det;
        if !diagonal.is_zero() {
            inverse.add_edge(i, i, diagonal).unwrap();
        }
    }

    for i in 0..n {
        for j in (i + 1)..n {
            let mut acc = Rational::zero();
            let mut path = vec![i];
            let mut on_path = vec![false; n];
            on_path[i] = true;
            let mut emit = |p: &[usize]| -> Result<()> {
                let mut removed = 0u32;
                let mut weight = Rational::from_integer(1.into());
                for k in 0..p.len() {
                    removed |= 1 << p[k];
                    if k + 1 < p.len() {
                        weight *= g.weight(p[k], p[k + 1]).unwrap();
                    }
                }
                let complement_det = dets.get(removed)?;
                if complement_det.is_zero() {
                    return Ok(());
                }
                // |E(P)| = p.len() - 1 carries the path's own sign factor.
                if (p.len() - 1) % 2 == 1 {
                    acc -= weight * complement_det;
                } else {
                    acc += weight * complement_det;
                }
                Ok(())
            };
            path_dfs(g, j, &mut path, &mut on_path, &mut emit)?;
            let entry = acc / &det;
            if !entry.is_zero() {
                inverse.add_edge(i, j, entry).unwrap();
            }
        }
    }
    Ok(inverse)
}

/// Runs both inversion routes and insists they agree exactly.
pub fn invert_both(g: &WeightedGraph) -> Result<InverseReport> {
    let oracle = invert_graph(g)?;
    let structural = structural_inverse(g)?;
    if structural != oracle.inverse {
        return Err(Error::Disagreement(format!(
            "structural inverse differs from matrix oracle\nstructural:\n{}oracle:\n{}",
            structural.to_text(),
            oracle.inverse.to_text()
        )));
    }
    Ok(InverseReport {
        inverse: structural,
        method: InverseMethod::Both,
        agreement: Some(true),
    })
}

/// A graph is simply invertible when its inverse has no loops,
/// equivalently when deleting any one vertex kills invertibility.
pub fn is_simply_invertible(g: &WeightedGraph) -> Result<bool> {
    let n = g.vertex_count();
    if n > ENUMERATION_CAP {
        return Err(Error::TooLarge {
            n,
            cap: ENUMERATION_CAP,
        });
    }
    if det_via_sachs(g)?.is_zero() {
        return Err(Error::Singular);
    }
    for v in 0..n {
        if !det_via_sachs(&g.delete_vertex(v))?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For a simple signed graph with a unique Sachs subgraph: the inverse is
/// integral exactly when the witness is a perfect matching. The witness
/// decision is cross-checked against the oracle inverse's entries.
pub fn has_integral_inverse(g: &SignedGraph) -> Result<bool> {
    let witness = has_unique_sachs(g.graph())?.ok_or(Error::NotUniqueSachs)?;
    let by_witness = witness.is_perfect_matching();

    let oracle = invert_graph(g.graph())?;
    let by_oracle = oracle.inverse.edges().all(|(_, _, w)| is_integer(w));
    if by_witness != by_oracle {
        return Err(Error::Disagreement(format!(
            "integral-inverse decision: witness shape says {by_witness}, oracle entries say {by_oracle}"
        )));
    }
    Ok(by_witness)
}
