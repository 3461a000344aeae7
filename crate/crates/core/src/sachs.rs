//! Sachs subgraphs: enumeration, the determinant formula, the unique-Sachs
//! decision by pendant-edge reduction, and perfect matchings.
//!
//! A Sachs subgraph is a spanning subgraph whose components are single
//! edges, cycles of length at least three, or loops. The determinant of a
//! weighted adjacency matrix equals
//!
//! ```text
//!   sum over Sachs subgraphs S = C u M u L of
//!       2^|C| * w(C u L) * w(M)^2 * (-1)^(|C| + |L| + |E(S)|)
//! ```
//!
//! which this module evaluates directly from the graph structure. The
//! exact Gaussian determinant in `matrix` is the independent route used to
//! cross-validate it.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::rational::Rational;

/// Enumeration is exponential; callers stay at desk scale.
pub const ENUMERATION_CAP: usize = 24;

/// One Sachs subgraph. Cycles are stored in canonical rotation: smallest
/// vertex first, then its smaller cycle-neighbor. All lists are sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SachsSubgraph {
    pub cycles: Vec<Vec<usize>>,
    pub matching: Vec<(usize, usize)>,
    pub loops: Vec<usize>,
}

impl SachsSubgraph {
    pub fn empty() -> Self {
        SachsSubgraph {
            cycles: Vec::new(),
            matching: Vec::new(),
            loops: Vec::new(),
        }
    }

    /// Total number of edges, counting a loop as one edge.
    pub fn edge_count(&self) -> usize {
        let cycle_edges: usize = self.cycles.iter().map(Vec::len).sum();
        cycle_edges + self.matching.len() + self.loops.len()
    }

    pub fn vertices(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .cycles
            .iter()
            .flatten()
            .copied()
            .chain(self.matching.iter().flat_map(|&(u, v)| [u, v]))
            .chain(self.loops.iter().copied())
            .collect();
        out.sort_unstable();
        out
    }

    pub fn is_perfect_matching(&self) -> bool {
        self.cycles.is_empty() && self.loops.is_empty()
    }

    /// Checks the defining invariants against a host graph: parts are
    /// vertex-disjoint, they span `V(g)`, and every piece exists in `g`.
    pub fn is_valid_for(&self, g: &WeightedGraph) -> bool {
        let verts = self.vertices();
        if verts.len() != g.vertex_count() || verts.windows(2).any(|w| w[0] >= w[1]) {
            return false;
        }
        for cycle in &self.cycles {
            if cycle.len() < 3 {
                return false;
            }
            for k in 0..cycle.len() {
                if !g.has_edge(cycle[k], cycle[(k + 1) % cycle.len()]) {
                    return false;
                }
            }
        }
        self.matching
            .iter()
            .all(|&(u, v)| u != v && g.has_edge(u, v))
            && self.loops.iter().all(|&v| g.has_loop(v))
    }
}

struct Masks {
    n: usize,
    adj: Vec<u32>,
    loops: u32,
    full: u32,
}

impl Masks {
    fn build(g: &WeightedGraph) -> Result<Masks> {
        let n = g.vertex_count();
        if n > ENUMERATION_CAP {
            return Err(Error::TooLarge {
                n,
                cap: ENUMERATION_CAP,
            });
        }
        let mut adj = vec![0u32; n];
        let mut loops = 0u32;
        for (u, v, _) in g.edges() {
            if u == v {
                loops |= 1 << u;
            } else {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
        }
        let full = (1u32 << n) - 1;
        Ok(Masks {
            n,
            adj,
            loops,
            full,
        })
    }
}

struct SachsWalk<'a, F> {
    masks: &'a Masks,
    cycles: Vec<Vec<usize>>,
    matching: Vec<(usize, usize)>,
    loops: Vec<usize>,
    visit: &'a mut F,
}

impl<F> SachsWalk<'_, F>
where
    F: FnMut(&[Vec<usize>], &[(usize, usize)], &[usize]) -> bool,
{
    /// Covers the lowest uncovered vertex by a loop, a matching edge, or a
    /// cycle through it; returns false when the visitor asked to stop.
    fn cover(&mut self, covered: u32) -> bool {
        if covered == self.masks.full {
            return (self.visit)(&self.cycles, &self.matching, &self.loops);
        }
        let v = (!covered).trailing_zeros() as usize;
        debug_assert!(v < self.masks.n);
        let vbit = 1u32 << v;

        if self.masks.loops & vbit != 0 {
            self.loops.push(v);
            if !self.cover(covered | vbit) {
                return false;
            }
            self.loops.pop();
        }

        let mut partners = self.masks.adj[v] & !covered;
        while partners != 0 {
            let u = partners.trailing_zeros() as usize;
            partners &= partners - 1;
            debug_assert!(u > v);
            self.matching.push((v, u));
            if !self.cover(covered | vbit | (1 << u)) {
                return false;
            }
            self.matching.pop();
        }

        // Cycles through v: v is the least uncovered vertex, hence the least
        // vertex of any cycle it can join; fixing second < last picks one of
        // the two orientations.
        let mut path = vec![v];
        self.extend_cycle(covered, &mut path, vbit, v)
    }

    fn extend_cycle(
        &mut self,
        covered: u32,
        path: &mut Vec<usize>,
        path_mask: u32,
        start: usize,
    ) -> bool {
        let cur = *path.last().unwrap();
        let mut ext = self.masks.adj[cur] & !covered & !path_mask;
        while ext != 0 {
            let u = ext.trailing_zeros() as usize;
            ext &= ext - 1;
            path.push(u);
            let new_mask = path_mask | (1 << u);
            if path.len() >= 3 && self.masks.adj[u] & (1 << start) != 0 && path[1] < u {
                self.cycles.push(path.clone());
                let ok = self.cover(covered | new_mask);
                self.cycles.pop();
                if !ok {
                    path.pop();
                    return false;
                }
            }
            if !self.extend_cycle(covered, path, new_mask, start) {
                path.pop();
                return false;
            }
            path.pop();
        }
        true
    }
}

/// Visits every Sachs subgraph once; the visitor returns false to stop early.
fn for_each_sachs<F>(g: &WeightedGraph, mut visit: F) -> Result<()>
where
    F: FnMut(&[Vec<usize>], &[(usize, usize)], &[usize]) -> bool,
{
    let masks = Masks::build(g)?;
    let mut walk = SachsWalk {
        masks: &masks,
        cycles: Vec::new(),
        matching: Vec::new(),
        loops: Vec::new(),
        visit: &mut visit,
    };
    walk.cover(0);
    Ok(())
}

/// All Sachs subgraphs of `g`, deterministically sorted.
pub fn enumerate_sachs(g: &WeightedGraph) -> Result<Vec<SachsSubgraph>> {
    let mut out = Vec::new();
    for_each_sachs(g, |cycles, matching, loops| {
        let mut s = SachsSubgraph {
            cycles: cycles.to_vec(),
            matching: matching.to_vec(),
            loops: loops.to_vec(),
        };
        s.cycles.sort();
        s.matching.sort_unstable();
        s.loops.sort_unstable();
        out.push(s);
        true
    })?;
    out.sort();
    Ok(out)
}

/// True when `g` has at least one Sachs subgraph.
pub fn has_sachs_subgraph(g: &WeightedGraph) -> Result<bool> {
    let mut found = false;
    for_each_sachs(g, |_, _, _| {
        found = true;
        false
    })?;
    Ok(found)
}

/// Determinant of the adjacency matrix evaluated by the Sachs formula.
pub fn det_via_sachs(g: &WeightedGraph) -> Result<Rational> {
    let mut acc = Rational::zero();
    for_each_sachs(g, |cycles, matching, loops| {
        let cycle_edges: usize = cycles.iter().map(Vec::len).sum();
        let edge_count = cycle_edges + matching.len() + loops.len();
        let exponent = cycles.len() + loops.len() + edge_count;

        let mut term = Rational::from_integer(BigInt::one() << cycles.len());
        for cycle in cycles {
            for k in 0..cycle.len() {
                term *= g.weight(cycle[k], cycle[(k + 1) % cycle.len()]).unwrap();
            }
        }
        for &v in loops {
            term *= g.weight(v, v).unwrap();
        }
        for &(u, v) in matching {
            let w = g.weight(u, v).unwrap();
            term *= w * w;
        }
        if exponent % 2 == 1 {
            acc -= term;
        } else {
            acc += term;
        }
        true
    })?;
    Ok(acc)
}

/// Harary's unweighted special case, kept as a separate code path for
/// simple all-ones graphs.
pub fn det_unweighted_check(g: &WeightedGraph) -> Result<Rational> {
    if !g.is_simple() || !g.is_unit_weighted() {
        return Err(Error::NotUnweightedSimple);
    }
    let mut acc = BigInt::zero();
    for_each_sachs(g, |cycles, matching, _| {
        let cycle_edges: usize = cycles.iter().map(Vec::len).sum();
        let exponent = cycles.len() + cycle_edges + matching.len();
        let term = BigInt::one() << cycles.len();
        if exponent % 2 == 1 {
            acc -= term;
        } else {
            acc += term;
        }
        true
    })?;
    Ok(Rational::from_integer(acc))
}

/// Record of a pendant-edge reduction. `removed` lists deleted pendant
/// edges in order, degree-one endpoint first; `residual` is the subgraph
/// left behind, with `residual_vertices[i]` giving the original id of its
/// vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub removed: Vec<(usize, usize)>,
    pub residual: WeightedGraph,
    pub residual_vertices: Vec<usize>,
}

struct Reduction {
    removed: Vec<(usize, usize)>,
    alive: Vec<bool>,
    adj: Vec<Vec<usize>>,
}

fn reduce(g: &WeightedGraph) -> Result<Reduction> {
    if !g.is_simple() {
        return Err(Error::HasLoops);
    }
    let n = g.vertex_count();
    let mut adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v)).collect();
    let mut alive = vec![true; n];
    let mut removed = Vec::new();
    loop {
        // Always take the pendant edge whose degree-one endpoint has the
        // smallest index; the reduced outcome is order-independent, the
        // trace is not.
        let pendant = (0..n).find(|&v| alive[v] && adj[v].len() == 1);
        let Some(v) = pendant else { break };
        let u = adj[v][0];
        removed.push((v, u));
        alive[v] = false;
        alive[u] = false;
        let partners = std::mem::take(&mut adj[u]);
        adj[v].clear();
        for w in partners {
            adj[w].retain(|&x| x != u);
        }
    }
    Ok(Reduction {
        removed,
        alive,
        adj,
    })
}

/// Repeatedly deletes pendant edges together with both end-vertices until
/// none remain.
pub fn pendant_reduce(g: &WeightedGraph) -> Result<ReductionTrace> {
    let r = reduce(g)?;
    let residual_vertices: Vec<usize> = (0..g.vertex_count()).filter(|&v| r.alive[v]).collect();
    Ok(ReductionTrace {
        removed: r.removed,
        residual: g.induced(&residual_vertices),
        residual_vertices,
    })
}

/// Decides whether `g` has a unique Sachs subgraph, returning the witness
/// when it does: the graph must reduce to a family of independent odd
/// cycles, which together with the removed pendant edges forms the unique
/// Sachs subgraph. Isolated residual vertices mean no Sachs subgraph at all.
pub fn has_unique_sachs(g: &WeightedGraph) -> Result<Option<SachsSubgraph>> {
    let r = reduce(g)?;
    let n = g.vertex_count();

    let mut cycles = Vec::new();
    let mut seen = vec![false; n];
    for start in 0..n {
        if !r.alive[start] || seen[start] {
            continue;
        }
        if r.adj[start].len() != 2 {
            return Ok(None);
        }
        // Walk the component from its least vertex; it must close into an
        // odd cycle touching nothing else.
        let mut cycle = vec![start];
        seen[start] = true;
        let mut prev = start;
        let mut cur = *r.adj[start].iter().min().unwrap();
        while cur != start {
            if r.adj[cur].len() != 2 {
                return Ok(None);
            }
            seen[cur] = true;
            cycle.push(cur);
            let next = if r.adj[cur][0] == prev {
                r.adj[cur][1]
            } else {
                r.adj[cur][0]
            };
            prev = cur;
            cur = next;
        }
        if cycle.len() % 2 == 0 || cycle.len() < 3 {
            return Ok(None);
        }
        cycles.push(cycle);
    }

    let mut matching: Vec<(usize, usize)> = r
        .removed
        .iter()
        .map(|&(a, b)| (a.min(b), a.max(b)))
        .collect();
    matching.sort_unstable();
    cycles.sort();
    Ok(Some(SachsSubgraph {
        cycles,
        matching,
        loops: Vec::new(),
    }))
}

pub const MATCHING_CAP: usize = 64;

/// Perfect matchings of `g`, stopping after `limit` are found. Handles up
/// to 64 vertices, which covers stellations of small dense graphs.
pub fn perfect_matchings_bounded(
    g: &WeightedGraph,
    limit: usize,
) -> Result<Vec<Vec<(usize, usize)>>> {
    let n = g.vertex_count();
    if n > MATCHING_CAP {
        return Err(Error::TooLarge {
            n,
            cap: MATCHING_CAP,
        });
    }
    let mut adj = vec![0u64; n];
    for (u, v, _) in g.edges() {
        if u != v {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
    }
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut out: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut current: Vec<(usize, usize)> = Vec::new();

    fn go(
        covered: u64,
        full: u64,
        adj: &[u64],
        current: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
        limit: usize,
    ) -> bool {
        if covered == full {
            out.push(current.clone());
            return out.len() < limit;
        }
        let v = (!covered).trailing_zeros() as usize;
        let mut partners = adj[v] & !covered;
        while partners != 0 {
            let u = partners.trailing_zeros() as usize;
            partners &= partners - 1;
            current.push((v, u));
            let more = go(
                covered | (1 << v) | (1 << u),
                full,
                adj,
                current,
                out,
                limit,
            );
            current.pop();
            if !more {
                return false;
            }
        }
        true
    }

    if n.is_multiple_of(2) && limit > 0 {
        go(0, full, &adj, &mut current, &mut out, limit);
    }
    Ok(out)
}

/// All perfect matchings, deterministically ordered.
pub fn perfect_matchings(g: &WeightedGraph) -> Result<Vec<Vec<(usize, usize)>>> {
    let n = g.vertex_count();
    if n > ENUMERATION_CAP {
        return Err(Error::TooLarge {
            n,
            cap: ENUMERATION_CAP,
        });
    }
    perfect_matchings_bounded(g, usize::MAX)
}
