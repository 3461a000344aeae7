//! Floating-point spectra and the spectral predicates: splitting about the
//! origin, symmetry, median eigenvalues, reciprocal relations, and the
//! closed-interval bounds for stellated-tree and corona families.
//!
//! The eigensolver is cyclic-sweep Jacobi rotation with a fixed sweep
//! order, so results are deterministic. Zero classification uses
//! `tau0 = 1e-9 * max(1, ||A||_F)`; eigenvalues inside `[-tau0, tau0]` are
//! never counted as positive or negative.

use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::families::{corona_half, stellated_tree_matching};
use crate::graph::{SignedGraph, WeightedGraph};
use crate::inverse::invert_graph;
use crate::matrix::FloatMatrix;
use crate::rational::Rational;
use crate::sachs::{det_via_sachs, has_unique_sachs};

const MAX_SWEEPS: usize = 100;

/// Eigenvalues in descending order with their eigenvectors and the
/// residual bound they satisfied.
#[derive(Clone, Debug)]
pub struct Spectrum {
    values: Vec<f64>,
    vectors: Vec<Vec<f64>>,
    zero_tolerance: f64,
    max_residual: f64,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Descending eigenvalues.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Eigenvector paired with `values()[k]`.
    pub fn vector(&self, k: usize) -> &[f64] {
        &self.vectors[k]
    }

    pub fn zero_tolerance(&self) -> f64 {
        self.zero_tolerance
    }

    /// Largest `||A v - lambda v||_2` over all eigenpairs.
    pub fn max_residual(&self) -> f64 {
        self.max_residual
    }
}

/// Full symmetric eigendecomposition by cyclic Jacobi sweeps.
pub fn eigenvalues(m: &FloatMatrix) -> Result<Spectrum> {
    let n = m.dim();
    let frob = m.frobenius_norm();
    let sym_tol = 1e-12 * frob.max(1.0);
    for i in 0..n {
        for j in (i + 1)..n {
            if (m.get(i, j) - m.get(j, i)).abs() > sym_tol {
                return Err(Error::NotSymmetric);
            }
        }
    }
    let zero_tolerance = 1e-9 * frob.max(1.0);

    let mut a = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        for j in 0..n {
            a[i][j] = 0.5 * (m.get(i, j) + m.get(j, i));
        }
    }
    let original = a.clone();
    let mut v = vec![vec![0.0f64; n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }

    let threshold = 1e-12 * frob;
    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                off += 2.0 * a[i][j] * a[i][j];
            }
        }
        if off.sqrt() <= threshold {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = if theta.abs() > 1e100 {
                    0.5 / theta
                } else {
                    let sign = if theta < 0.0 { -1.0 } else { 1.0 };
                    sign / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let app = a[p][p];
                let aqq = a[q][q];
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[p][k] = a[k][p];
                    a[k][q] = s * akp + c * akq;
                    a[q][k] = a[k][q];
                }
                a[p][p] = app - t * apq;
                a[q][q] = aqq + t * apq;
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for row in v.iter_mut() {
                    let vkp = row[p];
                    let vkq = row[q];
                    row[p] = c * vkp - s * vkq;
                    row[q] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[y][y].total_cmp(&a[x][x]).then(x.cmp(&y)));
    let values: Vec<f64> = order.iter().map(|&k| a[k][k]).collect();
    let vectors: Vec<Vec<f64>> = order
        .iter()
        .map(|&k| (0..n).map(|row| v[row][k]).collect())
        .collect();

    let mut max_residual = 0.0f64;
    for (lambda, vec) in values.iter().zip(&vectors) {
        let mut norm2 = 0.0;
        for i in 0..n {
            let mut av = 0.0;
            for j in 0..n {
                av += original[i][j] * vec[j];
            }
            let r = av - lambda * vec[i];
            norm2 += r * r;
        }
        max_residual = max_residual.max(norm2.sqrt());
    }

    debug_assert!(
        max_residual <= zero_tolerance,
        "Jacobi residual {max_residual:e} above tolerance {zero_tolerance:e}"
    );
    Ok(Spectrum {
        values,
        vectors,
        zero_tolerance,
        max_residual,
    })
}

/// Sign census of a spectrum. Eigenvalues within the zero tolerance are
/// counted separately and veto a split.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitDecision {
    pub splits: bool,
    pub positive: usize,
    pub negative: usize,
    pub near_zero: usize,
}

pub fn split_decision(s: &Spectrum) -> SplitDecision {
    let tau = s.zero_tolerance;
    let positive = s.values.iter().filter(|&&x| x > tau).count();
    let negative = s.values.iter().filter(|&&x| x < -tau).count();
    let near_zero = s.len() - positive - negative;
    SplitDecision {
        splits: near_zero == 0 && positive == negative && !s.is_empty(),
        positive,
        negative,
        near_zero,
    }
}

/// True when exactly half the eigenvalues are positive and half negative.
pub fn spectrum_splits(s: &Spectrum) -> bool {
    split_decision(s).splits
}

/// True when the spectrum equals its negation within `tol`, matching the
/// k-th largest against the k-th smallest.
pub fn is_symmetric_spectrum(s: &Spectrum, tol: f64) -> bool {
    let n = s.len();
    (0..n).all(|k| (s.values[k] + s.values[n - 1 - k]).abs() <= tol)
}

/// Median eigenvalues at the 1-based positions `floor((n+1)/2)` and
/// `ceil((n+1)/2)` of the descending spectrum.
#[derive(Clone, Debug)]
pub struct MedianReport {
    pub h_index: usize,
    pub l_index: usize,
    pub lambda_h: f64,
    pub lambda_l: f64,
    pub gap: f64,
    pub splits: bool,
    pub symmetric: bool,
}

pub fn median_eigenvalues(s: &Spectrum) -> MedianReport {
    let n = s.len();
    assert!(n >= 1, "median eigenvalues need a nonempty spectrum");
    let h = n.div_ceil(2);
    let l = (n + 2) / 2;
    let lambda_h = s.values[h - 1];
    let lambda_l = s.values[l - 1];
    MedianReport {
        h_index: h,
        l_index: l,
        lambda_h,
        lambda_l,
        gap: lambda_h - lambda_l,
        splits: spectrum_splits(s),
        symmetric: is_symmetric_spectrum(s, s.zero_tolerance),
    }
}

/// Median eigenvalues through the inverse: when the spectrum splits,
/// `lambda_H = 1/lambda_1(G^{-1})` and `lambda_L = 1/lambda_n(G^{-1})`.
pub fn median_via_inverse(g: &WeightedGraph) -> Result<MedianReport> {
    let inverse = invert_graph(g)?.inverse;
    let spectrum = eigenvalues(&g.adjacency_matrix().to_float())?;
    if !spectrum_splits(&spectrum) {
        return Err(Error::NoSplit);
    }
    let inv_spectrum = eigenvalues(&inverse.adjacency_matrix().to_float())?;
    let n = spectrum.len();
    let lambda_h = 1.0 / inv_spectrum.values[0];
    let lambda_l = 1.0 / inv_spectrum.values[n - 1];
    Ok(MedianReport {
        h_index: n.div_ceil(2),
        l_index: (n + 2) / 2,
        lambda_h,
        lambda_l,
        gap: lambda_h - lambda_l,
        splits: true,
        symmetric: is_symmetric_spectrum(&spectrum, spectrum.zero_tolerance),
    })
}

/// Combinatorial certificate that the spectrum splits: a unique Sachs
/// subgraph that is a perfect matching. Returns false when no certificate
/// applies; that never asserts the spectrum fails to split.
pub fn split_certificate(g: &SignedGraph) -> Result<bool> {
    Ok(match has_unique_sachs(g.graph())? {
        Some(witness) => witness.is_perfect_matching(),
        None => false,
    })
}

/// One sampled weight function that made the determinant vanish.
#[derive(Clone, Debug)]
pub struct SingularSample {
    pub index: usize,
    pub graph: WeightedGraph,
}

/// Outcome of a weight sweep: the smallest |det| seen and the first
/// singular sample, if any. A singular sample refutes the premise that
/// every weighting in the matching interval family is invertible.
#[derive(Clone, Debug)]
pub struct WeightSweepReport {
    pub samples: usize,
    pub min_abs_det: Rational,
    pub singular: Option<SingularSample>,
}

/// Samples weight functions `w: E -> [-1, 1]` with `w = +-1` on the
/// matching and reports exact determinants. Sample 0 is the signature of
/// `g` itself; the rest are seeded random draws (a weight drawn as 0 means
/// the edge is absent from that sample).
pub fn sampled_weight_sweep(
    g: &SignedGraph,
    m: &[(usize, usize)],
    samples: usize,
    seed: u64,
) -> Result<WeightSweepReport> {
    let graph = g.graph();
    let n = graph.vertex_count();
    {
        // validate the matching
        let mut covered = vec![false; n];
        for &(a, b) in m {
            if a == b || !graph.has_edge(a, b) || covered[a] || covered[b] {
                return Err(Error::NotPerfectMatching);
            }
            covered[a] = true;
            covered[b] = true;
        }
        if covered.iter().any(|&c| !c) {
            return Err(Error::NotPerfectMatching);
        }
    }
    let in_matching =
        |u: usize, v: usize| m.iter().any(|&(a, b)| (a, b) == (u, v) || (b, a) == (u, v));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min_abs_det: Option<Rational> = None;
    let mut singular = None;
    let mut evaluated = 0;

    for index in 0..samples {
        let sample = if index == 0 {
            graph.clone()
        } else {
            let mut s = WeightedGraph::new(n);
            for (u, v, _) in graph.edges() {
                if in_matching(u, v) {
                    let w = if rng.random_bool(0.5) { 1 } else { -1 };
                    s.add_edge(u, v, Rational::from_integer(w.into())).unwrap();
                } else {
                    let num: i64 = rng.random_range(-64..=64);
                    if num != 0 {
                        s.add_edge(u, v, Rational::new(num.into(), 64.into()))
                            .unwrap();
                    }
                }
            }
            s
        };
        let det = det_via_sachs(&sample)?;
        evaluated += 1;
        let abs = det.abs();
        if det.is_zero() && singular.is_none() {
            singular = Some(SingularSample {
                index,
                graph: sample,
            });
        }
        min_abs_det = Some(match min_abs_det {
            Some(cur) if cur <= abs => cur,
            _ => abs,
        });
    }

    Ok(WeightSweepReport {
        samples: evaluated,
        min_abs_det: min_abs_det.unwrap_or_else(Rational::zero),
        singular,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFamily {
    StellatedTree,
    Corona,
}

/// Checks the family median bounds `-1 <= lambda_L < 0 < lambda_H <= 1`
/// (closed ends within the spectrum's zero tolerance) after verifying the
/// graph really is an all-positive member of the declared family.
pub fn check_median_bounds(g: &WeightedGraph, family: GraphFamily) -> Result<bool> {
    if !g.is_unit_weighted() {
        return Err(Error::WrongFamily("weights must all be +1".into()));
    }
    match family {
        GraphFamily::StellatedTree => {
            stellated_tree_matching(g).map_err(|e| Error::WrongFamily(e.to_string()))?;
        }
        GraphFamily::Corona => {
            corona_half(g).map_err(|e| Error::WrongFamily(e.to_string()))?;
        }
    }
    let spectrum = eigenvalues(&g.adjacency_matrix().to_float())?;
    let tau = spectrum.zero_tolerance();
    let report = median_eigenvalues(&spectrum);
    Ok(report.lambda_l >= -1.0 - tau
        && report.lambda_l < 0.0
        && report.lambda_h > 0.0
        && report.lambda_h <= 1.0 + tau)
}

/// Exact adjacency determinant converted to f64, for solver health checks.
pub fn exact_det_f64(g: &WeightedGraph) -> f64 {
    let det = if g.vertex_count() <= crate::sachs::ENUMERATION_CAP {
        det_via_sachs(g).unwrap()
    } else if let Ok(Some(witness)) = has_unique_sachs(g) {
        // unique Sachs subgraph: det = sigma(C) 2^|C| (-1)^(|C|+|E(S)|),
        // which for a perfect matching witness is just (-1)^|M|
        debug_assert!(witness.is_perfect_matching() && g.is_signed());
        if witness.matching.len() % 2 == 1 {
            -Rational::from_integer(1.into())
        } else {
            Rational::from_integer(1.into())
        }
    } else {
        g.adjacency_matrix().det()
    };
    det.to_f64().expect("determinant out of f64 range")
}
