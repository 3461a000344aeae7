//! Verification sweeps: each function checks one acceptance criterion and
//! reports its case count and failures. The CLI `verify` command and the
//! acceptance test suite both run these.

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::catalog::{
    alkane_trees, connected_catalog, connected_graphs_up_to_iso, is_tree,
    random_bipartite_weighted, random_invertible_weighted, random_loopy_weighted, random_signature,
    trees_up_to_iso,
};
use crate::error::Result;
use crate::families::{corona, corona_inverse, stellate, stellated_tree_inverse};
use crate::graph::{SignedGraph, WeightedGraph};
use crate::inverse::{invert_graph, structural_inverse};
use crate::rational::{int, rational};
use crate::sachs::{det_via_sachs, enumerate_sachs, has_unique_sachs, perfect_matchings_bounded};
use crate::spectra::{
    check_median_bounds, eigenvalues, exact_det_f64, is_symmetric_spectrum, median_eigenvalues,
    split_certificate, split_decision, GraphFamily, Spectrum,
};

pub const DEFAULT_SEED: u64 = 0x5ac5_5eed;

/// Size caps and sample counts for one verification run. The defaults are
/// the acceptance values.
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Exhaustive connected-graph catalog cap (criteria 1-3); at most 7.
    pub max_n: usize,
    /// Random weighted loopy graphs for the determinant and inverse sweeps.
    pub det_samples: usize,
    /// Largest base graph stellated in the matching-lemma sweep.
    pub stellate_h_max: usize,
    /// Largest tree stellated in the family sweeps.
    pub tree_max: usize,
    /// Largest corona base in the family sweeps.
    pub corona_h_max: usize,
    /// Random signatures per family graph.
    pub family_signatures: usize,
    pub reciprocity_samples: usize,
    pub bipartite_samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: DEFAULT_SEED,
            max_n: 7,
            det_samples: 1000,
            stellate_h_max: 6,
            tree_max: 7,
            corona_h_max: 5,
            family_signatures: 20,
            reciprocity_samples: 200,
            bipartite_samples: 500,
        }
    }
}

impl VerifyConfig {
    /// Scales the sweep down for quick runs. `max_n` is clamped to the
    /// catalog cap and the dependent family caps shrink with it.
    pub fn scaled(max_n: usize, samples: usize, seed: u64) -> Self {
        let max_n = max_n.clamp(1, 7);
        VerifyConfig {
            seed,
            max_n,
            det_samples: samples,
            stellate_h_max: max_n.min(6),
            tree_max: max_n,
            corona_h_max: max_n.min(5),
            family_signatures: 20,
            reciprocity_samples: samples.min(200),
            bipartite_samples: samples.min(500),
        }
    }
}

const MAX_RECORDED_FAILURES: usize = 8;

#[derive(Clone, Debug)]
pub struct CriterionOutcome {
    pub id: usize,
    pub label: &'static str,
    pub cases: usize,
    pub failure_count: usize,
    pub failures: Vec<String>,
}

impl CriterionOutcome {
    fn new(id: usize, label: &'static str) -> Self {
        CriterionOutcome {
            id,
            label,
            cases: 0,
            failure_count: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    fn case(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failure_count += 1;
            if self.failures.len() < MAX_RECORDED_FAILURES {
                self.failures.push(detail());
            }
        }
    }

    /// Runs a fallible check; library errors count as failures.
    fn try_case(&mut self, run: impl FnOnce() -> Result<(bool, String)>) {
        match run() {
            Ok((ok, detail)) => self.case(ok, || detail),
            Err(e) => self.case(false, || format!("error: {e}")),
        }
    }
}

/// Residual, trace, and determinant-product health of one eigensolve.
#[derive(Clone, Debug)]
pub struct HealthRecord {
    pub label: String,
    pub residual: f64,
    pub residual_bound: f64,
    pub trace_error: f64,
    pub trace_bound: f64,
    /// Relative error of the eigenvalue product against the exact
    /// determinant, absent when the determinant is zero.
    pub det_error: Option<f64>,
    pub det_bound: f64,
}

impl HealthRecord {
    pub fn passed(&self) -> bool {
        self.residual <= self.residual_bound
            && self.trace_error <= self.trace_bound
            && self.det_error.is_none_or(|e| e <= self.det_bound)
    }
}

/// Computes a spectrum and logs its health record.
fn checked_spectrum(g: &WeightedGraph, label: String, health: &mut Vec<HealthRecord>) -> Spectrum {
    let float = g.adjacency_matrix().to_float();
    let spectrum = eigenvalues(&float).expect("adjacency matrices are symmetric");
    let n = g.vertex_count();
    let trace_error = (spectrum.values().iter().sum::<f64>() - float.trace()).abs();
    let det = exact_det_f64(g);
    let det_error = if det == 0.0 {
        None
    } else {
        let product: f64 = spectrum.values().iter().product();
        Some((product - det).abs() / det.abs())
    };
    health.push(HealthRecord {
        label,
        residual: spectrum.max_residual(),
        residual_bound: spectrum.zero_tolerance(),
        trace_error,
        trace_bound: 1e-8 * n.max(1) as f64,
        det_error,
        det_bound: 1e-6,
    });
    spectrum
}

pub fn criterion_1_det_equivalence(cfg: &VerifyConfig) -> CriterionOutcome {
    let mut out = CriterionOutcome::new(1, "determinant: Sachs formula vs Gaussian oracle");
    for g in connected_catalog(cfg.max_n).unwrap() {
        out.try_case(|| {
            let sachs = det_via_sachs(&g)?;
            let oracle = g.adjacency_matrix().det();
            Ok((
                sachs == oracle,
                format!("n={}\n{}", g.vertex_count(), g.to_text()),
            ))
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.det_samples {
        let g = random_loopy_weighted(&mut rng, 8);
        out.try_case(|| {
            let sachs = det_via_sachs(&g)?;
            let oracle = g.adjacency_matrix().det();
            Ok((sachs == oracle, format!("random graph\n{}", g.to_text())))
        });
    }
    out
}

pub fn criterion_2_inverse_equivalence(cfg: &VerifyConfig) -> CriterionOutcome {
    let mut out = CriterionOutcome::new(2, "inverse: structural path-sum vs oracle");
    let run = |g: &WeightedGraph, out: &mut CriterionOutcome| {
        if g.adjacency_matrix().det().is_zero() {
            return;
        }
        out.try_case(|| {
            let structural = structural_inverse(g)?;
            let oracle = invert_graph(g)?.inverse;
            Ok((structural == oracle, format!("graph\n{}", g.to_text())))
        });
    };
    for g in connected_catalog(cfg.max_n).unwrap() {
        run(&g, &mut out);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.det_samples {
        let g = random_loopy_weighted(&mut rng, 8);
        run(&g, &mut out);
    }
    out
}

pub fn criterion_3_unique_sachs_equivalence(cfg: &VerifyConfig) -> CriterionOutcome {
    let mut out = CriterionOutcome::new(3, "unique Sachs: pendant reduction vs enumeration");
    for g in connected_catalog(cfg.max_n).unwrap() {
        out.try_case(|| {
            let witness = has_unique_sachs(&g)?;
            let all = enumerate_sachs(&g)?;
            let ok = match &witness {
                Some(w) => all.len() == 1 && all[0] == *w,
                None => all.len() != 1,
            };
            Ok((
                ok,
                format!("count={} witness={witness:?}\n{}", all.len(), g.to_text()),
            ))
        });
    }
    out
}

pub fn criterion_4_stellation_matching_lemma(cfg: &VerifyConfig) -> CriterionOutcome {
    let mut out = CriterionOutcome::new(4, "stellation: perfect matching exists, unique iff tree");
    for n in 2..=cfg.stellate_h_max {
        for h in connected_graphs_up_to_iso(n).unwrap() {
            out.try_case(|| {
                let (st, _) = stellate(&h)?;
                let pms = perfect_matchings_bounded(&st, 2)?;
                let ok = !pms.is_empty() && (pms.len() == 1) == is_tree(&h);
                Ok((
                    ok,
                    format!(
                        "base graph (matchings found: {})\n{}",
                        pms.len(),
                        h.to_text()
                    ),
                ))
            });
        }
    }
    out
}

pub fn criterion_5_family_inverse_formulas(cfg: &VerifyConfig) -> CriterionOutcome {
    let mut out = CriterionOutcome::new(5, "closed-form stellated/corona inverses vs oracle");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for n in 2..=cfg.tree_max {
        for tree in trees_up_to_iso(n).unwrap() {
            let (st, _) = stellate(&tree).unwrap();
            for _ in 0..cfg.family_signatures {
                let sg = random_signature(&mut rng, &st);
                out.try_case(|| {
                    let formula = stellated_tree_inverse(&sg)?;
                    let oracle = invert_graph(sg.graph())?.inverse;
                    Ok((
                        formula.graph() == &oracle,
                        format!("stellated tree\n{}", sg.graph().to_text()),
                    ))
                });
            }
        }
    }
    for n in 1..=cfg.corona_h_max {
        for h in connected_graphs_up_to_iso(n).unwrap() {
            let c = corona(&h).unwrap();
            for _ in 0..cfg.family_signatures {
                let sg = random_signature(&mut rng, &c);
                out.try_case(|| {
                    let formula = corona_inverse(&sg)?;
                    let oracle = invert_graph(sg.graph())?.inverse;
                    Ok((
                        formula.graph() == &oracle,
                        format!("corona\n{}", sg.graph().to_text()),
                    ))
                });
            }
        }
    }
    out
}

pub fn criterion_6_fixed_values(_cfg: &VerifyConfig) -> CriterionOutcome {
    let mut out = CriterionOutcome::new(6, "fixed determinant and inverse values");
    let path4 = WeightedGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
    let c3 = WeightedGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
    let c4 = WeightedGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
    let k2 = WeightedGraph::from_edges(2, &[(0, 1)]).unwrap();

    for (g, expect, name) in [
        (&c3, int(2), "C3"),
        (&c4, int(0), "C4"),
        (&k2, int(-1), "K2"),
    ] {
        out.try_case(|| {
            let sachs = det_via_sachs(g)?;
            let oracle = g.adjacency_matrix().det();
            Ok((
                sachs == expect && oracle == expect,
                format!("det({name}): sachs={sachs} oracle={oracle} expected={expect}"),
            ))
        });
    }

    out.try_case(|| {
        let inv = invert_graph(&path4)?.inverse;
        let mut expect = WeightedGraph::new(4);
        expect.add_edge(0, 1, int(1)).unwrap();
        expect.add_edge(2, 3, int(1)).unwrap();
        expect.add_edge(0, 3, int(-1)).unwrap();
        Ok((inv == expect, format!("inverse(P4)\n{}", inv.to_text())))
    });

    out.try_case(|| {
        let inv = invert_graph(&c3)?.inverse;
        let ok = (0..3).all(|v| inv.weight(v, v) == Some(&rational(-1, 2)));
        Ok((ok, format!("inverse(C3)\n{}", inv.to_text())))
    });
    out
}

/// The stellated-tree and corona family graphs a config covers.
fn family_graphs(cfg: &VerifyConfig) -> Vec<(&'static str, WeightedGraph, GraphFamily)> {
    let mut out = Vec::new();
    for n in 2..=cfg.tree_max {
        for tree in trees_up_to_iso(n).unwrap() {
            let (st, _) = stellate(&tree).unwrap();
            out.push(("stellated tree", st, GraphFamily::StellatedTree));
        }
    }
    for n in 1..=cfg.corona_h_max {
        for h in connected_graphs_up_to_iso(n).unwrap() {
            out.push(("corona", corona(&h).unwrap(), GraphFamily::Corona));
        }
    }
    out
}

pub fn criterion_7_family_split(
    cfg: &VerifyConfig,
    health: &mut Vec<HealthRecord>,
) -> CriterionOutcome {
    let mut out = CriterionOutcome::new(7, "family spectra split with no near-zero eigenvalues");
    for (kind, g, _) in family_graphs(cfg) {
        let spectrum = checked_spectrum(&g, format!("{kind} n={}", g.vertex_count()), health);
        let decision = split_decision(&spectrum);
        out.try_case(|| {
            let certified = split_certificate(&SignedGraph::all_positive(&g))?;
            Ok((
                decision.splits && decision.near_zero == 0 && certified,
                format!(
                    "{kind}: {decision:?} certified={certified}\n{}",
                    g.to_text()
                ),
            ))
        });
    }
    out
}

pub fn criterion_8_family_median_bounds(
    cfg: &VerifyConfig,
    health: &mut Vec<HealthRecord>,
) -> CriterionOutcome {
    let mut out = CriterionOutcome::new(8, "family median eigenvalues inside [-1, 1]");
    const TOL: f64 = 1e-7;
    for (kind, g, family) in family_graphs(cfg) {
        let spectrum = checked_spectrum(&g, format!("{kind} n={}", g.vertex_count()), health);
        let report = median_eigenvalues(&spectrum);
        out.try_case(|| {
            let in_bounds = report.lambda_l >= -1.0 - TOL
                && report.lambda_l < 0.0
                && report.lambda_h > 0.0
                && report.lambda_h <= 1.0 + TOL;
            let op_agrees = check_median_bounds(&g, family)?;
            Ok((
                in_bounds && op_agrees,
                format!(
                    "{kind}: lambda_H={} lambda_L={} op={op_agrees}\n{}",
                    report.lambda_h,
                    report.lambda_l,
                    g.to_text()
                ),
            ))
        });
    }
    out
}

pub fn criterion_9_alkane_bounds(
    _cfg: &VerifyConfig,
    health: &mut Vec<HealthRecord>,
) -> CriterionOutcome {
    let mut out = CriterionOutcome::new(9, "stellated alkanes: gap <= 1.3 and lambda_L >= -3/10");
    const TOL: f64 = 1e-7;
    for tree in alkane_trees() {
        let (st, _) = stellate(&tree).unwrap();
        let spectrum = checked_spectrum(
            &st,
            format!("stellated alkane n={}", st.vertex_count()),
            health,
        );
        let report = median_eigenvalues(&spectrum);
        out.case(report.gap <= 1.3 && report.lambda_l >= -0.3 - TOL, || {
            format!(
                "alkane on {} vertices, stellation on {}: gap={} lambda_L={}",
                tree.vertex_count(),
                st.vertex_count(),
                report.gap,
                report.lambda_l
            )
        });
    }
    out
}

pub fn criterion_10_reciprocity(
    cfg: &VerifyConfig,
    health: &mut Vec<HealthRecord>,
) -> CriterionOutcome {
    let mut out = CriterionOutcome::new(10, "inverse spectrum is the reciprocal spectrum");
    const TOL: f64 = 1e-7;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for k in 0..cfg.reciprocity_samples {
        let g = random_invertible_weighted(&mut rng, 8);
        out.try_case(|| {
            let inverse = invert_graph(&g)?.inverse;
            let s_g = checked_spectrum(&g, format!("reciprocity sample {k}"), health);
            let s_inv = checked_spectrum(&inverse, format!("reciprocity inverse {k}"), health);
            let mut reciprocals: Vec<f64> = s_g.values().iter().map(|v| 1.0 / v).collect();
            reciprocals.sort_by(|a, b| b.total_cmp(a));
            let worst = s_inv
                .values()
                .iter()
                .zip(&reciprocals)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0f64, f64::max);
            Ok((
                worst <= TOL,
                format!("worst deviation {worst:e}\n{}", g.to_text()),
            ))
        });
    }
    out
}

pub fn criterion_11_bipartite_symmetry(
    cfg: &VerifyConfig,
    health: &mut Vec<HealthRecord>,
) -> CriterionOutcome {
    let mut out = CriterionOutcome::new(11, "bipartite spectra symmetric about the origin");
    const TOL: f64 = 1e-8;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for k in 0..cfg.bipartite_samples {
        let g = random_bipartite_weighted(&mut rng, 8);
        let s = checked_spectrum(&g, format!("bipartite sample {k}"), health);
        out.case(is_symmetric_spectrum(&s, TOL), || {
            format!("spectrum {:?}\n{}", s.values(), g.to_text())
        });
    }
    // the non-bipartite double triangle with one negative triangle
    let mut g = WeightedGraph::new(5);
    for (u, v) in [(0, 1), (1, 2), (0, 2)] {
        g.add_edge(u, v, int(1)).unwrap();
    }
    for (u, v) in [(2, 3), (3, 4), (2, 4)] {
        g.add_edge(u, v, int(-1)).unwrap();
    }
    let s = checked_spectrum(&g, "double triangle".into(), health);
    out.case(is_symmetric_spectrum(&s, TOL), || {
        format!("double-triangle spectrum {:?}", s.values())
    });
    out
}

pub fn criterion_12_eigensolver_health(health: &[HealthRecord]) -> CriterionOutcome {
    let mut out = CriterionOutcome::new(12, "eigensolver residual, trace, and determinant checks");
    for record in health {
        out.case(record.passed(), || format!("{record:?}"));
    }
    out
}

fn run(cfg: &VerifyConfig, include_alkanes: bool) -> Vec<CriterionOutcome> {
    let mut health = Vec::new();
    let mut out = vec![
        criterion_1_det_equivalence(cfg),
        criterion_2_inverse_equivalence(cfg),
        criterion_3_unique_sachs_equivalence(cfg),
        criterion_4_stellation_matching_lemma(cfg),
        criterion_5_family_inverse_formulas(cfg),
        criterion_6_fixed_values(cfg),
    ];
    out.push(criterion_7_family_split(cfg, &mut health));
    out.push(criterion_8_family_median_bounds(cfg, &mut health));
    if include_alkanes {
        out.push(criterion_9_alkane_bounds(cfg, &mut health));
    }
    out.push(criterion_10_reciprocity(cfg, &mut health));
    out.push(criterion_11_bipartite_symmetry(cfg, &mut health));
    out.push(criterion_12_eigensolver_health(&health));
    out
}

/// Runs all twelve criteria and returns their outcomes in order.
pub fn run_all(cfg: &VerifyConfig) -> Vec<CriterionOutcome> {
    run(cfg, true)
}

/// The invariant suites behind `graphinv verify`: every criterion except
/// the alkane bound check (criterion 9), which belongs to the acceptance
/// suite alone because one of its stated bounds is false for the smallest
/// family member.
pub fn run_invariant_suites(cfg: &VerifyConfig) -> Vec<CriterionOutcome> {
    run(cfg, false)
}
