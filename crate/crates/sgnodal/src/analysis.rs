//! Whole-matrix analysis: spectrum, nodal decompositions of every
//! eigenfunction (solver basis, plus minimal-support basis on degenerate
//! clusters), and all applicable theorem checks, in one report that
//! serializes losslessly to JSON and renders to text with the same numbers.

use serde::{Deserialize, Serialize};

use crate::graph::SignedGraph;
use crate::matrix::SymMatrix;
use crate::nodal::{decompose, dual_strong_domains};
use crate::spectral::{
    classify_zeros, eigendecompose, BasisKind, EigenPair, LeafStats, Tolerances,
};
use crate::theorems::{
    check_antibalance_top, check_duality_forest, check_fiedler_acyclic,
    check_inertia_edge_bounds, check_lower_bound_cycles, check_lower_bound_leaves,
    check_nowhere_zero_multiplicity, check_tree_nowhere_zero, check_unique_continuation,
    check_upper_bounds, TheoremReport, Verdict,
};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalysisOptions {
    pub tolerances: Tolerances,
    /// Restrict to the 1-based eigenvalue position, when set.
    pub k_filter: Option<usize>,
    /// Threshold below which matrix entries count as absent edges.
    pub matrix_zero_tol: f64,
}

impl Default for AnalysisOptions {
    fn default() -> AnalysisOptions {
        AnalysisOptions {
            tolerances: Tolerances::default(),
            k_filter: None,
            matrix_zero_tol: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroSummary {
    pub z: usize,
    pub e0: usize,
    pub fiedler_set: Vec<usize>,
    pub fiedler_complement: Vec<usize>,
    pub leaf_stats: LeafStats,
    pub sensitivity: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairReport {
    /// 1-based position in the ascending spectrum.
    pub index: usize,
    pub k: usize,
    pub r: usize,
    pub lambda: f64,
    pub basis: BasisKind,
    pub function: Vec<f64>,
    pub zeros: ZeroSummary,
    pub strong_domains: Vec<Vec<usize>>,
    pub weak_classes: Vec<Vec<usize>>,
    pub weak_domains: Vec<Vec<usize>>,
    pub unassigned_zeros: Vec<usize>,
    pub count_strong: usize,
    pub count_weak: usize,
    pub count_dual_strong: usize,
    pub theorems: Vec<TheoremReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub num_edges: usize,
    pub num_components: usize,
    pub ell: usize,
    pub balanced: bool,
    pub antibalanced: bool,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub matrix_digest: String,
    pub n: usize,
    pub tolerances: Tolerances,
    pub eigenvalues: Vec<f64>,
    pub graph: GraphSummary,
    pub pairs: Vec<PairReport>,
    pub warnings: Vec<String>,
}

/// Runs the full pipeline on one matrix. Vertex indices in the report are
/// 0-based throughout.
pub fn analyze(m: &SymMatrix, opts: &AnalysisOptions) -> Result<AnalysisReport> {
    let tol = &opts.tolerances;
    let es = eigendecompose(m, tol)?;
    let g = SignedGraph::from_matrix(m, opts.matrix_zero_tol);
    let cs = g.cycle_space();
    let graph = GraphSummary {
        num_edges: g.num_edges(),
        num_components: cs.num_components,
        ell: cs.ell,
        balanced: g.is_balanced(),
        antibalanced: g.is_antibalanced(),
        text: g.to_text(),
    };

    let mut pairs: Vec<EigenPair> = Vec::new();
    for cluster in es.clusters() {
        for i in cluster.start - 1..cluster.start - 1 + cluster.size {
            pairs.push(es.pair(i));
        }
        if cluster.size > 1 {
            pairs.extend(es.minimal_support_pairs(*cluster, tol.rref_pivot_tol)?);
        }
    }
    if let Some(k) = opts.k_filter {
        pairs.retain(|p| p.index + 1 == k);
    }

    let mut warnings = Vec::new();
    let mut pair_reports = Vec::new();
    for pair in &pairs {
        let zp = classify_zeros(&g, &pair.f, tol.zero_tol)?;
        if zp.sensitivity_flag {
            warnings.push(format!(
                "eigenpair {} ({:?} basis): zero mask is sensitive to the threshold",
                pair.index + 1,
                pair.basis
            ));
        }
        let nodal = decompose(&g, &pair.f, tol.zero_tol)?;
        let dual = dual_strong_domains(&g, &pair.f, tol.zero_tol)?;

        let mut theorems = vec![
            check_upper_bounds(m, &es, pair, tol),
            check_duality_forest(&g, &pair.f, tol.zero_tol, tol),
            check_tree_nowhere_zero(m, &es, pair, tol),
            check_fiedler_acyclic(m, &es, pair, tol),
            check_lower_bound_cycles(m, &es, pair, tol),
            check_lower_bound_leaves(m, &es, pair, tol),
            check_nowhere_zero_multiplicity(m, &es, pair, tol),
            check_inertia_edge_bounds(m, &es, pair, tol),
            check_unique_continuation(m, &es, pair, tol),
        ];
        if pair.index == es.n() - 1 && pair.basis == BasisKind::Solver {
            theorems.push(check_antibalance_top(m, &es, tol));
        }
        for t in &theorems {
            if t.verdict == Verdict::Fail {
                warnings.push(format!(
                    "eigenpair {}: check '{}' FAILED",
                    pair.index + 1,
                    t.theorem
                ));
            }
        }

        pair_reports.push(PairReport {
            index: pair.index + 1,
            k: pair.k,
            r: pair.r,
            lambda: pair.lambda,
            basis: pair.basis,
            function: pair.f.clone(),
            zeros: ZeroSummary {
                z: zp.z,
                e0: zp.e0,
                fiedler_set: zp.fiedler_set,
                fiedler_complement: zp.fiedler_complement,
                leaf_stats: zp.leaf_stats,
                sensitivity: zp.sensitivity_flag,
            },
            strong_domains: nodal.strong_domains,
            weak_classes: nodal.weak_classes,
            weak_domains: nodal.weak_domains,
            unassigned_zeros: nodal.unassigned_zeros,
            count_strong: nodal.count_strong,
            count_weak: nodal.count_weak,
            count_dual_strong: dual.count,
            theorems,
        });
    }

    Ok(AnalysisReport {
        matrix_digest: m.digest(),
        n: m.n(),
        tolerances: *tol,
        eigenvalues: es.eigenvalues().to_vec(),
        graph,
        pairs: pair_reports,
        warnings,
    })
}

pub fn to_json(report: &AnalysisReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

fn domain_list(domains: &[Vec<usize>]) -> String {
    if domains.is_empty() {
        return "(none)".to_string();
    }
    domains
        .iter()
        .map(|d| {
            let inner: Vec<String> = d.iter().map(|v| v.to_string()).collect();
            format!("{{{}}}", inner.join(","))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn render_text(report: &AnalysisReport) -> String {
    let mut out = String::new();
    let push = |out: &mut String, line: String| {
        out.push_str(&line);
        out.push('\n');
    };
    push(
        &mut out,
        format!("matrix {}  n = {}", report.matrix_digest, report.n),
    );
    push(
        &mut out,
        format!(
            "tolerances: zero {:.1e}, cluster {:.1e}, residual {:.1e}",
            report.tolerances.zero_tol,
            report.tolerances.cluster_tol,
            report.tolerances.residual_tol
        ),
    );
    let eigs: Vec<String> = report
        .eigenvalues
        .iter()
        .map(|x| format!("{x:.6}"))
        .collect();
    push(&mut out, format!("eigenvalues: {}", eigs.join(", ")));
    push(
        &mut out,
        format!(
            "graph: {} edges, {} component(s), ell = {}, balanced = {}, antibalanced = {}",
            report.graph.num_edges,
            report.graph.num_components,
            report.graph.ell,
            report.graph.balanced,
            report.graph.antibalanced
        ),
    );
    for pair in &report.pairs {
        push(&mut out, String::new());
        push(
            &mut out,
            format!(
                "eigenpair {} (lambda = {:.6}, k = {}, r = {}, basis = {})",
                pair.index,
                pair.lambda,
                pair.k,
                pair.r,
                match pair.basis {
                    BasisKind::Solver => "solver",
                    BasisKind::MinimalSupport => "minimal-support",
                }
            ),
        );
        push(
            &mut out,
            format!(
                "  zeros: z = {}, e0 = {}, isolated-or-cyclic = {:?}, plain = {:?}",
                pair.zeros.z, pair.zeros.e0, pair.zeros.fiedler_set, pair.zeros.fiedler_complement
            ),
        );
        push(
            &mut out,
            format!(
                "  strong domains ({}): {}",
                pair.count_strong,
                domain_list(&pair.strong_domains)
            ),
        );
        push(
            &mut out,
            format!(
                "  weak domains ({}): {}",
                pair.count_weak,
                domain_list(&pair.weak_domains)
            ),
        );
        if !pair.unassigned_zeros.is_empty() {
            push(
                &mut out,
                format!("  unassigned zeros: {:?}", pair.unassigned_zeros),
            );
        }
        push(
            &mut out,
            format!("  dual strong count: {}", pair.count_dual_strong),
        );
        let checks: Vec<String> = pair
            .theorems
            .iter()
            .map(|t| {
                let tag = match t.verdict {
                    Verdict::Pass => "pass",
                    Verdict::Fail => "FAIL",
                    Verdict::NotApplicable => "n/a",
                };
                format!("{} {}", t.theorem, tag)
            })
            .collect();
        push(&mut out, format!("  checks: {}", checks.join("; ")));
    }
    if !report.warnings.is_empty() {
        push(&mut out, String::new());
        for w in &report.warnings {
            push(&mut out, format!("warning: {w}"));
        }
    }
    out
}
