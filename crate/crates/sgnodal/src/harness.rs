//! Seeded instance generation and property-suite execution.
//!
//! Every trial's randomness is a pure function of `(seed, trial)`, so suites
//! can be rerun, reordered, or parallelized without changing what any trial
//! sees, and a failure is reproducible from its trial number alone.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::graph::{Sign, SignedGraph, SwitchingFunction};
use crate::matrix::SymMatrix;
use crate::nodal::{strong_domains, walk_oracle, weak_domains, WalkKind, WALK_ORACLE_MAX};
use crate::rng::SplitMix64;
use crate::spectral::{eigendecompose, zero_mask, EigenPair, EigenSystem, Tolerances};
use crate::theorems::{
    check_antibalance_top, check_duality_forest, check_fiedler_acyclic,
    check_inertia_edge_bounds, check_lower_bound_cycles, check_lower_bound_leaves,
    check_nowhere_zero_multiplicity, check_tree_nowhere_zero, check_unique_continuation,
    check_upper_bounds, construct_nowhere_zero_first, construct_zero_at_vertex, Counterexample,
    TheoremReport, Verdict,
};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    GnpRandomSign,
    RandomTree,
    RandomForest,
    BalancedGnp,
    AntibalancedGnp,
    GeneralizedLaplacian,
    BipartiteLaplacian,
    StarWithLeaves,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::GnpRandomSign,
        Family::RandomTree,
        Family::RandomForest,
        Family::BalancedGnp,
        Family::AntibalancedGnp,
        Family::GeneralizedLaplacian,
        Family::BipartiteLaplacian,
        Family::StarWithLeaves,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Family::GnpRandomSign => "gnp-random-sign",
            Family::RandomTree => "random-tree",
            Family::RandomForest => "random-forest",
            Family::BalancedGnp => "balanced-gnp",
            Family::AntibalancedGnp => "antibalanced-gnp",
            Family::GeneralizedLaplacian => "generalized-laplacian",
            Family::BipartiteLaplacian => "bipartite-laplacian",
            Family::StarWithLeaves => "star-with-leaves",
        }
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        Family::ALL
            .iter()
            .find(|f| f.name() == s)
            .copied()
            .ok_or_else(|| {
                Error::InvalidSpec(format!(
                    "unknown family '{s}'; available: {}",
                    Family::ALL.map(|f| f.name()).join(", ")
                ))
            })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub family: Family,
    pub n: usize,
    pub p: f64,
    pub weight_range: (f64, f64),
    pub diagonal_range: (f64, f64),
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(family: Family, n: usize, p: f64, seed: u64) -> GeneratorSpec {
        GeneratorSpec {
            family,
            n,
            p,
            weight_range: (0.5, 1.5),
            diagonal_range: (-1.0, 1.0),
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidSpec("n must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::InvalidSpec(format!(
                "edge probability {} outside [0, 1]",
                self.p
            )));
        }
        let (lo, hi) = self.weight_range;
        if !(lo > 0.0 && lo <= hi) {
            return Err(Error::InvalidSpec(format!(
                "weight range ({lo}, {hi}) must satisfy 0 < lo <= hi"
            )));
        }
        let (dlo, dhi) = self.diagonal_range;
        if dlo > dhi {
            return Err(Error::InvalidSpec(format!(
                "diagonal range ({dlo}, {dhi}) is empty"
            )));
        }
        Ok(())
    }
}

fn gnp_edges(rng: &mut SplitMix64, n: usize, p: f64) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.chance(p) {
                edges.push((u, v));
            }
        }
    }
    edges
}

fn random_switching(rng: &mut SplitMix64, n: usize) -> SwitchingFunction {
    SwitchingFunction((0..n).map(|_| rng.sign()).collect())
}

/// Random tree by uniform attachment, plus extra edges with probability `p`.
fn connected_graph(rng: &mut SplitMix64, n: usize, p: f64) -> SignedGraph {
    let mut edges: Vec<(usize, usize, Sign)> = Vec::new();
    for v in 1..n {
        edges.push((rng.below(v), v, rng.sign()));
    }
    let tree: std::collections::HashSet<(usize, usize)> = edges
        .iter()
        .map(|&(u, v, _)| (u.min(v), u.max(v)))
        .collect();
    for u in 0..n {
        for v in (u + 1)..n {
            if !tree.contains(&(u, v)) && rng.chance(p) {
                edges.push((u, v, rng.sign()));
            }
        }
    }
    SignedGraph::new(n, edges).expect("generated edges are valid")
}

/// Weights each edge of the graph with a magnitude from the weight range
/// (sign fixed by compatibility) and draws the diagonal from its range.
fn compatible_matrix(g: &SignedGraph, spec: &GeneratorSpec, rng: &mut SplitMix64) -> SymMatrix {
    let mut m = SymMatrix::zeros(g.n());
    for e in g.edges() {
        let w = rng.uniform(spec.weight_range.0, spec.weight_range.1);
        m.set(e.u, e.v, -e.sign.value() * w);
    }
    for i in 0..g.n() {
        m.set(i, i, rng.uniform(spec.diagonal_range.0, spec.diagonal_range.1));
    }
    m
}

/// Deterministic instance for `(spec, trial)`: a signed graph and a matrix
/// compatible with it. Balanced/antibalanced families start from a uniform
/// signature and hide it behind a random switching, which preserves the
/// property exactly. The star family keeps equal edge weights so its
/// interior eigenvalue retains multiplicity `n - 2`.
pub fn generate(spec: &GeneratorSpec, trial: u64) -> Result<(SignedGraph, SymMatrix)> {
    spec.validate()?;
    let mut rng = SplitMix64::for_trial(spec.seed, trial);
    let n = spec.n;
    let (graph, matrix) = match spec.family {
        Family::GnpRandomSign => {
            let edges = gnp_edges(&mut rng, n, spec.p)
                .into_iter()
                .map(|(u, v)| (u, v, rng.sign()))
                .collect();
            let g = SignedGraph::new(n, edges)?;
            let m = compatible_matrix(&g, spec, &mut rng);
            (g, m)
        }
        Family::RandomTree => {
            let edges = (1..n).map(|v| (rng.below(v), v, rng.sign())).collect();
            let g = SignedGraph::new(n, edges)?;
            let m = compatible_matrix(&g, spec, &mut rng);
            (g, m)
        }
        Family::RandomForest => {
            let mut edges = Vec::new();
            for v in 1..n {
                if rng.chance(spec.p) {
                    edges.push((rng.below(v), v, rng.sign()));
                }
            }
            let g = SignedGraph::new(n, edges)?;
            let m = compatible_matrix(&g, spec, &mut rng);
            (g, m)
        }
        Family::BalancedGnp | Family::AntibalancedGnp => {
            let uniform = if spec.family == Family::BalancedGnp {
                Sign::Plus
            } else {
                Sign::Minus
            };
            let edges = gnp_edges(&mut rng, n, spec.p)
                .into_iter()
                .map(|(u, v)| (u, v, uniform))
                .collect();
            let tau = random_switching(&mut rng, n);
            let g = SignedGraph::new(n, edges)?.switch(&tau)?;
            let m = compatible_matrix(&g, spec, &mut rng);
            (g, m)
        }
        Family::GeneralizedLaplacian => {
            let edges = gnp_edges(&mut rng, n, spec.p)
                .into_iter()
                .map(|(u, v)| (u, v, Sign::Plus))
                .collect();
            let g = SignedGraph::new(n, edges)?;
            let m = compatible_matrix(&g, spec, &mut rng);
            (g, m)
        }
        Family::BipartiteLaplacian => {
            let mut side: Vec<bool> = (0..n).map(|_| rng.chance(0.5)).collect();
            if n >= 2 && side.iter().all(|&s| s == side[0]) {
                side[n - 1] = !side[0];
            }
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    if side[u] != side[v] && rng.chance(spec.p) {
                        edges.push((u, v, Sign::Plus));
                    }
                }
            }
            let g = SignedGraph::new(n, edges)?;
            let m = compatible_matrix(&g, spec, &mut rng);
            (g, m)
        }
        Family::StarWithLeaves => {
            if n < 2 {
                return Err(Error::InvalidSpec("star family needs n >= 2".into()));
            }
            let w = rng.uniform(spec.weight_range.0, spec.weight_range.1);
            let d = rng.uniform(spec.diagonal_range.0, spec.diagonal_range.1);
            let mut m = SymMatrix::zeros(n);
            m.set(0, 0, w * (n - 1) as f64 + d);
            for v in 1..n {
                m.set(0, v, -w);
                m.set(v, v, w + d);
            }
            let tau = random_switching(&mut rng, n);
            let m = m.conjugate_signs(&tau.values())?;
            let g = SignedGraph::from_matrix(&m, 0.0);
            (g, m)
        }
    };
    debug_assert!(graph.is_compatible(&matrix, 0.0)?);
    Ok((graph, matrix))
}

/// Zero-heavy random test function: each value vanishes with probability
/// 0.3, otherwise it is a random sign times a magnitude in [0.1, 1.1).
pub fn random_function(rng: &mut SplitMix64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|_| {
            if rng.chance(0.3) {
                0.0
            } else {
                rng.sign().value() * rng.uniform(0.1, 1.1)
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    UpperBounds,
    DualityForest,
    SwitchingInvariance,
    FiedlerAcyclic,
    LowerBoundCycles,
    LowerBoundLeaves,
    AntibalanceTop,
    OracleEquivalence,
    InertiaBounds,
    NowhereZeroMultiplicity,
    UniqueContinuation,
    Constructions,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::UpperBounds,
        Suite::DualityForest,
        Suite::SwitchingInvariance,
        Suite::FiedlerAcyclic,
        Suite::LowerBoundCycles,
        Suite::LowerBoundLeaves,
        Suite::AntibalanceTop,
        Suite::OracleEquivalence,
        Suite::InertiaBounds,
        Suite::NowhereZeroMultiplicity,
        Suite::UniqueContinuation,
        Suite::Constructions,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::UpperBounds => "upper-bounds",
            Suite::DualityForest => "duality-forest",
            Suite::SwitchingInvariance => "switching-invariance",
            Suite::FiedlerAcyclic => "fiedler-acyclic",
            Suite::LowerBoundCycles => "lower-bound-cycles",
            Suite::LowerBoundLeaves => "lower-bound-leaves",
            Suite::AntibalanceTop => "antibalance-top",
            Suite::OracleEquivalence => "oracle-equivalence",
            Suite::InertiaBounds => "inertia-bounds",
            Suite::NowhereZeroMultiplicity => "nowhere-zero-multiplicity",
            Suite::UniqueContinuation => "unique-continuation",
            Suite::Constructions => "constructions",
        }
    }

    pub fn available() -> String {
        Suite::ALL.map(|s| s.name()).join(", ")
    }

    /// Family whose instances naturally satisfy the suite's hypotheses.
    pub fn default_family(&self) -> Family {
        match self {
            Suite::DualityForest | Suite::FiedlerAcyclic => Family::RandomForest,
            Suite::LowerBoundLeaves => Family::RandomTree,
            Suite::AntibalanceTop => Family::AntibalancedGnp,
            Suite::UniqueContinuation => Family::GeneralizedLaplacian,
            _ => Family::GnpRandomSign,
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .iter()
            .find(|x| x.name() == s)
            .copied()
            .ok_or_else(|| Error::UnknownSuite {
                got: s.to_string(),
                available: Suite::available(),
            })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteFailure {
    pub trial: u64,
    pub seed: u64,
    pub report: TheoremReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub suite: String,
    pub family: String,
    pub trials: u64,
    pub checks_run: u64,
    pub not_applicable: u64,
    pub failures: Vec<SuiteFailure>,
    pub wall_ms: u128,
}

impl SuiteResult {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Tally<'a> {
    result: &'a mut SuiteResult,
    trial: u64,
    seed: u64,
}

impl Tally<'_> {
    fn record(&mut self, report: TheoremReport) {
        match report.verdict {
            Verdict::NotApplicable => self.result.not_applicable += 1,
            Verdict::Pass => self.result.checks_run += 1,
            Verdict::Fail => {
                self.result.checks_run += 1;
                self.result.failures.push(SuiteFailure {
                    trial: self.trial,
                    seed: self.seed,
                    report,
                });
            }
        }
    }

    fn pass(&mut self) {
        self.result.checks_run += 1;
    }
}

fn property_failure(theorem: &'static str, detail: String, tol: &Tolerances) -> TheoremReport {
    TheoremReport {
        theorem: theorem.to_string(),
        inputs_digest: String::new(),
        hypothesis_satisfied: true,
        quantities: Default::default(),
        verdict: Verdict::Fail,
        tolerances: *tol,
        sensitivity_flag: false,
        basis: None,
        counterexample: Some(Counterexample {
            matrix: None,
            eigen_index: None,
            function: None,
            detail,
        }),
    }
}

/// All eigenpairs to check for one matrix: every solver pair, plus the
/// minimal-support basis of each degenerate cluster.
fn pairs_for(es: &EigenSystem, tol: &Tolerances) -> Result<Vec<EigenPair>> {
    let mut pairs: Vec<EigenPair> = (0..es.n()).map(|i| es.pair(i)).collect();
    for cluster in es.clusters() {
        if cluster.size > 1 {
            pairs.extend(es.minimal_support_pairs(*cluster, tol.rref_pivot_tol)?);
        }
    }
    Ok(pairs)
}

/// Runs `trials` independent trials of a suite over instances drawn from
/// `spec`, recording every failing report with its reproducing trial.
pub fn run_suite(
    suite: Suite,
    spec: &GeneratorSpec,
    trials: u64,
    tol: &Tolerances,
) -> Result<SuiteResult> {
    spec.validate()?;
    if suite == Suite::OracleEquivalence && spec.n > WALK_ORACLE_MAX {
        return Err(Error::InvalidSpec(format!(
            "oracle-equivalence requires n <= {WALK_ORACLE_MAX}"
        )));
    }
    let start = Instant::now();
    let mut result = SuiteResult {
        suite: suite.name().to_string(),
        family: spec.family.name().to_string(),
        trials,
        checks_run: 0,
        not_applicable: 0,
        failures: Vec::new(),
        wall_ms: 0,
    };
    for trial in 0..trials {
        let mut tally = Tally {
            result: &mut result,
            trial,
            seed: spec.seed,
        };
        run_trial(suite, spec, trial, tol, &mut tally)?;
    }
    result.wall_ms = start.elapsed().as_millis();
    Ok(result)
}

fn run_trial(
    suite: Suite,
    spec: &GeneratorSpec,
    trial: u64,
    tol: &Tolerances,
    tally: &mut Tally<'_>,
) -> Result<()> {
    match suite {
        Suite::UpperBounds
        | Suite::FiedlerAcyclic
        | Suite::LowerBoundCycles
        | Suite::LowerBoundLeaves
        | Suite::InertiaBounds
        | Suite::NowhereZeroMultiplicity
        | Suite::UniqueContinuation => {
            let (_, m) = generate(spec, trial)?;
            let es = match eigendecompose(&m, tol) {
                Ok(es) => es,
                Err(err) => {
                    tally.record(property_failure(
                        "eigendecomposition",
                        format!("solver failed on generated instance: {err}"),
                        tol,
                    ));
                    return Ok(());
                }
            };
            let pairs = match pairs_for(&es, tol) {
                Ok(pairs) => pairs,
                Err(err) => {
                    tally.record(property_failure(
                        "minimal-support-basis",
                        format!("cluster reduction failed: {err}"),
                        tol,
                    ));
                    return Ok(());
                }
            };
            for pair in &pairs {
                let report = match suite {
                    Suite::UpperBounds => check_upper_bounds(&m, &es, pair, tol),
                    Suite::FiedlerAcyclic => check_fiedler_acyclic(&m, &es, pair, tol),
                    Suite::LowerBoundCycles => check_lower_bound_cycles(&m, &es, pair, tol),
                    Suite::LowerBoundLeaves => check_lower_bound_leaves(&m, &es, pair, tol),
                    Suite::InertiaBounds => check_inertia_edge_bounds(&m, &es, pair, tol),
                    Suite::NowhereZeroMultiplicity => {
                        check_nowhere_zero_multiplicity(&m, &es, pair, tol)
                    }
                    Suite::UniqueContinuation => check_unique_continuation(&m, &es, pair, tol),
                    _ => unreachable!(),
                };
                tally.record(report);
            }
            // the tree corollary rides along wherever forests appear
            if suite == Suite::FiedlerAcyclic {
                for pair in &pairs {
                    tally.record(check_tree_nowhere_zero(&m, &es, pair, tol));
                }
            }
        }
        Suite::AntibalanceTop => {
            let (_, m) = generate(spec, trial)?;
            match eigendecompose(&m, tol) {
                Ok(es) => tally.record(check_antibalance_top(&m, &es, tol)),
                Err(err) => tally.record(property_failure(
                    "eigendecomposition",
                    format!("solver failed on generated instance: {err}"),
                    tol,
                )),
            }
        }
        Suite::DualityForest => {
            let (g, _) = generate(spec, trial)?;
            let mut rng = SplitMix64::for_trial(spec.seed ^ 0x00f0_00f0, trial);
            for _ in 0..3 {
                let f = random_function(&mut rng, g.n());
                tally.record(check_duality_forest(&g, &f, tol.zero_tol, tol));
            }
        }
        Suite::SwitchingInvariance => {
            let (g, _) = generate(spec, trial)?;
            let mut rng = SplitMix64::for_trial(spec.seed ^ 0x5157_1c11, trial);
            let f = random_function(&mut rng, g.n());
            let tau = random_switching(&mut rng, g.n());
            let g_tau = g.switch(&tau)?;
            let f_tau = tau.apply(&f)?;
            let s = strong_domains(&g, &f, tol.zero_tol)?;
            let s_tau = strong_domains(&g_tau, &f_tau, tol.zero_tol)?;
            let w = weak_domains(&g, &f, tol.zero_tol)?;
            let w_tau = weak_domains(&g_tau, &f_tau, tol.zero_tol)?;
            if s.domains != s_tau.domains {
                tally.record(property_failure(
                    "switching-invariance",
                    format!(
                        "strong partitions differ: {:?} vs {:?} (f = {f:?})",
                        s.domains, s_tau.domains
                    ),
                    tol,
                ));
            } else if w.classes != w_tau.classes || w.domains != w_tau.domains {
                tally.record(property_failure(
                    "switching-invariance",
                    format!(
                        "weak partitions differ: {:?} vs {:?} (f = {f:?})",
                        w.domains, w_tau.domains
                    ),
                    tol,
                ));
            } else {
                tally.pass();
            }
        }
        Suite::OracleEquivalence => {
            let (g, _) = generate(spec, trial)?;
            let mut rng = SplitMix64::for_trial(spec.seed ^ 0x0bac_1e00, trial);
            for _ in 0..2 {
                let f = random_function(&mut rng, g.n());
                let s = strong_domains(&g, &f, tol.zero_tol)?;
                let s_oracle = walk_oracle(&g, &f, tol.zero_tol, WalkKind::Strong)?;
                let w = weak_domains(&g, &f, tol.zero_tol)?;
                let w_oracle = walk_oracle(&g, &f, tol.zero_tol, WalkKind::Weak)?;
                if s.domains != s_oracle {
                    tally.record(property_failure(
                        "oracle-equivalence",
                        format!(
                            "strong partition {:?} != oracle {:?} (f = {f:?}, graph = {})",
                            s.domains,
                            s_oracle,
                            g.to_text()
                        ),
                        tol,
                    ));
                } else if w.classes != w_oracle {
                    tally.record(property_failure(
                        "oracle-equivalence",
                        format!(
                            "weak classes {:?} != oracle {:?} (f = {f:?}, graph = {})",
                            w.classes,
                            w_oracle,
                            g.to_text()
                        ),
                        tol,
                    ));
                } else {
                    tally.pass();
                }
            }
        }
        Suite::Constructions => {
            run_construction_trial(spec, trial, tol, tally)?;
        }
    }
    Ok(())
}

fn run_construction_trial(
    spec: &GeneratorSpec,
    trial: u64,
    tol: &Tolerances,
    tally: &mut Tally<'_>,
) -> Result<()> {
    let mut rng = SplitMix64::for_trial(spec.seed ^ 0x00c0_5717, trial);
    let n = spec.n.max(3);

    // nowhere-zero first eigenfunction on a random connected signed graph
    let g = connected_graph(&mut rng, n, spec.p);
    match construct_nowhere_zero_first(&g, tol) {
        Ok((m, es)) => {
            let mut problems = Vec::new();
            if !g.is_compatible(&m, 0.0)? {
                problems.push("output matrix is not compatible".to_string());
            }
            if es.clusters()[0].size != 1 {
                problems.push("first eigenvalue is not simple".to_string());
            }
            if zero_mask(es.vector(0), tol.zero_tol).iter().any(|&b| b) {
                problems.push("first eigenfunction has a zero".to_string());
            }
            if strong_domains(&g, es.vector(0), tol.zero_tol)?.count != 1 {
                problems.push("first eigenfunction has more than one strong domain".to_string());
            }
            if problems.is_empty() {
                tally.pass();
            } else {
                tally.record(property_failure(
                    "construct-nowhere-zero",
                    format!("{} (graph = {})", problems.join("; "), g.to_text()),
                    tol,
                ));
            }
        }
        Err(err) => tally.record(property_failure(
            "construct-nowhere-zero",
            format!("construction failed: {err} (graph = {})", g.to_text()),
            tol,
        )),
    }

    // zero-at-vertex instance: balanced connected remainder plus a mixed
    // apex star, hidden behind a random switching
    let m_rem = n - 1;
    let remainder_shape = connected_graph(&mut rng, m_rem, 0.3);
    let remainder = SignedGraph::new(
        m_rem,
        remainder_shape
            .edges()
            .iter()
            .map(|e| (e.u, e.v, Sign::Plus))
            .collect(),
    )?;
    let apex = n - 1;
    let degree = 2 + rng.below(m_rem.min(3) - 1);
    let mut neighbors: Vec<usize> = (0..m_rem).collect();
    for i in (1..neighbors.len()).rev() {
        let j = rng.below(i + 1);
        neighbors.swap(i, j);
    }
    neighbors.truncate(degree);
    let mut edges: Vec<(usize, usize, Sign)> = remainder
        .edges()
        .iter()
        .map(|e| (e.u, e.v, e.sign))
        .collect();
    for (i, &v) in neighbors.iter().enumerate() {
        let sign = match i {
            0 => Sign::Plus,
            1 => Sign::Minus,
            _ => rng.sign(),
        };
        edges.push((v, apex, sign));
    }
    let hidden = SignedGraph::new(n, edges)?.switch(&random_switching(&mut rng, n))?;
    match construct_zero_at_vertex(&hidden, apex, tol) {
        Ok(out) => {
            let mut problems = Vec::new();
            if out.f1[apex] != 0.0 {
                problems.push(format!("value at apex is {} instead of 0", out.f1[apex]));
            }
            if out
                .f1
                .iter()
                .enumerate()
                .any(|(i, &x)| i != apex && x == 0.0)
            {
                problems.push("eigenfunction vanishes away from the apex".to_string());
            }
            if !hidden.is_compatible(&out.matrix, 0.0)? {
                problems.push("output matrix is not compatible".to_string());
            }
            let mv = out.matrix.matvec(&out.f1);
            let residual = mv
                .iter()
                .zip(&out.f1)
                .map(|(a, b)| (a - out.lambda1 * b).abs())
                .fold(0.0, f64::max);
            if residual > 1e-9 {
                problems.push(format!("eigen-residual {residual:e} exceeds 1e-9"));
            }
            if problems.is_empty() {
                tally.pass();
            } else {
                tally.record(property_failure(
                    "construct-zero-at",
                    format!("{} (graph = {})", problems.join("; "), hidden.to_text()),
                    tol,
                ));
            }
        }
        Err(err) => tally.record(property_failure(
            "construct-zero-at",
            format!("construction failed: {err} (graph = {})", hidden.to_text()),
            tol,
        )),
    }
    Ok(())
}
