//! Executable checkers for the bounds, identities, and characterizations
//! satisfied by nodal domain counts of eigenfunctions, plus two constructive
//! procedures for first eigenfunctions with prescribed zero patterns.
//!
//! Every checker returns a [`TheoremReport`]: the named quantities it
//! computed, whether the hypothesis held, a pass/fail verdict, and a
//! counterexample payload on failure. These are theorems, so on a correct
//! implementation every applicable check passes; a failure is a bug signal,
//! which is what the randomized harness hunts for.
//!
//! Integer quantities (`k`, `r`, domain counts) are derived from clustered
//! spectra and thresholded zero masks, so each report carries the
//! tolerances used and a sensitivity flag that fires when the zero mask is
//! unstable under a tenfold threshold change.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::graph::{Sign, SignedGraph, SwitchingFunction};
use crate::matrix::SymMatrix;
use crate::nodal::{dual_strong_domains, strong_domains, weak_domains};
use crate::rng::SplitMix64;
use crate::spectral::{
    classify_zeros, eigendecompose, numerical_rank, zero_mask, BasisKind, Cluster, EigenPair,
    EigenSystem, Tolerances,
};
use crate::union_find::UnionFind;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<f64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eigen_index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub function: Option<Vec<f64>>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem: String,
    pub inputs_digest: String,
    pub hypothesis_satisfied: bool,
    pub quantities: BTreeMap<String, f64>,
    pub verdict: Verdict,
    pub tolerances: Tolerances,
    pub sensitivity_flag: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<BasisKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }
}

/// Accumulates quantities and assertions for one checker run.
struct Check {
    theorem: &'static str,
    digest: String,
    quantities: BTreeMap<String, f64>,
    tolerances: Tolerances,
    failures: Vec<String>,
    sensitivity: bool,
    basis: Option<BasisKind>,
    eigen_index: Option<usize>,
}

impl Check {
    fn new(theorem: &'static str, digest: String, tol: &Tolerances) -> Check {
        Check {
            theorem,
            digest,
            quantities: BTreeMap::new(),
            tolerances: *tol,
            failures: Vec::new(),
            sensitivity: false,
            basis: None,
            eigen_index: None,
        }
    }

    fn for_pair(theorem: &'static str, m: &SymMatrix, pair: &EigenPair, tol: &Tolerances) -> Check {
        let mut c = Check::new(theorem, format!("{}:{}", m.digest(), pair.index), tol);
        c.basis = Some(pair.basis);
        c.eigen_index = Some(pair.index);
        c.set("k", pair.k as f64);
        c.set("r", pair.r as f64);
        c.set("lambda", pair.lambda);
        c.sensitivity =
            zero_mask(&pair.f, tol.zero_tol / 10.0) != zero_mask(&pair.f, tol.zero_tol * 10.0);
        c
    }

    fn set(&mut self, name: &str, value: f64) {
        self.quantities.insert(name.to_string(), value);
    }

    fn require(&mut self, cond: bool, detail: impl FnOnce() -> String) {
        if !cond {
            self.failures.push(detail());
        }
    }

    fn not_applicable(self, why: &str) -> TheoremReport {
        TheoremReport {
            theorem: self.theorem.to_string(),
            inputs_digest: self.digest,
            hypothesis_satisfied: false,
            quantities: self.quantities,
            verdict: Verdict::NotApplicable,
            tolerances: self.tolerances,
            sensitivity_flag: self.sensitivity,
            basis: self.basis,
            counterexample: Some(Counterexample {
                matrix: None,
                eigen_index: self.eigen_index,
                function: None,
                detail: why.to_string(),
            }),
        }
    }

    fn finish(self, m: Option<&SymMatrix>, f: Option<&[f64]>) -> TheoremReport {
        let verdict = if self.failures.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        let counterexample = if self.failures.is_empty() {
            None
        } else {
            Some(Counterexample {
                matrix: m.map(|m| m.rows_vec()),
                eigen_index: self.eigen_index,
                function: f.map(|f| f.to_vec()),
                detail: self.failures.join("; "),
            })
        };
        TheoremReport {
            theorem: self.theorem.to_string(),
            inputs_digest: self.digest,
            hypothesis_satisfied: true,
            quantities: self.quantities,
            verdict,
            tolerances: self.tolerances,
            sensitivity_flag: self.sensitivity,
            basis: self.basis,
            counterexample,
        }
    }
}

fn fnv(bytes: impl IntoIterator<Item = u8>) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{h:016x}")
}

fn digest_graph_function(g: &SignedGraph, f: &[f64]) -> String {
    let mut bytes: Vec<u8> = g.to_text().into_bytes();
    for x in f {
        bytes.extend_from_slice(&x.to_bits().to_le_bytes());
    }
    fnv(bytes)
}

/// Definitional minimal-support test: `f` has minimal support within the
/// space iff forcing any one support coordinate to zero (on top of the
/// existing zero set) kills every nonzero member, i.e. the coordinate
/// restriction keeps full rank.
pub fn has_minimal_support(space: &[Vec<f64>], f: &[f64], zero_tol: f64, rank_tol: f64) -> bool {
    let r = space.len();
    let mask = zero_mask(f, zero_tol);
    let zeros: Vec<usize> = (0..f.len()).filter(|&i| mask[i]).collect();
    for s in (0..f.len()).filter(|&i| !mask[i]) {
        let rows: Vec<Vec<f64>> = zeros
            .iter()
            .chain(std::iter::once(&s))
            .map(|&coord| space.iter().map(|b| b[coord]).collect())
            .collect();
        if numerical_rank(&rows, rank_tol) < r {
            return false;
        }
    }
    true
}

/// Cycle-space dimension of the subgraph carrying only the strong-walk
/// edges of `f`, on the full vertex set.
pub fn ell_plus(g: &SignedGraph, f: &[f64], zero_tol: f64) -> Result<usize> {
    let s = strong_domains(g, f, zero_tol)?;
    let mut uf = UnionFind::new(g.n());
    for &(u, v) in &s.s_edges {
        uf.union(u, v);
    }
    let c = uf.groups_of(0..g.n()).len();
    Ok(s.s_edges.len() + c - g.n())
}

/// Upper bounds on the domain counts of an eigenfunction: strong by
/// eigenvalue position plus multiplicity, weak by position plus component
/// count; with the stronger strong bound when the eigenfunction has
/// minimal support in its eigenspace (decided definitionally).
pub fn check_upper_bounds(
    m: &SymMatrix,
    es: &EigenSystem,
    pair: &EigenPair,
    tol: &Tolerances,
) -> TheoremReport {
    let mut check = Check::for_pair("upper-bounds", m, pair, tol);
    let g = SignedGraph::from_matrix(m, 0.0);
    let c = g.components().count();
    let strong = strong_domains(&g, &pair.f, tol.zero_tol).unwrap();
    let weak = weak_domains(&g, &pair.f, tol.zero_tol).unwrap();
    let (k, r) = (pair.k as i64, pair.r as i64);
    check.set("n", g.n() as f64);
    check.set("c", c as f64);
    check.set("strong", strong.count as f64);
    check.set("weak", weak.count as f64);
    check.require(strong.count as i64 <= k + r - 1, || {
        format!("strong count {} exceeds k+r-1 = {}", strong.count, k + r - 1)
    });
    check.require(weak.count as i64 <= k + c as i64 - 1, || {
        format!(
            "weak count {} exceeds k+c-1 = {}",
            weak.count,
            k + c as i64 - 1
        )
    });
    let space = es.cluster_vectors(Cluster {
        start: pair.k,
        size: pair.r,
    });
    let minimal = has_minimal_support(&space, &pair.f, tol.zero_tol, tol.rref_pivot_tol);
    check.set("minimal_support", if minimal { 1.0 } else { 0.0 });
    if minimal {
        check.require(strong.count as i64 <= k, || {
            format!(
                "minimal-support strong count {} exceeds k = {k}",
                strong.count
            )
        });
    }
    check.finish(Some(m), Some(&pair.f))
}

/// Duality identity on forests, for an arbitrary function: the strong
/// counts on the graph and on its negation sum to `n + c - 2z + e0`.
pub fn check_duality_forest(
    g: &SignedGraph,
    f: &[f64],
    zero_tol: f64,
    tol: &Tolerances,
) -> TheoremReport {
    let mut check = Check::new("duality-forest", digest_graph_function(g, f), tol);
    check.sensitivity = zero_mask(f, zero_tol / 10.0) != zero_mask(f, zero_tol * 10.0);
    let cs = g.cycle_space();
    check.set("ell", cs.ell as f64);
    if cs.ell != 0 {
        return check.not_applicable("graph has a cycle");
    }
    // an identically zero function still satisfies the identity on a forest
    let mask = if f.iter().all(|x| *x == 0.0) {
        vec![true; g.n()]
    } else {
        zero_mask(f, zero_tol)
    };
    let z = mask.iter().filter(|&&b| b).count();
    let e0 = g.edges().iter().filter(|e| mask[e.u] || mask[e.v]).count();
    let s = strong_domains(g, f, zero_tol).unwrap().count;
    let s_bar = dual_strong_domains(g, f, zero_tol).unwrap().count;
    let (n, c) = (g.n() as i64, cs.num_components as i64);
    check.set("n", n as f64);
    check.set("c", c as f64);
    check.set("z", z as f64);
    check.set("e0", e0 as f64);
    check.set("strong", s as f64);
    check.set("strong_dual", s_bar as f64);
    check.require(
        (s + s_bar) as i64 == n + c - 2 * z as i64 + e0 as i64,
        || {
            format!(
                "strong {} + dual {} != n+c-2z+e0 = {}",
                s,
                s_bar,
                n + c - 2 * z as i64 + e0 as i64
            )
        },
    );
    check.finish(None, Some(f))
}

/// On a connected graph, antibalance holds iff the top eigenfunction has
/// every vertex as its own strong and weak domain; and under antibalance
/// the top eigenvalue is simple. Also covers the bipartite all-positive
/// special case, which forces antibalance combinatorially.
pub fn check_antibalance_top(m: &SymMatrix, es: &EigenSystem, tol: &Tolerances) -> TheoremReport {
    let n = m.n();
    let pair = es.pair(n - 1);
    let mut check = Check::for_pair("antibalance-top", m, &pair, tol);
    let g = SignedGraph::from_matrix(m, 0.0);
    if g.components().count() != 1 {
        return check.not_applicable("graph is not connected");
    }
    let antibalanced = g.is_antibalanced();
    let strong = strong_domains(&g, &pair.f, tol.zero_tol).unwrap().count;
    let weak = weak_domains(&g, &pair.f, tol.zero_tol).unwrap().count;
    check.set("n", n as f64);
    check.set("antibalanced", if antibalanced { 1.0 } else { 0.0 });
    check.set("strong", strong as f64);
    check.set("weak", weak as f64);
    let saturated = strong == n && weak == n;
    check.require(antibalanced == saturated, || {
        format!("antibalanced = {antibalanced} but strong = {strong}, weak = {weak} out of {n}")
    });
    if antibalanced {
        check.require(pair.r == 1, || {
            format!("top eigenvalue has multiplicity {}", pair.r)
        });
    }
    let bipartite_all_positive = g.is_bipartite() && g.edges().iter().all(|e| e.sign == Sign::Plus);
    check.set(
        "bipartite_all_positive",
        if bipartite_all_positive { 1.0 } else { 0.0 },
    );
    if bipartite_all_positive {
        check.require(antibalanced, || {
            "bipartite graph with all-positive signs must be antibalanced".to_string()
        });
    }
    check.finish(Some(m), Some(&pair.f))
}

/// On a tree, a nowhere-zero eigenfunction forces a simple eigenvalue and
/// exactly `k` strong domains.
pub fn check_tree_nowhere_zero(
    m: &SymMatrix,
    _es: &EigenSystem,
    pair: &EigenPair,
    tol: &Tolerances,
) -> TheoremReport {
    let mut check = Check::for_pair("tree-nowhere-zero", m, pair, tol);
    let g = SignedGraph::from_matrix(m, 0.0);
    let cs = g.cycle_space();
    if cs.ell != 0 || cs.num_components != 1 {
        return check.not_applicable("graph is not a tree");
    }
    let mask = zero_mask(&pair.f, tol.zero_tol);
    if mask.iter().any(|&b| b) {
        return check.not_applicable("eigenfunction has a zero");
    }
    let strong = strong_domains(&g, &pair.f, tol.zero_tol).unwrap().count;
    check.set("strong", strong as f64);
    check.require(pair.r == 1, || {
        format!("eigenvalue multiplicity {} is not 1", pair.r)
    });
    check.require(strong == pair.k, || {
        format!("strong count {} != k = {}", strong, pair.k)
    });
    check.finish(Some(m), Some(&pair.f))
}

/// Exact domain-count identities on acyclic matrices, through the set of
/// isolated zeros: two-sided bounds, the nonnegative correction terms
/// `c1`, `c2` constrained by `c1 + c2 + (r - r_tilde) = |F|`, and the
/// deleted-submatrix multiplicity formula `r_tilde = e0 - 2z + c + |F|`.
pub fn check_fiedler_acyclic(
    m: &SymMatrix,
    es: &EigenSystem,
    pair: &EigenPair,
    tol: &Tolerances,
) -> TheoremReport {
    let mut check = Check::for_pair("fiedler-acyclic", m, pair, tol);
    let g = SignedGraph::from_matrix(m, 0.0);
    let cs = g.cycle_space();
    if cs.ell != 0 {
        return check.not_applicable("graph has a cycle");
    }
    let zp = classify_zeros(&g, &pair.f, tol.zero_tol).unwrap();
    check.sensitivity = zp.sensitivity_flag;
    let strong = strong_domains(&g, &pair.f, tol.zero_tol).unwrap().count as i64;
    let strong_dual = dual_strong_domains(&g, &pair.f, tol.zero_tol).unwrap().count as i64;
    let (n, c) = (g.n() as i64, cs.num_components as i64);
    let (k, r) = (pair.k as i64, pair.r as i64);
    let fiedler = zp.fiedler_set.len() as i64;
    let (z, e0) = (zp.z as i64, zp.e0 as i64);
    check.set("n", n as f64);
    check.set("c", c as f64);
    check.set("z", z as f64);
    check.set("e0", e0 as f64);
    check.set("fiedler", fiedler as f64);
    check.set("strong", strong as f64);
    check.set("strong_dual", strong_dual as f64);

    let sub = m.delete_indices(&zp.fiedler_set).unwrap();
    let sub_es = match eigendecompose(&sub, tol) {
        Ok(es) => es,
        Err(err) => {
            check.require(false, || format!("submatrix decomposition failed: {err}"));
            return check.finish(Some(m), Some(&pair.f));
        }
    };
    let spread = es.eigenvalues()[es.n() - 1] - es.eigenvalues()[0];
    let match_tol = tol.cluster_tol * spread.max(1.0);
    let r_tilde = sub_es
        .eigenvalues()
        .iter()
        .filter(|mu| (*mu - pair.lambda).abs() <= match_tol)
        .count() as i64;
    let k_tilde = sub_es
        .eigenvalues()
        .iter()
        .filter(|mu| **mu < pair.lambda - match_tol)
        .count() as i64
        + 1;
    check.set("r_tilde", r_tilde as f64);
    check.set("k_tilde", k_tilde as f64);

    check.require(r >= r_tilde, || {
        format!("multiplicity r = {r} below deleted-submatrix multiplicity {r_tilde}")
    });
    check.require(k + r - 1 - fiedler <= strong && strong <= k + r - 1, || {
        format!(
            "strong count {strong} outside [{}, {}]",
            k + r - 1 - fiedler,
            k + r - 1
        )
    });
    check.require(
        n - k + 1 - fiedler <= strong_dual && strong_dual <= n - k + 1,
        || {
            format!(
                "dual strong count {strong_dual} outside [{}, {}]",
                n - k + 1 - fiedler,
                n - k + 1
            )
        },
    );
    let c1 = strong - (k + r - 1 - fiedler);
    let c2 = strong_dual - (n - k + 1 - fiedler);
    check.set("c1", c1 as f64);
    check.set("c2", c2 as f64);
    check.require(c1 + c2 + (r - r_tilde) == fiedler, || {
        format!(
            "c1 {c1} + c2 {c2} + (r - r_tilde) {} != |F| = {fiedler}",
            r - r_tilde
        )
    });
    check.require(r_tilde == e0 - 2 * z + c + fiedler, || {
        format!(
            "multiplicity formula: r_tilde {r_tilde} != e0-2z+c+|F| = {}",
            e0 - 2 * z + c + fiedler
        )
    });
    if fiedler == 0 {
        check.require(strong == k + r - 1, || {
            format!("with empty F, strong {strong} != k+r-1 = {}", k + r - 1)
        });
        check.require(strong_dual == n - k + 1, || {
            format!(
                "with empty F, dual strong {strong_dual} != n-k+1 = {}",
                n - k + 1
            )
        });
    }
    check.finish(Some(m), Some(&pair.f))
}

/// Cycle-aware lower bound on the strong count:
/// `strong >= k + r - 1 - ell' + ell_plus - |F|`, where `ell'` is the
/// cycle-space dimension of the subgraph induced on the nonzeros.
pub fn check_lower_bound_cycles(
    m: &SymMatrix,
    _es: &EigenSystem,
    pair: &EigenPair,
    tol: &Tolerances,
) -> TheoremReport {
    let mut check = Check::for_pair("lower-bound-cycles", m, pair, tol);
    let g = SignedGraph::from_matrix(m, 0.0);
    let zp = classify_zeros(&g, &pair.f, tol.zero_tol).unwrap();
    check.sensitivity = zp.sensitivity_flag;
    let (sub, _) = g.induced_subgraph(&zp.support).unwrap();
    let ell_prime = sub.cycle_space().ell as i64;
    let ellp = ell_plus(&g, &pair.f, tol.zero_tol).unwrap() as i64;
    let strong = strong_domains(&g, &pair.f, tol.zero_tol).unwrap().count as i64;
    let (k, r) = (pair.k as i64, pair.r as i64);
    let fiedler = zp.fiedler_set.len() as i64;
    check.set("ell", g.cycle_space().ell as f64);
    check.set("ell_prime", ell_prime as f64);
    check.set("ell_plus", ellp as f64);
    check.set("fiedler", fiedler as f64);
    check.set("strong", strong as f64);
    let bound = k + r - 1 - ell_prime + ellp - fiedler;
    check.set("bound", bound as f64);
    check.require(strong >= bound, || {
        format!("strong count {strong} below lower bound {bound}")
    });
    check.finish(Some(m), Some(&pair.f))
}

/// Leaf-based lower bound `strong >= k + v_l - 1 - n - z_l + z_r`, with the
/// intermediate duality inequality `strong + dual >= v_l - z_l + z_r`.
/// Applies to the first eigenpair of its cluster.
pub fn check_lower_bound_leaves(
    m: &SymMatrix,
    _es: &EigenSystem,
    pair: &EigenPair,
    tol: &Tolerances,
) -> TheoremReport {
    let mut check = Check::for_pair("lower-bound-leaves", m, pair, tol);
    if pair.index + 1 != pair.k {
        return check.not_applicable("eigenpair is not the first of its cluster");
    }
    let g = SignedGraph::from_matrix(m, 0.0);
    let zp = classify_zeros(&g, &pair.f, tol.zero_tol).unwrap();
    check.sensitivity = zp.sensitivity_flag;
    let strong = strong_domains(&g, &pair.f, tol.zero_tol).unwrap().count as i64;
    let strong_dual = dual_strong_domains(&g, &pair.f, tol.zero_tol).unwrap().count as i64;
    let (n, k) = (g.n() as i64, pair.k as i64);
    let (v_l, z_l, z_r) = (
        zp.leaf_stats.v_l as i64,
        zp.leaf_stats.z_l as i64,
        zp.leaf_stats.z_r as i64,
    );
    check.set("n", n as f64);
    check.set("v_l", v_l as f64);
    check.set("z_l", z_l as f64);
    check.set("z_r", z_r as f64);
    check.set("strong", strong as f64);
    check.set("strong_dual", strong_dual as f64);
    check.require(strong + strong_dual >= v_l - z_l + z_r, || {
        format!(
            "strong {strong} + dual {strong_dual} below leaf sum {}",
            v_l - z_l + z_r
        )
    });
    let bound = k + v_l - 1 - n - z_l + z_r;
    check.set("bound", bound as f64);
    check.require(strong >= bound, || {
        format!("strong count {strong} below leaf lower bound {bound}")
    });
    check.finish(Some(m), Some(&pair.f))
}

/// For a nowhere-zero eigenfunction the multiplicity is squeezed between
/// the component count and the component count plus the cycle dimension.
pub fn check_nowhere_zero_multiplicity(
    m: &SymMatrix,
    _es: &EigenSystem,
    pair: &EigenPair,
    tol: &Tolerances,
) -> TheoremReport {
    let mut check = Check::for_pair("nowhere-zero-multiplicity", m, pair, tol);
    let g = SignedGraph::from_matrix(m, 0.0);
    let mask = zero_mask(&pair.f, tol.zero_tol);
    if mask.iter().any(|&b| b) {
        return check.not_applicable("eigenfunction has a zero");
    }
    let cs = g.cycle_space();
    let (c, ell, r) = (cs.num_components, cs.ell, pair.r);
    check.set("c", c as f64);
    check.set("ell", ell as f64);
    check.require(c <= r && r <= c + ell, || {
        format!("multiplicity {r} outside [{c}, {}]", c + ell)
    });
    check.finish(Some(m), Some(&pair.f))
}

/// Inertia/edge-count chain for a nowhere-zero eigenfunction `g`:
/// `p <= |E(T)| <= |E(H)| <= p + ell` where `H` keeps the edges with
/// `(-M_xy) g(x) g(y) > 0`, `T` is a spanning forest of `H`, and `p` counts
/// eigenvalues above the eigenvalue. Also validates the underlying
/// quadratic-form identity on seeded random vectors.
pub fn check_inertia_edge_bounds(
    m: &SymMatrix,
    _es: &EigenSystem,
    pair: &EigenPair,
    tol: &Tolerances,
) -> TheoremReport {
    let mut check = Check::for_pair("inertia-bounds", m, pair, tol);
    let g = SignedGraph::from_matrix(m, 0.0);
    let mask = zero_mask(&pair.f, tol.zero_tol);
    if mask.iter().any(|&b| b) {
        return check.not_applicable("eigenfunction has a zero");
    }
    let n = m.n();
    let f = &pair.f;
    let mut uf = UnionFind::new(n);
    let mut h_edges = 0usize;
    for e in g.edges() {
        if -m.get(e.u, e.v) * f[e.u] * f[e.v] > 0.0 {
            h_edges += 1;
            uf.union(e.u, e.v);
        }
    }
    let c_h = uf.groups_of(0..n).len();
    let t_edges = n - c_h;
    let p = n as i64 - (pair.k as i64 + pair.r as i64 - 1);
    let ell = g.cycle_space().ell as i64;
    check.set("p", p as f64);
    check.set("t_edges", t_edges as f64);
    check.set("h_edges", h_edges as f64);
    check.set("ell", ell as f64);
    check.require(
        p <= t_edges as i64 && t_edges <= h_edges && (h_edges as i64) <= p + ell,
        || {
            format!(
                "chain violated: p {p} <= |E(T)| {t_edges} <= |E(H)| {h_edges} <= p+ell {}",
                p + ell
            )
        },
    );

    // quadratic form identity <x, D(g)(M - lambda I)D(g) x> against the
    // edge sum, on reproducibly seeded vectors
    let seed = u64::from_str_radix(&m.digest()[..12], 16).unwrap_or(1) ^ pair.index as u64;
    let mut rng = SplitMix64::new(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let x: Vec<f64> = (0..n).map(|_| rng.uniform(-1.0, 1.0)).collect();
        let y: Vec<f64> = x.iter().zip(f).map(|(a, b)| a * b).collect();
        let my = m.matvec(&y);
        let lhs: f64 = y.iter().zip(&my).map(|(a, b)| a * b).sum::<f64>()
            - pair.lambda * y.iter().map(|a| a * a).sum::<f64>();
        let rhs: f64 = g
            .edges()
            .iter()
            .map(|e| -m.get(e.u, e.v) * f[e.u] * f[e.v] * (x[e.u] - x[e.v]) * (x[e.u] - x[e.v]))
            .sum();
        let rel = (lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(1.0);
        worst = worst.max(rel);
    }
    check.set("quadratic_identity_error", worst);
    check.require(worst <= 1e-8, || {
        format!("quadratic identity error {worst:e} exceeds 1e-8")
    });
    check.finish(Some(m), Some(&pair.f))
}

/// Unique continuation across weak domains: within the span of the
/// per-domain restrictions of an eigenfunction, the eigenspace is met in
/// exactly one dimension, the equal-coefficient direction. Any member that
/// is again an eigenfunction therefore has all coefficients equal.
pub fn check_unique_continuation(
    m: &SymMatrix,
    es: &EigenSystem,
    pair: &EigenPair,
    tol: &Tolerances,
) -> TheoremReport {
    let mut check = Check::for_pair("unique-continuation", m, pair, tol);
    let g = SignedGraph::from_matrix(m, 0.0);
    if g.components().count() != 1 {
        return check.not_applicable("graph is not connected");
    }
    let weak = weak_domains(&g, &pair.f, tol.zero_tol).unwrap();
    let dom_count = weak.count;
    check.set("weak", dom_count as f64);
    if dom_count <= 1 {
        return check.finish(Some(m), Some(&pair.f));
    }
    let space = es.cluster_vectors(Cluster {
        start: pair.k,
        size: pair.r,
    });
    let n = m.n();
    // per-domain restrictions, normalized so the intersection test is not
    // skewed by domains carrying tiny function values; in these
    // coordinates the one admissible direction is the norms vector, which
    // reassembles the eigenfunction
    let mut norms = Vec::with_capacity(dom_count);
    let restricted: Vec<Vec<f64>> = weak
        .domains
        .iter()
        .map(|d| {
            let mut gi = vec![0.0; n];
            for &v in d {
                gi[v] = pair.f[v];
            }
            let norm: f64 = gi.iter().map(|x| x * x).sum::<f64>().sqrt();
            norms.push(norm);
            for x in gi.iter_mut() {
                *x /= norm;
            }
            gi
        })
        .collect();
    // residual of each restriction against the eigenspace projector
    let residuals: Vec<Vec<f64>> = restricted
        .iter()
        .map(|gi| {
            let mut res = gi.clone();
            for basis in &space {
                let dot: f64 = gi.iter().zip(basis).map(|(a, b)| a * b).sum();
                for (x, b) in res.iter_mut().zip(basis) {
                    *x -= dot * b;
                }
            }
            res
        })
        .collect();
    let mut gram = SymMatrix::zeros(dom_count);
    for i in 0..dom_count {
        for j in i..dom_count {
            let dot: f64 = residuals[i]
                .iter()
                .zip(&residuals[j])
                .map(|(a, b)| a * b)
                .sum();
            gram.set(i, j, dot);
        }
    }
    let gram_es = match eigendecompose(&gram, tol) {
        Ok(es) => es,
        Err(err) => {
            check.require(false, || format!("gram decomposition failed: {err}"));
            return check.finish(Some(m), Some(&pair.f));
        }
    };
    let mu = gram_es.eigenvalues();
    let kernel_tol = 1e-12 * mu[dom_count - 1].max(1.0);
    let kernel_dim = mu.iter().filter(|&&x| x <= kernel_tol).count();
    check.set("kernel_dim", kernel_dim as f64);
    check.set("mu_min", mu[0]);
    check.set("mu_second", mu[1]);
    check.require(kernel_dim == 1, || {
        format!("eigenspace intersection has dimension {kernel_dim}, expected 1")
    });
    if kernel_dim == 1 {
        let v = gram_es.vector(0);
        let norms_len: f64 = norms.iter().map(|x| x * x).sum::<f64>().sqrt();
        let cos: f64 = v
            .iter()
            .zip(&norms)
            .map(|(a, b)| a * b / norms_len)
            .sum();
        check.set("kernel_alignment", cos.abs());
        check.require(cos.abs() >= 1.0 - 1e-6, || {
            format!(
                "kernel direction does not reassemble the eigenfunction: |cos| = {}",
                cos.abs()
            )
        });
    }
    check.finish(Some(m), Some(&pair.f))
}

/// Builds a matrix compatible with a connected signed graph whose first
/// eigenvalue is simple with a nowhere-zero eigenfunction: switch a
/// spanning forest positive, weight the positive part at unit strength,
/// and shrink the negative part until the Perron structure survives.
pub fn construct_nowhere_zero_first(
    g: &SignedGraph,
    tol: &Tolerances,
) -> Result<(SymMatrix, EigenSystem)> {
    const MAX_HALVINGS: usize = 60;
    if g.components().count() != 1 {
        return Err(Error::Precondition("graph must be connected".into()));
    }
    let n = g.n();
    let (_, tau) = g.spanning_forest_positive_switch();
    let switched = g.switch(&tau)?;
    let mut positive_part = SymMatrix::zeros(n);
    let mut negative_part = SymMatrix::zeros(n);
    for e in switched.edges() {
        match e.sign {
            Sign::Plus => positive_part.set(e.u, e.v, -1.0),
            Sign::Minus => negative_part.set(e.u, e.v, 1.0),
        }
    }
    let tau_values = tau.values();
    let mut last_detail = String::new();
    let mut eps = 1.0;
    for _ in 0..=MAX_HALVINGS {
        let candidate = positive_part
            .add(&negative_part.scaled(eps))?
            .conjugate_signs(&tau_values)?;
        let es = eigendecompose(&candidate, tol)?;
        let first_simple = es.clusters()[0].size == 1;
        let nowhere_zero = !zero_mask(es.vector(0), tol.zero_tol).iter().any(|&b| b);
        if first_simple && nowhere_zero {
            debug_assert!(g.is_compatible(&candidate, 0.0)?);
            return Ok((candidate, es));
        }
        last_detail = format!(
            "eps = {eps:e}: first cluster size {}, nowhere-zero {nowhere_zero}, eigenvalues {:?}",
            es.clusters()[0].size,
            es.eigenvalues()
        );
        eps *= 0.5;
    }
    Err(Error::ConstructionFailed {
        attempts: MAX_HALVINGS + 1,
        detail: last_detail,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroAtVertexOutcome {
    pub matrix: SymMatrix,
    pub f1: Vec<f64>,
    pub lambda1: f64,
    /// Set when the balanced remainder's eigenfunction has entries below
    /// `1e-6` of its max, which amplifies the apex row through division.
    pub conditioning_warning: bool,
}

/// Builds a matrix compatible with a non-balanced graph whose first
/// eigenfunction vanishes exactly at `z` and nowhere else. Requires the
/// graph minus `z` to be balanced and connected: its positive switching
/// gives a Perron eigenpair, and the apex row is balanced against it so
/// the extended vector stays an exact eigenvector for every coupling
/// strength.
pub fn construct_zero_at_vertex(
    g: &SignedGraph,
    z: usize,
    tol: &Tolerances,
) -> Result<ZeroAtVertexOutcome> {
    const MAX_HALVINGS: usize = 60;
    let n = g.n();
    if z >= n {
        return Err(Error::VertexOutOfRange { v: z, n });
    }
    if g.is_balanced() {
        return Err(Error::Precondition("graph must be non-balanced".into()));
    }
    let keep: Vec<usize> = (0..n).filter(|&v| v != z).collect();
    let (remainder, map) = g.induced_subgraph(&keep)?;
    if remainder.components().count() != 1 {
        return Err(Error::Precondition(format!(
            "graph minus vertex {z} must be connected"
        )));
    }
    let tau_rem = remainder
        .balance_certificate()
        .ok_or_else(|| Error::Precondition(format!("graph minus vertex {z} must be balanced")))?;
    let mut tau_full = vec![Sign::Plus; n];
    for &old in &keep {
        tau_full[old] = tau_rem.at(map[old].expect("kept vertex"));
    }
    let tau_full = SwitchingFunction(tau_full);
    let switched = g.switch(&tau_full)?;

    let incident: Vec<(usize, Sign)> = switched
        .edges()
        .iter()
        .filter(|e| e.u == z || e.v == z)
        .map(|e| (if e.u == z { e.v } else { e.u }, e.sign))
        .collect();
    let k_plus = incident.iter().filter(|(_, s)| *s == Sign::Plus).count();
    let k_minus = incident.len() - k_plus;
    // non-balance with a balanced remainder forces a mixed apex star
    debug_assert!(k_plus >= 1 && k_minus >= 1);

    let mut base = SymMatrix::zeros(n - 1);
    for e in remainder.switch(&tau_rem)?.edges() {
        base.set(e.u, e.v, -1.0);
    }
    let base_es = eigendecompose(&base, tol)?;
    if base_es.clusters()[0].size != 1 {
        return Err(Error::ConstructionFailed {
            attempts: 0,
            detail: "remainder's first eigenvalue is not simple".into(),
        });
    }
    let perron = base_es.vector(0).to_vec();
    if perron.iter().any(|&x| x <= 0.0) {
        return Err(Error::ConstructionFailed {
            attempts: 0,
            detail: "remainder's first eigenfunction is not positive".into(),
        });
    }
    let lambda1 = base_es.lambda(0);
    let max_entry = perron.iter().fold(0.0f64, |a, &b| a.max(b));
    let min_entry = perron.iter().fold(f64::INFINITY, |a, &b| a.min(b));
    let conditioning_warning = min_entry < 1e-6 * max_entry;

    let mut f_switched = vec![0.0; n];
    for &old in &keep {
        f_switched[old] = perron[map[old].expect("kept vertex")];
    }

    let tau_values = tau_full.values();
    let mut eps = 1.0;
    let mut last_detail = String::new();
    for _ in 0..=MAX_HALVINGS {
        let mut full = SymMatrix::zeros(n);
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate().skip(a + 1) {
                full.set(i, j, base.get(a, b));
            }
        }
        full.set(z, z, lambda1 + 1.0);
        // apex entries carry weight k_minus (resp. k_plus) over the opposite
        // edge class so the apex row annihilates the extended vector:
        // sum = k_plus * (-eps k_minus) + k_minus * (eps k_plus) = 0.
        // Entry signs are fixed by compatibility: a positive switched edge
        // needs a negative entry.
        for &(x, sign) in &incident {
            let fx = f_switched[x];
            let entry = match sign {
                Sign::Plus => -(eps * k_minus as f64) / fx,
                Sign::Minus => eps * k_plus as f64 / fx,
            };
            full.set(z, x, entry);
        }
        let es = eigendecompose(&full, tol)?;
        let bottom = es.lambda(0);
        if (bottom - lambda1).abs() <= 1e-9 * lambda1.abs().max(1.0) {
            let matrix = full.conjugate_signs(&tau_values)?;
            let f1 = tau_full.apply(&f_switched)?;
            let residual = matrix
                .matvec(&f1)
                .iter()
                .zip(&f1)
                .map(|(a, b)| (a - lambda1 * b).abs())
                .fold(0.0, f64::max);
            if f1[z] != 0.0 || residual > 1e-9 || !g.is_compatible(&matrix, 0.0)? {
                return Err(Error::ConstructionFailed {
                    attempts: 0,
                    detail: format!(
                        "output verification failed: f1[{z}] = {}, residual = {residual:e}",
                        f1[z]
                    ),
                });
            }
            return Ok(ZeroAtVertexOutcome {
                matrix,
                f1,
                lambda1,
                conditioning_warning,
            });
        }
        last_detail = format!(
            "eps = {eps:e}: bottom eigenvalue {bottom} vs target {lambda1}, spectrum {:?}",
            es.eigenvalues()
        );
        eps *= 0.5;
    }
    Err(Error::ConstructionFailed {
        attempts: MAX_HALVINGS + 1,
        detail: last_detail,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn six_vertex_matrix() -> SymMatrix {
        SymMatrix::from_rows(&[
            vec![0.0, -1.0, 0.0, -1.0, 0.0, 0.0],
            vec![-1.0, 0.0, -1.0, 1.0, 0.0, 0.0],
            vec![0.0, -1.0, 0.0, -1.0, -1.0, -1.0],
            vec![-1.0, 1.0, -1.0, 0.0, 0.0, 0.0],
            vec![0.0, 0.0, -1.0, 0.0, 0.0, 1.0],
            vec![0.0, 0.0, -1.0, 0.0, 1.0, 0.0],
        ])
        .unwrap()
    }

    fn six_vertex_graph() -> SignedGraph {
        SignedGraph::from_matrix(&six_vertex_matrix(), 0.0)
    }

    fn p3_laplacian() -> SymMatrix {
        SymMatrix::parse("3\n1 -1 0\n-1 2 -1\n0 -1 1\n").unwrap()
    }

    fn star_laplacian() -> SymMatrix {
        SymMatrix::from_rows(&[
            vec![3.0, -1.0, -1.0, -1.0],
            vec![-1.0, 1.0, 0.0, 0.0],
            vec![-1.0, 0.0, 1.0, 0.0],
            vec![-1.0, 0.0, 0.0, 1.0],
        ])
        .unwrap()
    }

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn upper_bounds_on_reference_fixture() {
        let m = six_vertex_matrix();
        let es = eigendecompose(&m, &tol()).unwrap();
        // fourth eigenpair: k = 4, r = 1, two strong and two weak domains
        let report = check_upper_bounds(&m, &es, &es.pair(3), &tol());
        assert_eq!(report.verdict, Verdict::Pass);
        assert_eq!(report.quantities["strong"], 2.0);
        assert_eq!(report.quantities["weak"], 2.0);
        // degenerate cluster, minimal-support member: strong <= k
        let pairs = es
            .minimal_support_pairs(Cluster { start: 2, size: 2 }, tol().rref_pivot_tol)
            .unwrap();
        let report = check_upper_bounds(&m, &es, &pairs[0], &tol());
        assert_eq!(report.verdict, Verdict::Pass);
        assert_eq!(report.quantities["minimal_support"], 1.0);
        assert_eq!(report.quantities["strong"], 1.0);
        assert_eq!(report.quantities["weak"], 1.0);
    }

    #[test]
    fn upper_bounds_on_path() {
        let m = p3_laplacian();
        let es = eigendecompose(&m, &tol()).unwrap();
        let report = check_upper_bounds(&m, &es, &es.pair(1), &tol());
        assert_eq!(report.verdict, Verdict::Pass);
        assert_eq!(report.quantities["strong"], 2.0);
        assert_eq!(report.quantities["k"], 2.0);
    }

    #[test]
    fn duality_identity_examples() {
        let star = SignedGraph::from_matrix(&star_laplacian(), 0.0);
        let report = check_duality_forest(&star, &[0.0, 1.0, -1.0, 0.0], 1e-8, &tol());
        assert_eq!(report.verdict, Verdict::Pass);
        assert_eq!(report.quantities["strong"], 2.0);
        assert_eq!(report.quantities["strong_dual"], 2.0);

        let p3 = SignedGraph::from_matrix(&p3_laplacian(), 0.0);
        let report = check_duality_forest(&p3, &[1.0, 0.0, -1.0], 1e-8, &tol());
        assert_eq!(report.verdict, Verdict::Pass);

        let single = SignedGraph::empty(1);
        let report = check_duality_forest(&single, &[1.0], 1e-8, &tol());
        assert_eq!(report.verdict, Verdict::Pass);

        // cyclic graph: hypothesis fails
        let report = check_duality_forest(&six_vertex_graph(), &[1.0; 6], 1e-8, &tol());
        assert_eq!(report.verdict, Verdict::NotApplicable);
    }

    #[test]
    fn antibalance_iff_saturated_top() {
        let m = six_vertex_matrix();
        let es = eigendecompose(&m, &tol()).unwrap();
        let report = check_antibalance_top(&m, &es, &tol());
        assert_eq!(report.verdict, Verdict::Pass);
        assert_eq!(report.quantities["antibalanced"], 1.0);
        assert_eq!(report.quantities["strong"], 6.0);
        assert_eq!(report.quantities["weak"], 6.0);

        // complete graph with +1 couplings: antibalanced, top pair (1,1,1)
        let k3 = SymMatrix::from_rows(&[
            vec![0.0, 1.0, 1.0],
            vec![1.0, 0.0, 1.0],
            vec![1.0, 1.0, 0.0],
        ])
        .unwrap();
        let es = eigendecompose(&k3, &tol()).unwrap();
        let report = check_antibalance_top(&k3, &es, &tol());
        assert_eq!(report.verdict, Verdict::Pass);
        assert_eq!(report.quantities["antibalanced"], 1.0);

        // bipartite all-positive: the special branch fires
        let m = p3_laplacian();
        let es = eigendecompose(&m, &tol()).unwrap();
        let report = check_antibalance_top(&m, &es, &tol());
        assert_eq!(report.verdict, Verdict::Pass);
        assert_eq!(report.quantities["bipartite_all_positive"], 1.0);
        assert_eq!(report.quantities["strong"], 3.0);
    }

    #[test]
    fn tree_checker_examples() {
        let m = p3_laplacian();
        let es = eigendecompose(&m, &tol()).unwrap();
        // second eigenfunction vanishes at the middle vertex
        let report = check_tree_nowhere_zero(&m, &es, &es.pair(1), &tol());
        assert_eq!(report.verdict, Verdict::NotApplicable);

        let p4 = SymMatrix::from_rows(&[
            vec![1.0, -1.0, 0.0, 0.0],
            vec![-1.0, 2.0, -1.0, 0.0],
            vec![0.0, -1.0, 2.0, -1.0],
            vec![0.0, 0.0, -1.0, 1.0],
        ])
        .unwrap();
        let es = eigendecompose(&p4, &tol()).unwrap();
        let report = check_tree_nowhere_zero(&p4, &es, &es.pair(1), &tol());
        assert_eq!(report.verdict, Verdict::Pass);
        assert_eq!(report.quantities["strong"], 2.0);
    }

    #[test]
    fn fiedler_acyclic_on_path_and_star() {
        let m = p3_laplacian();
        let es = eigendecompose(&m, &tol()).unwrap();
        let report = check_fiedler_acyclic(&m, &es, &es.pair(1), &tol());
        assert_eq!(report.verdict, Verdict::Pass);
        assert_eq!(report.quantities["fiedler"], 0.0);
        assert_eq!(report.quantities["r_tilde"], 1.0);
        assert_eq!(report.quantities["strong"], 2.0);

        let m = star_laplacian();
        let es = eigendecompose(&m, &tol()).unwrap();
        let pair = EigenPair {
            index: 1,
            k: 2,
            r: 2,
            lambda: 1.0,
            f: vec![0.0, 1.0, -1.0, 0.0],
            basis: BasisKind::Solver,
        };
        let report = check_fiedler_acyclic(&m, &es, &pair, &tol());
        assert_eq!(report.verdict, Verdict::Pass, "{:?}", report.counterexample);
        assert_eq!(report.quantities["fiedler"], 1.0);
        assert_eq!(report.quantities["r_tilde"], 1.0);
        assert_eq!(report.quantities["c1"], 0.0);
        assert_eq!(report.quantities["c2"], 0.0);
    }

    #[test]
    fn ell_plus_examples() {
        let g = six_vertex_graph();
        let f5 = [0.82, -0.62, -0.51, -0.62, 1.0, 1.0];
        assert_eq!(ell_plus(&g, &f5, 1e-8).unwrap(), 0);
        let forest = SignedGraph::new(4, vec![(0, 1, Sign::Plus), (2, 3, Sign::Minus)]).unwrap();
        assert_eq!(ell_plus(&forest, &[1.0, 1.0, 1.0, 1.0], 1e-8).unwrap(), 0);
    }

    #[test]
    fn cycle_lower_bound_on_fixture() {
        let m = six_vertex_matrix();
        let es = eigendecompose(&m, &tol()).unwrap();
        let report = check_lower_bound_cycles(&m, &es, &es.pair(4), &tol());
        assert_eq!(report.verdict, Verdict::Pass);
        assert_eq!(report.quantities["strong"], 4.0);
        assert_eq!(report.quantities["ell_plus"], 0.0);
        assert_eq!(report.quantities["ell_prime"], 3.0);
        assert_eq!(report.quantities["bound"], 2.0);
    }

    #[test]
    fn leaf_lower_bound_examples() {
        let m = star_laplacian();
        let es = eigendecompose(&m, &tol()).unwrap();
        let pair = EigenPair {
            index: 1,
            k: 2,
            r: 2,
            lambda: 1.0,
            f: vec![0.0, 1.0, -1.0, 0.0],
            basis: BasisKind::Solver,
        };
        let report = check_lower_bound_leaves(&m, &es, &pair, &tol());
        assert_eq!(report.verdict, Verdict::Pass);
        assert_eq!(report.quantities["bound"], 1.0);
        assert_eq!(report.quantities["strong"], 2.0);

        // no leaves: the bound degenerates but is still asserted
        let k3 = SymMatrix::from_rows(&[
            vec![0.0, 1.0, 1.0],
            vec![1.0, 0.0, 1.0],
            vec![1.0, 1.0, 0.0],
        ])
        .unwrap();
        let es = eigendecompose(&k3, &tol()).unwrap();
        let report = check_lower_bound_leaves(&k3, &es, &es.pair(2), &tol());
        assert_eq!(report.verdict, Verdict::Pass);
        assert_eq!(report.quantities["v_l"], 0.0);

        // mid-cluster index: not applicable
        let m = star_laplacian();
        let es = eigendecompose(&m, &tol()).unwrap();
        let report = check_lower_bound_leaves(&m, &es, &es.pair(2), &tol());
        assert_eq!(report.verdict, Verdict::NotApplicable);
    }

    #[test]
    fn multiplicity_bounds_examples() {
        let m = six_vertex_matrix();
        let es = eigendecompose(&m, &tol()).unwrap();
        let report = check_nowhere_zero_multiplicity(&m, &es, &es.pair(4), &tol());
        assert_eq!(report.verdict, Verdict::Pass);
        assert_eq!(report.quantities["c"], 1.0);
        assert_eq!(report.quantities["ell"], 3.0);

        // two disjoint copies of one edge share their spectrum: c = r = 2
        let twin = SymMatrix::from_rows(&[
            vec![0.0, 1.0, 0.0, 0.0],
            vec![1.0, 0.0, 0.0, 0.0],
            vec![0.0, 0.0, 0.0, 1.0],
            vec![0.0, 0.0, 1.0, 0.0],
        ])
        .unwrap();
        let es = eigendecompose(&twin, &tol()).unwrap();
        let pair = EigenPair {
            index: 0,
            k: 1,
            r: 2,
            lambda: -1.0,
            f: vec![1.0, -1.0, 1.0, -1.0],
            basis: BasisKind::Solver,
        };
        let report = check_nowhere_zero_multiplicity(&twin, &es, &pair, &tol());
        assert_eq!(report.verdict, Verdict::Pass);

        // a nowhere-zero eigenfunction on a tree has a simple eigenvalue
        let p4 = SymMatrix::from_rows(&[
            vec![1.0, -1.0, 0.0, 0.0],
            vec![-1.0, 2.0, -1.0, 0.0],
            vec![0.0, -1.0, 2.0, -1.0],
            vec![0.0, 0.0, -1.0, 1.0],
        ])
        .unwrap();
        let es = eigendecompose(&p4, &tol()).unwrap();
        let report = check_nowhere_zero_multiplicity(&p4, &es, &es.pair(1), &tol());
        assert_eq!(report.verdict, Verdict::Pass);
        assert_eq!(report.quantities["r"], 1.0);
    }

    #[test]
    fn inertia_chain_examples() {
        let m = six_vertex_matrix();
        let es = eigendecompose(&m, &tol()).unwrap();
        let report = check_inertia_edge_bounds(&m, &es, &es.pair(4), &tol());
        assert_eq!(report.verdict, Verdict::Pass, "{:?}", report.counterexample);
        assert_eq!(report.quantities["p"], 1.0);
        assert_eq!(report.quantities["t_edges"], 2.0);
        assert_eq!(report.quantities["h_edges"], 2.0);

        // scalar matrix: empty chain 0 <= 0 <= 0 <= 0
        let scalar = SymMatrix::from_rows(&[
            vec![2.0, 0.0, 0.0],
            vec![0.0, 2.0, 0.0],
            vec![0.0, 0.0, 2.0],
        ])
        .unwrap();
        let es = eigendecompose(&scalar, &tol()).unwrap();
        let pair = EigenPair {
            index: 0,
            k: 1,
            r: 3,
            lambda: 2.0,
            f: vec![1.0, 1.0, 1.0],
            basis: BasisKind::Solver,
        };
        let report = check_inertia_edge_bounds(&scalar, &es, &pair, &tol());
        assert_eq!(report.verdict, Verdict::Pass);
        assert_eq!(report.quantities["p"], 0.0);
        assert_eq!(report.quantities["h_edges"], 0.0);
    }

    #[test]
    fn unique_continuation_examples() {
        let m = six_vertex_matrix();
        let es = eigendecompose(&m, &tol()).unwrap();
        // two weak domains
        let report = check_unique_continuation(&m, &es, &es.pair(3), &tol());
        assert_eq!(report.verdict, Verdict::Pass, "{:?}", report.counterexample);
        assert_eq!(report.quantities["weak"], 2.0);
        assert_eq!(report.quantities["kernel_dim"], 1.0);
        // single weak domain: trivially pass
        let report = check_unique_continuation(&m, &es, &es.pair(0), &tol());
        assert_eq!(report.verdict, Verdict::Pass);
        assert_eq!(report.quantities["weak"], 1.0);
    }

    #[test]
    fn construct_nowhere_zero_on_fixture_tree_and_triangle() {
        let cases = vec![
            six_vertex_graph(),
            SignedGraph::new(
                4,
                vec![(0, 1, Sign::Minus), (1, 2, Sign::Plus), (1, 3, Sign::Minus)],
            )
            .unwrap(),
            SignedGraph::new(
                3,
                vec![(0, 1, Sign::Plus), (1, 2, Sign::Plus), (0, 2, Sign::Minus)],
            )
            .unwrap(),
        ];
        for g in cases {
            let (m, es) = construct_nowhere_zero_first(&g, &tol()).unwrap();
            assert!(g.is_compatible(&m, 0.0).unwrap());
            assert_eq!(es.clusters()[0].size, 1);
            let f1 = es.vector(0);
            assert!(!zero_mask(f1, 1e-8).iter().any(|&b| b));
            let strong = strong_domains(&g, f1, 1e-8).unwrap();
            assert_eq!(strong.count, 1);
        }
        let disconnected = SignedGraph::empty(3);
        assert!(matches!(
            construct_nowhere_zero_first(&disconnected, &tol()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn construct_zero_at_vertex_on_apexed_triangle() {
        // unbalanced triangle with a pendant vertex; removing vertex 1
        // leaves a balanced connected path
        let g = SignedGraph::new(
            4,
            vec![
                (0, 1, Sign::Plus),
                (1, 2, Sign::Plus),
                (0, 2, Sign::Minus),
                (0, 3, Sign::Plus),
            ],
        )
        .unwrap();
        let out = construct_zero_at_vertex(&g, 1, &tol()).unwrap();
        assert_eq!(out.f1[1], 0.0);
        assert!(out
            .f1
            .iter()
            .enumerate()
            .all(|(i, &x)| i == 1 || x.abs() > 1e-6));
        assert!(g.is_compatible(&out.matrix, 0.0).unwrap());
        let mv = out.matrix.matvec(&out.f1);
        let residual = mv
            .iter()
            .zip(&out.f1)
            .map(|(a, b)| (a - out.lambda1 * b).abs())
            .fold(0.0, f64::max);
        assert!(residual <= 1e-9, "residual {residual}");
        // and the eigenvalue really is the bottom of the spectrum
        let es = eigendecompose(&out.matrix, &tol()).unwrap();
        assert!((es.lambda(0) - out.lambda1).abs() <= 1e-9);
    }

    #[test]
    fn construct_zero_at_vertex_preconditions() {
        // balanced graph rejected
        let balanced = SignedGraph::new(3, vec![(0, 1, Sign::Plus), (1, 2, Sign::Plus)]).unwrap();
        match construct_zero_at_vertex(&balanced, 0, &tol()) {
            Err(Error::Precondition(msg)) => assert!(msg.contains("non-balanced")),
            other => panic!("expected precondition error, got {other:?}"),
        }
        // reference fixture, apex 2: the remainder keeps an unbalanced
        // triangle and splits off the {4,5} edge, so both sub-conditions fail
        let g = six_vertex_graph();
        assert!(matches!(
            construct_zero_at_vertex(&g, 2, &tol()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn minimal_support_definitional_test() {
        let space = vec![
            vec![0.0, 1.0, 0.0, -1.0, 0.0, 0.0],
            vec![0.0, 0.0, 0.0, 0.0, 1.0, -1.0],
        ];
        assert!(has_minimal_support(
            &space,
            &[0.0, 1.0, 0.0, -1.0, 0.0, 0.0],
            1e-8,
            1e-10
        ));
        // the sum of both directions does not have minimal support
        assert!(!has_minimal_support(
            &space,
            &[0.0, 1.0, 0.0, -1.0, 1.0, -1.0],
            1e-8,
            1e-10
        ));
    }

    #[test]
    fn eigenfunction_vanishing_on_a_component() {
        // one block carries the eigenfunction, the other is entirely zero:
        // the zeros stay unassigned and all bounds still hold
        let m = SymMatrix::from_rows(&[
            vec![1.0, -1.0, 0.0, 0.0],
            vec![-1.0, 2.0, -1.0, 0.0],
            vec![0.0, -1.0, 1.0, 0.0],
            vec![0.0, 0.0, 0.0, 5.0],
        ])
        .unwrap();
        let es = eigendecompose(&m, &tol()).unwrap();
        // eigenvalues 0, 1, 3 from the path block and 5 from the singleton
        let pair = es.pair(1);
        assert!((pair.lambda - 1.0).abs() < 1e-9);
        let g = SignedGraph::from_matrix(&m, 0.0);
        let weak = weak_domains(&g, &pair.f, tol().zero_tol).unwrap();
        assert_eq!(weak.unassigned_zeros, vec![3]);
        assert_eq!(weak.count, 2);
        let report = check_upper_bounds(&m, &es, &pair, &tol());
        assert_eq!(report.verdict, Verdict::Pass);
        assert_eq!(report.quantities["c"], 2.0);
        let report = check_fiedler_acyclic(&m, &es, &pair, &tol());
        assert_eq!(report.verdict, Verdict::Pass, "{:?}", report.counterexample);
        // the isolated zero has an all-zero neighborhood
        assert_eq!(report.quantities["fiedler"], 1.0);
    }

    #[test]
    fn checkers_fail_on_corrupted_inputs() {
        // negative controls: a wrong eigenvalue position must trip the
        // checks, with the counterexample payload filled in
        let m = six_vertex_matrix();
        let es = eigendecompose(&m, &tol()).unwrap();
        let mut pair = es.pair(3);
        pair.k = 1;
        pair.r = 1;
        let report = check_upper_bounds(&m, &es, &pair, &tol());
        assert_eq!(report.verdict, Verdict::Fail);
        let ce = report.counterexample.expect("payload present");
        assert!(ce.matrix.is_some());
        assert_eq!(ce.eigen_index, Some(3));
        assert!(ce.detail.contains("exceeds"));

        let p3 = p3_laplacian();
        let es = eigendecompose(&p3, &tol()).unwrap();
        let mut pair = es.pair(1);
        pair.k = 3;
        let report = check_fiedler_acyclic(&p3, &es, &pair, &tol());
        assert_eq!(report.verdict, Verdict::Fail);

        // claiming the star's interior eigenfunction sits at the top of the
        // spectrum pushes the leaf bound above its true strong count
        let star = star_laplacian();
        let star_es = eigendecompose(&star, &tol()).unwrap();
        let pair = EigenPair {
            index: 3,
            k: 4,
            r: 1,
            lambda: 1.0,
            f: vec![0.0, 1.0, -1.0, 0.0],
            basis: BasisKind::Solver,
        };
        let report = check_lower_bound_leaves(&star, &star_es, &pair, &tol());
        assert_eq!(report.verdict, Verdict::Fail);

        // a function that is not an eigenfunction breaks the quadratic identity
        let mut pair = es.pair(0);
        pair.f = vec![1.0, 2.0, -0.5];
        let report = check_inertia_edge_bounds(&p3, &es, &pair, &tol());
        assert_eq!(report.verdict, Verdict::Fail);
        assert!(report.quantities["quadratic_identity_error"] > 1e-8);
    }

    #[test]
    fn report_serialization_shape() {
        let m = p3_laplacian();
        let es = eigendecompose(&m, &tol()).unwrap();
        let report = check_upper_bounds(&m, &es, &es.pair(0), &tol());
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["verdict"], "pass");
        assert!(json["quantities"]["strong"].is_number());
        assert!(json["tolerances"]["zero_tol"].is_number());
        assert!(json.get("counterexample").is_none());
        let round: TheoremReport = serde_json::from_value(json).unwrap();
        assert_eq!(round, report);
    }
}
