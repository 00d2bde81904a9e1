//! Strong and weak nodal domains of a function on a signed graph.
//!
//! Both notions live on the nonzero set of the function. Two nonzeros are
//! strongly equivalent when a walk joins them whose every step has positive
//! sign product `f(x) * sign(x,y) * f(y)`; weak equivalence also admits
//! walks through zeros, requiring the positive product only between
//! consecutive nonzeros. A weak domain is a weak class together with the
//! zeros reachable from it through zero walks.
//!
//! The weak relation is computed in linear time per zero component: within
//! one component of the zero set, every connecting segment's sign is either
//! determined by a ±1 potential (when the component's signs are consistent)
//! or free (when they are not, since an inconsistent component contains
//! walks of both signs). Each consistent component therefore acts as two
//! anchors, one per relative sign; an inconsistent one as a single anchor.
//! A separate state-search oracle ([`walk_oracle`]) checks the same
//! relations by explicit walk enumeration on small graphs.

use serde::{Deserialize, Serialize};

use crate::graph::{Sign, SignedGraph};
use crate::spectral::zero_mask;
use crate::union_find::UnionFind;
use crate::{Error, Result};

/// Partition of the nonzero set by strong walks, with the edges that
/// generate it (`f(x) * sign * f(y) > 0`, both endpoints nonzero).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrongDomains {
    pub domains: Vec<Vec<usize>>,
    pub s_edges: Vec<(usize, usize)>,
    pub count: usize,
}

/// Weak classes (nonzeros only), weak domains (classes with absorbed
/// zeros), and the zeros of components no nonzero can reach.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeakDomains {
    pub classes: Vec<Vec<usize>>,
    pub domains: Vec<Vec<usize>>,
    pub unassigned_zeros: Vec<usize>,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodalDecomposition {
    pub strong_domains: Vec<Vec<usize>>,
    pub s_edges: Vec<(usize, usize)>,
    pub count_strong: usize,
    pub weak_classes: Vec<Vec<usize>>,
    pub weak_domains: Vec<Vec<usize>>,
    pub unassigned_zeros: Vec<usize>,
    pub count_weak: usize,
}

/// Adjacency structure on the weak domains: an edge joins two domains that
/// share a vertex or are joined by a graph edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomainAdjacencyGraph {
    pub node_count: usize,
    pub edges: Vec<(usize, usize)>,
}

impl DomainAdjacencyGraph {
    pub fn is_connected(&self) -> bool {
        if self.node_count == 0 {
            return true;
        }
        let mut uf = UnionFind::new(self.node_count);
        for &(a, b) in &self.edges {
            uf.union(a, b);
        }
        uf.groups_of(0..self.node_count).len() == 1
    }
}

fn check_len(g: &SignedGraph, f: &[f64]) -> Result<()> {
    if f.len() != g.n() {
        return Err(Error::SizeMismatch {
            left: f.len(),
            right: g.n(),
        });
    }
    Ok(())
}

/// Connected components of the nonzero set under strong-walk edges. An
/// identically zero function has no domains.
pub fn strong_domains(g: &SignedGraph, f: &[f64], zero_tol: f64) -> Result<StrongDomains> {
    check_len(g, f)?;
    let mask = zero_mask(f, zero_tol);
    if mask.iter().all(|&b| b) {
        return Ok(StrongDomains {
            domains: vec![],
            s_edges: vec![],
            count: 0,
        });
    }
    let mut uf = UnionFind::new(g.n());
    let mut s_edges = Vec::new();
    let mut forest_edges = 0usize;
    for e in g.edges() {
        if mask[e.u] || mask[e.v] {
            continue;
        }
        if f[e.u] * e.sign.value() * f[e.v] > 0.0 {
            s_edges.push((e.u, e.v));
            if uf.union(e.u, e.v) {
                forest_edges += 1;
            }
        }
    }
    let nonzeros = (0..g.n()).filter(|&v| !mask[v]);
    let domains = uf.groups_of(nonzeros);
    let count = domains.len();
    let zeros = mask.iter().filter(|&&b| b).count();
    // spanning-forest identity: count = |V| - z - |E(T_S)|
    debug_assert_eq!(count, g.n() - zeros - forest_edges);
    Ok(StrongDomains {
        domains,
        s_edges,
        count,
    })
}

/// Strong domains of the same function on the negated graph.
pub fn dual_strong_domains(g: &SignedGraph, f: &[f64], zero_tol: f64) -> Result<StrongDomains> {
    strong_domains(&g.negate(), f, zero_tol)
}

struct ZeroComponent {
    members: Vec<usize>,
    /// Walk sign from the component root, when signs are consistent.
    potential: Vec<Sign>,
    consistent: bool,
}

/// Weak classes by the zero-component potential method, weak domains by
/// absorbing each touched component's zeros into every class it borders.
/// Zeros of components no nonzero borders stay unassigned.
pub fn weak_domains(g: &SignedGraph, f: &[f64], zero_tol: f64) -> Result<WeakDomains> {
    check_len(g, f)?;
    let n = g.n();
    let mask = zero_mask(f, zero_tol);
    if mask.iter().all(|&b| b) {
        return Ok(WeakDomains {
            classes: vec![],
            domains: vec![],
            unassigned_zeros: (0..n).collect(),
            count: 0,
        });
    }
    let adj = g.adjacency();

    // zero components with per-vertex potentials
    let mut comp_id = vec![usize::MAX; n];
    let mut potential = vec![Sign::Plus; n];
    let mut components: Vec<ZeroComponent> = Vec::new();
    for root in 0..n {
        if !mask[root] || comp_id[root] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut members = vec![root];
        comp_id[root] = id;
        potential[root] = Sign::Plus;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &(v, sign) in &adj[u] {
                if mask[v] && comp_id[v] == usize::MAX {
                    comp_id[v] = id;
                    potential[v] = potential[u] * sign;
                    members.push(v);
                    queue.push_back(v);
                }
            }
        }
        members.sort_unstable();
        components.push(ZeroComponent {
            members,
            potential: vec![],
            consistent: true,
        });
    }
    // a component is consistent when every internal edge matches the potential
    for e in g.edges() {
        if mask[e.u] && mask[e.v] && potential[e.u] * e.sign * potential[e.v] == Sign::Minus {
            components[comp_id[e.u]].consistent = false;
        }
    }
    for comp in &mut components {
        comp.potential = comp.members.iter().map(|&v| potential[v]).collect();
    }

    // anchors: n + 2*id (positive side), n + 2*id + 1 (negative side)
    let mut uf = UnionFind::new(n + 2 * components.len());
    for e in g.edges() {
        if !mask[e.u] && !mask[e.v] && f[e.u] * e.sign.value() * f[e.v] > 0.0 {
            uf.union(e.u, e.v);
        }
    }
    let mut touched: Vec<Vec<usize>> = vec![Vec::new(); components.len()];
    for e in g.edges() {
        let (w, u, sign) = if !mask[e.u] && mask[e.v] {
            (e.u, e.v, e.sign)
        } else if mask[e.u] && !mask[e.v] {
            (e.v, e.u, e.sign)
        } else {
            continue;
        };
        let id = comp_id[u];
        if components[id].consistent {
            let rel = Sign::of(f[w]) * sign * potential[u];
            let anchor = n + 2 * id + if rel == Sign::Plus { 0 } else { 1 };
            uf.union(w, anchor);
        } else {
            uf.union(w, n + 2 * id);
        }
        touched[id].push(w);
    }

    let classes = uf.groups_of((0..n).filter(|&v| !mask[v]));
    let count = classes.len();

    let mut class_of_root: std::collections::HashMap<usize, usize> = Default::default();
    for (ci, class) in classes.iter().enumerate() {
        class_of_root.insert(uf.find(class[0]), ci);
    }
    let mut absorbed: Vec<std::collections::BTreeSet<usize>> =
        vec![Default::default(); count];
    let mut unassigned_zeros = Vec::new();
    for (id, comp) in components.iter().enumerate() {
        if touched[id].is_empty() {
            unassigned_zeros.extend(comp.members.iter().copied());
            continue;
        }
        let mut class_ids: Vec<usize> = touched[id]
            .iter()
            .map(|&w| class_of_root[&uf.find(w)])
            .collect();
        class_ids.sort_unstable();
        class_ids.dedup();
        for ci in class_ids {
            absorbed[ci].extend(comp.members.iter().copied());
        }
    }
    unassigned_zeros.sort_unstable();

    let domains: Vec<Vec<usize>> = classes
        .iter()
        .zip(&absorbed)
        .map(|(class, zeros)| {
            let mut d: Vec<usize> = class.iter().copied().chain(zeros.iter().copied()).collect();
            d.sort_unstable();
            d
        })
        .collect();

    Ok(WeakDomains {
        classes,
        domains,
        unassigned_zeros,
        count,
    })
}

pub fn decompose(g: &SignedGraph, f: &[f64], zero_tol: f64) -> Result<NodalDecomposition> {
    let strong = strong_domains(g, f, zero_tol)?;
    let weak = weak_domains(g, f, zero_tol)?;
    Ok(NodalDecomposition {
        strong_domains: strong.domains,
        s_edges: strong.s_edges,
        count_strong: strong.count,
        weak_classes: weak.classes,
        weak_domains: weak.domains,
        unassigned_zeros: weak.unassigned_zeros,
        count_weak: weak.count,
    })
}

pub fn domain_adjacency(g: &SignedGraph, weak: &WeakDomains) -> DomainAdjacencyGraph {
    let q = weak.domains.len();
    let mut membership = vec![vec![false; g.n()]; q];
    for (i, d) in weak.domains.iter().enumerate() {
        for &v in d {
            membership[i][v] = true;
        }
    }
    let mut edges = Vec::new();
    for i in 0..q {
        for j in (i + 1)..q {
            let shares_vertex = (0..g.n()).any(|v| membership[i][v] && membership[j][v]);
            let joined = || {
                g.edges().iter().any(|e| {
                    (membership[i][e.u] && membership[j][e.v])
                        || (membership[i][e.v] && membership[j][e.u])
                })
            };
            if shares_vertex || joined() {
                edges.push((i, j));
            }
        }
    }
    DomainAdjacencyGraph {
        node_count: q,
        edges,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WalkKind {
    Strong,
    Weak,
}

pub const WALK_ORACLE_MAX: usize = 16;

/// Independent oracle for the walk relations: explicit breadth-first search
/// over `(vertex, accumulated sign since the last nonzero)` states, with
/// union-find closing the discovered relation. Guarded to small graphs.
pub fn walk_oracle(
    g: &SignedGraph,
    f: &[f64],
    zero_tol: f64,
    kind: WalkKind,
) -> Result<Vec<Vec<usize>>> {
    check_len(g, f)?;
    if g.n() > WALK_ORACLE_MAX {
        return Err(Error::OracleGuard {
            n: g.n(),
            max: WALK_ORACLE_MAX,
        });
    }
    let n = g.n();
    let mask = zero_mask(f, zero_tol);
    if mask.iter().all(|&b| b) {
        return Ok(vec![]);
    }
    let adj = g.adjacency();
    let mut uf = UnionFind::new(n);
    for x in 0..n {
        if mask[x] {
            continue;
        }
        match kind {
            WalkKind::Strong => {
                // reachability along steps with positive product, no zeros
                let mut seen = vec![false; n];
                seen[x] = true;
                let mut queue = std::collections::VecDeque::from([x]);
                while let Some(u) = queue.pop_front() {
                    for &(v, sign) in &adj[u] {
                        if !seen[v] && !mask[v] && f[u] * sign.value() * f[v] > 0.0 {
                            seen[v] = true;
                            uf.union(x, v);
                            queue.push_back(v);
                        }
                    }
                }
            }
            WalkKind::Weak => {
                // segments from x through zeros, tracked by accumulated sign
                let mut seen = vec![[false; 2]; n];
                let mut queue = std::collections::VecDeque::new();
                for &(v, sign) in &adj[x] {
                    if mask[v] {
                        let slot = if sign == Sign::Plus { 0 } else { 1 };
                        if !seen[v][slot] {
                            seen[v][slot] = true;
                            queue.push_back((v, sign));
                        }
                    } else if f[x] * sign.value() * f[v] > 0.0 {
                        uf.union(x, v);
                    }
                }
                while let Some((u, acc)) = queue.pop_front() {
                    for &(v, sign) in &adj[u] {
                        let total = acc * sign;
                        if mask[v] {
                            let slot = if total == Sign::Plus { 0 } else { 1 };
                            if !seen[v][slot] {
                                seen[v][slot] = true;
                                queue.push_back((v, total));
                            }
                        } else if f[x] * total.value() * f[v] > 0.0 {
                            uf.union(x, v);
                        }
                    }
                }
            }
        }
    }
    Ok(uf.groups_of((0..n).filter(|&v| !mask[v])))
}
