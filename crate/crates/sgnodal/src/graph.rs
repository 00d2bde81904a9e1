//! Signed graphs: construction from symmetric matrices, switching, balance,
//! connectivity, cycle-space dimension, and tree-like vertices.
//!
//! Text format (read/write): first line `n m`, then `m` lines `u v s` with
//! 0-based endpoints and `s` one of `+`/`-`. `#` starts a comment.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::Mul;

use crate::matrix::{significant_lines, SymMatrix};
use crate::union_find::UnionFind;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// Sign of a nonzero real.
    pub fn of(x: f64) -> Sign {
        if x < 0.0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Per-vertex ±1 labeling used to switch edge signs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwitchingFunction(pub Vec<Sign>);

impl SwitchingFunction {
    pub fn all_plus(n: usize) -> SwitchingFunction {
        SwitchingFunction(vec![Sign::Plus; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn at(&self, v: usize) -> Sign {
        self.0[v]
    }

    /// The ±1.0 vector, handy for diagonal conjugation and function scaling.
    pub fn values(&self) -> Vec<f64> {
        self.0.iter().map(|s| s.value()).collect()
    }

    /// Applies the labeling pointwise to a function on the vertices.
    pub fn apply(&self, f: &[f64]) -> Result<Vec<f64>> {
        if f.len() != self.0.len() {
            return Err(Error::SizeMismatch {
                left: f.len(),
                right: self.0.len(),
            });
        }
        Ok(self.0.iter().zip(f).map(|(s, v)| s.value() * v).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub sign: Sign,
}

/// Undirected simple graph with ±1 edge signs. Edges are stored sorted by
/// `(u, v)` with `u < v`, one entry per unordered pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedGraph {
    n: usize,
    edges: Vec<Edge>,
}

/// Cycle-space dimension data: `ell = |E| - |V| + c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleSpaceInfo {
    pub num_edges: usize,
    pub num_vertices: usize,
    pub num_components: usize,
    pub ell: usize,
}

/// Vertex partition into connected components, ordered by smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    pub sets: Vec<Vec<usize>>,
}

impl Components {
    pub fn count(&self) -> usize {
        self.sets.len()
    }
}

impl SignedGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize, Sign)>) -> Result<SignedGraph> {
        let mut normalized = Vec::with_capacity(edges.len());
        for (u, v, sign) in edges {
            if u == v {
                return Err(Error::InvalidEdge(format!("self-loop at vertex {u}")));
            }
            let (a, b) = (u.min(v), u.max(v));
            if b >= n {
                return Err(Error::VertexOutOfRange { v: b, n });
            }
            normalized.push(Edge { u: a, v: b, sign });
        }
        normalized.sort_by_key(|e| (e.u, e.v));
        for w in normalized.windows(2) {
            if w[0].u == w[1].u && w[0].v == w[1].v {
                return Err(Error::InvalidEdge(format!(
                    "duplicate edge {{{}, {}}}",
                    w[0].u, w[0].v
                )));
            }
        }
        Ok(SignedGraph { n, edges: normalized })
    }

    pub fn empty(n: usize) -> SignedGraph {
        SignedGraph { n, edges: vec![] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Graph induced by the nonzero off-diagonal entries of `m`: an edge is
    /// present when `|M_ij| > zero_tol` and carries the sign `-M_ij/|M_ij|`.
    pub fn from_matrix(m: &SymMatrix, zero_tol: f64) -> SignedGraph {
        let n = m.n();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let v = m.get(i, j);
                if v.abs() > zero_tol {
                    let sign = if v < 0.0 { Sign::Plus } else { Sign::Minus };
                    edges.push(Edge { u: i, v: j, sign });
                }
            }
        }
        SignedGraph { n, edges }
    }

    /// True when `m` induces exactly this signed graph.
    pub fn is_compatible(&self, m: &SymMatrix, zero_tol: f64) -> Result<bool> {
        if m.n() != self.n {
            return Err(Error::SizeMismatch {
                left: m.n(),
                right: self.n,
            });
        }
        Ok(Self::from_matrix(m, zero_tol) == *self)
    }

    /// Multiplies each edge sign by `tau(u) * tau(v)`. Involution for fixed tau.
    pub fn switch(&self, tau: &SwitchingFunction) -> Result<SignedGraph> {
        if tau.len() != self.n {
            return Err(Error::SizeMismatch {
                left: tau.len(),
                right: self.n,
            });
        }
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                u: e.u,
                v: e.v,
                sign: tau.at(e.u) * e.sign * tau.at(e.v),
            })
            .collect();
        Ok(SignedGraph { n: self.n, edges })
    }

    /// Flips every edge sign.
    pub fn negate(&self) -> SignedGraph {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                u: e.u,
                v: e.v,
                sign: e.sign.flip(),
            })
            .collect();
        SignedGraph { n: self.n, edges }
    }

    /// Sorted neighbor lists with edge signs.
    pub fn adjacency(&self) -> Vec<Vec<(usize, Sign)>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.u].push((e.v, e.sign));
            adj[e.v].push((e.u, e.sign));
        }
        for list in &mut adj {
            list.sort_unstable_by_key(|&(v, _)| v);
        }
        adj
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|e| e.u == v || e.v == v)
            .count()
    }

    pub fn edge_sign(&self, u: usize, v: usize) -> Option<Sign> {
        let (a, b) = (u.min(v), u.max(v));
        self.edges
            .binary_search_by_key(&(a, b), |e| (e.u, e.v))
            .ok()
            .map(|i| self.edges[i].sign)
    }

    /// Product of edge signs along a walk; consecutive vertices must be adjacent.
    pub fn sign_of_walk(&self, walk: &[usize]) -> Result<Sign> {
        let mut sign = Sign::Plus;
        for w in walk.windows(2) {
            for &v in w {
                if v >= self.n {
                    return Err(Error::VertexOutOfRange { v, n: self.n });
                }
            }
            match self.edge_sign(w[0], w[1]) {
                Some(s) => sign = sign * s,
                None => return Err(Error::NotAdjacent { u: w[0], v: w[1] }),
            }
        }
        Ok(sign)
    }

    /// Connected components via union-find; sets ordered by smallest index.
    pub fn components(&self) -> Components {
        let mut uf = UnionFind::new(self.n);
        for e in &self.edges {
            uf.union(e.u, e.v);
        }
        Components {
            sets: uf.groups_of(0..self.n),
        }
    }

    pub fn cycle_space(&self) -> CycleSpaceInfo {
        let c = self.components().count();
        CycleSpaceInfo {
            num_edges: self.edges.len(),
            num_vertices: self.n,
            num_components: c,
            ell: self.edges.len() + c - self.n,
        }
    }

    /// Per-component BFS from the smallest index assigning `tau(root) = +`
    /// and `tau(v) = tau(u) * sign(u,v)` along tree edges. Returns the tree
    /// edges (the spanning forest) and the labeling; switching by it makes
    /// every forest edge positive.
    pub fn spanning_forest_positive_switch(&self) -> (Vec<(usize, usize)>, SwitchingFunction) {
        let adj = self.adjacency();
        let mut tau = vec![Sign::Plus; self.n];
        let mut seen = vec![false; self.n];
        let mut forest = Vec::new();
        let mut queue = std::collections::VecDeque::new();
        for root in 0..self.n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                for &(v, sign) in &adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        tau[v] = tau[u] * sign;
                        forest.push((u.min(v), u.max(v)));
                        queue.push_back(v);
                    }
                }
            }
        }
        forest.sort_unstable();
        (forest, SwitchingFunction(tau))
    }

    /// A graph is balanced when every cycle has positive sign; equivalently
    /// when some switching makes every edge positive. On success the
    /// certificate labeling is returned.
    pub fn balance_certificate(&self) -> Option<SwitchingFunction> {
        let (_, tau) = self.spanning_forest_positive_switch();
        let switched = self.switch(&tau).expect("labeling has matching length");
        if switched.edges.iter().all(|e| e.sign == Sign::Plus) {
            Some(tau)
        } else {
            None
        }
    }

    pub fn is_balanced(&self) -> bool {
        self.balance_certificate().is_some()
    }

    /// Antibalanced: the negation is balanced (every odd cycle negative,
    /// every even cycle positive).
    pub fn is_antibalanced(&self) -> bool {
        self.negate().is_balanced()
    }

    /// Two-colorability of the underlying graph, ignoring signs.
    pub fn is_bipartite(&self) -> bool {
        let adj = self.adjacency();
        let mut color = vec![2u8; self.n];
        for root in 0..self.n {
            if color[root] != 2 {
                continue;
            }
            color[root] = 0;
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for &(v, _) in &adj[u] {
                    if color[v] == 2 {
                        color[v] = 1 - color[u];
                        queue.push_back(v);
                    } else if color[v] == color[u] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Edges whose removal disconnects their endpoints, found by lowlink DFS.
    pub fn bridges(&self) -> Vec<(usize, usize)> {
        let adj = self.adjacency_with_ids();
        let mut disc = vec![usize::MAX; self.n];
        let mut low = vec![usize::MAX; self.n];
        let mut timer = 0usize;
        let mut out = Vec::new();
        // frame: (vertex, edge id into it, next adjacency slot)
        let mut stack: Vec<(usize, usize, usize)> = Vec::new();
        for start in 0..self.n {
            if disc[start] != usize::MAX {
                continue;
            }
            disc[start] = timer;
            low[start] = timer;
            timer += 1;
            stack.push((start, usize::MAX, 0));
            while let Some(frame) = stack.last_mut() {
                let (v, parent_edge, idx) = (frame.0, frame.1, frame.2);
                if idx < adj[v].len() {
                    frame.2 += 1;
                    let (to, eid) = adj[v][idx];
                    if eid == parent_edge {
                        continue;
                    }
                    if disc[to] == usize::MAX {
                        disc[to] = timer;
                        low[to] = timer;
                        timer += 1;
                        stack.push((to, eid, 0));
                    } else {
                        low[v] = low[v].min(disc[to]);
                    }
                } else {
                    stack.pop();
                    if let Some(parent) = stack.last() {
                        let p = parent.0;
                        low[p] = low[p].min(low[v]);
                        if low[v] > disc[p] {
                            let e = &self.edges[parent_edge];
                            out.push((e.u, e.v));
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Vertices lying on no cycle: every incident edge is a bridge.
    /// Removing such a vertex raises the component count by `deg - 1`.
    pub fn tree_like_vertices(&self) -> Vec<usize> {
        let bridges: std::collections::HashSet<(usize, usize)> =
            self.bridges().into_iter().collect();
        let mut on_cycle = vec![false; self.n];
        for e in &self.edges {
            if !bridges.contains(&(e.u, e.v)) {
                on_cycle[e.u] = true;
                on_cycle[e.v] = true;
            }
        }
        (0..self.n).filter(|&v| !on_cycle[v]).collect()
    }

    /// One cycle per non-forest edge: the forest path between its endpoints
    /// closed by the edge, returned as a closed vertex walk.
    pub fn fundamental_cycles(&self) -> Vec<Vec<usize>> {
        let (forest, _) = self.spanning_forest_positive_switch();
        let forest_set: std::collections::HashSet<(usize, usize)> = forest.into_iter().collect();
        let mut tree_adj = vec![Vec::new(); self.n];
        for &(u, v) in &forest_set {
            tree_adj[u].push(v);
            tree_adj[v].push(u);
        }
        let mut cycles = Vec::new();
        for e in &self.edges {
            if forest_set.contains(&(e.u, e.v)) {
                continue;
            }
            if let Some(mut path) = tree_path(&tree_adj, e.u, e.v) {
                path.push(e.u);
                cycles.push(path);
            }
        }
        cycles
    }

    /// Induced subgraph on `keep` (ascending order), relabeling vertices to
    /// `0..keep.len()`. Also returns the old-to-new index map.
    pub fn induced_subgraph(&self, keep: &[usize]) -> Result<(SignedGraph, Vec<Option<usize>>)> {
        let mut kept: Vec<usize> = keep.to_vec();
        kept.sort_unstable();
        kept.dedup();
        let mut map = vec![None; self.n];
        for (new, &old) in kept.iter().enumerate() {
            if old >= self.n {
                return Err(Error::VertexOutOfRange { v: old, n: self.n });
            }
            map[old] = Some(new);
        }
        let edges = self
            .edges
            .iter()
            .filter_map(|e| match (map[e.u], map[e.v]) {
                (Some(a), Some(b)) => Some(Edge {
                    u: a,
                    v: b,
                    sign: e.sign,
                }),
                _ => None,
            })
            .collect();
        Ok((
            SignedGraph {
                n: kept.len(),
                edges,
            },
            map,
        ))
    }

    pub fn parse(text: &str) -> Result<SignedGraph> {
        let lines = significant_lines(text);
        let mut it = lines.iter();
        let (head_no, head) = it.next().ok_or_else(|| Error::Parse {
            line: 1,
            msg: "empty input; expected 'n m' header".into(),
        })?;
        if head.len() != 2 {
            return Err(Error::Parse {
                line: *head_no,
                msg: format!("expected 'n m' header, found {} tokens", head.len()),
            });
        }
        let n: usize = head[0].parse().map_err(|_| Error::Parse {
            line: *head_no,
            msg: format!("invalid vertex count '{}'", head[0]),
        })?;
        let m: usize = head[1].parse().map_err(|_| Error::Parse {
            line: *head_no,
            msg: format!("invalid edge count '{}'", head[1]),
        })?;
        let mut edges = Vec::with_capacity(m);
        for (line, toks) in it {
            if toks.len() != 3 {
                return Err(Error::Parse {
                    line: *line,
                    msg: format!("expected 'u v s', found {} tokens", toks.len()),
                });
            }
            let u: usize = toks[0].parse().map_err(|_| Error::Parse {
                line: *line,
                msg: format!("invalid vertex '{}'", toks[0]),
            })?;
            let v: usize = toks[1].parse().map_err(|_| Error::Parse {
                line: *line,
                msg: format!("invalid vertex '{}'", toks[1]),
            })?;
            let sign = match toks[2] {
                "+" | "+1" => Sign::Plus,
                "-" | "-1" => Sign::Minus,
                other => {
                    return Err(Error::Parse {
                        line: *line,
                        msg: format!("invalid sign '{other}', expected '+' or '-'"),
                    })
                }
            };
            edges.push((u, v, sign));
        }
        if edges.len() != m {
            return Err(Error::Parse {
                line: lines.last().map(|(l, _)| *l).unwrap_or(1),
                msg: format!("header promises {m} edges, found {}", edges.len()),
            });
        }
        SignedGraph::new(n, edges)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for e in &self.edges {
            out.push_str(&format!("{} {} {}\n", e.u, e.v, e.sign));
        }
        out
    }

    fn adjacency_with_ids(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (id, e) in self.edges.iter().enumerate() {
            adj[e.u].push((e.v, id));
            adj[e.v].push((e.u, id));
        }
        adj
    }
}

fn tree_path(tree_adj: &[Vec<usize>], from: usize, to: usize) -> Option<Vec<usize>> {
    let mut prev = vec![usize::MAX; tree_adj.len()];
    let mut queue = std::collections::VecDeque::new();
    prev[from] = from;
    queue.push_back(from);
    while let Some(u) = queue.pop_front() {
        if u == to {
            break;
        }
        for &v in &tree_adj[u] {
            if prev[v] == usize::MAX {
                prev[v] = u;
                queue.push_back(v);
            }
        }
    }
    if prev[to] == usize::MAX {
        return None;
    }
    let mut path = vec![to];
    let mut cur = to;
    while cur != from {
        cur = prev[cur];
        path.push(cur);
    }
    path.reverse();
    Some(path)
}
