//! Strong and weak nodal domains of eigenfunctions on signed graphs.
//!
//! A real symmetric matrix induces a signed graph: vertices are indices,
//! edges are the nonzero off-diagonal entries, and each edge carries the
//! sign `-M_ij / |M_ij|`. An eigenfunction of the matrix partitions the
//! graph into nodal domains; on signed graphs the partition is defined
//! through sign-consistent walks rather than raw vertex signs, which makes
//! it invariant under switching (simultaneous sign flips at vertices).
//!
//! The crate computes these decompositions, checks every bound and identity
//! they satisfy (upper bounds against eigenvalue position and multiplicity,
//! a duality identity on forests, cycle- and leaf-based lower bounds, a
//! multiplicity formula for acyclic matrices, inertia/edge-count bounds,
//! unique continuation), and carries two constructive procedures that
//! produce matrices whose first eigenfunction has a prescribed zero pattern.
//!
//! Layout:
//! - [`matrix`]: dense symmetric matrices and their text format
//! - [`graph`]: signed graphs, switching, balance, tree-like vertices
//! - [`spectral`]: Jacobi eigendecomposition, eigenvalue clustering,
//!   minimal-support bases, zero classification
//! - [`nodal`]: strong/weak domain decompositions and the walk oracle
//! - [`theorems`]: executable checkers and the two constructions
//! - [`harness`]: seeded instance generators and property suites
//! - [`analysis`]: full per-matrix reports for the CLI
//!
//! Quick start:
//!
//! ```rust
//! use sgnodal::{SignedGraph, SymMatrix, Tolerances};
//! use sgnodal::spectral::eigendecompose;
//! use sgnodal::nodal::{strong_domains, weak_domains};
//!
//! // path Laplacian on three vertices
//! let m = SymMatrix::parse("3\n1 -1 0\n-1 2 -1\n0 -1 1\n")?;
//! let g = SignedGraph::from_matrix(&m, 0.0);
//! let es = eigendecompose(&m, &Tolerances::default())?;
//!
//! // the second eigenfunction vanishes in the middle: two strong domains,
//! // and two weak domains overlapping at the zero vertex
//! let f = es.vector(1);
//! assert_eq!(strong_domains(&g, f, 1e-8)?.count, 2);
//! assert_eq!(weak_domains(&g, f, 1e-8)?.domains, vec![vec![0, 1], vec![1, 2]]);
//! # Ok::<(), sgnodal::Error>(())
//! ```

#![forbid(unsafe_code)]

use thiserror::Error;

pub mod analysis;
pub mod graph;
pub mod harness;
pub mod matrix;
pub mod nodal;
pub mod rng;
pub mod spectral;
pub mod theorems;
mod union_find;

pub use graph::{Sign, SignedGraph, SwitchingFunction};
pub use matrix::SymMatrix;
pub use spectral::{EigenSystem, Tolerances, ZeroPattern};

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: row {row} has {got} entries, expected {expected}")]
    NotSquare {
        row: usize,
        got: usize,
        expected: usize,
    },
    #[error("matrix is not symmetric: |M[{i}][{j}] - M[{j}][{i}]| = {delta:e}")]
    NotSymmetric { i: usize, j: usize, delta: f64 },
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("vertex index {v} out of range for {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("invalid edge list: {0}")]
    InvalidEdge(String),
    #[error("vertices {u} and {v} are not adjacent")]
    NotAdjacent { u: usize, v: usize },
    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {offdiag:e})")]
    NoConvergence { sweeps: usize, offdiag: f64 },
    #[error("numerical rank {rank} is below the vector count {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("function is identically zero")]
    ZeroFunction,
    #[error("walk oracle guard: {n} vertices exceeds the limit {max}")]
    OracleGuard { n: usize, max: usize },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("precondition: {0}")]
    Precondition(String),
    #[error("construction failed after {attempts} attempts: {detail}")]
    ConstructionFailed { attempts: usize, detail: String },
    #[error("unknown suite '{got}'; available: {available}")]
    UnknownSuite { got: String, available: String },
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
