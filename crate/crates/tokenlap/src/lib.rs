//! # tokenlap
//!
//! Token graphs and their Laplacian spectra, checked exactly where exact
//! arithmetic is possible and numerically where it is not.
//!
//! The k-token graph F_k(G) of a graph G on n vertices has the k-subsets of
//! V(G) as vertices, two subsets being adjacent when their symmetric
//! difference is an edge of G. The Laplacians of G and F_k(G) are tied
//! together by the (n; k, h)-inclusion matrices B: identities such as
//! B L_h = L_k B and Bᵀ L_k B = (Bᵀ B) L_h hold entry-for-entry over the
//! integers, and this crate verifies them in checked 64-bit arithmetic.
//! On the numeric side it computes Laplacian spectra, checks spectrum
//! containment between token graphs, pairs eigenvalues of F_k(G) and
//! F_k(complement of G) against the Johnson spectrum, and scans graph6
//! corpora for the equality of algebraic connectivity between G and F_k(G).
//!
//! ## Layout
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`combinatorics`] | binomials, subset ranking, sparse exact integer matrices |
//! | [`graph`] | bitset graphs on up to 62 vertices, graph6 I/O, named families |
//! | [`enumerate`] | isomorphism-reduced enumeration of small graphs |
//! | [`token`] | token graph construction, Laplacian/adjacency/incidence matrices |
//! | [`identities`] | exact matrix identities between token-graph Laplacians |
//! | [`eigen`] | dense symmetric eigensolver (Householder + implicit-shift QL) |
//! | [`spectral`] | spectra, containment, algebraic connectivity, pairing |
//! | [`closed`] | closed-form spectra for Johnson, odd, and doubled families |
//! | [`iso`] | explicit isomorphisms between star token graphs and inclusion graphs |
//! | [`scan`] | corpus scanners and JSON-lines reports |
//! | [`cli`] | the `tokenlap` command-line interface |
//!
//! Everything on the exact side treats overflow as an error, never as
//! wraparound; everything on the numeric side pins its tolerances as named
//! constants next to the code that uses them.

use thiserror::Error;

pub mod cli;
pub mod closed;
pub mod combinatorics;
pub mod eigen;
pub mod enumerate;
pub mod graph;
pub mod identities;
pub mod iso;
pub mod scan;
pub mod spectral;
pub mod token;

pub use combinatorics::{binom, inclusion_matrix, SparseIntMatrix, SubsetIndex, VertexSubset};
pub use eigen::{eigh_sym, DenseMatrix, EigenDecomposition};
pub use graph::{Graph, GraphFamilySpec, Orientation};
pub use spectral::Spectrum;
pub use token::TokenGraph;

/// Largest vertex count a [`Graph`] may have; keeps every graph inside the
/// single-byte graph6 size header and a u64 bitset per vertex.
pub const MAX_VERTICES: usize = 62;

/// Largest vertex count a [`TokenGraph`] may have.
pub const MAX_TOKEN_VERTICES: usize = 20_000;

/// Largest matrix dimension accepted by the dense eigensolver.
pub const MAX_EIGEN_DIM: usize = 4_000;

#[derive(Debug, Error)]
pub enum Error {
    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    #[error("size cap exceeded: {0}")]
    CapExceeded(String),

    #[error("matrix is singular")]
    Singular,

    #[error("exact solve produced a non-integer entry at ({0}, {1})")]
    NonIntegerSolution(usize, usize),

    #[error("eigensolver did not converge within the sweep budget")]
    NonConvergence,

    #[error("zero vector")]
    ZeroVector,

    #[error("pairing residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    PairingResidual { residual: f64, tol: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
