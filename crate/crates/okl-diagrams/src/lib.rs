//! Symbolic calculus on the truncated tree basis of the open KPZ expansion
//! and the Feynman-diagram power-counting checks behind its moment bounds.
//!
//! The crate has two layers. The symbolic layer ([`symbol`], [`product`])
//! carries the 25 basis trees with their homogeneities (kept exact, with
//! the regularity exponent `kappa` symbolic) and reflection parities, and
//! the truncated commutative product. The diagram layer ([`contraction`],
//! [`graph`]) expands the covariance of two tree realizations into Wick
//! contractions, reduces each contraction to a weighted multigraph, and
//! decides convergence and blow-up exponents by subset power counting.

pub mod contraction;
pub mod graph;
pub mod product;
pub mod symbol;

pub use contraction::{enumerate_contractions, simplify, ContractionGraph, NodeLabel, SimplifiedMultigraph};
pub use graph::{check_convergent, degree, gamma, gamma_table, Verdict};
pub use product::product;
pub use symbol::{parity, symbol, symbol_table, Homogeneity, Kind, Rational, Tree, TreeSymbol};

/// Errors of the symbolic and diagram layers.
#[derive(Debug, thiserror::Error)]
pub enum DiagramError {
    /// A product operand outside the admissible (gradient-lift or
    /// polynomial) set.
    #[error("symbol `{0}` is not admissible for the truncated product")]
    InadmissibleOperand(String),
    /// Degree of the empty vertex set is undefined.
    #[error("degree of the empty vertex subset is undefined")]
    EmptySubset,
    /// A subset referenced a vertex id outside the graph.
    #[error("vertex id {0} is not in the graph")]
    UnknownVertex(usize),
    /// `gamma` was requested for a graph that fails the convergence check.
    #[error("graph is divergent: subset {witness:?} has degree {degree}")]
    DivergentGraph {
        /// Offending vertex subset.
        witness: Vec<usize>,
        /// Its (non-positive) degree.
        degree: i64,
    },
    /// The exhaustive and shortcut convergence checks disagreed; this is a
    /// bug trap, not a user error.
    #[error("internal consistency failure: {0}")]
    InternalInconsistency(String),
}
