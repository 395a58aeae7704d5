use thiserror::Error;

use crate::label::LeafId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid leaf label `{0}`")]
    BadLabel(String),
    #[error("newick: {0}")]
    Newick(String),
    #[error("the three leaves of a triple must be pairwise distinct")]
    DegenerateTriple,
    #[error("the four leaves of a quartet must be pairwise distinct")]
    DegenerateQuartet,
    #[error("leaf {0:?} is missing from the relevant leaf set")]
    MissingLeaf(LeafId),
    #[error("leaf sets differ")]
    LeafSetMismatch,
    #[error("operation needs a non-empty leaf set")]
    EmptyLeafSet,
    #[error("triple set is inconsistent")]
    Inconsistent,
    #[error("triple is not in the closure")]
    NotInClosure,
    #[error("triple does not belong to the set")]
    TripleNotInSet,
    #[error("not a subset of the reference triple set")]
    NotASubset,
    #[error("subset is not representative (closures differ)")]
    NotRepresentative,
    #[error("{0} is not a minimal representative set")]
    NotABasis(String),
    #[error("triple has no weight assigned")]
    MissingWeight,
    #[error("weights must be finite and non-negative, got {0}")]
    InvalidWeight(f64),
    #[error("order must be a permutation of 0..{0}")]
    InvalidOrder(usize),
    #[error("set family is not a hierarchy")]
    NotAHierarchy,
    #[error("{what}: instance size {actual} exceeds the brute-force cap of {limit}")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },
}
