use thiserror::Error;

/// Result alias used across the crate.
pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("{0} is not a unit and has no inverse")]
    NonUnitInverse(u64),

    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),

    #[error("gram matrix is not symmetric")]
    NotSymmetric,

    #[error("form is degenerate: {0}")]
    Degenerate(String),

    #[error("pfister slot {index} ({value}) is not a unit")]
    NonUnitSlot { index: usize, value: u64 },

    #[error("rows do not span a free direct summand: residue rank {rank} < {rows}")]
    NotASummand { rank: usize, rows: usize },

    #[error("map is not surjective: residue rank {rank} < {target}")]
    NotSurjective { rank: usize, target: usize },

    #[error("matrix is not invertible over the ring")]
    NotInvertible,

    #[error("reflection vector has non-unit norm {0}")]
    NonUnitNorm(u64),

    #[error("vector or subspace is not isotropic")]
    NotIsotropic,

    #[error("vector is not unimodular")]
    NotUnimodular,

    #[error("wrong dimension: expected {expected}, got {got}")]
    WrongDimension { expected: usize, got: usize },

    #[error("form is not hyperbolic: witt index {index}, rank {rank}")]
    NotHyperbolic { index: usize, rank: usize },

    #[error("matrix does not preserve the form")]
    NotAnIsometry,

    #[error("no meeting lagrangian found over this field (strata {strata:?})")]
    Exhausted {
        /// `(meet_dim, count)` census of all maximal isotropic subspaces,
        /// when enumeration was affordable.
        strata: Option<Vec<(usize, u64)>>,
    },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("no deflecting reflection exists over the residue field")]
    NoDeflection,

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),

    #[error("parse error: {0}")]
    Parse(String),
}
