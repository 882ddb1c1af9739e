use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors surfaced by algebra construction and the complex builders.
#[derive(Debug, Error)]
pub enum Error {
    #[error("law is not a Leibniz algebra: residual nonzero at triple ({0}, {1}, {2})")]
    NotLeibniz(usize, usize, usize),
    #[error("law is not a Lie algebra: {0}")]
    NotLie(String),
    #[error("subspace is not a two-sided ideal: closure fails at {0}")]
    NotAnIdeal(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("action is not a right module: axiom fails at triple ({0}, {1}, {2})")]
    NotRightModule(usize, usize, usize),
    #[error("module is not symmetric: left action differs from minus right action at {0}")]
    NotSymmetricModule(usize),
    #[error("bad module: {0}")]
    BadModule(String),
    #[error("map is not an algebra morphism: fails on basis pair ({0}, {1})")]
    NotAMorphism(usize, usize),
    #[error("map is not surjective (rank {rank} < target dimension {dim})")]
    NotSurjective { rank: usize, dim: usize },
    #[error("subspace is not a subalgebra: bracket of basis vectors {0} and {1} leaves the span")]
    NotASubalgebra(usize, usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("map is not a chain map at degree {0}")]
    NotAChainMap(usize),
    #[error("composition of consecutive maps is nonzero at degree {0}")]
    CompositionNotZero(usize),
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("unknown constructor name: {0}")]
    UnknownName(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
