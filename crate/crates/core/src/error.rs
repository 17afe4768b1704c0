use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),

    #[error("invalid split: {0}")]
    InvalidSplit(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("entity ({dim}, {id}) does not exist")]
    InvalidEntity { dim: usize, id: usize },

    #[error("facet ({dim}, {id}) is not interior to the split")]
    NotInterior { dim: usize, id: usize },

    #[error("complexes are incompatible: neither refines the other")]
    IncompatibleComplexes,

    #[error("point {0:?} lies outside the cell")]
    PointOutside(Vec<f64>),

    #[error("degenerate cell: |det| = {0:e}")]
    DegenerateCell(f64),

    #[error("nodes are not unisolvent (cond = {cond:e}); near-null coefficient vector {null_vector:?}")]
    NotUnisolvent { cond: f64, null_vector: Vec<f64> },

    #[error("singular linear system: {0}")]
    SingularSystem(String),

    #[error("unknown element '{0}'")]
    UnknownElement(String),

    #[error("element incompatible with request: {0}")]
    Incompatible(String),

    #[error("zero error value at level {0}")]
    ZeroError(usize),
}

impl Error {
    /// True for failures caused by floating-point breakdown rather than bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NotUnisolvent { .. } | Error::DegenerateCell(_) | Error::SingularSystem(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
