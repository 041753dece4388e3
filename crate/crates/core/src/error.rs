use thiserror::Error;

/// Errors raised by lattice construction, enumeration and the number-theoretic routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("empty input: at least one basis vector with one entry is required")]
    EmptyInput,
    #[error("row {row} has length {found}, expected {expected}")]
    RaggedInput { row: usize, expected: usize, found: usize },
    #[error("basis vectors are linearly dependent (Gram determinant is zero)")]
    DependentRows,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("operation requires a full-rank lattice (rank {rank}, dimension {dim})")]
    NotFullRank { rank: usize, dim: usize },
    #[error("dimension {found} exceeds the supported maximum {max}")]
    DimensionTooLarge { found: usize, max: usize },
    #[error("enumeration visited more than {budget} nodes")]
    BudgetExceeded { budget: u64 },
    #[error("no tabulated value for n = {0} (table covers 1..=8)")]
    OutOfTable(usize),
    #[error("{0}")]
    NotDefined(String),
    #[error("{0}")]
    NotApplicable(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl LatticeError {
    /// Stable variant name, used in CLI reports.
    pub fn name(&self) -> &'static str {
        match self {
            LatticeError::EmptyInput => "EmptyInput",
            LatticeError::RaggedInput { .. } => "RaggedInput",
            LatticeError::DependentRows => "DependentRows",
            LatticeError::ShapeMismatch(_) => "ShapeMismatch",
            LatticeError::NotFullRank { .. } => "NotFullRank",
            LatticeError::DimensionTooLarge { .. } => "DimensionTooLarge",
            LatticeError::BudgetExceeded { .. } => "BudgetExceeded",
            LatticeError::OutOfTable(_) => "OutOfTable",
            LatticeError::NotDefined(_) => "NotDefined",
            LatticeError::NotApplicable(_) => "NotApplicable",
            LatticeError::NotPrime(_) => "NotPrime",
            LatticeError::InvalidArgument(_) => "InvalidArgument",
            LatticeError::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, LatticeError>;
