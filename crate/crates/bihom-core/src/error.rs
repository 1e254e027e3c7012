//! Shared error type for the engine.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by the zero scalar")]
    DivisionByZero,
    #[error("denominator vanishes at the given point")]
    PoleAtPoint,
    #[error("parameter `{0}` has no assigned value")]
    MissingAssignment(String),
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { name: String, offset: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("kind mismatch: {0}")]
    KindMismatch(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("linear map is singular over the scalar field")]
    Singular,
    #[error("`{map}` is not a morphism: {condition}")]
    NotAMorphism { map: String, condition: String },
    #[error("twisting maps do not commute: {0}")]
    NonCommutingMaps(String),
    #[error("tensor factor must be BiHom-commutative")]
    CommutativityRequired,
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("document is not fully numeric: {0}")]
    NotNumeric(String),
    #[error("{slots} free slots give {total} candidates, over budget {budget}")]
    BudgetExceeded {
        slots: usize,
        total: u128,
        budget: u128,
    },
    #[error("unknown catalog id `{0}`")]
    UnknownId(String),
    #[error("invalid document: {0}")]
    InvalidDocument(String),
    #[error("{path}: {source}")]
    At {
        path: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Wrap an error with the document field path it came from.
    pub fn at(self, path: impl Into<String>) -> Error {
        Error::At {
            path: path.into(),
            source: Box::new(self),
        }
    }

    /// The innermost error, unwrapping any field-path context.
    pub fn root(&self) -> &Error {
        match self {
            Error::At { source, .. } => source.root(),
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
