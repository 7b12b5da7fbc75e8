use alloc::string::String;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JetError {
    #[error("cannot take the {k}-jet of a jet known only up to order {order}")]
    TruncationBeyondOrder { k: u32, order: u32 },
    #[error("jet has zero constant term and is not invertible")]
    NotAUnit,
    #[error("substitution must preserve the origin (nonzero constant term)")]
    NonzeroConstantTerm,
    #[error("{func} of an argument with nonzero constant term has an irrational constant; pre-multiply it out")]
    TranscendentalConstant { func: &'static str },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unexpected {0}")]
    UnexpectedToken(String),
    #[error("unknown identifier {0:?}")]
    UnknownIdentifier(String),
    #[error("exponent must be an integer constant")]
    NonIntegerExponent,
    #[error("division by a series with zero constant term")]
    DivisionByNonUnit,
    #[error("{0} of an argument with nonzero constant term is not supported; pre-multiply the constant factor")]
    TranscendentalConstant(&'static str),
}

/// Expression parse failure with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at position {position}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("Jacobian of the diffeomorphism is singular at the origin")]
    SingularJacobian,
    #[error("vector field vanishes at the origin")]
    SingularField,
    #[error("parameter vector has {got} entries, family has {expected}")]
    Arity { expected: usize, got: usize },
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error("an ideal needs at least one generator")]
    NoGenerators,
    #[error("normal form has no finite codimension")]
    InfiniteCodimension,
    #[error(transparent)]
    Jet(#[from] JetError),
}
