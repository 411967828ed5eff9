use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SeriesError {
    #[error("series belong to different contexts")]
    ContextMismatch,
    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("constant term is not an invertible rational: {0}")]
    NonUnit(String),
    #[error("exp needs a series of positive weight, found `{0}`")]
    ExpConstantTerm(String),
    #[error("log needs constant term exactly 1, found `{0}`")]
    LogConstantTerm(String),
    #[error("series is not divisible by {0}")]
    NotDivisible(String),
    #[error("substitution target `{0}` has weight 0")]
    WeightZeroTarget(String),
    #[error("shift by a weight-0 scalar does not terminate")]
    WeightZeroShift,
    #[error("series contains positive powers of u (or a u^0 term) where only u^-1.. is allowed")]
    PositivePowers,
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CartanError {
    #[error("matrix is not square ({0} rows, {1} columns)")]
    NotSquare(usize, usize),
    #[error("diagonal entry a_{0}{0} is {1}, expected 2")]
    Diagonal(usize, i64),
    #[error("off-diagonal entry a_{0}{1} = {2} is positive")]
    OffDiagonal(usize, usize, i64),
    #[error("matrix is not symmetrizable")]
    NotSymmetrizable,
    #[error("supplied symmetrizer does not symmetrize the matrix")]
    BadSymmetrizer,
    #[error("unknown Cartan type `{0}`")]
    UnknownType(String),
    #[error("malformed Cartan file: {0}")]
    Malformed(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GaugeError {
    #[error("r_{0}^+ does not have constant term 1; torus factors are refused")]
    NonUnitConstant(usize),
    #[error("integrability failure: cross-derivatives disagree at {0}")]
    NotIntegrable(String),
    #[error("recovered ξ does not reproduce r_{0}^+ (first difference at {1})")]
    Verification(usize, String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}
