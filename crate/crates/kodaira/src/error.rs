use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: operands belong to different number rings")]
    RingMismatch,
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("not in the rational span of tau and 1: {0}")]
    NotInSpan(String),
    #[error("not a lattice element: {0}")]
    NotInLattice(String),
    #[error("imaginary parts are not commensurable: {0}")]
    NotCommensurable(String),
    #[error("invalid period: {0}")]
    InvalidTau(String),
    #[error("invalid surface data: {0}")]
    InvalidData(String),
    #[error("invalid lift: {0}")]
    InvalidLift(String),
    #[error("lift does not descend: {0}")]
    NotDescending(String),
    #[error("not representable in the declared ring: {0}")]
    NotRepresentable(String),
    #[error("no numeric embedding for symbol `{0}`")]
    NoEmbedding(String),
    #[error("lattice violation: {0}")]
    LatticeViolation(String),
    #[error("not a unit of the base lattice: {0}")]
    NotAUnit(String),
    #[error("rho is not constant: {0}")]
    NonConstantRho(String),
    #[error("pullback is not in the span of the listed generators: {0}")]
    BasisExpressionFailure(String),
    #[error("not a base fixed point: {0}")]
    NotABaseFixedPoint(String),
    #[error("integer overflow: {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
