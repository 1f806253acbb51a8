use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The operand of an inversion lies in the commutator ideal.
    #[error("cannot invert an element of the commutator ideal: {expr}")]
    CommutatorInverse { expr: String },
    #[error("substitution images are algebraically dependent (zero Jacobian)")]
    DependentImages,
    #[error("internal gate violation: an inverted subexpression commutativizes to zero")]
    InternalGateViolation,
    #[error("budget exceeded: {what} (limit {limit})")]
    BudgetExceeded { what: &'static str, limit: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("series has a non-invertible constant term")]
    NonUnitConstantTerm,
    #[error("matrix series has a singular constant term")]
    SingularConstantTerm,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix has zero commutative determinant")]
    SingularCommDet,
    #[error("invalid pivot sequence: {0}")]
    InvalidPivots(String),
    #[error("commutative images of the summands cancel")]
    DegenerateSum,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
