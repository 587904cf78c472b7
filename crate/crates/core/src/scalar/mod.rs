//! Exact coefficient arithmetic: multivariate rational functions over `Q`
//! or over a simple algebraic extension `Q(theta)`.

mod context;
pub(crate) mod gcd;
pub mod number;
mod parse;
pub mod poly;
mod rational;

pub use context::FieldContext;
pub use parse::{parse_expr, Expr, ParseError};
pub use rational::Scalar;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different field contexts ({0} vs {1})")]
    ContextMismatch(String, String),
    #[error("singular specialization: denominator factor {factor} vanishes")]
    SingularSpecialization { factor: String },
    #[error("variable `{0}` is not bound and does not exist in the target context")]
    UnboundVariable(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("too many variables ({0}); at most {max} are supported", max = poly::MAX_VARS)]
    TooManyVariables(usize),
    #[error("invalid algebraic extension: {0}")]
    InvalidExtension(String),
    #[error("algebraic coefficients cannot be mapped into base field {0}")]
    IncompatibleBase(String),
    #[error("expected a polynomial in {0}, found a denominator depending on it")]
    NotPolynomial(String),
    #[error("central/basis symbols are not allowed in a scalar expression")]
    BasisInScalar,
    #[error(transparent)]
    Parse(#[from] ParseError),
}
