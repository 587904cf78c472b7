//! Formal unknowns, the linear systems they satisfy, and the derived
//! identities used to rule out higher-level actions on modules of the
//! intermediate series.

pub mod case;
pub mod formal;
pub mod linear;
pub mod module;
pub mod q_half;
pub mod q_minus_one;

pub use case::{
    assemble_case_system, beta_gamma_support, case_determinant, coeff_extract, derive_equ_element,
    displayed_equ_sides, omega_context, omega_pipeline, parse_displayed_top, substituted_rows,
    symbols, Case, EquElement, OmegaPipeline,
};
pub use formal::{FormalExpr, FormalSystem, Index, Unknown};
pub use linear::{det3, eliminate, solve_linear, SolutionSpace};
pub use module::{FormalModule, LevelRule, Op, ZeroAction};
pub use q_half::q_half_identities;
pub use q_minus_one::{describe_solution, main_system, q_minus1_systems, Subcase, SubcaseReport};

use serde::Serialize;
use thiserror::Error;

use crate::intseries::IntSeriesError;
use crate::scalar::ScalarError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstraintError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    IntSeries(#[from] IntSeriesError),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("zero pivot: {0}")]
    ZeroPivot(String),
    #[error("equation {0} is not linear")]
    Nonlinear(String),
    #[error("inconsistent system at {0}")]
    Inconsistent(String),
}

/// One comparison between an assembled quantity and its expected form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub label: String,
    pub assembled: String,
    pub expected: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}
