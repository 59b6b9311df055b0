//! The equation, its coefficient sequences and the quasidifference chain.

mod chain;
mod equation;
mod nonlinearity;
mod sequence;

use thiserror::Error;

pub use chain::{
    companion, derive_coefficients, quasidifference_chain, residual, ChainValues,
    DerivedCoefficients, Residual,
};
pub use equation::{EquationParams, EquationSpec, SolveMode, VALIDATION_SAMPLE};
pub use nonlinearity::{Nonlinearity, ScalarFn};
pub use sequence::{CombineOp, OutOfRange, SequenceSpec};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("sequence is not defined at index {index}")]
    SequenceDomain { index: i64 },
    #[error("sequence value at index {index} is not finite")]
    NonFinite { index: i64 },
    #[error("malformed sequence: {0}")]
    Malformed(String),
    #[error("x is not available at index {index}")]
    MissingIndex { index: i64 },
    #[error("tau = {tau} is the excluded case min(-4, delta - 4) for delta = {delta}")]
    ExcludedDeviation { tau: i64, delta: i64 },
    #[error("n0 = {n0} is below max(1, delta, tau) = {required}")]
    StartIndex { n0: i64, required: i64 },
    #[error("coefficient {name} is not positive at index {index} (value {value})")]
    NotPositive {
        name: &'static str,
        index: i64,
        value: f64,
    },
    #[error("d is not of one sign: d_{index} = {value}")]
    DSign { index: i64, value: f64 },
}
