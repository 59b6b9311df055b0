//! Fourth-order neutral difference equations with quasidifferences and deviating arguments:
//!
//! ```text
//! Δ{ a_n [Δ( b_n (Δ( c_n (Δ(x_n + p_n x_{n-δ}))^γ ))^β )]^α } + d_n f(x_{n-τ}) = 0
//! ```
//!
//! The crate simulates solutions by exact recursion on the equivalent four-dimensional
//! system, classifies finite trajectories (nonoscillatory, oscillatory, quickly
//! oscillatory), checks hypotheses of the nonexistence and almost-oscillation criteria on
//! finite samples, and produces per-index certificates.

pub mod analysis;
pub mod bundled;
pub mod document;
pub mod export;
pub mod model;
pub mod numerics;
pub mod solver;
pub mod window;

pub use analysis::{AnalysisError, TermParity, Verdict, VerdictKind};
pub use document::{ClosedFormSpec, DocumentError, EquationDocument};
pub use model::{EquationParams, EquationSpec, ModelError, Nonlinearity, SequenceSpec, SolveMode};
pub use numerics::{spow, spow_inverse, OddRatio, ToleranceProfile};
pub use solver::{SeedWindow, SolveError, Trajectory};
pub use window::{ClosedForm, IndexedWindow, XSource};
