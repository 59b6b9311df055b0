//! Classification of trajectories, hypothesis reports and certificates.

mod bounds;
mod classify;
mod profile;
mod report;
mod series;
mod theorem1;
mod theorem2;

use thiserror::Error;

use crate::model::ModelError;

pub use bounds::{lemma1_limit, lemma2_bound, BoundCertificate, Lemma2Input};
pub use classify::{
    classify, classify_window, QuickDecomposition, TermParity, Verdict, VerdictKind,
    MIN_CLASSIFY_LEN,
};
pub use profile::{
    component_sign_profile, ComponentProfile, ProfileCase, SignProfile, SignStatus, MIN_PROFILE_LEN,
};
pub use report::{ConditionEntry, ConditionReport, ConditionStatus, Overall};
pub use series::{
    check_series_divergence, check_series_with, SeriesCheck, SeriesStatus, CONVERGENT_RATIO,
    DEFAULT_THRESHOLD, DIVERGENT_RATIO,
};
pub use theorem1::{
    check_theorem1, contradiction_certificate, quick_candidate, CertificateEntry,
    ContradictionCertificate, Theorem1Branch, Theorem1Report,
};
pub use theorem2::check_theorem2;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("window of length {len} is too short (minimum {min})")]
    TooShort { len: usize, min: usize },
    #[error("trajectory has no materialized components")]
    NotMaterialized,
    #[error("window [{}, {}] is too short, at least [{}, {}] is needed", got.0, got.1, needed.0, needed.1)]
    WindowTooShort { needed: (i64, i64), got: (i64, i64) },
    #[error("q must be strictly positive, q_{index} is not")]
    NonPositiveQ { index: i64 },
    #[error("hypothesis {condition} does not hold: {detail}")]
    Hypothesis {
        condition: &'static str,
        detail: String,
    },
    #[error("precondition violated{}: {detail}", index.map(|n| format!(" at index {n}")).unwrap_or_default())]
    Precondition { index: Option<i64>, detail: String },
}
