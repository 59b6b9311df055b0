//! Finite-horizon evidence about divergence of `Σ s_n`.
//!
//! Partial sums are accumulated over `n = start .. start + horizon - 1`. The series is
//! called divergent once a partial sum leaves `[-threshold, threshold]`. Otherwise the
//! last two dyadic blocks `B₁ = S(N/2) - S(N/4)` and `B₂ = S(N) - S(N/2)` are compared:
//! `|B₂| / |B₁| ≥ DIVERGENT_RATIO` (blocks do not shrink, as for `1/n`) points to
//! divergence, `≤ CONVERGENT_RATIO` (geometric shrinkage, as for `1/n²`) or a last block
//! below `eps_limit · |S(N)|` points to convergence. Anything else is undetermined.

use serde::Serialize;

use crate::model::{ModelError, SequenceSpec};

pub const DEFAULT_THRESHOLD: f64 = 10.0;
pub const DIVERGENT_RATIO: f64 = 0.95;
pub const CONVERGENT_RATIO: f64 = 0.75;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesStatus {
    HeuristicDivergent,
    HeuristicConvergent,
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesCheck {
    pub status: SeriesStatus,
    pub partial_sum: f64,
    /// First index at which the partial sum left `[-threshold, threshold]`.
    pub threshold_crossed_at: Option<i64>,
    pub block_ratio: Option<f64>,
    pub range: (i64, i64),
}

pub fn check_series_divergence(
    s: &SequenceSpec,
    start: i64,
    horizon: usize,
    threshold: f64,
    eps_limit: f64,
) -> Result<SeriesCheck, ModelError> {
    check_series_with(|n| s.eval(n), start, horizon, threshold, eps_limit)
}

pub fn check_series_with(
    term: impl Fn(i64) -> Result<f64, ModelError>,
    start: i64,
    horizon: usize,
    threshold: f64,
    eps_limit: f64,
) -> Result<SeriesCheck, ModelError> {
    let mut sums = Vec::with_capacity(horizon + 1);
    sums.push(0.0);
    let mut acc = 0.0;
    let mut crossed = None;
    for i in 0..horizon {
        let n = start + i as i64;
        acc += term(n)?;
        if crossed.is_none() && acc.abs() > threshold {
            crossed = Some(n);
        }
        sums.push(acc);
    }
    let range = (start, start + horizon as i64 - 1);
    let done = |status, block_ratio| SeriesCheck {
        status,
        partial_sum: acc,
        threshold_crossed_at: crossed,
        block_ratio,
        range,
    };
    if crossed.is_some() {
        return Ok(done(SeriesStatus::HeuristicDivergent, None));
    }
    if horizon < 8 {
        return Ok(done(SeriesStatus::Undetermined, None));
    }
    let n = horizon;
    let last = sums[n] - sums[n / 2];
    let prev = sums[n / 2] - sums[n / 4];
    if last.abs() <= eps_limit * acc.abs() {
        return Ok(done(SeriesStatus::HeuristicConvergent, None));
    }
    if prev == 0.0 {
        return Ok(done(SeriesStatus::Undetermined, None));
    }
    let ratio = last.abs() / prev.abs();
    let status = if ratio >= DIVERGENT_RATIO {
        SeriesStatus::HeuristicDivergent
    } else if ratio <= CONVERGENT_RATIO {
        SeriesStatus::HeuristicConvergent
    } else {
        SeriesStatus::Undetermined
    };
    Ok(done(status, Some(ratio)))
}
