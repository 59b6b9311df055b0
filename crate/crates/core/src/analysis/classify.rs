use serde::Serialize;

use super::AnalysisError;
use crate::numerics::{alt_sign, ToleranceProfile};
use crate::solver::Trajectory;
use crate::window::IndexedWindow;

pub const MIN_CLASSIFY_LEN: usize = 8;

/// Which terms of an alternating sequence are the positive ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TermParity {
    Even,
    Odd,
}

impl TermParity {
    /// `+1` when `x_n = (-1)^n q_n` with `q > 0` has this parity of positive terms, else `-1`.
    pub fn orientation(self) -> f64 {
        match self {
            TermParity::Even => 1.0,
            TermParity::Odd => -1.0,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            TermParity::Even => TermParity::Odd,
            TermParity::Odd => TermParity::Even,
        }
    }
}

impl std::str::FromStr for TermParity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "even" | "even-positive" => Ok(TermParity::Even),
            "odd" | "odd-positive" => Ok(TermParity::Odd),
            _ => Err(format!("unknown parity {s:?} (expected even or odd)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictKind {
    NonoscillatoryPositive,
    NonoscillatoryNegative,
    Oscillatory,
    QuicklyOscillatory,
    Undetermined,
}

/// `x_n = (-1)^n q_n` on the decided suffix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuickDecomposition {
    pub positive_terms: TermParity,
    pub q: IndexedWindow,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    /// Finite-window evidence only; never a proof of a limit.
    pub tends_to_zero: bool,
    pub quick_decomposition: Option<QuickDecomposition>,
    /// Inclusive index range the decision was made on.
    pub suffix: (i64, i64),
    /// Every value on the suffix counted as zero.
    pub degenerate_zero: bool,
}

/// Signs of `values` with noise-level entries mapped to `0`.
///
/// An entry is noise when it is within `eps` of zero relative to the largest magnitude
/// among itself and its two neighbours.
pub(crate) fn signs(values: &[f64], eps: f64) -> Vec<i8> {
    (0..values.len())
        .map(|i| {
            let lo = i.saturating_sub(1);
            let hi = (i + 1).min(values.len() - 1);
            let scale = values[lo..=hi].iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let v = values[i];
            if v == 0.0 || v.abs() <= eps * scale {
                0
            } else if v > 0.0 {
                1
            } else {
                -1
            }
        })
        .collect()
}

/// Max of `|v|` over thirds is non-increasing and the last value is `eps_limit`-small
/// relative to the first third.
pub(crate) fn tends_to_zero(values: &[f64], eps_limit: f64) -> bool {
    if values.len() < 3 {
        return false;
    }
    let third = values.len() / 3;
    let maxabs = |s: &[f64]| s.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let m0 = maxabs(&values[..third]);
    let m1 = maxabs(&values[third..2 * third]);
    let m2 = maxabs(&values[2 * third..]);
    let last = values[values.len() - 1].abs();
    m0 >= m1 && m1 >= m2 && m0 > 0.0 && last < eps_limit * m0
}

pub fn classify(traj: &Trajectory, tol: &ToleranceProfile) -> Result<Verdict, AnalysisError> {
    classify_window(&traj.x, tol)
}

pub fn classify_window(
    x: &IndexedWindow,
    tol: &ToleranceProfile,
) -> Result<Verdict, AnalysisError> {
    if x.len() < MIN_CLASSIFY_LEN {
        return Err(AnalysisError::TooShort {
            len: x.len(),
            min: MIN_CLASSIFY_LEN,
        });
    }
    let all_signs = signs(&x.values, tol.eps_sign);
    let k = tol.suffix_len(x.len());
    let offset = x.len() - k;
    let suffix_signs = &all_signs[offset..];
    let suffix_start = x.start + offset as i64;
    let suffix = (suffix_start, x.end());
    let tends = tends_to_zero(&x.values, tol.eps_limit);

    let zeros = suffix_signs.iter().filter(|s| **s == 0).count();
    let degenerate_zero = zeros == suffix_signs.len();
    let verdict = |kind, quick| Verdict {
        kind,
        tends_to_zero: tends,
        quick_decomposition: quick,
        suffix,
        degenerate_zero,
    };
    if zeros > 0 {
        return Ok(verdict(VerdictKind::Undetermined, None));
    }
    if suffix_signs.iter().all(|s| *s > 0) {
        return Ok(verdict(VerdictKind::NonoscillatoryPositive, None));
    }
    if suffix_signs.iter().all(|s| *s < 0) {
        return Ok(verdict(VerdictKind::NonoscillatoryNegative, None));
    }
    if suffix_signs.windows(2).all(|w| w[0] != w[1]) {
        let q: Vec<f64> = x.values[offset..]
            .iter()
            .enumerate()
            .map(|(i, v)| alt_sign(suffix_start + i as i64) * v)
            .collect();
        let positive_terms = if q[0] > 0.0 {
            TermParity::Even
        } else {
            TermParity::Odd
        };
        return Ok(verdict(
            VerdictKind::QuicklyOscillatory,
            Some(QuickDecomposition {
                positive_terms,
                q: IndexedWindow::new(suffix_start, q),
            }),
        ));
    }
    Ok(verdict(VerdictKind::Oscillatory, None))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn window(start: i64, end: i64, f: impl Fn(i64) -> f64) -> IndexedWindow {
        IndexedWindow::from_fn(start, end, f)
    }

    #[test]
    fn quickly_oscillatory_tenth() {
        let w = window(1, 200, |n| alt_sign(n) / 10.0);
        let v = classify_window(&w, &ToleranceProfile::default()).unwrap();
        assert_eq!(v.kind, VerdictKind::QuicklyOscillatory);
        assert!(!v.tends_to_zero);
        let q = v.quick_decomposition.unwrap();
        assert_eq!(q.positive_terms, TermParity::Even);
        assert!(q.q.values.iter().all(|v| *v == 0.1));
        assert_eq!(q.q.end(), 200);
    }

    #[test]
    fn negative_decaying() {
        let w = window(2, 62, |n| -(0.5f64).powi(n as i32));
        let v = classify_window(&w, &ToleranceProfile::default()).unwrap();
        assert_eq!(v.kind, VerdictKind::NonoscillatoryNegative);
        assert!(v.tends_to_zero);
    }

    #[test]
    fn constant_and_sine() {
        let tol = ToleranceProfile::default();
        let v = classify_window(&window(0, 50, |_| 1.0), &tol).unwrap();
        assert_eq!(v.kind, VerdictKind::NonoscillatoryPositive);
        assert!(!v.tends_to_zero);
        let v = classify_window(&window(1, 100, |n| (n as f64).sin()), &tol).unwrap();
        assert_eq!(v.kind, VerdictKind::Oscillatory);
        assert!(v.quick_decomposition.is_none());
    }

    #[test]
    fn zero_is_undetermined() {
        let v = classify_window(&window(0, 20, |_| 0.0), &ToleranceProfile::default()).unwrap();
        assert_eq!(v.kind, VerdictKind::Undetermined);
        assert!(v.degenerate_zero);
    }

    #[test]
    fn noise_zero_is_undetermined() {
        let w = window(0, 20, |n| if n == 18 { 1e-20 } else { 1.0 });
        let v = classify_window(&w, &ToleranceProfile::default()).unwrap();
        assert_eq!(v.kind, VerdictKind::Undetermined);
        assert!(!v.degenerate_zero);
    }

    #[test]
    fn odd_positive_decomposition() {
        let w = window(3, 30, |n| -alt_sign(n) * 2.0);
        let v = classify_window(&w, &ToleranceProfile::default()).unwrap();
        let q = v.quick_decomposition.unwrap();
        assert_eq!(q.positive_terms, TermParity::Odd);
        assert!(q.q.values.iter().all(|v| *v == -2.0));
    }

    #[test]
    fn too_short() {
        assert!(matches!(
            classify_window(&window(0, 6, |_| 1.0), &ToleranceProfile::default()),
            Err(AnalysisError::TooShort { len: 7, .. })
        ));
    }
}
