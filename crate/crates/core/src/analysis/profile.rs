use serde::Serialize;

use super::classify::{signs, tends_to_zero};
use super::AnalysisError;
use crate::numerics::ToleranceProfile;
use crate::solver::Trajectory;

pub const MIN_PROFILE_LEN: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignStatus {
    Positive,
    Negative,
    /// Every value counted as zero.
    DegenerateZero,
    Mixed,
    /// One-signed apart from noise-level entries.
    Undetermined,
}

impl SignStatus {
    fn one_signed(self) -> bool {
        matches!(self, SignStatus::Positive | SignStatus::Negative)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentProfile {
    pub name: &'static str,
    pub sign: SignStatus,
    pub monotone: bool,
    pub tends_to_zero: bool,
    /// Inclusive index range of the decided suffix.
    pub suffix: (i64, i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProfileCase {
    AllComponentsOneSigned,
    YOneSignedXToZero,
    Neither,
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SignProfile {
    pub case: ProfileCase,
    pub components: Vec<ComponentProfile>,
    /// Components identically zero on the suffix, counted as one-signed at zero.
    pub degenerate_zero: Vec<&'static str>,
    /// Observed, not a proof of boundedness.
    pub max_abs_x: f64,
}

fn profile_component(
    name: &'static str,
    start: i64,
    values: &[Option<f64>],
    tol: &ToleranceProfile,
) -> Result<ComponentProfile, AnalysisError> {
    // Longest contiguous defined run.
    let first = values.iter().position(Option::is_some);
    let (vals, run_start) = match first {
        Some(i) => {
            let run: Vec<f64> = values[i..].iter().map_while(|v| *v).collect();
            (run, start + i as i64)
        }
        None => (Vec::new(), start),
    };
    if vals.len() < MIN_PROFILE_LEN {
        return Err(AnalysisError::TooShort {
            len: vals.len(),
            min: MIN_PROFILE_LEN,
        });
    }
    let k = tol.suffix_len(vals.len());
    let offset = vals.len() - k;
    let suffix = &vals[offset..];
    let sg = &signs(&vals, tol.eps_sign)[offset..];
    let zeros = sg.iter().filter(|s| **s == 0).count();
    let sign = if zeros == sg.len() {
        SignStatus::DegenerateZero
    } else if sg.iter().all(|s| *s > 0) {
        SignStatus::Positive
    } else if sg.iter().all(|s| *s < 0) {
        SignStatus::Negative
    } else if zeros > 0 && (sg.iter().all(|s| *s >= 0) || sg.iter().all(|s| *s <= 0)) {
        SignStatus::Undetermined
    } else {
        SignStatus::Mixed
    };
    let monotone =
        suffix.windows(2).all(|w| w[1] >= w[0]) || suffix.windows(2).all(|w| w[1] <= w[0]);
    Ok(ComponentProfile {
        name,
        sign,
        monotone,
        tends_to_zero: tends_to_zero(&vals, tol.eps_limit),
        suffix: (run_start + offset as i64, run_start + vals.len() as i64 - 1),
    })
}

/// Empirical version of the one-sign dichotomy for `(x, y, w, t)`.
pub fn component_sign_profile(
    traj: &Trajectory,
    tol: &ToleranceProfile,
) -> Result<SignProfile, AnalysisError> {
    let comps = traj
        .components
        .as_ref()
        .ok_or(AnalysisError::NotMaterialized)?;
    let x: Vec<Option<f64>> = traj.x.values.iter().map(|v| Some(*v)).collect();
    let start = traj.start();
    let components = vec![
        profile_component("x", start, &x, tol)?,
        profile_component("y", start, &comps.y, tol)?,
        profile_component("w", start, &comps.w, tol)?,
        profile_component("t", start, &comps.t, tol)?,
    ];
    let (px, py) = (&components[0], &components[1]);
    let degenerate_zero: Vec<_> = components
        .iter()
        .filter(|c| c.sign == SignStatus::DegenerateZero)
        .map(|c| c.name)
        .collect();
    let case = if py.sign.one_signed() && px.tends_to_zero && px.sign != SignStatus::DegenerateZero
    {
        ProfileCase::YOneSignedXToZero
    } else if px.sign.one_signed()
        && components[1..]
            .iter()
            .all(|c| c.sign.one_signed() || c.sign == SignStatus::DegenerateZero)
    {
        ProfileCase::AllComponentsOneSigned
    } else if components
        .iter()
        .any(|c| c.sign == SignStatus::Undetermined)
        || px.sign == SignStatus::DegenerateZero
    {
        ProfileCase::Undetermined
    } else {
        ProfileCase::Neither
    };
    Ok(SignProfile {
        case,
        components,
        degenerate_zero,
        max_abs_x: traj.x.values.iter().fold(0.0f64, |m, v| m.max(v.abs())),
    })
}
