use super::report::{ConditionEntry, ConditionReport, ConditionStatus};
use super::series::{check_series_with, SeriesCheck, SeriesStatus};
use super::theorem1::one_sign;
use super::AnalysisError;
use crate::model::{derive_coefficients, EquationSpec, ModelError};
use crate::numerics::ToleranceProfile;

fn series_entry(id: &'static str, what: &str, check: &SeriesCheck) -> ConditionEntry {
    let status = match check.status {
        SeriesStatus::HeuristicDivergent => ConditionStatus::HeuristicEvidence { supports: true },
        SeriesStatus::HeuristicConvergent => ConditionStatus::HeuristicEvidence { supports: false },
        SeriesStatus::Undetermined => ConditionStatus::NotCheckable,
    };
    let status_word = match check.status {
        SeriesStatus::HeuristicDivergent => "heuristic-divergent",
        SeriesStatus::HeuristicConvergent => "heuristic-convergent",
        SeriesStatus::Undetermined => "undetermined",
    };
    ConditionEntry {
        id,
        status,
        detail: format!(
            "sum of {what}: {status_word}, partial sum {:.6e}{}",
            check.partial_sum,
            check
                .block_ratio
                .map(|r| format!(", dyadic block ratio {r:.4}"))
                .unwrap_or_default()
        ),
        checked_on: check.range,
    }
}

/// Hypotheses of the almost-oscillation criterion on `[n0, n0 + horizon - 1]`.
///
/// Series conditions are finite-horizon evidence; the overall status says so.
pub fn check_theorem2(
    eq: &EquationSpec,
    horizon: usize,
    threshold: f64,
    tol: &ToleranceProfile,
) -> Result<ConditionReport, AnalysisError> {
    let lo = eq.n0();
    let hi = lo + horizon as i64 - 1;
    let range = (lo, hi);
    let mut entries = Vec::new();

    // (lp): the tail of p has settled, and its limit is inside (-1, 1).
    let p_end = eq.p().eval(hi)?;
    let p_mid = eq.p().eval(lo + horizon as i64 / 2)?;
    let settled = (p_end - p_mid).abs() <= tol.eps_limit * p_end.abs().max(1.0);
    let inside = p_end.abs() < 1.0;
    entries.push(ConditionEntry {
        id: "lp",
        status: match (settled, inside) {
            (true, true) => ConditionStatus::HoldsOnSample,
            (true, false) => ConditionStatus::FailsAtIndex { index: Some(hi) },
            (false, supports) => ConditionStatus::HeuristicEvidence { supports },
        },
        detail: format!(
            "lim p = {p_end}{}",
            if settled { "" } else { " (tail not settled)" }
        ),
        checked_on: range,
    });

    entries.push(ConditionEntry {
        id: "e1",
        status: if eq.f().sign_condition() {
            ConditionStatus::HoldsOnSample
        } else {
            ConditionStatus::FailsAtIndex { index: None }
        },
        detail: format!("x f(x) > 0 for x != 0 ({:?})", eq.f()),
        checked_on: range,
    });

    let dc = derive_coefficients(eq);
    type Term<'a> = &'a dyn Fn(i64) -> Result<f64, ModelError>;
    let coeffs: [(&str, &str, Term); 3] = [
        ("abc-A", "A_n = a_n^(-1/alpha)", &|n| dc.a(n)),
        ("abc-B", "B_n = b_n^(-1/beta)", &|n| dc.b(n)),
        ("abc-C", "C_n = c_n^(-1/gamma)", &|n| dc.c(n)),
    ];
    for (id, what, term) in coeffs {
        let check = check_series_with(term, lo, horizon, threshold, tol.eps_limit)?;
        entries.push(series_entry(id, what, &check));
    }

    entries.push(ConditionEntry {
        id: "f-continuous",
        status: match eq.f().is_continuous() {
            Some(true) => ConditionStatus::HoldsOnSample,
            Some(false) => ConditionStatus::FailsAtIndex { index: None },
            None => ConditionStatus::NotCheckable,
        },
        detail: "continuity of f (structural for built-in families)".into(),
        checked_on: range,
    });

    let d_sign = one_sign(eq.d(), lo, hi)?;
    entries.push(ConditionEntry {
        id: "d-one-signed",
        status: match d_sign {
            Ok(_) => ConditionStatus::HoldsOnSample,
            Err(n) => ConditionStatus::FailsAtIndex { index: Some(n) },
        },
        detail: "d_n of one sign".into(),
        checked_on: range,
    });

    let check = check_series_with(|n| eq.d().eval(n), lo, horizon, threshold, tol.eps_limit)?;
    entries.push(series_entry("zs", "d_n", &check));

    Ok(ConditionReport::new("theorem-2", entries))
}
