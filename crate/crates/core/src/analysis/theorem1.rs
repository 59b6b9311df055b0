//! Nonexistence of quickly oscillatory solutions.
//!
//! For a candidate `x_n = σ(-1)^n q_n` with `q > 0` and `σ = ±1` (positive even or positive
//! odd terms), even `δ` and `p ≥ 0` give
//!
//! ```text
//! Δz_n = σ(-1)^{n+1} s_n,  y_n = σ(-1)^{n+1} r_n,  w_n = σ(-1)^n l_n,  t_n = σ(-1)^{n+1} g_n
//! ```
//!
//! with `s, r, l, g > 0`, so the equation forces `σ(-1)^{n+1}(g_{n+1} + g_n) = d_n f(x_{n-τ})`.
//! When the two sides have opposite signs at an index, the candidate cannot be a solution.

use serde::Serialize;

use super::classify::TermParity;
use super::report::{ConditionEntry, ConditionReport, ConditionStatus};
use super::AnalysisError;
use crate::model::{derive_coefficients, EquationSpec};
use crate::numerics::{alt_sign, spow};
use crate::window::IndexedWindow;

/// Which statement applies, by the sign of `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem1Branch {
    /// `d > 0`
    Theorem,
    /// `d < 0`
    Remark,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Theorem1Report {
    pub report: ConditionReport,
    pub branch: Option<Theorem1Branch>,
    /// Class of quickly oscillatory solutions the statement excludes, when its hypotheses hold.
    pub claimed_exclusion: Option<TermParity>,
    /// Classes for which the per-index sign conflict is actually available.
    pub sign_argument_excludes: Vec<TermParity>,
}

impl Theorem1Report {
    pub fn render(&self) -> String {
        let mut out = self.report.render();
        if let Some(b) = self.branch {
            out.push_str(&format!("  branch: {b:?}\n"));
        }
        match self.claimed_exclusion {
            Some(p) => out.push_str(&format!(
                "  statement: no quickly oscillatory solutions with positive {} terms\n",
                parity_word(p)
            )),
            None => out.push_str("  statement: not applicable\n"),
        }
        let sa: Vec<_> = self
            .sign_argument_excludes
            .iter()
            .map(|p| parity_word(*p))
            .collect();
        out.push_str(&format!(
            "  sign conflict available for positive terms: [{}]\n",
            sa.join(", ")
        ));
        out
    }
}

fn parity_word(p: TermParity) -> &'static str {
    match p {
        TermParity::Even => "even",
        TermParity::Odd => "odd",
    }
}

/// `Some(sign)` of `d` when one-signed on `[lo, hi]`, else the first offending index.
pub(crate) fn one_sign(
    s: &crate::model::SequenceSpec,
    lo: i64,
    hi: i64,
) -> Result<Result<f64, i64>, AnalysisError> {
    let mut sign = 0.0;
    for n in lo..=hi {
        let v = s.eval(n)?;
        let sn = if v > 0.0 {
            1.0
        } else if v < 0.0 {
            -1.0
        } else {
            return Ok(Err(n));
        };
        if sign != 0.0 && sn != sign {
            return Ok(Err(n));
        }
        sign = sn;
    }
    Ok(Ok(sign))
}

pub fn check_theorem1(eq: &EquationSpec, horizon: usize) -> Result<Theorem1Report, AnalysisError> {
    let lo = eq.n0();
    let hi = lo + horizon as i64 - 1;
    let range = (lo, hi);
    let mut entries = Vec::new();

    let mut p_fail = None;
    for n in lo..=hi {
        if eq.p().eval(n)? < 0.0 {
            p_fail = Some(n);
            break;
        }
    }
    entries.push(ConditionEntry {
        id: "p-nonnegative",
        status: match p_fail {
            None => ConditionStatus::HoldsOnSample,
            Some(n) => ConditionStatus::FailsAtIndex { index: Some(n) },
        },
        detail: "p_n >= 0".into(),
        checked_on: range,
    });

    let d_sign = one_sign(eq.d(), lo, hi)?;
    let branch = match d_sign {
        Ok(s) if s > 0.0 => Some(Theorem1Branch::Theorem),
        Ok(_) => Some(Theorem1Branch::Remark),
        Err(_) => None,
    };
    entries.push(ConditionEntry {
        id: "d-sign",
        status: match d_sign {
            Ok(_) => ConditionStatus::HoldsOnSample,
            Err(n) => ConditionStatus::FailsAtIndex { index: Some(n) },
        },
        detail: match branch {
            Some(Theorem1Branch::Theorem) => "d_n > 0".into(),
            Some(Theorem1Branch::Remark) => "d_n < 0 (remark variant)".into(),
            None => "d_n is not of one sign".into(),
        },
        checked_on: range,
    });

    let delta_even = eq.delta().rem_euclid(2) == 0;
    entries.push(ConditionEntry {
        id: "delta-even",
        status: if delta_even {
            ConditionStatus::HoldsOnSample
        } else {
            ConditionStatus::FailsAtIndex { index: None }
        },
        detail: format!("delta = {}", eq.delta()),
        checked_on: range,
    });

    let e1 = eq.f().sign_condition();
    entries.push(ConditionEntry {
        id: "e1",
        status: if e1 {
            ConditionStatus::HoldsOnSample
        } else {
            ConditionStatus::FailsAtIndex { index: None }
        },
        detail: format!("x f(x) > 0 for x != 0 ({:?})", eq.f()),
        checked_on: range,
    });

    let report = ConditionReport::new("theorem-1", entries);
    let tau_even = eq.tau().rem_euclid(2) == 0;
    let (claimed_exclusion, sign_argument_excludes) = match (report.holds(), branch) {
        (true, Some(b)) => {
            let claimed = match (b, tau_even) {
                (Theorem1Branch::Theorem, true) | (Theorem1Branch::Remark, false) => {
                    TermParity::Even
                }
                _ => TermParity::Odd,
            };
            let d = if b == Theorem1Branch::Theorem {
                1.0
            } else {
                -1.0
            };
            let available = if d * alt_sign(eq.tau()) > 0.0 {
                vec![TermParity::Even, TermParity::Odd]
            } else {
                Vec::new()
            };
            (Some(claimed), available)
        }
        _ => (None, Vec::new()),
    };
    Ok(Theorem1Report {
        report,
        branch,
        claimed_exclusion,
        sign_argument_excludes,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificateEntry {
    pub index: i64,
    /// `σ(-1)^{n+1}(g_{n+1} + g_n)`, which equals `-Δt_n` for the candidate.
    pub left: f64,
    /// `d_n f(x_{n-τ})`
    pub right: f64,
    pub sign_conflict: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContradictionCertificate {
    pub parity: TermParity,
    pub range: (i64, i64),
    pub s: IndexedWindow,
    pub r: IndexedWindow,
    pub l: IndexedWindow,
    pub g: IndexedWindow,
    pub entries: Vec<CertificateEntry>,
    pub chains_positive: bool,
    /// Chains positive and a sign conflict at every certified index.
    pub valid: bool,
}

impl ContradictionCertificate {
    pub fn conflicts(&self) -> usize {
        self.entries.iter().filter(|e| e.sign_conflict).count()
    }
}

/// The candidate `x_n = σ(-1)^n q_n` for the given parity of positive terms.
pub fn quick_candidate(q: &IndexedWindow, parity: TermParity) -> IndexedWindow {
    let sigma = parity.orientation();
    IndexedWindow::new(
        q.start,
        q.iter().map(|(n, v)| sigma * alt_sign(n) * v).collect(),
    )
}

pub fn contradiction_certificate(
    eq: &EquationSpec,
    q: &IndexedWindow,
    parity: TermParity,
) -> Result<ContradictionCertificate, AnalysisError> {
    let delta = eq.delta();
    let tau = eq.tau();
    let lo = eq.n0().max(q.start + delta.max(0)).max(q.start + tau);
    let hi = (q.end() - 4)
        .min(q.end() + tau)
        .min(q.end() + delta.min(0) - 4);
    if lo > hi {
        return Err(AnalysisError::WindowTooShort {
            needed: (eq.n0() - delta.max(tau).max(0), eq.n0() + 4),
            got: (q.start, q.end()),
        });
    }
    if let Some((n, _)) = q.iter().find(|(_, v)| v.is_nan() || *v <= 0.0) {
        return Err(AnalysisError::NonPositiveQ { index: n });
    }

    // Hypotheses on the certified range.
    if delta.rem_euclid(2) != 0 {
        return Err(AnalysisError::Hypothesis {
            condition: "delta-even",
            detail: format!("delta = {delta}"),
        });
    }
    if !eq.f().sign_condition() {
        return Err(AnalysisError::Hypothesis {
            condition: "e1",
            detail: format!("{:?}", eq.f()),
        });
    }
    for n in lo..=hi + 4 {
        if eq.p().eval(n)? < 0.0 {
            return Err(AnalysisError::Hypothesis {
                condition: "p-nonnegative",
                detail: format!("p_{n} < 0"),
            });
        }
    }
    if let Err(n) = one_sign(eq.d(), lo, hi)? {
        return Err(AnalysisError::Hypothesis {
            condition: "d-sign",
            detail: format!("d changes sign or vanishes at {n}"),
        });
    }

    let qv = |n: i64| q.get(n).expect("index inside certified window");
    let dc = derive_coefficients(eq);
    let s = IndexedWindow::new(
        lo,
        (lo..=hi + 3)
            .map(|k| -> Result<f64, AnalysisError> {
                Ok(qv(k + 1)
                    + qv(k)
                    + eq.p().eval(k + 1)? * qv(k - delta + 1)
                    + eq.p().eval(k)? * qv(k - delta))
            })
            .collect::<Result<_, _>>()?,
    );
    let r = IndexedWindow::new(
        lo,
        s.iter()
            .map(|(k, sk)| Ok(spow(sk / dc.c(k)?, eq.gamma())))
            .collect::<Result<_, AnalysisError>>()?,
    );
    let pair_level = |v: &IndexedWindow,
                      coef: &dyn Fn(i64) -> Result<f64, crate::model::ModelError>,
                      e|
     -> Result<IndexedWindow, AnalysisError> {
        let vals = v
            .values
            .windows(2)
            .enumerate()
            .map(|(i, w)| {
                let k = v.start + i as i64;
                Ok(spow((w[1] + w[0]) / coef(k)?, e))
            })
            .collect::<Result<_, AnalysisError>>()?;
        Ok(IndexedWindow::new(v.start, vals))
    };
    let l = pair_level(&r, &|k| dc.b(k), eq.beta())?;
    let g = pair_level(&l, &|k| dc.a(k), eq.alpha())?;

    let sigma = parity.orientation();
    let entries = (lo..=hi)
        .map(|n| {
            let gsum = g.get(n + 1).unwrap() + g.get(n).unwrap();
            let left = sigma * alt_sign(n + 1) * gsum;
            let x_lag = sigma * alt_sign(n - tau) * qv(n - tau);
            let right = eq.d().eval(n)? * eq.f().eval(x_lag);
            let sign_conflict = (left > 0.0 && right < 0.0) || (left < 0.0 && right > 0.0);
            Ok(CertificateEntry {
                index: n,
                left,
                right,
                sign_conflict,
            })
        })
        .collect::<Result<Vec<_>, AnalysisError>>()?;

    let positive = |w: &IndexedWindow| w.values.iter().all(|v| *v > 0.0);
    let chains_positive = positive(&s) && positive(&r) && positive(&l) && positive(&g);
    let valid = chains_positive && entries.iter().all(|e| e.sign_conflict);
    Ok(ContradictionCertificate {
        parity,
        range: (lo, hi),
        s,
        r,
        l,
        g,
        entries,
        chains_positive,
        valid,
    })
}
