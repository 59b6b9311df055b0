use serde::Serialize;

use super::AnalysisError;
use crate::model::SequenceSpec;
use crate::window::IndexedWindow;

/// Limit of `x` given limits `p` of the coefficient and `l` of the companion sequence.
pub fn lemma1_limit(p_limit: f64, z_limit: f64, eps_sign: f64) -> Result<f64, AnalysisError> {
    if (p_limit.abs() - 1.0).abs() <= eps_sign {
        return Err(AnalysisError::Precondition {
            index: None,
            detail: format!("|p| = 1 (p = {p_limit})"),
        });
    }
    Ok(z_limit / (1.0 + p_limit))
}

/// Input for reconstructing `x` from its companion sequence and bounding it.
#[derive(Debug, Clone)]
pub struct Lemma2Input<'a> {
    /// `z_n` for `n = n1 ..`; `n1` is the window start.
    pub z: &'a IndexedWindow,
    /// `x_{n1}, …, x_{n1+δ-1}`.
    pub startup: &'a [f64],
    pub p: &'a SequenceSpec,
    pub p_limit: f64,
    pub delta: i64,
    /// Bound on `|z|`; the sample maximum is used when absent.
    pub z_bound: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCertificate {
    /// `L`
    pub z_bound: f64,
    /// `P = (1 + |p|)/2`
    pub p_cap: f64,
    /// `K = max |x_n|` over `n1 ..= n1 + δ + 1`
    pub startup_max: f64,
    /// `K + L/(1 - P)`
    pub bound: f64,
    pub range: (i64, i64),
    pub max_abs_x: f64,
    pub argmax: i64,
    pub x: IndexedWindow,
    pub valid: bool,
}

pub fn lemma2_bound(input: &Lemma2Input<'_>) -> Result<BoundCertificate, AnalysisError> {
    let Lemma2Input {
        z,
        startup,
        p,
        p_limit,
        delta,
        z_bound,
    } = *input;
    let fail = |index, detail: String| AnalysisError::Precondition { index, detail };
    if p_limit.is_nan() || p_limit.abs() >= 1.0 {
        return Err(fail(None, format!("|p| < 1 is required, p = {p_limit}")));
    }
    if delta < 1 {
        return Err(fail(None, format!("delta must be positive, got {delta}")));
    }
    if startup.len() != delta as usize {
        return Err(fail(
            None,
            format!(
                "{} startup values given, delta = {delta} needed",
                startup.len()
            ),
        ));
    }
    let n1 = z.start;
    let last = z.end();
    if last < n1 + delta + 1 {
        return Err(AnalysisError::WindowTooShort {
            needed: (n1, n1 + delta + 1),
            got: (n1, last),
        });
    }
    let p_cap = (1.0 + p_limit.abs()) / 2.0;
    for n in n1..=last {
        let pn = p.eval(n)?;
        if pn.abs() > p_cap {
            return Err(fail(
                Some(n),
                format!("|p_{n}| = {} exceeds P = {p_cap}", pn.abs()),
            ));
        }
    }
    let sample_max = z.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let l = match z_bound {
        Some(l) => {
            if let Some((n, v)) = z.iter().find(|(_, v)| v.abs() > l) {
                return Err(fail(
                    Some(n),
                    format!("|z_{n}| = {} exceeds L = {l}", v.abs()),
                ));
            }
            l
        }
        None => sample_max,
    };

    let mut x = IndexedWindow::new(n1, startup.to_vec());
    for n in n1 + delta..=last {
        let v = z.get(n).unwrap() - p.eval(n)? * x.get(n - delta).unwrap();
        x.push(v);
    }
    let startup_max = x.values[..(delta as usize + 2)]
        .iter()
        .fold(0.0f64, |m, v| m.max(v.abs()));
    let bound = startup_max + l / (1.0 - p_cap);
    let (argmax, max_abs_x) = x.iter().fold((n1, 0.0f64), |(bn, bv), (n, v)| {
        if v.abs() > bv {
            (n, v.abs())
        } else {
            (bn, bv)
        }
    });
    Ok(BoundCertificate {
        z_bound: l,
        p_cap,
        startup_max,
        bound,
        range: (n1, last),
        max_abs_x,
        argmax,
        valid: max_abs_x <= bound,
        x,
    })
}
