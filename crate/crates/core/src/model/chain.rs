use serde::Serialize;

use super::{EquationSpec, ModelError, SequenceSpec};
use crate::numerics::{spow, spow_inverse, OddRatio};
use crate::window::XSource;

fn fetch(x: &impl XSource, n: i64) -> Result<f64, ModelError> {
    x.value_at(n).ok_or(ModelError::MissingIndex { index: n })
}

/// `z_n = x_n + p_n · x_{n-δ}`.
pub fn companion(
    x: &impl XSource,
    p: &SequenceSpec,
    delta: i64,
    n: i64,
) -> Result<f64, ModelError> {
    Ok(tracked_companion(x, p, delta, n)?.value)
}

/// A computed value with a first-order bound on its rounding error, in units of `f64::EPSILON`.
#[derive(Debug, Clone, Copy)]
struct Tracked {
    value: f64,
    error: f64,
}

fn tracked_companion(
    x: &impl XSource,
    p: &SequenceSpec,
    delta: i64,
    n: i64,
) -> Result<Tracked, ModelError> {
    let xn = fetch(x, n)?;
    let pn = p.eval(n)?;
    // p ≡ 0 must not require the delayed value to exist.
    let neutral = if pn == 0.0 {
        0.0
    } else {
        pn * fetch(x, n - delta)?
    };
    let value = xn + neutral;
    Ok(Tracked {
        value,
        error: 2.0 * neutral.abs() + value.abs(),
    })
}

/// The quasidifferences of a sequence at one index.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChainValues {
    pub z: f64,
    pub y: f64,
    pub w: f64,
    pub t: f64,
}

/// Bound on `|spow(d + h, e) - spow(d, e)|` for `|h| ≤ err·ε`, in units of `ε`.
fn power_sensitivity(d: f64, err: f64, e: OddRatio) -> f64 {
    let ev = e.value();
    let eps = f64::EPSILON;
    let a = d.abs();
    if ev >= 1.0 {
        ev * (a + err * eps).powf(ev - 1.0) * err
    } else {
        // Hölder bound, which also covers a difference that vanishes.
        let holder = 2f64.powf(1.0 - ev) * (err * eps).powf(ev) / eps;
        if a > 0.0 {
            holder.min(ev * a.powf(ev - 1.0) * err)
        } else {
            holder
        }
    }
}

/// One weighted difference level: `out_k = coef_k · spow(v_{k+1} - v_k, e)`.
fn level(
    vals: &[Tracked],
    coef: &SequenceSpec,
    e: OddRatio,
    first: i64,
) -> Result<Vec<Tracked>, ModelError> {
    vals.windows(2)
        .enumerate()
        .map(|(i, w)| {
            let c = coef.eval(first + i as i64)?;
            let d = w[1].value - w[0].value;
            let d_err = w[1].error + w[0].error + d.abs();
            let s = spow(d, e);
            let s_err = power_sensitivity(d, d_err, e) + 4.0 * s.abs();
            let value = c * s;
            Ok(Tracked {
                value,
                error: c.abs() * s_err + 2.0 * value.abs(),
            })
        })
        .collect()
}

struct Levels {
    z: Vec<Tracked>,
    y: Vec<Tracked>,
    w: Vec<Tracked>,
    t: Vec<Tracked>,
}

/// Chain levels for `t_k`, `k = n .. n + count - 1`.
fn levels(eq: &EquationSpec, x: &impl XSource, n: i64, count: usize) -> Result<Levels, ModelError> {
    let z = (n..n + count as i64 + 3)
        .map(|k| tracked_companion(x, eq.p(), eq.delta(), k))
        .collect::<Result<Vec<_>, _>>()?;
    let y = level(&z, eq.c(), eq.gamma(), n)?;
    let w = level(&y, eq.b(), eq.beta(), n)?;
    let t = level(&w, eq.a(), eq.alpha(), n)?;
    Ok(Levels { z, y, w, t })
}

/// `(z_n, y_n, w_n, t_n)` with `y = c(Δz)^γ`, `w = b(Δy)^β`, `t = a(Δw)^α`.
pub fn quasidifference_chain(
    eq: &EquationSpec,
    x: &impl XSource,
    n: i64,
) -> Result<ChainValues, ModelError> {
    let l = levels(eq, x, n, 1)?;
    Ok(ChainValues {
        z: l.z[0].value,
        y: l.y[0].value,
        w: l.w[0].value,
        t: l.t[0].value,
    })
}

/// Residual of the equation at one index, with the scale it should be compared against.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Residual {
    pub index: i64,
    /// `Δt_n + d_n f(x_{n-τ})`
    pub value: f64,
    /// First-order bound on the rounding error of `value` in units of `f64::EPSILON`.
    ///
    /// Every input is taken as exact; the bound follows each subtraction and signed power
    /// of the chain, so it stays small where the chain cancels.
    pub scale: f64,
}

impl Residual {
    /// `|value| / scale`, or `|value|` when the scale vanishes.
    pub fn relative(&self) -> f64 {
        if self.scale > 0.0 {
            self.value.abs() / self.scale
        } else {
            self.value.abs()
        }
    }
}

pub fn residual(eq: &EquationSpec, x: &impl XSource, n: i64) -> Result<Residual, ModelError> {
    let l = levels(eq, x, n, 2)?;
    let forcing = eq.d().eval(n)? * eq.f().eval(fetch(x, n - eq.tau())?);
    let (t0, t1) = (l.t[0], l.t[1]);
    Ok(Residual {
        index: n,
        value: t1.value - t0.value + forcing,
        scale: t1.error + t0.error + 8.0 * forcing.abs(),
    })
}

/// Reciprocal coefficients `A = a^(-1/α)`, `B = b^(-1/β)`, `C = c^(-1/γ)`.
#[derive(Debug, Clone, Copy)]
pub struct DerivedCoefficients<'a> {
    eq: &'a EquationSpec,
}

pub fn derive_coefficients(eq: &EquationSpec) -> DerivedCoefficients<'_> {
    DerivedCoefficients { eq }
}

fn reciprocal_root(
    name: &'static str,
    s: &SequenceSpec,
    e: OddRatio,
    n: i64,
) -> Result<f64, ModelError> {
    let v = s.eval(n)?;
    if v <= 0.0 {
        return Err(ModelError::NotPositive {
            name,
            index: n,
            value: v,
        });
    }
    Ok(1.0 / spow_inverse(v, e))
}

impl DerivedCoefficients<'_> {
    pub fn a(&self, n: i64) -> Result<f64, ModelError> {
        reciprocal_root("a", self.eq.a(), self.eq.alpha(), n)
    }

    pub fn b(&self, n: i64) -> Result<f64, ModelError> {
        reciprocal_root("b", self.eq.b(), self.eq.beta(), n)
    }

    pub fn c(&self, n: i64) -> Result<f64, ModelError> {
        reciprocal_root("c", self.eq.c(), self.eq.gamma(), n)
    }
}
