//! Trajectories of the equation by exact recursion on the quasidifference system.
//!
//! Forward mode advances `t_{n+1} = t_n - d_n f(x_{n-τ})` and unwinds
//! `w`, `y`, `z` and finally `x_{n+4}`. Inverse mode recovers `x_{n-τ}` through
//! `f⁻¹(-Δt_n / d_n)`, where `Δt_n` only involves values already known.

use serde::Serialize;
use thiserror::Error;

use crate::model::{
    quasidifference_chain, residual, EquationSpec, ModelError, Residual, SequenceSpec, SolveMode,
};
use crate::numerics::{spow, spow_inverse, OddRatio};
use crate::window::{IndexedWindow, XSource};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("equation requires {required:?} mode, solver called in the other mode")]
    WrongMode { required: SolveMode },
    #[error("advanced neutral argument delta = {0} is not supported in forward mode")]
    AdvancedNeutral(i64),
    #[error("seed window must cover [{first}, {last}], got [{got_first}, {got_last}]")]
    SeedWindow {
        first: i64,
        last: i64,
        got_first: i64,
        got_last: i64,
    },
    #[error("seed value at index {index} is not finite")]
    NonFiniteSeed { index: i64 },
    #[error("pivot 1 + p_{index} = {value} is too close to zero")]
    Pivot { index: i64, value: f64 },
    #[error("nonlinearity has no inverse; inverse-mode solving needs one")]
    NotInvertible,
    #[error("d_{index} = {value} is too close to zero to divide by")]
    SmallD { index: i64, value: f64 },
    #[error("x is not available at index {index}")]
    Evaluation { index: i64 },
}

/// Initial values of `x` on a contiguous index range.
#[derive(Debug, Clone, PartialEq)]
pub struct SeedWindow(pub IndexedWindow);

impl SeedWindow {
    pub fn new(start: i64, values: Vec<f64>) -> Self {
        SeedWindow(IndexedWindow::new(start, values))
    }

    /// Index range `[first, last]` a seed must cover for this equation.
    pub fn required_range(eq: &EquationSpec) -> (i64, i64) {
        let n0 = eq.n0();
        match eq.mode() {
            SolveMode::Forward => (n0 - eq.delta().max(eq.tau()).max(0), n0 + 3),
            SolveMode::Inverse => (n0 - eq.delta().max(0), n0 - eq.tau() - 1),
        }
    }

    /// Seed for `eq` sampled from a closed form.
    pub fn from_source(eq: &EquationSpec, x: &impl XSource) -> Result<Self, SolveError> {
        let (first, last) = Self::required_range(eq);
        let values = (first..=last)
            .map(|n| x.value_at(n).ok_or(SolveError::Evaluation { index: n }))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SeedWindow::new(first, values))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    SolvedForward,
    SolvedInverse,
    SampledFromEvaluator,
}

/// Why a solve stopped before its horizon.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Truncation {
    /// First index of `x` that was not computed.
    pub index: i64,
    /// Step of the recursion at which a coefficient or state value stopped being finite.
    pub step: i64,
}

/// The `(z, y, w, t)` history aligned with `x`; `None` where a component is undefined.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Components {
    pub z: Vec<Option<f64>>,
    pub y: Vec<Option<f64>>,
    pub w: Vec<Option<f64>>,
    pub t: Vec<Option<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub x: IndexedWindow,
    pub components: Option<Components>,
    pub provenance: Provenance,
    pub truncation: Option<Truncation>,
    /// Indices at which the equation itself was advanced (`n` in `Δt_n + d_n f = 0`).
    pub steps: Option<(i64, i64)>,
}

impl XSource for Trajectory {
    fn value_at(&self, n: i64) -> Option<f64> {
        self.x.get(n)
    }
}

impl Trajectory {
    pub fn start(&self) -> i64 {
        self.x.start
    }

    pub fn end(&self) -> i64 {
        self.x.end()
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// Fills `z, y, w, t` from `x` wherever the chain is defined and `n ≥ n0`.
    pub fn materialize(&mut self, eq: &EquationSpec) {
        let z: Vec<Option<f64>> = self
            .x
            .indices()
            .map(|n| {
                (n >= eq.n0())
                    .then(|| crate::model::companion(&self.x, eq.p(), eq.delta(), n).ok())
                    .flatten()
            })
            .collect();
        let y = difference_level(&z, self.x.start, eq.c(), eq.gamma());
        let w = difference_level(&y, self.x.start, eq.b(), eq.beta());
        let t = difference_level(&w, self.x.start, eq.a(), eq.alpha());
        self.components = Some(Components { z, y, w, t });
    }

    /// Residual at every index where the recursion advanced the equation.
    pub fn residuals(&self, eq: &EquationSpec) -> Result<Vec<Residual>, ModelError> {
        let (lo, hi) = self.steps.unwrap_or((eq.n0(), self.end() - 4));
        (lo..=hi).map(|n| residual(eq, &self.x, n)).collect()
    }
}

/// `out_k = coef_k · spow(v_{k+1} - v_k, e)` wherever both neighbours exist.
fn difference_level(
    v: &[Option<f64>],
    start: i64,
    coef: &SequenceSpec,
    e: OddRatio,
) -> Vec<Option<f64>> {
    (0..v.len())
        .map(|i| match (v[i], v.get(i + 1).copied().flatten()) {
            (Some(a), Some(b)) => coef.eval(start + i as i64).ok().map(|c| c * spow(b - a, e)),
            _ => None,
        })
        .collect()
}

fn check_seed(eq: &EquationSpec, seed: &SeedWindow) -> Result<(), SolveError> {
    let (first, last) = SeedWindow::required_range(eq);
    let s = &seed.0;
    if s.start > first || s.end() < last {
        return Err(SolveError::SeedWindow {
            first,
            last,
            got_first: s.start,
            got_last: s.end(),
        });
    }
    if let Some((index, _)) = s.iter().find(|(_, v)| !v.is_finite()) {
        return Err(SolveError::NonFiniteSeed { index });
    }
    Ok(())
}

// Pivot and small-divisor threshold, relative to the unit coefficient scale.
fn near_zero(v: f64, eps: f64) -> bool {
    v.abs() <= eps
}

/// Advances the equation from `n0` for `horizon` steps, producing `x` up to `n0 + horizon + 3`.
pub fn solve_forward(
    eq: &EquationSpec,
    seed: &SeedWindow,
    horizon: usize,
    eps_sign: f64,
) -> Result<Trajectory, SolveError> {
    if eq.mode() != SolveMode::Forward {
        return Err(SolveError::WrongMode {
            required: SolveMode::Inverse,
        });
    }
    if eq.delta() < 0 {
        return Err(SolveError::AdvancedNeutral(eq.delta()));
    }
    check_seed(eq, seed)?;
    let n0 = eq.n0();
    let h = horizon as i64;

    let (first, last) = SeedWindow::required_range(eq);
    let mut x = IndexedWindow::new(
        first,
        (first..=last).map(|n| seed.0.get(n).unwrap()).collect(),
    );

    let delta = eq.delta();

    // Chain state at the start: z_{n0+3}, y_{n0+2}, w_{n0+1}, t_{n0}.
    let (mut z, mut y, mut w, mut t) = chain_front(eq, &x, n0)?;

    let mut truncation = None;
    let mut last_step = n0 - 1;
    for n in n0..n0 + h {
        let coefs = match step_coefficients(eq, n) {
            Err(ModelError::NonFinite { .. }) => {
                truncation = Some(Truncation {
                    index: n + 4,
                    step: n,
                });
                break;
            }
            other => other?,
        };
        let [d, a, b, c, p] = coefs;
        let fx = eq.f().eval(x.get(n - eq.tau()).expect("forward window"));
        let t_next = t - d * fx;
        let w_next = w + spow_inverse(t_next / a, eq.alpha());
        let y_next = y + spow_inverse(w_next / b, eq.beta());
        let z_next = z + spow_inverse(y_next / c, eq.gamma());
        let x_next = if delta == 0 {
            let pivot = 1.0 + p;
            if near_zero(pivot, eps_sign) {
                return Err(SolveError::Pivot {
                    index: n + 4,
                    value: pivot,
                });
            }
            z_next / pivot
        } else {
            let lag = x.get(n + 4 - delta).expect("forward window");
            if p == 0.0 {
                z_next
            } else {
                z_next - p * lag
            }
        };
        if !x_next.is_finite() || !t_next.is_finite() {
            truncation = Some(Truncation {
                index: n + 4,
                step: n,
            });
            break;
        }
        x.push(x_next);
        t = t_next;
        w = w_next;
        y = y_next;
        z = z_next;
        last_step = n;
    }

    let mut traj = Trajectory {
        x,
        components: None,
        provenance: Provenance::SolvedForward,
        truncation,
        steps: (last_step >= n0).then_some((n0, last_step)),
    };
    traj.materialize(eq);
    Ok(traj)
}

/// `[d_n, a_{n+1}, b_{n+2}, c_{n+3}, p_{n+4}]`, with the sign conditions re-checked.
fn step_coefficients(eq: &EquationSpec, n: i64) -> Result<[f64; 5], ModelError> {
    Ok([
        eq.signed_d(n)?,
        eq.positive_coefficient("a", n + 1)?,
        eq.positive_coefficient("b", n + 2)?,
        eq.positive_coefficient("c", n + 3)?,
        eq.p().eval(n + 4)?,
    ])
}

/// `(z_{n+3}, y_{n+2}, w_{n+1}, t_n)` computed from `x`.
fn chain_front(
    eq: &EquationSpec,
    x: &IndexedWindow,
    n: i64,
) -> Result<(f64, f64, f64, f64), ModelError> {
    let z = (n..=n + 3)
        .map(|k| crate::model::companion(x, eq.p(), eq.delta(), k).map(Some))
        .collect::<Result<Vec<_>, _>>()?;
    let y = difference_level(&z, n, eq.c(), eq.gamma());
    let w = difference_level(&y, n, eq.b(), eq.beta());
    let t = difference_level(&w, n, eq.a(), eq.alpha());
    let missing = ModelError::MissingIndex { index: n };
    Ok((
        z[3].ok_or(missing.clone())?,
        y[2].ok_or(missing.clone())?,
        w[1].ok_or(missing.clone())?,
        t[0].ok_or(missing)?,
    ))
}

/// Inverse-mode recursion: `x_{n-τ} = f⁻¹(-Δt_n / d_n)` for `n = n0 .. n0 + horizon - 1`.
pub fn solve_inverse(
    eq: &EquationSpec,
    seed: &SeedWindow,
    horizon: usize,
    eps_sign: f64,
) -> Result<Trajectory, SolveError> {
    if eq.mode() != SolveMode::Inverse {
        return Err(SolveError::WrongMode {
            required: SolveMode::Forward,
        });
    }
    if !eq.f().is_invertible() {
        return Err(SolveError::NotInvertible);
    }
    check_seed(eq, seed)?;
    let n0 = eq.n0();
    let h = horizon as i64;

    let (first, last) = SeedWindow::required_range(eq);
    let mut x = IndexedWindow::new(
        first,
        (first..=last).map(|n| seed.0.get(n).unwrap()).collect(),
    );

    let mut truncation = None;
    let mut last_step = n0 - 1;
    for n in n0..n0 + h {
        let checked = eq.signed_d(n).and_then(|d| {
            for name in ["a", "b", "c"] {
                eq.positive_coefficient(name, n + 4)?;
            }
            let t0 = quasidifference_chain(eq, &x, n)?.t;
            let t1 = quasidifference_chain(eq, &x, n + 1)?.t;
            Ok((d, t1 - t0))
        });
        let (d, dt) = match checked {
            Err(ModelError::NonFinite { .. }) => {
                truncation = Some(Truncation {
                    index: n - eq.tau(),
                    step: n,
                });
                break;
            }
            other => other?,
        };
        if near_zero(d, eps_sign) {
            return Err(SolveError::SmallD { index: n, value: d });
        }
        let target = -dt / d;
        let next = eq.f().inverse(target).ok_or(SolveError::NotInvertible)?;
        if !next.is_finite() {
            truncation = Some(Truncation {
                index: n - eq.tau(),
                step: n,
            });
            break;
        }
        debug_assert_eq!(x.end() + 1, n - eq.tau());
        x.push(next);
        last_step = n;
    }

    let mut traj = Trajectory {
        x,
        components: None,
        provenance: Provenance::SolvedInverse,
        truncation,
        steps: (last_step >= n0).then_some((n0, last_step)),
    };
    traj.materialize(eq);
    Ok(traj)
}

/// Dispatches on the equation's mode.
pub fn solve(
    eq: &EquationSpec,
    seed: &SeedWindow,
    horizon: usize,
    eps_sign: f64,
) -> Result<Trajectory, SolveError> {
    match eq.mode() {
        SolveMode::Forward => solve_forward(eq, seed, horizon, eps_sign),
        SolveMode::Inverse => solve_inverse(eq, seed, horizon, eps_sign),
    }
}

/// Wraps a closed-form candidate as a trajectory on `[start, end]` with materialized components.
pub fn sample_trajectory(
    eq: &EquationSpec,
    x: &impl XSource,
    start: i64,
    end: i64,
) -> Result<Trajectory, SolveError> {
    let values = (start..=end)
        .map(|n| x.value_at(n).ok_or(SolveError::Evaluation { index: n }))
        .collect::<Result<Vec<_>, _>>()?;
    let mut traj = Trajectory {
        x: IndexedWindow::new(start, values),
        components: None,
        provenance: Provenance::SampledFromEvaluator,
        truncation: None,
        steps: None,
    };
    traj.materialize(eq);
    Ok(traj)
}
