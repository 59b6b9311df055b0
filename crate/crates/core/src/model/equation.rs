use super::{ModelError, Nonlinearity, SequenceSpec};
use crate::numerics::OddRatio;

/// Number of indices from `n0` on which positivity and one-sign properties are sampled.
pub const VALIDATION_SAMPLE: i64 = 256;

/// Raw parameters of
/// `Δ{ a_n [Δ( b_n (Δ( c_n (Δ(x_n + p_n x_{n-δ}))^γ ))^β )]^α } + d_n f(x_{n-τ}) = 0`.
#[derive(Debug, Clone)]
pub struct EquationParams {
    pub alpha: OddRatio,
    pub beta: OddRatio,
    pub gamma: OddRatio,
    pub tau: i64,
    pub delta: i64,
    pub p: SequenceSpec,
    pub d: SequenceSpec,
    pub a: SequenceSpec,
    pub b: SequenceSpec,
    pub c: SequenceSpec,
    pub f: Nonlinearity,
    pub n0: i64,
}

/// Direction in which the recursion can be run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveMode {
    /// `τ > min{-4, δ-4}`: `x_{n+4}` is the newest unknown.
    Forward,
    /// `τ < min{-4, δ-4}`: `x_{n-τ}` is the newest unknown, recovered through `f⁻¹`.
    Inverse,
}

/// A validated equation. Construction enforces the class invariants.
#[derive(Debug, Clone)]
pub struct EquationSpec {
    params: EquationParams,
    d_sign: f64,
}

impl EquationSpec {
    pub fn new(params: EquationParams) -> Result<Self, ModelError> {
        let excluded = (-4).min(params.delta - 4);
        if params.tau == excluded {
            return Err(ModelError::ExcludedDeviation {
                tau: params.tau,
                delta: params.delta,
            });
        }
        let lower = 1.max(params.delta).max(params.tau);
        if params.n0 < lower {
            return Err(ModelError::StartIndex {
                n0: params.n0,
                required: lower,
            });
        }
        for s in [&params.p, &params.d, &params.a, &params.b, &params.c] {
            s.validate()?;
        }
        let mut eq = EquationSpec {
            params,
            d_sign: 0.0,
        };
        eq.d_sign = eq.check_sampled(eq.params.n0 + VALIDATION_SAMPLE)?;
        Ok(eq)
    }

    /// Re-checks positivity of `a, b, c` and the one-sign property of `d` on `[n0, last]`.
    ///
    /// Returns the sign of `d` (`1.0` or `-1.0`).
    pub fn check_sampled(&self, last: i64) -> Result<f64, ModelError> {
        let pr = &self.params;
        let mut d_sign = 0.0;
        for n in pr.n0..=last {
            for name in ["a", "b", "c"] {
                self.positive_coefficient(name, n)?;
            }
            let d = pr.d.eval(n)?;
            let s = if d > 0.0 {
                1.0
            } else if d < 0.0 {
                -1.0
            } else {
                0.0
            };
            if s == 0.0 || (d_sign != 0.0 && s != d_sign) {
                return Err(ModelError::DSign { index: n, value: d });
            }
            d_sign = s;
        }
        Ok(d_sign)
    }

    /// `a_n`, `b_n` or `c_n`, required to be positive.
    pub fn positive_coefficient(&self, name: &'static str, n: i64) -> Result<f64, ModelError> {
        let s = match name {
            "a" => &self.params.a,
            "b" => &self.params.b,
            "c" => &self.params.c,
            _ => {
                return Err(ModelError::Malformed(format!(
                    "no coefficient named {name}"
                )))
            }
        };
        let v = s.eval(n)?;
        if v <= 0.0 {
            return Err(ModelError::NotPositive {
                name,
                index: n,
                value: v,
            });
        }
        Ok(v)
    }

    /// `d_n`, required to carry the sign established at construction.
    pub fn signed_d(&self, n: i64) -> Result<f64, ModelError> {
        let d = self.params.d.eval(n)?;
        if d * self.d_sign > 0.0 {
            Ok(d)
        } else {
            Err(ModelError::DSign { index: n, value: d })
        }
    }

    pub fn params(&self) -> &EquationParams {
        &self.params
    }

    pub fn into_params(self) -> EquationParams {
        self.params
    }

    pub fn alpha(&self) -> OddRatio {
        self.params.alpha
    }
    pub fn beta(&self) -> OddRatio {
        self.params.beta
    }
    pub fn gamma(&self) -> OddRatio {
        self.params.gamma
    }
    pub fn tau(&self) -> i64 {
        self.params.tau
    }
    pub fn delta(&self) -> i64 {
        self.params.delta
    }
    pub fn n0(&self) -> i64 {
        self.params.n0
    }
    pub fn p(&self) -> &SequenceSpec {
        &self.params.p
    }
    pub fn d(&self) -> &SequenceSpec {
        &self.params.d
    }
    pub fn a(&self) -> &SequenceSpec {
        &self.params.a
    }
    pub fn b(&self) -> &SequenceSpec {
        &self.params.b
    }
    pub fn c(&self) -> &SequenceSpec {
        &self.params.c
    }
    pub fn f(&self) -> &Nonlinearity {
        &self.params.f
    }

    /// Sign of `d` on the validation sample.
    pub fn d_sign(&self) -> f64 {
        self.d_sign
    }

    pub fn mode(&self) -> SolveMode {
        if self.params.tau > (-4).min(self.params.delta - 4) {
            SolveMode::Forward
        } else {
            SolveMode::Inverse
        }
    }
}
