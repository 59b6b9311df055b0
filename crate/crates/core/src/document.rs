//! TOML equation documents.
//!
//! ```toml
//! name = "example-3"            # optional
//! description = "..."           # optional
//! n0 = 2
//! tau = -3
//! delta = 2
//!
//! [exponents]                   # odd ratios as "num/den" (or "num")
//! alpha = "1/1"
//! beta = "1/1"
//! gamma = "1/1"
//!
//! [f]                           # kind = "odd-power" | "signum"
//! kind = "odd-power"
//! coefficient = 1.0
//! exponent = "1/1"
//!
//! [p]                           # one table per sequence: p, d, a, b, c
//! kind = "constant"
//! value = 0.25
//!
//! [solution]                    # optional closed-form candidate
//! kind = "sign-geometric"       # x_n = scale · (-1)^n (if alternating) · ratio^n
//! scale = -1.0
//! ratio = 0.5
//! alternating = false
//! ```
//!
//! Sequence kinds: `constant {value}`, `geometric {scale, ratio}` (scale·ratio^n),
//! `affine {slope, intercept}`, `power {scale, exponent}` (scale·n^exponent),
//! `table {values, start, out_of_range = "error" | "hold-last"}` and
//! `combination {op = "add" | "sub" | "mul" | "div" | "pow", operands = [...], exponent}`
//! where `exponent` (an odd ratio) is required by `pow` and only by `pow`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{EquationParams, EquationSpec, ModelError, Nonlinearity, SequenceSpec};
use crate::numerics::{alt_sign, OddRatio};
use crate::window::XSource;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("{0}")]
    Parse(#[from] toml::de::Error),
    #[error("{0}")]
    Render(#[from] toml::ser::Error),
    #[error("invalid equation: {0}")]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Exponents {
    pub alpha: OddRatio,
    pub beta: OddRatio,
    pub gamma: OddRatio,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum NonlinearityDoc {
    OddPower {
        coefficient: f64,
        exponent: OddRatio,
    },
    Signum {
        coefficient: f64,
    },
}

impl From<&NonlinearityDoc> for Nonlinearity {
    fn from(doc: &NonlinearityDoc) -> Self {
        match *doc {
            NonlinearityDoc::OddPower {
                coefficient,
                exponent,
            } => Nonlinearity::odd_power(coefficient, exponent),
            NonlinearityDoc::Signum { coefficient } => Nonlinearity::signum(coefficient),
        }
    }
}

/// A closed-form candidate solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ClosedFormSpec {
    /// `scale · (-1)^n · ratio^n` when `alternating`, else `scale · ratio^n`.
    SignGeometric {
        scale: f64,
        ratio: f64,
        #[serde(default)]
        alternating: bool,
    },
}

impl ClosedFormSpec {
    pub fn eval(&self, n: i64) -> f64 {
        match *self {
            ClosedFormSpec::SignGeometric {
                scale,
                ratio,
                alternating,
            } => {
                let s = if alternating { alt_sign(n) } else { 1.0 };
                scale * s * ratio.powi(n as i32)
            }
        }
    }
}

impl XSource for ClosedFormSpec {
    fn value_at(&self, n: i64) -> Option<f64> {
        let v = self.eval(n);
        v.is_finite().then_some(v)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquationDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub n0: i64,
    pub tau: i64,
    pub delta: i64,
    pub exponents: Exponents,
    pub f: NonlinearityDoc,
    pub p: SequenceSpec,
    pub d: SequenceSpec,
    pub a: SequenceSpec,
    pub b: SequenceSpec,
    pub c: SequenceSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solution: Option<ClosedFormSpec>,
}

impl EquationDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        Ok(toml::from_str(text)?)
    }

    pub fn render(&self) -> Result<String, DocumentError> {
        Ok(toml::to_string(self)?)
    }

    pub fn params(&self) -> EquationParams {
        EquationParams {
            alpha: self.exponents.alpha,
            beta: self.exponents.beta,
            gamma: self.exponents.gamma,
            tau: self.tau,
            delta: self.delta,
            p: self.p.clone(),
            d: self.d.clone(),
            a: self.a.clone(),
            b: self.b.clone(),
            c: self.c.clone(),
            f: Nonlinearity::from(&self.f),
            n0: self.n0,
        }
    }

    pub fn to_equation(&self) -> Result<EquationSpec, DocumentError> {
        Ok(EquationSpec::new(self.params())?)
    }
}
