use serde::{Deserialize, Serialize};

use super::ModelError;
use crate::numerics::{spow, OddRatio};

/// Behaviour of a table outside its stored range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutOfRange {
    #[default]
    Error,
    HoldLast,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CombineOp {
    Add,
    Sub,
    Mul,
    Div,
    /// Sign-preserving power of a single operand by an odd ratio.
    Pow,
}

/// A real coefficient sequence `n ↦ s_n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SequenceSpec {
    /// `value`
    Constant { value: f64 },
    /// `scale · ratio^n`
    Geometric { scale: f64, ratio: f64 },
    /// `slope · n + intercept`
    Affine { slope: f64, intercept: f64 },
    /// `scale · n^exponent`
    Power { scale: f64, exponent: f64 },
    /// Explicit values for `start, start+1, ...`.
    Table {
        values: Vec<f64>,
        start: i64,
        #[serde(default)]
        out_of_range: OutOfRange,
    },
    Combination {
        op: CombineOp,
        operands: Vec<SequenceSpec>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        exponent: Option<OddRatio>,
    },
}

impl SequenceSpec {
    pub fn constant(value: f64) -> Self {
        SequenceSpec::Constant { value }
    }

    pub fn geometric(scale: f64, ratio: f64) -> Self {
        SequenceSpec::Geometric { scale, ratio }
    }

    pub fn affine(slope: f64, intercept: f64) -> Self {
        SequenceSpec::Affine { slope, intercept }
    }

    pub fn power(scale: f64, exponent: f64) -> Self {
        SequenceSpec::Power { scale, exponent }
    }

    pub fn table(start: i64, values: Vec<f64>, out_of_range: OutOfRange) -> Self {
        SequenceSpec::Table {
            values,
            start,
            out_of_range,
        }
    }

    pub fn add(operands: Vec<SequenceSpec>) -> Self {
        Self::combine(CombineOp::Add, operands)
    }

    pub fn mul(operands: Vec<SequenceSpec>) -> Self {
        Self::combine(CombineOp::Mul, operands)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(lhs: SequenceSpec, rhs: SequenceSpec) -> Self {
        Self::combine(CombineOp::Sub, vec![lhs, rhs])
    }

    #[allow(clippy::should_implement_trait)]
    pub fn div(lhs: SequenceSpec, rhs: SequenceSpec) -> Self {
        Self::combine(CombineOp::Div, vec![lhs, rhs])
    }

    pub fn pow(base: SequenceSpec, exponent: OddRatio) -> Self {
        SequenceSpec::Combination {
            op: CombineOp::Pow,
            operands: vec![base],
            exponent: Some(exponent),
        }
    }

    fn combine(op: CombineOp, operands: Vec<SequenceSpec>) -> Self {
        SequenceSpec::Combination {
            op,
            operands,
            exponent: None,
        }
    }

    /// Structural checks that do not need evaluation.
    pub fn validate(&self) -> Result<(), ModelError> {
        match self {
            SequenceSpec::Table { values, .. } if values.is_empty() => {
                Err(ModelError::Malformed("table sequence has no values".into()))
            }
            SequenceSpec::Combination {
                op,
                operands,
                exponent,
            } => {
                let arity_ok = match op {
                    CombineOp::Add | CombineOp::Mul => !operands.is_empty(),
                    CombineOp::Sub | CombineOp::Div => operands.len() == 2,
                    CombineOp::Pow => operands.len() == 1,
                };
                if !arity_ok {
                    return Err(ModelError::Malformed(format!(
                        "{op:?} combination with {} operands",
                        operands.len()
                    )));
                }
                if (*op == CombineOp::Pow) != exponent.is_some() {
                    return Err(ModelError::Malformed(
                        "an exponent is required by pow and only by pow".into(),
                    ));
                }
                operands.iter().try_for_each(SequenceSpec::validate)
            }
            _ => Ok(()),
        }
    }

    /// Index of the first value, if the sequence has a lower bound.
    pub fn start(&self) -> Option<i64> {
        match self {
            SequenceSpec::Table { start, .. } => Some(*start),
            SequenceSpec::Combination { operands, .. } => {
                operands.iter().filter_map(SequenceSpec::start).max()
            }
            _ => None,
        }
    }

    pub fn eval(&self, n: i64) -> Result<f64, ModelError> {
        let v = match self {
            SequenceSpec::Constant { value } => *value,
            SequenceSpec::Geometric { scale, ratio } => {
                let k = i32::try_from(n).map_err(|_| ModelError::SequenceDomain { index: n })?;
                scale * ratio.powi(k)
            }
            SequenceSpec::Affine { slope, intercept } => slope * n as f64 + intercept,
            SequenceSpec::Power { scale, exponent } => scale * (n as f64).powf(*exponent),
            SequenceSpec::Table {
                values,
                start,
                out_of_range,
            } => {
                if n < *start {
                    return Err(ModelError::SequenceDomain { index: n });
                }
                match values.get((n - start) as usize) {
                    Some(v) => *v,
                    None => match out_of_range {
                        OutOfRange::HoldLast => *values
                            .last()
                            .ok_or(ModelError::SequenceDomain { index: n })?,
                        OutOfRange::Error => return Err(ModelError::SequenceDomain { index: n }),
                    },
                }
            }
            SequenceSpec::Combination {
                op,
                operands,
                exponent,
            } => {
                let mut vals = operands.iter().map(|s| s.eval(n));
                match op {
                    CombineOp::Add => vals.try_fold(0.0, |acc, v| v.map(|v| acc + v))?,
                    CombineOp::Mul => vals.try_fold(1.0, |acc, v| v.map(|v| acc * v))?,
                    CombineOp::Sub | CombineOp::Div => {
                        let (lhs, rhs) = match (vals.next(), vals.next()) {
                            (Some(l), Some(r)) => (l?, r?),
                            _ => return Err(ModelError::Malformed("binary combination".into())),
                        };
                        if *op == CombineOp::Sub {
                            lhs - rhs
                        } else {
                            lhs / rhs
                        }
                    }
                    CombineOp::Pow => {
                        let base = vals
                            .next()
                            .ok_or_else(|| ModelError::Malformed("pow without operand".into()))??;
                        let e = exponent
                            .ok_or_else(|| ModelError::Malformed("pow without exponent".into()))?;
                        spow(base, e)
                    }
                }
            }
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(ModelError::NonFinite { index: n })
        }
    }
}
