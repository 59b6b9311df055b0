use std::fmt;
use std::sync::Arc;

use crate::numerics::{spow, spow_inverse, OddRatio};

pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// The nonlinearity `f` applied to the deviated argument.
#[derive(Clone)]
pub enum Nonlinearity {
    /// `coefficient · spow(x, exponent)`
    OddPower {
        coefficient: f64,
        exponent: OddRatio,
    },
    /// `coefficient · sgn(x)`
    Signum { coefficient: f64 },
    Custom {
        name: String,
        eval: ScalarFn,
        inverse: Option<ScalarFn>,
    },
}

// Sample points for checking x·f(x) > 0 on user-supplied functions.
const SIGN_SAMPLES: [f64; 9] = [1e-9, 1e-4, 0.01, 0.5, 1.0, 2.0, 10.0, 1e3, 1e8];

impl Nonlinearity {
    pub fn identity() -> Self {
        Nonlinearity::OddPower {
            coefficient: 1.0,
            exponent: OddRatio::ONE,
        }
    }

    pub fn odd_power(coefficient: f64, exponent: OddRatio) -> Self {
        Nonlinearity::OddPower {
            coefficient,
            exponent,
        }
    }

    pub fn signum(coefficient: f64) -> Self {
        Nonlinearity::Signum { coefficient }
    }

    pub fn custom(
        name: impl Into<String>,
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
        inverse: Option<ScalarFn>,
    ) -> Self {
        Nonlinearity::Custom {
            name: name.into(),
            eval: Arc::new(eval),
            inverse,
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Nonlinearity::OddPower {
                coefficient,
                exponent,
            } => coefficient * spow(x, *exponent),
            Nonlinearity::Signum { coefficient } => {
                if x > 0.0 {
                    *coefficient
                } else if x < 0.0 {
                    -coefficient
                } else {
                    0.0
                }
            }
            Nonlinearity::Custom { eval, .. } => eval(x),
        }
    }

    /// `f⁻¹(v)`, when `f` is invertible.
    pub fn inverse(&self, v: f64) -> Option<f64> {
        match self {
            Nonlinearity::OddPower {
                coefficient,
                exponent,
            } if *coefficient != 0.0 => Some(spow_inverse(v / coefficient, *exponent)),
            Nonlinearity::Custom {
                inverse: Some(inv), ..
            } => Some(inv(v)),
            _ => None,
        }
    }

    pub fn is_invertible(&self) -> bool {
        match self {
            Nonlinearity::OddPower { coefficient, .. } => *coefficient != 0.0,
            Nonlinearity::Signum { .. } => false,
            Nonlinearity::Custom { inverse, .. } => inverse.is_some(),
        }
    }

    /// Whether `x·f(x) > 0` for `x ≠ 0`. Structural for the built-in families, sampled for custom ones.
    pub fn sign_condition(&self) -> bool {
        match self {
            Nonlinearity::OddPower { coefficient, .. } | Nonlinearity::Signum { coefficient } => {
                *coefficient > 0.0
            }
            Nonlinearity::Custom { eval, .. } => SIGN_SAMPLES
                .iter()
                .flat_map(|&s| [s, -s])
                .all(|x| x * eval(x) > 0.0),
        }
    }

    /// `Some(true)` for continuous built-ins, `Some(false)` for signum, `None` when unknown.
    pub fn is_continuous(&self) -> Option<bool> {
        match self {
            Nonlinearity::OddPower { .. } => Some(true),
            Nonlinearity::Signum { coefficient } => Some(*coefficient == 0.0),
            Nonlinearity::Custom { .. } => None,
        }
    }
}

impl fmt::Debug for Nonlinearity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Nonlinearity::OddPower {
                coefficient,
                exponent,
            } => write!(f, "OddPower({coefficient} * x^{exponent})"),
            Nonlinearity::Signum { coefficient } => write!(f, "Signum({coefficient} * sgn x)"),
            Nonlinearity::Custom { name, inverse, .. } => {
                write!(f, "Custom({name}, invertible: {})", inverse.is_some())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags() {
        let id = Nonlinearity::identity();
        assert!(id.is_invertible() && id.sign_condition());
        assert_eq!(id.inverse(3.0), Some(3.0));
        let sg = Nonlinearity::signum(1.0);
        assert!(!sg.is_invertible() && sg.sign_condition());
        assert_eq!(sg.eval(-0.3), -1.0);
        assert_eq!(sg.eval(0.0), 0.0);
        assert!(!Nonlinearity::odd_power(-1.0, OddRatio::ONE).sign_condition());
        let cube = Nonlinearity::odd_power(2.0, OddRatio::new(3, 1).unwrap());
        assert_eq!(cube.eval(-2.0), -16.0);
        assert_eq!(cube.inverse(-16.0), Some(-2.0));
    }

    #[test]
    fn custom_sign_condition_is_sampled() {
        let ok = Nonlinearity::custom("x + x^3", |x| x + x * x * x, None);
        assert!(ok.sign_condition());
        assert!(!ok.is_invertible());
        let bad = Nonlinearity::custom("x - 1", |x| x - 1.0, None);
        assert!(!bad.sign_condition());
        assert_eq!(bad.is_continuous(), None);
    }
}
