//! Odd-ratio exponents, sign-preserving real powers and the shared tolerance policy.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("odd ratio component must be an odd positive integer, got {0}")]
    EvenOrZero(u64),
    #[error("cannot parse odd ratio from {0:?}")]
    Parse(String),
    #[error("tolerance {name} must be strictly positive, got {value}")]
    NonPositiveTolerance { name: &'static str, value: f64 },
    #[error("suffix fraction must lie in (0, 1], got {0}")]
    SuffixFraction(f64),
}

/// A rational exponent `numerator / denominator` with both parts odd and positive.
///
/// Always stored reduced. Odd denominators make the real root of a negative base
/// well defined, so powers by an `OddRatio` are odd functions on all of ℝ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OddRatio {
    num: u64,
    den: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

impl OddRatio {
    pub const ONE: OddRatio = OddRatio { num: 1, den: 1 };

    pub fn new(numerator: u64, denominator: u64) -> Result<Self, NumericsError> {
        for v in [numerator, denominator] {
            if v == 0 || v % 2 == 0 {
                return Err(NumericsError::EvenOrZero(v));
            }
        }
        let g = gcd(numerator, denominator);
        Ok(OddRatio {
            num: numerator / g,
            den: denominator / g,
        })
    }

    pub fn integer(n: u64) -> Result<Self, NumericsError> {
        Self::new(n, 1)
    }

    pub fn numerator(self) -> u64 {
        self.num
    }

    pub fn denominator(self) -> u64 {
        self.den
    }

    pub fn recip(self) -> Self {
        OddRatio {
            num: self.den,
            den: self.num,
        }
    }

    pub fn value(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn is_one(self) -> bool {
        self.num == 1 && self.den == 1
    }
}

impl fmt::Display for OddRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for OddRatio {
    type Err = NumericsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || NumericsError::Parse(s.to_string());
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: u64 = n.parse().map_err(|_| bad())?;
        let d: u64 = d.parse().map_err(|_| bad())?;
        OddRatio::new(n, d)
    }
}

impl Serialize for OddRatio {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for OddRatio {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

// Integer powers up to this size go through `powi`, which is exact for small results.
const POWI_LIMIT: u64 = 64;

/// `|x|^(1/den)` for odd `den`, corrected by one Newton step.
fn odd_root(ax: f64, den: u64) -> f64 {
    match den {
        1 => ax,
        3 => ax.cbrt(),
        _ => {
            let r = ax.powf(1.0 / den as f64);
            if r == 0.0 || !r.is_finite() || den > POWI_LIMIT {
                return r;
            }
            let k = den as i32;
            let rk1 = r.powi(k - 1);
            let corrected = r - (rk1 * r - ax) / (den as f64 * rk1);
            if corrected.is_finite() {
                corrected
            } else {
                r
            }
        }
    }
}

/// Sign-preserving power: `sign(x) · |x|^(num/den)`.
///
/// Exactly zero at zero. Can return a signed infinity when the result overflows;
/// callers that need a finite value check for it.
pub fn spow(x: f64, e: OddRatio) -> f64 {
    if x == 0.0 || e.is_one() || x.is_nan() {
        return x;
    }
    let ax = x.abs();
    let mag = if e.num <= POWI_LIMIT && e.den <= POWI_LIMIT {
        let root = odd_root(ax, e.den);
        let m = root.powi(e.num as i32);
        if m.is_finite() || !ax.is_finite() {
            m
        } else {
            // root^num can overflow where the direct form would too; keep the direct form.
            (e.value() * ax.ln()).exp()
        }
    } else {
        (e.value() * ax.ln()).exp()
    };
    mag.copysign(x)
}

/// Inverse of [`spow`]: the `y`-preimage under `x ↦ spow(x, e)`.
pub fn spow_inverse(y: f64, e: OddRatio) -> f64 {
    spow(y, e.recip())
}

/// `(-1)^n`
pub fn alt_sign(n: i64) -> f64 {
    if n.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Finite-horizon thresholds shared by the solver and the analysis routines.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceProfile {
    /// Relative threshold below which a value counts as zero against its neighbours.
    pub eps_sign: f64,
    /// Relative residual tolerance.
    pub eps_residual: f64,
    /// Tail-limit threshold.
    pub eps_limit: f64,
    /// Portion of a window treated as "eventually".
    pub suffix_fraction: f64,
}

impl Default for ToleranceProfile {
    fn default() -> Self {
        ToleranceProfile {
            eps_sign: 1e-12,
            eps_residual: 1e-9,
            eps_limit: 1e-8,
            suffix_fraction: 0.5,
        }
    }
}

impl ToleranceProfile {
    pub fn validate(&self) -> Result<(), NumericsError> {
        for (name, value) in [
            ("eps_sign", self.eps_sign),
            ("eps_residual", self.eps_residual),
            ("eps_limit", self.eps_limit),
        ] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(NumericsError::NonPositiveTolerance { name, value });
            }
        }
        if !(self.suffix_fraction > 0.0 && self.suffix_fraction <= 1.0) {
            return Err(NumericsError::SuffixFraction(self.suffix_fraction));
        }
        Ok(())
    }

    /// Number of trailing entries of a window of `len` treated as the decided suffix.
    pub fn suffix_len(&self, len: usize) -> usize {
        ((self.suffix_fraction * len as f64).ceil() as usize).clamp(1, len.max(1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: u64, d: u64) -> OddRatio {
        OddRatio::new(n, d).unwrap()
    }

    #[test]
    fn spow_examples() {
        assert_eq!(spow(8.0, r(1, 3)), 2.0);
        assert_eq!(spow(-8.0, r(1, 3)), -2.0);
        assert_eq!(spow(-27.0, r(5, 3)), -243.0);
        assert_eq!(spow(0.0, r(7, 5)), 0.0);
    }

    #[test]
    fn spow_inverse_examples() {
        assert_eq!(spow_inverse(2.0, r(1, 3)), 8.0);
        let v = spow_inverse(-243.0, r(5, 3));
        assert!((v + 27.0).abs() <= 1e-12 * 27.0, "{v}");
        assert_eq!(spow_inverse(-3.25, OddRatio::ONE), -3.25);
    }

    #[test]
    fn odd_ratio_reduces_and_rejects_even() {
        assert_eq!(r(9, 3), r(3, 1));
        assert_eq!(r(15, 25), r(3, 5));
        assert_eq!(OddRatio::new(2, 3), Err(NumericsError::EvenOrZero(2)));
        assert_eq!(OddRatio::new(3, 4), Err(NumericsError::EvenOrZero(4)));
        assert!(OddRatio::new(0, 1).is_err());
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("5/3".parse::<OddRatio>().unwrap(), r(5, 3));
        assert_eq!(" 3 ".parse::<OddRatio>().unwrap(), r(3, 1));
        assert!("4/3".parse::<OddRatio>().is_err());
        assert!("x".parse::<OddRatio>().is_err());
        assert_eq!(r(9, 15).to_string(), "3/5");
    }

    #[test]
    fn spow_overflow_is_signed_infinity() {
        assert_eq!(spow(-1e200, r(3, 1)), f64::NEG_INFINITY);
        assert_eq!(spow(1e200, r(5, 3)), f64::INFINITY);
    }

    #[test]
    fn tolerance_validation() {
        assert!(ToleranceProfile::default().validate().is_ok());
        let bad = ToleranceProfile {
            eps_sign: 0.0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = ToleranceProfile {
            suffix_fraction: 1.5,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        assert_eq!(ToleranceProfile::default().suffix_len(9), 5);
    }
}
