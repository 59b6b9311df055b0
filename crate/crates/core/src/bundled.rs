//! The four reference equations with known closed-form solutions.
//!
//! Each ships as a TOML document under `data/` for the default parameters; the builders
//! below produce the same documents and accept the free parameters (β, λ, τ) where the
//! equation family has them.

use crate::document::{ClosedFormSpec, EquationDocument, Exponents, NonlinearityDoc};
use crate::model::SequenceSpec;
use crate::numerics::OddRatio;

pub struct BundledExample {
    pub name: &'static str,
    pub summary: &'static str,
    pub document: &'static str,
}

pub const EXAMPLES: [BundledExample; 4] = [
    BundledExample {
        name: "example-1",
        summary: "Δ²(Δ²(x_n + 2^-n x_{n-2λ}))^β + d_n sgn(x_{n-τ}) = 0, solution (-1)^n 2^n",
        document: include_str!("../data/example-1.toml"),
    },
    BundledExample {
        name: "example-2",
        summary: "Δ²(Δ²(x_n + 3^-n x_{n-2λ}))^β + d_n x_{n-τ} = 0, solution (-1)^n",
        document: include_str!("../data/example-2.toml"),
    },
    BundledExample {
        name: "example-3",
        summary: "Δ(n Δ³(x_n + x_{n-2}/4)) + (1-n) x_{n+3} = 0, solution -1/2^n",
        document: include_str!("../data/example-3.toml"),
    },
    BundledExample {
        name: "example-4",
        summary: "Δ(n Δ³(x_n + x_{n-2}/4)) + 10(2n+1) x_{n+3} = 0, solution (-1)^n/10",
        document: include_str!("../data/example-4.toml"),
    },
];

pub fn find(name: &str) -> Option<&'static BundledExample> {
    EXAMPLES.iter().find(|e| e.name == name)
}

/// Free parameters of the first two families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyParams {
    pub beta: OddRatio,
    pub lambda: u32,
    pub tau: i64,
}

impl FamilyParams {
    pub const DEFAULT_EXAMPLE1: FamilyParams = FamilyParams {
        beta: OddRatio::ONE,
        lambda: 1,
        tau: 3,
    };
    pub const DEFAULT_EXAMPLE2: FamilyParams = FamilyParams {
        beta: OddRatio::ONE,
        lambda: 1,
        tau: 1,
    };
}

fn unit_exponents(beta: OddRatio) -> Exponents {
    Exponents {
        alpha: OddRatio::ONE,
        beta,
        gamma: OddRatio::ONE,
    }
}

fn identity() -> NonlinearityDoc {
    NonlinearityDoc::OddPower {
        coefficient: 1.0,
        exponent: OddRatio::ONE,
    }
}

/// `Σ_k weight_k · (lead_k · ratio^n + shift)^β`
fn weighted_powers(terms: &[(f64, f64)], ratio: f64, shift: f64, beta: OddRatio) -> SequenceSpec {
    SequenceSpec::add(
        terms
            .iter()
            .map(|&(weight, lead)| {
                let inner = SequenceSpec::pow(
                    SequenceSpec::add(vec![
                        SequenceSpec::geometric(lead, ratio),
                        SequenceSpec::constant(shift),
                    ]),
                    beta,
                );
                if weight == 1.0 {
                    inner
                } else {
                    SequenceSpec::mul(vec![SequenceSpec::constant(weight), inner])
                }
            })
            .collect(),
    )
}

fn start_index(delta: i64, tau: i64) -> i64 {
    1.max(delta).max(tau)
}

/// Neutral term `2^-n x_{n-2λ}`, `f = sgn`,
/// `d_n = (9·2^{n+2} + 2^{2-2λ})^β + 2(9·2^{n+1} + 2^{2-2λ})^β + (9·2^n + 2^{2-2λ})^β`.
pub fn example1(params: FamilyParams) -> EquationDocument {
    let delta = 2 * params.lambda as i64;
    let shift = 2f64.powi(2 - 2 * params.lambda as i32);
    EquationDocument {
        name: Some("example-1".into()),
        description: Some(EXAMPLES[0].summary.into()),
        n0: start_index(delta, params.tau),
        tau: params.tau,
        delta,
        exponents: unit_exponents(params.beta),
        f: NonlinearityDoc::Signum { coefficient: 1.0 },
        p: SequenceSpec::geometric(1.0, 0.5),
        d: weighted_powers(
            &[(1.0, 36.0), (2.0, 18.0), (1.0, 9.0)],
            2.0,
            shift,
            params.beta,
        ),
        a: SequenceSpec::constant(1.0),
        b: SequenceSpec::constant(1.0),
        c: SequenceSpec::constant(1.0),
        solution: Some(ClosedFormSpec::SignGeometric {
            scale: 1.0,
            ratio: 2.0,
            alternating: true,
        }),
    }
}

/// Neutral term `3^-n x_{n-2λ}`, `f(x) = x`,
/// `d_n = (4 + 16/3^{n+4})^β + 2(4 + 16/3^{n+3})^β + (4 + 16/3^{n+2})^β`.
pub fn example2(params: FamilyParams) -> EquationDocument {
    let delta = 2 * params.lambda as i64;
    let third = 1.0 / 3.0;
    EquationDocument {
        name: Some("example-2".into()),
        description: Some(EXAMPLES[1].summary.into()),
        n0: start_index(delta, params.tau),
        tau: params.tau,
        delta,
        exponents: unit_exponents(params.beta),
        f: identity(),
        p: SequenceSpec::geometric(1.0, third),
        d: weighted_powers(
            &[(1.0, 16.0 / 81.0), (2.0, 16.0 / 27.0), (1.0, 16.0 / 9.0)],
            third,
            4.0,
            params.beta,
        ),
        a: SequenceSpec::constant(1.0),
        b: SequenceSpec::constant(1.0),
        c: SequenceSpec::constant(1.0),
        solution: Some(ClosedFormSpec::SignGeometric {
            scale: 1.0,
            ratio: 1.0,
            alternating: true,
        }),
    }
}

fn fourth_order_family(
    name: &str,
    summary: &str,
    d: SequenceSpec,
    solution: ClosedFormSpec,
) -> EquationDocument {
    EquationDocument {
        name: Some(name.into()),
        description: Some(summary.into()),
        n0: 2,
        tau: -3,
        delta: 2,
        exponents: unit_exponents(OddRatio::ONE),
        f: identity(),
        p: SequenceSpec::constant(0.25),
        d,
        a: SequenceSpec::affine(1.0, 0.0),
        b: SequenceSpec::constant(1.0),
        c: SequenceSpec::constant(1.0),
        solution: Some(solution),
    }
}

/// `d_n = 1 - n`, solution `-1/2^n`.
pub fn example3() -> EquationDocument {
    fourth_order_family(
        "example-3",
        EXAMPLES[2].summary,
        SequenceSpec::affine(-1.0, 1.0),
        ClosedFormSpec::SignGeometric {
            scale: -1.0,
            ratio: 0.5,
            alternating: false,
        },
    )
}

/// `d_n = 10(2n + 1)`, solution `(-1)^n/10`.
pub fn example4() -> EquationDocument {
    fourth_order_family(
        "example-4",
        EXAMPLES[3].summary,
        SequenceSpec::affine(20.0, 10.0),
        ClosedFormSpec::SignGeometric {
            scale: 0.1,
            ratio: 1.0,
            alternating: true,
        },
    )
}

/// Builds a bundled example, applying `params` to the families that take them.
pub fn build(name: &str, params: Option<FamilyParams>) -> Option<EquationDocument> {
    match name {
        "example-1" => Some(example1(params.unwrap_or(FamilyParams::DEFAULT_EXAMPLE1))),
        "example-2" => Some(example2(params.unwrap_or(FamilyParams::DEFAULT_EXAMPLE2))),
        "example-3" => Some(example3()),
        "example-4" => Some(example4()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_documents_match_builders() {
        for ex in &EXAMPLES {
            let parsed = EquationDocument::parse(ex.document).unwrap();
            assert_eq!(Some(parsed), build(ex.name, None), "{}", ex.name);
        }
    }

    #[test]
    fn all_examples_validate() {
        for ex in &EXAMPLES {
            let doc = EquationDocument::parse(ex.document).unwrap();
            doc.to_equation().unwrap();
        }
    }
}
