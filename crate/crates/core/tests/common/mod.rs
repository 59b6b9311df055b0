#![allow(dead_code)]

use quasidiff::model::{EquationParams, Nonlinearity};
use quasidiff::solver::SeedWindow;
use quasidiff::{EquationSpec, OddRatio, SequenceSpec};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn exponent(r: &mut impl Rng) -> OddRatio {
    [(1, 1), (3, 1), (5, 3)].map(|(n, d)| OddRatio::new(n, d).unwrap())[r.gen_range(0..3)]
}

/// Positive sequence from one of the built-in families.
pub fn positive(r: &mut impl Rng) -> SequenceSpec {
    match r.gen_range(0..3) {
        0 => SequenceSpec::constant(r.gen_range(0.5..2.0)),
        1 => SequenceSpec::affine(r.gen_range(0.05..1.0), r.gen_range(0.5..2.0)),
        _ => SequenceSpec::geometric(r.gen_range(0.5..2.0), r.gen_range(0.95..1.05)),
    }
}

pub fn neutral(r: &mut impl Rng) -> SequenceSpec {
    match r.gen_range(0..3) {
        0 => SequenceSpec::constant(r.gen_range(-0.6..0.9)),
        1 => SequenceSpec::geometric(r.gen_range(-0.9..0.9), r.gen_range(0.3..0.95)),
        _ => SequenceSpec::constant(0.0),
    }
}

pub fn forcing(r: &mut impl Rng) -> SequenceSpec {
    let sign = if r.gen_bool(0.5) { 1.0 } else { -1.0 };
    let pos = positive(r);
    SequenceSpec::mul(vec![SequenceSpec::constant(sign), pos])
}

pub fn nonlinearity(r: &mut impl Rng) -> Nonlinearity {
    match r.gen_range(0..3) {
        0 => Nonlinearity::identity(),
        1 => Nonlinearity::odd_power(r.gen_range(0.5..2.0), OddRatio::new(1, 3).unwrap()),
        _ => Nonlinearity::signum(r.gen_range(0.5..2.0)),
    }
}

/// Small forward-mode equation with `δ ∈ {0,1,2,3}` and `τ ∈ {-2,…,3}`.
pub fn random_equation(r: &mut impl Rng) -> EquationSpec {
    let delta = r.gen_range(0..=3);
    let tau = r.gen_range(-2..=3);
    EquationSpec::new(EquationParams {
        alpha: exponent(r),
        beta: exponent(r),
        gamma: exponent(r),
        tau,
        delta,
        p: neutral(r),
        d: forcing(r),
        a: positive(r),
        b: positive(r),
        c: positive(r),
        f: nonlinearity(r),
        n0: 1.max(delta).max(tau),
    })
    .expect("generated equation is valid")
}

pub fn random_seed(eq: &EquationSpec, r: &mut impl Rng) -> SeedWindow {
    let (first, last) = SeedWindow::required_range(eq);
    SeedWindow::new(
        first,
        (first..=last).map(|_| r.gen_range(-1.0..1.0)).collect(),
    )
}
