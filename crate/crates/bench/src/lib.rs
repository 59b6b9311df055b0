//! Shared fixtures for the benchmarks.

use quasidiff::bundled;
use quasidiff::EquationSpec;

pub fn bundled_equation(name: &str) -> EquationSpec {
    bundled::build(name, None)
        .expect("bundled example")
        .to_equation()
        .expect("valid bundled equation")
}
