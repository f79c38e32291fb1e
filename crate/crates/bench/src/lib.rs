//! Shared inputs for the benchmarks in `benches/`.

use coorbit_core::io::fixtures;
use coorbit_core::{Covector, LieAlgebra};

/// A built-in fixture algebra together with one of its named functionals.
pub fn fixture_input(name: &str, functional: &str) -> (LieAlgebra, Covector) {
    let doc = fixtures::fixture(name).unwrap_or_else(|| panic!("no fixture `{name}`"));
    let alg = doc.to_algebra().expect("fixture algebra is valid");
    let ell = doc.functional(functional).expect("fixture functional exists");
    (alg, ell)
}
