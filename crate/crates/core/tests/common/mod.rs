//! Shared generators for the integration suites.
#![allow(dead_code)]

use coorbit_core::io::fixtures;
use coorbit_core::rational::ratio;
use coorbit_core::{semidirect_from_derivation, Covector, LieAlgebra, QMatrix, Rational};
use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::{Config, FileFailurePersistence, RngSeed, TestRunner};

/// Every built-in fixture algebra, by name.
pub fn fixture_algebras() -> Vec<(String, LieAlgebra)> {
    fixtures::fixtures()
        .into_iter()
        .map(|(name, doc)| (name.to_string(), doc.to_algebra().unwrap()))
        .collect()
}

/// Every (fixture, named functional) pair.
pub fn fixture_functionals() -> Vec<(String, LieAlgebra, String, Covector)> {
    let mut out = Vec::new();
    for (name, doc) in fixtures::fixtures() {
        let alg = doc.to_algebra().unwrap();
        for f in doc.functionals.keys() {
            out.push((name.to_string(), alg.clone(), f.clone(), doc.functional(f).unwrap()));
        }
    }
    out
}

pub fn nilpotent_fixtures() -> Vec<(String, LieAlgebra)> {
    fixture_algebras()
        .into_iter()
        .filter(|(_, a)| a.is_nilpotent())
        .collect()
}

/// Deterministic runner: fixed seed, no failure persistence files.
pub fn runner(seed: u64, cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: Some(Box::new(FileFailurePersistence::Off)),
        ..Config::default()
    })
}

/// `p/q` with `|p| <= 10`, `1 <= q <= 10`.
pub fn rational() -> impl Strategy<Value = Rational> {
    (-10i64..=10, 1i64..=10).prop_map(|(p, q)| ratio(p, q))
}

pub fn small_int() -> impl Strategy<Value = Rational> {
    (-3i64..=3).prop_map(|p| ratio(p, 1))
}

pub fn vector(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rational(), n)
}

pub fn matrix(n: usize) -> impl Strategy<Value = QMatrix> {
    prop::collection::vec(rational(), n * n)
        .prop_map(move |e| QMatrix::from_rows(n, e.chunks(n).map(<[_]>::to_vec).collect()).unwrap())
}

/// Invertible matrix with small integer entries, so transformed algebras stay readable.
pub fn invertible(n: usize) -> impl Strategy<Value = QMatrix> {
    prop::collection::vec(small_int(), n * n)
        .prop_map(move |e| QMatrix::from_rows(n, e.chunks(n).map(<[_]>::to_vec).collect()).unwrap())
        .prop_filter("singular", |t| !t.determinant().unwrap().is_zero())
}

/// Fixture algebras plus random semidirect products `Q^k ⋊ R`.
pub fn algebra() -> impl Strategy<Value = LieAlgebra> {
    let fixtures = fixture_algebras();
    let count = fixtures.len();
    prop_oneof![
        3 => (0..count).prop_map(move |i| fixtures[i].1.clone()),
        1 => (1usize..=3).prop_flat_map(matrix).prop_map(|d| semidirect_from_derivation(&d).unwrap()),
    ]
}

/// An algebra with either one of its named fixture functionals or a random one.
pub fn algebra_and_functional() -> impl Strategy<Value = (LieAlgebra, Covector)> {
    let named = fixture_functionals();
    let count = named.len();
    prop_oneof![
        1 => (0..count).prop_map(move |i| (named[i].1.clone(), named[i].3.clone())),
        1 => algebra().prop_flat_map(|alg| {
            let n = alg.dim();
            (Just(alg), prop::collection::vec(small_int(), n).prop_map(Covector::new))
        }),
    ]
}
