//! Built-in algebra documents with hand-stated expected classifications.

use std::collections::BTreeMap;

use super::document::{parse_algebra, AlgebraDocument};

const SOURCES: &[(&str, &str)] = &[
    ("abelian3", include_str!("../../fixtures/abelian3.json")),
    ("heisenberg3", include_str!("../../fixtures/heisenberg3.json")),
    ("heisenberg5", include_str!("../../fixtures/heisenberg5.json")),
    ("filiform4", include_str!("../../fixtures/filiform4.json")),
    ("e2-cover", include_str!("../../fixtures/e2-cover.json")),
    ("paper-5dim", include_str!("../../fixtures/paper-5dim.json")),
    ("paper-6dim", include_str!("../../fixtures/paper-6dim.json")),
    ("semidirect-sol3", include_str!("../../fixtures/semidirect-sol3.json")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    SOURCES.iter().map(|(n, _)| *n)
}

/// Raw JSON text of a built-in fixture.
pub fn source(name: &str) -> Option<&'static str> {
    SOURCES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn fixture(name: &str) -> Option<AlgebraDocument> {
    source(name).map(|s| parse_algebra(s).unwrap_or_else(|e| panic!("built-in fixture {name}: {e}")))
}

pub fn fixtures() -> BTreeMap<&'static str, AlgebraDocument> {
    names().map(|n| (n, fixture(n).expect("listed"))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_parses_under_its_own_name() {
        for (name, doc) in fixtures() {
            assert_eq!(doc.name, name);
            assert!(doc.to_algebra().unwrap().validate().is_valid(), "{name}");
        }
    }
}
