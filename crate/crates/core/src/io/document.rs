use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::LieAlgebra;
use crate::covector::Covector;
use crate::error::{Error, Result};
use crate::numeric::{ExpTerm, Expectation, FixtureInvariant, MidpointFixture, Monomial, Parametrization, SparsePoly};
use crate::orbit::ClassificationReport;
use crate::rational::{format_rational, parse_rational, Rational};
use crate::subspace::Subspace;

/// A rational serialized as `"p/q"`; JSON numbers are rejected.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalString(pub Rational);

impl Serialize for RationalString {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for RationalString {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl de::Visitor<'_> for V {
            type Value = RationalString;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "a rational string such as \"3\" or \"-1/2\"")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Self::Value, E> {
                parse_rational(v).map(RationalString).map_err(E::custom)
            }
        }
        d.deserialize_str(V)
    }
}

impl From<Rational> for RationalString {
    fn from(q: Rational) -> Self {
        Self(q)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: String,
    pub j: String,
    pub coeffs: BTreeMap<String, RationalString>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonomialDoc {
    pub coeff: RationalString,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub powers: BTreeMap<String, u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvariantDoc {
    pub name: String,
    pub numerator: Vec<MonomialDoc>,
    pub denominator: Vec<MonomialDoc>,
    /// A rational string, or `"positive"` / `"negative"`.
    pub expect: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpTermDoc {
    pub coeff: RationalString,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub powers: BTreeMap<String, u32>,
    #[serde(default, rename = "exp", skip_serializing_if = "BTreeMap::is_empty")]
    pub exponent: BTreeMap<String, RationalString>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParametrizationDoc {
    pub name: String,
    pub params: Vec<String>,
    /// Basis name -> terms of the matching dual coordinate; absent coordinates are zero.
    pub components: BTreeMap<String, Vec<ExpTermDoc>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MidpointDoc {
    pub first: String,
    pub second: String,
    pub p: f64,
    pub a: f64,
    pub target: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitFixturesDoc {
    /// Functional whose orbit the invariants and parametrizations describe.
    pub base: String,
    #[serde(default)]
    pub parametrizations: Vec<ParametrizationDoc>,
    #[serde(default)]
    pub invariants: Vec<InvariantDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub midpoint: Option<MidpointDoc>,
}

/// Canonical rational basis matrix of a subspace (one row per basis vector).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceDoc {
    pub ambient_dim: usize,
    pub basis: Vec<Vec<RationalString>>,
}

impl SubspaceDoc {
    pub fn from_subspace(v: &Subspace) -> Self {
        Self {
            ambient_dim: v.ambient_dim(),
            basis: v
                .basis()
                .iter()
                .map(|b| b.iter().cloned().map(RationalString).collect())
                .collect(),
        }
    }

    pub fn to_subspace(&self) -> Result<Subspace> {
        let basis = self
            .basis
            .iter()
            .map(|b| b.iter().map(|q| q.0.clone()).collect())
            .collect();
        Subspace::from_canonical(self.ambient_dim, basis)
    }
}

/// Hand-stated classification facts for one functional of a fixture.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedReport {
    pub functional: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solvable: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nilpotent: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unimodular: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponentiality: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stabilizer: Option<SubspaceDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbit_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stabilizer_is_ideal: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pker_algebra: Option<SubspaceDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub si_mod_pker: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quotient_unimodular: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub affine_hull_direction: Option<SubspaceDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero_in_affine_hull: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbit_closed_affine: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cs_status: Option<String>,
}

impl ExpectedReport {
    /// Human-readable list of fields where `report` disagrees with the expectation.
    pub fn mismatches(&self, report: &ClassificationReport) -> Result<Vec<String>> {
        let mut out = Vec::new();
        let mut check = |field: &str, expected: Option<String>, actual: String| {
            if let Some(e) = expected {
                if e != actual {
                    out.push(format!("{field}: expected {e}, got {actual}"));
                }
            }
        };
        let s = |b: Option<bool>| b.map(|b| b.to_string());
        check("solvable", s(self.solvable), report.solvable.to_string());
        check("nilpotent", s(self.nilpotent), report.nilpotent.to_string());
        check("unimodular", s(self.unimodular), report.unimodular.to_string());
        check(
            "exponentiality",
            self.exponentiality.clone(),
            report.exponentiality.label().to_string(),
        );
        check(
            "orbit_dim",
            self.orbit_dim.map(|d| d.to_string()),
            report.orbit_dim.to_string(),
        );
        check(
            "stabilizer_is_ideal",
            s(self.stabilizer_is_ideal),
            report.stabilizer_is_ideal.to_string(),
        );
        check("si_mod_pker", s(self.si_mod_pker), report.si_mod_pker.to_string());
        check(
            "quotient_unimodular",
            s(self.quotient_unimodular),
            report.quotient_unimodular.to_string(),
        );
        check(
            "zero_in_affine_hull",
            s(self.zero_in_affine_hull),
            report.zero_in_affine_hull.to_string(),
        );
        check(
            "orbit_closed_affine",
            self.orbit_closed_affine.clone(),
            report.orbit_closed_affine.label().to_string(),
        );
        check(
            "cs_status",
            self.cs_status.clone(),
            report.cs_status.label().to_string(),
        );
        for (field, expected, actual) in [
            ("stabilizer", &self.stabilizer, &report.stabilizer),
            ("pker_algebra", &self.pker_algebra, &report.pker_algebra),
            (
                "affine_hull_direction",
                &self.affine_hull_direction,
                &report.affine_hull_direction,
            ),
        ] {
            if let Some(e) = expected {
                if e.to_subspace()? != *actual {
                    out.push(format!("{field}: expected {:?}, got {:?}", e.to_subspace()?, actual));
                }
            }
        }
        Ok(out)
    }
}

/// The on-disk description of a Lie algebra and its named functionals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub name: String,
    pub dim: usize,
    pub basis: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
    /// Name -> full coefficient list in the dual basis.
    #[serde(default)]
    pub functionals: BTreeMap<String, Vec<RationalString>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metadata: BTreeMap<String, serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbit_fixtures: Option<OrbitFixturesDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub expected: Vec<ExpectedReport>,
}

/// Parse failure with a line/column (syntax and scalar errors) or a document path (semantic errors).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub message: String,
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub path: Option<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.column) {
            (Some(l), Some(c)) => write!(f, "{l}:{c}: ")?,
            (Some(l), None) => write!(f, "{l}: ")?,
            _ => {}
        }
        if let Some(p) = &self.path {
            write!(f, "at {p}: ")?;
        }
        write!(f, "{}", self.message)
    }
}

impl std::error::Error for ParseError {}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Input(e.to_string())
    }
}

/// Parses and checks a document. Rational literals are parsed exactly.
pub fn parse_algebra(text: &str) -> std::result::Result<AlgebraDocument, ParseError> {
    let doc: AlgebraDocument = serde_json::from_str(text).map_err(|e| ParseError {
        message: e.to_string(),
        line: Some(e.line()),
        column: Some(e.column()),
        path: None,
    })?;
    doc.check().map_err(|(path, message, token)| {
        let (line, column) = token
            .and_then(|t| locate(text, &t))
            .map_or((None, None), |(l, c)| (Some(l), Some(c)));
        ParseError {
            message,
            line,
            column,
            path: Some(path),
        }
    })?;
    Ok(doc)
}

/// First position of `"token"` in the text, 1-based.
fn locate(text: &str, token: &str) -> Option<(usize, usize)> {
    let quoted = format!("\"{token}\"");
    let offset = text.find(&quoted)?;
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = offset - before.rfind('\n').map_or(0, |p| p + 1) + 1;
    Some((line, column))
}

type CheckError = (String, String, Option<String>);

impl AlgebraDocument {
    fn check(&self) -> std::result::Result<(), CheckError> {
        let fail = |path: String, msg: String, token: Option<&str>| Err((path, msg, token.map(str::to_string)));
        if self.basis.is_empty() {
            return fail("basis".into(), "basis must be nonempty".into(), None);
        }
        if self.dim != self.basis.len() {
            return fail(
                "dim".into(),
                format!("dim is {} but the basis has {} names", self.dim, self.basis.len()),
                None,
            );
        }
        let mut seen = HashSet::new();
        for (k, name) in self.basis.iter().enumerate() {
            if !seen.insert(name) {
                return fail(
                    format!("basis[{k}]"),
                    format!("duplicate basis name `{name}`"),
                    Some(name),
                );
            }
        }
        let known = |n: &str| self.basis.iter().any(|b| b == n);
        let mut pairs = HashSet::new();
        for (k, b) in self.brackets.iter().enumerate() {
            for (field, name) in [("i", &b.i), ("j", &b.j)] {
                if !known(name) {
                    return fail(
                        format!("brackets[{k}].{field}"),
                        format!("unknown basis name `{name}`"),
                        Some(name),
                    );
                }
            }
            for name in b.coeffs.keys() {
                if !known(name) {
                    return fail(
                        format!("brackets[{k}].coeffs"),
                        format!("unknown basis name `{name}`"),
                        Some(name),
                    );
                }
            }
            if b.i == b.j {
                return fail(format!("brackets[{k}]"), format!("self-bracket [{0}, {0}]", b.i), None);
            }
            let key = if b.i < b.j { (&b.i, &b.j) } else { (&b.j, &b.i) };
            if !pairs.insert(key) {
                return fail(
                    format!("brackets[{k}]"),
                    format!("duplicate bracket [{}, {}]", b.i, b.j),
                    None,
                );
            }
        }
        for (name, coeffs) in &self.functionals {
            if coeffs.len() != self.dim {
                return fail(
                    format!("functionals.{name}"),
                    format!("expected {} coefficients, found {}", self.dim, coeffs.len()),
                    Some(name),
                );
            }
        }
        if let Some(of) = &self.orbit_fixtures {
            let has_functional = |n: &str| self.functionals.contains_key(n);
            if !has_functional(&of.base) {
                return fail(
                    "orbit_fixtures.base".into(),
                    format!("unknown functional `{}`", of.base),
                    None,
                );
            }
            for (k, p) in of.parametrizations.iter().enumerate() {
                for (name, terms) in &p.components {
                    if !known(name) {
                        return fail(
                            format!("orbit_fixtures.parametrizations[{k}].components"),
                            format!("unknown basis name `{name}`"),
                            Some(name),
                        );
                    }
                    for t in terms {
                        for v in t.powers.keys().chain(t.exponent.keys()) {
                            if !p.params.contains(v) {
                                return fail(
                                    format!("orbit_fixtures.parametrizations[{k}]"),
                                    format!("unknown parameter `{v}`"),
                                    None,
                                );
                            }
                        }
                    }
                }
            }
            for (k, inv) in of.invariants.iter().enumerate() {
                for m in inv.numerator.iter().chain(&inv.denominator) {
                    for v in m.powers.keys() {
                        if !known(v) {
                            return fail(
                                format!("orbit_fixtures.invariants[{k}]"),
                                format!("unknown basis name `{v}`"),
                                None,
                            );
                        }
                    }
                }
                if parse_expectation(&inv.expect).is_none() {
                    return fail(
                        format!("orbit_fixtures.invariants[{k}].expect"),
                        format!("expected a rational, `positive` or `negative`, got `{}`", inv.expect),
                        None,
                    );
                }
            }
            if let Some(m) = &of.midpoint {
                for name in [&m.first, &m.second] {
                    if !of.parametrizations.iter().any(|p| &p.name == name) {
                        return fail(
                            "orbit_fixtures.midpoint".into(),
                            format!("unknown parametrization `{name}`"),
                            None,
                        );
                    }
                }
                if !has_functional(&m.target) {
                    return fail(
                        "orbit_fixtures.midpoint.target".into(),
                        format!("unknown functional `{}`", m.target),
                        None,
                    );
                }
            }
        }
        for (k, e) in self.expected.iter().enumerate() {
            if !self.functionals.contains_key(&e.functional) {
                return fail(
                    format!("expected[{k}].functional"),
                    format!("unknown functional `{}`", e.functional),
                    None,
                );
            }
        }
        Ok(())
    }

    fn index(&self, name: &str) -> Result<usize> {
        self.basis
            .iter()
            .position(|b| b == name)
            .ok_or_else(|| Error::Input(format!("unknown basis name `{name}`")))
    }

    /// Builds the algebra. Structural checks only; call `validate` for Jacobi.
    pub fn to_algebra(&self) -> Result<LieAlgebra> {
        let n = self.basis.len();
        let mut structure = BTreeMap::new();
        for b in &self.brackets {
            let (i, j) = (self.index(&b.i)?, self.index(&b.j)?);
            let mut v = vec![Rational::default(); n];
            for (name, c) in &b.coeffs {
                v[self.index(name)?] += &c.0;
            }
            match i.cmp(&j) {
                std::cmp::Ordering::Less => {
                    structure.insert((i, j), v);
                }
                std::cmp::Ordering::Greater => {
                    structure.insert((j, i), v.into_iter().map(|c| -c).collect());
                }
                std::cmp::Ordering::Equal => return Err(Error::Input(format!("self-bracket [{}, {}]", b.i, b.j))),
            }
        }
        if self.dim != n {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: n,
            });
        }
        LieAlgebra::new(self.basis.clone(), structure)
    }

    pub fn from_algebra(name: &str, alg: &LieAlgebra) -> Self {
        let mut brackets: BTreeMap<(usize, usize), BTreeMap<String, RationalString>> = BTreeMap::new();
        for (i, j, k, c) in alg.structure_constants() {
            brackets
                .entry((i, j))
                .or_default()
                .insert(alg.name(k).to_string(), RationalString(c.clone()));
        }
        Self {
            name: name.to_string(),
            dim: alg.dim(),
            basis: alg.names().to_vec(),
            brackets: brackets
                .into_iter()
                .map(|((i, j), coeffs)| BracketEntry {
                    i: alg.name(i).to_string(),
                    j: alg.name(j).to_string(),
                    coeffs,
                })
                .collect(),
            functionals: BTreeMap::new(),
            metadata: BTreeMap::new(),
            orbit_fixtures: None,
            expected: Vec::new(),
        }
    }

    pub fn functional(&self, name: &str) -> Option<Covector> {
        self.functionals
            .get(name)
            .map(|c| Covector::new(c.iter().map(|q| q.0.clone()).collect()))
    }

    /// A named functional, or inline `name=p/q` pairs over dual basis names
    /// (`B=1,S=1` or `B*=1,S*=1`).
    pub fn resolve_functional(&self, spec: &str) -> Result<Covector> {
        if let Some(c) = self.functional(spec) {
            return Ok(c);
        }
        parse_functional_spec(&self.basis, spec)
    }

    pub fn emit(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }

    /// Numeric fixture data resolved against the basis, if present.
    pub fn orbit_fixture_data(&self) -> Result<Option<OrbitFixtureData>> {
        let Some(of) = &self.orbit_fixtures else {
            return Ok(None);
        };
        let n = self.basis.len();
        let poly = |ms: &[MonomialDoc]| -> Result<SparsePoly> {
            Ok(SparsePoly {
                terms: ms
                    .iter()
                    .map(|m| {
                        Ok(Monomial {
                            coeff: m.coeff.0.clone(),
                            powers: m
                                .powers
                                .iter()
                                .map(|(v, &k)| Ok((self.index(v)?, k)))
                                .collect::<Result<_>>()?,
                        })
                    })
                    .collect::<Result<_>>()?,
            })
        };
        let invariants = of
            .invariants
            .iter()
            .map(|inv| {
                Ok(FixtureInvariant {
                    name: inv.name.clone(),
                    numerator: poly(&inv.numerator)?,
                    denominator: poly(&inv.denominator)?,
                    expectation: parse_expectation(&inv.expect)
                        .ok_or_else(|| Error::Input(format!("bad expectation `{}`", inv.expect)))?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let parametrizations = of
            .parametrizations
            .iter()
            .map(|p| {
                let pidx = |v: &str| {
                    p.params
                        .iter()
                        .position(|x| x == v)
                        .ok_or_else(|| Error::Input(format!("unknown parameter `{v}`")))
                };
                let mut components = vec![Vec::new(); n];
                for (name, terms) in &p.components {
                    components[self.index(name)?] = terms
                        .iter()
                        .map(|t| {
                            Ok(ExpTerm {
                                coeff: t.coeff.0.clone(),
                                powers: t
                                    .powers
                                    .iter()
                                    .map(|(v, &k)| Ok((pidx(v)?, k)))
                                    .collect::<Result<_>>()?,
                                exponent: t
                                    .exponent
                                    .iter()
                                    .map(|(v, c)| Ok((pidx(v)?, c.0.clone())))
                                    .collect::<Result<_>>()?,
                            })
                        })
                        .collect::<Result<_>>()?;
                }
                Ok(Parametrization {
                    name: p.name.clone(),
                    params: p.params.clone(),
                    components,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let find = |name: &str| {
            parametrizations
                .iter()
                .find(|p| p.name == name)
                .cloned()
                .ok_or_else(|| Error::Input(format!("unknown parametrization `{name}`")))
        };
        let midpoint = match &of.midpoint {
            None => None,
            Some(m) => Some(MidpointData {
                fixture: MidpointFixture {
                    first: find(&m.first)?,
                    second: find(&m.second)?,
                    invariants: invariants.clone(),
                },
                p: m.p,
                a: m.a,
                target: self
                    .functional(&m.target)
                    .ok_or_else(|| Error::Input(format!("unknown functional `{}`", m.target)))?,
            }),
        };
        let base = self
            .functional(&of.base)
            .ok_or_else(|| Error::Input(format!("unknown functional `{}`", of.base)))?;
        Ok(Some(OrbitFixtureData {
            base_name: of.base.clone(),
            base,
            invariants,
            parametrizations,
            midpoint,
        }))
    }
}

/// Resolved numeric fixture data for one orbit.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitFixtureData {
    pub base_name: String,
    pub base: Covector,
    pub invariants: Vec<FixtureInvariant>,
    pub parametrizations: Vec<Parametrization>,
    pub midpoint: Option<MidpointData>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MidpointData {
    pub fixture: MidpointFixture,
    pub p: f64,
    pub a: f64,
    pub target: Covector,
}

fn parse_expectation(s: &str) -> Option<Expectation> {
    match s {
        "positive" => Some(Expectation::Positive),
        "negative" => Some(Expectation::Negative),
        other => parse_rational(other).ok().map(Expectation::Value),
    }
}

/// Parses `name=p/q` pairs separated by commas; names may carry a trailing `*`.
pub fn parse_functional_spec(basis: &[String], spec: &str) -> Result<Covector> {
    let mut coeffs = vec![Rational::default(); basis.len()];
    let mut any = false;
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| Error::Input(format!("expected `name=p/q` or a functional name, got `{part}`")))?;
        let name = name.trim();
        let name = name.strip_suffix('*').unwrap_or(name);
        let i = basis
            .iter()
            .position(|b| b == name)
            .ok_or_else(|| Error::Input(format!("unknown basis name `{name}`")))?;
        let q = parse_rational(value).map_err(|e| Error::Input(e.to_string()))?;
        coeffs[i] += q;
        any = true;
    }
    if !any {
        return Err(Error::Input(format!("unknown functional `{spec}`")));
    }
    Ok(Covector::new(coeffs))
}
