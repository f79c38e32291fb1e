//! Plain-text views of the JSON documents.

use std::fmt::Write;

use coorbit_core::io::{AlgebraDocument, RationalString, ReportDocument, SubspaceDoc};
use coorbit_core::{format_rational, LieAlgebra, Rational, ValidationReport};

fn term(c: &Rational, name: &str) -> String {
    if *c == Rational::from_integer(1.into()) {
        name.to_string()
    } else if *c == Rational::from_integer((-1).into()) {
        format!("-{name}")
    } else {
        format!("{}*{name}", format_rational(c))
    }
}

fn combination<'a>(names: impl IntoIterator<Item = String>, coeffs: impl IntoIterator<Item = &'a Rational>) -> String {
    let terms: Vec<String> = names
        .into_iter()
        .zip(coeffs)
        .filter(|(_, c)| **c != Rational::default())
        .map(|(n, c)| term(c, &n))
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ").replace("+ -", "- ")
    }
}

pub fn covector_text(basis: &[String], coeffs: &[Rational]) -> String {
    combination(basis.iter().map(|n| format!("{n}*")), coeffs)
}

fn strings(v: &[RationalString]) -> Vec<Rational> {
    v.iter().map(|q| q.0.clone()).collect()
}

fn subspace_text(names: &[String], v: &SubspaceDoc) -> String {
    if v.basis.is_empty() {
        return "{0}".to_string();
    }
    let vectors: Vec<String> = v
        .basis
        .iter()
        .map(|b| combination(names.iter().cloned(), &strings(b)))
        .collect();
    format!("span{{{}}}", vectors.join(", "))
}

pub fn jacobi_failure(alg: &LieAlgebra, report: &ValidationReport) -> String {
    let mut s = String::from("Jacobi identity fails");
    for v in &report.violations {
        let (i, j, k) = v.triple;
        let _ = write!(
            s,
            "\n  [{a}, [{b}, {c}]] + [{b}, [{c}, {a}]] + [{c}, [{a}, {b}]] = {r}",
            a = alg.name(i),
            b = alg.name(j),
            c = alg.name(k),
            r = combination(alg.names().iter().cloned(), &v.residual),
        );
    }
    s
}

pub fn report_text(rd: &ReportDocument) -> Result<String, std::fmt::Error> {
    let r = &rd.report;
    let b = &rd.basis;
    let duals: Vec<String> = b.iter().map(|n| format!("{n}*")).collect();
    let mut s = String::new();
    writeln!(s, "algebra: {} (dim {})", rd.algebra, b.len())?;
    writeln!(s, "functional: {}", covector_text(b, &strings(&rd.functional)))?;
    writeln!(s, "solvable: {}", r.solvable)?;
    writeln!(s, "nilpotent: {}", r.nilpotent)?;
    match &r.nonunimodular_witness {
        None => writeln!(s, "unimodular: true")?,
        Some(w) => writeln!(
            s,
            "unimodular: false (tr ad_{} = {})",
            w.basis,
            format_rational(&w.trace.0)
        )?,
    }
    write!(s, "exponentiality: {}", r.exponentiality.status)?;
    if let Some(reason) = &r.exponentiality.reason {
        write!(s, " ({reason}")?;
        if let Some(w) = &r.exponentiality.witness {
            write!(s, ", X = {}", combination(b.iter().cloned(), &strings(w)))?;
        }
        if let Some(n) = r.exponentiality.negative_root_count {
            write!(s, ", {n} negative root(s) of the squares polynomial")?;
        }
        write!(s, ")")?;
    }
    if let Some(n) = r.exponentiality.samples_checked {
        write!(s, " (basis and {n} samples checked)")?;
    }
    writeln!(s)?;
    writeln!(s, "stabilizer: {}", subspace_text(b, &r.stabilizer))?;
    writeln!(s, "orbit_dim: {}", r.orbit_dim)?;
    writeln!(s, "stabilizer_is_ideal: {}", r.stabilizer_is_ideal)?;
    writeln!(s, "pker_algebra: {}", subspace_text(b, &r.pker_algebra))?;
    writeln!(s, "si_mod_pker: {}", r.si_mod_pker)?;
    writeln!(s, "quotient_unimodular: {}", r.quotient_unimodular)?;
    writeln!(
        s,
        "affine_hull_direction: {}",
        subspace_text(&duals, &r.affine_hull_direction)
    )?;
    writeln!(s, "zero_in_affine_hull: {}", r.zero_in_affine_hull)?;
    writeln!(s, "orbit_closed_affine: {}", r.orbit_closed_affine)?;
    writeln!(s, "cs_status: {}", r.cs_status)?;
    for note in &r.notes {
        writeln!(s, "note: {note}")?;
    }
    Ok(s)
}

pub fn document_text(doc: &AlgebraDocument) -> Result<String, std::fmt::Error> {
    let mut s = String::new();
    writeln!(s, "{} (dim {})", doc.name, doc.dim)?;
    if let Some(d) = doc.metadata.get("description").and_then(|v| v.as_str()) {
        writeln!(s, "{d}")?;
    }
    writeln!(s, "basis: {}", doc.basis.join(", "))?;
    writeln!(s, "brackets:")?;
    if doc.brackets.is_empty() {
        writeln!(s, "  (abelian)")?;
    }
    for br in &doc.brackets {
        let names: Vec<String> = br.coeffs.keys().cloned().collect();
        let coeffs: Vec<Rational> = br.coeffs.values().map(|q| q.0.clone()).collect();
        writeln!(s, "  [{}, {}] = {}", br.i, br.j, combination(names, &coeffs))?;
    }
    writeln!(s, "functionals:")?;
    for (name, c) in &doc.functionals {
        writeln!(s, "  {name} = {}", covector_text(&doc.basis, &strings(c)))?;
    }
    if let Some(of) = &doc.orbit_fixtures {
        let params: Vec<&str> = of.parametrizations.iter().map(|p| p.name.as_str()).collect();
        let invs: Vec<&str> = of.invariants.iter().map(|i| i.name.as_str()).collect();
        writeln!(s, "orbit data for {}:", of.base)?;
        if !params.is_empty() {
            writeln!(s, "  parametrizations: {}", params.join(", "))?;
        }
        if !invs.is_empty() {
            writeln!(s, "  invariants: {}", invs.join(", "))?;
        }
    }
    Ok(s)
}
