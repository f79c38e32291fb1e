use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::document::{AlgebraDocument, RationalString, SubspaceDoc};
use crate::algebra::LieAlgebra;
use crate::covector::Covector;
use crate::error::{Error, Result};
use crate::orbit::{ClassificationReport, ClassifyOptions, ClosedAffine, CsStatus};
use crate::poly::Poly;
use crate::spectrum::{ExponentialityStatus, Refutation, SpectrumData};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
}

impl Default for ToolInfo {
    fn default() -> Self {
        Self {
            name: "coorbit".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDoc {
    pub basis: String,
    pub trace: RationalString,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExponentialityDoc {
    /// `verified_nilpotent`, `refuted` or `unverified`.
    pub status: String,
    /// `not_solvable` or `imaginary_spectrum` when refuted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<RationalString>>,
    /// Ascending coefficients of `det(t I - ad_X)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub charpoly: Option<Vec<RationalString>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub squares_poly: Option<Vec<RationalString>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub negative_root_count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples_checked: Option<usize>,
}

fn poly_doc(p: &Poly) -> Vec<RationalString> {
    p.coeffs().iter().cloned().map(RationalString).collect()
}

fn doc_poly(c: &[RationalString]) -> Poly {
    Poly::new(c.iter().map(|q| q.0.clone()).collect())
}

impl ExponentialityDoc {
    fn from_status(status: &ExponentialityStatus) -> Self {
        let mut doc = Self {
            status: status.label().to_string(),
            reason: None,
            witness: None,
            charpoly: None,
            squares_poly: None,
            negative_root_count: None,
            samples_checked: None,
        };
        match status {
            ExponentialityStatus::VerifiedNilpotent => {}
            ExponentialityStatus::Refuted(Refutation::NotSolvable) => doc.reason = Some("not_solvable".into()),
            ExponentialityStatus::Refuted(Refutation::ImaginarySpectrum(d)) => {
                doc.reason = Some("imaginary_spectrum".into());
                doc.witness = Some(d.element.iter().cloned().map(RationalString).collect());
                doc.charpoly = Some(poly_doc(&d.charpoly));
                doc.squares_poly = Some(poly_doc(&d.squares_poly));
                doc.negative_root_count = Some(d.negative_root_count);
            }
            ExponentialityStatus::Unverified { samples_checked } => doc.samples_checked = Some(*samples_checked),
        }
        doc
    }

    fn to_status(&self) -> Result<ExponentialityStatus> {
        let missing = |f: &str| Error::Input(format!("exponentiality: missing `{f}`"));
        match (self.status.as_str(), self.reason.as_deref()) {
            ("verified_nilpotent", _) => Ok(ExponentialityStatus::VerifiedNilpotent),
            ("unverified", _) => Ok(ExponentialityStatus::Unverified {
                samples_checked: self.samples_checked.ok_or_else(|| missing("samples_checked"))?,
            }),
            ("refuted", Some("not_solvable")) => Ok(ExponentialityStatus::Refuted(Refutation::NotSolvable)),
            ("refuted", Some("imaginary_spectrum")) => Ok(ExponentialityStatus::Refuted(
                Refutation::ImaginarySpectrum(SpectrumData {
                    element: self
                        .witness
                        .as_ref()
                        .ok_or_else(|| missing("witness"))?
                        .iter()
                        .map(|q| q.0.clone())
                        .collect(),
                    charpoly: doc_poly(self.charpoly.as_ref().ok_or_else(|| missing("charpoly"))?),
                    squares_poly: doc_poly(self.squares_poly.as_ref().ok_or_else(|| missing("squares_poly"))?),
                    negative_root_count: self.negative_root_count.ok_or_else(|| missing("negative_root_count"))?,
                }),
            )),
            (s, r) => Err(Error::Input(format!("exponentiality: unknown status {s} / {r:?}"))),
        }
    }
}

/// Serialized form of a classification report; field names match the report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportBody {
    pub solvable: bool,
    pub nilpotent: bool,
    pub unimodular: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nonunimodular_witness: Option<WitnessDoc>,
    pub exponentiality: ExponentialityDoc,
    pub stabilizer: SubspaceDoc,
    pub orbit_dim: usize,
    pub stabilizer_is_ideal: bool,
    pub pker_algebra: SubspaceDoc,
    pub si_mod_pker: bool,
    pub quotient_unimodular: bool,
    pub affine_hull_direction: SubspaceDoc,
    pub zero_in_affine_hull: bool,
    pub orbit_closed_affine: String,
    pub cs_status: String,
    pub notes: Vec<String>,
}

impl ReportBody {
    pub fn from_report(alg: &LieAlgebra, r: &ClassificationReport) -> Self {
        Self {
            solvable: r.solvable,
            nilpotent: r.nilpotent,
            unimodular: r.unimodular,
            nonunimodular_witness: r.nonunimodular_witness.as_ref().map(|(i, t)| WitnessDoc {
                basis: alg.name(*i).to_string(),
                trace: RationalString(t.clone()),
            }),
            exponentiality: ExponentialityDoc::from_status(&r.exponentiality),
            stabilizer: SubspaceDoc::from_subspace(&r.stabilizer),
            orbit_dim: r.orbit_dim,
            stabilizer_is_ideal: r.stabilizer_is_ideal,
            pker_algebra: SubspaceDoc::from_subspace(&r.pker_algebra),
            si_mod_pker: r.si_mod_pker,
            quotient_unimodular: r.quotient_unimodular,
            affine_hull_direction: SubspaceDoc::from_subspace(&r.affine_hull_direction),
            zero_in_affine_hull: r.zero_in_affine_hull,
            orbit_closed_affine: r.orbit_closed_affine.label().to_string(),
            cs_status: r.cs_status.label().to_string(),
            notes: r.notes.clone(),
        }
    }

    pub fn to_report(&self, basis: &[String]) -> Result<ClassificationReport> {
        let nonunimodular_witness = match &self.nonunimodular_witness {
            None => None,
            Some(w) => Some((
                basis
                    .iter()
                    .position(|b| *b == w.basis)
                    .ok_or_else(|| Error::Input(format!("unknown basis name `{}`", w.basis)))?,
                w.trace.0.clone(),
            )),
        };
        let orbit_closed_affine = match self.orbit_closed_affine.as_str() {
            "yes" => ClosedAffine::Yes,
            "no" => ClosedAffine::No,
            "unknown" => ClosedAffine::Unknown,
            other => return Err(Error::Input(format!("unknown orbit_closed_affine `{other}`"))),
        };
        let cs_status = match self.cs_status.as_str() {
            "cs_by_si" => CsStatus::CsBySi,
            "cs_iff_si_false" => CsStatus::CsIffSiFalse,
            "indeterminate_nonunimodular_quotient" => CsStatus::IndeterminateNonunimodularQuotient,
            other => return Err(Error::Input(format!("unknown cs_status `{other}`"))),
        };
        Ok(ClassificationReport {
            solvable: self.solvable,
            nilpotent: self.nilpotent,
            unimodular: self.unimodular,
            nonunimodular_witness,
            exponentiality: self.exponentiality.to_status()?,
            stabilizer: self.stabilizer.to_subspace()?,
            orbit_dim: self.orbit_dim,
            stabilizer_is_ideal: self.stabilizer_is_ideal,
            pker_algebra: self.pker_algebra.to_subspace()?,
            si_mod_pker: self.si_mod_pker,
            quotient_unimodular: self.quotient_unimodular,
            affine_hull_direction: self.affine_hull_direction.to_subspace()?,
            zero_in_affine_hull: self.zero_in_affine_hull,
            orbit_closed_affine,
            cs_status,
            notes: self.notes.clone(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDocument {
    pub tool: ToolInfo,
    /// SHA-256 of the canonical emitted input document.
    pub input_hash: String,
    pub seed: u64,
    pub sample_count: usize,
    pub algebra: String,
    pub basis: Vec<String>,
    pub functional: Vec<RationalString>,
    pub report: ReportBody,
}

impl ReportDocument {
    pub fn new(
        doc: &AlgebraDocument,
        alg: &LieAlgebra,
        ell: &Covector,
        options: &ClassifyOptions,
        report: &ClassificationReport,
    ) -> Self {
        Self {
            tool: ToolInfo::default(),
            input_hash: hex::encode(Sha256::digest(doc.emit().as_bytes())),
            seed: options.seed,
            sample_count: options.sample_count,
            algebra: doc.name.clone(),
            basis: alg.names().to_vec(),
            functional: ell.coeffs().iter().cloned().map(RationalString).collect(),
            report: ReportBody::from_report(alg, report),
        }
    }

    pub fn classification(&self) -> Result<ClassificationReport> {
        self.report.to_report(&self.basis)
    }
}

/// Pretty JSON with a trailing newline; field order is fixed by the types.
pub fn emit_report(report: &ReportDocument) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

pub fn parse_report(text: &str) -> Result<ReportDocument> {
    serde_json::from_str(text).map_err(|e| Error::Input(format!("{}:{}: {e}", e.line(), e.column())))
}
