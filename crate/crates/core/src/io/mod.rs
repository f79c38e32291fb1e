//! JSON document formats, the built-in fixture registry and report emission.

mod document;
pub mod fixtures;
mod report;

pub use document::{
    parse_algebra, parse_functional_spec, AlgebraDocument, BracketEntry, ExpTermDoc, ExpectedReport, InvariantDoc,
    MidpointData, MidpointDoc, MonomialDoc, OrbitFixtureData, OrbitFixturesDoc, ParametrizationDoc, ParseError,
    RationalString, SubspaceDoc,
};
pub use report::{emit_report, parse_report, ExponentialityDoc, ReportBody, ReportDocument, ToolInfo, WitnessDoc};
