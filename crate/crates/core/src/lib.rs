//! Exact coadjoint-orbit computations for real Lie algebras given by
//! rational structure constants.
//!
//! Classification verdicts (stabilizers, ideals, unimodularity, orbit
//! dimensions) are computed in exact rational arithmetic. The [`numeric`]
//! module holds floating-point cross-checks only.

pub mod algebra;
pub mod covector;
pub mod error;
pub mod io;
pub mod matrix;
pub mod numeric;
pub mod orbit;
pub mod poly;
pub mod rational;
pub mod spectrum;
pub mod subspace;

pub use algebra::{
    semidirect_from_derivation, transform_covector, transform_subspace, JacobiViolation, LieAlgebra, NamedBracket,
    Quotient, Unimodularity, ValidationReport,
};
pub use covector::Covector;
pub use error::{Error, Result};
pub use matrix::QMatrix;
pub use orbit::{
    affine_hull, blform, classify, classify_with, cs_witness_check, is_ideal, largest_ideal_in, orbit_dimension,
    pker_algebra, si_mod_pker, stabilizer, AffineHull, ClassificationReport, ClassifyOptions, ClosedAffine, CsStatus,
    IdealCheck,
};
pub use poly::{charpoly, squares_polynomial, Bound, Poly, SturmSequence};
pub use rational::{format_rational, parse_rational, Rational};
pub use spectrum::{
    exponentiality_status, pure_imaginary_spectrum_certificate, ExponentialityStatus, Refutation, SpectrumCertificate,
    SpectrumData,
};
pub use subspace::Subspace;
