//! Floating-point cross-checks of the exact engine: coadjoint flows, orbit
//! sampling, hull membership, tangent ranks and orbit invariants.
//!
//! Sign convention: `Ad*(exp tX) ℓ = ℓ ∘ exp(-t ad_X)`, so dual coefficients
//! transform by `exp(-t ad_X)^T`.

mod expm;
mod flow;
mod invariants;

pub use expm::matrix_exp;
pub use flow::{
    affine_membership, affine_residual, coadjoint_flow, coadjoint_flow_f64, orbit_sample, tangent_rank,
    write_samples_csv, CoadjointFlow, OrbitSample, SampleParams,
};
pub use invariants::{
    fixture_invariant_check, midpoint_witness_check, ExpTerm, Expectation, FixtureInvariant, InvariantOutcome,
    InvariantReport, MidpointFixture, MidpointOutcome, Monomial, Parametrization, SparsePoly,
};

/// Geometric membership tolerance.
pub const MEMBERSHIP_TOL: f64 = 1e-9;
/// Relative singular-value cutoff for numeric ranks.
pub const RANK_RTOL: f64 = 1e-8;
