use crate::algebra::LieAlgebra;
use crate::covector::Covector;
use crate::error::{Error, Result};
use crate::numeric::flow::{tangent_rank, OrbitSample};
use crate::numeric::RANK_RTOL;
use crate::orbit::orbit_dimension;
use crate::rational::{to_f64, Rational};

/// `coeff * prod x_i^k` over dual coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: Rational,
    pub powers: Vec<(usize, u32)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparsePoly {
    pub terms: Vec<Monomial>,
}

impl SparsePoly {
    pub fn constant(c: Rational) -> Self {
        Self {
            terms: vec![Monomial {
                coeff: c,
                powers: vec![],
            }],
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|m| {
                m.powers
                    .iter()
                    .fold(to_f64(&m.coeff), |acc, &(i, k)| acc * x[i].powi(k as i32))
            })
            .sum()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.terms.iter().flat_map(|m| m.powers.iter().map(|&(i, _)| i)).max()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expectation {
    Value(Rational),
    Positive,
    Negative,
}

/// A rational function of the dual coordinates that is constant (or of fixed
/// sign) along one coadjoint orbit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureInvariant {
    pub name: String,
    pub numerator: SparsePoly,
    pub denominator: SparsePoly,
    pub expectation: Expectation,
}

impl FixtureInvariant {
    /// `None` when the denominator is too close to zero to evaluate.
    pub fn deviation(&self, x: &[f64], tol: f64) -> Option<f64> {
        let den = self.denominator.eval(x);
        if den.abs() < 10.0 * tol {
            return None;
        }
        let value = self.numerator.eval(x) / den;
        Some(match &self.expectation {
            Expectation::Value(v) => (value - to_f64(v)).abs(),
            Expectation::Positive => {
                if value > 0.0 {
                    0.0
                } else {
                    value.abs().max(f64::MIN_POSITIVE)
                }
            }
            Expectation::Negative => {
                if value < 0.0 {
                    0.0
                } else {
                    value.abs().max(f64::MIN_POSITIVE)
                }
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvariantOutcome {
    pub name: String,
    pub max_deviation: f64,
    pub evaluated: usize,
    pub skipped: usize,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvariantReport {
    pub outcomes: Vec<InvariantOutcome>,
    pub warnings: Vec<String>,
}

impl InvariantReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }
}

pub fn fixture_invariant_check(sample: &OrbitSample, invariants: &[FixtureInvariant], tol: f64) -> InvariantReport {
    let mut warnings = Vec::new();
    let outcomes = invariants
        .iter()
        .map(|inv| {
            let mut max_deviation: f64 = 0.0;
            let (mut evaluated, mut skipped) = (0, 0);
            for (i, p) in sample.points.iter().enumerate() {
                match inv.deviation(p, tol) {
                    Some(d) => {
                        evaluated += 1;
                        max_deviation = max_deviation.max(d);
                    }
                    None => {
                        skipped += 1;
                        warnings.push(format!(
                            "{}: denominator below {:e} at sample point {i}, skipped",
                            inv.name,
                            10.0 * tol
                        ));
                    }
                }
            }
            InvariantOutcome {
                name: inv.name.clone(),
                max_deviation,
                evaluated,
                skipped,
                passed: evaluated > 0 && max_deviation < tol,
            }
        })
        .collect();
    InvariantReport { outcomes, warnings }
}

/// `coeff * prod p_i^k * exp(sum c_i p_i)` in the named parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpTerm {
    pub coeff: Rational,
    pub powers: Vec<(usize, u32)>,
    pub exponent: Vec<(usize, Rational)>,
}

impl ExpTerm {
    fn eval(&self, params: &[f64]) -> f64 {
        let poly = self
            .powers
            .iter()
            .fold(to_f64(&self.coeff), |acc, &(i, k)| acc * params[i].powi(k as i32));
        let expo: f64 = self.exponent.iter().map(|(i, c)| to_f64(c) * params[*i]).sum();
        poly * expo.exp()
    }
}

/// An explicit family of dual vectors, one sum of [`ExpTerm`]s per coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parametrization {
    pub name: String,
    pub params: Vec<String>,
    pub components: Vec<Vec<ExpTerm>>,
}

impl Parametrization {
    pub fn eval(&self, params: &[f64]) -> Result<Vec<f64>> {
        if params.len() != self.params.len() {
            return Err(Error::DimensionMismatch {
                expected: self.params.len(),
                found: params.len(),
            });
        }
        Ok(self
            .components
            .iter()
            .map(|terms| terms.iter().map(|t| t.eval(params)).sum())
            .collect())
    }

    pub fn param_index(&self, name: &str) -> Option<usize> {
        self.params.iter().position(|p| p == name)
    }
}

/// Two orbit points `ℓ₁(p, a)`, `ℓ₂(p, a)` whose midpoint lies in the convex hull of the orbit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MidpointFixture {
    pub first: Parametrization,
    pub second: Parametrization,
    pub invariants: Vec<FixtureInvariant>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MidpointOutcome {
    pub first: Vec<f64>,
    pub second: Vec<f64>,
    pub midpoint: Vec<f64>,
    pub midpoint_error: f64,
    /// Largest invariant deviation over both endpoints.
    pub endpoint_invariant_deviation: f64,
    /// Tangent ranks of both endpoints agree with the exact orbit dimension of ℓ.
    pub ranks_match: bool,
    pub passed: bool,
}

/// Checks `(ℓ₁ + ℓ₂)/2 ≈ target` with both endpoints certified on the orbit of ℓ by the invariants.
pub fn midpoint_witness_check(
    alg: &LieAlgebra,
    ell: &Covector,
    fixture: &MidpointFixture,
    p: f64,
    a: f64,
    target: &Covector,
    tol: f64,
) -> Result<MidpointOutcome> {
    ell.check_dim(alg.dim())?;
    target.check_dim(alg.dim())?;
    let args = |param: &Parametrization| -> Result<Vec<f64>> {
        let mut v = vec![0.0; param.params.len()];
        for (name, value) in [("p", p), ("a", a)] {
            let i = param
                .param_index(name)
                .ok_or_else(|| Error::Input(format!("parametrization `{}` lacks parameter `{name}`", param.name)))?;
            v[i] = value;
        }
        Ok(v)
    };
    let first = fixture.first.eval(&args(&fixture.first)?)?;
    let second = fixture.second.eval(&args(&fixture.second)?)?;
    for v in [&first, &second] {
        if v.len() != alg.dim() {
            return Err(Error::DimensionMismatch {
                expected: alg.dim(),
                found: v.len(),
            });
        }
    }
    let midpoint: Vec<f64> = first.iter().zip(&second).map(|(x, y)| 0.5 * (x + y)).collect();
    let midpoint_error = midpoint
        .iter()
        .zip(target.to_f64())
        .map(|(m, t)| (m - t).abs())
        .fold(0.0, f64::max);

    let base = ell.to_f64();
    let mut endpoint_invariant_deviation: f64 = 0.0;
    let mut invariants_ok = true;
    for inv in &fixture.invariants {
        // The invariants must describe the orbit of ℓ itself.
        for point in [&base, &first, &second] {
            match inv.deviation(point, tol) {
                Some(d) => {
                    if !std::ptr::eq(point, &base) {
                        endpoint_invariant_deviation = endpoint_invariant_deviation.max(d);
                    }
                    invariants_ok &= d < tol;
                }
                None => invariants_ok = false,
            }
        }
    }
    let dim = orbit_dimension(alg, ell)?;
    let ranks_match = [&first, &second].iter().all(|v| tangent_rank(alg, v, RANK_RTOL) == dim);

    Ok(MidpointOutcome {
        passed: midpoint_error < tol && invariants_ok && ranks_match,
        first,
        second,
        midpoint,
        midpoint_error,
        endpoint_invariant_deviation,
        ranks_match,
    })
}
