//! Coadjoint-orbit classification at the Lie-algebra level.
//!
//! For `ℓ ∈ g*` everything is read off the skew form `B_ℓ(X, Y) = ℓ([X, Y])`:
//! its kernel is the stabilizer `g(ℓ)`, its rank the orbit dimension. The
//! projective kernel of the associated representation has Lie algebra equal
//! to the largest ideal of `g` inside `g(ℓ)`, and square-integrability modulo
//! that kernel holds iff `g(ℓ)` is itself an ideal.

use num_traits::Zero;

use crate::algebra::{LieAlgebra, Unimodularity};
use crate::covector::Covector;
use crate::error::Result;
use crate::matrix::QMatrix;
use crate::rational::{format_rational, int, ratio, Rational};
use crate::spectrum::{exponentiality_status, ExponentialityStatus, DEFAULT_SAMPLE_COUNT, DEFAULT_SEED};
use crate::subspace::{unit_vector, Subspace};

/// Matrix of `B_ℓ`: entry `(i, j)` is `ℓ([e_i, e_j])`.
pub fn blform(alg: &LieAlgebra, ell: &Covector) -> Result<QMatrix> {
    let n = alg.dim();
    ell.check_dim(n)?;
    let mut m = QMatrix::zeros(n, n);
    for (i, j, k, c) in alg.structure_constants() {
        let v = &ell.coeffs()[k] * c;
        m[(i, j)] += &v;
        m[(j, i)] -= &v;
    }
    Ok(m)
}

/// `g(ℓ) = ker B_ℓ`.
pub fn stabilizer(alg: &LieAlgebra, ell: &Covector) -> Result<Subspace> {
    Ok(Subspace::kernel_of(&blform(alg, ell)?))
}

/// `rank B_ℓ = n - dim g(ℓ)`; always even.
pub fn orbit_dimension(alg: &LieAlgebra, ell: &Covector) -> Result<usize> {
    Ok(blform(alg, ell)?.rank())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealCheck {
    Ideal,
    /// `[e_{basis_index}, vector]` is not in the subspace.
    NotIdeal {
        basis_index: usize,
        vector: Vec<Rational>,
        bracket: Vec<Rational>,
    },
}

impl IdealCheck {
    pub fn holds(&self) -> bool {
        matches!(self, Self::Ideal)
    }
}

pub fn is_ideal(alg: &LieAlgebra, v: &Subspace) -> IdealCheck {
    let n = alg.dim();
    for i in 0..n {
        let ei = unit_vector(n, i);
        for b in v.basis() {
            let br = alg.bracket(&ei, b);
            if !v.contains(&br) {
                return IdealCheck::NotIdeal {
                    basis_index: i,
                    vector: b.clone(),
                    bracket: br,
                };
            }
        }
    }
    IdealCheck::Ideal
}

/// The largest ideal of `alg` contained in `v`.
///
/// Iterates `V_{k+1} = {x ∈ V_k : [e_i, x] ∈ V_k for all i}`. Every ideal
/// inside `V_k` lies in `V_{k+1}`, so the fixed point contains all of them; it
/// is itself an ideal, hence the maximum. The sum of two ideals inside `v` is
/// again one, so there is never a choice between maximal candidates.
pub fn largest_ideal_in(alg: &LieAlgebra, v: &Subspace) -> Subspace {
    let n = alg.dim();
    let ads: Vec<QMatrix> = (0..n).map(|i| alg.ad_basis(i)).collect();
    let mut current = v.clone();
    loop {
        if current.is_zero() {
            return current;
        }
        // Rows of `annihilator * ad_i * basis` cut out the coefficients c with
        // ad_i(basis c) ∈ current for every i.
        let annihilator = current.annihilator();
        if annihilator.is_zero() {
            return current;
        }
        let ann = QMatrix::from_rows(n, annihilator.basis().to_vec()).expect("rows of length n");
        let basis = current.basis_matrix();
        let mut rows = Vec::new();
        for ad in &ads {
            rows.extend(ann.mul(ad).mul(&basis).row_vectors());
        }
        let system = QMatrix::from_rows(current.dim(), rows).expect("rows of length k");
        let coeffs = system.kernel();
        let next_vectors: Vec<Vec<Rational>> = coeffs.iter().map(|c| basis.mul_vec(c)).collect();
        let next = Subspace::span(n, &next_vectors).expect("vectors of length n");
        if next == current {
            return current;
        }
        current = next;
    }
}

/// Lie algebra of the projective kernel: the largest ideal inside `g(ℓ)`.
pub fn pker_algebra(alg: &LieAlgebra, ell: &Covector) -> Result<Subspace> {
    Ok(largest_ideal_in(alg, &stabilizer(alg, ell)?))
}

/// Square-integrability modulo the projective kernel: `g(ℓ)` is an ideal.
pub fn si_mod_pker(alg: &LieAlgebra, ell: &Covector) -> Result<bool> {
    Ok(is_ideal(alg, &stabilizer(alg, ell)?).holds())
}

/// `ℓ + g(ℓ)^⊥`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineHull {
    pub base: Covector,
    pub direction: Subspace,
}

impl AffineHull {
    pub fn contains(&self, f: &Covector) -> bool {
        f.len() == self.base.len() && self.direction.contains(f.sub(&self.base).coeffs())
    }
}

pub fn affine_hull(alg: &LieAlgebra, ell: &Covector) -> Result<AffineHull> {
    Ok(AffineHull {
        base: ell.clone(),
        direction: stabilizer(alg, ell)?.annihilator(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClosedAffine {
    Yes,
    No,
    Unknown,
}

impl ClosedAffine {
    pub fn label(self) -> &'static str {
        match self {
            Self::Yes => "yes",
            Self::No => "no",
            Self::Unknown => "unknown",
        }
    }
}

/// What the coherent-state theorems license for the representation attached to ℓ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CsStatus {
    /// Square-integrable modulo the projective kernel, hence coherent-state.
    CsBySi,
    /// Unimodular quotient: coherent-state iff square-integrable, and it is not.
    CsIffSiFalse,
    /// Nonunimodular quotient without square-integrability: undecided.
    IndeterminateNonunimodularQuotient,
}

impl CsStatus {
    pub fn label(self) -> &'static str {
        match self {
            Self::CsBySi => "cs_by_si",
            Self::CsIffSiFalse => "cs_iff_si_false",
            Self::IndeterminateNonunimodularQuotient => "indeterminate_nonunimodular_quotient",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub solvable: bool,
    pub nilpotent: bool,
    pub unimodular: bool,
    /// Basis index and trace of the first `ad_{e_i}` with nonzero trace.
    pub nonunimodular_witness: Option<(usize, Rational)>,
    pub exponentiality: ExponentialityStatus,
    pub stabilizer: Subspace,
    pub orbit_dim: usize,
    pub stabilizer_is_ideal: bool,
    pub pker_algebra: Subspace,
    pub si_mod_pker: bool,
    pub quotient_unimodular: bool,
    pub affine_hull_direction: Subspace,
    pub zero_in_affine_hull: bool,
    pub orbit_closed_affine: ClosedAffine,
    pub cs_status: CsStatus,
    pub notes: Vec<String>,
}

impl ClassificationReport {
    pub fn warnings(&self) -> impl Iterator<Item = &str> {
        self.notes.iter().filter_map(|n| n.strip_prefix(WARNING_PREFIX))
    }

    pub fn has_warnings(&self) -> bool {
        self.warnings().next().is_some()
    }
}

pub const WARNING_PREFIX: &str = "warning: ";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub sample_count: usize,
    pub seed: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            sample_count: DEFAULT_SAMPLE_COUNT,
            seed: DEFAULT_SEED,
        }
    }
}

pub fn classify(alg: &LieAlgebra, ell: &Covector) -> Result<ClassificationReport> {
    classify_with(alg, ell, ClassifyOptions::default())
}

pub fn classify_with(alg: &LieAlgebra, ell: &Covector, opts: ClassifyOptions) -> Result<ClassificationReport> {
    alg.ensure_valid()?;
    ell.check_dim(alg.dim())?;
    let mut notes = Vec::new();

    let exponentiality = exponentiality_status(alg, opts.sample_count, opts.seed)?;
    match &exponentiality {
        ExponentialityStatus::Refuted(_) => notes.push(format!(
            "{WARNING_PREFIX}exponentiality refuted; the orbit-method theorems assume an exponential group, \
             verdicts below are Lie-algebra computations only"
        )),
        ExponentialityStatus::Unverified { samples_checked } => notes.push(format!(
            "exponentiality unverified: no purely imaginary ad-eigenvalue found on the basis and {samples_checked} samples"
        )),
        ExponentialityStatus::VerifiedNilpotent => {}
    }

    let (unimodular, nonunimodular_witness) = match alg.is_unimodular() {
        Unimodularity::Unimodular => (true, None),
        Unimodularity::NotUnimodular { witness, trace } => (false, Some((witness, trace))),
    };

    let stab = stabilizer(alg, ell)?;
    let orbit_dim = alg.dim() - stab.dim();
    let stabilizer_is_ideal = is_ideal(alg, &stab).holds();
    let pker = largest_ideal_in(alg, &stab);
    let si = stabilizer_is_ideal;
    let quotient = alg.quotient(&pker)?;
    let quotient_unimodular = quotient.algebra.is_unimodular().holds();
    let hull = affine_hull(alg, ell)?;
    let zero_in_affine_hull = hull.contains(&Covector::zero(alg.dim()));

    let cs_status = if si {
        CsStatus::CsBySi
    } else if quotient_unimodular {
        CsStatus::CsIffSiFalse
    } else {
        CsStatus::IndeterminateNonunimodularQuotient
    };

    let orbit_closed_affine = if si && quotient_unimodular {
        ClosedAffine::Yes
    } else if let Some((point, dim)) = hull_point_with_other_orbit_dim(alg, ell, &hull, orbit_dim)? {
        notes.push(format!(
            "orbit differs from its affine hull: the hull contains {} whose orbit has dimension {dim}, not {orbit_dim}",
            point
        ));
        ClosedAffine::No
    } else {
        ClosedAffine::Unknown
    };

    Ok(ClassificationReport {
        solvable: alg.is_solvable(),
        nilpotent: alg.is_nilpotent(),
        unimodular,
        nonunimodular_witness,
        exponentiality,
        stabilizer: stab,
        orbit_dim,
        stabilizer_is_ideal,
        pker_algebra: pker,
        si_mod_pker: si,
        quotient_unimodular,
        affine_hull_direction: hull.direction,
        zero_in_affine_hull,
        orbit_closed_affine,
        cs_status,
        notes,
    })
}

/// Looks for a point of the hull (among `0` and rescalings of ℓ) whose orbit
/// dimension differs from that of ℓ. Such a point cannot lie on the orbit, so
/// the orbit is strictly smaller than the hull.
fn hull_point_with_other_orbit_dim(
    alg: &LieAlgebra,
    ell: &Covector,
    hull: &AffineHull,
    orbit_dim: usize,
) -> Result<Option<(String, usize)>> {
    let candidates = [("0", int(0)), ("-ℓ", int(-1)), ("ℓ/2", ratio(1, 2)), ("2ℓ", int(2))];
    for (label, c) in candidates {
        let point = ell.scale(&c);
        if !hull.contains(&point) {
            continue;
        }
        let dim = orbit_dimension(alg, &point)?;
        if dim != orbit_dim {
            return Ok(Some((label.to_string(), dim)));
        }
    }
    Ok(None)
}

/// Stabilizer-level test that a moment-map value `f` certifies a symplectic
/// coherent-state orbit for the representation attached to `ell_orbit`:
/// `g(f)` must equal the projective-kernel algebra of `ell_orbit`.
pub fn cs_witness_check(alg: &LieAlgebra, ell_orbit: &Covector, f: &Covector) -> Result<bool> {
    Ok(stabilizer(alg, f)? == pker_algebra(alg, ell_orbit)?)
}

/// Readable `span{...}` rendering of a subspace using basis names.
pub fn describe_subspace(alg: &LieAlgebra, v: &Subspace) -> String {
    if v.is_zero() {
        return "{0}".to_string();
    }
    let vectors: Vec<String> = v
        .basis()
        .iter()
        .map(|b| {
            let terms: Vec<String> = b
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| {
                    if *c == int(1) {
                        alg.name(k).to_string()
                    } else {
                        format!("{}*{}", format_rational(c), alg.name(k))
                    }
                })
                .collect();
            terms.join(" + ")
        })
        .collect();
    format!("span{{{}}}", vectors.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn h3() -> LieAlgebra {
        LieAlgebra::from_named(&["X", "Y", "Z"], &[("X", "Y", vec![("Z", int(1))])]).unwrap()
    }

    fn filiform4() -> LieAlgebra {
        LieAlgebra::from_named(
            &["X1", "X2", "X3", "X4"],
            &[("X1", "X2", vec![("X3", int(1))]), ("X1", "X3", vec![("X4", int(1))])],
        )
        .unwrap()
    }

    fn six_dim() -> LieAlgebra {
        let h = ratio(1, 2);
        LieAlgebra::from_named(
            &["A", "B", "P", "R", "Q", "S"],
            &[
                ("P", "Q", vec![("R", int(1))]),
                ("P", "R", vec![("S", int(1))]),
                ("A", "P", vec![("P", h.clone())]),
                ("A", "R", vec![("R", h.clone())]),
                ("A", "S", vec![("S", int(1))]),
                ("B", "P", vec![("P", -h.clone())]),
                ("B", "Q", vec![("Q", int(1))]),
                ("B", "R", vec![("R", h)]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn heisenberg_form_and_stabilizer() {
        let alg = h3();
        let ell = Covector::from_i64(&[0, 0, 1]);
        let b = blform(&alg, &ell).unwrap();
        assert_eq!(b, QMatrix::from_i64(3, 3, &[0, 1, 0, -1, 0, 0, 0, 0, 0]));
        assert_eq!(stabilizer(&alg, &ell).unwrap(), Subspace::coordinate(3, [2]));
        assert_eq!(orbit_dimension(&alg, &ell).unwrap(), 2);
        assert!(blform(&alg, &Covector::from_i64(&[1, 0])).is_err());
    }

    #[test]
    fn ideal_check_reports_an_escaping_bracket() {
        let alg = six_dim();
        let v = Subspace::coordinate(6, [1, 4]);
        match is_ideal(&alg, &v) {
            IdealCheck::NotIdeal {
                basis_index,
                vector,
                bracket,
            } => {
                assert!(v.contains(&vector));
                assert!(!v.contains(&bracket));
                assert_eq!(alg.bracket(&unit_vector(6, basis_index), &vector), bracket);
            }
            IdealCheck::Ideal => panic!("span{{B, Q}} is not an ideal"),
        }
        assert!(is_ideal(&alg, &Subspace::zero(6)).holds());
        assert!(is_ideal(&alg, &Subspace::full(6)).holds());
    }

    #[test]
    fn largest_ideal_inside_a_non_ideal() {
        let alg = filiform4();
        let v = Subspace::coordinate(4, [1, 3]);
        assert_eq!(largest_ideal_in(&alg, &v), Subspace::coordinate(4, [3]));
        let six = six_dim();
        assert!(largest_ideal_in(&six, &Subspace::coordinate(6, [1, 4])).is_zero());
        // An ideal is its own largest ideal.
        let center = h3().center();
        assert_eq!(largest_ideal_in(&h3(), &center), center);
    }

    #[test]
    fn affine_hull_of_heisenberg_orbit() {
        let alg = h3();
        let hull = affine_hull(&alg, &Covector::from_i64(&[0, 0, 1])).unwrap();
        assert!(hull.contains(&Covector::from_i64(&[5, -3, 1])));
        assert!(!hull.contains(&Covector::from_i64(&[0, 0, 2])));
        assert!(!hull.contains(&Covector::zero(3)));
    }

    #[test]
    fn six_dim_witness() {
        let alg = six_dim();
        let ell = Covector::from_i64(&[0, 1, 0, 0, 0, 1]);
        let f = Covector::from_i64(&[0, 1, 0, 0, 1, 1]);
        assert!(cs_witness_check(&alg, &ell, &f).unwrap());
        assert!(!cs_witness_check(&alg, &ell, &ell).unwrap());
        let report = classify(&alg, &ell).unwrap();
        assert_eq!(report.nonunimodular_witness, Some((0, int(2))));
        assert_eq!(report.cs_status, CsStatus::IndeterminateNonunimodularQuotient);
        assert!(!report.has_warnings());
    }

    #[test]
    fn invalid_algebras_are_not_classified() {
        let bogus = LieAlgebra::from_named(
            &["X", "Y", "Z"],
            &[("X", "Y", vec![("Z", int(1))]), ("X", "Z", vec![("X", int(1))])],
        )
        .unwrap();
        assert!(!bogus.validate().is_valid());
        assert!(matches!(
            classify(&bogus, &Covector::zero(3)),
            Err(crate::error::Error::InvalidAlgebra { .. })
        ));
    }

    #[test]
    fn subspace_description_uses_basis_names() {
        let alg = h3();
        assert_eq!(describe_subspace(&alg, &Subspace::coordinate(3, [0, 2])), "span{X, Z}");
        assert_eq!(describe_subspace(&alg, &Subspace::zero(3)), "{0}");
        let v = Subspace::span(3, &[vec![int(2), int(-1), int(0)]]).unwrap();
        assert_eq!(describe_subspace(&alg, &v), "span{X + -1/2*Y}");
    }
}
