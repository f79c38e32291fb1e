//! Exact detection of nonzero purely imaginary eigenvalues of `ad_X`, and the
//! tri-state exponentiality status built on it.
//!
//! `ad_X` has an eigenvalue `±ic` with `c != 0` iff the polynomial whose roots
//! are the squared eigenvalues has a negative real root. That polynomial has
//! rational coefficients, so the question is settled by a Sturm count on
//! `(-inf, 0)` after removing the factor `u^m` for the zero eigenvalues.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::LieAlgebra;
use crate::error::Result;
use crate::poly::{charpoly, scaled_charpoly, squares_integer, squares_polynomial, Bound, Poly, SturmSequence};
use crate::rational::{ratio, Rational};
use crate::subspace::unit_vector;

pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_SAMPLE_COUNT: usize = 200;
/// Bound on numerators and denominators of the random sample coefficients.
pub const SAMPLE_COEFF_BOUND: i64 = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumData {
    pub element: Vec<Rational>,
    /// `det(t I - ad_X)`.
    pub charpoly: Poly,
    /// Polynomial in `u` whose roots are the squares of the eigenvalues.
    pub squares_poly: Poly,
    /// Distinct negative real roots of `squares_poly`.
    pub negative_root_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpectrumCertificate {
    NoneFound(SpectrumData),
    Witness(SpectrumData),
}

impl SpectrumCertificate {
    pub fn is_witness(&self) -> bool {
        matches!(self, Self::Witness(_))
    }

    pub fn data(&self) -> &SpectrumData {
        match self {
            Self::NoneFound(d) | Self::Witness(d) => d,
        }
    }
}

pub fn pure_imaginary_spectrum_certificate(alg: &LieAlgebra, x: &[Rational]) -> Result<SpectrumCertificate> {
    let ad = alg.ad_matrix(x)?;
    let p = charpoly(&ad)?;
    // Graeffe on the integer multiple keeps the rational arithmetic cheap.
    let (l, p_int) = p.clear_denominators();
    let l2 = Rational::from_integer(&l * &l);
    let q = squares_polynomial(&p_int).scale(&l2.recip());
    let (rest, _) = q.split_zero_roots();
    let negative_root_count = if rest.degree().unwrap_or(0) == 0 {
        0
    } else {
        SturmSequence::new(&rest).count_roots(&Bound::NegInfinity, &Bound::Finite(Rational::zero()))?
    };
    let data = SpectrumData {
        element: x.to_vec(),
        charpoly: p,
        squares_poly: q,
        negative_root_count,
    };
    Ok(if negative_root_count > 0 {
        SpectrumCertificate::Witness(data)
    } else {
        SpectrumCertificate::NoneFound(data)
    })
}

/// Integer-only form of the certificate test, used while scanning samples.
///
/// Works with `L ad_X` for `L` the common denominator; scaling by `L > 0`
/// multiplies the squared eigenvalues by `L^2` and keeps their signs.
pub(crate) fn has_imaginary_eigenvalue(alg: &LieAlgebra, x: &[Rational]) -> Result<bool> {
    let (_, p) = scaled_charpoly(&alg.ad_matrix(x)?)?;
    let mut q = squares_integer(&p);
    let zeros = q.iter().take_while(|c| c.is_zero()).count();
    q.drain(..zeros);
    if q.len() <= 1 {
        return Ok(false);
    }
    let count = SturmSequence::from_integer(q).count_roots(&Bound::NegInfinity, &Bound::Finite(Rational::zero()))?;
    Ok(count > 0)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Refutation {
    NotSolvable,
    ImaginarySpectrum(SpectrumData),
}

/// Exponentiality is only ever asserted for nilpotent algebras.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExponentialityStatus {
    VerifiedNilpotent,
    Refuted(Refutation),
    /// No obstruction found among the basis and `samples_checked` random elements.
    Unverified {
        samples_checked: usize,
    },
}

impl ExponentialityStatus {
    pub fn label(&self) -> &'static str {
        match self {
            Self::VerifiedNilpotent => "verified_nilpotent",
            Self::Refuted(_) => "refuted",
            Self::Unverified { .. } => "unverified",
        }
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Self::Refuted(_))
    }
}

/// Seeded random rational vector with numerators in `[-10, 10]` and denominators in `[1, 10]`.
pub fn random_rational_vector(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
    (0..n)
        .map(|_| {
            ratio(
                rng.random_range(-SAMPLE_COEFF_BOUND..=SAMPLE_COEFF_BOUND),
                rng.random_range(1..=SAMPLE_COEFF_BOUND),
            )
        })
        .collect()
}

pub fn exponentiality_status(alg: &LieAlgebra, sample_count: usize, seed: u64) -> Result<ExponentialityStatus> {
    if alg.is_nilpotent() {
        return Ok(ExponentialityStatus::VerifiedNilpotent);
    }
    if !alg.is_solvable() {
        return Ok(ExponentialityStatus::Refuted(Refutation::NotSolvable));
    }
    let n = alg.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let candidates = (0..n)
        .map(|i| unit_vector(n, i))
        .chain((0..sample_count).map(|_| random_rational_vector(&mut rng, n)));
    for x in candidates {
        if has_imaginary_eigenvalue(alg, &x)? {
            return match pure_imaginary_spectrum_certificate(alg, &x)? {
                SpectrumCertificate::Witness(data) => {
                    Ok(ExponentialityStatus::Refuted(Refutation::ImaginarySpectrum(data)))
                }
                SpectrumCertificate::NoneFound(_) => unreachable!("integer and rational certificates disagree"),
            };
        }
    }
    Ok(ExponentialityStatus::Unverified {
        samples_checked: sample_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn e2_cover() -> LieAlgebra {
        LieAlgebra::from_named(
            &["X", "Y", "T"],
            &[("T", "X", vec![("Y", int(1))]), ("T", "Y", vec![("X", int(-1))])],
        )
        .unwrap()
    }

    #[test]
    fn rotation_generator_is_a_witness() {
        let cert = pure_imaginary_spectrum_certificate(&e2_cover(), &[int(0), int(0), int(1)]).unwrap();
        assert!(cert.is_witness());
        let data = cert.data();
        assert_eq!(data.charpoly, Poly::from_i64(&[0, 1, 0, 1]));
        assert_eq!(data.squares_poly, Poly::from_i64(&[0, 1, 2, 1]));
        assert_eq!(data.negative_root_count, 1);
    }

    #[test]
    fn translations_are_not_witnesses() {
        let cert = pure_imaginary_spectrum_certificate(&e2_cover(), &[int(1), int(0), int(0)]).unwrap();
        assert!(!cert.is_witness());
        assert_eq!(cert.data().charpoly, Poly::monomial(3));
    }

    #[test]
    fn status_of_small_algebras() {
        let h3 = LieAlgebra::from_named(&["X", "Y", "Z"], &[("X", "Y", vec![("Z", int(1))])]).unwrap();
        assert_eq!(
            exponentiality_status(&h3, 10, 0).unwrap(),
            ExponentialityStatus::VerifiedNilpotent
        );

        match exponentiality_status(&e2_cover(), 10, 0).unwrap() {
            ExponentialityStatus::Refuted(Refutation::ImaginarySpectrum(d)) => {
                assert_eq!(d.element, vec![int(0), int(0), int(1)]);
            }
            other => panic!("unexpected {other:?}"),
        }

        let sl2 = LieAlgebra::from_named(
            &["H", "E", "F"],
            &[
                ("H", "E", vec![("E", int(2))]),
                ("H", "F", vec![("F", int(-2))]),
                ("E", "F", vec![("H", int(1))]),
            ],
        )
        .unwrap();
        assert_eq!(
            exponentiality_status(&sl2, 10, 0).unwrap(),
            ExponentialityStatus::Refuted(Refutation::NotSolvable)
        );
    }

    #[test]
    fn sampling_is_deterministic() {
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        assert_eq!(random_rational_vector(&mut a, 6), random_rational_vector(&mut b, 6));
    }

    #[test]
    fn integer_scan_agrees_with_certificate() {
        let six = LieAlgebra::from_named(
            &["A", "B", "P", "R", "Q", "S"],
            &[
                ("P", "Q", vec![("R", int(1))]),
                ("P", "R", vec![("S", int(1))]),
                ("A", "P", vec![("P", ratio(1, 2))]),
                ("A", "R", vec![("R", ratio(1, 2))]),
                ("A", "S", vec![("S", int(1))]),
                ("B", "P", vec![("P", ratio(-1, 2))]),
                ("B", "Q", vec![("Q", int(1))]),
                ("B", "R", vec![("R", ratio(1, 2))]),
            ],
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for alg in [e2_cover(), six] {
            for _ in 0..60 {
                let x = random_rational_vector(&mut rng, alg.dim());
                let fast = has_imaginary_eigenvalue(&alg, &x).unwrap();
                let slow = matches!(
                    pure_imaginary_spectrum_certificate(&alg, &x).unwrap(),
                    SpectrumCertificate::Witness(_)
                );
                assert_eq!(fast, slow, "x = {x:?}");
            }
        }
    }
}
