use std::io::Write;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::expm::matrix_exp;
use super::MEMBERSHIP_TOL;
use crate::algebra::LieAlgebra;
use crate::covector::Covector;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::subspace::Subspace;

/// `ℓ ∘ exp(-t ad_X)` as dual coefficients.
pub fn coadjoint_flow(alg: &LieAlgebra, ell: &Covector, x: &[Rational], t: f64) -> Result<Vec<f64>> {
    ell.check_dim(alg.dim())?;
    coadjoint_flow_f64(alg, &ell.to_f64(), x, t)
}

pub fn coadjoint_flow_f64(alg: &LieAlgebra, point: &[f64], x: &[Rational], t: f64) -> Result<Vec<f64>> {
    let ad = alg.ad_matrix(x)?.to_f64();
    flow_with(&ad, point, t)
}

fn flow_with(ad: &DMatrix<f64>, point: &[f64], t: f64) -> Result<Vec<f64>> {
    if point.len() != ad.nrows() {
        return Err(Error::DimensionMismatch {
            expected: ad.nrows(),
            found: point.len(),
        });
    }
    let e = matrix_exp(&(ad * -t))?;
    let v = e.transpose() * DVector::from_column_slice(point);
    Ok(v.iter().copied().collect())
}

/// Basis one-parameter flows with the adjoint matrices converted once.
#[derive(Debug, Clone)]
pub struct CoadjointFlow {
    ads: Vec<DMatrix<f64>>,
}

impl CoadjointFlow {
    pub fn new(alg: &LieAlgebra) -> Self {
        Self {
            ads: (0..alg.dim()).map(|i| alg.ad_basis(i).to_f64()).collect(),
        }
    }

    pub fn apply(&self, point: &[f64], basis_index: usize, t: f64) -> Result<Vec<f64>> {
        flow_with(&self.ads[basis_index], point, t)
    }

    pub fn apply_word(&self, point: &[f64], word: &[(usize, f64)]) -> Result<Vec<f64>> {
        word.iter().try_fold(point.to_vec(), |p, &(i, t)| self.apply(&p, i, t))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleParams {
    pub n_points: usize,
    pub word_length: usize,
    pub step_scale: f64,
    pub seed: u64,
    pub tolerance: f64,
}

impl Default for SampleParams {
    fn default() -> Self {
        Self {
            n_points: 200,
            word_length: 8,
            step_scale: 1.0,
            seed: 0,
            tolerance: MEMBERSHIP_TOL,
        }
    }
}

/// Basis indices and flow times, applied left to right.
type Word = Vec<(usize, f64)>;

/// Points of `Ad*(G) ℓ` reached by random products of basis flows.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitSample {
    pub base: Vec<f64>,
    pub points: Vec<Vec<f64>>,
    /// `points[i]` is `base` pushed through `words[i]`, left to right.
    pub words: Vec<Vec<(usize, f64)>>,
    pub seed: u64,
    pub tolerance: f64,
}

/// Randomness for point `i` comes from stream `i` of a ChaCha generator keyed
/// by `seed`, so serial and parallel generation agree bit for bit.
pub fn orbit_sample(alg: &LieAlgebra, ell: &Covector, params: SampleParams) -> Result<OrbitSample> {
    ell.check_dim(alg.dim())?;
    if params.n_points == 0 {
        return Err(Error::Input("orbit sample needs at least one point".into()));
    }
    let n = alg.dim();
    let flow = CoadjointFlow::new(alg);
    let base = ell.to_f64();
    let results: Vec<Result<(Word, Vec<f64>)>> = (0..params.n_points)
        .into_par_iter()
        .map(|index| {
            let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
            rng.set_stream(index as u64);
            let word: Vec<(usize, f64)> = (0..params.word_length)
                .map(|_| {
                    let i = rng.random_range(0..n);
                    let t = params.step_scale * (2.0 * rng.random::<f64>() - 1.0);
                    (i, t)
                })
                .collect();
            let point = flow.apply_word(&base, &word)?;
            Ok((word, point))
        })
        .collect();
    let mut words = Vec::with_capacity(params.n_points);
    let mut points = Vec::with_capacity(params.n_points);
    for r in results {
        let (w, p) = r?;
        words.push(w);
        points.push(p);
    }
    Ok(OrbitSample {
        base,
        points,
        words,
        seed: params.seed,
        tolerance: params.tolerance,
    })
}

/// Sup-norm of the part of `point - ℓ` orthogonal to `direction`.
pub fn affine_residual(point: &[f64], ell: &Covector, direction: &Subspace) -> f64 {
    let base = ell.to_f64();
    let d = DVector::from_iterator(point.len(), point.iter().zip(&base).map(|(p, b)| p - b));
    if direction.is_zero() {
        return d.amax();
    }
    let basis = direction.basis_matrix().to_f64();
    let q = basis.qr().q();
    let residual = &d - &q * (q.transpose() * &d);
    residual.amax()
}

pub fn affine_membership(point: &[f64], ell: &Covector, direction: &Subspace, tol: f64) -> bool {
    affine_residual(point, ell, direction) < tol
}

/// Numeric rank of `(point([e_i, e_j]))_{ij}`: singular values above `rtol * largest`.
pub fn tangent_rank(alg: &LieAlgebra, point: &[f64], rtol: f64) -> usize {
    let n = alg.dim();
    assert_eq!(point.len(), n);
    let mut m = DMatrix::<f64>::zeros(n, n);
    for (i, j, k, c) in alg.structure_constants() {
        let v = point[k] * crate::rational::to_f64(c);
        m[(i, j)] += v;
        m[(j, i)] -= v;
    }
    let sv = m.singular_values();
    let largest = sv.iter().copied().fold(0.0, f64::max);
    if largest == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rtol * largest).count()
}

/// One row per point, header of dual basis names (`name*`).
pub fn write_samples_csv<W: Write>(alg: &LieAlgebra, sample: &OrbitSample, out: W) -> Result<()> {
    let io_err = |e: csv::Error| Error::Input(format!("csv output failed: {e}"));
    let mut w = csv::Writer::from_writer(out);
    w.write_record(alg.names().iter().map(|n| format!("{n}*")))
        .map_err(io_err)?;
    for p in &sample.points {
        w.write_record(p.iter().map(|x| format!("{x:e}"))).map_err(io_err)?;
    }
    w.flush().map_err(|e| Error::Input(format!("csv output failed: {e}")))?;
    Ok(())
}
