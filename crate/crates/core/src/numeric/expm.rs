use nalgebra::DMatrix;

use crate::error::{Error, Result};

const MAX_DIM: usize = 64;
/// Scale until the 1-norm is at most this before summing the series.
const SCALED_NORM: f64 = 0.5;
const MAX_TERMS: usize = 40;

/// `exp(m)` by scaling and squaring around a truncated Taylor series.
pub fn matrix_exp(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let n = m.nrows();
    if n != m.ncols() {
        return Err(Error::NotSquare {
            rows: n,
            cols: m.ncols(),
        });
    }
    if n > MAX_DIM {
        return Err(Error::TooLarge(n));
    }
    if m.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite);
    }
    let norm = (0..n)
        .map(|j| m.column(j).iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let squarings = if norm > SCALED_NORM {
        (norm / SCALED_NORM).log2().ceil() as i32
    } else {
        0
    };
    let a = m / 2f64.powi(squarings);

    let mut sum = DMatrix::<f64>::identity(n, n);
    let mut term = DMatrix::<f64>::identity(n, n);
    for k in 1..=MAX_TERMS {
        term = &term * &a / k as f64;
        sum += &term;
        if term.amax() <= 1e-3 * f64::EPSILON * sum.amax() {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    if sum.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite);
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_and_scalar() {
        assert_eq!(matrix_exp(&DMatrix::zeros(3, 3)).unwrap(), DMatrix::identity(3, 3));
        let e = matrix_exp(&DMatrix::from_element(1, 1, 1.0)).unwrap();
        assert!((e[(0, 0)] - std::f64::consts::E).abs() < 1e-12);
    }

    #[test]
    fn rotation() {
        let t = 2.5f64;
        let m = DMatrix::from_row_slice(2, 2, &[0.0, -t, t, 0.0]);
        let e = matrix_exp(&m).unwrap();
        assert!((e[(0, 0)] - t.cos()).abs() < 1e-12);
        assert!((e[(1, 0)] - t.sin()).abs() < 1e-12);
    }

    #[test]
    fn exponent_law_for_commuting_arguments() {
        let m = DMatrix::from_row_slice(3, 3, &[0.3, 1.0, -2.0, 0.0, -0.7, 0.5, 0.0, 0.0, 1.1]);
        let whole = matrix_exp(&(&m * 3.0)).unwrap();
        let parts = matrix_exp(&m).unwrap() * matrix_exp(&(&m * 2.0)).unwrap();
        assert!((whole - parts).amax() < 1e-10);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            matrix_exp(&DMatrix::zeros(2, 3)),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        );
        assert_eq!(
            matrix_exp(&DMatrix::from_element(1, 1, f64::NAN)),
            Err(Error::NonFinite)
        );
        assert_eq!(matrix_exp(&DMatrix::zeros(65, 65)), Err(Error::TooLarge(65)));
    }
}
