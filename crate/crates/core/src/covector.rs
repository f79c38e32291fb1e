use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{format_rational, to_f64, Rational};

/// An element of the dual space, as coefficients in the dual basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Covector(Vec<Rational>);

impl Covector {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        Self(coeffs)
    }

    pub fn zero(n: usize) -> Self {
        Self(vec![Rational::zero(); n])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    /// Sum of dual basis elements with the given indices.
    pub fn sum_of_duals(n: usize, indices: &[usize]) -> Self {
        let mut c = Self::zero(n);
        for &i in indices {
            c.0[i] += Rational::from_integer(1.into());
        }
        c
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn check_dim(&self, n: usize) -> Result<()> {
        if self.0.len() == n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: n,
                found: self.0.len(),
            })
        }
    }

    /// Pairing with a vector given in basis coordinates.
    pub fn apply(&self, v: &[Rational]) -> Rational {
        assert_eq!(v.len(), self.0.len());
        self.0
            .iter()
            .zip(v)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(to_f64).collect()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self(self.0.iter().map(|x| x * c).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Debug for Covector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(format_rational).collect();
        write!(f, "Covector[{}]", parts.join(", "))
    }
}
