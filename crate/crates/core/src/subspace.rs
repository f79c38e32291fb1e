//! Subspaces of `Q^n` in canonical form.
//!
//! A subspace is stored as the reduced echelon basis of its span, i.e. the
//! transpose of the reduced column-echelon `n x k` basis matrix. Two subspaces
//! are equal iff their stored bases are identical.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::{row_echelon, QMatrix};
use crate::rational::{format_rational, Rational};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self::coordinate(ambient_dim, 0..ambient_dim)
    }

    /// Span of the given standard basis vectors.
    pub fn coordinate(ambient_dim: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let vectors: Vec<Vec<Rational>> = indices.into_iter().map(|i| unit_vector(ambient_dim, i)).collect();
        Self::span(ambient_dim, &vectors).expect("unit vectors have the ambient length")
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn span(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient_dim) {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                found: v.len(),
            });
        }
        let ech = row_echelon(vectors.to_vec(), ambient_dim);
        Ok(Self {
            ambient_dim,
            basis: ech.rows,
            pivots: ech.pivots,
        })
    }

    /// Accepts a basis only if it is already canonical.
    pub fn from_canonical(ambient_dim: usize, basis: Vec<Vec<Rational>>) -> Result<Self> {
        let s = Self::span(ambient_dim, &basis)?;
        if s.basis != basis {
            return Err(Error::Input(
                "subspace basis is not in reduced echelon canonical form".into(),
            ));
        }
        Ok(s)
    }

    /// Kernel of `m`, as a subspace of `Q^{m.cols()}`.
    pub fn kernel_of(m: &QMatrix) -> Self {
        Self::span(m.cols(), &m.kernel()).expect("kernel vectors have the column length")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// Canonical basis vectors.
    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The `n x k` reduced column-echelon basis matrix.
    pub fn basis_matrix(&self) -> QMatrix {
        QMatrix::from_columns(self.ambient_dim, &self.basis).expect("basis vectors match ambient")
    }

    /// `v` minus its component along the pivot coordinates: zero iff `v` lies in the subspace.
    /// The non-pivot coordinates of the result give the class of `v` in the quotient.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.ambient_dim);
        let mut r = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let c = r[p].clone();
            for (x, b) in r.iter_mut().zip(row) {
                if !b.is_zero() {
                    *x -= &c * b;
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Self) -> Self {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let mut vectors = self.basis.clone();
        vectors.extend(other.basis.iter().cloned());
        Self::span(self.ambient_dim, &vectors).expect("same ambient dimension")
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.annihilator().sum(&other.annihilator()).annihilator()
    }

    /// `{f : f . v = 0 for all v in self}` in dual coordinates.
    pub fn annihilator(&self) -> Self {
        if self.basis.is_empty() {
            return Self::full(self.ambient_dim);
        }
        let m = QMatrix::from_rows(self.ambient_dim, self.basis.clone()).expect("basis rows");
        Self::kernel_of(&m)
    }

    /// Image under `m` (an `n x n` matrix acting on column vectors).
    pub fn image_under(&self, m: &QMatrix) -> Self {
        let images: Vec<_> = self.basis.iter().map(|v| m.mul_vec(v)).collect();
        Self::span(m.rows(), &images).expect("image vectors have the row length")
    }

    /// Coordinates of `v` with respect to the canonical basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }
}

pub(crate) fn unit_vector(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(n={}, [", self.ambient_dim)?;
        for (k, v) in self.basis.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            let parts: Vec<String> = v.iter().map(format_rational).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        write!(f, "])")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn equality_is_span_equality() {
        let a = Subspace::span(3, &[vec![int(1), int(1), int(0)], vec![int(0), int(1), int(1)]]).unwrap();
        let b = Subspace::span(
            3,
            &[vec![int(1), int(2), int(1)], vec![ratio(1, 3), int(0), ratio(-1, 3)]],
        )
        .unwrap();
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert_ne!(a, Subspace::full(3));
    }

    #[test]
    fn annihilator_and_intersection() {
        let v = Subspace::coordinate(5, [0, 1, 3]);
        assert_eq!(v.annihilator(), Subspace::coordinate(5, [2, 4]));
        assert_eq!(Subspace::zero(4).annihilator(), Subspace::full(4));
        assert_eq!(Subspace::full(4).annihilator(), Subspace::zero(4));

        let a = Subspace::coordinate(3, [0, 1]);
        let b = Subspace::coordinate(3, [1, 2]);
        assert_eq!(a.intersection(&b), Subspace::coordinate(3, [1]));
        assert_eq!(a.sum(&b), Subspace::full(3));
    }

    #[test]
    fn reduce_gives_quotient_class() {
        let v = Subspace::span(3, &[vec![int(1), int(0), int(2)]]).unwrap();
        let r = v.reduce(&[int(3), int(1), int(1)]);
        assert_eq!(r, vec![int(0), int(1), int(-5)]);
        assert!(v.contains(&[int(-2), int(0), int(-4)]));
        assert_eq!(v.coordinates(&[int(-2), int(0), int(-4)]), Some(vec![int(-2)]));
    }

    #[test]
    fn from_canonical_rejects_non_canonical() {
        assert!(Subspace::from_canonical(2, vec![vec![int(2), int(0)]]).is_err());
        assert!(Subspace::from_canonical(2, vec![vec![int(1), int(3)]]).is_ok());
    }
}
