//! Dense exact matrices and the fraction-free elimination kernel shared by
//! every rank, kernel and canonical-form computation.

use std::fmt;
use std::ops::{Index, IndexMut};

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, to_f64, Rational};

/// Row-major dense matrix over the rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds from row vectors; every row must have `cols` entries.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Self {
            rows: nrows,
            cols,
            data,
        })
    }

    /// Builds a matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: col.len(),
                });
            }
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Self {
            rows,
            cols,
            data: entries.iter().map(|&x| Rational::from_integer(x.into())).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)].clone())
            .fold(Rational::zero(), |acc, x| acc + x)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "vector length differs from column count");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn rank(&self) -> usize {
        row_echelon(self.row_vectors(), self.cols).pivots.len()
    }

    /// Basis of `{x : self * x = 0}` read off the reduced echelon form (not canonicalised).
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let ech = row_echelon(self.row_vectors(), self.cols);
        ech.kernel_basis()
    }

    pub fn determinant(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[(r, c)].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != c {
                a.swap_rows(p, c);
                det = -det;
            }
            let pivot = a[(c, c)].clone();
            det *= &pivot;
            for r in c + 1..n {
                if a[(r, c)].is_zero() {
                    continue;
                }
                let f = &a[(r, c)] / &pivot;
                for j in c..n {
                    let d = &f * &a[(c, j)];
                    a[(r, j)] -= d;
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let augmented: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
                row
            })
            .collect();
        let ech = row_echelon(augmented, 2 * n);
        if ech.pivots.len() < n || ech.pivots[n - 1] >= n {
            return Err(Error::SingularMatrix);
        }
        let rows = ech.rows.into_iter().map(|r| r[n..].to_vec()).collect();
        Self::from_rows(n, rows)
    }

    /// Exact `exp(self)` for a nilpotent matrix (finite power series).
    pub fn exp_nilpotent(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut result = Self::identity(n);
        let mut term = Self::identity(n);
        for k in 1..=n {
            term = term.mul(self).scale(&Rational::new(BigInt::one(), BigInt::from(k)));
            if term.is_zero() {
                return Ok(result);
            }
            result = result.add(&term);
        }
        if term.mul(self).is_zero() {
            Ok(result)
        } else {
            Err(Error::NotNilpotent)
        }
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| to_f64(&self[(i, j)]))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form with unit pivots.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub rows: Vec<Vec<Rational>>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

impl Echelon {
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    v[p] = -row[f].clone();
                }
                v
            })
            .collect()
    }
}

/// Reduced row echelon form of the span of `rows`.
///
/// Rows are scaled to primitive integer vectors and eliminated fraction-free
/// (cross-multiplication followed by content removal). Rationals reappear only
/// in the final normalisation that makes every pivot 1, so the output depends
/// only on the row space.
pub fn row_echelon(rows: Vec<Vec<Rational>>, cols: usize) -> Echelon {
    let mut work: Vec<Vec<BigInt>> = rows
        .iter()
        .inspect(|r| assert_eq!(r.len(), cols, "row length differs from column count"))
        .filter_map(|r| primitive_integer_row(r))
        .collect();

    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        if rank == work.len() {
            break;
        }
        let Some(p) = (rank..work.len())
            .filter(|&r| !work[r][col].is_zero())
            .min_by_key(|&r| work[r][col].abs())
        else {
            continue;
        };
        work.swap(rank, p);
        let (head, tail) = work.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        for row in tail.iter_mut() {
            if !row[col].is_zero() {
                eliminate(row, pivot_row, col);
            }
        }
        work.retain(|r| r.iter().any(|x| !x.is_zero()));
        pivots.push(col);
        rank += 1;
    }
    work.truncate(rank);

    // Back substitution, still over the integers.
    for i in (0..rank).rev() {
        let col = pivots[i];
        let (head, tail) = work.split_at_mut(i);
        let pivot_row = &tail[0];
        for row in head.iter_mut() {
            if !row[col].is_zero() {
                eliminate(row, pivot_row, col);
            }
        }
    }

    let rows = work
        .into_iter()
        .zip(&pivots)
        .map(|(row, &p)| {
            let lead = row[p].clone();
            row.into_iter().map(|x| Rational::new(x, lead.clone())).collect()
        })
        .collect();
    Echelon { rows, pivots, cols }
}

/// `row <- pivot[col] * row - row[col] * pivot`, then divided by its content.
fn eliminate(row: &mut [BigInt], pivot: &[BigInt], col: usize) {
    let g = row[col].gcd(&pivot[col]);
    let a = &pivot[col] / &g;
    let b = &row[col] / &g;
    for (x, p) in row.iter_mut().zip(pivot) {
        *x = &a * &*x - &b * p;
    }
    remove_content(row);
}

fn remove_content(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Clears denominators and content; `None` for the zero row.
fn primitive_integer_row(row: &[Rational]) -> Option<Vec<BigInt>> {
    if row.iter().all(Zero::is_zero) {
        return None;
    }
    let lcm = row.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let mut ints: Vec<BigInt> = row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    remove_content(&mut ints);
    Some(ints)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn rank_and_kernel() {
        let m = QMatrix::from_i64(3, 3, &[1, 2, 3, 2, 4, 6, 1, 0, 1]);
        assert_eq!(m.rank(), 2);
        let ker = m.kernel();
        assert_eq!(ker.len(), 1);
        assert!(m.mul_vec(&ker[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn echelon_is_canonical_for_row_space() {
        let a = vec![vec![int(2), int(4), int(0)], vec![int(0), int(3), int(3)]];
        let b = vec![
            vec![int(2), int(7), int(3)],
            vec![ratio(1, 2), int(1), int(0)],
            vec![int(0), int(0), int(0)],
        ];
        let ea = row_echelon(a, 3);
        let eb = row_echelon(b, 3);
        assert_eq!(ea.rows, eb.rows);
        assert_eq!(ea.pivots, vec![0, 1]);
        assert_eq!(ea.rows[0], vec![int(1), int(0), int(-2)]);
    }

    #[test]
    fn inverse_and_determinant() {
        let m = QMatrix::from_i64(3, 3, &[2, 1, 0, 0, 1, 0, 1, 0, 1]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), QMatrix::identity(3));
        assert_eq!(m.determinant().unwrap(), int(2));

        let singular = QMatrix::from_i64(2, 2, &[1, 2, 2, 4]);
        assert_eq!(singular.inverse(), Err(Error::SingularMatrix));
        assert_eq!(singular.determinant().unwrap(), int(0));
    }

    #[test]
    fn nilpotent_exponential() {
        // Single Jordan block: exp has 1/2 in the corner.
        let n = QMatrix::from_i64(3, 3, &[0, 1, 0, 0, 0, 1, 0, 0, 0]);
        let e = n.exp_nilpotent().unwrap();
        assert_eq!(e[(0, 2)], ratio(1, 2));
        assert_eq!(e[(0, 1)], int(1));
        assert_eq!(QMatrix::identity(2).exp_nilpotent(), Err(Error::NotNilpotent));
    }
}
