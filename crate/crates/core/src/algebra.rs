//! Finite-dimensional Lie algebras over Q given by structure constants, and
//! the structural computations the classifier relies on.

use std::collections::{BTreeMap, HashSet};

use num_traits::Zero;

use crate::covector::Covector;
use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::rational::Rational;
use crate::subspace::{unit_vector, Subspace};

/// A Lie algebra with basis `e_0, .., e_{n-1}` and brackets
/// `[e_i, e_j] = sum_k c_ij^k e_k`, stored for `i < j` only.
#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    names: Vec<String>,
    structure: BTreeMap<(usize, usize), Vec<Rational>>,
}

/// A failure of the Jacobi identity on a basis triple `i < j < k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiViolation {
    pub triple: (usize, usize, usize),
    pub residual: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<JacobiViolation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Unimodularity {
    Unimodular,
    /// First basis element whose adjoint has nonzero trace.
    NotUnimodular {
        witness: usize,
        trace: Rational,
    },
}

impl Unimodularity {
    pub fn holds(&self) -> bool {
        matches!(self, Self::Unimodular)
    }
}

/// `(a, b, [(name, coeff), ...])` for `[a, b] = sum coeff * name`.
pub type NamedBracket<'a> = (&'a str, &'a str, Vec<(&'a str, Rational)>);

/// `alg / ideal` realised on the coordinate complement of the ideal's pivots.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub algebra: LieAlgebra,
    /// Original basis indices whose classes form the quotient basis.
    pub complement: Vec<usize>,
    /// `(n - k) x n` matrix sending a vector to its class in quotient coordinates.
    pub projection: QMatrix,
}

impl LieAlgebra {
    /// `structure` maps `(i, j)` with `i < j` to the coordinate vector of `[e_i, e_j]`.
    pub fn new(names: Vec<String>, structure: BTreeMap<(usize, usize), Vec<Rational>>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::EmptyAlgebra);
        }
        Self::new_unchecked_dim(names, structure)
    }

    /// Like [`new`](Self::new) but also admits the zero algebra, which only
    /// arises internally as a quotient `g / g`.
    fn new_unchecked_dim(names: Vec<String>, structure: BTreeMap<(usize, usize), Vec<Rational>>) -> Result<Self> {
        let n = names.len();
        let mut seen = HashSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(Error::DuplicateBasisName(name.clone()));
            }
        }
        let mut clean = BTreeMap::new();
        for ((i, j), v) in structure {
            for index in [i, j] {
                if index >= n {
                    return Err(Error::IndexOutOfRange { index, dim: n });
                }
            }
            if i >= j {
                return Err(Error::Input(format!(
                    "structure constants must be keyed by i < j, got ({i}, {j})"
                )));
            }
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: v.len(),
                });
            }
            if v.iter().any(|c| !c.is_zero()) {
                clean.insert((i, j), v);
            }
        }
        Ok(Self {
            names,
            structure: clean,
        })
    }

    /// Convenience constructor from named brackets `[a, b] = sum c * e_k`.
    /// Pairs may be given in either order; a pair may appear only once.
    pub fn from_named(names: &[&str], brackets: &[NamedBracket<'_>]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let index = |s: &str| {
            names
                .iter()
                .position(|n| n == s)
                .ok_or_else(|| Error::Input(format!("unknown basis name `{s}`")))
        };
        let n = names.len();
        let mut structure = BTreeMap::new();
        for (a, b, terms) in brackets {
            let (i, j) = (index(a)?, index(b)?);
            let mut v = vec![Rational::zero(); n];
            for (k, c) in terms {
                v[index(k)?] += c;
            }
            if i == j {
                if v.iter().any(|c| !c.is_zero()) {
                    return Err(Error::Input(format!("[{a}, {a}] must vanish")));
                }
                continue;
            }
            let (key, v) = if i < j {
                ((i, j), v)
            } else {
                ((j, i), v.into_iter().map(|c| -c).collect())
            };
            if structure.insert(key, v).is_some() {
                return Err(Error::Input(format!("bracket [{a}, {b}] given twice")));
            }
        }
        Self::new(names, structure)
    }

    /// The abelian algebra on the given names.
    pub fn abelian(names: Vec<String>) -> Result<Self> {
        Self::new(names, BTreeMap::new())
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: names.len(),
            });
        }
        self.names = names;
        Self::new_unchecked_dim(self.names, self.structure)
    }

    /// Nonzero structure constants `(i, j, k, c)` with `i < j`.
    pub fn structure_constants(&self) -> impl Iterator<Item = (usize, usize, usize, &Rational)> {
        self.structure.iter().flat_map(|(&(i, j), v)| {
            v.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(k, c)| (i, j, k, c))
        })
    }

    /// Coordinates of `[e_i, e_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Rational> {
        let n = self.dim();
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self
                .structure
                .get(&(i, j))
                .cloned()
                .unwrap_or_else(|| vec![Rational::zero(); n]),
            std::cmp::Ordering::Greater => self
                .structure
                .get(&(j, i))
                .map(|v| v.iter().map(|c| -c).collect())
                .unwrap_or_else(|| vec![Rational::zero(); n]),
            std::cmp::Ordering::Equal => vec![Rational::zero(); n],
        }
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        assert_eq!(x.len(), n);
        assert_eq!(y.len(), n);
        let mut out = vec![Rational::zero(); n];
        for (&(i, j), v) in &self.structure {
            // x_i y_j - x_j y_i
            let w = &x[i] * &y[j] - &x[j] * &y[i];
            if w.is_zero() {
                continue;
            }
            for (o, c) in out.iter_mut().zip(v) {
                if !c.is_zero() {
                    *o += &w * c;
                }
            }
        }
        out
    }

    /// Matrix of `ad_x`: column `j` holds `[x, e_j]`.
    pub fn ad_matrix(&self, x: &[Rational]) -> Result<QMatrix> {
        let n = self.dim();
        if x.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: x.len(),
            });
        }
        // ad_x e_j = sum_i x_i [e_i, e_j]
        let mut m = QMatrix::zeros(n, n);
        for (&(i, j), v) in &self.structure {
            for (k, c) in v.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if !x[i].is_zero() {
                    m[(k, j)] += &x[i] * c;
                }
                if !x[j].is_zero() {
                    m[(k, i)] -= &x[j] * c;
                }
            }
        }
        Ok(m)
    }

    pub fn ad_basis(&self, i: usize) -> QMatrix {
        self.ad_matrix(&unit_vector(self.dim(), i))
            .expect("unit vector has length n")
    }

    /// Exact Jacobi check on every triple `i < j < k`.
    pub fn validate(&self) -> ValidationReport {
        let n = self.dim();
        let mut violations = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let ei = unit_vector(n, i);
                    let ej = unit_vector(n, j);
                    let ek = unit_vector(n, k);
                    let a = self.bracket(&ei, &self.bracket_basis(j, k));
                    let b = self.bracket(&ej, &self.bracket_basis(k, i));
                    let c = self.bracket(&ek, &self.bracket_basis(i, j));
                    let residual: Vec<Rational> = a.iter().zip(&b).zip(&c).map(|((a, b), c)| a + b + c).collect();
                    if residual.iter().any(|r| !r.is_zero()) {
                        violations.push(JacobiViolation {
                            triple: (i, j, k),
                            residual,
                        });
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidAlgebra {
                violations: report.violations.len(),
            })
        }
    }

    pub fn ad_trace(&self, x: &[Rational]) -> Rational {
        self.ad_matrix(x).expect("length checked by caller").trace()
    }

    /// `Tr ad` is linear, so vanishing on the basis decides unimodularity.
    pub fn is_unimodular(&self) -> Unimodularity {
        for i in 0..self.dim() {
            let trace = self.ad_basis(i).trace();
            if !trace.is_zero() {
                return Unimodularity::NotUnimodular { witness: i, trace };
            }
        }
        Unimodularity::Unimodular
    }

    /// `[a, b]` as a subspace.
    pub fn bracket_space(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut vectors = Vec::new();
        for x in a.basis() {
            for y in b.basis() {
                let z = self.bracket(x, y);
                if z.iter().any(|c| !c.is_zero()) {
                    vectors.push(z);
                }
            }
        }
        Subspace::span(self.dim(), &vectors).expect("bracket vectors have length n")
    }

    /// `g = g^(0) ⊋ g^(1) ⊋ ...` ending at its fixed point (listed once).
    pub fn derived_series(&self) -> Vec<Subspace> {
        self.series(|term| self.bracket_space(term, term))
    }

    /// `g = g_0 ⊋ g_1 = [g, g] ⊋ ...` ending at its fixed point (listed once).
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let full = Subspace::full(self.dim());
        self.series(|term| self.bracket_space(&full, term))
    }

    fn series(&self, step: impl Fn(&Subspace) -> Subspace) -> Vec<Subspace> {
        let mut terms = vec![Subspace::full(self.dim())];
        loop {
            let last = terms.last().expect("series is never empty");
            let next = step(last);
            if next == *last {
                return terms;
            }
            debug_assert!(next.dim() < last.dim());
            terms.push(next);
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().is_some_and(Subspace::is_zero)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().is_some_and(Subspace::is_zero)
    }

    /// `{x : [x, e_i] = 0 for all i}`.
    pub fn center(&self) -> Subspace {
        let n = self.dim();
        let rows: Vec<Vec<Rational>> = (0..n).flat_map(|i| self.ad_basis(i).row_vectors()).collect();
        let stacked = QMatrix::from_rows(n, rows).expect("rows have length n");
        Subspace::kernel_of(&stacked)
    }

    /// Quotient by an ideal; rejects non-ideals with an escaping bracket.
    pub fn quotient(&self, ideal: &Subspace) -> Result<Quotient> {
        let n = self.dim();
        if ideal.ambient_dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: ideal.ambient_dim(),
            });
        }
        if let crate::orbit::IdealCheck::NotIdeal { basis_index, .. } = crate::orbit::is_ideal(self, ideal) {
            return Err(Error::NotAnIdeal { basis_index });
        }
        let pivots = ideal.pivots();
        let complement: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
        let m = complement.len();
        let project = |v: &[Rational]| -> Vec<Rational> {
            let r = ideal.reduce(v);
            complement.iter().map(|&j| r[j].clone()).collect()
        };
        let columns: Vec<Vec<Rational>> = (0..n).map(|j| project(&unit_vector(n, j))).collect();
        let projection = QMatrix::from_columns(m, &columns)?;

        let mut structure = BTreeMap::new();
        for a in 0..m {
            for b in a + 1..m {
                let v = project(&self.bracket_basis(complement[a], complement[b]));
                structure.insert((a, b), v);
            }
        }
        let names = complement.iter().map(|&j| self.names[j].clone()).collect();
        let algebra = Self::new_unchecked_dim(names, structure)?;
        Ok(Quotient {
            algebra,
            complement,
            projection,
        })
    }

    /// The algebra whose new basis vectors are the columns of `t`.
    pub fn change_of_basis(&self, t: &QMatrix) -> Result<Self> {
        let n = self.dim();
        if t.rows() != n || t.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: t.rows().max(t.cols()),
            });
        }
        let t_inv = t.inverse()?;
        let cols: Vec<Vec<Rational>> = (0..n).map(|j| t.column(j)).collect();
        let mut structure = BTreeMap::new();
        for a in 0..n {
            for b in a + 1..n {
                let br = self.bracket(&cols[a], &cols[b]);
                structure.insert((a, b), t_inv.mul_vec(&br));
            }
        }
        Self::new_unchecked_dim(self.names.clone(), structure)
    }
}

/// Dual coordinates after the basis change whose new basis is the columns of `t`.
pub fn transform_covector(ell: &Covector, t: &QMatrix) -> Covector {
    Covector::new(t.transpose().mul_vec(ell.coeffs()))
}

/// Subspace coordinates after the basis change whose new basis is the columns of `t`.
pub fn transform_subspace(v: &Subspace, t: &QMatrix) -> Result<Subspace> {
    Ok(v.image_under(&t.inverse()?))
}

/// `V ⋊ R T` with `V = Q^n` abelian and `[T, v] = D v`. Basis `V1..Vn, T`.
pub fn semidirect_from_derivation(d: &QMatrix) -> Result<LieAlgebra> {
    if !d.is_square() {
        return Err(Error::NotSquare {
            rows: d.rows(),
            cols: d.cols(),
        });
    }
    let n = d.rows();
    let mut names: Vec<String> = (1..=n).map(|i| format!("V{i}")).collect();
    names.push("T".to_string());
    let mut structure = BTreeMap::new();
    for j in 0..n {
        // [V_j, T] = -D e_j
        let mut v: Vec<Rational> = d.column(j).into_iter().map(|c| -c).collect();
        v.push(Rational::zero());
        structure.insert((j, n), v);
    }
    LieAlgebra::new(names, structure)
}

impl std::fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LieAlgebra({:?}", self.names)?;
        for (&(i, j), v) in &self.structure {
            let terms: Vec<String> = v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| format!("{} {}", crate::rational::format_rational(c), self.names[k]))
                .collect();
            write!(f, "; [{}, {}] = {}", self.names[i], self.names[j], terms.join(" + "))?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn h3() -> LieAlgebra {
        LieAlgebra::from_named(&["X", "Y", "Z"], &[("X", "Y", vec![("Z", int(1))])]).unwrap()
    }

    fn e2_cover() -> LieAlgebra {
        LieAlgebra::from_named(
            &["X", "Y", "T"],
            &[("T", "X", vec![("Y", int(1))]), ("T", "Y", vec![("X", int(-1))])],
        )
        .unwrap()
    }

    #[test]
    fn rejects_degenerate_inputs() {
        assert_eq!(LieAlgebra::abelian(vec![]), Err(Error::EmptyAlgebra));
        assert!(LieAlgebra::abelian(vec!["A".into()]).is_ok());
        assert!(matches!(
            LieAlgebra::abelian(vec!["A".into(), "A".into()]),
            Err(Error::DuplicateBasisName(_))
        ));
        let mut s = BTreeMap::new();
        s.insert((0, 3), vec![int(0); 3]);
        assert!(matches!(
            LieAlgebra::new(vec!["a".into(), "b".into(), "c".into()], s),
            Err(Error::IndexOutOfRange { .. })
        ));
        let mut s = BTreeMap::new();
        s.insert((0, 1), vec![int(0); 2]);
        assert!(matches!(
            LieAlgebra::new(vec!["a".into(), "b".into(), "c".into()], s),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(LieAlgebra::from_named(
            &["X", "Y"],
            &[("X", "Y", vec![("X", int(1))]), ("Y", "X", vec![("X", int(-1))])]
        )
        .is_err());
    }

    #[test]
    fn jacobi_violation_is_reported_with_residual() {
        assert!(h3().validate().is_valid());
        let bogus = LieAlgebra::from_named(
            &["X", "Y", "Z"],
            &[("X", "Y", vec![("Z", int(1))]), ("X", "Z", vec![("X", int(1))])],
        )
        .unwrap();
        let report = bogus.validate();
        assert_eq!(report.violations.len(), 1);
        // [X,[Y,Z]] + [Y,[Z,X]] + [Z,[X,Y]] = [Y,-X] = Z
        assert_eq!(report.violations[0].triple, (0, 1, 2));
        assert_eq!(report.violations[0].residual, vec![int(0), int(0), int(1)]);
    }

    #[test]
    fn ad_matrix_of_heisenberg_generator() {
        let ad = h3().ad_matrix(&[int(1), int(0), int(0)]).unwrap();
        let mut expected = QMatrix::zeros(3, 3);
        expected[(2, 1)] = int(1);
        assert_eq!(ad, expected);
        assert!(h3().ad_matrix(&vec![int(0); 3]).unwrap().is_zero());
        assert!(h3().ad_matrix(&vec![int(0); 2]).is_err());
    }

    #[test]
    fn series_of_small_algebras() {
        let h = h3();
        assert_eq!(
            h.lower_central_series(),
            vec![Subspace::full(3), Subspace::coordinate(3, [2]), Subspace::zero(3)]
        );
        assert!(h.is_nilpotent() && h.is_solvable());
        assert_eq!(h.center(), Subspace::coordinate(3, [2]));

        let e = e2_cover();
        assert_eq!(
            e.derived_series(),
            vec![Subspace::full(3), Subspace::coordinate(3, [0, 1]), Subspace::zero(3)]
        );
        assert_eq!(
            e.lower_central_series(),
            vec![Subspace::full(3), Subspace::coordinate(3, [0, 1])]
        );
        assert!(e.is_solvable() && !e.is_nilpotent());
        assert!(e.center().is_zero());

        let ab = LieAlgebra::abelian(vec!["a".into(), "b".into()]).unwrap();
        assert_eq!(ab.derived_series(), vec![Subspace::full(2), Subspace::zero(2)]);
    }

    #[test]
    fn quotient_of_heisenberg_by_center_is_abelian() {
        let q = h3().quotient(&Subspace::coordinate(3, [2])).unwrap();
        assert_eq!(q.algebra.dim(), 2);
        assert_eq!(q.algebra.structure_constants().count(), 0);
        assert_eq!(q.complement, vec![0, 1]);

        let same = h3().quotient(&Subspace::zero(3)).unwrap();
        assert_eq!(same.algebra, h3());

        assert!(matches!(
            h3().quotient(&Subspace::coordinate(3, [0])),
            Err(Error::NotAnIdeal { .. })
        ));
    }

    #[test]
    fn semidirect_products() {
        let rot = QMatrix::from_i64(2, 2, &[0, 1, -1, 0]);
        let g = semidirect_from_derivation(&rot).unwrap();
        assert!(g.validate().is_valid());
        // Relabel X = V2, Y = V1 to recover [T,X] = Y, [T,Y] = -X.
        let t = QMatrix::from_i64(3, 3, &[0, 1, 0, 1, 0, 0, 0, 0, 1]);
        let relabeled = g
            .change_of_basis(&t)
            .unwrap()
            .with_names(vec!["X".into(), "Y".into(), "T".into()])
            .unwrap();
        assert_eq!(relabeled, e2_cover());

        let zero = semidirect_from_derivation(&QMatrix::zeros(2, 2)).unwrap();
        assert_eq!(zero.structure_constants().count(), 0);

        let hyp = semidirect_from_derivation(&QMatrix::from_i64(2, 2, &[1, 0, 0, -1])).unwrap();
        assert!(hyp.is_unimodular().holds());
        let tilted = semidirect_from_derivation(&QMatrix::from_i64(2, 2, &[1, 0, 0, 1])).unwrap();
        assert_eq!(
            tilted.is_unimodular(),
            Unimodularity::NotUnimodular {
                witness: 2,
                trace: int(2)
            }
        );
    }

    #[test]
    fn change_of_basis_swapping_generators_flips_sign() {
        let t = QMatrix::from_i64(3, 3, &[0, 1, 0, 1, 0, 0, 0, 0, 1]);
        let g = h3().change_of_basis(&t).unwrap();
        assert_eq!(g.bracket_basis(0, 1), vec![int(0), int(0), int(-1)]);
        assert_eq!(h3().change_of_basis(&QMatrix::identity(3)).unwrap(), h3());
        assert_eq!(h3().change_of_basis(&QMatrix::zeros(3, 3)), Err(Error::SingularMatrix));

        let ell = Covector::new(vec![int(0), int(0), int(1)]);
        assert_eq!(transform_covector(&ell, &t), ell);
        let v = Subspace::coordinate(3, [0]);
        assert_eq!(transform_subspace(&v, &t).unwrap(), Subspace::coordinate(3, [1]));
    }
}
