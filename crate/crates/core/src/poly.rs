//! Univariate polynomials over the rationals, characteristic polynomials and
//! exact real-root counting with Sturm sequences.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::rational::{format_rational, Rational};

/// Dense polynomial, coefficients in increasing degree. The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn monomial(degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = Rational::one();
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + crate::rational::to_f64(c))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|k| {
                    let a = self.coeffs.get(k).cloned().unwrap_or_default();
                    let b = other.coeffs.get(k).cloned().unwrap_or_default();
                    a + b
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::default();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// `p(x) = x^m * rest(x)` with `rest(0) != 0`; returns `(rest, m)`. Zero maps to `(0, 0)`.
    /// `(L, L * self)` with `L` the least common denominator of the coefficients.
    pub fn clear_denominators(&self) -> (BigInt, Self) {
        let l = self.coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let scaled = self
            .coeffs
            .iter()
            .map(|c| Rational::from_integer(c.numer() * (&l / c.denom())))
            .collect();
        (l, Self::new(scaled))
    }

    pub fn split_zero_roots(&self) -> (Self, usize) {
        let m = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if self.is_zero() {
            return (Self::default(), 0);
        }
        (Self::new(self.coeffs[m..].to_vec()), m)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_poly(&self.coeffs, "t", f)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

fn fmt_poly(coeffs: &[Rational], var: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if coeffs.iter().all(Zero::is_zero) {
        return write!(f, "0");
    }
    let mut first = true;
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let abs = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { "-" } else { "+" })?;
        }
        first = false;
        let unit = abs.is_one();
        match k {
            0 => write!(f, "{}", format_rational(&abs))?,
            _ => {
                if !unit {
                    write!(f, "{}*", format_rational(&abs))?;
                }
                if k == 1 {
                    write!(f, "{var}")?;
                } else {
                    write!(f, "{var}^{k}")?;
                }
            }
        }
    }
    Ok(())
}

/// Monic `det(t I - m)` by the Faddeev-LeVerrier recurrence.
///
/// Runs over the integers on `L m`, with `L` the common denominator of the
/// entries; all divisions in the recurrence are then exact. The coefficients
/// are rescaled with `det(t I - m) = L^{-n} det(L t I - L m)`.
pub fn charpoly(m: &QMatrix) -> Result<Poly> {
    let (lcm, mut coeffs) = scaled_charpoly(m)?;
    let n = coeffs.len() - 1;
    let mut scale = BigInt::one();
    let mut out = vec![Rational::zero(); n + 1];
    for k in (0..=n).rev() {
        out[k] = Rational::new(std::mem::take(&mut coeffs[k]), scale.clone());
        scale *= &lcm;
    }
    Ok(Poly::new(out))
}

/// `(L, det(t I - L m))` with `L` the common denominator of the entries of `m`.
pub(crate) fn scaled_charpoly(m: &QMatrix) -> Result<(BigInt, Vec<BigInt>)> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut lcm = BigInt::one();
    for i in 0..n {
        for j in 0..n {
            lcm = lcm.lcm(m[(i, j)].denom());
        }
    }
    let a: Vec<BigInt> = (0..n * n)
        .map(|idx| {
            let q = &m[(idx / n, idx % n)];
            q.numer() * (&lcm / q.denom())
        })
        .collect();
    let mul = |x: &[BigInt], y: &[BigInt]| -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let xik = &x[i * n + k];
                if xik.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += xik * &y[k * n + j];
                }
            }
        }
        out
    };
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut aux = vec![BigInt::zero(); n * n];
    for k in 1..=n {
        aux = mul(&a, &aux);
        for i in 0..n {
            aux[i * n + i] += &coeffs[n - k + 1];
        }
        let prod = mul(&a, &aux);
        let tr: BigInt = (0..n).map(|i| &prod[i * n + i]).sum();
        coeffs[n - k] = -(tr / BigInt::from(k));
    }
    Ok((lcm, coeffs))
}

/// The polynomial whose roots are the squares of the roots of `p`, with multiplicity.
///
/// For monic `p` this equals the resultant `Res_t(p(t), u - t^2)`. Computed by
/// one Graeffe step: writing `p(t) = E(t^2) + t O(t^2)`, the result is
/// `(-1)^n (E(u)^2 - u O(u)^2)`.
pub fn squares_polynomial(p: &Poly) -> Poly {
    let Some(n) = p.degree() else {
        return Poly::default();
    };
    let even = Poly::new(p.coeffs.iter().step_by(2).cloned().collect());
    let odd = Poly::new(p.coeffs.iter().skip(1).step_by(2).cloned().collect());
    let q = even.mul(&even).sub(&Poly::monomial(1).mul(&odd.mul(&odd)));
    if n % 2 == 1 {
        q.scale(&-Rational::one())
    } else {
        q
    }
}

/// [`squares_polynomial`] on integer coefficients.
pub(crate) fn squares_integer(p: &[BigInt]) -> Vec<BigInt> {
    if p.is_empty() {
        return Vec::new();
    }
    let n = p.len() - 1;
    let mut q = vec![BigInt::zero(); n + 1];
    // E(u)^2 - u O(u)^2 with p(t) = E(t^2) + t O(t^2)
    for (i, a) in p.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in p.iter().enumerate().skip(i) {
            if b.is_zero() || (i + j) % 2 == 1 {
                continue;
            }
            let k = (i + j) / 2;
            let mut term = a * b;
            if i != j {
                term *= 2;
            }
            if i % 2 == 0 {
                q[k] += term;
            } else {
                q[k] -= term;
            }
        }
    }
    if n % 2 == 1 {
        for c in q.iter_mut() {
            *c = -std::mem::take(c);
        }
    }
    q
}

/// Interval endpoint for root counting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    NegInfinity,
    Finite(Rational),
    PosInfinity,
}

/// Sturm sequence of primitive integer polynomials.
///
/// Each term is `-prem(s_{k-1}, s_k)` computed with a positive multiplier so
/// signs are preserved, then divided by its (positive) content.
#[derive(Debug, Clone)]
pub struct SturmSequence {
    terms: Vec<Vec<BigInt>>,
}

impl SturmSequence {
    /// Panics on the zero polynomial.
    pub fn new(p: &Poly) -> Self {
        assert!(!p.is_zero(), "Sturm sequence of the zero polynomial");
        Self::from_integer(primitive(p))
    }

    /// Sturm sequence of an integer polynomial given by ascending coefficients.
    pub(crate) fn from_integer(mut s0: Vec<BigInt>) -> Self {
        make_primitive(&mut s0);
        assert!(!s0.is_empty(), "Sturm sequence of the zero polynomial");
        let mut s1: Vec<BigInt> = s0.iter().enumerate().skip(1).map(|(k, c)| c * k).collect();
        make_primitive(&mut s1);
        let mut terms = vec![s0];
        if s1.is_empty() {
            return Self { terms };
        }
        terms.push(s1);
        loop {
            let k = terms.len();
            let r = pseudo_remainder(&terms[k - 2], &terms[k - 1]);
            if r.is_empty() {
                break;
            }
            let mut next: Vec<BigInt> = r.into_iter().map(|x| -x).collect();
            make_primitive(&mut next);
            terms.push(next);
        }
        Self { terms }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn sign_at(&self, poly: &[BigInt], at: &Bound) -> i8 {
        let deg = poly.len() - 1;
        let lc = sign_of(&poly[deg]);
        match at {
            Bound::PosInfinity => lc,
            Bound::NegInfinity => {
                if deg.is_multiple_of(2) {
                    lc
                } else {
                    -lc
                }
            }
            Bound::Finite(x) => {
                // sign of sum c_k a^k b^(d-k) for x = a/b, b > 0
                let (a, b) = (x.numer(), x.denom());
                let mut acc = BigInt::zero();
                let mut b_pow = BigInt::one();
                for c in poly.iter().rev() {
                    acc = acc * a + c * &b_pow;
                    b_pow *= b;
                }
                sign_of(&acc)
            }
        }
    }

    pub fn sign_variations(&self, at: &Bound) -> usize {
        let signs: Vec<i8> = self
            .terms
            .iter()
            .map(|t| self.sign_at(t, at))
            .filter(|&s| s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct real roots in the open interval `(lower, upper)`.
    /// Finite endpoints must not be roots.
    pub fn count_roots(&self, lower: &Bound, upper: &Bound) -> Result<usize> {
        for b in [lower, upper] {
            if let Bound::Finite(_) = b {
                if self.sign_at(&self.terms[0], b) == 0 {
                    return Err(Error::Input("interval endpoint is a root".into()));
                }
            }
        }
        let lo = self.sign_variations(lower);
        let hi = self.sign_variations(upper);
        Ok(lo.saturating_sub(hi))
    }
}

fn sign_of(x: &BigInt) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

fn primitive(p: &Poly) -> Vec<BigInt> {
    if p.is_zero() {
        return Vec::new();
    }
    let lcm = p.coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let mut ints: Vec<BigInt> = p.coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    make_primitive(&mut ints);
    ints
}

fn make_primitive(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    let g = p.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in p.iter_mut() {
            *c = &*c / &g;
        }
    }
}

/// Remainder of `|lc(b)|^k * a` by `b` for the minimal number of steps `k`.
fn pseudo_remainder(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let lb_abs = lb.abs();
    let lb_sign = BigInt::from(sign_of(lb));
    let mut r = a.to_vec();
    while r.len() > db {
        let dr = r.len() - 1;
        let c = &r[dr] * &lb_sign;
        let shift = dr - db;
        for x in r.iter_mut() {
            *x = &*x * &lb_abs;
        }
        for (k, bk) in b.iter().enumerate() {
            r[k + shift] -= &c * bk;
        }
        debug_assert!(r[dr].is_zero());
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
        make_primitive(&mut r);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn charpoly_of_rotation_generator() {
        // ad_T for [T,X]=Y, [T,Y]=-X in basis (X, Y, T).
        let m = QMatrix::from_i64(3, 3, &[0, -1, 0, 1, 0, 0, 0, 0, 0]);
        assert_eq!(charpoly(&m).unwrap(), Poly::from_i64(&[0, 1, 0, 1]));
    }

    #[test]
    fn charpoly_matches_determinant() {
        let m = QMatrix::from_i64(3, 3, &[2, -1, 0, 3, 1, 4, -2, 5, 1]);
        let p = charpoly(&m).unwrap();
        for t in [-3, 0, 1, 7] {
            let shifted = QMatrix::identity(3).scale(&int(t)).sub(&m);
            assert_eq!(p.eval(&int(t)), shifted.determinant().unwrap());
        }
    }

    #[test]
    fn squares_polynomial_of_t3_plus_t() {
        // roots 0, i, -i -> squares 0, -1, -1
        let q = squares_polynomial(&Poly::from_i64(&[0, 1, 0, 1]));
        assert_eq!(q, Poly::from_i64(&[0, 1, 2, 1]));
    }

    #[test]
    fn sturm_counts_distinct_roots() {
        // (x-1)(x-2)(x+3)
        let p = Poly::from_i64(&[1, -1])
            .mul(&Poly::from_i64(&[-2, 1]))
            .mul(&Poly::from_i64(&[3, 1]));
        let p = Poly::new(p.coeffs().iter().map(|c| -c).collect());
        let s = SturmSequence::new(&p);
        assert_eq!(s.count_roots(&Bound::NegInfinity, &Bound::PosInfinity).unwrap(), 3);
        assert_eq!(s.count_roots(&Bound::NegInfinity, &Bound::Finite(int(0))).unwrap(), 1);
        assert_eq!(
            s.count_roots(&Bound::Finite(ratio(3, 2)), &Bound::PosInfinity).unwrap(),
            1
        );
        assert!(s.count_roots(&Bound::Finite(int(1)), &Bound::PosInfinity).is_err());

        // (u+1)^2 u^0 with repeated root: one distinct root.
        let q = Poly::from_i64(&[1, 2, 1]);
        let s = SturmSequence::new(&q);
        assert_eq!(s.count_roots(&Bound::NegInfinity, &Bound::Finite(int(0))).unwrap(), 1);

        // no real roots
        let s = SturmSequence::new(&Poly::from_i64(&[1, 0, 1]));
        assert_eq!(s.count_roots(&Bound::NegInfinity, &Bound::PosInfinity).unwrap(), 0);
    }

    #[test]
    fn display() {
        assert_eq!(Poly::from_i64(&[0, 1, 0, 1]).to_string(), "t^3 + t");
        assert_eq!(
            Poly::new(vec![ratio(-1, 2), int(0), int(-3)]).to_string(),
            "-3*t^2 - 1/2"
        );
        assert_eq!(Poly::default().to_string(), "0");
    }
}
