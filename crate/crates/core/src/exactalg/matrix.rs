//! Dense square matrices over exact rings, the characteristic polynomial,
//! and half-integral matrices.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{Coefficient, IntPolynomial, Polynomial, RationalPolynomial};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    dim: usize,
    entries: Vec<T>,
}

pub type RationalMatrix = Matrix<BigRational>;
pub type IntMatrix = Matrix<BigInt>;

impl<T: Coefficient> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::InvalidArgument("matrix must have positive dimension".into()));
        }
        if let Some(row) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: row.len() });
        }
        Ok(Matrix { dim, entries: rows.into_iter().flatten().collect() })
    }

    pub fn zero(dim: usize) -> Self {
        Matrix { dim, entries: vec![T::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Matrix::zero(dim);
        for i in 0..dim {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.entries[i * self.dim + j] = value;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.entries.chunks(self.dim)
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.dim).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn map<U: Coefficient>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { dim: self.dim, entries: self.entries.iter().map(f).collect() }
    }

    pub fn mul(&self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut out: Matrix<T> = Matrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = out.get(i, j).clone() + a.clone() * rhs.get(k, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.dim, v.len());
        self.rows().map(|row| row.iter().zip(v).fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())).collect()
    }

    pub fn add(&self, rhs: &Matrix<T>) -> Matrix<T> {
        Matrix {
            dim: self.dim,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Matrix<T> {
        self.map(|a| a.clone() * c.clone())
    }

    pub fn pow(&self, mut exp: usize) -> Matrix<T> {
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.dim);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }

    /// `p(M)` by Horner's rule.
    pub fn eval_poly(&self, p: &Polynomial<T>) -> Matrix<T> {
        let mut acc = Matrix::zero(self.dim);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self).add(&Matrix::identity(self.dim).scale(c));
        }
        acc
    }

    /// `det(xI - M)` by Berkowitz's algorithm, which uses no division.
    pub fn char_poly(&self) -> Polynomial<T> {
        // Berkowitz returns [1, c1, ..., cn] for x^n + c1 x^(n-1) + ... + cn.
        let top_first = berkowitz(self);
        Polynomial::new(top_first.into_iter().rev().collect())
    }

    fn submatrix_from(&self, k: usize) -> Matrix<T> {
        let n = self.dim - k;
        let mut m = Matrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, self.get(i + k, j + k).clone());
            }
        }
        m
    }
}

fn berkowitz<T: Coefficient>(m: &Matrix<T>) -> Vec<T> {
    let n = m.dim;
    if n == 1 {
        return vec![T::one(), -m.get(0, 0).clone()];
    }
    // m = [[a, R], [C, S]]
    let a = m.get(0, 0).clone();
    let row: Vec<T> = (1..n).map(|j| m.get(0, j).clone()).collect();
    let mut col: Vec<T> = (1..n).map(|i| m.get(i, 0).clone()).collect();
    let sub = m.submatrix_from(1);
    // Toeplitz column: 1, -a, -RC, -RSC, -RS^2C, ...
    let mut diag = vec![T::one(), -a];
    for _ in 0..n - 1 {
        let rc = row.iter().zip(&col).fold(T::zero(), |acc, (r, c)| acc + r.clone() * c.clone());
        diag.push(-rc);
        col = sub.mul_vec(&col);
    }
    let inner = berkowitz(&sub);
    // (n+1) x n lower-triangular Toeplitz matrix times `inner` (length n).
    (0..=n).map(|i| (0..n.min(i + 1)).fold(T::zero(), |acc, j| acc + diag[i - j].clone() * inner[j].clone())).collect()
}

impl RationalMatrix {
    pub fn from_ratios(rows: &[&[(i64, i64)]]) -> Result<Self> {
        Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&(n, d)| BigRational::new(n.into(), d.into())).collect()).collect(),
        )
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        m.map(|c| BigRational::from_integer(c.clone()))
    }

    pub fn to_integral(&self) -> Option<IntMatrix> {
        self.entries
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(|entries| Matrix { dim: self.dim, entries })
    }

    pub fn determinant(&self) -> BigRational {
        let n = self.dim;
        let mut m = self.clone();
        let mut det = BigRational::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return BigRational::zero();
            };
            if pivot != col {
                for j in 0..n {
                    m.entries.swap(pivot * n + j, col * n + j);
                }
                det = -det;
            }
            let p = m.get(col, col).clone();
            det *= p.clone();
            for r in col + 1..n {
                let factor = m.get(r, col).clone() / p.clone();
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = m.get(r, j).clone() - factor.clone() * m.get(col, j).clone();
                    m.set(r, j, v);
                }
            }
        }
        det
    }

    /// Solves `M x = b` exactly; `None` when `M` is singular.
    pub fn solve(&self, b: &[BigRational]) -> Option<Vec<BigRational>> {
        let n = self.dim;
        assert_eq!(b.len(), n);
        let mut m: Vec<Vec<BigRational>> = self.rows().map(<[_]>::to_vec).collect();
        for (row, rhs) in m.iter_mut().zip(b) {
            row.push(rhs.clone());
        }
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
            m.swap(pivot, col);
            let p = m[col][col].clone();
            for v in m[col].iter_mut() {
                *v = v.clone() / p.clone();
            }
            let pivot_row = m[col].clone();
            for (r, row) in m.iter_mut().enumerate() {
                if r == col || row[col].is_zero() {
                    continue;
                }
                let factor = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row).skip(col) {
                    *x -= &factor * y;
                }
            }
        }
        Some(m.into_iter().map(|row| row[n].clone()).collect())
    }

    pub fn inverse(&self) -> Option<RationalMatrix> {
        let n = self.dim;
        let mut columns = Vec::with_capacity(n);
        for j in 0..n {
            let e: Vec<BigRational> =
                (0..n).map(|i| if i == j { BigRational::one() } else { BigRational::zero() }).collect();
            columns.push(self.solve(&e)?);
        }
        let mut inv = Matrix::zero(n);
        for (j, col) in columns.into_iter().enumerate() {
            for (i, v) in col.into_iter().enumerate() {
                inv.set(i, j, v);
            }
        }
        Some(inv)
    }
}

impl IntMatrix {
    pub fn from_i64s(rows: &[&[i64]]) -> Result<Self> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&c| BigInt::from(c)).collect()).collect())
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        let n = self.dim;
        let mut m: Vec<Vec<BigInt>> = self.rows().map(<[_]>::to_vec).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if m[k][k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                    return BigInt::zero();
                };
                m.swap(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                    m[i][j] = v;
                }
            }
            prev = m[k][k].clone();
        }
        sign * &m[n - 1][n - 1]
    }
}

impl<T: Coefficient> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            writeln!(f, "{}", row.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))?;
        }
        Ok(())
    }
}

/// A rational matrix with half-integral first column, integral elsewhere,
/// and determinant `±1/2`. Its inverse is integral with an even first row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfIntegralMatrix {
    inner: RationalMatrix,
    twice: IntMatrix,
    inverse: IntMatrix,
}

impl HalfIntegralMatrix {
    pub fn new(inner: RationalMatrix) -> Result<Self> {
        let two = BigRational::from_integer(2.into());
        for (i, row) in inner.rows().enumerate() {
            for (j, c) in row.iter().enumerate() {
                let ok = if j == 0 { (c * &two).is_integer() } else { c.is_integer() };
                if !ok {
                    return Err(Error::NotHalfIntegral(format!("entry ({}, {}) = {c}", i + 1, j + 1)));
                }
            }
        }
        let det = inner.determinant();
        if det.abs() != BigRational::new(1.into(), 2.into()) {
            return Err(Error::NotHalfIntegral(format!("determinant {det}, expected ±1/2")));
        }
        let twice = inner.scale(&two).to_integral().expect("checked entries");
        let inverse = inner
            .inverse()
            .and_then(|inv| inv.to_integral())
            .expect("determinant ±1/2 with half-integral first column has integral inverse");
        Ok(HalfIntegralMatrix { inner, twice, inverse })
    }

    pub fn from_ratios(rows: &[&[(i64, i64)]]) -> Result<Self> {
        HalfIntegralMatrix::new(RationalMatrix::from_ratios(rows)?)
    }

    pub fn dim(&self) -> usize {
        self.inner.dim()
    }

    pub fn as_rational(&self) -> &RationalMatrix {
        &self.inner
    }

    /// `A^{-1}`, integral.
    pub fn inverse(&self) -> &IntMatrix {
        &self.inverse
    }

    /// `A v` for an integral `v` with even first entry; the result is
    /// integral.
    pub fn apply_even(&self, v: &[BigInt]) -> Vec<BigInt> {
        debug_assert!(v[0].is_even(), "first entry must be even");
        self.twice
            .mul_vec(v)
            .into_iter()
            .map(|c| {
                let (q, r) = c.div_rem(&BigInt::from(2));
                debug_assert!(r.is_zero());
                q
            })
            .collect()
    }

    pub fn char_poly(&self) -> RationalPolynomial {
        self.inner.char_poly()
    }

    pub fn chi_star(&self) -> IntPolynomial {
        chi_star(&self.char_poly()).expect("nonzero constant term")
    }
}

impl fmt::Display for HalfIntegralMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.inner.fmt(f)
    }
}

pub fn char_poly(m: &RationalMatrix) -> RationalPolynomial {
    m.char_poly()
}

/// Checks that `chi` is monic of the form `x^m + g(x)/2` with `g` integral of
/// constant term `±1`.
pub fn validate_chi(chi: &RationalPolynomial) -> Result<()> {
    let Some(m) = chi.degree().filter(|&m| m >= 1) else {
        return Err(Error::InvalidChi("degree must be at least 1".into()));
    };
    if !chi.is_monic() {
        return Err(Error::InvalidChi(format!("{chi} is not monic")));
    }
    let two = BigRational::from_integer(2.into());
    if let Some(c) = chi.coeffs()[..m].iter().find(|c| !(*c * &two).is_integer()) {
        return Err(Error::InvalidChi(format!("coefficient {c} is not a half-integer")));
    }
    if chi.constant_term().abs() != BigRational::new(1.into(), 2.into()) {
        return Err(Error::InvalidChi(format!("constant term {} is not ±1/2", chi.constant_term())));
    }
    Ok(())
}

/// The rational canonical form with `chi`'s coefficients in the first
/// column: first column `(-c_{m-1}, ..., -c_0)`, ones on the superdiagonal.
pub fn companion_from_chi(chi: &RationalPolynomial) -> Result<HalfIntegralMatrix> {
    validate_chi(chi)?;
    let m = chi.degree().expect("validated");
    let mut a = RationalMatrix::zero(m);
    for i in 0..m {
        a.set(i, 0, -chi.coeff(m - 1 - i));
        if i + 1 < m {
            a.set(i, i + 1, BigRational::one());
        }
    }
    HalfIntegralMatrix::new(a)
}

/// `x^m chi(1/x) / c_0`: the characteristic polynomial of `A^{-1}`.
pub fn chi_star(chi: &RationalPolynomial) -> Result<IntPolynomial> {
    let c0 = chi.constant_term();
    if c0.is_zero() {
        return Err(Error::InvalidChi("zero constant term".into()));
    }
    let m = chi.degree().expect("nonzero");
    let coeffs: Vec<BigRational> = (0..=m).map(|i| chi.coeff(m - i) / c0.clone()).collect();
    Polynomial::new(coeffs)
        .to_integral()
        .ok_or_else(|| Error::InvalidChi(format!("reciprocal of {chi} is not integral")))
}
