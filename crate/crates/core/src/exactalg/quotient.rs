//! Arithmetic in `Z[x]/(m)` for a monic integral modulus `m`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::{IntMatrix, Matrix, RationalMatrix};
use super::poly::IntPolynomial;
use crate::error::{Error, Result};

/// The canonical representative, of degree below `deg modulus`.
pub fn reduce(p: &IntPolynomial, modulus: &IntPolynomial) -> IntPolynomial {
    p.rem_monic(modulus)
}

pub fn mul_mod(a: &IntPolynomial, b: &IntPolynomial, modulus: &IntPolynomial) -> IntPolynomial {
    reduce(&(a * b), modulus)
}

/// Matrix of multiplication by `p` in the basis `1, x, ..., x^{m-1}`;
/// column `j` holds `x^j p mod modulus`.
pub fn multiplication_matrix(p: &IntPolynomial, modulus: &IntPolynomial) -> IntMatrix {
    let m = modulus.degree().expect("nonzero modulus");
    let mut out = Matrix::zero(m);
    let mut column = reduce(p, modulus);
    for j in 0..m {
        for i in 0..m {
            out.set(i, j, column.coeff(i));
        }
        column = reduce(&(&column * &IntPolynomial::x()), modulus);
    }
    out
}

/// The `q` with `divisor * q = dividend` in the quotient ring.
pub fn try_divide_mod(
    dividend: &IntPolynomial,
    divisor: &IntPolynomial,
    modulus: &IntPolynomial,
) -> Result<IntPolynomial> {
    let m = modulus.degree().expect("nonzero modulus");
    let divisor = reduce(divisor, modulus);
    if divisor.is_zero() {
        return Err(Error::ZeroDivisor);
    }
    let dividend = reduce(dividend, modulus);
    let mat = RationalMatrix::from_int(&multiplication_matrix(&divisor, modulus));
    let rhs: Vec<BigRational> = (0..m).map(|i| BigRational::from_integer(dividend.coeff(i))).collect();
    let q = mat.solve(&rhs).ok_or(Error::SingularMultiplication)?;
    q.iter()
        .map(|c| c.is_integer().then(|| c.to_integer()))
        .collect::<Option<Vec<BigInt>>>()
        .map(IntPolynomial::new)
        .ok_or_else(|| Error::NotDivisible(divisor.to_string(), dividend.to_string()))
}

/// `Res(f, g)` as the determinant of the Sylvester matrix.
pub fn resultant(f: &IntPolynomial, g: &IntPolynomial) -> BigInt {
    let (Some(m), Some(n)) = (f.degree(), g.degree()) else {
        return BigInt::zero();
    };
    let size = m + n;
    if size == 0 {
        return BigInt::one();
    }
    let mut s = Matrix::zero(size);
    for row in 0..n {
        for k in 0..=m {
            s.set(row, row + k, f.coeff(m - k));
        }
    }
    for row in 0..m {
        for k in 0..=n {
            s.set(n + row, row + k, g.coeff(n - k));
        }
    }
    s.determinant()
}

/// Whether `p` is invertible modulo `modulus`: `|Res(modulus, p)| = 1`.
pub fn is_unit_mod(p: &IntPolynomial, modulus: &IntPolynomial) -> bool {
    resultant(modulus, &reduce(p, modulus)).abs().is_one()
}
