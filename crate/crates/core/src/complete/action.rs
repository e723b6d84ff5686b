//! `Z^m` as a module over `Z[x]/chi*`, with `x` acting as `A^{-1}`.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exactalg::{HalfIntegralMatrix, IntPolynomial, RationalMatrix};

use super::vector::IntVector;

/// `p(A^{-1}) v`.
pub fn act(a: &HalfIntegralMatrix, p: &IntPolynomial, v: &IntVector) -> Result<IntVector> {
    v.check_dim(a.dim())?;
    let x = a.inverse();
    let mut acc = IntVector::zero(a.dim());
    for c in p.coeffs().iter().rev() {
        let shifted = IntVector::new(x.mul_vec(acc.entries())).expect("nonempty");
        acc = &shifted + &v.scale(c);
    }
    Ok(acc)
}

/// `p · ē₁`.
pub fn poly_to_vector(a: &HalfIntegralMatrix, p: &IntPolynomial) -> IntVector {
    act(a, p, &IntVector::e1(a.dim())).expect("matching dimension")
}

/// The `p` of degree below `m` with `p · ē₁ = v`.
pub fn vector_to_poly(a: &HalfIntegralMatrix, v: &IntVector) -> Result<IntPolynomial> {
    v.check_dim(a.dim())?;
    let m = a.dim();
    let mut basis = RationalMatrix::zero(m);
    let mut column = IntVector::e1(m);
    for j in 0..m {
        for (i, c) in column.entries().iter().enumerate() {
            basis.set(i, j, BigRational::from_integer(c.clone()));
        }
        column = IntVector::new(a.inverse().mul_vec(column.entries())).expect("nonempty");
    }
    let rhs: Vec<BigRational> = v.entries().iter().map(|c| BigRational::from_integer(c.clone())).collect();
    let coeffs = basis.solve(&rhs).ok_or(Error::SingularBasis)?;
    coeffs
        .iter()
        .map(|c| c.is_integer().then(|| c.to_integer()))
        .collect::<Option<Vec<BigInt>>>()
        .map(IntPolynomial::new)
        .ok_or(Error::SingularBasis)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix_a() -> HalfIntegralMatrix {
        HalfIntegralMatrix::from_ratios(&[&[(-1, 1), (1, 1)], &[(-1, 2), (0, 1)]]).unwrap()
    }

    #[test]
    fn rcf_coordinates_are_coefficients() {
        let a = matrix_a();
        let p = IntPolynomial::from_i64s(&[3, 2]);
        assert_eq!(poly_to_vector(&a, &p), IntVector::from_i64s(&[3, 2]));
        assert_eq!(vector_to_poly(&a, &IntVector::from_i64s(&[3, 2])).unwrap(), p);
        assert_eq!(vector_to_poly(&a, &IntVector::e1(2)).unwrap(), IntPolynomial::one());
        assert_eq!(vector_to_poly(&a, &IntVector::from_i64s(&[0, 1])).unwrap(), IntPolynomial::x());
    }

    #[test]
    fn chi_star_acts_as_zero() {
        let a = matrix_a();
        let chi_star = a.chi_star();
        let v = IntVector::from_i64s(&[5, -3]);
        assert!(act(&a, &chi_star, &v).unwrap().is_zero());
    }

    #[test]
    fn non_cyclic_basis_is_reported() {
        // e1 spans only the first coordinate of this diagonal matrix.
        let a = HalfIntegralMatrix::from_ratios(&[&[(1, 2), (0, 1)], &[(0, 1), (1, 1)]]).unwrap();
        assert_eq!(vector_to_poly(&a, &IntVector::from_i64s(&[0, 1])), Err(Error::SingularBasis));
    }
}
