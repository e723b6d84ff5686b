//! Exact Schur–Cohn test for roots strictly inside the unit disk.

use num_rational::BigRational;
use num_traits::Signed;

use super::poly::RationalPolynomial;

/// True iff every complex root of `p` has modulus `< 1`.
///
/// Uses the reduction `q = (a_n p - a_0 p_rev) / x`: `p` is stable iff
/// `|a_0| < |a_n|` and `q` is stable. Constants are stable; zero is not.
pub fn is_contracting(p: &RationalPolynomial) -> bool {
    let mut p = p.clone();
    loop {
        let Some(n) = p.degree() else {
            return false;
        };
        if n == 0 {
            return true;
        }
        let a0 = p.constant_term();
        let an = p.leading();
        if a0.abs() >= an.abs() {
            return false;
        }
        let combo = &p.scale(&an) - &p.reversed_padded(n).scale(&a0);
        // constant term cancels: an*a0 - a0*an
        p = RationalPolynomial::new(combo.coeffs().iter().skip(1).cloned().collect::<Vec<BigRational>>());
    }
}

impl RationalPolynomial {
    /// `x^n p(1/x)` for a given `n >= deg p`.
    fn reversed_padded(&self, n: usize) -> RationalPolynomial {
        RationalPolynomial::new((0..=n).map(|i| self.coeff(n - i)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rp(c: &[(i64, i64)]) -> RationalPolynomial {
        RationalPolynomial::from_ratios(c)
    }

    #[test]
    fn known_cases() {
        assert!(is_contracting(&rp(&[(1, 2), (1, 1), (1, 1)])));
        assert!(is_contracting(&rp(&[(-1, 2), (1, 1)])));
        assert!(is_contracting(&rp(&[(1, 1)])));
        assert!(!is_contracting(&rp(&[(-1, 1), (1, 1)])));
        assert!(!is_contracting(&rp(&[(1, 2), (-3, 2), (1, 1)])));
        assert!(is_contracting(&rp(&[(0, 1), (0, 1), (1, 1)])));
        assert!(!is_contracting(&RationalPolynomial::zero()));
    }

    #[test]
    fn root_at_zero_is_inside() {
        // x (x + 1/2)
        assert!(is_contracting(&rp(&[(0, 1), (1, 2), (1, 1)])));
        // x (x - 2)
        assert!(!is_contracting(&rp(&[(0, 1), (-2, 1), (1, 1)])));
    }
}
