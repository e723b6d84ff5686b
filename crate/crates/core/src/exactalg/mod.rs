//! Exact arithmetic: polynomials, matrices, the contraction test, and the
//! quotient ring `Z[x]/chi*`.

mod format;
mod irreducible;
mod matrix;
mod poly;
mod quotient;
mod schur;

pub use format::{parse_matrix, serialize_matrix};
pub use irreducible::{find_factor, int_irreducibility, irreducibility, Irreducibility, MAX_IRREDUCIBILITY_DEGREE};
pub use matrix::{
    char_poly, chi_star, companion_from_chi, validate_chi, HalfIntegralMatrix, IntMatrix, Matrix, RationalMatrix,
};
pub(crate) use poly::is_odd;
pub use poly::{Coefficient, IntPolynomial, Polynomial, RationalPolynomial};
pub use quotient::{is_unit_mod, mul_mod, multiplication_matrix, reduce, resultant, try_divide_mod};
pub use schur::is_contracting;
