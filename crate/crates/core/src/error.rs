use thiserror::Error;

use crate::group::Verdict;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("missing transition for state `{state}` on input {bit}")]
    MissingTransition { state: String, bit: u8 },

    #[error("duplicate transition for state `{state}` on input {bit}")]
    DuplicateTransition { state: String, bit: u8 },

    #[error("unknown state `{0}`")]
    UnknownState(String),

    #[error("invalid state label `{0}`")]
    InvalidLabel(String),

    #[error("automaton is not invertible: state `{0}` does not permute {{0,1}}")]
    NotInvertible(String),

    #[error("automaton has no odd state, its group is trivial")]
    NoOddState,

    #[error("automaton is not abelian: state `{state}`: {reason}")]
    NotAbelian { state: String, reason: String },

    #[error("automaton is not an abelian free candidate (verdict {0:?})")]
    NotAbelianFree(Verdict),

    #[error("closure exceeded the bound of {0} elements")]
    BoundExceeded(usize),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("not a half-integral matrix: {0}")]
    NotHalfIntegral(String),

    #[error("invalid characteristic polynomial: {0}")]
    InvalidChi(String),

    #[error("residuation vector must be odd")]
    EvenResiduationVector,

    #[error("polynomial is zero modulo the modulus")]
    ZeroDivisor,

    #[error("multiplication by the divisor is singular modulo a reducible modulus")]
    SingularMultiplication,

    #[error("{0} does not divide {1} in Z[x]/chi*")]
    NotDivisible(String, String),

    #[error("vector is not in the integral span of the cyclic basis")]
    SingularBasis,

    #[error("no usable cycle through `{0}`: every candidate cycle gave a singular system")]
    NoUsableCycle(String),

    #[error("location failed, the matrix is wrong for this automaton: {0}")]
    WrongMatrix(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
