//! Fractional extensions `p^{-1} G` and their direct limit, represented by
//! pairs `v / p` compared by cross-multiplication.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactalg::{mul_mod, try_divide_mod, HalfIntegralMatrix, IntPolynomial};
use crate::mealy::Bit;

use super::action::{act, poly_to_vector};
use super::config::CompleteConfig;
use super::vector::IntVector;

fn require_odd(p: &IntPolynomial) -> Result<()> {
    if p.has_odd_constant_term() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("polynomial {p} must have an odd constant term")))
    }
}

/// The image of `v` under the injection `p^{-1} G -> q^{-1} G`, which is
/// multiplication by `r = q / p`; fails unless `p` divides `q`.
pub fn embed_scale(a: &HalfIntegralMatrix, p: &IntPolynomial, q: &IntPolynomial, v: &IntVector) -> Result<IntVector> {
    require_odd(p)?;
    require_odd(q)?;
    let r = try_divide_mod(q, p, &a.chi_star())?;
    act(a, &r, v)
}

/// `v / p` with `p` of odd constant term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GTildeElement {
    v: IntVector,
    p: IntPolynomial,
}

impl GTildeElement {
    pub fn new(v: IntVector, p: IntPolynomial) -> Result<Self> {
        require_odd(&p)?;
        Ok(GTildeElement { v, p })
    }

    pub fn numerator(&self) -> &IntVector {
        &self.v
    }

    pub fn denominator(&self) -> &IntPolynomial {
        &self.p
    }
}

impl fmt::Display for GTildeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} / ({})", self.v, self.p)
    }
}

/// `v/p ~ w/q` iff `q·v = p·w`.
pub fn gtilde_eq(x: &GTildeElement, y: &GTildeElement, a: &HalfIntegralMatrix) -> Result<bool> {
    Ok(act(a, &y.p, &x.v)? == act(a, &x.p, &y.v)?)
}

/// `(q·v + p·w) / pq`, with `pq` reduced modulo `chi*`.
pub fn gtilde_add(x: &GTildeElement, y: &GTildeElement, a: &HalfIntegralMatrix) -> Result<GTildeElement> {
    let v = &act(a, &y.p, &x.v)? + &act(a, &x.p, &y.v)?;
    GTildeElement::new(v, mul_mod(&x.p, &y.p, &a.chi_star()))
}

/// Residual and output of `v / p`, computed in the complete automaton of
/// `(A, p·ē₁)`.
pub fn gtilde_step(x: &GTildeElement, a: &HalfIntegralMatrix, bit: Bit) -> Result<(GTildeElement, Bit)> {
    let cfg = CompleteConfig::new(a.clone(), poly_to_vector(a, &x.p))?;
    let (v, out) = cfg.residual_vector(&x.v, bit)?;
    Ok((GTildeElement { v, p: x.p.clone() }, out))
}

pub fn gtilde_residual(x: &GTildeElement, a: &HalfIntegralMatrix, bit: Bit) -> Result<GTildeElement> {
    gtilde_step(x, a, bit).map(|(r, _)| r)
}
