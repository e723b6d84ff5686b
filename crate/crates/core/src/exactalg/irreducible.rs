//! Irreducibility over the rationals for small degrees, by bounded search
//! for integral factors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::poly::{IntPolynomial, RationalPolynomial};

/// Largest degree the factor search handles.
pub const MAX_IRREDUCIBILITY_DEGREE: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "factor")]
pub enum Irreducibility {
    Irreducible,
    /// A nontrivial factor of the cleared polynomial, as a constant-first list.
    Reducible(Vec<String>),
    Unsupported,
}

impl Irreducibility {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Irreducibility::Irreducible)
    }
}

/// Irreducibility of a rational polynomial of positive degree.
pub fn irreducibility(p: &RationalPolynomial) -> Irreducibility {
    let lcm = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let cleared = p.map(|c| (c * num_rational::BigRational::from_integer(lcm.clone())).to_integer());
    int_irreducibility(&cleared)
}

pub fn int_irreducibility(p: &IntPolynomial) -> Irreducibility {
    let Some(n) = p.degree().filter(|&n| n >= 1) else {
        return Irreducibility::Unsupported;
    };
    if n > MAX_IRREDUCIBILITY_DEGREE {
        return Irreducibility::Unsupported;
    }
    let content = p.coeffs().iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let f = p.map(|c| c / &content);
    match find_factor(&f) {
        Some(g) => Irreducibility::Reducible(g.coeffs().iter().map(ToString::to_string).collect()),
        None => Irreducibility::Irreducible,
    }
}

/// A factor of degree `1..=deg/2` of a primitive polynomial, if any.
pub fn find_factor(f: &IntPolynomial) -> Option<IntPolynomial> {
    let n = f.degree()?;
    if f.constant_term().is_zero() {
        return (n > 1).then(IntPolynomial::x);
    }
    let norm_sq = f.coeffs().iter().fold(BigInt::zero(), |acc, c| acc + c * c);
    let norm = ceil_sqrt(&norm_sq);
    let leads = positive_divisors(&f.leading());
    let consts = signed_divisors(&f.constant_term());
    for k in 1..=n / 2 {
        for lead in &leads {
            for c0 in &consts {
                let bounds: Vec<BigInt> = (1..k).map(|j| binomial(k, j) * &norm).collect();
                let mut middle: Vec<BigInt> = bounds.iter().map(|b| -b).collect();
                loop {
                    let mut coeffs = vec![c0.clone()];
                    coeffs.extend(middle.iter().cloned());
                    coeffs.push(lead.clone());
                    let g = IntPolynomial::new(coeffs);
                    if divides(&g, f) {
                        return Some(g);
                    }
                    if !advance(&mut middle, &bounds) {
                        break;
                    }
                }
            }
        }
    }
    None
}

/// Odometer step over `[-b, b]` per position; false once exhausted.
fn advance(digits: &mut [BigInt], bounds: &[BigInt]) -> bool {
    for (d, b) in digits.iter_mut().zip(bounds) {
        if &*d < b {
            *d += 1;
            return true;
        }
        *d = -b.clone();
    }
    false
}

/// Exact divisibility in `Z[x]`.
fn divides(g: &IntPolynomial, f: &IntPolynomial) -> bool {
    for x in [1i64, -1, 2, -2] {
        let x = BigInt::from(x);
        let gx = g.eval(&x);
        if !gx.is_zero() && !f.eval(&x).is_multiple_of(&gx) {
            return false;
        }
    }
    let dg = g.degree().expect("nonzero");
    let lead = g.leading();
    let mut r = f.coeffs().to_vec();
    while r.len() > dg {
        let top = r.pop().expect("nonempty");
        if top.is_zero() {
            continue;
        }
        let (q, rem) = top.div_rem(&lead);
        if !rem.is_zero() {
            return false;
        }
        let shift = r.len() - dg;
        for (i, c) in g.coeffs()[..dg].iter().enumerate() {
            r[shift + i] -= &q * c;
        }
    }
    r.iter().all(Zero::is_zero)
}

fn ceil_sqrt(n: &BigInt) -> BigInt {
    let s = n.sqrt();
    if &(&s * &s) < n {
        s + 1
    } else {
        s
    }
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let limit = n.to_u64().expect("coefficient too large for factor search");
    (1..=limit).filter(|d| limit.is_multiple_of(*d)).map(BigInt::from).collect()
}

fn signed_divisors(n: &BigInt) -> Vec<BigInt> {
    positive_divisors(n).into_iter().flat_map(|d| [d.clone(), -d]).collect()
}
