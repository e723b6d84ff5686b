//! The MATRIX v1 text format.
//!
//! ```text
//! # either an explicit matrix
//! dim 2
//! -1 1
//! -1/2 0
//! # or a characteristic polynomial, constant first, monic
//! chi 1/2 1 1
//! ```

use num_rational::BigRational;

use super::matrix::{companion_from_chi, HalfIntegralMatrix, RationalMatrix};
use super::poly::RationalPolynomial;
use crate::error::{Error, Result};

pub fn parse_matrix(text: &str) -> Result<HalfIntegralMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let Some((line, header)) = lines.next() else {
        return Err(Error::Syntax { line: 1, message: "empty matrix file".into() });
    };
    let mut words = header.split_whitespace();
    match words.next() {
        Some("dim") => {
            let rest: Vec<&str> = words.collect();
            let [dim] = rest[..] else {
                return Err(Error::Syntax { line, message: "expected `dim <m>`".into() });
            };
            let dim: usize = dim
                .parse()
                .ok()
                .filter(|&d| d > 0)
                .ok_or_else(|| Error::Syntax { line, message: format!("bad dimension `{dim}`") })?;
            let mut rows = Vec::with_capacity(dim);
            let mut last = line;
            for (line, row) in lines.by_ref().take(dim) {
                last = line;
                let entries = row
                    .split_whitespace()
                    .map(|t| {
                        parse_rational(t).ok_or_else(|| Error::Syntax { line, message: format!("bad entry `{t}`") })
                    })
                    .collect::<Result<Vec<_>>>()?;
                if entries.len() != dim {
                    return Err(Error::Syntax {
                        line,
                        message: format!("expected {dim} entries, found {}", entries.len()),
                    });
                }
                rows.push(entries);
            }
            if rows.len() != dim {
                return Err(Error::Syntax {
                    line: last + 1,
                    message: format!("expected {dim} rows, found {}", rows.len()),
                });
            }
            if let Some((line, _)) = lines.next() {
                return Err(Error::Syntax { line, message: "trailing content after matrix".into() });
            }
            HalfIntegralMatrix::new(RationalMatrix::from_rows(rows)?)
        }
        Some("chi") => {
            let coeffs = words
                .map(|t| {
                    parse_rational(t).ok_or_else(|| Error::Syntax { line, message: format!("bad coefficient `{t}`") })
                })
                .collect::<Result<Vec<_>>>()?;
            if let Some((line, _)) = lines.next() {
                return Err(Error::Syntax { line, message: "trailing content after chi".into() });
            }
            companion_from_chi(&RationalPolynomial::new(coeffs))
        }
        _ => Err(Error::Syntax { line, message: "expected `dim <m>` or `chi <c0> ... 1`".into() }),
    }
}

fn parse_rational(t: &str) -> Option<BigRational> {
    let r: BigRational = t.parse().ok()?;
    Some(r)
}

/// Always the explicit `dim` form.
pub fn serialize_matrix(a: &HalfIntegralMatrix) -> String {
    format!("dim {}\n{}", a.dim(), a.as_rational())
}
