//! Fixtures and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use abelian_automata::complete::IntVector;
use abelian_automata::exactalg::{HalfIntegralMatrix, IntPolynomial, RationalMatrix};
use abelian_automata::mealy::{parse_automaton, Bit, MealyAutomaton, StateId, Transition, Word};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

pub const A32: &str = include_str!("../../fixtures/a32.aut");
pub const XYZ: &str = include_str!("../../fixtures/xyz.aut");
pub const LAMPLIGHTER: &str = include_str!("../../fixtures/lamplighter.aut");
pub const IDENTITY: &str = include_str!("../../fixtures/identity.aut");

pub fn fixture_path(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

pub fn a32() -> MealyAutomaton {
    parse_automaton(A32).unwrap()
}

/// `[[-1, 1], [-1/2, 0]]`, characteristic polynomial `x^2 + x + 1/2`.
pub fn matrix_a() -> HalfIntegralMatrix {
    HalfIntegralMatrix::from_ratios(&[&[(-1, 1), (1, 1)], &[(-1, 2), (0, 1)]]).unwrap()
}

pub fn v(entries: &[i64]) -> IntVector {
    IntVector::from_i64s(entries)
}

pub fn ip(coeffs: &[i64]) -> IntPolynomial {
    IntPolynomial::from_i64s(coeffs)
}

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn word(bits: &[u8]) -> Word {
    bits.iter().map(|&b| Bit::from_u8(b).unwrap()).collect()
}

pub fn words_up_to(maxlen: usize) -> impl Iterator<Item = Word> {
    (0..=maxlen).flat_map(Word::all_of_length)
}

/// Decodes `y = s(x)` letter by letter; needs an invertible machine.
pub fn inverse_transduce(aut: &MealyAutomaton, mut s: StateId, y: &Word) -> Word {
    let mut x = Word::empty();
    for &out in y.bits() {
        let bit = if aut.output(s, Bit::Zero) == out { Bit::Zero } else { Bit::One };
        x.push(bit);
        s = aut.residual(s, bit);
    }
    x
}

/// Evaluates `sum c_s s` by composing state functions, which is valid
/// because the generated group is abelian.
pub fn compose_eval(aut: &MealyAutomaton, coeffs: &[(StateId, i64)], w: &Word) -> Word {
    let mut out = w.clone();
    for &(s, c) in coeffs {
        for _ in 0..c.unsigned_abs() {
            out = if c > 0 { aut.transduce(s, &out) } else { inverse_transduce(aut, s, &out) };
        }
    }
    out
}

/// Leibniz expansion; exponential, for small matrices only.
pub fn leibniz_det(m: &RationalMatrix) -> BigRational {
    let n = m.dim();
    let mut total = BigRational::zero();
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |p| {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        let mut term = BigRational::one();
        for (i, &j) in p.iter().enumerate() {
            term *= m.get(i, j);
        }
        if inversions % 2 == 1 {
            term = -term;
        }
        total += term;
    });
    total
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

/// `det(tI - M)` by Leibniz.
pub fn char_poly_at(m: &RationalMatrix, t: &BigRational) -> BigRational {
    let n = m.dim();
    let rows: Vec<Vec<BigRational>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { t - m.get(i, j) } else { -m.get(i, j) }).collect()).collect();
    leibniz_det(&RationalMatrix::from_rows(rows).unwrap())
}

/// Mutual reachability by transitive closure.
pub fn naive_sccs(aut: &MealyAutomaton) -> BTreeSet<Vec<StateId>> {
    let n = aut.len();
    let mut reach = vec![vec![false; n]; n];
    for s in 0..n {
        reach[s][s] = true;
        for b in Bit::BOTH {
            reach[s][aut.residual(s, b)] = true;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if reach[i][k] && reach[k][j] {
                    reach[i][j] = true;
                }
            }
        }
    }
    (0..n).map(|i| (0..n).filter(|&j| reach[i][j] && reach[j][i]).collect()).collect()
}

/// Moore partition refinement; returns the number of function classes.
pub fn moore_classes(aut: &MealyAutomaton) -> Vec<usize> {
    let n = aut.len();
    let mut class: Vec<usize> = (0..n).map(|s| aut.output(s, Bit::Zero).as_u8() as usize).collect();
    loop {
        let sigs: Vec<(usize, usize, usize)> =
            (0..n).map(|s| (class[s], class[aut.residual(s, Bit::Zero)], class[aut.residual(s, Bit::One)])).collect();
        let distinct: BTreeSet<_> = sigs.iter().copied().collect();
        let order: Vec<_> = distinct.into_iter().collect();
        let next: Vec<usize> = sigs.iter().map(|sig| order.binary_search(sig).unwrap()).collect();
        if next.iter().collect::<BTreeSet<_>>().len() == class.iter().collect::<BTreeSet<_>>().len() {
            return next;
        }
        class = next;
    }
}

/// Random complete machine; invertible when `invertible`.
pub fn random_automaton(invertible: bool) -> impl Strategy<Value = MealyAutomaton> {
    (1usize..=8).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 0..n, any::<bool>(), any::<bool>()), n).prop_map(move |rows| {
            let labels: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
            let table = rows
                .into_iter()
                .map(|(d0, d1, o0, o1)| {
                    let o0 = Bit::from_u8(o0 as u8).unwrap();
                    let o1 = if invertible { o0.flip() } else { Bit::from_u8(o1 as u8).unwrap() };
                    [Transition { output: o0, target: d0 }, Transition { output: o1, target: d1 }]
                })
                .collect();
            MealyAutomaton::from_table("random", labels, table).unwrap()
        })
    })
}

pub fn bits(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(any::<bool>(), 0..=max)
        .prop_map(|v| v.into_iter().map(|b| Bit::from_u8(b as u8).unwrap()).collect())
}

pub fn small_poly(len: usize, k: i64) -> impl Strategy<Value = IntPolynomial> {
    prop::collection::vec(-k..=k, 0..=len).prop_map(|c| IntPolynomial::from_i64s(&c))
}

/// Degree in `1..=degree`, nonzero leading coefficient.
pub fn nonconstant_poly(degree: usize, k: i64) -> impl Strategy<Value = IntPolynomial> {
    (prop::collection::vec(-k..=k, 1..=degree), (1..=k), any::<bool>()).prop_map(|(mut c, lead, neg)| {
        c.push(if neg { -lead } else { lead });
        IntPolynomial::from_i64s(&c)
    })
}

pub fn odd_poly(len: usize, k: i64) -> impl Strategy<Value = IntPolynomial> {
    (prop::collection::vec(-k..=k, 0..len), (-k..=k).prop_map(|c| 2 * c + 1)).prop_map(|(rest, c0)| {
        let mut all = vec![c0];
        all.extend(rest);
        IntPolynomial::from_i64s(&all)
    })
}

pub fn vec2(k: i64) -> impl Strategy<Value = IntVector> {
    (-k..=k, -k..=k).prop_map(|(a, b)| v(&[a, b]))
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}
