//! Strongly connected components, path polynomials, the witness search for
//! single-component principal machines, and matrix inference by bounded
//! enumeration.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use serde::Serialize;

use crate::complete::{locate, principal_from_matrix, verify_location, LocationMap};
use crate::error::{Error, Result};
use crate::exactalg::{
    companion_from_chi, irreducibility, is_contracting, reduce, HalfIntegralMatrix, IntPolynomial, Irreducibility,
    RationalPolynomial,
};
use crate::group::require_abelian_free;
use crate::mealy::{Bit, MealyAutomaton, StateId};

pub const DEFAULT_WITNESS_DEGREE: usize = 12;
pub const INFER_VERIFY_LENGTH: usize = 10;

/// Components in order of least member; each component sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccDecomposition {
    pub components: Vec<Vec<StateId>>,
    /// Distinct edges `(from, to)` between different components.
    pub edges: Vec<(usize, usize)>,
}

impl SccDecomposition {
    /// Component of each state.
    pub fn component_index(&self) -> Vec<usize> {
        let n = self.components.iter().map(Vec::len).sum();
        let mut index = vec![0; n];
        for (c, states) in self.components.iter().enumerate() {
            for &s in states {
                index[s] = c;
            }
        }
        index
    }

    pub fn labels(&self, aut: &MealyAutomaton) -> Vec<Vec<String>> {
        self.components.iter().map(|c| c.iter().map(|&s| aut.label(s).to_string()).collect()).collect()
    }
}

/// Strongly connected components of the residual digraph.
pub fn scc_decompose(aut: &MealyAutomaton) -> SccDecomposition {
    let mut graph: DiGraph<(), ()> = DiGraph::with_capacity(aut.len(), 2 * aut.len());
    let nodes: Vec<NodeIndex> = aut.states().map(|_| graph.add_node(())).collect();
    for s in aut.states() {
        for b in Bit::BOTH {
            graph.add_edge(nodes[s], nodes[aut.residual(s, b)], ());
        }
    }
    let mut components: Vec<Vec<StateId>> = tarjan_scc(&graph)
        .into_iter()
        .map(|c| {
            let mut states: Vec<StateId> = c.into_iter().map(NodeIndex::index).collect();
            states.sort_unstable();
            states
        })
        .collect();
    components.sort_by_key(|c| c[0]);
    let mut decomposition = SccDecomposition { components, edges: Vec::new() };
    let of = decomposition.component_index();
    let mut edges: Vec<(usize, usize)> =
        aut.states().flat_map(|s| Bit::BOTH.map(|b| (of[s], of[aut.residual(s, b)]))).filter(|(a, b)| a != b).collect();
    edges.sort_unstable();
    edges.dedup();
    decomposition.edges = edges;
    decomposition
}

/// `true` for states from which no odd state is reachable; these compute
/// the identity.
pub fn identity_states(aut: &MealyAutomaton) -> Vec<bool> {
    let mut reverse: Vec<Vec<StateId>> = vec![Vec::new(); aut.len()];
    for s in aut.states() {
        for b in Bit::BOTH {
            reverse[aut.residual(s, b)].push(s);
        }
    }
    let mut identity = vec![true; aut.len()];
    let mut queue: Vec<StateId> = aut.odd_states().collect();
    for &s in &queue {
        identity[s] = false;
    }
    while let Some(s) = queue.pop() {
        for &p in &reverse[s] {
            if identity[p] {
                identity[p] = false;
                queue.push(p);
            }
        }
    }
    identity
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PathLetter {
    Zero,
    One,
    /// `1̄`, written `n`.
    NegOne,
}

/// A word over `{0, 1, n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PathWord(pub Vec<PathLetter>);

impl fmt::Display for PathWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "-");
        }
        for l in &self.0 {
            let c = match l {
                PathLetter::Zero => '0',
                PathLetter::One => '1',
                PathLetter::NegOne => 'n',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for PathWord {
    type Err = Error;

    /// `-` is the empty word.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "-" {
            return Ok(PathWord::default());
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(PathLetter::Zero),
                '1' => Ok(PathLetter::One),
                'n' | 'N' => Ok(PathLetter::NegOne),
                _ => Err(Error::InvalidArgument(format!("path letter `{c}` is not 0, 1 or n"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(PathWord)
    }
}

/// `P_ε = 1`, `P_{w0} = x P_w`, `P_{w1} = x P_w + 1`, `P_{wn} = x P_w - 1`.
pub fn path_polynomial(w: &PathWord) -> IntPolynomial {
    w.0.iter().fold(IntPolynomial::one(), |p, l| {
        let shifted = &p * &IntPolynomial::x();
        let c = match l {
            PathLetter::Zero => 0,
            PathLetter::One => 1,
            PathLetter::NegOne => -1,
        };
        &shifted + &IntPolynomial::from_i64s(&[c])
    })
}

/// The least monic polynomial with non-leading coefficients in `{-1, 0, 1}`
/// that is `-1` modulo `chi_star`, ordered by degree and then
/// lexicographically from the constant term with `-1 < 0 < 1`.
pub fn witness_search(chi_star: &IntPolynomial, max_degree: usize) -> Result<Option<IntPolynomial>> {
    let m = match chi_star.degree() {
        Some(m) if m >= 1 && chi_star.is_monic() => m,
        _ => return Err(Error::InvalidArgument(format!("modulus {chi_star} must be monic of positive degree"))),
    };
    let target: Vec<BigInt> = (0..m).map(|i| if i == 0 { -BigInt::one() } else { BigInt::zero() }).collect();
    // powers[i] = x^i mod chi_star as a coefficient vector
    let mut powers: Vec<Vec<BigInt>> = Vec::with_capacity(max_degree + 1);
    let mut current = IntPolynomial::one();
    for _ in 0..=max_degree {
        let reduced = reduce(&current, chi_star);
        powers.push((0..m).map(|i| reduced.coeff(i)).collect());
        current = &reduced * &IntPolynomial::x();
    }
    for d in 1..=max_degree {
        let mut coeffs = vec![0i8; d];
        let mut partial = powers[d].clone();
        if let Some(found) = dfs(&powers, &target, &mut coeffs, 0, &mut partial) {
            let mut all: Vec<BigInt> = found.iter().map(|&c| BigInt::from(c)).collect();
            all.push(BigInt::one());
            let w = IntPolynomial::new(all);
            debug_assert_eq!(reduce(&w, chi_star), IntPolynomial::from_i64s(&[-1]));
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn dfs(
    powers: &[Vec<BigInt>],
    target: &[BigInt],
    coeffs: &mut [i8],
    i: usize,
    partial: &mut Vec<BigInt>,
) -> Option<Vec<i8>> {
    if i == coeffs.len() {
        return (partial.as_slice() == target).then(|| coeffs.to_vec());
    }
    for c in [-1i8, 0, 1] {
        coeffs[i] = c;
        apply(partial, &powers[i], c);
        let found = dfs(powers, target, coeffs, i + 1, partial);
        apply(partial, &powers[i], -c);
        if found.is_some() {
            return found;
        }
    }
    None
}

fn apply(acc: &mut [BigInt], v: &[BigInt], c: i8) {
    match c {
        1 => acc.iter_mut().zip(v).for_each(|(a, b)| *a += b),
        -1 => acc.iter_mut().zip(v).for_each(|(a, b)| *a -= b),
        _ => {}
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SccReport {
    pub principal_states: usize,
    pub components: Vec<Vec<String>>,
    pub identity_states: Vec<String>,
    pub single_nonidentity_scc: bool,
    /// Constant-first coefficients of the witness, if one was found.
    pub witness: Option<Vec<String>>,
}

/// Builds the principal machine of `A`, decides whether its non-identity
/// states form one component, and searches for an algebraic witness.
pub fn check_scc_instance(a: &HalfIntegralMatrix, bound: usize, witness_degree: usize) -> Result<SccReport> {
    if !is_contracting(&a.char_poly()) {
        return Err(Error::InvalidArgument("the matrix is not contracting, its principal machine is infinite".into()));
    }
    let principal = principal_from_matrix(a, bound)?;
    let scc = scc_decompose(&principal);
    let identity = identity_states(&principal);
    let nonidentity: Vec<&Vec<StateId>> = scc.components.iter().filter(|c| !identity[c[0]]).collect();
    let witness = witness_search(&a.chi_star(), witness_degree)?;
    Ok(SccReport {
        principal_states: principal.len(),
        components: scc.labels(&principal),
        identity_states: principal.states().filter(|&s| identity[s]).map(|s| principal.label(s).to_string()).collect(),
        single_nonidentity_scc: nonidentity.len() == 1,
        witness: witness.map(|w| w.coeffs().iter().map(ToString::to_string).collect()),
    })
}

impl fmt::Display for SccReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "principal_states: {}", self.principal_states)?;
        for c in &self.components {
            writeln!(f, "component: {}", c.join(" "))?;
        }
        writeln!(f, "identity_states: {}", self.identity_states.join(" "))?;
        writeln!(f, "single_nonidentity_scc: {}", self.single_nonidentity_scc)?;
        match &self.witness {
            Some(w) => writeln!(f, "witness: {}", w.join(" ")),
            None => writeln!(f, "witness: none"),
        }
    }
}

/// Candidate characteristic polynomials `x^m + g/2` with `g_0 = ±1` and the
/// other coefficients of `g` in `[-k, k]`, lexicographically from `g_0`.
pub fn chi_candidates(m: usize, k: i64) -> impl Iterator<Item = RationalPolynomial> {
    let mut digits: Vec<i64> = std::iter::once(-1).chain(std::iter::repeat_n(-k, m - 1)).collect();
    let mut done = m == 0;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let half = |g: i64| BigRational::new(g.into(), 2.into());
        let mut coeffs: Vec<BigRational> = digits.iter().map(|&g| half(g)).collect();
        coeffs.push(BigRational::one());
        let chi = RationalPolynomial::new(coeffs);
        // advance, last digit fastest
        done = true;
        for i in (0..m).rev() {
            let (lo, hi, step) = if i == 0 { (-1, 1, 2) } else { (-k, k, 1) };
            if digits[i] + step <= hi {
                digits[i] += step;
                done = false;
                break;
            }
            digits[i] = lo;
        }
        Some(chi)
    })
}

/// Every contracting, irreducible `chi` of degree at most `max_dim` within
/// the coefficient bound whose companion matrix locates `aut` and passes
/// verification, in enumeration order.
pub fn infer_matrix(
    aut: &MealyAutomaton,
    max_dim: usize,
    coeff_bound: i64,
    bound: usize,
) -> Result<Vec<(HalfIntegralMatrix, LocationMap)>> {
    require_abelian_free(aut, bound)?;
    let mut found = Vec::new();
    for m in 1..=max_dim {
        for chi in chi_candidates(m, coeff_bound) {
            if !is_contracting(&chi) || matches!(irreducibility(&chi), Irreducibility::Reducible(_)) {
                continue;
            }
            let a = companion_from_chi(&chi)?;
            let Ok(map) = locate(aut, &a, bound) else { continue };
            let Ok(cfg) = map.config(&a) else { continue };
            if verify_location(aut, &cfg, &map, INFER_VERIFY_LENGTH) {
                found.push((a, map));
            }
        }
    }
    Ok(found)
}
