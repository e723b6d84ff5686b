//! Locating an abelian automaton inside a complete automaton.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::analysis::{identity_states, scc_decompose};
use crate::error::{Error, Result};
use crate::exactalg::{HalfIntegralMatrix, IntPolynomial, RationalMatrix};
use crate::group::require_abelian_free;
use crate::mealy::{Bit, MealyAutomaton, StateId, Word};

use super::action::vector_to_poly;
use super::config::CompleteConfig;
use super::vector::IntVector;

/// Where each state of an automaton sits in the complete automaton of
/// `(A, e)`, with `e = p · ē₁`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocationMap {
    pub p: IntPolynomial,
    pub e: IntVector,
    pub assignment: BTreeMap<String, IntVector>,
    /// Set when some non-identity states lie outside the located component.
    pub partial: bool,
}

impl LocationMap {
    pub fn get(&self, label: &str) -> Option<&IntVector> {
        self.assignment.get(label)
    }

    pub fn config(&self, a: &HalfIntegralMatrix) -> Result<CompleteConfig> {
        CompleteConfig::new(a.clone(), self.e.clone())
    }
}

impl fmt::Display for LocationMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p: {}", self.p)?;
        writeln!(f, "e: {}", self.e)?;
        if self.partial {
            writeln!(f, "partial: true")?;
        }
        for (label, v) in &self.assignment {
            writeln!(f, "state {label} -> {v}")?;
        }
        Ok(())
    }
}

impl FromStr for LocationMap {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut p = None;
        let mut e = None;
        let mut partial = false;
        let mut assignment = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let syntax = |message: String| Error::Syntax { line, message };
            if let Some(rest) = content.strip_prefix("p:") {
                p = Some(rest.trim().parse::<IntPolynomial>().map_err(|err| syntax(err.to_string()))?);
            } else if let Some(rest) = content.strip_prefix("e:") {
                e = Some(rest.trim().parse::<IntVector>().map_err(|err| syntax(err.to_string()))?);
            } else if let Some(rest) = content.strip_prefix("partial:") {
                partial = match rest.trim() {
                    "true" => true,
                    "false" => false,
                    other => return Err(syntax(format!("expected true or false, found `{other}`"))),
                };
            } else if let Some(rest) = content.strip_prefix("state ") {
                let (label, vector) =
                    rest.split_once("->").ok_or_else(|| syntax("expected `state <label> -> <vector>`".into()))?;
                let v = vector.trim().parse::<IntVector>().map_err(|err| syntax(err.to_string()))?;
                if assignment.insert(label.trim().to_string(), v).is_some() {
                    return Err(syntax(format!("state `{}` assigned twice", label.trim())));
                }
            } else {
                return Err(syntax(format!("unrecognized line `{content}`")));
            }
        }
        let missing = |what: &str| Error::Syntax {
            line: text.lines().count().max(1),
            message: format!("missing `{what}:` line"),
        };
        let p = p.ok_or_else(|| missing("p"))?;
        let e = e.ok_or_else(|| missing("e"))?;
        Ok(LocationMap { p, e, assignment, partial })
    }
}

/// Locates `aut` at `ē₁` from its lexicographically least odd state; when
/// the non-identity states are not strongly connected, the anchor is taken
/// in the terminal component with the least label.
pub fn locate(aut: &MealyAutomaton, a: &HalfIntegralMatrix, bound: usize) -> Result<LocationMap> {
    require_abelian_free(aut, bound)?;
    let anchor = default_anchor(aut)?;
    locate_from(aut, a, anchor, bound)
}

/// Like [`locate`], placing the odd state `anchor` at `ē₁`.
pub fn locate_at(aut: &MealyAutomaton, a: &HalfIntegralMatrix, anchor: &str, bound: usize) -> Result<LocationMap> {
    require_abelian_free(aut, bound)?;
    let anchor = aut.state(anchor)?;
    if !aut.parity(anchor).is_odd() {
        return Err(Error::InvalidArgument(format!("anchor `{}` must be an odd state", aut.label(anchor))));
    }
    locate_from(aut, a, anchor, bound)
}

fn default_anchor(aut: &MealyAutomaton) -> Result<StateId> {
    let identity = identity_states(aut);
    let scc = scc_decompose(aut);
    let component_of = scc.component_index();
    let terminal = scc.components.iter().enumerate().find(|(c, states)| {
        !identity[states[0]]
            && states.iter().all(|&s| {
                Bit::BOTH.iter().all(|&b| {
                    let t = aut.residual(s, b);
                    component_of[t] == *c || identity[t]
                })
            })
    });
    let (_, states) = terminal.ok_or(Error::NoOddState)?;
    let all_nonidentity_connected = aut.states().all(|s| identity[s] || states.contains(&s));
    let pool: Vec<StateId> = if all_nonidentity_connected { aut.states().collect() } else { states.clone() };
    pool.into_iter().filter(|&s| aut.parity(s).is_odd()).min().ok_or(Error::NoOddState)
}

fn locate_from(aut: &MealyAutomaton, a: &HalfIntegralMatrix, anchor: StateId, bound: usize) -> Result<LocationMap> {
    let m = a.dim();
    let x = a.inverse();
    let e1 = IntVector::e1(m);
    for cycle in Cycles::new(aut, anchor, bound) {
        // Along the cycle v_j = A(v_{j-1} + s_j e), so with X = A^{-1}:
        // (X^L - I) v_f = sum_j s_j X^{j-1} e.
        let mut p2 = vec![BigInt::from(0); cycle.len()];
        let mut s = anchor;
        for (j, &bit) in cycle.bits().iter().enumerate() {
            if aut.parity(s).is_odd() {
                p2[j] = BigInt::from(if bit == Bit::Zero { -1 } else { 1 });
            }
            s = aut.residual(s, bit);
        }
        let p2 = IntPolynomial::new(p2);
        let p1 = &IntPolynomial::monomial(BigInt::from(1), cycle.len()) - &IntPolynomial::one();
        let lhs = RationalMatrix::from_int(&x.eval_poly(&p2));
        let rhs: Vec<BigRational> =
            x.eval_poly(&p1).mul_vec(e1.entries()).into_iter().map(BigRational::from_integer).collect();
        let Some(solution) = lhs.solve(&rhs) else {
            continue;
        };
        let entries = solution
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<BigInt>>>()
            .ok_or_else(|| Error::WrongMatrix(format!("cycle {cycle} gives a non-integral residuation vector")))?;
        let e = IntVector::new(entries).expect("nonempty");
        if !e.is_odd() {
            return Err(Error::WrongMatrix(format!("cycle {cycle} gives the even residuation vector {e}")));
        }
        let cfg = CompleteConfig::new(a.clone(), e.clone())?;
        let (assignment, partial) = propagate(aut, &cfg, anchor)?;
        let p = vector_to_poly(a, &e)?;
        return Ok(LocationMap { p, e, assignment, partial });
    }
    Err(Error::NoUsableCycle(aut.label(anchor).to_string()))
}

fn propagate(
    aut: &MealyAutomaton,
    cfg: &CompleteConfig,
    anchor: StateId,
) -> Result<(BTreeMap<String, IntVector>, bool)> {
    let mut vectors: Vec<Option<IntVector>> = vec![None; aut.len()];
    vectors[anchor] = Some(IntVector::e1(cfg.dim()));
    let mut queue = VecDeque::from([anchor]);
    while let Some(s) = queue.pop_front() {
        let v = vectors[s].clone().expect("assigned before queued");
        for bit in Bit::BOTH {
            let (next, out) = cfg.step(&v, bit);
            let (t, expected) = aut.step(s, bit);
            if out != expected {
                return Err(Error::WrongMatrix(format!(
                    "state `{}` at {v} outputs {out} on {bit}, the automaton outputs {expected}",
                    aut.label(s)
                )));
            }
            match &vectors[t] {
                Some(existing) if existing != &next => {
                    return Err(Error::WrongMatrix(format!(
                        "state `{}` is reached at both {existing} and {next}",
                        aut.label(t)
                    )));
                }
                Some(_) => {}
                None => {
                    vectors[t] = Some(next);
                    queue.push_back(t);
                }
            }
        }
    }
    let identity = identity_states(aut);
    let mut partial = false;
    let mut assignment = BTreeMap::new();
    for s in aut.states() {
        match vectors[s].take() {
            Some(v) => {
                assignment.insert(aut.label(s).to_string(), v);
            }
            None if identity[s] => {
                assignment.insert(aut.label(s).to_string(), IntVector::zero(cfg.dim()));
            }
            None => partial = true,
        }
    }
    Ok((assignment, partial))
}

/// Nontrivial cycles through a state in BFS order: shortest first, then
/// lexicographically least. Stops after `bound` path extensions.
struct Cycles<'a> {
    aut: &'a MealyAutomaton,
    anchor: StateId,
    queue: VecDeque<(StateId, Word)>,
    ready: VecDeque<Word>,
    budget: usize,
}

impl<'a> Cycles<'a> {
    fn new(aut: &'a MealyAutomaton, anchor: StateId, bound: usize) -> Self {
        Cycles { aut, anchor, queue: VecDeque::from([(anchor, Word::empty())]), ready: VecDeque::new(), budget: bound }
    }
}

impl Iterator for Cycles<'_> {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        // All cycles of length L+1 surface while level L is expanded.
        while self.ready.is_empty() {
            let (s, path) = self.queue.pop_front()?;
            for bit in Bit::BOTH {
                if self.budget == 0 {
                    self.queue.clear();
                    break;
                }
                self.budget -= 1;
                let mut next = path.clone();
                next.push(bit);
                let t = self.aut.residual(s, bit);
                if t == self.anchor {
                    self.ready.push_back(next);
                } else {
                    self.queue.push_back((t, next));
                }
            }
        }
        self.ready.pop_front()
    }
}

/// A word on which a state and its assigned vector disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub state: String,
    pub input: Word,
    pub expected: Word,
    pub found: Word,
}

/// The shortest input on which some assigned state and its vector differ,
/// searching all words of length at most `maxlen`.
pub fn find_counterexample(
    aut: &MealyAutomaton,
    cfg: &CompleteConfig,
    map: &LocationMap,
    maxlen: usize,
) -> Result<Option<Counterexample>> {
    for (label, v) in &map.assignment {
        let s = aut.state(label)?;
        v.check_dim(cfg.dim())?;
        // BFS over (state, vector) pairs: a pair already met at a smaller
        // depth has been explored with more remaining length.
        let mut seen = HashSet::new();
        seen.insert((s, v.clone()));
        let mut queue = VecDeque::from([(s, v.clone(), Word::empty())]);
        while let Some((q, u, path)) = queue.pop_front() {
            if path.len() >= maxlen {
                continue;
            }
            for bit in Bit::BOTH {
                let (t, expected) = aut.step(q, bit);
                let (next, found) = cfg.step(&u, bit);
                let mut input = path.clone();
                input.push(bit);
                if expected != found {
                    return Ok(Some(Counterexample {
                        state: label.clone(),
                        expected: aut.transduce(s, &input),
                        found: cfg.transduce_vector(v, &input)?,
                        input,
                    }));
                }
                if seen.insert((t, next.clone())) {
                    queue.push_back((t, next, input));
                }
            }
        }
    }
    Ok(None)
}

/// Whether every assigned state computes the same function as its vector on
/// all words of length at most `maxlen`.
pub fn verify_location(aut: &MealyAutomaton, cfg: &CompleteConfig, map: &LocationMap, maxlen: usize) -> bool {
    matches!(find_counterexample(aut, cfg, map, maxlen), Ok(None))
}
