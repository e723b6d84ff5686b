//! Formal Z-linear combinations of automaton states and their residuation
//! calculus, under the standing assumption that the generated group is
//! abelian.
//!
//! The residuals of a sum are computed from the residuals of its summands:
//!
//! ```text
//! ∂a(f + g) = ∂a f + ∂ā g   if f and g are both odd
//!           = ∂a f + ∂a g   otherwise
//! ∂a(-f)    = -∂ā f
//! ```
//!
//! so every question about the group can be answered from the transition
//! table alone. [`identity_test`] decides whether a combination is the
//! identity by closing it under residuation and looking for an odd element.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mealy::{Bit, MealyAutomaton, Parity, StateId, Transition, Word};

/// Default bound on the number of distinct elements a closure may visit.
pub const DEFAULT_BOUND: usize = 100_000;

/// Depth of the output fingerprint used to bucket candidates before running
/// identity tests during principal-machine construction.
const FINGERPRINT_DEPTH: usize = 5;

/// A formal sum `Σ c_s · s` over the states of an automaton. The empty sum
/// is the identity `I`.
#[derive(Clone)]
pub struct GroupElement<'a> {
    aut: &'a MealyAutomaton,
    coeffs: BTreeMap<StateId, i64>,
}

impl PartialEq for GroupElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.aut, other.aut) && self.coeffs == other.coeffs
    }
}

impl Eq for GroupElement<'_> {}

impl fmt::Debug for GroupElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupElement({self})")
    }
}

/// One summand of the unit-term expansion: a state, possibly negated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnitTerm {
    pub state: StateId,
    pub negated: bool,
}

impl<'a> GroupElement<'a> {
    pub fn identity(aut: &'a MealyAutomaton) -> Self {
        GroupElement { aut, coeffs: BTreeMap::new() }
    }

    pub fn state(aut: &'a MealyAutomaton, s: StateId) -> Self {
        GroupElement::from_coeffs(aut, [(s, 1)])
    }

    pub fn from_coeffs(aut: &'a MealyAutomaton, coeffs: impl IntoIterator<Item = (StateId, i64)>) -> Self {
        let mut e = GroupElement::identity(aut);
        for (s, c) in coeffs {
            e.add_term(s, c);
        }
        e
    }

    /// Builds an element from `(label, coefficient)` pairs.
    pub fn from_labels(aut: &'a MealyAutomaton, terms: &[(&str, i64)]) -> Result<Self> {
        let mut e = GroupElement::identity(aut);
        for &(label, c) in terms {
            e.add_term(aut.state(label)?, c);
        }
        Ok(e)
    }

    fn add_term(&mut self, s: StateId, c: i64) {
        assert!(s < self.aut.len(), "state {s} outside the context automaton");
        let entry = self.coeffs.entry(s).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.coeffs.remove(&s);
        }
    }

    pub fn automaton(&self) -> &'a MealyAutomaton {
        self.aut
    }

    pub fn coeffs(&self) -> &BTreeMap<StateId, i64> {
        &self.coeffs
    }

    pub fn is_identity_formally(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &GroupElement<'a>) -> GroupElement<'a> {
        let mut sum = self.clone();
        for (&s, &c) in &other.coeffs {
            sum.add_term(s, c);
        }
        sum
    }

    pub fn neg(&self) -> GroupElement<'a> {
        GroupElement { aut: self.aut, coeffs: self.coeffs.iter().map(|(&s, &c)| (s, -c)).collect() }
    }

    pub fn sub(&self, other: &GroupElement<'a>) -> GroupElement<'a> {
        self.add(&other.neg())
    }

    /// Odd iff the coefficients on odd states sum to an odd number.
    pub fn parity(&self) -> Parity {
        let odd =
            self.coeffs.iter().filter(|(&s, _)| self.aut.parity(s).is_odd()).map(|(_, c)| c.rem_euclid(2)).sum::<i64>();
        Parity::from_odd(odd % 2 == 1)
    }

    /// Expansion into signed unit terms, states in lexicographic order.
    pub fn unit_terms(&self) -> Vec<UnitTerm> {
        self.coeffs
            .iter()
            .flat_map(|(&state, &c)| std::iter::repeat_n(UnitTerm { state, negated: c < 0 }, c.unsigned_abs() as usize))
            .collect()
    }

    /// `∂a e`, folding the canonical unit-term expansion.
    pub fn residual(&self, a: Bit) -> GroupElement<'a> {
        residuate_terms(self.aut, &self.unit_terms(), a)
    }

    /// The output word of `e` on `w`, computed by residuation.
    pub fn evaluate(&self, w: &Word) -> Word {
        let mut e = self.clone();
        let mut out = Word::empty();
        for &a in w.bits() {
            out.push(if e.parity().is_odd() { a.flip() } else { a });
            e = e.residual(a);
        }
        out
    }

    /// Compact label for use as a state name: the display form without
    /// spaces, e.g. `f-f1`.
    pub fn label(&self) -> String {
        self.to_string().replace(' ', "")
    }

    fn fingerprint(&self, depth: usize) -> Vec<bool> {
        let mut out = Vec::new();
        let mut stack = vec![(self.clone(), 0)];
        while let Some((e, d)) = stack.pop() {
            out.push(e.parity().is_odd());
            if d < depth {
                stack.push((e.residual(Bit::One), d + 1));
                stack.push((e.residual(Bit::Zero), d + 1));
            }
        }
        out
    }
}

impl fmt::Display for GroupElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "I");
        }
        for (i, (&s, &c)) in self.coeffs.iter().enumerate() {
            let sign = match (i, c < 0) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            let magnitude = c.unsigned_abs();
            if magnitude == 1 {
                write!(f, "{sign}{}", self.aut.label(s))?;
            } else {
                write!(f, "{sign}{magnitude}{}", self.aut.label(s))?;
            }
        }
        Ok(())
    }
}

/// Residual of the sum of `terms`, folded left from `I`.
pub fn residuate_terms<'a>(aut: &'a MealyAutomaton, terms: &[UnitTerm], a: Bit) -> GroupElement<'a> {
    let mut result = GroupElement::identity(aut);
    let mut acc_odd = false;
    for term in terms {
        let term_odd = aut.parity(term.state).is_odd();
        let bit = if acc_odd && term_odd { a.flip() } else { a };
        if term.negated {
            result.add_term(aut.residual(term.state, bit.flip()), -1);
        } else {
            result.add_term(aut.residual(term.state, bit), 1);
        }
        acc_odd ^= term_odd;
    }
    result
}

pub fn element_parity(e: &GroupElement<'_>) -> Parity {
    e.parity()
}

pub fn residuate_element<'a>(e: &GroupElement<'a>, a: Bit) -> GroupElement<'a> {
    e.residual(a)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdentityTest {
    IsIdentity,
    /// The element residuates along this path into an odd element.
    NotIdentity(Word),
    Unknown,
}

/// Breadth-first closure of `e` under residuation. Sound in both
/// directions: an odd element in the closure is not `I`, and a finished
/// closure of even elements fixes every word.
pub fn identity_test(e: &GroupElement<'_>, bound: usize) -> IdentityTest {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(e.coeffs.clone());
    queue.push_back((e.clone(), Word::empty()));
    while let Some((x, path)) = queue.pop_front() {
        if x.parity().is_odd() {
            return IdentityTest::NotIdentity(path);
        }
        for a in Bit::BOTH {
            let r = x.residual(a);
            if seen.contains(&r.coeffs) {
                continue;
            }
            if seen.len() >= bound {
                return IdentityTest::Unknown;
            }
            seen.insert(r.coeffs.clone());
            let mut next = path.clone();
            next.push(a);
            queue.push_back((r, next));
        }
    }
    IdentityTest::IsIdentity
}

fn odd_after(path: &Word) -> String {
    if path.is_empty() {
        ", which is odd".to_string()
    } else {
        format!(", whose residual along {path} is odd")
    }
}

/// `e == f` as group elements, or `None` when the bound is exceeded.
pub fn elements_equal(e: &GroupElement<'_>, f: &GroupElement<'_>, bound: usize) -> Option<bool> {
    match identity_test(&e.sub(f), bound) {
        IdentityTest::IsIdentity => Some(true),
        IdentityTest::NotIdentity(_) => Some(false),
        IdentityTest::Unknown => None,
    }
}

/// `γ = ∂1 o - ∂0 o` for the lexicographically least odd state `o`.
pub fn gamma_of(aut: &MealyAutomaton) -> Result<GroupElement<'_>> {
    aut.ensure_invertible()?;
    let o = aut.odd_states().next().ok_or(Error::NoOddState)?;
    Ok(state_difference(aut, o))
}

fn state_difference(aut: &MealyAutomaton, s: StateId) -> GroupElement<'_> {
    GroupElement::state(aut, aut.residual(s, Bit::One)).sub(&GroupElement::state(aut, aut.residual(s, Bit::Zero)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    TrivialGroup,
    AbelianFreeCandidate,
    BooleanCandidate,
    NotAbelian,
    Unknown,
}

#[derive(Debug, Clone)]
pub struct AbelianReport<'a> {
    pub verdict: Verdict,
    pub gamma: Option<GroupElement<'a>>,
    /// Offending state and an explanation, for `NotAbelian`.
    pub witness: Option<(String, String)>,
}

/// Sutner's criterion: `∂1 s - ∂0 s` is `I` for even states and one common
/// `γ` for odd states.
pub fn check_abelian(aut: &MealyAutomaton, bound: usize) -> Result<AbelianReport<'_>> {
    aut.ensure_invertible()?;
    let not_abelian = |s: StateId, reason: String| AbelianReport {
        verdict: Verdict::NotAbelian,
        gamma: None,
        witness: Some((aut.label(s).to_string(), reason)),
    };
    let mut undecided = false;
    let mut first_gamma: Option<(StateId, GroupElement<'_>)> = None;
    for s in aut.states() {
        let diff = state_difference(aut, s);
        if aut.parity(s).is_odd() {
            let Some((o, gamma)) = &first_gamma else {
                first_gamma = Some((s, diff));
                continue;
            };
            match identity_test(&diff.sub(gamma), bound) {
                IdentityTest::IsIdentity => {}
                IdentityTest::NotIdentity(path) => {
                    let reason = format!(
                        "∂1-∂0 difference {diff} differs from {gamma} (the difference of `{}`){}",
                        aut.label(*o),
                        odd_after(&path)
                    );
                    return Ok(not_abelian(s, reason));
                }
                IdentityTest::Unknown => undecided = true,
            }
        } else {
            match identity_test(&diff, bound) {
                IdentityTest::IsIdentity => {}
                IdentityTest::NotIdentity(path) => {
                    let reason = format!("even state with nontrivial ∂1-∂0 difference {diff}{}", odd_after(&path));
                    return Ok(not_abelian(s, reason));
                }
                IdentityTest::Unknown => undecided = true,
            }
        }
    }
    let unknown = AbelianReport { verdict: Verdict::Unknown, gamma: None, witness: None };
    if undecided {
        return Ok(unknown);
    }
    let Some((_, gamma)) = first_gamma else {
        return Ok(AbelianReport { verdict: Verdict::TrivialGroup, gamma: None, witness: None });
    };
    let verdict = match identity_test(&gamma, bound) {
        IdentityTest::IsIdentity => Verdict::BooleanCandidate,
        IdentityTest::NotIdentity(_) => Verdict::AbelianFreeCandidate,
        IdentityTest::Unknown => return Ok(unknown),
    };
    Ok(AbelianReport { verdict, gamma: Some(gamma), witness: None })
}

pub(crate) fn require_abelian_free(aut: &MealyAutomaton, bound: usize) -> Result<AbelianReport<'_>> {
    let report = check_abelian(aut, bound)?;
    match report.verdict {
        Verdict::AbelianFreeCandidate => Ok(report),
        Verdict::NotAbelian => {
            let (state, reason) = report.witness.expect("NotAbelian carries a witness");
            Err(Error::NotAbelian { state, reason })
        }
        other => Err(Error::NotAbelianFree(other)),
    }
}

#[derive(Debug, Clone)]
enum PrincipalNode<'a> {
    Combo(GroupElement<'a>),
    Delta,
    NegDelta,
}

struct PrincipalBuilder<'a> {
    bound: usize,
    nodes: Vec<PrincipalNode<'a>>,
    table: Vec<Option<[Transition; 2]>>,
    formal: HashMap<BTreeMap<StateId, i64>, usize>,
    buckets: HashMap<Vec<bool>, Vec<usize>>,
    pending: VecDeque<usize>,
}

impl<'a> PrincipalBuilder<'a> {
    fn intern(&mut self, e: GroupElement<'a>) -> Result<usize> {
        if let Some(&id) = self.formal.get(&e.coeffs) {
            return Ok(id);
        }
        if self.formal.len() >= self.bound {
            return Err(Error::BoundExceeded(self.bound));
        }
        let fp = e.fingerprint(FINGERPRINT_DEPTH);
        for &candidate in self.buckets.get(&fp).into_iter().flatten() {
            let PrincipalNode::Combo(other) = &self.nodes[candidate] else { continue };
            match elements_equal(&e, other, self.bound) {
                Some(true) => {
                    self.formal.insert(e.coeffs.clone(), candidate);
                    return Ok(candidate);
                }
                Some(false) => {}
                None => return Err(Error::BoundExceeded(self.bound)),
            }
        }
        let id = self.nodes.len();
        self.formal.insert(e.coeffs.clone(), id);
        self.buckets.entry(fp).or_default().push(id);
        self.nodes.push(PrincipalNode::Combo(e));
        self.table.push(None);
        self.pending.push_back(id);
        Ok(id)
    }

    fn close(&mut self) -> Result<()> {
        while let Some(id) = self.pending.pop_front() {
            let PrincipalNode::Combo(e) = self.nodes[id].clone() else { continue };
            let odd = e.parity().is_odd();
            let mut row = [Transition { target: 0, output: Bit::Zero }; 2];
            for a in Bit::BOTH {
                let target = self.intern(e.residual(a))?;
                row[a.index()] = Transition { target, output: if odd { a.flip() } else { a } };
            }
            self.table[id] = Some(row);
        }
        Ok(())
    }

    fn find_odd_with_residuals(&self, zero: usize, one: usize) -> Option<usize> {
        self.table.iter().position(
            |row| matches!(row, Some([t0, t1]) if t0.output == Bit::One && t0.target == zero && t1.target == one),
        )
    }

    fn push_formal(&mut self, node: PrincipalNode<'a>, zero: usize, one: usize) -> usize {
        let row = [Transition { target: zero, output: Bit::One }, Transition { target: one, output: Bit::Zero }];
        self.nodes.push(node);
        self.table.push(Some(row));
        self.nodes.len() - 1
    }
}

/// Builds the principal machine of an abelian automaton from its own
/// transition table: close `γ` under residuation, adjoin `δ` (odd, with
/// `∂0 δ = I` and `∂1 δ = γ`) and its negation unless some element already
/// behaves that way, and adjoin the negations of everything, closed again. Elements are
/// identified when their difference passes [`identity_test`].
pub fn build_principal(aut: &MealyAutomaton, bound: usize) -> Result<MealyAutomaton> {
    let report = require_abelian_free(aut, bound)?;
    let gamma = report.gamma.expect("free candidate carries gamma");
    let mut b = PrincipalBuilder {
        bound,
        nodes: Vec::new(),
        table: Vec::new(),
        formal: HashMap::new(),
        buckets: HashMap::new(),
        pending: VecDeque::new(),
    };
    let gamma_id = b.intern(gamma.clone())?;
    b.close()?;
    let identity_id = b.intern(GroupElement::identity(aut))?;
    b.close()?;

    let combos: Vec<GroupElement<'_>> = b
        .nodes
        .iter()
        .filter_map(|n| match n {
            PrincipalNode::Combo(e) => Some(e.neg()),
            _ => None,
        })
        .collect();
    for e in combos {
        b.intern(e)?;
    }
    b.close()?;
    let neg_gamma_id = b.intern(gamma.neg())?;

    if b.find_odd_with_residuals(identity_id, gamma_id).is_none() {
        b.push_formal(PrincipalNode::Delta, identity_id, gamma_id);
    }
    if b.find_odd_with_residuals(neg_gamma_id, identity_id).is_none() {
        b.push_formal(PrincipalNode::NegDelta, neg_gamma_id, identity_id);
    }

    let mut labels: Vec<String> = Vec::with_capacity(b.nodes.len());
    for node in &b.nodes {
        let base = match node {
            PrincipalNode::Combo(e) => e.label(),
            PrincipalNode::Delta => "delta".to_string(),
            PrincipalNode::NegDelta => "-delta".to_string(),
        };
        let mut label = base.clone();
        let mut n = 1;
        while labels.contains(&label) {
            label = format!("{base}_{n}");
            n += 1;
        }
        labels.push(label);
    }
    let table = b.table.into_iter().map(|row| row.expect("closed")).collect();
    MealyAutomaton::from_table(format!("{}_principal", aut.name()), labels, table)
}
