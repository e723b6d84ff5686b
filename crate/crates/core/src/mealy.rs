//! Binary Mealy automata: representation, the AUT v1 text format, and
//! simulation.
//!
//! States carry string labels and are stored in lexicographic order, so a
//! [`StateId`] doubles as the rank of the label. No start state is
//! distinguished; every operation takes the state explicitly.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type StateId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Bit {
    Zero,
    One,
}

impl Bit {
    pub const BOTH: [Bit; 2] = [Bit::Zero, Bit::One];

    pub fn from_u8(value: u8) -> Option<Bit> {
        match value {
            0 => Some(Bit::Zero),
            1 => Some(Bit::One),
            _ => None,
        }
    }

    pub fn as_u8(self) -> u8 {
        self as u8
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn flip(self) -> Bit {
        match self {
            Bit::Zero => Bit::One,
            Bit::One => Bit::Zero,
        }
    }
}

impl fmt::Display for Bit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_u8())
    }
}

/// A finite word over {0, 1}. Parsed from and printed as a bit-string; the
/// empty word is spelled `-`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Bit>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[Bit] {
        &self.0
    }

    pub fn push(&mut self, bit: Bit) {
        self.0.push(bit);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut bits = self.0.clone();
        bits.extend_from_slice(&other.0);
        Word(bits)
    }

    /// All words of exactly `len` bits, in lexicographic order.
    pub fn all_of_length(len: usize) -> impl Iterator<Item = Word> {
        assert!(len < 64, "word length {len} too large to enumerate");
        (0u64..1 << len).map(move |n| {
            Word((0..len).map(|i| if n >> (len - 1 - i) & 1 == 1 { Bit::One } else { Bit::Zero }).collect())
        })
    }
}

impl From<Vec<Bit>> for Word {
    fn from(bits: Vec<Bit>) -> Self {
        Word(bits)
    }
}

impl FromIterator<Bit> for Word {
    fn from_iter<T: IntoIterator<Item = Bit>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "-" {
            return Ok(Word::empty());
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(Bit::Zero),
                '1' => Ok(Bit::One),
                _ => Err(Error::InvalidArgument(format!("`{s}` is not a bit-string"))),
            })
            .collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "-");
        }
        for bit in &self.0 {
            write!(f, "{bit}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_odd(odd: bool) -> Parity {
        if odd {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Transition {
    pub target: StateId,
    pub output: Bit,
}

/// A finite binary Mealy automaton `(S, tau)` with a total transition table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MealyAutomaton {
    name: String,
    labels: Vec<String>,
    table: Vec<[Transition; 2]>,
}

pub fn is_valid_label(label: &str) -> bool {
    !label.is_empty() && label.chars().all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '+' | '-'))
}

/// Collects states and transitions, then checks totality on [`build`](Self::build).
#[derive(Debug, Clone, Default)]
pub struct MealyBuilder {
    name: String,
    states: Vec<String>,
    transitions: BTreeMap<(String, Bit), (String, Bit)>,
}

impl MealyBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        MealyBuilder { name: name.into(), ..Default::default() }
    }

    pub fn state(&mut self, label: impl Into<String>) -> Result<&mut Self> {
        let label = label.into();
        if !is_valid_label(&label) {
            return Err(Error::InvalidLabel(label));
        }
        if !self.states.contains(&label) {
            self.states.push(label);
        }
        Ok(self)
    }

    pub fn transition(
        &mut self,
        src: impl Into<String>,
        input: Bit,
        output: Bit,
        dst: impl Into<String>,
    ) -> Result<&mut Self> {
        let src = src.into();
        if self.transitions.insert((src.clone(), input), (dst.into(), output)).is_some() {
            return Err(Error::DuplicateTransition { state: src, bit: input.as_u8() });
        }
        Ok(self)
    }

    pub fn copy(&mut self, src: impl Into<String>, dst: impl Into<String>) -> Result<&mut Self> {
        let (src, dst) = (src.into(), dst.into());
        self.transition(src.clone(), Bit::Zero, Bit::Zero, dst.clone())?;
        self.transition(src, Bit::One, Bit::One, dst)
    }

    pub fn build(&self) -> Result<MealyAutomaton> {
        if self.states.is_empty() {
            return Err(Error::Syntax { line: 0, message: "automaton has no states".into() });
        }
        let mut labels = self.states.clone();
        labels.sort();
        let lookup = |label: &str| labels.binary_search_by(|l| l.as_str().cmp(label)).ok();
        for (src, _) in self.transitions.keys() {
            if lookup(src).is_none() {
                return Err(Error::UnknownState(src.clone()));
            }
        }
        let mut table = Vec::with_capacity(labels.len());
        for label in &labels {
            let mut row = [Transition { target: 0, output: Bit::Zero }; 2];
            for bit in Bit::BOTH {
                let (dst, output) = self
                    .transitions
                    .get(&(label.clone(), bit))
                    .ok_or_else(|| Error::MissingTransition { state: label.clone(), bit: bit.as_u8() })?;
                let target = lookup(dst).ok_or_else(|| Error::UnknownState(dst.clone()))?;
                row[bit.index()] = Transition { target, output: *output };
            }
            table.push(row);
        }
        Ok(MealyAutomaton { name: self.name.clone(), labels, table })
    }
}

impl MealyAutomaton {
    /// Builds an automaton directly from labels and a transition table
    /// indexed like `labels`. Labels are re-sorted; the table is permuted
    /// accordingly.
    pub fn from_table(name: impl Into<String>, labels: Vec<String>, table: Vec<[Transition; 2]>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::Syntax { line: 0, message: "automaton has no states".into() });
        }
        if labels.len() != table.len() {
            return Err(Error::DimensionMismatch { expected: labels.len(), found: table.len() });
        }
        if let Some(bad) = labels.iter().find(|l| !is_valid_label(l)) {
            return Err(Error::InvalidLabel(bad.clone()));
        }
        let mut order: Vec<StateId> = (0..labels.len()).collect();
        order.sort_by(|&a, &b| labels[a].cmp(&labels[b]));
        if order.windows(2).any(|w| labels[w[0]] == labels[w[1]]) {
            return Err(Error::InvalidArgument("duplicate state labels".into()));
        }
        let mut rank = vec![0; labels.len()];
        for (new, &old) in order.iter().enumerate() {
            rank[old] = new;
        }
        let mut sorted_table = Vec::with_capacity(table.len());
        for &old in &order {
            let mut row = table[old];
            for t in &mut row {
                if t.target >= labels.len() {
                    return Err(Error::UnknownState(format!("#{}", t.target)));
                }
                t.target = rank[t.target];
            }
            sorted_table.push(row);
        }
        let labels = order.iter().map(|&i| labels[i].clone()).collect();
        Ok(MealyAutomaton { name: name.into(), labels, table: sorted_table })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, id: StateId) -> &str {
        &self.labels[id]
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> {
        0..self.labels.len()
    }

    pub fn state(&self, label: &str) -> Result<StateId> {
        self.labels.binary_search_by(|l| l.as_str().cmp(label)).map_err(|_| Error::UnknownState(label.to_string()))
    }

    pub fn transition(&self, s: StateId, a: Bit) -> Transition {
        self.table[s][a.index()]
    }

    /// `∂_a s`.
    pub fn residual(&self, s: StateId, a: Bit) -> StateId {
        self.table[s][a.index()].target
    }

    pub fn output(&self, s: StateId, a: Bit) -> Bit {
        self.table[s][a.index()].output
    }

    pub fn step(&self, s: StateId, a: Bit) -> (StateId, Bit) {
        let t = self.transition(s, a);
        (t.target, t.output)
    }

    pub fn step_label(&self, s: &str, a: Bit) -> Result<(&str, Bit)> {
        let (next, out) = self.step(self.state(s)?, a);
        Ok((self.label(next), out))
    }

    pub fn transduce(&self, s: StateId, w: &Word) -> Word {
        self.run(s, w).0
    }

    /// Output word together with the state reached after reading `w`.
    pub fn run(&self, mut s: StateId, w: &Word) -> (Word, StateId) {
        let mut out = Word::empty();
        for &a in w.bits() {
            let (next, b) = self.step(s, a);
            out.push(b);
            s = next;
        }
        (out, s)
    }

    pub fn transduce_label(&self, s: &str, w: &Word) -> Result<Word> {
        Ok(self.transduce(self.state(s)?, w))
    }

    pub fn is_invertible(&self) -> bool {
        self.table.iter().all(|row| row[0].output != row[1].output)
    }

    pub fn ensure_invertible(&self) -> Result<()> {
        match self.states().find(|&s| self.output(s, Bit::Zero) == self.output(s, Bit::One)) {
            Some(s) => Err(Error::NotInvertible(self.labels[s].clone())),
            None => Ok(()),
        }
    }

    /// Parity of a state of an invertible automaton: odd iff it maps 0 to 1.
    pub fn parity(&self, s: StateId) -> Parity {
        Parity::from_odd(self.output(s, Bit::Zero) == Bit::One)
    }

    pub fn state_parity(&self, s: &str) -> Result<Parity> {
        self.ensure_invertible()?;
        Ok(self.parity(self.state(s)?))
    }

    pub fn odd_states(&self) -> impl Iterator<Item = StateId> + '_ {
        self.states().filter(|&s| self.parity(s).is_odd())
    }

    /// States reachable from `from` (including it), in BFS order.
    pub fn reachable(&self, from: StateId) -> Vec<StateId> {
        let mut seen = vec![false; self.len()];
        let mut order = vec![from];
        seen[from] = true;
        let mut i = 0;
        while i < order.len() {
            let s = order[i];
            i += 1;
            for a in Bit::BOTH {
                let t = self.residual(s, a);
                if !seen[t] {
                    seen[t] = true;
                    order.push(t);
                }
            }
        }
        order
    }

    /// The subautomaton on `keep`, which must be closed under residuation.
    pub fn restrict(&self, keep: &[StateId]) -> Result<MealyAutomaton> {
        let mut index = vec![None; self.len()];
        for (i, &s) in keep.iter().enumerate() {
            index[s] = Some(i);
        }
        let mut table = Vec::with_capacity(keep.len());
        for &s in keep {
            let mut row = self.table[s];
            for t in &mut row {
                t.target = index[t.target].ok_or_else(|| {
                    Error::InvalidArgument(format!("state set is not closed: `{}` leaves it", self.labels[s]))
                })?;
            }
            table.push(row);
        }
        let labels = keep.iter().map(|&s| self.labels[s].clone()).collect();
        MealyAutomaton::from_table(self.name.clone(), labels, table)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// A bijection `self -> other` preserving transitions and output bits,
    /// if one exists. Entry `i` is the image of state `i`.
    pub fn find_isomorphism(&self, other: &MealyAutomaton) -> Option<Vec<StateId>> {
        self.find_isomorphism_with(other, &[])
    }

    /// Like [`find_isomorphism`](Self::find_isomorphism) but forcing the
    /// given `(self, other)` pairs.
    pub fn find_isomorphism_with(&self, other: &MealyAutomaton, forced: &[(StateId, StateId)]) -> Option<Vec<StateId>> {
        if self.len() != other.len() {
            return None;
        }
        let mut map = vec![None; self.len()];
        let mut used = vec![false; other.len()];
        for &(s, t) in forced {
            if !self.propagate(other, s, t, &mut map, &mut used) {
                return None;
            }
        }
        if self.extend_isomorphism(other, &mut map, &mut used) {
            Some(map.into_iter().map(|m| m.expect("complete map")).collect())
        } else {
            None
        }
    }

    fn extend_isomorphism(&self, other: &MealyAutomaton, map: &mut Vec<Option<StateId>>, used: &mut Vec<bool>) -> bool {
        let Some(s) = map.iter().position(Option::is_none) else {
            return true;
        };
        for t in other.states() {
            if used[t] {
                continue;
            }
            let (saved_map, saved_used) = (map.clone(), used.clone());
            if self.propagate(other, s, t, map, used) && self.extend_isomorphism(other, map, used) {
                return true;
            }
            *map = saved_map;
            *used = saved_used;
        }
        false
    }

    fn propagate(
        &self,
        other: &MealyAutomaton,
        s: StateId,
        t: StateId,
        map: &mut [Option<StateId>],
        used: &mut [bool],
    ) -> bool {
        let mut queue = VecDeque::from([(s, t)]);
        while let Some((s, t)) = queue.pop_front() {
            match map[s] {
                Some(existing) if existing == t => continue,
                Some(_) => return false,
                None if used[t] => return false,
                None => {
                    map[s] = Some(t);
                    used[t] = true;
                }
            }
            for a in Bit::BOTH {
                let (x, y) = (self.transition(s, a), other.transition(t, a));
                if x.output != y.output {
                    return false;
                }
                queue.push_back((x.target, y.target));
            }
        }
        true
    }
}

pub fn parse_automaton(text: &str) -> Result<MealyAutomaton> {
    text.parse()
}

pub fn serialize_automaton(aut: &MealyAutomaton) -> String {
    aut.to_string()
}

fn parse_bit(token: &str, line: usize) -> Result<Bit> {
    match token {
        "0" => Ok(Bit::Zero),
        "1" => Ok(Bit::One),
        _ => Err(Error::Syntax { line, message: format!("expected a bit, found `{token}`") }),
    }
}

impl FromStr for MealyAutomaton {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut builder: Option<MealyBuilder> = None;
        let mut have_states = false;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("");
            let tokens: Vec<&str> = content.split_whitespace().collect();
            let Some((&keyword, args)) = tokens.split_first() else {
                continue;
            };
            let syntax = |message: String| Error::Syntax { line, message };
            let Some(b) = builder.as_mut() else {
                if keyword != "aut" || args.len() != 1 {
                    return Err(syntax("expected `aut <name>` header".into()));
                }
                builder = Some(MealyBuilder::new(args[0]));
                continue;
            };
            match keyword {
                "states" => {
                    if have_states {
                        return Err(syntax("second `states` line".into()));
                    }
                    if args.is_empty() {
                        return Err(syntax("`states` needs at least one label".into()));
                    }
                    for label in args {
                        if b.states.iter().any(|s| s == label) {
                            return Err(syntax(format!("state `{label}` declared twice")));
                        }
                        b.state(*label).map_err(|e| syntax(e.to_string()))?;
                    }
                    have_states = true;
                }
                "trans" | "copy" if !have_states => {
                    return Err(syntax("transitions before `states` line".into()));
                }
                "trans" => {
                    let [src, input, output, dst] = args else {
                        return Err(syntax("expected `trans <src> <in> <out> <dst>`".into()));
                    };
                    let (input, output) = (parse_bit(input, line)?, parse_bit(output, line)?);
                    b.transition(*src, input, output, *dst)?;
                }
                "copy" => {
                    let [src, dst] = args else {
                        return Err(syntax("expected `copy <src> <dst>`".into()));
                    };
                    b.copy(*src, *dst)?;
                }
                "aut" => return Err(syntax("second `aut` header".into())),
                other => return Err(syntax(format!("unknown keyword `{other}`"))),
            }
        }
        let builder = builder.ok_or(Error::Syntax { line: 0, message: "empty input".into() })?;
        if !have_states {
            return Err(Error::Syntax { line: 0, message: "missing `states` line".into() });
        }
        builder.build()
    }
}

impl fmt::Display for MealyAutomaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "aut {}", self.name)?;
        writeln!(f, "states {}", self.labels.join(" "))?;
        for s in self.states() {
            for a in Bit::BOTH {
                let t = self.transition(s, a);
                writeln!(f, "trans {} {} {} {}", self.labels[s], a, t.output, self.labels[t.target])?;
            }
        }
        Ok(())
    }
}
