use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::exactalg::{is_contracting, HalfIntegralMatrix};
use crate::mealy::{Bit, MealyAutomaton, Transition, Word};

use super::vector::IntVector;

/// The complete automaton on `Z^m` for a half-integral `A` and an odd
/// residuation vector `e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompleteConfig {
    a: HalfIntegralMatrix,
    e: IntVector,
    contracting: bool,
}

impl CompleteConfig {
    pub fn new(a: HalfIntegralMatrix, e: IntVector) -> Result<Self> {
        e.check_dim(a.dim())?;
        if !e.is_odd() {
            return Err(Error::EvenResiduationVector);
        }
        let contracting = is_contracting(&a.char_poly());
        Ok(CompleteConfig { a, e, contracting })
    }

    /// `(A, ē₁)`.
    pub fn standard(a: HalfIntegralMatrix) -> Self {
        let e = IntVector::e1(a.dim());
        CompleteConfig::new(a, e).expect("e1 is odd")
    }

    pub fn matrix(&self) -> &HalfIntegralMatrix {
        &self.a
    }

    pub fn e(&self) -> &IntVector {
        &self.e
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    /// Whether every eigenvalue of `A` lies inside the unit disk, so orbits
    /// are finite.
    pub fn is_contracting(&self) -> bool {
        self.contracting
    }

    /// Even `v` goes to `(Av, a)`; odd `v` to `(A(v - e), 1)` on 0 and to
    /// `(A(v + e), 0)` on 1.
    pub fn residual_vector(&self, v: &IntVector, a: Bit) -> Result<(IntVector, Bit)> {
        v.check_dim(self.dim())?;
        Ok(self.step(v, a))
    }

    pub(crate) fn step(&self, v: &IntVector, a: Bit) -> (IntVector, Bit) {
        let (shifted, out) = if !v.is_odd() {
            (v.clone(), a)
        } else {
            match a {
                Bit::Zero => (v - &self.e, Bit::One),
                Bit::One => (v + &self.e, Bit::Zero),
            }
        };
        let next = IntVector::new(self.a.apply_even(shifted.entries())).expect("nonempty");
        (next, out)
    }

    pub fn transduce_vector(&self, v: &IntVector, w: &Word) -> Result<Word> {
        v.check_dim(self.dim())?;
        let mut v = v.clone();
        let mut out = Word::empty();
        for &a in w.bits() {
            let (next, b) = self.step(&v, a);
            out.push(b);
            v = next;
        }
        Ok(out)
    }

    /// Closure of `seeds` under both residuals, in BFS discovery order.
    pub fn orbit_vectors(&self, seeds: &[IntVector], bound: usize) -> Result<Vec<IntVector>> {
        Ok(self.closure(seeds, bound)?.0)
    }

    /// The automaton on the closure of `v`, states labeled by
    /// [`IntVector::label`].
    pub fn orbit(&self, v: &IntVector, bound: usize) -> Result<MealyAutomaton> {
        self.orbit_of(std::slice::from_ref(v), format!("orbit_{}", v.label()), bound)
    }

    pub fn orbit_of(&self, seeds: &[IntVector], name: impl Into<String>, bound: usize) -> Result<MealyAutomaton> {
        let (vectors, table) = self.closure(seeds, bound)?;
        let labels = vectors.iter().map(IntVector::label).collect();
        MealyAutomaton::from_table(name, labels, table)
    }

    fn closure(&self, seeds: &[IntVector], bound: usize) -> Result<(Vec<IntVector>, Vec<[Transition; 2]>)> {
        let mut index: HashMap<IntVector, usize> = HashMap::new();
        let mut vectors = Vec::new();
        let mut queue = VecDeque::new();
        let mut intern = |v: IntVector, vectors: &mut Vec<IntVector>, queue: &mut VecDeque<usize>| -> Result<usize> {
            if let Some(&i) = index.get(&v) {
                return Ok(i);
            }
            if vectors.len() >= bound {
                return Err(Error::BoundExceeded(bound));
            }
            let i = vectors.len();
            index.insert(v.clone(), i);
            vectors.push(v);
            queue.push_back(i);
            Ok(i)
        };
        for v in seeds {
            v.check_dim(self.dim())?;
            intern(v.clone(), &mut vectors, &mut queue)?;
        }
        let mut rows: Vec<Option<[Transition; 2]>> = Vec::new();
        while let Some(i) = queue.pop_front() {
            let v = vectors[i].clone();
            let mut row = [Transition { target: 0, output: Bit::Zero }; 2];
            for a in Bit::BOTH {
                let (next, output) = self.step(&v, a);
                let target = intern(next, &mut vectors, &mut queue)?;
                row[a.index()] = Transition { target, output };
            }
            if rows.len() <= i {
                rows.resize(i + 1, None);
            }
            rows[i] = Some(row);
        }
        let table = rows.into_iter().map(|r| r.expect("every vector expanded")).collect();
        Ok((vectors, table))
    }
}

/// The principal machine built from the matrix alone: the closure of
/// `±ē₁` in the complete automaton of `(A, ē₁)`.
pub fn principal_from_matrix(a: &HalfIntegralMatrix, bound: usize) -> Result<MealyAutomaton> {
    let cfg = CompleteConfig::standard(a.clone());
    let e1 = IntVector::e1(a.dim());
    cfg.orbit_of(&[e1.clone(), -&e1], "principal", bound)
}
