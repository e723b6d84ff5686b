//! Abelian binary Mealy automata: a residuation calculus for their groups,
//! principal machines, complete automata over half-integral matrices, and
//! the fractional extensions that locate one inside another.
//!
//! ```
//! use abelian_automata::mealy::{parse_automaton, Word};
//!
//! let aut = parse_automaton("aut a\nstates f f0 f1\ntrans f 0 1 f0\ntrans f 1 0 f1\ncopy f0 f\ncopy f1 f0\n").unwrap();
//! let w: Word = "0110".parse().unwrap();
//! assert_eq!(aut.transduce_label("f", &w).unwrap().to_string(), "1100");
//! ```

pub mod analysis;
pub mod cli;
pub mod complete;
pub mod error;
pub mod exactalg;
pub mod group;
pub mod mealy;

pub use error::{Error, Result};
