//! The complete automaton on `Z^m`, the polynomial module structure, and
//! locating abelian automata inside it.

mod action;
mod config;
mod fraction;
mod locate;
mod vector;

pub use action::{act, poly_to_vector, vector_to_poly};
pub use config::{principal_from_matrix, CompleteConfig};
pub use fraction::{embed_scale, gtilde_add, gtilde_eq, gtilde_residual, gtilde_step, GTildeElement};
pub use locate::{find_counterexample, locate, locate_at, verify_location, Counterexample, LocationMap};
pub use vector::IntVector;
