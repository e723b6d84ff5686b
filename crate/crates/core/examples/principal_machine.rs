//! The principal machine two ways: from an automaton by closing its
//! residuation difference, and from a matrix as an orbit of `±e1`.

use abelian_automata::complete::principal_from_matrix;
use abelian_automata::exactalg::{companion_from_chi, RationalPolynomial};
use abelian_automata::group::{build_principal, gamma_of, DEFAULT_BOUND};
use abelian_automata::mealy::{parse_automaton, serialize_automaton};

fn main() -> abelian_automata::Result<()> {
    let aut = parse_automaton(include_str!("../fixtures/a32.aut"))?;
    let from_automaton = build_principal(&aut, DEFAULT_BOUND)?;
    println!("{}", serialize_automaton(&from_automaton));

    let chi: RationalPolynomial = "1/2 1 1".parse()?;
    let a = companion_from_chi(&chi)?;
    let from_matrix = principal_from_matrix(&a, DEFAULT_BOUND)?;
    println!("{}", serialize_automaton(&from_matrix));

    let gamma = gamma_of(&aut)?.label();
    let forced = [(from_automaton.state(&gamma)?, from_matrix.state("-2_-1")?)];
    match from_automaton.find_isomorphism_with(&from_matrix, &forced) {
        Some(iso) => {
            for (s, &t) in iso.iter().enumerate() {
                println!("{:>8} <-> {}", from_automaton.label(s), from_matrix.label(t));
            }
        }
        None => println!("not isomorphic"),
    }
    Ok(())
}
