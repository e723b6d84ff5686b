//! Recover a matrix for an abelian automaton by bounded search.

use abelian_automata::analysis::infer_matrix;
use abelian_automata::mealy::parse_automaton;

fn main() -> abelian_automata::Result<()> {
    let aut = parse_automaton(include_str!("../fixtures/a32.aut"))?;
    let found = infer_matrix(&aut, 2, 2, 10_000)?;
    println!("{} candidate(s)", found.len());
    for (a, map) in found {
        println!("chi = {}", a.char_poly());
        print!("{a}{map}");
    }
    Ok(())
}
