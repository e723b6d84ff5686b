//! Parse an automaton and run words through it.
//!
//! ```bash
//! cargo run --example transduce
//! ```

use abelian_automata::mealy::{parse_automaton, serialize_automaton, Bit, Word};

fn main() -> abelian_automata::Result<()> {
    let aut = parse_automaton(include_str!("../fixtures/xyz.aut"))?;
    print!("{}", serialize_automaton(&aut));

    let w: Word = "0110".parse()?;
    println!("x({w}) = {}", aut.transduce_label("x", &w)?);

    // residuals along the way
    let mut state = aut.state("x")?;
    for &bit in w.bits() {
        let (next, out) = aut.step(state, bit);
        println!("  {} --{bit}/{out}--> {}", aut.label(state), aut.label(next));
        state = next;
    }

    for s in aut.states() {
        println!("{} is {:?}", aut.label(s), aut.parity(s));
    }
    let all_zero = Word::from_iter(std::iter::repeat_n(Bit::Zero, 8));
    println!("x({all_zero}) = {}", aut.transduce_label("x", &all_zero)?);
    Ok(())
}
