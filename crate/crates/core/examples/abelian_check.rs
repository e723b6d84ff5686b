//! Classify automata by the residuation criterion for abelian groups.

use abelian_automata::group::{check_abelian, gamma_of, identity_test, GroupElement, DEFAULT_BOUND};
use abelian_automata::mealy::parse_automaton;

fn main() -> abelian_automata::Result<()> {
    let fixtures = [
        ("a32", include_str!("../fixtures/a32.aut")),
        ("lamplighter", include_str!("../fixtures/lamplighter.aut")),
        ("identity", include_str!("../fixtures/identity.aut")),
    ];
    for (name, text) in fixtures {
        let aut = parse_automaton(text)?;
        let report = check_abelian(&aut, DEFAULT_BOUND)?;
        print!("{name}: {:?}", report.verdict);
        if let Some(gamma) = &report.gamma {
            print!(", gamma = {gamma}");
        }
        if let Some((state, reason)) = &report.witness {
            print!(", witness {state} ({reason})");
        }
        println!();
    }

    // Group arithmetic with the residuation calculus.
    let aut = parse_automaton(include_str!("../fixtures/a32.aut"))?;
    let gamma = gamma_of(&aut)?;
    let relation = GroupElement::from_labels(&aut, &[("f", 2), ("f0", 2), ("f1", 1)])?;
    println!("2f + 2f0 + f1 -> {:?}", identity_test(&relation, DEFAULT_BOUND));
    println!("gamma -> {:?}", identity_test(&gamma, DEFAULT_BOUND));
    println!("gamma(0110) = {}", gamma.evaluate(&"0110".parse()?));
    Ok(())
}
