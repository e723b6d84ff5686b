//! Locate an abelian automaton in a complete automaton and check the
//! result word by word.

use abelian_automata::complete::{find_counterexample, locate, locate_at, principal_from_matrix, IntVector};
use abelian_automata::exactalg::parse_matrix;
use abelian_automata::mealy::parse_automaton;

fn main() -> abelian_automata::Result<()> {
    let aut = parse_automaton(include_str!("../fixtures/a32.aut"))?;
    let a = parse_matrix(include_str!("../fixtures/a.mat"))?;

    let map = locate(&aut, &a, 10_000)?;
    print!("{map}");
    let cfg = map.config(&a)?;
    println!("counterexample up to length 12: {:?}", find_counterexample(&aut, &cfg, &map, 12)?);

    // A deliberately wrong vector is caught.
    let mut wrong = map.clone();
    wrong.assignment.insert("f".into(), IntVector::from_i64s(&[3, 0]));
    if let Some(cx) = find_counterexample(&aut, &cfg, &wrong, 12)? {
        println!("f at (3,0): input {} expected {} found {}", cx.input, cx.expected, cx.found);
    }

    // In the principal machine the state at e1 is located with p = 1.
    let principal = principal_from_matrix(&a, 10_000)?;
    print!("{}", locate_at(&principal, &a, "1_0", 10_000)?);
    Ok(())
}
