//! Residuation on integer vectors and finite orbits.

use abelian_automata::complete::{CompleteConfig, IntVector};
use abelian_automata::exactalg::parse_matrix;
use abelian_automata::mealy::{serialize_automaton, Bit};

fn main() -> abelian_automata::Result<()> {
    let a = parse_matrix(include_str!("../fixtures/a.mat"))?;
    let cfg = CompleteConfig::new(a, "(3,2)".parse()?)?;
    println!("contracting: {}", cfg.is_contracting());

    let f: IntVector = "(1,0)".parse()?;
    for bit in Bit::BOTH {
        let (next, out) = cfg.residual_vector(&f, bit)?;
        println!("{f} --{bit}/{out}--> {next}");
    }
    println!("{f} on 0110 -> {}", cfg.transduce_vector(&f, &"0110".parse()?)?);

    let orbit = cfg.orbit(&f, 1000)?;
    print!("{}", serialize_automaton(&orbit));

    let standard = CompleteConfig::standard(cfg.matrix().clone());
    let e1 = IntVector::e1(2);
    let vectors = standard.orbit_vectors(&[e1], 1000)?;
    println!("orbit of e1 has {} vectors:", vectors.len());
    for v in vectors {
        println!("  {v}");
    }
    Ok(())
}
