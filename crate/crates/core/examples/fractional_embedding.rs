//! Scaling between fractional extensions, and fractions `v/p`.

use abelian_automata::complete::{embed_scale, gtilde_add, gtilde_eq, gtilde_step, GTildeElement, IntVector};
use abelian_automata::exactalg::{is_unit_mod, mul_mod, parse_matrix, IntPolynomial};
use abelian_automata::mealy::Bit;

fn main() -> abelian_automata::Result<()> {
    let a = parse_matrix(include_str!("../fixtures/a.mat"))?;
    let chi_star = a.chi_star();
    println!("chi* = {chi_star}");

    let p: IntPolynomial = "3 + 2x".parse()?;
    let q = mul_mod(&p, &"1 + x".parse()?, &chi_star);
    let v = IntVector::from_i64s(&[1, 0]);
    println!("{v} in ({p})^-1 G maps to {} in ({q})^-1 G", embed_scale(&a, &p, &q, &v)?);
    println!("3 + 2x is a unit: {}", is_unit_mod(&p, &chi_star));
    if let Err(e) = embed_scale(&a, &p, &IntPolynomial::one(), &v) {
        println!("into G itself: {e}");
    }

    let x = GTildeElement::new(v.clone(), p.clone())?;
    let y = GTildeElement::new(IntVector::from_i64s(&[1, 1]), q)?;
    println!("{x} == {y}: {}", gtilde_eq(&x, &y, &a)?);
    let sum = gtilde_add(&x, &GTildeElement::new(v, IntPolynomial::one())?, &a)?;
    println!("sum = {sum}");
    for bit in Bit::BOTH {
        let (r, out) = gtilde_step(&x, &a, bit)?;
        println!("d{bit} {x} = {r}, output {out}");
    }
    Ok(())
}
