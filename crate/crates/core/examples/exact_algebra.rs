//! Exact characteristic polynomials, the contraction test and the ring
//! `Z[x]/chi*`.

use abelian_automata::exactalg::{
    chi_star, companion_from_chi, irreducibility, is_contracting, is_unit_mod, mul_mod, resultant, try_divide_mod,
    IntPolynomial, RationalPolynomial,
};

fn main() -> abelian_automata::Result<()> {
    let chi: RationalPolynomial = "x^2 + x + 1/2".parse()?;
    let a = companion_from_chi(&chi)?;
    print!("A =\n{a}");
    println!("char poly {} | contracting {} | {:?}", a.char_poly(), is_contracting(&chi), irreducibility(&chi));
    print!("A^-1 =\n{}", a.inverse());

    let m = chi_star(&chi)?;
    println!("chi* = {m}");
    let p: IntPolynomial = "3 + 2x".parse()?;
    let q: IntPolynomial = "1 + x".parse()?;
    let pq = mul_mod(&p, &q, &m);
    println!("({p})({q}) = {pq} mod chi*");
    println!("({pq}) / ({p}) = {}", try_divide_mod(&pq, &p, &m)?);
    println!("Res(chi*, {p}) = {}, unit: {}", resultant(&m, &p), is_unit_mod(&p, &m));

    for text in ["x^2 - 3/2 x + 1/2", "x^3 + 1/2", "x^2 - 1/2"] {
        let chi: RationalPolynomial = text.parse()?;
        println!("{chi}: contracting {}, {:?}", is_contracting(&chi), irreducibility(&chi));
    }
    Ok(())
}
