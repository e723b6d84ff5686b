//! Components of principal machines and the algebraic witness for them.

use abelian_automata::analysis::{
    check_scc_instance, path_polynomial, witness_search, PathWord, DEFAULT_WITNESS_DEGREE,
};
use abelian_automata::exactalg::{companion_from_chi, RationalPolynomial};

fn main() -> abelian_automata::Result<()> {
    for chi in ["1/2 1 1", "-1/2 1", "1/2 0 1", "1/2 1 0 1"] {
        let chi: RationalPolynomial = chi.parse()?;
        let a = companion_from_chi(&chi)?;
        println!("chi = {chi}");
        match check_scc_instance(&a, 100_000, DEFAULT_WITNESS_DEGREE) {
            Ok(report) => print!("{report}"),
            Err(e) => println!("  {e}"),
        }
    }

    let w: PathWord = "1n01".parse()?;
    println!("P_{w} = {}", path_polynomial(&w));
    let chi_star = "2 2 1".parse()?;
    println!("witness for {chi_star}: {:?}", witness_search(&chi_star, 8)?.map(|p| p.to_string()));
    Ok(())
}
