mod common;

use abelian_automata::analysis::infer_matrix;
use abelian_automata::complete::{
    act, embed_scale, find_counterexample, gtilde_add, gtilde_eq, gtilde_step, locate, locate_at, poly_to_vector,
    principal_from_matrix, vector_to_poly, verify_location, CompleteConfig, GTildeElement, IntVector, LocationMap,
};
use abelian_automata::exactalg::{companion_from_chi, mul_mod, HalfIntegralMatrix, IntPolynomial, RationalPolynomial};
use abelian_automata::mealy::{Bit, MealyAutomaton};
use common::*;
use num_traits::Zero;
use proptest::prelude::*;

fn config_for(a: &HalfIntegralMatrix, p: &IntPolynomial) -> CompleteConfig {
    CompleteConfig::new(a.clone(), poly_to_vector(a, p)).unwrap()
}

/// Word-by-word check, independent of the product-pair search.
fn brute_force_agrees(aut: &MealyAutomaton, cfg: &CompleteConfig, map: &LocationMap, maxlen: usize) -> bool {
    aut.states().all(|s| match map.get(aut.label(s)) {
        None => true,
        Some(vec) => words_up_to(maxlen).all(|w| cfg.transduce_vector(vec, &w).unwrap() == aut.transduce(s, &w)),
    })
}

fn contracting_matrices() -> Vec<HalfIntegralMatrix> {
    ["x^2 + x + 1/2", "x^2 + 1/2", "x - 1/2", "x^3 + 1/2", "x^2 - x + 1/2", "x^3 + x^2 + x + 1/2"]
        .iter()
        .map(|t| companion_from_chi(&t.parse::<RationalPolynomial>().unwrap()).unwrap())
        .collect()
}

proptest! {
    #[test]
    fn residuals_are_integral_and_respect_parity(x in -50i64..=50, y in -50i64..=50, ex in -3i64..=3, ey in -3i64..=3) {
        let a = matrix_a();
        let cfg = CompleteConfig::new(a.clone(), v(&[2 * ex + 1, ey])).unwrap();
        let vec = v(&[x, y]);
        for bit in Bit::BOTH {
            let (next, out) = cfg.residual_vector(&vec, bit).unwrap();
            prop_assert_eq!(out, if vec.is_odd() { bit.flip() } else { bit });
            // independent recomputation: A (v - e), A (v + e) or A v over the rationals
            let shift = match (vec.is_odd(), bit) {
                (false, _) => v(&[0, 0]),
                (true, Bit::Zero) => -cfg.e(),
                (true, Bit::One) => cfg.e().clone(),
            };
            let w = &vec + &shift;
            let expected: Vec<_> = a.as_rational().mul_vec(&w.entries().iter().map(|c| num_rational::BigRational::from_integer(c.clone())).collect::<Vec<_>>());
            prop_assert!(expected.iter().all(|c| c.is_integer()));
            let expected: Vec<_> = expected.into_iter().map(|c| c.to_integer()).collect();
            prop_assert_eq!(next.entries(), expected.as_slice());
        }
    }

    #[test]
    fn delta_is_universal(e0 in -5i64..=5, e1 in -5i64..=5, w in bits(12)) {
        prop_assume!(e0 % 2 != 0);
        let a = matrix_a();
        let e = v(&[e0, e1]);
        let cfg = CompleteConfig::new(a.clone(), e.clone()).unwrap();
        let std = CompleteConfig::standard(a);
        prop_assert_eq!(cfg.transduce_vector(&e, &w).unwrap(), std.transduce_vector(&IntVector::e1(2), &w).unwrap());
    }

    #[test]
    fn scaling_commutes_with_residuation(p in odd_poly(3, 3), r in odd_poly(3, 3), vec in vec2(20)) {
        let a = matrix_a();
        let q = mul_mod(&p, &r, &a.chi_star());
        let (small, big_cfg) = (config_for(&a, &p), config_for(&a, &q));
        let scaled = act(&a, &r, &vec).unwrap();
        prop_assert_eq!(embed_scale(&a, &p, &q, &vec).unwrap(), scaled.clone());
        for bit in Bit::BOTH {
            let (res, out) = small.residual_vector(&vec, bit).unwrap();
            let (res_scaled, out_scaled) = big_cfg.residual_vector(&scaled, bit).unwrap();
            prop_assert_eq!(out, out_scaled);
            prop_assert_eq!(act(&a, &r, &res).unwrap(), res_scaled);
        }
    }

    #[test]
    fn scaling_is_additive(r in odd_poly(4, 3), x in vec2(30), y in vec2(30)) {
        let a = matrix_a();
        prop_assert_eq!(act(&a, &r, &(&x + &y)).unwrap(), &act(&a, &r, &x).unwrap() + &act(&a, &r, &y).unwrap());
    }

    #[test]
    fn polynomial_coordinates_round_trip(vec in vec2(40)) {
        let a = matrix_a();
        let p = vector_to_poly(&a, &vec).unwrap();
        prop_assert!(p.degree().is_none_or(|d| d < 2));
        prop_assert_eq!(poly_to_vector(&a, &p), vec);
    }

    #[test]
    fn gtilde_relation_is_an_equivalence(vec in vec2(10), p in odd_poly(2, 2), r in odd_poly(2, 2), s in odd_poly(2, 2)) {
        let a = matrix_a();
        let m = a.chi_star();
        let x = GTildeElement::new(vec.clone(), p.clone()).unwrap();
        let y = GTildeElement::new(act(&a, &r, &vec).unwrap(), mul_mod(&p, &r, &m)).unwrap();
        let z = GTildeElement::new(act(&a, &s, y.numerator()).unwrap(), mul_mod(y.denominator(), &s, &m)).unwrap();
        prop_assert!(gtilde_eq(&x, &x, &a).unwrap());
        prop_assert!(gtilde_eq(&x, &y, &a).unwrap() && gtilde_eq(&y, &x, &a).unwrap());
        prop_assert!(gtilde_eq(&y, &z, &a).unwrap() && gtilde_eq(&x, &z, &a).unwrap());
    }

    #[test]
    fn gtilde_addition_laws(u in vec2(10), w in vec2(10), t in vec2(10), p in odd_poly(2, 2), q in odd_poly(2, 2), s in odd_poly(2, 2), r in odd_poly(2, 2)) {
        let a = matrix_a();
        let m = a.chi_star();
        let x = GTildeElement::new(u, p).unwrap();
        let y = GTildeElement::new(w, q).unwrap();
        let z = GTildeElement::new(t, s).unwrap();
        let xy = gtilde_add(&x, &y, &a).unwrap();
        prop_assert!(gtilde_eq(&xy, &gtilde_add(&y, &x, &a).unwrap(), &a).unwrap());
        let left = gtilde_add(&xy, &z, &a).unwrap();
        let right = gtilde_add(&x, &gtilde_add(&y, &z, &a).unwrap(), &a).unwrap();
        prop_assert!(gtilde_eq(&left, &right, &a).unwrap());
        // a different representative of x gives an equivalent sum
        let x2 = GTildeElement::new(act(&a, &r, x.numerator()).unwrap(), mul_mod(x.denominator(), &r, &m)).unwrap();
        prop_assert!(gtilde_eq(&gtilde_add(&x2, &y, &a).unwrap(), &xy, &a).unwrap());
    }

    #[test]
    fn gtilde_residuation_ignores_representatives(u in vec2(15), p in odd_poly(2, 2), r in odd_poly(2, 2)) {
        let a = matrix_a();
        let x = GTildeElement::new(u, p).unwrap();
        let y = GTildeElement::new(act(&a, &r, x.numerator()).unwrap(), mul_mod(x.denominator(), &r, &a.chi_star())).unwrap();
        for bit in Bit::BOTH {
            let (rx, ox) = gtilde_step(&x, &a, bit).unwrap();
            let (ry, oy) = gtilde_step(&y, &a, bit).unwrap();
            prop_assert_eq!(ox, oy);
            prop_assert!(gtilde_eq(&rx, &ry, &a).unwrap());
        }
    }
}

#[test]
fn location_of_the_running_example() {
    let aut = a32();
    let a = matrix_a();
    let map = locate(&aut, &a, 10_000).unwrap();
    assert_eq!(map.p, ip(&[3, 2]));
    assert_eq!(map.e, v(&[3, 2]));
    assert!(!map.partial);
    for (label, expected) in [("f", [1, 0]), ("f0", [0, 1]), ("f1", [-2, -2])] {
        assert_eq!(map.get(label), Some(&v(&expected)));
    }
    let cfg = map.config(&a).unwrap();
    assert!(verify_location(&aut, &cfg, &map, 12));
    assert!(brute_force_agrees(&aut, &cfg, &map, 12));
    assert_eq!(map.to_string().parse::<LocationMap>().unwrap(), map);
}

#[test]
fn verification_agrees_with_brute_force() {
    let aut = a32();
    let a = matrix_a();
    let good = locate(&aut, &a, 10_000).unwrap();
    let cfg = good.config(&a).unwrap();
    for x in -3..=3 {
        for y in -3..=3 {
            let mut map = good.clone();
            map.assignment.insert("f0".into(), v(&[x, y]));
            let fast = find_counterexample(&aut, &cfg, &map, 8).unwrap();
            assert_eq!(fast.is_none(), brute_force_agrees(&aut, &cfg, &map, 8), "f0 at ({x},{y})");
            if let Some(cx) = fast {
                let s = aut.state(&cx.state).unwrap();
                assert_eq!(aut.transduce(s, &cx.input), cx.expected);
                assert_eq!(cfg.transduce_vector(map.get(&cx.state).unwrap(), &cx.input).unwrap(), cx.found);
                assert_ne!(cx.expected, cx.found);
            }
        }
    }
}

#[test]
fn principal_machines_locate_at_e1() {
    for a in contracting_matrices() {
        let principal = principal_from_matrix(&a, 100_000).unwrap();
        let e1 = IntVector::e1(a.dim());
        let map = locate_at(&principal, &a, &e1.label(), 100_000).unwrap();
        assert_eq!(map.p, IntPolynomial::one());
        assert_eq!(map.e, e1);
        let cfg = map.config(&a).unwrap();
        assert!(verify_location(&principal, &cfg, &map, 12));
        // assigned states sit at the vector they are named after; the rest are
        // unreachable from e1, which the map records
        for s in principal.states() {
            match map.get(principal.label(s)) {
                Some(vec) => assert_eq!(vec.label(), principal.label(s)),
                None => assert!(map.partial),
            }
        }
    }
}

#[test]
fn orbits_of_contracting_matrices_are_finite() {
    for a in contracting_matrices() {
        let cfg = CompleteConfig::standard(a.clone());
        for x in -4..=4 {
            let mut entries = vec![0i64; a.dim()];
            entries[0] = x;
            let orbit = cfg.orbit(&v(&entries), 100_000).unwrap();
            assert!(orbit.is_invertible());
            assert!(orbit.len() <= 100_000);
        }
    }
}

#[test]
fn inferred_locations_verify_at_length_twelve() {
    let aut = a32();
    for (a, map) in infer_matrix(&aut, 2, 2, 10_000).unwrap() {
        let cfg = map.config(&a).unwrap();
        assert!(verify_location(&aut, &cfg, &map, 12));
    }
}

#[test]
fn zero_is_the_identity() {
    let a = matrix_a();
    let cfg = CompleteConfig::new(a, v(&[3, 2])).unwrap();
    for w in words_up_to(8) {
        assert_eq!(cfg.transduce_vector(&IntVector::zero(2), &w).unwrap(), w);
    }
    assert!(IntVector::zero(2).entries().iter().all(Zero::is_zero));
}
