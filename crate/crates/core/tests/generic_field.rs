//! The algebraic layers instantiated over `Ratio<i64>` instead of ℚ with
//! big integers.

use bisyz_core::geometry::is_lci_global;
use bisyz_core::groebner::syzygy_module;
use bisyz_core::hilbert::{degree_of_z, hilbert_polynomial, HilbertPoly2, Part};
use bisyz_core::module::SubmodulePresentation;
use bisyz_core::poly::Poly;
use bisyz_core::saturation::saturate;
use bisyz_core::{groebner::GroebnerBasis, BiDegree, Monomial};
use num_rational::Rational64;

type P = Poly<Rational64>;

fn m(s: u16, u: u16, t: u16, v: u16) -> P {
    P::monomial(Monomial::new(s, u, t, v))
}

#[test]
fn small_rationals_reproduce_the_fat_point_example() {
    let gens = vec![m(2, 0, 0, 2), m(0, 2, 2, 0), m(2, 0, 2, 0)];
    let gb = GroebnerBasis::ideal(&gens);
    assert!(gb.satisfies_buchberger_criterion());
    assert_eq!(degree_of_z(&gens).unwrap(), 4);
    assert!(is_lci_global(&gens).unwrap());

    let sat = saturate(&SubmodulePresentation::ideal(&gens));
    let gb_sat = GroebnerBasis::compute(&sat.module);
    assert!(gb_sat.contains_poly(&m(2, 0, 1, 1)));
    assert!(gb_sat.contains_poly(&m(0, 0, 2, 0)));

    let syz = syzygy_module(&SubmodulePresentation::ideal(&gens));
    assert!(syz.generators.iter().all(|g| g.apply(&gens).is_zero()));
    let hp = hilbert_polynomial(&syz, Part::Submodule).unwrap();
    let free = HilbertPoly2::of_free(&[BiDegree::new(2, 2); 3]);
    // H(S) = H(F) - H(I) = H(F) - H(R) + deg Z on large bidegrees.
    let expected = free.sub(&HilbertPoly2::of_free(&[BiDegree::new(0, 0)])).add_constant(4);
    assert!(hp.same_polynomial(&expected), "{hp:?}");
}

#[test]
fn fractional_coefficients_stay_exact() {
    let half = Rational64::new(1, 2);
    let f = &m(1, 0, 1, 0).scale(&half) - &m(0, 1, 0, 1);
    let g = &m(1, 0, 0, 1) + &m(0, 1, 1, 0).scale(&Rational64::new(3, 7));
    let gb = GroebnerBasis::ideal(&[f.clone(), g.clone()]);
    assert!(gb.satisfies_buchberger_criterion());
    assert!(gb.contains_poly(&(&(&f * &m(2, 0, 0, 1)) - &(&g * &m(0, 1, 1, 0)))));
}
