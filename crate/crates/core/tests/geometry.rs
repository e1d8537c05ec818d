mod common;

use bisyz_core::bundled;
use bisyz_core::geometry::{self, BaseLocusAnalysis, PointP1xP1, CHARTS};
use bisyz_core::hilbert;
use bisyz_core::textio::parse_point;
use bisyz_core::{BiPoly, Error, Q};
use common::*;
use rand::seq::SliceRandom;

fn pt(s: &str) -> PointP1xP1 {
    parse_point(s).unwrap()
}

fn gens(name: &str) -> Vec<BiPoly> {
    bundled::ideal(name).unwrap().generators
}

#[test]
fn bundled_base_points() {
    let cases: [(&str, &[&str]); 3] = [
        ("ex2", &["0:1;0:1", "1:0;0:1", "1:0;1:0"]),
        ("ex3", &["0:1;0:1"]),
        ("i3", &["0:1;0:1", "1:0;1:0"]),
    ];
    for (name, expected) in cases {
        let g = gens(name);
        assert!(geometry::is_zero_dimensional(&g));
        let locus = geometry::base_points(&g).unwrap();
        assert!(locus.complete, "{name}");
        let mut want: Vec<_> = expected.iter().map(|s| pt(s)).collect();
        want.sort();
        let mut got = locus.rational_points.clone();
        got.sort();
        assert_eq!(got, want, "{name}");
        for p in &got {
            assert!(p.lies_on(&g));
        }
    }
}

#[test]
fn ex2_extra_point_is_a_genuine_zero() {
    let g = gens("ex2");
    let p = pt("1:0;0:1");
    let c = p.coords();
    assert!(g.iter().all(|f| num_traits::Zero::is_zero(&f.evaluate(&c))));
    let r = BaseLocusAnalysis::new(&g).unwrap().local_report(&p).unwrap();
    assert_eq!((r.multiplicity, r.tangent_dim, r.conormal_dim), (1, 0, 2));
}

#[test]
fn bundled_local_invariants() {
    let cases: [(&str, &str, u64, u64, u64); 6] = [
        ("ex2", "0:1;0:1", 1, 0, 2),
        ("ex2", "1:0;1:0", 2, 1, 4),
        ("ex3", "0:1;0:1", 4, 2, 8),
        ("i3", "0:1;0:1", 3, 2, 7),
        ("i3", "1:0;1:0", 3, 2, 7),
        ("ex2", "1:0;0:1", 1, 0, 2),
    ];
    for (name, p, mult, tan, con) in cases {
        let a = BaseLocusAnalysis::new(&gens(name)).unwrap();
        let r = a.local_report(&pt(p)).unwrap();
        assert_eq!((r.multiplicity, r.tangent_dim, r.conormal_dim), (mult, tan, con), "{name} {p}");
        assert_eq!(r.curvilinear, tan <= 1);
        assert_eq!(r.lci, con == 2 * mult);
    }
}

#[test]
fn monomial_local_ideals() {
    // Local ideals <s,t> at (0:1;0:1) and <v,u²> at (1:0;1:0).
    let g = vec![p("s*v"), p("u^2*t")];
    let a = BaseLocusAnalysis::new(&g).unwrap();
    assert_eq!(a.tangent_dimension(&pt("0:1;0:1")).unwrap(), 0);
    assert_eq!(a.local_multiplicity(&pt("0:1;0:1")).unwrap(), 1);
    assert_eq!(a.tangent_dimension(&pt("1:0;1:0")).unwrap(), 1);
    assert_eq!(a.local_multiplicity(&pt("1:0;1:0")).unwrap(), 2);
    assert!(a.is_curvilinear_at(&pt("1:0;1:0")).unwrap());
    // <s²,t²> and <u²,v²>.
    let g = vec![p("s^2*v^2"), p("u^2*t^2")];
    let a = BaseLocusAnalysis::new(&g).unwrap();
    for q in ["0:1;0:1", "1:0;1:0"] {
        assert_eq!(a.tangent_dimension(&pt(q)).unwrap(), 2);
        assert_eq!(a.local_multiplicity(&pt(q)).unwrap(), 4);
        assert!(!a.is_curvilinear_at(&pt(q)).unwrap());
        assert!(a.is_lci_at(&pt(q)).unwrap().0);
    }
}

#[test]
fn point_not_on_locus() {
    let a = BaseLocusAnalysis::new(&gens("ex3")).unwrap();
    assert!(matches!(a.local_multiplicity(&pt("1:1;1:1")), Err(Error::PointNotOnLocus(_))));
}

#[test]
fn zero_dimensionality() {
    assert!(!geometry::is_zero_dimensional(&[p("u^2*t*v")]));
    assert!(geometry::is_zero_dimensional(&[p("1")]));
    assert!(!geometry::has_base_points(&[p("1")]));
    assert!(matches!(
        geometry::base_points(&[p("u^2*t*v")]),
        Err(Error::NotZeroDimensional)
    ));
}

#[test]
fn non_rational_locus_is_reported_incomplete() {
    let g = vec![p("s^2t - 2u^2t"), p("s^2v - 2u^2v"), p("s*t"), p("u*t")];
    assert!(geometry::is_zero_dimensional(&g));
    let a = BaseLocusAnalysis::new(&g).unwrap();
    assert!(a.locus.rational_points.is_empty());
    assert!(!a.locus.complete);
    assert!(matches!(a.local_reports(), Err(Error::RequiresRationalPoints)));
    // Global invariants need no points: two reduced conjugate points.
    assert_eq!(hilbert::degree_of_z(&g).unwrap(), 2);
    assert!(geometry::is_lci_global(&g).unwrap());
}

#[test]
fn reports_agree_across_charts() {
    // Single point (1:1;1:1), in all four charts, local ideal <a², b²>.
    let g = vec![
        &p("s^2 - 2su + u^2") * &p("t^2 + 2tv + v^2"),
        &p("s^2 + 2su + u^2") * &p("t^2 - 2tv + v^2"),
        &p("s^2 - 2su + u^2") * &p("t^2 - 2tv + v^2"),
    ];
    let a = BaseLocusAnalysis::new(&g).unwrap();
    assert_eq!(a.locus.rational_points, vec![pt("1:1;1:1")]);
    let p0 = pt("1:1;1:1");
    let reports: Vec<_> = CHARTS.iter().map(|c| geometry::report_in(&g, c, &p0)).collect();
    for r in &reports {
        assert_eq!(r, &reports[0]);
    }
    assert_eq!(
        (reports[0].multiplicity, reports[0].tangent_dim, reports[0].conormal_dim),
        (4, 2, 8)
    );
}

fn linear_first(a: i64, b: i64) -> BiPoly {
    BiPoly::from_terms([
        (bisyz_core::Monomial::new(1, 0, 0, 0), Q::from_integer(a.into())),
        (bisyz_core::Monomial::new(0, 1, 0, 0), Q::from_integer(b.into())),
    ])
}

fn linear_second(a: i64, b: i64) -> BiPoly {
    BiPoly::from_terms([
        (bisyz_core::Monomial::new(0, 0, 1, 0), Q::from_integer(a.into())),
        (bisyz_core::Monomial::new(0, 0, 0, 1), Q::from_integer(b.into())),
    ])
}

/// Ideals whose generators are products of rational linear forms, so
/// every base point is rational.
fn product_ideals(count: usize) -> Vec<Vec<BiPoly>> {
    let firsts = [linear_first(1, 0), linear_first(0, 1), linear_first(1, -1), linear_first(1, 2)];
    let seconds = [linear_second(1, 0), linear_second(0, 1), linear_second(1, 1), linear_second(2, -1)];
    let mut rng = rng(7);
    let mut out = Vec::new();
    while out.len() < count {
        let g: Vec<BiPoly> = (0..3)
            .map(|_| {
                let mut f = BiPoly::one();
                for _ in 0..2 {
                    f = &f * firsts.choose(&mut rng).unwrap();
                    f = &f * seconds.choose(&mut rng).unwrap();
                }
                f
            })
            .collect();
        if geometry::is_zero_dimensional(&g) && geometry::has_base_points(&g) {
            out.push(g);
        }
    }
    out
}

#[test]
fn local_invariants_sum_to_global_constants() {
    let mut ideals = product_ideals(12);
    ideals.extend(bundled::NAMES.iter().map(|n| gens(n)));
    for g in ideals {
        let a = BaseLocusAnalysis::new(&g).unwrap();
        assert!(a.locus.complete, "{g:?}");
        let reports = a.local_reports().unwrap();
        let deg: u64 = reports.iter().map(|r| r.multiplicity).sum();
        let con: u64 = reports.iter().map(|r| r.conormal_dim).sum();
        assert_eq!(deg, hilbert::degree_of_z(&g).unwrap(), "{g:?}");
        assert_eq!(con, hilbert::conormal_hilbert_constant(&g).unwrap(), "{g:?}");
        let oracle = diagonal_constant(|d| quotient_slice_dim(&g, d), 9).unwrap();
        assert_eq!(deg as usize, oracle, "{g:?}");
        // Pointwise inequality dim I_p/I_p² ≥ 2 dim O_p/I_p.
        for r in &reports {
            assert!(r.conormal_dim >= 2 * r.multiplicity, "{g:?} at {}", r.point);
        }
        assert_eq!(geometry::is_lci_global(&g).unwrap(), reports.iter().all(|r| r.lci));
    }
}
