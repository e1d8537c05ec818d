use bisyz_core::bundled;
use bisyz_core::geometry::BaseLocusAnalysis;
use bisyz_core::koszul::KoszulData;
use bisyz_core::textio::{
    parse_ideal, parse_poly, serialize_ideal, serialize_poly, serialize_report, Report,
};
use bisyz_core::{BiPoly, Monomial, Q};
use num_bigint::BigInt;
use proptest::prelude::*;

fn arb_coeff() -> impl Strategy<Value = Q> {
    (-1000i64..=1000, 1i64..=50).prop_map(|(n, d)| Q::new(BigInt::from(n), BigInt::from(d)))
}

fn arb_poly() -> impl Strategy<Value = BiPoly> {
    let mon = (0u16..6, 0u16..6, 0u16..6, 0u16..6).prop_map(|(a, b, c, d)| Monomial::new(a, b, c, d));
    prop::collection::vec((mon, arb_coeff()), 0..7).prop_map(BiPoly::from_terms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn parse_inverts_serialize(f in arb_poly()) {
        let text = serialize_poly(&f);
        prop_assert_eq!(parse_poly(&text).unwrap(), f.clone());
        prop_assert_eq!(serialize_poly(&parse_poly(&text).unwrap()), text);
    }
}

#[test]
fn bundled_files_round_trip() {
    for name in bundled::NAMES {
        let spec = bundled::ideal(name).unwrap();
        let text = serialize_ideal(&spec);
        assert_eq!(parse_ideal(&text).unwrap(), spec, "{name}");
        for g in &spec.generators {
            assert_eq!(&parse_poly(&serialize_poly(g)).unwrap(), g);
        }
    }
}

fn full_report(name: &str) -> String {
    let spec = bundled::ideal(name).unwrap();
    let a = BaseLocusAnalysis::new(&spec.generators).unwrap();
    let kd = KoszulData::build(&spec.generators).unwrap();
    let th = kd.theorem_check().unwrap();
    let report = Report::new()
        .with_ideal(&spec)
        .with_locus(&a.locus)
        .with_local_reports(&a.local_reports().unwrap())
        .with_module(&kd.vanishing)
        .with_theorem(&th);
    serialize_report(&report)
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for name in bundled::NAMES {
        assert_eq!(full_report(name), full_report(name), "{name}");
    }
}

#[test]
fn ex3_report_lists_the_base_point() {
    let v: serde_json::Value = serde_json::from_str(&full_report("ex3")).unwrap();
    assert_eq!(v["base_points"], serde_json::json!([[["0", "1"], ["0", "1"]]]));
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["theorem"]["ksat_equals_v"], true);
}
