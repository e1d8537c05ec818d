use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bisyz"))
}

fn ideal(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("../core/ideals/{name}.ideal"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn run_on(cmd: &str, name: &str, extra: &[&str]) -> Output {
    let path = ideal(name);
    let mut args = vec![cmd, path.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn basepoints_report() {
    let out = run_on("basepoints", "ex3", &[]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["base_points"], serde_json::json!([[["0", "1"], ["0", "1"]]]));
    assert_eq!(v["locus_complete"], true);
    assert_eq!(v["local_reports"][0]["multiplicity"], 4);

    let v = json(&run_on("basepoints", "ex2", &[]));
    assert_eq!(v["base_points"].as_array().unwrap().len(), 3);
}

#[test]
fn koszul_check_row6() {
    let out = run_on("koszul-check", "ex2", &["--syzygy", "s^2t^2v, -s^2t v^2, s u v^3"]);
    assert_eq!(code(&out), 0);
    let v = &json(&out)["koszul_verdicts"][0];
    assert_eq!(v["is_koszul"], true);
    assert_eq!(v["certificate"], serde_json::json!(["0", "t", "-v"]));
    assert_eq!(v["module_bidegree"], serde_json::json!([4, 5]));

    let out = run_on("koszul-check", "ex2", &["--syzygy", "s^2, 0, 0"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a syzygy"));
}

#[test]
fn analysis_commands_are_deterministic() {
    let cases: [(&str, &str, &[&str]); 8] = [
        ("basepoints", "ex2", &[]),
        ("saturate", "ex3", &[]),
        ("syzygies", "ex2", &["--vanishing"]),
        ("lci", "i3", &[]),
        ("hilbert", "ex2", &["--module", "vanishing"]),
        ("slice", "ex2", &["--max-degree", "6,6"]),
        ("theorem", "ex3", &[]),
        ("koszul-check", "ex3", &["--syzygy", "sut^4v, 0, -sut^2v^3"]),
    ];
    for (cmd, name, extra) in cases {
        let a = run_on(cmd, name, extra);
        let b = run_on(cmd, name, extra);
        assert_eq!(code(&a), 0, "{cmd}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{cmd}");
        assert_eq!(json(&a)["schema_version"], 1);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["basepoints", "--bogus"])), 1);
    assert_eq!(code(&run(&[])), 1);
    assert_eq!(code(&run(&["basepoints", "/nonexistent/x.ideal"])), 1);
    assert_eq!(code(&run_on("slice", "ex2", &["--at", "4"])), 1);
    assert_eq!(code(&run_on("lci", "ex3", &["--point", "1:1;1:1"])), 1);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.ideal");
    std::fs::write(&bad, "f1 = s^2 + q\n").unwrap();
    let out = run(&["basepoints", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown variable"));

    // The non-LCI ideal still satisfies the biconditional.
    assert_eq!(code(&run_on("theorem", "i3", &[])), 0);
}

#[test]
fn point_and_slice_queries() {
    let v = json(&run_on("lci", "ex2", &["--point", "1:0;1:0"]));
    let r = &v["local_reports"][0];
    assert_eq!((r["multiplicity"].as_u64(), r["tangent_dim"].as_u64()), (Some(2), Some(1)));
    assert_eq!(v["lci_global"], true);

    let v = json(&run_on("slice", "ex2", &["--at", "4,6"]));
    let s = &v["slices"][0];
    assert_eq!(s["equal"], false);
    assert_eq!(s["in_range"], false);
    assert!(s["dim_koszul"].as_u64() < s["dim_vanishing"].as_u64());
}

#[test]
fn hilbert_of_saturation_is_the_degree() {
    let v = json(&run_on("hilbert", "i3", &["--module", "saturation"]));
    let poly = &v["hilbert"][0]["polynomial"];
    assert_eq!(poly["c00"], 6);
    assert_eq!((poly["c10"].as_i64(), poly["c01"].as_i64(), poly["c11"].as_i64()), (Some(0), Some(0), Some(0)));
}

#[test]
fn verify_paper_single_claim() {
    let out = run(&["verify-paper", "--only", "ex2.row6"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("ex2.row6") && lines[0].contains("PASS"));

    assert_eq!(code(&run(&["verify-paper", "--only", "no.such.claim"])), 1);
}

#[test]
fn verify_paper_full_suite() {
    let out = run(&["verify-paper", "--json"]);
    let v = json(&out);
    let claims = v["claims"].as_array().unwrap();
    let ids: Vec<&str> = claims.iter().map(|c| c["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    // The curvilinear example has a third, reduced base point (1:0;0:1), so
    // the two-point list fails; every other claim holds.
    let failed: Vec<&str> = claims
        .iter()
        .filter(|c| c["pass"] == false)
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["ex2.basepoints"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_paper_negative_control() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["ex2", "ex3", "i3"] {
        std::fs::copy(ideal(name), dir.path().join(format!("{name}.ideal"))).unwrap();
    }
    let d = dir.path().to_str().unwrap();
    let ok = run(&["verify-paper", "--inputs", d, "--only", "ex3.theorem", "--only", "ex3.basepoint"]);
    assert_eq!(code(&ok), 0);

    std::fs::write(
        dir.path().join("ex3.ideal"),
        "f1 = s^2*v^2\nf2 = u^2*t^2 + s*u*t*v\nf3 = s^2*t^2\n",
    )
    .unwrap();
    let out = run(&["verify-paper", "--inputs", d, "--json"]);
    assert_eq!(code(&out), 2);
    let v = json(&out);
    let failed: Vec<&str> = v["claims"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["pass"] == false)
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert!(failed.iter().any(|id| id.starts_with("ex3.")), "{failed:?}");
}
