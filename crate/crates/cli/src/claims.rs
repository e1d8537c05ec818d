//! The reproduction suite behind `bisyz verify-paper`.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::OnceLock;
use std::time::Instant;

use bisyz_core::bundled;
use bisyz_core::geometry::{BaseLocusAnalysis, LocalReport};
use bisyz_core::groebner::GroebnerBasis;
use bisyz_core::hilbert::HilbertPoly2;
use bisyz_core::koszul::{KoszulData, TheoremReport};
use bisyz_core::module::{ModuleElement, SubmodulePresentation};
use bisyz_core::saturation::{irrelevant_power_kills, is_saturated};
use bisyz_core::textio::{self, IdealSpec};
use bisyz_core::{BiDegree, BiPoly, Q};
use serde::Serialize;

use crate::Failure;

type Outcome = Result<(bool, String), String>;

struct Claim {
    id: &'static str,
    ideal: &'static str,
    location: &'static str,
    check: fn(&Ctx) -> Outcome,
}

/// Everything computed for one ideal, built on first use and shared by
/// all claims about it.
struct Ctx {
    spec: IdealSpec,
    analysis: OnceLock<Result<BaseLocusAnalysis, String>>,
    koszul: OnceLock<Result<KoszulData, String>>,
    theorem: OnceLock<Result<TheoremReport, String>>,
}

impl Ctx {
    fn new(spec: IdealSpec) -> Self {
        Ctx {
            spec,
            analysis: OnceLock::new(),
            koszul: OnceLock::new(),
            theorem: OnceLock::new(),
        }
    }

    fn gens(&self) -> &[BiPoly] {
        &self.spec.generators
    }

    fn analysis(&self) -> Result<&BaseLocusAnalysis, String> {
        self.analysis
            .get_or_init(|| BaseLocusAnalysis::new(self.gens()).map_err(|e| e.to_string()))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn kd(&self) -> Result<&KoszulData, String> {
        self.koszul
            .get_or_init(|| KoszulData::build(self.gens()).map_err(|e| e.to_string()))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn theorem(&self) -> Result<&TheoremReport, String> {
        self.theorem
            .get_or_init(|| self.kd()?.theorem_check().map_err(|e| e.to_string()))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn report_at(&self, point: &str) -> Result<LocalReport, String> {
        let p = textio::parse_point(point).map_err(|e| e.to_string())?;
        self.analysis()?.local_report(&p).map_err(|e| e.to_string())
    }

    fn vector(&self, entries: [&str; 3]) -> Result<ModuleElement<Q>, String> {
        let kd = self.kd()?;
        let comps = entries.iter().map(|e| poly(e)).collect::<Result<Vec<_>, _>>()?;
        kd.vector(comps).map_err(|e| e.to_string())
    }
}

fn poly(text: &str) -> Result<BiPoly, String> {
    textio::parse_poly(text).map_err(|e| e.to_string())
}

fn err<E: ToString>(e: E) -> String {
    e.to_string()
}

fn all_bidegrees(c: &Ctx, d: BiDegree) -> Outcome {
    let got = c.spec.bidegrees();
    let shown: Vec<String> = got.iter().map(|g| g.to_string()).collect();
    Ok((got.iter().all(|g| *g == d), shown.join(" ")))
}

fn points_equal(c: &Ctx, expected: &[&str]) -> Outcome {
    let a = c.analysis()?;
    let mut want = expected
        .iter()
        .map(|s| textio::parse_point(s).map_err(err))
        .collect::<Result<Vec<_>, _>>()?;
    want.sort();
    let mut got = a.locus.rational_points.clone();
    got.sort();
    let detail = format!("found {got:?}, complete={}", a.locus.complete);
    Ok((got == want && a.locus.complete, detail))
}

fn certificate(c: &Ctx, x: &ModuleElement<Q>, expected: [&str; 3]) -> Outcome {
    let kd = c.kd()?;
    let v = kd.is_koszul(x).map_err(err)?;
    let want = expected.iter().map(|e| poly(e)).collect::<Result<Vec<_>, _>>()?;
    let Some(q) = v.certificate else {
        return Ok((false, "not Koszul".into()));
    };
    let mut acc = ModuleElement::zero(&kd.twists);
    for (qi, k) in q.iter().zip(&kd.koszul.generators) {
        acc = acc.add(&k.scale_poly(qi)).map_err(err)?;
    }
    let shown: Vec<String> = q.iter().map(textio::serialize_poly).collect();
    Ok((q == want && &acc == x, format!("cofactors ({})", shown.join(", "))))
}

fn not_koszul(c: &Ctx, xs: &[ModuleElement<Q>]) -> Outcome {
    let kd = c.kd()?;
    let mut degrees = Vec::new();
    for x in xs {
        let v = kd.is_koszul(x).map_err(err)?;
        if v.is_koszul || !v.vanishes_at_base_points {
            return Ok((false, format!("{x:?}: koszul={} vanishing={}", v.is_koszul, v.vanishes_at_base_points)));
        }
        degrees.push(x.pure_degree().map_err(err)?.to_string());
    }
    Ok((true, format!("pure degrees {}", degrees.join(" "))))
}

const EX2_ROWS: [[&str; 3]; 9] = [
    ["u^2t^2+suv^2", "-u^2tv", "0"],
    ["s^2tv", "0", "-u^2tv"],
    ["0", "s^2tv", "-u^2t^2-suv^2"],
    ["ut^3v+stv^3", "-ut^2v^2", "0"],
    ["st^3v", "-st^2v^2", "utv^3"],
    ["s^2t^2v", "-s^2tv^2", "suv^3"],
    ["s^3uv", "0", "-su^3v"],
    ["s^2u^2t", "0", "-u^4t"],
    ["s^3u^2", "0", "-su^4"],
];

fn ex2_row(c: &Ctx, i: usize) -> Result<ModuleElement<Q>, String> {
    c.vector(EX2_ROWS[i - 1])
}

const EX3_SYZYGIES: [[&str; 3]; 2] = [["sut^4v", "0", "-sut^2v^3"], ["0", "s^4utv", "-s^2u^3tv"]];

fn local(c: &Ctx, point: &str, mult: u64, tangent: u64) -> Outcome {
    let r = c.report_at(point)?;
    Ok((
        r.multiplicity == mult && r.tangent_dim == tangent,
        format!("{point}: multiplicity {}, tangent dim {}", r.multiplicity, r.tangent_dim),
    ))
}

fn proper_submodule(c: &Ctx) -> Outcome {
    let kd = c.kd()?;
    let k_in_s = kd.gb_syzygies.contains_all(&kd.koszul).map_err(err)?;
    let s_in_k = kd.gb_koszul.contains_all(&kd.syzygies).map_err(err)?;
    Ok((k_in_s && !s_in_k, format!("K ⊆ S: {k_in_s}, S ⊆ K: {s_in_k}")))
}

fn saturated(c: &Ctx) -> Outcome {
    let kd = c.kd()?;
    let v = is_saturated(&kd.vanishing);
    let s = is_saturated(&kd.syzygies);
    Ok((v && s, format!("V saturated: {v}, S saturated: {s}")))
}

fn theorem_lci(c: &Ctx) -> Outcome {
    let th = c.theorem()?;
    Ok((
        th.ksat_equals_v && th.lci_global && th.biconditional_holds,
        format!(
            "K^sat = V: {}, H(I/I^2) = {}, 2 deg Z = {}",
            th.ksat_equals_v,
            th.conormal_constant,
            2 * th.degree_of_z
        ),
    ))
}

fn hp_text(p: &HilbertPoly2) -> String {
    format!("{}kk' {:+}k {:+}k' {:+}", p.c11, p.c10, p.c01, p.c00)
}

fn hp_v(c: &Ctx) -> Outcome {
    let th = c.theorem()?;
    Ok((th.hp_v_matches, format!("HP(V) = {}", hp_text(&th.hp_v))))
}

fn slice(c: &Ctx, at: BiDegree, strict: bool) -> Outcome {
    let s = c.kd()?.slice_compare(at);
    let ok = if strict { s.dim_koszul < s.dim_vanishing } else { s.equal };
    Ok((ok, format!("at {at}: dim K = {}, dim V = {}", s.dim_koszul, s.dim_vanishing)))
}

static CLAIMS: &[Claim] = &[
    Claim {
        id: "ex2.basepoints",
        ideal: "ex2",
        location: "curvilinear example: base points p, p'",
        check: |c| points_equal(c, &["0:1;0:1", "1:0;1:0"]),
    },
    Claim {
        id: "ex2.bidegrees",
        ideal: "ex2",
        location: "curvilinear example: generators of degree (2,2)",
        check: |c| all_bidegrees(c, BiDegree::new(2, 2)),
    },
    Claim {
        id: "ex2.curvilinear",
        ideal: "ex2",
        location: "curvilinear example: \"These are curvilinear\"",
        check: |c| {
            let (a, b) = (c.report_at("0:1;0:1")?, c.report_at("1:0;1:0")?);
            Ok((a.curvilinear && b.curvilinear, format!("tangent dims {} and {}", a.tangent_dim, b.tangent_dim)))
        },
    },
    Claim {
        id: "ex2.degree-forbidden",
        ideal: "ex2",
        location: "curvilinear example: rows 4, 5, 7, 8, 9 not Koszul",
        check: |c| {
            let rows = [4, 5, 7, 8, 9].map(|i| ex2_row(c, i));
            not_koszul(c, &rows.into_iter().collect::<Result<Vec<_>, _>>()?)
        },
    },
    Claim {
        id: "ex2.hp-ksat",
        ideal: "ex2",
        location: "LCI theorem proof: HP(K^sat) closed form",
        check: |c| {
            let th = c.theorem()?;
            // 3(k-1)(k'-1) - (k+1)(k'+1)
            let expected = HilbertPoly2 {
                c11: 2,
                c10: -4,
                c01: -4,
                c00: 2,
                stabilization_corner: BiDegree::default(),
            };
            Ok((th.hp_ksat.same_polynomial(&expected), format!("HP(K^sat) = {}", hp_text(&th.hp_ksat))))
        },
    },
    Claim {
        id: "ex2.hp-v",
        ideal: "ex2",
        location: "LCI theorem proof: HP(V) closed form",
        check: hp_v,
    },
    Claim {
        id: "ex2.koszul-rows",
        ideal: "ex2",
        location: "curvilinear example: Koszul syzygies are the first three rows",
        check: |c| {
            let kd = c.kd()?;
            let rows = (1..=3).map(|i| ex2_row(c, i)).collect::<Result<Vec<_>, _>>()?;
            Ok((kd.koszul.generators == rows, String::new()))
        },
    },
    Claim {
        id: "ex2.lci",
        ideal: "ex2",
        location: "curvilinear implies LCI",
        check: |c| {
            let (a, b) = (c.report_at("0:1;0:1")?, c.report_at("1:0;1:0")?);
            Ok((a.lci && b.lci, format!("conormal dims {} and {}", a.conormal_dim, b.conormal_dim)))
        },
    },
    Claim {
        id: "ex2.local-ideals",
        ideal: "ex2",
        location: "curvilinear example: I_p = <s,t>, I_p' = <v,u^2>",
        check: |c| {
            let (a, da) = local(c, "0:1;0:1", 1, 0)?;
            let (b, db) = local(c, "1:0;1:0", 2, 1)?;
            Ok((a && b, format!("{da}; {db}")))
        },
    },
    Claim {
        id: "ex2.matrix",
        ideal: "ex2",
        location: "curvilinear example: 9-row matrix generates V",
        check: |c| {
            let kd = c.kd()?;
            let rows = (1..=9).map(|i| ex2_row(c, i)).collect::<Result<Vec<_>, _>>()?;
            let pres = SubmodulePresentation::new(kd.twists.clone(), rows).map_err(err)?;
            let fwd = kd.gb_vanishing.contains_all(&pres).map_err(err)?;
            let back = GroebnerBasis::compute(&pres).contains_all(&kd.vanishing).map_err(err)?;
            Ok((fwd && back, format!("rows ⊆ V: {fwd}, V ⊆ rows: {back}")))
        },
    },
    Claim {
        id: "ex2.proper",
        ideal: "ex2",
        location: "K is a proper submodule of S",
        check: proper_submodule,
    },
    Claim {
        id: "ex2.row6",
        ideal: "ex2",
        location: "curvilinear example: sixth row = t*K2 - v*K3",
        check: |c| certificate(c, &ex2_row(c, 6)?, ["0", "t", "-v"]),
    },
    Claim {
        id: "ex2.saturated",
        ideal: "ex2",
        location: "V and S are saturated",
        check: saturated,
    },
    Claim {
        id: "ex2.slice-4-6",
        ideal: "ex2",
        location: "corollary: uv of degree (2,4) not Koszul, dim K < dim V",
        check: |c| slice(c, BiDegree::new(4, 6), true),
    },
    Claim {
        id: "ex2.slice-5-6",
        ideal: "ex2",
        location: "corollary: degree (3,4) on the range boundary, dim K = dim V",
        check: |c| slice(c, BiDegree::new(5, 6), false),
    },
    Claim {
        id: "ex2.sv",
        ideal: "ex2",
        location: "curvilinear example: s*v = t^2*K2 - tv*K3; s^2 v, su v Koszul",
        check: |c| {
            let v = ex2_row(c, 5)?;
            let (ok, detail) = certificate(c, &v.scale_poly(&poly("s")?), ["0", "t^2", "-tv"])?;
            let kd = c.kd()?;
            let more = ["s^2", "su"].iter().try_fold(true, |acc, m| -> Result<bool, String> {
                Ok(acc && kd.is_koszul(&v.scale_poly(&poly(m)?)).map_err(err)?.is_koszul)
            })?;
            Ok((ok && more, detail))
        },
    },
    Claim {
        id: "ex2.theorem",
        ideal: "ex2",
        location: "LCI theorem: K^sat = V and LCI",
        check: theorem_lci,
    },
    Claim {
        id: "ex2.u2v",
        ideal: "ex2",
        location: "curvilinear example: u^2*v = stv*K1 - uv^2*K2",
        check: |c| certificate(c, &ex2_row(c, 5)?.scale_poly(&poly("u^2")?), ["stv", "-uv^2", "0"]),
    },
    Claim {
        id: "ex2.uv",
        ideal: "ex2",
        location: "curvilinear example: u*v not Koszul",
        check: |c| not_koszul(c, &[ex2_row(c, 5)?.scale_poly(&poly("u")?)]),
    },
    Claim {
        id: "ex3.basepoint",
        ideal: "ex3",
        location: "fat point example: only base point (0:1;0:1)",
        check: |c| points_equal(c, &["0:1;0:1"]),
    },
    Claim {
        id: "ex3.bidegrees",
        ideal: "ex3",
        location: "fat point example: generators of degree (2,2)",
        check: |c| all_bidegrees(c, BiDegree::new(2, 2)),
    },
    Claim {
        id: "ex3.hp-v",
        ideal: "ex3",
        location: "LCI theorem proof: HP(V) closed form",
        check: hp_v,
    },
    Claim {
        id: "ex3.koszul-generators",
        ideal: "ex3",
        location: "fat point example: Koszul generators",
        check: |c| {
            let kd = c.kd()?;
            let want = [
                ["u^2t^2", "-s^2v^2", "0"],
                ["s^2t^2", "0", "-s^2v^2"],
                ["0", "s^2t^2", "-u^2t^2"],
            ]
            .map(|r| c.vector(r));
            let want = want.into_iter().collect::<Result<Vec<_>, _>>()?;
            let in_s = kd.gb_syzygies.contains(&want[0]).map_err(err)?;
            Ok((kd.koszul.generators == want && in_s, String::new()))
        },
    },
    Claim {
        id: "ex3.lci",
        ideal: "ex3",
        location: "fat point example: the base point is LCI",
        check: |c| {
            let r = c.report_at("0:1;0:1")?;
            let th = c.theorem()?;
            Ok((
                r.lci && th.lci_global && th.conormal_constant == 8 && th.degree_of_z == 4,
                format!("H(I/I^2) = {}, deg Z = {}", th.conormal_constant, th.degree_of_z),
            ))
        },
    },
    Claim {
        id: "ex3.local-ideal",
        ideal: "ex3",
        location: "fat point example: I_p = <s^2, t^2>",
        check: |c| local(c, "0:1;0:1", 4, 2),
    },
    Claim {
        id: "ex3.not-koszul",
        ideal: "ex3",
        location: "fat point example: neither syzygy is Koszul",
        check: |c| {
            let xs = EX3_SYZYGIES.map(|r| c.vector(r));
            not_koszul(c, &xs.into_iter().collect::<Result<Vec<_>, _>>()?)
        },
    },
    Claim {
        id: "ex3.proper",
        ideal: "ex3",
        location: "K is a proper submodule of S",
        check: proper_submodule,
    },
    Claim {
        id: "ex3.range",
        ideal: "ex3",
        location: "fat point example: degrees (2,5) and (5,2) outside the range",
        check: |c| {
            let kd = c.kd()?;
            let mut degs = Vec::new();
            let mut ok = true;
            for r in EX3_SYZYGIES {
                let d = c.vector(r)?.bidegree().map_err(err)?;
                ok &= !kd.range_predicate(d);
                degs.push(d.to_string());
            }
            Ok((ok, format!("module degrees {}", degs.join(" "))))
        },
    },
    Claim {
        id: "ex3.saturated",
        ideal: "ex3",
        location: "V and S are saturated",
        check: saturated,
    },
    Claim {
        id: "ex3.theorem",
        ideal: "ex3",
        location: "LCI theorem: K^sat = V and LCI",
        check: theorem_lci,
    },
    Claim {
        id: "ex3.vanish",
        ideal: "ex3",
        location: "fat point example: m * syzygy ⊂ I",
        check: |c| {
            let kd = c.kd()?;
            let gb = GroebnerBasis::ideal(c.gens());
            let mut ok = true;
            for r in EX3_SYZYGIES {
                let x = c.vector(r)?;
                ok &= kd.verify_vanishing(&x).map_err(err)?;
                for comp in &x.components {
                    let e = ModuleElement::new(vec![comp.clone()], vec![BiDegree::default()]).map_err(err)?;
                    ok &= irrelevant_power_kills(&gb, &e, 1);
                }
            }
            Ok((ok, String::new()))
        },
    },
    Claim {
        id: "i3.hp-v",
        ideal: "i3",
        location: "LCI theorem proof: HP(V) closed form",
        check: hp_v,
    },
    Claim {
        id: "i3.theorem",
        ideal: "i3",
        location: "LCI theorem: not LCI, so K^sat ≠ V",
        check: |c| {
            let th = c.theorem()?;
            let sep = th.separating_element.is_some();
            Ok((
                !th.ksat_equals_v && !th.lci_global && th.biconditional_holds && sep,
                format!(
                    "K^sat = V: {}, H(I/I^2) = {}, 2 deg Z = {}",
                    th.ksat_equals_v,
                    th.conormal_constant,
                    2 * th.degree_of_z
                ),
            ))
        },
    },
];

#[derive(Serialize)]
struct ClaimResult {
    id: &'static str,
    location: &'static str,
    pass: bool,
    detail: String,
    millis: u128,
}

#[derive(Serialize)]
struct SuiteReport {
    schema_version: u32,
    passed: usize,
    failed: usize,
    claims: Vec<ClaimResult>,
}

fn load_inputs(dir: Option<&Path>, names: &[&str]) -> Result<BTreeMap<String, Ctx>, Failure> {
    let mut out = BTreeMap::new();
    for &name in names {
        let spec = match dir {
            Some(d) => crate::load(&d.join(format!("{name}.ideal")))?,
            None => bundled::ideal(name).expect("bundled ideal"),
        };
        out.insert(name.to_string(), Ctx::new(spec));
    }
    Ok(out)
}

pub fn verify_paper(json: bool, only: &[String], inputs: Option<&Path>, list: bool) -> Result<(), Failure> {
    if list {
        for c in CLAIMS {
            println!("{:<24} {}", c.id, c.location);
        }
        return Ok(());
    }
    for id in only {
        if !CLAIMS.iter().any(|c| c.id == id) {
            return Err(Failure::Input(format!("unknown claim id '{id}' (see --list)")));
        }
    }
    let selected: Vec<&Claim> = CLAIMS
        .iter()
        .filter(|c| only.is_empty() || only.iter().any(|o| o == c.id))
        .collect();
    let mut names: Vec<&str> = selected.iter().map(|c| c.ideal).collect();
    names.dedup();
    names.sort();
    names.dedup();
    let ctxs = load_inputs(inputs, &names)?;

    // One thread per ideal; claims about the same ideal share its cache.
    let mut results: Vec<ClaimResult> = std::thread::scope(|scope| {
        let handles: Vec<_> = ctxs
            .iter()
            .map(|(name, ctx)| {
                let mine: Vec<&Claim> = selected.iter().copied().filter(|c| c.ideal == name).collect();
                scope.spawn(move || {
                    mine.into_iter()
                        .map(|claim| {
                            let start = Instant::now();
                            let (pass, detail) = match (claim.check)(ctx) {
                                Ok(r) => r,
                                Err(e) => (false, format!("error: {e}")),
                            };
                            ClaimResult {
                                id: claim.id,
                                location: claim.location,
                                pass,
                                detail,
                                millis: start.elapsed().as_millis(),
                            }
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().unwrap()).collect()
    });
    results.sort_by_key(|r| r.id);

    let failed = results.iter().filter(|r| !r.pass).count();
    let report = SuiteReport {
        schema_version: textio::SCHEMA_VERSION,
        passed: results.len() - failed,
        failed,
        claims: results,
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    } else {
        let w = report.claims.iter().map(|r| r.location.chars().count()).max().unwrap_or(0);
        for r in &report.claims {
            let loc = format!("{:<w$}", r.location);
            println!(
                "{:<24} {loc}  {}  {:>6} ms  {}",
                r.id,
                if r.pass { "PASS" } else { "FAIL" },
                r.millis,
                r.detail
            );
        }
        println!("{} passed, {} failed", report.passed, report.failed);
    }
    if failed > 0 {
        return Err(Failure::Verify(format!("{failed} claim(s) failed")));
    }
    Ok(())
}
