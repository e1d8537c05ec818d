mod claims;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bisyz_core::geometry::BaseLocusAnalysis;
use bisyz_core::groebner::GroebnerBasis;
use bisyz_core::hilbert::{self, hilbert_function_gb, hilbert_polynomial_gb, Part};
use bisyz_core::koszul::KoszulData;
use bisyz_core::module::SubmodulePresentation;
use bisyz_core::saturation::{is_saturated, saturate};
use bisyz_core::textio::{
    self, hilbert_poly_json, serialize_report, HilbertTableJson, IdealSpec, Report,
    SaturationJson,
};
use bisyz_core::{BiDegree, Error};
use clap::{Parser, Subcommand, ValueEnum};

const EXIT_USAGE: u8 = 1;
const EXIT_VERIFY: u8 = 2;

#[derive(Parser)]
#[command(name = "bisyz", version, about = "Syzygies and base points of bihomogeneous ideals on P1 x P1")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rational base points and their local invariants.
    Basepoints(Input),
    /// Saturation of the ideal by the irrelevant ideal.
    Saturate(Input),
    /// Generators of the syzygy module S (or of V with --vanishing).
    Syzygies {
        #[command(flatten)]
        input: Input,
        /// Report the syzygies vanishing at the base points instead.
        #[arg(long)]
        vanishing: bool,
    },
    /// Classify a syzygy: vanishing, Koszul (with certificate), in range.
    KoszulCheck {
        #[command(flatten)]
        input: Input,
        /// The syzygy as "p1, p2, p3".
        #[arg(long)]
        syzygy: String,
    },
    /// Local complete intersection test, globally and at rational points.
    Lci {
        #[command(flatten)]
        input: Input,
        /// Restrict the local report to one point "s:u;t:v".
        #[arg(long)]
        point: Option<String>,
    },
    /// Hilbert function table and Hilbert polynomial.
    Hilbert {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = HilbertTarget::Quotient)]
        module: HilbertTarget,
        /// Largest bidegree in the table.
        #[arg(long, value_name = "K,K'", default_value = "6,6")]
        max_degree: String,
    },
    /// Compare dim K and dim V in module bidegrees.
    Slice {
        #[command(flatten)]
        input: Input,
        /// A single module bidegree.
        #[arg(long, value_name = "K,K'")]
        at: Option<String>,
        /// Sweep all bidegrees up to this one.
        #[arg(long, value_name = "K,K'", default_value = "9,9")]
        max_degree: String,
    },
    /// Check K^sat = V against the global LCI test and the Hilbert closed forms.
    Theorem(Input),
    /// Run the reproduction suite on the bundled ideals.
    VerifyPaper {
        /// Machine-readable output.
        #[arg(long)]
        json: bool,
        /// Run only the named claims (repeatable).
        #[arg(long, value_name = "CLAIM-ID")]
        only: Vec<String>,
        /// Read ex2.ideal, ex3.ideal, i3.ideal from this directory instead.
        #[arg(long, value_name = "DIR")]
        inputs: Option<PathBuf>,
        /// List claim ids and exit.
        #[arg(long)]
        list: bool,
    },
}

#[derive(clap::Args)]
struct Input {
    /// Ideal file: one `name = polynomial [@ (a,b)]` per line.
    file: PathBuf,
    /// Accepted for symmetry with verify-paper; reports are always JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum HilbertTarget {
    /// R/I
    Quotient,
    /// R/I^sat
    Saturation,
    /// S
    Syzygies,
    /// K
    Koszul,
    /// V
    Vanishing,
}

enum Failure {
    Input(String),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn load(path: &Path) -> Result<IdealSpec, Failure> {
    textio::parse_ideal_file(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn bidegree_arg(text: &str) -> Result<BiDegree, Failure> {
    let d = textio::parse_bidegree(text)?;
    if !d.is_nonnegative() {
        return Err(Failure::Input(format!("negative bidegree {d}")));
    }
    Ok(d)
}

fn emit(report: &Report) {
    print!("{}", serialize_report(report));
}

fn basepoints(input: &Input) -> Result<(), Failure> {
    let spec = load(&input.file)?;
    let a = BaseLocusAnalysis::new(&spec.generators)?;
    let mut report = Report::new().with_ideal(&spec).with_locus(&a.locus);
    if a.locus.complete {
        report = report.with_local_reports(&a.local_reports()?);
    }
    emit(&report);
    Ok(())
}

fn saturate_cmd(input: &Input) -> Result<(), Failure> {
    let spec = load(&input.file)?;
    let m = SubmodulePresentation::ideal(&spec.generators);
    let sat = saturate(&m);
    let mut report = Report::new().with_ideal(&spec);
    report.saturation = Some(SaturationJson {
        generators: sat
            .module
            .as_ideal_generators()
            .iter()
            .map(textio::serialize_poly)
            .collect(),
        exponents: sat.exponents.clone(),
        input_is_saturated: GroebnerBasis::compute(&m).contains_all(&sat.module)?,
    });
    emit(&report);
    Ok(())
}

fn syzygies(input: &Input, vanishing: bool) -> Result<(), Failure> {
    let spec = load(&input.file)?;
    let module = if vanishing {
        KoszulData::build(&spec.generators)?.vanishing
    } else {
        bisyz_core::groebner::syzygy_module(&SubmodulePresentation::ideal(&spec.generators))
    };
    emit(&Report::new().with_ideal(&spec).with_module(&module));
    Ok(())
}

fn koszul_check(input: &Input, syzygy: &str) -> Result<(), Failure> {
    let spec = load(&input.file)?;
    let kd = KoszulData::build(&spec.generators)?;
    let x = textio::parse_syzygy(syzygy, &kd.twists)?;
    let verdict = kd.is_koszul(&x)?;
    let mut report = Report::new().with_ideal(&spec);
    report.push_verdict(&verdict);
    emit(&report);
    Ok(())
}

fn lci(input: &Input, point: Option<&str>) -> Result<(), Failure> {
    let spec = load(&input.file)?;
    let g = &spec.generators;
    let a = BaseLocusAnalysis::new(g)?;
    let mut report = Report::new().with_ideal(&spec).with_locus(&a.locus);
    match point {
        Some(text) => {
            let p = textio::parse_point(text)?;
            report = report.with_local_reports(&[a.local_report(&p)?]);
        }
        None if a.locus.complete => report = report.with_local_reports(&a.local_reports()?),
        None => {}
    }
    let deg = hilbert::degree_of_z(g)?;
    let con = hilbert::conormal_hilbert_constant(g)?;
    report.degree_of_z = Some(deg);
    report.conormal_constant = Some(con);
    report.lci_global = Some(con == 2 * deg);
    emit(&report);
    Ok(())
}

fn hilbert_cmd(input: &Input, target: HilbertTarget, max: &str) -> Result<(), Failure> {
    let spec = load(&input.file)?;
    let max = bidegree_arg(max)?;
    let g = &spec.generators;
    let (name, gb, part, bound) = match target {
        HilbertTarget::Quotient | HilbertTarget::Saturation => {
            let m = SubmodulePresentation::ideal(g);
            let (name, m) = match target {
                HilbertTarget::Quotient => ("R/I", m),
                _ => ("R/I^sat", saturate(&m).module),
            };
            let gb = GroebnerBasis::compute(&m);
            let bound = hilbert::default_bound(&gb);
            (name, gb, Part::Quotient, bound)
        }
        _ => {
            let kd = KoszulData::build(g)?;
            let bound = kd.hilbert_bound();
            let (name, gb) = match target {
                HilbertTarget::Syzygies => ("S", kd.gb_syzygies),
                HilbertTarget::Koszul => ("K", kd.gb_koszul),
                _ => ("V", kd.gb_vanishing),
            };
            (name, gb, Part::Submodule, bound)
        }
    };
    let values = (0..=max.first)
        .map(|k| {
            (0..=max.second)
                .map(|kp| hilbert_function_gb(&gb, part, BiDegree::new(k, kp)))
                .collect()
        })
        .collect();
    let polynomial = hilbert_polynomial_gb(&gb, part, bound).ok().map(|p| hilbert_poly_json(&p));
    let mut report = Report::new().with_ideal(&spec);
    report.hilbert = Some(vec![HilbertTableJson {
        module: name.to_string(),
        values,
        polynomial,
    }]);
    emit(&report);
    Ok(())
}

fn slice(input: &Input, at: Option<&str>, max: &str) -> Result<(), Failure> {
    let spec = load(&input.file)?;
    let kd = KoszulData::build(&spec.generators)?;
    let points = match at {
        Some(a) => vec![textio::parse_bidegree(a)?],
        None => {
            let max = bidegree_arg(max)?;
            (0..=max.first)
                .flat_map(|k| (0..=max.second).map(move |kp| BiDegree::new(k, kp)))
                .collect()
        }
    };
    let mut report = Report::new().with_ideal(&spec);
    for d in points {
        report.push_slice(&kd.slice_compare(d), kd.range_predicate(d));
    }
    emit(&report);
    Ok(())
}

fn theorem(input: &Input) -> Result<(), Failure> {
    let spec = load(&input.file)?;
    let kd = KoszulData::build(&spec.generators)?;
    let th = kd.theorem_check()?;
    let mut report = Report::new().with_ideal(&spec).with_theorem(&th);
    report.degree_of_z = Some(th.degree_of_z);
    report.conormal_constant = Some(th.conormal_constant);
    report.lci_global = Some(th.lci_global);
    emit(&report);
    if !(th.biconditional_holds && th.hp_ksat_matches && th.hp_v_matches) {
        return Err(Failure::Verify("K^sat = V <=> LCI or a Hilbert closed form failed".into()));
    }
    if !is_saturated(&kd.vanishing) {
        return Err(Failure::Verify("V is not saturated".into()));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Basepoints(i) => basepoints(i),
        Command::Saturate(i) => saturate_cmd(i),
        Command::Syzygies { input, vanishing } => syzygies(input, *vanishing),
        Command::KoszulCheck { input, syzygy } => koszul_check(input, syzygy),
        Command::Lci { input, point } => lci(input, point.as_deref()),
        Command::Hilbert {
            input,
            module,
            max_degree,
        } => hilbert_cmd(input, *module, max_degree),
        Command::Slice {
            input,
            at,
            max_degree,
        } => slice(input, at.as_deref(), max_degree),
        Command::Theorem(i) => theorem(i),
        Command::VerifyPaper {
            json,
            only,
            inputs,
            list,
        } => claims::verify_paper(*json, only, inputs.as_deref(), *list),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Verify(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(EXIT_VERIFY)
        }
    }
}
