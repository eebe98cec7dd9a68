use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use aqg_core::algebroid::{verify_algebroid, Algebroid};
use aqg_core::duality::{check_biduality, dual_wmha, duality_commutes_check, faithful_left_integral, verify_dual};
use aqg_core::exactla::BilinearForm;
use aqg_core::groupoid::{function_algebra, groupoid_algebra, FiniteGroupoid, GroupoidJson};
use aqg_core::integrals::{
    faithful_combination, is_faithful, solve_left_integrals, solve_right_integrals, verify_integral_pair,
};
use aqg_core::pairing::{verify_algebroid_pairing, DualPair};
use aqg_core::report::{VerificationReport, Witness};
use aqg_core::wmha::WmhaJson;
use aqg_core::{verify_wmha, Error, Mat, WeakHopf, Q};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "aqg", version, about = "Construct and verify finite algebraic quantum groupoids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    /// ℂG with basis u_g
    GroupoidAlgebra,
    /// K(G) with basis δ_g
    Functions,
}

#[derive(Subcommand)]
enum Command {
    /// Build a weak multiplier Hopf algebra from a groupoid file
    Build {
        groupoid: PathBuf,
        #[arg(long, value_enum, default_value = "groupoid-algebra")]
        kind: Kind,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check every axiom and derived identity
    Verify {
        file: PathBuf,
        #[arg(long, value_name = "REPORT")]
        json: Option<PathBuf>,
    },
    /// Solve for left and right integrals and check their partial integrals
    Integrals {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Build the balanced tensor products and canonical maps
    Algebroid { file: PathBuf },
    /// Build the dual from a faithful left integral
    Dualize {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Integral as a JSON list of scalars; found automatically when omitted
        #[arg(long)]
        integral: Option<PathBuf>,
        /// Also write the pairing gram on its own
        #[arg(long)]
        gram: Option<PathBuf>,
    },
    /// Check a pairing between two structures
    Pair {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        form: PathBuf,
        #[arg(long, value_name = "REPORT")]
        json: Option<PathBuf>,
    },
    /// Compare the pairing built from an integral with the one built directly
    CommuteCheck {
        file: PathBuf,
        #[arg(long)]
        integral: Option<PathBuf>,
        #[arg(long, value_name = "REPORT")]
        json: Option<PathBuf>,
    },
    /// Run every suite on one structure
    Report {
        file: PathBuf,
        #[arg(long, value_name = "REPORT")]
        json: Option<PathBuf>,
    },
}

enum Failure {
    Input(String),
    Checks,
}

fn input(path: &Path, e: impl fmt::Display) -> Failure {
    Failure::Input(format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input(path, e))
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    serde_json::from_str(&read(path)?)
        .map_err(|e| input(path, format!("line {}, column {}: {e}", e.line(), e.column())))
}

fn load_wmha(path: &Path) -> Result<WeakHopf, Failure> {
    let j: WmhaJson = parse_json(path)?;
    WeakHopf::from_json(&j).map_err(|e| input(path, e))
}

fn load_functional(path: &Path, n: usize) -> Result<Vec<Q>, Failure> {
    let v: Vec<Q> = parse_json(path)?;
    if v.len() != n {
        return Err(input(path, format!("expected {n} scalars, got {}", v.len())));
    }
    Ok(v)
}

fn write_json(path: &Path, value: &impl serde::Serialize) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    fs::write(path, text + "\n").map_err(|e| input(path, e))
}

fn finish(report: &VerificationReport, json: Option<&Path>) -> Result<(), Failure> {
    println!("{report}");
    if let Some(path) = json {
        write_json(path, report)?;
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

/// Construction errors on well-formed input are verdicts, not input errors.
fn verdict(e: Error) -> Failure {
    match e {
        Error::Parse { .. } | Error::Shape(_) => Failure::Input(e.to_string()),
        other => {
            println!("{other}");
            Failure::Checks
        }
    }
}

fn integral_for(w: &WeakHopf, path: Option<&Path>) -> Result<Vec<Q>, Failure> {
    match path {
        Some(p) => load_functional(p, w.dim()),
        None => faithful_left_integral(w).map_err(verdict),
    }
}

fn strings(v: &[Q]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn integrals(w: &WeakHopf) -> (Value, VerificationReport) {
    let left = solve_left_integrals(w);
    let right = solve_right_integrals(w);
    let mut report = VerificationReport::new(format!("integrals of {}", w.name()));
    let phi = faithful_combination(w, &left);
    let psi = faithful_combination(w, &right);
    report.record(
        "solve.faithful_left",
        "some left integral is faithful",
        phi.as_ref().map(|_| ()).ok_or_else(|| no_faithful("left", left.len())),
    );
    report.record(
        "solve.faithful_right",
        "some right integral is faithful",
        psi.as_ref().map(|_| ()).ok_or_else(|| no_faithful("right", right.len())),
    );
    if let (Some(phi), Some(psi)) = (&phi, &psi) {
        report.merge("", verify_integral_pair(w, phi, psi));
    }
    let describe = |basis: &[Vec<Q>]| -> Vec<Value> {
        basis
            .iter()
            .map(|b| json!({ "coordinates": strings(b), "element": w.describe(b), "faithful": is_faithful(w, b).faithful }))
            .collect()
    };
    let value = json!({
        "left": describe(&left),
        "right": describe(&right),
        "faithful_left": phi.as_deref().map(strings),
        "faithful_right": psi.as_deref().map(strings),
        "faithfulness": phi.as_deref().map(|p| is_faithful(w, p)),
    });
    (value, report)
}

fn no_faithful(side: &str, dim: usize) -> Witness {
    Witness::new(vec![], format!("no faithful element found in the {dim}-dimensional {side} integral space"))
}

fn full_report(w: &WeakHopf) -> VerificationReport {
    let mut r = VerificationReport::new(format!("full report for {}", w.name()));
    let structure = verify_wmha(w);
    let sound = structure.passed();
    r.merge("wmha", structure);
    if !sound {
        r.skip("algebroid", "algebroid suite", "the structure checks fail");
        r.skip("integrals", "integral suite", "the structure checks fail");
        r.skip("dual", "duality suite", "the structure checks fail");
        return r;
    }
    r.merge("algebroid", verify_algebroid(w));
    r.merge("integrals", integrals(w).1);
    match faithful_left_integral(w) {
        Ok(phi) => match dual_wmha(w, &phi) {
            Ok(dc) => {
                r.merge("dual", verify_dual(&dc));
                r.merge("bidual", check_biduality(&dc));
                match duality_commutes_check(w, &phi) {
                    Ok(c) => r.merge("commute", c),
                    Err(e) => r.record("commute.built", "both routes build", Err(Witness::new(vec![], e.to_string()))),
                }
            }
            Err(e) => r.record("dual.built", "the dual builds", Err(Witness::new(vec![], e.to_string()))),
        },
        Err(e) => r.skip("dual", "duality suite", e.to_string()),
    }
    r
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Build { groupoid, kind, output } => {
            let j: GroupoidJson = parse_json(&groupoid)?;
            let g = FiniteGroupoid::from_json(&j).map_err(|e| input(&groupoid, e))?;
            let w = match kind {
                Kind::GroupoidAlgebra => groupoid_algebra(&g),
                Kind::Functions => function_algebra(&g),
            }
            .map_err(verdict)?;
            match output {
                Some(path) => write_json(&path, &w.to_json()),
                None => {
                    println!("{}", serde_json::to_string_pretty(&w.to_json()).expect("serializable"));
                    Ok(())
                }
            }
        }
        Command::Verify { file, json } => finish(&verify_wmha(&load_wmha(&file)?), json.as_deref()),
        Command::Integrals { file, json } => {
            let w = load_wmha(&file)?;
            let (value, report) = integrals(&w);
            if json {
                println!("{}", serde_json::to_string_pretty(&json!({ "integrals": value, "report": report })).expect("serializable"));
            } else {
                for side in ["left", "right"] {
                    println!("{side} integrals:");
                    for b in value[side].as_array().into_iter().flatten() {
                        println!("  {}  faithful: {}", b["element"].as_str().unwrap_or(""), b["faithful"]);
                    }
                }
                println!("{report}");
            }
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Checks)
            }
        }
        Command::Algebroid { file } => {
            let w = load_wmha(&file)?;
            let report = verify_algebroid(&w);
            let summary = Algebroid::new(&w).ok().map(|a| a.summary(&w));
            let out = json!({ "summary": summary, "report": report });
            println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
            if report.passed() && summary.is_some() {
                Ok(())
            } else {
                Err(Failure::Checks)
            }
        }
        Command::Dualize { file, output, integral, gram } => {
            let w = load_wmha(&file)?;
            let phi = integral_for(&w, integral.as_deref())?;
            let dc = dual_wmha(&w, &phi).map_err(verdict)?;
            let mut value = serde_json::to_value(dc.dual().to_json()).expect("serializable");
            value["pairing_gram"] = serde_json::to_value(dc.basis_map()).expect("serializable");
            value["integral"] = json!(strings(&phi));
            write_json(&output, &value)?;
            if let Some(path) = gram {
                write_json(&path, dc.basis_map())?;
            }
            println!("wrote the {}-dimensional dual to {}", dc.dual().dim(), output.display());
            Ok(())
        }
        Command::Pair { left, right, form, json } => {
            let (a, b) = (load_wmha(&left)?, load_wmha(&right)?);
            let gram: Mat = parse_json(&form)?;
            if gram.shape() != (a.dim(), b.dim()) {
                return Err(input(&form, format!("expected a {}x{} matrix, got {}x{}", a.dim(), b.dim(), gram.rows(), gram.cols())));
            }
            let p = DualPair::new(a, b, BilinearForm::new(gram)).map_err(verdict)?;
            finish(&verify_algebroid_pairing(&p), json.as_deref())
        }
        Command::CommuteCheck { file, integral, json } => {
            let w = load_wmha(&file)?;
            let phi = integral_for(&w, integral.as_deref())?;
            let report = duality_commutes_check(&w, &phi).map_err(verdict)?;
            finish(&report, json.as_deref())
        }
        Command::Report { file, json } => finish(&full_report(&load_wmha(&file)?), json.as_deref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
