//! `oddquant` command-line front end.
//!
//! Exit codes: 0 success, 1 check failure, 2 input error, 3 divisibility
//! failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use oddquant_core::checks::{run_suite, Suite, DEFAULT_SEED};
use oddquant_core::{
    connected_sum, cut_split, emit_manifest, generate, parse_manifest, qr_report, quantize_even_isolated,
    quantize_odd3, reduce_circles, up_surface_to_3, CodimSign, ConSumSpec, Convention, CutSpec, Error, Family,
    Manifest, NormalFactor, OddManifoldData,
};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "oddquant", version, about = "Fixed-point Spin^c quantization characters for circle actions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct ConventionArgs {
    /// How the normal bundle of a fixed circle enters the formula.
    #[arg(long, default_value = "literal")]
    normal_factor: NormalFactor,
    /// Apply the codimension sign to every fixed circle.
    #[arg(long, default_value = "off")]
    codim_sign: CodimSign,
}

impl From<ConventionArgs> for Convention {
    fn from(a: ConventionArgs) -> Self {
        Convention::new(a.normal_factor, a.codim_sign)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the character of a manifest.
    Quantize {
        path: PathBuf,
        #[command(flatten)]
        conv: ConventionArgs,
    },
    /// Map a surface manifest to the three-manifold `N x S^1`.
    Up { path: PathBuf },
    /// Equivariant connected sum of two three-manifolds.
    Consum {
        m1: PathBuf,
        m2: PathBuf,
        /// JSON file `{"left": id, "right": id, "l": int}`.
        #[arg(long, conflicts_with_all = ["left", "right", "l"])]
        spec: Option<PathBuf>,
        #[arg(long, requires_all = ["right", "l"])]
        left: Option<String>,
        #[arg(long)]
        right: Option<String>,
        #[arg(long, allow_negative_numbers = true)]
        l: Option<i64>,
    },
    /// Cut a three-manifold along a free invariant hypersurface.
    Cut {
        path: PathBuf,
        /// JSON file `{"plus": [ids], "minus": [ids], "seam": [{"mu": int, "a": int}]}`.
        #[arg(long)]
        spec: PathBuf,
    },
    /// Quantization of the reduced circles of a cut.
    Reduce {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Compare the invariant part of Q(M) with the reduced quantization.
    Qr {
        path: PathBuf,
        #[arg(long)]
        spec: PathBuf,
        #[command(flatten)]
        conv: ConventionArgs,
    },
    /// Run a seeded randomized check suite.
    Check {
        suite: Suite,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Defaults to the suite's own case count.
        #[arg(long)]
        cases: Option<usize>,
    },
    /// Emit the manifest of an example family (sphere, s2xs1, s3).
    Generate {
        family: String,
        #[arg(allow_negative_numbers = true)]
        params: Vec<i64>,
    },
}

enum Failure {
    Input(String),
    Divisibility(String),
    Check,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotDivisible(_) => Failure::Divisibility(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_manifest(path: &Path) -> Result<Manifest, Failure> {
    parse_manifest(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_odd(path: &Path) -> Result<OddManifoldData, Failure> {
    match load_manifest(path)? {
        Manifest::Odd(m) => Ok(m),
        Manifest::Even(_) => Err(Failure::Input(format!("{}: expected an odd3 manifest", path.display()))),
    }
}

fn load_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    serde_json::from_str(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

#[derive(Serialize)]
struct CutOutput {
    plus: serde_json::Value,
    minus: serde_json::Value,
}

fn manifest_value(m: OddManifoldData) -> serde_json::Value {
    serde_json::from_str(&emit_manifest(&m.into())).expect("emitted manifests are valid JSON")
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Quantize { path, conv } => {
            let chi = match load_manifest(&path)? {
                Manifest::Odd(m) => quantize_odd3(&m, conv.into())?,
                Manifest::Even(n) => quantize_even_isolated(&n)?,
            };
            Ok(format!("{chi}\n"))
        }
        Command::Up { path } => match load_manifest(&path)? {
            Manifest::Even(n) => Ok(emit_manifest(&up_surface_to_3(&n)?.into())),
            Manifest::Odd(_) => Err(Failure::Input(format!("{}: expected an even manifest", path.display()))),
        },
        Command::Consum { m1, m2, spec, left, right, l } => {
            let spec = match (spec, left, right, l) {
                (Some(path), ..) => load_json::<ConSumSpec>(&path)?,
                (None, Some(left), Some(right), Some(l)) => ConSumSpec { left, right, l },
                _ => return Err(Failure::Input("consum needs --spec or --left/--right/--l".into())),
            };
            let sum = connected_sum(&load_odd(&m1)?, &load_odd(&m2)?, &spec)?;
            Ok(emit_manifest(&sum.into()))
        }
        Command::Cut { path, spec } => {
            let spec: CutSpec = load_json(&spec)?;
            let (plus, minus) = cut_split(&load_odd(&path)?, &spec)?;
            let out = CutOutput { plus: manifest_value(plus), minus: manifest_value(minus) };
            let mut text = serde_json::to_string_pretty(&out).expect("serializable");
            text.push('\n');
            Ok(text)
        }
        Command::Reduce { spec } => {
            let spec: CutSpec = load_json(&spec)?;
            Ok(format!("{}\n", reduce_circles(&spec)))
        }
        Command::Qr { path, spec, conv } => {
            let spec: CutSpec = load_json(&spec)?;
            let report = qr_report(&load_odd(&path)?, &spec, conv.into())?;
            let result = if report.equal { "pass" } else { "fail" };
            Ok(format!("{}result: {result}\n", report.render()))
        }
        Command::Check { suite, seed, cases } => {
            let report = run_suite(suite, seed, cases.unwrap_or_else(|| suite.default_cases()));
            print!("{}", report.render());
            if report.passed() {
                Ok(String::new())
            } else {
                Err(Failure::Check)
            }
        }
        Command::Generate { family, params } => {
            let family: Family = family.parse()?;
            Ok(emit_manifest(&generate(family, &params)?))
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Divisibility(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
