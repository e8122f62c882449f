//! Command-line front end: argument types, dispatch and exit codes.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use sl2calc_core::basechange::BcSpec;
use sl2calc_core::tadic::UnitaryRep;

use crate::harness::{self, VerifyConfig};
use crate::parse::{parse_multisegment, parse_rep};
use crate::print::{rep_string, wd_string};

pub const EXIT_OK: i32 = 0;
/// Parse or usage error.
pub const EXIT_USAGE: i32 = 1;
/// Spec file failed to load or validate, or its domain does not cover the
/// input.
pub const EXIT_SPEC: i32 = 2;
/// The harness found a counterexample to a structural identity.
pub const EXIT_VIOLATION: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "sl2calc",
    version,
    about = "Symbolic calculator for SL(2)-types, Klyachko types and base change of GL(n) representation data"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the SL(2)-type of a product of unitary forms
    Sl2type(ExprArgs),
    /// Print the Klyachko type (r, 2k) of a product of unitary forms
    Klyachko(ExprArgs),
    /// Print the transpose of a product of unitary forms
    Transpose(ExprArgs),
    /// Print the Weil-Deligne skeleton of a product of unitary forms
    Rec(ExprArgs),
    /// Print the SL(2)-type of the class of a multisegment literal
    Zel(ExprArgs),
    /// Apply a base-change spec to a product of unitary forms
    Bc {
        #[command(flatten)]
        expr: ExprArgs,
        /// Path to a splitting spec in JSON form
        #[arg(long)]
        spec: PathBuf,
    },
    /// Run seeded random verification of the structural identities
    Verify {
        /// Number of random trials
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        /// Master seed; identical seeds give identical reports
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Maximum number of atoms per trial
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
        alphabet: u32,
        /// Maximum atom degree
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        maxdeg: u64,
        /// Emit the report as JSON
        #[arg(long)]
        json: bool,
    },
    /// Exhaustively certify all factor multisets of degree <= maxn over one
    /// degree-1 atom
    Enumerate {
        /// Degree bound
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
        maxn: u64,
        /// Emit the report as JSON
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug)]
pub struct ExprArgs {
    /// Expression text
    pub expr: Option<String>,
    /// Read the expression from a file instead
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Emit JSON
    #[arg(long)]
    pub json: bool,
}

impl ExprArgs {
    fn text(&self) -> Result<String, String> {
        match (&self.expr, &self.file) {
            (Some(_), Some(_)) => Err("provide an expression or --file, not both".to_string()),
            (Some(expr), None) => Ok(expr.clone()),
            (None, Some(path)) => fs::read_to_string(path)
                .map(|s| s.trim().to_string())
                .map_err(|e| format!("cannot read {}: {e}", path.display())),
            (None, None) => Err("provide an expression argument or --file".to_string()),
        }
    }
}

fn usage_error(message: &str) -> i32 {
    eprintln!("error: {message}");
    EXIT_USAGE
}

fn parse_rep_arg(args: &ExprArgs) -> Result<UnitaryRep, i32> {
    let text = args.text().map_err(|m| usage_error(&m))?;
    parse_rep(&text).map_err(|e| usage_error(&e.to_string()))
}

fn load_spec(path: &PathBuf) -> Result<BcSpec, i32> {
    let text = fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read spec {}: {e}", path.display());
        EXIT_SPEC
    })?;
    let spec: BcSpec = serde_json::from_str(&text).map_err(|e| {
        eprintln!("error: malformed spec {}: {e}", path.display());
        EXIT_SPEC
    })?;
    if let Err(violations) = spec.validate() {
        eprintln!(
            "error: spec {} failed validation: {}",
            path.display(),
            serde_json::to_string(&violations.0).expect("violations serialize")
        );
        return Err(EXIT_SPEC);
    }
    Ok(spec)
}

fn emit<T: serde::Serialize>(json: bool, value: &T, human: String) -> i32 {
    if json {
        println!(
            "{}",
            serde_json::to_string(value).expect("output values serialize")
        );
    } else {
        println!("{human}");
    }
    EXIT_OK
}

pub fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::Sl2type(args) => match parse_rep_arg(&args) {
            Ok(pi) => {
                let v = pi.sl2_type();
                emit(args.json, &v, v.to_string())
            }
            Err(code) => code,
        },
        Command::Klyachko(args) => match parse_rep_arg(&args) {
            Ok(pi) => {
                let kt = pi.klyachko_type();
                emit(args.json, &kt, kt.to_string())
            }
            Err(code) => code,
        },
        Command::Transpose(args) => match parse_rep_arg(&args) {
            Ok(pi) => {
                let t = pi.transpose();
                emit(args.json, &t, rep_string(&t))
            }
            Err(code) => code,
        },
        Command::Rec(args) => match parse_rep_arg(&args) {
            Ok(pi) => {
                let wd = pi.rec();
                emit(args.json, &wd, wd_string(&wd))
            }
            Err(code) => code,
        },
        Command::Zel(args) => {
            let text = match args.text() {
                Ok(t) => t,
                Err(m) => return usage_error(&m),
            };
            match parse_multisegment(&text) {
                Ok(a) => {
                    let v = sl2calc_core::tadic::sl2_type_zelevinsky(&a);
                    emit(args.json, &v, format!("{v}"))
                }
                Err(e) => usage_error(&e.to_string()),
            }
        }
        Command::Bc { expr, spec } => {
            let pi = match parse_rep_arg(&expr) {
                Ok(pi) => pi,
                Err(code) => return code,
            };
            let spec = match load_spec(&spec) {
                Ok(s) => s,
                Err(code) => return code,
            };
            match spec.bc_unitary(&pi) {
                Ok(image) => emit(expr.json, &image, rep_string(&image)),
                Err(e) => {
                    eprintln!("error: {e}");
                    EXIT_SPEC
                }
            }
        }
        Command::Verify {
            trials,
            seed,
            alphabet,
            maxdeg,
            json,
        } => {
            let report = harness::verify(&VerifyConfig {
                trials,
                seed,
                alphabet,
                maxdeg,
            });
            if json {
                println!(
                    "{}",
                    serde_json::to_string(&report).expect("report serializes")
                );
            } else {
                println!(
                    "verify: trials={} seed={} alphabet={} maxdeg={} checks={}",
                    report.trials,
                    report.seed,
                    report.alphabet,
                    report.maxdeg,
                    report.checks_per_trial
                );
                match &report.counterexample {
                    None => println!("all checks passed"),
                    Some(ce) => {
                        println!("FAIL trial {} check {}", ce.trial, ce.check);
                        println!("  rep: {}", ce.rep);
                        if let Some(spec) = &ce.spec {
                            println!(
                                "  spec: {}",
                                serde_json::to_string(spec).expect("spec serializes")
                            );
                        }
                        println!("  details: {}", ce.details);
                    }
                }
            }
            if report.counterexample.is_none() {
                EXIT_OK
            } else {
                EXIT_VIOLATION
            }
        }
        Command::Enumerate { maxn, json } => {
            let report = harness::enumerate(maxn);
            if json {
                println!(
                    "{}",
                    serde_json::to_string(&report).expect("report serializes")
                );
            } else {
                println!(
                    "enumerate: maxn={} count={} checks_per_instance={}",
                    report.maxn, report.count, report.checks_per_instance
                );
                match &report.counterexample {
                    None => println!("all instances certified"),
                    Some(ce) => {
                        println!("FAIL after {} instances: check {}", ce.trial, ce.check);
                        println!("  details: {}", ce.details);
                    }
                }
            }
            if report.counterexample.is_none() {
                EXIT_OK
            } else {
                EXIT_VIOLATION
            }
        }
    }
}
