//! Argument parsing and command execution for the `polystab` binary.
//!
//! Exit codes: `0` on success with all verdicts true, `1` when an identity
//! verdict fails (an implementation bug, not bad input), `2` on input or
//! usage errors.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use polystab_core::{ParametricProblem, Polyhedron, RatVec, StabilityReport, VPolyhedron};
use serde_json::json;

use crate::batch::run_batch;
use crate::generate::{generate_instance, InstanceSpec};
use crate::io::{parse_problem, parse_vector, CliError, ErrorCode};

/// Captured result of one dispatch: what the binary would print and return.
#[derive(Debug)]
pub struct CliOutcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser)]
#[command(
    name = "polystab",
    version,
    about = "Exact differential-stability analysis of parametric polyhedral programs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the optimal value at a parameter.
    Eval {
        /// Problem JSON file.
        file: PathBuf,
        /// Parameter vector, comma-separated rationals such as "1/2,-3".
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Print the subdifferential and singular subdifferential of the value
    /// function at a parameter.
    Subdiff {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Also print constraint forms of the output sets.
        #[arg(long)]
        h_form: bool,
    },
    /// Verify every estimate identity at a parameter and print the report.
    Verify {
        file: PathBuf,
        /// Base parameter; defaults to the zero vector.
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        /// Minimizer to use; defaults to the lexicographically smallest
        /// vertex of the solution set. Must be optimal.
        #[arg(long, allow_hyphen_values = true)]
        y: Option<String>,
        /// Also print constraint forms of the output sets.
        #[arg(long)]
        h_form: bool,
    },
    /// Generate and verify a batch of seeded random instances.
    Batch {
        #[arg(long)]
        count: usize,
        #[arg(long)]
        seed: u64,
        /// Dimensions as "dim_x,dim_y".
        #[arg(long)]
        dims: String,
        #[arg(long, default_value_t = 6)]
        max_constraints: usize,
        #[arg(long, default_value_t = 4)]
        max_pieces: usize,
        #[arg(long, default_value_t = 5)]
        bound: i64,
    },
    /// Convert a polyhedron file between constraint and generator form.
    Convert {
        file: PathBuf,
        #[arg(long, value_enum)]
        to: TargetForm,
    },
    /// Print the instance generated for a seed (a deterministic function of
    /// the seed and the size parameters).
    Generate {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        dims: String,
        #[arg(long, default_value_t = 6)]
        max_constraints: usize,
        #[arg(long, default_value_t = 4)]
        max_pieces: usize,
        #[arg(long, default_value_t = 5)]
        bound: i64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TargetForm {
    H,
    V,
}

/// Runs one command line. Never panics on bad input; everything is folded
/// into the outcome.
pub fn cli_dispatch<I, S>(argv: I) -> CliOutcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders both --help and usage errors; help goes to stdout
            // with exit 0, everything else is a usage error
            let rendered = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    CliOutcome {
                        exit_code: 0,
                        stdout: rendered,
                        stderr: String::new(),
                    }
                }
                _ => CliOutcome {
                    exit_code: 2,
                    stdout: String::new(),
                    stderr: rendered,
                },
            };
        }
    };
    match execute(cli.command) {
        Ok(outcome) => outcome,
        Err(e) => CliOutcome {
            exit_code: 2,
            stdout: String::new(),
            stderr: format!("error ({}): {}\n", e.code.as_str(), e.message),
        },
    }
}

fn load_problem(path: &PathBuf) -> Result<ParametricProblem, CliError> {
    let text = std::fs::read_to_string(path)?;
    parse_problem(&text)
}

fn parse_dims(text: &str) -> Result<(usize, usize), CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err(CliError::new(
            ErrorCode::BadRequest,
            format!("dims must be \"dim_x,dim_y\", got '{text}'"),
        ));
    }
    let parse = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| CliError::new(ErrorCode::BadRequest, format!("bad dimension '{t}'")))
    };
    Ok((parse(parts[0])?, parse(parts[1])?))
}

fn pretty(value: &impl serde::Serialize) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("serializable");
    out.push('\n');
    out
}

fn h_form_of(set: &VPolyhedron) -> Result<serde_json::Value, CliError> {
    Ok(serde_json::to_value(set.to_h().map_err(CliError::from)?)
        .expect("serializable"))
}

fn report_json(report: &StabilityReport, with_h: bool) -> Result<serde_json::Value, CliError> {
    let mut value = serde_json::to_value(report).expect("serializable");
    if with_h {
        value["h_forms"] = json!({
            "sub_mu": h_form_of(&report.sub_mu)?,
            "sing_mu": h_form_of(&report.sing_mu)?,
            "A0": h_form_of(&report.a0)?,
            "B0": h_form_of(&report.b0)?,
            "B": h_form_of(&report.b)?,
            "Ainf0": h_form_of(&report.a0_inf)?,
            "Binf0": h_form_of(&report.b0_inf)?,
            "Binf": h_form_of(&report.b_inf)?,
        });
    }
    Ok(value)
}

fn execute(command: Command) -> Result<CliOutcome, CliError> {
    match command {
        Command::Eval { file, x } => {
            let problem = load_problem(&file)?;
            let x = checked_parameter(&problem, &x)?;
            let value = problem.optimal_value(&x)?;
            Ok(success(format!("{value}\n")))
        }
        Command::Subdiff { file, x, h_form } => {
            let problem = load_problem(&file)?;
            let x = checked_parameter(&problem, &x)?;
            let mu = problem.optimal_value(&x)?;
            let (sub, sing) = problem.mu_subdifferentials(&x)?;
            let mut value = json!({
                "x_bar": serde_json::to_value(&x).expect("serializable"),
                "mu": serde_json::to_value(&mu).expect("serializable"),
                "sub_mu": serde_json::to_value(&sub).expect("serializable"),
                "sing_mu": serde_json::to_value(&sing).expect("serializable"),
            });
            if h_form {
                value["h_forms"] = json!({
                    "sub_mu": h_form_of(&sub)?,
                    "sing_mu": h_form_of(&sing)?,
                });
            }
            Ok(success(pretty(&value)))
        }
        Command::Verify { file, x, y, h_form } => {
            let problem = load_problem(&file)?;
            let x = match x {
                Some(text) => checked_parameter(&problem, &text)?,
                None => RatVec::zeros(problem.dim_x()),
            };
            let y = y.map(|t| parse_vector(&t)).transpose()?;
            let report = problem.verify_stability(&x, y.as_ref())?;
            let exit_code = if report.verdicts.all_true() { 0 } else { 1 };
            Ok(CliOutcome {
                exit_code,
                stdout: pretty(&report_json(&report, h_form)?),
                stderr: String::new(),
            })
        }
        Command::Batch {
            count,
            seed,
            dims,
            max_constraints,
            max_pieces,
            bound,
        } => {
            let (dim_x, dim_y) = parse_dims(&dims)?;
            let spec = InstanceSpec {
                seed,
                dim_x,
                dim_y,
                max_constraints,
                max_pieces,
                coefficient_bound: bound,
            };
            let summary = run_batch(&spec, count)?;
            let exit_code = if summary.failures.is_empty() { 0 } else { 1 };
            Ok(CliOutcome {
                exit_code,
                stdout: pretty(&summary),
                stderr: format!("wall_time_ms: {}\n", summary.wall_time.as_millis()),
            })
        }
        Command::Convert { file, to } => {
            let text = std::fs::read_to_string(&file)?;
            let poly: Polyhedron = serde_json::from_str(&text).map_err(|e| {
                CliError::new(ErrorCode::SchemaViolation, e.to_string())
            })?;
            let out = match to {
                TargetForm::H => pretty(&poly.to_h().map_err(CliError::from)?),
                TargetForm::V => pretty(&poly.to_v().map_err(CliError::from)?),
            };
            Ok(success(out))
        }
        Command::Generate {
            seed,
            dims,
            max_constraints,
            max_pieces,
            bound,
        } => {
            let (dim_x, dim_y) = parse_dims(&dims)?;
            let spec = InstanceSpec {
                seed,
                dim_x,
                dim_y,
                max_constraints,
                max_pieces,
                coefficient_bound: bound,
            };
            let problem = generate_instance(&spec)?;
            Ok(success(pretty(&problem)))
        }
    }
}

fn checked_parameter(problem: &ParametricProblem, text: &str) -> Result<RatVec, CliError> {
    let x = parse_vector(text)?;
    if x.dim() != problem.dim_x() {
        return Err(CliError::new(
            ErrorCode::DimensionMismatch,
            format!(
                "parameter has {} entries but dim_x is {}",
                x.dim(),
                problem.dim_x()
            ),
        ));
    }
    Ok(x)
}

fn success(stdout: String) -> CliOutcome {
    CliOutcome {
        exit_code: 0,
        stdout,
        stderr: String::new(),
    }
}
