//! Command-line front end for `multispace`.
//!
//! [`run`] parses arguments, validates every flag, dispatches to the library
//! and writes CSV data, JSON or `key=value` reports. Exit codes: `0` success,
//! `1` invalid arguments or input files, `2` errors raised by the library.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

mod commands;
pub mod format;
pub mod schema;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_COMPUTATION: i32 = 2;

/// Acceptance band for the m = 7 expansion factor.
pub const EXPANSION_BAND: (f64, f64) = (2.5, 3.5);

#[derive(Debug, Parser)]
#[command(name = "multispace", version, about = "Pseudo-faces, relativity, brane cosmology, graph phases and multi-cosmos checks")]
pub struct Cli {
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Slice radii of a ball under the scaled deformation, as CSV `t,radius`.
    #[command(allow_negative_numbers = true)]
    PseudoShape(PseudoShapeArgs),
    /// Slice radii of a ball under the angle deformation, as CSV `t,radius`.
    #[command(allow_negative_numbers = true)]
    AngleShape(AngleShapeArgs),
    /// Lorentz boost of events along x, as CSV.
    #[command(allow_negative_numbers = true)]
    Lorentz(LorentzArgs),
    /// Relativistic transformation of a velocity into the boosted frame.
    #[command(allow_negative_numbers = true)]
    VelocityAdd(VelocityAddArgs),
    /// Friedmann line element for a(t) = a0 (1 + rate t)^power.
    #[command(allow_negative_numbers = true)]
    Friedmann(FriedmannArgs),
    /// Static, contracting or expanding classification of a(t) = a0 (1 + rate t)^power.
    #[command(allow_negative_numbers = true)]
    Classify(ClassifyArgs),
    /// Kasner exponents and their sum-rule residuals.
    #[command(allow_negative_numbers = true)]
    Kasner(KasnerArgs),
    /// Time-shifted Kasner scale factor (t_inf - t)^mu and its derivatives, as CSV.
    #[command(allow_negative_numbers = true)]
    TimeShift(TimeShiftArgs),
    /// Townsend-Wohlfarth state sweep over the valid domain, as CSV `t,K,phi,S`.
    #[command(allow_negative_numbers = true)]
    TwState(TwStateArgs),
    /// Townsend-Wohlfarth acceleration window and expansion factor.
    #[command(allow_negative_numbers = true)]
    TwWindow(TwWindowArgs),
    /// Embeddability check and affine relabelling of a graph phase.
    #[command(allow_negative_numbers = true)]
    GraphTransform(GraphTransformArgs),
    /// Sheaf-condition checks on a multi-cosmos model.
    CosmosCheck(CosmosCheckArgs),
}

#[derive(Debug, Args)]
pub struct PseudoShapeArgs {
    /// Ball radius.
    #[arg(long = "R", default_value_t = 1.0)]
    pub radius: f64,
    #[arg(long, default_value_t = 0.5)]
    pub sigma: f64,
    /// Grid points on [-R, R]; t = 0 is skipped.
    #[arg(long, default_value_t = 101)]
    pub samples: usize,
    /// Use the unscaled slice radius sqrt(R^2 - t^2).
    #[arg(long = "paper-figure-mode")]
    pub figure_mode: bool,
}

#[derive(Debug, Args)]
pub struct AngleShapeArgs {
    #[arg(long = "R", default_value_t = 1.0)]
    pub radius: f64,
    #[arg(long, default_value_t = 101)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct LorentzArgs {
    /// Frame velocity along x.
    #[arg(long)]
    pub v: f64,
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    /// Event as "x,y,z,t"; repeatable.
    #[arg(long = "event", allow_hyphen_values = true, value_parser = parse_vec::<4>)]
    pub events: Vec<[f64; 4]>,
    /// CSV file with header `x,y,z,t`.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VelocityAddArgs {
    /// Velocity "ux,uy,uz" in the rest frame.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_vec::<3>)]
    pub u: [f64; 3],
    #[arg(long)]
    pub v: f64,
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
}

#[derive(Debug, Args)]
pub struct ScaleFactorArgs {
    #[arg(long, default_value_t = 1.0)]
    pub a0: f64,
    #[arg(long, default_value_t = 0.0)]
    pub rate: f64,
    #[arg(long, default_value_t = 1.0)]
    pub power: f64,
}

#[derive(Debug, Args)]
pub struct FriedmannArgs {
    /// Curvature parameter K.
    #[arg(long, default_value_t = 0.0)]
    pub k: f64,
    #[command(flatten)]
    pub scale: ScaleFactorArgs,
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    /// Base point "t,r,theta,phi".
    #[arg(long, allow_hyphen_values = true, value_parser = parse_vec::<4>)]
    pub at: [f64; 4],
    /// Displacement "dt,dr,dtheta,dphi".
    #[arg(long, allow_hyphen_values = true, value_parser = parse_vec::<4>)]
    pub delta: [f64; 4],
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub scale: ScaleFactorArgs,
    #[arg(long)]
    pub t: f64,
    /// |da/dt| at or below this counts as static.
    #[arg(long, default_value_t = multispace::relativity::DEFAULT_ZERO_BAND)]
    pub band: f64,
}

#[derive(Debug, Args)]
pub struct KasnerArgs {
    #[arg(long)]
    pub m: u32,
    #[arg(long, default_value = "minus")]
    pub branch: String,
}

#[derive(Debug, Args)]
pub struct TimeShiftArgs {
    /// Internal dimension; selects mu from the Kasner branch.
    #[arg(long, conflicts_with = "mu", required_unless_present = "mu")]
    pub m: Option<u32>,
    #[arg(long, default_value = "minus")]
    pub branch: String,
    /// Exponent used directly instead of a Kasner branch.
    #[arg(long)]
    pub mu: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    pub t_inf: f64,
    /// First sample; defaults to t_inf - 10.
    #[arg(long)]
    pub t_start: Option<f64>,
    #[arg(long, default_value_t = 11)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct TwArgs {
    #[arg(long, default_value_t = 7)]
    pub m: u32,
    #[arg(long, default_value_t = 1.0)]
    pub lambda0: f64,
    #[arg(long, default_value_t = 1.0)]
    pub rc: f64,
    #[arg(long, default_value_t = 0.0)]
    pub t1: f64,
}

#[derive(Debug, Args)]
pub struct TwStateArgs {
    #[command(flatten)]
    pub tw: TwArgs,
    /// Interior sample points of the valid domain.
    #[arg(long, default_value_t = 11)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct TwWindowArgs {
    #[command(flatten)]
    pub tw: TwArgs,
    /// Scan grid size.
    #[arg(long, default_value_t = 100_000)]
    pub resolution: usize,
}

#[derive(Debug, Args)]
pub struct GraphTransformArgs {
    /// Graph phase JSON.
    #[arg(long)]
    pub input: PathBuf,
    /// Target dimension.
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, default_value_t = 1.0)]
    pub omega_scale: f64,
    #[arg(long, default_value_t = 0.0)]
    pub omega_shift: f64,
    #[arg(long, default_value_t = 1.0)]
    pub lambda_scale: f64,
    #[arg(long, default_value_t = 0.0)]
    pub lambda_shift: f64,
}

#[derive(Debug, Args)]
pub struct CosmosCheckArgs {
    /// Multi-cosmos model JSON.
    #[arg(long)]
    pub input: PathBuf,
    /// Maximal sub-cosmos to check; defaults to the unique maximal one.
    #[arg(long)]
    pub top: Option<String>,
    /// Gluing families to test.
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

fn parse_vec<const N: usize>(s: &str) -> Result<[f64; N], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != N {
        return Err(format!("expected {N} comma-separated numbers, got {}", parts.len()));
    }
    let mut out = [0.0; N];
    for (slot, p) in out.iter_mut().zip(parts) {
        *slot = p.parse().map_err(|_| format!("{p:?} is not a number"))?;
    }
    Ok(out)
}

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or input files; nothing was computed.
    Validation(String),
    /// The library rejected the request.
    Computation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Computation(_) => EXIT_COMPUTATION,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Validation(m) | CliError::Computation(m) => m,
        }
    }
}

/// Runs the CLI on `args` (without the program name) and returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("multispace")).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match commands::execute(&cli.command) {
        Ok(text) => {
            let written = match &cli.output {
                Some(path) => std::fs::write(path, &text).map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => out.write_all(text.as_bytes()).map_err(|e| format!("cannot write output: {e}")),
            };
            match written {
                Ok(()) => EXIT_OK,
                Err(msg) => {
                    let _ = writeln!(err, "error: {msg}");
                    EXIT_COMPUTATION
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.exit_code()
        }
    }
}
