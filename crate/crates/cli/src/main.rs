//! `octonic` command-line harness: verification suites, Landau spectra,
//! dispersion scans and plane-wave field reports.
//!
//! Exit codes: 0 success, 1 failed checks or runtime error, 2 usage error.

mod dispersion;
mod fields;
mod spectrum;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use octonic::dynamics::PhysicalConstants;

/// Directory for reports when no explicit path is given.
pub const OUT_DIR_ENV: &str = "OCTONIC_OUT_DIR";

#[derive(Parser, Debug)]
#[command(name = "octonic", version, about = "Octon algebra and octonic wave-equation checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a verification suite and write an NDJSON report.
    Verify(verify::VerifyArgs),
    /// Landau levels in a uniform field as CSV.
    Spectrum(spectrum::SpectrumArgs),
    /// Dispersion roots and nullspace dimensions of first-order variants as CSV.
    Dispersion(dispersion::DispersionArgs),
    /// Fields, system residuals and gauge expressions of one plane wave as JSON.
    Fields(fields::FieldsArgs),
}

/// Units are whatever consistent system the four constants are given in;
/// the defaults are natural units with a negative unit charge.
#[derive(Args, Debug, Clone, Copy)]
pub struct ConstantArgs {
    #[arg(long, default_value_t = 1.0)]
    pub hbar: f64,
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    /// Particle mass.
    #[arg(long, short = 'm', default_value_t = 1.0)]
    pub m: f64,
    /// Particle charge.
    #[arg(long, short = 'e', default_value_t = -1.0, allow_hyphen_values = true)]
    pub e: f64,
}

impl ConstantArgs {
    pub fn constants(&self) -> Result<PhysicalConstants, String> {
        let k = PhysicalConstants { hbar: self.hbar, c: self.c, m: self.m, e: self.e };
        k.validate().map_err(|e| e.to_string())?;
        Ok(k)
    }
}

/// A vector given on the command line as `x,y,z`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vec3Arg(pub [f64; 3]);

impl std::str::FromStr for Vec3Arg {
    type Err = String;

    fn from_str(s: &str) -> Result<Vec3Arg, String> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(format!("expected three comma-separated numbers, got {s:?}"));
        }
        let mut v = [0.0; 3];
        for (slot, part) in v.iter_mut().zip(&parts) {
            *slot = part.parse().map_err(|e| format!("{part:?}: {e}"))?;
        }
        Ok(Vec3Arg(v))
    }
}

/// Report path: the explicit one, else `$OCTONIC_OUT_DIR/<name>`, else `./<name>`.
pub fn output_path(explicit: Option<PathBuf>, name: &str) -> PathBuf {
    explicit.unwrap_or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(".")).join(name))
}

/// Writes to the given file, or stdout when absent.
pub fn sink(path: Option<&PathBuf>) -> Result<Box<dyn std::io::Write>, String> {
    match path {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
            }
            let f = std::fs::File::create(p).map_err(|e| format!("{}: {e}", p.display()))?;
            Ok(Box::new(std::io::BufWriter::new(f)))
        }
        None => Ok(Box::new(std::io::stdout().lock())),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(a) => verify::run(a),
        Command::Spectrum(a) => spectrum::run(a),
        Command::Dispersion(a) => dispersion::run(a),
        Command::Fields(a) => fields::run(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

/// Exits with status 2 and a clap-formatted usage message.
pub fn usage_error(msg: impl std::fmt::Display) -> ! {
    use clap::CommandFactory;
    Cli::command().error(clap::error::ErrorKind::ValueValidation, msg).exit()
}
