use std::path::PathBuf;

use clap::Args;
use octonic::dynamics::landau::{landau_oracle, landau_spectrum, relative_error, LandauParams, MAX_ORACLE_LEVELS};
use serde::Serialize;

use crate::{sink, usage_error, ConstantArgs};

const ORACLE_MAX_N: u32 = MAX_ORACLE_LEVELS as u32 - 1;

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub constants: ConstantArgs,
    /// Magnetic field strength along z.
    #[arg(long = "b", short = 'B', default_value_t = 1.0)]
    pub b: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub py: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub pz: f64,
    #[arg(long, default_value_t = 2)]
    pub nmax: u32,
    #[arg(long)]
    pub relativistic: bool,
    /// Add finite-difference oracle energies and relative errors.
    #[arg(long)]
    pub with_oracle: bool,
    /// CSV path; stdout when absent.
    #[arg(long, short = 'o')]
    pub out: Option<PathBuf>,
}

#[derive(Serialize)]
struct Row {
    n: u32,
    lambda: i8,
    #[serde(rename = "b[field]")]
    b: f64,
    #[serde(rename = "p_z[momentum]")]
    p_z: f64,
    #[serde(rename = "energy[energy]")]
    energy: f64,
    #[serde(rename = "oracle_energy[energy]")]
    oracle: Option<f64>,
    #[serde(rename = "relative_error[1]")]
    relative_error: Option<f64>,
}

pub fn run(a: SpectrumArgs) -> Result<bool, String> {
    if a.with_oracle && a.nmax > ORACLE_MAX_N {
        usage_error(format!("--with-oracle supports nmax up to {ORACLE_MAX_N}, got {}", a.nmax));
    }
    let k = a.constants.constants()?;
    let mut rows = vec![];
    let mut oracles = vec![];
    for lambda in [1i8, -1] {
        let p = LandauParams::new(a.b, a.py, a.pz, 0, lambda).map_err(|e| e.to_string())?;
        let levels = if a.with_oracle {
            Some(landau_oracle(&p, &k, a.relativistic, a.nmax as usize + 1).map_err(|e| e.to_string())?)
        } else {
            None
        };
        oracles.push((lambda, p, levels));
    }
    for n in 0..=a.nmax {
        for (lambda, p, levels) in &oracles {
            let energy = landau_spectrum(&p.with_level(n), &k, a.relativistic);
            let oracle = levels.as_ref().map(|l| l[n as usize]);
            rows.push(Row {
                n,
                lambda: *lambda,
                b: a.b,
                p_z: a.pz,
                energy,
                oracle,
                relative_error: oracle.map(|o| relative_error(energy, o, a.b, &k)),
            });
        }
    }
    let mut w = csv::Writer::from_writer(sink(a.out.as_ref())?);
    for r in &rows {
        w.serialize(r).map_err(|e| e.to_string())?;
    }
    w.flush().map_err(|e| e.to_string())?;
    Ok(true)
}
