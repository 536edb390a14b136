use std::io::Write;
use std::path::PathBuf;

use clap::Args;
use octonic::algebra::Octon;
use octonic::dynamics::{field_variant, first_order_matrix, kg_symbol, PlaneWaveState};
use octonic::fields::{field_system_residual, fields_from_state, gauge_residual, shifted_state, ExternalPotential};
use octonic::linalg::nullspace;
use serde_json::json;

use crate::{sink, usage_error, ConstantArgs, Vec3Arg};

const ON_SHELL_TOL: f64 = 1e-12;

#[derive(Args, Debug)]
pub struct FieldsArgs {
    #[command(flatten)]
    pub constants: ConstantArgs,
    /// Amplitude as a signed sum of `coef*label` terms, e.g. `1 + (0,1)*K`.
    #[arg(long, default_value = "1", allow_hyphen_values = true, conflicts_with = "nullspace")]
    pub amplitude: String,
    /// Use the n-th nullspace vector of the field-defining operator at (E, p) as amplitude.
    #[arg(long)]
    pub nullspace: Option<usize>,
    /// Energy; defaults to the positive on-shell value for the kinetic momentum.
    #[arg(long, allow_hyphen_values = true)]
    pub energy: Option<f64>,
    /// Momentum as `px,py,pz`.
    #[arg(long, default_value = "0,0,0", allow_hyphen_values = true)]
    pub p: Vec3Arg,
    /// Constant scalar potential.
    #[arg(long, allow_hyphen_values = true)]
    pub phi: Option<f64>,
    /// Constant vector potential as `ax,ay,az`.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<Vec3Arg>,
    /// Scalar-potential samples; accepted only if they are all equal.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "phi")]
    pub phi_samples: Option<Vec<f64>>,
    /// JSON path; stdout when absent.
    #[arg(long, short = 'o')]
    pub out: Option<PathBuf>,
}

pub fn run(a: FieldsArgs) -> Result<bool, String> {
    let k = a.constants.constants()?;
    let p = a.p.0;
    let vec_a = a.a.map_or([0.0; 3], |v| v.0);
    let potential = match (&a.phi_samples, a.phi, &a.a) {
        (Some(samples), _, _) => {
            Some(ExternalPotential::Sampled { phi: samples.clone(), a: vec![vec_a; samples.len()] })
        }
        (None, None, None) => None,
        (None, phi, _) => Some(ExternalPotential::Constant { phi: phi.unwrap_or(0.0), a: vec_a }),
    };
    let (phi0, a0) = match &potential {
        Some(pot) => pot.constant().map_err(|e| e.to_string())?,
        None => (0.0, [0.0; 3]),
    };
    let p_kin: [f64; 3] = std::array::from_fn(|i| p[i] - k.e * a0[i] / k.c);
    let energy = a.energy.unwrap_or_else(|| k.on_shell_energy(p_kin) + k.e * phi0);

    let amplitude = match a.nullspace {
        Some(idx) => {
            let kin = shifted_state(&PlaneWaveState::new(energy, p, Octon::one()), &k, potential.as_ref())
                .map_err(|e| e.to_string())?;
            let ns = nullspace(&first_order_matrix(&field_variant(), kin.energy, kin.momentum, &k), 1e-8, None);
            match ns.get(idx) {
                Some(v) => Octon::new(std::array::from_fn(|i| v[i])),
                None => usage_error(format!("nullspace at this energy has dimension {}, index {idx} out of range", ns.len())),
            }
        }
        None => a.amplitude.parse::<Octon>().unwrap_or_else(|e| usage_error(format!("--amplitude: {e}"))),
    };

    let state = PlaneWaveState::new(energy, p, amplitude);
    let fields = fields_from_state(&state, &k, potential.as_ref()).map_err(|e| e.to_string())?;
    let residuals = field_system_residual(&state, &k, potential.as_ref()).map_err(|e| e.to_string())?;
    let kin = shifted_state(&state, &k, potential.as_ref()).map_err(|e| e.to_string())?;
    let (g_vector, g_pseudo) = gauge_residual(&kin, &k);
    let symbol = kg_symbol(kin.energy, kin.momentum, &k);
    let scale = 1.0 + kin.energy * kin.energy / (k.hbar * k.hbar * k.c * k.c) + k.mu() * k.mu();

    let out = json!({
        "schema_version": 1,
        "energy": energy,
        "momentum": p,
        "amplitude": amplitude.to_string(),
        "potential": potential,
        "kinetic_energy": kin.energy,
        "kinetic_momentum": kin.momentum,
        "on_shell": symbol.abs() <= ON_SHELL_TOL * scale,
        "kg_symbol": symbol,
        "fields": fields,
        "fields_zero": fields.is_zero(ON_SHELL_TOL * scale * (1.0 + amplitude.max_norm())),
        "residuals": residuals,
        "residual_norms": {
            "scalar": residuals.norms()[0],
            "pseudoscalar": residuals.norms()[1],
            "vector": residuals.norms()[2],
            "pseudovector": residuals.norms()[3],
            "max": residuals.max_norm(),
        },
        "gauge": { "vector_potential": g_vector, "pseudovector_potential": g_pseudo },
    });
    let mut w = sink(a.out.as_ref())?;
    serde_json::to_writer_pretty(&mut w, &out).map_err(|e| e.to_string())?;
    writeln!(w).map_err(|e| e.to_string())?;
    Ok(true)
}
