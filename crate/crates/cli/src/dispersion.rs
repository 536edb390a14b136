use std::path::PathBuf;

use clap::Args;
use octonic::dynamics::{dispersion_roots, first_order_matrix, FirstOrderSpec, PhysicalConstants, VARIANTS};
use octonic::linalg::determinant;
use serde::Serialize;

use crate::{sink, usage_error, ConstantArgs, Vec3Arg};

#[derive(Args, Debug)]
pub struct DispersionArgs {
    #[command(flatten)]
    pub constants: ConstantArgs,
    /// First-order variant name, or `all`.
    #[arg(long, default_value = "all")]
    pub variant: String,
    /// Momentum direction; normalized before use.
    #[arg(long, default_value = "1,0,0", allow_hyphen_values = true)]
    pub direction: Vec3Arg,
    /// Grid runs over |p| in [-p-max, p-max] along the direction.
    #[arg(long, default_value_t = 3.0)]
    pub p_max: f64,
    #[arg(long, default_value_t = 7)]
    pub p_steps: usize,
    /// CSV path; stdout when absent.
    #[arg(long, short = 'o')]
    pub out: Option<PathBuf>,
}

#[derive(Serialize)]
struct Row {
    variant: &'static str,
    #[serde(rename = "p_x[momentum]")]
    p_x: f64,
    #[serde(rename = "p_y[momentum]")]
    p_y: f64,
    #[serde(rename = "p_z[momentum]")]
    p_z: f64,
    #[serde(rename = "expected_root[energy]")]
    expected: f64,
    #[serde(rename = "root_minus[energy]")]
    root_minus: f64,
    #[serde(rename = "root_plus[energy]")]
    root_plus: f64,
    multiplicity_minus: usize,
    multiplicity_plus: usize,
    nullity_minus: usize,
    nullity_plus: usize,
    #[serde(rename = "det_abs_at_roots[length^-8]")]
    det_at_roots: f64,
    ok: bool,
}

fn selected(name: &str) -> Vec<(&'static str, FirstOrderSpec)> {
    if name == "all" {
        return VARIANTS.to_vec();
    }
    match VARIANTS.iter().find(|(n, _)| *n == name) {
        Some(v) => vec![*v],
        None => {
            let names: Vec<&str> = VARIANTS.iter().map(|(n, _)| *n).collect();
            usage_error(format!("unknown variant {name:?}; expected all or one of {}", names.join(", ")))
        }
    }
}

fn row(name: &'static str, spec: &FirstOrderSpec, p: [f64; 3], k: &PhysicalConstants) -> Row {
    let w = k.on_shell_energy(p);
    let roots = dispersion_roots(spec, p, k);
    let tol = 1e-9 * w.max(1.0);
    let at = |e: f64| roots.iter().find(|r| (r.energy.re - e).abs() <= tol && r.energy.im.abs() <= tol);
    let (minus, plus) = (at(-w), at(w));
    let total: usize = roots.iter().map(|r| r.multiplicity).sum();
    // At p = 0 with m = 0 both branches meet in one eight-fold root.
    let ok = if w == 0.0 {
        roots.len() == 1 && roots[0].multiplicity == 8 && roots[0].nullity == 8
    } else {
        roots.len() == 2 && roots.iter().all(|r| r.multiplicity == 4 && r.nullity == 4) && minus.is_some() && plus.is_some()
    };
    let det = |e: f64| determinant(&first_order_matrix(spec, e, p, k)).norm();
    Row {
        variant: name,
        p_x: p[0],
        p_y: p[1],
        p_z: p[2],
        expected: w,
        root_minus: minus.map_or(f64::NAN, |r| r.energy.re),
        root_plus: plus.map_or(f64::NAN, |r| r.energy.re),
        multiplicity_minus: minus.map_or(0, |r| r.multiplicity),
        multiplicity_plus: plus.map_or(0, |r| r.multiplicity),
        nullity_minus: minus.map_or(0, |r| r.nullity),
        nullity_plus: plus.map_or(0, |r| r.nullity),
        det_at_roots: det(-w).max(det(w)),
        ok: ok && total == 8,
    }
}

pub fn run(a: DispersionArgs) -> Result<bool, String> {
    let k = a.constants.constants()?;
    let norm = a.direction.0.iter().map(|x| x * x).sum::<f64>().sqrt();
    if !(norm > 0.0 && norm.is_finite()) {
        usage_error("--direction must be a nonzero vector");
    }
    if a.p_steps == 0 {
        usage_error("--p-steps must be at least 1");
    }
    let d = a.direction.0.map(|x| x / norm);
    let specs = selected(&a.variant);
    let mut w = csv::Writer::from_writer(sink(a.out.as_ref())?);
    let mut all_ok = true;
    for step in 0..a.p_steps {
        let s = if a.p_steps == 1 { 0.0 } else { -a.p_max + 2.0 * a.p_max * step as f64 / (a.p_steps - 1) as f64 };
        // Adding zero turns -0.0 into 0.0 in the output.
        let p = d.map(|x| s * x + 0.0);
        for (name, spec) in &specs {
            let r = row(name, spec, p, &k);
            all_ok &= r.ok;
            w.serialize(&r).map_err(|e| e.to_string())?;
        }
    }
    w.flush().map_err(|e| e.to_string())?;
    if !all_ok {
        eprintln!("dispersion: some grid points lack the four-fold roots at ±√(p²c² + m²c⁴)");
    }
    Ok(all_ok)
}
