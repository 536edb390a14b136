//! Landau levels of a charged octonic particle in a homogeneous field B along z
//! (gauge A = Bx·j), closed forms and a finite-difference oscillator oracle.

use serde::{Deserialize, Serialize};

use super::PhysicalConstants;
use crate::algebra::{Octon, C64};
use crate::eigen::{general_eigenfunction, EigenTarget};
use crate::error::{Error, Result};
use crate::operators::OctonOperator;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LandauParams {
    pub b: f64,
    pub p_y: f64,
    pub p_z: f64,
    pub n: u32,
    /// K̂ eigenvalue, ±1.
    pub lambda: i8,
}

impl LandauParams {
    pub fn new(b: f64, p_y: f64, p_z: f64, n: u32, lambda: i8) -> Result<LandauParams> {
        let p = LandauParams { b, p_y, p_z, n, lambda };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.b > 0.0 && self.b.is_finite()) {
            return Err(Error::InvalidArgument(format!("field B must be positive, got {}", self.b)));
        }
        if self.lambda != 1 && self.lambda != -1 {
            return Err(Error::InvalidArgument(format!("lambda must be +1 or -1, got {}", self.lambda)));
        }
        Ok(())
    }

    pub fn with_level(self, n: u32) -> LandauParams {
        LandauParams { n, ..self }
    }
}

/// Cyclotron frequency |e|B/(mc).
pub fn cyclotron_frequency(b: f64, k: &PhysicalConstants) -> f64 {
    k.e.abs() * b / (k.m * k.c)
}

/// p_z²/2m + ħ|e|B/(mc)(n + ½) − λħeB/(2mc), or the positive root of
/// E² = m²c⁴ + p_z²c² + |e|Bħc(2n + 1) − λeBħc.
pub fn landau_spectrum(p: &LandauParams, k: &PhysicalConstants, relativistic: bool) -> f64 {
    let n = p.n as f64;
    let lambda = p.lambda as f64;
    if relativistic {
        relativistic_square(p, k).sqrt()
    } else {
        p.p_z * p.p_z / (2.0 * k.m) + k.hbar * cyclotron_frequency(p.b, k) * (n + 0.5) - spin_shift(p, k) * lambda
    }
}

/// ħeB/(2mc), the magnitude of the K̂-term shift per unit λ.
fn spin_shift(p: &LandauParams, k: &PhysicalConstants) -> f64 {
    k.hbar * k.e * p.b / (2.0 * k.m * k.c)
}

fn relativistic_square(p: &LandauParams, k: &PhysicalConstants) -> f64 {
    let mc2 = k.m * k.c * k.c;
    mc2 * mc2 + p.p_z * p.p_z * k.c * k.c + landau_excess(p, k)
}

/// X = |e|Bħc(2n + 1) − λeBħc, the field-dependent part of E².
pub fn landau_excess(p: &LandauParams, k: &PhysicalConstants) -> f64 {
    let bhc = p.b * k.hbar * k.c;
    k.e.abs() * bhc * (2.0 * p.n as f64 + 1.0) - p.lambda as f64 * k.e * bhc
}

/// (E_rel − mc²) − E_nonrel, with E_rel − mc² formed as (E² − m²c⁴)/(E + mc²)
/// to avoid cancellation.
pub fn nonrelativistic_limit_difference(p: &LandauParams, k: &PhysicalConstants) -> f64 {
    let mc2 = k.m * k.c * k.c;
    let e2_minus = p.p_z * p.p_z * k.c * k.c + landau_excess(p, k);
    let e = landau_spectrum(p, k, true);
    e2_minus / (e + mc2) - landau_spectrum(p, k, false)
}

/// Interior points of the coarsest oracle grid.
pub const DEFAULT_POINTS: usize = 800;
/// Half-width of the oracle domain in oscillator lengths.
pub const DOMAIN_HALF_WIDTH: f64 = 8.0;
/// Most levels one oracle call resolves; higher levels approach the domain edge.
pub const MAX_ORACLE_LEVELS: usize = 11;
/// Allowed relative disagreement between the two Richardson estimates.
pub const RICHARDSON_TOL: f64 = 1e-6;

/// Number of eigenvalues of the symmetric tridiagonal matrix below `x`.
fn sturm_count(diag: &[f64], off: f64, x: f64) -> usize {
    let off2 = off * off;
    let mut count = 0;
    let mut q = 1.0;
    for (i, &d) in diag.iter().enumerate() {
        q = if i == 0 { d - x } else { d - x - off2 / q };
        if q == 0.0 {
            q = f64::EPSILON * (d.abs() + off.abs()).max(f64::MIN_POSITIVE);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// The `idx`-th smallest eigenvalue by bisection on the Sturm count.
fn tridiagonal_eigenvalue(diag: &[f64], off: f64, idx: usize) -> f64 {
    let lo0 = diag.iter().cloned().fold(f64::INFINITY, f64::min) - 2.0 * off.abs();
    let hi0 = diag.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + 2.0 * off.abs();
    let (mut lo, mut hi) = (lo0, hi0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if sturm_count(diag, off, mid) > idx {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Lowest `count` eigenvalues of −ħ²/(2m) d²/dx² + (mω²/2)(x − x_c)² with
/// Dirichlet walls at x_c ± 8ℓ and `points` interior nodes.
pub fn oscillator_levels_fd(b: f64, p_y: f64, k: &PhysicalConstants, points: usize, count: usize) -> Vec<f64> {
    let omega = cyclotron_frequency(b, k);
    let ell = (k.hbar / (k.m * omega)).sqrt();
    let x_c = k.c * p_y / (k.e * b);
    let half = DOMAIN_HALF_WIDTH * ell;
    let h = 2.0 * half / (points + 1) as f64;
    let kin = k.hbar * k.hbar / (2.0 * k.m * h * h);
    let diag: Vec<f64> = (1..=points)
        .map(|i| {
            let x = x_c - half + i as f64 * h;
            2.0 * kin + 0.5 * k.m * omega * omega * (x - x_c).powi(2)
        })
        .collect();
    (0..count).map(|i| tridiagonal_eigenvalue(&diag, -kin, i)).collect()
}

/// Oscillator levels extrapolated from grids h, h/2, h/4.
pub fn oscillator_levels_richardson(b: f64, p_y: f64, k: &PhysicalConstants, points: usize, count: usize) -> Result<Vec<f64>> {
    let coarse = oscillator_levels_fd(b, p_y, k, points, count);
    let mid = oscillator_levels_fd(b, p_y, k, 2 * points + 1, count);
    let fine = oscillator_levels_fd(b, p_y, k, 4 * points + 3, count);
    let quantum = k.hbar * cyclotron_frequency(b, k);
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let r1 = (4.0 * mid[i] - coarse[i]) / 3.0;
        let r2 = (4.0 * fine[i] - mid[i]) / 3.0;
        let gap = (r1 - r2).abs() / r2.abs().max(quantum);
        if !(gap <= RICHARDSON_TOL) {
            return Err(Error::GridTooCoarse { gap });
        }
        out.push(r2);
    }
    Ok(out)
}

/// Lowest `count` Landau levels for fixed (B, p_y, p_z, λ) from the
/// finite-difference oscillator; `params.n` is ignored.
pub fn landau_oracle(params: &LandauParams, k: &PhysicalConstants, relativistic: bool, count: usize) -> Result<Vec<f64>> {
    landau_oracle_with(params, k, relativistic, count, DEFAULT_POINTS)
}

pub fn landau_oracle_with(
    params: &LandauParams,
    k: &PhysicalConstants,
    relativistic: bool,
    count: usize,
    points: usize,
) -> Result<Vec<f64>> {
    params.validate()?;
    k.validate()?;
    if count == 0 || count > MAX_ORACLE_LEVELS {
        return Err(Error::InvalidArgument(format!("count must be in 1..={MAX_ORACLE_LEVELS}, got {count}")));
    }
    let levels = oscillator_levels_richardson(params.b, params.p_y, k, points, count)?;
    let shift = spin_shift(params, k) * params.lambda as f64;
    let mc2 = k.m * k.c * k.c;
    Ok(levels
        .into_iter()
        .map(|eps| {
            if relativistic {
                let e2 = mc2 * mc2 + params.p_z * params.p_z * k.c * k.c + 2.0 * mc2 * (eps - shift);
                e2.sqrt()
            } else {
                params.p_z * params.p_z / (2.0 * k.m) + eps - shift
            }
        })
        .collect())
}

/// Relative error with denominator max(|E|, ħω) so zero-energy levels stay meaningful.
pub fn relative_error(closed: f64, oracle: f64, b: f64, k: &PhysicalConstants) -> f64 {
    (closed - oracle).abs() / closed.abs().max(k.hbar * cyclotron_frequency(b, k))
}

/// Expectation of −(ħe/2mc)B·K̂ on a K̂ eigenfunction built from `coeffs`,
/// returned as the scalar multiplying the state.
pub fn spin_term_shift(params: &LandauParams, k: &PhysicalConstants, coeffs: [C64; 4]) -> Result<C64> {
    let psi = general_eigenfunction(params.lambda as i32, coeffs)?;
    let op: OctonOperator = EigenTarget::Basis(crate::algebra::Basis::AxialK).operator() * (-spin_shift(params, k));
    let out = op.apply(&psi);
    ratio(&out, &psi)
}

fn ratio(out: &Octon, psi: &Octon) -> Result<C64> {
    let (idx, _) = psi
        .components()
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
        .expect("eight components");
    let pivot = psi.components()[idx];
    if pivot.norm() == 0.0 {
        return Err(Error::InvalidArgument("zero eigenfunction".into()));
    }
    let r = out.components()[idx] / pivot;
    if out.dist(&psi.scale(r)) > 1e-12 * out.max_norm().max(1.0) {
        return Err(Error::InvalidArgument("state is not an eigenfunction of the spin term".into()));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k() -> PhysicalConstants {
        PhysicalConstants::default()
    }

    fn params(n: u32, lambda: i8) -> LandauParams {
        LandauParams::new(1.0, 0.0, 0.0, n, lambda).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        assert!((landau_spectrum(&params(0, 1), &k(), false) - 1.0).abs() < 1e-15);
        assert!((landau_spectrum(&params(0, 1), &k(), true) - 3f64.sqrt()).abs() < 1e-15);
        assert!(landau_spectrum(&params(0, -1), &k(), false).abs() < 1e-15);
        assert!((landau_spectrum(&params(0, -1), &k(), true) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn oracle_levels_are_evenly_spaced() {
        let levels = landau_oracle(&params(0, 1), &k(), false, 5).unwrap();
        for (n, e) in levels.iter().enumerate() {
            assert!((e - (n as f64 + 1.0)).abs() < 1e-6, "{levels:?}");
        }
        let rel = landau_oracle(&params(0, -1), &k(), true, 1).unwrap();
        assert!((rel[0] - 1.0).abs() < 1e-6);
    }

    #[test]
    fn oracle_is_centered_on_the_orbit() {
        let p = LandauParams::new(2.0, 3.0, 0.5, 0, 1).unwrap();
        let shifted = landau_oracle(&p, &k(), false, 3).unwrap();
        let centered = landau_oracle(&LandauParams { p_y: 0.0, ..p }, &k(), false, 3).unwrap();
        for (a, b) in shifted.iter().zip(&centered) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn weak_field_is_free_particle() {
        let p = LandauParams::new(1e-6, 0.0, 0.4, 0, 1).unwrap();
        let e = landau_oracle(&p, &k(), false, 1).unwrap()[0];
        assert!((e - 0.08).abs() < 1e-5);
    }

    #[test]
    fn coarse_grid_is_reported() {
        let r = landau_oracle_with(&params(0, 1), &k(), false, 10, 12);
        assert!(matches!(r, Err(Error::GridTooCoarse { .. })));
    }

    #[test]
    fn spin_term_gives_lambda_shift() {
        let coeffs = [C64::new(0.3, 0.1), C64::new(-1.0, 0.0), C64::new(0.0, 0.7), C64::new(0.2, -0.4)];
        for lambda in [1, -1] {
            let p = params(0, lambda);
            let s = spin_term_shift(&p, &k(), coeffs).unwrap();
            assert!((s - C64::new(-(lambda as f64) * spin_shift(&p, &k()), 0.0)).norm() < 1e-14);
        }
    }
}
