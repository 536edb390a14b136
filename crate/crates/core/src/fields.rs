//! Quantum fields of an octonic plane wave and their first-order system.
//!
//! The fields are the grade parts of (1/c∂t + ∇ + ξ(mc/ħ)R̂)ψ written as
//! e − E⃗ − ξh̃E + ξH⃗.

use serde::{Deserialize, Serialize};

use crate::algebra::{dot3, Octon, Vec3, C64, XI};
use crate::dynamics::{apply_first_order, field_variant, kappa, PhysicalConstants, PlaneWaveState};
use crate::error::{Error, Result};
use crate::operators::{inversion_operator, left_multiplication_by};

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FieldSet {
    pub e: C64,
    pub e_vec: Vec3,
    /// Coefficient of the pseudoscalar field.
    pub h: C64,
    pub h_vec: Vec3,
}

impl FieldSet {
    /// Reads the fields off F = e − E⃗ − ξh̃E + ξH⃗.
    pub fn from_octon(f: &Octon) -> FieldSet {
        FieldSet {
            e: f.scalar_part(),
            e_vec: f.vector_part().map(|z| -z),
            h: XI * f.pseudoscalar_part(),
            h_vec: f.pseudovector_part().map(|z| -XI * z),
        }
    }

    pub fn to_octon(&self) -> Octon {
        Octon::from_grades(self.e, self.e_vec.map(|z| -z), -XI * self.h, self.h_vec.map(|z| XI * z))
    }

    pub fn max_norm(&self) -> f64 {
        self.to_octon().max_norm()
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.max_norm() <= tol
    }
}

/// Electromagnetic potentials applied to the plane-wave backend.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum ExternalPotential {
    Constant { phi: f64, a: [f64; 3] },
    /// Samples at arbitrary points; accepted only when all samples agree.
    Sampled { phi: Vec<f64>, a: Vec<[f64; 3]> },
}

impl ExternalPotential {
    pub fn constant(&self) -> Result<(f64, [f64; 3])> {
        match self {
            ExternalPotential::Constant { phi, a } => Ok((*phi, *a)),
            ExternalPotential::Sampled { phi, a } => {
                let (p0, a0) = (*phi.first().unwrap_or(&0.0), *a.first().unwrap_or(&[0.0; 3]));
                if phi.iter().any(|x| *x != p0) || a.iter().any(|x| *x != a0) {
                    return Err(Error::NonConstantPotential);
                }
                Ok((p0, a0))
            }
        }
    }
}

/// The state with E → E − eΦ and p → p − (e/c)A, which carries the gauged operators.
pub fn shifted_state(s: &PlaneWaveState, k: &PhysicalConstants, potential: Option<&ExternalPotential>) -> Result<PlaneWaveState> {
    let Some(potential) = potential else { return Ok(*s) };
    let (phi, a) = potential.constant()?;
    Ok(PlaneWaveState {
        energy: s.energy - k.e * phi,
        momentum: std::array::from_fn(|i| s.momentum[i] - k.e * a[i] / k.c),
        amplitude: s.amplitude,
    })
}

pub fn fields_from_state(s: &PlaneWaveState, k: &PhysicalConstants, potential: Option<&ExternalPotential>) -> Result<FieldSet> {
    let s = shifted_state(s, k, potential)?;
    Ok(FieldSet::from_octon(&apply_first_order(&field_variant(), &s, k)))
}

/// The fields assembled term by term from the components of ψ:
/// e = τψ₀ + (κ,ψ⃗) + ξμψ₀, E⃗ = −κψ₀ − τψ⃗ + ξμψ⃗ − [κ,φ⃗],
/// h̃ = ξτφ₀ + ξ(κ,φ⃗) + μφ₀, H⃗ = −ξ[κ,ψ⃗] − ξκφ₀ − ξτφ⃗ + μφ⃗.
pub fn fields_componentwise(s: &PlaneWaveState, k: &PhysicalConstants) -> FieldSet {
    let tau = s.tau(k);
    let kap = s.kappa(k).vector_part();
    let mu = C64::new(k.mu(), 0.0);
    let a = &s.amplitude;
    let (psi0, psi, phi0, phi) = (a.scalar_part(), a.vector_part(), a.pseudoscalar_part(), a.pseudovector_part());
    let kxpsi = cross(&kap, &psi);
    let kxphi = cross(&kap, &phi);
    // [κ, v] for polar κ is ξ(κ × v) in either grade.
    FieldSet {
        e: tau * psi0 + dot3(&kap, &psi) + XI * mu * psi0,
        e_vec: std::array::from_fn(|i| -kap[i] * psi0 - tau * psi[i] + XI * mu * psi[i] - XI * kxphi[i]),
        h: XI * tau * phi0 + XI * dot3(&kap, &phi) + mu * phi0,
        h_vec: std::array::from_fn(|i| -XI * XI * kxpsi[i] - XI * kap[i] * phi0 - XI * tau * phi[i] + mu * phi[i]),
    }
}

fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    crate::algebra::cross3(a, b)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FieldResiduals {
    pub scalar: C64,
    pub pseudoscalar: C64,
    pub vector: Vec3,
    pub pseudovector: Vec3,
}

impl FieldResiduals {
    /// Max component modulus per grade: scalar, pseudoscalar, vector, pseudovector.
    pub fn norms(&self) -> [f64; 4] {
        let vmax = |v: &Vec3| v.iter().map(|z| z.norm()).fold(0.0, f64::max);
        [self.scalar.norm(), self.pseudoscalar.norm(), vmax(&self.vector), vmax(&self.pseudovector)]
    }

    pub fn max_norm(&self) -> f64 {
        self.norms().into_iter().fold(0.0, f64::max)
    }
}

/// Residuals of the four grade equations
/// (κ,E⃗) + τe − ξμe, (κ,H⃗) + τh̃ + ξμh̃,
/// [κ,H⃗] − ξτE⃗ − ξκe + μE⃗, [κ,E⃗] + ξτH⃗ + ξκh̃ + μH⃗,
/// evaluated from the fields of the (optionally gauged) state.
pub fn field_system_residual(s: &PlaneWaveState, k: &PhysicalConstants, potential: Option<&ExternalPotential>) -> Result<FieldResiduals> {
    let s = shifted_state(s, k, potential)?;
    let f = FieldSet::from_octon(&apply_first_order(&field_variant(), &s, k));
    Ok(system_from_fields(&f, &s, k))
}

pub fn system_from_fields(f: &FieldSet, s: &PlaneWaveState, k: &PhysicalConstants) -> FieldResiduals {
    let tau = s.tau(k);
    let kap = s.kappa(k).vector_part();
    let mu = C64::new(k.mu(), 0.0);
    let kxh = cross(&kap, &f.h_vec);
    let kxe = cross(&kap, &f.e_vec);
    FieldResiduals {
        scalar: dot3(&kap, &f.e_vec) + tau * f.e - XI * mu * f.e,
        pseudoscalar: dot3(&kap, &f.h_vec) + tau * f.h + XI * mu * f.h,
        vector: std::array::from_fn(|i| XI * kxh[i] - XI * tau * f.e_vec[i] - XI * kap[i] * f.e + mu * f.e_vec[i]),
        pseudovector: std::array::from_fn(|i| XI * kxe[i] + XI * tau * f.h_vec[i] + XI * kap[i] * f.h + mu * f.h_vec[i]),
    }
}

/// (1/c∂t − ∇ − ξ(mc/ħ)R̂) applied to the reassembled fields.
pub fn second_factor_on_fields(f: &FieldSet, s: &PlaneWaveState, k: &PhysicalConstants) -> Octon {
    let x = f.to_octon();
    x.scale(s.tau(k)) - left_multiplication_by(&s.kappa(k)).apply(&x) - inversion_operator().apply(&x).scale(XI * k.mu())
}

/// The two gauge expressions τψ₀ + (κ,ψ⃗) + ξμψ₀ and τφ₀ + (κ,φ⃗) − ξμφ₀.
pub fn gauge_residual(s: &PlaneWaveState, k: &PhysicalConstants) -> (C64, C64) {
    let tau = s.tau(k);
    let kap = s.kappa(k).vector_part();
    let mu = k.mu();
    let a = &s.amplitude;
    (
        tau * a.scalar_part() + dot3(&kap, &a.vector_part()) + XI * mu * a.scalar_part(),
        tau * a.pseudoscalar_part() + dot3(&kap, &a.pseudovector_part()) - XI * mu * a.pseudoscalar_part(),
    )
}

/// Which four-component potential set describes the fields.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PotentialKind {
    /// Scalar ψ′₀ and vector ψ⃗′: E⃗ = −ξ∇ψ′₀ − (1/c)∂ψ⃗′/∂t + ξ(mc/ħ)ψ⃗′, H⃗ = [∇, ψ⃗′].
    Vector,
    /// Pseudoscalar φ′₀ and pseudovector φ⃗′: E⃗ = [∇, φ⃗′], H⃗ = −∇φ′₀ + (ξ/c)∂φ⃗′/∂t − (mc/ħ)φ⃗′.
    Pseudovector,
}

/// Plane-wave potentials sharing the phase exp{ξ/ħ(−Et + p·r)}.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PotentialPair {
    pub energy: f64,
    pub momentum: [f64; 3],
    pub scalar: C64,
    pub vector: Vec3,
}

impl PotentialPair {
    fn symbols(&self, k: &PhysicalConstants) -> (C64, Vec3, C64) {
        (crate::dynamics::tau(self.energy, k), kappa(self.momentum, k).vector_part(), C64::new(k.mu(), 0.0))
    }
}

pub const GAUGE_TOL: f64 = 1e-12;

/// Scalar gauge expression of the potentials: (κ,ψ⃗′) + τψ′₀ + ξμψ′₀ for
/// vector potentials, (κ,φ⃗′) + τφ′₀ − ξμφ′₀ for pseudovector ones.
pub fn potential_gauge_residual(p: &PotentialPair, k: &PhysicalConstants, kind: PotentialKind) -> C64 {
    let (tau, kap, mu) = p.symbols(k);
    let sign = match kind {
        PotentialKind::Vector => 1.0,
        PotentialKind::Pseudovector => -1.0,
    };
    dot3(&kap, &p.vector) + tau * p.scalar + XI * mu * p.scalar * sign
}

/// Fields from potentials without the gauge precondition.
pub fn potential_fields(p: &PotentialPair, k: &PhysicalConstants, kind: PotentialKind) -> (Vec3, Vec3) {
    let (tau, kap, mu) = p.symbols(k);
    let bracket = cross(&kap, &p.vector).map(|z| XI * z);
    match kind {
        PotentialKind::Vector => {
            let e = std::array::from_fn(|i| -XI * kap[i] * p.scalar - tau * p.vector[i] + XI * mu * p.vector[i]);
            (e, bracket)
        }
        PotentialKind::Pseudovector => {
            let h = std::array::from_fn(|i| -kap[i] * p.scalar + XI * tau * p.vector[i] - mu * p.vector[i]);
            (bracket, h)
        }
    }
}

pub fn fields_from_potentials(p: &PotentialPair, k: &PhysicalConstants, kind: PotentialKind) -> Result<(Vec3, Vec3)> {
    let residual = potential_gauge_residual(p, k, kind).norm();
    let scale = p.vector.iter().chain(std::iter::once(&p.scalar)).map(|z| z.norm()).fold(1.0, f64::max);
    let tolerance = GAUGE_TOL * scale * (1.0 + kappa(p.momentum, k).max_norm() + k.mu() + p.energy.abs() / (k.hbar * k.c));
    if !(residual <= tolerance) {
        return Err(Error::GaugeViolated { residual, tolerance });
    }
    Ok(potential_fields(p, k, kind))
}

/// Adds the pure-gauge increment generated by the plane-wave scalar F:
/// ψ⃗″ = ∇F, ψ″₀ = (ξ/c)∂F/∂t + (mc/ħ)F for vector potentials and
/// φ⃗″ = ∇F, φ″₀ = (ξ/c)∂F/∂t − (mc/ħ)F for pseudovector ones.
pub fn gauge_shift(p: &PotentialPair, f: C64, k: &PhysicalConstants, kind: PotentialKind) -> PotentialPair {
    let (tau, kap, mu) = p.symbols(k);
    let sign = match kind {
        PotentialKind::Vector => 1.0,
        PotentialKind::Pseudovector => -1.0,
    };
    PotentialPair {
        scalar: p.scalar + (XI * tau + mu * sign) * f,
        vector: std::array::from_fn(|i| p.vector[i] + kap[i] * f),
        ..*p
    }
}

/// Change of the gauge expression under a shift by F, by direct substitution:
/// [(κ,κ) + (τ + ξsμ)(ξτ + sμ)]F with s = ±1 for vector/pseudovector potentials.
pub fn gauge_shift_consistency(p: &PotentialPair, f: C64, k: &PhysicalConstants, kind: PotentialKind) -> C64 {
    let (tau, kap, mu) = p.symbols(k);
    let s = match kind {
        PotentialKind::Vector => 1.0,
        PotentialKind::Pseudovector => -1.0,
    };
    (dot3(&kap, &kap) + (tau + XI * mu * s) * (XI * tau + mu * s)) * f
}
