//! Plane-wave calculus for the octonic wave equations.
//!
//! A plane wave ψ = A·exp{ξ/ħ(−Et + p·r)} turns (1/c)∂/∂t into the scalar
//! τ = −ξE/(ħc) and ∇ into left multiplication by the polar octon κ = ξp/ħ.

pub mod grid;
pub mod landau;

use serde::{Deserialize, Serialize};

use crate::algebra::{Basis, Octon, C64, ONE, XI};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::operators::{inversion_operator, left_multiplication_by, pseudoscalar_inversion_operator, OctonOperator};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub c: f64,
    pub m: f64,
    /// Particle charge; negative for the electron.
    pub e: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        PhysicalConstants { hbar: 1.0, c: 1.0, m: 1.0, e: -1.0 }
    }
}

impl PhysicalConstants {
    pub fn natural(m: f64, e: f64) -> PhysicalConstants {
        PhysicalConstants { hbar: 1.0, c: 1.0, m, e }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.hbar > 0.0 && self.c > 0.0 && self.m >= 0.0) {
            return Err(Error::InvalidArgument(format!("need hbar > 0, c > 0, m >= 0; got {self:?}")));
        }
        Ok(())
    }

    /// mc/ħ.
    pub fn mu(&self) -> f64 {
        self.m * self.c / self.hbar
    }

    /// √(p²c² + m²c⁴).
    pub fn on_shell_energy(&self, p: [f64; 3]) -> f64 {
        let p2 = p.iter().map(|x| x * x).sum::<f64>();
        (p2 * self.c * self.c + self.m * self.m * self.c.powi(4)).sqrt()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlaneWaveState {
    pub energy: f64,
    pub momentum: [f64; 3],
    pub amplitude: Octon,
}

impl PlaneWaveState {
    pub fn new(energy: f64, momentum: [f64; 3], amplitude: Octon) -> PlaneWaveState {
        PlaneWaveState { energy, momentum, amplitude }
    }

    /// τ = −ξE/(ħc).
    pub fn tau(&self, k: &PhysicalConstants) -> C64 {
        tau(self.energy, k)
    }

    /// κ = ξp/ħ as a polar octon.
    pub fn kappa(&self, k: &PhysicalConstants) -> Octon {
        kappa(self.momentum, k)
    }

    /// Value of the wave at (t, r).
    pub fn value_at(&self, k: &PhysicalConstants, t: f64, r: [f64; 3]) -> Octon {
        let phase = (-self.energy * t + self.momentum[0] * r[0] + self.momentum[1] * r[1] + self.momentum[2] * r[2]) / k.hbar;
        self.amplitude.scale(C64::from_polar(1.0, phase))
    }
}

pub fn tau(energy: f64, k: &PhysicalConstants) -> C64 {
    -XI * (energy / (k.hbar * k.c))
}

pub fn kappa(p: [f64; 3], k: &PhysicalConstants) -> Octon {
    Octon::polar(p.map(|x| XI * (x / k.hbar)))
}

/// Operator multiplying the time derivative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TimeFactor {
    Identity,
    /// ξR̂
    XiInversion,
    /// ÊR̂
    PseudoscalarInversion,
}

/// Operator multiplying mc/ħ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MassOperator {
    /// ξR̂
    XiInversion,
    /// ÊR̂
    PseudoscalarInversion,
    Identity,
}

fn time_operator(t: TimeFactor) -> OctonOperator {
    match t {
        TimeFactor::Identity => OctonOperator::identity(),
        TimeFactor::XiInversion => inversion_operator().scale(XI),
        TimeFactor::PseudoscalarInversion => pseudoscalar_inversion_operator(),
    }
}

fn mass_operator(m: MassOperator) -> OctonOperator {
    match m {
        MassOperator::XiInversion => inversion_operator().scale(XI),
        MassOperator::PseudoscalarInversion => pseudoscalar_inversion_operator(),
        MassOperator::Identity => OctonOperator::identity(),
    }
}

/// (time_factor·(1/c)∂t + gradient_sign·∇ + mass_sign·(mc/ħ)·mass_operator)ψ = 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FirstOrderSpec {
    pub time_factor: TimeFactor,
    pub gradient_sign: i8,
    pub mass_operator: MassOperator,
    pub mass_sign: i8,
}

impl FirstOrderSpec {
    pub const fn new(time_factor: TimeFactor, gradient_sign: i8, mass_operator: MassOperator, mass_sign: i8) -> Self {
        FirstOrderSpec { time_factor, gradient_sign, mass_operator, mass_sign }
    }

    /// The partner whose product with `self` gives the Klein-Gordon operator.
    pub fn conjugate(&self) -> FirstOrderSpec {
        match self.time_factor {
            TimeFactor::Identity => FirstOrderSpec { gradient_sign: -self.gradient_sign, mass_sign: -self.mass_sign, ..*self },
            _ => FirstOrderSpec { mass_sign: -self.mass_sign, ..*self },
        }
    }

    /// Sign σ in left∘right = σ·(Klein-Gordon operator).
    pub fn factorization_sign(&self) -> f64 {
        match self.time_factor {
            TimeFactor::Identity => 1.0,
            _ => -1.0,
        }
    }

    pub fn name(&self) -> Option<&'static str> {
        VARIANTS.iter().find(|(_, s)| s == self).map(|(n, _)| *n)
    }

    pub fn from_name(name: &str) -> Option<FirstOrderSpec> {
        VARIANTS.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
    }
}

use MassOperator as MO;
use TimeFactor as TF;

/// Named first-order variants. `xir` uses the ξR̂ mass term, `er` the ÊR̂ one;
/// the suffix gives the signs of the gradient and mass terms. The `time-`
/// variants move R̂ onto the time derivative.
pub const VARIANTS: [(&str, FirstOrderSpec); 10] = [
    ("xir-pp", FirstOrderSpec::new(TF::Identity, 1, MO::XiInversion, 1)),
    ("xir-pm", FirstOrderSpec::new(TF::Identity, 1, MO::XiInversion, -1)),
    ("xir-mp", FirstOrderSpec::new(TF::Identity, -1, MO::XiInversion, 1)),
    ("xir-mm", FirstOrderSpec::new(TF::Identity, -1, MO::XiInversion, -1)),
    ("er-pp", FirstOrderSpec::new(TF::Identity, 1, MO::PseudoscalarInversion, 1)),
    ("er-pm", FirstOrderSpec::new(TF::Identity, 1, MO::PseudoscalarInversion, -1)),
    ("er-mp", FirstOrderSpec::new(TF::Identity, -1, MO::PseudoscalarInversion, 1)),
    ("er-mm", FirstOrderSpec::new(TF::Identity, -1, MO::PseudoscalarInversion, -1)),
    ("time-xir", FirstOrderSpec::new(TF::XiInversion, 1, MO::Identity, -1)),
    ("time-er", FirstOrderSpec::new(TF::PseudoscalarInversion, 1, MO::Identity, 1)),
];

/// The field-defining variant (ξR̂ mass term, both signs positive).
pub fn field_variant() -> FirstOrderSpec {
    VARIANTS[0].1
}

pub fn variant_names() -> Vec<&'static str> {
    VARIANTS.iter().map(|(n, _)| *n).collect()
}

fn operator_for(spec: &FirstOrderSpec, energy: f64, p: [f64; 3], k: &PhysicalConstants) -> OctonOperator {
    time_operator(spec.time_factor).scale(tau(energy, k))
        + left_multiplication_by(&kappa(p, k)) * spec.gradient_sign as f64
        + mass_operator(spec.mass_operator) * (spec.mass_sign as f64 * k.mu())
}

/// 8×8 matrix M(E, p) with M·amplitude equal to the operator applied to the plane wave.
pub fn first_order_matrix(spec: &FirstOrderSpec, energy: f64, p: [f64; 3], k: &PhysicalConstants) -> CMatrix {
    operator_for(spec, energy, p, k).to_dmatrix()
}

pub fn apply_first_order(spec: &FirstOrderSpec, s: &PlaneWaveState, k: &PhysicalConstants) -> Octon {
    operator_for(spec, s.energy, s.momentum, k).apply(&s.amplitude)
}

/// ((−E² + p²c²)/(ħ²c²) + m²c²/ħ²)·amplitude.
pub fn kg_residual(s: &PlaneWaveState, k: &PhysicalConstants) -> Octon {
    s.amplitude * kg_symbol(s.energy, s.momentum, k)
}

pub fn kg_symbol(energy: f64, p: [f64; 3], k: &PhysicalConstants) -> f64 {
    let p2: f64 = p.iter().map(|x| x * x).sum();
    (-energy * energy + p2 * k.c * k.c) / (k.hbar * k.hbar * k.c * k.c) + k.mu() * k.mu()
}

/// left∘right applied to the plane wave minus σ·(Klein-Gordon symbol)·amplitude.
pub fn factorization_residual(
    left: &FirstOrderSpec,
    right: &FirstOrderSpec,
    s: &PlaneWaveState,
    k: &PhysicalConstants,
) -> Result<Octon> {
    if *left != right.conjugate() {
        return Err(Error::NotConjugatePair(format!("{:?} is not the partner of {:?}", left.name(), right.name())));
    }
    let lr = operator_for(left, s.energy, s.momentum, k).compose(&operator_for(right, s.energy, s.momentum, k));
    Ok(lr.apply(&s.amplitude) - kg_residual(s, k) * right.factorization_sign())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DispersionRoot {
    pub energy: C64,
    /// Number of eigenvalues in the cluster.
    pub multiplicity: usize,
    /// Dimension of the nullspace of M at the root.
    pub nullity: usize,
}

pub const NULLITY_TOL: f64 = 1e-8;

/// Nullspace dimension of M(E, p) at singular-value threshold 1e-8 (relative).
pub fn nullity(spec: &FirstOrderSpec, energy: f64, p: [f64; 3], k: &PhysicalConstants) -> usize {
    let m = first_order_matrix(spec, energy, p, k);
    linalg::nullspace(&m, NULLITY_TOL, None).len()
}

/// Roots E of det M(E, p) = 0 with multiplicities, sorted by real part.
///
/// M(E) = A − E·B with B = ξT/(ħc) invertible, so the roots are the
/// eigenvalues of B⁻¹A.
pub fn dispersion_roots(spec: &FirstOrderSpec, p: [f64; 3], k: &PhysicalConstants) -> Vec<DispersionRoot> {
    let a = first_order_matrix(spec, 0.0, p, k);
    let b = time_operator(spec.time_factor).to_dmatrix() * (XI / (k.hbar * k.c));
    let binv = b.try_inverse().expect("time factor is invertible");
    let mut values = linalg::eigenvalues(&(binv * a));
    values.sort_by(|x, y| x.re.total_cmp(&y.re));
    let scale = k.on_shell_energy(p).max(1e-300);
    let mut roots: Vec<DispersionRoot> = linalg::cluster(&values.iter().map(|v| v / scale).collect::<Vec<_>>(), 1e-6)
        .into_iter()
        .map(|(v, n)| {
            let e = v * scale;
            let re = if e.im.abs() <= 1e-9 * scale { e.re } else { f64::NAN };
            let nullity = if re.is_nan() { 0 } else { nullity(spec, re, p, k) };
            DispersionRoot { energy: e, multiplicity: n, nullity }
        })
        .collect();
    roots.sort_by(|x, y| x.energy.re.total_cmp(&y.energy.re));
    roots
}

/// det M(E) / (E² − p²c² − m²c⁴)⁴ at the given energies; constant when the
/// determinant is a multiple of the quartic power.
pub fn determinant_ratios(spec: &FirstOrderSpec, p: [f64; 3], k: &PhysicalConstants, energies: &[f64]) -> Vec<C64> {
    let w2 = k.on_shell_energy(p).powi(2);
    energies
        .iter()
        .map(|&e| linalg::determinant(&first_order_matrix(spec, e, p, k)) / (e * e - w2).powi(4))
        .collect()
}

/// (E − eΦ + pc − eA)(E − eΦ − pc + eA) − [(E − eΦ)² − (p − eA/c)²c²].
pub fn einstein_identity_residual(energy: f64, p: [f64; 3], phi: f64, a: [f64; 3], k: &PhysicalConstants) -> Octon {
    let s = energy - k.e * phi;
    let v: [f64; 3] = std::array::from_fn(|i| p[i] * k.c - k.e * a[i]);
    let sum = Octon::scalar(s.into()) + Octon::polar_real(v);
    let diff = Octon::scalar(s.into()) - Octon::polar_real(v);
    let q: [f64; 3] = std::array::from_fn(|i| p[i] - k.e * a[i] / k.c);
    let scalar = s * s - q.iter().map(|x| x * x).sum::<f64>() * k.c * k.c;
    sum * diff - Octon::scalar(scalar.into())
}

/// Term of a component equation: coefficient, derivative (`t` for (1/c)∂t,
/// `x`, `y`, `z`, or `m` for the mass factor mc/ħ) and source component.
pub type ComponentTerm = (&'static str, char, usize);

/// The component system of the field-defining first-order equation as printed.
pub const PRINTED_COMPONENT_SYSTEM: [[ComponentTerm; 5]; 8] = [
    [("1", 't', 0), ("1", 'x', 1), ("1", 'y', 2), ("1", 'z', 3), ("ξ", 'm', 0)],
    [("1", 't', 1), ("1", 'x', 0), ("ξ", 'y', 7), ("-ξ", 'z', 6), ("-ξ", 'm', 1)],
    [("1", 't', 2), ("1", 'y', 0), ("ξ", 'z', 5), ("-ξ", 'x', 7), ("-ξ", 'm', 2)],
    [("1", 't', 3), ("1", 'z', 0), ("ξ", 'y', 7), ("-ξ", 'z', 6), ("-ξ", 'm', 3)],
    [("1", 't', 4), ("1", 'x', 5), ("1", 'y', 6), ("1", 'z', 7), ("ξ", 'm', 4)],
    [("1", 't', 5), ("1", 'x', 4), ("ξ", 'y', 3), ("-ξ", 'z', 2), ("-ξ", 'm', 5)],
    [("1", 't', 6), ("1", 'y', 4), ("ξ", 'z', 1), ("-ξ", 'x', 3), ("-ξ", 'm', 6)],
    [("1", 't', 7), ("1", 'z', 4), ("ξ", 'y', 3), ("-ξ", 'z', 2), ("-ξ", 'm', 7)],
];

fn coefficient(tok: &str) -> C64 {
    match tok {
        "1" => ONE,
        "-1" => -ONE,
        "ξ" => XI,
        "-ξ" => -XI,
        other => panic!("unexpected coefficient {other:?}"),
    }
}

/// Plane-wave matrix of a component system.
pub fn component_system_matrix(
    system: &[[ComponentTerm; 5]; 8],
    energy: f64,
    p: [f64; 3],
    k: &PhysicalConstants,
) -> CMatrix {
    let mut m = CMatrix::zeros(8, 8);
    for (r, row) in system.iter().enumerate() {
        for &(c, d, src) in row {
            let symbol = match d {
                't' => tau(energy, k),
                'x' => XI * (p[0] / k.hbar),
                'y' => XI * (p[1] / k.hbar),
                'z' => XI * (p[2] / k.hbar),
                'm' => C64::new(k.mu(), 0.0),
                other => panic!("unexpected derivative {other:?}"),
            };
            m[(r, src)] += coefficient(c) * symbol;
        }
    }
    m
}

/// Rows where the printed component system disagrees with the generated
/// operator matrix at (E, p).
pub fn component_system_mismatches(energy: f64, p: [f64; 3], k: &PhysicalConstants) -> Vec<usize> {
    let printed = component_system_matrix(&PRINTED_COMPONENT_SYSTEM, energy, p, k);
    let generated = first_order_matrix(&field_variant(), energy, p, k);
    (0..8)
        .filter(|&r| (0..8).any(|c| (printed[(r, c)] - generated[(r, c)]).norm() > 1e-12))
        .collect()
}

/// Label of the component equation in a row.
pub fn row_label(r: usize) -> &'static str {
    Basis::from_index(r).label()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k() -> PhysicalConstants {
        PhysicalConstants::default()
    }

    #[test]
    fn rest_state_examples() {
        let spec = field_variant();
        let at_rest = PlaneWaveState::new(1.0, [0.0; 3], Octon::one());
        assert!(apply_first_order(&spec, &at_rest, &k()).max_norm() < 1e-15);
        let off = PlaneWaveState::new(2.0, [0.0; 3], Octon::one());
        assert!(apply_first_order(&spec, &off, &k()).dist(&Octon::scalar(-XI)) < 1e-15);
        let zero = PlaneWaveState::new(2.0, [1.0, 2.0, 3.0], Octon::zero());
        assert!(apply_first_order(&spec, &zero, &k()).is_zero());
    }

    #[test]
    fn roots_at_rest_and_moving() {
        for (_, spec) in VARIANTS {
            let r = dispersion_roots(&spec, [0.0; 3], &k());
            assert_eq!(r.len(), 2, "{spec:?}");
            assert!((r[0].energy.re + 1.0).abs() < 1e-12 && (r[1].energy.re - 1.0).abs() < 1e-12);
            assert!(r.iter().all(|x| x.multiplicity == 4 && x.nullity == 4));
            let r = dispersion_roots(&spec, [3.0, 0.0, 0.0], &k());
            assert!((r[1].energy.re - 10f64.sqrt()).abs() < 1e-12);
            assert!(r.iter().all(|x| x.multiplicity == 4 && x.nullity == 4));
        }
        let massless = PhysicalConstants::natural(0.0, -1.0);
        let r = dispersion_roots(&field_variant(), [1.0, 0.0, 0.0], &massless);
        assert!((r[0].energy.re + 1.0).abs() < 1e-12 && r[0].nullity == 4);
    }

    #[test]
    fn determinant_is_quartic_power() {
        let p = [0.3, -1.2, 0.5];
        for (_, spec) in VARIANTS {
            let ratios = determinant_ratios(&spec, p, &k(), &[0.1, 0.7, 2.5, -3.0]);
            for r in &ratios {
                assert!((r - ratios[0]).norm() <= 1e-9 * ratios[0].norm(), "{spec:?} {ratios:?}");
            }
        }
    }

    #[test]
    fn factorizations() {
        let amp = Octon::new(std::array::from_fn(|i| C64::new(i as f64 - 2.0, 0.5 * i as f64)));
        let s = PlaneWaveState::new(0.7, [0.2, -0.4, 1.1], amp);
        for (_, spec) in VARIANTS {
            let r = factorization_residual(&spec.conjugate(), &spec, &s, &k()).unwrap();
            assert!(r.max_norm() < 1e-12, "{spec:?}");
        }
        let a = FirstOrderSpec::from_name("xir-mm").unwrap();
        let b = FirstOrderSpec::from_name("er-pp").unwrap();
        assert!(matches!(factorization_residual(&a, &b, &s, &k()), Err(Error::NotConjugatePair(_))));
    }

    #[test]
    fn kg_examples() {
        let s = PlaneWaveState::new(0.0, [0.0; 3], Octon::basis(Basis::AxialJ));
        assert_eq!(kg_residual(&s, &k()), Octon::basis(Basis::AxialJ));
        let on = PlaneWaveState::new(k().on_shell_energy([1.0, 2.0, 0.0]), [1.0, 2.0, 0.0], Octon::one());
        assert!(kg_residual(&on, &k()).max_norm() < 1e-14);
    }

    #[test]
    fn einstein_identity() {
        let r = einstein_identity_residual(2.3, [0.4, -1.0, 0.2], 0.7, [1.5, 0.1, -0.3], &k());
        assert!(r.max_norm() < 1e-13);
    }

    #[test]
    fn printed_component_system_rows() {
        assert_eq!(component_system_mismatches(0.9, [0.3, -0.8, 0.5], &k()), vec![3, 4, 5, 6, 7]);
    }
}
