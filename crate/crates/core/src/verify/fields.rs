use rand::Rng;
use serde_json::{json, Value};

use super::{random_c64, random_octon, random_vec3, rng_for, worst_case, VerifyOptions};
use crate::algebra::{dot3, Octon, Vec3, XI};
use crate::dynamics::{field_variant, first_order_matrix, kappa, kg_symbol, PhysicalConstants, PlaneWaveState};
use crate::fields::{
    field_system_residual, fields_componentwise, fields_from_state, gauge_residual, gauge_shift, gauge_shift_consistency,
    potential_fields, potential_gauge_residual, second_factor_on_fields, ExternalPotential, PotentialKind, PotentialPair,
};
use crate::linalg;
use crate::report::{Check, VerificationReport};

const STATES: usize = 200;
const TOL: f64 = 1e-12;
const SYSTEM: &str = "first-order system for the quantum fields";
const POTENTIALS: &str = "field potentials and gauge transformations";

fn on_shell(rng: &mut impl Rng, k: &PhysicalConstants) -> PlaneWaveState {
    let p = random_vec3(rng, 2.0);
    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    PlaneWaveState::new(sign * k.on_shell_energy(p), p, random_octon(rng))
}

/// A state whose Klein-Gordon symbol is at least 0.1 in magnitude.
fn off_shell(rng: &mut impl Rng, k: &PhysicalConstants) -> PlaneWaveState {
    loop {
        let p = random_vec3(rng, 2.0);
        let e = rng.gen_range(-4.0..4.0);
        if kg_symbol(e, p, k).abs() >= 0.1 {
            return PlaneWaveState::new(e, p, random_octon(rng));
        }
    }
}

fn describe(s: &PlaneWaveState) -> Value {
    json!({ "energy": s.energy, "momentum": s.momentum, "amplitude": s.amplitude.to_string() })
}

fn random_potential(rng: &mut impl Rng) -> (f64, [f64; 3]) {
    (rng.gen_range(-1.0..1.0), random_vec3(rng, 1.0))
}

/// Lab-frame state whose kinetic part E − eΦ, p − eA/c is `kinetic`.
fn lab_state(kinetic: &PlaneWaveState, phi: f64, a: [f64; 3], k: &PhysicalConstants) -> PlaneWaveState {
    PlaneWaveState {
        energy: kinetic.energy + k.e * phi,
        momentum: std::array::from_fn(|i| kinetic.momentum[i] + k.e * a[i] / k.c),
        amplitude: kinetic.amplitude,
    }
}

pub fn verify(opts: &VerifyOptions) -> VerificationReport {
    let mut report = VerificationReport::new("fields", opts.seed);
    let k = PhysicalConstants::default();
    let mut rng = rng_for(opts.seed, 14);

    let on: Vec<PlaneWaveState> = (0..STATES).map(|_| on_shell(&mut rng, &k)).collect();
    let off: Vec<PlaneWaveState> = (0..STATES).map(|_| off_shell(&mut rng, &k)).collect();

    let r: Vec<(f64, Value)> =
        on.iter().map(|s| (field_system_residual(s, &k, None).map_or(f64::INFINITY, |r| r.max_norm()), describe(s))).collect();
    report.push(worst_case("fields.system.on-shell", "fields of on-shell plane waves satisfy all four grade equations", SYSTEM, &r, TOL));

    // Off shell the residual is the Klein-Gordon symbol times the amplitude.
    let r: Vec<(f64, Value)> = off
        .iter()
        .map(|s| {
            let got = field_system_residual(s, &k, None).map_or(0.0, |r| r.max_norm());
            let expected = kg_symbol(s.energy, s.momentum, &k).abs() * s.amplitude.max_norm();
            ((got - expected).abs() / expected, describe(s))
        })
        .collect();
    report.push(worst_case("fields.system.off-shell-scale", "off-shell residuals equal the Klein-Gordon symbol times the amplitude", SYSTEM, &r, 1e-10));
    let floor = off
        .iter()
        .map(|s| field_system_residual(s, &k, None).map_or(0.0, |r| r.max_norm()))
        .fold(f64::INFINITY, f64::min);
    report.push(
        Check::holds("fields.system.off-shell-nonzero", "off-shell residuals stay bounded away from zero", SYSTEM, floor > 1e-3)
            .with_counterexample(json!({ "smallest_residual": floor })),
    );

    let r: Vec<(f64, Value)> = on
        .iter()
        .chain(&off)
        .map(|s| {
            let f = fields_from_state(s, &k, None).expect("no potential");
            let g = second_factor_on_fields(&f, s, &k);
            let expected = s.amplitude * kg_symbol(s.energy, s.momentum, &k);
            (g.dist(&expected), describe(s))
        })
        .collect();
    report.push(worst_case(
        "fields.system.second-factor",
        "the conjugate factor applied to the fields gives the Klein-Gordon operator on the state",
        SYSTEM,
        &r,
        1e-11,
    ));

    let mut gauged = vec![];
    let mut gauged_off = vec![];
    for (s, o) in on.iter().zip(&off) {
        let (phi, a) = random_potential(&mut rng);
        let pot = ExternalPotential::Constant { phi, a };
        let lab = lab_state(s, phi, a, &k);
        let ctx = json!({ "state": describe(&lab), "phi": phi, "a": a });
        gauged.push((field_system_residual(&lab, &k, Some(&pot)).map_or(f64::INFINITY, |r| r.max_norm()), ctx.clone()));
        let lab_off = lab_state(o, phi, a, &k);
        gauged_off.push(field_system_residual(&lab_off, &k, Some(&pot)).map_or(0.0, |r| r.max_norm()));
    }
    report.push(worst_case(
        "fields.system.gauged-on-shell",
        "with constant potentials the shifted on-shell state satisfies the gauged system",
        SYSTEM,
        &gauged,
        TOL,
    ));
    let floor = gauged_off.iter().copied().fold(f64::INFINITY, f64::min);
    report.push(
        Check::holds(
            "fields.system.gauged-off-shell-nonzero",
            "gauged residuals stay bounded away from zero off shell",
            SYSTEM,
            floor > 1e-3,
        )
        .with_counterexample(json!({ "smallest_residual": floor })),
    );

    let r: Vec<(f64, Value)> = on
        .iter()
        .chain(&off)
        .map(|s| (fields_from_state(s, &k, None).expect("no potential").to_octon().dist(&fields_componentwise(s, &k).to_octon()), describe(s)))
        .collect();
    report.push(worst_case(
        "fields.componentwise",
        "grade split of the operator output matches the fields assembled component by component",
        SYSTEM,
        &r,
        TOL,
    ));

    let r: Vec<(f64, Value)> = off
        .iter()
        .map(|s| {
            let f = fields_from_state(s, &k, None).expect("no potential");
            let (g0, g1) = gauge_residual(s, &k);
            ((g0 - f.e).norm().max((g1 + XI * f.h).norm()), describe(s))
        })
        .collect();
    report.push(worst_case(
        "fields.gauge-expressions",
        "the two gauge expressions of the state are the scalar field e and -ξh",
        SYSTEM,
        &r,
        TOL,
    ));

    verify_nullspace(&mut report, &k, &mut rng);
    verify_potentials(&mut report, &k, &mut rng);
    report
}

fn verify_nullspace(report: &mut VerificationReport, k: &PhysicalConstants, rng: &mut impl Rng) {
    let mut r = vec![];
    let mut dims = vec![];
    for _ in 0..50 {
        let p = random_vec3(rng, 2.0);
        for sign in [1.0, -1.0] {
            let e = sign * k.on_shell_energy(p);
            let basis = linalg::nullspace(&first_order_matrix(&field_variant(), e, p, k), 1e-8, None);
            dims.push(basis.len());
            // Random combination of the nullspace basis.
            let mut amp = Octon::zero();
            for v in &basis {
                let c = random_c64(rng);
                amp = amp + Octon::new(std::array::from_fn(|i| v[i])).scale(c);
            }
            let f = fields_from_state(&PlaneWaveState::new(e, p, amp), k, None).expect("no potential");
            r.push((f.max_norm() / amp.max_norm().max(1e-300), json!({ "energy": e, "momentum": p })));
        }
    }
    report.push(worst_case(
        "fields.nullspace-field-free",
        "every plane-wave solution of the field-defining equation has identically zero fields",
        SYSTEM,
        &r,
        TOL,
    ));
    report.push(
        Check::holds("fields.nullspace-dimension", "the solution space at each on-shell energy is four-dimensional", SYSTEM, dims.iter().all(|d| *d == 4))
            .with_counterexample(json!({ "dimensions": dims })),
    );
}

fn random_pair(rng: &mut impl Rng, k: &PhysicalConstants) -> PotentialPair {
    let p = random_vec3(rng, 2.0);
    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    PotentialPair {
        energy: sign * k.on_shell_energy(p),
        momentum: p,
        scalar: random_c64(rng),
        vector: std::array::from_fn(|_| random_c64(rng)),
    }
}

fn vmax(v: &Vec3) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn verify_potentials(report: &mut VerificationReport, k: &PhysicalConstants, rng: &mut impl Rng) {
    for (kind, name) in [(PotentialKind::Vector, "vector"), (PotentialKind::Pseudovector, "pseudovector")] {
        let mut invariance = vec![];
        let mut consistency = vec![];
        let mut preserved = vec![];
        let mut divergence = vec![];
        for _ in 0..STATES {
            let p = random_pair(rng, k);
            let f = random_c64(rng);
            let shifted = gauge_shift(&p, f, k, kind);
            let (e0, h0) = potential_fields(&p, k, kind);
            let (e1, h1) = potential_fields(&shifted, k, kind);
            let ctx = json!({ "energy": p.energy, "momentum": p.momentum, "shift": f.to_string() });
            let d = (0..3).map(|i| (e0[i] - e1[i]).norm().max((h0[i] - h1[i]).norm())).fold(0.0, f64::max);
            invariance.push((d, ctx.clone()));
            let delta = potential_gauge_residual(&shifted, k, kind) - potential_gauge_residual(&p, k, kind);
            let predicted = gauge_shift_consistency(&p, f, k, kind);
            consistency.push(((delta - predicted).norm(), ctx.clone()));
            preserved.push((delta.norm() / f.norm(), ctx.clone()));
            let kap = kappa(p.momentum, k).vector_part();
            let bracket = match kind {
                PotentialKind::Vector => h0,
                PotentialKind::Pseudovector => e0,
            };
            divergence.push((dot3(&kap, &bracket).norm() / (1.0 + vmax(&bracket)), ctx));
        }
        report.push(worst_case(
            format!("fields.potentials.{name}.shift-invariance"),
            format!("gauge shifts of {name} potentials leave both fields unchanged"),
            POTENTIALS,
            &invariance,
            TOL,
        ));
        report.push(worst_case(
            format!("fields.potentials.{name}.shift-gauge-change"),
            "the change of the gauge expression under a shift matches its closed form",
            POTENTIALS,
            &consistency,
            TOL,
        ));
        report.push(
            worst_case(
                format!("fields.potentials.{name}.shift-preserves-gauge"),
                "a gauge shift leaves the gauge expression unchanged on shell",
                POTENTIALS,
                &preserved,
                TOL,
            )
            .flag_if_failed(),
        );
        report.push(worst_case(
            format!("fields.potentials.{name}.bracket-divergence-free"),
            "the field given by the bracket of momentum and potential is transverse",
            POTENTIALS,
            &divergence,
            TOL,
        ));
    }

    // Massless limit: the on-shell fields satisfy the source-free Maxwell pair.
    let massless = PhysicalConstants::natural(0.0, k.e);
    let r: Vec<(f64, Value)> = (0..STATES)
        .map(|_| {
            let s = on_shell(rng, &massless);
            let f = fields_from_state(&s, &massless, None).expect("no potential");
            let kap = s.kappa(&massless).vector_part();
            let tau = s.tau(&massless);
            let curl_h = crate::algebra::cross3(&kap, &f.h_vec);
            let curl_e = crate::algebra::cross3(&kap, &f.e_vec);
            let faraday = (0..3).map(|i| (XI * curl_e[i] + XI * tau * f.h_vec[i] + XI * kap[i] * f.h).norm()).fold(0.0, f64::max);
            let ampere = (0..3).map(|i| (XI * curl_h[i] - XI * tau * f.e_vec[i] - XI * kap[i] * f.e).norm()).fold(0.0, f64::max);
            let gauss = (dot3(&kap, &f.e_vec) + tau * f.e).norm().max((dot3(&kap, &f.h_vec) + tau * f.h).norm());
            (faraday.max(ampere).max(gauss), describe(&s))
        })
        .collect();
    report.push(worst_case(
        "fields.massless-maxwell",
        "for zero mass the grade equations reduce to Maxwell's equations with scalar sources e and h",
        SYSTEM,
        &r,
        TOL,
    ));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes_with_flagged_gauge_preservation() {
        let r = verify(&VerifyOptions::default());
        assert!(r.passed(), "{:#?}", r.failures().collect::<Vec<_>>());
        assert_eq!(r.summary().flagged, 2);
    }
}
