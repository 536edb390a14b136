use rand::Rng;
use serde_json::{json, Value};

use super::{random_octon, random_unit, rng_for, worst_case, VerifyOptions};
use crate::algebra::{Basis, Octon, C64};
use crate::exec::par_map;
use crate::linalg::{max_abs_diff, CMatrix};
use crate::repr::matrix_waveform;
use crate::report::{Check, VerificationReport};
use crate::transforms::{
    boost, boost_closed_form, boost_invariants, rotate, rotate_closed_form, rotate_matrix_form, Boost, Rotor,
};

const SAMPLES: usize = 1000;
const TOL: f64 = 1e-10;
const ROTATION: &str = "spatial rotation of octons";
const BOOST: &str = "Lorentz boost of octons";

struct Sample {
    psi: Octon,
    axis: [f64; 3],
    angle: f64,
    other: f64,
}

fn samples(opts: &VerifyOptions, stream: u64, angle_range: f64) -> Vec<Sample> {
    let mut rng = rng_for(opts.seed, stream);
    (0..SAMPLES)
        .map(|_| Sample {
            psi: random_octon(&mut rng),
            axis: random_unit(&mut rng),
            angle: rng.gen_range(-angle_range..angle_range),
            other: rng.gen_range(-angle_range..angle_range),
        })
        .collect()
}

fn describe(s: &Sample) -> Value {
    json!({ "psi": s.psi.to_string(), "axis": s.axis, "angle": s.angle })
}

fn batch(opts: &VerifyOptions, data: &[Sample], f: impl Fn(&Sample) -> f64 + Sync) -> Vec<(f64, Value)> {
    par_map(opts.exec, data.len(), |k| (f(&data[k]), describe(&data[k])))
}

fn real_octon(rng: &mut impl Rng) -> Octon {
    Octon::new(std::array::from_fn(|_| C64::new(rng.gen_range(-1.0..1.0), 0.0)))
}

pub fn verify(opts: &VerifyOptions) -> VerificationReport {
    let mut report = VerificationReport::new("transforms", opts.seed);
    let pi = std::f64::consts::PI;

    let rot = samples(opts, 5, pi);
    let rotor = |s: &Sample| Rotor::new(s.axis, s.angle).expect("unit axis");
    let r = batch(opts, &rot, |s| {
        rotate(&s.psi, &rotor(s)).unwrap().dist(&rotate_closed_form(&s.psi, &rotor(s)).unwrap())
    });
    report.push(worst_case("transforms.rotation.closed-form", "sandwich rotation matches the axis-angle formula", ROTATION, &r, TOL));

    let r = batch(opts, &rot, |s| {
        let lhs = matrix_waveform(&rotate(&s.psi, &rotor(s)).unwrap());
        max_abs_diff(&lhs, &rotate_matrix_form(&s.psi, &rotor(s)).unwrap())
    });
    report.push(worst_case("transforms.rotation.matrix-form", "rotation conjugates the bispinor waveform matrix", ROTATION, &r, TOL));

    let r = batch(opts, &rot, |s| {
        let out = rotate(&s.psi, &rotor(s)).unwrap();
        let norm = |x: &Octon| {
            let v = x.vector_part();
            let a = x.pseudovector_part();
            (v[0] * v[0] + v[1] * v[1] + v[2] * v[2], a[0] * a[0] + a[1] * a[1] + a[2] * a[2])
        };
        let (v0, a0) = norm(&s.psi);
        let (v1, a1) = norm(&out);
        [(out.scalar_part() - s.psi.scalar_part()).norm(), (out.pseudoscalar_part() - s.psi.pseudoscalar_part()).norm(), (v1 - v0).norm(), (a1 - a0).norm()]
            .into_iter()
            .fold(0.0, f64::max)
    });
    report.push(worst_case(
        "transforms.rotation.invariants",
        "rotation fixes both scalar parts and the squared lengths of both vector parts",
        ROTATION,
        &r,
        TOL,
    ));

    let r = batch(opts, &rot, |s| {
        let twice = rotate(&rotate(&s.psi, &rotor(s)).unwrap(), &Rotor::new(s.axis, s.other).unwrap()).unwrap();
        twice.dist(&rotate(&s.psi, &Rotor::new(s.axis, s.angle + s.other).unwrap()).unwrap())
    });
    report.push(worst_case("transforms.rotation.composition", "rotations about one axis add their angles", ROTATION, &r, TOL));

    let r = batch(opts, &rot, |s| {
        let u1 = rotor(s).octon();
        let u2 = Rotor::new(random_axis_from(s), s.other).unwrap();
        let composite = u1 * u2.octon();
        let twice = rotate(&rotate(&s.psi, &rotor(s)).unwrap(), &u2).unwrap();
        twice.dist(&(composite.conj() * s.psi * composite))
    });
    report.push(worst_case(
        "transforms.rotation.rotor-product",
        "successive rotations equal the sandwich by the rotor product",
        ROTATION,
        &r,
        TOL,
    ));

    let full: Vec<(f64, Value)> = rot
        .iter()
        .take(100)
        .map(|s| {
            let r = Rotor::new(s.axis, 2.0 * pi).unwrap();
            let on_octons = rotate(&s.psi, &r).unwrap().dist(&s.psi);
            let on_matrix = max_abs_diff(&matrix_waveform(&r.octon()), &(-CMatrix::identity(4, 4)));
            (on_octons.max(on_matrix), describe(s))
        })
        .collect();
    report.push(worst_case(
        "transforms.rotation.full-turn",
        "a full turn is the identity on octons and minus the identity on bispinors",
        ROTATION,
        &full,
        TOL,
    ));

    let bst = samples(opts, 6, 2.0);
    let booster = |s: &Sample| Boost::new(s.axis, s.angle).expect("unit axis");
    let r = batch(opts, &bst, |s| {
        let scale = s.angle.cosh() * s.angle.cosh();
        boost(&s.psi, &booster(s)).unwrap().dist(&boost_closed_form(&s.psi, &booster(s)).unwrap()) / scale
    });
    report.push(worst_case("transforms.boost.closed-form", "sandwich boost matches the rapidity formula", BOOST, &r, TOL));

    let r = batch(opts, &bst, |s| {
        let twice = boost(&boost(&s.psi, &booster(s)).unwrap(), &Boost::new(s.axis, s.other).unwrap()).unwrap();
        let once = boost(&s.psi, &Boost::new(s.axis, s.angle + s.other).unwrap()).unwrap();
        twice.dist(&once) / (s.angle.abs() + s.other.abs()).cosh().powi(2)
    });
    report.push(worst_case("transforms.boost.composition", "collinear boosts add their rapidities", BOOST, &r, TOL));

    let mut rng = rng_for(opts.seed, 7);
    let inv: Vec<(f64, Value)> = (0..SAMPLES)
        .map(|_| {
            let psi = real_octon(&mut rng);
            let axis = random_unit(&mut rng);
            let u: f64 = rng.gen_range(-2.0..2.0);
            let out = boost(&psi, &Boost::new(axis, u).unwrap()).unwrap();
            let (a0, b0) = boost_invariants(&psi, axis);
            let (a1, b1) = boost_invariants(&out, axis);
            ((a1 - a0).abs().max((b1 - b0).abs()) / u.cosh().powi(2), json!({ "psi": psi.to_string(), "axis": axis, "rapidity": u }))
        })
        .collect();
    report.push(worst_case(
        "transforms.boost.invariants",
        "boost preserves the interval along its axis for both grades",
        BOOST,
        &inv,
        TOL,
    ));

    let b = Boost::from_velocity([1.0, 0.0, 0.0], 0.6).expect("unit axis");
    let expected = Octon::one() * 1.25 - Octon::basis(Basis::PolarI) * 0.75;
    report.push(Check::measured(
        "transforms.boost.velocity-example",
        "boosting the unit scalar at speed 0.6 along x gives 1.25 - 0.75 i",
        BOOST,
        boost(&Octon::one(), &b).unwrap().dist(&expected),
        1e-14,
    ));
    report
}

/// Second axis for the rotor-product check, decorrelated from the first.
fn random_axis_from(s: &Sample) -> [f64; 3] {
    let [x, y, z] = s.axis;
    let v = [y - z, z + 0.5 * x, x - y + 0.3];
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    v.map(|c| c / n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes() {
        let r = verify(&VerifyOptions::default());
        assert!(r.passed(), "{:#?}", r.failures().collect::<Vec<_>>());
    }
}
