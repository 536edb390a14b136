use proptest::prelude::*;

use octonic::algebra::{Basis, Octon, C64};
use octonic::dynamics::{
    apply_first_order, factorization_residual, kg_symbol, PhysicalConstants, PlaneWaveState, VARIANTS,
};
use octonic::exec::{par_map, Execution};
use octonic::fields::{field_system_residual, fields_componentwise, fields_from_state, FieldSet};
use octonic::operators::{projector, ProjectorKind};
use octonic::report::{Check, VerificationReport};
use octonic::transforms::{boost, boost_closed_form, rotate, rotate_closed_form, Boost, Rotor};

fn c64() -> impl Strategy<Value = C64> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(re, im)| C64::new(re, im))
}

fn octon() -> impl Strategy<Value = Octon> {
    prop::array::uniform8(c64()).prop_map(Octon::new)
}

fn real_octon() -> impl Strategy<Value = Octon> {
    prop::array::uniform8(-2.0..2.0f64).prop_map(|a| Octon::new(a.map(|x| C64::new(x, 0.0))))
}

fn axis() -> impl Strategy<Value = [f64; 3]> {
    prop::array::uniform3(-1.0..1.0f64)
        .prop_filter("non-degenerate", |v| v.iter().map(|x| x * x).sum::<f64>() > 0.01)
        .prop_map(|v| {
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.map(|x| x / n)
        })
}

fn momentum() -> impl Strategy<Value = [f64; 3]> {
    prop::array::uniform3(-3.0..3.0f64)
}

fn k() -> PhysicalConstants {
    PhysicalConstants::default()
}

proptest! {
    #[test]
    fn product_is_associative(a in octon(), b in octon(), c in octon()) {
        let scale = 1.0 + a.max_norm() * b.max_norm() * c.max_norm();
        prop_assert!(((a * b) * c).dist(&(a * (b * c))) <= 1e-12 * scale);
    }

    #[test]
    fn product_is_bilinear(a in octon(), b in octon(), c in octon(), z in c64()) {
        let lhs = a * (b.scale(z) + c);
        let rhs = (a * b).scale(z) + a * c;
        prop_assert!(lhs.dist(&rhs) <= 1e-12 * (1.0 + lhs.max_norm()));
    }

    #[test]
    fn symmetric_and_antisymmetric_parts_recombine(a in octon(), b in octon()) {
        let sum = a.symmetric_product(&b) + a.antisymmetric_product(&b);
        prop_assert!(sum.dist(&(a * b)) <= 1e-12 * (1.0 + (a * b).max_norm()));
    }

    #[test]
    fn pseudoscalar_is_central(a in octon()) {
        let e = Octon::basis(Basis::Pseudoscalar);
        prop_assert!((e * a).dist(&(a * e)) <= 1e-12);
    }

    #[test]
    fn display_round_trips(a in octon()) {
        let back: Octon = a.to_string().parse().unwrap();
        prop_assert!(back.dist(&a) <= 1e-12 * (1.0 + a.max_norm()));
    }

    #[test]
    fn projectors_are_idempotent_on_states(psi in octon(), idx in 0usize..8) {
        let p = projector(ProjectorKind::ALL[idx]);
        let once = p.apply(&psi);
        prop_assert!(p.apply(&once).dist(&once) <= 1e-12);
        let q = projector(ProjectorKind::ALL[idx].partner());
        prop_assert!((once + q.apply(&psi)).dist(&psi) <= 1e-12);
    }

    #[test]
    fn rotation_matches_closed_form_and_fixes_scalars(psi in octon(), n in axis(), angle in -7.0..7.0f64) {
        let r = Rotor::new(n, angle).unwrap();
        let out = rotate(&psi, &r).unwrap();
        prop_assert!(out.dist(&rotate_closed_form(&psi, &r).unwrap()) <= 1e-10);
        prop_assert!((out.scalar_part() - psi.scalar_part()).norm() <= 1e-12);
        prop_assert!((out.pseudoscalar_part() - psi.pseudoscalar_part()).norm() <= 1e-12);
        let back = rotate(&out, &Rotor::new(n, -angle).unwrap()).unwrap();
        prop_assert!(back.dist(&psi) <= 1e-10);
    }

    #[test]
    fn boost_matches_closed_form_and_inverts(psi in real_octon(), n in axis(), u in -2.0..2.0f64) {
        let b = Boost::new(n, u).unwrap();
        let out = boost(&psi, &b).unwrap();
        let scale = u.cosh().powi(2);
        prop_assert!(out.dist(&boost_closed_form(&psi, &b).unwrap()) <= 1e-10 * scale);
        let back = boost(&out, &Boost::new(n, -u).unwrap()).unwrap();
        prop_assert!(back.dist(&psi) <= 1e-10 * scale * scale);
    }

    #[test]
    fn every_variant_factorizes(idx in 0usize..VARIANTS.len(), e in -4.0..4.0f64, p in momentum(), amp in octon()) {
        let spec = VARIANTS[idx].1;
        let s = PlaneWaveState::new(e, p, amp);
        let r = factorization_residual(&spec.conjugate(), &spec, &s, &k()).unwrap();
        let scale = 1.0 + e * e + p.iter().map(|x| x * x).sum::<f64>();
        prop_assert!(r.max_norm() <= 1e-12 * scale * (1.0 + amp.max_norm()));
    }

    #[test]
    fn first_order_operator_is_linear(idx in 0usize..VARIANTS.len(), e in -4.0..4.0f64, p in momentum(), a in octon(), b in octon()) {
        let spec = VARIANTS[idx].1;
        let on = |x: Octon| apply_first_order(&spec, &PlaneWaveState::new(e, p, x), &k());
        let lhs = on(a + b);
        prop_assert!(lhs.dist(&(on(a) + on(b))) <= 1e-12 * (1.0 + lhs.max_norm()));
    }

    #[test]
    fn on_shell_fields_satisfy_the_system(p in momentum(), amp in octon(), negative in any::<bool>()) {
        let e = k().on_shell_energy(p) * if negative { -1.0 } else { 1.0 };
        let s = PlaneWaveState::new(e, p, amp);
        prop_assert!(field_system_residual(&s, &k(), None).unwrap().max_norm() <= 1e-12 * (1.0 + e * e));
    }

    #[test]
    fn off_shell_residual_is_kg_times_amplitude(e in -4.0..4.0f64, p in momentum(), amp in octon()) {
        let s = PlaneWaveState::new(e, p, amp);
        let got = field_system_residual(&s, &k(), None).unwrap().max_norm();
        let expected = kg_symbol(e, p, &k()).abs() * amp.max_norm();
        prop_assert!((got - expected).abs() <= 1e-10 * (1.0 + expected));
    }

    #[test]
    fn fieldset_round_trips_through_octon(f in octon()) {
        prop_assert!(FieldSet::from_octon(&f).to_octon().dist(&f) <= 1e-15);
    }

    #[test]
    fn componentwise_fields_agree(e in -4.0..4.0f64, p in momentum(), amp in octon()) {
        let s = PlaneWaveState::new(e, p, amp);
        let a = fields_from_state(&s, &k(), None).unwrap().to_octon();
        prop_assert!(a.dist(&fields_componentwise(&s, &k()).to_octon()) <= 1e-12 * (1.0 + a.max_norm()));
    }

    #[test]
    fn execution_modes_agree(n in 0usize..200) {
        let f = |i: usize| (i as f64).sqrt() * 3.0;
        prop_assert_eq!(par_map(Execution::Sequential, n, f), par_map(Execution::Parallel, n, f));
    }

    #[test]
    fn report_round_trips(residuals in prop::collection::vec(0.0..2.0f64, 0..20), seed in any::<u64>()) {
        let mut r = VerificationReport::new("prop", seed);
        for (i, x) in residuals.iter().enumerate() {
            let c = Check::measured(format!("c{i}"), "d", "a", *x, 1.0);
            r.push(if i % 3 == 0 { c.flag_if_failed() } else { c });
        }
        let back = VerificationReport::read_ndjson(r.to_ndjson().as_bytes()).unwrap();
        prop_assert_eq!(back, r);
    }
}

#[test]
fn basis_units_square_to_plus_or_minus_one() {
    for b in Basis::ALL {
        let sq = Octon::basis(b) * Octon::basis(b);
        assert!(sq.dist(&Octon::one()) == 0.0 || sq.dist(&-Octon::one()) == 0.0, "{b:?}");
    }
}
