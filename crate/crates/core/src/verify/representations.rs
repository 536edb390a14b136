use rand::Rng;
use serde_json::json;

use super::{random_c64, rng_for, worst_case, VerifyOptions};
use crate::algebra::{Basis, Octon, C64};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::operators::{
    discrete_symmetry_operator, inversion_operator, left_multiplication_operator, DiscreteSymmetry, OctonOperator,
};
use crate::report::{Check, VerificationReport};
use crate::repr::{
    bispinor_basis, dirac_gamma, matrix_of, matrix_waveform, octospinor_basis, printed, printed_matrix,
    printed_standard_fourth, printed_waveform, spinor_basis, BispinorForm, RepresentationBasis, DEFAULT_F, DEFAULT_G,
    DEFAULT_OCTOSPINOR, DEFAULT_SPINOR,
};

const RANDOM_SETS: usize = 100;
const TOL: f64 = 1e-12;

type Listing = (&'static str, OctonOperator, &'static [&'static str]);

fn lm(b: Basis) -> OctonOperator {
    left_multiplication_operator(b)
}

fn spinor_listings() -> Vec<Listing> {
    vec![
        ("sigma-x", lm(Basis::AxialI), &printed::SIGMA_X),
        ("sigma-y", lm(Basis::AxialJ), &printed::SIGMA_Y),
        ("sigma-z", lm(Basis::AxialK), &printed::SIGMA_Z),
    ]
}

fn e_diagonal_listings() -> Vec<Listing> {
    vec![
        ("big-sigma-x", lm(Basis::AxialI), &printed::BIG_SIGMA_X),
        ("big-sigma-y", lm(Basis::AxialJ), &printed::BIG_SIGMA_Y),
        ("big-sigma-z", lm(Basis::AxialK), &printed::BIG_SIGMA_Z),
        ("alpha-x", lm(Basis::PolarI), &printed::ALPHA_X),
        ("alpha-y", lm(Basis::PolarJ), &printed::ALPHA_Y),
        ("alpha-z", lm(Basis::PolarK), &printed::ALPHA_Z),
        ("beta", inversion_operator(), &printed::BETA),
        ("pseudoscalar", lm(Basis::Pseudoscalar), &printed::E_DIAGONAL),
    ]
}

fn standard_listings() -> Vec<Listing> {
    vec![
        ("i", lm(Basis::PolarI), &printed::STANDARD_I),
        ("j", lm(Basis::PolarJ), &printed::STANDARD_J),
        ("k", lm(Basis::PolarK), &printed::STANDARD_K),
        ("pseudoscalar", lm(Basis::Pseudoscalar), &printed::STANDARD_E),
        ("inversion", inversion_operator(), &printed::STANDARD_R),
    ]
}

fn octospinor_listings() -> Vec<Listing> {
    vec![
        ("axial-k", lm(Basis::AxialK), &printed::OCTO_K),
        ("pseudoscalar", lm(Basis::Pseudoscalar), &printed::OCTO_E),
        ("reflection-pi-z", discrete_symmetry_operator(DiscreteSymmetry::PiZ), &printed::OCTO_PI_Z),
        ("axial-i", lm(Basis::AxialI), &printed::OCTO_I),
        ("reflection-x", discrete_symmetry_operator(DiscreteSymmetry::Rx), &printed::OCTO_RX),
        ("inversion", inversion_operator(), &printed::OCTO_R),
    ]
}

fn nonzero(rng: &mut impl Rng) -> C64 {
    loop {
        let z = random_c64(rng);
        if z.norm() > 0.1 {
            return z;
        }
    }
}

fn listing_residual(op: &OctonOperator, basis: &RepresentationBasis, rows: &[&str]) -> f64 {
    matrix_of(op, basis).map_or(f64::INFINITY, |m| linalg::max_abs_diff(&m, &printed_matrix(rows)))
}

/// One check per printed listing: the default basis plus random parameter sets.
fn check_family(
    report: &mut VerificationReport,
    family: &str,
    listings: &[Listing],
    bases: &[(serde_json::Value, RepresentationBasis)],
) {
    for (name, op, rows) in listings {
        let residuals: Vec<_> =
            bases.iter().map(|(params, b)| (listing_residual(op, b, rows), params.clone())).collect();
        report.push(worst_case(
            format!("representations.{family}.{name}"),
            format!("matrix of {name} in the {family} basis matches the listing for every parameter choice"),
            "matrix representations of octonic operators",
            &residuals,
            TOL,
        ));
    }
}

fn random_bases(
    rng: &mut impl Rng,
    default: (serde_json::Value, Result<RepresentationBasis>),
    make: impl Fn(&mut dyn FnMut() -> C64) -> (serde_json::Value, Result<RepresentationBasis>),
) -> Vec<(serde_json::Value, RepresentationBasis)> {
    let mut out = vec![];
    let (p, b) = default;
    out.push((p, b.expect("default basis is regular")));
    while out.len() <= RANDOM_SETS {
        let mut draw = || nonzero(rng);
        let (p, b) = make(&mut draw);
        if let Ok(b) = b {
            out.push((p, b));
        }
    }
    out
}

fn c(z: C64) -> String {
    format!("{z}")
}

pub fn verify(opts: &VerifyOptions) -> VerificationReport {
    let mut report = VerificationReport::new("representations", opts.seed);
    let mut rng = rng_for(opts.seed, 4);

    let spinors = random_bases(
        &mut rng,
        (json!({ "alpha": DEFAULT_SPINOR.map(c) }), spinor_basis(DEFAULT_SPINOR)),
        |d| {
            let a = [d(), d(), d(), d()];
            (json!({ "alpha": a.map(c) }), spinor_basis(a))
        },
    );
    check_family(&mut report, "spinor", &spinor_listings(), &spinors);

    for (family, form, listings) in [
        ("bispinor", BispinorForm::EDiagonal, e_diagonal_listings()),
        ("standard", BispinorForm::Standard, standard_listings()),
    ] {
        let bases = random_bases(
            &mut rng,
            (json!({ "f": c(DEFAULT_F), "g": c(DEFAULT_G) }), bispinor_basis(DEFAULT_F, DEFAULT_G, form)),
            |d| {
                let (f, g) = (d(), d());
                (json!({ "f": c(f), "g": c(g) }), bispinor_basis(f, g, form))
            },
        );
        check_family(&mut report, family, &listings, &bases);
    }

    let octo = random_bases(
        &mut rng,
        (json!({ "a": c(DEFAULT_OCTOSPINOR) }), octospinor_basis(DEFAULT_OCTOSPINOR)),
        |d| {
            let a = d();
            (json!({ "a": c(a) }), octospinor_basis(a))
        },
    );
    check_family(&mut report, "octospinor", &octospinor_listings(), &octo);

    // Polar units mix the spinor pair with its pseudoscalar partners.
    let not_closed = spinors
        .iter()
        .filter(|(_, b)| !matches!(matrix_of(&lm(Basis::PolarI), b), Err(Error::NotClosed { .. })))
        .count();
    report.push(
        Check::holds(
            "representations.spinor.polar-not-closed",
            "left multiplication by i leaves the two-spinor span",
            "spinor representation",
            not_closed == 0,
        )
        .with_counterexample(json!({ "closed_cases": not_closed })),
    );

    verify_gammas(&mut report);
    verify_printed_typos(&mut report, &mut rng);
    report
}

fn verify_gammas(report: &mut VerificationReport) {
    let anchor = "Dirac matrices from octonic operators";
    let g: Vec<OctonOperator> = (0..4).map(|k| dirac_gamma(k).expect("valid index")).collect();
    let id = OctonOperator::identity();
    let metric = [1.0, -1.0, -1.0, -1.0];
    let mut worst = 0.0f64;
    for m in 0..4 {
        for n in 0..4 {
            let anti = g[m].compose(&g[n]) + g[n].compose(&g[m]);
            let expected = if m == n { id.scale(C64::new(2.0 * metric[m], 0.0)) } else { OctonOperator::zero() };
            worst = worst.max(anti.dist(&expected));
        }
    }
    report.push(Check::measured(
        "representations.gamma.clifford",
        "gamma operators anticommute with metric (+,-,-,-)",
        anchor,
        worst,
        0.0,
    ));
    let g5 = dirac_gamma(5).expect("valid index");
    report.push(Check::measured(
        "representations.gamma.five-is-pseudoscalar",
        "gamma five equals left multiplication by E",
        anchor,
        g5.dist(&lm(Basis::Pseudoscalar)),
        0.0,
    ));
    let anti5 = g.iter().map(|x| (g5.compose(x) + x.compose(&g5)).max_abs()).fold(0.0, f64::max);
    report.push(Check::measured(
        "representations.gamma.five-anticommutes",
        "gamma five anticommutes with the other four",
        anchor,
        anti5,
        0.0,
    ));
    let b = bispinor_basis(DEFAULT_F, DEFAULT_G, BispinorForm::EDiagonal).expect("regular");
    let beta_alpha = [Basis::PolarI, Basis::PolarJ, Basis::PolarK]
        .iter()
        .zip(1..)
        .map(|(u, k)| {
            let lhs = matrix_of(&g[k], &b).expect("closed");
            let rhs = matrix_of(&inversion_operator(), &b).expect("closed") * matrix_of(&lm(*u), &b).expect("closed");
            linalg::max_abs_diff(&lhs, &rhs)
        })
        .fold(0.0, f64::max);
    report.push(Check::measured(
        "representations.gamma.beta-alpha",
        "spatial gamma matrices equal beta times alpha in the bispinor basis",
        anchor,
        beta_alpha,
        TOL,
    ));
}

fn verify_printed_typos(report: &mut VerificationReport, rng: &mut impl Rng) {
    let f = DEFAULT_F;
    let g = DEFAULT_G;
    let mut b = bispinor_basis(f, g, BispinorForm::Standard).expect("regular");
    b.basis[3] = printed_standard_fourth(f, g);
    let rank = linalg::rank(&b.columns(), 1e-10);
    report.push(
        Check::holds(
            "representations.standard.printed-fourth-regular",
            "printed fourth standard-form function is independent of the first three",
            "standard bispinor basis",
            rank == 4,
        )
        .flag_if_failed()
        .with_counterexample(json!({ "rank": rank, "note": "printed fourth function repeats the third" })),
    );

    let samples: Vec<(f64, serde_json::Value)> = (0..RANDOM_SETS)
        .map(|_| {
            let psi = Octon::new(std::array::from_fn(|_| random_c64(rng)));
            let d: CMatrix = printed_waveform(&psi) - matrix_waveform(&psi);
            (linalg::max_abs(&d), json!({ "psi": psi.to_string() }))
        })
        .collect();
    report.push(
        worst_case(
            "representations.waveform.printed",
            "printed 4x4 waveform matches left multiplication in the bispinor basis",
            "matrix waveform",
            &samples,
            TOL,
        )
        .flag_if_failed(),
    );

    let b = bispinor_basis(DEFAULT_F, DEFAULT_G, BispinorForm::EDiagonal).expect("regular");
    let generated: Vec<(f64, serde_json::Value)> = (0..RANDOM_SETS)
        .map(|_| {
            let psi = Octon::new(std::array::from_fn(|_| random_c64(rng)));
            let mut acc = CMatrix::zeros(4, 4);
            for u in Basis::ALL {
                acc += matrix_of(&lm(u), &b).expect("closed") * psi.get(u);
            }
            (linalg::max_abs_diff(&acc, &matrix_waveform(&psi)), json!({ "psi": psi.to_string() }))
        })
        .collect();
    report.push(worst_case(
        "representations.waveform.linear",
        "waveform matrix is the component sum of basis matrices",
        "matrix waveform",
        &generated,
        TOL,
    ));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes_with_flagged_typos() {
        let r = verify(&VerifyOptions::default());
        assert!(r.passed(), "{:#?}", r.failures().collect::<Vec<_>>());
        assert_eq!(r.summary().flagged, 2);
    }
}
