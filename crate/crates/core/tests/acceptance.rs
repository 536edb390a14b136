//! One line per acceptance criterion. Every criterion is run before the
//! test asserts, so a failure in one does not hide the others.

use std::time::{Duration, Instant};

use octonic::report::{Status, VerificationReport};
use octonic::verify::{dynamics, run_suite, Suite, VerifyOptions};

struct Outcome {
    name: &'static str,
    ok: bool,
    detail: String,
    elapsed: Duration,
}

fn timed(f: impl FnOnce() -> VerificationReport) -> (VerificationReport, Duration) {
    let start = Instant::now();
    let r = f();
    (r, start.elapsed())
}

fn count(r: &VerificationReport, prefix: &str) -> usize {
    r.with_prefix(prefix).count()
}

fn strict(r: &VerificationReport, prefix: &str) -> bool {
    r.with_prefix(prefix).all(|c| c.status == Status::Pass)
}

fn failures(r: &VerificationReport) -> String {
    let ids: Vec<&str> = r.failures().map(|c| c.id.as_str()).take(5).collect();
    if ids.is_empty() {
        String::new()
    } else {
        format!(" failing: {}", ids.join(", "))
    }
}

fn summary(r: &VerificationReport) -> String {
    let s = r.summary();
    format!("{} checks, {} flagged{}", s.total, s.flagged, failures(r))
}

fn dynamics_part(opts: &VerifyOptions, part: fn(&mut VerificationReport, &VerifyOptions)) -> VerificationReport {
    let mut r = VerificationReport::new("dynamics", opts.seed);
    part(&mut r, opts);
    r
}

fn run_all() -> Vec<Outcome> {
    let opts = VerifyOptions::default();
    let mut out = vec![];

    let (r, t) = timed(|| run_suite(Suite::Algebra, &opts));
    out.push(Outcome {
        name: "algebra exactness",
        ok: count(&r, "algebra.product.") == 64
            && count(&r, "algebra.assoc.") == 512
            && strict(&r, "algebra.product.")
            && strict(&r, "algebra.assoc.")
            && strict(&r, "algebra.pseudoscalar-from-vectors")
            && r.passed()
            && t < Duration::from_secs(1),
        detail: summary(&r),
        elapsed: t,
    });

    let (r, t) = timed(|| run_suite(Suite::Operators, &opts));
    out.push(Outcome {
        name: "operator tables",
        ok: count(&r, "operators.reflection-product.") == 49
            && count(&r, "operators.reflection-commutation.") == 49
            && strict(&r, "operators.reflection-")
            && strict(&r, "operators.inversion-from-reflections")
            && r.passed()
            && t < Duration::from_secs(1),
        detail: summary(&r),
        elapsed: t,
    });

    let (r, t) = timed(|| run_suite(Suite::Eigen, &opts));
    out.push(Outcome {
        name: "eigenstructure",
        ok: count(&r, "eigen.idempotent-product.") == 16 && r.summary().flagged == 0 && r.passed(),
        detail: summary(&r),
        elapsed: t,
    });

    let (r, t) = timed(|| run_suite(Suite::Representations, &opts));
    out.push(Outcome {
        name: "representations",
        ok: strict(&r, "representations.spinor.")
            && strict(&r, "representations.bispinor.")
            && strict(&r, "representations.standard.i")
            && strict(&r, "representations.standard.j")
            && strict(&r, "representations.standard.k")
            && strict(&r, "representations.standard.pseudoscalar")
            && strict(&r, "representations.standard.inversion")
            && strict(&r, "representations.octospinor.")
            && strict(&r, "representations.gamma.")
            && r.passed(),
        detail: summary(&r),
        elapsed: t,
    });

    let (r, t) = timed(|| run_suite(Suite::Transforms, &opts));
    out.push(Outcome { name: "transforms", ok: strict(&r, "transforms."), detail: summary(&r), elapsed: t });

    let (r, t) = timed(|| dynamics_part(&opts, dynamics::verify_dispersion));
    out.push(Outcome {
        name: "dispersion",
        ok: count(&r, "dynamics.dispersion.") > 0 && strict(&r, "dynamics.dispersion.") && t < Duration::from_secs(5),
        detail: summary(&r),
        elapsed: t,
    });

    let (r, t) = timed(|| dynamics_part(&opts, dynamics::verify_landau));
    out.push(Outcome {
        name: "Landau spectra",
        ok: r.find("dynamics.landau.nonrelativistic").is_some()
            && r.find("dynamics.landau.relativistic").is_some()
            && count(&r, "dynamics.landau.limit-slope.") == 2
            && strict(&r, "dynamics.landau."),
        detail: summary(&r),
        elapsed: t,
    });

    let (r, t) = timed(|| dynamics_part(&opts, dynamics::verify_em));
    out.push(Outcome {
        name: "EM operator identity",
        ok: r.find("dynamics.em.trigonometric-ratio").is_some()
            && r.find("dynamics.em.constant-potential").is_some()
            && strict(&r, "dynamics.em.")
            && t < Duration::from_secs(60),
        detail: summary(&r),
        elapsed: t,
    });

    let (r, t) = timed(|| run_suite(Suite::Fields, &opts));
    out.push(Outcome {
        name: "field equivalence",
        ok: strict(&r, "fields.system.")
            && strict(&r, "fields.nullspace-")
            && strict(&r, "fields.potentials.vector.shift-invariance")
            && strict(&r, "fields.potentials.pseudovector.shift-invariance")
            && r.passed(),
        detail: summary(&r),
        elapsed: t,
    });

    let (r, t) = timed(|| dynamics_part(&opts, dynamics::verify_einstein));
    out.push(Outcome {
        name: "Einstein identity",
        ok: r.find("dynamics.einstein-identity").is_some() && strict(&r, "dynamics.einstein-identity"),
        detail: summary(&r),
        elapsed: t,
    });
    out
}

#[test]
fn acceptance() {
    let outcomes = run_all();
    for o in &outcomes {
        println!(
            "{} {:<22} {:>8.3} s  {}",
            if o.ok { "PASS" } else { "FAIL" },
            o.name,
            o.elapsed.as_secs_f64(),
            o.detail
        );
    }
    let failed: Vec<&str> = outcomes.iter().filter(|o| !o.ok).map(|o| o.name).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
