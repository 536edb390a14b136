//! Verification suites. Each suite checks one area against independent
//! oracles and the printed tables, and returns a sorted report.

pub mod algebra;
pub mod dynamics;
pub mod fields;
pub mod representations;
pub mod transforms;

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::algebra::{Octon, ProductTable, C64};
use crate::eigen::verify_eigen;
use crate::exec::Execution;
use crate::operators::verify_operator_tables_with;
use crate::report::{Check, VerificationReport};

pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Algebra,
    Operators,
    Eigen,
    Representations,
    Transforms,
    Dynamics,
    Fields,
    All,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Algebra,
        Suite::Operators,
        Suite::Eigen,
        Suite::Representations,
        Suite::Transforms,
        Suite::Dynamics,
        Suite::Fields,
        Suite::All,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Operators => "operators",
            Suite::Eigen => "eigen",
            Suite::Representations => "representations",
            Suite::Transforms => "transforms",
            Suite::Dynamics => "dynamics",
            Suite::Fields => "fields",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Suite, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}; expected one of {}", Suite::ALL.map(|x| x.name()).join(", ")))
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Product table the algebra and operator suites regenerate from; a
    /// modified table acts as an injected fault.
    pub table: ProductTable,
    pub exec: Execution,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: DEFAULT_SEED, table: ProductTable::printed(), exec: Execution::best() }
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> VerificationReport {
    let mut report = match suite {
        Suite::Algebra => algebra::verify(&opts.table),
        Suite::Operators => {
            let mut r = verify_operator_tables_with(&opts.table);
            r.extend(algebra::verify_projectors());
            r
        }
        Suite::Eigen => verify_eigen(),
        Suite::Representations => representations::verify(opts),
        Suite::Transforms => transforms::verify(opts),
        Suite::Dynamics => dynamics::verify(opts),
        Suite::Fields => fields::verify(opts),
        Suite::All => {
            let mut all = VerificationReport::new("all", opts.seed);
            for s in &Suite::ALL[..7] {
                all.extend(run_suite(*s, opts));
            }
            all
        }
    };
    report.suite = suite.name().to_string();
    report.seed = opts.seed;
    report.sort();
    report
}

/// Deterministic generator for one suite, derived from the report seed.
pub(crate) fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub(crate) fn random_c64(rng: &mut impl Rng) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub(crate) fn random_octon(rng: &mut impl Rng) -> Octon {
    Octon::new(std::array::from_fn(|_| random_c64(rng)))
}

pub(crate) fn random_vec3(rng: &mut impl Rng, range: f64) -> [f64; 3] {
    std::array::from_fn(|_| rng.gen_range(-range..range))
}

pub(crate) fn random_unit(rng: &mut impl Rng) -> [f64; 3] {
    loop {
        let v = random_vec3(rng, 1.0);
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 0.1 && n <= 1.0 {
            return v.map(|x| x / n);
        }
    }
}

/// Largest residual over a batch, carrying the worst sample as counterexample.
pub(crate) fn worst_case(
    id: impl Into<String>,
    description: impl Into<String>,
    anchor: &str,
    residuals: &[(f64, Value)],
    tolerance: f64,
) -> Check {
    let (worst, sample) = residuals
        .iter()
        .fold((0.0f64, Value::Null), |acc, (r, v)| if *r > acc.0 || r.is_nan() { (*r, v.clone()) } else { acc });
    Check::measured(id, description, anchor, worst, tolerance)
        .with_counterexample(json!({ "samples": residuals.len(), "worst": sample }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn worst_case_keeps_largest() {
        let c = worst_case("x", "d", "a", &[(1e-14, json!(1)), (2.0, json!(2)), (0.5, json!(3))], 1.0);
        assert_eq!(c.residual, 2.0);
        assert_eq!(c.counterexample.unwrap()["worst"], 2);
    }
}
