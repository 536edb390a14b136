//! Eigenvalues and eigenfunctions of octonic operators.

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::algebra::{Basis, Octon, C64, ONE, XI};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::operators::{
    discrete_symmetry_operator, inversion_operator, left_multiplication_operator, DiscreteSymmetry, OctonOperator,
};
use crate::report::{Check, VerificationReport};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenSpace {
    pub value: C64,
    pub multiplicity: usize,
    pub basis: Vec<Octon>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenSystem {
    pub spaces: Vec<EigenSpace>,
}

impl EigenSystem {
    pub fn total_multiplicity(&self) -> usize {
        self.spaces.iter().map(|s| s.multiplicity).sum()
    }

    pub fn space(&self, value: C64, tol: f64) -> Option<&EigenSpace> {
        self.spaces.iter().find(|s| (s.value - value).norm() <= tol)
    }

    /// Largest ‖op v − λ v‖ over all listed vectors.
    pub fn max_residual(&self, op: &OctonOperator) -> f64 {
        self.spaces
            .iter()
            .flat_map(|s| s.basis.iter().map(move |v| op.apply(v).dist(&v.scale(s.value))))
            .fold(0.0, f64::max)
    }
}

const EIGEN_TOL: f64 = 1e-8;

fn to_octon(v: &linalg::CVector) -> Octon {
    Octon::new(std::array::from_fn(|k| v[k]))
}

/// Numeric eigendecomposition with unit-norm basis vectors, sorted by (re, im).
pub fn eigen_decompose(op: &OctonOperator) -> Result<EigenSystem> {
    let m = op.to_dmatrix();
    let scale = linalg::max_abs(&m).max(1.0);
    let mut values = linalg::eigenvalues(&m);
    values.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let clusters = linalg::cluster(&values, 1e-6);
    let mut spaces = Vec::new();
    for (value, _) in clusters {
        let shifted: CMatrix = &m - CMatrix::identity(8, 8) * value;
        let basis: Vec<Octon> = linalg::nullspace(&shifted, EIGEN_TOL, Some(scale)).iter().map(to_octon).collect();
        spaces.push(EigenSpace { value, multiplicity: basis.len(), basis });
    }
    spaces.sort_by(|a, b| a.value.re.total_cmp(&b.value.re).then(a.value.im.total_cmp(&b.value.im)));
    let system = EigenSystem { spaces };
    let found = system.total_multiplicity();
    if found < 8 {
        return Err(Error::NonDiagonalizable { found });
    }
    Ok(system)
}

/// Operators with a printed table of simplest eigenfunctions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EigenTarget {
    Basis(Basis),
    Inversion,
    Polarization,
}

impl EigenTarget {
    pub const TABLE_ROWS: [EigenTarget; 8] = [
        EigenTarget::Basis(Basis::PolarI),
        EigenTarget::Basis(Basis::PolarJ),
        EigenTarget::Basis(Basis::PolarK),
        EigenTarget::Basis(Basis::AxialI),
        EigenTarget::Basis(Basis::AxialJ),
        EigenTarget::Basis(Basis::AxialK),
        EigenTarget::Basis(Basis::Pseudoscalar),
        EigenTarget::Inversion,
    ];

    pub fn operator(self) -> OctonOperator {
        match self {
            EigenTarget::Basis(b) => left_multiplication_operator(b),
            EigenTarget::Inversion => inversion_operator(),
            EigenTarget::Polarization => discrete_symmetry_operator(DiscreteSymmetry::PiZ),
        }
    }

    pub fn name(self) -> String {
        match self {
            EigenTarget::Basis(b) => b.label().to_string(),
            EigenTarget::Inversion => "R".into(),
            EigenTarget::Polarization => "πz".into(),
        }
    }
}

/// Simplest eigenfunctions for λ = +1, written as `a+b` or `a+ξb`.
const SIMPLEST_EIGENFUNCTIONS: [(Basis, [&str; 4]); 7] = [
    (Basis::PolarI, ["1+i", "j+ξK", "E+I", "J+ξk"]),
    (Basis::PolarJ, ["1+j", "k+ξI", "E+J", "K+ξi"]),
    (Basis::PolarK, ["1+k", "i+ξJ", "E+K", "I+ξj"]),
    (Basis::AxialI, ["1+I", "J+ξK", "E+i", "j+ξk"]),
    (Basis::AxialJ, ["1+J", "K+ξI", "E+j", "k+ξi"]),
    (Basis::AxialK, ["1+K", "I+ξJ", "E+k", "i+ξj"]),
    (Basis::Pseudoscalar, ["1+E", "i+I", "j+J", "k+K"]),
];

/// `a+b` or `a+ξb` with the second term's sign set by `lambda`.
fn pair(entry: &str, lambda: f64) -> Octon {
    let (a, rest) = entry.split_once('+').expect("entry has a '+'");
    let (coef, b) = match rest.strip_prefix('ξ') {
        Some(b) => (XI, b),
        None => (ONE, rest),
    };
    let a = Basis::from_label(a).expect("known label");
    let b = Basis::from_label(b).expect("known label");
    Octon::basis(a) + Octon::basis(b).scale(coef * lambda)
}

fn basis_octons(labels: &[&str]) -> Vec<Octon> {
    labels.iter().map(|l| Octon::basis(Basis::from_label(l).expect("known label"))).collect()
}

/// The printed simplest eigenfunctions of `target` for eigenvalue `lambda`.
pub fn canonical_eigenbasis(target: EigenTarget, lambda: i32) -> Result<Vec<Octon>> {
    if lambda != 1 && lambda != -1 {
        return Err(Error::InvalidArgument(format!("eigenvalue must be ±1, got {lambda}")));
    }
    let l = lambda as f64;
    Ok(match target {
        EigenTarget::Basis(Basis::One) => {
            return Err(Error::InvalidArgument("the unit operator has no ±1 split".into()));
        }
        EigenTarget::Basis(b) => {
            let (_, row) = SIMPLEST_EIGENFUNCTIONS.iter().find(|(x, _)| *x == b).expect("every non-unit basis has a row");
            row.iter().map(|e| pair(e, l)).collect()
        }
        EigenTarget::Inversion if lambda == 1 => basis_octons(&["1", "I", "J", "K"]),
        EigenTarget::Inversion => basis_octons(&["E", "i", "j", "k"]),
        EigenTarget::Polarization if lambda == 1 => basis_octons(&["1", "E", "k", "K"]),
        EigenTarget::Polarization => basis_octons(&["i", "j", "I", "J"]),
    })
}

/// Combinations of the polarization eigenfunctions with definite spin projection.
pub fn polarization_combinations(lambda: i32) -> Vec<Octon> {
    if lambda == 1 {
        vec![pair("1+K", 1.0), pair("1+K", -1.0), pair("E+k", 1.0), pair("E+k", -1.0)]
    } else {
        vec![pair("i+ξj", 1.0), pair("i+ξj", -1.0), pair("I+ξJ", 1.0), pair("I+ξJ", -1.0)]
    }
}

/// F₁(1+λK) + F₂(i+λξj) + F₃(E+λk) + F₄(I+λξJ).
pub fn general_eigenfunction(lambda: i32, f: [C64; 4]) -> Result<Octon> {
    if lambda != 1 && lambda != -1 {
        return Err(Error::InvalidArgument(format!("eigenvalue must be ±1, got {lambda}")));
    }
    let l = lambda as f64;
    let terms = [pair("1+K", l), pair("i+ξj", l), pair("E+k", l), pair("I+ξJ", l)];
    Ok(terms.iter().zip(f).fold(Octon::zero(), |acc, (t, c)| acc + t.scale(c)))
}

/// Halves of the simplest scalar/pseudovector eigenfunctions of K̂:
/// (1+K)/2, (1−K)/2, (I+ξJ)/2, (I−ξJ)/2.
pub fn k_idempotents() -> [Octon; 4] {
    [pair("1+K", 1.0) * 0.5, pair("1+K", -1.0) * 0.5, pair("I+ξJ", 1.0) * 0.5, pair("I+ξJ", -1.0) * 0.5]
}

const IDEMPOTENT_NAMES: [&str; 4] = ["(1+K)/2", "(1-K)/2", "(I+ξJ)/2", "(I-ξJ)/2"];

/// Printed products of the K̂ idempotents: index into [`k_idempotents`] or zero.
const IDEMPOTENT_TABLE: [[Option<usize>; 4]; 4] = [
    [Some(0), None, Some(2), None],
    [None, Some(1), None, Some(3)],
    [None, Some(2), None, Some(0)],
    [Some(3), None, Some(1), None],
];

pub fn idempotent_table_check() -> VerificationReport {
    let mut report = VerificationReport::new("eigen", 0);
    let q = k_idempotents();
    for r in 0..4 {
        for c in 0..4 {
            let expected = IDEMPOTENT_TABLE[r][c].map(|k| q[k]).unwrap_or_else(Octon::zero);
            let got = q[r] * q[c];
            report.push(
                Check::measured(
                    format!("eigen.idempotent-product.{r}{c}"),
                    format!("{} times {}", IDEMPOTENT_NAMES[r], IDEMPOTENT_NAMES[c]),
                    "spin eigenfunction multiplication table",
                    got.dist(&expected),
                    0.0,
                )
                .with_counterexample(json!({ "got": got.to_string(), "expected": expected.to_string() })),
            );
        }
    }
    report
}

/// Printed actions of Î and Ĵ on K̂ eigenfunctions: (operator, input, coefficient, output).
pub fn spin_flip_relations() -> Vec<(Basis, Octon, C64, Octon)> {
    let up = [pair("1+K", 1.0), pair("I+ξJ", 1.0), pair("E+k", 1.0), pair("i+ξj", 1.0)];
    let down = [pair("1+K", -1.0), pair("I+ξJ", -1.0), pair("E+k", -1.0), pair("i+ξj", -1.0)];
    // Î and Ĵ swap the partner inside each (1, I) and (E, i) pair while flipping λ.
    let partner = [1, 0, 3, 2];
    let mut out = Vec::new();
    for k in 0..4 {
        out.push((Basis::AxialI, up[k], ONE, down[partner[k]]));
        out.push((Basis::AxialI, down[k], ONE, up[partner[k]]));
        out.push((Basis::AxialJ, up[k], XI, down[partner[k]]));
        out.push((Basis::AxialJ, down[k], -XI, up[partner[k]]));
    }
    out
}

pub fn verify_eigen() -> VerificationReport {
    let mut report = VerificationReport::new("eigen", 0);
    let mut targets: Vec<EigenTarget> = EigenTarget::TABLE_ROWS.to_vec();
    targets.push(EigenTarget::Polarization);

    for target in &targets {
        let op = target.operator();
        let name = target.name();
        match eigen_decompose(&op) {
            Ok(sys) => {
                let plus = sys.space(ONE, 1e-8).map_or(0, |s| s.multiplicity);
                let minus = sys.space(-ONE, 1e-8).map_or(0, |s| s.multiplicity);
                let ok = plus == 4 && minus == 4 && sys.spaces.len() == 2;
                report.push(
                    Check::holds(
                        format!("eigen.spectrum.{name}"),
                        format!("{name} has eigenvalues +1 and -1 each with multiplicity 4"),
                        "eigenvalues of spatial operators",
                        ok,
                    )
                    .with_counterexample(json!({ "plus": plus, "minus": minus, "spaces": sys.spaces.len() })),
                );
                report.push(Check::measured(
                    format!("eigen.residual.{name}"),
                    format!("numeric eigenvectors of {name} satisfy the eigen relation"),
                    "eigenvalues of spatial operators",
                    sys.max_residual(&op),
                    1e-10,
                ));
            }
            Err(e) => report.push(Check::holds(
                format!("eigen.spectrum.{name}"),
                format!("{name} is diagonalizable: {e}"),
                "eigenvalues of spatial operators",
                false,
            )),
        }
        for lambda in [1, -1] {
            let basis = canonical_eigenbasis(*target, lambda).expect("valid target");
            for (k, v) in basis.iter().enumerate() {
                let residual = op.apply(v).dist(&(*v * lambda as f64));
                report.push(
                    Check::measured(
                        format!("eigen.simplest.{name}.{}{k}", if lambda > 0 { "plus" } else { "minus" }),
                        format!("{v} is an eigenfunction of {name} with eigenvalue {lambda}"),
                        "table of simplest eigenfunctions",
                        residual,
                        0.0,
                    )
                    .with_counterexample(json!({ "image": op.apply(v).to_string() })),
                );
            }
            let ind = independent(&basis);
            report.push(Check::holds(
                format!("eigen.simplest-independent.{name}.{}", if lambda > 0 { "plus" } else { "minus" }),
                format!("the simplest eigenfunctions of {name} for {lambda} are linearly independent"),
                "table of simplest eigenfunctions",
                ind,
            ));
        }
    }
    for lambda in [1, -1] {
        let pz = EigenTarget::Polarization.operator();
        for (k, v) in polarization_combinations(lambda).iter().enumerate() {
            report.push(Check::measured(
                format!("eigen.polarization-combination.{}{k}", if lambda > 0 { "plus" } else { "minus" }),
                format!("{v} is an eigenfunction of πz with eigenvalue {lambda}"),
                "polarization eigenfunctions",
                pz.apply(v).dist(&(*v * lambda as f64)),
                0.0,
            ));
        }
    }

    for (n, (b, input, coef, output)) in spin_flip_relations().into_iter().enumerate() {
        let got = left_multiplication_operator(b).apply(&input);
        let expected = output.scale(coef);
        report.push(
            Check::measured(
                format!("eigen.spin-flip.{n:02}"),
                format!("{} maps {input} to {expected}", b.label()),
                "spin flip relations",
                got.dist(&expected),
                0.0,
            )
            .with_counterexample(json!({ "got": got.to_string() })),
        );
    }

    report.extend(idempotent_table_check());
    report.sort();
    report
}

fn independent(vs: &[Octon]) -> bool {
    let m = CMatrix::from_fn(8, vs.len(), |r, c| vs[c].components()[r]);
    linalg::rank(&m, 1e-10) == vs.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_spectrum() {
        let sys = eigen_decompose(&left_multiplication_operator(Basis::AxialK)).unwrap();
        assert_eq!(sys.spaces.len(), 2);
        assert_eq!(sys.spaces[0].value.re.round(), -1.0);
        assert!(sys.spaces.iter().all(|s| s.multiplicity == 4));
        assert!(sys.max_residual(&left_multiplication_operator(Basis::AxialK)) < 1e-10);
    }

    #[test]
    fn inversion_spaces_are_spanned_by_printed_elements() {
        let sys = eigen_decompose(&inversion_operator()).unwrap();
        let plus = sys.space(ONE, 1e-9).unwrap();
        for v in &plus.basis {
            for b in [Basis::PolarI, Basis::PolarJ, Basis::PolarK, Basis::Pseudoscalar] {
                assert!(v.get(b).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn identity_is_one_space() {
        let sys = eigen_decompose(&OctonOperator::identity()).unwrap();
        assert_eq!(sys.spaces.len(), 1);
        assert_eq!(sys.spaces[0].multiplicity, 8);
    }

    #[test]
    fn nilpotent_is_not_diagonalizable() {
        let op = OctonOperator::zero().with_entry(0, 1, ONE);
        assert!(matches!(eigen_decompose(&op), Err(Error::NonDiagonalizable { .. })));
    }

    #[test]
    fn canonical_k_examples() {
        let plus = canonical_eigenbasis(EigenTarget::Basis(Basis::AxialK), 1).unwrap();
        assert_eq!(plus[0], Octon::one() + Octon::basis(Basis::AxialK));
        assert!(plus.contains(&(Octon::basis(Basis::PolarI) + Octon::basis(Basis::PolarJ) * XI)));
        let minus = canonical_eigenbasis(EigenTarget::Basis(Basis::AxialK), -1).unwrap();
        assert!(minus.contains(&(Octon::basis(Basis::AxialI) - Octon::basis(Basis::AxialJ) * XI)));
        let pz = canonical_eigenbasis(EigenTarget::Polarization, 1).unwrap();
        assert_eq!(pz[1], Octon::basis(Basis::Pseudoscalar));
        assert!(canonical_eigenbasis(EigenTarget::Inversion, 0).is_err());
    }

    #[test]
    fn general_eigenfunction_examples() {
        let one = C64::new(1.0, 0.0);
        let z = C64::new(0.0, 0.0);
        let v = general_eigenfunction(1, [one, z, z, z]).unwrap();
        assert_eq!(v, Octon::one() + Octon::basis(Basis::AxialK));
        assert!(general_eigenfunction(1, [z; 4]).unwrap().is_zero());
        let f = [C64::new(0.3, -1.0), C64::new(2.0, 0.5), C64::new(-1.5, 0.0), C64::new(0.0, 0.7)];
        let w = general_eigenfunction(-1, f).unwrap();
        assert!((Octon::basis(Basis::AxialK) * w).dist(&(-w)) < 1e-15);
    }

    #[test]
    fn idempotent_table_is_exact() {
        let r = idempotent_table_check();
        assert_eq!(r.checks.len(), 16);
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn full_suite_passes() {
        let r = verify_eigen();
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        assert_eq!(r.with_prefix("eigen.simplest.").filter(|c| !c.id.contains("πz")).count(), 64);
        assert_eq!(r.with_prefix("eigen.spin-flip").count(), 16);
    }
}
