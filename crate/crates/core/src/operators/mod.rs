//! Linear operators on octons as concrete 8×8 complex matrices acting on
//! component columns.

pub mod checks;
pub mod tables;

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::SMatrix;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{Basis, Octon, C64, ONE, XI, ZERO};
use crate::linalg::CMatrix;

pub use checks::{verify_operator_tables, verify_operator_tables_with};

pub type Matrix8 = SMatrix<C64, 8, 8>;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OctonOperator {
    m: Matrix8,
}

impl OctonOperator {
    pub fn from_matrix(m: Matrix8) -> OctonOperator {
        OctonOperator { m }
    }

    pub fn from_rows(rows: [[C64; 8]; 8]) -> OctonOperator {
        OctonOperator { m: Matrix8::from_fn(|r, c| rows[r][c]) }
    }

    pub fn identity() -> OctonOperator {
        OctonOperator { m: Matrix8::identity() }
    }

    pub fn zero() -> OctonOperator {
        OctonOperator { m: Matrix8::zeros() }
    }

    pub fn diagonal(d: [f64; 8]) -> OctonOperator {
        OctonOperator { m: Matrix8::from_fn(|r, c| if r == c { C64::new(d[r], 0.0) } else { ZERO }) }
    }

    /// Operator whose column `c` is `f(basis c)`.
    pub fn from_action(f: impl Fn(&Octon) -> Octon) -> OctonOperator {
        let mut m = Matrix8::zeros();
        for b in Basis::ALL {
            let col = f(&Octon::basis(b));
            for (r, z) in col.components().iter().enumerate() {
                m[(r, b.index())] = *z;
            }
        }
        OctonOperator { m }
    }

    pub fn matrix(&self) -> &Matrix8 {
        &self.m
    }

    pub fn to_dmatrix(&self) -> CMatrix {
        CMatrix::from_fn(8, 8, |r, c| self.m[(r, c)])
    }

    pub fn entry(&self, r: usize, c: usize) -> C64 {
        self.m[(r, c)]
    }

    pub fn with_entry(mut self, r: usize, c: usize, z: C64) -> OctonOperator {
        self.m[(r, c)] = z;
        self
    }

    pub fn apply(&self, psi: &Octon) -> Octon {
        let c = psi.components();
        let mut out = [ZERO; 8];
        for (r, o) in out.iter_mut().enumerate() {
            for (k, x) in c.iter().enumerate() {
                *o += self.m[(r, k)] * x;
            }
        }
        Octon::new(out)
    }

    /// `self` applied after `other`.
    pub fn compose(&self, other: &OctonOperator) -> OctonOperator {
        OctonOperator { m: self.m * other.m }
    }

    pub fn scale(&self, z: C64) -> OctonOperator {
        OctonOperator { m: self.m * z }
    }

    pub fn max_abs(&self) -> f64 {
        self.m.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn dist(&self, other: &OctonOperator) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().all(|z| *z == ZERO)
    }

    /// Positions `(row, col)` where the two operators differ by more than `tol`.
    pub fn differing_cells(&self, other: &OctonOperator, tol: f64) -> Vec<(usize, usize)> {
        let mut cells = Vec::new();
        for r in 0..8 {
            for c in 0..8 {
                if (self.m[(r, c)] - other.m[(r, c)]).norm() > tol {
                    cells.push((r, c));
                }
            }
        }
        cells
    }
}

impl Add for OctonOperator {
    type Output = OctonOperator;
    fn add(self, o: OctonOperator) -> OctonOperator {
        OctonOperator { m: self.m + o.m }
    }
}

impl Sub for OctonOperator {
    type Output = OctonOperator;
    fn sub(self, o: OctonOperator) -> OctonOperator {
        OctonOperator { m: self.m - o.m }
    }
}

impl Neg for OctonOperator {
    type Output = OctonOperator;
    fn neg(self) -> OctonOperator {
        OctonOperator { m: -self.m }
    }
}

impl Mul for OctonOperator {
    type Output = OctonOperator;
    fn mul(self, o: OctonOperator) -> OctonOperator {
        self.compose(&o)
    }
}

impl Mul<Octon> for OctonOperator {
    type Output = Octon;
    fn mul(self, psi: Octon) -> Octon {
        self.apply(&psi)
    }
}

impl Mul<C64> for OctonOperator {
    type Output = OctonOperator;
    fn mul(self, z: C64) -> OctonOperator {
        self.scale(z)
    }
}

impl Mul<f64> for OctonOperator {
    type Output = OctonOperator;
    fn mul(self, x: f64) -> OctonOperator {
        self.scale(C64::new(x, 0.0))
    }
}

impl Serialize for OctonOperator {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<[f64; 2]>> =
            (0..8).map(|r| (0..8).map(|c| [self.m[(r, c)].re, self.m[(r, c)].im]).collect()).collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for OctonOperator {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<OctonOperator, D::Error> {
        let rows = <[[[f64; 2]; 8]; 8]>::deserialize(d)?;
        Ok(OctonOperator { m: Matrix8::from_fn(|r, c| C64::new(rows[r][c][0], rows[r][c][1])) })
    }
}

pub fn apply(op: &OctonOperator, psi: &Octon) -> Octon {
    op.apply(psi)
}

pub fn compose(a: &OctonOperator, b: &OctonOperator) -> OctonOperator {
    a.compose(b)
}

/// Left multiplication by a basis element.
pub fn left_multiplication_operator(e: Basis) -> OctonOperator {
    let eo = Octon::basis(e);
    OctonOperator::from_action(|x| eo * *x)
}

/// Left multiplication by an arbitrary octon.
pub fn left_multiplication_by(a: &Octon) -> OctonOperator {
    OctonOperator::from_action(|x| *a * *x)
}

/// Right multiplication by an arbitrary octon.
pub fn right_multiplication_by(a: &Octon) -> OctonOperator {
    OctonOperator::from_action(|x| *x * *a)
}

/// Spatial inversion: flips the vector and pseudoscalar components.
pub fn inversion_operator() -> OctonOperator {
    OctonOperator::diagonal([1.0, -1.0, -1.0, -1.0, -1.0, 1.0, 1.0, 1.0])
}

/// The product ÊR̂ (inversion first). It anticommutes with î, ĵ, k̂ and squares to −1.
pub fn pseudoscalar_inversion_operator() -> OctonOperator {
    left_multiplication_operator(Basis::Pseudoscalar).compose(&inversion_operator())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DiscreteSymmetry {
    Identity,
    Rx,
    Ry,
    Rz,
    R,
    PiX,
    PiY,
    PiZ,
}

impl DiscreteSymmetry {
    /// The seven non-trivial elements in table order.
    pub const NON_TRIVIAL: [DiscreteSymmetry; 7] = [
        DiscreteSymmetry::Rx,
        DiscreteSymmetry::Ry,
        DiscreteSymmetry::Rz,
        DiscreteSymmetry::R,
        DiscreteSymmetry::PiX,
        DiscreteSymmetry::PiY,
        DiscreteSymmetry::PiZ,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DiscreteSymmetry::Identity => "1",
            DiscreteSymmetry::Rx => "Rx",
            DiscreteSymmetry::Ry => "Ry",
            DiscreteSymmetry::Rz => "Rz",
            DiscreteSymmetry::R => "R",
            DiscreteSymmetry::PiX => "πx",
            DiscreteSymmetry::PiY => "πy",
            DiscreteSymmetry::PiZ => "πz",
        }
    }

    pub fn from_name(s: &str) -> Option<DiscreteSymmetry> {
        std::iter::once(DiscreteSymmetry::Identity)
            .chain(DiscreteSymmetry::NON_TRIVIAL)
            .find(|d| d.name() == s)
    }

    /// Sign applied to each canonical component.
    pub fn signs(self) -> [f64; 8] {
        let mut out = [1.0; 8];
        if let Some((_, s)) = tables::SIGN_TABLE.iter().find(|(d, _)| *d == self) {
            let signs = tables::parse_signs(s);
            for (b, sign) in tables::NON_SCALAR_ORDER.iter().zip(signs) {
                out[b.index()] = sign;
            }
        }
        out
    }
}

pub fn discrete_symmetry_operator(s: DiscreteSymmetry) -> OctonOperator {
    OctonOperator::diagonal(s.signs())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ProjectorKind {
    ParticlePlus,
    ParticleMinus,
    ParityPlus,
    ParityMinus,
    SpinZPlus,
    SpinZMinus,
    PolarizationPlus,
    PolarizationMinus,
}

impl ProjectorKind {
    pub const ALL: [ProjectorKind; 8] = [
        ProjectorKind::ParticlePlus,
        ProjectorKind::ParticleMinus,
        ProjectorKind::ParityPlus,
        ProjectorKind::ParityMinus,
        ProjectorKind::SpinZPlus,
        ProjectorKind::SpinZMinus,
        ProjectorKind::PolarizationPlus,
        ProjectorKind::PolarizationMinus,
    ];

    pub fn partner(self) -> ProjectorKind {
        use ProjectorKind::*;
        match self {
            ParticlePlus => ParticleMinus,
            ParticleMinus => ParticlePlus,
            ParityPlus => ParityMinus,
            ParityMinus => ParityPlus,
            SpinZPlus => SpinZMinus,
            SpinZMinus => SpinZPlus,
            PolarizationPlus => PolarizationMinus,
            PolarizationMinus => PolarizationPlus,
        }
    }
}

/// (1 ± X)/2 for X = Ê, R̂, K̂, π̂z.
pub fn projector(kind: ProjectorKind) -> OctonOperator {
    use ProjectorKind::*;
    let (x, sign) = match kind {
        ParticlePlus => (left_multiplication_operator(Basis::Pseudoscalar), 1.0),
        ParticleMinus => (left_multiplication_operator(Basis::Pseudoscalar), -1.0),
        ParityPlus => (inversion_operator(), 1.0),
        ParityMinus => (inversion_operator(), -1.0),
        SpinZPlus => (left_multiplication_operator(Basis::AxialK), 1.0),
        SpinZMinus => (left_multiplication_operator(Basis::AxialK), -1.0),
        PolarizationPlus => (discrete_symmetry_operator(DiscreteSymmetry::PiZ), 1.0),
        PolarizationMinus => (discrete_symmetry_operator(DiscreteSymmetry::PiZ), -1.0),
    };
    (OctonOperator::identity() + x * sign) * 0.5
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Commutation {
    Commute,
    Anticommute,
    Neither,
}

pub fn commutation_sign(a: &OctonOperator, b: &OctonOperator) -> Commutation {
    let ab = a.compose(b);
    let ba = b.compose(a);
    let tol = 1e-12 * (1.0 + ab.max_abs());
    if (ab - ba).max_abs() <= tol {
        Commutation::Commute
    } else if (ab + ba).max_abs() <= tol {
        Commutation::Anticommute
    } else {
        Commutation::Neither
    }
}

/// Scalar multiple of the identity.
pub fn scalar_operator(z: C64) -> OctonOperator {
    OctonOperator::identity().scale(z)
}

/// ξ times an operator.
pub fn xi(op: &OctonOperator) -> OctonOperator {
    op.scale(XI)
}

pub fn unit() -> C64 {
    ONE
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op(b: Basis) -> OctonOperator {
        left_multiplication_operator(b)
    }

    #[test]
    fn i_operator_column() {
        let psi = Octon::new(std::array::from_fn(|k| C64::new(k as f64 + 1.0, 0.0)));
        let c = |k: usize| psi.components()[k];
        let expected = Octon::new([c(1), c(0), -XI * c(7), XI * c(6), c(5), c(4), -XI * c(3), XI * c(2)]);
        assert_eq!(op(Basis::PolarI).apply(&psi), expected);
    }

    #[test]
    fn pseudoscalar_swaps_blocks() {
        let e = op(Basis::Pseudoscalar);
        for r in 0..8 {
            for c in 0..8 {
                let want = if (r + 4) % 8 == c { ONE } else { ZERO };
                assert_eq!(e.entry(r, c), want);
            }
        }
    }

    #[test]
    fn basis_operators_are_involutions() {
        for b in Basis::ALL {
            assert_eq!(op(b).compose(&op(b)), OctonOperator::identity(), "{b:?}");
        }
    }

    #[test]
    fn inversion_examples() {
        let r = inversion_operator();
        assert_eq!(r.compose(&r), OctonOperator::identity());
        assert!((r.compose(&op(Basis::PolarI)) + op(Basis::PolarI).compose(&r)).is_zero());
        let psi = Octon::from_real([1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0]);
        assert_eq!(r.apply(&psi), Octon::from_real([1.0, -2.0, -3.0, -4.0, -5.0, 6.0, 7.0, 8.0]));
        assert_eq!(r.compose(&op(Basis::PolarI)), -op(Basis::PolarI).compose(&r));
    }

    #[test]
    fn reflection_examples() {
        let psi = Octon::from_real([1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0]);
        let rx = discrete_symmetry_operator(DiscreteSymmetry::Rx);
        assert_eq!(rx.apply(&psi), Octon::from_real([1.0, -2.0, 3.0, 4.0, -5.0, 6.0, -7.0, -8.0]));
        let ry = discrete_symmetry_operator(DiscreteSymmetry::Ry);
        assert_eq!(rx.compose(&ry), discrete_symmetry_operator(DiscreteSymmetry::PiZ));
        let pz = discrete_symmetry_operator(DiscreteSymmetry::PiZ);
        assert_eq!(pz.apply(&Octon::basis(Basis::PolarK)), Octon::basis(Basis::PolarK));
        assert_eq!(pz.apply(&Octon::basis(Basis::PolarI)), -Octon::basis(Basis::PolarI));
    }

    #[test]
    fn composition_is_sequential_application() {
        let psi = Octon::new(std::array::from_fn(|k| C64::new(k as f64, 1.0 - k as f64)));
        let a = op(Basis::AxialI);
        let b = op(Basis::AxialJ);
        assert_eq!(a.compose(&b).apply(&psi), a.apply(&b.apply(&psi)));
        assert_eq!(OctonOperator::identity().apply(&psi), psi);
    }

    #[test]
    fn commutation_examples() {
        let rx = discrete_symmetry_operator(DiscreteSymmetry::Rx);
        let r = discrete_symmetry_operator(DiscreteSymmetry::R);
        assert_eq!(commutation_sign(&rx, &op(Basis::PolarI)), Commutation::Anticommute);
        assert_eq!(commutation_sign(&r, &op(Basis::AxialI)), Commutation::Commute);
        assert_eq!(commutation_sign(&op(Basis::PolarI), &op(Basis::PolarJ)), Commutation::Anticommute);
        let mixed = op(Basis::PolarI) + op(Basis::Pseudoscalar);
        assert_eq!(commutation_sign(&mixed, &op(Basis::PolarJ)), Commutation::Neither);
    }

    #[test]
    fn inversion_and_pseudoscalar_relations() {
        let r = inversion_operator();
        let e = op(Basis::Pseudoscalar);
        assert_eq!(commutation_sign(&r, &e), Commutation::Anticommute);
        let er = pseudoscalar_inversion_operator();
        assert_eq!(er.compose(&er), -OctonOperator::identity());
        for b in Basis::POLAR {
            assert_eq!(commutation_sign(&er, &op(b)), Commutation::Anticommute);
        }
    }

    #[test]
    fn projector_examples() {
        let psi = Octon::from_real([1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0]);
        let bp = projector(ProjectorKind::ParityPlus).apply(&psi);
        assert_eq!(bp, Octon::from_real([1.0, 0.0, 0.0, 0.0, 0.0, 6.0, 7.0, 8.0]));
        let sp = projector(ProjectorKind::SpinZPlus);
        let sm = projector(ProjectorKind::SpinZMinus);
        assert!(sp.compose(&sm).is_zero());
        // (1+E)/2 ⊗ (ψ₀ + φ₀ + ψ⃗ + φ⃗ read as vector coefficients)
        let ap = projector(ProjectorKind::ParticlePlus).apply(&psi);
        let folded = Octon::from_real([1.0 + 5.0, 2.0 + 6.0, 3.0 + 7.0, 4.0 + 8.0, 0.0, 0.0, 0.0, 0.0]);
        let half_one_e = (Octon::one() + Octon::basis(Basis::Pseudoscalar)) * 0.5;
        assert_eq!(ap, half_one_e * folded);
    }

    #[test]
    fn operator_json_round_trip() {
        let k = op(Basis::AxialK);
        let s = serde_json::to_string(&k).unwrap();
        let back: OctonOperator = serde_json::from_str(&s).unwrap();
        assert_eq!(back, k);
    }
}
