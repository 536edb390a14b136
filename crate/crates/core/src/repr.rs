//! Spinor, bispinor and octospinor bases built from octons, and the matrices
//! of octonic operators in those bases.

use serde::{Deserialize, Serialize};

use crate::algebra::{Basis, Octon, C64, ONE, XI, ZERO};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::operators::{inversion_operator, left_multiplication_operator, OctonOperator};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RepKind {
    Spinor,
    Bispinor,
    BispinorStandard,
    Octospinor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BispinorForm {
    /// Ê and K̂ diagonal.
    EDiagonal,
    /// R̂ and K̂ diagonal.
    Standard,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepresentationBasis {
    pub kind: RepKind,
    pub params: Vec<C64>,
    pub basis: Vec<Octon>,
}

impl RepresentationBasis {
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// 8×n matrix whose columns are the basis octons.
    pub fn columns(&self) -> CMatrix {
        CMatrix::from_fn(8, self.basis.len(), |r, c| self.basis[c].components()[r])
    }

    pub(crate) fn checked(self) -> Result<RepresentationBasis> {
        let rank = linalg::rank(&self.columns(), 1e-10);
        if rank < self.basis.len() {
            return Err(Error::DegenerateBasis { rank, len: self.basis.len() });
        }
        Ok(self)
    }
}

fn o(b: Basis) -> Octon {
    Octon::basis(b)
}

fn half(x: Octon) -> Octon {
    x * 0.5
}

pub fn k_plus() -> Octon {
    half(Octon::one() + o(Basis::AxialK))
}

pub fn k_minus() -> Octon {
    half(Octon::one() - o(Basis::AxialK))
}

pub fn q_plus() -> Octon {
    half(o(Basis::AxialI) + o(Basis::AxialJ) * XI)
}

pub fn q_minus() -> Octon {
    half(o(Basis::AxialI) - o(Basis::AxialJ) * XI)
}

pub fn e_plus() -> Octon {
    half(Octon::one() + o(Basis::Pseudoscalar))
}

pub fn e_minus() -> Octon {
    half(Octon::one() - o(Basis::Pseudoscalar))
}

pub const DEFAULT_SPINOR: [C64; 4] = [ONE, ZERO, ZERO, ZERO];
pub const DEFAULT_F: C64 = ONE;
pub const DEFAULT_G: C64 = ONE;
pub const DEFAULT_OCTOSPINOR: C64 = C64::new(4.0, 0.0);

/// χ_up = α₁(1+K) + α₂(i+ξj) + α₃(E+k) + α₄(I+ξJ) and its spin-down partner
/// with the coefficients mirrored.
pub fn spinor_basis(alpha: [C64; 4]) -> Result<RepresentationBasis> {
    let [a1, a2, a3, a4] = alpha;
    let i_xj = |s: f64| o(Basis::PolarI) + o(Basis::PolarJ) * (XI * s);
    let e_k = |s: f64| o(Basis::Pseudoscalar) + o(Basis::PolarK) * s;
    let up = k_plus().scale(a1 * 2.0) + i_xj(1.0).scale(a2) + e_k(1.0).scale(a3) + q_plus().scale(a4 * 2.0);
    let down = k_minus().scale(a4 * 2.0) + i_xj(-1.0).scale(a3) + e_k(-1.0).scale(a2) + q_minus().scale(a1 * 2.0);
    RepresentationBasis { kind: RepKind::Spinor, params: alpha.to_vec(), basis: vec![up, down] }.checked()
}

pub fn bispinor_basis(f: C64, g: C64, form: BispinorForm) -> Result<RepresentationBasis> {
    let up = k_plus().scale(f) + q_plus().scale(g);
    let down = k_minus().scale(g) + q_minus().scale(f);
    let (kind, basis) = match form {
        BispinorForm::EDiagonal => {
            (RepKind::Bispinor, vec![e_plus() * up, e_plus() * down, e_minus() * up, e_minus() * down])
        }
        BispinorForm::Standard => {
            let e = o(Basis::Pseudoscalar);
            (RepKind::BispinorStandard, vec![up, down, e * up, e * down])
        }
    };
    RepresentationBasis { kind, params: vec![f, g], basis }.checked()
}

/// The fourth standard-form basis function exactly as printed: a repeat of the third.
pub fn printed_standard_fourth(f: C64, g: C64) -> Octon {
    o(Basis::Pseudoscalar) * (k_plus().scale(f) + q_plus().scale(g))
}

pub fn octospinor_basis(a: C64) -> Result<RepresentationBasis> {
    if a == ZERO {
        return Err(Error::DegenerateBasis { rank: 0, len: 8 });
    }
    let inner = [k_plus(), k_minus(), q_plus(), q_minus()];
    let basis = [e_plus(), e_minus()]
        .iter()
        .flat_map(|e| inner.iter().map(move |x| (*e * *x).scale(a)))
        .collect();
    RepresentationBasis { kind: RepKind::Octospinor, params: vec![a], basis }.checked()
}

/// Matrix M with op·χ_s = Σ_t M_ts χ_t, or NotClosed when the span is not invariant.
pub fn matrix_of(op: &OctonOperator, basis: &RepresentationBasis) -> Result<CMatrix> {
    let b = basis.columns();
    let image = op.to_dmatrix() * &b;
    let m = linalg::pseudo_inverse(&b) * &image;
    let residual = linalg::max_abs_diff(&(&b * &m), &image);
    let scale = linalg::max_abs(&image).max(linalg::max_abs(&b));
    if residual > 1e-9 * scale.max(1.0) {
        return Err(Error::NotClosed { residual });
    }
    Ok(m)
}

/// γ₀ = R̂, γₛ = R̂·(left multiplication by i, j, k), γ₅ = ξγ₀γ₁γ₂γ₃.
pub fn dirac_gamma(idx: usize) -> Result<OctonOperator> {
    let r = inversion_operator();
    Ok(match idx {
        0 => r,
        1..=3 => r.compose(&left_multiplication_operator(Basis::POLAR[idx - 1])),
        5 => {
            let g: Vec<OctonOperator> = (0..4).map(|k| dirac_gamma(k).expect("valid index")).collect();
            g[0].compose(&g[1]).compose(&g[2]).compose(&g[3]).scale(XI)
        }
        _ => return Err(Error::InvalidArgument(format!("no gamma operator with index {idx}"))),
    })
}

/// 4×4 matrix of left multiplication by ψ in the Ê-diagonal bispinor basis.
pub fn matrix_waveform(psi: &Octon) -> CMatrix {
    let basis = default_bispinor();
    let mut m = CMatrix::zeros(4, 4);
    for b in Basis::ALL {
        let z = psi.get(b);
        if z != ZERO {
            m += basis_waveform(b, &basis) * z;
        }
    }
    m
}

fn default_bispinor() -> RepresentationBasis {
    bispinor_basis(DEFAULT_F, DEFAULT_G, BispinorForm::EDiagonal).expect("default bispinor basis is regular")
}

fn basis_waveform(b: Basis, basis: &RepresentationBasis) -> CMatrix {
    matrix_of(&left_multiplication_operator(b), basis).expect("every basis element preserves the bispinor span")
}

/// Parse a small matrix written as rows of `0`, `1`, `-1`, `ξ`, `-ξ`.
pub fn printed_matrix(rows: &[&str]) -> CMatrix {
    let n = rows.len();
    CMatrix::from_fn(n, n, |r, c| {
        let tok = rows[r].split_whitespace().nth(c).expect("square listing");
        match tok {
            "0" => ZERO,
            "1" => ONE,
            "-1" => -ONE,
            "ξ" => XI,
            "-ξ" => -XI,
            other => panic!("unexpected entry {other:?}"),
        }
    })
}

/// Printed matrix forms, by name.
pub mod printed {
    pub const SIGMA_X: [&str; 2] = ["0 1", "1 0"];
    pub const SIGMA_Y: [&str; 2] = ["0 -ξ", "ξ 0"];
    pub const SIGMA_Z: [&str; 2] = ["1 0", "0 -1"];

    pub const BIG_SIGMA_X: [&str; 4] = ["0 1 0 0", "1 0 0 0", "0 0 0 1", "0 0 1 0"];
    pub const BIG_SIGMA_Y: [&str; 4] = ["0 -ξ 0 0", "ξ 0 0 0", "0 0 0 -ξ", "0 0 ξ 0"];
    pub const BIG_SIGMA_Z: [&str; 4] = ["1 0 0 0", "0 -1 0 0", "0 0 1 0", "0 0 0 -1"];
    pub const ALPHA_X: [&str; 4] = ["0 1 0 0", "1 0 0 0", "0 0 0 -1", "0 0 -1 0"];
    pub const ALPHA_Y: [&str; 4] = ["0 -ξ 0 0", "ξ 0 0 0", "0 0 0 ξ", "0 0 -ξ 0"];
    pub const ALPHA_Z: [&str; 4] = ["1 0 0 0", "0 -1 0 0", "0 0 -1 0", "0 0 0 1"];
    pub const BETA: [&str; 4] = ["0 0 1 0", "0 0 0 1", "1 0 0 0", "0 1 0 0"];
    pub const E_DIAGONAL: [&str; 4] = ["1 0 0 0", "0 1 0 0", "0 0 -1 0", "0 0 0 -1"];

    pub const STANDARD_I: [&str; 4] = ["0 0 0 1", "0 0 1 0", "0 1 0 0", "1 0 0 0"];
    pub const STANDARD_J: [&str; 4] = ["0 0 0 -ξ", "0 0 ξ 0", "0 -ξ 0 0", "ξ 0 0 0"];
    pub const STANDARD_K: [&str; 4] = ["0 0 1 0", "0 0 0 -1", "1 0 0 0", "0 -1 0 0"];
    pub const STANDARD_E: [&str; 4] = ["0 0 1 0", "0 0 0 1", "1 0 0 0", "0 1 0 0"];
    pub const STANDARD_R: [&str; 4] = ["1 0 0 0", "0 1 0 0", "0 0 -1 0", "0 0 0 -1"];

    pub const OCTO_K: [&str; 8] = [
        "1 0 0 0 0 0 0 0",
        "0 -1 0 0 0 0 0 0",
        "0 0 1 0 0 0 0 0",
        "0 0 0 -1 0 0 0 0",
        "0 0 0 0 1 0 0 0",
        "0 0 0 0 0 -1 0 0",
        "0 0 0 0 0 0 1 0",
        "0 0 0 0 0 0 0 -1",
    ];
    pub const OCTO_E: [&str; 8] = [
        "1 0 0 0 0 0 0 0",
        "0 1 0 0 0 0 0 0",
        "0 0 1 0 0 0 0 0",
        "0 0 0 1 0 0 0 0",
        "0 0 0 0 -1 0 0 0",
        "0 0 0 0 0 -1 0 0",
        "0 0 0 0 0 0 -1 0",
        "0 0 0 0 0 0 0 -1",
    ];
    pub const OCTO_PI_Z: [&str; 8] = [
        "1 0 0 0 0 0 0 0",
        "0 1 0 0 0 0 0 0",
        "0 0 -1 0 0 0 0 0",
        "0 0 0 -1 0 0 0 0",
        "0 0 0 0 1 0 0 0",
        "0 0 0 0 0 1 0 0",
        "0 0 0 0 0 0 -1 0",
        "0 0 0 0 0 0 0 -1",
    ];
    pub const OCTO_I: [&str; 8] = [
        "0 0 0 1 0 0 0 0",
        "0 0 1 0 0 0 0 0",
        "0 1 0 0 0 0 0 0",
        "1 0 0 0 0 0 0 0",
        "0 0 0 0 0 0 0 1",
        "0 0 0 0 0 0 1 0",
        "0 0 0 0 0 1 0 0",
        "0 0 0 0 1 0 0 0",
    ];
    pub const OCTO_RX: [&str; 8] = [
        "0 0 0 0 0 1 0 0",
        "0 0 0 0 1 0 0 0",
        "0 0 0 0 0 0 0 1",
        "0 0 0 0 0 0 1 0",
        "0 1 0 0 0 0 0 0",
        "1 0 0 0 0 0 0 0",
        "0 0 0 1 0 0 0 0",
        "0 0 1 0 0 0 0 0",
    ];
    pub const OCTO_R: [&str; 8] = [
        "0 0 0 0 1 0 0 0",
        "0 0 0 0 0 1 0 0",
        "0 0 0 0 0 0 1 0",
        "0 0 0 0 0 0 0 1",
        "1 0 0 0 0 0 0 0",
        "0 1 0 0 0 0 0 0",
        "0 0 1 0 0 0 0 0",
        "0 0 0 1 0 0 0 0",
    ];
}

/// The block form of the waveform matrix as printed, evaluated on ψ.
pub fn printed_waveform(psi: &Octon) -> CMatrix {
    let c = psi.components();
    let (p0, px, py, pz, f0, fx, fy, fz) = (c[0], c[1], c[2], c[3], c[4], c[5], c[6], c[7]);
    let mut m = CMatrix::zeros(4, 4);
    m[(0, 0)] = p0 + pz + f0 + fz;
    m[(0, 1)] = px - XI * py + fx - XI * fy;
    m[(1, 0)] = px + XI * py + fx + XI * fy;
    m[(1, 1)] = p0 - pz + f0 - fz;
    m[(2, 2)] = p0 - pz - f0 + fz;
    m[(2, 3)] = -px + XI * py + fx + XI * fy;
    m[(3, 2)] = -px - XI * py + fx - XI * fy;
    m[(3, 3)] = p0 + pz - f0 - fz;
    m
}
