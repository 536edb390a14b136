//! Printed operator listings used as cross-check data.
//!
//! Matrix rows list output components, columns input components, both in
//! canonical order (ψ₀, ψ₁, ψ₂, ψ₃, φ₀, φ₁, φ₂, φ₃).

use crate::algebra::{Basis, C64, XI};

use super::DiscreteSymmetry;

pub type PrintedMatrix = [&'static str; 8];

pub const PRINTED_I: PrintedMatrix = [
    "0 1 0 0 0 0 0 0",
    "1 0 0 0 0 0 0 0",
    "0 0 0 0 0 0 0 -ξ",
    "0 0 0 0 0 0 ξ 0",
    "0 0 0 0 0 1 0 0",
    "0 0 0 0 1 0 0 0",
    "0 0 0 -ξ 0 0 0 0",
    "0 0 ξ 0 0 0 0 0",
];

pub const PRINTED_J: PrintedMatrix = [
    "0 0 1 0 0 0 0 0",
    "0 0 0 0 0 0 0 ξ",
    "1 0 0 0 0 0 0 0",
    "0 0 0 0 0 -ξ 0 0",
    "0 0 0 0 0 0 1 0",
    "0 0 0 ξ 0 0 0 0",
    "0 0 0 0 1 0 0 0",
    "0 -ξ 0 0 0 0 0 0",
];

pub const PRINTED_K: PrintedMatrix = [
    "0 0 0 1 0 0 0 0",
    "0 0 0 0 0 0 -ξ 0",
    "0 0 0 0 0 ξ 0 0",
    "1 0 0 0 0 0 0 0",
    "0 0 0 0 0 0 0 1",
    "0 0 -ξ 0 0 0 0 0",
    "0 ξ 0 0 0 0 0 0",
    "0 0 0 0 1 0 0 0",
];

pub const PRINTED_AXIAL_I: PrintedMatrix = [
    "0 0 0 0 0 1 0 0",
    "0 0 0 0 1 0 0 0",
    "0 0 0 ξ 0 0 0 0",
    "0 0 -ξ 0 0 0 0 0",
    "0 1 0 0 0 0 0 0",
    "1 0 0 0 0 0 0 0",
    "0 0 0 0 0 0 0 ξ",
    "0 0 0 0 0 0 -ξ 0",
];

pub const PRINTED_AXIAL_J: PrintedMatrix = [
    "0 0 0 0 0 0 1 0",
    "0 0 0 -ξ 0 0 0 0",
    "0 0 0 0 1 0 0 0",
    "0 ξ 0 0 0 0 0 0",
    "0 0 1 0 0 0 0 0",
    "0 0 0 0 0 0 0 -ξ",
    "1 0 0 0 0 0 0 0",
    "0 0 0 0 0 ξ 0 0",
];

pub const PRINTED_AXIAL_K: PrintedMatrix = [
    "0 0 0 0 0 0 0 1",
    "0 0 ξ 0 0 0 0 0",
    "0 -ξ 0 0 0 0 0 0",
    "0 0 0 0 1 0 0 0",
    "0 0 0 1 0 0 0 0",
    "0 0 0 0 0 0 ξ 0",
    "0 0 0 0 0 -ξ 0 0",
    "1 0 0 0 0 0 0 0",
];

pub const PRINTED_PSEUDOSCALAR: PrintedMatrix = [
    "0 0 0 0 1 0 0 0",
    "0 0 0 0 0 1 0 0",
    "0 0 0 0 0 0 1 0",
    "0 0 0 0 0 0 0 1",
    "1 0 0 0 0 0 0 0",
    "0 1 0 0 0 0 0 0",
    "0 0 1 0 0 0 0 0",
    "0 0 0 1 0 0 0 0",
];

pub const PRINTED_INVERSION: PrintedMatrix = [
    "1 0 0 0 0 0 0 0",
    "0 -1 0 0 0 0 0 0",
    "0 0 -1 0 0 0 0 0",
    "0 0 0 -1 0 0 0 0",
    "0 0 0 0 -1 0 0 0",
    "0 0 0 0 0 1 0 0",
    "0 0 0 0 0 0 1 0",
    "0 0 0 0 0 0 0 1",
];

/// Printed listings keyed by the basis element whose left action they depict.
pub const PRINTED_BASIS_MATRICES: [(Basis, PrintedMatrix); 7] = [
    (Basis::PolarI, PRINTED_I),
    (Basis::PolarJ, PRINTED_J),
    (Basis::PolarK, PRINTED_K),
    (Basis::AxialI, PRINTED_AXIAL_I),
    (Basis::AxialJ, PRINTED_AXIAL_J),
    (Basis::AxialK, PRINTED_AXIAL_K),
    (Basis::Pseudoscalar, PRINTED_PSEUDOSCALAR),
];

/// Printed componentwise expansion of i⊗ψ, listed as (coefficient, source
/// component) per output component.
pub const PRINTED_I_TIMES_PSI: [(&str, usize); 8] = [
    ("1", 1),
    ("1", 0),
    ("-ξ", 7),
    ("ξ", 6),
    ("1", 5),
    ("1", 4),
    ("-ξ", 7),
    ("ξ", 6),
];

pub fn parse_entry(tok: &str) -> C64 {
    match tok {
        "0" => C64::new(0.0, 0.0),
        "1" => C64::new(1.0, 0.0),
        "-1" => C64::new(-1.0, 0.0),
        "ξ" => XI,
        "-ξ" => -XI,
        other => panic!("unexpected matrix entry {other:?}"),
    }
}

pub fn parse_matrix(rows: &PrintedMatrix) -> [[C64; 8]; 8] {
    let mut out = [[C64::new(0.0, 0.0); 8]; 8];
    for (r, row) in rows.iter().enumerate() {
        let toks: Vec<&str> = row.split_whitespace().collect();
        assert_eq!(toks.len(), 8, "row {r} must have 8 entries");
        for (c, t) in toks.iter().enumerate() {
            out[r][c] = parse_entry(t);
        }
    }
    out
}

/// Signs of reflections and half-turns on (i, j, k, E, I, J, K); the scalar is
/// always kept.
pub const SIGN_TABLE: [(DiscreteSymmetry, &str); 7] = [
    (DiscreteSymmetry::Rx, "- + + - + - -"),
    (DiscreteSymmetry::Ry, "+ - + - - + -"),
    (DiscreteSymmetry::Rz, "+ + - - - - +"),
    (DiscreteSymmetry::R, "- - - - + + +"),
    (DiscreteSymmetry::PiX, "+ - - + + - -"),
    (DiscreteSymmetry::PiY, "- + - + - + -"),
    (DiscreteSymmetry::PiZ, "- - + + - - +"),
];

/// Products of reflections and half-turns; row is the left factor.
pub const PRODUCT_TABLE: [[&str; 7]; 7] = [
    ["1", "πz", "πy", "πx", "R", "Rz", "Ry"],
    ["πz", "1", "πx", "πy", "Rz", "R", "Rx"],
    ["πy", "πx", "1", "πz", "Ry", "Rx", "R"],
    ["πx", "πy", "πz", "1", "Rx", "Ry", "Rz"],
    ["R", "Rz", "Ry", "Rx", "1", "πz", "πy"],
    ["Rz", "R", "Rx", "Ry", "πz", "1", "πx"],
    ["Ry", "Rx", "R", "Rz", "πy", "πx", "1"],
];

/// Commute (+) or anticommute (-) with the left-multiplication operators of
/// (i, j, k, E, I, J, K).
pub const COMMUTATION_TABLE: [(DiscreteSymmetry, &str); 7] = [
    (DiscreteSymmetry::Rx, "- + + - + - -"),
    (DiscreteSymmetry::Ry, "+ - + - - + -"),
    (DiscreteSymmetry::Rz, "+ + - - - - +"),
    (DiscreteSymmetry::R, "- - - - + + +"),
    (DiscreteSymmetry::PiX, "+ - - + + - -"),
    (DiscreteSymmetry::PiY, "- + - + - + -"),
    (DiscreteSymmetry::PiZ, "- - + + - - +"),
];

/// Column order shared by the sign and commutation tables.
pub const NON_SCALAR_ORDER: [Basis; 7] = [
    Basis::PolarI,
    Basis::PolarJ,
    Basis::PolarK,
    Basis::Pseudoscalar,
    Basis::AxialI,
    Basis::AxialJ,
    Basis::AxialK,
];

pub fn parse_signs(s: &str) -> [f64; 7] {
    let v: Vec<f64> = s
        .split_whitespace()
        .map(|t| match t {
            "+" => 1.0,
            "-" => -1.0,
            other => panic!("unexpected sign {other:?}"),
        })
        .collect();
    v.try_into().expect("seven signs")
}
