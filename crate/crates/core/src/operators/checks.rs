//! Exhaustive comparison of generated operators against the printed listings
//! and the reflection group tables.

use serde_json::json;

use super::tables::{self, COMMUTATION_TABLE, NON_SCALAR_ORDER, PRINTED_BASIS_MATRICES, PRINTED_INVERSION, PRODUCT_TABLE};
use super::{commutation_sign, discrete_symmetry_operator, inversion_operator, Commutation, DiscreteSymmetry, OctonOperator};
use crate::algebra::{Basis, Octon, ProductTable};
use crate::report::{Check, VerificationReport};

/// Cells (row, col) where the printed axial listings show right instead of
/// left multiplication. They are reported as flagged, not failed.
pub const KNOWN_LISTING_TYPOS: [(Basis, usize, usize); 12] = [
    (Basis::AxialI, 2, 3),
    (Basis::AxialI, 3, 2),
    (Basis::AxialI, 6, 7),
    (Basis::AxialI, 7, 6),
    (Basis::AxialJ, 1, 3),
    (Basis::AxialJ, 3, 1),
    (Basis::AxialJ, 5, 7),
    (Basis::AxialJ, 7, 5),
    (Basis::AxialK, 1, 2),
    (Basis::AxialK, 2, 1),
    (Basis::AxialK, 5, 6),
    (Basis::AxialK, 6, 5),
];

pub fn left_operator_from_table(e: Basis, table: &ProductTable) -> OctonOperator {
    let eo = Octon::basis(e);
    OctonOperator::from_action(|x| eo.mul_with(x, table))
}

fn listing_checks(report: &mut VerificationReport, name: &str, basis: Option<Basis>, printed: &OctonOperator, generated: &OctonOperator) {
    for col in 0..8 {
        let cells: Vec<(usize, usize)> =
            printed.differing_cells(generated, 1e-12).into_iter().filter(|&(_, c)| c == col).collect();
        let residual = cells.iter().map(|&(r, c)| (printed.entry(r, c) - generated.entry(r, c)).norm()).fold(0.0, f64::max);
        let known = !cells.is_empty()
            && basis.is_some_and(|b| cells.iter().all(|&(r, c)| KNOWN_LISTING_TYPOS.contains(&(b, r, c))));
        let mut check = Check::measured(
            format!("operators.listing.{name}.col{col}"),
            format!("column {col} of the {name} matrix regenerated from the product table"),
            "basis operator matrix listings",
            residual,
            0.0,
        );
        if known {
            check = check.flag_if_failed();
        }
        let detail: Vec<_> = cells
            .iter()
            .map(|&(r, c)| {
                json!({
                    "row": r,
                    "col": c,
                    "printed": [printed.entry(r, c).re, printed.entry(r, c).im],
                    "generated": [generated.entry(r, c).re, generated.entry(r, c).im],
                })
            })
            .collect();
        report.push(check.with_counterexample(json!({ "operator": name, "cells": detail })));
    }
}

/// Operator tables checked with the printed product table.
pub fn verify_operator_tables() -> VerificationReport {
    verify_operator_tables_with(&ProductTable::printed())
}

/// Same checks with basis operators generated from `table` (fault injection).
pub fn verify_operator_tables_with(table: &ProductTable) -> VerificationReport {
    let mut report = VerificationReport::new("operators", 0);

    for (b, listing) in PRINTED_BASIS_MATRICES {
        let printed = OctonOperator::from_rows(tables::parse_matrix(&listing));
        listing_checks(&mut report, b.label(), Some(b), &printed, &left_operator_from_table(b, table));
    }
    let printed_r = OctonOperator::from_rows(tables::parse_matrix(&PRINTED_INVERSION));
    listing_checks(&mut report, "R", None, &printed_r, &inversion_operator());

    for (r, row) in DiscreteSymmetry::NON_TRIVIAL.iter().enumerate() {
        for (c, col) in DiscreteSymmetry::NON_TRIVIAL.iter().enumerate() {
            let expected = DiscreteSymmetry::from_name(PRODUCT_TABLE[r][c]).expect("table names a symmetry");
            let got = discrete_symmetry_operator(*row).compose(&discrete_symmetry_operator(*col));
            let residual = got.dist(&discrete_symmetry_operator(expected));
            report.push(
                Check::measured(
                    format!("operators.reflection-product.{}.{}", row.name(), col.name()),
                    format!("{} after {} equals {}", row.name(), col.name(), expected.name()),
                    "reflection product table",
                    residual,
                    0.0,
                )
                .with_counterexample(json!({ "left": row.name(), "right": col.name(), "expected": expected.name() })),
            );
        }
    }

    for (sym, signs) in COMMUTATION_TABLE {
        let signs = tables::parse_signs(signs);
        for (b, sign) in NON_SCALAR_ORDER.iter().zip(signs) {
            let expected = if sign > 0.0 { Commutation::Commute } else { Commutation::Anticommute };
            let got = commutation_sign(&discrete_symmetry_operator(sym), &left_operator_from_table(*b, table));
            report.push(
                Check::holds(
                    format!("operators.reflection-commutation.{}.{}", sym.name(), b.label()),
                    format!("{} {:?}s with the {} operator", sym.name(), expected, b.label()),
                    "reflection commutation table",
                    got == expected,
                )
                .with_counterexample(json!({ "symmetry": sym.name(), "basis": b.label(), "got": got, "expected": expected })),
            );
        }
    }

    let rxyz = discrete_symmetry_operator(DiscreteSymmetry::Rx)
        .compose(&discrete_symmetry_operator(DiscreteSymmetry::Ry))
        .compose(&discrete_symmetry_operator(DiscreteSymmetry::Rz));
    report.push(Check::measured(
        "operators.inversion-from-reflections",
        "R equals Rx after Ry after Rz",
        "inversion as product of reflections",
        rxyz.dist(&inversion_operator()),
        0.0,
    ));
    report.sort();
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    #[test]
    fn full_run_counts_and_passes() {
        let r = verify_operator_tables();
        assert_eq!(r.checks.len(), 64 + 49 + 49 + 1);
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        let s = r.summary();
        assert_eq!(s.flagged, 12, "four columns per axial listing carry the known typos");
    }

    #[test]
    fn injected_flip_names_the_cell() {
        let table = ProductTable::printed().with_sign_flip(Basis::PolarI, Basis::PolarJ);
        let r = verify_operator_tables_with(&table);
        let fails: Vec<_> = r.failures().collect();
        assert!(!fails.is_empty());
        let hit = fails.iter().find(|c| c.id == "operators.listing.i.col2").expect("column of j in the i listing");
        assert_eq!(hit.status, Status::Fail);
        let cells = &hit.counterexample.as_ref().unwrap()["cells"];
        assert_eq!(cells[0]["col"], 2);
        assert_eq!(cells[0]["row"], 7);
    }
}
