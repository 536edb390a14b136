//! The octon multiplication table as printed, and the dense product table
//! derived from it.

use super::{Basis, C64, XI};

/// Rows and columns in the order i, j, k, E, I, J, K. Cell (r, c) is the
/// product r ⊗ c with the row element as the left factor.
pub const PRINTED_TABLE: [[&str; 7]; 7] = [
    ["1", "ξK", "-ξJ", "I", "E", "ξk", "-ξj"],
    ["-ξK", "1", "ξI", "J", "-ξk", "E", "ξi"],
    ["ξJ", "-ξI", "1", "K", "ξj", "-ξi", "E"],
    ["I", "J", "K", "1", "i", "j", "k"],
    ["E", "ξk", "-ξj", "i", "1", "ξK", "-ξJ"],
    ["-ξk", "E", "ξi", "j", "-ξK", "1", "ξI"],
    ["ξj", "-ξi", "E", "k", "ξJ", "-ξI", "1"],
];

/// Basis order used by the rows/columns of [`PRINTED_TABLE`].
pub const PRINTED_ORDER: [Basis; 7] = [
    Basis::PolarI,
    Basis::PolarJ,
    Basis::PolarK,
    Basis::Pseudoscalar,
    Basis::AxialI,
    Basis::AxialJ,
    Basis::AxialK,
];

/// A single basis product: `phase * basis` with phase in {±1, ±ξ}.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cell {
    pub phase: C64,
    pub basis: Basis,
}

impl Cell {
    pub fn parse(token: &str) -> Option<Cell> {
        let mut rest = token.trim();
        let mut phase = C64::new(1.0, 0.0);
        if let Some(r) = rest.strip_prefix('-') {
            phase = -phase;
            rest = r;
        }
        if let Some(r) = rest.strip_prefix('ξ') {
            phase *= XI;
            rest = r;
        }
        Basis::from_label(rest).map(|basis| Cell { phase, basis })
    }
}

/// Dense 8×8 product table over the canonical basis order.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductTable {
    cells: [[Cell; 8]; 8],
}

impl ProductTable {
    /// Table built from [`PRINTED_TABLE`], extended by the identity row and column.
    pub fn printed() -> ProductTable {
        let one = C64::new(1.0, 0.0);
        let mut cells = [[Cell { phase: one, basis: Basis::One }; 8]; 8];
        for b in Basis::ALL {
            cells[0][b.index()] = Cell { phase: one, basis: b };
            cells[b.index()][0] = Cell { phase: one, basis: b };
        }
        for (r, row) in PRINTED_TABLE.iter().enumerate() {
            for (c, token) in row.iter().enumerate() {
                let cell = Cell::parse(token).expect("malformed printed table cell");
                cells[PRINTED_ORDER[r].index()][PRINTED_ORDER[c].index()] = cell;
            }
        }
        ProductTable { cells }
    }

    pub fn from_cells(cells: [[Cell; 8]; 8]) -> ProductTable {
        ProductTable { cells }
    }

    pub fn cell(&self, left: Basis, right: Basis) -> Cell {
        self.cells[left.index()][right.index()]
    }

    pub fn set_cell(&mut self, left: Basis, right: Basis, cell: Cell) {
        self.cells[left.index()][right.index()] = cell;
    }

    /// Flip the sign of one cell; used to build negative controls.
    pub fn with_sign_flip(mut self, left: Basis, right: Basis) -> ProductTable {
        let c = self.cell(left, right);
        self.set_cell(left, right, Cell { phase: -c.phase, basis: c.basis });
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_cell_form() {
        assert_eq!(Cell::parse("-ξJ").unwrap().phase, -XI);
        assert_eq!(Cell::parse("-ξJ").unwrap().basis, Basis::AxialJ);
        assert_eq!(Cell::parse("ξk").unwrap().basis, Basis::PolarK);
        assert_eq!(Cell::parse("1").unwrap().basis, Basis::One);
        assert!(Cell::parse("q").is_none());
    }

    #[test]
    fn identity_row_and_column() {
        let t = ProductTable::printed();
        for b in Basis::ALL {
            assert_eq!(t.cell(Basis::One, b).basis, b);
            assert_eq!(t.cell(b, Basis::One).basis, b);
        }
    }
}
