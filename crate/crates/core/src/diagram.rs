//! Extended remainder diagrams: an interior partition plus at most one
//! coloured cell per row, sitting just past the end of that row.
//!
//! A diagram is *valid* when
//! - every green cell is an outer corner of the interior,
//! - every yellow cell ends its (possibly empty) row,
//! - the row above a yellow cell holds a coloured cell (so row 1 is never
//!   yellow).
//!
//! Rows below the interior may hold a coloured cell in column 1. Validity
//! forces these rows to be contiguous: the first can be green or yellow, the
//! rest must be yellow.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::partition::{Partition, RemainderVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Colour {
    #[serde(rename = "G")]
    Green,
    #[serde(rename = "Y")]
    Yellow,
}

impl Colour {
    pub fn symbol(self) -> char {
        match self {
            Colour::Green => 'G',
            Colour::Yellow => 'Y',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColouredCell {
    pub row: usize,
    pub col: usize,
    pub colour: Colour,
}

impl ColouredCell {
    pub const fn green(row: usize, col: usize) -> Self {
        ColouredCell {
            row,
            col,
            colour: Colour::Green,
        }
    }

    pub const fn yellow(row: usize, col: usize) -> Self {
        ColouredCell {
            row,
            col,
            colour: Colour::Yellow,
        }
    }

    pub fn is_green(&self) -> bool {
        self.colour == Colour::Green
    }
}

impl fmt::Display for ColouredCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.row, self.col, self.colour.symbol())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RemainderDiagram {
    interior: Partition,
    cells: Vec<ColouredCell>,
}

impl RemainderDiagram {
    /// Assembles a diagram, ordering the coloured cells by row. No validity
    /// check is made; see [`RemainderDiagram::validate`].
    pub fn new(interior: Partition, mut cells: Vec<ColouredCell>) -> Self {
        cells.sort_by_key(|c| c.row);
        RemainderDiagram { interior, cells }
    }

    /// The remainder diagram of `p` modulo `s`.
    ///
    /// The first coloured cell is green; a later one is yellow exactly when
    /// it sits directly below the previous coloured cell and the previous
    /// remainder is at least as large.
    pub fn from_partition(p: &Partition, s: usize) -> Self {
        let interior = p.reduce(s);
        let rem = p.remainder_sequence(s);
        let rows = p.row_positions(s);
        let rho = rem.entries();
        let gamma = rows.rows();
        let cells = (0..gamma.len())
            .map(|j| {
                let row = gamma[j];
                let col = p.row_len(row) / s + 1;
                let yellow = j > 0 && gamma[j - 1] + 1 == row && rho[j - 1] >= rho[j];
                if yellow {
                    ColouredCell::yellow(row, col)
                } else {
                    ColouredCell::green(row, col)
                }
            })
            .collect();
        RemainderDiagram { interior, cells }
    }

    pub fn interior(&self) -> &Partition {
        &self.interior
    }

    pub fn cells(&self) -> &[ColouredCell] {
        &self.cells
    }

    pub fn into_parts(self) -> (Partition, Vec<ColouredCell>) {
        (self.interior, self.cells)
    }

    pub fn coloured_rows(&self) -> Vec<usize> {
        self.cells.iter().map(|c| c.row).collect()
    }

    pub fn cell_in_row(&self, row: usize) -> Option<&ColouredCell> {
        self.cells.iter().find(|c| c.row == row)
    }

    pub fn greens(&self) -> usize {
        self.cells.iter().filter(|c| c.is_green()).count()
    }

    pub fn yellows(&self) -> usize {
        self.cells.len() - self.greens()
    }

    pub fn has_yellow(&self) -> bool {
        self.yellows() > 0
    }

    /// Rows containing any cell, interior or coloured.
    pub fn rows(&self) -> usize {
        let last_coloured = self.cells.iter().map(|c| c.row).max().unwrap_or(0);
        self.interior.len().max(last_coloured)
    }

    /// Columns containing any cell, interior or coloured.
    pub fn columns(&self) -> usize {
        let last_coloured = self.cells.iter().map(|c| c.col).max().unwrap_or(0);
        self.interior.width().max(last_coloured)
    }

    /// The reason the diagram is invalid, if it is.
    pub fn violation(&self) -> Option<String> {
        for w in self.cells.windows(2) {
            if w[0].row >= w[1].row {
                return Some(format!("two coloured cells in row {}", w[1].row));
            }
        }
        for (i, cell) in self.cells.iter().enumerate() {
            if cell.row == 0 {
                return Some("coloured cell in row 0".into());
            }
            if cell.col != self.interior.row_len(cell.row) + 1 {
                return Some(format!("coloured cell {cell} does not end its row"));
            }
            match cell.colour {
                Colour::Green => {
                    if cell.row > 1 && self.interior.row_len(cell.row - 1) < cell.col {
                        return Some(format!("green cell {cell} is not an outer corner"));
                    }
                }
                Colour::Yellow => {
                    let above = i > 0 && self.cells[i - 1].row + 1 == cell.row;
                    if !above {
                        return Some(format!(
                            "yellow cell {cell} has no coloured cell directly above"
                        ));
                    }
                }
            }
        }
        None
    }

    pub fn validate(&self) -> bool {
        self.violation().is_none()
    }

    fn require_valid(&self) -> Result<()> {
        match self.violation() {
            Some(why) => domain(format!("invalid remainder diagram: {why}")),
            None => Ok(()),
        }
    }

    /// Whether the yellow cells sit where the weak descents of `rv` demand:
    /// at each weak descent `ρ_{k-1} ≥ ρ_k`, the `k`-th coloured cell is
    /// yellow exactly when it lies directly below the `(k-1)`-th.
    pub fn compatible(&self, rv: &RemainderVector) -> Result<bool> {
        if rv.len() != self.cells.len() {
            return domain(format!(
                "{} coloured cells but remainder vector of length {}",
                self.cells.len(),
                rv.len()
            ));
        }
        let rho = rv.entries();
        Ok((1..self.cells.len()).all(|k| {
            if rho[k - 1] < rho[k] {
                return true;
            }
            let adjacent = self.cells[k - 1].row + 1 == self.cells[k].row;
            (self.cells[k].colour == Colour::Yellow) == adjacent
        }))
    }

    /// Rows minus coloured cells; equals `r_s` for diagrams built from a
    /// partition.
    pub fn diagram_r(&self) -> Result<usize> {
        self.require_valid()?;
        Ok(self.rows() - self.cells.len())
    }

    /// Columns minus green cells; equals `c_s` for diagrams built from a
    /// partition.
    pub fn diagram_c(&self) -> Result<usize> {
        self.require_valid()?;
        Ok(self.columns() - self.greens())
    }

    /// Reflects a yellow-free diagram about the main diagonal.
    pub fn conjugate(&self) -> Result<RemainderDiagram> {
        self.require_valid()?;
        if self.has_yellow() {
            return domain("only yellow-free remainder diagrams can be conjugated");
        }
        let cells = self
            .cells
            .iter()
            .map(|c| ColouredCell::green(c.col, c.row))
            .collect();
        Ok(RemainderDiagram::new(self.interior.conjugate(), cells))
    }

    /// Blows the interior up by `s` and appends `ρ_i` to the row of the
    /// `i`-th coloured cell.
    pub fn reinsert(&self, rv: &RemainderVector, s: usize) -> Result<Partition> {
        if rv.len() != self.cells.len() {
            return domain(format!(
                "{} coloured cells but remainder vector of length {}",
                self.cells.len(),
                rv.len()
            ));
        }
        rv.check_modulus(s)?;
        self.require_valid()?;
        let mut rows: Vec<usize> = (1..=self.rows())
            .map(|i| s * self.interior.row_len(i))
            .collect();
        for (cell, rho) in self.cells.iter().zip(rv.entries()) {
            rows[cell.row - 1] += rho;
        }
        if rows.contains(&0) || rows.windows(2).any(|w| w[0] < w[1]) {
            return domain(format!(
                "reinserting {rv:?} yields {rows:?}, which is not a partition"
            ));
        }
        Partition::new(rows)
    }

    /// ASCII art: `#` interior, `G` green, `Y` yellow, rows top to bottom.
    pub fn render(&self) -> String {
        (1..=self.rows())
            .map(|row| {
                let mut line = "#".repeat(self.interior.row_len(row));
                if let Some(cell) = self.cell_in_row(row) {
                    line.push(cell.colour.symbol());
                }
                line
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl fmt::Display for RemainderDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
