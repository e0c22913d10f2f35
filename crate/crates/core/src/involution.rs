//! The involutions swapping `r_s` and `c_s` while fixing the size and the
//! remainder sequence.
//!
//! The general map runs in four stages:
//! 1. build the remainder diagram of `λ`;
//! 2. trade its yellow cells for interior cells with [`reduce_yellow`];
//! 3. conjugate the resulting yellow-free diagram;
//! 4. undo step 2 on the conjugate with [`unreduce_yellow`] and put the
//!    remainders back with [`RemainderDiagram::reinsert`].
//!
//! Both yellow-reduction directions walk the weak descents `k` of the
//! remainder vector and act on the `k` topmost coloured cells, where
//! "topmost" always refers to the diagram as it stands at that step.

use serde::{Deserialize, Serialize};

use crate::diagram::{Colour, ColouredCell, RemainderDiagram};
use crate::error::{domain, invariant, Error, Result};
use crate::partition::{Partition, RemainderVector};

/// Which branch a reduction step took.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Case {
    /// The cell after the `k` topmost was green.
    A,
    /// The cell after the `k` topmost was yellow.
    B,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStep {
    pub descent: usize,
    pub case: Case,
    pub diagram: RemainderDiagram,
}

/// Steps in the order they were applied.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
}

/// Every stage of one application of [`involute`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvolutionTrace {
    pub input: Partition,
    pub s: usize,
    pub remainders: RemainderVector,
    pub diagram: RemainderDiagram,
    pub reduction: ReductionTrace,
    pub conjugate: RemainderDiagram,
    pub expansion: ReductionTrace,
    pub output: Partition,
}

/// True when yellow cells appear exactly at weak descents whose coloured cell
/// lies directly below the previous one. This is the colouring produced by
/// [`RemainderDiagram::from_partition`].
pub fn colouring_matches(d: &RemainderDiagram, rv: &RemainderVector) -> bool {
    let cells = d.cells();
    let rho = rv.entries();
    cells.len() == rho.len()
        && cells.iter().enumerate().all(|(k, cell)| {
            let forced = k > 0 && rho[k - 1] >= rho[k] && cells[k - 1].row + 1 == cell.row;
            (cell.colour == Colour::Yellow) == forced
        })
}

/// Mutable interior rows, indexed from row 1 at position 0.
struct Rows(Vec<usize>);

impl Rows {
    fn of(p: &Partition) -> Self {
        Rows(p.parts().to_vec())
    }

    fn get(&self, row: usize) -> usize {
        self.0.get(row - 1).copied().unwrap_or(0)
    }

    fn set(&mut self, row: usize, len: usize) {
        if self.0.len() < row {
            self.0.resize(row, 0);
        }
        self.0[row - 1] = len;
    }

    fn is_outer_corner(&self, cell: &ColouredCell) -> bool {
        cell.col == self.get(cell.row) + 1 && (cell.row == 1 || self.get(cell.row - 1) >= cell.col)
    }

    fn into_partition(self) -> Result<Partition> {
        let mut rows = self.0;
        while rows.last() == Some(&0) {
            rows.pop();
        }
        Partition::new(rows).map_err(|e| Error::Invariant(format!("interior lost its shape: {e}")))
    }
}

fn check_counts(d: &RemainderDiagram, rv: &RemainderVector) -> Result<()> {
    if d.cells().len() != rv.len() {
        return domain(format!(
            "{} coloured cells but remainder vector of length {}",
            d.cells().len(),
            rv.len()
        ));
    }
    if let Some(why) = d.violation() {
        return domain(format!("invalid remainder diagram: {why}"));
    }
    Ok(())
}

/// Trades the yellow cells of a diagram compatible with `rv` for interior
/// cells.
///
/// At each weak descent `k`, the `k` topmost coloured cells (all green) are
/// absorbed into the interior and each is replaced by a green cell at the end
/// of the row below. If the `(k+1)`-th coloured cell is yellow (case B), it
/// is deleted first, and a new green cell is then placed at the end of row 1.
/// The interior grows by `wmaj(rv)` cells and the diagram statistics are
/// unchanged.
pub fn reduce_yellow(
    d: &RemainderDiagram,
    rv: &RemainderVector,
) -> Result<(RemainderDiagram, ReductionTrace)> {
    check_counts(d, rv)?;
    if !colouring_matches(d, rv) {
        return domain(format!("diagram colouring is not compatible with {rv:?}"));
    }

    let mut interior = d.interior().clone();
    let mut cells = d.cells().to_vec();
    let mut trace = ReductionTrace::default();

    for k in rv.weak_descents() {
        let mut rows = Rows::of(&interior);
        let movers = &cells[..k];
        if let Some(bad) = movers
            .iter()
            .find(|c| !c.is_green() || !rows.is_outer_corner(c))
        {
            return invariant(format!(
                "cell {bad} above descent {k} is not a green outer corner"
            ));
        }
        let case = if cells[k].is_green() {
            Case::A
        } else {
            Case::B
        };

        for c in movers {
            rows.set(c.row, c.col);
        }
        let mut next: Vec<ColouredCell> = Vec::with_capacity(cells.len());
        if case == Case::B {
            next.push(ColouredCell::green(1, rows.get(1) + 1));
        }
        for c in movers {
            let below = c.row + 1;
            next.push(ColouredCell::green(below, rows.get(below) + 1));
        }
        let rest = match case {
            Case::A => &cells[k..],
            Case::B => &cells[k + 1..],
        };
        next.extend_from_slice(rest);

        interior = rows.into_partition()?;
        let diagram = RemainderDiagram::new(interior.clone(), next);
        if let Some(why) = diagram.violation() {
            return invariant(format!(
                "reduction step at descent {k} produced an invalid diagram: {why}"
            ));
        }
        cells = diagram.cells().to_vec();
        trace.steps.push(ReductionStep {
            descent: k,
            case,
            diagram,
        });
    }

    let out = RemainderDiagram::new(interior, cells);
    if out.has_yellow() {
        return invariant("yellow cell survived the reduction");
    }
    Ok((out, trace))
}

/// Inverse of [`reduce_yellow`] for the remainder vector `rv`.
pub fn unreduce_yellow(d: &RemainderDiagram, rv: &RemainderVector) -> Result<RemainderDiagram> {
    unreduce_yellow_traced(d, rv).map(|(out, _)| out)
}

/// [`unreduce_yellow`], also returning the diagram after each undone step.
///
/// Descents are visited in decreasing order. A green cell in row 1 marks a
/// case-B step: it is removed, the `k` topmost remaining greens each move up
/// one row (taking the last interior cell of the row above), and a yellow
/// cell appears where the `k`-th of them was. Otherwise the `k` topmost
/// greens move up in the same way and nothing else changes.
pub fn unreduce_yellow_traced(
    d: &RemainderDiagram,
    rv: &RemainderVector,
) -> Result<(RemainderDiagram, ReductionTrace)> {
    check_counts(d, rv)?;
    if d.has_yellow() {
        return domain("yellow cells present; expected the output of a reduction");
    }

    let mut interior = d.interior().clone();
    let mut cells = d.cells().to_vec();
    let mut trace = ReductionTrace::default();

    for k in rv.weak_descents().into_iter().rev() {
        let case = if cells.first().is_some_and(|c| c.row == 1) {
            Case::B
        } else {
            Case::A
        };
        let rest_start = match case {
            Case::A => 0,
            Case::B => 1,
        };
        let movers = &cells[rest_start..rest_start + k];
        if let Some(bad) = movers.iter().find(|c| !c.is_green() || c.row < 2) {
            return domain(format!(
                "cell {bad} cannot move up while undoing descent {k}"
            ));
        }

        let mut rows = Rows::of(&interior);
        for c in movers {
            let above = c.row - 1;
            let len = rows.get(above);
            if len == 0 {
                return domain(format!(
                    "row {above} has no interior cell to give up for {c}"
                ));
            }
            rows.set(above, len - 1);
        }
        if rows.0.windows(2).any(|w| w[0] < w[1]) {
            return domain(format!("undoing descent {k} breaks the interior shape"));
        }

        let mut next: Vec<ColouredCell> = movers
            .iter()
            .map(|c| ColouredCell::green(c.row - 1, rows.get(c.row - 1) + 1))
            .collect();
        if case == Case::B {
            let last = movers[k - 1];
            next.push(ColouredCell::yellow(last.row, last.col));
        }
        next.extend_from_slice(&cells[rest_start + k..]);

        interior = rows
            .into_partition()
            .map_err(|e| Error::Domain(e.to_string()))?;
        let diagram = RemainderDiagram::new(interior.clone(), next);
        if let Some(why) = diagram.violation() {
            return domain(format!(
                "undoing descent {k} produced an invalid diagram: {why}"
            ));
        }
        cells = diagram.cells().to_vec();
        trace.steps.push(ReductionStep {
            descent: k,
            case,
            diagram,
        });
    }

    let out = RemainderDiagram::new(interior, cells);
    if !colouring_matches(&out, rv) {
        return domain(format!("result is not compatible with {rv:?}"));
    }
    Ok((out, trace))
}

/// The involution on partitions whose parts are all divisible by `s`:
/// shrink, conjugate, blow up.
pub fn conj_empty(p: &Partition, s: usize) -> Result<Partition> {
    if !p.remainder_sequence(s).is_empty() {
        return domain(format!("{p} has a non-empty remainder sequence modulo {s}"));
    }
    Ok(p.reduce(s).conjugate().blow_up(s))
}

/// The involution on partitions with strictly increasing remainder sequence:
/// conjugate the (yellow-free) remainder diagram and reinsert.
pub fn map_strict(p: &Partition, s: usize) -> Result<Partition> {
    let rv = p.remainder_sequence(s);
    if !rv.is_strictly_increasing() {
        return domain(format!(
            "remainder sequence {rv:?} of {p} is not strictly increasing"
        ));
    }
    RemainderDiagram::from_partition(p, s)
        .conjugate()?
        .reinsert(&rv, s)
}

/// The general involution. Fixes `|λ|` and the remainder sequence and swaps
/// `r_s` with `c_s`; these postconditions are checked on every call.
pub fn involute(p: &Partition, s: usize) -> Result<Partition> {
    involute_traced(p, s).map(|t| t.output)
}

pub fn involute_traced(p: &Partition, s: usize) -> Result<InvolutionTrace> {
    let rv = p.remainder_sequence(s);
    let diagram = RemainderDiagram::from_partition(p, s);
    let (reduced, reduction) = reduce_yellow(&diagram, &rv)?;
    let conjugate = reduced.conjugate()?;
    let (expanded, expansion) = unreduce_yellow_traced(&conjugate, &rv)
        .map_err(|e| Error::Invariant(format!("inverse reduction failed on {p} (s={s}): {e}")))?;
    let output = expanded
        .reinsert(&rv, s)
        .map_err(|e| Error::Invariant(format!("reinsertion failed on {p} (s={s}): {e}")))?;

    if output.size() != p.size() {
        return invariant(format!("size changed: {p} -> {output}"));
    }
    if output.remainder_sequence(s) != rv {
        return invariant(format!("remainder sequence changed: {p} -> {output}"));
    }
    if output.r_stat(s) != p.c_stat(s) || output.c_stat(s) != p.r_stat(s) {
        return invariant(format!("statistics not swapped: {p} -> {output} (s={s})"));
    }

    Ok(InvolutionTrace {
        input: p.clone(),
        s,
        remainders: rv,
        diagram,
        reduction,
        conjugate,
        expansion,
        output,
    })
}
