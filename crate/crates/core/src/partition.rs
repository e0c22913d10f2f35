//! Integer partitions, Ferrers-diagram geometry and the statistics built on
//! them.
//!
//! Cells use matrix coordinates in English convention: `(row, col)`, both
//! 1-indexed, row 1 at the top. Every operation here is a pure function of
//! immutable values.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

fn check_modulus(s: usize) {
    assert!(s >= 1, "the modulus s must be a positive integer");
}

/// A cell `(row, col)` of a Ferrers diagram, 1-indexed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub const fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition, rejecting zero parts and increases.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if let Some(i) = parts.iter().position(|&p| p == 0) {
            return domain(format!("part {} is zero; parts must be positive", i + 1));
        }
        if let Some(i) = parts.windows(2).position(|w| w[0] < w[1]) {
            return domain(format!(
                "parts must be weakly decreasing, found {} < {} at position {}",
                parts[i],
                parts[i + 1],
                i + 1
            ));
        }
        Ok(Partition { parts })
    }

    /// Drops trailing zeros; the caller guarantees the rest is weakly decreasing.
    pub(crate) fn from_rows(mut rows: Vec<usize>) -> Self {
        while rows.last() == Some(&0) {
            rows.pop();
        }
        debug_assert!(rows.windows(2).all(|w| w[0] >= w[1]), "rows {rows:?}");
        debug_assert!(rows.iter().all(|&r| r > 0), "rows {rows:?}");
        Partition { parts: rows }
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<usize> {
        self.parts
    }

    /// |λ|
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// ℓ(λ)
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Length of row `row` (1-indexed); zero below the last part.
    pub fn row_len(&self, row: usize) -> usize {
        if row == 0 {
            return 0;
        }
        self.parts.get(row - 1).copied().unwrap_or(0)
    }

    /// Number of columns, i.e. the largest part.
    pub fn width(&self) -> usize {
        self.row_len(1)
    }

    pub fn contains(&self, z: Cell) -> bool {
        z.row >= 1 && z.col >= 1 && z.col <= self.row_len(z.row)
    }

    fn require(&self, z: Cell) -> Result<()> {
        if self.contains(z) {
            Ok(())
        } else {
            domain(format!("cell {z} is not in the diagram of {self}"))
        }
    }

    /// All cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &len)| (1..=len).map(move |j| Cell::new(i + 1, j)))
    }

    /// Cells strictly to the right of `z` in its row.
    pub fn arm(&self, z: Cell) -> Result<usize> {
        self.require(z)?;
        Ok(self.row_len(z.row) - z.col)
    }

    /// Cells strictly below `z` in its column.
    pub fn leg(&self, z: Cell) -> Result<usize> {
        self.require(z)?;
        Ok(self.parts[z.row..]
            .iter()
            .take_while(|&&p| p >= z.col)
            .count())
    }

    pub fn hook(&self, z: Cell) -> Result<usize> {
        Ok(self.arm(z)? + self.leg(z)? + 1)
    }

    /// Reflection about the main diagonal.
    pub fn conjugate(&self) -> Partition {
        let parts = (1..=self.width())
            .map(|j| self.parts.iter().take_while(|&&p| p >= j).count())
            .collect();
        Partition { parts }
    }

    /// Cells with leg zero whose arm plus one is divisible by `s`, row-major.
    pub fn s_cells(&self, s: usize) -> Vec<Cell> {
        check_modulus(s);
        self.cells()
            .filter(|&z| {
                let arm = self.row_len(z.row) - z.col;
                self.row_len(z.row + 1) < z.col && (arm + 1).is_multiple_of(s)
            })
            .collect()
    }

    /// Number of parts divisible by `s`.
    pub fn r_stat(&self, s: usize) -> usize {
        check_modulus(s);
        self.parts.iter().filter(|&&p| p % s == 0).count()
    }

    /// Number of `s`-cells.
    ///
    /// The leg-zero cells of row `i` are the last `λ_i - λ_{i+1}` cells, and
    /// their values of `arm + 1` run through `1..=λ_i - λ_{i+1}`.
    pub fn c_stat(&self, s: usize) -> usize {
        check_modulus(s);
        (1..=self.len())
            .map(|i| (self.row_len(i) - self.row_len(i + 1)) / s)
            .sum()
    }

    /// Non-zero residues of the parts modulo `s`, top to bottom.
    pub fn remainder_sequence(&self, s: usize) -> RemainderVector {
        check_modulus(s);
        RemainderVector(
            self.parts
                .iter()
                .map(|p| p % s)
                .filter(|&r| r != 0)
                .collect(),
        )
    }

    /// Rows whose part is not divisible by `s`.
    pub fn row_positions(&self, s: usize) -> PositionSequence {
        check_modulus(s);
        PositionSequence(
            self.parts
                .iter()
                .enumerate()
                .filter(|(_, &p)| p % s != 0)
                .map(|(i, _)| i + 1)
                .collect(),
        )
    }

    /// `⌈λ_γ / s⌉` for each row `γ` of the row position sequence; not
    /// necessarily monotone.
    pub fn column_positions(&self, s: usize) -> Vec<usize> {
        self.row_positions(s)
            .iter()
            .map(|row| self.row_len(row).div_ceil(s))
            .collect()
    }

    /// Removes the last non-zero remainder from its row.
    pub fn delta(&self, s: usize) -> Result<Partition> {
        let rows = self.row_positions(s);
        let Some(last) = rows.last() else {
            return domain(format!("{self} has an empty remainder sequence modulo {s}"));
        };
        let mut parts = self.parts.clone();
        parts[last - 1] -= parts[last - 1] % s;
        Ok(Partition::from_rows(parts))
    }

    /// Floor-divides every part by `s`, dropping the parts that become zero.
    pub fn reduce(&self, s: usize) -> Partition {
        check_modulus(s);
        Partition::from_rows(self.parts.iter().map(|p| p / s).collect())
    }

    pub fn blow_up(&self, s: usize) -> Partition {
        check_modulus(s);
        Partition {
            parts: self.parts.iter().map(|p| p * s).collect(),
        }
    }

    /// Number of cells with `α·leg = β·(arm + 1)` and hook divisible by `α + β`.
    pub fn bf_stat(&self, alpha: usize, beta: usize) -> usize {
        assert!(alpha >= 1, "alpha must be positive");
        let modulus = alpha + beta;
        self.cells()
            .filter(|&z| {
                let arm = self.row_len(z.row) - z.col;
                let leg = self.parts[z.row..]
                    .iter()
                    .take_while(|&&p| p >= z.col)
                    .count();
                alpha * leg == beta * (arm + 1) && (arm + leg + 1).is_multiple_of(modulus)
            })
            .count()
    }

    /// True iff no hook length is divisible by `s`.
    pub fn is_core(&self, s: usize) -> bool {
        check_modulus(s);
        self.cells()
            .all(|z| !self.hook(z).expect("cell of the diagram").is_multiple_of(s))
    }

    /// `#` rows, top to bottom; the empty partition renders as "".
    pub fn render(&self) -> String {
        self.parts
            .iter()
            .map(|&p| "#".repeat(p))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<usize>()
                .map_err(|_| Error::Parse(format!("`{tok}` is not a non-negative integer")))
        })
        .collect()
}

fn write_list(f: &mut fmt::Formatter<'_>, items: &[usize], sep: &str) -> fmt::Result {
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

/// Comma-separated parts; the empty string is the empty partition.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Partition::new(parse_list(s)?)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.parts, ",")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        write_list(f, &self.parts, ",")?;
        f.write_str(")")
    }
}

/// Sequence of non-zero remainders, each in `1..s` for the ambient modulus.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RemainderVector(Vec<usize>);

impl RemainderVector {
    /// Builds a remainder vector valid for modulus `s`.
    pub fn new(entries: Vec<usize>, s: usize) -> Result<Self> {
        let rv = RemainderVector(entries);
        rv.check_modulus(s)?;
        Ok(rv)
    }

    /// Builds a remainder vector without tying it to a modulus. Entries must
    /// still be positive.
    pub fn from_entries(entries: Vec<usize>) -> Result<Self> {
        if entries.contains(&0) {
            return domain("remainder entries must be positive");
        }
        Ok(RemainderVector(entries))
    }

    pub fn check_modulus(&self, s: usize) -> Result<()> {
        match self.0.iter().find(|&&r| r == 0 || r >= s) {
            Some(bad) => domain(format!(
                "remainder {bad} is outside 1..={}",
                s.saturating_sub(1)
            )),
            None => Ok(()),
        }
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// |ρ|
    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Positions `j` (1-indexed) with `ρ_j ≥ ρ_{j+1}`.
    pub fn weak_descents(&self) -> Vec<usize> {
        self.0
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] >= w[1])
            .map(|(j, _)| j + 1)
            .collect()
    }

    /// Weak major index: sum of the weak descent positions.
    pub fn wmaj(&self) -> usize {
        self.weak_descents().iter().sum()
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] < w[1])
    }

    /// Hyphen-joined entries, as used for CSV keys.
    pub fn hyphenated(&self) -> String {
        self.0
            .iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join("-")
    }
}

impl FromStr for RemainderVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RemainderVector::from_entries(parse_list(s)?)
    }
}

impl fmt::Display for RemainderVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.0, ",")
    }
}

impl fmt::Debug for RemainderVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        write_list(f, &self.0, ",")?;
        f.write_str(")")
    }
}

/// Strictly increasing row indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PositionSequence(Vec<usize>);

impl PositionSequence {
    pub fn new(rows: Vec<usize>) -> Result<Self> {
        if rows.first() == Some(&0) || rows.windows(2).any(|w| w[0] >= w[1]) {
            return domain(format!(
                "{rows:?} is not a strictly increasing sequence of positive rows"
            ));
        }
        Ok(PositionSequence(rows))
    }

    pub fn rows(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn arm_leg_hook() {
        let lam = p(&[6, 4, 4, 1]);
        assert_eq!(lam.arm(Cell::new(1, 2)).unwrap(), 4);
        assert_eq!(lam.leg(Cell::new(1, 2)).unwrap(), 2);
        assert_eq!(lam.hook(Cell::new(1, 2)).unwrap(), 7);
        assert_eq!(lam.arm(Cell::new(3, 3)).unwrap(), 1);
        assert_eq!(lam.leg(Cell::new(1, 1)).unwrap(), 3);

        let one = p(&[1]);
        assert_eq!(one.arm(Cell::new(1, 1)).unwrap(), 0);
        assert_eq!(one.leg(Cell::new(1, 1)).unwrap(), 0);
        assert_eq!(one.hook(Cell::new(1, 1)).unwrap(), 1);

        assert_eq!(p(&[3, 2, 1]).hook(Cell::new(1, 1)).unwrap(), 5);
    }

    #[test]
    fn cell_outside_is_domain_error() {
        let lam = p(&[6, 4, 4, 1]);
        for z in [
            Cell::new(2, 5),
            Cell::new(5, 1),
            Cell::new(0, 1),
            Cell::new(1, 0),
        ] {
            assert!(matches!(lam.arm(z), Err(Error::Domain(_))));
            assert!(matches!(lam.leg(z), Err(Error::Domain(_))));
            assert!(matches!(lam.hook(z), Err(Error::Domain(_))));
        }
    }

    #[test]
    fn conjugation() {
        assert_eq!(p(&[6, 4, 4, 1]).conjugate(), p(&[4, 3, 3, 3, 1, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
    }

    #[test]
    fn s_cells_and_stats() {
        let lam = p(&[6, 4, 4, 1]);
        assert_eq!(lam.s_cells(2), vec![Cell::new(1, 5), Cell::new(3, 3)]);
        assert_eq!(lam.r_stat(2), 3);
        assert_eq!(lam.c_stat(2), 2);
        assert!(Partition::empty().s_cells(3).is_empty());
        assert_eq!(p(&[7]).s_cells(3), vec![Cell::new(1, 2), Cell::new(1, 5)]);

        assert_eq!(p(&[3, 2, 1]).r_stat(2), 1);
        assert_eq!(p(&[3, 2, 1]).c_stat(2), 0);
        assert_eq!(p(&[20, 20, 18, 16, 12, 8, 3]).r_stat(4), 5);
        assert_eq!(p(&[19, 16, 14, 12, 7, 5, 4, 3]).c_stat(3), 3);
        assert_eq!(Partition::empty().r_stat(4), 0);
        assert_eq!(Partition::empty().c_stat(4), 0);
    }

    #[test]
    fn remainders_and_positions() {
        let rv = |x: &[usize]| RemainderVector(x.to_vec());
        assert_eq!(
            p(&[12, 9, 5, 4, 4, 3, 2]).remainder_sequence(4),
            rv(&[1, 1, 3, 2])
        );
        assert!(p(&[5, 3, 2]).remainder_sequence(1).is_empty());
        let strict_input = p(&[17, 16, 14, 12, 8, 7]);
        assert_eq!(strict_input.remainder_sequence(4), rv(&[1, 2, 3]));
        assert_eq!(strict_input.row_positions(4).rows(), &[1, 3, 6]);
        assert_eq!(strict_input.column_positions(4), vec![5, 4, 2]);
        assert!(p(&[6, 3]).row_positions(3).is_empty());
        assert!(p(&[6, 3]).column_positions(3).is_empty());
        assert_eq!(
            p(&[19, 16, 14, 12, 7, 5, 4, 3]).row_positions(3).rows(),
            &[1, 2, 3, 5, 6, 7]
        );
        assert_eq!(p(&[4, 2, 2, 1]).column_positions(3), vec![2, 1, 1, 1]);
    }

    #[test]
    fn delta_examples() {
        let left = p(&[9, 7, 5, 3]);
        let d = left.delta(3).unwrap();
        assert_eq!(d, p(&[9, 7, 3, 3]));
        assert_eq!(d.c_stat(3), left.c_stat(3) + 1);

        let right = p(&[9, 8, 4, 3]);
        let d = right.delta(3).unwrap();
        assert_eq!(d, p(&[9, 8, 3, 3]));
        assert_eq!(d.c_stat(3), right.c_stat(3));

        let d = p(&[7]).delta(3).unwrap();
        assert_eq!(d, p(&[6]));
        assert_eq!(d.c_stat(3), 2);
        assert_eq!(p(&[7]).c_stat(3), 2);

        assert!(matches!(p(&[6, 3]).delta(3), Err(Error::Domain(_))));
    }

    #[test]
    fn reduce_and_blow_up() {
        assert_eq!(p(&[17, 16, 14, 12, 8, 7]).reduce(4), p(&[4, 4, 3, 3, 2, 1]));
        assert_eq!(p(&[2, 1]).reduce(3), Partition::empty());
        assert_eq!(
            p(&[19, 16, 14, 12, 7, 5, 4, 3]).reduce(3),
            p(&[6, 5, 4, 4, 2, 1, 1, 1])
        );
        assert_eq!(p(&[2, 1, 1]).blow_up(2), p(&[4, 2, 2]));
        assert_eq!(Partition::empty().blow_up(5), Partition::empty());
        assert_eq!(p(&[5, 3, 1]).blow_up(7).reduce(7), p(&[5, 3, 1]));
    }

    #[test]
    fn weak_major_index() {
        let rv = |x: &[usize]| RemainderVector(x.to_vec());
        assert_eq!(rv(&[2, 1, 1, 2, 1]).weak_descents(), vec![1, 2, 4]);
        assert_eq!(rv(&[2, 1, 1, 2, 1]).wmaj(), 7);
        assert!(rv(&[1, 2, 3]).weak_descents().is_empty());
        assert_eq!(rv(&[]).wmaj(), 0);
        assert_eq!(rv(&[1, 1, 2, 1, 2, 1]).weak_descents(), vec![1, 3, 5]);
        assert_eq!(rv(&[1, 1, 2, 1, 2, 1]).wmaj(), 9);
    }

    #[test]
    fn bf_and_cores() {
        assert_eq!(p(&[6, 4, 4, 1]).bf_stat(2, 0), 2);
        assert_eq!(Partition::empty().bf_stat(3, 2), 0);
        // (arm, leg) over the three cells of (2,1): (1,1), (0,0), (0,0).
        // None satisfies leg = arm + 1.
        assert_eq!(p(&[2, 1]).bf_stat(1, 1), 0);
        // (2,2): only (1,1) qualifies, with arm 1, leg 1, hook 3 and 2·1 = 1·2.
        assert_eq!(p(&[2, 2]).bf_stat(2, 1), 1);
        assert!(p(&[3, 2, 1]).is_core(2));
        assert!(Partition::empty().is_core(7));
        assert!(!p(&[2]).is_core(2));
    }

    #[test]
    fn parsing() {
        assert_eq!(
            "19,16,14,12,7,5,4,3".parse::<Partition>().unwrap(),
            p(&[19, 16, 14, 12, 7, 5, 4, 3])
        );
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!(" 3, 1 ".parse::<Partition>().unwrap(), p(&[3, 1]));
        assert!("1,2".parse::<Partition>().is_err());
        assert!("3,0".parse::<Partition>().is_err());
        assert!("3,-1".parse::<Partition>().is_err());
        assert!("a".parse::<Partition>().is_err());
        assert_eq!(p(&[6, 4, 4, 1]).to_string(), "6,4,4,1");
    }

    #[test]
    fn remainder_vector_validation() {
        assert!(RemainderVector::new(vec![1, 2], 3).is_ok());
        assert!(RemainderVector::new(vec![3], 3).is_err());
        assert!(RemainderVector::new(vec![1], 1).is_err());
        assert!(RemainderVector::new(vec![], 1).is_ok());
        assert_eq!(
            "2,1,1,2,1".parse::<RemainderVector>().unwrap().hyphenated(),
            "2-1-1-2-1"
        );
    }
}
