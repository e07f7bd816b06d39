//! Introns in a pair of adjacent rows, intron mutation, and the involution
//! `tau_i` on `RP(w)` built from it.
//!
//! Boxes of rows `i`, `i + 1` are ordered column by column, top box first:
//! `(i, c)` gets index `2c - 1` and `(i + 1, c)` gets index `2c`.

use crate::error::{Error, Result};
use crate::pipedream::PipeDream;

/// Contents of one column of a row pair, top box first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ColumnClass {
    BothCross,
    ElbowOverCross,
    CrossOverElbow,
    BothElbow,
}

impl ColumnClass {
    fn from_boxes(top_cross: bool, bottom_cross: bool) -> Self {
        match (top_cross, bottom_cross) {
            (true, true) => ColumnClass::BothCross,
            (false, true) => ColumnClass::ElbowOverCross,
            (true, false) => ColumnClass::CrossOverElbow,
            (false, false) => ColumnClass::BothElbow,
        }
    }

    pub fn top_is_cross(self) -> bool {
        matches!(self, ColumnClass::BothCross | ColumnClass::CrossOverElbow)
    }

    pub fn bottom_is_cross(self) -> bool {
        matches!(self, ColumnClass::BothCross | ColumnClass::ElbowOverCross)
    }
}

/// A `2 x k` window in rows `row`, `row + 1` starting at column `start`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Intron {
    pub row: usize,
    pub start: usize,
    pub columns: Vec<ColumnClass>,
}

impl Intron {
    pub fn new(row: usize, start: usize, columns: Vec<ColumnClass>) -> Result<Self> {
        let intron = Intron {
            row,
            start,
            columns,
        };
        intron.validate()?;
        Ok(intron)
    }

    /// Reads the window `start..=end` of rows `row`, `row + 1` of `d`.
    pub fn read(d: &PipeDream, row: usize, start: usize, end: usize) -> Result<Self> {
        let columns = (start..=end)
            .map(|c| ColumnClass::from_boxes(d.contains(row, c), d.contains(row + 1, c)))
            .collect();
        Intron::new(row, start, columns)
    }

    pub fn end(&self) -> usize {
        self.start + self.columns.len() - 1
    }

    /// Northwest and southeast corners are elbows, and no elbow is strictly
    /// northeast of another: past the double-cross columns, the classes read
    /// elbow-over-cross*, at most one both-elbow, cross-over-elbow*.
    pub fn validate(&self) -> Result<()> {
        let (first, last) = match (self.columns.first(), self.columns.last()) {
            (Some(&f), Some(&l)) => (f, l),
            _ => return Err(Error::InvalidIntron("empty window".into())),
        };
        if first.top_is_cross() {
            return Err(Error::InvalidIntron("northwest corner is a cross".into()));
        }
        if last.bottom_is_cross() {
            return Err(Error::InvalidIntron("southeast corner is a cross".into()));
        }
        // phase 0: elbow-over-cross, 1: after the both-elbow, 2: cross-over-elbow
        let mut phase = 0;
        for &class in &self.columns {
            match class {
                ColumnClass::BothCross => {}
                ColumnClass::ElbowOverCross if phase == 0 => {}
                ColumnClass::BothElbow if phase == 0 => phase = 1,
                ColumnClass::CrossOverElbow => phase = 2,
                _ => {
                    return Err(Error::InvalidIntron(
                        "an elbow lies strictly northeast of another".into(),
                    ))
                }
            }
        }
        Ok(())
    }

    /// Crosses in the top row of the window.
    pub fn top_crosses(&self) -> usize {
        self.columns.iter().filter(|c| c.top_is_cross()).count()
    }

    /// Crosses in the bottom row of the window.
    pub fn bottom_crosses(&self) -> usize {
        self.columns.iter().filter(|c| c.bottom_is_cross()).count()
    }

    fn count(&self, class: ColumnClass) -> usize {
        self.columns.iter().filter(|&&c| c == class).count()
    }

    /// `tau(C)`: same double-cross columns, top and bottom cross counts
    /// exchanged. The remaining slots are forced to read elbow-over-cross,
    /// then the both-elbow column if there is one, then cross-over-elbow.
    pub fn mutate(&self) -> Intron {
        let eoc = self.count(ColumnClass::ElbowOverCross);
        let coe = self.count(ColumnClass::CrossOverElbow);
        let has_both_elbow = self.count(ColumnClass::BothElbow) == 1;
        let mut fill = std::iter::repeat_n(ColumnClass::ElbowOverCross, coe)
            .chain(has_both_elbow.then_some(ColumnClass::BothElbow))
            .chain(std::iter::repeat_n(ColumnClass::CrossOverElbow, eoc));
        let columns = self
            .columns
            .iter()
            .map(|&c| match c {
                ColumnClass::BothCross => c,
                _ => fill.next().expect("slot count is preserved"),
            })
            .collect();
        Intron {
            row: self.row,
            start: self.start,
            columns,
        }
    }

    fn write_into(&self, d: &mut PipeDream) {
        for (k, class) in self.columns.iter().enumerate() {
            let c = self.start + k;
            for (r, cross) in [
                (self.row, class.top_is_cross()),
                (self.row + 1, class.bottom_is_cross()),
            ] {
                if cross {
                    d.insert(r, c);
                } else {
                    d.remove(r, c);
                }
            }
        }
    }
}

/// One piece of a row-pair decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Block {
    Intron(Intron),
    /// Columns `start..=end` where both rows are crosses.
    Solid {
        start: usize,
        end: usize,
    },
}

/// The region of rows `row`, `row + 1` from `start_row(D, row)` to column
/// `n`, cut into maximal introns and solid cross blocks, west to east.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowPairDecomposition {
    pub row: usize,
    pub start: usize,
    pub blocks: Vec<Block>,
}

impl RowPairDecomposition {
    pub fn introns(&self) -> impl Iterator<Item = &Intron> {
        self.blocks.iter().filter_map(|b| match b {
            Block::Intron(c) => Some(c),
            Block::Solid { .. } => None,
        })
    }
}

fn require_reduced(d: &PipeDream) -> Result<()> {
    if d.is_reduced()? {
        Ok(())
    } else {
        Err(Error::NotReduced)
    }
}

/// Splits rows `i`, `i + 1` east of `start_i(D)` into maximal introns and
/// solid blocks. In index order the elbows of that region start with a top
/// elbow and end with a bottom one; each maximal intron covers one maximal
/// run of top elbows followed by bottom elbows.
pub fn decompose(d: &PipeDream, i: usize) -> Result<RowPairDecomposition> {
    require_reduced(d)?;
    let n = d.n();
    if i == 0 || i >= n {
        return Err(Error::RowOutOfRange { row: i, n });
    }
    let start = d.start_row(i)?;
    // (column, is_top) for every elbow in index order
    let elbows: Vec<(usize, bool)> = (start..=n)
        .flat_map(|c| [(c, true), (c, false)])
        .filter(|&(c, top)| !d.contains(if top { i } else { i + 1 }, c))
        .collect();
    debug_assert_eq!(elbows.first(), Some(&(start, true)));
    debug_assert_eq!(elbows.last(), Some(&(n, false)));

    let mut blocks = Vec::new();
    let mut cursor = start;
    let mut k = 0;
    while k < elbows.len() {
        let first_col = elbows[k].0;
        debug_assert!(elbows[k].1, "runs open on a top elbow");
        while k < elbows.len() && elbows[k].1 {
            k += 1;
        }
        while k < elbows.len() && !elbows[k].1 {
            k += 1;
        }
        let last_col = elbows[k - 1].0;
        if first_col > cursor {
            blocks.push(Block::Solid {
                start: cursor,
                end: first_col - 1,
            });
        }
        blocks.push(Block::Intron(Intron::read(d, i, first_col, last_col)?));
        cursor = last_col + 1;
    }
    if cursor <= n {
        blocks.push(Block::Solid {
            start: cursor,
            end: n,
        });
    }
    let decomposition = RowPairDecomposition {
        row: i,
        start,
        blocks,
    };
    for c in decomposition.introns() {
        assert!(
            is_maximal(d, c),
            "intron at column {} is not maximal",
            c.start
        );
    }
    Ok(decomposition)
}

/// The last elbow before the window is in the bottom row and the first
/// elbow after it is in the top row (when those elbows exist).
pub fn is_maximal(d: &PipeDream, c: &Intron) -> bool {
    let i = c.row;
    let elbow = |r: usize, col: usize| !d.contains(r, col);
    let before = (1..c.start)
        .rev()
        .flat_map(|col| [(col, false), (col, true)])
        .find(|&(col, top)| elbow(if top { i } else { i + 1 }, col));
    let after = (c.end() + 1..=d.n())
        .flat_map(|col| [(col, true), (col, false)])
        .find(|&(col, top)| elbow(if top { i } else { i + 1 }, col));
    before.is_none_or(|(_, top)| !top) && after.is_none_or(|(_, top)| top)
}

/// `tau_i(D)`: mutate every maximal intron of rows `i`, `i + 1`.
pub fn tau(d: &PipeDream, i: usize) -> Result<PipeDream> {
    let decomposition = decompose(d, i)?;
    let mut out = d.clone();
    for c in decomposition.introns() {
        c.mutate().write_into(&mut out);
    }
    Ok(out)
}

/// `l^i_r(D)`: crosses of row `r` in columns at or east of `start_i(D)`.
pub fn ell(d: &PipeDream, i: usize, r: usize) -> Result<usize> {
    if r != i && r != i + 1 {
        return Err(Error::RowOutOfRange { row: r, n: d.n() });
    }
    let start = d.start_row(i)?;
    Ok((start..=d.n()).filter(|&c| d.contains(r, c)).count())
}
