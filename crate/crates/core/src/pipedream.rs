//! Pipe dreams: subsets of the `n x n` grid read as tilings by crosses and
//! elbows.
//!
//! Coordinates are 1-based `(row, col)`. Row `r` is stored as a bitmask with
//! bit `c - 1` set when `(r, c)` is a cross, so equality and hashing agree
//! with the row-major set of crosses.
//!
//! Tile routing: a cross carries a pipe straight through (west to east,
//! south to north); an elbow turns it (west to north, south to east). Pipes
//! enter along the west edge of each row and leave along the north edge of
//! the columns.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::Oracle;
use crate::permutation::Permutation;

pub const MAX_GRID: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "PipeDreamJson", into = "PipeDreamJson")]
pub struct PipeDream {
    n: usize,
    rows: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct PipeDreamJson {
    n: usize,
    crosses: Vec<[usize; 2]>,
}

impl TryFrom<PipeDreamJson> for PipeDream {
    type Error = Error;

    fn try_from(json: PipeDreamJson) -> Result<Self> {
        PipeDream::from_crosses(json.n, json.crosses.iter().map(|&[r, c]| (r, c)))
    }
}

impl From<PipeDream> for PipeDreamJson {
    fn from(d: PipeDream) -> Self {
        PipeDreamJson {
            n: d.n,
            crosses: d.crosses().into_iter().map(|(r, c)| [r, c]).collect(),
        }
    }
}

/// A chutable rectangle in rows `row`, `row + 1` spanning columns
/// `left..=right`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rect {
    pub row: usize,
    pub left: usize,
    pub right: usize,
}

/// Exit permutation of a pipe dream plus how often each pair of pipes cross.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wiring {
    pub perm: Permutation,
    n: usize,
    // crossings[(a-1)*n + (b-1)] for pipes a < b, named by their entry row
    crossings: Vec<u32>,
}

impl Wiring {
    /// How many times the pipes entering rows `a` and `b` cross.
    pub fn crossings(&self, a: usize, b: usize) -> u32 {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        self.crossings[(a - 1) * self.n + (b - 1)]
    }

    pub fn max_crossings(&self) -> u32 {
        self.crossings.iter().copied().max().unwrap_or(0)
    }
}

#[inline]
fn bit(col: usize) -> u64 {
    1u64 << (col - 1)
}

/// Mask of columns `lo..=hi` (empty when `lo > hi`).
#[inline]
fn span(lo: usize, hi: usize) -> u64 {
    if lo > hi {
        return 0;
    }
    let upper = if hi >= 64 { u64::MAX } else { (1u64 << hi) - 1 };
    upper & !((1u64 << (lo - 1)) - 1)
}

impl PipeDream {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_GRID, "grid size {n} exceeds {MAX_GRID}");
        PipeDream {
            n,
            rows: vec![0; n],
        }
    }

    /// The staircase `D_0`: crosses exactly at `i + j <= n`.
    pub fn d0(n: usize) -> Self {
        let mut d = PipeDream::empty(n);
        for i in 1..n {
            d.rows[i - 1] = span(1, n - i);
        }
        d
    }

    pub fn from_crosses<I>(n: usize, crosses: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n > MAX_GRID {
            return Err(Error::GridTooLarge { n, max: MAX_GRID });
        }
        let mut d = PipeDream::empty(n);
        for (row, col) in crosses {
            if row == 0 || col == 0 || row > n || col > n {
                return Err(Error::OutOfGrid { row, col, n });
            }
            d.rows[row - 1] |= bit(col);
        }
        Ok(d)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn contains(&self, row: usize, col: usize) -> bool {
        row >= 1 && row <= self.n && col >= 1 && col <= self.n && self.rows[row - 1] & bit(col) != 0
    }

    pub fn insert(&mut self, row: usize, col: usize) {
        self.rows[row - 1] |= bit(col);
    }

    pub fn remove(&mut self, row: usize, col: usize) {
        self.rows[row - 1] &= !bit(col);
    }

    /// Bitmask of row `row` (bit `c - 1` for column `c`).
    pub fn row_mask(&self, row: usize) -> u64 {
        self.rows[row - 1]
    }

    pub(crate) fn set_row_mask(&mut self, row: usize, mask: u64) {
        self.rows[row - 1] = mask;
    }

    /// Crosses in row-major order.
    pub fn crosses(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.len());
        for (r, &mask) in self.rows.iter().enumerate() {
            for c in 1..=self.n {
                if mask & bit(c) != 0 {
                    out.push((r + 1, c));
                }
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|m| m.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|&m| m == 0)
    }

    pub fn row_count(&self, row: usize) -> usize {
        self.rows[row - 1].count_ones() as usize
    }

    /// The first cross at or below the antidiagonal, if any.
    pub fn first_outside_staircase(&self) -> Option<(usize, usize)> {
        self.crosses().into_iter().find(|&(r, c)| r + c > self.n)
    }

    /// Traces every pipe. Crosses must lie strictly above the antidiagonal.
    pub fn wiring(&self) -> Result<Wiring> {
        if let Some((row, col)) = self.first_outside_staircase() {
            return Err(Error::OutsideStaircase {
                row,
                col,
                n: self.n,
            });
        }
        let n = self.n;
        let mut crossings = vec![0u32; n * n];
        // pipe occupying each cross tile the first time it is visited
        let mut first_visitor = vec![0usize; n * n];
        let mut exits = vec![0usize; n];
        for pipe in 1..=n {
            let (mut r, mut c) = (pipe, 1usize);
            let mut from_west = true;
            // Boxes with r + c = n + 1 are elbows, so a row pipe never
            // leaves the staircase and always exits through the top row.
            loop {
                let cross = self.contains(r, c);
                if cross {
                    let slot = (r - 1) * n + (c - 1);
                    let other = first_visitor[slot];
                    if other == 0 {
                        first_visitor[slot] = pipe;
                    } else {
                        crossings[(other - 1) * n + (pipe - 1)] += 1;
                    }
                }
                let go_north = cross != from_west;
                if go_north {
                    if r == 1 {
                        exits[pipe - 1] = c;
                        break;
                    }
                    r -= 1;
                    from_west = false;
                } else {
                    c += 1;
                    from_west = true;
                }
            }
        }
        let perm = Permutation::new(exits).expect("pipes exit through distinct columns");
        Ok(Wiring { perm, n, crossings })
    }

    /// Each pair of pipes crosses at most once. Checked both by crossing
    /// multiplicities and by `|D| = length(w)`; the two must agree.
    pub fn is_reduced(&self) -> Result<bool> {
        let wiring = self.wiring()?;
        let by_pairs = wiring.max_crossings() <= 1;
        let by_count = self.len() == wiring.perm.length();
        assert_eq!(
            by_pairs, by_count,
            "reducedness criteria disagree on {self:?}"
        );
        Ok(by_pairs)
    }

    /// The permutation of a reduced pipe dream, or `None` if not reduced.
    pub fn reduced_permutation(&self) -> Result<Option<Permutation>> {
        let wiring = self.wiring()?;
        Ok((wiring.max_crossings() <= 1).then_some(wiring.perm))
    }

    fn check_row(&self, row: usize, max: usize) -> Result<()> {
        if row == 0 || row > max {
            Err(Error::RowOutOfRange { row, n: self.n })
        } else {
            Ok(())
        }
    }

    /// `start_i(D)`: column of the leftmost elbow in row `i`, or `n + 1`.
    pub fn start_row(&self, i: usize) -> Result<usize> {
        self.check_row(i, self.n)?;
        let elbows = !self.rows[i - 1] & span(1, self.n);
        Ok(if elbows == 0 {
            self.n + 1
        } else {
            elbows.trailing_zeros() as usize + 1
        })
    }

    /// Bitmask form of `J_i(D)`.
    pub(crate) fn j_mask(&self, i: usize) -> Result<u64> {
        self.check_row(i, self.n.saturating_sub(1))?;
        let start = self.start_row(i)?;
        Ok(span(1, start - 1) & !self.rows[i])
    }

    /// `J_i(D)`: columns strictly left of `start_i(D)` whose box in row
    /// `i + 1` is an elbow, increasing.
    pub fn j_columns(&self, i: usize) -> Result<Vec<usize>> {
        let mask = self.j_mask(i)?;
        Ok((1..=self.n).filter(|&c| mask & bit(c) != 0).collect())
    }

    /// Smallest `j` with `(i+1, j)` an elbow and `(i, p)` a cross for all
    /// `p <= j`. At such a column every `(i+1, p)`, `p < j`, is a cross as
    /// well, so removing `(i, j)` from a reduced `D` for `w` leaves a reduced
    /// pipe dream for `w s_i`.
    pub fn first_removable_cross(&self, i: usize) -> Result<Option<usize>> {
        self.check_row(i, self.n.saturating_sub(1))?;
        for j in 1..=self.n {
            if !self.contains(i, j) {
                return Ok(None);
            }
            if !self.contains(i + 1, j) {
                return Ok(Some(j));
            }
        }
        Ok(None)
    }

    fn is_chutable(&self, rect: Rect) -> bool {
        let Rect {
            row: i,
            left: a,
            right: b,
        } = rect;
        if i == 0 || i >= self.n || a == 0 || b > self.n || b < a + 1 {
            return false;
        }
        let top = self.rows[i - 1];
        let bottom = self.rows[i];
        top & bit(a) == 0
            && bottom & bit(a) == 0
            && bottom & bit(b) == 0
            && top & span(a + 1, b) == span(a + 1, b)
            && bottom & span(a + 1, b - 1) == span(a + 1, b - 1)
    }

    fn is_inverse_chutable(&self, rect: Rect) -> bool {
        let Rect {
            row: i,
            left: a,
            right: b,
        } = rect;
        if i == 0 || i >= self.n || a == 0 || b > self.n || b < a + 1 {
            return false;
        }
        let top = self.rows[i - 1];
        let bottom = self.rows[i];
        top & bit(a) == 0
            && top & bit(b) == 0
            && bottom & bit(b) == 0
            && top & span(a + 1, b - 1) == span(a + 1, b - 1)
            && bottom & span(a, b - 1) == span(a, b - 1)
    }

    /// All `2 x k` rectangles (`k >= 2`) whose only elbows are the
    /// northwest, southwest and southeast corners.
    pub fn chutable_rectangles(&self) -> Vec<Rect> {
        self.rects_where(|d, r| d.is_chutable(r))
    }

    /// Rectangles whose only elbows are the northwest, northeast and
    /// southeast corners; these are the results of chute moves.
    pub fn inverse_chutable_rectangles(&self) -> Vec<Rect> {
        self.rects_where(|d, r| d.is_inverse_chutable(r))
    }

    fn rects_where(&self, pred: impl Fn(&Self, Rect) -> bool) -> Vec<Rect> {
        let mut out = Vec::new();
        for row in 1..self.n {
            for left in 1..self.n {
                for right in left + 1..=self.n {
                    let rect = Rect { row, left, right };
                    if pred(self, rect) {
                        out.push(rect);
                    }
                }
            }
        }
        out
    }

    /// Moves the northeast cross of a chutable rectangle to its southwest
    /// corner.
    pub fn apply_chute(&self, rect: Rect) -> Result<PipeDream> {
        if !self.is_chutable(rect) {
            return Err(Error::NotChutable {
                row: rect.row,
                left: rect.left,
                right: rect.right,
            });
        }
        let mut out = self.clone();
        out.remove(rect.row, rect.right);
        out.insert(rect.row + 1, rect.left);
        Ok(out)
    }

    /// Undoes a chute: moves the southwest cross back to the northeast
    /// corner.
    pub fn apply_inverse_chute(&self, rect: Rect) -> Result<PipeDream> {
        if !self.is_inverse_chutable(rect) {
            return Err(Error::NotChutable {
                row: rect.row,
                left: rect.left,
                right: rect.right,
            });
        }
        let mut out = self.clone();
        out.remove(rect.row + 1, rect.left);
        out.insert(rect.row, rect.right);
        Ok(out)
    }

    /// No elbow sits directly above a cross in any column.
    pub fn is_top(&self) -> bool {
        (1..self.n).all(|r| self.rows[r] & !self.rows[r - 1] == 0)
    }

    /// `'+'` for crosses and `'.'` for elbows, one line per row.
    pub fn render_ascii(&self) -> String {
        let mut s = String::with_capacity(self.n * (self.n + 1));
        for r in 1..=self.n {
            for c in 1..=self.n {
                s.push(if self.contains(r, c) { '+' } else { '.' });
            }
            s.push('\n');
        }
        s
    }

    /// Parses `"r,c;r,c;..."`.
    pub fn parse_cross_list(n: usize, text: &str) -> Result<PipeDream> {
        let mut crosses = Vec::new();
        for item in text.split(';').map(str::trim).filter(|t| !t.is_empty()) {
            let (r, c) = item
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("expected row,col but got {item:?}")))?;
            let parse = |t: &str| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad coordinate {t:?}")))
            };
            crosses.push((parse(r)?, parse(c)?));
        }
        PipeDream::from_crosses(n, crosses)
    }
}

impl fmt::Display for PipeDream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_ascii())
    }
}

/// The unique reduced pipe dream for `w` with no elbow directly above a
/// cross, found by filtering the brute-force enumeration.
pub fn top_pipe_dream(w: &Permutation) -> Result<PipeDream> {
    top_pipe_dream_with(w, &Oracle::default())
}

pub fn top_pipe_dream_with(w: &Permutation, oracle: &Oracle) -> Result<PipeDream> {
    let mut tops = oracle
        .enumerate_rp(w)?
        .into_iter()
        .filter(PipeDream::is_top);
    let top = tops.next().expect("every permutation has a top pipe dream");
    assert!(tops.next().is_none(), "top pipe dream of {w} is not unique");
    Ok(top)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::sample_dream;

    fn pd(n: usize, crosses: &[(usize, usize)]) -> PipeDream {
        PipeDream::from_crosses(n, crosses.iter().copied()).unwrap()
    }

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn wiring_of_staircase_and_figure() {
        let w = PipeDream::d0(3).wiring().unwrap();
        assert_eq!(w.perm, perm("321"));
        for a in 1..=3 {
            for b in a + 1..=3 {
                assert_eq!(w.crossings(a, b), 1);
            }
        }
        assert_eq!(sample_dream().wiring().unwrap().perm, perm("13865742"));
        assert_eq!(sample_dream().len(), 14);
        assert_eq!(PipeDream::empty(3).wiring().unwrap().perm, perm("123"));
    }

    #[test]
    fn wiring_rejects_crosses_below_antidiagonal() {
        let d = pd(3, &[(1, 2), (2, 2)]);
        assert!(matches!(
            d.wiring(),
            Err(Error::OutsideStaircase {
                row: 2,
                col: 2,
                n: 3
            })
        ));
    }

    #[test]
    fn reducedness() {
        for n in 1..7 {
            assert!(PipeDream::d0(n).is_reduced().unwrap());
        }
        assert!(pd(3, &[(1, 1), (2, 1)]).is_reduced().unwrap());
        // pipes 2 and 3 cross at (2,1) and again at (1,2)
        let doubled = pd(3, &[(1, 2), (2, 1)]);
        let w = doubled.wiring().unwrap();
        assert_eq!(w.crossings(2, 3), 2);
        assert_eq!(w.perm, perm("123"));
        assert!(!doubled.is_reduced().unwrap());
    }

    #[test]
    fn staircase() {
        assert_eq!(PipeDream::d0(3), pd(3, &[(1, 1), (1, 2), (2, 1)]));
        assert!(PipeDream::d0(1).is_empty());
        let d8 = PipeDream::d0(8);
        assert_eq!(d8.len(), 28);
        assert_eq!(d8.wiring().unwrap().perm, Permutation::long(8));
    }

    #[test]
    fn start_and_j() {
        assert_eq!(sample_dream().start_row(3).unwrap(), 5);
        assert_eq!(PipeDream::empty(4).start_row(2).unwrap(), 1);
        assert_eq!(pd(2, &[(1, 1), (1, 2)]).start_row(1).unwrap(), 3);
        assert_eq!(sample_dream().j_columns(3).unwrap(), vec![1, 2, 4]);
        assert!(PipeDream::empty(4).j_columns(2).unwrap().is_empty());
        assert_eq!(PipeDream::d0(3).j_columns(2).unwrap(), vec![1]);
        assert!(PipeDream::d0(3).j_columns(3).is_err());
        assert!(PipeDream::d0(3).start_row(4).is_err());
    }

    /// Box-by-box check of the chutable-rectangle definition.
    fn chutable_by_definition(d: &PipeDream, r: Rect) -> bool {
        let (i, a, b) = (r.row, r.left, r.right);
        for c in a..=b {
            for row in [i, i + 1] {
                let corner_elbow = (row == i && c == a) || (row == i + 1 && (c == a || c == b));
                if d.contains(row, c) == corner_elbow {
                    return false;
                }
            }
        }
        true
    }

    fn chutable_scan(d: &PipeDream) -> Vec<Rect> {
        let mut out = Vec::new();
        for row in 1..d.n() {
            for left in 1..=d.n() {
                for right in left + 1..=d.n() {
                    let r = Rect { row, left, right };
                    if chutable_by_definition(d, r) {
                        out.push(r);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn chutable_rectangles_match_definition_scan() {
        assert!(PipeDream::d0(3).chutable_rectangles().is_empty());
        assert_eq!(chutable_scan(&PipeDream::d0(3)), vec![]);
        assert_eq!(
            pd(3, &[(1, 2)]).chutable_rectangles(),
            vec![Rect {
                row: 1,
                left: 1,
                right: 2
            }]
        );
        assert!(PipeDream::empty(3).chutable_rectangles().is_empty());
        for d in [
            sample_dream(),
            PipeDream::d0(5),
            pd(4, &[(1, 2), (1, 3), (2, 2)]),
        ] {
            assert_eq!(d.chutable_rectangles(), chutable_scan(&d));
        }
    }

    #[test]
    fn chute_moves() {
        let d = pd(3, &[(1, 2)]);
        let rect = Rect {
            row: 1,
            left: 1,
            right: 2,
        };
        let chuted = d.apply_chute(rect).unwrap();
        assert_eq!(chuted, pd(3, &[(2, 1)]));
        assert_eq!(chuted.inverse_chutable_rectangles(), vec![rect]);
        assert_eq!(chuted.apply_inverse_chute(rect).unwrap(), d);
        assert!(matches!(
            sample_dream().apply_chute(Rect {
                row: 3,
                left: 3,
                right: 4
            }),
            Err(Error::NotChutable {
                row: 3,
                left: 3,
                right: 4
            })
        ));
    }

    #[test]
    fn top_dreams() {
        assert_eq!(
            top_pipe_dream(&Permutation::long(4)).unwrap(),
            PipeDream::d0(4)
        );
        assert!(top_pipe_dream(&Permutation::identity(4))
            .unwrap()
            .is_empty());
        let mut expected = Vec::new();
        for r in 1..=6 {
            expected.push((r, 2));
        }
        for r in 1..=4 {
            expected.push((r, 4));
        }
        expected.extend([(1, 5), (2, 5), (1, 7)]);
        let oracle = Oracle::new(8);
        assert_eq!(
            top_pipe_dream_with(&perm("13685742"), &oracle).unwrap(),
            pd(8, &expected)
        );
    }

    #[test]
    fn ascii() {
        assert_eq!(PipeDream::d0(3).render_ascii(), "++.\n+..\n...\n");
        assert_eq!(PipeDream::empty(2).render_ascii(), "..\n..\n");
        let text = sample_dream().render_ascii();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 8);
        let mut from_text = Vec::new();
        for (r, line) in lines.iter().enumerate() {
            for (c, ch) in line.chars().enumerate() {
                if ch == '+' {
                    from_text.push((r + 1, c + 1));
                }
            }
        }
        assert_eq!(from_text, sample_dream().crosses());
    }

    #[test]
    fn json_form() {
        let json = serde_json::to_string(&pd(3, &[(2, 1), (1, 2)])).unwrap();
        assert_eq!(json, r#"{"n":3,"crosses":[[1,2],[2,1]]}"#);
        let back: PipeDream = serde_json::from_str(&json).unwrap();
        assert_eq!(back, pd(3, &[(1, 2), (2, 1)]));
        assert!(serde_json::from_str::<PipeDream>(r#"{"n":2,"crosses":[[3,1]]}"#).is_err());
    }

    #[test]
    fn cross_list_parsing() {
        let d = PipeDream::parse_cross_list(3, "1,2; 2,1").unwrap();
        assert_eq!(d, pd(3, &[(1, 2), (2, 1)]));
        assert!(PipeDream::parse_cross_list(3, "1;2").is_err());
        assert!(PipeDream::parse_cross_list(3, "4,1").is_err());
    }
}
