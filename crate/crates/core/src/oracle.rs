//! Brute-force enumeration of reduced pipe dreams, independent of mitosis.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::permutation::Permutation;
use crate::pipedream::PipeDream;

pub const DEFAULT_ORACLE_BOUND: usize = 6;
pub const FULL_GRID_BOUND: usize = 4;

/// Exhaustive search over subsets of the staircase, capped at grid size
/// `max_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Oracle {
    pub max_n: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            max_n: DEFAULT_ORACLE_BOUND,
        }
    }
}

impl Oracle {
    pub fn new(max_n: usize) -> Self {
        Oracle { max_n }
    }

    /// `RP(w)`: every subset of `{(i, j) : i + j <= n}` of size
    /// `length(w)` that wires to `w` and is reduced.
    ///
    /// Boxes are visited in reading order (rows top to bottom, each row right
    /// to left). A cross at `(r, c)` contributes `s_{r+c-1}`, and a branch is
    /// kept only while the accumulated product is a length-additive prefix of
    /// `w`. Survivors are confirmed by tracing the pipes.
    pub fn enumerate_rp(&self, w: &Permutation) -> Result<BTreeSet<PipeDream>> {
        let n = w.n();
        if n > self.max_n {
            return Err(Error::BoundExceeded {
                what: "grid size",
                value: n,
                bound: self.max_n,
            });
        }
        let boxes: Vec<(usize, usize)> = (1..n)
            .flat_map(|r| (1..=n - r).rev().map(move |c| (r, c)))
            .collect();
        // remainder = u^{-1} w for the prefix product u chosen so far; stored
        // as the inverse so that a left descent test is a position compare.
        let remainder_inv = w.inverse().as_slice().to_vec();
        let mut search = Search {
            n,
            boxes: &boxes,
            current: PipeDream::empty(n),
            found: BTreeSet::new(),
        };
        search.descend(0, w.length(), remainder_inv);
        for d in &search.found {
            let wiring = d.wiring()?;
            assert!(
                wiring.perm == *w && wiring.max_crossings() <= 1,
                "reading-word search produced a pipe dream that does not trace to {w}"
            );
        }
        Ok(search.found)
    }

    /// Same as [`Oracle::enumerate_rp`] but over all of `[n] x [n]`, with no
    /// pruning. Each subset is placed in a `2n x 2n` grid (where it lies
    /// above the antidiagonal) and accepted when it is reduced and wires to
    /// `w` followed by fixed points.
    pub fn enumerate_rp_fullgrid(&self, w: &Permutation) -> Result<BTreeSet<PipeDream>> {
        let n = w.n();
        if n > FULL_GRID_BOUND {
            return Err(Error::BoundExceeded {
                what: "grid size",
                value: n,
                bound: FULL_GRID_BOUND,
            });
        }
        let len = w.length();
        let cells = n * n;
        let mut target = w.as_slice().to_vec();
        target.extend(n + 1..=2 * n);
        let target = Permutation::new(target).expect("extension of a permutation");
        let mut found = BTreeSet::new();
        for subset in 0u64..(1u64 << cells) {
            if subset.count_ones() as usize != len {
                continue;
            }
            let crosses = (0..cells)
                .filter(|k| subset & (1 << k) != 0)
                .map(|k| (k / n + 1, k % n + 1));
            let embedded = PipeDream::from_crosses(2 * n, crosses.clone())?;
            if embedded.reduced_permutation()?.as_ref() == Some(&target) {
                found.insert(PipeDream::from_crosses(n, crosses)?);
            }
        }
        Ok(found)
    }
}

struct Search<'a> {
    n: usize,
    boxes: &'a [(usize, usize)],
    current: PipeDream,
    found: BTreeSet<PipeDream>,
}

impl Search<'_> {
    fn descend(&mut self, next: usize, needed: usize, remainder_inv: Vec<usize>) {
        if needed == 0 {
            debug_assert!(remainder_inv.iter().enumerate().all(|(k, &v)| v == k + 1));
            self.found.insert(self.current.clone());
            return;
        }
        if self.boxes.len() - next < needed {
            return;
        }
        let (r, c) = self.boxes[next];
        let a = r + c - 1;
        debug_assert!(a < self.n);
        // s_a is a left descent of the remainder iff a+1 precedes a.
        if remainder_inv[a] < remainder_inv[a - 1] {
            let mut taken = remainder_inv.clone();
            taken.swap(a - 1, a);
            self.current.insert(r, c);
            self.descend(next + 1, needed - 1, taken);
            self.current.remove(r, c);
        }
        self.descend(next + 1, needed, remainder_inv);
    }
}

/// [`Oracle::enumerate_rp`] with the default bound.
pub fn enumerate_rp(w: &Permutation) -> Result<BTreeSet<PipeDream>> {
    Oracle::default().enumerate_rp(w)
}

/// [`Oracle::enumerate_rp_fullgrid`].
pub fn enumerate_rp_fullgrid(w: &Permutation) -> Result<BTreeSet<PipeDream>> {
    Oracle::default().enumerate_rp_fullgrid(w)
}
