use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::oracle::Oracle;
use crate::permutation::Permutation;
use crate::pipedream::PipeDream;

/// Largest grid whose boxes fit in a `u128` vertex mask.
pub const MAX_COMPLEX_GRID: usize = 11;

/// A simplicial complex on the boxes of the `n x n` grid, given by its
/// facets. Box `(r, c)` is vertex `(r - 1) n + (c - 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    pub n: usize,
    pub facets: Vec<u128>,
}

impl SimplicialComplex {
    pub fn new(n: usize, facets: Vec<u128>) -> Result<Self> {
        if n > MAX_COMPLEX_GRID {
            return Err(Error::GridTooLarge {
                n,
                max: MAX_COMPLEX_GRID,
            });
        }
        Ok(SimplicialComplex { n, facets })
    }

    pub fn vertex(&self, row: usize, col: usize) -> u32 {
        ((row - 1) * self.n + (col - 1)) as u32
    }

    pub fn is_pure(&self) -> bool {
        let mut sizes = self.facets.iter().map(|f| f.count_ones());
        match sizes.next() {
            Some(first) => sizes.all(|s| s == first),
            None => true,
        }
    }

    /// The complement of `d` in the grid.
    pub fn complement_of(&self, d: &PipeDream) -> u128 {
        let all = (1u128 << (self.n * self.n)) - 1;
        d.crosses()
            .into_iter()
            .fold(all, |acc, (r, c)| acc & !(1u128 << self.vertex(r, c)))
    }
}

/// The subword complex whose facets are the complements of the dreams in
/// `RP(w)`, listed in the oracle's order.
pub fn subword_complex(w: &Permutation, oracle: &Oracle) -> Result<SimplicialComplex> {
    let rp = oracle.enumerate_rp(w)?;
    complex_from_dreams(w.n(), rp.iter())
}

/// Facets in the order the dreams are given.
pub fn complex_from_dreams<'a>(
    n: usize,
    dreams: impl IntoIterator<Item = &'a PipeDream>,
) -> Result<SimplicialComplex> {
    let mut complex = SimplicialComplex::new(n, Vec::new())?;
    complex.facets = dreams
        .into_iter()
        .map(|d| complex.complement_of(d))
        .collect();
    if !complex.is_pure() {
        return Err(Error::ImpureComplex);
    }
    Ok(complex)
}

/// Whether listing the facets as `order` is a shelling.
///
/// For the `j`-th facet `F` let `R` collect the vertices `v` with
/// `F \ {v}` inside an earlier facet. The intersection of `F` with the
/// earlier facets is a union of codimension-one faces exactly when no
/// earlier facet contains all of `R`.
pub fn is_shelling(complex: &SimplicialComplex, order: &[usize]) -> Result<bool> {
    if !complex.is_pure() {
        return Err(Error::ImpureComplex);
    }
    let mut seen = vec![false; complex.facets.len()];
    for &k in order {
        if k >= seen.len() || std::mem::replace(&mut seen[k], true) {
            return Err(Error::InvalidFacetOrder(k));
        }
    }
    if order.len() != seen.len() {
        return Err(Error::InvalidFacetOrder(order.len()));
    }
    let facets: Vec<u128> = order.iter().map(|&k| complex.facets[k]).collect();
    for j in 1..facets.len() {
        let f = facets[j];
        let earlier = &facets[..j];
        let mut restriction = 0u128;
        let mut rest = f;
        while rest != 0 {
            let v = rest & rest.wrapping_neg();
            rest &= rest - 1;
            if earlier.iter().any(|&g| (f & !v) & !g == 0) {
                restriction |= v;
            }
        }
        if earlier.iter().any(|&g| restriction & !g == 0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Pairs `(a, b)` of positions in `order` with `a > b` where the dream at
/// `b` is reached from the one at `a` by a single chute move. An empty
/// result means `order` is a linear extension of the chute order.
pub fn chute_order_violations(order: &[PipeDream]) -> Result<Vec<(usize, usize)>> {
    let pos: HashMap<&PipeDream, usize> = order.iter().enumerate().map(|(k, d)| (d, k)).collect();
    let mut bad = Vec::new();
    for (a, d) in order.iter().enumerate() {
        for rect in d.chutable_rectangles() {
            let e = d.apply_chute(rect)?;
            if let Some(&b) = pos.get(&e) {
                if b < a {
                    bad.push((a, b));
                }
            }
        }
    }
    Ok(bad)
}
