//! The mitosis operator and the generation of `RP(w)` by iterating it down
//! a reduced word for `w_0 w`.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::permutation::{Permutation, Word};
use crate::pipedream::PipeDream;

/// The offspring of one parent under `mitosis_row`, ordered by increasing
/// `p` in `J_row(parent)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OffspringList {
    pub parent: PipeDream,
    pub row: usize,
    pub children: Vec<PipeDream>,
}

impl OffspringList {
    pub fn is_empty(&self) -> bool {
        self.children.is_empty()
    }
}

/// `mitosis_i(D)`. For each `p` in `J_i(D)`, the child `D_p` deletes the
/// cross at `(i, p)` and drops every cross `(i, q)` with `q` in `J_i(D)`,
/// `q < p`, to `(i + 1, q)`.
pub fn mitosis(d: &PipeDream, i: usize) -> Result<OffspringList> {
    let j = d.j_mask(i)?;
    let top = d.row_mask(i);
    let bottom = d.row_mask(i + 1);
    let mut children = Vec::with_capacity(j.count_ones() as usize);
    let mut earlier = 0u64;
    let mut rest = j;
    while rest != 0 {
        let p = rest & rest.wrapping_neg();
        rest &= rest - 1;
        let mut child = d.clone();
        child.set_row_mask(i, top & !(earlier | p));
        child.set_row_mask(i + 1, bottom | earlier);
        children.push(child);
        earlier |= p;
    }
    Ok(OffspringList {
        parent: d.clone(),
        row: i,
        children,
    })
}

/// The offspring again, built the sequential way: remove the first
/// removable cross in row `i`, then keep applying the leftmost chute move
/// between rows `i` and `i + 1` while its northeast corner lies west of
/// `start_i(D)`. Every intermediate dream is one child.
pub fn mitosis_by_chutes(d: &PipeDream, i: usize) -> Result<OffspringList> {
    let start = d.start_row(i)?;
    let mut children = Vec::new();
    if let Some(j) = d.first_removable_cross(i)? {
        let mut current = d.clone();
        current.remove(i, j);
        loop {
            let next = current
                .chutable_rectangles()
                .into_iter()
                .filter(|r| r.row == i && r.right < start)
                .min_by_key(|r| (r.left, r.right));
            children.push(current.clone());
            match next {
                Some(rect) => current = current.apply_chute(rect)?,
                None => break,
            }
        }
    }
    Ok(OffspringList {
        parent: d.clone(),
        row: i,
        children,
    })
}

/// `mitosis_i(P)`, the union of the offspring of every member.
///
/// When every parent is a reduced pipe dream for one permutation the
/// offspring sets must be pairwise disjoint; an overlap in that situation
/// is reported as [`Error::SharedOffspring`].
pub fn mitosis_set(parents: &BTreeSet<PipeDream>, i: usize) -> Result<BTreeSet<PipeDream>> {
    let mut sizes = parents.iter().map(PipeDream::n);
    if let Some(n) = sizes.next() {
        if let Some(m) = sizes.find(|&m| m != n) {
            return Err(Error::MixedGridSizes(n, m));
        }
    }
    let lists: Vec<OffspringList> = parents
        .par_iter()
        .map(|d| mitosis(d, i))
        .collect::<Result<_>>()?;
    let total: usize = lists.iter().map(|l| l.children.len()).sum();
    let union: BTreeSet<PipeDream> = lists.into_iter().flat_map(|l| l.children).collect();
    if union.len() != total && single_fiber(parents)? {
        return Err(Error::SharedOffspring(i));
    }
    Ok(union)
}

fn single_fiber(parents: &BTreeSet<PipeDream>) -> Result<bool> {
    let mut perm: Option<Permutation> = None;
    for d in parents {
        if d.first_outside_staircase().is_some() {
            return Ok(false);
        }
        match (d.reduced_permutation()?, &perm) {
            (None, _) => return Ok(false),
            (Some(w), None) => perm = Some(w),
            (Some(w), Some(v)) if &w != v => return Ok(false),
            _ => {}
        }
    }
    Ok(true)
}

/// The sets visited by applying `mitosis_{i_1}`, then `mitosis_{i_2}`, ...
/// starting from `start`; the first entry is `start` itself.
pub fn mitosis_along(word: &Word, start: &BTreeSet<PipeDream>) -> Result<Vec<BTreeSet<PipeDream>>> {
    let mut trajectory = vec![start.clone()];
    for &i in word.letters() {
        let next = mitosis_set(trajectory.last().unwrap(), i)?;
        trajectory.push(next);
    }
    Ok(trajectory)
}

/// `RP(w)` generated from `{D_0}` along the lex-first reduced word for
/// `w_0 w`.
pub fn rp_by_mitosis(w: &Permutation) -> Result<BTreeSet<PipeDream>> {
    rp_by_mitosis_with_word(w, &w.long_times().lex_first_reduced_word())
}

/// `RP(w)` generated along a caller-chosen reduced word for `w_0 w`.
pub fn rp_by_mitosis_with_word(w: &Permutation, word: &Word) -> Result<BTreeSet<PipeDream>> {
    if !word.is_reduced_for(&w.long_times()) {
        return Err(Error::NonReducedWord(word.to_string()));
    }
    let start: BTreeSet<PipeDream> = [PipeDream::d0(w.n())].into_iter().collect();
    Ok(mitosis_along(word, &start)?.pop().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{sample_dream, sample_offspring};
    use crate::oracle::enumerate_rp;

    fn pd(n: usize, crosses: &[(usize, usize)]) -> PipeDream {
        PipeDream::from_crosses(n, crosses.iter().copied()).unwrap()
    }

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn set(items: Vec<PipeDream>) -> BTreeSet<PipeDream> {
        items.into_iter().collect()
    }

    #[test]
    fn sample_dream_offspring_in_order() {
        let list = mitosis(&sample_dream(), 3).unwrap();
        assert_eq!(list.children, sample_offspring());
        assert_eq!(mitosis_by_chutes(&sample_dream(), 3).unwrap(), list);
    }

    #[test]
    fn small_offspring() {
        let d0 = PipeDream::d0(3);
        assert_eq!(
            mitosis(&d0, 2).unwrap().children,
            vec![pd(3, &[(1, 1), (1, 2)])]
        );
        assert!(mitosis(&pd(3, &[(1, 2)]), 2).unwrap().is_empty());
        assert!(mitosis(&d0, 3).is_err());
    }

    #[test]
    fn offspring_shape() {
        for w in Permutation::all(4) {
            for d in enumerate_rp(&w).unwrap() {
                for i in 1..4 {
                    let list = mitosis(&d, i).unwrap();
                    assert_eq!(list.children.len(), d.j_columns(i).unwrap().len());
                    for child in &list.children {
                        assert_eq!(child.len() + 1, d.len());
                        for r in (1..=4).filter(|&r| r != i && r != i + 1) {
                            assert_eq!(child.row_mask(r), d.row_mask(r));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn set_level() {
        let d0 = set(vec![PipeDream::d0(3)]);
        assert_eq!(
            mitosis_set(&d0, 1).unwrap(),
            set(vec![pd(3, &[(1, 1), (2, 1)])])
        );
        assert!(mitosis_set(&BTreeSet::new(), 2).unwrap().is_empty());
        let rp132 = set(vec![pd(3, &[(1, 2)]), pd(3, &[(2, 1)])]);
        assert_eq!(
            mitosis_set(&rp132, 2).unwrap(),
            set(vec![PipeDream::empty(3)])
        );
        let mixed = set(vec![PipeDream::d0(3), PipeDream::d0(4)]);
        assert!(matches!(
            mitosis_set(&mixed, 1),
            Err(Error::MixedGridSizes(..))
        ));
    }

    #[test]
    fn generation_of_rp() {
        assert_eq!(
            rp_by_mitosis(&Permutation::long(4)).unwrap(),
            set(vec![PipeDream::d0(4)])
        );
        assert_eq!(
            rp_by_mitosis(&perm("132")).unwrap(),
            set(vec![pd(3, &[(1, 2)]), pd(3, &[(2, 1)])])
        );
        let w = perm("2143");
        assert_eq!(rp_by_mitosis(&w).unwrap(), enumerate_rp(&w).unwrap());
        assert!(rp_by_mitosis_with_word(&w, &Word(vec![1])).is_err());
    }

    #[test]
    fn trajectories() {
        let start = set(vec![PipeDream::d0(3)]);
        assert_eq!(
            mitosis_along(&Word::default(), &start).unwrap(),
            vec![start.clone()]
        );
        for word in [Word(vec![2, 1, 2]), Word(vec![1, 2, 1])] {
            let t = mitosis_along(&word, &start).unwrap();
            assert_eq!(t.len(), 4);
            assert_eq!(t.last().unwrap(), &set(vec![PipeDream::empty(3)]));
        }
        let left = mitosis_along(&Word(vec![2, 1, 2]), &start).unwrap();
        assert_eq!(left[2].len(), 2);
    }
}
