use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::mitosis::mitosis;
use crate::oracle::Oracle;
use crate::permutation::{Permutation, Word};
use crate::pipedream::PipeDream;

use super::{node_label, Node};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeNode {
    pub dream: PipeDream,
    /// Index of the parent in the previous layer.
    pub parent: Option<usize>,
    /// Indices of the children in the next layer.
    pub children: Vec<usize>,
}

/// The preimage of a decreasing weak-order path in the mitosis poset.
#[derive(Clone, Debug)]
pub struct PreimageTree {
    pub word: Word,
    /// `path[t]` is `w_0 s_{i_1} ... s_{i_t}`.
    pub path: Vec<Permutation>,
    pub layers: Vec<Vec<TreeNode>>,
}

impl PreimageTree {
    pub fn target(&self) -> &Permutation {
        self.path.last().unwrap()
    }

    /// The last layer, in breadth-first order.
    pub fn final_layer(&self) -> impl Iterator<Item = &PipeDream> {
        self.layers.last().unwrap().iter().map(|t| &t.dream)
    }

    pub fn final_set(&self) -> BTreeSet<PipeDream> {
        self.final_layer().cloned().collect()
    }

    /// Every childless node: the last layer plus the dead nodes above it.
    pub fn leaf_set(&self) -> BTreeSet<PipeDream> {
        let mut leaves = self.final_set();
        leaves.extend(
            self.dead_nodes()
                .into_iter()
                .map(|(t, k)| self.layers[t][k].dream.clone()),
        );
        leaves
    }

    /// `(layer, index)` of every node off the last layer without children.
    pub fn dead_nodes(&self) -> Vec<(usize, usize)> {
        let last = self.layers.len() - 1;
        self.layers[..last]
            .iter()
            .enumerate()
            .flat_map(|(t, layer)| {
                layer
                    .iter()
                    .enumerate()
                    .filter(|(_, node)| node.children.is_empty())
                    .map(move |(k, _)| (t, k))
            })
            .collect()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph preimage {\n  node [shape=box, fontname=monospace];\n");
        for (t, layer) in self.layers.iter().enumerate() {
            let _ = writeln!(
                out,
                "  subgraph \"cluster_{t}\" {{\n    label=\"{}\";",
                self.path[t]
            );
            for (k, node) in layer.iter().enumerate() {
                let label = node_label(&Node {
                    perm: self.path[t].clone(),
                    dream: node.dream.clone(),
                    index: k + 1,
                });
                let dead = t + 1 < self.layers.len() && node.children.is_empty();
                let style = if dead { ", style=dashed" } else { "" };
                let _ = writeln!(out, "    t{t}_{k} [label=\"{label}\"{style}];");
            }
            out.push_str("  }\n");
        }
        for (t, layer) in self.layers.iter().enumerate().skip(1) {
            let label = self.word.letters()[t - 1];
            for (k, node) in layer.iter().enumerate() {
                let p = node.parent.expect("interior layers have parents");
                let _ = writeln!(out, "  t{}_{p} -> t{t}_{k} [label=\"s{label}\"];", t - 1);
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Iterates mitosis along `word` starting from `{D_0}`, keeping the parent
/// of every dream. Offspring stay in their natural order, so each layer is
/// already in breadth-first order.
pub fn preimage_tree(word: &Word, n: usize) -> Result<PreimageTree> {
    let path = word.descending_path(n)?;
    let mut layers = vec![vec![TreeNode {
        dream: PipeDream::d0(n),
        parent: None,
        children: Vec::new(),
    }]];
    for &i in word.letters() {
        let prev = layers.last_mut().unwrap();
        let mut next = Vec::new();
        let mut seen = BTreeSet::new();
        for (k, node) in prev.iter_mut().enumerate() {
            for child in mitosis(&node.dream, i)?.children {
                if !seen.insert(child.clone()) {
                    return Err(Error::SharedOffspring(i));
                }
                node.children.push(next.len());
                next.push(TreeNode {
                    dream: child,
                    parent: Some(k),
                    children: Vec::new(),
                });
            }
        }
        layers.push(next);
    }
    Ok(PreimageTree {
        word: word.clone(),
        path,
        layers,
    })
}

/// Whether the path `word` traces is poptotic, with the default oracle.
pub fn is_poptotic(word: &Word, n: usize) -> Result<bool> {
    is_poptotic_with(word, n, &Oracle::default())
}

/// Every node off the last layer has an offspring. When `n` is within the
/// oracle's reach, the defining characterisation (the leaves of the tree,
/// dead ones included, are exactly `RP(w)`) is computed too and must agree.
/// The last layer is always all of `RP(w)`.
pub fn is_poptotic_with(word: &Word, n: usize, oracle: &Oracle) -> Result<bool> {
    let tree = preimage_tree(word, n)?;
    let poptotic = tree.dead_nodes().is_empty();
    if n <= oracle.max_n {
        let rp = oracle.enumerate_rp(tree.target())?;
        let leaves = tree.leaf_set();
        assert_eq!(
            tree.final_set(),
            rp,
            "last layer of {word} is not RP({})",
            tree.target()
        );
        assert_eq!(
            leaves == rp,
            poptotic,
            "the two poptotic criteria disagree for {word}"
        );
    }
    Ok(poptotic)
}

/// The last layer of the preimage tree in breadth-first order.
pub fn bfs_order(word: &Word, n: usize) -> Result<Vec<PipeDream>> {
    Ok(preimage_tree(word, n)?.final_layer().cloned().collect())
}

/// Reads a reduced word off the complement of a top pipe dream: number the
/// staircase boxes column by column from the right, bottom to top inside a
/// column, and list the rows of the elbows in that order.
pub fn reduced_word_from_top_dream(d: &PipeDream) -> Word {
    let n = d.n();
    let mut letters = Vec::new();
    for col in (1..n).rev() {
        for row in (1..=n - col).rev() {
            if !d.contains(row, col) {
                letters.push(row);
            }
        }
    }
    Word(letters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::enumerate_rp;
    use crate::pipedream::top_pipe_dream;

    fn pd(n: usize, crosses: &[(usize, usize)]) -> PipeDream {
        PipeDream::from_crosses(n, crosses.iter().copied()).unwrap()
    }

    #[test]
    fn right_path_in_s3() {
        let word = Word(vec![1, 2, 1]);
        let tree = preimage_tree(&word, 3).unwrap();
        assert!(tree.layers.iter().all(|l| l.len() == 1));
        assert_eq!(tree.leaf_set(), [PipeDream::empty(3)].into_iter().collect());
        assert!(is_poptotic(&word, 3).unwrap());
        assert!(!tree.to_dot().contains("style=dashed"));
    }

    #[test]
    fn left_path_in_s3() {
        let word = Word(vec![2, 1, 2]);
        let tree = preimage_tree(&word, 3).unwrap();
        assert_eq!(tree.layers[2].len(), 2);
        assert_eq!(tree.dead_nodes(), vec![(2, 0)]);
        assert_eq!(tree.layers[2][0].dream, pd(3, &[(1, 2)]));
        assert_eq!(
            tree.final_set(),
            [PipeDream::empty(3)].into_iter().collect()
        );
        assert_eq!(tree.leaf_set().len(), 2);
        assert!(!is_poptotic(&word, 3).unwrap());
        assert!(tree.to_dot().contains("style=dashed"));
    }

    #[test]
    fn empty_and_bad_words() {
        let tree = preimage_tree(&Word::default(), 4).unwrap();
        assert_eq!(tree.layers.len(), 1);
        assert_eq!(tree.leaf_set(), [PipeDream::d0(4)].into_iter().collect());
        assert!(preimage_tree(&Word(vec![1, 1]), 3).is_err());
        assert!(is_poptotic(&Word(vec![3]), 3).is_err());
    }

    #[test]
    fn bfs_order_for_132() {
        // (2,1) reaches 312 then 132
        let order = bfs_order(&Word(vec![2, 1]), 3).unwrap();
        assert_eq!(order, vec![pd(3, &[(1, 2)]), pd(3, &[(2, 1)])]);
        let single = bfs_order(&Word(vec![1, 2]), 3).unwrap();
        assert_eq!(single.len(), 1);
    }

    #[test]
    fn lex_first_paths_are_poptotic_and_cover_rp() {
        for n in 1..=5 {
            for w in Permutation::all(n) {
                let word = w.long_times().lex_first_reduced_word();
                assert!(is_poptotic(&word, n).unwrap(), "w = {w}");
                assert_eq!(
                    bfs_order(&word, n).unwrap().len(),
                    enumerate_rp(&w).unwrap().len()
                );
            }
        }
    }

    #[test]
    fn every_word_ends_on_all_of_rp() {
        let mut apoptotic = 0;
        for w in Permutation::all(4) {
            let rp = enumerate_rp(&w).unwrap();
            for word in w.long_times().all_reduced_words(6).unwrap() {
                let tree = preimage_tree(&word, 4).unwrap();
                assert_eq!(tree.final_set(), rp);
                for (t, layer) in tree.layers.iter().enumerate() {
                    let fiber = enumerate_rp(&tree.path[t]).unwrap();
                    assert_eq!(
                        layer
                            .iter()
                            .map(|x| x.dream.clone())
                            .collect::<BTreeSet<_>>(),
                        fiber
                    );
                }
                let poptotic = is_poptotic(&word, 4).unwrap();
                assert_eq!(tree.leaf_set() == rp, poptotic);
                apoptotic += usize::from(!poptotic);
            }
        }
        assert!(apoptotic > 0);
    }

    #[test]
    fn lex_first_path_to_identity_stays_dominant() {
        for n in 1..=6 {
            let word = Permutation::long(n).lex_first_reduced_word();
            let tree = preimage_tree(&word, n).unwrap();
            for (w, layer) in tree.path.iter().zip(&tree.layers) {
                assert!(w.is_dominant(), "{w}");
                assert_eq!(layer.len(), 1);
            }
        }
    }

    #[test]
    fn top_dreams_spell_lex_first_words() {
        for n in 1..=5 {
            for w in Permutation::all(n) {
                let top = top_pipe_dream(&w).unwrap();
                assert_eq!(
                    reduced_word_from_top_dream(&top),
                    w.long_times().lex_first_reduced_word(),
                    "w = {w}"
                );
            }
        }
        assert_eq!(
            reduced_word_from_top_dream(&PipeDream::empty(4)),
            Word(vec![1, 2, 1, 3, 2, 1])
        );
    }
}
