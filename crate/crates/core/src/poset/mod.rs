//! The mitosis poset on all reduced pipe dreams of `S_n`, preimage trees of
//! weak-order paths, and subword complexes.

mod shelling;
mod tree;

pub use shelling::{chute_order_violations, is_shelling, subword_complex, SimplicialComplex};
pub use tree::{
    bfs_order, is_poptotic, is_poptotic_with, preimage_tree, reduced_word_from_top_dream,
    PreimageTree, TreeNode,
};

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mitosis::mitosis;
use crate::permutation::Permutation;
use crate::pipedream::PipeDream;

pub const DEFAULT_POSET_BOUND: usize = 6;

pub type NodeId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub perm: Permutation,
    pub dream: PipeDream,
    /// 1-based position inside its fiber.
    pub index: usize,
}

/// `child` is an offspring of `parent` under `mitosis_label`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Edge {
    pub parent: NodeId,
    pub child: NodeId,
    pub label: usize,
}

#[derive(Clone, Debug)]
pub struct MitosisPoset {
    n: usize,
    nodes: Vec<Node>,
    edges: Vec<Edge>,
    fibers: BTreeMap<Permutation, Vec<NodeId>>,
    ids: HashMap<PipeDream, NodeId>,
}

struct FiberOffspring {
    parent_perm: Permutation,
    label: usize,
    // (parent, children) in fiber order
    lists: Vec<(PipeDream, Vec<PipeDream>)>,
}

/// [`build_poset_bounded`] with the default bound.
pub fn build_poset(n: usize) -> Result<MitosisPoset> {
    build_poset_bounded(n, DEFAULT_POSET_BOUND)
}

/// Every reduced pipe dream of `S_n`, reached from `D_0` by mitosis along
/// right descents, with the offspring edges.
///
/// Fibers are produced one length at a time. Each fiber `RP(w s_i)` is
/// reached from every `w` above it; all of those unions must agree and each
/// must be disjoint, otherwise this panics.
pub fn build_poset_bounded(n: usize, bound: usize) -> Result<MitosisPoset> {
    if n == 0 || n > bound {
        return Err(Error::BoundExceeded {
            what: "poset size",
            value: n,
            bound,
        });
    }
    let mut fibers: BTreeMap<Permutation, BTreeSet<PipeDream>> = BTreeMap::new();
    let mut offspring: Vec<FiberOffspring> = Vec::new();
    let mut level: Vec<Permutation> = vec![Permutation::long(n)];
    fibers.insert(
        Permutation::long(n),
        [PipeDream::d0(n)].into_iter().collect(),
    );

    while !level.is_empty() {
        let computed: Vec<FiberOffspring> = level
            .par_iter()
            .flat_map_iter(|w| {
                let fiber = &fibers[w];
                w.right_descents().into_iter().map(move |i| FiberOffspring {
                    parent_perm: w.clone(),
                    label: i,
                    lists: fiber
                        .iter()
                        .map(|d| {
                            let list = mitosis(d, i).expect("descent index is in range");
                            (d.clone(), list.children)
                        })
                        .collect(),
                })
            })
            .collect();

        let mut next: BTreeSet<Permutation> = BTreeSet::new();
        for fo in &computed {
            let target = fo.parent_perm.multiply_right_s(fo.label)?;
            let total: usize = fo.lists.iter().map(|(_, c)| c.len()).sum();
            let union: BTreeSet<PipeDream> = fo
                .lists
                .iter()
                .flat_map(|(_, c)| c.iter().cloned())
                .collect();
            assert_eq!(
                union.len(),
                total,
                "offspring overlap over {}",
                fo.parent_perm
            );
            match fibers.get(&target) {
                Some(existing) => assert_eq!(
                    existing, &union,
                    "fiber over {target} depends on the path used to reach it"
                ),
                None => {
                    fibers.insert(target.clone(), union);
                }
            }
            next.insert(target);
        }
        offspring.extend(computed);
        level = next.into_iter().collect();
    }

    let mut perms: Vec<&Permutation> = fibers.keys().collect();
    perms.sort_by(|a, b| b.length().cmp(&a.length()).then_with(|| a.cmp(b)));
    let mut nodes = Vec::new();
    let mut ids = HashMap::new();
    let mut fiber_ids = BTreeMap::new();
    for w in perms {
        let mut members = Vec::new();
        for (k, d) in fibers[w].iter().enumerate() {
            let id = nodes.len();
            nodes.push(Node {
                perm: w.clone(),
                dream: d.clone(),
                index: k + 1,
            });
            ids.insert(d.clone(), id);
            members.push(id);
        }
        fiber_ids.insert(w.clone(), members);
    }
    let mut edges: Vec<Edge> = offspring
        .iter()
        .flat_map(|fo| {
            let ids = &ids;
            fo.lists.iter().flat_map(move |(p, children)| {
                children.iter().map(move |c| Edge {
                    parent: ids[p],
                    child: ids[c],
                    label: fo.label,
                })
            })
        })
        .collect();
    edges.sort();
    Ok(MitosisPoset {
        n,
        nodes,
        edges,
        fibers: fiber_ids,
        ids,
    })
}

impl MitosisPoset {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn id_of(&self, d: &PipeDream) -> Option<NodeId> {
        self.ids.get(d).copied()
    }

    /// Permutations with their fibers, from the longest down.
    pub fn fibers(&self) -> impl Iterator<Item = (&Permutation, Vec<&PipeDream>)> {
        let mut perms: Vec<&Permutation> = self.fibers.keys().collect();
        perms.sort_by(|a, b| b.length().cmp(&a.length()).then_with(|| a.cmp(b)));
        perms.into_iter().map(|w| {
            (
                w,
                self.fibers[w]
                    .iter()
                    .map(|&id| &self.nodes[id].dream)
                    .collect(),
            )
        })
    }

    pub fn fiber(&self, w: &Permutation) -> Vec<&PipeDream> {
        self.fibers
            .get(w)
            .map(|ids| ids.iter().map(|&id| &self.nodes[id].dream).collect())
            .unwrap_or_default()
    }

    pub fn children(&self, id: NodeId) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.parent == id)
    }

    /// Graphviz source: one cluster per fiber, clusters of equal length on
    /// one rank, edges labelled by the generator.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph mitosis {\n  node [shape=box, fontname=monospace];\n");
        let mut by_length: BTreeMap<usize, Vec<&Permutation>> = BTreeMap::new();
        for w in self.fibers.keys() {
            by_length.entry(w.length()).or_default().push(w);
        }
        for (w, ids) in &self.fibers {
            let _ = writeln!(out, "  subgraph \"cluster_{w}\" {{\n    label=\"{w}\";");
            for &id in ids {
                let _ = writeln!(
                    out,
                    "    n{id} [label=\"{}\"];",
                    node_label(&self.nodes[id])
                );
            }
            out.push_str("  }\n");
        }
        for (_, perms) in by_length.iter().rev() {
            let ids: Vec<String> = perms
                .iter()
                .map(|w| format!("n{}", self.fibers[*w][0]))
                .collect();
            let _ = writeln!(out, "  {{ rank=same; {}; }}", ids.join("; "));
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  n{} -> n{} [label=\"s{}\"];",
                e.parent, e.child, e.label
            );
        }
        out.push_str("}\n");
        out
    }

    /// `{"n": n, "fibers": [{"perm": "321", "dreams": [...]}, ...]}`.
    pub fn fibers_json(&self) -> Result<String> {
        #[derive(Serialize)]
        struct FiberJson<'a> {
            perm: String,
            dreams: Vec<&'a PipeDream>,
        }
        #[derive(Serialize)]
        struct PosetJson<'a> {
            n: usize,
            fibers: Vec<FiberJson<'a>>,
        }
        let json = PosetJson {
            n: self.n,
            fibers: self
                .fibers()
                .map(|(w, dreams)| FiberJson {
                    perm: w.to_string(),
                    dreams,
                })
                .collect(),
        };
        Ok(serde_json::to_string(&json)?)
    }
}

pub(crate) fn node_label(node: &Node) -> String {
    let grid: Vec<String> = node
        .dream
        .render_ascii()
        .lines()
        .map(str::to_owned)
        .collect();
    format!("{} #{}\\n{}", node.perm, node.index, grid.join("\\n"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::enumerate_rp;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn pd(n: usize, crosses: &[(usize, usize)]) -> PipeDream {
        PipeDream::from_crosses(n, crosses.iter().copied()).unwrap()
    }

    #[test]
    fn rc3_matches_the_hasse_diagram() {
        let p = build_poset(3).unwrap();
        assert_eq!(p.node_count(), 7);
        let id = |d: PipeDream| p.id_of(&d).unwrap();
        let d321 = id(PipeDream::d0(3));
        let d312 = id(pd(3, &[(1, 1), (1, 2)]));
        let d231 = id(pd(3, &[(1, 1), (2, 1)]));
        let a132 = id(pd(3, &[(1, 2)]));
        let b132 = id(pd(3, &[(2, 1)]));
        let d213 = id(pd(3, &[(1, 1)]));
        let d123 = id(PipeDream::empty(3));
        let mut expected = [
            Edge {
                parent: d321,
                child: d312,
                label: 2,
            },
            Edge {
                parent: d321,
                child: d231,
                label: 1,
            },
            Edge {
                parent: d312,
                child: a132,
                label: 1,
            },
            Edge {
                parent: d312,
                child: b132,
                label: 1,
            },
            Edge {
                parent: d231,
                child: d213,
                label: 2,
            },
            Edge {
                parent: b132,
                child: d123,
                label: 2,
            },
            Edge {
                parent: d213,
                child: d123,
                label: 1,
            },
        ];
        expected.sort();
        assert_eq!(p.edges(), &expected[..]);
        assert_eq!(p.fiber(&perm("132")).len(), 2);
        for node in p.nodes() {
            assert_eq!(node.dream.len(), node.perm.length());
        }
    }

    #[test]
    fn fibers_match_oracle() {
        for n in 1..=5 {
            let p = build_poset(n).unwrap();
            let mut total = 0;
            for w in Permutation::all(n) {
                let rp = enumerate_rp(&w).unwrap();
                let fiber: BTreeSet<PipeDream> = p.fiber(&w).into_iter().cloned().collect();
                assert_eq!(fiber, rp, "w = {w}");
                total += rp.len();
            }
            assert_eq!(p.node_count(), total);
            for e in p.edges() {
                let (a, b) = (p.node(e.parent), p.node(e.child));
                assert_eq!(a.perm.multiply_right_s(e.label).unwrap(), b.perm);
            }
        }
    }

    #[test]
    fn trivial_and_bounds() {
        let p = build_poset(1).unwrap();
        assert_eq!((p.node_count(), p.edges().len()), (1, 0));
        assert!(build_poset(7).is_err());
        assert!(build_poset_bounded(4, 3).is_err());
    }

    #[test]
    fn dot_and_json() {
        let p = build_poset(3).unwrap();
        let dot = p.to_dot();
        assert_eq!(dot.matches("[label=\"s").count(), 7);
        assert!(dot.contains("cluster_132"));
        assert!(dot.contains("132 #2"));
        let json: serde_json::Value = serde_json::from_str(&p.fibers_json().unwrap()).unwrap();
        assert_eq!(json["fibers"].as_array().unwrap().len(), 6);
        assert_eq!(json["fibers"][0]["perm"], "321");
        let single = build_poset(1).unwrap().to_dot();
        assert_eq!(single.matches("label=\"1 #1").count(), 1);
    }
}
