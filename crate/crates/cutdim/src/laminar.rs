//! Overlap and crossing predicates, laminar and cross-free families,
//! maximal cross-free subsets, and faithful arborescence representations.
//!
//! Set families live over the universe {0, .., n-1}; members are stored as
//! bit masks, and the beach convention keeps vertex 0 out of every member.

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::graph::Shore;
use crate::{Error, Result};

fn full_mask(n: usize) -> u64 {
    (1u64 << n) - 1
}

/// X and Y overlap when X∩Y, X\Y and Y\X are all nonempty.
pub fn overlap(x: u64, y: u64) -> bool {
    x & y != 0 && x & !y != 0 && y & !x != 0
}

/// X and Y cross when they overlap and their complements also intersect.
pub fn cross(x: u64, y: u64, n: usize) -> bool {
    overlap(x, y) && !x & !y & full_mask(n) != 0
}

/// Whether the cuts with shores x and y cross. Shores are canonical, so
/// both complements contain vertex 0 and are nonempty automatically.
pub fn shores_cross(x: &Shore, y: &Shore) -> bool {
    cross(x.mask(), y.mask(), x.n())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    pub n: usize,
    pub sets: Vec<u64>,
}

impl SetFamily {
    pub fn new(n: usize, mut sets: Vec<u64>) -> Result<Self> {
        sets.sort_unstable();
        let before = sets.len();
        sets.dedup();
        if sets.len() != before {
            return Err(Error::InvalidParameter("duplicate sets in family".into()));
        }
        if sets.iter().any(|&s| s & !full_mask(n) != 0) {
            return Err(Error::InvalidParameter("set exceeds universe".into()));
        }
        Ok(SetFamily { n, sets })
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// No empty set and no full universe among the members.
    pub fn is_proper(&self) -> bool {
        self.sets.iter().all(|&s| s != 0 && s != full_mask(self.n))
    }

    pub fn is_complement_free(&self) -> bool {
        self.sets
            .iter()
            .all(|&s| !self.sets.contains(&(full_mask(self.n) & !s)))
    }

    pub fn members(&self) -> Vec<Vec<usize>> {
        self.sets
            .iter()
            .map(|&s| (0..self.n).filter(|&v| s >> v & 1 != 0).collect())
            .collect()
    }

    pub fn to_json(&self) -> FamilyJson {
        FamilyJson {
            n: self.n,
            sets: self.members(),
        }
    }

    pub fn from_json(j: &FamilyJson) -> Result<Self> {
        let sets = j
            .sets
            .iter()
            .map(|s| {
                let mut mask = 0u64;
                for &v in s {
                    if v >= j.n {
                        return Err(Error::InvalidParameter(format!(
                            "element {v} outside universe of size {}",
                            j.n
                        )));
                    }
                    mask |= 1 << v;
                }
                Ok(mask)
            })
            .collect::<Result<Vec<_>>>()?;
        SetFamily::new(j.n, sets)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyJson {
    pub n: usize,
    pub sets: Vec<Vec<usize>>,
}

/// Replaces each cut by the shore avoiding vertex 0. Shores are already
/// canonical, so this just collects their masks into a family.
pub fn beach(cuts: &[Shore]) -> Result<SetFamily> {
    let n = cuts.first().map_or(2, Shore::n);
    SetFamily::new(n, cuts.iter().map(Shore::mask).collect())
}

pub fn is_laminar(f: &SetFamily) -> bool {
    f.sets
        .iter()
        .enumerate()
        .all(|(i, &x)| f.sets[i + 1..].iter().all(|&y| !overlap(x, y)))
}

pub fn is_cross_free(cuts: &[Shore]) -> bool {
    cuts.iter()
        .enumerate()
        .all(|(i, x)| cuts[i + 1..].iter().all(|y| !shores_cross(x, y)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossFreeScope {
    /// Maximal within the supplied cut list only.
    MincutsOnly,
    /// Maximal against every cut of the n-vertex universe; the result then
    /// has exactly 2n-3 members.
    AllCuts,
}

/// Greedy maximal cross-free subfamily: scan in deterministic shore order,
/// keeping any cut crossing no earlier keeper. Every rejected cut crosses a
/// keeper, so one pass reaches a fixed point.
pub fn maximal_cross_free_subset(cuts: &[Shore], scope: CrossFreeScope) -> Result<Vec<Shore>> {
    let mut sorted: Vec<Shore> = cuts.to_vec();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != cuts.len() {
        return Err(Error::InvalidParameter("duplicate cuts".into()));
    }
    let mut keep: Vec<Shore> = Vec::new();
    for s in &sorted {
        if keep.iter().all(|t| !shores_cross(s, t)) {
            keep.push(*s);
        }
    }
    if scope == CrossFreeScope::AllCuts {
        let n = cuts
            .first()
            .map(Shore::n)
            .ok_or_else(|| Error::InvalidParameter("empty cut list".into()))?;
        for m in 1u64..(1 << (n - 1)) {
            let s = Shore::from_mask(m << 1, n)?;
            if !keep.contains(&s) && keep.iter().all(|t| !shores_cross(&s, t)) {
                keep.push(s);
            }
        }
        keep.sort();
    }
    Ok(keep)
}

/// Rooted out-directed tree with a partial element-to-node label map.
/// Each non-root node stands for one set of the represented family.
#[derive(Debug, Clone)]
pub struct ArborescenceRep {
    pub n: usize,
    pub root: usize,
    pub parent: Vec<Option<usize>>,
    pub children: Vec<Vec<usize>>,
    /// phi: element -> node carrying its label.
    pub label_of: Vec<Option<usize>>,
}

impl ArborescenceRep {
    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    pub fn edge_count(&self) -> usize {
        self.node_count() - 1
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.children[v].len()
    }

    /// Elements labeling node v.
    pub fn labels_at(&self, v: usize) -> Vec<usize> {
        (0..self.n)
            .filter(|&e| self.label_of[e] == Some(v))
            .collect()
    }

    /// The set represented by the edge into `node`: all elements whose
    /// label sits inside the subtree rooted there.
    pub fn set_below(&self, node: usize) -> u64 {
        let mut mask = 0u64;
        let mut stack = vec![node];
        while let Some(v) = stack.pop() {
            for e in self.labels_at(v) {
                mask |= 1 << e;
            }
            stack.extend(&self.children[v]);
        }
        mask
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph {\n");
        for v in 0..self.node_count() {
            let labels = self.labels_at(v);
            let text = if labels.is_empty() {
                String::new()
            } else {
                labels
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            };
            let _ = writeln!(out, "  n{v} [label=\"{text}\"];");
        }
        for v in 0..self.node_count() {
            if let Some(p) = self.parent[v] {
                let _ = writeln!(out, "  n{p} -> n{v};");
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Faithful arborescence representation of a laminar family over
/// {0, .., n-1} whose members avoid element 0. The root stands for the
/// whole universe and carries the label 0; each family set gets one node,
/// parented by its smallest strict superset.
pub fn tree_representation(f: &SetFamily) -> Result<ArborescenceRep> {
    if !is_laminar(f) {
        return Err(Error::NotLaminar);
    }
    if !f.is_proper() || f.sets.iter().any(|&s| s & 1 != 0) {
        return Err(Error::InvalidParameter(
            "family must be proper with members avoiding element 0".into(),
        ));
    }
    // Sort by decreasing cardinality so parents are placed before children.
    let mut order: Vec<usize> = (0..f.sets.len()).collect();
    order.sort_by_key(|&i| {
        (
            std::cmp::Reverse(f.sets[i].count_ones()),
            f.sets[i].trailing_zeros(),
        )
    });
    let root = 0usize;
    let mut parent: Vec<Option<usize>> = vec![None];
    let mut children: Vec<Vec<usize>> = vec![Vec::new()];
    let mut node_set: Vec<u64> = vec![full_mask(f.n)];
    let mut node_of_set = vec![0usize; f.sets.len()];
    for &i in &order {
        let s = f.sets[i];
        // Laminarity: among placed supersets the smallest one contains s
        // and is unique.
        let p = (0..node_set.len())
            .filter(|&v| node_set[v] & s == s && node_set[v] != s)
            .min_by_key(|&v| node_set[v].count_ones())
            .unwrap_or(root);
        let v = node_set.len();
        parent.push(Some(p));
        children.push(Vec::new());
        children[p].push(v);
        node_set.push(s);
        node_of_set[i] = v;
    }
    // Order children by smallest contained element for determinism.
    for c in children.iter_mut() {
        c.sort_by_key(|&v| node_set[v].trailing_zeros());
    }
    // phi: each element labels the node of the smallest set containing it;
    // element 0 (in no member) labels the root.
    let mut label_of: Vec<Option<usize>> = vec![None; f.n];
    label_of[0] = Some(root);
    for e in 1..f.n {
        let v = (0..node_set.len())
            .filter(|&v| node_set[v] >> e & 1 != 0)
            .min_by_key(|&v| node_set[v].count_ones())
            .unwrap_or(root);
        label_of[e] = Some(v);
    }
    Ok(ArborescenceRep {
        n: f.n,
        root,
        parent,
        children,
        label_of,
    })
}

/// Reads the represented family back off the tree: one set per edge.
pub fn family_from_tree(rep: &ArborescenceRep) -> Result<SetFamily> {
    let sets: Vec<u64> = (0..rep.node_count())
        .filter(|&v| v != rep.root)
        .map(|v| rep.set_below(v))
        .collect();
    SetFamily::new(rep.n, sets)
}

/// Samples a maximal cross-free family of cuts on n vertices: a uniform
/// random full binary tree with n-1 shuffled leaf labels hung under the
/// root, read off edge by edge. Always returns 2n-3 cuts.
pub fn random_maximal_cross_free(n: usize, seed: u64) -> Result<Vec<Shore>> {
    if !(2..=63).contains(&n) {
        return Err(Error::InvalidParameter(format!(
            "need 2 <= n <= 63, got {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Grow a full binary tree with n-1 leaves by repeatedly splitting a
    // random leaf in two.
    let mut children: Vec<Option<(usize, usize)>> = vec![None];
    let mut leaves: Vec<usize> = vec![0];
    while leaves.len() < n - 1 {
        let pick = rng.gen_range(0..leaves.len());
        let v = leaves.swap_remove(pick);
        let a = children.len();
        children.push(None);
        let b = children.len();
        children.push(None);
        children[v] = Some((a, b));
        leaves.push(a);
        leaves.push(b);
    }
    let mut labels: Vec<usize> = (1..n).collect();
    labels.shuffle(&mut rng);
    let mut leaf_label = vec![0usize; children.len()];
    leaves.sort_unstable();
    for (leaf, label) in leaves.iter().zip(labels) {
        leaf_label[*leaf] = label;
    }
    // Each of the 2(n-1)-1 binary-tree nodes plus the edge from the root
    // above node 0 yields one set: the leaf labels below it.
    fn collect(
        v: usize,
        children: &[Option<(usize, usize)>],
        leaf_label: &[usize],
        out: &mut Vec<u64>,
    ) -> u64 {
        let mask = match children[v] {
            None => 1u64 << leaf_label[v],
            Some((a, b)) => {
                collect(a, children, leaf_label, out)
                    | collect(b, children, leaf_label, out)
            }
        };
        out.push(mask);
        mask
    }
    let mut masks = Vec::new();
    collect(0, &children, &leaf_label, &mut masks);
    let mut shores = masks
        .into_iter()
        .map(|m| Shore::from_mask(m, n))
        .collect::<Result<Vec<_>>>()?;
    shores.sort();
    shores.dedup();
    if shores.len() != 2 * n - 3 {
        return Err(Error::VerificationFailed(format!(
            "expected {} cuts, built {}",
            2 * n - 3,
            shores.len()
        )));
    }
    Ok(shores)
}

#[derive(Debug, Clone)]
pub struct UncrossReport {
    pub intersection: u64,
    pub union: u64,
    pub overlaps_x: usize,
    pub overlaps_intersection: usize,
    pub overlaps_union: usize,
}

/// Uncrosses overlapping X, Y into (X∩Y, X∪Y) and counts how many members
/// of the reference family each set overlaps. When Y comes from a laminar
/// family closed under overlaps with X, both counts strictly decrease.
pub fn uncross(x: u64, y: u64, reference: &SetFamily) -> Result<UncrossReport> {
    if !overlap(x, y) {
        return Err(Error::Precondition("sets do not overlap".into()));
    }
    let count = |s: u64| reference.sets.iter().filter(|&&t| overlap(s, t)).count();
    Ok(UncrossReport {
        intersection: x & y,
        union: x | y,
        overlaps_x: count(x),
        overlaps_intersection: count(x & y),
        overlaps_union: count(x | y),
    })
}
