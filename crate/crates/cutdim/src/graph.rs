//! Weighted graph over canonically ordered edge slots, shores and cut vectors.
//!
//! A graph on `n` vertices is a vector of `n*(n-1)/2` nonnegative rationals,
//! one per unordered vertex pair, in lexicographic slot order. A shore is
//! the side of a cut not containing vertex 0.

use std::fmt::Write as _;

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::rational::{parse_rat, rat_str, Rat};
use crate::{Error, Result};

/// Lexicographic index of the slot {i, j} among the n*(n-1)/2 edge slots.
pub fn edge_index(i: usize, j: usize, n: usize) -> Result<usize> {
    if i >= j || j >= n {
        return Err(Error::InvalidEdge { i, j, n });
    }
    Ok(i * n - i * (i + 1) / 2 + (j - i - 1))
}

pub fn slot_count(n: usize) -> usize {
    n * (n - 1) / 2
}

/// All slots (i, j) with i < j in lexicographic order.
pub fn edge_slots(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    w: Vec<Rat>,
}

impl Graph {
    pub fn new(n: usize, w: Vec<Rat>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!(
                "graph needs at least 2 vertices, got {n}"
            )));
        }
        if w.len() != slot_count(n) {
            return Err(Error::DimensionMismatch(format!(
                "expected {} weights for n={}, got {}",
                slot_count(n),
                n,
                w.len()
            )));
        }
        if let Some(bad) = w.iter().find(|x| **x < Rat::zero()) {
            return Err(Error::InvalidParameter(format!(
                "negative edge weight {}",
                rat_str(bad)
            )));
        }
        Ok(Graph { n, w })
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::new(n, vec![Rat::zero(); slot_count(n)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weights(&self) -> &[Rat] {
        &self.w
    }

    pub fn weight(&self, i: usize, j: usize) -> Result<&Rat> {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        Ok(&self.w[edge_index(a, b, self.n)?])
    }

    pub fn set_weight(&mut self, i: usize, j: usize, value: Rat) -> Result<()> {
        if value < Rat::zero() {
            return Err(Error::InvalidParameter("negative edge weight".into()));
        }
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        let idx = edge_index(a, b, self.n)?;
        self.w[idx] = value;
        Ok(())
    }

    /// Slots carrying positive weight, in slot order. These are the edges.
    pub fn positive_slots(&self) -> Vec<usize> {
        (0..self.w.len()).filter(|&e| !self.w[e].is_zero()).collect()
    }

    pub fn edges(&self) -> Vec<(usize, usize, Rat)> {
        edge_slots(self.n)
            .enumerate()
            .filter(|(e, _)| !self.w[*e].is_zero())
            .map(|(e, (i, j))| (i, j, self.w[e].clone()))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.w.iter().filter(|x| !x.is_zero()).count()
    }

    /// True when every slot has positive weight.
    pub fn is_complete_weighted(&self) -> bool {
        self.w.iter().all(|x| !x.is_zero())
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.n,
            edges: self
                .edges()
                .into_iter()
                .map(|(i, j, w)| (i, j, rat_str(&w)))
                .collect(),
        }
    }

    pub fn from_json(j: &GraphJson) -> Result<Self> {
        let mut g = Graph::zero(j.n)?;
        for (i, jj, s) in &j.edges {
            let w = parse_rat(s)?;
            if w < Rat::zero() {
                return Err(Error::InvalidParameter(format!(
                    "negative weight on edge ({i}, {jj})"
                )));
            }
            g.set_weight(*i, *jj, w)?;
        }
        Ok(g)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph {\n");
        for v in 0..self.n {
            let _ = writeln!(out, "  {v};");
        }
        for (i, j, w) in self.edges() {
            let _ = writeln!(out, "  {i} -- {j} [label=\"{}\"];", rat_str(&w));
        }
        out.push_str("}\n");
        out
    }
}

/// Sparse JSON form: {"n": int, "edges": [[i, j, "p/q"], ...]}, omitted
/// slots have weight zero.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<(usize, usize, String)>,
}

/// Canonical shore of a cut: the side not containing vertex 0, stored as a
/// bit mask over vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Shore {
    mask: u64,
    n: usize,
}

impl Shore {
    pub fn new<I: IntoIterator<Item = usize>>(members: I, n: usize) -> Result<Self> {
        if n < 2 || n > 63 {
            return Err(Error::InvalidShore(format!("unsupported vertex count {n}")));
        }
        let mut mask: u64 = 0;
        for v in members {
            if v >= n {
                return Err(Error::InvalidShore(format!("vertex {v} out of range for n={n}")));
            }
            mask |= 1 << v;
        }
        Self::from_mask(mask, n)
    }

    pub fn from_mask(mask: u64, n: usize) -> Result<Self> {
        let full = (1u64 << n) - 1;
        if mask == 0 || mask == full {
            return Err(Error::InvalidShore("shore must be a nonempty proper subset".into()));
        }
        // Canonical side excludes vertex 0.
        let mask = if mask & 1 != 0 { full & !mask } else { mask };
        Ok(Shore { mask, n })
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn complement_mask(&self) -> u64 {
        ((1u64 << self.n) - 1) & !self.mask
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn contains(&self, v: usize) -> bool {
        self.mask >> v & 1 != 0
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        false // canonical shores are nonempty by construction
    }

    /// A cut is a star cut when either shore is a singleton.
    pub fn is_star(&self) -> bool {
        self.len() == 1 || self.len() == self.n - 1
    }

    pub fn members(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.contains(v)).collect()
    }

    /// Whether the slot {i, j} crosses this cut.
    pub fn crosses_slot(&self, i: usize, j: usize) -> bool {
        self.contains(i) != self.contains(j)
    }
}

/// Characteristic vectors of a cut: over all slots, and over the positive
/// weight slots only (the paper's chi).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutVector {
    pub full: Vec<u8>,
    pub restricted: Vec<u8>,
}

pub fn cut_weight(g: &Graph, x: &Shore) -> Rat {
    let mut total = Rat::zero();
    for (e, (i, j)) in edge_slots(g.n()).enumerate() {
        if x.crosses_slot(i, j) {
            total += &g.weights()[e];
        }
    }
    total
}

pub fn char_vector(g: &Graph, x: &Shore) -> CutVector {
    let mut full = Vec::with_capacity(slot_count(g.n()));
    let mut restricted = Vec::new();
    for (e, (i, j)) in edge_slots(g.n()).enumerate() {
        let bit = x.crosses_slot(i, j) as u8;
        full.push(bit);
        if !g.weights()[e].is_zero() {
            restricted.push(bit);
        }
    }
    CutVector { full, restricted }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn unit_cycle(n: usize) -> Graph {
        let mut g = Graph::zero(n).unwrap();
        for v in 0..n {
            g.set_weight(v, (v + 1) % n, rat(1)).unwrap();
        }
        g
    }

    #[test]
    fn edge_index_lexicographic() {
        assert_eq!(edge_index(0, 1, 4).unwrap(), 0);
        assert_eq!(edge_index(0, 3, 4).unwrap(), 2);
        assert_eq!(edge_index(2, 3, 4).unwrap(), 5);
        // bijection onto 0..C(n,2)-1
        let idx: Vec<usize> = edge_slots(5)
            .map(|(i, j)| edge_index(i, j, 5).unwrap())
            .collect();
        assert_eq!(idx, (0..10).collect::<Vec<_>>());
        assert!(edge_index(2, 2, 4).is_err());
        assert!(edge_index(3, 1, 4).is_err());
        assert!(edge_index(0, 4, 4).is_err());
    }

    #[test]
    fn shore_canonical_excludes_vertex_zero() {
        let s = Shore::new([0, 2], 4).unwrap();
        assert_eq!(s.members(), vec![1, 3]);
        assert!(Shore::new([0, 1, 2, 3], 4).is_err());
        assert!(Shore::new(std::iter::empty(), 4).is_err());
    }

    #[test]
    fn cut_weight_cycle_and_k4() {
        let c4 = unit_cycle(4);
        let s = Shore::new([1], 4).unwrap();
        assert_eq!(cut_weight(&c4, &s), rat(2));

        let k4 = Graph::new(4, vec![rat(1); 6]).unwrap();
        let a = Shore::new([1], 4).unwrap();
        assert_eq!(cut_weight(&k4, &a), rat(3));
    }

    #[test]
    fn char_vector_k3_half_weights() {
        let g = Graph::new(3, vec![ratio(1, 2); 3]).unwrap();
        let s = Shore::new([1], 3).unwrap();
        let cv = char_vector(&g, &s);
        assert_eq!(cv.full, vec![1, 0, 1]);
        assert_eq!(cv.restricted, vec![1, 0, 1]);
    }

    #[test]
    fn complement_shore_same_cut() {
        let g = unit_cycle(5);
        let s = Shore::new([1, 2], 5).unwrap();
        let t = Shore::new([0, 3, 4], 5).unwrap();
        assert_eq!(s, t);
        assert_eq!(char_vector(&g, &s), char_vector(&g, &t));
        assert_eq!(cut_weight(&g, &s), cut_weight(&g, &t));
    }

    #[test]
    fn c4_two_vertex_shore_has_two_boundary_edges() {
        let g = unit_cycle(4);
        let s = Shore::new([1, 2], 4).unwrap();
        let cv = char_vector(&g, &s);
        assert_eq!(cv.restricted.iter().filter(|&&b| b == 1).count(), 2);
    }

    #[test]
    fn cut_weight_is_inner_product_with_full_vector() {
        let g = Graph::new(
            4,
            vec![rat(2), rat(0), rat(3), ratio(1, 2), rat(0), rat(5)],
        )
        .unwrap();
        for mask in 1u64..8 {
            let s = Shore::from_mask(mask << 1, 4).unwrap();
            let cv = char_vector(&g, &s);
            let dot: Rat = cv
                .full
                .iter()
                .zip(g.weights())
                .filter(|(b, _)| **b == 1)
                .map(|(_, w)| w.clone())
                .sum();
            assert_eq!(dot, cut_weight(&g, &s));
        }
    }

    #[test]
    fn json_roundtrip() {
        let g = Graph::new(3, vec![ratio(1, 2), rat(0), rat(3)]).unwrap();
        let j = g.to_json();
        assert_eq!(j.edges.len(), 2);
        let back = Graph::from_json(&j).unwrap();
        assert_eq!(back, g);
    }
}
