//! Direct union, separation and merge of graphs, plus the structural
//! predicates on mincuts (crossless, connected cut) and the decomposition
//! law checks built on them.

use num::Zero;

use crate::enumeration::{char_matrix, cut_dimension_with_cap, mincuts_with_cap, DEFAULT_CAP};
use crate::graph::{edge_slots, Graph, Shore};
use crate::laminar::shores_cross;
use crate::rational::Rat;
use crate::{Error, Result};

/// Fuses g0 and g1 by identifying v0 with v1. The fused vertex becomes
/// vertex 0, followed by the remaining vertices of g0 then of g1, each in
/// ascending original order.
pub fn direct_union(g0: &Graph, v0: usize, g1: &Graph, v1: usize) -> Result<Graph> {
    if v0 >= g0.n() || v1 >= g1.n() {
        return Err(Error::InvalidParameter("fusion vertex out of range".into()));
    }
    let n = g0.n() + g1.n() - 1;
    let mut g = Graph::zero(n)?;
    // global index of original vertex x on side b
    let side0: Vec<usize> = (0..g0.n()).filter(|&x| x != v0).collect();
    let side1: Vec<usize> = (0..g1.n()).filter(|&x| x != v1).collect();
    let glob0 = |x: usize| {
        if x == v0 {
            0
        } else {
            1 + side0.iter().position(|&y| y == x).unwrap()
        }
    };
    let glob1 = |x: usize| {
        if x == v1 {
            0
        } else {
            g0.n() + side1.iter().position(|&y| y == x).unwrap()
        }
    };
    for (i, j, w) in g0.edges() {
        g.set_weight(glob0(i), glob0(j), w)?;
    }
    for (i, j, w) in g1.edges() {
        g.set_weight(glob1(i), glob1(j), w)?;
    }
    Ok(g)
}

#[derive(Debug, Clone)]
pub struct SeparationPair {
    /// Graph of the canonical-shore side plus one contracted vertex.
    pub g0: Graph,
    /// Graph of the side containing vertex 0 plus one contracted vertex.
    pub g1: Graph,
    /// original vertex -> (side, local index)
    pub mapping: Vec<(usize, usize)>,
    /// local index of the contracted vertex in g0 (standing in for side 1)
    pub v1: usize,
    /// local index of the contracted vertex in g1 (standing in for side 0)
    pub v0: usize,
}

/// Separates G along the cut with shore X: contracts each side to a single
/// vertex in the other side's graph, aggregating boundary weights. Local
/// numbering is ascending original order with the contracted vertex last.
pub fn separation(g: &Graph, x: &Shore) -> Result<SeparationPair> {
    let n = g.n();
    if x.n() != n {
        return Err(Error::DimensionMismatch("shore is for a different n".into()));
    }
    let side0: Vec<usize> = x.members();
    let side1: Vec<usize> = (0..n).filter(|&v| !x.contains(v)).collect();
    let mut mapping = vec![(0usize, 0usize); n];
    for (k, &v) in side0.iter().enumerate() {
        mapping[v] = (0, k);
    }
    for (k, &v) in side1.iter().enumerate() {
        mapping[v] = (1, k);
    }
    let build = |own: &[usize], other: &[usize]| -> Result<Graph> {
        let m = own.len() + 1;
        let contracted = m - 1;
        let mut h = Graph::zero(m)?;
        for (a, &i) in own.iter().enumerate() {
            for (b, &j) in own.iter().enumerate().skip(a + 1) {
                let w = g.weight(i, j)?.clone();
                if !w.is_zero() {
                    h.set_weight(a, b, w)?;
                }
            }
            let boundary: Rat = other
                .iter()
                .map(|&j| g.weight(i, j).cloned())
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .sum();
            if !boundary.is_zero() {
                h.set_weight(a, contracted, boundary)?;
            }
        }
        Ok(h)
    };
    let g0 = build(&side0, &side1)?;
    let g1 = build(&side1, &side0)?;
    Ok(SeparationPair {
        v1: g0.n() - 1,
        v0: g1.n() - 1,
        g0,
        g1,
        mapping,
    })
}

/// Inverse of separation under unit star-cut weights: glue g0 and g1 by
/// dropping v1 and v0 and connecting the sides with product weights
/// w({x,y}) = w0({x,v1}) * w1({v0,y}).
pub fn merge(g0: &Graph, v1: usize, g1: &Graph, v0: usize) -> Result<Graph> {
    if v1 >= g0.n() || v0 >= g1.n() {
        return Err(Error::InvalidParameter("merge vertex out of range".into()));
    }
    let side0: Vec<usize> = (0..g0.n()).filter(|&x| x != v1).collect();
    let side1: Vec<usize> = (0..g1.n()).filter(|&x| x != v0).collect();
    let n = side0.len() + side1.len();
    let mut g = Graph::zero(n)?;
    for (a, &i) in side0.iter().enumerate() {
        for (b, &j) in side0.iter().enumerate().skip(a + 1) {
            g.set_weight(a, b, g0.weight(i, j)?.clone())?;
        }
    }
    for (a, &i) in side1.iter().enumerate() {
        for (b, &j) in side1.iter().enumerate().skip(a + 1) {
            g.set_weight(side0.len() + a, side0.len() + b, g1.weight(i, j)?.clone())?;
        }
    }
    for (a, &i) in side0.iter().enumerate() {
        for (b, &j) in side1.iter().enumerate() {
            let w = g0.weight(i, v1)? * g1.weight(v0, j)?;
            g.set_weight(a, side0.len() + b, w)?;
        }
    }
    Ok(g)
}

/// A mincut is crossless when no other mincut crosses it.
pub fn is_crossless(g: &Graph, s: &Shore) -> Result<bool> {
    let report = mincuts_with_cap(g, DEFAULT_CAP)?;
    if !report.mincuts.contains(s) {
        return Err(Error::Precondition("cut is not a mincut".into()));
    }
    Ok(report.mincuts.iter().all(|t| !shores_cross(s, t)))
}

/// Whether the graph formed by the cut's edges (on their endpoints) is
/// connected.
pub fn cut_graph_connected(g: &Graph, s: &Shore) -> bool {
    let n = g.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, v: usize) -> usize {
        if parent[v] != v {
            let r = find(parent, parent[v]);
            parent[v] = r;
        }
        parent[v]
    }
    let mut touched = vec![false; n];
    for (e, (i, j)) in edge_slots(n).enumerate() {
        if g.weights()[e].is_zero() || !s.crosses_slot(i, j) {
            continue;
        }
        touched[i] = true;
        touched[j] = true;
        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
        parent[a] = b;
    }
    let mut roots = (0..n)
        .filter(|&v| touched[v])
        .map(|v| find(&mut parent, v));
    match roots.next() {
        None => false, // empty cut graph
        Some(r0) => roots.all(|r| r == r0),
    }
}

#[derive(Debug, Clone)]
pub struct DecompositionReport {
    pub cdim_g: usize,
    pub cdim_g0: usize,
    pub cdim_g1: usize,
    /// dim(span of the mincuts of G with a shore inside each side)
    pub dim_m0: usize,
    pub dim_m1: usize,
    pub connected: bool,
    pub equality: bool,
}

/// Decomposition law along a crossless non-star mincut Z: always
/// cdim(G) <= cdim(G0) + cdim(G1) - 1, with equality exactly when the cut
/// graph of Z is connected; and the mincuts confined to side b span a
/// space of dimension cdim(G_b).
pub fn verify_crossless_decomposition(g: &Graph, z: &Shore) -> Result<DecompositionReport> {
    if z.is_star() {
        return Err(Error::Precondition("cut must be non-star".into()));
    }
    if !is_crossless(g, z)? {
        return Err(Error::Precondition("cut is not crossless".into()));
    }
    let report = mincuts_with_cap(g, DEFAULT_CAP)?;
    let pair = separation(g, z)?;
    let cdim_g = char_matrix(g, &report.mincuts).rank();
    let cdim_g0 = cut_dimension_with_cap(&pair.g0, DEFAULT_CAP)?;
    let cdim_g1 = cut_dimension_with_cap(&pair.g1, DEFAULT_CAP)?;
    // Mincuts confined to side b: one shore inside X_b. No mincut crosses
    // Z, so every mincut lands in at least one side.
    let x0 = z.mask();
    let x1 = z.complement_mask();
    let side = |s: &Shore, xb: u64| s.mask() & !xb == 0 || s.complement_mask() & !xb == 0;
    let m0: Vec<Shore> = report
        .mincuts
        .iter()
        .copied()
        .filter(|s| side(s, x0))
        .collect();
    let m1: Vec<Shore> = report
        .mincuts
        .iter()
        .copied()
        .filter(|s| side(s, x1))
        .collect();
    if m0.len() + m1.len() < report.mincuts.len() {
        return Err(Error::VerificationFailed(
            "a mincut fits neither side of a crossless cut".into(),
        ));
    }
    let dim_m0 = char_matrix(g, &m0).rank();
    let dim_m1 = char_matrix(g, &m1).rank();
    let connected = cut_graph_connected(g, z);
    let bound = cdim_g0 + cdim_g1 - 1;
    if cdim_g > bound {
        return Err(Error::VerificationFailed(format!(
            "cdim {cdim_g} exceeds decomposition bound {bound}"
        )));
    }
    let equality = cdim_g == bound;
    if connected && !equality {
        return Err(Error::VerificationFailed(
            "connected cut but strict inequality".into(),
        ));
    }
    if dim_m0 != cdim_g0 || dim_m1 != cdim_g1 {
        return Err(Error::VerificationFailed(format!(
            "side spans ({dim_m0}, {dim_m1}) differ from ({cdim_g0}, {cdim_g1})"
        )));
    }
    Ok(DecompositionReport {
        cdim_g,
        cdim_g0,
        cdim_g1,
        dim_m0,
        dim_m1,
        connected,
        equality,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MincutStructure {
    AllStar,
    /// Every non-star mincut is crossed by another; forces a uniform-weight
    /// cycle.
    CycleCase,
    HasCrosslessNonstar,
}

pub fn classify_mincut_structure(g: &Graph) -> Result<MincutStructure> {
    let report = mincuts_with_cap(g, DEFAULT_CAP)?;
    let nonstar: Vec<&Shore> = report.mincuts.iter().filter(|s| !s.is_star()).collect();
    if nonstar.is_empty() {
        return Ok(MincutStructure::AllStar);
    }
    let crossless_exists = nonstar
        .iter()
        .any(|s| report.mincuts.iter().all(|t| !shores_cross(s, t)));
    if crossless_exists {
        return Ok(MincutStructure::HasCrosslessNonstar);
    }
    // All non-star mincuts crossed: the graph must be a cycle with one
    // common edge weight.
    if !is_uniform_cycle(g) {
        return Err(Error::VerificationFailed(
            "crossing-only mincut structure on a non-cycle graph".into(),
        ));
    }
    Ok(MincutStructure::CycleCase)
}

/// All positive edges share one weight and form a single cycle through
/// every vertex.
pub fn is_uniform_cycle(g: &Graph) -> bool {
    let edges = g.edges();
    let n = g.n();
    if edges.len() != n || n < 3 {
        return false;
    }
    let w0 = &edges[0].2;
    if edges.iter().any(|(_, _, w)| w != w0) {
        return false;
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, j, _) in &edges {
        adj[*i].push(*j);
        adj[*j].push(*i);
    }
    if adj.iter().any(|a| a.len() != 2) {
        return false;
    }
    // Walk the cycle and check it visits all n vertices.
    let mut seen = vec![false; n];
    let (mut prev, mut cur) = (0usize, adj[0][0]);
    seen[0] = true;
    let mut count = 1;
    while cur != 0 {
        seen[cur] = true;
        count += 1;
        let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
        prev = cur;
        cur = next;
    }
    count == n && seen.iter().all(|&s| s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::{cut_dimension, mincuts};
    use crate::rational::rat;

    fn unit_cycle(n: usize) -> Graph {
        let mut g = Graph::zero(n).unwrap();
        for v in 0..n {
            g.set_weight(v, (v + 1) % n, rat(1)).unwrap();
        }
        g
    }

    fn k4() -> Graph {
        Graph::new(4, vec![rat(1); 6]).unwrap()
    }

    #[test]
    fn union_vertex_and_weight_bookkeeping() {
        let g = direct_union(&k4(), 0, &k4(), 0).unwrap();
        assert_eq!(g.n(), 7);
        assert_eq!(g.edge_count(), 12);
        // Hub sees all six others; the two sides stay disconnected.
        for v in 1..=3 {
            assert_eq!(g.weight(0, v).unwrap(), &rat(1));
            assert_eq!(g.weight(0, v + 3).unwrap(), &rat(1));
            for u in 4..=6 {
                assert_eq!(g.weight(v, u).unwrap(), &rat(0));
            }
        }
    }

    #[test]
    fn union_cdim_sums_for_equal_lambda() {
        let g = direct_union(&k4(), 0, &k4(), 0).unwrap();
        assert_eq!(cut_dimension(&g).unwrap(), 8); // 4 + 4
    }

    #[test]
    fn union_cdim_tracks_smaller_lambda_block() {
        // C_4 (lambda 2, cdim 4) fused with K_4 (lambda 3, cdim 4): only
        // the cycle's mincuts survive.
        let g = direct_union(&unit_cycle(4), 0, &k4(), 0).unwrap();
        let report = mincuts(&g).unwrap();
        assert_eq!(report.lambda, rat(2));
        assert_eq!(cut_dimension(&g).unwrap(), cut_dimension(&unit_cycle(4)).unwrap());
    }

    #[test]
    fn separation_star_cut_gives_single_edge_side() {
        let g = k4();
        let s = Shore::new([1], 4).unwrap();
        let pair = separation(&g, &s).unwrap();
        assert_eq!(pair.g0.n(), 2);
        assert_eq!(pair.g0.weight(0, 1).unwrap(), &rat(3));
        // Star weight at the contracted vertex equals the cut weight.
        let t = Shore::new([pair.v0], pair.g1.n()).unwrap();
        assert_eq!(crate::graph::cut_weight(&pair.g1, &t), rat(3));
    }

    #[test]
    fn merge_of_unit_edges() {
        let e = Graph::new(2, vec![rat(1)]).unwrap();
        let m = merge(&e, 1, &e, 0).unwrap();
        assert_eq!(m.n(), 2);
        assert_eq!(m.weight(0, 1).unwrap(), &rat(1));
    }

    #[test]
    fn sep_of_mer_roundtrip_unit_star_weights() {
        // Both factors have star weight exactly 1 at the glue vertices.
        let g0 = Graph::new(3, vec![ratio_half(), ratio_half(), ratio_half()]).unwrap();
        let g1 = Graph::new(3, vec![ratio_half(), ratio_half(), ratio_half()]).unwrap();
        let merged = merge(&g0, 2, &g1, 0).unwrap();
        assert_eq!(merged.n(), 4);
        // Z separates the two original sides: shore = g1 side {2, 3}.
        let z = Shore::new([2, 3], 4).unwrap();
        assert_eq!(crate::graph::cut_weight(&merged, &z), rat(1));
        let pair = separation(&merged, &z).unwrap();
        assert_eq!(pair.g1, g0);
        assert_eq!(pair.g0, g1);
    }

    fn ratio_half() -> Rat {
        crate::rational::ratio(1, 2)
    }

    #[test]
    fn star_mincut_is_crossless() {
        let g = k4();
        let s = Shore::new([2], 4).unwrap();
        assert!(is_crossless(&g, &s).unwrap());
    }

    #[test]
    fn cycle_mincuts_cross() {
        let g = unit_cycle(6);
        let s = Shore::new([1, 2], 6).unwrap();
        assert!(!is_crossless(&g, &s).unwrap());
    }

    #[test]
    fn crossless_requires_mincut() {
        let g = k4();
        let s = Shore::new([1, 2], 4).unwrap(); // weight 4 > 3
        assert!(is_crossless(&g, &s).is_err());
    }

    #[test]
    fn cut_graph_connectivity() {
        let g = k4();
        assert!(cut_graph_connected(&g, &Shore::new([1], 4).unwrap()));
        // Two disjoint unit edges cut by the shore of one endpoint each.
        let mut h = Graph::zero(4).unwrap();
        h.set_weight(0, 1, rat(1)).unwrap();
        h.set_weight(2, 3, rat(1)).unwrap();
        let s = Shore::new([1, 2], 4).unwrap();
        assert!(!cut_graph_connected(&h, &s));
    }

    #[test]
    fn classify_k5_all_star() {
        let k5 = Graph::new(5, vec![rat(1); 10]).unwrap();
        assert_eq!(classify_mincut_structure(&k5).unwrap(), MincutStructure::AllStar);
    }

    #[test]
    fn classify_cycle() {
        assert_eq!(
            classify_mincut_structure(&unit_cycle(7)).unwrap(),
            MincutStructure::CycleCase
        );
        assert!(is_uniform_cycle(&unit_cycle(5)));
        assert!(!is_uniform_cycle(&k4()));
    }
}
