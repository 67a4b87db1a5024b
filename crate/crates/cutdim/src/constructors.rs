//! Graph families: cycles, complete graphs, the weighted graph realizing a
//! maximal cross-free family as its mincut set, the recursive merge family
//! with extremal cut dimension, hub-fused 4-clique unions, near-mincut
//! cycle perturbations, and two fixed example graphs.

use num::One;
use serde::Serialize;

use crate::enumeration::{cut_dimension_with_cap, mincuts_with_cap, DEFAULT_CAP};
use crate::graph::{cut_weight, edge_slots, Graph, Shore};
use crate::laminar::{is_cross_free, shores_cross};
use crate::ops::merge;
use crate::rational::{pow2, rat, rat_serde, ratio, Rat};
use crate::{Error, Result};

#[derive(Debug, Clone, Serialize)]
pub struct ConstructionReport {
    #[serde(skip)]
    pub graph: Graph,
    #[serde(with = "rat_serde")]
    pub expected_lambda: Rat,
    pub expected_cdim: usize,
    /// Which construction produced the graph.
    pub tag: String,
}

/// The n-cycle with unit weights. For n = 2 the two parallel unit edges
/// collapse into a single edge of weight 2.
pub fn cycle(n: usize) -> Result<Graph> {
    if n == 2 {
        return Graph::new(2, vec![rat(2)]);
    }
    let mut g = Graph::zero(n)?;
    for v in 0..n {
        g.set_weight(v, (v + 1) % n, rat(1))?;
    }
    Ok(g)
}

pub fn complete(n: usize, weight: &Rat) -> Result<Graph> {
    if *weight <= Rat::from_integer(0.into()) {
        return Err(Error::InvalidParameter("weight must be positive".into()));
    }
    Graph::new(n, vec![weight.clone(); n * (n - 1) / 2])
}

/// Realizes a maximal cross-free cut family L as exactly the mincut set of
/// a complete weighted graph: weight 2^(1-z(e)) where z(e) counts the cuts
/// of L crossed by the slot e. Every cut of L then has weight exactly 1.
pub fn explicit_from_family(l: &[Shore]) -> Result<ConstructionReport> {
    let n = l
        .first()
        .map(Shore::n)
        .ok_or_else(|| Error::InvalidParameter("empty family".into()))?;
    if !is_cross_free(l) {
        return Err(Error::NotCrossFree);
    }
    if l.len() != 2 * n - 3 {
        return Err(Error::NotMaximal(format!(
            "family has {} cuts, a maximal one has {}",
            l.len(),
            2 * n - 3
        )));
    }
    // Maximality against the full cut space.
    for m in 1u64..(1 << (n - 1)) {
        let s = Shore::from_mask(m << 1, n)?;
        if !l.contains(&s) && l.iter().all(|t| !shores_cross(&s, t)) {
            return Err(Error::NotMaximal(format!(
                "cut {:?} crosses no member",
                s.members()
            )));
        }
    }
    let mut g = Graph::zero(n)?;
    for (i, j) in edge_slots(n) {
        let z = l.iter().filter(|s| s.crosses_slot(i, j)).count() as i64;
        g.set_weight(i, j, pow2(1 - z))?;
    }
    // Self-check: each family cut has weight exactly 1, the mincut set is
    // exactly L, and the dimension is full.
    for s in l {
        if cut_weight(&g, s) != Rat::one() {
            return Err(Error::VerificationFailed(format!(
                "family cut {:?} has weight {}",
                s.members(),
                cut_weight(&g, s)
            )));
        }
    }
    if !g.is_complete_weighted() {
        return Err(Error::VerificationFailed("graph is not complete".into()));
    }
    let report = mincuts_with_cap(&g, DEFAULT_CAP)?;
    let mut expected: Vec<Shore> = l.to_vec();
    expected.sort();
    if report.lambda != Rat::one() || report.mincuts != expected {
        return Err(Error::VerificationFailed(
            "mincut set differs from the input family".into(),
        ));
    }
    let cdim = cut_dimension_with_cap(&g, DEFAULT_CAP)?;
    if cdim != 2 * n - 3 {
        return Err(Error::VerificationFailed(format!(
            "cut dimension {cdim}, expected {}",
            2 * n - 3
        )));
    }
    Ok(ConstructionReport {
        graph: g,
        expected_lambda: Rat::one(),
        expected_cdim: 2 * n - 3,
        tag: "explicit-from-family".into(),
    })
}

/// Complete weighted graph on n vertices with mincut weight 1, every star
/// cut a mincut, and cut dimension 2n-3. Built by repeatedly gluing a
/// half-weight triangle onto the lowest-indexed vertex.
pub fn merge_construction(n: usize) -> Result<ConstructionReport> {
    let g = merge_construction_graph(n)?;
    let report = mincuts_with_cap(&g, DEFAULT_CAP)?;
    if report.lambda != Rat::one() {
        return Err(Error::VerificationFailed(format!(
            "mincut weight {}, expected 1",
            report.lambda
        )));
    }
    for v in 1..n {
        let s = Shore::new([v], n)?;
        if !report.mincuts.contains(&s) {
            return Err(Error::VerificationFailed(format!(
                "star cut at {v} is not a mincut"
            )));
        }
    }
    // Star cut at vertex 0 = shore {1..n-1}, also required.
    if n > 2 && !report.mincuts.contains(&Shore::new(1..n, n)?) {
        return Err(Error::VerificationFailed("star cut at 0 is not a mincut".into()));
    }
    let cdim = cut_dimension_with_cap(&g, DEFAULT_CAP)?;
    if cdim != 2 * n - 3 {
        return Err(Error::VerificationFailed(format!(
            "cut dimension {cdim}, expected {}",
            2 * n - 3
        )));
    }
    Ok(ConstructionReport {
        graph: g,
        expected_lambda: Rat::one(),
        expected_cdim: 2 * n - 3,
        tag: "merge-construction".into(),
    })
}

fn merge_construction_graph(n: usize) -> Result<Graph> {
    match n {
        0 | 1 => Err(Error::InvalidParameter("need n >= 2".into())),
        2 => Graph::new(2, vec![rat(1)]),
        3 => complete(3, &ratio(1, 2)),
        _ => {
            let prev = merge_construction_graph(n - 1)?;
            let tri = complete(3, &ratio(1, 2))?;
            // Glue at vertex 0 of the smaller graph; its star weight is 1
            // by induction, as is every star weight of the triangle.
            merge(&prev, 0, &tri, 0)
        }
    }
}

/// The non-star mincut created by the last gluing step: the two triangle
/// vertices appended at the end. Defined for n >= 4.
pub fn merge_construction_cut(n: usize) -> Result<Shore> {
    if n < 4 {
        return Err(Error::InvalidParameter(
            "the glued cut needs n >= 4".into(),
        ));
    }
    Shore::new([n - 2, n - 1], n)
}

/// Direct union of k unit-weight 4-cliques sharing a hub vertex 0; block i
/// occupies vertices 3i+1 .. 3i+3.
pub fn k4_union(k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::InvalidParameter("need k >= 1".into()));
    }
    let n = 3 * k + 1;
    let mut g = Graph::zero(n)?;
    for i in 0..k {
        let block = [3 * i + 1, 3 * i + 2, 3 * i + 3];
        for (a, &x) in block.iter().enumerate() {
            g.set_weight(0, x, rat(1))?;
            for &y in &block[a + 1..] {
                g.set_weight(x, y, rat(1))?;
            }
        }
    }
    Ok(g)
}

/// Unit cycle 0-1-..-(n-1)-0 with every chord weighted
/// eps = 2(alpha-1)/C(n,2). All cuts along the cycle then have weight at
/// most 2*alpha, and together they span all edge slots.
pub fn cycle_plus_eps(n: usize, alpha: &Rat) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter("need n >= 3".into()));
    }
    if *alpha <= Rat::one() {
        return Err(Error::InvalidParameter(format!(
            "alpha must exceed 1, got {alpha}"
        )));
    }
    let slots = rat((n * (n - 1) / 2) as i64);
    let eps = rat(2) * (alpha - Rat::one()) / slots;
    let mut g = Graph::new(n, vec![eps; n * (n - 1) / 2])?;
    for v in 0..n {
        g.set_weight(v, (v + 1) % n, rat(1))?;
    }
    Ok(g)
}

/// Fixed 8-vertex example: four weight-2 edges pairing up consecutive
/// vertices, eight unit edges. Mincut weight 4; the mincut set is the 8
/// star cuts plus five disconnected non-star cuts; cut dimension 11.
pub fn fixture_fig8() -> Graph {
    let mut g = Graph::zero(8).unwrap();
    for (i, j) in [(0, 1), (2, 3), (4, 5), (6, 7)] {
        g.set_weight(i, j, rat(2)).unwrap();
    }
    for (i, j) in [
        (0, 2),
        (0, 6),
        (1, 3),
        (1, 5),
        (2, 4),
        (3, 7),
        (4, 6),
        (5, 7),
    ] {
        g.set_weight(i, j, rat(1)).unwrap();
    }
    g
}

/// Fixed 5-vertex example: the graph each half of fixture_fig8 contracts
/// to. Mincut weight 4, cut dimension 7.
pub fn fixture_fig2() -> Graph {
    let mut g = Graph::zero(5).unwrap();
    for (i, j) in [(0, 1), (2, 3)] {
        g.set_weight(i, j, rat(2)).unwrap();
    }
    for (i, j) in [(0, 2), (0, 4), (1, 3), (1, 4), (2, 4), (3, 4)] {
        g.set_weight(i, j, rat(1)).unwrap();
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::{cdim_alpha, cut_dimension, mincuts};
    use crate::laminar::random_maximal_cross_free;

    #[test]
    fn cycle_family() {
        let c5 = cycle(5).unwrap();
        let report = mincuts(&c5).unwrap();
        assert_eq!(report.lambda, rat(2));
        assert_eq!(cut_dimension(&c5).unwrap(), 5);
        let c2 = cycle(2).unwrap();
        assert_eq!(c2.weight(0, 1).unwrap(), &rat(2));
        assert_eq!(cut_dimension(&c2).unwrap(), 1);
    }

    #[test]
    fn complete_graphs() {
        let g = complete(3, &ratio(1, 2)).unwrap();
        let report = mincuts(&g).unwrap();
        assert_eq!(report.lambda, rat(1));
        assert_eq!(cut_dimension(&g).unwrap(), 3);

        let k4 = complete(4, &rat(1)).unwrap();
        assert_eq!(mincuts(&k4).unwrap().lambda, rat(3));
        assert_eq!(cut_dimension(&k4).unwrap(), 4);

        assert!(complete(3, &rat(0)).is_err());
    }

    #[test]
    fn explicit_n3_gives_half_weights() {
        let l = vec![
            Shore::new([1], 3).unwrap(),
            Shore::new([2], 3).unwrap(),
            Shore::new([1, 2], 3).unwrap(),
        ];
        let report = explicit_from_family(&l).unwrap();
        assert_eq!(report.graph, complete(3, &ratio(1, 2)).unwrap());
    }

    #[test]
    fn explicit_random_families() {
        for n in 3..=6 {
            for seed in [1u64, 7, 23] {
                let l = random_maximal_cross_free(n, seed).unwrap();
                let report = explicit_from_family(&l).unwrap();
                assert_eq!(report.expected_cdim, 2 * n - 3);
                // Every edge lies in at least two family cuts, so all
                // weights are dyadic and at most 1/2.
                assert!(report
                    .graph
                    .weights()
                    .iter()
                    .all(|w| *w <= ratio(1, 2)));
            }
        }
    }

    #[test]
    fn explicit_rejects_non_maximal() {
        let l = vec![Shore::new([1], 4).unwrap(), Shore::new([2], 4).unwrap()];
        assert!(explicit_from_family(&l).is_err());
    }

    #[test]
    fn merge_construction_small() {
        assert_eq!(
            merge_construction(3).unwrap().graph,
            complete(3, &ratio(1, 2)).unwrap()
        );
        let r4 = merge_construction(4).unwrap();
        assert_eq!(r4.expected_cdim, 5);
        assert_eq!(cut_dimension(&r4.graph).unwrap(), 5);
        let r8 = merge_construction(8).unwrap();
        assert_eq!(cut_dimension(&r8.graph).unwrap(), 13);
    }

    #[test]
    fn merge_construction_cut_is_a_mincut() {
        let r = merge_construction(6).unwrap();
        let z = merge_construction_cut(6).unwrap();
        assert_eq!(cut_weight(&r.graph, &z), rat(1));
        assert!(!z.is_star());
    }

    #[test]
    fn k4_union_shapes() {
        let g1 = k4_union(1).unwrap();
        assert_eq!(g1, complete(4, &rat(1)).unwrap());
        let g2 = k4_union(2).unwrap();
        assert_eq!(g2.n(), 7);
        assert_eq!(g2.edge_count(), 12);
        let report = mincuts(&g2).unwrap();
        assert_eq!(report.lambda, rat(3));
        assert_eq!(cut_dimension(&g2).unwrap(), 8); // 4 per block
    }

    #[test]
    fn k4_union_block_cut_weights() {
        // Within one block: the 4 star cuts weigh 3, the three 2-2 splits
        // involving the hub weigh 4.
        let g = k4_union(2).unwrap();
        let n = g.n();
        for v in [1usize, 2, 3] {
            assert_eq!(cut_weight(&g, &Shore::new([v], n).unwrap()), rat(3));
        }
        assert_eq!(cut_weight(&g, &Shore::new([1, 2, 3], n).unwrap()), rat(3));
        for pair in [[1usize, 2], [1, 3], [2, 3]] {
            assert_eq!(cut_weight(&g, &Shore::new(pair, n).unwrap()), rat(4));
        }
    }

    #[test]
    fn cycle_plus_eps_properties() {
        let alpha = ratio(3, 2);
        let g = cycle_plus_eps(5, &alpha).unwrap();
        assert_eq!(g.weight(0, 2).unwrap(), &ratio(1, 10));
        assert_eq!(cdim_alpha(&g, &alpha).unwrap(), 10);
        // Cuts along the cycle stay within 2*alpha.
        let s = Shore::new([1, 2], 5).unwrap();
        assert!(cut_weight(&g, &s) <= rat(2) * &alpha);
        assert!(cycle_plus_eps(5, &rat(1)).is_err());
    }

    #[test]
    fn fig8_fixture_numbers() {
        let g = fixture_fig8();
        assert_eq!(g.n(), 8);
        assert_eq!(g.edge_count(), 12);
        let report = mincuts(&g).unwrap();
        assert_eq!(report.lambda, rat(4));
        assert_eq!(report.mincuts.len(), 13);
        assert_eq!(cut_dimension(&g).unwrap(), 11);
        // The five non-star mincuts.
        let nonstar: Vec<Shore> = report
            .mincuts
            .iter()
            .copied()
            .filter(|s| !s.is_star())
            .collect();
        let expected: Vec<Shore> = [
            vec![0usize, 1],
            vec![2, 3],
            vec![4, 5],
            vec![6, 7],
            vec![0, 1, 2, 3],
        ]
        .into_iter()
        .map(|v| Shore::new(v, 8).unwrap())
        .collect();
        for s in &expected {
            assert!(nonstar.contains(s));
        }
        assert_eq!(nonstar.len(), expected.len());
    }

    #[test]
    fn fig2_fixture_numbers() {
        let g = fixture_fig2();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edge_count(), 8);
        assert_eq!(mincuts(&g).unwrap().lambda, rat(4));
        assert_eq!(cut_dimension(&g).unwrap(), 7);
    }
}
