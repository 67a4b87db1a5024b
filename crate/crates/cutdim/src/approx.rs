//! Certificates around the one-sided row-by-row l1-approximate rank of cut
//! matrices: perturbation validity, the paired-column rank-preservation
//! lemma checker, and the rank pipeline for hub-fused 4-clique unions.

use num::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::enumeration::{cut_dimension_with_cap, DEFAULT_CAP};
use crate::graph::Graph;
use crate::linalg::RationalMatrix;
use crate::rational::{rat, ratio, Rat};
use crate::{Error, Result};

/// The 7x6 all-cuts matrix of the unweighted 4-clique in its bespoke fixed
/// row and column order (stars first, then the 2-2 splits).
pub fn base_x() -> RationalMatrix {
    let rows: [[i64; 6]; 7] = [
        [1, 1, 1, 0, 0, 0],
        [1, 0, 0, 1, 1, 0],
        [0, 1, 0, 1, 0, 1],
        [0, 0, 1, 0, 1, 1],
        [0, 1, 1, 1, 1, 0],
        [1, 0, 1, 1, 0, 1],
        [1, 1, 0, 0, 1, 1],
    ];
    RationalMatrix::from_fn(7, 6, |i, j| rat(rows[i][j]))
}

/// Bespoke-order column p of base_x = lexicographic edge slot
/// K4_EDGE_PERM[p] of the 4-clique with the hub as vertex 0.
pub const K4_EDGE_PERM: [usize; 6] = [3, 4, 0, 5, 1, 2];
/// Bespoke-order row p of base_x = shore-mask-order cut K4_ROW_PERM[p].
pub const K4_ROW_PERM: [usize; 7] = [0, 1, 3, 6, 2, 4, 5];

/// Candidate one-sided approximation M - P of a cut-type matrix M, with
/// per-row weighted l1 budgets c.
#[derive(Debug, Clone)]
pub struct PerturbationInstance {
    pub base: RationalMatrix,
    pub w: Vec<Rat>,
    pub c: Vec<Rat>,
    pub p: RationalMatrix,
}

#[derive(Debug, Clone)]
pub struct ValidityReport {
    pub valid: bool,
    /// c(i) minus the weighted mass spent in row i; negative when the row
    /// overspends.
    pub row_slack: Vec<Rat>,
}

/// P must be entrywise nonnegative and each row's weighted mass
/// sum_j w(j) P(i,j) must fit within the row budget c(i).
pub fn perturbation_valid(inst: &PerturbationInstance) -> Result<ValidityReport> {
    let (rows, cols) = (inst.base.rows(), inst.base.cols());
    if inst.p.rows() != rows || inst.p.cols() != cols {
        return Err(Error::DimensionMismatch("perturbation shape".into()));
    }
    if inst.w.len() != cols || inst.c.len() != rows {
        return Err(Error::DimensionMismatch("weight or budget length".into()));
    }
    let mut valid = true;
    let mut row_slack = Vec::with_capacity(rows);
    for i in 0..rows {
        let mut mass = Rat::zero();
        for j in 0..cols {
            let e = inst.p.get(i, j);
            if *e < Rat::zero() {
                valid = false;
            }
            mass += &inst.w[j] * e;
        }
        let slack = &inst.c[i] - mass;
        if slack < Rat::zero() {
            valid = false;
        }
        row_slack.push(slack);
    }
    Ok(ValidityReport { valid, row_slack })
}

/// Rows with zero budget cannot be perturbed at all, so the exact cut
/// dimension lower-bounds any approximate rank of the cut matrix.
pub fn cdim_lower_via_mincuts(g: &Graph) -> Result<usize> {
    cut_dimension_with_cap(g, DEFAULT_CAP)
}

/// Swaps the columns within each consecutive pair (2j, 2j+1).
pub fn column_swap_pairs(m: &RationalMatrix) -> Result<RationalMatrix> {
    if m.cols() % 2 != 0 {
        return Err(Error::DimensionMismatch("odd column count".into()));
    }
    Ok(RationalMatrix::from_fn(m.rows(), m.cols(), |i, j| {
        m.get(i, j ^ 1).clone()
    }))
}

/// The fixed 3k x 2k frame: 2I on the first 2k rows, then -2 on each
/// column pair of the last k rows.
pub fn lem2k_b(k: usize) -> RationalMatrix {
    RationalMatrix::from_fn(3 * k, 2 * k, |i, j| {
        if i < 2 * k {
            if i == j {
                rat(2)
            } else {
                rat(0)
            }
        } else if j / 2 == i - 2 * k {
            rat(-2)
        } else {
            rat(0)
        }
    })
}

/// Rank preservation under paired nonnegative perturbations: for valid
/// (A1, A2) the matrix B + A1 - A2 keeps full column rank 2k.
///
/// Validity: A1, A2 >= 0; A2 equal on each column pair (the partner
/// property); every row of A1 + A2/2 sums to at most 1.
pub fn check_lem2k(k: usize, a1: &RationalMatrix, a2: &RationalMatrix) -> Result<bool> {
    if k == 0 {
        return Err(Error::InvalidParameter("need k >= 1".into()));
    }
    for (name, m) in [("A1", a1), ("A2", a2)] {
        if m.rows() != 3 * k || m.cols() != 2 * k {
            return Err(Error::DimensionMismatch(format!(
                "{name} must be {}x{}",
                3 * k,
                2 * k
            )));
        }
        for i in 0..3 * k {
            for j in 0..2 * k {
                if *m.get(i, j) < Rat::zero() {
                    return Err(Error::Precondition(format!("{name} has a negative entry")));
                }
            }
        }
    }
    for i in 0..3 * k {
        for j in 0..k {
            if a2.get(i, 2 * j) != a2.get(i, 2 * j + 1) {
                return Err(Error::Precondition("partner property violated".into()));
            }
        }
        let sum: Rat = (0..2 * k)
            .map(|j| a1.get(i, j) + a2.get(i, j) / rat(2))
            .sum();
        if sum > Rat::one() {
            return Err(Error::Precondition(format!("row {i} mass exceeds 1")));
        }
    }
    let b = lem2k_b(k);
    let m = RationalMatrix::from_fn(3 * k, 2 * k, |i, j| {
        b.get(i, j) + a1.get(i, j) - a2.get(i, j)
    });
    Ok(m.rank() == 2 * k)
}

/// Samples a valid (A1, A2) pair on a rational grid with denominators up
/// to `denom`. Deterministic in the seed.
pub fn random_lem2k_instance(
    k: usize,
    seed: u64,
    denom: u64,
) -> (RationalMatrix, RationalMatrix) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a1 = RationalMatrix::zeros(3 * k, 2 * k);
    let mut a2 = RationalMatrix::zeros(3 * k, 2 * k);
    for i in 0..3 * k {
        for j in 0..2 * k {
            a1.set(i, j, ratio(rng.gen_range(0..=denom) as i64, denom as i64));
        }
        for j in 0..k {
            let v = ratio(rng.gen_range(0..=denom) as i64, denom as i64);
            a2.set(i, 2 * j, v.clone());
            a2.set(i, 2 * j + 1, v);
        }
        // Scale the row down into its budget, sometimes saturating it.
        let mass: Rat = (0..2 * k)
            .map(|j| a1.get(i, j) + a2.get(i, j) / rat(2))
            .sum();
        if mass > Rat::zero() {
            let target = ratio(rng.gen_range(0..=denom) as i64, denom as i64);
            let scale = target / mass;
            for j in 0..2 * k {
                let v1 = a1.get(i, j) * &scale;
                a1.set(i, j, v1);
                let v2 = a2.get(i, j) * &scale;
                a2.set(i, j, v2);
            }
        }
    }
    (a1, a2)
}

#[derive(Debug, Clone)]
pub struct K4RankReport {
    pub pipeline_rank: usize,
    pub direct_rank: usize,
}

/// Rank of the perturbed distinguished-cut matrix of k hub-fused
/// 4-cliques, computed two ways.
///
/// `blocks[i]` perturbs the three weight-4 rows of block i on its own six
/// columns (bespoke order). Requirements: nonnegative, each row's total
/// mass at most 1 (all weights are 1 here). The pipeline reduces each
/// block by row-reducing its star rows and eliminating the last two
/// columns, leaving a 3x2 core per block; its rank plus 4k must agree
/// with the direct rank of the whole matrix, and both equal 6k exactly
/// when the perturbation respects the budgets.
pub fn check_k4_union_rank(k: usize, blocks: &[RationalMatrix]) -> Result<K4RankReport> {
    if k == 0 || blocks.len() != k {
        return Err(Error::InvalidParameter(format!(
            "need k >= 1 block perturbations, got {} for k = {k}",
            blocks.len()
        )));
    }
    for blk in blocks {
        if blk.rows() != 3 || blk.cols() != 6 {
            return Err(Error::DimensionMismatch("block perturbation must be 3x6".into()));
        }
        for i in 0..3 {
            let mut mass = Rat::zero();
            for j in 0..6 {
                if *blk.get(i, j) < Rat::zero() {
                    return Err(Error::Precondition("negative perturbation entry".into()));
                }
                mass += blk.get(i, j);
            }
            if mass > Rat::one() {
                return Err(Error::Precondition("row mass exceeds 1".into()));
            }
        }
    }
    let x = base_x();
    // Block-diagonal perturbed matrix: X per block, minus the block's
    // perturbation on its weight-4 rows.
    let mut m = RationalMatrix::zeros(7 * k, 6 * k);
    for (bi, blk) in blocks.iter().enumerate() {
        for r in 0..7 {
            for c in 0..6 {
                let mut v = x.get(r, c).clone();
                if r >= 4 {
                    v -= blk.get(r - 4, c);
                }
                m.set(7 * bi + r, 6 * bi + c, v);
            }
        }
    }
    let direct_rank = m.rank();

    // Pipeline: per block, row-reduce the four star rows (their
    // perturbation budget is zero, so they are untouched rows of X), then
    // add col1 - col2 - col3 into col4 and col0 - col2 - col3 into col5.
    // That zeroes the star rows outside their pivot columns, so the rank
    // splits into 4 per block plus the rank of the bottom-right cores.
    let mut p = m.clone();
    let all_cols: Vec<usize> = (0..6 * k).collect();
    for bi in 0..k {
        let star_rows: Vec<usize> = (7 * bi..7 * bi + 4).collect();
        let reduced = p.submatrix(&star_rows, &all_cols).rref();
        for (a, &r) in star_rows.iter().enumerate() {
            for c in 0..6 * k {
                p.set(r, c, reduced.get(a, c).clone());
            }
        }
        let col = |j: usize| 6 * bi + j;
        for r in 0..7 * k {
            let v4 = p.get(r, col(4)) + p.get(r, col(1)) - p.get(r, col(2)) - p.get(r, col(3));
            let v5 = p.get(r, col(5)) + p.get(r, col(0)) - p.get(r, col(2)) - p.get(r, col(3));
            p.set(r, col(4), v4);
            p.set(r, col(5), v5);
        }
    }
    let core_rows: Vec<usize> = (0..7 * k).filter(|r| r % 7 >= 4).collect();
    let core_cols: Vec<usize> = (0..6 * k).filter(|c| c % 6 >= 4).collect();
    let w = p.submatrix(&core_rows, &core_cols);
    let pipeline_rank = 4 * k + w.rank();
    if pipeline_rank != direct_rank {
        return Err(Error::VerificationFailed(format!(
            "pipeline rank {pipeline_rank} disagrees with direct rank {direct_rank}"
        )));
    }
    Ok(K4RankReport {
        pipeline_rank,
        direct_rank,
    })
}

/// Samples one valid 3x6 block perturbation on a rational grid.
pub fn random_block_perturbation(seed: u64, denom: u64) -> RationalMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut blk = RationalMatrix::zeros(3, 6);
    for i in 0..3 {
        for j in 0..6 {
            blk.set(i, j, ratio(rng.gen_range(0..=denom) as i64, denom as i64));
        }
        let mass: Rat = (0..6).map(|j| blk.get(i, j).clone()).sum();
        if mass > Rat::zero() {
            let target = ratio(rng.gen_range(0..=denom) as i64, denom as i64);
            let scale = target / mass;
            for j in 0..6 {
                let v = blk.get(i, j) * &scale;
                blk.set(i, j, v);
            }
        }
    }
    blk
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{k4_union, merge_construction};
    use crate::graph::{char_vector, Shore};
    use crate::lp::cut_matrix;

    #[test]
    fn base_x_matches_the_4_clique_cut_matrix() {
        let g = k4_union(1).unwrap();
        let m = cut_matrix(&g).unwrap();
        let x = base_x();
        for p in 0..7 {
            for q in 0..6 {
                assert_eq!(x.get(p, q), m.get(K4_ROW_PERM[p], K4_EDGE_PERM[q]));
            }
        }
        assert_eq!(x.rank(), 6);
    }

    #[test]
    fn perturbation_validity_basics() {
        let base = base_x();
        let w = vec![rat(1); 6];
        // Budgets: cut weight minus mincut weight 3.
        let c = vec![
            rat(0),
            rat(0),
            rat(0),
            rat(0),
            rat(1),
            rat(1),
            rat(1),
        ];
        let zero = PerturbationInstance {
            base: base.clone(),
            w: w.clone(),
            c: c.clone(),
            p: RationalMatrix::zeros(7, 6),
        };
        let rep = perturbation_valid(&zero).unwrap();
        assert!(rep.valid);
        assert_eq!(rep.row_slack, c);

        // Any mass on a zero-budget (mincut) row invalidates.
        let mut p = RationalMatrix::zeros(7, 6);
        p.set(0, 0, ratio(1, 8));
        let inst = PerturbationInstance {
            base: base.clone(),
            w: w.clone(),
            c: c.clone(),
            p,
        };
        assert!(!perturbation_valid(&inst).unwrap().valid);

        // A weight-4 row carrying total mass exactly 1: valid, zero slack.
        let mut p = RationalMatrix::zeros(7, 6);
        p.set(4, 0, ratio(1, 2));
        p.set(4, 3, ratio(1, 2));
        let inst = PerturbationInstance { base, w, c, p };
        let rep = perturbation_valid(&inst).unwrap();
        assert!(rep.valid);
        assert!(rep.row_slack[4].is_zero());
    }

    #[test]
    fn cdim_lower_examples() {
        assert_eq!(cdim_lower_via_mincuts(&k4_union(1).unwrap()).unwrap(), 4);
        for n in [4usize, 6] {
            let g = merge_construction(n).unwrap().graph;
            assert_eq!(cdim_lower_via_mincuts(&g).unwrap(), 2 * n - 3);
        }
    }

    #[test]
    fn column_swap_is_an_involution() {
        let m = base_x();
        let s = column_swap_pairs(&m).unwrap();
        assert_eq!(column_swap_pairs(&s).unwrap(), m);
        assert_eq!(s.get(0, 0), m.get(0, 1));
    }

    #[test]
    fn lem2k_zero_perturbation() {
        for k in 1..=3 {
            let z = RationalMatrix::zeros(3 * k, 2 * k);
            assert!(check_lem2k(k, &z, &z).unwrap());
            assert_eq!(lem2k_b(k).rank(), 2 * k);
        }
    }

    #[test]
    fn lem2k_boundary_full_row() {
        // A2 saturating a type-I row with mass 2, A1 = 0.
        let k = 1;
        let a1 = RationalMatrix::zeros(3, 2);
        let mut a2 = RationalMatrix::zeros(3, 2);
        a2.set(0, 0, rat(1));
        a2.set(0, 1, rat(1));
        assert!(check_lem2k(k, &a1, &a2).unwrap());
    }

    #[test]
    fn lem2k_preconditions() {
        let k = 1;
        let zero = RationalMatrix::zeros(3, 2);
        let mut bad = RationalMatrix::zeros(3, 2);
        bad.set(0, 0, rat(-1));
        assert!(check_lem2k(k, &bad, &zero).is_err());
        // Partner property broken.
        let mut unpaired = RationalMatrix::zeros(3, 2);
        unpaired.set(0, 0, ratio(1, 2));
        assert!(check_lem2k(k, &zero, &unpaired).is_err());
        // Overspent row.
        let mut heavy = RationalMatrix::zeros(3, 2);
        heavy.set(0, 0, rat(1));
        heavy.set(0, 1, rat(1));
        assert!(check_lem2k(k, &heavy, &zero).is_err());
    }

    #[test]
    fn lem2k_random_sweep() {
        for k in 1..=3 {
            for seed in 0..25 {
                let (a1, a2) = random_lem2k_instance(k, seed, 8);
                assert!(check_lem2k(k, &a1, &a2).unwrap(), "k={k} seed={seed}");
            }
        }
    }

    #[test]
    fn k4_rank_zero_perturbation() {
        let rep = check_k4_union_rank(1, &[RationalMatrix::zeros(3, 6)]).unwrap();
        assert_eq!(rep.pipeline_rank, 6);
        let rep = check_k4_union_rank(2, &vec![RationalMatrix::zeros(3, 6); 2]).unwrap();
        assert_eq!(rep.pipeline_rank, 12);
    }

    #[test]
    fn k4_rank_random_perturbations() {
        for k in 1..=2 {
            for seed in 0..20u64 {
                let blocks: Vec<RationalMatrix> = (0..k)
                    .map(|i| random_block_perturbation(seed * 31 + i as u64, 8))
                    .collect();
                let rep = check_k4_union_rank(k, &blocks).unwrap();
                assert_eq!(rep.direct_rank, 6 * k, "k={k} seed={seed}");
            }
        }
    }

    #[test]
    fn k4_rank_boundary_saturated_rows() {
        // Every weight-4 row saturated on a single column.
        let mut blk = RationalMatrix::zeros(3, 6);
        for i in 0..3 {
            blk.set(i, i, rat(1));
        }
        let rep = check_k4_union_rank(1, &[blk]).unwrap();
        assert_eq!(rep.direct_rank, 6);
    }

    #[test]
    fn k4_rank_rejects_invalid() {
        let mut blk = RationalMatrix::zeros(3, 6);
        blk.set(0, 0, rat(2)); // mass 2 > 1
        assert!(check_k4_union_rank(1, &[blk]).is_err());
    }

    #[test]
    fn budgets_match_cut_weights() {
        // The weight-4 rows of base_x really are the weight-4 cuts of the
        // unweighted 4-clique under the fixed permutations.
        let g = k4_union(1).unwrap();
        let w = g.weights();
        for p in 4..7 {
            let shore_index = K4_ROW_PERM[p];
            let s = Shore::from_mask(((shore_index as u64) + 1) << 1, 4).unwrap();
            let cv = char_vector(&g, &s);
            let weight: Rat = cv
                .full
                .iter()
                .zip(w)
                .map(|(b, w)| Rat::from_integer((*b as i64).into()) * w)
                .sum();
            assert_eq!(weight, rat(4));
        }
    }
}
