//! Exhaustive cut enumeration: mincuts, near-mincuts, and cut dimension.
//!
//! Everything here walks all 2^(n-1) - 1 canonical shores, so the vertex
//! count is capped (default 16) to keep runs bounded.

use serde::{Deserialize, Serialize};

use crate::graph::{char_vector, cut_weight, Graph, Shore};
use crate::linalg::RationalMatrix;
use crate::rational::{rat_serde, Rat};
use crate::{Error, Result};

pub const DEFAULT_CAP: usize = 16;

/// All 2^(n-1) - 1 canonical shores of an n-vertex graph, in mask order.
pub fn enumerate_cuts(g: &Graph) -> Result<Vec<Shore>> {
    enumerate_cuts_with_cap(g, DEFAULT_CAP)
}

pub fn enumerate_cuts_with_cap(g: &Graph, cap: usize) -> Result<Vec<Shore>> {
    let n = g.n();
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    // Canonical shores are exactly the nonempty subsets of {1, .., n-1}.
    let mut shores = Vec::with_capacity((1usize << (n - 1)) - 1);
    for m in 1u64..(1 << (n - 1)) {
        shores.push(Shore::from_mask(m << 1, n)?);
    }
    Ok(shores)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MincutReport {
    #[serde(with = "rat_serde")]
    pub lambda: Rat,
    #[serde(skip)]
    pub mincuts: Vec<Shore>,
    pub mincut_shores: Vec<Vec<usize>>,
    pub all_cuts_count: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlphaReport {
    #[serde(with = "rat_serde")]
    pub alpha: Rat,
    #[serde(with = "rat_serde")]
    pub lambda: Rat,
    #[serde(skip)]
    pub cuts: Vec<Shore>,
    pub cut_shores: Vec<Vec<usize>>,
}

pub fn mincuts(g: &Graph) -> Result<MincutReport> {
    mincuts_with_cap(g, DEFAULT_CAP)
}

pub fn mincuts_with_cap(g: &Graph, cap: usize) -> Result<MincutReport> {
    let shores = enumerate_cuts_with_cap(g, cap)?;
    let all_cuts_count = shores.len();
    let mut lambda: Option<Rat> = None;
    let mut mins: Vec<Shore> = Vec::new();
    for s in shores {
        let w = cut_weight(g, &s);
        match &lambda {
            Some(l) if w > *l => {}
            Some(l) if w == *l => mins.push(s),
            _ => {
                lambda = Some(w);
                mins = vec![s];
            }
        }
    }
    let lambda = lambda.expect("n >= 2 guarantees at least one cut");
    mins.sort();
    Ok(MincutReport {
        lambda,
        mincut_shores: mins.iter().map(|s| s.members()).collect(),
        mincuts: mins,
        all_cuts_count,
    })
}

/// All cuts of weight at most alpha * lambda, in shore order.
pub fn alpha_near_cuts(g: &Graph, alpha: &Rat) -> Result<AlphaReport> {
    alpha_near_cuts_with_cap(g, alpha, DEFAULT_CAP)
}

pub fn alpha_near_cuts_with_cap(g: &Graph, alpha: &Rat, cap: usize) -> Result<AlphaReport> {
    if *alpha < Rat::from_integer(1.into()) {
        return Err(Error::InvalidParameter(format!(
            "alpha must be at least 1, got {alpha}"
        )));
    }
    let report = mincuts_with_cap(g, cap)?;
    let bound = alpha * &report.lambda;
    let mut cuts: Vec<Shore> = enumerate_cuts_with_cap(g, cap)?
        .into_iter()
        .filter(|s| cut_weight(g, s) <= bound)
        .collect();
    cuts.sort();
    Ok(AlphaReport {
        alpha: alpha.clone(),
        lambda: report.lambda,
        cut_shores: cuts.iter().map(|s| s.members()).collect(),
        cuts,
    })
}

/// Stacks the restricted characteristic vectors of the given cuts.
pub fn char_matrix(g: &Graph, cuts: &[Shore]) -> RationalMatrix {
    let rows: Vec<Vec<Rat>> = cuts
        .iter()
        .map(|s| {
            char_vector(g, s)
                .restricted
                .iter()
                .map(|&b| Rat::from_integer((b as i64).into()))
                .collect()
        })
        .collect();
    RationalMatrix::from_rows(rows).expect("uniform row lengths")
}

/// Same, but over all edge slots rather than positive-weight edges.
pub fn full_char_matrix(g: &Graph, cuts: &[Shore]) -> RationalMatrix {
    let rows: Vec<Vec<Rat>> = cuts
        .iter()
        .map(|s| {
            char_vector(g, s)
                .full
                .iter()
                .map(|&b| Rat::from_integer((b as i64).into()))
                .collect()
        })
        .collect();
    RationalMatrix::from_rows(rows).expect("uniform row lengths")
}

pub fn mincut_matrix(g: &Graph) -> Result<RationalMatrix> {
    let report = mincuts(g)?;
    Ok(char_matrix(g, &report.mincuts))
}

pub fn cut_dimension(g: &Graph) -> Result<usize> {
    cut_dimension_with_cap(g, DEFAULT_CAP)
}

pub fn cut_dimension_with_cap(g: &Graph, cap: usize) -> Result<usize> {
    let report = mincuts_with_cap(g, cap)?;
    Ok(char_matrix(g, &report.mincuts).rank())
}

pub fn cdim_alpha(g: &Graph, alpha: &Rat) -> Result<usize> {
    cdim_alpha_with_cap(g, alpha, DEFAULT_CAP)
}

pub fn cdim_alpha_with_cap(g: &Graph, alpha: &Rat, cap: usize) -> Result<usize> {
    let report = alpha_near_cuts_with_cap(g, alpha, cap)?;
    Ok(char_matrix(g, &report.cuts).rank())
}

/// Rank over all edge slots, including zero-weight ones. Relevant when a
/// near-mincut family is meant to span the full slot space.
pub fn cdim_alpha_full_slots(g: &Graph, alpha: &Rat) -> Result<usize> {
    let report = alpha_near_cuts(g, alpha)?;
    Ok(full_char_matrix(g, &report.cuts).rank())
}
