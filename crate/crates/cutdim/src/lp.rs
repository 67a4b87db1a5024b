//! Exact rational linear programming (two-phase simplex with Bland's rule)
//! and the query adversary built on it: the best perturbation value of a
//! cut against a query matrix, with duality certificates and fooling-pair
//! extraction.

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::enumeration::{enumerate_cuts_with_cap, mincuts_with_cap, DEFAULT_CAP};
use crate::graph::{char_vector, cut_weight, slot_count, Graph, Shore};
use crate::linalg::{solve, RationalMatrix};
use crate::rational::{parse_rat, rat_str, rat_vec_serde, Rat};
use crate::{Error, Result};

/// maximize <objective, x> subject to eq * x = rhs and x <= upper
/// componentwise; variables are otherwise free.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub objective: Vec<Rat>,
    pub eq: RationalMatrix,
    pub rhs: Vec<Rat>,
    pub upper: Vec<Rat>,
}

#[derive(Debug, Clone)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub value: Rat,
    pub x: Vec<Rat>,
    /// Duals of the equality rows, then of the upper-bound rows.
    pub dual_eq: Vec<Rat>,
    pub dual_upper: Vec<Rat>,
}

impl LinearProgram {
    fn check(&self) -> Result<()> {
        let n = self.objective.len();
        if self.eq.cols() != n && self.eq.rows() != 0 {
            return Err(Error::DimensionMismatch("constraint column count".into()));
        }
        if self.rhs.len() != self.eq.rows() || self.upper.len() != n {
            return Err(Error::DimensionMismatch("rhs or bound length".into()));
        }
        Ok(())
    }
}

/// Solves the LP exactly. Free variables are split into differences of
/// nonnegative parts and the bounds become slack rows, then a two-phase
/// tableau simplex with Bland's anti-cycling rule runs on the standard
/// form. Duals come from solving against the optimal basis.
pub fn lp_solve(lp: &LinearProgram) -> Result<LpOutcome> {
    lp.check()?;
    let n = lp.objective.len();
    let m1 = lp.eq.rows();
    let m = m1 + n;
    let cols = 3 * n; // x+ | x- | slack
    // Standard-form rows: [A, -A, 0] = rhs ; [I, -I, I] = upper.
    let mut mat = RationalMatrix::zeros(m, cols);
    let mut b = Vec::with_capacity(m);
    for i in 0..m1 {
        for j in 0..n {
            mat.set(i, j, lp.eq.get(i, j).clone());
            mat.set(i, n + j, -lp.eq.get(i, j));
        }
        b.push(lp.rhs[i].clone());
    }
    for j in 0..n {
        mat.set(m1 + j, j, Rat::one());
        mat.set(m1 + j, n + j, -Rat::one());
        mat.set(m1 + j, 2 * n + j, Rat::one());
        b.push(lp.upper[j].clone());
    }
    let mut c = vec![Rat::zero(); cols];
    for j in 0..n {
        c[j] = lp.objective[j].clone();
        c[n + j] = -lp.objective[j].clone();
    }
    let std_out = simplex_standard(mat, b, c)?;
    match std_out {
        StdOutcome::Infeasible => Ok(LpOutcome::Infeasible),
        StdOutcome::Unbounded => Ok(LpOutcome::Unbounded),
        StdOutcome::Optimal { x, value, y } => {
            let xv: Vec<Rat> = (0..n).map(|j| &x[j] - &x[n + j]).collect();
            Ok(LpOutcome::Optimal(LpSolution {
                value,
                x: xv,
                dual_eq: y[..m1].to_vec(),
                dual_upper: y[m1..].to_vec(),
            }))
        }
    }
}

enum StdOutcome {
    Optimal { x: Vec<Rat>, value: Rat, y: Vec<Rat> },
    Infeasible,
    Unbounded,
}

/// maximize <c, x>, mat * x = b, x >= 0.
fn simplex_standard(mut mat: RationalMatrix, mut b: Vec<Rat>, c: Vec<Rat>) -> Result<StdOutcome> {
    let n = mat.cols();
    let m = mat.rows();
    // Make the rhs nonnegative; remember flipped rows for dual signs.
    let mut flipped = vec![false; m];
    for i in 0..m {
        if b[i] < Rat::zero() {
            flipped[i] = true;
            b[i] = -b[i].clone();
            for j in 0..n {
                mat.set(i, j, -mat.get(i, j));
            }
        }
    }
    // Tableau over columns 0..n plus one artificial per row, rhs last.
    let width = n + m + 1;
    let mut t = RationalMatrix::zeros(m, width);
    for i in 0..m {
        for j in 0..n {
            t.set(i, j, mat.get(i, j).clone());
        }
        t.set(i, n + i, Rat::one());
        t.set(i, width - 1, b[i].clone());
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Phase 1: minimize the artificial sum.
    let mut c1 = vec![Rat::zero(); n + m];
    for j in n..n + m {
        c1[j] = -Rat::one();
    }
    // Artificials only ever leave the basis: entering is limited to the
    // real columns.
    if run_simplex(&mut t, &mut basis, &c1, n)? {
        return Err(Error::VerificationFailed(
            "feasibility phase reported unbounded".into(),
        ));
    }
    let phase1: Rat = basis
        .iter()
        .enumerate()
        .map(|(i, &j)| &c1[j] * t.get(i, width - 1))
        .sum();
    if !phase1.is_zero() {
        return Ok(StdOutcome::Infeasible);
    }
    // Drive artificials out of the basis; redundant rows get dual zero via
    // the kept-rows solve below, so just pivot where possible.
    let mut drop_rows: Vec<usize> = Vec::new();
    for i in 0..m {
        if basis[i] >= n {
            match (0..n).find(|&j| !t.get(i, j).is_zero()) {
                Some(j) => pivot(&mut t, &mut basis, i, j),
                None => drop_rows.push(i),
            }
        }
    }

    // Phase 2 on the original objective, artificials barred from entering.
    let mut c2 = vec![Rat::zero(); n + m];
    c2[..n].clone_from_slice(&c);
    let active: Vec<usize> = (0..m).filter(|i| !drop_rows.contains(i)).collect();
    if run_simplex_rows(&mut t, &mut basis, &c2, n, &active)? {
        return Ok(StdOutcome::Unbounded);
    }

    let mut x = vec![Rat::zero(); n];
    for (i, &j) in basis.iter().enumerate() {
        if j < n {
            x[j] = t.get(i, width - 1).clone();
        }
    }
    let value: Rat = c.iter().zip(&x).map(|(a, b)| a * b).sum();
    // Duals: solve B^T y = c_B over the kept rows of the flipped system,
    // dropped (redundant) rows contribute zero.
    let bt = RationalMatrix::from_fn(active.len(), active.len(), |a, bcol| {
        let row = active[a];
        let col = basis[active[bcol]];
        if col < n {
            mat.get(row, col).clone()
        } else if col == n + row {
            Rat::one() // artificial still basic on a kept row
        } else {
            Rat::zero()
        }
    })
    .transpose();
    let cb: Vec<Rat> = active.iter().map(|&i| c2[basis[i]].clone()).collect();
    let yk = solve(&bt, &cb)?.ok_or_else(|| {
        Error::VerificationFailed("singular basis during dual extraction".into())
    })?;
    let mut y = vec![Rat::zero(); m];
    for (a, &row) in active.iter().enumerate() {
        y[row] = if flipped[row] { -yk[a].clone() } else { yk[a].clone() };
    }
    Ok(StdOutcome::Optimal { x, value, y })
}

/// Bland-rule simplex sweep over all rows; returns true when unbounded.
fn run_simplex(
    t: &mut RationalMatrix,
    basis: &mut [usize],
    c: &[Rat],
    enter_limit: usize,
) -> Result<bool> {
    let rows: Vec<usize> = (0..t.rows()).collect();
    run_simplex_rows(t, basis, c, enter_limit, &rows)
}

fn run_simplex_rows(
    t: &mut RationalMatrix,
    basis: &mut [usize],
    c: &[Rat],
    enter_limit: usize,
    rows: &[usize],
) -> Result<bool> {
    let width = t.cols();
    loop {
        // Reduced costs relative to the current basis, smallest improving
        // index enters (Bland).
        let mut entering = None;
        'cols: for j in 0..enter_limit {
            if basis.iter().any(|&bj| bj == j) {
                continue;
            }
            let mut r = c[j].clone();
            for &i in rows {
                let cb = &c[basis[i]];
                if !cb.is_zero() && !t.get(i, j).is_zero() {
                    r -= cb * t.get(i, j);
                }
            }
            if r > Rat::zero() {
                entering = Some(j);
                break 'cols;
            }
        }
        let Some(j) = entering else { return Ok(false) };
        // Ratio test over the active rows, Bland tie-break on basis index.
        let mut leave: Option<(usize, Rat)> = None;
        for &i in rows {
            let a = t.get(i, j);
            if *a <= Rat::zero() {
                continue;
            }
            let ratio = t.get(i, width - 1) / a;
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let Some((i, _)) = leave else { return Ok(true) };
        pivot(t, basis, i, j);
    }
}

fn pivot(t: &mut RationalMatrix, basis: &mut [usize], row: usize, col: usize) {
    let width = t.cols();
    let p = t.get(row, col).clone();
    for j in 0..width {
        let v = t.get(row, j) / &p;
        t.set(row, j, v);
    }
    for i in 0..t.rows() {
        if i == row {
            continue;
        }
        let f = t.get(i, col).clone();
        if f.is_zero() {
            continue;
        }
        for j in 0..width {
            let v = t.get(i, j) - &f * t.get(row, j);
            t.set(i, j, v);
        }
    }
    basis[row] = col;
}

/// Optimal value and certificates of the perturbation LP of a cut S
/// against the query matrix A: maximize <S, z> over A z = 0, z <= w.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlphaCertificate {
    #[serde(with = "crate::rational::rat_serde")]
    pub value: Rat,
    #[serde(with = "rat_vec_serde")]
    pub z: Vec<Rat>,
    #[serde(with = "rat_vec_serde")]
    pub v: Vec<Rat>,
    #[serde(with = "rat_vec_serde")]
    pub u: Vec<Rat>,
}

impl AlphaCertificate {
    /// Recomputes every invariant from scratch.
    pub fn verify(&self, w: &[Rat], a: &RationalMatrix, s_vec: &[Rat]) -> Result<()> {
        if a.rows() > 0 && a.mul_vec(&self.z)?.iter().any(|x| !x.is_zero()) {
            return Err(Error::VerificationFailed("A z != 0".into()));
        }
        if self.z.iter().zip(w).any(|(z, w)| z > w) {
            return Err(Error::VerificationFailed("z exceeds w".into()));
        }
        if self.u.iter().any(|u| *u < Rat::zero()) {
            return Err(Error::VerificationFailed("negative dual slack".into()));
        }
        // u = S - A^T v componentwise.
        let atv = if a.rows() > 0 {
            a.transpose().mul_vec(&self.v)?
        } else {
            vec![Rat::zero(); s_vec.len()]
        };
        for j in 0..s_vec.len() {
            if self.u[j] != &s_vec[j] - &atv[j] {
                return Err(Error::VerificationFailed("u != S - A^T v".into()));
            }
        }
        let primal: Rat = s_vec.iter().zip(&self.z).map(|(a, b)| a * b).sum();
        let dual: Rat = self.u.iter().zip(w).map(|(a, b)| a * b).sum();
        if primal != self.value || dual != self.value {
            return Err(Error::VerificationFailed("duality gap".into()));
        }
        Ok(())
    }
}

/// alpha(w, A, S): how much the weight of the cut S can be driven down by
/// a perturbation invisible to every query row of A.
pub fn alpha(g: &Graph, a: &RationalMatrix, s: &Shore) -> Result<AlphaCertificate> {
    let n_slots = slot_count(g.n());
    if a.rows() > 0 && a.cols() != n_slots {
        return Err(Error::DimensionMismatch(format!(
            "query matrix has {} columns, expected {}",
            a.cols(),
            n_slots
        )));
    }
    let s_vec: Vec<Rat> = char_vector(g, s)
        .full
        .iter()
        .map(|&b| Rat::from_integer((b as i64).into()))
        .collect();
    let lp = LinearProgram {
        objective: s_vec.clone(),
        eq: if a.rows() > 0 {
            a.clone()
        } else {
            RationalMatrix::zeros(0, n_slots)
        },
        rhs: vec![Rat::zero(); a.rows()],
        upper: g.weights().to_vec(),
    };
    match lp_solve(&lp)? {
        LpOutcome::Optimal(sol) => {
            let u: Vec<Rat> = {
                let atv = if a.rows() > 0 {
                    a.transpose().mul_vec(&sol.dual_eq)?
                } else {
                    vec![Rat::zero(); n_slots]
                };
                s_vec.iter().zip(&atv).map(|(s, t)| s - t).collect()
            };
            let cert = AlphaCertificate {
                value: sol.value,
                z: sol.x,
                v: sol.dual_eq,
                u,
            };
            cert.verify(g.weights(), a, &s_vec)?;
            Ok(cert)
        }
        LpOutcome::Unbounded => Err(Error::VerificationFailed(
            "perturbation value unbounded".into(),
        )),
        LpOutcome::Infeasible => Err(Error::VerificationFailed(
            "z = 0 should always be feasible".into(),
        )),
    }
}

/// A graph indistinguishable from G under every query of A but with a
/// strictly smaller mincut weight.
#[derive(Debug, Clone)]
pub struct FoolingPair {
    pub cut: Shore,
    pub z: Vec<Rat>,
    pub g_prime: Graph,
    pub margin: Rat,
}

/// Scans the cuts of G in increasing weight order looking for one whose
/// perturbation value exceeds its slack w(S) - lambda; packages the first
/// hit as an independently rechecked fooling pair.
pub fn find_fooling(g: &Graph, a: &RationalMatrix) -> Result<Option<FoolingPair>> {
    let report = mincuts_with_cap(g, DEFAULT_CAP)?;
    let lambda = report.lambda;
    let mut cuts = enumerate_cuts_with_cap(g, DEFAULT_CAP)?;
    cuts.sort_by_key(|s| (cut_weight(g, s), *s));
    for s in cuts {
        let cert = alpha(g, a, &s)?;
        let slack = cut_weight(g, &s) - &lambda;
        if cert.value <= slack {
            continue;
        }
        let w_prime: Vec<Rat> = g
            .weights()
            .iter()
            .zip(&cert.z)
            .map(|(w, z)| w - z)
            .collect();
        let g_prime = Graph::new(g.n(), w_prime)?;
        // Independent recheck: queries agree and the mincut really drops.
        if a.rows() > 0 {
            let qw = a.mul_vec(g.weights())?;
            let qp = a.mul_vec(g_prime.weights())?;
            if qw != qp {
                return Err(Error::VerificationFailed("query answers differ".into()));
            }
        }
        let new_lambda = mincuts_with_cap(&g_prime, DEFAULT_CAP)?.lambda;
        if new_lambda >= lambda {
            return Err(Error::VerificationFailed(
                "perturbed graph kept its mincut weight".into(),
            ));
        }
        return Ok(Some(FoolingPair {
            cut: s,
            z: cert.z,
            g_prime,
            margin: cert.value - slack,
        }));
    }
    Ok(None)
}

/// The all-cuts matrix: one full-slot characteristic row per canonical
/// shore, in shore order.
pub fn cut_matrix(g: &Graph) -> Result<RationalMatrix> {
    let cuts = enumerate_cuts_with_cap(g, DEFAULT_CAP)?;
    Ok(RationalMatrix::from_fn(cuts.len(), slot_count(g.n()), |i, j| {
        Rat::from_integer((char_vector(g, &cuts[i]).full[j] as i64).into())
    }))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QueryMatrixJson {
    pub rows: Vec<Vec<String>>,
}

pub fn query_matrix_from_json(j: &QueryMatrixJson) -> Result<RationalMatrix> {
    let rows = j
        .rows
        .iter()
        .map(|r| r.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    RationalMatrix::from_rows(rows)
}

pub fn query_matrix_to_json(m: &RationalMatrix) -> QueryMatrixJson {
    QueryMatrixJson {
        rows: (0..m.rows())
            .map(|i| m.row(i).iter().map(rat_str).collect())
            .collect(),
    }
}
