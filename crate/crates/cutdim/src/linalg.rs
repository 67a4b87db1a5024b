//! Dense exact-rational linear algebra: rank, RREF, rowspace membership
//! with witness, nullspace bases, linear solves, and diagonal dominance.

use std::fmt;

use num::{Signed, Zero};

use crate::rational::{bit_size, Rat};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::from_integer(1.into()));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(RationalMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RationalMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} cols, vector has {} entries",
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.forward_eliminate().len()
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> RationalMatrix {
        let mut m = self.clone();
        let pivots = m.forward_eliminate();
        // Back-substitute and scale pivots to 1.
        for (r, &pc) in pivots.iter().enumerate().rev() {
            let p = m.get(r, pc).clone();
            for j in pc..m.cols {
                let v = m.get(r, j) / &p;
                m.set(r, j, v);
            }
            for i in 0..r {
                let f = m.get(i, pc).clone();
                if f.is_zero() {
                    continue;
                }
                for j in pc..m.cols {
                    let v = m.get(i, j) - &f * m.get(r, j);
                    m.set(i, j, v);
                }
            }
        }
        m
    }

    /// Row echelon elimination in place. Returns pivot column per pivot row;
    /// rows are reordered so pivot rows come first. Pivot selection prefers
    /// the entry with the smallest bit size to limit coefficient growth.
    fn forward_eliminate(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let mut best: Option<(usize, u64)> = None;
            for i in r..self.rows {
                let v = self.get(i, c);
                if !v.is_zero() {
                    let sz = bit_size(v);
                    if best.map_or(true, |(_, b)| sz < b) {
                        best = Some((i, sz));
                    }
                }
            }
            let Some((pr, _)) = best else { continue };
            self.swap_rows(r, pr);
            let pivot = self.get(r, c).clone();
            for i in r + 1..self.rows {
                let f = self.get(i, c) / &pivot;
                if f.is_zero() {
                    continue;
                }
                self.set(i, c, Rat::zero());
                for j in c + 1..self.cols {
                    let v = self.get(i, j) - &f * self.get(r, j);
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// If `v` lies in the rowspace, returns coefficients `c` with
    /// `v = self^T c` exactly.
    pub fn in_rowspace(&self, v: &[Rat]) -> Result<Option<Vec<Rat>>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector length {} vs {} columns",
                v.len(),
                self.cols
            )));
        }
        // Solve self^T c = v.
        solve(&self.transpose(), v)
    }

    /// Basis of the right nullspace: vectors u with self * u = 0.
    pub fn nullspace_basis(&self) -> Vec<Vec<Rat>> {
        let r = self.rref();
        let mut pivot_col_of_row = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for i in 0..r.rows {
            if let Some(c) = (0..r.cols).find(|&c| !r.get(i, c).is_zero()) {
                pivot_col_of_row.push((i, c));
                is_pivot[c] = true;
            }
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut u = vec![Rat::zero(); self.cols];
            u[free] = Rat::from_integer(1.into());
            for &(i, pc) in &pivot_col_of_row {
                u[pc] = -r.get(i, free).clone();
            }
            basis.push(u);
        }
        basis
    }

    /// Strict diagonal dominance of row i: |A(i,i)| > sum of |A(i,j)|, j != i.
    pub fn is_sdd_row(&self, i: usize) -> Result<bool> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let diag = self.get(i, i).abs();
        let off: Rat = (0..self.cols)
            .filter(|&j| j != i)
            .map(|j| self.get(i, j).abs())
            .sum();
        Ok(diag > off)
    }

    pub fn vstack(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack column mismatch".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(RationalMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> RationalMatrix {
        Self::from_fn(row_idx.len(), col_idx.len(), |i, j| {
            self.get(row_idx[i], col_idx[j]).clone()
        })
    }

    pub fn kron(&self, other: &RationalMatrix) -> RationalMatrix {
        Self::from_fn(
            self.rows * other.rows,
            self.cols * other.cols,
            |i, j| self.get(i / other.rows, j / other.cols) * other.get(i % other.rows, j % other.cols),
        )
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strings: Vec<String> = self.data.iter().map(|x| x.to_string()).collect();
        let width = strings.iter().map(|s| s.len()).max().unwrap_or(1);
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                write!(f, " {:>width$}", strings[i * self.cols + j])?;
            }
            writeln!(f, " ]")?;
        }
        Ok(())
    }
}

/// Solves `a x = b` exactly. Returns None when inconsistent; free variables
/// are set to zero.
pub fn solve(a: &RationalMatrix, b: &[Rat]) -> Result<Option<Vec<Rat>>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "rhs length {} vs {} rows",
            b.len(),
            a.rows()
        )));
    }
    // Eliminate the augmented matrix [a | b].
    let aug = RationalMatrix::from_fn(a.rows(), a.cols() + 1, |i, j| {
        if j < a.cols() {
            a.get(i, j).clone()
        } else {
            b[i].clone()
        }
    });
    let r = aug.rref();
    let mut x = vec![Rat::zero(); a.cols()];
    for i in 0..r.rows() {
        let Some(pc) = (0..r.cols()).find(|&c| !r.get(i, c).is_zero()) else {
            continue;
        };
        if pc == a.cols() {
            return Ok(None); // 0 = nonzero
        }
        x[pc] = r.get(i, a.cols()).clone();
        // Free columns contribute zero, so x[pc] is just the rhs entry.
        for j in pc + 1..a.cols() {
            if !r.get(i, j).is_zero() && !x[j].is_zero() {
                let v = &x[pc] - r.get(i, j) * &x[j];
                x[pc] = v;
            }
        }
    }
    // rref rows are processed top-down; with free vars zero the pivot value
    // is exactly the augmented entry, but verify to be safe.
    match a.mul_vec(&x)? == b {
        true => Ok(Some(x)),
        false => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    /// The 7x6 all-cuts matrix of the unweighted 4-vertex complete graph
    /// in the fixed bespoke edge order used by the approximate-rank tests.
    pub(crate) fn base_x() -> RationalMatrix {
        m(&[
            &[1, 1, 1, 0, 0, 0],
            &[1, 0, 0, 1, 1, 0],
            &[0, 1, 0, 1, 0, 1],
            &[0, 0, 1, 0, 1, 1],
            &[0, 1, 1, 1, 1, 0],
            &[1, 0, 1, 1, 0, 1],
            &[1, 1, 0, 0, 1, 1],
        ])
    }

    #[test]
    fn rank_identity_and_base_x() {
        assert_eq!(RationalMatrix::identity(5).rank(), 5);
        let x = base_x();
        assert_eq!(x.rank(), 6);
        let first4 = x.submatrix(&[0, 1, 2, 3], &[0, 1, 2, 3, 4, 5]);
        assert_eq!(first4.rank(), 4);
    }

    #[test]
    fn rref_of_star_cut_rows() {
        // Pivoted form of the four star-cut rows of the 4-vertex fixture.
        let x = base_x();
        let first4 = x.submatrix(&[0, 1, 2, 3], &[0, 1, 2, 3, 4, 5]);
        let r = first4.rref();
        let expected = m(&[
            &[1, 0, 0, 0, 0, -1],
            &[0, 1, 0, 0, -1, 0],
            &[0, 0, 1, 0, 1, 1],
            &[0, 0, 0, 1, 1, 1],
        ]);
        assert_eq!(r, expected);
    }

    #[test]
    fn rank_equals_transpose_rank() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(a.rank(), a.transpose().rank());
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn in_rowspace_basic() {
        let x = base_x();
        let star = x.submatrix(&[0, 1, 2, 3], &[0, 1, 2, 3, 4, 5]);
        // A row is trivially in the rowspace.
        let coeffs = star.in_rowspace(&x.row(0).to_vec()).unwrap().unwrap();
        let rebuilt = star.transpose().mul_vec(&coeffs).unwrap();
        assert_eq!(rebuilt, x.row(0).to_vec());
        // A 2-shore cut row escapes the star span (the whole matrix has
        // rank 6, not 4) but lies in the span of all seven rows.
        let two_shore = x.row(4).to_vec();
        assert!(star.in_rowspace(&two_shore).unwrap().is_none());
        let coeffs = x.in_rowspace(&two_shore).unwrap().unwrap();
        let rebuilt = x.transpose().mul_vec(&coeffs).unwrap();
        assert_eq!(rebuilt, two_shore);
    }

    #[test]
    fn in_rowspace_negative() {
        let a = m(&[&[1, 0, 0], &[0, 1, 0]]);
        assert!(a.in_rowspace(&[rat(0), rat(0), rat(1)]).unwrap().is_none());
    }

    #[test]
    fn nullspace_of_full_column_rank_is_empty() {
        let a = m(&[&[1, 0], &[0, 1], &[1, 1]]);
        assert!(a.nullspace_basis().is_empty());
    }

    #[test]
    fn nullspace_vectors_are_in_kernel() {
        let a = m(&[&[1, 2, 3, 4], &[0, 1, 1, 2]]);
        let basis = a.nullspace_basis();
        assert_eq!(basis.len(), 2);
        for u in &basis {
            assert!(a.mul_vec(u).unwrap().iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn sdd_rows() {
        let d = m(&[&[2, 0], &[0, 2]]);
        assert!(d.is_sdd_row(0).unwrap());
        assert!(d.is_sdd_row(1).unwrap());
        let z = m(&[&[1, -1], &[-1, 1]]);
        assert!(!z.is_sdd_row(0).unwrap());
        let t = m(&[&[2, -1, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert!(t.is_sdd_row(0).unwrap());
        let rect = m(&[&[1, 2, 3]]);
        assert!(rect.is_sdd_row(0).is_err());
    }

    #[test]
    fn solve_square_and_inconsistent() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let x = solve(&a, &[rat(5), rat(10)]).unwrap().unwrap();
        assert_eq!(x, vec![rat(1), rat(3)]);
        let b = m(&[&[1, 1], &[2, 2]]);
        assert!(solve(&b, &[rat(1), rat(3)]).unwrap().is_none());
    }

    #[test]
    fn rank_invariant_under_scaling() {
        let a = m(&[&[1, 2], &[3, 5], &[4, 7]]);
        let mut scaled = a.clone();
        for j in 0..scaled.cols() {
            let v = scaled.get(1, j) * ratio(7, 3);
            scaled.set(1, j, v);
        }
        assert_eq!(a.rank(), scaled.rank());
    }
}
