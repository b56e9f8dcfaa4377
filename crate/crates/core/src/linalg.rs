//! Dense exact linear algebra over the parameter fraction field.

use crate::pfrac::PFrac;
use crate::vars::VarSpace;
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<PFrac>,
}

impl Matrix {
    pub fn zero(space: &Arc<VarSpace>, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![PFrac::zero(space); rows * cols],
        }
    }

    pub fn identity(space: &Arc<VarSpace>, n: usize) -> Self {
        let mut m = Self::zero(space, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = PFrac::one(space);
        }
        m
    }

    pub fn from_rows(space: &Arc<VarSpace>, rows: Vec<Vec<PFrac>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zero(space, r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, v) in row.into_iter().enumerate() {
                *m.at_mut(i, j) = v;
            }
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> &PFrac {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut PFrac {
        &mut self.data[i * self.cols + j]
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let space = self.data[0].space().clone();
        let mut out = Matrix::zero(&space, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.at(i, k).is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    if other.at(k, j).is_zero() {
                        continue;
                    }
                    let add = self.at(i, k).mul(other.at(k, j));
                    *out.at_mut(i, j) = out.at(i, j).add(&add);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[PFrac]) -> Vec<PFrac> {
        assert_eq!(self.cols, v.len());
        let space = self.data[0].space().clone();
        (0..self.rows)
            .map(|i| {
                let mut acc = PFrac::zero(&space);
                for j in 0..self.cols {
                    if !self.at(i, j).is_zero() && !v[j].is_zero() {
                        acc = acc.add(&self.at(i, j).mul(&v[j]));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for i in 0..self.rows * self.cols {
            out.data[i] = self.data[i].sub(&other.data[i]);
        }
        out
    }

    pub fn scale(&self, c: &PFrac) -> Matrix {
        let mut out = self.clone();
        for v in &mut out.data {
            *v = v.mul(c);
        }
        out
    }

    /// Row-reduce in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.at(i, c).is_zero()) else {
                continue;
            };
            for j in 0..self.cols {
                let tmp = self.at(p, j).clone();
                *self.at_mut(p, j) = self.at(r, j).clone();
                *self.at_mut(r, j) = tmp;
            }
            let inv = self.at(r, c).inv();
            for j in 0..self.cols {
                *self.at_mut(r, j) = self.at(r, j).mul(&inv);
            }
            for i in 0..self.rows {
                if i != r && !self.at(i, c).is_zero() {
                    let factor = self.at(i, c).clone();
                    for j in 0..self.cols {
                        let delta = factor.mul(self.at(r, j));
                        *self.at_mut(i, j) = self.at(i, j).sub(&delta);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right nullspace.
    pub fn nullspace(&self) -> Vec<Vec<PFrac>> {
        let space = self.data[0].space().clone();
        let mut m = self.clone();
        let pivots = m.rref();
        let mut basis = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![PFrac::zero(&space); self.cols];
            v[free] = PFrac::one(&space);
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = m.at(r, free).neg();
            }
            basis.push(v);
        }
        basis
    }

    /// Solve `A x = b`; `None` when inconsistent.
    pub fn solve(&self, b: &[PFrac]) -> Option<Vec<PFrac>> {
        assert_eq!(b.len(), self.rows);
        let space = self.data[0].space().clone();
        let mut aug = Matrix::zero(&space, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, self.cols) = b[i].clone();
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![PFrac::zero(&space); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.at(r, self.cols).clone();
        }
        Some(x)
    }
}

/// Rank of a set of vectors (as rows).
pub fn row_rank(space: &Arc<VarSpace>, rows: &[Vec<PFrac>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    Matrix::from_rows(space, rows.to_vec()).rank()
}

/// Intersection of the nullspaces of several matrices (stacked solve).
pub fn common_nullspace(space: &Arc<VarSpace>, mats: &[Matrix]) -> Vec<Vec<PFrac>> {
    let cols = mats[0].cols;
    let rows: usize = mats.iter().map(|m| m.rows).sum();
    let mut stacked = Matrix::zero(space, rows, cols);
    let mut r0 = 0;
    for m in mats {
        for i in 0..m.rows {
            for j in 0..cols {
                *stacked.at_mut(r0 + i, j) = m.at(i, j).clone();
            }
        }
        r0 += m.rows;
    }
    stacked.nullspace()
}
