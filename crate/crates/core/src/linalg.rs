//! Exact row echelon forms over fields (reduced) and over the integers
//! (Hermite form). Residues modulo the row space are canonical.

use crate::scalar::{Ring, RingKind};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("elimination over {0} is not supported (zero divisors)")]
    UnsupportedRing(String),
    #[error("vector has length {got}, expected {expected}")]
    Length { got: usize, expected: usize },
}

#[derive(Clone, Debug)]
pub struct Echelon<R: Ring> {
    ncols: usize,
    rows: Vec<Vec<R>>,
    pivots: Vec<usize>,
}

impl<R: Ring> Echelon<R> {
    /// Eliminates columns in index order.
    pub fn new(ncols: usize, rows: Vec<Vec<R>>) -> Result<Self, LinalgError> {
        let order: Vec<usize> = (0..ncols).collect();
        Self::with_column_order(ncols, rows, &order)
    }

    /// Eliminates columns in the given order; `order` must be a permutation.
    pub fn with_column_order(ncols: usize, mut rows: Vec<Vec<R>>, order: &[usize]) -> Result<Self, LinalgError> {
        if R::kind() == RingKind::Other {
            return Err(LinalgError::UnsupportedRing(R::name()));
        }
        for r in &rows {
            if r.len() != ncols {
                return Err(LinalgError::Length { got: r.len(), expected: ncols });
            }
        }
        rows.retain(|r| r.iter().any(|x| !x.is_zero()));
        let mut pivots = Vec::new();
        let mut top = 0;
        for &c in order {
            if top == rows.len() {
                break;
            }
            for i in top + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                if rows[top][c].is_zero() {
                    rows.swap(top, i);
                    continue;
                }
                let (g, s, t) = rows[top][c].bezout(&rows[i][c]);
                let a = rows[top][c].div_rem_canonical(&g).0;
                let b = rows[i][c].div_rem_canonical(&g).0;
                let new_top: Vec<R> = (0..ncols)
                    .map(|k| s.clone() * rows[top][k].clone() + t.clone() * rows[i][k].clone())
                    .collect();
                let new_i: Vec<R> = (0..ncols)
                    .map(|k| a.clone() * rows[i][k].clone() - b.clone() * rows[top][k].clone())
                    .collect();
                rows[top] = new_top;
                rows[i] = new_i;
            }
            if rows[top][c].is_zero() {
                continue;
            }
            let u = rows[top][c].normalizing_unit();
            for x in rows[top].iter_mut() {
                *x = u.clone() * x.clone();
            }
            for k in 0..top {
                let (q, _) = rows[k][c].div_rem_canonical(&rows[top][c]);
                if !q.is_zero() {
                    for j in 0..ncols {
                        let v = rows[top][j].clone();
                        rows[k][j] = rows[k][j].clone() - q.clone() * v;
                    }
                }
            }
            pivots.push(c);
            top += 1;
        }
        rows.truncate(top);
        Ok(Echelon { ncols, rows, pivots })
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<R>] {
        &self.rows
    }

    /// Canonical representative of `v` modulo the row space.
    pub fn reduce(&self, v: &[R]) -> Vec<R> {
        let mut v = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if v[c].is_zero() {
                continue;
            }
            let (q, _) = v[c].div_rem_canonical(&row[c]);
            if q.is_zero() {
                continue;
            }
            for j in 0..self.ncols {
                v[j] = v[j].clone() - q.clone() * row[j].clone();
            }
        }
        v
    }

    pub fn contains(&self, v: &[R]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Columns without a pivot, in index order.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ncols).filter(|&c| !is_pivot[c]).collect()
    }
}
