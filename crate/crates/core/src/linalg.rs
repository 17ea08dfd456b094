//! Exact rank, kernel and linear solving over [`Scalar`] fields.
//!
//! Two elimination routes are provided. [`Matrix::rref`] is Gauss–Jordan
//! elimination in field arithmetic, choosing at each step the pivot of
//! smallest bit size. [`Matrix::rank`] takes a fraction-free (Bareiss)
//! route over the integers when every entry is rational, and falls back to
//! the field route otherwise.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebra::{Rational, Scalar};
use crate::error::{Error, Result};

/// Row count above which elimination steps are spread over threads.
const PAR_ROWS: usize = 48;

/// Dense row-major matrix of scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// Builds a matrix from rows of equal length. The column count of an
    /// empty row list is zero.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let n = rows.len();
        Ok(Self { rows: n, cols, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let entries = (0..rows).flat_map(|i| (0..cols).map(move |j| (i, j))).map(|(i, j)| f(i, j)).collect();
        Self { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_rational(&self) -> bool {
        self.entries.iter().all(|e| e.as_rational().is_some())
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Scalar::zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect())
    }

    fn to_rows(&self) -> Vec<Vec<Scalar>> {
        self.entries.chunks(self.cols.max(1)).take(self.rows).map(<[Scalar]>::to_vec).collect()
    }

    /// Gauss–Jordan reduction to the (unique) reduced row echelon form.
    pub fn rref(&self) -> Rref {
        let mut rows = if self.cols == 0 { vec![Vec::new(); self.rows] } else { self.to_rows() };
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by_key(|&i| rows[i][c].bit_size())
            else {
                continue;
            };
            rows.swap(r, p);
            let inv = rows[r][c].inverse().expect("pivot is nonzero");
            for x in rows[r][c..].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
            let pivot_row = rows[r].clone();
            let eliminate = |(i, row): (usize, &mut Vec<Scalar>)| {
                if i == r || row[c].is_zero() {
                    return;
                }
                let factor = row[c].clone();
                for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    if !p.is_zero() {
                        *x = &*x - &(&factor * p);
                    }
                }
            };
            if rows.len() >= PAR_ROWS {
                rows.par_iter_mut().enumerate().for_each(eliminate);
            } else {
                rows.iter_mut().enumerate().for_each(eliminate);
            }
            pivots.push(c);
            r += 1;
        }
        let entries = rows.into_iter().flatten().collect();
        Rref { matrix: Matrix { rows: self.rows, cols: self.cols, entries }, pivots }
    }

    /// Rank over the exact field; 0 for empty or zero matrices.
    pub fn rank(&self) -> usize {
        if self.is_rational() {
            self.bareiss_rank()
        } else {
            self.rref().pivots.len()
        }
    }

    /// Rank via fraction-free elimination over the integers. Each row is
    /// first cleared of denominators. Panics on non-rational entries.
    pub fn bareiss_rank(&self) -> usize {
        let mut rows: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let row: Vec<&Rational> = self
                    .row(i)
                    .iter()
                    .map(|e| e.as_rational().expect("bareiss_rank needs rational entries"))
                    .collect();
                let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
                row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect()
            })
            .collect();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).filter(|&i| !rows[i][c].is_zero()).min_by_key(|&i| rows[i][c].bits())
            else {
                continue;
            };
            rows.swap(r, p);
            let (head, tail) = rows.split_at_mut(r + 1);
            let pivot_row = &head[r];
            let step = |row: &mut Vec<BigInt>| {
                let lead = std::mem::take(&mut row[c]);
                for j in c + 1..row.len() {
                    let v = &pivot_row[c] * &row[j] - &lead * &pivot_row[j];
                    row[j] = v / &prev;
                }
            };
            if tail.len() >= PAR_ROWS {
                tail.par_iter_mut().for_each(step);
            } else {
                tail.iter_mut().for_each(step);
            }
            prev = pivot_row[c].clone();
            r += 1;
        }
        r
    }

    /// Basis of the right kernel. Each vector is scaled so that its first
    /// nonzero entry is 1; the list is empty exactly when the matrix is
    /// injective.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let Rref { matrix, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[free] = Scalar::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -matrix.get(r, free);
                }
                normalize_first_nonzero(v)
            })
            .collect()
    }

    /// One solution of `M·x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let augmented = Matrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let Rref { matrix, pivots } = augmented.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = matrix.get(r, self.cols).clone();
        }
        Ok(Some(x))
    }
}

/// Scales `v` so that its first nonzero entry equals 1.
pub fn normalize_first_nonzero(v: Vec<Scalar>) -> Vec<Scalar> {
    match v.iter().find(|x| !x.is_zero()) {
        None => v,
        Some(lead) if lead.is_one() => v,
        Some(lead) => {
            let inv = lead.inverse().expect("nonzero");
            v.iter().map(|x| x * &inv).collect()
        }
    }
}
