//! Exact rank of integer matrices by fraction-free (Bareiss) elimination.
//!
//! Elimination is first attempted in `i128` with checked arithmetic; on the
//! first overflow it restarts from the original matrix with arbitrary
//! precision. Either route computes the same integers, so the result is the
//! rank over the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                rows,
                cols,
                len: entries.len(),
            });
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let entries = (0..rows * cols).map(|k| BigInt::from(f(k / cols, k % cols))).collect();
        IntMatrix { rows, cols, entries }
    }

    /// Builds from nested rows; all rows must have equal length.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let entries: Vec<BigInt> = rows
            .iter()
            .flat_map(|r| r.as_ref().iter().map(|&x| BigInt::from(x)))
            .collect();
        Self::from_entries(rows.len(), cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: impl Into<BigInt>) {
        self.entries[i * self.cols + j] = value.into();
    }

    pub fn transpose(&self) -> Self {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn neg(&self) -> Self {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| -x).collect(),
        }
    }

    /// Entry-wise `i64` view, when every entry fits.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| i64::try_from(self.get(i, j)).ok())
                    .collect()
            })
            .collect()
    }

    /// The submatrix keeping the listed rows and columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let entries = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone()))
            .collect();
        IntMatrix {
            rows: rows.len(),
            cols: cols.len(),
            entries,
        }
    }

    /// Block-diagonal sum `diag(self, other)`.
    pub fn direct_sum(&self, other: &IntMatrix) -> Self {
        let (r, c) = (self.rows + other.rows, self.cols + other.cols);
        let mut m = IntMatrix::zeros(r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        let small: Option<Vec<i128>> = self.entries.iter().map(|x| i128::try_from(x).ok()).collect();
        if let Some(mut a) = small {
            if let Some(r) = bareiss_i128(&mut a, self.rows, self.cols) {
                return r;
            }
        }
        let mut a = self.entries.clone();
        bareiss_big(&mut a, self.rows, self.cols)
    }

    /// Whether `mᵀ = −m`.
    pub fn is_skew_symmetric(&self) -> Result<bool> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        Ok((0..n).all(|i| (i..n).all(|j| *self.get(i, j) == -self.get(j, i))))
    }

    /// Whether `mᵀ = m`.
    pub fn is_symmetric(&self) -> Result<bool> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        Ok((0..n).all(|i| (i + 1..n).all(|j| self.get(i, j) == self.get(j, i))))
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Pivot row for column `col`: the first row at or below `from` holding a
/// nonzero entry.
fn find_pivot<T>(a: &[T], cols: usize, rows: usize, from: usize, col: usize, nonzero: impl Fn(&T) -> bool) -> Option<usize> {
    (from..rows).find(|&i| nonzero(&a[i * cols + col]))
}

fn swap_rows<T>(a: &mut [T], cols: usize, i: usize, j: usize) {
    if i != j {
        for c in 0..cols {
            a.swap(i * cols + c, j * cols + c);
        }
    }
}

/// Fraction-free elimination in `i128`; `None` on overflow.
fn bareiss_i128(a: &mut [i128], rows: usize, cols: usize) -> Option<usize> {
    let mut prev: i128 = 1;
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = find_pivot(a, cols, rows, rank, col, |x| *x != 0) else {
            continue;
        };
        swap_rows(a, cols, p, rank);
        let pivot = a[rank * cols + col];
        for i in rank + 1..rows {
            let lead = a[i * cols + col];
            for j in col + 1..cols {
                let x = a[i * cols + j]
                    .checked_mul(pivot)?
                    .checked_sub(lead.checked_mul(a[rank * cols + j])?)?;
                debug_assert_eq!(x % prev, 0);
                a[i * cols + j] = x / prev;
            }
            a[i * cols + col] = 0;
        }
        prev = pivot;
        rank += 1;
    }
    Some(rank)
}

fn bareiss_big(a: &mut [BigInt], rows: usize, cols: usize) -> usize {
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = find_pivot(a, cols, rows, rank, col, |x: &BigInt| !x.is_zero()) else {
            continue;
        };
        swap_rows(a, cols, p, rank);
        let pivot = a[rank * cols + col].clone();
        for i in rank + 1..rows {
            let lead = a[i * cols + col].clone();
            for j in col + 1..cols {
                let x = &a[i * cols + j] * &pivot - &lead * &a[rank * cols + j];
                debug_assert!((&x % &prev).is_zero());
                a[i * cols + j] = x / &prev;
            }
            a[i * cols + col] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}
