//! Dense exact linear algebra over the rationals: reduced row echelon form,
//! rank, kernel bases and span membership.
//!
//! Matrices here are at most a few hundred rows, so plain fraction-free-ish
//! Gauss-Jordan with immediate pivot normalization is enough; there are no
//! modular shortcuts.

use num::Zero;
use thiserror::Error;

use crate::rat::Rat;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("row {row} has length {got}, expected {expected}")]
    RaggedRows {
        row: usize,
        got: usize,
        expected: usize,
    },
    #[error("vector length {got} does not match expected {expected}")]
    LengthMismatch { got: usize, expected: usize },
}

/// A vector of exact rationals.
pub type QVector = Vec<Rat>;

/// Dense row-major matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl QMatrix {
    /// Zero matrix of the given shape.
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rat::from_integer(1.into()));
        }
        m
    }

    /// Build from a list of equal-length rows. An empty list gives a 0 x `cols`
    /// matrix, which is still meaningful for rank/kernel questions.
    pub fn from_rows(rows: Vec<QVector>, cols: usize) -> Result<Self, LinalgError> {
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(LinalgError::RaggedRows {
                    row: i,
                    got: r.len(),
                    expected: cols,
                });
            }
        }
        let nrows = rows.len();
        Ok(QMatrix {
            rows: nrows,
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.cols {
            self.entries.swap(i * self.cols + k, j * self.cols + k);
        }
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Rat]) -> Result<QVector, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::LengthMismatch {
                got: v.len(),
                expected: self.cols,
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// The unique reduced row echelon form, with exact pivoting: in each
    /// column the first nonzero entry at or below the current row becomes
    /// the pivot, is normalized to 1 immediately, and clears its column.
    pub fn rref(&self) -> QMatrix {
        let mut m = self.clone();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(p) = (pivot_row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(pivot_row, p);
            let pivot = m.get(pivot_row, col).clone();
            for j in col..m.cols {
                let v = m.get(pivot_row, j) / &pivot;
                m.set(pivot_row, j, v);
            }
            for r in 0..m.rows {
                if r == pivot_row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for j in col..m.cols {
                    let v = m.get(r, j) - &factor * m.get(pivot_row, j);
                    m.set(r, j, v);
                }
            }
            pivot_row += 1;
        }
        m
    }

    /// Number of nonzero rows of the reduced row echelon form.
    pub fn rank(&self) -> usize {
        let r = self.rref();
        (0..r.rows)
            .filter(|&i| r.row(i).iter().any(|x| !x.is_zero()))
            .count()
    }

    /// A basis of the right kernel `{ v : self * v = 0 }`. Its size is
    /// `cols - rank`.
    pub fn kernel_basis(&self) -> Vec<QVector> {
        let r = self.rref();
        // pivots[j] = Some(row) when column j is a pivot column
        let mut pivots: Vec<Option<usize>> = vec![None; r.cols];
        for i in 0..r.rows {
            if let Some(j) = r.row(i).iter().position(|x| !x.is_zero()) {
                pivots[j] = Some(i);
            }
        }
        let mut basis = Vec::new();
        for free in 0..r.cols {
            if pivots[free].is_some() {
                continue;
            }
            let mut v = vec![Rat::zero(); r.cols];
            v[free] = Rat::from_integer(1.into());
            for (j, p) in pivots.iter().enumerate() {
                if let Some(row) = p {
                    v[j] = -r.get(*row, free).clone();
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// Is `v` a rational linear combination of `generators`? All vectors must
/// have equal length. The empty generating set spans exactly the zero vector.
pub fn in_span(v: &[Rat], generators: &[QVector]) -> Result<bool, LinalgError> {
    let len = v.len();
    for g in generators {
        if g.len() != len {
            return Err(LinalgError::LengthMismatch {
                got: g.len(),
                expected: len,
            });
        }
    }
    let base = QMatrix::from_rows(generators.to_vec(), len)?;
    let mut augmented_rows = generators.to_vec();
    augmented_rows.push(v.to_vec());
    let augmented = QMatrix::from_rows(augmented_rows, len)?;
    Ok(base.rank() == augmented.rank())
}
