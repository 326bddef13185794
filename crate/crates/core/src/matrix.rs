//! Dense attention matrices over EDUs.

use crate::error::{Error, Result};

/// Tolerance for the "rows look like softmax output" check. Rows whose sum
/// deviates beyond this are still accepted, but the matrix is flagged.
const ROW_SUM_TOL: f64 = 1e-3;

/// An `n x n` non-negative score matrix. Entry `(i, j)` holds how much EDU
/// `i` attends to EDU `j` (row index = attending EDU, both 0-based here;
/// the public parser APIs speak 1-based positions).
///
/// Construction rejects negative or non-finite entries outright: every
/// downstream algorithm takes an argmax over these scores and a single NaN
/// would poison it silently. Row sums are *not* required to be 1; matrices
/// whose rows deviate from 1 by more than 1e-3 only get `row_sum_warning`
/// set.
#[derive(Debug, Clone, PartialEq)]
pub struct AttentionMatrix {
    n: usize,
    values: Vec<f64>,
    row_sum_warning: bool,
}

impl AttentionMatrix {
    /// Build from row-major values. `values.len()` must equal `n * n`.
    pub fn new(n: usize, values: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        if values.len() != n * n {
            return Err(Error::MatrixShape {
                n,
                got: values.len(),
            });
        }
        for (idx, &v) in values.iter().enumerate() {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidEntry {
                    row: idx / n + 1,
                    col: idx % n + 1,
                    value: v,
                });
            }
        }
        let mut row_sum_warning = false;
        for row in 0..n {
            let sum: f64 = values[row * n..(row + 1) * n].iter().sum();
            if (sum - 1.0).abs() > ROW_SUM_TOL {
                row_sum_warning = true;
            }
        }
        Ok(Self {
            n,
            values,
            row_sum_warning,
        })
    }

    /// Build from nested rows, checking each row's length.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        let mut values = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::MatrixShape {
                    n,
                    got: n * row.len().max(1),
                });
            }
            values.extend_from_slice(row);
        }
        Self::new(n, values)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// 0-based accessor.
    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.n + col]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// True when some row sum strays from 1 by more than 1e-3.
    pub fn row_sum_warning(&self) -> bool {
        self.row_sum_warning
    }

    /// Element-wise scaling by a positive constant (used by the argmax
    /// invariance checks).
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.n, self.values.iter().map(|v| v * factor).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_zero_dimension() {
        assert_eq!(AttentionMatrix::new(0, vec![]), Err(Error::EmptyMatrix));
    }

    #[test]
    fn rejects_shape_mismatch() {
        let err = AttentionMatrix::new(2, vec![0.0; 6]).unwrap_err();
        assert_eq!(err, Error::MatrixShape { n: 2, got: 6 });
    }

    #[test]
    fn rejects_negative_and_non_finite() {
        assert!(matches!(
            AttentionMatrix::new(2, vec![0.1, 0.9, -0.2, 0.3]),
            Err(Error::InvalidEntry { row: 2, col: 1, .. })
        ));
        assert!(matches!(
            AttentionMatrix::new(1, vec![f64::NAN]),
            Err(Error::InvalidEntry { .. })
        ));
    }

    #[test]
    fn flags_rows_that_do_not_sum_to_one() {
        let ok = AttentionMatrix::new(2, vec![0.5, 0.5, 0.1, 0.9]).unwrap();
        assert!(!ok.row_sum_warning());
        let off = AttentionMatrix::new(2, vec![0.5, 0.5, 2.0, 2.0]).unwrap();
        assert!(off.row_sum_warning());
    }
}
