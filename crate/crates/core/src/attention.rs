//! Selecting and aggregating attention matrices, EDU importance scores, and
//! the seeded random-matrix baseline.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::document::AnnotatedDocument;
use crate::error::{Error, Result};
use crate::matrix::AttentionMatrix;

/// Which matrix to take from a document's tensor: one layer, then either a
/// single head or the element-wise mean over all heads of that layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeadSelector {
    pub layer: usize,
    pub mode: HeadMode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeadMode {
    AverageHeads,
    SingleHead(usize),
}

impl HeadSelector {
    pub fn average(layer: usize) -> Self {
        Self {
            layer,
            mode: HeadMode::AverageHeads,
        }
    }

    pub fn single(layer: usize, head: usize) -> Self {
        Self {
            layer,
            mode: HeadMode::SingleHead(head),
        }
    }
}

/// Pick the selected matrix out of a document's attention tensor.
/// `AverageHeads` returns the element-wise mean over the layer's heads.
pub fn select_matrix(doc: &AnnotatedDocument, sel: HeadSelector) -> Result<AttentionMatrix> {
    if doc.layers.is_empty() {
        return Err(Error::NoLayers);
    }
    let layer = doc.layers.get(sel.layer).ok_or(Error::LayerOutOfRange {
        layer: sel.layer,
        max: doc.layers.len() - 1,
    })?;
    match sel.mode {
        HeadMode::SingleHead(h) => layer.heads.get(h).cloned().ok_or(Error::HeadOutOfRange {
            head: h,
            max: layer.heads.len().saturating_sub(1),
        }),
        HeadMode::AverageHeads => {
            let count = layer.heads.len();
            if count == 0 {
                return Err(Error::NoLayers);
            }
            let n = layer.heads[0].n();
            let mut sums = vec![0.0f64; n * n];
            for head in &layer.heads {
                if head.n() != n {
                    return Err(Error::MatrixShape {
                        n,
                        got: head.n() * head.n(),
                    });
                }
                for (acc, v) in sums.iter_mut().zip(head.values()) {
                    *acc += v;
                }
            }
            let inv = 1.0 / count as f64;
            for v in &mut sums {
                *v *= inv;
            }
            AttentionMatrix::new(n, sums)
        }
    }
}

/// Overall importance of each EDU: the attention paid to it by all EDUs,
/// i.e. the column sums of the matrix (diagonal included).
pub fn importance(a: &AttentionMatrix) -> Vec<f64> {
    let n = a.n();
    let mut scores = vec![0.0f64; n];
    for row in 0..n {
        for (col, score) in scores.iter_mut().enumerate() {
            *score += a.get(row, col);
        }
    }
    scores
}

/// Deterministic random baseline matrix: entries drawn i.i.d. uniform on
/// `[0, 1)` from a ChaCha8 stream seeded with `seed`, then each row
/// normalized to sum 1. The same `(n, seed)` pair always yields the
/// bit-identical matrix.
pub fn random_matrix(n: usize, seed: u64) -> Result<AttentionMatrix> {
    if n == 0 {
        return Err(Error::EmptyMatrix);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = Vec::with_capacity(n * n);
    for _ in 0..n * n {
        values.push(unit_f64(&mut rng));
    }
    for row in 0..n {
        let slice = &mut values[row * n..(row + 1) * n];
        let sum: f64 = slice.iter().sum();
        if sum > 0.0 {
            for v in slice.iter_mut() {
                *v /= sum;
            }
        } else {
            slice.fill(1.0 / n as f64);
        }
    }
    AttentionMatrix::new(n, values)
}

/// Uniform f64 in [0, 1) built from the top 53 bits of one `u64`, so the
/// value stream only depends on ChaCha8 and not on any distribution impl.
pub(crate) fn unit_f64(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}
