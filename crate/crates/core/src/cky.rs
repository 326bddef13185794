//! Bottom-up chart induction of an unlabeled binary constituency tree from
//! an attention matrix.
//!
//! Cell `(i, j)` holds the best score of a subtree spanning EDUs `i..=j`.
//! Diagonal cells hold the EDU's importance (its attention column sum);
//! a split at `k` combines the children's scores with the average attention
//! between the two blocks, in both directions. Block averages come from a
//! 2-D prefix-sum table, which keeps the whole parse at O(n^3).

use crate::attention::importance;
use crate::constraint::SpanConstraint;
use crate::error::{Error, Result};
use crate::matrix::AttentionMatrix;
use crate::trees::{ConstNode, ConstituencyTree};

/// How the split score folds the block averages in.
///
/// `DivideAll` halves the entire combination (children scores included);
/// `DivideAverages` halves only the two block averages. The two variants
/// generally prefer different trees: `DivideAll` discounts deep subtree
/// scores, `DivideAverages` keeps child scores additive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CkyScoreVariant {
    #[default]
    DivideAll,
    DivideAverages,
}

/// 2-D inclusive prefix sums over a matrix, for O(1) rectangle sums.
pub(crate) struct PrefixSums {
    n: usize,
    table: Vec<f64>,
}

impl PrefixSums {
    pub(crate) fn new(a: &AttentionMatrix) -> Self {
        let n = a.n();
        let w = n + 1;
        let mut table = vec![0.0f64; w * w];
        for r in 0..n {
            for c in 0..n {
                table[(r + 1) * w + (c + 1)] =
                    a.get(r, c) + table[r * w + (c + 1)] + table[(r + 1) * w + c]
                        - table[r * w + c];
            }
        }
        Self { n, table }
    }

    /// Sum over rows `r1..=r2`, cols `c1..=c2` (0-based inclusive).
    pub(crate) fn rect(&self, r1: usize, r2: usize, c1: usize, c2: usize) -> f64 {
        let w = self.n + 1;
        self.table[(r2 + 1) * w + (c2 + 1)]
            - self.table[r1 * w + (c2 + 1)]
            - self.table[(r2 + 1) * w + c1]
            + self.table[r1 * w + c1]
    }

    pub(crate) fn rect_avg(&self, r1: usize, r2: usize, c1: usize, c2: usize) -> f64 {
        self.rect(r1, r2, c1, c2) / ((r2 - r1 + 1) * (c2 - c1 + 1)) as f64
    }
}

/// Parse the matrix into the highest-scoring binary tree. Under a sentence
/// or paragraph constraint the chart only builds admissible spans, so every
/// node of the output satisfies the constraint. Ties break toward the
/// smallest split index. Returns the tree and its root score.
pub fn cky_parse(
    a: &AttentionMatrix,
    constraint: &SpanConstraint,
    variant: CkyScoreVariant,
) -> Result<(ConstituencyTree, f64)> {
    let n = a.n();
    let imp = importance(a);
    if n == 1 {
        return Ok((ConstituencyTree::new(ConstNode::leaf(1))?, imp[0]));
    }
    let sums = PrefixSums::new(a);

    let idx = |i: usize, j: usize| i * n + j;
    let mut score = vec![f64::NEG_INFINITY; n * n];
    let mut back = vec![usize::MAX; n * n];
    let mut admissible = vec![false; n * n];
    for i in 0..n {
        score[idx(i, i)] = imp[i];
        admissible[idx(i, i)] = true;
    }
    for j in 0..n {
        for i in 0..j {
            admissible[idx(i, j)] = constraint.admissible(i + 1, j + 1);
        }
    }

    for len in 2..=n {
        for i in 0..=n - len {
            let j = i + len - 1;
            if !admissible[idx(i, j)] {
                continue;
            }
            let mut best = f64::NEG_INFINITY;
            let mut best_k = usize::MAX;
            for k in i..j {
                if !admissible[idx(i, k)] || !admissible[idx(k + 1, j)] {
                    continue;
                }
                let left = score[idx(i, k)];
                let right = score[idx(k + 1, j)];
                if left == f64::NEG_INFINITY || right == f64::NEG_INFINITY {
                    continue;
                }
                let lr = sums.rect_avg(i, k, k + 1, j);
                let rl = sums.rect_avg(k + 1, j, i, k);
                let combined = match variant {
                    CkyScoreVariant::DivideAll => (left + right + lr + rl) / 2.0,
                    CkyScoreVariant::DivideAverages => left + right + (lr + rl) / 2.0,
                };
                if combined > best {
                    best = combined;
                    best_k = k;
                }
            }
            score[idx(i, j)] = best;
            back[idx(i, j)] = best_k;
        }
    }

    let root_score = score[idx(0, n - 1)];
    if root_score == f64::NEG_INFINITY {
        // The left-to-right sentence cascade is always admissible, so this
        // cannot happen for a well-formed segmentation.
        return Err(Error::Internal(
            "no admissible tree for the full span".into(),
        ));
    }

    fn build(i: usize, j: usize, n: usize, back: &[usize]) -> Result<ConstNode> {
        if i == j {
            return Ok(ConstNode::leaf(i + 1));
        }
        let k = back[i * n + j];
        if k == usize::MAX {
            return Err(Error::Internal(format!(
                "missing backpointer for span {}..{}",
                i + 1,
                j + 1
            )));
        }
        Ok(ConstNode::internal(
            None,
            build(i, k, n, back)?,
            build(k + 1, j, n, back)?,
        ))
    }
    let tree = ConstituencyTree::new(build(0, n - 1, n, &back)?)?;
    Ok((tree, root_score))
}
