//! Projective dependency parsing over the EDU influence graph.
//!
//! The chart is the classic four-table one: items are spans with the head at
//! the left or right end, either still collecting dependents (incomplete,
//! created by adding an arc between the endpoints) or finished (complete).
//! Arc weights come from the influence graph, `w(h, d) = A[d][h]`; the
//! virtual root contributes `importance(d) / n` for its single child, and
//! the decode picks the root with the best full combination.
//!
//! Under a sentence constraint, no item may be created over a span that
//! crosses a sentence boundary unless the span runs from a sentence start
//! to a sentence end. Attaching the root EDU to the virtual root is not a
//! span and is never restricted.

use crate::attention::importance;
use crate::constraint::SpanConstraint;
use crate::error::{Error, Result};
use crate::matrix::AttentionMatrix;
use crate::trees::DependencyTree;

const NEG: f64 = f64::NEG_INFINITY;

struct Chart {
    n: usize,
    // score and split backpointer per table, indexed i * n + j
    inc_hl: Vec<f64>,
    inc_hr: Vec<f64>,
    com_hl: Vec<f64>,
    com_hr: Vec<f64>,
    b_inc_hl: Vec<usize>,
    b_inc_hr: Vec<usize>,
    b_com_hl: Vec<usize>,
    b_com_hr: Vec<usize>,
}

impl Chart {
    fn new(n: usize) -> Self {
        let mut chart = Self {
            n,
            inc_hl: vec![NEG; n * n],
            inc_hr: vec![NEG; n * n],
            com_hl: vec![NEG; n * n],
            com_hr: vec![NEG; n * n],
            b_inc_hl: vec![usize::MAX; n * n],
            b_inc_hr: vec![usize::MAX; n * n],
            b_com_hl: vec![usize::MAX; n * n],
            b_com_hr: vec![usize::MAX; n * n],
        };
        for i in 0..n {
            chart.com_hl[i * n + i] = 0.0;
            chart.com_hr[i * n + i] = 0.0;
        }
        chart
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> usize {
        i * self.n + j
    }
}

/// Parse into the maximum-score projective dependency tree with a single
/// root child. Ties break toward smaller split indices and smaller root
/// positions.
pub fn eisner_parse(a: &AttentionMatrix, constraint: &SpanConstraint) -> Result<DependencyTree> {
    let n = a.n();
    if n == 1 {
        return DependencyTree::new(vec![0]);
    }
    let imp = importance(a);
    // influence weight of the arc h -> d
    let w = |h: usize, d: usize| a.get(d, h);

    let mut c = Chart::new(n);
    for len in 2..=n {
        for i in 0..=n - len {
            let j = i + len - 1;
            if !constraint.admissible(i + 1, j + 1) {
                continue;
            }
            let cell = i * n + j;

            // Incomplete items: both arc directions share the same split
            // structure, only the arc weight differs.
            let mut best_parts = NEG;
            let mut split = usize::MAX;
            for k in i..j {
                let parts = c.com_hl[c.at(i, k)] + c.com_hr[c.at(k + 1, j)];
                if parts > best_parts {
                    best_parts = parts;
                    split = k;
                }
            }
            if split != usize::MAX {
                c.inc_hl[cell] = best_parts + w(i, j);
                c.b_inc_hl[cell] = split;
                c.inc_hr[cell] = best_parts + w(j, i);
                c.b_inc_hr[cell] = split;
            }

            let mut best = NEG;
            let mut best_k = usize::MAX;
            for k in i + 1..=j {
                let v = c.inc_hl[c.at(i, k)] + c.com_hl[c.at(k, j)];
                if v > best {
                    best = v;
                    best_k = k;
                }
            }
            c.com_hl[cell] = best;
            c.b_com_hl[cell] = best_k;

            let mut best = NEG;
            let mut best_k = usize::MAX;
            for k in i..j {
                let v = c.com_hr[c.at(i, k)] + c.inc_hr[c.at(k, j)];
                if v > best {
                    best = v;
                    best_k = k;
                }
            }
            c.com_hr[cell] = best;
            c.b_com_hr[cell] = best_k;
        }
    }

    // Root decode: exactly one child of the virtual root.
    let mut best = NEG;
    let mut best_root = usize::MAX;
    for (r, &importance_r) in imp.iter().enumerate() {
        let left = c.com_hr[c.at(0, r)];
        let right = c.com_hl[c.at(r, n - 1)];
        if left == NEG || right == NEG {
            continue;
        }
        let total = importance_r / n as f64 + left + right;
        if total > best {
            best = total;
            best_root = r;
        }
    }
    if best_root == usize::MAX {
        return Err(Error::Internal(
            "no feasible root under the constraint".into(),
        ));
    }

    let mut heads = vec![0usize; n];
    recover(&c, Item::ComHR(0, best_root), &mut heads)?;
    recover(&c, Item::ComHL(best_root, n - 1), &mut heads)?;
    heads[best_root] = 0;
    DependencyTree::new(heads)
}

#[derive(Clone, Copy)]
enum Item {
    IncHL(usize, usize),
    IncHR(usize, usize),
    ComHL(usize, usize),
    ComHR(usize, usize),
}

fn recover(c: &Chart, top: Item, heads: &mut [usize]) -> Result<()> {
    let mut stack = vec![top];
    while let Some(item) = stack.pop() {
        match item {
            Item::ComHL(i, j) => {
                if i == j {
                    continue;
                }
                let k = c.b_com_hl[c.at(i, j)];
                if k == usize::MAX {
                    return Err(Error::Internal("missing complete-item backpointer".into()));
                }
                stack.push(Item::IncHL(i, k));
                stack.push(Item::ComHL(k, j));
            }
            Item::ComHR(i, j) => {
                if i == j {
                    continue;
                }
                let k = c.b_com_hr[c.at(i, j)];
                if k == usize::MAX {
                    return Err(Error::Internal("missing complete-item backpointer".into()));
                }
                stack.push(Item::ComHR(i, k));
                stack.push(Item::IncHR(k, j));
            }
            Item::IncHL(i, j) => {
                heads[j] = i + 1;
                let k = c.b_inc_hl[c.at(i, j)];
                stack.push(Item::ComHL(i, k));
                stack.push(Item::ComHR(k + 1, j));
            }
            Item::IncHR(i, j) => {
                heads[i] = j + 1;
                let k = c.b_inc_hr[c.at(i, j)];
                stack.push(Item::ComHL(i, k));
                stack.push(Item::ComHR(k + 1, j));
            }
        }
    }
    Ok(())
}
