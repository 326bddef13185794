//! Scoring induced trees against gold trees, plus the structural and
//! locality analyses and the mean/std aggregation used for baselines.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::treeops::is_vacuous;
use crate::trees::{ConstituencyTree, DependencyTree};

/// Span-overlap counts for a constituency pair: matched spans over the full
/// inventory of `2n - 1` node spans, leaves and root span included. With
/// leaves and the document span always matching, the score has a floor of
/// `(n + 1) / (2n - 1)` for any pair of binary trees.
pub fn rst_parseval(pred: &ConstituencyTree, gold: &ConstituencyTree) -> Result<(usize, usize)> {
    if pred.n() != gold.n() {
        return Err(Error::SizeMismatch {
            left: pred.n(),
            right: gold.n(),
        });
    }
    let gold_spans: HashSet<(usize, usize)> = gold.spans().into_iter().collect();
    let matched = pred
        .spans()
        .iter()
        .filter(|span| gold_spans.contains(span))
        .count();
    Ok((matched, 2 * pred.n() - 1))
}

/// Unlabeled attachment counts: how many of the `n` head decisions agree,
/// the root's sentinel attachment included.
pub fn uas(pred: &DependencyTree, gold: &DependencyTree) -> Result<(usize, usize)> {
    if pred.n() != gold.n() {
        return Err(Error::SizeMismatch {
            left: pred.n(),
            right: gold.n(),
        });
    }
    let matched = pred
        .heads()
        .iter()
        .zip(gold.heads())
        .filter(|(p, g)| p == g)
        .count();
    Ok((matched, pred.n()))
}

/// Structural measurements of one dependency tree.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeStats {
    /// Mean number of children over nodes that have any.
    pub branch_width: f64,
    /// Longest root-to-leaf path, in edges.
    pub height: usize,
    /// Leaves (nodes without children) over all nodes.
    pub leaf_ratio: f64,
    /// Mean |head - dependent| / n over non-root arcs; 0 for n = 1.
    pub norm_arc_length: f64,
    pub vacuous: bool,
    // raw counts for micro aggregation
    pub leaves: usize,
    pub nodes: usize,
}

pub fn tree_stats(t: &DependencyTree) -> TreeStats {
    let n = t.n();
    let mut child_count = vec![0usize; n + 1];
    for (h, _) in t.arcs() {
        child_count[h] += 1;
    }
    let parents: Vec<usize> = (1..=n).filter(|&v| child_count[v] > 0).collect();
    let branch_width = if parents.is_empty() {
        0.0
    } else {
        parents.iter().map(|&v| child_count[v] as f64).sum::<f64>() / parents.len() as f64
    };
    let leaves = n - parents.len();

    let mut depth = vec![0usize; n + 1];
    let mut order: Vec<usize> = vec![t.root()];
    let mut children = vec![Vec::new(); n + 1];
    for (h, d) in t.arcs() {
        children[h].push(d);
    }
    let mut height = 0;
    let mut cursor = 0;
    while cursor < order.len() {
        let v = order[cursor];
        cursor += 1;
        for &c in &children[v] {
            depth[c] = depth[v] + 1;
            height = height.max(depth[c]);
            order.push(c);
        }
    }

    let arc_count = n.saturating_sub(1);
    let norm_arc_length = if arc_count == 0 {
        0.0
    } else {
        t.arcs()
            .map(|(h, d)| (h as f64 - d as f64).abs() / n as f64)
            .sum::<f64>()
            / arc_count as f64
    };

    TreeStats {
        branch_width,
        height,
        leaf_ratio: leaves as f64 / n as f64,
        norm_arc_length,
        vacuous: is_vacuous(t),
        leaves,
        nodes: n,
    }
}

/// Corpus-level structural report: per-document averages for branch width,
/// height and arc length; micro leaf ratio (total leaves over total nodes);
/// share of vacuous trees.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusStats {
    pub docs: usize,
    pub branch_width: f64,
    pub height: f64,
    pub leaf_ratio_micro: f64,
    pub norm_arc_length: f64,
    pub vacuous_pct: f64,
}

pub fn corpus_stats(trees: &[DependencyTree]) -> Result<CorpusStats> {
    if trees.is_empty() {
        return Err(Error::EmptyInput("no trees to measure"));
    }
    let all: Vec<TreeStats> = trees.iter().map(tree_stats).collect();
    let docs = all.len() as f64;
    Ok(CorpusStats {
        docs: all.len(),
        branch_width: all.iter().map(|s| s.branch_width).sum::<f64>() / docs,
        height: all.iter().map(|s| s.height as f64).sum::<f64>() / docs,
        leaf_ratio_micro: all.iter().map(|s| s.leaves).sum::<usize>() as f64
            / all.iter().map(|s| s.nodes).sum::<usize>() as f64,
        norm_arc_length: all.iter().map(|s| s.norm_arc_length).sum::<f64>() / docs,
        vacuous_pct: all.iter().filter(|s| s.vacuous).count() as f64 / docs * 100.0,
    })
}

/// Corpus-level locality of dependency arcs. An arc is local when head and
/// dependent are adjacent; root sentinel attachments are not arcs here.
/// Returns `(local ratio among correct arcs, among predicted arcs, among
/// gold arcs)`, micro-averaged over the corpus.
pub fn locality_report(
    preds: &[DependencyTree],
    golds: &[DependencyTree],
) -> Result<(f64, f64, f64)> {
    if preds.is_empty() || golds.is_empty() {
        return Err(Error::EmptyInput("no tree pairs"));
    }
    if preds.len() != golds.len() {
        return Err(Error::SizeMismatch {
            left: preds.len(),
            right: golds.len(),
        });
    }
    let mut correct = 0usize;
    let mut correct_local = 0usize;
    let mut pred_arcs = 0usize;
    let mut pred_local = 0usize;
    let mut gold_arcs = 0usize;
    let mut gold_local = 0usize;
    let local = |h: usize, d: usize| h.abs_diff(d) == 1;
    for (pred, gold) in preds.iter().zip(golds) {
        if pred.n() != gold.n() {
            return Err(Error::SizeMismatch {
                left: pred.n(),
                right: gold.n(),
            });
        }
        for (h, d) in pred.arcs() {
            pred_arcs += 1;
            if local(h, d) {
                pred_local += 1;
            }
            if gold.head(d) == h {
                correct += 1;
                if local(h, d) {
                    correct_local += 1;
                }
            }
        }
        for (h, d) in gold.arcs() {
            gold_arcs += 1;
            if local(h, d) {
                gold_local += 1;
            }
        }
    }
    let ratio = |num: usize, den: usize| {
        if den == 0 {
            0.0
        } else {
            num as f64 / den as f64
        }
    };
    Ok((
        ratio(correct_local, correct),
        ratio(pred_local, pred_arcs),
        ratio(gold_local, gold_arcs),
    ))
}

/// Arithmetic mean and population standard deviation.
pub fn aggregate(values: &[f64]) -> Result<(f64, f64)> {
    if values.is_empty() {
        return Err(Error::EmptyInput("nothing to aggregate"));
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / values.len() as f64;
    Ok((mean, var.sqrt()))
}

/// A metric summary over a corpus: per-document scores, the micro score
/// (pooled counts), the macro score (mean of per-document scores) and the
/// spread of the per-document scores.
#[derive(Debug, Clone)]
pub struct ScoreReport {
    pub metric: String,
    pub per_doc: Vec<(String, f64)>,
    pub micro: f64,
    pub macro_avg: f64,
    pub mean: f64,
    pub std: f64,
}

/// Pool per-document `(matched, total)` counts into a report.
pub fn score_report(metric: &str, counts: &[(String, usize, usize)]) -> Result<ScoreReport> {
    if counts.is_empty() {
        return Err(Error::EmptyInput("no documents scored"));
    }
    let per_doc: Vec<(String, f64)> = counts
        .iter()
        .map(|(id, m, t)| (id.clone(), *m as f64 / *t as f64))
        .collect();
    let matched: usize = counts.iter().map(|(_, m, _)| m).sum();
    let total: usize = counts.iter().map(|(_, _, t)| t).sum();
    let scores: Vec<f64> = per_doc.iter().map(|(_, s)| *s).collect();
    let (mean, std) = aggregate(&scores)?;
    Ok(ScoreReport {
        metric: metric.to_string(),
        per_doc,
        micro: matched as f64 / total as f64,
        macro_avg: mean,
        mean,
        std,
    })
}
