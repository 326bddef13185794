//! Brute-force reference implementations.
//!
//! These enumerate complete structure spaces on small instances and score
//! them directly, independently of the chart/contraction code paths, so the
//! dynamic programs and the graph algorithm can be certified exact. They are
//! deliberately naive; keep them that way.

use crate::attention::importance;
use crate::cky::CkyScoreVariant;
use crate::constraint::SpanConstraint;
use crate::error::{Error, Result};
use crate::matrix::AttentionMatrix;
use crate::trees::{ConstNode, ConstituencyTree, DependencyTree};

const MAX_BINARY_N: usize = 10;
const MAX_DEP_N: usize = 7;

/// All binary constituency structures over leaves `1..=n`. There are
/// Catalan(n-1) of them.
pub fn enum_binary_trees(n: usize) -> Result<Vec<ConstituencyTree>> {
    if n == 0 || n > MAX_BINARY_N {
        return Err(Error::OutOfRange {
            n,
            min: 1,
            max: MAX_BINARY_N,
        });
    }
    fn nodes(i: usize, j: usize) -> Vec<ConstNode> {
        if i == j {
            return vec![ConstNode::leaf(i)];
        }
        let mut out = Vec::new();
        for k in i..j {
            for left in nodes(i, k) {
                for right in nodes(k + 1, j) {
                    out.push(ConstNode::internal(None, left.clone(), right.clone()));
                }
            }
        }
        out
    }
    nodes(1, n).into_iter().map(ConstituencyTree::new).collect()
}

/// Recursive tree score under the same scheme the chart parser maximizes:
/// a leaf scores its column sum, an internal node combines its children's
/// scores with the two cross-block attention averages.
pub fn score_const_tree(
    t: &ConstituencyTree,
    a: &AttentionMatrix,
    variant: CkyScoreVariant,
) -> f64 {
    let imp = importance(a);
    fn block_avg(a: &AttentionMatrix, rows: (usize, usize), cols: (usize, usize)) -> f64 {
        let mut sum = 0.0;
        for r in rows.0..=rows.1 {
            for c in cols.0..=cols.1 {
                sum += a.get(r - 1, c - 1);
            }
        }
        sum / ((rows.1 - rows.0 + 1) * (cols.1 - cols.0 + 1)) as f64
    }
    fn walk(node: &ConstNode, a: &AttentionMatrix, imp: &[f64], variant: CkyScoreVariant) -> f64 {
        match node {
            ConstNode::Leaf { pos } => imp[pos - 1],
            ConstNode::Internal { left, right, .. } => {
                let ls = walk(left, a, imp, variant);
                let rs = walk(right, a, imp, variant);
                let lr = block_avg(a, left.span(), right.span());
                let rl = block_avg(a, right.span(), left.span());
                match variant {
                    CkyScoreVariant::DivideAll => (ls + rs + lr + rl) / 2.0,
                    CkyScoreVariant::DivideAverages => ls + rs + (lr + rl) / 2.0,
                }
            }
        }
    }
    walk(t.root(), a, &imp, variant)
}

/// Does every node span of the tree satisfy the constraint? This is the
/// tree-level counterpart of the constrained chart: a tree is reachable by
/// the constrained parser iff all its spans are admissible.
pub fn const_tree_admissible(t: &ConstituencyTree, constraint: &SpanConstraint) -> bool {
    t.spans().iter().all(|&(i, j)| constraint.admissible(i, j))
}

/// All spanning arborescences of the complete digraph on `1..=n` rooted at
/// `root`, as head vectors. Generated by assigning every non-root node each
/// possible head and keeping the acyclic assignments.
pub fn enum_arborescences(n: usize, root: usize) -> Result<Vec<DependencyTree>> {
    if n == 0 || n > MAX_DEP_N {
        return Err(Error::OutOfRange {
            n,
            min: 1,
            max: MAX_DEP_N,
        });
    }
    if root == 0 || root > n {
        return Err(Error::Internal(format!("root {root} outside 1..={n}")));
    }
    let mut out = Vec::new();
    let mut heads = vec![0usize; n];
    fn rec(d: usize, n: usize, root: usize, heads: &mut Vec<usize>, out: &mut Vec<DependencyTree>) {
        if d > n {
            if let Ok(t) = DependencyTree::new(heads.clone()) {
                out.push(t);
            }
            return;
        }
        if d == root {
            heads[d - 1] = 0;
            rec(d + 1, n, root, heads, out);
            return;
        }
        for h in 1..=n {
            if h == d {
                continue;
            }
            heads[d - 1] = h;
            rec(d + 1, n, root, heads, out);
        }
    }
    rec(1, n, root, &mut heads, &mut out);
    Ok(out)
}

/// All single-root projective dependency trees over `1..=n`, generated by
/// recursive span splitting: a root covers the whole span, its children's
/// subtrees tile the rest with contiguous intervals.
pub fn enum_projective_trees(n: usize) -> Result<Vec<DependencyTree>> {
    if n == 0 || n > MAX_DEP_N {
        return Err(Error::OutOfRange {
            n,
            min: 1,
            max: MAX_DEP_N,
        });
    }
    // trees over span [i, j] whose root is attached to `head`
    fn span_trees(
        i: usize,
        j: usize,
        head: usize,
        heads: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        for r in i..=j {
            heads[r - 1] = head;
            tile(i, r - 1, r + 1, j, r, heads, out);
        }
    }
    // tile [li, lr] and [ri, rj] with child subtrees of `root`, then emit
    fn tile(
        li: usize,
        lj: usize,
        ri: usize,
        rj: usize,
        root: usize,
        heads: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if li > lj {
            if ri > rj {
                out.push(heads.clone());
                return;
            }
            // consume a prefix block [ri, split] on the right side
            for split in ri..=rj {
                let snapshot = heads.clone();
                let mut emitted = Vec::new();
                span_trees(ri, split, root, heads, &mut emitted);
                for h in emitted {
                    *heads = h;
                    tile(li, lj, split + 1, rj, root, heads, out);
                }
                *heads = snapshot;
            }
            return;
        }
        // consume a suffix block [split, lj] on the left side
        for split in li..=lj {
            let snapshot = heads.clone();
            let mut emitted = Vec::new();
            span_trees(split, lj, root, heads, &mut emitted);
            for h in emitted {
                *heads = h;
                tile(li, split - 1, ri, rj, root, heads, out);
            }
            *heads = snapshot;
        }
    }
    let mut heads = vec![0usize; n];
    let mut raw = Vec::new();
    span_trees(1, n, 0, &mut heads, &mut raw);
    raw.sort();
    raw.dedup();
    raw.into_iter().map(DependencyTree::new).collect()
}

/// Total score of a dependency tree: arc scores from the influence graph
/// plus the virtual-root arc for its root EDU.
pub fn score_dep_tree(t: &DependencyTree, a: &AttentionMatrix) -> f64 {
    let imp = importance(a);
    let n = a.n() as f64;
    let mut total = imp[t.root() - 1] / n;
    for (h, d) in t.arcs() {
        total += a.get(d - 1, h - 1);
    }
    total
}

/// Arc-only score of an arborescence over the influence graph (no root arc).
pub fn score_arborescence(t: &DependencyTree, a: &AttentionMatrix) -> f64 {
    t.arcs().map(|(h, d)| a.get(d - 1, h - 1)).sum()
}

/// Item spans of the unique bottom-up chart derivation of a projective
/// tree. Used to decide which trees the span-constrained projective parser
/// can reach: it reaches exactly those whose derivation spans are all
/// admissible.
pub fn projective_derivation_spans(t: &DependencyTree) -> Vec<(usize, usize)> {
    let n = t.n();
    let mut children = vec![Vec::new(); n + 1];
    for (h, d) in t.arcs() {
        children[h].push(d);
    }
    // subtree interval of every node
    let mut lo = vec![0usize; n + 1];
    let mut hi = vec![0usize; n + 1];
    fn interval(v: usize, children: &[Vec<usize>], lo: &mut [usize], hi: &mut [usize]) {
        lo[v] = v;
        hi[v] = v;
        for &c in &children[v] {
            interval(c, children, lo, hi);
            lo[v] = lo[v].min(lo[c]);
            hi[v] = hi[v].max(hi[c]);
        }
    }
    let root = t.root();
    interval(root, &children, &mut lo, &mut hi);

    let mut spans = Vec::new();
    for (h, kids) in children.iter().enumerate().skip(1) {
        let mut right: Vec<usize> = kids.iter().copied().filter(|&d| d > h).collect();
        right.sort();
        for &d in &right {
            spans.push((h, d)); // incomplete item for the arc
            spans.push((h, hi[d])); // complete item after absorbing d's subtree
        }
        let mut left: Vec<usize> = kids.iter().copied().filter(|&d| d < h).collect();
        left.sort_by(|x, y| y.cmp(x)); // inner to outer
        for &d in &left {
            spans.push((d, h));
            spans.push((lo[d], h));
        }
    }
    // final combination around the root
    spans.push((1, root));
    spans.push((root, n));
    spans.retain(|&(i, j)| i != j);
    spans
}

/// Is the projective tree reachable by the constrained chart parser?
pub fn projective_tree_admissible(t: &DependencyTree, constraint: &SpanConstraint) -> bool {
    projective_derivation_spans(t)
        .iter()
        .all(|&(i, j)| constraint.admissible(i, j))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_tree_counts_are_catalan() {
        assert_eq!(enum_binary_trees(1).unwrap().len(), 1);
        assert_eq!(enum_binary_trees(3).unwrap().len(), 2);
        assert_eq!(enum_binary_trees(4).unwrap().len(), 5);
        assert_eq!(enum_binary_trees(6).unwrap().len(), 42);
        assert!(enum_binary_trees(11).is_err());
        assert!(enum_binary_trees(0).is_err());
    }

    #[test]
    fn reference_scores_cover_the_base_cases() {
        let a = AttentionMatrix::new(2, vec![0.1, 0.9, 0.8, 0.2]).unwrap();
        let leaf = ConstituencyTree::new(ConstNode::leaf(1)).unwrap();
        let one = AttentionMatrix::new(1, vec![0.4]).unwrap();
        assert_eq!(score_const_tree(&leaf, &one, CkyScoreVariant::DivideAll), 0.4);
        let pair = ConstituencyTree::new(ConstNode::internal(
            None,
            ConstNode::leaf(1),
            ConstNode::leaf(2),
        ))
        .unwrap();
        let score = score_const_tree(&pair, &a, CkyScoreVariant::DivideAll);
        assert!((score - 1.85).abs() < 1e-12);
    }

    #[test]
    fn arborescence_counts() {
        assert_eq!(enum_arborescences(2, 1).unwrap().len(), 1);
        let three = enum_arborescences(3, 1).unwrap();
        assert_eq!(three.len(), 3);
        let heads: Vec<&[usize]> = three.iter().map(|t| t.heads()).collect();
        assert!(heads.contains(&&[0, 1, 1][..]));
        assert!(heads.contains(&&[0, 1, 2][..]));
        assert!(heads.contains(&&[0, 3, 1][..]));
        // Cayley: 4^(4-2) = 16 labeled trees, uniquely oriented from the root.
        assert_eq!(enum_arborescences(4, 1).unwrap().len(), 16);
        assert!(enum_arborescences(8, 1).is_err());
    }

    #[test]
    fn projective_tree_counts() {
        assert_eq!(enum_projective_trees(1).unwrap().len(), 1);
        let two = enum_projective_trees(2).unwrap();
        assert_eq!(two.len(), 2);
        assert_eq!(enum_projective_trees(3).unwrap().len(), 7);
        assert!(enum_projective_trees(8).is_err());
    }

    #[test]
    fn projective_enumeration_matches_filtered_arborescences() {
        // Independent cross-check: filter all arborescences over all roots
        // by the interval-contiguity definition of projectivity.
        for n in 1..=5usize {
            let mut expected = 0usize;
            for root in 1..=n {
                for t in enum_arborescences(n, root).unwrap() {
                    if is_projective(&t) {
                        expected += 1;
                    }
                }
            }
            assert_eq!(enum_projective_trees(n).unwrap().len(), expected, "n={n}");
        }
    }

    fn is_projective(t: &DependencyTree) -> bool {
        // every subtree covers a contiguous interval
        let n = t.n();
        for v in 1..=n {
            let mut members = vec![false; n + 1];
            #[allow(clippy::needless_range_loop)]
            for d in 1..=n {
                let mut cur = d;
                let mut steps = 0;
                loop {
                    if cur == v {
                        members[d] = true;
                        break;
                    }
                    cur = t.head(cur);
                    steps += 1;
                    if cur == 0 || steps > n {
                        break;
                    }
                }
            }
            members[v] = true;
            let lo = (1..=n).find(|&d| members[d]).unwrap();
            let hi = (1..=n).rev().find(|&d| members[d]).unwrap();
            if (lo..=hi).any(|d| !members[d]) {
                return false;
            }
        }
        true
    }

    #[test]
    fn derivation_spans_of_a_chain() {
        // 1 <- 2 <- 3 (heads [0,1,2]): arcs (1,2),(2,3)
        let t = DependencyTree::new(vec![0, 1, 2]).unwrap();
        let spans = projective_derivation_spans(&t);
        assert!(spans.contains(&(1, 2)));
        assert!(spans.contains(&(2, 3)));
        assert!(spans.contains(&(1, 3)));
    }
}
