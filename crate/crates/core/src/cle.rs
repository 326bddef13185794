//! Non-projective dependency parsing: maximum spanning arborescence over
//! the EDU influence graph, plus the sentence-constrained two-level variant
//! that first solves a sentence-graph arborescence and then parses inside
//! each sentence.

use crate::attention::importance;
use crate::cky::PrefixSums;
use crate::document::Segmentation;
use crate::error::{Error, Result};
use crate::matrix::AttentionMatrix;
use crate::trees::DependencyTree;

/// Fully connected influence graph: `weight(h, d)` says how much EDU `h`
/// influences EDU `d`, which is the attention `d` pays to `h` (the
/// transposed attention entry). Indices are 0-based; the diagonal is unused.
#[derive(Debug, Clone)]
pub struct InfluenceGraph {
    n: usize,
    weights: Vec<f64>,
}

impl InfluenceGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn weight(&self, h: usize, d: usize) -> f64 {
        self.weights[h * self.n + d]
    }
}

/// Transpose the attention matrix into the influence graph.
pub fn build_graph(a: &AttentionMatrix) -> InfluenceGraph {
    let n = a.n();
    let mut weights = vec![0.0f64; n * n];
    for h in 0..n {
        for d in 0..n {
            if h != d {
                weights[h * n + d] = a.get(d, h);
            }
        }
    }
    InfluenceGraph { n, weights }
}

/// Dependency tree via maximum spanning arborescence. The root is the EDU
/// with the highest importance score (smallest position on ties); the
/// arborescence is found by greedy best in-edges with recursive cycle
/// contraction. All ties break toward smaller indices.
pub fn cle_parse(a: &AttentionMatrix) -> Result<DependencyTree> {
    let n = a.n();
    let imp = importance(a);
    let root = argmax(&imp);
    let graph = build_graph(a);
    let mut weights = graph.weights.clone();
    let mut active = vec![true; n];
    let parents = max_arborescence(&mut weights, n, root, &mut active);
    to_tree(parents, root)
}

fn argmax(scores: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in scores.iter().enumerate() {
        if v > scores[best] {
            best = i;
        }
    }
    best
}

fn to_tree(parents: Vec<Option<usize>>, root: usize) -> Result<DependencyTree> {
    let mut heads = vec![0usize; parents.len()];
    for (d, p) in parents.iter().enumerate() {
        match p {
            Some(h) => heads[d] = h + 1,
            None if d == root => heads[d] = 0,
            None => {
                return Err(Error::Internal(format!(
                    "non-root EDU {} has no parent after contraction",
                    d + 1
                )))
            }
        }
    }
    DependencyTree::new(heads)
}

/// Greedy-contract-expand maximum arborescence on a dense score matrix.
/// `scores` is mutated in place for contraction re-weighting; `active`
/// marks vertices not swallowed by a contraction yet.
fn max_arborescence(
    scores: &mut [f64],
    n: usize,
    root: usize,
    active: &mut [bool],
) -> Vec<Option<usize>> {
    // Best in-edge for every active non-root vertex.
    let mut parents: Vec<Option<usize>> = vec![None; n];
    for d in 0..n {
        if d == root || !active[d] {
            continue;
        }
        let mut best: Option<usize> = None;
        for h in 0..n {
            if h == d || !active[h] {
                continue;
            }
            if best.is_none_or(|b| scores[h * n + d] > scores[b * n + d]) {
                best = Some(h);
            }
        }
        parents[d] = best;
    }

    let cycle = match find_cycle(&parents) {
        Some(c) => c,
        None => return parents,
    };

    // Contract the cycle into its smallest vertex.
    let repr = *cycle.iter().min().unwrap();
    let in_cycle = {
        let mut mark = vec![false; n];
        for &v in &cycle {
            mark[v] = true;
        }
        mark
    };
    for &v in &cycle {
        if v != repr {
            active[v] = false;
        }
    }

    // For every outside vertex, fold the cycle into `repr`: the incoming
    // score swaps the cycle edge it would break, w(u, v) - w(cycle -> v);
    // the outgoing score keeps the best edge leaving any cycle vertex.
    let mut incoming_entry = vec![usize::MAX; n]; // entry vertex per outside source
    let mut outgoing_exit = vec![usize::MAX; n]; // exit vertex per outside target
    for u in 0..n {
        if !active[u] || in_cycle[u] {
            continue;
        }
        let mut best_in = f64::NEG_INFINITY;
        let mut best_in_v = usize::MAX;
        let mut best_out = f64::NEG_INFINITY;
        let mut best_out_v = usize::MAX;
        for &v in &cycle {
            let cycle_edge = scores[parents[v].expect("cycle vertex has a parent") * n + v];
            let gain = scores[u * n + v] - cycle_edge;
            if gain > best_in {
                best_in = gain;
                best_in_v = v;
            }
            if scores[v * n + u] > best_out {
                best_out = scores[v * n + u];
                best_out_v = v;
            }
        }
        scores[u * n + repr] = best_in;
        scores[repr * n + u] = best_out;
        incoming_entry[u] = best_in_v;
        outgoing_exit[u] = best_out_v;
    }

    let contracted = max_arborescence(scores, n, root, active);

    // Expand: the edge chosen into `repr` decides which cycle edge breaks.
    let mut result = contracted;
    let entry_source = result[repr].expect("contracted representative has a parent");
    let entry_vertex = incoming_entry[entry_source];
    for &v in &cycle {
        result[v] = if v == entry_vertex {
            Some(entry_source)
        } else {
            parents[v]
        };
    }
    // Redirect children attached to the representative to their true source.
    for d in 0..n {
        if result[d] == Some(repr) && !in_cycle[d] && outgoing_exit[d] != usize::MAX {
            result[d] = Some(outgoing_exit[d]);
        }
    }
    result
}

fn find_cycle(parents: &[Option<usize>]) -> Option<Vec<usize>> {
    let n = parents.len();
    // 0 = unvisited, 1 = on current path, 2 = done
    let mut state = vec![0u8; n];
    for start in 0..n {
        if state[start] != 0 {
            continue;
        }
        let mut path = Vec::new();
        let mut v = start;
        loop {
            if state[v] == 1 {
                let pos = path.iter().position(|&p| p == v).unwrap();
                return Some(path[pos..].to_vec());
            }
            if state[v] == 2 {
                break;
            }
            state[v] = 1;
            path.push(v);
            match parents[v] {
                Some(p) => v = p,
                None => break,
            }
        }
        for &p in &path {
            state[p] = 2;
        }
    }
    None
}

/// Sentence-constrained variant. The sentence graph averages influence
/// weights between sentence pairs and remembers the strongest EDU pair as
/// the witness for each sentence edge; an arborescence over sentences
/// (rooted at the sentence containing the most important EDU) fixes the
/// inter-sentence arcs, and each sentence is then parsed internally with
/// its witness target (or the global root) as local root.
pub fn cle_parse_sentence_constrained(
    a: &AttentionMatrix,
    seg: &Segmentation,
) -> Result<DependencyTree> {
    let n = a.n();
    if seg.n() != n {
        return Err(Error::SizeMismatch {
            left: seg.n(),
            right: n,
        });
    }
    let num_sents = seg.num_sentences();
    if num_sents == 1 {
        return cle_parse(a);
    }

    let imp = importance(a);
    let root = argmax(&imp);
    let root_sent = seg.sentence_of(root + 1);
    let graph = build_graph(a);

    // Sentence-level scores: mean influence between the EDU blocks. The
    // influence graph is the transposed attention, so the block sum over
    // sources S and targets D is the attention rectangle (rows D, cols S).
    let sums = PrefixSums::new(a);
    let mut sent_scores = vec![0.0f64; num_sents * num_sents];
    let mut witness = vec![(usize::MAX, usize::MAX); num_sents * num_sents];
    for s in 0..num_sents {
        let (s_lo, s_hi) = seg.sentence_span(s);
        for d in 0..num_sents {
            if s == d {
                continue;
            }
            let (d_lo, d_hi) = seg.sentence_span(d);
            // Distinct sentences never touch the diagonal, so the rectangle
            // over the transposed attention is exactly the edge-weight sum.
            let count = ((s_hi - s_lo + 1) * (d_hi - d_lo + 1)) as f64;
            let total = sums.rect(d_lo - 1, d_hi - 1, s_lo - 1, s_hi - 1) / count;
            let mut best = f64::NEG_INFINITY;
            let mut best_pair = (usize::MAX, usize::MAX);
            for src in s_lo..=s_hi {
                for dst in d_lo..=d_hi {
                    let w = graph.weight(src - 1, dst - 1);
                    if w > best {
                        best = w;
                        best_pair = (src, dst);
                    }
                }
            }
            sent_scores[s * num_sents + d] = total;
            witness[s * num_sents + d] = best_pair;
        }
    }

    let mut active = vec![true; num_sents];
    let sent_parents = max_arborescence(&mut sent_scores, num_sents, root_sent, &mut active);

    // Local root per sentence: witness target for sentences entered from
    // outside, the global root for the root sentence.
    let mut heads = vec![0usize; n];
    let mut local_root = vec![usize::MAX; num_sents];
    local_root[root_sent] = root + 1;
    for d_sent in 0..num_sents {
        if d_sent == root_sent {
            continue;
        }
        let s_sent = sent_parents[d_sent].ok_or_else(|| {
            Error::Internal(format!("sentence {d_sent} unreached by the sentence tree"))
        })?;
        let (src, dst) = witness[s_sent * num_sents + d_sent];
        heads[dst - 1] = src;
        local_root[d_sent] = dst;
    }

    // Parse each sentence internally around its local root.
    for (sent, &sent_root) in local_root.iter().enumerate() {
        let (lo, hi) = seg.sentence_span(sent);
        let size = hi - lo + 1;
        if size == 1 {
            continue;
        }
        let mut sub = vec![0.0f64; size * size];
        for u in 0..size {
            for v in 0..size {
                if u != v {
                    sub[u * size + v] = graph.weight(lo - 1 + u, lo - 1 + v);
                }
            }
        }
        let sub_root = sent_root - lo;
        let mut sub_active = vec![true; size];
        let parents = max_arborescence(&mut sub, size, sub_root, &mut sub_active);
        for (d, p) in parents.iter().enumerate() {
            if let Some(h) = p {
                heads[lo - 1 + d] = lo + h;
            }
        }
    }

    heads[root] = 0;
    DependencyTree::new(heads)
}
