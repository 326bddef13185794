//! Seeded generators for synthetic structures: random binary/n-ary gold
//! trees, dependency trees and segmentations. Used by the certification
//! checks and for building fixture corpora; everything is deterministic in
//! the seed.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::document::{edus_from_lengths, EduInfo, Segmentation};
use crate::error::Result;
use crate::treeops::{Mark, NaryChild, NaryTree};
use crate::trees::{ConstNode, ConstituencyTree, DependencyTree, Nuclearity};

fn below(rng: &mut ChaCha8Rng, bound: usize) -> usize {
    debug_assert!(bound > 0);
    (rand_chacha::rand_core::RngCore::next_u64(rng) % bound as u64) as usize
}

/// Random binary tree over `1..=n` with uniformly chosen split points,
/// optionally labeling every internal node with a random nuclearity.
pub fn random_binary_tree(n: usize, seed: u64, labeled: bool) -> Result<ConstituencyTree> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    fn build(i: usize, j: usize, rng: &mut ChaCha8Rng, labeled: bool) -> ConstNode {
        if i == j {
            return ConstNode::leaf(i);
        }
        let k = i + below(rng, j - i);
        let label = if labeled {
            Some(match below(rng, 3) {
                0 => Nuclearity::NN,
                1 => Nuclearity::NS,
                _ => Nuclearity::SN,
            })
        } else {
            None
        };
        let left = build(i, k, rng, labeled);
        let right = build(k + 1, j, rng, labeled);
        ConstNode::internal(label, left, right)
    }
    ConstituencyTree::new(build(1, n, &mut rng, labeled))
}

/// Random n-ary gold tree (single root) with per-child marks; every node
/// has 2..=4 children and at least one Nucleus child.
pub fn random_nary_tree(n: usize, seed: u64) -> NaryTree {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    build_nary(1, n, &mut rng)
}

fn build_nary(i: usize, j: usize, rng: &mut ChaCha8Rng) -> NaryTree {
    if i == j {
        return NaryTree::Leaf(i);
    }
    let width = j - i + 1;
    let arity = 2 + below(rng, width.min(4) - 1);
    // cut the span into `arity` non-empty blocks
    let mut cuts = Vec::new();
    let mut remaining = width - arity;
    let mut start = i;
    for part in 0..arity {
        let extra = if part + 1 == arity {
            remaining
        } else {
            let e = below(rng, remaining + 1);
            remaining -= e;
            e
        };
        let end = start + extra;
        cuts.push((start, end));
        start = end + 1;
    }
    let mut children: Vec<NaryChild> = cuts
        .into_iter()
        .map(|(a, b)| NaryChild {
            mark: if below(rng, 2) == 0 {
                Mark::Nucleus
            } else {
                Mark::Satellite
            },
            tree: build_nary(a, b, rng),
        })
        .collect();
    if children.iter().all(|c| c.mark == Mark::Satellite) {
        let idx = below(rng, children.len());
        children[idx].mark = Mark::Nucleus;
    }
    NaryTree::Node(children)
}

/// Random dependency tree: each EDU beyond the first attaches to a random
/// earlier-processed node in a random insertion order, then the root is
/// placed at a random position.
pub fn random_dep_tree(n: usize, seed: u64) -> Result<DependencyTree> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (1..=n).collect();
    for i in (1..n).rev() {
        order.swap(i, below(&mut rng, i + 1));
    }
    let mut heads = vec![0usize; n];
    for (idx, &v) in order.iter().enumerate() {
        if idx == 0 {
            heads[v - 1] = 0;
        } else {
            heads[v - 1] = order[below(&mut rng, idx)];
        }
    }
    DependencyTree::new(heads)
}

/// Random segmentation of `n` EDUs into `min_sents..=max_sents` sentences
/// (bounded by `n`), grouped into a random number of paragraphs.
pub fn random_segmentation(
    n: usize,
    seed: u64,
    min_sents: usize,
    max_sents: usize,
) -> Result<(Vec<EduInfo>, Segmentation)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_sents = max_sents.min(n);
    let min_sents = min_sents.min(max_sents).max(1);
    let sents = min_sents + below(&mut rng, max_sents - min_sents + 1);
    let lengths = random_partition(n, sents, &mut rng);
    let paras = 1 + below(&mut rng, sents);
    let para_counts = random_partition(sents, paras, &mut rng);
    let edus = edus_from_lengths(&lengths, Some(&para_counts))?;
    let seg = Segmentation::from_edus(&edus)?;
    Ok((edus, seg))
}

/// Split `total` into exactly `parts` positive counts.
fn random_partition(total: usize, parts: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut lengths = vec![1usize; parts];
    for _ in 0..total - parts {
        let idx = below(rng, parts);
        lengths[idx] += 1;
    }
    lengths
}
