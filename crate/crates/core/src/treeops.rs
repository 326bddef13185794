//! Gold-tree preprocessing: right-branching binarization of n-ary trees and
//! forests, nuclearity-driven conversion to dependency trees, and detection
//! of degenerate star trees.

use crate::error::{Error, Result};
use crate::trees::{ConstNode, ConstituencyTree, DependencyTree, Nuclearity};

/// Per-child salience mark of an n-ary node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mark {
    Nucleus,
    Satellite,
}

/// An n-ary constituency tree as found in gold annotations: internal nodes
/// have two or more children, each carrying its own mark, with at least one
/// Nucleus child per node. Documents may arrive as forests.
#[derive(Debug, Clone, PartialEq)]
pub enum NaryTree {
    Leaf(usize),
    Node(Vec<NaryChild>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct NaryChild {
    pub mark: Mark,
    pub tree: NaryTree,
}

impl NaryTree {
    /// Check node arity and the at-least-one-Nucleus rule on every internal
    /// node. Leaf coverage is checked later by the binarized tree.
    pub fn validate(&self) -> Result<()> {
        match self {
            NaryTree::Leaf(_) => Ok(()),
            NaryTree::Node(children) => {
                if children.len() < 2 {
                    return Err(Error::InvalidConstituencyTree(
                        "internal node needs at least two children".into(),
                    ));
                }
                if !children.iter().any(|c| c.mark == Mark::Nucleus) {
                    return Err(Error::InvalidConstituencyTree(
                        "internal node has no Nucleus child".into(),
                    ));
                }
                children.iter().try_for_each(|c| c.tree.validate())
            }
        }
    }
}

/// Right-branching binarization. A k-ary node `(c1 .. ck)` becomes the
/// cascade `(c1 (c2 (.. ck)))`; a forest is joined under a synthetic root
/// the same way, with every top-level tree treated as a Nucleus child.
/// Original children keep their marks; each synthetic spine node is marked
/// Nucleus iff any child it covers is a Nucleus. A cascade step whose two
/// sides are both Satellites (possible when the node's nucleus sits further
/// left in the cascade) gets the label NN, promoting its left side.
pub fn binarize_right(forest: &[NaryTree]) -> Result<ConstituencyTree> {
    if forest.is_empty() {
        return Err(Error::EmptyInput("cannot binarize an empty forest"));
    }
    let children: Vec<NaryChild> = forest
        .iter()
        .map(|t| NaryChild {
            mark: Mark::Nucleus,
            tree: t.clone(),
        })
        .collect();
    let (node, _) = cascade(&children)?;
    ConstituencyTree::new(node)
}

fn label_for(left: Mark, right: Mark) -> Nuclearity {
    match (left, right) {
        (Mark::Nucleus, Mark::Nucleus) => Nuclearity::NN,
        (Mark::Nucleus, Mark::Satellite) => Nuclearity::NS,
        (Mark::Satellite, Mark::Nucleus) => Nuclearity::SN,
        (Mark::Satellite, Mark::Satellite) => Nuclearity::NN,
    }
}

/// Binarize a child list into a right-branching cascade; returns the node
/// and the mark the cascade exposes to its parent (Nucleus iff any covered
/// child is a Nucleus).
fn cascade(children: &[NaryChild]) -> Result<(ConstNode, Mark)> {
    match children {
        [] => Err(Error::EmptyInput("node without children")),
        [only] => {
            let node = binarize_node(&only.tree)?;
            Ok((node, only.mark))
        }
        [first, rest @ ..] => {
            let left = binarize_node(&first.tree)?;
            let (right, right_mark) = cascade(rest)?;
            let label = label_for(first.mark, right_mark);
            let mark = if first.mark == Mark::Nucleus || right_mark == Mark::Nucleus {
                Mark::Nucleus
            } else {
                Mark::Satellite
            };
            Ok((ConstNode::internal(Some(label), left, right), mark))
        }
    }
}

fn binarize_node(tree: &NaryTree) -> Result<ConstNode> {
    match tree {
        NaryTree::Leaf(pos) => Ok(ConstNode::leaf(*pos)),
        NaryTree::Node(children) => {
            if children.len() < 2 {
                return Err(Error::InvalidConstituencyTree(
                    "internal node needs at least two children".into(),
                ));
            }
            let (node, _) = cascade(children)?;
            Ok(node)
        }
    }
}

/// Convert a fully labeled binary tree into its dependency form: each
/// node's head is the head of its nucleus child (the left one for NN), and
/// the other child's head attaches to it. The head of the whole tree gets
/// the root sentinel.
pub fn const_to_dep(t: &ConstituencyTree) -> Result<DependencyTree> {
    let mut heads = vec![0usize; t.n()];
    let root_head = assign(t.root(), &mut heads)?;
    heads[root_head - 1] = 0;
    DependencyTree::new(heads)
}

fn assign(node: &ConstNode, heads: &mut [usize]) -> Result<usize> {
    match node {
        ConstNode::Leaf { pos } => Ok(*pos),
        ConstNode::Internal {
            label,
            span,
            left,
            right,
        } => {
            let label = label.ok_or(Error::MissingNuclearity {
                lo: span.0,
                hi: span.1,
            })?;
            let left_head = assign(left, heads)?;
            let right_head = assign(right, heads)?;
            let (head, dependent) = match label {
                Nuclearity::NN | Nuclearity::NS => (left_head, right_head),
                Nuclearity::SN => (right_head, left_head),
            };
            heads[dependent - 1] = head;
            Ok(head)
        }
    }
}

/// A vacuous tree is the degenerate prediction the structural analysis
/// flags: the root is EDU 1 or 2 and every other EDU hangs directly off it.
/// Single-EDU trees are never reported vacuous.
pub fn is_vacuous(t: &DependencyTree) -> bool {
    let n = t.n();
    if n < 2 {
        return false;
    }
    let root = t.root();
    root <= 2 && t.arcs().all(|(h, _)| h == root)
}
