//! Constituency and dependency tree types shared across parser, transform
//! and metric modules.

use crate::error::{Error, Result};

/// Nuclearity of a binary node: which child is the more salient one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Nuclearity {
    /// Nucleus-Nucleus
    NN,
    /// Nucleus-Satellite
    NS,
    /// Satellite-Nucleus
    SN,
}

impl Nuclearity {
    pub fn as_str(&self) -> &'static str {
        match self {
            Nuclearity::NN => "NN",
            Nuclearity::NS => "NS",
            Nuclearity::SN => "SN",
        }
    }
}

/// A node of a binary constituency tree. Leaves carry 1-based EDU positions;
/// internal nodes carry their span and an optional nuclearity label (induced
/// trees have none, gold trees have one on every internal node).
#[derive(Debug, Clone, PartialEq)]
pub enum ConstNode {
    Leaf {
        pos: usize,
    },
    Internal {
        label: Option<Nuclearity>,
        span: (usize, usize),
        left: Box<ConstNode>,
        right: Box<ConstNode>,
    },
}

impl ConstNode {
    pub fn leaf(pos: usize) -> Self {
        ConstNode::Leaf { pos }
    }

    /// Join two siblings; the span is computed from the children.
    pub fn internal(label: Option<Nuclearity>, left: ConstNode, right: ConstNode) -> Self {
        let span = (left.span().0, right.span().1);
        ConstNode::Internal {
            label,
            span,
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    pub fn span(&self) -> (usize, usize) {
        match self {
            ConstNode::Leaf { pos } => (*pos, *pos),
            ConstNode::Internal { span, .. } => *span,
        }
    }

    pub fn label(&self) -> Option<Nuclearity> {
        match self {
            ConstNode::Leaf { .. } => None,
            ConstNode::Internal { label, .. } => *label,
        }
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            ConstNode::Leaf { pos } => out.push(*pos),
            ConstNode::Internal { left, right, .. } => {
                left.collect_leaves(out);
                right.collect_leaves(out);
            }
        }
    }

    fn collect_spans(&self, out: &mut Vec<(usize, usize)>) {
        out.push(self.span());
        if let ConstNode::Internal { left, right, .. } = self {
            left.collect_spans(out);
            right.collect_spans(out);
        }
    }

    fn check(&self) -> Result<()> {
        if let ConstNode::Internal {
            span, left, right, ..
        } = self
        {
            let (li, lj) = left.span();
            let (ri, rj) = right.span();
            if lj + 1 != ri || (li, rj) != *span || li > lj || ri > rj {
                return Err(Error::InvalidConstituencyTree(format!(
                    "span {}..{} does not split into {}..{} and {}..{}",
                    span.0, span.1, li, lj, ri, rj
                )));
            }
            left.check()?;
            right.check()?;
        }
        Ok(())
    }
}

/// A binary constituency tree over EDUs `1..=n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstituencyTree {
    root: ConstNode,
    n: usize,
}

impl ConstituencyTree {
    pub fn new(root: ConstNode) -> Result<Self> {
        root.check()?;
        let mut leaves = Vec::new();
        root.collect_leaves(&mut leaves);
        for (i, &pos) in leaves.iter().enumerate() {
            if pos != i + 1 {
                return Err(Error::InvalidConstituencyTree(format!(
                    "leaf {} has position {}, expected {}",
                    i + 1,
                    pos,
                    i + 1
                )));
            }
        }
        let n = leaves.len();
        Ok(Self { root, n })
    }

    pub fn root(&self) -> &ConstNode {
        &self.root
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Spans of all `2n - 1` nodes, leaves and root included.
    pub fn spans(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(2 * self.n - 1);
        self.root.collect_spans(&mut out);
        out
    }

    /// True when every internal node carries a nuclearity label.
    pub fn fully_labeled(&self) -> bool {
        fn walk(node: &ConstNode) -> bool {
            match node {
                ConstNode::Leaf { .. } => true,
                ConstNode::Internal {
                    label, left, right, ..
                } => label.is_some() && walk(left) && walk(right),
            }
        }
        walk(&self.root)
    }
}

/// A dependency tree over EDUs `1..=n`: one head per EDU, with head 0 as the
/// virtual-root sentinel. Validated on construction to be a single-rooted
/// spanning arborescence.
#[derive(Debug, Clone, PartialEq)]
pub struct DependencyTree {
    heads: Vec<usize>,
}

impl DependencyTree {
    pub fn new(heads: Vec<usize>) -> Result<Self> {
        let n = heads.len();
        if n == 0 {
            return Err(Error::InvalidDependencyTree("no EDUs".into()));
        }
        let mut root = None;
        for (i, &h) in heads.iter().enumerate() {
            let d = i + 1;
            if h == 0 {
                if root.replace(d).is_some() {
                    return Err(Error::InvalidDependencyTree("more than one root".into()));
                }
            } else if h > n {
                return Err(Error::InvalidDependencyTree(format!(
                    "EDU {d} has head {h} beyond n={n}"
                )));
            } else if h == d {
                return Err(Error::InvalidDependencyTree(format!(
                    "EDU {d} is its own head"
                )));
            }
        }
        let root = root.ok_or_else(|| Error::InvalidDependencyTree("no root".into()))?;

        // Reachability from the root covers all n nodes exactly when the
        // head relation is acyclic and spanning.
        let mut children = vec![Vec::new(); n + 1];
        for (i, &h) in heads.iter().enumerate() {
            if h != 0 {
                children[h].push(i + 1);
            }
        }
        let mut seen = vec![false; n + 1];
        let mut stack = vec![root];
        let mut count = 0;
        while let Some(v) = stack.pop() {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            count += 1;
            stack.extend(children[v].iter().copied());
        }
        if count != n {
            return Err(Error::InvalidDependencyTree(
                "head relation contains a cycle".into(),
            ));
        }
        Ok(Self { heads })
    }

    pub fn n(&self) -> usize {
        self.heads.len()
    }

    /// Head of a 1-based EDU position (0 = root sentinel).
    pub fn head(&self, d: usize) -> usize {
        self.heads[d - 1]
    }

    pub fn heads(&self) -> &[usize] {
        &self.heads
    }

    /// 1-based position of the root EDU.
    pub fn root(&self) -> usize {
        self.heads.iter().position(|&h| h == 0).unwrap() + 1
    }

    /// Non-root arcs as `(head, dependent)` pairs, dependents in order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.heads
            .iter()
            .enumerate()
            .filter(|(_, &h)| h != 0)
            .map(|(i, &h)| (h, i + 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> Vec<usize> {
        (0..n).collect()
    }

    #[test]
    fn dependency_validation() {
        assert!(DependencyTree::new(chain(4)).is_ok());
        assert!(DependencyTree::new(vec![]).is_err());
        assert!(DependencyTree::new(vec![0, 0]).is_err()); // two roots
        assert!(DependencyTree::new(vec![2, 1]).is_err()); // no root, 2-cycle
        assert!(DependencyTree::new(vec![0, 2]).is_err()); // self-head
        assert!(DependencyTree::new(vec![0, 5]).is_err()); // head out of range
        assert!(DependencyTree::new(vec![0, 3, 4, 3]).is_err()); // 3-4 cycle
    }

    #[test]
    fn dependency_accessors() {
        let t = DependencyTree::new(vec![2, 0, 2]).unwrap();
        assert_eq!(t.root(), 2);
        assert_eq!(t.head(1), 2);
        assert_eq!(t.arcs().collect::<Vec<_>>(), vec![(2, 1), (2, 3)]);
    }

    #[test]
    fn constituency_node_count() {
        // ((1 2) 3): 2n-1 = 5 nodes.
        let t = ConstituencyTree::new(ConstNode::internal(
            None,
            ConstNode::internal(None, ConstNode::leaf(1), ConstNode::leaf(2)),
            ConstNode::leaf(3),
        ))
        .unwrap();
        assert_eq!(t.n(), 3);
        assert_eq!(t.spans().len(), 5);
    }

    #[test]
    fn constituency_rejects_out_of_order_leaves() {
        let bad = ConstNode::internal(None, ConstNode::leaf(2), ConstNode::leaf(1));
        assert!(ConstituencyTree::new(bad).is_err());
    }
}
