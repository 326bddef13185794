//! Bracketed constituency tree files.
//!
//! One tree per line. A leaf is `(leaf K)` with a 1-based EDU position; an
//! internal node is `(LABEL child child ...)` where LABEL is one mark per
//! child from `{N, S}` (so binary gold nodes read `NN`, `NS`, `SN`) or the
//! literal `??` for an unlabeled binary node of an induced tree. Comment
//! lines starting with `#` carry the doc id for the trees that follow;
//! several trees under one id form a forest (multi-root document).

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use attndisco::treeops::{Mark, NaryChild, NaryTree};
use attndisco::{ConstNode, ConstituencyTree, Nuclearity};

use crate::error::{CliError, CliResult};

/// Parsed tree with uninterpreted labels.
#[derive(Debug, Clone, PartialEq)]
pub enum RawTree {
    Leaf(usize),
    Node {
        label: String,
        children: Vec<RawTree>,
    },
}

#[derive(Debug, Clone)]
pub struct ConstDoc {
    pub doc_id: String,
    pub trees: Vec<RawTree>,
}

pub fn read_const_file(path: &Path) -> CliResult<Vec<ConstDoc>> {
    let raw =
        fs::read_to_string(path).map_err(|e| CliError::data(format!("{}: {e}", path.display())))?;
    parse_const_text(&raw, &path.display().to_string())
}

pub fn parse_const_text(text: &str, source: &str) -> CliResult<Vec<ConstDoc>> {
    let mut docs: Vec<ConstDoc> = Vec::new();
    let mut pending_id: Option<String> = None;
    let mut anonymous = 0usize;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let id = comment.trim().to_string();
            if !id.is_empty() {
                pending_id = Some(id);
            }
            continue;
        }
        let tree = parse_tree_line(line)
            .map_err(|msg| CliError::data(format!("{source}:{}: {msg}", lineno + 1)))?;
        match pending_id.take() {
            Some(id) => docs.push(ConstDoc {
                doc_id: id,
                trees: vec![tree],
            }),
            None => match docs.last_mut() {
                // additional root for the current document
                Some(doc) => doc.trees.push(tree),
                None => {
                    anonymous += 1;
                    docs.push(ConstDoc {
                        doc_id: format!("doc_{anonymous}"),
                        trees: vec![tree],
                    });
                }
            },
        }
    }
    if docs.is_empty() {
        return Err(CliError::data(format!("{source}: no trees found")));
    }
    Ok(docs)
}

fn tokenize(line: &str) -> Vec<String> {
    line.replace('(', " ( ")
        .replace(')', " ) ")
        .split_whitespace()
        .map(str::to_string)
        .collect()
}

fn parse_tree_line(line: &str) -> Result<RawTree, String> {
    let tokens = tokenize(line);
    let mut pos = 0usize;
    let tree = parse_node(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(format!("trailing tokens after tree: {:?}", &tokens[pos..]));
    }
    Ok(tree)
}

fn parse_node(tokens: &[String], pos: &mut usize) -> Result<RawTree, String> {
    expect(tokens, pos, "(")?;
    let head = next(tokens, pos)?;
    if head == "leaf" {
        let id: usize = next(tokens, pos)?
            .parse()
            .map_err(|_| "leaf position must be a positive integer".to_string())?;
        if id == 0 {
            return Err("leaf positions are 1-based".into());
        }
        expect(tokens, pos, ")")?;
        return Ok(RawTree::Leaf(id));
    }
    let label = head;
    if label != "??" && !label.chars().all(|c| c == 'N' || c == 'S') {
        return Err(format!("unknown node label '{label}'"));
    }
    let mut children = Vec::new();
    while *pos < tokens.len() && tokens[*pos] == "(" {
        children.push(parse_node(tokens, pos)?);
    }
    expect(tokens, pos, ")")?;
    let expected = if label == "??" { 2 } else { label.len() };
    if children.len() != expected {
        return Err(format!(
            "label '{label}' expects {expected} children, found {}",
            children.len()
        ));
    }
    Ok(RawTree::Node { label, children })
}

fn next(tokens: &[String], pos: &mut usize) -> Result<String, String> {
    let t = tokens.get(*pos).ok_or("unexpected end of line")?.clone();
    *pos += 1;
    Ok(t)
}

fn expect(tokens: &[String], pos: &mut usize, what: &str) -> Result<(), String> {
    let t = next(tokens, pos)?;
    if t != what {
        return Err(format!("expected '{what}', found '{t}'"));
    }
    Ok(())
}

/// Interpret a raw tree as a binary constituency tree; `??` maps to an
/// unlabeled node.
pub fn raw_to_binary(raw: &RawTree) -> CliResult<ConstituencyTree> {
    fn node(raw: &RawTree) -> CliResult<ConstNode> {
        match raw {
            RawTree::Leaf(pos) => Ok(ConstNode::leaf(*pos)),
            RawTree::Node { label, children } => {
                if children.len() != 2 {
                    return Err(CliError::data(format!(
                        "node '{label}' is not binary; run --binarize first"
                    )));
                }
                let nuc = match label.as_str() {
                    "??" => None,
                    "NN" => Some(Nuclearity::NN),
                    "NS" => Some(Nuclearity::NS),
                    "SN" => Some(Nuclearity::SN),
                    other => {
                        return Err(CliError::data(format!(
                            "label '{other}' is not a binary nuclearity label"
                        )))
                    }
                };
                Ok(ConstNode::internal(
                    nuc,
                    node(&children[0])?,
                    node(&children[1])?,
                ))
            }
        }
    }
    ConstituencyTree::new(node(raw)?).map_err(CliError::from)
}

/// Interpret a raw tree as an n-ary gold tree with per-child marks. `??`
/// labels have no marks and are rejected.
pub fn raw_to_nary(raw: &RawTree) -> CliResult<NaryTree> {
    let tree = build_nary(raw)?;
    tree.validate().map_err(CliError::from)?;
    Ok(tree)
}

fn build_nary(raw: &RawTree) -> CliResult<NaryTree> {
    match raw {
        RawTree::Leaf(pos) => Ok(NaryTree::Leaf(*pos)),
        RawTree::Node { label, children } => {
            if label == "??" {
                return Err(CliError::data(
                    "tree carries '??' nuclearity; gold marks are required",
                ));
            }
            let marks: Vec<Mark> = label
                .chars()
                .map(|c| {
                    if c == 'N' {
                        Mark::Nucleus
                    } else {
                        Mark::Satellite
                    }
                })
                .collect();
            let converted = children
                .iter()
                .zip(marks)
                .map(|(child, mark)| {
                    Ok(NaryChild {
                        mark,
                        tree: build_nary(child)?,
                    })
                })
                .collect::<CliResult<Vec<_>>>()?;
            Ok(NaryTree::Node(converted))
        }
    }
}

pub fn format_tree(t: &ConstituencyTree) -> String {
    let mut out = String::new();
    fn walk(node: &ConstNode, out: &mut String) {
        match node {
            ConstNode::Leaf { pos } => {
                let _ = write!(out, "(leaf {pos})");
            }
            ConstNode::Internal {
                label, left, right, ..
            } => {
                let tag = label.map_or("??", |l| l.as_str());
                let _ = write!(out, "({tag} ");
                walk(left, out);
                out.push(' ');
                walk(right, out);
                out.push(')');
            }
        }
    }
    walk(t.root(), &mut out);
    out
}

pub fn write_const_file(path: &Path, docs: &[(String, ConstituencyTree)]) -> CliResult<()> {
    let mut out = String::new();
    for (id, tree) in docs {
        let _ = writeln!(out, "# {id}");
        let _ = writeln!(out, "{}", format_tree(tree));
    }
    fs::write(path, out)?;
    Ok(())
}

/// Binary single-root documents for evaluation, keyed by doc id.
pub fn read_binary_trees(path: &Path) -> CliResult<Vec<(String, ConstituencyTree)>> {
    read_const_file(path)?
        .into_iter()
        .map(|doc| {
            if doc.trees.len() != 1 {
                return Err(CliError::data(format!(
                    "{}: multi-root document; run --binarize first",
                    doc.doc_id
                )));
            }
            let tree = raw_to_binary(&doc.trees[0])
                .map_err(|e| CliError::data(format!("{}: {e}", doc.doc_id)))?;
            Ok((doc.doc_id, tree))
        })
        .collect()
}
