//! Discourse tree induction from transformer attention matrices.
//!
//! Given a document's EDU-level self-attention scores, this crate induces
//! unlabeled discourse trees three ways — a chart parser for binary
//! constituency trees, a projective dependency parser, and a maximum
//! spanning arborescence for non-projective dependency trees — with
//! optional sentence/paragraph constraints that force complete sentences
//! to form complete subtrees. It also ships the gold-side transforms
//! (right-branching binarization, nuclearity-driven dependency conversion),
//! the span/attachment metrics and structural analyses used to evaluate
//! induced trees, and brute-force enumeration oracles that certify the
//! parsers exact on small inputs.
//!
//! Batch operations are data-parallel via rayon under the default
//! `parallel` feature; disabling it yields an identical sequential build.

pub mod attention;
pub mod cky;
pub mod cle;
pub mod constraint;
pub mod document;
pub mod eisner;
pub mod error;
pub mod matrix;
pub mod metrics;
pub mod oracle;
pub mod par;
pub mod synth;
pub mod treeops;
pub mod trees;

pub use attention::{importance, random_matrix, select_matrix, HeadMode, HeadSelector};
pub use cky::{cky_parse, CkyScoreVariant};
pub use cle::{build_graph, cle_parse, cle_parse_sentence_constrained, InfluenceGraph};
pub use constraint::{ConstraintLevel, SpanConstraint};
pub use document::{
    validate_document, AnnotatedDocument, AttentionLayer, EduInfo, Segmentation, Violation,
};
pub use eisner::eisner_parse;
pub use error::{Error, Result};
pub use matrix::AttentionMatrix;
pub use metrics::{
    aggregate, corpus_stats, locality_report, rst_parseval, score_report, tree_stats, uas,
    CorpusStats, ScoreReport, TreeStats,
};
pub use treeops::{binarize_right, const_to_dep, is_vacuous, Mark, NaryChild, NaryTree};
pub use trees::{ConstNode, ConstituencyTree, DependencyTree, Nuclearity};
