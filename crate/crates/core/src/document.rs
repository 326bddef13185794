//! Annotated documents: EDU sequences with sentence/paragraph membership and
//! the per-layer attention tensors exported for them.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::AttentionMatrix;

/// One elementary discourse unit. Positions are 1-based; sentence and
/// paragraph ids are 0-based and dense.
#[derive(Debug, Clone, PartialEq)]
pub struct EduInfo {
    pub position: usize,
    pub sent_id: usize,
    pub para_id: usize,
    pub text: Option<String>,
}

/// All attention heads of one transformer layer, each an `n x n` matrix.
#[derive(Debug, Clone)]
pub struct AttentionLayer {
    pub layer_index: usize,
    pub heads: Vec<AttentionMatrix>,
}

/// A document ready for tree induction: EDUs in order plus the attention
/// tensor. Immutable after construction; safe to share across workers.
#[derive(Debug, Clone)]
pub struct AnnotatedDocument {
    pub doc_id: String,
    pub edus: Vec<EduInfo>,
    pub layers: Vec<AttentionLayer>,
}

impl AnnotatedDocument {
    pub fn n(&self) -> usize {
        self.edus.len()
    }

    /// Sentence/paragraph boundary structure, derived from the EDUs.
    /// Requires the document to pass validation first.
    pub fn segmentation(&self) -> Result<Segmentation> {
        Segmentation::from_edus(&self.edus)
    }
}

/// A violated document invariant. Violations are data, not exceptions: the
/// validator reports all of them and callers decide what to do.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    Empty,
    BadPosition {
        index: usize,
        got: usize,
    },
    SentenceNotContiguous {
        position: usize,
    },
    SentenceIdsNotDense {
        position: usize,
    },
    ParagraphNotContiguous {
        position: usize,
    },
    ParagraphIdsNotDense {
        position: usize,
    },
    ParagraphSplitsSentence {
        sent_id: usize,
    },
    LayerIndexOutOfOrder {
        index: usize,
        got: usize,
    },
    LayerWithoutHeads {
        layer: usize,
    },
    MatrixDimMismatch {
        layer: usize,
        head: usize,
        got: usize,
        expected: usize,
    },
    RaggedHeadCount {
        layer: usize,
        got: usize,
        expected: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => write!(f, "document has no EDUs"),
            Violation::BadPosition { index, got } => {
                write!(f, "EDU at index {index} has position {got}, expected {}", index + 1)
            }
            Violation::SentenceNotContiguous { position } => {
                write!(f, "sentence not contiguous at EDU {position}")
            }
            Violation::SentenceIdsNotDense { position } => {
                write!(f, "sentence ids skip a value at EDU {position}")
            }
            Violation::ParagraphNotContiguous { position } => {
                write!(f, "paragraph not contiguous at EDU {position}")
            }
            Violation::ParagraphIdsNotDense { position } => {
                write!(f, "paragraph ids skip a value at EDU {position}")
            }
            Violation::ParagraphSplitsSentence { sent_id } => {
                write!(f, "sentence {sent_id} spans more than one paragraph")
            }
            Violation::LayerIndexOutOfOrder { index, got } => {
                write!(f, "layer at index {index} is numbered {got}, expected {index}")
            }
            Violation::LayerWithoutHeads { layer } => write!(f, "layer {layer} has no heads"),
            Violation::MatrixDimMismatch { layer, head, got, expected } => write!(
                f,
                "matrix dimension mismatch: layer {layer} head {head} is {got}x{got}, document has {expected} EDUs"
            ),
            Violation::RaggedHeadCount { layer, got, expected } => {
                write!(f, "layer {layer} has {got} heads, expected {expected}")
            }
        }
    }
}

/// Check every structural invariant of a document and return all breaches.
/// An empty result means the document is well-formed.
pub fn validate_document(doc: &AnnotatedDocument) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = doc.edus.len();
    if n == 0 {
        out.push(Violation::Empty);
        return out;
    }

    for (index, edu) in doc.edus.iter().enumerate() {
        if edu.position != index + 1 {
            out.push(Violation::BadPosition {
                index,
                got: edu.position,
            });
        }
    }

    if doc.edus[0].sent_id != 0 {
        out.push(Violation::SentenceIdsNotDense { position: 1 });
    }
    if doc.edus[0].para_id != 0 {
        out.push(Violation::ParagraphIdsNotDense { position: 1 });
    }
    for w in doc.edus.windows(2) {
        let (prev, cur) = (&w[0], &w[1]);
        if cur.sent_id < prev.sent_id {
            out.push(Violation::SentenceNotContiguous {
                position: cur.position,
            });
        } else if cur.sent_id > prev.sent_id + 1 {
            out.push(Violation::SentenceIdsNotDense {
                position: cur.position,
            });
        }
        if cur.para_id < prev.para_id {
            out.push(Violation::ParagraphNotContiguous {
                position: cur.position,
            });
        } else if cur.para_id > prev.para_id + 1 {
            out.push(Violation::ParagraphIdsNotDense {
                position: cur.position,
            });
        }
        // A paragraph boundary may only fall on a sentence boundary.
        if cur.para_id != prev.para_id && cur.sent_id == prev.sent_id {
            out.push(Violation::ParagraphSplitsSentence {
                sent_id: cur.sent_id,
            });
        }
    }

    let head_count = doc.layers.first().map(|l| l.heads.len());
    for (index, layer) in doc.layers.iter().enumerate() {
        if layer.layer_index != index {
            out.push(Violation::LayerIndexOutOfOrder {
                index,
                got: layer.layer_index,
            });
        }
        if layer.heads.is_empty() {
            out.push(Violation::LayerWithoutHeads { layer: index });
        }
        if let Some(expected) = head_count {
            if layer.heads.len() != expected && !layer.heads.is_empty() {
                out.push(Violation::RaggedHeadCount {
                    layer: index,
                    got: layer.heads.len(),
                    expected,
                });
            }
        }
        for (head, m) in layer.heads.iter().enumerate() {
            if m.n() != n {
                out.push(Violation::MatrixDimMismatch {
                    layer: index,
                    head,
                    got: m.n(),
                    expected: n,
                });
            }
        }
    }

    out
}

/// Sentence and paragraph boundary structure over EDU positions (1-based).
#[derive(Debug, Clone, PartialEq)]
pub struct Segmentation {
    sent_of: Vec<usize>,
    para_of: Vec<usize>,
    sent_spans: Vec<(usize, usize)>,
    para_spans: Vec<(usize, usize)>,
}

impl Segmentation {
    pub fn from_edus(edus: &[EduInfo]) -> Result<Self> {
        if edus.is_empty() {
            return Err(Error::EmptyInput("document has no EDUs"));
        }
        let sent_of: Vec<usize> = edus.iter().map(|e| e.sent_id).collect();
        let para_of: Vec<usize> = edus.iter().map(|e| e.para_id).collect();
        let sent_spans = spans_of(&sent_of)
            .ok_or_else(|| Error::BadSegmentation("sentence ids not contiguous".into()))?;
        let para_spans = spans_of(&para_of)
            .ok_or_else(|| Error::BadSegmentation("paragraph ids not contiguous".into()))?;
        Ok(Self {
            sent_of,
            para_of,
            sent_spans,
            para_spans,
        })
    }

    /// Whole document as one sentence in one paragraph.
    pub fn uniform(n: usize) -> Self {
        Self {
            sent_of: vec![0; n],
            para_of: vec![0; n],
            sent_spans: vec![(1, n)],
            para_spans: vec![(1, n)],
        }
    }

    /// Build straight from per-sentence EDU counts (test and fixture helper).
    pub fn from_sentence_lengths(lengths: &[usize]) -> Result<Self> {
        let edus = edus_from_lengths(lengths, None)?;
        Self::from_edus(&edus)
    }

    pub fn n(&self) -> usize {
        self.sent_of.len()
    }

    pub fn num_sentences(&self) -> usize {
        self.sent_spans.len()
    }

    /// 0-based sentence id of a 1-based EDU position.
    pub fn sentence_of(&self, pos: usize) -> usize {
        self.sent_of[pos - 1]
    }

    pub fn paragraph_of(&self, pos: usize) -> usize {
        self.para_of[pos - 1]
    }

    /// 1-based inclusive EDU span of a sentence.
    pub fn sentence_span(&self, sent: usize) -> (usize, usize) {
        self.sent_spans[sent]
    }

    pub fn sentence_spans(&self) -> &[(usize, usize)] {
        &self.sent_spans
    }

    pub fn is_sentence_start(&self, pos: usize) -> bool {
        self.sent_spans[self.sent_of[pos - 1]].0 == pos
    }

    pub fn is_sentence_end(&self, pos: usize) -> bool {
        self.sent_spans[self.sent_of[pos - 1]].1 == pos
    }

    pub fn is_paragraph_start(&self, pos: usize) -> bool {
        self.para_spans[self.para_of[pos - 1]].0 == pos
    }

    pub fn is_paragraph_end(&self, pos: usize) -> bool {
        self.para_spans[self.para_of[pos - 1]].1 == pos
    }
}

fn spans_of(ids: &[usize]) -> Option<Vec<(usize, usize)>> {
    let mut spans: Vec<(usize, usize)> = Vec::new();
    for (i, &id) in ids.iter().enumerate() {
        let pos = i + 1;
        if id == spans.len() {
            spans.push((pos, pos));
        } else if id + 1 == spans.len() {
            spans[id].1 = pos;
        } else {
            return None;
        }
    }
    Some(spans)
}

/// Construct an EDU list from per-sentence lengths, optionally grouped into
/// paragraphs by sentence counts. Handy for fixtures.
pub fn edus_from_lengths(
    sent_lengths: &[usize],
    para_sents: Option<&[usize]>,
) -> Result<Vec<EduInfo>> {
    if sent_lengths.is_empty() || sent_lengths.contains(&0) {
        return Err(Error::BadSegmentation(
            "sentence lengths must be positive".into(),
        ));
    }
    let mut para_of_sent = Vec::new();
    match para_sents {
        Some(counts) => {
            if counts.iter().sum::<usize>() != sent_lengths.len() {
                return Err(Error::BadSegmentation(
                    "paragraph sentence counts do not cover all sentences".into(),
                ));
            }
            for (p, &c) in counts.iter().enumerate() {
                para_of_sent.extend(std::iter::repeat_n(p, c));
            }
        }
        None => para_of_sent = vec![0; sent_lengths.len()],
    }
    let mut edus = Vec::new();
    let mut pos = 1;
    for (s, &len) in sent_lengths.iter().enumerate() {
        for _ in 0..len {
            edus.push(EduInfo {
                position: pos,
                sent_id: s,
                para_id: para_of_sent[s],
                text: None,
            });
            pos += 1;
        }
    }
    Ok(edus)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(sent_ids: &[usize], heads: Vec<AttentionMatrix>) -> AnnotatedDocument {
        AnnotatedDocument {
            doc_id: "t".into(),
            edus: sent_ids
                .iter()
                .enumerate()
                .map(|(i, &s)| EduInfo {
                    position: i + 1,
                    sent_id: s,
                    para_id: 0,
                    text: None,
                })
                .collect(),
            layers: vec![AttentionLayer {
                layer_index: 0,
                heads,
            }],
        }
    }

    #[test]
    fn minimal_document_is_ok() {
        let m = AttentionMatrix::new(2, vec![0.5, 0.5, 0.5, 0.5]).unwrap();
        let d = doc(&[0, 0], vec![m]);
        assert!(validate_document(&d).is_empty());
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        // A 3x3 head attached to a 2-EDU document.
        let m = AttentionMatrix::new(3, vec![0.0; 9]).unwrap();
        let d = doc(&[0, 0], vec![m]);
        let violations = validate_document(&d);
        assert!(violations.iter().any(|v| matches!(
            v,
            Violation::MatrixDimMismatch {
                got: 3,
                expected: 2,
                ..
            }
        )));
    }

    #[test]
    fn non_contiguous_sentence_is_reported() {
        let m = AttentionMatrix::new(3, vec![1.0 / 3.0; 9]).unwrap();
        let d = doc(&[0, 1, 0], vec![m]);
        let violations = validate_document(&d);
        assert!(violations
            .iter()
            .any(|v| matches!(v, Violation::SentenceNotContiguous { position: 3 })));
    }

    #[test]
    fn segmentation_boundaries() {
        let edus = edus_from_lengths(&[2, 3, 1], Some(&[2, 1])).unwrap();
        let seg = Segmentation::from_edus(&edus).unwrap();
        assert_eq!(seg.num_sentences(), 3);
        assert_eq!(seg.sentence_span(1), (3, 5));
        assert!(seg.is_sentence_start(3));
        assert!(seg.is_sentence_end(5));
        assert!(!seg.is_sentence_end(4));
        assert_eq!(seg.paragraph_of(5), 0);
        assert_eq!(seg.paragraph_of(6), 1);
        assert!(seg.is_paragraph_start(6));
        assert!(seg.is_paragraph_end(5));
    }
}
