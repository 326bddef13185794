//! Span admissibility under sentence and paragraph boundaries.
//!
//! A span `[i, j]` (1-based, inclusive) is admissible at sentence level iff
//! it stays inside one sentence, or it starts at a sentence start and ends
//! at a sentence end (no partial sentence hangs over either edge). Paragraph
//! level additionally requires multi-sentence spans to stay inside one
//! paragraph unless they run from a paragraph start to a paragraph end.

use crate::document::Segmentation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstraintLevel {
    None,
    Sentence,
    Paragraph,
}

/// Admissibility predicate handed to the parsers. `none()` admits every
/// span; the other levels consult the document's segmentation.
#[derive(Debug, Clone)]
pub struct SpanConstraint {
    level: ConstraintLevel,
    seg: Option<Segmentation>,
}

impl SpanConstraint {
    pub fn none() -> Self {
        Self {
            level: ConstraintLevel::None,
            seg: None,
        }
    }

    pub fn sentence(seg: Segmentation) -> Self {
        Self {
            level: ConstraintLevel::Sentence,
            seg: Some(seg),
        }
    }

    pub fn paragraph(seg: Segmentation) -> Self {
        Self {
            level: ConstraintLevel::Paragraph,
            seg: Some(seg),
        }
    }

    pub fn level(&self) -> ConstraintLevel {
        self.level
    }

    pub fn segmentation(&self) -> Option<&Segmentation> {
        self.seg.as_ref()
    }

    /// Is the 1-based inclusive span `[i, j]` admissible?
    pub fn admissible(&self, i: usize, j: usize) -> bool {
        debug_assert!(i <= j);
        let seg = match (self.level, &self.seg) {
            (ConstraintLevel::None, _) => return true,
            (_, Some(seg)) => seg,
            (_, None) => return true,
        };
        let same_sentence = seg.sentence_of(i) == seg.sentence_of(j);
        let sentence_ok = same_sentence || (seg.is_sentence_start(i) && seg.is_sentence_end(j));
        if !sentence_ok {
            return false;
        }
        if self.level == ConstraintLevel::Paragraph && !same_sentence {
            return seg.paragraph_of(i) == seg.paragraph_of(j)
                || (seg.is_paragraph_start(i) && seg.is_paragraph_end(j));
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::document::edus_from_lengths;

    #[test]
    fn sentence_admissibility() {
        // Sentences {1,2}, {3,4,5}, {6}.
        let edus = edus_from_lengths(&[2, 3, 1], None).unwrap();
        let c = SpanConstraint::sentence(Segmentation::from_edus(&edus).unwrap());
        assert!(c.admissible(1, 2)); // complete first sentence
        assert!(c.admissible(3, 4)); // inside a sentence
        assert!(c.admissible(1, 5)); // two complete sentences
        assert!(c.admissible(1, 6)); // whole document
        assert!(!c.admissible(2, 3)); // both sentences incomplete
        assert!(!c.admissible(1, 4)); // second sentence incomplete
        assert!(!c.admissible(4, 6)); // middle sentence cut open
    }

    #[test]
    fn paragraph_admissibility() {
        // Paragraph 0 = sentences {1,2},{3}; paragraph 1 = sentences {4,5},{6}.
        let edus = edus_from_lengths(&[2, 1, 2, 1], Some(&[2, 2])).unwrap();
        let c = SpanConstraint::paragraph(Segmentation::from_edus(&edus).unwrap());
        assert!(c.admissible(1, 3)); // complete paragraph
        assert!(c.admissible(1, 6)); // both paragraphs
        assert!(c.admissible(4, 5)); // sentence inside second paragraph
        assert!(!c.admissible(3, 5)); // multi-sentence, crosses paragraphs mid-way
        assert!(c.admissible(1, 2)); // single sentence still fine
                                     // Sentence-level violations remain violations.
        assert!(!c.admissible(2, 3));
    }

    #[test]
    fn unconstrained_admits_everything() {
        let c = SpanConstraint::none();
        assert!(c.admissible(2, 5));
    }
}
