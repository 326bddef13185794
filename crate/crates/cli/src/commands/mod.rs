pub mod baseline;
pub mod convert;
pub mod eval;
pub mod oracle;
pub mod parse;
pub mod stats;
pub mod sweep;

use attndisco::{
    cky_parse, cle_parse, cle_parse_sentence_constrained, eisner_parse, AttentionMatrix,
    CkyScoreVariant, ConstituencyTree, DependencyTree, Segmentation, SpanConstraint,
};

use crate::args::{Algo, ConstraintArg};
use crate::error::{CliError, CliResult};

#[derive(Debug, Clone)]
pub enum ParsedTree {
    Const(ConstituencyTree),
    Dep(DependencyTree),
}

/// Reject combinations the pipeline does not define: paragraph constraints
/// exist only for the constituency chart.
pub fn check_algo_constraint(algo: Algo, constraint: ConstraintArg) -> CliResult<()> {
    if constraint == ConstraintArg::Paragraph && algo != Algo::Cky {
        return Err(CliError::data(
            "--constraint paragraph is only defined for --algo cky",
        ));
    }
    Ok(())
}

/// Run one matrix through the selected parser.
pub fn induce(
    a: &AttentionMatrix,
    algo: Algo,
    constraint: ConstraintArg,
    seg: Option<&Segmentation>,
    variant: CkyScoreVariant,
) -> CliResult<ParsedTree> {
    let need_seg = || {
        seg.cloned().ok_or_else(|| {
            CliError::data("sentence/paragraph constraints need document segmentation")
        })
    };
    match algo {
        Algo::Cky => {
            let constraint = match constraint {
                ConstraintArg::None => SpanConstraint::none(),
                ConstraintArg::Sentence => SpanConstraint::sentence(need_seg()?),
                ConstraintArg::Paragraph => SpanConstraint::paragraph(need_seg()?),
            };
            let (tree, _) = cky_parse(a, &constraint, variant)?;
            Ok(ParsedTree::Const(tree))
        }
        Algo::Eisner => {
            let constraint = match constraint {
                ConstraintArg::None => SpanConstraint::none(),
                ConstraintArg::Sentence => SpanConstraint::sentence(need_seg()?),
                ConstraintArg::Paragraph => {
                    return Err(CliError::data(
                        "--constraint paragraph is only defined for --algo cky",
                    ))
                }
            };
            Ok(ParsedTree::Dep(eisner_parse(a, &constraint)?))
        }
        Algo::Cle => match constraint {
            ConstraintArg::None => Ok(ParsedTree::Dep(cle_parse(a)?)),
            ConstraintArg::Sentence => Ok(ParsedTree::Dep(cle_parse_sentence_constrained(
                a,
                &need_seg()?,
            )?)),
            ConstraintArg::Paragraph => Err(CliError::data(
                "--constraint paragraph is only defined for --algo cky",
            )),
        },
    }
}

/// Pair predictions with golds by doc id, in gold order; missing or extra
/// ids are a hard error listing every offender.
pub fn pair_by_id<P, G>(
    preds: Vec<(String, P)>,
    golds: Vec<(String, G)>,
) -> CliResult<Vec<(String, P, G)>> {
    let mut pred_map: std::collections::HashMap<String, P> = std::collections::HashMap::new();
    for (id, p) in preds {
        if pred_map.insert(id.clone(), p).is_some() {
            return Err(CliError::data(format!(
                "duplicate doc_id '{id}' in predictions"
            )));
        }
    }
    let mut missing = Vec::new();
    let mut paired = Vec::new();
    for (id, g) in golds {
        match pred_map.remove(&id) {
            Some(p) => paired.push((id, p, g)),
            None => missing.push(id),
        }
    }
    let mut extra: Vec<String> = pred_map.into_keys().collect();
    extra.sort();
    if !missing.is_empty() || !extra.is_empty() {
        let mut parts = Vec::new();
        if !missing.is_empty() {
            parts.push(format!("missing from predictions: {}", missing.join(", ")));
        }
        if !extra.is_empty() {
            parts.push(format!("not in gold: {}", extra.join(", ")));
        }
        return Err(CliError::data(format!(
            "doc_id mismatch ({})",
            parts.join("; ")
        )));
    }
    Ok(paired)
}

pub fn fmt4(x: f64) -> String {
    format!("{x:.4}")
}
