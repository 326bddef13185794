use std::fs;

use attndisco::par::par_map;
use attndisco::{rst_parseval, select_matrix, uas, AnnotatedDocument, HeadSelector, Segmentation};

use crate::args::{Algo, MetricArg, SweepArgs};
use crate::commands::{check_algo_constraint, fmt4, induce, ParsedTree};
use crate::error::{CliError, CliResult};
use crate::formats::documents::load_corpus;
use crate::formats::{const_trees, dep_trees};

enum Gold {
    Const(Vec<(String, attndisco::ConstituencyTree)>),
    Dep(Vec<(String, attndisco::DependencyTree)>),
}

pub fn run(args: &SweepArgs) -> CliResult<()> {
    check_algo_constraint(args.algo, args.constraint)?;
    match (args.metric, args.algo) {
        (MetricArg::Parseval, Algo::Cky) => {}
        (MetricArg::Uas, Algo::Eisner | Algo::Cle) => {}
        (MetricArg::Parseval, _) => {
            return Err(CliError::data("--metric parseval requires --algo cky"))
        }
        (MetricArg::Uas, _) => {
            return Err(CliError::data("--metric uas requires --algo eisner or cle"))
        }
    }

    let mut docs: Vec<(AnnotatedDocument, Segmentation)> = Vec::new();
    let mut failures = Vec::new();
    for (path, outcome) in load_corpus(&args.input)? {
        match outcome {
            Ok(doc) => {
                let seg = doc.segmentation().map_err(CliError::from)?;
                docs.push((doc, seg));
            }
            Err(e) => failures.push(format!("{}: {e}", path.display())),
        }
    }
    if !failures.is_empty() {
        return Err(CliError::data(failures.join("\n")));
    }

    // Every document must share the tensor shape for a grid to make sense.
    let shape: Vec<usize> = docs[0].0.layers.iter().map(|l| l.heads.len()).collect();
    for (doc, _) in &docs {
        let this: Vec<usize> = doc.layers.iter().map(|l| l.heads.len()).collect();
        if this != shape {
            return Err(CliError::data(format!(
                "{}: tensor shape {:?} differs from {:?}",
                doc.doc_id, this, shape
            )));
        }
    }

    let gold = match args.metric {
        MetricArg::Parseval => Gold::Const(const_trees::read_binary_trees(&args.gold)?),
        MetricArg::Uas => Gold::Dep(dep_trees::read_dep_file(&args.gold)?),
    };

    // Pair documents with gold trees by id, keeping corpus order.
    let gold_ids: Vec<String> = match &gold {
        Gold::Const(g) => g.iter().map(|(id, _)| id.clone()).collect(),
        Gold::Dep(g) => g.iter().map(|(id, _)| id.clone()).collect(),
    };
    let doc_ids: Vec<String> = docs.iter().map(|(d, _)| d.doc_id.clone()).collect();
    {
        let mut missing: Vec<&String> =
            gold_ids.iter().filter(|id| !doc_ids.contains(id)).collect();
        let mut extra: Vec<&String> = doc_ids.iter().filter(|id| !gold_ids.contains(id)).collect();
        missing.sort();
        extra.sort();
        if !missing.is_empty() || !extra.is_empty() {
            return Err(CliError::data(format!(
                "doc_id mismatch (missing documents: {:?}; without gold: {:?})",
                missing, extra
            )));
        }
    }

    let variant = args.cky_score_variant.into();
    let micro = |selector: HeadSelector| -> CliResult<f64> {
        let counts = par_map(&docs, |(doc, seg)| {
            let a = select_matrix(doc, selector).map_err(CliError::from)?;
            let tree = induce(&a, args.algo, args.constraint, Some(seg), variant)?;
            let (m, t) = match (&tree, &gold) {
                (ParsedTree::Const(p), Gold::Const(g)) => {
                    let gold_tree = &g.iter().find(|(id, _)| *id == doc.doc_id).unwrap().1;
                    rst_parseval(p, gold_tree).map_err(CliError::from)?
                }
                (ParsedTree::Dep(p), Gold::Dep(g)) => {
                    let gold_tree = &g.iter().find(|(id, _)| *id == doc.doc_id).unwrap().1;
                    uas(p, gold_tree).map_err(CliError::from)?
                }
                _ => return Err(CliError::Internal("metric/tree kind mismatch".into())),
            };
            Ok::<(usize, usize), CliError>((m, t))
        });
        let mut matched = 0usize;
        let mut total = 0usize;
        for c in counts {
            let (m, t) = c?;
            matched += m;
            total += t;
        }
        Ok(matched as f64 / total as f64)
    };

    let mut out = String::from("layer,head,score\n");
    for (layer, &heads) in shape.iter().enumerate() {
        for head in 0..heads {
            let score = micro(HeadSelector::single(layer, head))?;
            out.push_str(&format!("{layer},{head},{}\n", fmt4(score)));
        }
        let score = micro(HeadSelector::average(layer))?;
        out.push_str(&format!("{layer},avg,{}\n", fmt4(score)));
    }
    fs::write(&args.out, out)?;
    Ok(())
}
