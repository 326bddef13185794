use std::collections::HashMap;

use attndisco::par::par_map;
use attndisco::{aggregate, random_matrix, rst_parseval, uas, Segmentation};

use crate::args::{Algo, BaselineArgs, ConstraintArg};
use crate::commands::{check_algo_constraint, fmt4, induce, ParsedTree};
use crate::error::{CliError, CliResult};
use crate::formats::documents::load_corpus;
use crate::formats::{const_trees, dep_trees};

enum GoldTree {
    Const(attndisco::ConstituencyTree),
    Dep(attndisco::DependencyTree),
}

impl GoldTree {
    fn n(&self) -> usize {
        match self {
            GoldTree::Const(t) => t.n(),
            GoldTree::Dep(t) => t.n(),
        }
    }
}

/// Parse seeded random matrices against the gold corpus `runs` times; run
/// `r` uses seed `seed + r` for every document. Returns the per-run micro
/// scores with their mean and population std.
pub fn compute(args: &BaselineArgs) -> CliResult<(f64, f64, Vec<f64>)> {
    if args.runs == 0 {
        return Err(CliError::data("--runs must be at least 1"));
    }
    check_algo_constraint(args.algo, args.constraint)?;

    let golds: Vec<(String, GoldTree)> = match args.algo {
        Algo::Cky => const_trees::read_binary_trees(&args.gold)?
            .into_iter()
            .map(|(id, t)| (id, GoldTree::Const(t)))
            .collect(),
        Algo::Eisner | Algo::Cle => dep_trees::read_dep_file(&args.gold)?
            .into_iter()
            .map(|(id, t)| (id, GoldTree::Dep(t)))
            .collect(),
    };

    // Constraints need sentence boundaries, which tree files cannot supply.
    let mut segs: HashMap<String, Segmentation> = HashMap::new();
    if args.constraint != ConstraintArg::None {
        let docs_dir = args.docs.as_ref().ok_or_else(|| {
            CliError::data(
                "--constraint sentence/paragraph needs --docs pointing at the attention documents (tree files carry no segmentation)",
            )
        })?;
        for (path, outcome) in load_corpus(docs_dir)? {
            let doc = outcome.map_err(|e| CliError::data(format!("{}: {e}", path.display())))?;
            let seg = doc.segmentation().map_err(CliError::from)?;
            segs.insert(doc.doc_id, seg);
        }
        let missing: Vec<&String> = golds
            .iter()
            .map(|(id, _)| id)
            .filter(|id| !segs.contains_key(*id))
            .collect();
        if !missing.is_empty() {
            return Err(CliError::data(format!(
                "--docs provides no segmentation for: {missing:?}"
            )));
        }
    }

    let variant = args.cky_score_variant.into();
    let mut run_scores = Vec::with_capacity(args.runs as usize);
    for r in 0..args.runs {
        let run_seed = args.seed.wrapping_add(r);
        let counts = par_map(&golds, |(id, gold)| {
            let a = random_matrix(gold.n(), run_seed).map_err(CliError::from)?;
            let tree = induce(&a, args.algo, args.constraint, segs.get(id), variant)?;
            match (&tree, gold) {
                (ParsedTree::Const(p), GoldTree::Const(g)) => {
                    rst_parseval(p, g).map_err(CliError::from)
                }
                (ParsedTree::Dep(p), GoldTree::Dep(g)) => uas(p, g).map_err(CliError::from),
                _ => Err(CliError::Internal("tree kind mismatch".into())),
            }
        });
        let mut matched = 0usize;
        let mut total = 0usize;
        for c in counts {
            let (m, t) = c?;
            matched += m;
            total += t;
        }
        run_scores.push(matched as f64 / total as f64);
    }
    let (mean, std) = aggregate(&run_scores).map_err(CliError::from)?;
    Ok((mean, std, run_scores))
}

pub fn run(args: &BaselineArgs) -> CliResult<()> {
    let (mean, std, runs) = compute(args)?;
    let metric = match args.algo {
        Algo::Cky => "parseval",
        Algo::Eisner | Algo::Cle => "uas",
    };
    println!(
        "{metric} random baseline runs={} mean={} std={}",
        runs.len(),
        fmt4(mean),
        fmt4(std)
    );
    Ok(())
}
