use attndisco::par::par_map;
use attndisco::{select_matrix, AnnotatedDocument, HeadSelector, Segmentation};

use crate::args::{Algo, ParseArgs, SelectorArgs};
use crate::commands::{check_algo_constraint, induce, ParsedTree};
use crate::error::{CliError, CliResult};
use crate::formats::documents::load_corpus;
use crate::formats::{const_trees, dep_trees};

pub fn selector_from_args(args: &SelectorArgs) -> HeadSelector {
    match args.head {
        Some(h) => HeadSelector::single(args.layer, h),
        None => HeadSelector::average(args.layer),
    }
}

pub fn run(args: &ParseArgs) -> CliResult<()> {
    check_algo_constraint(args.algo, args.constraint)?;
    let selector = selector_from_args(&args.selector);
    let corpus = load_corpus(&args.input)?;

    struct Loaded {
        doc: AnnotatedDocument,
        seg: Segmentation,
    }
    let mut failures: Vec<String> = Vec::new();
    let mut docs: Vec<Loaded> = Vec::new();
    for (path, outcome) in corpus {
        match outcome.and_then(|doc| {
            let seg = doc.segmentation().map_err(CliError::from)?;
            Ok(Loaded { doc, seg })
        }) {
            Ok(loaded) => docs.push(loaded),
            Err(e) => failures.push(format!("{}: {e}", path.display())),
        }
    }

    let variant = args.cky_score_variant.into();
    let results = par_map(&docs, |loaded| {
        let a = select_matrix(&loaded.doc, selector).map_err(CliError::from)?;
        let tree = induce(&a, args.algo, args.constraint, Some(&loaded.seg), variant)?;
        Ok::<(String, ParsedTree), CliError>((loaded.doc.doc_id.clone(), tree))
    });

    let mut const_out = Vec::new();
    let mut dep_out = Vec::new();
    for (loaded, result) in docs.iter().zip(results) {
        match result {
            Ok((id, ParsedTree::Const(t))) => const_out.push((id, t)),
            Ok((id, ParsedTree::Dep(t))) => dep_out.push((id, t)),
            Err(e) => failures.push(format!("{}: {e}", loaded.doc.doc_id)),
        }
    }

    match args.algo {
        Algo::Cky => const_trees::write_const_file(&args.out, &const_out)?,
        Algo::Eisner | Algo::Cle => dep_trees::write_dep_file(&args.out, &dep_out)?,
    }

    if !failures.is_empty() {
        for f in &failures {
            eprintln!("error: {f}");
        }
        return Err(CliError::data(format!(
            "{} of {} documents failed",
            failures.len(),
            failures.len() + const_out.len() + dep_out.len()
        )));
    }
    Ok(())
}
