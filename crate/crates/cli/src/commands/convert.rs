use attndisco::treeops::{binarize_right, const_to_dep};
use attndisco::ConstituencyTree;

use crate::args::ConvertArgs;
use crate::error::{CliError, CliResult};
use crate::formats::const_trees::{
    raw_to_binary, raw_to_nary, read_const_file, write_const_file, RawTree,
};
use crate::formats::dep_trees::write_dep_file;

fn has_unknown_label(raw: &RawTree) -> bool {
    match raw {
        RawTree::Leaf(_) => false,
        RawTree::Node { label, children } => {
            label == "??" || children.iter().any(has_unknown_label)
        }
    }
}

pub fn run(args: &ConvertArgs) -> CliResult<()> {
    if !args.binarize && !args.to_dep {
        return Err(CliError::data(
            "nothing to do: pass --binarize and/or --to-dep",
        ));
    }
    let docs = read_const_file(&args.input)?;

    let mut binary: Vec<(String, ConstituencyTree)> = Vec::new();
    for doc in &docs {
        let tree = if args.binarize {
            if doc.trees.iter().any(has_unknown_label) {
                // Unlabeled trees are already binary; they pass through, but
                // a forest of them cannot be joined without marks.
                if doc.trees.len() != 1 {
                    return Err(CliError::data(format!(
                        "{}: cannot binarize a multi-root document with '??' labels",
                        doc.doc_id
                    )));
                }
                raw_to_binary(&doc.trees[0])
                    .map_err(|e| CliError::data(format!("{}: {e}", doc.doc_id)))?
            } else {
                let forest = doc
                    .trees
                    .iter()
                    .map(raw_to_nary)
                    .collect::<CliResult<Vec<_>>>()
                    .map_err(|e| CliError::data(format!("{}: {e}", doc.doc_id)))?;
                binarize_right(&forest)
                    .map_err(|e| CliError::data(format!("{}: {e}", doc.doc_id)))?
            }
        } else {
            if doc.trees.len() != 1 {
                return Err(CliError::data(format!(
                    "{}: multi-root document; run --binarize first",
                    doc.doc_id
                )));
            }
            raw_to_binary(&doc.trees[0])
                .map_err(|e| CliError::data(format!("{}: {e}", doc.doc_id)))?
        };
        binary.push((doc.doc_id.clone(), tree));
    }

    if args.to_dep {
        let deps = binary
            .iter()
            .map(|(id, t)| {
                let d = const_to_dep(t).map_err(|e| CliError::data(format!("{id}: {e}")))?;
                Ok((id.clone(), d))
            })
            .collect::<CliResult<Vec<_>>>()?;
        write_dep_file(&args.out, &deps)?;
    } else {
        write_const_file(&args.out, &binary)?;
    }
    Ok(())
}
