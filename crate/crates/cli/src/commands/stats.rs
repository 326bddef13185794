use attndisco::{corpus_stats, locality_report, DependencyTree};

use crate::args::StatsArgs;
use crate::commands::{fmt4, pair_by_id};
use crate::error::{CliError, CliResult};
use crate::formats::dep_trees::read_dep_file;

pub fn run(args: &StatsArgs) -> CliResult<()> {
    let docs = read_dep_file(&args.trees)?;
    let trees: Vec<DependencyTree> = docs.iter().map(|(_, t)| t.clone()).collect();
    let stats = corpus_stats(&trees).map_err(CliError::from)?;
    println!(
        "docs={} branch_width={} height={} leaf_ratio={} arc_length={} vacuous={}%",
        stats.docs,
        fmt4(stats.branch_width),
        fmt4(stats.height),
        fmt4(stats.leaf_ratio_micro),
        fmt4(stats.norm_arc_length),
        fmt4(stats.vacuous_pct)
    );

    if let Some(gold_path) = &args.gold {
        let golds = read_dep_file(gold_path)?;
        let paired = pair_by_id(docs, golds)?;
        let preds: Vec<DependencyTree> = paired.iter().map(|(_, p, _)| p.clone()).collect();
        let gold_trees: Vec<DependencyTree> = paired.iter().map(|(_, _, g)| g.clone()).collect();
        let (corr, ours, gt) = locality_report(&preds, &gold_trees).map_err(CliError::from)?;
        println!(
            "locality correct={} ours={} gold={}",
            fmt4(corr),
            fmt4(ours),
            fmt4(gt)
        );
    }
    Ok(())
}
