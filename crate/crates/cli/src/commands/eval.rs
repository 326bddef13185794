use std::fs;

use attndisco::{rst_parseval, score_report, uas, ScoreReport};

use crate::args::{EvalArgs, MetricArg, ReportArg};
use crate::commands::{fmt4, pair_by_id};
use crate::error::{CliError, CliResult};
use crate::formats::{const_trees, dep_trees};

pub fn compute(args: &EvalArgs) -> CliResult<ScoreReport> {
    let counts: Vec<(String, usize, usize)> = match args.metric {
        MetricArg::Parseval => {
            let pred = const_trees::read_binary_trees(&args.pred)?;
            let gold = const_trees::read_binary_trees(&args.gold)?;
            pair_by_id(pred, gold)?
                .into_iter()
                .map(|(id, p, g)| {
                    let (m, t) =
                        rst_parseval(&p, &g).map_err(|e| CliError::data(format!("{id}: {e}")))?;
                    Ok((id, m, t))
                })
                .collect::<CliResult<Vec<_>>>()?
        }
        MetricArg::Uas => {
            let pred = dep_trees::read_dep_file(&args.pred)?;
            let gold = dep_trees::read_dep_file(&args.gold)?;
            pair_by_id(pred, gold)?
                .into_iter()
                .map(|(id, p, g)| {
                    let (m, t) = uas(&p, &g).map_err(|e| CliError::data(format!("{id}: {e}")))?;
                    Ok((id, m, t))
                })
                .collect::<CliResult<Vec<_>>>()?
        }
    };
    let metric = match args.metric {
        MetricArg::Parseval => "parseval",
        MetricArg::Uas => "uas",
    };
    let report = score_report(metric, &counts).map_err(CliError::from)?;
    if let Some(csv) = &args.csv {
        let mut out = String::from("doc_id,score\n");
        for (id, score) in &report.per_doc {
            out.push_str(&format!("{id},{}\n", fmt4(*score)));
        }
        fs::write(csv, out)?;
    }
    Ok(report)
}

pub fn run(args: &EvalArgs) -> CliResult<()> {
    let report = compute(args)?;
    println!("{}", render(&report, args.report));
    Ok(())
}

pub fn render(report: &ScoreReport, mode: ReportArg) -> String {
    let docs = report.per_doc.len();
    match mode {
        ReportArg::Micro => format!("{} docs={docs} micro={}", report.metric, fmt4(report.micro)),
        ReportArg::Macro => format!(
            "{} docs={docs} macro={} std={}",
            report.metric,
            fmt4(report.macro_avg),
            fmt4(report.std)
        ),
        ReportArg::Both => format!(
            "{} docs={docs} micro={} macro={} std={}",
            report.metric,
            fmt4(report.micro),
            fmt4(report.macro_avg),
            fmt4(report.std)
        ),
    }
}
