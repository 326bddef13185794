//! Certification command: replay the brute-force comparisons so a user can
//! verify the chart and contraction implementations on their own machine.

use attndisco::oracle::{
    const_tree_admissible, enum_arborescences, enum_binary_trees, enum_projective_trees,
    score_arborescence, score_const_tree, score_dep_tree,
};
use attndisco::synth::random_segmentation;
use attndisco::{
    cky_parse, cle_parse, eisner_parse, importance, random_matrix, CkyScoreVariant, SpanConstraint,
};

use crate::args::OracleArgs;
use crate::error::{CliError, CliResult};

const TOL: f64 = 1e-9;

pub fn run(args: &OracleArgs) -> CliResult<()> {
    let cases = args.cases.max(1);
    let seed = args.seed;
    let mut failed = false;

    failed |= report("cky", cases, 2..=args.max_n.min(8), |n| {
        let trees = enum_binary_trees(n)?;
        let mut worst = 0.0f64;
        for case in 0..cases {
            let a = random_matrix(n, seed ^ (n as u64) << 32 | case)?;
            let (_, score) = cky_parse(&a, &SpanConstraint::none(), CkyScoreVariant::DivideAll)?;
            let best = trees
                .iter()
                .map(|t| score_const_tree(t, &a, CkyScoreVariant::DivideAll))
                .fold(f64::NEG_INFINITY, f64::max);
            worst = worst.max((score - best).abs());
        }
        Ok(worst)
    });

    failed |= report("cky-sentence", cases, 3..=args.max_n.min(7), |n| {
        let trees = enum_binary_trees(n)?;
        let mut worst = 0.0f64;
        for case in 0..cases {
            let (_, seg) = random_segmentation(n, seed ^ 0x51 ^ case, 2, 3)?;
            let constraint = SpanConstraint::sentence(seg);
            let a = random_matrix(n, seed ^ 0x52 ^ (n as u64) << 32 | case)?;
            let (_, score) = cky_parse(&a, &constraint, CkyScoreVariant::DivideAll)?;
            let best = trees
                .iter()
                .filter(|t| const_tree_admissible(t, &constraint))
                .map(|t| score_const_tree(t, &a, CkyScoreVariant::DivideAll))
                .fold(f64::NEG_INFINITY, f64::max);
            worst = worst.max((score - best).abs());
        }
        Ok(worst)
    });

    failed |= report("eisner", cases, 2..=args.max_n.min(7), |n| {
        let trees = enum_projective_trees(n)?;
        let mut worst = 0.0f64;
        for case in 0..cases {
            let a = random_matrix(n, seed ^ 0xE1 ^ (n as u64) << 32 | case)?;
            let got = eisner_parse(&a, &SpanConstraint::none())?;
            let best = trees
                .iter()
                .map(|t| score_dep_tree(t, &a))
                .fold(f64::NEG_INFINITY, f64::max);
            worst = worst.max((score_dep_tree(&got, &a) - best).abs());
        }
        Ok(worst)
    });

    failed |= report("cle", cases, 2..=args.max_n.min(7), |n| {
        let mut worst = 0.0f64;
        for case in 0..cases {
            let a = random_matrix(n, seed ^ 0xC1 ^ (n as u64) << 32 | case)?;
            let got = cle_parse(&a)?;
            let imp = importance(&a);
            let root = imp
                .iter()
                .enumerate()
                .max_by(|x, y| x.1.partial_cmp(y.1).unwrap().then(y.0.cmp(&x.0)))
                .map(|(i, _)| i + 1)
                .unwrap();
            let best = enum_arborescences(n, root)?
                .iter()
                .map(|t| score_arborescence(t, &a))
                .fold(f64::NEG_INFINITY, f64::max);
            worst = worst.max((score_arborescence(&got, &a) - best).abs());
        }
        Ok(worst)
    });

    if failed {
        return Err(CliError::Internal(
            "a parser diverged from its enumeration oracle".into(),
        ));
    }
    Ok(())
}

fn report<F>(name: &str, cases: u64, range: std::ops::RangeInclusive<usize>, mut check: F) -> bool
where
    F: FnMut(usize) -> Result<f64, attndisco::Error>,
{
    let (lo, hi) = (*range.start(), *range.end());
    match range
        .map(&mut check)
        .try_fold(0.0f64, |acc, r| r.map(|v| acc.max(v)))
    {
        Ok(worst) if worst < TOL => {
            println!("{name:<14} n={lo}..{hi} cases={cases} max|err|={worst:.2e} ok");
            false
        }
        Ok(worst) => {
            println!("{name:<14} n={lo}..{hi} cases={cases} max|err|={worst:.2e} FAIL");
            true
        }
        Err(e) => {
            println!("{name:<14} n={lo}..{hi} cases={cases} error: {e}");
            true
        }
    }
}
