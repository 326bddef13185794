mod common;

use std::fs;
use std::path::Path;

use attndisco::{random_matrix, AttentionMatrix, EduInfo};
use attndisco_cli::args::{
    Algo, BaselineArgs, ConstraintArg, ConvertArgs, EvalArgs, MetricArg, ParseArgs, ReportArg,
    SelectorArgs, StatsArgs, SweepArgs, VariantArg,
};
use attndisco_cli::commands;

fn running_example() -> AttentionMatrix {
    AttentionMatrix::new(2, vec![0.1, 0.9, 0.8, 0.2]).unwrap()
}

fn selector(layer: usize, head: Option<usize>) -> SelectorArgs {
    SelectorArgs {
        layer,
        head,
        avg_heads: head.is_none(),
    }
}

fn parse_args(input: &Path, algo: Algo, constraint: ConstraintArg, out: &Path) -> ParseArgs {
    ParseArgs {
        input: input.to_path_buf(),
        algo,
        constraint,
        selector: selector(0, None),
        cky_score_variant: VariantArg::DivideAll,
        out: out.to_path_buf(),
    }
}

#[test]
fn parse_cle_writes_the_expected_block() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("doc.json");
    common::write_doc_json(
        &json,
        "two_edus",
        &common::plain_edus(2),
        &[vec![running_example()]],
    );
    let out = dir.path().join("pred.tsv");
    commands::parse::run(&parse_args(&json, Algo::Cle, ConstraintArg::None, &out)).unwrap();
    assert_eq!(
        fs::read_to_string(&out).unwrap(),
        "# two_edus\n1\t2\n2\t0\n"
    );
}

#[test]
fn parse_constrained_cky_forces_the_sentence_split() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("doc.json");
    let edus: Vec<EduInfo> = [(1, 0), (2, 0), (3, 1)]
        .iter()
        .map(|&(position, sent_id)| EduInfo {
            position,
            sent_id,
            para_id: 0,
            text: None,
        })
        .collect();
    let a = AttentionMatrix::new(3, vec![0.0, 0.1, 0.1, 0.1, 0.0, 0.9, 0.1, 0.9, 0.0]).unwrap();
    common::write_doc_json(&json, "two_sents", &edus, &[vec![a]]);
    let out = dir.path().join("pred.txt");
    commands::parse::run(&parse_args(&json, Algo::Cky, ConstraintArg::Sentence, &out)).unwrap();
    assert_eq!(
        fs::read_to_string(&out).unwrap(),
        "# two_sents\n(?? (?? (leaf 1) (leaf 2)) (leaf 3))\n"
    );
}

#[test]
fn parse_rejects_bad_selector_with_a_bound() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("doc.json");
    common::write_doc_json(
        &json,
        "eight_heads",
        &common::plain_edus(2),
        &[(0..8).map(|s| random_matrix(2, s).unwrap()).collect()],
    );
    let mut args = parse_args(&json, Algo::Cle, ConstraintArg::None, &dir.path().join("o"));
    args.selector = selector(0, Some(99));
    let err = commands::parse::run(&args).unwrap_err();
    assert_eq!(err.exit_code(), 2);
}

#[test]
fn paragraph_constraint_is_cky_only() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("doc.json");
    common::write_doc_json(
        &json,
        "d",
        &common::plain_edus(2),
        &[vec![running_example()]],
    );
    for algo in [Algo::Eisner, Algo::Cle] {
        let err = commands::parse::run(&parse_args(
            &json,
            algo,
            ConstraintArg::Paragraph,
            &dir.path().join("o"),
        ))
        .unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("only defined for --algo cky"));
    }
}

fn eval_args(pred: &Path, gold: &Path, metric: MetricArg) -> EvalArgs {
    EvalArgs {
        pred: pred.to_path_buf(),
        gold: gold.to_path_buf(),
        metric,
        report: ReportArg::Both,
        csv: None,
    }
}

#[test]
fn eval_scores_the_span_example() {
    let dir = tempfile::tempdir().unwrap();
    let pred = dir.path().join("pred.txt");
    let gold = dir.path().join("gold.txt");
    fs::write(&pred, "# d\n(?? (leaf 1) (?? (leaf 2) (leaf 3)))\n").unwrap();
    fs::write(&gold, "# d\n(?? (?? (leaf 1) (leaf 2)) (leaf 3))\n").unwrap();
    let report = commands::eval::compute(&eval_args(&pred, &gold, MetricArg::Parseval)).unwrap();
    assert!((report.micro - 0.8).abs() < 1e-12);
    let identical = commands::eval::compute(&eval_args(&gold, &gold, MetricArg::Parseval)).unwrap();
    assert!((identical.micro - 1.0).abs() < 1e-12);
}

#[test]
fn eval_lists_missing_doc_ids() {
    let dir = tempfile::tempdir().unwrap();
    let pred = dir.path().join("pred.tsv");
    let gold = dir.path().join("gold.tsv");
    common::write_dep_fixture(&pred, &[("a".into(), vec![0, 1])]);
    common::write_dep_fixture(&gold, &[("a".into(), vec![0, 1]), ("b".into(), vec![0, 1])]);
    let err = commands::eval::compute(&eval_args(&pred, &gold, MetricArg::Uas)).unwrap_err();
    assert_eq!(err.exit_code(), 2);
    assert!(err.to_string().contains('b'), "{err}");
}

#[test]
fn sweep_grid_matches_manual_evaluation() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("docs");
    fs::create_dir(&corpus).unwrap();
    let heads: Vec<Vec<AttentionMatrix>> = vec![(0..2u64)
        .map(|s| random_matrix(4, 300 + s).unwrap())
        .collect()];
    common::write_doc_json(&corpus.join("a.json"), "a", &common::plain_edus(4), &heads);
    let gold = dir.path().join("gold.tsv");
    common::write_dep_fixture(&gold, &[("a".into(), vec![0, 1, 2, 3])]);
    let out = dir.path().join("grid.csv");
    commands::sweep::run(&SweepArgs {
        input: corpus.clone(),
        algo: Algo::Cle,
        constraint: ConstraintArg::None,
        gold: gold.clone(),
        metric: MetricArg::Uas,
        cky_score_variant: VariantArg::DivideAll,
        out: out.clone(),
    })
    .unwrap();
    let text = fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "layer,head,score");
    assert_eq!(lines.len(), 4, "2 heads + avg + header");

    // cross-check each row against a hand-driven parse + eval
    for (head_idx, line) in lines[1..3].iter().enumerate() {
        let expected: f64 = {
            let a = &heads[0][head_idx];
            let tree = attndisco::cle_parse(a).unwrap();
            let gold_tree = attndisco::DependencyTree::new(vec![0, 1, 2, 3]).unwrap();
            let (m, t) = attndisco::uas(&tree, &gold_tree).unwrap();
            m as f64 / t as f64
        };
        assert_eq!(*line, format!("0,{head_idx},{expected:.4}"));
    }
}

#[test]
fn sweep_with_single_head_gives_equal_rows() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("docs");
    fs::create_dir(&corpus).unwrap();
    common::write_doc_json(
        &corpus.join("a.json"),
        "a",
        &common::plain_edus(2),
        &[vec![running_example()]],
    );
    let gold = dir.path().join("gold.tsv");
    common::write_dep_fixture(&gold, &[("a".into(), vec![2, 0])]);
    let out = dir.path().join("grid.csv");
    commands::sweep::run(&SweepArgs {
        input: corpus,
        algo: Algo::Cle,
        constraint: ConstraintArg::None,
        gold,
        metric: MetricArg::Uas,
        cky_score_variant: VariantArg::DivideAll,
        out: out.clone(),
    })
    .unwrap();
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text, "layer,head,score\n0,0,1.0000\n0,avg,1.0000\n");
}

#[test]
fn sweep_grid_size_is_layers_times_heads_plus_avg() {
    // 6 layers x 8 heads -> 48 head rows + 6 avg rows + the header.
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("docs");
    fs::create_dir(&corpus).unwrap();
    let layers: Vec<Vec<AttentionMatrix>> = (0..6u64)
        .map(|l| (0..8u64).map(|h| random_matrix(4, l * 8 + h).unwrap()).collect())
        .collect();
    common::write_doc_json(&corpus.join("a.json"), "a", &common::plain_edus(4), &layers);
    let gold = dir.path().join("gold.tsv");
    common::write_dep_fixture(&gold, &[("a".into(), vec![0, 1, 2, 3])]);
    let out = dir.path().join("grid.csv");
    commands::sweep::run(&SweepArgs {
        input: corpus,
        algo: Algo::Cle,
        constraint: ConstraintArg::None,
        gold,
        metric: MetricArg::Uas,
        cky_score_variant: VariantArg::DivideAll,
        out: out.clone(),
    })
    .unwrap();
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 55);
    assert_eq!(text.lines().filter(|l| l.contains(",avg,")).count(), 6);
}

#[test]
fn sweep_rejects_ragged_tensors() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("docs");
    fs::create_dir(&corpus).unwrap();
    common::write_doc_json(
        &corpus.join("a.json"),
        "a",
        &common::plain_edus(2),
        &[vec![running_example()]],
    );
    common::write_doc_json(
        &corpus.join("b.json"),
        "b",
        &common::plain_edus(2),
        &[vec![running_example(), running_example()]],
    );
    let gold = dir.path().join("gold.tsv");
    common::write_dep_fixture(&gold, &[("a".into(), vec![2, 0]), ("b".into(), vec![2, 0])]);
    let err = commands::sweep::run(&SweepArgs {
        input: corpus,
        algo: Algo::Cle,
        constraint: ConstraintArg::None,
        gold,
        metric: MetricArg::Uas,
        cky_score_variant: VariantArg::DivideAll,
        out: dir.path().join("grid.csv"),
    })
    .unwrap_err();
    assert_eq!(err.exit_code(), 2);
}

#[test]
fn baseline_is_deterministic_and_rejects_zero_runs() {
    let dir = tempfile::tempdir().unwrap();
    let gold = dir.path().join("gold.tsv");
    common::write_dep_fixture(
        &gold,
        &[("a".into(), vec![0, 1, 2]), ("b".into(), vec![2, 0, 2])],
    );
    let mk = |runs| BaselineArgs {
        gold: gold.clone(),
        algo: Algo::Cle,
        constraint: ConstraintArg::None,
        docs: None,
        cky_score_variant: VariantArg::DivideAll,
        runs,
        seed: 11,
    };
    let first = commands::baseline::compute(&mk(1)).unwrap();
    let second = commands::baseline::compute(&mk(1)).unwrap();
    assert_eq!(first.2, second.2);
    assert_eq!(
        commands::baseline::compute(&mk(0)).unwrap_err().exit_code(),
        2
    );
}

#[test]
fn baseline_parseval_on_two_edus_is_trivially_perfect() {
    // There is only one binary tree over two EDUs.
    let dir = tempfile::tempdir().unwrap();
    let gold = dir.path().join("gold.txt");
    fs::write(&gold, "# a\n(NS (leaf 1) (leaf 2))\n").unwrap();
    let (mean, std, _) = commands::baseline::compute(&BaselineArgs {
        gold: gold.clone(),
        algo: Algo::Cky,
        constraint: ConstraintArg::None,
        docs: None,
        cky_score_variant: VariantArg::DivideAll,
        runs: 4,
        seed: 0,
    })
    .unwrap();
    assert_eq!((mean, std), (1.0, 0.0));
}

#[test]
fn baseline_constraint_requires_docs() {
    let dir = tempfile::tempdir().unwrap();
    let gold = dir.path().join("gold.tsv");
    common::write_dep_fixture(&gold, &[("a".into(), vec![0, 1])]);
    let err = commands::baseline::compute(&BaselineArgs {
        gold,
        algo: Algo::Cle,
        constraint: ConstraintArg::Sentence,
        docs: None,
        cky_score_variant: VariantArg::DivideAll,
        runs: 2,
        seed: 0,
    })
    .unwrap_err();
    assert!(err.to_string().contains("--docs"));
}

#[test]
fn convert_binarizes_and_converts() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("gold.txt");
    fs::write(
        &input,
        "# t\n(NSS (leaf 1) (leaf 2) (leaf 3))\n# f\n(leaf 1)\n(NS (leaf 2) (leaf 3))\n",
    )
    .unwrap();
    let out = dir.path().join("bin.txt");
    commands::convert::run(&ConvertArgs {
        binarize: true,
        to_dep: false,
        input: input.clone(),
        out: out.clone(),
    })
    .unwrap();
    assert_eq!(
        fs::read_to_string(&out).unwrap(),
        "# t\n(NS (leaf 1) (NN (leaf 2) (leaf 3)))\n# f\n(NN (leaf 1) (NS (leaf 2) (leaf 3)))\n"
    );

    let dep_out = dir.path().join("dep.tsv");
    commands::convert::run(&ConvertArgs {
        binarize: true,
        to_dep: true,
        input,
        out: dep_out.clone(),
    })
    .unwrap();
    assert_eq!(
        fs::read_to_string(&dep_out).unwrap(),
        "# t\n1\t0\n2\t1\n3\t2\n\n# f\n1\t0\n2\t1\n3\t2\n"
    );
}

#[test]
fn convert_to_dep_rejects_unlabeled_trees() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("pred.txt");
    fs::write(&input, "# d\n(?? (leaf 1) (leaf 2))\n").unwrap();
    let err = commands::convert::run(&ConvertArgs {
        binarize: false,
        to_dep: true,
        input,
        out: dir.path().join("out.tsv"),
    })
    .unwrap_err();
    assert_eq!(err.exit_code(), 2);
}

#[test]
fn stats_rejects_constituency_input() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("pred.txt");
    fs::write(&input, "# d\n(?? (leaf 1) (leaf 2))\n").unwrap();
    let err = commands::stats::run(&StatsArgs {
        trees: input,
        gold: None,
    })
    .unwrap_err();
    assert_eq!(err.exit_code(), 2);
}

#[test]
fn stats_with_gold_runs_locality() {
    let dir = tempfile::tempdir().unwrap();
    let pred = dir.path().join("pred.tsv");
    let gold = dir.path().join("gold.tsv");
    common::write_dep_fixture(&pred, &[("d".into(), vec![0, 1, 1, 1])]);
    common::write_dep_fixture(&gold, &[("d".into(), vec![0, 1, 2, 3])]);
    commands::stats::run(&StatsArgs {
        trees: pred,
        gold: Some(gold),
    })
    .unwrap();
}
