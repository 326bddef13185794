mod common;

use std::fs;

use attndisco::synth::{random_binary_tree, random_dep_tree};
use attndisco::{random_matrix, AttentionMatrix};
use attndisco_cli::formats::const_trees::{
    format_tree, parse_const_text, raw_to_binary, read_binary_trees, write_const_file,
};
use attndisco_cli::formats::dep_trees::{parse_dep_text, read_dep_file, write_dep_file};
use attndisco_cli::formats::documents::{load_document, read_adm1, write_adm1};

#[test]
fn const_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trees.txt");
    let docs: Vec<(String, attndisco::ConstituencyTree)> = (0..10u64)
        .map(|i| {
            let labeled = i % 2 == 0;
            (
                format!("doc_{i}"),
                random_binary_tree(2 + i as usize, 40 + i, labeled).unwrap(),
            )
        })
        .collect();
    write_const_file(&path, &docs).unwrap();
    let back = read_binary_trees(&path).unwrap();
    assert_eq!(back.len(), docs.len());
    for ((id_a, tree_a), (id_b, tree_b)) in docs.iter().zip(&back) {
        assert_eq!(id_a, id_b);
        assert_eq!(tree_a, tree_b);
    }
}

#[test]
fn dep_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("deps.tsv");
    let docs: Vec<(String, attndisco::DependencyTree)> = (0..10u64)
        .map(|i| {
            (
                format!("doc_{i}"),
                random_dep_tree(1 + i as usize, i).unwrap(),
            )
        })
        .collect();
    write_dep_file(&path, &docs).unwrap();
    let back = read_dep_file(&path).unwrap();
    assert_eq!(docs, back);
}

#[test]
fn nary_and_forest_parsing() {
    let text = "# a\n(NSS (leaf 1) (leaf 2) (leaf 3))\n# b\n(leaf 1)\n(NS (leaf 2) (leaf 3))\n";
    let docs = parse_const_text(text, "test").unwrap();
    assert_eq!(docs.len(), 2);
    assert_eq!(docs[0].doc_id, "a");
    assert_eq!(
        docs[1].trees.len(),
        2,
        "two roots under one comment form a forest"
    );
}

#[test]
fn const_parse_errors() {
    assert!(
        parse_const_text("(NS (leaf 1))", "t").is_err(),
        "arity mismatch"
    );
    assert!(
        parse_const_text("(XY (leaf 1) (leaf 2))", "t").is_err(),
        "bad label"
    );
    assert!(
        parse_const_text("(NS (leaf 1) (leaf 2)", "t").is_err(),
        "unbalanced"
    );
    assert!(parse_const_text("(leaf 0)", "t").is_err(), "zero position");
    assert!(parse_const_text("", "t").is_err(), "empty file");
    // out-of-order leaves parse but fail tree construction
    let doc = parse_const_text("(NS (leaf 2) (leaf 1))", "t").unwrap();
    assert!(raw_to_binary(&doc[0].trees[0]).is_err());
}

#[test]
fn unlabeled_trees_serialize_with_question_marks() {
    let tree = random_binary_tree(4, 9, false).unwrap();
    let text = format_tree(&tree);
    assert!(text.contains("(?? "));
    assert!(!text.contains("NN"));
}

#[test]
fn dep_parse_errors() {
    assert!(
        parse_dep_text("# a\n1\t0\n3\t1\n", "t").is_err(),
        "gap in ids"
    );
    assert!(parse_dep_text("# a\n1\t5\n", "t").is_err(), "head beyond n");
    assert!(
        parse_dep_text("# a\n1\t0\n2\t0\n", "t").is_err(),
        "two roots"
    );
    assert!(
        parse_dep_text("(NS (leaf 1) (leaf 2))", "t").is_err(),
        "wrong format"
    );
    assert!(parse_dep_text("", "t").is_err(), "empty");
}

#[test]
fn adm1_round_trip_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tensor.adm1");
    let heads: Vec<AttentionMatrix> = (0..3u64).map(|s| random_matrix(6, s).unwrap()).collect();
    write_adm1(&path, &heads).unwrap();
    let back = read_adm1(&path).unwrap();
    assert_eq!(back.len(), 3);
    for (orig, read) in heads.iter().zip(&back) {
        for (a, b) in orig.values().iter().zip(read.values()) {
            // the sidecar stores f32
            assert!((a - b).abs() < 1e-6);
        }
    }

    fs::write(&path, b"NOPE").unwrap();
    assert!(read_adm1(&path).is_err());
}

#[test]
fn sidecar_tensor_is_picked_up() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("doc.json");
    let heads: Vec<AttentionMatrix> = (0..2u64)
        .map(|s| random_matrix(3, 77 + s).unwrap())
        .collect();
    write_adm1(&dir.path().join("doc.adm1"), &heads).unwrap();
    common::write_doc_json(&json, "sidecar_doc", &common::plain_edus(3), &[]);
    let doc = load_document(&json).unwrap();
    assert_eq!(doc.layers.len(), 1);
    assert_eq!(doc.layers[0].heads.len(), 2);
    assert_eq!(doc.layers[0].heads[0].n(), 3);
}

#[test]
fn document_validation_failures_are_data_errors() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("bad.json");
    // 2 EDUs but a 3x3 head
    common::write_doc_json(
        &json,
        "bad_doc",
        &common::plain_edus(2),
        &[vec![random_matrix(3, 1).unwrap()]],
    );
    let err = load_document(&json).unwrap_err();
    assert!(err.to_string().contains("matrix dimension mismatch"));

    // negative attention entry is a hard load error
    fs::write(
        &json,
        r#"{"doc_id":"neg","edus":[{"id":1,"sent":0,"para":0}],"layers":[{"layer":0,"heads":[[[-1.0]]]}]}"#,
    )
    .unwrap();
    let err = load_document(&json).unwrap_err();
    assert!(err.to_string().contains("finite and non-negative"), "{err}");
}
