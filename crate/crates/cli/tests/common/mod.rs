//! Shared fixture builders for the CLI integration tests.
#![allow(dead_code)] // each test binary uses a different subset

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use attndisco::{AttentionMatrix, EduInfo};

/// Serialize a document JSON file with the given EDUs and layers of heads.
pub fn write_doc_json(
    path: &Path,
    doc_id: &str,
    edus: &[EduInfo],
    layers: &[Vec<AttentionMatrix>],
) {
    let mut edu_json = Vec::new();
    for e in edus {
        edu_json.push(serde_json::json!({
            "id": e.position,
            "sent": e.sent_id,
            "para": e.para_id,
        }));
    }
    let mut layer_json = Vec::new();
    for (index, heads) in layers.iter().enumerate() {
        let heads_json: Vec<Vec<Vec<f64>>> = heads
            .iter()
            .map(|m| {
                (0..m.n())
                    .map(|r| (0..m.n()).map(|c| m.get(r, c)).collect())
                    .collect()
            })
            .collect();
        layer_json.push(serde_json::json!({"layer": index, "heads": heads_json}));
    }
    let doc = serde_json::json!({
        "doc_id": doc_id,
        "edus": edu_json,
        "layers": layer_json,
    });
    fs::write(path, serde_json::to_string_pretty(&doc).unwrap()).unwrap();
}

/// Uniform single-sentence EDU metadata.
pub fn plain_edus(n: usize) -> Vec<EduInfo> {
    (1..=n)
        .map(|position| EduInfo {
            position,
            sent_id: 0,
            para_id: 0,
            text: None,
        })
        .collect()
}

/// Write a gold dependency TSV file.
pub fn write_dep_fixture(path: &Path, docs: &[(String, Vec<usize>)]) {
    let mut out = String::new();
    for (i, (id, heads)) in docs.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "# {id}");
        for (d, h) in heads.iter().enumerate() {
            let _ = writeln!(out, "{}\t{h}", d + 1);
        }
    }
    fs::write(path, out).unwrap();
}
