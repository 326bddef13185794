//! Attention document input: a JSON file per document, optionally paired
//! with a binary sidecar holding the attention tensor.
//!
//! JSON shape:
//! ```json
//! {
//!   "doc_id": "example",
//!   "edus": [{"id": 1, "sent": 0, "para": 0, "text": "..."}, ...],
//!   "layers": [{"layer": 0, "heads": [[[...], ...], ...]}]
//! }
//! ```
//! Attention arrays are row-major with the row index as the attending EDU.
//! When `layers` is absent or empty and `<stem>.adm1` exists next to the
//! JSON file, the tensor is read from the sidecar instead: magic `ADM1`,
//! `u32` n, `u32` head count, then `H * n * n` little-endian `f32` values
//! forming a single layer.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use attndisco::{validate_document, AnnotatedDocument, AttentionLayer, AttentionMatrix, EduInfo};

use crate::error::{CliError, CliResult};

#[derive(Debug, Serialize, Deserialize)]
pub struct DocumentFile {
    pub doc_id: String,
    pub edus: Vec<EduEntry>,
    #[serde(default)]
    pub layers: Vec<LayerEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct EduEntry {
    pub id: usize,
    pub sent: usize,
    pub para: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub text: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct LayerEntry {
    pub layer: usize,
    pub heads: Vec<Vec<Vec<f64>>>,
}

pub const ADM1_MAGIC: &[u8; 4] = b"ADM1";

/// Read one document, resolving the sidecar tensor if needed, and validate
/// it. All violations are reported at once.
pub fn load_document(path: &Path) -> CliResult<AnnotatedDocument> {
    let raw =
        fs::read_to_string(path).map_err(|e| CliError::data(format!("{}: {e}", path.display())))?;
    let file: DocumentFile = serde_json::from_str(&raw)
        .map_err(|e| CliError::data(format!("{}: malformed JSON: {e}", path.display())))?;

    let edus: Vec<EduInfo> = file
        .edus
        .iter()
        .map(|e| EduInfo {
            position: e.id,
            sent_id: e.sent,
            para_id: e.para,
            text: e.text.clone(),
        })
        .collect();

    let layers = if file.layers.is_empty() {
        let sidecar = path.with_extension("adm1");
        if !sidecar.exists() {
            return Err(CliError::data(format!(
                "{}: document carries no layers and no {} sidecar",
                file.doc_id,
                sidecar.display()
            )));
        }
        vec![AttentionLayer {
            layer_index: 0,
            heads: read_adm1(&sidecar)?,
        }]
    } else {
        file.layers
            .iter()
            .map(|layer| {
                let heads = layer
                    .heads
                    .iter()
                    .map(|rows| AttentionMatrix::from_rows(rows))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| CliError::data(format!("{}: {e}", file.doc_id)))?;
                Ok(AttentionLayer {
                    layer_index: layer.layer,
                    heads,
                })
            })
            .collect::<CliResult<Vec<_>>>()?
    };

    let doc = AnnotatedDocument {
        doc_id: file.doc_id,
        edus,
        layers,
    };
    let violations = validate_document(&doc);
    if !violations.is_empty() {
        let joined: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        return Err(CliError::data(format!(
            "{}: {}",
            doc.doc_id,
            joined.join("; ")
        )));
    }
    for (l, layer) in doc.layers.iter().enumerate() {
        for (h, m) in layer.heads.iter().enumerate() {
            if m.row_sum_warning() {
                eprintln!(
                    "warning: {}: layer {l} head {h} has rows not summing to 1",
                    doc.doc_id
                );
            }
        }
    }
    Ok(doc)
}

/// A corpus is either one JSON file or a directory of them, processed in
/// file-name order. Per-document failures are kept so batch commands can
/// report them with their source.
pub fn load_corpus(path: &Path) -> CliResult<Vec<(PathBuf, CliResult<AnnotatedDocument>)>> {
    let mut files = Vec::new();
    if path.is_dir() {
        for entry in fs::read_dir(path)? {
            let p = entry?.path();
            if p.extension().is_some_and(|e| e == "json") {
                files.push(p);
            }
        }
        files.sort();
        if files.is_empty() {
            return Err(CliError::data(format!(
                "{}: no .json documents found",
                path.display()
            )));
        }
    } else {
        files.push(path.to_path_buf());
    }
    Ok(files
        .into_iter()
        .map(|p| {
            let loaded = load_document(&p);
            (p, loaded)
        })
        .collect())
}

pub fn read_adm1(path: &Path) -> CliResult<Vec<AttentionMatrix>> {
    let bytes = fs::read(path).map_err(|e| CliError::data(format!("{}: {e}", path.display())))?;
    let fail = |msg: &str| CliError::data(format!("{}: {msg}", path.display()));
    if bytes.len() < 12 || &bytes[0..4] != ADM1_MAGIC {
        return Err(fail("not an ADM1 tensor file"));
    }
    let n = u32::from_le_bytes(bytes[4..8].try_into().unwrap()) as usize;
    let h = u32::from_le_bytes(bytes[8..12].try_into().unwrap()) as usize;
    let expected = 12 + h * n * n * 4;
    if bytes.len() != expected {
        return Err(fail(&format!(
            "expected {expected} bytes for n={n}, heads={h}, found {}",
            bytes.len()
        )));
    }
    let mut heads = Vec::with_capacity(h);
    let mut offset = 12;
    for _ in 0..h {
        let mut values = Vec::with_capacity(n * n);
        for _ in 0..n * n {
            let v = f32::from_le_bytes(bytes[offset..offset + 4].try_into().unwrap());
            values.push(v as f64);
            offset += 4;
        }
        heads.push(AttentionMatrix::new(n, values).map_err(CliError::from)?);
    }
    Ok(heads)
}

pub fn write_adm1(path: &Path, heads: &[AttentionMatrix]) -> CliResult<()> {
    if heads.is_empty() {
        return Err(CliError::data("cannot write a tensor with no heads"));
    }
    let n = heads[0].n();
    let mut bytes = Vec::with_capacity(12 + heads.len() * n * n * 4);
    bytes.extend_from_slice(ADM1_MAGIC);
    bytes.extend_from_slice(&(n as u32).to_le_bytes());
    bytes.extend_from_slice(&(heads.len() as u32).to_le_bytes());
    for head in heads {
        if head.n() != n {
            return Err(CliError::data("tensor heads disagree on dimension"));
        }
        for &v in head.values() {
            bytes.extend_from_slice(&(v as f32).to_le_bytes());
        }
    }
    fs::write(path, bytes)?;
    Ok(())
}
