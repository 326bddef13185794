//! Dependency tree files: TSV blocks separated by blank lines, one block
//! per document. Each block starts with a `# doc_id` header followed by one
//! `edu_id<TAB>head_id` line per EDU (head 0 marks the root).

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use attndisco::DependencyTree;

use crate::error::{CliError, CliResult};

pub fn write_dep_file(path: &Path, docs: &[(String, DependencyTree)]) -> CliResult<()> {
    let mut out = String::new();
    for (i, (id, tree)) in docs.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "# {id}");
        for d in 1..=tree.n() {
            let _ = writeln!(out, "{d}\t{}", tree.head(d));
        }
    }
    fs::write(path, out)?;
    Ok(())
}

pub fn read_dep_file(path: &Path) -> CliResult<Vec<(String, DependencyTree)>> {
    let raw =
        fs::read_to_string(path).map_err(|e| CliError::data(format!("{}: {e}", path.display())))?;
    parse_dep_text(&raw, &path.display().to_string())
}

pub fn parse_dep_text(text: &str, source: &str) -> CliResult<Vec<(String, DependencyTree)>> {
    let mut docs = Vec::new();
    let mut current_id: Option<String> = None;
    let mut rows: Vec<(usize, usize)> = Vec::new();
    let mut anonymous = 0usize;

    let mut flush = |id: &mut Option<String>, rows: &mut Vec<(usize, usize)>| -> CliResult<()> {
        if rows.is_empty() {
            *id = None;
            return Ok(());
        }
        let doc_id = id.take().unwrap_or_else(|| {
            anonymous += 1;
            format!("doc_{anonymous}")
        });
        let mut sorted = std::mem::take(rows);
        sorted.sort();
        let n = sorted.len();
        let mut heads = vec![usize::MAX; n];
        for (i, &(d, h)) in sorted.iter().enumerate() {
            if d != i + 1 {
                return Err(CliError::data(format!(
                    "{doc_id}: EDU ids must cover 1..{n} exactly, found {d}"
                )));
            }
            heads[i] = h;
        }
        let tree =
            DependencyTree::new(heads).map_err(|e| CliError::data(format!("{doc_id}: {e}")))?;
        docs.push((doc_id, tree));
        Ok(())
    };

    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            flush(&mut current_id, &mut rows)?;
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            // a new header inside a block also starts a new document
            if !rows.is_empty() {
                flush(&mut current_id, &mut rows)?;
            }
            let id = comment.trim();
            if !id.is_empty() {
                current_id = Some(id.to_string());
            }
            continue;
        }
        if line.starts_with('(') {
            return Err(CliError::data(format!(
                "{source}:{}: found a bracketed constituency tree; this command expects dependency TSV blocks",
                lineno + 1
            )));
        }
        let mut parts = line.split_whitespace();
        let (d, h) = match (parts.next(), parts.next(), parts.next()) {
            (Some(d), Some(h), None) => (d, h),
            _ => {
                return Err(CliError::data(format!(
                    "{source}:{}: expected 'edu_id<TAB>head_id'",
                    lineno + 1
                )))
            }
        };
        let d: usize = d
            .parse()
            .map_err(|_| CliError::data(format!("{source}:{}: bad EDU id '{d}'", lineno + 1)))?;
        let h: usize = h
            .parse()
            .map_err(|_| CliError::data(format!("{source}:{}: bad head id '{h}'", lineno + 1)))?;
        rows.push((d, h));
    }
    flush(&mut current_id, &mut rows)?;
    if docs.is_empty() {
        return Err(CliError::data(format!(
            "{source}: no dependency blocks found"
        )));
    }
    Ok(docs)
}
