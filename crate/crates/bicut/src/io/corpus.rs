//! Corpus input: a directory tree `<label>/<doc_id>.txt`, or a TSV file of
//! `doc_id <TAB> label <TAB> text` lines.
//!
//! In the TSV form an empty label means unlabeled, and the text field may
//! encode newlines, tabs and backslashes as `\n`, `\t` and `\\`.

use std::fs;
use std::path::Path;

use bicut_core::text::{Corpus, Document};

use super::FormatError;

pub fn load(path: &Path) -> Result<Corpus, FormatError> {
    if path.is_dir() {
        load_dir(path)
    } else {
        parse_tsv(&fs::read_to_string(path)?)
    }
}

/// Labels and files are visited in byte order of their names, so the
/// document order does not depend on the file system.
fn load_dir(root: &Path) -> Result<Corpus, FormatError> {
    let mut docs = Vec::new();
    for label_dir in sorted_entries(root)? {
        if !label_dir.is_dir() {
            continue;
        }
        let label = label_dir
            .file_name()
            .and_then(|s| s.to_str())
            .unwrap_or_default()
            .to_string();
        for file in sorted_entries(&label_dir)? {
            if file.extension().and_then(|e| e.to_str()) != Some("txt") {
                continue;
            }
            let id = file
                .file_stem()
                .and_then(|s| s.to_str())
                .unwrap_or_default()
                .to_string();
            let text = String::from_utf8_lossy(&fs::read(&file)?).into_owned();
            docs.push(Document::new(id, Some(&label), text));
        }
    }
    Ok(Corpus::new(docs)?)
}

fn sorted_entries(dir: &Path) -> Result<Vec<std::path::PathBuf>, FormatError> {
    let mut entries = fs::read_dir(dir)?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<Vec<_>, _>>()?;
    entries.sort();
    Ok(entries)
}

pub fn parse_tsv(text: &str) -> Result<Corpus, FormatError> {
    let mut docs = Vec::new();
    for (n, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.splitn(3, '\t');
        let (Some(id), Some(label), Some(body)) = (fields.next(), fields.next(), fields.next())
        else {
            return Err(FormatError::Parse {
                line: n + 1,
                message: "expected `doc_id<TAB>label<TAB>text`".into(),
            });
        };
        let label = (!label.is_empty()).then_some(label);
        docs.push(Document::new(id, label, unescape(body)));
    }
    Ok(Corpus::new(docs)?)
}

fn unescape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut chars = s.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match chars.next() {
            Some('n') => out.push('\n'),
            Some('t') => out.push('\t'),
            Some('\\') => out.push('\\'),
            Some(other) => {
                out.push('\\');
                out.push(other);
            }
            None => out.push('\\'),
        }
    }
    out
}

pub fn escape(s: &str) -> String {
    s.replace('\\', "\\\\")
        .replace('\n', "\\n")
        .replace('\t', "\\t")
}

/// Writes a corpus in the TSV form.
pub fn to_tsv(corpus: &Corpus) -> String {
    corpus
        .documents()
        .iter()
        .map(|d| {
            format!(
                "{}\t{}\t{}\n",
                d.id,
                d.label.as_deref().unwrap_or(""),
                escape(&d.text)
            )
        })
        .collect()
}
