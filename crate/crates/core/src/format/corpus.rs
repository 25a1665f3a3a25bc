use std::collections::BTreeSet;

use super::format_error;
use crate::agent::{Document, Judgment};
use crate::error::Error;

/// Documents in file order. Ids must be unique; `?` leaves the label unset.
pub fn parse_corpus(text: &str) -> Result<Vec<Document>, Error> {
    let mut seen = BTreeSet::new();
    let mut docs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let [id, label, keywords] = fields[..] else {
            return Err(format_error(lineno, "expected `id<TAB>R|N|?<TAB>keywords`"));
        };
        let id = id.trim();
        if id.is_empty() {
            return Err(format_error(lineno, "empty document id"));
        }
        let label = match label.trim() {
            "R" => Some(Judgment::Relevant),
            "N" => Some(Judgment::Nonrelevant),
            "?" => None,
            other => return Err(format_error(lineno, format!("unknown label {other:?}"))),
        };
        let doc = Document::new(id, keywords.split(','))
            .map_err(|e| format_error(lineno, e.to_string()))?
            .with_label(label);
        if !seen.insert(id.to_string()) {
            return Err(format_error(lineno, format!("duplicate document id {id:?}")));
        }
        docs.push(doc);
    }
    Ok(docs)
}

pub fn write_corpus(docs: &[Document]) -> String {
    let mut out = String::new();
    for d in docs {
        let label = match d.label {
            Some(Judgment::Relevant) => "R",
            Some(Judgment::Nonrelevant) => "N",
            None => "?",
        };
        let keywords: Vec<&str> = d.keywords().iter().map(String::as_str).collect();
        out.push_str(&format!("{}\t{}\t{}\n", d.id, label, keywords.join(",")));
    }
    out
}
