//! Named diagrams with frozen expected values.
//!
//! A corpus file is either JSON (an array of entries, or `{"entries": [..]}`)
//! or plain text with one `name: PD` pair per line and `#` comments.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::GradedAbelianGroup;
use crate::pd::LinkDiagram;

const BUNDLED: &str = include_str!("../corpus/corpus.json");

/// Values recorded when the corpus was frozen.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub jmin: i64,
    pub jmax: i64,
    pub kh_min: GradedAbelianGroup,
    /// Present when the values came from the cube.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kh_max: Option<GradedAbelianGroup>,
    /// Full table `j -> Kh^{*,j}`, nonzero rows only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<BTreeMap<i64, GradedAbelianGroup>>,
    /// `cube` or `graph`: which pipeline produced the numbers.
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub pd: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
}

impl CorpusEntry {
    pub fn diagram(&self) -> Result<LinkDiagram> {
        self.pd.parse()
    }
}

/// Parse a corpus file. Every PD text must parse; an empty corpus is an error.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>> {
    let trimmed = text.trim_start();
    let entries = if trimmed.starts_with('[') || trimmed.starts_with('{') {
        let malformed = |e: serde_json::Error| Error::MalformedSyntax {
            token: format!("line {}", e.line()),
            reason: e.to_string(),
        };
        let mut value: serde_json::Value = serde_json::from_str(trimmed).map_err(malformed)?;
        if let Some(inner) = value.get_mut("entries") {
            value = inner.take();
        }
        serde_json::from_value::<Vec<CorpusEntry>>(value).map_err(malformed)?
    } else {
        parse_lines(text)?
    };
    if entries.is_empty() {
        return Err(Error::EmptyInput);
    }
    for e in &entries {
        e.diagram()?;
    }
    Ok(entries)
}

fn parse_lines(text: &str) -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    for (t, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        // the colon of "O:k" is followed by a digit
        let split = line
            .char_indices()
            .find(|&(i, c)| c == ':' && !line[i + 1..].trim_start().starts_with(|d: char| d.is_ascii_digit()));
        let (name, pd) = match split {
            Some((i, _)) => (line[..i].trim().to_string(), line[i + 1..].trim().to_string()),
            None => (format!("line{}", t + 1), line.to_string()),
        };
        out.push(CorpusEntry {
            name,
            pd,
            expected: None,
        });
    }
    Ok(out)
}

/// The corpus shipped with the crate.
pub fn bundled() -> Vec<CorpusEntry> {
    parse_corpus(BUNDLED).expect("bundled corpus is valid")
}

pub fn bundled_entry(name: &str) -> Option<CorpusEntry> {
    bundled().into_iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_corpus() {
        let c = parse_corpus("# two\nunknot: O:1\ntrefoil: X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]\nX[1,1,2,2]\n").unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c[0].name, "unknot");
        assert_eq!(c[0].pd, "O:1");
        assert_eq!(c[2].name, "line4");
    }

    #[test]
    fn empty_corpus_is_rejected() {
        assert_eq!(parse_corpus(""), Err(Error::EmptyInput));
        assert_eq!(parse_corpus("# nothing\n\n"), Err(Error::EmptyInput));
        assert_eq!(parse_corpus("[]"), Err(Error::EmptyInput));
        assert_eq!(parse_corpus(r#"{"entries": []}"#), Err(Error::EmptyInput));
    }

    #[test]
    fn bad_entry_is_rejected() {
        let err = parse_corpus("bad: X[1,2,3]").unwrap_err();
        assert!(matches!(err, Error::MalformedSyntax { .. }));
    }

    #[test]
    fn bundled_corpus_shape() {
        let c = bundled();
        assert!(c.len() >= 25);
        assert!(c.iter().all(|e| e.expected.is_some()));
        assert!(c.iter().any(|e| e.diagram().unwrap().n() >= 35));
    }
}
