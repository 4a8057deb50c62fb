//! Line-oriented resource formats.
//!
//! Every format is UTF-8, one record per `\n`-terminated line, fields split by
//! tabs. Lines starting with `#!` are header declarations, other `#` lines are
//! comments, blank lines are ignored. Parsers never stop at the first problem:
//! they collect a diagnostic for every offending line and fail once at the end.

use std::fmt;
use std::io::{self, BufRead};

use thiserror::Error;
use unicode_normalization::UnicodeNormalization;

mod reference;
mod synonyms;
mod synsets;
mod utterance;
mod wordlist;

pub use reference::{parse_reference, serialize_reference};
pub use synonyms::{parse_synonym_resource, SynonymResource};
pub use synsets::{parse_synset_resource, serialize_synsets, Edge, Synset, SynsetGraph, TaxonomyRelation};
pub use utterance::parse_utterances;
pub use wordlist::parse_wordlist;

pub(crate) use reference::parse_reference_lines;
pub(crate) use synsets::parse_synset_lines;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub severity: Severity,
    pub message: String,
}

impl Diagnostic {
    pub fn error(line: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            severity: Severity::Error,
            message: message.into(),
        }
    }

    pub fn warning(line: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            severity: Severity::Warning,
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "line {}: {tag}: {}", self.line, self.message)
    }
}

/// A successfully parsed resource and the warnings raised along the way.
#[derive(Debug, Clone, PartialEq)]
pub struct Parsed<T> {
    pub value: T,
    pub warnings: Vec<Diagnostic>,
}

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("read failed: {0}")]
    Io(#[from] io::Error),

    #[error("{} problem(s) found:\n{}", .0.len(), render(.0))]
    Invalid(Vec<Diagnostic>),
}

impl IngestError {
    pub fn diagnostics(&self) -> &[Diagnostic] {
        match self {
            IngestError::Io(_) => &[],
            IngestError::Invalid(d) => d,
        }
    }
}

fn render(diagnostics: &[Diagnostic]) -> String {
    diagnostics
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("\n")
}

/// One physical line; `text` is `None` when the bytes are not valid UTF-8.
#[derive(Debug, Clone)]
pub(crate) struct Line {
    pub no: usize,
    pub text: Option<String>,
}

pub(crate) enum LineKind<'a> {
    Blank,
    Comment,
    Header(&'a str),
    Record(&'a str),
}

impl Line {
    pub fn kind(&self) -> Option<LineKind<'_>> {
        let text = self.text.as_deref()?;
        Some(if text.trim().is_empty() {
            LineKind::Blank
        } else if let Some(rest) = text.strip_prefix("#!") {
            LineKind::Header(rest)
        } else if text.starts_with('#') {
            LineKind::Comment
        } else {
            LineKind::Record(text)
        })
    }
}

pub(crate) fn read_lines<R: BufRead>(mut reader: R) -> io::Result<Vec<Line>> {
    let mut lines = Vec::new();
    let mut buf = Vec::new();
    let mut no = 0;
    loop {
        buf.clear();
        if reader.read_until(b'\n', &mut buf)? == 0 {
            break;
        }
        no += 1;
        if buf.last() == Some(&b'\n') {
            buf.pop();
        }
        if buf.last() == Some(&b'\r') {
            buf.pop();
        }
        let text = std::str::from_utf8(&buf).ok().map(|s| s.nfc().collect());
        lines.push(Line { no, text });
    }
    Ok(lines)
}

/// Accumulates diagnostics and turns them into the parse result.
#[derive(Default)]
pub(crate) struct Diagnostics {
    items: Vec<Diagnostic>,
}

impl Diagnostics {
    pub fn error(&mut self, line: usize, message: impl Into<String>) {
        self.items.push(Diagnostic::error(line, message));
    }

    pub fn warning(&mut self, line: usize, message: impl Into<String>) {
        self.items.push(Diagnostic::warning(line, message));
    }

    pub fn push(&mut self, diagnostic: Diagnostic) {
        self.items.push(diagnostic);
    }

    pub fn invalid_utf8(&mut self, line: usize) {
        self.error(line, "line is not valid UTF-8");
    }

    pub fn finish<T>(mut self, value: impl FnOnce() -> T) -> Result<Parsed<T>, Vec<Diagnostic>> {
        self.items.sort_by_key(|d| (d.line, d.severity));
        if self.items.iter().any(|d| d.severity == Severity::Error) {
            Err(self.items)
        } else {
            Ok(Parsed {
                value: value(),
                warnings: self.items,
            })
        }
    }
}

/// Splits a comma-separated list field; `-` stands for the empty list.
pub(crate) fn list_field(field: &str, sep: char) -> Option<Vec<&str>> {
    let field = field.trim();
    if field == "-" {
        Some(Vec::new())
    } else {
        let items: Vec<&str> = field.split(sep).map(str::trim).collect();
        (!items.iter().any(|s| s.is_empty())).then_some(items)
    }
}

pub(crate) fn lift<T>(r: Result<Parsed<T>, Vec<Diagnostic>>) -> Result<Parsed<T>, IngestError> {
    r.map_err(IngestError::Invalid)
}
