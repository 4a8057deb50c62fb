//! Wordlists: one word per line.

use std::collections::BTreeSet;
use std::io::BufRead;

use super::{lift, read_lines, Diagnostics, IngestError, LineKind, Parsed};
use crate::lexicon::{lemma_problem, normalize_lemma};

pub fn parse_wordlist<R: BufRead>(reader: R) -> Result<Parsed<BTreeSet<String>>, IngestError> {
    let lines = read_lines(reader)?;
    let mut diags = Diagnostics::default();
    let mut words = BTreeSet::new();
    for line in &lines {
        match line.kind() {
            None => diags.invalid_utf8(line.no),
            Some(LineKind::Blank | LineKind::Comment) => {}
            Some(LineKind::Header(_)) => diags.error(line.no, "wordlists take no header declarations"),
            Some(LineKind::Record(text)) => {
                let word = normalize_lemma(text);
                if word.contains(' ') {
                    diags.error(line.no, format!("`{word}` is not a single word"));
                } else if let Some(why) = lemma_problem(&word) {
                    diags.error(line.no, format!("`{word}`: {why}"));
                } else if !words.insert(word) {
                    diags.warning(line.no, "duplicate word");
                }
            }
        }
    }
    lift(diags.finish(|| words))
}
