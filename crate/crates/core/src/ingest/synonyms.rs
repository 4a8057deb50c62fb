//! Synonym proposal lists (`.syn`): `lemma <TAB> proposal, proposal, ...`.

use std::collections::{BTreeMap, BTreeSet};
use std::io::BufRead;

use super::{lift, read_lines, Diagnostics, IngestError, LineKind, Parsed};
use crate::lexicon::{lemma_problem, normalize_lemma};

/// Unfiltered synonym proposals from one auxiliary dictionary.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SynonymResource {
    pub name: String,
    pub proposals: BTreeMap<String, BTreeSet<String>>,
}

impl SynonymResource {
    pub fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            proposals: BTreeMap::new(),
        }
    }

    /// Adds proposals for `lemma`, dropping self-proposals. Returns how many
    /// self-proposals were dropped.
    pub fn add<'a>(&mut self, lemma: &str, proposals: impl IntoIterator<Item = &'a str>) -> usize {
        let lemma = normalize_lemma(lemma);
        let set = self.proposals.entry(lemma.clone()).or_default();
        let mut dropped = 0;
        for p in proposals {
            let p = normalize_lemma(p);
            if p == lemma {
                dropped += 1;
            } else {
                set.insert(p);
            }
        }
        dropped
    }
}

pub fn parse_synonym_resource<R: BufRead>(name: &str, reader: R) -> Result<Parsed<SynonymResource>, IngestError> {
    let lines = read_lines(reader)?;
    let mut diags = Diagnostics::default();
    let mut resource = SynonymResource::new(name);

    for line in &lines {
        let Some(kind) = line.kind() else {
            diags.invalid_utf8(line.no);
            continue;
        };
        let text = match kind {
            LineKind::Blank | LineKind::Comment => continue,
            LineKind::Header(_) => {
                diags.error(line.no, "synonym files take no header declarations");
                continue;
            }
            LineKind::Record(text) => text,
        };
        let fields: Vec<&str> = text.split('\t').collect();
        if fields.len() != 2 {
            diags.error(line.no, format!("expected 2 tab-separated fields, found {}", fields.len()));
            continue;
        }
        let lemma = normalize_lemma(fields[0]);
        if let Some(why) = lemma_problem(&lemma) {
            diags.error(line.no, format!("lemma `{lemma}`: {why}"));
            continue;
        }
        let proposals: Vec<String> = fields[1].split(',').map(normalize_lemma).collect();
        let mut bad = false;
        for p in &proposals {
            if let Some(why) = lemma_problem(p) {
                diags.error(line.no, format!("proposal `{p}`: {why}"));
                bad = true;
            }
        }
        if bad {
            continue;
        }
        if resource.add(&lemma, proposals.iter().map(String::as_str)) > 0 {
            diags.warning(line.no, format!("`{lemma}` proposes itself; dropped"));
        }
    }
    lift(diags.finish(|| resource))
}
