//! Pre-parsed utterances.
//!
//! ```text
//! T <TAB> lemma lemma ...
//! D <TAB> REL(head,dep)
//! F <TAB> lemma <TAB> frame
//! ```
//!
//! A blank line ends an utterance.

use std::collections::{BTreeMap, BTreeSet};
use std::io::BufRead;

use super::{lift, read_lines, Diagnostics, IngestError, LineKind, Parsed};
use crate::enrichment::Utterance;
use crate::lexicon::{fold_token, lemma_problem, normalize_lemma, token_problem, DependencyTriple};

#[derive(Default)]
struct Pending {
    start: usize,
    tokens: Vec<String>,
    deps: Vec<(usize, DependencyTriple)>,
    frames: Vec<(usize, String, String)>,
}

impl Pending {
    fn is_empty(&self) -> bool {
        self.tokens.is_empty() && self.deps.is_empty() && self.frames.is_empty()
    }

    fn close(self, diags: &mut Diagnostics, out: &mut Vec<Utterance>) {
        if self.is_empty() {
            return;
        }
        let known: BTreeSet<&str> = self.tokens.iter().map(String::as_str).collect();
        let mut ok = true;
        for (no, dep) in &self.deps {
            for arg in [&dep.head, &dep.dependent] {
                if !known.contains(arg.as_str()) {
                    diags.error(*no, format!("`{arg}` in `{dep}` is not a token of the utterance"));
                    ok = false;
                }
            }
        }
        let mut frames: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
        for (no, lemma, frame) in self.frames {
            if known.contains(lemma.as_str()) {
                frames.entry(lemma).or_default().insert(frame);
            } else {
                diags.error(no, format!("frame for `{lemma}`, which is not a token of the utterance"));
                ok = false;
            }
        }
        if self.tokens.is_empty() {
            diags.error(self.start, "utterance has no tokens");
            ok = false;
        }
        if ok {
            out.push(Utterance {
                tokens: self.tokens,
                deps: self.deps.into_iter().map(|(_, d)| d).collect(),
                frames,
            });
        }
    }
}

pub fn parse_utterances<R: BufRead>(reader: R) -> Result<Parsed<Vec<Utterance>>, IngestError> {
    let lines = read_lines(reader)?;
    let mut diags = Diagnostics::default();
    let mut out = Vec::new();
    let mut current = Pending::default();

    for line in &lines {
        let text = match line.kind() {
            None => {
                diags.invalid_utf8(line.no);
                continue;
            }
            Some(LineKind::Blank) => {
                std::mem::take(&mut current).close(&mut diags, &mut out);
                continue;
            }
            Some(LineKind::Comment) => continue,
            Some(LineKind::Header(_)) => {
                diags.error(line.no, "utterance files take no header declarations");
                continue;
            }
            Some(LineKind::Record(text)) => text,
        };
        if current.is_empty() {
            current.start = line.no;
        }
        let fields: Vec<&str> = text.split('\t').collect();
        match fields.as_slice() {
            ["T", rest @ ..] if !rest.is_empty() => {
                for token in rest.iter().flat_map(|f| f.split_whitespace()) {
                    let token = normalize_lemma(token);
                    match lemma_problem(&token) {
                        Some(why) => diags.error(line.no, format!("token `{token}`: {why}")),
                        None => current.tokens.push(token),
                    }
                }
            }
            ["D", dep] => match dep.parse::<DependencyTriple>() {
                Ok(dep) => current.deps.push((line.no, dep)),
                Err(e) => diags.error(line.no, e),
            },
            ["F", lemma, frame] => {
                let frame = fold_token(frame);
                match token_problem(&frame) {
                    Some(why) => diags.error(line.no, format!("frame `{frame}`: {why}")),
                    None => current.frames.push((line.no, normalize_lemma(lemma), frame)),
                }
            }
            [tag, ..] => diags.error(
                line.no,
                format!("malformed `{tag}` record; expected `T`, `D` or `F` with the right field count"),
            ),
            [] => {}
        }
    }
    current.close(&mut diags, &mut out);
    lift(diags.finish(|| out))
}
