//! The reference lexicon format (`.lex`).
//!
//! ```text
//! #!domain SOC PSY
//! #!class S4 P2
//! #!relation VARG[DIR]
//! #!suffix ure eur ant age able
//! lemma  pos  sense_id  label  domain  class  suffixes  subcat  examples  base_synonyms
//! ```
//!
//! `suffixes` is `ure:1,age:5`, `subcat` is `transitive|reflexive`, `examples`
//! is `REL(head,dep);...` and `base_synonyms` is comma-separated. Any list may
//! be `-`.

use std::fmt::Write as _;
use std::io::BufRead;

use super::{lift, list_field, read_lines, Diagnostics, IngestError, Line, LineKind, Parsed};
use crate::lexicon::{
    fold_code, fold_token, normalize_lemma, token_problem, validate_senses, DependencyTriple, Inventories,
    ReferenceLexicon, SemanticFeatures, SenseEntry, SuffixInstruction,
};

const FIELDS: usize = 10;

pub fn parse_reference<R: BufRead>(reader: R) -> Result<Parsed<ReferenceLexicon>, IngestError> {
    lift(parse_reference_lines(&read_lines(reader)?))
}

pub(crate) fn parse_reference_lines(
    lines: &[Line],
) -> Result<Parsed<ReferenceLexicon>, Vec<super::Diagnostic>> {
    let mut diags = Diagnostics::default();
    let mut inv = Inventories::default();
    let mut records: Vec<(usize, SenseEntry)> = Vec::new();
    let mut in_header = true;

    for line in lines {
        let Some(kind) = line.kind() else {
            diags.invalid_utf8(line.no);
            continue;
        };
        match kind {
            LineKind::Blank | LineKind::Comment => {}
            LineKind::Header(decl) => {
                if !in_header {
                    diags.error(line.no, "header declaration after the first record");
                    continue;
                }
                header_line(line.no, decl, &mut inv, &mut diags);
            }
            LineKind::Record(text) => {
                in_header = false;
                if let Some(sense) = record_line(line.no, text, &mut diags) {
                    records.push((line.no, sense));
                }
            }
        }
    }

    for (line, msg) in validate_senses(&inv, &records) {
        diags.error(line, msg);
    }
    diags.finish(|| ReferenceLexicon::from_validated(inv, records.into_iter().map(|(_, s)| s)))
}

fn header_line(no: usize, decl: &str, inv: &mut Inventories, diags: &mut Diagnostics) {
    let mut words = decl.split_whitespace();
    let keyword = words.next().unwrap_or("");
    let (target, fold): (&mut _, fn(&str) -> String) = match keyword {
        "domain" => (&mut inv.domain, fold_code),
        "class" => (&mut inv.class, fold_code),
        "relation" => (&mut inv.relation, fold_code),
        "suffix" => (&mut inv.suffix, fold_token),
        other => {
            diags.error(no, format!("unknown header declaration `#!{other}`"));
            return;
        }
    };
    for word in words {
        let token = fold(word);
        if let Some(why) = token_problem(&token) {
            diags.error(no, format!("inventory token `{word}`: {why}"));
        } else if keyword == "suffix" && token.starts_with('-') {
            diags.error(no, format!("suffix `{word}` must not start with a hyphen"));
        } else {
            target.insert(token);
        }
    }
}

fn record_line(no: usize, text: &str, diags: &mut Diagnostics) -> Option<SenseEntry> {
    let fields: Vec<&str> = text.split('\t').collect();
    if fields.len() != FIELDS {
        diags.error(
            no,
            format!("expected {FIELDS} tab-separated fields, found {}", fields.len()),
        );
        return None;
    }
    let mut ok = true;
    let mut fail = |msg: String| {
        diags.error(no, msg);
        ok = false;
    };

    let sense_id = match fields[2].trim().parse::<u32>() {
        Ok(id) if id > 0 => id,
        _ => {
            fail(format!("sense_id `{}` is not a positive integer", fields[2].trim()));
            0
        }
    };

    let mut sense = SenseEntry::new(
        fields[0],
        fields[1],
        sense_id,
        fields[3],
        SemanticFeatures::new(fields[4], fields[5]),
    );

    match list_field(fields[6], ',') {
        Some(items) => {
            for item in items {
                match item.split_once(':').map(|(s, n)| (s, n.trim().parse::<u32>())) {
                    Some((suffix, Ok(target))) if !suffix.trim().is_empty() => {
                        if suffix.trim().starts_with('-') {
                            fail(format!("suffix instruction `{item}` must not start with a hyphen"));
                        }
                        sense.suffix_instructions.push(SuffixInstruction::new(suffix, target));
                    }
                    _ => fail(format!("malformed suffix instruction `{item}`, expected suffix:sense")),
                }
            }
        }
        None => fail(format!("malformed suffix list `{}`", fields[6])),
    }

    match list_field(fields[7], '|') {
        Some(items) => sense.subcat_frames = items.into_iter().map(fold_token).collect(),
        None => fail(format!("malformed subcategorization list `{}`", fields[7])),
    }

    match list_field(fields[8], ';') {
        Some(items) => {
            for item in items {
                match item.parse::<DependencyTriple>() {
                    Ok(dep) => sense.example_deps.push(dep),
                    Err(e) => fail(e),
                }
            }
        }
        None => fail(format!("malformed example list `{}`", fields[8])),
    }

    match list_field(fields[9], ',') {
        Some(items) => {
            sense.base_synonyms = crate::lexicon::dedup_in_order(items.into_iter().map(normalize_lemma))
        }
        None => fail(format!("malformed synonym list `{}`", fields[9])),
    }

    ok.then_some(sense)
}

fn join_or_dash<I: IntoIterator<Item = String>>(items: I, sep: &str) -> String {
    let joined: Vec<String> = items.into_iter().collect();
    if joined.is_empty() {
        "-".to_string()
    } else {
        joined.join(sep)
    }
}

/// Writes a lexicon back in `.lex` form. Lemmas come out sorted, each lemma's
/// senses in their stored order.
pub fn serialize_reference(lexicon: &ReferenceLexicon) -> String {
    let mut out = String::new();
    let inv = lexicon.inventories();
    for (keyword, set) in [
        ("domain", &inv.domain),
        ("class", &inv.class),
        ("relation", &inv.relation),
        ("suffix", &inv.suffix),
    ] {
        if !set.is_empty() {
            let tokens: Vec<&str> = set.iter().map(String::as_str).collect();
            let _ = writeln!(out, "#!{keyword} {}", tokens.join(" "));
        }
    }
    for s in lexicon.senses() {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            s.lemma,
            s.pos,
            s.sense_id,
            s.sense_label,
            s.features.domain,
            s.features.class,
            join_or_dash(s.suffix_instructions.iter().map(ToString::to_string), ","),
            join_or_dash(s.subcat_frames.iter().cloned(), "|"),
            join_or_dash(s.example_deps.iter().map(ToString::to_string), ";"),
            join_or_dash(s.base_synonyms.iter().cloned(), ","),
        );
    }
    out
}
