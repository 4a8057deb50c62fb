//! The merged lexicon: the reference lexicon plus every decision taken while
//! folding the auxiliary resources into it, and its on-disk form.
//!
//! The file is a sequence of sections introduced by `@name` lines. The
//! `@reference` and `@synsets` sections embed the `.lex` and `.wn` formats
//! verbatim; the others hold one tab-separated record per decision. Records
//! are sorted by lemma, part of speech, sense number, then payload, so the
//! same merge always produces the same bytes.

use std::collections::{BTreeMap, BTreeSet};
use std::io::BufRead;

use crate::derivation::{merge_derivatives, DerivationConfig, DerivativeCandidate, DerivativeDecision, DerivativeVerdict};
use crate::error::{Error, Result};
use crate::ingest::{
    parse_reference_lines, parse_synset_lines, read_lines, serialize_reference, serialize_synsets, Diagnostic,
    Diagnostics, IngestError, Line, LineKind, Parsed, SynonymResource, SynsetGraph,
};
use crate::lexicon::{normalize_lemma, ReferenceLexicon, SenseKey};
use crate::rules::{extract_rules, rule_order, DisambiguationRule, RuleKind, RulePattern};
use crate::synonym::{merge_synonyms, SynonymDecision, SynonymMerge, SynonymVerdict};
use crate::taxonomy::{align_lexicon, AlignmentResult, AlignmentStatus};

const MAGIC: &str = "#!senselex-merged 1";

/// Source name attached to the reference lexicon's own synonyms.
pub const REFERENCE_SOURCE: &str = "reference";

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MergeConfig {
    pub derivation: DerivationConfig,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Sources {
    pub synonyms: Vec<String>,
    pub synsets: Option<String>,
    pub wordlist: Option<String>,
}

#[derive(Debug, Clone, Default)]
pub struct MergeInputs {
    pub reference: ReferenceLexicon,
    pub synonyms: Vec<SynonymResource>,
    pub synsets: Option<(String, SynsetGraph)>,
    pub wordlist: Option<(String, BTreeSet<String>)>,
    pub config: MergeConfig,
}

/// Where an admitted datum came from and which decision admitted it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Provenance {
    pub sense: SenseKey,
    pub sources: Vec<String>,
    pub decision: String,
}

/// Everything admitted for one sense.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergedSenseRecord {
    pub key: SenseKey,
    pub synonyms: Vec<(String, Provenance)>,
    pub derivatives: Vec<(DerivativeCandidate, Provenance)>,
    pub synset: Option<(String, Provenance)>,
    pub rules: Vec<DisambiguationRule>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MergedLexicon {
    pub reference: ReferenceLexicon,
    pub graph: SynsetGraph,
    pub sources: Sources,
    pub synonyms: SynonymMerge,
    pub derivatives: BTreeMap<SenseKey, Vec<DerivativeDecision>>,
    pub alignments: BTreeMap<SenseKey, AlignmentResult>,
    pub rules: Vec<DisambiguationRule>,
    pub diagnostics: Vec<String>,
}

/// Turns a synset graph into synonym proposals: every member proposes the
/// other members of each synset it belongs to.
pub fn graph_synonym_resource(name: &str, graph: &SynsetGraph) -> SynonymResource {
    let mut resource = SynonymResource::new(name);
    for synset in graph.synsets() {
        for member in &synset.members {
            resource.add(member, synset.members.iter().map(String::as_str));
        }
    }
    resource
}

fn one_line(msg: impl AsRef<str>) -> String {
    msg.as_ref().split(['\n', '\t', '\r']).collect::<Vec<_>>().join(" ")
}

/// Runs the synonym, derivative and taxonomy merges and rule extraction.
pub fn merge(inputs: MergeInputs) -> Result<MergedLexicon> {
    let MergeInputs {
        reference,
        mut synonyms,
        synsets,
        wordlist,
        config,
    } = inputs;

    let mut names = BTreeSet::from([REFERENCE_SOURCE.to_string()]);
    let all_names = synonyms
        .iter()
        .map(|r| &r.name)
        .chain(synsets.iter().map(|(n, _)| n))
        .chain(wordlist.iter().map(|(n, _)| n));
    for name in all_names {
        if crate::lexicon::token_problem(name).is_some() || !names.insert(name.clone()) {
            return Err(Error::DuplicateSource(name.clone()));
        }
    }

    let mut diagnostics = Vec::new();
    let sources = Sources {
        synonyms: synonyms.iter().map(|r| r.name.clone()).collect(),
        synsets: synsets.as_ref().map(|(n, _)| n.clone()),
        wordlist: wordlist.as_ref().map(|(n, _)| n.clone()),
    };

    let (synset_name, graph) = match synsets {
        Some((name, graph)) => {
            synonyms.push(graph_synonym_resource(&name, &graph));
            (Some(name), graph)
        }
        None => {
            diagnostics.push("warning: no synset resource given; every sense is aligned as no-synset".to_string());
            (None, SynsetGraph::default())
        }
    };

    let synonym_merge = merge_synonyms(&reference, &synonyms);
    let alignments = align_lexicon(&reference, &synonym_merge, &graph, synset_name.as_deref().unwrap_or(""));

    let derivatives = match &wordlist {
        Some((_, words)) => merge_derivatives(&reference, words, &config.derivation),
        None => {
            diagnostics.push("warning: no wordlist given; no derivative was proposed".to_string());
            BTreeMap::new()
        }
    };

    let extraction = extract_rules(&reference);
    diagnostics.extend(extraction.diagnostics.iter().map(|d| format!("rules: {d}")));

    Ok(MergedLexicon {
        reference,
        graph,
        sources,
        synonyms: synonym_merge,
        derivatives,
        alignments,
        rules: extraction.rules,
        diagnostics: diagnostics.into_iter().map(one_line).collect(),
    })
}

impl MergedLexicon {
    /// The admitted data of one sense, every item tagged with its provenance.
    pub fn record(&self, key: &SenseKey) -> Option<MergedSenseRecord> {
        let sense = self.reference.sense_by_key(key)?;
        let tag = |sources: Vec<String>, decision: &str| Provenance {
            sense: key.clone(),
            sources,
            decision: decision.to_string(),
        };

        let mut synonyms: Vec<(String, Provenance)> = sense
            .base_synonyms
            .iter()
            .map(|s| (s.clone(), tag(vec![REFERENCE_SOURCE.to_string()], "base")))
            .collect();
        synonyms.extend(
            self.synonyms
                .for_sense(key)
                .iter()
                .filter(|d| d.verdict.is_accepted())
                .map(|d| (d.proposal.clone(), tag(d.sources.iter().cloned().collect(), d.verdict.as_str()))),
        );

        let wordlist: Vec<String> = self.sources.wordlist.iter().cloned().collect();
        let derivatives = self
            .derivatives
            .get(key)
            .into_iter()
            .flatten()
            .filter(|d| d.verdict == DerivativeVerdict::Kept)
            .map(|d| (d.candidate.clone(), tag(wordlist.clone(), d.verdict.as_str())))
            .collect();

        let synset = self.alignments.get(key).and_then(|a| {
            let id = a.synset.clone()?;
            let decision = format!("{} {}/{}", a.status, a.overlap, a.synonym_count);
            Some((id, tag(self.sources.synsets.iter().cloned().collect(), &decision)))
        });

        let rules = self.rules.iter().filter(|r| &r.sense == key).cloned().collect();
        Some(MergedSenseRecord {
            key: key.clone(),
            synonyms,
            derivatives,
            synset,
            rules,
        })
    }

    pub fn records(&self) -> impl Iterator<Item = MergedSenseRecord> + '_ {
        self.reference.senses().filter_map(|s| self.record(&s.key()))
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let mut w = |line: String| {
            out.push_str(&line);
            out.push('\n');
        };
        w(MAGIC.to_string());

        w("@sources".into());
        for name in &self.sources.synonyms {
            w(format!("synonyms\t{name}"));
        }
        if let Some(name) = &self.sources.synsets {
            w(format!("synsets\t{name}"));
        }
        if let Some(name) = &self.sources.wordlist {
            w(format!("wordlist\t{name}"));
        }

        w("@reference".into());
        serialize_reference(&self.reference).lines().for_each(|l| w(l.to_string()));
        w("@synsets".into());
        serialize_synsets(&self.graph).lines().for_each(|l| w(l.to_string()));

        w("@synonyms".into());
        for d in self.synonyms.iter() {
            w(format!(
                "{}\t{}\t{}\t{}\t{}",
                key_fields(&d.target),
                d.proposal,
                d.verdict,
                join_ids(&d.matching_proposal_senses),
                d.sources.iter().cloned().collect::<Vec<_>>().join(","),
            ));
        }

        w("@derivatives".into());
        for d in self.derivatives.values().flatten() {
            w(format!(
                "{}\t{}\t{}\t{}\t{}",
                key_fields(&d.target),
                d.candidate.surface,
                d.candidate.radical,
                d.candidate.suffix,
                d.verdict
            ));
        }

        w("@alignments".into());
        for a in self.alignments.values() {
            w(format!(
                "{}\t{}\t{}\t{}/{}",
                key_fields(&a.key),
                a.status,
                a.synset.as_deref().unwrap_or("-"),
                a.overlap,
                a.synonym_count
            ));
        }

        w("@rules".into());
        for r in &self.rules {
            w(format!(
                "{}\t{}\t{}\t{}",
                key_fields(&r.sense),
                r.kind(),
                r.pattern.render(r.target_lemma()),
                r.derived_from.as_ref().map_or("-".to_string(), ToString::to_string)
            ));
        }

        w("@skipped".into());
        for (resource, lemma) in &self.synonyms.skipped {
            w(format!("{resource}\t{lemma}"));
        }

        w("@diagnostics".into());
        for d in &self.diagnostics {
            w(one_line(d));
        }
        out
    }
}

fn key_fields(key: &SenseKey) -> String {
    format!("{}\t{}\t{}", key.lemma, key.pos, key.sense_id)
}

fn join_ids(ids: &[u32]) -> String {
    if ids.is_empty() {
        "-".to_string()
    } else {
        ids.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Section {
    Sources,
    Reference,
    Synsets,
    Synonyms,
    Derivatives,
    Alignments,
    Rules,
    Skipped,
    Diagnostics,
}

impl Section {
    fn from_marker(text: &str) -> Option<Self> {
        Some(match text.trim_end() {
            "@sources" => Self::Sources,
            "@reference" => Self::Reference,
            "@synsets" => Self::Synsets,
            "@synonyms" => Self::Synonyms,
            "@derivatives" => Self::Derivatives,
            "@alignments" => Self::Alignments,
            "@rules" => Self::Rules,
            "@skipped" => Self::Skipped,
            "@diagnostics" => Self::Diagnostics,
            _ => return None,
        })
    }
}

pub fn parse_merged<R: BufRead>(reader: R) -> std::result::Result<Parsed<MergedLexicon>, IngestError> {
    parse_merged_lines(&read_lines(reader)?).map_err(IngestError::Invalid)
}

fn parse_merged_lines(lines: &[Line]) -> std::result::Result<Parsed<MergedLexicon>, Vec<Diagnostic>> {
    let mut diags = Diagnostics::default();
    let mut sections: BTreeMap<Section, Vec<Line>> = BTreeMap::new();
    let mut current: Option<Section> = None;
    let mut saw_magic = false;

    for line in lines {
        let Some(text) = line.text.as_deref() else {
            diags.invalid_utf8(line.no);
            continue;
        };
        if text.starts_with('@') {
            match Section::from_marker(text) {
                Some(s) if sections.contains_key(&s) => {
                    diags.error(line.no, format!("section `{text}` appears twice"));
                    current = None;
                }
                Some(s) => {
                    if !saw_magic {
                        diags.error(line.no, format!("missing `{MAGIC}` header before the first section"));
                        saw_magic = true;
                    }
                    sections.insert(s, Vec::new());
                    current = Some(s);
                }
                None => {
                    diags.error(line.no, format!("unknown section `{text}`"));
                    current = None;
                }
            }
            continue;
        }
        match current {
            Some(s) => sections.get_mut(&s).expect("open section").push(line.clone()),
            None if text.trim_end() == MAGIC && !saw_magic => saw_magic = true,
            None if text.trim().is_empty() || (text.starts_with('#') && !text.starts_with("#!")) => {}
            None => diags.error(line.no, "content outside of any section"),
        }
    }
    if !saw_magic {
        diags.error(1, format!("missing `{MAGIC}` header"));
    }

    let section = |s: Section| sections.get(&s).map(Vec::as_slice).unwrap_or(&[]);
    let reference = absorb(parse_reference_lines(section(Section::Reference)), &mut diags);
    let graph = absorb(parse_synset_lines(section(Section::Synsets)), &mut diags);
    let (Some(reference), Some(graph)) = (reference, graph) else {
        return diags.finish(MergedLexicon::default);
    };

    let mut m = MergedLexicon::default();

    for (no, fields) in records(section(Section::Sources), &mut diags) {
        match fields.as_slice() {
            ["synonyms", name] => m.sources.synonyms.push(name.to_string()),
            ["synsets", name] if m.sources.synsets.is_none() => m.sources.synsets = Some(name.to_string()),
            ["wordlist", name] if m.sources.wordlist.is_none() => m.sources.wordlist = Some(name.to_string()),
            _ => diags.error(no, "malformed source record"),
        }
    }

    let sense_key = |no: usize, lemma: &str, pos: &str, id: &str, diags: &mut Diagnostics| -> Option<SenseKey> {
        let Ok(id) = id.parse::<u32>() else {
            diags.error(no, format!("sense_id `{id}` is not a number"));
            return None;
        };
        let key = SenseKey::new(lemma, pos, id);
        if reference.sense_by_key(&key).is_none() {
            diags.error(no, format!("sense {key} is not in the reference section"));
            return None;
        }
        Some(key)
    };

    for (no, f) in records(section(Section::Synonyms), &mut diags) {
        let [lemma, pos, id, proposal, verdict, matched, sources] = f.as_slice() else {
            diags.error(no, format!("expected 7 fields, found {}", f.len()));
            continue;
        };
        let Some(target) = sense_key(no, lemma, pos, id, &mut diags) else {
            continue;
        };
        let verdict = match verdict.parse::<SynonymVerdict>() {
            Ok(v) => v,
            Err(e) => {
                diags.error(no, e);
                continue;
            }
        };
        let ids: std::result::Result<Vec<u32>, _> = if *matched == "-" {
            Ok(Vec::new())
        } else {
            matched.split(',').map(str::parse).collect()
        };
        let Ok(matched) = ids else {
            diags.error(no, format!("malformed matched-sense list `{matched}`"));
            continue;
        };
        if (verdict == SynonymVerdict::Accepted) == matched.is_empty() {
            diags.error(no, "matched senses must be listed exactly for accepted verdicts");
            continue;
        }
        m.synonyms.decisions.entry(target.clone()).or_default().push(SynonymDecision {
            target,
            proposal: normalize_lemma(proposal),
            verdict,
            matching_proposal_senses: matched,
            sources: sources.split(',').map(str::to_string).collect(),
        });
    }

    for (no, f) in records(section(Section::Derivatives), &mut diags) {
        let [lemma, pos, id, surface, radical, suffix, verdict] = f.as_slice() else {
            diags.error(no, format!("expected 7 fields, found {}", f.len()));
            continue;
        };
        let Some(target) = sense_key(no, lemma, pos, id, &mut diags) else {
            continue;
        };
        let verdict = match verdict.parse::<DerivativeVerdict>() {
            Ok(v) => v,
            Err(e) => {
                diags.error(no, e);
                continue;
            }
        };
        if format!("{radical}{suffix}") != *surface {
            diags.error(no, format!("`{surface}` is not `{radical}` + `{suffix}`"));
            continue;
        }
        let assigned_sense = (verdict == DerivativeVerdict::Kept).then_some(target.sense_id);
        m.derivatives.entry(target.clone()).or_default().push(DerivativeDecision {
            target,
            candidate: DerivativeCandidate::new(surface, radical, suffix),
            verdict,
            assigned_sense,
        });
    }

    for (no, f) in records(section(Section::Alignments), &mut diags) {
        let [lemma, pos, id, status, synset, ratio] = f.as_slice() else {
            diags.error(no, format!("expected 6 fields, found {}", f.len()));
            continue;
        };
        let Some(key) = sense_key(no, lemma, pos, id, &mut diags) else {
            continue;
        };
        let status = match status.parse::<AlignmentStatus>() {
            Ok(s) => s,
            Err(e) => {
                diags.error(no, e);
                continue;
            }
        };
        let Some((Ok(overlap), Ok(count))) = ratio
            .split_once('/')
            .map(|(a, b)| (a.parse::<usize>(), b.parse::<usize>()))
        else {
            diags.error(no, format!("malformed overlap `{ratio}`, expected n/m"));
            continue;
        };
        let synset = (*synset != "-").then(|| synset.to_string());
        if (status == AlignmentStatus::Matched) != synset.is_some() {
            diags.error(no, "a synset is given exactly for matched alignments");
            continue;
        }
        if let Some(id) = &synset {
            if graph.synset(id).is_none() {
                diags.error(no, format!("synset `{id}` is not in the synsets section"));
                continue;
            }
            if 2 * overlap <= count {
                diags.error(no, format!("matched alignment without a strict majority ({ratio})"));
                continue;
            }
        }
        m.alignments.insert(
            key.clone(),
            AlignmentResult {
                key,
                synset,
                overlap,
                synonym_count: count,
                status,
            },
        );
    }

    for (no, f) in records(section(Section::Rules), &mut diags) {
        let [lemma, pos, id, kind, pattern, derived] = f.as_slice() else {
            diags.error(no, format!("expected 6 fields, found {}", f.len()));
            continue;
        };
        let Some(sense) = sense_key(no, lemma, pos, id, &mut diags) else {
            continue;
        };
        let parsed = kind
            .parse::<RuleKind>()
            .and_then(|k| RulePattern::parse(k, pattern, &sense.lemma))
            .and_then(|p| {
                let derived = match *derived {
                    "-" => None,
                    d => Some(d.parse()?),
                };
                Ok((p, derived))
            });
        match parsed {
            Ok((pattern, derived_from)) => m.rules.push(DisambiguationRule {
                sense,
                pattern,
                derived_from,
            }),
            Err(e) => diags.error(no, e),
        }
    }
    m.rules.sort_by(|a, b| rule_order(a).cmp(&rule_order(b)));

    for (no, f) in records(section(Section::Skipped), &mut diags) {
        match f.as_slice() {
            [resource, lemma] => {
                m.synonyms.skipped.insert((resource.to_string(), lemma.to_string()));
            }
            _ => diags.error(no, "expected resource and lemma"),
        }
    }

    for line in section(Section::Diagnostics) {
        if let Some(text) = line.text.as_deref().filter(|t| !t.trim().is_empty()) {
            m.diagnostics.push(text.to_string());
        }
    }

    m.reference = reference;
    m.graph = graph;
    diags.finish(|| m)
}

/// Moves a nested section's diagnostics into `diags`.
fn absorb<T>(result: std::result::Result<Parsed<T>, Vec<Diagnostic>>, diags: &mut Diagnostics) -> Option<T> {
    let (value, items) = match result {
        Ok(p) => (Some(p.value), p.warnings),
        Err(ds) => (None, ds),
    };
    for d in items {
        diags.push(d);
    }
    value
}

/// Tab-split records of a plain section; blank and comment lines skipped.
fn records<'a>(lines: &'a [Line], diags: &mut Diagnostics) -> Vec<(usize, Vec<&'a str>)> {
    let mut out = Vec::new();
    for line in lines {
        match line.kind() {
            None => diags.invalid_utf8(line.no),
            Some(LineKind::Record(text)) => out.push((line.no, text.split('\t').collect())),
            Some(LineKind::Header(_)) => diags.error(line.no, "unexpected header declaration"),
            Some(_) => {}
        }
    }
    out
}
