//! Alignment of reference senses with synsets, and taxonomy walks.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ingest::{SynsetGraph, TaxonomyRelation};
use crate::lexicon::{ReferenceLexicon, SenseKey};
use crate::synonym::{SynonymMerge, SynonymVerdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlignmentStatus {
    Matched,
    NoSynset,
    NoMajority,
    Ambiguous,
}

impl AlignmentStatus {
    pub const ALL: [AlignmentStatus; 4] = [Self::Matched, Self::NoSynset, Self::NoMajority, Self::Ambiguous];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Matched => "matched",
            Self::NoSynset => "no-synset",
            Self::NoMajority => "no-majority",
            Self::Ambiguous => "ambiguous",
        }
    }
}

impl fmt::Display for AlignmentStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AlignmentStatus {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|v| v.as_str() == s)
            .ok_or_else(|| format!("unknown alignment status `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlignmentResult {
    pub key: SenseKey,
    /// Present exactly when the status is `Matched`.
    pub synset: Option<String>,
    /// Best overlap seen among candidate synsets.
    pub overlap: usize,
    pub synonym_count: usize,
    pub status: AlignmentStatus,
}

fn is_majority(overlap: usize, count: usize) -> bool {
    count > 0 && 2 * overlap > count
}

/// Picks the synset whose members hold a strict majority of the sense's
/// synonyms. Only synsets that contain the word itself are candidates, and the
/// word does not count towards the overlap. A tie at the best overlap abstains.
pub fn align_sense(key: &SenseKey, sense_synonyms: &BTreeSet<String>, graph: &SynsetGraph) -> AlignmentResult {
    let word = key.lemma.as_str();
    let synonyms: BTreeSet<&str> = sense_synonyms
        .iter()
        .map(String::as_str)
        .filter(|s| *s != word)
        .collect();
    let count = synonyms.len();
    let scored: Vec<(&str, usize)> = graph
        .synsets_containing(word)
        .map(|s| {
            let overlap = s.members.iter().filter(|m| synonyms.contains(m.as_str())).count();
            (s.id.as_str(), overlap)
        })
        .collect();

    let result = |synset: Option<&str>, overlap, status| AlignmentResult {
        key: key.clone(),
        synset: synset.map(str::to_string),
        overlap,
        synonym_count: count,
        status,
    };

    if scored.is_empty() {
        return result(None, 0, AlignmentStatus::NoSynset);
    }
    let best = scored.iter().map(|(_, o)| *o).max().unwrap_or(0);
    if !is_majority(best, count) {
        return result(None, best, AlignmentStatus::NoMajority);
    }
    let mut winners = scored.iter().filter(|(_, o)| *o == best);
    match (winners.next(), winners.next()) {
        (Some((id, _)), None) => result(Some(id), best, AlignmentStatus::Matched),
        _ => result(None, best, AlignmentStatus::Ambiguous),
    }
}

/// Members of every synset reachable from `synset_id` through at most `depth`
/// edges of `relation`, minus the members of the start synset.
pub fn taxonomy_neighbors(
    graph: &SynsetGraph,
    synset_id: &str,
    relation: TaxonomyRelation,
    depth: u32,
) -> Result<BTreeSet<String>> {
    let start = graph
        .synset(synset_id)
        .ok_or_else(|| Error::UnknownSynset(synset_id.to_string()))?;
    let mut seen: BTreeSet<&str> = BTreeSet::from([synset_id]);
    let mut queue: VecDeque<(&str, u32)> = VecDeque::from([(synset_id, 0)]);
    while let Some((id, d)) = queue.pop_front() {
        if d == depth {
            continue;
        }
        for next in graph.neighbors(id, relation) {
            if seen.insert(next) {
                queue.push_back((next, d + 1));
            }
        }
    }
    Ok(seen
        .into_iter()
        .filter(|id| *id != synset_id)
        .flat_map(|id| graph.synset(id).into_iter().flat_map(|s| s.members.iter()))
        .filter(|m| !start.members.contains(*m))
        .cloned()
        .collect())
}

/// The synonyms of each sense that the filter accepted on feature evidence
/// and that `source` proposed.
pub fn alignment_synonyms(synonyms: &SynonymMerge, source: &str) -> BTreeMap<SenseKey, BTreeSet<String>> {
    synonyms
        .decisions
        .iter()
        .map(|(key, decisions)| {
            let set = decisions
                .iter()
                .filter(|d| d.verdict == SynonymVerdict::Accepted && d.sources.contains(source))
                .map(|d| d.proposal.clone())
                .collect();
            (key.clone(), set)
        })
        .collect()
}

/// Aligns every sense of the lexicon. When two senses of one lemma land on
/// the same synset, only a unique best-overlap sense keeps it; the others are
/// demoted to `Ambiguous`.
pub fn align_lexicon(
    lexicon: &ReferenceLexicon,
    synonyms: &SynonymMerge,
    graph: &SynsetGraph,
    source: &str,
) -> BTreeMap<SenseKey, AlignmentResult> {
    let evidence = alignment_synonyms(synonyms, source);
    let empty = BTreeSet::new();
    let mut out = BTreeMap::new();
    for lemma in lexicon.lemmas() {
        let mut results: Vec<AlignmentResult> = lexicon
            .lookup(lemma)
            .iter()
            .map(|sense| {
                let key = sense.key();
                let syn = evidence.get(&key).unwrap_or(&empty);
                align_sense(&key, syn, graph)
            })
            .collect();
        demote_shared_synsets(&mut results);
        out.extend(results.into_iter().map(|r| (r.key.clone(), r)));
    }
    out
}

fn demote_shared_synsets(results: &mut [AlignmentResult]) {
    let mut by_synset: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for (i, r) in results.iter().enumerate() {
        if let Some(id) = &r.synset {
            by_synset.entry(id.clone()).or_default().push(i);
        }
    }
    for indices in by_synset.values().filter(|v| v.len() > 1) {
        let best = indices.iter().map(|&i| results[i].overlap).max().unwrap_or(0);
        let unique_best = indices.iter().filter(|&&i| results[i].overlap == best).count() == 1;
        for &i in indices {
            if !(unique_best && results[i].overlap == best) {
                results[i].synset = None;
                results[i].status = AlignmentStatus::Ambiguous;
            }
        }
    }
}
