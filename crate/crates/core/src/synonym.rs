//! Distribution of synonym proposals onto reference senses.
//!
//! A single-word proposal found in the reference lexicon is kept for a target
//! sense when at least one of the proposal's own senses carries exactly the
//! same (domain, class) pair. Multiword proposals, and single words the
//! lexicon does not know, cannot be given features; they are kept for every
//! sense and tagged `accepted-multiword`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::Result;
use crate::ingest::SynonymResource;
use crate::lexicon::{normalize_lemma, ReferenceLexicon, SenseEntry, SenseKey};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SynonymVerdict {
    Accepted,
    AcceptedMultiword,
    Rejected,
}

impl SynonymVerdict {
    pub const ALL: [SynonymVerdict; 3] = [Self::Accepted, Self::AcceptedMultiword, Self::Rejected];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Accepted => "accepted",
            Self::AcceptedMultiword => "accepted-multiword",
            Self::Rejected => "rejected",
        }
    }

    pub fn is_accepted(self) -> bool {
        self != Self::Rejected
    }
}

impl fmt::Display for SynonymVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SynonymVerdict {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "accepted" => Ok(Self::Accepted),
            "accepted-multiword" => Ok(Self::AcceptedMultiword),
            "rejected" => Ok(Self::Rejected),
            other => Err(format!("unknown synonym verdict `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SynonymDecision {
    pub target: SenseKey,
    pub proposal: String,
    pub verdict: SynonymVerdict,
    /// Sense numbers of the proposal's own entry whose features matched.
    pub matching_proposal_senses: Vec<u32>,
    /// Names of the resources that proposed this synonym.
    pub sources: BTreeSet<String>,
}

pub fn is_multiword(proposal: &str) -> bool {
    proposal.chars().any(char::is_whitespace)
}

/// Decides one proposal for the sense `target_lemma`/`target_sense`.
pub fn filter_synonym(
    lexicon: &ReferenceLexicon,
    target_lemma: &str,
    target_sense: u32,
    proposal: &str,
) -> Result<SynonymDecision> {
    let target = lexicon.sense(target_lemma, target_sense)?;
    Ok(filter_for_sense(lexicon, target, proposal))
}

/// Same as [`filter_synonym`] for an already resolved target sense.
pub fn filter_for_sense(lexicon: &ReferenceLexicon, target: &SenseEntry, proposal: &str) -> SynonymDecision {
    let proposal = normalize_lemma(proposal);
    let proposal_senses = lexicon.lookup(&proposal);
    let (verdict, matching) = if is_multiword(&proposal) || proposal_senses.is_empty() {
        (SynonymVerdict::AcceptedMultiword, Vec::new())
    } else {
        let matching: Vec<u32> = proposal_senses
            .iter()
            .filter(|s| s.features == target.features)
            .map(|s| s.sense_id)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if matching.is_empty() {
            (SynonymVerdict::Rejected, matching)
        } else {
            (SynonymVerdict::Accepted, matching)
        }
    };
    SynonymDecision {
        target: target.key(),
        proposal,
        verdict,
        matching_proposal_senses: matching,
        sources: BTreeSet::new(),
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SynonymMerge {
    /// Decisions per sense, sorted by proposal, one per proposal.
    pub decisions: BTreeMap<SenseKey, Vec<SynonymDecision>>,
    /// (resource, lemma) pairs whose lemma is absent from the lexicon.
    pub skipped: BTreeSet<(String, String)>,
}

impl SynonymMerge {
    pub fn for_sense(&self, key: &SenseKey) -> &[SynonymDecision] {
        self.decisions.get(key).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn iter(&self) -> impl Iterator<Item = &SynonymDecision> {
        self.decisions.values().flatten()
    }
}

/// Runs the filter for every sense of every lemma any resource has
/// proposals for. The result does not depend on resource order.
pub fn merge_synonyms(lexicon: &ReferenceLexicon, resources: &[SynonymResource]) -> SynonymMerge {
    let mut pooled: BTreeMap<&str, BTreeMap<&str, BTreeSet<&str>>> = BTreeMap::new();
    let mut merge = SynonymMerge::default();
    for resource in resources {
        for (lemma, proposals) in &resource.proposals {
            if proposals.is_empty() {
                continue;
            }
            if !lexicon.contains(lemma) {
                merge.skipped.insert((resource.name.clone(), lemma.clone()));
                continue;
            }
            let per_lemma = pooled.entry(lemma).or_default();
            for p in proposals {
                per_lemma.entry(p).or_default().insert(&resource.name);
            }
        }
    }

    for (lemma, proposals) in pooled {
        for sense in lexicon.lookup(lemma) {
            let decisions = proposals
                .iter()
                .map(|(proposal, sources)| {
                    let mut d = filter_for_sense(lexicon, sense, proposal);
                    d.sources = sources.iter().map(|s| s.to_string()).collect();
                    d
                })
                .collect();
            merge.decisions.insert(sense.key(), decisions);
        }
    }
    merge
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::{Inventories, SemanticFeatures};

    fn fixture() -> ReferenceLexicon {
        let f = SemanticFeatures::new;
        ReferenceLexicon::new(
            Inventories::new(["SOC", "PSY", "LOC"], ["S4", "P2", "M1"], [], []),
            [
                SenseEntry::new("ravir", "v", 1, "charmer", f("PSY", "P2")),
                SenseEntry::new("ravir", "v", 2, "voler", f("SOC", "S4")),
                SenseEntry::new("charmer", "v", 1, "plaire", f("PSY", "P2")),
                SenseEntry::new("voler", "v", 1, "fly", f("LOC", "M1")),
                SenseEntry::new("voler", "v", 2, "dérober", f("SOC", "S4")),
            ],
        )
        .unwrap()
    }

    #[test]
    fn feature_mismatch_rejects() {
        let d = filter_synonym(&fixture(), "ravir", 2, "charmer").unwrap();
        assert_eq!(d.verdict, SynonymVerdict::Rejected);
        assert!(d.matching_proposal_senses.is_empty());
    }

    #[test]
    fn feature_match_accepts() {
        let d = filter_synonym(&fixture(), "ravir", 2, "voler").unwrap();
        assert_eq!(d.verdict, SynonymVerdict::Accepted);
        assert_eq!(d.matching_proposal_senses, vec![2]);
    }

    #[test]
    fn multiword_and_unknown_words() {
        let lex = fixture();
        for p in ["mettre la main sur", "subtiliser"] {
            let d = filter_synonym(&lex, "ravir", 2, p).unwrap();
            assert_eq!(d.verdict, SynonymVerdict::AcceptedMultiword, "{p}");
        }
    }

    #[test]
    fn unknown_target() {
        assert!(filter_synonym(&fixture(), "ravir", 3, "voler").is_err());
    }

    #[test]
    fn half_matching_features_reject() {
        let f = SemanticFeatures::new;
        let lex = ReferenceLexicon::new(
            Inventories::new(["SOC", "PSY"], ["S4", "P2"], [], []),
            [
                SenseEntry::new("a", "v", 1, "x", f("SOC", "S4")),
                SenseEntry::new("b", "v", 1, "x", f("SOC", "P2")),
                SenseEntry::new("c", "v", 1, "x", f("PSY", "S4")),
            ],
        )
        .unwrap();
        for p in ["b", "c"] {
            assert_eq!(filter_synonym(&lex, "a", 1, p).unwrap().verdict, SynonymVerdict::Rejected);
        }
    }

    #[test]
    fn merge_deduplicates_across_resources() {
        let lex = fixture();
        let mut bailly = SynonymResource::new("bailly");
        bailly.add("ravir", ["charmer", "voler"]);
        bailly.add("enlever", ["ôter"]);
        let mut memodata = SynonymResource::new("memodata");
        memodata.add("ravir", ["voler"]);

        let merged = merge_synonyms(&lex, &[bailly.clone(), memodata.clone()]);
        let ravir2 = merged.for_sense(&SenseKey::new("ravir", "v", 2));
        assert_eq!(ravir2.len(), 2);
        assert_eq!(ravir2[0].proposal, "charmer");
        assert_eq!(ravir2[0].verdict, SynonymVerdict::Rejected);
        assert_eq!(ravir2[1].verdict, SynonymVerdict::Accepted);
        assert_eq!(ravir2[1].sources.len(), 2);

        let ravir1 = merged.for_sense(&SenseKey::new("ravir", "v", 1));
        assert_eq!(ravir1[0].verdict, SynonymVerdict::Accepted);
        assert_eq!(ravir1[1].verdict, SynonymVerdict::Rejected);

        assert!(merged.skipped.contains(&("bailly".to_string(), "enlever".to_string())));
        assert_eq!(merged, merge_synonyms(&lex, &[memodata, bailly]));
        assert!(merge_synonyms(&lex, &[]).decisions.is_empty());
    }
}
