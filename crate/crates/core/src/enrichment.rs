//! Sense selection for the words of an utterance, and enrichment restricted to
//! the selected sense.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::ingest::TaxonomyRelation;
use crate::lexicon::{ArgPosition, DependencyTriple, ReferenceLexicon, SenseKey};
use crate::merged::{MergedLexicon, Provenance};
use crate::rules::{DisambiguationRule, RuleKind, RulePattern};
use crate::taxonomy::{taxonomy_neighbors, AlignmentStatus};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Utterance {
    pub tokens: Vec<String>,
    pub deps: Vec<DependencyTriple>,
    pub frames: BTreeMap<String, BTreeSet<String>>,
}

impl Utterance {
    pub fn new(
        tokens: Vec<String>,
        deps: Vec<DependencyTriple>,
        frames: BTreeMap<String, BTreeSet<String>>,
    ) -> Result<Self> {
        let known: BTreeSet<&str> = tokens.iter().map(String::as_str).collect();
        for dep in &deps {
            for arg in [&dep.head, &dep.dependent] {
                if !known.contains(arg.as_str()) {
                    return Err(Error::InvalidUtterance(format!("`{arg}` in `{dep}` is not a token")));
                }
            }
        }
        if let Some(lemma) = frames.keys().find(|l| !known.contains(l.as_str())) {
            return Err(Error::InvalidUtterance(format!("frame for `{lemma}`, which is not a token")));
        }
        Ok(Self { tokens, deps, frames })
    }

    pub fn contains(&self, lemma: &str) -> bool {
        self.tokens.iter().any(|t| t == lemma)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Resolution {
    Sense(SenseKey),
    Unresolved,
}

fn rule_matches(rule: &DisambiguationRule, utterance: &Utterance, lexicon: &ReferenceLexicon) -> bool {
    let lemma = rule.target_lemma();
    match &rule.pattern {
        RulePattern::Lexical(dep) => utterance.deps.contains(dep),
        RulePattern::Generalized {
            relation,
            target,
            class,
        } => utterance.deps.iter().any(|dep| {
            let other = match target {
                ArgPosition::Head if dep.head == lemma => &dep.dependent,
                ArgPosition::Dependent if dep.dependent == lemma => &dep.head,
                _ => return false,
            };
            dep.relation == *relation
                && other != lemma
                && lexicon.lookup(other).iter().any(|s| s.features.class == *class)
        }),
        RulePattern::Syntactic(frame) => utterance.frames.get(lemma).is_some_and(|f| f.contains(frame)),
    }
}

/// Chooses a sense of `lemma` from the rules whose pattern occurs in the
/// utterance. Lexical evidence beats generalized, which beats syntactic; if
/// the matching rules of the strongest tier disagree, the result is
/// `Unresolved`.
pub fn disambiguate(
    rules: &[DisambiguationRule],
    utterance: &Utterance,
    lemma: &str,
    lexicon: &ReferenceLexicon,
) -> Result<Resolution> {
    let lemma = crate::lexicon::normalize_lemma(lemma);
    if !utterance.contains(&lemma) {
        return Err(Error::LemmaNotInUtterance(lemma));
    }
    let mut tiers: BTreeMap<RuleKind, BTreeSet<&SenseKey>> = BTreeMap::new();
    for rule in rules
        .iter()
        .filter(|r| r.target_lemma() == lemma && rule_matches(r, utterance, lexicon))
    {
        tiers.entry(rule.kind()).or_default().insert(&rule.sense);
    }
    // RuleKind orders lexical < generalized < syntactic.
    Ok(match tiers.into_values().next() {
        Some(senses) if senses.len() == 1 => Resolution::Sense(senses.into_iter().next().cloned().expect("one sense")),
        _ => Resolution::Unresolved,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnrichOptions {
    pub include_multiword: bool,
    pub taxonomy_relations: BTreeSet<TaxonomyRelation>,
    pub depth: u32,
}

impl Default for EnrichOptions {
    fn default() -> Self {
        Self {
            include_multiword: true,
            taxonomy_relations: [TaxonomyRelation::Hypernym, TaxonomyRelation::Hyponym].into(),
            depth: 1,
        }
    }
}

/// Words with every provenance that admitted them.
pub type TaggedWords = BTreeMap<String, Vec<Provenance>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnrichmentSet {
    pub lemma: String,
    /// `None` when disambiguation abstained; all sets are then empty.
    pub sense: Option<SenseKey>,
    pub synonyms: TaggedWords,
    pub derivatives: TaggedWords,
    pub taxonomy_words: TaggedWords,
}

impl EnrichmentSet {
    pub fn unresolved(lemma: &str) -> Self {
        Self {
            lemma: lemma.to_string(),
            sense: None,
            synonyms: TaggedWords::new(),
            derivatives: TaggedWords::new(),
            taxonomy_words: TaggedWords::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.synonyms.is_empty() && self.derivatives.is_empty() && self.taxonomy_words.is_empty()
    }

    /// Every (word, provenance) pair across the three sets.
    pub fn items(&self) -> impl Iterator<Item = (&str, &Provenance)> {
        [&self.synonyms, &self.derivatives, &self.taxonomy_words]
            .into_iter()
            .flatten()
            .flat_map(|(w, ps)| ps.iter().map(move |p| (w.as_str(), p)))
    }
}

/// Enrichment for `lemma` in sense `sense_id`.
pub fn enrich(merged: &MergedLexicon, lemma: &str, sense_id: u32, options: &EnrichOptions) -> Result<EnrichmentSet> {
    let key = merged.reference.sense(lemma, sense_id)?.key();
    enrich_sense(merged, &key, options)
}

/// Enrichment for one fully keyed sense. Only data decided for exactly this
/// sense is used, and the lemma itself is never part of the output.
pub fn enrich_sense(merged: &MergedLexicon, key: &SenseKey, options: &EnrichOptions) -> Result<EnrichmentSet> {
    let record = merged.record(key).ok_or_else(|| Error::UnknownSense {
        lemma: key.lemma.clone(),
        sense_id: key.sense_id,
    })?;
    let mut set = EnrichmentSet::unresolved(&key.lemma);
    set.sense = Some(key.clone());

    for (word, prov) in record.synonyms {
        if prov.decision == crate::synonym::SynonymVerdict::AcceptedMultiword.as_str() && !options.include_multiword {
            continue;
        }
        set.synonyms.entry(word).or_default().push(prov);
    }
    for (candidate, prov) in record.derivatives {
        set.derivatives.entry(candidate.surface).or_default().push(prov);
    }

    let alignment = merged.alignments.get(key);
    if let (Some((synset, prov)), Some(AlignmentStatus::Matched)) = (record.synset, alignment.map(|a| a.status)) {
        for &relation in &options.taxonomy_relations {
            for word in taxonomy_neighbors(&merged.graph, &synset, relation, options.depth)? {
                set.taxonomy_words.entry(word).or_default().push(Provenance {
                    decision: format!("{relation}@{synset}"),
                    ..prov.clone()
                });
            }
        }
    }

    for words in [&mut set.synonyms, &mut set.derivatives, &mut set.taxonomy_words] {
        words.remove(&key.lemma);
        for provs in words.values_mut() {
            provs.sort();
            provs.dedup();
        }
    }
    Ok(set)
}

/// One enrichment set per distinct utterance token known to the lexicon, in
/// token order. Tokens the rules cannot resolve get an empty, unresolved set.
pub fn enrich_utterance(merged: &MergedLexicon, utterance: &Utterance, options: &EnrichOptions) -> Vec<EnrichmentSet> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for token in &utterance.tokens {
        if !seen.insert(token.as_str()) || !merged.reference.contains(token) {
            continue;
        }
        let resolution = disambiguate(&merged.rules, utterance, token, &merged.reference)
            .unwrap_or(Resolution::Unresolved);
        let set = match resolution {
            Resolution::Sense(key) => {
                enrich_sense(merged, &key, options).unwrap_or_else(|_| EnrichmentSet::unresolved(token))
            }
            Resolution::Unresolved => EnrichmentSet::unresolved(token),
        };
        out.push(set);
    }
    out
}

fn render_words(words: &TaggedWords) -> String {
    if words.is_empty() {
        return "-".to_string();
    }
    words
        .iter()
        .map(|(word, provs)| {
            let tags: Vec<String> = provs
                .iter()
                .map(|p| format!("{}:{}", p.sources.join("+"), p.decision))
                .collect();
            format!("{word}[{}]", tags.join("|"))
        })
        .collect::<Vec<_>>()
        .join(",")
}

/// `utterance <TAB> lemma <TAB> pos/sense|unresolved <TAB> syn=... <TAB> der=... <TAB> tax=...`
pub fn format_enrichment(utterance_no: usize, set: &EnrichmentSet) -> String {
    let sense = set
        .sense
        .as_ref()
        .map_or("unresolved".to_string(), |k| format!("{}/{}", k.pos, k.sense_id));
    let mut line = String::new();
    let _ = write!(
        line,
        "{utterance_no}\t{}\t{sense}\tsyn={}\tder={}\ttax={}",
        set.lemma,
        render_words(&set.synonyms),
        render_words(&set.derivatives),
        render_words(&set.taxonomy_words)
    );
    line
}
