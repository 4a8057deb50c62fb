//! Suffixal derivatives: an over-generating candidate source filtered by the
//! dictionary's suffix instructions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use unicode_segmentation::UnicodeSegmentation;

use crate::error::{Error, Result};
use crate::lexicon::{ReferenceLexicon, SenseEntry, SenseKey};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DerivationConfig {
    /// Radicals with fewer grapheme clusters than this are rejected.
    pub radical_min: usize,
    /// How many trailing grapheme clusters of the lemma a radical may drop.
    pub max_stem_trim: usize,
}

impl Default for DerivationConfig {
    fn default() -> Self {
        Self {
            radical_min: 3,
            max_stem_trim: 2,
        }
    }
}

/// A decomposition `surface = radical + suffix`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DerivativeCandidate {
    pub surface: String,
    pub radical: String,
    pub suffix: String,
}

impl DerivativeCandidate {
    pub fn new(surface: &str, radical: &str, suffix: &str) -> Self {
        Self {
            surface: surface.to_string(),
            radical: radical.to_string(),
            suffix: suffix.to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DerivativeVerdict {
    Kept,
    RejectedNoInstruction,
    RejectedOtherSense,
    RejectedShortRadical,
}

impl DerivativeVerdict {
    pub const ALL: [DerivativeVerdict; 4] = [
        Self::Kept,
        Self::RejectedNoInstruction,
        Self::RejectedOtherSense,
        Self::RejectedShortRadical,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Kept => "kept",
            Self::RejectedNoInstruction => "rejected-no-instruction",
            Self::RejectedOtherSense => "rejected-other-sense",
            Self::RejectedShortRadical => "rejected-short-radical",
        }
    }
}

impl fmt::Display for DerivativeVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DerivativeVerdict {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|v| v.as_str() == s)
            .ok_or_else(|| format!("unknown derivative verdict `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DerivativeDecision {
    pub target: SenseKey,
    pub candidate: DerivativeCandidate,
    pub verdict: DerivativeVerdict,
    /// Present exactly when the verdict is `Kept`.
    pub assigned_sense: Option<u32>,
}

fn graphemes(s: &str) -> Vec<&str> {
    s.graphemes(true).collect()
}

/// Radicals a derivative of `lemma` may be built on: the lemma itself and the
/// lemma minus up to `max_stem_trim` trailing grapheme clusters.
pub fn stems(lemma: &str, max_stem_trim: usize) -> BTreeSet<String> {
    let g = graphemes(lemma);
    (0..=max_stem_trim.min(g.len().saturating_sub(1)))
        .map(|k| g[..g.len() - k].concat())
        .collect()
}

/// Every `(word, radical, suffix)` split of a wordlist entry where the suffix
/// is in the inventory and the radical is a stem of `lemma`. Over-generates on
/// purpose; the instruction filter does the selection.
pub fn generate_candidates(
    lemma: &str,
    wordlist: &BTreeSet<String>,
    suffix_inventory: &BTreeSet<String>,
    config: &DerivationConfig,
) -> BTreeSet<DerivativeCandidate> {
    let mut out = BTreeSet::new();
    if lemma.is_empty() {
        return out;
    }
    for stem in stems(lemma, config.max_stem_trim) {
        let words = wordlist
            .range::<str, _>((std::ops::Bound::Included(stem.as_str()), std::ops::Bound::Unbounded))
            .take_while(|w| w.starts_with(stem.as_str()));
        for word in words {
            let rest = &word[stem.len()..];
            if word != lemma && !rest.is_empty() && suffix_inventory.contains(rest) {
                out.insert(DerivativeCandidate::new(word, &stem, rest));
            }
        }
    }
    out
}

/// Decides `candidate` for sense `target_sense` of the entry `entry_senses`.
///
/// Instructions are pooled over all senses of the entry that share the
/// target's part of speech, so a redirect such as `age:5` written under sense 1
/// makes the `-age` derivative belong to sense 5.
pub fn filter_derivative(
    entry_senses: &[SenseEntry],
    candidate: &DerivativeCandidate,
    target_sense: u32,
    config: &DerivationConfig,
) -> Result<DerivativeDecision> {
    let target = entry_senses
        .iter()
        .find(|s| s.sense_id == target_sense)
        .ok_or_else(|| Error::UnknownSense {
            lemma: entry_senses.first().map(|s| s.lemma.clone()).unwrap_or_default(),
            sense_id: target_sense,
        })?;
    Ok(decide(entry_senses.iter().filter(|s| s.pos == target.pos), target, candidate, config))
}

fn decide<'a>(
    entry: impl Iterator<Item = &'a SenseEntry>,
    target: &SenseEntry,
    candidate: &DerivativeCandidate,
    config: &DerivationConfig,
) -> DerivativeDecision {
    let (verdict, assigned_sense) = if graphemes(&candidate.radical).len() < config.radical_min {
        (DerivativeVerdict::RejectedShortRadical, None)
    } else {
        let targets: BTreeSet<u32> = entry
            .flat_map(|s| &s.suffix_instructions)
            .filter(|ins| ins.suffix == candidate.suffix)
            .map(|ins| ins.target_sense)
            .collect();
        if targets.contains(&target.sense_id) {
            (DerivativeVerdict::Kept, Some(target.sense_id))
        } else if targets.is_empty() {
            (DerivativeVerdict::RejectedNoInstruction, None)
        } else {
            (DerivativeVerdict::RejectedOtherSense, None)
        }
    };
    DerivativeDecision {
        target: target.key(),
        candidate: candidate.clone(),
        verdict,
        assigned_sense,
    }
}

/// Generates candidates for every lemma and decides each one for every sense.
/// Senses without candidates get no entry.
pub fn merge_derivatives(
    lexicon: &ReferenceLexicon,
    wordlist: &BTreeSet<String>,
    config: &DerivationConfig,
) -> BTreeMap<SenseKey, Vec<DerivativeDecision>> {
    let suffixes = &lexicon.inventories().suffix;
    let mut out = BTreeMap::new();
    for lemma in lexicon.lemmas() {
        let candidates = generate_candidates(lemma, wordlist, suffixes, config);
        if candidates.is_empty() {
            continue;
        }
        for sense in lexicon.lookup(lemma) {
            let decisions = candidates
                .iter()
                .map(|c| decide(lexicon.entry_senses(lemma, &sense.pos), sense, c, config))
                .collect();
            out.insert(sense.key(), decisions);
        }
    }
    out
}
