//! Reference lexicon: senses keyed by (lemma, part of speech, sense number),
//! their semantic features, derivation instructions and contextual data.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use unicode_normalization::UnicodeNormalization;

use crate::error::{Error, Result};

/// NFC-normalizes a lemma, trims it and collapses inner whitespace runs to a
/// single space. Case is preserved.
pub fn normalize_lemma(raw: &str) -> String {
    let nfc: String = raw.nfc().collect();
    nfc.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Canonical form of domain, class and relation codes.
pub fn fold_code(raw: &str) -> String {
    raw.trim().nfc().collect::<String>().to_uppercase()
}

/// Canonical form of suffixes, parts of speech and subcategorization frames.
pub fn fold_token(raw: &str) -> String {
    raw.trim().nfc().collect::<String>().to_lowercase()
}

const RESERVED: &[char] = &[',', ';', '(', ')', '|', ':', '\t', '\n', '\r'];

/// Returns why `lemma` cannot be stored in any of the line formats, if it cannot.
pub fn lemma_problem(lemma: &str) -> Option<&'static str> {
    if lemma.is_empty() {
        return Some("empty lemma");
    }
    if lemma.contains(RESERVED) {
        return Some("lemma contains a reserved character (one of , ; ( ) | : or a control character)");
    }
    if lemma.starts_with('#') || lemma.starts_with('@') {
        return Some("lemma starts with `#` or `@`");
    }
    if lemma != lemma.trim() {
        return Some("lemma has surrounding whitespace");
    }
    None
}

/// Returns why `token` is not a valid code or tag token, if it is not.
pub fn token_problem(token: &str) -> Option<&'static str> {
    if token.is_empty() {
        return Some("empty token");
    }
    if token.contains(RESERVED) || token.chars().any(char::is_whitespace) {
        return Some("token contains whitespace or a reserved character");
    }
    if token.starts_with('#') || token.starts_with('@') || token == "-" {
        return Some("token starts with `#` or `@`, or is `-`");
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SemanticFeatures {
    pub domain: String,
    pub class: String,
}

impl SemanticFeatures {
    pub fn new(domain: &str, class: &str) -> Self {
        Self {
            domain: fold_code(domain),
            class: fold_code(class),
        }
    }
}

impl fmt::Display for SemanticFeatures {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.domain, self.class)
    }
}

/// A dictionary instruction saying that the derivative formed with `suffix`
/// belongs to sense `target_sense` of the same entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SuffixInstruction {
    pub suffix: String,
    pub target_sense: u32,
}

impl SuffixInstruction {
    pub fn new(suffix: &str, target_sense: u32) -> Self {
        Self {
            suffix: fold_token(suffix),
            target_sense,
        }
    }
}

impl fmt::Display for SuffixInstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.suffix, self.target_sense)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArgPosition {
    Head,
    Dependent,
}

/// A pre-parsed dependency such as `VARG[DIR](remporter,victoire)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DependencyTriple {
    pub relation: String,
    pub head: String,
    pub dependent: String,
}

impl DependencyTriple {
    pub fn new(relation: &str, head: &str, dependent: &str) -> Self {
        Self {
            relation: fold_code(relation),
            head: normalize_lemma(head),
            dependent: normalize_lemma(dependent),
        }
    }

    /// Number of argument slots holding `lemma` (0, 1 or 2).
    pub fn mentions(&self, lemma: &str) -> usize {
        usize::from(self.head == lemma) + usize::from(self.dependent == lemma)
    }

    /// Where `lemma` sits and what the other argument is, when `lemma` fills
    /// exactly one slot.
    pub fn other_argument(&self, lemma: &str) -> Option<(ArgPosition, &str)> {
        match (self.head == lemma, self.dependent == lemma) {
            (true, false) => Some((ArgPosition::Head, &self.dependent)),
            (false, true) => Some((ArgPosition::Dependent, &self.head)),
            _ => None,
        }
    }
}

impl fmt::Display for DependencyTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({},{})", self.relation, self.head, self.dependent)
    }
}

/// Splits `REL(a,b)` into its three raw parts.
pub(crate) fn split_dependency(s: &str) -> std::result::Result<(&str, &str, &str), String> {
    let s = s.trim();
    let open = s
        .find('(')
        .ok_or_else(|| format!("dependency `{s}` lacks `(`"))?;
    let inner = s[open + 1..]
        .strip_suffix(')')
        .ok_or_else(|| format!("dependency `{s}` does not end with `)`"))?;
    let (a, b) = inner
        .split_once(',')
        .ok_or_else(|| format!("dependency `{s}` needs two comma-separated arguments"))?;
    let relation = s[..open].trim();
    if let Some(why) = token_problem(relation) {
        return Err(format!("dependency `{s}`: relation: {why}"));
    }
    Ok((relation, a, b))
}

impl FromStr for DependencyTriple {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let (relation, head, dependent) = split_dependency(s)?;
        let triple = DependencyTriple::new(relation, head, dependent);
        for arg in [&triple.head, &triple.dependent] {
            if let Some(why) = lemma_problem(arg) {
                return Err(format!("dependency `{}`: {why}", s.trim()));
            }
        }
        Ok(triple)
    }
}

/// Identity of a sense. The part of speech separates homographs whose sense
/// numbering is independent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SenseKey {
    pub lemma: String,
    pub pos: String,
    pub sense_id: u32,
}

impl SenseKey {
    pub fn new(lemma: &str, pos: &str, sense_id: u32) -> Self {
        Self {
            lemma: normalize_lemma(lemma),
            pos: fold_token(pos),
            sense_id,
        }
    }
}

impl fmt::Display for SenseKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}/{}", self.lemma, self.pos, self.sense_id)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SenseEntry {
    pub lemma: String,
    pub pos: String,
    pub sense_id: u32,
    pub sense_label: String,
    pub features: SemanticFeatures,
    pub suffix_instructions: Vec<SuffixInstruction>,
    pub example_deps: Vec<DependencyTriple>,
    pub subcat_frames: Vec<String>,
    pub base_synonyms: Vec<String>,
}

impl SenseEntry {
    /// A sense with no instructions, examples, frames or synonyms.
    pub fn new(lemma: &str, pos: &str, sense_id: u32, label: &str, features: SemanticFeatures) -> Self {
        Self {
            lemma: normalize_lemma(lemma),
            pos: fold_token(pos),
            sense_id,
            sense_label: label.trim().to_string(),
            features,
            suffix_instructions: Vec::new(),
            example_deps: Vec::new(),
            subcat_frames: Vec::new(),
            base_synonyms: Vec::new(),
        }
    }

    pub fn key(&self) -> SenseKey {
        SenseKey {
            lemma: self.lemma.clone(),
            pos: self.pos.clone(),
            sense_id: self.sense_id,
        }
    }

    fn normalized(mut self) -> Self {
        self.lemma = normalize_lemma(&self.lemma);
        self.pos = fold_token(&self.pos);
        self.sense_label = self.sense_label.trim().to_string();
        self.features = SemanticFeatures::new(&self.features.domain, &self.features.class);
        for ins in &mut self.suffix_instructions {
            ins.suffix = fold_token(&ins.suffix);
        }
        self.example_deps = self
            .example_deps
            .iter()
            .map(|d| DependencyTriple::new(&d.relation, &d.head, &d.dependent))
            .collect();
        self.subcat_frames = dedup_in_order(self.subcat_frames.iter().map(|s| fold_token(s)));
        self.base_synonyms = dedup_in_order(self.base_synonyms.iter().map(|s| normalize_lemma(s)));
        self
    }
}

pub(crate) fn dedup_in_order(items: impl IntoIterator<Item = String>) -> Vec<String> {
    let mut seen = BTreeSet::new();
    items
        .into_iter()
        .filter(|item| seen.insert(item.clone()))
        .collect()
}

/// Closed code inventories declared in a lexicon header.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Inventories {
    pub domain: BTreeSet<String>,
    pub class: BTreeSet<String>,
    pub relation: BTreeSet<String>,
    pub suffix: BTreeSet<String>,
}

impl Inventories {
    pub fn new<'a>(
        domain: impl IntoIterator<Item = &'a str>,
        class: impl IntoIterator<Item = &'a str>,
        relation: impl IntoIterator<Item = &'a str>,
        suffix: impl IntoIterator<Item = &'a str>,
    ) -> Self {
        Self {
            domain: domain.into_iter().map(fold_code).collect(),
            class: class.into_iter().map(fold_code).collect(),
            relation: relation.into_iter().map(fold_code).collect(),
            suffix: suffix.into_iter().map(fold_token).collect(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReferenceLexicon {
    inventories: Inventories,
    entries: BTreeMap<String, Vec<SenseEntry>>,
}

impl ReferenceLexicon {
    /// Builds a lexicon, normalizing every string and checking all invariants.
    pub fn new(inventories: Inventories, senses: impl IntoIterator<Item = SenseEntry>) -> Result<Self> {
        let inventories = Inventories::new(
            inventories.domain.iter().map(String::as_str),
            inventories.class.iter().map(String::as_str),
            inventories.relation.iter().map(String::as_str),
            inventories.suffix.iter().map(String::as_str),
        );
        let numbered: Vec<(usize, SenseEntry)> = senses
            .into_iter()
            .enumerate()
            .map(|(i, s)| (i + 1, s.normalized()))
            .collect();
        let problems = validate_senses(&inventories, &numbered);
        if !problems.is_empty() {
            return Err(Error::InvalidLexicon(
                problems
                    .into_iter()
                    .map(|(n, msg)| format!("record {n}: {msg}"))
                    .collect(),
            ));
        }
        Ok(Self::from_validated(inventories, numbered.into_iter().map(|(_, s)| s)))
    }

    pub(crate) fn from_validated(inventories: Inventories, senses: impl IntoIterator<Item = SenseEntry>) -> Self {
        let mut entries: BTreeMap<String, Vec<SenseEntry>> = BTreeMap::new();
        for sense in senses {
            entries.entry(sense.lemma.clone()).or_default().push(sense);
        }
        for senses in entries.values_mut() {
            senses.sort_by(|a, b| (&a.pos, a.sense_id).cmp(&(&b.pos, b.sense_id)));
        }
        Self { inventories, entries }
    }

    pub fn inventories(&self) -> &Inventories {
        &self.inventories
    }

    /// All senses of `lemma` across parts of speech, by part of speech then number.
    pub fn lookup(&self, lemma: &str) -> &[SenseEntry] {
        self.entries
            .get(&normalize_lemma(lemma))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn contains(&self, lemma: &str) -> bool {
        !self.lookup(lemma).is_empty()
    }

    /// Resolves a sense by lemma and number. Fails when the number is absent
    /// or exists under more than one part of speech.
    pub fn sense(&self, lemma: &str, sense_id: u32) -> Result<&SenseEntry> {
        let matches: Vec<&SenseEntry> = self
            .lookup(lemma)
            .iter()
            .filter(|s| s.sense_id == sense_id)
            .collect();
        match matches.as_slice() {
            [one] => Ok(one),
            [] => Err(Error::UnknownSense {
                lemma: normalize_lemma(lemma),
                sense_id,
            }),
            many => Err(Error::AmbiguousSense {
                lemma: normalize_lemma(lemma),
                sense_id,
                pos: many.iter().map(|s| s.pos.clone()).collect(),
            }),
        }
    }

    pub fn sense_by_key(&self, key: &SenseKey) -> Option<&SenseEntry> {
        self.entries
            .get(&key.lemma)?
            .iter()
            .find(|s| s.pos == key.pos && s.sense_id == key.sense_id)
    }

    pub fn features_of(&self, lemma: &str, sense_id: u32) -> Result<&SemanticFeatures> {
        self.sense(lemma, sense_id).map(|s| &s.features)
    }

    /// Senses sharing the part of speech of `key`, i.e. one dictionary entry.
    pub fn entry_senses<'a>(&'a self, lemma: &str, pos: &'a str) -> impl Iterator<Item = &'a SenseEntry> + 'a {
        self.lookup(lemma).iter().filter(move |s| s.pos == pos)
    }

    pub fn lemmas(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    /// Every sense, ordered by lemma, part of speech and number.
    pub fn senses(&self) -> impl Iterator<Item = &SenseEntry> {
        self.entries.values().flatten()
    }

    pub fn lemma_count(&self) -> usize {
        self.entries.len()
    }

    pub fn sense_count(&self) -> usize {
        self.entries.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Checks every lexicon invariant over numbered records. Returns
/// `(record number, message)` pairs; empty when the records are valid.
pub(crate) fn validate_senses(inv: &Inventories, senses: &[(usize, SenseEntry)]) -> Vec<(usize, String)> {
    let mut problems = Vec::new();
    let mut first_seen: BTreeMap<SenseKey, usize> = BTreeMap::new();
    let mut entry_ids: BTreeMap<(&str, &str), BTreeSet<u32>> = BTreeMap::new();
    for (_, s) in senses {
        entry_ids
            .entry((s.lemma.as_str(), s.pos.as_str()))
            .or_default()
            .insert(s.sense_id);
    }

    for (line, s) in senses {
        let mut report = |msg: String| problems.push((*line, msg));
        if let Some(why) = lemma_problem(&s.lemma) {
            report(format!("lemma `{}`: {why}", s.lemma));
        }
        if let Some(why) = token_problem(&s.pos) {
            report(format!("part of speech `{}`: {why}", s.pos));
        }
        if s.sense_id == 0 {
            report("sense_id must be a positive integer".to_string());
        }
        if s.sense_label.is_empty() || s.sense_label.contains(['\t', '\n', '\r']) {
            report(format!("sense label `{}` is empty or contains a control character", s.sense_label));
        }
        if !inv.domain.contains(&s.features.domain) {
            report(format!("unknown domain code `{}`", s.features.domain));
        }
        if !inv.class.contains(&s.features.class) {
            report(format!("unknown class code `{}`", s.features.class));
        }
        let ids = &entry_ids[&(s.lemma.as_str(), s.pos.as_str())];
        for ins in &s.suffix_instructions {
            if !inv.suffix.contains(&ins.suffix) {
                report(format!("unknown suffix `{}`", ins.suffix));
            }
            if !ids.contains(&ins.target_sense) {
                report(format!(
                    "suffix instruction `{ins}` points at nonexistent sense {} of {} ({})",
                    ins.target_sense, s.lemma, s.pos
                ));
            }
        }
        for dep in &s.example_deps {
            if !inv.relation.contains(&dep.relation) {
                report(format!("unknown relation `{}` in `{dep}`", dep.relation));
            }
            for arg in [&dep.head, &dep.dependent] {
                if let Some(why) = lemma_problem(arg) {
                    report(format!("dependency `{dep}`: {why}"));
                }
            }
        }
        for frame in &s.subcat_frames {
            if let Some(why) = token_problem(frame) {
                report(format!("subcategorization frame `{frame}`: {why}"));
            }
        }
        for syn in &s.base_synonyms {
            if let Some(why) = lemma_problem(syn) {
                report(format!("base synonym `{syn}`: {why}"));
            }
            if *syn == s.lemma {
                report(format!("`{}` lists itself as a base synonym", s.lemma));
            }
        }
        let key = s.key();
        if let Some(first) = first_seen.get(&key) {
            report(format!("duplicate sense {key} (first defined at {first})"));
        } else {
            first_seen.insert(key, *line);
        }
    }
    problems
}
