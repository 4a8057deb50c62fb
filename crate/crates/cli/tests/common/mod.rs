//! Random lexicons, resources and utterances, and brute-force oracles for the
//! merge decisions. The oracles deliberately avoid the library's lookup
//! structures: they scan every sense of the lexicon for every question.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use senselex::ingest::{Edge, Synset, SynonymResource, SynsetGraph, TaxonomyRelation};
use senselex::{
    DependencyTriple, Inventories, ReferenceLexicon, SemanticFeatures, SenseEntry, SenseKey, SuffixInstruction,
    Utterance,
};

pub const SYLLABLES: [&str; 10] = ["ba", "co", "lé", "mi", "nu", "ra", "to", "ve", "é", "ur"];
pub const SUFFIXES: [&str; 8] = ["ure", "eur", "ant", "age", "able", "er", "é", "te"];
pub const RELATIONS: [&str; 3] = ["OBJ", "SUBJ", "VARG[DIR]"];
pub const FRAMES: [&str; 3] = ["transitive", "intransitive", "reflexive"];
pub const POS: [&str; 2] = ["v", "n"];

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/figures")
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn word(rng: &mut ChaCha8Rng, max_syllables: usize) -> String {
    let n = rng.random_range(1..=max_syllables);
    (0..n).map(|_| *SYLLABLES.choose(rng).unwrap()).collect()
}

#[derive(Debug, Clone)]
pub struct Shape {
    pub lemmas: usize,
    pub max_senses: usize,
    pub domains: usize,
    pub classes: usize,
}

impl Default for Shape {
    fn default() -> Self {
        Shape {
            lemmas: 20,
            max_senses: 4,
            domains: 6,
            classes: 6,
        }
    }
}

/// A random lexicon of at most `shape.lemmas` lemmas with up to
/// `shape.max_senses` senses each.
pub fn random_lexicon(rng: &mut ChaCha8Rng, shape: &Shape) -> ReferenceLexicon {
    let domains: Vec<String> = (0..rng.random_range(1..=shape.domains)).map(|i| format!("D{i}")).collect();
    let classes: Vec<String> = (0..rng.random_range(1..=shape.classes)).map(|i| format!("C{i}")).collect();
    let lemmas: BTreeSet<String> = (0..rng.random_range(1..=shape.lemmas)).map(|_| word(rng, 3)).collect();
    let lemma_list: Vec<&String> = lemmas.iter().collect();

    let mut senses = Vec::new();
    for lemma in &lemmas {
        // Sense numbers are unique per part of speech, not per lemma.
        let mut used: BTreeSet<(&str, u32)> = BTreeSet::new();
        let n = rng.random_range(1..=shape.max_senses);
        while used.len() < n {
            used.insert((POS.choose(rng).unwrap(), rng.random_range(1..=5)));
        }
        for &(pos, id) in &used {
            let features = SemanticFeatures::new(domains.choose(rng).unwrap(), classes.choose(rng).unwrap());
            let mut s = SenseEntry::new(lemma, pos, id, &format!("sens {id}"), features);
            let siblings: Vec<u32> = used.iter().filter(|(p, _)| *p == pos).map(|(_, i)| *i).collect();
            let mut suffixes: Vec<&str> = SUFFIXES.to_vec();
            for _ in 0..rng.random_range(0..=3) {
                let k = rng.random_range(0..suffixes.len());
                let suffix = suffixes.swap_remove(k);
                s.suffix_instructions
                    .push(SuffixInstruction::new(suffix, *siblings.choose(rng).unwrap()));
            }
            for _ in 0..rng.random_range(0..=2) {
                let other = lemma_list.choose(rng).unwrap();
                let rel = RELATIONS.choose(rng).unwrap();
                let dep = if rng.random_bool(0.7) {
                    DependencyTriple::new(rel, lemma, other)
                } else {
                    DependencyTriple::new(rel, other, lemma)
                };
                if !s.example_deps.contains(&dep) {
                    s.example_deps.push(dep);
                }
            }
            for frame in FRAMES {
                if rng.random_bool(0.3) {
                    s.subcat_frames.push(frame.to_string());
                }
            }
            if rng.random_bool(0.2) {
                let syn = lemma_list.choose(rng).unwrap();
                if *syn != lemma {
                    s.base_synonyms.push(syn.to_string());
                }
            }
            senses.push(s);
        }
    }
    let inv = Inventories::new(
        domains.iter().map(String::as_str),
        classes.iter().map(String::as_str),
        RELATIONS,
        SUFFIXES,
    );
    ReferenceLexicon::new(inv, senses).expect("generated lexicon is valid")
}

/// Proposals mixing lexicon lemmas, unknown words and multiword expressions.
pub fn random_resources(rng: &mut ChaCha8Rng, lexicon: &ReferenceLexicon, count: usize) -> Vec<SynonymResource> {
    let lemmas: Vec<&str> = lexicon.lemmas().collect();
    (0..count)
        .map(|i| {
            let mut r = SynonymResource::new(&format!("res{i}"));
            for _ in 0..rng.random_range(0..=lemmas.len() + 2) {
                let head = if rng.random_bool(0.9) {
                    lemmas.choose(rng).unwrap().to_string()
                } else {
                    word(rng, 4)
                };
                let proposals: Vec<String> = (0..rng.random_range(1..=5))
                    .map(|_| match rng.random_range(0..10) {
                        0 => format!("{} {}", word(rng, 2), word(rng, 2)),
                        1 => word(rng, 4),
                        _ => lemmas.choose(rng).unwrap().to_string(),
                    })
                    .collect();
                r.add(&head, proposals.iter().map(String::as_str));
            }
            r
        })
        .collect()
}

/// Stems and suffixes of lexicon lemmas glued together, plus noise.
pub fn random_wordlist(rng: &mut ChaCha8Rng, lexicon: &ReferenceLexicon) -> BTreeSet<String> {
    let lemmas: Vec<&str> = lexicon.lemmas().collect();
    let mut words = BTreeSet::new();
    for _ in 0..rng.random_range(0..=40) {
        let lemma: Vec<char> = lemmas.choose(rng).unwrap().chars().collect();
        let cut = rng.random_range(0..=3.min(lemma.len() - 1));
        let stem: String = lemma[..lemma.len() - cut].iter().collect();
        words.insert(format!("{stem}{}", SUFFIXES.choose(rng).unwrap()));
    }
    for _ in 0..rng.random_range(0..=10) {
        words.insert(word(rng, 4));
    }
    if rng.random_bool(0.3) {
        words.insert(lemmas.choose(rng).unwrap().to_string());
    }
    words
}

/// Synsets over lexicon lemmas and a few outsiders; hypernym edges only point
/// to lower-numbered synsets, so the graph is acyclic.
pub fn random_graph(rng: &mut ChaCha8Rng, lexicon: &ReferenceLexicon) -> SynsetGraph {
    let lemmas: Vec<&str> = lexicon.lemmas().collect();
    let n = rng.random_range(1..=12);
    let synsets: Vec<Synset> = (0..n)
        .map(|i| {
            let members: Vec<String> = (0..rng.random_range(1..=5))
                .map(|_| {
                    if rng.random_bool(0.85) {
                        lemmas.choose(rng).unwrap().to_string()
                    } else {
                        word(rng, 3)
                    }
                })
                .collect();
            Synset::new(&format!("S{i}"), members.iter().map(String::as_str))
        })
        .collect();
    let mut edges = Vec::new();
    for i in 1..n {
        for _ in 0..rng.random_range(0..=2) {
            let j = rng.random_range(0..i);
            let rel = if rng.random_bool(0.8) {
                TaxonomyRelation::Hypernym
            } else {
                TaxonomyRelation::Meronym
            };
            edges.push(Edge::new(&format!("S{i}"), rel, &format!("S{j}")));
        }
    }
    SynsetGraph::new(synsets, edges).expect("generated graph is valid")
}

/// Utterances built from the example dependencies of the lexicon, so that
/// lexical and generalized rules actually fire, plus random frames.
pub fn random_utterances(rng: &mut ChaCha8Rng, lexicon: &ReferenceLexicon, count: usize) -> Vec<Utterance> {
    let lemmas: Vec<&str> = lexicon.lemmas().collect();
    let examples: Vec<&DependencyTriple> = lexicon.senses().flat_map(|s| &s.example_deps).collect();
    (0..count)
        .map(|_| {
            let mut deps = Vec::new();
            for _ in 0..rng.random_range(0..=3) {
                let dep = match examples.choose(rng) {
                    Some(d) if rng.random_bool(0.6) => (*d).clone(),
                    _ => DependencyTriple::new(
                        RELATIONS.choose(rng).unwrap(),
                        lemmas.choose(rng).unwrap(),
                        lemmas.choose(rng).unwrap(),
                    ),
                };
                deps.push(dep);
            }
            let mut tokens: Vec<String> = deps.iter().flat_map(|d| [d.head.clone(), d.dependent.clone()]).collect();
            tokens.push(lemmas.choose(rng).unwrap().to_string());
            let mut frames: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
            for t in &tokens {
                if rng.random_bool(0.3) {
                    frames.entry(t.clone()).or_default().insert(FRAMES.choose(rng).unwrap().to_string());
                }
            }
            Utterance::new(tokens, deps, frames).expect("tokens cover every dependency")
        })
        .collect()
}

/// One synonym decision flattened for comparison.
pub type SynRow = (SenseKey, String, String, Vec<u32>, Vec<String>);

/// Brute force over every (target sense, lexicon sense) pair.
pub fn oracle_synonyms(
    lexicon: &ReferenceLexicon,
    resources: &[SynonymResource],
) -> (BTreeSet<SynRow>, BTreeSet<(String, String)>) {
    let all: Vec<&SenseEntry> = lexicon.senses().collect();
    let mut skipped = BTreeSet::new();
    let mut proposals: BTreeMap<(String, String), BTreeSet<String>> = BTreeMap::new();
    for r in resources {
        for (lemma, props) in &r.proposals {
            if props.is_empty() {
                continue;
            }
            if !all.iter().any(|s| &s.lemma == lemma) {
                skipped.insert((r.name.clone(), lemma.clone()));
                continue;
            }
            for p in props {
                proposals
                    .entry((lemma.clone(), p.clone()))
                    .or_default()
                    .insert(r.name.clone());
            }
        }
    }
    let mut rows = BTreeSet::new();
    for ((lemma, proposal), sources) in &proposals {
        for target in all.iter().filter(|s| &s.lemma == lemma) {
            let known = all.iter().any(|s| &s.lemma == proposal);
            let mut matched: Vec<u32> = Vec::new();
            for cand in all.iter().filter(|s| &s.lemma == proposal) {
                let same_domain = cand.features.domain == target.features.domain;
                let same_class = cand.features.class == target.features.class;
                if same_domain && same_class && !matched.contains(&cand.sense_id) {
                    matched.push(cand.sense_id);
                }
            }
            matched.sort_unstable();
            let verdict = if proposal.contains(' ') || !known {
                matched.clear();
                "accepted-multiword"
            } else if matched.is_empty() {
                "rejected"
            } else {
                "accepted"
            };
            rows.insert((
                target.key(),
                proposal.clone(),
                verdict.to_string(),
                matched,
                sources.iter().cloned().collect(),
            ));
        }
    }
    (rows, skipped)
}

/// One derivative decision flattened for comparison.
pub type DerRow = (SenseKey, String, String, String, String);

/// Enumerates word × suffix × sense. Characters stand in for grapheme
/// clusters; the generators only use precomposed letters.
pub fn oracle_derivatives(
    lexicon: &ReferenceLexicon,
    wordlist: &BTreeSet<String>,
    radical_min: usize,
    max_trim: usize,
) -> BTreeSet<DerRow> {
    let all: Vec<&SenseEntry> = lexicon.senses().collect();
    let mut rows = BTreeSet::new();
    for word in wordlist {
        for suffix in &lexicon.inventories().suffix {
            let Some(radical) = word.strip_suffix(suffix.as_str()) else {
                continue;
            };
            if radical.is_empty() {
                continue;
            }
            for sense in &all {
                let lemma = &sense.lemma;
                let trimmed = lemma.chars().count() as isize - radical.chars().count() as isize;
                if word == lemma || !lemma.starts_with(radical) || !(0..=max_trim as isize).contains(&trimmed) {
                    continue;
                }
                let verdict = if radical.chars().count() < radical_min {
                    "rejected-short-radical"
                } else {
                    let mut to_target = false;
                    let mut elsewhere = false;
                    for other in all.iter().filter(|o| &o.lemma == lemma && o.pos == sense.pos) {
                        for ins in &other.suffix_instructions {
                            if &ins.suffix == suffix {
                                if ins.target_sense == sense.sense_id {
                                    to_target = true;
                                } else {
                                    elsewhere = true;
                                }
                            }
                        }
                    }
                    match (to_target, elsewhere) {
                        (true, _) => "kept",
                        (false, true) => "rejected-other-sense",
                        (false, false) => "rejected-no-instruction",
                    }
                };
                rows.insert((
                    sense.key(),
                    word.clone(),
                    radical.to_string(),
                    suffix.clone(),
                    verdict.to_string(),
                ));
            }
        }
    }
    rows
}
