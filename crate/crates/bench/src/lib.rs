//! Synthetic inputs for the benchmarks: a lexicon of `lemmas` entries over a
//! small alphabet, synonym dictionaries, a wordlist and a synset forest.

use std::collections::BTreeSet;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use senselex::ingest::{Edge, Synset, SynonymResource, SynsetGraph, TaxonomyRelation};
use senselex::{
    DependencyTriple, Inventories, MergeConfig, MergeInputs, ReferenceLexicon, SemanticFeatures, SenseEntry,
    SuffixInstruction,
};

const SYLLABLES: [&str; 12] = ["ba", "co", "lé", "mi", "nu", "ra", "to", "ve", "sa", "pi", "do", "fu"];
const SUFFIXES: [&str; 6] = ["ure", "eur", "ant", "age", "able", "ier"];

pub struct Corpus {
    pub lexicon: ReferenceLexicon,
    pub synonyms: Vec<SynonymResource>,
    pub graph: SynsetGraph,
    pub wordlist: BTreeSet<String>,
}

impl Corpus {
    pub fn inputs(&self) -> MergeInputs {
        MergeInputs {
            reference: self.lexicon.clone(),
            synonyms: self.synonyms.clone(),
            synsets: Some(("wn".into(), self.graph.clone())),
            wordlist: Some(("words".into(), self.wordlist.clone())),
            config: MergeConfig::default(),
        }
    }
}

fn word(rng: &mut ChaCha8Rng) -> String {
    (0..rng.random_range(2..=4)).map(|_| *SYLLABLES.choose(rng).unwrap()).collect()
}

pub fn corpus(lemmas: usize, seed: u64) -> Corpus {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let words: BTreeSet<String> = (0..lemmas).map(|_| word(&mut rng)).collect();
    let words: Vec<String> = words.into_iter().collect();

    let mut senses = Vec::new();
    for w in &words {
        let n = rng.random_range(1..=4u32);
        for id in 1..=n {
            let f = SemanticFeatures::new(&format!("D{}", rng.random_range(0..8)), &format!("C{}", rng.random_range(0..12)));
            let mut s = SenseEntry::new(w, "v", id, "sens", f);
            for suffix in SUFFIXES.choose_multiple(&mut rng, 2) {
                s.suffix_instructions.push(SuffixInstruction::new(suffix, rng.random_range(1..=n)));
            }
            let other = words.choose(&mut rng).unwrap();
            if other != w {
                s.example_deps.push(DependencyTriple::new("OBJ", w, other));
            }
            senses.push(s);
        }
    }
    let codes = |p: &'static str, n: usize| (0..n).map(move |i| format!("{p}{i}"));
    let domains: Vec<String> = codes("D", 8).collect();
    let classes: Vec<String> = codes("C", 12).collect();
    let inv = Inventories::new(
        domains.iter().map(String::as_str),
        classes.iter().map(String::as_str),
        ["OBJ"],
        SUFFIXES,
    );
    let lexicon = ReferenceLexicon::new(inv, senses).expect("synthetic lexicon is valid");

    let synonyms = (0..2)
        .map(|i| {
            let mut r = SynonymResource::new(&format!("dico{i}"));
            for w in &words {
                let props: Vec<&str> = words.choose_multiple(&mut rng, 4).map(String::as_str).collect();
                r.add(w, props);
            }
            r
        })
        .collect();

    let count = lemmas / 3 + 1;
    let synsets: Vec<Synset> = (0..count)
        .map(|i| {
            let members: Vec<&str> = words.choose_multiple(&mut rng, 3).map(String::as_str).collect();
            Synset::new(&format!("S{i}"), members)
        })
        .collect();
    let edges: Vec<Edge> = (1..count)
        .map(|i| Edge::new(&format!("S{i}"), TaxonomyRelation::Hypernym, &format!("S{}", rng.random_range(0..i))))
        .collect();
    let graph = SynsetGraph::new(synsets, edges).expect("synthetic graph is acyclic");

    let mut wordlist = BTreeSet::new();
    for w in &words {
        let chars: Vec<char> = w.chars().collect();
        for _ in 0..3 {
            let cut = rng.random_range(0..=2).min(chars.len() - 1);
            let stem: String = chars[..chars.len() - cut].iter().collect();
            wordlist.insert(format!("{stem}{}", SUFFIXES.choose(&mut rng).unwrap()));
        }
    }

    Corpus {
        lexicon,
        synonyms,
        graph,
        wordlist,
    }
}
