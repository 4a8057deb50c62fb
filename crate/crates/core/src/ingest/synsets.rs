//! Synset taxonomy (`.wn`).
//!
//! ```text
//! S <TAB> id <TAB> member, member, ...
//! E <TAB> from_id <TAB> relation <TAB> to_id
//! ```
//!
//! `E B hypernym A` reads "A is a hypernym of B". Inverse edges (hyponym for
//! hypernym, holonym for meronym) are materialized on load.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fmt::Write as _;
use std::io::BufRead;
use std::str::FromStr;

use super::{lift, read_lines, Diagnostic, Diagnostics, IngestError, Line, LineKind, Parsed};
use crate::error::{Error, Result};
use crate::lexicon::{lemma_problem, normalize_lemma, token_problem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TaxonomyRelation {
    Hypernym,
    Hyponym,
    Meronym,
    Holonym,
}

impl TaxonomyRelation {
    pub const ALL: [TaxonomyRelation; 4] = [Self::Hypernym, Self::Hyponym, Self::Meronym, Self::Holonym];

    pub fn inverse(self) -> Self {
        match self {
            Self::Hypernym => Self::Hyponym,
            Self::Hyponym => Self::Hypernym,
            Self::Meronym => Self::Holonym,
            Self::Holonym => Self::Meronym,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Hypernym => "hypernym",
            Self::Hyponym => "hyponym",
            Self::Meronym => "meronym",
            Self::Holonym => "holonym",
        }
    }
}

impl fmt::Display for TaxonomyRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TaxonomyRelation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|r| r.as_str() == s.trim().to_lowercase())
            .ok_or_else(|| format!("unknown taxonomy relation `{}`", s.trim()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Synset {
    pub id: String,
    pub members: BTreeSet<String>,
}

impl Synset {
    pub fn new<'a>(id: &str, members: impl IntoIterator<Item = &'a str>) -> Self {
        Self {
            id: id.trim().to_string(),
            members: members.into_iter().map(normalize_lemma).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Edge {
    pub from: String,
    pub relation: TaxonomyRelation,
    pub to: String,
}

impl Edge {
    pub fn new(from: &str, relation: TaxonomyRelation, to: &str) -> Self {
        Self {
            from: from.to_string(),
            relation,
            to: to.to_string(),
        }
    }

    fn inverse(&self) -> Self {
        Edge::new(&self.to, self.relation.inverse(), &self.from)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SynsetGraph {
    synsets: BTreeMap<String, Synset>,
    edges: BTreeSet<Edge>,
    by_member: BTreeMap<String, BTreeSet<String>>,
}

impl SynsetGraph {
    /// Builds the graph, materializing inverse edges. Fails on duplicate ids,
    /// empty synsets, dangling endpoints or a hypernym cycle.
    pub fn new(synsets: impl IntoIterator<Item = Synset>, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let synsets: Vec<Synset> = synsets.into_iter().collect();
        let edges: Vec<Edge> = edges.into_iter().collect();
        let mut ids = BTreeSet::new();
        for synset in &synsets {
            if synset.members.is_empty() {
                return Err(Error::InvalidGraph(format!("synset `{}` has no members", synset.id)));
            }
            if !ids.insert(synset.id.as_str()) {
                return Err(Error::InvalidGraph(format!("duplicate synset id `{}`", synset.id)));
            }
        }
        for edge in &edges {
            for end in [&edge.from, &edge.to] {
                if !ids.contains(end.as_str()) {
                    return Err(Error::InvalidGraph(format!("edge endpoint `{end}` is not a declared synset")));
                }
            }
        }
        let graph = Self::assemble(synsets, edges);
        if let Some(cycle) = graph.hypernym_cycle() {
            return Err(Error::InvalidGraph(format!("hypernym cycle through {}", cycle.join(" -> "))));
        }
        Ok(graph)
    }

    fn assemble(synsets: impl IntoIterator<Item = Synset>, edges: impl IntoIterator<Item = Edge>) -> Self {
        let mut graph = SynsetGraph::default();
        for synset in synsets {
            for m in &synset.members {
                graph
                    .by_member
                    .entry(m.clone())
                    .or_default()
                    .insert(synset.id.clone());
            }
            graph.synsets.insert(synset.id.clone(), synset);
        }
        for edge in edges {
            graph.edges.insert(edge.inverse());
            graph.edges.insert(edge);
        }
        graph
    }

    pub fn synset(&self, id: &str) -> Option<&Synset> {
        self.synsets.get(id)
    }

    pub fn synsets(&self) -> impl Iterator<Item = &Synset> {
        self.synsets.values()
    }

    /// All edges, inverses included, in sorted order.
    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter()
    }

    /// Ids of the synsets that list `lemma` as a member.
    pub fn synsets_containing(&self, lemma: &str) -> impl Iterator<Item = &Synset> {
        self.by_member
            .get(lemma)
            .into_iter()
            .flatten()
            .map(|id| &self.synsets[id])
    }

    /// Direct neighbours of `id` along `relation`.
    pub fn neighbors<'a>(&'a self, id: &str, relation: TaxonomyRelation) -> impl Iterator<Item = &'a str> + 'a {
        let start = Edge::new(id, relation, "");
        let id = id.to_string();
        self.edges
            .range(start..)
            .take_while(move |e| e.from == id && e.relation == relation)
            .map(|e| e.to.as_str())
    }

    pub fn is_empty(&self) -> bool {
        self.synsets.is_empty()
    }

    pub fn len(&self) -> usize {
        self.synsets.len()
    }

    fn hypernym_cycle(&self) -> Option<Vec<String>> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            Open,
            Done,
        }
        let mut marks: BTreeMap<&str, Mark> = BTreeMap::new();
        for root in self.synsets.keys() {
            if marks.contains_key(root.as_str()) {
                continue;
            }
            // Iterative DFS: stack[i] holds the unvisited hypernyms of path[i].
            let mut path: Vec<&str> = vec![root];
            let mut stack: Vec<Vec<&str>> = vec![self.neighbors(root, TaxonomyRelation::Hypernym).collect()];
            marks.insert(root, Mark::Open);
            while let Some(children) = stack.last_mut() {
                match children.pop() {
                    Some(next) => match marks.get(next) {
                        Some(Mark::Open) => {
                            let at = path.iter().position(|n| *n == next).unwrap_or(0);
                            return Some(path[at..].iter().map(|s| s.to_string()).collect());
                        }
                        Some(Mark::Done) => {}
                        None => {
                            marks.insert(next, Mark::Open);
                            path.push(next);
                            stack.push(self.neighbors(next, TaxonomyRelation::Hypernym).collect());
                        }
                    },
                    None => {
                        if let Some(done) = path.pop() {
                            marks.insert(done, Mark::Done);
                        }
                        stack.pop();
                    }
                }
            }
        }
        None
    }
}

pub fn parse_synset_resource<R: BufRead>(reader: R) -> std::result::Result<Parsed<SynsetGraph>, IngestError> {
    lift(parse_synset_lines(&read_lines(reader)?))
}

pub(crate) fn parse_synset_lines(lines: &[Line]) -> std::result::Result<Parsed<SynsetGraph>, Vec<Diagnostic>> {
    let mut diags = Diagnostics::default();
    let mut synsets: BTreeMap<String, (usize, Synset)> = BTreeMap::new();
    let mut edges: Vec<(usize, Edge)> = Vec::new();

    for line in lines {
        let Some(kind) = line.kind() else {
            diags.invalid_utf8(line.no);
            continue;
        };
        let text = match kind {
            LineKind::Blank | LineKind::Comment => continue,
            LineKind::Header(_) => {
                diags.error(line.no, "synset files take no header declarations");
                continue;
            }
            LineKind::Record(text) => text,
        };
        let fields: Vec<&str> = text.split('\t').map(str::trim).collect();
        match fields.as_slice() {
            ["S", id, members] => {
                if let Some(why) = token_problem(id) {
                    diags.error(line.no, format!("synset id `{id}`: {why}"));
                    continue;
                }
                let members: Vec<String> = members.split(',').map(normalize_lemma).collect();
                if let Some((m, why)) = members.iter().find_map(|m| lemma_problem(m).map(|w| (m, w))) {
                    diags.error(line.no, format!("synset `{id}` member `{m}`: {why}"));
                    continue;
                }
                let synset = Synset::new(id, members.iter().map(String::as_str));
                if let Some((first, _)) = synsets.get(*id) {
                    diags.error(line.no, format!("duplicate synset id `{id}` (first defined at line {first})"));
                } else {
                    synsets.insert(id.to_string(), (line.no, synset));
                }
            }
            ["E", from, relation, to] => match relation.parse::<TaxonomyRelation>() {
                Ok(rel) => edges.push((line.no, Edge::new(from, rel, to))),
                Err(e) => diags.error(line.no, e),
            },
            [tag, ..] if *tag == "S" || *tag == "E" => {
                diags.error(line.no, format!("`{tag}` record has {} fields", fields.len()));
            }
            [tag, ..] => diags.error(line.no, format!("unknown record tag `{tag}`, expected S or E")),
            [] => {}
        }
    }

    let mut valid_edges = Vec::new();
    for (no, edge) in edges {
        let mut ok = true;
        for end in [&edge.from, &edge.to] {
            if !synsets.contains_key(end) {
                diags.error(no, format!("edge endpoint `{end}` is not a declared synset"));
                ok = false;
            }
        }
        if ok {
            valid_edges.push((no, edge));
        }
    }

    let graph = SynsetGraph::assemble(
        synsets.into_values().map(|(_, s)| s),
        valid_edges.iter().map(|(_, e)| e.clone()),
    );
    if let Some(cycle) = graph.hypernym_cycle() {
        let on_cycle = |id: &String| cycle.contains(id);
        let no = valid_edges
            .iter()
            .find(|(_, e)| {
                matches!(e.relation, TaxonomyRelation::Hypernym | TaxonomyRelation::Hyponym)
                    && on_cycle(&e.from)
                    && on_cycle(&e.to)
            })
            .map_or(1, |(no, _)| *no);
        diags.error(no, format!("hypernym cycle through {}", cycle.join(" -> ")));
    }
    diags.finish(|| graph)
}

/// Writes a graph back in `.wn` form. Only hypernym and meronym edges are
/// written; their inverses are implied.
pub fn serialize_synsets(graph: &SynsetGraph) -> String {
    let mut out = String::new();
    for s in graph.synsets() {
        let members: Vec<&str> = s.members.iter().map(String::as_str).collect();
        let _ = writeln!(out, "S\t{}\t{}", s.id, members.join(","));
    }
    for e in graph
        .edges()
        .filter(|e| matches!(e.relation, TaxonomyRelation::Hypernym | TaxonomyRelation::Meronym))
    {
        let _ = writeln!(out, "E\t{}\t{}\t{}", e.from, e.relation, e.to);
    }
    out
}
