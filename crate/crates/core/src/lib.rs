//! Sense-indexed merging of lexical resources.
//!
//! A reference lexicon whose entries are split into numbered senses is
//! combined with synonym dictionaries, a derivational wordlist and a synset
//! taxonomy. Every synonym, derivative and taxonomy neighbor that survives the
//! merge is attached to exactly one sense, so that enrichment of an utterance
//! can be restricted to the sense the disambiguation rules pick.

pub mod derivation;
pub mod enrichment;
pub mod error;
pub mod ingest;
pub mod lexicon;
pub mod logs;
pub mod merged;
pub mod report;
pub mod rules;
pub mod synonym;
pub mod taxonomy;

pub use derivation::{DerivationConfig, DerivativeCandidate, DerivativeDecision, DerivativeVerdict};
pub use enrichment::{
    disambiguate, enrich, enrich_sense, enrich_utterance, format_enrichment, EnrichOptions, EnrichmentSet,
    Resolution, Utterance,
};
pub use error::{Error, Result};
pub use lexicon::{
    ArgPosition, DependencyTriple, Inventories, ReferenceLexicon, SemanticFeatures, SenseEntry, SenseKey,
    SuffixInstruction,
};
pub use merged::{merge, parse_merged, MergeConfig, MergeInputs, MergedLexicon, Provenance};
pub use report::MergeReport;
pub use rules::{DisambiguationRule, RuleKind, RulePattern};
pub use synonym::{SynonymDecision, SynonymMerge, SynonymVerdict};
pub use taxonomy::{AlignmentResult, AlignmentStatus};
