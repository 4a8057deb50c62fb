use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown sense {lemma}/{sense_id}")]
    UnknownSense { lemma: String, sense_id: u32 },

    #[error("sense {lemma}/{sense_id} exists under several parts of speech ({})", .pos.join(", "))]
    AmbiguousSense {
        lemma: String,
        sense_id: u32,
        pos: Vec<String>,
    },

    #[error("unknown synset `{0}`")]
    UnknownSynset(String),

    #[error("lemma `{0}` does not occur in the utterance")]
    LemmaNotInUtterance(String),

    #[error("invalid lexicon:\n{}", .0.join("\n"))]
    InvalidLexicon(Vec<String>),

    #[error("invalid synset graph: {0}")]
    InvalidGraph(String),

    #[error("invalid utterance: {0}")]
    InvalidUtterance(String),

    #[error("resource name `{0}` is used by more than one input")]
    DuplicateSource(String),
}
