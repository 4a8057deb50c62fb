//! Counters summarizing a merge.

use std::collections::BTreeMap;
use std::fmt;

use crate::derivation::DerivativeVerdict;
use crate::merged::MergedLexicon;
use crate::rules::RuleKind;
use crate::synonym::SynonymVerdict;
use crate::taxonomy::AlignmentStatus;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MergeReport {
    pub senses: usize,
    pub synonyms_seen: usize,
    pub synonyms: BTreeMap<SynonymVerdict, usize>,
    pub derivatives_seen: usize,
    pub derivatives: BTreeMap<DerivativeVerdict, usize>,
    /// rejected-no-instruction counts per part of speech.
    pub missing_instructions: BTreeMap<String, usize>,
    pub rules: BTreeMap<RuleKind, usize>,
    pub alignments: BTreeMap<AlignmentStatus, usize>,
    pub skipped: Vec<(String, String)>,
    pub diagnostics: Vec<String>,
}

impl MergeReport {
    pub fn from_merged(m: &MergedLexicon) -> Self {
        let mut r = MergeReport {
            senses: m.reference.sense_count(),
            synonyms: SynonymVerdict::ALL.into_iter().map(|v| (v, 0)).collect(),
            derivatives: DerivativeVerdict::ALL.into_iter().map(|v| (v, 0)).collect(),
            rules: RuleKind::ALL.into_iter().map(|k| (k, 0)).collect(),
            alignments: AlignmentStatus::ALL.into_iter().map(|s| (s, 0)).collect(),
            skipped: m.synonyms.skipped.iter().cloned().collect(),
            diagnostics: m.diagnostics.clone(),
            ..Default::default()
        };
        for d in m.synonyms.iter() {
            r.synonyms_seen += 1;
            *r.synonyms.entry(d.verdict).or_default() += 1;
        }
        for d in m.derivatives.values().flatten() {
            r.derivatives_seen += 1;
            *r.derivatives.entry(d.verdict).or_default() += 1;
            if d.verdict == DerivativeVerdict::RejectedNoInstruction {
                *r.missing_instructions.entry(d.target.pos.clone()).or_default() += 1;
            }
        }
        for rule in &m.rules {
            *r.rules.entry(rule.kind()).or_default() += 1;
        }
        for a in m.alignments.values() {
            *r.alignments.entry(a.status).or_default() += 1;
        }
        r
    }

    /// Every per-verdict breakdown sums to its total.
    pub fn is_consistent(&self) -> bool {
        self.synonyms.values().sum::<usize>() == self.synonyms_seen
            && self.derivatives.values().sum::<usize>() == self.derivatives_seen
            && self.alignments.values().sum::<usize>() == self.senses
            && self.missing_instructions.values().sum::<usize>()
                == self.derivatives[&DerivativeVerdict::RejectedNoInstruction]
    }

    /// Share of derivative candidates that were screened out.
    pub fn screened_ratio(&self) -> Option<f64> {
        let rejected = self.derivatives_seen - self.derivatives[&DerivativeVerdict::Kept];
        (self.derivatives_seen > 0).then(|| rejected as f64 / self.derivatives_seen as f64)
    }
}

impl fmt::Display for MergeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "senses: {}", self.senses)?;
        writeln!(f, "synonym proposals: {}", self.synonyms_seen)?;
        for (v, n) in &self.synonyms {
            writeln!(f, "  {v}: {n}")?;
        }
        writeln!(f, "derivative candidates: {}", self.derivatives_seen)?;
        for (v, n) in &self.derivatives {
            writeln!(f, "  {v}: {n}")?;
        }
        for (pos, n) in &self.missing_instructions {
            writeln!(f, "  rejected-no-instruction[{pos}]: {n}")?;
        }
        if let Some(ratio) = self.screened_ratio() {
            writeln!(f, "  screened: {:.1}%", ratio * 100.0)?;
        }
        writeln!(f, "rules: {}", self.rules.values().sum::<usize>())?;
        for (k, n) in &self.rules {
            writeln!(f, "  {k}: {n}")?;
        }
        writeln!(f, "alignments:")?;
        for (s, n) in &self.alignments {
            writeln!(f, "  {s}: {n}")?;
        }
        writeln!(f, "skipped lemmas: {}", self.skipped.len())?;
        for (resource, lemma) in &self.skipped {
            writeln!(f, "  {resource}: {lemma}")?;
        }
        writeln!(f, "diagnostics: {}", self.diagnostics.len())?;
        for d in &self.diagnostics {
            writeln!(f, "  {d}")?;
        }
        Ok(())
    }
}
