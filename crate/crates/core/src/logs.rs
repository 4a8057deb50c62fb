//! Flat decision logs written next to the merged lexicon.
//!
//! These keep only the sense number, not the part of speech; the merged file
//! is the lossless form.

use crate::merged::MergedLexicon;

fn lines(rows: impl Iterator<Item = String>) -> String {
    let mut out = String::new();
    for row in rows {
        out.push_str(&row);
        out.push('\n');
    }
    out
}

/// `lemma  sense_id  proposal  verdict  matched_senses  sources`
pub fn synonym_log(m: &MergedLexicon) -> String {
    lines(m.synonyms.iter().map(|d| {
        let matched = if d.matching_proposal_senses.is_empty() {
            "-".to_string()
        } else {
            d.matching_proposal_senses
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        let sources: Vec<&str> = d.sources.iter().map(String::as_str).collect();
        format!(
            "{}\t{}\t{}\t{}\t{matched}\t{}",
            d.target.lemma,
            d.target.sense_id,
            d.proposal,
            d.verdict,
            sources.join(",")
        )
    }))
}

/// `lemma  sense_id  surface  suffix  verdict`
pub fn derivative_log(m: &MergedLexicon) -> String {
    lines(m.derivatives.values().flatten().map(|d| {
        format!(
            "{}\t{}\t{}\t{}\t{}",
            d.target.lemma, d.target.sense_id, d.candidate.surface, d.candidate.suffix, d.verdict
        )
    }))
}

/// `lemma  sense_id  status  synset_id|-  overlap/synonym_count`
pub fn alignment_log(m: &MergedLexicon) -> String {
    lines(m.alignments.values().map(|a| {
        format!(
            "{}\t{}\t{}\t{}\t{}/{}",
            a.key.lemma,
            a.key.sense_id,
            a.status,
            a.synset.as_deref().unwrap_or("-"),
            a.overlap,
            a.synonym_count
        )
    }))
}

/// `lemma  kind  pattern  sense_id`
pub fn rule_file(m: &MergedLexicon) -> String {
    lines(m.rules.iter().map(|r| {
        format!(
            "{}\t{}\t{}\t{}",
            r.sense.lemma,
            r.kind(),
            r.pattern.render(r.target_lemma()),
            r.sense.sense_id
        )
    }))
}

/// File name and contents of every log, in a fixed order.
pub fn all_logs(m: &MergedLexicon) -> [(&'static str, String); 4] {
    [
        ("synonyms.log", synonym_log(m)),
        ("derivatives.log", derivative_log(m)),
        ("alignments.log", alignment_log(m)),
        ("rules.tsv", rule_file(m)),
    ]
}
