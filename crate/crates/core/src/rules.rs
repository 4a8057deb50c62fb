//! Disambiguation rules drawn from the reference lexicon.
//!
//! Three kinds are produced, from most to least specific:
//! lexical rules (an example dependency, verbatim), generalized rules (the same
//! dependency with the other argument replaced by one of its semantic classes)
//! and syntactic rules (a subcategorization frame owned by a single sense).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::lexicon::{
    fold_code, fold_token, normalize_lemma, split_dependency, ArgPosition, DependencyTriple, ReferenceLexicon,
    SenseEntry, SenseKey,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleKind {
    Lexical,
    Generalized,
    Syntactic,
}

impl RuleKind {
    pub const ALL: [RuleKind; 3] = [Self::Lexical, Self::Generalized, Self::Syntactic];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Lexical => "lexical",
            Self::Generalized => "generalized",
            Self::Syntactic => "syntactic",
        }
    }
}

impl fmt::Display for RuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RuleKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown rule kind `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RulePattern {
    Lexical(DependencyTriple),
    /// `relation` holding between the target lemma (at `target`) and any word
    /// with a sense in `class`.
    Generalized {
        relation: String,
        target: ArgPosition,
        class: String,
    },
    Syntactic(String),
}

impl RulePattern {
    pub fn kind(&self) -> RuleKind {
        match self {
            Self::Lexical(_) => RuleKind::Lexical,
            Self::Generalized { .. } => RuleKind::Generalized,
            Self::Syntactic(_) => RuleKind::Syntactic,
        }
    }

    /// Renders the pattern as it appears in rule files.
    pub fn render(&self, lemma: &str) -> String {
        match self {
            Self::Lexical(dep) => dep.to_string(),
            Self::Generalized {
                relation,
                target: ArgPosition::Head,
                class,
            } => format!("{relation}({lemma},class:{class})"),
            Self::Generalized {
                relation,
                target: ArgPosition::Dependent,
                class,
            } => format!("{relation}(class:{class},{lemma})"),
            Self::Syntactic(frame) => format!("subcat:{frame}"),
        }
    }

    /// Reads a rendered pattern back. `lemma` is the rule's target lemma.
    pub fn parse(kind: RuleKind, text: &str, lemma: &str) -> Result<Self, String> {
        match kind {
            RuleKind::Lexical => text.parse().map(Self::Lexical),
            RuleKind::Syntactic => text
                .trim()
                .strip_prefix("subcat:")
                .map(|f| Self::Syntactic(fold_token(f)))
                .ok_or_else(|| format!("syntactic pattern `{text}` must start with `subcat:`")),
            RuleKind::Generalized => {
                let (relation, a, b) = split_dependency(text)?;
                let (a, b) = (a.trim(), b.trim());
                let (target, class, other) = match (a.strip_prefix("class:"), b.strip_prefix("class:")) {
                    (None, Some(class)) => (ArgPosition::Head, class, a),
                    (Some(class), None) => (ArgPosition::Dependent, class, b),
                    _ => return Err(format!("generalized pattern `{text}` needs exactly one class slot")),
                };
                if normalize_lemma(other) != lemma {
                    return Err(format!("generalized pattern `{text}` does not mention `{lemma}`"));
                }
                Ok(Self::Generalized {
                    relation: fold_code(relation),
                    target,
                    class: fold_code(class),
                })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DisambiguationRule {
    pub sense: SenseKey,
    pub pattern: RulePattern,
    /// For generalized rules, the lexical pattern they were generalized from.
    pub derived_from: Option<DependencyTriple>,
}

impl DisambiguationRule {
    pub fn target_lemma(&self) -> &str {
        &self.sense.lemma
    }

    pub fn kind(&self) -> RuleKind {
        self.pattern.kind()
    }
}

impl fmt::Display for DisambiguationRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} => sense {}",
            self.sense.lemma,
            self.pattern.render(&self.sense.lemma),
            self.sense.sense_id
        )
    }
}

/// Rules plus the diagnostics raised while extracting them.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Extraction {
    pub rules: Vec<DisambiguationRule>,
    pub diagnostics: Vec<String>,
}

/// One lexical rule per example dependency mentioning the entry's lemma once.
pub fn extract_lexical_rules(entry: &SenseEntry) -> Extraction {
    let mut out = Extraction::default();
    for dep in &entry.example_deps {
        match dep.mentions(&entry.lemma) {
            1 => out.rules.push(DisambiguationRule {
                sense: entry.key(),
                pattern: RulePattern::Lexical(dep.clone()),
                derived_from: None,
            }),
            0 => out
                .diagnostics
                .push(format!("{}: example `{dep}` does not mention the lemma; skipped", entry.key())),
            _ => out
                .diagnostics
                .push(format!("{}: example `{dep}` mentions the lemma twice; skipped", entry.key())),
        }
    }
    out
}

/// Replaces the non-target argument of each lexical rule by each distinct
/// class among that argument's senses.
pub fn generalize_rules(rules: &[DisambiguationRule], lexicon: &ReferenceLexicon) -> Vec<DisambiguationRule> {
    let mut out = BTreeSet::new();
    for rule in rules {
        let RulePattern::Lexical(dep) = &rule.pattern else {
            continue;
        };
        let Some((target, other)) = dep.other_argument(rule.target_lemma()) else {
            continue;
        };
        let classes: BTreeSet<&str> = lexicon
            .lookup(other)
            .iter()
            .map(|s| s.features.class.as_str())
            .collect();
        for class in classes {
            out.insert(DisambiguationRule {
                sense: rule.sense.clone(),
                pattern: RulePattern::Generalized {
                    relation: dep.relation.clone(),
                    target,
                    class: class.to_string(),
                },
                derived_from: Some(dep.clone()),
            });
        }
    }
    // One rule per (sense, pattern); keep the smallest source dependency.
    let mut unique: BTreeMap<(SenseKey, RulePattern), DisambiguationRule> = BTreeMap::new();
    for r in out {
        unique.entry((r.sense.clone(), r.pattern.clone())).or_insert(r);
    }
    unique.into_values().collect()
}

/// One rule per frame of `entry` that no sibling sense shares.
pub fn extract_syntactic_rules(entry: &SenseEntry, siblings: &[SenseEntry]) -> Vec<DisambiguationRule> {
    let key = entry.key();
    entry
        .subcat_frames
        .iter()
        .filter(|frame| {
            !siblings
                .iter()
                .any(|s| s.key() != key && s.subcat_frames.contains(frame))
        })
        .map(|frame| DisambiguationRule {
            sense: key.clone(),
            pattern: RulePattern::Syntactic(frame.clone()),
            derived_from: None,
        })
        .collect()
}

/// Extracts every rule of the lexicon. Identical lexical patterns claimed by
/// two senses of one lemma contradict each other and are dropped.
pub fn extract_rules(lexicon: &ReferenceLexicon) -> Extraction {
    let mut out = Extraction::default();
    for lemma in lexicon.lemmas() {
        let senses = lexicon.lookup(lemma);
        let mut lexical: BTreeMap<DependencyTriple, BTreeSet<SenseKey>> = BTreeMap::new();
        for sense in senses {
            let ex = extract_lexical_rules(sense);
            out.diagnostics.extend(ex.diagnostics);
            for rule in ex.rules {
                if let RulePattern::Lexical(dep) = rule.pattern {
                    lexical.entry(dep).or_default().insert(rule.sense);
                }
            }
        }
        let mut kept = Vec::new();
        for (dep, claimants) in lexical {
            if claimants.len() > 1 {
                let who: Vec<String> = claimants.iter().map(ToString::to_string).collect();
                out.diagnostics
                    .push(format!("`{dep}` is claimed by {}; contradictory rule dropped", who.join(", ")));
                continue;
            }
            let sense = claimants.into_iter().next().expect("non-empty claimant set");
            kept.push(DisambiguationRule {
                sense,
                pattern: RulePattern::Lexical(dep),
                derived_from: None,
            });
        }
        let generalized = generalize_rules(&kept, lexicon);
        out.rules.extend(kept);
        out.rules.extend(generalized);
        for sense in senses {
            out.rules.extend(extract_syntactic_rules(sense, senses));
        }
    }
    out.rules.sort_by(|a, b| rule_order(a).cmp(&rule_order(b)));
    out
}

/// File order: lemma, part of speech, sense, kind, rendered pattern.
pub fn rule_order(rule: &DisambiguationRule) -> (&SenseKey, RuleKind, String) {
    (&rule.sense, rule.kind(), rule.pattern.render(rule.target_lemma()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::{Inventories, SemanticFeatures};

    fn remporter() -> ReferenceLexicon {
        let f = SemanticFeatures::new;
        let mut s1 = SenseEntry::new("remporter", "v", 1, "reprendre", f("LOC", "M1"));
        s1.example_deps = vec![DependencyTriple::new("VARG[DIR]", "remporter", "livre")];
        s1.subcat_frames = vec!["transitive".into()];
        let mut s2 = SenseEntry::new("remporter", "v", 2, "gagner", f("SOC", "S4"));
        s2.example_deps = vec![
            DependencyTriple::new("VARG[DIR]", "remporter", "victoire"),
            DependencyTriple::new("VARG[DIR]", "gagner", "victoire"),
        ];
        s2.subcat_frames = vec!["transitive".into(), "reflexive".into()];
        ReferenceLexicon::new(
            Inventories::new(["LOC", "SOC", "PSY"], ["M1", "S4", "P2"], ["VARG[DIR]"], []),
            [
                s1,
                s2,
                SenseEntry::new("victoire", "n", 1, "succès", f("SOC", "S4")),
                SenseEntry::new("livre", "n", 1, "ouvrage", f("PSY", "P2")),
                SenseEntry::new("livre", "n", 2, "poids", f("LOC", "M1")),
            ],
        )
        .unwrap()
    }

    #[test]
    fn lexical_rule_from_example() {
        let lex = remporter();
        let ex = extract_lexical_rules(&lex.lookup("remporter")[1]);
        assert_eq!(ex.rules.len(), 1);
        assert_eq!(
            ex.rules[0].to_string(),
            "remporter: VARG[DIR](remporter,victoire) => sense 2"
        );
        assert_eq!(ex.diagnostics.len(), 1);
        assert!(extract_lexical_rules(&lex.lookup("victoire")[0]).rules.is_empty());
    }

    #[test]
    fn generalization_per_distinct_class() {
        let lex = remporter();
        let lexical = extract_lexical_rules(&lex.lookup("remporter")[1]).rules;
        let g = generalize_rules(&lexical, &lex);
        assert_eq!(g.len(), 1);
        assert_eq!(g[0].pattern.render("remporter"), "VARG[DIR](remporter,class:S4)");
        assert_eq!(g[0].sense.sense_id, 2);

        let lexical = extract_lexical_rules(&lex.lookup("remporter")[0]).rules;
        let g = generalize_rules(&lexical, &lex);
        let classes: Vec<String> = g.iter().map(|r| r.pattern.render("remporter")).collect();
        assert_eq!(classes, vec!["VARG[DIR](remporter,class:M1)", "VARG[DIR](remporter,class:P2)"]);
    }

    #[test]
    fn unknown_argument_yields_nothing() {
        let lex = remporter();
        let rule = DisambiguationRule {
            sense: SenseKey::new("remporter", "v", 2),
            pattern: RulePattern::Lexical(DependencyTriple::new("VARG[DIR]", "remporter", "match")),
            derived_from: None,
        };
        assert!(generalize_rules(&[rule], &lex).is_empty());
    }

    #[test]
    fn only_differential_frames() {
        let lex = remporter();
        let senses = lex.lookup("remporter");
        assert!(extract_syntactic_rules(&senses[0], senses).is_empty());
        let r = extract_syntactic_rules(&senses[1], senses);
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].pattern, RulePattern::Syntactic("reflexive".into()));
        assert!(extract_syntactic_rules(&lex.lookup("victoire")[0], lex.lookup("victoire")).is_empty());
    }

    #[test]
    fn contradictory_lexical_rules_are_dropped() {
        let f = SemanticFeatures::new;
        let dep = DependencyTriple::new("R", "a", "b");
        let mut s1 = SenseEntry::new("a", "v", 1, "x", f("D", "C"));
        s1.example_deps = vec![dep.clone()];
        let mut s2 = SenseEntry::new("a", "v", 2, "y", f("D", "C"));
        s2.example_deps = vec![dep];
        let lex = ReferenceLexicon::new(Inventories::new(["D"], ["C"], ["R"], []), [s1, s2]).unwrap();
        let ex = extract_rules(&lex);
        assert!(ex.rules.is_empty());
        assert!(ex.diagnostics[0].contains("contradictory"));
    }

    #[test]
    fn patterns_parse_back() {
        let lex = remporter();
        for rule in extract_rules(&lex).rules {
            let text = rule.pattern.render(rule.target_lemma());
            assert_eq!(RulePattern::parse(rule.kind(), &text, rule.target_lemma()).unwrap(), rule.pattern);
        }
        assert_eq!(
            RulePattern::parse(RuleKind::Generalized, "R(class:S4,w)", "w").unwrap(),
            RulePattern::Generalized {
                relation: "R".into(),
                target: ArgPosition::Dependent,
                class: "S4".into()
            }
        );
        assert!(RulePattern::parse(RuleKind::Generalized, "R(class:S4,class:P2)", "w").is_err());
    }
}
