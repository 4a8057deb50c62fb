mod common;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use senselex::ingest::parse_utterances;
use senselex::{enrich_utterance, format_enrichment, parse_merged, EnrichOptions};

use common::fixtures;

fn senselex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_senselex")).args(args).output().unwrap()
}

fn fx(name: &str) -> String {
    fixtures().join(name).to_string_lossy().into_owned()
}

fn merge_into(dir: &Path, extra: &[&str]) -> (Output, PathBuf) {
    let out = dir.join("figures.merged");
    let mut args = vec![
        "merge".to_string(),
        "--reference".into(),
        fx("reference.lex"),
        "--synonyms".into(),
        fx("bailly.syn"),
        "--synonyms".into(),
        fx("memodata.syn"),
        "--wordlist".into(),
        fx("words.txt"),
        "--output".into(),
        out.to_string_lossy().into_owned(),
    ];
    args.extend(extra.iter().map(|s| s.to_string()));
    let argv: Vec<&str> = args.iter().map(String::as_str).collect();
    (senselex(&argv), out)
}

fn full_merge(dir: &Path) -> PathBuf {
    let wn = fx("ewn.wn");
    let (o, path) = merge_into(dir, &["--synsets", &wn]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    path
}

/// Records of one sense, by section.
fn sense_lines(merged: &str, lemma: &str, pos: &str, id: u32) -> BTreeMap<String, Vec<String>> {
    let prefix = format!("{lemma}\t{pos}\t{id}\t");
    let mut section = String::new();
    let mut out: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for line in merged.lines() {
        if let Some(name) = line.strip_prefix('@') {
            section = name.to_string();
        } else if line.starts_with(&prefix) && section != "reference" {
            out.entry(section.clone()).or_default().push(line[prefix.len()..].to_string());
        }
    }
    out
}

fn expect(pairs: &[(&str, &[&str])]) -> BTreeMap<String, Vec<String>> {
    pairs
        .iter()
        .map(|(s, lines)| (s.to_string(), lines.iter().map(|l| l.to_string()).collect()))
        .collect()
}

#[test]
fn golden_records_for_the_three_figures() {
    let dir = tempfile::tempdir().unwrap();
    let text = fs::read_to_string(full_merge(dir.path())).unwrap();

    // charmer is (PSY, P2) and voler/2 is (SOC, S4), like ravir/2.
    let ravir = expect(&[
        (
            "synonyms",
            &[
                "charmer\trejected\t-\tbailly,ewn",
                "dérober\taccepted\t2,4\tewn",
                "enchanter\trejected\t-\tewn",
                "enlever\taccepted-multiword\t-\tmemodata",
                "mettre la main sur\taccepted-multiword\t-\tbailly",
                "voler\taccepted\t2\tbailly,ewn,memodata",
            ],
        ),
        ("alignments", &["matched\tS1\t2/2"]),
        ("rules", &["syntactic\tsubcat:reflexive\t-"]),
    ]);
    assert_eq!(sense_lines(&text, "ravir", "v", 2), ravir);

    // Instructions of sense 1: ure, eur, ant for itself, age for sense 5.
    let couper = expect(&[
        (
            "synonyms",
            &[
                "interrompre\taccepted-multiword\t-\tmemodata",
                "sectionner\taccepted-multiword\t-\tbailly",
                "trancher\taccepted\t1\tbailly,ewn",
            ],
        ),
        (
            "derivatives",
            &[
                "coupable\tcoup\table\trejected-no-instruction",
                "coupage\tcoup\tage\trejected-other-sense",
                "coupant\tcoup\tant\tkept",
                "coupeur\tcoup\teur\tkept",
                "coupure\tcoup\ture\tkept",
            ],
        ),
        ("alignments", &["matched\tS6\t1/1"]),
        (
            "rules",
            &[
                "lexical\tVARG[DIR](couper,pain)\t-",
                "generalized\tVARG[DIR](couper,class:M1)\tVARG[DIR](couper,pain)",
                "syntactic\tsubcat:transitive\t-",
            ],
        ),
    ]);
    assert_eq!(sense_lines(&text, "couper", "v", 1), couper);

    let remporter = expect(&[
        (
            "synonyms",
            &["emporter\taccepted-multiword\t-\tbailly", "gagner\taccepted\t1\tbailly,ewn"],
        ),
        ("alignments", &["matched\tS4\t1/1"]),
        (
            "rules",
            &[
                "lexical\tVARG[DIR](remporter,victoire)\t-",
                "generalized\tVARG[DIR](remporter,class:S4)\tVARG[DIR](remporter,victoire)",
            ],
        ),
    ]);
    assert_eq!(sense_lines(&text, "remporter", "v", 2), remporter);

    assert_eq!(text, fs::read_to_string(fixtures().join("expected.merged")).unwrap());
}

#[test]
fn enrichment_matches_golden_and_in_memory_result() {
    let dir = tempfile::tempdir().unwrap();
    let merged = full_merge(dir.path());
    let o = senselex(&["enrich", "--merged", merged.to_str().unwrap(), "--utterances", &fx("utterances.utt")]);
    assert!(o.status.success());
    let stdout = String::from_utf8(o.stdout).unwrap();
    assert_eq!(stdout, fs::read_to_string(fixtures().join("expected_enrich.tsv")).unwrap());

    // Reloading the file gives the same enrichment as the merge in memory.
    let m = parse_merged(fs::read(&merged).unwrap().as_slice()).unwrap().value;
    let utterances = parse_utterances(fs::read(fx("utterances.utt")).unwrap().as_slice()).unwrap().value;
    let mut expected = String::new();
    for (i, u) in utterances.iter().enumerate() {
        for set in enrich_utterance(&m, u, &EnrichOptions::default()) {
            expected.push_str(&format_enrichment(i + 1, &set));
            expected.push('\n');
        }
    }
    assert_eq!(stdout, expected);
}

#[test]
fn enrichment_options() {
    let dir = tempfile::tempdir().unwrap();
    let merged = full_merge(dir.path());
    let m = merged.to_str().unwrap();
    let utt = fx("utterances.utt");
    let o = senselex(&["enrich", "--merged", m, "--utterances", &utt, "--include-multiword", "false"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(!text.contains("accepted-multiword"));
    assert!(text.contains("voler[bailly+ewn+memodata:accepted]"));

    let o = senselex(&["enrich", "--merged", m, "--utterances", &utt, "--relations", "hyponym"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("émincer[ewn:hyponym@S6]"));
    assert!(!text.contains("hypernym@"));

    let o = senselex(&["enrich", "--merged", m, "--utterances", &utt, "--relations", "sibling"]);
    assert!(!o.status.success());
}

#[test]
fn missing_synsets_give_no_synset_and_a_warning() {
    let dir = tempfile::tempdir().unwrap();
    let (o, merged) = merge_into(dir.path(), &[]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("no synset resource"));
    let text = fs::read_to_string(&merged).unwrap();
    let report = fs::read_to_string(dir.path().join("figures.report.txt")).unwrap();
    assert!(report.contains("no synset resource given"));
    assert!(report.contains("matched: 0"));
    let alignments = fs::read_to_string(dir.path().join("figures.alignments.log")).unwrap();
    assert!(!alignments.is_empty());
    assert!(alignments.lines().all(|l| l.contains("\tno-synset\t-\t")));
    assert!(text.contains("@alignments\n"));
}

#[test]
fn invalid_reference_fails_without_output() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.lex");
    let text = fs::read_to_string(fx("reference.lex"))
        .unwrap()
        .replace("ravir\tv\t2\tvoler\tSOC\tS4", "ravir\tv\t2\tvoler\tSOC\tZ9");
    fs::write(&bad, text).unwrap();
    let out = dir.path().join("out.merged");
    let o = senselex(&["merge", "--reference", bad.to_str().unwrap(), "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!out.exists());
    let diags = fs::read_to_string(dir.path().join("out.merged.diagnostics")).unwrap();
    assert!(diags.contains("bad.lex:line 18: error: unknown class code `Z9`"), "{diags}");
}

#[test]
fn io_failures_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.merged");
    let o = senselex(&[
        "merge",
        "--reference",
        &fx("reference.lex"),
        "--synsets",
        "/nonexistent/x.wn",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!out.exists());
    assert_eq!(senselex(&["report", "--merged", "/nonexistent.merged"]).status.code(), Some(2));
}

#[test]
fn duplicate_source_names_are_a_validation_failure() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.merged");
    let o = senselex(&[
        "merge",
        "--reference",
        &fx("reference.lex"),
        "--synonyms",
        &fx("bailly.syn"),
        "--synonyms",
        &fx("bailly.syn"),
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!out.exists());
}

#[test]
fn validate_fixtures() {
    for name in ["reference.lex", "bailly.syn", "memodata.syn", "ewn.wn", "words.txt", "utterances.utt", "expected.merged"] {
        let o = senselex(&["validate", &fx(name)]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(o.stdout.is_empty(), "{name}");
    }

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("graph.data");
    fs::write(&bad, "S\tS1\ta,b\nE\tS1\thypernym\tS99\nS\tS1\tc\n").unwrap();
    let o = senselex(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let o = senselex(&["validate", bad.to_str().unwrap(), "--kind", "synsets"]);
    assert_eq!(o.status.code(), Some(1));
    let listing = String::from_utf8(o.stdout).unwrap();
    assert!(listing.contains("line 2: error"), "{listing}");
    assert!(listing.contains("S99"));
    assert!(listing.contains("line 3: error"));
}

/// Counts every verdict straight from the log files.
#[test]
fn report_counters_match_logs() {
    let dir = tempfile::tempdir().unwrap();
    let merged = full_merge(dir.path());
    let tally = |name: &str, column: usize| {
        let mut counts: BTreeMap<String, usize> = BTreeMap::new();
        for line in fs::read_to_string(dir.path().join(name)).unwrap().lines() {
            *counts.entry(line.split('\t').nth(column).unwrap().to_string()).or_default() += 1;
        }
        counts
    };
    let o = senselex(&["report", "--merged", merged.to_str().unwrap()]);
    assert!(o.status.success());
    let report = String::from_utf8(o.stdout).unwrap();
    assert_eq!(report, fs::read_to_string(dir.path().join("figures.report.txt")).unwrap());

    let synonyms = tally("figures.synonyms.log", 3);
    let derivatives = tally("figures.derivatives.log", 4);
    let alignments = tally("figures.alignments.log", 2);
    let rules = tally("figures.rules.tsv", 1);
    let seen: usize = synonyms.values().sum();
    assert!(report.contains(&format!("synonym proposals: {seen}\n")));
    for counts in [&synonyms, &derivatives, &alignments, &rules] {
        for (verdict, n) in counts {
            assert!(report.contains(&format!("  {verdict}: {n}\n")), "{verdict}: {n}\n{report}");
        }
    }
    assert!(report.contains(&format!("derivative candidates: {}\n", derivatives.values().sum::<usize>())));
    assert_eq!(synonyms["accepted"] + synonyms["accepted-multiword"] + synonyms["rejected"], seen);
}
