use std::collections::BTreeSet;
use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use senselex::ingest::{
    parse_reference, parse_synonym_resource, parse_synset_resource, parse_utterances, parse_wordlist, Diagnostic,
    IngestError, Parsed, Severity, TaxonomyRelation,
};
use senselex::{
    enrich_utterance, format_enrichment, logs, merge, parse_merged, DerivationConfig, EnrichOptions, MergeConfig,
    MergeInputs, MergeReport,
};

/// Merge lexical resources onto the senses of a reference lexicon, and
/// enrich pre-parsed utterances with the merged data.
#[derive(Parser)]
#[command(name = "senselex", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a merged lexicon and its decision logs.
    Merge(MergeArgs),
    /// Disambiguate and enrich every utterance of a file.
    Enrich(EnrichArgs),
    /// Check one resource file and list its diagnostics.
    Validate(ValidateArgs),
    /// Summarize the decisions stored in a merged lexicon.
    Report {
        #[arg(long)]
        merged: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Majority {
    Strict,
}

#[derive(Args)]
struct MergeArgs {
    /// Reference lexicon (.lex).
    #[arg(long)]
    reference: PathBuf,
    /// Synonym resource (.syn); repeat for several. The file stem names the source.
    #[arg(long = "synonyms")]
    synonyms: Vec<PathBuf>,
    /// Synset taxonomy (.wn). Without it every sense is aligned as no-synset.
    #[arg(long)]
    synsets: Option<PathBuf>,
    /// Wordlist used to propose derivatives.
    #[arg(long)]
    wordlist: Option<PathBuf>,
    /// Merged lexicon to write.
    #[arg(long)]
    output: PathBuf,
    /// Directory for the decision logs; defaults to the output's directory.
    #[arg(long)]
    log_dir: Option<PathBuf>,
    /// Minimum radical length of a derivative, in characters.
    #[arg(long, default_value_t = 3)]
    radical_min: usize,
    /// How many trailing characters of a lemma may be dropped to form a stem.
    #[arg(long, default_value_t = 2)]
    stem_trim: usize,
    /// Taxonomy alignment vote; only a strict majority is supported.
    #[arg(long, value_enum, default_value = "strict")]
    majority: Majority,
}

#[derive(Args)]
struct EnrichArgs {
    #[arg(long)]
    merged: PathBuf,
    #[arg(long)]
    utterances: PathBuf,
    /// Keep synonyms that could not be checked against semantic features.
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    include_multiword: bool,
    #[arg(long, default_value_t = 1)]
    taxonomy_depth: u32,
    #[arg(long, value_delimiter = ',', default_value = "hypernym,hyponym")]
    relations: Vec<TaxonomyRelation>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Reference,
    Synonyms,
    Synsets,
    Wordlist,
    Utterances,
    Merged,
}

#[derive(Args)]
struct ValidateArgs {
    path: PathBuf,
    /// Format of the file; guessed from the extension when absent.
    #[arg(long, value_enum)]
    kind: Option<Kind>,
}

/// Why a command failed; maps onto the exit status.
enum Failure {
    Invalid(String),
    Io(String),
}

impl Failure {
    fn io(path: &Path, e: io::Error) -> Self {
        Failure::Io(format!("{}: {e}", path.display()))
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Merge(args) => cmd_merge(args),
        Command::Enrich(args) => cmd_enrich(args),
        Command::Validate(args) => cmd_validate(args),
        Command::Report { merged } => cmd_report(&merged),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn open(path: &Path) -> Result<BufReader<File>, Failure> {
    File::open(path).map(BufReader::new).map_err(|e| Failure::io(path, e))
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

fn render(path: &Path, diagnostics: &[Diagnostic]) -> String {
    diagnostics
        .iter()
        .map(|d| format!("{}:{d}", path.display()))
        .collect::<Vec<_>>()
        .join("\n")
}

/// Loads one resource; validation problems are collected into `problems`
/// instead of failing, so that every input gets checked.
fn load<T>(
    path: &Path,
    problems: &mut Vec<String>,
    parse: impl FnOnce(BufReader<File>) -> Result<Parsed<T>, IngestError>,
) -> Result<Option<T>, Failure> {
    match parse(open(path)?) {
        Ok(parsed) => {
            for w in &parsed.warnings {
                eprintln!("{}:{w}", path.display());
            }
            Ok(Some(parsed.value))
        }
        Err(IngestError::Io(e)) => Err(Failure::io(path, e)),
        Err(IngestError::Invalid(ds)) => {
            problems.push(render(path, &ds));
            Ok(None)
        }
    }
}

fn write_file(path: &Path, contents: &str) -> CmdResult {
    let mut f = BufWriter::new(File::create(path).map_err(|e| Failure::io(path, e))?);
    f.write_all(contents.as_bytes())
        .and_then(|()| f.flush())
        .map_err(|e| Failure::io(path, e))
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(suffix);
    path.with_file_name(name)
}

fn cmd_merge(args: MergeArgs) -> CmdResult {
    let Majority::Strict = args.majority;
    let mut problems = Vec::new();

    let reference = load(&args.reference, &mut problems, parse_reference)?;
    let mut synonyms = Vec::new();
    for path in &args.synonyms {
        let name = stem(path);
        if let Some(r) = load(path, &mut problems, |f| parse_synonym_resource(&name, f))? {
            synonyms.push(r);
        }
    }
    let synsets = match &args.synsets {
        Some(path) => load(path, &mut problems, parse_synset_resource)?.map(|g| (stem(path), g)),
        None => None,
    };
    let wordlist = match &args.wordlist {
        Some(path) => load(path, &mut problems, parse_wordlist)?.map(|w| (stem(path), w)),
        None => None,
    };

    let diagnostics_path = with_suffix(&args.output, ".diagnostics");
    let fail = |problems: Vec<String>| -> CmdResult {
        let text = problems.join("\n") + "\n";
        write_file(&diagnostics_path, &text)?;
        Err(Failure::Invalid(format!(
            "{}validation failed; diagnostics written to {}",
            text,
            diagnostics_path.display()
        )))
    };
    let Some(reference) = reference.filter(|_| problems.is_empty()) else {
        return fail(problems);
    };

    let inputs = MergeInputs {
        reference,
        synonyms,
        synsets,
        wordlist,
        config: MergeConfig {
            derivation: DerivationConfig {
                radical_min: args.radical_min,
                max_stem_trim: args.stem_trim,
            },
        },
    };
    let merged = match merge(inputs) {
        Ok(m) => m,
        Err(e) => return fail(vec![e.to_string()]),
    };
    // A stale diagnostics file from an earlier failed run would be misleading.
    let _ = fs::remove_file(&diagnostics_path);

    write_file(&args.output, &merged.serialize())?;
    let log_dir = match &args.log_dir {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| Failure::io(dir, e))?;
            dir.clone()
        }
        None => args.output.parent().map(Path::to_path_buf).unwrap_or_default(),
    };
    let prefix = stem(&args.output);
    let report = MergeReport::from_merged(&merged);
    for (name, contents) in logs::all_logs(&merged) {
        write_file(&log_dir.join(format!("{prefix}.{name}")), &contents)?;
    }
    write_file(&log_dir.join(format!("{prefix}.report.txt")), &report.to_string())?;
    for d in &merged.diagnostics {
        eprintln!("{d}");
    }
    Ok(())
}

fn load_merged(path: &Path) -> Result<senselex::MergedLexicon, Failure> {
    let mut problems = Vec::new();
    match load(path, &mut problems, parse_merged)? {
        Some(m) => Ok(m),
        None => Err(Failure::Invalid(problems.join("\n"))),
    }
}

fn cmd_enrich(args: EnrichArgs) -> CmdResult {
    let merged = load_merged(&args.merged)?;
    let mut problems = Vec::new();
    let Some(utterances) = load(&args.utterances, &mut problems, parse_utterances)? else {
        return Err(Failure::Invalid(problems.join("\n")));
    };
    let options = EnrichOptions {
        include_multiword: args.include_multiword,
        taxonomy_relations: args.relations.into_iter().collect::<BTreeSet<_>>(),
        depth: args.taxonomy_depth,
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    for (i, utterance) in utterances.iter().enumerate() {
        for set in enrich_utterance(&merged, utterance, &options) {
            writeln!(out, "{}", format_enrichment(i + 1, &set)).map_err(|e| Failure::Io(e.to_string()))?;
        }
    }
    out.flush().map_err(|e| Failure::Io(e.to_string()))
}

fn guess_kind(path: &Path) -> Option<Kind> {
    match path.extension()?.to_str()? {
        "lex" => Some(Kind::Reference),
        "syn" => Some(Kind::Synonyms),
        "wn" => Some(Kind::Synsets),
        "txt" => Some(Kind::Wordlist),
        "utt" => Some(Kind::Utterances),
        "merged" => Some(Kind::Merged),
        _ => None,
    }
}

fn cmd_validate(args: ValidateArgs) -> CmdResult {
    let path = &args.path;
    let Some(kind) = args.kind.or_else(|| guess_kind(path)) else {
        return Err(Failure::Invalid(format!(
            "{}: cannot tell the format from the extension; pass --kind",
            path.display()
        )));
    };
    let reader = open(path)?;
    let result = match kind {
        Kind::Reference => parse_reference(reader).map(|p| p.warnings),
        Kind::Synonyms => parse_synonym_resource(&stem(path), reader).map(|p| p.warnings),
        Kind::Synsets => parse_synset_resource(reader).map(|p| p.warnings),
        Kind::Wordlist => parse_wordlist(reader).map(|p| p.warnings),
        Kind::Utterances => parse_utterances(reader).map(|p| p.warnings),
        Kind::Merged => parse_merged(reader).map(|p| p.warnings),
    };
    match result {
        Ok(warnings) => {
            if !warnings.is_empty() {
                println!("{}", render(path, &warnings));
            }
            Ok(())
        }
        Err(IngestError::Io(e)) => Err(Failure::io(path, e)),
        Err(IngestError::Invalid(ds)) => {
            println!("{}", render(path, &ds));
            let errors = ds.iter().filter(|d| d.severity == Severity::Error).count();
            Err(Failure::Invalid(format!("{}: {errors} error(s)", path.display())))
        }
    }
}

fn cmd_report(path: &Path) -> CmdResult {
    let merged = load_merged(path)?;
    print!("{}", MergeReport::from_merged(&merged));
    Ok(())
}
