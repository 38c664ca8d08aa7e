//! The `dhatu` command line.
//!
//! Exit codes: 0 success, 1 data-file or I/O error, 2 usage error.

use std::ffi::OsString;
use std::fs;
use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use super::{analyze_stream, best_records, evaluate, parse_gold, person_codes, Format, StreamOptions};
use crate::classifier::{Reading, Register, TenseClass};
use crate::conjugator::{conjugate, paradigm, Lexicon, Paradigm};
use crate::data::{self, Toolkit};
use crate::extractor::RuleSet;
use crate::script::normalize_bytes;
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DATA: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "dhatu", version, about = "Bengali verb root extraction, classification and conjugation")]
struct Cli {
    /// Suffix table file; repeat for several registers (earlier files rank
    /// higher). Defaults to the bundled chalit, sadhu and dialect tables.
    #[arg(long = "suffixes", value_name = "FILE", global = true)]
    suffixes: Vec<PathBuf>,
    /// Repair rule file (default: bundled rules).
    #[arg(long, value_name = "FILE", global = true)]
    rules: Option<PathBuf>,
    /// Root lexicon (default: bundled lexicon).
    #[arg(long, value_name = "FILE", global = true)]
    lexicon: Option<PathBuf>,
    /// Paradigm file (default: bundled paradigm).
    #[arg(long, value_name = "FILE", global = true)]
    paradigm: Option<PathBuf>,
    /// Output format for analysis records.
    #[arg(long, value_enum, default_value_t = FormatArg::Tsv, global = true)]
    format: FormatArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Tsv,
    Jsonl,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Analyse tokens, one per line (`-` for standard input).
    Analyze {
        #[arg(default_value = "-")]
        input: String,
        /// Emit every ranked reading, not only the best.
        #[arg(long)]
        all_readings: bool,
        /// Treat input as running text and split it into tokens.
        #[arg(long)]
        tokenize: bool,
    },
    /// Generate the surface form of ROOT in one cell.
    Conjugate {
        root: String,
        /// 4-bit tense code, e.g. 0111.
        tense: String,
        /// Person code with optional formality, e.g. 01 or 10:intimate.
        person: String,
        #[arg(long, default_value = "chalit")]
        register: String,
    },
    /// Print tense code, person codes and suffix of the best analysis.
    Classify {
        word: String,
        #[arg(long)]
        all_readings: bool,
    },
    /// Normalize text (`-` for standard input).
    Normalize {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Score the analyzer against a gold file (default: bundled desk gold).
    Evaluate {
        gold: Option<PathBuf>,
        /// Print the machine-readable dump instead of the table.
        #[arg(long)]
        tsv: bool,
    },
    /// Print every defined cell of ROOT.
    Paradigm {
        root: String,
        #[arg(long, default_value = "chalit")]
        register: String,
    },
}

enum Failure {
    Usage(String),
    Data(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Data(e.to_string())
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

fn read_input(input: &str, stdin: &mut dyn BufRead) -> Result<Vec<u8>, Failure> {
    let mut buf = Vec::new();
    if input == "-" {
        stdin.read_to_end(&mut buf)?;
    } else {
        buf = fs::read(input).map_err(|e| Failure::Data(format!("{input}: {e}")))?;
    }
    Ok(buf)
}

fn toolkit(cli: &Cli) -> Result<Toolkit, Failure> {
    let table = if cli.suffixes.is_empty() {
        data::suffix_table().map_err(Error::from)?
    } else {
        let files = cli
            .suffixes
            .iter()
            .map(|p| Ok((p.display().to_string(), read_file(p)?)))
            .collect::<Result<Vec<_>, Failure>>()?;
        data::load_suffix_files(files.iter().map(|(n, s)| (n.as_str(), s.as_str()))).map_err(Error::from)?
    };
    let rules = match &cli.rules {
        Some(p) => RuleSet::load(&read_file(p)?).map_err(|e| Failure::Data(format!("{}: {e}", p.display())))?,
        None => data::rules().map_err(Error::from)?,
    };
    let paradigm = match &cli.paradigm {
        Some(p) => Paradigm::load_named(&p.display().to_string(), &read_file(p)?).map_err(Error::from)?,
        None => data::paradigm().map_err(Error::from)?,
    };
    let lexicon = match &cli.lexicon {
        Some(p) => Lexicon::load_named(&p.display().to_string(), &read_file(p)?, &paradigm).map_err(Error::from)?,
        None => data::lexicon(&paradigm).map_err(Error::from)?,
    };
    let light = data::light_verbs().map_err(Error::from)?;
    Ok(Toolkit::assemble(table, rules, paradigm, lexicon, light, data::parse_prefixes(data::PREFIXES)))
}

fn parse_register(s: &str) -> Result<Register, Failure> {
    s.parse().map_err(Failure::Usage)
}

fn execute(cli: &Cli, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let format = match cli.format {
        FormatArg::Tsv => Format::Tsv,
        FormatArg::Jsonl => Format::Jsonl,
    };
    match &cli.command {
        Command::Normalize { input } => {
            let raw = read_input(input, stdin)?;
            let text = normalize_bytes(&raw).map_err(|e| Failure::Data(e.to_string()))?;
            if !text.is_empty() {
                writeln!(out, "{text}")?;
            }
        }
        Command::Analyze { input, all_readings, tokenize } => {
            let kit = toolkit(cli)?;
            let raw = read_input(input, stdin)?;
            let opts = StreamOptions { all_readings: *all_readings, tokenize: *tokenize, format };
            let summary = analyze_stream(raw.as_slice(), &kit.analyzer, &opts, out)?;
            for e in &summary.errors {
                writeln!(err, "line {}: {}", e.line, e.message)?;
            }
            writeln!(err, "{} tokens, {} records, {} errors", summary.tokens, summary.records, summary.errors.len())?;
        }
        Command::Classify { word, all_readings } => {
            let kit = toolkit(cli)?;
            let word = crate::script::normalize_text(word);
            let analyses = kit.analyzer.analyze(&word).map_err(|e| Failure::Usage(e.to_string()))?;
            let mut seen = Vec::new();
            for a in analyses.iter().take(if *all_readings { analyses.len() } else { 1 }) {
                let line = match &a.suffix {
                    Some(s) => format!(
                        "{}\t{}\t{}",
                        s.tense.bits(),
                        person_codes(s.readings.iter().map(|r| r.person)).unwrap_or_default(),
                        s.suffix
                    ),
                    None => "-\t-\t-".to_owned(),
                };
                if !seen.contains(&line) {
                    writeln!(out, "{line}")?;
                    seen.push(line);
                }
            }
        }
        Command::Conjugate { root, tense, person, register } => {
            let tense =
                TenseClass::from_bits(tense).ok_or_else(|| Failure::Usage(format!("bad tense code {tense:?}")))?;
            let reading: Reading = person.parse().map_err(Failure::Usage)?;
            let register = parse_register(register)?;
            let kit = toolkit(cli)?;
            let entry =
                kit.lexicon.get(root).ok_or_else(|| Failure::Usage(format!("root {root} is not in the lexicon")))?;
            let form = conjugate(entry, tense, reading, &register, &kit.paradigm).map_err(Error::from)?;
            writeln!(out, "{form}")?;
        }
        Command::Paradigm { root, register } => {
            let register = parse_register(register)?;
            let kit = toolkit(cli)?;
            let entry =
                kit.lexicon.get(root).ok_or_else(|| Failure::Usage(format!("root {root} is not in the lexicon")))?;
            for ((tense, reading), form) in paradigm(entry, &register, &kit.paradigm) {
                writeln!(out, "{}\t{reading}\t{form}", tense.bits())?;
            }
        }
        Command::Evaluate { gold, tsv } => {
            let kit = toolkit(cli)?;
            let (name, src) = match gold {
                Some(p) => (p.display().to_string(), read_file(p)?),
                None => ("desk.tsv".to_owned(), data::DESK_GOLD.to_owned()),
            };
            let gold = parse_gold(&name, &src).map_err(Error::from)?;
            let surfaces: Vec<&str> = gold.iter().map(|g| g.surface.as_str()).collect();
            let predictions = best_records(&kit.analyzer, &surfaces);
            let report = evaluate(&predictions, &gold).map_err(Error::from)?;
            let text = if *tsv { report.render_tsv() } else { report.render_table() };
            write!(out, "{text}")?;
        }
    }
    Ok(())
}

/// Runs the CLI on `args` (including the program name) with the given
/// streams and returns the exit code.
pub fn run_with<I, T>(args: I, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{rendered}") } else { write!(out, "{rendered}") };
            return code;
        }
    };
    match execute(&cli, stdin, out, err) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Data(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_DATA
        }
    }
}

/// Runs the CLI against the process's standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdin = io::stdin();
    let mut input = stdin.lock();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let mut err = io::stderr();
    let code = run_with(args, &mut input, &mut out, &mut err);
    if out.flush().is_err() {
        return EXIT_DATA;
    }
    code
}
