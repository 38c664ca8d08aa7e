use std::io::{self, BufRead, Write};

use rayon::prelude::*;
use unicode_normalization::UnicodeNormalization;

use super::record::Record;
use crate::extractor::{Analysis, Analyzer, ExtractError};
use crate::script::{normalize_bytes, normalize_text};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Tsv,
    Jsonl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct StreamOptions {
    /// Emit every ranked analysis instead of only rank 0.
    pub all_readings: bool,
    /// Treat lines as running text: full normalization (punctuation
    /// detached) before whitespace splitting.
    pub tokenize: bool,
    pub format: Format,
}

/// A line or token that could not be processed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StreamError {
    /// 1-based input line.
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StreamSummary {
    pub lines: usize,
    pub tokens: usize,
    pub records: usize,
    pub errors: Vec<StreamError>,
}

/// Splits one input line into tokens. Without `tokenize` the line is only
/// brought to canonical form and split on whitespace, so a multi-word verb
/// such as "খেয়ে নিবি" stays together as one token group; with `tokenize`
/// punctuation is detached first.
fn tokens_of(text: &str, tokenize: bool) -> Vec<String> {
    let text = if tokenize { normalize_text(text) } else { text.nfc().collect() };
    text.split_whitespace().map(str::to_owned).collect()
}

type LineResult = Result<Vec<(String, Result<Vec<Analysis>, ExtractError>)>, String>;

fn analyze_line(analyzer: &Analyzer, raw: &[u8], tokenize: bool) -> LineResult {
    // decoding goes through the normalizer only to validate and locate errors
    normalize_bytes(raw).map_err(|e| e.to_string())?;
    let text = std::str::from_utf8(raw).expect("validated above");
    let tokens = tokens_of(text, tokenize);
    let results = analyzer.analyze_tokens(&tokens);
    Ok(tokens.into_iter().zip(results).collect())
}

/// Analyses every line of `input` and writes one record per token (every
/// ranked reading with `all_readings`). Lines are processed in parallel and
/// written in input order. Undecodable lines and unanalysable tokens are
/// counted in the summary; processing continues past them.
pub fn analyze_stream<R: BufRead, W: Write + ?Sized>(
    input: R,
    analyzer: &Analyzer,
    opts: &StreamOptions,
    out: &mut W,
) -> io::Result<StreamSummary> {
    let mut raw_lines = Vec::new();
    for line in input.split(b'\n') {
        let mut line = line?;
        if line.last() == Some(&b'\r') {
            line.pop();
        }
        raw_lines.push(line);
    }
    let results: Vec<LineResult> = raw_lines.par_iter().map(|raw| analyze_line(analyzer, raw, opts.tokenize)).collect();

    let mut summary = StreamSummary { lines: raw_lines.len(), ..Default::default() };
    for (idx, result) in results.into_iter().enumerate() {
        let line = idx + 1;
        let tokens = match result {
            Ok(t) => t,
            Err(message) => {
                summary.errors.push(StreamError { line, message });
                continue;
            }
        };
        for (token, analyses) in tokens {
            summary.tokens += 1;
            let analyses = match analyses {
                Ok(a) => a,
                Err(e) => {
                    summary.errors.push(StreamError { line, message: format!("{token}: {e}") });
                    continue;
                }
            };
            let take = if opts.all_readings { analyses.len() } else { 1 };
            for a in analyses.iter().take(take) {
                let rec = Record::from_analysis(a);
                match opts.format {
                    Format::Tsv => writeln!(out, "{}", rec.to_tsv())?,
                    Format::Jsonl => writeln!(out, "{}", rec.to_jsonl())?,
                }
                summary.records += 1;
            }
        }
    }
    Ok(summary)
}

/// Rank-0 record for each word, analysed independently and in parallel.
pub fn best_records<S: AsRef<str> + Sync>(analyzer: &Analyzer, words: &[S]) -> Vec<Record> {
    words
        .par_iter()
        .map(|w| {
            let w: String = w.as_ref().nfc().collect();
            match analyzer.analyze(&w) {
                Ok(a) => Record::from_analysis(&a[0]),
                Err(_) => Record::from_analysis(&Analysis::unanalyzed(&w)),
            }
        })
        .collect()
}
