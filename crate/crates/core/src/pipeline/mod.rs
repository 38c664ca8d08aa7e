//! Batch analysis, evaluation against gold data, and the command-line
//! front end.

pub mod cli;
mod eval;
mod record;
mod stream;

use thiserror::Error;

pub use eval::{evaluate, parse_gold, register_order, Confusion, EvalReport, GoldEntry, RegisterStats};
pub use record::{person_codes, Record, RecordParseError};
pub use stream::{analyze_stream, best_records, Format, StreamError, StreamOptions, StreamSummary};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("prediction/gold length mismatch: {predictions} predictions, {gold} gold entries")]
    LengthMismatch { predictions: usize, gold: usize },
    #[error("entry {index}: prediction is for {prediction:?} but gold is {gold:?}")]
    Misaligned { index: usize, prediction: String, gold: String },
}
