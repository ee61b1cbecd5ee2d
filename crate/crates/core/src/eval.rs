//! Accuracy evaluation: exact-match scoring of decoded words against
//! gold targets, with a per-category breakdown.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::corpus::{EntityCategory, ParallelEntry};
use crate::decoder::{transliterate_word, DecodeOptions};
use crate::model::TransliterationModel;
use crate::ner::{tag_tokens, Gazetteer};
use crate::script::normalize_gurmukhi;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("accuracy is undefined for a zero total")]
    ZeroTotal,
    #[error("correct count {correct} exceeds total {total}")]
    CorrectExceedsTotal { correct: u64, total: u64 },
    #[error("empty test set")]
    EmptyTestSet,
}

/// Percentage of correct transliterations: 100 * correct / total.
pub fn accuracy(correct: u64, total: u64) -> Result<f64, EvalError> {
    if total == 0 {
        return Err(EvalError::ZeroTotal);
    }
    if correct > total {
        return Err(EvalError::CorrectExceedsTotal { correct, total });
    }
    Ok(100.0 * correct as f64 / total as f64)
}

/// Where the entity tag for each test row comes from: the row's own
/// category annotation (isolating decoder quality), or the tagger
/// (measuring the whole pipeline).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TagMode {
    Gold,
    Predicted,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CategoryStats {
    pub total: u64,
    pub correct: u64,
}

impl CategoryStats {
    pub fn accuracy_percent(&self) -> Option<f64> {
        accuracy(self.correct, self.total).ok()
    }
}

/// Outcome of one evaluated row, for per-row reporting.
#[derive(Debug, Clone, PartialEq)]
pub struct RowOutcome {
    pub source: String,
    pub gold: String,
    pub predicted: Option<String>,
    pub tag: EntityCategory,
    pub correct: bool,
}

/// Aggregate evaluation result. Rows the decoder errored on are
/// counted in `skipped` and excluded from the totals.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct EvalReport {
    pub total: u64,
    pub correct: u64,
    pub per_category: BTreeMap<EntityCategory, CategoryStats>,
    pub skipped: u64,
    pub rows: Vec<RowOutcome>,
}

impl EvalReport {
    pub fn accuracy_percent(&self) -> Option<f64> {
        accuracy(self.correct, self.total).ok()
    }
}

/// Decodes every test entry and counts a hit when the decoded word
/// equals the gold target after canonical normalization of both sides.
/// Stratification always follows the gold category, whatever tag mode
/// routed the tables.
pub fn evaluate_corpus(
    model: &TransliterationModel,
    test_entries: &[ParallelEntry],
    gazetteer: &Gazetteer,
    opts: &DecodeOptions,
    mode: TagMode,
) -> Result<EvalReport, EvalError> {
    if test_entries.is_empty() {
        return Err(EvalError::EmptyTestSet);
    }
    let mut report = EvalReport::default();
    for entry in test_entries {
        let tag = match mode {
            TagMode::Gold => entry.category(),
            TagMode::Predicted => {
                let tokens = [String::from(entry.source())];
                tag_tokens(&tokens, gazetteer)[0].tag
            }
        };
        match transliterate_word(entry.source(), tag, model, opts) {
            Ok(candidate) => {
                let predicted = candidate.target();
                let correct =
                    normalize_gurmukhi(&predicted) == normalize_gurmukhi(entry.target());
                report.total += 1;
                let stats = report.per_category.entry(entry.category()).or_default();
                stats.total += 1;
                if correct {
                    report.correct += 1;
                    stats.correct += 1;
                }
                report.rows.push(RowOutcome {
                    source: String::from(entry.source()),
                    gold: String::from(entry.target()),
                    predicted: Some(predicted),
                    tag,
                    correct,
                });
            }
            Err(_) => {
                report.skipped += 1;
                report.rows.push(RowOutcome {
                    source: String::from(entry.source()),
                    gold: String::from(entry.target()),
                    predicted: None,
                    tag,
                    correct: false,
                });
            }
        }
    }
    Ok(report)
}
