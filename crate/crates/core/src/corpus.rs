//! Parallel-corpus entries, monotone syllable alignment, and the
//! relative-frequency training of the translation tables and bigram
//! language model.

use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::model::{BigramLM, CountTable, TranslationTable};
use crate::script::{segment_aksharas, tokenize_units, ScriptError, ScriptProfile};
use crate::syllable::syllabify;

/// Category of a corpus row or a tagged token. Person and location are
/// the name-entity categories; everything else is general vocabulary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum EntityCategory {
    Person,
    Location,
    Other,
}

impl EntityCategory {
    pub fn is_name_entity(self) -> bool {
        matches!(self, EntityCategory::Person | EntityCategory::Location)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            EntityCategory::Person => "PERSON",
            EntityCategory::Location => "LOCATION",
            EntityCategory::Other => "OTHER",
        }
    }
}

impl core::fmt::Display for EntityCategory {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EntryError {
    #[error("invalid source word: {0}")]
    InvalidSource(ScriptError),
    #[error("invalid target word: {0}")]
    InvalidTarget(ScriptError),
    #[error("explicit target syllable {index} is empty")]
    EmptyTargetSyllable { index: usize },
    #[error("explicit target syllables do not concatenate to the target word")]
    SegmentationMismatch,
}

/// One aligned corpus row: a Roman source word, its Gurmukhi target,
/// the entity category, and optionally an explicit target-side
/// segmentation overriding the akshara heuristic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParallelEntry {
    source: String,
    target: String,
    category: EntityCategory,
    target_syllables: Option<Vec<String>>,
}

impl ParallelEntry {
    pub fn new(
        source: String,
        target: String,
        category: EntityCategory,
        target_syllables: Option<Vec<String>>,
        profile: &ScriptProfile,
    ) -> Result<Self, EntryError> {
        tokenize_units(&source, profile).map_err(EntryError::InvalidSource)?;
        segment_aksharas(&target, profile).map_err(EntryError::InvalidTarget)?;
        if let Some(pieces) = &target_syllables {
            let mut joined = String::new();
            for (index, piece) in pieces.iter().enumerate() {
                if piece.is_empty() {
                    return Err(EntryError::EmptyTargetSyllable { index });
                }
                joined.push_str(piece);
            }
            if joined != target {
                return Err(EntryError::SegmentationMismatch);
            }
        }
        Ok(ParallelEntry {
            source,
            target,
            category,
            target_syllables,
        })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn target(&self) -> &str {
        &self.target
    }

    pub fn category(&self) -> EntityCategory {
        self.category
    }

    pub fn target_syllables(&self) -> Option<&[String]> {
        self.target_syllables.as_deref()
    }
}

/// Why an entry was left out of training.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SkipReason {
    /// Fewer target pieces than source syllables; merging cannot help.
    CountMismatch {
        source_syllables: usize,
        target_pieces: usize,
    },
    /// The entry does not segment under this profile (only possible
    /// when it was validated under a different one).
    Script(ScriptError),
}

impl core::fmt::Display for SkipReason {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            SkipReason::CountMismatch {
                source_syllables,
                target_pieces,
            } => write!(
                f,
                "count mismatch: {source_syllables} source syllables, {target_pieces} target pieces"
            ),
            SkipReason::Script(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Alignment {
    Aligned(Vec<(String, String)>),
    Skipped(SkipReason),
}

/// Pairs source syllables with target pieces positionally. The target
/// side is the explicit segmentation when present; otherwise aksharas,
/// merging the last two repeatedly while they outnumber the source
/// syllables (Gurmukhi codas trail their nucleus, so surplus aksharas
/// belong to the final syllable).
pub fn align_pair(entry: &ParallelEntry, profile: &ScriptProfile) -> Alignment {
    let source_syllables = match syllabify(entry.source(), profile) {
        Ok(s) => s,
        Err(e) => return Alignment::Skipped(SkipReason::Script(e)),
    };
    let mut pieces: Vec<String> = match entry.target_syllables() {
        Some(explicit) => explicit.to_vec(),
        None => match segment_aksharas(entry.target(), profile) {
            Ok(aksharas) => {
                let mut aksharas = aksharas;
                while aksharas.len() > source_syllables.len() {
                    let tail = aksharas.pop().expect("len > 0");
                    aksharas
                        .last_mut()
                        .expect("len >= source syllables >= 1")
                        .push_str(&tail);
                }
                aksharas
            }
            Err(e) => return Alignment::Skipped(SkipReason::Script(e)),
        },
    };
    if pieces.len() != source_syllables.len() {
        return Alignment::Skipped(SkipReason::CountMismatch {
            source_syllables: source_syllables.len(),
            target_pieces: pieces.len(),
        });
    }
    let pairs = source_syllables
        .into_iter()
        .map(|s| s.text)
        .zip(pieces.drain(..))
        .collect();
    Alignment::Aligned(pairs)
}

/// Which trained artifact a training error refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    NameEntity,
    General,
    LanguageModel,
}

impl core::fmt::Display for TableKind {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            TableKind::NameEntity => "name-entity",
            TableKind::General => "general",
            TableKind::LanguageModel => "language-model",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrainError {
    #[error("no aligned training pairs for the {0} table")]
    EmptyTrainingSet(TableKind),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TableStats {
    pub entries_used: usize,
    pub entries_skipped: usize,
    pub pairs: usize,
}

/// Per-table usage counters from a training run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TrainStats {
    pub ne: TableStats,
    pub general: TableStats,
    /// Set when no OTHER entry aligned; permitted because name-entity
    /// corpora often carry no general vocabulary at all.
    pub general_empty: bool,
}

/// Accumulates relative-frequency translation tables, routing
/// PERSON/LOCATION entries to the name-entity table and OTHER entries
/// to the general one. An empty general table is a warning; an empty
/// name-entity table is an error.
pub fn train_translation(
    entries: &[ParallelEntry],
    profile: &ScriptProfile,
) -> Result<(TranslationTable, TranslationTable, TrainStats), TrainError> {
    let mut ne_counts = CountTable::new();
    let mut general_counts = CountTable::new();
    let mut stats = TrainStats::default();
    for entry in entries {
        let (counts, table_stats) = if entry.category().is_name_entity() {
            (&mut ne_counts, &mut stats.ne)
        } else {
            (&mut general_counts, &mut stats.general)
        };
        match align_pair(entry, profile) {
            Alignment::Aligned(pairs) => {
                table_stats.entries_used += 1;
                table_stats.pairs += pairs.len();
                for (s, t) in &pairs {
                    counts.record(s, t);
                }
            }
            Alignment::Skipped(_) => table_stats.entries_skipped += 1,
        }
    }
    if ne_counts.is_empty() {
        return Err(TrainError::EmptyTrainingSet(TableKind::NameEntity));
    }
    stats.general_empty = general_counts.is_empty();
    Ok((
        TranslationTable::from_counts(&ne_counts),
        TranslationTable::from_counts(&general_counts),
        stats,
    ))
}

/// Estimates the bigram language model over the target syllables of
/// every entry that aligns, regardless of category.
pub fn train_bigram(
    entries: &[ParallelEntry],
    profile: &ScriptProfile,
) -> Result<BigramLM, TrainError> {
    let sequences: Vec<Vec<String>> = entries
        .iter()
        .filter_map(|entry| match align_pair(entry, profile) {
            Alignment::Aligned(pairs) => Some(pairs.into_iter().map(|(_, t)| t).collect()),
            Alignment::Skipped(_) => None,
        })
        .collect();
    BigramLM::from_sequences(sequences)
        .ok_or(TrainError::EmptyTrainingSet(TableKind::LanguageModel))
}
