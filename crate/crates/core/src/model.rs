//! Trained artifacts: count tables, relative-frequency translation
//! tables, the bigram language model over target syllables, and the
//! model aggregate the decoder consumes.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use thiserror::Error;

use crate::script::ScriptProfile;

/// Current persistence format version.
pub const MODEL_VERSION: u32 = 1;

/// Word-start marker the language model is padded with.
pub const LM_START: &str = "<s>";
/// Word-end marker the language model is padded with.
pub const LM_END: &str = "</s>";

/// Tolerance for a probability row that should sum to one.
pub const ROW_SUM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TableError {
    #[error("probability {prob} for {row:?} -> {target:?} is outside (0, 1]")]
    ProbabilityOutOfRange {
        row: String,
        target: String,
        prob: f64,
    },
    #[error("probabilities for {row:?} sum to {sum}, expected 1")]
    RowSumNotOne { row: String, sum: f64 },
    #[error("duplicate target {target:?} for {row:?}")]
    DuplicateTarget { row: String, target: String },
}

/// Joint and marginal counts accumulated during training. The marginal
/// is maintained on every insertion, so `source_counts[s]` always
/// equals the sum of `pair_counts[(s, *)]`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CountTable {
    pair_counts: BTreeMap<(String, String), u64>,
    source_counts: BTreeMap<String, u64>,
}

impl CountTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, source: &str, target: &str) {
        *self
            .pair_counts
            .entry((source.to_string(), target.to_string()))
            .or_insert(0) += 1;
        *self.source_counts.entry(source.to_string()).or_insert(0) += 1;
    }

    pub fn pair_count(&self, source: &str, target: &str) -> u64 {
        self.pair_counts
            .get(&(source.to_string(), target.to_string()))
            .copied()
            .unwrap_or(0)
    }

    pub fn source_count(&self, source: &str) -> u64 {
        self.source_counts.get(source).copied().unwrap_or(0)
    }

    pub fn total_pairs(&self) -> u64 {
        self.pair_counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.pair_counts.is_empty()
    }

    pub fn iter_pairs(&self) -> impl Iterator<Item = (&str, &str, u64)> {
        self.pair_counts
            .iter()
            .map(|((s, t), &n)| (s.as_str(), t.as_str(), n))
    }
}

/// Relative-frequency translation table: per source syllable, target
/// candidates sorted by descending probability, ties broken by target
/// codepoint order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TranslationTable {
    rows: BTreeMap<String, Vec<(String, f64)>>,
}

impl TranslationTable {
    /// P(target | source) = pair count / source count.
    pub fn from_counts(counts: &CountTable) -> Self {
        let mut rows: BTreeMap<String, Vec<(String, f64)>> = BTreeMap::new();
        for ((source, target), &n) in &counts.pair_counts {
            let denom = counts.source_counts[source] as f64;
            rows.entry(source.clone())
                .or_default()
                .push((target.clone(), n as f64 / denom));
        }
        for row in rows.values_mut() {
            sort_row(row);
        }
        TranslationTable { rows }
    }

    /// Builds a table from explicit probabilities, validating that each
    /// row sums to one within `tolerance` and every probability lies in
    /// (0, 1].
    pub fn from_probs<I, J>(rows: I, tolerance: f64) -> Result<Self, TableError>
    where
        I: IntoIterator<Item = (String, J)>,
        J: IntoIterator<Item = (String, f64)>,
    {
        let mut table: BTreeMap<String, Vec<(String, f64)>> = BTreeMap::new();
        for (source, candidates) in rows {
            let mut row: Vec<(String, f64)> = Vec::new();
            let mut sum = 0.0;
            for (target, prob) in candidates {
                if !(prob > 0.0 && prob <= 1.0) {
                    return Err(TableError::ProbabilityOutOfRange {
                        row: source,
                        target,
                        prob,
                    });
                }
                if row.iter().any(|(t, _)| *t == target) {
                    return Err(TableError::DuplicateTarget {
                        row: source,
                        target,
                    });
                }
                sum += prob;
                row.push((target, prob));
            }
            if row.is_empty() {
                continue;
            }
            if libm::fabs(sum - 1.0) > tolerance {
                return Err(TableError::RowSumNotOne { row: source, sum });
            }
            sort_row(&mut row);
            table.insert(source, row);
        }
        Ok(TranslationTable { rows: table })
    }

    pub fn candidates(&self, source: &str) -> Option<&[(String, f64)]> {
        self.rows.get(source).map(|v| v.as_slice())
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &[(String, f64)])> {
        self.rows.iter().map(|(s, v)| (s.as_str(), v.as_slice()))
    }

    pub fn approx_eq(&self, other: &Self, tolerance: f64) -> bool {
        self.rows.len() == other.rows.len()
            && self.rows.iter().zip(other.rows.iter()).all(|(a, b)| {
                a.0 == b.0
                    && a.1.len() == b.1.len()
                    && a.1.iter().zip(b.1.iter()).all(|(x, y)| {
                        x.0 == y.0 && libm::fabs(x.1 - y.1) <= tolerance
                    })
            })
    }
}

fn sort_row(row: &mut [(String, f64)]) {
    row.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
}

/// Bigram language model over target syllables, padded with start/end
/// markers and estimated by relative frequency: P(w | h) equals
/// count(h, w) / count(h).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct BigramLM {
    bigram: BTreeMap<(String, String), f64>,
    unigram_counts: BTreeMap<String, u64>,
    sequence_count: u64,
}

impl BigramLM {
    /// Counts bigrams over the padded sequences. Returns `None` when
    /// there are no sequences at all.
    pub fn from_sequences<I, S>(sequences: I) -> Option<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[String]>,
    {
        let mut bigram_counts: BTreeMap<(String, String), u64> = BTreeMap::new();
        let mut unigram_counts: BTreeMap<String, u64> = BTreeMap::new();
        let mut sequence_count = 0u64;
        for seq in sequences {
            let seq = seq.as_ref();
            if seq.is_empty() {
                continue;
            }
            sequence_count += 1;
            let mut prev = LM_START.to_string();
            for syl in seq {
                *unigram_counts.entry(syl.clone()).or_insert(0) += 1;
                *bigram_counts
                    .entry((core::mem::replace(&mut prev, syl.clone()), syl.clone()))
                    .or_insert(0) += 1;
            }
            *bigram_counts.entry((prev, LM_END.to_string())).or_insert(0) += 1;
        }
        if sequence_count == 0 {
            return None;
        }
        // Every occurrence of a syllable is a history exactly once, so
        // the unigram counts double as the denominators; the start
        // marker's history count is the number of sequences.
        let bigram = bigram_counts
            .into_iter()
            .map(|((prev, next), n)| {
                let denom = if prev == LM_START {
                    sequence_count
                } else {
                    unigram_counts[&prev]
                };
                ((prev, next), n as f64 / denom as f64)
            })
            .collect();
        Some(BigramLM {
            bigram,
            unigram_counts,
            sequence_count,
        })
    }

    /// Builds an LM from explicit probabilities; each history row must
    /// sum to one within `tolerance`.
    pub fn from_parts(
        bigram: BTreeMap<(String, String), f64>,
        unigram_counts: BTreeMap<String, u64>,
        sequence_count: u64,
        tolerance: f64,
    ) -> Result<Self, TableError> {
        let mut sums: BTreeMap<&String, f64> = BTreeMap::new();
        for ((prev, next), &p) in &bigram {
            if !(p > 0.0 && p <= 1.0) {
                return Err(TableError::ProbabilityOutOfRange {
                    row: prev.clone(),
                    target: next.clone(),
                    prob: p,
                });
            }
            *sums.entry(prev).or_insert(0.0) += p;
        }
        for (prev, sum) in sums {
            if libm::fabs(sum - 1.0) > tolerance {
                return Err(TableError::RowSumNotOne {
                    row: prev.clone(),
                    sum,
                });
            }
        }
        Ok(BigramLM {
            bigram,
            unigram_counts,
            sequence_count,
        })
    }

    pub fn prob(&self, prev: &str, next: &str) -> Option<f64> {
        self.bigram
            .get(&(prev.to_string(), next.to_string()))
            .copied()
    }

    pub fn unigram_count(&self, syl: &str) -> u64 {
        self.unigram_counts.get(syl).copied().unwrap_or(0)
    }

    pub fn sequence_count(&self) -> u64 {
        self.sequence_count
    }

    pub fn is_empty(&self) -> bool {
        self.bigram.is_empty()
    }

    pub fn iter_bigrams(&self) -> impl Iterator<Item = (&str, &str, f64)> {
        self.bigram
            .iter()
            .map(|((p, n), &prob)| (p.as_str(), n.as_str(), prob))
    }

    pub fn iter_unigrams(&self) -> impl Iterator<Item = (&str, u64)> {
        self.unigram_counts.iter().map(|(s, &n)| (s.as_str(), n))
    }

    pub fn approx_eq(&self, other: &Self, tolerance: f64) -> bool {
        self.unigram_counts == other.unigram_counts
            && self.sequence_count == other.sequence_count
            && self.bigram.len() == other.bigram.len()
            && self
                .bigram
                .iter()
                .zip(other.bigram.iter())
                .all(|(a, b)| a.0 == b.0 && libm::fabs(a.1 - b.1) <= tolerance)
    }
}

/// Everything the decoder needs: the script profile the model was
/// trained under, the two translation tables, the language model, and
/// a letter-by-letter fallback for syllables never seen in training.
#[derive(Debug, Clone, PartialEq)]
pub struct TransliterationModel {
    pub profile: ScriptProfile,
    pub ne_table: TranslationTable,
    pub general_table: TranslationTable,
    pub lm: BigramLM,
    pub fallback_map: BTreeMap<char, String>,
    pub version: u32,
}

impl TransliterationModel {
    pub fn approx_eq(&self, other: &Self, tolerance: f64) -> bool {
        self.profile == other.profile
            && self.ne_table.approx_eq(&other.ne_table, tolerance)
            && self.general_table.approx_eq(&other.general_table, tolerance)
            && self.lm.approx_eq(&other.lm, tolerance)
            && self.fallback_map == other.fallback_map
            && self.version == other.version
    }
}

/// Letter-by-letter Gurmukhi correspondences used when a syllable is
/// absent from both tables. Total over a-z.
pub fn default_fallback_map() -> BTreeMap<char, String> {
    [
        ('a', "ਅ"),
        ('b', "ਬ"),
        ('c', "ਕ"),
        ('d', "ਡ"),
        ('e', "ਏ"),
        ('f', "ਫ"),
        ('g', "ਗ"),
        ('h', "ਹ"),
        ('i', "ਇ"),
        ('j', "ਜ"),
        ('k', "ਕ"),
        ('l', "ਲ"),
        ('m', "ਮ"),
        ('n', "ਨ"),
        ('o', "ਓ"),
        ('p', "ਪ"),
        ('q', "ਕ"),
        ('r', "ਰ"),
        ('s', "ਸ"),
        ('t', "ਟ"),
        ('u', "ਉ"),
        ('v', "ਵ"),
        ('w', "ਵ"),
        ('x', "ਕਸ"),
        ('y', "ਯ"),
        ('z', "ਜ\u{0A3C}"),
    ]
    .into_iter()
    .map(|(c, s)| (c, s.to_string()))
    .collect()
}
