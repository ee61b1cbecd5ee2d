//! Word and sentence transliteration: syllabify, pick the table by
//! entity tag, choose target syllables by probability product
//! (optionally interpolated with the bigram LM), fall back to the
//! letter map for unseen syllables, and join.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::corpus::EntityCategory;
use crate::model::{TransliterationModel, LM_END, LM_START};
use crate::ner::{alphabetic_runs, tag_tokens};
use crate::script::ScriptError;
use crate::syllable::syllabify;

/// Decoding knobs. The defaults reproduce pure product scoring: no
/// language-model weight, beam of five, and a small epsilon standing
/// in for unseen LM bigrams when the weight is nonzero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecodeOptions {
    pub lm_weight: f64,
    pub beam_width: usize,
    pub lm_epsilon: f64,
}

impl Default for DecodeOptions {
    fn default() -> Self {
        DecodeOptions {
            lm_weight: 0.0,
            beam_width: 5,
            lm_epsilon: 1e-6,
        }
    }
}

impl DecodeOptions {
    fn validate(&self) -> Result<(), DecodeError> {
        if !(self.lm_weight >= 0.0 && self.lm_weight <= 1.0) {
            return Err(DecodeError::InvalidOptions("lm_weight must be in [0, 1]"));
        }
        if self.beam_width == 0 {
            return Err(DecodeError::InvalidOptions("beam_width must be positive"));
        }
        if !(self.lm_epsilon > 0.0) {
            return Err(DecodeError::InvalidOptions("lm_epsilon must be positive"));
        }
        Ok(())
    }
}

/// One decoded syllable: which target was chosen and at what
/// translation probability. Fallback choices carry probability one and
/// are excluded from scoring.
#[derive(Debug, Clone, PartialEq)]
pub struct SyllableChoice {
    pub source: String,
    pub target: String,
    pub prob: f64,
    pub from_fallback: bool,
}

/// A decoded target word: per-syllable choices and the product score.
/// `degraded` marks words where any syllable went through the fallback
/// letter map.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub choices: Vec<SyllableChoice>,
    pub score: f64,
    pub degraded: bool,
}

impl Candidate {
    pub fn target(&self) -> String {
        self.choices.iter().map(|c| c.target.as_str()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("{0}")]
    Script(#[from] ScriptError),
    #[error("no table entry for syllable {syllable:?} and no fallback for {letter:?}")]
    ModelMissingTable { syllable: String, letter: char },
    #[error("invalid decode options: {0}")]
    InvalidOptions(&'static str),
}

struct SlotOption {
    target: String,
    prob: f64,
    fallback: bool,
}

struct Slot {
    source: String,
    options: Vec<SlotOption>,
}

fn build_lattice(
    word: &str,
    tag: EntityCategory,
    model: &TransliterationModel,
    opts: &DecodeOptions,
) -> Result<Vec<Slot>, DecodeError> {
    let table = if tag.is_name_entity() {
        &model.ne_table
    } else {
        &model.general_table
    };
    let mut slots = Vec::new();
    for syllable in syllabify(word, &model.profile)? {
        let options = match table.candidates(&syllable.text) {
            Some(row) => row
                .iter()
                .take(opts.beam_width)
                .map(|(target, prob)| SlotOption {
                    target: target.clone(),
                    prob: *prob,
                    fallback: false,
                })
                .collect(),
            None => {
                let mut rendered = String::new();
                for letter in syllable.text.chars() {
                    match model.fallback_map.get(&letter) {
                        Some(s) => rendered.push_str(s),
                        None => {
                            return Err(DecodeError::ModelMissingTable {
                                syllable: syllable.text,
                                letter,
                            })
                        }
                    }
                }
                vec![SlotOption {
                    target: rendered,
                    prob: 1.0,
                    fallback: true,
                }]
            }
        };
        slots.push(Slot {
            source: syllable.text,
            options,
        });
    }
    Ok(slots)
}

/// Score contribution of one choice: translation probability weighted
/// against the LM probability of the transition from `prev`. Fallback
/// choices contribute nothing.
fn choice_factor(
    option: &SlotOption,
    prev: &str,
    model: &TransliterationModel,
    opts: &DecodeOptions,
) -> f64 {
    if option.fallback {
        return 1.0;
    }
    let lm_prob = model
        .lm
        .prob(prev, &option.target)
        .unwrap_or(opts.lm_epsilon);
    libm::pow(option.prob, 1.0 - opts.lm_weight) * libm::pow(lm_prob, opts.lm_weight)
}

#[derive(Clone)]
struct Partial {
    score: f64,
    path: Vec<u16>,
}

fn rank(a: &Partial, b: &Partial) -> core::cmp::Ordering {
    b.score.total_cmp(&a.score).then_with(|| a.path.cmp(&b.path))
}

/// Exact k-best search over the lattice. Paths are ranked by score,
/// ties by the per-syllable stored-order indices, so the single best
/// path is always the one built from each slot's first-listed maximum.
fn search(
    lattice: &[Slot],
    model: &TransliterationModel,
    opts: &DecodeOptions,
    k: usize,
) -> Vec<Candidate> {
    if k == 0 || lattice.is_empty() {
        return Vec::new();
    }
    // states[j]: up to k best partial paths ending at option j
    let mut states: Vec<Vec<Partial>> = lattice[0]
        .options
        .iter()
        .enumerate()
        .map(|(j, option)| {
            vec![Partial {
                score: choice_factor(option, LM_START, model, opts),
                path: vec![j as u16],
            }]
        })
        .collect();

    for (i, slot) in lattice.iter().enumerate().skip(1) {
        let prev_slot = &lattice[i - 1];
        let mut next_states: Vec<Vec<Partial>> = Vec::with_capacity(slot.options.len());
        for (j, option) in slot.options.iter().enumerate() {
            let mut merged: Vec<Partial> = Vec::new();
            for (jp, prev_option) in prev_slot.options.iter().enumerate() {
                let factor = choice_factor(option, &prev_option.target, model, opts);
                for partial in &states[jp] {
                    let mut path = partial.path.clone();
                    path.push(j as u16);
                    merged.push(Partial {
                        score: partial.score * factor,
                        path,
                    });
                }
            }
            merged.sort_by(rank);
            merged.truncate(k);
            next_states.push(merged);
        }
        states = next_states;
    }

    let last_slot = lattice.last().expect("non-empty lattice");
    let mut finals: Vec<Partial> = Vec::new();
    for (j, option) in last_slot.options.iter().enumerate() {
        let end_prob = model
            .lm
            .prob(&option.target, LM_END)
            .unwrap_or(opts.lm_epsilon);
        let end_factor = libm::pow(end_prob, opts.lm_weight);
        for partial in &states[j] {
            finals.push(Partial {
                score: partial.score * end_factor,
                path: partial.path.clone(),
            });
        }
    }
    finals.sort_by(rank);
    finals.truncate(k);

    finals
        .into_iter()
        .map(|partial| {
            let choices: Vec<SyllableChoice> = partial
                .path
                .iter()
                .zip(lattice)
                .map(|(&j, slot)| {
                    let option = &slot.options[j as usize];
                    SyllableChoice {
                        source: slot.source.clone(),
                        target: option.target.clone(),
                        prob: option.prob,
                        from_fallback: option.fallback,
                    }
                })
                .collect();
            let degraded = choices.iter().any(|c| c.from_fallback);
            Candidate {
                choices,
                score: partial.score,
                degraded,
            }
        })
        .collect()
}

/// Transliterates one word under the given entity tag, returning the
/// best-scoring candidate.
pub fn transliterate_word(
    word: &str,
    tag: EntityCategory,
    model: &TransliterationModel,
    opts: &DecodeOptions,
) -> Result<Candidate, DecodeError> {
    let mut best = top_k(word, tag, model, opts, 1)?;
    Ok(best.pop().expect("non-empty word yields a candidate"))
}

/// The k best candidates from the beam lattice, highest score first.
/// Fewer than k are returned when the lattice is smaller.
pub fn top_k(
    word: &str,
    tag: EntityCategory,
    model: &TransliterationModel,
    opts: &DecodeOptions,
    k: usize,
) -> Result<Vec<Candidate>, DecodeError> {
    opts.validate()?;
    let lattice = build_lattice(word, tag, model, opts)?;
    Ok(search(&lattice, model, opts, k))
}

/// Per-token record from sentence transliteration.
#[derive(Debug, Clone, PartialEq)]
pub struct TokenTrace {
    /// The token as it appeared in the input.
    pub text: String,
    /// The tag that routed table selection; `None` for echoed chunks
    /// that never reached tagging.
    pub tag: Option<EntityCategory>,
    pub outcome: TokenOutcome,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TokenOutcome {
    Decoded(Candidate),
    /// The token was passed through unchanged, with the reason.
    Echoed(String),
}

/// Transliterates a whole sentence: tokenize, tag, decode each token
/// with the table its tag selects, and join with single spaces. A
/// token that cannot be decoded is echoed unchanged and the error
/// recorded in its trace, so one bad token never fails the sentence.
pub fn transliterate_sentence(
    text: &str,
    model: &TransliterationModel,
    gazetteer: &crate::ner::Gazetteer,
    opts: &DecodeOptions,
) -> (String, Vec<TokenTrace>) {
    let chunks: Vec<&str> = text.split_whitespace().collect();
    let chunk_runs: Vec<Vec<String>> = chunks.iter().map(|c| alphabetic_runs(c)).collect();
    let all_tokens: Vec<String> = chunk_runs.iter().flatten().cloned().collect();
    let tagged = tag_tokens(&all_tokens, gazetteer);

    let mut traces = Vec::new();
    let mut pieces: Vec<String> = Vec::new();
    let mut cursor = 0;
    for (chunk, runs) in chunks.iter().zip(&chunk_runs) {
        if runs.is_empty() {
            traces.push(TokenTrace {
                text: chunk.to_string(),
                tag: None,
                outcome: TokenOutcome::Echoed("no alphabetic characters".to_string()),
            });
            pieces.push(chunk.to_string());
            continue;
        }
        for run in runs {
            let tag = tagged[cursor].tag;
            cursor += 1;
            match transliterate_word(run, tag, model, opts) {
                Ok(candidate) => {
                    pieces.push(candidate.target());
                    traces.push(TokenTrace {
                        text: run.clone(),
                        tag: Some(tag),
                        outcome: TokenOutcome::Decoded(candidate),
                    });
                }
                Err(e) => {
                    pieces.push(run.clone());
                    traces.push(TokenTrace {
                        text: run.clone(),
                        tag: Some(tag),
                        outcome: TokenOutcome::Echoed(e.to_string()),
                    });
                }
            }
        }
    }
    (pieces.join(" "), traces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{
        default_fallback_map, BigramLM, TranslationTable, MODEL_VERSION, ROW_SUM_TOLERANCE,
    };
    use crate::ner::Gazetteer;
    use crate::script::ScriptProfile;
    use alloc::collections::BTreeMap;

    fn table(rows: &[(&str, &[(&str, f64)])]) -> TranslationTable {
        TranslationTable::from_probs(
            rows.iter().map(|(s, cands)| {
                (
                    s.to_string(),
                    cands
                        .iter()
                        .map(|(t, p)| (t.to_string(), *p))
                        .collect::<Vec<_>>(),
                )
            }),
            ROW_SUM_TOLERANCE,
        )
        .unwrap()
    }

    fn model(ne: TranslationTable, general: TranslationTable, lm: BigramLM) -> TransliterationModel {
        TransliterationModel {
            profile: ScriptProfile::default(),
            ne_table: ne,
            general_table: general,
            lm,
            fallback_map: default_fallback_map(),
            version: MODEL_VERSION,
        }
    }

    fn kunal_model() -> TransliterationModel {
        let ne = table(&[
            ("ku", &[("ਕੁ", 0.8797654), ("ਕ", 0.1202346)]),
            ("nal", &[("ਨਲ", 0.7333333), ("ਨ", 0.2666667)]),
        ]);
        let lm = BigramLM::from_sequences(vec![vec!["ਕੁ".to_string(), "ਨਲ".to_string()]]).unwrap();
        model(ne, TranslationTable::default(), lm)
    }

    #[test]
    fn kunal_final_score() {
        let m = kunal_model();
        let c = transliterate_word("kunal", EntityCategory::Person, &m, &DecodeOptions::default())
            .unwrap();
        assert_eq!(c.target(), "ਕੁਨਲ");
        assert!(libm::fabs(c.score - 0.64516127) < 1e-6, "score {}", c.score);
        assert!(!c.degraded);
    }

    #[test]
    fn product_of_ones_scores_one() {
        let ne = table(&[("ku", &[("ਕੁ", 1.0)]), ("nal", &[("ਨਲ", 1.0)])]);
        let m = model(ne, TranslationTable::default(), BigramLM::default());
        let c = transliterate_word("kunal", EntityCategory::Person, &m, &DecodeOptions::default())
            .unwrap();
        assert_eq!(c.score, 1.0);
    }

    #[test]
    fn unseen_word_falls_back_per_letter() {
        let m = model(
            TranslationTable::default(),
            TranslationTable::default(),
            BigramLM::default(),
        );
        let c = transliterate_word("xq", EntityCategory::Other, &m, &DecodeOptions::default())
            .unwrap();
        assert!(c.degraded);
        assert_eq!(c.target(), "ਕਸਕ");
        assert_eq!(c.choices.len(), 1); // "xq" is one vowel-less syllable
        assert!(c.choices[0].from_fallback);
    }

    #[test]
    fn missing_fallback_letter_is_an_error() {
        let mut m = model(
            TranslationTable::default(),
            TranslationTable::default(),
            BigramLM::default(),
        );
        m.fallback_map = BTreeMap::new();
        let err = transliterate_word("ab", EntityCategory::Other, &m, &DecodeOptions::default())
            .unwrap_err();
        assert!(matches!(err, DecodeError::ModelMissingTable { .. }));
    }

    #[test]
    fn tag_routes_table_selection() {
        let ne = table(&[("na", &[("ਨਾ", 1.0)])]);
        let general = table(&[("na", &[("ਣਾ", 1.0)])]);
        let m = model(ne, general, BigramLM::default());
        let opts = DecodeOptions::default();
        let person = transliterate_word("na", EntityCategory::Person, &m, &opts).unwrap();
        let other = transliterate_word("na", EntityCategory::Other, &m, &opts).unwrap();
        assert_eq!(person.target(), "ਨਾ");
        assert_eq!(other.target(), "ਣਾ");
    }

    #[test]
    fn top_k_orders_all_products() {
        let ne = table(&[
            ("ku", &[("ਕੁ", 0.6), ("ਕ", 0.4)]),
            ("nal", &[("ਨਲ", 0.7), ("ਨ", 0.3)]),
        ]);
        let m = model(ne, TranslationTable::default(), BigramLM::default());
        let opts = DecodeOptions::default();
        let cands = top_k("kunal", EntityCategory::Person, &m, &opts, 4).unwrap();
        let scores: Vec<f64> = cands.iter().map(|c| c.score).collect();
        for (got, want) in scores.iter().zip([0.42, 0.28, 0.18, 0.12]) {
            assert!(libm::fabs(got - want) < 1e-12, "{got} vs {want}");
        }
        assert_eq!(cands[0].target(), "ਕੁਨਲ");
        // asking for more than the lattice holds returns everything
        let all = top_k("kunal", EntityCategory::Person, &m, &opts, 99).unwrap();
        assert_eq!(all.len(), 4);
    }

    #[test]
    fn top_one_equals_transliterate_word() {
        let m = kunal_model();
        for lm_weight in [0.0, 0.3, 1.0] {
            let opts = DecodeOptions {
                lm_weight,
                ..DecodeOptions::default()
            };
            let word =
                transliterate_word("kunal", EntityCategory::Person, &m, &opts).unwrap();
            let k1 = top_k("kunal", EntityCategory::Person, &m, &opts, 1).unwrap();
            assert_eq!(k1.len(), 1);
            assert_eq!(k1[0], word);
        }
    }

    #[test]
    fn lm_weight_uses_boundary_markers() {
        // two targets with equal translation probability; the LM has
        // only seen one of them, so any nonzero weight must prefer it
        let ne = table(&[("na", &[("ਠ", 0.5), ("ਨਾ", 0.5)])]);
        let lm = BigramLM::from_sequences(vec![vec!["ਨਾ".to_string()]]).unwrap();
        let m = model(ne, TranslationTable::default(), lm);
        let zero = transliterate_word(
            "na",
            EntityCategory::Person,
            &m,
            &DecodeOptions::default(),
        )
        .unwrap();
        // pure product: tie broken by codepoint order
        assert_eq!(zero.target(), "ਠ");
        let weighted = transliterate_word(
            "na",
            EntityCategory::Person,
            &m,
            &DecodeOptions {
                lm_weight: 0.5,
                ..DecodeOptions::default()
            },
        )
        .unwrap();
        assert_eq!(weighted.target(), "ਨਾ");
    }

    #[test]
    fn invalid_options_rejected() {
        let m = kunal_model();
        for bad in [
            DecodeOptions {
                lm_weight: -0.1,
                ..DecodeOptions::default()
            },
            DecodeOptions {
                lm_weight: 1.5,
                ..DecodeOptions::default()
            },
            DecodeOptions {
                beam_width: 0,
                ..DecodeOptions::default()
            },
            DecodeOptions {
                lm_epsilon: 0.0,
                ..DecodeOptions::default()
            },
        ] {
            assert!(matches!(
                transliterate_word("kunal", EntityCategory::Person, &m, &bad),
                Err(DecodeError::InvalidOptions(_))
            ));
        }
    }

    #[test]
    fn sentence_echoes_undecodable_tokens() {
        let m = model(
            table(&[("na", &[("ਨਾ", 1.0)])]),
            table(&[("na", &[("ਣਾ", 1.0)])]),
            BigramLM::default(),
        );
        let (out, traces) =
            transliterate_sentence("na 42 na", &m, &Gazetteer::empty(), &DecodeOptions::default());
        assert_eq!(out, "ਣਾ 42 ਣਾ");
        assert_eq!(traces.len(), 3);
        assert_eq!(traces[1].text, "42");
        assert!(matches!(traces[1].outcome, TokenOutcome::Echoed(_)));
        assert_eq!(traces[1].tag, None);
    }

    #[test]
    fn empty_sentence() {
        let m = kunal_model();
        let (out, traces) =
            transliterate_sentence("", &m, &Gazetteer::empty(), &DecodeOptions::default());
        assert_eq!(out, "");
        assert!(traces.is_empty());
    }
}
