//! Syllable-based English to Punjabi (Gurmukhi) transliteration.
//!
//! The pipeline: Roman words are split into consonant/vowel units and
//! syllabified by rule; a parallel corpus yields relative-frequency
//! syllable translation tables (separate tables for name entities and
//! general vocabulary) plus a bigram language model over target
//! syllables; the decoder picks target syllables by probability
//! product and joins them. Everything here works on in-memory data;
//! file formats and the command-line interface live in the companion
//! `translit-cli` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod corpus;
pub mod decoder;
pub mod eval;
pub mod model;
pub mod ner;
pub mod script;
pub mod syllable;

pub use corpus::{align_pair, train_bigram, train_translation, Alignment, EntityCategory, ParallelEntry};
pub use decoder::{top_k, transliterate_sentence, transliterate_word, Candidate, DecodeOptions};
pub use eval::{accuracy, evaluate_corpus, EvalReport, TagMode};
pub use model::{BigramLM, CountTable, TranslationTable, TransliterationModel};
pub use ner::{tag_tokens, tokenize_sentence, Gazetteer, TaggedToken};
pub use script::{classify_char, segment_aksharas, tokenize_units, CharClass, ScriptProfile, Unit};
pub use syllable::{syllabify, Syllable};
