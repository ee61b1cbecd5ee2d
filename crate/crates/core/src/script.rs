//! Character-level knowledge for both scripts: Roman vowel/consonant
//! classification, consonant digraphs, identical-vowel merging, and
//! Gurmukhi akshara segmentation.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

/// Gurmukhi virama (halant); glues the following consonant into the
/// same akshara.
const VIRAMA: char = '\u{0A4D}';

/// Dependent marks of the Gurmukhi block: bindis, visarga, nukta, the
/// vowel signs, virama, udaat, tippi, addak and yakash.
const DEFAULT_GURMUKHI_COMBINING: &[char] = &[
    '\u{0A01}', '\u{0A02}', '\u{0A03}', '\u{0A3C}', '\u{0A3E}', '\u{0A3F}', '\u{0A40}',
    '\u{0A41}', '\u{0A42}', '\u{0A47}', '\u{0A48}', '\u{0A4B}', '\u{0A4C}', '\u{0A4D}',
    '\u{0A51}', '\u{0A70}', '\u{0A71}', '\u{0A75}',
];

const DEFAULT_VOWELS: &[char] = &['a', 'e', 'i', 'o', 'u'];

const DEFAULT_DIGRAPHS: &[(char, char)] = &[
    ('b', 'h'), ('c', 'h'), ('d', 'h'), ('g', 'h'), ('j', 'h'),
    ('k', 'h'), ('p', 'h'), ('s', 'h'), ('t', 'h'), ('w', 'h'),
];

pub fn is_gurmukhi(c: char) -> bool {
    ('\u{0A00}'..='\u{0A7F}').contains(&c)
}

fn is_gurmukhi_consonant(c: char) -> bool {
    matches!(c, '\u{0A15}'..='\u{0A39}' | '\u{0A59}'..='\u{0A5C}' | '\u{0A5E}')
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScriptError {
    #[error("empty word")]
    EmptyWord,
    #[error("non-Roman character {ch:?} at index {index}")]
    NonRomanCharacter { ch: char, index: usize },
    #[error("non-Gurmukhi character {ch:?} at index {index}")]
    NonGurmukhiCharacter { ch: char, index: usize },
    #[error("combining mark at index {index} has no base character")]
    LeadingCombiningMark { index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfileError {
    #[error("vowel {0:?} is not a lowercase ASCII letter")]
    MalformedVowel(char),
    #[error("digraph {0:?} is not two lowercase ASCII letters")]
    MalformedDigraph(String),
    #[error("digraph {0:?} starts with a vowel")]
    DigraphStartsWithVowel(String),
    #[error("duplicate digraph {0:?}")]
    DuplicateDigraph(String),
    #[error("combining mark {0:?} is outside the Gurmukhi block")]
    CombiningOutsideGurmukhi(char),
}

/// Classification of a single scalar under a [`ScriptProfile`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharClass {
    Vowel,
    Consonant,
    NonLetter,
}

/// Character classes, digraphs and merge rules that drive
/// syllabification on the Roman side and akshara segmentation on the
/// Gurmukhi side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScriptProfile {
    vowels: BTreeSet<char>,
    digraphs: BTreeSet<(char, char)>,
    merge_identical_vowels: bool,
    gurmukhi_combining: BTreeSet<char>,
}

impl Default for ScriptProfile {
    fn default() -> Self {
        ScriptProfile {
            vowels: DEFAULT_VOWELS.iter().copied().collect(),
            digraphs: DEFAULT_DIGRAPHS.iter().copied().collect(),
            merge_identical_vowels: true,
            gurmukhi_combining: DEFAULT_GURMUKHI_COMBINING.iter().copied().collect(),
        }
    }
}

impl ScriptProfile {
    /// Builds a validated profile. Digraphs are given as two-letter
    /// strings; `combining` as scalars from the Gurmukhi block.
    pub fn new<V, D, C>(
        vowels: V,
        digraphs: D,
        merge_identical_vowels: bool,
        combining: C,
    ) -> Result<Self, ProfileError>
    where
        V: IntoIterator<Item = char>,
        D: IntoIterator<Item = String>,
        C: IntoIterator<Item = char>,
    {
        let mut vowel_set = BTreeSet::new();
        for v in vowels {
            if !v.is_ascii_lowercase() {
                return Err(ProfileError::MalformedVowel(v));
            }
            vowel_set.insert(v);
        }
        let mut digraph_set = BTreeSet::new();
        for d in digraphs {
            let mut chars = d.chars();
            let pair = match (chars.next(), chars.next(), chars.next()) {
                (Some(a), Some(b), None) if a.is_ascii_lowercase() && b.is_ascii_lowercase() => {
                    (a, b)
                }
                _ => return Err(ProfileError::MalformedDigraph(d)),
            };
            if vowel_set.contains(&pair.0) {
                return Err(ProfileError::DigraphStartsWithVowel(d));
            }
            if !digraph_set.insert(pair) {
                return Err(ProfileError::DuplicateDigraph(d));
            }
        }
        let mut combining_set = BTreeSet::new();
        for c in combining {
            if !is_gurmukhi(c) {
                return Err(ProfileError::CombiningOutsideGurmukhi(c));
            }
            combining_set.insert(c);
        }
        Ok(ScriptProfile {
            vowels: vowel_set,
            digraphs: digraph_set,
            merge_identical_vowels,
            gurmukhi_combining: combining_set,
        })
    }

    pub fn vowels(&self) -> &BTreeSet<char> {
        &self.vowels
    }

    pub fn digraphs(&self) -> &BTreeSet<(char, char)> {
        &self.digraphs
    }

    pub fn merge_identical_vowels(&self) -> bool {
        self.merge_identical_vowels
    }

    pub fn gurmukhi_combining(&self) -> &BTreeSet<char> {
        &self.gurmukhi_combining
    }

    pub fn is_combining(&self, c: char) -> bool {
        self.gurmukhi_combining.contains(&c)
    }

    fn is_digraph(&self, a: char, b: char) -> bool {
        self.digraphs.contains(&(a, b))
    }
}

/// One or two Roman letters acting as a single segmentation unit: a
/// consonant letter, a consonant digraph, or a (possibly merged) vowel
/// run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Unit {
    pub text: String,
    pub class: CharClass,
}

/// Total classification: vowel if the lowercased scalar is in the
/// profile's vowel set, consonant for any other ASCII letter,
/// non-letter otherwise.
pub fn classify_char(c: char, profile: &ScriptProfile) -> CharClass {
    let lc = c.to_ascii_lowercase();
    if !lc.is_ascii_alphabetic() {
        CharClass::NonLetter
    } else if profile.vowels.contains(&lc) {
        CharClass::Vowel
    } else {
        CharClass::Consonant
    }
}

/// Splits a Roman word into units: greedy left-to-right scan matching
/// a digraph where one applies, one letter otherwise, then a merge
/// pass fusing runs of the identical vowel letter. Concatenating the
/// unit texts reproduces the lowercased input.
pub fn tokenize_units(word: &str, profile: &ScriptProfile) -> Result<Vec<Unit>, ScriptError> {
    if word.is_empty() {
        return Err(ScriptError::EmptyWord);
    }
    let mut letters = Vec::with_capacity(word.len());
    for (index, ch) in word.chars().enumerate() {
        if !ch.is_ascii_alphabetic() {
            return Err(ScriptError::NonRomanCharacter { ch, index });
        }
        letters.push(ch.to_ascii_lowercase());
    }

    let mut units: Vec<Unit> = Vec::new();
    let mut i = 0;
    while i < letters.len() {
        if i + 1 < letters.len() && profile.is_digraph(letters[i], letters[i + 1]) {
            let mut text = String::new();
            text.push(letters[i]);
            text.push(letters[i + 1]);
            units.push(Unit {
                text,
                class: CharClass::Consonant,
            });
            i += 2;
        } else {
            let class = classify_char(letters[i], profile);
            let mut text = String::new();
            text.push(letters[i]);
            units.push(Unit { text, class });
            i += 1;
        }
    }

    if profile.merge_identical_vowels {
        let mut merged: Vec<Unit> = Vec::with_capacity(units.len());
        for unit in units {
            match merged.last_mut() {
                Some(prev)
                    if prev.class == CharClass::Vowel
                        && unit.class == CharClass::Vowel
                        && prev.text.ends_with(unit.text.as_str()) =>
                {
                    prev.text.push_str(&unit.text);
                }
                _ => merged.push(unit),
            }
        }
        units = merged;
    }
    Ok(units)
}

/// Splits a Gurmukhi word into aksharas: each base scalar starts a new
/// akshara, combining marks attach to the previous one, and a virama
/// glues the following consonant into the same akshara.
pub fn segment_aksharas(word: &str, profile: &ScriptProfile) -> Result<Vec<String>, ScriptError> {
    if word.is_empty() {
        return Err(ScriptError::EmptyWord);
    }
    let mut aksharas: Vec<String> = Vec::new();
    let mut glue_next = false;
    for (index, ch) in word.chars().enumerate() {
        if !is_gurmukhi(ch) {
            return Err(ScriptError::NonGurmukhiCharacter { ch, index });
        }
        if profile.is_combining(ch) {
            match aksharas.last_mut() {
                Some(last) => last.push(ch),
                None => return Err(ScriptError::LeadingCombiningMark { index }),
            }
            glue_next = ch == VIRAMA;
        } else if glue_next && is_gurmukhi_consonant(ch) {
            aksharas
                .last_mut()
                .expect("virama implies a preceding akshara")
                .push(ch);
            glue_next = false;
        } else {
            let mut akshara = String::new();
            akshara.push(ch);
            aksharas.push(akshara);
            glue_next = false;
        }
    }
    Ok(aksharas)
}

/// Canonical (NFC) normalization for Gurmukhi text. The block's
/// precomposed nukta letters are composition-excluded, so NFC is their
/// decomposition plus canonical ordering of the nonzero-class marks
/// (nukta, virama). ASCII and other unadorned scalars pass through.
pub fn normalize_gurmukhi(s: &str) -> String {
    fn decompose(c: char) -> &'static [char] {
        match c {
            '\u{0A33}' => &['\u{0A32}', '\u{0A3C}'],
            '\u{0A36}' => &['\u{0A38}', '\u{0A3C}'],
            '\u{0A59}' => &['\u{0A16}', '\u{0A3C}'],
            '\u{0A5A}' => &['\u{0A17}', '\u{0A3C}'],
            '\u{0A5B}' => &['\u{0A1C}', '\u{0A3C}'],
            '\u{0A5E}' => &['\u{0A2B}', '\u{0A3C}'],
            _ => &[],
        }
    }
    fn combining_class(c: char) -> u8 {
        match c {
            '\u{0A3C}' => 7,
            VIRAMA => 9,
            _ => 0,
        }
    }

    let mut chars: Vec<char> = Vec::with_capacity(s.len());
    for c in s.chars() {
        let d = decompose(c);
        if d.is_empty() {
            chars.push(c);
        } else {
            chars.extend_from_slice(d);
        }
    }
    // Canonical ordering: sort each run of nonzero-class marks, stably.
    let mut i = 1;
    while i < chars.len() {
        let a = combining_class(chars[i - 1]);
        let b = combining_class(chars[i]);
        if b != 0 && a > b {
            chars.swap(i - 1, i);
            i = i.saturating_sub(1).max(1);
        } else {
            i += 1;
        }
    }
    chars.into_iter().collect()
}
