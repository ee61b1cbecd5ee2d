//! Rule-based syllable extraction over consonant/vowel unit sequences.
//!
//! Every vowel unit is a nucleus. Word-initial consonants join the
//! first syllable, word-final consonants the last. A single consonant
//! between two nuclei becomes the onset of the following syllable; of
//! a longer cluster, the first unit closes the preceding syllable and
//! the rest open the following one. A word with no vowel at all is a
//! single all-consonant syllable.

use alloc::string::String;
use alloc::vec::Vec;

use crate::script::{tokenize_units, CharClass, ScriptError, ScriptProfile, Unit};

/// One segmented syllable with its C/V pattern and position in the
/// word. Digraphs and merged vowel runs count as one pattern symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Syllable {
    pub text: String,
    pub pattern: String,
    pub index: usize,
}

impl Syllable {
    fn from_units(units: &[Unit], index: usize) -> Self {
        let mut text = String::new();
        let mut pattern = String::new();
        for unit in units {
            text.push_str(&unit.text);
            pattern.push(match unit.class {
                CharClass::Vowel => 'V',
                _ => 'C',
            });
        }
        Syllable {
            text,
            pattern,
            index,
        }
    }
}

/// Segments a Roman word into syllables. Concatenating the syllable
/// texts reproduces the lowercased input.
pub fn syllabify(word: &str, profile: &ScriptProfile) -> Result<Vec<Syllable>, ScriptError> {
    let units = tokenize_units(word, profile)?;
    let nuclei: Vec<usize> = units
        .iter()
        .enumerate()
        .filter(|(_, u)| u.class == CharClass::Vowel)
        .map(|(i, _)| i)
        .collect();

    let last = units.len() - 1;
    let mut bounds: Vec<(usize, usize)> = Vec::with_capacity(nuclei.len().max(1));
    if nuclei.is_empty() {
        bounds.push((0, last));
    } else {
        let mut start = 0;
        for pair in nuclei.windows(2) {
            let (nucleus, next) = (pair[0], pair[1]);
            let cluster = next - nucleus - 1;
            if cluster >= 2 {
                // first consonant closes this syllable, the rest open the next
                bounds.push((start, nucleus + 1));
                start = nucleus + 2;
            } else {
                bounds.push((start, nucleus));
                start = nucleus + 1;
            }
        }
        bounds.push((start, last));
    }

    Ok(bounds
        .iter()
        .enumerate()
        .map(|(i, &(s, e))| Syllable::from_units(&units[s..=e], i))
        .collect())
}
