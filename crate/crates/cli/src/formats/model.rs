//! Sectioned text format for trained models.
//!
//! ```text
//! TRANSLIT-MODEL v1
//! [PROFILE]
//! vowels<TAB>aeiou
//! digraphs<TAB>bh ch dh ...
//! merge-identical-vowels<TAB>true
//! gurmukhi-combining<TAB>0A01 0A02 ...
//! [NE-TABLE]
//! source<TAB>target<TAB>probability
//! [GENERAL-TABLE]
//! ...
//! [LM]
//! start<TAB><s>
//! end<TAB></s>
//! sequences<TAB>count
//! unigram<TAB>syllable<TAB>count
//! bigram<TAB>prev<TAB>next<TAB>probability
//! [FALLBACK]
//! letter<TAB>replacement
//! ```
//!
//! Probabilities are printed with nine decimal digits, so a load of a
//! save agrees with the original within 1e-9.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use thiserror::Error;
use translit_core::model::{
    BigramLM, TranslationTable, TransliterationModel, LM_END, LM_START, MODEL_VERSION,
};
use translit_core::script::ScriptProfile;

const MAGIC: &str = "TRANSLIT-MODEL v";

/// Row-sum slack when revalidating loaded probabilities: each entry
/// carries up to 5e-10 of print rounding, so a row is allowed more
/// drift than freshly trained tables.
const LOAD_SUM_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("unsupported model version {found:?} (expected v{MODEL_VERSION})")]
    UnsupportedVersion { found: String },
    #[error("corrupt [{section}] section at line {line}: {reason}")]
    CorruptSection {
        section: String,
        line: usize,
        reason: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub fn save_model<W: Write>(model: &TransliterationModel, mut w: W) -> std::io::Result<()> {
    writeln!(w, "{MAGIC}{}", model.version)?;

    writeln!(w, "[PROFILE]")?;
    let vowels: String = model.profile.vowels().iter().collect();
    writeln!(w, "vowels\t{vowels}")?;
    let digraphs: Vec<String> = model
        .profile
        .digraphs()
        .iter()
        .map(|(a, b)| format!("{a}{b}"))
        .collect();
    writeln!(w, "digraphs\t{}", digraphs.join(" "))?;
    writeln!(
        w,
        "merge-identical-vowels\t{}",
        model.profile.merge_identical_vowels()
    )?;
    let combining: Vec<String> = model
        .profile
        .gurmukhi_combining()
        .iter()
        .map(|c| format!("{:04X}", *c as u32))
        .collect();
    writeln!(w, "gurmukhi-combining\t{}", combining.join(" "))?;

    for (name, table) in [("NE-TABLE", &model.ne_table), ("GENERAL-TABLE", &model.general_table)]
    {
        writeln!(w, "[{name}]")?;
        for (source, row) in table.iter() {
            for (target, prob) in row {
                writeln!(w, "{source}\t{target}\t{prob:.9}")?;
            }
        }
    }

    writeln!(w, "[LM]")?;
    writeln!(w, "start\t{LM_START}")?;
    writeln!(w, "end\t{LM_END}")?;
    writeln!(w, "sequences\t{}", model.lm.sequence_count())?;
    for (syl, count) in model.lm.iter_unigrams() {
        writeln!(w, "unigram\t{syl}\t{count}")?;
    }
    for (prev, next, prob) in model.lm.iter_bigrams() {
        writeln!(w, "bigram\t{prev}\t{next}\t{prob:.9}")?;
    }

    writeln!(w, "[FALLBACK]")?;
    for (letter, replacement) in &model.fallback_map {
        writeln!(w, "{letter}\t{replacement}")?;
    }
    Ok(())
}

#[derive(Default)]
struct ProfileFields {
    vowels: Option<String>,
    digraphs: Option<Vec<String>>,
    merge: Option<bool>,
    combining: Option<Vec<char>>,
}

struct Loader {
    section: String,
    line: usize,
    profile: ProfileFields,
    ne_rows: BTreeMap<String, Vec<(String, f64)>>,
    general_rows: BTreeMap<String, Vec<(String, f64)>>,
    bigram: BTreeMap<(String, String), f64>,
    unigrams: BTreeMap<String, u64>,
    sequences: Option<u64>,
    fallback: BTreeMap<char, String>,
    seen: Vec<String>,
}

impl Loader {
    fn corrupt(&self, reason: impl Into<String>) -> ModelError {
        ModelError::CorruptSection {
            section: self.section.clone(),
            line: self.line,
            reason: reason.into(),
        }
    }

    fn parse_prob(&self, s: &str) -> Result<f64, ModelError> {
        let p: f64 = s
            .parse()
            .map_err(|_| self.corrupt(format!("bad probability {s:?}")))?;
        if !(p > 0.0 && p <= 1.0) {
            return Err(self.corrupt(format!("probability {p} outside (0, 1]")));
        }
        Ok(p)
    }

    fn parse_count(&self, s: &str) -> Result<u64, ModelError> {
        s.parse()
            .map_err(|_| self.corrupt(format!("bad count {s:?}")))
    }
}

pub fn load_model<R: BufRead>(reader: R) -> Result<TransliterationModel, ModelError> {
    let mut lines = reader.lines();
    let header = match lines.next() {
        Some(line) => line?,
        None => {
            return Err(ModelError::CorruptSection {
                section: "header".into(),
                line: 1,
                reason: "empty stream".into(),
            })
        }
    };
    let header = header.strip_suffix('\r').unwrap_or(&header);
    match header.strip_prefix(MAGIC) {
        Some(v) if v == MODEL_VERSION.to_string() => {}
        Some(_) => {
            return Err(ModelError::UnsupportedVersion {
                found: header.to_string(),
            })
        }
        None => {
            return Err(ModelError::CorruptSection {
                section: "header".into(),
                line: 1,
                reason: format!("expected {MAGIC:?} header, got {header:?}"),
            })
        }
    }

    let mut st = Loader {
        section: String::new(),
        line: 1,
        profile: ProfileFields::default(),
        ne_rows: BTreeMap::new(),
        general_rows: BTreeMap::new(),
        bigram: BTreeMap::new(),
        unigrams: BTreeMap::new(),
        sequences: None,
        fallback: BTreeMap::new(),
        seen: Vec::new(),
    };

    for line in lines {
        let line = line?;
        st.line += 1;
        let line = line.strip_suffix('\r').unwrap_or(&line).to_string();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            match name {
                "PROFILE" | "NE-TABLE" | "GENERAL-TABLE" | "LM" | "FALLBACK" => {
                    if st.seen.iter().any(|s| s == name) {
                        return Err(st.corrupt(format!("duplicate section [{name}]")));
                    }
                    st.seen.push(name.to_string());
                    st.section = name.to_string();
                }
                _ => return Err(st.corrupt(format!("unknown section [{name}]"))),
            }
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        match st.section.as_str() {
            "PROFILE" => match fields.as_slice() {
                ["vowels", v] => st.profile.vowels = Some(v.to_string()),
                ["digraphs", d] => {
                    st.profile.digraphs =
                        Some(d.split_whitespace().map(str::to_string).collect())
                }
                ["merge-identical-vowels", b] => {
                    st.profile.merge = Some(b.parse().map_err(|_| {
                        st.corrupt(format!("bad boolean {b:?}"))
                    })?)
                }
                ["gurmukhi-combining", list] => {
                    let mut chars = Vec::new();
                    for hex in list.split_whitespace() {
                        let cp = u32::from_str_radix(hex, 16)
                            .map_err(|_| st.corrupt(format!("bad codepoint {hex:?}")))?;
                        let c = char::from_u32(cp)
                            .ok_or_else(|| st.corrupt(format!("bad codepoint {hex:?}")))?;
                        chars.push(c);
                    }
                    st.profile.combining = Some(chars);
                }
                _ => return Err(st.corrupt(format!("unrecognized profile line {line:?}"))),
            },
            "NE-TABLE" | "GENERAL-TABLE" => match fields.as_slice() {
                [source, target, prob] => {
                    let p = st.parse_prob(prob)?;
                    let rows = if st.section == "NE-TABLE" {
                        &mut st.ne_rows
                    } else {
                        &mut st.general_rows
                    };
                    rows.entry(source.to_string())
                        .or_default()
                        .push((target.to_string(), p));
                }
                _ => return Err(st.corrupt("expected source<TAB>target<TAB>probability")),
            },
            "LM" => match fields.as_slice() {
                ["start", m] if *m == LM_START => {}
                ["end", m] if *m == LM_END => {}
                ["start", m] | ["end", m] => {
                    return Err(st.corrupt(format!("unsupported boundary marker {m:?}")))
                }
                ["sequences", n] => st.sequences = Some(st.parse_count(n)?),
                ["unigram", syl, n] => {
                    let n = st.parse_count(n)?;
                    st.unigrams.insert(syl.to_string(), n);
                }
                ["bigram", prev, next, prob] => {
                    let p = st.parse_prob(prob)?;
                    st.bigram.insert((prev.to_string(), next.to_string()), p);
                }
                _ => return Err(st.corrupt(format!("unrecognized LM line {line:?}"))),
            },
            "FALLBACK" => match fields.as_slice() {
                [letter, replacement] if letter.chars().count() == 1 => {
                    st.fallback
                        .insert(letter.chars().next().unwrap(), replacement.to_string());
                }
                _ => return Err(st.corrupt("expected letter<TAB>replacement")),
            },
            _ => return Err(st.corrupt(format!("record before any section: {line:?}"))),
        }
    }

    for required in ["PROFILE", "NE-TABLE", "GENERAL-TABLE", "LM", "FALLBACK"] {
        if !st.seen.iter().any(|s| s == required) {
            st.section = required.to_string();
            return Err(st.corrupt("section missing"));
        }
    }

    st.section = "PROFILE".into();
    let vowels = st.profile.vowels.take().ok_or_else(|| st.corrupt("missing vowels"))?;
    let digraphs = st
        .profile
        .digraphs
        .take()
        .ok_or_else(|| st.corrupt("missing digraphs"))?;
    let merge = st.profile.merge.take().ok_or_else(|| st.corrupt("missing merge flag"))?;
    let combining = st
        .profile
        .combining
        .take()
        .ok_or_else(|| st.corrupt("missing combining set"))?;
    let profile = ScriptProfile::new(vowels.chars(), digraphs, merge, combining)
        .map_err(|e| st.corrupt(format!("{e}")))?;

    st.section = "NE-TABLE".into();
    let ne_table = TranslationTable::from_probs(std::mem::take(&mut st.ne_rows), LOAD_SUM_TOLERANCE)
        .map_err(|e| st.corrupt(format!("{e}")))?;
    st.section = "GENERAL-TABLE".into();
    let general_table =
        TranslationTable::from_probs(std::mem::take(&mut st.general_rows), LOAD_SUM_TOLERANCE)
            .map_err(|e| st.corrupt(format!("{e}")))?;

    st.section = "LM".into();
    if !st.bigram.is_empty() && st.sequences.is_none() {
        return Err(st.corrupt("missing sequences count"));
    }
    let sequences = st.sequences.unwrap_or(0);
    let lm = if st.bigram.is_empty() && st.unigrams.is_empty() {
        BigramLM::default()
    } else {
        BigramLM::from_parts(
            std::mem::take(&mut st.bigram),
            std::mem::take(&mut st.unigrams),
            sequences,
            LOAD_SUM_TOLERANCE,
        )
        .map_err(|e| st.corrupt(format!("{e}")))?
    };

    st.section = "FALLBACK".into();
    for letter in 'a'..='z' {
        if !st.fallback.contains_key(&letter) {
            return Err(st.corrupt(format!("fallback map missing {letter:?}")));
        }
    }

    Ok(TransliterationModel {
        profile,
        ne_table,
        general_table,
        lm,
        fallback_map: st.fallback,
        version: MODEL_VERSION,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;
    use translit_core::corpus::{train_bigram, train_translation, EntityCategory, ParallelEntry};
    use translit_core::model::default_fallback_map;

    fn sample_model() -> TransliterationModel {
        let profile = ScriptProfile::default();
        let entries: Vec<ParallelEntry> = [
            ("kunal", "ਕੁਨਲ", EntityCategory::Person),
            ("kuna", "ਕੁਨਾ", EntityCategory::Person),
            ("teena", "ਟੀਨਾ", EntityCategory::Person),
            ("to", "ਟੂ", EntityCategory::Other),
        ]
        .into_iter()
        .map(|(s, t, c)| {
            ParallelEntry::new(s.to_string(), t.to_string(), c, None, &profile).unwrap()
        })
        .collect();
        let (ne_table, general_table, _) = train_translation(&entries, &profile).unwrap();
        let lm = train_bigram(&entries, &profile).unwrap();
        TransliterationModel {
            profile,
            ne_table,
            general_table,
            lm,
            fallback_map: default_fallback_map(),
            version: MODEL_VERSION,
        }
    }

    #[test]
    fn round_trip_preserves_model() {
        let model = sample_model();
        let mut buf = Vec::new();
        save_model(&model, &mut buf).unwrap();
        let loaded = load_model(Cursor::new(&buf)).unwrap();
        assert!(loaded.approx_eq(&model, 1e-9));
    }

    #[test]
    fn rejects_future_version() {
        let err = load_model(Cursor::new("TRANSLIT-MODEL v9\n")).unwrap_err();
        assert!(matches!(err, ModelError::UnsupportedVersion { .. }));
    }

    #[test]
    fn rejects_garbage_header() {
        let err = load_model(Cursor::new("MODEL 1\n")).unwrap_err();
        assert!(matches!(err, ModelError::CorruptSection { .. }));
    }

    #[test]
    fn rejects_truncated_lm_section() {
        let model = sample_model();
        let mut buf = Vec::new();
        save_model(&model, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        // drop everything from the first bigram line onward, leaving
        // the [LM] section without its probability rows
        let cut = text.find("bigram\t").unwrap();
        let err = load_model(Cursor::new(&text[..cut])).unwrap_err();
        match err {
            ModelError::CorruptSection { section, .. } => assert_eq!(section, "FALLBACK"),
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_probability() {
        let model = sample_model();
        let mut buf = Vec::new();
        save_model(&model, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap().replace("1.000000000", "2.0");
        let err = load_model(Cursor::new(&text)).unwrap_err();
        assert!(matches!(err, ModelError::CorruptSection { .. }));
    }

    #[test]
    fn rejects_incomplete_fallback() {
        let model = sample_model();
        let mut buf = Vec::new();
        save_model(&model, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap().replace("q\tਕ\n", "");
        let err = load_model(Cursor::new(&text)).unwrap_err();
        match err {
            ModelError::CorruptSection { section, reason, .. } => {
                assert_eq!(section, "FALLBACK");
                assert!(reason.contains('q'));
            }
            other => panic!("unexpected: {other:?}"),
        }
    }
}
