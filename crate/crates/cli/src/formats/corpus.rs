//! Parallel corpus file: UTF-8, one entry per line as
//! `source<TAB>target<TAB>category[<TAB>piece|piece|...]`, `#` starts
//! a comment, blank lines are skipped. Categories are PERSON,
//! LOCATION and OTHER; the optional fourth field pins the target-side
//! segmentation.

use std::io::BufRead;

use thiserror::Error;
use translit_core::corpus::{EntityCategory, EntryError, ParallelEntry};
use translit_core::script::ScriptProfile;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("line {line}: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("line {line}: unknown category {found:?}")]
    UnknownCategory { line: usize, found: String },
    #[error("line {line}: {error}")]
    Validation { line: usize, error: EntryError },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub fn parse_category(token: &str) -> Option<EntityCategory> {
    match token {
        "PERSON" => Some(EntityCategory::Person),
        "LOCATION" => Some(EntityCategory::Location),
        "OTHER" => Some(EntityCategory::Other),
        _ => None,
    }
}

/// Reads the whole corpus, in file order.
pub fn parse_corpus<R: BufRead>(
    reader: R,
    profile: &ScriptProfile,
) -> Result<Vec<ParallelEntry>, CorpusError> {
    let mut entries = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let line_no = i + 1;
        let line = line.strip_suffix('\r').unwrap_or(&line);
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let (source, target, category, pieces) = match fields.as_slice() {
            [s, t, c] => (*s, *t, *c, None),
            [s, t, c, seg] => (*s, *t, *c, Some(*seg)),
            _ => {
                return Err(CorpusError::MalformedLine {
                    line: line_no,
                    reason: format!("expected 3 or 4 tab-separated fields, got {}", fields.len()),
                })
            }
        };
        let category = parse_category(category).ok_or_else(|| CorpusError::UnknownCategory {
            line: line_no,
            found: category.to_string(),
        })?;
        let target_syllables =
            pieces.map(|seg| seg.split('|').map(str::to_string).collect::<Vec<_>>());
        let entry = ParallelEntry::new(
            source.to_string(),
            target.to_string(),
            category,
            target_syllables,
            profile,
        )
        .map_err(|error| CorpusError::Validation {
            line: line_no,
            error,
        })?;
        entries.push(entry);
    }
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    fn parse(text: &str) -> Result<Vec<ParallelEntry>, CorpusError> {
        parse_corpus(Cursor::new(text), &ScriptProfile::default())
    }

    #[test]
    fn parses_explicit_segmentation() {
        let entries = parse("kunal\tਕੁਨਲ\tPERSON\tਕੁ|ਨਲ").unwrap();
        assert_eq!(entries.len(), 1);
        assert_eq!(entries[0].source(), "kunal");
        assert_eq!(entries[0].category(), EntityCategory::Person);
        assert_eq!(
            entries[0].target_syllables().unwrap(),
            &["ਕੁ".to_string(), "ਨਲ".to_string()]
        );
    }

    #[test]
    fn skips_comments_and_blanks() {
        assert!(parse("# comment\n\n").unwrap().is_empty());
    }

    #[test]
    fn parses_without_segmentation() {
        let entries = parse("haryana\tਹਰਿਆਣਾ\tLOCATION").unwrap();
        assert_eq!(entries[0].category(), EntityCategory::Location);
        assert!(entries[0].target_syllables().is_none());
    }

    #[test]
    fn reports_malformed_lines() {
        match parse("kunal ਕੁਨਲ PERSON") {
            Err(CorpusError::MalformedLine { line: 1, .. }) => {}
            other => panic!("unexpected: {other:?}"),
        }
        match parse("kunal\tਕੁਨਲ\tNAME") {
            Err(CorpusError::UnknownCategory { line: 1, found }) => assert_eq!(found, "NAME"),
            other => panic!("unexpected: {other:?}"),
        }
        match parse("ku-nal\tਕੁਨਲ\tPERSON") {
            Err(CorpusError::Validation { line: 1, .. }) => {}
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn preserves_file_order() {
        let entries = parse("ba\tਬਾ\tPERSON\nka\tਕਾ\tOTHER\n").unwrap();
        assert_eq!(entries[0].source(), "ba");
        assert_eq!(entries[1].source(), "ka");
    }
}
