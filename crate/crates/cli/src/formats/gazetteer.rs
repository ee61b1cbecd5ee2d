//! Gazetteer word lists: one word per line, `#` comments, UTF-8.

use std::io::BufRead;
use std::path::Path;

use translit_core::ner::Gazetteer;

fn read_word_list(path: &Path) -> std::io::Result<Vec<String>> {
    let file = std::fs::File::open(path)?;
    let mut words = Vec::new();
    for line in std::io::BufReader::new(file).lines() {
        let line = line?;
        let word = line.trim();
        if word.is_empty() || word.starts_with('#') {
            continue;
        }
        words.push(word.to_string());
    }
    Ok(words)
}

/// Loads the person and location lists; either may be absent. Returns
/// the gazetteer together with conflict warnings (a word in both lists
/// resolves to person).
pub fn load_gazetteer(
    persons: Option<&Path>,
    locations: Option<&Path>,
) -> std::io::Result<(Gazetteer, Vec<String>)> {
    let persons = match persons {
        Some(p) => read_word_list(p)?,
        None => Vec::new(),
    };
    let locations = match locations {
        Some(p) => read_word_list(p)?,
        None => Vec::new(),
    };
    Ok(Gazetteer::new(persons, locations))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn loads_lists_and_reports_conflicts() {
        let dir = tempfile::tempdir().unwrap();
        let persons = dir.path().join("persons.txt");
        let locations = dir.path().join("locations.txt");
        std::fs::write(&persons, "# people\nTeena\nkunal\n\n").unwrap();
        let mut f = std::fs::File::create(&locations).unwrap();
        writeln!(f, "haryana\nkunal").unwrap();
        drop(f);

        let (gaz, warnings) =
            load_gazetteer(Some(&persons), Some(&locations)).unwrap();
        assert!(gaz.is_person("teena"));
        assert!(gaz.is_person("kunal"));
        assert!(gaz.is_location("haryana"));
        assert!(!gaz.is_location("kunal"));
        assert_eq!(warnings.len(), 1);
    }
}
