//! Gazetteer-based name-entity tagging: person/location lookup lists
//! plus a capitalization heuristic for unseen names.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::corpus::EntityCategory;

/// Lookup lists of known person and location names, lowercased. The
/// two sets are disjoint: a word appearing in both resolves to the
/// person list, with a warning reported at construction.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Gazetteer {
    persons: BTreeSet<String>,
    locations: BTreeSet<String>,
}

impl Gazetteer {
    pub fn new<P, L>(persons: P, locations: L) -> (Self, Vec<String>)
    where
        P: IntoIterator<Item = String>,
        L: IntoIterator<Item = String>,
    {
        let persons: BTreeSet<String> =
            persons.into_iter().map(|w| w.to_lowercase()).collect();
        let mut warnings = Vec::new();
        let mut location_set = BTreeSet::new();
        for word in locations {
            let word = word.to_lowercase();
            if persons.contains(&word) {
                warnings.push(format!(
                    "{word:?} listed as both person and location; keeping person"
                ));
            } else {
                location_set.insert(word);
            }
        }
        (
            Gazetteer {
                persons,
                locations: location_set,
            },
            warnings,
        )
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn is_person(&self, lower: &str) -> bool {
        self.persons.contains(lower)
    }

    pub fn is_location(&self, lower: &str) -> bool {
        self.locations.contains(lower)
    }

    pub fn person_count(&self) -> usize {
        self.persons.len()
    }

    pub fn location_count(&self) -> usize {
        self.locations.len()
    }
}

/// A sentence token with its entity tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedToken {
    pub text: String,
    pub normalized: String,
    pub tag: EntityCategory,
}

/// Maximal alphabetic runs of one whitespace-delimited chunk; interior
/// punctuation separates tokens just like the surrounding whitespace.
pub fn alphabetic_runs(chunk: &str) -> Vec<String> {
    chunk
        .split(|c: char| !c.is_alphabetic())
        .filter(|s| !s.is_empty())
        .map(|s| s.to_string())
        .collect()
}

/// Splits text into word tokens: whitespace separates, punctuation and
/// digits are stripped and likewise separate. Empty input yields an
/// empty sequence.
pub fn tokenize_sentence(text: &str) -> Vec<String> {
    text.split_whitespace().flat_map(alphabetic_runs).collect()
}

/// Tags each token: gazetteer lookup first (persons, then locations);
/// otherwise a token capitalized anywhere but sentence-initially is
/// taken for a person name; everything else is general vocabulary.
pub fn tag_tokens(tokens: &[String], gazetteer: &Gazetteer) -> Vec<TaggedToken> {
    tokens
        .iter()
        .enumerate()
        .map(|(i, token)| {
            let normalized = token.to_lowercase();
            let tag = if gazetteer.is_person(&normalized) {
                EntityCategory::Person
            } else if gazetteer.is_location(&normalized) {
                EntityCategory::Location
            } else if i > 0 && token.chars().next().is_some_and(char::is_uppercase) {
                EntityCategory::Person
            } else {
                EntityCategory::Other
            };
            TaggedToken {
                text: token.clone(),
                normalized,
                tag,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn gaz(persons: &[&str], locations: &[&str]) -> Gazetteer {
        Gazetteer::new(
            persons.iter().map(|s| s.to_string()),
            locations.iter().map(|s| s.to_string()),
        )
        .0
    }

    #[test]
    fn tokenizes_the_paper_sentence() {
        assert_eq!(
            tokenize_sentence("Teena is going to Haryana"),
            vec!["Teena", "is", "going", "to", "Haryana"]
        );
    }

    #[test]
    fn punctuation_separates() {
        assert_eq!(tokenize_sentence("hello, world!"), vec!["hello", "world"]);
        assert_eq!(tokenize_sentence("don't-stop"), vec!["don", "t", "stop"]);
        assert_eq!(tokenize_sentence(""), Vec::<String>::new());
        assert_eq!(tokenize_sentence("42 ..."), Vec::<String>::new());
    }

    #[test]
    fn tags_by_gazetteer_then_heuristic() {
        let g = gaz(&["teena"], &["haryana"]);
        let tokens = tokenize_sentence("Teena is going to Haryana");
        let tags: Vec<EntityCategory> =
            tag_tokens(&tokens, &g).into_iter().map(|t| t.tag).collect();
        assert_eq!(
            tags,
            vec![
                EntityCategory::Person,
                EntityCategory::Other,
                EntityCategory::Other,
                EntityCategory::Other,
                EntityCategory::Location,
            ]
        );
    }

    #[test]
    fn empty_gazetteer_tags_other() {
        let tokens = vec!["going".to_string()];
        let tagged = tag_tokens(&tokens, &Gazetteer::empty());
        assert_eq!(tagged[0].tag, EntityCategory::Other);
    }

    #[test]
    fn gazetteer_beats_capitalization() {
        let g = gaz(&[], &["delhi"]);
        let tokens = vec!["the".to_string(), "Delhi".to_string()];
        let tags: Vec<EntityCategory> =
            tag_tokens(&tokens, &g).into_iter().map(|t| t.tag).collect();
        assert_eq!(tags, vec![EntityCategory::Other, EntityCategory::Location]);
    }

    #[test]
    fn capitalized_mid_sentence_is_person() {
        let tokens = tokenize_sentence("met Arjun yesterday");
        let tagged = tag_tokens(&tokens, &Gazetteer::empty());
        assert_eq!(tagged[1].tag, EntityCategory::Person);
        // sentence-initial capital is not enough
        assert_eq!(
            tag_tokens(&tokenize_sentence("Arjun left"), &Gazetteer::empty())[0].tag,
            EntityCategory::Other
        );
    }

    #[test]
    fn conflicts_resolve_to_person() {
        let (g, warnings) = Gazetteer::new(
            vec!["indore".to_string()],
            vec!["indore".to_string(), "delhi".to_string()],
        );
        assert_eq!(warnings.len(), 1);
        assert!(g.is_person("indore"));
        assert!(!g.is_location("indore"));
        assert!(g.is_location("delhi"));
    }
}
