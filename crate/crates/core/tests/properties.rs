//! Property suites for the segmentation and training invariants.

use proptest::prelude::*;

use translit_core::corpus::{align_pair, train_translation, Alignment, EntityCategory, ParallelEntry};
use translit_core::script::{
    classify_char, normalize_gurmukhi, segment_aksharas, tokenize_units, CharClass, ScriptProfile,
};
use translit_core::syllable::{syllabify, Syllable};
use translit_core::Unit;

/// Independent segmenter: enumerate every contiguous partition of the
/// unit sequence and keep those satisfying the syllable rules. Panics
/// unless the rules admit exactly one partition, and returns it.
fn brute_force_syllabify(units: &[Unit]) -> Vec<Vec<Unit>> {
    fn partitions(units: &[Unit]) -> Vec<Vec<Vec<Unit>>> {
        if units.is_empty() {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for head in 1..=units.len() {
            for mut rest in partitions(&units[head..]) {
                let mut parts = vec![units[..head].to_vec()];
                parts.append(&mut rest);
                out.push(parts);
            }
        }
        out
    }

    fn nucleus_split(group: &[Unit]) -> Option<(usize, usize)> {
        let vowels: Vec<usize> = group
            .iter()
            .enumerate()
            .filter(|(_, u)| u.class == CharClass::Vowel)
            .map(|(i, _)| i)
            .collect();
        match vowels.as_slice() {
            [v] => Some((*v, group.len() - 1 - *v)), // (onset len, coda len)
            _ => None,
        }
    }

    let vowel_count = units
        .iter()
        .filter(|u| u.class == CharClass::Vowel)
        .count();
    if vowel_count == 0 {
        return vec![units.to_vec()];
    }

    let mut survivors: Vec<Vec<Vec<Unit>>> = partitions(units)
        .into_iter()
        .filter(|parts| {
            let splits: Option<Vec<(usize, usize)>> =
                parts.iter().map(|g| nucleus_split(g)).collect();
            let Some(splits) = splits else { return false };
            // junction rules between consecutive syllables
            splits.windows(2).all(|w| {
                let (coda, onset) = (w[0].1, w[1].0);
                match coda + onset {
                    0 => true,
                    1 => coda == 0 && onset == 1,
                    _ => coda == 1,
                }
            })
        })
        .collect();
    assert_eq!(survivors.len(), 1, "rules must admit exactly one partition");
    survivors.remove(0)
}

fn joined(syllables: &[Syllable]) -> String {
    syllables.iter().map(|s| s.text.as_str()).collect()
}

const GURMUKHI_BASES: &[char] = &[
    'ਕ', 'ਖ', 'ਗ', 'ਚ', 'ਜ', 'ਟ', 'ਠ', 'ਡ', 'ਣ', 'ਤ', 'ਥ', 'ਦ', 'ਧ', 'ਨ', 'ਪ', 'ਫ', 'ਬ', 'ਭ',
    'ਮ', 'ਯ', 'ਰ', 'ਲ', 'ਵ', 'ਸ', 'ਹ', 'ਅ', 'ਆ', 'ਇ', 'ਈ', 'ਉ', 'ਏ', 'ਓ',
];
const GURMUKHI_MARKS: &[char] = &['ਾ', 'ਿ', 'ੀ', 'ੁ', 'ੂ', 'ੇ', 'ੈ', 'ੋ', 'ੌ', 'ੰ', 'ੱ', '਼'];

fn gurmukhi_word() -> impl Strategy<Value = String> {
    prop::collection::vec(
        (
            prop::sample::select(GURMUKHI_BASES),
            prop::option::of(prop::sample::select(GURMUKHI_MARKS)),
        ),
        1..6,
    )
    .prop_map(|pieces| {
        let mut word = String::new();
        for (base, mark) in pieces {
            word.push(base);
            if let Some(m) = mark {
                word.push(m);
            }
        }
        word
    })
}

proptest! {
    #[test]
    fn unit_concatenation_reproduces_lowercased_word(word in "[a-zA-Z]{1,16}") {
        let profile = ScriptProfile::default();
        let units = tokenize_units(&word, &profile).unwrap();
        let glued: String = units.iter().map(|u| u.text.as_str()).collect();
        prop_assert_eq!(glued, word.to_lowercase());
    }

    #[test]
    fn consonant_units_are_letters_or_digraphs(word in "[a-z]{1,16}") {
        let profile = ScriptProfile::default();
        for unit in tokenize_units(&word, &profile).unwrap() {
            match unit.class {
                CharClass::Vowel => {
                    prop_assert!(unit.text.chars().all(|c| profile.vowels().contains(&c)));
                    let first = unit.text.chars().next().unwrap();
                    prop_assert!(unit.text.chars().all(|c| c == first));
                }
                CharClass::Consonant => {
                    let chars: Vec<char> = unit.text.chars().collect();
                    match chars.as_slice() {
                        [_] => {}
                        [a, b] => prop_assert!(profile.digraphs().contains(&(*a, *b))),
                        _ => prop_assert!(false, "consonant unit too long"),
                    }
                }
                CharClass::NonLetter => prop_assert!(false, "non-letter unit"),
            }
        }
    }

    #[test]
    fn classification_is_total(c in any::<char>()) {
        let profile = ScriptProfile::default();
        // never panics, and yields exactly one of the three classes
        let class = classify_char(c, &profile);
        prop_assert!(matches!(
            class,
            CharClass::Vowel | CharClass::Consonant | CharClass::NonLetter
        ));
    }

    #[test]
    fn syllable_concatenation_reproduces_word(word in "[a-zA-Z]{1,16}") {
        let profile = ScriptProfile::default();
        let syllables = syllabify(&word, &profile).unwrap();
        prop_assert_eq!(joined(&syllables), word.to_lowercase());
    }

    #[test]
    fn syllable_patterns_have_one_nucleus(word in "[a-z]{1,16}") {
        let profile = ScriptProfile::default();
        let syllables = syllabify(&word, &profile).unwrap();
        let vowel_units = tokenize_units(&word, &profile)
            .unwrap()
            .iter()
            .filter(|u| u.class == CharClass::Vowel)
            .count();
        if vowel_units == 0 {
            prop_assert_eq!(syllables.len(), 1);
            prop_assert!(syllables[0].pattern.chars().all(|c| c == 'C'));
        } else {
            prop_assert_eq!(syllables.len(), vowel_units);
            for syl in &syllables {
                let vs = syl.pattern.chars().filter(|&c| c == 'V').count();
                prop_assert_eq!(vs, 1);
                // single V run: pattern matches C*VC*
                let trimmed = syl.pattern.trim_start_matches('C').trim_end_matches('C');
                prop_assert_eq!(trimmed, "V");
            }
        }
    }

    /// Rules 3-6 as an enumeration filter admit exactly one
    /// segmentation, and it is the one `syllabify` produces.
    #[test]
    fn syllabify_matches_enumeration_oracle(word in "[abdehs]{1,8}") {
        let profile = ScriptProfile::default();
        let units = tokenize_units(&word, &profile).unwrap();
        let expected: Vec<String> = brute_force_syllabify(&units)
            .iter()
            .map(|group| group.iter().map(|u| u.text.as_str()).collect())
            .collect();
        let actual: Vec<String> = syllabify(&word, &profile)
            .unwrap()
            .into_iter()
            .map(|s| s.text)
            .collect();
        prop_assert_eq!(actual, expected);
    }

    #[test]
    fn syllabify_is_deterministic(word in "[a-z]{1,16}") {
        let profile = ScriptProfile::default();
        prop_assert_eq!(
            syllabify(&word, &profile).unwrap(),
            syllabify(&word, &profile).unwrap()
        );
    }

    #[test]
    fn akshara_concatenation_reproduces_word(word in gurmukhi_word()) {
        let profile = ScriptProfile::default();
        let aksharas = segment_aksharas(&word, &profile).unwrap();
        prop_assert_eq!(aksharas.concat(), word);
    }

    #[test]
    fn normalization_is_idempotent(word in gurmukhi_word()) {
        let once = normalize_gurmukhi(&word);
        prop_assert_eq!(normalize_gurmukhi(&once), once);
    }

    /// Alignment is positional: as many pairs as source syllables, and
    /// the target pieces concatenate back to the target word.
    #[test]
    fn alignment_is_monotone(source in "[a-z]{1,8}", target in gurmukhi_word()) {
        let profile = ScriptProfile::default();
        let entry = ParallelEntry::new(
            source.clone(),
            target.clone(),
            EntityCategory::Person,
            None,
            &profile,
        )
        .unwrap();
        match align_pair(&entry, &profile) {
            Alignment::Aligned(pairs) => {
                let syllables = syllabify(&source, &profile).unwrap();
                prop_assert_eq!(pairs.len(), syllables.len());
                let sources: String = pairs.iter().map(|(s, _)| s.as_str()).collect();
                prop_assert_eq!(sources, source);
                let targets: String = pairs.iter().map(|(_, t)| t.as_str()).collect();
                prop_assert_eq!(targets, target);
            }
            Alignment::Skipped(_) => {
                let syllables = syllabify(&source, &profile).unwrap();
                let aksharas = segment_aksharas(&target, &profile).unwrap();
                prop_assert!(aksharas.len() < syllables.len());
            }
        }
    }
}

/// Training is order-independent: shuffling the corpus yields the same
/// tables, and every row still sums to one.
#[test]
fn training_is_order_independent() {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    let profile = ScriptProfile::default();
    let mut entries = Vec::new();
    let words: &[(&str, &str, EntityCategory)] = &[
        ("kunal", "ਕੁਨਲ", EntityCategory::Person),
        ("kunal", "ਕੁਨਲ", EntityCategory::Person),
        ("kuna", "ਕੁਨਾ", EntityCategory::Person),
        ("teena", "ਟੀਨਾ", EntityCategory::Person),
        ("haryana", "ਹਰਯਾਨਾ", EntityCategory::Location),
        ("to", "ਟੂ", EntityCategory::Other),
        ("going", "ਗੋਇੰਗ", EntityCategory::Other),
    ];
    for (s, t, c) in words {
        entries.push(
            ParallelEntry::new(s.to_string(), t.to_string(), *c, None, &profile).unwrap(),
        );
    }
    let (ne_a, gen_a, _) = train_translation(&entries, &profile).unwrap();

    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    for _ in 0..20 {
        entries.shuffle(&mut rng);
        let (ne_b, gen_b, _) = train_translation(&entries, &profile).unwrap();
        assert_eq!(ne_a, ne_b);
        assert_eq!(gen_a, gen_b);
    }

    for table in [&ne_a, &gen_a] {
        for (_, row) in table.iter() {
            let sum: f64 = row.iter().map(|(_, p)| p).sum();
            assert!((sum - 1.0).abs() <= 1e-9);
        }
    }
}
