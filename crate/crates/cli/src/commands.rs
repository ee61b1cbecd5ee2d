use std::io::{BufRead, BufWriter, Write};
use std::path::{Path, PathBuf};

use translit_core::corpus::{train_bigram, train_translation, EntityCategory, ParallelEntry};
use translit_core::decoder::{
    top_k, transliterate_sentence, transliterate_word, Candidate, DecodeOptions, TokenOutcome,
};
use translit_core::eval::{evaluate_corpus, EvalReport, TagMode};
use translit_core::model::{default_fallback_map, TransliterationModel, MODEL_VERSION};
use translit_core::ner::{tag_tokens, tokenize_sentence, Gazetteer};
use translit_core::script::ScriptProfile;
use translit_core::syllable::syllabify;

use translit_cli::formats::corpus::parse_corpus;
use translit_cli::formats::gazetteer::load_gazetteer;
use translit_cli::formats::model::{load_model, save_model};
use crate::{CliError, Command, DecodeArgs, ProfileArgs};

fn open_input(path: Option<&Path>) -> Result<Box<dyn BufRead>, CliError> {
    Ok(match path {
        Some(p) => {
            let f = std::fs::File::open(p)
                .map_err(|e| CliError::Data(format!("{}: {e}", p.display())))?;
            Box::new(std::io::BufReader::new(f))
        }
        None => Box::new(std::io::stdin().lock()),
    })
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => {
            let f = std::fs::File::create(p)
                .map_err(|e| CliError::Data(format!("{}: {e}", p.display())))?;
            Box::new(BufWriter::new(f))
        }
        None => Box::new(BufWriter::new(std::io::stdout())),
    })
}

fn build_profile(args: &ProfileArgs) -> Result<ScriptProfile, CliError> {
    if args.vowels.is_none() && args.digraphs.is_none() {
        return Ok(ScriptProfile::default());
    }
    let default = ScriptProfile::default();
    let vowels: Vec<char> = match &args.vowels {
        Some(v) => v.chars().collect(),
        None => default.vowels().iter().copied().collect(),
    };
    let digraphs: Vec<String> = match &args.digraphs {
        Some(d) => d.split(',').map(|s| s.trim().to_string()).collect(),
        None => default.digraphs().iter().map(|(a, b)| format!("{a}{b}")).collect(),
    };
    ScriptProfile::new(
        vowels,
        digraphs,
        default.merge_identical_vowels(),
        default.gurmukhi_combining().iter().copied(),
    )
    .map_err(|e| CliError::Usage(format!("bad profile override: {e}")))
}

fn decode_options(args: &DecodeArgs) -> Result<DecodeOptions, CliError> {
    if !(0.0..=1.0).contains(&args.lm_weight) {
        return Err(CliError::Usage(format!(
            "--lm-weight {} is outside [0, 1]",
            args.lm_weight
        )));
    }
    if args.beam == 0 {
        return Err(CliError::Usage("--beam must be at least 1".into()));
    }
    Ok(DecodeOptions {
        lm_weight: args.lm_weight,
        beam_width: args.beam,
        ..DecodeOptions::default()
    })
}

fn load_gazetteer_warned(
    persons: Option<&Path>,
    locations: Option<&Path>,
) -> Result<Gazetteer, CliError> {
    let (gazetteer, warnings) = load_gazetteer(persons, locations)?;
    for w in warnings {
        eprintln!("warning: {w}");
    }
    Ok(gazetteer)
}

pub fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Train {
            corpus,
            out,
            persons,
            locations,
            profile,
        } => train(&corpus, &out, persons.as_deref(), locations.as_deref(), &profile),
        Command::Syllabify { input, out, profile } => {
            syllabify_lines(input.as_deref(), out.as_deref(), &profile)
        }
        Command::Tag {
            persons,
            locations,
            input,
            out,
        } => tag_lines(&persons, &locations, input.as_deref(), out.as_deref()),
        Command::Transliterate {
            model,
            persons,
            locations,
            decode,
            nbest,
            words,
            sentences: _,
            tag,
            show_syllables,
            input,
            out,
        } => transliterate_lines(TransliterateConfig {
            model,
            persons,
            locations,
            decode,
            nbest,
            words,
            tag: tag.map(EntityCategory::from),
            show_syllables,
            input,
            out,
        }),
        Command::Evaluate {
            model,
            test,
            predicted_tags,
            persons,
            locations,
            rows,
            decode,
            out,
        } => evaluate(
            &model,
            &test,
            predicted_tags,
            persons.as_deref(),
            locations.as_deref(),
            rows.as_deref(),
            &decode,
            out.as_deref(),
        ),
    }
}

fn train(
    corpus_path: &Path,
    out_path: &Path,
    persons: Option<&Path>,
    locations: Option<&Path>,
    profile_args: &ProfileArgs,
) -> Result<(), CliError> {
    let profile = build_profile(profile_args)?;
    let reader = open_input(Some(corpus_path))?;
    let mut entries = parse_corpus(reader, &profile)?;

    if persons.is_some() || locations.is_some() {
        let gazetteer = load_gazetteer_warned(persons, locations)?;
        let mut recategorized = 0usize;
        entries = entries
            .into_iter()
            .map(|entry| {
                let lower = entry.source().to_lowercase();
                let category = if gazetteer.is_person(&lower) {
                    EntityCategory::Person
                } else if gazetteer.is_location(&lower) {
                    EntityCategory::Location
                } else {
                    entry.category()
                };
                if category != entry.category() {
                    recategorized += 1;
                    ParallelEntry::new(
                        entry.source().to_string(),
                        entry.target().to_string(),
                        category,
                        entry.target_syllables().map(|s| s.to_vec()),
                        &profile,
                    )
                    .expect("entry was already valid")
                } else {
                    entry
                }
            })
            .collect();
        if recategorized > 0 {
            eprintln!("gazetteer recategorized {recategorized} entries");
        }
    }

    let (ne_table, general_table, stats) = train_translation(&entries, &profile)?;
    let lm = train_bigram(&entries, &profile)?;

    eprintln!(
        "name-entity table: {} entries used, {} skipped, {} pairs, {} sources",
        stats.ne.entries_used,
        stats.ne.entries_skipped,
        stats.ne.pairs,
        ne_table.len()
    );
    eprintln!(
        "general table: {} entries used, {} skipped, {} pairs, {} sources",
        stats.general.entries_used,
        stats.general.entries_skipped,
        stats.general.pairs,
        general_table.len()
    );
    if stats.general_empty {
        eprintln!("warning: general table is empty (no OTHER entries aligned)");
    }

    let model = TransliterationModel {
        profile,
        ne_table,
        general_table,
        lm,
        fallback_map: default_fallback_map(),
        version: MODEL_VERSION,
    };
    let file = std::fs::File::create(out_path)
        .map_err(|e| CliError::Data(format!("{}: {e}", out_path.display())))?;
    save_model(&model, BufWriter::new(file))?;
    eprintln!("model written to {}", out_path.display());
    Ok(())
}

fn syllabify_lines(
    input: Option<&Path>,
    out: Option<&Path>,
    profile_args: &ProfileArgs,
) -> Result<(), CliError> {
    let profile = build_profile(profile_args)?;
    let reader = open_input(input)?;
    let mut out = open_output(out)?;
    for line in reader.lines() {
        let line = line?;
        let word = line.trim();
        if word.is_empty() {
            writeln!(out)?;
            continue;
        }
        match syllabify(word, &profile) {
            Ok(syllables) => {
                let joined: Vec<&str> = syllables.iter().map(|s| s.text.as_str()).collect();
                writeln!(out, "{}", joined.join("-"))?;
            }
            Err(e) => {
                eprintln!("warning: {word:?}: {e}");
                writeln!(out, "{word}")?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn tag_lines(
    persons: &Path,
    locations: &Path,
    input: Option<&Path>,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let gazetteer = load_gazetteer_warned(Some(persons), Some(locations))?;
    let reader = open_input(input)?;
    let mut out = open_output(out)?;
    for line in reader.lines() {
        let line = line?;
        let tokens = tokenize_sentence(&line);
        for tagged in tag_tokens(&tokens, &gazetteer) {
            writeln!(out, "{}\t{}", tagged.text, tagged.tag)?;
        }
    }
    out.flush()?;
    Ok(())
}

struct TransliterateConfig {
    model: PathBuf,
    persons: Option<PathBuf>,
    locations: Option<PathBuf>,
    decode: DecodeArgs,
    nbest: Option<usize>,
    words: bool,
    tag: Option<EntityCategory>,
    show_syllables: bool,
    input: Option<PathBuf>,
    out: Option<PathBuf>,
}

fn format_score(score: f64) -> String {
    format!("{score:.8}")
}

fn syllable_trace(candidate: &Candidate) -> String {
    candidate
        .choices
        .iter()
        .map(|c| {
            if c.from_fallback {
                format!("{}={}@fallback", c.source, c.target)
            } else {
                format!("{}={}@{}", c.source, c.target, format_score(c.prob))
            }
        })
        .collect::<Vec<_>>()
        .join("\t")
}

fn warn_degraded(word: &str, candidate: &Candidate) {
    if candidate.degraded {
        let missing: Vec<&str> = candidate
            .choices
            .iter()
            .filter(|c| c.from_fallback)
            .map(|c| c.source.as_str())
            .collect();
        eprintln!(
            "warning: {word:?}: no table entry for {}; used letter fallback",
            missing.join(", ")
        );
    }
}

fn transliterate_lines(cfg: TransliterateConfig) -> Result<(), CliError> {
    if !cfg.words {
        if cfg.nbest.is_some() {
            return Err(CliError::Usage(
                "--nbest needs --words (usage: translit transliterate --model <m> --words --nbest <k>)"
                    .into(),
            ));
        }
        if cfg.tag.is_some() {
            return Err(CliError::Usage(
                "--tag needs --words (sentences are tagged by the gazetteer)".into(),
            ));
        }
    }
    if cfg.nbest.is_some() && cfg.show_syllables {
        return Err(CliError::Usage(
            "--nbest and --show-syllables cannot be combined".into(),
        ));
    }
    if cfg.nbest == Some(0) {
        return Err(CliError::Usage("--nbest must be at least 1".into()));
    }
    let opts = decode_options(&cfg.decode)?;
    let file = std::fs::File::open(&cfg.model)
        .map_err(|e| CliError::Data(format!("{}: {e}", cfg.model.display())))?;
    let model = load_model(std::io::BufReader::new(file))?;
    let gazetteer = load_gazetteer_warned(cfg.persons.as_deref(), cfg.locations.as_deref())?;
    let reader = open_input(cfg.input.as_deref())?;
    let mut out = open_output(cfg.out.as_deref())?;

    let tag = cfg.tag.unwrap_or(EntityCategory::Other);
    for line in reader.lines() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            writeln!(out)?;
            continue;
        }
        if cfg.words {
            transliterate_one_word(line, tag, &model, &opts, &cfg, &mut out)?;
        } else {
            let (output, traces) = transliterate_sentence(line, &model, &gazetteer, &opts);
            if cfg.show_syllables {
                for trace in &traces {
                    let tag = trace
                        .tag
                        .map(|t| t.to_string())
                        .unwrap_or_else(|| "-".into());
                    match &trace.outcome {
                        TokenOutcome::Decoded(c) => {
                            warn_degraded(&trace.text, c);
                            writeln!(
                                out,
                                "# {}\t{}\t{}\t{}",
                                trace.text,
                                tag,
                                c.target(),
                                format_score(c.score)
                            )?;
                        }
                        TokenOutcome::Echoed(reason) => {
                            writeln!(out, "# {}\t{}\techoed\t{}", trace.text, tag, reason)?;
                        }
                    }
                }
            } else {
                for trace in &traces {
                    match &trace.outcome {
                        TokenOutcome::Decoded(c) => warn_degraded(&trace.text, c),
                        TokenOutcome::Echoed(reason) => {
                            eprintln!("warning: {:?} echoed: {reason}", trace.text)
                        }
                    }
                }
            }
            writeln!(out, "{output}")?;
        }
    }
    out.flush()?;
    Ok(())
}

fn transliterate_one_word(
    word: &str,
    tag: EntityCategory,
    model: &TransliterationModel,
    opts: &DecodeOptions,
    cfg: &TransliterateConfig,
    out: &mut Box<dyn Write>,
) -> Result<(), CliError> {
    if let Some(k) = cfg.nbest {
        match top_k(word, tag, model, opts, k) {
            Ok(candidates) => {
                let fields: Vec<String> = candidates
                    .iter()
                    .flat_map(|c| [c.target(), format_score(c.score)])
                    .collect();
                writeln!(out, "{}", fields.join("\t"))?;
            }
            Err(e) => {
                eprintln!("warning: {word:?}: {e}");
                writeln!(out, "{word}")?;
            }
        }
        return Ok(());
    }
    match transliterate_word(word, tag, model, opts) {
        Ok(candidate) => {
            warn_degraded(word, &candidate);
            if cfg.show_syllables {
                writeln!(out, "{}\t{}", candidate.target(), syllable_trace(&candidate))?;
            } else {
                writeln!(out, "{}", candidate.target())?;
            }
        }
        Err(e) => {
            eprintln!("warning: {word:?}: {e}");
            writeln!(out, "{word}")?;
        }
    }
    Ok(())
}

fn evaluate(
    model_path: &Path,
    test_path: &Path,
    predicted_tags: bool,
    persons: Option<&Path>,
    locations: Option<&Path>,
    rows_path: Option<&Path>,
    decode: &DecodeArgs,
    out_path: Option<&Path>,
) -> Result<(), CliError> {
    let opts = decode_options(decode)?;
    let file = std::fs::File::open(model_path)
        .map_err(|e| CliError::Data(format!("{}: {e}", model_path.display())))?;
    let model = load_model(std::io::BufReader::new(file))?;
    let reader = open_input(Some(test_path))?;
    let entries = parse_corpus(reader, &model.profile)?;
    let gazetteer = load_gazetteer_warned(persons, locations)?;
    let mode = if predicted_tags {
        TagMode::Predicted
    } else {
        TagMode::Gold
    };
    let report = evaluate_corpus(&model, &entries, &gazetteer, &opts, mode)?;

    if let Some(path) = rows_path {
        let mut rows_out = open_output(Some(path))?;
        writeln!(rows_out, "# source\tgold\tpredicted\ttag\tcorrect")?;
        for row in &report.rows {
            writeln!(
                rows_out,
                "{}\t{}\t{}\t{}\t{}",
                row.source,
                row.gold,
                row.predicted.as_deref().unwrap_or("-"),
                row.tag,
                if row.correct { "yes" } else { "no" }
            )?;
        }
        rows_out.flush()?;
    }

    let mut out = open_output(out_path)?;
    write_report(&report, &mut out)?;
    out.flush()?;
    Ok(())
}

fn write_report(report: &EvalReport, out: &mut impl Write) -> std::io::Result<()> {
    fn percent(p: Option<f64>) -> String {
        match p {
            Some(p) => format!("{p:.4}%"),
            None => "-".into(),
        }
    }
    writeln!(out, "rows evaluated  {}", report.total)?;
    writeln!(out, "correct         {}", report.correct)?;
    writeln!(out, "accuracy        {}", percent(report.accuracy_percent()))?;
    writeln!(out, "skipped         {}", report.skipped)?;
    writeln!(out)?;
    writeln!(out, "{:<10} {:>7} {:>8} {:>10}", "category", "total", "correct", "accuracy")?;
    for category in [
        EntityCategory::Person,
        EntityCategory::Location,
        EntityCategory::Other,
    ] {
        let stats = report.per_category.get(&category).copied().unwrap_or_default();
        writeln!(
            out,
            "{:<10} {:>7} {:>8} {:>10}",
            category.as_str(),
            stats.total,
            stats.correct,
            percent(stats.accuracy_percent())
        )?;
    }
    Ok(())
}
