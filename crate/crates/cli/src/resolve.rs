//! Turns config entries and command-line shorthand into core objects:
//! chain models, weight matrices, pattern families, and word banks.

use std::path::Path;

use raremotif_core::{
    presets, Error, MarkovModel, PalindromeVariant, PatternFamily, Pswm, Result, WordSampler,
};

use crate::config::{ModelSpec, PatternKind};

pub fn load_model(spec: &ModelSpec) -> Result<MarkovModel> {
    match spec {
        ModelSpec::Preset(name) => presets::chain_by_name(name),
        ModelSpec::File(path) => MarkovModel::from_file(path),
    }
}

/// Model argument for the quick subcommands: `preset:NAME`, a file path,
/// or a bare preset name.
pub fn load_model_arg(arg: &str) -> Result<MarkovModel> {
    if let Some(name) = arg.strip_prefix("preset:") {
        return presets::chain_by_name(name);
    }
    if Path::new(arg).is_file() {
        return MarkovModel::from_file(arg);
    }
    presets::chain_by_name(arg).map_err(|_| {
        Error::Config(format!(
            "model '{arg}' is neither a readable file nor a preset \
             (yeast, bsubtilis, uniform-dna)"
        ))
    })
}

/// Weight-matrix source: `preset:NAME`, a file path, or a bare preset name.
pub fn load_pswm(source: &str) -> Result<Pswm> {
    if let Some(name) = source.strip_prefix("preset:") {
        return presets::pswm_by_name(name);
    }
    if Path::new(source).is_file() {
        return Pswm::from_file(source);
    }
    presets::pswm_by_name(source).map_err(|_| {
        Error::Config(format!(
            "weight matrix '{source}' is neither a readable file nor a preset \
             (swi5, w-rep, w-norep)"
        ))
    })
}

pub fn family_for(model: &MarkovModel, kind: &PatternKind) -> Result<PatternFamily> {
    let alphabet = model.alphabet();
    match kind {
        PatternKind::Explicit { words, .. } => {
            let words: Vec<&str> = words.iter().map(String::as_str).collect();
            PatternFamily::explicit_from_strs(alphabet, &words)
        }
        PatternKind::Palindrome { half_len, .. } => Ok(PatternFamily::Palindrome {
            half_len: *half_len,
        }),
        PatternKind::InvertedRepeat { half_len, d1, d2 } => Ok(PatternFamily::InvertedRepeat {
            half_len: *half_len,
            d1: *d1,
            d2: *d2,
        }),
        PatternKind::Pswm {
            source, threshold, ..
        } => Ok(PatternFamily::PswmMotif {
            pswm: load_pswm(source)?,
            threshold: *threshold,
        }),
        PatternKind::CoOccurrence {
            source1,
            threshold1,
            source2,
            threshold2,
            d1,
            d2,
            ..
        } => Ok(PatternFamily::CoOccurrence {
            pswm1: load_pswm(source1)?,
            threshold1: *threshold1,
            pswm2: load_pswm(source2)?,
            threshold2: *threshold2,
            d1: *d1,
            d2: *d2,
        }),
        PatternKind::Structured {
            word1,
            word2,
            d1,
            d2,
        } => PatternFamily::structured_from_strs(alphabet, word1, word2, *d1, *d2),
    }
}

/// Builds the word bank for one pattern, honoring the explicit-set weights
/// and palindrome variant that the family representation does not carry.
pub fn sampler_for(
    model: &MarkovModel,
    kind: &PatternKind,
    prepass_seed: u64,
) -> Result<WordSampler> {
    let alphabet = model.alphabet();
    match kind {
        PatternKind::Explicit { words, weights } => {
            let encoded = words
                .iter()
                .map(|w| alphabet.encode(w))
                .collect::<Result<Vec<_>>>()?;
            match weights {
                None => WordSampler::explicit(model, encoded),
                Some(ws) => WordSampler::explicit_weighted(model, encoded, ws.clone()),
            }
        }
        PatternKind::Palindrome { half_len, variant } => {
            WordSampler::palindrome(model, *half_len, *variant)
        }
        PatternKind::InvertedRepeat { half_len, d1, d2 } => {
            WordSampler::inverted_repeat(model, *half_len, *d1, *d2)
        }
        PatternKind::Pswm {
            source,
            threshold,
            delta,
        } => WordSampler::tilted_pswm(model, load_pswm(source)?, *threshold, *delta, prepass_seed),
        PatternKind::CoOccurrence {
            source1,
            threshold1,
            source2,
            threshold2,
            d1,
            d2,
            delta,
        } => WordSampler::co_occurrence(
            model,
            load_pswm(source1)?,
            *threshold1,
            load_pswm(source2)?,
            *threshold2,
            *d1,
            *d2,
            *delta,
            prepass_seed,
        ),
        PatternKind::Structured {
            word1,
            word2,
            d1,
            d2,
        } => WordSampler::structured_motif(
            model,
            alphabet.encode(word1)?,
            alphabet.encode(word2)?,
            *d1,
            *d2,
        ),
    }
}

fn bad_inline(pattern: &str, expected: &str) -> Error {
    Error::Config(format!(
        "cannot parse pattern '{pattern}': expected {expected}"
    ))
}

/// Colon-separated pattern shorthand for the quick subcommands:
///
/// - `explicit:WORD[,WORD...]`
/// - `palindrome:HALF_LEN[:joined|separate]`
/// - `inverted-repeat:HALF_LEN:D1:D2`
/// - `pswm:SOURCE:THRESHOLD`
/// - `co-occurrence:SOURCE1:T1:SOURCE2:T2:D1:D2`
/// - `structured:WORD1:WORD2:D1:D2`
///
/// Co-occurrence sources here must be colon-free (bare preset names or
/// plain paths); use a config file for anything else.
pub fn parse_inline_pattern(pattern: &str) -> Result<PatternKind> {
    let (kind, rest) = pattern
        .split_once(':')
        .ok_or_else(|| bad_inline(pattern, "KIND:ARGS (try 'explicit:at')"))?;
    match kind {
        "explicit" => {
            let words: Vec<String> = rest
                .split(',')
                .map(str::trim)
                .filter(|w| !w.is_empty())
                .map(Into::into)
                .collect();
            if words.is_empty() {
                return Err(bad_inline(pattern, "explicit:WORD[,WORD...]"));
            }
            Ok(PatternKind::Explicit {
                words,
                weights: None,
            })
        }
        "palindrome" => {
            let expected = "palindrome:HALF_LEN[:joined|separate]";
            let (len_part, variant) = match rest.split_once(':') {
                None => (rest, PalindromeVariant::Joined),
                Some((l, "joined")) => (l, PalindromeVariant::Joined),
                Some((l, "separate")) => (l, PalindromeVariant::Separate),
                Some(_) => return Err(bad_inline(pattern, expected)),
            };
            let half_len = len_part
                .parse()
                .map_err(|_| bad_inline(pattern, expected))?;
            Ok(PatternKind::Palindrome { half_len, variant })
        }
        "inverted-repeat" => {
            let expected = "inverted-repeat:HALF_LEN:D1:D2";
            let parts: Vec<&str> = rest.split(':').collect();
            let [half_len, d1, d2] = parts[..] else {
                return Err(bad_inline(pattern, expected));
            };
            Ok(PatternKind::InvertedRepeat {
                half_len: half_len
                    .parse()
                    .map_err(|_| bad_inline(pattern, expected))?,
                d1: d1.parse().map_err(|_| bad_inline(pattern, expected))?,
                d2: d2.parse().map_err(|_| bad_inline(pattern, expected))?,
            })
        }
        "pswm" => {
            let expected = "pswm:SOURCE:THRESHOLD";
            // The source may itself contain colons (preset:swi5), so the
            // threshold is everything after the last colon.
            let (source, threshold) = rest
                .rsplit_once(':')
                .ok_or_else(|| bad_inline(pattern, expected))?;
            Ok(PatternKind::Pswm {
                source: source.to_string(),
                threshold: threshold
                    .parse()
                    .map_err(|_| bad_inline(pattern, expected))?,
                delta: 0.0,
            })
        }
        "co-occurrence" => {
            let expected = "co-occurrence:SOURCE1:T1:SOURCE2:T2:D1:D2";
            let parts: Vec<&str> = rest.split(':').collect();
            let [s1, t1, s2, t2, d1, d2] = parts[..] else {
                return Err(bad_inline(pattern, expected));
            };
            Ok(PatternKind::CoOccurrence {
                source1: s1.to_string(),
                threshold1: t1.parse().map_err(|_| bad_inline(pattern, expected))?,
                source2: s2.to_string(),
                threshold2: t2.parse().map_err(|_| bad_inline(pattern, expected))?,
                d1: d1.parse().map_err(|_| bad_inline(pattern, expected))?,
                d2: d2.parse().map_err(|_| bad_inline(pattern, expected))?,
                delta: 0.0,
            })
        }
        "structured" => {
            let expected = "structured:WORD1:WORD2:D1:D2";
            let parts: Vec<&str> = rest.split(':').collect();
            let [word1, word2, d1, d2] = parts[..] else {
                return Err(bad_inline(pattern, expected));
            };
            Ok(PatternKind::Structured {
                word1: word1.to_string(),
                word2: word2.to_string(),
                d1: d1.parse().map_err(|_| bad_inline(pattern, expected))?,
                d2: d2.parse().map_err(|_| bad_inline(pattern, expected))?,
            })
        }
        other => Err(Error::Config(format!(
            "unknown pattern kind '{other}' (expected explicit, palindrome, \
             inverted-repeat, pswm, co-occurrence, or structured)"
        ))),
    }
}
