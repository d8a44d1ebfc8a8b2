//! Sectioned plain-text run configuration.
//!
//! A config file holds a `[model]` section, one or more `[pattern]`
//! sections (several mean a multi-family run), and an optional `[run]`
//! section, each containing `key = value` lines. Blank lines and lines
//! starting with `#` are ignored. `dump` serializes a config so that
//! parsing the output reproduces an equivalent run.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use raremotif_core::{Error, PalindromeVariant, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum ModelSpec {
    /// A bundled chain: `yeast`, `bsubtilis`, or `uniform-dna`.
    Preset(String),
    /// A transition-matrix file.
    File(String),
}

/// One pattern family plus its optional count threshold override.
#[derive(Debug, Clone, PartialEq)]
pub struct PatternSpec {
    pub kind: PatternKind,
    pub c: Option<usize>,
}

/// Weight-matrix sources stay as written (`preset:NAME` or a file path)
/// until the run is assembled, so dumps round-trip byte for byte.
#[derive(Debug, Clone, PartialEq)]
pub enum PatternKind {
    Explicit {
        words: Vec<String>,
        weights: Option<Vec<f64>>,
    },
    Palindrome {
        half_len: usize,
        variant: PalindromeVariant,
    },
    InvertedRepeat {
        half_len: usize,
        d1: usize,
        d2: usize,
    },
    Pswm {
        source: String,
        threshold: f64,
        delta: f64,
    },
    CoOccurrence {
        source1: String,
        threshold1: f64,
        source2: String,
        threshold2: f64,
        d1: usize,
        d2: usize,
        delta: f64,
    },
    Structured {
        word1: String,
        word2: String,
        d1: usize,
        d2: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Direct,
    IsA,
    IsB,
    Combined,
}

impl Algorithm {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Algorithm::Direct),
            "is-a" => Ok(Algorithm::IsA),
            "is-b" => Ok(Algorithm::IsB),
            "combined" => Ok(Algorithm::Combined),
            other => Err(Error::Config(format!(
                "unknown algorithm '{other}' (expected direct, is-a, is-b, or combined)"
            ))),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Direct => "direct",
            Algorithm::IsA => "is-a",
            Algorithm::IsB => "is-b",
            Algorithm::Combined => "combined",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PolicySpec {
    Adaptive,
    /// Constant rate at the suggested value c/n.
    ConstantSuggested,
    Constant(f64),
}

impl PolicySpec {
    pub fn parse(s: &str) -> Result<Self> {
        if s == "adaptive" {
            Ok(PolicySpec::Adaptive)
        } else if s == "constant" {
            Ok(PolicySpec::ConstantSuggested)
        } else if let Some(rate) = s.strip_prefix("constant:") {
            let rho: f64 = rate
                .parse()
                .map_err(|_| Error::Config(format!("bad constant insertion rate '{rate}'")))?;
            Ok(PolicySpec::Constant(rho))
        } else {
            Err(Error::Config(format!(
                "unknown policy '{s}' (expected adaptive, constant, or constant:RATE)"
            )))
        }
    }

    pub fn to_config_value(self) -> String {
        match self {
            PolicySpec::Adaptive => "adaptive".into(),
            PolicySpec::ConstantSuggested => "constant".into(),
            PolicySpec::Constant(rho) => format!("constant:{rho}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Tsv,
    Block,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "tsv" => Ok(OutputFormat::Tsv),
            "block" => Ok(OutputFormat::Block),
            other => Err(Error::Config(format!(
                "unknown output format '{other}' (expected tsv or block)"
            ))),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            OutputFormat::Tsv => "tsv",
            OutputFormat::Block => "block",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunSection {
    pub n: Option<usize>,
    /// Default count threshold; per-pattern `c` keys override it.
    pub c: usize,
    pub algorithm: Algorithm,
    pub policy: PolicySpec,
    pub replicates: u64,
    pub seed: Option<u64>,
    pub output: OutputFormat,
}

impl Default for RunSection {
    fn default() -> Self {
        RunSection {
            n: None,
            c: 1,
            algorithm: Algorithm::IsB,
            policy: PolicySpec::Adaptive,
            replicates: 1000,
            seed: None,
            output: OutputFormat::Block,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub model: ModelSpec,
    pub patterns: Vec<PatternSpec>,
    pub run: RunSection,
}

/// `key = value` entries of one section, with duplicate keys rejected.
struct Entries {
    section: &'static str,
    map: BTreeMap<String, String>,
}

impl Entries {
    fn new(section: &'static str, pairs: Vec<(String, String)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (k, v) in pairs {
            if map.insert(k.clone(), v).is_some() {
                return Err(Error::Config(format!("duplicate key '{k}' in [{section}]")));
            }
        }
        Ok(Entries { section, map })
    }

    fn take(&mut self, key: &str) -> Option<String> {
        self.map.remove(key)
    }

    fn require(&mut self, key: &str) -> Result<String> {
        self.take(key)
            .ok_or_else(|| Error::Config(format!("[{}] needs '{key}'", self.section)))
    }

    fn parse<T: std::str::FromStr>(&mut self, key: &str) -> Result<T> {
        let raw = self.require(key)?;
        raw.parse().map_err(|_| {
            Error::Config(format!(
                "[{}] key '{key}': cannot parse '{raw}'",
                self.section
            ))
        })
    }

    fn parse_opt<T: std::str::FromStr>(&mut self, key: &str) -> Result<Option<T>> {
        match self.take(key) {
            None => Ok(None),
            Some(raw) => raw.parse().map(Some).map_err(|_| {
                Error::Config(format!(
                    "[{}] key '{key}': cannot parse '{raw}'",
                    self.section
                ))
            }),
        }
    }

    fn finish(self) -> Result<()> {
        if let Some(key) = self.map.keys().next() {
            return Err(Error::Config(format!(
                "unknown key '{key}' in [{}]",
                self.section
            )));
        }
        Ok(())
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<RunConfig> {
        let mut sections: Vec<(String, Vec<(String, String)>)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                sections.push((name.trim().to_string(), Vec::new()));
            } else if let Some((k, v)) = line.split_once('=') {
                let Some(last) = sections.last_mut() else {
                    return Err(Error::Config(format!(
                        "config line {}: key before any [section]",
                        idx + 1
                    )));
                };
                last.1.push((k.trim().to_string(), v.trim().to_string()));
            } else {
                return Err(Error::Config(format!(
                    "config line {}: expected '[section]' or 'key = value', got '{line}'",
                    idx + 1
                )));
            }
        }

        let mut model = None;
        let mut patterns = Vec::new();
        let mut run = None;
        for (name, pairs) in sections {
            match name.as_str() {
                "model" => {
                    if model.is_some() {
                        return Err(Error::Config("more than one [model] section".into()));
                    }
                    model = Some(parse_model(Entries::new("model", pairs)?)?);
                }
                "pattern" => patterns.push(parse_pattern(Entries::new("pattern", pairs)?)?),
                "run" => {
                    if run.is_some() {
                        return Err(Error::Config("more than one [run] section".into()));
                    }
                    run = Some(parse_run(Entries::new("run", pairs)?)?);
                }
                other => {
                    return Err(Error::Config(format!(
                        "unknown section [{other}] (expected model, pattern, or run)"
                    )))
                }
            }
        }

        let model = model.ok_or_else(|| Error::Config("config needs a [model] section".into()))?;
        if patterns.is_empty() {
            return Err(Error::Config(
                "config needs at least one [pattern] section".into(),
            ));
        }
        Ok(RunConfig {
            model,
            patterns,
            run: run.unwrap_or_default(),
        })
    }

    /// Canonical serialization; `parse(dump(c))` equals `c`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        out.push_str("[model]\n");
        match &self.model {
            ModelSpec::Preset(name) => writeln!(out, "preset = {name}").unwrap(),
            ModelSpec::File(path) => writeln!(out, "file = {path}").unwrap(),
        }
        for pattern in &self.patterns {
            out.push_str("\n[pattern]\n");
            match &pattern.kind {
                PatternKind::Explicit { words, weights } => {
                    writeln!(out, "kind = explicit").unwrap();
                    writeln!(out, "words = {}", words.join(",")).unwrap();
                    if let Some(w) = weights {
                        let w: Vec<String> = w.iter().map(|x| x.to_string()).collect();
                        writeln!(out, "weights = {}", w.join(",")).unwrap();
                    }
                }
                PatternKind::Palindrome { half_len, variant } => {
                    writeln!(out, "kind = palindrome").unwrap();
                    writeln!(out, "half_len = {half_len}").unwrap();
                    let v = match variant {
                        PalindromeVariant::Joined => "joined",
                        PalindromeVariant::Separate => "separate",
                    };
                    writeln!(out, "variant = {v}").unwrap();
                }
                PatternKind::InvertedRepeat { half_len, d1, d2 } => {
                    writeln!(out, "kind = inverted-repeat").unwrap();
                    writeln!(out, "half_len = {half_len}").unwrap();
                    writeln!(out, "d1 = {d1}").unwrap();
                    writeln!(out, "d2 = {d2}").unwrap();
                }
                PatternKind::Pswm {
                    source,
                    threshold,
                    delta,
                } => {
                    writeln!(out, "kind = pswm").unwrap();
                    writeln!(out, "pswm = {source}").unwrap();
                    writeln!(out, "threshold = {threshold}").unwrap();
                    writeln!(out, "delta = {delta}").unwrap();
                }
                PatternKind::CoOccurrence {
                    source1,
                    threshold1,
                    source2,
                    threshold2,
                    d1,
                    d2,
                    delta,
                } => {
                    writeln!(out, "kind = co-occurrence").unwrap();
                    writeln!(out, "pswm1 = {source1}").unwrap();
                    writeln!(out, "threshold1 = {threshold1}").unwrap();
                    writeln!(out, "pswm2 = {source2}").unwrap();
                    writeln!(out, "threshold2 = {threshold2}").unwrap();
                    writeln!(out, "d1 = {d1}").unwrap();
                    writeln!(out, "d2 = {d2}").unwrap();
                    writeln!(out, "delta = {delta}").unwrap();
                }
                PatternKind::Structured {
                    word1,
                    word2,
                    d1,
                    d2,
                } => {
                    writeln!(out, "kind = structured").unwrap();
                    writeln!(out, "word1 = {word1}").unwrap();
                    writeln!(out, "word2 = {word2}").unwrap();
                    writeln!(out, "d1 = {d1}").unwrap();
                    writeln!(out, "d2 = {d2}").unwrap();
                }
            }
            if let Some(c) = pattern.c {
                writeln!(out, "c = {c}").unwrap();
            }
        }
        out.push_str("\n[run]\n");
        if let Some(n) = self.run.n {
            writeln!(out, "n = {n}").unwrap();
        }
        writeln!(out, "c = {}", self.run.c).unwrap();
        writeln!(out, "algorithm = {}", self.run.algorithm.as_str()).unwrap();
        writeln!(out, "policy = {}", self.run.policy.to_config_value()).unwrap();
        writeln!(out, "replicates = {}", self.run.replicates).unwrap();
        if let Some(seed) = self.run.seed {
            writeln!(out, "seed = {seed}").unwrap();
        }
        writeln!(out, "output = {}", self.run.output.as_str()).unwrap();
        out
    }
}

fn parse_model(mut e: Entries) -> Result<ModelSpec> {
    let preset = e.take("preset");
    let file = e.take("file");
    e.finish()?;
    match (preset, file) {
        (Some(name), None) => Ok(ModelSpec::Preset(name)),
        (None, Some(path)) => Ok(ModelSpec::File(path)),
        (None, None) => Err(Error::Config("[model] needs 'preset' or 'file'".into())),
        (Some(_), Some(_)) => Err(Error::Config(
            "[model] takes either 'preset' or 'file', not both".into(),
        )),
    }
}

fn parse_comma_list(raw: &str, what: &str) -> Result<Vec<String>> {
    let items: Vec<String> = raw
        .split(',')
        .map(|w| w.trim().to_string())
        .filter(|w| !w.is_empty())
        .collect();
    if items.is_empty() {
        return Err(Error::Config(format!("empty {what} list '{raw}'")));
    }
    Ok(items)
}

fn parse_pattern(mut e: Entries) -> Result<PatternSpec> {
    let kind_name = e.require("kind")?;
    let kind = match kind_name.as_str() {
        "explicit" => {
            let words = parse_comma_list(&e.require("words")?, "word")?;
            let weights = match e.take("weights") {
                None => None,
                Some(raw) => {
                    let mut ws = Vec::new();
                    for item in parse_comma_list(&raw, "weight")? {
                        ws.push(item.parse::<f64>().map_err(|_| {
                            Error::Config(format!("bad weight '{item}' in [pattern]"))
                        })?);
                    }
                    Some(ws)
                }
            };
            PatternKind::Explicit { words, weights }
        }
        "palindrome" => {
            let half_len = e.parse("half_len")?;
            let variant = match e.take("variant").as_deref() {
                None | Some("joined") => PalindromeVariant::Joined,
                Some("separate") => PalindromeVariant::Separate,
                Some(other) => {
                    return Err(Error::Config(format!(
                        "unknown palindrome variant '{other}' (expected joined or separate)"
                    )))
                }
            };
            PatternKind::Palindrome { half_len, variant }
        }
        "inverted-repeat" => PatternKind::InvertedRepeat {
            half_len: e.parse("half_len")?,
            d1: e.parse("d1")?,
            d2: e.parse("d2")?,
        },
        "pswm" => PatternKind::Pswm {
            source: e.require("pswm")?,
            threshold: e.parse("threshold")?,
            delta: e.parse_opt("delta")?.unwrap_or(0.0),
        },
        "co-occurrence" => PatternKind::CoOccurrence {
            source1: e.require("pswm1")?,
            threshold1: e.parse("threshold1")?,
            source2: e.require("pswm2")?,
            threshold2: e.parse("threshold2")?,
            d1: e.parse("d1")?,
            d2: e.parse("d2")?,
            delta: e.parse_opt("delta")?.unwrap_or(0.0),
        },
        "structured" => PatternKind::Structured {
            word1: e.require("word1")?,
            word2: e.require("word2")?,
            d1: e.parse("d1")?,
            d2: e.parse("d2")?,
        },
        other => {
            return Err(Error::Config(format!(
                "unknown pattern kind '{other}' (expected explicit, palindrome, \
                 inverted-repeat, pswm, co-occurrence, or structured)"
            )))
        }
    };
    let c = e.parse_opt("c")?;
    e.finish()?;
    Ok(PatternSpec { kind, c })
}

fn parse_run(mut e: Entries) -> Result<RunSection> {
    let defaults = RunSection::default();
    let run = RunSection {
        n: e.parse_opt("n")?,
        c: e.parse_opt("c")?.unwrap_or(defaults.c),
        algorithm: match e.take("algorithm") {
            None => defaults.algorithm,
            Some(raw) => Algorithm::parse(&raw)?,
        },
        policy: match e.take("policy") {
            None => defaults.policy,
            Some(raw) => PolicySpec::parse(&raw)?,
        },
        replicates: e.parse_opt("replicates")?.unwrap_or(defaults.replicates),
        seed: e.parse_opt("seed")?,
        output: match e.take("output") {
            None => defaults.output,
            Some(raw) => OutputFormat::parse(&raw)?,
        },
    };
    e.finish()?;
    Ok(run)
}
