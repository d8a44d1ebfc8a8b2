//! Command-line front end: estimation runs driven by config files, quick
//! inspection subcommands, and reproductions of the reference tables.
//!
//! Exit codes: 0 on success, 2 for configuration, input, and parse
//! problems, 3 when an exact enumeration is too large to attempt.

mod config;
mod resolve;
mod tables;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use raremotif_core::estimate::{algorithm_a, algorithm_b, combined, direct_mc};
use raremotif_core::oracle::exact_pvalue;
use raremotif_core::{
    CombinedAlgorithm, Error, EstimateReport, InsertionPolicy, Matcher, Result, WordSampler,
};

use config::{Algorithm, OutputFormat, PatternKind, PolicySpec, RunConfig};

#[derive(Parser)]
#[command(
    name = "raremotif",
    version,
    about = "Small p-values for non-overlapping pattern counts in Markov sequences, \
             estimated by importance sampling with controlled word insertion"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Estimate P{N >= c} for the run described by a config file
    Run(RunArgs),
    /// Score one word with a weight matrix
    Score {
        /// Weight matrix: preset:NAME, a file path, or a preset name
        #[arg(long)]
        pswm: String,
        /// Word to score, written in the matrix alphabet
        #[arg(long)]
        word: String,
    },
    /// Count non-overlapping pattern occurrences in a sequence
    Count {
        /// Pattern shorthand, e.g. explicit:at or pswm:swi5:50
        #[arg(long)]
        pattern: String,
        /// Sequence to scan, written in the model alphabet
        #[arg(long)]
        seq: String,
        /// Chain model: preset:NAME, a file path, or a preset name
        #[arg(long, default_value = "uniform-dna")]
        model: String,
    },
    /// Inspect a pattern's word bank: summary plus sample draws
    Bank {
        /// Pattern shorthand, e.g. palindrome:3 or structured:gttgaca:atataat:16:18
        #[arg(long)]
        pattern: String,
        /// Chain model: preset:NAME, a file path, or a preset name
        #[arg(long, default_value = "uniform-dna")]
        model: String,
        /// Number of sample draws to print
        #[arg(long, default_value_t = 10)]
        draws: u64,
        /// Seed (default: RAREMOTIF_SEED, then 0)
        #[arg(long)]
        seed: Option<u64>,
        /// Tilt offset added to the score threshold of motif banks
        #[arg(long, default_value_t = 0.0)]
        delta: f64,
    },
    /// Exact p-value by exhaustive enumeration (small instances only)
    Oracle {
        /// Pattern shorthand, e.g. explicit:a
        #[arg(long)]
        pattern: String,
        /// Chain model: preset:NAME, a file path, or a preset name
        #[arg(long, default_value = "uniform-dna")]
        model: String,
        /// Sequence length
        #[arg(long)]
        n: usize,
        /// Count threshold
        #[arg(long, default_value_t = 1)]
        c: usize,
    },
    /// Reproduce the fixed-length motif score reference table
    Table1(TableArgs),
    /// Reproduce the SWI5 site count reference table
    Table2(TableArgs),
    /// Reproduce the structured motif reference table
    Table3(Table3Args),
}

#[derive(Args)]
struct RunArgs {
    /// Run configuration file
    #[arg(long)]
    config: PathBuf,
    /// Override the config seed (default: config, then RAREMOTIF_SEED, then 0)
    #[arg(long)]
    seed: Option<u64>,
    /// Override the config replicate count
    #[arg(long)]
    replicates: Option<u64>,
    /// Override the config sequence length
    #[arg(long)]
    n: Option<usize>,
    /// Override the config count threshold
    #[arg(long)]
    c: Option<usize>,
    /// Override the config algorithm: direct, is-a, is-b, or combined
    #[arg(long)]
    algorithm: Option<String>,
    /// Override the config output format: tsv or block
    #[arg(long)]
    output: Option<String>,
    /// Print the effective config (with the resolved seed) and exit
    #[arg(long)]
    dump_config: bool,
    /// Also print run diagnostics
    #[arg(long)]
    diagnostics: bool,
    /// Size of the worker thread pool (default: one per core)
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct TableArgs {
    /// Replicates per table entry
    #[arg(long, default_value_t = 10_000)]
    replicates: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Size of the worker thread pool (default: one per core)
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct Table3Args {
    #[command(flatten)]
    table: TableArgs,
    /// Gap range D1,D2 between the two words
    #[arg(long, default_value = "16,18")]
    gap: String,
    /// One WORD1:WORD2 pair, or `all` for the full reference set
    #[arg(long, default_value = "all")]
    motif: String,
}

fn main() {
    // Die quietly when a downstream pipe closes (e.g. `raremotif table1 | head`),
    // like other stream tools, instead of panicking on the failed write.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    if let Err(e) = dispatch(cli.command) {
        eprintln!("error: {e}");
        std::process::exit(match e {
            Error::TooLarge(_) => 3,
            _ => 2,
        });
    }
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Run(args) => cmd_run(args),
        Command::Score { pswm, word } => cmd_score(&pswm, &word),
        Command::Count {
            pattern,
            seq,
            model,
        } => cmd_count(&pattern, &seq, &model),
        Command::Bank {
            pattern,
            model,
            draws,
            seed,
            delta,
        } => cmd_bank(&pattern, &model, draws, seed, delta),
        Command::Oracle {
            pattern,
            model,
            n,
            c,
        } => cmd_oracle(&pattern, &model, n, c),
        Command::Table1(args) => {
            configure_threads(args.threads)?;
            tables::table1(args.replicates, args.seed)
        }
        Command::Table2(args) => {
            configure_threads(args.threads)?;
            tables::table2(args.replicates, args.seed)
        }
        Command::Table3(args) => {
            configure_threads(args.table.threads)?;
            let (d1, d2) = parse_gap(&args.gap)?;
            tables::table3(d1, d2, &args.motif, args.table.replicates, args.table.seed)
        }
    }
}

fn parse_gap(gap: &str) -> Result<(usize, usize)> {
    let parsed = gap
        .split_once(',')
        .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)));
    parsed.ok_or_else(|| Error::Config(format!("bad gap '{gap}': expected D1,D2 like 16,18")))
}

fn configure_threads(threads: Option<usize>) -> Result<()> {
    let Some(threads) = threads else {
        return Ok(());
    };
    if threads == 0 {
        return Err(Error::Config("--threads must be at least 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Error::Config(format!("thread pool setup failed: {e}")))
}

/// Seed precedence: command line, then config file, then the
/// RAREMOTIF_SEED environment variable, then 0.
fn resolve_seed(flag: Option<u64>, config: Option<u64>) -> Result<u64> {
    if let Some(seed) = flag.or(config) {
        return Ok(seed);
    }
    match std::env::var("RAREMOTIF_SEED") {
        Err(_) => Ok(0),
        Ok(raw) => raw.trim().parse().map_err(|_| {
            Error::Config(format!(
                "RAREMOTIF_SEED must be an unsigned integer, got '{raw}'"
            ))
        }),
    }
}

fn cmd_run(args: RunArgs) -> Result<()> {
    configure_threads(args.threads)?;
    let text = std::fs::read_to_string(&args.config).map_err(|source| Error::Io {
        path: args.config.clone(),
        source,
    })?;
    let mut config = RunConfig::parse(&text)?;
    if let Some(n) = args.n {
        config.run.n = Some(n);
    }
    if let Some(c) = args.c {
        config.run.c = c;
    }
    if let Some(replicates) = args.replicates {
        config.run.replicates = replicates;
    }
    if let Some(algorithm) = &args.algorithm {
        config.run.algorithm = Algorithm::parse(algorithm)?;
    }
    if let Some(output) = &args.output {
        config.run.output = OutputFormat::parse(output)?;
    }
    config.run.seed = Some(resolve_seed(args.seed, config.run.seed)?);

    if args.dump_config {
        print!("{}", config.dump());
        return Ok(());
    }

    let report = run_estimate(&config)?;
    match config.run.output {
        OutputFormat::Tsv => {
            println!("{}", EstimateReport::tsv_header());
            println!("{}", report.tsv_line());
        }
        OutputFormat::Block => print!("{}", report.block()),
    }
    if args.diagnostics {
        print!("{}", report.diagnostics.block());
    }
    Ok(())
}

fn build_policy(spec: PolicySpec, n: usize, c: usize, word_len: usize) -> Result<InsertionPolicy> {
    match spec {
        PolicySpec::Adaptive => InsertionPolicy::adaptive(n, c, word_len),
        PolicySpec::ConstantSuggested => InsertionPolicy::constant_suggested(n, c, word_len),
        PolicySpec::Constant(rho) => InsertionPolicy::constant(rho, n, c, word_len),
    }
}

fn run_estimate(config: &RunConfig) -> Result<EstimateReport> {
    let model = resolve::load_model(&config.model)?;
    let n = config.run.n.ok_or_else(|| {
        Error::Config("the run needs 'n' (sequence length); set it in [run] or pass --n".into())
    })?;
    let seed = config.run.seed.unwrap_or(0);
    let replicates = config.run.replicates;
    let thresholds: Vec<usize> = config
        .patterns
        .iter()
        .map(|p| p.c.unwrap_or(config.run.c))
        .collect();

    if config.run.algorithm == Algorithm::Direct && config.patterns.len() > 1 {
        return Err(Error::Config(
            "direct estimation handles a single [pattern]; use is-a, is-b, or combined \
             for several"
                .into(),
        ));
    }
    if config.run.algorithm == Algorithm::IsA {
        if let Some(&c) = thresholds.iter().find(|&&c| c != 1) {
            return Err(Error::Config(format!(
                "the plant-one-word algorithm (is-a) estimates c = 1 only, got c = {c}; \
                 use is-b"
            )));
        }
    }

    if config.patterns.len() == 1 {
        let pattern = &config.patterns[0];
        let c = thresholds[0];
        match config.run.algorithm {
            Algorithm::Direct => {
                let family = resolve::family_for(&model, &pattern.kind)?;
                direct_mc(&model, &family, n, c, replicates, seed)
            }
            Algorithm::IsA => {
                let sampler = resolve::sampler_for(&model, &pattern.kind, seed)?;
                algorithm_a(&model, &sampler, n, replicates, seed)
            }
            Algorithm::IsB => {
                let sampler = resolve::sampler_for(&model, &pattern.kind, seed)?;
                let policy = build_policy(config.run.policy, n, c, sampler.min_len())?;
                algorithm_b(&model, &sampler, &policy, n, c, replicates, seed)
            }
            Algorithm::Combined => {
                let base = if c == 1 {
                    CombinedAlgorithm::A
                } else {
                    CombinedAlgorithm::B
                };
                require_adaptive_for(base, config.run.policy)?;
                let sampler = resolve::sampler_for(&model, &pattern.kind, seed)?;
                combined(&model, &[&sampler], &[c], base, n, replicates, seed)
            }
        }
    } else {
        let base = match config.run.algorithm {
            Algorithm::IsA => CombinedAlgorithm::A,
            Algorithm::IsB => CombinedAlgorithm::B,
            Algorithm::Combined => {
                if thresholds.iter().all(|&c| c == 1) {
                    CombinedAlgorithm::A
                } else {
                    CombinedAlgorithm::B
                }
            }
            Algorithm::Direct => unreachable!("rejected above"),
        };
        require_adaptive_for(base, config.run.policy)?;
        let samplers = config
            .patterns
            .iter()
            .enumerate()
            .map(|(j, p)| resolve::sampler_for(&model, &p.kind, seed.wrapping_add(j as u64)))
            .collect::<Result<Vec<_>>>()?;
        let refs: Vec<&WordSampler> = samplers.iter().collect();
        combined(&model, &refs, &thresholds, base, n, replicates, seed)
    }
}

/// Multi-family sequential runs fix the adaptive policy internally, so a
/// constant policy request cannot be honored there.
fn require_adaptive_for(base: CombinedAlgorithm, policy: PolicySpec) -> Result<()> {
    if base == CombinedAlgorithm::B && policy != PolicySpec::Adaptive {
        return Err(Error::Config(
            "combined sequential runs use the adaptive policy; drop the 'policy' key".into(),
        ));
    }
    Ok(())
}

fn cmd_score(pswm: &str, word: &str) -> Result<()> {
    let pswm = resolve::load_pswm(pswm)?;
    let encoded = pswm.alphabet().encode(word)?;
    let score = pswm.score(&encoded)?;
    if score.fract() == 0.0 {
        println!("{score:.0}");
    } else {
        println!("{score}");
    }
    Ok(())
}

fn cmd_count(pattern: &str, seq: &str, model: &str) -> Result<()> {
    let model = resolve::load_model_arg(model)?;
    let kind = resolve::parse_inline_pattern(pattern)?;
    let family = resolve::family_for(&model, &kind)?;
    let matcher = Matcher::new(model.alphabet(), family)?;
    let encoded = model.alphabet().encode(seq)?;
    println!("{}", matcher.count_nonoverlapping(&encoded));
    Ok(())
}

fn cmd_bank(pattern: &str, model: &str, draws: u64, seed: Option<u64>, delta: f64) -> Result<()> {
    let model = resolve::load_model_arg(model)?;
    let mut kind = resolve::parse_inline_pattern(pattern)?;
    match &mut kind {
        PatternKind::Pswm { delta: d, .. } | PatternKind::CoOccurrence { delta: d, .. } => {
            *d = delta
        }
        _ if delta != 0.0 => {
            return Err(Error::Config(
                "--delta applies to pswm and co-occurrence banks only".into(),
            ))
        }
        _ => {}
    }
    let seed = resolve_seed(seed, None)?;
    let sampler = resolve::sampler_for(&model, &kind, seed)?;
    println!("{}", sampler.info().summary());
    println!("lengths = {}..{}", sampler.min_len(), sampler.max_len());
    println!(
        "{:<24} {:>13} {:>13} {:>9}",
        "word", "q", "beta", "attempts"
    );
    // The draw stream is reserved so future replicate streams (one per
    // replicate index) can never collide with it.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::MAX - 1);
    for _ in 0..draws {
        let (word, attempts) = sampler.draw_counted(&mut rng);
        println!(
            "{:<24} {:>13.6e} {:>13.6e} {:>9}",
            model.alphabet().decode(&word),
            sampler.q_eval(&word),
            sampler.beta(&word),
            attempts
        );
    }
    Ok(())
}

fn cmd_oracle(pattern: &str, model: &str, n: usize, c: usize) -> Result<()> {
    let model = resolve::load_model_arg(model)?;
    let kind = resolve::parse_inline_pattern(pattern)?;
    let family = resolve::family_for(&model, &kind)?;
    let result = exact_pvalue(&model, &family, n, c)?;
    println!("p = {}", result.p);
    println!("n = {}", result.n);
    println!("c = {}", result.c);
    println!("family = {}", result.family);
    println!("enumeration = {}", result.enumeration_size);
    Ok(())
}
