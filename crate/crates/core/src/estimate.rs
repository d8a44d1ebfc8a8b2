//! Small-probability estimators for pattern counts in Markov sequences.
//!
//! `direct_mc` estimates `P{N >= c}` by plain frequency counting and is the
//! baseline the importance-sampling estimators are measured against.
//! `algorithm_a` plants exactly one bank word at a uniform position and is
//! restricted to `c = 1`; `algorithm_b` walks the sequence left to right and
//! inserts bank words at random decision points governed by an
//! [`InsertionPolicy`], which supports any count threshold. Both weight each
//! replicate by the inverse likelihood ratio of the biased generation
//! measure against the chain measure, so their means are unbiased for the
//! exact p-value. `combined` extends either algorithm to a union event over
//! several families. `huang_approx` is a closed-form approximation for
//! score-threshold motifs at `c = 1`.
//!
//! All estimators derive replicate `k`'s randomness from `(seed, stream k)`,
//! so results are independent of thread count and schedule.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bank::WordSampler;
use crate::error::{Error, Result};
use crate::markov::MarkovModel;
use crate::pattern::{CountState, Matcher, PatternFamily};
use crate::pswm::Pswm;

/// Per-position word-insertion probabilities for `algorithm_b`.
///
/// A policy is bound to a sequence length `n`, a count target `c`, and the
/// shortest member length of the bank it will drive. Insertion may never be
/// forced (probability 1) at a position from which the target is still
/// reachable without an immediate insertion; the adaptive policy satisfies
/// this by construction, and the other kinds are validated statically (every
/// entry strictly below 1), since prefix counts are unknown until run time.
#[derive(Debug, Clone, PartialEq)]
pub struct InsertionPolicy {
    kind: PolicyKind,
    n: usize,
    c: usize,
    word_len: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum PolicyKind {
    Constant(f64),
    Adaptive,
    Custom(Vec<f64>),
}

impl InsertionPolicy {
    /// The same insertion probability `rho` at every position.
    pub fn constant(rho: f64, n: usize, c: usize, word_len: usize) -> Result<Self> {
        if !(rho.is_finite() && (0.0..1.0).contains(&rho)) {
            return Err(Error::Config(format!(
                "constant insertion probability must lie in [0, 1), got {rho}"
            )));
        }
        Self::checked(PolicyKind::Constant(rho), n, c, word_len)
    }

    /// The suggested constant policy `rho = c / n`.
    pub fn constant_suggested(n: usize, c: usize, word_len: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Config("sequence length must be positive".into()));
        }
        Self::constant(c as f64 / n as f64, n, c, word_len)
    }

    /// Position-dependent probabilities that spread the still-needed
    /// insertions over the positions where a shortest word can still start:
    /// with `need = c - N_i`, `rho_i = min(1, need / (n - i - need (l - 1)))`,
    /// zero once `need = 0` and one when the denominator is not positive.
    pub fn adaptive(n: usize, c: usize, word_len: usize) -> Result<Self> {
        Self::checked(PolicyKind::Adaptive, n, c, word_len)
    }

    /// An explicit table `rho_0 .. rho_{n-1}`. Every entry must be in
    /// `[0, 1)`; use the adaptive policy when forced end-of-sequence
    /// insertion is wanted, since a static table cannot know the running
    /// count that would make forcing safe.
    pub fn custom(table: Vec<f64>, n: usize, c: usize, word_len: usize) -> Result<Self> {
        if table.len() != n {
            return Err(Error::Config(format!(
                "insertion table has {} entries for sequence length {n}",
                table.len()
            )));
        }
        if let Some(bad) = table
            .iter()
            .find(|r| !(r.is_finite() && (0.0..1.0).contains(*r)))
        {
            return Err(Error::Config(format!(
                "insertion table entries must lie in [0, 1), got {bad}"
            )));
        }
        Self::checked(PolicyKind::Custom(table), n, c, word_len)
    }

    fn checked(kind: PolicyKind, n: usize, c: usize, word_len: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Config("sequence length must be positive".into()));
        }
        if c == 0 {
            return Err(Error::Config("count threshold must be at least 1".into()));
        }
        if word_len == 0 {
            return Err(Error::Config("policy word length must be positive".into()));
        }
        Ok(InsertionPolicy {
            kind,
            n,
            c,
            word_len,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn c(&self) -> usize {
        self.c
    }

    /// Insertion probability at position `i` (0-based prefix length) given
    /// the pattern count of the prefix.
    pub fn rho(&self, i: usize, count_so_far: usize) -> f64 {
        debug_assert!(i < self.n);
        match &self.kind {
            PolicyKind::Constant(r) => *r,
            PolicyKind::Custom(t) => t[i],
            PolicyKind::Adaptive => {
                let need = self.c.saturating_sub(count_so_far);
                if need == 0 {
                    return 0.0;
                }
                let denom = self.n as i64 - i as i64 - need as i64 * (self.word_len as i64 - 1);
                if denom <= 0 {
                    1.0
                } else {
                    (need as f64 / denom as f64).min(1.0)
                }
            }
        }
    }
}

/// One importance-sampling replicate: the dummy start symbol, the generated
/// sequence, its likelihood ratio, its pattern count, and where words were
/// planted (0-based start, length).
#[derive(Debug, Clone)]
pub struct SimRun {
    pub s0: u8,
    pub s: Vec<u8>,
    pub likelihood: f64,
    pub count: usize,
    pub inserted_positions: Vec<(usize, usize)>,
    pub draw_attempts: u64,
}

/// How the replicates of an estimate were produced.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Diagnostics {
    /// Replicates whose count reached the threshold.
    pub hits: u64,
    /// Mean pattern count over replicates.
    pub mean_count: f64,
    /// `(words inserted, replicates)` pairs, sorted by insertion count.
    pub insertion_histogram: Vec<(u32, u64)>,
    /// Total bank rejection-loop iterations over all replicates.
    pub draw_attempts: u64,
    /// Total words actually planted.
    pub words_inserted: u64,
    /// Smallest and largest `beta = q / sigma` among the planted words;
    /// `None` when nothing was planted (direct runs, or zero insertions).
    pub inserted_beta_range: Option<(f64, f64)>,
    /// One-line bank description, when a bank was involved.
    pub sampler_summary: Option<String>,
    pub notes: Vec<String>,
}

impl Diagnostics {
    pub fn block(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("hits = {}\n", self.hits));
        out.push_str(&format!("mean_count = {:.6}\n", self.mean_count));
        let hist: Vec<String> = self
            .insertion_histogram
            .iter()
            .map(|(ins, reps)| format!("{ins}:{reps}"))
            .collect();
        out.push_str(&format!("insertions = {}\n", hist.join(" ")));
        out.push_str(&format!("draw_attempts = {}\n", self.draw_attempts));
        out.push_str(&format!("words_inserted = {}\n", self.words_inserted));
        if let Some((lo, hi)) = self.inserted_beta_range {
            out.push_str(&format!("beta_range = {lo:e}..{hi:e}\n"));
        }
        if let Some(s) = &self.sampler_summary {
            out.push_str(&format!("bank = {s}\n"));
        }
        for note in &self.notes {
            out.push_str(&format!("note = {note}\n"));
        }
        out
    }
}

/// A point estimate with its standard error and the run parameters needed
/// to reproduce it.
#[derive(Debug, Clone)]
pub struct EstimateReport {
    pub p_hat: f64,
    pub se: f64,
    pub replicates: u64,
    pub c: usize,
    pub algorithm: String,
    pub seed: u64,
    pub wall_time_s: f64,
    pub diagnostics: Diagnostics,
}

impl EstimateReport {
    pub fn tsv_header() -> &'static str {
        "p_hat\tse\treplicates\tc\talgorithm\tseed\twall_time_s"
    }

    /// The estimate as a single tab-separated line matching `tsv_header`.
    pub fn tsv_line(&self) -> String {
        format!(
            "{:e}\t{:e}\t{}\t{}\t{}\t{}\t{:.3}",
            self.p_hat,
            self.se,
            self.replicates,
            self.c,
            self.algorithm,
            self.seed,
            self.wall_time_s
        )
    }

    /// The estimate as a `key = value` block.
    pub fn block(&self) -> String {
        format!(
            "p_hat = {:e}\nse = {:e}\nreplicates = {}\nc = {}\nalgorithm = {}\nseed = {}\nwall_time_s = {:.3}\n",
            self.p_hat, self.se, self.replicates, self.c, self.algorithm, self.seed,
            self.wall_time_s
        )
    }
}

/// Likelihood ratio of the plant-one-word measure against the chain measure.
///
/// `s_with_dummy` holds the dummy start symbol followed by the `n` sequence
/// symbols. The ratio sums, over every candidate word length `l` and start
/// position, `beta(window) / ((n - l + 1) * sigma(prev, first))`; windows
/// outside the family contribute nothing, so the result is zero exactly when
/// the sequence contains no member anywhere.
pub fn likelihood_a(
    s_with_dummy: &[u8],
    sampler: &WordSampler,
    model: &MarkovModel,
    n: usize,
) -> f64 {
    assert_eq!(
        s_with_dummy.len(),
        n + 1,
        "sequence must carry the dummy start symbol"
    );
    let mut total = 0.0f64;
    for &len in sampler.matcher().candidate_lengths() {
        if len > n {
            continue;
        }
        let positions = (n - len + 1) as f64;
        for i in 1..=n - len + 1 {
            let w = &s_with_dummy[i..i + len];
            let log_q = sampler.log_q(w);
            if log_q == f64::NEG_INFINITY {
                continue;
            }
            let log_null =
                model.log_word_prob(w) + model.log_sigma(s_with_dummy[i - 1], s_with_dummy[i]);
            total += (log_q - log_null).exp() / positions;
        }
    }
    total
}

/// Likelihood ratio of the sequential-insertion measure against the chain
/// measure, by the forward recursion
/// `L_i = (1 - rho_{i-1} gamma_{n-i+1}) L_{i-1}
///        + sum_l rho_{i-l} L_{i-l} beta(window) / sigma(junction)`
/// with `L_0 = 1`. The insertion probabilities depend only on prefix counts,
/// so this is a pure function of the sequence: it can be evaluated on any
/// sequence, not just generated ones.
pub fn likelihood_b(
    s_with_dummy: &[u8],
    sampler: &WordSampler,
    policy: &InsertionPolicy,
    model: &MarkovModel,
    n: usize,
) -> f64 {
    assert_eq!(
        s_with_dummy.len(),
        n + 1,
        "sequence must carry the dummy start symbol"
    );
    assert_eq!(
        policy.n(),
        n,
        "policy was built for a different sequence length"
    );

    let mut counts = vec![0usize; n + 1];
    {
        let mut state = CountState::new(sampler.matcher());
        for i in 1..=n {
            counts[i] = state.push(s_with_dummy[i]);
        }
    }

    let lengths = sampler.matcher().candidate_lengths();
    let mut l = vec![0.0f64; n + 1];
    l[0] = 1.0;
    for i in 1..=n {
        let rho_prev = policy.rho(i - 1, counts[i - 1]);
        let mut acc = (1.0 - rho_prev * sampler.gamma_cdf(n - i + 1)) * l[i - 1];
        for &len in lengths {
            if len > i {
                break;
            }
            let j = i - len;
            if l[j] == 0.0 {
                continue;
            }
            let rho = policy.rho(j, counts[j]);
            if rho == 0.0 {
                continue;
            }
            let w = &s_with_dummy[j + 1..=i];
            let log_q = sampler.log_q(w);
            if log_q == f64::NEG_INFINITY {
                continue;
            }
            let log_null =
                model.log_word_prob(w) + model.log_sigma(s_with_dummy[j], s_with_dummy[j + 1]);
            acc += rho * l[j] * (log_q - log_null).exp();
        }
        l[i] = acc;
    }
    l[n]
}

/// One plant-one-word replicate: draw a word, place it uniformly, fill the
/// rest of the sequence from the chain.
pub fn simulate_a<R: Rng + ?Sized>(
    model: &MarkovModel,
    sampler: &WordSampler,
    n: usize,
    rng: &mut R,
) -> SimRun {
    let (v, attempts) = sampler.draw_counted(rng);
    let len = v.len();
    debug_assert!(len <= n);
    let i0 = rng.random_range(1..=n - len + 1);
    let s0 = model.sample_stationary(rng);

    let mut s = Vec::with_capacity(n + 1);
    s.push(s0);
    for _ in 1..i0 {
        let x = model.step(*s.last().expect("nonempty"), rng);
        s.push(x);
    }
    s.extend_from_slice(&v);
    while s.len() < n + 1 {
        let x = model.step(*s.last().expect("nonempty"), rng);
        s.push(x);
    }

    let likelihood = likelihood_a(&s, sampler, model, n);
    let count = sampler.matcher().count_nonoverlapping(&s[1..]);
    SimRun {
        s0,
        s: s[1..].to_vec(),
        likelihood,
        count,
        inserted_positions: vec![(i0 - 1, len)],
        draw_attempts: attempts,
    }
}

/// One sequential-insertion replicate: walk left to right, inserting a bank
/// word with the policy's probability at each decision point; a drawn word
/// that does not fit in the remaining space is discarded and one chain
/// symbol is emitted in its place.
pub fn simulate_b<R: Rng + ?Sized>(
    model: &MarkovModel,
    sampler: &WordSampler,
    policy: &InsertionPolicy,
    n: usize,
    rng: &mut R,
) -> SimRun {
    debug_assert_eq!(policy.n(), n);
    let s0 = model.sample_stationary(rng);
    let mut s = Vec::with_capacity(n + 1);
    s.push(s0);
    let mut state = CountState::new(sampler.matcher());
    let mut inserted_positions = Vec::new();
    let mut draw_attempts = 0u64;

    let mut i = 0;
    while i < n {
        let rho = policy.rho(i, state.count());
        let mut planted = false;
        if rho > 0.0 && rng.random::<f64>() < rho {
            let (v, attempts) = sampler.draw_counted(rng);
            draw_attempts += attempts;
            if v.len() <= n - i {
                inserted_positions.push((i, v.len()));
                for &x in &v {
                    s.push(x);
                    state.push(x);
                }
                i += v.len();
                planted = true;
            }
        }
        if !planted {
            let x = model.step(*s.last().expect("nonempty"), rng);
            s.push(x);
            state.push(x);
            i += 1;
        }
    }

    let likelihood = likelihood_b(&s, sampler, policy, model, n);
    let count = state.count();
    SimRun {
        s0,
        s: s[1..].to_vec(),
        likelihood,
        count,
        inserted_positions,
        draw_attempts,
    }
}

/// Per-replicate record folded into the report.
struct Rep {
    contribution: f64,
    count: usize,
    insertions: u32,
    attempts: u64,
    /// `(min, max)` of `beta` over this replicate's planted words;
    /// `(INFINITY, NEG_INFINITY)` when nothing was planted.
    beta_span: (f64, f64),
}

const NO_BETA_SPAN: (f64, f64) = (f64::INFINITY, f64::NEG_INFINITY);

/// Range of `beta = q / sigma` over the words planted in one replicate.
fn inserted_beta_span(sampler: &WordSampler, run: &SimRun) -> (f64, f64) {
    let (mut lo, mut hi) = NO_BETA_SPAN;
    for &(pos, len) in &run.inserted_positions {
        let beta = sampler.beta(&run.s[pos..pos + len]);
        lo = lo.min(beta);
        hi = hi.max(beta);
    }
    (lo, hi)
}

/// Runs `f` once per replicate, each with its own RNG stream, in parallel
/// but with a thread-count-independent result order.
fn run_replicates<F>(replicates: u64, seed: u64, f: F) -> Vec<Rep>
where
    F: Fn(&mut ChaCha8Rng) -> Rep + Sync,
{
    (0..replicates)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k);
            f(&mut rng)
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn fold_report(
    reps: Vec<Rep>,
    c: usize,
    algorithm: &str,
    seed: u64,
    binomial_se: bool,
    sampler_summary: Option<String>,
    notes: Vec<String>,
    started: Instant,
) -> EstimateReport {
    let k = reps.len() as f64;
    let sum: f64 = reps.iter().map(|r| r.contribution).sum();
    let mean = sum / k;
    let se = if binomial_se {
        (mean * (1.0 - mean) / k).sqrt()
    } else if reps.len() > 1 {
        let ss: f64 = reps.iter().map(|r| (r.contribution - mean).powi(2)).sum();
        (ss / (k - 1.0)).sqrt() / k.sqrt()
    } else {
        0.0
    };

    let mut histogram = BTreeMap::new();
    let mut hits = 0u64;
    let mut count_sum = 0u64;
    let mut draw_attempts = 0u64;
    let mut words_inserted = 0u64;
    let (mut beta_lo, mut beta_hi) = NO_BETA_SPAN;
    for r in &reps {
        *histogram.entry(r.insertions).or_insert(0u64) += 1;
        if r.count >= c {
            hits += 1;
        }
        count_sum += r.count as u64;
        draw_attempts += r.attempts;
        words_inserted += u64::from(r.insertions);
        beta_lo = beta_lo.min(r.beta_span.0);
        beta_hi = beta_hi.max(r.beta_span.1);
    }
    let diagnostics = Diagnostics {
        hits,
        mean_count: count_sum as f64 / k,
        insertion_histogram: histogram.into_iter().collect(),
        draw_attempts,
        words_inserted,
        inserted_beta_range: beta_lo.is_finite().then_some((beta_lo, beta_hi)),
        sampler_summary,
        notes,
    };
    EstimateReport {
        p_hat: mean,
        se,
        replicates: reps.len() as u64,
        c,
        algorithm: algorithm.to_string(),
        seed,
        wall_time_s: started.elapsed().as_secs_f64(),
        diagnostics,
    }
}

fn check_replicates(replicates: u64) -> Result<()> {
    if replicates == 0 {
        return Err(Error::Config("at least one replicate is required".into()));
    }
    Ok(())
}

/// Plain Monte Carlo: generate chain sequences and count threshold hits.
/// The standard error is the binomial `sqrt(p (1 - p) / K)`.
pub fn direct_mc(
    model: &MarkovModel,
    family: &PatternFamily,
    n: usize,
    c: usize,
    replicates: u64,
    seed: u64,
) -> Result<EstimateReport> {
    check_replicates(replicates)?;
    if c == 0 {
        return Err(Error::Config("count threshold must be at least 1".into()));
    }
    let started = Instant::now();
    let matcher = Matcher::new(model.alphabet(), family.clone())?;
    let reps = run_replicates(replicates, seed, |rng| {
        let s = model.generate(n, rng);
        let count = matcher.count_nonoverlapping(&s);
        Rep {
            contribution: if count >= c { 1.0 } else { 0.0 },
            count,
            insertions: 0,
            attempts: 0,
            beta_span: NO_BETA_SPAN,
        }
    });
    Ok(fold_report(
        reps,
        c,
        "direct",
        seed,
        true,
        None,
        Vec::new(),
        started,
    ))
}

/// Plant-one-word importance sampling; estimates `P{N >= 1}` only.
pub fn algorithm_a(
    model: &MarkovModel,
    sampler: &WordSampler,
    n: usize,
    replicates: u64,
    seed: u64,
) -> Result<EstimateReport> {
    check_replicates(replicates)?;
    if n < sampler.max_len() {
        return Err(Error::Config(format!(
            "sequence length {n} cannot hold the longest bank word ({})",
            sampler.max_len()
        )));
    }
    let started = Instant::now();
    let reps = run_replicates(replicates, seed, |rng| {
        let run = simulate_a(model, sampler, n, rng);
        Rep {
            contribution: run.likelihood.recip(),
            count: run.count,
            insertions: 1,
            attempts: run.draw_attempts,
            beta_span: inserted_beta_span(sampler, &run),
        }
    });
    Ok(fold_report(
        reps,
        1,
        "is-a",
        seed,
        false,
        Some(sampler.info().summary()),
        Vec::new(),
        started,
    ))
}

/// Sequential-insertion importance sampling for `P{N >= c}`.
pub fn algorithm_b(
    model: &MarkovModel,
    sampler: &WordSampler,
    policy: &InsertionPolicy,
    n: usize,
    c: usize,
    replicates: u64,
    seed: u64,
) -> Result<EstimateReport> {
    check_replicates(replicates)?;
    if policy.n() != n || policy.c() != c {
        return Err(Error::Config(format!(
            "policy built for (n = {}, c = {}) used with (n = {n}, c = {c})",
            policy.n(),
            policy.c()
        )));
    }
    let mut notes = Vec::new();
    if n < c * sampler.max_len() {
        notes.push(format!(
            "sequence length {n} is below c * longest word = {}; the target count may be \
             unreachable",
            c * sampler.max_len()
        ));
    }
    let started = Instant::now();
    let reps = run_replicates(replicates, seed, |rng| {
        let run = simulate_b(model, sampler, policy, n, rng);
        Rep {
            contribution: if run.count >= c {
                run.likelihood.recip()
            } else {
                0.0
            },
            count: run.count,
            insertions: run.inserted_positions.len() as u32,
            attempts: run.draw_attempts,
            beta_span: inserted_beta_span(sampler, &run),
        }
    });
    Ok(fold_report(
        reps,
        c,
        "is-b",
        seed,
        false,
        Some(sampler.info().summary()),
        notes,
        started,
    ))
}

/// Which single-family algorithm drives each replicate of a combined run.
/// `B` uses each family's adaptive insertion policy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CombinedAlgorithm {
    A,
    B,
}

/// Union-event estimator over several families: `P{exists j: N_j >= c_j}`.
///
/// Each replicate picks one family uniformly at random, generates with that
/// family's insertion measure, counts every family on the result, and scales
/// the inverse likelihood by `J / #{j : N_j >= c_j}` (0/0 = 0). With a
/// single family this reduces exactly, replicate by replicate, to the
/// corresponding single-family estimator.
pub fn combined(
    model: &MarkovModel,
    samplers: &[&WordSampler],
    thresholds: &[usize],
    algorithm: CombinedAlgorithm,
    n: usize,
    replicates: u64,
    seed: u64,
) -> Result<EstimateReport> {
    check_replicates(replicates)?;
    let j_count = samplers.len();
    if j_count == 0 {
        return Err(Error::Config(
            "combined estimation needs at least one family".into(),
        ));
    }
    if thresholds.len() != j_count {
        return Err(Error::Config(format!(
            "{} thresholds for {} families",
            thresholds.len(),
            j_count
        )));
    }
    if let Some(&c) = thresholds.iter().find(|&&c| c == 0) {
        return Err(Error::Config(format!(
            "count threshold must be at least 1, got {c}"
        )));
    }
    let policies = match algorithm {
        CombinedAlgorithm::A => {
            if let Some(&c) = thresholds.iter().find(|&&c| c != 1) {
                return Err(Error::Config(format!(
                    "the plant-one-word algorithm only estimates c = 1, got c = {c}"
                )));
            }
            if let Some(s) = samplers.iter().find(|s| n < s.max_len()) {
                return Err(Error::Config(format!(
                    "sequence length {n} cannot hold the longest bank word ({})",
                    s.max_len()
                )));
            }
            Vec::new()
        }
        CombinedAlgorithm::B => thresholds
            .iter()
            .zip(samplers)
            .map(|(&c, s)| InsertionPolicy::adaptive(n, c, s.min_len()))
            .collect::<Result<Vec<_>>>()?,
    };

    let started = Instant::now();
    let reps = run_replicates(replicates, seed, |rng| {
        let j = if j_count > 1 {
            rng.random_range(0..j_count)
        } else {
            0
        };
        let run = match algorithm {
            CombinedAlgorithm::A => simulate_a(model, samplers[j], n, rng),
            CombinedAlgorithm::B => simulate_b(model, samplers[j], &policies[j], n, rng),
        };
        let mut satisfied = 0usize;
        let mut chosen_hit = false;
        for (idx, (s, &c)) in samplers.iter().zip(thresholds).enumerate() {
            let count = if idx == j {
                run.count
            } else {
                s.matcher().count_nonoverlapping(&run.s)
            };
            if count >= c {
                satisfied += 1;
                if idx == j {
                    chosen_hit = true;
                }
            }
        }
        let contribution = if chosen_hit {
            (j_count as f64 / satisfied as f64) / run.likelihood
        } else {
            0.0
        };
        Rep {
            contribution,
            count: if chosen_hit { 1 } else { 0 },
            insertions: run.inserted_positions.len() as u32,
            attempts: run.draw_attempts,
            beta_span: inserted_beta_span(samplers[j], &run),
        }
    });
    let tag = match algorithm {
        CombinedAlgorithm::A => "combined-is-a",
        CombinedAlgorithm::B => "combined-is-b",
    };
    let c_report = thresholds.iter().copied().max().unwrap_or(1);
    let summary = samplers
        .iter()
        .map(|s| s.info().summary())
        .collect::<Vec<_>>()
        .join(" | ");
    Ok(fold_report(
        reps,
        c_report,
        tag,
        seed,
        false,
        Some(summary),
        Vec::new(),
        started,
    ))
}

/// Closed-form approximation for `P{N >= 1}` with a score-threshold motif:
/// `1 - (1 - P{S(chain window) >= t})^(n - m + 1)`, with the window score
/// tail computed exactly from the score lattice.
pub fn huang_approx(model: &MarkovModel, pswm: &Pswm, threshold: f64, n: usize) -> Result<f64> {
    let m = pswm.len();
    if m == 0 {
        return Err(Error::Input("the score matrix has no columns".into()));
    }
    if n < m {
        return Ok(0.0);
    }
    let tail = pswm.score_dist(model)?.tail(threshold);
    Ok(1.0 - (1.0 - tail).powi((n - m + 1) as i32))
}
