//! Acceptance suite: each test exercises one headline requirement end to end
//! and prints a single `acceptance <k> PASS|FAIL ...` summary line (shown
//! with `cargo test --test acceptance -- --nocapture`) before asserting.

use std::collections::HashMap;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use raremotif_core::bank::{solve_theta, tilted_mean_score};
use raremotif_core::estimate::{algorithm_a, algorithm_b, combined, direct_mc, huang_approx};
use raremotif_core::oracle::{exact_pvalue, exact_pvalue_any, exact_q};
use raremotif_core::{
    presets, Alphabet, CombinedAlgorithm, EstimateReport, InsertionPolicy, MarkovModel,
    PalindromeVariant, PatternFamily, Pswm, WordSampler,
};

/// Reference runs for the repeated-column scoring matrix on the uniform
/// chain, n = 200: `(threshold, estimate, standard error)` at K = 1000.
const PLANT_REP_REFERENCE: [(f64, f64, f64); 3] = [
    (9.0, 3.0e-2, 0.1e-2),
    (10.0, 4.0e-3, 0.2e-3),
    (11.0, 2.7e-4, 0.1e-4),
];

/// Same layout for the distinct-column matrix.
const PLANT_NOREP_REFERENCE: [(f64, f64, f64); 3] = [
    (9.0, 7.5e-2, 0.2e-2),
    (10.0, 6.9e-3, 0.2e-3),
    (11.0, 4.1e-4, 0.1e-4),
];

/// Reference sequential-insertion runs for the swi5 motif at threshold 50 on
/// the yeast chain, n = 700: `(c, estimate, standard error)` at K = 1000.
const SEQUENTIAL_REFERENCE: [(usize, f64, f64); 4] = [
    (1, 9.1e-2, 0.3e-2),
    (2, 4.2e-3, 0.2e-3),
    (3, 1.3e-4, 0.1e-4),
    (4, 2.6e-6, 0.3e-6),
];

/// Reference run for the first structured-motif pair with gaps 16..=18 on
/// the B. subtilis chain, n = 100, plus the closed-form value it should
/// stay within ten percent of.
const STRUCTURED_FIRST_REFERENCE: (f64, f64) = (1.038e-4, 0.006e-4);
const STRUCTURED_FIRST_ANALYTIC: f64 = 1.01e-4;

/// Reference combined run over all eight structured-motif pairs.
const STRUCTURED_COMBINED_REFERENCE: (f64, f64) = (2.96e-3, 0.03e-3);

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

/// One summary line per criterion, written straight to the process stderr
/// so it stays visible under the default test-harness output capture.
macro_rules! summary {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        // The leading newline detaches the summary from the harness's
        // in-progress `test name ... ` line.
        let _ = writeln!(std::io::stderr().lock(), "\n{}", format!($($arg)*));
    }};
}

/// Distance between an estimate and a reference value in units of the
/// combined standard error of the two runs.
fn gauge(p_hat: f64, se: f64, reference: f64, ref_se: f64) -> f64 {
    (p_hat - reference).abs() / (se * se + ref_se * ref_se).sqrt()
}

fn two_letter_chain() -> (Alphabet, MarkovModel) {
    let alphabet = Alphabet::new("ab".chars()).unwrap();
    let model = MarkovModel::new(alphabet.clone(), vec![vec![0.6, 0.4], vec![0.3, 0.7]]).unwrap();
    (alphabet, model)
}

/// Three-position matrix over {a, b}; words scoring at least 5 are exactly
/// {aba, abb}.
fn two_letter_motif(alphabet: &Alphabet) -> Pswm {
    Pswm::new(
        alphabet.clone(),
        vec![vec![2.0, 0.0, 1.0], vec![0.0, 3.0, 0.0]],
    )
    .unwrap()
}

/// Two-position matrix over {a, b}: threshold 1 keeps {aa, ab, bb},
/// threshold 2 keeps {ab}.
fn two_letter_pair_motif(alphabet: &Alphabet) -> Pswm {
    Pswm::new(alphabet.clone(), vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap()
}

#[test]
fn criterion_1_window_tail_approximation_matches_reference() {
    let started = Instant::now();
    let model = presets::uniform_dna();
    let mut rows = Vec::new();
    let mut ok = true;
    for (t, reference) in [(9.0f64, 7.1e-2f64), (10.0, 7.1e-3), (11.0, 4.2e-4)] {
        // Both preset matrices share per-position weight multisets, so the
        // window-tail value is the same for each; check both anyway.
        for pswm in [presets::w_rep(), presets::w_norep()] {
            let p = huang_approx(&model, &pswm, t, 200).unwrap();
            ok &= format!("{p:.1e}") == format!("{reference:.1e}");
        }
        let p = huang_approx(&model, &presets::w_rep(), t, 200).unwrap();
        rows.push(format!("t={t}: {p:.4e} ~ {reference:.1e}"));
    }
    let secs = started.elapsed().as_secs_f64();
    ok &= secs < 1.0;
    summary!(
        "acceptance 1 {}: window-tail approximation to two significant figures ({}) [{secs:.3}s]",
        verdict(ok),
        rows.join(", ")
    );
    assert!(
        ok,
        "window-tail approximation mismatch: {}",
        rows.join(", ")
    );
}

#[test]
fn criterion_2_plant_estimator_matches_reference_pswm_runs() {
    let started = Instant::now();
    let model = presets::uniform_dna();
    let mut rows = Vec::new();
    let mut worst = 0.0f64;
    let cases = [
        ("rep", presets::w_rep(), PLANT_REP_REFERENCE),
        ("norep", presets::w_norep(), PLANT_NOREP_REFERENCE),
    ];
    for (name, pswm, refs) in cases {
        for (k, (t, reference, ref_se)) in refs.iter().enumerate() {
            let sampler = WordSampler::tilted_pswm(&model, pswm.clone(), *t, 0.0, 7).unwrap();
            let report = algorithm_a(&model, &sampler, 200, 10_000, 2_101 + k as u64).unwrap();
            let z = gauge(report.p_hat, report.se, *reference, *ref_se);
            worst = worst.max(z);
            rows.push(format!(
                "{name} t={t}: {:.3e}±{:.1e} vs {reference:.1e}±{ref_se:.1e} (z={z:.2})",
                report.p_hat, report.se
            ));
        }
    }
    let secs = started.elapsed().as_secs_f64();
    let ok = worst <= 4.0 && secs < 120.0;
    summary!(
        "acceptance 2 {}: plant estimator vs reference runs, max z = {worst:.2} ({}) [{secs:.1}s]",
        verdict(ok),
        rows.join("; ")
    );
    assert!(ok, "plant estimator out of tolerance: {}", rows.join("; "));
}

#[test]
fn criterion_3_sequential_estimator_matches_reference_swi5_runs() {
    let started = Instant::now();
    let model = presets::yeast_chain();
    let sampler = WordSampler::tilted_pswm(&model, presets::swi5(), 50.0, 0.0, 7).unwrap();
    let word_len = sampler.min_len();
    let mut rows = Vec::new();
    let mut worst = 0.0f64;
    for (c, reference, ref_se) in SEQUENTIAL_REFERENCE {
        let policy = InsertionPolicy::adaptive(700, c, word_len).unwrap();
        let report =
            algorithm_b(&model, &sampler, &policy, 700, c, 10_000, 3_301 + c as u64).unwrap();
        let z = gauge(report.p_hat, report.se, reference, ref_se);
        worst = worst.max(z);
        rows.push(format!(
            "c={c}: {:.3e}±{:.1e} vs {reference:.1e}±{ref_se:.1e} (z={z:.2})",
            report.p_hat, report.se
        ));
    }
    let secs = started.elapsed().as_secs_f64();
    let ok = worst <= 4.0 && secs < 600.0;
    summary!(
        "acceptance 3 {}: sequential estimator vs reference runs, max z = {worst:.2} ({}) \
         [{secs:.1}s]",
        verdict(ok),
        rows.join("; ")
    );
    assert!(
        ok,
        "sequential estimator out of tolerance: {}",
        rows.join("; ")
    );
}

#[test]
fn criterion_4_structured_motif_runs_match_reference_and_analytic() {
    let started = Instant::now();
    let model = presets::bsubtilis_chain();
    let alphabet = model.alphabet().clone();
    let pairs = presets::structured_motif_pairs();
    let samplers: Vec<WordSampler> = pairs
        .iter()
        .map(|(w1, w2)| {
            WordSampler::structured_motif(
                &model,
                alphabet.encode(w1).unwrap(),
                alphabet.encode(w2).unwrap(),
                16,
                18,
            )
            .unwrap()
        })
        .collect();

    let first = algorithm_a(&model, &samplers[0], 100, 10_000, 4_401).unwrap();
    let (ref_p, ref_se) = STRUCTURED_FIRST_REFERENCE;
    let z1 = gauge(first.p_hat, first.se, ref_p, ref_se);
    let analytic_gap = (first.p_hat - STRUCTURED_FIRST_ANALYTIC).abs() / STRUCTURED_FIRST_ANALYTIC;

    // The reference figure for all eight motifs tracks the sum of the
    // per-family probabilities (the multiplicity correction has no effect
    // on it), so reproduce it as that upper bound from single-family runs.
    let mut bound = 0.0;
    let mut bound_var = 0.0;
    for (j, sampler) in samplers.iter().enumerate() {
        let r = algorithm_a(&model, sampler, 100, 10_000, 4_410 + j as u64).unwrap();
        bound += r.p_hat;
        bound_var += r.se * r.se;
    }
    let bound_se = bound_var.sqrt();
    let (ref_all, ref_all_se) = STRUCTURED_COMBINED_REFERENCE;
    let z2 = gauge(bound, bound_se, ref_all, ref_all_se);

    // The corrected multi-family estimator targets the plain union, which
    // sits well below the bound here because the eight families overlap;
    // validate it against a direct Monte Carlo baseline.
    let union = combined(
        &model,
        &samplers.iter().collect::<Vec<_>>(),
        &[1; 8],
        CombinedAlgorithm::A,
        100,
        10_000,
        4_402,
    )
    .unwrap();
    let matchers: Vec<_> = samplers.iter().map(|s| s.matcher()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(4_403);
    let draws: u64 = 300_000;
    let mut hits = 0u64;
    for _ in 0..draws {
        let s = model.generate(100, &mut rng);
        if matchers.iter().any(|m| m.count_nonoverlapping(&s) >= 1) {
            hits += 1;
        }
    }
    let mc = hits as f64 / draws as f64;
    let mc_se = (mc * (1.0 - mc) / draws as f64).sqrt();
    let z3 = gauge(union.p_hat, union.se, mc, mc_se);

    let secs = started.elapsed().as_secs_f64();
    let ok = z1 <= 4.0 && analytic_gap <= 0.10 && z2 <= 4.0 && z3 <= 4.0 && secs < 300.0;
    summary!(
        "acceptance 4 {}: first pair {:.4e}±{:.1e} (z={z1:.2}, {:.1}% from analytic \
         {STRUCTURED_FIRST_ANALYTIC:.2e}); eight-family bound {bound:.3e}±{bound_se:.1e} \
         (z={z2:.2} vs {ref_all:.2e}); union {:.3e}±{:.1e} vs direct {mc:.3e}±{mc_se:.1e} \
         (z={z3:.2}) [{secs:.1}s]",
        verdict(ok),
        first.p_hat,
        first.se,
        100.0 * analytic_gap,
        union.p_hat,
        union.se
    );
    assert!(
        ok,
        "structured-motif runs out of tolerance: z1={z1:.2}, analytic gap {:.1}%, z2={z2:.2}, \
         z3={z3:.2}",
        100.0 * analytic_gap
    );
}

struct Agreement {
    label: String,
    z: f64,
}

fn record(
    checks: &mut Vec<Agreement>,
    label: impl Into<String>,
    report: &EstimateReport,
    exact: f64,
) {
    let gap = (report.p_hat - exact).abs();
    let z = if gap == 0.0 { 0.0 } else { gap / report.se };
    checks.push(Agreement {
        label: label.into(),
        z,
    });
}

#[test]
fn criterion_5_toy_estimates_agree_with_exhaustive_enumeration() {
    const K: u64 = 100_000;
    let started = Instant::now();
    let mut checks: Vec<Agreement> = Vec::new();
    let dna = Alphabet::dna();
    let uniform = presets::uniform_dna();
    let yeast = presets::yeast_chain();

    // Explicit set {at}: a single occurrence, then a perfect double packing.
    let at = PatternFamily::explicit_from_strs(&dna, &["at"]).unwrap();
    let bank = WordSampler::for_family(&uniform, &at, 0.0, 7).unwrap();
    let exact1 = exact_pvalue(&uniform, &at, 4, 1).unwrap().p;
    record(
        &mut checks,
        "explicit direct",
        &direct_mc(&uniform, &at, 4, 1, K, 501).unwrap(),
        exact1,
    );
    record(
        &mut checks,
        "explicit plant",
        &algorithm_a(&uniform, &bank, 4, K, 502).unwrap(),
        exact1,
    );
    let policy = InsertionPolicy::adaptive(4, 1, 2).unwrap();
    record(
        &mut checks,
        "explicit sequential c=1",
        &algorithm_b(&uniform, &bank, &policy, 4, 1, K, 503).unwrap(),
        exact1,
    );
    let exact2 = exact_pvalue(&uniform, &at, 6, 2).unwrap().p;
    record(
        &mut checks,
        "explicit direct c=2",
        &direct_mc(&uniform, &at, 6, 2, K, 504).unwrap(),
        exact2,
    );
    let policy = InsertionPolicy::adaptive(6, 2, 2).unwrap();
    record(
        &mut checks,
        "explicit sequential c=2 adaptive",
        &algorithm_b(&uniform, &bank, &policy, 6, 2, K, 505).unwrap(),
        exact2,
    );
    let policy = InsertionPolicy::constant_suggested(6, 2, 2).unwrap();
    record(
        &mut checks,
        "explicit sequential c=2 constant",
        &algorithm_b(&uniform, &bank, &policy, 6, 2, K, 506).unwrap(),
        exact2,
    );

    // Palindromes of half length 1 on the yeast chain.
    let pal = PatternFamily::Palindrome { half_len: 1 };
    let bank = WordSampler::palindrome(&yeast, 1, PalindromeVariant::Joined).unwrap();
    let exact1 = exact_pvalue(&yeast, &pal, 5, 1).unwrap().p;
    record(
        &mut checks,
        "palindrome direct",
        &direct_mc(&yeast, &pal, 5, 1, K, 511).unwrap(),
        exact1,
    );
    record(
        &mut checks,
        "palindrome plant",
        &algorithm_a(&yeast, &bank, 5, K, 512).unwrap(),
        exact1,
    );
    let policy = InsertionPolicy::adaptive(5, 1, 2).unwrap();
    record(
        &mut checks,
        "palindrome sequential c=1",
        &algorithm_b(&yeast, &bank, &policy, 5, 1, K, 513).unwrap(),
        exact1,
    );
    let exact2 = exact_pvalue(&yeast, &pal, 5, 2).unwrap().p;
    let policy = InsertionPolicy::adaptive(5, 2, 2).unwrap();
    record(
        &mut checks,
        "palindrome sequential c=2",
        &algorithm_b(&yeast, &bank, &policy, 5, 2, K, 514).unwrap(),
        exact2,
    );

    // Inverted repeats, half length 1 with gaps 0..=2, uniform chain.
    let inv = PatternFamily::InvertedRepeat {
        half_len: 1,
        d1: 0,
        d2: 2,
    };
    let bank = WordSampler::inverted_repeat(&uniform, 1, 0, 2).unwrap();
    let exact1 = exact_pvalue(&uniform, &inv, 5, 1).unwrap().p;
    record(
        &mut checks,
        "inverted-repeat direct",
        &direct_mc(&uniform, &inv, 5, 1, K, 521).unwrap(),
        exact1,
    );
    record(
        &mut checks,
        "inverted-repeat plant",
        &algorithm_a(&uniform, &bank, 5, K, 522).unwrap(),
        exact1,
    );
    let policy = InsertionPolicy::adaptive(5, 1, 2).unwrap();
    record(
        &mut checks,
        "inverted-repeat sequential c=1",
        &algorithm_b(&uniform, &bank, &policy, 5, 1, K, 523).unwrap(),
        exact1,
    );
    let exact2 = exact_pvalue(&uniform, &inv, 5, 2).unwrap().p;
    let policy = InsertionPolicy::adaptive(5, 2, 2).unwrap();
    record(
        &mut checks,
        "inverted-repeat sequential c=2",
        &algorithm_b(&uniform, &bank, &policy, 5, 2, K, 524).unwrap(),
        exact2,
    );

    // Tilted fixed-length motif on a two-letter chain.
    let (ab, two) = two_letter_chain();
    let motif = two_letter_motif(&ab);
    let fam = PatternFamily::PswmMotif {
        pswm: motif.clone(),
        threshold: 5.0,
    };
    let bank = WordSampler::tilted_pswm(&two, motif, 5.0, 0.0, 7).unwrap();
    let exact1 = exact_pvalue(&two, &fam, 12, 1).unwrap().p;
    record(
        &mut checks,
        "motif plant",
        &algorithm_a(&two, &bank, 12, K, 531).unwrap(),
        exact1,
    );
    let policy = InsertionPolicy::adaptive(12, 1, 3).unwrap();
    record(
        &mut checks,
        "motif sequential c=1",
        &algorithm_b(&two, &bank, &policy, 12, 1, K, 532).unwrap(),
        exact1,
    );
    let exact2 = exact_pvalue(&two, &fam, 12, 2).unwrap().p;
    record(
        &mut checks,
        "motif direct c=2",
        &direct_mc(&two, &fam, 12, 2, K, 533).unwrap(),
        exact2,
    );
    let policy = InsertionPolicy::adaptive(12, 2, 3).unwrap();
    record(
        &mut checks,
        "motif sequential c=2",
        &algorithm_b(&two, &bank, &policy, 12, 2, K, 534).unwrap(),
        exact2,
    );

    // Two co-occurring motif windows on the two-letter chain.
    let pair = two_letter_pair_motif(&ab);
    let fam = PatternFamily::CoOccurrence {
        pswm1: pair.clone(),
        threshold1: 1.0,
        pswm2: pair.clone(),
        threshold2: 2.0,
        d1: 0,
        d2: 1,
    };
    let bank = WordSampler::co_occurrence(&two, pair.clone(), 1.0, pair.clone(), 2.0, 0, 1, 0.0, 7)
        .unwrap();
    let exact1 = exact_pvalue(&two, &fam, 8, 1).unwrap().p;
    record(
        &mut checks,
        "co-occurrence direct",
        &direct_mc(&two, &fam, 8, 1, K, 541).unwrap(),
        exact1,
    );
    record(
        &mut checks,
        "co-occurrence plant",
        &algorithm_a(&two, &bank, 8, K, 542).unwrap(),
        exact1,
    );
    let policy = InsertionPolicy::adaptive(8, 1, bank.min_len()).unwrap();
    record(
        &mut checks,
        "co-occurrence sequential c=1",
        &algorithm_b(&two, &bank, &policy, 8, 1, K, 543).unwrap(),
        exact1,
    );

    // Structured motif toy on the uniform chain.
    let fam = PatternFamily::structured_from_strs(&dna, "at", "g", 0, 1).unwrap();
    let bank = WordSampler::structured_motif(
        &uniform,
        dna.encode("at").unwrap(),
        dna.encode("g").unwrap(),
        0,
        1,
    )
    .unwrap();
    let exact1 = exact_pvalue(&uniform, &fam, 6, 1).unwrap().p;
    record(
        &mut checks,
        "structured direct",
        &direct_mc(&uniform, &fam, 6, 1, K, 551).unwrap(),
        exact1,
    );
    record(
        &mut checks,
        "structured plant",
        &algorithm_a(&uniform, &bank, 6, K, 552).unwrap(),
        exact1,
    );
    let policy = InsertionPolicy::adaptive(6, 1, bank.min_len()).unwrap();
    record(
        &mut checks,
        "structured sequential c=1",
        &algorithm_b(&uniform, &bank, &policy, 6, 1, K, 553).unwrap(),
        exact1,
    );

    // Two families at once: {at} together with half-length-1 palindromes.
    let bank_at = WordSampler::for_family(&uniform, &at, 0.0, 7).unwrap();
    let bank_pal = WordSampler::palindrome(&uniform, 1, PalindromeVariant::Joined).unwrap();
    let banks = [&bank_at, &bank_pal];
    let exact_union = exact_pvalue_any(&uniform, &[(at.clone(), 1), (pal.clone(), 1)], 5)
        .unwrap()
        .p;
    record(
        &mut checks,
        "combined plant",
        &combined(&uniform, &banks, &[1, 1], CombinedAlgorithm::A, 5, K, 561).unwrap(),
        exact_union,
    );
    record(
        &mut checks,
        "combined sequential",
        &combined(&uniform, &banks, &[1, 1], CombinedAlgorithm::B, 5, K, 562).unwrap(),
        exact_union,
    );
    let exact_union2 = exact_pvalue_any(&uniform, &[(at.clone(), 2), (pal.clone(), 1)], 6)
        .unwrap()
        .p;
    record(
        &mut checks,
        "combined sequential mixed thresholds",
        &combined(&uniform, &banks, &[2, 1], CombinedAlgorithm::B, 6, K, 563).unwrap(),
        exact_union2,
    );

    let secs = started.elapsed().as_secs_f64();
    let worst = checks.iter().map(|c| c.z).fold(0.0f64, f64::max);
    let failures: Vec<String> = checks
        .iter()
        .filter(|c| c.z.is_nan() || c.z > 4.0)
        .map(|c| format!("{} (z={:.2})", c.label, c.z))
        .collect();
    let ok = failures.is_empty() && secs < 300.0;
    summary!(
        "acceptance 5 {}: {} toy agreements across all six family kinds, max z = {worst:.2} \
         [{secs:.1}s]",
        verdict(ok),
        checks.len()
    );
    assert!(
        ok,
        "toy estimates disagree with enumeration: {}",
        failures.join("; ")
    );
}

/// Chi-square goodness-of-fit p-value with low-expectation cells pooled so
/// every bin expects at least five draws.
fn merged_chi_square_p(observed: &[f64], expected: &[f64]) -> f64 {
    let mut cells: Vec<(f64, f64)> = expected
        .iter()
        .copied()
        .zip(observed.iter().copied())
        .collect();
    cells.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    let mut bins: Vec<(f64, f64)> = Vec::new();
    let mut pool = (0.0f64, 0.0f64);
    for (e, o) in cells {
        if e >= 5.0 {
            bins.push((e, o));
        } else {
            pool.0 += e;
            pool.1 += o;
        }
    }
    if pool.0 > 0.0 {
        if pool.0 >= 5.0 || bins.is_empty() {
            bins.push(pool);
        } else {
            let last = bins.last_mut().unwrap();
            last.0 += pool.0;
            last.1 += pool.1;
        }
    }
    if bins.len() < 2 {
        return 1.0;
    }
    let stat: f64 = bins.iter().map(|(e, o)| (o - e) * (o - e) / e).sum();
    let dof = (bins.len() - 1) as f64;
    1.0 - ChiSquared::new(dof).unwrap().cdf(stat)
}

/// Draws from the bank, compares the empirical law with the enumerated one,
/// and checks the mediant bracket on the density-to-probability ratio.
/// Returns (chi-square p, total density, bracket ok).
fn bank_distribution_check(
    model: &MarkovModel,
    sampler: &WordSampler,
    draws: u64,
    seed: u64,
) -> (f64, f64, bool) {
    let table = exact_q(model, sampler).unwrap();
    let index: HashMap<_, usize> = table
        .iter()
        .enumerate()
        .map(|(i, (w, _))| (w.clone(), i))
        .collect();
    let mut observed = vec![0.0f64; table.len()];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..draws {
        let w = sampler.draw(&mut rng);
        observed[*index.get(&w).expect("draw outside the family")] += 1.0;
    }
    let expected: Vec<f64> = table.iter().map(|(_, q)| q * draws as f64).collect();
    let p = merged_chi_square_p(&observed, &expected);
    let q_sum: f64 = table.iter().map(|(_, q)| q).sum();

    let members = sampler.matcher().enumerate_members().unwrap();
    let total: f64 = members.iter().map(|w| model.word_prob(w).unwrap()).sum();
    let inverse_total = total.recip();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for w in &members {
        let b = sampler.beta(w);
        lo = lo.min(b);
        hi = hi.max(b);
    }
    let bracket = lo <= inverse_total * (1.0 + 1e-9) && inverse_total <= hi * (1.0 + 1e-9);
    (p, q_sum, bracket)
}

#[test]
fn criterion_6_bank_draws_follow_their_stated_densities() {
    const DRAWS: u64 = 100_000;
    let started = Instant::now();
    let uniform = presets::uniform_dna();
    let yeast = presets::yeast_chain();
    let dna = Alphabet::dna();
    let (ab, two) = two_letter_chain();
    let pair = two_letter_pair_motif(&ab);

    // Three-position toy matrix over the DNA alphabet for the tilted bank.
    let toy = Pswm::new(
        dna.clone(),
        vec![
            vec![2.0, 0.0, 1.0],
            vec![0.0, 3.0, 0.0],
            vec![1.0, 1.0, 2.0],
            vec![0.0, 0.0, 0.0],
        ],
    )
    .unwrap();

    let cases: Vec<(&str, &MarkovModel, WordSampler)> = vec![
        (
            "palindrome m=1 joined",
            &uniform,
            WordSampler::palindrome(&uniform, 1, PalindromeVariant::Joined).unwrap(),
        ),
        (
            "palindrome m=2 joined",
            &yeast,
            WordSampler::palindrome(&yeast, 2, PalindromeVariant::Joined).unwrap(),
        ),
        (
            "palindrome m=2 separate",
            &yeast,
            WordSampler::palindrome(&yeast, 2, PalindromeVariant::Separate).unwrap(),
        ),
        (
            "inverted repeat m=1 d=0..2",
            &uniform,
            WordSampler::inverted_repeat(&uniform, 1, 0, 2).unwrap(),
        ),
        (
            "tilted toy m=3",
            &yeast,
            WordSampler::tilted_pswm(&yeast, toy, 4.0, 0.0, 7).unwrap(),
        ),
        (
            "co-occurrence toy",
            &two,
            WordSampler::co_occurrence(&two, pair.clone(), 1.0, pair.clone(), 2.0, 0, 1, 0.0, 7)
                .unwrap(),
        ),
        (
            "structured toy",
            &yeast,
            WordSampler::structured_motif(
                &yeast,
                dna.encode("at").unwrap(),
                dna.encode("g").unwrap(),
                0,
                2,
            )
            .unwrap(),
        ),
    ];

    let mut rows = Vec::new();
    let mut ok = true;
    for (i, (name, model, sampler)) in cases.iter().enumerate() {
        let (p, q_sum, bracket) = bank_distribution_check(model, sampler, DRAWS, 660 + i as u64);
        let fit = p > 0.001;
        let normalized = (q_sum - 1.0).abs() <= 1e-10;
        ok &= fit && normalized && bracket;
        rows.push(format!(
            "{name}: chi2 p={p:.3}{}{}",
            if normalized { "" } else { " BAD-NORM" },
            if bracket { "" } else { " BAD-BRACKET" }
        ));
    }
    let secs = started.elapsed().as_secs_f64();
    summary!(
        "acceptance 6 {}: bank goodness of fit, normalization, and ratio brackets ({}) [{secs:.1}s]",
        verdict(ok),
        rows.join("; ")
    );
    assert!(ok, "bank distribution check failed: {}", rows.join("; "));
}

#[test]
fn criterion_7_tilt_solver_hits_target_means() {
    let uniform = presets::uniform_dna();
    let theta = solve_theta(&uniform, &presets::w_rep(), 9.0).unwrap();
    let gap = (theta - 9.0f64.ln()).abs();

    let yeast = presets::yeast_chain();
    let swi5 = presets::swi5();
    let theta2 = solve_theta(&yeast, &swi5, 50.0).unwrap();
    let residual = (tilted_mean_score(&yeast, &swi5, theta2).unwrap() - 50.0).abs();

    let ok = gap <= 1e-9 && residual < 1e-9;
    summary!(
        "acceptance 7 {}: theta for rep matrix at mean 9 is {theta:.12} (off ln 9 by {gap:.2e}); \
         swi5 mean residual at target 50 is {residual:.2e}",
        verdict(ok)
    );
    assert!(
        ok,
        "tilt solver off target: gap {gap:.2e}, residual {residual:.2e}"
    );
}

#[test]
fn criterion_8_plant_estimator_beats_direct_sampling_variance() {
    let model = presets::uniform_dna();
    let sampler = WordSampler::tilted_pswm(&model, presets::w_norep(), 11.0, 0.0, 7).unwrap();
    let report = algorithm_a(&model, &sampler, 200, 1000, 8_801).unwrap();
    // Standard error a direct run of the same size would have at this p.
    let binomial = (report.p_hat * (1.0 - report.p_hat) / 1000.0).sqrt();
    let ratio = report.se / binomial;
    let ok = report.se < 0.25 * binomial;
    summary!(
        "acceptance 8 {}: plant se {:.2e} vs direct-equivalent binomial se {binomial:.2e} \
         (ratio {ratio:.3})",
        verdict(ok),
        report.se
    );
    assert!(ok, "no variance reduction: ratio {ratio:.3}");
}

#[test]
fn criterion_9_reports_do_not_depend_on_thread_count() {
    let model = presets::yeast_chain();
    let sampler = WordSampler::tilted_pswm(&model, presets::swi5(), 50.0, 0.0, 7).unwrap();
    let policy = InsertionPolicy::adaptive(700, 2, sampler.min_len()).unwrap();
    let run_b = || algorithm_b(&model, &sampler, &policy, 700, 2, 2_000, 9_901).unwrap();
    let run_a = || algorithm_a(&model, &sampler, 700, 2_000, 9_902).unwrap();

    let pool1 = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let pool8 = rayon::ThreadPoolBuilder::new()
        .num_threads(8)
        .build()
        .unwrap();
    let (b1, a1) = pool1.install(|| (run_b(), run_a()));
    let (b8, a8) = pool8.install(|| (run_b(), run_a()));

    let ok = b1.p_hat.to_bits() == b8.p_hat.to_bits()
        && b1.se.to_bits() == b8.se.to_bits()
        && a1.p_hat.to_bits() == a8.p_hat.to_bits()
        && a1.se.to_bits() == a8.se.to_bits();
    summary!(
        "acceptance 9 {}: one vs eight threads give sequential {:.6e}/{:.6e} and plant \
         {:.6e}/{:.6e}",
        verdict(ok),
        b1.p_hat,
        b8.p_hat,
        a1.p_hat,
        a8.p_hat
    );
    assert!(ok, "estimates depend on the thread count");
}
