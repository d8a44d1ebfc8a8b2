//! Throughput benchmarks for the hot paths: chain generation with
//! counting, bank draws, and full estimator batches at small replicate
//! counts.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use raremotif_core::estimate::{algorithm_a, algorithm_b};
use raremotif_core::{presets, InsertionPolicy, Matcher, PatternFamily, WordSampler};

fn generate_and_count(criterion: &mut Criterion) {
    let model = presets::chain_by_name("yeast").unwrap();
    let pswm = presets::pswm_by_name("swi5").unwrap();
    let matcher = Matcher::new(
        model.alphabet(),
        PatternFamily::PswmMotif {
            pswm,
            threshold: 50.0,
        },
    )
    .unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    criterion.bench_function("generate_count_swi5_n700", |b| {
        b.iter_batched(
            || model.generate(700, &mut rng),
            |seq| matcher.count_nonoverlapping(&seq),
            BatchSize::SmallInput,
        )
    });
}

fn bank_draws(criterion: &mut Criterion) {
    let model = presets::chain_by_name("yeast").unwrap();
    let palindrome =
        WordSampler::palindrome(&model, 3, raremotif_core::PalindromeVariant::Joined).unwrap();
    let pswm = presets::pswm_by_name("swi5").unwrap();
    let tilted = WordSampler::tilted_pswm(&model, pswm, 50.0, 0.0, 0).unwrap();
    let mut group = criterion.benchmark_group("bank_draw");
    for (name, sampler) in [("palindrome_m3", &palindrome), ("tilted_swi5_t50", &tilted)] {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        group.bench_function(name, |b| b.iter(|| sampler.draw(&mut rng)));
    }
    group.finish();
}

fn estimator_batches(criterion: &mut Criterion) {
    const REPLICATES: u64 = 100;
    let uniform = presets::chain_by_name("uniform-dna").unwrap();
    let w_rep = presets::pswm_by_name("w-rep").unwrap();
    let plant_bank = WordSampler::tilted_pswm(&uniform, w_rep, 11.0, 0.0, 0).unwrap();

    let yeast = presets::chain_by_name("yeast").unwrap();
    let swi5 = presets::pswm_by_name("swi5").unwrap();
    let sequential_bank = WordSampler::tilted_pswm(&yeast, swi5, 50.0, 0.0, 0).unwrap();
    let policy = InsertionPolicy::adaptive(700, 2, sequential_bank.min_len()).unwrap();

    let mut group = criterion.benchmark_group("estimator_100_replicates");
    group.sample_size(10);
    group.bench_function("plant_w_rep_n200", |b| {
        let mut seed = 0;
        b.iter(|| {
            seed += 1;
            algorithm_a(&uniform, &plant_bank, 200, REPLICATES, seed).unwrap()
        })
    });
    group.bench_function("sequential_swi5_n700_c2", |b| {
        let mut seed = 0;
        b.iter(|| {
            seed += 1;
            algorithm_b(&yeast, &sequential_bank, &policy, 700, 2, REPLICATES, seed).unwrap()
        })
    });
    group.finish();
}

criterion_group!(benches, generate_and_count, bank_draws, estimator_batches);
criterion_main!(benches);
