//! Brute-force ground truth for tiny instances.
//!
//! `exact_pvalue` sums the chain probability of every length-`n` sequence
//! whose pattern count reaches the threshold, and `exact_q` rebuilds a bank
//! density from its defining closed form with enumeration normalizers
//! instead of the sampler's internal tables. Both are deliberately naive:
//! they exist to validate the estimators and samplers on instances small
//! enough to enumerate, not to be fast.

use crate::alphabet::Word;
use crate::bank::{SamplerInfo, WordSampler};
use crate::error::{Error, Result};
use crate::markov::MarkovModel;
use crate::pattern::{CountState, Matcher, PatternFamily};
use crate::pswm::Pswm;

/// Largest number of sequences `exact_pvalue` will enumerate.
const MAX_SEQUENCES: u128 = 1 << 24;

/// An exactly enumerated probability together with the instance it belongs
/// to.
#[derive(Debug, Clone)]
pub struct ExactResult {
    pub p: f64,
    pub n: usize,
    /// Count threshold; for union events over several families, the largest
    /// per-family threshold.
    pub c: usize,
    pub family: String,
    pub enumeration_size: u64,
}

/// Exact `P{N >= c}` by exhaustive enumeration of all `|alphabet|^n`
/// sequences in lexicographic order.
pub fn exact_pvalue(
    model: &MarkovModel,
    family: &PatternFamily,
    n: usize,
    c: usize,
) -> Result<ExactResult> {
    exact_pvalue_any(model, &[(family.clone(), c)], n)
}

/// Exact `P{exists j: N_j >= c_j}` for several families at once.
pub fn exact_pvalue_any(
    model: &MarkovModel,
    targets: &[(PatternFamily, usize)],
    n: usize,
) -> Result<ExactResult> {
    if targets.is_empty() {
        return Err(Error::Input("at least one family is required".into()));
    }
    if let Some((_, c)) = targets.iter().find(|(_, c)| *c == 0) {
        return Err(Error::Input(format!(
            "count threshold must be at least 1, got {c}"
        )));
    }
    let size = (model.size() as u128)
        .checked_pow(n as u32)
        .filter(|s| *s <= MAX_SEQUENCES)
        .ok_or_else(|| {
            Error::TooLarge(format!(
                "{}^{n} sequences exceed the enumeration limit of 2^24",
                model.size()
            ))
        })?;

    let matchers = targets
        .iter()
        .map(|(f, _)| Matcher::new(model.alphabet(), f.clone()))
        .collect::<Result<Vec<_>>>()?;
    let mut states: Vec<CountState> = matchers.iter().map(CountState::new).collect();
    let thresholds: Vec<usize> = targets.iter().map(|(_, c)| *c).collect();

    let mut total = 0.0f64;
    dfs(model, n, 1.0, &mut states, &thresholds, &mut total);

    Ok(ExactResult {
        p: total,
        n,
        c: thresholds.iter().copied().max().unwrap_or(1),
        family: matchers
            .iter()
            .map(|m| m.describe())
            .collect::<Vec<_>>()
            .join(" or "),
        enumeration_size: size as u64,
    })
}

fn dfs(
    model: &MarkovModel,
    remaining: usize,
    prob: f64,
    states: &mut [CountState],
    thresholds: &[usize],
    total: &mut f64,
) {
    if remaining == 0 {
        if states.iter().zip(thresholds).any(|(s, &c)| s.count() >= c) {
            *total += prob;
        }
        return;
    }
    let first = states[0].is_empty();
    let prev = if first {
        0
    } else {
        *states[0].seq().last().expect("nonempty")
    };
    for x in 0..model.size() as u8 {
        let step = if first {
            model.pi(x)
        } else {
            model.sigma(prev, x)
        };
        if step == 0.0 {
            continue;
        }
        for s in states.iter_mut() {
            s.push(x);
        }
        dfs(model, remaining - 1, prob * step, states, thresholds, total);
        for s in states.iter_mut() {
            s.pop();
        }
    }
}

/// The exact bank density over an enumerable family, rebuilt from the
/// construction's closed form with normalizers computed by enumeration
/// (independent of the sampler's backward tables and acceptance estimates).
/// Explicit banks define `q` directly by their weight table, so for them the
/// sampler's own values are returned. Words come back in the member
/// enumeration order.
pub fn exact_q(model: &MarkovModel, sampler: &WordSampler) -> Result<Vec<(Word, f64)>> {
    let members = sampler.matcher().enumerate_members()?;
    match (sampler.matcher().family().clone(), sampler.info()) {
        (PatternFamily::ExplicitSet { .. }, _) => Ok(members
            .into_iter()
            .map(|w| {
                let p = sampler.q_eval(&w);
                (w, p)
            })
            .collect()),
        (PatternFamily::Palindrome { half_len }, SamplerInfo::Palindrome { variant, .. }) => {
            use crate::bank::PalindromeVariant;
            let weights: Vec<f64> = members
                .iter()
                .map(|w| {
                    let mut lw = model.log_pi(w[0]) + model.log_word_prob(w);
                    if variant == PalindromeVariant::Separate {
                        lw -= model.log_sigma(w[half_len - 1], w[half_len]);
                    }
                    lw.exp()
                })
                .collect();
            Ok(normalized(members, weights))
        }
        (PatternFamily::InvertedRepeat { half_len, .. }, _) => {
            // Summing pi(w_1) sigma(w) / sigma(junction) over all members of
            // one gap length marginalizes the gap symbols to 1, so the total
            // is the same for every gap length and a single global
            // normalization also reproduces the uniform gap-length choice.
            let weights: Vec<f64> = members
                .iter()
                .map(|w| {
                    let d = w.len() - 2 * half_len;
                    let junction = model.log_sigma(w[half_len + d - 1], w[half_len + d]);
                    (model.log_pi(w[0]) + model.log_word_prob(w) - junction).exp()
                })
                .collect();
            Ok(normalized(members, weights))
        }
        (PatternFamily::PswmMotif { pswm, .. }, SamplerInfo::TiltedPswm { theta, .. }) => {
            let weights = tilted_weights(model, &pswm, theta, &members)?;
            Ok(normalized(members, weights))
        }
        (
            PatternFamily::CoOccurrence {
                pswm1,
                threshold1,
                pswm2,
                threshold2,
                d1,
                d2,
            },
            SamplerInfo::CoOccurrence { first, second, .. },
        ) => {
            let (
                SamplerInfo::TiltedPswm { theta: theta1, .. },
                SamplerInfo::TiltedPswm { theta: theta2, .. },
            ) = (*first, *second)
            else {
                return Err(Error::Input(
                    "co-occurrence bank has non-motif components".into(),
                ));
            };
            let q1 = component_q(model, &pswm1, threshold1, theta1)?;
            let q2 = component_q(model, &pswm2, threshold2, theta2)?;
            let (m1, m2) = (pswm1.len(), pswm2.len());
            let gap_choices = (d2 - d1 + 1) as f64;
            let q = members
                .iter()
                .map(|w| {
                    let d = w.len() - m1 - m2;
                    let head = q1[&w[..m1]];
                    let tail = q2[&w[w.len() - m2..]];
                    let gap: f64 = (0..d)
                        .map(|j| model.log_sigma(w[m1 - 1 + j], w[m1 + j]))
                        .sum();
                    (w.clone(), head * tail * gap.exp() / gap_choices)
                })
                .collect();
            Ok(q)
        }
        (
            PatternFamily::StructuredMotif {
                word1,
                word2,
                d1,
                d2,
            },
            _,
        ) => {
            let core = word1.len() + word2.len();
            let slot_choices = (core + 1) as f64;
            let gap_choices = (d2 - d1 + 1) as f64;
            let alt_choices = (model.size() - 1) as f64;
            let q = members
                .iter()
                .map(|w| {
                    let d = w.len() - core;
                    let m = word1.len();
                    let mismatches = word1.iter().zip(&w[..m]).filter(|(a, b)| a != b).count()
                        + word2
                            .iter()
                            .zip(&w[w.len() - word2.len()..])
                            .filter(|(a, b)| a != b)
                            .count();
                    let gap: f64 = (0..d)
                        .map(|j| model.log_sigma(w[m - 1 + j], w[m + j]))
                        .sum();
                    let subs = if mismatches == 1 { alt_choices } else { 1.0 };
                    (w.clone(), gap.exp() / (slot_choices * gap_choices * subs))
                })
                .collect();
            Ok(q)
        }
        (family, info) => Err(Error::Input(format!(
            "no closed form registered for family {family:?} with bank {info:?}"
        ))),
    }
}

fn normalized(members: Vec<Word>, weights: Vec<f64>) -> Vec<(Word, f64)> {
    let total: f64 = weights.iter().sum();
    members
        .into_iter()
        .zip(weights)
        .map(|(w, u)| (w, u / total))
        .collect()
}

fn tilted_weights(
    model: &MarkovModel,
    pswm: &Pswm,
    theta: f64,
    members: &[Word],
) -> Result<Vec<f64>> {
    members
        .iter()
        .map(|w| {
            let s = pswm.score(w)?;
            Ok((theta * s + model.log_pi(w[0]) + model.log_word_prob(w)).exp())
        })
        .collect()
}

/// Exact tilted density for one motif component, keyed by word.
fn component_q(
    model: &MarkovModel,
    pswm: &Pswm,
    threshold: f64,
    theta: f64,
) -> Result<std::collections::HashMap<Word, f64>> {
    let matcher = Matcher::new(
        model.alphabet(),
        PatternFamily::PswmMotif {
            pswm: pswm.clone(),
            threshold,
        },
    )?;
    let members = matcher.enumerate_members()?;
    let weights = tilted_weights(model, pswm, theta, &members)?;
    let total: f64 = weights.iter().sum();
    Ok(members
        .into_iter()
        .zip(weights)
        .map(|(w, u)| (w, u / total))
        .collect())
}
