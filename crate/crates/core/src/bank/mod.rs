//! Word banks: distributions `q` over a pattern family that support random
//! draws, pointwise density evaluation, and the length law `gamma`.
//!
//! The insertion estimators need exactly three capabilities from a bank:
//! draw a member `v ~ q`, evaluate `q(w)` on arbitrary windows (to form the
//! weight `beta(w) = q(w) / sigma(w)`, with `sigma(w)` the conditional chain
//! path probability of `w`), and the CDF `gamma_j = P{len(v) <= j}` that
//! prices the "drawn word fits in the remaining sequence" event. Every
//! sampler here evaluates `q` in log space so that strongly tilted motif
//! banks stay finite.

mod composite;
mod palindrome;
mod tilted;

use std::collections::HashMap;

use rand::Rng;

use crate::alphabet::Word;
use crate::error::{Error, Result};
use crate::markov::MarkovModel;
use crate::pattern::{Matcher, PatternFamily};
use crate::pswm::Pswm;

use composite::{CoOccurrenceSampler, StructuredSampler};
use palindrome::PalindromeTables;
pub use palindrome::PalindromeVariant;
use tilted::TiltedSampler;
pub use tilted::{log_tilt_normalizer, solve_theta, tilted_mean_score};

/// A word sampler bound to a chain and a pattern family.
#[derive(Debug, Clone)]
pub struct WordSampler {
    model: MarkovModel,
    matcher: Matcher,
    kind: Kind,
}

#[derive(Debug, Clone)]
enum Kind {
    Explicit {
        words: Vec<Word>,
        log_q: Vec<f64>,
        cdf: Vec<f64>,
        index: HashMap<Word, usize>,
        /// Cumulative length law: `(length, P{len <= length})`, sorted.
        len_cdf: Vec<(usize, f64)>,
    },
    Palindrome {
        tables: PalindromeTables,
    },
    InvertedRepeat {
        tables: PalindromeTables,
        d1: usize,
        d2: usize,
    },
    Tilted(TiltedSampler),
    CoOccurrence(CoOccurrenceSampler),
    Structured(StructuredSampler),
}

/// Parameters a sampler exposes for diagnostics and for independent
/// re-derivation of its density.
#[derive(Debug, Clone)]
pub enum SamplerInfo {
    Explicit {
        words: usize,
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
    TiltedPswm {
        threshold: f64,
        delta: f64,
        theta: f64,
        log_xi: f64,
        xi_rel_se: Option<f64>,
    },
    CoOccurrence {
        first: Box<SamplerInfo>,
        second: Box<SamplerInfo>,
        d1: usize,
        d2: usize,
    },
    StructuredMotif {
        core_len: usize,
        d1: usize,
        d2: usize,
    },
}

impl SamplerInfo {
    /// One-line rendering for reports.
    pub fn summary(&self) -> String {
        match self {
            SamplerInfo::Explicit { words } => format!("explicit bank over {words} words"),
            SamplerInfo::Palindrome { half_len, variant } => {
                format!("palindrome bank m={half_len} ({variant:?})")
            }
            SamplerInfo::InvertedRepeat { half_len, d1, d2 } => {
                format!("inverted-repeat bank m={half_len} gap {d1}..{d2}")
            }
            SamplerInfo::TiltedPswm {
                threshold,
                theta,
                log_xi,
                xi_rel_se,
                ..
            } => {
                let xi = log_xi.exp();
                match xi_rel_se {
                    Some(se) => format!(
                        "tilted bank t={threshold} theta={theta:.6} xi~{xi:.4e} (rel se {se:.2e})"
                    ),
                    None => format!("tilted bank t={threshold} theta={theta:.6} xi={xi:.4e}"),
                }
            }
            SamplerInfo::CoOccurrence {
                first,
                second,
                d1,
                d2,
            } => format!(
                "co-occurrence bank gap {d1}..{d2}; first: {}; second: {}",
                first.summary(),
                second.summary()
            ),
            SamplerInfo::StructuredMotif { core_len, d1, d2 } => {
                format!("structured bank core {core_len} gap {d1}..{d2}")
            }
        }
    }
}

impl WordSampler {
    /// Uniform distribution over a set of distinct words (duplicates in the
    /// input are merged).
    pub fn explicit(model: &MarkovModel, words: Vec<Word>) -> Result<Self> {
        let mut distinct = words;
        distinct.sort();
        distinct.dedup();
        let n = distinct.len();
        Self::explicit_weighted(model, distinct, vec![1.0; n])
    }

    /// Explicit distribution with one positive weight per distinct word;
    /// weights are normalized to sum to one.
    pub fn explicit_weighted(
        model: &MarkovModel,
        words: Vec<Word>,
        weights: Vec<f64>,
    ) -> Result<Self> {
        if words.len() != weights.len() {
            return Err(Error::Input(format!(
                "{} words but {} weights",
                words.len(),
                weights.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w <= 0.0) {
            return Err(Error::Input(format!(
                "bank weights must be positive and finite, got {w}"
            )));
        }
        let matcher = Matcher::new(
            model.alphabet(),
            PatternFamily::ExplicitSet {
                words: words.clone(),
            },
        )?;
        let mut index = HashMap::with_capacity(words.len());
        for (i, w) in words.iter().enumerate() {
            if index.insert(w.clone(), i).is_some() {
                return Err(Error::Input(format!(
                    "duplicate word '{}' in weighted bank",
                    model.alphabet().decode(w)
                )));
            }
        }
        let total: f64 = weights.iter().sum();
        let log_q: Vec<f64> = weights.iter().map(|w| (w / total).ln()).collect();
        let mut cdf = Vec::with_capacity(weights.len());
        let mut acc = 0.0;
        for w in &weights {
            acc += w / total;
            cdf.push(acc);
        }
        *cdf.last_mut().expect("nonempty") = 1.0;

        let mut by_len: Vec<(usize, f64)> = Vec::new();
        let mut order: Vec<usize> = (0..words.len()).collect();
        order.sort_by_key(|&i| words[i].len());
        let mut cum = 0.0;
        for i in order {
            cum += weights[i] / total;
            match by_len.last_mut() {
                Some((l, c)) if *l == words[i].len() => *c = cum,
                _ => by_len.push((words[i].len(), cum)),
            }
        }
        if let Some((_, c)) = by_len.last_mut() {
            *c = 1.0;
        }

        Ok(WordSampler {
            model: model.clone(),
            matcher,
            kind: Kind::Explicit {
                words,
                log_q,
                cdf,
                index,
                len_cdf: by_len,
            },
        })
    }

    /// Palindromes `u · u~` of half length `half_len`, weighted by their
    /// stationary chain probability (`Joined`) or by the junction-free half
    /// weight (`Separate`).
    pub fn palindrome(
        model: &MarkovModel,
        half_len: usize,
        variant: PalindromeVariant,
    ) -> Result<Self> {
        let matcher = Matcher::new(model.alphabet(), PatternFamily::Palindrome { half_len })?;
        let tables = PalindromeTables::build(model, half_len, variant)?;
        Ok(WordSampler {
            model: model.clone(),
            matcher,
            kind: Kind::Palindrome { tables },
        })
    }

    /// Inverted repeats `u · z · u~`: a separate-variant half, a uniform gap
    /// length on `d1..=d2`, and chain-generated gap symbols.
    pub fn inverted_repeat(
        model: &MarkovModel,
        half_len: usize,
        d1: usize,
        d2: usize,
    ) -> Result<Self> {
        let matcher = Matcher::new(
            model.alphabet(),
            PatternFamily::InvertedRepeat { half_len, d1, d2 },
        )?;
        let tables = PalindromeTables::build(model, half_len, PalindromeVariant::Separate)?;
        Ok(WordSampler {
            model: model.clone(),
            matcher,
            kind: Kind::InvertedRepeat { tables, d1, d2 },
        })
    }

    /// Words of the matrix length scoring at least `threshold`, drawn by
    /// exponential tilting with the tilted mean score at `threshold + delta`.
    pub fn tilted_pswm(
        model: &MarkovModel,
        pswm: Pswm,
        threshold: f64,
        delta: f64,
        prepass_seed: u64,
    ) -> Result<Self> {
        let matcher = Matcher::new(
            model.alphabet(),
            PatternFamily::PswmMotif {
                pswm: pswm.clone(),
                threshold,
            },
        )?;
        let inner = TiltedSampler::new(model, pswm, threshold, delta, prepass_seed)?;
        Ok(WordSampler {
            model: model.clone(),
            matcher,
            kind: Kind::Tilted(inner),
        })
    }

    /// Two tilted motifs in fixed order with a uniform gap length on
    /// `d1..=d2` and chain-generated gap symbols.
    #[allow(clippy::too_many_arguments)]
    pub fn co_occurrence(
        model: &MarkovModel,
        pswm1: Pswm,
        threshold1: f64,
        pswm2: Pswm,
        threshold2: f64,
        d1: usize,
        d2: usize,
        delta: f64,
        prepass_seed: u64,
    ) -> Result<Self> {
        let matcher = Matcher::new(
            model.alphabet(),
            PatternFamily::CoOccurrence {
                pswm1: pswm1.clone(),
                threshold1,
                pswm2: pswm2.clone(),
                threshold2,
                d1,
                d2,
            },
        )?;
        let first = TiltedSampler::new(model, pswm1, threshold1, delta, prepass_seed)?;
        let second = TiltedSampler::new(
            model,
            pswm2,
            threshold2,
            delta,
            prepass_seed.wrapping_add(1),
        )?;
        let inner = CoOccurrenceSampler::new(first, second, d1, d2)?;
        Ok(WordSampler {
            model: model.clone(),
            matcher,
            kind: Kind::CoOccurrence(inner),
        })
    }

    /// Structured motifs: the two fixed words with at most one substitution
    /// at a uniform slot, a uniform gap length, and chain-generated gap
    /// symbols.
    pub fn structured_motif(
        model: &MarkovModel,
        word1: Word,
        word2: Word,
        d1: usize,
        d2: usize,
    ) -> Result<Self> {
        let matcher = Matcher::new(
            model.alphabet(),
            PatternFamily::StructuredMotif {
                word1: word1.clone(),
                word2: word2.clone(),
                d1,
                d2,
            },
        )?;
        let inner = StructuredSampler::new(model, word1, word2, d1, d2)?;
        Ok(WordSampler {
            model: model.clone(),
            matcher,
            kind: Kind::Structured(inner),
        })
    }

    /// Builds the default bank for a family: uniform weights for explicit
    /// sets, joined palindrome tables, and tilt offset `delta` for motif
    /// families. `prepass_seed` feeds the acceptance pre-pass of non-integer
    /// matrices (ignored otherwise).
    pub fn for_family(
        model: &MarkovModel,
        family: &PatternFamily,
        delta: f64,
        prepass_seed: u64,
    ) -> Result<Self> {
        match family {
            PatternFamily::ExplicitSet { words } => Self::explicit(model, words.clone()),
            PatternFamily::Palindrome { half_len } => {
                Self::palindrome(model, *half_len, PalindromeVariant::Joined)
            }
            PatternFamily::InvertedRepeat { half_len, d1, d2 } => {
                Self::inverted_repeat(model, *half_len, *d1, *d2)
            }
            PatternFamily::PswmMotif { pswm, threshold } => {
                Self::tilted_pswm(model, pswm.clone(), *threshold, delta, prepass_seed)
            }
            PatternFamily::CoOccurrence {
                pswm1,
                threshold1,
                pswm2,
                threshold2,
                d1,
                d2,
            } => Self::co_occurrence(
                model,
                pswm1.clone(),
                *threshold1,
                pswm2.clone(),
                *threshold2,
                *d1,
                *d2,
                delta,
                prepass_seed,
            ),
            PatternFamily::StructuredMotif {
                word1,
                word2,
                d1,
                d2,
            } => Self::structured_motif(model, word1.clone(), word2.clone(), *d1, *d2),
        }
    }

    pub fn model(&self) -> &MarkovModel {
        &self.model
    }

    pub fn matcher(&self) -> &Matcher {
        &self.matcher
    }

    pub fn min_len(&self) -> usize {
        self.matcher.min_len()
    }

    pub fn max_len(&self) -> usize {
        self.matcher.max_len()
    }

    pub fn info(&self) -> SamplerInfo {
        match &self.kind {
            Kind::Explicit { words, .. } => SamplerInfo::Explicit { words: words.len() },
            Kind::Palindrome { tables } => SamplerInfo::Palindrome {
                half_len: tables.half_len,
                variant: tables.variant,
            },
            Kind::InvertedRepeat { tables, d1, d2 } => SamplerInfo::InvertedRepeat {
                half_len: tables.half_len,
                d1: *d1,
                d2: *d2,
            },
            Kind::Tilted(t) => SamplerInfo::TiltedPswm {
                threshold: t.threshold,
                delta: t.delta,
                theta: t.theta,
                log_xi: t.log_xi,
                xi_rel_se: t.xi_rel_se,
            },
            Kind::CoOccurrence(c) => SamplerInfo::CoOccurrence {
                first: Box::new(SamplerInfo::TiltedPswm {
                    threshold: c.first.threshold,
                    delta: c.first.delta,
                    theta: c.first.theta,
                    log_xi: c.first.log_xi,
                    xi_rel_se: c.first.xi_rel_se,
                }),
                second: Box::new(SamplerInfo::TiltedPswm {
                    threshold: c.second.threshold,
                    delta: c.second.delta,
                    theta: c.second.theta,
                    log_xi: c.second.log_xi,
                    xi_rel_se: c.second.xi_rel_se,
                }),
                d1: c.d1,
                d2: c.d2,
            },
            Kind::Structured(s) => SamplerInfo::StructuredMotif {
                core_len: s.word1.len() + s.word2.len(),
                d1: s.d1,
                d2: s.d2,
            },
        }
    }

    /// Draws one word `v ~ q`.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> Word {
        self.draw_counted(rng).0
    }

    /// Draws one word and reports how many rejection attempts it took
    /// (always 1 for banks without a rejection loop).
    pub fn draw_counted<R: Rng + ?Sized>(&self, rng: &mut R) -> (Word, u64) {
        match &self.kind {
            Kind::Explicit { words, cdf, .. } => {
                let u: f64 = rng.random();
                let idx = cdf.iter().position(|&c| u <= c).unwrap_or(words.len() - 1);
                (words[idx].clone(), 1)
            }
            Kind::Palindrome { tables } => {
                let half = tables.draw_half(rng);
                (tables.full_word(&half), 1)
            }
            Kind::InvertedRepeat { tables, d1, d2 } => {
                let half = tables.draw_half(rng);
                let d = rng.random_range(*d1..=*d2);
                let mut w = half.clone();
                let last = *w.last().expect("nonempty half");
                w.extend(self.model.generate_from(last, d, rng));
                w.extend(half.iter().rev().map(|&c| tables.comp()[c as usize]));
                (w, 1)
            }
            Kind::Tilted(t) => t.draw(rng),
            Kind::CoOccurrence(c) => c.draw(&self.model, rng),
            Kind::Structured(s) => (s.draw(&self.model, rng), 1),
        }
    }

    /// `ln q(w)`; `-inf` when `w` is not in the family.
    pub fn log_q(&self, w: &[u8]) -> f64 {
        match &self.kind {
            Kind::Explicit { log_q, index, .. } => match index.get(w) {
                Some(&i) => log_q[i],
                None => f64::NEG_INFINITY,
            },
            Kind::Palindrome { tables } => {
                if !self.matcher.is_member(w) {
                    return f64::NEG_INFINITY;
                }
                match tables.variant {
                    PalindromeVariant::Joined => {
                        self.model.log_pi(w[0]) + self.model.log_word_prob(w) - tables.log_norm
                    }
                    PalindromeVariant::Separate => {
                        // All transitions except the junction in the middle.
                        let m = tables.half_len;
                        self.model.log_pi(w[0]) + self.model.log_word_prob(w)
                            - self.model.log_sigma(w[m - 1], w[m])
                            - tables.log_norm
                    }
                }
            }
            Kind::InvertedRepeat { tables, d1, d2 } => {
                if !self.matcher.is_member(w) {
                    return f64::NEG_INFINITY;
                }
                let m = tables.half_len;
                let d = w.len() - 2 * m;
                // Everything except the transition from the last gap symbol
                // (or of the first half, when the gap is empty) into the
                // second half.
                self.model.log_pi(w[0]) + self.model.log_word_prob(w)
                    - self.model.log_sigma(w[m + d - 1], w[m + d])
                    - tables.log_norm
                    - ((d2 - d1 + 1) as f64).ln()
            }
            Kind::Tilted(t) => t.log_q(&self.model, w),
            Kind::CoOccurrence(c) => c.log_q(&self.model, w),
            Kind::Structured(s) => s.log_q(&self.model, w),
        }
    }

    /// `q(w)`; zero off the family.
    pub fn q_eval(&self, w: &[u8]) -> f64 {
        self.log_q(w).exp()
    }

    /// `ln beta(w) = ln q(w) - ln sigma(w)`, with `sigma(w)` the conditional
    /// path probability of `w` under the chain.
    pub fn log_beta(&self, w: &[u8]) -> f64 {
        let lq = self.log_q(w);
        if lq == f64::NEG_INFINITY {
            return f64::NEG_INFINITY;
        }
        lq - self.model.log_word_prob(w)
    }

    /// `beta(w)`; zero off the family.
    pub fn beta(&self, w: &[u8]) -> f64 {
        self.log_beta(w).exp()
    }

    /// `gamma_j = P{len(v) <= j}` in total word length units.
    pub fn gamma_cdf(&self, j: usize) -> f64 {
        match &self.kind {
            Kind::Explicit { len_cdf, .. } => {
                let mut out = 0.0;
                for &(l, c) in len_cdf {
                    if l <= j {
                        out = c;
                    } else {
                        break;
                    }
                }
                out
            }
            Kind::Palindrome { tables } => {
                if j >= 2 * tables.half_len {
                    1.0
                } else {
                    0.0
                }
            }
            Kind::InvertedRepeat { tables, d1, d2 } => range_cdf(j, 2 * tables.half_len, *d1, *d2),
            Kind::Tilted(t) => {
                if j >= t.len() {
                    1.0
                } else {
                    0.0
                }
            }
            Kind::CoOccurrence(c) => range_cdf(j, c.first.len() + c.second.len(), c.d1, c.d2),
            Kind::Structured(s) => range_cdf(j, s.word1.len() + s.word2.len(), s.d1, s.d2),
        }
    }
}

/// CDF of `core + U{d1..d2}` evaluated at `j`.
fn range_cdf(j: usize, core: usize, d1: usize, d2: usize) -> f64 {
    if j < core + d1 {
        0.0
    } else if j >= core + d2 {
        1.0
    } else {
        (j - core - d1 + 1) as f64 / (d2 - d1 + 1) as f64
    }
}
