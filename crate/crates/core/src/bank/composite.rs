//! Samplers for the two composite families: co-occurring motif pairs and
//! structured motifs. Both draw a gap length uniformly on `d1..=d2`, fill
//! the gap with chain symbols continued from the last core symbol before it,
//! and have densities that factor over their components, so `q` is evaluable
//! pointwise.

use rand::Rng;

use crate::alphabet::Word;
use crate::error::{Error, Result};
use crate::markov::MarkovModel;

use super::tilted::TiltedSampler;

/// Gap-path log probability `sum_j ln sigma(w_j, w_{j+1})` over the `gap`
/// transitions leading out of position `from - 1` (0-indexed), i.e. the
/// probability of generating the gap symbols by continuing the chain.
#[inline]
fn log_gap_path(model: &MarkovModel, w: &[u8], from: usize, gap: usize) -> f64 {
    (0..gap)
        .map(|j| model.log_sigma(w[from - 1 + j], w[from + j]))
        .sum()
}

#[derive(Debug, Clone)]
pub(crate) struct CoOccurrenceSampler {
    pub(crate) first: TiltedSampler,
    pub(crate) second: TiltedSampler,
    pub(crate) d1: usize,
    pub(crate) d2: usize,
}

impl CoOccurrenceSampler {
    pub(crate) fn new(
        first: TiltedSampler,
        second: TiltedSampler,
        d1: usize,
        d2: usize,
    ) -> Result<Self> {
        if d1 > d2 {
            return Err(Error::Input(format!("gap range {d1}..{d2} is empty")));
        }
        Ok(CoOccurrenceSampler {
            first,
            second,
            d1,
            d2,
        })
    }

    pub(crate) fn draw<R: Rng + ?Sized>(&self, model: &MarkovModel, rng: &mut R) -> (Word, u64) {
        let (mut w, a1) = self.first.draw(rng);
        let d = rng.random_range(self.d1..=self.d2);
        let last = *w.last().expect("motif words are nonempty");
        w.extend(model.generate_from(last, d, rng));
        let (tail, a2) = self.second.draw(rng);
        w.extend(tail);
        (w, a1 + a2)
    }

    pub(crate) fn log_q(&self, model: &MarkovModel, w: &[u8]) -> f64 {
        let (m1, m2) = (self.first.len(), self.second.len());
        let core = m1 + m2;
        if w.len() < core + self.d1 || w.len() > core + self.d2 {
            return f64::NEG_INFINITY;
        }
        let d = w.len() - core;
        let head = self.first.log_q(model, &w[..m1]);
        let tail = self.second.log_q(model, &w[w.len() - m2..]);
        if !head.is_finite() || !tail.is_finite() {
            return f64::NEG_INFINITY;
        }
        head + tail + log_gap_path(model, w, m1, d) - ((self.d2 - self.d1 + 1) as f64).ln()
    }
}

#[derive(Debug, Clone)]
pub(crate) struct StructuredSampler {
    pub(crate) word1: Word,
    pub(crate) word2: Word,
    pub(crate) d1: usize,
    pub(crate) d2: usize,
    /// Number of alternative symbols a substitution can pick: `|alphabet| - 1`.
    n_alt: u8,
}

impl StructuredSampler {
    pub(crate) fn new(
        model: &MarkovModel,
        word1: Word,
        word2: Word,
        d1: usize,
        d2: usize,
    ) -> Result<Self> {
        if word1.is_empty() || word2.is_empty() {
            return Err(Error::Input(
                "structured-motif words must be nonempty".into(),
            ));
        }
        model.alphabet().validate_codes(&word1)?;
        model.alphabet().validate_codes(&word2)?;
        if d1 > d2 {
            return Err(Error::Input(format!("gap range {d1}..{d2} is empty")));
        }
        if model.size() < 2 {
            return Err(Error::Config(
                "structured motifs need at least two symbols to substitute".into(),
            ));
        }
        Ok(StructuredSampler {
            word1,
            word2,
            d1,
            d2,
            n_alt: (model.size() - 1) as u8,
        })
    }

    /// Draws the substitution slot (0 = exact copy, else position in the
    /// concatenated core), the substituted symbol, the gap length, and the
    /// gap symbols.
    pub(crate) fn draw<R: Rng + ?Sized>(&self, model: &MarkovModel, rng: &mut R) -> Word {
        let (m, r) = (self.word1.len(), self.word2.len());
        let mut head = self.word1.clone();
        let mut tail = self.word2.clone();
        let slot = rng.random_range(0..=m + r);
        if slot > 0 {
            let pos = slot - 1;
            let target = if pos < m {
                &mut head[pos]
            } else {
                &mut tail[pos - m]
            };
            let alt = rng.random_range(0..self.n_alt);
            *target = if alt >= *target { alt + 1 } else { alt };
        }
        let d = rng.random_range(self.d1..=self.d2);
        let mut w = head;
        let last = *w.last().expect("nonempty");
        w.extend(model.generate_from(last, d, rng));
        w.extend(tail);
        w
    }

    pub(crate) fn log_q(&self, model: &MarkovModel, w: &[u8]) -> f64 {
        let (m, r) = (self.word1.len(), self.word2.len());
        let core = m + r;
        if w.len() < core + self.d1 || w.len() > core + self.d2 {
            return f64::NEG_INFINITY;
        }
        let d = w.len() - core;
        let mismatches = self
            .word1
            .iter()
            .zip(&w[..m])
            .filter(|(a, b)| a != b)
            .count()
            + self
                .word2
                .iter()
                .zip(&w[w.len() - r..])
                .filter(|(a, b)| a != b)
                .count();
        if mismatches > 1 {
            return f64::NEG_INFINITY;
        }
        // Slot choice, substituted symbol (if any), gap length, gap symbols.
        let mut log_q = -((core + 1) as f64).ln() - ((self.d2 - self.d1 + 1) as f64).ln()
            + log_gap_path(model, w, m, d);
        if mismatches == 1 {
            log_q -= (self.n_alt as f64).ln();
        }
        log_q
    }
}
