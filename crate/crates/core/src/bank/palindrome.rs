//! Backward weight tables and forward sampling for palindrome halves.
//!
//! A palindrome `u · u~` is determined by its half `u`. The tables assign
//! each half the weight `pi(u_1) * prod_i sigma(u_i, u_{i+1}) *
//! sigma(u_{i+1}~, u_i~) * tail(u_m)`, where the tail factor is
//! `sigma(u_m, u_m~)` for the joined variant and 1 for the separate one.
//! Backward sums `eta` normalize this into a samplable forward chain.

use rand::Rng;

use crate::alphabet::Word;
use crate::error::{Error, Result};
use crate::markov::MarkovModel;

/// Whether the junction transition from the last half symbol into its
/// complement belongs to the half-word weight. `Joined` fits palindromes
/// (the two halves are adjacent, so the weight is the full stationary chain
/// probability of the word); `Separate` fits inverted repeats, where gap
/// symbols sit between the halves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PalindromeVariant {
    Joined,
    Separate,
}

#[derive(Debug, Clone)]
pub(crate) struct PalindromeTables {
    pub(crate) half_len: usize,
    pub(crate) variant: PalindromeVariant,
    comp: Vec<u8>,
    /// `ln` of the total half weight `sum_x pi(x) eta[0][x]`.
    pub(crate) log_norm: f64,
    init_cdf: Vec<f64>,
    /// Row CDFs for choosing the symbol at position `level + 2` given the
    /// symbol at `level + 1`; flattened `[level][x][y]`.
    trans_cdf: Vec<f64>,
}

impl PalindromeTables {
    pub(crate) fn build(
        model: &MarkovModel,
        half_len: usize,
        variant: PalindromeVariant,
    ) -> Result<Self> {
        if half_len == 0 {
            return Err(Error::Input(
                "palindrome half length must be positive".into(),
            ));
        }
        let k = model.size();
        let comp: Vec<u8> = (0..k as u8)
            .map(|c| model.alphabet().complement(c))
            .collect::<Result<_>>()?;

        // eta[i][x]: weight of all completions of a half whose (i+1)-th
        // symbol is x.
        let mut eta = vec![vec![0.0f64; k]; half_len];
        for x in 0..k {
            eta[half_len - 1][x] = match variant {
                PalindromeVariant::Joined => model.sigma(x as u8, comp[x]),
                PalindromeVariant::Separate => 1.0,
            };
        }
        for i in (0..half_len.saturating_sub(1)).rev() {
            for x in 0..k {
                eta[i][x] = (0..k)
                    .map(|y| {
                        model.sigma(x as u8, y as u8)
                            * model.sigma(comp[y], comp[x])
                            * eta[i + 1][y]
                    })
                    .sum();
            }
        }
        let norm: f64 = (0..k).map(|x| model.pi(x as u8) * eta[0][x]).sum();
        if norm <= 0.0 {
            return Err(Error::Model(
                "the chain assigns zero probability to every palindrome of this length".into(),
            ));
        }

        let init_cdf = cdf_from_weights((0..k).map(|x| model.pi(x as u8) * eta[0][x]));
        let mut trans_cdf = Vec::with_capacity(half_len.saturating_sub(1) * k * k);
        for i in 0..half_len.saturating_sub(1) {
            for x in 0..k {
                trans_cdf.extend(cdf_from_weights((0..k).map(|y| {
                    model.sigma(x as u8, y as u8) * model.sigma(comp[y], comp[x]) * eta[i + 1][y]
                })));
            }
        }

        Ok(PalindromeTables {
            half_len,
            variant,
            comp,
            log_norm: norm.ln(),
            init_cdf,
            trans_cdf,
        })
    }

    pub(crate) fn comp(&self) -> &[u8] {
        &self.comp
    }

    /// Draws one half word of length `half_len`.
    pub(crate) fn draw_half<R: Rng + ?Sized>(&self, rng: &mut R) -> Word {
        let k = self.init_cdf.len();
        let mut half = Vec::with_capacity(self.half_len);
        let mut x = sample_cdf(&self.init_cdf, rng);
        half.push(x);
        for level in 0..self.half_len - 1 {
            let row = &self.trans_cdf[(level * k + x as usize) * k..][..k];
            x = sample_cdf(row, rng);
            half.push(x);
        }
        half
    }

    /// Completes a half into the full palindrome `u · u~`.
    pub(crate) fn full_word(&self, half: &[u8]) -> Word {
        let mut w = half.to_vec();
        w.extend(half.iter().rev().map(|&c| self.comp[c as usize]));
        w
    }
}

/// Normalized cumulative distribution from non-negative weights. Rows that
/// sum to zero describe unreachable states; they get a uniform CDF so the
/// table stays well-formed.
fn cdf_from_weights(weights: impl Iterator<Item = f64>) -> Vec<f64> {
    let w: Vec<f64> = weights.collect();
    let total: f64 = w.iter().sum();
    let mut acc = 0.0;
    let mut out = Vec::with_capacity(w.len());
    if total <= 0.0 {
        for i in 0..w.len() {
            out.push((i + 1) as f64 / w.len() as f64);
        }
        return out;
    }
    for v in &w {
        acc += v / total;
        out.push(acc);
    }
    *out.last_mut().expect("nonempty") = 1.0;
    out
}

#[inline]
fn sample_cdf<R: Rng + ?Sized>(cdf: &[f64], rng: &mut R) -> u8 {
    let u: f64 = rng.random();
    for (i, &c) in cdf.iter().enumerate() {
        if u <= c {
            return i as u8;
        }
    }
    (cdf.len() - 1) as u8
}
