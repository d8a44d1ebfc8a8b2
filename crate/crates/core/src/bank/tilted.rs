//! Exponentially tilted sampling of high-scoring motif words.
//!
//! Words are drawn from the tilted law `f(v) = e^{theta S(v)} pi(v_1)
//! sigma(v) / Lambda(theta)` via backward level tables (all in log space, so
//! large tilts stay finite), then rejected until the score reaches the
//! threshold. The tilt is chosen so that the tilted mean score hits
//! `threshold + delta`, which keeps the acceptance rate of the rejection
//! loop moderate. The acceptance probability `xi` enters the density `q` of
//! the accepted draw; it is computed exactly on the integer score lattice
//! when the matrix is integral, and otherwise estimated once by a frozen
//! Monte Carlo pre-pass whose relative error is reported.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alphabet::Word;
use crate::error::{Error, Result};
use crate::markov::MarkovModel;
use crate::pswm::{log_sum_exp, Pswm};

/// Draw count of the acceptance pre-pass for non-integer matrices.
const PREPASS_REPLICATES: u64 = 100_000;
/// RNG stream reserved for the pre-pass, away from estimator replicates.
const PREPASS_STREAM: u64 = u64::MAX;
/// Residual tolerance of the tilt solver, in score units.
const MEAN_RESIDUAL_TOL: f64 = 1e-11;

/// `ln Lambda_i(x)` for every column: the log weight of all completions of a
/// word whose column-`i` symbol is `x`, scores tilted by `theta`.
fn log_level_tables(model: &MarkovModel, pswm: &Pswm, theta: f64) -> Vec<Vec<f64>> {
    let k = model.size();
    let m = pswm.len();
    let mut levels = vec![vec![0.0f64; k]; m];
    for (x, level) in levels[m - 1].iter_mut().enumerate() {
        *level = theta * pswm.weight(m - 1, x as u8);
    }
    for i in (0..m - 1).rev() {
        for x in 0..k {
            let tail =
                log_sum_exp((0..k).map(|y| model.log_sigma(x as u8, y as u8) + levels[i + 1][y]));
            levels[i][x] = theta * pswm.weight(i, x as u8) + tail;
        }
    }
    levels
}

fn check_compatible(model: &MarkovModel, pswm: &Pswm) -> Result<()> {
    if model.alphabet().symbols() != pswm.alphabet().symbols() {
        return Err(Error::Config(
            "weight matrix and chain are defined over different alphabets".into(),
        ));
    }
    Ok(())
}

/// `ln Lambda(theta) = ln E[e^{theta S}]` for a stationary window score.
pub fn log_tilt_normalizer(model: &MarkovModel, pswm: &Pswm, theta: f64) -> Result<f64> {
    check_compatible(model, pswm)?;
    let levels = log_level_tables(model, pswm, theta);
    Ok(log_sum_exp(
        (0..model.size()).map(|x| model.log_pi(x as u8) + levels[0][x]),
    ))
}

/// Mean window score under the `theta`-tilted law, computed from the level
/// tables by a backward expected-score recursion.
pub fn tilted_mean_score(model: &MarkovModel, pswm: &Pswm, theta: f64) -> Result<f64> {
    check_compatible(model, pswm)?;
    let levels = log_level_tables(model, pswm, theta);
    let k = model.size();
    let m = pswm.len();
    // expect[x] = E[score of columns i..m | column i symbol = x].
    let mut expect: Vec<f64> = (0..k).map(|x| pswm.weight(m - 1, x as u8)).collect();
    for i in (0..m - 1).rev() {
        let mut next = vec![0.0f64; k];
        for (x, slot) in next.iter_mut().enumerate() {
            let logp: Vec<f64> = (0..k)
                .map(|y| model.log_sigma(x as u8, y as u8) + levels[i + 1][y])
                .collect();
            let norm = log_sum_exp(logp.iter().copied());
            let mut acc = pswm.weight(i, x as u8);
            if norm.is_finite() {
                for y in 0..k {
                    acc += (logp[y] - norm).exp() * expect[y];
                }
            }
            *slot = acc;
        }
        expect = next;
    }
    let logp: Vec<f64> = (0..k)
        .map(|x| model.log_pi(x as u8) + levels[0][x])
        .collect();
    let norm = log_sum_exp(logp.iter().copied());
    Ok((0..k).map(|x| (logp[x] - norm).exp() * expect[x]).sum())
}

/// Solves `tilted mean score(theta) = target_mean` by bisection on an
/// expanding bracket. Targets outside the achievable score range are clamped
/// just inside it, so thresholds at the maximal score remain usable.
pub fn solve_theta(model: &MarkovModel, pswm: &Pswm, target_mean: f64) -> Result<f64> {
    check_compatible(model, pswm)?;
    let (lo_s, hi_s) = (pswm.min_score(), pswm.max_score());
    if hi_s == lo_s {
        // Every word scores the same; any tilt gives the same law.
        return Ok(0.0);
    }
    let margin = 1e-9 * (hi_s - lo_s).max(1.0);
    let target = target_mean.clamp(lo_s + margin, hi_s - margin);
    let f = |theta: f64| -> Result<f64> { Ok(tilted_mean_score(model, pswm, theta)? - target) };

    let f0 = f(0.0)?;
    if f0.abs() < MEAN_RESIDUAL_TOL {
        return Ok(0.0);
    }
    let (mut lo, mut hi) = if f0 < 0.0 { (0.0, 1.0) } else { (-1.0, 0.0) };
    loop {
        if f0 < 0.0 {
            if f(hi)? >= 0.0 {
                break;
            }
            hi *= 2.0;
            if hi > 1e5 {
                return Err(Error::Config(format!(
                    "cannot bracket a tilt reaching mean score {target}"
                )));
            }
        } else {
            if f(lo)? <= 0.0 {
                break;
            }
            lo *= 2.0;
            if lo < -1e5 {
                return Err(Error::Config(format!(
                    "cannot bracket a tilt reaching mean score {target}"
                )));
            }
        }
    }
    let mut mid = 0.5 * (lo + hi);
    for _ in 0..300 {
        mid = 0.5 * (lo + hi);
        let fm = f(mid)?;
        if fm.abs() < MEAN_RESIDUAL_TOL || (hi - lo) < 1e-15 * mid.abs().max(1.0) {
            return Ok(mid);
        }
        if fm < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if f(mid)?.abs() < 1e-9 {
        Ok(mid)
    } else {
        Err(Error::Config(
            "tilt solver did not converge to the target mean score".into(),
        ))
    }
}

#[derive(Debug, Clone)]
pub(crate) struct TiltedSampler {
    pswm: Pswm,
    pub(crate) threshold: f64,
    pub(crate) delta: f64,
    pub(crate) theta: f64,
    pub(crate) log_lambda: f64,
    pub(crate) log_xi: f64,
    /// Relative standard error of the pre-pass acceptance estimate; `None`
    /// when `xi` is exact.
    pub(crate) xi_rel_se: Option<f64>,
    init_cdf: Vec<f64>,
    /// Row CDFs for the symbol at column `level + 1` given the symbol at
    /// column `level`; flattened `[level][x][y]`.
    trans_cdf: Vec<f64>,
}

impl TiltedSampler {
    pub(crate) fn new(
        model: &MarkovModel,
        pswm: Pswm,
        threshold: f64,
        delta: f64,
        prepass_seed: u64,
    ) -> Result<Self> {
        check_compatible(model, &pswm)?;
        if !threshold.is_finite() {
            return Err(Error::Input(format!(
                "score threshold must be finite, got {threshold}"
            )));
        }
        if threshold > pswm.max_score() {
            return Err(Error::Config(format!(
                "threshold {threshold} exceeds the maximal score {}; the family is empty",
                pswm.max_score()
            )));
        }
        let theta = solve_theta(model, &pswm, threshold + delta)?;
        let levels = log_level_tables(model, &pswm, theta);
        let k = model.size();
        let m = pswm.len();
        let log_lambda = log_sum_exp((0..k).map(|x| model.log_pi(x as u8) + levels[0][x]));

        let init_cdf = cdf_from_log_weights((0..k).map(|x| model.log_pi(x as u8) + levels[0][x]));
        let mut trans_cdf = Vec::with_capacity(m.saturating_sub(1) * k * k);
        for i in 0..m - 1 {
            for x in 0..k {
                trans_cdf.extend(cdf_from_log_weights(
                    (0..k).map(|y| model.log_sigma(x as u8, y as u8) + levels[i + 1][y]),
                ));
            }
        }

        let mut sampler = TiltedSampler {
            pswm,
            threshold,
            delta,
            theta,
            log_lambda,
            log_xi: 0.0,
            xi_rel_se: None,
            init_cdf,
            trans_cdf,
        };
        if sampler.pswm.is_integral() {
            let dist = sampler.pswm.score_dist(model)?;
            sampler.log_xi = dist.tilted_log_tail(theta, threshold);
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(prepass_seed);
            rng.set_stream(PREPASS_STREAM);
            let mut accepted = 0u64;
            for _ in 0..PREPASS_REPLICATES {
                let w = sampler.draw_tilted_raw(&mut rng);
                if sampler.pswm.score_unchecked(&w) >= threshold {
                    accepted += 1;
                }
            }
            if accepted == 0 {
                return Err(Error::Config(
                    "acceptance pre-pass produced no qualifying draws; \
                     raise delta or lower the threshold"
                        .into(),
                ));
            }
            let xi = accepted as f64 / PREPASS_REPLICATES as f64;
            sampler.log_xi = xi.ln();
            sampler.xi_rel_se = Some(((1.0 - xi) / (accepted as f64)).sqrt());
        }
        if !sampler.log_xi.is_finite() {
            return Err(Error::Config(
                "no probability mass at or above the threshold under the tilted law".into(),
            ));
        }
        Ok(sampler)
    }

    pub(crate) fn len(&self) -> usize {
        self.pswm.len()
    }

    #[cfg(test)]
    pub(crate) fn pswm(&self) -> &Pswm {
        &self.pswm
    }

    /// One draw from the tilted law, before rejection.
    fn draw_tilted_raw<R: Rng + ?Sized>(&self, rng: &mut R) -> Word {
        let k = self.init_cdf.len();
        let m = self.pswm.len();
        let mut w = Vec::with_capacity(m);
        let mut x = sample_cdf(&self.init_cdf, rng);
        w.push(x);
        for level in 0..m - 1 {
            let row = &self.trans_cdf[(level * k + x as usize) * k..][..k];
            x = sample_cdf(row, rng);
            w.push(x);
        }
        w
    }

    /// Rejection-samples until the score reaches the threshold; returns the
    /// word and the number of attempts.
    pub(crate) fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> (Word, u64) {
        let mut attempts = 0u64;
        loop {
            attempts += 1;
            let w = self.draw_tilted_raw(rng);
            if self.pswm.score_unchecked(&w) >= self.threshold {
                return (w, attempts);
            }
        }
    }

    /// `ln q(w)`; `-inf` off the family.
    pub(crate) fn log_q(&self, model: &MarkovModel, w: &[u8]) -> f64 {
        if w.len() != self.pswm.len() {
            return f64::NEG_INFINITY;
        }
        let score = self.pswm.score_unchecked(w);
        if score < self.threshold {
            return f64::NEG_INFINITY;
        }
        self.theta * score + model.log_pi(w[0]) + model.log_word_prob(w)
            - self.log_lambda
            - self.log_xi
    }
}

/// Normalized CDF from log weights; all-`-inf` rows become uniform (they
/// describe unreachable states).
fn cdf_from_log_weights(log_weights: impl Iterator<Item = f64>) -> Vec<f64> {
    let lw: Vec<f64> = log_weights.collect();
    let norm = log_sum_exp(lw.iter().copied());
    let mut out = Vec::with_capacity(lw.len());
    let mut acc = 0.0;
    if !norm.is_finite() {
        for i in 0..lw.len() {
            out.push((i + 1) as f64 / lw.len() as f64);
        }
        return out;
    }
    for v in &lw {
        acc += (v - norm).exp();
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
