//! First-order stationary Markov chains over a finite alphabet.
//!
//! The model owns its transition matrix `sigma` (row-stochastic, strictly
//! positive) and the stationary distribution `pi`, which is always computed
//! from `sigma` — never supplied by the caller — so `pi * sigma = pi` holds by
//! construction. `word_prob` is the conditional path probability
//! `sigma(v) = prod_j sigma(v_j v_{j+1})` given the first symbol; it carries
//! no `pi` factor.

use rand::Rng;

use crate::alphabet::{Alphabet, Word};
use crate::error::{Error, Result};

/// Row sums further than this from 1 are rejected instead of renormalized.
const ROW_SUM_TOLERANCE: f64 = 1e-6;
/// Residual bound for the computed stationary distribution.
const STATIONARY_RESIDUAL: f64 = 1e-12;
/// Above this word length, `word_prob` accumulates in log space.
const LINEAR_PROB_MAX_LEN: usize = 32;

#[derive(Debug, Clone)]
pub struct MarkovModel {
    alphabet: Alphabet,
    k: usize,
    sigma: Vec<f64>,     // row-major k x k
    log_sigma: Vec<f64>, // ln sigma
    row_cdf: Vec<f64>,   // row-major cumulative rows for sampling
    pi: Vec<f64>,
    log_pi: Vec<f64>,
    pi_cdf: Vec<f64>,
}

impl MarkovModel {
    /// Builds a model from transition rows. Rows whose sums deviate from 1 by
    /// at most `1e-6` are renormalized; larger deviations are an error, as is
    /// any non-positive entry.
    pub fn new(alphabet: Alphabet, rows: Vec<Vec<f64>>) -> Result<Self> {
        Self::build(alphabet, rows, ROW_SUM_TOLERANCE)
    }

    /// Like [`MarkovModel::new`] but renormalizes rows regardless of how far
    /// their sums are from 1 (entries must still be positive and finite).
    /// Intended for matrices published with few significant digits.
    pub fn new_renormalizing(alphabet: Alphabet, rows: Vec<Vec<f64>>) -> Result<Self> {
        Self::build(alphabet, rows, f64::INFINITY)
    }

    /// The iid-uniform chain: every transition probability is `1/size`.
    pub fn uniform(alphabet: Alphabet) -> Self {
        let k = alphabet.size();
        let rows = vec![vec![1.0 / k as f64; k]; k];
        Self::build(alphabet, rows, ROW_SUM_TOLERANCE).expect("uniform rows are stochastic")
    }

    fn build(alphabet: Alphabet, rows: Vec<Vec<f64>>, tolerance: f64) -> Result<Self> {
        let k = alphabet.size();
        if rows.len() != k {
            return Err(Error::Model(format!(
                "expected {k} transition rows, got {}",
                rows.len()
            )));
        }
        let mut sigma = Vec::with_capacity(k * k);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != k {
                return Err(Error::Model(format!(
                    "transition row {} has {} entries, expected {k}",
                    i,
                    row.len()
                )));
            }
            for &p in row {
                if !(p.is_finite() && p > 0.0) {
                    return Err(Error::Model(format!(
                        "transition probability {p} in row {i} is not strictly positive"
                    )));
                }
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > tolerance {
                return Err(Error::Model(format!(
                    "transition row {i} sums to {sum}, more than {tolerance} from 1"
                )));
            }
            sigma.extend(row.iter().map(|&p| p / sum));
        }
        let pi = stationary(&sigma, k)?;
        let log_sigma = sigma.iter().map(|&p| p.ln()).collect();
        let log_pi = pi.iter().map(|&p| p.ln()).collect();
        let row_cdf = cumsum_rows(&sigma, k);
        let pi_cdf = cumsum_rows(&pi, 1);
        Ok(MarkovModel {
            alphabet,
            k,
            sigma,
            log_sigma,
            row_cdf,
            pi,
            log_pi,
            pi_cdf,
        })
    }

    /// Parses the transition-matrix text format: first non-comment line lists
    /// the alphabet symbols, then one probability row per symbol. `#` starts
    /// a comment; blank lines are ignored.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::parse("empty transition-matrix input"))?;
        let mut symbols = Vec::new();
        for token in header.split_whitespace() {
            let mut chars = token.chars();
            let ch = chars
                .next()
                .expect("split_whitespace yields non-empty tokens");
            if chars.next().is_some() {
                return Err(Error::parse(format!(
                    "alphabet symbol '{token}' is not a single character"
                )));
            }
            symbols.push(ch);
        }
        let alphabet = Alphabet::new(symbols)?;
        let k = alphabet.size();
        let mut rows = Vec::with_capacity(k);
        for _ in 0..k {
            let line = lines
                .next()
                .ok_or_else(|| Error::parse(format!("expected {k} probability rows")))?;
            let row: Vec<f64> = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<f64>()
                        .map_err(|_| Error::parse(format!("bad probability '{t}'")))
                })
                .collect::<Result<_>>()?;
            rows.push(row);
        }
        if let Some(extra) = lines.next() {
            return Err(Error::parse(format!(
                "unexpected trailing content: '{extra}'"
            )));
        }
        Self::new(alphabet, rows)
    }

    pub fn from_file(path: impl AsRef<std::path::Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.into(),
            source,
        })?;
        Self::from_text(&text).map_err(|e| e.with_path(path))
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn size(&self) -> usize {
        self.k
    }

    /// Transition probability from code `x` to code `y`.
    #[inline]
    pub fn sigma(&self, x: u8, y: u8) -> f64 {
        self.sigma[x as usize * self.k + y as usize]
    }

    #[inline]
    pub fn log_sigma(&self, x: u8, y: u8) -> f64 {
        self.log_sigma[x as usize * self.k + y as usize]
    }

    /// Stationary probability of code `x`.
    #[inline]
    pub fn pi(&self, x: u8) -> f64 {
        self.pi[x as usize]
    }

    #[inline]
    pub fn log_pi(&self, x: u8) -> f64 {
        self.log_pi[x as usize]
    }

    pub fn stationary_distribution(&self) -> &[f64] {
        &self.pi
    }

    /// Conditional path probability of `w` given its first symbol:
    /// `prod_j sigma(w_j w_{j+1})`; 1 for single-symbol words.
    /// Words longer than 32 symbols are accumulated in log space.
    pub fn word_prob(&self, w: &[u8]) -> Result<f64> {
        if w.is_empty() {
            return Err(Error::Input("word_prob of an empty word".into()));
        }
        self.alphabet.validate_codes(w)?;
        if w.len() <= LINEAR_PROB_MAX_LEN {
            Ok(w.windows(2).map(|p| self.sigma(p[0], p[1])).product())
        } else {
            Ok(self.log_word_prob(w).exp())
        }
    }

    /// `ln` of the conditional path probability. No code validation; callers
    /// on hot paths guarantee codes are in range.
    #[inline]
    pub fn log_word_prob(&self, w: &[u8]) -> f64 {
        w.windows(2).map(|p| self.log_sigma(p[0], p[1])).sum()
    }

    /// Draws one symbol from the stationary distribution.
    #[inline]
    pub fn sample_stationary(&self, rng: &mut (impl Rng + ?Sized)) -> u8 {
        sample_cdf(&self.pi_cdf, rng)
    }

    /// Draws the successor of symbol `x` from the chain.
    #[inline]
    pub fn step(&self, x: u8, rng: &mut (impl Rng + ?Sized)) -> u8 {
        let row = &self.row_cdf[x as usize * self.k..(x as usize + 1) * self.k];
        sample_cdf(row, rng)
    }

    /// Generates `n` symbols: the first from `pi`, the rest from the chain.
    pub fn generate(&self, n: usize, rng: &mut (impl Rng + ?Sized)) -> Word {
        let mut out = Vec::with_capacity(n);
        if n == 0 {
            return out;
        }
        out.push(self.sample_stationary(rng));
        for _ in 1..n {
            let prev = *out.last().expect("non-empty");
            out.push(self.step(prev, rng));
        }
        out
    }

    /// Generates `n` symbols continuing the chain from `start` (which is not
    /// included in the output).
    pub fn generate_from(&self, start: u8, n: usize, rng: &mut (impl Rng + ?Sized)) -> Word {
        let mut out = Vec::with_capacity(n);
        let mut prev = start;
        for _ in 0..n {
            prev = self.step(prev, rng);
            out.push(prev);
        }
        out
    }
}

#[inline]
fn sample_cdf(cdf: &[f64], rng: &mut (impl Rng + ?Sized)) -> u8 {
    let u: f64 = rng.random();
    for (i, &c) in cdf.iter().enumerate() {
        if u <= c {
            return i as u8;
        }
    }
    (cdf.len() - 1) as u8
}

fn cumsum_rows(values: &[f64], rows: usize) -> Vec<f64> {
    let k = values.len() / rows;
    let mut out = Vec::with_capacity(values.len());
    for r in 0..rows {
        let mut acc = 0.0;
        for c in 0..k {
            acc += values[r * k + c];
            out.push(acc);
        }
        // Guard the scan against accumulated rounding at the row end.
        out[r * k + k - 1] = 1.0;
    }
    out
}

/// Stationary distribution of a row-stochastic positive matrix: direct linear
/// solve (replace one balance equation with the normalization constraint),
/// polished by power iteration until the residual drops below 1e-12.
fn stationary(sigma: &[f64], k: usize) -> Result<Vec<f64>> {
    // Solve A^T x = b where A has rows (sigma^T - I) except the last, which is
    // all-ones (sum pi = 1).
    let mut a = vec![0.0; k * k];
    let mut b = vec![0.0; k];
    for r in 0..k - 1 {
        for c in 0..k {
            a[r * k + c] = sigma[c * k + r] - if r == c { 1.0 } else { 0.0 };
        }
    }
    for c in 0..k {
        a[(k - 1) * k + c] = 1.0;
    }
    b[k - 1] = 1.0;
    let mut pi = solve_dense(&mut a, &mut b, k)?;

    for p in &mut pi {
        *p = p.max(0.0);
    }
    let total: f64 = pi.iter().sum();
    for p in &mut pi {
        *p /= total;
    }
    // Power-iteration polish; for a positive chain this converges geometrically.
    for _ in 0..10_000 {
        let next: Vec<f64> = (0..k)
            .map(|y| (0..k).map(|x| pi[x] * sigma[x * k + y]).sum())
            .collect();
        let residual = next
            .iter()
            .zip(&pi)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        pi = next;
        if residual < STATIONARY_RESIDUAL / 10.0 {
            break;
        }
    }
    let residual: f64 = (0..k)
        .map(|y| ((0..k).map(|x| pi[x] * sigma[x * k + y]).sum::<f64>() - pi[y]).abs())
        .fold(0.0, f64::max);
    if residual > STATIONARY_RESIDUAL {
        return Err(Error::Model(format!(
            "stationary distribution did not converge (residual {residual:e})"
        )));
    }
    Ok(pi)
}

/// Gaussian elimination with partial pivoting on a dense k x k system.
fn solve_dense(a: &mut [f64], b: &mut [f64], k: usize) -> Result<Vec<f64>> {
    for col in 0..k {
        let pivot = (col..k)
            .max_by(|&r1, &r2| a[r1 * k + col].abs().total_cmp(&a[r2 * k + col].abs()))
            .expect("non-empty pivot range");
        if a[pivot * k + col].abs() < 1e-300 {
            return Err(Error::Model(
                "singular system while solving for the stationary distribution".into(),
            ));
        }
        if pivot != col {
            for c in 0..k {
                a.swap(col * k + c, pivot * k + c);
            }
            b.swap(col, pivot);
        }
        for r in col + 1..k {
            let f = a[r * k + col] / a[col * k + col];
            if f == 0.0 {
                continue;
            }
            for c in col..k {
                a[r * k + c] -= f * a[col * k + c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = vec![0.0; k];
    for r in (0..k).rev() {
        let mut acc = b[r];
        for c in r + 1..k {
            acc -= a[r * k + c] * x[c];
        }
        x[r] = acc / a[r * k + r];
    }
    Ok(x)
}
