//! Position-specific weight matrices.
//!
//! A matrix assigns a score to each symbol at each of its `m` columns; the
//! score of a length-`m` word is the sum of its column scores. Besides
//! scoring, this module computes the exact distribution of the score of a
//! stationary chain window via a dynamic program over (column, symbol,
//! score) states, which powers both the analytic tail approximation and the
//! exact acceptance normalizer of the tilted word sampler.

use std::path::Path;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::markov::MarkovModel;

/// Largest number of lattice points a score distribution may span.
const MAX_LATTICE_WIDTH: usize = 1 << 22;
/// Lattice resolution used for matrices with non-integer entries: scores are
/// multiplied by this factor and rounded to the nearest integer.
pub const DEFAULT_SCORE_SCALE: f64 = 1000.0;

#[derive(Debug, Clone)]
pub struct Pswm {
    alphabet: Alphabet,
    /// `cols[i][x]` is the score of symbol code `x` at column `i`.
    cols: Vec<Vec<f64>>,
}

impl Pswm {
    /// Builds a matrix from per-symbol rows: `rows[x][i]` is the score of
    /// symbol `x` at column `i`. All rows must have equal, nonzero length.
    pub fn new(alphabet: Alphabet, rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.len() != alphabet.size() {
            return Err(Error::Input(format!(
                "weight matrix has {} rows but the alphabet has {} symbols",
                rows.len(),
                alphabet.size()
            )));
        }
        let m = rows[0].len();
        if m == 0 {
            return Err(Error::Input(
                "weight matrix must have at least one column".into(),
            ));
        }
        for (x, row) in rows.iter().enumerate() {
            if row.len() != m {
                return Err(Error::Input(format!(
                    "weight matrix row '{}' has {} columns, expected {}",
                    alphabet.symbols()[x],
                    row.len(),
                    m
                )));
            }
            if let Some(bad) = row.iter().find(|v| !v.is_finite()) {
                return Err(Error::Input(format!("non-finite weight {bad} in matrix")));
            }
        }
        let cols = (0..m)
            .map(|i| rows.iter().map(|r| r[i]).collect())
            .collect();
        Ok(Pswm { alphabet, cols })
    }

    /// Parses the plain-text matrix format: the first content line lists the
    /// alphabet symbols (contiguous, like `acgt`, or whitespace-separated);
    /// each following line gives one symbol's scores across all columns, in
    /// the order of the first line. Blank lines and `#` comments are ignored.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::parse("empty weight matrix file"))?;
        let tokens: Vec<&str> = header.split_whitespace().collect();
        let symbols: Vec<char> = if tokens.len() == 1 {
            tokens[0].chars().collect()
        } else {
            tokens
                .iter()
                .map(|t| {
                    let mut ch = t.chars();
                    match (ch.next(), ch.next()) {
                        (Some(c), None) => Ok(c),
                        _ => Err(Error::parse(format!(
                            "alphabet token '{t}' is not a single symbol"
                        ))),
                    }
                })
                .collect::<Result<_>>()?
        };
        let alphabet = Alphabet::new(symbols)?;
        let mut rows = Vec::with_capacity(alphabet.size());
        for line in lines {
            let row: Vec<f64> = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<f64>()
                        .map_err(|_| Error::parse(format!("invalid weight '{t}'")))
                })
                .collect::<Result<_>>()?;
            rows.push(row);
        }
        if rows.len() != alphabet.size() {
            return Err(Error::parse(format!(
                "expected {} weight rows, found {}",
                alphabet.size(),
                rows.len()
            )));
        }
        Pswm::new(alphabet, rows)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
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

    /// Number of columns, i.e. the length of scored words.
    pub fn len(&self) -> usize {
        self.cols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cols.is_empty()
    }

    /// Score of symbol code `x` at column `i`.
    #[inline]
    pub fn weight(&self, i: usize, x: u8) -> f64 {
        self.cols[i][x as usize]
    }

    /// Score of a word; the word length must equal the number of columns.
    pub fn score(&self, w: &[u8]) -> Result<f64> {
        if w.len() != self.len() {
            return Err(Error::Input(format!(
                "word length {} does not match matrix with {} columns",
                w.len(),
                self.len()
            )));
        }
        self.alphabet.validate_codes(w)?;
        Ok(self.score_unchecked(w))
    }

    /// Score without shape/code validation, for hot paths that guarantee both.
    #[inline]
    pub fn score_unchecked(&self, w: &[u8]) -> f64 {
        w.iter()
            .zip(&self.cols)
            .map(|(&x, col)| col[x as usize])
            .sum()
    }

    /// Largest achievable word score (column-wise maxima).
    pub fn max_score(&self) -> f64 {
        self.cols
            .iter()
            .map(|c| c.iter().cloned().fold(f64::NEG_INFINITY, f64::max))
            .sum()
    }

    /// Smallest achievable word score (column-wise minima).
    pub fn min_score(&self) -> f64 {
        self.cols
            .iter()
            .map(|c| c.iter().cloned().fold(f64::INFINITY, f64::min))
            .sum()
    }

    /// True when every entry is an integer, so word scores live exactly on
    /// the integer lattice.
    pub fn is_integral(&self) -> bool {
        self.cols
            .iter()
            .flatten()
            .all(|v| v.fract() == 0.0 && v.abs() < 1e12)
    }

    /// Exact distribution of the score of a stationary window `v_1..v_m`
    /// (first symbol from the stationary law, the rest from the chain).
    ///
    /// For integer matrices the lattice is exact. Otherwise entries are
    /// rounded onto a lattice of resolution 1/[`DEFAULT_SCORE_SCALE`]; every
    /// reported probability then refers to the rounded score.
    pub fn score_dist(&self, model: &MarkovModel) -> Result<ScoreDist> {
        let scale = if self.is_integral() {
            1.0
        } else {
            DEFAULT_SCORE_SCALE
        };
        self.score_dist_scaled(model, scale)
    }

    /// As [`Pswm::score_dist`], with an explicit lattice scale.
    pub fn score_dist_scaled(&self, model: &MarkovModel, scale: f64) -> Result<ScoreDist> {
        let valid = scale.is_finite() && scale > 0.0;
        if !valid {
            return Err(Error::Config(format!(
                "score lattice scale must be positive, got {scale}"
            )));
        }
        if model.alphabet().symbols() != self.alphabet.symbols() {
            return Err(Error::Config(
                "weight matrix and chain are defined over different alphabets".into(),
            ));
        }
        let k = self.alphabet.size();
        let m = self.len();
        // Integer column scores on the lattice.
        let icols: Vec<Vec<i64>> = self
            .cols
            .iter()
            .map(|col| col.iter().map(|&w| (w * scale).round() as i64).collect())
            .collect();
        // Range of achievable partial sums after each column.
        let mut lo = 0i64;
        let mut hi = 0i64;
        let mut ranges = Vec::with_capacity(m);
        for col in &icols {
            lo += *col.iter().min().expect("nonempty column");
            hi += *col.iter().max().expect("nonempty column");
            ranges.push((lo, hi));
        }
        let width = (hi - lo + 1) as usize;
        if width > MAX_LATTICE_WIDTH {
            return Err(Error::TooLarge(format!(
                "score lattice spans {width} points (limit {MAX_LATTICE_WIDTH}); \
                 reduce the lattice scale"
            )));
        }
        // cur[x * w + (s - lo_i)] = P{window prefix scores s, last symbol x}.
        let (lo0, hi0) = ranges[0];
        let w0 = (hi0 - lo0 + 1) as usize;
        let mut cur = vec![0.0f64; k * w0];
        for x in 0..k {
            cur[x * w0 + (icols[0][x] - lo0) as usize] += model.pi(x as u8);
        }
        let mut prev_lo = lo0;
        let mut prev_w = w0;
        for i in 1..m {
            let (lo_i, hi_i) = ranges[i];
            let w_i = (hi_i - lo_i + 1) as usize;
            let mut next = vec![0.0f64; k * w_i];
            for x in 0..k {
                for idx in 0..prev_w {
                    let p = cur[x * prev_w + idx];
                    if p == 0.0 {
                        continue;
                    }
                    let s = prev_lo + idx as i64;
                    for y in 0..k {
                        let s2 = s + icols[i][y];
                        next[y * w_i + (s2 - lo_i) as usize] += p * model.sigma(x as u8, y as u8);
                    }
                }
            }
            cur = next;
            prev_lo = lo_i;
            prev_w = w_i;
        }
        let mut mass = vec![0.0f64; prev_w];
        for x in 0..k {
            for idx in 0..prev_w {
                mass[idx] += cur[x * prev_w + idx];
            }
        }
        Ok(ScoreDist {
            scale,
            offset: prev_lo,
            mass,
        })
    }
}

/// Distribution of a window score on an integer lattice: lattice point `i`
/// carries probability `mass[i]` for the score `(offset + i) / scale`.
#[derive(Debug, Clone)]
pub struct ScoreDist {
    scale: f64,
    offset: i64,
    mass: Vec<f64>,
}

impl ScoreDist {
    /// `P{S >= t}`. The threshold is mapped onto the lattice by
    /// `ceil(t * scale)` with a small tolerance so that integer thresholds on
    /// integer lattices are matched exactly.
    pub fn tail(&self, t: f64) -> f64 {
        let thr = self.lattice_threshold(t);
        let start = (thr - self.offset).max(0) as usize;
        if start >= self.mass.len() {
            return 0.0;
        }
        // Summing from the high end adds the smallest terms first.
        self.mass[start..].iter().rev().sum()
    }

    /// `ln E[e^{theta S}]`, evaluated stably in log space.
    pub fn log_mgf(&self, theta: f64) -> f64 {
        log_sum_exp(self.terms(theta))
    }

    /// `ln( E[e^{theta S} 1{S >= t}] / E[e^{theta S}] )`: the log acceptance
    /// probability of threshold `t` under the `theta`-tilted law.
    pub fn tilted_log_tail(&self, theta: f64, t: f64) -> f64 {
        let thr = self.lattice_threshold(t);
        let start = (thr - self.offset).max(0) as usize;
        if start >= self.mass.len() {
            return f64::NEG_INFINITY;
        }
        let top = log_sum_exp(self.terms(theta).skip(start));
        top - self.log_mgf(theta)
    }

    /// Mean of the `theta`-tilted law, `E[S e^{theta S}] / E[e^{theta S}]`.
    pub fn tilted_mean(&self, theta: f64) -> f64 {
        let log_norm = self.log_mgf(theta);
        self.terms(theta)
            .enumerate()
            .filter(|(_, l)| l.is_finite())
            .map(|(i, l)| self.score_at(i) * (l - log_norm).exp())
            .sum()
    }

    /// Number of lattice points spanned.
    pub fn support_width(&self) -> usize {
        self.mass.len()
    }

    pub fn min_lattice_score(&self) -> f64 {
        self.offset as f64 / self.scale
    }

    pub fn max_lattice_score(&self) -> f64 {
        (self.offset + self.mass.len() as i64 - 1) as f64 / self.scale
    }

    #[inline]
    fn score_at(&self, idx: usize) -> f64 {
        (self.offset + idx as i64) as f64 / self.scale
    }

    fn lattice_threshold(&self, t: f64) -> i64 {
        (t * self.scale - 1e-9).ceil() as i64
    }

    fn terms(&self, theta: f64) -> impl Iterator<Item = f64> + '_ {
        self.mass.iter().enumerate().map(move |(i, &p)| {
            if p > 0.0 {
                theta * self.score_at(i) + p.ln()
            } else {
                f64::NEG_INFINITY
            }
        })
    }
}

/// Stable `ln(sum(exp(x_i)))`; empty or all `-inf` input gives `-inf`.
pub(crate) fn log_sum_exp(values: impl Iterator<Item = f64>) -> f64 {
    let vals: Vec<f64> = values.filter(|v| *v > f64::NEG_INFINITY).collect();
    let max = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return f64::NEG_INFINITY;
    }
    max + vals.iter().map(|v| (v - max).exp()).sum::<f64>().ln()
}
