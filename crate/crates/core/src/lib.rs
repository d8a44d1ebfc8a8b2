//! Estimation of small p-values `P{N >= c}` for counts of non-overlapping
//! word-pattern occurrences in first-order Markov sequences.
//!
//! `N` is the maximal number of non-overlapping occurrences of a pattern
//! family (explicit word sets, palindromes, inverted repeats, score-threshold
//! motifs, co-occurring motif pairs, and structured motifs) in a random
//! sequence of length `n`. Direct Monte Carlo is hopeless when the target
//! probability is small, so the estimators here use importance sampling with
//! controlled word insertion: sequences are generated under a measure that
//! plants words drawn from a [`bank::WordSampler`], and each replicate is
//! weighted by the reciprocal likelihood ratio of that measure against the
//! null chain.
//!
//! Module map:
//! - [`alphabet`], [`markov`]: symbol coding and the null sequence model.
//! - [`pswm`]: position-specific weight matrices and exact score
//!   distributions.
//! - [`pattern`]: pattern families, membership, and non-overlapping counting.
//! - [`bank`]: word samplers with evaluable densities `q`, the tilted-motif
//!   machinery, and the length distribution `gamma`.
//! - [`estimate`]: direct Monte Carlo, the two insertion estimators, the
//!   multi-family combined estimator, and an analytic approximation.
//! - [`oracle`]: brute-force ground truth on tiny instances.
//! - [`presets`]: bundled chains, weight matrices, and motif pairs.

pub mod alphabet;
pub mod bank;
pub mod error;
pub mod estimate;
pub mod markov;
pub mod oracle;
pub mod pattern;
pub mod presets;
pub mod pswm;

pub use alphabet::{Alphabet, Word};
pub use bank::{PalindromeVariant, SamplerInfo, WordSampler};
pub use error::{Error, Result};
pub use estimate::{CombinedAlgorithm, Diagnostics, EstimateReport, InsertionPolicy, SimRun};
pub use markov::MarkovModel;
pub use oracle::ExactResult;
pub use pattern::{CountState, Matcher, PatternFamily};
pub use pswm::{Pswm, ScoreDist};
