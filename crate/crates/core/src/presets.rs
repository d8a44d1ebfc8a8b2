//! Bundled example models and motifs used by the benchmark commands and the
//! test suites: two published promoter-region chains (rounded to the printed
//! precision and renormalized row by row), three weight matrices, and the
//! eight promoter-like structured-motif word pairs.

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::markov::MarkovModel;
use crate::pswm::Pswm;

/// First-order chain estimated from yeast non-coding sequence, published to
/// four decimals; rows are renormalized to sum to one exactly.
pub fn yeast_chain() -> MarkovModel {
    MarkovModel::new_renormalizing(
        Alphabet::dna(),
        vec![
            vec![0.3577, 0.1752, 0.1853, 0.2818],
            vec![0.3256, 0.2056, 0.1590, 0.3096],
            vec![0.2992, 0.2180, 0.2039, 0.2789],
            vec![0.2381, 0.1943, 0.1905, 0.3771],
        ],
    )
    .expect("bundled yeast chain is valid")
}

/// First-order chain estimated from B. subtilis non-coding sequence,
/// published to two decimals; rows are renormalized to sum to one exactly.
pub fn bsubtilis_chain() -> MarkovModel {
    MarkovModel::new_renormalizing(
        Alphabet::dna(),
        vec![
            vec![0.35, 0.16, 0.18, 0.31],
            vec![0.33, 0.20, 0.15, 0.32],
            vec![0.32, 0.22, 0.19, 0.27],
            vec![0.25, 0.20, 0.19, 0.35],
        ],
    )
    .expect("bundled B. subtilis chain is valid")
}

/// The uniform i.i.d. chain over `a,c,g,t`.
pub fn uniform_dna() -> MarkovModel {
    MarkovModel::uniform(Alphabet::dna())
}

/// Look up a bundled chain by name: `yeast`, `bsubtilis`, or `uniform-dna`.
pub fn chain_by_name(name: &str) -> Result<MarkovModel> {
    match name {
        "yeast" => Ok(yeast_chain()),
        "bsubtilis" => Ok(bsubtilis_chain()),
        "uniform-dna" => Ok(uniform_dna()),
        other => Err(Error::Config(format!(
            "unknown chain preset '{other}' (expected yeast, bsubtilis, or uniform-dna)"
        ))),
    }
}

/// The 12-column SWI5 binding-site weight matrix (integer counts).
pub fn swi5() -> Pswm {
    Pswm::new(
        Alphabet::dna(),
        vec![
            vec![4.0, 0.0, 4.0, 1.0, 1.0, 4.0, 0.0, 0.0, 0.0, 0.0, 0.0, 2.0],
            vec![1.0, 2.0, 1.0, 1.0, 3.0, 2.0, 0.0, 0.0, 7.0, 0.0, 0.0, 0.0],
            vec![2.0, 2.0, 0.0, 2.0, 1.0, 0.0, 2.0, 7.0, 0.0, 0.0, 7.0, 5.0],
            vec![0.0, 3.0, 2.0, 3.0, 2.0, 1.0, 5.0, 0.0, 0.0, 7.0, 0.0, 0.0],
        ],
    )
    .expect("bundled SWI5 matrix is valid")
}

/// A 12-column matrix scoring 1 for `a` in every column: the top-scoring
/// words are runs of `a`, so high-score words self-overlap heavily.
pub fn w_rep() -> Pswm {
    let a = vec![1.0; 12];
    let z = vec![0.0; 12];
    Pswm::new(Alphabet::dna(), vec![a, z.clone(), z.clone(), z])
        .expect("bundled repetitive matrix is valid")
}

/// A 12-column permutation-style matrix whose unique top word `acgttgcaacgt`
/// does not overlap itself.
pub fn w_norep() -> Pswm {
    let rows = [
        [1, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0],
        [0, 1, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0],
        [0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 1, 0],
        [0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 1],
    ];
    Pswm::new(
        Alphabet::dna(),
        rows.iter()
            .map(|r| r.iter().map(|&v| v as f64).collect())
            .collect(),
    )
    .expect("bundled non-repetitive matrix is valid")
}

/// Look up a bundled weight matrix by name: `swi5`, `w-rep`, or `w-norep`.
pub fn pswm_by_name(name: &str) -> Result<Pswm> {
    match name {
        "swi5" => Ok(swi5()),
        "w-rep" | "w_rep" => Ok(w_rep()),
        "w-norep" | "w_norep" => Ok(w_norep()),
        other => Err(Error::Config(format!(
            "unknown matrix preset '{other}' (expected swi5, w-rep, or w-norep)"
        ))),
    }
}

/// Eight promoter-like word pairs (-35 and -10 box variants) used by the
/// structured-motif benchmark.
pub fn structured_motif_pairs() -> Vec<(&'static str, &'static str)> {
    vec![
        ("gttgaca", "atataat"),
        ("gttgaca", "tataata"),
        ("tgttgac", "tataata"),
        ("ttgaca", "ttataat"),
        ("ttgacaa", "tacaat"),
        ("ttgacaa", "tataata"),
        ("ttgacag", "tataat"),
        ("ttgacg", "tataat"),
    ]
}
