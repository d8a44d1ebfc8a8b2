//! Pattern families and non-overlapping occurrence counting.
//!
//! A family is a finite set of words over the model alphabet. Counting uses
//! the suffix recursion: with `N_0 = 0`, the count after `i` symbols is
//! `N_i = N_{i-j} + 1` when some member ends at position `i` (taking the
//! shortest such member, of length `j`), and `N_i = N_{i-1}` otherwise. The
//! test suite checks this against an independent interval-packing oracle.

use std::collections::HashSet;

use crate::alphabet::{Alphabet, Word};
use crate::error::{Error, Result};
use crate::pswm::Pswm;

/// Cap on `sum over candidate lengths of |alphabet|^length` when listing all
/// members of a family explicitly.
const MAX_ENUMERATION_WORK: u128 = 1 << 20;

/// The six supported word-pattern families. Words are symbol-code vectors
/// over the alphabet the family is used with.
#[derive(Debug, Clone)]
pub enum PatternFamily {
    /// A finite, explicitly listed set of words.
    ExplicitSet { words: Vec<Word> },
    /// Words `u · u~` of length `2 * half_len` whose second half is the
    /// reverse complement of the first.
    Palindrome { half_len: usize },
    /// Words `u · z · u~`: palindrome halves separated by an arbitrary gap
    /// `z` whose length lies in `d1..=d2`.
    InvertedRepeat {
        half_len: usize,
        d1: usize,
        d2: usize,
    },
    /// Fixed-length words scoring at least `threshold` under the matrix.
    PswmMotif { pswm: Pswm, threshold: f64 },
    /// Two motif windows in this fixed order, separated by an arbitrary gap
    /// of length in `d1..=d2`.
    CoOccurrence {
        pswm1: Pswm,
        threshold1: f64,
        pswm2: Pswm,
        threshold2: f64,
        d1: usize,
        d2: usize,
    },
    /// `x · z · y` for fixed words `x`, `y` and a gap of length in `d1..=d2`,
    /// allowing at most one substitution across the two fixed words.
    StructuredMotif {
        word1: Word,
        word2: Word,
        d1: usize,
        d2: usize,
    },
}

impl PatternFamily {
    /// Convenience constructor encoding explicit words from strings.
    pub fn explicit_from_strs(alphabet: &Alphabet, words: &[&str]) -> Result<Self> {
        let words = words
            .iter()
            .map(|w| alphabet.encode(w))
            .collect::<Result<Vec<_>>>()?;
        Ok(PatternFamily::ExplicitSet { words })
    }

    /// Convenience constructor encoding the two fixed words from strings.
    pub fn structured_from_strs(
        alphabet: &Alphabet,
        word1: &str,
        word2: &str,
        d1: usize,
        d2: usize,
    ) -> Result<Self> {
        Ok(PatternFamily::StructuredMotif {
            word1: alphabet.encode(word1)?,
            word2: alphabet.encode(word2)?,
            d1,
            d2,
        })
    }

    /// One-line human-readable description.
    pub fn describe(&self, alphabet: &Alphabet) -> String {
        match self {
            PatternFamily::ExplicitSet { words } => {
                let mut names: Vec<String> = words.iter().map(|w| alphabet.decode(w)).collect();
                names.sort();
                format!("explicit{{{}}}", names.join(","))
            }
            PatternFamily::Palindrome { half_len } => format!("palindrome{{m={half_len}}}"),
            PatternFamily::InvertedRepeat { half_len, d1, d2 } => {
                format!("inverted-repeat{{m={half_len},d={d1}..{d2}}}")
            }
            PatternFamily::PswmMotif { pswm, threshold } => {
                format!("pswm{{m={},t={threshold}}}", pswm.len())
            }
            PatternFamily::CoOccurrence {
                pswm1,
                threshold1,
                pswm2,
                threshold2,
                d1,
                d2,
            } => {
                format!(
                    "co-occurrence{{m1={},t1={threshold1},m2={},t2={threshold2},d={d1}..{d2}}}",
                    pswm1.len(),
                    pswm2.len()
                )
            }
            PatternFamily::StructuredMotif {
                word1,
                word2,
                d1,
                d2,
            } => format!(
                "structured{{x={},y={},d={d1}..{d2}}}",
                alphabet.decode(word1),
                alphabet.decode(word2)
            ),
        }
    }
}

/// A validated family bound to an alphabet, with membership tests, suffix
/// matching, and non-overlapping counting.
#[derive(Debug, Clone)]
pub struct Matcher {
    alphabet: Alphabet,
    family: PatternFamily,
    /// Sorted distinct lengths a member may have.
    lengths: Vec<usize>,
    /// Complement table when the family needs one.
    comp: Option<Vec<u8>>,
    /// Hash index for explicit sets.
    explicit: Option<HashSet<Word>>,
}

impl Matcher {
    pub fn new(alphabet: &Alphabet, family: PatternFamily) -> Result<Self> {
        let mut comp = None;
        let mut explicit = None;
        let lengths: Vec<usize> = match &family {
            PatternFamily::ExplicitSet { words } => {
                if words.is_empty() {
                    return Err(Error::Input("explicit word set is empty".into()));
                }
                for w in words {
                    if w.is_empty() {
                        return Err(Error::Input(
                            "explicit word set contains an empty word".into(),
                        ));
                    }
                    alphabet.validate_codes(w)?;
                }
                let set: HashSet<Word> = words.iter().cloned().collect();
                let mut ls: Vec<usize> = set.iter().map(Vec::len).collect();
                ls.sort_unstable();
                ls.dedup();
                explicit = Some(set);
                ls
            }
            PatternFamily::Palindrome { half_len } => {
                comp = Some(complement_table(alphabet)?);
                if *half_len == 0 {
                    return Err(Error::Input(
                        "palindrome half length must be positive".into(),
                    ));
                }
                vec![2 * half_len]
            }
            PatternFamily::InvertedRepeat { half_len, d1, d2 } => {
                comp = Some(complement_table(alphabet)?);
                if *half_len == 0 {
                    return Err(Error::Input(
                        "inverted-repeat half length must be positive".into(),
                    ));
                }
                check_gap(*d1, *d2)?;
                (2 * half_len + d1..=2 * half_len + d2).collect()
            }
            PatternFamily::PswmMotif { pswm, threshold } => {
                check_pswm(alphabet, pswm)?;
                check_threshold(*threshold)?;
                vec![pswm.len()]
            }
            PatternFamily::CoOccurrence {
                pswm1,
                threshold1,
                pswm2,
                threshold2,
                d1,
                d2,
            } => {
                check_pswm(alphabet, pswm1)?;
                check_pswm(alphabet, pswm2)?;
                check_threshold(*threshold1)?;
                check_threshold(*threshold2)?;
                check_gap(*d1, *d2)?;
                let core = pswm1.len() + pswm2.len();
                (core + d1..=core + d2).collect()
            }
            PatternFamily::StructuredMotif {
                word1,
                word2,
                d1,
                d2,
            } => {
                if word1.is_empty() || word2.is_empty() {
                    return Err(Error::Input(
                        "structured-motif words must be nonempty".into(),
                    ));
                }
                alphabet.validate_codes(word1)?;
                alphabet.validate_codes(word2)?;
                check_gap(*d1, *d2)?;
                let core = word1.len() + word2.len();
                (core + d1..=core + d2).collect()
            }
        };
        Ok(Matcher {
            alphabet: alphabet.clone(),
            family,
            lengths,
            comp,
            explicit,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn family(&self) -> &PatternFamily {
        &self.family
    }

    pub fn describe(&self) -> String {
        self.family.describe(&self.alphabet)
    }

    /// Sorted distinct lengths a member may have.
    pub fn candidate_lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn min_len(&self) -> usize {
        self.lengths[0]
    }

    pub fn max_len(&self) -> usize {
        *self.lengths.last().expect("nonempty lengths")
    }

    /// True when `w` belongs to the family. Symbol codes must be in range
    /// for the alphabet.
    pub fn is_member(&self, w: &[u8]) -> bool {
        match &self.family {
            PatternFamily::ExplicitSet { .. } => {
                self.explicit.as_ref().expect("index built").contains(w)
            }
            PatternFamily::Palindrome { half_len } => {
                w.len() == 2 * half_len && self.halves_complement(w, *half_len)
            }
            PatternFamily::InvertedRepeat { half_len, d1, d2 } => {
                let (lo, hi) = (2 * half_len + d1, 2 * half_len + d2);
                (lo..=hi).contains(&w.len()) && self.halves_complement(w, *half_len)
            }
            PatternFamily::PswmMotif { pswm, threshold } => {
                w.len() == pswm.len() && pswm.score_unchecked(w) >= *threshold
            }
            PatternFamily::CoOccurrence {
                pswm1,
                threshold1,
                pswm2,
                threshold2,
                d1,
                d2,
            } => {
                let core = pswm1.len() + pswm2.len();
                let (lo, hi) = (core + d1, core + d2);
                (lo..=hi).contains(&w.len())
                    && pswm1.score_unchecked(&w[..pswm1.len()]) >= *threshold1
                    && pswm2.score_unchecked(&w[w.len() - pswm2.len()..]) >= *threshold2
            }
            PatternFamily::StructuredMotif {
                word1,
                word2,
                d1,
                d2,
            } => {
                let core = word1.len() + word2.len();
                let (lo, hi) = (core + d1, core + d2);
                if !(lo..=hi).contains(&w.len()) {
                    return false;
                }
                let head = mismatches(&w[..word1.len()], word1);
                if head > 1 {
                    return false;
                }
                head + mismatches(&w[w.len() - word2.len()..], word2) <= 1
            }
        }
    }

    /// Whether the last `half_len` symbols are the reverse complement of the
    /// first `half_len` (gap symbols in between are unconstrained).
    #[inline]
    fn halves_complement(&self, w: &[u8], half_len: usize) -> bool {
        let comp = self.comp.as_ref().expect("complement table built");
        let n = w.len();
        (0..half_len).all(|i| w[n - 1 - i] == comp[w[i] as usize])
    }

    /// Length of the shortest member that is a suffix of `seq`, if any.
    pub fn shortest_suffix_match(&self, seq: &[u8]) -> Option<usize> {
        self.lengths
            .iter()
            .take_while(|&&l| l <= seq.len())
            .find(|&&l| self.is_member(&seq[seq.len() - l..]))
            .copied()
    }

    /// Maximal number of non-overlapping member occurrences, via the suffix
    /// recursion.
    pub fn count_nonoverlapping(&self, seq: &[u8]) -> usize {
        let mut state = CountState::new(self);
        for &s in seq {
            state.push(s);
        }
        state.count()
    }

    /// Lists every member word, in lexicographic order (explicit sets:
    /// sorted, duplicates removed). Guarded by a work bound; families whose
    /// candidate lengths span too many words are rejected.
    pub fn enumerate_members(&self) -> Result<Vec<Word>> {
        if let Some(set) = &self.explicit {
            let mut words: Vec<Word> = set.iter().cloned().collect();
            words.sort();
            return Ok(words);
        }
        let k = self.alphabet.size() as u128;
        let mut work: u128 = 0;
        for &l in &self.lengths {
            work = work.saturating_add(k.saturating_pow(l as u32));
        }
        if work > MAX_ENUMERATION_WORK {
            return Err(Error::TooLarge(format!(
                "family spans ~{work} candidate words (limit {MAX_ENUMERATION_WORK})"
            )));
        }
        let mut out = Vec::new();
        for &l in &self.lengths {
            let mut w = vec![0u8; l];
            loop {
                if self.is_member(&w) {
                    out.push(w.clone());
                }
                if !next_word(&mut w, self.alphabet.size() as u8) {
                    break;
                }
            }
        }
        Ok(out)
    }
}

/// Incremental count state over a growing/shrinking sequence, exposing the
/// per-prefix counts `N_i` that the insertion estimators and the exhaustive
/// oracle need. `push` appends one symbol and updates the count in
/// `O(candidate lengths)` membership checks; `pop` undoes the last push.
#[derive(Debug)]
pub struct CountState<'a> {
    matcher: &'a Matcher,
    seq: Word,
    /// `n_hist[i]` is the count after the first `i` symbols; `n_hist[0] = 0`.
    n_hist: Vec<usize>,
}

impl<'a> CountState<'a> {
    pub fn new(matcher: &'a Matcher) -> Self {
        CountState {
            matcher,
            seq: Vec::new(),
            n_hist: vec![0],
        }
    }

    /// Appends one symbol and returns the updated count. When a member ends
    /// here, the count becomes `N_{i-j} + 1` for the shortest such member
    /// length `j`, clamped from below by `N_{i-1}` so the count never
    /// decreases; shorter suffixes dominate longer ones under that clamp,
    /// which makes this equal to the maximal non-overlapping packing.
    pub fn push(&mut self, symbol: u8) -> usize {
        self.seq.push(symbol);
        let i = self.seq.len();
        let n = match self.matcher.shortest_suffix_match(&self.seq) {
            Some(j) => (self.n_hist[i - j] + 1).max(self.n_hist[i - 1]),
            None => self.n_hist[i - 1],
        };
        self.n_hist.push(n);
        n
    }

    /// Removes the last symbol.
    pub fn pop(&mut self) {
        if self.seq.pop().is_some() {
            self.n_hist.pop();
        }
    }

    /// Count over the full current sequence.
    pub fn count(&self) -> usize {
        *self.n_hist.last().expect("history nonempty")
    }

    /// Count over the first `i` symbols.
    pub fn count_at(&self, i: usize) -> usize {
        self.n_hist[i]
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn seq(&self) -> &[u8] {
        &self.seq
    }

    pub fn clear(&mut self) {
        self.seq.clear();
        self.n_hist.truncate(1);
    }
}

fn complement_table(alphabet: &Alphabet) -> Result<Vec<u8>> {
    if !alphabet.has_complement() {
        return Err(Error::Config(
            "palindromic families need an alphabet with a complement map".into(),
        ));
    }
    (0..alphabet.size() as u8)
        .map(|c| alphabet.complement(c))
        .collect()
}

fn check_gap(d1: usize, d2: usize) -> Result<()> {
    if d1 > d2 {
        return Err(Error::Input(format!("gap range {d1}..{d2} is empty")));
    }
    Ok(())
}

fn check_pswm(alphabet: &Alphabet, pswm: &Pswm) -> Result<()> {
    if pswm.alphabet().symbols() != alphabet.symbols() {
        return Err(Error::Config(
            "weight matrix is defined over a different alphabet than the family".into(),
        ));
    }
    Ok(())
}

fn check_threshold(t: f64) -> Result<()> {
    if !t.is_finite() {
        return Err(Error::Input(format!(
            "score threshold must be finite, got {t}"
        )));
    }
    Ok(())
}

#[inline]
fn mismatches(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Advances `w` to the lexicographically next word over codes `0..k`;
/// returns false after the last word.
pub(crate) fn next_word(w: &mut [u8], k: u8) -> bool {
    for c in w.iter_mut().rev() {
        if *c + 1 < k {
            *c += 1;
            return true;
        }
        *c = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn dna() -> Alphabet {
        Alphabet::dna()
    }

    fn explicit(words: &[&str]) -> Matcher {
        let a = dna();
        Matcher::new(&a, PatternFamily::explicit_from_strs(&a, words).unwrap()).unwrap()
    }

    /// Independent oracle: maximum non-overlapping interval packing over all
    /// member occurrences, greedy by earliest end.
    fn packing_count(m: &Matcher, seq: &[u8]) -> usize {
        let mut intervals = Vec::new();
        for end in 1..=seq.len() {
            for &l in m.candidate_lengths() {
                if l <= end && m.is_member(&seq[end - l..end]) {
                    intervals.push((end, end - l));
                }
            }
        }
        intervals.sort_unstable();
        let mut taken = 0usize;
        let mut last_end = 0usize;
        for (end, start) in intervals {
            if start >= last_end {
                taken += 1;
                last_end = end;
            }
        }
        taken
    }

    #[test]
    fn counts_match_worked_examples() {
        let a = dna();
        assert_eq!(
            explicit(&["at"]).count_nonoverlapping(&a.encode("atat").unwrap()),
            2
        );
        assert_eq!(
            explicit(&["atat"]).count_nonoverlapping(&a.encode("atatat").unwrap()),
            1
        );
        assert_eq!(
            explicit(&["at"]).count_nonoverlapping(&a.encode("a").unwrap()),
            0
        );
        assert_eq!(explicit(&["at"]).count_nonoverlapping(&[]), 0);
    }

    #[test]
    fn shortest_suffix_match_prefers_short_members() {
        let a = dna();
        assert_eq!(
            explicit(&["at"]).shortest_suffix_match(&a.encode("ccat").unwrap()),
            Some(2)
        );
        assert_eq!(
            explicit(&["at", "gcat"]).shortest_suffix_match(&a.encode("ggcat").unwrap()),
            Some(2)
        );
        assert_eq!(
            explicit(&["at"]).shortest_suffix_match(&a.encode("cc").unwrap()),
            None
        );

        let motif = Matcher::new(
            &a,
            PatternFamily::PswmMotif {
                pswm: presets::w_rep(),
                threshold: 12.0,
            },
        )
        .unwrap();
        let twenty_a = vec![0u8; 20];
        assert_eq!(motif.shortest_suffix_match(&twenty_a), Some(12));
    }

    #[test]
    fn palindrome_membership() {
        let a = dna();
        let m = Matcher::new(&a, PatternFamily::Palindrome { half_len: 3 }).unwrap();
        assert!(m.is_member(&a.encode("acgcgt").unwrap()));
        assert!(!m.is_member(&a.encode("acgcga").unwrap()));
        assert!(!m.is_member(&a.encode("acgt").unwrap()), "wrong length");
    }

    #[test]
    fn inverted_repeat_with_zero_gap_equals_palindrome() {
        let a = dna();
        let pal = Matcher::new(&a, PatternFamily::Palindrome { half_len: 2 }).unwrap();
        let inv = Matcher::new(
            &a,
            PatternFamily::InvertedRepeat {
                half_len: 2,
                d1: 0,
                d2: 0,
            },
        )
        .unwrap();
        assert_eq!(
            pal.enumerate_members().unwrap(),
            inv.enumerate_members().unwrap()
        );

        let gapped = Matcher::new(
            &a,
            PatternFamily::InvertedRepeat {
                half_len: 2,
                d1: 1,
                d2: 3,
            },
        )
        .unwrap();
        assert!(gapped.is_member(&a.encode("acggt").unwrap()), "ac|g|gt");
        assert!(gapped.is_member(&a.encode("accctgt").unwrap()), "ac|cct|gt");
        assert!(!gapped.is_member(&a.encode("acgt").unwrap()), "no gap");
        assert!(!gapped.is_member(&a.encode("acggg").unwrap()));
    }

    #[test]
    fn pswm_membership_is_exactly_score_threshold() {
        let a = dna();
        let toy = Pswm::new(
            a.clone(),
            vec![
                vec![2.0, 0.0, 1.0],
                vec![0.0, 1.0, 0.0],
                vec![1.0, 3.0, 0.0],
                vec![0.0, 0.0, 2.0],
            ],
        )
        .unwrap();
        for t in [1.0, 3.0, 4.0] {
            let m = Matcher::new(
                &a,
                PatternFamily::PswmMotif {
                    pswm: toy.clone(),
                    threshold: t,
                },
            )
            .unwrap();
            let mut w = vec![0u8; 3];
            loop {
                assert_eq!(m.is_member(&w), toy.score_unchecked(&w) >= t);
                if !next_word(&mut w, 4) {
                    break;
                }
            }
        }
    }

    #[test]
    fn structured_motif_allows_one_substitution_total() {
        let a = dna();
        let fam = PatternFamily::structured_from_strs(&a, "gttgaca", "atataat", 16, 18).unwrap();
        let m = Matcher::new(&a, fam).unwrap();
        let gap16 = "c".repeat(16);
        let exact = a.encode(&format!("gttgaca{gap16}atataat")).unwrap();
        let one_sub = a.encode(&format!("gttgacc{gap16}atataat")).unwrap();
        let two_subs = a.encode(&format!("gttgacc{gap16}atataag")).unwrap();
        assert!(m.is_member(&exact));
        assert!(m.is_member(&one_sub));
        assert!(!m.is_member(&two_subs));
        let gap15 = "c".repeat(15);
        assert!(!m.is_member(&a.encode(&format!("gttgaca{gap15}atataat")).unwrap()));
    }

    #[test]
    fn co_occurrence_checks_both_windows_and_gap() {
        let a = dna();
        let fam = PatternFamily::CoOccurrence {
            pswm1: presets::w_rep(),
            threshold1: 12.0,
            pswm2: presets::w_norep(),
            threshold2: 12.0,
            d1: 0,
            d2: 1,
        };
        let m = Matcher::new(&a, fam).unwrap();
        let hit = a.encode("aaaaaaaaaaaagacgttgcaacgt").unwrap();
        assert!(m.is_member(&hit), "12 a's, gap g, then the unique top word");
        let miss = a.encode("aaaaaaaaaaatgacgttgcaacgt").unwrap();
        assert!(!m.is_member(&miss), "first window scores 11 < 12");
    }

    #[test]
    fn incremental_counts_track_prefixes_and_pop_restores() {
        let a = dna();
        let m = explicit(&["at"]);
        let mut st = CountState::new(&m);
        assert_eq!(st.count(), 0);
        let seq = a.encode("atat").unwrap();
        let mut seen = Vec::new();
        for &s in &seq {
            seen.push(st.push(s));
        }
        assert_eq!(seen, vec![0, 1, 1, 2]);
        assert_eq!(st.count_at(2), 1);
        st.pop();
        assert_eq!(st.count(), 1);
        st.push(3);
        assert_eq!(st.count(), 2);
        st.clear();
        assert_eq!((st.len(), st.count()), (0, 0));
    }

    #[test]
    fn recursion_agrees_with_packing_oracle_on_random_instances() {
        let a2 = Alphabet::new("ab".chars())
            .unwrap()
            .with_complement(&[('a', 'b')])
            .unwrap();
        let dna = dna();
        let mut rng = ChaCha8Rng::seed_from_u64(11);

        // Random explicit families over two symbols.
        for _ in 0..400 {
            let n_words = rng.random_range(1..=4);
            let words: Vec<Word> = (0..n_words)
                .map(|_| {
                    let l = rng.random_range(1..=4);
                    (0..l).map(|_| rng.random_range(0..2u8)).collect()
                })
                .collect();
            let m = Matcher::new(&a2, PatternFamily::ExplicitSet { words }).unwrap();
            for _ in 0..25 {
                let len = rng.random_range(0..=12);
                let seq: Word = (0..len).map(|_| rng.random_range(0..2u8)).collect();
                assert_eq!(
                    m.count_nonoverlapping(&seq),
                    packing_count(&m, &seq),
                    "family {:?} seq {:?}",
                    m.describe(),
                    seq
                );
            }
        }

        // Structural families over DNA.
        let toy_pswm = Pswm::new(
            dna.clone(),
            vec![
                vec![1.0, 0.0],
                vec![0.0, 1.0],
                vec![0.0, 1.0],
                vec![1.0, 0.0],
            ],
        )
        .unwrap();
        let families = vec![
            PatternFamily::Palindrome { half_len: 1 },
            PatternFamily::Palindrome { half_len: 2 },
            PatternFamily::InvertedRepeat {
                half_len: 1,
                d1: 0,
                d2: 2,
            },
            PatternFamily::PswmMotif {
                pswm: toy_pswm.clone(),
                threshold: 2.0,
            },
            PatternFamily::structured_from_strs(&dna, "at", "g", 0, 2).unwrap(),
            PatternFamily::CoOccurrence {
                pswm1: toy_pswm.clone(),
                threshold1: 1.0,
                pswm2: toy_pswm,
                threshold2: 2.0,
                d1: 0,
                d2: 1,
            },
        ];
        for fam in families {
            let m = Matcher::new(&dna, fam).unwrap();
            for _ in 0..1500 {
                let len = rng.random_range(0..=14);
                let seq: Word = (0..len).map(|_| rng.random_range(0..4u8)).collect();
                assert_eq!(
                    m.count_nonoverlapping(&seq),
                    packing_count(&m, &seq),
                    "family {} seq {:?}",
                    m.describe(),
                    seq
                );
            }
        }
    }

    #[test]
    fn batch_count_equals_incremental_count_on_random_sequences() {
        let m = explicit(&["at", "gcat", "t"]);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10_000 {
            let len = rng.random_range(0..=30);
            let seq: Word = (0..len).map(|_| rng.random_range(0..4u8)).collect();
            let mut st = CountState::new(&m);
            let mut last = 0;
            for &s in &seq {
                last = st.push(s);
            }
            assert_eq!(last, m.count_nonoverlapping(&seq));
        }
    }

    #[test]
    fn suffix_match_returns_minimal_member_length() {
        let m = explicit(&["t", "at", "gcat"]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..2000 {
            let len = rng.random_range(0..=10);
            let seq: Word = (0..len).map(|_| rng.random_range(0..4u8)).collect();
            match m.shortest_suffix_match(&seq) {
                Some(l) => {
                    assert!(m.is_member(&seq[seq.len() - l..]));
                    for &shorter in m.candidate_lengths().iter().filter(|&&x| x < l) {
                        assert!(
                            shorter > seq.len() || !m.is_member(&seq[seq.len() - shorter..]),
                            "a shorter member also matches"
                        );
                    }
                }
                None => {
                    for &l in m.candidate_lengths().iter().filter(|&&x| x <= seq.len()) {
                        assert!(!m.is_member(&seq[seq.len() - l..]));
                    }
                }
            }
        }
    }

    #[test]
    fn counts_monotone_in_score_threshold() {
        let a = dna();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let pswm = presets::w_rep();
        let thresholds = [6.0, 8.0, 10.0, 12.0];
        let matchers: Vec<Matcher> = thresholds
            .iter()
            .map(|&t| {
                Matcher::new(
                    &a,
                    PatternFamily::PswmMotif {
                        pswm: pswm.clone(),
                        threshold: t,
                    },
                )
                .unwrap()
            })
            .collect();
        for _ in 0..300 {
            let len = rng.random_range(0..=60);
            let seq: Word = (0..len).map(|_| rng.random_range(0..4u8)).collect();
            let counts: Vec<usize> = matchers
                .iter()
                .map(|m| m.count_nonoverlapping(&seq))
                .collect();
            for pair in counts.windows(2) {
                assert!(pair[1] <= pair[0], "raising t must not raise the count");
            }
        }
    }

    #[test]
    fn enumeration_lists_members_and_guards_blowups() {
        let a = dna();
        let pal = Matcher::new(&a, PatternFamily::Palindrome { half_len: 1 }).unwrap();
        let members: Vec<String> = pal
            .enumerate_members()
            .unwrap()
            .iter()
            .map(|w| a.decode(w))
            .collect();
        assert_eq!(members, vec!["at", "cg", "gc", "ta"]);

        let fam = PatternFamily::structured_from_strs(&a, "gttgaca", "atataat", 16, 18).unwrap();
        let big = Matcher::new(&a, fam).unwrap();
        assert!(matches!(big.enumerate_members(), Err(Error::TooLarge(_))));

        let dup = explicit(&["at", "at", "gc"]);
        assert_eq!(dup.enumerate_members().unwrap().len(), 2);
    }

    #[test]
    fn construction_rejects_invalid_families() {
        let a = dna();
        let plain = Alphabet::new("acgt".chars()).unwrap();
        assert!(Matcher::new(&a, PatternFamily::ExplicitSet { words: vec![] }).is_err());
        assert!(Matcher::new(
            &a,
            PatternFamily::ExplicitSet {
                words: vec![vec![]]
            }
        )
        .is_err());
        assert!(Matcher::new(&plain, PatternFamily::Palindrome { half_len: 1 }).is_err());
        assert!(Matcher::new(&a, PatternFamily::Palindrome { half_len: 0 }).is_err());
        assert!(Matcher::new(
            &a,
            PatternFamily::InvertedRepeat {
                half_len: 1,
                d1: 3,
                d2: 1
            }
        )
        .is_err());
        let two = Alphabet::new("ab".chars()).unwrap();
        let toy = Pswm::new(two, vec![vec![1.0], vec![0.0]]).unwrap();
        assert!(Matcher::new(
            &a,
            PatternFamily::PswmMotif {
                pswm: toy,
                threshold: 0.5
            }
        )
        .is_err());
    }
}
