//! Reduced words, super-Yamanouchi words, the matching algorithm, and
//! compatible sequences.
//!
//! Words are stored in display order (leftmost letter first) but specified
//! in *positions*: position `p` of a word of length `l` is the `(l-p+1)`-th
//! displayed letter, so position 1 is the rightmost. All invariants below
//! are stated in positions; [`Word::at_position`] converts.
//!
//! A word evaluates to a permutation by processing displayed letters left to
//! right, each letter `c` exchanging the values `c`, `c+1`; see
//! [`word_to_permutation`]. A word is reduced when every step raises the
//! inversion count, which does not depend on the ambient group size.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{rothe_diagram, Permutation};

/// Default cap on the number of reduced words a single enumeration yields.
pub const DEFAULT_WORD_BUDGET: usize = 10_000_000;

/// A sequence of positive letters in display order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "WordRepr", into = "WordRepr")]
pub struct Word {
    letters: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct WordRepr {
    letters: Vec<usize>,
}

impl TryFrom<WordRepr> for Word {
    type Error = Error;

    fn try_from(repr: WordRepr) -> Result<Word> {
        Word::new(repr.letters)
    }
}

impl From<Word> for WordRepr {
    fn from(w: Word) -> WordRepr {
        WordRepr { letters: w.letters }
    }
}

impl Word {
    /// Builds a word from display-order letters; every letter must be >= 1.
    pub fn new(letters: Vec<usize>) -> Result<Word> {
        if letters.iter().any(|&l| l == 0) {
            return Err(Error::InvalidWord("letters must be positive".into()));
        }
        Ok(Word { letters })
    }

    pub fn empty() -> Word {
        Word {
            letters: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Display-order letters, leftmost first.
    pub fn display(&self) -> &[usize] {
        &self.letters
    }

    /// Letter at position `p` (1-based from the right end of the display).
    pub fn at_position(&self, p: usize) -> usize {
        self.letters[self.len() - p]
    }

    pub fn max_letter(&self) -> usize {
        self.letters.iter().copied().max().unwrap_or(0)
    }
}

/// Parses comma-separated display-order letters; an empty string is the
/// empty word.
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Word::empty());
        }
        let letters = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidWord(format!("bad letter {t:?}")))
            })
            .collect::<Result<Vec<usize>>>()?;
        Word::new(letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}

/// A reduced word together with a compatible word: position by position,
/// `alpha_p <= rho_p`, `alpha` weakly increases with position, strictly
/// wherever `rho` strictly increases.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CompatiblePair {
    rho: Word,
    alpha: Word,
}

impl CompatiblePair {
    pub fn new(rho: Word, alpha: Word) -> Result<CompatiblePair> {
        if rho.len() != alpha.len() {
            return Err(Error::IncompatiblePair(format!(
                "length mismatch: {} vs {}",
                rho.len(),
                alpha.len()
            )));
        }
        for p in 1..=rho.len() {
            if alpha.at_position(p) > rho.at_position(p) {
                return Err(Error::IncompatiblePair(format!(
                    "alpha exceeds rho at position {p}"
                )));
            }
        }
        for p in 1..rho.len() {
            let (a, a_next) = (alpha.at_position(p), alpha.at_position(p + 1));
            if a_next < a {
                return Err(Error::IncompatiblePair(format!(
                    "alpha decreases from position {p} to {}",
                    p + 1
                )));
            }
            if rho.at_position(p + 1) > rho.at_position(p) && a_next == a {
                return Err(Error::IncompatiblePair(format!(
                    "alpha must rise with rho at position {}",
                    p + 1
                )));
            }
        }
        Ok(CompatiblePair { rho, alpha })
    }

    pub fn rho(&self) -> &Word {
        &self.rho
    }

    pub fn alpha(&self) -> &Word {
        &self.alpha
    }
}

/// A bijection from positions of a super-Yamanouchi word to positions of a
/// reduced word of the same permutation: entry `i-1` is the position of the
/// letter matched to position `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pairs: Vec<usize>,
}

impl Matching {
    /// Position of the reduced-word letter matched to position `i`.
    pub fn position_of(&self, i: usize) -> usize {
        self.pairs[i - 1]
    }

    /// `pairs()[i-1]` is the match of position `i`.
    pub fn pairs(&self) -> &[usize] {
        &self.pairs
    }
}

/// Evaluates a word inside S_n: starting from the identity, each displayed
/// letter `c` (left to right) exchanges the values `c` and `c+1`.
pub fn word_to_permutation(rho: &Word, n: usize) -> Result<Permutation> {
    let mut u = Permutation::identity(n);
    for &c in rho.display() {
        if c + 1 > n {
            return Err(Error::LetterOutOfRange {
                letter: c,
                max: n.saturating_sub(1),
            });
        }
        u = u.value_swap(c)?;
    }
    Ok(u)
}

/// True iff every successive value exchange raises the inversion count by
/// one. Independent of the ambient group size.
pub fn is_reduced(rho: &Word) -> bool {
    let n = rho.max_letter() + 1;
    let mut u = Permutation::identity(n.max(1));
    for &c in rho.display() {
        if u.value_swap_decreases(c) {
            return false;
        }
        u = u.value_swap(c).expect("letter bounded by max_letter");
    }
    true
}

/// All reduced words of `w`, with the default word budget.
pub fn reduced_words(w: &Permutation) -> Result<Vec<Word>> {
    reduced_words_bounded(w, DEFAULT_WORD_BUDGET)
}

/// All reduced words of `w`, sorted by display order. A word ends (position
/// 1) with letter `c` exactly when exchanging the values `c`, `c+1` lowers
/// the length; the enumeration recurses on that descent set.
pub fn reduced_words_bounded(w: &Permutation, budget: usize) -> Result<Vec<Word>> {
    fn rec(
        u: &Permutation,
        path: &mut Vec<usize>,
        out: &mut Vec<Word>,
        budget: usize,
    ) -> Result<()> {
        if u.is_identity() {
            if out.len() >= budget {
                return Err(Error::BudgetExceeded { budget });
            }
            let mut display = path.clone();
            display.reverse();
            out.push(Word { letters: display });
            return Ok(());
        }
        for c in 1..u.n() {
            if u.value_swap_decreases(c) {
                path.push(c);
                rec(&u.value_swap(c)?, path, out, budget)?;
                path.pop();
            }
        }
        Ok(())
    }

    let mut out = Vec::new();
    rec(w, &mut Vec::with_capacity(w.length()), &mut out, budget)?;
    out.sort();
    Ok(out)
}

/// The super-Yamanouchi reduced word of `w`, read off the Rothe diagram:
/// cells in row `r` are labeled `r, r+1, ...` left to right, and labels are
/// collected row by row from the top row down.
pub fn super_yamanouchi(w: &Permutation) -> Word {
    let d = rothe_diagram(w);
    let mut letters = Vec::with_capacity(d.len());
    for r in (1..=d.max_row()).rev() {
        let cols = d.row_cols(r);
        letters.extend(r..r + cols.len());
    }
    Word { letters }
}

/// True iff the word factors into maximal increasing runs, each a set of
/// consecutive integers, with first letters strictly decreasing from run to
/// run (left to right).
pub fn is_super_yamanouchi(pi: &Word) -> bool {
    let letters = pi.display();
    let mut run_heads = Vec::new();
    let mut idx = 0;
    while idx < letters.len() {
        run_heads.push(letters[idx]);
        // an increasing interval run continues by exactly +1
        while idx + 1 < letters.len() && letters[idx + 1] == letters[idx] + 1 {
            idx += 1;
        }
        if idx + 1 < letters.len() && letters[idx + 1] > letters[idx] {
            return false; // increasing but skips a value: not an interval
        }
        idx += 1;
    }
    run_heads.windows(2).all(|w| w[0] > w[1])
}

/// Matches positions of `pi` (super-Yamanouchi) to positions of `rho`, both
/// reduced words of the same permutation.
///
/// For each position `i` of `pi` from high to low, a scan over positions of
/// `rho` from high to low looks for the current target value, skipping
/// already-paired positions; meeting the value one below the target lowers
/// the target. Pairing ends the scan for that `i`.
pub fn match_to_super_yamanouchi(rho: &Word, pi: &Word) -> Result<Matching> {
    if !is_reduced(rho) {
        return Err(Error::NotReduced);
    }
    if !is_super_yamanouchi(pi) {
        return Err(Error::InvalidWord("not super-Yamanouchi".into()));
    }
    let n = rho.max_letter().max(pi.max_letter()) + 1;
    if word_to_permutation(rho, n)? != word_to_permutation(pi, n)? {
        return Err(Error::InvalidWord(
            "words evaluate to different permutations".into(),
        ));
    }
    let l = rho.len();
    let mut paired = vec![false; l + 1];
    let mut pairs = vec![0; l];
    for i in (1..=l).rev() {
        let mut k = pi.at_position(i);
        let mut j = l;
        let mut found = false;
        while j >= 1 {
            if paired[j] {
                j -= 1;
                continue;
            }
            let r = rho.at_position(j);
            if r == k {
                paired[j] = true;
                pairs[i - 1] = j;
                found = true;
                break;
            }
            if k >= 2 && r == k - 1 {
                k -= 1;
            }
            j -= 1;
        }
        if !found {
            return Err(Error::Integrity(format!(
                "matching scan exhausted at position {i}"
            )));
        }
    }
    Ok(Matching { pairs })
}

/// All words compatible with `rho`, sorted by display order. The chain of
/// position constraints is a path, so per-position upper bounds computed
/// right-to-left make the forward enumeration exact (no dead branches).
pub fn compatible_sequences(rho: &Word) -> Vec<Word> {
    let l = rho.len();
    if l == 0 {
        return vec![Word::empty()];
    }
    // cap[p-1]: largest value alpha may take at position p in any completion
    let mut cap = vec![0usize; l];
    cap[l - 1] = rho.at_position(l);
    for p in (1..l).rev() {
        let strict = (rho.at_position(p + 1) > rho.at_position(p)) as usize;
        cap[p - 1] = rho.at_position(p).min(cap[p].saturating_sub(strict));
    }
    let mut out = Vec::new();
    let mut alpha = vec![0usize; l];

    fn extend(
        rho: &Word,
        cap: &[usize],
        alpha: &mut Vec<usize>,
        p: usize,
        out: &mut Vec<Word>,
    ) {
        let l = rho.len();
        if p > l {
            let mut display = alpha.clone();
            display.reverse();
            out.push(Word { letters: display });
            return;
        }
        let lo = if p == 1 {
            1
        } else {
            alpha[p - 2] + (rho.at_position(p) > rho.at_position(p - 1)) as usize
        };
        for v in lo..=cap[p - 1] {
            alpha[p - 1] = v;
            extend(rho, cap, alpha, p + 1, out);
        }
    }

    extend(rho, &cap, &mut alpha, 1, &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::all_permutations;

    fn word(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn word_basics() {
        let w = word("6,4,5");
        assert_eq!(w.display(), &[6, 4, 5]);
        assert_eq!(w.at_position(1), 5);
        assert_eq!(w.at_position(3), 6);
        assert_eq!(w.to_string(), "6,4,5");
        assert_eq!(word(""), Word::empty());
        assert!("0,1".parse::<Word>().is_err());
        assert!("1,x".parse::<Word>().is_err());
    }

    #[test]
    fn word_json() {
        let w = word("6,4,5");
        let js = serde_json::to_string(&w).unwrap();
        assert_eq!(js, r#"{"letters":[6,4,5]}"#);
        assert_eq!(serde_json::from_str::<Word>(&js).unwrap(), w);
        assert!(serde_json::from_str::<Word>(r#"{"letters":[0]}"#).is_err());
    }

    #[test]
    fn evaluation_examples() {
        let pi = word("6,7,8,5,6,4,5,6,7,2,3,4");
        assert_eq!(word_to_permutation(&pi, 9).unwrap(), perm("152869347"));
        assert_eq!(
            word_to_permutation(&Word::empty(), 4).unwrap(),
            Permutation::identity(4)
        );
        let rho = word("6,4,5,7,8,6,4,5,7,2,3,4");
        assert_eq!(word_to_permutation(&rho, 9).unwrap(), perm("152869347"));
        assert!(matches!(
            word_to_permutation(&word("3"), 3),
            Err(Error::LetterOutOfRange { letter: 3, max: 2 })
        ));
    }

    #[test]
    fn reducedness() {
        assert!(is_reduced(&word("1,2,1")));
        assert_eq!(word_to_permutation(&word("1,2,1"), 3).unwrap(), perm("321"));
        assert!(!is_reduced(&word("1,1")));
        assert!(is_reduced(&word("6,4,5,7,8,6,4,5,7,2,3,4")));
        assert!(is_reduced(&Word::empty()));
    }

    #[test]
    fn reduced_words_of_321() {
        let words = reduced_words(&perm("321")).unwrap();
        assert_eq!(words, vec![word("1,2,1"), word("2,1,2")]);
    }

    #[test]
    fn reduced_words_edge_cases() {
        let s3 = Permutation::identity(4).value_swap(3).unwrap();
        assert_eq!(reduced_words(&s3).unwrap(), vec![word("3")]);
        assert_eq!(
            reduced_words(&Permutation::identity(3)).unwrap(),
            vec![Word::empty()]
        );
        assert!(matches!(
            reduced_words_bounded(&perm("321"), 1),
            Err(Error::BudgetExceeded { budget: 1 })
        ));
    }

    #[test]
    fn reduced_words_all_evaluate_back() {
        for w in all_permutations(4) {
            for rho in reduced_words(&w).unwrap() {
                assert_eq!(rho.len(), w.length());
                assert!(is_reduced(&rho));
                assert_eq!(word_to_permutation(&rho, 4).unwrap(), w);
            }
        }
    }

    #[test]
    fn super_yamanouchi_examples() {
        assert_eq!(
            super_yamanouchi(&perm("152869347")),
            word("6,7,8,5,6,4,5,6,7,2,3,4")
        );
        assert_eq!(super_yamanouchi(&Permutation::identity(5)), Word::empty());
        let pi = super_yamanouchi(&perm("321"));
        assert_eq!(pi, word("2,1,2"));
        assert_eq!(word_to_permutation(&pi, 3).unwrap(), perm("321"));
    }

    #[test]
    fn super_yamanouchi_predicate() {
        assert!(is_super_yamanouchi(&word("6,7,8,5,6,4,5,6,7,2,3,4")));
        assert!(is_super_yamanouchi(&word("2,1,2")));
        assert!(!is_super_yamanouchi(&word("1,2,1")));
        assert!(is_super_yamanouchi(&Word::empty()));
        // increasing run that skips a value is not an interval
        assert!(!is_super_yamanouchi(&word("4,6")));
        // equal run minima
        assert!(!is_super_yamanouchi(&word("1,2,1,2")));
    }

    #[test]
    fn super_yamanouchi_unique_among_reduced_words() {
        for n in 1..=5 {
            for w in all_permutations(n) {
                let pi = super_yamanouchi(&w);
                assert!(is_super_yamanouchi(&pi), "{w}");
                assert_eq!(word_to_permutation(&pi, n).unwrap(), w);
                let hits: Vec<Word> = reduced_words(&w)
                    .unwrap()
                    .into_iter()
                    .filter(is_super_yamanouchi)
                    .collect();
                assert_eq!(hits, vec![pi], "{w}");
            }
        }
    }

    #[test]
    fn super_yamanouchi_columns_read_upward() {
        for n in 1..=6 {
            for w in all_permutations(n) {
                let d = rothe_diagram(&w);
                // reconstruct the labeling and check each column reads c, c+1, ...
                let mut label = std::collections::BTreeMap::new();
                for r in 1..=d.max_row() {
                    for (k, c) in d.row_cols(r).into_iter().enumerate() {
                        label.insert((r, c), r + k);
                    }
                }
                for c in 1..=d.max_col() {
                    for (k, r) in d.column_rows(c).into_iter().enumerate() {
                        assert_eq!(label[&(r, c)], c + k, "w={w} col={c}");
                    }
                }
            }
        }
    }

    #[test]
    fn matching_worked_example() {
        let rho = word("6,4,5,7,8,6,4,5,2,3,4,7");
        let pi = word("6,7,8,5,6,4,5,6,7,2,3,4");
        let m = match_to_super_yamanouchi(&rho, &pi).unwrap();
        let want = [2, 3, 4, 1, 7, 10, 11, 5, 6, 8, 9, 12];
        assert_eq!(m.pairs(), &want);
        assert_eq!(m.position_of(5), 7);
    }

    #[test]
    fn matching_identity_and_small() {
        let pi = word("2,1,2");
        let m = match_to_super_yamanouchi(&pi, &pi).unwrap();
        assert_eq!(m.pairs(), &[1, 2, 3]);

        let m = match_to_super_yamanouchi(&word("1,2,1"), &pi).unwrap();
        assert_eq!(m.position_of(3), 1);
        assert_eq!(m.position_of(2), 3);
        assert_eq!(m.position_of(1), 2);
    }

    #[test]
    fn matching_validates_inputs() {
        assert!(matches!(
            match_to_super_yamanouchi(&word("1,1"), &word("2,1,2")),
            Err(Error::NotReduced)
        ));
        assert!(match_to_super_yamanouchi(&word("1,2,1"), &word("1,2,1")).is_err());
        // reduced words of different permutations
        assert!(match_to_super_yamanouchi(&word("1"), &word("2")).is_err());
    }

    #[test]
    fn matching_is_a_bijection_with_bounds() {
        for w in all_permutations(4) {
            let pi = super_yamanouchi(&w);
            for rho in reduced_words(&w).unwrap() {
                let m = match_to_super_yamanouchi(&rho, &pi).unwrap();
                let mut seen = vec![false; m.pairs().len()];
                for i in 1..=m.pairs().len() {
                    let p = m.position_of(i);
                    assert!(!seen[p - 1]);
                    seen[p - 1] = true;
                    assert!(rho.at_position(p) <= pi.at_position(i));
                }
            }
        }
    }

    #[test]
    fn compatible_worked_example() {
        let rho = word("6,4,5,7,8,6,4,5,7,2,3,4");
        let got = compatible_sequences(&rho);
        assert_eq!(
            got,
            vec![
                word("5,4,4,4,4,3,2,2,2,1,1,1"),
                word("6,4,4,4,4,3,2,2,2,1,1,1"),
            ]
        );
    }

    #[test]
    fn compatible_edge_cases() {
        assert_eq!(compatible_sequences(&word("1")), vec![word("1")]);
        assert_eq!(compatible_sequences(&word("2,1")), vec![word("2,1")]);
        assert_eq!(compatible_sequences(&Word::empty()), vec![Word::empty()]);
        assert_eq!(compatible_sequences(&word("1,2")), vec![word("1,1")]);
        // the ascent into position 2 pushes alpha above the cap at position 3
        assert!(compatible_sequences(&word("1,3,2")).is_empty());
    }

    #[test]
    fn compatible_pair_validation() {
        let rho = word("2,1");
        assert!(CompatiblePair::new(rho.clone(), word("2,1")).is_ok());
        assert!(CompatiblePair::new(rho.clone(), word("1")).is_err());
        assert!(CompatiblePair::new(rho.clone(), word("3,1")).is_err());
        // alpha must decrease weakly in display order (increase by position)
        assert!(CompatiblePair::new(rho.clone(), word("1,2")).is_err());
        // strict rise with rho: rho=(2,1) has no ascent at position 2, so
        // equal alpha letters are fine
        assert!(CompatiblePair::new(word("1,2"), word("1,2")).is_err());
        assert!(CompatiblePair::new(word("1,1"), word("1,1")).is_ok());
    }
}
