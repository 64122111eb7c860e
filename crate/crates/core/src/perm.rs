//! Permutations in one-line notation.
//!
//! Rows and columns throughout the crate are 1-based and first-quadrant:
//! row 1 is the bottom row, column 1 the leftmost column.
//!
//! A word of simple transpositions is evaluated by starting from the
//! identity and exchanging the *values* `c`, `c+1` for each letter `c` in
//! display order; see [`crate::words::word_to_permutation`]. Under that
//! convention the group element `w s_c` appearing in descent recursions is
//! [`value_swap`], and the one-line entry swap at positions `c`, `c+1` is
//! [`Permutation::swap_positions`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default bound on permutation size; parsing rejects anything larger to
/// keep downstream state spaces at desk scale.
pub const DEFAULT_MAX_N: usize = 12;

/// A unit cell in the first quadrant. `row >= 1`, `col >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Cell {
        debug_assert!(row >= 1 && col >= 1);
        Cell { row, col }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.row, self.col)
    }
}

/// An element of the symmetric group S_n in one-line notation: the entry at
/// position `i` (1-based) is `w_i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    entries: Vec<usize>,
}

impl Permutation {
    /// Validates that `entries` is a bijection on `1..=n` with `n` at most
    /// [`DEFAULT_MAX_N`].
    pub fn from_one_line(entries: Vec<usize>) -> Result<Permutation> {
        Permutation::from_one_line_with_max(entries, DEFAULT_MAX_N)
    }

    /// As [`Permutation::from_one_line`] with a caller-chosen size bound.
    pub fn from_one_line_with_max(entries: Vec<usize>, max_n: usize) -> Result<Permutation> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty one-line notation".into()));
        }
        if n > max_n {
            return Err(Error::SizeLimit { n, max: max_n });
        }
        let mut seen = vec![false; n];
        for &e in &entries {
            if e < 1 || e > n {
                return Err(Error::InvalidPermutation(format!(
                    "entry {e} out of range 1..={n}"
                )));
            }
            if seen[e - 1] {
                return Err(Error::InvalidPermutation(format!("entry {e} repeated")));
            }
            seen[e - 1] = true;
        }
        Ok(Permutation { entries })
    }

    /// The identity of S_n.
    pub fn identity(n: usize) -> Permutation {
        Permutation {
            entries: (1..=n).collect(),
        }
    }

    /// The longest element `w_0 = n, n-1, ..., 1`, of length `n(n-1)/2`.
    pub fn longest_element(n: usize) -> Permutation {
        Permutation {
            entries: (1..=n).rev().collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    /// One-line entry at 1-based position `i`.
    pub fn at(&self, i: usize) -> usize {
        self.entries[i - 1]
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// 1-based position of value `v`.
    pub fn position_of(&self, v: usize) -> usize {
        self.entries.iter().position(|&e| e == v).unwrap() + 1
    }

    /// Number of inversions, i.e. the Coxeter length.
    pub fn length(&self) -> usize {
        let n = self.n();
        let mut inv = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.entries[i] > self.entries[j] {
                    inv += 1;
                }
            }
        }
        inv
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, &e)| e == i + 1)
    }

    /// Exchanges the values `c` and `c+1` wherever they sit in one-line
    /// notation. Changes the length by exactly one.
    pub fn value_swap(&self, c: usize) -> Result<Permutation> {
        if c < 1 || c + 1 > self.n() {
            return Err(Error::ColumnOutOfRange { c, n: self.n() });
        }
        let mut entries = self.entries.clone();
        let p = entries.iter().position(|&e| e == c).unwrap();
        let q = entries.iter().position(|&e| e == c + 1).unwrap();
        entries.swap(p, q);
        Ok(Permutation { entries })
    }

    /// True iff exchanging the values `c`, `c+1` lowers the length, i.e.
    /// `c+1` precedes `c` in one-line notation.
    pub fn value_swap_decreases(&self, c: usize) -> bool {
        self.position_of(c + 1) < self.position_of(c)
    }

    /// Exchanges the entries at positions `c` and `c+1`.
    pub fn swap_positions(&self, c: usize) -> Result<Permutation> {
        if c < 1 || c + 1 > self.n() {
            return Err(Error::ColumnOutOfRange { c, n: self.n() });
        }
        let mut entries = self.entries.clone();
        entries.swap(c - 1, c);
        Ok(Permutation { entries })
    }

    pub fn inverse(&self) -> Permutation {
        let mut entries = vec![0; self.n()];
        for (i, &e) in self.entries.iter().enumerate() {
            entries[e - 1] = i + 1;
        }
        Permutation { entries }
    }

    /// Function composition: `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n(), "composition requires equal sizes");
        let entries = other.entries.iter().map(|&e| self.entries[e - 1]).collect();
        Permutation { entries }
    }

    /// Embeds into S_m by appending fixed points. `m >= n`.
    pub fn embed(&self, m: usize) -> Permutation {
        assert!(m >= self.n());
        let mut entries = self.entries.clone();
        entries.extend(self.n() + 1..=m);
        Permutation { entries }
    }

    /// Drops trailing fixed points down to size `min_n` (at least 1).
    pub fn trim(&self, min_n: usize) -> Permutation {
        let mut entries = self.entries.clone();
        while entries.len() > min_n.max(1) && *entries.last().unwrap() == entries.len() {
            entries.pop();
        }
        Permutation { entries }
    }
}

/// Parses one-line notation: contiguous digits for n <= 9 ("152869347"),
/// comma-separated otherwise ("1,5,2,8,6,9,3,4,7"). Both forms are accepted
/// for any size they can express.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Permutation> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::InvalidPermutation("empty string".into()));
        }
        let entries: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::InvalidPermutation(format!("bad entry {t:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|ch| {
                    ch.to_digit(10)
                        .filter(|&d| d >= 1)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::InvalidPermutation(format!("bad digit {ch:?}")))
                })
                .collect::<Result<_>>()?
        };
        Permutation::from_one_line(entries)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for &e in &self.entries {
                write!(f, "{e}")?;
            }
            Ok(())
        } else {
            let strs: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
            write!(f, "{}", strs.join(","))
        }
    }
}

/// All elements of S_n in lexicographic order of one-line notation.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=n).collect();
    loop {
        out.push(Permutation {
            entries: cur.clone(),
        });
        // classic next-permutation step
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// The Rothe diagram: a cell `(i, w_j)` for every inversion `i < j`,
/// `w_i > w_j`. Its cell count equals the length of `w`.
pub fn rothe_diagram(w: &Permutation) -> crate::diagrams::Diagram {
    let n = w.n();
    let mut cells = Vec::with_capacity(w.length());
    for i in 1..=n {
        for j in i + 1..=n {
            if w.at(i) > w.at(j) {
                cells.push(Cell::new(i, w.at(j)));
            }
        }
    }
    crate::diagrams::Diagram::from_cells(cells).expect("inversion cells are distinct")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_validate() {
        assert_eq!(
            p("152869347").entries(),
            &[1, 5, 2, 8, 6, 9, 3, 4, 7],
            "digit form"
        );
        assert_eq!(p("1,5,2,8,6,9,3,4,7"), p("152869347"));
        assert_eq!(p("123").length(), 0);
        assert!(Permutation::from_one_line(vec![1, 5, 5]).is_err());
        assert!(Permutation::from_one_line(vec![0, 1]).is_err());
        assert!(Permutation::from_one_line(vec![]).is_err());
        assert!("".parse::<Permutation>().is_err());
        assert!("1x2".parse::<Permutation>().is_err());
        // default size bound
        let big: Vec<usize> = (1..=13).collect();
        assert!(matches!(
            Permutation::from_one_line(big),
            Err(Error::SizeLimit { n: 13, max: 12 })
        ));
    }

    #[test]
    fn display_roundtrip() {
        for s in ["152869347", "1", "21"] {
            assert_eq!(p(s).to_string(), s);
        }
        let w = Permutation::from_one_line_with_max((1..=10).rev().collect(), 12).unwrap();
        assert_eq!(w.to_string(), "10,9,8,7,6,5,4,3,2,1");
        assert_eq!(w.to_string().parse::<Permutation>().unwrap(), w);
    }

    #[test]
    fn length_and_longest() {
        assert_eq!(p("152869347").length(), 12);
        assert_eq!(Permutation::longest_element(3), p("321"));
        assert_eq!(Permutation::longest_element(3).length(), 3);
        assert_eq!(Permutation::longest_element(2), p("21"));
        assert_eq!(Permutation::longest_element(2).length(), 1);
        assert_eq!(Permutation::longest_element(4), p("4321"));
        assert_eq!(Permutation::longest_element(4).length(), 6);
    }

    #[test]
    fn value_swap_examples() {
        let w = p("152869347");
        let v = w.value_swap(4).unwrap();
        assert_eq!(v, p("142869357"));
        assert_eq!(w.length(), 12);
        assert_eq!(v.length(), 11);

        let id = Permutation::identity(3);
        assert_eq!(id.value_swap(1).unwrap(), p("213"));
        assert_eq!(id.length(), 0);
        assert_eq!(id.value_swap(1).unwrap().length(), 1);

        assert!(id.value_swap(0).is_err());
        assert!(id.value_swap(3).is_err());
    }

    #[test]
    fn value_swap_is_involutive_and_changes_length_by_one() {
        for w in all_permutations(5) {
            let l = w.length();
            for c in 1..5 {
                let v = w.value_swap(c).unwrap();
                assert_eq!(v.value_swap(c).unwrap(), w);
                assert_eq!((v.length() as i64 - l as i64).abs(), 1);
                assert_eq!(v.length() < l, w.value_swap_decreases(c));
            }
        }
    }

    #[test]
    fn rothe_examples() {
        let d = rothe_diagram(&p("152869347"));
        let mut by_row: Vec<Vec<usize>> = vec![Vec::new(); 7];
        for c in d.cells() {
            by_row[c.row].push(c.col);
        }
        assert_eq!(by_row[2], vec![2, 3, 4]);
        assert_eq!(by_row[4], vec![3, 4, 6, 7]);
        assert_eq!(by_row[5], vec![3, 4]);
        assert_eq!(by_row[6], vec![3, 4, 7]);
        assert!(by_row[1].is_empty() && by_row[3].is_empty());
        assert_eq!(d.len(), 12);

        assert!(rothe_diagram(&Permutation::identity(4)).is_empty());

        let d321 = rothe_diagram(&p("321"));
        let want = [Cell::new(1, 1), Cell::new(1, 2), Cell::new(2, 1)];
        assert_eq!(d321.cells(), &want);
    }

    #[test]
    fn rothe_cell_count_is_length() {
        for n in 1..=6 {
            for w in all_permutations(n) {
                assert_eq!(rothe_diagram(&w).len(), w.length());
            }
        }
    }

    #[test]
    fn inverse_compose_embed() {
        let w = p("152869347");
        assert!(w.compose(&w.inverse()).is_identity());
        assert!(w.inverse().compose(&w).is_identity());
        assert_eq!(p("231").inverse(), p("312"));
        assert_eq!(p("21").embed(4), p("2134"));
        assert_eq!(p("2134").trim(2), p("21"));
        assert_eq!(p("123").trim(1), p("1"));
    }

    #[test]
    fn all_permutations_counts() {
        assert_eq!(all_permutations(1).len(), 1);
        assert_eq!(all_permutations(3).len(), 6);
        assert_eq!(all_permutations(5).len(), 120);
        let s3 = all_permutations(3);
        assert_eq!(s3[0], p("123"));
        assert_eq!(s3[5], p("321"));
    }
}
