//! Sparse multivariate integer polynomials and the three polynomial
//! constructions: divided differences, the compatible-sequence sum, and the
//! Kohnert-diagram sum.
//!
//! Terms map trimmed exponent vectors to nonzero coefficients; equality is
//! exact. Coefficients stay far inside `i64` at desk scale, and debug builds
//! trap on overflow.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::diagrams::{kd_closure_bounded, weight, DEFAULT_STATE_BUDGET};
use crate::error::Result;
use crate::perm::{rothe_diagram, Permutation};
use crate::words::{compatible_sequences, reduced_words_bounded, DEFAULT_WORD_BUDGET};

/// A polynomial in `x1, x2, ...` with integer coefficients. Exponent vectors
/// are stored with trailing zeros trimmed; zero coefficients are never kept.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Vec<u16>, i64>,
}

fn trim(mut exps: Vec<u16>) -> Vec<u16> {
    while exps.last() == Some(&0) {
        exps.pop();
    }
    exps
}

/// Graded lexicographic order: total degree first, then lexicographically
/// largest exponent vector first within a degree.
fn graded_lex(a: &[u16], b: &[u16]) -> Ordering {
    let deg = |v: &[u16]| v.iter().map(|&e| e as u64).sum::<u64>();
    deg(a).cmp(&deg(b)).then_with(|| b.cmp(a))
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial::default()
    }

    pub fn one() -> Polynomial {
        Polynomial::monomial(vec![], 1)
    }

    pub fn monomial(exps: Vec<u16>, coeff: i64) -> Polynomial {
        let mut p = Polynomial::zero();
        p.add_term(exps, coeff);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exps: &[u16]) -> i64 {
        self.terms.get(&trim(exps.to_vec())).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, exps: Vec<u16>, coeff: i64) {
        if coeff == 0 {
            return;
        }
        match self.terms.entry(trim(exps)) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    /// Largest variable index appearing with a positive exponent.
    pub fn max_var(&self) -> usize {
        self.terms.keys().map(|e| e.len()).max().unwrap_or(0)
    }

    /// Terms as `(coefficient, exponents)` in graded-lex order, exponent
    /// vectors padded to at least `n` entries.
    pub fn terms_graded_lex(&self, n: usize) -> Vec<(i64, Vec<u16>)> {
        let mut keys: Vec<&Vec<u16>> = self.terms.keys().collect();
        keys.sort_by(|a, b| graded_lex(a, b));
        keys.into_iter()
            .map(|k| {
                let mut exps = k.clone();
                if exps.len() < n {
                    exps.resize(n, 0);
                }
                (self.terms[k], exps)
            })
            .collect()
    }

    /// The action of the simple transposition on variables `i`, `i+1`.
    pub fn swap_variables(&self, i: usize) -> Polynomial {
        assert!(i >= 1);
        let mut out = Polynomial::zero();
        for (exps, &coeff) in &self.terms {
            let mut e = exps.clone();
            if e.len() < i + 1 {
                e.resize(i + 1, 0);
            }
            e.swap(i - 1, i);
            out.add_term(e, coeff);
        }
        out
    }

    /// True iff the polynomial is invariant under exchanging `x_i`, `x_{i+1}`.
    pub fn is_symmetric_in(&self, i: usize) -> bool {
        self.swap_variables(i) == *self
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (exps, &coeff) in &rhs.terms {
            out.add_term(exps.clone(), coeff);
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (exps, &coeff) in &rhs.terms {
            out.add_term(exps.clone(), -coeff);
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &rhs.terms {
                let mut exps = ea.clone();
                if exps.len() < eb.len() {
                    exps.resize(eb.len(), 0);
                }
                for (k, &e) in eb.iter().enumerate() {
                    exps[k] += e;
                }
                out.add_term(exps, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    /// Text form like `x1^2*x2 + 3*x1*x3`, graded-lex ordered.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (coeff, exps)) in self.terms_graded_lex(0).into_iter().enumerate() {
            if idx == 0 {
                if coeff < 0 {
                    write!(f, "-")?;
                }
            } else if coeff < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = coeff.unsigned_abs();
            let vars: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(k, &e)| {
                    if e == 1 {
                        format!("x{}", k + 1)
                    } else {
                        format!("x{}^{}", k + 1, e)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// The divided difference `(f - s_i f) / (x_i - x_{i+1})`, computed termwise
/// through the telescoping expansion of
/// `(x_i^a x_{i+1}^b - x_i^b x_{i+1}^a) / (x_i - x_{i+1})`; the division is
/// always exact.
pub fn divided_difference(f: &Polynomial, i: usize) -> Polynomial {
    assert!(i >= 1, "variable indices are 1-based");
    let mut out = Polynomial::zero();
    for (exps, &coeff) in &f.terms {
        let a = exps.get(i - 1).copied().unwrap_or(0);
        let b = exps.get(i).copied().unwrap_or(0);
        if a == b {
            continue;
        }
        let mut rest = exps.clone();
        if rest.len() < i + 1 {
            rest.resize(i + 1, 0);
        }
        rest[i - 1] = 0;
        rest[i] = 0;
        let (lo, hi, sign) = if a > b { (b, a, 1) } else { (a, b, -1) };
        for t in 0..hi - lo {
            let mut e = rest.clone();
            e[i - 1] = lo + t;
            e[i] = hi - 1 - t;
            out.add_term(e, sign * coeff);
        }
    }
    out
}

/// The staircase monomial `x1^(n-1) x2^(n-2) ... x_{n-1}`.
pub fn staircase(n: usize) -> Polynomial {
    Polynomial::monomial((0..n).rev().map(|e| e as u16).collect(), 1)
}

/// The Schubert polynomial of `w`, by divided differences: the operators of
/// a reduced word of `w^{-1} w_0` are applied to the staircase monomial in
/// display order. The word is built greedily from the smallest position
/// descent, which yields the lexicographically smallest display word; any
/// choice gives the same result by the braid relations.
pub fn schubert(w: &Permutation) -> Polynomial {
    let n = w.n();
    let mut v = w.inverse().compose(&Permutation::longest_element(n));
    let mut f = staircase(n);
    loop {
        let Some(c) = (1..n).find(|&c| v.at(c) > v.at(c + 1)) else {
            break;
        };
        f = divided_difference(&f, c);
        v = v.swap_positions(c).expect("descent in range");
    }
    f
}

/// As [`schubert`] but along an explicit reduced word of `w^{-1} w_0`
/// (display order). Used to confirm word independence.
pub fn schubert_along(w: &Permutation, word: &crate::words::Word) -> Polynomial {
    let mut f = staircase(w.n());
    for &c in word.display() {
        f = divided_difference(&f, c);
    }
    f
}

/// The compatible-sequence (Billey–Jockusch–Stanley) polynomial: one
/// monomial `x_{alpha_1} ... x_{alpha_l}` per compatible pair of `w`.
pub fn bjs_polynomial(w: &Permutation) -> Result<Polynomial> {
    bjs_polynomial_bounded(w, DEFAULT_WORD_BUDGET)
}

pub fn bjs_polynomial_bounded(w: &Permutation, budget: usize) -> Result<Polynomial> {
    let mut f = Polynomial::zero();
    for rho in reduced_words_bounded(w, budget)? {
        for alpha in compatible_sequences(&rho) {
            let mut exps = vec![0u16; alpha.max_letter()];
            for &a in alpha.display() {
                exps[a - 1] += 1;
            }
            f.add_term(exps, 1);
        }
    }
    Ok(f)
}

/// The Kohnert polynomial: the row-weight generating polynomial of the
/// Kohnert diagrams of the Rothe diagram of `w`.
pub fn kohnert_polynomial(w: &Permutation) -> Result<Polynomial> {
    kohnert_polynomial_bounded(w, DEFAULT_STATE_BUDGET)
}

pub fn kohnert_polynomial_bounded(w: &Permutation, budget: usize) -> Result<Polynomial> {
    let mut f = Polynomial::zero();
    for t in kd_closure_bounded(&rothe_diagram(w), budget)? {
        f.add_term(weight(&t).exponents(), 1);
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn x(i: usize) -> Polynomial {
        let mut e = vec![0u16; i];
        e[i - 1] = 1;
        Polynomial::monomial(e, 1)
    }

    #[test]
    fn divided_difference_examples() {
        assert_eq!(divided_difference(&x(1), 1), Polynomial::one());
        assert_eq!(divided_difference(&(&x(1) * &x(2)), 1), Polynomial::zero());
        let f = &(&x(1) * &x(1)) * &x(2); // x1^2 x2
        assert_eq!(divided_difference(&f, 1), &x(1) * &x(2));
    }

    #[test]
    fn divided_difference_is_exact_division() {
        // (x_i - x_{i+1}) * dd_i(f) == f - s_i f
        let samples = [
            Polynomial::monomial(vec![3, 1, 2], 2),
            &(&x(1) * &x(1)) * &x(3),
            &Polynomial::monomial(vec![0, 0, 4], -3) + &Polynomial::monomial(vec![2, 2], 5),
        ];
        for f in &samples {
            for i in 1..=3 {
                let diff = &x(i) - &x(i + 1);
                let lhs = &diff * &divided_difference(f, i);
                let rhs = f - &f.swap_variables(i);
                assert_eq!(lhs, rhs, "i={i}");
            }
        }
    }

    #[test]
    fn divided_difference_squares_to_zero_and_symmetrizes() {
        let f = &(&x(1) * &x(1)) * &(&x(2) * &x(3));
        for i in 1..=3 {
            let d = divided_difference(&f, i);
            assert!(d.is_symmetric_in(i), "i={i}");
            assert_eq!(divided_difference(&d, i), Polynomial::zero(), "i={i}");
        }
    }

    #[test]
    fn schubert_examples() {
        assert_eq!(schubert(&Permutation::identity(3)), Polynomial::one());
        assert_eq!(schubert(&Permutation::identity(1)), Polynomial::one());
        assert_eq!(
            schubert(&Permutation::longest_element(3)),
            Polynomial::monomial(vec![2, 1], 1)
        );
        assert_eq!(schubert(&perm("132")), &x(1) + &x(2));
        assert_eq!(schubert(&perm("213")), x(1));
        assert_eq!(schubert(&perm("231")), &x(1) * &x(2));
    }

    #[test]
    fn bjs_examples() {
        assert_eq!(bjs_polynomial(&perm("132")).unwrap(), &x(1) + &x(2));
        assert_eq!(
            bjs_polynomial(&Permutation::longest_element(3)).unwrap(),
            Polynomial::monomial(vec![2, 1], 1)
        );
        assert_eq!(
            bjs_polynomial(&Permutation::identity(2)).unwrap(),
            Polynomial::one()
        );
    }

    #[test]
    fn kohnert_examples() {
        assert_eq!(
            kohnert_polynomial(&perm("321")).unwrap(),
            Polynomial::monomial(vec![2, 1], 1)
        );
        assert_eq!(kohnert_polynomial(&perm("132")).unwrap(), &x(1) + &x(2));
        let expected = &(&Polynomial::monomial(vec![2], 1) + &Polynomial::monomial(vec![1, 1], 1))
            + &Polynomial::monomial(vec![1, 0, 1], 1);
        assert_eq!(kohnert_polynomial(&perm("2143")).unwrap(), expected);
    }

    #[test]
    fn display_format() {
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(Polynomial::one().to_string(), "1");
        assert_eq!(schubert(&perm("132")).to_string(), "x1 + x2");
        assert_eq!(schubert(&perm("321")).to_string(), "x1^2*x2");
        assert_eq!(
            schubert(&perm("2143")).to_string(),
            "x1^2 + x1*x2 + x1*x3"
        );
        let p = &Polynomial::monomial(vec![1], -1) + &Polynomial::monomial(vec![0, 3], 2);
        assert_eq!(p.to_string(), "-x1 + 2*x2^3");
        assert_eq!(
            (&Polynomial::monomial(vec![1], 1) - &Polynomial::monomial(vec![0, 1], 3)).to_string(),
            "x1 - 3*x2"
        );
    }

    #[test]
    fn graded_lex_padding() {
        let p = schubert(&perm("2143"));
        let terms = p.terms_graded_lex(4);
        let got: Vec<Vec<u16>> = terms.iter().map(|(_, e)| e.clone()).collect();
        assert_eq!(
            got,
            vec![vec![2, 0, 0, 0], vec![1, 1, 0, 0], vec![1, 0, 1, 0]]
        );
        assert!(terms.iter().all(|&(c, _)| c == 1));
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let mut p = Polynomial::monomial(vec![1, 2], 7);
        p.add_term(vec![1, 2, 0], -7);
        assert!(p.is_zero());
        assert_eq!(p.coefficient(&[1, 2]), 0);
    }

    #[test]
    fn stability_under_embedding() {
        for s in ["21", "132", "2143", "321"] {
            let w = perm(s);
            let e = w.embed(w.n() + 1);
            assert_eq!(schubert(&w), schubert(&e), "{s}");
        }
    }
}
