//! The weight-preserving bijection between compatible pairs and Kohnert
//! diagrams.
//!
//! [`forward`] builds the diagram of a compatible pair one letter at a time:
//! reading the reduced word in display order, the accumulated diagram is
//! pushed through the column swap at the current letter and a new cell is
//! placed at (alpha letter, rho letter). [`backward`] inverts this by
//! repeatedly removing the lowest-then-rightmost cell and swapping back over
//! the base with one Rothe cell deleted.
//!
//! Both maps are recursions on word length in the underlying theory; they
//! are unrolled to iteration here with explicit `(u, T)` state so that
//! integrity checks can run incrementally.

use crate::colswap::SwapEngine;
use crate::diagrams::{kd_closure, Diagram};
use crate::error::{Error, Result};
use crate::perm::{rothe_diagram, Cell, Permutation};
use crate::words::{is_reduced, word_to_permutation, CompatiblePair, Word};

/// How much internal verification the maps perform.
///
/// `Full` recomputes closure memberships at every step, which is exponential
/// and meant for small exhaustive runs; `Fast` trusts the underlying
/// theorems and keeps only the cheap assertions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Checks {
    #[default]
    Fast,
    Full,
}

/// The Kohnert diagram of a compatible pair, inside S_n.
pub fn forward(pair: &CompatiblePair, n: usize) -> Result<Diagram> {
    forward_with(&mut SwapEngine::default(), pair, n, Checks::default())
}

pub fn forward_with(
    engine: &mut SwapEngine,
    pair: &CompatiblePair,
    n: usize,
    checks: Checks,
) -> Result<Diagram> {
    let rho = pair.rho();
    if !is_reduced(rho) {
        return Err(Error::NotReduced);
    }
    // validates letters < n
    word_to_permutation(rho, n)?;

    let mut u = Permutation::identity(n);
    let mut t = Diagram::empty();
    for p in (1..=rho.len()).rev() {
        let c = rho.at_position(p);
        let swapped = engine.swap(&rothe_diagram(&u), &t, c)?;
        let cell = Cell::new(pair.alpha().at_position(p), c);
        t = swapped.with_cell(cell).ok_or_else(|| {
            Error::Integrity(format!("forward target cell {cell} already occupied"))
        })?;
        u = u.value_swap(c)?;
        if checks == Checks::Full {
            let closure = kd_closure(&rothe_diagram(&u))?;
            if closure.binary_search(&t).is_err() {
                return Err(Error::Integrity(format!(
                    "forward state at position {p} left the closure of {u}"
                )));
            }
        }
    }
    Ok(t)
}

/// The compatible pair of a Kohnert diagram `t` of the Rothe diagram of `w`.
pub fn backward(t: &Diagram, w: &Permutation) -> Result<CompatiblePair> {
    backward_with(&mut SwapEngine::default(), t, w, Checks::default())
}

pub fn backward_with(
    engine: &mut SwapEngine,
    t: &Diagram,
    w: &Permutation,
    checks: Checks,
) -> Result<CompatiblePair> {
    if t.len() != w.length() {
        return Err(Error::NotInClosure);
    }
    if checks == Checks::Full {
        let closure = kd_closure(&rothe_diagram(w))?;
        if closure.binary_search(t).is_err() {
            return Err(Error::NotInClosure);
        }
    }

    let mut u = w.clone();
    let mut cur = t.clone();
    // letters and rows are emitted at positions 1, 2, ..., so they arrive in
    // reverse display order
    let mut letters_rev = Vec::with_capacity(t.len());
    let mut rows_rev = Vec::with_capacity(t.len());
    while !cur.is_empty() {
        let x = lowest_then_rightmost(&cur);
        let c = x.col;
        let base = rothe_diagram(&u);
        let r_star = (1..=base.max_row())
            .find(|&r| base.rightmost_in_row(r) == Some(c))
            .ok_or_else(|| {
                Error::Integrity(format!("no row of the base of {u} ends in column {c}"))
            })?;
        let deleted = base
            .without_cell(Cell::new(r_star, c))
            .expect("row ends in column c");
        let remaining = cur.without_cell(x).expect("x is a cell of the diagram");
        cur = engine.swap(&deleted, &remaining, c).map_err(|e| match e {
            Error::NotInClosure => {
                Error::Integrity(format!("removing {x} left the closure under {u}"))
            }
            other => other,
        })?;
        u = u.value_swap(c)?;
        letters_rev.push(c);
        rows_rev.push(x.row);
    }
    if !u.is_identity() {
        return Err(Error::Integrity("word consumed without reaching the identity".into()));
    }

    letters_rev.reverse();
    rows_rev.reverse();
    let rho = Word::new(letters_rev).expect("columns are positive");
    let alpha = Word::new(rows_rev).expect("rows are positive");
    if alpha != alpha_of(t, w.n()) {
        return Err(Error::Integrity(
            "emitted rows disagree with the weight word".into(),
        ));
    }
    CompatiblePair::new(rho, alpha)
        .map_err(|e| Error::Integrity(format!("emitted pair is not compatible: {e}")))
}

fn lowest_then_rightmost(d: &Diagram) -> Cell {
    // cells are sorted by (row, col): the last cell of the first row block
    let lowest = d.cells()[0].row;
    *d.cells()
        .iter()
        .take_while(|c| c.row == lowest)
        .last()
        .unwrap()
}

/// The weakly decreasing word with `wt(t)_i` copies of `i` (largest letters
/// first in display order).
pub fn alpha_of(t: &Diagram, n: usize) -> Word {
    let wt = crate::diagrams::weight(t);
    let counts = wt.counts();
    let mut letters = Vec::with_capacity(t.len());
    for i in (1..=n.max(counts.len())).rev() {
        if i <= counts.len() {
            letters.extend(std::iter::repeat(i).take(counts[i - 1]));
        }
    }
    Word::new(letters).expect("rows are positive")
}
