//! Diagrams, Kohnert moves, and closure enumeration.
//!
//! A diagram is a finite set of unit cells in the first quadrant. A Kohnert
//! move takes the rightmost cell of a row and drops it within its column to
//! the first empty position below, jumping over occupied cells. The closure
//! of a diagram under such moves is enumerated breadth-first over a packed
//! per-column bitmask encoding: moves only go down, so every reachable state
//! fits in the base diagram's bounding box and hashes as a short word vector.

use std::collections::VecDeque;
use std::fmt;

use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Cell;

/// Rows are packed into one machine word per column.
pub const MAX_PACKED_ROW: usize = 64;

/// Default cap on the number of states a single closure may discover.
pub const DEFAULT_STATE_BUDGET: usize = 10_000_000;

/// A finite set of cells, kept sorted by `(row, col)` so that equality and
/// hashing are canonical.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "DiagramRepr", into = "DiagramRepr")]
pub struct Diagram {
    cells: Vec<Cell>,
}

#[derive(Serialize, Deserialize)]
struct DiagramRepr {
    cells: Vec<(usize, usize)>,
}

impl TryFrom<DiagramRepr> for Diagram {
    type Error = Error;

    fn try_from(repr: DiagramRepr) -> Result<Diagram> {
        for &(row, col) in &repr.cells {
            if row < 1 || col < 1 {
                return Err(Error::InvalidDiagram(format!(
                    "cell [{row}, {col}] outside the first quadrant"
                )));
            }
        }
        Diagram::from_cells(repr.cells.into_iter().map(|(r, c)| Cell::new(r, c)))
    }
}

impl From<Diagram> for DiagramRepr {
    fn from(d: Diagram) -> DiagramRepr {
        DiagramRepr {
            cells: d.cells.into_iter().map(|c| (c.row, c.col)).collect(),
        }
    }
}

impl Diagram {
    pub fn empty() -> Diagram {
        Diagram { cells: Vec::new() }
    }

    /// Builds a diagram from arbitrary cell order; rejects duplicates.
    pub fn from_cells(cells: impl IntoIterator<Item = Cell>) -> Result<Diagram> {
        let mut cells: Vec<Cell> = cells.into_iter().collect();
        cells.sort();
        for pair in cells.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::InvalidDiagram(format!("duplicate cell {}", pair[0])));
            }
        }
        Ok(Diagram { cells })
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.cells.binary_search(&cell).is_ok()
    }

    pub fn max_row(&self) -> usize {
        self.cells.iter().map(|c| c.row).max().unwrap_or(0)
    }

    pub fn max_col(&self) -> usize {
        self.cells.iter().map(|c| c.col).max().unwrap_or(0)
    }

    /// Occupied rows of column `c`, ascending.
    pub fn column_rows(&self, c: usize) -> Vec<usize> {
        self.cells
            .iter()
            .filter(|cell| cell.col == c)
            .map(|cell| cell.row)
            .collect()
    }

    /// Occupied columns of row `r`, ascending.
    pub fn row_cols(&self, r: usize) -> Vec<usize> {
        self.cells
            .iter()
            .filter(|cell| cell.row == r)
            .map(|cell| cell.col)
            .collect()
    }

    /// Column of the rightmost cell of row `r`, if the row is occupied.
    pub fn rightmost_in_row(&self, r: usize) -> Option<usize> {
        self.cells
            .iter()
            .filter(|cell| cell.row == r)
            .map(|cell| cell.col)
            .max()
    }

    /// The diagram with `cell` added, or `None` if it is already occupied.
    pub fn with_cell(&self, cell: Cell) -> Option<Diagram> {
        match self.cells.binary_search(&cell) {
            Ok(_) => None,
            Err(idx) => {
                let mut cells = self.cells.clone();
                cells.insert(idx, cell);
                Some(Diagram { cells })
            }
        }
    }

    /// The diagram with `cell` removed, or `None` if it is absent.
    pub fn without_cell(&self, cell: Cell) -> Option<Diagram> {
        match self.cells.binary_search(&cell) {
            Ok(idx) => {
                let mut cells = self.cells.clone();
                cells.remove(idx);
                Some(Diagram { cells })
            }
            Err(_) => None,
        }
    }

    /// ASCII rendering over this diagram's own bounding box: top row first,
    /// `O` for a cell, `.` for an empty position, origin at bottom left.
    pub fn render(&self) -> String {
        self.render_grid(self.max_row(), self.max_col())
    }

    /// ASCII rendering over an explicit `rows x cols` grid.
    pub fn render_grid(&self, rows: usize, cols: usize) -> String {
        if rows == 0 || cols == 0 {
            return "(empty)\n".to_string();
        }
        let mut out = String::with_capacity((cols + 1) * rows);
        for r in (1..=rows).rev() {
            for c in 1..=cols {
                out.push(if self.contains(Cell::new(r, c)) { 'O' } else { '.' });
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Row occupation counts: `counts()[i]` is the number of cells in row `i+1`.
/// The vector stops at the highest occupied row.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weight(Vec<usize>);

impl Weight {
    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    /// Exponent vector of the monomial `x^wt`.
    pub fn exponents(&self) -> Vec<u16> {
        self.0.iter().map(|&c| c as u16).collect()
    }
}

/// Per-row cell counts of `d`.
pub fn weight(d: &Diagram) -> Weight {
    let mut counts = vec![0; d.max_row()];
    for cell in d.cells() {
        counts[cell.row - 1] += 1;
    }
    Weight(counts)
}

/// Applies the Kohnert move at row `r`: the rightmost cell of the row drops
/// within its column to the first empty position below. Returns `None` when
/// the row is empty or its rightmost cell has no empty position below it.
pub fn kohnert_move(d: &Diagram, r: usize) -> Option<Diagram> {
    let c = d.rightmost_in_row(r)?;
    let dest = (1..r).rev().find(|&rr| !d.contains(Cell::new(rr, c)))?;
    Some(
        d.without_cell(Cell::new(r, c))
            .unwrap()
            .with_cell(Cell::new(dest, c))
            .unwrap(),
    )
}

/// True iff every pair of cells positioned with one strictly northwest of
/// the other has a cell at its southwest corner.
pub fn is_southwest(d: &Diagram) -> bool {
    for a in d.cells() {
        for b in d.cells() {
            if a.row > b.row && a.col < b.col && !d.contains(Cell::new(b.row, a.col)) {
                return false;
            }
        }
    }
    true
}

/// True iff the occupied row sets of columns `c` and `c+1` are ordered by
/// inclusion (either way). `c` must be at least 1.
pub fn columns_inclusion_ordered(d: &Diagram, c: usize) -> bool {
    assert!(c >= 1, "column indices are 1-based");
    let a = d.column_rows(c);
    let b = d.column_rows(c + 1);
    let contains_all = |big: &[usize], small: &[usize]| {
        small.iter().all(|r| big.binary_search(r).is_ok())
    };
    contains_all(&a, &b) || contains_all(&b, &a)
}

// ---------------------------------------------------------------------------
// Packed closure enumeration
// ---------------------------------------------------------------------------

/// Per-column occupied-row bitmasks; bit `r-1` of `cols[c-1]` is cell `(r,c)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub(crate) struct Packed {
    pub(crate) cols: Vec<u64>,
}

impl Packed {
    pub(crate) fn from_diagram(d: &Diagram) -> Result<Packed> {
        if d.max_row() > MAX_PACKED_ROW {
            return Err(Error::RowLimit {
                limit: MAX_PACKED_ROW,
            });
        }
        let mut cols = vec![0u64; d.max_col()];
        for cell in d.cells() {
            cols[cell.col - 1] |= 1 << (cell.row - 1);
        }
        Ok(Packed { cols })
    }

    pub(crate) fn to_diagram(&self) -> Diagram {
        let mut cells = Vec::new();
        for (ci, &mask) in self.cols.iter().enumerate() {
            let mut m = mask;
            while m != 0 {
                let bit = m.trailing_zeros() as usize;
                cells.push(Cell::new(bit + 1, ci + 1));
                m &= m - 1;
            }
        }
        Diagram::from_cells(cells).expect("bitmask cells are distinct")
    }

    /// The Kohnert move at row `r`, as `(col, from, to, successor)`.
    pub(crate) fn kohnert_move(&self, r: usize) -> Option<(usize, usize, usize, Packed)> {
        let row_bit = 1u64 << (r - 1);
        let c = (0..self.cols.len()).rev().find(|&ci| self.cols[ci] & row_bit != 0)?;
        let below = row_bit - 1;
        let free = !self.cols[c] & below;
        if free == 0 {
            return None;
        }
        let dest_bit = 63 - free.leading_zeros() as usize;
        let mut next = self.clone();
        next.cols[c] = (next.cols[c] & !row_bit) | (1 << dest_bit);
        Some((c + 1, r, dest_bit + 1, next))
    }

    pub(crate) fn max_row(&self) -> usize {
        self.cols
            .iter()
            .map(|&m| 64 - m.leading_zeros() as usize)
            .max()
            .unwrap_or(0)
    }
}

/// The closure of `{d}` under Kohnert moves, with the default state budget.
/// The result is sorted and includes `d` itself.
pub fn kd_closure(d: &Diagram) -> Result<Vec<Diagram>> {
    kd_closure_bounded(d, DEFAULT_STATE_BUDGET)
}

/// As [`kd_closure`] with an explicit budget on discovered states.
pub fn kd_closure_bounded(d: &Diagram, budget: usize) -> Result<Vec<Diagram>> {
    let start = Packed::from_diagram(d)?;
    let max_row = start.max_row();
    let mut visited: FxHashSet<Packed> = FxHashSet::default();
    let mut queue = VecDeque::new();
    visited.insert(start.clone());
    queue.push_back(start);
    while let Some(state) = queue.pop_front() {
        for r in 2..=max_row {
            if let Some((_, _, _, next)) = state.kohnert_move(r) {
                if visited.contains(&next) {
                    continue;
                }
                if visited.len() >= budget {
                    return Err(Error::BudgetExceeded { budget });
                }
                visited.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<Diagram> = visited.iter().map(Packed::to_diagram).collect();
    out.sort();
    Ok(out)
}

/// One BFS discovery edge: the state at `parent` reached this one by moving
/// the cell `(from, col)` down to `(to, col)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TraceEdge {
    pub parent: usize,
    pub col: usize,
    pub from: usize,
    pub to: usize,
}

/// A closure that remembers one parent move per discovered state, so a move
/// sequence from the base to any member can be read off by walking parents.
pub struct TracedClosure {
    diagrams: Vec<Diagram>,
    edges: Vec<Option<TraceEdge>>,
    index: FxHashMap<Diagram, usize>,
}

impl TracedClosure {
    /// Discovery order; entry 0 is the base diagram.
    pub fn diagrams(&self) -> &[Diagram] {
        &self.diagrams
    }

    pub fn position(&self, d: &Diagram) -> Option<usize> {
        self.index.get(d).copied()
    }

    /// The recorded move sequence from the base to state `idx`, each entry
    /// `(col, from_row, to_row)`.
    pub fn moves_to(&self, idx: usize) -> Vec<(usize, usize, usize)> {
        let mut rev = Vec::new();
        let mut cur = idx;
        while let Some(edge) = self.edges[cur] {
            rev.push((edge.col, edge.from, edge.to));
            cur = edge.parent;
        }
        rev.reverse();
        rev
    }
}

/// As [`kd_closure_bounded`], additionally recording one parent move per
/// discovered state.
pub fn kd_closure_traced(d: &Diagram, budget: usize) -> Result<TracedClosure> {
    let start = Packed::from_diagram(d)?;
    let max_row = start.max_row();
    let mut states: Vec<Packed> = vec![start.clone()];
    let mut edges: Vec<Option<TraceEdge>> = vec![None];
    let mut seen: FxHashMap<Packed, usize> = FxHashMap::default();
    seen.insert(start, 0);
    let mut head = 0;
    while head < states.len() {
        for r in 2..=max_row {
            if let Some((col, from, to, next)) = states[head].kohnert_move(r) {
                if seen.contains_key(&next) {
                    continue;
                }
                if states.len() >= budget {
                    return Err(Error::BudgetExceeded { budget });
                }
                let idx = states.len();
                seen.insert(next.clone(), idx);
                states.push(next);
                edges.push(Some(TraceEdge {
                    parent: head,
                    col,
                    from,
                    to,
                }));
            }
        }
        head += 1;
    }
    let diagrams: Vec<Diagram> = states.iter().map(Packed::to_diagram).collect();
    let index = diagrams
        .iter()
        .enumerate()
        .map(|(i, d)| (d.clone(), i))
        .collect();
    Ok(TracedClosure {
        diagrams,
        edges,
        index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{rothe_diagram, Permutation};

    fn diag(cells: &[(usize, usize)]) -> Diagram {
        Diagram::from_cells(cells.iter().map(|&(r, c)| Cell::new(r, c))).unwrap()
    }

    fn rothe(s: &str) -> Diagram {
        rothe_diagram(&s.parse::<Permutation>().unwrap())
    }

    #[test]
    fn single_cell_drops() {
        assert_eq!(kohnert_move(&diag(&[(2, 2)]), 2), Some(diag(&[(1, 2)])));
    }

    #[test]
    fn blocked_bottom_cell_has_no_move() {
        // rightmost of row 2 sits in column 1 above an occupied bottom cell
        assert_eq!(kohnert_move(&rothe("321"), 2), None);
        assert_eq!(kohnert_move(&rothe("321"), 1), None);
        assert_eq!(kohnert_move(&rothe("321"), 5), None);
    }

    #[test]
    fn row_two_moves_on_152869347() {
        let base = rothe("152869347");
        let s1 = kohnert_move(&base, 2).unwrap();
        assert_eq!(
            s1,
            base.without_cell(Cell::new(2, 4))
                .unwrap()
                .with_cell(Cell::new(1, 4))
                .unwrap()
        );
        let s2 = kohnert_move(&s1, 2).unwrap();
        let s3 = kohnert_move(&s2, 2).unwrap();
        // all three cells of row 2 have dropped to row 1
        assert_eq!(s3.row_cols(1), vec![2, 3, 4]);
        assert!(s3.row_cols(2).is_empty());
        assert_eq!(kohnert_move(&s3, 2), None);
    }

    #[test]
    fn moves_jump_over_occupied_cells() {
        let d = diag(&[(4, 1), (3, 1), (1, 1)]);
        assert_eq!(kohnert_move(&d, 4), Some(diag(&[(2, 1), (3, 1), (1, 1)])));
    }

    #[test]
    fn closure_of_321_is_singleton() {
        let base = rothe("321");
        assert_eq!(kd_closure(&base).unwrap(), vec![base]);
    }

    #[test]
    fn closure_of_132_has_two_members() {
        let got = kd_closure(&rothe("132")).unwrap();
        assert_eq!(got, vec![diag(&[(1, 2)]), diag(&[(2, 2)])]);
    }

    #[test]
    fn closure_of_2143_weights() {
        let base = rothe("2143");
        assert_eq!(base, diag(&[(1, 1), (3, 3)]));
        let got = kd_closure(&base).unwrap();
        assert_eq!(got.len(), 3);
        let mut weights: Vec<Vec<usize>> =
            got.iter().map(|d| weight(d).counts().to_vec()).collect();
        weights.sort();
        assert_eq!(weights, vec![vec![1, 0, 1], vec![1, 1], vec![2]]);
    }

    #[test]
    fn closure_budget_is_enforced() {
        assert!(matches!(
            kd_closure_bounded(&rothe("132"), 1),
            Err(Error::BudgetExceeded { budget: 1 })
        ));
    }

    #[test]
    fn packing_rejects_towering_rows() {
        let d = diag(&[(65, 1)]);
        assert!(matches!(kd_closure(&d), Err(Error::RowLimit { .. })));
    }

    #[test]
    fn weight_examples() {
        assert!(weight(&Diagram::empty()).counts().is_empty());
        assert_eq!(weight(&rothe("152869347")).counts(), &[0, 3, 0, 4, 2, 3]);
        let bijection_image = diag(&[
            (1, 2),
            (1, 3),
            (1, 4),
            (2, 3),
            (2, 4),
            (2, 7),
            (3, 4),
            (4, 3),
            (4, 4),
            (4, 6),
            (4, 7),
            (6, 3),
        ]);
        assert_eq!(weight(&bijection_image).counts(), &[3, 3, 1, 4, 0, 1]);
    }

    #[test]
    fn southwest_examples() {
        for n in 1..=5 {
            for w in crate::perm::all_permutations(n) {
                assert!(is_southwest(&rothe_diagram(&w)), "rothe of {w}");
            }
        }
        assert!(!is_southwest(&diag(&[(2, 1), (1, 2)])));
        assert!(is_southwest(&diag(&[(2, 2), (1, 1)])));
        assert!(is_southwest(&Diagram::empty()));
    }

    #[test]
    fn inclusion_examples() {
        let d = rothe("152869347");
        assert!(columns_inclusion_ordered(&d, 3));
        assert!(!columns_inclusion_ordered(&diag(&[(1, 1), (2, 2)]), 1));
        assert!(columns_inclusion_ordered(&Diagram::empty(), 1));
        for c in 1..=8 {
            assert!(columns_inclusion_ordered(&d, c), "column {c}");
        }
    }

    #[test]
    fn render_matches_grid_convention() {
        let d = diag(&[(1, 1), (1, 2), (2, 1)]);
        assert_eq!(d.render(), "O.\nOO\n");
        assert_eq!(d.render_grid(3, 3), "...\nO..\nOO.\n");
        assert_eq!(Diagram::empty().render(), "(empty)\n");
    }

    #[test]
    fn json_shape_and_duplicate_rejection() {
        let d = diag(&[(2, 1), (1, 2)]);
        let js = serde_json::to_string(&d).unwrap();
        assert_eq!(js, r#"{"cells":[[1,2],[2,1]]}"#);
        assert_eq!(serde_json::from_str::<Diagram>(&js).unwrap(), d);
        assert!(serde_json::from_str::<Diagram>(r#"{"cells":[[1,1],[1,1]]}"#).is_err());
        assert!(serde_json::from_str::<Diagram>(r#"{"cells":[[0,1]]}"#).is_err());
    }

    #[test]
    fn traced_closure_paths_replay() {
        let base = rothe("2143");
        let traced = kd_closure_traced(&base, 1000).unwrap();
        assert_eq!(traced.diagrams().len(), 3);
        let target = diag(&[(1, 1), (1, 3)]);
        let idx = traced.position(&target).unwrap();
        let moves = traced.moves_to(idx);
        assert_eq!(moves, vec![(3, 3, 2), (3, 2, 1)]);
        // replay the recorded path directly
        let mut cur = base;
        for (col, from, to) in moves {
            cur = cur
                .without_cell(Cell::new(from, col))
                .unwrap()
                .with_cell(Cell::new(to, col))
                .unwrap();
        }
        assert_eq!(cur, target);
    }
}
