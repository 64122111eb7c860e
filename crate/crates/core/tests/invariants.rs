//! Exhaustive small-group invariant suites for diagrams, words, and the
//! column swap. These mirror the structural lemmas the bijection rests on.

use kohnert::colswap::column_swap_base;
use kohnert::diagrams::{
    columns_inclusion_ordered, is_southwest, kd_closure, weight, Diagram,
};
use kohnert::perm::{all_permutations, rothe_diagram, Cell, Permutation};
use kohnert::words::{match_to_super_yamanouchi, reduced_words, super_yamanouchi};

/// Rows of the Rothe diagram of `w` whose rightmost cell sits in column `c`,
/// lowest first.
fn rows_ending_in(base: &Diagram, c: usize) -> Vec<usize> {
    (1..=base.max_row())
        .filter(|&r| base.rightmost_in_row(r) == Some(c))
        .collect()
}

#[test]
fn rothe_diagrams_are_southwest_with_nested_columns() {
    for n in 1..=6 {
        for w in all_permutations(n) {
            let d = rothe_diagram(&w);
            assert!(is_southwest(&d), "w={w}");
            for c in 1..=d.max_col() {
                assert!(columns_inclusion_ordered(&d, c), "w={w} c={c}");
            }
        }
    }
}

/// Deleting the lowest row that ends in column c and permuting columns
/// c, c+1 yields the Rothe diagram of the shortened permutation.
#[test]
fn descent_deletion_swaps_to_the_shorter_rothe_diagram() {
    for n in 2..=5 {
        for w in all_permutations(n) {
            let base = rothe_diagram(&w);
            for c in 1..n {
                if !w.value_swap_decreases(c) {
                    continue;
                }
                let v = w.value_swap(c).unwrap();
                assert_eq!(v.length() + 1, w.length());
                let rows = rows_ending_in(&base, c);
                assert!(!rows.is_empty(), "w={w} c={c}: no row ends in column {c}");
                let deleted = base.without_cell(Cell::new(rows[0], c)).unwrap();
                assert_eq!(
                    column_swap_base(&deleted, c).unwrap(),
                    rothe_diagram(&v),
                    "w={w} c={c}"
                );
            }
        }
    }
}

/// Every diagram in a closure keeps the base's per-column cell counts.
#[test]
fn closures_conserve_column_counts() {
    for n in 1..=5 {
        for w in all_permutations(n) {
            let base = rothe_diagram(&w);
            for t in kd_closure(&base).unwrap() {
                for c in 1..=base.max_col() {
                    assert_eq!(
                        t.column_rows(c).len(),
                        base.column_rows(c).len(),
                        "w={w} c={c}"
                    );
                }
            }
        }
    }
}

/// The k-th lowest cell of column c stays weakly below row c + k - 1.
#[test]
fn closures_respect_the_column_row_bound() {
    for n in 1..=5 {
        for w in all_permutations(n) {
            for t in kd_closure(&rothe_diagram(&w)).unwrap() {
                for c in 1..=t.max_col() {
                    for (k, r) in t.column_rows(c).into_iter().enumerate() {
                        assert!(r <= c + k, "w={w} c={c} k={} r={r}", k + 1);
                    }
                }
            }
        }
    }
}

/// Where all rows meeting column c also meet a column c' > c with nothing
/// in between, every closure member has at least as many cells weakly below
/// any row in column c' as in column c.
#[test]
fn closures_respect_the_two_column_inequality() {
    for n in 1..=5 {
        for w in all_permutations(n) {
            let base = rothe_diagram(&w);
            let closure = kd_closure(&base).unwrap();
            let max_col = base.max_col();
            for c in 1..=max_col {
                let rows_c = base.column_rows(c);
                if rows_c.is_empty() {
                    continue;
                }
                'pair: for cp in c + 1..=max_col {
                    for &r in &rows_c {
                        let cols = base.row_cols(r);
                        if !cols.contains(&cp) || cols.iter().any(|&x| x > c && x < cp) {
                            continue 'pair;
                        }
                    }
                    for t in &closure {
                        let max_row = t.max_row();
                        for r in 1..=max_row {
                            let low = |col: usize| {
                                t.column_rows(col).into_iter().filter(|&x| x <= r).count()
                            };
                            assert!(low(c) <= low(cp), "w={w} c={c} c'={cp} r={r}");
                        }
                    }
                }
            }
        }
    }
}

/// The lowest-then-rightmost cell of any closure member sits in a column
/// where some row of the base ends.
#[test]
fn lowest_rightmost_cell_lands_where_a_base_row_ends() {
    for n in 2..=5 {
        for w in all_permutations(n) {
            let base = rothe_diagram(&w);
            if base.is_empty() {
                continue;
            }
            for t in kd_closure(&base).unwrap() {
                let lowest = t.cells()[0].row;
                let x = t
                    .cells()
                    .iter()
                    .take_while(|cell| cell.row == lowest)
                    .last()
                    .unwrap();
                assert!(
                    !rows_ending_in(&base, x.col).is_empty(),
                    "w={w} x={x}"
                );
            }
        }
    }
}

/// The super-Yamanouchi word matching obeys the two structural bounds: the
/// matched letter never exceeds its target, and descents in the target force
/// increasing match positions.
#[test]
fn matching_bounds_hold_exhaustively() {
    for n in 1..=5 {
        for w in all_permutations(n) {
            let pi = super_yamanouchi(&w);
            for rho in reduced_words(&w).unwrap() {
                let m = match_to_super_yamanouchi(&rho, &pi).unwrap();
                let l = rho.len();
                for i in 1..=l {
                    assert!(
                        rho.at_position(m.position_of(i)) <= pi.at_position(i),
                        "w={w} rho={rho} i={i}"
                    );
                }
                for i in 1..l {
                    if pi.at_position(i + 1) < pi.at_position(i) {
                        assert!(
                            m.position_of(i + 1) > m.position_of(i),
                            "w={w} rho={rho} i={i}"
                        );
                    }
                }
            }
        }
    }
}

/// Weights of closure members of the same base share the total cell count.
#[test]
fn closure_weights_are_consistent() {
    for w in all_permutations(4) {
        let base = rothe_diagram(&w);
        for t in kd_closure(&base).unwrap() {
            let wt = weight(&t);
            assert_eq!(wt.counts().iter().sum::<usize>(), base.len());
        }
    }
}

/// Identity permutations produce empty diagrams and singleton closures.
#[test]
fn identity_edge_cases() {
    for n in 1..=6 {
        let id = Permutation::identity(n);
        let base = rothe_diagram(&id);
        assert!(base.is_empty());
        assert_eq!(kd_closure(&base).unwrap(), vec![Diagram::empty()]);
        assert_eq!(reduced_words(&id).unwrap().len(), 1);
    }
}
