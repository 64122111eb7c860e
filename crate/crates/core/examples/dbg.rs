use kohnert::colswap::*;
use kohnert::diagrams::*;
use kohnert::perm::*;

fn main() {
    for u in all_permutations(5) {
        let rothe = rothe_diagram(&u);
        for c in 1..u.n() {
            let (base, kind) = if u.value_swap_decreases(c) {
                let r_star = (1..=rothe.max_row())
                    .find(|&r| rothe.rightmost_in_row(r) == Some(c))
                    .unwrap();
                (rothe.without_cell(Cell::new(r_star, c)).unwrap(), "deleted")
            } else {
                (rothe.clone(), "rothe")
            };
            let swapped = column_swap_base(&base, c).unwrap();
            for t in kd_closure(&base).unwrap() {
                match column_swap_kohnert(&base, &t, c) {
                    Ok(img) => {
                        match column_swap_kohnert(&swapped, &img, c) {
                            Ok(back) if back == t => {}
                            Ok(_) => println!("BAD ROUNDTRIP u={u} c={c} {kind} t={:?}", t.cells()),
                            Err(e) => println!("BACK ERR u={u} c={c} {kind} t={:?} img={:?}: {e}", t.cells(), img.cells()),
                        }
                    }
                    Err(e) => {
                        println!("FWD ERR u={u} c={c} {kind} base={:?} t={:?}: {e}", base.cells(), t.cells());
                        let d = find_derivation(&base, &t).unwrap();
                        println!("  moves: {:?}", d.moves);
                    }
                }
            }
        }
    }
    println!("done");
}
