use loopyang_gln::relations::relations_check;
use loopyang_gln::Side;

const GRID: [(usize, usize); 4] = [(2, 1), (2, 2), (2, 3), (3, 2)];

#[test]
fn yangian_relations_on_grid() {
    for (n, d) in GRID {
        for r in relations_check(Side::Y, n, d, 3, 3).unwrap() {
            assert!(r.passed(), "{}", r);
        }
    }
}

#[test]
fn loop_relations_on_grid() {
    for (n, d) in GRID {
        for r in relations_check(Side::U, n, d, 3, 3).unwrap() {
            assert!(r.passed(), "{}", r);
        }
    }
}
