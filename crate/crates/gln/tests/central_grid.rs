use loopyang_gln::central::{central_abstract_report, central_report, central_series, gln_algebra, todd_report};

const GRID: [(usize, usize); 4] = [(2, 1), (2, 2), (2, 3), (3, 2)];

#[test]
fn central_and_todd_images_at_order_six() {
    for (n, d) in GRID {
        let alg = gln_algebra(n, 6).unwrap();
        let cs = central_series(&alg).unwrap();
        let mut reps = central_report(&alg, &cs, d).unwrap();
        reps.extend(todd_report(&alg, &cs, d).unwrap());
        assert!(reps.iter().any(|r| r.id == "gln.todd"));
        for r in reps {
            assert!(r.passed(), "{}", r);
        }
    }
}

#[test]
fn abstract_central_identities() {
    for n in [2, 3] {
        let alg = gln_algebra(n, 5).unwrap();
        let cs = central_series(&alg).unwrap();
        for r in central_abstract_report(&alg, &cs) {
            assert!(r.passed(), "{}", r);
        }
    }
}
