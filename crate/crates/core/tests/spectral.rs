use homforge_core::complexes::BuildOptions;
use homforge_core::spectral::h1::{d1_squared_sweep, verify_h1_row, SignConvention};
use homforge_core::spectral::page::q0_row;
use homforge_core::spectral::step3::{step3_checks, witness_checks, x_subgroup};

#[test]
fn step3_identities_at_seven_and_eleven() {
    for q in [7, 11] {
        let checks = step3_checks(q).unwrap();
        for c in &checks {
            match c.identity {
                "X" | "Q-Q'" => assert!(!c.holds, "{} {:?} at q={q}", c.identity, c.params),
                _ => assert!(c.holds, "{} {:?} at q={q}", c.identity, c.params),
            }
        }
        let x = checks.iter().filter(|c| c.identity == "X corrected").count();
        assert_eq!(x, ((q - 2) * (q - 3) * (q - 4)) as usize);
    }
}

#[test]
fn x_classes_bound_in_d() {
    for q in [5, 7] {
        assert!(witness_checks(q).unwrap().iter().all(|w| w.holds), "q={q}");
        let x = x_subgroup(q, &BuildOptions::default()).unwrap();
        assert_eq!(x.bounding_in_d, x.triples);
        assert!(x.quotient.is_trivial());
    }
}

#[test]
fn h1_row_square_and_conventions() {
    for q in [5, 7] {
        for p in 4..=5 {
            let sweep = d1_squared_sweep(q, p, &BuildOptions::default()).unwrap();
            assert!(sweep.iter().all(|s| s.nonzero == 0), "q={q} p={p}");
        }
        let rep = verify_h1_row(q).unwrap();
        assert!(rep.matching_conventions.is_empty());
        let misses: Vec<&str> = rep
            .checks
            .iter()
            .filter(|c| c.convention == SignConvention::Alternating && !c.matches)
            .map(|c| c.formula.as_str())
            .collect();
        for f in &misses {
            assert!(["v_3^{1,3} row", "v_3^{3,4} row", "u_5 row", "u_6 row"].contains(f), "unexpected mismatch in {f}");
        }
    }
}

#[test]
fn bottom_row_vanishes_at_seven() {
    for n in [3, 4] {
        let row = q0_row(n, 7, &BuildOptions::default()).unwrap();
        assert!(row.deviations().is_empty(), "n={n}");
    }
    let row = q0_row(2, 7, &BuildOptions::default()).unwrap();
    let (cell, pb) = row.pre_bloch.unwrap();
    assert_eq!(cell, pb);
    assert_eq!(pb.to_string(), "Z/8");
}
