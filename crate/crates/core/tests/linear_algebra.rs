use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use homforge_core::ff::{field, Fp, FpMatrix};
use homforge_core::lines::random_gl;

fn matrix(q: u32, rows: usize, cols: usize, entries: &[i64]) -> FpMatrix {
    let rows: Vec<Vec<i64>> = (0..rows).map(|i| entries[i * cols..(i + 1) * cols].to_vec()).collect();
    FpMatrix::from_rows(q, &rows).unwrap()
}

fn prime() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![3u32, 5, 7, 11, 13])
}

proptest! {
    #[test]
    fn field_axioms(q in prime(), a in 0i64..13, b in 0i64..13, c in 0i64..13) {
        let (a, b, c) = (Fp::new(a, q).unwrap(), Fp::new(b, q).unwrap(), Fp::new(c, q).unwrap());
        prop_assert_eq!(a.add(b).unwrap(), b.add(a).unwrap());
        prop_assert_eq!(a.mul(b.add(c).unwrap()).unwrap(), a.mul(b).unwrap().add(a.mul(c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(b).unwrap().mul(c).unwrap(), a.mul(b.mul(c).unwrap()).unwrap());
        prop_assert!(a.add(a.neg()).unwrap().is_zero());
        if !a.is_zero() {
            prop_assert_eq!(a.mul(a.inv().unwrap()).unwrap().value(), 1);
        }
    }

    #[test]
    fn rref_is_idempotent(q in prime(), r in 1usize..6, c in 1usize..6, entries in prop::collection::vec(0i64..13, 36)) {
        let m = matrix(q, r, c, &entries);
        let (rank, e, _) = m.rref();
        let (rank2, e2, _) = e.rref();
        prop_assert_eq!(rank, rank2);
        prop_assert_eq!(e, e2);
    }

    #[test]
    fn rank_is_invariant_under_left_multiplication(q in prime(), r in 1usize..6, c in 1usize..6, entries in prop::collection::vec(0i64..13, 36), seed in any::<u64>()) {
        let m = matrix(q, r, c, &entries);
        let g = random_gl(q, r, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(g.mul(&m).unwrap().rank(), m.rank());
    }

    #[test]
    fn solve_returns_solutions(q in prime(), entries in prop::collection::vec(0i64..13, 16), x in prop::collection::vec(0u32..13, 4)) {
        let m = matrix(q, 4, 4, &entries);
        let x: Vec<u32> = x.iter().map(|v| v % q).collect();
        let b = m.mul_vec(&x);
        let y = m.solve(&b).unwrap();
        prop_assert_eq!(m.mul_vec(&y), b);
    }
}

#[test]
fn discrete_logs_invert_exponentials() {
    for q in [3, 5, 7, 11, 13] {
        let f = field(q).unwrap();
        for a in 1..q {
            assert_eq!(f.exp(f.log(a) as i64), a);
        }
    }
}
