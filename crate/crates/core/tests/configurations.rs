use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use homforge_core::families::{family_representatives, orbit_label};
use homforge_core::ff::FpMatrix;
use homforge_core::lines::{all_lines, canonical_form, random_gl, Kind, Line, LineTuple};
use homforge_core::stabilizer::{stabilizer, stabilizer_table};

fn random_tuple(q: u32, len: usize, seed: u64) -> LineTuple {
    let lines = all_lines(q, 4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t: Vec<Line> = Vec::new();
    while t.len() < len {
        let l = lines[rng.gen_range(0..lines.len())];
        if !t.contains(&l) {
            t.push(l);
        }
    }
    LineTuple::new(q, 4, t).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_form_is_an_invariant_retraction(q in prop::sample::select(vec![3u32, 5, 7]), len in 1usize..8, seed in any::<u64>()) {
        let t = random_tuple(q, len, seed);
        let (c, g) = canonical_form(&t).unwrap();
        prop_assert_eq!(&t.apply(&g).unwrap(), &c);
        prop_assert_eq!(&canonical_form(&c).unwrap().0, &c);
        let h = random_gl(q, 4, &mut ChaCha8Rng::seed_from_u64(seed ^ 0x5eed));
        prop_assert_eq!(&canonical_form(&t.apply(&h).unwrap()).unwrap().0, &c);
    }

    #[test]
    fn stabilizers_are_conjugation_invariant(q in prop::sample::select(vec![5u32, 7]), len in 3usize..6, seed in any::<u64>()) {
        let t = random_tuple(q, len, seed);
        let s = stabilizer(&t).unwrap();
        prop_assert_eq!(s.levi.iter().map(|f| f.size()).sum::<usize>(), 4);
        let h = random_gl(q, 4, &mut ChaCha8Rng::seed_from_u64(!seed));
        prop_assert_eq!(stabilizer(&t.apply(&h).unwrap()).unwrap(), s);
    }

    #[test]
    fn admissible_tuples_carry_one_family(q in prop::sample::select(vec![5u32, 7]), len in 3usize..6, seed in any::<u64>()) {
        let t = random_tuple(q, len, seed);
        prop_assert!(t.is_general_position(Kind::D));
        let l = orbit_label(&t).unwrap();
        prop_assert!(l.family.is_some());
    }
}

/// Matrices `g` with `g·v ∈ <v>` for every line, by backtracking over columns.
fn count_stabilizer(t: &LineTuple) -> u128 {
    let q = t.q();
    let vecs: Vec<Vec<u32>> = t.lines().iter().map(|l| l.vector()).collect();
    let cols: Vec<Vec<u32>> = (0..q.pow(4))
        .map(|mut x| {
            (0..4)
                .map(|_| {
                    let d = x % q;
                    x /= q;
                    d
                })
                .collect()
        })
        .collect();
    let mut count = 0u128;
    let mut chosen: Vec<usize> = Vec::new();
    // only columns up to the last nonzero coordinate of `v` are needed
    fn fixes(q: u32, cols: &[Vec<u32>], chosen: &[usize], v: &[u32]) -> bool {
        let img: Vec<u32> = (0..4)
            .map(|r| chosen.iter().enumerate().map(|(j, &c)| cols[c][r] * v[j]).sum::<u32>() % q)
            .collect();
        (0..4).all(|a| (0..4).all(|b| (img[a] * v[b]) % q == (img[b] * v[a]) % q))
    }
    fn go(q: u32, cols: &[Vec<u32>], vecs: &[Vec<u32>], chosen: &mut Vec<usize>, count: &mut u128) {
        let k = chosen.len();
        for v in vecs {
            let last = v.iter().rposition(|&x| x != 0).unwrap();
            if last + 1 == k && !fixes(q, cols, chosen, v) {
                return;
            }
        }
        if k == 4 {
            let rows: Vec<Vec<i64>> = (0..4).map(|r| chosen.iter().map(|&c| cols[c][r] as i64).collect()).collect();
            if FpMatrix::from_rows(q, &rows).unwrap().rank() == 4 {
                *count += 1;
            }
            return;
        }
        for c in 0..cols.len() {
            chosen.push(c);
            go(q, cols, vecs, chosen, count);
            chosen.pop();
        }
    }
    go(q, &cols, &vecs, &mut chosen, &mut count);
    count
}

#[test]
fn stabilizer_orders_match_direct_counts_at_three() {
    let reps = family_representatives(3).unwrap();
    assert!(reps.iter().any(|(_, t)| t.rank() == 3));
    for (tag, rep) in reps {
        let s = stabilizer(&rep).unwrap();
        assert_eq!(count_stabilizer(&rep), s.order(3), "{tag}");
    }
}

#[test]
fn levi_blocks_match_the_identification_table() {
    for q in [5, 7] {
        for row in stabilizer_table(q).unwrap() {
            assert!(row.matches, "{} {}", row.tag, row.computed);
        }
    }
}
