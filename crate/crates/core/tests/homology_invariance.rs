use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use homforge_core::complexes::{build_complex, BuildOptions, ComplexKind};
use homforge_core::homology::ChainComplex;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn homology_ignores_basis_order(seed in any::<u64>(), kind in prop::sample::select(vec![ComplexKind::C, ComplexKind::D, ComplexKind::Q])) {
        let cx = build_complex(kind, 4, 5, 5, &BuildOptions::default()).unwrap();
        let ch = cx.chain();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let perms: Vec<Vec<usize>> = ch
            .dims()
            .iter()
            .map(|&d| {
                let mut p: Vec<usize> = (0..d).collect();
                p.shuffle(&mut rng);
                p
            })
            .collect();
        let bds = (1..ch.dims().len())
            .map(|l| ch.boundary(l).unwrap().permute(&perms[l - 1], &perms[l]))
            .collect();
        let permuted = ChainComplex::new(ch.dims().to_vec(), bds).unwrap();
        prop_assert!(permuted.square_zero_failures().unwrap().is_empty());
        for l in 0..5 {
            prop_assert_eq!(permuted.homology(l).unwrap(), ch.homology(l).unwrap());
        }
    }
}
