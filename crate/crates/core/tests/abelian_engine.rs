use proptest::prelude::*;

use homforge_core::abelian::{
    brute_force_homology, cycle_c, kunneth_orders, permutation_hom, shuffle_product, BarChain, FinAbGroup, GroupHomology, Hom,
};
use homforge_core::homology::AbelianGroupStructure;
use homforge_core::int::Int;

fn grp(o: &[u64]) -> FinAbGroup {
    FinAbGroup::new(o.to_vec()).unwrap()
}

fn elem(g: &FinAbGroup, raw: &[i64]) -> Vec<i64> {
    g.reduce(raw[..g.ngens()].to_vec())
}

fn cube() -> (FinAbGroup, GroupHomology) {
    let g = grp(&[4, 4, 4]);
    let h = GroupHomology::new(&g, 3).unwrap();
    (g, h)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn c_classes_are_multilinear(deg in 1usize..4, raw in prop::collection::vec(0i64..4, 15)) {
        let (g, h) = cube();
        let x = elem(&g, &raw[0..3]);
        let y = elem(&g, &raw[3..6]);
        let rest: Vec<Vec<i64>> = (0..deg - 1).map(|i| elem(&g, &raw[6 + 3 * i..9 + 3 * i])).collect();
        let with = |first: Vec<i64>| {
            let mut v = vec![first];
            v.extend(rest.iter().cloned());
            h.bar_to_small(&cycle_c(&g, &v)).unwrap()
        };
        let lhs = with(g.add(&x, &y));
        let rhs = h.add(&with(x), &with(y)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bar_to_small_is_natural(raw in prop::collection::vec(0i64..4, 15), imgs in prop::collection::vec(0i64..4, 6)) {
        let (g, h) = cube();
        let t = grp(&[4, 4]);
        let ht = GroupHomology::new(&t, 3).unwrap();
        let f = Hom::new(&g, &t, imgs.chunks(2).map(|c| c.to_vec()).collect()).unwrap();
        let els: Vec<Vec<i64>> = raw.chunks(3).take(3).map(|c| elem(&g, c)).collect();
        for n in 1..=3 {
            let ch = cycle_c(&g, &els[..n]);
            let x = h.bar_to_small(&ch).unwrap();
            prop_assert_eq!(ht.bar_to_small(&ch.map(&f)).unwrap(), h.induced(&f, &ht, &x).unwrap());
        }
        for i in 0..h.presentation(2).unwrap().ngens() {
            let x = h.generator(2, i).unwrap();
            let z = h.small_to_bar(&x).unwrap();
            prop_assert_eq!(ht.bar_to_small(&z.map(&f)).unwrap(), h.induced(&f, &ht, &x).unwrap());
        }
    }

    #[test]
    fn boundaries_map_to_zero(deg in 1usize..4, raw in prop::collection::vec(0i64..4, 24), coef in prop::collection::vec(-3i64..4, 2)) {
        let (g, h) = cube();
        let mut ch = BarChain::new(deg + 1);
        for (k, c) in coef.iter().enumerate() {
            let t: Vec<Vec<i64>> = (0..=deg).map(|i| elem(&g, &raw[12 * k + 3 * i..12 * k + 3 * i + 3])).collect();
            ch.add_term(&Int::from(*c), t);
        }
        prop_assert!(h.bar_to_small(&ch.boundary(&g)).unwrap().is_zero());
    }
}

#[test]
fn c_cycles_are_cycles_on_every_triple() {
    let g = grp(&[4, 4, 4]);
    let els = g.elements().unwrap();
    for a in &els {
        for b in &els {
            for c in &els {
                assert!(cycle_c(&g, &[a.clone(), b.clone(), c.clone()]).boundary(&g).is_zero());
            }
        }
    }
}

#[test]
fn every_class_has_a_bar_cycle() {
    for o in [&[2u64][..], &[2, 2], &[2, 2, 2], &[4, 4], &[4, 2]] {
        let g = grp(o);
        let h = GroupHomology::new(&g, 4).unwrap();
        for n in 1..=4 {
            for i in 0..h.presentation(n).unwrap().ngens() {
                let x = h.generator(n, i).unwrap();
                let z = h.small_to_bar(&x).unwrap();
                assert!(z.boundary(&g).is_zero(), "{o:?} degree {n}");
                assert_eq!(h.bar_to_small(&z).unwrap(), x, "{o:?} degree {n}");
            }
        }
    }
}

#[test]
fn structures_match_kunneth_and_brute_force() {
    for o in [&[2u64][..], &[2, 2], &[2, 2, 2], &[4, 4], &[4, 2]] {
        let g = grp(o);
        let h = GroupHomology::new(&g, 4).unwrap();
        for n in 0..=4 {
            let want = AbelianGroupStructure::from_cyclic_orders(&kunneth_orders(&g, n));
            assert_eq!(h.structure(n).unwrap(), want, "{o:?} degree {n}");
        }
    }
    let v4 = grp(&[2, 2]);
    let h = GroupHomology::new(&v4, 4).unwrap();
    for (n, s) in brute_force_homology(&v4, 4).unwrap().iter().enumerate().skip(1) {
        assert_eq!(*s, h.structure(n).unwrap(), "(Z/2)^2 degree {n}");
    }
    let e8 = grp(&[2, 2, 2]);
    let h = GroupHomology::new(&e8, 3).unwrap();
    for (n, s) in brute_force_homology(&e8, 3).unwrap().iter().enumerate().skip(1) {
        assert_eq!(*s, h.structure(n).unwrap(), "(Z/2)^3 degree {n}");
    }
    assert_eq!(GroupHomology::new(&grp(&[4, 4]), 2).unwrap().structure(2).unwrap().to_string(), "Z/4");
}

#[test]
fn induced_maps_are_functorial() {
    let g = grp(&[4, 2]);
    let h = GroupHomology::new(&g, 3).unwrap();
    let f = Hom::new(&g, &g, vec![vec![1, 1], vec![2, 0]]).unwrap();
    let k = Hom::new(&g, &g, vec![vec![3, 0], vec![0, 1]]).unwrap();
    let fk = f.then(&k).unwrap();
    for n in 1..=3 {
        for i in 0..h.presentation(n).unwrap().ngens() {
            let x = h.generator(n, i).unwrap();
            assert_eq!(h.induced(&Hom::identity(&g), &h, &x).unwrap(), x);
            let two_steps = h.induced(&k, &h, &h.induced(&f, &h, &x).unwrap()).unwrap();
            assert_eq!(h.induced(&fk, &h, &x).unwrap(), two_steps);
        }
    }
    let inv = Hom::new(&g, &g, vec![vec![3, 0], vec![0, 1]]).unwrap();
    let x = h.bar_to_small(&cycle_c(&g, &[vec![1, 1]])).unwrap();
    assert!(h.add(&x, &h.induced(&inv, &h, &x).unwrap()).unwrap().is_zero());
}

#[test]
fn alpha_permutes_torus_coordinates() {
    // (a, b, b, c) ↦ (b, b, a, c) on the diagonal torus of GL_4(F_5)
    let t = grp(&[4, 4, 4, 4]);
    let h = GroupHomology::new(&t, 1).unwrap();
    let alpha = permutation_hom(&t, &[2, 0, 1, 3]).unwrap();
    assert_eq!(alpha.apply(&[1, 2, 2, 3]), vec![2, 2, 1, 3]);
    let m = h.induced_matrix(&alpha, &h, 1).unwrap();
    for col in &m {
        assert_eq!(col.iter().filter(|v| v.is_one()).count(), 1);
        assert_eq!(col.iter().filter(|v| !v.is_zero()).count(), 1);
    }
    for x in [[1, 2, 2, 3], [0, 1, 1, 0], [3, 0, 0, 2]] {
        let cx = h.bar_to_small(&cycle_c(&t, &[x.to_vec()])).unwrap();
        let want = h.bar_to_small(&cycle_c(&t, &[alpha.apply(&x)])).unwrap();
        assert_eq!(h.induced(&alpha, &h, &cx).unwrap(), want);
    }
}

#[test]
fn cross_product_is_graded_commutative() {
    let a = grp(&[4]);
    let ab = a.product(&a);
    let ha = GroupHomology::new(&a, 4).unwrap();
    let hab = GroupHomology::new(&ab, 4).unwrap();
    let swap = permutation_hom(&ab, &[1, 0]).unwrap();
    for p in 1..=2 {
        for r in 1..=2 {
            for i in 0..ha.presentation(p).unwrap().ngens() {
                for j in 0..ha.presentation(r).unwrap().ngens() {
                    let x = ha.generator(p, i).unwrap();
                    let y = ha.generator(r, j).unwrap();
                    let xy = shuffle_product(&ha, &x, &ha, &y, &hab).unwrap();
                    let yx = shuffle_product(&ha, &y, &ha, &x, &hab).unwrap();
                    let sign = if p * r % 2 == 0 { 1 } else { -1 };
                    assert_eq!(hab.induced(&swap, &hab, &xy).unwrap(), hab.scale(sign, &yx).unwrap(), "({p},{r})");
                }
            }
        }
    }
}
