use std::collections::HashMap;

use homforge_core::complexes::{build_complex, inclusion, projection, BuildOptions, ComplexKind};
use homforge_core::int::Int;
use homforge_core::snf::snf;
use homforge_core::sparse::IntMatrix;

fn opts(seed: Option<u64>) -> BuildOptions {
    BuildOptions {
        order_seed: seed,
        ..BuildOptions::default()
    }
}

#[test]
fn boundaries_square_to_zero() {
    for q in [3, 5] {
        for kind in [ComplexKind::C, ComplexKind::D, ComplexKind::Q] {
            let top = if q == 3 { 7 } else { 6 };
            let c = build_complex(kind, 4, q, top, &opts(None)).unwrap();
            assert!(c.chain().square_zero_failures().unwrap().is_empty(), "{kind} q={q}");
        }
    }
}

#[test]
fn short_exact_sequence() {
    let q = 5;
    let c = build_complex(ComplexKind::C, 4, q, 6, &opts(None)).unwrap();
    let d = build_complex(ComplexKind::D, 4, q, 6, &opts(None)).unwrap();
    let qx = build_complex(ComplexKind::Q, 4, q, 6, &opts(None)).unwrap();
    let i = inclusion(&c, &d).unwrap();
    let p = projection(&d, &qx).unwrap();
    i.check(c.chain(), d.chain()).unwrap();
    p.check(d.chain(), qx.chain()).unwrap();
    for l in 0..=6 {
        assert_eq!(c.dim(l) + qx.dim(l), d.dim(l), "degree {l}");
        assert!(p.maps[l].mul(&i.maps[l]).unwrap().is_zero());
        assert_eq!(snf(&i.maps[l].to_dense()).rank(), c.dim(l));
        assert_eq!(snf(&p.maps[l].to_dense()).rank(), qx.dim(l));
    }
}

#[test]
fn reordering_gives_permutation_equivalent_boundaries() {
    let a = build_complex(ComplexKind::D, 4, 5, 5, &opts(None)).unwrap();
    let b = build_complex(ComplexKind::D, 4, 5, 5, &opts(Some(99))).unwrap();
    let mut moved = false;
    for l in 0..=5 {
        let perm: Vec<usize> = a.basis(l).iter().map(|t| b.index_of(t).unwrap().unwrap()).collect();
        moved |= perm.iter().enumerate().any(|(i, &j)| i != j);
        if l == 0 {
            continue;
        }
        let prev: HashMap<usize, usize> = a
            .basis(l - 1)
            .iter()
            .enumerate()
            .map(|(i, t)| (i, b.index_of(t).unwrap().unwrap()))
            .collect();
        let (ma, mb) = (a.boundary_matrix(l).unwrap(), b.boundary_matrix(l).unwrap());
        for (r, c, v) in ma.triplets() {
            assert_eq!(mb.get(prev[&r], perm[c]), v, "degree {l}");
        }
        assert_eq!(ma.nnz(), mb.nnz());
        assert_eq!(a.homology(l - 1).unwrap(), b.homology(l - 1).unwrap());
    }
    assert!(moved);
}

fn free_rank(m: &IntMatrix, rows: &[usize], cols: &[usize]) -> usize {
    let sub: Vec<Vec<Int>> = cols.iter().map(|&j| rows.iter().map(|&i| m.get(i, j).clone()).collect()).collect();
    if rows.is_empty() || cols.is_empty() {
        return 0;
    }
    snf(&IntMatrix::from_cols(rows.len(), &sub)).rank()
}

#[test]
fn long_exact_sequence_ranks_at_three() {
    let q = 3;
    let top = 6;
    let c = build_complex(ComplexKind::C, 4, q, top, &opts(None)).unwrap();
    let d = build_complex(ComplexKind::D, 4, q, top, &opts(None)).unwrap();
    let qx = build_complex(ComplexKind::Q, 4, q, top, &opts(None)).unwrap();
    let i = inclusion(&c, &d).unwrap();
    let p = projection(&d, &qx).unwrap();
    let free = |cx: &homforge_core::complexes::CoinvariantComplex, l: usize| -> Vec<usize> {
        let pres = cx.chain().present(l).unwrap();
        (0..pres.ngens()).filter(|&k| pres.orders[k].is_zero()).collect()
    };
    let mut delta_from_q = Vec::new();
    let mut delta_from_c = Vec::new();
    for l in 0..top {
        let (fc, fd, fq) = (free(&c, l), free(&d, l), free(&qx, l));
        let il = free_rank(&i.induced(c.chain(), d.chain(), l).unwrap(), &fd, &fc);
        let pl = free_rank(&p.induced(d.chain(), qx.chain(), l).unwrap(), &fq, &fd);
        // exactness at H_l(D) over Q
        assert_eq!(fd.len() - pl, il, "degree {l}");
        delta_from_q.push(fq.len() - pl);
        delta_from_c.push(fc.len() - il);
    }
    // δ_l : H_l(Q) → H_{l-1}(C)
    for l in 1..top {
        assert_eq!(delta_from_q[l], delta_from_c[l - 1], "connecting map in degree {l}");
    }
    assert_eq!(delta_from_q[0], 0);
}
