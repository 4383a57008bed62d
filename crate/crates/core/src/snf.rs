//! Smith normal form over the integers.

use crate::int::Int;
use crate::sparse::{IntMatrix, SparseIntMatrix};

/// `u·m·v = diag(d_1, …, d_r, 0, …)` with `d_1 | d_2 | …`, all `d_i > 0`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub diag: Vec<Int>,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }
}

struct Work {
    a: IntMatrix,
    t: Option<[IntMatrix; 4]>,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some([u, ui, _, _]) = &mut self.t {
            u.swap_rows(i, j);
            ui.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some([_, _, v, vi]) = &mut self.t {
            v.swap_cols(i, j);
            vi.swap_rows(i, j);
        }
    }

    /// `row_dst += c·row_src`
    fn add_row(&mut self, dst: usize, src: usize, c: &Int) {
        self.a.add_row(dst, src, c);
        if let Some([u, ui, _, _]) = &mut self.t {
            u.add_row(dst, src, c);
            ui.add_col(src, dst, &-c);
        }
    }

    /// `col_dst += c·col_src`
    fn add_col(&mut self, dst: usize, src: usize, c: &Int) {
        self.a.add_col(dst, src, c);
        if let Some([_, _, v, vi]) = &mut self.t {
            v.add_col(dst, src, c);
            vi.add_row(src, dst, &-c);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        if let Some([u, ui, _, _]) = &mut self.t {
            u.negate_row(i);
            ui.negate_col(i);
        }
    }
}

/// Smallest nonzero entry of the trailing block, preferring units.
fn min_entry(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, Int)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            if x.is_unit() {
                return Some((i, j));
            }
            let ax = x.abs();
            if best.as_ref().map_or(true, |b| ax < b.2) {
                best = Some((i, j, ax));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

fn run(m: &IntMatrix, transforms: bool) -> (Vec<Int>, Option<[IntMatrix; 4]>) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        a: m.clone(),
        t: transforms.then(|| {
            [
                IntMatrix::identity(rows),
                IntMatrix::identity(rows),
                IntMatrix::identity(cols),
                IntMatrix::identity(cols),
            ]
        }),
    };
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_entry(&w.a, t) else {
            break;
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if w.a.get(i, t).is_zero() {
                    continue;
                }
                let (q, r) = w.a.get(i, t).div_rem(w.a.get(t, t));
                w.add_row(i, t, &-q);
                if !r.is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if w.a.get(t, j).is_zero() {
                    continue;
                }
                let (q, r) = w.a.get(t, j).div_rem(w.a.get(t, t));
                w.add_col(j, t, &-q);
                if !r.is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // move the smallest entry of row/column t to the pivot
                let mut best = (t, t, w.a.get(t, t).abs());
                for i in t + 1..rows {
                    let x = w.a.get(i, t);
                    if !x.is_zero() && x.abs() < best.2 {
                        best = (i, t, x.abs());
                    }
                }
                for j in t + 1..cols {
                    let x = w.a.get(t, j);
                    if !x.is_zero() && x.abs() < best.2 {
                        best = (t, j, x.abs());
                    }
                }
                w.swap_rows(t, best.0);
                w.swap_cols(t, best.1);
                continue;
            }
            let p = w.a.get(t, t).clone();
            let bad = if p.is_unit() {
                None
            } else {
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !p.divides(w.a.get(i, j))))
            };
            match bad {
                Some(i) => w.add_row(t, i, &Int::one()),
                None => break,
            }
        }
        if w.a.get(t, t).signum() < 0 {
            w.negate_row(t);
        }
        diag.push(w.a.get(t, t).clone());
    }
    (diag, w.t)
}

/// Full Smith form with transforms and their inverses.
pub fn snf(m: &IntMatrix) -> Snf {
    let (diag, t) = run(m, true);
    let [u, u_inv, v, v_inv] = t.expect("transforms requested");
    Snf {
        diag,
        u,
        u_inv,
        v,
        v_inv,
    }
}

pub fn snf_sparse(m: &SparseIntMatrix) -> Snf {
    snf(&m.to_dense())
}

/// Nonzero invariant factors of a dense matrix.
pub fn dense_invariant_factors(m: &IntMatrix) -> Vec<Int> {
    run(m, false).0
}

/// Nonzero invariant factors, eliminating unit pivots sparsely before a dense finish.
pub fn invariant_factors(m: &SparseIntMatrix) -> Vec<Int> {
    let mut rows: Vec<Vec<(usize, Int)>> = vec![Vec::new(); m.rows()];
    for (i, j, v) in m.triplets() {
        rows[i].push((j, v));
    }
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); m.cols()];
    for (i, r) in rows.iter().enumerate() {
        for (j, _) in r {
            col_rows[*j].push(i);
        }
    }
    let mut row_alive = vec![true; m.rows()];
    let mut col_alive = vec![true; m.cols()];
    let mut units = 0usize;
    let entry = |row: &Vec<(usize, Int)>, c: usize| -> Option<Int> {
        row.binary_search_by_key(&c, |e| e.0).ok().map(|p| row[p].1.clone())
    };
    loop {
        let mut order: Vec<usize> = (0..m.cols()).filter(|&c| col_alive[c]).collect();
        order.sort_by_key(|&c| col_rows[c].len());
        let mut progress = false;
        for c in order {
            if !col_alive[c] {
                continue;
            }
            col_rows[c].sort_unstable();
            col_rows[c].dedup();
            let live: Vec<usize> = col_rows[c]
                .iter()
                .copied()
                .filter(|&r| row_alive[r] && entry(&rows[r], c).is_some())
                .collect();
            col_rows[c] = live.clone();
            if live.is_empty() {
                col_alive[c] = false;
                continue;
            }
            let Some(&p) = live
                .iter()
                .filter(|&&r| entry(&rows[r], c).is_some_and(|v| v.is_unit()))
                .min_by_key(|&&r| rows[r].len())
            else {
                continue;
            };
            let pv = entry(&rows[p], c).expect("pivot");
            let prow = rows[p].clone();
            for &r in &live {
                if r == p {
                    continue;
                }
                let f = entry(&rows[r], c).expect("live row");
                // row_r -= f/pv · row_p, exact since pv = ±1
                let scale = -(&f * &pv);
                let (merged, fresh) = axpy(&rows[r], &prow, &scale);
                rows[r] = merged;
                for j in fresh {
                    col_rows[j].push(r);
                }
            }
            row_alive[p] = false;
            col_alive[c] = false;
            units += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    let live_rows: Vec<usize> = (0..m.rows()).filter(|&r| row_alive[r] && !rows[r].is_empty()).collect();
    let live_cols: Vec<usize> = (0..m.cols()).filter(|&c| col_alive[c]).collect();
    let mut col_pos = vec![usize::MAX; m.cols()];
    for (k, &c) in live_cols.iter().enumerate() {
        col_pos[c] = k;
    }
    let mut rest = IntMatrix::zeros(live_rows.len(), live_cols.len());
    for (k, &r) in live_rows.iter().enumerate() {
        for (c, v) in &rows[r] {
            if col_pos[*c] != usize::MAX {
                rest.set(k, col_pos[*c], v.clone());
            }
        }
    }
    let mut out = vec![Int::one(); units];
    out.extend(dense_invariant_factors(&rest));
    out
}

/// `a + s·b` on sorted sparse rows; also returns columns that became nonzero.
fn axpy(a: &[(usize, Int)], b: &[(usize, Int)], s: &Int) -> (Vec<(usize, Int)>, Vec<usize>) {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut fresh = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, s * &b[j].1));
            fresh.push(b[j].0);
            j += 1;
        } else {
            let v = &a[i].1 + &(s * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    (out, fresh)
}

/// Rank over the rationals.
pub fn rank(m: &SparseIntMatrix) -> usize {
    invariant_factors(m).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn examples() {
        assert_eq!(snf(&IntMatrix::identity(3)).diag, ints(&[1, 1, 1]));
        assert_eq!(snf(&IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]])).diag, ints(&[2, 4]));
        assert!(snf(&IntMatrix::zeros(3, 2)).diag.is_empty());
        let sp = SparseIntMatrix::from_dense(&IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]));
        assert_eq!(invariant_factors(&sp), ints(&[2, 4]));
    }

    fn check(m: &IntMatrix) {
        let s = snf(m);
        let d = s.u.mul(m).unwrap().mul(&s.v).unwrap();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let want = if i == j && i < s.diag.len() { s.diag[i].clone() } else { Int::zero() };
                assert_eq!(d.get(i, j), &want);
            }
        }
        for w in s.diag.windows(2) {
            assert!(w[0].divides(&w[1]));
        }
        assert_eq!(s.u.mul(&s.u_inv).unwrap(), IntMatrix::identity(m.rows()));
        assert_eq!(s.v.mul(&s.v_inv).unwrap(), IntMatrix::identity(m.cols()));
        let sp = SparseIntMatrix::from_dense(m);
        assert_eq!(invariant_factors(&sp), s.diag);
    }

    proptest! {
        #[test]
        fn transforms_are_exact(rows in 1usize..6, cols in 1usize..6, seed in prop::collection::vec(-9i64..10, 36)) {
            let data: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * 6 + j]).collect()).collect();
            check(&IntMatrix::from_rows(&data));
        }

        #[test]
        fn low_rank_products(k in 1usize..3, seed in prop::collection::vec(-4i64..5, 40)) {
            let a: Vec<Vec<i64>> = (0..5).map(|i| (0..k).map(|j| seed[i * 4 + j]).collect()).collect();
            let b: Vec<Vec<i64>> = (0..k).map(|i| (0..4).map(|j| seed[20 + i * 4 + j]).collect()).collect();
            let m = IntMatrix::from_rows(&a).mul(&IntMatrix::from_rows(&b)).unwrap();
            check(&m);
        }
    }
}
