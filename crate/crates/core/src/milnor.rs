//! Milnor K-groups and the pre-Bloch group of a prime field from raw presentations.

use serde::Serialize;

use crate::abelian::{a_matrix, cycle_c, torus, BarChain, GroupHomology, HClass};
use crate::error::{Error, Result};
use crate::ff::{self, PrimeField};
use crate::homology::AbelianGroupStructure;
use crate::int::Int;
use crate::maybe_rayon::*;
use crate::sparse::SparseIntMatrix;

/// `(F_q^*)^{⊗n}` modulo adjacent Steinberg relations.
#[derive(Clone, Debug, Serialize)]
pub struct MilnorPresentation {
    pub q: u32,
    pub n: usize,
    pub generators: usize,
    pub relations: usize,
    pub structure: AbelianGroupStructure,
}

fn word_index(f: &PrimeField, w: &[u32]) -> usize {
    let m = f.unit_order() as usize;
    w.iter().fold(0, |acc, &a| acc * m + f.log(a) as usize)
}

fn words(f: &PrimeField, n: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w: Vec<u32>| {
                (0..f.unit_order() as i64).map(move |k| {
                    let mut v = w.clone();
                    v.push(f.exp(k));
                    v
                })
            })
            .collect();
    }
    out
}

pub fn milnor_group(q: u32, n: usize, max_basis: usize) -> Result<MilnorPresentation> {
    let f = ff::field(q)?;
    if !(1..=3).contains(&n) {
        return Err(Error::DegreeOutOfRange(n));
    }
    let gens = (f.unit_order() as usize).pow(n as u32);
    if gens > max_basis {
        return Err(Error::CapExceeded(format!("{gens} tensor words exceed the cap of {max_basis}")));
    }
    let units: Vec<u32> = (1..q).collect();
    let rest = words(f, n - 1);
    let mut cols: Vec<Vec<(usize, Int)>> = (0..n)
        .into_par_iter()
        .flat_map(|slot| {
            let mut cols = Vec::new();
            for r in &rest {
                for &a in &units {
                    for &b in &units {
                        let word = |x: u32| {
                            let mut w = r.clone();
                            w.insert(slot, x);
                            word_index(f, &w)
                        };
                        let col = vec![
                            (word(f.mul(a, b)), Int::one()),
                            (word(a), -Int::one()),
                            (word(b), -Int::one()),
                        ];
                        cols.push(col);
                    }
                }
            }
            cols
        })
        .collect();
    if n >= 2 {
        let rest = words(f, n - 2);
        for slot in 0..n - 1 {
            for r in &rest {
                for a in f.nontrivial_units() {
                    let mut w = r.clone();
                    w.insert(slot, a);
                    w.insert(slot + 1, f.sub(1, a));
                    cols.push(vec![(word_index(f, &w), Int::one())]);
                }
            }
        }
    }
    let rel = SparseIntMatrix::from_columns(gens, cols)?;
    Ok(MilnorPresentation {
        q,
        n,
        generators: gens,
        relations: rel.cols(),
        structure: AbelianGroupStructure::cokernel(&rel),
    })
}

/// Free abelian group on `[x]`, `x ∈ F^*∖{1}`, modulo five-term relations.
#[derive(Clone, Debug, Serialize)]
pub struct PreBlochPresentation {
    pub q: u32,
    pub generators: Vec<u32>,
    pub relations: usize,
    pub discarded: usize,
    pub structure: AbelianGroupStructure,
    /// `ψ([x]) = x ⊗ (x−1)` in `F^*⊗F^* ≅ Z/(q−1)`.
    pub psi: Vec<i64>,
    /// Relation instances whose image leaves the symmetrizer subgroup.
    pub descent_failures: Vec<(u32, u32)>,
    /// The same for `[x] ↦ x ⊗ (1−x)`.
    pub variant_failures: Vec<(u32, u32)>,
}

/// Arguments of the five-term relation at `(x, y)` with their signs.
pub fn five_term(f: &PrimeField, x: u32, y: u32) -> [(i64, u32); 5] {
    let xi = f.inv(x);
    let yi = f.inv(y);
    [
        (1, x),
        (-1, y),
        (1, f.div(y, x)),
        (-1, f.div(f.sub(1, xi), f.sub(1, yi))),
        (1, f.div(f.sub(1, x), f.sub(1, y))),
    ]
}

pub fn pre_bloch(q: u32) -> Result<PreBlochPresentation> {
    if q < 5 {
        return Err(Error::BadModulus(q));
    }
    let f = ff::field(q)?;
    let m = f.unit_order() as i64;
    let gens: Vec<u32> = f.nontrivial_units().collect();
    let idx = |x: u32| (x - 2) as usize;
    let psi: Vec<i64> = gens
        .iter()
        .map(|&x| (f.log(x) as i64 * f.log(f.sub(x, 1)) as i64).rem_euclid(m))
        .collect();
    let variant: Vec<i64> = gens
        .iter()
        .map(|&x| (f.log(x) as i64 * f.log(f.sub(1, x)) as i64).rem_euclid(m))
        .collect();
    let mut cols = Vec::new();
    let mut discarded = 0;
    let mut descent_failures = Vec::new();
    let mut variant_failures = Vec::new();
    for &x in &gens {
        for &y in &gens {
            if x == y {
                continue;
            }
            let terms = five_term(f, x, y);
            if terms.iter().any(|&(_, t)| t == 0 || t == 1) {
                discarded += 1;
                continue;
            }
            let mut col: Vec<(usize, Int)> = Vec::new();
            let mut image = 0i64;
            let mut image_variant = 0i64;
            for (s, t) in terms {
                col.push((idx(t), Int::from(s)));
                image += s * psi[idx(t)];
                image_variant += s * variant[idx(t)];
            }
            // a⊗b + b⊗a generates 2·Z/(q−1)
            if image.rem_euclid(m) % 2 != 0 {
                descent_failures.push((x, y));
            }
            if image_variant.rem_euclid(m) % 2 != 0 {
                variant_failures.push((x, y));
            }
            cols.push(col);
        }
    }
    let rel = SparseIntMatrix::from_columns(gens.len(), cols)?;
    Ok(PreBlochPresentation {
        q,
        relations: rel.cols(),
        structure: AbelianGroupStructure::cokernel(&rel),
        generators: gens,
        discarded,
        psi,
        descent_failures,
        variant_failures,
    })
}

/// `c(A_{1,n}, …, A_{n,n})` over the diagonal torus.
pub fn bracket_chain(q: u32, args: &[u32]) -> Result<BarChain> {
    let f = ff::field(q)?;
    let n = args.len();
    if !(1..=4).contains(&n) {
        return Err(Error::DegreeOutOfRange(n));
    }
    if args.iter().any(|&a| a == 0 || a >= q) {
        return Err(Error::Invalid("bracket arguments must be units".into()));
    }
    let g = torus(q, n);
    let mats: Vec<Vec<i64>> = args
        .iter()
        .enumerate()
        .map(|(i, &a)| g.reduce(a_matrix(i + 1, n, f.log(a) as i64)))
        .collect();
    Ok(cycle_c(&g, &mats))
}

/// `[a_1, …, a_n]` in `H_n(T_n)`; `h` must be the homology of `torus(q, n)`.
pub fn bracket_class(h: &GroupHomology, q: u32, args: &[u32]) -> Result<HClass> {
    if *h.group() != torus(q, args.len()) {
        return Err(Error::Invalid("homology is not of the matching torus".into()));
    }
    h.bar_to_small(&bracket_chain(q, args)?)
}

/// Torus image of the symbol `{a_1, …, a_n}`.
pub fn nu_symbol(h: &GroupHomology, q: u32, args: &[u32]) -> Result<HClass> {
    bracket_class(h, q, args)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn milnor_examples() {
        let k1 = milnor_group(7, 1, 50_000).unwrap();
        assert_eq!(k1.structure.to_string(), "Z/6");
        for q in [5, 7] {
            assert!(milnor_group(q, 2, 50_000).unwrap().structure.is_trivial());
        }
        assert!(matches!(milnor_group(7, 3, 100), Err(Error::CapExceeded(_))));
    }

    #[test]
    fn pre_bloch_descent_pattern() {
        // x⊗(x−1) and x⊗(1−x) differ on a relation by (x/y)⊗(−1)
        for q in [5, 7, 11, 13] {
            let f = ff::field(q).unwrap();
            let p = pre_bloch(q).unwrap();
            assert!(p.variant_failures.is_empty());
            assert_eq!(p.relations + p.discarded, (q as usize - 2) * (q as usize - 3));
            let minus_one_square = q % 4 == 1;
            for x in f.nontrivial_units() {
                for y in f.nontrivial_units().filter(|&y| y != x) {
                    let nonsquare = f.log(f.div(x, y)) % 2 == 1;
                    let fails = p.descent_failures.contains(&(x, y));
                    assert_eq!(fails, nonsquare && !minus_one_square, "q={q} ({x},{y})");
                }
            }
        }
    }

    #[test]
    fn degree_one_symbol() {
        let h = GroupHomology::new(&torus(5, 1), 1).unwrap();
        let g = bracket_class(&h, 5, &[2]).unwrap();
        for a in 1..5u32 {
            let l = ff::field(5).unwrap().log(a) as i64;
            assert_eq!(bracket_class(&h, 5, &[a]).unwrap(), h.scale(l, &g).unwrap());
        }
    }
}
