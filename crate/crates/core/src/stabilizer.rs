//! Block structure of line-configuration stabilizers in `GL_n`.

use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::families::{family_representatives, FamilyTag};
use crate::ff::{field, FpMatrix};
use crate::lines::{rank_of, Kind, LineTuple};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LeviFactor {
    /// Scalars `c·I_k` on a `k`-dimensional subspace.
    Scalar(usize),
    /// Full `GL_m` on the quotient by the span of the lines.
    Gl(usize),
}

impl LeviFactor {
    pub fn size(self) -> usize {
        match self {
            LeviFactor::Scalar(k) | LeviFactor::Gl(k) => k,
        }
    }
}

impl fmt::Display for LeviFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LeviFactor::Scalar(1) => write!(f, "F*"),
            LeviFactor::Scalar(k) => write!(f, "F*I_{k}"),
            LeviFactor::Gl(m) => write!(f, "GL_{m}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct StabilizerDescription {
    pub levi: Vec<LeviFactor>,
    pub unipotent_dim: usize,
    /// Line indices sharing an eigenvalue, ordered by first index.
    pub tie_classes: Vec<Vec<usize>>,
    /// Dimension of the matrix algebra `{X : X v_i ∈ <v_i>}`.
    pub dim_s: usize,
    /// Rank of the configuration.
    pub rank: usize,
}

impl StabilizerDescription {
    pub fn levi_string(&self) -> String {
        let parts: Vec<String> = self.levi.iter().map(|f| f.to_string()).collect();
        parts.join(" × ")
    }

    /// Levi factors up to `GL_1 ≅ F*`, sorted.
    pub fn block_multiset(&self) -> Vec<LeviFactor> {
        let mut v: Vec<LeviFactor> = self
            .levi
            .iter()
            .map(|&f| if f == LeviFactor::Gl(1) { LeviFactor::Scalar(1) } else { f })
            .collect();
        v.sort();
        v
    }

    /// Order of the stabilizer in `GL_n(F_q)`.
    pub fn order(&self, q: u32) -> u128 {
        let q = q as u128;
        let mut ord = 1u128;
        for f in &self.levi {
            match *f {
                LeviFactor::Scalar(_) => ord *= q - 1,
                LeviFactor::Gl(m) => ord *= gl_order(q, m),
            }
        }
        ord * q.pow(self.unipotent_dim as u32)
    }
}

impl fmt::Display for StabilizerDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.levi_string())?;
        if self.unipotent_dim > 0 {
            write!(f, " ⋉ U^{}", self.unipotent_dim)?;
        }
        Ok(())
    }
}

/// `|GL_m(F_q)|`.
pub fn gl_order(q: u128, m: usize) -> u128 {
    let qm = q.pow(m as u32);
    (0..m).map(|i| qm - q.pow(i as u32)).product()
}

/// Stabilizer structure read off the linear space `S = {X : X v_i ∧ v_i = 0}`.
pub fn stabilizer(t: &LineTuple) -> Result<StabilizerDescription> {
    if !t.is_general_position(Kind::D) {
        return Err(Error::Degenerate("stabilizer needs pairwise distinct lines".into()));
    }
    let q = t.q();
    let k = field(q)?;
    let n = t.n();
    let vars = n * n;
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for l in t.lines() {
        let v = l.vector();
        for a in 0..n {
            for b in a + 1..n {
                // (Xv)_a v_b - (Xv)_b v_a
                let mut row = vec![0i64; vars];
                for c in 0..n {
                    row[a * n + c] += (v[c] * v[b]) as i64;
                    row[b * n + c] -= (v[c] * v[a]) as i64;
                }
                rows.push(row);
            }
        }
    }
    let basis = if rows.is_empty() {
        (0..vars)
            .map(|i| {
                let mut x = vec![0u32; vars];
                x[i] = 1;
                x
            })
            .collect()
    } else {
        FpMatrix::from_rows(q, &rows)?.nullspace()
    };
    let dim_s = basis.len();
    // eigenvalue of each line as a functional on S
    let functionals: Vec<Vec<u32>> = t
        .lines()
        .iter()
        .map(|l| {
            let v = l.vector();
            let p = l.pivot();
            basis
                .iter()
                .map(|x| (0..n).fold(0, |s, c| k.add(s, k.mul(x[p * n + c], v[c]))))
                .collect()
        })
        .collect();
    let mut tie_classes: Vec<Vec<usize>> = Vec::new();
    for (i, f) in functionals.iter().enumerate() {
        match tie_classes.iter_mut().find(|c| functionals[c[0]] == *f) {
            Some(c) => c.push(i),
            None => tie_classes.push(vec![i]),
        }
    }
    let rank = t.rank();
    let mut levi: Vec<LeviFactor> = tie_classes
        .iter()
        .map(|c| {
            let ls: Vec<_> = c.iter().map(|&i| t.lines()[i]).collect();
            LeviFactor::Scalar(rank_of(k, &ls))
        })
        .collect();
    if rank < n {
        levi.push(LeviFactor::Gl(n - rank));
    }
    let levi_dim = tie_classes.len() + (n - rank) * (n - rank);
    let unipotent_dim = dim_s
        .checked_sub(levi_dim)
        .ok_or_else(|| Error::Invalid("stabilizer smaller than its Levi part".into()))?;
    Ok(StabilizerDescription {
        levi,
        unipotent_dim,
        tie_classes,
        dim_s,
        rank,
    })
}

/// Levi blocks of each family's stabilizer used for the Shapiro identifications, `GL_1` read as `F*`.
pub fn shapiro_blocks(family: &str) -> Option<Vec<LeviFactor>> {
    use LeviFactor::{Gl, Scalar};
    let blocks = match family {
        "w_1" | "u_1" => vec![Scalar(1); 4],
        "w_2" | "u_7" | "v_22" => vec![Scalar(2), Gl(2)],
        "u_2" | "v_2" | "v_4" | "v_5" | "v_6" | "v_8" | "v_10" | "v_11" | "v_12" | "v_13" | "v_14" | "v_15"
        | "v_17" | "v_19" | "v_20" => vec![Scalar(1), Scalar(3)],
        "u_3" | "u_4" | "u_5" | "u_6" | "v_3" | "v_7" | "v_9" | "v_16" | "v_18" | "v_21" => {
            vec![Scalar(1), Scalar(1), Scalar(2)]
        }
        "v_1" => vec![Scalar(4)],
        _ => return None,
    };
    let mut blocks = blocks;
    blocks.sort();
    Some(blocks)
}

/// One family representative against its expected block multiset.
#[derive(Clone, Debug, Serialize)]
pub struct StabilizerRow {
    pub tag: FamilyTag,
    pub computed: StabilizerDescription,
    pub expected: Option<Vec<LeviFactor>>,
    pub matches: bool,
}

/// Stabilizers of every family representative over `F_q`.
pub fn stabilizer_table(q: u32) -> Result<Vec<StabilizerRow>> {
    family_representatives(q)?
        .into_iter()
        .map(|(tag, rep)| {
            let computed = stabilizer(&rep)?;
            let expected = shapiro_blocks(&tag.family());
            let matches = expected.as_ref().is_some_and(|e| *e == computed.block_multiset());
            Ok(StabilizerRow { tag, computed, expected, matches })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lines::random_gl;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn t(q: u32, rows: &[&[i64]]) -> LineTuple {
        let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        LineTuple::from_rows(q, &rows).unwrap()
    }

    #[test]
    fn small_examples() {
        let w1 = stabilizer(&t(5, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]])).unwrap();
        assert_eq!(w1.levi_string(), "F* × F* × F* × GL_1");
        assert_eq!(w1.unipotent_dim, 3);
        let w2 = stabilizer(&t(5, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[1, 1, 0, 0]])).unwrap();
        assert_eq!(w2.levi_string(), "F*I_2 × GL_2");
        let u4 = stabilizer(&t(5, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 1, 1, 0]])).unwrap();
        assert_eq!(u4.levi_string(), "F* × F*I_2 × GL_1");
    }

    #[test]
    fn blocks_fill_the_space_and_are_conjugation_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for q in [5, 7] {
            for (tag, rep) in family_representatives(q).unwrap() {
                let s = stabilizer(&rep).unwrap();
                assert_eq!(s.levi.iter().map(|f| f.size()).sum::<usize>(), 4, "{tag}");
                assert_eq!(s.unipotent_dim, s.rank * (4 - s.rank), "{tag}");
                let g = random_gl(q, 4, &mut rng);
                assert_eq!(stabilizer(&rep.apply(&g).unwrap()).unwrap(), s, "{tag}");
            }
        }
    }

    #[test]
    fn table_matches_identifications() {
        for q in [5, 7] {
            let rows = stabilizer_table(q).unwrap();
            assert_eq!(rows.len(), family_representatives(q).unwrap().len());
            for r in rows {
                assert!(r.matches, "{} {:?}", r.tag, r.computed.block_multiset());
            }
        }
    }
}
