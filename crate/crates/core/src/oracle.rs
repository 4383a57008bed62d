//! Orbit counts of line tuples in `F_q^4` by union-find, independent of canonical forms.
//!
//! `GL_4` is transitive on ordered pairs of distinct lines, so orbits of
//! `l`-tuples correspond to orbits of `H = Stab(<e_1>, <e_2>)` on tuples
//! `(<e_1>, <e_2>, x_3, …, x_l)`.

use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::complexes::{build_complex, BuildOptions, ComplexKind};
use crate::error::{Error, Result};
use crate::families::{family_table, orbit_label, FamilyTag};
use crate::ff::FpMatrix;
use crate::lines::{all_lines, Line, LineTuple};
use crate::maybe_rayon::*;

struct UnionFind(Vec<u32>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n as u32).collect())
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.0[x as usize] != x {
            let p = self.0[x as usize];
            self.0[x as usize] = self.0[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra.max(rb) as usize] = ra.min(rb);
        true
    }

    fn classes(&mut self) -> usize {
        (0..self.0.len() as u32).filter(|&x| self.find(x) == x).count()
    }
}

/// Tails `(x_3, …, x_l)` of pairwise distinct lines avoiding `<e_1>, <e_2>`, indexed in base `m`.
struct TailSpace {
    lines: Vec<Line>,
    index: HashMap<Line, u32>,
    free: Vec<u32>,
    len: usize,
}

impl TailSpace {
    fn new(q: u32, len: usize) -> Result<Self> {
        let lines = all_lines(q, 4)?;
        let index: HashMap<Line, u32> = lines.iter().enumerate().map(|(i, l)| (*l, i as u32)).collect();
        let fixed = [index[&Line::unit(0, 4)], index[&Line::unit(1, 4)]];
        let free = (0..lines.len() as u32).filter(|i| !fixed.contains(i)).collect();
        Ok(TailSpace { lines, index, free, len })
    }

    fn size(&self) -> usize {
        let m = self.lines.len();
        m.pow(self.len as u32)
    }

    fn decode(&self, mut code: usize) -> Vec<u32> {
        let m = self.lines.len();
        let mut out = vec![0; self.len];
        for slot in out.iter_mut().rev() {
            *slot = (code % m) as u32;
            code /= m;
        }
        out
    }

    fn encode(&self, tail: &[u32]) -> usize {
        let m = self.lines.len();
        tail.iter().fold(0, |acc, &x| acc * m + x as usize)
    }

    fn valid(&self, tail: &[u32]) -> bool {
        let fixed = |x: u32| !self.free.contains(&x);
        tail.iter().enumerate().all(|(i, &x)| !fixed(x) && !tail[..i].contains(&x))
    }

    fn image(&self, g: &FpMatrix, tail: &[u32]) -> Result<Vec<u32>> {
        tail.iter()
            .map(|&x| Ok(self.index[&self.lines[x as usize].apply(g)?]))
            .collect()
    }
}

fn matrix(q: u32, rows: [[i64; 4]; 4]) -> Result<FpMatrix> {
    FpMatrix::from_rows(q, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
}

/// Generators of `H`: torus, `GL_2` on `<e_3, e_4>`, and transvections `e_j ↦ e_j + e_i`.
fn stabilizer_generators(q: u32) -> Result<Vec<FpMatrix>> {
    let g = crate::ff::field(q)?.generator() as i64;
    let mut out = Vec::new();
    for i in 0..4 {
        let mut d = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]];
        d[i][i] = g;
        out.push(matrix(q, d)?);
    }
    out.push(matrix(q, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])?);
    for (i, j) in [(2, 3), (3, 2), (0, 2), (0, 3), (1, 2), (1, 3)] {
        let mut t = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]];
        t[i][j] = 1;
        out.push(matrix(q, t)?);
    }
    Ok(out)
}

/// Uniform element of `H`.
fn random_stabilizer_element<R: Rng>(q: u32, rng: &mut R) -> Result<FpMatrix> {
    loop {
        let mut rows = [[0i64; 4]; 4];
        rows[0][0] = rng.gen_range(1..q) as i64;
        rows[1][1] = rng.gen_range(1..q) as i64;
        for row in rows.iter_mut() {
            row[2] = rng.gen_range(0..q) as i64;
            row[3] = rng.gen_range(0..q) as i64;
        }
        let m = matrix(q, rows)?;
        if m.det()? != 0 {
            return Ok(m);
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleCount {
    pub q: u32,
    pub len: usize,
    /// Tuples `(e_1, e_2, …)` enumerated.
    pub tuples: usize,
    /// Orbits under the generating set of `H`.
    pub orbits: usize,
    /// Orbits after merging along random elements of `H` only.
    pub random_orbits: usize,
    pub merge_samples: usize,
    /// Orbits of the family table with this length.
    pub families: usize,
    /// Each union-find orbit carries a distinct family tag.
    pub bijective: bool,
    /// One tuple per union-find orbit, with its family.
    #[serde(skip)]
    pub representatives: Vec<(Option<FamilyTag>, LineTuple)>,
}

const MAX_TAILS: usize = 5_000_000;

/// Exhaustive orbit count of `len`-tuples (`3 ≤ len ≤ 5`) with a randomized cross-check.
pub fn orbit_oracle(q: u32, len: usize, min_samples: usize, seed: u64) -> Result<OracleCount> {
    if !(3..=5).contains(&len) {
        return Err(Error::Invalid(format!("oracle covers lengths 3..=5, got {len}")));
    }
    let space = TailSpace::new(q, len - 2)?;
    if space.size() > MAX_TAILS {
        return Err(Error::CapExceeded(format!("{} tails exceed the oracle cap", space.size())));
    }
    let codes: Vec<usize> = (0..space.size()).filter(|&c| space.valid(&space.decode(c))).collect();
    let pos: HashMap<usize, u32> = codes.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect();
    let edges = |g: &FpMatrix| -> Result<Vec<(u32, u32)>> {
        codes
            .par_iter()
            .enumerate()
            .map(|(i, &c)| Ok((i as u32, pos[&space.encode(&space.image(g, &space.decode(c))?)])))
            .collect()
    };

    let mut uf = UnionFind::new(codes.len());
    for g in stabilizer_generators(q)? {
        for (a, b) in edges(&g)? {
            uf.union(a, b);
        }
    }
    let orbits = uf.classes();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ruf = UnionFind::new(codes.len());
    let mut merge_samples = 0;
    while merge_samples < min_samples.max(1) || ruf.classes() > orbits && merge_samples < 100 * min_samples.max(codes.len()) {
        let g = random_stabilizer_element(q, &mut rng)?;
        for (a, b) in edges(&g)? {
            ruf.union(a, b);
        }
        merge_samples += codes.len();
    }
    let random_orbits = ruf.classes();

    let table = family_table(q)?;
    let families = table.of_length(len).count();
    let mut tags = HashSet::new();
    let mut bijective = true;
    let mut representatives = Vec::new();
    for i in 0..codes.len() as u32 {
        if uf.find(i) != i {
            continue;
        }
        let mut lines = vec![Line::unit(0, 4), Line::unit(1, 4)];
        lines.extend(space.decode(codes[i as usize]).iter().map(|&x| space.lines[x as usize]));
        let t = LineTuple::new(q, 4, lines)?;
        let family = orbit_label(&t).ok().and_then(|l| l.family);
        bijective &= family.clone().is_some_and(|f| tags.insert(f));
        representatives.push((family, t));
    }
    bijective &= tags.len() == families;
    Ok(OracleCount {
        q,
        len,
        tuples: codes.len(),
        orbits,
        random_orbits,
        merge_samples,
        families,
        bijective,
        representatives,
    })
}

/// Coverage of the family table by the enumerated `D`-orbits of lengths 3–5.
#[derive(Clone, Debug, Serialize)]
pub struct Completeness {
    pub q: u32,
    pub len: usize,
    pub orbits: usize,
    pub tagged: usize,
    pub families: usize,
    /// Random admissible tuples whose label lookup failed.
    pub sample_failures: usize,
    pub samples: usize,
}

pub fn classification_completeness(q: u32, samples: usize, seed: u64) -> Result<Vec<Completeness>> {
    let d = build_complex(ComplexKind::D, 4, q, 5, &BuildOptions::default())?;
    let table = family_table(q)?;
    let lines = all_lines(q, 4)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (3..=5)
        .map(|len| {
            let tagged = d.basis(len).iter().filter(|t| table.lookup(t).is_some()).count();
            let mut sample_failures = 0;
            for _ in 0..samples {
                let mut t: Vec<Line> = Vec::with_capacity(len);
                while t.len() < len {
                    let l = lines[rng.gen_range(0..lines.len())];
                    if !t.contains(&l) {
                        t.push(l);
                    }
                }
                if orbit_label(&LineTuple::new(q, 4, t)?).is_err() {
                    sample_failures += 1;
                }
            }
            Ok(Completeness {
                q,
                len,
                orbits: d.dim(len),
                tagged,
                families: table.of_length(len).count(),
                sample_failures,
                samples,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_matches_families_at_three() {
        for len in 3..=4 {
            let r = orbit_oracle(3, len, 1_000, 1).unwrap();
            assert_eq!(r.orbits, r.families, "len {len}");
            assert_eq!(r.random_orbits, r.orbits);
            assert!(r.bijective);
        }
    }

    #[test]
    fn families_cover_f5() {
        for c in classification_completeness(5, 200, 2).unwrap() {
            assert_eq!(c.orbits, c.tagged);
            assert_eq!(c.orbits, c.families);
            assert_eq!(c.sample_failures, 0);
        }
    }
}
