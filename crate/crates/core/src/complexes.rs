//! Coinvariant complexes `C_*(F^n)_{GL_n}`, `D_*(F^n)_{GL_n}` and `Q_* = D_*/C_*`.
//!
//! Degree `l` is spanned by orbits of `l`-tuples of lines; degree 0 is the
//! augmentation term `Z` (absent for `Q`).

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{orbit_label, orbit_label_untagged, OrbitLabel};
use crate::ff::{field, PrimeField};
use crate::homology::{AbelianGroupStructure, ChainComplex, ChainMap};
use crate::int::Int;
use crate::lines::{all_lines, canonical_lines, extension_admissible, general_position, Kind, Line, LineTuple};
use crate::maybe_rayon::*;
use crate::sparse::SparseIntMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ComplexKind {
    C,
    D,
    Q,
}

impl fmt::Display for ComplexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ComplexKind::C => "C",
            ComplexKind::D => "D",
            ComplexKind::Q => "Q",
        };
        f.write_str(s)
    }
}

impl FromStr for ComplexKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "C" | "c" => Ok(ComplexKind::C),
            "D" | "d" => Ok(ComplexKind::D),
            "Q" | "q" => Ok(ComplexKind::Q),
            _ => Err(Error::Invalid(format!("unknown complex kind {s:?}"))),
        }
    }
}

/// Resource limits and enumeration order for a build.
#[derive(Clone, Debug)]
pub struct BuildOptions {
    /// Largest allowed basis in any single degree.
    pub max_basis: usize,
    /// Largest allowed total number of boundary nonzeros.
    pub max_nnz: usize,
    /// Shuffles the enumeration order when set.
    pub order_seed: Option<u64>,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            max_basis: 50_000,
            max_nnz: 10_000_000,
            order_seed: None,
        }
    }
}

pub const MAX_DEGREE: usize = 7;

/// Orbit bases per degree and integer boundaries.
#[derive(Clone, Debug)]
pub struct CoinvariantComplex {
    kind: ComplexKind,
    n: usize,
    q: u32,
    bases: Vec<Vec<Vec<Line>>>,
    index: Vec<HashMap<Vec<Line>, usize>>,
    chain: ChainComplex,
}

/// Canonical orbit reps of admissible `l`-tuples for `l = 0..=max_degree`.
fn enumerate(
    k: &PrimeField,
    n: usize,
    kind: Kind,
    max_degree: usize,
    opts: &BuildOptions,
) -> Result<Vec<Vec<Vec<Line>>>> {
    let mut points = all_lines(k.q(), n)?;
    let mut rng = opts.order_seed.map(ChaCha8Rng::seed_from_u64);
    if let Some(r) = rng.as_mut() {
        points.shuffle(r);
    }
    let mut bases: Vec<Vec<Vec<Line>>> = vec![vec![Vec::new()]];
    for l in 1..=max_degree {
        let prev = &bases[l - 1];
        let found: Vec<Vec<Vec<Line>>> = prev
            .par_iter()
            .map(|rep| {
                points
                    .iter()
                    .filter(|&&p| extension_admissible(k, n, rep, p, kind))
                    .map(|&p| {
                        let mut t = rep.clone();
                        t.push(p);
                        canonical_lines(k, n, &t)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let mut seen: HashMap<Vec<Line>, ()> = HashMap::new();
        let mut basis = Vec::new();
        for t in found.into_iter().flatten() {
            if seen.insert(t.clone(), ()).is_none() {
                basis.push(t);
                if basis.len() > opts.max_basis {
                    return Err(Error::CapExceeded(format!(
                        "degree {l} has more than {} orbits",
                        opts.max_basis
                    )));
                }
            }
        }
        if let Some(r) = rng.as_mut() {
            basis.shuffle(r);
        }
        bases.push(basis);
    }
    Ok(bases)
}

fn index_of(basis: &[Vec<Line>]) -> HashMap<Vec<Line>, usize> {
    basis.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect()
}

/// Signed face sum of a tuple as `(canonical face, sign)` terms.
pub fn face_terms(k: &PrimeField, n: usize, lines: &[Line]) -> Result<Vec<(Vec<Line>, i64)>> {
    (0..lines.len())
        .map(|i| {
            let mut f = lines.to_vec();
            f.remove(i);
            let c = canonical_lines(k, n, &f)?;
            Ok((c, if i % 2 == 0 { 1 } else { -1 }))
        })
        .collect()
}

fn boundaries(
    k: &PrimeField,
    n: usize,
    bases: &[Vec<Vec<Line>>],
    index: &[HashMap<Vec<Line>, usize>],
    opts: &BuildOptions,
) -> Result<Vec<SparseIntMatrix>> {
    let mut out = Vec::new();
    let mut nnz = 0usize;
    for l in 1..bases.len() {
        let cols: Vec<Vec<(usize, Int)>> = bases[l]
            .par_iter()
            .map(|t| {
                Ok(face_terms(k, n, t)?
                    .into_iter()
                    .filter_map(|(f, s)| index[l - 1].get(&f).map(|&r| (r, Int::from(s))))
                    .collect())
            })
            .collect::<Result<Vec<_>>>()?;
        let m = SparseIntMatrix::from_columns(bases[l - 1].len(), cols)?;
        nnz += m.nnz();
        if nnz > opts.max_nnz {
            return Err(Error::CapExceeded(format!("more than {} boundary nonzeros", opts.max_nnz)));
        }
        out.push(m);
    }
    Ok(out)
}

fn check_args(n: usize, max_degree: usize) -> Result<()> {
    if !(1..=4).contains(&n) {
        return Err(Error::Invalid(format!("ambient dimension {n} not in 1..=4")));
    }
    if max_degree > MAX_DEGREE {
        return Err(Error::DegreeOutOfRange(max_degree));
    }
    Ok(())
}

/// Builds the complex through `max_degree`.
pub fn build_complex(kind: ComplexKind, n: usize, q: u32, max_degree: usize, opts: &BuildOptions) -> Result<CoinvariantComplex> {
    check_args(n, max_degree)?;
    let k = field(q)?;
    let gp = match kind {
        ComplexKind::C => Kind::C,
        ComplexKind::D | ComplexKind::Q => Kind::D,
    };
    let mut bases = enumerate(k, n, gp, max_degree, opts)?;
    if kind == ComplexKind::Q {
        for b in bases.iter_mut() {
            b.retain(|t| !general_position(k, n, t, Kind::C));
        }
    }
    let index: Vec<_> = bases.iter().map(|b| index_of(b)).collect();
    let bd = boundaries(k, n, &bases, &index, opts)?;
    let chain = ChainComplex::new(bases.iter().map(|b| b.len()).collect(), bd)?;
    Ok(CoinvariantComplex {
        kind,
        n,
        q,
        bases,
        index,
        chain,
    })
}

impl CoinvariantComplex {
    pub fn kind(&self) -> ComplexKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn max_degree(&self) -> usize {
        self.chain.max_degree()
    }

    pub fn chain(&self) -> &ChainComplex {
        &self.chain
    }

    /// Canonical tuples spanning degree `l`.
    pub fn basis(&self, l: usize) -> &[Vec<Line>] {
        &self.bases[l]
    }

    pub fn dim(&self, l: usize) -> usize {
        self.bases.get(l).map_or(0, |b| b.len())
    }

    /// Position of an arbitrary tuple's orbit in degree `len`.
    pub fn index_of(&self, t: &[Line]) -> Result<Option<usize>> {
        let l = t.len();
        if l >= self.bases.len() {
            return Err(Error::DegreeOutOfRange(l));
        }
        let c = canonical_lines(field(self.q)?, self.n, t)?;
        Ok(self.index[l].get(&c).copied())
    }

    pub fn label(&self, l: usize, i: usize) -> Result<OrbitLabel> {
        let t = LineTuple::new(self.q, self.n, self.bases[l][i].clone())?;
        if self.n == 4 && self.kind != ComplexKind::C {
            orbit_label(&t)
        } else {
            orbit_label_untagged(&t)
        }
    }

    /// `∂_l` with columns indexed by degree-`l` orbits.
    pub fn boundary_matrix(&self, l: usize) -> Result<SparseIntMatrix> {
        if l == 0 || l > self.max_degree() {
            return Err(Error::DegreeOutOfRange(l));
        }
        self.chain.boundary(l)
    }

    pub fn homology(&self, l: usize) -> Result<AbelianGroupStructure> {
        self.chain.homology(l)
    }

    /// Coefficient vector of a formal sum of tuples of one length.
    pub fn chain_vector(&self, terms: &[(Int, Vec<Line>)]) -> Result<Vec<Int>> {
        let l = terms.first().map_or(0, |t| t.1.len());
        let mut v = vec![Int::zero(); self.dim(l)];
        for (c, t) in terms {
            if t.len() != l {
                return Err(Error::Dimension("mixed degrees in a chain".into()));
            }
            let i = self
                .index_of(t)?
                .ok_or_else(|| Error::Invalid(format!("tuple {} is not a basis orbit", fmt_lines(t))))?;
            v[i] += c;
        }
        Ok(v)
    }
}

fn fmt_lines(t: &[Line]) -> String {
    t.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(";")
}

/// `C_* → D_*` on orbits.
pub fn inclusion(c: &CoinvariantComplex, d: &CoinvariantComplex) -> Result<ChainMap> {
    if c.kind != ComplexKind::C || d.kind != ComplexKind::D || c.q != d.q || c.n != d.n {
        return Err(Error::Invalid("inclusion needs C and D over one field and dimension".into()));
    }
    let top = c.max_degree().min(d.max_degree());
    let maps = (0..=top)
        .map(|l| {
            let cols = c.bases[l]
                .iter()
                .map(|t| {
                    let j = d.index[l]
                        .get(t)
                        .copied()
                        .ok_or_else(|| Error::NotAChainMap("C-orbit missing from D".into()))?;
                    Ok(vec![(j, Int::one())])
                })
                .collect::<Result<Vec<_>>>()?;
            SparseIntMatrix::from_columns(d.dim(l), cols)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ChainMap { maps })
}

/// `D_* → Q_*`, killing C-admissible orbits.
pub fn projection(d: &CoinvariantComplex, qx: &CoinvariantComplex) -> Result<ChainMap> {
    if d.kind != ComplexKind::D || qx.kind != ComplexKind::Q || d.q != qx.q || d.n != qx.n {
        return Err(Error::Invalid("projection needs D and Q over one field and dimension".into()));
    }
    let top = d.max_degree().min(qx.max_degree());
    let maps = (0..=top)
        .map(|l| {
            let cols = d.bases[l]
                .iter()
                .map(|t| qx.index[l].get(t).map(|&j| vec![(j, Int::one())]).unwrap_or_default())
                .collect();
            SparseIntMatrix::from_columns(qx.dim(l), cols)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ChainMap { maps })
}

/// Formal integer combination of canonical tuples.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalSum(pub BTreeMap<Vec<Line>, Int>);

impl FormalSum {
    pub fn new() -> Self {
        FormalSum(BTreeMap::new())
    }

    /// Adds `c·[t]` after canonicalizing `t`.
    pub fn add(&mut self, k: &PrimeField, n: usize, c: i64, t: &[Line]) -> Result<()> {
        let key = canonical_lines(k, n, t)?;
        self.add_canonical(key, &Int::from(c));
        Ok(())
    }

    fn add_canonical(&mut self, key: Vec<Line>, c: &Int) {
        match self.0.entry(key) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c.clone());
                }
            }
        }
    }

    pub fn add_sum(&mut self, c: i64, other: &FormalSum) {
        for (t, v) in &other.0 {
            self.add_canonical(t.clone(), &(v * &Int::from(c)));
        }
    }

    /// `∂` of the sum in D-coinvariants.
    pub fn boundary(&self, k: &PrimeField, n: usize) -> Result<FormalSum> {
        let mut out = FormalSum::new();
        for (t, c) in &self.0 {
            for (f, s) in face_terms(k, n, t)? {
                out.add_canonical(f, &(c * &Int::from(s)));
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_degree_bases() {
        let opts = BuildOptions::default();
        let d = build_complex(ComplexKind::D, 4, 5, 4, &opts).unwrap();
        let names: Vec<String> = (0..d.dim(3)).map(|i| d.label(3, i).unwrap().to_string()).collect();
        assert_eq!(names, vec!["w_1", "w_2"]);
        assert_eq!(d.dim(4), 9);
        assert_eq!(d.boundary_matrix(1).unwrap().to_dense().row(0), &[Int::one()]);
        let q = build_complex(ComplexKind::Q, 4, 7, 3, &opts).unwrap();
        assert_eq!(q.dim(3), 1);
        assert_eq!(q.label(3, 0).unwrap().to_string(), "w_2");
    }

    #[test]
    fn square_zero_and_exact_pair() {
        let opts = BuildOptions::default();
        for qq in [3, 5] {
            let c = build_complex(ComplexKind::C, 4, qq, 5, &opts).unwrap();
            let d = build_complex(ComplexKind::D, 4, qq, 5, &opts).unwrap();
            let qx = build_complex(ComplexKind::Q, 4, qq, 5, &opts).unwrap();
            for x in [&c, &d, &qx] {
                assert!(x.chain().square_zero_failures().unwrap().is_empty());
            }
            let inc = inclusion(&c, &d).unwrap();
            let proj = projection(&d, &qx).unwrap();
            inc.check(c.chain(), d.chain()).unwrap();
            proj.check(d.chain(), qx.chain()).unwrap();
            for l in 0..=5 {
                assert_eq!(c.dim(l) + qx.dim(l), d.dim(l));
                assert!(proj.maps[l].mul(&inc.maps[l]).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn caps_refuse_cleanly() {
        let opts = BuildOptions {
            max_basis: 5,
            ..BuildOptions::default()
        };
        assert!(matches!(
            build_complex(ComplexKind::D, 4, 5, 4, &opts),
            Err(Error::CapExceeded(_))
        ));
    }
}
