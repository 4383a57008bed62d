//! Homology of bounded integer chain complexes.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::int::Int;
use crate::snf::{invariant_factors, snf};
use crate::sparse::{IntMatrix, SparseIntMatrix};

/// `Z^rank ⊕ Z/d_1 ⊕ … ⊕ Z/d_k` with `d_1 | … | d_k`, each `d_i ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AbelianGroupStructure {
    pub rank: usize,
    pub torsion: Vec<Int>,
}

impl AbelianGroupStructure {
    pub fn trivial() -> Self {
        AbelianGroupStructure {
            rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Structure of `Z^n / (column span of m)`.
    pub fn cokernel(m: &SparseIntMatrix) -> Self {
        let d = invariant_factors(m);
        AbelianGroupStructure {
            rank: m.rows() - d.len(),
            torsion: d.into_iter().filter(|x| !x.is_one()).collect(),
        }
    }

    /// From arbitrary cyclic orders (0 for `Z`), normalized to a divisibility chain.
    pub fn from_cyclic_orders(orders: &[Int]) -> Self {
        let rank = orders.iter().filter(|o| o.is_zero()).count();
        let finite: Vec<Int> = orders.iter().filter(|o| !o.is_zero()).cloned().collect();
        let mut m = IntMatrix::zeros(finite.len(), finite.len());
        for (i, o) in finite.iter().enumerate() {
            m.set(i, i, o.clone());
        }
        let torsion = crate::snf::dense_invariant_factors(&m)
            .into_iter()
            .filter(|x| !x.is_one())
            .collect();
        AbelianGroupStructure { rank, torsion }
    }
}

impl fmt::Display for AbelianGroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

/// Chain complex `C_0 ← C_1 ← … ← C_max` of free abelian groups.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    dims: Vec<usize>,
    /// `boundaries[l - 1]` is `∂_l : C_l → C_{l-1}`.
    boundaries: Vec<SparseIntMatrix>,
}

impl ChainComplex {
    pub fn new(dims: Vec<usize>, boundaries: Vec<SparseIntMatrix>) -> Result<Self> {
        if dims.is_empty() || boundaries.len() + 1 != dims.len() {
            return Err(Error::Dimension("need one boundary per positive degree".into()));
        }
        for (l, d) in boundaries.iter().enumerate() {
            if d.rows() != dims[l] || d.cols() != dims[l + 1] {
                return Err(Error::Dimension(format!(
                    "boundary {} is {}x{}, expected {}x{}",
                    l + 1,
                    d.rows(),
                    d.cols(),
                    dims[l],
                    dims[l + 1]
                )));
            }
        }
        Ok(ChainComplex { dims, boundaries })
    }

    pub fn max_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dim(&self, l: usize) -> usize {
        self.dims.get(l).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `∂_l`; for `l = 0` the zero map to the zero group.
    pub fn boundary(&self, l: usize) -> Result<SparseIntMatrix> {
        if l == 0 {
            return Ok(SparseIntMatrix::zeros(0, self.dims[0]));
        }
        self.boundaries
            .get(l - 1)
            .cloned()
            .ok_or(Error::DegreeOutOfRange(l))
    }

    pub fn boundary_ref(&self, l: usize) -> Option<&SparseIntMatrix> {
        if l == 0 {
            None
        } else {
            self.boundaries.get(l - 1)
        }
    }

    /// Checks `∂_{l-1}∂_l = 0` in every degree.
    pub fn square_zero_failures(&self) -> Result<Vec<usize>> {
        let mut bad = Vec::new();
        for l in 2..=self.max_degree() {
            if !self.boundaries[l - 2].mul(&self.boundaries[l - 1])?.is_zero() {
                bad.push(l);
            }
        }
        Ok(bad)
    }

    /// `H_l` as rank plus invariant factors.
    pub fn homology(&self, l: usize) -> Result<AbelianGroupStructure> {
        if l >= self.max_degree() {
            return Err(Error::DegreeOutOfRange(l));
        }
        let r_in = match self.boundary_ref(l) {
            Some(d) => invariant_factors(d).len(),
            None => 0,
        };
        let out = invariant_factors(&self.boundaries[l]);
        let rank = self.dims[l] - r_in - out.len();
        Ok(AbelianGroupStructure {
            rank,
            torsion: out.into_iter().filter(|d| !d.is_one()).collect(),
        })
    }

    /// `H_l` with explicit cycle representatives.
    pub fn present(&self, l: usize) -> Result<HomologyPresentation> {
        if l >= self.max_degree() {
            return Err(Error::DegreeOutOfRange(l));
        }
        HomologyPresentation::new(&self.boundary(l)?, &self.boundaries[l])
    }
}

/// Homology in one degree with generators and a coordinate map on cycles.
#[derive(Clone, Debug)]
pub struct HomologyPresentation {
    pub structure: AbelianGroupStructure,
    /// Cyclic order of each generator, `0` for free ones.
    pub orders: Vec<Int>,
    /// Cycle representatives in the chain basis.
    pub generators: Vec<Vec<Int>>,
    proj: IntMatrix,
    d_in: SparseIntMatrix,
    d_out: SparseIntMatrix,
}

impl HomologyPresentation {
    /// `ker(d_in) / im(d_out)`.
    pub fn new(d_in: &SparseIntMatrix, d_out: &SparseIntMatrix) -> Result<Self> {
        let n = d_out.rows();
        if d_in.cols() != n {
            return Err(Error::Dimension("incoming and outgoing boundaries disagree".into()));
        }
        let s1 = snf(&d_in.to_dense());
        let r = s1.rank();
        let vinv_r = s1.v_inv.rows_from(r);
        let m = vinv_r.mul(&d_out.to_dense())?;
        let s2 = snf(&m);
        let k = n - r;
        let proj_all = s2.u.mul(&vinv_r)?;
        let mut orders = Vec::new();
        let mut generators = Vec::new();
        let mut proj = IntMatrix::zeros(0, n);
        let mut rows = Vec::new();
        for i in 0..k {
            let order = if i < s2.rank() { s2.diag[i].clone() } else { Int::zero() };
            if order.is_one() {
                continue;
            }
            // K · U2^{-1} e_i
            let w = s2.u_inv.column(i);
            let mut z = vec![Int::zero(); n];
            for (t, wt) in w.iter().enumerate() {
                if wt.is_zero() {
                    continue;
                }
                for (row, zr) in z.iter_mut().enumerate() {
                    let kv = s1.v.get(row, r + t);
                    if !kv.is_zero() {
                        *zr += &(kv * wt);
                    }
                }
            }
            generators.push(z);
            orders.push(order);
            rows.push(proj_all.row(i).to_vec());
        }
        if !rows.is_empty() {
            proj = IntMatrix::from_cols(n, &rows).transpose();
        }
        let structure = AbelianGroupStructure::from_cyclic_orders(&orders);
        Ok(HomologyPresentation {
            structure,
            orders,
            generators,
            proj,
            d_in: d_in.clone(),
            d_out: d_out.clone(),
        })
    }

    pub fn ngens(&self) -> usize {
        self.orders.len()
    }

    /// Coordinates of the class of a cycle, torsion entries reduced.
    pub fn coordinates(&self, z: &[Int]) -> Result<Vec<Int>> {
        if z.len() != self.d_out.rows() {
            return Err(Error::Dimension("chain has the wrong length".into()));
        }
        if self.d_in.mul_vec(z).iter().any(|x| !x.is_zero()) {
            return Err(Error::NotACycle);
        }
        let c = self.proj.mul_vec(z);
        Ok(c.into_iter()
            .zip(&self.orders)
            .map(|(x, o)| if o.is_zero() { x } else { x.rem_euclid(o) })
            .collect())
    }

    /// Whether a cycle is a boundary.
    pub fn is_boundary(&self, z: &[Int]) -> Result<bool> {
        Ok(self.coordinates(z)?.iter().all(|x| x.is_zero()))
    }
}

/// Matrix of `f_*` on homology generators: column `j` holds the target coordinates of `f(gen_j)`.
pub fn induced_map(src: &HomologyPresentation, tgt: &HomologyPresentation, f: &SparseIntMatrix) -> Result<IntMatrix> {
    let cols = src
        .generators
        .iter()
        .map(|g| {
            tgt.coordinates(&f.mul_vec(g)).map_err(|e| match e {
                Error::NotACycle => Error::NotAChainMap("image of a cycle is not a cycle".into()),
                e => e,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntMatrix::from_cols(tgt.ngens(), &cols))
}

/// Degreewise maps `f_l : C_l → C'_l`.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub maps: Vec<SparseIntMatrix>,
}

impl ChainMap {
    pub fn identity(c: &ChainComplex) -> Self {
        ChainMap {
            maps: c.dims().iter().map(|&d| SparseIntMatrix::identity(d)).collect(),
        }
    }

    /// Verifies `∂' f_l = f_{l-1} ∂` wherever both sides are defined.
    pub fn check(&self, src: &ChainComplex, tgt: &ChainComplex) -> Result<()> {
        for l in 1..self.maps.len() {
            let (Some(d), Some(dt)) = (src.boundary_ref(l), tgt.boundary_ref(l)) else {
                continue;
            };
            let lhs = dt.mul(&self.maps[l])?;
            let rhs = self.maps[l - 1].mul(d)?;
            if lhs != rhs {
                return Err(Error::NotAChainMap(format!("square fails in degree {l}")));
            }
        }
        Ok(())
    }

    /// Induced map on `H_l` after checking the chain-map condition.
    pub fn induced(&self, src: &ChainComplex, tgt: &ChainComplex, l: usize) -> Result<IntMatrix> {
        self.check(src, tgt)?;
        let f = self.maps.get(l).ok_or(Error::DegreeOutOfRange(l))?;
        induced_map(&src.present(l)?, &tgt.present(l)?, f)
    }

    pub fn compose(&self, after: &ChainMap) -> Result<ChainMap> {
        let maps = self
            .maps
            .iter()
            .zip(&after.maps)
            .map(|(f, g)| g.mul(f))
            .collect::<Result<Vec<_>>>()?;
        Ok(ChainMap { maps })
    }
}

/// Some integer `x` with `a·x = b`, if one exists.
pub fn solve_integer(a: &SparseIntMatrix, b: &[Int]) -> Result<Option<Vec<Int>>> {
    if b.len() != a.rows() {
        return Err(Error::Dimension("right-hand side has the wrong length".into()));
    }
    let s = snf(&a.to_dense());
    let c = s.u.mul_vec(b);
    let mut y = vec![Int::zero(); a.cols()];
    for (i, ci) in c.iter().enumerate() {
        if i < s.rank() {
            let (q, r) = ci.div_rem(&s.diag[i]);
            if !r.is_zero() {
                return Ok(None);
            }
            y[i] = q;
        } else if !ci.is_zero() {
            return Ok(None);
        }
    }
    Ok(Some(s.v.mul_vec(&y)))
}
