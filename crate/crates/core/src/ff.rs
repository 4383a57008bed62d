//! Prime-field arithmetic and dense linear algebra over `F_q`.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Primes accepted as field moduli.
pub const SUPPORTED_PRIMES: [u32; 5] = [3, 5, 7, 11, 13];

pub fn is_prime(q: u32) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

fn check_modulus(q: u32) -> Result<()> {
    if q >= 3 && q < 256 && is_prime(q) {
        Ok(())
    } else {
        Err(Error::BadModulus(q))
    }
}

/// An element of `F_q` carrying its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp {
    value: u32,
    modulus: u32,
}

impl Fp {
    pub fn new(value: i64, modulus: u32) -> Result<Self> {
        check_modulus(modulus)?;
        Ok(Fp {
            value: value.rem_euclid(modulus as i64) as u32,
            modulus,
        })
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn same(self, other: Fp) -> Result<u32> {
        if self.modulus == other.modulus {
            Ok(self.modulus)
        } else {
            Err(Error::ModulusMismatch(self.modulus, other.modulus))
        }
    }

    pub fn add(self, other: Fp) -> Result<Fp> {
        let q = self.same(other)?;
        Ok(Fp {
            value: (self.value + other.value) % q,
            modulus: q,
        })
    }

    pub fn sub(self, other: Fp) -> Result<Fp> {
        let q = self.same(other)?;
        Ok(Fp {
            value: (self.value + q - other.value) % q,
            modulus: q,
        })
    }

    pub fn mul(self, other: Fp) -> Result<Fp> {
        let q = self.same(other)?;
        Ok(Fp {
            value: (self.value * other.value) % q,
            modulus: q,
        })
    }

    pub fn neg(self) -> Fp {
        Fp {
            value: (self.modulus - self.value) % self.modulus,
            modulus: self.modulus,
        }
    }

    pub fn pow(self, mut e: u64) -> Fp {
        let q = self.modulus;
        let mut base = self.value;
        let mut acc = 1 % q;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % q;
            }
            base = base * base % q;
            e >>= 1;
        }
        Fp {
            value: acc,
            modulus: q,
        }
    }

    pub fn inv(self) -> Result<Fp> {
        if self.value == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(self.modulus as u64 - 2))
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Lookup tables for fast arithmetic in a fixed `F_q`.
#[derive(Clone, Debug)]
pub struct PrimeField {
    q: u32,
    inv: Vec<u32>,
    log: Vec<u32>,
    exp: Vec<u32>,
    generator: u32,
}

impl PrimeField {
    pub fn new(q: u32) -> Result<Self> {
        check_modulus(q)?;
        let inv = (0..q)
            .map(|a| if a == 0 { 0 } else { Fp { value: a, modulus: q }.pow(q as u64 - 2).value })
            .collect();
        let generator = (2..q)
            .find(|&g| {
                let mut x = 1u32;
                (1..q - 1).all(|_| {
                    x = x * g % q;
                    x != 1
                })
            })
            .unwrap_or(1);
        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for k in 0..q - 1 {
            exp.push(x);
            log[x as usize] = k;
            x = x * generator % q;
        }
        Ok(PrimeField {
            q,
            inv,
            log,
            exp,
            generator,
        })
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Order of the multiplicative group.
    #[inline]
    pub fn unit_order(&self) -> u32 {
        self.q - 1
    }

    pub fn generator(&self) -> u32 {
        self.generator
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        a * b % self.q
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    /// Inverse of a nonzero element; zero maps to zero.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    #[inline]
    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    /// Discrete logarithm to the base of the fixed generator.
    #[inline]
    pub fn log(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        self.log[a as usize]
    }

    #[inline]
    pub fn exp(&self, k: i64) -> u32 {
        self.exp[k.rem_euclid(self.q as i64 - 1) as usize]
    }

    pub fn elem(&self, v: i64) -> u32 {
        v.rem_euclid(self.q as i64) as u32
    }

    /// `F_q^* \ {1}` in increasing order.
    pub fn nontrivial_units(&self) -> impl Iterator<Item = u32> {
        2..self.q
    }
}

/// Shared tables for `q`, built once per process.
pub fn field(q: u32) -> Result<&'static PrimeField> {
    static FIELDS: OnceLock<Vec<Option<PrimeField>>> = OnceLock::new();
    check_modulus(q)?;
    let all = FIELDS.get_or_init(|| (0..256).map(|p| PrimeField::new(p).ok()).collect());
    Ok(all[q as usize].as_ref().expect("checked modulus"))
}

/// Dense row-major matrix over `F_q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    q: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(q: u32, rows: usize, cols: usize) -> Self {
        FpMatrix {
            q,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(q: u32, n: usize) -> Self {
        let mut m = Self::zeros(q, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % q;
        }
        m
    }

    pub fn from_rows(q: u32, rows: &[Vec<i64>]) -> Result<Self> {
        check_modulus(q)?;
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&v| v.rem_euclid(q as i64) as u32))
            .collect();
        Ok(FpMatrix {
            q,
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_elements(rows: &[Vec<Fp>]) -> Result<Self> {
        let q = rows
            .iter()
            .flatten()
            .next()
            .map(|x| x.modulus())
            .ok_or_else(|| Error::Dimension("empty matrix has no modulus".into()))?;
        if let Some(bad) = rows.iter().flatten().find(|x| x.modulus() != q) {
            return Err(Error::ModulusMismatch(q, bad.modulus()));
        }
        let as_int: Vec<Vec<i64>> = rows
            .iter()
            .map(|r| r.iter().map(|x| x.value() as i64).collect())
            .collect();
        Self::from_rows(q, &as_int)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.q;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.q, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.q != other.q {
            return Err(Error::ModulusMismatch(self.q, other.q));
        }
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let q = self.q as u64;
        let mut out = Self::zeros(self.q, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut s = 0u64;
                for k in 0..self.cols {
                    s += self.get(i, k) as u64 * other.get(k, j) as u64;
                }
                out.data[i * other.cols + j] = (s % q) as u32;
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        let q = self.q as u64;
        (0..self.rows)
            .map(|i| {
                let s: u64 = self
                    .row(i)
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| a as u64 * b as u64)
                    .sum();
                (s % q) as u32
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// Reduced row echelon form.
    ///
    /// Returns `(rank, echelon, transform)` with `transform * self == echelon`.
    pub fn rref(&self) -> (usize, FpMatrix, FpMatrix) {
        let q = self.q;
        let mut e = self.clone();
        let mut t = FpMatrix::identity(q, self.rows);
        let inv = |a: u32| Fp { value: a, modulus: q }.pow(q as u64 - 2).value;
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(p) = (rank..self.rows).find(|&i| e.get(i, col) != 0) else {
                continue;
            };
            e.swap_rows(rank, p);
            t.swap_rows(rank, p);
            let s = inv(e.get(rank, col));
            for j in 0..e.cols {
                e.data[rank * e.cols + j] = e.get(rank, j) * s % q;
            }
            for j in 0..t.cols {
                t.data[rank * t.cols + j] = t.get(rank, j) * s % q;
            }
            for i in 0..self.rows {
                let f = e.get(i, col);
                if i != rank && f != 0 {
                    for j in 0..e.cols {
                        let v = (e.get(i, j) + q - f * e.get(rank, j) % q) % q;
                        e.data[i * e.cols + j] = v;
                    }
                    for j in 0..t.cols {
                        let v = (t.get(i, j) + q - f * t.get(rank, j) % q) % q;
                        t.data[i * t.cols + j] = v;
                    }
                }
            }
            rank += 1;
        }
        (rank, e, t)
    }

    pub fn rank(&self) -> usize {
        self.rref().0
    }

    /// Basis of the right nullspace `{x : self * x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let q = self.q;
        let (rank, e, _) = self.rref();
        let mut pivots = Vec::with_capacity(rank);
        for i in 0..rank {
            let c = (0..self.cols).find(|&j| e.get(i, j) != 0).expect("pivot row");
            pivots.push(c);
        }
        (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![0u32; self.cols];
                v[free] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = (q - e.get(i, free)) % q;
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<FpMatrix> {
        if self.rows != self.cols {
            return Err(Error::Dimension("inverse of non-square matrix".into()));
        }
        let (rank, _, t) = self.rref();
        if rank < self.rows {
            return Err(Error::Invalid("singular matrix".into()));
        }
        Ok(t)
    }

    pub fn det(&self) -> Result<u32> {
        if self.rows != self.cols {
            return Err(Error::Dimension("determinant of non-square matrix".into()));
        }
        let q = self.q;
        let mut m = self.clone();
        let mut det = 1u32;
        let n = self.rows;
        for col in 0..n {
            let Some(p) = (col..n).find(|&i| m.get(i, col) != 0) else {
                return Ok(0);
            };
            if p != col {
                m.swap_rows(p, col);
                det = (q - det) % q;
            }
            let pv = m.get(col, col);
            det = det * pv % q;
            let inv = Fp { value: pv, modulus: q }.pow(q as u64 - 2).value;
            for i in col + 1..n {
                let f = m.get(i, col) * inv % q;
                if f != 0 {
                    for j in col..n {
                        let v = (m.get(i, j) + q - f * m.get(col, j) % q) % q;
                        m.data[i * n + j] = v;
                    }
                }
            }
        }
        Ok(det)
    }

    /// Some solution of `self * x = b`, if one exists.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        let mut aug = FpMatrix::zeros(self.q, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.data[i * (self.cols + 1) + j] = self.get(i, j);
            }
            aug.data[i * (self.cols + 1) + self.cols] = b[i] % self.q;
        }
        let (rank, e, _) = aug.rref();
        let mut x = vec![0u32; self.cols];
        for i in 0..rank {
            let c = (0..=self.cols).find(|&j| e.get(i, j) != 0).expect("pivot row");
            if c == self.cols {
                return None;
            }
            x[c] = e.get(i, self.cols);
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f(v: i64, q: u32) -> Fp {
        Fp::new(v, q).unwrap()
    }

    #[test]
    fn addition_examples() {
        assert_eq!(f(3, 5).add(f(4, 5)).unwrap(), f(2, 5));
        for x in 0..5 {
            assert_eq!(f(0, 5).add(f(x, 5)).unwrap(), f(x, 5));
        }
        assert_eq!(f(6, 7).add(f(1, 7)).unwrap(), f(0, 7));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(f(2, 5).inv().unwrap(), f(3, 5));
        assert_eq!(f(1, 5).inv().unwrap(), f(1, 5));
        assert_eq!(f(3, 7).inv().unwrap(), f(5, 7));
        assert!(matches!(f(0, 7).inv(), Err(Error::ZeroInverse)));
    }

    #[test]
    fn moduli_must_match() {
        assert!(matches!(f(1, 5).add(f(1, 7)), Err(Error::ModulusMismatch(5, 7))));
        assert!(Fp::new(1, 4).is_err());
        assert!(Fp::new(1, 2).is_err());
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in [3u32, 5, 7] {
            let all: Vec<Fp> = (0..q as i64).map(|v| f(v, q)).collect();
            let zero = f(0, q);
            let one = f(1, q);
            for &a in &all {
                assert_eq!(a.add(zero).unwrap(), a);
                assert_eq!(a.mul(one).unwrap(), a);
                assert_eq!(a.add(a.neg()).unwrap(), zero);
                if !a.is_zero() {
                    assert_eq!(a.mul(a.inv().unwrap()).unwrap(), one);
                }
                for &b in &all {
                    assert_eq!(a.add(b).unwrap(), b.add(a).unwrap());
                    assert_eq!(a.mul(b).unwrap(), b.mul(a).unwrap());
                    for &c in &all {
                        let l = a.add(b).unwrap().add(c).unwrap();
                        assert_eq!(l, a.add(b.add(c).unwrap()).unwrap());
                        let l = a.mul(b).unwrap().mul(c).unwrap();
                        assert_eq!(l, a.mul(b.mul(c).unwrap()).unwrap());
                        let l = a.mul(b.add(c).unwrap()).unwrap();
                        assert_eq!(l, a.mul(b).unwrap().add(a.mul(c).unwrap()).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn tables_agree_with_elementwise_ops() {
        for q in SUPPORTED_PRIMES {
            let k = PrimeField::new(q).unwrap();
            for a in 1..q {
                assert_eq!(k.mul(a, k.inv(a)), 1);
                assert_eq!(k.exp(k.log(a) as i64), a);
            }
        }
    }

    #[test]
    fn rref_examples() {
        assert_eq!(FpMatrix::identity(5, 4).rank(), 4);
        assert_eq!(FpMatrix::zeros(5, 3, 4).rank(), 0);
        let m = FpMatrix::from_rows(5, &[vec![1, 2, 0], vec![2, 4, 0]]).unwrap();
        assert_eq!(m.rank(), 1);
    }

    fn random_matrix(rng: &mut ChaCha8Rng, q: u32, r: usize, c: usize) -> FpMatrix {
        let rows: Vec<Vec<i64>> = (0..r)
            .map(|_| (0..c).map(|_| rng.gen_range(0..q as i64)).collect())
            .collect();
        FpMatrix::from_rows(q, &rows).unwrap()
    }

    fn random_invertible(rng: &mut ChaCha8Rng, q: u32, n: usize) -> FpMatrix {
        loop {
            let m = random_matrix(rng, q, n, n);
            if m.rank() == n {
                return m;
            }
        }
    }

    #[test]
    fn rref_transform_idempotent_and_rank_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for trial in 0..300 {
            let q = [3, 5, 7][trial % 3];
            let (r, c) = (rng.gen_range(1..6), rng.gen_range(1..6));
            let m = random_matrix(&mut rng, q, r, c);
            let (rank, e, t) = m.rref();
            assert_eq!(t.mul(&m).unwrap(), e);
            let (rank2, e2, _) = e.rref();
            assert_eq!((rank2, &e2), (rank, &e));
            let g = random_invertible(&mut rng, q, r);
            assert_eq!(g.mul(&m).unwrap().rank(), rank);
            for v in m.nullspace() {
                assert!(m.mul_vec(&v).iter().all(|&x| x == 0));
            }
            assert_eq!(m.nullspace().len(), c - rank);
        }
    }

    #[test]
    fn inverse_det_solve() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let g = random_invertible(&mut rng, 7, 4);
            let gi = g.inverse().unwrap();
            assert_eq!(g.mul(&gi).unwrap(), FpMatrix::identity(7, 4));
            let d = g.det().unwrap();
            let di = gi.det().unwrap();
            assert_eq!(d * di % 7, 1);
            let b: Vec<u32> = (0..4).map(|_| rng.gen_range(0..7)).collect();
            let x = g.solve(&b).unwrap();
            assert_eq!(g.mul_vec(&x), b);
        }
        let singular = FpMatrix::from_rows(5, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(singular.det().unwrap(), 0);
        assert!(singular.solve(&[1, 0]).is_none());
    }
}
