//! Projective lines in `F_q^n`, ordered line tuples and their canonical forms under `GL_n`.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::{field, FpMatrix, PrimeField};

/// Largest ambient dimension supported by the packed line representation.
pub const MAX_N: usize = 6;

/// A line through the origin, stored by its representative whose first nonzero coordinate is 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line {
    coords: [u8; MAX_N],
    n: u8,
}

impl Line {
    pub fn new(coords: &[i64], q: u32) -> Result<Line> {
        let k = field(q)?;
        let v: Vec<u32> = coords.iter().map(|&c| k.elem(c)).collect();
        Line::from_vector(k, &v)
    }

    /// Normalizes a nonzero vector with entries already reduced mod q.
    pub fn from_vector(k: &PrimeField, v: &[u32]) -> Result<Line> {
        let n = v.len();
        if n == 0 || n > MAX_N {
            return Err(Error::Dimension(format!("ambient dimension {n} not in 1..={MAX_N}")));
        }
        let Some(p) = v.iter().position(|&x| x != 0) else {
            return Err(Error::Degenerate("zero vector spans no line".into()));
        };
        let s = k.inv(v[p]);
        let mut coords = [0u8; MAX_N];
        for (c, &x) in coords.iter_mut().zip(v) {
            *c = k.mul(x, s) as u8;
        }
        Ok(Line { coords, n: n as u8 })
    }

    /// The coordinate line `<e_i>` (0-based).
    pub fn unit(i: usize, n: usize) -> Line {
        assert!(i < n && n <= MAX_N);
        let mut coords = [0u8; MAX_N];
        coords[i] = 1;
        Line { coords, n: n as u8 }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn coords(&self) -> &[u8] {
        &self.coords[..self.n as usize]
    }

    pub fn vector(&self) -> Vec<u32> {
        self.coords().iter().map(|&c| c as u32).collect()
    }

    pub fn pivot(&self) -> usize {
        self.coords().iter().position(|&c| c != 0).expect("nonzero line")
    }

    /// Image under a matrix acting on column vectors.
    pub fn apply(&self, g: &FpMatrix) -> Result<Line> {
        if g.rows() != self.n() || g.cols() != self.n() {
            return Err(Error::Dimension("matrix and line sizes differ".into()));
        }
        let k = field(g.q())?;
        Line::from_vector(k, &g.mul_vec(&self.vector()))
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords().iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Every line of `F_q^n`, in lexicographic order of normalized coordinates.
pub fn all_lines(q: u32, n: usize) -> Result<Vec<Line>> {
    let k = field(q)?;
    if n == 0 || n > MAX_N {
        return Err(Error::Dimension(format!("ambient dimension {n} not in 1..={MAX_N}")));
    }
    let mut out = Vec::new();
    for p in 0..n {
        let free = n - p - 1;
        let total = (q as usize).pow(free as u32);
        for code in 0..total {
            let mut v = vec![0u32; n];
            v[p] = 1;
            let mut c = code;
            for j in (p + 1..n).rev() {
                v[j] = (c % q as usize) as u32;
                c /= q as usize;
            }
            out.push(Line::from_vector(k, &v)?);
        }
    }
    out.sort();
    Ok(out)
}

/// General-position flavour: `C` asks every `min(len, n)` lines to be independent, `D` only asks distinctness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    C,
    D,
}

/// Rank of a set of lines in `F_q^n`.
pub fn rank_of(k: &PrimeField, lines: &[Line]) -> usize {
    let mut rows: Vec<([u32; MAX_N], usize)> = Vec::new();
    for l in lines {
        reduce_into(k, &mut rows, l.coords());
    }
    rows.len()
}

/// Reduces `v` against an echelon list; appends it when independent. Returns true if it was dependent.
fn reduce_into(k: &PrimeField, rows: &mut Vec<([u32; MAX_N], usize)>, v: &[u8]) -> bool {
    let n = v.len();
    let mut w = [0u32; MAX_N];
    for (a, &b) in w.iter_mut().zip(v) {
        *a = b as u32;
    }
    for (row, p) in rows.iter() {
        let f = w[*p];
        if f != 0 {
            for j in 0..n {
                w[j] = k.sub(w[j], k.mul(f, row[j]));
            }
        }
    }
    match w[..n].iter().position(|&x| x != 0) {
        None => true,
        Some(p) => {
            let s = k.inv(w[p]);
            for x in w[..n].iter_mut() {
                *x = k.mul(*x, s);
            }
            rows.push((w, p));
            false
        }
    }
}

fn lines_distinct(lines: &[Line]) -> bool {
    lines
        .iter()
        .enumerate()
        .all(|(i, a)| lines[i + 1..].iter().all(|b| a != b))
}

fn choose(m: usize, r: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    fn go(start: usize, m: usize, r: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == r {
            return f(cur);
        }
        for i in start..m {
            cur.push(i);
            let ok = go(i + 1, m, r, cur, f);
            cur.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    go(0, m, r, &mut Vec::with_capacity(r), f)
}

/// General-position predicate on raw lines.
pub fn general_position(k: &PrimeField, n: usize, lines: &[Line], kind: Kind) -> bool {
    if !lines_distinct(lines) {
        return false;
    }
    match kind {
        Kind::D => true,
        Kind::C => {
            let m = lines.len();
            if m <= n {
                return rank_of(k, lines) == m;
            }
            let mut buf = Vec::with_capacity(n);
            choose(m, n, &mut |idx| {
                buf.clear();
                buf.extend(idx.iter().map(|&i| lines[i]));
                rank_of(k, &buf) == n
            })
        }
    }
}

/// Whether appending `line` to an admissible prefix keeps it admissible.
pub fn extension_admissible(k: &PrimeField, n: usize, prefix: &[Line], line: Line, kind: Kind) -> bool {
    if prefix.contains(&line) {
        return false;
    }
    match kind {
        Kind::D => true,
        Kind::C => {
            let m = prefix.len();
            if m < n {
                let mut all = prefix.to_vec();
                all.push(line);
                return rank_of(k, &all) == m + 1;
            }
            let mut buf = Vec::with_capacity(n);
            choose(m, n - 1, &mut |idx| {
                buf.clear();
                buf.extend(idx.iter().map(|&i| prefix[i]));
                buf.push(line);
                rank_of(k, &buf) == n
            })
        }
    }
}

/// An ordered tuple of lines in a common `F_q^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LineTuple {
    q: u32,
    n: usize,
    lines: Vec<Line>,
}

impl LineTuple {
    pub fn new(q: u32, n: usize, lines: Vec<Line>) -> Result<Self> {
        field(q)?;
        if n == 0 || n > MAX_N {
            return Err(Error::Dimension(format!("ambient dimension {n} not in 1..={MAX_N}")));
        }
        if let Some(l) = lines.iter().find(|l| l.n() != n) {
            return Err(Error::Dimension(format!("line {l} is not in dimension {n}")));
        }
        if let Some(l) = lines.iter().flat_map(|l| l.coords()).find(|&&c| c as u32 >= q) {
            return Err(Error::Invalid(format!("coordinate {l} not reduced mod {q}")));
        }
        Ok(LineTuple { q, n, lines })
    }

    /// Builds a tuple from integer coordinate rows.
    pub fn from_rows(q: u32, rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.first().map_or(0, |r| r.len());
        let lines = rows.iter().map(|r| Line::new(r, q)).collect::<Result<Vec<_>>>()?;
        LineTuple::new(q, n, lines)
    }

    /// Parses `"1,0,0,0;0,1,0,0"`.
    pub fn parse(text: &str, q: u32) -> Result<Self> {
        let rows = text
            .trim()
            .split(';')
            .map(|line| {
                line.split(',')
                    .map(|c| {
                        i64::from_str(c.trim()).map_err(|e| Error::Parse(format!("{c:?}: {e}")))
                    })
                    .collect::<Result<Vec<i64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if rows.iter().any(|r| r.len() != rows[0].len()) {
            return Err(Error::Parse("lines of unequal dimension".into()));
        }
        LineTuple::from_rows(q, &rows)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn into_lines(self) -> Vec<Line> {
        self.lines
    }

    pub fn rank(&self) -> usize {
        rank_of(field(self.q).expect("valid tuple"), &self.lines)
    }

    pub fn is_general_position(&self, kind: Kind) -> bool {
        general_position(field(self.q).expect("valid tuple"), self.n, &self.lines, kind)
    }

    /// Removes the `i`-th line.
    pub fn apply_face(&self, i: usize) -> Result<LineTuple> {
        if i >= self.lines.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.lines.len(),
            });
        }
        let mut lines = self.lines.clone();
        lines.remove(i);
        Ok(LineTuple {
            q: self.q,
            n: self.n,
            lines,
        })
    }

    /// `g·t`, line by line.
    pub fn apply(&self, g: &FpMatrix) -> Result<LineTuple> {
        if g.q() != self.q {
            return Err(Error::ModulusMismatch(g.q(), self.q));
        }
        let lines = self.lines.iter().map(|l| l.apply(g)).collect::<Result<Vec<_>>>()?;
        Ok(LineTuple {
            q: self.q,
            n: self.n,
            lines,
        })
    }

    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self.lines.iter().map(|l| l.to_string()).collect();
        parts.join(";")
    }
}

impl fmt::Display for LineTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

type Mat = [[u32; MAX_N]; MAX_N];

fn invert_small(k: &PrimeField, n: usize, a: &Mat) -> Option<Mat> {
    let mut m = *a;
    let mut inv: Mat = [[0; MAX_N]; MAX_N];
    for (i, row) in inv.iter_mut().enumerate().take(n) {
        row[i] = 1;
    }
    for col in 0..n {
        let p = (col..n).find(|&i| m[i][col] != 0)?;
        m.swap(col, p);
        inv.swap(col, p);
        let s = k.inv(m[col][col]);
        for j in 0..n {
            m[col][j] = k.mul(m[col][j], s);
            inv[col][j] = k.mul(inv[col][j], s);
        }
        for i in 0..n {
            let f = m[i][col];
            if i != col && f != 0 {
                for j in 0..n {
                    m[i][j] = k.sub(m[i][j], k.mul(f, m[col][j]));
                    inv[i][j] = k.sub(inv[i][j], k.mul(f, inv[col][j]));
                }
            }
        }
    }
    Some(inv)
}

/// Result of canonicalization with the matrix that realizes it.
#[derive(Clone, Debug)]
pub struct Canonical {
    pub lines: Vec<Line>,
    /// `g` with `g·t = lines`.
    pub g: Mat,
    /// Indices of the lex-greedy basis.
    pub basis: Vec<usize>,
}

/// Canonical form of a tuple of pairwise distinct lines.
///
/// Lex-greedy basis sent to `e_1..e_r`, then the remaining diagonal freedom is
/// spent left to right with a ratio union-find over the basis coordinates.
pub fn canonicalize(k: &PrimeField, n: usize, lines: &[Line]) -> Result<Canonical> {
    if !lines_distinct(lines) {
        return Err(Error::Degenerate("repeated line".into()));
    }
    let mut rows = Vec::with_capacity(n);
    let mut basis = Vec::with_capacity(n);
    for (i, l) in lines.iter().enumerate() {
        if rows.len() == n {
            break;
        }
        if !reduce_into(k, &mut rows, l.coords()) {
            basis.push(i);
        }
    }
    let r = basis.len();
    // columns: chosen lines then completing unit vectors
    let mut a: Mat = [[0; MAX_N]; MAX_N];
    let mut col = 0;
    for &b in &basis {
        for i in 0..n {
            a[i][col] = lines[b].coords[i] as u32;
        }
        col += 1;
    }
    for j in 0..n {
        if col == n {
            break;
        }
        if !reduce_into(k, &mut rows, Line::unit(j, n).coords()) {
            a[j][col] = 1;
            col += 1;
        }
    }
    let g0 = invert_small(k, n, &a).expect("completed basis is invertible");
    let coords: Vec<[u32; MAX_N]> = lines
        .iter()
        .map(|l| {
            let mut x = [0u32; MAX_N];
            for (i, xi) in x.iter_mut().enumerate().take(n) {
                let mut s = 0;
                for j in 0..n {
                    s = k.add(s, k.mul(g0[i][j], l.coords[j] as u32));
                }
                *xi = s;
            }
            x
        })
        .collect();

    let mut root: [usize; MAX_N] = [0, 1, 2, 3, 4, 5];
    let mut ratio = [1u32; MAX_N];
    for (i, x) in coords.iter().enumerate() {
        if basis.contains(&i) {
            continue;
        }
        let p = x.iter().position(|&c| c != 0).expect("nonzero line");
        let xp_inv = k.inv(x[p]);
        for kk in p + 1..r {
            if x[kk] == 0 {
                continue;
            }
            let (rp, rk) = (root[p], root[kk]);
            if rp == rk {
                continue;
            }
            let xk = k.mul(x[kk], xp_inv);
            let factor = k.div(ratio[p], k.mul(xk, ratio[kk]));
            for m in 0..r {
                if root[m] == rk {
                    root[m] = rp;
                    ratio[m] = k.mul(ratio[m], factor);
                }
            }
        }
    }
    let mut g: Mat = [[0; MAX_N]; MAX_N];
    for i in 0..n {
        let t = if i < r { ratio[i] } else { 1 };
        for j in 0..n {
            g[i][j] = k.mul(t, g0[i][j]);
        }
    }
    let out = coords
        .iter()
        .map(|x| {
            let mut y = [0u32; MAX_N];
            for i in 0..n {
                y[i] = if i < r { k.mul(ratio[i], x[i]) } else { x[i] };
            }
            Line::from_vector(k, &y[..n])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Canonical {
        lines: out,
        g,
        basis,
    })
}

/// Canonical lines only.
pub fn canonical_lines(k: &PrimeField, n: usize, lines: &[Line]) -> Result<Vec<Line>> {
    Ok(canonicalize(k, n, lines)?.lines)
}

/// `(c, g)` with `g` invertible, `g·t = c`, and `c` constant on `GL_n`-orbits.
pub fn canonical_form(t: &LineTuple) -> Result<(LineTuple, FpMatrix)> {
    let k = field(t.q)?;
    let c = canonicalize(k, t.n, &t.lines)?;
    let rows: Vec<Vec<i64>> = (0..t.n)
        .map(|i| (0..t.n).map(|j| c.g[i][j] as i64).collect())
        .collect();
    let g = FpMatrix::from_rows(t.q, &rows)?;
    Ok((
        LineTuple {
            q: t.q,
            n: t.n,
            lines: c.lines,
        },
        g,
    ))
}

/// Uniform sample from `GL_n(F_q)` by rejection.
pub fn random_gl<R: Rng + ?Sized>(q: u32, n: usize, rng: &mut R) -> FpMatrix {
    loop {
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(0..q as i64)).collect())
            .collect();
        let m = FpMatrix::from_rows(q, &rows).expect("valid modulus");
        if m.rank() == n {
            return m;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn t(q: u32, rows: &[&[i64]]) -> LineTuple {
        let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        LineTuple::from_rows(q, &rows).unwrap()
    }

    #[test]
    fn general_position_examples() {
        let w2 = t(5, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[1, 1, 0, 0]]);
        assert!(w2.is_general_position(Kind::D));
        assert!(!w2.is_general_position(Kind::C));
        let rep = t(5, &[&[1, 0, 0, 0], &[1, 0, 0, 0]]);
        assert!(!rep.is_general_position(Kind::C));
        assert!(!rep.is_general_position(Kind::D));
        let five = t(5, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 1, 1, 1]]);
        assert!(five.is_general_position(Kind::C));
    }

    #[test]
    fn normalization_and_text() {
        let l = Line::new(&[0, 3, 1, 0], 5).unwrap();
        assert_eq!(l.coords(), &[0, 1, 2, 0]);
        let tup = LineTuple::parse("1,0,0,0;0,1,0,0;1,1,0,0", 5).unwrap();
        assert_eq!(tup.to_text(), "1,0,0,0;0,1,0,0;1,1,0,0");
        assert!(LineTuple::parse("1,0;0,0", 5).is_err());
        assert!(LineTuple::parse("1,x", 5).is_err());
        assert_eq!(all_lines(5, 4).unwrap().len(), 156);
        assert_eq!(all_lines(3, 4).unwrap().len(), 40);
    }

    #[test]
    fn faces() {
        let w2 = t(5, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[1, 1, 0, 0]]);
        assert_eq!(w2.apply_face(2).unwrap(), t(5, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]));
        let one = t(5, &[&[1, 0, 0, 0]]);
        assert!(one.apply_face(0).unwrap().is_empty());
        assert!(matches!(one.apply_face(1), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn canonical_examples() {
        let x = t(5, &[&[0, 1, 0, 0], &[1, 0, 0, 0], &[1, 1, 0, 0]]);
        let (c, g) = canonical_form(&x).unwrap();
        assert_eq!(c, t(5, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[1, 1, 0, 0]]));
        assert_eq!(x.apply(&g).unwrap(), c);
        let v9 = t(5, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[1, 1, 0, 0], &[1, 3, 0, 0]]);
        assert_eq!(canonical_form(&v9).unwrap().0, v9);
        let rep = t(5, &[&[1, 0, 0, 0], &[1, 0, 0, 0]]);
        assert!(matches!(canonical_form(&rep), Err(Error::Degenerate(_))));
    }

    #[test]
    fn canonical_form_invariant_and_retraction() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for trial in 0..3000 {
            let q = [3, 5, 7][trial % 3];
            let pts = all_lines(q, 4).unwrap();
            let len = 1 + trial % 7;
            let mut lines = Vec::new();
            while lines.len() < len {
                let l = pts[rng.gen_range(0..pts.len())];
                if !lines.contains(&l) {
                    lines.push(l);
                }
            }
            let tup = LineTuple::new(q, 4, lines).unwrap();
            let (c, g) = canonical_form(&tup).unwrap();
            assert_eq!(tup.apply(&g).unwrap(), c);
            assert_eq!(canonical_form(&c).unwrap().0, c);
            let h = random_gl(q, 4, &mut rng);
            assert_eq!(canonical_form(&tup.apply(&h).unwrap()).unwrap().0, c);
        }
    }
}
