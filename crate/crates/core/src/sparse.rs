//! Sparse and dense integer matrices.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::int::Int;

/// Sparse integer matrix stored by columns, each sorted by row with no zero entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, Int)>>,
}

impl SparseIntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseIntMatrix {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let columns = (0..n).map(|i| vec![(i, Int::one())]).collect();
        SparseIntMatrix {
            rows: n,
            cols: n,
            columns,
        }
    }

    /// Sums duplicate positions and drops zeros.
    pub fn from_triplets(rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize, Int)>) -> Result<Self> {
        let mut columns: Vec<Vec<(usize, Int)>> = vec![Vec::new(); cols];
        for (i, j, v) in entries {
            if i >= rows || j >= cols {
                return Err(Error::Dimension(format!("entry ({i},{j}) outside {rows}x{cols}")));
            }
            columns[j].push((i, v));
        }
        for c in columns.iter_mut() {
            *c = normalize_column(std::mem::take(c));
        }
        Ok(SparseIntMatrix { rows, cols, columns })
    }

    /// Builds from columns given as `(row, value)` lists in any order.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, Int)>>) -> Result<Self> {
        if let Some(&(i, _)) = columns.iter().flatten().find(|(i, _)| *i >= rows) {
            return Err(Error::Dimension(format!("row {i} outside {rows} rows")));
        }
        let cols = columns.len();
        let columns = columns.into_iter().map(normalize_column).collect();
        Ok(SparseIntMatrix { rows, cols, columns })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }

    pub fn column(&self, j: usize) -> &[(usize, Int)] {
        &self.columns[j]
    }

    pub fn get(&self, i: usize, j: usize) -> Int {
        match self.columns[j].binary_search_by_key(&i, |e| e.0) {
            Ok(p) => self.columns[j][p].1.clone(),
            Err(_) => Int::zero(),
        }
    }

    /// `(i, j, v)` sorted by row then column.
    pub fn triplets(&self) -> Vec<(usize, usize, Int)> {
        let mut t: Vec<(usize, usize, Int)> = self
            .columns
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.iter().map(move |(i, v)| (*i, j, v.clone())))
            .collect();
        t.sort_by_key(|e| (e.0, e.1));
        t
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    pub fn transpose(&self) -> Self {
        let mut columns: Vec<Vec<(usize, Int)>> = vec![Vec::new(); self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            for (i, v) in c {
                columns[*i].push((j, v.clone()));
            }
        }
        SparseIntMatrix {
            rows: self.cols,
            cols: self.rows,
            columns,
        }
    }

    pub fn mul(&self, other: &SparseIntMatrix) -> Result<SparseIntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut acc = vec![Int::zero(); self.rows];
        let mut touched = Vec::new();
        let mut columns = Vec::with_capacity(other.cols);
        for col in &other.columns {
            for (k, b) in col {
                for (i, a) in &self.columns[*k] {
                    if acc[*i].is_zero() {
                        touched.push(*i);
                    }
                    acc[*i] += &(a * b);
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let mut out = Vec::new();
            for &i in &touched {
                let v = std::mem::take(&mut acc[i]);
                if !v.is_zero() {
                    out.push((i, v));
                }
            }
            touched.clear();
            columns.push(out);
        }
        Ok(SparseIntMatrix {
            rows: self.rows,
            cols: other.cols,
            columns,
        })
    }

    pub fn mul_vec(&self, x: &[Int]) -> Vec<Int> {
        let mut out = vec![Int::zero(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            if x[j].is_zero() {
                continue;
            }
            for (i, v) in col {
                out[*i] += &(v * &x[j]);
            }
        }
        out
    }

    /// Permutes rows and columns: entry `(i, j)` moves to `(rp[i], cp[j])`.
    pub fn permute(&self, rp: &[usize], cp: &[usize]) -> SparseIntMatrix {
        let mut columns = vec![Vec::new(); self.cols];
        for (j, c) in self.columns.iter().enumerate() {
            columns[cp[j]] = c.iter().map(|(i, v)| (rp[*i], v.clone())).collect();
        }
        SparseIntMatrix::from_columns(self.rows, columns).expect("permutation keeps bounds")
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols);
        for (j, c) in self.columns.iter().enumerate() {
            for (i, v) in c {
                m.set(*i, j, v.clone());
            }
        }
        m
    }

    pub fn from_dense(m: &IntMatrix) -> Self {
        let columns = (0..m.cols())
            .map(|j| {
                (0..m.rows())
                    .filter(|&i| !m.get(i, j).is_zero())
                    .map(|i| (i, m.get(i, j).clone()))
                    .collect()
            })
            .collect();
        SparseIntMatrix {
            rows: m.rows(),
            cols: m.cols(),
            columns,
        }
    }

    /// Writes `rows cols nnz` then one `i j v` line per entry, 0-based.
    pub fn write_triplets<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "{} {} {}", self.rows, self.cols, self.nnz())?;
        for (i, j, v) in self.triplets() {
            writeln!(w, "{i} {j} {v}")?;
        }
        Ok(())
    }

    pub fn read_triplets<R: BufRead>(r: R) -> Result<Self> {
        let mut lines = r.lines().filter(|l| l.as_ref().map_or(true, |s| !s.trim().is_empty()));
        let header = lines.next().ok_or_else(|| Error::Parse("missing header".into()))??;
        let h: Vec<usize> = header
            .split_whitespace()
            .map(|x| x.parse().map_err(|e| Error::Parse(format!("header {x:?}: {e}"))))
            .collect::<Result<_>>()?;
        let [rows, cols, nnz] = h[..] else {
            return Err(Error::Parse(format!("header {header:?} is not `rows cols nnz`")));
        };
        let mut entries = Vec::with_capacity(nnz);
        for line in lines {
            let line = line?;
            let f: Vec<&str> = line.split_whitespace().collect();
            let [i, j, v] = f[..] else {
                return Err(Error::Parse(format!("entry {line:?} is not `i j v`")));
            };
            let i = i.parse().map_err(|e| Error::Parse(format!("{i:?}: {e}")))?;
            let j = j.parse().map_err(|e| Error::Parse(format!("{j:?}: {e}")))?;
            let v: num_bigint::BigInt = v.parse().map_err(|e| Error::Parse(format!("{v:?}: {e}")))?;
            entries.push((i, j, Int::from(v)));
        }
        if entries.len() != nnz {
            return Err(Error::Parse(format!("header says {nnz} entries, found {}", entries.len())));
        }
        SparseIntMatrix::from_triplets(rows, cols, entries)
    }
}

fn normalize_column(mut c: Vec<(usize, Int)>) -> Vec<(usize, Int)> {
    c.sort_by_key(|e| e.0);
    let mut out: Vec<(usize, Int)> = Vec::with_capacity(c.len());
    for (i, v) in c {
        match out.last_mut() {
            Some((li, lv)) if *li == i => *lv += &v,
            _ => out.push((i, v)),
        }
    }
    out.retain(|e| !e.1.is_zero());
    out
}

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Int::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows.iter().flat_map(|r| r.iter().map(|&v| Int::from(v))).collect();
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(rows: usize, cols: &[Vec<Int>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[Int]) -> Vec<Int> {
        (0..self.rows)
            .map(|i| {
                let mut s = Int::zero();
                for (a, b) in self.row(i).iter().zip(x) {
                    if !a.is_zero() && !b.is_zero() {
                        s += &(a * b);
                    }
                }
                s
            })
            .collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Rows `r0..` only.
    pub fn rows_from(&self, r0: usize) -> IntMatrix {
        IntMatrix {
            rows: self.rows - r0,
            cols: self.cols,
            data: self.data[r0 * self.cols..].to_vec(),
        }
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row_dst += c·row_src`.
    pub(crate) fn add_row(&mut self, dst: usize, src: usize, c: &Int) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = self.get(src, j);
            if !s.is_zero() {
                let v = self.get(dst, j) + &(c * s);
                self.set(dst, j, v);
            }
        }
    }

    /// `col_dst += c·col_src`.
    pub(crate) fn add_col(&mut self, dst: usize, src: usize, c: &Int) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = self.get(i, src);
            if !s.is_zero() {
                let v = self.get(i, dst) + &(c * s);
                self.set(i, dst, v);
            }
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }

    pub(crate) fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }
}
