//! Named orbit families of 3-, 4- and 5-tuples of lines in `F_q^4`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ff::field;
use crate::lines::{canonical_lines, Kind, Line, LineTuple};

/// Symbolic family name with its parameters, e.g. `v_{9,3}^{1,2}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FamilyTag {
    pub letter: char,
    pub index: u8,
    /// Field parameters `a`, `b`.
    pub params: Vec<u32>,
    /// Coordinate superscripts (1-based).
    pub sup: Vec<u8>,
}

impl FamilyTag {
    fn new(letter: char, index: u8, params: &[u32], sup: &[u8]) -> Self {
        FamilyTag {
            letter,
            index,
            params: params.to_vec(),
            sup: sup.to_vec(),
        }
    }

    /// Family name without parameters or superscripts, e.g. `v_9`.
    pub fn family(&self) -> String {
        format!("{}_{}", self.letter, self.index)
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.params.is_empty() {
            write!(f, "{}_{}", self.letter, self.index)?;
        } else {
            let p: Vec<String> = self.params.iter().map(|x| x.to_string()).collect();
            write!(f, "{}_{{{},{}}}", self.letter, self.index, p.join(","))?;
        }
        if !self.sup.is_empty() {
            let s: Vec<String> = self.sup.iter().map(|x| x.to_string()).collect();
            write!(f, "^{{{}}}", s.join(","))?;
        }
        Ok(())
    }
}

/// Canonical representative of an orbit, with its family when one is defined.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrbitLabel {
    pub canonical: LineTuple,
    pub family: Option<FamilyTag>,
    pub rank: usize,
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family {
            Some(t) => write!(f, "{t}"),
            None => write!(f, "[{}]", self.canonical),
        }
    }
}

type Vec4 = [i64; 4];

fn e(i: usize) -> Vec4 {
    let mut v = [0; 4];
    v[i - 1] = 1;
    v
}

fn comb(terms: &[(i64, usize)]) -> Vec4 {
    let mut v = [0; 4];
    for &(c, i) in terms {
        v[i - 1] += c;
    }
    v
}

fn sum(idx: &[usize]) -> Vec4 {
    comb(&idx.iter().map(|&i| (1, i)).collect::<Vec<_>>())
}

const PAIRS3: [(usize, usize); 3] = [(1, 2), (1, 3), (2, 3)];

/// Every family member over `F_q` with admissible parameters, in listing order.
pub fn family_representatives(q: u32) -> Result<Vec<(FamilyTag, LineTuple)>> {
    let k = field(q)?;
    let units: Vec<u32> = (1..q).collect();
    let nontriv: Vec<u32> = k.nontrivial_units().collect();
    let mut out: Vec<(FamilyTag, Vec<Vec4>)> = Vec::new();
    let mut push = |tag: FamilyTag, rows: Vec<Vec4>| out.push((tag, rows));
    let (e1, e2, e3, e4) = (e(1), e(2), e(3), e(4));

    push(FamilyTag::new('w', 1, &[], &[]), vec![e1, e2, e3]);
    push(FamilyTag::new('w', 2, &[], &[]), vec![e1, e2, sum(&[1, 2])]);

    push(FamilyTag::new('u', 1, &[], &[]), vec![e1, e2, e3, e4]);
    push(FamilyTag::new('u', 2, &[], &[]), vec![e1, e2, e3, sum(&[1, 2, 3])]);
    push(FamilyTag::new('u', 3, &[], &[]), vec![e1, e2, e3, sum(&[1, 2])]);
    push(FamilyTag::new('u', 4, &[], &[]), vec![e1, e2, e3, sum(&[2, 3])]);
    push(FamilyTag::new('u', 5, &[], &[]), vec![e1, e2, e3, sum(&[1, 3])]);
    push(FamilyTag::new('u', 6, &[], &[]), vec![e1, e2, sum(&[1, 2]), e3]);
    for &a in &nontriv {
        let l = comb(&[(1, 1), (a as i64, 2)]);
        push(FamilyTag::new('u', 7, &[a], &[]), vec![e1, e2, sum(&[1, 2]), l]);
    }

    let base4 = vec![e1, e2, e3, e4];
    let with = |mut v: Vec<Vec4>, extra: &[Vec4]| {
        v.extend_from_slice(extra);
        v
    };
    push(FamilyTag::new('v', 1, &[], &[]), with(base4.clone(), &[sum(&[1, 2, 3, 4])]));
    for (i, j, kk) in [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)] {
        let tag = FamilyTag::new('v', 2, &[], &[i as u8, j as u8, kk as u8]);
        push(tag, with(base4.clone(), &[sum(&[i, j, kk])]));
    }
    for (i, j) in [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)] {
        push(FamilyTag::new('v', 3, &[], &[i as u8, j as u8]), with(base4.clone(), &[sum(&[i, j])]));
    }
    let base3 = vec![e1, e2, e3];
    let s123 = sum(&[1, 2, 3]);
    push(FamilyTag::new('v', 4, &[], &[]), with(base3.clone(), &[s123, e4]));
    for &a in &units {
        for &b in &units {
            if a == 1 && b == 1 {
                continue;
            }
            let l = comb(&[(1, 1), (a as i64, 2), (b as i64, 3)]);
            push(FamilyTag::new('v', 5, &[a, b], &[]), with(base3.clone(), &[s123, l]));
        }
    }
    for (i, j) in PAIRS3 {
        for &a in &units {
            let l = comb(&[(1, i), (a as i64, j)]);
            push(FamilyTag::new('v', 6, &[a], &[i as u8, j as u8]), with(base3.clone(), &[s123, l]));
        }
    }
    for (i, j) in PAIRS3 {
        push(FamilyTag::new('v', 7, &[], &[i as u8, j as u8]), with(base3.clone(), &[sum(&[i, j]), e4]));
    }
    for (i, j) in PAIRS3 {
        for &a in &units {
            let l = comb(&[(1, i), (a as i64, j)]);
            push(FamilyTag::new('v', 8, &[a], &[i as u8, j as u8]), with(base3.clone(), &[l, s123]));
        }
    }
    for (i, j) in PAIRS3 {
        for &a in &nontriv {
            let l = comb(&[(1, i), (a as i64, j)]);
            push(FamilyTag::new('v', 9, &[a], &[i as u8, j as u8]), with(base3.clone(), &[sum(&[i, j]), l]));
        }
    }
    let simple: [(u8, [usize; 2], [usize; 2]); 6] = [
        (10, [1, 2], [1, 3]),
        (11, [1, 3], [1, 2]),
        (12, [1, 2], [2, 3]),
        (13, [2, 3], [1, 2]),
        (14, [1, 3], [2, 3]),
        (15, [2, 3], [1, 3]),
    ];
    for (idx, x, y) in simple {
        push(FamilyTag::new('v', idx, &[], &[]), with(base3.clone(), &[sum(&x), sum(&y)]));
    }
    let s12 = sum(&[1, 2]);
    let base_w2 = vec![e1, e2, s12];
    push(FamilyTag::new('v', 16, &[], &[]), with(base_w2.clone(), &[e3, e4]));
    for &a in &units {
        let l = comb(&[(1, 1), (a as i64, 2), (1, 3)]);
        push(FamilyTag::new('v', 17, &[a], &[]), with(base_w2.clone(), &[e3, l]));
    }
    for &a in &nontriv {
        let l = comb(&[(1, 1), (a as i64, 2)]);
        push(FamilyTag::new('v', 18, &[a], &[]), with(base_w2.clone(), &[e3, l]));
    }
    push(FamilyTag::new('v', 19, &[], &[]), with(base_w2.clone(), &[e3, sum(&[1, 3])]));
    push(FamilyTag::new('v', 20, &[], &[]), with(base_w2.clone(), &[e3, sum(&[2, 3])]));
    for &a in &nontriv {
        let l = comb(&[(1, 1), (a as i64, 2)]);
        push(FamilyTag::new('v', 21, &[a], &[]), with(base_w2.clone(), &[l, e3]));
    }
    for &a in &nontriv {
        for &b in &nontriv {
            if a != b {
                let la = comb(&[(1, 1), (a as i64, 2)]);
                let lb = comb(&[(1, 1), (b as i64, 2)]);
                push(FamilyTag::new('v', 22, &[a, b], &[]), with(base_w2.clone(), &[la, lb]));
            }
        }
    }

    out.into_iter()
        .map(|(tag, rows)| {
            let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
            Ok((tag, LineTuple::from_rows(q, &rows)?))
        })
        .collect()
}

/// Lookup from canonical tuples to family tags for one field.
#[derive(Debug)]
pub struct FamilyTable {
    q: u32,
    by_canonical: HashMap<Vec<Line>, FamilyTag>,
    entries: Vec<(FamilyTag, LineTuple)>,
}

impl FamilyTable {
    pub fn build(q: u32) -> Result<Self> {
        let k = field(q)?;
        let mut by_canonical = HashMap::new();
        let mut entries = Vec::new();
        for (tag, rep) in family_representatives(q)? {
            if !rep.is_general_position(Kind::D) {
                return Err(Error::Degenerate(format!("{tag} representative")));
            }
            let c = canonical_lines(k, 4, rep.lines())?;
            if let Some(prev) = by_canonical.insert(c.clone(), tag.clone()) {
                return Err(Error::Invalid(format!("{prev} and {tag} lie in one orbit")));
            }
            entries.push((tag, LineTuple::new(q, 4, c)?));
        }
        Ok(FamilyTable {
            q,
            by_canonical,
            entries,
        })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn lookup(&self, canonical: &[Line]) -> Option<&FamilyTag> {
        self.by_canonical.get(canonical)
    }

    /// `(tag, canonical tuple)` in listing order.
    pub fn entries(&self) -> &[(FamilyTag, LineTuple)] {
        &self.entries
    }

    pub fn of_length(&self, len: usize) -> impl Iterator<Item = &(FamilyTag, LineTuple)> {
        self.entries.iter().filter(move |(_, t)| t.len() == len)
    }
}

/// Shared table for `q`.
pub fn family_table(q: u32) -> Result<&'static FamilyTable> {
    static TABLES: OnceLock<Mutex<HashMap<u32, &'static FamilyTable>>> = OnceLock::new();
    let map = TABLES.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = map.lock().expect("table lock").get(&q) {
        return Ok(t);
    }
    let built: &'static FamilyTable = Box::leak(Box::new(FamilyTable::build(q)?));
    Ok(*map.lock().expect("table lock").entry(q).or_insert(built))
}

/// Number of orbits per family over `F_q`, as closed formulas in `q`.
pub fn expected_family_sizes(q: u32) -> Vec<(String, usize)> {
    let q = q as usize;
    let one = |s: &str| (s.to_string(), 1usize);
    let mut v = vec![one("w_1"), one("w_2")];
    for i in 1..=6 {
        v.push(one(&format!("u_{i}")));
    }
    v.push(("u_7".into(), q - 2));
    v.extend([
        one("v_1"),
        ("v_2".into(), 4),
        ("v_3".into(), 6),
        one("v_4"),
        ("v_5".into(), (q - 1) * (q - 1) - 1),
        ("v_6".into(), 3 * (q - 1)),
        ("v_7".into(), 3),
        ("v_8".into(), 3 * (q - 1)),
        ("v_9".into(), 3 * (q - 2)),
    ]);
    for i in 10..=16 {
        v.push(one(&format!("v_{i}")));
    }
    v.extend([
        ("v_17".into(), q - 1),
        ("v_18".into(), q - 2),
        one("v_19"),
        one("v_20"),
        ("v_21".into(), q - 2),
        ("v_22".into(), (q - 2) * (q - 3)),
    ]);
    v
}

fn label_with(k_q: u32, t: &LineTuple, tagged: bool) -> Result<OrbitLabel> {
    let k = field(k_q)?;
    let c = canonical_lines(k, t.n(), t.lines())?;
    let family = if tagged && t.n() == 4 && (3..=5).contains(&t.len()) {
        let table = family_table(k_q)?;
        Some(
            table
                .lookup(&c)
                .cloned()
                .ok_or_else(|| Error::NoFamily(t.to_text()))?,
        )
    } else {
        None
    };
    let canonical = LineTuple::new(k_q, t.n(), c)?;
    let rank = canonical.rank();
    Ok(OrbitLabel {
        canonical,
        family,
        rank,
    })
}

/// Canonical form plus the family tag for 3-, 4- and 5-tuples in `F_q^4`.
pub fn orbit_label(t: &LineTuple) -> Result<OrbitLabel> {
    label_with(t.q(), t, true)
}

/// Canonical form only.
pub fn orbit_label_untagged(t: &LineTuple) -> Result<OrbitLabel> {
    label_with(t.q(), t, false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(q: u32, rows: &[&[i64]]) -> LineTuple {
        let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        LineTuple::from_rows(q, &rows).unwrap()
    }

    #[test]
    fn label_examples() {
        let w1 = t(5, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]]);
        assert_eq!(orbit_label(&w1).unwrap().to_string(), "w_1");
        let u7 = t(5, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[1, 1, 0, 0], &[1, 4, 0, 0]]);
        assert_eq!(orbit_label(&u7).unwrap().to_string(), "u_{7,4}");
        let v9 = t(5, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[1, 1, 0, 0], &[1, 3, 0, 0]]);
        assert_eq!(orbit_label(&v9).unwrap().to_string(), "v_{9,3}^{1,2}");
        let l = orbit_label(&v9).unwrap();
        assert_eq!(l.rank, 3);
    }

    #[test]
    fn tables_are_collision_free_with_expected_sizes() {
        for q in [3, 5, 7, 11, 13] {
            let table = family_table(q).unwrap();
            let mut counts: HashMap<String, usize> = HashMap::new();
            for (tag, _) in table.entries() {
                *counts.entry(tag.family()).or_default() += 1;
            }
            for (fam, n) in expected_family_sizes(q) {
                assert_eq!(counts.get(&fam).copied().unwrap_or(0), n, "{fam} at q={q}");
            }
        }
    }

    #[test]
    fn display_forms() {
        assert_eq!(FamilyTag::new('v', 22, &[2, 3], &[]).to_string(), "v_{22,2,3}");
        assert_eq!(FamilyTag::new('v', 2, &[], &[1, 2, 4]).to_string(), "v_2^{1,2,4}");
    }
}
