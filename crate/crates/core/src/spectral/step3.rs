//! Boundary identities among explicit 6- and 7-tuples in `D_*(F^4)_{GL_4}`.

use serde::Serialize;

use crate::complexes::{build_complex, BuildOptions, ComplexKind, FormalSum};
use crate::error::{Error, Result};
use crate::homology::{AbelianGroupStructure, HomologyPresentation};
use crate::int::Int;
use crate::sparse::SparseIntMatrix;
use crate::ff::{field, PrimeField};
use crate::lines::Line;
use crate::maybe_rayon::*;

const N: usize = 4;

/// Builds named chains over one field.
#[derive(Clone, Copy)]
pub struct Chains<'a> {
    k: &'a PrimeField,
}

type Vec4 = [u32; 4];

impl<'a> Chains<'a> {
    pub fn new(q: u32) -> Result<Self> {
        Ok(Chains { k: field(q)? })
    }

    pub fn field(&self) -> &'a PrimeField {
        self.k
    }

    fn tuple(&self, extra: &[Vec4]) -> Result<Vec<Line>> {
        let mut out: Vec<Line> = (0..N).map(|i| Line::unit(i, N)).collect();
        for v in extra {
            out.push(Line::from_vector(self.k, v)?);
        }
        Ok(out)
    }

    fn sum(&self, terms: &[(i64, &[Vec4])]) -> Result<FormalSum> {
        let mut s = FormalSum::new();
        for (c, extra) in terms {
            s.add(self.k, N, *c, &self.tuple(extra)?)?;
        }
        Ok(s)
    }

    fn inv(&self, a: u32) -> u32 {
        self.k.inv(a)
    }

    fn one_minus(&self, a: u32) -> u32 {
        self.k.sub(1, a)
    }

    pub fn x(&self, a: u32, b: u32, c: u32) -> Result<FormalSum> {
        self.sum(&[(1, &[[1, 1, 1, 1], [1, a, b, c]])])
    }

    pub fn big_x(&self, a: u32, b: u32, c: u32) -> Result<FormalSum> {
        self.sum(&[(1, &[[1, 1, 1, 1], [1, a, b, c], [1, 1, 0, 0]])])
    }

    pub fn v(&self, g: u32, h: u32) -> Result<FormalSum> {
        self.sum(&[(1, &[[1, 1, 1, 1], [0, 1, g, h]])])
    }

    pub fn u(&self, l: u32) -> Result<FormalSum> {
        self.sum(&[(1, &[[1, 1, 1, 1], [1, l, 0, 0]]), (-1, &[[1, 1, 1, 1], [1, 1, 0, 0]])])
    }

    pub fn big_u(&self, l: u32) -> Result<FormalSum> {
        self.sum(&[(1, &[[1, 1, 1, 1], [1, 1, 0, 0], [1, l, 0, 0]])])
    }

    pub fn big_v(&self, l: u32) -> Result<FormalSum> {
        self.sum(&[(1, &[[1, 1, 0, 0], [1, l, 0, 0], [0, 0, 1, 1]])])
    }

    pub fn big_t(&self, g: u32, h: u32) -> Result<FormalSum> {
        self.sum(&[(1, &[[1, 1, 1, 1], [0, 1, g, h], [0, 1, 1, 0]])])
    }

    pub fn s(&self, a: u32) -> Result<FormalSum> {
        self.sum(&[(1, &[[1, 1, 1, 1], [1, 0, a, 1]])])
    }

    pub fn z(&self, a: u32) -> Result<FormalSum> {
        self.sum(&[(1, &[[1, 1, 1, 1], [0, 1, a, 0]]), (-1, &[[1, 1, 1, 1], [0, 1, 1, 0]])])
    }

    pub fn y(&self, a: u32) -> Result<FormalSum> {
        self.sum(&[
            (1, &[[1, 1, 1, 0], [1, a, 0, 0]]),
            (1, &[[0, 1, 1, 1], [0, 1, a, 0]]),
            (-1, &[[1, 1, 1, 0], [1, 1, 0, 0]]),
            (-1, &[[0, 1, 1, 1], [0, 1, 1, 0]]),
        ])
    }

    pub fn big_y(&self, a: u32) -> Result<FormalSum> {
        self.sum(&[(1, &[[1, 1, 1, 0], [1, a, 0, 0], [1, 1, 0, 0]])])
    }

    pub fn big_y_prime(&self, a: u32) -> Result<FormalSum> {
        self.sum(&[(1, &[[0, 1, 1, 1], [0, 1, a, 0], [0, 1, 1, 0]])])
    }

    pub fn big_z(&self, a: u32) -> Result<FormalSum> {
        self.sum(&[(1, &[[1, 1, 1, 1], [0, 1, 1, 0], [0, 1, a, 0]])])
    }

    pub fn big_s(&self, a: u32) -> Result<FormalSum> {
        self.sum(&[(1, &[[1, 1, 1, 1], [1, 0, a, 1], [1, 0, 0, 1]])])
    }

    pub fn r(&self, a: u32, b: u32) -> Result<FormalSum> {
        self.sum(&[
            (1, &[[1, 1, 0, 1], [1, a, 0, 1]]),
            (-1, &[[1, 1, 0, 1], [1, b, 0, 1]]),
            (-1, &[[0, 1, 1, 1], [0, 1, a, 1]]),
            (1, &[[0, 1, 1, 1], [0, 1, b, 1]]),
        ])
    }

    pub fn big_q(&self, a: u32) -> Result<FormalSum> {
        self.sum(&[
            (1, &[[1, 1, 0, 1], [1, a, 0, 1], [1, 0, 0, 1]]),
            (-1, &[[0, 1, 1, 1], [0, 1, a, 1], [1, 0, 0, 1]]),
        ])
    }

    /// `Q_a` with seventh lines `e3+e4` and `e1+e2`; its differences bound `R` on the nose.
    pub fn big_q_corrected(&self, a: u32) -> Result<FormalSum> {
        self.sum(&[
            (1, &[[1, 1, 0, 1], [1, a, 0, 1], [0, 0, 1, 1]]),
            (-1, &[[0, 1, 1, 1], [0, 1, a, 1], [1, 1, 0, 0]]),
        ])
    }

    pub fn n(&self, a: u32, b: u32) -> Result<FormalSum> {
        self.sum(&[(1, &[[1, 0, 0, 1], [1, 0, 0, a]]), (-1, &[[1, 0, 0, 1], [1, 0, 0, b]])])
    }

    pub fn p(&self, a: u32) -> Result<FormalSum> {
        self.sum(&[(1, &[[0, 0, 1, 1], [0, 0, a, 1]])])
    }

    pub fn big_o(&self, a: u32, b: u32) -> Result<FormalSum> {
        self.sum(&[
            (1, &[[1, 0, 0, 1], [1, 0, 0, a], [0, 1, 1, 0]]),
            (-1, &[[1, 0, 0, 1], [1, 0, 0, b], [0, 1, 1, 0]]),
        ])
    }

    pub fn big_m(&self, a: u32) -> Result<FormalSum> {
        self.sum(&[(1, &[[0, 0, 1, 1], [0, 0, a, 1], [1, 1, 0, 0]])])
    }

    fn boundary(&self, s: &FormalSum) -> Result<FormalSum> {
        s.boundary(self.k, N)
    }

    /// `∂X_{a,b,c}` and the displayed right-hand side.
    pub fn identity_x(&self, a: u32, b: u32, c: u32) -> Result<(FormalSum, FormalSum)> {
        let ab = self.k.sub(a, b);
        self.x_with(a, b, c, ab)
    }

    /// As `identity_x` with the second `v` read as `v_{(a−b)/(a−c), (a−b)/a}`.
    pub fn identity_x_corrected(&self, a: u32, b: u32, c: u32) -> Result<(FormalSum, FormalSum)> {
        let h = self.k.div(self.k.sub(a, b), a);
        self.x_with(a, b, c, h)
    }

    fn x_with(&self, a: u32, b: u32, c: u32, h: u32) -> Result<(FormalSum, FormalSum)> {
        let k = self.k;
        let (ob, oc) = (self.one_minus(b), self.one_minus(c));
        let (ab, ac) = (k.sub(a, b), k.sub(a, c));
        let mut rhs = FormalSum::new();
        rhs.add_sum(1, &self.v(k.div(ob, oc), ob)?);
        rhs.add_sum(-1, &self.v(k.div(ab, ac), h)?);
        rhs.add_sum(1, &self.u(k.div(ob, ab))?);
        rhs.add_sum(-1, &self.u(k.div(oc, ac))?);
        rhs.add_sum(1, &self.u(self.inv(a))?);
        rhs.add_sum(1, &self.x(a, b, c)?);
        Ok((self.boundary(&self.big_x(a, b, c)?)?, rhs))
    }

    pub fn identity_vu(&self, l: u32) -> Result<(FormalSum, FormalSum)> {
        Ok((self.boundary(&self.w_u(l)?)?, self.u(l)?))
    }

    fn w_u(&self, l: u32) -> Result<FormalSum> {
        let mut w = self.big_v(l)?;
        w.add_sum(-1, &self.big_u(l)?);
        Ok(w)
    }

    /// Terms of `∂(T_{g,h} − T_{p,q}) − (v_{g,h} − v_{p,q})` as `(coefficient, kind, parameter)`.
    fn t_terms(&self, g: u32, h: u32, p: u32, q: u32) -> [(i64, char, u32); 8] {
        let k = self.k;
        [
            (-1, 's', self.inv(self.one_minus(h))),
            (1, 's', k.div(g, k.sub(g, h))),
            (1, 's', self.inv(self.one_minus(q))),
            (-1, 's', k.div(p, k.sub(p, q))),
            (-1, 'z', k.div(self.one_minus(h), k.sub(g, h))),
            (1, 'z', k.div(self.one_minus(q), k.sub(p, q))),
            (1, 'y', self.inv(g)),
            (-1, 'y', self.inv(p)),
        ]
    }

    pub fn identity_t(&self, g: u32, h: u32, p: u32, q: u32) -> Result<(FormalSum, FormalSum)> {
        let mut lhs = self.big_t(g, h)?;
        lhs.add_sum(-1, &self.big_t(p, q)?);
        let mut rhs = FormalSum::new();
        for (c, kind, a) in self.t_terms(g, h, p, q) {
            let term = match kind {
                's' => self.s(a)?,
                'z' => self.z(a)?,
                _ => self.y(a)?,
            };
            rhs.add_sum(c, &term);
        }
        rhs.add_sum(1, &self.v(g, h)?);
        rhs.add_sum(-1, &self.v(p, q)?);
        Ok((self.boundary(&lhs)?, rhs))
    }

    fn w_y(&self, a: u32) -> Result<FormalSum> {
        let mut w = self.big_y(a)?;
        w.add_sum(1, &self.big_y_prime(a)?);
        w.add_sum(-2, &self.big_v(self.inv(a))?);
        Ok(w)
    }

    pub fn identity_y(&self, a: u32) -> Result<(FormalSum, FormalSum)> {
        Ok((self.boundary(&self.w_y(a)?)?, self.y(a)?))
    }

    fn w_z(&self, a: u32) -> Result<FormalSum> {
        let mut w = self.big_v(a)?;
        w.add_sum(-1, &self.big_z(a)?);
        Ok(w)
    }

    pub fn identity_z(&self, a: u32) -> Result<(FormalSum, FormalSum)> {
        Ok((self.boundary(&self.w_z(a)?)?, self.z(a)?))
    }

    pub fn identity_s(&self, a: u32, b: u32) -> Result<(FormalSum, FormalSum)> {
        let mut lhs = self.big_s(a)?;
        lhs.add_sum(-1, &self.big_s(b)?);
        let mut rhs = self.r(self.inv(self.one_minus(a)), self.inv(self.one_minus(b)))?;
        rhs.add_sum(1, &self.s(a)?);
        rhs.add_sum(-1, &self.s(b)?);
        Ok((self.boundary(&lhs)?, rhs))
    }

    pub fn identity_q(&self, a: u32, b: u32) -> Result<(FormalSum, FormalSum)> {
        let mut lhs = self.big_q(a)?;
        lhs.add_sum(-1, &self.big_q(b)?);
        let (ia, ib) = (self.inv(self.one_minus(a)), self.inv(self.one_minus(b)));
        let mut rhs = self.n(ia, ib)?;
        rhs.add_sum(1, &self.p(ia)?);
        rhs.add_sum(1, &self.p(ib)?);
        rhs.add_sum(1, &self.r(a, b)?);
        Ok((self.boundary(&lhs)?, rhs))
    }

    pub fn identity_q_corrected(&self, a: u32, b: u32) -> Result<(FormalSum, FormalSum)> {
        let mut lhs = self.big_q_corrected(a)?;
        lhs.add_sum(-1, &self.big_q_corrected(b)?);
        Ok((self.boundary(&lhs)?, self.r(a, b)?))
    }

    pub fn identity_o(&self, a: u32, b: u32) -> Result<(FormalSum, FormalSum)> {
        Ok((self.boundary(&self.big_o(a, b)?)?, self.n(a, b)?))
    }

    pub fn identity_m(&self, a: u32) -> Result<(FormalSum, FormalSum)> {
        Ok((self.boundary(&self.big_m(a)?)?, self.p(a)?))
    }

    /// Chain with boundary `R_{a,b}`.
    fn w_r(&self, a: u32, b: u32) -> Result<FormalSum> {
        let mut w = self.big_q_corrected(a)?;
        w.add_sum(-1, &self.big_q_corrected(b)?);
        Ok(w)
    }

    /// Chain with boundary `s_a − s_b`.
    fn w_s(&self, a: u32, b: u32) -> Result<FormalSum> {
        let mut w = self.big_s(a)?;
        w.add_sum(-1, &self.big_s(b)?);
        w.add_sum(-1, &self.w_r(self.inv(self.one_minus(a)), self.inv(self.one_minus(b)))?);
        Ok(w)
    }

    /// Chain with boundary `v_{g,h} − v_{p,q}`.
    fn w_v(&self, g: u32, h: u32, p: u32, q: u32) -> Result<FormalSum> {
        let mut w = self.big_t(g, h)?;
        w.add_sum(-1, &self.big_t(p, q)?);
        let terms = self.t_terms(g, h, p, q);
        let base = terms[0].2;
        for (c, kind, a) in terms {
            match kind {
                's' if a != base => w.add_sum(-c, &self.w_s(a, base)?),
                's' => {}
                'z' => w.add_sum(-c, &self.w_z(a)?),
                _ => w.add_sum(-c, &self.w_y(a)?),
            }
        }
        Ok(w)
    }

    /// A 7-chain whose boundary is `x_{a,b,c}`, assembled from the identities above.
    pub fn witness_x(&self, a: u32, b: u32, c: u32) -> Result<FormalSum> {
        let k = self.k;
        let (ob, oc) = (self.one_minus(b), self.one_minus(c));
        let (ab, ac) = (k.sub(a, b), k.sub(a, c));
        let mut w = self.big_x(a, b, c)?;
        w.add_sum(-1, &self.w_v(k.div(ob, oc), ob, k.div(ab, ac), k.div(ab, a))?);
        w.add_sum(-1, &self.w_u(k.div(ob, ab))?);
        w.add_sum(1, &self.w_u(k.div(oc, ac))?);
        w.add_sum(-1, &self.w_u(self.inv(a))?);
        Ok(w)
    }

    pub fn boundary_of(&self, s: &FormalSum) -> Result<FormalSum> {
        self.boundary(s)
    }
}

/// Outcome of one identity at one parameter assignment.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub identity: &'static str,
    pub params: Vec<u32>,
    pub holds: bool,
    /// Number of orbits where the two sides differ.
    pub residual: usize,
}

fn residual(lhs: &FormalSum, rhs: &FormalSum) -> usize {
    let mut d = lhs.clone();
    d.add_sum(-1, rhs);
    d.0.len()
}

/// Pairwise distinct elements of `F^*∖{1}`.
fn distinct(k: &PrimeField, m: usize) -> Vec<Vec<u32>> {
    let units: Vec<u32> = k.nontrivial_units().collect();
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u32>| {
                units
                    .iter()
                    .filter(|a| !p.contains(a))
                    .map(|&a| {
                        let mut v = p.clone();
                        v.push(a);
                        v
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    out
}

/// Every identity over every admissible parameter assignment.
pub fn step3_checks(q: u32) -> Result<Vec<IdentityCheck>> {
    let ch = Chains::new(q)?;
    let k = ch.field();
    let mut jobs: Vec<(&'static str, Vec<u32>)> = Vec::new();
    for p in distinct(k, 3) {
        jobs.push(("X", p.clone()));
        jobs.push(("X corrected", p));
    }
    for p in distinct(k, 1) {
        jobs.push(("V-U", p.clone()));
        jobs.push(("Y+Y'-2V", p.clone()));
        jobs.push(("V-Z", p.clone()));
        jobs.push(("M", p));
    }
    let pairs = distinct(k, 2);
    for p in &pairs {
        jobs.push(("S-S'", p.clone()));
        jobs.push(("Q-Q'", p.clone()));
        jobs.push(("Q-Q' corrected", p.clone()));
        jobs.push(("O", p.clone()));
    }
    for p in &pairs {
        for r in &pairs {
            if p != r {
                jobs.push(("T-T'", [p.as_slice(), r.as_slice()].concat()));
            }
        }
    }
    jobs.into_par_iter()
        .map(|(name, p)| {
            let (lhs, rhs) = match name {
                "X" => ch.identity_x(p[0], p[1], p[2])?,
                "X corrected" => ch.identity_x_corrected(p[0], p[1], p[2])?,
                "V-U" => ch.identity_vu(p[0])?,
                "Y+Y'-2V" => ch.identity_y(p[0])?,
                "V-Z" => ch.identity_z(p[0])?,
                "M" => ch.identity_m(p[0])?,
                "S-S'" => ch.identity_s(p[0], p[1])?,
                "Q-Q'" => ch.identity_q(p[0], p[1])?,
                "Q-Q' corrected" => ch.identity_q_corrected(p[0], p[1])?,
                "O" => ch.identity_o(p[0], p[1])?,
                _ => ch.identity_t(p[0], p[1], p[2], p[3])?,
            };
            let residual = residual(&lhs, &rhs);
            Ok(IdentityCheck {
                identity: name,
                params: p,
                holds: residual == 0,
                residual,
            })
        })
        .collect()
}

/// For each admissible `(a,b,c)`, whether the assembled chain has boundary `x_{a,b,c}`.
pub fn witness_checks(q: u32) -> Result<Vec<IdentityCheck>> {
    let ch = Chains::new(q)?;
    distinct(ch.field(), 3)
        .into_par_iter()
        .map(|p| {
            let w = ch.witness_x(p[0], p[1], p[2])?;
            let r = residual(&ch.boundary_of(&w)?, &ch.x(p[0], p[1], p[2])?);
            Ok(IdentityCheck {
                identity: "x-witness",
                params: p,
                holds: r == 0,
                residual: r,
            })
        })
        .collect()
}

/// The subgroup of `H_6(C_*(F^4)_{GL_4})` spanned by the classes of the 6-tuples `x_{a,b,c}`.
#[derive(Clone, Debug, Serialize)]
pub struct XSubgroup {
    pub q: u32,
    pub triples: usize,
    pub homology: AbelianGroupStructure,
    /// `H_6` modulo the classes.
    pub quotient: AbelianGroupStructure,
    /// Rank of the span after tensoring with `Q`.
    pub rank: usize,
    /// Order of the span when `H_6` is finite.
    pub order: Option<Int>,
    /// Triples whose witness chain bounds `x_{a,b,c}` in `D`.
    pub bounding_in_d: usize,
}

pub fn x_subgroup(q: u32, opts: &BuildOptions) -> Result<XSubgroup> {
    let ch = Chains::new(q)?;
    let triples = distinct(ch.field(), 3);
    if triples.is_empty() {
        return Err(Error::Invalid(format!("no admissible (a,b,c) over F_{q}")));
    }
    let c = build_complex(ComplexKind::C, N, q, 7, opts)?;
    let d6 = c.chain().boundary(6)?;
    let d7 = c.boundary_matrix(7)?;
    let mut cols: Vec<Vec<(usize, Int)>> = (0..d7.cols()).map(|j| d7.column(j).to_vec()).collect();
    for p in &triples {
        let terms: Vec<(Int, Vec<Line>)> = ch.x(p[0], p[1], p[2])?.0.into_iter().map(|(t, v)| (v, t)).collect();
        let v = c.chain_vector(&terms)?;
        cols.push(v.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect());
    }
    let spanned = SparseIntMatrix::from_columns(c.dim(6), cols)?;
    let homology = HomologyPresentation::new(&d6, &d7)?.structure;
    let quotient = HomologyPresentation::new(&d6, &spanned)?.structure;
    let rank = homology.rank - quotient.rank;
    let order = (homology.rank == 0).then(|| {
        let prod = |s: &AbelianGroupStructure| {
            s.torsion.iter().fold(Int::one(), |mut a, d| {
                a *= d;
                a
            })
        };
        prod(&homology).div_rem(&prod(&quotient)).0
    });
    let bounding_in_d = witness_checks(q)?.iter().filter(|w| w.holds).count();
    Ok(XSubgroup {
        q,
        triples: triples.len(),
        homology,
        quotient,
        rank,
        order,
        bounding_in_d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_examples_at_seven() {
        let ch = Chains::new(7).unwrap();
        for l in 2..7 {
            let (a, b) = ch.identity_vu(l).unwrap();
            assert_eq!(a, b, "V-U at {l}");
            let (a, b) = ch.identity_m(l).unwrap();
            assert_eq!(a, b, "M at {l}");
        }
        let (a, b) = ch.identity_o(2, 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn x_is_a_cycle() {
        let ch = Chains::new(7).unwrap();
        assert!(ch.boundary_of(&ch.x(2, 3, 4).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn witnesses_bound_x() {
        for q in [5, 7] {
            assert!(witness_checks(q).unwrap().iter().all(|c| c.holds), "q={q}");
        }
    }

    #[test]
    fn displayed_x_differs_by_one_parameter() {
        let ch = Chains::new(7).unwrap();
        let (l, r) = ch.identity_x(2, 3, 4).unwrap();
        assert_ne!(l, r);
        let (l, r) = ch.identity_x_corrected(2, 3, 4).unwrap();
        assert_eq!(l, r);
    }

    #[test]
    fn x_subgroup_at_five() {
        let x = x_subgroup(5, &BuildOptions::default()).unwrap();
        assert_eq!(x.triples, 6);
        assert_eq!(x.bounding_in_d, 6);
        assert!(x.rank <= x.homology.rank);
    }
}
