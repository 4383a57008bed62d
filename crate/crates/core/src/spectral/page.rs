//! First-page cells and the bottom row of the `E` spectral sequence.

use serde::Serialize;

use crate::complexes::{build_complex, BuildOptions, ComplexKind};
use crate::error::{Error, Result};
use crate::families::OrbitLabel;
use crate::homology::AbelianGroupStructure;
use crate::lines::LineTuple;
use crate::milnor::pre_bloch;
use crate::stabilizer::{stabilizer, StabilizerDescription};

/// `E¹_{p,row}`: one summand per orbit of `p`-tuples, with its stabilizer.
#[derive(Clone, Debug)]
pub struct PageCell {
    pub p: usize,
    pub row: usize,
    pub summands: Vec<(OrbitLabel, StabilizerDescription)>,
}

impl PageCell {
    /// Summands of column `p` built from the `kind` complex of `F_q^n`.
    pub fn build(kind: ComplexKind, n: usize, q: u32, p: usize, row: usize, opts: &BuildOptions) -> Result<Self> {
        let c = build_complex(kind, n, q, p, opts)?;
        let summands = (0..c.dim(p))
            .map(|i| {
                let label = c.label(p, i)?;
                let st = stabilizer(&LineTuple::new(q, n, c.basis(p)[i].clone())?)?;
                Ok((label, st))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PageCell { p, row, summands })
    }
}

/// One cell `E²_{p,0}(n)`.
#[derive(Clone, Debug, Serialize)]
pub struct RowCell {
    pub p: usize,
    pub group: AbelianGroupStructure,
    /// Whether vanishing is predicted for this `p`.
    pub predicted_zero: bool,
    /// Orbits in the support of a non-bounding cycle, when the cell is nonzero.
    pub witness: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Q0Row {
    pub n: usize,
    pub q: u32,
    pub cells: Vec<RowCell>,
    /// `(E²_{4,0}(2), pre-Bloch group)` when `n = 2`.
    pub pre_bloch: Option<(AbelianGroupStructure, AbelianGroupStructure)>,
}

impl Q0Row {
    /// Cells predicted to vanish that do not.
    pub fn deviations(&self) -> Vec<&RowCell> {
        self.cells.iter().filter(|c| c.predicted_zero && !c.group.is_trivial()).collect()
    }
}

const WITNESS_DIM: usize = 3_000;
const WITNESS_TERMS: usize = 6;

/// `E²_{p,0}(n) = H_p` of the `C` complex, for `p ≤ n+1` (and `p = 4` when `n = 2`).
pub fn q0_row(n: usize, q: u32, opts: &BuildOptions) -> Result<Q0Row> {
    if !(2..=4).contains(&n) {
        return Err(Error::Invalid(format!("q0 row needs n in 2..=4, got {n}")));
    }
    let top = if n == 2 { 4 } else { n + 1 };
    let c = build_complex(ComplexKind::C, n, q, top + 1, opts)?;
    let mut cells = Vec::new();
    for p in 0..=top {
        let group = c.homology(p)?;
        let mut witness = Vec::new();
        let small = c.dim(p) + c.dim(p + 1) + if p > 0 { c.dim(p - 1) } else { 0 } <= WITNESS_DIM;
        if !group.is_trivial() && small {
            let pres = c.chain().present(p)?;
            if let Some(z) = pres.generators.first() {
                for (i, x) in z.iter().enumerate().filter(|(_, x)| !x.is_zero()).take(WITNESS_TERMS) {
                    witness.push(format!("{x}·[{}]", LineTuple::new(q, n, c.basis(p)[i].clone())?));
                }
            }
        }
        cells.push(RowCell {
            p,
            group,
            predicted_zero: p <= n + 1,
            witness,
        });
    }
    let pre_bloch = if n == 2 && q >= 5 {
        Some((cells[4].group.clone(), pre_bloch(q)?.structure))
    } else {
        None
    };
    Ok(Q0Row { n, q, cells, pre_bloch })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stabilizer::LeviFactor;

    #[test]
    fn bottom_row_vanishes() {
        for (n, q) in [(3, 5), (4, 5)] {
            let r = q0_row(n, q, &BuildOptions::default()).unwrap();
            assert!(r.deviations().is_empty(), "n={n} q={q}");
        }
    }

    #[test]
    fn pre_bloch_cell() {
        let r = q0_row(2, 5, &BuildOptions::default()).unwrap();
        let (cell, pb) = r.pre_bloch.unwrap();
        assert_eq!(cell, pb);
        assert!(!r.cells[4].witness.is_empty());
    }

    #[test]
    fn low_columns_have_one_torus_summand() {
        for p in 1..=4 {
            let cell = PageCell::build(ComplexKind::C, 4, 5, p, 1, &BuildOptions::default()).unwrap();
            assert_eq!(cell.summands.len(), 1);
            let mut expect = vec![LeviFactor::Scalar(1); p];
            if p < 4 {
                expect.push(LeviFactor::Gl(4 - p));
            }
            let st = &cell.summands[0].1;
            let mut got = st.levi.clone();
            got.sort();
            expect.sort();
            assert_eq!(got, expect);
        }
    }
}
