//! Orbit tables of line tuples grouped by family.

use serde::Serialize;

use crate::complexes::{build_complex, BuildOptions, ComplexKind};
use crate::error::{Error, Result};
use crate::families::{family_representatives, orbit_label, FamilyTag};
use crate::lines::LineTuple;
use crate::oracle::orbit_oracle;
use crate::stabilizer::stabilizer;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassRow {
    /// Family name, or the canonical tuple of an orbit outside the lists.
    pub family: String,
    pub params: Vec<String>,
    pub count: usize,
    pub levi: Vec<String>,
}

fn rows(q: u32, orbits: Vec<(Option<FamilyTag>, LineTuple)>) -> Result<Vec<ClassRow>> {
    let order: Vec<String> = family_representatives(q)?.iter().map(|(t, _)| t.family()).collect();
    let mut keyed = Vec::new();
    for (tag, t) in orbits {
        let levi = stabilizer(&t)?.to_string();
        let (family, param, pos) = match &tag {
            Some(tag) => {
                let fam = tag.family();
                let pos = order.iter().position(|f| *f == fam).unwrap_or(order.len());
                let param = if tag.params.is_empty() && tag.sup.is_empty() {
                    String::new()
                } else {
                    tag.to_string()
                };
                (fam, param, pos)
            }
            None => (t.to_string(), String::new(), order.len()),
        };
        keyed.push((pos, family, param, levi));
    }
    keyed.sort();
    let mut out: Vec<ClassRow> = Vec::new();
    for (_, family, param, levi) in keyed {
        match out.last_mut() {
            Some(r) if r.family == family => {
                r.count += 1;
                if !param.is_empty() {
                    r.params.push(param);
                }
                if !r.levi.contains(&levi) {
                    r.levi.push(levi);
                }
            }
            _ => out.push(ClassRow {
                family,
                params: if param.is_empty() { Vec::new() } else { vec![param] },
                count: 1,
                levi: vec![levi],
            }),
        }
    }
    Ok(out)
}

/// Orbits of pairwise distinct `len`-tuples in `F_q^n`, from the canonical-form enumeration.
pub fn classify(q: u32, n: usize, len: usize, opts: &BuildOptions) -> Result<Vec<ClassRow>> {
    if len == 0 {
        return Err(Error::DegreeOutOfRange(len));
    }
    let d = build_complex(ComplexKind::D, n, q, len, opts)?;
    let orbits = d
        .basis(len)
        .iter()
        .map(|lines| {
            let t = LineTuple::new(q, n, lines.clone())?;
            let tag = if n == 4 { orbit_label(&t)?.family } else { None };
            Ok((tag, t))
        })
        .collect::<Result<Vec<_>>>()?;
    rows(q, orbits)
}

/// The same table from raw enumeration with union-find over `Stab(<e_1>, <e_2>)` in `GL_4`.
pub fn classify_exhaustive(q: u32, len: usize, merge_samples: usize, seed: u64) -> Result<Vec<ClassRow>> {
    let r = orbit_oracle(q, len, merge_samples, seed)?;
    if r.random_orbits != r.orbits {
        return Err(Error::Invalid(format!(
            "random merging left {} classes against {} generator orbits",
            r.random_orbits, r.orbits
        )));
    }
    rows(q, r.representatives)
}
