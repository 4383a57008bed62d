//! Verification suites producing report records.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::abelian::{cycle_c, torus, GroupHomology, SymCoinvariants};
use crate::complexes::BuildOptions;
use crate::error::{Error, Result};
use crate::ff::field;
use crate::milnor::{bracket_class, milnor_group, pre_bloch};
use crate::report::Record;
use crate::spectral::h1::{d1_squared_sweep, verify_h1_row};
use crate::spectral::page::q0_row;
use crate::spectral::step3::{step3_checks, witness_checks, IdentityCheck};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Step3,
    E51,
    Q0row,
    Antisym,
    Milnor,
    Prebloch,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] = [Suite::Step3, Suite::E51, Suite::Q0row, Suite::Antisym, Suite::Milnor, Suite::Prebloch];

    pub fn min_q(self) -> u32 {
        match self {
            Suite::Step3 => 7,
            Suite::E51 | Suite::Antisym | Suite::Prebloch => 5,
            Suite::Q0row | Suite::Milnor | Suite::All => 3,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Step3 => "step3",
            Suite::E51 => "e51",
            Suite::Q0row => "q0row",
            Suite::Antisym => "antisym",
            Suite::Milnor => "milnor",
            Suite::Prebloch => "prebloch",
            Suite::All => "all",
        })
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "step3" => Suite::Step3,
            "e51" => Suite::E51,
            "q0row" => Suite::Q0row,
            "antisym" => Suite::Antisym,
            "milnor" => Suite::Milnor,
            "prebloch" => Suite::Prebloch,
            "all" => Suite::All,
            _ => return Err(Error::Parse(format!("unknown suite {s}"))),
        })
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub q: u32,
    /// Ambient dimension for the bottom row; both 3 and 4 when absent.
    pub n: Option<usize>,
    pub seed: u64,
    pub build: BuildOptions,
}

/// Suites that `all` leaves out at this `q`.
pub fn skipped(suite: Suite, q: u32) -> Vec<Suite> {
    match suite {
        Suite::All => Suite::EACH.into_iter().filter(|s| q < s.min_q()).collect(),
        _ => Vec::new(),
    }
}

pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> Result<Vec<Record>> {
    field(opts.q)?;
    if opts.q < suite.min_q() {
        return Err(Error::Invalid(format!("suite {suite} needs q ≥ {}", suite.min_q())));
    }
    match suite {
        Suite::Step3 => step3(opts.q),
        Suite::E51 => e51(opts),
        Suite::Q0row => q0(opts),
        Suite::Antisym => antisym(opts),
        Suite::Milnor => milnor(opts),
        Suite::Prebloch => prebloch(opts.q),
        Suite::All => {
            let mut out = Vec::new();
            for s in Suite::EACH.into_iter().filter(|s| opts.q >= s.min_q()) {
                out.extend(run_suite(s, opts)?);
            }
            Ok(out)
        }
    }
}

fn identity_record(q: u32, c: &IdentityCheck) -> Record {
    let detail = if c.holds {
        "both sides agree".to_string()
    } else {
        format!("sides differ on {} orbits", c.residual)
    };
    Record::new(format!("step3/{}", c.identity), json!({"q": q, "params": c.params}), c.holds, detail)
}

fn step3(q: u32) -> Result<Vec<Record>> {
    let mut out: Vec<Record> = step3_checks(q)?.iter().map(|c| identity_record(q, c)).collect();
    out.extend(witness_checks(q)?.iter().map(|c| identity_record(q, c)));
    Ok(out)
}

fn e51(opts: &SuiteOptions) -> Result<Vec<Record>> {
    let q = opts.q;
    let rep = verify_h1_row(q)?;
    let mut out: Vec<Record> = rep
        .checks
        .iter()
        .map(|c| {
            let mut detail = format!("expected {}, computed {}", c.expected, c.computed);
            if !c.detail.is_empty() {
                detail.push_str("; ");
                detail.push_str(&c.detail);
            }
            Record::new(
                format!("e51/{}", c.formula),
                json!({"q": q, "source": c.source, "component": c.component, "convention": c.convention.to_string()}),
                c.matches,
                detail,
            )
        })
        .collect();
    let conventions: Vec<String> = rep.matching_conventions.iter().map(|c| c.to_string()).collect();
    out.push(Record::new(
        "e51/convention",
        json!({"q": q}),
        conventions.len() == 1,
        format!("conventions matching every pinned component: [{}]", conventions.join(", ")),
    ));
    for p in 4..=6 {
        let sweep = d1_squared_sweep(q, p, &opts.build)?;
        let bad: Vec<&str> = sweep.iter().filter(|s| s.nonzero > 0).map(|s| s.source.as_str()).collect();
        let detail = match bad.first() {
            None => format!("{} source orbits, all composites zero", sweep.len()),
            Some(s) => format!("{} of {} sources nonzero, first {s}", bad.len(), sweep.len()),
        };
        out.push(Record::new("e51/d1-squared", json!({"q": q, "p": p}), bad.is_empty(), detail));
    }
    Ok(out)
}

fn q0(opts: &SuiteOptions) -> Result<Vec<Record>> {
    let ns = match opts.n {
        Some(n) => vec![n],
        None => vec![3, 4],
    };
    let mut out = Vec::new();
    for n in ns {
        let row = q0_row(n, opts.q, &opts.build)?;
        for c in &row.cells {
            let ok = !c.predicted_zero || c.group.is_trivial();
            let mut detail = format!("{}", c.group);
            if !c.witness.is_empty() {
                detail.push_str(&format!("; witness {}", c.witness.join(" + ")));
            }
            out.push(Record::new("q0row/E2", json!({"q": opts.q, "n": n, "p": c.p}), ok, detail));
        }
        if let Some((cell, pb)) = &row.pre_bloch {
            out.push(Record::new(
                "q0row/pre-bloch",
                json!({"q": opts.q, "n": n, "p": 4}),
                cell == pb,
                format!("E2 cell {cell}, pre-Bloch group {pb}"),
            ));
        }
    }
    Ok(out)
}

const EXHAUSTIVE_TRIPLES: usize = 100;
const SAMPLED_TRIPLES: usize = 40;
const GENERIC_SAMPLES: usize = 40;

fn antisym(opts: &SuiteOptions) -> Result<Vec<Record>> {
    let q = opts.q;
    let units: Vec<u32> = (1..q).collect();
    let f = field(q)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut out = Vec::new();

    let h2 = GroupHomology::new(&torus(q, 2), 2)?;
    for &a in &units {
        for &a2 in &units {
            for &b in &units {
                let lhs = bracket_class(&h2, q, &[f.mul(a, a2), b])?;
                let rhs = h2.add(&bracket_class(&h2, q, &[a, b])?, &bracket_class(&h2, q, &[a2, b])?)?;
                out.push(Record::new(
                    "antisym/slot-additivity",
                    json!({"q": q, "slot": 1, "a": a, "a'": a2, "b": b}),
                    lhs == rhs,
                    format!("[aa',b] = {:?}", lhs.coords),
                ));
                let lhs = bracket_class(&h2, q, &[b, f.mul(a, a2)])?;
                let rhs = h2.add(&bracket_class(&h2, q, &[b, a])?, &bracket_class(&h2, q, &[b, a2])?)?;
                out.push(Record::new(
                    "antisym/slot-additivity",
                    json!({"q": q, "slot": 2, "a": a, "a'": a2, "b": b}),
                    lhs == rhs,
                    format!("[b,aa'] = {:?}", lhs.coords),
                ));
            }
        }
    }

    let t3 = torus(q, 3);
    let h3 = GroupHomology::new(&t3, 3)?;
    let sym = SymCoinvariants::new(&h3, 3)?;
    let mut triples: Vec<[u32; 3]> = Vec::new();
    for &a in &units {
        for &b in &units {
            for &c in &units {
                triples.push([a, b, c]);
            }
        }
    }
    let exhaustive = triples.len() <= EXHAUSTIVE_TRIPLES;
    if !exhaustive {
        triples.shuffle(&mut rng);
        triples.truncate(SAMPLED_TRIPLES);
        triples.sort();
    }
    for [a, b, c] in triples {
        let x = bracket_class(&h3, q, &[a, b, c])?;
        let y = bracket_class(&h3, q, &[a, c, b])?;
        let img = sym.project(&h3.add(&x, &y)?)?;
        let ok = img.iter().all(|v| v.is_zero());
        out.push(Record::new(
            "antisym/swap",
            json!({"q": q, "args": [a, b, c], "sampled": !exhaustive}),
            ok,
            format!("image in H_3(T_3)_Σ3 ≅ {}: {:?}", sym.structure(), img),
        ));
    }

    let m = q as i64 - 1;
    let el = |rng: &mut ChaCha8Rng| -> Vec<i64> { (0..3).map(|_| rng.gen_range(0..m)).collect() };
    for i in 0..GENERIC_SAMPLES {
        let (g, g2, h, k) = (el(&mut rng), el(&mut rng), el(&mut rng), el(&mut rng));
        let gg = t3.add(&g, &g2);
        let cls = |v: [&Vec<i64>; 3]| h3.bar_to_small(&cycle_c(&t3, &[v[0].clone(), v[1].clone(), v[2].clone()]));
        let lhs = cls([&gg, &h, &k])?;
        let rhs = h3.add(&cls([&g, &h, &k])?, &cls([&g2, &h, &k])?)?;
        out.push(Record::new(
            "antisym/c-multilinear",
            json!({"q": q, "sample": i, "g": g, "g'": g2, "h": h, "k": k}),
            lhs == rhs,
            format!("c(gg',h,k) = {:?}", lhs.coords),
        ));
        let swapped = h3.add(&cls([&g, &h, &k])?, &cls([&g, &k, &h])?)?;
        out.push(Record::new(
            "antisym/c-swap",
            json!({"q": q, "sample": i, "g": g, "h": h, "k": k}),
            swapped.is_zero(),
            format!("c(g,h,k) + c(g,k,h) = {:?}", swapped.coords),
        ));
    }
    Ok(out)
}

fn milnor(opts: &SuiteOptions) -> Result<Vec<Record>> {
    let q = opts.q;
    let mut out = Vec::new();
    let k1 = milnor_group(q, 1, opts.build.max_basis)?;
    let want = format!("Z/{}", q - 1);
    out.push(Record::new(
        "milnor/K1",
        json!({"q": q, "n": 1}),
        k1.structure.to_string() == want,
        format!("{} from {} generators, {} relations", k1.structure, k1.generators, k1.relations),
    ));
    for n in 2..=3 {
        match milnor_group(q, n, opts.build.max_basis) {
            Ok(k) => out.push(Record::new(
                format!("milnor/K{n}"),
                json!({"q": q, "n": n}),
                k.structure.is_trivial(),
                format!("{} from {} generators, {} relations", k.structure, k.generators, k.relations),
            )),
            Err(Error::CapExceeded(msg)) => out.push(Record::refused(format!("milnor/K{n}"), json!({"q": q, "n": n}), msg)),
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

fn prebloch(q: u32) -> Result<Vec<Record>> {
    let p = pre_bloch(q)?;
    let mut out = vec![Record::new(
        "prebloch/structure",
        json!({"q": q}),
        true,
        format!(
            "{} from {} generators, {} relations, {} instances discarded",
            p.structure,
            p.generators.len(),
            p.relations,
            p.discarded
        ),
    )];
    let f = field(q)?;
    for &x in &p.generators {
        for &y in p.generators.iter().filter(|&&y| y != x) {
            let terms = crate::milnor::five_term(f, x, y);
            if terms.iter().any(|&(_, t)| t == 0 || t == 1) {
                continue;
            }
            let bad = p.descent_failures.contains(&(x, y));
            let detail = if bad {
                "ψ-image of the relation is not in the symmetrizer subgroup".to_string()
            } else {
                "ψ-image lies in the symmetrizer subgroup".to_string()
            };
            out.push(Record::new("prebloch/psi-descent", json!({"q": q, "x": x, "y": y}), !bad, detail));
        }
    }
    out.push(Record::new(
        "prebloch/variant-descent",
        json!({"q": q, "map": "x⊗(1−x)"}),
        p.variant_failures.is_empty(),
        format!("{} instances leave the symmetrizer subgroup", p.variant_failures.len()),
    ));
    Ok(out)
}
