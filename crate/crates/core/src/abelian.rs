//! Homology of finitely generated abelian groups with explicit bar cycles.
//!
//! Classes live in the coinvariants of the tensor product of periodic
//! resolutions of the cyclic factors. Bar chains are compared with it through
//! chain maps built from contracting homotopies on both sides.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::homology::{AbelianGroupStructure, ChainComplex, HomologyPresentation};
use crate::int::Int;
use crate::sparse::SparseIntMatrix;

pub type Elem = Vec<i64>;

/// `Z/m_1 × … × Z/m_s`, with `m_j = 0` for a free factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FinAbGroup {
    orders: Vec<u64>,
}

impl FinAbGroup {
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        if orders.iter().any(|&m| m == 1) {
            return Err(Error::Invalid("trivial cyclic factor".into()));
        }
        Ok(FinAbGroup { orders })
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn ngens(&self) -> usize {
        self.orders.len()
    }

    pub fn is_finite(&self) -> bool {
        self.orders.iter().all(|&m| m != 0)
    }

    pub fn zero(&self) -> Elem {
        vec![0; self.orders.len()]
    }

    pub fn reduce(&self, mut g: Elem) -> Elem {
        for (x, &m) in g.iter_mut().zip(&self.orders) {
            if m != 0 {
                *x = x.rem_euclid(m as i64);
            }
        }
        g
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Elem {
        self.reduce(a.iter().zip(b).map(|(x, y)| x + y).collect())
    }

    pub fn neg(&self, a: &[i64]) -> Elem {
        self.reduce(a.iter().map(|x| -x).collect())
    }

    /// All elements of a finite group.
    pub fn elements(&self) -> Result<Vec<Elem>> {
        if !self.is_finite() {
            return Err(Error::Invalid("infinite group has no element list".into()));
        }
        let mut out = vec![Vec::new()];
        for &m in &self.orders {
            out = out
                .into_iter()
                .flat_map(|p: Elem| {
                    (0..m as i64).map(move |x| {
                        let mut v = p.clone();
                        v.push(x);
                        v
                    })
                })
                .collect();
        }
        Ok(out)
    }

    /// `A × B`.
    pub fn product(&self, other: &FinAbGroup) -> FinAbGroup {
        let mut orders = self.orders.clone();
        orders.extend_from_slice(&other.orders);
        FinAbGroup { orders }
    }
}

/// Formal integer combination of bar tuples `[g_1|…|g_n]` in coinvariants.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BarChain {
    pub degree: usize,
    pub terms: BTreeMap<Vec<Elem>, Int>,
}

impl BarChain {
    pub fn new(degree: usize) -> Self {
        BarChain {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, c: &Int, t: Vec<Elem>) {
        debug_assert_eq!(t.len(), self.degree);
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(t.clone()).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&t);
        }
    }

    pub fn add_chain(&mut self, c: &Int, other: &BarChain) {
        for (t, v) in &other.terms {
            self.add_term(&(c * v), t.clone());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Bar differential with trivial coefficients.
    pub fn boundary(&self, g: &FinAbGroup) -> BarChain {
        let n = self.degree;
        let mut out = BarChain::new(n.saturating_sub(1));
        if n == 0 {
            return out;
        }
        for (t, c) in &self.terms {
            out.add_term(c, t[1..].to_vec());
            for i in 1..n {
                let mut f = t[..i - 1].to_vec();
                f.push(g.add(&t[i - 1], &t[i]));
                f.extend_from_slice(&t[i + 1..]);
                let s = if i % 2 == 0 { c.clone() } else { -c };
                out.add_term(&s, f);
            }
            let s = if n % 2 == 0 { c.clone() } else { -c };
            out.add_term(&s, t[..n - 1].to_vec());
        }
        out
    }

    /// `f_*` on tuples.
    pub fn map(&self, f: &Hom) -> BarChain {
        let mut out = BarChain::new(self.degree);
        for (t, c) in &self.terms {
            out.add_term(c, t.iter().map(|x| f.apply(x)).collect());
        }
        out
    }
}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    if n == 0 {
        return vec![(Vec::new(), true)];
    }
    let mut out = Vec::new();
    for (p, even) in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            // inserting at pos shifts n-1 past (n-1-pos) entries
            let flips = n - 1 - pos;
            out.push((q, even == (flips % 2 == 0)));
        }
    }
    out
}

/// `Σ_σ sign(σ)[g_σ(1)|…|g_σ(n)]`.
pub fn cycle_c(g: &FinAbGroup, gs: &[Elem]) -> BarChain {
    let mut out = BarChain::new(gs.len());
    for (p, even) in permutations(gs.len()) {
        let t: Vec<Elem> = p.iter().map(|&i| g.reduce(gs[i].clone())).collect();
        out.add_term(&Int::from(if even { 1 } else { -1 }), t);
    }
    out
}

/// A homomorphism given by the images of the standard generators.
#[derive(Clone, Debug)]
pub struct Hom {
    pub src: FinAbGroup,
    pub tgt: FinAbGroup,
    images: Vec<Elem>,
}

impl Hom {
    pub fn new(src: &FinAbGroup, tgt: &FinAbGroup, images: Vec<Elem>) -> Result<Self> {
        if images.len() != src.ngens() || images.iter().any(|x| x.len() != tgt.ngens()) {
            return Err(Error::Dimension("one image per source generator".into()));
        }
        for (img, &m) in images.iter().zip(src.orders()) {
            let scaled: Elem = img.iter().map(|x| x * m as i64).collect();
            if tgt.reduce(scaled) != tgt.zero() {
                return Err(Error::Invalid("images do not respect the relations".into()));
            }
        }
        let images = images.into_iter().map(|x| tgt.reduce(x)).collect();
        Ok(Hom {
            src: src.clone(),
            tgt: tgt.clone(),
            images,
        })
    }

    pub fn identity(g: &FinAbGroup) -> Self {
        let images = (0..g.ngens())
            .map(|i| {
                let mut e = g.zero();
                e[i] = 1;
                e
            })
            .collect();
        Hom {
            src: g.clone(),
            tgt: g.clone(),
            images,
        }
    }

    pub fn apply(&self, x: &[i64]) -> Elem {
        let mut out = self.tgt.zero();
        for (xi, img) in x.iter().zip(&self.images) {
            for (o, v) in out.iter_mut().zip(img) {
                *o += xi * v;
            }
        }
        self.tgt.reduce(out)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Hom) -> Result<Hom> {
        let images = self.images.iter().map(|x| other.apply(x)).collect();
        Hom::new(&self.src, &other.tgt, images)
    }
}

/// Class coordinates with respect to the generators of a fixed presentation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct HClass {
    pub degree: usize,
    pub coords: Vec<Int>,
}

impl HClass {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

/// Group-ring element of one cyclic factor: exponent to coefficient.
type Laurent = BTreeMap<i64, Int>;

fn laurent_add(acc: &mut Laurent, shift: i64, c: &Int, x: &Laurent, m: u64) {
    for (e, v) in x {
        let mut k = e + shift;
        if m != 0 {
            k = k.rem_euclid(m as i64);
        }
        let slot = acc.entry(k).or_default();
        *slot += &(c * v);
        if slot.is_zero() {
            acc.remove(&k);
        }
    }
}

/// `1 + t + … + t^{i-1}`, or `-(t^i + … + t^{-1})` for negative `i`.
fn partial_norm(i: i64) -> Vec<(i64, i64)> {
    if i >= 0 {
        (0..i).map(|j| (j, 1)).collect()
    } else {
        (i..0).map(|j| (j, -1)).collect()
    }
}

/// Periodic resolution of one cyclic factor with its contracting homotopy.
#[derive(Debug)]
struct CyclicFactor {
    m: u64,
    phi: Mutex<HashMap<Vec<i64>, Laurent>>,
}

impl CyclicFactor {
    fn new(m: u64) -> Self {
        CyclicFactor {
            m,
            phi: Mutex::new(HashMap::new()),
        }
    }

    fn max_degree(&self) -> usize {
        if self.m == 0 {
            1
        } else {
            usize::MAX
        }
    }

    /// `s_k` on `Laurent · e_k`, landing in degree `k + 1`.
    fn homotopy(&self, k: usize, x: &Laurent) -> Laurent {
        let mut out = Laurent::new();
        if k + 1 > self.max_degree() {
            return out;
        }
        for (&i, c) in x {
            if k % 2 == 0 {
                for (j, s) in partial_norm(i) {
                    laurent_add(&mut out, j, &(c * &Int::from(s)), &Laurent::from([(0, Int::one())]), self.m);
                }
            } else if i == self.m as i64 - 1 {
                laurent_add(&mut out, 0, c, &Laurent::from([(0, Int::one())]), self.m);
            }
        }
        out
    }

    /// Comparison map from the bar resolution, on a basis tuple.
    fn phi(&self, h: &[i64]) -> Laurent {
        if let Some(v) = self.phi.lock().expect("memo").get(h) {
            return v.clone();
        }
        let k = h.len();
        let v = if k == 0 {
            Laurent::from([(0, Int::one())])
        } else {
            let m = self.m;
            let red = |x: i64| if m == 0 { x } else { x.rem_euclid(m as i64) };
            let mut d = Laurent::new();
            laurent_add(&mut d, h[0], &Int::one(), &self.phi(&h[1..]), m);
            for i in 1..k {
                let mut f = h[..i - 1].to_vec();
                f.push(red(h[i - 1] + h[i]));
                f.extend_from_slice(&h[i + 1..]);
                let s = Int::from(if i % 2 == 0 { 1 } else { -1 });
                laurent_add(&mut d, 0, &s, &self.phi(&f), m);
            }
            let s = Int::from(if k % 2 == 0 { 1 } else { -1 });
            laurent_add(&mut d, 0, &s, &self.phi(&h[..k - 1]), m);
            self.homotopy(k - 1, &d)
        };
        self.phi.lock().expect("memo").insert(h.to_vec(), v.clone());
        v
    }

    /// Augmentation of `phi`.
    fn eps_phi(&self, h: &[i64]) -> Int {
        if h.len() > self.max_degree() {
            return Int::zero();
        }
        self.phi(h).values().fold(Int::zero(), |a, b| &a + b)
    }

    /// Coefficient of `d e_k = r · e_{k-1}` as group-ring terms.
    fn differential(&self, k: usize) -> Vec<(i64, i64)> {
        if k % 2 == 1 {
            vec![(1, 1), (0, -1)]
        } else {
            (0..self.m as i64).map(|j| (j, 1)).collect()
        }
    }

    /// The same differential after taking coinvariants.
    fn coinvariant_differential(&self, k: usize) -> i64 {
        if k % 2 == 0 && k >= 2 {
            self.m as i64
        } else {
            0
        }
    }
}

fn compositions(n: usize, caps: &[usize]) -> Vec<Vec<usize>> {
    if caps.is_empty() {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=n.min(caps[0]) {
        for mut rest in compositions(n - first, &caps[1..]) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Bar element over `Z[G]`: `(g, [g_1|…|g_n])` with coefficient.
type BarModule = BTreeMap<(Elem, Vec<Elem>), Int>;

/// Homology of one group through a fixed degree, with comparison maps.
#[derive(Debug)]
pub struct GroupHomology {
    group: FinAbGroup,
    max_deg: usize,
    factors: Vec<CyclicFactor>,
    bases: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
    complex: ChainComplex,
    pres: Vec<HomologyPresentation>,
    psi: Mutex<HashMap<Vec<usize>, BarModule>>,
}

impl GroupHomology {
    /// Small resolution through `max_deg` (presentations for `H_0..=H_max_deg`).
    pub fn new(group: &FinAbGroup, max_deg: usize) -> Result<Self> {
        if max_deg > 6 {
            return Err(Error::DegreeOutOfRange(max_deg));
        }
        let factors: Vec<CyclicFactor> = group.orders().iter().map(|&m| CyclicFactor::new(m)).collect();
        let caps: Vec<usize> = factors.iter().map(|f| f.max_degree().min(max_deg + 1)).collect();
        let bases: Vec<Vec<Vec<usize>>> = (0..=max_deg + 1).map(|n| compositions(n, &caps)).collect();
        let index: Vec<HashMap<Vec<usize>, usize>> = bases
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect())
            .collect();
        let mut bds = Vec::new();
        for n in 1..=max_deg + 1 {
            let mut cols = Vec::new();
            for kk in &bases[n] {
                let mut col = Vec::new();
                let mut sign = 1i64;
                for (j, f) in factors.iter().enumerate() {
                    let c = f.coinvariant_differential(kk[j]);
                    if c != 0 {
                        let mut t = kk.clone();
                        t[j] -= 1;
                        col.push((index[n - 1][&t], Int::from(sign * c)));
                    }
                    if kk[j] % 2 == 1 {
                        sign = -sign;
                    }
                }
                cols.push(col);
            }
            bds.push(SparseIntMatrix::from_columns(bases[n - 1].len(), cols)?);
        }
        let complex = ChainComplex::new(bases.iter().map(|b| b.len()).collect(), bds)?;
        let pres = (0..=max_deg).map(|n| complex.present(n)).collect::<Result<Vec<_>>>()?;
        Ok(GroupHomology {
            group: group.clone(),
            max_deg,
            factors,
            bases,
            index,
            complex,
            pres,
            psi: Mutex::new(HashMap::new()),
        })
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn max_degree(&self) -> usize {
        self.max_deg
    }

    /// Multi-indices spanning degree `n` of the small complex.
    pub fn basis(&self, n: usize) -> &[Vec<usize>] {
        &self.bases[n]
    }

    pub fn small_complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn presentation(&self, n: usize) -> Result<&HomologyPresentation> {
        self.pres.get(n).ok_or(Error::DegreeOutOfRange(n))
    }

    pub fn structure(&self, n: usize) -> Result<AbelianGroupStructure> {
        Ok(self.presentation(n)?.structure.clone())
    }

    /// Image in the small complex of a bar chain (no cycle check).
    pub fn small_chain(&self, ch: &BarChain) -> Result<Vec<Int>> {
        let n = ch.degree;
        if n > self.max_deg {
            return Err(Error::DegreeOutOfRange(n));
        }
        let mut out = vec![Int::zero(); self.bases[n].len()];
        for (t, c) in &ch.terms {
            for (bi, kk) in self.bases[n].iter().enumerate() {
                let mut prod = c.clone();
                let mut start = 0;
                for (j, f) in self.factors.iter().enumerate() {
                    let slice: Vec<i64> = t[start..start + kk[j]].iter().map(|g| g[j]).collect();
                    start += kk[j];
                    prod = &prod * &f.eps_phi(&slice);
                    if prod.is_zero() {
                        break;
                    }
                }
                out[bi] += &prod;
            }
        }
        Ok(out)
    }

    /// Class of a bar cycle.
    pub fn bar_to_small(&self, ch: &BarChain) -> Result<HClass> {
        if !ch.boundary(&self.group).is_zero() {
            return Err(Error::NotACycle);
        }
        let z = self.small_chain(ch)?;
        self.class_of_small(ch.degree, &z)
    }

    pub fn class_of_small(&self, n: usize, z: &[Int]) -> Result<HClass> {
        Ok(HClass {
            degree: n,
            coords: self.presentation(n)?.coordinates(z)?,
        })
    }

    /// Small-complex cycle representing a class.
    pub fn representative(&self, x: &HClass) -> Result<Vec<Int>> {
        let p = self.presentation(x.degree)?;
        if x.coords.len() != p.ngens() {
            return Err(Error::Dimension("class has the wrong number of coordinates".into()));
        }
        let mut z = vec![Int::zero(); self.bases[x.degree].len()];
        for (c, g) in x.coords.iter().zip(&p.generators) {
            for (zi, gi) in z.iter_mut().zip(g) {
                *zi += &(c * gi);
            }
        }
        Ok(z)
    }

    /// Generator `i` of `H_n` as a class.
    pub fn generator(&self, n: usize, i: usize) -> Result<HClass> {
        let p = self.presentation(n)?;
        let mut coords = vec![Int::zero(); p.ngens()];
        *coords.get_mut(i).ok_or(Error::IndexOutOfRange { index: i, len: p.ngens() })? = Int::one();
        Ok(HClass { degree: n, coords })
    }

    pub fn zero_class(&self, n: usize) -> Result<HClass> {
        Ok(HClass {
            degree: n,
            coords: vec![Int::zero(); self.presentation(n)?.ngens()],
        })
    }

    pub fn add(&self, x: &HClass, y: &HClass) -> Result<HClass> {
        let p = self.presentation(x.degree)?;
        if x.degree != y.degree {
            return Err(Error::Dimension("adding classes of different degrees".into()));
        }
        let coords = x
            .coords
            .iter()
            .zip(&y.coords)
            .zip(&p.orders)
            .map(|((a, b), o)| {
                let s = a + b;
                if o.is_zero() {
                    s
                } else {
                    s.rem_euclid(o)
                }
            })
            .collect();
        Ok(HClass {
            degree: x.degree,
            coords,
        })
    }

    pub fn scale(&self, c: i64, x: &HClass) -> Result<HClass> {
        let z: Vec<Int> = self.representative(x)?.iter().map(|v| v * &Int::from(c)).collect();
        self.class_of_small(x.degree, &z)
    }

    /// Chain map from the small resolution back to the bar resolution.
    fn psi_basis(&self, kk: &[usize]) -> BarModule {
        if let Some(v) = self.psi.lock().expect("memo").get(kk) {
            return v.clone();
        }
        let zero = self.group.zero();
        let v = if kk.iter().all(|&k| k == 0) {
            BarModule::from([((zero.clone(), Vec::new()), Int::one())])
        } else {
            let mut d = BarModule::new();
            let mut sign = 1i64;
            for (j, f) in self.factors.iter().enumerate() {
                if kk[j] > 0 {
                    let mut t = kk.to_vec();
                    t[j] -= 1;
                    let lower = self.psi_basis(&t);
                    for (shift, c) in f.differential(kk[j]) {
                        let mut g = zero.clone();
                        g[j] = shift;
                        let coef = Int::from(sign * c);
                        for ((h, tup), v) in &lower {
                            let key = (self.group.add(&g, h), tup.clone());
                            let slot = d.entry(key.clone()).or_default();
                            *slot += &(&coef * v);
                            if slot.is_zero() {
                                d.remove(&key);
                            }
                        }
                    }
                }
                if kk[j] % 2 == 1 {
                    sign = -sign;
                }
            }
            // contracting homotopy g[g_1|…|g_n] -> [g|g_1|…|g_n]
            let mut out = BarModule::new();
            for ((g, tup), c) in d {
                let mut t = vec![g];
                t.extend(tup);
                let key = (zero.clone(), t);
                let slot = out.entry(key.clone()).or_default();
                *slot += &c;
                if slot.is_zero() {
                    out.remove(&key);
                }
            }
            out
        };
        self.psi.lock().expect("memo").insert(kk.to_vec(), v.clone());
        v
    }

    /// Bar cycle representing a class.
    pub fn small_to_bar(&self, x: &HClass) -> Result<BarChain> {
        let z = self.representative(x)?;
        let mut out = BarChain::new(x.degree);
        for (c, kk) in z.iter().zip(&self.bases[x.degree]) {
            if c.is_zero() {
                continue;
            }
            for ((_, t), v) in self.psi_basis(kk) {
                out.add_term(&(c * &v), t);
            }
        }
        Ok(out)
    }

    /// `f_*(x)` in the homology of the target group.
    pub fn induced(&self, f: &Hom, target: &GroupHomology, x: &HClass) -> Result<HClass> {
        if f.src != self.group || f.tgt != target.group {
            return Err(Error::Invalid("homomorphism does not match the groups".into()));
        }
        target.bar_to_small(&self.small_to_bar(x)?.map(f))
    }

    /// Matrix of `f_*` on the generators of `H_n`.
    pub fn induced_matrix(&self, f: &Hom, target: &GroupHomology, n: usize) -> Result<Vec<Vec<Int>>> {
        (0..self.presentation(n)?.ngens())
            .map(|i| Ok(self.induced(f, target, &self.generator(n, i)?)?.coords))
            .collect()
    }
}

/// Cross product `H_p(A) ⊗ H_q(B) → H_{p+q}(A × B)`.
pub fn shuffle_product(ha: &GroupHomology, x: &HClass, hb: &GroupHomology, y: &HClass, hab: &GroupHomology) -> Result<HClass> {
    if hab.group != ha.group.product(&hb.group) {
        return Err(Error::Invalid("product homology is for a different group".into()));
    }
    let n = x.degree + y.degree;
    let zx = ha.representative(x)?;
    let zy = hb.representative(y)?;
    let mut z = vec![Int::zero(); hab.basis(n).len()];
    for (cx, kx) in zx.iter().zip(ha.basis(x.degree)) {
        if cx.is_zero() {
            continue;
        }
        for (cy, ky) in zy.iter().zip(hb.basis(y.degree)) {
            if cy.is_zero() {
                continue;
            }
            let mut kk = kx.clone();
            kk.extend_from_slice(ky);
            let i = hab.index[n][&kk];
            z[i] += &(cx * cy);
        }
    }
    hab.class_of_small(n, &z)
}

/// Künneth prediction of `H_n` as cyclic orders, independent of any resolution.
pub fn kunneth_orders(group: &FinAbGroup, n: usize) -> Vec<Int> {
    fn cyclic(m: u64, k: usize) -> Vec<u64> {
        match (m, k) {
            (_, 0) => vec![0],
            (0, 1) => vec![0],
            (0, _) => vec![],
            (m, k) if k % 2 == 1 => vec![m],
            _ => vec![],
        }
    }
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    // orders combine: 0 means Z
    fn tensor(a: u64, b: u64) -> Option<u64> {
        Some(match (a, b) {
            (0, x) | (x, 0) => x,
            (x, y) => gcd(x, y),
        })
    }
    fn tor(a: u64, b: u64) -> Option<u64> {
        match (a, b) {
            (0, _) | (_, 0) => None,
            (x, y) => Some(gcd(x, y)),
        }
    }
    let mut table: Vec<Vec<u64>> = (0..=n).map(|k| if k == 0 { vec![0] } else { vec![] }).collect();
    for &m in group.orders() {
        let mut next: Vec<Vec<u64>> = vec![Vec::new(); n + 1];
        for (k, slot) in next.iter_mut().enumerate() {
            for i in 0..=k {
                for &a in &table[i] {
                    for &b in &cyclic(m, k - i) {
                        slot.extend(tensor(a, b));
                    }
                }
            }
            for i in 0..k {
                for &a in &table[i] {
                    for &b in &cyclic(m, k - 1 - i) {
                        slot.extend(tor(a, b));
                    }
                }
            }
        }
        table = next;
    }
    table[n].iter().filter(|&&x| x != 1).map(|&x| Int::from(x as i64)).collect()
}

/// Homology of the truncated normalized bar complex, by brute force.
pub fn brute_force_homology(group: &FinAbGroup, max_n: usize) -> Result<Vec<AbelianGroupStructure>> {
    let nonzero: Vec<Elem> = group.elements()?.into_iter().filter(|g| *g != group.zero()).collect();
    let mut bases: Vec<Vec<Vec<Elem>>> = vec![vec![Vec::new()]];
    for n in 1..=max_n + 1 {
        let mut b = Vec::new();
        for t in &bases[n - 1] {
            for g in &nonzero {
                let mut u = t.clone();
                u.push(g.clone());
                b.push(u);
            }
        }
        bases.push(b);
    }
    let mut bds = Vec::new();
    for n in 1..=max_n + 1 {
        let index: HashMap<&Vec<Elem>, usize> = bases[n - 1].iter().enumerate().map(|(i, t)| (t, i)).collect();
        let cols = bases[n]
            .iter()
            .map(|t| {
                let mut ch = BarChain::new(n);
                ch.add_term(&Int::one(), t.clone());
                ch.boundary(group)
                    .terms
                    .into_iter()
                    .filter_map(|(f, c)| index.get(&f).map(|&i| (i, c)))
                    .collect()
            })
            .collect();
        bds.push(SparseIntMatrix::from_columns(bases[n - 1].len(), cols)?);
    }
    let cx = ChainComplex::new(bases.iter().map(|b| b.len()).collect(), bds)?;
    (0..=max_n).map(|n| cx.homology(n)).collect()
}

/// Diagonal torus `(Z/(q-1))^n` written additively through discrete logs.
pub fn torus(q: u32, n: usize) -> FinAbGroup {
    FinAbGroup {
        orders: vec![q as u64 - 1; n],
    }
}

/// Exponent vector of the determinant-one diagonal `A_{i,n}` for an element of discrete log `la`.
///
/// `A_{i,n} = diag(a·I_i, a^{-i}, I_{n-i-1})` for `i < n`, `A_{n,n} = diag(a·I_{n-1}, a^{-(n-1)})`,
/// and `A_{1,1} = (a)`.
pub fn a_matrix(i: usize, n: usize, la: i64) -> Elem {
    let mut v = vec![0i64; n];
    if n == 1 {
        v[0] = la;
        return v;
    }
    let width = if i < n { i } else { n - 1 };
    for x in v.iter_mut().take(width) {
        *x = la;
    }
    v[width] = -(width as i64) * la;
    v
}

/// Coordinate permutation `x ↦ x∘σ^{-1}` on `(Z/m)^n`.
pub fn permutation_hom(g: &FinAbGroup, sigma: &[usize]) -> Result<Hom> {
    let n = g.ngens();
    if sigma.len() != n {
        return Err(Error::Dimension("permutation size differs from rank".into()));
    }
    let images = (0..n)
        .map(|i| {
            let mut e = g.zero();
            e[sigma[i]] = 1;
            e
        })
        .collect();
    Hom::new(g, g, images)
}

/// Quotient `H_n(A)_{Σ_n}` by the coordinate transpositions.
#[derive(Clone, Debug)]
pub struct SymCoinvariants {
    degree: usize,
    pres: HomologyPresentation,
}

impl SymCoinvariants {
    pub fn new(h: &GroupHomology, degree: usize) -> Result<Self> {
        let g = h.group();
        let n = g.ngens();
        let p = h.presentation(degree)?;
        let k = p.ngens();
        let mut cols: Vec<Vec<(usize, Int)>> = Vec::new();
        for (i, o) in p.orders.iter().enumerate() {
            if !o.is_zero() {
                cols.push(vec![(i, o.clone())]);
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                let mut sigma: Vec<usize> = (0..n).collect();
                sigma.swap(a, b);
                let f = permutation_hom(g, &sigma)?;
                let m = h.induced_matrix(&f, h, degree)?;
                for (j, img) in m.iter().enumerate() {
                    let mut col: Vec<(usize, Int)> = img.iter().cloned().enumerate().collect();
                    col.push((j, -Int::one()));
                    cols.push(col);
                }
            }
        }
        let rel = SparseIntMatrix::from_columns(k, cols)?;
        let pres = HomologyPresentation::new(&SparseIntMatrix::zeros(0, k), &rel)?;
        Ok(SymCoinvariants { degree, pres })
    }

    pub fn structure(&self) -> &AbelianGroupStructure {
        &self.pres.structure
    }

    pub fn project(&self, x: &HClass) -> Result<Vec<Int>> {
        if x.degree != self.degree {
            return Err(Error::DegreeOutOfRange(x.degree));
        }
        self.pres.coordinates(&x.coords)
    }
}

/// `H_n(A)_{Σ_n}` and the image of a class in it.
pub fn sym_coinvariants(h: &GroupHomology, x: &HClass) -> Result<(AbelianGroupStructure, Vec<Int>)> {
    let s = SymCoinvariants::new(h, x.degree)?;
    let coords = s.project(x)?;
    Ok((s.pres.structure, coords))
}
