//! Free resolutions over bigraded rings with zero differential, built
//! two-periodically so that the top Adams band empties out, and Tor.
//!
//! A free module is recorded by its generator bidegrees; its elements are
//! combinations of `a·g` with `a` a basis element of the ring. Odd stages
//! split off the part of the kernel in the current top Adams degree as a free
//! module on a basis of that (free abelian) group; the rest of every stage is
//! free on a generating set chosen bidegree by bidegree.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bigraded::{Bidegree, Window};
use crate::dga::{DgaError, DgaModule, DgaPresentation};
use crate::lincomb::{add_scaled, add_term, koszul, reduce, Lin};
use crate::linalg::{self, AbGroupReport, CoefficientRing, ExactMatrix, LinalgError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResolutionError {
    #[error("ring has a nonzero differential on {0}")]
    NotZeroDifferential(String),
    #[error("ring is not of Tate type: {0}")]
    NotTate(String),
    #[error("module is zero, so it has no top Adams degree")]
    NotBoundedAbove,
    #[error("data known only down to Adams degree {known}, but {needed} is required")]
    WindowInsufficient { known: i64, needed: i64 },
    #[error("kernel in the top Adams band is not free at {0}")]
    NotFree(Bidegree),
    #[error("s must be positive")]
    InvalidS,
    #[error(transparent)]
    Dga(#[from] DgaError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A graded-commutative ring in Adams graded graded abelian groups: a DGA
/// presentation whose differential vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradedRing {
    alg: DgaPresentation,
}

impl BigradedRing {
    pub fn new(alg: DgaPresentation) -> Result<Self, ResolutionError> {
        alg.validate()?;
        if let Some(i) = (0..alg.len()).find(|i| !alg.d(*i).is_empty()) {
            return Err(ResolutionError::NotZeroDifferential(alg.name(i).to_string()));
        }
        for i in 0..alg.len() {
            let b = alg.degree(i);
            if b.adams > 0 || (b.adams == 0 && i != alg.unit) {
                return Err(ResolutionError::NotTate(format!("{} in {b}", alg.name(i))));
            }
        }
        if alg.degree(alg.unit) != Bidegree::ZERO {
            return Err(ResolutionError::NotTate("unit outside (0,0)".into()));
        }
        Ok(BigradedRing { alg })
    }

    pub fn square_zero(ring: CoefficientRing, generators: &[Bidegree]) -> Result<Self, ResolutionError> {
        Self::new(DgaPresentation::square_zero(ring, generators))
    }

    pub fn presentation(&self) -> &DgaPresentation {
        &self.alg
    }

    pub fn ring(&self) -> CoefficientRing {
        self.alg.ring
    }

    pub fn len(&self) -> usize {
        self.alg.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alg.is_empty()
    }

    pub fn degree(&self, a: usize) -> Bidegree {
        self.alg.degree(a)
    }

    /// Least `B ≥ 0` with `A(k)^i = 0` for `k ≥ −s` and `i < −B`.
    pub fn band_bound(&self, s: i64) -> i64 {
        (0..self.len())
            .map(|a| self.degree(a))
            .filter(|b| b.adams >= -s)
            .map(|b| -b.coh)
            .max()
            .unwrap_or(0)
            .max(0)
    }
}

/// Element `a·g` of a free module: (ring basis index, generator index).
pub type FreeKey = (usize, usize);

/// One stage `Pᵢ` of a resolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage {
    pub generators: Vec<Bidegree>,
    /// Image of each generator: in the target module for `P₀`, in `P_{i−1}` otherwise.
    pub images: Vec<Lin<FreeKey>>,
    /// Generators that cover the kernel in the top Adams degree of the stage.
    pub top_generators: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeResolution {
    pub ring: BigradedRing,
    pub module: DgaModule,
    pub s: i64,
    /// Top Adams degree `N` of the module.
    pub top: i64,
    /// Everything is computed in Adams degrees `≥ floor`.
    pub floor: i64,
    pub stages: Vec<Stage>,
}

fn act_free(ring: &BigradedRing, a: usize, v: &Lin<FreeKey>) -> Lin<FreeKey> {
    let mut out = Lin::new();
    for ((b, g), c) in v {
        for (p, cp) in ring.alg.mul(a, *b) {
            add_term(&mut out, (p, *g), c * cp);
        }
    }
    reduce(ring.ring(), out)
}

/// Elements `a·g` of the free module on `generators`, per bidegree with Adams `≥ floor`.
fn free_elements(ring: &BigradedRing, generators: &[Bidegree], floor: i64) -> BTreeMap<Bidegree, Vec<FreeKey>> {
    let mut out: BTreeMap<Bidegree, Vec<FreeKey>> = BTreeMap::new();
    for (g, gb) in generators.iter().enumerate() {
        for a in 0..ring.len() {
            let b = ring.degree(a) + *gb;
            if b.adams >= floor {
                out.entry(b).or_default().push((a, g));
            }
        }
    }
    out
}

/// The ambient module a kernel lives in, for generator selection.
trait Ambient: Sync {
    type Key: Ord + Clone + Send + Sync;
    fn ring(&self) -> &BigradedRing;
    fn elements(&self) -> &BTreeMap<Bidegree, Vec<Self::Key>>;
    fn act(&self, a: usize, v: &Lin<Self::Key>) -> Lin<Self::Key>;
}

struct FreeAmbient<'a> {
    ring: &'a BigradedRing,
    elements: BTreeMap<Bidegree, Vec<FreeKey>>,
}

impl Ambient for FreeAmbient<'_> {
    type Key = FreeKey;
    fn ring(&self) -> &BigradedRing {
        self.ring
    }
    fn elements(&self) -> &BTreeMap<Bidegree, Vec<FreeKey>> {
        &self.elements
    }
    fn act(&self, a: usize, v: &Lin<FreeKey>) -> Lin<FreeKey> {
        act_free(self.ring, a, v)
    }
}

struct ModuleAmbient<'a> {
    ring: &'a BigradedRing,
    module: &'a DgaModule,
    elements: BTreeMap<Bidegree, Vec<usize>>,
}

impl Ambient for ModuleAmbient<'_> {
    type Key = usize;
    fn ring(&self) -> &BigradedRing {
        self.ring
    }
    fn elements(&self) -> &BTreeMap<Bidegree, Vec<usize>> {
        &self.elements
    }
    fn act(&self, a: usize, v: &Lin<usize>) -> Lin<usize> {
        let mut out = Lin::new();
        for (m, c) in v {
            add_scaled(&mut out, &self.module.act(&self.ring.alg, a, *m), c);
        }
        reduce(self.ring.ring(), out)
    }
}

fn to_dense<K: Ord>(keys: &[K], v: &Lin<K>) -> Vec<BigInt> {
    keys.iter().map(|k| v.get(k).cloned().unwrap_or_else(BigInt::zero)).collect()
}

fn from_dense<K: Ord + Clone>(keys: &[K], v: &[BigInt]) -> Lin<K> {
    keys.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k.clone(), c.clone())).collect()
}

/// Chooses homogeneous generators of the submodule with the given per
/// bidegree bases, highest Adams degree first, keeping a basis vector only
/// if it is not already generated.
fn choose_generators<M: Ambient>(amb: &M, sub: &BTreeMap<Bidegree, Vec<Lin<M::Key>>>) -> Vec<(Bidegree, Lin<M::Key>)> {
    let ring = amb.ring();
    let mut order: Vec<&Bidegree> = sub.keys().collect();
    order.sort_by_key(|b| (-b.adams, b.coh));
    let mut chosen: Vec<(Bidegree, Lin<M::Key>)> = Vec::new();
    for b in order {
        let keys = &amb.elements()[b];
        let mut span: Vec<Vec<BigInt>> = Vec::new();
        for (gb, v) in &chosen {
            for a in 0..ring.len() {
                if ring.degree(a) + *gb == *b {
                    let w = amb.act(a, v);
                    if !w.is_empty() {
                        span.push(to_dense(keys, &w));
                    }
                }
            }
        }
        for v in &sub[b] {
            let dv = to_dense(keys, v);
            let m = ExactMatrix::from_columns(ring.ring(), keys.len(), &span);
            if span.is_empty() || !linalg::in_span(&m, &dv) {
                span.push(dv);
                chosen.push((*b, v.clone()));
            }
        }
    }
    chosen
}

/// Kernel of `f` on the free module on `generators`, per bidegree, as vectors.
fn free_kernel<T, F>(
    ring: &BigradedRing,
    elements: &BTreeMap<Bidegree, Vec<FreeKey>>,
    target: &BTreeMap<Bidegree, Vec<T>>,
    f: F,
) -> BTreeMap<Bidegree, (Vec<Lin<FreeKey>>, ExactMatrix)>
where
    T: Ord + Clone + Send + Sync,
    F: Fn(&FreeKey) -> Lin<T> + Sync,
{
    elements
        .par_iter()
        .map(|(b, keys)| {
            let empty = Vec::new();
            let tk = target.get(b).unwrap_or(&empty);
            let cols: Vec<Vec<BigInt>> = keys.iter().map(|k| to_dense(tk, &f(k))).collect();
            let m = ExactMatrix::from_columns(ring.ring(), tk.len(), &cols);
            let ker = linalg::kernel(&m);
            let basis = ker.basis.iter().map(|v| from_dense(keys, v)).collect();
            (*b, (basis, m))
        })
        .collect()
}

impl FreeResolution {
    pub fn stage_elements(&self, i: usize) -> BTreeMap<Bidegree, Vec<FreeKey>> {
        free_elements(&self.ring, &self.stages[i].generators, self.floor)
    }

    /// `∂` of `a·g` in stage `i ≥ 1`.
    pub fn boundary(&self, i: usize, k: &FreeKey) -> Lin<FreeKey> {
        act_free(&self.ring, k.0, &self.stages[i].images[k.1])
    }

    /// `ε(a·g)` for `g` a generator of `P₀`.
    pub fn augmentation(&self, k: &FreeKey) -> Lin<usize> {
        let v: Lin<usize> = self.stages[0].images[k.1].iter().map(|((_, m), c)| (*m, c.clone())).collect();
        let mut out = Lin::new();
        for (m, c) in v {
            add_scaled(&mut out, &self.module.act(&self.ring.alg, k.0, m), &c);
        }
        reduce(self.ring.ring(), out)
    }

    pub fn len(&self) -> usize {
        self.stages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }
}

fn module_elements(m: &DgaModule, floor: i64) -> BTreeMap<Bidegree, Vec<usize>> {
    let mut out: BTreeMap<Bidegree, Vec<usize>> = BTreeMap::new();
    for i in 0..m.len() {
        if m.degree(i).adams >= floor {
            out.entry(m.degree(i)).or_default().push(i);
        }
    }
    out
}

/// Resolves `m` over `a` in stages `0..=imax`, on Adams degrees `≥ floor`.
pub fn resolve(
    a: &BigradedRing,
    m: &DgaModule,
    s: i64,
    imax: usize,
    floor: i64,
) -> Result<FreeResolution, ResolutionError> {
    if s <= 0 {
        return Err(ResolutionError::InvalidS);
    }
    m.validate(&a.alg)?;
    let top = m.basis.top_adams().ok_or(ResolutionError::NotBoundedAbove)?;
    if let Some(known) = a.alg.adams_floor {
        if known > -s || known > floor - top {
            return Err(ResolutionError::WindowInsufficient { known, needed: (-s).min(floor - top) });
        }
    }
    let ring = a.ring();
    let target = module_elements(m, floor);
    let amb = ModuleAmbient { ring: a, module: m, elements: target.clone() };
    // P₀ = F(M)
    let sub: BTreeMap<Bidegree, Vec<Lin<usize>>> = target
        .iter()
        .map(|(b, keys)| (*b, keys.iter().map(|k| [(*k, BigInt::one())].into_iter().collect()).collect()))
        .collect();
    let gens = choose_generators(&amb, &sub);
    let mut stages = vec![Stage {
        generators: gens.iter().map(|(b, _)| *b).collect(),
        images: gens.iter().map(|(_, v)| v.iter().map(|(k, c)| ((a.alg.unit, *k), c.clone())).collect()).collect(),
        top_generators: 0,
    }];
    let mut res = FreeResolution { ring: a.clone(), module: m.clone(), s, top, floor, stages: Vec::new() };
    for i in 1..=imax {
        res.stages = stages.clone();
        let prev = &stages[i - 1];
        let elements = free_elements(a, &prev.generators, floor);
        let kernels = if i == 1 {
            free_kernel(a, &elements, &target, |k| res.augmentation(k))
        } else {
            let below = free_elements(a, &stages[i - 2].generators, floor);
            free_kernel(a, &elements, &below, |k| res.boundary(i - 1, k))
        };
        let mut top_part: Vec<(Bidegree, Lin<FreeKey>)> = Vec::new();
        let mut rest: BTreeMap<Bidegree, Vec<Lin<FreeKey>>> = BTreeMap::new();
        let band_top = top - (i as i64 - 1) / 2;
        for (b, (basis, _)) in &kernels {
            if basis.is_empty() {
                continue;
            }
            if i % 2 == 1 && b.adams >= band_top {
                if ring == CoefficientRing::Integers {
                    let keys = &elements[b];
                    let cols: Vec<Vec<BigInt>> = basis.iter().map(|v| to_dense(keys, v)).collect();
                    let factors = linalg::invariant_factors(&ExactMatrix::from_columns(ring, keys.len(), &cols));
                    if factors.len() != basis.len() || factors.iter().any(|d| !d.is_one()) {
                        return Err(ResolutionError::NotFree(*b));
                    }
                }
                top_part.extend(basis.iter().map(|v| (*b, v.clone())));
            } else {
                rest.insert(*b, basis.clone());
            }
        }
        let amb = FreeAmbient { ring: a, elements };
        let free_part = choose_generators(&amb, &rest);
        let top_generators = top_part.len();
        let all: Vec<(Bidegree, Lin<FreeKey>)> = top_part.into_iter().chain(free_part).collect();
        stages.push(Stage {
            generators: all.iter().map(|(b, _)| *b).collect(),
            images: all.into_iter().map(|(_, v)| v).collect(),
            top_generators,
        });
    }
    res.stages = stages;
    Ok(res)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ResolutionAudit {
    /// Exact at `M` and at `P₀, …, P_{imax−1}` in every bidegree computed.
    pub exact: bool,
    pub exactness_failure: Option<(usize, Bidegree)>,
    /// `Pᵢ(N) = ⋯ = Pᵢ(N−s) = 0` for `i ≥ 2s`.
    pub top_band_vanishes: bool,
    /// `Pᵢ(k)^l = 0` in the top band for `l < B′ − 2sB`, `i < 2s`.
    pub lower_bound: bool,
    /// Generators in the top band lie in degree `≥ B′ − (2s−1)B`, `i < 2s`.
    pub generator_bound: bool,
    pub band_bound: i64,
    pub module_bound: Option<i64>,
    pub witnesses: Vec<String>,
}

impl ResolutionAudit {
    pub fn all_hold(&self) -> bool {
        self.exact && self.top_band_vanishes && self.lower_bound && self.generator_bound
    }
}

/// Matrix of `∂ᵢ` (or `ε` for `i = 0`) at `b`.
fn stage_matrix(res: &FreeResolution, i: usize, b: Bidegree) -> ExactMatrix {
    let ring = res.ring.ring();
    let empty = Vec::new();
    let src_all = res.stage_elements(i);
    let src = src_all.get(&b).unwrap_or(&empty);
    if i == 0 {
        let target = module_elements(&res.module, res.floor);
        let empty_t = Vec::new();
        let tk = target.get(&b).unwrap_or(&empty_t);
        let cols: Vec<Vec<BigInt>> = src.iter().map(|k| to_dense(tk, &res.augmentation(k))).collect();
        return ExactMatrix::from_columns(ring, tk.len(), &cols);
    }
    let tgt_all = res.stage_elements(i - 1);
    let tk = tgt_all.get(&b).unwrap_or(&empty);
    let cols: Vec<Vec<BigInt>> = src.iter().map(|k| to_dense(tk, &res.boundary(i, k))).collect();
    ExactMatrix::from_columns(ring, tk.len(), &cols)
}

/// Checks exactness and the three degree properties from generator bidegrees.
pub fn audit(res: &FreeResolution) -> Result<ResolutionAudit, ResolutionError> {
    let s = res.s;
    let n = res.top;
    let b_ring = res.ring.band_bound(s);
    let band = |k: i64| n - s <= k && k <= n;
    let module_bound = (0..res.module.len()).map(|i| res.module.degree(i)).filter(|b| band(b.adams)).map(|b| b.coh).min();
    let mut out = ResolutionAudit {
        exact: true,
        top_band_vanishes: true,
        lower_bound: true,
        generator_bound: true,
        band_bound: b_ring,
        module_bound,
        ..Default::default()
    };
    // exactness at M: ε surjective
    let target = module_elements(&res.module, res.floor);
    for (b, keys) in &target {
        let e = stage_matrix(res, 0, *b);
        let factors = linalg::invariant_factors(&e);
        let unit = |d: &BigInt| d.is_one() || res.ring.ring().is_field();
        if factors.len() != keys.len() || !factors.iter().all(unit) {
            out.exact = false;
            out.exactness_failure.get_or_insert((0, *b));
        }
    }
    let last = res.stages.len() - 1;
    for i in 0..last {
        let bidegrees: Vec<Bidegree> = res.stage_elements(i).keys().copied().collect();
        let failures: Vec<Bidegree> = bidegrees
            .par_iter()
            .filter_map(|b| {
                let d_out = stage_matrix(res, i, *b);
                let d_in = stage_matrix(res, i + 1, *b);
                match linalg::homology_at(&d_in, &d_out) {
                    Ok(h) if h.is_zero() => None,
                    _ => Some(*b),
                }
            })
            .collect();
        if let Some(b) = failures.first() {
            out.exact = false;
            out.exactness_failure.get_or_insert((i + 1, *b));
        }
    }
    let b_prime = module_bound.unwrap_or(i64::MAX / 4);
    for (i, stage) in res.stages.iter().enumerate() {
        let elements = res.stage_elements(i);
        let in_band: Vec<&Bidegree> = elements.keys().filter(|b| band(b.adams)).collect();
        if i as i64 >= 2 * s {
            if let Some(b) = in_band.first() {
                out.top_band_vanishes = false;
                out.witnesses.push(format!("P{i} is nonzero in {b}"));
            }
        } else {
            if let Some(b) = in_band.iter().find(|b| b.coh < b_prime - 2 * s * b_ring) {
                out.lower_bound = false;
                out.witnesses.push(format!("P{i} is nonzero in {b}"));
            }
            if let Some(g) =
                stage.generators.iter().find(|g| band(g.adams) && g.coh < b_prime - (2 * s - 1) * b_ring)
            {
                out.generator_bound = false;
                out.witnesses.push(format!("P{i} has a generator in {g}"));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorReport {
    pub window: Window,
    /// `Tor_p` at internal bidegree, nonzero entries only.
    pub groups: BTreeMap<(usize, Bidegree), AbGroupReport>,
    pub max_degree: usize,
    /// The vanishing band for `N₂ ⊗_A Pᵢ` holds at every stage.
    pub vanishing_band: bool,
}

impl TorReport {
    pub fn get(&self, p: usize, b: Bidegree) -> AbGroupReport {
        self.groups.get(&(p, b)).cloned().unwrap_or_default()
    }

    /// `⊕_p Tor_p(k, t + p)`, the homology of the bar construction in total
    /// bidegree `(k, t)`.
    pub fn total(&self, b: Bidegree) -> AbGroupReport {
        (0..=self.max_degree).fold(AbGroupReport::zero(), |acc, p| {
            acc.direct_sum(&self.get(p, Bidegree::new(b.adams, b.coh + p as i64)))
        })
    }
}

/// Elements `n ⊗ g` of `N ⊗_A Pᵢ` per bidegree.
fn tensor_elements(n: &DgaModule, generators: &[Bidegree]) -> BTreeMap<Bidegree, Vec<(usize, usize)>> {
    let mut out: BTreeMap<Bidegree, Vec<(usize, usize)>> = BTreeMap::new();
    for (g, gb) in generators.iter().enumerate() {
        for x in 0..n.len() {
            out.entry(n.degree(x) + *gb).or_default().push((x, g));
        }
    }
    out
}

/// `Tor^A_p(M, N)` for `p ≤ imax`, as the homology of `N ⊗_A P•` with `P•`
/// resolving `M`; `N` acts from the right by graded commutativity.
pub fn tor(
    a: &BigradedRing,
    m: &DgaModule,
    n: &DgaModule,
    w: &Window,
    imax: usize,
    s: i64,
) -> Result<TorReport, ResolutionError> {
    n.validate(&a.alg)?;
    let ring = a.ring();
    let n_top = n.basis.top_adams().unwrap_or(0).max(0);
    let floor = w.adams_min - n_top;
    let res = resolve(a, m, s, imax + 1, floor)?;
    let tensors: Vec<BTreeMap<Bidegree, Vec<(usize, usize)>>> =
        res.stages.iter().map(|st| tensor_elements(n, &st.generators)).collect();
    let boundary = |i: usize, (x, g): &(usize, usize)| -> Lin<(usize, usize)> {
        let mut out = Lin::new();
        for ((ai, gj), c) in &res.stages[i].images[*g] {
            let s = koszul(n.degree(*x).coh, a.degree(*ai).coh);
            for (y, cy) in n.act(&a.alg, *ai, *x) {
                add_term(&mut out, (y, *gj), c * &cy * &s);
            }
        }
        reduce(ring, out)
    };
    let matrix = |i: usize, b: Bidegree| -> ExactMatrix {
        let empty = Vec::new();
        let src = if i < tensors.len() { tensors[i].get(&b).unwrap_or(&empty) } else { &empty };
        if i == 0 {
            return ExactMatrix::zeros(ring, 0, src.len());
        }
        let tk = tensors[i - 1].get(&b).unwrap_or(&empty);
        let cols: Vec<Vec<BigInt>> = src.iter().map(|k| to_dense(tk, &boundary(i, k))).collect();
        ExactMatrix::from_columns(ring, tk.len(), &cols)
    };
    let jobs: Vec<(usize, Bidegree)> = (0..=imax).flat_map(|p| w.bidegrees().map(move |b| (p, b))).collect();
    let groups = jobs
        .par_iter()
        .map(|(p, b)| linalg::homology_at(&matrix(p + 1, *b), &matrix(*p, *b)).map(|h| ((*p, *b), h)))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .filter(|(_, h)| !h.is_zero())
        .collect();
    // vanishing band for N ⊗_A Pᵢ
    let b_ring = a.band_bound(s);
    let band_m = |k: i64, top: i64| top - s <= k && k <= top;
    let b1 = (0..m.len()).map(|i| m.degree(i)).filter(|b| band_m(b.adams, res.top)).map(|b| b.coh).min();
    let b2 = (0..n.len()).map(|i| n.degree(i)).filter(|b| band_m(b.adams, n_top)).map(|b| b.coh).min();
    let mut vanishing_band = true;
    if let (Some(b1), Some(b2)) = (b1, b2) {
        let top = res.top + n_top;
        for t in tensors.iter().take((2 * s) as usize) {
            if t.iter().any(|(b, v)| !v.is_empty() && band_m(b.adams, top) && b.coh < b1 + b2 - (2 * s - 1) * b_ring) {
                vanishing_band = false;
            }
        }
    }
    Ok(TorReport { window: *w, groups, max_degree: imax, vanishing_band })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bar::derived_tensor;

    const Z: CoefficientRing = CoefficientRing::Integers;

    fn y_ring() -> BigradedRing {
        BigradedRing::square_zero(Z, &[Bidegree::new(-1, 1)]).unwrap()
    }

    #[test]
    fn koszul_type_periodic_resolution() {
        let a = y_ring();
        let one = DgaModule::trivial(a.presentation());
        let res = resolve(&a, &one, 1, 4, -5).unwrap();
        for (i, st) in res.stages.iter().enumerate() {
            assert_eq!(st.generators, vec![Bidegree::new(-(i as i64), i as i64)], "P{i}");
        }
        assert!(audit(&res).unwrap().all_hold());
    }

    #[test]
    fn free_module_stops() {
        let a = y_ring();
        let free = DgaModule::free(a.presentation());
        let res = resolve(&a, &free, 1, 3, -4).unwrap();
        assert_eq!(res.stages[0].generators.len(), 1);
        assert!(res.stages[1..].iter().all(|s| s.generators.is_empty()));
        assert!(audit(&res).unwrap().all_hold());
    }

    #[test]
    fn non_tate_rejected() {
        let alg = DgaPresentation::square_zero(Z, &[Bidegree::new(1, 0)]);
        assert!(matches!(BigradedRing::new(alg), Err(ResolutionError::NotTate(_))));
        let a = y_ring();
        assert_eq!(resolve(&a, &DgaModule::trivial(a.presentation()), 0, 2, -2), Err(ResolutionError::InvalidS));
    }

    #[test]
    fn tor_matches_bar_engine() {
        let a = BigradedRing::square_zero(Z, &[Bidegree::new(-1, 1), Bidegree::new(-2, 2)]).unwrap();
        let one = DgaModule::trivial(a.presentation());
        let w = Window::new(-4, 0, -4, 8).unwrap();
        let t = tor(&a, &one, &one, &w, 4, 1).unwrap();
        let bar = derived_tensor(a.presentation(), &one, &one, &Window::new(-4, 0, -4, 4).unwrap()).unwrap();
        for b in bar.window.bidegrees() {
            assert_eq!(t.total(b), bar.get(b), "{b}");
        }
    }

    #[test]
    fn tor_over_the_ground_ring_is_the_tensor_product() {
        let a = BigradedRing::new(DgaPresentation::unit_algebra(Z)).unwrap();
        let m = DgaModule::trivial_at(a.presentation(), Bidegree::new(0, 2));
        let t = tor(&a, &m, &m, &Window::new(-1, 0, 0, 5).unwrap(), 2, 1).unwrap();
        assert_eq!(t.groups.len(), 1);
        assert_eq!(t.get(0, Bidegree::new(0, 4)), AbGroupReport::free(1));
    }
}
