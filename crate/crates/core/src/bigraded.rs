//! Adams-graded cochain complexes of free modules.
//!
//! A complex carries a finite ordered basis in each bidegree `(adams, coh)` and
//! a differential of bidegree `(0, +1)`. Outside its basis the complex is zero,
//! except below an optional Adams floor where the data is simply unknown (used
//! for window truncations of infinite objects such as polynomial algebras).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lincomb::{sign, Lin};
use crate::linalg::{self, AbGroupReport, CoefficientRing, ExactMatrix, LinalgError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bidegree {
    pub adams: i64,
    pub coh: i64,
}

impl Bidegree {
    pub const ZERO: Bidegree = Bidegree { adams: 0, coh: 0 };

    pub fn new(adams: i64, coh: i64) -> Self {
        Bidegree { adams, coh }
    }

    pub fn next(self) -> Self {
        Bidegree { adams: self.adams, coh: self.coh + 1 }
    }

    pub fn prev(self) -> Self {
        Bidegree { adams: self.adams, coh: self.coh - 1 }
    }
}

impl Add for Bidegree {
    type Output = Bidegree;
    fn add(self, o: Bidegree) -> Bidegree {
        Bidegree { adams: self.adams + o.adams, coh: self.coh + o.coh }
    }
}

impl Sub for Bidegree {
    type Output = Bidegree;
    fn sub(self, o: Bidegree) -> Bidegree {
        Bidegree { adams: self.adams - o.adams, coh: self.coh - o.coh }
    }
}

impl Neg for Bidegree {
    type Output = Bidegree;
    fn neg(self) -> Bidegree {
        Bidegree { adams: -self.adams, coh: -self.coh }
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.adams, self.coh)
    }
}

/// A rectangle of bidegrees; every certified computation is relative to one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    pub adams_min: i64,
    pub adams_max: i64,
    pub coh_min: i64,
    pub coh_max: i64,
}

impl Window {
    pub fn new(adams_min: i64, adams_max: i64, coh_min: i64, coh_max: i64) -> Result<Self, ComplexError> {
        if adams_min > adams_max || coh_min > coh_max {
            return Err(ComplexError::EmptyWindow);
        }
        Ok(Window { adams_min, adams_max, coh_min, coh_max })
    }

    pub fn contains(&self, b: Bidegree) -> bool {
        (self.adams_min..=self.adams_max).contains(&b.adams) && (self.coh_min..=self.coh_max).contains(&b.coh)
    }

    /// Bidegrees in report order: Adams ascending, then cohomological ascending.
    pub fn bidegrees(&self) -> impl Iterator<Item = Bidegree> + '_ {
        (self.adams_min..=self.adams_max)
            .flat_map(move |a| (self.coh_min..=self.coh_max).map(move |n| Bidegree::new(a, n)))
    }

    /// The window grown by one cohomological degree on each side.
    pub fn widened(&self) -> Window {
        Window { coh_min: self.coh_min - 1, coh_max: self.coh_max + 1, ..*self }
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "adams={}..{},coh={}..{}", self.adams_min, self.adams_max, self.coh_min, self.coh_max)
    }
}

impl FromStr for Window {
    type Err = String;

    /// Parses `adams=A..B,coh=C..D`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut adams = None;
        let mut coh = None;
        for part in s.split(',') {
            let (key, range) = part.split_once('=').ok_or_else(|| format!("bad window component `{part}`"))?;
            let (lo, hi) = range.split_once("..").ok_or_else(|| format!("bad range `{range}`"))?;
            let lo: i64 = lo.trim().parse().map_err(|_| format!("bad bound `{lo}`"))?;
            let hi: i64 = hi.trim().parse().map_err(|_| format!("bad bound `{hi}`"))?;
            match key.trim() {
                "adams" => adams = Some((lo, hi)),
                "coh" => coh = Some((lo, hi)),
                other => return Err(format!("unknown window key `{other}`")),
            }
        }
        let (a0, a1) = adams.ok_or("window is missing `adams=`")?;
        let (c0, c1) = coh.ok_or("window is missing `coh=`")?;
        Window::new(a0, a1, c0, c1).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("window has min > max")]
    EmptyWindow,
    #[error("differential at {0} has the wrong shape")]
    DimensionMismatch(Bidegree),
    #[error("d∘d ≠ 0 starting at {0}")]
    DSquaredNonzero(Bidegree),
    #[error("bidegree {0} lies below the known Adams range of the complex")]
    WindowExceedsSupport(Bidegree),
    #[error("truncation is not closed under the differential at {0}")]
    NotSubcomplex(Bidegree),
    #[error("map does not commute with differentials at {0}")]
    NotChainMap(Bidegree),
    #[error("differential leaves the enumerated basis at {0}")]
    OpenBasis(Bidegree),
    #[error("coefficient rings differ: {0} vs {1}")]
    RingMismatch(CoefficientRing, CoefficientRing),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradedComplex {
    ring: CoefficientRing,
    basis: BTreeMap<Bidegree, Vec<String>>,
    /// Keyed by source bidegree; absent means zero.
    differentials: BTreeMap<Bidegree, ExactMatrix>,
    adams_floor: Option<i64>,
}

impl BigradedComplex {
    /// Validates shapes and `d∘d = 0`, dropping empty bidegrees.
    pub fn new(
        ring: CoefficientRing,
        basis: BTreeMap<Bidegree, Vec<String>>,
        differentials: BTreeMap<Bidegree, ExactMatrix>,
        adams_floor: Option<i64>,
    ) -> Result<Self, ComplexError> {
        let basis: BTreeMap<_, _> = basis.into_iter().filter(|(_, v)| !v.is_empty()).collect();
        let c = BigradedComplex { ring, basis, differentials, adams_floor };
        for (b, d) in &c.differentials {
            if d.ring() != ring {
                return Err(ComplexError::RingMismatch(ring, d.ring()));
            }
            if d.cols() != c.dim(*b) || d.rows() != c.dim(b.next()) {
                return Err(ComplexError::DimensionMismatch(*b));
            }
        }
        let differentials = c
            .differentials
            .into_iter()
            .filter(|(_, d)| !d.is_zero())
            .collect::<BTreeMap<_, _>>();
        let c = BigradedComplex { differentials, ..c };
        for b in c.differentials.keys() {
            if let Some(next) = c.differentials.get(&b.next()) {
                if !next.mul(&c.differentials[b])?.is_zero() {
                    return Err(ComplexError::DSquaredNonzero(*b));
                }
            }
        }
        Ok(c)
    }

    pub fn zero(ring: CoefficientRing) -> Self {
        BigradedComplex { ring, basis: BTreeMap::new(), differentials: BTreeMap::new(), adams_floor: None }
    }

    /// The unit object: the ring in bidegree (0, 0).
    pub fn unit(ring: CoefficientRing) -> Self {
        Self::point(ring, Bidegree::ZERO, "1")
    }

    /// A single basis element in bidegree `at`.
    pub fn point(ring: CoefficientRing, at: Bidegree, label: &str) -> Self {
        let mut basis = BTreeMap::new();
        basis.insert(at, vec![label.to_string()]);
        BigradedComplex { ring, basis, differentials: BTreeMap::new(), adams_floor: None }
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn adams_floor(&self) -> Option<i64> {
        self.adams_floor
    }

    pub fn with_adams_floor(mut self, floor: Option<i64>) -> Self {
        self.adams_floor = floor;
        self
    }

    pub fn dim(&self, b: Bidegree) -> usize {
        self.basis.get(&b).map_or(0, Vec::len)
    }

    pub fn labels(&self, b: Bidegree) -> &[String] {
        self.basis.get(&b).map_or(&[], Vec::as_slice)
    }

    pub fn bidegrees(&self) -> impl Iterator<Item = Bidegree> + '_ {
        self.basis.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.basis.values().map(Vec::len).sum()
    }

    /// Bounding box of the basis, if any.
    pub fn support(&self) -> Option<Window> {
        let mut it = self.basis.keys();
        let first = it.next()?;
        let mut w = Window { adams_min: first.adams, adams_max: first.adams, coh_min: first.coh, coh_max: first.coh };
        for b in it {
            w.adams_min = w.adams_min.min(b.adams);
            w.adams_max = w.adams_max.max(b.adams);
            w.coh_min = w.coh_min.min(b.coh);
            w.coh_max = w.coh_max.max(b.coh);
        }
        Some(w)
    }

    pub fn max_adams(&self) -> Option<i64> {
        self.basis.keys().map(|b| b.adams).max()
    }

    /// Differential leaving `b`, as a `dim(b+1) × dim(b)` matrix.
    pub fn differential(&self, b: Bidegree) -> ExactMatrix {
        self.differentials
            .get(&b)
            .cloned()
            .unwrap_or_else(|| ExactMatrix::zeros(self.ring, self.dim(b.next()), self.dim(b)))
    }

    pub fn is_known(&self, b: Bidegree) -> bool {
        self.adams_floor.is_none_or(|f| b.adams >= f)
    }

    pub fn homology_at(&self, b: Bidegree) -> Result<AbGroupReport, ComplexError> {
        if !self.is_known(b) {
            return Err(ComplexError::WindowExceedsSupport(b));
        }
        Ok(linalg::homology_at(&self.differential(b.prev()), &self.differential(b))?)
    }

    /// Shift so the basis at `(a, n)` of the result is that of `self` at `(a−i, n−j)`.
    pub fn shift(&self, i: i64, j: i64) -> Self {
        let by = Bidegree::new(i, j);
        let s = sign(j.rem_euclid(2) == 1);
        BigradedComplex {
            ring: self.ring,
            basis: self.basis.iter().map(|(b, v)| (*b + by, v.clone())).collect(),
            differentials: self.differentials.iter().map(|(b, d)| (*b + by, d.scale(&s))).collect(),
            adams_floor: self.adams_floor.map(|f| f + i),
        }
    }

    /// Offsets of the `(left, right)` bidegree blocks inside each tensor bidegree.
    fn tensor_layout(a: &Self, b: &Self) -> BTreeMap<Bidegree, Vec<(Bidegree, Bidegree, usize)>> {
        let mut layout: BTreeMap<Bidegree, Vec<(Bidegree, Bidegree, usize)>> = BTreeMap::new();
        let mut sizes: BTreeMap<Bidegree, usize> = BTreeMap::new();
        for (ba, va) in &a.basis {
            for (bb, vb) in &b.basis {
                let t = *ba + *bb;
                let off = sizes.entry(t).or_insert(0);
                layout.entry(t).or_default().push((*ba, *bb, *off));
                *off += va.len() * vb.len();
            }
        }
        layout
    }

    /// Tensor product over the ground ring with `d(x⊗y) = dx⊗y + (−1)^|x| x⊗dy`.
    pub fn tensor(&self, other: &Self) -> Result<Self, ComplexError> {
        if self.ring != other.ring {
            return Err(ComplexError::RingMismatch(self.ring, other.ring));
        }
        let layout = Self::tensor_layout(self, other);
        let mut offsets: BTreeMap<(Bidegree, Bidegree), usize> = BTreeMap::new();
        let mut basis = BTreeMap::new();
        for (t, blocks) in &layout {
            let mut labels = Vec::new();
            for (ba, bb, off) in blocks {
                offsets.insert((*ba, *bb), *off);
                for x in self.labels(*ba) {
                    for y in other.labels(*bb) {
                        labels.push(format!("{x}⊗{y}"));
                    }
                }
            }
            basis.insert(*t, labels);
        }
        let mut differentials = BTreeMap::new();
        for (t, blocks) in &layout {
            let rows = basis.get(&t.next()).map_or(0, Vec::len);
            let cols = basis[t].len();
            let mut triplets = Vec::new();
            for (ba, bb, off) in blocks {
                let nb = other.dim(*bb);
                let da = self.differential(*ba);
                if let Some(&toff) = offsets.get(&(ba.next(), *bb)) {
                    for (r, c, v) in da.entries() {
                        for j in 0..nb {
                            triplets.push((toff + r * nb + j, off + c * nb + j, v.clone()));
                        }
                    }
                }
                let db = other.differential(*bb);
                if let Some(&toff) = offsets.get(&(*ba, bb.next())) {
                    let s = sign(ba.coh.rem_euclid(2) == 1);
                    let nb_next = other.dim(bb.next());
                    for i in 0..self.dim(*ba) {
                        for (r, c, v) in db.entries() {
                            triplets.push((toff + i * nb_next + r, off + i * nb + c, v * &s));
                        }
                    }
                }
            }
            differentials.insert(*t, ExactMatrix::from_triplets(self.ring, rows, cols, triplets));
        }
        let floor = match (self.adams_floor, other.adams_floor) {
            (None, None) => None,
            (fa, fb) => {
                let ca = fa.zip(other.max_adams()).map(|(f, m)| f + m);
                let cb = fb.zip(self.max_adams()).map(|(f, m)| f + m);
                ca.into_iter().chain(cb).max()
            }
        };
        BigradedComplex::new(self.ring, basis, differentials, floor)
    }

    /// The coh-line of one Adams degree: `(lowest coh, highest coh)` of the basis.
    fn coh_range(&self, adams: i64) -> Option<(i64, i64)> {
        let cohs: Vec<i64> = self.basis.keys().filter(|b| b.adams == adams).map(|b| b.coh).collect();
        Some((*cohs.iter().min()?, *cohs.iter().max()?))
    }

    fn adams_degrees(&self) -> BTreeSet<i64> {
        self.basis.keys().map(|b| b.adams).collect()
    }

    /// Good truncation in the cohomological direction, Adams degree by Adams degree.
    pub fn truncate(&self, mode: Truncation) -> Result<Self, ComplexError> {
        match mode {
            Truncation::AtMost(top) => self.truncate_above(top),
            Truncation::AtLeast(bottom) => self.truncate_below(bottom),
            Truncation::Between(bottom, top) => self.truncate_below(bottom)?.truncate_above(top),
        }
    }

    /// τ^{≤top}: degree `top` replaced by its cocycles.
    fn truncate_above(&self, top: i64) -> Result<Self, ComplexError> {
        let mut basis = BTreeMap::new();
        let mut differentials = BTreeMap::new();
        for a in self.adams_degrees() {
            let (lo, _) = self.coh_range(a).unwrap();
            for n in lo..top {
                let b = Bidegree::new(a, n);
                basis.insert(b, self.labels(b).to_vec());
                if n + 1 < top {
                    differentials.insert(b, self.differential(b));
                }
            }
            let bt = Bidegree::new(a, top);
            let ker = linalg::kernel(&self.differential(bt));
            let labels = (0..ker.basis.len()).map(|k| format!("Z{top}[{k}]")).collect();
            basis.insert(bt, labels);
            if lo < top {
                let into = ker.coordinates.mul(&self.differential(bt.prev()))?;
                differentials.insert(bt.prev(), into);
            }
        }
        BigradedComplex::new(self.ring, basis, differentials, self.adams_floor)
    }

    /// τ^{≥bottom}: degree `bottom` replaced by the quotient by boundaries. When
    /// the boundaries are not a direct summand (torsion over ℤ) the quotient is
    /// modeled freely by the boundary lattice in degree `bottom − 1`.
    fn truncate_below(&self, bottom: i64) -> Result<Self, ComplexError> {
        let mut basis = BTreeMap::new();
        let mut differentials = BTreeMap::new();
        for a in self.adams_degrees() {
            let (_, hi) = self.coh_range(a).unwrap();
            for n in bottom + 1..=hi {
                let b = Bidegree::new(a, n);
                basis.insert(b, self.labels(b).to_vec());
                differentials.insert(b, self.differential(b));
            }
            let bb = Bidegree::new(a, bottom);
            let incoming = self.differential(bb.prev());
            let d_out = self.differential(bb);
            match linalg::quotient_by_span(&incoming) {
                Ok(q) => {
                    let labels = (0..q.len()).map(|k| format!("Q{bottom}[{k}]")).collect();
                    basis.insert(bb, labels);
                    differentials.insert(bb, d_out.mul(&q.representatives)?);
                }
                Err(LinalgError::NotDirectSummand) => {
                    basis.insert(bb, self.labels(bb).to_vec());
                    differentials.insert(bb, d_out);
                    let lattice = linalg::image_basis(&incoming);
                    let below = bb.prev();
                    basis.insert(below, (0..lattice.len()).map(|k| format!("B{bottom}[{k}]")).collect());
                    differentials.insert(below, ExactMatrix::from_columns(self.ring, self.dim(bb), &lattice));
                }
                Err(e) => return Err(e.into()),
            }
        }
        BigradedComplex::new(self.ring, basis, differentials, self.adams_floor)
    }

    /// Removes `(k, n)` for `k < 0` and `n < i·k`; the result is a subcomplex.
    pub fn adams_truncation(&self, i: i64) -> Result<Self, ComplexError> {
        let keep = |b: &Bidegree| b.adams >= 0 || b.coh >= i * b.adams;
        for (b, d) in &self.differentials {
            if keep(b) && !keep(&b.next()) && !d.is_zero() {
                return Err(ComplexError::NotSubcomplex(*b));
            }
        }
        let basis = self.basis.iter().filter(|(b, _)| keep(b)).map(|(b, v)| (*b, v.clone())).collect();
        let differentials = self
            .differentials
            .iter()
            .filter(|(b, _)| keep(b))
            .map(|(b, d)| (*b, d.clone()))
            .collect();
        BigradedComplex::new(self.ring, basis, differentials, self.adams_floor)
    }

    /// Direct sum; basis of `self` first in every bidegree.
    pub fn direct_sum(&self, other: &Self) -> Result<Self, ComplexError> {
        if self.ring != other.ring {
            return Err(ComplexError::RingMismatch(self.ring, other.ring));
        }
        let keys: BTreeSet<Bidegree> = self.basis.keys().chain(other.basis.keys()).copied().collect();
        let mut basis = BTreeMap::new();
        let mut differentials = BTreeMap::new();
        for b in &keys {
            let mut labels = self.labels(*b).to_vec();
            labels.extend(other.labels(*b).iter().cloned());
            basis.insert(*b, labels);
        }
        for b in &keys {
            let (p, q) = (self.dim(*b), self.dim(b.next()));
            let da = self.differential(*b);
            let db = other.differential(*b);
            let t = da.entries().map(|(r, c, v)| (r, c, v.clone())).chain(
                db.entries().map(|(r, c, v)| (r + q, c + p, v.clone())),
            );
            let rows = q + other.dim(b.next());
            differentials.insert(*b, ExactMatrix::from_triplets(self.ring, rows, p + other.dim(*b), t));
        }
        let floor = match (self.adams_floor, other.adams_floor) {
            (Some(x), Some(y)) => Some(x.max(y)),
            (x, y) => x.or(y),
        };
        BigradedComplex::new(self.ring, basis, differentials, floor)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Truncation {
    AtMost(i64),
    AtLeast(i64),
    Between(i64, i64),
}

/// Homology groups within a window; zero groups are omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyReport {
    pub window: Window,
    pub groups: BTreeMap<Bidegree, AbGroupReport>,
}

impl HomologyReport {
    pub fn get(&self, b: Bidegree) -> AbGroupReport {
        self.groups.get(&b).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn restrict(&self, w: &Window) -> HomologyReport {
        HomologyReport {
            window: *w,
            groups: self.groups.iter().filter(|(b, _)| w.contains(**b)).map(|(b, g)| (*b, g.clone())).collect(),
        }
    }

    pub fn total_rank(&self) -> usize {
        self.groups.values().map(|g| g.free_rank).sum()
    }
}

pub fn homology(c: &BigradedComplex, w: &Window) -> Result<HomologyReport, ComplexError> {
    let bidegrees: Vec<Bidegree> = w.bidegrees().collect();
    let results: Result<Vec<(Bidegree, AbGroupReport)>, ComplexError> =
        bidegrees.par_iter().map(|b| c.homology_at(*b).map(|h| (*b, h))).collect();
    let groups = results?.into_iter().filter(|(_, g)| !g.is_zero()).collect();
    Ok(HomologyReport { window: *w, groups })
}

/// Components of a degree-preserving map between complexes, keyed by bidegree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub components: BTreeMap<Bidegree, ExactMatrix>,
}

impl ChainMap {
    pub fn identity(c: &BigradedComplex) -> Self {
        ChainMap { components: c.bidegrees().map(|b| (b, ExactMatrix::identity(c.ring, c.dim(b)))).collect() }
    }

    pub fn component(&self, source: &BigradedComplex, target: &BigradedComplex, b: Bidegree) -> ExactMatrix {
        self.components
            .get(&b)
            .cloned()
            .unwrap_or_else(|| ExactMatrix::zeros(source.ring, target.dim(b), source.dim(b)))
    }

    pub fn validate(&self, source: &BigradedComplex, target: &BigradedComplex) -> Result<(), ComplexError> {
        let keys: BTreeSet<Bidegree> = source.bidegrees().chain(target.bidegrees()).collect();
        for b in keys {
            let f = self.component(source, target, b);
            if f.rows() != target.dim(b) || f.cols() != source.dim(b) {
                return Err(ComplexError::DimensionMismatch(b));
            }
            let lhs = target.differential(b).mul(&f)?;
            let rhs = self.component(source, target, b.next()).mul(&source.differential(b))?;
            if lhs != rhs {
                return Err(ComplexError::NotChainMap(b));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiIsoCertificate {
    pub is_quasi_iso: bool,
    pub first_failure: Option<Bidegree>,
}

/// Whether the induced map on homology is an isomorphism at `b`.
pub fn induces_iso_at(
    source: &BigradedComplex,
    target: &BigradedComplex,
    f: &ChainMap,
    b: Bidegree,
) -> Result<bool, ComplexError> {
    let ring = source.ring;
    let fb = f.component(source, target, b);
    let zc = linalg::kernel(&source.differential(b)).basis;
    let zd = linalg::kernel(&target.differential(b)).basis;
    let bc = source.differential(b.prev());
    let bd = target.differential(b.prev());
    let fz: Vec<Vec<BigInt>> = zc.iter().map(|z| fb.apply(z)).collect();
    let fz_m = ExactMatrix::from_columns(ring, target.dim(b), &fz);

    // surjective: Z(D) ⊆ f(Z(C)) + B(D)
    let span = fz_m.hcat(&bd)?;
    for w in &zd {
        if !linalg::in_span(&span, w) {
            return Ok(false);
        }
    }
    // injective: {c : f(Z c) ∈ B(D)} maps into B(C)
    let rel = fz_m.hcat(&bd.scale(&-BigInt::one()))?;
    for v in linalg::kernel(&rel).basis {
        let coeffs = &v[..zc.len()];
        let mut z = vec![BigInt::zero(); source.dim(b)];
        for (c, basis_vec) in coeffs.iter().zip(&zc) {
            for (zi, bi) in z.iter_mut().zip(basis_vec) {
                *zi += c * bi;
            }
        }
        if !linalg::in_span(&bc, &z) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn quasi_iso_certificate(
    source: &BigradedComplex,
    target: &BigradedComplex,
    f: &ChainMap,
    w: &Window,
) -> Result<QuasiIsoCertificate, ComplexError> {
    f.validate(source, target)?;
    for b in w.bidegrees() {
        if !source.is_known(b) || !target.is_known(b) {
            return Err(ComplexError::WindowExceedsSupport(b));
        }
        if !induces_iso_at(source, target, f, b)? {
            return Ok(QuasiIsoCertificate { is_quasi_iso: false, first_failure: Some(b) });
        }
    }
    Ok(QuasiIsoCertificate { is_quasi_iso: true, first_failure: None })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TateKind {
    None,
    Tate,
    StrictTate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TateCertificate {
    pub kind: TateKind,
    /// Every negative Adams degree of the window is cohomologically bounded below.
    pub bounded: bool,
    /// Lowest cohomological degree carrying a basis element, per negative Adams degree.
    pub lower_bounds: BTreeMap<i64, i64>,
    pub witness: Option<Bidegree>,
    /// Negative Adams degrees of the window where the data is unknown.
    pub inconclusive: Vec<i64>,
}

/// Strongest Tate-type property certified for `c`. `unit` is the unit basis
/// element `(bidegree, index)` when `c` underlies an algebra.
pub fn is_tate_type(
    c: &BigradedComplex,
    unit: Option<(Bidegree, usize)>,
    w: &Window,
) -> Result<TateCertificate, ComplexError> {
    let none = |witness| TateCertificate {
        kind: TateKind::None,
        bounded: false,
        lower_bounds: BTreeMap::new(),
        witness: Some(witness),
        inconclusive: Vec::new(),
    };
    let mut strict = true;
    // positive Adams degrees must be acyclic (strict: empty)
    for b in c.bidegrees().filter(|b| b.adams > 0).collect::<Vec<_>>() {
        strict = false;
        if !c.homology_at(b)?.is_zero() {
            return Ok(none(b));
        }
    }
    // Adams degree 0: unit map ℤ → A(0) a quasi-isomorphism (strict: isomorphism)
    let zero_line: Vec<Bidegree> = c.bidegrees().filter(|b| b.adams == 0).collect();
    let unit_at = unit.map(|(b, _)| b).unwrap_or(Bidegree::ZERO);
    if unit_at != Bidegree::ZERO {
        return Ok(none(unit_at));
    }
    if zero_line != vec![Bidegree::ZERO] || c.dim(Bidegree::ZERO) != 1 {
        strict = false;
    }
    for b in &zero_line {
        let h = c.homology_at(*b)?;
        let expected = if *b == Bidegree::ZERO { AbGroupReport::free(1) } else { AbGroupReport::zero() };
        if h != expected {
            return Ok(none(*b));
        }
    }
    if zero_line.is_empty() {
        return Ok(none(Bidegree::ZERO));
    }
    if let Some((_, idx)) = unit {
        // the unit must generate H^0(A(0))
        let mut u = vec![BigInt::zero(); c.dim(Bidegree::ZERO)];
        u[idx] = BigInt::one();
        let gen = ExactMatrix::from_columns(c.ring, u.len(), &[u]);
        let with_unit = c.differential(Bidegree::new(0, -1)).hcat(&gen)?;
        let h = linalg::homology_at(&with_unit, &c.differential(Bidegree::ZERO));
        if !matches!(h, Ok(ref g) if g.is_zero()) {
            return Ok(none(Bidegree::ZERO));
        }
    }
    let mut lower_bounds = BTreeMap::new();
    let mut inconclusive = Vec::new();
    for a in w.adams_min..=w.adams_max.min(-1) {
        if !c.is_known(Bidegree::new(a, 0)) {
            inconclusive.push(a);
            continue;
        }
        if let Some(n0) = c.bidegrees().filter(|b| b.adams == a).map(|b| b.coh).min() {
            lower_bounds.insert(a, n0);
        }
    }
    Ok(TateCertificate {
        kind: if strict { TateKind::StrictTate } else { TateKind::Tate },
        bounded: inconclusive.is_empty(),
        lower_bounds,
        witness: None,
        inconclusive,
    })
}

/// Assembles a complex from symbolic basis keys and a symbolic differential.
/// Every term of `d(key)` must be a key of the next cohomological degree.
pub fn complex_from_keys<K, L, D>(
    ring: CoefficientRing,
    keys: &BTreeMap<Bidegree, Vec<K>>,
    label: L,
    d: D,
    adams_floor: Option<i64>,
) -> Result<BigradedComplex, ComplexError>
where
    K: Ord + Clone + Sync,
    L: Fn(&K) -> String,
    D: Fn(&K) -> Lin<K> + Sync,
{
    let index: BTreeMap<&K, usize> =
        keys.values().flat_map(|v| v.iter().enumerate().map(|(i, k)| (k, i))).collect();
    let basis = keys.iter().map(|(b, v)| (*b, v.iter().map(&label).collect())).collect();
    let blocks: Vec<(&Bidegree, &Vec<K>)> = keys.iter().collect();
    let mats: Result<Vec<(Bidegree, ExactMatrix)>, ComplexError> = blocks
        .par_iter()
        .map(|(b, v)| {
            let rows = keys.get(&b.next()).map_or(0, Vec::len);
            let target: BTreeSet<&K> = keys.get(&b.next()).map(|t| t.iter().collect()).unwrap_or_default();
            let mut triplets = Vec::new();
            for (c, k) in v.iter().enumerate() {
                for (t, coeff) in d(k) {
                    let coeff = ring.reduce(&coeff);
                    if coeff.is_zero() {
                        continue;
                    }
                    if !target.contains(&t) {
                        return Err(ComplexError::OpenBasis(**b));
                    }
                    triplets.push((index[&t], c, coeff));
                }
            }
            Ok((**b, ExactMatrix::from_triplets(ring, rows, v.len(), triplets)))
        })
        .collect();
    BigradedComplex::new(ring, basis, mats?.into_iter().collect(), adams_floor)
}

/// Builds a complex from `(bidegree, label)` pairs and differential entries
/// `(source bidegree, source index, target index, coefficient)`.
pub fn complex_from_parts(
    ring: CoefficientRing,
    elements: &[(Bidegree, &str)],
    entries: &[(Bidegree, usize, usize, i64)],
) -> Result<BigradedComplex, ComplexError> {
    let mut basis: BTreeMap<Bidegree, Vec<String>> = BTreeMap::new();
    for (b, l) in elements {
        basis.entry(*b).or_default().push(l.to_string());
    }
    let mut grouped: BTreeMap<Bidegree, Vec<(usize, usize, BigInt)>> = BTreeMap::new();
    for (b, s, t, v) in entries {
        grouped.entry(*b).or_default().push((*t, *s, BigInt::from(*v)));
    }
    let dim = |b: &Bidegree| basis.get(b).map_or(0, Vec::len);
    let differentials = grouped
        .into_iter()
        .map(|(b, t)| (b, ExactMatrix::from_triplets(ring, dim(&b.next()), dim(&b), t)))
        .collect();
    BigradedComplex::new(ring, basis, differentials, None)
}
