//! Cosimplicial complexes, algebras and modules given symbolically on bases,
//! their materialization to finite data, Tot, and the derived group scheme
//! checkers (Segal, group-like, unit level, cartesian modules).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bigraded::{self, complex_from_keys, BigradedComplex, Bidegree, ComplexError, HomologyReport, Window};
use crate::lincomb::{add_scaled, add_term, lin_eq, reduce, sign, single, Lin};
use crate::linalg::{self, CoefficientRing, ExactMatrix, LinalgError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CosimplicialError {
    #[error("Adams degree {0} has no cohomological lower bound")]
    UnboundedBelow(i64),
    #[error("level {0} is beyond the truncation")]
    LevelOutOfRange(usize),
    #[error("coaction is not coassociative and counital at {0}")]
    CoactionInvalid(String),
    #[error("{0} maps leave the enumerated basis at level {1}")]
    OpenBasis(String, usize),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub trait CosimplicialObject: Sync {
    type Key: Ord + Clone + Debug + Send + Sync;

    fn ring(&self) -> CoefficientRing;
    /// Highest level carried, if truncated.
    fn top_level(&self) -> Option<usize> {
        None
    }
    fn degree(&self, n: usize, k: &Self::Key) -> Bidegree;
    /// Basis of level `n` with Adams degree in `[adams_min, adams_max]`;
    /// Laurent-type factors are cut off at exponent `radius`.
    fn basis(&self, n: usize, adams_min: i64, adams_max: i64, radius: usize) -> Vec<Self::Key>;
    /// `dᵢ: Xⁿ → Xⁿ⁺¹`, `0 ≤ i ≤ n + 1`.
    fn coface(&self, n: usize, i: usize, k: &Self::Key) -> Lin<Self::Key>;
    /// `sⱼ: Xⁿ → Xⁿ⁻¹`, `0 ≤ j < n`.
    fn codegeneracy(&self, n: usize, j: usize, k: &Self::Key) -> Lin<Self::Key>;
    fn differential(&self, n: usize, k: &Self::Key) -> Lin<Self::Key>;
    fn label(&self, n: usize, k: &Self::Key) -> String;
    /// Lowest Adams degree where the levels are known.
    fn adams_floor(&self) -> Option<i64> {
        None
    }
}

pub trait CosimplicialAlgebra: CosimplicialObject {
    fn unit(&self, n: usize) -> Self::Key;
    fn product(&self, n: usize, a: &Self::Key, b: &Self::Key) -> Lin<Self::Key>;
    /// An explicit inverse of the group-like map `X¹ ⊗ X¹ → X²`, when the
    /// object knows one (nerves of Hopf algebras, through the antipode).
    fn grouplike_inverse(&self, _level_two: &Self::Key) -> Option<Lin<(Self::Key, Self::Key)>> {
        None
    }
}

/// A cosimplicial module whose level `n` is free over level `n` of its base
/// on a known set of generators.
pub trait CosimplicialModule: CosimplicialObject {
    type Base: CosimplicialAlgebra;
    fn base(&self) -> &Self::Base;
    /// Right action `m · b` at level `n`.
    fn act(&self, n: usize, m: &Self::Key, b: &<Self::Base as CosimplicialObject>::Key) -> Lin<Self::Key>;
    fn free_generators(&self, n: usize) -> Vec<Self::Key>;
}

fn map_lin<X, F>(x: &X, lin: &Lin<X::Key>, f: F) -> Lin<X::Key>
where
    X: CosimplicialObject + ?Sized,
    F: Fn(&X::Key) -> Lin<X::Key>,
{
    let mut out = Lin::new();
    for (k, c) in lin {
        add_scaled(&mut out, &f(k), c);
    }
    reduce(x.ring(), out)
}

/// Composite cosimplicial operator from level `from` through the given
/// cofaces, applied in order.
pub fn apply_cofaces<X: CosimplicialObject + ?Sized>(x: &X, from: usize, faces: &[usize], k: &X::Key) -> Lin<X::Key> {
    let mut cur = single(k.clone());
    for (step, &i) in faces.iter().enumerate() {
        cur = map_lin(x, &cur, |y| x.coface(from + step, i, y));
    }
    cur
}

/// Cofaces, in application order, realizing the monotone injection `[m] → [n]`
/// with the given image.
pub fn injection_cofaces(image: &[usize], n: usize) -> Vec<usize> {
    (0..=n).filter(|j| !image.contains(j)).collect()
}

/// `αᵢ: [1] → [n]`, `0 ↦ i, 1 ↦ i + 1`.
pub fn alpha(i: usize, n: usize) -> Vec<usize> {
    injection_cofaces(&[i, i + 1], n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub holds: bool,
    pub witness: Option<String>,
    pub checked: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    fn push<T: Sync, F, L>(&mut self, identity: String, items: &[T], check: F, describe: L)
    where
        F: Fn(&T) -> bool + Sync,
        L: Fn(&T) -> String,
    {
        let fail = items.par_iter().position_first(|t| !check(t));
        self.checks.push(IdentityCheck {
            identity,
            holds: fail.is_none(),
            witness: fail.map(|i| describe(&items[i])),
            checked: items.len(),
        });
    }
}

/// The finite part of the object that the checkers look at.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Scope {
    pub levels: usize,
    pub adams_min: i64,
    pub adams_max: i64,
    pub radius: usize,
}

impl Scope {
    pub fn new(levels: usize, adams_min: i64, adams_max: i64, radius: usize) -> Self {
        Scope { levels, adams_min, adams_max, radius }
    }
}

/// Every cosimplicial identity, and compatibility with differentials, on all
/// basis elements of levels within `scope`.
pub fn check_identities<X: CosimplicialObject>(x: &X, scope: &Scope) -> IdentityReport {
    let ring = x.ring();
    let n_top = scope.levels;
    let basis: Vec<Vec<X::Key>> =
        (0..=n_top).map(|n| x.basis(n, scope.adams_min, scope.adams_max, scope.radius)).collect();
    let mut report = IdentityReport::default();
    for n in 0..=n_top {
        let b = &basis[n];
        let label = |k: &X::Key| x.label(n, k);
        if n + 2 <= n_top {
            for i in 0..=n + 1 {
                for j in i + 1..=n + 2 {
                    report.push(
                        format!("d{j}d{i} = d{i}d{} on level {n}", j - 1),
                        b,
                        |k| lin_eq(ring, &apply_cofaces(x, n, &[i, j], k), &apply_cofaces(x, n, &[j - 1, i], k)),
                        label,
                    );
                }
            }
        }
        if n < n_top {
            for i in 0..=n + 1 {
                for j in 0..=n {
                    let lhs = |k: &X::Key| map_lin(x, &x.coface(n, i, k), |y| x.codegeneracy(n + 1, j, y));
                    let name = format!("s{j}d{i} on level {n}");
                    if i == j || i == j + 1 {
                        report.push(name, b, |k| lin_eq(ring, &lhs(k), &single(k.clone())), label);
                    } else if i < j {
                        report.push(
                            name,
                            b,
                            |k| lin_eq(ring, &lhs(k), &map_lin(x, &x.codegeneracy(n, j - 1, k), |y| x.coface(n - 1, i, y))),
                            label,
                        );
                    } else {
                        report.push(
                            name,
                            b,
                            |k| lin_eq(ring, &lhs(k), &map_lin(x, &x.codegeneracy(n, j, k), |y| x.coface(n - 1, i - 1, y))),
                            label,
                        );
                    }
                }
            }
            for i in 0..=n + 1 {
                report.push(
                    format!("d{i} is a chain map on level {n}"),
                    b,
                    |k| {
                        let l = map_lin(x, &x.coface(n, i, k), |y| x.differential(n + 1, y));
                        let r = map_lin(x, &x.differential(n, k), |y| x.coface(n, i, y));
                        lin_eq(ring, &l, &r)
                    },
                    label,
                );
            }
        }
        if n >= 2 {
            for i in 0..n - 1 {
                for j in i..n - 1 {
                    report.push(
                        format!("s{j}s{i} = s{i}s{} on level {n}", j + 1),
                        b,
                        |k| {
                            let l = map_lin(x, &x.codegeneracy(n, i, k), |y| x.codegeneracy(n - 1, j, y));
                            let r = map_lin(x, &x.codegeneracy(n, j + 1, k), |y| x.codegeneracy(n - 1, i, y));
                            lin_eq(ring, &l, &r)
                        },
                        label,
                    );
                }
            }
        }
    }
    report
}

/// Cofaces and codegeneracies are unital and multiplicative on levels `< algebra_levels`.
pub fn check_algebra_maps<X: CosimplicialAlgebra>(x: &X, scope: &Scope, algebra_levels: usize) -> IdentityReport {
    let ring = x.ring();
    let mut report = IdentityReport::default();
    for n in 0..algebra_levels.min(scope.levels) {
        let b = x.basis(n, scope.adams_min, scope.adams_max, scope.radius);
        let pairs: Vec<(X::Key, X::Key)> = b
            .iter()
            .flat_map(|p| b.iter().map(move |q| (p.clone(), q.clone())))
            .filter(|(p, q)| x.degree(n, p).adams + x.degree(n, q).adams >= scope.adams_min)
            .collect();
        let mul = |m: usize, l: &Lin<X::Key>, r: &Lin<X::Key>| {
            let mut out = Lin::new();
            for (p, cp) in l {
                for (q, cq) in r {
                    add_scaled(&mut out, &x.product(m, p, q), &(cp * cq));
                }
            }
            reduce(ring, out)
        };
        for i in 0..=n + 1 {
            let unit_ok = lin_eq(ring, &x.coface(n, i, &x.unit(n)), &single(x.unit(n + 1)));
            report.checks.push(IdentityCheck {
                identity: format!("d{i} unital on level {n}"),
                holds: unit_ok,
                witness: None,
                checked: 1,
            });
            report.push(
                format!("d{i} multiplicative on level {n}"),
                &pairs,
                |(p, q)| {
                    let l = map_lin(x, &x.product(n, p, q), |y| x.coface(n, i, y));
                    let r = mul(n + 1, &x.coface(n, i, p), &x.coface(n, i, q));
                    lin_eq(ring, &l, &r)
                },
                |(p, q)| format!("({}, {})", x.label(n, p), x.label(n, q)),
            );
        }
    }
    report
}

/// A cosimplicial object of complexes given by finite symbolic data on levels
/// `0..=N`; keys are basis indices within a level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedCosimplicial {
    pub ring: CoefficientRing,
    pub levels: Vec<Level>,
    /// `cofaces[n][i][k]`: image of basis element `k` of level `n` under `dᵢ`.
    pub cofaces: Vec<Vec<Vec<Lin<usize>>>>,
    /// `codegeneracies[n][j][k]` for `n ≥ 1`; entry 0 is empty.
    pub codegeneracies: Vec<Vec<Vec<Lin<usize>>>>,
    pub adams_floor: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    pub names: Vec<String>,
    pub degrees: Vec<Bidegree>,
    pub differential: Vec<Lin<usize>>,
}

impl TruncatedCosimplicial {
    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    /// Restriction to levels `0..=n`.
    pub fn truncate(&self, n: usize) -> Self {
        let n = n.min(self.top());
        TruncatedCosimplicial {
            ring: self.ring,
            levels: self.levels[..=n].to_vec(),
            cofaces: self.cofaces[..n].to_vec(),
            codegeneracies: self.codegeneracies[..=n].to_vec(),
            adams_floor: self.adams_floor,
        }
    }

    pub fn level_complex(&self, n: usize) -> Result<BigradedComplex, ComplexError> {
        let lvl = &self.levels[n];
        let mut keys: BTreeMap<Bidegree, Vec<usize>> = BTreeMap::new();
        for (i, b) in lvl.degrees.iter().enumerate() {
            keys.entry(*b).or_default().push(i);
        }
        complex_from_keys(self.ring, &keys, |k| lvl.names[*k].clone(), |k| lvl.differential[*k].clone(), self.adams_floor)
    }

    /// The constant cosimplicial object on a complex.
    pub fn constant(c: &BigradedComplex, levels: usize) -> Self {
        let mut names = Vec::new();
        let mut degrees = Vec::new();
        let mut offset = BTreeMap::new();
        for b in c.bidegrees() {
            offset.insert(b, names.len());
            for l in c.labels(b) {
                names.push(l.clone());
                degrees.push(b);
            }
        }
        let mut differential = vec![Lin::new(); names.len()];
        for b in c.bidegrees() {
            let d = c.differential(b);
            for (r, col, v) in d.entries() {
                add_term(&mut differential[offset[&b] + col], offset[&b.next()] + r, v.clone());
            }
        }
        let level = Level { names: names.clone(), degrees, differential };
        let ids: Vec<Lin<usize>> = (0..names.len()).map(single).collect();
        TruncatedCosimplicial {
            ring: c.ring(),
            levels: vec![level; levels + 1],
            cofaces: (0..levels).map(|n| vec![ids.clone(); n + 2]).collect(),
            codegeneracies: (0..=levels).map(|n| vec![ids.clone(); n]).collect(),
            adams_floor: c.adams_floor(),
        }
    }
}

impl CosimplicialObject for TruncatedCosimplicial {
    type Key = usize;

    fn ring(&self) -> CoefficientRing {
        self.ring
    }
    fn top_level(&self) -> Option<usize> {
        Some(self.top())
    }
    fn degree(&self, n: usize, k: &usize) -> Bidegree {
        self.levels[n].degrees[*k]
    }
    fn basis(&self, n: usize, adams_min: i64, adams_max: i64, _radius: usize) -> Vec<usize> {
        if n > self.top() {
            return Vec::new();
        }
        let lvl = &self.levels[n];
        (0..lvl.names.len()).filter(|k| (adams_min..=adams_max).contains(&lvl.degrees[*k].adams)).collect()
    }
    fn coface(&self, n: usize, i: usize, k: &usize) -> Lin<usize> {
        self.cofaces.get(n).map(|c| c[i][*k].clone()).unwrap_or_default()
    }
    fn codegeneracy(&self, n: usize, j: usize, k: &usize) -> Lin<usize> {
        self.codegeneracies[n][j][*k].clone()
    }
    fn differential(&self, n: usize, k: &usize) -> Lin<usize> {
        self.levels[n].differential[*k].clone()
    }
    fn label(&self, n: usize, k: &usize) -> String {
        self.levels[n].names[*k].clone()
    }
    fn adams_floor(&self) -> Option<i64> {
        self.adams_floor
    }
}

/// Finite data of levels `0..=levels` of `x` within an Adams range. Fails if
/// the cosimplicial maps leave the enumerated basis.
pub fn materialize<X: CosimplicialObject>(x: &X, scope: &Scope) -> Result<TruncatedCosimplicial, CosimplicialError> {
    let ring = x.ring();
    let keys: Vec<Vec<X::Key>> =
        (0..=scope.levels).map(|n| x.basis(n, scope.adams_min, scope.adams_max, scope.radius)).collect();
    let index: Vec<BTreeMap<&X::Key, usize>> =
        keys.iter().map(|ks| ks.iter().enumerate().map(|(i, k)| (k, i)).collect()).collect();
    let convert = |n: usize, lin: Lin<X::Key>, what: &str| -> Result<Lin<usize>, CosimplicialError> {
        let mut out = Lin::new();
        for (k, c) in reduce(ring, lin) {
            let i = index[n].get(&k).ok_or_else(|| CosimplicialError::OpenBasis(what.to_string(), n))?;
            out.insert(*i, c);
        }
        Ok(out)
    };
    let mut levels = Vec::new();
    for (n, ks) in keys.iter().enumerate() {
        let differential =
            ks.iter().map(|k| convert(n, x.differential(n, k), "differential")).collect::<Result<Vec<_>, _>>()?;
        levels.push(Level {
            names: ks.iter().map(|k| x.label(n, k)).collect(),
            degrees: ks.iter().map(|k| x.degree(n, k)).collect(),
            differential,
        });
    }
    let mut cofaces = Vec::new();
    for n in 0..scope.levels {
        let mut per = Vec::new();
        for i in 0..=n + 1 {
            per.push(
                keys[n].iter().map(|k| convert(n + 1, x.coface(n, i, k), "coface")).collect::<Result<Vec<_>, _>>()?,
            );
        }
        cofaces.push(per);
    }
    let mut codegeneracies = vec![Vec::new()];
    for n in 1..=scope.levels {
        let mut per = Vec::new();
        for j in 0..n {
            per.push(
                keys[n]
                    .iter()
                    .map(|k| convert(n - 1, x.codegeneracy(n, j, k), "codegeneracy"))
                    .collect::<Result<Vec<_>, _>>()?,
            );
        }
        codegeneracies.push(per);
    }
    let floor = Some(x.adams_floor().map_or(scope.adams_min, |f| f.max(scope.adams_min)));
    Ok(TruncatedCosimplicial { ring, levels, cofaces, codegeneracies, adams_floor: floor })
}

/// Product-total complex of the unnormalized cochain complex of levels
/// `0..=N`: level `n` in cohomological degree `c` sits in total degree
/// `c + n`, with `D = Σ(−1)ⁱdᵢ + (−1)ⁿd`.
pub fn unnormalized_total(x: &TruncatedCosimplicial) -> Result<BigradedComplex, ComplexError> {
    let top = x.top();
    let mut keys: BTreeMap<Bidegree, Vec<(usize, usize)>> = BTreeMap::new();
    for (n, lvl) in x.levels.iter().enumerate() {
        for (k, b) in lvl.degrees.iter().enumerate() {
            keys.entry(Bidegree::new(b.adams, b.coh + n as i64)).or_default().push((n, k));
        }
    }
    complex_from_keys(
        x.ring,
        &keys,
        |(n, k)| format!("L{n}:{}", x.levels[*n].names[*k]),
        |(n, k)| {
            let mut out = Lin::new();
            if *n < top {
                for i in 0..=n + 1 {
                    let s = sign(i % 2 == 1);
                    for (t, c) in &x.cofaces[*n][i][*k] {
                        add_term(&mut out, (n + 1, *t), c * &s);
                    }
                }
            }
            let s = sign(n % 2 == 1);
            for (t, c) in &x.levels[*n].differential[*k] {
                add_term(&mut out, (*n, *t), c * &s);
            }
            out
        },
        x.adams_floor,
    )
}

/// Total complex of the normalized cochain complex: level `n` is divided by
/// the images of `d₀, …, d_{n−1}` and the cosimplicial differential is
/// `(−1)ⁿ⁺¹ d_{n+1}` out of level `n`.
pub fn normalized_total(x: &TruncatedCosimplicial) -> Result<BigradedComplex, CosimplicialError> {
    let ring = x.ring;
    let top = x.top();
    // position of each basis index inside its bidegree block, and the blocks
    let mut pos: Vec<Vec<usize>> = Vec::new();
    let mut blocks: Vec<BTreeMap<Bidegree, Vec<usize>>> = Vec::new();
    for lvl in &x.levels {
        let mut bl: BTreeMap<Bidegree, Vec<usize>> = BTreeMap::new();
        let mut p = Vec::with_capacity(lvl.degrees.len());
        for (k, b) in lvl.degrees.iter().enumerate() {
            let e = bl.entry(*b).or_default();
            p.push(e.len());
            e.push(k);
        }
        pos.push(p);
        blocks.push(bl);
    }
    let sparse = |n: usize, lin: &Lin<usize>| -> Vec<(usize, BigInt)> {
        lin.iter().map(|(k, c)| (pos[n][*k], c.clone())).collect()
    };
    let jobs: Vec<(usize, Bidegree)> =
        (0..=top).flat_map(|n| blocks[n].keys().map(move |b| (n, *b))).collect();
    let quotients: BTreeMap<(usize, Bidegree), linalg::Quotient> = jobs
        .par_iter()
        .map(|&(n, b)| {
            let dim = blocks[n][&b].len();
            let mut trip = Vec::new();
            let mut col = 0;
            if n > 0 {
                for k in blocks[n - 1].get(&b).map(Vec::as_slice).unwrap_or(&[]) {
                    for i in 0..n {
                        for (r, c) in sparse(n, &x.cofaces[n - 1][i][*k]) {
                            trip.push((r, col, c));
                        }
                        col += 1;
                    }
                }
            }
            let m = ExactMatrix::from_triplets(ring, dim, col, trip);
            linalg::quotient_by_span(&m).map(|q| ((n, b), q))
        })
        .collect::<Result<_, _>>()?;
    let mut basis: BTreeMap<Bidegree, Vec<String>> = BTreeMap::new();
    let mut offsets: BTreeMap<(usize, Bidegree), (Bidegree, usize)> = BTreeMap::new();
    for ((n, b), q) in &quotients {
        let t = Bidegree::new(b.adams, b.coh + *n as i64);
        let labels = basis.entry(t).or_default();
        offsets.insert((*n, *b), (t, labels.len()));
        for r in 0..q.len() {
            labels.push(format!("N{n}{b}[{r}]"));
        }
    }
    let entries: Vec<(Bidegree, Vec<(usize, usize, BigInt)>)> = quotients
        .par_iter()
        .map(|((n, b), q)| {
            let (t, src_off) = offsets[&(*n, *b)];
            let keys = &blocks[*n][b];
            let mut trip = Vec::new();
            for r in 0..q.len() {
                let lin: Lin<usize> = q.representatives.column(r).iter().map(|(i, c)| (keys[*i], c.clone())).collect();
                let mut targets: Vec<(usize, Bidegree, Lin<usize>)> = Vec::new();
                if *n < top {
                    let s = sign((n + 1) % 2 == 1);
                    let mut img = Lin::new();
                    for (k, c) in &lin {
                        add_scaled(&mut img, &x.cofaces[*n][n + 1][*k], &(c * &s));
                    }
                    targets.push((n + 1, *b, img));
                }
                let s = sign(n % 2 == 1);
                let mut img = Lin::new();
                for (k, c) in &lin {
                    add_scaled(&mut img, &x.levels[*n].differential[*k], &(c * &s));
                }
                targets.push((*n, b.next(), img));
                for (tn, tb, img) in targets {
                    if img.is_empty() {
                        continue;
                    }
                    let Some(tq) = quotients.get(&(tn, tb)) else { continue };
                    let (_, tgt_off) = offsets[&(tn, tb)];
                    for (i, c) in tq.project_sparse(&sparse(tn, &img)) {
                        trip.push((tgt_off + i, src_off + r, c));
                    }
                }
            }
            (t, trip)
        })
        .collect();
    let mut triplets: BTreeMap<Bidegree, Vec<(usize, usize, BigInt)>> = BTreeMap::new();
    for (t, trip) in entries {
        triplets.entry(t).or_default().extend(trip);
    }
    let dim = |b: &Bidegree| basis.get(b).map_or(0, Vec::len);
    let differentials = basis
        .keys()
        .map(|b| {
            let t = triplets.remove(b).unwrap_or_default();
            (*b, ExactMatrix::from_triplets(ring, dim(&b.next()), dim(b), t))
        })
        .collect();
    Ok(BigradedComplex::new(ring, basis, differentials, x.adams_floor)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotReport {
    pub homology: HomologyReport,
    pub levels: usize,
    /// Per Adams degree of the window: the lower bound `n₀` used and the
    /// highest total degree guaranteed to agree with the untruncated Tot
    /// (`None` when the Adams degree is empty at every level).
    pub validity: BTreeMap<i64, Option<(i64, i64)>>,
}

impl TotReport {
    pub fn guaranteed(&self, adams: i64, coh: i64) -> bool {
        match self.validity.get(&adams) {
            Some(Some((_, top))) => coh <= *top,
            Some(None) => true,
            None => false,
        }
    }
}

/// Chain-level lower bounds of the levels per Adams degree of `w`.
pub fn level_lower_bounds(x: &TruncatedCosimplicial, w: &Window) -> Result<BTreeMap<i64, Option<i64>>, CosimplicialError> {
    let mut out = BTreeMap::new();
    for a in w.adams_min..=w.adams_max {
        if x.adams_floor.is_some_and(|f| a < f) {
            return Err(CosimplicialError::UnboundedBelow(a));
        }
        let low = x.levels.iter().flat_map(|l| l.degrees.iter()).filter(|b| b.adams == a).map(|b| b.coh).min();
        out.insert(a, low);
    }
    Ok(out)
}

/// Homology of the product-total complex of the truncation, with the range
/// in which it is guaranteed to agree with the untruncated Tot: total degree
/// `≤ N + n₀ − 1` where `H^c(Xᵏ) = 0` for `c < n₀` at every level `k`.
pub fn tot(
    x: &TruncatedCosimplicial,
    w: &Window,
    lower_bounds: Option<&BTreeMap<i64, i64>>,
) -> Result<TotReport, CosimplicialError> {
    let computed = level_lower_bounds(x, w)?;
    let n = x.top() as i64;
    let mut validity = BTreeMap::new();
    for (a, low) in computed {
        let bound = lower_bounds.and_then(|m| m.get(&a).copied()).or(low);
        validity.insert(a, bound.map(|n0| (n0, n + n0 - 1)));
    }
    let total = unnormalized_total(x)?;
    let homology = bigraded::homology(&total, w)?;
    Ok(TotReport { homology, levels: x.top(), validity })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum MapVerdict {
    Strict,
    QuasiIso,
    Fail { level: usize, bidegree: Option<Bidegree>, witness: String },
}

impl MapVerdict {
    pub fn passed(&self) -> bool {
        !matches!(self, MapVerdict::Fail { .. })
    }
}

/// Result of comparing a map on finite bases: each source element goes to
/// `±` a single basis element, injectively, and every target element is hit.
enum Bijectivity<K> {
    Signed,
    NotMonomial(K),
    NotInjective(K),
    Missed(K),
}

fn signed_bijection<S, T, F>(ring: CoefficientRing, sources: &[S], targets: &[T], f: F) -> Bijectivity<String>
where
    S: Sync + Debug,
    T: Ord + Clone + Debug + Sync + Send,
    F: Fn(&S) -> Lin<T> + Sync,
{
    let images: Vec<Lin<T>> = sources.par_iter().map(|s| reduce(ring, f(s))).collect();
    let mut seen: BTreeSet<T> = BTreeSet::new();
    for (s, img) in sources.iter().zip(&images) {
        if img.is_empty() {
            continue;
        }
        let monomial = img.len() == 1 && img.values().all(|c| c.abs().is_one() || ring.is_field());
        if !monomial {
            return Bijectivity::NotMonomial(format!("{s:?}"));
        }
        let t = img.keys().next().unwrap().clone();
        if !seen.insert(t) {
            return Bijectivity::NotInjective(format!("{s:?}"));
        }
    }
    if let Some((s, _)) = sources.iter().zip(&images).find(|(_, i)| i.is_empty()) {
        return Bijectivity::NotInjective(format!("{s:?}"));
    }
    for t in targets {
        if !seen.contains(t) {
            return Bijectivity::Missed(format!("{t:?}"));
        }
    }
    Bijectivity::Signed
}

/// Tuples of level-one basis elements with total Adams degree in range.
fn level_one_tuples<X: CosimplicialObject>(x: &X, n: usize, adams_min: i64, adams_max: i64, radius: usize) -> Vec<Vec<X::Key>> {
    let ones = x.basis(1, adams_min, adams_max.max(0), radius);
    let mut out = vec![(Vec::new(), 0i64)];
    for _ in 0..n {
        let mut next = Vec::new();
        for (t, a) in &out {
            for k in &ones {
                let na = a + x.degree(1, k).adams;
                if na >= adams_min {
                    let mut t2 = t.clone();
                    t2.push(k.clone());
                    next.push((t2, na));
                }
            }
        }
        out = next;
    }
    out.into_iter().filter(|(_, a)| *a <= adams_max).map(|(t, _)| t).collect()
}

/// Retries a surjectivity test with sources of doubling radius, since the
/// maps may shift Laurent exponents by an amount not known in advance.
fn with_growing_radius<F>(start: usize, test: F) -> Bijectivity<String>
where
    F: Fn(usize) -> Bijectivity<String>,
{
    let mut r = start.max(1);
    let mut last = test(r);
    for _ in 0..3 {
        if !matches!(last, Bijectivity::Missed(_)) {
            break;
        }
        r *= 2;
        last = test(r);
    }
    last
}

/// Source exponent radius large enough to reach every target in `radius`.
fn source_radius(radius: usize, adams_min: i64, n: usize) -> usize {
    radius + adams_min.unsigned_abs() as usize * n.max(1)
}

/// `(X¹)^{⊗n} → Xⁿ`, `x₁ ⊗ … ⊗ xₙ ↦ α₀*(x₁)·…·α_{n−1}*(xₙ)`.
pub fn segal_map<X: CosimplicialAlgebra>(x: &X, tuple: &[X::Key]) -> Lin<X::Key> {
    let n = tuple.len();
    let mut acc = single(x.unit(n));
    for (i, k) in tuple.iter().enumerate() {
        let img = apply_cofaces(x, 1, &alpha(i, n), k);
        let mut next = Lin::new();
        for (p, cp) in &acc {
            for (q, cq) in &img {
                add_scaled(&mut next, &x.product(n, p, q), &(cp * cq));
            }
        }
        acc = reduce(x.ring(), next);
    }
    acc
}

/// Segal condition at levels `2..=levels`: strict if the map is a signed
/// bijection of bases, quasi-iso if it is an isomorphism on homology.
pub fn check_segal<X: CosimplicialAlgebra>(x: &X, scope: &Scope) -> MapVerdict {
    let mut verdict = MapVerdict::Strict;
    for n in 2..=scope.levels {
        let src_radius = source_radius(scope.radius, scope.adams_min, n);
        let sources = level_one_tuples(x, n, scope.adams_min, scope.adams_max, src_radius);
        let targets = x.basis(n, scope.adams_min, scope.adams_max, scope.radius);
        match signed_bijection(x.ring(), &sources, &targets, |t| segal_map(x, t)) {
            Bijectivity::Signed => {}
            _ => match segal_on_homology(x, n, scope) {
                Ok(None) => verdict = MapVerdict::QuasiIso,
                Ok(Some(b)) => {
                    return MapVerdict::Fail { level: n, bidegree: Some(b), witness: format!("Segal map at level {n}") }
                }
                Err(e) => return MapVerdict::Fail { level: n, bidegree: None, witness: e.to_string() },
            },
        }
    }
    verdict
}

/// Builds the Segal map at level `n` as a chain map of finite complexes and
/// returns the first bidegree where it fails to be a homology isomorphism.
fn segal_on_homology<X: CosimplicialAlgebra>(x: &X, n: usize, scope: &Scope) -> Result<Option<Bidegree>, CosimplicialError> {
    let ring = x.ring();
    let sources = level_one_tuples(x, n, scope.adams_min, scope.adams_max, scope.radius);
    let targets = x.basis(n, scope.adams_min, scope.adams_max, scope.radius);
    let mut skeys: BTreeMap<Bidegree, Vec<Vec<X::Key>>> = BTreeMap::new();
    for t in &sources {
        let mut b = Bidegree::ZERO;
        for k in t {
            b = b + x.degree(1, k);
        }
        skeys.entry(b).or_default().push(t.clone());
    }
    let mut tkeys: BTreeMap<Bidegree, Vec<X::Key>> = BTreeMap::new();
    for k in &targets {
        tkeys.entry(x.degree(n, k)).or_default().push(k.clone());
    }
    let tensor_d = |t: &Vec<X::Key>| {
        let mut out = Lin::new();
        let mut prefix = 0i64;
        for (i, k) in t.iter().enumerate() {
            for (dk, c) in x.differential(1, k) {
                let mut t2 = t.clone();
                t2[i] = dk;
                add_term(&mut out, t2, c * sign(prefix.rem_euclid(2) == 1));
            }
            prefix += x.degree(1, k).coh;
        }
        out
    };
    let floor = Some(scope.adams_min);
    let src = complex_from_keys(ring, &skeys, |t| format!("{t:?}"), tensor_d, floor)?;
    let tgt = complex_from_keys(ring, &tkeys, |k| x.label(n, k), |k| x.differential(n, k), floor)?;
    let mut components = BTreeMap::new();
    for (b, ks) in &skeys {
        let tk = tkeys.get(b).cloned().unwrap_or_default();
        let index: BTreeMap<&X::Key, usize> = tk.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let mut trip = Vec::new();
        for (c, t) in ks.iter().enumerate() {
            for (k, v) in segal_map(x, t) {
                let r = *index.get(&k).ok_or_else(|| CosimplicialError::OpenBasis("Segal map".into(), n))?;
                trip.push((r, c, v));
            }
        }
        components.insert(*b, ExactMatrix::from_triplets(ring, tk.len(), ks.len(), trip));
    }
    let f = bigraded::ChainMap { components };
    let keys: BTreeSet<Bidegree> = skeys.keys().chain(tkeys.keys()).copied().collect();
    for b in keys {
        if !bigraded::induces_iso_at(&src, &tgt, &f, b)? {
            return Ok(Some(b));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum GrouplikeVerdict {
    /// Verified through an explicit two-sided inverse.
    PassAntipode,
    /// Verified as a bijection of bases within the scope.
    PassWindow,
    Fail { witness: String },
}

impl GrouplikeVerdict {
    pub fn passed(&self) -> bool {
        !matches!(self, GrouplikeVerdict::Fail { .. })
    }
}

/// `X¹ ⊗ X¹ → X²`, `x ⊗ y ↦ c*(x)·α₀*(y)` with `c = d₁`, `α₀* = d₂`.
pub fn grouplike_map<X: CosimplicialAlgebra>(x: &X, a: &X::Key, b: &X::Key) -> Lin<X::Key> {
    let l = x.coface(1, 1, a);
    let r = x.coface(1, 2, b);
    let mut out = Lin::new();
    for (p, cp) in &l {
        for (q, cq) in &r {
            add_scaled(&mut out, &x.product(2, p, q), &(cp * cq));
        }
    }
    reduce(x.ring(), out)
}

/// Group-like condition: an explicit inverse if the object offers one and it
/// checks out on both sides, otherwise a windowed bijectivity test.
pub fn check_grouplike<X: CosimplicialAlgebra>(x: &X, scope: &Scope) -> GrouplikeVerdict {
    let ring = x.ring();
    let pairs: Vec<Vec<X::Key>> = level_one_tuples(x, 2, scope.adams_min, scope.adams_max, scope.radius);
    let targets = x.basis(2, scope.adams_min, scope.adams_max, scope.radius);
    let inverse_ok = targets.iter().all(|t| x.grouplike_inverse(t).is_some());
    if inverse_ok && !targets.is_empty() {
        let phi_psi = targets.par_iter().all(|t| {
            let psi = x.grouplike_inverse(t).unwrap();
            let mut back = Lin::new();
            for ((a, b), c) in &psi {
                add_scaled(&mut back, &grouplike_map(x, a, b), c);
            }
            lin_eq(ring, &back, &single(t.clone()))
        });
        let psi_phi = pairs.par_iter().all(|p| {
            let mut back: Lin<(X::Key, X::Key)> = Lin::new();
            for (t, c) in grouplike_map(x, &p[0], &p[1]) {
                match x.grouplike_inverse(&t) {
                    Some(psi) => add_scaled(&mut back, &psi, &c),
                    None => return false,
                }
            }
            lin_eq(ring, &back, &single((p[0].clone(), p[1].clone())))
        });
        if phi_psi && psi_phi {
            return GrouplikeVerdict::PassAntipode;
        }
    }
    let start = 2 * source_radius(scope.radius, scope.adams_min, 2);
    let outcome = with_growing_radius(start, |r| {
        let sources = level_one_tuples(x, 2, scope.adams_min, scope.adams_max, r);
        signed_bijection(ring, &sources, &targets, |p| grouplike_map(x, &p[0], &p[1]))
    });
    match outcome {
        Bijectivity::Signed => GrouplikeVerdict::PassWindow,
        Bijectivity::NotMonomial(w) | Bijectivity::NotInjective(w) => {
            match grouplike_by_rank(x, scope) {
                Ok(None) => GrouplikeVerdict::PassWindow,
                Ok(Some(w2)) => GrouplikeVerdict::Fail { witness: w2 },
                Err(_) => GrouplikeVerdict::Fail { witness: w },
            }
        }
        Bijectivity::Missed(t) => GrouplikeVerdict::Fail { witness: format!("{t} is not in the image") },
    }
}

/// Bidegree-wise invertibility of the group-like map when every bidegree of
/// level two is finite.
fn grouplike_by_rank<X: CosimplicialAlgebra>(x: &X, scope: &Scope) -> Result<Option<String>, CosimplicialError> {
    let ring = x.ring();
    let pairs = level_one_tuples(x, 2, scope.adams_min, scope.adams_max, scope.radius);
    let targets = x.basis(2, scope.adams_min, scope.adams_max, scope.radius);
    let mut by_b: BTreeMap<Bidegree, (Vec<Vec<X::Key>>, Vec<X::Key>)> = BTreeMap::new();
    for p in pairs {
        let b = x.degree(1, &p[0]) + x.degree(1, &p[1]);
        by_b.entry(b).or_default().0.push(p);
    }
    for t in targets {
        by_b.entry(x.degree(2, &t)).or_default().1.push(t);
    }
    for (b, (src, tgt)) in by_b {
        if src.len() != tgt.len() {
            return Ok(Some(format!("rank mismatch at {b}")));
        }
        let index: BTreeMap<&X::Key, usize> = tgt.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let mut trip = Vec::new();
        for (c, p) in src.iter().enumerate() {
            for (k, v) in grouplike_map(x, &p[0], &p[1]) {
                let r = *index.get(&k).ok_or_else(|| CosimplicialError::OpenBasis("group-like map".into(), 2))?;
                trip.push((r, c, v));
            }
        }
        let m = ExactMatrix::from_triplets(ring, tgt.len(), src.len(), trip);
        let factors = linalg::invariant_factors(&m);
        if factors.len() != src.len() || factors.iter().any(|d| !ring.is_field() && !d.is_one()) {
            return Ok(Some(format!("not invertible at {b}")));
        }
    }
    Ok(None)
}

/// Level zero is the ground ring: strictly (a single unit basis element in
/// (0,0)) or on homology.
pub fn check_unit_level<X: CosimplicialAlgebra>(x: &X, scope: &Scope) -> MapVerdict {
    let b = x.basis(0, scope.adams_min, scope.adams_max, scope.radius);
    if b.len() == 1 && b[0] == x.unit(0) && x.degree(0, &b[0]) == Bidegree::ZERO {
        return MapVerdict::Strict;
    }
    let mut keys: BTreeMap<Bidegree, Vec<X::Key>> = BTreeMap::new();
    for k in b {
        keys.entry(x.degree(0, &k)).or_default().push(k);
    }
    let c = complex_from_keys(x.ring(), &keys, |k| x.label(0, k), |k| x.differential(0, k), Some(scope.adams_min));
    let w = Window { adams_min: scope.adams_min, adams_max: scope.adams_max, coh_min: -64, coh_max: 64 };
    match c.and_then(|c| bigraded::homology(&c, &w)) {
        Ok(h) if h.groups.len() == 1 && h.get(Bidegree::ZERO) == linalg::AbGroupReport::free(1) => MapVerdict::QuasiIso,
        Ok(h) => MapVerdict::Fail {
            level: 0,
            bidegree: h.groups.keys().find(|b| **b != Bidegree::ZERO).copied().or(Some(Bidegree::ZERO)),
            witness: "level zero is not the ground ring".into(),
        },
        Err(e) => MapVerdict::Fail { level: 0, bidegree: None, witness: e.to_string() },
    }
}

/// Cartesian condition on the generating cofaces: for free `Mⁿ` the base
/// change `Mⁿ ⊗_{Bⁿ} Bⁿ⁺¹` is free on the same generators, and the
/// comparison map `g ⊗ b ↦ dᵢ(g)·b` must be an isomorphism.
pub fn check_cartesian<M: CosimplicialModule>(m: &M, scope: &Scope) -> MapVerdict {
    let base = m.base();
    for n in 0..scope.levels {
        let gens = m.free_generators(n);
        let targets = m.basis(n + 1, scope.adams_min, scope.adams_max, scope.radius);
        let sources_at = |r: usize| -> Vec<(M::Key, <M::Base as CosimplicialObject>::Key)> {
            let bbasis = base.basis(n + 1, scope.adams_min - top_adams(m, n, &gens), scope.adams_max, r);
            gens.iter()
                .flat_map(|g| bbasis.iter().map(move |b| (g.clone(), b.clone())))
                .filter(|(g, b)| {
                    let a = m.degree(n, g).adams + base.degree(n + 1, b).adams;
                    (scope.adams_min..=scope.adams_max).contains(&a)
                })
                .collect()
        };
        for i in 0..=n + 1 {
            let f = |(g, b): &(M::Key, <M::Base as CosimplicialObject>::Key)| {
                let mut out = Lin::new();
                for (y, c) in m.coface(n, i, g) {
                    add_scaled(&mut out, &m.act(n + 1, &y, b), &c);
                }
                out
            };
            let start = source_radius(scope.radius, scope.adams_min, n + 1);
            let outcome = with_growing_radius(start, |r| signed_bijection(m.ring(), &sources_at(r), &targets, f));
            if !matches!(outcome, Bijectivity::Signed) {
                return MapVerdict::Fail { level: n, bidegree: None, witness: format!("coface d{i} out of level {n}") };
            }
        }
    }
    MapVerdict::Strict
}

fn top_adams<M: CosimplicialModule>(m: &M, n: usize, gens: &[M::Key]) -> i64 {
    gens.iter().map(|g| m.degree(n, g).adams).max().unwrap_or(0).max(0)
}

/// Wraps a cosimplicial object and doubles one coface on one basis element.
pub struct CorruptedCoface<'a, X: CosimplicialObject> {
    pub inner: &'a X,
    pub level: usize,
    pub index: usize,
    pub key: X::Key,
}

impl<X: CosimplicialObject> CorruptedCoface<'_, X> {
    fn corrupt(&self, n: usize, i: usize, k: &X::Key, v: Lin<X::Key>) -> Lin<X::Key> {
        if n == self.level && i == self.index && *k == self.key {
            v.into_iter().map(|(k, c)| (k, c * BigInt::from(2))).collect()
        } else {
            v
        }
    }
}

impl<X: CosimplicialObject> CosimplicialObject for CorruptedCoface<'_, X> {
    type Key = X::Key;

    fn ring(&self) -> CoefficientRing {
        self.inner.ring()
    }
    fn top_level(&self) -> Option<usize> {
        self.inner.top_level()
    }
    fn degree(&self, n: usize, k: &X::Key) -> Bidegree {
        self.inner.degree(n, k)
    }
    fn basis(&self, n: usize, adams_min: i64, adams_max: i64, radius: usize) -> Vec<X::Key> {
        self.inner.basis(n, adams_min, adams_max, radius)
    }
    fn coface(&self, n: usize, i: usize, k: &X::Key) -> Lin<X::Key> {
        self.corrupt(n, i, k, self.inner.coface(n, i, k))
    }
    fn codegeneracy(&self, n: usize, j: usize, k: &X::Key) -> Lin<X::Key> {
        self.inner.codegeneracy(n, j, k)
    }
    fn differential(&self, n: usize, k: &X::Key) -> Lin<X::Key> {
        self.inner.differential(n, k)
    }
    fn label(&self, n: usize, k: &X::Key) -> String {
        self.inner.label(n, k)
    }
    fn adams_floor(&self) -> Option<i64> {
        self.inner.adams_floor()
    }
}

impl<X: CosimplicialAlgebra> CosimplicialAlgebra for CorruptedCoface<'_, X> {
    fn unit(&self, n: usize) -> X::Key {
        self.inner.unit(n)
    }
    fn product(&self, n: usize, a: &X::Key, b: &X::Key) -> Lin<X::Key> {
        self.inner.product(n, a, b)
    }
}

impl<X: CosimplicialModule> CosimplicialModule for CorruptedCoface<'_, X> {
    type Base = X::Base;
    fn base(&self) -> &X::Base {
        self.inner.base()
    }
    fn act(&self, n: usize, m: &X::Key, b: &<X::Base as CosimplicialObject>::Key) -> Lin<X::Key> {
        self.inner.act(n, m, b)
    }
    fn free_generators(&self, n: usize) -> Vec<X::Key> {
        self.inner.free_generators(n)
    }
}

/// Does `v` equal the unit multiple `c·1`?
pub fn is_scalar<K: Ord>(v: &Lin<K>, unit: &K) -> bool {
    v.len() <= 1 && v.keys().all(|k| k == unit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigraded::complex_from_parts;

    const Z: CoefficientRing = CoefficientRing::Integers;

    #[test]
    fn alpha_cofaces() {
        assert_eq!(alpha(0, 3), vec![2, 3]);
        assert_eq!(alpha(2, 3), vec![0, 1]);
        assert_eq!(alpha(1, 2), vec![0]);
        assert_eq!(injection_cofaces(&[0, 2], 2), vec![1]);
    }

    fn sample() -> BigradedComplex {
        let b = |n| Bidegree::new(-1, n);
        complex_from_parts(Z, &[(b(0), "x"), (b(1), "y"), (Bidegree::ZERO, "1")], &[(b(0), 0, 0, 3)]).unwrap()
    }

    #[test]
    fn constant_object() {
        let c = sample();
        for levels in [0, 2, 4] {
            let x = TruncatedCosimplicial::constant(&c, levels);
            assert!(check_identities(&x, &Scope::new(levels, -3, 0, 0)).all_hold());
            let w = Window::new(-1, 0, -1, 6).unwrap();
            let rep = tot(&x, &w, None).unwrap();
            let direct = bigraded::homology(&c, &w).unwrap();
            for b in w.bidegrees() {
                if rep.guaranteed(b.adams, b.coh) {
                    assert_eq!(rep.homology.get(b), direct.get(b), "{b}");
                }
            }
            let norm = normalized_total(&x).unwrap();
            assert_eq!(bigraded::homology(&norm, &w).unwrap().groups, direct.groups);
        }
    }

    #[test]
    fn odd_truncation_of_constant_object_is_spurious_at_the_edge() {
        // H^1 of the one-level truncation of constant ℤ is nonzero: the edge
        // degree N + n₀ is not guaranteed.
        let x = TruncatedCosimplicial::constant(&BigradedComplex::unit(Z), 1);
        let w = Window::new(0, 0, 0, 2).unwrap();
        let rep = tot(&x, &w, None).unwrap();
        assert!(!rep.homology.get(Bidegree::new(0, 1)).is_zero());
        assert!(!rep.guaranteed(0, 1));
        assert!(rep.guaranteed(0, 0));
    }

    #[test]
    fn corrupted_constant_fails_identities() {
        let x = TruncatedCosimplicial::constant(&sample(), 3);
        let bad = CorruptedCoface { inner: &x, level: 1, index: 0, key: 0 };
        assert!(!check_identities(&bad, &Scope::new(3, -3, 0, 0)).all_hold());
    }
}
