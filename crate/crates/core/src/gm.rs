//! The cosimplicial algebra of `G_m`, `Aⁿ = ℤ[z₁^±, …, zₙ^±]`, on Laurent
//! monomials, its weight modules `ℤ(r)•`, and their cohomology.
//!
//! Cofaces on exponent vectors: `d₀` prepends the weight (0 for `A` itself),
//! `dᵢ` for `1 ≤ i ≤ n` repeats `eᵢ`, and `d_{n+1}` appends 0. The
//! normalized complex of `ℤ(r)•` has as basis the monomials with `e₁ ≠ r` and
//! no two equal neighbours, and `∂ = ±d_{n+1}`; this splits into classes of
//! at most two monomials, which gives the cohomology exactly.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;

use crate::bigraded::{BigradedComplex, Bidegree, HomologyReport, Window};
use crate::cosimplicial::{materialize, CosimplicialError, CosimplicialObject, Scope, TruncatedCosimplicial};
use crate::hopf::LaurentHopf;
use crate::lincomb::{sign, single, Lin};
use crate::linalg::{AbGroupReport, CoefficientRing};
use crate::nerve::ComoduleNerve;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LaurentMonomial(pub Vec<i64>);

impl LaurentMonomial {
    pub fn level(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl fmt::Display for LaurentMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.0.iter().enumerate().filter(|(_, e)| **e != 0).map(|(i, e)| format!("z{}^{e}", i + 1)).collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// Coface `dᵢ` of `ℤ(r)•` from level `e.level()` to the next; `r = 0` gives
/// the cofaces of `A` itself.
pub fn weight_module_coface(r: i64, e: &LaurentMonomial, i: usize) -> LaurentMonomial {
    let n = e.level();
    assert!(i <= n + 1, "coface index {i} out of range at level {n}");
    let mut v = Vec::with_capacity(n + 1);
    if i == 0 {
        v.push(r);
        v.extend_from_slice(&e.0);
    } else if i == n + 1 {
        v.extend_from_slice(&e.0);
        v.push(0);
    } else {
        v.extend_from_slice(&e.0[..i]);
        v.extend_from_slice(&e.0[i - 1..]);
    }
    LaurentMonomial(v)
}

pub fn gm_coface(e: &LaurentMonomial, i: usize) -> LaurentMonomial {
    weight_module_coface(0, e, i)
}

/// `sⱼ` drops `e_{j+1}` (the counit sends every `zᵏ` to 1).
pub fn gm_codegeneracy(e: &LaurentMonomial, j: usize) -> LaurentMonomial {
    let mut v = e.0.clone();
    v.remove(j);
    LaurentMonomial(v)
}

/// Not in the span of the images of `d₀, …, d_{n−1}`.
pub fn is_nondegenerate(r: i64, e: &LaurentMonomial) -> bool {
    e.0.first().is_none_or(|e1| *e1 != r) && e.0.windows(2).all(|w| w[0] != w[1])
}

/// Normalized differential `(−1)ⁿ⁺¹ d_{n+1}` of a nondegenerate monomial,
/// `None` when the image is degenerate.
pub fn normalized_boundary(r: i64, e: &LaurentMonomial) -> Option<(BigInt, LaurentMonomial)> {
    let t = weight_module_coface(r, e, e.level() + 1);
    is_nondegenerate(r, &t).then(|| (sign((e.level() + 1) % 2 == 1), t))
}

/// The direct summands of the normalized complex of `ℤ(r)•`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialClass {
    /// The empty monomial in level 0 when `r = 0`, a cycle that is not a boundary.
    Unit,
    /// `e ↦ (e, 0)`, an isomorphism of rank one pieces in levels `n, n+1`.
    Pair { source: LaurentMonomial, target: LaurentMonomial },
}

/// Class of a nondegenerate monomial, `None` when it is degenerate.
pub fn monomial_class(r: i64, e: &LaurentMonomial) -> Option<MonomialClass> {
    if !is_nondegenerate(r, e) {
        return None;
    }
    if let Some((_, t)) = normalized_boundary(r, e) {
        return Some(MonomialClass::Pair { source: e.clone(), target: t });
    }
    match e.0.split_last() {
        None => Some(MonomialClass::Unit),
        Some((_, front)) => {
            let source = LaurentMonomial(front.to_vec());
            Some(MonomialClass::Pair { source, target: e.clone() })
        }
    }
}

/// Shapes of nondegenerate monomials in one level, as far as `∂` can see.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Shape {
    Empty,
    EndsNonzero,
    EndsZero,
}

/// Whether nondegenerate monomials of a shape exist at level `n`, and how
/// many (`None` for infinitely many).
fn shape_rank(r: i64, n: usize, shape: Shape) -> Option<Option<usize>> {
    match (shape, n) {
        (Shape::Empty, 0) => Some(Some(1)),
        (Shape::Empty, _) | (_, 0) => None,
        // e₁ = 0 is allowed only when 0 ≠ r
        (Shape::EndsZero, 1) => (r != 0).then_some(Some(1)),
        _ => Some(None),
    }
}

/// Where `∂` sends a shape: injectively onto another shape, or to zero.
fn shape_boundary(r: i64, n: usize, shape: Shape) -> Option<(usize, Shape)> {
    match shape {
        Shape::Empty => (r != 0).then_some((1, Shape::EndsZero)),
        Shape::EndsNonzero => Some((n + 1, Shape::EndsZero)),
        Shape::EndsZero => None,
    }
}

/// Cohomology of the normalized complex of `ℤ(r)•` in degrees
/// `0..=degree_max`, reported at bidegree `(r, n)`. Computed from the class
/// decomposition, with no exponent window.
pub fn gm_cohomology(r: i64, degree_max: usize) -> HomologyReport {
    const SHAPES: [Shape; 3] = [Shape::Empty, Shape::EndsNonzero, Shape::EndsZero];
    let mut hit: BTreeSet<(usize, Shape)> = BTreeSet::new();
    for n in 0..degree_max {
        for s in SHAPES {
            if shape_rank(r, n, s).is_some() {
                if let Some(t) = shape_boundary(r, n, s) {
                    hit.insert(t);
                }
            }
        }
    }
    let mut groups = BTreeMap::new();
    for n in 0..=degree_max {
        let mut rank = 0;
        for s in SHAPES {
            let Some(size) = shape_rank(r, n, s) else { continue };
            if shape_boundary(r, n, s).is_some() || hit.contains(&(n, s)) {
                continue;
            }
            rank += size.expect("an infinite class survives");
        }
        if rank > 0 {
            groups.insert(Bidegree::new(r, n as i64), AbGroupReport::free(rank));
        }
    }
    let window = Window { adams_min: r, adams_max: r, coh_min: 0, coh_max: degree_max as i64 };
    HomologyReport { window, groups }
}

/// `ℤ(r)•` restricted to exponent vectors with entries in `[lo, hi]`. When
/// the range contains 0 and `r` this is a direct summand of the whole
/// cosimplicial object, closed under all cofaces, with every basis element in
/// bidegree `(r, 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WindowedWeightModule {
    pub ring: CoefficientRing,
    pub weight: i64,
    pub lo: i64,
    pub hi: i64,
}

impl WindowedWeightModule {
    pub fn new(ring: CoefficientRing, weight: i64, lo: i64, hi: i64) -> Self {
        assert!(lo <= weight.min(0) && weight.max(0) <= hi, "exponent range must contain 0 and the weight");
        WindowedWeightModule { ring, weight, lo, hi }
    }
}

impl CosimplicialObject for WindowedWeightModule {
    type Key = LaurentMonomial;

    fn ring(&self) -> CoefficientRing {
        self.ring
    }
    fn degree(&self, _n: usize, _k: &LaurentMonomial) -> Bidegree {
        Bidegree::new(self.weight, 0)
    }
    fn basis(&self, n: usize, adams_min: i64, adams_max: i64, _radius: usize) -> Vec<LaurentMonomial> {
        if !(adams_min..=adams_max).contains(&self.weight) {
            return Vec::new();
        }
        let mut out = vec![Vec::new()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|v: Vec<i64>| {
                    (self.lo..=self.hi).map(move |e| {
                        let mut w = v.clone();
                        w.push(e);
                        w
                    })
                })
                .collect();
        }
        out.into_iter().map(LaurentMonomial).collect()
    }
    fn coface(&self, _n: usize, i: usize, k: &LaurentMonomial) -> Lin<LaurentMonomial> {
        single(weight_module_coface(self.weight, k, i))
    }
    fn codegeneracy(&self, _n: usize, j: usize, k: &LaurentMonomial) -> Lin<LaurentMonomial> {
        single(gm_codegeneracy(k, j))
    }
    fn differential(&self, _n: usize, _k: &LaurentMonomial) -> Lin<LaurentMonomial> {
        Lin::new()
    }
    fn label(&self, _n: usize, k: &LaurentMonomial) -> String {
        k.to_string()
    }
}

/// Normalized complex of `ℤ(r)•` on the exponent range `[lo, hi]`, levels
/// `0..=levels`; exact through degree `levels − 1`.
pub fn windowed_normalized(r: i64, lo: i64, hi: i64, levels: usize) -> Result<BigradedComplex, CosimplicialError> {
    let m = WindowedWeightModule::new(CoefficientRing::Integers, r, lo, hi);
    let x = materialize(&m, &Scope::new(levels, r, r, 0))?;
    crate::cosimplicial::normalized_total(&x)
}

/// `j(M) = ⊕_r M(r) ⊗ ℤ(r)•` as a comodule nerve: every basis element of `M`
/// coacts through `z^{adams}`.
pub fn j_functor(m: &BigradedComplex) -> Result<ComoduleNerve<LaurentHopf>, CosimplicialError> {
    let mut names = Vec::new();
    let mut degrees = Vec::new();
    let mut offset = BTreeMap::new();
    for b in m.bidegrees() {
        offset.insert(b, names.len());
        for l in m.labels(b) {
            names.push(l.clone());
            degrees.push(b);
        }
    }
    let mut d = vec![Lin::new(); names.len()];
    for b in m.bidegrees() {
        if !offset.contains_key(&b.next()) {
            continue;
        }
        for (row, col, v) in m.differential(b).entries() {
            d[offset[&b] + col].insert(offset[&b.next()] + row, v.clone());
        }
    }
    ComoduleNerve::adams_weight(m.ring(), names, degrees).with_differential(d)
}

/// Levels `0..=levels` of `j(M)` on exponent vectors in `[−R, R]` with `R`
/// the largest absolute Adams degree of `M` (at least 1), a direct summand
/// of the whole object.
pub fn j_functor_truncated(m: &BigradedComplex, levels: usize) -> Result<TruncatedCosimplicial, CosimplicialError> {
    let nerve = j_functor(m)?;
    let (lo, hi): (i64, i64) = m.support().map_or((0, 0), |w| (w.adams_min, w.adams_max));
    let radius = lo.abs().max(hi.abs()).max(1) as usize;
    let mut x = materialize(&nerve, &Scope::new(levels, lo.min(0), hi.max(0), radius))?;
    x.adams_floor = m.adams_floor();
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigraded::{complex_from_parts, homology};
    use crate::cosimplicial::{check_cartesian, check_identities, tot, MapVerdict};
    use crate::nerve::gm_nerve;

    const Z: CoefficientRing = CoefficientRing::Integers;

    #[test]
    fn coface_formulas() {
        let e = LaurentMonomial(vec![5]);
        assert_eq!(gm_coface(&e, 0).0, vec![0, 5]);
        assert_eq!(gm_coface(&e, 1).0, vec![5, 5]);
        assert_eq!(gm_coface(&e, 2).0, vec![5, 0]);
        assert_eq!(weight_module_coface(1, &LaurentMonomial(vec![]), 0).0, vec![1]);
        for i in 0..3 {
            let w = weight_module_coface(3, &e, i);
            assert_eq!(w.weight(), e.weight() + if i == 0 { 3 } else { e.0[0] * (i == 1) as i64 });
        }
    }

    #[test]
    fn agrees_with_the_laurent_nerve() {
        let nerve = gm_nerve(Z);
        let exps = [vec![-2, 3], vec![0, 0], vec![1, -1]];
        for e in exps {
            for i in 0..=3 {
                let via_nerve = nerve.coface(2, i, &e);
                assert_eq!(via_nerve, single(gm_coface(&LaurentMonomial(e.clone()), i).0));
            }
        }
    }

    #[test]
    fn identities_exhaustively() {
        let m = WindowedWeightModule::new(Z, 2, -2, 2);
        assert!(check_identities(&m, &Scope::new(4, 2, 2, 0)).all_hold());
    }

    #[test]
    fn class_decomposition() {
        assert_eq!(monomial_class(0, &LaurentMonomial(vec![])), Some(MonomialClass::Unit));
        assert!(monomial_class(1, &LaurentMonomial(vec![1])).is_none());
        assert!(monomial_class(0, &LaurentMonomial(vec![2, 2])).is_none());
        let c = monomial_class(0, &LaurentMonomial(vec![2, 0])).unwrap();
        assert_eq!(c, MonomialClass::Pair { source: LaurentMonomial(vec![2]), target: LaurentMonomial(vec![2, 0]) });
    }

    #[test]
    fn closed_form() {
        for r in -3..=3 {
            let h = gm_cohomology(r, 5);
            if r == 0 {
                assert_eq!(h.groups.len(), 1);
                assert_eq!(h.get(Bidegree::ZERO), AbGroupReport::free(1));
            } else {
                assert!(h.is_zero());
            }
        }
    }

    #[test]
    fn matrix_oracle_small() {
        for r in -2..=2 {
            let c = windowed_normalized(r, -3, 3, 3).unwrap();
            let w = Window::new(r, r, 0, 2).unwrap();
            assert_eq!(homology(&c, &w).unwrap().groups, gm_cohomology(r, 2).groups, "r = {r}");
        }
    }

    #[test]
    fn j_of_a_weight_module() {
        let m = complex_from_parts(Z, &[(Bidegree::new(-1, 0), "a"), (Bidegree::ZERO, "1")], &[]).unwrap();
        let nerve = j_functor(&m).unwrap();
        assert_eq!(check_cartesian(&nerve, &Scope::new(2, -1, 0, 2)), MapVerdict::Strict);
        let x = j_functor_truncated(&m, 3).unwrap();
        let w = Window::new(-1, 0, 0, 3).unwrap();
        let rep = tot(&x, &w, None).unwrap();
        for b in w.bidegrees() {
            if rep.guaranteed(b.adams, b.coh) {
                let expect = if b == Bidegree::ZERO { AbGroupReport::free(1) } else { AbGroupReport::zero() };
                assert_eq!(rep.homology.get(b), expect, "{b}");
            }
        }
    }
}
