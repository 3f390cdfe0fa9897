//! Cosimplicial algebras built from bialgebras: the nerve `n ↦ H^{⊗n}`, the
//! nerve of a comodule over it, and the semidirect product with `G_m` given
//! by the Adams grading.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::bigraded::Bidegree;
use crate::cosimplicial::{CosimplicialAlgebra, CosimplicialError, CosimplicialModule, CosimplicialObject};
use crate::hopf::{Bialgebra, LaurentHopf};
use crate::lincomb::{add_scaled, add_term, koszul, lin_eq, reduce, sign, single, Lin};
use crate::linalg::CoefficientRing;

/// Level `n` is `H^{⊗n}`; `d₀` and `d_{n+1}` insert units at the ends and
/// the inner cofaces apply the coproduct to one factor.
#[derive(Clone, Debug)]
pub struct BialgebraNerve<H: Bialgebra> {
    pub hopf: H,
}

impl<H: Bialgebra> BialgebraNerve<H> {
    pub fn new(hopf: H) -> Self {
        BialgebraNerve { hopf }
    }

    fn slot_product(&self, x: &[H::Key], y: &[H::Key]) -> Lin<Vec<H::Key>> {
        let h = &self.hopf;
        let mut odd = false;
        for i in 0..x.len() {
            for yj in &y[..i] {
                odd ^= (h.degree(&x[i]).coh * h.degree(yj).coh).rem_euclid(2) == 1;
            }
        }
        let mut acc: Lin<Vec<H::Key>> = [(Vec::new(), sign(odd))].into_iter().collect();
        for (a, b) in x.iter().zip(y) {
            let p = h.product(a, b);
            let mut next = Lin::new();
            for (w, c) in &acc {
                for (k, ck) in &p {
                    let mut w2 = w.clone();
                    w2.push(k.clone());
                    add_term(&mut next, w2, c * ck);
                }
            }
            acc = next;
        }
        reduce(h.ring(), acc)
    }
}

fn replace_slot<K: Clone + Ord>(word: &[K], pos: usize, with: &[K]) -> Vec<K> {
    let mut w = word[..pos].to_vec();
    w.extend_from_slice(with);
    w.extend_from_slice(&word[pos + 1..]);
    w
}

impl<H: Bialgebra> CosimplicialObject for BialgebraNerve<H> {
    type Key = Vec<H::Key>;

    fn ring(&self) -> CoefficientRing {
        self.hopf.ring()
    }

    fn degree(&self, _n: usize, k: &Vec<H::Key>) -> Bidegree {
        k.iter().fold(Bidegree::ZERO, |acc, x| acc + self.hopf.degree(x))
    }

    /// Assumes every basis element of `H` has Adams degree `≤ 0`.
    fn basis(&self, n: usize, adams_min: i64, adams_max: i64, radius: usize) -> Vec<Vec<H::Key>> {
        let single_keys = self.hopf.basis(adams_min, adams_max.max(0), radius);
        let mut out = vec![(Vec::new(), 0i64)];
        for _ in 0..n {
            let mut next = Vec::new();
            for (w, a) in &out {
                for k in &single_keys {
                    let na = a + self.hopf.degree(k).adams;
                    if na >= adams_min {
                        let mut w2 = w.clone();
                        w2.push(k.clone());
                        next.push((w2, na));
                    }
                }
            }
            out = next;
        }
        out.into_iter().filter(|(_, a)| *a <= adams_max).map(|(w, _)| w).collect()
    }

    fn coface(&self, n: usize, i: usize, k: &Vec<H::Key>) -> Lin<Vec<H::Key>> {
        let unit = self.hopf.unit();
        if i == 0 {
            let mut w = vec![unit];
            w.extend_from_slice(k);
            return single(w);
        }
        if i == n + 1 {
            let mut w = k.clone();
            w.push(unit);
            return single(w);
        }
        let mut out = Lin::new();
        for ((a, b), c) in self.hopf.coproduct(&k[i - 1]) {
            add_term(&mut out, replace_slot(k, i - 1, &[a, b]), c);
        }
        reduce(self.ring(), out)
    }

    fn codegeneracy(&self, _n: usize, j: usize, k: &Vec<H::Key>) -> Lin<Vec<H::Key>> {
        let c = self.hopf.counit(&k[j]);
        if c.is_zero() {
            return Lin::new();
        }
        reduce(self.ring(), [(replace_slot(k, j, &[]), c)].into_iter().collect())
    }

    fn differential(&self, _n: usize, k: &Vec<H::Key>) -> Lin<Vec<H::Key>> {
        let mut out = Lin::new();
        let mut prefix = 0i64;
        for (i, x) in k.iter().enumerate() {
            let s = sign(prefix.rem_euclid(2) == 1);
            for (dx, c) in self.hopf.differential(x) {
                add_term(&mut out, replace_slot(k, i, &[dx]), c * &s);
            }
            prefix += self.hopf.degree(x).coh;
        }
        reduce(self.ring(), out)
    }

    fn label(&self, _n: usize, k: &Vec<H::Key>) -> String {
        if k.is_empty() {
            return "1".into();
        }
        k.iter().map(|x| self.hopf.label(x)).collect::<Vec<_>>().join("⊗")
    }

    fn adams_floor(&self) -> Option<i64> {
        self.hopf.adams_floor()
    }
}

impl<H: Bialgebra> CosimplicialAlgebra for BialgebraNerve<H> {
    fn unit(&self, n: usize) -> Vec<H::Key> {
        vec![self.hopf.unit(); n]
    }

    fn product(&self, _n: usize, a: &Vec<H::Key>, b: &Vec<H::Key>) -> Lin<Vec<H::Key>> {
        self.slot_product(a, b)
    }

    /// `u ⊗ v ↦ Σ (−1)^{|v''|(|u|+|v'|)} v'' ⊗ u·S(v')`; a two-sided inverse
    /// of the group-like map when `H` is graded commutative.
    fn grouplike_inverse(&self, level_two: &Vec<H::Key>) -> Option<Lin<(Vec<H::Key>, Vec<H::Key>)>> {
        let h = &self.hopf;
        let (u, v) = (&level_two[0], &level_two[1]);
        let mut out = Lin::new();
        for ((v1, v2), c) in h.coproduct(v) {
            let s = koszul(h.degree(&v2).coh, h.degree(u).coh + h.degree(&v1).coh);
            for (sv, cs) in h.antipode(&v1)? {
                for (p, cp) in h.product(u, &sv) {
                    add_term(&mut out, (vec![v2.clone()], vec![p]), &c * &s * &cs * cp);
                }
            }
        }
        Some(reduce(h.ring(), out))
    }
}

/// The nerve of a right comodule `M` over `H`: level `n` is `M ⊗ H^{⊗n}`
/// with `d₀` given by the coaction.
#[derive(Clone, Debug)]
pub struct ComoduleNerve<H: Bialgebra> {
    base: BialgebraNerve<H>,
    names: Vec<String>,
    degrees: Vec<Bidegree>,
    coaction: Vec<Tensor2Mixed<H::Key>>,
    module_differential: Vec<Lin<usize>>,
}

/// `Σ c · (mᵢ, h)` in `M ⊗ H`.
pub type Tensor2Mixed<K> = Lin<(usize, K)>;

impl<H: Bialgebra> ComoduleNerve<H> {
    /// Checks coassociativity and counitality of the coaction.
    pub fn new(
        hopf: H,
        names: Vec<String>,
        degrees: Vec<Bidegree>,
        coaction: Vec<Tensor2Mixed<H::Key>>,
    ) -> Result<Self, CosimplicialError> {
        let ring = hopf.ring();
        for (m, rho) in coaction.iter().enumerate() {
            let mut counit = Lin::new();
            let mut left: Lin<(usize, H::Key, H::Key)> = Lin::new();
            let mut right: Lin<(usize, H::Key, H::Key)> = Lin::new();
            for ((m0, h), c) in rho {
                add_scaled(&mut counit, &single(*m0), &(c * hopf.counit(h)));
                for ((a, b), cd) in hopf.coproduct(h) {
                    add_term(&mut right, (*m0, a, b), c * cd);
                }
                for ((m00, a), c2) in &coaction[*m0] {
                    add_term(&mut left, (*m00, a.clone(), h.clone()), c * c2);
                }
                if degrees[*m0] + hopf.degree(h) != degrees[m] {
                    return Err(CosimplicialError::CoactionInvalid(format!("degree of {}", names[m])));
                }
            }
            if !lin_eq(ring, &counit, &single(m)) || !lin_eq(ring, &left, &right) {
                return Err(CosimplicialError::CoactionInvalid(names[m].clone()));
            }
        }
        let module_differential = vec![Lin::new(); names.len()];
        Ok(ComoduleNerve { base: BialgebraNerve::new(hopf), names, degrees, coaction, module_differential })
    }

    /// Equips `M` with a differential, which must square to zero, raise the
    /// cohomological degree by one and commute with the coaction.
    pub fn with_differential(mut self, d: Vec<Lin<usize>>) -> Result<Self, CosimplicialError> {
        let ring = self.base.ring();
        let apply = |lin: &Lin<usize>| {
            let mut out = Lin::new();
            for (k, c) in lin {
                add_scaled(&mut out, &d[*k], c);
            }
            reduce(ring, out)
        };
        for (m, dm) in d.iter().enumerate() {
            let bad = |what: &str| CosimplicialError::CoactionInvalid(format!("{what} at {}", self.names[m]));
            if dm.keys().any(|k| self.degrees[*k] != self.degrees[m].next()) {
                return Err(bad("differential degree"));
            }
            if !apply(dm).is_empty() {
                return Err(bad("d²"));
            }
            let mut left: Tensor2Mixed<H::Key> = Lin::new();
            for (k, c) in dm {
                add_scaled(&mut left, &self.coaction[*k], c);
            }
            let mut right: Tensor2Mixed<H::Key> = Lin::new();
            for ((m0, h), c) in &self.coaction[m] {
                for (k, ck) in &d[*m0] {
                    add_term(&mut right, (*k, h.clone()), c * ck);
                }
            }
            if !lin_eq(ring, &left, &right) {
                return Err(bad("coaction does not commute with d"));
            }
        }
        self.module_differential = d;
        Ok(self)
    }

    /// Coaction `m ↦ m ⊗ 1`.
    pub fn trivial(hopf: H, names: Vec<String>, degrees: Vec<Bidegree>) -> Result<Self, CosimplicialError> {
        let unit = hopf.unit();
        let coaction = (0..names.len()).map(|m| single((m, unit.clone()))).collect();
        Self::new(hopf, names, degrees, coaction)
    }

    pub fn module_len(&self) -> usize {
        self.names.len()
    }
}

impl ComoduleNerve<LaurentHopf> {
    /// The rank one comodule `ℤ(r)`: `m ↦ m ⊗ zʳ`.
    pub fn weight(ring: CoefficientRing, r: i64) -> Self {
        Self::new(LaurentHopf { ring }, vec![format!("e({r})")], vec![Bidegree::ZERO], vec![single((0, r))])
            .expect("weight comodule")
    }

    /// A graded module whose coaction records the Adams degree:
    /// `m ↦ m ⊗ z^{adams(m)}`.
    pub fn adams_weight(ring: CoefficientRing, names: Vec<String>, degrees: Vec<Bidegree>) -> Self {
        let coaction = degrees.iter().enumerate().map(|(m, b)| single((m, b.adams))).collect();
        Self::new(LaurentHopf { ring }, names, degrees, coaction).expect("Adams weight comodule")
    }
}

impl<H: Bialgebra> CosimplicialObject for ComoduleNerve<H> {
    type Key = (usize, Vec<H::Key>);

    fn ring(&self) -> CoefficientRing {
        self.base.ring()
    }

    fn degree(&self, n: usize, k: &Self::Key) -> Bidegree {
        self.degrees[k.0] + self.base.degree(n, &k.1)
    }

    fn basis(&self, n: usize, adams_min: i64, adams_max: i64, radius: usize) -> Vec<Self::Key> {
        let mut out = Vec::new();
        for (m, b) in self.degrees.iter().enumerate() {
            for h in self.base.basis(n, adams_min - b.adams, adams_max - b.adams, radius) {
                out.push((m, h));
            }
        }
        out
    }

    fn coface(&self, n: usize, i: usize, k: &Self::Key) -> Lin<Self::Key> {
        if i == 0 {
            let mut out = Lin::new();
            for ((m0, h), c) in &self.coaction[k.0] {
                let mut w = vec![h.clone()];
                w.extend_from_slice(&k.1);
                add_term(&mut out, (*m0, w), c.clone());
            }
            return reduce(self.ring(), out);
        }
        self.base.coface(n, i, &k.1).into_iter().map(|(w, c)| ((k.0, w), c)).collect()
    }

    fn codegeneracy(&self, n: usize, j: usize, k: &Self::Key) -> Lin<Self::Key> {
        self.base.codegeneracy(n, j, &k.1).into_iter().map(|(w, c)| ((k.0, w), c)).collect()
    }

    fn differential(&self, n: usize, k: &Self::Key) -> Lin<Self::Key> {
        let s = sign(self.degrees[k.0].coh.rem_euclid(2) == 1);
        let mut out: Lin<Self::Key> =
            self.base.differential(n, &k.1).into_iter().map(|(w, c)| ((k.0, w), c * &s)).collect();
        for (dm, c) in &self.module_differential[k.0] {
            add_term(&mut out, (*dm, k.1.clone()), c.clone());
        }
        reduce(self.ring(), out)
    }

    fn label(&self, n: usize, k: &Self::Key) -> String {
        if k.1.is_empty() {
            return self.names[k.0].clone();
        }
        format!("{}⊗{}", self.names[k.0], self.base.label(n, &k.1))
    }

    fn adams_floor(&self) -> Option<i64> {
        self.base.adams_floor()
    }
}

impl<H: Bialgebra> CosimplicialModule for ComoduleNerve<H> {
    type Base = BialgebraNerve<H>;

    fn base(&self) -> &BialgebraNerve<H> {
        &self.base
    }

    fn act(&self, n: usize, m: &Self::Key, b: &Vec<H::Key>) -> Lin<Self::Key> {
        self.base.product(n, &m.1, b).into_iter().map(|(w, c)| ((m.0, w), c)).collect()
    }

    fn free_generators(&self, n: usize) -> Vec<Self::Key> {
        (0..self.names.len()).map(|m| (m, self.base.unit(n))).collect()
    }
}

/// Diagonal of the bicosimplicial algebra `(n, k) ↦ Xⁿ ⊗ ℤ[z^±]^{⊗k}`, the
/// `k`-direction being the `G_m`-nerve of `Xⁿ` under `b ↦ b ⊗ z^{adams(b)}`.
/// Level `n` is `Xⁿ ⊗ ℤ[z^±]^{⊗n}` and `dᵢ` is `dᵢ` of `X` after `dᵢ` of
/// the `G_m` direction; the exponents carry no degree.
#[derive(Clone, Debug)]
pub struct SemidirectGm<X: CosimplicialAlgebra> {
    pub inner: X,
}

impl<X: CosimplicialAlgebra> SemidirectGm<X> {
    pub fn new(inner: X) -> Self {
        SemidirectGm { inner }
    }

    fn gm_coface(&self, n: usize, i: usize, x: &X::Key, e: &[i64]) -> Vec<i64> {
        if i == 0 {
            let mut w = vec![self.inner.degree(n, x).adams];
            w.extend_from_slice(e);
            w
        } else if i == e.len() + 1 {
            let mut w = e.to_vec();
            w.push(0);
            w
        } else {
            replace_slot(e, i - 1, &[e[i - 1], e[i - 1]])
        }
    }
}

fn exponent_tuples(n: usize, radius: usize) -> Vec<Vec<i64>> {
    let r = radius as i64;
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w: Vec<i64>| {
                (-r..=r).map(move |e| {
                    let mut w2 = w.clone();
                    w2.push(e);
                    w2
                })
            })
            .collect();
    }
    out
}

impl<X: CosimplicialAlgebra> CosimplicialObject for SemidirectGm<X> {
    type Key = (X::Key, Vec<i64>);

    fn ring(&self) -> CoefficientRing {
        self.inner.ring()
    }

    fn top_level(&self) -> Option<usize> {
        self.inner.top_level()
    }

    fn degree(&self, n: usize, k: &Self::Key) -> Bidegree {
        self.inner.degree(n, &k.0)
    }

    fn basis(&self, n: usize, adams_min: i64, adams_max: i64, radius: usize) -> Vec<Self::Key> {
        let xs = self.inner.basis(n, adams_min, adams_max, radius);
        let es = exponent_tuples(n, radius);
        xs.iter().flat_map(|x| es.iter().map(move |e| (x.clone(), e.clone()))).collect()
    }

    fn coface(&self, n: usize, i: usize, k: &Self::Key) -> Lin<Self::Key> {
        let e = self.gm_coface(n, i, &k.0, &k.1);
        self.inner.coface(n, i, &k.0).into_iter().map(|(x, c)| ((x, e.clone()), c)).collect()
    }

    fn codegeneracy(&self, n: usize, j: usize, k: &Self::Key) -> Lin<Self::Key> {
        let e = replace_slot(&k.1, j, &[]);
        self.inner.codegeneracy(n, j, &k.0).into_iter().map(|(x, c)| ((x, e.clone()), c)).collect()
    }

    fn differential(&self, n: usize, k: &Self::Key) -> Lin<Self::Key> {
        self.inner.differential(n, &k.0).into_iter().map(|(x, c)| ((x, k.1.clone()), c)).collect()
    }

    fn label(&self, n: usize, k: &Self::Key) -> String {
        let z: Vec<String> = k.1.iter().map(|e| format!("z^{e}")).collect();
        if z.is_empty() {
            return self.inner.label(n, &k.0);
        }
        format!("{}⊗{}", self.inner.label(n, &k.0), z.join("⊗"))
    }

    fn adams_floor(&self) -> Option<i64> {
        self.inner.adams_floor()
    }
}

impl<X: CosimplicialAlgebra> CosimplicialAlgebra for SemidirectGm<X> {
    fn unit(&self, n: usize) -> Self::Key {
        (self.inner.unit(n), vec![0; n])
    }

    fn product(&self, n: usize, a: &Self::Key, b: &Self::Key) -> Lin<Self::Key> {
        let e: Vec<i64> = a.1.iter().zip(&b.1).map(|(x, y)| x + y).collect();
        self.inner.product(n, &a.0, &b.0).into_iter().map(|(x, c)| ((x, e.clone()), c)).collect()
    }

    /// The group-like map sends `(x, zᵃ) ⊗ (y, zᶜ)` to `(Φ(x ⊗ y), z^{a+c} ⊗ zᵃ)`,
    /// so an inverse of `Φ` on `X` lifts directly.
    fn grouplike_inverse(&self, level_two: &Self::Key) -> Option<Lin<(Self::Key, Self::Key)>> {
        let (f1, f2) = (level_two.1[0], level_two.1[1]);
        let inv = self.inner.grouplike_inverse(&level_two.0)?;
        Some(inv.into_iter().map(|((p, q), c)| (((p, vec![f2]), (q, vec![f1 - f2])), c)).collect())
    }
}

/// The constant cosimplicial algebra on the ground ring, as the nerve of the
/// trivial Hopf algebra.
pub fn unit_cosimplicial(ring: CoefficientRing) -> BialgebraNerve<crate::hopf::TrivialHopf> {
    BialgebraNerve::new(crate::hopf::TrivialHopf { ring })
}

/// The nerve of `G_m`.
pub fn gm_nerve(ring: CoefficientRing) -> BialgebraNerve<LaurentHopf> {
    BialgebraNerve::new(LaurentHopf { ring })
}

/// Multiplicity with which each level-`n` key of `x` occurs, for tests that
/// compare objects through their materializations.
pub fn level_profile<X: CosimplicialObject>(x: &X, n: usize, adams_min: i64, adams_max: i64, radius: usize) -> BTreeMap<Bidegree, usize> {
    let mut out = BTreeMap::new();
    for k in x.basis(n, adams_min, adams_max, radius) {
        *out.entry(x.degree(n, &k)).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::One;
    use crate::bar::BarHopf;
    use crate::cosimplicial::*;
    use crate::dga::DgaPresentation;
    use crate::hopf::PolynomialBialgebra;

    const Z: CoefficientRing = CoefficientRing::Integers;

    #[test]
    fn gm_nerve_is_a_derived_group_scheme() {
        let x = gm_nerve(Z);
        let scope = Scope::new(3, 0, 0, 2);
        assert!(check_identities(&x, &scope).all_hold());
        assert!(check_algebra_maps(&x, &scope, 2).all_hold());
        assert_eq!(check_segal(&x, &scope), MapVerdict::Strict);
        assert_eq!(check_grouplike(&x, &scope), GrouplikeVerdict::PassAntipode);
        assert_eq!(check_unit_level(&x, &scope), MapVerdict::Strict);
    }

    #[test]
    fn polynomial_nerve_is_not_grouplike() {
        let x = BialgebraNerve::new(PolynomialBialgebra { ring: Z });
        let scope = Scope::new(2, 0, 0, 3);
        assert!(check_identities(&x, &scope).all_hold());
        assert_eq!(check_segal(&x, &scope), MapVerdict::Strict);
        assert!(!check_grouplike(&x, &scope).passed());
    }

    #[test]
    fn bar_nerve_of_three_punctured_line() {
        let alg = DgaPresentation::p1_minus_three_points(Z);
        let x = BialgebraNerve::new(BarHopf::new(&alg).unwrap());
        let scope = Scope::new(3, -2, 0, 0);
        assert!(check_identities(&x, &scope).all_hold());
        assert!(check_algebra_maps(&x, &scope, 2).all_hold());
        assert_eq!(check_segal(&x, &scope), MapVerdict::Strict);
        assert_eq!(check_grouplike(&x, &scope), GrouplikeVerdict::PassAntipode);
        assert_eq!(check_unit_level(&x, &scope), MapVerdict::Strict);
    }

    #[test]
    fn corrupted_coface_breaks_segal() {
        let x = gm_nerve(Z);
        let bad = CorruptedCoface { inner: &x, level: 1, index: 2, key: vec![1] };
        let scope = Scope::new(2, 0, 0, 2);
        assert!(!check_identities(&bad, &scope).all_hold());
        assert!(!check_segal(&bad, &scope).passed());
    }

    #[test]
    fn comodule_nerves_are_cartesian() {
        let m = ComoduleNerve::weight(Z, 3);
        let scope = Scope::new(3, 0, 0, 2);
        assert!(check_identities(&m, &scope).all_hold());
        assert_eq!(check_cartesian(&m, &scope), MapVerdict::Strict);
        let bad = CorruptedCoface { inner: &m, level: 1, index: 1, key: (0, vec![0]) };
        assert!(!check_cartesian(&bad, &scope).passed());
        let graded = ComoduleNerve::adams_weight(
            Z,
            vec!["a".into(), "b".into()],
            vec![Bidegree::new(-1, 1), Bidegree::new(-2, 3)],
        );
        let scope = Scope::new(2, -2, 0, 2);
        assert!(check_identities(&graded, &scope).all_hold());
        assert_eq!(check_cartesian(&graded, &scope), MapVerdict::Strict);
    }

    #[test]
    fn bad_coaction_is_rejected() {
        let r = ComoduleNerve::new(LaurentHopf { ring: Z }, vec!["m".into()], vec![Bidegree::ZERO], vec![single((0, 1)) ])
            .and_then(|_| {
                ComoduleNerve::new(
                    LaurentHopf { ring: Z },
                    vec!["m".into()],
                    vec![Bidegree::ZERO],
                    vec![[((0, 1), BigInt::one()), ((0, 2), BigInt::one())].into_iter().collect()],
                )
            });
        assert!(matches!(r, Err(CosimplicialError::CoactionInvalid(_))));
    }

    #[test]
    fn semidirect_with_unit_is_gm() {
        let x = SemidirectGm::new(unit_cosimplicial(Z));
        let g = gm_nerve(Z);
        for n in 0..=3 {
            assert_eq!(level_profile(&x, n, 0, 0, 2), level_profile(&g, n, 0, 0, 2));
        }
        let scope = Scope::new(3, 0, 0, 2);
        assert!(check_identities(&x, &scope).all_hold());
        assert_eq!(check_unit_level(&x, &scope), MapVerdict::Strict);
        assert_eq!(check_segal(&x, &scope), MapVerdict::Strict);
        assert!(check_grouplike(&x, &scope).passed());
        let a = materialize(&x, &Scope::new(2, 0, 0, 1));
        let b = materialize(&g, &Scope::new(2, 0, 0, 1));
        assert!(a.is_err() == b.is_err());
    }

    #[test]
    fn semidirect_over_bar_nerve() {
        let alg = DgaPresentation::p1_minus_three_points(Z);
        let x = SemidirectGm::new(BialgebraNerve::new(BarHopf::new(&alg).unwrap()));
        let scope = Scope::new(3, -2, 0, 1);
        assert!(check_identities(&x, &scope).all_hold());
        assert!(check_algebra_maps(&x, &scope, 2).all_hold());
        assert_eq!(check_unit_level(&x, &scope), MapVerdict::Strict);
        assert_eq!(check_segal(&x, &scope), MapVerdict::Strict);
        let g = check_grouplike(&x, &scope);
        assert!(g.passed(), "{g:?}");
    }
}
