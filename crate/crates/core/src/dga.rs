//! Finitely presented augmented graded-commutative DGAs and their modules,
//! given by structure constants on an explicit basis.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::bigraded::{self, complex_from_keys, BigradedComplex, Bidegree, ComplexError, TateKind, Window};
use crate::lincomb::{add_scaled, add_term, koszul, lin_eq, reduce, single, Lin};
use crate::linalg::CoefficientRing;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DgaError {
    #[error("basis index {0} out of range")]
    UnknownElement(usize),
    #[error("{0} has a differential term of the wrong bidegree")]
    DifferentialDegree(String),
    #[error("d∘d ≠ 0 on {0}")]
    DSquared(String),
    #[error("product {0}·{1} has a term of the wrong bidegree")]
    ProductDegree(String, String),
    #[error("associativity fails on ({0}, {1}, {2})")]
    Associativity(String, String, String),
    #[error("graded commutativity fails on ({0}, {1})")]
    Commutativity(String, String),
    #[error("unit law fails on {0}")]
    Unit(String),
    #[error("Leibniz rule fails on ({0}, {1})")]
    Leibniz(String, String),
    #[error("augmentation is not a map of DGAs at {0}")]
    Augmentation(String),
    #[error("unit must sit in bidegree (0,0)")]
    UnitDegree,
    #[error("element {0} lies below the Adams floor")]
    BelowFloor(String),
    #[error("algebra is not of strict Tate type (witness {0:?})")]
    NotStrictTate(Option<Bidegree>),
    #[error("module and algebra rings differ")]
    RingMismatch,
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Basis data shared by algebras and modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasis {
    pub names: Vec<String>,
    pub degrees: Vec<Bidegree>,
}

impl GradedBasis {
    pub fn new(elements: Vec<(String, Bidegree)>) -> Self {
        let (names, degrees) = elements.into_iter().unzip();
        GradedBasis { names, degrees }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn by_bidegree(&self) -> BTreeMap<Bidegree, Vec<usize>> {
        let mut m: BTreeMap<Bidegree, Vec<usize>> = BTreeMap::new();
        for (i, b) in self.degrees.iter().enumerate() {
            m.entry(*b).or_default().push(i);
        }
        m
    }

    pub fn top_adams(&self) -> Option<i64> {
        self.degrees.iter().map(|b| b.adams).max()
    }

    fn homogeneous(&self, lin: &Lin<usize>, at: Bidegree) -> bool {
        lin.keys().all(|k| *k < self.len() && self.degrees[*k] == at)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgaPresentation {
    pub ring: CoefficientRing,
    pub basis: GradedBasis,
    pub unit: usize,
    pub differential: Vec<Lin<usize>>,
    /// Products of non-unit basis pairs; absent means zero.
    pub products: BTreeMap<(usize, usize), Lin<usize>>,
    pub augmentation: Vec<BigInt>,
    /// Elements of Adams degree below the floor are not part of the
    /// presentation: the algebra is truncated to a quotient by that ideal.
    pub adams_floor: Option<i64>,
}

impl DgaPresentation {
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn degree(&self, i: usize) -> Bidegree {
        self.basis.degrees[i]
    }

    pub fn name(&self, i: usize) -> &str {
        &self.basis.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.names.iter().position(|n| n == name)
    }

    pub fn mul(&self, a: usize, b: usize) -> Lin<usize> {
        if a == self.unit {
            return single(b);
        }
        if b == self.unit {
            return single(a);
        }
        self.products.get(&(a, b)).cloned().unwrap_or_default()
    }

    pub fn mul_lin(&self, x: &Lin<usize>, y: &Lin<usize>) -> Lin<usize> {
        let mut out = Lin::new();
        for (a, ca) in x {
            for (b, cb) in y {
                add_scaled(&mut out, &self.mul(*a, *b), &(ca * cb));
            }
        }
        reduce(self.ring, out)
    }

    pub fn d(&self, a: usize) -> &Lin<usize> {
        &self.differential[a]
    }

    pub fn d_lin(&self, x: &Lin<usize>) -> Lin<usize> {
        let mut out = Lin::new();
        for (a, c) in x {
            add_scaled(&mut out, self.d(*a), c);
        }
        reduce(self.ring, out)
    }

    pub fn augment(&self, x: &Lin<usize>) -> BigInt {
        let s: BigInt = x.iter().map(|(a, c)| c * &self.augmentation[*a]).sum();
        self.ring.reduce(&s)
    }

    pub fn is_known(&self, adams: i64) -> bool {
        self.adams_floor.is_none_or(|f| adams >= f)
    }

    pub fn underlying(&self) -> Result<BigradedComplex, ComplexError> {
        let keys = self.basis.by_bidegree();
        complex_from_keys(self.ring, &keys, |i| self.basis.names[*i].clone(), |i| self.differential[*i].clone(), self.adams_floor)
    }

    /// Basis of the augmentation ideal for a strict Tate algebra: everything
    /// in negative Adams degree.
    pub fn reduced_basis(&self) -> Vec<usize> {
        (0..self.len()).filter(|i| self.degree(*i).adams < 0).collect()
    }

    /// Checks every axiom on all basis pairs and triples.
    pub fn validate(&self) -> Result<(), DgaError> {
        let n = self.len();
        let name = |i: usize| self.basis.names[i].clone();
        if self.unit >= n {
            return Err(DgaError::UnknownElement(self.unit));
        }
        if self.degree(self.unit) != Bidegree::ZERO {
            return Err(DgaError::UnitDegree);
        }
        if self.differential.len() != n || self.augmentation.len() != n {
            return Err(DgaError::UnknownElement(n));
        }
        for i in 0..n {
            if !self.is_known(self.degree(i).adams) {
                return Err(DgaError::BelowFloor(name(i)));
            }
            if !self.basis.homogeneous(self.d(i), self.degree(i).next()) {
                return Err(DgaError::DifferentialDegree(name(i)));
            }
            if !self.d_lin(self.d(i)).is_empty() {
                return Err(DgaError::DSquared(name(i)));
            }
        }
        for (&(a, b), v) in &self.products {
            if a >= n || b >= n {
                return Err(DgaError::UnknownElement(a.max(b)));
            }
            if !self.basis.homogeneous(v, self.degree(a) + self.degree(b)) {
                return Err(DgaError::ProductDegree(name(a), name(b)));
            }
            if (a == self.unit || b == self.unit) && !lin_eq(self.ring, v, &single(if a == self.unit { b } else { a })) {
                return Err(DgaError::Unit(name(a.max(b))));
            }
        }
        for a in 0..n {
            let ha = self.degree(a).coh;
            for b in 0..n {
                let hb = self.degree(b).coh;
                let ab = self.mul(a, b);
                let mut ba = self.mul(b, a);
                ba = ba.into_iter().map(|(k, v)| (k, v * koszul(ha, hb))).collect();
                if !lin_eq(self.ring, &ab, &ba) {
                    return Err(DgaError::Commutativity(name(a), name(b)));
                }
                let lhs = self.d_lin(&ab);
                let mut rhs = self.mul_lin(self.d(a), &single(b));
                add_scaled(&mut rhs, &self.mul_lin(&single(a), self.d(b)), &koszul(ha, 1));
                if !lin_eq(self.ring, &lhs, &rhs) {
                    return Err(DgaError::Leibniz(name(a), name(b)));
                }
                let ea = self.augment(&single(a));
                let eb = self.augment(&single(b));
                if !self.ring.eq(&self.augment(&ab), &(ea * eb)) {
                    return Err(DgaError::Augmentation(name(a)));
                }
                for c in 0..n {
                    let l = self.mul_lin(&ab, &single(c));
                    let r = self.mul_lin(&single(a), &self.mul(b, c));
                    if !lin_eq(self.ring, &l, &r) {
                        return Err(DgaError::Associativity(name(a), name(b), name(c)));
                    }
                }
            }
            let e = self.ring.reduce(&self.augmentation[a]);
            if (!e.is_zero() && self.degree(a) != Bidegree::ZERO) || !self.augment(self.d(a)).is_zero() {
                return Err(DgaError::Augmentation(name(a)));
            }
        }
        if !self.ring.eq(&self.augmentation[self.unit], &BigInt::one()) {
            return Err(DgaError::Augmentation(name(self.unit)));
        }
        Ok(())
    }

    /// Strict Tate type on the nose: `A(0) = ring·1`, `A(k) = 0` for `k > 0`.
    pub fn check_strict_tate(&self) -> Result<(), DgaError> {
        for i in 0..self.len() {
            let b = self.degree(i);
            if b.adams > 0 || (b.adams == 0 && i != self.unit) {
                return Err(DgaError::NotStrictTate(Some(b)));
            }
        }
        Ok(())
    }

    pub fn tate_certificate(&self, w: &Window) -> Result<bigraded::TateCertificate, DgaError> {
        let c = self.underlying()?;
        let unit_at = self.degree(self.unit);
        let idx = c.labels(unit_at).iter().position(|l| *l == self.basis.names[self.unit]).unwrap_or(0);
        Ok(bigraded::is_tate_type(&c, Some((unit_at, idx)), w)?)
    }

    pub fn augmentation_ideal(&self) -> Result<AugmentationIdeal, DgaError> {
        let cert = self.tate_certificate(&Window { adams_min: 0, adams_max: 0, coh_min: 0, coh_max: 0 })?;
        if cert.kind != TateKind::StrictTate {
            return Err(DgaError::NotStrictTate(cert.witness));
        }
        let inclusion = self.reduced_basis();
        let mut keys: BTreeMap<Bidegree, Vec<usize>> = BTreeMap::new();
        for &i in &inclusion {
            keys.entry(self.degree(i)).or_default().push(i);
        }
        let complex = complex_from_keys(
            self.ring,
            &keys,
            |i| self.basis.names[*i].clone(),
            |i| self.differential[*i].clone(),
            self.adams_floor,
        )?;
        Ok(AugmentationIdeal { complex, inclusion })
    }

    /// A presentation from named elements; products and differentials are
    /// given by names. Unit products are implied.
    pub fn from_named(
        ring: CoefficientRing,
        elements: &[(&str, Bidegree)],
        differential: &[(&str, &[(&str, i64)])],
        products: &[(&str, &str, &[(&str, i64)])],
        adams_floor: Option<i64>,
    ) -> Result<Self, DgaError> {
        let basis = GradedBasis::new(elements.iter().map(|(n, b)| (n.to_string(), *b)).collect());
        let idx = |n: &str| basis.names.iter().position(|x| x == n).ok_or(DgaError::UnknownElement(usize::MAX));
        let lin = |terms: &[(&str, i64)]| -> Result<Lin<usize>, DgaError> {
            let mut l = Lin::new();
            for (n, c) in terms {
                add_term(&mut l, idx(n)?, BigInt::from(*c));
            }
            Ok(reduce(ring, l))
        };
        let unit = basis.degrees.iter().position(|b| *b == Bidegree::ZERO).ok_or(DgaError::UnitDegree)?;
        let mut d = vec![Lin::new(); basis.len()];
        for (n, terms) in differential {
            d[idx(n)?] = lin(terms)?;
        }
        let mut prods = BTreeMap::new();
        for (a, b, terms) in products {
            let v = lin(terms)?;
            if !v.is_empty() {
                prods.insert((idx(a)?, idx(b)?), v);
            }
        }
        let mut augmentation = vec![BigInt::zero(); basis.len()];
        augmentation[unit] = BigInt::one();
        Ok(DgaPresentation { ring, basis, unit, differential: d, products: prods, augmentation, adams_floor })
    }

    /// The unit algebra: the ground ring in bidegree (0,0).
    pub fn unit_algebra(ring: CoefficientRing) -> Self {
        Self::from_named(ring, &[("1", Bidegree::ZERO)], &[], &[], None).expect("unit algebra")
    }

    /// Unit in (0,0) and two classes in (−1,1), all products among them zero.
    pub fn p1_minus_three_points(ring: CoefficientRing) -> Self {
        let e = Bidegree::new(-1, 1);
        Self::from_named(ring, &[("1", Bidegree::ZERO), ("e1", e), ("e2", e)], &[], &[], None)
            .expect("p1 minus three points")
    }

    /// `k[x]/(x^{n+1})` with `x` in (−1, 2).
    pub fn projective_space(ring: CoefficientRing, n: usize) -> Self {
        Self::polynomial(ring, n, None)
    }

    /// `k[x]` with `x` in (−1, 2), presented through Adams degree `−depth`.
    pub fn affine_line(ring: CoefficientRing, depth: usize) -> Self {
        Self::polynomial(ring, depth, Some(-(depth as i64)))
    }

    fn polynomial(ring: CoefficientRing, top: usize, adams_floor: Option<i64>) -> Self {
        let names: Vec<String> = (0..=top).map(power_name).collect();
        let basis = GradedBasis::new(
            names.iter().enumerate().map(|(k, n)| (n.clone(), Bidegree::new(-(k as i64), 2 * k as i64))).collect(),
        );
        let mut products = BTreeMap::new();
        for i in 1..=top {
            for j in 1..=top - i {
                products.insert((i, j), single(i + j));
            }
        }
        let mut augmentation = vec![BigInt::zero(); top + 1];
        augmentation[0] = BigInt::one();
        DgaPresentation {
            ring,
            basis,
            unit: 0,
            differential: vec![Lin::new(); top + 1],
            products,
            augmentation,
            adams_floor,
        }
    }

    /// Square-zero extension `ring ⊕ V` with `V` spanned by `generators`.
    pub fn square_zero(ring: CoefficientRing, generators: &[Bidegree]) -> Self {
        let mut elements = vec![("1".to_string(), Bidegree::ZERO)];
        elements.extend(generators.iter().enumerate().map(|(i, b)| (format!("y{}", i + 1), *b)));
        let basis = GradedBasis::new(elements);
        let mut augmentation = vec![BigInt::zero(); basis.len()];
        augmentation[0] = BigInt::one();
        DgaPresentation {
            ring,
            differential: vec![Lin::new(); basis.len()],
            basis,
            unit: 0,
            products: BTreeMap::new(),
            augmentation,
            adams_floor: None,
        }
    }
}

fn power_name(k: usize) -> String {
    match k {
        0 => "1".to_string(),
        1 => "x".to_string(),
        k => format!("x^{k}"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentationIdeal {
    pub complex: BigradedComplex,
    /// Basis indices of the algebra spanning the ideal.
    pub inclusion: Vec<usize>,
}

/// A left dg module given by structure constants `a·m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgaModule {
    pub ring: CoefficientRing,
    pub basis: GradedBasis,
    pub differential: Vec<Lin<usize>>,
    /// Action of non-unit algebra elements; absent means zero.
    pub action: BTreeMap<(usize, usize), Lin<usize>>,
    pub adams_floor: Option<i64>,
}

impl DgaModule {
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn degree(&self, i: usize) -> Bidegree {
        self.basis.degrees[i]
    }

    pub fn act(&self, alg: &DgaPresentation, a: usize, m: usize) -> Lin<usize> {
        if a == alg.unit {
            return single(m);
        }
        self.action.get(&(a, m)).cloned().unwrap_or_default()
    }

    pub fn d_lin(&self, x: &Lin<usize>) -> Lin<usize> {
        let mut out = Lin::new();
        for (m, c) in x {
            add_scaled(&mut out, &self.differential[*m], c);
        }
        reduce(self.ring, out)
    }

    pub fn act_lin(&self, alg: &DgaPresentation, x: &Lin<usize>, y: &Lin<usize>) -> Lin<usize> {
        let mut out = Lin::new();
        for (a, ca) in x {
            for (m, cm) in y {
                add_scaled(&mut out, &self.act(alg, *a, *m), &(ca * cm));
            }
        }
        reduce(self.ring, out)
    }

    pub fn underlying(&self) -> Result<BigradedComplex, ComplexError> {
        let keys = self.basis.by_bidegree();
        complex_from_keys(self.ring, &keys, |i| self.basis.names[*i].clone(), |i| self.differential[*i].clone(), self.adams_floor)
    }

    pub fn validate(&self, alg: &DgaPresentation) -> Result<(), DgaError> {
        if self.ring != alg.ring {
            return Err(DgaError::RingMismatch);
        }
        let name = |i: usize| self.basis.names[i].clone();
        for m in 0..self.len() {
            if !self.basis.homogeneous(&self.differential[m], self.degree(m).next()) {
                return Err(DgaError::DifferentialDegree(name(m)));
            }
            if !self.d_lin(&self.differential[m]).is_empty() {
                return Err(DgaError::DSquared(name(m)));
            }
        }
        for (&(a, m), v) in &self.action {
            if a >= alg.len() || m >= self.len() {
                return Err(DgaError::UnknownElement(m));
            }
            if !self.basis.homogeneous(v, alg.degree(a) + self.degree(m)) {
                return Err(DgaError::ProductDegree(alg.name(a).to_string(), name(m)));
            }
            if a == alg.unit && !lin_eq(self.ring, v, &single(m)) {
                return Err(DgaError::Unit(name(m)));
            }
        }
        for a in 0..alg.len() {
            for m in 0..self.len() {
                let am = self.act(alg, a, m);
                let lhs = self.d_lin(&am);
                let mut rhs = self.act_lin(alg, alg.d(a), &single(m));
                add_scaled(&mut rhs, &self.act_lin(alg, &single(a), &self.differential[m]), &koszul(alg.degree(a).coh, 1));
                if !lin_eq(self.ring, &lhs, &rhs) {
                    return Err(DgaError::Leibniz(alg.name(a).to_string(), name(m)));
                }
                for b in 0..alg.len() {
                    let l = self.act_lin(alg, &alg.mul(a, b), &single(m));
                    let r = self.act_lin(alg, &single(a), &self.act(alg, b, m));
                    if !lin_eq(self.ring, &l, &r) {
                        return Err(DgaError::Associativity(alg.name(a).to_string(), alg.name(b).to_string(), name(m)));
                    }
                }
            }
        }
        Ok(())
    }

    /// The ground ring in bidegree `at`, with `A` acting through the augmentation.
    pub fn trivial_at(alg: &DgaPresentation, at: Bidegree) -> Self {
        let mut action = BTreeMap::new();
        for a in 0..alg.len() {
            let e = alg.ring.reduce(&alg.augmentation[a]);
            if a != alg.unit && !e.is_zero() {
                action.insert((a, 0), [(0, e)].into_iter().collect());
            }
        }
        DgaModule {
            ring: alg.ring,
            basis: GradedBasis::new(vec![("1".to_string(), at)]),
            differential: vec![Lin::new()],
            action,
            adams_floor: None,
        }
    }

    /// The unit module `𝟙`.
    pub fn trivial(alg: &DgaPresentation) -> Self {
        Self::trivial_at(alg, Bidegree::ZERO)
    }

    /// `Σ^{i,j} A`: the free rank-one module on a generator in bidegree `shift`.
    pub fn free_shifted(alg: &DgaPresentation, shift: Bidegree) -> Self {
        let names = (0..alg.len()).map(|i| format!("{}·g{}", alg.name(i), shift)).collect::<Vec<_>>();
        let basis = GradedBasis::new(names.into_iter().zip(alg.basis.degrees.iter().map(|b| *b + shift)).collect());
        let s = koszul(shift.coh, 1);
        let differential = (0..alg.len()).map(|i| alg.d(i).iter().map(|(k, v)| (*k, v * &s)).collect()).collect();
        let mut action = BTreeMap::new();
        for a in 0..alg.len() {
            for m in 0..alg.len() {
                // a·(g·m) = ± g·(a m)
                let v: Lin<usize> =
                    alg.mul(a, m).into_iter().map(|(k, c)| (k, c * koszul(alg.degree(a).coh, shift.coh))).collect();
                if a != alg.unit && !v.is_empty() {
                    action.insert((a, m), v);
                }
            }
        }
        DgaModule {
            ring: alg.ring,
            basis,
            differential,
            action,
            adams_floor: alg.adams_floor.map(|f| f + shift.adams),
        }
    }

    pub fn free(alg: &DgaPresentation) -> Self {
        Self::free_shifted(alg, Bidegree::ZERO)
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let off = self.len();
        let shift = |l: &Lin<usize>| l.iter().map(|(k, v)| (k + off, v.clone())).collect::<Lin<usize>>();
        let mut names = self.basis.names.clone();
        names.extend(other.basis.names.iter().map(|n| format!("{n}'")));
        let mut degrees = self.basis.degrees.clone();
        degrees.extend(other.basis.degrees.iter().copied());
        let mut differential = self.differential.clone();
        differential.extend(other.differential.iter().map(shift));
        let mut action = self.action.clone();
        for ((a, m), v) in &other.action {
            action.insert((*a, m + off), shift(v));
        }
        let adams_floor = match (self.adams_floor, other.adams_floor) {
            (Some(x), Some(y)) => Some(x.max(y)),
            (x, y) => x.or(y),
        };
        DgaModule { ring: self.ring, basis: GradedBasis { names, degrees }, differential, action, adams_floor }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: CoefficientRing = CoefficientRing::Rationals;

    #[test]
    fn unit_algebra_is_valid() {
        DgaPresentation::unit_algebra(Q).validate().unwrap();
        let ideal = DgaPresentation::unit_algebra(Q).augmentation_ideal().unwrap();
        assert!(ideal.complex.is_zero());
    }

    #[test]
    fn example_algebras_validate() {
        let p = DgaPresentation::p1_minus_three_points(Q);
        p.validate().unwrap();
        assert_eq!(p.len(), 3);
        let ideal = p.augmentation_ideal().unwrap();
        assert_eq!(ideal.complex.dim(Bidegree::new(-1, 1)), 2);
        assert_eq!(ideal.complex.total_dim(), 2);
        for n in 1..4 {
            let c = DgaPresentation::projective_space(Q, n);
            c.validate().unwrap();
            assert_eq!(c.len(), n + 1);
            assert!(c.augmentation[1].is_zero());
        }
        let a = DgaPresentation::affine_line(CoefficientRing::Integers, 5);
        a.validate().unwrap();
        assert_eq!(a.augmentation_ideal().unwrap().inclusion, vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn cpn_one_squares_to_zero() {
        let c = DgaPresentation::projective_space(Q, 1);
        assert!(c.mul(1, 1).is_empty());
    }

    #[test]
    fn tate_certificate_of_examples() {
        let w = Window::new(-4, 0, -2, 8).unwrap();
        let cert = DgaPresentation::p1_minus_three_points(Q).tate_certificate(&w).unwrap();
        assert_eq!(cert.kind, TateKind::StrictTate);
        assert!(cert.bounded);
        assert_eq!(cert.lower_bounds.get(&-1), Some(&1));
    }

    #[test]
    fn detects_leibniz_violation() {
        // d(a) = b with a·a = c forces d(c) = 2ab ≠ 0
        let z = Bidegree::ZERO;
        let a = DgaPresentation::from_named(
            Q,
            &[("1", z), ("a", Bidegree::new(-1, 2)), ("b", Bidegree::new(-1, 3)), ("c", Bidegree::new(-2, 4)), ("e", Bidegree::new(-2, 5))],
            &[("a", &[("b", 1)])],
            &[("a", "a", &[("c", 1)]), ("a", "b", &[("e", 1)]), ("b", "a", &[("e", 1)])],
            None,
        )
        .unwrap();
        assert!(matches!(a.validate(), Err(DgaError::Leibniz(_, _))));
    }

    #[test]
    fn detects_commutativity_violation() {
        let e = Bidegree::new(-1, 1);
        let a = DgaPresentation::from_named(
            Q,
            &[("1", Bidegree::ZERO), ("u", e), ("v", e), ("w", Bidegree::new(-2, 2))],
            &[],
            &[("u", "v", &[("w", 1)]), ("v", "u", &[("w", 1)])],
            None,
        )
        .unwrap();
        assert!(matches!(a.validate(), Err(DgaError::Commutativity(_, _))));
    }

    #[test]
    fn modules_validate() {
        let a = DgaPresentation::projective_space(Q, 2);
        DgaModule::trivial(&a).validate(&a).unwrap();
        DgaModule::free(&a).validate(&a).unwrap();
        let s = DgaModule::free_shifted(&a, Bidegree::new(-1, 3));
        s.validate(&a).unwrap();
        s.direct_sum(&DgaModule::trivial_at(&a, Bidegree::new(2, 0))).validate(&a).unwrap();
    }
}
