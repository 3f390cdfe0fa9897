//! Dg bialgebras given symbolically on a basis, with an exhaustive axiom
//! checker over a finite part of the basis.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::bigraded::{complex_from_keys, BigradedComplex, Bidegree, ComplexError};
use crate::lincomb::{add_scaled, add_term, koszul, lin_eq, reduce, single, Lin};
use crate::linalg::CoefficientRing;

pub type Tensor2<K> = Lin<(K, K)>;

pub trait Bialgebra: Sync {
    type Key: Ord + Clone + Debug + Send + Sync;

    fn ring(&self) -> CoefficientRing;
    fn degree(&self, k: &Self::Key) -> Bidegree;
    fn unit(&self) -> Self::Key;
    fn counit(&self, k: &Self::Key) -> BigInt;
    fn product(&self, a: &Self::Key, b: &Self::Key) -> Lin<Self::Key>;
    fn coproduct(&self, k: &Self::Key) -> Tensor2<Self::Key>;
    /// `None` when the bialgebra has no antipode.
    fn antipode(&self, k: &Self::Key) -> Option<Lin<Self::Key>>;
    fn differential(&self, k: &Self::Key) -> Lin<Self::Key>;
    /// Basis elements with Adams degree in `[adams_min, adams_max]`. Algebras
    /// with infinitely many basis elements per bidegree cut off at `radius`.
    fn basis(&self, adams_min: i64, adams_max: i64, radius: usize) -> Vec<Self::Key>;
    fn label(&self, k: &Self::Key) -> String;
    /// Lowest Adams degree where the structure is known, if truncated.
    fn adams_floor(&self) -> Option<i64> {
        None
    }
}

pub fn coh<H: Bialgebra>(h: &H, k: &H::Key) -> i64 {
    h.degree(k).coh
}

pub fn mul_lin<H: Bialgebra>(h: &H, x: &Lin<H::Key>, y: &Lin<H::Key>) -> Lin<H::Key> {
    let mut out = Lin::new();
    for (a, ca) in x {
        for (b, cb) in y {
            add_scaled(&mut out, &h.product(a, b), &(ca * cb));
        }
    }
    reduce(h.ring(), out)
}

pub fn d_lin<H: Bialgebra>(h: &H, x: &Lin<H::Key>) -> Lin<H::Key> {
    let mut out = Lin::new();
    for (a, c) in x {
        add_scaled(&mut out, &h.differential(a), c);
    }
    reduce(h.ring(), out)
}

/// Applies `f ⊗ g` with the Koszul sign `(−1)^{|g|·|x|}` for `g` of odd degree.
pub fn tensor_apply<H, F, G>(h: &H, t: &Tensor2<H::Key>, f: F, g: G, g_degree: i64) -> Tensor2<H::Key>
where
    H: Bialgebra,
    F: Fn(&H::Key) -> Lin<H::Key>,
    G: Fn(&H::Key) -> Lin<H::Key>,
{
    let mut out = Tensor2::new();
    for ((x, y), c) in t {
        let s = koszul(g_degree, coh(h, x));
        for (fx, cx) in f(x) {
            for (gy, cy) in g(y) {
                add_term(&mut out, (fx.clone(), gy), c * &cx * &cy * &s);
            }
        }
    }
    reduce(h.ring(), out)
}

/// Product in `H ⊗ H`: `(a⊗b)(c⊗d) = (−1)^{|b||c|} ac ⊗ bd`.
pub fn tensor_mul<H: Bialgebra>(h: &H, x: &Tensor2<H::Key>, y: &Tensor2<H::Key>) -> Tensor2<H::Key> {
    let mut out = Tensor2::new();
    for ((a, b), cx) in x {
        for ((c, d), cy) in y {
            let s = koszul(coh(h, b), coh(h, c));
            let ac = h.product(a, c);
            let bd = h.product(b, d);
            for (p, cp) in &ac {
                for (q, cq) in &bd {
                    add_term(&mut out, (p.clone(), q.clone()), cx * cy * cp * cq * &s);
                }
            }
        }
    }
    reduce(h.ring(), out)
}

/// Underlying complex on the basis in an Adams range.
pub fn bialgebra_complex<H: Bialgebra>(
    h: &H,
    adams_min: i64,
    adams_max: i64,
    radius: usize,
) -> Result<BigradedComplex, ComplexError> {
    let mut keys: BTreeMap<Bidegree, Vec<H::Key>> = BTreeMap::new();
    for k in h.basis(adams_min, adams_max, radius) {
        keys.entry(h.degree(&k)).or_default().push(k);
    }
    let floor = h.adams_floor().map(|f| f.max(adams_min)).or(Some(adams_min));
    complex_from_keys(h.ring(), &keys, |k| h.label(k), |k| h.differential(k), floor)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomResult {
    pub axiom: String,
    pub holds: bool,
    pub witness: Option<String>,
    pub checked: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub results: Vec<AxiomResult>,
}

impl AxiomReport {
    pub fn all_hold(&self) -> bool {
        self.results.iter().all(|r| r.holds)
    }

    pub fn holds(&self, axiom: &str) -> Option<bool> {
        self.results.iter().find(|r| r.axiom == axiom).map(|r| r.holds)
    }
}

fn first_failure<T: Sync, F>(items: &[T], f: F) -> Option<usize>
where
    F: Fn(&T) -> bool + Sync,
{
    items.par_iter().position_first(|x| !f(x))
}

fn record<T: Sync, F, L>(results: &mut Vec<AxiomResult>, axiom: &str, items: &[T], check: F, describe: L)
where
    F: Fn(&T) -> bool + Sync,
    L: Fn(&T) -> String,
{
    let fail = first_failure(items, check);
    results.push(AxiomResult {
        axiom: axiom.to_string(),
        holds: fail.is_none(),
        witness: fail.map(|i| describe(&items[i])),
        checked: items.len(),
    });
}

/// Checks the dg Hopf axioms on all basis elements, pairs, and (for
/// associativity) triples in the Adams range `[adams_min, 0]`.
pub fn check_axioms<H: Bialgebra>(h: &H, adams_min: i64, radius: usize) -> AxiomReport {
    let ring = h.ring();
    let basis = h.basis(adams_min, 0, radius);
    let pairs: Vec<(H::Key, H::Key)> = basis
        .iter()
        .flat_map(|a| basis.iter().map(move |b| (a.clone(), b.clone())))
        .filter(|(a, b)| h.degree(a).adams + h.degree(b).adams >= adams_min)
        .collect();
    let triples: Vec<(H::Key, H::Key, H::Key)> = pairs
        .iter()
        .flat_map(|(a, b)| basis.iter().map(move |c| (a.clone(), b.clone(), c.clone())))
        .filter(|(a, b, c)| h.degree(a).adams + h.degree(b).adams + h.degree(c).adams >= adams_min)
        .collect();
    let one = single(h.unit());
    let id = |k: &H::Key| single(k.clone());
    let mut results = Vec::new();
    let l1 = |k: &H::Key| h.label(k);
    let l2 = |p: &(H::Key, H::Key)| format!("({}, {})", h.label(&p.0), h.label(&p.1));

    record(&mut results, "d_squared", &basis, |k| d_lin(h, &h.differential(k)).is_empty(), l1);
    record(
        &mut results,
        "unit",
        &basis,
        |k| lin_eq(ring, &h.product(&h.unit(), k), &id(k)) && lin_eq(ring, &h.product(k, &h.unit()), &id(k)),
        l1,
    );
    record(
        &mut results,
        "associativity",
        &triples,
        |(a, b, c)| {
            let l = mul_lin(h, &h.product(a, b), &id(c));
            let r = mul_lin(h, &id(a), &h.product(b, c));
            lin_eq(ring, &l, &r)
        },
        |(a, b, c)| format!("({}, {}, {})", h.label(a), h.label(b), h.label(c)),
    );
    record(
        &mut results,
        "leibniz",
        &pairs,
        |(a, b)| {
            let lhs = d_lin(h, &h.product(a, b));
            let mut rhs = mul_lin(h, &h.differential(a), &id(b));
            add_scaled(&mut rhs, &mul_lin(h, &id(a), &h.differential(b)), &koszul(coh(h, a), 1));
            lin_eq(ring, &lhs, &rhs)
        },
        l2,
    );
    record(
        &mut results,
        "coassociativity",
        &basis,
        |k| {
            let d = h.coproduct(k);
            let left = tensor_apply(h, &d, |x| id(x), |y| id(y), 0);
            let mut l: Lin<(H::Key, H::Key, H::Key)> = Lin::new();
            let mut r: Lin<(H::Key, H::Key, H::Key)> = Lin::new();
            for ((x, y), c) in &left {
                for ((x1, x2), c1) in h.coproduct(x) {
                    add_term(&mut l, (x1, x2, y.clone()), c * &c1);
                }
                for ((y1, y2), c2) in h.coproduct(y) {
                    add_term(&mut r, (x.clone(), y1, y2), c * &c2);
                }
            }
            lin_eq(ring, &l, &r)
        },
        l1,
    );
    record(
        &mut results,
        "counit",
        &basis,
        |k| {
            let mut l = Lin::new();
            let mut r = Lin::new();
            for ((x, y), c) in h.coproduct(k) {
                add_term(&mut l, y.clone(), &c * h.counit(&x));
                add_term(&mut r, x, c * h.counit(&y));
            }
            lin_eq(ring, &l, &id(k)) && lin_eq(ring, &r, &id(k))
        },
        l1,
    );
    record(
        &mut results,
        "coderivation",
        &basis,
        |k| {
            let lhs = {
                let mut out = Tensor2::new();
                for (x, c) in h.differential(k) {
                    add_scaled(&mut out, &h.coproduct(&x), &c);
                }
                reduce(ring, out)
            };
            let dk = h.coproduct(k);
            let mut rhs = tensor_apply(h, &dk, |x| h.differential(x), |y| id(y), 0);
            add_scaled(&mut rhs, &tensor_apply(h, &dk, |x| id(x), |y| h.differential(y), 1), &BigInt::one());
            lin_eq(ring, &lhs, &rhs)
        },
        l1,
    );
    record(
        &mut results,
        "bialgebra_compatibility",
        &pairs,
        |(a, b)| {
            let mut lhs = Tensor2::new();
            for (x, c) in h.product(a, b) {
                add_scaled(&mut lhs, &h.coproduct(&x), &c);
            }
            let rhs = tensor_mul(h, &h.coproduct(a), &h.coproduct(b));
            lin_eq(ring, &reduce(ring, lhs), &rhs)
        },
        l2,
    );
    record(
        &mut results,
        "counit_multiplicative",
        &pairs,
        |(a, b)| {
            let e: BigInt = h.product(a, b).iter().map(|(x, c)| c * h.counit(x)).sum();
            ring.eq(&e, &(h.counit(a) * h.counit(b)))
        },
        l2,
    );
    if basis.iter().all(|k| h.antipode(k).is_some()) {
        let s = |k: &H::Key| h.antipode(k).unwrap_or_default();
        record(
            &mut results,
            "antipode",
            &basis,
            |k| {
                let unit_counit: Lin<H::Key> =
                    reduce(ring, one.iter().map(|(u, c)| (u.clone(), c * h.counit(k))).collect());
                let dk = h.coproduct(k);
                let mut left = Lin::new();
                let mut right = Lin::new();
                for ((x, y), c) in &dk {
                    add_scaled(&mut left, &mul_lin(h, &s(x), &id(y)), c);
                    add_scaled(&mut right, &mul_lin(h, &id(x), &s(y)), c);
                }
                lin_eq(ring, &left, &unit_counit) && lin_eq(ring, &right, &unit_counit)
            },
            l1,
        );
    } else {
        results.push(AxiomResult { axiom: "antipode".into(), holds: false, witness: Some("no antipode".into()), checked: 0 });
    }
    AxiomReport { results }
}

/// Group algebra `ℤ[z, z⁻¹]` of ℤ, concentrated in bidegree (0,0).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LaurentHopf {
    pub ring: CoefficientRing,
}

impl Bialgebra for LaurentHopf {
    type Key = i64;

    fn ring(&self) -> CoefficientRing {
        self.ring
    }
    fn degree(&self, _: &i64) -> Bidegree {
        Bidegree::ZERO
    }
    fn unit(&self) -> i64 {
        0
    }
    fn counit(&self, _: &i64) -> BigInt {
        BigInt::one()
    }
    fn product(&self, a: &i64, b: &i64) -> Lin<i64> {
        single(a + b)
    }
    fn coproduct(&self, k: &i64) -> Tensor2<i64> {
        single((*k, *k))
    }
    fn antipode(&self, k: &i64) -> Option<Lin<i64>> {
        Some(single(-k))
    }
    fn differential(&self, _: &i64) -> Lin<i64> {
        Lin::new()
    }
    fn basis(&self, adams_min: i64, adams_max: i64, radius: usize) -> Vec<i64> {
        if adams_min <= 0 && 0 <= adams_max {
            let r = radius as i64;
            (-r..=r).collect()
        } else {
            Vec::new()
        }
    }
    fn label(&self, k: &i64) -> String {
        format!("z^{k}")
    }
}

/// The monoid bialgebra `ℤ[z]`: no antipode.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolynomialBialgebra {
    pub ring: CoefficientRing,
}

impl Bialgebra for PolynomialBialgebra {
    type Key = i64;

    fn ring(&self) -> CoefficientRing {
        self.ring
    }
    fn degree(&self, _: &i64) -> Bidegree {
        Bidegree::ZERO
    }
    fn unit(&self) -> i64 {
        0
    }
    fn counit(&self, _: &i64) -> BigInt {
        BigInt::one()
    }
    fn product(&self, a: &i64, b: &i64) -> Lin<i64> {
        single(a + b)
    }
    fn coproduct(&self, k: &i64) -> Tensor2<i64> {
        single((*k, *k))
    }
    fn antipode(&self, _: &i64) -> Option<Lin<i64>> {
        None
    }
    fn differential(&self, _: &i64) -> Lin<i64> {
        Lin::new()
    }
    fn basis(&self, adams_min: i64, adams_max: i64, radius: usize) -> Vec<i64> {
        if adams_min <= 0 && 0 <= adams_max {
            (0..=radius as i64).collect()
        } else {
            Vec::new()
        }
    }
    fn label(&self, k: &i64) -> String {
        format!("z^{k}")
    }
}

/// The ground ring as a bialgebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrivialHopf {
    pub ring: CoefficientRing,
}

impl Bialgebra for TrivialHopf {
    type Key = ();

    fn ring(&self) -> CoefficientRing {
        self.ring
    }
    fn degree(&self, _: &()) -> Bidegree {
        Bidegree::ZERO
    }
    fn unit(&self) {}
    fn counit(&self, _: &()) -> BigInt {
        BigInt::one()
    }
    fn product(&self, _: &(), _: &()) -> Lin<()> {
        single(())
    }
    fn coproduct(&self, _: &()) -> Tensor2<()> {
        single(((), ()))
    }
    fn antipode(&self, _: &()) -> Option<Lin<()>> {
        Some(single(()))
    }
    fn differential(&self, _: &()) -> Lin<()> {
        Lin::new()
    }
    fn basis(&self, adams_min: i64, adams_max: i64, _: usize) -> Vec<()> {
        if adams_min <= 0 && 0 <= adams_max {
            vec![()]
        } else {
            Vec::new()
        }
    }
    fn label(&self, _: &()) -> String {
        "1".into()
    }
}

/// Wraps a bialgebra and perturbs one structure map on one basis element;
/// used as a negative control for the checkers.
pub struct CorruptedCoproduct<'a, H: Bialgebra> {
    pub inner: &'a H,
    pub target: H::Key,
}

impl<H: Bialgebra> Bialgebra for CorruptedCoproduct<'_, H> {
    type Key = H::Key;

    fn ring(&self) -> CoefficientRing {
        self.inner.ring()
    }
    fn degree(&self, k: &H::Key) -> Bidegree {
        self.inner.degree(k)
    }
    fn unit(&self) -> H::Key {
        self.inner.unit()
    }
    fn counit(&self, k: &H::Key) -> BigInt {
        self.inner.counit(k)
    }
    fn product(&self, a: &H::Key, b: &H::Key) -> Lin<H::Key> {
        self.inner.product(a, b)
    }
    fn coproduct(&self, k: &H::Key) -> Tensor2<H::Key> {
        let mut c = self.inner.coproduct(k);
        if *k == self.target {
            add_term(&mut c, (k.clone(), k.clone()), BigInt::one());
        }
        c
    }
    fn antipode(&self, k: &H::Key) -> Option<Lin<H::Key>> {
        self.inner.antipode(k)
    }
    fn differential(&self, k: &H::Key) -> Lin<H::Key> {
        self.inner.differential(k)
    }
    fn basis(&self, adams_min: i64, adams_max: i64, radius: usize) -> Vec<H::Key> {
        self.inner.basis(adams_min, adams_max, radius)
    }
    fn label(&self, k: &H::Key) -> String {
        self.inner.label(k)
    }
    fn adams_floor(&self) -> Option<i64> {
        self.inner.adams_floor()
    }
}

/// Is `x` a nonzero multiple of the unit only?
pub fn is_unit_multiple<H: Bialgebra>(h: &H, x: &Lin<H::Key>) -> bool {
    x.len() == 1 && x.keys().next() == Some(&h.unit()) && !x.values().next().is_none_or(Zero::is_zero)
}
