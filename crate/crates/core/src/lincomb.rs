//! Sparse linear combinations over an ordered key set.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::linalg::CoefficientRing;

pub type Lin<K> = BTreeMap<K, BigInt>;

pub fn single<K: Ord>(key: K) -> Lin<K> {
    let mut l = Lin::new();
    l.insert(key, BigInt::one());
    l
}

pub fn add_term<K: Ord>(lin: &mut Lin<K>, key: K, coeff: BigInt) {
    if coeff.is_zero() {
        return;
    }
    let entry = lin.entry(key);
    match entry {
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += coeff;
            if o.get().is_zero() {
                o.remove();
            }
        }
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(coeff);
        }
    }
}

pub fn add_scaled<K: Ord + Clone>(lin: &mut Lin<K>, other: &Lin<K>, scale: &BigInt) {
    for (k, v) in other {
        add_term(lin, k.clone(), v * scale);
    }
}

/// Reduces coefficients into the ring and drops zeros.
pub fn reduce<K: Ord>(ring: CoefficientRing, lin: Lin<K>) -> Lin<K> {
    lin.into_iter()
        .map(|(k, v)| (k, ring.reduce(&v)))
        .filter(|(_, v)| !v.is_zero())
        .collect()
}

pub fn lin_eq<K: Ord + Clone>(ring: CoefficientRing, a: &Lin<K>, b: &Lin<K>) -> bool {
    let mut diff = a.clone();
    add_scaled(&mut diff, b, &-BigInt::one());
    reduce(ring, diff).is_empty()
}

pub fn sign(odd: bool) -> BigInt {
    if odd {
        -BigInt::one()
    } else {
        BigInt::one()
    }
}

/// `(-1)^(a·b)` for integer degrees.
pub fn koszul(a: i64, b: i64) -> BigInt {
    sign((a * b).rem_euclid(2) == 1)
}
