mod common;

use adams_hopf::bar::derived_tensor;
use adams_hopf::bigraded::{homology, Bidegree, Window};
use adams_hopf::cosimplicial::{check_identities, normalized_total, unnormalized_total, Scope};
use adams_hopf::dga::DgaModule;
use adams_hopf::gm::{gm_cohomology, is_nondegenerate, normalized_boundary, LaurentMonomial};
use adams_hopf::linalg::{homology_at, invariant_factors, smith_normal_form, ExactMatrix};
use adams_hopf::resolutions::{audit, resolve, tor, BigradedRing};
use common::*;
use num_bigint::BigInt;
use proptest::prelude::*;

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| proptest::collection::vec(proptest::collection::vec(-6i64..7, c), r))
}

fn to_matrix(rows: &[Vec<i64>]) -> ExactMatrix {
    let data: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    ExactMatrix::from_i64(Z, &data)
}

/// gcd of all `k × k` minors, by brute force over subsets.
fn determinantal_divisor(m: &[Vec<i64>], k: usize) -> BigInt {
    fn det(m: &[Vec<BigInt>]) -> BigInt {
        if m.is_empty() {
            return BigInt::from(1);
        }
        let mut total = BigInt::from(0);
        for (j, x) in m[0].iter().enumerate() {
            let minor: Vec<Vec<BigInt>> =
                m[1..].iter().map(|r| r.iter().enumerate().filter(|(i, _)| *i != j).map(|(_, v)| v.clone()).collect()).collect();
            let term = x * det(&minor);
            total += if j % 2 == 0 { term } else { -term };
        }
        total
    }
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        (0..n).flat_map(|i| subsets(i, k - 1).into_iter().map(move |mut s| {
            s.push(i);
            s
        })).collect()
    }
    let mut g = BigInt::from(0);
    for rows in subsets(m.len(), k) {
        for cols in subsets(m[0].len(), k) {
            let sub: Vec<Vec<BigInt>> = rows.iter().map(|r| cols.iter().map(|c| BigInt::from(m[*r][*c])).collect()).collect();
            g = num_integer::Integer::gcd(&g, &det(&sub));
        }
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn invariant_factors_match_minors(m in matrix()) {
        let f = invariant_factors(&to_matrix(&m));
        let snf = smith_normal_form(&to_matrix(&m)).unwrap();
        let mut prefix = BigInt::from(1);
        for k in 1..=m.len().min(m[0].len()) {
            let dk = determinantal_divisor(&m, k);
            if k <= snf.rank() {
                prefix *= &f[k - 1];
                prop_assert_eq!(&prefix, &dk);
            } else {
                prop_assert_eq!(dk, BigInt::from(0));
            }
        }
    }

    #[test]
    fn homology_of_a_zero_map_is_its_cokernel(m in matrix()) {
        let a = to_matrix(&m);
        let zero = ExactMatrix::zeros(Z, 0, a.rows());
        let h = homology_at(&a, &zero).unwrap();
        let f = invariant_factors(&a);
        prop_assert_eq!(h.free_rank, a.rows() - f.len());
        let torsion: Vec<BigInt> = f.into_iter().filter(|d| d != &BigInt::from(1)).collect();
        prop_assert_eq!(h.torsion, torsion);
    }

    #[test]
    fn gm_normalized_boundary_lands_in_nondegenerate(r in -4i64..5, e in proptest::collection::vec(-4i64..5, 0..5)) {
        let e = LaurentMonomial(e);
        if is_nondegenerate(r, &e) {
            if let Some((_, t)) = normalized_boundary(r, &e) {
                prop_assert!(is_nondegenerate(r, &t));
                prop_assert_eq!(t.level(), e.level() + 1);
            }
        }
    }

    #[test]
    fn gm_cohomology_is_monotone_in_degree(r in -5i64..6, d in 0usize..5) {
        let small = gm_cohomology(r, d);
        let large = gm_cohomology(r, d + 2);
        for (b, g) in &small.groups {
            prop_assert_eq!(large.get(*b), g.clone());
        }
    }

    #[test]
    fn poset_cochains_are_cosimplicial(seed in 0u64..1000) {
        let mut r = rng(seed);
        let le = random_poset(&mut r, 3);
        let c = random_complex(&mut r);
        let x = poset_cochains(&le, &c, 3);
        prop_assert!(check_identities(&x, &Scope::new(3, -1, 0, 0)).all_hold());
        // normalized and unnormalized totals agree below the truncation edge
        let low = c.degrees.iter().map(|b| b.coh).min().unwrap();
        let w = Window::new(-1, 0, -2, 3 + low - 1).unwrap();
        let u = homology(&unnormalized_total(&x).unwrap(), &w).unwrap();
        let n = homology(&normalized_total(&x).unwrap(), &w).unwrap();
        prop_assert_eq!(u.groups, n.groups);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn resolutions_of_random_modules(seed in 0u64..1000, s in 1i64..3) {
        let mut r = rng(seed);
        let ring = if seed % 2 == 0 { Z } else { Q };
        let a = BigradedRing::new(random_square_zero(&mut r, ring)).unwrap();
        let m = random_module(&mut r, a.presentation());
        let top = m.basis.top_adams().unwrap();
        let res = resolve(&a, &m, s, (2 * s + 1) as usize, top - s - 2).unwrap();
        let report = audit(&res).unwrap();
        prop_assert!(report.all_hold(), "{:?}", report);
    }

    #[test]
    fn tor_with_modules_matches_bar(seed in 0u64..1000) {
        let mut r = rng(seed);
        let alg = random_square_zero(&mut r, Z);
        let a = BigradedRing::new(alg.clone()).unwrap();
        let shift = Bidegree::new(0, seed as i64 % 3 - 1);
        let m = DgaModule::trivial_at(&alg, shift);
        let n = DgaModule::trivial(&alg).direct_sum(&DgaModule::trivial_at(&alg, Bidegree::new(-1, 1)));
        let bar_w = Window::new(-3, 0, -10, 8).unwrap();
        let t = tor(&a, &m, &n, &Window::new(-3, 0, -10, 12).unwrap(), 4, 1).unwrap();
        let bar = derived_tensor(&alg, &m, &n, &bar_w).unwrap();
        for b in bar_w.bidegrees() {
            prop_assert_eq!(t.total(b), bar.get(b), "{}", b);
        }
    }
}
