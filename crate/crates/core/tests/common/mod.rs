#![allow(dead_code)]

use std::collections::BTreeMap;

use adams_hopf::bigraded::Bidegree;
use adams_hopf::cosimplicial::{Level, TruncatedCosimplicial};
use adams_hopf::dga::{DgaModule, DgaPresentation};
use adams_hopf::lincomb::{add_term, single, Lin};
use adams_hopf::linalg::{AbGroupReport, CoefficientRing};
use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const Z: CoefficientRing = CoefficientRing::Integers;
pub const Q: CoefficientRing = CoefficientRing::Rationals;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A finite complex with zero-differential summands and two-term pieces
/// `x → k·y`, so `d² = 0` by construction.
#[derive(Clone, Debug)]
pub struct SmallComplex {
    pub names: Vec<String>,
    pub degrees: Vec<Bidegree>,
    pub differential: Vec<Lin<usize>>,
}

impl SmallComplex {
    pub fn lowest_coh(&self, adams: i64) -> Option<i64> {
        self.degrees.iter().filter(|b| b.adams == adams).map(|b| b.coh).min()
    }

    /// Expected homology: free summands, `ℤ/k` for each piece (nothing if `k = ±1`).
    pub fn homology(&self) -> BTreeMap<Bidegree, AbGroupReport> {
        let mut out: BTreeMap<Bidegree, AbGroupReport> = BTreeMap::new();
        let targets: Vec<usize> = self.differential.iter().flat_map(|d| d.keys().copied()).collect();
        for (i, b) in self.degrees.iter().enumerate() {
            let g = if let Some((_, k)) = self.differential[i].iter().next() {
                let k = k.magnitude().clone();
                if k == 1u32.into() {
                    continue;
                }
                AbGroupReport { free_rank: 0, torsion: vec![BigInt::from(k)] }
            } else if targets.contains(&i) {
                continue;
            } else {
                AbGroupReport::free(1)
            };
            let b = if g.free_rank == 0 { b.next() } else { *b };
            let e = out.entry(b).or_default();
            *e = e.direct_sum(&g);
        }
        out
    }
}

pub fn random_complex(r: &mut ChaCha8Rng) -> SmallComplex {
    let mut c = SmallComplex { names: Vec::new(), degrees: Vec::new(), differential: Vec::new() };
    let n0 = r.gen_range(-1..=1);
    for p in 0..r.gen_range(1..=3) {
        let b = Bidegree::new(r.gen_range(-1..=0), n0 + r.gen_range(0..=2));
        if r.gen_bool(0.5) {
            c.names.push(format!("f{p}"));
            c.degrees.push(b);
            c.differential.push(Lin::new());
        } else {
            let k = [1i64, 2, 3][r.gen_range(0..3)];
            let i = c.names.len();
            c.names.extend([format!("x{p}"), format!("y{p}")]);
            c.degrees.extend([b, b.next()]);
            c.differential.push([(i + 1, BigInt::from(k))].into_iter().collect());
            c.differential.push(Lin::new());
        }
    }
    c
}

/// A random partial order on `0..m` as its relation matrix (reflexive, transitive).
pub fn random_poset(r: &mut ChaCha8Rng, m: usize) -> Vec<Vec<bool>> {
    let mut le = vec![vec![false; m]; m];
    for i in 0..m {
        le[i][i] = true;
        for j in i + 1..m {
            le[i][j] = r.gen_bool(0.6);
        }
    }
    for k in 0..m {
        for i in 0..m {
            for j in 0..m {
                if le[i][k] && le[k][j] {
                    le[i][j] = true;
                }
            }
        }
    }
    le
}

/// `n`-simplices of the nerve: chains `x₀ ≤ ⋯ ≤ xₙ`.
pub fn chains(le: &[Vec<bool>], n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0..le.len()).map(|x| vec![x]).collect();
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|c| {
                let last = *c.last().unwrap();
                (0..le.len()).filter(move |y| le[last][*y]).map(move |y| {
                    let mut d = c.clone();
                    d.push(y);
                    d
                })
            })
            .collect();
    }
    out
}

/// Cochains on the nerve of `le` with coefficients in `c`, on levels `0..=levels`.
pub fn poset_cochains(le: &[Vec<bool>], c: &SmallComplex, levels: usize) -> TruncatedCosimplicial {
    let simplices: Vec<Vec<Vec<usize>>> = (0..=levels + 1).map(|n| chains(le, n)).collect();
    let index: Vec<BTreeMap<&Vec<usize>, usize>> =
        simplices.iter().map(|s| s.iter().enumerate().map(|(i, x)| (x, i)).collect()).collect();
    let key = |s: usize, e: usize| s * c.names.len() + e;
    let mut out = Vec::new();
    for n in 0..=levels {
        let mut names = Vec::new();
        let mut degrees = Vec::new();
        let mut differential = Vec::new();
        for s in &simplices[n] {
            for e in 0..c.names.len() {
                names.push(format!("{}@{s:?}", c.names[e]));
                degrees.push(c.degrees[e]);
                let si = index[n][s];
                differential.push(c.differential[e].iter().map(|(t, v)| (key(si, *t), v.clone())).collect());
            }
        }
        out.push(Level { names, degrees, differential });
    }
    let mut cofaces = Vec::new();
    for n in 0..levels {
        let mut maps = vec![vec![Lin::new(); out[n].names.len()]; n + 2];
        for tau in &simplices[n + 1] {
            let ti = index[n + 1][tau];
            for (i, map) in maps.iter_mut().enumerate() {
                let mut sigma = tau.clone();
                sigma.remove(i);
                let si = index[n][&sigma];
                for e in 0..c.names.len() {
                    add_term(&mut map[key(si, e)], key(ti, e), BigInt::from(1));
                }
            }
        }
        cofaces.push(maps);
    }
    let mut codegeneracies = vec![Vec::new()];
    for n in 1..=levels {
        let mut maps = vec![vec![Lin::new(); out[n].names.len()]; n];
        for sigma in &simplices[n] {
            let si = index[n][sigma];
            for (j, map) in maps.iter_mut().enumerate() {
                if sigma[j] == sigma[j + 1] {
                    let mut tau = sigma.clone();
                    tau.remove(j);
                    let ti = index[n - 1][&tau];
                    for e in 0..c.names.len() {
                        map[key(si, e)] = single(key(ti, e));
                    }
                }
            }
        }
        codegeneracies.push(maps);
    }
    TruncatedCosimplicial { ring: Z, levels: out, cofaces, codegeneracies, adams_floor: None }
}

pub fn random_square_zero(r: &mut ChaCha8Rng, ring: CoefficientRing) -> DgaPresentation {
    let gens: Vec<Bidegree> =
        (0..r.gen_range(1..=3)).map(|_| Bidegree::new(r.gen_range(-3..=-1), r.gen_range(-2..=3))).collect();
    DgaPresentation::square_zero(ring, &gens)
}

/// Sum of shifted unit and shifted free modules.
pub fn random_module(r: &mut ChaCha8Rng, alg: &DgaPresentation) -> DgaModule {
    let mut m: Option<DgaModule> = None;
    for _ in 0..r.gen_range(1..=3) {
        let b = Bidegree::new(r.gen_range(-2..=1), r.gen_range(-2..=2));
        let piece = if r.gen_bool(0.5) { DgaModule::trivial_at(alg, b) } else { DgaModule::free_shifted(alg, b) };
        m = Some(match m {
            None => piece,
            Some(m) => m.direct_sum(&piece),
        });
    }
    m.unwrap()
}

pub fn elements(list: &[(&'static str, i64, i64)]) -> Vec<(&'static str, Bidegree)> {
    list.iter().map(|(n, a, c)| (*n, Bidegree::new(*a, *c))).collect()
}

/// `k[x]/(x³)` with `x·x = 2x²`: Tor over ℤ picks up `ℤ/2`.
pub fn doubled_square(ring: CoefficientRing) -> DgaPresentation {
    let el = elements(&[("1", 0, 0), ("x", -1, 2), ("x2", -2, 4)]);
    DgaPresentation::from_named(ring, &el, &[], &[("x", "x", &[("x2", 2)])], None).unwrap()
}

/// Two even classes whose product is three times a third.
pub fn tripled_product(ring: CoefficientRing) -> DgaPresentation {
    let el = elements(&[("1", 0, 0), ("a", -1, 2), ("b", -1, 2), ("c", -2, 4)]);
    let p: &[(&str, &str, &[(&str, i64)])] = &[("a", "b", &[("c", 3)]), ("b", "a", &[("c", 3)])];
    DgaPresentation::from_named(ring, &el, &[], p, None).unwrap()
}

/// Exterior algebra on two odd classes.
pub fn exterior(ring: CoefficientRing) -> DgaPresentation {
    let el = elements(&[("1", 0, 0), ("u", -1, 1), ("v", -2, 3), ("uv", -3, 4)]);
    let p: &[(&str, &str, &[(&str, i64)])] = &[("u", "v", &[("uv", 1)]), ("v", "u", &[("uv", -1)])];
    DgaPresentation::from_named(ring, &el, &[], p, None).unwrap()
}

/// Internal bidegrees of `Tor_p` over `k[x]/(x^{n+1})`, `x` in (−1,2), read
/// off the periodic minimal resolution `… → A(−(n+1)) → A(−1) → A → k`.
pub fn truncated_polynomial_tor(n: i64, p: i64) -> Bidegree {
    let period = Bidegree::new(-(n + 1), 2 * (n + 1));
    let mut b = Bidegree::new(period.adams * (p / 2), period.coh * (p / 2));
    if p % 2 == 1 {
        b = b + Bidegree::new(-1, 2);
    }
    b
}
