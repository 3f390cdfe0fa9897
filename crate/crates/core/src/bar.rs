//! Two-sided bar constructions `B(M, A, N)` and the bar bialgebra
//! `B(𝟙, A, 𝟙)` with shuffle product and deconcatenation coproduct.
//!
//! A word `m[a₁|…|a_s]n` has bidegree `(Σ adams, |m| + Σ(|aᵢ| − 1) + |n|)`:
//! letters are suspended. With `εᵢ = |m| + Σ_{j<i}(|a_j| − 1)` the
//! differential is
//!
//! ```text
//!   (dm)[…]n − Σ (−1)^{εᵢ} m[…|daᵢ|…]n + (−1)^{ε_{s+1}} m[…](dn)
//!   + (−1)^{|m|} (m·a₁)[a₂|…]n + Σ (−1)^{εᵢ₊₁} m[…|aᵢaᵢ₊₁|…]n
//!   − (−1)^{ε_s} m[…|a_{s−1}](a_s·n)
//! ```

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::bigraded::{self, complex_from_keys, BigradedComplex, Bidegree, ComplexError, HomologyReport, Window};
use crate::dga::{DgaError, DgaModule, DgaPresentation};
use crate::hopf::{check_axioms, AxiomReport, Bialgebra, Tensor2};
use crate::lincomb::{add_term, koszul, reduce, sign, single, Lin};
use crate::linalg::{CoefficientRing, ExactMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BarError {
    #[error("window needs {needed} bar columns but only {given} were allowed")]
    WindowNotClosed { needed: usize, given: usize },
    #[error("window needs data in Adams degree {0}, below the presented range")]
    WindowExceedsSupport(i64),
    #[error(transparent)]
    Dga(#[from] DgaError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BarWord {
    pub left: usize,
    pub letters: Vec<usize>,
    pub right: usize,
}

/// The data of `B(M, A, N)`: `M` is a left module used as a right module
/// through graded commutativity.
#[derive(Clone, Debug)]
pub struct TwoSidedBar<'a> {
    pub alg: &'a DgaPresentation,
    pub left: &'a DgaModule,
    pub right: &'a DgaModule,
}

impl<'a> TwoSidedBar<'a> {
    pub fn new(alg: &'a DgaPresentation, left: &'a DgaModule, right: &'a DgaModule) -> Result<Self, BarError> {
        alg.validate()?;
        alg.check_strict_tate()?;
        left.validate(alg)?;
        right.validate(alg)?;
        Ok(TwoSidedBar { alg, left, right })
    }

    fn letter_coh(&self, a: usize) -> i64 {
        self.alg.degree(a).coh
    }

    /// Unsuspended bidegree: the column grading.
    pub fn internal_degree(&self, w: &BarWord) -> Bidegree {
        let mut b = self.left.degree(w.left) + self.right.degree(w.right);
        for a in &w.letters {
            b = b + self.alg.degree(*a);
        }
        b
    }

    pub fn degree(&self, w: &BarWord) -> Bidegree {
        let b = self.internal_degree(w);
        Bidegree::new(b.adams, b.coh - w.letters.len() as i64)
    }

    /// `εᵢ` for `i = 0..=s`.
    fn prefix_degrees(&self, w: &BarWord) -> Vec<i64> {
        let mut eps = vec![self.left.degree(w.left).coh];
        for a in &w.letters {
            let last = *eps.last().unwrap();
            eps.push(last + self.letter_coh(*a) - 1);
        }
        eps
    }

    /// Terms preserving the number of letters.
    pub fn vertical(&self, w: &BarWord) -> Lin<BarWord> {
        let eps = self.prefix_degrees(w);
        let mut out = Lin::new();
        for (m, c) in &self.left.differential[w.left] {
            add_term(&mut out, BarWord { left: *m, ..w.clone() }, c.clone());
        }
        for (i, a) in w.letters.iter().enumerate() {
            let s = -sign(eps[i].rem_euclid(2) == 1);
            for (b, c) in self.alg.d(*a) {
                let mut letters = w.letters.clone();
                letters[i] = *b;
                add_term(&mut out, BarWord { letters, ..w.clone() }, c * &s);
            }
        }
        let s = sign(eps[w.letters.len()].rem_euclid(2) == 1);
        for (n, c) in &self.right.differential[w.right] {
            add_term(&mut out, BarWord { right: *n, ..w.clone() }, c * &s);
        }
        reduce(self.alg.ring, out)
    }

    /// Terms removing one letter (actions and merges).
    pub fn horizontal(&self, w: &BarWord) -> Lin<BarWord> {
        let s = w.letters.len();
        let mut out = Lin::new();
        if s == 0 {
            return out;
        }
        let eps = self.prefix_degrees(w);
        let mcoh = self.left.degree(w.left).coh;
        let a1 = w.letters[0];
        let sg = sign(mcoh.rem_euclid(2) == 1) * koszul(mcoh, self.letter_coh(a1));
        for (m, c) in self.left.act(self.alg, a1, w.left) {
            add_term(&mut out, BarWord { left: m, letters: w.letters[1..].to_vec(), right: w.right }, c * &sg);
        }
        for i in 0..s - 1 {
            let sg = sign(eps[i + 1].rem_euclid(2) == 1);
            for (p, c) in self.alg.mul(w.letters[i], w.letters[i + 1]) {
                let mut letters = w.letters[..i].to_vec();
                letters.push(p);
                letters.extend_from_slice(&w.letters[i + 2..]);
                add_term(&mut out, BarWord { letters, ..w.clone() }, c * &sg);
            }
        }
        let sg = -sign(eps[s - 1].rem_euclid(2) == 1);
        for (n, c) in self.right.act(self.alg, w.letters[s - 1], w.right) {
            add_term(&mut out, BarWord { left: w.left, letters: w.letters[..s - 1].to_vec(), right: n }, c * &sg);
        }
        reduce(self.alg.ring, out)
    }

    pub fn differential(&self, w: &BarWord) -> Lin<BarWord> {
        let mut d = self.vertical(w);
        for (k, v) in self.horizontal(w) {
            add_term(&mut d, k, v);
        }
        d
    }

    /// Bar columns needed for Adams degrees ≥ `adams_min`.
    pub fn columns_needed(&self, adams_min: i64) -> usize {
        let top = self.left.basis.top_adams().unwrap_or(0) + self.right.basis.top_adams().unwrap_or(0);
        (top - adams_min).max(0) as usize
    }

    fn check_support(&self, adams_min: i64) -> Result<(), BarError> {
        let top_l = self.left.basis.top_adams().unwrap_or(0).max(0);
        let top_r = self.right.basis.top_adams().unwrap_or(0).max(0);
        let need_a = adams_min - top_l - top_r;
        if !self.alg.is_known(need_a) {
            return Err(BarError::WindowExceedsSupport(need_a));
        }
        if self.left.adams_floor.is_some_and(|f| adams_min - top_r < f) {
            return Err(BarError::WindowExceedsSupport(adams_min - top_r));
        }
        if self.right.adams_floor.is_some_and(|f| adams_min - top_l < f) {
            return Err(BarError::WindowExceedsSupport(adams_min - top_l));
        }
        Ok(())
    }

    /// All words with Adams degree in `[adams_min, adams_max]` and at most
    /// `max_column` letters.
    pub fn words(&self, adams_min: i64, adams_max: i64, max_column: usize) -> Vec<BarWord> {
        let letters = self.alg.reduced_basis();
        let mut out = Vec::new();
        for m in 0..self.left.len() {
            for n in 0..self.right.len() {
                let base = self.left.degree(m).adams + self.right.degree(n).adams;
                let mut stack = vec![(Vec::<usize>::new(), base)];
                while let Some((word, adams)) = stack.pop() {
                    if (adams_min..=adams_max).contains(&adams) {
                        out.push(BarWord { left: m, letters: word.clone(), right: n });
                    }
                    if word.len() == max_column {
                        continue;
                    }
                    for &a in &letters {
                        let next = adams + self.alg.degree(a).adams;
                        if next >= adams_min {
                            let mut w = word.clone();
                            w.push(a);
                            stack.push((w, next));
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    pub fn label(&self, w: &BarWord) -> String {
        let letters: Vec<&str> = w.letters.iter().map(|a| self.alg.name(*a)).collect();
        format!("{}[{}]{}", self.left.basis.names[w.left], letters.join("|"), self.right.basis.names[w.right])
    }

    pub fn bicomplex(&self, w: &Window, max_column: usize) -> Result<BarBicomplex, BarError> {
        let needed = self.columns_needed(w.adams_min);
        if max_column < needed {
            return Err(BarError::WindowNotClosed { needed, given: max_column });
        }
        self.check_support(w.adams_min)?;
        let words = self.words(w.adams_min, w.adams_max, max_column);
        let mut columns: Vec<BTreeMap<Bidegree, Vec<BarWord>>> = vec![BTreeMap::new(); max_column + 1];
        for word in words {
            let b = self.internal_degree(&word);
            columns[word.letters.len()].entry(b).or_default().push(word);
        }
        let ring = self.alg.ring;
        let floor = Some(w.adams_min);
        let mut complexes = Vec::new();
        for col in &columns {
            complexes.push(complex_from_keys(ring, col, |k| self.label(k), |k| self.vertical(k), floor)?);
        }
        let mut horizontal = vec![BTreeMap::new()];
        for s in 1..=max_column {
            let target = &columns[s - 1];
            let mut maps = BTreeMap::new();
            for (b, src) in &columns[s] {
                let tgt: &[BarWord] = target.get(b).map_or(&[], Vec::as_slice);
                let index: BTreeMap<&BarWord, usize> = tgt.iter().enumerate().map(|(i, k)| (k, i)).collect();
                let mut triplets = Vec::new();
                for (c, k) in src.iter().enumerate() {
                    for (t, v) in self.horizontal(k) {
                        let r = *index.get(&t).ok_or(ComplexError::OpenBasis(*b))?;
                        triplets.push((r, c, v));
                    }
                }
                maps.insert(*b, ExactMatrix::from_triplets(ring, tgt.len(), src.len(), triplets));
            }
            horizontal.push(maps);
        }
        Ok(BarBicomplex { ring, window: *w, columns: complexes, horizontal, words: columns })
    }

    /// Total complex of the Adams range of `w`.
    pub fn total(&self, w: &Window) -> Result<BigradedComplex, BarError> {
        let needed = self.columns_needed(w.adams_min);
        self.bicomplex(w, needed).map(|b| b.totalize(self))?
    }
}

/// Columns `M ⊗ Ā^{⊗s} ⊗ N` graded by unsuspended bidegree, with the
/// horizontal maps from column `s` to column `s − 1`.
#[derive(Clone, Debug)]
pub struct BarBicomplex {
    pub ring: CoefficientRing,
    pub window: Window,
    pub columns: Vec<BigradedComplex>,
    pub horizontal: Vec<BTreeMap<Bidegree, ExactMatrix>>,
    words: Vec<BTreeMap<Bidegree, Vec<BarWord>>>,
}

impl BarBicomplex {
    pub fn max_column(&self) -> usize {
        self.columns.len() - 1
    }

    /// Horizontal map out of column `s` at bidegree `b`.
    pub fn horizontal_at(&self, s: usize, b: Bidegree) -> ExactMatrix {
        self.horizontal[s].get(&b).cloned().unwrap_or_else(|| {
            let rows = if s == 0 { 0 } else { self.columns[s - 1].dim(b) };
            ExactMatrix::zeros(self.ring, rows, self.columns[s].dim(b))
        })
    }

    /// `h∘h = 0` and `h d + d h = 0` on every block.
    pub fn check_invariants(&self) -> Result<(), ComplexError> {
        for s in 1..=self.max_column() {
            for b in self.columns[s].bidegrees().collect::<Vec<_>>() {
                let h = self.horizontal_at(s, b);
                if s >= 2 && !self.horizontal_at(s - 1, b).mul(&h)?.is_zero() {
                    return Err(ComplexError::DSquaredNonzero(b));
                }
                let dh = self.columns[s - 1].differential(b).mul(&h)?;
                let hd = self.horizontal_at(s, b.next()).mul(&self.columns[s].differential(b))?;
                if !dh.add(&hd)?.is_zero() {
                    return Err(ComplexError::DSquaredNonzero(b));
                }
            }
        }
        Ok(())
    }

    /// Total complex: column `s` at unsuspended `(k, n)` sits in total `(k, n − s)`.
    pub fn totalize(&self, bar: &TwoSidedBar<'_>) -> Result<BigradedComplex, BarError> {
        let mut keys: BTreeMap<Bidegree, Vec<BarWord>> = BTreeMap::new();
        for col in &self.words {
            for words in col.values() {
                for w in words {
                    keys.entry(bar.degree(w)).or_default().push(w.clone());
                }
            }
        }
        for v in keys.values_mut() {
            v.sort();
        }
        Ok(complex_from_keys(
            self.ring,
            &keys,
            |k| bar.label(k),
            |k| bar.differential(k),
            Some(self.window.adams_min),
        )?)
    }
}

/// Homology of `M ⊗^L_A N` computed by the two-sided bar construction.
pub fn derived_tensor(
    alg: &DgaPresentation,
    m: &DgaModule,
    n: &DgaModule,
    w: &Window,
) -> Result<HomologyReport, BarError> {
    let bar = TwoSidedBar::new(alg, m, n)?;
    let total = bar.total(w)?;
    Ok(bigraded::homology(&total, w)?)
}

/// `𝟙 ⊗^L_A M`: pushforward along the augmentation.
pub fn pushforward_u(alg: &DgaPresentation, m: &DgaModule, w: &Window) -> Result<HomologyReport, BarError> {
    derived_tensor(alg, &DgaModule::trivial(alg), m, w)
}

/// `B(𝟙, A, 𝟙)` as a dg Hopf algebra on words of augmentation-ideal letters.
#[derive(Clone, Debug)]
pub struct BarHopf {
    alg: DgaPresentation,
    unit_module: DgaModule,
    letters: Vec<usize>,
}

impl BarHopf {
    pub fn new(alg: &DgaPresentation) -> Result<Self, BarError> {
        alg.validate()?;
        alg.check_strict_tate()?;
        Ok(BarHopf { unit_module: DgaModule::trivial(alg), letters: alg.reduced_basis(), alg: alg.clone() })
    }

    pub fn algebra(&self) -> &DgaPresentation {
        &self.alg
    }

    fn bar(&self) -> TwoSidedBar<'_> {
        TwoSidedBar { alg: &self.alg, left: &self.unit_module, right: &self.unit_module }
    }

    fn susp(&self, a: usize) -> i64 {
        self.alg.degree(a).coh - 1
    }

    fn word_degree(&self, w: &[usize]) -> i64 {
        w.iter().map(|a| self.susp(*a)).sum()
    }

    fn shuffle(&self, u: &[usize], v: &[usize]) -> Lin<Vec<usize>> {
        if u.is_empty() {
            return single(v.to_vec());
        }
        if v.is_empty() {
            return single(u.to_vec());
        }
        let mut out = Lin::new();
        for (w, c) in self.shuffle(&u[1..], v) {
            let mut x = vec![u[0]];
            x.extend(w);
            add_term(&mut out, x, c);
        }
        let s = koszul(self.susp(v[0]), self.word_degree(u));
        for (w, c) in self.shuffle(u, &v[1..]) {
            let mut x = vec![v[0]];
            x.extend(w);
            add_term(&mut out, x, c * &s);
        }
        out
    }

    /// Total degree of the word's bidegree, for use by callers.
    pub fn letters(&self) -> &[usize] {
        &self.letters
    }
}

impl Bialgebra for BarHopf {
    type Key = Vec<usize>;

    fn ring(&self) -> CoefficientRing {
        self.alg.ring
    }

    fn degree(&self, k: &Vec<usize>) -> Bidegree {
        let adams = k.iter().map(|a| self.alg.degree(*a).adams).sum();
        Bidegree::new(adams, self.word_degree(k))
    }

    fn unit(&self) -> Vec<usize> {
        Vec::new()
    }

    fn counit(&self, k: &Vec<usize>) -> BigInt {
        if k.is_empty() {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    }

    fn product(&self, a: &Vec<usize>, b: &Vec<usize>) -> Lin<Vec<usize>> {
        reduce(self.alg.ring, self.shuffle(a, b))
    }

    fn coproduct(&self, k: &Vec<usize>) -> Tensor2<Vec<usize>> {
        (0..=k.len()).map(|i| ((k[..i].to_vec(), k[i..].to_vec()), BigInt::one())).collect()
    }

    fn antipode(&self, k: &Vec<usize>) -> Option<Lin<Vec<usize>>> {
        let mut odd = k.len() % 2 == 1;
        for i in 0..k.len() {
            for j in i + 1..k.len() {
                odd ^= (self.susp(k[i]) * self.susp(k[j])).rem_euclid(2) == 1;
            }
        }
        let rev: Vec<usize> = k.iter().rev().copied().collect();
        Some(reduce(self.alg.ring, [(rev, sign(odd))].into_iter().collect()))
    }

    fn differential(&self, k: &Vec<usize>) -> Lin<Vec<usize>> {
        let w = BarWord { left: 0, letters: k.clone(), right: 0 };
        self.bar().differential(&w).into_iter().map(|(w, c)| (w.letters, c)).collect()
    }

    fn basis(&self, adams_min: i64, adams_max: i64, _radius: usize) -> Vec<Vec<usize>> {
        let max = (-adams_min).max(0) as usize;
        self.bar().words(adams_min, adams_max, max).into_iter().map(|w| w.letters).collect()
    }

    fn label(&self, k: &Vec<usize>) -> String {
        let names: Vec<&str> = k.iter().map(|a| self.alg.name(*a)).collect();
        format!("[{}]", names.join("|"))
    }

    fn adams_floor(&self) -> Option<i64> {
        self.alg.adams_floor
    }
}

/// The bar bialgebra with its axiom certificate over the Adams range of `w`.
pub fn fundamental_group_bialgebra(alg: &DgaPresentation, w: &Window) -> Result<(BarHopf, AxiomReport), BarError> {
    let h = BarHopf::new(alg)?;
    if !alg.is_known(w.adams_min) {
        return Err(BarError::WindowExceedsSupport(w.adams_min));
    }
    let report = check_axioms(&h, w.adams_min, 0);
    Ok((h, report))
}

/// Homology of `B(𝟙, A, 𝟙)` over `w`.
pub fn bar_homology(alg: &DgaPresentation, w: &Window, max_column: usize) -> Result<HomologyReport, BarError> {
    let unit = DgaModule::trivial(alg);
    let bar = TwoSidedBar::new(alg, &unit, &unit)?;
    let total = bar.bicomplex(w, max_column)?.totalize(&bar)?;
    Ok(bigraded::homology(&total, w)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::bialgebra_complex;
    use crate::linalg::AbGroupReport;

    const Q: CoefficientRing = CoefficientRing::Rationals;
    const Z: CoefficientRing = CoefficientRing::Integers;

    fn win(a0: i64, c0: i64, c1: i64) -> Window {
        Window::new(a0, 0, c0, c1).unwrap()
    }

    #[test]
    fn unit_algebra_bar_is_column_zero() {
        let a = DgaPresentation::unit_algebra(Z);
        let unit = DgaModule::trivial(&a);
        let bar = TwoSidedBar::new(&a, &unit, &unit).unwrap();
        let b = bar.bicomplex(&win(-3, -3, 3), 3).unwrap();
        assert_eq!(b.columns[0].total_dim(), 1);
        assert!(b.columns[1..].iter().all(BigradedComplex::is_zero));
        let h = bar_homology(&a, &win(-3, -3, 3), 3).unwrap();
        assert_eq!(h.groups.len(), 1);
    }

    #[test]
    fn p1_columns_and_totals() {
        let a = DgaPresentation::p1_minus_three_points(Q);
        let unit = DgaModule::trivial(&a);
        let bar = TwoSidedBar::new(&a, &unit, &unit).unwrap();
        let w = win(-3, -2, 4);
        let b = bar.bicomplex(&w, 3).unwrap();
        b.check_invariants().unwrap();
        for s in 1..=3i64 {
            assert_eq!(b.columns[s as usize].dim(Bidegree::new(-s, s)), 1 << s);
            assert!(b.horizontal[s as usize].values().all(ExactMatrix::is_zero));
        }
        let t = b.totalize(&bar).unwrap();
        assert_eq!(t.dim(Bidegree::new(-2, 0)), 4);
    }

    #[test]
    fn truncated_polynomial_columns() {
        let a = DgaPresentation::projective_space(Q, 1);
        let unit = DgaModule::trivial(&a);
        let bar = TwoSidedBar::new(&a, &unit, &unit).unwrap();
        let b = bar.bicomplex(&win(-4, -2, 10), 4).unwrap();
        for s in 1..=4i64 {
            assert_eq!(b.columns[s as usize].total_dim(), 1);
            assert_eq!(b.columns[s as usize].dim(Bidegree::new(-s, 2 * s)), 1);
        }
        assert!(b.horizontal.iter().all(|m| m.values().all(ExactMatrix::is_zero)));
    }

    #[test]
    fn window_not_closed() {
        let a = DgaPresentation::p1_minus_three_points(Q);
        let unit = DgaModule::trivial(&a);
        let bar = TwoSidedBar::new(&a, &unit, &unit).unwrap();
        assert_eq!(
            bar.bicomplex(&win(-3, 0, 3), 2).unwrap_err(),
            BarError::WindowNotClosed { needed: 3, given: 2 }
        );
    }

    #[test]
    fn affine_line_homology() {
        let a = DgaPresentation::affine_line(Q, 4);
        let h = bar_homology(&a, &Window::new(-4, 0, 0, 8).unwrap(), 4).unwrap();
        let expected: BTreeMap<Bidegree, AbGroupReport> =
            [(Bidegree::ZERO, AbGroupReport::free(1)), (Bidegree::new(-1, 1), AbGroupReport::free(1))]
                .into_iter()
                .collect();
        assert_eq!(h.groups, expected);
    }

    #[test]
    fn free_module_resolves_unit() {
        for a in [DgaPresentation::projective_space(Z, 2), DgaPresentation::p1_minus_three_points(Z)] {
            let h = derived_tensor(&a, &DgaModule::free(&a), &DgaModule::trivial(&a), &win(-4, -3, 9)).unwrap();
            assert_eq!(h.groups.len(), 1, "{:?}", h.groups);
            assert_eq!(h.get(Bidegree::ZERO), AbGroupReport::free(1));
        }
    }

    #[test]
    fn two_sided_bar_squares_to_zero() {
        let a = DgaPresentation::projective_space(Z, 2);
        let m = DgaModule::free_shifted(&a, Bidegree::new(-1, 1)).direct_sum(&DgaModule::free(&a));
        let n = DgaModule::free_shifted(&a, Bidegree::new(0, 3));
        let bar = TwoSidedBar::new(&a, &m, &n).unwrap();
        let b = bar.bicomplex(&win(-4, -5, 12), 5).unwrap();
        b.check_invariants().unwrap();
        b.totalize(&bar).unwrap();
    }

    #[test]
    fn bar_hopf_axioms() {
        for a in [
            DgaPresentation::p1_minus_three_points(Z),
            DgaPresentation::projective_space(Z, 2),
            DgaPresentation::affine_line(Z, 3),
        ] {
            let (_, report) = fundamental_group_bialgebra(&a, &win(-3, 0, 0)).unwrap();
            assert!(report.all_hold(), "{report:?}");
        }
    }

    #[test]
    fn bar_hopf_complex_matches_total() {
        let a = DgaPresentation::projective_space(Z, 2);
        let h = BarHopf::new(&a).unwrap();
        let w = win(-4, -2, 9);
        let c = bialgebra_complex(&h, -4, 0, 0).unwrap();
        let direct = bar_homology(&a, &w, 4).unwrap();
        assert_eq!(bigraded::homology(&c, &w).unwrap().groups, direct.groups);
    }
}
