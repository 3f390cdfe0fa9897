//! Exact matrix algebra over ℤ, ℚ and ℤ/p.
//!
//! Matrices are stored column-sparse with sorted row indices. Everything that
//! needs transforms (Smith normal form, kernels, span membership) runs on a
//! dense copy; rank and invariant-factor queries on large sparse matrices first
//! eliminate unit pivots sparsely and only densify the residual block.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Matrices with both sides at most this size go straight to the dense path.
const DENSE_CUTOFF: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("composite of differentials is nonzero")]
    CompositeNonzero,
    #[error("operation requires integer coefficients, got {0}")]
    RequiresIntegers(CoefficientRing),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("mixed coefficient rings {0} and {1}")]
    RingMismatch(CoefficientRing, CoefficientRing),
    #[error("image is not a direct summand")]
    NotDirectSummand,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CoefficientRing {
    Integers,
    Rationals,
    PrimeField(u64),
}

impl CoefficientRing {
    pub fn prime_field(p: u64) -> Result<Self, LinalgError> {
        if is_prime(p) {
            Ok(CoefficientRing::PrimeField(p))
        } else {
            Err(LinalgError::NotPrime(p))
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, CoefficientRing::Integers)
    }

    /// Canonical representative of `x` in this ring.
    pub fn reduce(&self, x: &BigInt) -> BigInt {
        match self {
            CoefficientRing::PrimeField(p) => x.mod_floor(&BigInt::from(*p)),
            _ => x.clone(),
        }
    }

    pub fn is_zero(&self, x: &BigInt) -> bool {
        self.reduce(x).is_zero()
    }

    pub fn eq(&self, a: &BigInt, b: &BigInt) -> bool {
        self.is_zero(&(a - b))
    }

    fn mode(&self) -> Mode {
        match self {
            CoefficientRing::PrimeField(p) => Mode::Field(BigInt::from(*p)),
            _ => Mode::Integers,
        }
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Integers => write!(f, "Z"),
            CoefficientRing::Rationals => write!(f, "Q"),
            CoefficientRing::PrimeField(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for CoefficientRing {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Z" => Ok(CoefficientRing::Integers),
            "Q" => Ok(CoefficientRing::Rationals),
            _ => {
                let p = s
                    .strip_prefix("Fp:")
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| format!("unknown ring `{s}` (expected Z, Q or Fp:<p>)"))?;
                CoefficientRing::prime_field(p).map_err(|e| e.to_string())
            }
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Arithmetic mode for elimination: ℚ runs through the integer path since
/// matrix entries are integral and unimodular transforms are invertible over ℚ.
#[derive(Clone, Debug)]
enum Mode {
    Integers,
    Field(BigInt),
}

impl Mode {
    fn norm(&self, x: BigInt) -> BigInt {
        match self {
            Mode::Integers => x,
            Mode::Field(p) => x.mod_floor(p),
        }
    }

    fn is_unit(&self, x: &BigInt) -> bool {
        match self {
            Mode::Integers => x.abs().is_one(),
            Mode::Field(_) => !x.is_zero(),
        }
    }

    fn inverse(&self, x: &BigInt) -> BigInt {
        match self {
            Mode::Integers => x.clone(),
            Mode::Field(p) => x.modpow(&(p - 2u32), p),
        }
    }

    /// Quotient `q` with `a - q*b` as small as the ring allows.
    fn quotient(&self, a: &BigInt, b: &BigInt) -> BigInt {
        match self {
            Mode::Integers => a.div_floor(b),
            Mode::Field(p) => (a * self.inverse(b)).mod_floor(p),
        }
    }

    fn divides(&self, d: &BigInt, x: &BigInt) -> bool {
        match self {
            Mode::Integers => x.is_multiple_of(d),
            Mode::Field(_) => true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    ring: CoefficientRing,
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, BigInt)>>,
}

impl ExactMatrix {
    pub fn zeros(ring: CoefficientRing, rows: usize, cols: usize) -> Self {
        ExactMatrix { ring, rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn identity(ring: CoefficientRing, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.columns[i].push((i, BigInt::one()));
        }
        m
    }

    /// Builds a matrix from `(row, col, value)` triples; repeated coordinates add.
    pub fn from_triplets<I>(ring: CoefficientRing, rows: usize, cols: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, BigInt)>,
    {
        let mut acc: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); cols];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            *acc[c].entry(r).or_insert_with(BigInt::zero) += v;
        }
        let columns = acc
            .into_iter()
            .map(|col| {
                col.into_iter()
                    .map(|(r, v)| (r, ring.reduce(&v)))
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        ExactMatrix { ring, rows, cols, columns }
    }

    pub fn from_dense(ring: CoefficientRing, rows: usize, cols: usize, data: &[Vec<BigInt>]) -> Self {
        let triplets = data.iter().enumerate().flat_map(|(r, row)| {
            row.iter().enumerate().map(move |(c, v)| (r, c, v.clone()))
        });
        Self::from_triplets(ring, rows, cols, triplets)
    }

    pub fn from_i64(ring: CoefficientRing, data: &[&[i64]]) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        let dense: Vec<Vec<BigInt>> =
            data.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
        Self::from_dense(ring, rows, cols, &dense)
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn column(&self, c: usize) -> &[(usize, BigInt)] {
        &self.columns[c]
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.columns[c]
            .binary_search_by_key(&r, |(i, _)| *i)
            .map(|k| self.columns[c][k].1.clone())
            .unwrap_or_else(|_| BigInt::zero())
    }

    /// Iterates over nonzero entries as `(row, col, value)` in column-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (r, c, v) in self.entries() {
            d[r][c] = v.clone();
        }
        d
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(
            self.ring,
            self.cols,
            self.rows,
            self.entries().map(|(r, c, v)| (c, r, v.clone())),
        )
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        Self::from_triplets(self.ring, self.rows, self.cols, self.entries().map(|(r, c, v)| (r, c, v * s)))
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_ring(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let triplets = self
            .entries()
            .chain(other.entries())
            .map(|(r, c, v)| (r, c, v.clone()));
        Ok(Self::from_triplets(self.ring, self.rows, self.cols, triplets))
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_ring(other)?;
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut triplets = Vec::new();
        for (c, col) in other.columns.iter().enumerate() {
            let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (k, w) in col {
                for (r, v) in &self.columns[*k] {
                    *acc.entry(*r).or_insert_with(BigInt::zero) += v * w;
                }
            }
            triplets.extend(acc.into_iter().map(|(r, v)| (r, c, v)));
        }
        Ok(Self::from_triplets(self.ring, self.rows, other.cols, triplets))
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.cols);
        let mut y = vec![BigInt::zero(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            if x[c].is_zero() {
                continue;
            }
            for (r, v) in col {
                y[*r] += v * &x[c];
            }
        }
        y.into_iter().map(|v| self.ring.reduce(&v)).collect()
    }

    /// Keeps the listed rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let row_pos: BTreeMap<usize, usize> = rows.iter().enumerate().map(|(i, r)| (*r, i)).collect();
        let mut triplets = Vec::new();
        for (j, &c) in cols.iter().enumerate() {
            for (r, v) in &self.columns[c] {
                if let Some(&i) = row_pos.get(r) {
                    triplets.push((i, j, v.clone()));
                }
            }
        }
        Self::from_triplets(self.ring, rows.len(), cols.len(), triplets)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_ring(other)?;
        if self.rows != other.rows {
            return Err(LinalgError::DimensionMismatch("hcat row counts differ".into()));
        }
        let mut columns = self.columns.clone();
        columns.extend(other.columns.iter().cloned());
        Ok(ExactMatrix { ring: self.ring, rows: self.rows, cols: self.cols + other.cols, columns })
    }

    pub fn from_columns(ring: CoefficientRing, rows: usize, cols: &[Vec<BigInt>]) -> Self {
        let triplets = cols.iter().enumerate().flat_map(|(c, col)| {
            col.iter().enumerate().map(move |(r, v)| (r, c, v.clone()))
        });
        Self::from_triplets(ring, rows, cols.len(), triplets)
    }

    fn check_ring(&self, other: &Self) -> Result<(), LinalgError> {
        if self.ring != other.ring {
            return Err(LinalgError::RingMismatch(self.ring, other.ring));
        }
        Ok(())
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Smith normal form `left · m · right = diag(factors)` over ℤ.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub factors: Vec<BigInt>,
    pub left: ExactMatrix,
    pub right: ExactMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }
}

/// Free rank plus torsion invariant factors of a finitely generated group.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AbGroupReport {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbGroupReport {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        AbGroupReport { free_rank: rank, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Direct sum, returned in invariant-factor form.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut all = self.torsion.clone();
        all.extend(other.torsion.iter().cloned());
        AbGroupReport { free_rank: self.free_rank + other.free_rank, torsion: canonical_torsion(&all) }
    }
}

impl fmt::Display for AbGroupReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "Z".to_string() } else { format!("Z^{}", self.free_rank) });
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Rewrites an arbitrary list of cyclic orders as the invariant-factor chain
/// `d₁ | d₂ | …` of their direct sum (entries equal to 1 dropped).
pub fn canonical_torsion(orders: &[BigInt]) -> Vec<BigInt> {
    let mut by_prime: BTreeMap<BigInt, Vec<BigInt>> = BTreeMap::new();
    for n in orders {
        for (p, e) in factorize(&n.abs()) {
            by_prime.entry(p.clone()).or_default().push(num_traits::pow(p, e));
        }
    }
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![BigInt::one(); len];
    for powers in by_prime.values_mut() {
        powers.sort();
        let offset = len - powers.len();
        for (i, q) in powers.iter().enumerate() {
            out[offset + i] *= q;
        }
    }
    out.retain(|d| !d.is_one());
    out
}

fn factorize(n: &BigInt) -> Vec<(BigInt, usize)> {
    let mut out = Vec::new();
    let mut n = n.clone();
    let mut d = BigInt::from(2);
    while &d * &d <= n {
        let mut e = 0;
        while n.is_multiple_of(&d) {
            n /= &d;
            e += 1;
        }
        if e > 0 {
            out.push((d.clone(), e));
        }
        d += 1;
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

struct DenseSnf {
    diag: Vec<BigInt>,
    u: Vec<Vec<BigInt>>,
    u_inv: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
    v_inv: Vec<Vec<BigInt>>,
}

fn identity_dense(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

/// Dense Smith reduction. Pivot: smallest nonzero absolute value, ties broken
/// by lowest (row, col). Transforms are tracked only when `track` is set.
fn snf_dense(mode: &Mode, mut a: Vec<Vec<BigInt>>, rows: usize, cols: usize, track: bool) -> DenseSnf {
    let (mut u, mut u_inv, mut v, mut v_inv) = if track {
        (identity_dense(rows), identity_dense(rows), identity_dense(cols), identity_dense(cols))
    } else {
        (Vec::new(), Vec::new(), Vec::new(), Vec::new())
    };
    for row in a.iter_mut() {
        for x in row.iter_mut() {
            *x = mode.norm(std::mem::take(x));
        }
    }

    // row_i += c * row_t
    let row_add = |a: &mut Vec<Vec<BigInt>>, u: &mut Vec<Vec<BigInt>>, u_inv: &mut Vec<Vec<BigInt>>, i: usize, t: usize, c: &BigInt| {
        for j in 0..cols {
            let delta = c * &a[t][j];
            if !delta.is_zero() {
                a[i][j] = mode.norm(&a[i][j] + delta);
            }
        }
        if track {
            for j in 0..rows {
                let delta = c * &u[t][j];
                u[i][j] = mode.norm(&u[i][j] + delta);
            }
            for r in 0..rows {
                let delta = c * &u_inv[r][i];
                u_inv[r][t] = mode.norm(&u_inv[r][t] - delta);
            }
        }
    };
    // col_j += c * col_t
    let col_add = |a: &mut Vec<Vec<BigInt>>, v: &mut Vec<Vec<BigInt>>, v_inv: &mut Vec<Vec<BigInt>>, j: usize, t: usize, c: &BigInt| {
        for r in 0..rows {
            let delta = c * &a[r][t];
            if !delta.is_zero() {
                a[r][j] = mode.norm(&a[r][j] + delta);
            }
        }
        if track {
            for r in 0..cols {
                let delta = c * &v[r][t];
                v[r][j] = mode.norm(&v[r][j] + delta);
            }
            for k in 0..cols {
                let delta = c * &v_inv[j][k];
                v_inv[t][k] = mode.norm(&v_inv[t][k] - delta);
            }
        }
    };

    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // global pivot search in the trailing block
        let mut best: Option<(BigInt, usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() {
                    let m = a[i][j].abs();
                    if best.as_ref().is_none_or(|(b, _, _)| m < *b) {
                        best = Some((m, i, j));
                    }
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        swap_rows(&mut a, &mut u, &mut u_inv, t, pi, track);
        swap_cols(&mut a, &mut v, &mut v_inv, t, pj, track);

        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = mode.quotient(&a[i][t], &a[t][t]);
                    row_add(&mut a, &mut u, &mut u_inv, i, t, &(-q));
                    if !a[i][t].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = mode.quotient(&a[t][j], &a[t][t]);
                    col_add(&mut a, &mut v, &mut v_inv, j, t, &(-q));
                    if !a[t][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                // move the smallest remainder in row/column t onto the pivot
                let mut best: Option<(BigInt, usize, usize)> = None;
                for i in t + 1..rows {
                    if !a[i][t].is_zero() {
                        let m = a[i][t].abs();
                        if best.as_ref().is_none_or(|(b, _, _)| m < *b) {
                            best = Some((m, i, t));
                        }
                    }
                }
                for j in t + 1..cols {
                    if !a[t][j].is_zero() {
                        let m = a[t][j].abs();
                        if best.as_ref().is_none_or(|(b, _, _)| m < *b) {
                            best = Some((m, t, j));
                        }
                    }
                }
                if let Some((_, i, j)) = best {
                    if i != t {
                        swap_rows(&mut a, &mut u, &mut u_inv, t, i, track);
                    } else {
                        swap_cols(&mut a, &mut v, &mut v_inv, t, j, track);
                    }
                }
                continue;
            }
            // divisibility of the trailing block by the pivot
            let mut offender = None;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !mode.divides(&a[t][t], &a[i][j]) {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => row_add(&mut a, &mut u, &mut u_inv, t, i, &BigInt::one()),
                None => break,
            }
        }

        // normalize the pivot to a positive integer / to 1 over a field
        let unit = match mode {
            Mode::Integers if a[t][t].is_negative() => Some(-BigInt::one()),
            Mode::Field(_) if !a[t][t].is_one() => Some(mode.inverse(&a[t][t])),
            _ => None,
        };
        if let Some(s) = unit {
            let s_inv = mode.inverse(&s);
            for j in 0..cols {
                a[t][j] = mode.norm(&a[t][j] * &s);
            }
            if track {
                for j in 0..rows {
                    u[t][j] = mode.norm(&u[t][j] * &s);
                }
                for r in 0..rows {
                    u_inv[r][t] = mode.norm(&u_inv[r][t] * &s_inv);
                }
            }
        }
        diag.push(a[t][t].clone());
        t += 1;
    }
    DenseSnf { diag, u, u_inv, v, v_inv }
}

fn swap_rows(a: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], u_inv: &mut [Vec<BigInt>], i: usize, j: usize, track: bool) {
    if i == j {
        return;
    }
    a.swap(i, j);
    if track {
        u.swap(i, j);
        for row in u_inv.iter_mut() {
            row.swap(i, j);
        }
    }
}

fn swap_cols(a: &mut [Vec<BigInt>], v: &mut [Vec<BigInt>], v_inv: &mut [Vec<BigInt>], i: usize, j: usize, track: bool) {
    if i == j {
        return;
    }
    for row in a.iter_mut() {
        row.swap(i, j);
    }
    if track {
        for row in v.iter_mut() {
            row.swap(i, j);
        }
        v_inv.swap(i, j);
    }
}

fn dense_to_matrix(ring: CoefficientRing, d: &[Vec<BigInt>], rows: usize, cols: usize) -> ExactMatrix {
    ExactMatrix::from_dense(ring, rows, cols, d)
}

/// Smith normal form with unimodular transforms. Integers only; over a field
/// use [`rank`].
pub fn smith_normal_form(m: &ExactMatrix) -> Result<SmithForm, LinalgError> {
    if m.ring != CoefficientRing::Integers {
        return Err(LinalgError::RequiresIntegers(m.ring));
    }
    let snf = snf_dense(&Mode::Integers, m.to_dense(), m.rows, m.cols, true);
    Ok(SmithForm {
        factors: snf.diag,
        left: dense_to_matrix(m.ring, &snf.u, m.rows, m.rows),
        right: dense_to_matrix(m.ring, &snf.v, m.cols, m.cols),
    })
}

/// Sparse elimination of unit pivots. Returns the number of pivots removed and
/// the residual block (dense) whose invariant factors complete the list.
fn eliminate_units(m: &ExactMatrix) -> (usize, Vec<Vec<BigInt>>, usize, usize) {
    let mode = m.ring.mode();
    let mut rows: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); m.rows];
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.cols];
    for (r, c, v) in m.entries() {
        rows[r].insert(c, v.clone());
        col_rows[c].insert(r);
    }
    let mut live_rows: BTreeSet<usize> = (0..m.rows).collect();
    let mut live_cols: BTreeSet<usize> = (0..m.cols).collect();
    let mut pivots = 0;
    for c in 0..m.cols {
        let pivot_row = col_rows[c]
            .iter()
            .filter(|r| mode.is_unit(&rows[**r][&c]))
            .min_by_key(|r| (rows[**r].len(), **r))
            .copied();
        let Some(p) = pivot_row else { continue };
        let inv = mode.inverse(&rows[p][&c]);
        let pivot_entries: Vec<(usize, BigInt)> = rows[p].iter().map(|(k, v)| (*k, v.clone())).collect();
        let others: Vec<usize> = col_rows[c].iter().copied().filter(|r| *r != p).collect();
        for r in others {
            let factor = mode.norm(&rows[r][&c] * &inv);
            for (k, v) in &pivot_entries {
                let entry = rows[r].entry(*k).or_insert_with(BigInt::zero);
                *entry = mode.norm(&*entry - &factor * v);
                if entry.is_zero() {
                    rows[r].remove(k);
                    col_rows[*k].remove(&r);
                } else {
                    col_rows[*k].insert(r);
                }
            }
        }
        for (k, _) in &pivot_entries {
            col_rows[*k].remove(&p);
        }
        rows[p].clear();
        live_rows.remove(&p);
        live_cols.remove(&c);
        pivots += 1;
    }
    let rr: Vec<usize> = live_rows.into_iter().filter(|r| !rows[*r].is_empty()).collect();
    let cc: Vec<usize> = live_cols.into_iter().filter(|c| !col_rows[*c].is_empty()).collect();
    let col_pos: BTreeMap<usize, usize> = cc.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    let mut dense = vec![vec![BigInt::zero(); cc.len()]; rr.len()];
    for (i, r) in rr.iter().enumerate() {
        for (c, v) in &rows[*r] {
            dense[i][col_pos[c]] = v.clone();
        }
    }
    (pivots, dense, rr.len(), cc.len())
}

/// Nonzero invariant factors (including units) in divisibility order. Over a
/// field every factor is 1 and the length is the rank.
pub fn invariant_factors(m: &ExactMatrix) -> Vec<BigInt> {
    let mode = m.ring.mode();
    if m.rows <= DENSE_CUTOFF && m.cols <= DENSE_CUTOFF {
        return snf_dense(&mode, m.to_dense(), m.rows, m.cols, false).diag;
    }
    let (pivots, residual, r, c) = eliminate_units(m);
    let mut out = vec![BigInt::one(); pivots];
    out.extend(snf_dense(&mode, residual, r, c, false).diag);
    out
}

pub fn rank(m: &ExactMatrix) -> usize {
    invariant_factors(m).len()
}

/// `ker(d_out) / im(d_in)` for `d_in: X → Y`, `d_out: Y → Z`.
pub fn homology_at(d_in: &ExactMatrix, d_out: &ExactMatrix) -> Result<AbGroupReport, LinalgError> {
    d_in.check_ring(d_out)?;
    if d_in.rows != d_out.cols {
        return Err(LinalgError::DimensionMismatch(format!(
            "d_in lands in dimension {} but d_out starts from {}",
            d_in.rows, d_out.cols
        )));
    }
    if !d_out.mul(d_in)?.is_zero() {
        return Err(LinalgError::CompositeNonzero);
    }
    let n = d_out.cols;
    let rank_out = rank(d_out);
    let factors_in = invariant_factors(d_in);
    let free_rank = n - rank_out - factors_in.len();
    let torsion = if d_in.ring == CoefficientRing::Integers {
        factors_in.into_iter().filter(|d| !d.is_one()).collect()
    } else {
        Vec::new()
    };
    Ok(AbGroupReport { free_rank, torsion })
}

/// Basis of the kernel (saturated over ℤ), as column vectors.
pub fn kernel_basis(m: &ExactMatrix) -> Vec<Vec<BigInt>> {
    let snf = snf_dense(&m.ring.mode(), m.to_dense(), m.rows, m.cols, true);
    let r = snf.diag.len();
    (r..m.cols).map(|j| (0..m.cols).map(|i| snf.v[i][j].clone()).collect()).collect()
}

/// Kernel basis together with the map taking kernel vectors to their
/// coordinates in that basis.
#[derive(Clone, Debug)]
pub struct Kernel {
    pub basis: Vec<Vec<BigInt>>,
    /// `coordinates · z` is the coordinate vector of a kernel element `z`.
    pub coordinates: ExactMatrix,
}

pub fn kernel(m: &ExactMatrix) -> Kernel {
    let snf = snf_dense(&m.ring.mode(), m.to_dense(), m.rows, m.cols, true);
    let r = snf.diag.len();
    let basis = (r..m.cols).map(|j| (0..m.cols).map(|i| snf.v[i][j].clone()).collect()).collect();
    let rows: Vec<Vec<BigInt>> = (r..m.cols).map(|i| snf.v_inv[i].clone()).collect();
    let coordinates = ExactMatrix::from_dense(m.ring, m.cols - r, m.cols, &rows);
    Kernel { basis, coordinates }
}

/// Whether `b` lies in the column span of `m` over the coefficient ring.
pub fn in_span(m: &ExactMatrix, b: &[BigInt]) -> bool {
    assert_eq!(b.len(), m.rows);
    let mode = m.ring.mode();
    let snf = snf_dense(&mode, m.to_dense(), m.rows, m.cols, true);
    let y: Vec<BigInt> = (0..m.rows)
        .map(|i| mode.norm((0..m.rows).map(|k| &snf.u[i][k] * &b[k]).sum()))
        .collect();
    let r = snf.diag.len();
    let divisible = match m.ring {
        CoefficientRing::Integers => (0..r).all(|i| y[i].is_multiple_of(&snf.diag[i])),
        _ => true,
    };
    divisible && y[r..].iter().all(Zero::is_zero)
}

/// A complement to the image of `m` together with the projection onto it.
#[derive(Clone, Debug)]
pub struct Quotient {
    /// Column `k` represents the `k`-th quotient basis vector in the ambient space.
    pub representatives: ExactMatrix,
    /// Row `k` gives the `k`-th quotient coordinate of an ambient vector.
    pub projection: ExactMatrix,
}

impl Quotient {
    pub fn len(&self) -> usize {
        self.representatives.cols
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Quotient coordinates of a sparse ambient vector.
    pub fn project_sparse(&self, v: &[(usize, BigInt)]) -> Vec<(usize, BigInt)> {
        let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (k, c) in v {
            for (r, p) in self.projection.column(*k) {
                *acc.entry(*r).or_insert_with(BigInt::zero) += c * p;
            }
        }
        let ring = self.projection.ring;
        acc.into_iter().map(|(r, c)| (r, ring.reduce(&c))).filter(|(_, c)| !c.is_zero()).collect()
    }
}

/// Quotient of the ambient space by the column span of `m`, which must be a
/// direct summand. Spans of signed coordinate vectors take a sparse fast path.
pub fn quotient_by_span(m: &ExactMatrix) -> Result<Quotient, LinalgError> {
    let ring = m.ring;
    let n = m.rows;
    let coordinate_span = (0..m.cols).all(|c| {
        let col = m.column(c);
        col.is_empty() || (col.len() == 1 && ring.mode().is_unit(&col[0].1))
    });
    if coordinate_span {
        let hit: BTreeSet<usize> = (0..m.cols).flat_map(|c| m.column(c).iter().map(|(r, _)| *r)).collect();
        let keep: Vec<usize> = (0..n).filter(|i| !hit.contains(i)).collect();
        let representatives =
            ExactMatrix::from_triplets(ring, n, keep.len(), keep.iter().enumerate().map(|(k, &i)| (i, k, BigInt::one())));
        let projection =
            ExactMatrix::from_triplets(ring, keep.len(), n, keep.iter().enumerate().map(|(k, &i)| (k, i, BigInt::one())));
        return Ok(Quotient { representatives, projection });
    }
    let mode = ring.mode();
    let snf = snf_dense(&mode, m.to_dense(), m.rows, m.cols, true);
    if ring == CoefficientRing::Integers && snf.diag.iter().any(|d| !d.is_one()) {
        return Err(LinalgError::NotDirectSummand);
    }
    let r = snf.diag.len();
    let reps: Vec<Vec<BigInt>> = (r..n).map(|j| (0..n).map(|i| snf.u_inv[i][j].clone()).collect()).collect();
    let representatives = ExactMatrix::from_columns(ring, n, &reps);
    let proj_rows: Vec<Vec<BigInt>> = (r..n).map(|i| snf.u[i].clone()).collect();
    let projection = ExactMatrix::from_dense(ring, n - r, n, &proj_rows);
    Ok(Quotient { representatives, projection })
}

/// A ℤ-basis of the column span of `m`.
pub fn image_basis(m: &ExactMatrix) -> Vec<Vec<BigInt>> {
    let snf = snf_dense(&m.ring.mode(), m.to_dense(), m.rows, m.cols, true);
    (0..snf.diag.len())
        .map(|j| (0..m.rows).map(|i| m.ring.reduce(&(&snf.u_inv[i][j] * &snf.diag[j]))).collect())
        .collect()
}

/// Coordinates of `b` (assumed in the span) with respect to an independent set of columns.
pub fn solve(m: &ExactMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    if m.ring == CoefficientRing::Rationals {
        // rational solutions need not be integral; callers only need integral ones here
        let z = ExactMatrix { ring: CoefficientRing::Integers, ..m.clone() };
        return solve(&z, b);
    }
    let mode = m.ring.mode();
    let snf = snf_dense(&mode, m.to_dense(), m.rows, m.cols, true);
    let y: Vec<BigInt> = (0..m.rows)
        .map(|i| mode.norm((0..m.rows).map(|k| &snf.u[i][k] * &b[k]).sum()))
        .collect();
    let r = snf.diag.len();
    if y[r..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    let mut z = vec![BigInt::zero(); m.cols];
    for i in 0..r {
        if !mode.divides(&snf.diag[i], &y[i]) {
            return None;
        }
        z[i] = match &mode {
            Mode::Integers => &y[i] / &snf.diag[i],
            Mode::Field(p) => (&y[i] * mode.inverse(&snf.diag[i])).mod_floor(p),
        };
    }
    Some((0..m.cols).map(|i| mode.norm((0..m.cols).map(|k| &snf.v[i][k] * &z[k]).sum())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(data: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_i64(CoefficientRing::Integers, data)
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn snf_identity() {
        let s = smith_normal_form(&z(&[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(s.factors, ints(&[1, 1]));
    }

    #[test]
    fn snf_two_by_two() {
        let m = z(&[&[2, 4], &[6, 8]]);
        let s = smith_normal_form(&m).unwrap();
        assert_eq!(s.factors, ints(&[2, 4]));
        let d = s.left.mul(&m).unwrap().mul(&s.right).unwrap();
        assert_eq!(d, z(&[&[2, 0], &[0, 4]]));
    }

    #[test]
    fn snf_zero_matrix() {
        let s = smith_normal_form(&ExactMatrix::zeros(CoefficientRing::Integers, 3, 2)).unwrap();
        assert!(s.factors.is_empty());
    }

    #[test]
    fn snf_rejects_fields() {
        let m = ExactMatrix::identity(CoefficientRing::Rationals, 2);
        assert!(matches!(smith_normal_form(&m), Err(LinalgError::RequiresIntegers(_))));
    }

    #[test]
    fn homology_zero_differentials() {
        let d_in = ExactMatrix::zeros(CoefficientRing::Integers, 1, 0);
        let d_out = ExactMatrix::zeros(CoefficientRing::Integers, 0, 1);
        assert_eq!(homology_at(&d_in, &d_out).unwrap(), AbGroupReport::free(1));
    }

    #[test]
    fn homology_cokernel_of_two() {
        let d_in = z(&[&[2]]);
        let d_out = ExactMatrix::zeros(CoefficientRing::Integers, 0, 1);
        let h = homology_at(&d_in, &d_out).unwrap();
        assert_eq!(h, AbGroupReport { free_rank: 0, torsion: ints(&[2]) });
    }

    #[test]
    fn homology_detects_nonzero_composite() {
        let d = z(&[&[1]]);
        assert_eq!(homology_at(&d, &d), Err(LinalgError::CompositeNonzero));
    }

    #[test]
    fn prime_field_parsing() {
        assert_eq!("Fp:5".parse::<CoefficientRing>().unwrap(), CoefficientRing::PrimeField(5));
        assert!("Fp:6".parse::<CoefficientRing>().is_err());
        assert!("R".parse::<CoefficientRing>().is_err());
    }

    #[test]
    fn canonical_torsion_merges() {
        assert_eq!(canonical_torsion(&ints(&[2, 3])), ints(&[6]));
        assert_eq!(canonical_torsion(&ints(&[2, 4, 1])), ints(&[2, 4]));
        assert_eq!(canonical_torsion(&ints(&[6, 4])), ints(&[2, 12]));
    }

    #[test]
    fn sparse_path_matches_dense() {
        // block diagonal with a 2-torsion block, large enough to take the sparse path
        let n = 80;
        let mut t = Vec::new();
        for i in 0..n - 1 {
            t.push((i, i, BigInt::one()));
            t.push((i, i + 1, BigInt::from(3)));
        }
        t.push((n - 1, n - 1, BigInt::from(2)));
        let m = ExactMatrix::from_triplets(CoefficientRing::Integers, n, n, t);
        let f = invariant_factors(&m);
        assert_eq!(f.len(), n);
        assert_eq!(f.last().unwrap(), &BigInt::from(2));
    }

    #[test]
    fn kernel_and_span() {
        let m = z(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.apply(v).iter().all(Zero::is_zero));
        }
        assert!(in_span(&z(&[&[2], &[0]]), &ints(&[4, 0])));
        assert!(!in_span(&z(&[&[2], &[0]]), &ints(&[3, 0])));
        let q = CoefficientRing::Rationals;
        assert!(in_span(&ExactMatrix::from_i64(q, &[&[2], &[0]]), &ints(&[3, 0])));
    }

    #[test]
    fn quotient_general_path() {
        let m = z(&[&[1], &[1]]);
        let q = quotient_by_span(&m).unwrap();
        assert_eq!(q.len(), 1);
        assert!(q.projection.apply(&ints(&[1, 1])).iter().all(Zero::is_zero));
        assert!(quotient_by_span(&z(&[&[2], &[0]])).is_err());
    }
}
