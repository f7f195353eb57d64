//! Partitions, the Turaev-basis pairing, and the Schur-basis model of the
//! positive skein algebra.
//!
//! The Schur side works in the orthonormal basis `Q_λ` with coefficients in
//! `Z[s^±1]`; products and coproducts go through Littlewood-Richardson
//! coefficients, and `A_m` enters through its hook expansion.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::polyring::LaurentPoly;

/// Weakly decreasing list of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("invalid partition part {0:?}")]
    BadPart(String),
    #[error("parts must be positive and weakly decreasing")]
    NotDecreasing,
}

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Sorts the parts and drops zeros.
    pub fn from_parts(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    /// Accepts only already-valid part lists.
    pub fn new(parts: Vec<u32>) -> Result<Self, PartitionError> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotDecreasing);
        }
        Ok(Partition(parts))
    }

    /// The hook `(a|b) = (a+1, 1^b)`.
    pub fn hook(a: u32, b: u32) -> Self {
        let mut parts = vec![a + 1];
        parts.extend(std::iter::repeat_n(1, b as usize));
        Partition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Young diagram containment.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(o, s)| o <= s)
    }

    /// Multiset union of parts.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Partition::from_parts(parts)
    }

    /// Multiplicities `m_k` for k = 1..=largest part.
    pub fn multiplicities(&self) -> Vec<u32> {
        let mut m = vec![0; self.part(0) as usize];
        for &p in &self.0 {
            m[p as usize - 1] += 1;
        }
        m
    }
}

/// Comma list `2,1`; the empty partition renders as `-`.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "-");
        }
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "-" || s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|p| {
                let p = p.trim();
                p.parse::<u32>().map_err(|_| PartitionError::BadPart(p.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts)
    }
}

/// All partitions of `n` in reverse lexicographic order.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Non-negative integer matrix with prescribed row and column sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContingencyMatrix {
    pub entries: Vec<Vec<u32>>,
}

impl ContingencyMatrix {
    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries.first().map_or(0, |r| r.len())
    }
}

/// The set of matrices with row sums `rows` and column sums `cols`.
pub fn contingency_matrices(rows: &Partition, cols: &Partition) -> Vec<ContingencyMatrix> {
    if rows.weight() != cols.weight() {
        return Vec::new();
    }
    let k = cols.len();
    let mut out = Vec::new();
    let mut remaining: Vec<u32> = cols.parts().to_vec();
    let mut entries: Vec<Vec<u32>> = Vec::new();

    fn fill_row(
        target: u32,
        j: usize,
        row: &mut Vec<u32>,
        remaining: &mut Vec<u32>,
        done: &mut dyn FnMut(&[u32], &mut Vec<u32>),
    ) {
        let k = remaining.len();
        if j == k {
            if target == 0 {
                done(row, remaining);
            }
            return;
        }
        for v in (0..=target.min(remaining[j])).rev() {
            row.push(v);
            remaining[j] -= v;
            fill_row(target - v, j + 1, row, remaining, done);
            remaining[j] += v;
            row.pop();
        }
    }

    fn go(
        i: usize,
        rows: &Partition,
        remaining: &mut Vec<u32>,
        entries: &mut Vec<Vec<u32>>,
        out: &mut Vec<ContingencyMatrix>,
    ) {
        if i == rows.len() {
            if remaining.iter().all(|&r| r == 0) {
                out.push(ContingencyMatrix { entries: entries.clone() });
            }
            return;
        }
        let mut row = Vec::with_capacity(remaining.len());
        fill_row(rows.part(i), 0, &mut row, remaining, &mut |r, rem| {
            entries.push(r.to_vec());
            go(i + 1, rows, rem, entries, out);
            entries.pop();
        });
    }

    if k == 0 && rows.is_empty() {
        return vec![ContingencyMatrix { entries: Vec::new() }];
    }
    go(0, rows, &mut remaining, &mut entries, &mut out);
    out
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `⟨m⟩`, the 2-graded ruling polynomial of `A_m A_{-m}`, with `⟨0⟩ = z^-2`.
pub fn bracket(m: u32) -> LaurentPoly {
    if m == 0 {
        return LaurentPoly::z(-2);
    }
    let mut out = LaurentPoly::zero();
    for lambda in partitions_of(m) {
        let ell = lambda.len() as u32;
        let mult = lambda.multiplicities();
        let mut arrangements = factorial(ell);
        for &mk in &mult {
            arrangements /= factorial(mk);
        }
        let prod: BigInt = lambda.parts().iter().map(|&p| BigInt::from(p)).product();
        out += &LaurentPoly::z(2 * (ell as i32 - 1)).scale(arrangements * prod);
    }
    out
}

/// `⟨A_λ, A_μ⟩` via the contingency-matrix sum.
pub fn turaev_inner(lambda: &Partition, mu: &Partition) -> LaurentPoly {
    if lambda.weight() != mu.weight() {
        return LaurentPoly::zero();
    }
    if lambda.is_empty() {
        return LaurentPoly::one();
    }
    let ell = lambda.len() as i32;
    let k = mu.len() as i32;
    let brackets: Vec<LaurentPoly> = (0..=lambda.part(0).max(mu.part(0))).map(bracket).collect();
    let mut sum = LaurentPoly::zero();
    for m in contingency_matrices(lambda, mu) {
        let mut term = LaurentPoly::one();
        for row in &m.entries {
            for &b in row {
                term = &term * &brackets[b as usize];
            }
        }
        sum += &term;
    }
    &sum * &LaurentPoly::z(2 * ell * k - ell - k)
}

type LrKey = (Partition, Partition, Partition);

fn lr_cache() -> &'static Mutex<HashMap<LrKey, u64>> {
    static CACHE: OnceLock<Mutex<HashMap<LrKey, u64>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Littlewood-Richardson coefficient `c^λ_{μν}`: the number of semistandard
/// skew tableaux of shape `λ/μ` and content `ν` (rows weakly increasing,
/// columns strictly increasing downward) whose right-to-left, top-to-bottom
/// reading word is a lattice word.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if mu.weight() + nu.weight() != lambda.weight() || !lambda.contains(mu) || !lambda.contains(nu) {
        return 0;
    }
    let key = (lambda.clone(), mu.clone(), nu.clone());
    if let Some(&v) = lr_cache().lock().unwrap().get(&key) {
        return v;
    }
    let v = count_lr_tableaux(lambda, mu, nu);
    lr_cache().lock().unwrap().insert(key, v);
    v
}

fn count_lr_tableaux(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    // cells in reading order: rows top to bottom, each right to left
    let mut cells = Vec::new();
    for r in 0..lambda.len() {
        for c in (mu.part(r)..lambda.part(r)).rev() {
            cells.push((r, c as usize));
        }
    }
    let rows = lambda.len();
    let width = lambda.part(0) as usize;
    let mut grid = vec![vec![0u32; width]; rows];
    let mut used = vec![0u32; nu.len()];
    fn go(
        idx: usize,
        cells: &[(usize, usize)],
        grid: &mut Vec<Vec<u32>>,
        used: &mut Vec<u32>,
        lambda: &Partition,
        mu: &Partition,
        nu: &Partition,
    ) -> u64 {
        if idx == cells.len() {
            return 1;
        }
        let (r, c) = cells[idx];
        // row weakly increasing: value <= right neighbour (already filled)
        let hi = if c + 1 < lambda.part(r) as usize { grid[r][c + 1] } else { u32::MAX };
        // column strictly increasing: value > cell above, if it is in the skew shape
        let lo = if r > 0 && c >= mu.part(r - 1) as usize { grid[r - 1][c] + 1 } else { 1 };
        let mut total = 0;
        for v in lo..=hi.min(nu.len() as u32) {
            let i = (v - 1) as usize;
            if used[i] >= nu.part(i) {
                continue;
            }
            // lattice condition on the reading word prefix
            if i > 0 && used[i] + 1 > used[i - 1] {
                continue;
            }
            used[i] += 1;
            grid[r][c] = v;
            total += go(idx + 1, cells, grid, used, lambda, mu, nu);
            grid[r][c] = 0;
            used[i] -= 1;
        }
        total
    }
    go(0, &cells, &mut grid, &mut used, lambda, mu, nu)
}

/// Finite combination of `Q_λ` with `Z[s^±1]` coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SchurVector {
    terms: BTreeMap<Partition, LaurentPoly>,
}

/// Element of `C+ ⊗ C+` in the basis `Q_μ ⊗ Q_ν`.
pub type SchurTensor = BTreeMap<(Partition, Partition), LaurentPoly>;

impl SchurVector {
    pub fn zero() -> Self {
        SchurVector::default()
    }

    /// `c · Q_λ`.
    pub fn basis(lambda: Partition, c: LaurentPoly) -> Self {
        let mut v = SchurVector::zero();
        v.add_term(lambda, &c);
        v
    }

    pub fn unit() -> Self {
        Self::basis(Partition::empty(), LaurentPoly::one())
    }

    pub fn add_term(&mut self, lambda: Partition, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(lambda.clone()).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&lambda);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, lambda: &Partition) -> LaurentPoly {
        self.terms.get(lambda).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &SchurVector) -> SchurVector {
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.add_term(l.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: &LaurentPoly) -> SchurVector {
        let mut out = SchurVector::zero();
        for (l, v) in &self.terms {
            out.add_term(l.clone(), &(v * c));
        }
        out
    }
}

/// Product of `Q_μ` and `Q_ν` expanded by Littlewood-Richardson coefficients.
fn schur_basis_mul(mu: &Partition, nu: &Partition) -> Vec<(Partition, u64)> {
    let n = mu.weight() + nu.weight();
    partitions_of(n)
        .into_iter()
        .filter(|l| l.contains(mu) && l.contains(nu))
        .filter_map(|l| {
            let c = lr_coefficient(&l, mu, nu);
            (c > 0).then_some((l, c))
        })
        .collect()
}

pub fn schur_mul(f: &SchurVector, g: &SchurVector) -> SchurVector {
    let mut out = SchurVector::zero();
    for (mu, cf) in &f.terms {
        for (nu, cg) in &g.terms {
            let c = cf * cg;
            for (lambda, lr) in schur_basis_mul(mu, nu) {
                out.add_term(lambda, &c.scale(lr));
            }
        }
    }
    out
}

/// `A_m = Σ_{a+b=m-1} (-1)^b s^(a-b) Q_(a|b)`.
pub fn hook_expand_a(m: u32) -> SchurVector {
    assert!(m >= 1, "A_m needs m >= 1");
    let mut out = SchurVector::zero();
    for b in 0..m {
        let a = m - 1 - b;
        let sign = if b % 2 == 0 { 1 } else { -1 };
        out.add_term(Partition::hook(a, b), &LaurentPoly::s(a as i32 - b as i32).scale(sign));
    }
    out
}

/// `A_λ = A_{λ_1} ⋯ A_{λ_ℓ}` in the Schur basis.
pub fn a_to_schur(lambda: &Partition) -> SchurVector {
    lambda
        .parts()
        .iter()
        .fold(SchurVector::unit(), |acc, &m| schur_mul(&acc, &hook_expand_a(m)))
}

/// The inner product making `Q_λ` orthonormal.
pub fn schur_inner(f: &SchurVector, g: &SchurVector) -> LaurentPoly {
    f.terms
        .iter()
        .filter_map(|(l, c)| g.terms.get(l).map(|d| c * d))
        .sum()
}

/// `Δ(Q_λ) = Σ c^λ_{μν} Q_μ ⊗ Q_ν`, extended linearly.
pub fn schur_coproduct(f: &SchurVector) -> SchurTensor {
    let mut out = SchurTensor::new();
    for (lambda, c) in &f.terms {
        let n = lambda.weight();
        for k in 0..=n {
            for mu in partitions_of(k).into_iter().filter(|m| lambda.contains(m)) {
                for nu in partitions_of(n - k) {
                    let lr = lr_coefficient(lambda, &mu, &nu);
                    if lr > 0 {
                        tensor_add(&mut out, (mu.clone(), nu), &c.scale(lr));
                    }
                }
            }
        }
    }
    out
}

pub fn tensor_add(t: &mut SchurTensor, key: (Partition, Partition), c: &LaurentPoly) {
    if c.is_zero() {
        return;
    }
    let e = t.entry(key.clone()).or_default();
    *e += c;
    if e.is_zero() {
        t.remove(&key);
    }
}

/// `f ⊗ g`.
pub fn tensor_of(f: &SchurVector, g: &SchurVector) -> SchurTensor {
    let mut out = SchurTensor::new();
    for (l, c) in f.terms() {
        for (m, d) in g.terms() {
            tensor_add(&mut out, (l.clone(), m.clone()), &(c * d));
        }
    }
    out
}

/// Componentwise product `(a ⊗ b)(c ⊗ d) = ac ⊗ bd`.
pub fn tensor_mul(x: &SchurTensor, y: &SchurTensor) -> SchurTensor {
    let mut out = SchurTensor::new();
    for ((a, b), c1) in x {
        for ((c, d), c2) in y {
            let left = schur_basis_mul(a, c);
            let right = schur_basis_mul(b, d);
            let coeff = c1 * c2;
            for (l, n1) in &left {
                for (r, n2) in &right {
                    tensor_add(&mut out, (l.clone(), r.clone()), &coeff.scale(n1 * n2));
                }
            }
        }
    }
    out
}

pub fn tensor_inner(x: &SchurTensor, y: &SchurTensor) -> LaurentPoly {
    x.iter()
        .filter_map(|(k, c)| y.get(k).map(|d| c * d))
        .sum()
}
