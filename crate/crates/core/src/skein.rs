//! HOMFLY-PT invariant of annular fronts, expanded in the Turaev basis
//! `A_λ A_{-μ}` of the skein module of the annulus.
//!
//! `H` is computed by rewriting the front word until only products of basic
//! fronts remain, using
//!
//! * `H(L+) - H(L-) = z H(L0)` at a crossing,
//! * a positive (negative) kink contributes `a` (`a^-1`),
//! * a split unknot contributes `(a - a^-1)/z`,
//!
//! and Legendrian isotopies, which leave `H` unchanged except for type I
//! loops (one kink each).

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::front::{Dir, FrontError, FrontWord, Letter, Move, OrientedFront};
use crate::polyring::{LaurentPoly, Var};
use crate::rulings::{ruling_polynomial, RulingError};
use crate::symfun::{turaev_inner, Partition};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SkeinError {
    #[error("rewriting exceeded its step budget of {0}")]
    NonTermination(u64),
    #[error("internal rewrite failed: {0}")]
    Rewrite(#[from] FrontError),
    #[error(transparent)]
    Ruling(#[from] RulingError),
}

/// `A_λ A_{-μ}`: a product of basic fronts, up to reordering.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TuraevMonomial {
    pub pos: Partition,
    pub neg: Partition,
}

impl TuraevMonomial {
    pub fn new(pos: Partition, neg: Partition) -> Self {
        TuraevMonomial { pos, neg }
    }

    pub fn one() -> Self {
        Self::default()
    }

    /// Monomial of a stack of basic fronts `A_{k}` (negative `k` for `A_{-|k|}`).
    pub fn from_factors(factors: &[i32]) -> Self {
        let pos = factors.iter().filter(|&&k| k > 0).map(|&k| k as u32).collect();
        let neg = factors.iter().filter(|&&k| k < 0).map(|&k| k.unsigned_abs()).collect();
        TuraevMonomial { pos: Partition::from_parts(pos), neg: Partition::from_parts(neg) }
    }

    /// Homology class: signed winding `|λ| - |μ|`.
    pub fn grading(&self) -> i64 {
        self.pos.weight() as i64 - self.neg.weight() as i64
    }

    pub fn times(&self, other: &TuraevMonomial) -> TuraevMonomial {
        TuraevMonomial { pos: self.pos.union(&other.pos), neg: self.neg.union(&other.neg) }
    }
}

impl fmt::Display for TuraevMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pos.is_empty() && self.neg.is_empty() {
            return write!(f, "1");
        }
        if !self.pos.is_empty() {
            write!(f, "A{{{}}}", self.pos)?;
        }
        if !self.neg.is_empty() {
            write!(f, "A{{-{}}}", self.neg)?;
        }
        Ok(())
    }
}

/// An element of the skein module: Turaev monomials with coefficients in `a, z`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SkeinElement {
    terms: BTreeMap<TuraevMonomial, LaurentPoly>,
}

impl SkeinElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: TuraevMonomial) -> Self {
        let mut e = Self::zero();
        e.add_term(m, &LaurentPoly::one());
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TuraevMonomial, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &TuraevMonomial) -> LaurentPoly {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: TuraevMonomial, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&mut self, other: &SkeinElement) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c);
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> SkeinElement {
        let mut out = SkeinElement::zero();
        for (m, d) in &self.terms {
            out.add_term(m.clone(), &(c * d));
        }
        out
    }

    /// Multiplies by a monomial (stacks the corresponding basic fronts).
    pub fn times(&self, m: &TuraevMonomial) -> SkeinElement {
        SkeinElement { terms: self.terms.iter().map(|(k, c)| (k.times(m), c.clone())).collect() }
    }

    /// Distinct homology gradings present.
    pub fn gradings(&self) -> Vec<i64> {
        let mut g: Vec<i64> = self.terms.keys().map(TuraevMonomial::grading).collect();
        g.sort_unstable();
        g.dedup();
        g
    }

    /// Largest power of `a` in any coefficient.
    pub fn max_a_degree(&self) -> Option<i32> {
        self.terms.values().filter_map(|c| c.max_exp(Var::A)).max()
    }
}

impl fmt::Display for SkeinElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({c})*{m}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

const STEP_BUDGET: u64 = 20_000_000;

/// One top-level evaluation: memo table plus step counter.
struct Evaluator {
    memo: HashMap<OrientedFront, SkeinElement>,
    steps: u64,
}

fn canonical(f: &OrientedFront) -> OrientedFront {
    (0..f.word().len().max(1)).map(|k| f.rotate(k)).min().unwrap()
}

fn kink(sign: i64) -> LaurentPoly {
    LaurentPoly::a(sign as i32)
}

fn sign_at(g: &OrientedFront, i: usize) -> i64 {
    g.crossing_sign(&g.slice_dirs(), i)
}

fn mv(g: &OrientedFront, m: Move) -> Result<OrientedFront, SkeinError> {
    Ok(g.apply_move(m)?)
}

/// Moves the letter at `from` to index `to < from` by far commutations.
fn slide_left(g: &OrientedFront, from: usize, to: usize) -> Result<OrientedFront, SkeinError> {
    let mut g = g.clone();
    for j in (to..from).rev() {
        g = mv(&g, Move::FarCommute(j))?;
    }
    Ok(g)
}

/// Moves the letter at `from` to index `to > from` by far commutations.
fn slide_right(g: &OrientedFront, from: usize, to: usize) -> Result<OrientedFront, SkeinError> {
    let mut g = g.clone();
    for j in from..to {
        g = mv(&g, Move::FarCommute(j))?;
    }
    Ok(g)
}

impl Evaluator {
    fn new() -> Self {
        Evaluator { memo: HashMap::new(), steps: 0 }
    }

    fn tick(&mut self) -> Result<(), SkeinError> {
        self.steps += 1;
        if self.steps > STEP_BUDGET {
            return Err(SkeinError::NonTermination(STEP_BUDGET));
        }
        Ok(())
    }

    fn eval(&mut self, f: &OrientedFront) -> Result<SkeinElement, SkeinError> {
        self.tick()?;
        let key = canonical(f);
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let v = if key.word().is_empty() {
            let factors: Vec<i32> = key.seam().iter().map(|d| if *d == Dir::Right { 1 } else { -1 }).collect();
            SkeinElement::monomial(TuraevMonomial::from_factors(&factors))
        } else if key.word().cusp_count() == 0 {
            self.braid_case(&key)?
        } else {
            self.cusp_case(&key)?
        };
        self.memo.insert(key, v.clone());
        Ok(v)
    }

    /// `H(F) = c * H(G)` plus accumulated correction terms.
    fn finish(&mut self, extra: SkeinElement, c: &LaurentPoly, g: &OrientedFront) -> Result<SkeinElement, SkeinError> {
        let mut out = self.eval(g)?.scale(c);
        out.add(&extra);
        Ok(out)
    }

    /// Turns `l_k s_{k+1}` into `l_{k+1} s_k` (or back) at the start of `g`,
    /// recording the crossing-change correction in `extra`.
    fn skein_move(&mut self, g: &OrientedFront, extra: &mut SkeinElement) -> Result<OrientedFront, SkeinError> {
        let (target, k_target) = match g.word().letters()[..2] {
            [Letter::Left(k), Letter::Sigma(j)] if j == k + 1 => ([Letter::Left(k + 1), Letter::Sigma(k)], k + 1),
            [Letter::Left(k), Letter::Sigma(j)] if k == j + 1 => ([Letter::Left(j), Letter::Sigma(k)], j),
            _ => return Err(FrontError::PatternMismatch("no skein move at word start".into()).into()),
        };
        let k_here = g.word().letters()[0].index();
        let h = g.replace(0, 2, &target)?;
        // H(X) = H(X') + sign(X) z H(positive one with its crossing smoothed)
        let sign = sign_at(g, 1);
        let smoothed = if sign > 0 {
            g.replace(0, 2, &[Letter::Left(k_here)])?
        } else {
            h.replace(0, 2, &[Letter::Left(k_target)])?
        };
        let corr = self.eval(&smoothed)?.scale(&LaurentPoly::z(1).scale(sign));
        extra.add(&corr);
        Ok(h)
    }

    fn braid_case(&mut self, f: &OrientedFront) -> Result<SkeinElement, SkeinError> {
        let mut g = f.clone();
        let mut s = 0usize;
        loop {
            self.tick()?;
            let letters = g.word().letters().to_vec();
            let peel = letters[s..].iter().all(|l| l.index() as usize > s + 1);
            if peel {
                let top = s + 1;
                let dir = g.seam()[0];
                let rest: Vec<Letter> = letters[s..]
                    .iter()
                    .map(|l| Letter::Sigma(l.index() - top as u32))
                    .collect();
                let n = g.word().base() - top;
                let word = FrontWord::new(n, rest)?;
                let upper = vec![None; word.len()];
                let rest = OrientedFront::from_annotated(word, g.seam()[top..].to_vec(), upper)?;
                let factor = if dir == Dir::Right { top as i32 } else { -(top as i32) };
                return Ok(self.eval(&rest)?.times(&TuraevMonomial::from_factors(&[factor])));
            }
            let i = letters[s].index() as usize;
            let prefix: Vec<Letter> = (1..=s as u32).map(Letter::Sigma).collect();
            if i > s + 1 {
                let mut seg = vec![Letter::Sigma(i as u32)];
                seg.extend(&prefix);
                g = g.replace(0, s + 1, &seg)?.rotate(1);
            } else if i == s + 1 {
                s += 1;
            } else if i == s {
                // two crossings between the same strands
                let f1 = g.replace(s - 1, 2, &[])?;
                let mut out = self.eval(&f1)?;
                if sign_at(&g, s - 1) > 0 {
                    let f2 = g.replace(s - 1, 2, &[Letter::Sigma(s as u32)])?;
                    out.add(&self.eval(&f2)?.scale(&LaurentPoly::z(1)));
                } else {
                    let f3 = g.replace(s - 1, 2, &[Letter::Right(s as u32), Letter::Left(s as u32)])?;
                    out.add(&self.eval(&f3)?.scale(&(LaurentPoly::z(1) * LaurentPoly::a(-1)).scale(-1)));
                }
                return Ok(out);
            } else {
                let mut seg = vec![Letter::Sigma(i as u32 + 1)];
                seg.extend(&prefix);
                g = g.replace(0, s + 1, &seg)?.rotate(1);
            }
        }
    }

    fn cusp_case(&mut self, f: &OrientedFront) -> Result<SkeinElement, SkeinError> {
        let letters = f.word().letters();
        let n = letters.len();
        // a left cusp followed by crossings and then a right cusp
        let start = (0..n)
            .find(|&j| {
                matches!(letters[j], Letter::Left(_))
                    && (1..n)
                        .map(|d| letters[(j + d) % n])
                        .find(|l| l.is_cusp())
                        .is_some_and(|l| matches!(l, Letter::Right(_)))
            })
            .expect("a front with cusps has a left cusp followed by a right cusp");
        let mut g = f.rotate(start);
        let mut m = g.word().letters()[0].index();
        let mut s = 0u32;
        let mut extra = SkeinElement::zero();
        let one = LaurentPoly::one();
        loop {
            self.tick()?;
            let p = s as usize + 1;
            let next = g.word().letters()[p];
            match next {
                Letter::Sigma(i) => {
                    if i + 1 < m || i > m + s + 1 {
                        let h = slide_left(&g, p, 0)?;
                        return self.finish(extra, &one, &h);
                    } else if i + 1 == m {
                        g = slide_left(&g, p, 1)?;
                        g = self.skein_move(&g, &mut extra)?;
                        m -= 1;
                        s += 1;
                    } else if i == m {
                        if s == 0 {
                            let c = kink(sign_at(&g, 1));
                            let h = g.replace(0, 2, &[Letter::Left(m)])?;
                            return self.finish(extra, &c, &h);
                        }
                        let h = slide_left(&g, p, 2)?;
                        let h = mv(&h, Move::Lr2(0))?;
                        return self.finish(extra, &one, &h);
                    } else if i < m + s {
                        let j = (i - m) as usize;
                        let h = slide_left(&g, p, j + 2)?;
                        let h = mv(&h, Move::Braid(j))?;
                        let h = slide_left(&h, j, 0)?;
                        return self.finish(extra, &one, &h);
                    } else if i == m + s {
                        let mut h = g.clone();
                        for t in 0..s as usize {
                            h = self.skein_move(&h, &mut extra)?;
                            if t + 1 < s as usize {
                                h = slide_right(&h, 1, s as usize - t + 1)?;
                            }
                        }
                        let h = mv(&h, Move::Lr2(0))?;
                        return self.finish(extra, &one, &h);
                    } else {
                        s += 1;
                    }
                }
                Letter::Right(r) => {
                    if r + 1 < m || r > m + s + 1 {
                        let h = slide_left(&g, p, 0)?;
                        return self.finish(extra, &one, &h);
                    } else if r + 1 == m {
                        let h = slide_left(&g, p, 1)?;
                        let h = h.replace(0, 2, &[])?;
                        return self.finish(extra, &one, &h);
                    } else if r == m {
                        if s == 0 {
                            let h = g.replace(0, 2, &[])?;
                            return self.finish(extra, &LaurentPoly::unknot(), &h);
                        }
                        let h = slide_left(&g, p, 2)?;
                        let c = kink(sign_at(&h, 1));
                        let h = mv(&h, Move::Lr1(0))?;
                        return self.finish(extra, &c, &h);
                    } else if r < m + s {
                        let j = (r - m) as usize;
                        let h = slide_left(&g, p, j + 2)?;
                        let h = mv(&h, Move::Lr2(j))?;
                        return self.finish(extra, &one, &h);
                    } else if r == m + s {
                        let c = kink(sign_at(&g, s as usize));
                        let h = g.replace(s as usize, 2, &[Letter::Right(r)])?;
                        return self.finish(extra, &c, &h);
                    } else {
                        let mut h = g.clone();
                        for t in 0..s as usize {
                            h = self.skein_move(&h, &mut extra)?;
                            h = slide_right(&h, 1, s as usize - t + 1)?;
                        }
                        // zigzag l_k r_{k+1}
                        let h = h.replace(0, 2, &[])?;
                        return self.finish(extra, &one, &h);
                    }
                }
                Letter::Left(_) => unreachable!("crossings only between the chosen cusps"),
            }
        }
    }
}

/// `H`: the regular-isotopy HOMFLY-PT class of the rounded front.
pub fn homfly_h(f: &OrientedFront) -> Result<SkeinElement, SkeinError> {
    Evaluator::new().eval(f)
}

/// `P = a^{-w} H`, a Legendrian isotopy invariant.
pub fn homfly_p(f: &OrientedFront) -> Result<SkeinElement, SkeinError> {
    Ok(homfly_h(f)?.scale(&LaurentPoly::a(-f.writhe() as i32)))
}

/// Pairs each `A_λ A_{-μ}` with `⟨A_λ, A_μ⟩`.
pub fn specialize_hat(e: &SkeinElement) -> LaurentPoly {
    e.terms().map(|(m, c)| c * &turaev_inner(&m.pos, &m.neg)).sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MainReport {
    /// 2-graded ruling polynomial.
    pub lhs: LaurentPoly,
    /// Coefficient of `a^{-tb}` in the specialized `P`.
    pub rhs: LaurentPoly,
    pub equal: bool,
}

/// Compares the 2-graded ruling polynomial with the `a^{-tb}` coefficient of `P̂`.
pub fn check_main(f: &OrientedFront) -> Result<MainReport, SkeinError> {
    let lhs = match ruling_polynomial(f, 2, &crate::front::default_maslov(f)) {
        Ok(r) => r,
        Err(RulingError::OddStrandCount { .. }) => LaurentPoly::zero(),
        Err(e) => return Err(e.into()),
    };
    let hat = specialize_hat(&homfly_p(f)?);
    let rhs = hat.coeff_of(Var::A, -f.tb() as i32);
    Ok(MainReport { equal: lhs == rhs, lhs, rhs })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub tb_plus_abs_r: i64,
    /// `-deg_a P`, absent when `P = 0`.
    pub neg_adeg: Option<i64>,
    pub holds: bool,
}

/// Checks `tb + |r| <= -deg_a P`.
pub fn check_bound(f: &OrientedFront) -> Result<BoundReport, SkeinError> {
    let inv = f.classical_invariants();
    let lhs = inv.tb + inv.rotation.abs();
    let neg_adeg = homfly_p(f)?.max_a_degree().map(|d| -(d as i64));
    Ok(BoundReport { tb_plus_abs_r: lhs, neg_adeg, holds: neg_adeg.is_none_or(|d| lhs <= d) })
}
