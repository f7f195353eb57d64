//! Exact integer Laurent polynomials in `a`, `z`, `s`, and power series in `t`
//! truncated at a fixed order.
//!
//! Every quantity in the crate lives in `Z[a^±1, z^±1, s^±1]`; the coefficient
//! ring is arbitrary precision since bracket values grow combinatorially.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("z -> s - s^-1 does not yield a Laurent polynomial in s")]
    NonUnitSubstitution,
    #[error("series is not invertible: constant coefficient is not 1")]
    NotInvertible,
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    A,
    Z,
    S,
}

impl Var {
    pub fn symbol(self) -> char {
        match self {
            Var::A => 'a',
            Var::Z => 'z',
            Var::S => 's',
        }
    }
}

/// Exponent vector `a^a z^z s^s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Mono {
    pub a: i32,
    pub z: i32,
    pub s: i32,
}

impl Mono {
    pub const ONE: Mono = Mono { a: 0, z: 0, s: 0 };

    pub fn new(a: i32, z: i32, s: i32) -> Self {
        Mono { a, z, s }
    }

    pub fn exp(&self, var: Var) -> i32 {
        match var {
            Var::A => self.a,
            Var::Z => self.z,
            Var::S => self.s,
        }
    }

    fn with(mut self, var: Var, e: i32) -> Self {
        match var {
            Var::A => self.a = e,
            Var::Z => self.z = e,
            Var::S => self.s = e,
        }
        self
    }

    fn checked_mul(&self, other: &Mono) -> Option<Mono> {
        Some(Mono {
            a: self.a.checked_add(other.a)?,
            z: self.z.checked_add(other.z)?,
            s: self.s.checked_add(other.s)?,
        })
    }

    fn mul(&self, other: &Mono) -> Mono {
        self.checked_mul(other).expect("exponent overflow")
    }
}

/// Sparse Laurent polynomial with integer coefficients; zero coefficients are
/// never stored, so structural equality is ring equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Mono, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Self::term(c, Mono::ONE)
    }

    pub fn term<T: Into<BigInt>>(c: T, mono: Mono) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(mono, c.into());
        p
    }

    /// `var^k`.
    pub fn var(var: Var, k: i32) -> Self {
        Self::term(1, Mono::ONE.with(var, k))
    }

    pub fn a(k: i32) -> Self {
        Self::var(Var::A, k)
    }

    pub fn z(k: i32) -> Self {
        Self::var(Var::Z, k)
    }

    pub fn s(k: i32) -> Self {
        Self::var(Var::S, k)
    }

    /// `(a - a^-1) / z`, the value of the unknot.
    pub fn unknot() -> Self {
        &Self::term(1, Mono::new(1, -1, 0)) - &Self::term(1, Mono::new(-1, -1, 0))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &Mono) -> BigInt {
        self.terms.get(mono).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, mono: Mono, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(mono).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn scale<T: Into<BigInt>>(&self, c: T) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * &c)).collect(),
        }
    }

    /// Multiplies by the monomial `mono`.
    pub fn shift(&self, mono: Mono) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, v)| (m.mul(&mono), v.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn min_exp(&self, var: Var) -> Option<i32> {
        self.terms.keys().map(|m| m.exp(var)).min()
    }

    pub fn max_exp(&self, var: Var) -> Option<i32> {
        self.terms.keys().map(|m| m.exp(var)).max()
    }

    /// Coefficient of `var^k`, as a polynomial in the remaining variables.
    pub fn coeff_of(&self, var: Var, k: i32) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if m.exp(var) == k {
                out.add_term(m.with(var, 0), c.clone());
            }
        }
        out
    }

    pub fn has_var(&self, var: Var) -> bool {
        self.terms.keys().any(|m| m.exp(var) != 0)
    }

    /// Substitutes `z = s - s^-1`.
    ///
    /// Negative powers of `z` are cleared first and divided back out exactly;
    /// the division fails with [`PolyError::NonUnitSubstitution`] when the
    /// image is not a Laurent polynomial.
    pub fn subst_z(&self) -> Result<Self, PolyError> {
        let shift = -self.min_exp(Var::Z).unwrap_or(0).min(0);
        let zs = &Self::s(1) - &Self::s(-1);
        // powers of (s - s^-1), built lazily
        let mut powers: Vec<LaurentPoly> = vec![Self::one()];
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let k = (m.z + shift) as usize;
            while powers.len() <= k {
                let next = powers.last().unwrap() * &zs;
                powers.push(next);
            }
            let base = Mono::new(m.a, 0, m.s);
            out += &powers[k].shift(base).scale(c.clone());
        }
        for _ in 0..shift {
            out = out.div_s_minus_inv()?;
        }
        Ok(out)
    }

    /// Exact division by `s - s^-1`.
    fn div_s_minus_inv(&self) -> Result<Self, PolyError> {
        // group by (a, z); each group is univariate in s
        let mut groups: BTreeMap<(i32, i32), BTreeMap<i32, BigInt>> = BTreeMap::new();
        for (m, c) in &self.terms {
            groups.entry((m.a, m.z)).or_default().insert(m.s, c.clone());
        }
        let mut out = Self::zero();
        for ((a, z), coeffs) in groups {
            let top = *coeffs.keys().next_back().unwrap();
            let bottom = *coeffs.keys().next().unwrap();
            if top - bottom < 2 {
                return Err(PolyError::NonUnitSubstitution);
            }
            // p_k = q_{k-1} - q_{k+1}  =>  q_{k-1} = p_k + q_{k+1}
            let mut q: BTreeMap<i32, BigInt> = BTreeMap::new();
            let mut k = top;
            while k >= bottom + 2 {
                let pk = coeffs.get(&k).cloned().unwrap_or_default();
                let qk1 = q.get(&(k + 1)).cloned().unwrap_or_default();
                q.insert(k - 1, pk + qk1);
                k -= 1;
            }
            let mut group = Self::zero();
            for (e, c) in q {
                group.add_term(Mono::new(a, z, e), c);
            }
            let back = &group * &(&Self::s(1) - &Self::s(-1));
            let mut orig = Self::zero();
            for (e, c) in &coeffs {
                orig.add_term(Mono::new(a, z, *e), c.clone());
            }
            if back != orig {
                return Err(PolyError::NonUnitSubstitution);
            }
            out += &group;
        }
        Ok(out)
    }

    /// Parses the textual format produced by `Display`, and more generally any
    /// sum of products of integers, variables with integer powers, and
    /// parenthesized subexpressions.
    pub fn parse(text: &str) -> Result<Self, PolyError> {
        let mut p = Parser { src: text.as_bytes(), pos: 0, depth: 0 };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("trailing input"));
        }
        Ok(v)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

fn render_power(out: &mut Vec<String>, var: char, e: i32) {
    match e {
        0 => {}
        1 => out.push(var.to_string()),
        _ => out.push(format!("{var}^{e}")),
    }
}

fn render_term(c: &BigInt, z: i32, s: i32) -> String {
    let mut factors = Vec::new();
    render_power(&mut factors, 'z', z);
    render_power(&mut factors, 's', s);
    if factors.is_empty() {
        return c.to_string();
    }
    let mono = factors.join("*");
    if c.is_one() {
        mono
    } else if *c == -BigInt::one() {
        format!("-{mono}")
    } else {
        format!("{c}*{mono}")
    }
}

fn render_inner(terms: &[(i32, i32, BigInt)]) -> String {
    let mut out = String::new();
    for (i, (z, s, c)) in terms.iter().enumerate() {
        if i == 0 {
            out.push_str(&render_term(c, *z, *s));
        } else if c.is_negative() {
            out.push_str(" - ");
            out.push_str(&render_term(&-c, *z, *s));
        } else {
            out.push_str(" + ");
            out.push_str(&render_term(c, *z, *s));
        }
    }
    out
}

/// Terms grouped by descending `a`-power; inside a group, ascending `z` then
/// ascending `s`. Example: `a^-4*(2 + 3*z^2 + z^4) + a^-6*(3*z^2 + z^4)`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut groups: BTreeMap<std::cmp::Reverse<i32>, Vec<(i32, i32, BigInt)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            groups.entry(std::cmp::Reverse(m.a)).or_default().push((m.z, m.s, c.clone()));
        }
        let single = groups.len() == 1;
        let mut parts = Vec::new();
        for (std::cmp::Reverse(a), mut terms) in groups {
            terms.sort_by_key(|x| (x.0, x.1));
            let inner = render_inner(&terms);
            let part = if a == 0 {
                if single {
                    inner
                } else {
                    format!("({inner})")
                }
            } else {
                let af = if a == 1 { "a".to_string() } else { format!("a^{a}") };
                if inner == "1" {
                    af
                } else {
                    format!("{af}*({inner})")
                }
            };
            parts.push(part);
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c);
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

const MAX_PARSE_DEPTH: usize = 64;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    depth: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> PolyError {
        PolyError::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<LaurentPoly, PolyError> {
        self.depth += 1;
        if self.depth > MAX_PARSE_DEPTH {
            return Err(self.err("nesting too deep"));
        }
        let mut negate = false;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            negate = true;
        }
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc += &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc -= &self.term()?;
                }
                _ => break,
            }
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<LaurentPoly, PolyError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let rhs = self.factor()?;
            acc = checked_mul(&acc, &rhs).ok_or(PolyError::ExponentOverflow)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<LaurentPoly, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.digits()?;
                Ok(LaurentPoly::constant(n))
            }
            Some(c @ (b'a' | b'z' | b's')) => {
                self.pos += 1;
                let var = match c {
                    b'a' => Var::A,
                    b'z' => Var::Z,
                    _ => Var::S,
                };
                let mut e = 1i32;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let neg = if self.peek() == Some(b'-') {
                        self.pos += 1;
                        true
                    } else {
                        false
                    };
                    let start = self.pos;
                    let n = self.digits()?;
                    let n: i32 = i32::try_from(n).map_err(|_| PolyError::Parse {
                        pos: start,
                        msg: "exponent out of range".into(),
                    })?;
                    e = if neg { -n } else { n };
                }
                Ok(LaurentPoly::var(var, e))
            }
            _ => Err(self.err("expected term")),
        }
    }

    fn digits(&mut self) -> Result<BigInt, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse::<BigInt>().unwrap())
    }
}

fn checked_mul(p: &LaurentPoly, q: &LaurentPoly) -> Option<LaurentPoly> {
    let mut out = LaurentPoly::zero();
    for (m1, c1) in &p.terms {
        for (m2, c2) in &q.terms {
            out.add_term(m1.checked_mul(m2)?, c1 * c2);
        }
    }
    Some(out)
}

/// Power series in `t` with [`LaurentPoly`] coefficients, exact modulo
/// `t^(order+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<LaurentPoly>,
}

impl TruncSeries {
    /// Builds a series from the coefficients of `t^0 ..= t^order`; missing
    /// entries are zero, extra entries are truncated.
    pub fn new(order: usize, coeffs: Vec<LaurentPoly>) -> Self {
        let mut coeffs = coeffs;
        coeffs.resize(order + 1, LaurentPoly::zero());
        TruncSeries { coeffs }
    }

    pub fn one(order: usize) -> Self {
        Self::new(order, vec![LaurentPoly::one()])
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &LaurentPoly {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    pub fn mul(&self, other: &TruncSeries) -> TruncSeries {
        let n = self.order().min(other.order());
        let mut out = vec![LaurentPoly::zero(); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                out[i + j] += &(&self.coeffs[i] * &other.coeffs[j]);
            }
        }
        TruncSeries { coeffs: out }
    }

    /// Multiplicative inverse; requires constant coefficient exactly 1.
    pub fn inverse(&self) -> Result<TruncSeries, PolyError> {
        if self.coeffs[0] != LaurentPoly::one() {
            return Err(PolyError::NotInvertible);
        }
        let n = self.order();
        let mut g = vec![LaurentPoly::zero(); n + 1];
        g[0] = LaurentPoly::one();
        for k in 1..=n {
            let mut acc = LaurentPoly::zero();
            for i in 1..=k {
                acc -= &(&self.coeffs[i] * &g[k - i]);
            }
            g[k] = acc;
        }
        Ok(TruncSeries { coeffs: g })
    }
}
