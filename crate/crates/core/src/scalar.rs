//! Exact scalars: Laurent polynomials in `v = q^{1/4}` over the integers,
//! fractions in `Q(v)`, and the specializations at `v = 1`.
//!
//! Conventions: `q = v^4` and `A = q^{1/2} = v^2`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Element of `Z[v, v^{-1}]`, stored densely from the lowest exponent.
///
/// The zero element has no coefficients; otherwise the first and last
/// coefficients are non-zero, so equality of values is structural equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent {
    low: i32,
    coeffs: Vec<BigInt>,
}

impl Laurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        Self::term(BigInt::from(c), 0)
    }

    pub fn from_bigint(c: BigInt) -> Self {
        Self::term(c, 0)
    }

    /// `c * v^e`.
    pub fn term(c: BigInt, e: i32) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { low: e, coeffs: vec![c] }
    }

    /// `v^e`.
    pub fn v_pow(e: i32) -> Self {
        Self::term(BigInt::one(), e)
    }

    /// `q^n = v^{4n}`.
    pub fn q_pow(n: i32) -> Self {
        Self::v_pow(4 * n)
    }

    /// `A^n = v^{2n}`.
    pub fn a_pow(n: i32) -> Self {
        Self::v_pow(2 * n)
    }

    fn from_dense(low: i32, mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead);
        Self { low: low + lead as i32, coeffs }
    }

    /// Builds a scalar from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (i32, BigInt)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in terms {
            out += &Self::term(c, e);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent present; `None` for zero.
    pub fn low_exp(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn high_exp(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i32 - 1)
    }

    pub fn coeff(&self, e: i32) -> BigInt {
        let idx = e - self.low;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            BigInt::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Non-zero terms `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i32, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Multiplication by `v^e`.
    pub fn shift(&self, e: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self { low: self.low + e, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { low: self.low, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Units of `Z[v^{±1}]` are exactly `±v^e`.
    pub fn unit_inverse(&self) -> Option<Self> {
        if self.coeffs.len() == 1 && self.coeffs[0].abs().is_one() {
            Some(Self::term(self.coeffs[0].clone(), -self.low))
        } else {
            None
        }
    }

    /// Substitution `v -> v^{-1}`.
    pub fn bar(&self) -> Self {
        match self.high_exp() {
            None => Self::zero(),
            Some(h) => Self { low: -h, coeffs: self.coeffs.iter().rev().cloned().collect() },
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Value at `v = 1` over the integers.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn specialize(&self, at: SpecPoint) -> SpecValue {
        let s = self.eval_at_one();
        match at {
            SpecPoint::IntegersAtOne => SpecValue::Int(s),
            SpecPoint::PrimeFieldAtOne(p) => SpecValue::Fp { value: reduce_mod(&s, p), p },
        }
    }

    /// `(k, P)` with `self = v^k * P(v)`, `P` a polynomial with non-zero
    /// constant term. Zero maps to `(0, 0)`.
    pub fn split_monomial(&self) -> (i32, ZPoly) {
        (self.low, ZPoly::from_coeffs(self.coeffs.clone()))
    }

    pub fn to_rational(&self) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        let p = ZPoly::from_coeffs(self.coeffs.clone());
        if self.low >= 0 {
            Rational::from_poly(p.shift(self.low as usize))
        } else {
            Rational::new_unchecked_normalize(p, ZPoly::monomial(BigInt::one(), (-self.low) as usize))
        }
    }

    /// Degree-lexicographic-free total order used only for deterministic
    /// sorting of scalars.
    pub fn cmp_canonical(&self, other: &Self) -> Ordering {
        self.low
            .cmp(&other.low)
            .then_with(|| self.coeffs.len().cmp(&other.coeffs.len()))
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

pub(crate) fn reduce_mod(x: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    x.mod_floor(&m).to_u64().expect("residue fits in u64")
}

impl From<i64> for Laurent {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl<'a> Add<&'a Laurent> for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &'a Laurent) -> Laurent {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.high_exp().unwrap().max(rhs.high_exp().unwrap());
        let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[(rhs.low - low) as usize + i] += c;
        }
        Laurent::from_dense(low, coeffs)
    }
}

impl Add for Laurent {
    type Output = Laurent;
    fn add(self, rhs: Laurent) -> Laurent {
        &self + &rhs
    }
}

impl<'a> AddAssign<&'a Laurent> for Laurent {
    fn add_assign(&mut self, rhs: &'a Laurent) {
        if rhs.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = rhs.clone();
            return;
        }
        // in-place fast path when rhs fits inside self's range
        let rh = rhs.high_exp().unwrap();
        let sh = self.high_exp().unwrap();
        if rhs.low >= self.low && rh <= sh {
            let off = (rhs.low - self.low) as usize;
            for (i, c) in rhs.coeffs.iter().enumerate() {
                self.coeffs[off + i] += c;
            }
            let coeffs = std::mem::take(&mut self.coeffs);
            *self = Laurent::from_dense(self.low, coeffs);
        } else {
            *self = &*self + rhs;
        }
    }
}

impl<'a> SubAssign<&'a Laurent> for Laurent {
    fn sub_assign(&mut self, rhs: &'a Laurent) {
        *self += &(-rhs);
    }
}

impl<'a> Sub<&'a Laurent> for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &'a Laurent) -> Laurent {
        self + &(-rhs)
    }
}

impl Sub for Laurent {
    type Output = Laurent;
    fn sub(self, rhs: Laurent) -> Laurent {
        &self - &rhs
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        -&self
    }
}

impl<'a> Mul<&'a Laurent> for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &'a Laurent) -> Laurent {
        if self.is_zero() || rhs.is_zero() {
            return Laurent::zero();
        }
        if rhs.coeffs.len() == 1 {
            let c = &rhs.coeffs[0];
            return Laurent { low: self.low + rhs.low, coeffs: self.coeffs.iter().map(|x| x * c).collect() };
        }
        if self.coeffs.len() == 1 {
            let c = &self.coeffs[0];
            return Laurent { low: self.low + rhs.low, coeffs: rhs.coeffs.iter().map(|x| x * c).collect() };
        }
        Laurent::from_dense(self.low + rhs.low, convolve(&self.coeffs, &rhs.coeffs))
    }
}

impl Mul for Laurent {
    type Output = Laurent;
    fn mul(self, rhs: Laurent) -> Laurent {
        &self * &rhs
    }
}

// Coefficient convolution, with an i64 path when every input fits in i32.
fn convolve(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let small = |v: &[BigInt]| v.iter().map(ToPrimitive::to_i32).collect::<Option<Vec<i32>>>();
    if let (Some(x), Some(y)) = (small(a), small(b)) {
        let mut acc = vec![0i64; x.len() + y.len() - 1];
        for (i, &s) in x.iter().enumerate() {
            if s == 0 {
                continue;
            }
            for (j, &t) in y.iter().enumerate() {
                acc[i + j] += s as i64 * t as i64;
            }
        }
        return acc.into_iter().map(BigInt::from).collect();
    }
    let mut coeffs = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, s) in a.iter().enumerate() {
        if s.is_zero() {
            continue;
        }
        for (j, t) in b.iter().enumerate() {
            coeffs[i + j] += s * t;
        }
    }
    coeffs
}

impl fmt::Display for Laurent {
    /// Terms in decreasing exponent order: `1*v^8 + -1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write_term(f, c, e)?;
        }
        Ok(())
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, c: &BigInt, e: i32) -> fmt::Result {
    match e {
        0 => write!(f, "{c}"),
        1 => write!(f, "{c}*v"),
        _ => write!(f, "{c}*v^{e}"),
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Laurent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Laurent {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses one monomial `[sign][int][*]var[^exp]` starting at byte offset
/// `base` (used only for error positions). Returns `(coefficient, v-exponent)`.
pub(crate) fn parse_scalar_monomial(text: &str, base: usize) -> Result<(BigInt, i32)> {
    let err = |off: usize, msg: &str| Error::Parse { pos: base + off, msg: msg.to_string() };
    let t = text.trim();
    let lead = text.len() - text.trim_start().len();
    if t.is_empty() {
        return Err(err(lead, "empty term"));
    }
    let bytes = t.as_bytes();
    let mut i = 0;
    let mut negative = false;
    while i < bytes.len() && (bytes[i] == b'-' || bytes[i] == b'+' || bytes[i] == b' ') {
        if bytes[i] == b'-' {
            negative = !negative;
        }
        i += 1;
    }
    let digits_start = i;
    while i < bytes.len() && bytes[i].is_ascii_digit() {
        i += 1;
    }
    let mut coeff = if i > digits_start {
        t[digits_start..i].parse::<BigInt>().map_err(|_| err(lead + digits_start, "bad integer"))?
    } else {
        BigInt::one()
    };
    if negative {
        coeff = -coeff;
    }
    let rest = t[i..].trim_start();
    let mut j = t.len() - rest.len();
    let rest = rest.strip_prefix('*').map(|r| {
        j += 1;
        r.trim_start()
    });
    let rest = match rest {
        Some(r) => {
            j = t.len() - r.len();
            r
        }
        None => {
            let r = t[i..].trim_start();
            j = t.len() - r.len();
            r
        }
    };
    if rest.is_empty() {
        if i == digits_start {
            return Err(err(lead + i, "missing coefficient or variable"));
        }
        return Ok((coeff, 0));
    }
    let (var, after) = rest.split_at(1);
    let unit = match var {
        "v" => 1,
        "q" => 4,
        "A" => 2,
        _ => return Err(err(lead + j, "expected variable v, q or A")),
    };
    let after = after.trim();
    let exp = if after.is_empty() {
        1
    } else if let Some(e) = after.strip_prefix('^') {
        let e = e.trim();
        let e = e.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(e);
        e.trim().parse::<i32>().map_err(|_| err(lead + j + 1, "bad exponent"))?
    } else {
        return Err(err(lead + j + 1, "unexpected characters after variable"));
    };
    Ok((coeff, unit * exp))
}

/// Splits on top-level `+` signs, returning `(offset, piece)` pairs. A `+`
/// directly after `^` belongs to an exponent.
pub(crate) fn split_plus(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = 0;
    let bytes = text.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        if b == b'+' {
            let prev = text[..i].trim_end();
            if prev.ends_with('^') || prev.is_empty() && i == 0 {
                continue;
            }
            out.push((start, &text[start..i]));
            start = i + 1;
        }
    }
    out.push((start, &text[start..]));
    out
}

impl FromStr for Laurent {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s.trim() == "0" {
            return Ok(Laurent::zero());
        }
        let mut out = Laurent::zero();
        for (off, piece) in split_plus(s) {
            let (c, e) = parse_scalar_monomial(piece, off)?;
            out += &Laurent::term(c, e);
        }
        Ok(out)
    }
}

/// Where to evaluate `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpecPoint {
    /// `v = 1` over `Z`.
    IntegersAtOne,
    /// `v = 1` over `F_p`.
    PrimeFieldAtOne(u64),
}

impl SpecPoint {
    pub fn prime_field(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(SpecPoint::PrimeFieldAtOne(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecValue {
    Int(BigInt),
    Fp { value: u64, p: u64 },
}

impl SpecValue {
    pub fn is_zero(&self) -> bool {
        match self {
            SpecValue::Int(x) => x.is_zero(),
            SpecValue::Fp { value, .. } => *value == 0,
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Dense polynomial in `v` over `Z`, coefficient `i` multiplies `v^i`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: BigInt, deg: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        coeffs[deg] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::from_coeffs(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn div_int_exact(&self, c: &BigInt) -> Self {
        Self { coeffs: self.coeffs.iter().map(|x| x / c).collect() }
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        self.div_int_exact(&c)
    }

    /// Pseudo-remainder of `self` by `d`.
    pub fn prem(&self, d: &ZPoly) -> ZPoly {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.lc();
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let rl = r.lc();
            let t = ZPoly::monomial(rl, rd - dd);
            r = &r.scale(&lc) - &(&t * d);
        }
        r
    }

    /// Exact division, panicking if `d` does not divide `self` in `Z[v]`.
    pub fn div_exact(&self, d: &ZPoly) -> ZPoly {
        let dd = d.degree().expect("division by zero polynomial");
        if d.coeffs.len() == 1 {
            return self.div_int_exact(&d.coeffs[0]);
        }
        let lc = d.lc();
        let mut r = self.clone();
        let mut q = vec![BigInt::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let (quot, rem) = r.lc().div_rem(&lc);
            assert!(rem.is_zero(), "inexact polynomial division");
            q[rd - dd] = quot.clone();
            r = &r - &(&ZPoly::monomial(quot, rd - dd) * d);
        }
        assert!(r.is_zero(), "inexact polynomial division");
        ZPoly::from_coeffs(q)
    }

    /// Primitive gcd (positive leading coefficient) over `Q[v]`.
    pub fn gcd_primitive(&self, other: &ZPoly) -> ZPoly {
        let mut a = self.primitive();
        let mut b = other.primitive();
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.degree() == Some(0) {
                return ZPoly::one();
            }
            let r = a.prem(&b).primitive();
            a = b;
            b = r;
        }
        a
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn to_laurent(&self) -> Laurent {
        Laurent::from_dense(0, self.coeffs.clone())
    }
}

impl<'a> Add<&'a ZPoly> for &ZPoly {
    type Output = ZPoly;
    fn add(self, rhs: &'a ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        ZPoly::from_coeffs(coeffs)
    }
}

impl<'a> Sub<&'a ZPoly> for &ZPoly {
    type Output = ZPoly;
    fn sub(self, rhs: &'a ZPoly) -> ZPoly {
        self + &(-rhs)
    }
}

impl Neg for &ZPoly {
    type Output = ZPoly;
    fn neg(self) -> ZPoly {
        ZPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl<'a> Mul<&'a ZPoly> for &ZPoly {
    type Output = ZPoly;
    fn mul(self, rhs: &'a ZPoly) -> ZPoly {
        if self.is_zero() || rhs.is_zero() {
            return ZPoly::zero();
        }
        ZPoly::from_coeffs(convolve(&self.coeffs, &rhs.coeffs))
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_laurent())
    }
}

impl fmt::Debug for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Element of `Q(v)` as a reduced fraction of integer polynomials.
///
/// Canonical form: `gcd(num, den) = 1` over `Q[v]`, the integer content of
/// `num` and `den` taken together is 1, and `den` has positive leading
/// coefficient. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational {
    num: ZPoly,
    den: ZPoly,
}

impl Rational {
    pub fn zero() -> Self {
        Self { num: ZPoly::zero(), den: ZPoly::one() }
    }

    pub fn one() -> Self {
        Self { num: ZPoly::one(), den: ZPoly::one() }
    }

    pub fn from_poly(p: ZPoly) -> Self {
        Self { num: p, den: ZPoly::one() }
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(ZPoly::constant(BigInt::from(c)))
    }

    /// Canonical reduced fraction `num / den`.
    pub fn new(num: ZPoly, den: ZPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::new_unchecked_normalize(num, den))
    }

    fn new_unchecked_normalize(num: ZPoly, den: ZPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (mut num, mut den) = if den.degree() == Some(0) || num.degree() == Some(0) {
            (num, den)
        } else {
            let g = num.gcd_primitive(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g), den.div_exact(&g))
            }
        };
        let c = num.content().gcd(&den.content());
        let c = if den.lc().is_negative() { -c } else { c };
        if !c.is_one() {
            num = num.div_int_exact(&c);
            den = den.div_int_exact(&c);
        }
        Self { num, den }
    }

    pub fn numerator(&self) -> &ZPoly {
        &self.num
    }

    pub fn denominator(&self) -> &ZPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NotInvertible("0 in Q(v)".into()));
        }
        Ok(Self::new_unchecked_normalize(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Rational) -> Result<Self> {
        Ok(self * &other.inverse()?)
    }

    /// Back to `Z[v^{±1}]` when the denominator is a monomial `v^k` (up to sign
    /// one); `None` otherwise.
    pub fn to_laurent(&self) -> Option<Laurent> {
        let d = self.den.degree()?;
        if self.den.coeffs[..d].iter().any(|c| !c.is_zero()) || !self.den.lc().is_one() {
            return None;
        }
        Some(self.num.to_laurent().shift(-(d as i32)))
    }
}

impl From<&Laurent> for Rational {
    fn from(x: &Laurent) -> Self {
        x.to_rational()
    }
}

impl<'a> Add<&'a Rational> for &Rational {
    type Output = Rational;
    fn add(self, rhs: &'a Rational) -> Rational {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Rational::new_unchecked_normalize(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        Rational::new_unchecked_normalize(num, &self.den * &rhs.den)
    }
}

impl<'a> Sub<&'a Rational> for &Rational {
    type Output = Rational;
    fn sub(self, rhs: &'a Rational) -> Rational {
        self + &(-rhs)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational { num: -&self.num, den: self.den.clone() }
    }
}

impl<'a> Mul<&'a Rational> for &Rational {
    type Output = Rational;
    fn mul(self, rhs: &'a Rational) -> Rational {
        if self.is_zero() || rhs.is_zero() {
            return Rational::zero();
        }
        Rational::new_unchecked_normalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(s: &str) -> Laurent {
        s.parse().unwrap()
    }

    fn zp(cs: &[i64]) -> ZPoly {
        ZPoly::from_i64s(cs)
    }

    #[test]
    fn unit_cancellation() {
        assert!((&Laurent::v_pow(2) * &Laurent::v_pow(-2)).is_one());
    }

    #[test]
    fn q_minus_q_inverse_times_q() {
        let x = &Laurent::q_pow(1) - &Laurent::q_pow(-1);
        let y = &x * &Laurent::q_pow(1);
        assert_eq!(y, &Laurent::v_pow(8) - &Laurent::one());
        assert_eq!(y.to_string(), "1*v^8 + -1");
    }

    #[test]
    fn half_integer_powers_of_a() {
        // -A^{5/2} and A^{1/2} with A = v^2
        let minus = -Laurent::v_pow(5);
        assert_eq!(minus.to_string(), "-1*v^5");
        assert_eq!(Laurent::v_pow(1).to_string(), "1*v");
        assert_eq!(&Laurent::a_pow(1) * &Laurent::a_pow(1), Laurent::q_pow(1));
    }

    #[test]
    fn specialization_examples() {
        let x = &Laurent::q_pow(2) - &Laurent::one();
        assert!(x.specialize(SpecPoint::IntegersAtOne).is_zero());
        let t = &Laurent::q_pow(4) - &Laurent::one();
        assert!(t.specialize(SpecPoint::IntegersAtOne).is_zero());
        let y = &Laurent::term(3.into(), 2) + &Laurent::from_int(5);
        assert_eq!(y.specialize(SpecPoint::prime_field(3).unwrap()), SpecValue::Fp { value: 2, p: 3 });
    }

    #[test]
    fn non_prime_rejected() {
        assert_eq!(SpecPoint::prime_field(9), Err(Error::NotPrime(9)));
        assert_eq!(SpecPoint::prime_field(1), Err(Error::NotPrime(1)));
    }

    #[test]
    fn parse_and_aliases() {
        assert_eq!(l("-1*v^5"), -Laurent::v_pow(5));
        assert_eq!(l("1*v^8 + -1"), &Laurent::v_pow(8) - &Laurent::one());
        assert_eq!(l("q"), Laurent::v_pow(4));
        assert_eq!(l("1*q^-1"), Laurent::v_pow(-4));
        assert_eq!(l("A^3 + -2*A"), &Laurent::v_pow(6) - &Laurent::term(2.into(), 2));
        assert_eq!(l("0"), Laurent::zero());
        assert!("1*w^2".parse::<Laurent>().is_err());
        assert!("".parse::<Laurent>().is_err());
    }

    #[test]
    fn frac_gcd_cancellation() {
        let r = Rational::new(zp(&[-1, 0, 1]), zp(&[-1, 1])).unwrap();
        assert_eq!(r.numerator(), &zp(&[1, 1]));
        assert!(r.denominator().is_one());
    }

    #[test]
    fn frac_zero_normal_form() {
        let r = Rational::new(ZPoly::zero(), zp(&[0, 0, 0, 1])).unwrap();
        assert!(r.is_zero());
        assert!(r.denominator().is_one());
    }

    #[test]
    fn frac_inverse() {
        let r = Rational::from_poly(zp(&[1, 1])).inverse().unwrap();
        assert!(r.numerator().is_one());
        assert_eq!(r.denominator(), &zp(&[1, 1]));
        assert!(Rational::zero().inverse().is_err());
    }

    #[test]
    fn frac_zero_denominator_rejected() {
        assert_eq!(Rational::new(zp(&[1]), ZPoly::zero()), Err(Error::ZeroDenominator));
    }

    #[test]
    fn frac_sign_and_content_normalized() {
        let r = Rational::new(zp(&[2, 2]), zp(&[-4])).unwrap();
        assert_eq!(r.numerator(), &zp(&[-1, -1]));
        assert_eq!(r.denominator(), &zp(&[2]));
    }

    #[test]
    fn laurent_round_trip_through_rational() {
        let x = l("3*v^-2 + -1*v + 7");
        assert_eq!(x.to_rational().to_laurent().unwrap(), x);
        assert_eq!(Rational::new(zp(&[1]), zp(&[0, 1])).unwrap().to_laurent(), Some(Laurent::v_pow(-1)));
    }

    #[test]
    fn zpoly_gcd() {
        // (v+1)(v-2) and (v+1)(v+3)
        let a = &zp(&[1, 1]) * &zp(&[-2, 1]);
        let b = &zp(&[1, 1]) * &zp(&[3, 1]);
        assert_eq!(a.gcd_primitive(&b), zp(&[1, 1]));
    }
}
