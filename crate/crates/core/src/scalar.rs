//! Exact arithmetic in Q(q), the field of rational functions in one variable
//! with rational coefficients.
//!
//! A [`QScalar`] is a fraction of Laurent polynomials kept in canonical form:
//! numerator and denominator are coprime, the denominator has lowest exponent 0
//! and lowest coefficient 1. Equality is therefore structural.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("evaluation at q = 0 is undefined")]
    ZeroPoint,
    #[error("pole at q = {point}: denominator factor {factor} vanishes")]
    Pole { point: String, factor: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Rational number helper used across the crate.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses "p" or "p/r".
pub fn parse_rational(s: &str) -> Result<BigRational, ScalarError> {
    let s = s.trim();
    let bad = || ScalarError::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

// ---------------------------------------------------------------------------
// Dense polynomial helpers (ascending coefficient vectors, no trailing zeros).

type Poly = Vec<BigRational>;

fn trim_high(p: &mut Poly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Poly, Poly) {
    let db = b.len() - 1;
    let mut r: Poly = a.to_vec();
    if a.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead_inv = b[db].recip();
    let mut quo = vec![BigRational::zero(); a.len() - db];
    for k in (0..quo.len()).rev() {
        let c = &r[k + db] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (i, bi) in b.iter().enumerate() {
            if !bi.is_zero() {
                r[k + i] -= &c * bi;
            }
        }
        quo[k] = c;
    }
    r.truncate(db);
    trim_high(&mut r);
    trim_high(&mut quo);
    (quo, r)
}

fn make_monic(p: &mut Poly) {
    if let Some(l) = p.last().cloned() {
        if !l.is_one() {
            let inv = l.recip();
            for c in p.iter_mut() {
                *c *= &inv;
            }
        }
    }
}

/// Monic gcd over Q.
fn poly_gcd(a: &[BigRational], b: &[BigRational]) -> Poly {
    let (mut x, mut y) = if a.len() >= b.len() {
        (a.to_vec(), b.to_vec())
    } else {
        (b.to_vec(), a.to_vec())
    };
    make_monic(&mut y);
    while !y.is_empty() {
        let (_, mut r) = poly_divrem(&x, &y);
        make_monic(&mut r);
        x = y;
        y = r;
    }
    make_monic(&mut x);
    x
}

fn poly_exact_div(a: &[BigRational], b: &[BigRational]) -> Poly {
    let (q, r) = poly_divrem(a, b);
    debug_assert!(r.is_empty());
    q
}

// ---------------------------------------------------------------------------

/// Laurent polynomial Σ c_k q^(low+k); canonical when both ends are nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct Laurent {
    low: i32,
    c: Poly,
}

impl Laurent {
    fn zero() -> Self {
        Laurent { low: 0, c: Vec::new() }
    }

    fn constant(v: BigRational) -> Self {
        Self::from_parts(0, vec![v])
    }

    fn from_parts(mut low: i32, mut c: Poly) -> Self {
        trim_high(&mut c);
        let lead = c.iter().take_while(|x| x.is_zero()).count();
        if lead == c.len() {
            return Self::zero();
        }
        if lead > 0 {
            c.drain(..lead);
            low += lead as i32;
        }
        Laurent { low, c }
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn is_one(&self) -> bool {
        self.low == 0 && self.c.len() == 1 && self.c[0].is_one()
    }

    fn high(&self) -> i32 {
        self.low + self.c.len() as i32 - 1
    }

    fn coeff(&self, e: i32) -> BigRational {
        let k = e - self.low;
        if k < 0 || k as usize >= self.c.len() {
            BigRational::zero()
        } else {
            self.c[k as usize].clone()
        }
    }

    fn add(&self, o: &Self, sign: bool) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if sign { o.clone() } else { o.neg() };
        }
        let low = self.low.min(o.low);
        let high = self.high().max(o.high());
        let mut c = vec![BigRational::zero(); (high - low + 1) as usize];
        for (k, v) in self.c.iter().enumerate() {
            c[(self.low - low) as usize + k] = v.clone();
        }
        for (k, v) in o.c.iter().enumerate() {
            let slot = &mut c[(o.low - low) as usize + k];
            if sign {
                *slot += v;
            } else {
                *slot -= v;
            }
        }
        Self::from_parts(low, c)
    }

    fn neg(&self) -> Self {
        Laurent { low: self.low, c: self.c.iter().map(|x| -x).collect() }
    }

    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![BigRational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        Self::from_parts(self.low + o.low, c)
    }

    fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Laurent { low: self.low, c: self.c.iter().map(|x| x * k).collect() }
    }

    fn eval(&self, q0: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.c.iter().rev() {
            acc = acc * q0 + c;
        }
        acc * pow_rat(q0, self.low)
    }

    fn derivative(&self) -> Self {
        let c = self
            .c
            .iter()
            .enumerate()
            .map(|(k, v)| v * BigRational::from_integer(BigInt::from(self.low + k as i32)))
            .collect();
        Self::from_parts(self.low - 1, c)
    }
}

fn pow_rat(x: &BigRational, e: i32) -> BigRational {
    let mut r = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        r *= x;
    }
    if e < 0 {
        r.recip()
    } else {
        r
    }
}

/// Element of Q(q) in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QScalar {
    num: Laurent,
    den: Laurent,
}

impl QScalar {
    pub fn zero() -> Self {
        QScalar { num: Laurent::zero(), den: Laurent::constant(BigRational::one()) }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(v: BigRational) -> Self {
        QScalar { num: Laurent::constant(v), den: Laurent::constant(BigRational::one()) }
    }

    /// The indeterminate q.
    pub fn q() -> Self {
        Self::q_pow(1)
    }

    /// q^e.
    pub fn q_pow(e: i32) -> Self {
        Self::monomial(BigRational::one(), e)
    }

    /// c·q^e.
    pub fn monomial(c: BigRational, e: i32) -> Self {
        QScalar { num: Laurent::from_parts(e, vec![c]), den: Laurent::constant(BigRational::one()) }
    }

    /// ω = q − q⁻¹.
    pub fn omega() -> Self {
        Self::q() - Self::q_pow(-1)
    }

    /// Laurent polynomial from (exponent, coefficient) terms.
    pub fn laurent<I: IntoIterator<Item = (i32, BigRational)>>(terms: I) -> Self {
        let terms: Vec<_> = terms.into_iter().collect();
        Self::from_laurent_parts(&terms, &[(0, BigRational::one())])
    }

    fn from_laurent_parts(num: &[(i32, BigRational)], den: &[(i32, BigRational)]) -> Self {
        fn build(t: &[(i32, BigRational)]) -> Laurent {
            if t.is_empty() {
                return Laurent::zero();
            }
            let low = t.iter().map(|x| x.0).min().unwrap();
            let high = t.iter().map(|x| x.0).max().unwrap();
            let mut c = vec![BigRational::zero(); (high - low + 1) as usize];
            for (e, v) in t {
                c[(e - low) as usize] += v;
            }
            Laurent::from_parts(low, c)
        }
        Self::from_fraction(build(num), build(den)).expect("zero denominator")
    }

    fn from_fraction(mut num: Laurent, mut den: Laurent) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        num.low -= den.low;
        den.low = 0;
        if den.c.len() > 1 {
            let g = poly_gcd(&num.c, &den.c);
            if g.len() > 1 {
                num.c = poly_exact_div(&num.c, &g);
                den.c = poly_exact_div(&den.c, &g);
            }
        }
        if !den.c[0].is_one() {
            let inv = den.c[0].recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(QScalar { num, den })
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value is a Laurent polynomial.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// True when the value does not depend on q.
    pub fn is_constant(&self) -> bool {
        self.den.is_one() && (self.num.is_zero() || (self.num.low == 0 && self.num.c.len() == 1))
    }

    /// The rational value of a constant scalar.
    pub fn as_constant(&self) -> Option<BigRational> {
        if !self.is_constant() {
            None
        } else if self.num.is_zero() {
            Some(BigRational::zero())
        } else {
            Some(self.num.c[0].clone())
        }
    }

    /// If the value is c·q^e, returns (c, e).
    pub fn as_monomial(&self) -> Option<(BigRational, i32)> {
        if self.den.is_one() && self.num.c.len() == 1 {
            Some((self.num.c[0].clone(), self.num.low))
        } else {
            None
        }
    }

    /// Numerator terms (exponent, coefficient), ascending.
    pub fn numerator_terms(&self) -> Vec<(i32, BigRational)> {
        terms_of(&self.num)
    }

    /// Denominator terms (exponent, coefficient), ascending.
    pub fn denominator_terms(&self) -> Vec<(i32, BigRational)> {
        terms_of(&self.den)
    }

    pub fn recip(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Self::from_fraction(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self, ScalarError> {
        Ok(self * &o.recip()?)
    }

    pub fn pow(&self, e: i32) -> Self {
        let base = if e < 0 { self.recip().expect("negative power of zero") } else { self.clone() };
        let mut acc = Self::one();
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            k >>= 1;
        }
        acc
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        QScalar { num: self.num.scale(k), den: self.den.clone() }
    }

    /// Exact value at q = q0.
    pub fn eval_at(&self, q0: &BigRational) -> Result<BigRational, ScalarError> {
        if q0.is_zero() {
            return Err(ScalarError::ZeroPoint);
        }
        let d = self.den.eval(q0);
        if d.is_zero() {
            return Err(ScalarError::Pole {
                point: q0.to_string(),
                factor: QScalar { num: self.den.clone(), den: Laurent::constant(BigRational::one()) }
                    .to_string(),
            });
        }
        Ok(self.num.eval(q0) / d)
    }

    /// Same as [`eval_at`](Self::eval_at) but returns a constant scalar.
    pub fn specialize(&self, q0: &BigRational) -> Result<Self, ScalarError> {
        self.eval_at(q0).map(Self::from_rational)
    }

    /// d/dq.
    pub fn derivative(&self) -> Self {
        let n = self.num.derivative().mul(&self.den).add(&self.num.mul(&self.den.derivative()), false);
        let d = self.den.mul(&self.den);
        Self::from_fraction(n, d).expect("nonzero denominator")
    }

    /// Lowest and highest numerator exponents (None for zero).
    pub fn degree_span(&self) -> Option<(i32, i32)> {
        if self.is_zero() {
            None
        } else {
            Some((self.num.low, self.num.high()))
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}

fn terms_of(l: &Laurent) -> Vec<(i32, BigRational)> {
    l.c.iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(k, v)| (l.low + k as i32, v.clone()))
        .collect()
}

// ---------------------------------------------------------------------------
// Arithmetic.

fn add_impl(a: &QScalar, b: &QScalar, sign: bool) -> QScalar {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if sign { b.clone() } else { -b };
    }
    if a.den.is_one() && b.den.is_one() {
        return QScalar { num: a.num.add(&b.num, sign), den: a.den.clone() };
    }
    if a.den == b.den {
        return QScalar::from_fraction(a.num.add(&b.num, sign), a.den.clone()).unwrap();
    }
    let g = poly_gcd(&a.den.c, &b.den.c);
    if g.len() == 1 {
        let n = a.num.mul(&b.den).add(&b.num.mul(&a.den), sign);
        return QScalar::from_fraction(n, a.den.mul(&b.den)).unwrap();
    }
    let ag = Laurent::from_parts(0, poly_exact_div(&a.den.c, &g));
    let bg = Laurent::from_parts(0, poly_exact_div(&b.den.c, &g));
    let n = a.num.mul(&bg).add(&b.num.mul(&ag), sign);
    QScalar::from_fraction(n, ag.mul(&b.den)).unwrap()
}

fn mul_impl(a: &QScalar, b: &QScalar) -> QScalar {
    if a.is_zero() || b.is_zero() {
        return QScalar::zero();
    }
    if a.den.is_one() && b.den.is_one() {
        return QScalar { num: a.num.mul(&b.num), den: a.den.clone() };
    }
    if let Some(k) = a.as_constant() {
        return b.scale(&k);
    }
    if let Some(k) = b.as_constant() {
        return a.scale(&k);
    }
    QScalar::from_fraction(a.num.mul(&b.num), a.den.mul(&b.den)).unwrap()
}

impl Add<&QScalar> for &QScalar {
    type Output = QScalar;
    fn add(self, o: &QScalar) -> QScalar {
        add_impl(self, o, true)
    }
}
impl Sub<&QScalar> for &QScalar {
    type Output = QScalar;
    fn sub(self, o: &QScalar) -> QScalar {
        add_impl(self, o, false)
    }
}
impl Mul<&QScalar> for &QScalar {
    type Output = QScalar;
    fn mul(self, o: &QScalar) -> QScalar {
        mul_impl(self, o)
    }
}
impl Div<&QScalar> for &QScalar {
    type Output = QScalar;
    fn div(self, o: &QScalar) -> QScalar {
        self.checked_div(o).expect("division by zero QScalar")
    }
}
impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar { num: self.num.neg(), den: self.den.clone() }
    }
}
impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<QScalar> for QScalar {
            type Output = QScalar;
            fn $m(self, o: QScalar) -> QScalar {
                (&self).$m(&o)
            }
        }
        impl $tr<&QScalar> for QScalar {
            type Output = QScalar;
            fn $m(self, o: &QScalar) -> QScalar {
                (&self).$m(o)
            }
        }
        impl $tr<QScalar> for &QScalar {
            type Output = QScalar;
            fn $m(self, o: QScalar) -> QScalar {
                self.$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&QScalar> for QScalar {
    fn add_assign(&mut self, o: &QScalar) {
        *self = &*self + o;
    }
}
impl SubAssign<&QScalar> for QScalar {
    fn sub_assign(&mut self, o: &QScalar) {
        *self = &*self - o;
    }
}
impl MulAssign<&QScalar> for QScalar {
    fn mul_assign(&mut self, o: &QScalar) {
        *self = &*self * o;
    }
}

impl Zero for QScalar {
    fn zero() -> Self {
        QScalar::zero()
    }
    fn is_zero(&self) -> bool {
        QScalar::is_zero(self)
    }
}
impl One for QScalar {
    fn one() -> Self {
        QScalar::one()
    }
}

impl From<i64> for QScalar {
    fn from(n: i64) -> Self {
        QScalar::from_int(n)
    }
}
impl From<BigRational> for QScalar {
    fn from(v: BigRational) -> Self {
        QScalar::from_rational(v)
    }
}

// ---------------------------------------------------------------------------
// q-combinatorics.

/// k_q = (q^k − q^−k)/(q − q^−1).
pub fn qint(k: i64) -> QScalar {
    let n = k.unsigned_abs() as i32;
    let sign = if k < 0 { -BigRational::one() } else { BigRational::one() };
    QScalar::laurent((0..n).map(|i| (n - 1 - 2 * i, sign.clone())))
}

/// Gaussian binomial p_q(p−1)_q…(p−k+1)_q / (k_q!).
pub fn qbinom(p: i64, k: i64) -> Result<QScalar, ScalarError> {
    if p < 0 || k < 0 || k > p {
        return Err(ScalarError::Domain(format!("qbinom({p},{k}) requires 0 <= k <= p")));
    }
    let mut num = QScalar::one();
    let mut den = QScalar::one();
    for i in 0..k {
        num = &num * &qint(p - i);
        den = &den * &qint(i + 1);
    }
    num.checked_div(&den)
}

// ---------------------------------------------------------------------------
// Text form.

fn fmt_laurent(l: &Laurent, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if l.is_zero() {
        return write!(f, "0");
    }
    let mut first = true;
    for (e, c) in terms_of(l).into_iter().rev() {
        let neg = c.is_negative();
        let a = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{}", if neg { " - " } else { " + " })?;
        }
        first = false;
        match (e, a.is_one()) {
            (0, _) => write!(f, "{a}")?,
            (_, true) => write_qpow(f, e)?,
            (_, false) => {
                write!(f, "{a}*")?;
                write_qpow(f, e)?
            }
        }
    }
    Ok(())
}

fn write_qpow(f: &mut fmt::Formatter<'_>, e: i32) -> fmt::Result {
    if e == 1 {
        write!(f, "q")
    } else {
        write!(f, "q^{e}")
    }
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return fmt_laurent(&self.num, f);
        }
        let multi = self.num.c.iter().filter(|c| !c.is_zero()).count() > 1;
        if multi {
            write!(f, "(")?;
        }
        fmt_laurent(&self.num, f)?;
        if multi {
            write!(f, ")")?;
        }
        write!(f, "/(")?;
        fmt_laurent(&self.den, f)?;
        write!(f, ")")
    }
}

impl fmt::Debug for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QScalar({self})")
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T, ScalarError> {
        Err(ScalarError::Parse(format!("{msg} at offset {}", self.pos)))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<QScalar, ScalarError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<QScalar, ScalarError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc * self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = acc.checked_div(&d)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<QScalar, ScalarError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<QScalar, ScalarError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.exponent()?;
            if base.is_zero() && e < 0 {
                return Err(ScalarError::DivisionByZero);
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i32, ScalarError> {
        let paren = self.peek() == Some(b'(');
        if paren {
            self.pos += 1;
        }
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer exponent");
        }
        let v: i32 = std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| ScalarError::Parse("exponent out of range".into()))?;
        if paren {
            if self.peek() != Some(b')') {
                return self.err("expected ')'");
            }
            self.pos += 1;
        }
        Ok(if neg { -v } else { v })
    }

    fn atom(&mut self) -> Result<QScalar, ScalarError> {
        match self.peek() {
            Some(b'q') => {
                self.pos += 1;
                Ok(QScalar::q())
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: BigInt = std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().unwrap();
                Ok(QScalar::from_rational(BigRational::from_integer(n)))
            }
            _ => self.err("unexpected token"),
        }
    }
}

impl FromStr for QScalar {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self, ScalarError> {
        let mut p = Parser { s: s.as_bytes(), pos: 0 };
        let v = p.expr()?;
        if p.peek().is_some() {
            return p.err("trailing input");
        }
        Ok(v)
    }
}

// ---------------------------------------------------------------------------
// JSON form: {"num": [[e, "p/r"], ...], "den": [[e, "p/r"], ...]}.

#[derive(Serialize, Deserialize)]
struct QScalarJson {
    num: Vec<(i32, String)>,
    den: Vec<(i32, String)>,
}

impl Serialize for QScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let conv = |t: Vec<(i32, BigRational)>| t.into_iter().map(|(e, c)| (e, c.to_string())).collect();
        QScalarJson { num: conv(self.numerator_terms()), den: conv(self.denominator_terms()) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let j = QScalarJson::deserialize(d)?;
        let conv = |t: Vec<(i32, String)>| -> Result<Vec<(i32, BigRational)>, D::Error> {
            t.into_iter().map(|(e, c)| parse_rational(&c).map(|v| (e, v)).map_err(D::Error::custom)).collect()
        };
        let num = conv(j.num)?;
        let den = conv(j.den)?;
        if den.iter().all(|(_, c)| c.is_zero()) {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(QScalar::from_laurent_parts(&num, &den))
    }
}

impl PartialOrd for Laurent {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Laurent {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.low, &self.c).cmp(&(o.low, &o.c))
    }
}

/// Arbitrary but fixed total order, used only for deterministic output.
impl Ord for QScalar {
    fn cmp(&self, o: &Self) -> Ordering {
        (&self.num, &self.den).cmp(&(&o.num, &o.den))
    }
}
impl PartialOrd for QScalar {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl QScalar {
    /// Coefficient of q^e in a Laurent polynomial value.
    pub fn laurent_coeff(&self, e: i32) -> Option<BigRational> {
        self.den.is_one().then(|| self.num.coeff(e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(x: &str) -> QScalar {
        x.parse().unwrap()
    }

    #[test]
    fn qint_values() {
        assert!(qint(0).is_zero());
        assert_eq!(qint(2), s("q + q^-1"));
        assert_eq!(qint(-3), -s("q^2 + 1 + q^-2"));
        assert_eq!(qint(1), QScalar::one());
    }

    #[test]
    fn qint_times_omega() {
        for k in -6..=6 {
            let lhs = qint(k) * QScalar::omega();
            let rhs = QScalar::q_pow(k as i32) - QScalar::q_pow(-k as i32);
            assert_eq!(lhs, rhs, "k = {k}");
        }
    }

    #[test]
    fn qbinom_values() {
        assert!(qbinom(3, 0).unwrap().is_one());
        assert_eq!(qbinom(2, 1).unwrap(), s("q + q^-1"));
        assert_eq!(qbinom(4, 2).unwrap(), s("q^4 + q^2 + 2 + q^-2 + q^-4"));
        assert!(qbinom(2, 3).is_err());
        assert!(qbinom(-1, 0).is_err());
    }

    #[test]
    fn qbinom_pascal_and_symmetry() {
        for p in 1..=6 {
            for k in 1..p {
                let lhs = qbinom(p, k).unwrap();
                let rhs = QScalar::q_pow(k as i32) * qbinom(p - 1, k).unwrap()
                    + QScalar::q_pow((k - p) as i32) * qbinom(p - 1, k - 1).unwrap();
                assert_eq!(lhs, rhs);
                assert_eq!(lhs, qbinom(p, p - k).unwrap());
                assert!(lhs.is_laurent());
            }
        }
    }

    #[test]
    fn eval_examples() {
        assert_eq!(s("q + q^-1").eval_at(&rat(1, 1)).unwrap(), rat(2, 1));
        assert_eq!(qint(3).eval_at(&rat(2, 1)).unwrap(), rat(21, 4));
        let pole = QScalar::one() / QScalar::omega();
        assert!(matches!(pole.eval_at(&rat(1, 1)), Err(ScalarError::Pole { .. })));
        assert_eq!(QScalar::q().eval_at(&rat(0, 1)), Err(ScalarError::ZeroPoint));
    }

    #[test]
    fn canonical_form() {
        let a = s("(q^2 - 1)/(q - 1)");
        assert_eq!(a, s("q + 1"));
        let b = s("1/(2*q^3 + 2*q)");
        assert_eq!(b.denominator_terms(), vec![(0, rat(1, 1)), (2, rat(1, 1))]);
        assert_eq!(b.numerator_terms(), vec![(-1, rat(1, 2))]);
    }

    #[test]
    fn text_round_trip() {
        for t in ["q^2 - 1 + q^-2", "-q", "3/2*q^4 - 7", "0", "(q + 1)/(1 - 2*q^2)"] {
            let v = s(t);
            assert_eq!(s(&v.to_string()), v, "{t}");
        }
        assert_eq!(s("q^2 - 1 + q^-2").to_string(), "q^2 - 1 + q^-2");
    }

    #[test]
    fn json_round_trip() {
        let v = s("(q^3 - 2/3)/(q^2 + q^-1)");
        let j = serde_json::to_string(&v).unwrap();
        let back: QScalar = serde_json::from_str(&j).unwrap();
        assert_eq!(back, v);
        assert_eq!(serde_json::to_string(&back).unwrap(), j);
        assert_eq!(serde_json::to_string(&qint(2)).unwrap(), r#"{"num":[[-1,"1"],[1,"1"]],"den":[[0,"1"]]}"#);
    }

    #[test]
    fn derivative_at_one() {
        let d = (QScalar::q_pow(3) / (QScalar::q() + QScalar::one())).derivative();
        // (3q^2(q+1) - q^3)/(q+1)^2 at q = 1 is 5/4
        assert_eq!(d.eval_at(&rat(1, 1)).unwrap(), rat(5, 4));
    }

    fn small_scalar() -> impl Strategy<Value = QScalar> {
        let laurent = prop::collection::vec((-3i32..=3, -4i64..=4), 0..4)
            .prop_map(|t| QScalar::laurent(t.into_iter().map(|(e, c)| (e, rat(c, 1)))));
        (laurent.clone(), laurent).prop_map(|(n, d)| if d.is_zero() { n } else { n / d })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_axioms(a in small_scalar(), b in small_scalar(), c in small_scalar()) {
            prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &b, &b * &a);
            if !b.is_zero() {
                prop_assert_eq!(&(&a / &b) * &b, a.clone());
            }
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn eval_is_homomorphism(a in small_scalar(), b in small_scalar(), num in 1i64..7, den in 1i64..5) {
            let q0 = rat(num, den);
            if let (Ok(x), Ok(y)) = (a.eval_at(&q0), b.eval_at(&q0)) {
                prop_assert_eq!((&a + &b).eval_at(&q0).unwrap(), &x + &y);
                prop_assert_eq!((&a * &b).eval_at(&q0).unwrap(), &x * &y);
            }
        }

        #[test]
        fn text_and_json_round_trip(a in small_scalar()) {
            let t: QScalar = a.to_string().parse().unwrap();
            prop_assert_eq!(&t, &a);
            let j: QScalar = serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
            prop_assert_eq!(j, a);
        }
    }
}
