//! Exact scalars: arbitrary-precision rationals and elements of a real
//! quadratic field `Q(sqrt(d))`.
//!
//! Every geometric predicate in the crate is decided on these values, so
//! nothing here ever rounds. A [`Scalar`] with zero irrational part is a
//! plain rational and mixes freely with any field; two scalars with nonzero
//! irrational parts over different discriminants cannot be combined.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Canonical arbitrary-precision rational (denominator positive, reduced).
pub type Rational = num_rational::BigRational;

/// Discriminant used for the Perles coordinatization.
pub const DEFAULT_DISCRIMINANT: u32 = 5;

/// Builds the rational `n / d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `a + b*sqrt(d)` with `a`, `b` rational and `d` square-free, `d > 1`.
///
/// Canonical form: when `b == 0` the discriminant is stored as `0`, so a
/// rational has exactly one representation regardless of which field it was
/// computed in. Equality and hashing are therefore structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    a: Rational,
    b: Rational,
    d: u32,
}

fn is_square_free(d: u32) -> bool {
    if d < 2 {
        return false;
    }
    let mut k = 2u32;
    while k.saturating_mul(k) <= d {
        if d.is_multiple_of(k * k) {
            return false;
        }
        k += 1;
    }
    true
}

fn join_fields(d1: u32, d2: u32) -> u32 {
    match (d1, d2) {
        (0, d) | (d, 0) => d,
        (x, y) if x == y => x,
        (x, y) => panic!("mixed quadratic fields Q(sqrt({x})) and Q(sqrt({y}))"),
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(rat(n, d))
    }

    pub fn from_rational(a: Rational) -> Self {
        Scalar {
            a,
            b: Rational::zero(),
            d: 0,
        }
    }

    /// `a + b*sqrt(d)`; fails unless `d` is square-free and greater than one.
    pub fn quadratic(a: Rational, b: Rational, d: u32) -> Result<Self> {
        if !is_square_free(d) {
            return Err(Error::Discriminant(d));
        }
        Ok(Self::normalized(a, b, d))
    }

    /// `sqrt(d)` itself.
    pub fn sqrt(d: u32) -> Result<Self> {
        Self::quadratic(Rational::zero(), Rational::one(), d)
    }

    fn normalized(a: Rational, b: Rational, d: u32) -> Self {
        let d = if b.is_zero() { 0 } else { d };
        Scalar { a, b, d }
    }

    /// Rational part.
    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    /// Coefficient of `sqrt(d)`.
    pub fn irrational_part(&self) -> &Rational {
        &self.b
    }

    /// Discriminant, or `0` for a rational value.
    pub fn discriminant(&self) -> u32 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.d == 0
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact sign as `-1`, `0` or `+1`.
    pub fn signum(&self) -> i32 {
        let sa = rsign(&self.a);
        let sb = rsign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // opposite signs: compare a^2 with b^2 d (never equal, sqrt(d) irrational)
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * Rational::from_integer(BigInt::from(self.d));
        if a2 > b2d {
            sa
        } else {
            sb
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Field conjugate `a - b*sqrt(d)`.
    pub fn conjugate(&self) -> Self {
        Scalar {
            a: self.a.clone(),
            b: -&self.b,
            d: self.d,
        }
    }

    pub fn checked_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_rational() {
            return Ok(Self::from_rational(self.a.recip()));
        }
        let norm = &self.a * &self.a
            - &self.b * &self.b * Rational::from_integer(BigInt::from(self.d));
        Ok(Self::normalized(&self.a / &norm, -&self.b / &norm, self.d))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.checked_inv()?)
    }

    /// Decimal approximation with `digits` significant digits. Display only.
    pub fn to_decimal(&self, digits: usize) -> String {
        let approx = self.approx_rational(digits as u32 + 10);
        rational_to_decimal(&approx, digits)
    }

    /// Rational approximation within `10^-precision` of the value.
    pub fn approx_rational(&self, precision: u32) -> Rational {
        if self.is_rational() {
            return self.a.clone();
        }
        let scale = BigInt::from(10u32).pow(precision);
        let root = (BigInt::from(self.d) * &scale * &scale).sqrt();
        let sqrt_d = Rational::new(root, scale);
        &self.a + &self.b * sqrt_d
    }

    /// Smallest integer `>= self`.
    pub fn ceil_int(&self) -> Scalar {
        let mut n = Scalar::from_rational(self.approx_rational(20).ceil());
        let one = Scalar::one();
        while &n - &one >= *self {
            n = &n - &one;
        }
        while n < *self {
            n = &n + &one;
        }
        n
    }

    /// Largest power of two `<= self`, for positive values.
    pub fn pow2_floor(&self) -> Scalar {
        assert!(self.signum() > 0, "pow2_floor of a non-positive value");
        let two = Scalar::from_int(2);
        let mut p = Scalar::one();
        while p > *self {
            p = &p / &two;
        }
        while &p * &two <= *self {
            p = &p * &two;
        }
        p
    }

    /// Nearest-ish `f64`, with relative error a few ulps even when the two
    /// parts nearly cancel.
    pub fn to_f64(&self) -> f64 {
        let fa = self.a.to_f64().unwrap_or(f64::NAN);
        if self.b.is_zero() {
            return fa;
        }
        let fb = self.b.to_f64().unwrap_or(f64::NAN) * f64::from(self.d).sqrt();
        let sum = fa + fb;
        if sum.abs() > 1e-3 * (fa.abs() + fb.abs()) {
            return sum;
        }
        // a + b*sqrt(d) = (a^2 - b^2 d) / (a - b*sqrt(d)), no cancellation below
        let norm = &self.a * &self.a - &self.b * &self.b * Rational::from_integer(BigInt::from(self.d));
        norm.to_f64().unwrap_or(f64::NAN) / (fa - fb)
    }
}

/// An affine point over `Q(sqrt d)` as integer homogeneous coordinates
/// `(X, Y, W)` with `W > 0` rational. Orientation tests then need no gcd work.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct IntPoint {
    a: [BigInt; 3],
    b: [BigInt; 2],
}

type Zd = (BigInt, BigInt);

fn zmul(x: &Zd, y: &Zd, d: &BigInt) -> Zd {
    (&x.0 * &y.0 + &x.1 * &y.1 * d, &x.0 * &y.1 + &x.1 * &y.0)
}

impl IntPoint {
    pub fn new(x: &Scalar, y: &Scalar) -> Self {
        let mut den = BigInt::one();
        for r in [&x.a, &x.b, &y.a, &y.b] {
            den = den.lcm(r.denom());
        }
        let int = |r: &Rational| r.numer() * (&den / r.denom());
        IntPoint {
            a: [int(&x.a), int(&y.a), den.clone()],
            b: [int(&x.b), int(&y.b)],
        }
    }

    fn coord(&self, k: usize) -> Zd {
        (self.a[k].clone(), if k < 2 { self.b[k].clone() } else { BigInt::zero() })
    }

    /// Sign of coordinate `k` (0 = x, 1 = y) of `t - self`.
    pub fn diff_sign(&self, t: &IntPoint, k: usize, d: u32) -> i32 {
        let (ra, rb) = (
            &t.a[k] * &self.a[2] - &self.a[k] * &t.a[2],
            &t.b[k] * &self.a[2] - &self.b[k] * &t.a[2],
        );
        int_quad_sign(&ra, &rb, &BigInt::from(d))
    }

    /// Orientation sign of the triangle `(self, p, q)`.
    pub fn orient(&self, p: &IntPoint, q: &IntPoint, d: u32) -> i32 {
        let rational = self.b.iter().chain(&p.b).chain(&q.b).all(|v| v.is_zero());
        if rational {
            let (o, p, q) = (&self.a, &p.a, &q.a);
            let det = &o[0] * (&p[1] * &q[2] - &p[2] * &q[1]) - &o[1] * (&p[0] * &q[2] - &p[2] * &q[0])
                + &o[2] * (&p[0] * &q[1] - &p[1] * &q[0]);
            return match det.sign() {
                Sign::Minus => -1,
                Sign::NoSign => 0,
                Sign::Plus => 1,
            };
        }
        let dd = BigInt::from(d);
        let m = |u: &IntPoint, v: &IntPoint, i: usize, j: usize| -> Zd {
            let (x, y) = (zmul(&u.coord(i), &v.coord(j), &dd), zmul(&u.coord(j), &v.coord(i), &dd));
            (x.0 - y.0, x.1 - y.1)
        };
        let t0 = zmul(&self.coord(0), &m(p, q, 1, 2), &dd);
        let t1 = zmul(&self.coord(1), &m(p, q, 0, 2), &dd);
        let t2 = zmul(&self.coord(2), &m(p, q, 0, 1), &dd);
        int_quad_sign(&(t0.0 - t1.0 + t2.0), &(t0.1 - t1.1 + t2.1), &dd)
    }
}

/// Sign of `a + b sqrt(d)` for integers.
fn int_quad_sign(a: &BigInt, b: &BigInt, d: &BigInt) -> i32 {
    let sg = |x: &BigInt| match x.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    };
    let (sa, sb) = (sg(a), sg(b));
    if sb == 0 || sa == sb {
        return if sa == 0 { sb } else { sa };
    }
    if sa == 0 {
        return sb;
    }
    if a * a > b * b * d {
        sa
    } else {
        sb
    }
}

fn rsign(r: &Rational) -> i32 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

fn rational_to_decimal(r: &Rational, digits: usize) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let r = r.abs();
    // find exponent e with 10^e <= r < 10^(e+1)
    let ten = Rational::from_integer(BigInt::from(10));
    let mut e: i64 = 0;
    let mut probe = r.clone();
    while probe >= ten {
        probe /= &ten;
        e += 1;
    }
    while probe < Rational::one() {
        probe *= &ten;
        e -= 1;
    }
    let frac_digits = (digits as i64 - 1 - e).max(0) as u32;
    let scaled = &r * Rational::from_integer(BigInt::from(10u32).pow(frac_digits));
    let mut int = scaled.round().to_integer().to_string();
    if frac_digits > 0 {
        while int.len() <= frac_digits as usize {
            int.insert(0, '0');
        }
        let split = int.len() - frac_digits as usize;
        int.insert(split, '.');
        let trimmed = int.trim_end_matches('0').trim_end_matches('.');
        int = trimmed.to_string();
    }
    if neg {
        format!("-{int}")
    } else {
        int
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    /// `p/q` for rationals, `p/q+r/s*sqrt(d)` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", fmt_rational(&self.a));
        }
        let sep = if self.b.is_negative() { "" } else { "+" };
        write!(
            f,
            "{}{}{}*sqrt({})",
            fmt_rational(&self.a),
            sep,
            fmt_rational(&self.b),
            self.d
        )
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses `p`, `p/q`, `p/q+r/s*sqrt(d)` or `p/q-r/s*sqrt(d)`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(n, d))
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let Some(star) = s.find("*sqrt(") else {
            return Ok(Scalar::from_rational(parse_rational(s)?));
        };
        let body = &s[..star];
        let tail = &s[star + 6..];
        let d: u32 = tail
            .strip_suffix(')')
            .and_then(|t| t.trim().parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad sqrt term in {s:?}")))?;
        // split body at the sign that starts the irrational coefficient
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(i, c)| (c == '+' || c == '-') && !body[..i].ends_with(['+', '-']))
            .map(|(i, _)| i)
            .last()
            .ok_or_else(|| Error::Parse(format!("missing rational part in {s:?}")))?;
        let a = parse_rational(&body[..split])?;
        let b_text = body[split..].trim_start_matches('+');
        let b = parse_rational(b_text)?;
        Scalar::quadratic(a, b, d)
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::from_rational(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let d = join_fields(self.d, rhs.d);
        Scalar::normalized(&self.a + &rhs.a, &self.b + &rhs.b, d)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let d = join_fields(self.d, rhs.d);
        Scalar::normalized(&self.a - &rhs.a, &self.b - &rhs.b, d)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_rational() && rhs.is_rational() {
            return Scalar::from_rational(&self.a * &rhs.a);
        }
        let d = join_fields(self.d, rhs.d);
        let dd = Rational::from_integer(BigInt::from(d));
        let a = &self.a * &rhs.a + &self.b * &rhs.b * dd;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Scalar::normalized(a, b, d)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    /// Panics on division by zero; use [`Scalar::checked_div`] otherwise.
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            a: -&self.a,
            b: -&self.b,
            d: self.d,
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);
