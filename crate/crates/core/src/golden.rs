//! Exact arithmetic in the golden ring ℤ[τ] and the quadratic field ℚ(√5).
//!
//! Every lattice coordinate in the crate is a [`GoldenInt`] `a + bτ` with
//! arbitrary-precision integer parts; every inner-space or window coordinate is
//! a [`GoldenRat`] `p + q√5` with arbitrary-precision rational parts. The only
//! irrational scale outside ℚ(√5) that ever appears is the Elser-Sloane window
//! factor κ = τ/√(4+2τ), which is confined to [`KappaScaledRat`] and resolved by
//! [`kappa_compare`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use crate::error::ParseError;

/// Sign of `p + q√5` for integers `p`, `q`.
fn sign_int_surd(p: &BigInt, q: &BigInt) -> i8 {
    let sp = signum_int(p);
    let sq = signum_int(q);
    if sq == 0 {
        return sp;
    }
    if sp == 0 || sp == sq {
        return sq;
    }
    // opposite signs: the larger of p² and 5q² wins
    let p2 = p * p;
    let q2 = q * q * 5;
    match p2.cmp(&q2) {
        Ordering::Greater => sp,
        Ordering::Less => sq,
        Ordering::Equal => 0,
    }
}

fn signum_int(x: &BigInt) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

fn signum_rat(x: &BigRational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

fn ord_from_sign(s: i8) -> Ordering {
    s.cmp(&0)
}

// ---------------------------------------------------------------------------
// GoldenInt
// ---------------------------------------------------------------------------

/// An element `a + bτ` of ℤ[τ], τ = (1+√5)/2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GoldenInt {
    /// Rational part.
    pub a: BigInt,
    /// Coefficient of τ.
    pub b: BigInt,
}

impl GoldenInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        GoldenInt {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn zero() -> Self {
        GoldenInt::new(0, 0)
    }

    pub fn one() -> Self {
        GoldenInt::new(1, 0)
    }

    pub fn tau() -> Self {
        GoldenInt::new(0, 1)
    }

    /// τ² = 1 + τ.
    pub fn tau_squared() -> Self {
        GoldenInt::new(1, 1)
    }

    /// 1 − τ = −1/τ, the Galois conjugate of τ.
    pub fn tau_conj() -> Self {
        GoldenInt::new(1, -1)
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        GoldenInt::new(n, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Galois conjugation τ ↦ 1 − τ: `(a + bτ)* = (a + b) − bτ`.
    pub fn star(&self) -> GoldenInt {
        GoldenInt {
            a: &self.a + &self.b,
            b: -&self.b,
        }
    }

    /// Field norm `x · x* = a² + ab − b²`.
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a + &self.a * &self.b - &self.b * &self.b
    }

    pub fn pow(&self, mut k: u32) -> GoldenInt {
        let mut base = self.clone();
        let mut acc = GoldenInt::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// Exact sign of the real number `a + bτ`.
    pub fn sign(&self) -> i8 {
        // a + bτ = ((2a + b) + b√5) / 2
        let p = &self.a * 2 + &self.b;
        sign_int_surd(&p, &self.b)
    }

    pub fn abs(&self) -> GoldenInt {
        if self.sign() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn to_rat(&self) -> GoldenRat {
        let two = BigInt::from(2);
        GoldenRat {
            p: BigRational::from_integer(self.a.clone())
                + BigRational::new(self.b.clone(), two.clone()),
            q: BigRational::new(self.b.clone(), two),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_rat().to_f64()
    }

    /// Exact division by an integer, if the quotient stays in ℤ[τ].
    pub fn div_exact(&self, d: &BigInt) -> Option<GoldenInt> {
        if d.is_zero() {
            return None;
        }
        let (qa, ra) = self.a.div_rem(d);
        let (qb, rb) = self.b.div_rem(d);
        (ra.is_zero() && rb.is_zero()).then_some(GoldenInt { a: qa, b: qb })
    }

    /// Integer gcd of the two parts (zero for zero).
    pub fn content(&self) -> BigInt {
        self.a.gcd(&self.b)
    }
}

impl Ord for GoldenInt {
    fn cmp(&self, other: &Self) -> Ordering {
        ord_from_sign((self - other).sign())
    }
}

impl PartialOrd for GoldenInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GoldenInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_negative() {
            write!(f, "{}-{}*tau", self.a, -&self.b)
        } else {
            write!(f, "{}+{}*tau", self.a, self.b)
        }
    }
}

impl FromStr for GoldenInt {
    type Err = ParseError;

    /// Accepts the canonical `a+b*tau` form, a bare integer, or a bare
    /// `b*tau` term.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || ParseError::Golden(s.to_string());
        if t.is_empty() {
            return Err(bad());
        }
        let Some(body) = t.strip_suffix("tau") else {
            let a = t.parse::<BigInt>().map_err(|_| bad())?;
            return Ok(GoldenInt::new(a, 0));
        };
        let body = body.strip_suffix('*').unwrap_or(body);
        let split = body
            .char_indices()
            .skip(1)
            .filter(|(_, c)| *c == '+' || *c == '-')
            .map(|(i, _)| i)
            .last();
        let (a_str, b_str) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let a = a_str.parse::<BigInt>().map_err(|_| bad())?;
        let b = match b_str {
            "" | "+" => BigInt::one(),
            "-" => -BigInt::one(),
            other => other
                .trim_start_matches('+')
                .parse::<BigInt>()
                .map_err(|_| bad())?,
        };
        Ok(GoldenInt { a, b })
    }
}

macro_rules! forward_ref_binop {
    ($ty:ident, $trait:ident, $method:ident) => {
        impl $trait<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a $ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &'a $ty) -> $ty {
                (&self).$method(rhs)
            }
        }
        impl<'a> $trait<$ty> for &'a $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                self.$method(&rhs)
            }
        }
    };
}

impl<'b> Add<&'b GoldenInt> for &GoldenInt {
    type Output = GoldenInt;
    fn add(self, rhs: &'b GoldenInt) -> GoldenInt {
        GoldenInt {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl<'b> Sub<&'b GoldenInt> for &GoldenInt {
    type Output = GoldenInt;
    fn sub(self, rhs: &'b GoldenInt) -> GoldenInt {
        GoldenInt {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl<'b> Mul<&'b GoldenInt> for &GoldenInt {
    type Output = GoldenInt;
    /// `(a+τb)(c+τd) = (ac+bd) + τ(ad+bc+bd)`.
    fn mul(self, rhs: &'b GoldenInt) -> GoldenInt {
        let bd = &self.b * &rhs.b;
        GoldenInt {
            a: &self.a * &rhs.a + &bd,
            b: &self.a * &rhs.b + &self.b * &rhs.a + bd,
        }
    }
}

forward_ref_binop!(GoldenInt, Add, add);
forward_ref_binop!(GoldenInt, Sub, sub);
forward_ref_binop!(GoldenInt, Mul, mul);

impl Neg for GoldenInt {
    type Output = GoldenInt;
    fn neg(self) -> GoldenInt {
        GoldenInt {
            a: -self.a,
            b: -self.b,
        }
    }
}

impl Neg for &GoldenInt {
    type Output = GoldenInt;
    fn neg(self) -> GoldenInt {
        GoldenInt {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

impl AddAssign<&GoldenInt> for GoldenInt {
    fn add_assign(&mut self, rhs: &GoldenInt) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl SubAssign<&GoldenInt> for GoldenInt {
    fn sub_assign(&mut self, rhs: &GoldenInt) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl Mul<&GoldenInt> for &BigInt {
    type Output = GoldenInt;
    fn mul(self, rhs: &GoldenInt) -> GoldenInt {
        GoldenInt {
            a: self * &rhs.a,
            b: self * &rhs.b,
        }
    }
}

/// Ring product in ℤ[τ].
pub fn golden_mul(x: &GoldenInt, y: &GoldenInt) -> GoldenInt {
    x * y
}

/// Galois conjugation on ℤ[τ].
pub fn star(x: &GoldenInt) -> GoldenInt {
    x.star()
}

// ---------------------------------------------------------------------------
// GoldenRat
// ---------------------------------------------------------------------------

/// An element `p + q√5` of ℚ(√5).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GoldenRat {
    pub p: BigRational,
    pub q: BigRational,
}

impl Default for GoldenRat {
    fn default() -> Self {
        GoldenRat::zero()
    }
}

impl GoldenRat {
    pub fn new(p: BigRational, q: BigRational) -> Self {
        GoldenRat { p, q }
    }

    pub fn zero() -> Self {
        GoldenRat::from_int(0)
    }

    pub fn one() -> Self {
        GoldenRat::from_int(1)
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        GoldenRat {
            p: BigRational::from_integer(n.into()),
            q: BigRational::zero(),
        }
    }

    /// The rational `n/d`.
    pub fn ratio(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Self {
        GoldenRat {
            p: BigRational::new(n.into(), d.into()),
            q: BigRational::zero(),
        }
    }

    pub fn from_rational(r: BigRational) -> Self {
        GoldenRat {
            p: r,
            q: BigRational::zero(),
        }
    }

    /// `(p_num/p_den) + (q_num/q_den)·√5`.
    pub fn from_parts(p_num: i64, p_den: i64, q_num: i64, q_den: i64) -> Self {
        GoldenRat {
            p: BigRational::new(p_num.into(), p_den.into()),
            q: BigRational::new(q_num.into(), q_den.into()),
        }
    }

    pub fn sqrt5() -> Self {
        GoldenRat {
            p: BigRational::zero(),
            q: BigRational::one(),
        }
    }

    pub fn tau() -> Self {
        GoldenInt::tau().to_rat()
    }

    /// 1/τ = τ − 1.
    pub fn tau_inv() -> Self {
        GoldenInt::new(-1, 1).to_rat()
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    /// √5 ↦ −√5, which restricts to τ ↦ 1 − τ on ℤ[τ].
    pub fn star(&self) -> GoldenRat {
        GoldenRat {
            p: self.p.clone(),
            q: -&self.q,
        }
    }

    /// Field norm `p² − 5q²`.
    pub fn norm(&self) -> BigRational {
        &self.p * &self.p - &self.q * &self.q * BigRational::from_integer(5.into())
    }

    pub fn inverse(&self) -> Option<GoldenRat> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(GoldenRat {
            p: &self.p / &n,
            q: -&self.q / &n,
        })
    }

    /// Exact sign of `p + q√5` as a real number.
    pub fn sign(&self) -> i8 {
        golden_sign(self)
    }

    pub fn abs(&self) -> GoldenRat {
        if self.sign() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn square(&self) -> GoldenRat {
        self * self
    }

    pub fn to_f64(&self) -> f64 {
        let p = self.p.to_f64().unwrap_or(f64::NAN);
        let q = self.q.to_f64().unwrap_or(f64::NAN);
        p + q * 5f64.sqrt()
    }

    /// Inverse of [`GoldenInt::to_rat`]; `None` unless the value lies in ℤ[τ].
    pub fn to_golden_int(&self) -> Option<GoldenInt> {
        // a + bτ = (a + b/2) + (b/2)√5
        let b = &self.q * BigRational::from_integer(2.into());
        let a = &self.p - &self.q;
        (b.is_integer() && a.is_integer()).then(|| GoldenInt {
            a: a.to_integer(),
            b: b.to_integer(),
        })
    }

    /// `self = G / m` with `G ∈ ℤ[τ]` and the least positive integer `m`.
    pub fn to_scaled_int(&self) -> (GoldenInt, BigInt) {
        let a = &self.p - &self.q;
        let b = &self.q * BigRational::from_integer(2.into());
        let m = a.denom().lcm(b.denom());
        let mr = BigRational::from_integer(m.clone());
        (
            GoldenInt {
                a: (a * &mr).to_integer(),
                b: (b * &mr).to_integer(),
            },
            m,
        )
    }

    /// Least common denominator of both rational parts.
    pub fn denominator_lcm(&self) -> BigInt {
        self.p.denom().lcm(self.q.denom())
    }

    pub fn scale_int(&self, k: &BigInt) -> GoldenRat {
        let k = BigRational::from_integer(k.clone());
        GoldenRat {
            p: &self.p * &k,
            q: &self.q * &k,
        }
    }

    pub fn scale(&self, k: &BigRational) -> GoldenRat {
        GoldenRat {
            p: &self.p * k,
            q: &self.q * k,
        }
    }
}

/// Exact sign of `p + q√5`: compare the signs of `p`, `q` and, when they
/// differ, compare `p²` against `5q²`.
pub fn golden_sign(x: &GoldenRat) -> i8 {
    let sp = signum_rat(&x.p);
    let sq = signum_rat(&x.q);
    if sq == 0 {
        return sp;
    }
    if sp == 0 || sp == sq {
        return sq;
    }
    let p2 = &x.p * &x.p;
    let q2 = &x.q * &x.q * BigRational::from_integer(5.into());
    match p2.cmp(&q2) {
        Ordering::Greater => sp,
        Ordering::Less => sq,
        Ordering::Equal => 0,
    }
}

impl Ord for GoldenRat {
    fn cmp(&self, other: &Self) -> Ordering {
        ord_from_sign((self - other).sign())
    }
}

impl PartialOrd for GoldenRat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<&GoldenInt> for GoldenRat {
    fn from(x: &GoldenInt) -> Self {
        x.to_rat()
    }
}

impl From<GoldenInt> for GoldenRat {
    fn from(x: GoldenInt) -> Self {
        x.to_rat()
    }
}

impl<'b> Add<&'b GoldenRat> for &GoldenRat {
    type Output = GoldenRat;
    fn add(self, rhs: &'b GoldenRat) -> GoldenRat {
        GoldenRat {
            p: &self.p + &rhs.p,
            q: &self.q + &rhs.q,
        }
    }
}

impl<'b> Sub<&'b GoldenRat> for &GoldenRat {
    type Output = GoldenRat;
    fn sub(self, rhs: &'b GoldenRat) -> GoldenRat {
        GoldenRat {
            p: &self.p - &rhs.p,
            q: &self.q - &rhs.q,
        }
    }
}

impl<'b> Mul<&'b GoldenRat> for &GoldenRat {
    type Output = GoldenRat;
    fn mul(self, rhs: &'b GoldenRat) -> GoldenRat {
        let five = BigRational::from_integer(5.into());
        GoldenRat {
            p: &self.p * &rhs.p + &self.q * &rhs.q * five,
            q: &self.p * &rhs.q + &self.q * &rhs.p,
        }
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl<'b> Div<&'b GoldenRat> for &GoldenRat {
    type Output = GoldenRat;
    /// Panics on division by zero, like the primitive numeric types.
    fn div(self, rhs: &'b GoldenRat) -> GoldenRat {
        let inv = rhs.inverse().expect("division by zero in Q(sqrt5)");
        self * &inv
    }
}

forward_ref_binop!(GoldenRat, Add, add);
forward_ref_binop!(GoldenRat, Sub, sub);
forward_ref_binop!(GoldenRat, Mul, mul);
forward_ref_binop!(GoldenRat, Div, div);

impl Neg for GoldenRat {
    type Output = GoldenRat;
    fn neg(self) -> GoldenRat {
        GoldenRat {
            p: -self.p,
            q: -self.q,
        }
    }
}

impl Neg for &GoldenRat {
    type Output = GoldenRat;
    fn neg(self) -> GoldenRat {
        GoldenRat {
            p: -&self.p,
            q: -&self.q,
        }
    }
}

impl AddAssign<&GoldenRat> for GoldenRat {
    fn add_assign(&mut self, rhs: &GoldenRat) {
        self.p += &rhs.p;
        self.q += &rhs.q;
    }
}

impl SubAssign<&GoldenRat> for GoldenRat {
    fn sub_assign(&mut self, rhs: &GoldenRat) {
        self.p -= &rhs.p;
        self.q -= &rhs.q;
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GoldenRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = fmt_rational(&self.p);
        if self.q.is_negative() {
            write!(f, "{}-{}*sqrt5", p, fmt_rational(&-&self.q))
        } else {
            write!(f, "{}+{}*sqrt5", p, fmt_rational(&self.q))
        }
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim_start_matches('+');
    if let Some((int, frac)) = s.split_once('.') {
        // plain decimal literal
        let neg = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches('-'), frac);
        let n: BigInt = digits.parse().ok()?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let r = BigRational::new(n, d);
        return Some(if neg { -r } else { r });
    }
    s.parse::<BigRational>().ok()
}

impl FromStr for GoldenRat {
    type Err = ParseError;

    /// Accepts `p+q*sqrt5`, a bare rational (`3/2`, `-4`, `0.5`), or any form
    /// accepted by [`GoldenInt::from_str`] (`a+b*tau`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || ParseError::Golden(s.to_string());
        if t.is_empty() {
            return Err(bad());
        }
        if t.ends_with("tau") {
            return Ok(t.parse::<GoldenInt>()?.to_rat());
        }
        let Some(body) = t.strip_suffix("sqrt5") else {
            return parse_rational(&t).map(GoldenRat::from_rational).ok_or_else(bad);
        };
        let body = body.strip_suffix('*').unwrap_or(body);
        let split = body
            .char_indices()
            .skip(1)
            .filter(|(i, c)| {
                (*c == '+' || *c == '-') && !body[..*i].ends_with('/') && !body[..*i].ends_with('e')
            })
            .map(|(i, _)| i)
            .last();
        let (p_str, q_str) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let p = parse_rational(p_str).ok_or_else(bad)?;
        let q = match q_str {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            other => parse_rational(other).ok_or_else(bad)?,
        };
        Ok(GoldenRat { p, q })
    }
}

// ---------------------------------------------------------------------------
// κ-scaled values
// ---------------------------------------------------------------------------

/// `base · κ^kappa_power` with κ = τ/√(4+2τ) and `kappa_power ∈ {0, 1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KappaScaledRat {
    pub base: GoldenRat,
    pub kappa_power: u8,
}

impl KappaScaledRat {
    pub fn new(base: GoldenRat, kappa_power: u8) -> Self {
        assert!(kappa_power <= 1, "kappa_power must be 0 or 1");
        KappaScaledRat { base, kappa_power }
    }

    /// κ² = τ²/(4+2τ) = (5+√5)/20.
    pub fn kappa_squared() -> GoldenRat {
        GoldenRat::from_parts(1, 4, 1, 20)
    }

    pub fn kappa_f64() -> f64 {
        Self::kappa_squared().to_f64().sqrt()
    }

    /// Multiply by κ, folding κ² back into the ℚ(√5) base.
    pub fn mul_kappa(&self) -> KappaScaledRat {
        if self.kappa_power == 0 {
            KappaScaledRat {
                base: self.base.clone(),
                kappa_power: 1,
            }
        } else {
            KappaScaledRat {
                base: &self.base * &Self::kappa_squared(),
                kappa_power: 0,
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        let s = if self.kappa_power == 1 {
            Self::kappa_f64()
        } else {
            1.0
        };
        self.base.to_f64() * s
    }
}

/// Exact ordering of `l` against `r.base · κ^r.kappa_power`.
///
/// For the κ case the signs decide unless both sides share a sign, in which
/// case `l²` is compared with `κ²·base²` inside ℚ(√5).
pub fn kappa_compare(l: &GoldenRat, r: &KappaScaledRat) -> Ordering {
    if r.kappa_power == 0 {
        return l.cmp(&r.base);
    }
    let sl = l.sign();
    let sr = r.base.sign();
    if sl != sr {
        return sl.cmp(&sr);
    }
    if sl == 0 {
        return Ordering::Equal;
    }
    let lhs = l.square();
    let rhs = &r.base.square() * &KappaScaledRat::kappa_squared();
    let mag = lhs.cmp(&rhs);
    if sl > 0 {
        mag
    } else {
        mag.reverse()
    }
}

/// A vector over ℚ(√5) written as `G / m` with `G ∈ ℤ[τ]ⁿ` and `m > 0`.
pub fn scaled_int_vector(v: &[GoldenRat]) -> (Vec<GoldenInt>, BigInt) {
    let parts: Vec<(GoldenInt, BigInt)> = v.iter().map(GoldenRat::to_scaled_int).collect();
    let m = parts.iter().fold(BigInt::one(), |acc, (_, d)| acc.lcm(d));
    let g = parts.into_iter().map(|(x, d)| &(&m / &d) * &x).collect();
    (g, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gi(a: i64, b: i64) -> GoldenInt {
        GoldenInt::new(a, b)
    }

    #[test]
    fn golden_mul_examples() {
        assert_eq!(golden_mul(&gi(0, 1), &gi(0, 1)), gi(1, 1));
        // (1+τ)² = 1 + 2τ + τ² = 2 + 3τ
        assert_eq!(golden_mul(&gi(1, 1), &gi(1, 1)), gi(2, 3));
        assert_eq!(golden_mul(&gi(1, 0), &gi(-7, 11)), gi(-7, 11));
    }

    #[test]
    fn star_examples() {
        assert_eq!(star(&gi(0, 1)), gi(1, -1));
        assert_eq!(star(&gi(1, 0)), gi(1, 0));
        assert_eq!(star(&gi(1, 1)), gi(2, -1));
    }

    #[test]
    fn sign_examples() {
        assert_eq!(golden_sign(&GoldenRat::from_parts(1, 1, -1, 1)), -1);
        assert_eq!(golden_sign(&GoldenRat::zero()), 0);
        assert_eq!(golden_sign(&GoldenRat::from_parts(3, 1, 1, 1)), 1);
        // opposite signs, decided by p² against 5q²
        assert_eq!(golden_sign(&GoldenRat::from_parts(3, 1, -1, 1)), 1);
        assert_eq!(golden_sign(&GoldenRat::from_parts(-3, 1, 1, 1)), -1);
    }

    #[test]
    fn golden_int_sign_near_zero() {
        // 34τ − 55 ≈ 0.0132
        assert_eq!(gi(-55, 34).sign(), 1);
        assert_eq!(gi(55, -34).sign(), -1);
        assert_eq!(gi(0, 0).sign(), 0);
    }

    #[test]
    fn kappa_examples() {
        let one = GoldenRat::one();
        let k1 = KappaScaledRat::new(one.clone(), 1);
        assert_eq!(kappa_compare(&GoldenRat::zero(), &k1), Ordering::Less);
        // κ·κ collapses to κ² in the field
        let kk = k1.mul_kappa();
        assert_eq!(kk.kappa_power, 0);
        assert_eq!(
            kappa_compare(&KappaScaledRat::kappa_squared(), &kk),
            Ordering::Equal
        );
        assert_eq!(kappa_compare(&one, &k1), Ordering::Greater);
        // κ² expressed through τ: τ²/(4+2τ)
        let tau2 = GoldenInt::tau_squared().to_rat();
        let denom = GoldenInt::new(4, 2).to_rat();
        assert_eq!(&tau2 / &denom, KappaScaledRat::kappa_squared());
    }

    #[test]
    fn kappa_negative_sides() {
        let minus_one = KappaScaledRat::new(GoldenRat::from_int(-1), 1);
        assert_eq!(
            kappa_compare(&GoldenRat::from_int(-1), &minus_one),
            Ordering::Less
        );
        assert_eq!(
            kappa_compare(&GoldenRat::ratio(-1, 2), &minus_one),
            Ordering::Greater
        );
    }

    #[test]
    fn text_round_trip() {
        for s in ["3+2*tau", "-1-2*tau", "0+0*tau"] {
            let x: GoldenInt = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
        }
        assert_eq!("tau".parse::<GoldenInt>().unwrap(), gi(0, 1));
        assert_eq!("-7".parse::<GoldenInt>().unwrap(), gi(-7, 0));
        for s in ["3/2+1/2*sqrt5", "-1/2-1/2*sqrt5", "0+0*sqrt5", "5-3/7*sqrt5"] {
            let x: GoldenRat = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
        }
        assert_eq!("1/2".parse::<GoldenRat>().unwrap(), GoldenRat::ratio(1, 2));
        assert_eq!("0.25".parse::<GoldenRat>().unwrap(), GoldenRat::ratio(1, 4));
        assert_eq!("1+1*tau".parse::<GoldenRat>().unwrap(), gi(1, 1).to_rat());
        assert!("1+x*tau".parse::<GoldenInt>().is_err());
        assert!("".parse::<GoldenRat>().is_err());
    }

    #[test]
    fn conversion_to_sqrt5_basis() {
        // τ² = 3/2 + 1/2·√5
        assert_eq!(gi(1, 1).to_rat(), GoldenRat::from_parts(3, 2, 1, 2));
        assert_eq!(GoldenRat::from_parts(3, 2, 1, 2).to_golden_int(), Some(gi(1, 1)));
        assert_eq!(GoldenRat::ratio(1, 2).to_golden_int(), None);
    }

    #[test]
    fn inverse_of_unit() {
        let t = GoldenRat::tau();
        assert_eq!(&t * &t.inverse().unwrap(), GoldenRat::one());
        assert_eq!(t.inverse().unwrap(), GoldenRat::tau_inv());
        assert!(GoldenRat::zero().inverse().is_none());
    }
}
