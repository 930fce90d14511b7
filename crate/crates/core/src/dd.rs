//! Double-double arithmetic: an unevaluated sum `hi + lo` of two f64 values
//! with `|lo| <= ulp(hi)/2`, giving about 31 significant decimal digits.
//!
//! The basic operations follow the usual error-free transformations
//! (Knuth two-sum, fused multiply-add two-product). Elementary functions use
//! argument reduction plus Taylor series, or one Newton step from the f64
//! result where that is cheaper.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::num::FpCategory;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, RemAssign, Sub, SubAssign};
use std::str::FromStr;

use num_traits::{Float, FloatConst, FromPrimitive, Num, One, ToPrimitive, Zero};

#[derive(Clone, Copy, Default, PartialEq)]
pub struct DoubleDouble {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleDouble {
    pub const ZERO: Self = Self::c(0.0, 0.0);
    pub const ONE: Self = Self::c(1.0, 0.0);
    pub const PI: Self = Self::c(std::f64::consts::PI, 1.2246467991473532e-16);
    pub const TAU: Self = Self::c(std::f64::consts::TAU, 2.4492935982947064e-16);
    pub const FRAC_PI_2: Self = Self::c(std::f64::consts::FRAC_PI_2, 6.123233995736766e-17);
    pub const FRAC_PI_4: Self = Self::c(std::f64::consts::FRAC_PI_4, 3.061616997868383e-17);
    pub const E: Self = Self::c(std::f64::consts::E, 1.4456468917292502e-16);
    pub const LN_2: Self = Self::c(std::f64::consts::LN_2, 2.3190468138462996e-17);
    pub const LN_10: Self = Self::c(std::f64::consts::LN_10, -2.1707562233822494e-16);
    pub const SQRT_2: Self = Self::c(std::f64::consts::SQRT_2, -9.667293313452913e-17);
    pub const EULER: Self = Self::c(0.5772156649015329, -4.942915152430645e-18);
    /// 2^-104.
    pub const EPSILON: Self = Self::c(4.930380657631324e-32, 0.0);
    pub const NAN: Self = Self::c(f64::NAN, 0.0);
    pub const INFINITY: Self = Self::c(f64::INFINITY, 0.0);
    pub const NEG_INFINITY: Self = Self::c(f64::NEG_INFINITY, 0.0);

    const fn c(hi: f64, lo: f64) -> Self {
        DoubleDouble { hi, lo }
    }

    /// Builds a normalised value from an arbitrary pair.
    pub fn new(hi: f64, lo: f64) -> Self {
        let (h, l) = two_sum(hi, lo);
        Self::fin(h, l)
    }

    #[inline]
    fn fin(hi: f64, lo: f64) -> Self {
        if hi.is_finite() {
            DoubleDouble { hi, lo }
        } else {
            DoubleDouble { hi, lo: 0.0 }
        }
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    pub fn from_i64_exact(n: i64) -> Self {
        let hi = n as f64;
        let lo = (n as i128 - hi as i128) as f64;
        DoubleDouble { hi, lo }
    }

    pub fn from_u64_exact(n: u64) -> Self {
        let hi = n as f64;
        let lo = (n as i128 - hi as i128) as f64;
        DoubleDouble { hi, lo }
    }

    #[inline]
    pub fn add_f64(self, b: f64) -> Self {
        let (s1, s2) = two_sum(self.hi, b);
        let (h, l) = quick_two_sum(s1, s2 + self.lo);
        Self::fin(h, l)
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Self {
        let (p1, p2) = two_prod(self.hi, b);
        let (h, l) = quick_two_sum(p1, p2 + self.lo * b);
        Self::fin(h, l)
    }

    pub fn div_f64(self, b: f64) -> Self {
        let q1 = self.hi / b;
        if !q1.is_finite() {
            return Self::c(q1, 0.0);
        }
        let (p1, p2) = two_prod(q1, b);
        let (s, e) = two_sum(self.hi, -p1);
        let e = e + self.lo - p2;
        let q2 = (s + e) / b;
        let (h, l) = quick_two_sum(q1, q2);
        Self::fin(h, l)
    }

    #[inline]
    pub fn sqr(self) -> Self {
        let (p1, p2) = two_prod(self.hi, self.hi);
        let p2 = p2 + 2.0 * self.hi * self.lo + self.lo * self.lo;
        let (h, l) = quick_two_sum(p1, p2);
        Self::fin(h, l)
    }

    /// Multiplies by a power of two; exact unless the result leaves the f64 range.
    pub fn ldexp(self, k: i32) -> Self {
        let k1 = k / 2;
        let k2 = k - k1;
        let (a, b) = (2f64.powi(k1), 2f64.powi(k2));
        Self::fin(self.hi * a * b, self.lo * a * b)
    }

    pub fn pow10(n: i32) -> Self {
        if n.abs() > 600 {
            return if n > 0 { Self::INFINITY } else { Self::ZERO };
        }
        if n < -300 {
            return Self::pow10(n + 300) / Self::pow10(300);
        }
        Self::c(10.0, 0.0).powi(n)
    }

    fn sin_cos_taylor(r: Self) -> (Self, Self) {
        let r2 = r.sqr();
        let tiny = 1e-34;
        let mut s = r;
        let mut term = r;
        let mut k = 1.0;
        while term.hi.abs() > tiny * s.hi.abs().max(tiny) {
            term = -(term * r2).div_f64((k + 1.0) * (k + 2.0));
            s += term;
            k += 2.0;
        }
        let mut c = Self::ONE;
        let mut term = Self::ONE;
        let mut k = 0.0;
        while term.hi.abs() > tiny {
            term = -(term * r2).div_f64((k + 1.0) * (k + 2.0));
            c += term;
            k += 2.0;
        }
        (s, c)
    }

    /// Significand digits of `|self|` rounded to `n` places, with the decimal
    /// exponent of the leading digit. `self` must be finite and non-zero.
    fn decimal_digits(self, n: usize) -> (Vec<u8>, i32) {
        let x = self.abs();
        let mut e = x.hi.log10().floor() as i32;
        let mut y = if e >= 0 {
            x / Self::pow10(e)
        } else {
            x * Self::pow10(-e)
        };
        if y.hi >= 10.0 {
            y = y.div_f64(10.0);
            e += 1;
        } else if y.hi < 1.0 {
            y = y.mul_f64(10.0);
            e -= 1;
        }
        let mut digits = Vec::with_capacity(n + 1);
        for _ in 0..=n {
            let d = y.floor().hi.clamp(0.0, 9.0);
            digits.push(d as u8);
            y = (y - Self::from(d)).mul_f64(10.0);
        }
        let last = digits.pop().unwrap_or(0);
        if last >= 5 {
            let mut i = digits.len();
            loop {
                if i == 0 {
                    digits.insert(0, 1);
                    digits.pop();
                    e += 1;
                    break;
                }
                i -= 1;
                if digits[i] == 9 {
                    digits[i] = 0;
                } else {
                    digits[i] += 1;
                    break;
                }
            }
        }
        (digits, e)
    }

    fn fmt_special(self, f: &mut fmt::Formatter<'_>) -> Option<fmt::Result> {
        if self.hi.is_nan() {
            Some(f.write_str("NaN"))
        } else if self.hi.is_infinite() {
            Some(f.write_str(if self.hi > 0.0 { "inf" } else { "-inf" }))
        } else if self.hi == 0.0 {
            Some(match f.precision() {
                Some(p) if p > 0 => write!(f, "{}0.{}", if self.hi.is_sign_negative() { "-" } else { "" }, "0".repeat(p)),
                _ => f.write_str(if self.hi.is_sign_negative() { "-0" } else { "0" }),
            })
        } else {
            None
        }
    }
}

impl From<f64> for DoubleDouble {
    fn from(x: f64) -> Self {
        DoubleDouble { hi: x, lo: 0.0 }
    }
}

impl From<i32> for DoubleDouble {
    fn from(x: i32) -> Self {
        DoubleDouble { hi: x as f64, lo: 0.0 }
    }
}

impl PartialOrd for DoubleDouble {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi)? {
            Ordering::Equal => self.lo.partial_cmp(&other.lo),
            o => Some(o),
        }
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        DoubleDouble { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    #[inline]
    fn add(self, b: Self) -> Self {
        let (s1, s2) = two_sum(self.hi, b.hi);
        if !s1.is_finite() {
            return Self::c(s1, 0.0);
        }
        let (t1, t2) = two_sum(self.lo, b.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (h, l) = quick_two_sum(s1, s2 + t2);
        Self::fin(h, l)
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    #[inline]
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    #[inline]
    fn mul(self, b: Self) -> Self {
        let (p1, p2) = two_prod(self.hi, b.hi);
        if !p1.is_finite() {
            return Self::c(p1, 0.0);
        }
        let p2 = p2 + (self.hi * b.lo + self.lo * b.hi);
        let (h, l) = quick_two_sum(p1, p2);
        Self::fin(h, l)
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        if !q1.is_finite() || b.hi.is_infinite() {
            return Self::c(q1, 0.0);
        }
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (h, l) = quick_two_sum(q1, q2);
        Self::c(h, l).add_f64(q3)
    }
}

impl Rem for DoubleDouble {
    type Output = Self;
    fn rem(self, b: Self) -> Self {
        self - (self / b).trunc() * b
    }
}

macro_rules! assign_ops {
    ($($tr:ident $m:ident $op:tt),*) => {$(
        impl $tr for DoubleDouble {
            fn $m(&mut self, b: Self) {
                *self = *self $op b;
            }
        }
    )*};
}
assign_ops!(AddAssign add_assign +, SubAssign sub_assign -, MulAssign mul_assign *, DivAssign div_assign /, RemAssign rem_assign %);

impl Sum for DoubleDouble {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |a, b| a + b)
    }
}

impl Product for DoubleDouble {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ONE, |a, b| a * b)
    }
}

impl Zero for DoubleDouble {
    fn zero() -> Self {
        Self::ZERO
    }
    fn is_zero(&self) -> bool {
        self.hi == 0.0
    }
}

impl One for DoubleDouble {
    fn one() -> Self {
        Self::ONE
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseDoubleDoubleError(String);

impl fmt::Display for ParseDoubleDoubleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cannot parse {:?} as a double-double", self.0)
    }
}

impl std::error::Error for ParseDoubleDoubleError {}

impl FromStr for DoubleDouble {
    type Err = ParseDoubleDoubleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseDoubleDoubleError(s.to_string());
        let t = s.trim();
        let (neg, body) = match t.as_bytes().first() {
            Some(b'-') => (true, &t[1..]),
            Some(b'+') => (false, &t[1..]),
            _ => (false, t),
        };
        let lower = body.to_ascii_lowercase();
        let special = match lower.as_str() {
            "inf" | "infinity" => Some(Self::INFINITY),
            "nan" => Some(Self::NAN),
            _ => None,
        };
        if let Some(v) = special {
            return Ok(if neg { -v } else { v });
        }
        let (mant, exp) = match lower.find('e') {
            Some(i) => (&lower[..i], lower[i + 1..].parse::<i32>().map_err(|_| err())?),
            None => (lower.as_str(), 0),
        };
        let mut acc = Self::ZERO;
        let mut scale = exp;
        let mut seen_dot = false;
        let mut seen_digit = false;
        let mut sig = 0;
        for ch in mant.chars() {
            match ch {
                '.' if !seen_dot => seen_dot = true,
                '0'..='9' => {
                    seen_digit = true;
                    let d = (ch as u8 - b'0') as f64;
                    if sig < 36 {
                        acc = acc.mul_f64(10.0).add_f64(d);
                        if acc.hi != 0.0 {
                            sig += 1;
                        }
                        if seen_dot {
                            scale -= 1;
                        }
                    } else if !seen_dot {
                        scale += 1;
                    }
                }
                _ => return Err(err()),
            }
        }
        if !seen_digit {
            return Err(err());
        }
        let mut v = acc;
        while scale > 0 {
            let k = scale.min(300);
            v *= Self::pow10(k);
            scale -= k;
        }
        while scale < 0 {
            let k = (-scale).min(300);
            v /= Self::pow10(k);
            scale += k;
        }
        Ok(if neg { -v } else { v })
    }
}

impl fmt::Debug for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DoubleDouble({:e} + {:e})", self.hi, self.lo)
    }
}

impl fmt::Display for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.fmt_special(f) {
            return r;
        }
        let sign = if self.hi < 0.0 { "-" } else { "" };
        match f.precision() {
            Some(prec) => {
                let e = self.abs().hi.log10().floor() as i32;
                let n = e + 1 + prec as i32;
                if n <= 0 {
                    return write!(f, "{sign}0.{}", "0".repeat(prec));
                }
                let (digits, e) = self.decimal_digits(n as usize);
                let mut out = String::from(sign);
                let int_len = e + 1;
                if int_len <= 0 {
                    out.push('0');
                } else {
                    for i in 0..int_len as usize {
                        out.push((b'0' + digits.get(i).copied().unwrap_or(0)) as char);
                    }
                }
                if prec > 0 {
                    out.push('.');
                    for j in 0..prec as i32 {
                        let idx = int_len + j;
                        let d = if idx < 0 { 0 } else { digits.get(idx as usize).copied().unwrap_or(0) };
                        out.push((b'0' + d) as char);
                    }
                }
                f.write_str(&out)
            }
            None => {
                let (mut digits, e) = self.decimal_digits(32);
                while digits.len() > 1 && digits.last() == Some(&0) {
                    digits.pop();
                }
                let ds: String = digits.iter().map(|d| (b'0' + d) as char).collect();
                if !(-5..21).contains(&e) {
                    let (a, b) = ds.split_at(1);
                    if b.is_empty() {
                        write!(f, "{sign}{a}e{e}")
                    } else {
                        write!(f, "{sign}{a}.{b}e{e}")
                    }
                } else if e < 0 {
                    write!(f, "{sign}0.{}{ds}", "0".repeat((-e - 1) as usize))
                } else {
                    let int_len = (e + 1) as usize;
                    if ds.len() <= int_len {
                        write!(f, "{sign}{ds}{}", "0".repeat(int_len - ds.len()))
                    } else {
                        write!(f, "{sign}{}.{}", &ds[..int_len], &ds[int_len..])
                    }
                }
            }
        }
    }
}

impl fmt::LowerExp for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.hi == 0.0 || !self.hi.is_finite() {
            return fmt::LowerExp::fmt(&self.hi, f);
        }
        let sign = if self.hi < 0.0 { "-" } else { "" };
        let (mut digits, e) = match f.precision() {
            Some(p) => self.decimal_digits(p + 1),
            None => self.decimal_digits(32),
        };
        if f.precision().is_none() {
            while digits.len() > 1 && digits.last() == Some(&0) {
                digits.pop();
            }
        }
        let ds: String = digits.iter().map(|d| (b'0' + d) as char).collect();
        let (a, b) = ds.split_at(1);
        if b.is_empty() {
            write!(f, "{sign}{a}e{e}")
        } else {
            write!(f, "{sign}{a}.{b}e{e}")
        }
    }
}

impl Num for DoubleDouble {
    type FromStrRadixErr = ParseDoubleDoubleError;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        if radix != 10 {
            return Err(ParseDoubleDoubleError(format!("{s} (radix {radix})")));
        }
        s.parse()
    }
}

impl ToPrimitive for DoubleDouble {
    fn to_i64(&self) -> Option<i64> {
        if !self.hi.is_finite() {
            return None;
        }
        let t = self.trunc();
        if t.hi.abs() > 9.3e18 {
            return None;
        }
        i64::try_from(t.hi as i128 + t.lo as i128).ok()
    }
    fn to_u64(&self) -> Option<u64> {
        if !self.hi.is_finite() || self.hi < 0.0 && self.trunc().hi != 0.0 {
            return None;
        }
        let t = self.trunc();
        if t.hi > 1.9e19 {
            return None;
        }
        u64::try_from(t.hi as i128 + t.lo as i128).ok()
    }
    fn to_f64(&self) -> Option<f64> {
        Some(self.hi + self.lo)
    }
    fn to_f32(&self) -> Option<f32> {
        Some(self.hi as f32)
    }
}

impl FromPrimitive for DoubleDouble {
    fn from_i64(n: i64) -> Option<Self> {
        Some(Self::from_i64_exact(n))
    }
    fn from_u64(n: u64) -> Option<Self> {
        Some(Self::from_u64_exact(n))
    }
    fn from_f64(x: f64) -> Option<Self> {
        Some(Self::from(x))
    }
    fn from_f32(x: f32) -> Option<Self> {
        Some(Self::from(x as f64))
    }
}

impl num_traits::NumCast for DoubleDouble {
    fn from<T: ToPrimitive>(n: T) -> Option<Self> {
        let f = n.to_f64()?;
        if f.is_finite() && f.fract() == 0.0 && f.abs() < 9.2e18 {
            if let Some(i) = n.to_i64() {
                return Some(Self::from_i64_exact(i));
            }
        }
        Some(Self::c(f, 0.0))
    }
}

impl FloatConst for DoubleDouble {
    fn E() -> Self {
        Self::E
    }
    fn FRAC_1_PI() -> Self {
        Self::ONE / Self::PI
    }
    fn FRAC_1_SQRT_2() -> Self {
        Self::SQRT_2.mul_f64(0.5)
    }
    fn FRAC_2_PI() -> Self {
        Self::c(2.0, 0.0) / Self::PI
    }
    fn FRAC_2_SQRT_PI() -> Self {
        Self::c(2.0, 0.0) / Self::PI.sqrt()
    }
    fn FRAC_PI_2() -> Self {
        Self::FRAC_PI_2
    }
    fn FRAC_PI_3() -> Self {
        Self::PI.div_f64(3.0)
    }
    fn FRAC_PI_4() -> Self {
        Self::FRAC_PI_4
    }
    fn FRAC_PI_6() -> Self {
        Self::PI.div_f64(6.0)
    }
    fn FRAC_PI_8() -> Self {
        Self::PI.mul_f64(0.125)
    }
    fn LN_10() -> Self {
        Self::LN_10
    }
    fn LN_2() -> Self {
        Self::LN_2
    }
    fn LOG10_E() -> Self {
        Self::ONE / Self::LN_10
    }
    fn LOG2_E() -> Self {
        Self::ONE / Self::LN_2
    }
    fn PI() -> Self {
        Self::PI
    }
    fn SQRT_2() -> Self {
        Self::SQRT_2
    }
    fn TAU() -> Self {
        Self::TAU
    }
    fn LOG10_2() -> Self {
        Self::LN_2 / Self::LN_10
    }
    fn LOG2_10() -> Self {
        Self::LN_10 / Self::LN_2
    }
}

impl Float for DoubleDouble {
    fn nan() -> Self {
        Self::NAN
    }
    fn infinity() -> Self {
        Self::INFINITY
    }
    fn neg_infinity() -> Self {
        Self::NEG_INFINITY
    }
    fn neg_zero() -> Self {
        Self::c(-0.0, 0.0)
    }
    fn min_value() -> Self {
        Self::c(f64::MIN, 0.0)
    }
    fn min_positive_value() -> Self {
        Self::c(f64::MIN_POSITIVE, 0.0)
    }
    fn epsilon() -> Self {
        Self::EPSILON
    }
    fn max_value() -> Self {
        Self::c(f64::MAX, 0.0)
    }
    fn is_nan(self) -> bool {
        self.hi.is_nan()
    }
    fn is_infinite(self) -> bool {
        self.hi.is_infinite()
    }
    fn is_finite(self) -> bool {
        self.hi.is_finite()
    }
    fn is_normal(self) -> bool {
        self.hi.is_normal()
    }
    fn classify(self) -> FpCategory {
        self.hi.classify()
    }

    fn floor(self) -> Self {
        let hi = self.hi.floor();
        if hi == self.hi {
            let (h, l) = quick_two_sum(hi, self.lo.floor());
            Self::fin(h, l)
        } else {
            Self::c(hi, 0.0)
        }
    }
    fn ceil(self) -> Self {
        let hi = self.hi.ceil();
        if hi == self.hi {
            let (h, l) = quick_two_sum(hi, self.lo.ceil());
            Self::fin(h, l)
        } else {
            Self::c(hi, 0.0)
        }
    }
    /// Rounds half away from zero.
    fn round(self) -> Self {
        if self.hi >= 0.0 {
            self.add_f64(0.5).floor()
        } else {
            -((-self).add_f64(0.5).floor())
        }
    }
    fn trunc(self) -> Self {
        if self.hi >= 0.0 {
            self.floor()
        } else {
            self.ceil()
        }
    }
    fn fract(self) -> Self {
        self - self.trunc()
    }
    fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.hi.is_sign_negative()) {
            -self
        } else {
            self
        }
    }
    fn signum(self) -> Self {
        Self::c(self.hi.signum(), 0.0)
    }
    fn is_sign_positive(self) -> bool {
        self.hi.is_sign_positive()
    }
    fn is_sign_negative(self) -> bool {
        self.hi.is_sign_negative()
    }
    fn mul_add(self, a: Self, b: Self) -> Self {
        self * a + b
    }
    fn recip(self) -> Self {
        Self::ONE / self
    }

    fn powi(self, n: i32) -> Self {
        if n == 0 {
            return Self::ONE;
        }
        let mut base = self;
        let mut k = n.unsigned_abs();
        let mut acc = Self::ONE;
        while k > 0 {
            if k & 1 == 1 {
                acc *= base;
            }
            k >>= 1;
            if k > 0 {
                base = base.sqr();
            }
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }

    fn powf(self, n: Self) -> Self {
        if n.is_zero() {
            return Self::ONE;
        }
        if n.hi.abs() < 2.0e9 && n.fract().is_zero() {
            return self.powi(n.hi as i32);
        }
        if self.hi.is_nan() || n.hi.is_nan() || self.hi < 0.0 {
            return Self::NAN;
        }
        if self.is_zero() {
            return if n.hi > 0.0 { Self::ZERO } else { Self::INFINITY };
        }
        (n * self.ln()).exp()
    }

    fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return if self.hi == 0.0 { Self::ZERO } else { Self::NAN };
        }
        if !self.hi.is_finite() {
            return self;
        }
        let x = 1.0 / self.hi.sqrt();
        let ax = self.hi * x;
        let r = (self - Self::from(ax).sqr()).hi * (x * 0.5);
        Self::from(ax).add_f64(r)
    }

    fn exp(self) -> Self {
        if self.hi.is_nan() {
            return Self::NAN;
        }
        if self.hi > 709.79 {
            return Self::INFINITY;
        }
        if self.hi < -745.2 {
            return Self::ZERO;
        }
        if self.is_zero() {
            return Self::ONE;
        }
        let k = (self.hi / Self::LN_2.hi).round();
        let r = (self - Self::LN_2.mul_f64(k)).ldexp(-9);
        let mut s = r;
        let mut term = r;
        let mut n = 2.0;
        while term.hi.abs() > 1e-36 {
            term = (term * r).div_f64(n);
            s += term;
            n += 1.0;
        }
        for _ in 0..9 {
            s = s.mul_f64(2.0) + s.sqr();
        }
        (s + Self::ONE).ldexp(k as i32)
    }

    fn exp2(self) -> Self {
        (self * Self::LN_2).exp()
    }

    fn ln(self) -> Self {
        if self.hi.is_nan() || self.hi < 0.0 {
            return Self::NAN;
        }
        if self.hi == 0.0 {
            return Self::NEG_INFINITY;
        }
        if self.hi.is_infinite() {
            return Self::INFINITY;
        }
        let k = self.hi.log2().floor() as i32;
        let m = self.ldexp(-k);
        let x = Self::from(m.hi.ln());
        let x = x + m * (-x).exp() - Self::ONE;
        x + Self::LN_2.mul_f64(k as f64)
    }

    fn log(self, base: Self) -> Self {
        self.ln() / base.ln()
    }
    fn log2(self) -> Self {
        self.ln() / Self::LN_2
    }
    fn log10(self) -> Self {
        self.ln() / Self::LN_10
    }

    fn to_degrees(self) -> Self {
        self.mul_f64(180.0) / Self::PI
    }
    fn to_radians(self) -> Self {
        self * Self::PI.div_f64(180.0)
    }

    fn max(self, other: Self) -> Self {
        if self.is_nan() || other > self {
            other
        } else {
            self
        }
    }
    fn min(self, other: Self) -> Self {
        if self.is_nan() || other < self {
            other
        } else {
            self
        }
    }
    fn abs_sub(self, other: Self) -> Self {
        if self <= other {
            Self::ZERO
        } else {
            self - other
        }
    }

    fn cbrt(self) -> Self {
        if self.is_zero() || !self.hi.is_finite() {
            return Self::c(self.hi.cbrt(), 0.0);
        }
        let y = Self::from(self.hi.cbrt());
        let y2 = y.sqr();
        y - (y2 * y - self) / y2.mul_f64(3.0)
    }

    fn hypot(self, other: Self) -> Self {
        let (a, b) = (self.abs(), other.abs());
        let (big, small) = if a >= b { (a, b) } else { (b, a) };
        if big.is_zero() {
            return Self::ZERO;
        }
        if big.is_infinite() {
            return Self::INFINITY;
        }
        let r = small / big;
        big * (Self::ONE + r.sqr()).sqrt()
    }

    fn sin(self) -> Self {
        self.sin_cos().0
    }
    fn cos(self) -> Self {
        self.sin_cos().1
    }
    fn tan(self) -> Self {
        let (s, c) = self.sin_cos();
        s / c
    }

    fn sin_cos(self) -> (Self, Self) {
        if !self.hi.is_finite() {
            return (Self::NAN, Self::NAN);
        }
        if self.is_zero() {
            return (self, Self::ONE);
        }
        let z = (self / Self::TAU).round();
        let r = self - Self::TAU * z;
        let j = (r.hi / Self::FRAC_PI_2.hi).round();
        let r = r - Self::FRAC_PI_2.mul_f64(j);
        let (s, c) = Self::sin_cos_taylor(r);
        match j as i32 {
            0 => (s, c),
            1 => (c, -s),
            -1 => (-c, s),
            _ => (-s, -c),
        }
    }

    fn asin(self) -> Self {
        if self.hi.abs() > 1.0 {
            return Self::NAN;
        }
        self.atan2((Self::ONE - self.sqr()).sqrt())
    }
    fn acos(self) -> Self {
        if self.hi.abs() > 1.0 {
            return Self::NAN;
        }
        (Self::ONE - self.sqr()).sqrt().atan2(self)
    }
    fn atan(self) -> Self {
        self.atan2(Self::ONE)
    }

    /// `atan2(self, x)`: the f64 angle polished by Newton steps on the unit circle.
    fn atan2(self, x: Self) -> Self {
        let y = self;
        let mut z = Self::from(y.hi.atan2(x.hi));
        if !(y.hi.is_finite() && x.hi.is_finite()) || (y.is_zero() && x.is_zero()) {
            return z;
        }
        let r = y.hypot(x);
        let (xx, yy) = (x / r, y / r);
        for _ in 0..2 {
            let (s, c) = z.sin_cos();
            if xx.hi.abs() > yy.hi.abs() {
                z += (yy - s) / c;
            } else {
                z -= (xx - c) / s;
            }
        }
        z
    }

    fn exp_m1(self) -> Self {
        if self.hi.abs() >= 0.5 {
            return self.exp() - Self::ONE;
        }
        let mut s = self;
        let mut term = self;
        let mut n = 2.0;
        while term.hi.abs() > 1e-34 * s.hi.abs() {
            term = (term * self).div_f64(n);
            s += term;
            n += 1.0;
        }
        s
    }

    fn ln_1p(self) -> Self {
        if self.hi.abs() >= 0.5 {
            return (Self::ONE + self).ln();
        }
        let z = self / self.add_f64(2.0);
        let z2 = z.sqr();
        let mut s = z;
        let mut pw = z;
        let mut k = 3.0;
        loop {
            pw *= z2;
            let term = pw.div_f64(k);
            s += term;
            if term.hi.abs() <= 1e-34 * s.hi.abs() {
                break;
            }
            k += 2.0;
        }
        s.mul_f64(2.0)
    }

    fn sinh(self) -> Self {
        if self.hi.abs() < 0.5 {
            let x2 = self.sqr();
            let mut s = self;
            let mut term = self;
            let mut k = 1.0;
            while term.hi.abs() > 1e-34 * s.hi.abs() {
                term = (term * x2).div_f64((k + 1.0) * (k + 2.0));
                s += term;
                k += 2.0;
            }
            return s;
        }
        let e = self.exp();
        (e - e.recip()).mul_f64(0.5)
    }
    fn cosh(self) -> Self {
        let e = self.exp();
        (e + e.recip()).mul_f64(0.5)
    }
    fn tanh(self) -> Self {
        let a = self.abs();
        let t = if a.hi > 40.0 {
            Self::ONE
        } else {
            let em = a.mul_f64(2.0).exp_m1();
            em / em.add_f64(2.0)
        };
        if self.hi < 0.0 {
            -t
        } else {
            t
        }
    }
    fn asinh(self) -> Self {
        let a = self.abs();
        let r = if a.hi > 1e150 {
            a.ln() + Self::LN_2
        } else {
            let a2 = a.sqr();
            (a + a2 / (Self::ONE + (Self::ONE + a2).sqrt())).ln_1p()
        };
        if self.hi < 0.0 {
            -r
        } else {
            r
        }
    }
    fn acosh(self) -> Self {
        if self.hi < 1.0 {
            return Self::NAN;
        }
        if self.hi > 1e150 {
            return self.ln() + Self::LN_2;
        }
        let t = self - Self::ONE;
        (t + (t * t.add_f64(2.0)).sqrt()).ln_1p()
    }
    fn atanh(self) -> Self {
        if self.hi.abs() > 1.0 {
            return Self::NAN;
        }
        (self.mul_f64(2.0) / (Self::ONE - self)).ln_1p().mul_f64(0.5)
    }

    /// Decodes the leading component only.
    fn integer_decode(self) -> (u64, i16, i8) {
        let bits = self.hi.to_bits();
        let sign: i8 = if bits >> 63 == 0 { 1 } else { -1 };
        let mut exponent = ((bits >> 52) & 0x7ff) as i16;
        let mantissa = if exponent == 0 {
            (bits & 0xf_ffff_ffff_ffff) << 1
        } else {
            (bits & 0xf_ffff_ffff_ffff) | 0x10_0000_0000_0000
        };
        exponent -= 1023 + 52;
        (mantissa, exponent, sign)
    }
}
