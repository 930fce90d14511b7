//! Signed reals stored as `sign * exp(ln_mag)`.
//!
//! Series terms such as `n^p / n!` at `p` in the thousands overflow every
//! fixed-width float long before the sum converges; carrying the logarithm
//! keeps them representable.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Div, Mul, Neg};

use crate::scalar::Scalar;

#[derive(Clone, Copy, PartialEq)]
pub struct LogReal<S> {
    sign: i8,
    ln_mag: S,
}

impl<S: Scalar> LogReal<S> {
    pub fn zero() -> Self {
        LogReal { sign: 0, ln_mag: S::neg_infinity() }
    }

    pub fn one() -> Self {
        LogReal { sign: 1, ln_mag: S::zero() }
    }

    /// `sign * exp(ln_mag)`; a zero sign or `ln_mag = -inf` gives zero.
    pub fn from_parts(sign: i8, ln_mag: S) -> Self {
        if sign == 0 || ln_mag == S::neg_infinity() {
            Self::zero()
        } else {
            LogReal { sign: sign.signum(), ln_mag }
        }
    }

    /// Positive value `exp(ln_mag)`.
    pub fn from_ln(ln_mag: S) -> Self {
        Self::from_parts(1, ln_mag)
    }

    pub fn from_value(x: S) -> Self {
        if x.is_zero() {
            Self::zero()
        } else {
            let sign = if x < S::zero() { -1 } else { 1 };
            LogReal { sign, ln_mag: x.abs().ln() }
        }
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    /// Natural log of the magnitude (`-inf` for zero).
    pub fn ln_abs(&self) -> S {
        if self.sign == 0 {
            S::neg_infinity()
        } else {
            self.ln_mag
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// Back to a plain scalar; saturates to ±inf or 0 outside its range.
    pub fn value(&self) -> S {
        match self.sign {
            0 => S::zero(),
            1 => self.ln_mag.exp(),
            _ => -self.ln_mag.exp(),
        }
    }

    pub fn abs(self) -> Self {
        LogReal { sign: self.sign.abs(), ..self }
    }

    /// `|self|^e` for a positive value (or zero with `e > 0`).
    pub fn powf(self, e: S) -> Self {
        match self.sign {
            0 if e > S::zero() => Self::zero(),
            0 => Self::one(),
            _ => LogReal { sign: 1, ln_mag: self.ln_mag * e },
        }
    }

    /// p-th root of a positive value.
    pub fn root(self, p: S) -> S {
        (self.ln_abs() / p).exp()
    }

    /// Sum of two values via a single log-sum-exp step.
    #[allow(clippy::should_implement_trait)]
    pub fn add(self, other: Self) -> Self {
        let mut acc = LogSum::new();
        acc.push(self);
        acc.push(other);
        acc.total()
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(self, other: Self) -> Self {
        self.add(-other)
    }

    /// `self / other` as a plain scalar (ratio of two log-reals).
    pub fn ratio(self, other: Self) -> S {
        (self / other).value()
    }
}

impl<S: Scalar> Neg for LogReal<S> {
    type Output = Self;
    fn neg(self) -> Self {
        LogReal { sign: -self.sign, ..self }
    }
}

impl<S: Scalar> Mul for LogReal<S> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::from_parts(self.sign * o.sign, self.ln_mag + o.ln_mag)
    }
}

impl<S: Scalar> Div for LogReal<S> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        if o.sign == 0 {
            return LogReal { sign: self.sign.max(1), ln_mag: S::infinity() };
        }
        Self::from_parts(self.sign * o.sign, self.ln_mag - o.ln_mag)
    }
}

impl<S: Scalar> PartialOrd for LogReal<S> {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        match self.sign.cmp(&o.sign) {
            Ordering::Equal => match self.sign {
                0 => Some(Ordering::Equal),
                1 => self.ln_mag.partial_cmp(&o.ln_mag),
                _ => o.ln_mag.partial_cmp(&self.ln_mag),
            },
            ord => Some(ord),
        }
    }
}

impl<S: Scalar> fmt::Debug for LogReal<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            0 => write!(f, "LogReal(0)"),
            s => write!(f, "LogReal({}exp({:?}))", if s < 0 { "-" } else { "" }, self.ln_mag),
        }
    }
}

impl<S: Scalar> fmt::Display for LogReal<S> {
    /// Prints as a plain number when it fits, otherwise as `m e k` decimal.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign == 0 {
            return f.write_str("0");
        }
        let v = self.value();
        if v.is_finite() && !v.is_zero() {
            return fmt::Display::fmt(&v, f);
        }
        let l10 = self.ln_mag / S::LN_10();
        let k = l10.floor();
        let m = ((l10 - k) * S::LN_10()).exp();
        let sign = if self.sign < 0 { "-" } else { "" };
        write!(f, "{sign}{:.12}e{}", m.as_f64(), k.as_f64() as i64)
    }
}

/// Neumaier-compensated log-sum-exp accumulator.
///
/// Terms are summed as `exp(ln_i - scale)` relative to the largest magnitude
/// seen so far; when a bigger term arrives the running sum is rescaled.
#[derive(Clone, Copy, Debug)]
pub struct LogSum<S> {
    scale: S,
    sum: S,
    comp: S,
    max_term: S,
    count: usize,
}

impl<S: Scalar> Default for LogSum<S> {
    fn default() -> Self {
        Self::new()
    }
}

impl<S: Scalar> LogSum<S> {
    pub fn new() -> Self {
        LogSum {
            scale: S::neg_infinity(),
            sum: S::zero(),
            comp: S::zero(),
            max_term: S::neg_infinity(),
            count: 0,
        }
    }

    pub fn push(&mut self, term: LogReal<S>) {
        if term.is_zero() {
            return;
        }
        self.count += 1;
        let l = term.ln_mag;
        if l > self.max_term {
            self.max_term = l;
        }
        if l > self.scale {
            if self.scale.is_finite() {
                let r = (self.scale - l).exp();
                self.sum = self.sum * r;
                self.comp = self.comp * r;
            }
            self.scale = l;
        }
        let x = if term.sign > 0 { (l - self.scale).exp() } else { -(l - self.scale).exp() };
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp = self.comp + ((self.sum - t) + x);
        } else {
            self.comp = self.comp + ((x - t) + self.sum);
        }
        self.sum = t;
    }

    pub fn push_ln(&mut self, sign: i8, ln_mag: S) {
        self.push(LogReal::from_parts(sign, ln_mag));
    }

    pub fn total(&self) -> LogReal<S> {
        if !self.scale.is_finite() {
            return LogReal::zero();
        }
        let s = self.sum + self.comp;
        if s.is_zero() {
            return LogReal::zero();
        }
        let sign = if s < S::zero() { -1 } else { 1 };
        LogReal::from_parts(sign, self.scale + s.abs().ln())
    }

    /// Log magnitude of the largest term pushed so far.
    pub fn max_term_ln(&self) -> S {
        self.max_term
    }

    pub fn count(&self) -> usize {
        self.count
    }
}
