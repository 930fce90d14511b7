//! Schlömilch (Bessel-weighted) and Bell (Poisson-weighted) power series at
//! real p, and the constants K, L, G, S, R built from them.
//!
//! Terms such as `n^p λ^n / n!` climb over hundreds of orders of magnitude
//! before they decay, so every sum runs in [`LogReal`] and the tail test is
//! only armed once the index is well past the term peak.

use crate::asymptotics::solve_x_ln_cx;
use crate::error::{Error, Result};
use crate::logreal::{LogReal, LogSum};
use crate::scalar::Scalar;
use crate::special::{bessel_i_int, ln_factorial, log_gamma, log_gamma_unchecked};

/// When a series may stop.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TruncationPolicy {
    /// Stop once the tail majorant is below `rel_tol` times the partial sum.
    pub rel_tol: f64,
    pub max_terms: u64,
    /// Tail tests start at `peak + peak_margin * sqrt(peak)`.
    pub peak_margin: f64,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy { rel_tol: 1e-30, max_terms: 10_000_000, peak_margin: 3.0 }
    }
}

impl TruncationPolicy {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !self.rel_tol.is_finite() {
            return Err(Error::InvalidInput(format!("rel_tol must be positive, got {}", self.rel_tol)));
        }
        if self.max_terms < 1000 {
            return Err(Error::InvalidInput(format!("max_terms must be at least 1000, got {}", self.max_terms)));
        }
        if !(self.peak_margin >= 0.0) {
            return Err(Error::InvalidInput(format!("peak_margin must be non-negative, got {}", self.peak_margin)));
        }
        Ok(())
    }
}

/// A summed series with its truncation data.
#[derive(Clone, Copy, Debug)]
pub struct EvalResult<S: Scalar> {
    pub value: LogReal<S>,
    pub terms_used: u64,
    /// Index of the largest term seen.
    pub peak_index: u64,
    /// Majorant of the omitted tail.
    pub tail_bound: LogReal<S>,
}

impl<S: Scalar> EvalResult<S> {
    /// The value as a plain scalar (saturates outside the scalar's range).
    pub fn get(&self) -> S {
        self.value.value()
    }

    /// Relative error estimate: tail majorant plus rounding over the terms summed.
    pub fn rel_error(&self) -> f64 {
        let tail = if self.value.is_zero() { 0.0 } else { self.tail_bound.ratio(self.value).as_f64() };
        tail + S::eps().as_f64() * (self.terms_used as f64).sqrt()
    }

    fn exact(value: LogReal<S>) -> Self {
        EvalResult { value, terms_used: 1, peak_index: 0, tail_bound: LogReal::zero() }
    }

    fn scaled(mut self, ln_factor: S) -> Self {
        self.value = self.value * LogReal::from_ln(ln_factor);
        self.tail_bound = self.tail_bound * LogReal::from_ln(ln_factor);
        self
    }
}

/// Sums `term(n)` for `n = n0, n0+1, …`.
///
/// `peak_hint` locates the largest term; from `peak_hint + margin·sqrt(peak_hint)`
/// on, once terms are decreasing, the tail is majorized by a geometric series
/// with the current term ratio.
fn sum_series<S: Scalar>(
    what: &str,
    n0: u64,
    peak_hint: f64,
    policy: &TruncationPolicy,
    mut term: impl FnMut(u64) -> LogReal<S>,
) -> Result<EvalResult<S>> {
    policy.validate()?;
    let hint = peak_hint.max(0.0);
    let arm = n0 as f64 + hint + policy.peak_margin * hint.sqrt() + 2.0;
    let ln_tol = S::lit(policy.rel_tol.ln());
    let ln_eps = S::eps().ln();
    let mut acc = LogSum::new();
    let mut abs_acc = LogSum::new();
    let mut peak = (n0, S::neg_infinity());
    let mut cur = term(n0);
    let mut n = n0;
    loop {
        acc.push(cur);
        abs_acc.push(cur.abs());
        if cur.ln_abs() > peak.1 {
            peak = (n, cur.ln_abs());
        }
        if n - n0 + 1 >= policy.max_terms {
            return Err(Error::Truncation { what: what.to_string(), terms: policy.max_terms as usize });
        }
        let next = term(n + 1);
        if n as f64 >= arm {
            let (lc, ln_next) = (cur.ln_abs(), next.ln_abs());
            if next.is_zero() || ln_next < lc {
                // tail <= |t_{n+1}| / (1 − r), r = |t_{n+1}| / |t_n|
                let ln_tail = if next.is_zero() { S::neg_infinity() } else { ln_next - (-(ln_next - lc).exp()).ln_1p() };
                let sum = acc.total().ln_abs();
                let floor = sum.max(abs_acc.total().ln_abs() + ln_eps);
                if next.is_zero() || ln_tail < floor + ln_tol {
                    return Ok(EvalResult {
                        value: acc.total(),
                        terms_used: n - n0 + 1,
                        peak_index: peak.0,
                        tail_bound: LogReal::from_ln(ln_tail),
                    });
                }
            }
        }
        cur = next;
        n += 1;
    }
}

/// Index near which `k^p c^{-k}/k!`-type terms peak: the root of `x ln(cx) = p`.
fn peak_of<S: Scalar>(p: S, c: f64) -> f64 {
    solve_x_ln_cx(p.as_f64().max(0.0), c).map(|r| r.root).unwrap_or(0.0)
}

/// `ln I_k(z)` for integer `k >= 0`, with a fast path for moderate `z`.
fn ln_bessel_int<S: Scalar>(k: u64, z: S) -> Result<S> {
    if z.is_zero() {
        return Ok(if k == 0 { S::zero() } else { S::neg_infinity() });
    }
    let q = z * z * S::lit(0.25);
    if q > S::lit(50.0) {
        return Ok(bessel_i_int(k as i64, z)?.ln_abs());
    }
    // I_k(z) = (z/2)^k / k! · Σ_j q^j / (j! (k+1)_j)
    let kk = S::from_usize_lossy(k as usize);
    let mut t = S::one();
    let mut s = S::one();
    let mut j = S::zero();
    loop {
        j = j + S::one();
        t = t * q / (j * (kk + j));
        s = s + t;
        if t < S::eps() * s * S::lit(1e-2) {
            break;
        }
    }
    Ok(kk * (z * S::lit(0.5)).ln() - ln_factorial::<S>(k) + s.ln())
}

/// `k^p` in log form with `0^0 = 1`.
fn ln_pow<S: Scalar>(base: S, p: S) -> S {
    if base.is_zero() {
        if p.is_zero() {
            S::zero()
        } else {
            S::neg_infinity()
        }
    } else {
        p * base.ln()
    }
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::domain(msg()))
    }
}

/// `F₃(p; θ, β) = Σ_{k∈ℤ} |k|^p θ^k I_k(β)`, folded to `k >= 0`.
///
/// `β = 0` is accepted as the limit (only `I_0(0) = 1` survives).
pub fn eval_f3<S: Scalar>(p: S, theta: S, beta: S, policy: &TruncationPolicy) -> Result<EvalResult<S>> {
    require(p >= S::zero() && p.is_finite(), || format!("F3 needs p >= 0, got {p}"))?;
    require(theta > S::zero() && theta.is_finite(), || format!("F3 needs theta > 0, got {theta}"))?;
    require(beta >= S::zero() && beta.is_finite(), || format!("F3 needs beta >= 0, got {beta}"))?;
    if beta.is_zero() {
        return Ok(EvalResult::exact(if p.is_zero() { LogReal::one() } else { LogReal::zero() }));
    }
    let lt = theta.ln();
    let big = theta.max(theta.recip()).as_f64();
    let hint = peak_of(p, 2.0 / (beta.as_f64() * big));
    let mut err = None;
    let r = sum_series("F3 series", 0, hint, policy, |k| {
        let li = match ln_bessel_int(k, beta) {
            Ok(v) => v,
            Err(e) => {
                err = Some(e);
                return LogReal::zero();
            }
        };
        if k == 0 {
            return if p.is_zero() { LogReal::from_ln(li) } else { LogReal::zero() };
        }
        let kk = S::from_usize_lossy(k as usize);
        let w = LogReal::from_ln(kk * lt).add(LogReal::from_ln(-kk * lt));
        w * LogReal::from_ln(ln_pow(kk, p) + li)
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(r),
    }
}

/// `G₃(p; θ, β) = Σ_{k∈ℤ} k^p θ^k I_k(β)` for integer `p >= 1`.
pub fn eval_g3<S: Scalar>(p: u32, theta: S, beta: S, policy: &TruncationPolicy) -> Result<EvalResult<S>> {
    require(p >= 1, || "G3 needs an integer p >= 1".into())?;
    require(theta > S::zero() && theta.is_finite(), || format!("G3 needs theta > 0, got {theta}"))?;
    require(beta >= S::zero() && beta.is_finite(), || format!("G3 needs beta >= 0, got {beta}"))?;
    if beta.is_zero() {
        return Ok(EvalResult::exact(LogReal::zero()));
    }
    let lt = theta.ln();
    let ps = S::from_usize_lossy(p as usize);
    let big = theta.max(theta.recip()).as_f64();
    let hint = peak_of(ps, 2.0 / (beta.as_f64() * big));
    let odd = p % 2 == 1;
    let mut err = None;
    let r = sum_series("G3 series", 1, hint, policy, |k| {
        let li = match ln_bessel_int(k, beta) {
            Ok(v) => v,
            Err(e) => {
                err = Some(e);
                return LogReal::zero();
            }
        };
        let kk = S::from_usize_lossy(k as usize);
        let neg = LogReal::from_ln(-kk * lt);
        let w = LogReal::from_ln(kk * lt).add(if odd { -neg } else { neg });
        w * LogReal::from_ln(ps * kk.ln() + li)
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(r),
    }
}

fn check_bell<S: Scalar>(what: &str, a: S, lambda: S, gamma: S) -> Result<()> {
    require(a.is_finite(), || format!("{what} needs a finite a, got {a}"))?;
    require(lambda > S::zero() && lambda.is_finite(), || format!("{what} needs lambda > 0, got {lambda}"))?;
    require(gamma >= S::zero() && gamma.is_finite(), || format!("{what} needs gamma >= 0, got {gamma}"))
}

/// Largest-term location for the Bell-type sums, shifted by the centre `a`.
fn bell_hint<S: Scalar>(p: S, a: S, lambda: S) -> f64 {
    peak_of(p, 1.0 / lambda.as_f64()) + a.as_f64().max(0.0)
}

/// `ln Γ(n + γ + 1)`, using the factorial table path for `γ = 0`.
fn ln_gamma_shift<S: Scalar>(n: u64, gamma: S) -> S {
    if gamma.is_zero() {
        ln_factorial::<S>(n)
    } else {
        log_gamma_unchecked(S::from_usize_lossy(n as usize) + gamma + S::one())
    }
}

/// `B₄(p; a, λ, γ) = Σ_{n>=0} |n − a|^p λ^n / (e^λ Γ(n + γ + 1))`.
pub fn eval_b4<S: Scalar>(p: S, a: S, lambda: S, gamma: S, policy: &TruncationPolicy) -> Result<EvalResult<S>> {
    require(p >= S::zero() && p.is_finite(), || format!("B4 needs p >= 0, got {p}"))?;
    check_bell("B4", a, lambda, gamma)?;
    let ll = lambda.ln();
    let r = sum_series("B4 series", 0, bell_hint(p, a, lambda), policy, |n| {
        let nn = S::from_usize_lossy(n as usize);
        LogReal::from_ln(ln_pow((nn - a).abs(), p) + nn * ll - ln_gamma_shift(n, gamma))
    })?;
    Ok(r.scaled(-lambda))
}

/// `D₄(p; a, λ, γ) = Σ_{n>=0} (n − a)^p λ^n / (e^λ Γ(n + γ + 1))` for integer `p >= 1`.
pub fn eval_d4<S: Scalar>(p: u32, a: S, lambda: S, gamma: S, policy: &TruncationPolicy) -> Result<EvalResult<S>> {
    require(p >= 1, || "D4 needs an integer p >= 1".into())?;
    check_bell("D4", a, lambda, gamma)?;
    let ll = lambda.ln();
    let ps = S::from_usize_lossy(p as usize);
    let r = sum_series("D4 series", 0, bell_hint(ps, a, lambda), policy, |n| {
        let nn = S::from_usize_lossy(n as usize);
        let d = nn - a;
        let sign = if d < S::zero() && p % 2 == 1 { -1 } else { 1 };
        LogReal::from_parts(sign, ln_pow(d.abs(), ps) + nn * ll - ln_gamma_shift(n, gamma))
    })?;
    Ok(r.scaled(-lambda))
}

/// `K(p) = E|τ₁ − τ₂|^p = (2/e) Σ_{n>=1} n^p I_n(1)`, τᵢ ~ Poisson(1/2).
pub fn k_series<S: Scalar>(p: S, policy: &TruncationPolicy) -> Result<EvalResult<S>> {
    Ok(eval_f3(p, S::one(), S::one(), policy)?.scaled(-S::one()))
}

/// `L(p) = E|θ − 1|^p = e^{-1} Σ_{n>=0} |n − 1|^p / n!`, θ ~ Poisson(1).
pub fn l_series<S: Scalar>(p: S, policy: &TruncationPolicy) -> Result<EvalResult<S>> {
    eval_b4(p, S::one(), S::one(), S::zero(), policy)
}

/// `R(p, t) = 2 e^{-2t} Σ_{n>=1} n^p I_n(2t)`, the p-th absolute moment of
/// the Skellam(t, t) law.
pub fn r_series<S: Scalar>(p: S, t: S, policy: &TruncationPolicy) -> Result<EvalResult<S>> {
    require(t > S::zero() && t <= S::lit(0.5), || format!("R needs t in (0, 1/2], got {t}"))?;
    let two_t = t + t;
    Ok(eval_f3(p, S::one(), two_t, policy)?.scaled(-two_t))
}

/// `G(p) = L(p)^{1/p}`.
pub fn g_of_p<S: Scalar>(p: S, policy: &TruncationPolicy) -> Result<S> {
    require(p > S::zero(), || format!("G needs p > 0, got {p}"))?;
    Ok(l_series(p, policy)?.value.root(p))
}

/// `S(p) = K(p)^{1/p}`.
pub fn s_of_p<S: Scalar>(p: S, policy: &TruncationPolicy) -> Result<S> {
    require(p > S::zero(), || format!("S needs p > 0, got {p}"))?;
    Ok(k_series(p, policy)?.value.root(p))
}

/// `R(p, t)^{1/p}`.
pub fn r_root<S: Scalar>(p: S, t: S, policy: &TruncationPolicy) -> Result<S> {
    require(p > S::zero(), || format!("R root needs p > 0, got {p}"))?;
    Ok(r_series(p, t, policy)?.value.root(p))
}

/// `1 + sqrt(2^p/π) Γ((p+1)/2)`, the small-p value of `S(p)^p`.
pub fn explicit_moment<S: Scalar>(p: S) -> Result<S> {
    let half = S::lit(0.5);
    Ok(S::one() + (half * (p * S::LN_2() - S::PI().ln()) + log_gamma((p + S::one()) * half)?).exp())
}

/// `S(p) = (1 + sqrt(2^p/π) Γ((p+1)/2))^{1/p}` on `(2, 4]`; `S(2) = 1`.
pub fn s_explicit<S: Scalar>(p: S) -> Result<S> {
    require(p >= S::lit(2.0) && p <= S::lit(4.0), || format!("S_explicit needs p in [2, 4], got {p}"))?;
    if p == S::lit(2.0) {
        return Ok(S::one());
    }
    Ok(explicit_moment(p)?.powf(p.recip()))
}

/// Which constant to differentiate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    K,
    L,
}

/// An m-th derivative in p and its a-priori bound.
#[derive(Clone, Copy, Debug)]
pub struct Derivative<S: Scalar> {
    pub value: EvalResult<S>,
    pub bound: S,
}

/// m-th derivative in p of K or L by term-wise differentiation:
/// `L^{(m)}(p) = e^{-1} Σ (n−1)^p ln^m(n−1) / n!`,
/// `K^{(m)}(p) = (2/e) Σ n^p ln^m n I_n(1)`.
///
/// Bounds: `(m/e)^m (e B₁(p) − 1) / e` for L and `(m/e)^m K(p+1)` for K
/// (from `ln^m x <= (m/e)^m x`). Fails with a consistency error if the
/// estimate exceeds the bound.
pub fn derivative_series<S: Scalar>(which: Which, m: u32, p: S, policy: &TruncationPolicy) -> Result<Derivative<S>> {
    require(m >= 1, || "derivative order must be at least 1".into())?;
    require(p >= S::lit(2.0) && p.is_finite(), || format!("derivative series needs p >= 2, got {p}"))?;
    let mm = S::from_usize_lossy(m as usize);
    let ln_me = mm * (mm.ln() - S::one());
    let (value, bound) = match which {
        Which::L => {
            let hint = peak_of(p, 1.0) + 1.0;
            let v = sum_series("L derivative series", 2, hint, policy, |n| {
                let b = S::from_usize_lossy(n as usize - 1);
                let lb = b.ln();
                if lb.is_zero() {
                    return LogReal::zero();
                }
                LogReal::from_ln(p * lb + mm * lb.ln() - ln_factorial::<S>(n))
            })?
            .scaled(-S::one());
            let b1 = eval_b4(p, S::zero(), S::one(), S::zero(), policy)?.get();
            (v, (ln_me.exp() * (S::E() * b1 - S::one())) / S::E())
        }
        Which::K => {
            let hint = peak_of(p, 2.0);
            let mut err = None;
            let v = sum_series("K derivative series", 2, hint, policy, |n| {
                let nn = S::from_usize_lossy(n as usize);
                let ln_n = nn.ln();
                match ln_bessel_int(n, S::one()) {
                    Ok(li) => LogReal::from_ln(p * ln_n + mm * ln_n.ln() + li),
                    Err(e) => {
                        err = Some(e);
                        LogReal::zero()
                    }
                }
            })?;
            if let Some(e) = err {
                return Err(e);
            }
            let v = v.scaled(S::LN_2() - S::one());
            let k1 = k_series(p + S::one(), policy)?.get();
            (v, ln_me.exp() * k1)
        }
    };
    if value.get() > bound {
        return Err(Error::Consistency(format!(
            "derivative estimate {} exceeds its bound {} at p = {p}",
            value.get(),
            bound
        )));
    }
    Ok(Derivative { value, bound })
}

/// Left derivative of `K(p) = S(p)^p` at `p = 4`, taken on the small-p
/// closed form by Richardson-extrapolated central differences.
pub fn left_derivative_k_at_4<S: Scalar>() -> Result<S> {
    let four = S::lit(4.0);
    let d = |hh: S| -> Result<S> { Ok((explicit_moment(four + hh)? - explicit_moment(four - hh)?) / (hh + hh)) };
    let mut tab: Vec<Vec<S>> = Vec::new();
    let mut hh = S::lit(0.125);
    for i in 0..6 {
        let mut row = vec![d(hh)?];
        let mut f = S::one();
        for j in 1..=i {
            f = f * S::lit(4.0);
            let v = row[j - 1] + (row[j - 1] - tab[i - 1][j - 1]) / (f - S::one());
            row.push(v);
        }
        tab.push(row);
        hh = hh * S::lit(0.5);
    }
    Ok(*tab.last().and_then(|r| r.last()).expect("non-empty table"))
}

/// Series family selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    F3,
    G3,
    B4,
    D4,
    K,
    L,
    R,
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "F3" => Family::F3,
            "G3" => Family::G3,
            "B4" => Family::B4,
            "D4" => Family::D4,
            "K" => Family::K,
            "L" => Family::L,
            "R" => Family::R,
            _ => return Err(Error::InvalidInput(format!("unknown family {s}"))),
        })
    }
}

/// Parameters of one series; each family reads only the fields it needs.
#[derive(Clone, Copy, Debug)]
pub struct SeriesSpec<S> {
    pub family: Family,
    pub p: S,
    pub theta: S,
    pub beta: S,
    pub a: S,
    pub lambda: S,
    pub gamma: S,
    pub t: S,
}

impl<S: Scalar> SeriesSpec<S> {
    pub fn new(family: Family, p: S) -> Self {
        SeriesSpec {
            family,
            p,
            theta: S::one(),
            beta: S::one(),
            a: S::zero(),
            lambda: S::one(),
            gamma: S::zero(),
            t: S::lit(0.5),
        }
    }
}

fn integer_p<S: Scalar>(p: S) -> Result<u32> {
    let r = p.round();
    if r != p || p < S::one() || p > S::lit(u32::MAX as f64) {
        return Err(Error::domain(format!("this family needs a positive integer p, got {p}")));
    }
    Ok(r.as_f64() as u32)
}

pub fn evaluate<S: Scalar>(spec: &SeriesSpec<S>, policy: &TruncationPolicy) -> Result<EvalResult<S>> {
    match spec.family {
        Family::F3 => eval_f3(spec.p, spec.theta, spec.beta, policy),
        Family::G3 => eval_g3(integer_p(spec.p)?, spec.theta, spec.beta, policy),
        Family::B4 => eval_b4(spec.p, spec.a, spec.lambda, spec.gamma, policy),
        Family::D4 => eval_d4(integer_p(spec.p)?, spec.a, spec.lambda, spec.gamma, policy),
        Family::K => k_series(spec.p, policy),
        Family::L => l_series(spec.p, policy),
        Family::R => r_series(spec.p, spec.t, policy),
    }
}
