//! Saddle-point scaffolding for the large-p behaviour of L(p) and K(p): the
//! comparators g and h, the roots of `M ln M = p` and `N ln 2N = p`, their
//! envelopes, the saddle values X and Y with explicit bounds, the sandwich
//! bounds for L and K, and the truncated expansions.

use crate::error::{Error, Result};
use crate::logreal::LogReal;
use crate::scalar::Scalar;
use crate::series::{self, TruncationPolicy};
use crate::special::erf;

/// Regime floor for the L(p) envelope and bounds.
pub const P0: f64 = 700.0;
/// Regime floor for the K(p) bounds.
pub const P1: f64 = 1e6;

/// Root of a scalar equation with its residual.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolveResult<S> {
    pub root: S,
    pub residual: S,
    pub iterations: usize,
}

/// Lower and upper bound valid for `p >= regime_floor`.
#[derive(Clone, Copy, Debug)]
pub struct SandwichBound<S: Scalar> {
    pub lower: LogReal<S>,
    pub upper: LogReal<S>,
    pub regime_floor: f64,
}

/// `g(p) = p / (e ln p)`.
pub fn g<S: Scalar>(p: S) -> S {
    p / (S::E() * p.ln())
}

/// `Δ(p) = ln ln p / ln p`.
pub fn big_delta<S: Scalar>(p: S) -> S {
    p.ln().ln() / p.ln()
}

/// `δ(p) = 1 / ln p`.
pub fn small_delta<S: Scalar>(p: S) -> S {
    p.ln().recip()
}

/// `h(p) = g(p) (1 + Δ + Δ²)`.
pub fn h<S: Scalar>(p: S) -> S {
    let d = big_delta(p);
    g(p) * (S::one() + d + d * d)
}

/// Solves `x ln(c x) = p` for `p >= 0`, `c > 0` on the branch `x >= 1/c`.
///
/// Safeguarded Newton: iterates stay inside a sign-change bracket and fall
/// back to bisection when a step leaves it.
pub fn solve_x_ln_cx<S: Scalar>(p: S, c: S) -> Result<SolveResult<S>> {
    if !(p >= S::zero()) || !p.is_finite() || !(c > S::zero()) || !c.is_finite() {
        return Err(Error::domain(format!("x ln(cx) = p needs p >= 0 and c > 0, got p = {p}, c = {c}")));
    }
    let f = |x: S| x * (c * x).ln() - p;
    let mut lo = c.recip();
    if p.is_zero() {
        return Ok(SolveResult { root: lo, residual: S::zero(), iterations: 0 });
    }
    let mut hi = p.max(S::E() / c);
    while f(hi) <= S::zero() {
        hi = hi + hi;
    }
    let tol = S::eps() * S::lit(64.0) * p;
    let guess = p / (c * p).max(S::E()).ln();
    let mut x = if guess > lo && guess < hi { guess } else { (lo + hi) * S::lit(0.5) };
    for it in 1..=200 {
        let fx = f(x);
        if fx.abs() <= tol {
            return finish(x, fx, it, p);
        }
        if fx < S::zero() {
            lo = x;
        } else {
            hi = x;
        }
        let step = fx / ((c * x).ln() + S::one());
        let mut next = x - step;
        if !(next > lo && next < hi) {
            next = (lo + hi) * S::lit(0.5);
        }
        if (next - x).abs() <= S::eps() * S::lit(4.0) * x {
            return finish(next, f(next), it, p);
        }
        x = next;
    }
    Err(Error::Solver(format!("x ln(cx) = {p} did not converge in 200 iterations")))
}

fn finish<S: Scalar>(root: S, residual: S, iterations: usize, p: S) -> Result<SolveResult<S>> {
    if residual.abs() > S::lit(1e-13) * p {
        return Err(Error::Solver(format!("residual {residual} too large at p = {p}")));
    }
    Ok(SolveResult { root, residual, iterations })
}

fn check_p<S: Scalar>(p: S, floor: f64, what: &str) -> Result<()> {
    if p.is_nan() || p < S::lit(floor) {
        return Err(Error::domain(format!("{what} needs p >= {floor}, got {p}")));
    }
    Ok(())
}

fn check_regime<S: Scalar>(p: S, floor: f64, what: &str) -> Result<()> {
    if p.is_nan() || p < S::lit(floor) {
        return Err(Error::regime(what, floor, p.as_f64()));
    }
    Ok(())
}

/// Root of `M ln M = p`.
pub fn solve_m<S: Scalar>(p: S) -> Result<SolveResult<S>> {
    check_p(p, 4.0, "solve_M")?;
    solve_x_ln_cx(p, S::one())
}

/// Root of `N ln(2N) = p`; equals `M(2p) / 2`.
pub fn solve_n<S: Scalar>(p: S) -> Result<SolveResult<S>> {
    check_p(p, 4.0, "solve_N")?;
    solve_x_ln_cx(p, S::lit(2.0))
}

/// `C₁₄ = (1 − ln ln P₀ / ln P₀)^{-1}`.
pub fn c14<S: Scalar>() -> S {
    (S::one() - big_delta(S::lit(P0))).recip()
}

/// `C₁₅ = 2 / (sqrt(1 + 4Δ²(P₀)) + 1)`.
pub fn c15<S: Scalar>() -> S {
    let d = big_delta(S::lit(P0));
    S::lit(2.0) / ((S::one() + S::lit(4.0) * d * d).sqrt() + S::one())
}

/// `ε₊(p) = Δ + C₁₄Δ²`.
pub fn eps_plus<S: Scalar>(p: S) -> S {
    let d = big_delta(p);
    d + c14::<S>() * d * d
}

/// `ε₋(p) = Δ + C₁₅Δ²`.
pub fn eps_minus<S: Scalar>(p: S) -> S {
    let d = big_delta(p);
    d + c15::<S>() * d * d
}

/// `V(x, p) = p ln x − x ln x + x`.
pub fn v<S: Scalar>(x: S, p: S) -> S {
    p * x.ln() - x * x.ln() + x
}

/// `W(x, p) = p ln x − x ln x + x (1 − ln 2)`.
pub fn w<S: Scalar>(x: S, p: S) -> S {
    p * x.ln() - x * x.ln() + x * (S::one() - S::LN_2())
}

/// Envelopes around M and N.
#[derive(Clone, Copy, Debug)]
pub struct Envelopes<S> {
    pub eps_plus: S,
    pub eps_minus: S,
    pub m_plus: S,
    pub m_minus: S,
    pub n_plus: S,
    pub n_minus: S,
}

/// `M± = (p/ln p)(1 + ε±(p))`, `N± = (p/ln 2p)(1 + ε±(2p))`, for `p >= 700`.
///
/// N± is `M±(2p)/2`, mirroring `N(p) = M(2p)/2`; see [`n_envelope_printed`]
/// for the variant carrying an extra `1/e`.
pub fn envelopes<S: Scalar>(p: S) -> Result<Envelopes<S>> {
    check_regime(p, P0, "envelopes")?;
    Ok(envelopes_unchecked(p))
}

fn envelopes_unchecked<S: Scalar>(p: S) -> Envelopes<S> {
    let two_p = p + p;
    let (ep, em) = (eps_plus(p), eps_minus(p));
    let base_m = p / p.ln();
    let base_n = p / two_p.ln();
    Envelopes {
        eps_plus: ep,
        eps_minus: em,
        m_plus: base_m * (S::one() + ep),
        m_minus: base_m * (S::one() + em),
        n_plus: base_n * (S::one() + eps_plus(two_p)),
        n_minus: base_n * (S::one() + eps_minus(two_p)),
    }
}

/// `(p / (e ln 2p)) (1 + ε±(2p))`, returned as `(minus, plus)`.
pub fn n_envelope_printed<S: Scalar>(p: S) -> (S, S) {
    let two_p = p + p;
    let base = p / (S::E() * two_p.ln());
    (base * (S::one() + eps_minus(two_p)), base * (S::one() + eps_plus(two_p)))
}

/// Everything the large-p analysis needs at one p.
#[derive(Clone, Copy, Debug)]
pub struct AsymptoticEnv<S> {
    pub p: S,
    pub g: S,
    pub h: S,
    pub big_delta: S,
    pub small_delta: S,
    pub zeta: S,
    pub m: S,
    pub n: S,
    pub eps_plus: S,
    pub eps_minus: S,
    pub m_plus: S,
    pub m_minus: S,
    pub n_plus: S,
    pub n_minus: S,
    pub x: S,
    pub y: S,
}

impl<S: Scalar> AsymptoticEnv<S> {
    /// Defined for `p >= 4`; the envelope fields are only meaningful from 700 on.
    pub fn new(p: S) -> Result<Self> {
        check_p(p, 4.0, "AsymptoticEnv")?;
        let m = solve_m(p)?.root;
        let n = solve_n(p)?.root;
        let e = envelopes_unchecked(p);
        Ok(AsymptoticEnv {
            p,
            g: g(p),
            h: h(p),
            big_delta: big_delta(p),
            small_delta: small_delta(p),
            zeta: S::LN_2() / (p + p).ln(),
            m,
            n,
            eps_plus: e.eps_plus,
            eps_minus: e.eps_minus,
            m_plus: e.m_plus,
            m_minus: e.m_minus,
            n_plus: e.n_plus,
            n_minus: e.n_minus,
            x: v(m, p) / p,
            y: w(n, p) / p,
        })
    }

    /// `X(p) − ln g(p)`.
    pub fn x0(&self) -> S {
        self.x - self.g.ln()
    }

    /// `Y(p) − ln g(p)`.
    pub fn y0(&self) -> S {
        self.y - self.g.ln()
    }
}

/// `X(p) = V(M(p), p) / p`.
pub fn x_of_p<S: Scalar>(p: S) -> Result<S> {
    Ok(v(solve_m(p)?.root, p) / p)
}

/// `Y(p) = W(N(p), p) / p`.
pub fn y_of_p<S: Scalar>(p: S) -> Result<S> {
    Ok(w(solve_n(p)?.root, p) / p)
}

/// Explicit bounds `X₂ < X − ln g < X₁` and `Y₂, Y₁` around `Y − ln g`.
#[derive(Clone, Copy, Debug)]
pub struct XyBounds<S> {
    pub x1: S,
    pub x2: S,
    pub y1: S,
    pub y2: S,
}

pub fn xy_bounds<S: Scalar>(p: S) -> Result<XyBounds<S>> {
    check_regime(p, P0, "XY_bounds")?;
    let two_p = p + p;
    let (dl, sd) = (big_delta(p), small_delta(p));
    let (ep, em) = (eps_plus(p), eps_minus(p));
    let x1 = dl + sd + dl * ep + sd * (ep - ep.ln_1p());
    let x2 = dl + sd + (em.ln_1p() - em) - sd * em * em.ln_1p();
    let (dl2, sd2) = (big_delta(two_p), small_delta(two_p));
    let (ep2, em2) = (eps_plus(two_p), eps_minus(two_p));
    let l2 = sd * S::LN_2();
    let y1 = dl2 + sd2 + (S::one() + ep2) * l2 / (S::one() + l2) + ep2 * (dl2 + sd2);
    let y2 = dl2 + sd2 + em2 * (dl2 + sd2);
    Ok(XyBounds { x1, x2, y1, y2 })
}

fn frac_1_sqrt_2pi<S: Scalar>() -> S {
    (S::PI() + S::PI()).sqrt().recip()
}

/// `∫_{a}^{b} exp(−κ t²/2) dt` for `0 <= a <= b`.
fn half_gauss<S: Scalar>(kappa: S, a: S, b: S) -> S {
    let s = (kappa * S::lit(0.5)).sqrt();
    (S::PI() / (kappa + kappa)).sqrt() * (erf(s * b) - erf(s * a))
}

/// Log of a Gaussian-window lower bound for `Σ_{n>=root} exp(f(n, q))`
/// where `f` is concave with maximum `q·peak` at `root` and curvature at most
/// `(q + root)/root²` to the right of it.
fn window_lower_ln<S: Scalar>(q: S, root: S, peak: S) -> S {
    let kappa = (q + root) / (root * root);
    peak + half_gauss(kappa, S::one(), S::one() + q.sqrt()).ln()
}

/// Bounds on L(p) for `p >= 700`.
///
/// Upper: `e^{-1} exp(pX) [1.5 e^{-pX} + (2π)^{-1/2} + Ψ₁ + 2(2π)^{-1/2} Ψ₂]`.
/// Lower: `e L(p) >= Σ_{m>=2} m^p/(m+1)!`, with `m^{p-1}/m!` bounded below
/// through Stirling by `(2π)^{-1/2} e^{-1/12} exp(V(m, p − 3/2))` and the sum
/// over a window right of `M(p − 3/2)` bounded by a Gaussian integral.
pub fn sandwich_l<S: Scalar>(p: S) -> Result<SandwichBound<S>> {
    check_regime(p, P0, "sandwich_L")?;
    let x = x_of_p(p)?;
    let dl = big_delta(p);
    let a = S::one() + dl + c14::<S>() * dl * dl;
    let lnp = p.ln();
    let psi1 = (S::lit(2.0) * S::PI() * p).sqrt() * a / lnp;
    let psi2 = (-(lnp * lnp) / (a * a)).exp() * p * a * a / (lnp * lnp);
    let r = frac_1_sqrt_2pi::<S>();
    let bracket = S::lit(1.5) * (-p * x).exp() + r + psi1 + S::lit(2.0) * r * psi2;
    let upper = -S::one() + p * x + bracket.ln();

    let q = p - S::lit(1.5);
    let mq = solve_m(q)?.root;
    let lower = -S::one() + (mq / (mq + S::one())).ln() + r.ln() - S::lit(12.0).recip()
        + window_lower_ln(q, mq, v(mq, q));
    Ok(SandwichBound { lower: LogReal::from_ln(lower), upper: LogReal::from_ln(upper), regime_floor: P0 })
}

/// Bounds on K(p) for `p >= 10⁶`.
///
/// Upper: `2e^{-3/4} exp(pY) [(2π)^{-1/2} + √p (1+ε₊(2p))/ln 2p
///   + 2(2π)^{-1/2} p ln^{-2}p (1+ε₊(2p))² exp(−ln²p / (2(1+ε₊(2p))²))]`.
/// Lower: `K > (2/e) Σ n^p 2^{-n}/n!`, then a Gaussian window on
/// `W(·, p − 1/2)` right of `N(p − 1/2)`.
pub fn sandwich_k<S: Scalar>(p: S) -> Result<SandwichBound<S>> {
    check_regime(p, P1, "sandwich_K")?;
    let y = y_of_p(p)?;
    let two_p = p + p;
    let e1 = S::one() + eps_plus(two_p);
    let lnp = p.ln();
    let r = frac_1_sqrt_2pi::<S>();
    let tail = S::lit(2.0) * r * p / (lnp * lnp) * e1 * e1 * (-(lnp * lnp) * S::lit(0.5) / (e1 * e1)).exp();
    let bracket = r + p.sqrt() * e1 / two_p.ln() + tail;
    let upper = S::LN_2() - S::lit(0.75) + p * y + bracket.ln();

    let q = p - S::lit(0.5);
    let nq = solve_n(q)?.root;
    let lower = S::LN_2() - S::one() + r.ln() - S::lit(12.0).recip() + window_lower_ln(q, nq, w(nq, q));
    Ok(SandwichBound { lower: LogReal::from_ln(lower), upper: LogReal::from_ln(upper), regime_floor: P1 })
}

/// `Ψ₃(p)`: the upper L bound is `exp(pX) Ψ₃^p`.
pub fn psi3<S: Scalar>(p: S) -> Result<S> {
    let b = sandwich_l(p)?;
    Ok((b.upper.ln_abs() / p - x_of_p(p)?).exp())
}

/// `Ψ₄(p)`: the lower L bound is `exp(pX) Ψ₄^p`.
pub fn psi4<S: Scalar>(p: S) -> Result<S> {
    let b = sandwich_l(p)?;
    Ok((b.lower.ln_abs() / p - x_of_p(p)?).exp())
}

/// `Ψ₅(p)`: the upper K bound is `exp(pY) Ψ₅^p`.
pub fn psi5<S: Scalar>(p: S) -> Result<S> {
    let b = sandwich_k(p)?;
    Ok((b.upper.ln_abs() / p - y_of_p(p)?).exp())
}

/// `Ψ₆(p)`: the lower K bound is `exp(pY) Ψ₆^p`.
pub fn psi6<S: Scalar>(p: S) -> Result<S> {
    let b = sandwich_k(p)?;
    Ok((b.lower.ln_abs() / p - y_of_p(p)?).exp())
}

/// `g (1 + Δ + δ + Δ² + Δδ)`.
pub fn expansion_g<S: Scalar>(p: S) -> S {
    let (d, s) = (big_delta(p), small_delta(p));
    g(p) * (S::one() + d + s + d * d + d * s)
}

/// `g (1 + Δ + (1 − ln 2) δ + Δ²)`.
pub fn expansion_s<S: Scalar>(p: S) -> S {
    expansion_r(p, S::lit(0.5))
}

/// `g (1 + Δ + (1 + ln t) δ + Δ²)`.
pub fn expansion_r<S: Scalar>(p: S, t: S) -> S {
    let (d, s) = (big_delta(p), small_delta(p));
    g(p) * (S::one() + d + (S::one() + t.ln()) * s + d * d)
}

/// `(M^{1−M/p} e^{M/p}, N^{1−N/p} (e/2)^{N/p})`.
///
/// Their logs are exactly `X(p)` and `Y(p)`.
pub fn theorem43_forms<S: Scalar>(p: S) -> Result<(S, S)> {
    let m = solve_m(p)?.root;
    let n = solve_n(p)?.root;
    let (fm, fn_) = (m / p, n / p);
    let gf = ((S::one() - fm) * m.ln() + fm).exp();
    let sf = ((S::one() - fn_) * n.ln() + fn_ * (S::one() - S::LN_2())).exp();
    Ok((gf, sf))
}

/// `q(p; a, γ, λ) = (p − a − γ − 1/2) / λ`.
pub fn theorem31_q<S: Scalar>(p: S, a: S, lambda: S, gamma: S) -> S {
    (p - a - gamma - S::lit(0.5)) / lambda
}

/// `λ^{-1} B₄(p; a, λ, γ)^{1/q} / g(q) − (1 + Δ(q))`, which should shrink as p grows.
pub fn theorem31_deviation<S: Scalar>(p: S, a: S, lambda: S, gamma: S, policy: &TruncationPolicy) -> Result<S> {
    let q = theorem31_q(p, a, lambda, gamma);
    if !(q > S::E()) {
        return Err(Error::domain(format!("theorem 3.1 scaling needs q > e, got q = {q}")));
    }
    let b = series::eval_b4(p, a, lambda, gamma, policy)?;
    let ratio = (b.value.ln_abs() / q).exp() / (lambda * g(q));
    Ok(ratio - (S::one() + big_delta(q)))
}

/// Same as [`theorem31_deviation`] with the p-th root and `g(p)` in place of q.
pub fn theorem31_deviation_p_root<S: Scalar>(p: S, a: S, lambda: S, gamma: S, policy: &TruncationPolicy) -> Result<S> {
    let b = series::eval_b4(p, a, lambda, gamma, policy)?;
    let ratio = (b.value.ln_abs() / p).exp() / (lambda * g(p / lambda));
    Ok(ratio - (S::one() + big_delta(p / lambda)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DoubleDouble;
    use num_traits::Float;

    fn bisect(p: f64) -> f64 {
        let (mut lo, mut hi) = (1.0, p);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid * f64::ln(mid) < p {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn m_residual_and_bisection_oracle() {
        for &p in &[4.0_f64, 700.0, 1e6] {
            let r = solve_m(p).unwrap();
            assert!((r.root * r.root.ln() - p).abs() <= 1e-13 * p);
            assert!((r.root - bisect(p)).abs() < 1e-9 * r.root);
        }
        assert!((solve_m(4.0f64).unwrap().root - 3.327_322_322_599).abs() < 1e-11);
    }

    #[test]
    fn n_is_half_m_of_2p() {
        for &p in &[10.0_f64, 100.0, 1e4] {
            let n = solve_n(p).unwrap().root;
            let m2 = solve_m(2.0 * p).unwrap().root;
            assert!((n - 0.5 * m2).abs() <= 1e-12 * n);
        }
    }

    #[test]
    fn solver_in_double_double() {
        let p = DoubleDouble::from(700.0);
        let r = solve_m(p).unwrap();
        assert!((r.root * r.root.ln() - p).abs().hi() < 1e-27);
    }

    #[test]
    fn solver_rejects_bad_input() {
        assert!(matches!(solve_m(3.0), Err(Error::Domain(_))));
        assert!(solve_x_ln_cx(-1.0, 1.0).is_err());
        assert_eq!(solve_x_ln_cx(0.0, 2.0).unwrap().root, 0.5);
    }

    #[test]
    fn envelope_constants() {
        assert!((c14::<f64>() - 1.402365).abs() < 1e-6);
        assert!((c15::<f64>() - 0.928958).abs() < 1e-6);
    }

    #[test]
    fn upper_envelopes_hold() {
        for &p in &[700.0_f64, 2000.0, 1e5] {
            let e = envelopes(p).unwrap();
            let m = solve_m(p).unwrap().root;
            let n = solve_n(p).unwrap().root;
            assert!(m <= e.m_plus);
            assert!(n <= e.n_plus && e.n_minus <= e.n_plus);
            assert!(e.m_plus * e.m_plus.ln() > p);
        }
    }

    #[test]
    fn printed_lower_m_envelope_overshoots_at_700() {
        let e = envelopes(700.0f64).unwrap();
        let m = solve_m(700.0).unwrap().root;
        assert!(e.m_minus > m);
        assert!(e.m_minus * e.m_minus.ln() > 700.0);
    }

    #[test]
    fn printed_n_envelope_misses_n() {
        let (_, plus) = n_envelope_printed(1e6f64);
        assert!(plus < solve_n(1e6).unwrap().root);
    }

    #[test]
    fn envelopes_gate_on_regime() {
        assert!(matches!(envelopes(100.0), Err(Error::Regime { .. })));
        assert!(matches!(xy_bounds(699.0), Err(Error::Regime { .. })));
        assert!(matches!(sandwich_l(100.0), Err(Error::Regime { .. })));
        assert!(matches!(sandwich_k(1e5), Err(Error::Regime { .. })));
    }

    #[test]
    fn x_is_supremum_of_v() {
        let p = 50.0f64;
        let x = x_of_p(p).unwrap();
        for i in 0..100 {
            let t = 4.0 + (4.0 * p - 4.0) * ((i as f64 * 0.618_033_988_7).fract());
            assert!(v(t, p) / p <= x + 1e-15);
        }
    }

    #[test]
    fn y_below_x() {
        for &p in &[10.0_f64, 100.0, 1000.0] {
            assert!(y_of_p(p).unwrap() < x_of_p(p).unwrap());
        }
    }

    #[test]
    fn exp_x_over_g_at_1e6() {
        let p = 1e6f64;
        let r = x_of_p(p).unwrap().exp() / g(p);
        assert!((r - 1.325_098_746_377_939).abs() < 1e-12, "{r}");
    }

    #[test]
    fn xy_bound_values() {
        let b = xy_bounds(700.0f64).unwrap();
        assert!((b.x1.exp() - 1.759118).abs() < 1e-5);
        let env = AsymptoticEnv::new(700.0).unwrap();
        assert!(b.x2 < env.x0() && env.x0() < b.x1);
        let b6 = xy_bounds(1e6f64).unwrap();
        assert!((b6.y1.exp() - 1.44904).abs() < 1e-4);
    }

    #[test]
    fn x1_decreasing() {
        let mut prev = f64::INFINITY;
        let mut p = 700.0f64;
        while p <= 1e7 {
            let x1 = xy_bounds(p).unwrap().x1;
            assert!(x1 < prev);
            prev = x1;
            p *= 1.5;
        }
    }

    #[test]
    fn psi_values() {
        let p3 = psi3(700.0f64).unwrap();
        assert!(p3 <= 1.00826 && p3 > 1.0, "{p3}");
        let p5 = psi5(1e6f64).unwrap();
        assert!(p5 <= 1.000833 && p5 > 1.0, "{p5}");
        assert!(psi4(700.0f64).unwrap() < 1.0);
        assert!(psi6(1e6f64).unwrap() < 1.0);
    }

    #[test]
    fn expansion_identities() {
        for &p in &[20.0_f64, 1e3, 1e5] {
            assert!((expansion_r(p, 0.5) - expansion_s(p)).abs() <= 1e-14 * expansion_s(p));
        }
    }

    #[test]
    fn theorem43_logs_are_x_and_y() {
        for &p in &[4.0_f64, 50.0, 1e4] {
            let (gf, sf) = theorem43_forms(p).unwrap();
            assert!((gf.ln() - x_of_p(p).unwrap()).abs() < 1e-13);
            assert!((sf.ln() - y_of_p(p).unwrap()).abs() < 1e-13);
        }
    }

    #[test]
    fn env_fields() {
        let e = AsymptoticEnv::new(1000.0f64).unwrap();
        assert!((e.h - e.g * (1.0 + e.big_delta + e.big_delta.powi(2))).abs() < 1e-12);
        assert!((e.zeta - 2f64.ln() / 2000f64.ln()).abs() < 1e-15);
        assert!((e.m * e.m.ln() - 1000.0).abs() < 1e-10);
    }
}
