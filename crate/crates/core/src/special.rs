//! Gamma function, modified Bessel functions of the first kind, the Skellam
//! (Poisson-difference) pmf and the error function.

use crate::dd::DoubleDouble;
use crate::error::{Error, Result};
use crate::logreal::{LogReal, LogSum};
use crate::scalar::Scalar;

/// `B_{2k} / (2k (2k − 1))` for k = 1..15.
const STIRLING_COEFFS: [(i64, i64); 15] = [
    (1, 12),
    (-1, 360),
    (1, 1260),
    (-1, 1680),
    (1, 1188),
    (-691, 360360),
    (1, 156),
    (-3617, 122400),
    (43867, 244188),
    (-174611, 125400),
    (77683, 5796),
    (-236364091, 1506960),
    (657931, 300),
    (-3392780147, 93960),
    (1723168255201, 2492028),
];

/// Below this the Stirling series is entered only after an upward shift.
fn stirling_floor<S: Scalar>() -> S {
    if S::DIGITS > 16 {
        S::lit(30.0)
    } else {
        S::lit(12.0)
    }
}

/// `ln Γ(x)` for `x > 0`.
pub fn log_gamma<S: Scalar>(x: S) -> Result<S> {
    if !(x > S::zero()) || !x.is_finite() {
        return Err(Error::domain(format!("log_gamma needs a finite x > 0, got {x}")));
    }
    Ok(log_gamma_unchecked(x))
}

pub(crate) fn log_gamma_unchecked<S: Scalar>(x: S) -> S {
    if x == S::one() || x == S::lit(2.0) {
        return S::zero();
    }
    let floor = stirling_floor::<S>();
    if S::DIGITS <= 16 && x < floor {
        // The upward shift cancels digits; do it in double-double.
        let wide = log_gamma_unchecked(DoubleDouble::from(x.as_f64()));
        return S::lit(wide.hi() + wide.lo());
    }
    let mut shift = S::zero();
    let mut y = x;
    if y < floor {
        let mut prod = S::one();
        while y < floor {
            prod = prod * y;
            y = y + S::one();
        }
        shift = prod.ln();
    }
    let half = S::lit(0.5);
    let ln_2pi = (S::PI() + S::PI()).ln();
    let mut s = (y - half) * y.ln() - y + half * ln_2pi;
    let inv = y.recip();
    let inv2 = inv * inv;
    let mut pw = inv;
    for &(n, d) in STIRLING_COEFFS.iter() {
        let term = S::ratio(n, d) * pw;
        s = s + term;
        if term.abs() < S::eps() * s.abs() * S::lit(1e-3) {
            break;
        }
        pw = pw * inv2;
    }
    s - shift
}

/// `ln n!`.
pub fn ln_factorial<S: Scalar>(n: u64) -> S {
    if n < 2 {
        return S::zero();
    }
    log_gamma_unchecked(S::from_usize_lossy(n as usize) + S::one())
}

/// Options for [`bessel_i_with`].
#[derive(Clone, Copy, Debug)]
pub struct BesselOpts {
    /// Stop once the next term is below `rel_tol` times the partial sum.
    pub rel_tol: f64,
    pub max_terms: usize,
}

impl Default for BesselOpts {
    fn default() -> Self {
        BesselOpts { rel_tol: 1e-32, max_terms: 1_000_000 }
    }
}

/// Modified Bessel function `I_ν(z)` from its power series, in log space.
pub fn bessel_i<S: Scalar>(nu: S, z: S) -> Result<LogReal<S>> {
    bessel_i_with(nu, z, BesselOpts::default())
}

/// Integer order; `I_{−n} = I_n`.
pub fn bessel_i_int<S: Scalar>(n: i64, z: S) -> Result<LogReal<S>> {
    bessel_i(S::from_i64_lossy(n.abs()), z)
}

pub fn bessel_i_with<S: Scalar>(nu: S, z: S, opts: BesselOpts) -> Result<LogReal<S>> {
    if z < S::zero() || z.is_nan() {
        return Err(Error::domain(format!("bessel_i needs z >= 0, got {z}")));
    }
    if nu < S::zero() || nu.is_nan() {
        return Err(Error::domain(format!("bessel_i needs a non-negative order, got {nu}")));
    }
    if z.is_zero() {
        return Ok(if nu.is_zero() { LogReal::one() } else { LogReal::zero() });
    }
    let half_z = z * S::lit(0.5);
    let ln_q = (half_z * half_z).ln();
    let mut ln_term = nu * half_z.ln() - log_gamma_unchecked(nu + S::one());
    let past_peak = (z * z * S::lit(0.25)).to_usize().unwrap_or(usize::MAX);
    let tol = S::lit(opts.rel_tol).max(S::eps() * S::lit(1e-2)).ln();
    let mut acc = LogSum::new();
    for k in 0..opts.max_terms {
        acc.push(LogReal::from_ln(ln_term));
        let kk = S::from_usize_lossy(k);
        ln_term = ln_term + ln_q - ((kk + S::one()) * (nu + kk + S::one())).ln();
        if k >= past_peak && ln_term - acc.total().ln_abs() < tol {
            return Ok(acc.total());
        }
    }
    Err(Error::Truncation { what: format!("I_{nu}({z}) series"), terms: opts.max_terms })
}

/// `I_n(z) = (1/π) ∫_0^π exp(z cos θ) cos(nθ) dθ` by the trapezoid rule on a
/// full period, doubling the node count until two estimates agree.
///
/// The trapezoid rule is spectrally accurate here; the absolute error floor is
/// about `eps · exp(z)`, so tiny high-order values need a wide scalar.
pub fn bessel_i_quadrature<S: Scalar>(n: u32, z: S) -> S {
    let f = |m: usize| -> S {
        let mut acc = S::zero();
        let mut comp = S::zero();
        let step = (S::PI() + S::PI()) / S::from_usize_lossy(m);
        let nn = S::from_usize_lossy(n as usize);
        for j in 0..m {
            let th = step * S::from_usize_lossy(j);
            let v = (z * th.cos()).exp() * (nn * th).cos();
            let t = acc + v;
            comp = comp + if acc.abs() >= v.abs() { (acc - t) + v } else { (v - t) + acc };
            acc = t;
        }
        (acc + comp) / S::from_usize_lossy(m)
    };
    let floor = S::eps() * S::lit(16.0) * z.exp();
    let mut m = 2 * (n as usize + 8);
    let mut prev = f(m);
    loop {
        m *= 2;
        let cur = f(m);
        if (cur - prev).abs() <= floor.max(S::eps() * cur.abs()) || m > 1 << 20 {
            return cur;
        }
        prev = cur;
    }
}

/// Envelope `λ^{n/2}/n! <= I_n(2√λ) <= (λ^{n/2}/n!)(e^λ − 1)/λ` for `n >= 1`.
/// For `n = 0` the lower bound is 1 and the upper bound is `e^λ`.
pub fn bessel_bounds<S: Scalar>(n: u32, lambda: S) -> Result<(LogReal<S>, LogReal<S>)> {
    if !(lambda > S::zero()) {
        return Err(Error::domain(format!("bessel_bounds needs lambda > 0, got {lambda}")));
    }
    let nn = S::from_usize_lossy(n as usize);
    let lower = nn * S::lit(0.5) * lambda.ln() - ln_factorial::<S>(n as u64);
    let widen = if n == 0 { lambda } else { (lambda.exp_m1() / lambda).ln() };
    Ok((LogReal::from_ln(lower), LogReal::from_ln(lower + widen)))
}

/// `P(ξ − η = n)` for independent ξ ~ Poisson(λ), η ~ Poisson(μ).
pub fn skellam_pmf<S: Scalar>(n: i64, lambda: S, mu: S) -> Result<S> {
    Ok(skellam_ln_pmf(n, lambda, mu)?.exp())
}

pub fn skellam_ln_pmf<S: Scalar>(n: i64, lambda: S, mu: S) -> Result<S> {
    if !(lambda > S::zero() && mu > S::zero()) {
        return Err(Error::domain(format!("skellam rates must be positive, got ({lambda}, {mu})")));
    }
    let z = (lambda * mu).sqrt() * S::lit(2.0);
    let ln_i = bessel_i_int(n, z)?.ln_abs();
    Ok(-(lambda + mu) + S::from_i64_lossy(n) * S::lit(0.5) * (lambda / mu).ln() + ln_i)
}

/// Error function.
pub fn erf<S: Scalar>(x: S) -> S {
    let a = x.abs();
    let v = if a < S::lit(2.5) { erf_series(a) } else { S::one() - erfc_cf(a) };
    if x < S::zero() {
        -v
    } else {
        v
    }
}

/// Complementary error function.
pub fn erfc<S: Scalar>(x: S) -> S {
    if x < S::lit(2.5) {
        S::one() - erf(x)
    } else {
        erfc_cf(x)
    }
}

/// `2/√π e^{−x²} Σ 2^k x^{2k+1} / (2k+1)!!`; all terms positive.
fn erf_series<S: Scalar>(x: S) -> S {
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    let mut k = 0usize;
    loop {
        k += 1;
        term = term * x2 * S::lit(2.0) / S::from_usize_lossy(2 * k + 1);
        sum = sum + term;
        if term < S::eps() * sum * S::lit(1e-2) || k > 500 {
            break;
        }
    }
    sum * S::FRAC_2_SQRT_PI() * (-x2).exp()
}

/// `erfc(x) = e^{−x²}/√π · 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + …))))`, evaluated
/// by the modified Lentz method.
fn erfc_cf<S: Scalar>(x: S) -> S {
    let tiny = S::min_positive_value().sqrt();
    let mut f = x;
    let mut c = f;
    let mut d = S::zero();
    for k in 1..5000 {
        let a = S::from_usize_lossy(k) * S::lit(0.5);
        d = x + a * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = x + a / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = d.recip();
        let delta = c * d;
        f = f * delta;
        if (delta - S::one()).abs() < S::eps() {
            break;
        }
    }
    (-x * x).exp() / (S::PI().sqrt() * f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DoubleDouble as D;
    use num_traits::Float;
    use proptest::prelude::*;

    fn dd(s: &str) -> D {
        s.parse().unwrap()
    }

    fn rel(a: D, b: D) -> f64 {
        ((a - b) / b).abs().hi()
    }

    #[test]
    fn log_gamma_values() {
        assert_eq!(log_gamma(1.0f64).unwrap(), 0.0);
        assert!((log_gamma(5.0f64).unwrap() - 24f64.ln()).abs() < 1e-15);
        assert!((log_gamma(0.5f64).unwrap() - std::f64::consts::PI.sqrt().ln()).abs() < 1e-15);
        assert!(log_gamma(0.0f64).is_err());
        assert!(log_gamma(-1.5f64).is_err());
        assert!(rel(log_gamma(D::from(0.5)).unwrap(), dd("0.5723649429247000870717136756765293558236")) < 1e-30);
        assert!(rel(log_gamma(D::from(3.3)).unwrap(), dd("0.987098577894734404057278687990065182283")) < 1e-30);
        assert!(rel(log_gamma(D::from(10000000.25)).unwrap(), dd("151180953.3989978173046854517850836704832")) < 1e-30);
    }

    #[test]
    fn bessel_series_values() {
        assert_eq!(bessel_i_int(0, 0.0f64).unwrap().value(), 1.0);
        assert!(bessel_i_int(1, 0.0f64).unwrap().is_zero());
        let cases: [(f64, f64, &str); 5] = [
            (0.0, 1.0, "1.266065877752008335598244625214717537608"),
            (1.0, 1.0, "0.5651591039924850272076960276098633073289"),
            (20.0, 1.0, "3.966835985819020055732078249841492221015e-25"),
            (2.5, 3.7, "3.414958395937986979011311329442436494943"),
            (0.0, 50.0, "293255378384933632665.4675079456853858051"),
        ];
        for (nu, z, want) in cases {
            let got = bessel_i(D::from(nu), D::from(z)).unwrap().value();
            assert!(rel(got, dd(want)) < 1e-29, "I_{nu}({z}) = {got}");
        }
        let i100 = bessel_i_int(100, D::ONE).unwrap().value();
        assert!(rel(i100, dd("8.473674008138078865265551714933176330027e-189")) < 1e-29);
        assert_eq!(bessel_i_int(-3, 1.5f64).unwrap(), bessel_i_int(3, 1.5f64).unwrap());
        assert!(bessel_i_int(0, -1.0f64).is_err());
    }

    #[test]
    fn quadrature_matches_series() {
        for n in 0..=40u32 {
            let q = bessel_i_quadrature(n, 1.0f64);
            let s = bessel_i_int(n as i64, 1.0f64).unwrap().value();
            assert!((q - s).abs() < 1e-10, "n = {n}");
        }
        for n in [0u32, 1] {
            let q = bessel_i_quadrature(n, 1.0f64);
            let s = bessel_i_int(n as i64, 1.0f64).unwrap().value();
            assert!((q - s).abs() < 1e-12);
        }
        for n in [0u32, 5, 20] {
            let q = bessel_i_quadrature(n, D::ONE);
            let s = bessel_i_int(n as i64, D::ONE).unwrap().value();
            assert!(rel(q, s) < 1e-6, "n = {n}");
        }
    }

    #[test]
    fn quadrature_at_order_20_sits_in_envelope() {
        let q = LogReal::from_value(bessel_i_quadrature(20, D::ONE));
        let (lo, hi) = bessel_bounds(20, D::from(0.25)).unwrap();
        assert!(lo <= q && q <= hi);
    }

    #[test]
    fn envelope_holds() {
        for lam in [0.25, 0.5, 1.0, 2.0, 5.0] {
            for n in 0..=60u32 {
                let (lo, hi) = bessel_bounds(n, lam).unwrap();
                let v = bessel_i_int(n as i64, 2.0 * f64::sqrt(lam)).unwrap();
                assert!(lo <= v && v <= hi, "n = {n}, lambda = {lam}");
            }
        }
        let (lo, hi) = bessel_bounds(3, 0.25f64).unwrap();
        assert!((lo.value() - 0.25f64.powf(1.5) / 6.0).abs() < 1e-15);
        assert!(hi.value() > 0.0221);
        assert_eq!(bessel_bounds(0, 3.0f64).unwrap().0.value(), 1.0);
        assert!(bessel_bounds(2, 0.0f64).is_err());
    }

    #[test]
    fn printed_upper_bound_fails_at_order_zero() {
        // I_0(2) exceeds e − 1, so order zero needs the wider e^λ.
        let v = bessel_i_int(0, 2.0f64).unwrap().value();
        assert!(v > std::f64::consts::E - 1.0);
        assert!(v <= 1f64.exp());
    }

    fn poisson_pmf(k: i64, lam: f64) -> f64 {
        (-lam + k as f64 * lam.ln() - ln_factorial::<f64>(k as u64)).exp()
    }

    #[test]
    fn skellam_against_convolution() {
        let rates = [0.5, 1.0, 2.0];
        for &l in &rates {
            for &m in &rates {
                for n in -20i64..=20 {
                    let direct: f64 = (0..200i64).filter(|k| k - n >= 0).map(|k| poisson_pmf(k, l) * poisson_pmf(k - n, m)).sum();
                    let s = skellam_pmf(n, l, m).unwrap();
                    assert!((s - direct).abs() < 1e-12, "n = {n}, l = {l}, m = {m}");
                }
            }
        }
        assert!((skellam_pmf(0, 0.5f64, 0.5).unwrap() - 0.4657596075936404).abs() < 1e-15);
        assert!(skellam_pmf(0, 0.0f64, 1.0).is_err());
    }

    #[test]
    fn skellam_normalisation_and_moments() {
        let total: f64 = (-60..=60).map(|n| skellam_pmf(n, 1.0f64, 1.0).unwrap()).sum();
        assert!((total - 1.0).abs() < 1e-12);
        for (l, m) in [(0.5, 2.0), (1.0, 0.5), (2.0, 2.0)] {
            let m1: f64 = (-80..=80).map(|n| n as f64 * skellam_pmf(n, l, m).unwrap()).sum();
            let m2: f64 = (-80..=80).map(|n| (n * n) as f64 * skellam_pmf(n, l, m).unwrap()).sum();
            assert!((m1 - (l - m)).abs() < 1e-9);
            assert!((m2 - ((l - m) * (l - m) + l + m)).abs() < 1e-9);
        }
    }

    #[test]
    fn erf_values() {
        assert!(rel(erf(D::from(0.5)), dd("0.5204998778130465376827466538919645287364")) < 1e-30);
        assert!(rel(erf(D::from(3.0)), dd("0.9999779095030014145586272238704176796201")) < 1e-30);
        assert!(rel(erfc(D::from(6.0)), dd("2.151973671249891311659335039918738463048e-17")) < 1e-28);
        assert!(rel(erfc(D::from(10.0)), dd("2.088487583762544757000786294957788611561e-45")) < 1e-28);
        assert!((erf(-0.5f64) + 0.5204998778130465).abs() < 1e-15);
        assert_eq!(erf(0.0f64), 0.0);
    }

    proptest! {
        #[test]
        fn skellam_symmetric_when_rates_equal(n in 0i64..30, lam in 0.05f64..5.0) {
            let a = skellam_pmf(n, lam, lam).unwrap();
            let b = skellam_pmf(-n, lam, lam).unwrap();
            prop_assert!((a - b).abs() <= 1e-15 * a.max(1e-300));
        }

        #[test]
        fn gamma_recurrence(x in 0.01f64..200.0) {
            let lhs = log_gamma(x + 1.0).unwrap();
            let rhs = log_gamma(x).unwrap() + x.ln();
            prop_assert!((lhs - rhs).abs() <= 1e-13 * lhs.abs().max(1.0));
        }

        #[test]
        fn bessel_three_term_recurrence(n in 1i64..40, z in 0.1f64..10.0) {
            // I_{n−1}(z) − I_{n+1}(z) = (2n/z) I_n(z)
            let a = bessel_i_int(n - 1, z).unwrap().value();
            let b = bessel_i_int(n + 1, z).unwrap().value();
            let c = bessel_i_int(n, z).unwrap().value() * 2.0 * n as f64 / z;
            prop_assert!((a - b - c).abs() <= 1e-12 * a.abs());
        }

        #[test]
        fn erf_plus_erfc_is_one(x in -6.0f64..8.0) {
            prop_assert!((erf(x) + erfc(x) - 1.0).abs() < 1e-15);
        }
    }
}
