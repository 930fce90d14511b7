//! Monte-Carlo oracle: Poisson and Skellam sampling, empirical absolute
//! moments and empirical spot checks of the symmetric Rosenthal inequality.
//!
//! Generator: xoshiro256** seeded through SplitMix64 (`seed_from_u64`).
//! Work is split into [`STREAMS`] fixed streams; stream `i` starts from the
//! seeded state advanced by `i` calls of `jump()` (2^128 steps each), and the
//! per-stream statistics are merged in stream order, so results do not depend
//! on the thread count.

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::series::{self, TruncationPolicy};
use crate::special::log_gamma_unchecked;

/// Number of independent substreams a run is split into.
pub const STREAMS: usize = 64;

pub type McRng = Xoshiro256StarStar;

/// Parameters of a moment estimate of `E|ξ − η|^p`, ξ ~ Poisson(λ), η ~ Poisson(μ).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McConfig {
    pub samples: u64,
    pub seed: u64,
    pub lambda: f64,
    pub mu: f64,
    pub p: f64,
}

impl McConfig {
    pub fn validate(&self) -> Result<()> {
        if self.samples < 10_000 {
            return Err(Error::InvalidInput(format!("need at least 10^4 samples, got {}", self.samples)));
        }
        if !(self.lambda > 0.0 && self.mu > 0.0) {
            return Err(Error::domain(format!("rates must be positive, got ({}, {})", self.lambda, self.mu)));
        }
        if !(self.p >= 2.0) || !self.p.is_finite() {
            return Err(Error::domain(format!("need p >= 2, got {}", self.p)));
        }
        Ok(())
    }
}

/// Sample mean with its standard error (sample sd / sqrt(n)).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MomentEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: u64,
}

/// Draws from Poisson(λ): inversion for `λ <= 30`, Hörmann's PTRS
/// transformed rejection above.
pub fn sample_poisson<R: Rng + ?Sized>(lambda: f64, rng: &mut R) -> Result<u64> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::domain(format!("Poisson rate must be positive, got {lambda}")));
    }
    Ok(if lambda <= 30.0 { poisson_inversion(lambda, rng) } else { poisson_ptrs(lambda, rng) })
}

fn poisson_inversion<R: Rng + ?Sized>(lambda: f64, rng: &mut R) -> u64 {
    let u: f64 = rng.random();
    let mut k = 0u64;
    let mut pk = (-lambda).exp();
    let mut cdf = pk;
    while u > cdf {
        k += 1;
        pk *= lambda / k as f64;
        let next = cdf + pk;
        if next == cdf {
            break;
        }
        cdf = next;
    }
    k
}

fn poisson_ptrs<R: Rng + ?Sized>(lambda: f64, rng: &mut R) -> u64 {
    let slam = lambda.sqrt();
    let loglam = lambda.ln();
    let b = 0.931 + 2.53 * slam;
    let a = -0.059 + 0.02483 * b;
    let inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    let vr = 0.9277 - 3.6224 / (b - 2.0);
    loop {
        let u = rng.random::<f64>() - 0.5;
        let v: f64 = rng.random();
        let us = 0.5 - u.abs();
        let k = ((2.0 * a / us + b) * u + lambda + 0.43).floor();
        if us >= 0.07 && v <= vr {
            return k as u64;
        }
        if k < 0.0 || (us < 0.013 && v > us) {
            continue;
        }
        let lhs = v.ln() + inv_alpha.ln() - (a / (us * us) + b).ln();
        if lhs <= -lambda + k * loglam - log_gamma_unchecked(k + 1.0) {
            return k as u64;
        }
    }
}

/// Running mean and sum of squared deviations (Welford).
#[derive(Clone, Copy, Default)]
struct Moments {
    n: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.n += 1;
        let d = x - self.mean;
        self.mean += d / self.n as f64;
        self.m2 += d * (x - self.mean);
    }

    fn merge(self, o: Moments) -> Moments {
        if self.n == 0 {
            return o;
        }
        if o.n == 0 {
            return self;
        }
        let n = self.n + o.n;
        let d = o.mean - self.mean;
        Moments {
            n,
            mean: self.mean + d * o.n as f64 / n as f64,
            m2: self.m2 + o.m2 + d * d * (self.n as f64 * o.n as f64) / n as f64,
        }
    }

    fn estimate(self) -> MomentEstimate {
        let var = if self.n > 1 { self.m2 / (self.n - 1) as f64 } else { 0.0 };
        MomentEstimate { mean: self.mean, stderr: (var / self.n as f64).sqrt(), samples: self.n }
    }
}

/// Seeded generator for substream `i`.
pub fn stream(seed: u64, i: usize) -> McRng {
    let mut r = McRng::seed_from_u64(seed);
    for _ in 0..i {
        r.jump();
    }
    r
}

/// Mean of `draw(rng)` over `samples` draws, split across [`STREAMS`] streams.
fn parallel_mean(samples: u64, seed: u64, draw: impl Fn(&mut McRng) -> Result<f64> + Sync) -> Result<MomentEstimate> {
    let per = samples / STREAMS as u64;
    let extra = samples % STREAMS as u64;
    let parts: Vec<Moments> = (0..STREAMS)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream(seed, i);
            let mut m = Moments::default();
            let n = per + u64::from((i as u64) < extra);
            for _ in 0..n {
                m.push(draw(&mut rng)?);
            }
            Ok(m)
        })
        .collect::<Result<_>>()?;
    Ok(parts.into_iter().fold(Moments::default(), Moments::merge).estimate())
}

/// One draw of `ξ − η`.
pub fn sample_skellam<R: Rng + ?Sized>(lambda: f64, mu: f64, rng: &mut R) -> Result<i64> {
    Ok(sample_poisson(lambda, rng)? as i64 - sample_poisson(mu, rng)? as i64)
}

/// Monte-Carlo estimate of `E|ξ − η|^p`.
pub fn empirical_abs_moment(cfg: &McConfig) -> Result<MomentEstimate> {
    cfg.validate()?;
    let McConfig { lambda, mu, p, .. } = *cfg;
    parallel_mean(cfg.samples, cfg.seed, |rng| Ok((sample_skellam(lambda, mu, rng)?.unsigned_abs() as f64).powf(p)))
}

/// A symmetric summand family.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Summand {
    /// ±a with probability 1/2 each.
    TwoPoint { a: f64 },
    /// ξ − ξ' with ξ, ξ' independent Poisson(λ).
    SymPoisson { lambda: f64 },
    /// Uniform on [−a, a].
    Uniform { a: f64 },
}

impl Summand {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<f64> {
        Ok(match *self {
            Summand::TwoPoint { a } => {
                if rng.random::<bool>() {
                    a
                } else {
                    -a
                }
            }
            Summand::SymPoisson { lambda } => sample_skellam(lambda, lambda, rng)? as f64,
            Summand::Uniform { a } => a * (2.0 * rng.random::<f64>() - 1.0),
        })
    }

    fn variance(&self) -> f64 {
        match *self {
            Summand::TwoPoint { a } => a * a,
            Summand::SymPoisson { lambda } => 2.0 * lambda,
            Summand::Uniform { a } => a * a / 3.0,
        }
    }

    /// `E|ξ|^p`, exactly for the bounded families and by series for the Poisson one.
    fn abs_moment(&self, p: f64, pol: &TruncationPolicy) -> Result<f64> {
        Ok(match *self {
            Summand::TwoPoint { a } => a.abs().powf(p),
            Summand::Uniform { a } => a.abs().powf(p) / (p + 1.0),
            Summand::SymPoisson { lambda } => {
                series::eval_f3(p, 1.0, 2.0 * lambda, pol)?.get() * (-2.0 * lambda).exp()
            }
        })
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            Summand::TwoPoint { a } | Summand::Uniform { a } => a.is_finite() && a >= 0.0,
            Summand::SymPoisson { lambda } => lambda.is_finite() && lambda >= 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!("bad summand {self:?}")))
        }
    }

    fn is_zero(&self) -> bool {
        match *self {
            Summand::TwoPoint { a } | Summand::Uniform { a } => a == 0.0,
            Summand::SymPoisson { lambda } => lambda == 0.0,
        }
    }
}

/// Empirical check of `||Σξᵢ||_p <= S(p) max(||Σξᵢ||_2, (Σ||ξᵢ||_p^p)^{1/p})`.
#[derive(Clone, Debug, PartialEq)]
pub struct RosenthalReport {
    pub summands: Vec<Summand>,
    pub p: f64,
    /// Estimate of `E|Σξᵢ|^p`.
    pub sum_moment: MomentEstimate,
    /// `max(||Σξᵢ||_2, (Σ E|ξᵢ|^p)^{1/p})`, computed exactly.
    pub denominator: f64,
    pub ratio: f64,
    /// Delta-method standard error of `ratio`.
    pub ratio_stderr: f64,
    pub s_p: f64,
    /// `ratio <= S(p) + 4 · ratio_stderr`.
    pub holds: bool,
}

/// Rosenthal check on an explicit sequence of summands.
pub fn rosenthal_check_summands(summands: &[Summand], p: f64, samples: u64, seed: u64) -> Result<RosenthalReport> {
    if !(p >= 4.0) || !p.is_finite() {
        return Err(Error::domain(format!("rosenthal_check needs p >= 4, got {p}")));
    }
    if samples < 10_000 {
        return Err(Error::InvalidInput(format!("need at least 10^4 samples, got {samples}")));
    }
    for s in summands {
        s.validate()?;
    }
    if summands.iter().all(Summand::is_zero) {
        return Err(Error::InvalidInput("all summands are identically zero".into()));
    }
    let pol = TruncationPolicy::default();
    let l2 = summands.iter().map(Summand::variance).sum::<f64>().sqrt();
    let lp = summands.iter().map(|s| s.abs_moment(p, &pol)).sum::<Result<f64>>()?.powf(p.recip());
    let denominator = l2.max(lp);
    let sum_moment = parallel_mean(samples, seed, |rng| {
        let mut acc = 0.0;
        for s in summands {
            acc += s.sample(rng)?;
        }
        Ok(acc.abs().powf(p))
    })?;
    let norm = sum_moment.mean.powf(p.recip());
    let ratio = norm / denominator;
    let ratio_stderr = if sum_moment.mean > 0.0 { ratio * sum_moment.stderr / (p * sum_moment.mean) } else { 0.0 };
    let s_p = series::s_of_p(p, &pol)?;
    Ok(RosenthalReport {
        summands: summands.to_vec(),
        p,
        sum_moment,
        denominator,
        ratio,
        ratio_stderr,
        s_p,
        holds: ratio <= s_p + 4.0 * ratio_stderr,
    })
}

/// Rosenthal check on `n` summands drawn from `menu` with random scales in
/// `[1/2, 2]`, the choice seeded by `cfg.seed`.
pub fn rosenthal_check(n: usize, menu: &[Summand], p: f64, cfg: &McConfig) -> Result<RosenthalReport> {
    if n == 0 || menu.is_empty() {
        return Err(Error::InvalidInput("need at least one summand and a non-empty menu".into()));
    }
    let mut rng = McRng::seed_from_u64(cfg.seed ^ 0x9e37_79b9_7f4a_7c15);
    let summands: Vec<Summand> = (0..n)
        .map(|_| {
            let scale = 0.5 + 1.5 * rng.random::<f64>();
            match menu[rng.random_range(0..menu.len())] {
                Summand::TwoPoint { a } => Summand::TwoPoint { a: a * scale },
                Summand::SymPoisson { lambda } => Summand::SymPoisson { lambda: lambda * scale },
                Summand::Uniform { a } => Summand::Uniform { a: a * scale },
            }
        })
        .collect();
    rosenthal_check_summands(&summands, p, cfg.samples, cfg.seed)
}
