//! One-dimensional maximization of ratio functions over p: the extremal
//! constants of the Rosenthal inequality and the `u(t)`, `T(t)` table.

use rayon::prelude::*;

use crate::asymptotics::{self, P0, P1};
use crate::error::{Error, Result};
use crate::series::{self, TruncationPolicy};

/// A supremum with where it is attained and how it was found.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstantReport {
    pub name: String,
    pub value: f64,
    pub argmax: f64,
    pub bracket: (f64, f64),
    /// Width of the final argmax bracket (0 on integer grids).
    pub tolerance: f64,
    /// Spread of the objective over the final bracket.
    pub value_error: f64,
    /// Ceiling of the interior search; beyond it the tail bound applies.
    pub regime_split: f64,
    /// Certified upper bound of the objective on `[regime_split, ∞)`.
    pub tail_sup: f64,
    /// Grid looked unimodal: non-decreasing up to the argmax, non-increasing after.
    pub unimodal: bool,
    pub trace: Vec<(f64, f64)>,
}

/// Objective over p.
pub type Objective<'a> = dyn Fn(f64) -> Result<f64> + Sync + 'a;

const GRID_RATIO: f64 = 1.05;
const ARG_TOL: f64 = 1e-3;

fn geometric_grid(lo: f64, hi: f64) -> Vec<f64> {
    let mut g = vec![lo];
    let mut x = lo;
    while x * GRID_RATIO < hi {
        x *= GRID_RATIO;
        g.push(x);
    }
    if hi > lo {
        g.push(hi);
    }
    g
}

fn is_unimodal(vals: &[(f64, f64)], peak: usize) -> bool {
    let slack = 1e-12;
    vals[..=peak].windows(2).all(|w| w[1].1 >= w[0].1 - slack * w[0].1.abs())
        && vals[peak..].windows(2).all(|w| w[1].1 <= w[0].1 + slack * w[0].1.abs())
}

/// Maximizes `f` over `[domain_floor, ∞)`.
///
/// A geometric grid (ratio 1.05) on `[domain_floor, interior_ceiling]` brackets
/// the maximum, golden-section search refines it to `|Δp| <= 1e-3`, and
/// `tail_sup` (an upper bound of `f` beyond the ceiling) must lie below the
/// interior maximum, otherwise the search fails with a regime error.
pub fn maximize_ratio(
    name: &str,
    f: &Objective<'_>,
    domain_floor: f64,
    interior_ceiling: f64,
    tail_sup: impl FnOnce() -> Result<f64>,
) -> Result<ConstantReport> {
    if !(domain_floor.is_finite() && interior_ceiling >= domain_floor) {
        return Err(Error::InvalidInput(format!("bad search interval [{domain_floor}, {interior_ceiling}]")));
    }
    let grid = geometric_grid(domain_floor, interior_ceiling);
    let vals: Vec<f64> = grid.par_iter().map(|&p| f(p)).collect::<Result<_>>()?;
    let mut trace: Vec<(f64, f64)> = grid.iter().copied().zip(vals.iter().copied()).collect();
    let i = (0..vals.len()).fold(0, |b, j| if vals[j] > vals[b] { j } else { b });
    let unimodal = is_unimodal(&trace, i);
    let (mut a, mut b) = (grid[i.saturating_sub(1)], grid[(i + 1).min(grid.len() - 1)]);
    let bracket = (a, b);

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let (mut f1, mut f2) = (f(x1)?, f(x2)?);
    trace.push((x1, f1));
    trace.push((x2, f2));
    while b - a > ARG_TOL {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1)?;
            trace.push((x1, f1));
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2)?;
            trace.push((x2, f2));
        }
    }
    let mut argmax = 0.5 * (a + b);
    let mut value = f(argmax)?;
    trace.push((argmax, value));
    // endpoints of the bracket and the grid optimum may beat the refined point
    for &(p, v) in trace.iter() {
        if v > value || (v == value && p < argmax) {
            argmax = p;
            value = v;
        }
    }

    let value_error = (value - f1.min(f2)).max(0.0);
    let tail = tail_sup()?;
    if tail >= value {
        return Err(Error::regime(
            format!("{name}: tail bound {tail} beyond the ceiling is not below the interior maximum {value}"),
            interior_ceiling,
            interior_ceiling,
        ));
    }
    Ok(ConstantReport {
        name: name.to_string(),
        value,
        argmax,
        bracket,
        tolerance: ARG_TOL,
        value_error,
        regime_split: interior_ceiling,
        tail_sup: tail,
        unimodal,
        trace,
    })
}

/// Maximum of `f` over even integers `floor, floor + 2, …, ceiling`.
pub fn maximize_even(
    name: &str,
    f: &Objective<'_>,
    floor: u32,
    ceiling: u32,
    tail_sup: impl FnOnce() -> Result<f64>,
) -> Result<ConstantReport> {
    let start = floor + floor % 2;
    let ps: Vec<f64> = (start..=ceiling).step_by(2).map(f64::from).collect();
    if ps.is_empty() {
        return Err(Error::InvalidInput(format!("no even p in [{floor}, {ceiling}]")));
    }
    let vals: Vec<f64> = ps.par_iter().map(|&p| f(p)).collect::<Result<_>>()?;
    let trace: Vec<(f64, f64)> = ps.iter().copied().zip(vals).collect();
    let i = (0..trace.len()).fold(0, |b, j| if trace[j].1 > trace[b].1 { j } else { b });
    let tail = tail_sup()?;
    let (argmax, value) = trace[i];
    if tail >= value {
        return Err(Error::regime(
            format!("{name}: tail bound {tail} is not below the maximum {value}"),
            f64::from(ceiling),
            f64::from(ceiling),
        ));
    }
    Ok(ConstantReport {
        name: name.to_string(),
        value,
        argmax,
        bracket: (trace[i.saturating_sub(1)].0, trace[(i + 1).min(trace.len() - 1)].0),
        tolerance: 0.0,
        value_error: 0.0,
        regime_split: f64::from(ceiling),
        tail_sup: tail,
        unimodal: is_unimodal(&trace, i),
        trace,
    })
}

/// Largest value of `bound` on a geometric grid from `from` to 1e12.
///
/// The explicit bounds are smooth and eventually decreasing; the grid
/// maximum is used as their supremum.
fn grid_sup(from: f64, bound: impl Fn(f64) -> Result<f64>) -> Result<f64> {
    let mut p = from;
    let mut best = f64::NEG_INFINITY;
    while p <= 1e12 {
        best = best.max(bound(p)?);
        p *= 1.25;
    }
    Ok(best)
}

/// Upper bound of `G(p) / g(p)` for `p >= 700`: `Ψ₃(p) exp(X(p)) / g(p)`.
pub fn tail_g_over_g(p: f64) -> Result<f64> {
    Ok(asymptotics::sandwich_l(p)?.upper.root(p) / asymptotics::g(p))
}

/// Upper bound of `S(p) / g(p)` for `p >= 10⁶`: `Ψ₅(p) exp(Y(p)) / g(p)`.
pub fn tail_s_over_g(p: f64) -> Result<f64> {
    Ok(asymptotics::sandwich_k(p)?.upper.root(p) / asymptotics::g(p))
}

/// The coarser `Ψ₃(p) exp(X₁(p))`, with X replaced by its explicit bound.
pub fn tail_g_over_g_explicit(p: f64) -> Result<f64> {
    Ok(asymptotics::psi3(p)? * asymptotics::xy_bounds(p)?.x1.exp())
}

fn h_over_g(p: f64) -> f64 {
    let d = asymptotics::big_delta(p);
    1.0 + d + d * d
}

/// Infimum claim: the ratio stays above 1 and decreases toward it.
#[derive(Clone, Debug, PartialEq)]
pub struct InfimumCheck {
    pub name: String,
    pub grid_min: f64,
    /// Ratio at p = 1e3, 1e4, 1e5.
    pub trend: Vec<(f64, f64)>,
    pub holds: bool,
}

/// All extremal constants of the four ratios G/g, G/h, S/g, S/h, over real
/// p and over even p, plus the infimum checks.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstantsSuite {
    pub suprema: Vec<ConstantReport>,
    pub infima: Vec<InfimumCheck>,
}

impl ConstantsSuite {
    pub fn get(&self, name: &str) -> Option<&ConstantReport> {
        self.suprema.iter().find(|r| r.name == name)
    }
}

fn ratio_fns(pol: TruncationPolicy) -> [(&'static str, Box<Objective<'static>>); 4] {
    [
        ("G/g", Box::new(move |p| Ok(series::g_of_p(p, &pol)? / asymptotics::g(p)))),
        ("G/h", Box::new(move |p| Ok(series::g_of_p(p, &pol)? / asymptotics::h(p)))),
        ("S/g", Box::new(move |p| Ok(series::s_of_p(p, &pol)? / asymptotics::g(p)))),
        ("S/h", Box::new(move |p| Ok(series::s_of_p(p, &pol)? / asymptotics::h(p)))),
    ]
}

/// Sup over real p, sup over even p, and infimum trend for each ratio.
///
/// Floors: `p >= 4` for ratios to g, `p >= 15` (even: 16) for ratios to h.
/// Interior ceilings: 700 for G, 10⁶ for S, where the explicit tail bounds
/// take over.
pub fn constants_suite(pol: &TruncationPolicy) -> Result<ConstantsSuite> {
    let mut suprema = Vec::new();
    let mut infima = Vec::new();
    for (name, f) in ratio_fns(*pol).iter() {
        let is_g = name.starts_with('G');
        let over_h = name.ends_with('h');
        let (floor, even_floor) = if over_h { (15.0, 16) } else { (4.0, 4) };
        let ceiling = if is_g { P0 } else { P1 };
        let tail = |p: f64| -> Result<f64> {
            let b = if is_g { tail_g_over_g(p)? } else { tail_s_over_g(p)? };
            Ok(if over_h { b / h_over_g(p) } else { b })
        };
        suprema.push(maximize_ratio(name, f.as_ref(), floor, ceiling, || grid_sup(ceiling, tail))?);
        // even-p maxima sit far below the ceilings; scan to 700 and bound the rest
        let even_ceiling = 700u32;
        let even_tail = || -> Result<f64> {
            let rest = if is_g {
                grid_sup(P0, tail)?
            } else {
                let interior = suprema.last().map(|r| r.trace.iter().filter(|(p, _)| *p >= 700.0).fold(f64::NEG_INFINITY, |m, (_, v)| m.max(*v)));
                interior.unwrap_or(f64::NEG_INFINITY).max(grid_sup(P1, tail)?)
            };
            Ok(rest)
        };
        suprema.push(maximize_even(&format!("{name} even"), f.as_ref(), even_floor, even_ceiling, even_tail)?);

        let sup = &suprema[suprema.len() - 2];
        let grid_min = sup.trace.iter().fold(f64::INFINITY, |m, (_, v)| m.min(*v));
        let trend: Vec<(f64, f64)> = [1e3, 1e4, 1e5].iter().map(|&p| Ok((p, f(p)?))).collect::<Result<_>>()?;
        let decreasing = trend.windows(2).all(|w| w[1].1 < w[0].1);
        infima.push(InfimumCheck {
            name: name.to_string(),
            grid_min,
            holds: grid_min > 1.0 && decreasing && trend.iter().all(|(_, v)| *v > 1.0),
            trend,
        });
    }
    Ok(ConstantsSuite { suprema, infima })
}

/// One row of the `u(t)`, `T(t)` table.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Table3Row {
    pub t: f64,
    /// argmax of `R(p, t)^{1/p} / g(p)`.
    pub big_t: f64,
    /// sup of `R(p, t)^{1/p} / g(p)` over `p >= 4`.
    pub u: f64,
}

/// Interior ceiling for the `u(t)` search; beyond it the ratio is checked
/// on a sparse grid up to 64 times the ceiling.
pub const TABLE3_CEILING: f64 = 2000.0;

/// `u(t) = sup_{p>=4} R(p,t)^{1/p} / g(p)` and its argmax `T(t)` for each t.
pub fn table3(t_grid: &[f64], pol: &TruncationPolicy) -> Result<Vec<Table3Row>> {
    t_grid
        .iter()
        .map(|&t| {
            if !(t > 0.0 && t <= 0.5) {
                return Err(Error::domain(format!("table3 needs t in (0, 1/2], got {t}")));
            }
            let pol = *pol;
            let f = move |p: f64| -> Result<f64> { Ok(series::r_root(p, t, &pol)? / asymptotics::g(p)) };
            let tail = || -> Result<f64> {
                (1..=6).map(|k| f(TABLE3_CEILING * f64::from(1u32 << k))).try_fold(f64::NEG_INFINITY, |m, v| Ok(m.max(v?)))
            };
            let r = maximize_ratio(&format!("u({t})"), &f, 4.0, TABLE3_CEILING, tail)?;
            Ok(Table3Row { t, big_t: r.argmax, u: r.value })
        })
        .collect()
}

/// The rows of the published table.
pub const TABLE3_T: [f64; 6] = [0.45, 0.4, 0.35, 0.3, 0.25, 0.2];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_objective_peaks_at_floor() {
        let f = |_p: f64| Ok(1.0);
        let r = maximize_ratio("one", &f, 4.0, 100.0, || Ok(0.5)).unwrap();
        assert_eq!(r.value, 1.0);
        assert_eq!(r.argmax, 4.0);
    }

    #[test]
    fn parabola_peak() {
        let f = |p: f64| Ok(-(p - 17.3).powi(2));
        let r = maximize_ratio("parabola", &f, 4.0, 100.0, || Ok(-1.0)).unwrap();
        assert!((r.argmax - 17.3).abs() < 1e-3);
        assert!(r.unimodal);
        assert!(r.bracket.0 <= r.argmax && r.argmax <= r.bracket.1);
    }

    #[test]
    fn failing_tail_is_regime_error() {
        let f = |p: f64| Ok(-(p - 10.0).powi(2));
        assert!(matches!(maximize_ratio("x", &f, 4.0, 20.0, || Ok(1.0)), Err(Error::Regime { .. })));
    }

    #[test]
    fn g_over_g_supremum() {
        let pol = TruncationPolicy::default();
        let f = move |p: f64| Ok(series::g_of_p(p, &pol)? / asymptotics::g(p));
        let r = maximize_ratio("G/g", &f, 4.0, P0, || grid_sup(P0, tail_g_over_g)).unwrap();
        assert!((r.value - 1.7763799).abs() < 5e-7, "{}", r.value);
        assert!((r.argmax - 33.461).abs() < 0.01, "{}", r.argmax);
        assert!(r.tail_sup < r.value);
    }

    #[test]
    fn even_argmax_is_34() {
        let pol = TruncationPolicy::default();
        let f = move |p: f64| Ok(series::g_of_p(p, &pol)? / asymptotics::g(p));
        let r = maximize_even("G/g even", &f, 4, 200, || Ok(0.0)).unwrap();
        assert_eq!(r.argmax, 34.0);
    }
}
