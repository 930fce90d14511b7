//! Acceptance suite: one PASS/FAIL line per criterion, each under its own
//! time budget. Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rosenthal::asymptotics::{self, sandwich_l, solve_m, solve_n, xy_bounds};
use rosenthal::exact::{h_exact, k_exact, k_via_polynomial, l_exact};
use rosenthal::extremal::{constants_suite, table3, TABLE3_T};
use rosenthal::montecarlo::{empirical_abs_moment, McConfig};
use rosenthal::series::{self, derivative_series, left_derivative_k_at_4, TruncationPolicy, Which};
use rosenthal::tables::{self, REL_TOL_4SIG, REL_TOL_T};
use rosenthal::DoubleDouble;

type Outcome = Result<Vec<String>, Vec<String>>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

struct Checks(Vec<String>, bool);

impl Checks {
    fn new() -> Self {
        Checks(Vec::new(), true)
    }
    fn check(&mut self, ok: bool, msg: String) {
        if !ok {
            self.1 = false;
            self.0.push(format!("miss: {msg}"));
        }
    }
    fn note(&mut self, msg: String) {
        self.0.push(msg);
    }
    fn done(self) -> Outcome {
        if self.1 {
            Ok(self.0)
        } else {
            Err(self.0)
        }
    }
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn rel(a: f64, b: f64) -> f64 {
    (a / b - 1.0).abs()
}

fn exact_even_rows() -> Outcome {
    let mut c = Checks::new();
    for (p, k, l) in [(2u32, 1, 1), (4, 4, 4), (6, 31, 41), (8, 379, 715), (10, 6556, 17722)] {
        let (kk, ll) = (k_exact(p).unwrap(), l_exact(p).unwrap());
        c.check(kk == BigInt::from(k) && ll == BigInt::from(l), format!("p={p}: K={kk} L={ll}"));
    }
    c.done()
}

fn triple_agreement() -> Outcome {
    let mut c = Checks::new();
    let half = BigRational::new(1.into(), 2.into());
    for m in 1..=6usize {
        let a = k_exact(2 * m as u32).unwrap();
        let b = k_via_polynomial(m);
        let h = h_exact(2 * m as u32, &half, &half).unwrap();
        let ok = h.is_integer() && h.to_integer() == a && a == b;
        c.check(ok, format!("m={m}: stirling {a}, polynomial {b}, convolution {h}"));
    }
    c.done()
}

fn table_reproduction() -> Outcome {
    let mut c = Checks::new();
    let pol = TruncationPolicy::default();
    for which in [1, 2] {
        for r in tables::table::<f64>(which, &pol).unwrap() {
            let d = r.delta.unwrap_or(f64::NAN);
            if r.suspect {
                c.note(format!("suspect {}({}) = {:.6}, printed {:?}, delta {d:+.2e}", r.quantity, r.key, r.value, r.paper_value));
            } else {
                c.check(
                    d.abs() <= REL_TOL_4SIG,
                    format!("{}({}) = {:.6}, printed {:?}, delta {d:+.2e}", r.quantity, r.key, r.value, r.paper_value),
                );
            }
        }
    }
    c.done()
}

fn extremal_constants() -> Outcome {
    let mut c = Checks::new();
    let s = constants_suite(&TruncationPolicy::default()).unwrap();
    let get = |n: &str| s.get(n).unwrap();
    let cases = [
        ("G/g", 1.77638, 5e-6, 33.461, 0.01),
        ("S/g", 1.53572, 5e-5, 22.311, 0.01),
        ("G/h", 1.2054, 5e-4, 71.43, 0.1),
        ("S/h", 1.03734, 5e-5, 138.15, 0.2),
    ];
    for (name, v, vt, a, at) in cases {
        let r = get(name);
        c.check(close(r.value, v, vt), format!("sup {name} = {:.7}, want {v} ± {vt}", r.value));
        c.check(close(r.argmax, a, at), format!("argmax {name} = {:.4}, want {a} ± {at}", r.argmax));
    }
    let even = get("G/g even");
    c.check(even.argmax == 34.0, format!("even argmax G/g = {}", even.argmax));
    for inf in &s.infima {
        c.check(inf.holds, format!("infimum {}: grid min {:.5}, trend {:?}", inf.name, inf.grid_min, inf.trend));
    }
    c.done()
}

fn table3_rows() -> Outcome {
    let mut c = Checks::new();
    for r in table3(&TABLE3_T, &TruncationPolicy::default()).unwrap() {
        let pt = tables::paper_value(3, r.t, "T").unwrap();
        let pu = tables::paper_value(3, r.t, "u").unwrap();
        let (dt, du) = (rel(r.big_t, pt.value), rel(r.u, pu.value));
        let msg = format!("t={}: T {:.4} vs {} ({dt:.1e}), u {:.6} vs {} ({du:.1e})", r.t, r.big_t, pt.value, r.u, pu.value);
        if pt.suspect || pu.suspect {
            c.note(format!("suspect {msg}"));
        } else {
            c.check(dt <= REL_TOL_T && du <= REL_TOL_4SIG, msg);
        }
    }
    c.done()
}

fn sandwich() -> Outcome {
    let mut c = Checks::new();
    let pol = TruncationPolicy::default();
    for p in [700.0, 1000.0, 1500.0] {
        let b = sandwich_l(p).unwrap();
        let l = series::l_series(p, &pol).unwrap().value.ln_abs();
        let (lo, hi) = (b.lower.ln_abs(), b.upper.ln_abs());
        c.check(lo <= l && l <= hi, format!("ln L({p}) = {l:.4} outside [{lo:.4}, {hi:.4}]"));
    }
    let psi3 = asymptotics::psi3(700.0).unwrap();
    c.check(psi3 <= 1.00826, format!("Psi3(700) = {psi3:.6}"));
    let ex1 = xy_bounds(700.0f64).unwrap().x1.exp();
    c.check(ex1 < 1.7563, format!("exp(X1(700)) = {ex1:.6}, want < 1.7563"));
    c.done()
}

fn solver_identities() -> Outcome {
    let mut c = Checks::new();
    let n = 20;
    for i in 0..n {
        let p = 4.0 * (1e6f64 / 4.0).powf(i as f64 / (n - 1) as f64);
        let m = solve_m(p).unwrap().root;
        c.check((m * m.ln() - p).abs() <= 1e-13 * p, format!("M ln M residual at p={p}"));
        let nn = solve_n(p).unwrap().root;
        let m2 = solve_m(2.0 * p).unwrap().root;
        c.check(rel(nn, 0.5 * m2) <= 1e-12, format!("N vs M(2p)/2 at p={p}: {nn} vs {}", 0.5 * m2));
    }
    c.done()
}

fn derivatives() -> Outcome {
    let mut c = Checks::new();
    let pol = TruncationPolicy::default();
    let dl = derivative_series::<DoubleDouble>(Which::L, 1, DoubleDouble::from(4.0), &pol).unwrap().value.get().to_f64().unwrap();
    let dk = derivative_series::<DoubleDouble>(Which::K, 1, DoubleDouble::from(4.0), &pol).unwrap().value.get().to_f64().unwrap();
    let left = left_derivative_k_at_4::<DoubleDouble>().unwrap().to_f64().unwrap();
    c.check(close(dl, 3.86841, 5e-4), format!("dL/dp(4+) = {dl:.6}"));
    c.check(close(dk, 3.51934, 5e-4), format!("dK/dp(4+) = {dk:.6}"));
    c.check(close(left, 3.149195, 1e-3), format!("dK/dp(4-) = {left:.6}, want 3.149195 ± 1e-3"));
    c.check((left - dk).abs() > 1e-3, format!("left {left:.6} equals right {dk:.6}"));
    c.done()
}

fn approaches_one(v: &[f64]) -> bool {
    v.windows(2).all(|w| (w[1] - 1.0).abs() < (w[0] - 1.0).abs())
}

fn shrinks(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1].abs() < w[0].abs())
}

fn asymptotic_trends() -> Outcome {
    let mut c = Checks::new();
    let pol = TruncationPolicy::default();
    let ps = [1e3, 1e4, 1e5];
    let eg: Vec<f64> = ps.iter().map(|&p| asymptotics::expansion_g(p) / series::g_of_p(p, &pol).unwrap()).collect();
    let es: Vec<f64> = ps.iter().map(|&p| asymptotics::expansion_s(p) / series::s_of_p(p, &pol).unwrap()).collect();
    c.check(close(eg[2], 1.0, 0.05) && approaches_one(&eg), format!("expansion_G/G on 1e3..1e5: {eg:?}"));
    c.check(close(es[2], 1.0, 0.05) && approaches_one(&es), format!("expansion_S/S on 1e3..1e5: {es:?}"));
    for (a, l, g) in [(1.0, 1.0, 0.0), (2.0, 0.5, 1.0)] {
        let d: Vec<f64> = ps.iter().map(|&p| asymptotics::theorem31_deviation(p, a, l, g, &pol).unwrap()).collect();
        c.check(shrinks(&d), format!("theorem 3.1 deviation for (a, λ, γ) = ({a}, {l}, {g}): {d:?}"));
    }
    c.done()
}

fn monte_carlo() -> Outcome {
    let mut c = Checks::new();
    let cfg = McConfig { samples: 1_000_000, seed: 42, lambda: 0.5, mu: 0.5, p: 5.0 };
    let a = empirical_abs_moment(&cfg).unwrap();
    let b = empirical_abs_moment(&cfg).unwrap();
    c.check(
        (a.mean - 10.4118).abs() <= 4.0 * a.stderr,
        format!("E|τ1−τ2|^5 = {:.4} ± {:.4}, want 10.4118", a.mean, a.stderr),
    );
    c.check(a.mean.to_bits() == b.mean.to_bits() && a.stderr.to_bits() == b.stderr.to_bits(), "rerun differs".into());
    c.done()
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("exact even-p constants", Duration::from_secs(1), exact_even_rows),
        ("triple agreement", Duration::from_secs(5), triple_agreement),
        ("real-p table reproduction", Duration::from_secs(60), table_reproduction),
        ("extremal constants", Duration::from_secs(600), extremal_constants),
        ("u(t), T(t) table", Duration::from_secs(600), table3_rows),
        ("sandwich property", Duration::from_secs(120), sandwich),
        ("solver identities", Duration::from_secs(1), solver_identities),
        ("derivatives at p = 4", Duration::from_secs(10), derivatives),
        ("asymptotic trends", Duration::from_secs(300), asymptotic_trends),
        ("Monte-Carlo oracle", Duration::from_secs(60), monte_carlo),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let el = t.elapsed();
        let in_time = el <= *budget;
        let (ok, lines) = match outcome {
            Ok(l) => (in_time, l),
            Err(l) => (false, l),
        };
        if !ok {
            failed += 1;
        }
        let verdict = if ok { "PASS" } else { "FAIL" };
        let slow = if in_time { String::new() } else { format!(" over budget {budget:?}") };
        println!("{verdict} {:>2} {name} ({:.2?}{slow})", i + 1, el);
        for l in lines {
            println!("        {l}");
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
