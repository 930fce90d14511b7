use num_bigint::BigInt;
use rosenthal::asymptotics::{self, P1};
use rosenthal::exact;
use rosenthal::extremal::{self, ConstantReport};
use rosenthal::montecarlo::{self, McConfig, Summand};
use rosenthal::series::{self, Family, SeriesSpec, TruncationPolicy};
use rosenthal::tables::{self, Provenance, TableRow};
use rosenthal::{Error, Result, Scalar};

use crate::record::{Field, OutputRecord};

/// Relative rounding allowance for closed-form expressions.
const CLOSED_FORM_ERR: f64 = 64.0 * f64::EPSILON;

/// Largest even p answered from the exact integer formulas.
const EXACT_MAX_P: f64 = 2000.0;

#[derive(Clone, Copy, Debug)]
pub struct EvalParams {
    pub family: Family,
    pub p: f64,
    pub theta: f64,
    pub beta: f64,
    pub a: f64,
    pub lambda: f64,
    pub gamma: f64,
    pub t: f64,
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::F3 => "F3",
        Family::G3 => "G3",
        Family::B4 => "B4",
        Family::D4 => "D4",
        Family::K => "K",
        Family::L => "L",
        Family::R => "R",
    }
}

fn even_integer(p: f64) -> bool {
    (2.0..=EXACT_MAX_P).contains(&p) && p.fract() == 0.0 && p % 2.0 == 0.0
}

pub fn eval<S: Scalar>(e: &EvalParams, pol: &TruncationPolicy) -> Result<Vec<OutputRecord>> {
    let mut rec = OutputRecord::new("eval", Provenance::Series)
        .input("family", Field::text(family_name(e.family)))
        .input("p", Field::real(e.p));
    rec = match e.family {
        Family::F3 | Family::G3 => rec.input("theta", Field::real(e.theta)).input("beta", Field::real(e.beta)),
        Family::B4 | Family::D4 => rec
            .input("a", Field::real(e.a))
            .input("lambda", Field::real(e.lambda))
            .input("gamma", Field::real(e.gamma)),
        Family::R => rec.input("t", Field::real(e.t)),
        Family::K | Family::L => rec,
    };
    rec = rec.input("digits", Field::u64(u64::from(S::DIGITS)));

    if matches!(e.family, Family::K | Family::L) && even_integer(e.p) {
        let v: BigInt = if e.family == Family::K { exact::k_exact(e.p as u32)? } else { exact::l_exact(e.p as u32)? };
        let mut rec = rec.value("value", Field::int(&v)).value("terms_used", Field::Empty);
        rec.provenance = Provenance::Exact;
        return Ok(vec![rec.error(0.0)]);
    }
    let spec = SeriesSpec {
        family: e.family,
        p: S::lit(e.p),
        theta: S::lit(e.theta),
        beta: S::lit(e.beta),
        a: S::lit(e.a),
        lambda: S::lit(e.lambda),
        gamma: S::lit(e.gamma),
        t: S::lit(e.t),
    };
    let r = series::evaluate(&spec, pol)?;
    Ok(vec![rec
        .value("value", Field::log_real(r.value))
        .value("terms_used", Field::u64(r.terms_used))
        .error(r.rel_error())])
}

fn table_record(which: u8, rows: &[TableRow]) -> OutputRecord {
    let key = if which == 3 { "t" } else { "p" };
    let all_exact = rows.iter().all(|r| r.provenance == Provenance::Exact);
    let mut rec = OutputRecord::new("table", if all_exact { Provenance::Exact } else { Provenance::Series })
        .input("table", Field::u64(u64::from(which)))
        .input(key, Field::real(rows[0].key));
    let mut err: f64 = 0.0;
    for r in rows {
        let q = &r.quantity;
        rec = rec
            .value(q, Field::real(r.value))
            .value(&format!("{q}_paper_value"), Field::opt_real(r.paper_value))
            .value(&format!("{q}_delta"), Field::opt_real(r.delta))
            .value(&format!("{q}_suspect"), Field::Bool(r.suspect))
            .value(&format!("{q}_flagged"), Field::Bool(r.flagged));
        err = err.max(r.error_estimate);
    }
    rec.error(err)
}

/// One record per table row; K and L (or T and u) side by side.
pub fn table<S: Scalar>(which: u8, pol: &TruncationPolicy) -> Result<Vec<OutputRecord>> {
    let rows = tables::table::<S>(which, pol)?;
    Ok(rows.chunk_by(|a, b| a.key == b.key).map(|g| table_record(which, g)).collect())
}

fn constant_labels(name: &str) -> Option<(&'static str, &'static str)> {
    Some(match name {
        "G/g" => ("C3", "C4"),
        "G/g even" => ("C5", "C6"),
        "G/h" => ("C7", "C8"),
        "S/g" => ("C9", "C10"),
        "S/h" => ("C11", "C12"),
        _ => return None,
    })
}

fn constant_records(r: &ConstantReport, labels: Option<(&str, &str)>) -> Vec<OutputRecord> {
    let (sup_label, arg_label) = labels.unwrap_or(("", ""));
    let base = |label: &str, kind: &str, value: f64, err: f64| {
        OutputRecord::new("constants", Provenance::Series)
            .input("label", Field::text(label))
            .input("name", Field::text(r.name.clone()))
            .input("kind", Field::text(kind))
            .value("value", Field::real(value))
            .value("sup", Field::real(r.value))
            .value("argmax", Field::real(r.argmax))
            .value("bracket_lo", Field::real(r.bracket.0))
            .value("bracket_hi", Field::real(r.bracket.1))
            .value("regime_split", Field::real(r.regime_split))
            .value("tail_sup", Field::real(r.tail_sup))
            .value("unimodal", Field::Bool(r.unimodal))
            .value("evaluations", Field::u64(r.trace.len() as u64))
            .error(err)
    };
    vec![
        base(sup_label, "sup", r.value, r.value_error / r.value),
        base(arg_label, "argmax", r.argmax, r.tolerance / r.argmax),
    ]
}

/// Extremal constants C3..C12 with their companions and the endpoints of
/// the u(t), T(t) table.
pub fn constants(pol: &TruncationPolicy) -> Result<Vec<OutputRecord>> {
    let suite = extremal::constants_suite(pol)?;
    let mut out: Vec<OutputRecord> =
        suite.suprema.iter().flat_map(|r| constant_records(r, constant_labels(&r.name))).collect();
    let ts = [extremal::TABLE3_T[0], extremal::TABLE3_T[extremal::TABLE3_T.len() - 1]];
    for row in extremal::table3(&ts, pol)? {
        let rec = |label: String, kind: &str, v: f64, err: f64| {
            OutputRecord::new("constants", Provenance::Series)
                .input("label", Field::text(label))
                .input("name", Field::text(format!("R(p,{})/g", row.t)))
                .input("kind", Field::text(kind))
                .value("value", Field::real(v))
                .value("sup", Field::real(row.u))
                .value("argmax", Field::real(row.big_t))
                .value("bracket_lo", Field::Empty)
                .value("bracket_hi", Field::Empty)
                .value("regime_split", Field::real(extremal::TABLE3_CEILING))
                .value("tail_sup", Field::Empty)
                .value("unimodal", Field::Empty)
                .value("evaluations", Field::Empty)
                .error(err)
        };
        out.push(rec(format!("u({})", row.t), "sup", row.u, 1e-9));
        out.push(rec(format!("T({})", row.t), "argmax", row.big_t, 1e-3 / row.big_t));
    }
    Ok(out)
}

fn bound_record(p: f64, quantity: &str, lower: Option<f64>, value: Option<f64>, upper: Option<f64>, prov: Provenance) -> OutputRecord {
    OutputRecord::new("bounds", prov)
        .input("p", Field::real(p))
        .input("quantity", Field::text(quantity))
        .value("lower", Field::opt_real(lower))
        .value("value", Field::opt_real(value))
        .value("upper", Field::opt_real(upper))
        .error(CLOSED_FORM_ERR)
}

/// Sandwich bounds, saddle quantities and expansions at one p.
pub fn bounds(p: f64, pol: &TruncationPolicy) -> Result<Vec<OutputRecord>> {
    use Provenance::{Asymptotic, Series};
    let sl = asymptotics::sandwich_l(p)?;
    let l = series::l_series(p, pol)?;
    let ln_g = asymptotics::g(p).ln();
    let xb = asymptotics::xy_bounds(p)?;
    let x = asymptotics::x_of_p(p)?;
    let y = asymptotics::y_of_p(p)?;
    let mut out = vec![
        bound_record(p, "ln L", Some(sl.lower.ln_abs()), None, Some(sl.upper.ln_abs()), Asymptotic),
        bound_record(p, "ln L", None, Some(l.value.ln_abs()), None, Series).error(l.rel_error()),
        bound_record(p, "G", Some(sl.lower.root(p)), Some(l.value.root(p)), Some(sl.upper.root(p)), Asymptotic),
        bound_record(p, "X - ln g", Some(xb.x2), Some(x - ln_g), Some(xb.x1), Asymptotic),
        bound_record(p, "Y - ln g", None, Some(y - ln_g), Some(xb.y1), Asymptotic),
        bound_record(p, "M", None, Some(asymptotics::solve_m(p)?.root), None, Asymptotic),
        bound_record(p, "N", None, Some(asymptotics::solve_n(p)?.root), None, Asymptotic),
        bound_record(p, "Psi3", None, Some(asymptotics::psi3(p)?), None, Asymptotic),
        bound_record(p, "Psi4", None, Some(asymptotics::psi4(p)?), None, Asymptotic),
        bound_record(p, "expansion_G", None, Some(asymptotics::expansion_g(p)), None, Asymptotic),
        bound_record(p, "expansion_S", None, Some(asymptotics::expansion_s(p)), None, Asymptotic),
    ];
    if p >= P1 {
        let sk = asymptotics::sandwich_k(p)?;
        let k = series::k_series(p, pol)?;
        out.extend([
            bound_record(p, "ln K", Some(sk.lower.ln_abs()), None, Some(sk.upper.ln_abs()), Asymptotic),
            bound_record(p, "ln K", None, Some(k.value.ln_abs()), None, Series).error(k.rel_error()),
            bound_record(p, "S", Some(sk.lower.root(p)), Some(k.value.root(p)), Some(sk.upper.root(p)), Asymptotic),
            bound_record(p, "Psi5", None, Some(asymptotics::psi5(p)?), None, Asymptotic),
            bound_record(p, "Psi6", None, Some(asymptotics::psi6(p)?), None, Asymptotic),
        ]);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug)]
pub struct McParams {
    pub p: f64,
    pub lambda: f64,
    pub mu: f64,
    pub samples: u64,
    pub seed: u64,
    /// Run the moment-inequality check on this many mixed summands instead.
    pub rosenthal: Option<usize>,
}

/// `E|ξ − η|^p` by simulation next to its series value, or a moment
/// inequality check.
pub fn mc(m: &McParams, pol: &TruncationPolicy) -> Result<Vec<OutputRecord>> {
    let cfg = McConfig { samples: m.samples, seed: m.seed, lambda: m.lambda, mu: m.mu, p: m.p };
    cfg.validate()?;
    let rec = OutputRecord::new("mc", Provenance::MonteCarlo)
        .input("p", Field::real(m.p))
        .input("lambda", Field::real(m.lambda))
        .input("mu", Field::real(m.mu))
        .input("samples", Field::u64(m.samples))
        .input("seed", Field::Text(m.seed.to_string()));
    if let Some(n) = m.rosenthal {
        let menu = [Summand::TwoPoint { a: 1.0 }, Summand::SymPoisson { lambda: m.lambda }, Summand::Uniform { a: 1.0 }];
        let r = montecarlo::rosenthal_check(n, &menu, m.p, &cfg)?;
        return Ok(vec![rec
            .input("summands", Field::u64(n as u64))
            .value("ratio", Field::real(r.ratio))
            .value("ratio_stderr", Field::real(r.ratio_stderr))
            .value("S_p", Field::real(r.s_p))
            .value("holds", Field::Bool(r.holds))
            .error(r.ratio_stderr / r.ratio)]);
    }
    let est = montecarlo::empirical_abs_moment(&cfg)?;
    // E|ξ−η|^p = exp(−(λ+μ)) F₃(p; √(λ/μ), 2√(λμ))
    let theta = (m.lambda / m.mu).sqrt();
    let beta = 2.0 * (m.lambda * m.mu).sqrt();
    let reference = series::eval_f3(m.p, theta, beta, pol)?.get() * (-(m.lambda + m.mu)).exp();
    let z = if est.stderr > 0.0 { (est.mean - reference) / est.stderr } else { 0.0 };
    Ok(vec![rec
        .value("mean", Field::real(est.mean))
        .value("stderr", Field::real(est.stderr))
        .value("series_value", Field::real(reference))
        .value("z", Field::real(z))
        .error(est.stderr / est.mean)])
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Domain(_) | Error::InvalidInput(_) => 2,
        Error::Truncation { .. } => 3,
        Error::Regime { .. } => 4,
        Error::Solver(_) | Error::Consistency(_) => 1,
    }
}
