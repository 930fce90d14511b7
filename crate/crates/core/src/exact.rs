//! Exact combinatorics: Stirling numbers of the second kind, Poisson and
//! Poisson-difference moments as rationals, the even-order constants K and L,
//! and the polynomials Q_{2m} and P_{2m}.
//!
//! Every function here is exact; no floating point is involved.

use std::sync::{LazyLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{BiPoly, Poly};
use crate::{ExactInt, Rational};

/// Rows `0..len` of the Stirling triangle, grown on demand.
static STIRLING: LazyLock<RwLock<Vec<Vec<BigInt>>>> = LazyLock::new(|| RwLock::new(vec![vec![BigInt::one()]]));

fn ensure_rows(n: usize) {
    if STIRLING.read().expect("stirling table poisoned").len() > n {
        return;
    }
    let mut t = STIRLING.write().expect("stirling table poisoned");
    while t.len() <= n {
        let prev = t.last().expect("row 0 present");
        let k = t.len();
        let mut row = vec![BigInt::zero(); k + 1];
        for r in 1..=k {
            let stay = if r < prev.len() { &prev[r] * r } else { BigInt::zero() };
            row[r] = stay + &prev[r - 1];
        }
        t.push(row);
    }
}

fn with_rows<R>(n: usize, f: impl FnOnce(&[Vec<BigInt>]) -> R) -> R {
    ensure_rows(n);
    let t = STIRLING.read().expect("stirling table poisoned");
    f(&t)
}

/// Stirling number of the second kind `S(n, r)`: the number of partitions of
/// an n-set into r non-empty blocks.
pub fn stirling2(n: usize, r: usize) -> Result<ExactInt> {
    if r > n {
        return Err(Error::domain(format!("stirling2 needs r <= n, got n = {n}, r = {r}")));
    }
    Ok(with_rows(n, |t| t[n][r].clone()))
}

/// Row `S(n, 0..=n)`.
pub fn stirling2_row(n: usize) -> Vec<ExactInt> {
    with_rows(n, |t| t[n].clone())
}

pub fn bell(n: usize) -> ExactInt {
    with_rows(n, |t| t[n].iter().sum())
}

pub fn binomial(n: usize, k: usize) -> ExactInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn require_positive(name: &str, x: &Rational) -> Result<()> {
    if x.is_positive() {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} must be positive, got {x}")))
    }
}

/// `Σ_r S(k, r) λ^r` without the positivity check.
fn touchard(k: usize, lambda: &Rational) -> Rational {
    let row = stirling2_row(k);
    let mut acc = Rational::zero();
    let mut pw = Rational::one();
    for s in row.iter() {
        if !s.is_zero() {
            acc += &pw * Rational::from_integer(s.clone());
        }
        pw *= lambda;
    }
    acc
}

/// `E ξ^k` for ξ ~ Poisson(λ).
pub fn poisson_raw_moment(k: usize, lambda: &Rational) -> Result<Rational> {
    require_positive("lambda", lambda)?;
    Ok(touchard(k, lambda))
}

fn even_order(p: u32) -> Result<usize> {
    if p == 0 || p % 2 == 1 {
        return Err(Error::domain(format!("expected an even order p >= 2, got {p}")));
    }
    Ok(p as usize)
}

/// `L(2m) = E(θ − 1)^{2m}` for θ ~ Poisson(1).
pub fn l_exact(p: u32) -> Result<ExactInt> {
    let n = even_order(p)?;
    let mut acc = BigInt::zero();
    for l in 0..=n {
        let term = binomial(n, l) * bell(n - l);
        if l % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// Signed double sum `Σ_l (−1)^l C(n,l) Σ_q Σ_r t^{q+r} S(n−l,q) S(l,r)`.
fn difference_moment(n: usize, t: &Rational) -> Rational {
    let rows: Vec<Vec<BigInt>> = (0..=n).map(stirling2_row).collect();
    let powers: Vec<Rational> = std::iter::successors(Some(Rational::one()), |x| Some(x * t)).take(2 * n + 1).collect();
    let mut acc = Rational::zero();
    for l in 0..=n {
        let mut inner = Rational::zero();
        for (q, sq) in rows[n - l].iter().enumerate() {
            if sq.is_zero() {
                continue;
            }
            for (r, sr) in rows[l].iter().enumerate() {
                if sr.is_zero() {
                    continue;
                }
                inner += &powers[q + r] * Rational::from_integer(sq * sr);
            }
        }
        let term = inner * Rational::from_integer(binomial(n, l));
        if l % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

fn as_integer(what: &str, x: Rational) -> Result<ExactInt> {
    if x.denom().is_one() {
        Ok(x.to_integer())
    } else {
        Err(Error::Consistency(format!("{what} is not an integer: {x}")))
    }
}

/// `K(2m) = E(τ₁ − τ₂)^{2m}` for independent τᵢ ~ Poisson(1/2).
///
/// The sum is carried out over rationals and the result is checked to be an
/// integer.
pub fn k_exact(p: u32) -> Result<ExactInt> {
    let n = even_order(p)?;
    as_integer(&format!("K({p})"), difference_moment(n, &Rational::new(1.into(), 2.into())))
}

/// `E(τ₁ − τ₂)^{2m}` for independent τᵢ ~ Poisson(t), `0 < t <= 1/2`.
pub fn r_exact(p: u32, t: &Rational) -> Result<Rational> {
    let n = even_order(p)?;
    if !t.is_positive() || *t > Rational::new(1.into(), 2.into()) {
        return Err(Error::domain(format!("t must lie in (0, 1/2], got {t}")));
    }
    Ok(difference_moment(n, t))
}

/// `Q_{2m}(λ, μ) = E(ξ − η)^{2m}` with ξ ~ Poisson(λ), η ~ Poisson(μ), as an
/// integer polynomial; `coeff(i, j)` multiplies `λ^i μ^j`.
pub fn q_polynomial(m: usize) -> Result<BiPoly<ExactInt>> {
    if m == 0 {
        return Err(Error::domain("q_polynomial needs m >= 1"));
    }
    let n = 2 * m;
    let mut grid = vec![vec![BigInt::zero(); n + 1]; n + 1];
    for r in 0..=n {
        let c = binomial(n, r);
        let sign = if r % 2 == 0 { 1 } else { -1 };
        let (a, b) = (stirling2_row(n - r), stirling2_row(r));
        for (i, si) in a.iter().enumerate() {
            for (j, sj) in b.iter().enumerate() {
                grid[i][j] += &c * si * sj * sign;
            }
        }
    }
    Ok(BiPoly::new(grid))
}

/// `E(ξ − a)^p` for ξ ~ Poisson(λ).
pub fn d3_exact(p: u32, a: &Rational, lambda: &Rational) -> Result<Rational> {
    require_positive("lambda", lambda)?;
    let n = p as usize;
    let neg_a = -a.clone();
    let mut acc = Rational::zero();
    for l in 0..=n {
        let shift = num_traits::pow(neg_a.clone(), n - l);
        acc += Rational::from_integer(binomial(n, l)) * shift * touchard(l, lambda);
    }
    Ok(acc)
}

/// `E(ξ − η)^p` for independent ξ ~ Poisson(λ), η ~ Poisson(μ).
pub fn h_exact(p: u32, lambda: &Rational, mu: &Rational) -> Result<Rational> {
    require_positive("lambda", lambda)?;
    require_positive("mu", mu)?;
    let n = p as usize;
    let mut acc = Rational::zero();
    for l in 0..=n {
        let term = Rational::from_integer(binomial(n, l)) * touchard(n - l, lambda) * touchard(l, mu);
        if l % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// `P_{2m}` with `d^{2m}/dθ^{2m} exp(cos θ) = exp(cos θ) P_{2m}(cos θ)`, from
/// `P_{2k+2} = (1 − x²)(P″ + 2P′ + P) − x(P′ + P)` and `P_0 = 1`.
pub fn p_polynomial(m: usize) -> Poly<ExactInt> {
    let one_minus_x2 = Poly::new(vec![BigInt::one(), BigInt::zero(), -BigInt::one()]);
    let x = Poly::x();
    let mut p = Poly::constant(BigInt::one());
    for _ in 0..m {
        let d1 = p.derivative();
        let d2 = d1.derivative();
        let two_d1 = d1.map(|c| c * 2);
        let a = &one_minus_x2 * &(&(&d2 + &two_d1) + &p);
        let b = &x * &(&d1 + &p);
        p = &a - &b;
    }
    p
}

/// `(−1)^m P_{2m}(1)`, the polynomial route to K(2m).
pub fn k_via_polynomial(m: usize) -> ExactInt {
    let v = p_polynomial(m).eval(&BigInt::one());
    if m.is_multiple_of(2) {
        v
    } else {
        -v
    }
}

/// Lowest terms with a positive denominator.
pub fn is_reduced(x: &Rational) -> bool {
    x.numer().gcd(x.denom()).is_one() && x.denom().is_positive()
}
