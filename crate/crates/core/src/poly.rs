//! Dense polynomials in one and two variables over an exact ring.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{FromPrimitive, One, Zero};

/// Ring operations needed by the dense polynomial types.
pub trait Coeff:
    Clone + Zero + One + FromPrimitive + PartialEq + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
}

impl<T> Coeff for T where
    T: Clone + Zero + One + FromPrimitive + PartialEq + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>
{
}

/// `coeffs[i]` is the coefficient of `x^i`; trailing zeros are trimmed.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Coeff> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::new(vec![T::zero(), T::one()])
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.clone() * T::from_usize(i).expect("degree fits the ring"))
            .collect();
        Self::new(c)
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<T: Coeff> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, o: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl<T: Coeff> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, o: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl<T: Coeff> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, o: &Poly<T>) -> Poly<T> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<T: Coeff + fmt::Display> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})x"),
                _ => format!("({c})x^{i}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

/// Bivariate polynomial: `grid[i][j]` multiplies `x^i y^j`.
#[derive(Clone, PartialEq, Debug)]
pub struct BiPoly<T> {
    grid: Vec<Vec<T>>,
}

impl<T: Coeff> BiPoly<T> {
    pub fn new(mut grid: Vec<Vec<T>>) -> Self {
        for row in grid.iter_mut() {
            while row.last().is_some_and(|c| c.is_zero()) {
                row.pop();
            }
        }
        while grid.last().is_some_and(|r| r.is_empty()) {
            grid.pop();
        }
        BiPoly { grid }
    }

    pub fn coeff(&self, i: usize, j: usize) -> T {
        self.grid.get(i).and_then(|r| r.get(j)).cloned().unwrap_or_else(T::zero)
    }

    pub fn grid(&self) -> &[Vec<T>] {
        &self.grid
    }

    /// Largest `i + j` over non-zero coefficients.
    pub fn total_degree(&self) -> Option<usize> {
        self.grid
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(j, _)| i + j))
            .max()
    }

    pub fn eval(&self, x: &T, y: &T) -> T {
        self.grid.iter().rev().fold(T::zero(), |acc, row| {
            let inner = row.iter().rev().fold(T::zero(), |a, c| a * y.clone() + c.clone());
            acc * x.clone() + inner
        })
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> BiPoly<U> {
        BiPoly::new(self.grid.iter().map(|r| r.iter().map(&f).collect()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn p(c: &[i64]) -> Poly<BigInt> {
        Poly::new(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    #[test]
    fn trims_and_degrees() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(p(&[0, 0]).degree(), None);
    }

    #[test]
    fn product_rule_for_derivative() {
        let a = p(&[1, -3, 0, 2]);
        let b = p(&[4, 1, 5]);
        let lhs = (&a * &b).derivative();
        let rhs = &(&a.derivative() * &b) + &(&a * &b.derivative());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn horner_eval() {
        assert_eq!(p(&[1, -1, -1]).eval(&BigInt::from(1)), BigInt::from(-1));
        assert_eq!(p(&[2, 0, 3]).eval(&BigInt::from(-2)), BigInt::from(14));
    }

    #[test]
    fn bivariate_eval_and_degree() {
        // 1 + 2y + 3xy^2
        let q = BiPoly::new(vec![vec![BigInt::from(1), BigInt::from(2)], vec![BigInt::from(0), BigInt::from(0), BigInt::from(3)]]);
        assert_eq!(q.total_degree(), Some(3));
        assert_eq!(q.eval(&BigInt::from(2), &BigInt::from(3)), BigInt::from(1 + 6 + 54));
    }
}
