//! Polynomials in `u = s^2 - s` with exact rational coefficients.

use crate::scalar::Complex;
use crate::special::gamma::{factorial, rational_to_dd};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

/// `sum_i coeffs[i] u^i`, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialInU {
    coeffs: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl PolynomialInU {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolynomialInU { coeffs }
    }

    pub fn zero() -> Self {
        PolynomialInU { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        PolynomialInU::new(vec![c])
    }

    /// The monic linear polynomial `u - root`.
    pub fn linear(root: BigRational) -> Self {
        PolynomialInU::new(vec![-root, BigRational::one()])
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `u`; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn degree_in_s(&self) -> Option<usize> {
        self.degree().map(|d| 2 * d)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval_u_exact(&self, u: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * u + c)
    }

    pub fn eval_u(&self, u: Complex) -> Complex {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::ZERO, |acc, c| acc * u + rational_to_dd(c))
    }

    /// Value at `s`, through `u = s^2 - s`.
    pub fn eval(&self, s: Complex) -> Complex {
        self.eval_u(s * s - s)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * rat(i as i64))
            .collect();
        PolynomialInU::new(coeffs)
    }

    /// `-d/du`, which equals `-(2s-1)^{-1} d/ds` on polynomials in `u`.
    pub fn neg_derivative(&self) -> Self {
        let d = self.derivative();
        PolynomialInU::new(d.coeffs.into_iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return PolynomialInU::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolynomialInU::new(out)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        PolynomialInU::new(self.coeffs.iter().map(|x| x * c).collect())
    }
}

impl fmt::Display for PolynomialInU {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c}) u")?,
                _ => write!(f, "({c}) u^{i}")?,
            }
        }
        Ok(())
    }
}

/// `a_j = (-1)^j (2k-1-j)!/j! prod_{i<j} (u - k^2 - (2i-1)k + i(i+1))`.
pub fn expansion_coeff_a(k: u32, j: u32) -> Result<PolynomialInU> {
    if k < 1 || j > 2 * k - 1 {
        return Err(Error::IndexOutOfRange(format!(
            "a_j needs 0 <= j <= 2k-1, got k={k}, j={j}"
        )));
    }
    let (kk, jj) = (k as i64, j as i64);
    let mut c = BigRational::new(factorial((2 * kk - 1 - jj) as u64), factorial(jj as u64));
    if j % 2 == 1 {
        c = -c;
    }
    let mut p = PolynomialInU::constant(c);
    for i in 0..jj {
        let root = kk * kk + (2 * i - 1) * kk - i * (i + 1);
        p = p.mul(&PolynomialInU::linear(rat(root)));
    }
    Ok(p)
}

/// `b = -1/(2k)! prod_{i<k} (u - i(i+1))^2`.
pub fn expansion_coeff_b(k: u32) -> Result<PolynomialInU> {
    if k < 1 {
        return Err(Error::IndexOutOfRange("b needs k >= 1".into()));
    }
    let kk = k as i64;
    let mut p = PolynomialInU::constant(-BigRational::new(BigInt::one(), factorial(2 * kk as u64)));
    for i in 0..kk {
        let l = PolynomialInU::linear(rat(i * (i + 1)));
        p = p.mul(&l).mul(&l);
    }
    Ok(p)
}
