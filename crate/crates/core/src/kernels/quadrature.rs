//! Adaptive Gauss-Legendre quadrature over real intervals with complex integrands.

use crate::scalar::{Complex, Dd};
use crate::{Error, Result};
use std::sync::OnceLock;

pub const ORDER: usize = 20;
const MAX_PANELS: usize = 4096;

/// Nodes and weights on `[-1, 1]`, computed once by Newton iteration in double-double.
pub fn gauss_legendre_rule() -> &'static [(Dd, Dd)] {
    static RULE: OnceLock<Vec<(Dd, Dd)>> = OnceLock::new();
    RULE.get_or_init(|| legendre_rule(ORDER))
}

fn legendre_eval(n: usize, x: Dd) -> (Dd, Dd) {
    let mut p0 = Dd::ONE;
    let mut p1 = x;
    for j in 2..=n {
        let jf = j as f64;
        let p2 = (x * p1 * (2.0 * jf - 1.0) - p0 * (jf - 1.0)) / jf;
        p0 = p1;
        p1 = p2;
    }
    let dp = (x * p1 - p0) * n as f64 / (x.sqr() - 1.0);
    (p1, dp)
}

fn legendre_rule(n: usize) -> Vec<(Dd, Dd)> {
    let mut rule = Vec::with_capacity(n);
    for i in 1..=n / 2 {
        let guess = (std::f64::consts::PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
        let mut x = Dd::from(guess);
        for _ in 0..8 {
            let (p, dp) = legendre_eval(n, x);
            x -= p / dp;
        }
        let (_, dp) = legendre_eval(n, x);
        let w = Dd::from(2.0) / ((Dd::ONE - x.sqr()) * dp.sqr());
        rule.push((x, w));
        rule.push((-x, w));
    }
    if n % 2 == 1 {
        let (_, dp) = legendre_eval(n, Dd::ZERO);
        rule.push((Dd::ZERO, Dd::from(2.0) / dp.sqr()));
    }
    rule
}

fn panel<F>(f: &mut F, a: Dd, b: Dd) -> Result<Complex>
where
    F: FnMut(Dd) -> Result<Complex>,
{
    let half = (b - a) * 0.5;
    let mid = (a + b) * 0.5;
    let mut acc = Complex::ZERO;
    for &(x, w) in gauss_legendre_rule() {
        acc += f(mid + half * x)? * w;
    }
    Ok(acc * half)
}

/// Integrates `f` over `[a, b]` by bisection until each panel agrees with the
/// sum of its halves to within its share of `tol`.
pub fn integrate<F>(mut f: F, a: Dd, b: Dd, tol: f64) -> Result<Complex>
where
    F: FnMut(Dd) -> Result<Complex>,
{
    let width = (b - a).to_f64().abs();
    if width == 0.0 {
        return Ok(Complex::ZERO);
    }
    let whole = panel(&mut f, a, b)?;
    let mut stack = vec![(a, b, whole)];
    let mut total = Complex::ZERO;
    let mut panels = 1;
    while let Some((lo, hi, est)) = stack.pop() {
        let mid = (lo + hi) * 0.5;
        let left = panel(&mut f, lo, mid)?;
        let right = panel(&mut f, mid, hi)?;
        panels += 2;
        let refined = left + right;
        let share = tol * ((hi - lo).to_f64().abs() / width);
        if (refined - est).abs_f64() <= share {
            total += refined;
        } else if panels >= MAX_PANELS {
            return Err(Error::QuadratureNonConvergence(format!(
                "{panels} panels without reaching tolerance {tol:e}"
            )));
        } else {
            stack.push((mid, hi, right));
            stack.push((lo, mid, left));
        }
    }
    Ok(total)
}
