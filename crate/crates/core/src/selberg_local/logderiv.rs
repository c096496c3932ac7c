//! Log-derivatives of local higher Selberg zeta functions.

use crate::scalar::{Complex, Dd};
use crate::special::gamma::binomial_dd;
use crate::{Error, Result};

const REL_TOL: f64 = 1e-30;

/// One rank-`j` local query at norm `N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalZetaQuery {
    pub j: i64,
    pub norm: f64,
    pub s: Complex,
    pub power_cap: usize,
}

impl LocalZetaQuery {
    pub fn new(j: i64, norm: f64, s: Complex) -> Self {
        LocalZetaQuery {
            j,
            norm,
            s,
            power_cap: 10_000,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.norm > 1.0) || !self.norm.is_finite() {
            return Err(Error::InvariantViolation(format!("norm {} must exceed 1", self.norm)));
        }
        if !(self.s.re.hi() > 1.0) {
            return Err(Error::OutOfConvergenceRegion(format!("Re s = {} <= 1", self.s.re)));
        }
        Ok(())
    }
}

/// A truncated sum with a bound on what was left out.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartialSum {
    pub value: Complex,
    pub tail_bound: f64,
    pub terms: usize,
}

/// `sum_{m>=1} (N^m/(N^m-1))^j N^{-ms}`, which is `(1/log N) d/ds log Z^(j)(s)`.
///
/// Terms are summed to working precision; if `power_cap` is reached the
/// result is still accepted when the certified tail is below `eps`.
pub fn local_logderiv_sum(q: &LocalZetaQuery, eps: f64) -> Result<PartialSum> {
    q.validate()?;
    let n = Dd::from(q.norm);
    let ln_n = n.ln();
    let base = (-q.s * ln_n).exp();
    let sigma = q.s.re.to_f64();
    let decay = (-sigma * q.norm.ln()).exp();
    let inv_n = n.recip();
    let jpos = q.j.max(0) as i32;
    let mut pw = Complex::ONE;
    let mut inv_nm = Dd::ONE;
    let mut sum = Complex::ZERO;
    let mut tail = f64::INFINITY;
    for m in 1..=q.power_cap {
        pw *= base;
        inv_nm *= inv_n;
        let x = (Dd::ONE - inv_nm).recip();
        sum += pw * x.powi(q.j as i32);
        // Bound for the terms m+1, m+2, ...
        let next_x = 1.0 / (1.0 - inv_nm.to_f64() * inv_n.to_f64());
        tail = next_x.powi(jpos) * pw.abs_f64() * decay / (1.0 - decay);
        if tail <= REL_TOL * sum.abs_f64() || tail < 1e-300 {
            return Ok(PartialSum {
                value: sum,
                tail_bound: tail,
                terms: m,
            });
        }
    }
    if tail <= eps {
        return Ok(PartialSum {
            value: sum,
            tail_bound: tail,
            terms: q.power_cap,
        });
    }
    Err(Error::NonConvergence(format!(
        "rank {} power sum at N = {} left tail {tail:e} after {} terms",
        q.j, q.norm, q.power_cap
    )))
}

pub fn local_logderiv(q: &LocalZetaQuery, eps: f64) -> Result<Complex> {
    Ok(local_logderiv_sum(q, eps)?.value)
}

/// The same quantity through the Euler-product exponents:
/// `sum_{m>=0} binom(j+m-1, m) N^{-(m+s)} / (1 - N^{-(m+s)})`, for `j >= 1`.
pub fn local_logderiv_binomial(q: &LocalZetaQuery, eps: f64) -> Result<Complex> {
    q.validate()?;
    if q.j < 1 {
        return Err(Error::IndexOutOfRange(format!(
            "binomial form needs j >= 1, got {}",
            q.j
        )));
    }
    let n = Dd::from(q.norm);
    let inv_n = n.recip();
    let base = (-q.s * n.ln()).exp();
    let mut x = base;
    let mut sum = Complex::ZERO;
    let mut tail = f64::INFINITY;
    for m in 0..q.power_cap {
        let c = binomial_dd(q.j + m as i64 - 1, m as i64);
        let term = x / (Complex::ONE - x) * c;
        sum += term;
        let mf = m as f64;
        let jf = q.j as f64;
        let ratio = (jf + mf + 1.0) / (mf + 2.0) * inv_n.to_f64();
        if ratio < 1.0 {
            let next = term.abs_f64() * (jf + mf) / (mf + 1.0) * inv_n.to_f64() * 1.01;
            tail = next / (1.0 - ratio);
            if tail <= REL_TOL * sum.abs_f64() || tail < 1e-300 {
                return Ok(sum);
            }
        }
        x *= inv_n;
    }
    if tail <= eps {
        return Ok(sum);
    }
    Err(Error::NonConvergence(format!(
        "binomial form at N = {} left tail {tail:e} after {} terms",
        q.norm, q.power_cap
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::from_f64(re, im)
    }

    const EPS: f64 = 1e-12;

    #[test]
    fn geometric_rank_zero() {
        let v = local_logderiv(&LocalZetaQuery::new(0, 4.0, c(2.0, 0.0)), EPS).unwrap();
        assert!((v.re - Dd::ONE / 15.0).abs().to_f64() < 1e-30);
    }

    #[test]
    fn negative_rank_telescoped() {
        let v = local_logderiv(&LocalZetaQuery::new(-1, 10.0, c(3.0, 0.0)), EPS).unwrap();
        let expect = Dd::ONE / 999.0 - Dd::ONE / 9999.0;
        assert!((v.re - expect).abs().to_f64() < 1e-30);
    }

    #[test]
    fn rank_one_matches_inner_geometric_sum() {
        let n = 2f64.exp();
        let q = LocalZetaQuery::new(1, n, c(2.0, 0.0));
        let a = local_logderiv(&q, EPS).unwrap();
        let b = local_logderiv_binomial(&q, EPS).unwrap();
        let mut direct = 0.0;
        for m in 1..200 {
            let nm = n.powi(m);
            direct += nm / (nm - 1.0) * nm.powi(-2);
        }
        assert!((a.re.to_f64() - direct).abs() < 1e-15);
        assert!((a - b).abs_f64() < 1e-28);
    }

    #[test]
    fn dual_formula_and_telescoping() {
        let s = c(2.5, 0.0);
        let q = |j| LocalZetaQuery::new(j, 5.0, s);
        let a = local_logderiv(&q(3), EPS).unwrap();
        let b = local_logderiv_binomial(&q(3), EPS).unwrap();
        assert!((a - b).abs_f64() < 1e-12);
        let shifted = LocalZetaQuery::new(2, 5.0, s + 1.0);
        let lhs = local_logderiv(&q(2), EPS).unwrap() - local_logderiv(&shifted, EPS).unwrap();
        assert!((lhs - local_logderiv(&q(1), EPS).unwrap()).abs_f64() < 1e-12);
    }

    #[test]
    fn power_cap_reports_nonconvergence() {
        let mut q = LocalZetaQuery::new(1, 1.001, c(1.01, 0.0));
        q.power_cap = 100;
        assert!(matches!(local_logderiv(&q, EPS), Err(Error::NonConvergence(_))));
        assert!(matches!(
            local_logderiv(&LocalZetaQuery::new(1, 3.0, c(1.0, 0.0)), EPS),
            Err(Error::OutOfConvergenceRegion(_))
        ));
    }
}
