//! Gauss hypergeometric function in the regimes the kernels need.
//!
//! * terminating: `a` or `b` a non-positive integer, finite sum;
//! * series: the defining power series for `|z| < 1`;
//! * near one: `c - a - b` an integer and `z` close to 1, via the logarithmic
//!   connection formula expanded in powers of `1 - z`.

use super::gamma::{digamma, log_gamma, pochhammer_exact};
use crate::config::SeriesConfig;
use crate::scalar::{Complex, Dd};
use crate::{Error, Result};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Largest `|z|` for which the power series is preferred when a logarithmic
/// expansion is also available.
pub const SERIES_RADIUS: f64 = 0.8;

/// Hard cap on the number of series terms.
pub const TERM_CAP: usize = 10_000;

const SUM_REL_TOL: f64 = 1e-31;
const INT_TOL: f64 = 1e-24;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypParams {
    pub a: Complex,
    pub b: Complex,
    pub c: Complex,
    pub z: Complex,
}

impl HypParams {
    pub fn new(a: Complex, b: Complex, c: Complex, z: Complex) -> Self {
        HypParams { a, b, c, z }
    }

    pub fn real(a: f64, b: f64, c: f64, z: f64) -> Self {
        HypParams::new(a.into(), b.into(), c.into(), z.into())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// Polynomial of degree `degree`.
    Terminating {
        degree: usize,
    },
    Series,
    /// `c = a + b - m`.
    NearOne {
        m: i64,
    },
}

/// Returns `Some(n)` when `x` is the integer `n` up to working precision.
pub fn as_integer(x: Complex) -> Option<i64> {
    let re = x.re.to_f64();
    if x.im.abs().to_f64() > INT_TOL * (1.0 + re.abs()) || re.abs() > 1e15 {
        return None;
    }
    let n = x.re.round();
    if (x.re - n).abs().to_f64() <= INT_TOL * (1.0 + re.abs()) {
        Some(n.to_f64() as i64)
    } else {
        None
    }
}

fn non_positive_integer(x: Complex) -> Option<usize> {
    match as_integer(x) {
        Some(n) if n <= 0 => Some((-n) as usize),
        _ => None,
    }
}

/// The evaluation regime, a pure function of the parameters.
pub fn regime(p: &HypParams) -> Result<Regime> {
    let na = non_positive_integer(p.a);
    let nb = non_positive_integer(p.b);
    let degree = match (na, nb) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (Some(x), None) | (None, Some(x)) => Some(x),
        _ => None,
    };
    if let Some(n) = degree {
        check_denominators(p.c, n)?;
        return Ok(Regime::Terminating { degree: n });
    }
    if let Some(m) = non_positive_integer(p.c) {
        return Err(Error::IntegerParameterDegeneracy(format!(
            "c = -{m} with a non-terminating series"
        )));
    }
    let az = p.z.abs_f64();
    let w = (Complex::ONE - p.z).abs_f64();
    if az <= SERIES_RADIUS {
        return Ok(Regime::Series);
    }
    if w < 1.0 {
        if let Some(e) = as_integer(p.c - p.a - p.b) {
            return Ok(Regime::NearOne { m: -e });
        }
    }
    if az < 1.0 {
        return Ok(Regime::Series);
    }
    Err(Error::RegimeUnsupported(format!(
        "z = {} with a = {}, b = {}, c = {}",
        p.z, p.a, p.b, p.c
    )))
}

fn check_denominators(c: Complex, n: usize) -> Result<()> {
    if let Some(m) = non_positive_integer(c) {
        if n > m {
            return Err(Error::IntegerParameterDegeneracy(format!(
                "c = -{m} vanishes inside a degree-{n} terminating sum"
            )));
        }
    }
    Ok(())
}

/// `2F1(a, b; c; z)` with the regime chosen by [`regime`].
pub fn hyp2f1(p: &HypParams, cfg: &SeriesConfig) -> Result<Complex> {
    match regime(p)? {
        Regime::Terminating { degree } => Ok(terminating_sum(p, degree)),
        Regime::Series => power_series(p, cfg),
        Regime::NearOne { m } => integer_excess(p.a, p.b, m, p.z),
    }
}

fn terminating_sum(p: &HypParams, degree: usize) -> Complex {
    let mut term = Complex::ONE;
    let mut sum = Complex::ONE;
    for n in 0..degree {
        let nf = n as f64;
        term = term * (p.a + nf) * (p.b + nf) / ((p.c + nf) * (nf + 1.0)) * p.z;
        sum += term;
    }
    sum
}

/// Exact terminating sum over rationals; `a` or `b` must be a non-positive integer.
pub fn hyp2f1_terminating_exact(
    a: &BigRational,
    b: &BigRational,
    c: &BigRational,
    z: &BigRational,
) -> Result<BigRational> {
    let deg = |x: &BigRational| {
        if x.is_integer() && !x.is_positive() {
            x.to_integer().abs().to_usize()
        } else {
            None
        }
    };
    let n = match (deg(a), deg(b)) {
        (Some(x), Some(y)) => x.min(y),
        (Some(x), None) | (None, Some(x)) => x,
        _ => {
            return Err(Error::RegimeUnsupported(
                "exact evaluation needs a terminating series".into(),
            ))
        }
    };
    if let Some(m) = deg(c) {
        if n > m {
            return Err(Error::IntegerParameterDegeneracy(format!(
                "c = -{m} vanishes inside a degree-{n} terminating sum"
            )));
        }
    }
    let mut sum = BigRational::zero();
    let mut zn = BigRational::one();
    let mut fact = BigRational::one();
    for j in 0..=n {
        if j > 0 {
            zn *= z;
            fact *= BigRational::from_integer(j.into());
        }
        let num = pochhammer_exact(a, j) * pochhammer_exact(b, j);
        let den = pochhammer_exact(c, j) * &fact;
        sum += num / den * &zn;
    }
    Ok(sum)
}

fn power_series(p: &HypParams, _cfg: &SeriesConfig) -> Result<Complex> {
    let az = p.z.abs_f64();
    let warmup = 2.0 * (p.a.abs_f64() + p.b.abs_f64() + p.c.abs_f64()) + 4.0;
    let mut term = Complex::ONE;
    let mut sum = Complex::ONE;
    let mut tail = f64::INFINITY;
    for n in 0..TERM_CAP {
        let nf = n as f64;
        let ratio = (p.a + nf) * (p.b + nf) / ((p.c + nf) * (nf + 1.0)) * p.z;
        term *= ratio;
        sum += term;
        if nf > warmup {
            let q = ratio.abs_f64().max(az * (1.0 + 1e-3));
            if q < 1.0 {
                tail = term.abs_f64() * q / (1.0 - q);
                if tail <= (SUM_REL_TOL * sum.abs_f64()).max(1e-300) {
                    return Ok(sum);
                }
            }
        }
        if term.is_zero() {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence(format!(
        "2F1 power series at |z| = {az} reached {TERM_CAP} terms, tail bound {tail:e}"
    )))
}

/// `2F1(a, b; a + b - m; z)` for integer `m`, expanded about `z = 1`.
pub fn integer_excess(a: Complex, b: Complex, m: i64, z: Complex) -> Result<Complex> {
    let c = a + b - m as f64;
    let w = Complex::ONE - z;
    if !(w.abs_f64() < 1.0) {
        return Err(Error::RegimeUnsupported(format!("|1 - z| = {} >= 1", w.abs_f64())));
    }
    if m < 0 {
        // Euler: F(a, b; c; z) = (1-z)^{c-a-b} F(c-a, c-b; c; z).
        let p = (-m) as i32;
        let (a2, b2) = (c - a, c - b);
        let inner = HypParams::new(a2, b2, c, z);
        let f = match regime(&inner)? {
            Regime::Terminating { degree } => terminating_sum(&inner, degree),
            _ => integer_excess(a2, b2, -m, z)?,
        };
        return Ok(w.powi(p) * f);
    }
    let outer = HypParams::new(a, b, c, z);
    if let Regime::Terminating { degree } = regime(&outer)? {
        return Ok(terminating_sum(&outer, degree));
    }
    let mu = m as usize;
    let mf = m as f64;
    // C = Gamma(c) / (Gamma(a) Gamma(b)).
    let cc = (log_gamma(c)? - log_gamma(a)? - log_gamma(b)?).exp();
    let mut total = Complex::ZERO;
    if mu >= 1 {
        let mut finite = Complex::ZERO;
        let mut t = Complex::ONE;
        for n in 0..mu {
            if n > 0 {
                let nf = (n - 1) as f64;
                t = t * (a - mf + nf) * (b - mf + nf) / ((nf + 1.0) * (1.0 - mf + nf)) * w;
            }
            finite += t;
        }
        let gm = Dd::from(factorial_f64(mu - 1));
        total += cc * gm * finite / w.powi(m as i32);
    }
    // Gamma(c) / (Gamma(a-m) Gamma(b-m)) = C (a-m)_m (b-m)_m.
    let shifted = super::gamma::pochhammer(a - mf, mu) * super::gamma::pochhammer(b - mf, mu);
    let lead = cc * shifted;
    if lead.is_zero() {
        return Ok(total);
    }
    let log_w = w.ln();
    let euler = crate::scalar::EULER_GAMMA;
    let mut psi_n1 = Complex::real(-euler);
    let mut psi_nm1 = Complex::real(-euler + harmonic(mu));
    let mut psi_a = digamma(a)?;
    let mut psi_b = digamma(b)?;
    let mut t = Complex::real(Dd::ONE / Dd::from(factorial_f64(mu)));
    let mut sum = Complex::ZERO;
    let aw = w.abs_f64();
    let warmup = 2.0 * (a.abs_f64() + b.abs_f64() + mf) + 4.0;
    let mut converged = false;
    for n in 0..TERM_CAP {
        let nf = n as f64;
        let bracket = log_w - psi_n1 - psi_nm1 + psi_a + psi_b;
        let contrib = t * bracket;
        sum += contrib;
        let ratio = (a + nf) * (b + nf) / ((nf + 1.0) * (nf + mf + 1.0)) * w;
        let next = t * ratio;
        if nf > warmup {
            let q = ratio.abs_f64().max(aw * (1.0 + 1e-3));
            if q < 1.0 {
                let growth = bracket.abs_f64() + (nf + 2.0).ln() + 1.0;
                let tail = next.abs_f64() * growth / (1.0 - q);
                if tail <= (SUM_REL_TOL * sum.abs_f64()).max(1e-300) {
                    converged = true;
                    break;
                }
            }
        }
        psi_n1 += Dd::ONE / Dd::from(nf + 1.0);
        psi_nm1 += Dd::ONE / Dd::from(nf + mf + 1.0);
        psi_a += (a + nf).recip();
        psi_b += (b + nf).recip();
        t = next;
        if t.is_zero() {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NonConvergence(format!(
            "logarithmic 2F1 expansion at |1 - z| = {aw} reached {TERM_CAP} terms"
        )));
    }
    let sign = if m % 2 == 0 { -1.0 } else { 1.0 };
    Ok(total + lead * sum * sign)
}

fn factorial_f64(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, i| acc * i as f64)
}

fn harmonic(n: usize) -> Dd {
    (1..=n).map(|i| Dd::ONE / Dd::from(i as f64)).sum()
}

/// `2F1(s+k, s+k; 2s; r)` by the logarithmic expansion about `r = 1`.
pub fn hyp2f1_near_one(s: Complex, k: u32, r: Complex, _cfg: &SeriesConfig) -> Result<Complex> {
    let w = Complex::ONE - r;
    if !(w.abs_f64() < 1.0) {
        return Err(Error::RegimeUnsupported(format!("|1 - r| = {} >= 1", w.abs_f64())));
    }
    if w.re.hi() <= 0.0 && w.im.is_zero() {
        return Err(Error::RegimeUnsupported("1 - r on the branch cut".into()));
    }
    let a = s + k as f64;
    integer_excess(a, a, 2 * k as i64, r)
}

/// The power series evaluated regardless of the regime that [`hyp2f1`] would pick.
pub fn hyp2f1_series(p: &HypParams, cfg: &SeriesConfig) -> Result<Complex> {
    if p.z.abs_f64() >= 1.0 {
        return Err(Error::RegimeUnsupported(format!("|z| = {} >= 1", p.z.abs_f64())));
    }
    match regime(p) {
        Ok(Regime::Terminating { degree }) => Ok(terminating_sum(p, degree)),
        Err(e) => Err(e),
        _ => power_series(p, cfg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::LN2;

    fn cfg() -> SeriesConfig {
        SeriesConfig::default()
    }

    fn c(re: f64, im: f64) -> Complex {
        Complex::from_f64(re, im)
    }

    #[test]
    fn zero_argument_gives_one() {
        let p = HypParams::new(c(1.3, 0.2), c(-0.7, 1.0), c(2.1, 0.0), Complex::ZERO);
        assert_eq!(hyp2f1(&p, &cfg()).unwrap(), Complex::ONE);
    }

    #[test]
    fn log_closed_form() {
        let v = hyp2f1(&HypParams::real(1.0, 1.0, 2.0, 0.5), &cfg()).unwrap();
        assert!((v.re - LN2 * 2.0).abs().to_f64() < 1e-28);
    }

    #[test]
    fn terminating_two_terms() {
        let p = HypParams::real(-1.0, 2.0, 3.0, 0.25);
        assert_eq!(regime(&p).unwrap(), Regime::Terminating { degree: 1 });
        let v = hyp2f1(&p, &cfg()).unwrap();
        assert!((v.re - Dd::from(5.0) / 6.0).abs().to_f64() < 1e-31);
        let q = |x: i64, y: i64| BigRational::new(x.into(), y.into());
        let e = hyp2f1_terminating_exact(&q(-1, 1), &q(2, 1), &q(3, 1), &q(1, 4)).unwrap();
        assert_eq!(e, q(5, 6));
    }

    #[test]
    fn outside_all_regimes() {
        let p = HypParams::real(0.3, 0.4, 1.1, 1.5);
        assert!(matches!(hyp2f1(&p, &cfg()), Err(Error::RegimeUnsupported(_))));
    }

    #[test]
    fn near_one_reference_values() {
        // Reference values: F(3.3, 3.3; 4.6; 0.95) and F(2.5+0.3i, 2.5+0.3i; 3+0.6i; 0.9).
        let v = hyp2f1_near_one(c(2.3, 0.0), 1, c(0.95, 0.0), &cfg()).unwrap();
        let r = 694.526401223229;
        assert!((v.re.to_f64() - r).abs() < 1e-11 * r, "{v}");
        let v = hyp2f1_near_one(c(1.5, 0.3), 1, c(0.9, 0.0), &cfg()).unwrap();
        assert!((v.re.to_f64() - 107.97961140294165).abs() < 1e-10, "{v}");
        assert!((v.im.to_f64() - (12.066308191400361)).abs() < 1e-10, "{v}");
    }

    #[test]
    fn near_one_limit_k1_s2() {
        let mut prev = 0.0;
        for m in 4..9 {
            let r = 1.0 - 10f64.powi(-m);
            let v = hyp2f1_near_one(c(2.0, 0.0), 1, c(r, 0.0), &cfg()).unwrap();
            prev = v.re.to_f64() * (1.0 - r).powi(2);
        }
        assert!((prev - 1.5).abs() < 1e-6, "{prev}");
    }

    #[test]
    fn positive_excess_uses_euler_transform() {
        // c - a - b = 2: F(0.5, 0.25; 2.75; 0.9)
        let p = HypParams::real(0.5, 0.25, 2.75, 0.9);
        assert_eq!(regime(&p).unwrap(), Regime::NearOne { m: -2 });
        let v = hyp2f1(&p, &cfg()).unwrap();
        let s = hyp2f1_series(&p, &cfg()).unwrap();
        assert!((v - s).abs_f64() < 1e-25, "{v} {s}");
    }
}
