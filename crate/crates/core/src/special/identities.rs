//! Residuals of the contiguous relation and the two transformation formulas.

use super::gamma::pochhammer;
use super::hypergeometric::{hyp2f1, hyp2f1_terminating_exact, HypParams};
use crate::config::SeriesConfig;
use crate::scalar::{Complex, Dd};
use crate::{Error, Result};
use num_rational::BigRational;
use num_traits::One;

/// `Gamma(2s-1) / Gamma(2s-2k)` as the finite product `prod_{i=1}^{2k-1} (2s-1-i)`.
pub fn gamma_ratio_product(s: Complex, k: u32) -> Complex {
    let two_s = s * 2.0;
    (1..2 * k).fold(Complex::ONE, |acc, i| acc * (two_s - (1 + i) as f64))
}

/// `(c-a-b) F + a (1-z) F(a+1) - (c-b) F(b-1)`.
pub fn contiguous_relation_residual(
    a: Complex,
    b: Complex,
    c: Complex,
    z: Complex,
    cfg: &SeriesConfig,
) -> Result<Complex> {
    let f = hyp2f1(&HypParams::new(a, b, c, z), cfg)?;
    let fa = hyp2f1(&HypParams::new(a + 1.0, b, c, z), cfg)?;
    let fb = hyp2f1(&HypParams::new(a, b - 1.0, c, z), cfg)?;
    Ok((c - a - b) * f + a * (Complex::ONE - z) * fa - (c - b) * fb)
}

/// Exact residual of the contiguous relation for a terminating (rational) case.
pub fn contiguous_relation_residual_exact(
    a: &BigRational,
    b: &BigRational,
    c: &BigRational,
    z: &BigRational,
) -> Result<BigRational> {
    let one = BigRational::one();
    let f = hyp2f1_terminating_exact(a, b, c, z)?;
    let fa = hyp2f1_terminating_exact(&(a + &one), b, c, z)?;
    let fb = hyp2f1_terminating_exact(a, &(b - &one), c, z)?;
    Ok((c - a - b) * f + a * (&one - z) * fa - (c - b) * fb)
}

fn check_norm(n: f64) -> Result<()> {
    if !(n > 1.0) || !n.is_finite() {
        return Err(Error::InvariantViolation(format!("norm {n} must exceed 1")));
    }
    Ok(())
}

/// LHS minus RHS of the quadratic transformation
/// `F(s+k-1/2, s+k; 2s; 4N/(N+1)^2) = ((N+1)/N)^{2s+2k-1} F(2s+2k-1, 2k; 2s; 1/N)`.
pub fn quadratic_transform_residual(s: Complex, k: u32, n: f64, cfg: &SeriesConfig) -> Result<Complex> {
    check_norm(n)?;
    let nd = Dd::from(n);
    let kf = k as f64;
    let z1 = nd * 4.0 / (nd + 1.0).sqr();
    let lhs = hyp2f1(&HypParams::new(s + (kf - 0.5), s + kf, s * 2.0, Complex::real(z1)), cfg)?;
    let e = s * 2.0 + (2.0 * kf - 1.0);
    let base = ((nd + 1.0) / nd).ln();
    let pre = (e * base).exp();
    let rhs = hyp2f1(
        &HypParams::new(e, Complex::from(2.0 * kf), s * 2.0, Complex::real(nd.recip())),
        cfg,
    )?;
    Ok(lhs - pre * rhs)
}

/// The terminating right-hand side of the linear transformation, with the
/// Gamma ratios written as finite products.
pub fn linear_transform_rhs(s: Complex, k: u32, n: f64) -> Result<Complex> {
    check_norm(n)?;
    let two_s = s * 2.0;
    let (re, im) = two_s.to_f64();
    if im.abs() < 1e-8 && (re - re.round()).abs() < 1e-8 {
        return Err(Error::IntegerParameterDegeneracy(format!("2s = {two_s} is an integer")));
    }
    let nd = Dd::from(n);
    let kf = k as f64;
    let x = Dd::ONE - nd.recip();
    let pre = x.powi(-2 * k as i32);
    let ratio = gamma_ratio_product(s, k) / pochhammer(two_s, (2 * k - 1) as usize);
    let f = hyp2f1(
        &HypParams::new(
            Complex::from(1.0 - 2.0 * kf),
            Complex::from(2.0 * kf),
            Complex::from(2.0) - two_s,
            Complex::real(x.recip()),
        ),
        &SeriesConfig::default(),
    )?;
    Ok(ratio * f * pre)
}

/// `F(2s+2k-1, 2k; 2s; 1/N)` minus its terminating linear-transformation form.
pub fn linear_transform_residual(s: Complex, k: u32, n: f64, cfg: &SeriesConfig) -> Result<Complex> {
    let rhs = linear_transform_rhs(s, k, n)?;
    let nd = Dd::from(n);
    let kf = k as f64;
    let lhs = hyp2f1(
        &HypParams::new(
            s * 2.0 + (2.0 * kf - 1.0),
            Complex::from(2.0 * kf),
            s * 2.0,
            Complex::real(nd.recip()),
        ),
        cfg,
    )?;
    Ok(lhs - rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> SeriesConfig {
        SeriesConfig::default()
    }

    fn c(re: f64, im: f64) -> Complex {
        Complex::from_f64(re, im)
    }

    #[test]
    fn contiguous_at_zero_is_exact() {
        let r = contiguous_relation_residual(c(1.2, 0.1), c(0.7, 0.0), c(2.5, 0.0), Complex::ZERO, &cfg()).unwrap();
        assert!(r.abs_f64() < 1e-30);
    }

    #[test]
    fn contiguous_generic_point() {
        let r = contiguous_relation_residual(c(1.2, 0.0), c(0.7, 0.0), c(2.5, 0.0), c(0.3, 0.0), &cfg()).unwrap();
        assert!(r.abs_f64() < 1e-12, "{r}");
    }

    #[test]
    fn contiguous_terminating_exact_zero() {
        let q = |x: i64, y: i64| BigRational::new(x.into(), y.into());
        let r = contiguous_relation_residual_exact(&q(-2, 1), &q(3, 7), &q(5, 2), &q(2, 9)).unwrap();
        assert_eq!(r, q(0, 1));
    }

    #[test]
    fn quadratic_examples() {
        let r = quadratic_transform_residual(c(2.5, 0.0), 1, 9.0, &cfg()).unwrap();
        assert!(r.abs_f64() < 1e-11, "{r}");
        let r = quadratic_transform_residual(c(1.7, 0.4), 2, 4.0, &cfg()).unwrap();
        assert!(r.abs_f64() < 1e-10, "{r}");
        let r = quadratic_transform_residual(c(1.7, 0.4), 2, 1e12, &cfg()).unwrap();
        assert!(r.abs_f64() < 1e-10, "{r}");
    }

    #[test]
    fn linear_examples() {
        let r = linear_transform_residual(c(2.2, 0.0), 1, 5.0, &cfg()).unwrap();
        assert!(r.abs_f64() < 1e-11, "{r}");
        let r = linear_transform_residual(c(3.1, 0.0), 2, 2.0, &cfg()).unwrap();
        assert!(r.abs_f64() < 1e-10, "{r}");
        assert!(matches!(
            linear_transform_residual(c(1.5, 0.0), 1, 5.0, &cfg()),
            Err(Error::IntegerParameterDegeneracy(_))
        ));
    }

    #[test]
    fn linear_rhs_two_terms_by_hand() {
        // k = 1: RHS = x^{-2} (2s-2)/(2s) [1 - 2 / (2 - 2s) * (1/x)], x = 1 - 1/N.
        let s = 2.2;
        let n = 10.0;
        let x = 1.0 - 1.0 / n;
        let by_hand = (2.0 * s - 2.0) / (2.0 * s) * (1.0 + -2.0 / (2.0 - 2.0 * s) / x) / (x * x);
        let v = linear_transform_rhs(c(s, 0.0), 1, n).unwrap();
        assert!((v.re.to_f64() - by_hand).abs() < 1e-14);
        let lhs = hyp2f1(&HypParams::real(2.0 * s + 1.0, 2.0, 2.0 * s, 1.0 / n), &cfg()).unwrap();
        assert!((lhs - v).abs_f64() < 1e-13);
    }
}
