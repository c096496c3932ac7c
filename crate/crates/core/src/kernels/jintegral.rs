//! The geodesic integral `J_s^(k)(N)`: closed form and direct quadrature.

use super::kernel::f_kernel;
use super::quadrature::integrate;
use crate::config::SeriesConfig;
use crate::scalar::{Complex, Dd, PI};
use crate::{Error, Result};

fn check(s: Complex, n: f64) -> Result<()> {
    if !(n > 1.0) || !n.is_finite() {
        return Err(Error::InvariantViolation(format!("norm {n} must exceed 1")));
    }
    if !(s.re.hi() > 1.0) {
        return Err(Error::OutOfConvergenceRegion(format!("Re s = {} <= 1", s.re)));
    }
    Ok(())
}

/// `prod_{i=n+1}^{2k-1} (2s-1-i) (1-2k)_n (2k)_n / n!`, the `n`-th coefficient of
/// `Gamma(2s-1)/Gamma(2s-2k) F(1-2k, 2k; 2-2s; z)` with the `(2-2s)_n` denominator
/// cancelled against the Gamma ratio, scaled by `(-1)^n`.
pub(crate) fn regularized_terms(s: Complex, k: u32) -> Vec<Complex> {
    let two_s = s * 2.0;
    let top = 2 * k as i64 - 1;
    (0..=top)
        .map(|n| {
            let mut t = Complex::ONE;
            for i in (n + 1)..=top {
                t *= two_s - (1 + i) as f64;
            }
            let mut c = Dd::ONE;
            for i in 0..n {
                c = c * (((1 - 2 * k as i64 + i) * (2 * k as i64 + i)) as f64) / ((i + 1) as f64);
            }
            if n % 2 == 1 {
                c = -c;
            }
            t * c
        })
        .collect()
}

/// `Gamma(2s-1)/Gamma(2s-2k) F(1-2k, 2k; 2-2s; z)` as a polynomial in `z`, finite at integer `2s`.
pub fn regularized_terminating_sum(s: Complex, k: u32, z: Dd) -> Complex {
    regularized_terms(s, k)
        .into_iter()
        .rev()
        .fold(Complex::ZERO, |acc, t| acc * z + t)
}

/// `J = (-1)^k 2^{2-4k} Gamma(2s-1)/Gamma(2s-2k) (N-1)^{2k-1} N^{1-s-k}
/// F(1-2k, 2k; 2-2s; N/(N-1))`.
///
/// The overall sign is fixed so that the value equals the defining integral
/// computed by [`j_integral_quadrature`].
pub fn j_integral_closed(k: u32, s: Complex, n: f64) -> Result<Complex> {
    check(s, n)?;
    let nd = Dd::from(n);
    let z = nd / (nd - 1.0);
    let sum = regularized_terminating_sum(s, k, z);
    let kf = k as f64;
    let power = (-(s + (kf - 1.0)) * nd.ln()).exp();
    let mut pre = (nd - 1.0).powi(2 * k as i32 - 1).ldexp(2 - 4 * k as i32);
    if k % 2 == 1 {
        pre = -pre;
    }
    Ok(sum * power * pre)
}

/// The point-pair invariant along the axis of a hyperbolic element of norm `N`.
pub fn theta_to_r(n: Dd, theta: Dd) -> Dd {
    let (sn, cs) = theta.sin_cos();
    let s2 = sn.sqr();
    n * s2 * 4.0 / ((n - 1.0).sqr() * cs.sqr() + (n + 1.0).sqr() * s2)
}

/// The integrand `f_k(r(theta)) sin^{4k-2}(theta)`.
pub fn j_integrand(k: u32, s: Complex, n: f64, theta: Dd, cfg: &SeriesConfig) -> Result<Complex> {
    let sn = theta.sin();
    if sn.is_zero() {
        return Ok(Complex::ZERO);
    }
    let r = theta_to_r(Dd::from(n), theta);
    Ok(f_kernel(k, s, r, cfg)? * sn.powi(4 * k as i32 - 2))
}

/// Adaptive quadrature of the integrand over `[a, b]`.
pub fn j_integral_quadrature_on(k: u32, s: Complex, n: f64, a: Dd, b: Dd, cfg: &SeriesConfig) -> Result<Complex> {
    check(s, n)?;
    integrate(|t| j_integrand(k, s, n, t, cfg), a, b, cfg.quad_tol)
}

/// `int_0^pi f_k(4N sin^2 / ((N-1)^2 cos^2 + (N+1)^2 sin^2)) sin^{4k-2} d(theta)`.
pub fn j_integral_quadrature(k: u32, s: Complex, n: f64, cfg: &SeriesConfig) -> Result<Complex> {
    j_integral_quadrature_on(k, s, n, Dd::ZERO, PI, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::from_f64(re, im)
    }

    #[test]
    fn hand_value_k1() {
        let v = j_integral_closed(1, c(2.0, 0.0), 4.0).unwrap();
        assert!((v.re + Dd::from(7.0) / 32.0).abs().to_f64() < 1e-30, "{v}");
        assert!(v.im.is_zero());
    }

    #[test]
    fn closed_matches_quadrature() {
        let cfg = SeriesConfig::default();
        for (k, s, n) in [(1, c(2.0, 0.0), 4.0), (2, c(2.4, 0.0), 6.8541), (3, c(1.5, 0.0), 2.0)] {
            let a = j_integral_closed(k, s, n).unwrap();
            let b = j_integral_quadrature(k, s, n, &cfg).unwrap();
            assert!((a - b).abs_f64() < 1e-9, "{k} {a} {b}");
        }
    }

    #[test]
    fn integer_two_s_is_finite() {
        // At 2s = 2k the closed form is a removable limit, not zero.
        let a = j_integral_closed(2, c(2.0, 0.0), 5.0).unwrap();
        assert!((a.re - 1.875).abs().to_f64() < 1e-28, "{a}");
    }

    #[test]
    fn endpoint_and_symmetry() {
        let cfg = SeriesConfig::default();
        let s = c(3.0, 0.5);
        assert!(j_integrand(2, s, 6.8541, Dd::ZERO, &cfg).unwrap().is_zero());
        let t = Dd::from(0.7);
        let x = j_integrand(2, s, 6.8541, t, &cfg).unwrap();
        let y = j_integrand(2, s, 6.8541, PI - t, &cfg).unwrap();
        assert!((x - y).abs_f64() < 1e-14 * x.abs_f64());
    }
}
