//! The per-class term `I_s^(k)(P; g)` of the geometric expansion.

use crate::kernels::jintegral::regularized_terminating_sum;
use crate::scalar::{Complex, Dd};
use crate::special::identities::gamma_ratio_product;
use crate::special::{hyp2f1, HypParams};
use crate::{Error, Result, SeriesConfig};

/// Exponent `n` with `N = N0^n`, checked to `1e-9` in log space.
pub fn power_index(norm: f64, base: f64) -> Result<u32> {
    if !(norm > 1.0 && base > 1.0) {
        return Err(Error::InvariantViolation(format!("norms {norm}, {base} must exceed 1")));
    }
    let e = norm.ln() / base.ln();
    let n = e.round();
    if n < 1.0 || (e - n).abs() > 1e-9 {
        return Err(Error::NotAPower { norm, base });
    }
    Ok(n as u32)
}

fn check_s(s: Complex) -> Result<()> {
    if !(s.re.hi() > 1.0) {
        return Err(Error::OutOfConvergenceRegion(format!("Re s = {} <= 1", s.re)));
    }
    Ok(())
}

/// `(-1)^k beta Gamma(2s-1)/Gamma(2s-2k) [sum_{j<2k} (1-2k)_j (2k)_j / ((2-2s)_j j!) z^j] z N^{-s}`
/// with `z = N/(N-1)`, summed with the Gamma ratio folded into each term so integer `2s` is finite.
pub fn term_i(k: u32, s: Complex, norm: f64, base: f64, beta: Complex) -> Result<Complex> {
    check_s(s)?;
    power_index(norm, base)?;
    if beta.is_zero() {
        return Ok(Complex::ZERO);
    }
    let n = Dd::from(norm);
    let z = n / (n - 1.0);
    let bracket = regularized_terminating_sum(s, k, z);
    let v = bracket * z * (-s * n.ln()).exp() * beta;
    Ok(if k % 2 == 1 { -v } else { v })
}

/// The same term with the hypergeometric engine evaluating the terminating 2F1;
/// fails where `2 - 2s` is a non-positive integer hit by the sum.
pub fn term_i_hypergeometric(
    k: u32,
    s: Complex,
    norm: f64,
    base: f64,
    beta: Complex,
    cfg: &SeriesConfig,
) -> Result<Complex> {
    check_s(s)?;
    power_index(norm, base)?;
    let n = Dd::from(norm);
    let z = n / (n - 1.0);
    let kf = k as f64;
    let f = hyp2f1(
        &HypParams::new(
            Complex::from(1.0 - 2.0 * kf),
            Complex::from(2.0 * kf),
            Complex::from(2.0) - s * 2.0,
            Complex::real(z),
        ),
        cfg,
    )?;
    let v = gamma_ratio_product(s, k) * f * z * (-s * n.ln()).exp() * beta;
    Ok(if k % 2 == 1 { -v } else { v })
}
