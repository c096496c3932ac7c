//! Point-pair invariant, resolvent kernel, the kernel functions `f_k` and the operators `D_k`.

use crate::config::SeriesConfig;
use crate::scalar::{Complex, Dd, LN_PI};
use crate::special::{hyp2f1, log_gamma, HypParams};
use crate::{Error, Result};

const R_CLAMP: f64 = 1e-12;
const DK_MARGIN: f64 = 1e-3;

/// A pair of points in the upper half plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelPoint {
    pub z: Complex,
    pub w: Complex,
}

impl KernelPoint {
    pub fn new(z: Complex, w: Complex) -> Result<Self> {
        for p in [z, w] {
            if !(p.im.hi() > 0.0) {
                return Err(Error::NotInUpperHalfPlane(format!("{p}")));
            }
        }
        Ok(KernelPoint { z, w })
    }
}

/// `r(z, w) = 1 - |(z - w) / (conj(z) - w)|^2`.
pub fn cross_ratio_r(p: &KernelPoint) -> Result<Dd> {
    let p = KernelPoint::new(p.z, p.w)?;
    // Equal to 4 Im z Im w / |conj(z) - w|^2, which avoids cancellation near r = 0.
    let den = (p.z.conj() - p.w).norm_sqr();
    let r = (p.z.im * p.w.im * 4.0) / den;
    Ok(r.min(Dd::ONE).max(Dd::ZERO))
}

fn check_r(r: Dd) -> Result<()> {
    if !(r.hi() > 0.0 && r.hi() < 1.0) {
        return Err(Error::OutOfConvergenceRegion(format!("r = {r} outside (0, 1)")));
    }
    Ok(())
}

/// `Q_s(r) = Gamma(s)^2 / (pi Gamma(2s)) r^s F(s, s; 2s; r)`.
pub fn resolvent_q0(s: Complex, r: impl Into<Dd>, cfg: &SeriesConfig) -> Result<Complex> {
    let r = r.into();
    if !(s.re.hi() > 0.5) {
        return Err(Error::OutOfConvergenceRegion(format!("Re s = {} <= 1/2", s.re)));
    }
    check_r(r)?;
    let pre = (log_gamma(s)? * 2.0 - log_gamma(s * 2.0)? - LN_PI + s * r.ln()).exp();
    let f = hyp2f1(&HypParams::new(s, s, s * 2.0, Complex::real(r)), cfg)?;
    Ok(pre * f)
}

fn check_s(s: Complex) -> Result<()> {
    if !(s.re.hi() > 1.0) {
        return Err(Error::OutOfConvergenceRegion(format!("Re s = {} <= 1", s.re)));
    }
    Ok(())
}

/// `(-1)^k pi^{-1} Gamma(s+k)^2 / Gamma(2s)`.
fn kernel_prefactor(k: u32, s: Complex) -> Result<Complex> {
    let v = (log_gamma(s + k as f64)? * 2.0 - log_gamma(s * 2.0)? - LN_PI).exp();
    Ok(if k % 2 == 1 { -v } else { v })
}

/// `f_k(r) = (-1)^k pi^{-1} Gamma(s+k)^2 / Gamma(2s) (1-r)^{2k} r^{s-k} F(s+k, s+k; 2s; r)`.
pub fn f_kernel(k: u32, s: Complex, r: impl Into<Dd>, cfg: &SeriesConfig) -> Result<Complex> {
    check_s(s)?;
    let r = r.into().max(Dd::from(R_CLAMP)).min(Dd::ONE - R_CLAMP);
    let kf = k as f64;
    let a = s + kf;
    let f = hyp2f1(&HypParams::new(a, a, s * 2.0, Complex::real(r)), cfg)?;
    let power = ((s - kf) * r.ln()).exp() * (Dd::ONE - r).powi(2 * k as i32);
    Ok(kernel_prefactor(k, s)? * power * f)
}

/// `D_k f_k(r)` with
/// `D_k = -2k(r+2k)/r - 4k(1-r) d/dr - (1-r)^2 (r d^2/dr^2 + d/dr)`,
/// differentiating the closed form of `f_k` analytically.
pub fn apply_dk(k: u32, s: Complex, r: impl Into<Dd>, cfg: &SeriesConfig) -> Result<Complex> {
    check_s(s)?;
    let r = r.into();
    if !(r.hi() >= DK_MARGIN && r.hi() <= 1.0 - DK_MARGIN) {
        return Err(Error::OutOfConvergenceRegion(format!(
            "r = {r} within 1e-3 of the endpoints"
        )));
    }
    let kf = k as f64;
    let a = s + kf;
    let c = s * 2.0;
    let zr = Complex::real(r);
    let f0 = hyp2f1(&HypParams::new(a, a, c, zr), cfg)?;
    let f1 = hyp2f1(&HypParams::new(a + 1.0, a + 1.0, c + 1.0, zr), cfg)?;
    let f2 = hyp2f1(&HypParams::new(a + 2.0, a + 2.0, c + 2.0, zr), cfg)?;
    let df = a * a / c * f1;
    let ddf = a * a * (a + 1.0) * (a + 1.0) / (c * (c + 1.0)) * f2;

    let one_r = Dd::ONE - r;
    let two_k = 2 * k as i32;
    let g = Complex::real(one_r.powi(two_k));
    let dg = Complex::real(one_r.powi(two_k - 1) * (-2.0 * kf));
    let ddg = Complex::real(one_r.powi(two_k - 2) * (2.0 * kf * (2.0 * kf - 1.0)));
    let e = s - kf;
    let h = (e * r.ln()).exp();
    let dh = e * h / r;
    let ddh = e * (e - 1.0) * h / r.sqr();

    let f = g * h * f0;
    let d1 = dg * h * f0 + g * dh * f0 + g * h * df;
    let d2 = ddg * h * f0 + g * ddh * f0 + g * h * ddf + (dg * dh * f0 + dg * h * df + g * dh * df) * 2.0;
    let op = f * (-(r + 2.0 * kf) * (2.0 * kf) / r) - d1 * (one_r * (4.0 * kf)) - (d2 * r + d1) * one_r.sqr();
    Ok(kernel_prefactor(k, s)? * op)
}

/// Residual of the four-term relation behind `D_k f_k = f_{k+1}`:
/// `2k(r+2k) F(a,a) + 4k(s-k) F(a,a-1) + (s-k)^2 F(a-1,a-1) - (s+k)^2 (1-r)^2 F(a+1,a+1)`
/// with `a = s+k` and lower parameter `2s` throughout.
pub fn hyp_lemma_residual(k: u32, s: Complex, r: impl Into<Dd>, cfg: &SeriesConfig) -> Result<Complex> {
    let r = r.into();
    let kf = k as f64;
    let a = s + kf;
    let c = s * 2.0;
    let zr = Complex::real(r);
    let f = |x: Complex, y: Complex| hyp2f1(&HypParams::new(x, y, c, zr), cfg);
    let e = s - kf;
    let t1 = f(a, a)? * ((r + 2.0 * kf) * (2.0 * kf));
    let t2 = f(a, a - 1.0)? * e * (4.0 * kf);
    let t3 = f(a - 1.0, a - 1.0)? * e * e;
    let t4 = f(a + 1.0, a + 1.0)? * a * a * (Dd::ONE - r).sqr();
    Ok(t1 + t2 + t3 - t4)
}

/// Central second-order finite difference of `D_k f_k`, used only as a test oracle.
pub fn apply_dk_finite_difference(
    k: u32,
    s: Complex,
    r: impl Into<Dd>,
    step: f64,
    cfg: &SeriesConfig,
) -> Result<Complex> {
    let r = r.into();
    let h = Dd::from(step);
    let fm = f_kernel(k, s, r - h, cfg)?;
    let f0 = f_kernel(k, s, r, cfg)?;
    let fp = f_kernel(k, s, r + h, cfg)?;
    let d1 = (fp - fm) / (h * 2.0);
    let d2 = (fp - f0 * 2.0 + fm) / h.sqr();
    let kf = k as f64;
    let one_r = Dd::ONE - r;
    Ok(f0 * (-(r + 2.0 * kf) * (2.0 * kf) / r) - d1 * (one_r * (4.0 * kf)) - (d2 * r + d1) * one_r.sqr())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{LN2, PI};

    fn cfg() -> SeriesConfig {
        SeriesConfig::default()
    }

    fn c(re: f64, im: f64) -> Complex {
        Complex::from_f64(re, im)
    }

    #[test]
    fn cross_ratio_examples() {
        let p = KernelPoint::new(c(0.0, 1.0), c(0.0, 1.0)).unwrap();
        assert_eq!(cross_ratio_r(&p).unwrap(), Dd::ONE);
        let p = KernelPoint::new(c(0.0, 1.0), c(0.0, 2.0)).unwrap();
        assert!((cross_ratio_r(&p).unwrap() - Dd::from(8.0) / 9.0).abs().to_f64() < 1e-31);
        let q = KernelPoint::new(c(1.0, 1.0), c(1.0, 2.0)).unwrap();
        assert!((cross_ratio_r(&p).unwrap() - cross_ratio_r(&q).unwrap()).abs().to_f64() < 1e-14);
        assert!(KernelPoint::new(c(0.0, -1.0), c(0.0, 1.0)).is_err());
    }

    #[test]
    fn resolvent_closed_form() {
        let v = resolvent_q0(c(1.0, 0.0), 0.5, &cfg()).unwrap();
        assert!((v.re - LN2 / PI).abs().to_f64() < 1e-28);
    }

    #[test]
    fn f_kernel_composition() {
        let v = f_kernel(1, c(2.0, 0.0), 0.5, &cfg()).unwrap();
        let f = hyp2f1(&HypParams::real(3.0, 3.0, 4.0, 0.5), &cfg()).unwrap();
        let expect = -(f * (Dd::from(4.0) / 6.0 * 0.25 * 0.5)) / PI;
        assert!((v - expect).abs_f64() < 1e-28);
    }

    #[test]
    fn induction_identity_examples() {
        for (k, s, r) in [(1, c(2.5, 0.0), 0.4), (2, c(3.1, 0.2), 0.6), (3, c(1.2, -0.7), 0.93)] {
            let lhs = apply_dk(k, s, r, &cfg()).unwrap();
            let rhs = f_kernel(k + 1, s, r, &cfg()).unwrap();
            assert!((lhs - rhs).abs_f64() < 1e-10 * (1.0 + rhs.abs_f64()), "{k} {lhs} {rhs}");
        }
    }

    #[test]
    fn finite_difference_agrees() {
        let s = c(2.5, 0.0);
        let a = apply_dk(1, s, 0.4, &cfg()).unwrap();
        let fd = apply_dk_finite_difference(1, s, 0.4, 1e-5, &cfg()).unwrap();
        assert!((a - fd).abs_f64() < 1e-8, "{a} {fd}");
    }

    #[test]
    fn lemma_residual_vanishes() {
        let r = hyp_lemma_residual(2, c(3.3, 0.4), 0.0, &cfg()).unwrap();
        assert!(r.abs_f64() < 1e-28);
        let r = hyp_lemma_residual(1, c(2.2, 0.0), 0.5, &cfg()).unwrap();
        assert!(r.abs_f64() < 1e-11);
        let r = hyp_lemma_residual(3, c(4.5, 0.0), 0.25, &cfg()).unwrap();
        assert!(r.abs_f64() < 1e-10);
    }
}
