use super::{check_region, tail_model_bound};
use crate::config::SeriesConfig;
use crate::scalar::Complex;
use crate::selberg_local::{local_logderiv_sum, poly_p, LocalZetaQuery};
use crate::spectra::LengthSpectrum;
use crate::{Error, Result};

/// `2^{2-4k} B sum_j |p_j(s)| sum ell mult f_j(N, Re s)`, valid when every weight has
/// `|beta| <= 2^{2-4k} ell B`. Includes the tail model when the spectrum declares one.
pub fn majorant_bound(spec: &LengthSpectrum, s: Complex, norm_bound: f64, cfg: &SeriesConfig) -> Result<f64> {
    cfg.validate()?;
    check_region(s)?;
    if !(norm_bound >= 0.0) || !norm_bound.is_finite() {
        return Err(Error::InvariantViolation(format!(
            "norm bound {norm_bound} must be finite and >= 0"
        )));
    }
    let k = cfg.k;
    let scale = 2f64.powi(2 - 4 * k as i32);
    for c in spec.classes() {
        let cap = scale * c.length() * norm_bound;
        if c.weight().abs_f64() > cap * (1.0 + 1e-12) {
            return Err(Error::WeightBoundViolated(format!(
                "|beta| = {} exceeds {cap} at N = {}",
                c.weight().abs_f64(),
                c.norm()
            )));
        }
    }
    let sigma = Complex::real(s.re);
    let mut total = 0.0;
    let mut ranks = Vec::new();
    for j in 1..=2 * k {
        let pj = poly_p(k, j, s)?.abs_f64();
        ranks.push((j as i64, pj));
        let mut inner = 0.0;
        for c in spec.classes() {
            let q = LocalZetaQuery {
                j: j as i64,
                norm: c.norm(),
                s: sigma,
                power_cap: cfg.power_cap,
            };
            let ps = local_logderiv_sum(&q, cfg.eps)?;
            inner += c.length() * c.multiplicity() as f64 * (ps.value.re.to_f64() + ps.tail_bound);
        }
        total += pj * inner;
    }
    Ok(scale * norm_bound * total + tail_model_bound(spec, s.re.to_f64(), &ranks))
}
