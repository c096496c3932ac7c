use super::{check_region, rank_series, sum_classes, tail_model_bound, SeriesValue};
use crate::config::SeriesConfig;
use crate::scalar::Complex;
use crate::selberg_local::{coeff_c, poly_p, poly_p_l};
use crate::special::gamma::binomial_dd;
use crate::spectra::LengthSpectrum;
use crate::{Error, Result};

const SHIFT_POLE_TOL: f64 = 1e-8;

/// `Xi(s) = sum beta N^{-s} / (1 - N^{-s})`.
pub fn eval_xi(spec: &LengthSpectrum, s: Complex, cfg: &SeriesConfig) -> Result<SeriesValue> {
    cfg.validate()?;
    check_region(s)?;
    let mut v = sum_classes(spec, cfg, |c| {
        let x = (-s * c.length_dd()).exp();
        Ok(SeriesValue {
            value: c.total_weight() * x / (Complex::ONE - x),
            truncation_bound: 0.0,
            terms_used: 1,
        })
    })?;
    v.truncation_bound = tail_model_bound(spec, s.re.to_f64(), &[(0, 1.0)]);
    Ok(v)
}

/// `Psi(s) = sum beta sum_{j=1}^{2k} p_j(s) f_j(N, s)` where `f_j` is the rank-`j` local sum.
pub fn eval_psi(spec: &LengthSpectrum, s: Complex, cfg: &SeriesConfig) -> Result<SeriesValue> {
    eval_psi_l_direct(spec, 0, s, cfg)
}

fn check_l(k: u32, l: u32) -> Result<()> {
    if l > 2 * k - 1 {
        return Err(Error::IndexOutOfRange(format!(
            "l = {l} exceeds 2k - 1 = {}",
            2 * k - 1
        )));
    }
    Ok(())
}

/// `Psi^[l](s) = sum beta sum_{j=1}^{2k-l} p_j^[l](s) f_{j-l}(N, s)`.
pub fn eval_psi_l_direct(spec: &LengthSpectrum, l: u32, s: Complex, cfg: &SeriesConfig) -> Result<SeriesValue> {
    cfg.validate()?;
    check_l(cfg.k, l)?;
    check_region(s)?;
    let k = cfg.k;
    let mut ranks = Vec::with_capacity((2 * k - l) as usize);
    for j in 1..=(2 * k - l) {
        let p = if l == 0 {
            poly_p(k, j, s)?
        } else {
            poly_p_l(k, l, j, s)?
        };
        ranks.push((j as i64 - l as i64, p));
    }
    rank_series(spec, &ranks, s, cfg)
}

/// `Psi^[l]` by the difference recursion `Psi^[i+1](s) = (Psi^[i](s) - Psi^[i](s+1)) / (2s + i)`.
pub fn eval_psi_l_recursive(spec: &LengthSpectrum, l: u32, s: Complex, cfg: &SeriesConfig) -> Result<SeriesValue> {
    cfg.validate()?;
    check_l(cfg.k, l)?;
    check_region(s)?;
    let mut row = (0..=l)
        .map(|j| eval_psi(spec, s + j as f64, cfg))
        .collect::<Result<Vec<_>>>()?;
    for i in 0..l {
        let mut next = Vec::with_capacity(row.len() - 1);
        for j in 0..row.len() - 1 {
            let den = (s + j as f64) * 2.0 + i as f64;
            if den.abs_f64() <= SHIFT_POLE_TOL {
                return Err(Error::PoleProximity(format!("2(s + {j}) + {i} vanishes")));
            }
            let inv = den.recip();
            next.push(SeriesValue {
                value: (row[j].value - row[j + 1].value) * inv,
                truncation_bound: (row[j].truncation_bound + row[j + 1].truncation_bound) * inv.abs_f64(),
                terms_used: row[j].terms_used + row[j + 1].terms_used,
            });
        }
        row = next;
    }
    Ok(row[0])
}

/// `Psi^[l](s) = sum_{j=0}^{l} c_j^[l](s) Psi(s + j)`.
pub fn eval_psi_l_coefficients(spec: &LengthSpectrum, l: u32, s: Complex, cfg: &SeriesConfig) -> Result<SeriesValue> {
    cfg.validate()?;
    check_l(cfg.k, l)?;
    check_region(s)?;
    let mut acc = SeriesValue::zero();
    for j in 0..=l {
        let c = coeff_c(l, j, s)?;
        let v = eval_psi(spec, s + j as f64, cfg)?;
        acc.value += v.value * c;
        acc.truncation_bound += v.truncation_bound * c.abs_f64();
        acc.terms_used += v.terms_used;
    }
    Ok(acc)
}

/// `Psi^[2k-1,p](s) = sum beta f_{2-2k+p}(N, s)`.
pub fn eval_psi_sum_p(spec: &LengthSpectrum, p: u32, s: Complex, cfg: &SeriesConfig) -> Result<SeriesValue> {
    cfg.validate()?;
    check_region(s)?;
    let rank = 2 - 2 * cfg.k as i64 + p as i64;
    rank_series(spec, &[(rank, Complex::ONE)], s, cfg)
}

/// `Psi^[2k-1,p](s) = sum_{h>=0} binom(p+h-1, h) Psi^[2k-1](s+h)`, stopped once the
/// certified remainder of the shift sum is below `eps`.
pub fn eval_psi_sum_p_shifted(spec: &LengthSpectrum, p: u32, s: Complex, cfg: &SeriesConfig) -> Result<SeriesValue> {
    cfg.validate()?;
    check_region(s)?;
    let l = 2 * cfg.k - 1;
    let sigma = s.re.to_f64();
    // |Psi^[2k-1](s+h)| <= a0 q^h, since its single rank 2-2k is non-positive.
    let mut a0: f64 = spec
        .classes()
        .iter()
        .map(|c| c.total_weight().abs_f64() * c.norm().powf(-sigma) / (1.0 - c.norm().powf(-sigma)))
        .sum();
    let mut n_min = spec.norm_range().map_or(f64::INFINITY, |r| r.0);
    if let Some(t) = spec.tail_model() {
        a0 += t.bound(sigma) / (1.0 - t.n_max.powf(-sigma));
        n_min = n_min.min(t.n_max);
    }
    let q = 1.0 / n_min;
    let mut acc = SeriesValue::zero();
    let pf = p as f64;
    for h in 0..=cfg.shift_cap {
        let c = binomial_dd(p as i64 + h as i64 - 1, h as i64);
        if h >= 1 {
            let ratio = (pf + h as f64) / (h as f64 + 1.0) * q;
            let remainder = if c.is_zero() || a0 == 0.0 {
                0.0
            } else if ratio < 1.0 {
                c.to_f64().abs() * a0 * q.powi(h as i32) / (1.0 - ratio)
            } else {
                f64::INFINITY
            };
            if remainder < cfg.eps {
                acc.truncation_bound += remainder;
                return Ok(acc);
            }
        }
        if c.is_zero() {
            continue;
        }
        let v = eval_psi_l_direct(spec, l, s + h as f64, cfg)?;
        acc.value += v.value * c;
        acc.truncation_bound += v.truncation_bound * c.abs().to_f64();
        acc.terms_used += v.terms_used;
    }
    Err(Error::NonConvergence(format!(
        "shift sum not below eps after {} shifts",
        cfg.shift_cap
    )))
}
