//! Truncated evaluation of the Dirichlet series over a length spectrum.

mod majorant;
mod operator;
mod psi;

pub use majorant::majorant_bound;
pub use operator::apply_spectral_operator;
pub use psi::{
    eval_psi, eval_psi_l_coefficients, eval_psi_l_direct, eval_psi_l_recursive, eval_psi_sum_p, eval_psi_sum_p_shifted,
    eval_xi,
};

use crate::config::SeriesConfig;
use crate::scalar::Complex;
use crate::selberg_local::{local_logderiv_sum, LocalZetaQuery};
use crate::spectra::{LengthSpectrum, PrimitiveClass};
use crate::{Error, Result};
use rayon::prelude::*;

/// Evaluators refuse `Re s <= 1 + CONVERGENCE_MARGIN`.
pub const CONVERGENCE_MARGIN: f64 = 1e-6;

/// A partial sum together with a bound on everything it leaves out.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: Complex,
    pub truncation_bound: f64,
    pub terms_used: usize,
}

impl SeriesValue {
    pub fn zero() -> Self {
        SeriesValue {
            value: Complex::ZERO,
            truncation_bound: 0.0,
            terms_used: 0,
        }
    }

    fn add(self, o: SeriesValue) -> SeriesValue {
        SeriesValue {
            value: self.value + o.value,
            truncation_bound: self.truncation_bound + o.truncation_bound,
            terms_used: self.terms_used + o.terms_used,
        }
    }

    fn scaled(self, c: Complex) -> SeriesValue {
        SeriesValue {
            value: self.value * c,
            truncation_bound: self.truncation_bound * c.abs_f64(),
            terms_used: self.terms_used,
        }
    }
}

pub(crate) fn check_region(s: Complex) -> Result<()> {
    if !(s.re.to_f64() > 1.0 + CONVERGENCE_MARGIN) || !s.is_finite() {
        return Err(Error::OutOfConvergenceRegion(format!("Re s = {} <= 1 + 1e-6", s.re)));
    }
    Ok(())
}

/// Maps `f` over the classes in order, on `cfg.threads` workers, then sums sequentially.
pub(crate) fn sum_classes<F>(spec: &LengthSpectrum, cfg: &SeriesConfig, f: F) -> Result<SeriesValue>
where
    F: Fn(&PrimitiveClass) -> Result<SeriesValue> + Sync + Send,
{
    let parts: Vec<Result<SeriesValue>> = if cfg.threads > 1 && spec.len() > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.threads)
            .build()
            .map_err(|e| Error::InvariantViolation(format!("thread pool: {e}")))?;
        pool.install(|| spec.classes().par_iter().map(&f).collect())
    } else {
        spec.classes().iter().map(&f).collect()
    };
    let mut acc = SeriesValue::zero();
    for p in parts {
        acc = acc.add(p?);
    }
    Ok(acc)
}

/// `sum_r c_r f_r(N, s)` for one class, weighted by its total weight.
pub(crate) fn class_rank_sum(
    class: &PrimitiveClass,
    ranks: &[(i64, Complex)],
    s: Complex,
    cfg: &SeriesConfig,
) -> Result<SeriesValue> {
    let mut out = SeriesValue::zero();
    for &(j, c) in ranks {
        let q = LocalZetaQuery {
            j,
            norm: class.norm(),
            s,
            power_cap: cfg.power_cap,
        };
        let ps = local_logderiv_sum(&q, cfg.eps)?;
        out = out.add(
            SeriesValue {
                value: ps.value,
                truncation_bound: ps.tail_bound,
                terms_used: ps.terms,
            }
            .scaled(c),
        );
    }
    Ok(out.scaled(class.total_weight()))
}

/// Bound on the contribution of classes missing from the spectrum, through its tail model:
/// `|f_r(N, s)| <= (N_max / (N_max - 1))^{max(r, 0)} N^{-sigma} / (1 - N_max^{-sigma})` for `N > N_max`.
pub(crate) fn tail_model_bound(spec: &LengthSpectrum, sigma: f64, ranks: &[(i64, f64)]) -> f64 {
    let Some(t) = spec.tail_model() else { return 0.0 };
    let x = t.n_max / (t.n_max - 1.0);
    let geo = 1.0 / (1.0 - t.n_max.powf(-sigma));
    let factor: f64 = ranks.iter().map(|&(r, c)| c * x.powi(r.max(0) as i32) * geo).sum();
    t.bound(sigma) * factor
}

/// `sum_r c_r f_r` over the spectrum, with the tail model added to the bound.
pub(crate) fn rank_series(
    spec: &LengthSpectrum,
    ranks: &[(i64, Complex)],
    s: Complex,
    cfg: &SeriesConfig,
) -> Result<SeriesValue> {
    check_region(s)?;
    let mut v = sum_classes(spec, cfg, |c| class_rank_sum(c, ranks, s, cfg))?;
    let abs: Vec<(i64, f64)> = ranks.iter().map(|&(r, c)| (r, c.abs_f64())).collect();
    v.truncation_bound += tail_model_bound(spec, s.re.to_f64(), &abs);
    Ok(v)
}
