//! Seeded pseudo-random spectra.

use super::model::{LengthSpectrum, PrimitiveClass, NORM_GAP};
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `count` classes with norms uniform in `norm_range` and weights uniform in the disk of
/// radius `weight_scale * log N`. Labels are `syn-<i>`.
pub fn gen_synthetic(seed: u64, count: usize, norm_range: (f64, f64), weight_scale: f64) -> Result<LengthSpectrum> {
    let (lo, hi) = norm_range;
    if !(lo > 1.0 + NORM_GAP) || !(hi >= lo) || !hi.is_finite() {
        return Err(Error::InvariantViolation(format!(
            "norm range ({lo}, {hi}) must lie in (1, inf)"
        )));
    }
    if !(weight_scale >= 0.0) || !weight_scale.is_finite() {
        return Err(Error::InvariantViolation("weight_scale must be finite and >= 0".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut classes = Vec::with_capacity(count);
    for i in 0..count {
        let n = if hi > lo { rng.gen_range(lo..hi) } else { lo };
        let radius = weight_scale * n.ln() * rng.gen::<f64>().sqrt();
        let theta = std::f64::consts::TAU * rng.gen::<f64>();
        let w = [radius * theta.cos(), radius * theta.sin()];
        classes.push(PrimitiveClass::from_norm(n, w, 1, Some(format!("syn-{i}")))?);
    }
    LengthSpectrum::new(classes, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible() {
        let a = gen_synthetic(7, 5, (3.0, 100.0), 1.0).unwrap();
        let b = gen_synthetic(7, 5, (3.0, 100.0), 1.0).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, gen_synthetic(8, 5, (3.0, 100.0), 1.0).unwrap());
        assert!(gen_synthetic(1, 0, (3.0, 4.0), 1.0).unwrap().is_empty());
    }

    #[test]
    fn within_range_and_disk() {
        let s = gen_synthetic(3, 200, (2.0, 50.0), 0.25).unwrap();
        for c in s.classes() {
            assert!(c.norm() >= 2.0 && c.norm() < 50.0);
            assert!(c.weight().abs_f64() <= 0.25 * c.length() * (1.0 + 1e-15));
        }
    }
}
