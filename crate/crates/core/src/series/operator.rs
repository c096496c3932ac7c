use super::{check_region, sum_classes, SeriesValue};
use crate::config::SeriesConfig;
use crate::scalar::{Complex, Dd};
use crate::selberg_local::poly_p_coefficients;
use crate::special::gamma::{bigint_to_dd, factorial};
use crate::spectra::{LengthSpectrum, PrimitiveClass};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::Zero;

const REL_TOL: f64 = 1e-30;

/// `Q(s, lambda) / (2s-1)^d`, with `q[i][e]` the coefficient of `lambda^i s^e`.
#[derive(Debug, Clone)]
struct Term {
    q: Vec<Vec<BigInt>>,
    d: u32,
}

fn at(v: &[BigInt], e: usize) -> BigInt {
    v.get(e).cloned().unwrap_or_else(BigInt::zero)
}

impl Term {
    /// Applies `-(2s-1)^{-1} d/ds` to `Term * exp(-lambda s)`:
    /// `Q -> 2d Q + lambda Q (2s-1) - Q_s (2s-1)`, `d -> d + 2`.
    fn step(&self) -> Term {
        let deg_s = self.q.iter().map(Vec::len).max().unwrap_or(0) + 1;
        let mut out = vec![vec![BigInt::zero(); deg_s]; self.q.len() + 1];
        let two_d = BigInt::from(2 * self.d);
        for (i, row) in self.q.iter().enumerate() {
            for e in 0..deg_s {
                // Q_s (2s - 1) at s^e.
                let ds = at(row, e) * BigInt::from(e) * 2 - at(row, e + 1) * BigInt::from(e + 1);
                let val = ds - &two_d * at(row, e);
                out[i][e] -= val;
                // lambda Q (2s - 1) at lambda^{i+1} s^e.
                let shifted = if e >= 1 { at(row, e - 1) * 2 } else { BigInt::zero() } - at(row, e);
                out[i + 1][e] += shifted;
            }
        }
        Term { q: out, d: self.d + 2 }
    }
}

fn initial_term(k: u32, j: u32) -> Result<Term> {
    let c = poly_p_coefficients(k, j)?;
    let row = c.iter().enumerate().map(|(e, x)| x << e).collect();
    Ok(Term { q: vec![row], d: 0 })
}

/// `q[j-1][i] = (1/m!) Q_j^{(m)}(s)` coefficient of `lambda^i`, already divided by `(2s-1)^d`.
fn evaluate_terms(k: u32, m: u32, s: Complex) -> Result<Vec<Vec<Complex>>> {
    let mf = bigint_to_dd(&factorial(m as u64));
    let w = s * 2.0 - 1.0;
    (1..=2 * k)
        .map(|j| {
            let mut t = initial_term(k, j)?;
            for _ in 0..m {
                t = t.step();
            }
            let den = w.powi(t.d as i32) * mf;
            Ok(t.q
                .iter()
                .map(|row| row.iter().rev().fold(Complex::ZERO, |acc, c| acc * s + bigint_to_dd(c)) / den)
                .collect())
        })
        .collect()
}

fn class_sum(
    class: &PrimitiveClass,
    q: &[Vec<Complex>],
    m: u32,
    s: Complex,
    cfg: &SeriesConfig,
) -> Result<SeriesValue> {
    let n = class.norm_dd();
    let ln_n = class.length_dd();
    let sigma = s.re.to_f64();
    let decay = (-sigma * class.length()).exp();
    let base = (-s * ln_n).exp();
    let inv_n = n.recip();
    let mut pw = Complex::ONE;
    let mut inv_nk = Dd::ONE;
    let mut sum = Complex::ZERO;
    let q_abs: Vec<Vec<f64>> = q.iter().map(|r| r.iter().map(|c| c.abs_f64()).collect()).collect();
    let majorant = |kappa: usize, x: f64| -> f64 {
        let lam = kappa as f64 * class.length();
        let mut b = 0.0;
        for (j, row) in q_abs.iter().enumerate() {
            let p: f64 = row.iter().rev().fold(0.0, |acc, c| acc * lam + c);
            b += x.powi(j as i32 + 1) * p;
        }
        b * (-(kappa as f64) * sigma * class.length()).exp()
    };
    let mut tail = f64::INFINITY;
    for kappa in 1..=cfg.power_cap {
        pw *= base;
        inv_nk *= inv_n;
        let x = (Dd::ONE - inv_nk).recip();
        let lam = ln_n * kappa as f64;
        let mut term = Complex::ZERO;
        let mut xj = Dd::ONE;
        for row in q {
            xj *= x;
            let p = row.iter().rev().fold(Complex::ZERO, |acc, c| acc * lam + *c);
            term += p * xj;
        }
        sum += term * pw;
        let next_x = 1.0 / (1.0 - inv_nk.to_f64() * inv_n.to_f64());
        let r = ((kappa as f64 + 2.0) / (kappa as f64 + 1.0)).powi(m as i32) * decay;
        if r < 1.0 {
            tail = majorant(kappa + 1, next_x) / (1.0 - r);
            if tail <= REL_TOL * sum.abs_f64() || tail < 1e-300 {
                let used = SeriesValue {
                    value: sum,
                    truncation_bound: tail,
                    terms_used: kappa,
                };
                return Ok(scale(used, class.total_weight()));
            }
        }
    }
    if tail <= cfg.eps {
        let used = SeriesValue {
            value: sum,
            truncation_bound: tail,
            terms_used: cfg.power_cap,
        };
        return Ok(scale(used, class.total_weight()));
    }
    Err(Error::NonConvergence(format!(
        "operator power sum at N = {} left tail {tail:e}",
        class.norm()
    )))
}

fn scale(v: SeriesValue, c: Complex) -> SeriesValue {
    SeriesValue {
        value: v.value * c,
        truncation_bound: v.truncation_bound * c.abs_f64(),
        terms_used: v.terms_used,
    }
}

/// Tail-model bound for missing classes. Uses
/// `(log N)^i N^{-sigma} <= C_i N^{-(sigma - delta)}` with `delta = (sigma - 1) / 2`.
fn operator_tail_model(spec: &LengthSpectrum, q: &[Vec<Complex>], sigma: f64) -> f64 {
    let Some(t) = spec.tail_model() else { return 0.0 };
    let delta = (sigma - 1.0) / 2.0;
    let x = t.n_max / (t.n_max - 1.0);
    let ln_max = t.n_max.ln();
    let deg = q.iter().map(Vec::len).max().unwrap_or(0);
    let mut total = 0.0;
    for i in 0..deg {
        // sum_kappa kappa^i N_max^{-(kappa-1) sigma}
        let mut g = 0.0;
        for kappa in 1..10_000 {
            let term = (kappa as f64).powi(i as i32) * t.n_max.powf(-((kappa - 1) as f64) * sigma);
            g += term;
            if term < 1e-18 * g {
                break;
            }
        }
        let (ci, b) = if i == 0 {
            (1.0, t.bound(sigma))
        } else {
            let peak = (i as f64 / delta).exp();
            let ci = if peak > t.n_max {
                (i as f64 / (std::f64::consts::E * delta)).powi(i as i32)
            } else {
                ln_max.powi(i as i32) * t.n_max.powf(-delta)
            };
            (ci, t.bound(sigma - delta))
        };
        let coef: f64 = q
            .iter()
            .enumerate()
            .map(|(j, row)| row.get(i).map_or(0.0, |c| c.abs_f64()) * x.powi(j as i32 + 1))
            .sum();
        total += coef * g * ci * b;
    }
    total
}

/// `(1/m!) (-(2s-1)^{-1} d/ds)^m Psi(s)`, differentiating each power term in closed form.
pub fn apply_spectral_operator(spec: &LengthSpectrum, m: u32, s: Complex, cfg: &SeriesConfig) -> Result<SeriesValue> {
    cfg.validate()?;
    check_region(s)?;
    let q = evaluate_terms(cfg.k, m, s)?;
    let mut v = sum_classes(spec, cfg, |c| class_sum(c, &q, m, s, cfg))?;
    v.truncation_bound += operator_tail_model(spec, &q, s.re.to_f64());
    Ok(v)
}
