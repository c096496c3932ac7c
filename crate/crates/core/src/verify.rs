//! Seeded property suites over every identity the library implements.
//!
//! Each suite is a list of checks; each check produces one [`VerifyReport`].
//! Residuals are relative to `max(1, |reference|)` unless a check says otherwise.

use crate::config::SeriesConfig;
use crate::kernels::{apply_dk, f_kernel, hyp_lemma_residual, j_integral_closed, j_integral_quadrature};
use crate::scalar::{Complex, Dd};
use crate::selberg_local::{
    local_logderiv, local_logderiv_binomial, model_residue_psi_l, poly_p, poly_p_coefficients, poly_p_gamma_form,
    residue_coeff_psi_l, residue_coeff_xi, residue_coeff_xi_by_composition, term_i, LocalZetaQuery, ResidueQuery, Sign,
};
use crate::series::{
    eval_psi, eval_psi_l_coefficients, eval_psi_l_direct, eval_psi_l_recursive, eval_psi_sum_p, eval_psi_sum_p_shifted,
    eval_xi, majorant_bound,
};
use crate::special::{
    contiguous_relation_residual, contiguous_relation_residual_exact, hyp2f1, linear_transform_residual,
    quadratic_transform_residual, HypParams,
};
use crate::spectra::pell::{class_number_by_union_find, fundamental_solution_search};
use crate::spectra::{
    class_number, conjugation_check_exact, fundamental_solution, gen_pell, gen_synthetic, parse_spectrum,
    write_spectrum, GroupElement, RationalComplex,
};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use std::str::FromStr;

pub const SUITES: [&str; 8] = [
    "hypergeometric",
    "kernel",
    "local",
    "recursion",
    "xi-pipeline",
    "residues",
    "bound",
    "spectra",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Hypergeometric,
    Kernel,
    Local,
    Recursion,
    XiPipeline,
    Residues,
    Bound,
    Spectra,
    All,
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Suite> {
        Ok(match s {
            "hypergeometric" => Suite::Hypergeometric,
            "kernel" => Suite::Kernel,
            "local" => Suite::Local,
            "recursion" => Suite::Recursion,
            "xi-pipeline" => Suite::XiPipeline,
            "residues" => Suite::Residues,
            "bound" => Suite::Bound,
            "spectra" => Suite::Spectra,
            "all" => Suite::All,
            other => return Err(Error::InvariantViolation(format!("unknown suite {other}"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VerifyOptions {
    pub seed: u64,
    pub trials: usize,
    /// Replaces every check's default tolerance when set.
    pub tolerance: Option<f64>,
    pub k_max: u32,
    pub series: SeriesConfig,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 42,
            trials: 200,
            tolerance: None,
            k_max: 3,
            series: SeriesConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseRecord {
    pub inputs: Value,
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Outcome of one check. `max_residual` is `None` when a case failed to evaluate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub check: String,
    pub trials: usize,
    pub max_residual: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
    pub cases: Vec<CaseRecord>,
    pub config: VerifyOptions,
    pub seed: u64,
}

impl VerifyReport {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

struct Check<'a> {
    suite: &'static str,
    name: &'static str,
    tolerance: f64,
    cases: Vec<CaseRecord>,
    opts: &'a VerifyOptions,
}

impl<'a> Check<'a> {
    fn new(suite: &'static str, name: &'static str, tolerance: f64, opts: &'a VerifyOptions) -> Self {
        Check {
            suite,
            name,
            tolerance: opts.tolerance.unwrap_or(tolerance),
            cases: Vec::new(),
            opts,
        }
    }

    fn rng(&self) -> ChaCha8Rng {
        // FNV-1a of the check name, mixed with the seed.
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in self.suite.bytes().chain(*b"/").chain(self.name.bytes()) {
            h = (h ^ b as u64).wrapping_mul(0x0100_0000_01b3);
        }
        ChaCha8Rng::seed_from_u64(self.opts.seed ^ h)
    }

    fn record(&mut self, inputs: Value, residual: Result<f64>) {
        let case = match residual {
            Ok(r) if r.is_finite() => CaseRecord {
                inputs,
                residual: Some(r),
                error: None,
            },
            Ok(r) => CaseRecord {
                inputs,
                residual: None,
                error: Some(format!("non-finite residual {r}")),
            },
            Err(e) => CaseRecord {
                inputs,
                residual: None,
                error: Some(e.to_string()),
            },
        };
        self.cases.push(case);
    }

    fn finish(self) -> VerifyReport {
        let max = self.cases.iter().try_fold(0.0f64, |m, c| c.residual.map(|r| m.max(r)));
        let pass = max.is_some_and(|m| m <= self.tolerance);
        VerifyReport {
            suite: self.suite.into(),
            check: self.name.into(),
            trials: self.cases.len(),
            max_residual: max,
            tolerance: self.tolerance,
            pass,
            cases: self.cases,
            config: *self.opts,
            seed: self.opts.seed,
        }
    }
}

fn rel(a: Complex, b: Complex) -> f64 {
    (a - b).abs_f64() / b.abs_f64().max(1.0)
}

fn cj(z: Complex) -> Value {
    let (re, im) = z.to_f64();
    json!([re, im])
}

fn draw_s(rng: &mut ChaCha8Rng, re: (f64, f64), im: f64) -> Complex {
    Complex::from_f64(rng.gen_range(re.0..re.1), rng.gen_range(-im..im))
}

fn cfg_k(opts: &VerifyOptions, k: u32) -> SeriesConfig {
    SeriesConfig { k, ..opts.series }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Vec<VerifyReport> {
    match suite {
        Suite::Hypergeometric => hypergeometric(opts),
        Suite::Kernel => kernel(opts),
        Suite::Local => local(opts),
        Suite::Recursion => recursion(opts),
        Suite::XiPipeline => xi_pipeline(opts),
        Suite::Residues => residues(opts),
        Suite::Bound => bound(opts),
        Suite::Spectra => spectra(opts),
        Suite::All => SUITES
            .iter()
            .flat_map(|s| run_suite(s.parse().expect("known suite"), opts))
            .collect(),
    }
}

fn hypergeometric(opts: &VerifyOptions) -> Vec<VerifyReport> {
    let cfg = opts.series;
    let mut out = Vec::new();

    let mut c = Check::new("hypergeometric", "contiguous", 1e-10, opts);
    let mut rng = c.rng();
    for _ in 0..opts.trials {
        let k = rng.gen_range(1..=opts.k_max);
        let s = draw_s(&mut rng, (1.1, 5.0), 2.0);
        let n: f64 = rng.gen_range(2.0..100.0);
        let a = s + k as f64;
        let z = Complex::from(1.0 / n);
        let scale = hyp2f1(&HypParams::new(a, a, s * 2.0, z), &cfg).map(|f| f.abs_f64() * a.abs_f64());
        let r = contiguous_relation_residual(a, a, s * 2.0, z, &cfg).and_then(|r| Ok(r.abs_f64() / scale?.max(1.0)));
        c.record(json!({"k": k, "s": cj(s), "N": n}), r);
    }
    out.push(c.finish());

    let mut c = Check::new("hypergeometric", "contiguous-exact", 0.0, opts);
    let mut rng = c.rng();
    for _ in 0..opts.trials.min(50) {
        let q = |rng: &mut ChaCha8Rng, lo: i64, hi: i64| {
            BigRational::new(BigInt::from(rng.gen_range(lo..hi)), BigInt::from(rng.gen_range(1..7)))
        };
        let a = BigRational::from_integer(BigInt::from(-rng.gen_range(1..7)));
        let b = q(&mut rng, -20, 20);
        let cc = q(&mut rng, 1, 40) + BigRational::new(1.into(), 13.into());
        let z = q(&mut rng, -10, 10);
        let inputs = json!({"a": a.to_string(), "b": b.to_string(), "c": cc.to_string(), "z": z.to_string()});
        let r = contiguous_relation_residual_exact(&a, &b, &cc, &z).map(|r| r.to_f64().unwrap_or(f64::INFINITY).abs());
        c.record(inputs, r);
    }
    out.push(c.finish());

    let mut c = Check::new("hypergeometric", "quadratic", 1e-10, opts);
    let mut rng = c.rng();
    for _ in 0..opts.trials {
        let k = rng.gen_range(1..=opts.k_max);
        let s = draw_s(&mut rng, (1.1, 5.0), 2.0);
        let n: f64 = rng.gen_range(2.0..100.0);
        let kf = k as f64;
        let z1 = Dd::from(4.0 * n) / (Dd::from(n) + 1.0).sqr();
        let scale = hyp2f1(
            &HypParams::new(s + (kf - 0.5), s + kf, s * 2.0, Complex::real(z1)),
            &cfg,
        );
        let r = quadratic_transform_residual(s, k, n, &cfg).and_then(|r| Ok(r.abs_f64() / scale?.abs_f64().max(1.0)));
        c.record(json!({"k": k, "s": cj(s), "N": n}), r);
    }
    out.push(c.finish());

    let mut c = Check::new("hypergeometric", "linear", 1e-10, opts);
    let mut rng = c.rng();
    for _ in 0..opts.trials {
        let k = rng.gen_range(1..=opts.k_max);
        let s = draw_s(&mut rng, (1.1, 5.0), 2.0);
        let n: f64 = rng.gen_range(2.0..100.0);
        let kf = k as f64;
        let lhs = hyp2f1(
            &HypParams::new(
                s * 2.0 + (2.0 * kf - 1.0),
                Complex::from(2.0 * kf),
                s * 2.0,
                Complex::from(1.0 / n),
            ),
            &cfg,
        );
        let r = linear_transform_residual(s, k, n, &cfg).and_then(|r| Ok(r.abs_f64() / lhs?.abs_f64().max(1.0)));
        c.record(json!({"k": k, "s": cj(s), "N": n}), r);
    }
    out.push(c.finish());
    out
}

fn kernel(opts: &VerifyOptions) -> Vec<VerifyReport> {
    let mut out = Vec::new();
    let mut c = Check::new("kernel", "induction", 1e-9, opts);
    let mut rng = c.rng();
    for _ in 0..opts.trials {
        let k = rng.gen_range(1..=opts.k_max + 1);
        let s = draw_s(&mut rng, (1.1, 5.0), 2.0);
        let r: f64 = rng.gen_range(0.01..0.95);
        let cfg = cfg_k(opts, k);
        let res = apply_dk(k, s, r, &cfg).and_then(|lhs| Ok(rel(lhs, f_kernel(k + 1, s, r, &cfg)?)));
        c.record(json!({"k": k, "s": cj(s), "r": r}), res);
    }
    out.push(c.finish());

    let mut c = Check::new("kernel", "lemma", 1e-10, opts);
    let mut rng = c.rng();
    for _ in 0..opts.trials {
        let k = rng.gen_range(1..=opts.k_max + 1);
        let s = draw_s(&mut rng, (1.1, 5.0), 2.0);
        let r: f64 = rng.gen_range(0.01..0.95);
        let cfg = cfg_k(opts, k);
        let a = s + k as f64;
        let scale = hyp2f1(&HypParams::new(a + 1.0, a + 1.0, s * 2.0, Complex::from(r)), &cfg)
            .map(|f| (f * a * a).abs_f64() * (1.0 - r) * (1.0 - r));
        let res = hyp_lemma_residual(k, s, r, &cfg).and_then(|v| Ok(v.abs_f64() / scale?.max(1.0)));
        c.record(json!({"k": k, "s": cj(s), "r": r}), res);
    }
    out.push(c.finish());

    let mut c = Check::new("kernel", "j-integral", 1e-9, opts);
    for k in 1..=3u32 {
        for s in [Complex::from(1.5), Complex::from(2.4), Complex::from_f64(3.0, 0.5)] {
            for n in [2.0, 6.8541, 50.0] {
                let cfg = cfg_k(opts, k);
                let res = j_integral_closed(k, s, n).and_then(|cl| Ok(rel(j_integral_quadrature(k, s, n, &cfg)?, cl)));
                c.record(json!({"k": k, "s": cj(s), "N": n}), res);
            }
        }
    }
    out.push(c.finish());

    let mut c = Check::new("kernel", "j-hand-value", 1e-12, opts);
    let s = Complex::from(2.0);
    let expect = Complex::from(-7.0 / 32.0);
    let res = j_integral_closed(1, s, 4.0).and_then(|cl| {
        let q = j_integral_quadrature(1, s, 4.0, &cfg_k(opts, 1))?;
        Ok(rel(cl, expect).max(rel(q, expect)))
    });
    c.record(json!({"k": 1, "s": cj(s), "N": 4.0, "expected": -7.0 / 32.0}), res);
    out.push(c.finish());
    out
}

fn local(opts: &VerifyOptions) -> Vec<VerifyReport> {
    let eps = opts.series.eps;
    let mut out = Vec::new();
    let mut c = Check::new("local", "dual-formula", 1e-12, opts);
    let mut rng = c.rng();
    for _ in 0..opts.trials {
        let j = rng.gen_range(1..=4i64);
        let s = draw_s(&mut rng, (1.1, 5.0), 3.0);
        let n: f64 = rng.gen_range(2.0..100.0);
        let q = LocalZetaQuery {
            power_cap: opts.series.power_cap,
            ..LocalZetaQuery::new(j, n, s)
        };
        let res = local_logderiv(&q, eps).and_then(|a| Ok(rel(local_logderiv_binomial(&q, eps)?, a)));
        c.record(json!({"j": j, "s": cj(s), "N": n}), res);
    }
    out.push(c.finish());

    let mut c = Check::new("local", "telescoping", 1e-12, opts);
    let mut rng = c.rng();
    for _ in 0..opts.trials {
        let j = rng.gen_range(-2..=6i64);
        let s = draw_s(&mut rng, (1.1, 5.0), 3.0);
        let n: f64 = rng.gen_range(2.0..100.0);
        let f = |j: i64, s: Complex| {
            local_logderiv(
                &LocalZetaQuery {
                    power_cap: opts.series.power_cap,
                    ..LocalZetaQuery::new(j, n, s)
                },
                eps,
            )
        };
        let res = (|| Ok(rel(f(j, s)? - f(j, s + 1.0)?, f(j - 1, s)?)))();
        c.record(json!({"j": j, "s": cj(s), "N": n}), res);
    }
    out.push(c.finish());

    let mut c = Check::new("local", "poly-identity", 1e-12, opts);
    let mut rng = c.rng();
    for _ in 0..opts.trials {
        let k = rng.gen_range(1..=opts.k_max);
        let j = rng.gen_range(1..=2 * k);
        let s = draw_s(&mut rng, (1.1, 5.0), 3.0);
        let res = poly_p(k, j, s).and_then(|a| Ok(rel(poly_p_gamma_form(k, j, s)?, a)));
        c.record(json!({"k": k, "j": j, "s": cj(s)}), res);
    }
    out.push(c.finish());

    let mut c = Check::new("local", "poly-specialization", 0.0, opts);
    // At k = 1, p_1 = 2s - 2 and p_2 = 2, as coefficients in the variable 2s.
    for (j, want) in [(1u32, vec![-2i64, 1]), (2, vec![2])] {
        let res = poly_p_coefficients(1, j).map(|cs| {
            let got: Vec<i64> = cs.iter().map(|x| x.to_i64().unwrap_or(i64::MAX)).collect();
            if got == want {
                0.0
            } else {
                1.0
            }
        });
        c.record(json!({"k": 1, "j": j}), res);
    }
    out.push(c.finish());

    let mut c = Check::new("local", "term-i", 1e-11, opts);
    let mut rng = c.rng();
    for _ in 0..opts.trials.min(50) {
        let k = rng.gen_range(1..=opts.k_max);
        let s = draw_s(&mut rng, (1.1, 5.0), 2.0);
        let n0: f64 = rng.gen_range(2.0..100.0);
        let res = (|| {
            let mut lhs = Complex::ZERO;
            for m in 1..=400 {
                let norm = n0.powi(m);
                if !norm.is_finite() {
                    break;
                }
                let t = term_i(k, s, norm, n0, Complex::ONE)?;
                lhs += t;
                if t.abs_f64() < 1e-32 * lhs.abs_f64() {
                    break;
                }
            }
            let mut rhs = Complex::ZERO;
            for j in 1..=2 * k {
                rhs += poly_p(k, j, s)? * local_logderiv(&LocalZetaQuery::new(j as i64, n0, s), eps)?;
            }
            if k % 2 == 1 {
                rhs = -rhs;
            }
            Ok(rel(lhs, rhs))
        })();
        c.record(json!({"k": k, "s": cj(s), "N0": n0}), res);
    }
    out.push(c.finish());
    out
}

fn recursion(opts: &VerifyOptions) -> Vec<VerifyReport> {
    let mut c = Check::new("recursion", "psi-l-three-way", 1e-10, opts);
    let mut rng = c.rng();
    for _ in 0..opts.trials {
        let k = rng.gen_range(1..=opts.k_max);
        let l = rng.gen_range(0..2 * k);
        let seed = rng.gen::<u64>();
        let s = draw_s(&mut rng, (1.1, 4.0), 3.0);
        let cfg = cfg_k(opts, k);
        let res = (|| {
            let spec = gen_synthetic(seed, 5, (3.0, 100.0), 1.0)?;
            let d = eval_psi_l_direct(&spec, l, s, &cfg)?.value;
            let r = eval_psi_l_recursive(&spec, l, s, &cfg)?.value;
            let q = eval_psi_l_coefficients(&spec, l, s, &cfg)?.value;
            Ok(rel(r, d).max(rel(q, d)))
        })();
        c.record(json!({"k": k, "l": l, "s": cj(s), "spectrum_seed": seed}), res);
    }
    vec![c.finish()]
}

fn xi_pipeline(opts: &VerifyOptions) -> Vec<VerifyReport> {
    let mut out = Vec::new();
    let names = ["xi-sum-p", "xi-shift-sum"];
    for (which, name) in names.into_iter().enumerate() {
        let mut c = Check::new("xi-pipeline", name, 1e-9, opts);
        let mut rng = c.rng();
        let trials = if which == 0 { opts.trials } else { opts.trials.min(60) };
        for _ in 0..trials {
            let k = rng.gen_range(1..=opts.k_max);
            let seed = rng.gen::<u64>();
            let s = draw_s(&mut rng, (1.1, 4.0), 3.0);
            let cfg = cfg_k(opts, k);
            let res = (|| {
                let spec = gen_synthetic(seed, 5, (3.0, 100.0), 1.0)?;
                let xi = eval_xi(&spec, s, &cfg)?.value;
                let v = if which == 0 {
                    eval_psi_sum_p(&spec, 2 * k - 2, s, &cfg)?.value
                } else {
                    eval_psi_sum_p_shifted(&spec, 2 * k - 2, s, &cfg)?.value
                };
                Ok(rel(v, xi))
            })();
            c.record(json!({"k": k, "s": cj(s), "spectrum_seed": seed}), res);
        }
        out.push(c.finish());
    }

    let mut c = Check::new("xi-pipeline", "xi-k1", 1e-12, opts);
    let mut rng = c.rng();
    for _ in 0..opts.trials {
        let seed = rng.gen::<u64>();
        let s = draw_s(&mut rng, (1.1, 4.0), 3.0);
        let cfg = cfg_k(opts, 1);
        let res = (|| {
            let spec = gen_synthetic(seed, 5, (3.0, 100.0), 1.0)?;
            Ok(rel(
                eval_psi_l_direct(&spec, 1, s, &cfg)?.value,
                eval_xi(&spec, s, &cfg)?.value,
            ))
        })();
        c.record(json!({"k": 1, "s": cj(s), "spectrum_seed": seed}), res);
    }
    out.push(c.finish());
    out
}

fn residues(opts: &VerifyOptions) -> Vec<VerifyReport> {
    let mut out = Vec::new();
    let mut c = Check::new("residues", "xi-k1-reduction", 1e-13, opts);
    for r in [0.5, 1.0, 14.134725] {
        for sign in [Sign::Plus, Sign::Minus] {
            for j in 0..2u32 {
                let x = Complex::from_f64(0.0, 2.0 * r * sign.value());
                let jf = j as f64;
                let pm = if j % 2 == 0 { -4.0 } else { 4.0 };
                let expect = Complex::from(pm) / ((x - jf) * (x - jf + 1.0));
                let res = residue_coeff_xi(&ResidueQuery::new(1, j, sign, r))
                    .map(|v| (v - expect).abs_f64() / expect.abs_f64());
                c.record(json!({"k": 1, "j": j, "r": r, "sign": sign.value()}), res);
            }
        }
    }
    out.push(c.finish());

    let mut c = Check::new("residues", "composition", 1e-11, opts);
    let mut rng = c.rng();
    for k in 1..=opts.k_max {
        for j in 0..=6u32 {
            let r: f64 = rng.gen_range(0.1..20.0);
            let sign = if rng.gen::<bool>() { Sign::Plus } else { Sign::Minus };
            let q = ResidueQuery::new(k, j, sign, r);
            let res = residue_coeff_xi(&q).and_then(|a| Ok(rel(residue_coeff_xi_by_composition(&q)?, a)));
            c.record(json!({"k": k, "j": j, "r": r, "sign": sign.value()}), res);
        }
    }
    out.push(c.finish());

    let mut c = Check::new("residues", "numeric-limit", 1e-9, opts);
    let mut rng = c.rng();
    for _ in 0..opts.trials.min(50) {
        let l = rng.gen_range(0..=5u32);
        let j = rng.gen_range(0..=l);
        let r: f64 = rng.gen_range(0.2..10.0);
        let sign = if rng.gen::<bool>() { Sign::Plus } else { Sign::Minus };
        let q = ResidueQuery::new(1, j, sign, r).with_l(l);
        let res = residue_coeff_psi_l(&q).and_then(|a| Ok(rel(model_residue_psi_l(&q, 1e-12)?, a)));
        c.record(json!({"l": l, "j": j, "r": r, "sign": sign.value()}), res);
    }
    out.push(c.finish());
    out
}

fn bound(opts: &VerifyOptions) -> Vec<VerifyReport> {
    let mut c = Check::new("bound", "majorant", 0.0, opts);
    let mut rng = c.rng();
    for _ in 0..opts.trials {
        let k = rng.gen_range(1..=opts.k_max);
        let seed = rng.gen::<u64>();
        let s = draw_s(&mut rng, (1.1, 4.0), 5.0);
        let cfg = cfg_k(opts, k);
        let res = (|| {
            let scale = 2f64.powi(2 - 4 * k as i32);
            let spec = gen_synthetic(seed, 5, (2.0, 100.0), scale)?;
            let psi = eval_psi(&spec, s, &cfg)?.value.abs_f64();
            let b = majorant_bound(&spec, s, 1.0, &cfg)?;
            // Excess over the bound, allowing for rounding in both sums.
            Ok((psi - b * (1.0 + 1e-12)).max(0.0))
        })();
        c.record(json!({"k": k, "s": cj(s), "spectrum_seed": seed}), res);
    }
    vec![c.finish()]
}

fn spectra(opts: &VerifyOptions) -> Vec<VerifyReport> {
    let mut out = Vec::new();
    let mut c = Check::new("spectra", "conjugation-exact", 0.0, opts);
    let mut rng = c.rng();
    let random_sl2 = |rng: &mut ChaCha8Rng| -> GroupElement {
        loop {
            let a = BigRational::new(BigInt::from(rng.gen_range(-9..10)), BigInt::from(rng.gen_range(1..5)));
            let b = BigRational::new(BigInt::from(rng.gen_range(-9..10)), BigInt::from(rng.gen_range(1..5)));
            let cc = BigRational::new(BigInt::from(rng.gen_range(-9..10)), BigInt::from(rng.gen_range(1..5)));
            if a.is_zero() {
                continue;
            }
            let d = (BigRational::from_integer(1.into()) + &b * &cc) / &a;
            if let Ok(g) = GroupElement::new(a, b, cc, d) {
                return g;
            }
        }
    };
    for _ in 0..opts.trials.clamp(1, 100) {
        let g = random_sl2(&mut rng);
        let sigma = random_sl2(&mut rng);
        let z = RationalComplex::new(
            BigRational::new(BigInt::from(rng.gen_range(-20..20)), BigInt::from(rng.gen_range(1..9))),
            BigRational::new(BigInt::from(rng.gen_range(1..20)), BigInt::from(rng.gen_range(1..9))),
        );
        let inputs = json!({
            "g": g.entries().map(|x| x.to_string()),
            "sigma": sigma.entries().map(|x| x.to_string()),
            "z": [z.re.to_string(), z.im.to_string()],
        });
        let res = conjugation_check_exact(&g, &sigma, &z).map(|r| {
            if r.is_zero() {
                0.0
            } else {
                r.to_complex().abs_f64().max(f64::MIN_POSITIVE)
            }
        });
        c.record(inputs, res);
    }
    out.push(c.finish());

    let mut c = Check::new("spectra", "pell-d5", 1e-9, opts);
    let res = gen_pell(5).and_then(|s| {
        let cl = s
            .classes()
            .first()
            .ok_or_else(|| Error::InvariantViolation("no D=5 class".into()))?;
        let eps = (3.0 + 5f64.sqrt()) / 2.0;
        let h_err = if cl.multiplicity() == 1 && class_number(5) == 1 {
            0.0
        } else {
            1.0
        };
        Ok((cl.norm() - eps * eps).abs().max(h_err))
    });
    c.record(json!({"D": 5}), res);
    out.push(c.finish());

    let mut c = Check::new("spectra", "class-numbers", 0.0, opts);
    for d in (5..=100).filter(|&d| crate::spectra::pell::admissible(d)) {
        let h = class_number(d);
        let h2 = class_number_by_union_find(d);
        c.record(json!({"D": d, "h": h, "oracle": h2}), Ok((h as f64 - h2 as f64).abs()));
    }
    out.push(c.finish());

    let mut c = Check::new("spectra", "pell-units", 0.0, opts);
    for d in (5..=100).filter(|&d| crate::spectra::pell::admissible(d)) {
        let res = fundamental_solution(d).map(|(t, u)| match fundamental_solution_search(d, 100_000_000) {
            Some((bt, bu)) if BigInt::from(bt) == t && BigInt::from(bu) == u => 0.0,
            _ => 1.0,
        });
        c.record(json!({"D": d}), res);
    }
    out.push(c.finish());

    let mut c = Check::new("spectra", "round-trip", 0.0, opts);
    let mut rng = c.rng();
    for _ in 0..opts.trials.clamp(1, 20) {
        let seed = rng.gen::<u64>();
        let res = (|| {
            let spec = gen_synthetic(seed, 8, (1.5, 1e6), 3.0)?;
            let mut buf = Vec::new();
            write_spectrum(&spec, &mut buf)?;
            let back = parse_spectrum(buf.as_slice())?;
            let mut again = Vec::new();
            write_spectrum(&back, &mut again)?;
            Ok(if back == spec && again == buf { 0.0 } else { 1.0 })
        })();
        c.record(json!({"spectrum_seed": seed}), res);
    }
    out.push(c.finish());
    out
}
