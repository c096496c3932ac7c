//! Acceptance criteria, one line each. Exits non-zero if any criterion fails.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use selberg_periods::kernels::{apply_dk, f_kernel, hyp_lemma_residual, j_integral_closed, j_integral_quadrature};
use selberg_periods::selberg_local::{
    local_logderiv, local_logderiv_binomial, poly_p, poly_p_coefficients, poly_p_gamma_form, residue_coeff_xi,
    residue_coeff_xi_by_composition, LocalZetaQuery, ResidueQuery, Sign,
};
use selberg_periods::series::{
    eval_psi, eval_psi_l_coefficients, eval_psi_l_direct, eval_psi_l_recursive, eval_psi_sum_p, eval_psi_sum_p_shifted,
    eval_xi, majorant_bound,
};
use selberg_periods::special::{
    contiguous_relation_residual, hyp2f1, linear_transform_residual, quadratic_transform_residual, HypParams,
};
use selberg_periods::spectra::pell::class_number_by_union_find;
use selberg_periods::spectra::{
    class_number, conjugation_check_exact, gen_pell, gen_synthetic, GroupElement, RationalComplex,
};
use selberg_periods::verify::{run_suite, Suite, VerifyOptions};
use selberg_periods::{Complex, Dd, Result, SeriesConfig};
use std::time::Instant;

const SEED: u64 = 20_240_601;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn rel(a: Complex, b: Complex) -> f64 {
    (a - b).abs_f64() / b.abs_f64().max(1.0)
}

fn draw_s(rng: &mut ChaCha8Rng, lo: f64, hi: f64, im: f64) -> Complex {
    Complex::from_f64(rng.gen_range(lo..hi), rng.gen_range(-im..im))
}

/// Tracks the worst residual; an evaluation error counts as an infinite residual.
#[derive(Default)]
struct Worst {
    max: f64,
    errors: usize,
    n: usize,
}

impl Worst {
    fn add(&mut self, r: Result<f64>) {
        self.n += 1;
        match r {
            Ok(v) if v.is_finite() => self.max = self.max.max(v),
            _ => self.errors += 1,
        }
    }

    fn ok(&self, tol: f64) -> bool {
        self.errors == 0 && self.max <= tol
    }

    fn show(&self) -> String {
        if self.errors > 0 {
            format!("{} cases, {} errors", self.n, self.errors)
        } else {
            format!("{} cases, max {:.2e}", self.n, self.max)
        }
    }
}

fn c1_hypergeometric() -> Outcome {
    let t0 = Instant::now();
    let cfg = SeriesConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let (mut cont, mut quad, mut lin) = (Worst::default(), Worst::default(), Worst::default());
    for _ in 0..200 {
        let k = rng.gen_range(1..=3u32);
        let s = draw_s(&mut rng, 1.1, 5.0, 2.0);
        let n: f64 = rng.gen_range(2.0..100.0);
        let kf = k as f64;
        let a = s + kf;
        let z = Complex::from(1.0 / n);
        cont.add((|| {
            let scale = hyp2f1(&HypParams::new(a, a, s * 2.0, z), &cfg)?.abs_f64() * a.abs_f64();
            Ok(contiguous_relation_residual(a, a, s * 2.0, z, &cfg)?.abs_f64() / scale.max(1.0))
        })());
        quad.add((|| {
            let z1 = Dd::from(4.0 * n) / (Dd::from(n) + 1.0).sqr();
            let lhs = hyp2f1(
                &HypParams::new(s + (kf - 0.5), s + kf, s * 2.0, Complex::real(z1)),
                &cfg,
            )?;
            Ok(quadratic_transform_residual(s, k, n, &cfg)?.abs_f64() / lhs.abs_f64().max(1.0))
        })());
        lin.add((|| {
            let lhs = hyp2f1(
                &HypParams::new(s * 2.0 + (2.0 * kf - 1.0), Complex::from(2.0 * kf), s * 2.0, z),
                &cfg,
            )?;
            Ok(linear_transform_residual(s, k, n, &cfg)?.abs_f64() / lhs.abs_f64().max(1.0))
        })());
    }
    let secs = t0.elapsed().as_secs_f64();
    Outcome {
        pass: cont.ok(1e-10) && quad.ok(1e-10) && lin.ok(1e-10) && secs < 30.0,
        detail: format!(
            "contiguous {}; quadratic {}; linear {}; tol 1e-10; {secs:.2}s (limit 30s)",
            cont.show(),
            quad.show(),
            lin.show()
        ),
    }
}

fn c2_kernel() -> Outcome {
    let cfg = SeriesConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let (mut ind, mut lem) = (Worst::default(), Worst::default());
    for _ in 0..200 {
        let k = rng.gen_range(1..=4u32);
        let s = draw_s(&mut rng, 1.1, 5.0, 2.0);
        let r: f64 = rng.gen_range(0.01..0.95);
        ind.add((|| Ok(rel(apply_dk(k, s, r, &cfg)?, f_kernel(k + 1, s, r, &cfg)?)))());
        lem.add((|| {
            let a = s + k as f64;
            let scale = hyp2f1(&HypParams::new(a + 1.0, a + 1.0, s * 2.0, Complex::from(r)), &cfg)?.abs_f64()
                * (a * a).abs_f64()
                * (1.0 - r).powi(2);
            Ok(hyp_lemma_residual(k, s, r, &cfg)?.abs_f64() / scale.max(1.0))
        })());
    }
    Outcome {
        pass: ind.ok(1e-9) && lem.ok(1e-10),
        detail: format!(
            "D_k f_k = f_(k+1): {} (tol 1e-9); lemma: {} (tol 1e-10)",
            ind.show(),
            lem.show()
        ),
    }
}

fn c3_j_integral() -> Outcome {
    let t0 = Instant::now();
    let cfg = SeriesConfig::default();
    let mut grid = Worst::default();
    for k in 1..=3u32 {
        for s in [Complex::from(1.5), Complex::from(2.4), Complex::from_f64(3.0, 0.5)] {
            for n in [2.0, 6.8541, 50.0] {
                grid.add((|| {
                    Ok(rel(j_integral_quadrature(k, s, n, &cfg)?, j_integral_closed(k, s, n)?))
                })());
            }
        }
    }
    let s = Complex::from(2.0);
    let hand = (|| -> Result<(f64, f64)> {
        let cl = j_integral_closed(1, s, 4.0)?;
        let q = j_integral_quadrature(1, s, 4.0, &cfg)?;
        let target = Complex::from(-7.0 / 32.0);
        Ok(((cl - target).abs_f64(), (q - target).abs_f64()))
    })();
    let secs = t0.elapsed().as_secs_f64();
    let (hand_ok, hand_txt) = match hand {
        Ok((a, b)) => (
            a <= 1e-12 && b <= 1e-12,
            format!("closed {a:.1e}, quadrature {b:.1e} from -7/32"),
        ),
        Err(e) => (false, e.to_string()),
    };
    Outcome {
        pass: grid.ok(1e-9) && hand_ok && secs < 60.0,
        detail: format!(
            "3x3x3 grid closed vs quadrature {} (tol 1e-9); hand value |J(1,2,4)| = 7/32 with sign from the integral: {hand_txt}; {secs:.2}s",
            grid.show()
        ),
    }
}

fn c4_local() -> Outcome {
    let eps = 1e-12;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    let (mut dual, mut tele) = (Worst::default(), Worst::default());
    for _ in 0..100 {
        let s = draw_s(&mut rng, 1.1, 5.0, 3.0);
        let n: f64 = rng.gen_range(2.0..100.0);
        for j in 1..=4 {
            let q = LocalZetaQuery::new(j, n, s);
            dual.add((|| {
                Ok(rel(local_logderiv_binomial(&q, eps)?, local_logderiv(&q, eps)?))
            })());
        }
        for j in -2..=6 {
            let f = |j, s| local_logderiv(&LocalZetaQuery::new(j, n, s), eps);
            tele.add((|| Ok(rel(f(j, s)? - f(j, s + 1.0)?, f(j - 1, s)?)))());
        }
    }
    Outcome {
        pass: dual.ok(1e-12) && tele.ok(1e-12),
        detail: format!(
            "dual formulas j<=4: {}; telescoping j in -2..6: {}; tol 1e-12",
            dual.show(),
            tele.show()
        ),
    }
}

fn c5_polynomials() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    let mut w = Worst::default();
    for _ in 0..200 {
        let k = rng.gen_range(1..=3u32);
        let j = rng.gen_range(1..=2 * k);
        let s = draw_s(&mut rng, 1.1, 5.0, 3.0);
        w.add((|| Ok(rel(poly_p_gamma_form(k, j, s)?, poly_p(k, j, s)?)))());
    }
    let as_i64 = |v: Vec<BigInt>| v.iter().map(|x| x.to_i64().unwrap()).collect::<Vec<_>>();
    // In the variable 2s: p_1 = 2s - 2, p_2 = 2.
    let spec_ok = as_i64(poly_p_coefficients(1, 1).unwrap()) == vec![-2, 1]
        && as_i64(poly_p_coefficients(1, 2).unwrap()) == vec![2];
    Outcome {
        pass: w.ok(1e-12) && spec_ok,
        detail: format!(
            "product vs Gamma form {} (tol 1e-12); k=1 gives {{2s-2, 2}}: {spec_ok}",
            w.show()
        ),
    }
}

fn c6_three_way() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 6);
    let mut w = Worst::default();
    for k in 1..=3u32 {
        let cfg = SeriesConfig::with_k(k);
        for trial in 0..10 {
            let spec = gen_synthetic(SEED + 100 * k as u64 + trial, 5, (3.0, 100.0), 1.0).unwrap();
            let s = draw_s(&mut rng, 1.1, 4.0, 3.0);
            for l in 0..2 * k {
                w.add((|| {
                    let d = eval_psi_l_direct(&spec, l, s, &cfg)?.value;
                    let r = eval_psi_l_recursive(&spec, l, s, &cfg)?.value;
                    let c = eval_psi_l_coefficients(&spec, l, s, &cfg)?.value;
                    Ok(rel(r, d).max(rel(c, d)))
                })());
            }
        }
    }
    Outcome {
        pass: w.ok(1e-10),
        detail: format!("direct, recursive, coefficient paths: {} (tol 1e-10)", w.show()),
    }
}

fn c7_xi_pipeline() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 7);
    let (mut closed, mut shifted, mut k1) = (Worst::default(), Worst::default(), Worst::default());
    for k in 1..=3u32 {
        let cfg = SeriesConfig::with_k(k);
        for trial in 0..10 {
            let spec = gen_synthetic(SEED + 1000 * k as u64 + trial, 5, (3.0, 100.0), 1.0).unwrap();
            let s = draw_s(&mut rng, 1.1, 4.0, 3.0);
            let xi = eval_xi(&spec, s, &cfg).map(|v| v.value);
            closed.add((|| {
                Ok(rel(eval_psi_sum_p(&spec, 2 * k - 2, s, &cfg)?.value, xi.clone()?))
            })());
            shifted.add((|| {
                Ok(rel(
                    eval_psi_sum_p_shifted(&spec, 2 * k - 2, s, &cfg)?.value,
                    xi.clone()?,
                ))
            })());
            if k == 1 {
                k1.add((|| Ok(rel(eval_psi_l_direct(&spec, 1, s, &cfg)?.value, xi.clone()?)))());
            }
        }
    }
    Outcome {
        pass: closed.ok(1e-9) && shifted.ok(1e-9) && k1.ok(1e-12),
        detail: format!(
            "Xi vs Psi^[2k-1,2k-2] closed {} and shift sum {} (tol 1e-9); k=1 Xi vs Psi^[1] {} (tol 1e-12)",
            closed.show(),
            shifted.show(),
            k1.show()
        ),
    }
}

fn c8_residues() -> Outcome {
    let mut red = Worst::default();
    for r in [0.5, 1.0, 14.134725] {
        for sign in [Sign::Plus, Sign::Minus] {
            let x = Complex::from_f64(0.0, 2.0 * r * sign.value());
            for j in 0..2u32 {
                let jf = j as f64;
                let pm = if j == 0 { -4.0 } else { 4.0 };
                let want = Complex::from(pm) / ((x - jf) * (x - jf + 1.0));
                red.add(
                    residue_coeff_xi(&ResidueQuery::new(1, j, sign, r)).map(|v| (v - want).abs_f64() / want.abs_f64()),
                );
            }
        }
    }
    let mut comp = Worst::default();
    for k in 1..=3 {
        for j in 0..=6 {
            for (sign, r) in [(Sign::Plus, 0.7), (Sign::Minus, 3.1)] {
                let q = ResidueQuery::new(k, j, sign, r);
                comp.add((|| {
                    Ok(rel(residue_coeff_xi_by_composition(&q)?, residue_coeff_xi(&q)?))
                })());
            }
        }
    }
    Outcome {
        pass: red.ok(1e-13) && comp.ok(1e-11),
        detail: format!(
            "k=1 reduction {} (tol 1e-13); composition k<=3, j<=6 {} (tol 1e-11)",
            red.show(),
            comp.show()
        ),
    }
}

fn c9_majorant() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 9);
    let mut violations = 0;
    let mut errors = 0;
    let mut tightest: f64 = 0.0;
    for i in 0..200u64 {
        let k = rng.gen_range(1..=3u32);
        let cfg = SeriesConfig::with_k(k);
        let s = draw_s(&mut rng, 1.1, 4.0, 5.0);
        let scale = 2f64.powi(2 - 4 * k as i32);
        let res = (|| -> Result<(f64, f64)> {
            let spec = gen_synthetic(SEED + i, 5, (2.0, 100.0), scale)?;
            Ok((
                eval_psi(&spec, s, &cfg)?.value.abs_f64(),
                majorant_bound(&spec, s, 1.0, &cfg)?,
            ))
        })();
        match res {
            Ok((psi, b)) => {
                if psi > b * (1.0 + 1e-12) {
                    violations += 1;
                }
                if b > 0.0 {
                    tightest = tightest.max(psi / b);
                }
            }
            Err(_) => errors += 1,
        }
    }
    Outcome {
        pass: violations == 0 && errors == 0,
        detail: format!("200 spectra, {violations} violations, {errors} errors, largest |Psi|/bound {tightest:.3}"),
    }
}

fn c10_conjugation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 10);
    let mut q =
        |lo: i64, hi: i64| BigRational::new(BigInt::from(rng.gen_range(lo..hi)), BigInt::from(rng.gen_range(1..6)));
    let mut elems = Vec::new();
    while elems.len() < 200 {
        let (a, b, c) = (q(-8, 9), q(-8, 9), q(-8, 9));
        if a.is_zero() {
            continue;
        }
        let d = (BigRational::from_integer(1.into()) + &b * &c) / &a;
        elems.push(GroupElement::new(a, b, c, d).unwrap());
    }
    let mut nonzero = 0;
    let mut errors = 0;
    for i in 0..100 {
        let z = RationalComplex::new(q(-15, 15), q(1, 15));
        match conjugation_check_exact(&elems[2 * i], &elems[2 * i + 1], &z) {
            Ok(r) if r.is_zero() => {}
            Ok(_) => nonzero += 1,
            Err(_) => errors += 1,
        }
    }
    Outcome {
        pass: nonzero == 0 && errors == 0,
        detail: format!("100 exact rational cases, {nonzero} non-zero residuals, {errors} errors"),
    }
}

fn c11_pell() -> Outcome {
    let eps = (3.0 + 5f64.sqrt()) / 2.0;
    let spec = gen_pell(100).unwrap();
    let d5 = spec.classes().iter().find(|c| c.label() == Some("D=5")).unwrap();
    let n_err = (d5.norm() - eps * eps).abs();
    let mut mismatched = Vec::new();
    let mut count = 0;
    for d in 5..=100i64 {
        if !selberg_periods::spectra::pell::admissible(d) {
            continue;
        }
        count += 1;
        if class_number(d) != class_number_by_union_find(d) {
            mismatched.push(d);
        }
    }
    Outcome {
        pass: n_err <= 1e-9 && class_number(5) == 1 && d5.multiplicity() == 1 && mismatched.is_empty(),
        detail: format!(
            "D=5 norm error {n_err:.1e}, h(5) = {}; {count} discriminants vs form-class oracle, mismatches {mismatched:?}",
            class_number(5)
        ),
    }
}

fn c12_determinism() -> Outcome {
    let opts = VerifyOptions::default();
    let t0 = Instant::now();
    let a: Vec<String> = run_suite(Suite::All, &opts).iter().map(|r| r.to_json_line()).collect();
    let secs = t0.elapsed().as_secs_f64();
    let b: Vec<String> = run_suite(Suite::All, &opts).iter().map(|r| r.to_json_line()).collect();
    let all_pass = a.iter().all(|l| l.contains("\"pass\":true"));
    Outcome {
        pass: a == b && secs < 300.0 && all_pass,
        detail: format!(
            "{} reports, all pass: {all_pass}, rerun byte-identical: {}, first run {secs:.2}s (limit 300s)",
            a.len(),
            a == b
        ),
    }
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("hypergeometric identities", c1_hypergeometric),
        ("kernel induction", c2_kernel),
        ("J-integral", c3_j_integral),
        ("local zeta dual formulas", c4_local),
        ("polynomial identity", c5_polynomials),
        ("Psi^[l] three-way agreement", c6_three_way),
        ("Xi pipeline", c7_xi_pipeline),
        ("residue coefficients", c8_residues),
        ("majorant", c9_majorant),
        ("conjugation lemma", c10_conjugation),
        ("Pell generator", c11_pell),
        ("verify determinism", c12_determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {:<28} {}  {}",
            i + 1,
            name,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
