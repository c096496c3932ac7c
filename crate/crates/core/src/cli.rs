//! The `selberg-periods` command line.

use crate::config::SeriesConfig;
use crate::scalar::Complex;
use crate::selberg_local::{pole_location, residue_coeff_psi_l, residue_coeff_xi, ResidueQuery, Sign};
use crate::series::{
    eval_psi, eval_psi_l_coefficients, eval_psi_l_direct, eval_psi_l_recursive, eval_psi_sum_p, eval_psi_sum_p_shifted,
    eval_xi, SeriesValue,
};
use crate::spectra::{gen_pell, gen_synthetic, load_spectrum, save_spectrum, write_spectrum, LengthSpectrum};
use crate::verify::{run_suite, Suite, VerifyOptions};
use crate::{Error, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "selberg-periods",
    version,
    about = "Selberg-type Dirichlet series over length spectra"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a series at one or more points.
    Eval(EvalArgs),
    /// Run a verification suite and print one JSON report per check.
    Verify(VerifyArgs),
    /// Write a generated spectrum as JSON Lines.
    GenSpectrum(GenArgs),
    /// Residue coefficient at the pole 1/2 - j +/- i r.
    ResidueCoeffs(ResidueArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Series {
    Xi,
    Psi,
    PsiL,
    PsiSumP,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Direct formula (psi-l) or single-rank closed form (psi-sum-p).
    Direct,
    /// Difference recursion (psi-l only).
    Recursive,
    /// Coefficient sum over shifted Psi (psi-l only).
    Coefficients,
    /// Binomial shift sum (psi-sum-p only).
    Shift,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(value_enum)]
    pub series: Series,
    #[arg(long)]
    pub spectrum: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    /// Point `re`, `re+imi` or `re-imi`; repeatable.
    #[arg(long = "s", allow_hyphen_values = true)]
    pub s: Vec<String>,
    /// `re0:re1:step,im0:im1:step`, endpoints inclusive.
    #[arg(long)]
    pub s_grid: Option<String>,
    #[arg(long)]
    pub l: Option<u32>,
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long, value_enum, default_value = "direct")]
    pub method: Method,
    #[arg(long, default_value_t = 1e-12)]
    pub eps: f64,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[arg(long, default_value_t = 3)]
    pub k_max: u32,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Pell,
    Synthetic,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(value_enum)]
    pub kind: Kind,
    #[arg(long)]
    pub dmax: Option<i64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub count: Option<usize>,
    #[arg(long, default_value_t = 2.0)]
    pub norm_min: f64,
    #[arg(long, default_value_t = 100.0)]
    pub norm_max: f64,
    #[arg(long, default_value_t = 1.0)]
    pub weight_scale: f64,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ResidueArgs {
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    #[arg(long)]
    pub j: u32,
    /// Coefficient of `Psi^[l]` instead of `Xi`.
    #[arg(long)]
    pub l: Option<u32>,
    /// Only `p = 2k - 2`, where the family is `Xi`.
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub r: f64,
    #[arg(long, default_value = "+", allow_hyphen_values = true)]
    pub sign: String,
}

/// Parses `re`, `re+imi`, `re-imi`, `imi`.
pub fn parse_complex(text: &str) -> Result<Complex> {
    let bad = || Error::Parse {
        line: 0,
        reason: format!("cannot read complex number {text:?}"),
    };
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(bad());
    }
    let num = |x: &str| x.parse::<f64>().ok().filter(|v| v.is_finite());
    let Some(body) = t.strip_suffix('i') else {
        return num(&t).map(Complex::from).ok_or_else(bad);
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(i) => (num(&body[..i]).ok_or_else(bad)?, &body[i..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => num(x).ok_or_else(bad)?,
    };
    Ok(Complex::from_f64(re, im))
}

fn parse_range(text: &str) -> Result<Vec<f64>> {
    let bad = |why: &str| Error::Parse {
        line: 0,
        reason: format!("grid range {text:?}: {why}"),
    };
    let parts: Vec<f64> = text
        .split(':')
        .map(|x| x.trim().parse::<f64>().map_err(|_| bad("not a number")))
        .collect::<Result<_>>()?;
    match parts[..] {
        [a] => Ok(vec![a]),
        [a, b, step] => {
            if !(step > 0.0) || !(b >= a) {
                return Err(bad("needs start <= end and step > 0"));
            }
            let n = ((b - a) / step + 1e-9).floor() as usize + 1;
            if n > 1_000_000 {
                return Err(bad("too many points"));
            }
            Ok((0..n).map(|i| a + i as f64 * step).collect())
        }
        _ => Err(bad("expected start:end:step")),
    }
}

/// `re0:re1:step,im0:im1:step`; the imaginary part defaults to 0.
pub fn parse_grid(text: &str) -> Result<Vec<Complex>> {
    let (re, im) = text.split_once(',').unwrap_or((text, "0"));
    let re = parse_range(re)?;
    let im = parse_range(im)?;
    Ok(re
        .iter()
        .flat_map(|&x| im.iter().map(move |&y| Complex::from_f64(x, y)))
        .collect())
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvariantViolation(msg.into())
}

fn eval_one(a: &EvalArgs, spec: &LengthSpectrum, s: Complex, cfg: &SeriesConfig) -> Result<SeriesValue> {
    match (a.series, a.method) {
        (Series::Xi, Method::Direct) => eval_xi(spec, s, cfg),
        (Series::Psi, Method::Direct) => eval_psi(spec, s, cfg),
        (Series::PsiL, m) => {
            let l = a.l.ok_or_else(|| usage("psi-l needs --l"))?;
            match m {
                Method::Direct => eval_psi_l_direct(spec, l, s, cfg),
                Method::Recursive => eval_psi_l_recursive(spec, l, s, cfg),
                Method::Coefficients => eval_psi_l_coefficients(spec, l, s, cfg),
                Method::Shift => Err(usage("--method shift applies to psi-sum-p")),
            }
        }
        (Series::PsiSumP, m) => {
            let p = a.p.ok_or_else(|| usage("psi-sum-p needs --p"))?;
            match m {
                Method::Direct => eval_psi_sum_p(spec, p, s, cfg),
                Method::Shift => eval_psi_sum_p_shifted(spec, p, s, cfg),
                _ => Err(usage("psi-sum-p takes --method direct or shift")),
            }
        }
        (_, m) => Err(usage(format!("--method {m:?} does not apply to this series"))),
    }
}

fn cmd_eval(a: &EvalArgs, out: &mut dyn Write) -> Result<i32> {
    let cfg = SeriesConfig {
        k: a.k,
        eps: a.eps,
        threads: a.threads,
        ..SeriesConfig::default()
    };
    cfg.validate()?;
    let mut points = a.s.iter().map(|s| parse_complex(s)).collect::<Result<Vec<_>>>()?;
    if let Some(g) = &a.s_grid {
        points.extend(parse_grid(g)?);
    }
    if points.is_empty() {
        return Err(usage("give at least one --s or --s-grid"));
    }
    let spec = load_spectrum(&a.spectrum)?;
    if a.format == Format::Csv {
        writeln!(out, "s_re,s_im,value_re,value_im,truncation_bound,terms_used")?;
    }
    for s in points {
        let v = eval_one(a, &spec, s, &cfg)?;
        let (sr, si) = s.to_f64();
        let (vr, vi) = v.value.to_f64();
        match a.format {
            Format::Json => {
                let rec = json!({
                    "s": [sr, si],
                    "value_re": vr,
                    "value_im": vi,
                    "truncation_bound": v.truncation_bound,
                    "terms_used": v.terms_used,
                });
                writeln!(out, "{rec}")?;
            }
            Format::Csv => writeln!(
                out,
                "{sr:?},{si:?},{vr:?},{vi:?},{:?},{}",
                v.truncation_bound, v.terms_used
            )?,
        }
    }
    Ok(EXIT_OK)
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let suite: Suite = a.suite.parse()?;
    if a.k_max < 1 {
        return Err(usage("--k-max must be at least 1"));
    }
    let opts = VerifyOptions {
        seed: a.seed,
        trials: a.trials,
        tolerance: a.tolerance,
        k_max: a.k_max,
        series: SeriesConfig {
            threads: a.threads,
            ..SeriesConfig::default()
        },
    };
    let reports = run_suite(suite, &opts);
    let mut failed = 0;
    for r in &reports {
        writeln!(out, "{}", r.to_json_line())?;
        if !r.pass {
            failed += 1;
            let m = r.max_residual.map_or("error".to_string(), |m| format!("{m:e}"));
            writeln!(
                err,
                "FAIL {}/{}: max residual {m}, tolerance {:e}",
                r.suite, r.check, r.tolerance
            )?;
        }
    }
    writeln!(err, "{} of {} checks passed", reports.len() - failed, reports.len())?;
    Ok(if failed == 0 { EXIT_OK } else { EXIT_VERIFY_FAIL })
}

fn cmd_gen(a: &GenArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let spec = match a.kind {
        Kind::Pell => {
            let d = a.dmax.ok_or_else(|| usage("pell needs --dmax"))?;
            gen_pell(d)?
        }
        Kind::Synthetic => {
            let seed = a.seed.ok_or_else(|| usage("synthetic needs --seed"))?;
            let count = a.count.ok_or_else(|| usage("synthetic needs --count"))?;
            gen_synthetic(seed, count, (a.norm_min, a.norm_max), a.weight_scale)?
        }
    };
    if spec.is_empty() {
        writeln!(err, "warning: the generated spectrum is empty")?;
    }
    let (lo, hi) = spec.norm_range().map_or((None, None), |(a, b)| (Some(a), Some(b)));
    let summary = json!({"classes": spec.len(), "norm_min": lo, "norm_max": hi});
    match &a.out {
        Some(path) => {
            save_spectrum(&spec, path)?;
            writeln!(out, "{summary}")?;
        }
        None => {
            write_spectrum(&spec, &mut *out)?;
            writeln!(err, "{summary}")?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_residue(a: &ResidueArgs, out: &mut dyn Write) -> Result<i32> {
    let sign = match a.sign.as_str() {
        "+" | "plus" | "+1" | "1" => Sign::Plus,
        "-" | "minus" | "-1" => Sign::Minus,
        other => return Err(usage(format!("--sign must be + or -, got {other}"))),
    };
    if a.k < 1 {
        return Err(usage("--k must be at least 1"));
    }
    let q = ResidueQuery::new(a.k, a.j, sign, a.r);
    let (family, v) = match (a.l, a.p) {
        (Some(_), Some(_)) => return Err(usage("give at most one of --l and --p")),
        (Some(l), None) => ("psi-l", residue_coeff_psi_l(&q.with_l(l))?),
        (None, p) => {
            if p.is_some_and(|p| p != 2 * a.k - 2) {
                return Err(usage("closed residue coefficients are available for p = 2k - 2 only"));
            }
            ("xi", residue_coeff_xi(&q)?)
        }
    };
    let (re, im) = v.to_f64();
    let (pr, pi) = pole_location(&q).to_f64();
    let rec = json!({
        "family": family,
        "k": a.k,
        "j": a.j,
        "l": a.l,
        "sign": if sign == Sign::Plus { "+" } else { "-" },
        "r": a.r,
        "coeff_re": re,
        "coeff_im": im,
        "pole": [pr, pi],
    });
    writeln!(out, "{rec}")?;
    Ok(EXIT_OK)
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
            return code;
        }
    };
    let res = match &cli.command {
        Command::Eval(a) => cmd_eval(a, out),
        Command::Verify(a) => cmd_verify(a, out, err),
        Command::GenSpectrum(a) => cmd_gen(a, out, err),
        Command::ResidueCoeffs(a) => cmd_residue(a, out),
    };
    match res {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
