//! Residue coefficients at the poles `s = 1/2 - j +/- i r` as rational functions of `r`.

use super::polys::coeff_c;
use crate::scalar::{Complex, Dd};
use crate::special::gamma::{bigint_to_dd, binomial};
use crate::{Error, Result};

const POLE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// Query for one pole family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidueQuery {
    pub k: u32,
    pub j: u32,
    pub sign: Sign,
    pub r: f64,
    pub l: u32,
    pub p: u32,
}

impl ResidueQuery {
    pub fn new(k: u32, j: u32, sign: Sign, r: f64) -> Self {
        ResidueQuery {
            k,
            j,
            sign,
            r,
            l: 0,
            p: 0,
        }
    }

    pub fn with_l(mut self, l: u32) -> Self {
        self.l = l;
        self
    }

    pub fn with_p(mut self, p: u32) -> Self {
        self.p = p;
        self
    }

    /// `x = +/- 2 i r`.
    fn x(&self) -> Complex {
        Complex::new(Dd::ZERO, Dd::from(2.0 * self.r * self.sign.value()))
    }

    fn validate(&self) -> Result<()> {
        if !(self.r > 0.0) || !self.r.is_finite() {
            return Err(Error::InvariantViolation(format!("r = {} must be positive", self.r)));
        }
        Ok(())
    }
}

/// `s_0 = 1/2 - j +/- i r`.
pub fn pole_location(q: &ResidueQuery) -> Complex {
    Complex::new(Dd::from(0.5 - q.j as f64), Dd::from(q.r * q.sign.value()))
}

fn falling_denominator(x: Complex, shift: i64, len: u32) -> Result<Complex> {
    let mut d = Complex::ONE;
    for m in 0..len as i64 {
        let f = x + (m - shift) as f64;
        if f.abs_f64() <= POLE_TOL {
            return Err(Error::PoleProximity(format!("factor x - {shift} + {m} vanishes")));
        }
        d *= f;
    }
    Ok(d)
}

/// `(-1)^j binom(l, j) / prod_{m=0}^{l} (x - j + m)`, `x = +/- 2ir`.
///
/// This is the residue of `Phi^[l]` at `s_0` for any `Phi` whose pole at
/// `1/2 +/- i r` has residue `1/x`.
pub fn residue_coeff_psi_l(q: &ResidueQuery) -> Result<Complex> {
    q.validate()?;
    if q.j > q.l {
        return Err(Error::IndexOutOfRange(format!("j = {} exceeds l = {}", q.j, q.l)));
    }
    let den = falling_denominator(q.x(), q.j as i64, q.l + 1)?;
    let mut num = bigint_to_dd(&binomial(q.l as i64, q.j as i64));
    if q.j % 2 == 1 {
        num = -num;
    }
    Ok(Complex::real(num) / den)
}

/// Full coefficient of the pole of `Xi` at `1/2 - j +/- i r`:
/// `4 (-1)^{k+j} sum_{h=max(0, j-2k+1)}^{j} (-1)^h binom(2k+h-3, h) binom(2k-1, j-h)
///  / prod_{m=0}^{2k-1} (x - j + h + m)`.
pub fn residue_coeff_xi(q: &ResidueQuery) -> Result<Complex> {
    q.validate()?;
    let k = q.k as i64;
    if k < 1 {
        return Err(Error::IndexOutOfRange("k must be at least 1".into()));
    }
    let j = q.j as i64;
    let p = 2 * k - 2;
    let x = q.x();
    let mut sum = Complex::ZERO;
    for h in (j - 2 * k + 1).max(0)..=j {
        let c = binomial(p + h - 1, h) * binomial(2 * k - 1, j - h);
        if c == 0.into() {
            continue;
        }
        let mut cd = bigint_to_dd(&c);
        if h % 2 == 1 {
            cd = -cd;
        }
        let den = falling_denominator(x, j - h, 2 * k as u32)?;
        sum += Complex::real(cd) / den;
    }
    let sign = if (k + j) % 2 == 0 { 4.0 } else { -4.0 };
    Ok(sum * sign)
}

/// The pole coefficient of `Xi` assembled from the `Psi^[2k-1]` coefficients through
/// the shift sum `Xi(s) = sum_h binom(p+h-1, h) Psi^[2k-1](s+h)`, `p = 2k-2`.
pub fn residue_coeff_xi_by_composition(q: &ResidueQuery) -> Result<Complex> {
    q.validate()?;
    let k = q.k as i64;
    let p = 2 * k - 2;
    let l = (2 * k - 1) as u32;
    let mut sum = Complex::ZERO;
    for h in 0..=q.j as i64 {
        let jj = q.j as i64 - h;
        if jj > l as i64 {
            continue;
        }
        let b = binomial(p + h - 1, h);
        if b == 0.into() {
            continue;
        }
        let sub = ResidueQuery { j: jj as u32, l, ..*q };
        sum += residue_coeff_psi_l(&sub)? * bigint_to_dd(&b);
    }
    let sign = if k % 2 == 0 { 4.0 } else { -4.0 };
    Ok(sum * sign)
}

/// `lim_{s -> s_0} (s - s_0) Phi^[l](s)` for the model
/// `Phi(s) = 1/((s - 1/2)^2 + r^2)` evaluated at `s_0 + delta`; a numeric-limit oracle.
pub fn model_residue_psi_l(q: &ResidueQuery, delta: f64) -> Result<Complex> {
    let s0 = pole_location(q);
    let s = s0 + delta;
    let r2 = Dd::from(q.r).sqr();
    let phi = |t: Complex| {
        let d = t - 0.5;
        (d * d + r2).recip()
    };
    let mut v = Complex::ZERO;
    for i in 0..=q.l {
        v += coeff_c(q.l, i, s)? * phi(s + i as f64);
    }
    Ok(v * delta)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn i2r(r: f64, sign: f64) -> Complex {
        Complex::from_f64(0.0, 2.0 * r * sign)
    }

    #[test]
    fn psi_l_examples() {
        let q = ResidueQuery::new(1, 0, Sign::Plus, 1.0).with_l(1);
        let x = i2r(1.0, 1.0);
        let v = residue_coeff_psi_l(&q).unwrap();
        assert!((v - (x * (x + 1.0)).recip()).abs_f64() < 1e-30);
        for sign in [Sign::Plus, Sign::Minus] {
            let q = ResidueQuery::new(1, 0, sign, 2.5).with_l(0);
            let v = residue_coeff_psi_l(&q).unwrap();
            assert!((v - i2r(2.5, sign.value()).recip()).abs_f64() < 1e-30);
        }
    }

    #[test]
    fn xi_k1_reduction() {
        for r in [0.5, 1.0, 14.134725] {
            for sign in [Sign::Plus, Sign::Minus] {
                let x = i2r(r, sign.value());
                for j in 0..2u32 {
                    let v = residue_coeff_xi(&ResidueQuery::new(1, j, sign, r)).unwrap();
                    let jf = j as f64;
                    let pm = if j % 2 == 0 { -4.0 } else { 4.0 };
                    let expect = Complex::from(pm) / ((x - jf) * (x - jf + 1.0));
                    assert!((v - expect).abs_f64() < 1e-13 * expect.abs_f64(), "{r} {j}");
                }
                let v = residue_coeff_xi(&ResidueQuery::new(1, 2, sign, r)).unwrap();
                assert!(v.is_zero());
            }
        }
    }

    #[test]
    fn composition_matches_closed_sum() {
        for k in 1..=3 {
            for j in 0..=6 {
                let q = ResidueQuery::new(k, j, Sign::Plus, 1.3);
                let a = residue_coeff_xi(&q).unwrap();
                let b = residue_coeff_xi_by_composition(&q).unwrap();
                assert!((a - b).abs_f64() < 1e-11 * (1.0 + a.abs_f64()), "{k} {j} {a} {b}");
            }
        }
    }

    #[test]
    fn numeric_limit_oracle() {
        for l in 0..4 {
            for j in 0..=l {
                let q = ResidueQuery::new(1, j, Sign::Minus, 0.8).with_l(l);
                let exact = residue_coeff_psi_l(&q).unwrap();
                let lim = model_residue_psi_l(&q, 1e-12).unwrap();
                assert!((exact - lim).abs_f64() < 1e-9 * (1.0 + exact.abs_f64()), "{l} {j}");
            }
        }
    }
}
