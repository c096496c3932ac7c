//! The polynomials `p_j`, `p_j^[l]` and the rational coefficients `c_j^[l]`.

use crate::scalar::Complex;
use crate::special::gamma::{bigint_to_dd, binomial, factorial, pochhammer};
use crate::special::identities::gamma_ratio_product;
use crate::{Error, Result};
use num_bigint::BigInt;

const POLE_TOL: f64 = 1e-10;

fn constant_factor(k: u32, l: u32, j: u32) -> BigInt {
    let (k, l, j) = (k as i64, l as i64, j as i64);
    factorial((j - 1) as u64) * binomial(2 * k - 1 - l, j - 1) * binomial(2 * k + j - 2 - l, j - 1)
}

/// `p_j^[l](s) = (j-1)! binom(2k-1-l, j-1) binom(2k+j-2-l, j-1) prod_{i=j+1}^{2k-l} (2s+l-i)`.
pub fn poly_p_l(k: u32, l: u32, j: u32, s: Complex) -> Result<Complex> {
    if k < 1 || l > 2 * k - 1 || j < 1 || j > 2 * k - l {
        return Err(Error::IndexOutOfRange(format!(
            "p_j^[l] needs 0 <= l <= 2k-1 and 1 <= j <= 2k-l, got k={k}, l={l}, j={j}"
        )));
    }
    let two_s = s * 2.0 + l as f64;
    let mut p = Complex::real(bigint_to_dd(&constant_factor(k, l, j)));
    for i in (j + 1)..=(2 * k - l) {
        p *= two_s - i as f64;
    }
    Ok(p)
}

/// `p_j(s) = (j-1)! binom(2k-1, j-1) binom(2k+j-2, j-1) prod_{i=j+1}^{2k} (2s-i)`.
pub fn poly_p(k: u32, j: u32, s: Complex) -> Result<Complex> {
    if k < 1 || j < 1 || j > 2 * k {
        return Err(Error::IndexOutOfRange(format!(
            "p_j needs 1 <= j <= 2k, got k={k}, j={j}"
        )));
    }
    poly_p_l(k, 0, j, s)
}

/// Integer coefficients of `p_j` in the variable `2s`, lowest degree first.
pub fn poly_p_coefficients(k: u32, j: u32) -> Result<Vec<BigInt>> {
    if k < 1 || j < 1 || j > 2 * k {
        return Err(Error::IndexOutOfRange(format!(
            "p_j needs 1 <= j <= 2k, got k={k}, j={j}"
        )));
    }
    let mut coeffs = vec![constant_factor(k, 0, j)];
    for i in (j + 1)..=(2 * k) {
        let mut next = vec![BigInt::from(0); coeffs.len() + 1];
        for (d, c) in coeffs.iter().enumerate() {
            next[d + 1] += c;
            next[d] -= c * BigInt::from(i);
        }
        coeffs = next;
    }
    Ok(coeffs)
}

/// `p_j` through the Gamma-ratio form
/// `Gamma(2s-1)/Gamma(2s-2k) (1-2k)_{j-1} (2k)_{j-1} / ((j-1)! (2-2s)_{j-1})`.
pub fn poly_p_gamma_form(k: u32, j: u32, s: Complex) -> Result<Complex> {
    if k < 1 || j < 1 || j > 2 * k {
        return Err(Error::IndexOutOfRange(format!(
            "p_j needs 1 <= j <= 2k, got k={k}, j={j}"
        )));
    }
    let two_s = s * 2.0;
    for i in 2..=j {
        if (two_s - i as f64).abs_f64() <= POLE_TOL {
            return Err(Error::RemovableSingularity(format!("2s = {i}")));
        }
    }
    let kf = k as f64;
    let n = (j - 1) as usize;
    let num = pochhammer(Complex::from(1.0 - 2.0 * kf), n) * pochhammer(Complex::from(2.0 * kf), n);
    let den = pochhammer(Complex::from(2.0) - two_s, n) * bigint_to_dd(&factorial(n as u64));
    Ok(gamma_ratio_product(s, k) * num / den)
}

/// `c_j^[l](s) = (-1)^j binom(l, j) / prod_{i=0, i != j}^{l} (2s+j-1+i)`.
pub fn coeff_c(l: u32, j: u32, s: Complex) -> Result<Complex> {
    if j > l {
        return Err(Error::IndexOutOfRange(format!(
            "c_j^[l] needs j <= l, got l={l}, j={j}"
        )));
    }
    let two_s = s * 2.0;
    let scale = two_s.abs_f64() + 1.0;
    let mut den = Complex::ONE;
    for i in 0..=l {
        if i == j {
            continue;
        }
        let f = two_s + (j as f64 - 1.0 + i as f64);
        if f.abs_f64() <= POLE_TOL * scale {
            return Err(Error::PoleProximity(format!(
                "2s + {} vanishes",
                j as i64 - 1 + i as i64
            )));
        }
        den *= f;
    }
    let mut num = bigint_to_dd(&binomial(l as i64, j as i64));
    if j % 2 == 1 {
        num = -num;
    }
    Ok(Complex::real(num) / den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::from_f64(re, im)
    }

    #[test]
    fn k1_specializations() {
        let s = c(1.37, -0.2);
        assert_eq!(poly_p(1, 1, s).unwrap(), s * 2.0 - 2.0);
        assert_eq!(poly_p(1, 2, s).unwrap(), Complex::from(2.0));
        assert_eq!(
            poly_p_coefficients(1, 1).unwrap(),
            vec![BigInt::from(-2), BigInt::from(1)]
        );
        assert_eq!(poly_p_coefficients(1, 2).unwrap(), vec![BigInt::from(2)]);
    }

    #[test]
    fn k2_products() {
        let s = c(2.7, 0.0);
        let t = s * 2.0;
        let expect = (t - 2.0) * (t - 3.0) * (t - 4.0);
        assert!((poly_p(2, 1, s).unwrap() - expect).abs_f64() < 1e-28);
        // p_4 for k = 2 is 3! binom(3,3) binom(6,3) = 120.
        assert_eq!(poly_p(2, 4, s).unwrap(), Complex::from(120.0));
        assert!(poly_p(2, 5, s).is_err());
    }

    #[test]
    fn gamma_form_agrees() {
        let v = poly_p_gamma_form(1, 2, c(3.0, 0.0)).unwrap();
        assert!((v - Complex::from(2.0)).abs_f64() < 1e-30);
        let s = c(2.7, 0.0);
        let d = poly_p_gamma_form(2, 1, s).unwrap() - poly_p(2, 1, s).unwrap();
        assert!(d.abs_f64() < 1e-13);
        assert!(matches!(
            poly_p_gamma_form(2, 3, c(1.5, 0.0)),
            Err(Error::RemovableSingularity(_))
        ));
    }

    #[test]
    fn shifted_family() {
        let s = c(1.9, 0.4);
        for k in 1..=3 {
            for j in 1..=2 * k {
                assert_eq!(poly_p_l(k, 0, j, s).unwrap(), poly_p(k, j, s).unwrap());
            }
        }
        assert_eq!(poly_p_l(1, 1, 1, s).unwrap(), Complex::ONE);
        let t = s * 2.0;
        let d = poly_p_l(2, 1, 1, s).unwrap() - (t - 1.0) * (t - 2.0);
        assert!(d.abs_f64() < 1e-28);
    }

    #[test]
    fn c_coefficients() {
        let s = c(1.3, 0.7);
        assert_eq!(coeff_c(0, 0, s).unwrap(), Complex::ONE);
        let two_s = s * 2.0;
        assert!((coeff_c(1, 0, s).unwrap() - two_s.recip()).abs_f64() < 1e-30);
        assert!((coeff_c(1, 1, s).unwrap() + two_s.recip()).abs_f64() < 1e-30);
        for l in 0..5u32 {
            for j in 0..=l + 1 {
                let lhs = coeff_c(l + 1, j, s).unwrap() * (two_s + l as f64);
                let a = if j <= l {
                    coeff_c(l, j, s).unwrap()
                } else {
                    Complex::ZERO
                };
                let b = if j >= 1 {
                    coeff_c(l, j - 1, s + 1.0).unwrap()
                } else {
                    Complex::ZERO
                };
                assert!((lhs - (a - b)).abs_f64() < 1e-28, "{l} {j}");
            }
        }
        assert!(matches!(coeff_c(2, 0, c(0.0, 0.0)), Err(Error::PoleProximity(_))));
    }
}
