//! Log-gamma, digamma, Pochhammer symbols and binomial coefficients.

use crate::scalar::{Complex, Dd, HALF_LN_2PI};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

const STIRLING_RADIUS: f64 = 25.0;
const STIRLING_TERMS: usize = 16;

/// B_{2n} / (2n (2n-1)).
const LOG_GAMMA_COEFFS: [(f64, f64); STIRLING_TERMS] = [
    (0.08333333333333333, 4.625929269271485e-18),
    (-0.002777777777777778, 1.0601087908747154e-19),
    (0.0007936507936507937, 6.883823317368282e-22),
    (-0.0005952380952380953, 5.36938218754726e-20),
    (0.0008417508417508417, 3.6870174889237694e-20),
    (-0.0019175269175269176, 1.0675702776872475e-19),
    (0.00641025641025641, 2.2240044563805217e-19),
    (-0.029550653594771242, 4.861760957508855e-19),
    (0.17964437236883057, -6.401600482710946e-19),
    (-1.3924322169059011, 1.5837056989230303e-17),
    (13.402864044168393, -6.154114101993966e-16),
    (-156.84828462600203, 9.391823141715389e-15),
    (2193.1033333333335, -1.3339255626002948e-13),
    (-36108.77125372499, 5.897583353514365e-13),
    (691472.268851313, 2.5585296305158e-11),
    (-15238221.539407415, -8.76774522490625e-10),
];

/// B_{2n} / (2n).
const DIGAMMA_COEFFS: [(f64, f64); STIRLING_TERMS] = [
    (0.08333333333333333, 4.625929269271485e-18),
    (-0.008333333333333333, -1.1564823173178714e-19),
    (0.003968253968253968, 2.20282346155785e-19),
    (-0.004166666666666667, -5.782411586589357e-20),
    (0.007575757575757576, -2.1026951223961299e-19),
    (-0.021092796092796094, 1.3911677399530732e-18),
    (0.08333333333333333, 4.625929269271485e-18),
    (-0.4432598039215686, -2.0462934179365632e-17),
    (3.0539543302701198, -1.0882720820608607e-17),
    (-26.456212121212122, 7.449932926454383e-16),
    (281.46014492753625, -1.647635329298783e-14),
    (-3607.5105463980462, -1.5347029033579816e-13),
    (54827.583333333336, -2.4253192047278085e-12),
    (-974936.8238505747, -4.2284185858978625e-11),
    (20052695.79668808, -8.878409127275055e-10),
    (-472384867.7216299, 1.5660828235102635e-08),
];

fn check_pole(z: Complex) -> Result<()> {
    let (re, im) = z.to_f64();
    if re <= 0.5 {
        let n = re.round();
        if n <= 0.0 && (re - n).hypot(im) < 1e-12 {
            return Err(Error::PoleAtNonPositiveInteger(format!("{n}")));
        }
    }
    Ok(())
}

/// Principal-branch `log Gamma(z)`: Stirling series after an upward shift to `|z| >= 25`.
pub fn log_gamma(z: Complex) -> Result<Complex> {
    check_pole(z)?;
    let mut w = z;
    let mut shift = Complex::ZERO;
    let mut prod = Complex::ONE;
    let mut count = 0;
    while w.abs_f64() < STIRLING_RADIUS {
        prod *= w;
        count += 1;
        // Fold the accumulated product into a log every few steps to stay in range.
        if count % 8 == 0 {
            shift += prod.ln();
            prod = Complex::ONE;
        }
        w += 1.0;
    }
    if count % 8 != 0 {
        shift += prod.ln();
    }
    // `ln` of a product can differ from the sum of logs by multiples of 2 pi i.
    // The imaginary part is fixed by comparing against a double-precision phase sum.
    let shift = fix_phase(z, count, shift);
    let inv = w.recip();
    let inv2 = inv * inv;
    let mut series = Complex::ZERO;
    let mut p = inv;
    for &(hi, lo) in LOG_GAMMA_COEFFS.iter() {
        series += p * Dd::new(hi, lo);
        p *= inv2;
    }
    let main = (w - 0.5) * w.ln() - w + HALF_LN_2PI + series;
    Ok(main - shift)
}

fn fix_phase(z: Complex, count: usize, shift: Complex) -> Complex {
    if count == 0 {
        return shift;
    }
    let (re, im) = z.to_f64();
    let mut phase = 0.0;
    for i in 0..count {
        phase += im.atan2(re + i as f64);
    }
    let two_pi = crate::scalar::TWO_PI;
    let k = ((phase - shift.im.to_f64()) / two_pi.to_f64()).round();
    if k == 0.0 {
        shift
    } else {
        Complex::new(shift.re, shift.im + two_pi * k)
    }
}

pub fn gamma(z: Complex) -> Result<Complex> {
    Ok(log_gamma(z)?.exp())
}

/// Digamma `psi(z) = Gamma'(z)/Gamma(z)`.
pub fn digamma(z: Complex) -> Result<Complex> {
    check_pole(z)?;
    let mut w = z;
    let mut acc = Complex::ZERO;
    while w.abs_f64() < STIRLING_RADIUS {
        acc += w.recip();
        w += 1.0;
    }
    let inv = w.recip();
    let inv2 = inv * inv;
    let mut series = Complex::ZERO;
    let mut p = inv2;
    for &(hi, lo) in DIGAMMA_COEFFS.iter() {
        series += p * Dd::new(hi, lo);
        p *= inv2;
    }
    Ok(w.ln() - inv * 0.5 - series - acc)
}

/// Rising factorial `a (a+1) ... (a+n-1)`.
pub fn pochhammer(a: Complex, n: usize) -> Complex {
    let mut p = Complex::ONE;
    for i in 0..n {
        p *= a + i as f64;
    }
    p
}

pub fn pochhammer_exact(a: &BigRational, n: usize) -> BigRational {
    let mut p = BigRational::one();
    let mut t = a.clone();
    for _ in 0..n {
        p *= &t;
        t += BigRational::one();
    }
    p
}

/// Generalized binomial `n (n-1) ... (n-k+1) / k!` for any integer `n`; zero for `k < 0`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    let mut c = BigInt::one();
    for i in 0..k {
        c *= BigInt::from(n - i);
        c /= BigInt::from(i + 1);
    }
    c
}

pub fn binomial_f64(n: i64, k: i64) -> f64 {
    use num_traits::ToPrimitive;
    binomial(n, k).to_f64().unwrap_or(f64::INFINITY)
}

pub fn binomial_dd(n: i64, k: i64) -> Dd {
    bigint_to_dd(&binomial(n, k))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn bigint_to_dd(x: &BigInt) -> Dd {
    use num_traits::ToPrimitive;
    let hi = x.to_f64().unwrap_or(f64::INFINITY);
    if !hi.is_finite() {
        return Dd::from(hi);
    }
    let rest = x - float_to_bigint(hi);
    Dd::from_sum(hi, rest.to_f64().unwrap_or(0.0))
}

fn float_to_bigint(x: f64) -> BigInt {
    use num_traits::FromPrimitive;
    BigInt::from_f64(x).unwrap_or_default()
}

pub fn rational_to_dd(x: &BigRational) -> Dd {
    bigint_to_dd(x.numer()) / bigint_to_dd(x.denom())
}
