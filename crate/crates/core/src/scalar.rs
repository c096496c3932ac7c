//! Double-double real and complex scalars.
//!
//! A [`Dd`] is an unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`, giving
//! roughly 32 significant decimal digits. [`Complex`] pairs two of them.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

pub const PI: Dd = Dd::new(std::f64::consts::PI, 1.2246467991473532e-16);
pub const TWO_PI: Dd = Dd::new(std::f64::consts::TAU, 2.4492935982947064e-16);
pub const HALF_PI: Dd = Dd::new(std::f64::consts::FRAC_PI_2, 6.123233995736766e-17);
pub const LN2: Dd = Dd::new(std::f64::consts::LN_2, 2.3190468138462996e-17);
pub const EULER_GAMMA: Dd = Dd::new(0.5772156649015329, -4.942915152430645e-18);
pub const HALF_LN_2PI: Dd = Dd::new(0.9189385332046728, -3.8782941580672414e-17);
pub const LN_PI: Dd = Dd::new(1.1447298858494002, 1.0265951162707826e-17);
pub const SQRT_PI: Dd = Dd::new(1.772453850905516, -7.666586499825799e-17);

/// Unit roundoff of the double-double format.
pub const DD_EPS: f64 = 4.93038065763132e-32;

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    /// Builds from two words that are already normalized.
    pub const fn new(hi: f64, lo: f64) -> Dd {
        Dd { hi, lo }
    }

    pub fn from_sum(a: f64, b: f64) -> Dd {
        let (hi, lo) = two_sum(a, b);
        Dd { hi, lo }
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    pub fn is_zero(self) -> bool {
        self.hi == 0.0
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    pub fn signum(self) -> f64 {
        if self.hi > 0.0 {
            1.0
        } else if self.hi < 0.0 {
            -1.0
        } else {
            0.0
        }
    }

    /// Multiplies by `2^k` exactly.
    pub fn ldexp(self, k: i32) -> Dd {
        let scale = |x: f64| {
            if k > 1000 {
                x * 2f64.powi(1000) * 2f64.powi(k - 1000)
            } else if k < -1000 {
                x * 2f64.powi(-1000) * 2f64.powi(k + 1000)
            } else {
                x * 2f64.powi(k)
            }
        };
        Dd::new(scale(self.hi), scale(self.lo))
    }

    pub fn round(self) -> Dd {
        let hi = self.hi.round();
        if hi == self.hi {
            let lo = self.lo.round();
            let (h, l) = quick_two_sum(hi, lo);
            Dd::new(h, l)
        } else if (hi - self.hi).abs() == 0.5 && self.lo != 0.0 {
            // hi sits on a half-integer; lo decides the direction.
            if self.lo > 0.0 {
                Dd::from(self.hi.floor() + 1.0)
            } else {
                Dd::from(self.hi.ceil() - 1.0)
            }
        } else {
            Dd::from(hi)
        }
    }

    pub fn floor(self) -> Dd {
        let hi = self.hi.floor();
        if hi == self.hi {
            let (h, l) = quick_two_sum(hi, self.lo.floor());
            Dd::new(h, l)
        } else {
            Dd::from(hi)
        }
    }

    pub fn sqr(self) -> Dd {
        let (p, e) = two_prod(self.hi, self.hi);
        let e = e + 2.0 * self.hi * self.lo + self.lo * self.lo;
        let (h, l) = quick_two_sum(p, e);
        Dd::new(h, l)
    }

    pub fn recip(self) -> Dd {
        Dd::ONE / self
    }

    pub fn sqrt(self) -> Dd {
        if self.hi <= 0.0 {
            return if self.hi == 0.0 { Dd::ZERO } else { Dd::from(f64::NAN) };
        }
        let y = Dd::from(self.hi.sqrt());
        let r = self - y.sqr();
        y + r.hi / (2.0 * y.hi)
    }

    pub fn exp(self) -> Dd {
        if self.hi > 709.78 {
            return Dd::from(f64::INFINITY);
        }
        if self.hi < -745.2 {
            return Dd::ZERO;
        }
        if self.hi == 0.0 {
            return Dd::ONE;
        }
        let k = (self.hi / LN2.hi).round();
        let r = (self - LN2 * k).ldexp(-10);
        let mut p = r;
        let mut term = r;
        let mut n = 1.0;
        loop {
            n += 1.0;
            term = term * r / n;
            p += term;
            if term.hi.abs() < 1e-36 {
                break;
            }
        }
        for _ in 0..10 {
            p = p * (p + 2.0);
        }
        (p + 1.0).ldexp(k as i32)
    }

    pub fn ln(self) -> Dd {
        if self.hi <= 0.0 {
            return if self.hi == 0.0 {
                Dd::from(f64::NEG_INFINITY)
            } else {
                Dd::from(f64::NAN)
            };
        }
        if !self.hi.is_finite() {
            return self;
        }
        let x = Dd::from(self.hi.ln());
        x + self * (-x).exp() - 1.0
    }

    /// Simultaneous sine and cosine.
    pub fn sin_cos(self) -> (Dd, Dd) {
        if self.hi == 0.0 {
            return (Dd::ZERO, Dd::ONE);
        }
        let z = (self / TWO_PI).round();
        let r = self - TWO_PI * z;
        let q = (r.hi / HALF_PI.hi).round();
        let t = r - HALF_PI * q;
        let (s, c) = sin_cos_taylor(t);
        match (q as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }

    pub fn sin(self) -> Dd {
        self.sin_cos().0
    }

    pub fn cos(self) -> Dd {
        self.sin_cos().1
    }

    pub fn atan2(y: Dd, x: Dd) -> Dd {
        if x.hi == 0.0 && y.hi == 0.0 {
            return Dd::ZERO;
        }
        if x.hi == 0.0 {
            return if y.hi > 0.0 { HALF_PI } else { -HALF_PI };
        }
        if y.hi == 0.0 {
            return if x.hi > 0.0 { Dd::ZERO } else { PI };
        }
        let r = (x.sqr() + y.sqr()).sqrt();
        let xr = x / r;
        let yr = y / r;
        let mut z = Dd::from(y.hi.atan2(x.hi));
        // One Newton step on the better-conditioned of sin z = yr, cos z = xr.
        let (s, c) = z.sin_cos();
        if xr.hi.abs() > yr.hi.abs() {
            z += (yr - s) / c;
        } else {
            z -= (xr - c) / s;
        }
        z
    }

    pub fn powi(self, n: i32) -> Dd {
        if n == 0 {
            return Dd::ONE;
        }
        let mut base = self;
        let mut e = n.unsigned_abs();
        let mut acc = Dd::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base.sqr();
            e >>= 1;
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }

    pub fn powf(self, e: Dd) -> Dd {
        (e * self.ln()).exp()
    }

    pub fn max(self, other: Dd) -> Dd {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn min(self, other: Dd) -> Dd {
        if self <= other {
            self
        } else {
            other
        }
    }
}

fn sin_cos_taylor(t: Dd) -> (Dd, Dd) {
    let t2 = t.sqr();
    let mut s = t;
    let mut term = t;
    let mut n = 1.0;
    loop {
        term = -term * t2 / ((n + 1.0) * (n + 2.0));
        n += 2.0;
        s += term;
        if term.hi.abs() < 1e-35 {
            break;
        }
    }
    let mut c = Dd::ONE;
    let mut term = Dd::ONE;
    let mut n = 0.0;
    loop {
        term = -term * t2 / ((n + 1.0) * (n + 2.0));
        n += 2.0;
        c += term;
        if term.hi.abs() < 1e-35 {
            break;
        }
    }
    (s, c)
}

impl From<f64> for Dd {
    fn from(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }
}

impl From<i64> for Dd {
    fn from(x: i64) -> Dd {
        let hi = x as f64;
        let lo = (x - hi as i64) as f64;
        Dd::from_sum(hi, lo)
    }
}

impl From<i32> for Dd {
    fn from(x: i32) -> Dd {
        Dd::from(x as f64)
    }
}

impl From<u64> for Dd {
    fn from(x: u64) -> Dd {
        let hi = x as f64;
        let lo = (x as i128 - hi as i128) as f64;
        Dd::from_sum(hi, lo)
    }
}

impl From<usize> for Dd {
    fn from(x: usize) -> Dd {
        Dd::from(x as u64)
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Dd) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            o => o,
        }
    }
}

impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd::new(-self.hi, -self.lo)
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd { hi, lo }
    }
}

impl Add<f64> for Dd {
    type Output = Dd;
    fn add(self, b: f64) -> Dd {
        let (s1, s2) = two_sum(self.hi, b);
        let (hi, lo) = quick_two_sum(s1, s2 + self.lo);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Sub<f64> for Dd {
    type Output = Dd;
    fn sub(self, b: f64) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Mul<f64> for Dd {
    type Output = Dd;
    fn mul(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        if !q1.is_finite() {
            return Dd::from(q1);
        }
        let r = self - b * q1;
        let q2 = r.hi / b.hi;
        let r = r - b * q2;
        let q3 = r.hi / b.hi;
        let (h, l) = quick_two_sum(q1, q2);
        Dd::new(h, l) + q3
    }
}

impl Div<f64> for Dd {
    type Output = Dd;
    fn div(self, b: f64) -> Dd {
        self / Dd::from(b)
    }
}

macro_rules! f64_lhs {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Dd> for f64 {
            type Output = Dd;
            fn $m(self, b: Dd) -> Dd {
                Dd::from(self).$m(b)
            }
        }
    )*};
}
f64_lhs!(Add add, Sub sub, Mul mul, Div div);

macro_rules! assign_ops {
    ($t:ty, $rhs:ty) => {
        impl AddAssign<$rhs> for $t {
            fn add_assign(&mut self, b: $rhs) {
                *self = *self + b;
            }
        }
        impl SubAssign<$rhs> for $t {
            fn sub_assign(&mut self, b: $rhs) {
                *self = *self - b;
            }
        }
        impl MulAssign<$rhs> for $t {
            fn mul_assign(&mut self, b: $rhs) {
                *self = *self * b;
            }
        }
        impl DivAssign<$rhs> for $t {
            fn div_assign(&mut self, b: $rhs) {
                *self = *self / b;
            }
        }
    };
}
assign_ops!(Dd, Dd);
assign_ops!(Dd, f64);

impl Sum for Dd {
    fn sum<I: Iterator<Item = Dd>>(iter: I) -> Dd {
        iter.fold(Dd::ZERO, |a, b| a + b)
    }
}

/// Complex number with double-double components.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Complex {
    pub re: Dd,
    pub im: Dd,
}

pub type ComplexScalar = Complex;

impl Complex {
    pub const ZERO: Complex = Complex {
        re: Dd::ZERO,
        im: Dd::ZERO,
    };
    pub const ONE: Complex = Complex {
        re: Dd::ONE,
        im: Dd::ZERO,
    };
    pub const I: Complex = Complex {
        re: Dd::ZERO,
        im: Dd::ONE,
    };

    pub fn new(re: Dd, im: Dd) -> Complex {
        Complex { re, im }
    }

    pub fn from_f64(re: f64, im: f64) -> Complex {
        Complex {
            re: Dd::from(re),
            im: Dd::from(im),
        }
    }

    pub fn real(re: Dd) -> Complex {
        Complex { re, im: Dd::ZERO }
    }

    pub fn to_f64(self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn is_zero(self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(self) -> Complex {
        Complex {
            re: self.re,
            im: -self.im,
        }
    }

    pub fn norm_sqr(self) -> Dd {
        self.re.sqr() + self.im.sqr()
    }

    pub fn abs(self) -> Dd {
        let a = self.re.abs();
        let b = self.im.abs();
        let m = a.max(b);
        if m.is_zero() || !m.is_finite() {
            return m;
        }
        let e = m.hi.log2().floor() as i32;
        let a = a.ldexp(-e);
        let b = b.ldexp(-e);
        (a.sqr() + b.sqr()).sqrt().ldexp(e)
    }

    /// `|z|` in plain double precision, for tolerances and bounds.
    pub fn abs_f64(self) -> f64 {
        self.re.to_f64().hypot(self.im.to_f64())
    }

    pub fn arg(self) -> Dd {
        Dd::atan2(self.im, self.re)
    }

    pub fn scale(self, k: Dd) -> Complex {
        Complex {
            re: self.re * k,
            im: self.im * k,
        }
    }

    pub fn recip(self) -> Complex {
        Complex::ONE / self
    }

    pub fn exp(self) -> Complex {
        let m = self.re.exp();
        if self.im.is_zero() {
            return Complex::real(m);
        }
        let (s, c) = self.im.sin_cos();
        Complex { re: m * c, im: m * s }
    }

    /// Principal logarithm, `arg` in `(-pi, pi]`.
    pub fn ln(self) -> Complex {
        if self.im.is_zero() && self.re.hi > 0.0 {
            return Complex::real(self.re.ln());
        }
        Complex {
            re: self.abs().ln(),
            im: self.arg(),
        }
    }

    /// Principal power `exp(w ln z)`; `0^w = 0` for `Re w > 0`.
    pub fn powc(self, w: Complex) -> Complex {
        if self.is_zero() {
            return if w.is_zero() { Complex::ONE } else { Complex::ZERO };
        }
        (w * self.ln()).exp()
    }

    pub fn powi(self, n: i32) -> Complex {
        if n == 0 {
            return Complex::ONE;
        }
        let mut base = self;
        let mut e = n.unsigned_abs();
        let mut acc = Complex::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base * base;
            e >>= 1;
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }

    /// Principal square root, branch cut on the negative real axis.
    pub fn sqrt(self) -> Complex {
        if self.is_zero() {
            return Complex::ZERO;
        }
        let r = self.abs();
        if self.re.hi >= 0.0 {
            let t = ((r + self.re) * 0.5).sqrt();
            Complex {
                re: t,
                im: self.im / (t * 2.0),
            }
        } else {
            let t = ((r - self.re) * 0.5).sqrt();
            let sign = if self.im.hi < 0.0 || (self.im.hi == 0.0 && self.im.lo < 0.0) {
                -1.0
            } else {
                1.0
            };
            Complex {
                re: self.im.abs() / (t * 2.0),
                im: t * sign,
            }
        }
    }
}

impl From<f64> for Complex {
    fn from(x: f64) -> Complex {
        Complex::from_f64(x, 0.0)
    }
}

impl From<Dd> for Complex {
    fn from(x: Dd) -> Complex {
        Complex::real(x)
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_f64();
        if im < 0.0 {
            write!(f, "{re:e}-{:e}i", -im)
        } else {
            write!(f, "{re:e}+{im:e}i")
        }
    }
}

impl Neg for Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Add for Complex {
    type Output = Complex;
    fn add(self, b: Complex) -> Complex {
        Complex {
            re: self.re + b.re,
            im: self.im + b.im,
        }
    }
}

impl Sub for Complex {
    type Output = Complex;
    fn sub(self, b: Complex) -> Complex {
        Complex {
            re: self.re - b.re,
            im: self.im - b.im,
        }
    }
}

impl Mul for Complex {
    type Output = Complex;
    fn mul(self, b: Complex) -> Complex {
        Complex {
            re: self.re * b.re - self.im * b.im,
            im: self.re * b.im + self.im * b.re,
        }
    }
}

impl Div for Complex {
    type Output = Complex;
    fn div(self, b: Complex) -> Complex {
        // Smith's algorithm.
        if b.im.is_zero() {
            return Complex {
                re: self.re / b.re,
                im: self.im / b.re,
            };
        }
        if b.re.abs() >= b.im.abs() {
            let t = b.im / b.re;
            let den = b.re + b.im * t;
            Complex {
                re: (self.re + self.im * t) / den,
                im: (self.im - self.re * t) / den,
            }
        } else {
            let t = b.re / b.im;
            let den = b.re * t + b.im;
            Complex {
                re: (self.re * t + self.im) / den,
                im: (self.im * t - self.re) / den,
            }
        }
    }
}

macro_rules! real_rhs {
    ($r:ty) => {
        impl Add<$r> for Complex {
            type Output = Complex;
            fn add(self, b: $r) -> Complex {
                Complex {
                    re: self.re + b,
                    im: self.im,
                }
            }
        }
        impl Sub<$r> for Complex {
            type Output = Complex;
            fn sub(self, b: $r) -> Complex {
                Complex {
                    re: self.re - b,
                    im: self.im,
                }
            }
        }
        impl Mul<$r> for Complex {
            type Output = Complex;
            fn mul(self, b: $r) -> Complex {
                Complex {
                    re: self.re * b,
                    im: self.im * b,
                }
            }
        }
        impl Div<$r> for Complex {
            type Output = Complex;
            fn div(self, b: $r) -> Complex {
                Complex {
                    re: self.re / b,
                    im: self.im / b,
                }
            }
        }
        impl Add<Complex> for $r {
            type Output = Complex;
            fn add(self, b: Complex) -> Complex {
                b + self
            }
        }
        impl Sub<Complex> for $r {
            type Output = Complex;
            fn sub(self, b: Complex) -> Complex {
                -b + self
            }
        }
        impl Mul<Complex> for $r {
            type Output = Complex;
            fn mul(self, b: Complex) -> Complex {
                b * self
            }
        }
        impl Div<Complex> for $r {
            type Output = Complex;
            fn div(self, b: Complex) -> Complex {
                Complex::real(Dd::from(self)) / b
            }
        }
        assign_ops!(Complex, $r);
    };
}
real_rhs!(f64);
real_rhs!(Dd);
assign_ops!(Complex, Complex);

impl Sum for Complex {
    fn sum<I: Iterator<Item = Complex>>(iter: I) -> Complex {
        iter.fold(Complex::ZERO, |a, b| a + b)
    }
}
