//! Elements of SL(2, Q), the quadratic `Q_g(z) = c z^2 + (d - a) z - b` and the conjugation rule.

use crate::scalar::{Complex, Dd};
use crate::special::gamma::rational_to_dd;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::ops::{Add, Mul, Neg, Sub};

const HYPERBOLIC_MARGIN: f64 = 1e-12;

/// `[[a, b], [c, d]]` with `ad - bc = 1` exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    a: BigRational,
    b: BigRational,
    c: BigRational,
    d: BigRational,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl GroupElement {
    pub fn new(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Result<Self> {
        let det = &a * &d - &b * &c;
        if !det.is_one() {
            return Err(Error::InvariantViolation(format!("determinant {det} is not 1")));
        }
        Ok(GroupElement { a, b, c, d })
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(q(a), q(b), q(c), q(d))
    }

    pub fn from_bigints(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Self {
        GroupElement {
            a: q(1),
            b: q(0),
            c: q(0),
            d: q(1),
        }
    }

    pub fn entries(&self) -> [&BigRational; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn trace(&self) -> BigRational {
        &self.a + &self.d
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.trace().abs() > q(2)
    }

    pub fn inverse(&self) -> Self {
        GroupElement {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
        }
    }

    pub fn mul(&self, o: &GroupElement) -> Self {
        GroupElement {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    /// `sigma^{-1} self sigma`.
    pub fn conjugate_by(&self, sigma: &GroupElement) -> Self {
        sigma.inverse().mul(self).mul(sigma)
    }

    fn entries_dd(&self) -> [Dd; 4] {
        [
            rational_to_dd(&self.a),
            rational_to_dd(&self.b),
            rational_to_dd(&self.c),
            rational_to_dd(&self.d),
        ]
    }

    /// Mobius action on a numeric point.
    pub fn act(&self, z: Complex) -> Complex {
        let [a, b, c, d] = self.entries_dd();
        (z * a + b) / (z * c + d)
    }

    /// Automorphy factor `j(g, z) = c z + d`.
    pub fn automorphy(&self, z: Complex) -> Complex {
        let [_, _, c, d] = self.entries_dd();
        z * c + d
    }
}

/// Coefficients `(c, d - a, -b)` of `Q_g`.
pub fn q_polynomial(g: &GroupElement) -> [BigRational; 3] {
    [g.c.clone(), &g.d - &g.a, -&g.b]
}

fn eval_q(g: &GroupElement, z: Complex) -> Complex {
    let [c2, c1, c0] = q_polynomial(g).map(|x| rational_to_dd(&x));
    (z * c2 + c1) * z + c0
}

fn check_upper(z: Complex) -> Result<()> {
    if !(z.im.hi() > 0.0) {
        return Err(Error::NotInUpperHalfPlane(format!("{z}")));
    }
    Ok(())
}

/// `Q_g(sigma z) - j(sigma, z)^{-2} Q_{sigma^{-1} g sigma}(z)` in double-double arithmetic.
pub fn conjugation_check(g: &GroupElement, sigma: &GroupElement, z: Complex) -> Result<Complex> {
    check_upper(z)?;
    let j = sigma.automorphy(z);
    if j.is_zero() {
        return Err(Error::PoleProximity("j(sigma, z) = 0".into()));
    }
    let lhs = eval_q(g, sigma.act(z));
    let rhs = eval_q(&g.conjugate_by(sigma), z) / (j * j);
    Ok(lhs - rhs)
}

/// A complex number with rational parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalComplex {
    pub re: BigRational,
    pub im: BigRational,
}

impl RationalComplex {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        RationalComplex { re, im }
    }

    pub fn from_real(re: BigRational) -> Self {
        RationalComplex {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn recip(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return None;
        }
        Some(RationalComplex {
            re: &self.re / &n,
            im: -&self.im / &n,
        })
    }

    pub fn to_complex(&self) -> Complex {
        Complex::new(rational_to_dd(&self.re), rational_to_dd(&self.im))
    }
}

impl Add for &RationalComplex {
    type Output = RationalComplex;
    fn add(self, o: &RationalComplex) -> RationalComplex {
        RationalComplex {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
}

impl Sub for &RationalComplex {
    type Output = RationalComplex;
    fn sub(self, o: &RationalComplex) -> RationalComplex {
        RationalComplex {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
}

impl Mul for &RationalComplex {
    type Output = RationalComplex;
    fn mul(self, o: &RationalComplex) -> RationalComplex {
        RationalComplex {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Neg for &RationalComplex {
    type Output = RationalComplex;
    fn neg(self) -> RationalComplex {
        RationalComplex {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

fn lin(x: &BigRational, z: &RationalComplex, y: &BigRational) -> RationalComplex {
    let xr = RationalComplex::from_real(x.clone());
    &(&xr * z) + &RationalComplex::from_real(y.clone())
}

fn eval_q_exact(g: &GroupElement, z: &RationalComplex) -> RationalComplex {
    let [c2, c1, c0] = q_polynomial(g);
    let inner = lin(&c2, z, &c1);
    &(&inner * z) + &RationalComplex::from_real(c0)
}

/// Exact form of [`conjugation_check`] at a point with rational coordinates.
pub fn conjugation_check_exact(g: &GroupElement, sigma: &GroupElement, z: &RationalComplex) -> Result<RationalComplex> {
    if !z.im.is_positive() {
        return Err(Error::NotInUpperHalfPlane(format!("{} + {}i", z.re, z.im)));
    }
    let j = lin(&sigma.c, z, &sigma.d);
    let jinv = j
        .recip()
        .ok_or_else(|| Error::PoleProximity("j(sigma, z) = 0".into()))?;
    let sz = &lin(&sigma.a, z, &sigma.b) * &jinv;
    let lhs = eval_q_exact(g, &sz);
    let rhs = &eval_q_exact(&g.conjugate_by(sigma), z) * &(&jinv * &jinv);
    Ok(&lhs - &rhs)
}

/// `N = ((|tr| + sqrt(tr^2 - 4)) / 2)^2`.
pub fn norm_of(g: &GroupElement) -> Result<f64> {
    let t = rational_to_dd(&g.trace()).abs();
    if !(t.to_f64() > 2.0 + HYPERBOLIC_MARGIN) {
        return Err(Error::NotHyperbolic(format!("|trace| = {t}")));
    }
    let eps = (t + (t.sqr() - 4.0).sqrt()) * 0.5;
    Ok(eps.sqr().to_f64())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(a: i64, b: i64, c: i64, d: i64) -> GroupElement {
        GroupElement::from_ints(a, b, c, d).unwrap()
    }

    #[test]
    fn determinant_enforced() {
        assert!(GroupElement::from_ints(2, 1, 1, 2).is_err());
        assert!(g(2, 1, 1, 1).is_hyperbolic());
        assert!(!g(1, 1, 0, 1).is_hyperbolic());
    }

    #[test]
    fn q_polynomial_examples() {
        assert_eq!(q_polynomial(&g(2, 1, 1, 1)), [q(1), q(-1), q(-1)]);
        assert!(q_polynomial(&GroupElement::identity()).iter().all(|c| c.is_zero()));
        let e = g(5, 2, 7, 3);
        let neg: Vec<_> = q_polynomial(&e).iter().map(|c| -c).collect();
        assert_eq!(q_polynomial(&e.inverse()).to_vec(), neg);
    }

    #[test]
    fn conjugation_example() {
        let gm = g(2, 1, 1, 1);
        let sigma = g(1, 1, 0, 1);
        assert_eq!(gm.conjugate_by(&sigma), g(1, 1, 1, 2));
        let z = RationalComplex::new(q(0), q(1));
        assert!(conjugation_check_exact(&gm, &sigma, &z).unwrap().is_zero());
        let r = conjugation_check(&gm, &sigma, Complex::I).unwrap();
        assert!(r.abs_f64() < 1e-30);
        let r = conjugation_check(&gm, &GroupElement::identity(), Complex::from_f64(0.3, 2.0)).unwrap();
        assert!(r.abs_f64() < 1e-30);
        assert!(conjugation_check(&gm, &sigma, Complex::from_f64(0.0, -1.0)).is_err());
    }

    #[test]
    fn norms() {
        let n = norm_of(&g(2, 1, 1, 1)).unwrap();
        assert!((n - 6.854101966249685).abs() < 1e-14);
        let near = GroupElement::new(
            q(1) + BigRational::new(1.into(), BigInt::from(10).pow(15)),
            q(0),
            q(0),
            q(0),
        );
        assert!(near.is_err());
        let a = BigRational::new(BigInt::from(10).pow(15) + 1, BigInt::from(10).pow(15));
        let parabolic_ish = GroupElement::new(a.clone(), q(0), q(0), a.recip()).unwrap();
        assert!(matches!(norm_of(&parabolic_ish), Err(Error::NotHyperbolic(_))));
        let e = g(5, 2, 7, 3);
        let s = g(3, 1, 5, 2);
        let n = norm_of(&e).unwrap();
        assert_eq!(n, norm_of(&e.inverse()).unwrap());
        assert_eq!(n, norm_of(&e.conjugate_by(&s)).unwrap());
    }
}
