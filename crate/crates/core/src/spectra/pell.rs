//! Arithmetic spectra from real quadratic orders: fundamental units and narrow class numbers.

use super::group::GroupElement;
use super::model::{LengthSpectrum, PrimitiveClass};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{Signed, ToPrimitive, Zero};
use std::collections::HashSet;

/// Indefinite binary quadratic form `a x^2 + b x y + c y^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Form {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl Form {
    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c) == 1
    }
}

/// `0 < D`, `D = 0, 1 mod 4` and `D` not a square.
pub fn admissible(d: i64) -> bool {
    d > 0 && (d % 4 == 0 || d % 4 == 1) && d.sqrt() * d.sqrt() != d
}

/// `0 < b < sqrt D` and `sqrt D - b < 2|a| < sqrt D + b`.
pub fn is_reduced(f: &Form, d: i64) -> bool {
    let s = d.sqrt();
    let a2 = 2 * f.a.abs();
    f.b >= 1 && f.b <= s && a2 + f.b > s && a2 - f.b <= s
}

/// The reduced neighbour `(c, b', (b'^2 - D) / 4c)` with `b' = -b mod 2c` in `(sqrt D - 2|c|, sqrt D)`,
/// together with the step `t` such that `b' = -b + 2 c t`.
fn rho(f: &Form, d: i64) -> (Form, i64) {
    let s = d.sqrt();
    let m = 2 * f.c.abs();
    let b1 = s - (s + f.b).rem_euclid(m);
    let t = (b1 + f.b) / (2 * f.c);
    (
        Form {
            a: f.c,
            b: b1,
            c: (b1 * b1 - d) / (4 * f.c),
        },
        t,
    )
}

pub fn reduced_forms(d: i64) -> Vec<Form> {
    let s = d.sqrt();
    let mut out = Vec::new();
    for b in 1..=s {
        if (b - d).rem_euclid(2) != 0 {
            continue;
        }
        let ac = (b * b - d) / 4;
        for a in 1..=ac.abs() {
            if ac % a != 0 {
                continue;
            }
            for sa in [a, -a] {
                let f = Form { a: sa, b, c: ac / sa };
                if f.is_primitive() && is_reduced(&f, d) {
                    out.push(f);
                }
            }
        }
    }
    out.sort();
    out
}

/// Cycles of primitive reduced forms under the neighbour map.
pub fn form_cycles(d: i64) -> Vec<Vec<Form>> {
    let mut seen = HashSet::new();
    let mut cycles = Vec::new();
    for f in reduced_forms(d) {
        if seen.contains(&f) {
            continue;
        }
        let mut cyc = vec![f];
        seen.insert(f);
        let mut g = rho(&f, d).0;
        while g != f {
            seen.insert(g);
            cyc.push(g);
            g = rho(&g, d).0;
        }
        cycles.push(cyc);
    }
    cycles
}

/// Narrow class number: the number of cycles of primitive reduced forms.
pub fn class_number(d: i64) -> usize {
    form_cycles(d).len()
}

fn principal_form(d: i64) -> Form {
    let s = d.sqrt();
    let b = if (s - d).rem_euclid(2) == 0 { s } else { s - 1 };
    Form {
        a: 1,
        b,
        c: (b * b - d) / 4,
    }
}

/// Minimal `(t, u)` with `t, u > 0` and `t^2 - D u^2 = 4`.
///
/// Read off the product of neighbour steps around the principal cycle, which is the
/// fundamental automorph `[[(t - b u)/2, -c u], [a u, (t + b u)/2]]` up to sign.
pub fn fundamental_solution(d: i64) -> Result<(BigInt, BigInt)> {
    if !admissible(d) {
        return Err(Error::InvariantViolation(format!(
            "D = {d} is not an admissible discriminant"
        )));
    }
    let f0 = principal_form(d);
    let mut m: [BigInt; 4] = [1.into(), 0.into(), 0.into(), 1.into()];
    let mut f = f0;
    let mut len = 0usize;
    loop {
        let (g, t) = rho(&f, d);
        let t = BigInt::from(t);
        let [p, q, r, s] = m;
        m = [q.clone(), -&p + &q * &t, s.clone(), -&r + &s * &t];
        f = g;
        len += 1;
        if f == f0 && len.is_multiple_of(2) {
            break;
        }
    }
    let t = (&m[0] + &m[3]).abs();
    let u = m[2].abs();
    debug_assert_eq!(&t * &t - BigInt::from(d) * &u * &u, BigInt::from(4));
    Ok((t, u))
}

/// Brute-force search over `u = 1, 2, ...`; an independent check of [`fundamental_solution`].
pub fn fundamental_solution_search(d: i64, u_cap: u64) -> Option<(u64, u64)> {
    let d = d as u128;
    for u in 1..=u_cap as u128 {
        let t2 = d * u * u + 4;
        let t = t2.sqrt();
        if t * t == t2 {
            return Some((t as u64, u as u64));
        }
    }
    None
}

/// `log eps_D^2` with `eps_D = (t + u sqrt D) / 2 = (t + sqrt(t^2 - 4)) / 2`.
fn log_norm(t: &BigInt) -> Option<f64> {
    let bits = t.bits();
    if bits < 1000 {
        let tf = t.to_f64()?;
        let eps = (tf + (tf * tf - 4.0).sqrt()) / 2.0;
        if eps.is_finite() {
            return Some(2.0 * eps.ln());
        }
    }
    None
}

/// `[[(t - b u)/2, -c u], [a u, (t + b u)/2]]`, an automorph of `f` with trace `t`.
pub fn form_automorph(f: &Form, t: &BigInt, u: &BigInt) -> Result<GroupElement> {
    let two = BigInt::from(2);
    let bu = u * f.b;
    let (p, rem_p) = (t - &bu).div_rem(&two);
    let (s, rem_s) = (t + &bu).div_rem(&two);
    if !rem_p.is_zero() || !rem_s.is_zero() {
        return Err(Error::InvariantViolation("t and b u differ in parity".into()));
    }
    GroupElement::from_bigints(p, -(u * f.c), u * f.a, s)
}

/// One class per admissible `5 <= D <= d_max`: norm `eps_D^2`, multiplicity `h(D)`, weight 1.
/// Discriminants whose norm does not fit a double are skipped.
pub fn gen_pell(d_max: i64) -> Result<LengthSpectrum> {
    let mut classes = Vec::new();
    for d in 5..=d_max {
        if !admissible(d) {
            continue;
        }
        let (t, _) = fundamental_solution(d)?;
        let Some(len) = log_norm(&t) else { continue };
        let norm = len.exp();
        if !norm.is_finite() {
            continue;
        }
        let h = class_number(d) as u32;
        classes.push(PrimitiveClass::from_norm(norm, [1.0, 0.0], h, Some(format!("D={d}")))?);
    }
    LengthSpectrum::new(classes, None)
}

/// Counts proper equivalence classes of primitive forms of discriminant `d` by joining every
/// form in a box under `S` and `T`, then counting components that meet a reduced form.
/// Independent of the cycle structure; meant for small `d`.
pub fn class_number_by_union_find(d: i64) -> usize {
    let box_a = d;
    let box_b = 2 * d;
    let mut forms = Vec::new();
    for b in -box_b..=box_b {
        if (b * b - d).rem_euclid(4) != 0 {
            continue;
        }
        let ac = (b * b - d) / 4;
        if ac == 0 {
            continue;
        }
        for a in -box_a..=box_a {
            if a == 0 || ac % a != 0 {
                continue;
            }
            let c = ac / a;
            if c.abs() <= box_a {
                forms.push(Form { a, b, c });
            }
        }
    }
    forms.sort();
    let index = |f: &Form| forms.binary_search(f).ok();
    let mut parent: Vec<usize> = (0..forms.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (i, f) in forms.iter().enumerate() {
        let s = Form {
            a: f.c,
            b: -f.b,
            c: f.a,
        };
        let t = Form {
            a: f.a,
            b: f.b + 2 * f.a,
            c: f.a + f.b + f.c,
        };
        for g in [s, t] {
            if let Some(j) = index(&g) {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri] = rj;
            }
        }
    }
    let mut roots = HashSet::new();
    for (i, f) in forms.iter().enumerate() {
        if f.is_primitive() && is_reduced(f, d) {
            roots.insert(find(&mut parent, i));
        }
    }
    roots.len()
}
