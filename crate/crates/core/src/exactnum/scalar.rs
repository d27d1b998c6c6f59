//! Exact elements of ℚ(√2, √d) for an odd square-free radicand d.
//!
//! A scalar is stored as `c0 + c1·√2 + c2·√d + c3·√(2d)`. Purely rational
//! values carry no irrational block at all, which keeps the common case
//! (integer and half-integer matrices) cheap.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Q = BigRational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Irr {
    c: [Q; 3],
    // odd square-free radicand >= 3, or 0 when c[1] = c[2] = 0
    d: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    q: Q,
    irr: Option<Box<Irr>>,
}

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Splits `n` into `(s, f)` with `n = s²·f` and `f` square-free.
pub fn square_free_split(mut n: u64) -> (u64, u64) {
    let mut s = 1u64;
    let mut f = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        for _ in 0..e / 2 {
            s *= p;
        }
        if e % 2 == 1 {
            f *= p;
        }
        p += 1;
    }
    f *= n;
    (s, f)
}

fn merge_d(a: u64, b: u64) -> u64 {
    match (a, b) {
        (0, x) | (x, 0) => x,
        (x, y) if x == y => x,
        (x, y) => panic!("scalar field mismatch: sqrt({x}) vs sqrt({y})"),
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { q: Q::zero(), irr: None }
    }

    pub fn one() -> Self {
        Scalar { q: Q::one(), irr: None }
    }

    pub fn from_q(q: Q) -> Self {
        Scalar { q, irr: None }
    }

    pub fn int(n: i64) -> Self {
        Self::from_q(qi(n))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::from_q(q(n, d))
    }

    pub fn sqrt2() -> Self {
        Self::from_coeffs([Q::zero(), Q::one(), Q::zero(), Q::zero()], 0)
    }

    /// `c0 + c1√2 + c2√D + c3√(2D)` for an arbitrary positive integer `D`,
    /// rewritten into the canonical basis.
    pub fn from_parts(c: [Q; 4], big_d: u64) -> Self {
        let [c0, c1, c2, c3] = c;
        if big_d == 0 {
            assert!(c2.is_zero() && c3.is_zero(), "D = 0 with nonzero radical part");
            return Self::from_coeffs([c0, c1, Q::zero(), Q::zero()], 0);
        }
        let (s, f) = square_free_split(big_d);
        let s = Q::from_integer(BigInt::from(s));
        // √D = s√f, √(2D) = s√(2f)
        let (mut r0, mut r1, mut r2, mut r3) = (c0, c1, Q::zero(), Q::zero());
        let d;
        if f == 1 {
            r0 += &c2 * &s;
            r1 += &c3 * &s;
            d = 0;
        } else if f == 2 {
            r1 += &c2 * &s;
            r0 += &c3 * &s * qi(2);
            d = 0;
        } else if f % 2 == 1 {
            r2 += &c2 * &s;
            r3 += &c3 * &s;
            d = f;
        } else {
            // f = 2g: √f = √(2g), √(2f) = 2√g
            r3 += &c2 * &s;
            r2 += &c3 * &s * qi(2);
            d = f / 2;
        }
        Self::from_coeffs([r0, r1, r2, r3], d)
    }

    /// √D for a positive integer D.
    pub fn sqrt_of(big_d: u64) -> Self {
        Self::from_parts([Q::zero(), Q::zero(), Q::one(), Q::zero()], big_d)
    }

    fn from_coeffs(c: [Q; 4], d: u64) -> Self {
        let [c0, c1, c2, c3] = c;
        let mut s = Scalar {
            q: c0,
            irr: Some(Box::new(Irr { c: [c1, c2, c3], d })),
        };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if let Some(irr) = &mut self.irr {
            if irr.c[1].is_zero() && irr.c[2].is_zero() {
                irr.d = 0;
                if irr.c[0].is_zero() {
                    self.irr = None;
                }
            }
        }
    }

    /// Coefficients on `1, √2, √d, √(2d)`.
    pub fn coeffs(&self) -> [Q; 4] {
        match &self.irr {
            None => [self.q.clone(), Q::zero(), Q::zero(), Q::zero()],
            Some(i) => [self.q.clone(), i.c[0].clone(), i.c[1].clone(), i.c[2].clone()],
        }
    }

    /// Odd square-free radicand `d` in use, `None` if the value lies in ℚ(√2).
    pub fn radicand(&self) -> Option<u64> {
        self.irr.as_ref().map(|i| i.d).filter(|&d| d != 0)
    }

    pub fn is_zero(&self) -> bool {
        self.irr.is_none() && self.q.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.irr.is_none() && self.q.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.irr.is_none()
    }

    pub fn as_rational(&self) -> Option<&Q> {
        if self.irr.is_none() {
            Some(&self.q)
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        let f = |x: &Q| x.to_f64().unwrap_or(f64::NAN);
        let mut v = f(&self.q);
        if let Some(i) = &self.irr {
            let d = i.d as f64;
            v += f(&i.c[0]) * 2f64.sqrt() + f(&i.c[1]) * d.sqrt() + f(&i.c[2]) * (2.0 * d).sqrt();
        }
        v
    }

    /// Exact sign. Every value is a sum of at most four signed square roots of
    /// rationals, so comparisons reduce to squaring rational expressions.
    pub fn signum(&self) -> Ordering {
        match &self.irr {
            None => self.q.cmp(&Q::zero()),
            Some(i) => {
                let d = qi(i.d as i64);
                // x = (c0 + c1√2) + √d (c2 + c3√2)
                let a = [self.q.clone(), i.c[0].clone()];
                let b = [&i.c[1] * &Q::one(), i.c[2].clone()];
                let sa = sign_q2(&a);
                let sb = sign_q2(&b);
                if sb == Ordering::Equal {
                    return sa;
                }
                if sa == sb || sa == Ordering::Equal {
                    return if sa == Ordering::Equal { sb } else { sa };
                }
                // compare a² with d·b², both in ℚ(√2)
                let a2 = mul_q2(&a, &a);
                let b2 = mul_q2(&b, &b);
                let diff = [&a2[0] - &d * &b2[0], &a2[1] - &d * &b2[1]];
                match sign_q2(&diff) {
                    Ordering::Equal => Ordering::Equal,
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                }
            }
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.irr.is_none() {
            return Ok(Self::from_q(self.q.recip()));
        }
        let [c0, c1, c2, c3] = self.coeffs();
        let d = self.irr.as_ref().unwrap().d;
        let conj = |s1: bool, s2: bool| {
            let n1 = if s1 { -c1.clone() } else { c1.clone() };
            let n2 = if s2 { -c2.clone() } else { c2.clone() };
            let n3 = if s1 ^ s2 { -c3.clone() } else { c3.clone() };
            Scalar::from_coeffs([c0.clone(), n1, n2, n3], d)
        };
        let others = &(&conj(true, false) * &conj(false, true)) * &conj(true, true);
        let norm = self * &others;
        let n = norm.as_rational().expect("field norm is rational").clone();
        Ok(&others * &Scalar::from_q(n.recip()))
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        Ok(self * &rhs.inv()?)
    }

    pub fn mul_q(&self, k: &Q) -> Scalar {
        match &self.irr {
            None => Self::from_q(&self.q * k),
            Some(i) => {
                let mut out = Scalar {
                    q: &self.q * k,
                    irr: Some(Box::new(Irr {
                        c: [&i.c[0] * k, &i.c[1] * k, &i.c[2] * k],
                        d: i.d,
                    })),
                };
                out.normalize();
                out
            }
        }
    }

    /// `self += a * b` without an intermediate allocation in the rational case.
    pub fn add_mul(&mut self, a: &Scalar, b: &Scalar) {
        if a.irr.is_none() && b.irr.is_none() {
            self.q += &a.q * &b.q;
            return;
        }
        *self += &(a * b);
    }

    pub fn to_json(&self) -> ScalarJson {
        let c = self.coeffs();
        ScalarJson {
            c: c.iter().map(|x| format!("{}/{}", x.numer(), x.denom())).collect(),
            d: self.radicand().unwrap_or(1),
        }
    }

    pub fn from_json(j: &ScalarJson) -> Result<Scalar> {
        if j.c.len() != 4 {
            return Err(Error::Parse("scalar needs four coefficients".into()));
        }
        let mut c: Vec<Q> = Vec::with_capacity(4);
        for s in &j.c {
            c.push(parse_q(s)?);
        }
        let d = if j.d == 1 { 0 } else { j.d };
        if d == 0 && !(c[2].is_zero() && c[3].is_zero()) {
            return Err(Error::Parse("radical coefficients without radicand".into()));
        }
        let [c0, c1, c2, c3]: [Q; 4] = c.try_into().unwrap();
        Ok(Self::from_coeffs([c0, c1, c2, c3], d))
    }
}

fn sign_q2(a: &[Q; 2]) -> Ordering {
    // sign of a0 + a1√2
    let s0 = a[0].cmp(&Q::zero());
    let s1 = a[1].cmp(&Q::zero());
    if s1 == Ordering::Equal {
        return s0;
    }
    if s0 == s1 || s0 == Ordering::Equal {
        return if s0 == Ordering::Equal { s1 } else { s0 };
    }
    let lhs = &a[0] * &a[0];
    let rhs = &a[1] * &a[1] * qi(2);
    match lhs.cmp(&rhs) {
        Ordering::Equal => Ordering::Equal,
        Ordering::Greater => s0,
        Ordering::Less => s1,
    }
}

fn mul_q2(a: &[Q; 2], b: &[Q; 2]) -> [Q; 2] {
    [
        &a[0] * &b[0] + &a[1] * &b[1] * qi(2),
        &a[0] * &b[1] + &a[1] * &b[0],
    ]
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational '{s}'"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarJson {
    pub c: Vec<String>,
    pub d: u64,
}

impl Default for Scalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<Q> for Scalar {
    fn from(q: Q) -> Self {
        Scalar::from_q(q)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> AddAssign<&'a Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.q += &rhs.q;
        if let Some(r) = &rhs.irr {
            match &mut self.irr {
                None => self.irr = Some(r.clone()),
                Some(s) => {
                    s.d = merge_d(s.d, r.d);
                    for k in 0..3 {
                        s.c[k] += &r.c[k];
                    }
                }
            }
            self.normalize();
        }
    }
}

impl<'a> SubAssign<&'a Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.q -= &rhs.q;
        if let Some(r) = &rhs.irr {
            match &mut self.irr {
                None => {
                    let mut n = r.clone();
                    for c in n.c.iter_mut() {
                        *c = -c.clone();
                    }
                    self.irr = Some(n);
                }
                Some(s) => {
                    s.d = merge_d(s.d, r.d);
                    for k in 0..3 {
                        s.c[k] -= &r.c[k];
                    }
                }
            }
            self.normalize();
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (&self.irr, &rhs.irr) {
            (None, None) => Scalar::from_q(&self.q * &rhs.q),
            (None, Some(_)) => rhs.mul_q(&self.q),
            (Some(_), None) => self.mul_q(&rhs.q),
            (Some(x), Some(y)) => {
                let d = merge_d(x.d, y.d);
                let dq = qi(d as i64);
                let two = qi(2);
                let (a0, a1, a2, a3) = (&self.q, &x.c[0], &x.c[1], &x.c[2]);
                let (b0, b1, b2, b3) = (&rhs.q, &y.c[0], &y.c[1], &y.c[2]);
                let c0 = a0 * b0 + &two * a1 * b1 + &dq * a2 * b2 + &two * &dq * a3 * b3;
                let c1 = a0 * b1 + a1 * b0 + &dq * (a2 * b3 + a3 * b2);
                let c2 = a0 * b2 + a2 * b0 + &two * (a1 * b3 + a3 * b1);
                let c3 = a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1;
                Scalar::from_coeffs([c0, c1, c2, c3], d)
            }
        }
    }
}

impl<'a> MulAssign<&'a Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.mul_q(&-Q::one())
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { self.$m(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coeffs();
        let d = self.radicand().unwrap_or(0);
        let names = [String::new(), "√2".to_string(), format!("√{d}"), format!("√{}", 2 * d)];
        let mut first = true;
        for (k, x) in c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let neg = x.is_negative();
            let a = x.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            if k == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", names[k])?;
            } else {
                write!(f, "{a}{}", names[k])?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Smallest positive integer k with `k·x` integral, for a rational `x`.
pub fn denom_lcm<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt2_squares_to_two() {
        let r = Scalar::sqrt2();
        assert_eq!(&r * &r, Scalar::int(2));
    }

    #[test]
    fn sqrt72_folds_into_sqrt2() {
        let s = Scalar::sqrt_of(72);
        assert_eq!(s, Scalar::sqrt2().mul_q(&qi(6)));
        assert!(s.radicand().is_none());
    }

    #[test]
    fn sqrt66_uses_odd_radicand() {
        let s = Scalar::sqrt_of(66);
        assert_eq!(s.radicand(), Some(33));
        assert_eq!(&s * &s, Scalar::int(66));
        let t = &s * &Scalar::sqrt2();
        assert_eq!(t, Scalar::sqrt_of(33).mul_q(&qi(2)));
    }

    #[test]
    fn inverse_in_biquadratic_field() {
        let x = Scalar::from_parts([qi(1), q(1, 2), qi(-3), q(2, 7)], 15);
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
        assert!(Scalar::zero().inv().is_err());
    }

    #[test]
    fn exact_signs() {
        let a = &Scalar::int(7) - &Scalar::sqrt_of(48);
        assert_eq!(a.signum(), Ordering::Greater);
        let b = &Scalar::sqrt_of(15) - &Scalar::sqrt_of(60).mul_q(&q(1, 2));
        assert_eq!(b.signum(), Ordering::Equal);
        assert!(b.is_zero());
        let c = &(&Scalar::sqrt2() + &Scalar::sqrt_of(3)) - &Scalar::sqrt_of(6).mul_q(&q(13, 10));
        assert_eq!(c.signum(), (c.to_f64()).partial_cmp(&0.0).unwrap());
    }

    #[test]
    fn display_and_json_roundtrip() {
        let x = Scalar::from_parts([q(-1, 2), qi(0), qi(3), qi(-1)], 5);
        assert_eq!(x.to_string(), "-1/2 + 3√5 - √10");
        let back = Scalar::from_json(&x.to_json()).unwrap();
        assert_eq!(back, x);
    }
}
