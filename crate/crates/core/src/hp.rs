//! Arbitrary precision real and complex numbers.
//!
//! Thin wrappers over `astro_float::BigFloat`. Arithmetic operators work at
//! the larger precision of the operands; transcendental functions go through
//! a [`Ctx`], which owns the constants cache.

use alloc::string::String;
use core::cell::RefCell;
use core::cmp::Ordering;
use core::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::{BigInt, Sign};
use num_rational::BigRational;

use crate::{Error, Result};

pub const DEFAULT_DIGITS: usize = 64;

const RM: RoundingMode = RoundingMode::ToEven;

/// Binary precision used for `digits` decimal digits (with guard bits).
pub fn bits_for_digits(digits: usize) -> usize {
    // log2(10) < 3.3220
    (digits * 33220).div_ceil(10000) + 64
}

#[derive(Clone, Debug)]
pub struct Real {
    v: BigFloat,
    p: usize,
}

#[derive(Clone, Debug)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

/// Precision and constants for transcendental functions.
pub struct Ctx {
    digits: usize,
    p: usize,
    cc: RefCell<Consts>,
}

impl core::fmt::Debug for Ctx {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Ctx").field("digits", &self.digits).field("bits", &self.p).finish()
    }
}

impl Ctx {
    pub fn new(digits: usize) -> Result<Ctx> {
        if digits == 0 {
            return Err(Error::Domain("precision must be positive".into()));
        }
        let cc = Consts::new().map_err(|_| Error::NonFinite("constants cache"))?;
        Ok(Ctx { digits, p: bits_for_digits(digits), cc: RefCell::new(cc) })
    }

    pub fn digits(&self) -> usize {
        self.digits
    }

    pub fn bits(&self) -> usize {
        self.p
    }

    fn wrap(&self, v: BigFloat) -> Real {
        Real { v, p: self.p }
    }

    pub fn int(&self, n: i64) -> Real {
        self.wrap(BigFloat::from_i64(n, self.p))
    }

    pub fn uint(&self, n: u64) -> Real {
        self.wrap(BigFloat::from_u64(n, self.p))
    }

    pub fn f64(&self, x: f64) -> Real {
        self.wrap(BigFloat::from_f64(x, self.p))
    }

    pub fn zero(&self) -> Real {
        self.int(0)
    }

    pub fn one(&self) -> Real {
        self.int(1)
    }

    /// `2^k` exactly.
    pub fn pow2(&self, k: i32) -> Real {
        let two = self.int(2);
        if k >= 0 {
            self.wrap(two.v.powi(k as usize, self.p, RM))
        } else {
            self.one() / self.wrap(two.v.powi(k.unsigned_abs() as usize, self.p, RM))
        }
    }

    /// `10^{-digits}`: the nominal resolution of this context.
    pub fn epsilon(&self) -> Real {
        let ten = self.int(10);
        self.one() / self.wrap(ten.v.powi(self.digits, self.p, RM))
    }

    pub fn rational(&self, q: &BigRational) -> Result<Real> {
        Ok(Real::from_rational(q, self.p))
    }

    /// Parses a decimal string such as `"2.5"`, `"-1e-3"` or `"355"`.
    pub fn parse(&self, s: &str) -> Result<Real> {
        let v = BigFloat::parse(s.trim(), Radix::Dec, self.p, RM, &mut self.cc.borrow_mut());
        let r = self.wrap(v);
        if !r.is_finite() {
            return Err(Error::Malformed(alloc::format!("not a decimal number: `{s}`")));
        }
        Ok(r)
    }

    pub fn pi(&self) -> Real {
        self.wrap(self.cc.borrow_mut().pi(self.p, RM))
    }

    pub fn exp(&self, x: &Real) -> Real {
        self.wrap(x.v.exp(self.p, RM, &mut self.cc.borrow_mut()))
    }

    pub fn ln(&self, x: &Real) -> Real {
        self.wrap(x.v.ln(self.p, RM, &mut self.cc.borrow_mut()))
    }

    pub fn sqrt(&self, x: &Real) -> Real {
        self.wrap(x.v.sqrt(self.p, RM))
    }

    pub fn sin(&self, x: &Real) -> Real {
        self.wrap(x.v.sin(self.p, RM, &mut self.cc.borrow_mut()))
    }

    pub fn cos(&self, x: &Real) -> Real {
        self.wrap(x.v.cos(self.p, RM, &mut self.cc.borrow_mut()))
    }

    pub fn atan(&self, x: &Real) -> Real {
        self.wrap(x.v.atan(self.p, RM, &mut self.cc.borrow_mut()))
    }

    /// Angle of `(x, y)` in `(-π, π]`.
    pub fn atan2(&self, y: &Real, x: &Real) -> Real {
        if x.is_zero() {
            let half = self.pi() / self.int(2);
            return if y.is_negative() { -half } else if y.is_zero() { self.zero() } else { half };
        }
        let a = self.atan(&(y.clone() / x.clone()));
        if !x.is_negative() {
            a
        } else if y.is_negative() {
            a - self.pi()
        } else {
            a + self.pi()
        }
    }

    /// Full-precision decimal string.
    pub fn format(&self, x: &Real) -> String {
        x.v.format(Radix::Dec, RM, &mut self.cc.borrow_mut()).unwrap_or_else(|_| "NaN".into())
    }

    /// Decimal string rounded to `digits` significant digits.
    pub fn format_digits(&self, x: &Real, digits: usize) -> String {
        let mut v = x.v.clone();
        let p = bits_for_digits(digits).saturating_sub(64).max(8);
        let _ = v.set_precision(p, RM);
        v.format(Radix::Dec, RM, &mut self.cc.borrow_mut()).unwrap_or_else(|_| "NaN".into())
    }

    pub fn to_f64(&self, x: &Real) -> f64 {
        self.format_digits(x, 20).parse::<f64>().unwrap_or(f64::NAN)
    }

    /// Parses `"2"`, `"2.5"`, `"2+3i"`, `"1-0.5i"`, `"3i"` or `"-i"`.
    pub fn parse_complex(&self, s: &str) -> Result<Complex> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Malformed(alloc::format!("not a complex number: `{s}`"));
        if t.is_empty() {
            return Err(bad());
        }
        let Some(body) = t.strip_suffix('i') else {
            return Ok(Complex { re: self.parse(&t)?, im: self.zero() });
        };
        // split at the last sign that is not part of an exponent
        let bytes = body.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            if (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
                split = Some(k);
                break;
            }
        }
        let (re, im) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => "1",
            "-" => "-1",
            x => x,
        };
        let im = im.strip_prefix('+').unwrap_or(im);
        Ok(Complex { re: self.parse(re).map_err(|_| bad())?, im: self.parse(im).map_err(|_| bad())? })
    }

    pub fn complex(&self, re: f64, im: f64) -> Complex {
        Complex { re: self.f64(re), im: self.f64(im) }
    }

    pub fn cexp(&self, z: &Complex) -> Complex {
        let r = self.exp(&z.re);
        if z.im.is_zero() {
            return Complex { re: r, im: self.zero() };
        }
        Complex { re: r.clone() * self.cos(&z.im), im: r * self.sin(&z.im) }
    }

    /// Principal logarithm.
    pub fn cln(&self, z: &Complex) -> Complex {
        Complex { re: self.ln(&z.abs(self)), im: self.atan2(&z.im, &z.re) }
    }

    /// `b^z` for a real base `b > 0`.
    pub fn cpow_real(&self, b: &Real, z: &Complex) -> Complex {
        let l = self.ln(b);
        self.cexp(&z.scale(&l))
    }

    /// `exp(w · ln x)` for real `x > 0`.
    pub fn pow_real_complex(&self, x: &Real, w: &Complex) -> Complex {
        self.cpow_real(x, w)
    }
}

impl Real {
    pub fn from_bigint(n: &BigInt, p: usize) -> Real {
        let base = BigFloat::from_u64(u64::MAX, p).add(&BigFloat::from_u64(1, p), p, RM);
        let mut v = BigFloat::from_u64(0, p);
        for limb in n.magnitude().iter_u64_digits().rev() {
            v = v.mul(&base, p, RM).add(&BigFloat::from_u64(limb, p), p, RM);
        }
        if n.sign() == Sign::Minus {
            v = v.neg();
        }
        Real { v, p }
    }

    pub fn from_rational(q: &BigRational, p: usize) -> Real {
        Real::from_bigint(q.numer(), p) / Real::from_bigint(q.denom(), p)
    }

    pub fn is_finite(&self) -> bool {
        !(self.v.is_nan() || self.v.is_inf())
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.v.is_negative() && !self.v.is_zero()
    }

    pub fn abs(&self) -> Real {
        Real { v: self.v.abs(), p: self.p }
    }

    pub fn recip(&self) -> Real {
        Real { v: BigFloat::from_i64(1, self.p).div(&self.v, self.p, RM), p: self.p }
    }

    pub fn floor(&self) -> Real {
        Real { v: self.v.floor(), p: self.p }
    }

    /// Fails with `NonFinite` if the value is NaN or infinite.
    pub fn finite(self, what: &'static str) -> Result<Real> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(Error::NonFinite(what))
        }
    }

    pub fn max(self, other: Real) -> Real {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn precision(&self) -> usize {
        self.p
    }

    pub fn inner(&self) -> &BigFloat {
        &self.v
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Real) -> bool {
        self.v.partial_cmp(&other.v) == Some(Ordering::Equal)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Real) -> Option<Ordering> {
        self.v.partial_cmp(&other.v)
    }
}

macro_rules! real_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                let p = self.p.max(rhs.p);
                Real { v: self.v.$m(&rhs.v, p, RM), p }
            }
        }
        impl $tr<Real> for Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Real> for Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                (&self).$m(rhs)
            }
        }
    };
}

real_binop!(Add, add);
real_binop!(Sub, sub);
real_binop!(Mul, mul);
real_binop!(Div, div);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real { v: self.v.neg(), p: self.p }
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real { v: self.v.clone().neg(), p: self.p }
    }
}

impl Complex {
    pub fn real(re: Real, ctx: &Ctx) -> Complex {
        Complex { re, im: ctx.zero() }
    }

    pub fn new(re: Real, im: Real) -> Complex {
        Complex { re, im }
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn finite(self, what: &'static str) -> Result<Complex> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(Error::NonFinite(what))
        }
    }

    pub fn norm_sqr(&self) -> Real {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn abs(&self, ctx: &Ctx) -> Real {
        ctx.sqrt(&self.norm_sqr())
    }

    pub fn conj(&self) -> Complex {
        Complex { re: self.re.clone(), im: -&self.im }
    }

    pub fn scale(&self, k: &Real) -> Complex {
        Complex { re: &self.re * k, im: &self.im * k }
    }

    pub fn recip(&self) -> Complex {
        let n = self.norm_sqr();
        Complex { re: &self.re / &n, im: -(&self.im / &n) }
    }
}

impl Add<&Complex> for &Complex {
    type Output = Complex;
    fn add(self, o: &Complex) -> Complex {
        Complex { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Sub<&Complex> for &Complex {
    type Output = Complex;
    fn sub(self, o: &Complex) -> Complex {
        Complex { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl Mul<&Complex> for &Complex {
    type Output = Complex;
    fn mul(self, o: &Complex) -> Complex {
        Complex { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }
}

impl Div<&Complex> for &Complex {
    type Output = Complex;
    fn div(self, o: &Complex) -> Complex {
        self * &o.recip()
    }
}

macro_rules! complex_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Complex> for Complex {
            type Output = Complex;
            fn $m(self, rhs: Complex) -> Complex {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Complex> for Complex {
            type Output = Complex;
            fn $m(self, rhs: &Complex) -> Complex {
                (&self).$m(rhs)
            }
        }
    };
}

complex_owned!(Add, add);
complex_owned!(Sub, sub);
complex_owned!(Mul, mul);
complex_owned!(Div, div);

impl Neg for Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex { re: -self.re, im: -self.im }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_constants() {
        let c = Ctx::new(40).unwrap();
        let pi = c.pi();
        assert!((c.to_f64(&pi) - core::f64::consts::PI).abs() < 1e-15);
        let x = c.int(1) / c.int(3);
        let y = &x * &c.int(3);
        assert!((y - c.one()).abs() < c.epsilon());
        assert_eq!(c.to_f64(&c.parse("-2.5e-3").unwrap()), -0.0025);
        assert!((c.to_f64(&c.rational(&crate::rational::rat(22, 7)).unwrap()) - 22.0 / 7.0).abs() < 1e-15);
        let big: BigInt = "-123456789012345678901234567890123".parse().unwrap();
        let r = Real::from_bigint(&big, c.bits());
        assert_eq!(c.format_digits(&r, 33), c.format_digits(&c.parse("-123456789012345678901234567890123").unwrap(), 33));
    }

    #[test]
    fn complex_exponential() {
        let c = Ctx::new(30).unwrap();
        // e^{iπ} = −1
        let z = Complex::new(c.zero(), c.pi());
        let w = c.cexp(&z);
        assert!((w.re + c.one()).abs() < c.epsilon());
        assert!(w.im.abs() < c.epsilon());
        let l = c.cln(&Complex::new(c.zero(), c.one()));
        assert!((l.im - c.pi() / c.int(2)).abs() < c.epsilon());
    }

    #[test]
    fn complex_parsing() {
        let c = Ctx::new(20).unwrap();
        for (s, re, im) in [("2", 2.0, 0.0), ("2+3i", 2.0, 3.0), ("1-0.5i", 1.0, -0.5), ("3i", 0.0, 3.0), ("-i", 0.0, -1.0), ("1e-2+1e+1i", 0.01, 10.0)] {
            let z = c.parse_complex(s).unwrap();
            assert_eq!((c.to_f64(&z.re), c.to_f64(&z.im)), (re, im), "{s}");
        }
        assert!(c.parse_complex("2+xi").is_err());
        assert!(c.parse_complex("").is_err());
    }

    #[test]
    fn epsilon_scales_with_digits() {
        let c = Ctx::new(64).unwrap();
        assert!(c.to_f64(&c.epsilon()) < 1.1e-64);
        assert!(c.bits() >= 64 * 3 + 64);
    }
}
