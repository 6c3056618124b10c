//! Arakelov divisors on `Spec Z-bar`.
//!
//! A divisor is a finitely supported family of exponents `e_p` (standing
//! for `n_p = p^{e_p}`) together with a positive archimedean component
//! `n_∞`. Its norm is `n_∞ · ∏ p^{e_p}`; principal divisors are those of
//! norm one, so the norm is a complete invariant of the class.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::hp::{Ctx, Real};
use crate::presentation::congruence::Verdict;
use crate::rational::{format_rational, is_probable_prime, valuation, BigRational, Factorize};
use crate::{Error, Result};

/// The archimedean component `n_∞ > 0`.
#[derive(Clone, Debug)]
pub enum Archimedean {
    Rational(BigRational),
    Real(Real),
}

impl Archimedean {
    pub fn is_rational(&self) -> bool {
        matches!(self, Archimedean::Rational(_))
    }
}

#[derive(Clone, Debug)]
pub struct ArakelovDivisor {
    finite: BTreeMap<BigUint, i64>,
    inf: Archimedean,
}

/// A positive norm, exact or known to a radius.
#[derive(Clone, Debug)]
pub enum Norm {
    Exact(BigRational),
    Approx { value: Real, radius: Real },
}

impl Norm {
    pub fn to_real(&self, ctx: &Ctx) -> Real {
        match self {
            Norm::Exact(q) => Real::from_rational(q, ctx.bits()),
            Norm::Approx { value, .. } => value.clone(),
        }
    }

    pub fn radius(&self, ctx: &Ctx) -> Real {
        match self {
            Norm::Exact(_) => ctx.zero(),
            Norm::Approx { radius, .. } => radius.clone(),
        }
    }

    /// Decides `self = other`, or `Unknown` when the radii overlap.
    pub fn equals(&self, other: &Norm, ctx: &Ctx) -> Verdict {
        if let (Norm::Exact(a), Norm::Exact(b)) = (self, other) {
            return if a == b { Verdict::Yes(()) } else { Verdict::No(()) };
        }
        let gap = (self.to_real(ctx) - other.to_real(ctx)).abs();
        if gap > self.radius(ctx) + other.radius(ctx) {
            Verdict::No(())
        } else {
            Verdict::Unknown
        }
    }
}

/// Relative precision guaranteed for approximate archimedean components.
fn relative_radius(ctx: &Ctx) -> Real {
    ctx.epsilon()
}

fn check_prime(p: &BigUint) -> Result<()> {
    if is_probable_prime(p) {
        Ok(())
    } else {
        Err(Error::Domain(alloc::format!("{p} is not prime")))
    }
}

impl ArakelovDivisor {
    pub fn zero() -> ArakelovDivisor {
        ArakelovDivisor { finite: BTreeMap::new(), inf: Archimedean::Rational(BigRational::one()) }
    }

    pub fn new(finite: BTreeMap<BigUint, i64>, inf: Archimedean) -> Result<ArakelovDivisor> {
        for p in finite.keys() {
            check_prime(p)?;
        }
        let positive = match &inf {
            Archimedean::Rational(q) => q.is_positive(),
            Archimedean::Real(r) => r.is_finite() && !r.is_negative() && !r.is_zero(),
        };
        if !positive {
            return Err(Error::Domain("archimedean component must be positive".into()));
        }
        let finite = finite.into_iter().filter(|(_, e)| *e != 0).collect();
        Ok(ArakelovDivisor { finite, inf })
    }

    pub fn finite(&self) -> &BTreeMap<BigUint, i64> {
        &self.finite
    }

    pub fn exponent(&self, p: &BigUint) -> i64 {
        self.finite.get(p).copied().unwrap_or(0)
    }

    pub fn archimedean(&self) -> &Archimedean {
        &self.inf
    }

    fn product(a: &Archimedean, b: &Archimedean) -> Archimedean {
        match (a, b) {
            (Archimedean::Rational(x), Archimedean::Rational(y)) => Archimedean::Rational(x * y),
            (Archimedean::Real(x), Archimedean::Real(y)) => Archimedean::Real(x * y),
            (Archimedean::Real(x), Archimedean::Rational(q)) | (Archimedean::Rational(q), Archimedean::Real(x)) => {
                Archimedean::Real(x * &Real::from_rational(q, x.precision()))
            }
        }
    }

    pub fn add(&self, other: &ArakelovDivisor) -> ArakelovDivisor {
        let mut finite = self.finite.clone();
        for (p, e) in &other.finite {
            *finite.entry(p.clone()).or_insert(0) += e;
        }
        finite.retain(|_, e| *e != 0);
        ArakelovDivisor { finite, inf: Self::product(&self.inf, &other.inf) }
    }

    pub fn neg(&self) -> ArakelovDivisor {
        let finite = self.finite.iter().map(|(p, e)| (p.clone(), -e)).collect();
        let inf = match &self.inf {
            Archimedean::Rational(q) => Archimedean::Rational(q.recip()),
            Archimedean::Real(r) => Archimedean::Real(r.recip()),
        };
        ArakelovDivisor { finite, inf }
    }

    pub fn is_zero(&self) -> bool {
        self.finite.is_empty() && matches!(&self.inf, Archimedean::Rational(q) if q.is_one())
    }

    /// Exact equality; approximate components compare by value.
    pub fn same(&self, other: &ArakelovDivisor) -> bool {
        self.finite == other.finite
            && match (&self.inf, &other.inf) {
                (Archimedean::Rational(a), Archimedean::Rational(b)) => a == b,
                (Archimedean::Real(a), Archimedean::Real(b)) => a == b,
                _ => false,
            }
    }
}

fn finite_part(d: &ArakelovDivisor) -> BigRational {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (p, e) in &d.finite {
        let pe = num_traits::pow(BigInt::from(p.clone()), e.unsigned_abs() as usize);
        if *e > 0 {
            num *= pe;
        } else {
            den *= pe;
        }
    }
    BigRational::new(num, den)
}

/// `N(D) = n_∞ · ∏ p^{e_p}`.
pub fn norm(d: &ArakelovDivisor, ctx: &Ctx) -> Norm {
    let f = finite_part(d);
    match &d.inf {
        Archimedean::Rational(q) => Norm::Exact(q * f),
        Archimedean::Real(r) => {
            let value = r * &Real::from_rational(&f, r.precision().max(ctx.bits()));
            let radius = value.abs() * relative_radius(ctx);
            Norm::Approx { value, radius }
        }
    }
}

/// The divisor with `n_p = ‖q‖_p` at every place.
pub fn divisor_of_rational(q: &BigRational, f: &impl Factorize) -> Result<ArakelovDivisor> {
    if q.is_zero() {
        return Err(Error::ZeroRational);
    }
    let mut finite = BTreeMap::new();
    for n in [q.numer().magnitude(), q.denom().magnitude()] {
        for (p, _) in f.factorize(n) {
            if let Some(v) = valuation(q, &p) {
                finite.insert(p, -v);
            }
        }
    }
    ArakelovDivisor::new(finite, Archimedean::Rational(q.abs()))
}

/// The images `φ_p(1) ∈ Q^×` of a trivialized line bundle. Places that are
/// not listed carry `1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrivializationData {
    finite: BTreeMap<BigUint, BigRational>,
    inf: BigRational,
}

impl TrivializationData {
    pub fn new(finite: BTreeMap<BigUint, BigRational>, inf: BigRational) -> Result<TrivializationData> {
        for (p, x) in &finite {
            check_prime(p)?;
            if x.is_zero() {
                return Err(Error::ZeroRational);
            }
        }
        if inf.is_zero() {
            return Err(Error::ZeroRational);
        }
        Ok(TrivializationData { finite, inf })
    }

    pub fn trivial() -> TrivializationData {
        TrivializationData { finite: BTreeMap::new(), inf: BigRational::one() }
    }

    /// Every `φ_p(1)` multiplied by `q`, including the unlisted places.
    pub fn rescaled(&self, q: &BigRational, f: &impl Factorize) -> Result<TrivializationData> {
        if q.is_zero() {
            return Err(Error::ZeroRational);
        }
        let mut finite: BTreeMap<_, _> = self.finite.iter().map(|(p, x)| (p.clone(), x * q)).collect();
        for n in [q.numer().magnitude(), q.denom().magnitude()] {
            for (p, _) in f.factorize(n) {
                finite.entry(p).or_insert_with(|| q.clone());
            }
        }
        Ok(TrivializationData { finite, inf: &self.inf * q })
    }
}

/// `e_p = −v_p(φ_p(1))` and `n_∞ = |φ_∞(1)|`.
pub fn divisor_from_trivialization(t: &TrivializationData) -> Result<ArakelovDivisor> {
    let finite = t.finite.iter().filter_map(|(p, x)| valuation(x, p).map(|v| (p.clone(), -v))).collect();
    ArakelovDivisor::new(finite, Archimedean::Rational(t.inf.abs()))
}

/// Whether the norm is one; `Unknown` inside the precision radius.
pub fn is_principal(d: &ArakelovDivisor, ctx: &Ctx) -> Verdict {
    norm(d, ctx).equals(&Norm::Exact(BigRational::one()), ctx)
}

/// A class in `Cl X`, represented by its norm.
#[derive(Clone, Debug)]
pub struct DivisorClass {
    pub norm: Norm,
}

pub fn class_of(d: &ArakelovDivisor, ctx: &Ctx) -> DivisorClass {
    DivisorClass { norm: norm(d, ctx) }
}

impl DivisorClass {
    pub fn equals(&self, other: &DivisorClass, ctx: &Ctx) -> Verdict {
        self.norm.equals(&other.norm, ctx)
    }
}

/// Whether the class of `d` lies in the image of `Pic X`: exactly when
/// the archimedean component is a positive rational.
pub fn pic_image_check(d: &ArakelovDivisor) -> bool {
    d.inf.is_rational()
}

#[derive(Clone, Debug)]
pub enum Target {
    Rational(BigRational),
    Real(Real),
}

/// A divisor in the image of `Pic X` whose norm is within `eps` of `t`,
/// found among the continued-fraction convergents of `t`.
pub fn density_witness(t: &Target, eps: &Real, ctx: &Ctx) -> Result<ArakelovDivisor> {
    let x = match t {
        Target::Rational(q) => {
            if !q.is_positive() {
                return Err(Error::Domain("target must be positive".into()));
            }
            return ArakelovDivisor::new(BTreeMap::new(), Archimedean::Rational(q.clone()));
        }
        Target::Real(r) => r.clone(),
    };
    if !(x > ctx.zero()) || !(*eps > ctx.zero()) {
        return Err(Error::Domain("target and tolerance must be positive".into()));
    }
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut rest = x.clone();
    for _ in 0..10_000 {
        let a_real = rest.floor();
        let a = parse_integer(&ctx.format_digits(&a_real, ctx.digits()))?;
        let h = &a * &h1 + &h0;
        let k = &a * &k1 + &k0;
        (h0, h1) = (h1, h.clone());
        (k0, k1) = (k1, k.clone());
        if h.is_positive() {
            let q = BigRational::new(h, k);
            if (Real::from_rational(&q, ctx.bits()) - x.clone()).abs() < *eps {
                return ArakelovDivisor::new(BTreeMap::new(), Archimedean::Rational(q));
            }
        }
        let frac = rest - a_real;
        if frac.is_zero() {
            break;
        }
        rest = frac.recip();
    }
    Err(Error::Domain("no convergent within tolerance at this precision".into()))
}

/// Integer value of a decimal rendering such as `"3"`, `"3.0"` or `"1.2e3"`.
fn parse_integer(s: &str) -> Result<BigInt> {
    let bad = || Error::Malformed(alloc::format!("not an integer: `{s}`"));
    let (mant, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i64>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    let digits: String = [int, frac].concat();
    let mut n: BigInt = digits.parse().map_err(|_| bad())?;
    let shift = exp - frac.len() as i64;
    let ten = BigInt::from(10);
    if shift >= 0 {
        n *= num_traits::pow(ten, shift as usize);
    } else {
        let (q, r) = n.div_rem(&num_traits::pow(ten, shift.unsigned_abs() as usize));
        if !r.is_zero() {
            return Err(bad());
        }
        n = q;
    }
    Ok(if neg { -n } else { n })
}

impl fmt::Display for ArakelovDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.finite.iter().map(|(p, e)| alloc::format!("{e}·[{p}]")).collect();
        match &self.inf {
            Archimedean::Rational(q) => parts.push(alloc::format!("{}·[inf]", format_rational(q))),
            Archimedean::Real(r) => parts.push(alloc::format!("{:?}·[inf]", r.inner())),
        }
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, Factorizer};
    use proptest::prelude::*;

    fn ctx() -> Ctx {
        Ctx::new(64).unwrap()
    }

    fn div(pairs: &[(u64, i64)], inf: BigRational) -> ArakelovDivisor {
        let finite = pairs.iter().map(|&(p, e)| (BigUint::from(p), e)).collect();
        ArakelovDivisor::new(finite, Archimedean::Rational(inf)).unwrap()
    }

    fn exact(n: Norm) -> BigRational {
        match n {
            Norm::Exact(q) => q,
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn group_law() {
        let d = div(&[(2, 1), (5, -3)], rat(7, 3));
        assert!(d.add(&d.neg()).is_zero());
        let a = div(&[(2, 1)], rat(1, 1));
        let b = div(&[(2, -1)], rat(2, 1));
        assert!(a.add(&b).same(&div(&[], rat(2, 1))));
        assert!(ArakelovDivisor::new(BTreeMap::new(), Archimedean::Rational(rat(-1, 2))).is_err());
        assert!(ArakelovDivisor::new([(BigUint::from(4u32), 1)].into(), Archimedean::Rational(rat(1, 1))).is_err());
    }

    #[test]
    fn norms() {
        let c = ctx();
        assert_eq!(exact(norm(&ArakelovDivisor::zero(), &c)), rat(1, 1));
        assert_eq!(exact(norm(&div(&[(2, 1), (3, -1)], rat(3, 2)), &c)), rat(1, 1));
        let e = ArakelovDivisor::new(BTreeMap::new(), Archimedean::Real(c.exp(&c.one()))).unwrap();
        let n = norm(&e, &c).to_real(&c);
        assert!((c.to_f64(&n) - core::f64::consts::E).abs() < 1e-15);
    }

    #[test]
    fn rational_divisors() {
        let d = divisor_of_rational(&rat(3, 2), &Factorizer).unwrap();
        assert!(d.same(&div(&[(2, 1), (3, -1)], rat(3, 2))));
        assert!(divisor_of_rational(&rat(1, 1), &Factorizer).unwrap().is_zero());
        let d = divisor_of_rational(&rat(-5, 1), &Factorizer).unwrap();
        assert!(d.same(&div(&[(5, -1)], rat(5, 1))));
        assert_eq!(divisor_of_rational(&rat(0, 1), &Factorizer).unwrap_err(), Error::ZeroRational);
    }

    #[test]
    fn trivializations() {
        assert!(divisor_from_trivialization(&TrivializationData::trivial()).unwrap().is_zero());
        let t = TrivializationData::new([(BigUint::from(2u32), rat(1, 2))].into(), rat(1, 1)).unwrap();
        let d = divisor_from_trivialization(&t).unwrap();
        assert_eq!(d.exponent(&BigUint::from(2u32)), 1);
        let c = ctx();
        assert_eq!(exact(norm(&d, &c)), rat(2, 1));
        let q = rat(-45, 14);
        let shifted = divisor_from_trivialization(&t.rescaled(&q, &Factorizer).unwrap()).unwrap();
        let expected = d.add(&divisor_of_rational(&q, &Factorizer).unwrap());
        assert!(shifted.same(&expected));
        assert!(class_of(&shifted, &c).equals(&class_of(&d, &c), &c).is_yes());
    }

    #[test]
    fn principality() {
        let c = ctx();
        assert!(is_principal(&div(&[], rat(2, 1)), &c).is_no());
        let tiny = c.one() + c.parse("1e-80").unwrap();
        let d = ArakelovDivisor::new(BTreeMap::new(), Archimedean::Real(tiny)).unwrap();
        assert!(is_principal(&d, &c).is_unknown());
        let far = ArakelovDivisor::new(BTreeMap::new(), Archimedean::Real(c.parse("1.5").unwrap())).unwrap();
        assert!(is_principal(&far, &c).is_no());
    }

    #[test]
    fn classes_and_pic() {
        let c = ctx();
        let z = class_of(&ArakelovDivisor::zero(), &c);
        let q = class_of(&divisor_of_rational(&rat(77, 12), &Factorizer).unwrap(), &c);
        assert!(z.equals(&q, &c).is_yes());
        let d = div(&[], rat(5, 3));
        assert!(pic_image_check(&d));
        assert_eq!(exact(class_of(&d, &c).norm), rat(5, 3));
        let r2 = ArakelovDivisor::new(BTreeMap::new(), Archimedean::Real(c.sqrt(&c.int(2)))).unwrap();
        assert!(!pic_image_check(&r2));
        assert!(pic_image_check(&div(&[(3, 2)], rat(1, 9)).add(&d.neg())));
    }

    #[test]
    fn density() {
        let c = ctx();
        let eps = c.parse("1e-6").unwrap();
        let d = density_witness(&Target::Real(c.pi()), &eps, &c).unwrap();
        let Archimedean::Rational(q) = d.archimedean() else { panic!() };
        assert_eq!(*q, rat(355, 113));
        assert!(pic_image_check(&d));
        let d = density_witness(&Target::Rational(rat(7, 5)), &eps, &c).unwrap();
        assert!(d.same(&div(&[], rat(7, 5))));
        assert!(density_witness(&Target::Rational(rat(1, 1)), &eps, &c).unwrap().is_zero());
        let small = density_witness(&Target::Real(c.parse("0.001234567").unwrap()), &c.parse("1e-12").unwrap(), &c).unwrap();
        let n = norm(&small, &c).to_real(&c);
        assert!((n - c.parse("0.001234567").unwrap()).abs() < c.parse("1e-12").unwrap());
        assert_eq!(parse_integer("1.2e3").unwrap(), BigInt::from(1200));
    }

    fn arb_rational() -> impl Strategy<Value = BigRational> {
        (1i64..1_000_000, 1i64..1_000_000, any::<bool>()).prop_map(|(n, d, neg)| rat(if neg { -n } else { n }, d))
    }

    proptest! {
        #[test]
        fn product_formula(q in arb_rational()) {
            let c = ctx();
            let d = divisor_of_rational(&q, &Factorizer).unwrap();
            prop_assert_eq!(exact(norm(&d, &c)), rat(1, 1));
            prop_assert!(is_principal(&d, &c).is_yes());
            prop_assert!(pic_image_check(&d));
        }

        #[test]
        fn homomorphisms(q in arb_rational(), r in arb_rational(), s in arb_rational()) {
            let c = ctx();
            let (dq, dr, ds) = (
                divisor_of_rational(&q, &Factorizer).unwrap(),
                divisor_of_rational(&r, &Factorizer).unwrap(),
                divisor_of_rational(&s, &Factorizer).unwrap(),
            );
            prop_assert!(divisor_of_rational(&(&q * &r), &Factorizer).unwrap().same(&dq.add(&dr)));
            prop_assert!(dq.add(&dr).add(&ds).same(&dq.add(&dr.add(&ds))));
            let a = div(&[(2, 3)], q.abs());
            let b = div(&[(3, -1), (2, -1)], r.abs());
            prop_assert_eq!(exact(norm(&a.add(&b), &c)), exact(norm(&a, &c)) * exact(norm(&b, &c)));
        }
    }
}
