//! Measures on the ideal spaces of the stalks and the local zeta factors.
//!
//! At a finite prime `p` the ideals `(p^l)` carry the weights `p^{-ls}`; at
//! the archimedean place the ideals are parametrized by `a ∈ [0, 1]` with
//! density `π^{-s/2} (−ln a)^{s/2−1}`. Substituting `t = −ln a` turns the
//! archimedean measure of an interval into an incomplete gamma integral,
//! evaluated by its power series near zero and a continued fraction for
//! the tail.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::hp::{Complex, Ctx, Real, DEFAULT_DIGITS};
use crate::rational::{is_prime_u64, primes_up_to};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZetaConfig {
    /// Cutoff of the series at finite places.
    pub l_max: u64,
    /// Largest prime in Euler products.
    pub prime_bound: u64,
    /// Required absolute accuracy of archimedean measures.
    pub quad_tol: f64,
    /// Working precision in decimal digits.
    pub digits: usize,
}

impl Default for ZetaConfig {
    fn default() -> Self {
        ZetaConfig { l_max: 200, prime_bound: 100_000, quad_tol: 1e-12, digits: DEFAULT_DIGITS }
    }
}

pub const MAX_PRIME_BOUND: u64 = 10_000_000;

/// A value with an upper bound on its absolute error.
#[derive(Clone, Debug)]
pub struct Estimate {
    pub value: Complex,
    pub error: Real,
}

/// `N ∪ {∞}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ext {
    Finite(u64),
    Infinite,
}

/// A basic open set `U_{b,c}` of an ideal space.
#[derive(Clone, Debug)]
pub enum BasisSet {
    /// `{(p^l) : b ≤ l ≤ c}`.
    Finite { p: u64, b: Ext, c: Ext },
    /// Ideals with bound `a` between `b` and `c`.
    Infinite { b: Real, c: Real },
}

impl BasisSet {
    pub fn finite(p: u64, b: Ext, c: Ext) -> Result<BasisSet> {
        if !is_prime_u64(p) {
            return Err(Error::Domain(alloc::format!("{p} is not prime")));
        }
        if b > c {
            return Err(Error::Domain("basis bounds out of order".into()));
        }
        Ok(BasisSet::Finite { p, b, c })
    }

    /// Whether `(p^l)` (with `l = ∞` for `(0)`) belongs to the set.
    pub fn contains_power(&self, l: Ext) -> bool {
        match self {
            BasisSet::Finite { b, c, .. } => *b <= l && l <= *c,
            BasisSet::Infinite { .. } => false,
        }
    }
}

/// Numerical engine holding precision, constants and Stirling coefficients.
pub struct Zeta {
    ctx: Ctx,
    cfg: ZetaConfig,
    /// `B_{2k} / (2k (2k−1))` for `k = 1, 2, …`.
    stirling: Vec<Real>,
}

impl core::fmt::Debug for Zeta {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Zeta").field("cfg", &self.cfg).finish()
    }
}

/// `B_0, …, B_n`.
pub fn bernoulli_numbers(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    let mut binom_row: Vec<BigInt> = alloc::vec![BigInt::one()];
    for m in 0..=n {
        // binom_row = row m+1 of Pascal's triangle
        let mut next = alloc::vec![BigInt::one(); binom_row.len() + 1];
        for j in 1..binom_row.len() {
            next[j] = &binom_row[j - 1] + &binom_row[j];
        }
        binom_row = next;
        if m == 0 {
            b.push(BigRational::one());
            continue;
        }
        if m > 1 && m % 2 == 1 {
            b.push(BigRational::zero());
            continue;
        }
        let mut acc = BigRational::zero();
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                acc += BigRational::from_integer(binom_row[j].clone()) * bj;
            }
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(m as u64 + 1)));
    }
    b
}

fn check_finite(z: Complex, what: &'static str) -> Result<Complex> {
    z.finite(what)
}

impl Zeta {
    pub fn new(cfg: ZetaConfig) -> Result<Zeta> {
        if cfg.l_max == 0 || cfg.prime_bound == 0 || !(cfg.quad_tol > 0.0) || cfg.digits == 0 {
            return Err(Error::Domain("configuration values must be positive".into()));
        }
        if cfg.prime_bound > MAX_PRIME_BOUND {
            return Err(Error::Domain(alloc::format!("prime bound above {MAX_PRIME_BOUND}")));
        }
        let ctx = Ctx::new(cfg.digits)?;
        let kmax = cfg.digits + 10;
        let bern = bernoulli_numbers(2 * kmax);
        let mut stirling = Vec::with_capacity(kmax);
        for k in 1..=kmax {
            let d = BigRational::from_integer(BigInt::from((2 * k * (2 * k - 1)) as u64));
            stirling.push(ctx.rational(&(&bern[2 * k] / d))?);
        }
        Ok(Zeta { ctx, cfg, stirling })
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn config(&self) -> &ZetaConfig {
        &self.cfg
    }

    fn eps(&self) -> Real {
        self.ctx.epsilon()
    }

    /// `p^{-s}`.
    fn inv_power(&self, p: u64, s: &Complex) -> Complex {
        let lp = self.ctx.ln(&self.ctx.uint(p));
        self.ctx.cexp(&(-s.scale(&lp)))
    }

    /// `μ_{p,s}(U_{b,c}) = Σ_{l=b}^{c} p^{-ls}`.
    pub fn mu_p(&self, p: u64, s: &Complex, b: Ext, c: Ext) -> Result<Complex> {
        let basis = BasisSet::finite(p, b, c)?;
        let BasisSet::Finite { b, c, .. } = basis else { unreachable!() };
        let ctx = &self.ctx;
        let zero = Complex::real(ctx.zero(), ctx);
        if c == Ext::Infinite && !(s.re > ctx.zero()) {
            return Err(Error::Divergence(alloc::format!("infinite series at p = {p} needs Re(s) > 0")));
        }
        let Ext::Finite(b) = b else {
            return Ok(zero);
        };
        let w = self.inv_power(p, s);
        let lp = ctx.ln(&ctx.uint(p));
        let first = ctx.cexp(&(-s.scale(&(&lp * &ctx.uint(b)))));
        let one = Complex::real(ctx.one(), ctx);
        let v = match c {
            Ext::Infinite => &first / &(&one - &w),
            Ext::Finite(c) if c - b <= 10_000 => {
                let mut term = first;
                let mut acc = zero;
                for _ in b..=c {
                    acc = &acc + &term;
                    term = &term * &w;
                }
                acc
            }
            Ext::Finite(c) => {
                let n = ctx.uint(c - b + 1);
                let wn = ctx.cexp(&(-s.scale(&(&lp * &n))));
                &(&first * &(&one - &wn)) / &(&one - &w)
            }
        };
        check_finite(v, "mu_p")
    }

    /// The measure of a basic open set at either kind of place.
    pub fn measure(&self, u: &BasisSet, s: &Complex) -> Result<Complex> {
        match u {
            BasisSet::Finite { p, b, c } => self.mu_p(*p, s, *b, *c),
            BasisSet::Infinite { b, c } => Ok(self.mu_inf(s, b, c)?.value),
        }
    }

    /// `∫_{I_p} dμ_{p,s}`: the series truncated once its certified geometric
    /// tail drops below the working precision, or at `l_max`.
    pub fn zeta_p_integral(&self, p: u64, s: &Complex) -> Result<Estimate> {
        self.regime(s)?;
        if !is_prime_u64(p) {
            return Err(Error::Domain(alloc::format!("{p} is not prime")));
        }
        let ctx = &self.ctx;
        let w = self.inv_power(p, s);
        let r = w.abs(ctx);
        let one = ctx.one();
        let geometric = &one / &(&one - &r);
        let target = self.eps() * ctx.uint(1 << 10).recip();
        let mut acc = Complex::real(ctx.zero(), ctx);
        let mut term = Complex::real(ctx.one(), ctx);
        let mut rl = ctx.one();
        let mut l = 0;
        loop {
            acc = &acc + &term;
            term = &term * &w;
            rl = &rl * &r;
            l += 1;
            if l > self.cfg.l_max || &rl * &geometric < target {
                break;
            }
        }
        let tail = &rl * &geometric;
        let rounding = self.eps() * ctx.uint(l + 4) * geometric;
        Ok(Estimate { value: check_finite(acc, "zeta_p_integral")?, error: tail + rounding })
    }

    /// `1 / (1 − p^{-s})`.
    pub fn zeta_p_closed(&self, p: u64, s: &Complex) -> Result<Complex> {
        if !(s.re > self.ctx.zero()) {
            return Err(Error::Regime("local factor needs Re(s) > 0".into()));
        }
        let one = Complex::real(self.ctx.one(), &self.ctx);
        check_finite(&one / &(&one - &self.inv_power(p, s)), "zeta_p_closed")
    }

    fn regime(&self, s: &Complex) -> Result<()> {
        if s.re > self.ctx.one() {
            Ok(())
        } else {
            Err(Error::Regime(alloc::format!("Re(s) = {} is not > 1", self.ctx.format_digits(&s.re, 12))))
        }
    }

    /// `ln Γ(z)` for `Re(z) > 0`, by upward shift and the Stirling series.
    fn ln_gamma(&self, z: &Complex) -> Result<Estimate> {
        let ctx = &self.ctx;
        if !(z.re > ctx.zero()) {
            return Err(Error::Domain("gamma needs Re(z) > 0".into()));
        }
        let min_abs = ctx.uint((self.cfg.digits as u64 * 7) / 10 + 10);
        let mut w = z.clone();
        let mut shift = Complex::real(ctx.zero(), ctx);
        while w.abs(ctx) < min_abs {
            shift = &shift + &ctx.cln(&w);
            w = &w + &Complex::real(ctx.one(), ctx);
        }
        let half = ctx.f64(0.5);
        let two_pi = ctx.pi() * ctx.int(2);
        let lw = ctx.cln(&w);
        let wmh = Complex::new(&w.re - &half, w.im.clone());
        let mut acc = &(&wmh * &lw) - &w;
        acc.re = acc.re + ctx.ln(&two_pi) * &half;
        let w2 = &w * &w;
        let mut wpow = w.recip();
        let target = self.eps() * ctx.f64(1e-6);
        let mut last = ctx.zero();
        for c in &self.stirling {
            let term = wpow.scale(c);
            last = term.abs(ctx);
            acc = &acc + &term;
            if last < target {
                break;
            }
            wpow = &wpow / &w2;
        }
        let value = &acc - &shift;
        let error = last + self.eps() * ctx.uint(16) * (value.abs(ctx) + ctx.one());
        Ok(Estimate { value, error })
    }

    /// `Γ(z)` for `Re(z) > 0`; the error is relative.
    pub fn gamma(&self, z: &Complex) -> Result<Estimate> {
        let lg = self.ln_gamma(z)?;
        let value = check_finite(self.ctx.cexp(&lg.value), "gamma")?;
        Ok(Estimate { value, error: lg.error })
    }

    /// `ζ_∞(s) = π^{-s/2} Γ(s/2)`.
    pub fn zeta_inf(&self, s: &Complex) -> Result<Estimate> {
        let ctx = &self.ctx;
        if !(s.re > ctx.zero()) {
            return Err(Error::Domain("archimedean factor needs Re(s) > 0".into()));
        }
        let half = s.scale(&ctx.f64(0.5));
        let lg = self.ln_gamma(&half)?;
        let lpi = ctx.ln(&ctx.pi());
        let v = ctx.cexp(&(&lg.value - &half.scale(&lpi)));
        let error = &lg.error * &v.abs(ctx) * ctx.int(2);
        Ok(Estimate { value: check_finite(v, "zeta_inf")?, error })
    }

    /// `γ(a, x) = ∫_0^x e^{-t} t^{a-1} dt` by its power series.
    fn lower_gamma(&self, a: &Complex, x: &Real) -> Result<Estimate> {
        let ctx = &self.ctx;
        let zero = Complex::real(ctx.zero(), ctx);
        if x.is_zero() {
            return Ok(Estimate { value: zero, error: ctx.zero() });
        }
        let mut term = a.recip();
        let mut sum = term.clone();
        let xc = Complex::real(x.clone(), ctx);
        let mut n = 0u64;
        let tail = loop {
            n += 1;
            let an = Complex::new(&a.re + &ctx.uint(n), a.im.clone());
            term = &(&term * &xc) / &an;
            sum = &sum + &term;
            let ratio = x / &an.abs(ctx);
            if ratio < ctx.f64(0.5) {
                let t = term.abs(ctx);
                let bound = &t * &ratio / (ctx.one() - ratio.clone());
                if bound < self.eps() * ctx.f64(1e-4) * (sum.abs(ctx) + ctx.one()) {
                    break bound;
                }
            }
            if n > 100_000 {
                return Err(Error::Divergence("incomplete gamma series".into()));
            }
        };
        let prefactor = ctx.cexp(&(&ctx.cln(&xc) * a - xc.clone()));
        let value = &prefactor * &sum;
        let scale = prefactor.abs(ctx);
        let error = &scale * &(tail + self.eps() * ctx.uint(4 * n + 8) * sum.abs(ctx));
        Ok(Estimate { value: check_finite(value, "incomplete gamma")?, error })
    }

    /// `Γ(a, x) = ∫_x^∞ e^{-t} t^{a-1} dt` by Legendre's continued fraction.
    fn upper_gamma(&self, a: &Complex, x: &Real) -> Result<Estimate> {
        let ctx = &self.ctx;
        let one = Complex::real(ctx.one(), ctx);
        let tiny = ctx.pow2(-(ctx.bits() as i32) * 2);
        let tiny_c = Complex::real(tiny.clone(), ctx);
        let xc = Complex::real(x.clone(), ctx);
        let mut b = &(&xc + &one) - a;
        let mut c = Complex::real(tiny.recip(), ctx);
        let mut d = b.recip();
        let mut h = d.clone();
        let mut delta_err = ctx.one();
        for i in 1..100_000u64 {
            let ic = Complex::real(ctx.uint(i), ctx);
            let an = -(&ic * &(&ic - a));
            b = &b + &Complex::real(ctx.int(2), ctx);
            d = &(&an * &d) + &b;
            if d.abs(ctx) < tiny {
                d = tiny_c.clone();
            }
            c = &b + &(&an / &c);
            if c.abs(ctx) < tiny {
                c = tiny_c.clone();
            }
            d = d.recip();
            let del = &d * &c;
            h = &h * &del;
            delta_err = (&del - &one).abs(ctx);
            if delta_err < self.eps() * ctx.f64(1e-4) {
                let prefactor = ctx.cexp(&(&ctx.cln(&xc) * a - xc.clone()));
                let value = &prefactor * &h;
                let error = value.abs(ctx) * (delta_err * ctx.uint(4) + self.eps() * ctx.uint(4 * i + 8));
                return Ok(Estimate { value: check_finite(value, "incomplete gamma")?, error });
            }
        }
        let _ = delta_err;
        Err(Error::Divergence("incomplete gamma continued fraction".into()))
    }

    /// `μ_{∞,s}(U_{b,c}) = π^{-s/2} ∫_b^c (−ln x)^{s/2−1} dx`.
    pub fn mu_inf(&self, s: &Complex, b: &Real, c: &Real) -> Result<Estimate> {
        let ctx = &self.ctx;
        let zero = ctx.zero();
        let one = ctx.one();
        if *b < zero || *c > one || b > c {
            return Err(Error::Domain("need 0 ≤ b ≤ c ≤ 1".into()));
        }
        if !(s.re > zero) {
            return Err(Error::Domain("archimedean measure needs Re(s) > 0".into()));
        }
        let null = Estimate { value: Complex::real(ctx.zero(), ctx), error: ctx.zero() };
        if b == c || c.is_zero() {
            return Ok(null);
        }
        let a = s.scale(&ctx.f64(0.5));
        // t-range [t1, t2] with t2 = ∞ for b = 0
        let t1 = -ctx.ln(c);
        let t2 = if b.is_zero() { None } else { Some(-ctx.ln(b)) };
        let t1 = if c == &one { ctx.zero() } else { t1 };
        let split = ctx.uint(30) + a.abs(ctx);
        let lower = |t: &Real| self.lower_gamma(&a, t);
        let upper = |t: &Real| self.upper_gamma(&a, t);
        let sub = |x: Estimate, y: Estimate| Estimate { value: &x.value - &y.value, error: x.error + y.error };
        let add = |x: Estimate, y: Estimate| Estimate { value: &x.value + &y.value, error: x.error + y.error };
        let integral = match &t2 {
            Some(t2) if *t2 <= split => sub(lower(t2)?, lower(&t1)?),
            _ if t1 >= split => match &t2 {
                Some(t2) => sub(upper(&t1)?, upper(t2)?),
                None => upper(&t1)?,
            },
            _ => {
                let head = sub(lower(&split)?, lower(&t1)?);
                let tail = match &t2 {
                    Some(t2) => sub(upper(&split)?, upper(t2)?),
                    None => upper(&split)?,
                };
                add(head, tail)
            }
        };
        let lpi = ctx.ln(&ctx.pi());
        let factor = ctx.cexp(&(-a.scale(&lpi)));
        let value = &factor * &integral.value;
        let error = &integral.error * &factor.abs(ctx) + self.eps() * value.abs(ctx) * ctx.uint(8);
        Ok(Estimate { value: check_finite(value, "mu_inf")?, error })
    }

    /// Composite Simpson rule for the unsubstituted density on `[b, c]`
    /// with `0 < b < c < 1`; a slow independent check of [`Zeta::mu_inf`].
    pub fn mu_inf_direct(&self, s: &Complex, b: &Real, c: &Real, intervals: u64) -> Result<Complex> {
        let ctx = &self.ctx;
        if !(b > &ctx.zero() && c < &ctx.one() && b < c) {
            return Err(Error::Domain("need 0 < b < c < 1".into()));
        }
        let n = intervals.max(2) + intervals % 2;
        let am1 = Complex::new(&s.re * &ctx.f64(0.5) - ctx.one(), &s.im * &ctx.f64(0.5));
        let f = |x: &Real| {
            let u = -ctx.ln(x);
            ctx.cexp(&am1.scale(&ctx.ln(&u)))
        };
        let h = (c - b) / ctx.uint(n);
        let mut acc = &f(b) + &f(c);
        for i in 1..n {
            let x = b + &(&h * &ctx.uint(i));
            let wgt = if i % 2 == 1 { ctx.int(4) } else { ctx.int(2) };
            acc = &acc + &f(&x).scale(&wgt);
        }
        let lpi = ctx.ln(&ctx.pi());
        let factor = ctx.cexp(&(-s.scale(&ctx.f64(0.5)).scale(&lpi)));
        Ok(&factor * &acc.scale(&(h / ctx.int(3))))
    }

    /// Relative truncation bound for an Euler product over `p ≤ P`.
    ///
    /// `|ln ∏_{p>P} (1−p^{-s})^{-1}| ≤ Σ_{p>P} |p^{-s}| / (1 − P^{-σ})` and
    /// `Σ_{n>P} n^{-σ} ≤ P^{1−σ}/(σ−1)`.
    pub fn euler_tail_bound(&self, s: &Complex, prime_bound: u64) -> Result<Real> {
        self.regime(s)?;
        let ctx = &self.ctx;
        let sigma = &s.re;
        let one = ctx.one();
        let pb = ctx.uint(prime_bound.max(1));
        let lp = ctx.ln(&pb);
        let e = ctx.exp(&((&one - sigma) * &lp)) / (sigma - &one);
        let q = ctx.exp(&(-(sigma * &lp)));
        let log_bound = e / (&one - &q);
        Ok(ctx.exp(&log_bound) - one)
    }

    /// `ζ*(s)` from the local factors at `p ≤ P`, folded in ascending order,
    /// together with a bound on the relative truncation error.
    pub fn completed_zeta(&self, s: &Complex, prime_bound: u64) -> Result<(Estimate, Real)> {
        self.regime(s)?;
        if prime_bound > MAX_PRIME_BOUND {
            return Err(Error::Domain(alloc::format!("prime bound above {MAX_PRIME_BOUND}")));
        }
        let ctx = &self.ctx;
        let inf = self.zeta_inf(s)?;
        let mut acc = inf.value.clone();
        let mut count = 0u64;
        for p in primes_up_to(prime_bound) {
            acc = &acc * &self.zeta_p_closed(p, s)?;
            count += 1;
        }
        let tail = self.euler_tail_bound(s, prime_bound)?;
        let rel = &inf.error / &inf.value.abs(ctx) + self.eps() * ctx.uint(8 * count + 8);
        let error = acc.abs(ctx) * rel;
        Ok((Estimate { value: check_finite(acc, "completed_zeta")?, error }, tail))
    }

    /// `∫_I dμ_s` over the product of the ideal spaces at `p ≤ P` and `∞`.
    pub fn ideal_space_integral(&self, s: &Complex, prime_bound: u64) -> Result<Estimate> {
        self.regime(s)?;
        let ctx = &self.ctx;
        let inf = self.mu_inf(s, &ctx.zero(), &ctx.one())?;
        let mut acc = inf.value.clone();
        let mut rel = &inf.error / &inf.value.abs(ctx);
        for p in primes_up_to(prime_bound) {
            let local = self.zeta_p_integral(p, s)?;
            rel = rel + &local.error / &local.value.abs(ctx) + self.eps() * ctx.uint(2);
            acc = &acc * &local.value;
        }
        let error = acc.abs(ctx) * rel;
        Ok(Estimate { value: check_finite(acc, "ideal_space_integral")?, error })
    }

    /// Audits of the topology and measure on the ideal space at a finite
    /// prime, on the first `depth` exponents.
    pub fn topology_checks(&self, p: u64, depth: u64) -> Result<TopologyReport> {
        if !is_prime_u64(p) {
            return Err(Error::Domain(alloc::format!("{p} is not prime")));
        }
        let ctx = &self.ctx;
        let s = Complex::real(ctx.int(2), ctx);
        let singletons_open = (0..depth).all(|l| {
            let u = BasisSet::Finite { p, b: Ext::Finite(l), c: Ext::Finite(l) };
            (0..=depth).filter(|&m| u.contains_power(Ext::Finite(m))).count() == 1 && !u.contains_power(Ext::Infinite)
        });
        // basis sets around (0) with finite lower end miss finitely many points
        let cofinite_neighbourhoods = (0..depth).all(|b| {
            let u = BasisSet::Finite { p, b: Ext::Finite(b), c: Ext::Infinite };
            let missing = (0..depth + b + 1).filter(|&l| !u.contains_power(Ext::Finite(l))).count() as u64;
            missing == b && u.contains_power(Ext::Infinite)
        });
        let zero_point = BasisSet::Finite { p, b: Ext::Infinite, c: Ext::Infinite };
        let zero_singleton_is_basic = zero_point.contains_power(Ext::Infinite) && (0..depth).all(|l| !zero_point.contains_power(Ext::Finite(l)));
        let whole = BasisSet::Finite { p, b: Ext::Finite(0), c: Ext::Infinite };
        let whole_space = whole.contains_power(Ext::Infinite) && (0..depth).all(|l| whole.contains_power(Ext::Finite(l)));
        let mut additivity_residual = ctx.zero();
        for b in 0..depth.min(6) {
            for m in b..b + 4 {
                for c in [Ext::Finite(m + 3), Ext::Infinite] {
                    let left = self.mu_p(p, &s, Ext::Finite(b), Ext::Finite(m))?;
                    let right = self.mu_p(p, &s, Ext::Finite(m + 1), c)?;
                    let all = self.mu_p(p, &s, Ext::Finite(b), c)?;
                    let r = (&(&left + &right) - &all).abs(ctx);
                    additivity_residual = additivity_residual.max(r);
                }
            }
        }
        let additive = additivity_residual < self.eps() * ctx.uint(64);
        Ok(TopologyReport {
            p,
            singletons_open,
            cofinite_neighbourhoods,
            zero_singleton_is_basic,
            whole_space,
            additivity_residual,
            additive,
        })
    }
}

#[derive(Clone, Debug)]
pub struct TopologyReport {
    pub p: u64,
    /// Every `{(p^l)}`, `l < ∞`, is a basic open set.
    pub singletons_open: bool,
    /// Every basic set `U_{b,∞}` with `b < ∞` has finite complement.
    pub cofinite_neighbourhoods: bool,
    /// `U_{∞,∞} = {(0)}` is among the basic sets as written.
    pub zero_singleton_is_basic: bool,
    /// `U_{0,∞}` is the whole space.
    pub whole_space: bool,
    pub additivity_residual: Real,
    pub additive: bool,
}
