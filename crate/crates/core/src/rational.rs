//! Exact rationals, p-adic valuations, primality and factorization.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

pub use num_rational::BigRational;

use crate::{Error, Result};

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `"a/b"` or `"a"` with decimal integers.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Malformed(alloc::format!("not a rational `num/den`: `{s}`"));
    let parse_int = |t: &str| t.trim().parse::<BigInt>().map_err(|_| bad());
    let q = match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(bad());
            }
            BigRational::new(parse_int(n)?, d)
        }
        None => BigRational::from_integer(parse_int(s)?),
    };
    Ok(q)
}

/// `"num/den"` in lowest terms, or just `"num"` for integers.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        alloc::format!("{}/{}", q.numer(), q.denom())
    }
}

/// Removes every factor `p` from `n`; returns the multiplicity and cofactor.
pub fn strip_prime(n: &BigUint, p: &BigUint) -> (u64, BigUint) {
    let mut n = n.clone();
    let mut k = 0;
    if n.is_zero() || p <= &BigUint::one() {
        return (0, n);
    }
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return (k, n);
        }
        n = q;
        k += 1;
    }
}

/// `v_p(q)`, or `None` for `q = 0` (valuation `∞`).
pub fn valuation(q: &BigRational, p: &BigUint) -> Option<i64> {
    if q.is_zero() {
        return None;
    }
    let num = q.numer().magnitude();
    let den = q.denom().magnitude();
    let (a, _) = strip_prime(num, p);
    let (b, _) = strip_prime(den, p);
    Some(a as i64 - b as i64)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'bases: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Miller–Rabin with the first twelve prime bases; exact below `3.3·10^24`.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'bases: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let a = BigUint::from(a);
        if (n % &a).is_zero() {
            return false;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard's rho; `n` must be odd and composite.
fn pollard_rho(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let (mut x, mut y, mut q) = (BigUint::from(2u32), BigUint::from(2u32), BigUint::one());
        let mut g = one.clone();
        let mut r = 1u64;
        let mut ys = y.clone();
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..r.min(128).min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += 128;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g != one {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
        c += 1u32;
    }
}

/// Integer factorization into primes with multiplicities.
pub trait Factorize {
    /// Prime factors of `n > 0` in increasing order.
    fn factorize(&self, n: &BigUint) -> Vec<(BigUint, u32)>;
}

/// Trial division by small primes, then Miller–Rabin and Pollard's rho.
#[derive(Clone, Copy, Debug, Default)]
pub struct Factorizer;

const TRIAL_LIMIT: u32 = 1000;

impl Factorize for Factorizer {
    fn factorize(&self, n: &BigUint) -> Vec<(BigUint, u32)> {
        let mut out: Vec<(BigUint, u32)> = Vec::new();
        if n.is_zero() {
            return out;
        }
        let mut rest = n.clone();
        for p in primes_up_to(TRIAL_LIMIT as u64) {
            let p = BigUint::from(p);
            let (k, r) = strip_prime(&rest, &p);
            if k > 0 {
                out.push((p, k as u32));
                rest = r;
            }
        }
        let mut stack = vec![rest];
        let mut big: Vec<BigUint> = Vec::new();
        while let Some(m) = stack.pop() {
            if m.is_one() {
                continue;
            }
            if is_probable_prime(&m) {
                big.push(m);
            } else {
                let d = pollard_rho(&m);
                let e = &m / &d;
                stack.push(d);
                stack.push(e);
            }
        }
        big.sort();
        for p in big {
            match out.last_mut() {
                Some((q, k)) if *q == p => *k += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
}

pub fn factorize(n: &BigUint) -> Vec<(BigUint, u32)> {
    Factorizer.factorize(n)
}

/// Sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}
