//! The compactified arithmetic curve `X = Spec Z-bar`.
//!
//! Points are the generic point, the finite primes and the archimedean
//! place. Sections over `X − {p_1, …, p_n}` are the rationals with
//! `‖q‖_w ≤ 1` at every place `w` outside the removed set, with the
//! pre-addition generated by `1 + (−1) ≐ 0` (BLUE) or every rational
//! identity (FULL). Everything here is a predicate on exact rationals.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::presentation::congruence::Verdict;
use crate::rational::{format_rational, is_probable_prime, strip_prime, valuation, BigRational, Factorize};
use crate::{Error, Result};

/// A prime that passed a primality test.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(BigUint);

impl Prime {
    pub fn new(p: BigUint) -> Result<Prime> {
        if is_probable_prime(&p) {
            Ok(Prime(p))
        } else {
            Err(Error::Domain(format!("{p} is not prime")))
        }
    }

    pub fn small(p: u64) -> Result<Prime> {
        Prime::new(BigUint::from(p))
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PlacePoint {
    Generic,
    Finite(Prime),
    Infinite,
}

impl PlacePoint {
    pub fn finite(p: u64) -> Result<PlacePoint> {
        Ok(PlacePoint::Finite(Prime::small(p)?))
    }

    pub fn is_closed(&self) -> bool {
        !matches!(self, PlacePoint::Generic)
    }

    /// `‖q‖_w ≤ 1` (always true at the generic point).
    pub fn bounds(&self, q: &BigRational) -> bool {
        match self {
            PlacePoint::Generic => true,
            PlacePoint::Infinite => q.abs() <= BigRational::one(),
            PlacePoint::Finite(p) => valuation(q, p.value()).is_none_or(|v| v >= 0),
        }
    }

    /// `‖q‖_w < 1`.
    pub fn strictly_bounds(&self, q: &BigRational) -> bool {
        match self {
            PlacePoint::Generic => false,
            PlacePoint::Infinite => q.abs() < BigRational::one(),
            PlacePoint::Finite(p) => valuation(q, p.value()).is_none_or(|v| v > 0),
        }
    }
}

impl fmt::Display for PlacePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlacePoint::Generic => f.write_str("eta"),
            PlacePoint::Finite(p) => p.fmt(f),
            PlacePoint::Infinite => f.write_str("inf"),
        }
    }
}

/// An open set of `X`: the complement of finitely many closed points, or ∅.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OpenSetDescriptor {
    Complement(BTreeSet<PlacePoint>),
    Empty,
}

impl OpenSetDescriptor {
    pub fn whole() -> OpenSetDescriptor {
        OpenSetDescriptor::Complement(BTreeSet::new())
    }

    pub fn removing(points: impl IntoIterator<Item = PlacePoint>) -> Result<OpenSetDescriptor> {
        let removed: BTreeSet<_> = points.into_iter().collect();
        if removed.contains(&PlacePoint::Generic) {
            return Err(Error::Domain("the generic point is not closed".into()));
        }
        Ok(OpenSetDescriptor::Complement(removed))
    }

    pub fn removed(&self) -> Option<&BTreeSet<PlacePoint>> {
        match self {
            OpenSetDescriptor::Complement(r) => Some(r),
            OpenSetDescriptor::Empty => None,
        }
    }

    pub fn contains(&self, x: &PlacePoint) -> bool {
        match self {
            OpenSetDescriptor::Complement(r) => !r.contains(x),
            OpenSetDescriptor::Empty => false,
        }
    }

    /// `self ⊆ other`.
    pub fn is_subset(&self, other: &OpenSetDescriptor) -> bool {
        match (self, other) {
            (OpenSetDescriptor::Empty, _) => true,
            (_, OpenSetDescriptor::Empty) => false,
            (OpenSetDescriptor::Complement(a), OpenSetDescriptor::Complement(b)) => b.is_subset(a),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Pre-addition generated by `1 + (−1) ≐ 0`.
    Blue,
    /// All additive identities that hold in `Q`.
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSectionSet {
    pub open_set: OpenSetDescriptor,
    pub mode: Mode,
}

impl RationalSectionSet {
    pub fn new(open_set: OpenSetDescriptor, mode: Mode) -> RationalSectionSet {
        RationalSectionSet { open_set, mode }
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        section_member(self, q)
    }
}

/// Membership of `q` in the sections over `s.open_set`.
///
/// Denominators are checked by dividing out the removed primes; whatever
/// remains must be a unit.
pub fn section_member(s: &RationalSectionSet, q: &BigRational) -> bool {
    match s.open_set.removed() {
        Some(r) => bounded_outside(q, r, &BigRational::one()),
        None => q.is_zero(),
    }
}

/// `‖q‖_p ≤ 1` at finite places outside `removed`, and `|q| ≤ arch` unless
/// `∞` is removed.
pub fn bounded_outside(q: &BigRational, removed: &BTreeSet<PlacePoint>, arch: &BigRational) -> bool {
    if q.is_zero() {
        return true;
    }
    if !removed.contains(&PlacePoint::Infinite) && q.abs() > *arch {
        return false;
    }
    let mut den = q.denom().magnitude().clone();
    for w in removed {
        if let PlacePoint::Finite(p) = w {
            den = strip_prime(&den, p.value()).1;
        }
    }
    den.is_one()
}

/// The places `w` with `‖q‖_w > 1`.
pub fn unbounded_places(q: &BigRational, f: &impl Factorize) -> BTreeSet<PlacePoint> {
    let mut out = BTreeSet::new();
    if q.is_zero() {
        return out;
    }
    for (p, _) in f.factorize(q.denom().magnitude()) {
        out.insert(PlacePoint::Finite(Prime(p)));
    }
    if q.abs() > BigRational::one() {
        out.insert(PlacePoint::Infinite);
    }
    out
}

/// Global sections with the archimedean bound relaxed to `|q| ≤ bound`.
///
/// Candidates are all rationals `n/d` with `d ≤ 12` inside the archimedean
/// bound; the finite-place conditions then cut them down. Integrality
/// everywhere leaves only denominator 1, so larger denominators could not
/// contribute.
pub fn global_sections_with(bound: &BigRational) -> Vec<BigRational> {
    let mut out = BTreeSet::new();
    if bound.is_negative() {
        return Vec::new();
    }
    let everywhere = BTreeSet::new();
    for d in 1..=12i64 {
        let top = (bound * BigRational::from_integer(d.into())).floor().to_integer();
        let top = top.to_i64().unwrap_or(i64::MAX).min(1 << 16);
        for n in -top..=top {
            let q = BigRational::new(n.into(), d.into());
            if bounded_outside(&q, &everywhere, bound) {
                out.insert(q);
            }
        }
    }
    let mut out: Vec<_> = out.into_iter().collect();
    out.sort_by(|a, b| a.abs().cmp(&b.abs()).then(b.cmp(a)));
    out
}

/// `Γ(X, O_X)`.
pub fn global_sections() -> Vec<BigRational> {
    global_sections_with(&BigRational::one())
}

/// The stalk at a point: the single-constraint predicate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stalk {
    pub place: PlacePoint,
    pub mode: Mode,
}

pub fn stalk(place: PlacePoint) -> Stalk {
    Stalk { place, mode: Mode::Blue }
}

impl Stalk {
    pub fn contains(&self, q: &BigRational) -> bool {
        self.place.bounds(q)
    }

    /// Membership as a direct limit: `q` lies in the stalk iff it is a
    /// section over some open set containing the point. The smallest
    /// candidate removes exactly the places where `q` is unbounded.
    pub fn contains_as_limit(&self, q: &BigRational, f: &impl Factorize) -> bool {
        let u = OpenSetDescriptor::Complement(unbounded_places(q, f));
        u.contains(&self.place) && section_member(&RationalSectionSet::new(u, self.mode), q)
    }
}

/// An endpoint `a ≥ 0` stored through its square, so that irrational
/// square roots compare exactly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Endpoint {
    square: BigRational,
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    let n = q.numer().magnitude();
    let d = q.denom().magnitude();
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| BigRational::new(BigInt::from(rn), BigInt::from(rd)))
}

impl Endpoint {
    pub fn rational(a: BigRational) -> Result<Endpoint> {
        if a.is_negative() {
            return Err(Error::Domain(format!("negative bound {}", format_rational(&a))));
        }
        Ok(Endpoint { square: &a * &a })
    }

    /// `√r` for `r ≥ 0`.
    pub fn sqrt(r: BigRational) -> Result<Endpoint> {
        if r.is_negative() {
            return Err(Error::Domain(format!("negative radicand {}", format_rational(&r))));
        }
        Ok(Endpoint { square: r })
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        rational_sqrt(&self.square)
    }

    pub fn square(&self) -> &BigRational {
        &self.square
    }

    /// Compares `|x|` with the endpoint.
    pub fn cmp_abs(&self, x: &BigRational) -> Ordering {
        (x * x).cmp(&self.square)
    }

    pub fn is_zero(&self) -> bool {
        self.square.is_zero()
    }
}

impl Ord for Endpoint {
    fn cmp(&self, other: &Endpoint) -> Ordering {
        self.square.cmp(&other.square)
    }
}

impl PartialOrd for Endpoint {
    fn partial_cmp(&self, other: &Endpoint) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(a) => f.write_str(&format_rational(&a)),
            None => write!(f, "sqrt({})", format_rational(&self.square)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Exponent {
    Finite(u64),
    Infinite,
}

/// A symbolic ideal of a stalk.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum StalkIdealDescriptor {
    /// `(p^i)`; `(p^∞) = (0)`.
    Power { p: Prime, exponent: Exponent },
    /// `(−a, a) ∩ Q` with `a ∈ (0, 1]`.
    Open(Endpoint),
    /// `[−a, a] ∩ Q` with rational `a ∈ [0, 1]`.
    Closed(BigRational),
}

impl StalkIdealDescriptor {
    pub fn power(p: Prime, exponent: Exponent) -> StalkIdealDescriptor {
        StalkIdealDescriptor::Power { p, exponent }
    }

    pub fn open(a: Endpoint) -> Result<StalkIdealDescriptor> {
        if a.is_zero() || a.square > BigRational::one() {
            return Err(Error::Domain(format!("open bound {a} outside (0, 1]")));
        }
        Ok(StalkIdealDescriptor::Open(a))
    }

    pub fn closed(a: BigRational) -> Result<StalkIdealDescriptor> {
        if a.is_negative() || a > BigRational::one() {
            return Err(Error::Domain(format!("closed bound {} outside [0, 1]", format_rational(&a))));
        }
        Ok(StalkIdealDescriptor::Closed(a))
    }

    /// `m_∞ = (−1, 1) ∩ Q`.
    pub fn m_infinity() -> StalkIdealDescriptor {
        StalkIdealDescriptor::Open(Endpoint { square: BigRational::one() })
    }

    pub fn zero_at(place: &PlacePoint) -> Result<StalkIdealDescriptor> {
        match place {
            PlacePoint::Finite(p) => Ok(StalkIdealDescriptor::power(p.clone(), Exponent::Infinite)),
            PlacePoint::Infinite => Ok(StalkIdealDescriptor::Closed(BigRational::zero())),
            PlacePoint::Generic => Err(Error::Precondition("the generic point is not closed".into())),
        }
    }

    pub fn place(&self) -> PlacePoint {
        match self {
            StalkIdealDescriptor::Power { p, .. } => PlacePoint::Finite(p.clone()),
            _ => PlacePoint::Infinite,
        }
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        match self {
            StalkIdealDescriptor::Power { p, exponent } => match (valuation(x, p.value()), exponent) {
                (None, _) => true,
                (Some(_), Exponent::Infinite) => false,
                (Some(v), Exponent::Finite(i)) => v >= 0 && v as u64 >= *i,
            },
            StalkIdealDescriptor::Open(a) => a.cmp_abs(x) == Ordering::Less,
            StalkIdealDescriptor::Closed(a) => x.abs() <= *a,
        }
    }

    /// `self ⊆ other`, for descriptors at the same place.
    pub fn is_contained_in(&self, other: &StalkIdealDescriptor) -> Option<bool> {
        use StalkIdealDescriptor::*;
        let r = match (self, other) {
            (Power { p, exponent: i }, Power { p: q, exponent: j }) if p == q => i >= j,
            (Power { .. }, _) | (_, Power { .. }) => return None,
            (Open(a), Open(b)) => a <= b,
            (Closed(a), Closed(b)) => a <= b,
            (Open(a), Closed(b)) => a.square <= b * b,
            (Closed(a), Open(b)) => a * a < b.square,
        };
        Some(r)
    }

    /// The whole stalk.
    pub fn is_unit_ideal(&self) -> bool {
        match self {
            StalkIdealDescriptor::Power { exponent, .. } => *exponent == Exponent::Finite(0),
            StalkIdealDescriptor::Closed(a) => a.is_one(),
            StalkIdealDescriptor::Open(_) => false,
        }
    }

    /// A pair `x, y` outside the ideal with `xy` inside, or `None` when the
    /// complement is multiplicative. The ideal must be proper.
    pub fn prime_obstruction(&self) -> Option<(BigRational, BigRational)> {
        let one = BigRational::one();
        match self {
            StalkIdealDescriptor::Power { p, exponent: Exponent::Finite(i) } if *i >= 2 => {
                let x = BigRational::from_integer(BigInt::from(p.value().clone()));
                Some((x.clone(), x))
            }
            StalkIdealDescriptor::Power { .. } => None,
            StalkIdealDescriptor::Open(a) => {
                if a.square == one {
                    return None;
                }
                // r ∈ [a, √a) gives r ≥ a and r² < a.
                let r = rational_in_half_open(&a.square);
                Some((r.clone(), r))
            }
            StalkIdealDescriptor::Closed(a) => {
                if a.is_zero() || a.is_one() {
                    return None;
                }
                // r ∈ (a, √a) gives r > a and r² < a.
                let lo = a.clone();
                let mut r = (&lo + &one) / BigRational::from_integer(2.into());
                while &r * &r >= lo {
                    r = (&r + &lo) / BigRational::from_integer(2.into());
                }
                Some((r.clone(), r))
            }
        }
    }
}

/// Some rational `r` with `√s ≤ r` and `r² < √s`, for `0 < s < 1`.
fn rational_in_half_open(s: &BigRational) -> BigRational {
    let one = BigRational::one();
    let two = BigRational::from_integer(2.into());
    if let Some(a) = rational_sqrt(s) {
        return a;
    }
    // Bisect for an upper approximation of √s that still squares below √s:
    // r² < √s ⇔ r⁴ < s.
    let (mut lo, mut hi) = (BigRational::zero(), one);
    loop {
        let mid = (&lo + &hi) / &two;
        if &mid * &mid < *s {
            lo = mid;
        } else {
            hi = mid;
        }
        let h2 = &hi * &hi;
        if &h2 * &h2 < *s {
            return hi;
        }
    }
}

impl fmt::Display for StalkIdealDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StalkIdealDescriptor::Power { exponent: Exponent::Infinite, .. } => f.write_str("(0)"),
            StalkIdealDescriptor::Power { p, exponent: Exponent::Finite(i) } => write!(f, "({p}^{i})"),
            StalkIdealDescriptor::Open(a) => write!(f, "(-{a},{a})"),
            StalkIdealDescriptor::Closed(a) if a.is_zero() => f.write_str("(0)"),
            StalkIdealDescriptor::Closed(a) => {
                let a = format_rational(a);
                write!(f, "[-{a},{a}]")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeShape {
    /// Totally ordered, isomorphic to `N ∪ {∞}`.
    Naturals,
    /// Open and closed intervals alternating along `[0, 1]`.
    Interleaved,
}

impl fmt::Display for LatticeShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LatticeShape::Naturals => "N∪{inf}",
            LatticeShape::Interleaved => "interleaved",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealLattice {
    pub place: PlacePoint,
    pub shape: LatticeShape,
}

pub fn stalk_ideals(place: &PlacePoint) -> Result<IdealLattice> {
    let shape = match place {
        PlacePoint::Finite(_) => LatticeShape::Naturals,
        PlacePoint::Infinite => LatticeShape::Interleaved,
        PlacePoint::Generic => return Err(Error::Precondition("the generic point is not closed".into())),
    };
    Ok(IdealLattice { place: place.clone(), shape })
}

impl IdealLattice {
    /// `(p^i)` for the finite place.
    pub fn power(&self, i: Exponent) -> Option<StalkIdealDescriptor> {
        match &self.place {
            PlacePoint::Finite(p) => Some(StalkIdealDescriptor::power(p.clone(), i)),
            _ => None,
        }
    }

    /// Finitely many representatives covering every case of the symbolic
    /// classification: the extremes plus one generic member of each
    /// infinite family.
    pub fn representatives(&self) -> Vec<StalkIdealDescriptor> {
        match &self.place {
            PlacePoint::Finite(p) => [Exponent::Finite(0), Exponent::Finite(1), Exponent::Finite(2), Exponent::Finite(5), Exponent::Infinite]
                .into_iter()
                .map(|e| StalkIdealDescriptor::power(p.clone(), e))
                .collect(),
            _ => {
                let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
                vec![
                    StalkIdealDescriptor::Closed(q(0, 1)),
                    StalkIdealDescriptor::Open(Endpoint { square: q(1, 4) }),
                    StalkIdealDescriptor::Open(Endpoint { square: q(1, 2) }),
                    StalkIdealDescriptor::Closed(q(1, 2)),
                    StalkIdealDescriptor::Open(Endpoint { square: q(1, 1) }),
                    StalkIdealDescriptor::Closed(q(1, 1)),
                ]
            }
        }
    }
}

/// How a candidate fails to be an ideal of a stalk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StalkIdealViolation {
    /// `element ∈ I`, `factor` in the stalk, `element · factor ∉ I`.
    Absorption { element: BigRational, factor: BigRational },
    /// `Σ summands ≐ total` with every summand in `I` and `total ∉ I`.
    Additive { summands: Vec<BigRational>, total: BigRational },
}

/// Checks the ideal axioms for `d` inside the stalk at `place` in `mode`.
///
/// The decision is symbolic. In BLUE mode the only additive relations are
/// sums with cancelling pairs `c + (−c)`, so the additive axiom reduces to
/// closure under `x ↦ −x`, which follows from absorption; absorption holds
/// because every descriptor is defined by a bound that only shrinks under
/// multiplication by stalk elements. In FULL mode at ∞ any nonzero `x ∈ I`
/// gives `1/n ∈ I` and `n · (1/n) ≐ 1`. A randomized sample of absorption
/// and sign instances is checked as well.
pub fn verify_ideal_descriptor(place: &PlacePoint, d: &StalkIdealDescriptor, mode: Mode, seed: u64) -> Result<Verdict<(), StalkIdealViolation>> {
    if !place.is_closed() {
        return Err(Error::Precondition("the generic point is not closed".into()));
    }
    if d.place() != *place {
        return Err(Error::Precondition(format!("descriptor {d} does not live at {place}")));
    }
    if let Some(v) = sampled_violation(place, d, seed) {
        return Ok(Verdict::No(v));
    }
    if mode == Mode::Full && *place == PlacePoint::Infinite && !d.is_unit_ideal() {
        if let Some(x) = smallest_unit_fraction(d) {
            let n = x.denom().to_u64().unwrap_or(u64::MAX);
            let summands = vec![x; n as usize];
            let total = BigRational::one();
            debug_assert!(!d.contains(&total));
            return Ok(Verdict::No(StalkIdealViolation::Additive { summands, total }));
        }
    }
    Ok(Verdict::Yes(()))
}

/// `1/n ∈ d` with `n` minimal, if `d ≠ (0)`.
fn smallest_unit_fraction(d: &StalkIdealDescriptor) -> Option<BigRational> {
    let square = match d {
        StalkIdealDescriptor::Open(a) => a.square.clone(),
        StalkIdealDescriptor::Closed(a) => a * a,
        StalkIdealDescriptor::Power { .. } => return None,
    };
    if square.is_zero() {
        return None;
    }
    // n ≥ ⌊1/a⌋ is necessary; step up from there
    let mut n = square.recip().to_integer().magnitude().sqrt().max(BigUint::one());
    loop {
        let x = BigRational::new(BigInt::one(), BigInt::from(n.clone()));
        if d.contains(&x) {
            return Some(x);
        }
        n += 1u32;
    }
}

fn sample_rational(rng: &mut ChaCha8Rng, place: &PlacePoint) -> BigRational {
    let n = (rng.next_u64() % 2001) as i64 - 1000;
    let d = (rng.next_u64() % 1000) as i64 + 1;
    let q = BigRational::new(n.into(), d.into());
    match place {
        PlacePoint::Infinite if q.abs() > BigRational::one() => q.recip(),
        PlacePoint::Finite(p) => {
            let (_, den) = strip_prime(q.denom().magnitude(), p.value());
            let extra = (rng.next_u64() % 4) as u32;
            let pk = BigInt::from(p.value().pow(extra));
            BigRational::new(q.numer() * pk, BigInt::from(den))
        }
        _ => q,
    }
}

fn sample_member(rng: &mut ChaCha8Rng, d: &StalkIdealDescriptor) -> BigRational {
    match d {
        StalkIdealDescriptor::Power { p, exponent } => match exponent {
            Exponent::Infinite => BigRational::zero(),
            Exponent::Finite(i) => {
                let unit = sample_rational(rng, &PlacePoint::Finite(p.clone()));
                let (_, num) = strip_prime(unit.numer().magnitude(), p.value());
                let k = i + rng.next_u64() % 3;
                let pk = BigInt::from(p.value().pow(k as u32));
                let sign = if unit.is_negative() { -BigInt::one() } else { BigInt::one() };
                BigRational::new(sign * BigInt::from(num) * pk, unit.denom().clone())
            }
        },
        _ => {
            let t = sample_rational(rng, &PlacePoint::Infinite);
            // shrink toward zero until inside
            let mut x = t;
            let two = BigRational::from_integer(2.into());
            for _ in 0..200 {
                if d.contains(&x) {
                    return x;
                }
                x = x / &two;
            }
            BigRational::zero()
        }
    }
}

fn sampled_violation(place: &PlacePoint, d: &StalkIdealDescriptor, seed: u64) -> Option<StalkIdealViolation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if !d.contains(&BigRational::zero()) {
        return Some(StalkIdealViolation::Additive { summands: Vec::new(), total: BigRational::zero() });
    }
    for _ in 0..256 {
        let x = sample_member(&mut rng, d);
        let y = sample_rational(&mut rng, place);
        if !place.bounds(&y) || !d.contains(&x) {
            continue;
        }
        if !d.contains(&(&x * &y)) {
            return Some(StalkIdealViolation::Absorption { element: x, factor: y });
        }
        let neg = -&x;
        if !d.contains(&neg) {
            return Some(StalkIdealViolation::Additive { summands: vec![x], total: neg });
        }
    }
    None
}

/// Prime ideals of the stalk at a closed point.
///
/// Every case of the symbolic classification is represented in the scan;
/// a representative is kept when it is a proper ideal whose complement is
/// multiplicative. Inside an infinite family the verdict does not depend
/// on the member, so the kept representatives are exactly the primes.
pub fn stalk_prime_ideals(place: &PlacePoint, mode: Mode) -> Result<Vec<StalkIdealDescriptor>> {
    let lattice = stalk_ideals(place)?;
    let mut out = Vec::new();
    for d in lattice.representatives() {
        if d.is_unit_ideal() || d.prime_obstruction().is_some() {
            continue;
        }
        if verify_ideal_descriptor(place, &d, mode, 0x5eed)?.is_yes() {
            out.push(d);
        }
    }
    Ok(out)
}

/// Some `t` in `O(u)`, invertible in `O(v)`, with `g · t ∈ O(u)`.
///
/// Only the places removed from `v` but not from `u` constrain `t`.
/// Without `∞ ∈ removed(u)` the archimedean norm of `t` is pinned down by
/// its finite valuations, which is where localization can fail.
pub fn localization_witness(u: &OpenSetDescriptor, v: &OpenSetDescriptor, g: &BigRational) -> Option<BigRational> {
    let (ru, rv) = (u.removed()?, v.removed()?);
    let newly: Vec<&PlacePoint> = rv.difference(ru).collect();
    let inf_in_u = ru.contains(&PlacePoint::Infinite);
    let inf_in_v = rv.contains(&PlacePoint::Infinite);
    let mut t = BigRational::one();
    for w in &newly {
        if let PlacePoint::Finite(p) = w {
            let need = valuation(g, p.value()).map_or(0, |v| (-v).max(0));
            let pb = BigInt::from(p.value().clone());
            t *= BigRational::from_integer(num_traits::pow(pb, need as usize));
        }
    }
    if !inf_in_u {
        let free_prime = ru.iter().find_map(|w| match w {
            PlacePoint::Finite(p) => Some(p.clone()),
            _ => None,
        });
        let gt = g * &t;
        if inf_in_v {
            // need |t| ≤ 1 and |g t| ≤ 1, using powers of a removed prime
            if let Some(p) = free_prime {
                let pb = BigRational::from_integer(BigInt::from(p.value().clone()));
                while t.abs() > BigRational::one() || (g * &t).abs() > BigRational::one() {
                    t /= &pb;
                }
            } else if t.abs() > BigRational::one() || gt.abs() > BigRational::one() {
                return None;
            }
        } else if !t.is_one() {
            return None;
        }
    }
    let su = RationalSectionSet::new(u.clone(), Mode::Blue);
    let sv = RationalSectionSet::new(v.clone(), Mode::Blue);
    (su.contains(&t) && sv.contains(&t.recip()) && su.contains(&(g * &t))).then_some(t)
}

/// Deterministic sample of elements of `O(v)` used as test generators.
pub fn localization_sample(u: &OpenSetDescriptor, v: &OpenSetDescriptor) -> Vec<BigRational> {
    let rv = match v.removed() {
        Some(r) => r,
        None => return Vec::new(),
    };
    let _ = u;
    let mut primes: BTreeSet<BigUint> = [2u32, 3, 5].into_iter().map(BigUint::from).collect();
    for w in rv {
        if let PlacePoint::Finite(p) = w {
            primes.insert(p.value().clone());
        }
    }
    let mut atoms = vec![BigInt::one()];
    for p in &primes {
        atoms.push(BigInt::from(p.clone()));
    }
    for (i, a) in primes.iter().enumerate() {
        for b in primes.iter().skip(i) {
            atoms.push(BigInt::from(a * b));
        }
    }
    let sv = RationalSectionSet::new(v.clone(), Mode::Blue);
    let mut out = BTreeSet::new();
    for a in &atoms {
        for b in &atoms {
            if a.gcd(b).is_one() {
                for q in [BigRational::new(a.clone(), b.clone()), -BigRational::new(a.clone(), b.clone())] {
                    if sv.contains(&q) {
                        out.insert(q);
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}

/// The first sampled section over `v` that is not a fraction `s/t` with
/// `s, t ∈ O(u)` and `t` invertible over `v`.
pub fn localization_counterexample(u: &OpenSetDescriptor, v: &OpenSetDescriptor) -> Result<Option<BigRational>> {
    let (ru, rv) = match (u.removed(), v.removed()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::Precondition("open sets must be complements of finite sets".into())),
    };
    if !ru.is_subset(rv) {
        return Err(Error::Precondition("v is not contained in u".into()));
    }
    if ru.is_empty() {
        return Err(Error::Precondition("u must miss at least one closed point".into()));
    }
    Ok(localization_sample(u, v).into_iter().find(|g| localization_witness(u, v, g).is_none()))
}

/// Whether restriction `O(u) → O(v)` is a localization on the sample.
pub fn restriction_is_localization(u: &OpenSetDescriptor, v: &OpenSetDescriptor) -> Result<bool> {
    Ok(localization_counterexample(u, v)?.is_none())
}
