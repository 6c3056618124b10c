//! Pointed sets with pre-addition, blue modules over a finite blueprint, and
//! global sections of the twisted sheaves `O(n)` on the projective line over
//! `F_{1^2}`, computed as the equalizer of the two standard charts.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::presentation::congruence::{Congruence, CountVec};
use crate::presentation::{f1n, Bounds, FiniteBlueprint, MonoidWord, Verdict, ZERO};
use crate::{Error, Result};

/// A finite pointed set with a pre-addition generated by relations between
/// formal sums. Sums are lists of element indices; the base point is dropped,
/// so it is identified with the empty sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedPreAdditionSet {
    labels: Vec<String>,
    base: usize,
    relations: Vec<(Vec<usize>, Vec<usize>)>,
}

impl PointedPreAdditionSet {
    pub fn new(labels: Vec<String>, base: usize, relations: Vec<(Vec<usize>, Vec<usize>)>) -> Result<Self> {
        if base >= labels.len() {
            return Err(Error::Malformed(format!("base point {base} outside carrier of size {}", labels.len())));
        }
        for (k, (l, r)) in relations.iter().enumerate() {
            if let Some(&e) = l.iter().chain(r).find(|&&e| e >= labels.len()) {
                return Err(Error::Malformed(format!("relation {k}: element {e} outside carrier")));
            }
        }
        Ok(PointedPreAdditionSet { labels, base, relations })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, e: usize) -> &str {
        &self.labels[e]
    }

    pub fn relations(&self) -> &[(Vec<usize>, Vec<usize>)] {
        &self.relations
    }

    fn coordinate(&self, e: usize) -> Option<usize> {
        match e.cmp(&self.base) {
            core::cmp::Ordering::Less => Some(e),
            core::cmp::Ordering::Equal => None,
            core::cmp::Ordering::Greater => Some(e - 1),
        }
    }

    /// Count vector of a sum over the non-base elements.
    pub fn vector(&self, sum: &[usize]) -> CountVec {
        let mut v = vec![0u32; self.len().saturating_sub(1)];
        for &e in sum {
            if let Some(c) = self.coordinate(e) {
                v[c] += 1;
            }
        }
        v
    }

    pub fn congruence(&self) -> Result<Congruence> {
        let pairs = self.relations.iter().map(|(l, r)| (self.vector(l), self.vector(r)));
        Congruence::new(self.len().saturating_sub(1), pairs)
    }

    pub fn holds(&self, lhs: &[usize], rhs: &[usize], bounds: Bounds) -> Result<Verdict<Vec<CountVec>>> {
        self.congruence()?.holds(&self.vector(lhs), &self.vector(rhs), bounds)
    }
}

/// A pointed set with an action of a finite blueprint.
#[derive(Clone, Debug)]
pub struct BlueModule {
    blueprint: FiniteBlueprint,
    carrier: PointedPreAdditionSet,
    /// `action[a][m]` is `a.m`.
    action: Vec<Vec<usize>>,
}

impl BlueModule {
    pub fn new(blueprint: FiniteBlueprint, carrier: PointedPreAdditionSet, action: Vec<Vec<usize>>) -> Result<Self> {
        let n = blueprint.monoid().len();
        if action.len() != n || action.iter().any(|row| row.len() != carrier.len()) {
            return Err(Error::Malformed(format!("action table must be {n} x {}", carrier.len())));
        }
        if action.iter().flatten().any(|&m| m >= carrier.len()) {
            return Err(Error::Malformed("action table leaves the carrier".into()));
        }
        Ok(BlueModule { blueprint, carrier, action })
    }

    /// The blueprint acting on itself.
    pub fn regular(blueprint: FiniteBlueprint) -> Result<Self> {
        let monoid = blueprint.monoid();
        let labels = (0..monoid.len()).map(|e| blueprint.format_element(e)).collect();
        let to_sum = |v: &CountVec| -> Vec<usize> {
            v.iter().enumerate().flat_map(|(c, &k)| core::iter::repeat(c + 1).take(k as usize)).collect()
        };
        let relations = blueprint.generating().iter().map(|(l, r)| (to_sum(l), to_sum(r))).collect();
        let carrier = PointedPreAdditionSet::new(labels, ZERO, relations)?;
        let action = monoid.table().to_vec();
        BlueModule::new(blueprint, carrier, action)
    }

    pub fn blueprint(&self) -> &FiniteBlueprint {
        &self.blueprint
    }

    pub fn carrier(&self) -> &PointedPreAdditionSet {
        &self.carrier
    }

    pub fn act(&self, a: usize, m: usize) -> usize {
        self.action[a][m]
    }

    pub fn action(&self) -> &[Vec<usize>] {
        &self.action
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleViolation {
    /// `1.m ≠ m`.
    Unit { element: usize },
    /// `0.m ≠ ∗`.
    Zero { element: usize },
    /// `a.∗ ≠ ∗`.
    Base { scalar: usize },
    /// `(ab).m ≠ a.(b.m)`.
    Associativity { a: usize, b: usize, element: usize },
    /// Two related sums whose images under the action are not related.
    Compatibility { lhs: Vec<usize>, rhs: Vec<usize> },
    /// Distinct singletons (or a singleton and `∗`) that are related.
    Axiom3 { left: usize, right: usize },
}

impl fmt::Display for ModuleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleViolation::Unit { element } => write!(f, "1.m != m for element {element}"),
            ModuleViolation::Zero { element } => write!(f, "0.m != * for element {element}"),
            ModuleViolation::Base { scalar } => write!(f, "a.* != * for scalar {scalar}"),
            ModuleViolation::Associativity { a, b, element } => {
                write!(f, "(ab).m != a.(b.m) for a={a}, b={b}, m={element}")
            }
            ModuleViolation::Compatibility { lhs, rhs } => write!(f, "action breaks pre-addition: {lhs:?} vs {rhs:?}"),
            ModuleViolation::Axiom3 { left, right } => write!(f, "singletons {left} and {right} are related"),
        }
    }
}

/// Checks the action axioms exactly and the compatibility with the
/// pre-addition on the bounded closure.
///
/// Compatibility reduces to generators: every multiplicatively closed pair
/// of the blueprint applied to a single element, and every scalar applied to
/// a generating pair of the module.
pub fn check_blue_module(m: &BlueModule, bounds: Bounds) -> Result<Verdict<(), ModuleViolation>> {
    let fb = &m.blueprint;
    let monoid = fb.monoid();
    let carrier = &m.carrier;
    let base = carrier.base();
    let one = monoid.one();

    for e in 0..carrier.len() {
        if m.act(one, e) != e {
            return Ok(Verdict::No(ModuleViolation::Unit { element: e }));
        }
        if m.act(ZERO, e) != base {
            return Ok(Verdict::No(ModuleViolation::Zero { element: e }));
        }
    }
    for a in 0..monoid.len() {
        if m.act(a, base) != base {
            return Ok(Verdict::No(ModuleViolation::Base { scalar: a }));
        }
        for b in 0..monoid.len() {
            for e in 0..carrier.len() {
                if m.act(monoid.mul(a, b), e) != m.act(a, m.act(b, e)) {
                    return Ok(Verdict::No(ModuleViolation::Associativity { a, b, element: e }));
                }
            }
        }
    }

    let cong = carrier.congruence()?;
    let mut unknown = false;
    let mut check = |lhs: Vec<usize>, rhs: Vec<usize>| -> Result<Option<ModuleViolation>> {
        match cong.holds(&carrier.vector(&lhs), &carrier.vector(&rhs), bounds)? {
            Verdict::Yes(_) => Ok(None),
            Verdict::No(()) => Ok(Some(ModuleViolation::Compatibility { lhs, rhs })),
            Verdict::Unknown => {
                unknown = true;
                Ok(None)
            }
        }
    };

    let apply = |v: &[u32], e: usize| -> Vec<usize> {
        v.iter().enumerate().flat_map(|(c, &k)| core::iter::repeat(m.act(c + 1, e)).take(k as usize)).collect()
    };
    for (u, v) in fb.congruence().pairs() {
        for e in (0..carrier.len()).filter(|&e| e != base) {
            if let Some(w) = check(apply(u, e), apply(v, e))? {
                return Ok(Verdict::No(w));
            }
        }
    }
    for a in 1..monoid.len() {
        for (s, t) in carrier.relations() {
            let lhs = s.iter().map(|&e| m.act(a, e)).collect();
            let rhs = t.iter().map(|&e| m.act(a, e)).collect();
            if let Some(w) = check(lhs, rhs)? {
                return Ok(Verdict::No(w));
            }
        }
    }

    for x in 0..carrier.len() {
        for y in x + 1..carrier.len() {
            let lhs = carrier.vector(&[x]);
            let rhs = carrier.vector(&[y]);
            match cong.holds(&lhs, &rhs, bounds)? {
                Verdict::Yes(_) => return Ok(Verdict::No(ModuleViolation::Axiom3 { left: x, right: y })),
                Verdict::No(()) => {}
                Verdict::Unknown => unknown = true,
            }
        }
    }

    Ok(if unknown { Verdict::Unknown } else { Verdict::Yes(()) })
}

/// The `F_{1^2}`-module `∗ ∪ {±m : m ∈ lattice}` with `m + (−m) ≐ ∗`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SignedLatticeModule {
    lattice: BTreeSet<i64>,
}

impl SignedLatticeModule {
    pub fn new(lattice: impl IntoIterator<Item = i64>) -> Self {
        SignedLatticeModule { lattice: lattice.into_iter().collect() }
    }

    pub fn lattice(&self) -> &BTreeSet<i64> {
        &self.lattice
    }

    /// Carrier index of `sign·x^m`; the base point is index 0.
    pub fn element(&self, m: i64, negative: bool) -> Option<usize> {
        let k = self.lattice.iter().position(|&x| x == m)?;
        Some(1 + 2 * k + usize::from(negative))
    }

    pub fn carrier(&self) -> Result<PointedPreAdditionSet> {
        let mut labels = vec![String::from("*")];
        let mut relations = Vec::new();
        for (k, m) in self.lattice.iter().enumerate() {
            labels.push(format!("x^{m}"));
            labels.push(format!("-x^{m}"));
            relations.push((vec![1 + 2 * k, 2 + 2 * k], vec![]));
        }
        PointedPreAdditionSet::new(labels, 0, relations)
    }

    /// The module with `F_{1^2}` acting by `−1` swapping signs.
    pub fn to_blue_module(&self) -> Result<BlueModule> {
        let fb = f1n(2)?.finite()?;
        let carrier = self.carrier()?;
        let monoid = fb.monoid();
        let minus = monoid.index_of(&MonoidWord::generator(0));
        let swap = |e: usize| if e == 0 { 0 } else if e % 2 == 1 { e + 1 } else { e - 1 };
        let action = (0..monoid.len())
            .map(|a| {
                (0..carrier.len())
                    .map(|e| match a {
                        ZERO => 0,
                        _ if a == minus => swap(e),
                        _ => e,
                    })
                    .collect()
            })
            .collect();
        BlueModule::new(fb, carrier, action)
    }

    /// `+m` and `−m` are distinct elements and stay unrelated.
    pub fn sign_action_is_free(&self, bounds: Bounds) -> Result<bool> {
        let module = self.to_blue_module()?;
        let minus = module.blueprint().monoid().index_of(&MonoidWord::generator(0));
        let carrier = module.carrier();
        let cong = carrier.congruence()?;
        for &m in &self.lattice {
            let (Some(p), Some(n)) = (self.element(m, false), self.element(m, true)) else {
                return Ok(false);
            };
            if p == n || module.act(minus, p) != n || module.act(minus, n) != p {
                return Ok(false);
            }
            if !cong.holds(&carrier.vector(&[p]), &carrier.vector(&[n]), bounds)?.is_no() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Number of sign orbits of non-base elements.
pub fn module_dimension(m: &SignedLatticeModule) -> usize {
    m.lattice.len()
}

/// Exponents `lo..=hi`, unbounded on a side given as `None`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExponentRange {
    pub lo: Option<i64>,
    pub hi: Option<i64>,
}

impl ExponentRange {
    pub fn at_least(lo: i64) -> Self {
        ExponentRange { lo: Some(lo), hi: None }
    }

    pub fn at_most(hi: i64) -> Self {
        ExponentRange { lo: None, hi: Some(hi) }
    }

    pub fn contains(&self, i: i64) -> bool {
        self.lo.map_or(true, |lo| lo <= i) && self.hi.map_or(true, |hi| i <= hi)
    }

    pub fn intersect(&self, other: &ExponentRange) -> ExponentRange {
        let pick = |a: Option<i64>, b: Option<i64>, f: fn(i64, i64) -> i64| match (a, b) {
            (Some(x), Some(y)) => Some(f(x, y)),
            (x, None) | (None, x) => x,
        };
        ExponentRange { lo: pick(self.lo, other.lo, i64::max), hi: pick(self.hi, other.hi, i64::min) }
    }

    pub fn is_empty(&self) -> bool {
        matches!((self.lo, self.hi), (Some(lo), Some(hi)) if lo > hi)
    }

    /// `Some((lo, hi))` when both ends are finite.
    pub fn bounded(&self) -> Option<(i64, i64)> {
        Some((self.lo?, self.hi?))
    }
}

/// Restriction of a chart to the overlap: `t^i ↦ x^{sign·i + shift}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Restriction {
    pub sign: i64,
    pub shift: i64,
}

impl Restriction {
    pub fn apply(&self, i: i64) -> i64 {
        self.sign * i + self.shift
    }

    pub fn image(&self, r: &ExponentRange) -> ExponentRange {
        let lo = r.lo.map(|i| self.apply(i));
        let hi = r.hi.map(|i| self.apply(i));
        if self.sign > 0 {
            ExponentRange { lo, hi }
        } else {
            ExponentRange { lo: hi, hi: lo }
        }
    }

    pub fn preimage(&self, e: i64) -> i64 {
        (e - self.shift) * self.sign
    }
}

/// One affine chart: sections `±t^i` with `i` in `exponents`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    pub coordinate: &'static str,
    pub exponents: ExponentRange,
    pub restriction: Restriction,
}

/// The two standard charts of `O(n)`: `x^i` (`i ≥ 0`) and `y^j = x^{n-j}` (`j ≥ 0`).
pub fn twisted_charts(n: i64) -> [Chart; 2] {
    [
        Chart { coordinate: "x", exponents: ExponentRange::at_least(0), restriction: Restriction { sign: 1, shift: 0 } },
        Chart { coordinate: "y", exponents: ExponentRange::at_least(0), restriction: Restriction { sign: -1, shift: n } },
    ]
}

/// A signed chart section `sign·t^exponent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ChartSection {
    pub negative: bool,
    pub exponent: i64,
}

/// A pair of chart sections with equal restrictions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GlobalSection {
    pub left: ChartSection,
    pub right: ChartSection,
}

impl GlobalSection {
    /// Product as a section of `O(m + n)`.
    pub fn mul(&self, other: &GlobalSection) -> GlobalSection {
        let f = |a: ChartSection, b: ChartSection| ChartSection {
            negative: a.negative != b.negative,
            exponent: a.exponent + b.exponent,
        };
        GlobalSection { left: f(self.left, other.left), right: f(self.right, other.right) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equalizer {
    pub degree: i64,
    pub sections: Vec<GlobalSection>,
    pub module: SignedLatticeModule,
}

impl Equalizer {
    pub fn contains(&self, s: &GlobalSection) -> bool {
        self.sections.binary_search(s).is_ok()
    }

    /// Positive generators, one per sign orbit, as `x^i`.
    pub fn basis(&self) -> Vec<String> {
        self.module.lattice().iter().map(|i| format!("x^{i}")).collect()
    }
}

/// Sections of `O(n)` over both charts that agree on the overlap.
pub fn equalizer(n: i64) -> Equalizer {
    let [c0, c1] = twisted_charts(n);
    let overlap = c0.restriction.image(&c0.exponents).intersect(&c1.restriction.image(&c1.exponents));
    let mut sections = Vec::new();
    if !overlap.is_empty() {
        let (lo, hi) = overlap.bounded().expect("the charts bound opposite ends of the overlap");
        for e in lo..=hi {
            let i = c0.restriction.preimage(e);
            let j = c1.restriction.preimage(e);
            if !c0.exponents.contains(i) || !c1.exponents.contains(j) {
                continue;
            }
            for (s0, s1) in [(false, false), (false, true), (true, false), (true, true)] {
                let agree = s0 == s1 && c0.restriction.apply(i) == c1.restriction.apply(j);
                if agree {
                    sections.push(GlobalSection {
                        left: ChartSection { negative: s0, exponent: i },
                        right: ChartSection { negative: s1, exponent: j },
                    });
                }
            }
        }
    }
    sections.sort();
    let module = SignedLatticeModule::new(sections.iter().map(|s| s.left.exponent));
    Equalizer { degree: n, sections, module }
}

/// `dim_{F_{1^2}} H^0(P^1, O(n))`.
pub fn h0_twist(n: i64) -> usize {
    module_dimension(&equalizer(n).module)
}
