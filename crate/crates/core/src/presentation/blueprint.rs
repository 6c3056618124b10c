//! Blueprints `A⫽R`: formal sums, presentations and their finite models.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use super::congruence::{Bounds, Congruence, CountVec, Verdict};
use super::monoid::{FiniteMonoid, MonoidPresentation, MonoidWord, ZERO};
use crate::{Error, Result};

/// A finite formal sum of monoid words, i.e. an element of `N[A]`.
///
/// Terms equal to the absorbing element are dropped on construction, so the
/// zero word and the empty sum are the same value.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FormalSum {
    terms: BTreeMap<MonoidWord, u32>,
}

impl FormalSum {
    pub fn empty() -> Self {
        FormalSum::default()
    }

    pub fn single(w: MonoidWord) -> Self {
        Self::from_words([w])
    }

    pub fn from_words(words: impl IntoIterator<Item = MonoidWord>) -> Self {
        let mut s = FormalSum::default();
        for w in words {
            s.push(w, 1);
        }
        s
    }

    fn push(&mut self, w: MonoidWord, k: u32) {
        if !w.is_zero() && k > 0 {
            *self.terms.entry(w).or_insert(0) += k;
        }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of terms counted with multiplicity.
    pub fn degree(&self) -> u32 {
        self.terms.values().sum()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MonoidWord, u32)> {
        self.terms.iter().map(|(w, &k)| (w, k))
    }

    /// Terms expanded with multiplicity, in word order.
    pub fn words(&self) -> Vec<MonoidWord> {
        self.terms().flat_map(|(w, k)| (0..k).map(move |_| w.clone())).collect()
    }

    pub fn add(&self, other: &FormalSum) -> FormalSum {
        let mut s = self.clone();
        for (w, k) in other.terms() {
            s.push(w.clone(), k);
        }
        s
    }

    pub fn scale(&self, a: &MonoidWord) -> FormalSum {
        let mut s = FormalSum::default();
        for (w, k) in self.terms() {
            s.push(w.mul(a), k);
        }
        s
    }

    pub fn substitute(&self, images: &[MonoidWord]) -> FormalSum {
        let mut s = FormalSum::default();
        for (w, k) in self.terms() {
            s.push(w.substitute(images), k);
        }
        s
    }

    /// The single term of a one-term sum.
    pub fn as_single(&self) -> Option<&MonoidWord> {
        match self.terms.iter().next() {
            Some((w, 1)) if self.terms.len() == 1 => Some(w),
            _ => None,
        }
    }
}

/// A monoid presentation together with generating pre-addition relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlueprintPresentation {
    monoid: MonoidPresentation,
    preaddition: Vec<(FormalSum, FormalSum)>,
}

impl BlueprintPresentation {
    pub fn new(monoid: MonoidPresentation, preaddition: Vec<(FormalSum, FormalSum)>) -> Result<Self> {
        for (i, (l, r)) in preaddition.iter().enumerate() {
            for (side, s) in [("lhs", l), ("rhs", r)] {
                for (j, w) in s.terms.keys().enumerate() {
                    monoid.check_word(w, &format!("preaddition[{i}].{side}[{j}]"))?;
                }
            }
        }
        Ok(BlueprintPresentation { monoid, preaddition })
    }

    pub fn monoid(&self) -> &MonoidPresentation {
        &self.monoid
    }

    pub fn preaddition(&self) -> &[(FormalSum, FormalSum)] {
        &self.preaddition
    }

    pub fn generators(&self) -> &[String] {
        self.monoid.generators()
    }

    pub fn format_sum(&self, s: &FormalSum) -> String {
        if s.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = s.words().iter().map(|w| self.monoid.format_word(w)).collect();
        parts.join(" + ")
    }

    /// Enumerates the monoid and prepares the congruence engine.
    pub fn finite(&self) -> Result<FiniteBlueprint> {
        FiniteBlueprint::new(self)
    }
}

/// The blueprint of a monoid: the empty pre-addition.
pub fn from_monoid(m: MonoidPresentation) -> BlueprintPresentation {
    BlueprintPresentation { monoid: m, preaddition: Vec::new() }
}

/// `F_1 = {0, 1}`.
pub fn f1() -> BlueprintPresentation {
    from_monoid(MonoidPresentation::free(Vec::<String>::new()).expect("no generators"))
}

/// The cyclotomic blueprint `F_{1^n}` on `{0} ∪ μ_n`.
///
/// For every divisor `d > 1` of `n` the `d`-th roots of unity sum to zero:
/// `Σ_{i<d} z^{(n/d)i} ≐ 0`.
pub fn f1n(n: u64) -> Result<BlueprintPresentation> {
    if n == 0 {
        return Err(Error::Precondition("f1n needs n >= 1".into()));
    }
    let e = u32::try_from(n).map_err(|_| Error::Precondition("n too large".into()))?;
    let monoid = MonoidPresentation::new(vec!["z".into()], vec![(MonoidWord::power(0, e), MonoidWord::one())])?;
    let mut pre = Vec::new();
    for d in (2..=e).filter(|d| e % d == 0) {
        let step = e / d;
        let sum = FormalSum::from_words((0..d).map(|i| MonoidWord::power(0, step * i)));
        pre.push((sum, FormalSum::empty()));
    }
    BlueprintPresentation::new(monoid, pre)
}

/// A finite commutative ring given by its operation tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingTables {
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    pub zero: usize,
    pub one: usize,
    pub labels: Vec<String>,
}

impl RingTables {
    /// `Z/n` with elements labelled by their residues.
    pub fn zmod(n: usize) -> RingTables {
        assert!(n >= 2);
        RingTables {
            add: (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect(),
            mul: (0..n).map(|a| (0..n).map(|b| (a * b) % n).collect()).collect(),
            zero: 0,
            one: 1,
            labels: (0..n).map(|k| format!("e{k}")).collect(),
        }
    }

    /// `F_4 = F_2[w]/(w^2 + w + 1)`; element `k` is `(k & 1) + (k >> 1) w`.
    pub fn gf4() -> RingTables {
        let mul = |a: usize, b: usize| {
            let (a0, a1, b0, b1) = (a & 1, a >> 1, b & 1, b >> 1);
            // w^2 = w + 1
            let c0 = (a0 * b0 + a1 * b1) & 1;
            let c1 = (a0 * b1 + a1 * b0 + a1 * b1) & 1;
            c0 | (c1 << 1)
        };
        RingTables {
            add: (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect(),
            mul: (0..4).map(|a| (0..4).map(|b| mul(a, b)).collect()).collect(),
            zero: 0,
            one: 1,
            labels: vec!["0".into(), "1".into(), "w".into(), "w1".into()],
        }
    }

    pub fn len(&self) -> usize {
        self.add.len()
    }

    pub fn is_empty(&self) -> bool {
        self.add.is_empty()
    }

    fn validate(&self) -> Result<()> {
        let n = self.len();
        let square = |t: &Vec<Vec<usize>>| t.len() == n && t.iter().all(|r| r.len() == n && r.iter().all(|&x| x < n));
        if n < 2 || !square(&self.add) || !square(&self.mul) || self.zero >= n || self.one >= n || self.labels.len() != n {
            return Err(Error::Malformed("ring tables must be square over n >= 2 labelled elements".into()));
        }
        if self.zero == self.one {
            return Err(Error::Malformed("ring must satisfy 1 != 0".into()));
        }
        for a in 0..n {
            for b in 0..n {
                if self.mul[a][b] != self.mul[b][a] || self.add[a][b] != self.add[b][a] {
                    return Err(Error::NonCommutative { a, b });
                }
            }
            if self.add[self.zero][a] != a || self.mul[self.one][a] != a || self.mul[self.zero][a] != self.zero {
                return Err(Error::Malformed(format!("identity laws fail at element {a}")));
            }
        }
        Ok(())
    }

    /// Generator index of a ring element in [`from_ring`], if it is one.
    fn generator_of(&self, k: usize) -> Option<usize> {
        if k == self.zero || k == self.one {
            return None;
        }
        Some(k - usize::from(self.zero < k) - usize::from(self.one < k))
    }

    /// The monoid word naming ring element `k` in [`from_ring`].
    pub fn element_word(&self, k: usize) -> MonoidWord {
        if k == self.zero {
            MonoidWord::zero()
        } else {
            self.generator_of(k).map_or_else(MonoidWord::one, MonoidWord::generator)
        }
    }
}

/// The blueprint of a finite commutative ring.
///
/// The monoid is the multiplicative monoid (one generator per element other
/// than 0 and 1); the pre-addition is generated by `a + b ≐ c` for every
/// unordered pair of nonzero elements with `a + b = c`.
pub fn from_ring(r: &RingTables) -> Result<BlueprintPresentation> {
    r.validate()?;
    let n = r.len();
    let gens: Vec<usize> = (0..n).filter(|&k| k != r.zero && k != r.one).collect();
    let names = gens.iter().map(|&k| r.labels[k].clone()).collect();
    let mut rels = Vec::new();
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i..] {
            let lhs = r.element_word(a).mul(&r.element_word(b));
            rels.push((lhs, r.element_word(r.mul[a][b])));
        }
    }
    let monoid = MonoidPresentation::new(names, rels)?;
    let nonzero: Vec<usize> = (0..n).filter(|&k| k != r.zero).collect();
    let mut pre = Vec::new();
    for (i, &a) in nonzero.iter().enumerate() {
        for &b in &nonzero[i..] {
            let lhs = FormalSum::from_words([r.element_word(a), r.element_word(b)]);
            pre.push((lhs, FormalSum::single(r.element_word(r.add[a][b]))));
        }
    }
    BlueprintPresentation::new(monoid, pre)
}

/// Outcome of the axiom (3) check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Axiom3 {
    Certified,
    /// Two distinct elements (or an element and the empty sum) are related.
    Violated(MonoidWord, MonoidWord),
    Unknown,
}

/// A blueprint whose monoid has been enumerated.
///
/// Coordinates of count vectors are the nonzero elements: element `e` of
/// the monoid is coordinate `e - 1`.
#[derive(Clone, Debug)]
pub struct FiniteBlueprint {
    presentation: BlueprintPresentation,
    monoid: FiniteMonoid,
    generating: Vec<(CountVec, CountVec)>,
    congruence: Congruence,
}

impl FiniteBlueprint {
    pub fn new(b: &BlueprintPresentation) -> Result<Self> {
        let monoid = FiniteMonoid::build(&b.monoid)?;
        let dim = monoid.len() - 1;
        let mut fb = FiniteBlueprint {
            presentation: b.clone(),
            monoid,
            generating: Vec::new(),
            congruence: Congruence::new(dim, [])?,
        };
        fb.generating = b.preaddition.iter().map(|(l, r)| (fb.vector(l), fb.vector(r))).collect();
        let mut pairs = Vec::new();
        for a in 1..fb.monoid.len() {
            for (u, v) in &fb.generating {
                pairs.push((fb.scale(a, u), fb.scale(a, v)));
            }
        }
        fb.congruence = Congruence::new(dim, pairs)?;
        Ok(fb)
    }

    pub fn presentation(&self) -> &BlueprintPresentation {
        &self.presentation
    }

    pub fn monoid(&self) -> &FiniteMonoid {
        &self.monoid
    }

    pub fn congruence(&self) -> &Congruence {
        &self.congruence
    }

    /// Generating relations as count vectors.
    pub fn generating(&self) -> &[(CountVec, CountVec)] {
        &self.generating
    }

    pub fn dim(&self) -> usize {
        self.monoid.len() - 1
    }

    /// Count vector of a formal sum; terms equal to zero in `A` vanish.
    pub fn vector(&self, s: &FormalSum) -> CountVec {
        let mut v = vec![0; self.dim()];
        for (w, k) in s.terms() {
            let e = self.monoid.index_of(w);
            if e != ZERO {
                v[e - 1] += k;
            }
        }
        v
    }

    pub fn element_vector(&self, e: usize) -> CountVec {
        let mut v = vec![0; self.dim()];
        if e != ZERO {
            v[e - 1] = 1;
        }
        v
    }

    /// Multiplies every term of a count vector by element `a`.
    pub fn scale(&self, a: usize, v: &[u32]) -> CountVec {
        let mut out = vec![0; self.dim()];
        for (i, &k) in v.iter().enumerate() {
            let e = self.monoid.mul(a, i + 1);
            if e != ZERO {
                out[e - 1] += k;
            }
        }
        out
    }

    pub fn sum_of(&self, v: &[u32]) -> FormalSum {
        let mut s = FormalSum::empty();
        for (i, &k) in v.iter().enumerate() {
            s.push(self.monoid.element(i + 1).clone(), k);
        }
        s
    }

    pub fn format_element(&self, e: usize) -> String {
        self.presentation.monoid.format_word(self.monoid.element(e))
    }

    /// Decides `lhs ≐ rhs`; a YES carries the derivation as a chain of sums.
    pub fn holds(&self, lhs: &FormalSum, rhs: &FormalSum, bounds: Bounds) -> Result<Verdict<Vec<FormalSum>>> {
        for (name, s) in [("lhs", lhs), ("rhs", rhs)] {
            for (j, w) in s.terms.keys().enumerate() {
                self.presentation.monoid.check_word(w, &format!("{name}[{j}]"))?;
            }
        }
        let (a, b) = (self.vector(lhs), self.vector(rhs));
        Ok(match self.congruence.holds(&a, &b, bounds)? {
            Verdict::Yes(path) => Verdict::Yes(path.iter().map(|v| self.sum_of(v)).collect()),
            Verdict::No(()) => Verdict::No(()),
            Verdict::Unknown => Verdict::Unknown,
        })
    }

    /// Whether `lhs - rhs` lies in the relation lattice `I(R)`.
    pub fn in_relation_lattice(&self, lhs: &FormalSum, rhs: &FormalSum) -> Result<bool> {
        let d = super::congruence::difference(&self.vector(lhs), &self.vector(rhs));
        self.congruence.lattice().contains(&d)
    }

    /// Axiom (3): no two distinct elements are related. Zero is compared as
    /// the empty sum.
    pub fn check_axiom3(&self, bounds: Bounds) -> Result<Axiom3> {
        let n = self.monoid.len();
        let mut open = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                let (u, v) = (self.element_vector(a), self.element_vector(b));
                if !self.congruence.refutes(&u, &v)? {
                    open.push((a, b, u, v));
                }
            }
        }
        if open.is_empty() {
            return Ok(Axiom3::Certified);
        }
        for (a, b, u, v) in &open {
            if self.congruence.derive(u, v, bounds).is_some() {
                let w = |e: usize| self.monoid.element(e).clone();
                return Ok(Axiom3::Violated(w(*a), w(*b)));
            }
        }
        Ok(Axiom3::Unknown)
    }
}

/// `lhs ≐ rhs` in the blueprint presented by `b`.
pub fn holds(b: &BlueprintPresentation, lhs: &FormalSum, rhs: &FormalSum, bounds: Bounds) -> Result<Verdict<Vec<FormalSum>>> {
    FiniteBlueprint::new(b)?.holds(lhs, rhs, bounds)
}

/// Axiom (3) for a presentation. When the monoid is infinite but free, a
/// generating relation between two distinct single terms is still reported.
pub fn check_axiom3(b: &BlueprintPresentation, bounds: Bounds) -> Result<Axiom3> {
    match FiniteBlueprint::new(b) {
        Ok(fb) => fb.check_axiom3(bounds),
        Err(e @ Error::InfiniteMonoid { .. }) => {
            if !b.monoid.relations().is_empty() {
                return Err(e);
            }
            for (l, r) in &b.preaddition {
                let single = |s: &FormalSum| {
                    if s.is_empty() {
                        Some(MonoidWord::zero())
                    } else {
                        s.as_single().cloned()
                    }
                };
                if let (Some(x), Some(y)) = (single(l), single(r)) {
                    if x != y {
                        return Ok(Axiom3::Violated(x, y));
                    }
                }
            }
            Err(e)
        }
        Err(e) => Err(e),
    }
}

/// A morphism given by the images of the source generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlueprintMorphismData {
    pub source: BlueprintPresentation,
    pub target: BlueprintPresentation,
    pub images: Vec<MonoidWord>,
}

/// The relation whose image fails in the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismViolation {
    MonoidRelation(usize),
    PreAddition(usize),
}

impl BlueprintMorphismData {
    pub fn new(source: BlueprintPresentation, target: BlueprintPresentation, images: Vec<MonoidWord>) -> Result<Self> {
        if images.len() != source.generators().len() {
            return Err(Error::Malformed(format!(
                "{} images for {} generators",
                images.len(),
                source.generators().len()
            )));
        }
        for (i, w) in images.iter().enumerate() {
            target.monoid.check_word(w, &format!("images[{i}]"))?;
        }
        Ok(BlueprintMorphismData { source, target, images })
    }

    pub fn identity(b: &BlueprintPresentation) -> Self {
        let images = (0..b.generators().len()).map(MonoidWord::generator).collect();
        BlueprintMorphismData { source: b.clone(), target: b.clone(), images }
    }

    pub fn apply_word(&self, w: &MonoidWord) -> MonoidWord {
        w.substitute(&self.images)
    }

    pub fn apply_sum(&self, s: &FormalSum) -> FormalSum {
        s.substitute(&self.images)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &BlueprintMorphismData) -> BlueprintMorphismData {
        BlueprintMorphismData {
            source: self.source.clone(),
            target: next.target.clone(),
            images: self.images.iter().map(|w| next.apply_word(w)).collect(),
        }
    }

    /// Whether two morphisms with the same target agree on every generator.
    pub fn same_map(&self, other: &BlueprintMorphismData) -> Result<bool> {
        let t = FiniteMonoid::build(&self.target.monoid)?;
        Ok(self.images.len() == other.images.len()
            && self.images.iter().zip(&other.images).all(|(a, b)| t.index_of(a) == t.index_of(b)))
    }
}

/// Checks that the images of all generating relations hold in the target.
pub fn morphism_check(f: &BlueprintMorphismData, bounds: Bounds) -> Result<Verdict<(), MorphismViolation>> {
    FiniteBlueprint::new(&f.source)?;
    let target = FiniteBlueprint::new(&f.target)?;
    let tm = target.monoid();
    for (i, (a, b)) in f.source.monoid.relations().iter().enumerate() {
        if tm.index_of(&f.apply_word(a)) != tm.index_of(&f.apply_word(b)) {
            return Ok(Verdict::No(MorphismViolation::MonoidRelation(i)));
        }
    }
    let mut unknown = false;
    for (i, (l, r)) in f.source.preaddition.iter().enumerate() {
        match target.holds(&f.apply_sum(l), &f.apply_sum(r), bounds)? {
            Verdict::Yes(_) => {}
            Verdict::No(()) => return Ok(Verdict::No(MorphismViolation::PreAddition(i))),
            Verdict::Unknown => unknown = true,
        }
    }
    Ok(if unknown { Verdict::Unknown } else { Verdict::Yes(()) })
}

/// The automorphism `z ↦ z^k` of `F_{1^n}`.
pub fn galois_action(n: u64, k: i64) -> Result<BlueprintMorphismData> {
    if n == 0 || i128::from(k).gcd(&i128::from(n)) != 1 {
        return Err(Error::NotCoprime { k, n });
    }
    let b = f1n(n)?;
    let e = i128::from(k).rem_euclid(i128::from(n)) as u32;
    Ok(BlueprintMorphismData { source: b.clone(), target: b, images: vec![MonoidWord::power(0, e)] })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> MonoidWord {
        MonoidWord::generator(0)
    }

    fn sum(ws: &[MonoidWord]) -> FormalSum {
        FormalSum::from_words(ws.iter().cloned())
    }

    #[test]
    fn formal_sums_drop_zero_terms() {
        let s = sum(&[MonoidWord::one(), MonoidWord::zero()]);
        assert_eq!(s, FormalSum::single(MonoidWord::one()));
        assert_eq!(FormalSum::single(MonoidWord::zero()), FormalSum::empty());
    }

    #[test]
    fn sign_cancels_in_f1_squared() {
        let b = f1n(2).unwrap();
        let v = holds(&b, &sum(&[MonoidWord::one(), z()]), &FormalSum::empty(), Bounds::default()).unwrap();
        assert!(v.is_yes());
        let s = sum(&[z(), z(), MonoidWord::one()]);
        assert!(holds(&b, &s, &s, Bounds::default()).unwrap().is_yes());
    }

    #[test]
    fn one_plus_one_is_not_zero_over_f1() {
        let two = sum(&[MonoidWord::one(), MonoidWord::one()]);
        assert!(holds(&f1(), &two, &FormalSum::empty(), Bounds::default()).unwrap().is_no());
    }

    #[test]
    fn sixth_roots_relations() {
        let b = f1n(6).unwrap();
        assert_eq!(b.preaddition().len(), 3);
        let degrees: Vec<u32> = b.preaddition().iter().map(|(l, _)| l.degree()).collect();
        assert_eq!(degrees, vec![2, 3, 6]);
        assert_eq!(b.preaddition()[0].0, sum(&[MonoidWord::one(), MonoidWord::power(0, 3)]));
        assert!(f1n(1).unwrap().preaddition().is_empty());
    }

    #[test]
    fn axiom3_on_cyclotomic_blueprints() {
        for n in [1, 2, 3, 4, 6] {
            assert_eq!(check_axiom3(&f1n(n).unwrap(), Bounds::default()).unwrap(), Axiom3::Certified, "n = {n}");
        }
    }

    #[test]
    fn axiom3_single_term_violation() {
        let m = MonoidPresentation::free(["a"]).unwrap();
        let b = BlueprintPresentation::new(m, vec![(FormalSum::single(z()), FormalSum::single(MonoidWord::one()))]).unwrap();
        assert_eq!(check_axiom3(&b, Bounds::default()).unwrap(), Axiom3::Violated(z(), MonoidWord::one()));
    }

    #[test]
    fn axiom3_derived_violation() {
        // adding 1 + 1 ≐ 0 to F_{1^2}: 1 ≐ 1 + (1 + ε) ≐ (1 + 1) + ε ≐ ε
        let one = MonoidWord::one();
        let base = f1n(2).unwrap();
        let mut pre = base.preaddition().to_vec();
        pre.push((sum(&[one.clone(), one.clone()]), FormalSum::empty()));
        let b = BlueprintPresentation::new(base.monoid().clone(), pre).unwrap();
        assert_eq!(check_axiom3(&b, Bounds::default()).unwrap(), Axiom3::Violated(one, z()));
    }

    #[test]
    fn ring_blueprints() {
        let z2 = from_ring(&RingTables::zmod(2)).unwrap();
        assert_eq!(z2.preaddition().len(), 1);
        assert_eq!(z2.preaddition()[0], (sum(&[MonoidWord::one(), MonoidWord::one()]), FormalSum::empty()));
        let z3 = from_ring(&RingTables::zmod(3)).unwrap();
        assert_eq!(z3.preaddition().len(), 3);
        assert_eq!(z3.finite().unwrap().monoid().len(), 3);
        let f4 = from_ring(&RingTables::gf4()).unwrap();
        assert_eq!(f4.preaddition().len(), 6);
        assert_eq!(f4.finite().unwrap().monoid().len(), 4);
    }

    #[test]
    fn non_commutative_tables_rejected() {
        let mut r = RingTables::zmod(3);
        r.mul[1][2] = 0;
        assert!(matches!(from_ring(&r), Err(Error::NonCommutative { .. })));
    }

    #[test]
    fn maps_from_f1_squared_into_z3() {
        let z3 = from_ring(&RingTables::zmod(3)).unwrap();
        let good = BlueprintMorphismData::new(f1n(2).unwrap(), z3.clone(), vec![MonoidWord::generator(0)]).unwrap();
        assert_eq!(morphism_check(&good, Bounds::default()).unwrap(), Verdict::Yes(()));
        let bad = BlueprintMorphismData::new(f1n(2).unwrap(), z3, vec![MonoidWord::one()]).unwrap();
        assert_eq!(
            morphism_check(&bad, Bounds::default()).unwrap(),
            Verdict::No(MorphismViolation::PreAddition(0))
        );
    }

    #[test]
    fn identity_is_valid() {
        for b in [f1n(4).unwrap(), from_ring(&RingTables::zmod(6)).unwrap()] {
            let id = BlueprintMorphismData::identity(&b);
            assert!(morphism_check(&id, Bounds::default()).unwrap().is_yes());
        }
    }

    #[test]
    fn galois_group_of_fourth_roots() {
        let g = galois_action(4, 3).unwrap();
        assert!(morphism_check(&g, Bounds::default()).unwrap().is_yes());
        let id = galois_action(4, 1).unwrap();
        assert!(!g.same_map(&id).unwrap());
        assert!(g.then(&g).same_map(&id).unwrap());
        assert!(matches!(galois_action(4, 2), Err(Error::NotCoprime { .. })));
        assert_eq!(galois_action(2, 1).unwrap().images, vec![MonoidWord::generator(0)]);
    }

    #[test]
    fn undeclared_generator_in_preaddition() {
        let m = MonoidPresentation::free(["x"]).unwrap();
        let err = BlueprintPresentation::new(m, vec![(FormalSum::single(MonoidWord::generator(3)), FormalSum::empty())])
            .unwrap_err();
        assert_eq!(err, Error::UndeclaredGenerator { name: "#3".into(), position: "preaddition[0].lhs[0]".into() });
    }
}
