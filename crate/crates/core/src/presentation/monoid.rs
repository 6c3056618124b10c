//! Finitely presented commutative monoids with an absorbing zero.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::{Error, Result};

/// An element of a free commutative monoid with zero, written as an
/// exponent vector over the generators of some presentation.
///
/// Trailing zero exponents are trimmed so equal words compare equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct MonoidWord {
    zero: bool,
    exponents: Vec<u32>,
}

impl MonoidWord {
    pub fn one() -> Self {
        MonoidWord { zero: false, exponents: Vec::new() }
    }

    pub fn zero() -> Self {
        MonoidWord { zero: true, exponents: Vec::new() }
    }

    pub fn generator(index: usize) -> Self {
        Self::power(index, 1)
    }

    pub fn power(index: usize, e: u32) -> Self {
        let mut exponents = vec![0; index + 1];
        exponents[index] = e;
        Self::from_exponents(exponents)
    }

    pub fn from_exponents(mut exponents: Vec<u32>) -> Self {
        while exponents.last() == Some(&0) {
            exponents.pop();
        }
        MonoidWord { zero: false, exponents }
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    pub fn is_one(&self) -> bool {
        !self.zero && self.exponents.is_empty()
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exponents.get(i).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    /// Highest generator index used plus one.
    pub fn support_len(&self) -> usize {
        self.exponents.len()
    }

    pub fn mul(&self, other: &MonoidWord) -> MonoidWord {
        if self.zero || other.zero {
            return MonoidWord::zero();
        }
        let n = self.exponents.len().max(other.exponents.len());
        let e = (0..n).map(|i| self.exponent(i) + other.exponent(i)).collect();
        MonoidWord::from_exponents(e)
    }

    pub fn pow(&self, k: u32) -> MonoidWord {
        if self.zero {
            return if k == 0 { MonoidWord::one() } else { MonoidWord::zero() };
        }
        MonoidWord::from_exponents(self.exponents.iter().map(|e| e * k).collect())
    }

    /// Dense exponent vector of length `n` (`n` must cover the support).
    pub fn dense(&self, n: usize) -> Vec<u32> {
        (0..n).map(|i| self.exponent(i)).collect()
    }

    /// Replaces every generator by a word, multiplicatively.
    pub fn substitute(&self, images: &[MonoidWord]) -> MonoidWord {
        if self.zero {
            return MonoidWord::zero();
        }
        self.exponents
            .iter()
            .enumerate()
            .fold(MonoidWord::one(), |acc, (i, &e)| acc.mul(&images[i].pow(e)))
    }
}

/// Generators and defining relations of a commutative monoid with zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidPresentation {
    generators: Vec<String>,
    relations: Vec<(MonoidWord, MonoidWord)>,
}

impl MonoidPresentation {
    pub fn new(generators: Vec<String>, relations: Vec<(MonoidWord, MonoidWord)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for g in &generators {
            if !seen.insert(g.as_str()) {
                return Err(Error::DuplicateGenerator(g.clone()));
            }
        }
        let p = MonoidPresentation { generators, relations };
        for (i, (a, b)) in p.relations.iter().enumerate() {
            for (side, w) in [("lhs", a), ("rhs", b)] {
                p.check_word(w, &format!("monoid_relations[{i}].{side}"))?;
            }
        }
        Ok(p)
    }

    /// The free commutative monoid with zero on the given generators.
    pub fn free<S: Into<String>>(generators: impl IntoIterator<Item = S>) -> Result<Self> {
        Self::new(generators.into_iter().map(Into::into).collect(), Vec::new())
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relations(&self) -> &[(MonoidWord, MonoidWord)] {
        &self.relations
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn check_word(&self, w: &MonoidWord, position: &str) -> Result<()> {
        if w.support_len() > self.generators.len() {
            return Err(Error::UndeclaredGenerator {
                name: format!("#{}", w.support_len() - 1),
                position: position.into(),
            });
        }
        Ok(())
    }

    pub fn format_word(&self, w: &MonoidWord) -> String {
        if w.is_zero() {
            return "0".into();
        }
        if w.is_one() {
            return "1".into();
        }
        let mut s = String::new();
        for (i, &e) in w.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => s.push_str(&self.generators[i]),
                e => s.push_str(&format!("{}^{}", self.generators[i], e)),
            }
        }
        s
    }
}

/// Why a monoid could not be enumerated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divergence {
    pub bound: u32,
    /// A word of degree `bound` not equal to any shorter word.
    pub witness: MonoidWord,
}

/// A finite commutative monoid with zero, given by a full multiplication
/// table. Element 0 is the absorbing element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMonoid {
    elements: Vec<MonoidWord>,
    table: Vec<Vec<usize>>,
    one: usize,
    generator_images: Vec<usize>,
    lookup: BTreeMap<Vec<u32>, usize>,
    ngens: usize,
    bound: u32,
}

pub const ZERO: usize = 0;

const MAX_BOUNDED_WORDS: usize = 250_000;

/// Union-find over exponent vectors of bounded degree plus a zero node.
struct BoundedClosure {
    ngens: usize,
    words: Vec<Vec<u32>>,
    index: BTreeMap<Vec<u32>, usize>,
    parent: Vec<usize>,
}

impl BoundedClosure {
    fn new(ngens: usize, bound: u32) -> Result<Self> {
        let mut words = Vec::new();
        let mut cur = vec![0u32; ngens];
        compositions(ngens, bound, 0, &mut cur, &mut words);
        if words.len() > MAX_BOUNDED_WORDS {
            return Err(Error::InfiniteMonoid { bound });
        }
        words.sort_by(|a, b| shortlex(a, b));
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i + 1)).collect();
        let n = words.len() + 1;
        Ok(BoundedClosure { ngens, words, index, parent: (0..n).collect() })
    }

    fn node(&self, v: &[u32]) -> Option<usize> {
        self.index.get(v).copied()
    }

    fn word(&self, node: usize) -> Option<&[u32]> {
        (node > 0).then(|| self.words[node - 1].as_slice())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // keep the smaller node (zero, then shortlex-smaller words) as root
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    fn shift(&self, node: usize, delta: &[u32]) -> Option<usize> {
        match self.word(node) {
            None => Some(0),
            Some(w) => {
                let v: Vec<u32> = w.iter().zip(delta).map(|(a, b)| a + b).collect();
                self.node(&v)
            }
        }
    }

    fn apply_relation(&mut self, u: &MonoidWord, v: &MonoidWord) {
        let n = self.ngens;
        for node in 1..=self.words.len() {
            let w = self.words[node - 1].clone();
            for (from, to) in [(u, v), (v, u)] {
                if from.is_zero() {
                    continue;
                }
                let fd = from.dense(n);
                if !w.iter().zip(&fd).all(|(a, b)| a >= b) {
                    continue;
                }
                let target = if to.is_zero() {
                    Some(0)
                } else {
                    let td = to.dense(n);
                    let t: Vec<u32> = w.iter().zip(&fd).zip(&td).map(|((a, b), c)| a - b + c).collect();
                    self.node(&t)
                };
                if let Some(t) = target {
                    self.union(node, t);
                }
            }
        }
    }

    /// Makes the partition a congruence within the degree bound.
    fn saturate(&mut self) {
        loop {
            let mut changed = false;
            for node in 1..=self.words.len() {
                let root = self.find(node);
                if root == node {
                    continue;
                }
                for g in 0..self.ngens {
                    let mut delta = vec![0u32; self.ngens];
                    delta[g] = 1;
                    if let (Some(a), Some(b)) = (self.shift(node, &delta), self.shift(root, &delta)) {
                        changed |= self.union(a, b);
                    }
                }
            }
            if !changed {
                break;
            }
        }
    }
}

fn compositions(n: usize, budget: u32, i: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if out.len() > MAX_BOUNDED_WORDS {
        return;
    }
    if i == n {
        out.push(cur.clone());
        return;
    }
    for e in 0..=budget {
        cur[i] = e;
        compositions(n, budget - e, i + 1, cur, out);
    }
    cur[i] = 0;
}

fn shortlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| b.cmp(a))
}

impl FiniteMonoid {
    /// Enumerates the monoid using words of total degree at most `bound`.
    ///
    /// The result is exact when it is `Ok`: every word of degree `bound`
    /// equals a shorter word, so by induction so does every longer word.
    pub fn enumerate(m: &MonoidPresentation, bound: u32) -> Result<core::result::Result<FiniteMonoid, Divergence>> {
        let ngens = m.generators.len();
        let bound = bound.max(1);
        let mut c = BoundedClosure::new(ngens, bound)?;
        for (u, v) in &m.relations {
            c.apply_relation(u, v);
        }
        c.saturate();

        // class -> members below the bound
        let nodes = c.words.len();
        let mut small: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
        let zero_root = c.find(0);
        for node in 1..=nodes {
            let w = c.words[node - 1].clone();
            let deg: u32 = w.iter().sum();
            let r = c.find(node);
            if deg < bound && r != zero_root {
                small
                    .entry(r)
                    .and_modify(|best| {
                        if w < *best {
                            *best = w.clone();
                        }
                    })
                    .or_insert(w);
            }
        }
        for node in 1..=nodes {
            let deg: u32 = c.words[node - 1].iter().sum();
            let r = c.find(node);
            if deg == bound && r != zero_root && !small.contains_key(&r) {
                return Ok(Err(Divergence {
                    bound,
                    witness: MonoidWord::from_exponents(c.words[node - 1].clone()),
                }));
            }
        }

        let mut reps: Vec<(usize, Vec<u32>)> = small.into_iter().collect();
        reps.sort_by(|a, b| shortlex(&a.1, &b.1));
        let mut elements = vec![MonoidWord::zero()];
        let mut root_to_elem = BTreeMap::new();
        root_to_elem.insert(zero_root, ZERO);
        for (r, w) in &reps {
            root_to_elem.insert(*r, elements.len());
            elements.push(MonoidWord::from_exponents(w.clone()));
        }
        let mut lookup = BTreeMap::new();
        for node in 1..=nodes {
            let r = c.find(node);
            lookup.insert(c.words[node - 1].clone(), root_to_elem[&r]);
        }

        let mut fm = FiniteMonoid {
            elements,
            table: Vec::new(),
            one: 0,
            generator_images: Vec::new(),
            lookup,
            ngens,
            bound,
        };
        fm.one = fm.reduce(&vec![0; ngens]);
        fm.generator_images = (0..ngens)
            .map(|g| {
                let mut v = vec![0; ngens];
                v[g] = 1;
                fm.reduce(&v)
            })
            .collect();
        let n = fm.elements.len();
        let mut table = vec![vec![ZERO; n]; n];
        for i in 0..n {
            for j in 0..n {
                table[i][j] = fm.multiply_words(i, j);
            }
        }
        fm.table = table;
        Ok(Ok(fm))
    }

    /// Enumerates with a growing bound, failing with `InfiniteMonoid` once the
    /// bounded word space gets too large.
    pub fn build(m: &MonoidPresentation) -> Result<FiniteMonoid> {
        let maxdeg = m
            .relations
            .iter()
            .flat_map(|(a, b)| [a.degree(), b.degree()])
            .max()
            .unwrap_or(0);
        let mut bound = (maxdeg + 1).max(2);
        loop {
            match Self::enumerate(m, bound) {
                Ok(Ok(fm)) => return Ok(fm),
                Ok(Err(_)) | Err(Error::InfiniteMonoid { .. }) if bound < 64 => bound *= 2,
                Ok(Err(d)) => return Err(Error::InfiniteMonoid { bound: d.bound }),
                Err(e) => return Err(e),
            }
        }
    }

    fn multiply_words(&self, i: usize, j: usize) -> usize {
        if i == ZERO || j == ZERO {
            return ZERO;
        }
        let v: Vec<u32> = (0..self.ngens)
            .map(|g| self.elements[i].exponent(g) + self.elements[j].exponent(g))
            .collect();
        self.reduce(&v)
    }

    /// Reduces a dense exponent vector to its element index.
    fn reduce(&self, v: &[u32]) -> usize {
        let mut v = v.to_vec();
        loop {
            let deg: u32 = v.iter().sum();
            if deg <= self.bound {
                return self.lookup[&v];
            }
            // peel off a sub-word of degree `bound` and replace it by its class
            let mut take = vec![0u32; v.len()];
            let mut need = self.bound;
            for (t, &x) in take.iter_mut().zip(&v) {
                let k = x.min(need);
                *t = k;
                need -= k;
            }
            let e = self.lookup[&take];
            if e == ZERO {
                return ZERO;
            }
            let rep = &self.elements[e];
            for g in 0..v.len() {
                v[g] = v[g] - take[g] + rep.exponent(g);
            }
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn elements(&self) -> &[MonoidWord] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &MonoidWord {
        &self.elements[i]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn generator_element(&self, g: usize) -> usize {
        self.generator_images[g]
    }

    /// The element represented by a word of the presentation.
    pub fn index_of(&self, w: &MonoidWord) -> usize {
        if w.is_zero() {
            return ZERO;
        }
        w.exponents().iter().enumerate().fold(self.one, |acc, (g, &e)| {
            self.table[acc][self.pow(self.generator_images[g], e)]
        })
    }

    pub fn generator_count(&self) -> usize {
        self.ngens
    }

    pub fn is_unit(&self, a: usize) -> bool {
        (0..self.len()).any(|b| self.table[a][b] == self.one)
    }

    pub fn units(&self) -> BTreeSet<usize> {
        (0..self.len()).filter(|&a| self.is_unit(a)).collect()
    }

    pub fn pow(&self, a: usize, k: u32) -> usize {
        (0..k).fold(self.one, |acc, _| self.table[acc][a])
    }

    pub fn enumeration_bound(&self) -> u32 {
        self.bound
    }
}

/// Canonical representatives of all monoid elements, or the divergence
/// signal when new elements still appear at the bound.
pub fn enumerate_monoid(m: &MonoidPresentation, bound: u32) -> Result<core::result::Result<Vec<MonoidWord>, Divergence>> {
    Ok(FiniteMonoid::enumerate(m, bound)?.map(|fm| fm.elements))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: u32) -> MonoidPresentation {
        MonoidPresentation::new(
            vec!["z".into()],
            vec![(MonoidWord::power(0, n), MonoidWord::one())],
        )
        .unwrap()
    }

    #[test]
    fn order_two_group_with_zero() {
        let els = enumerate_monoid(&cyclic(2), 4).unwrap().unwrap();
        assert_eq!(els.len(), 3);
        assert!(els[0].is_zero());
        assert!(els[1].is_one());
        assert_eq!(els[2], MonoidWord::generator(0));
    }

    #[test]
    fn free_monoid_diverges() {
        let m = MonoidPresentation::free(["x"]).unwrap();
        let d = enumerate_monoid(&m, 5).unwrap().unwrap_err();
        assert_eq!(d.witness, MonoidWord::power(0, 5));
    }

    #[test]
    fn roots_of_unity_of_order_four() {
        let els = enumerate_monoid(&cyclic(4), 8).unwrap().unwrap();
        assert_eq!(els.len(), 5);
    }

    #[test]
    fn bound_too_small_is_divergence_not_error() {
        // z^6 = 1 needs degree 6 words
        assert!(enumerate_monoid(&cyclic(6), 4).unwrap().is_err());
        assert_eq!(enumerate_monoid(&cyclic(6), 8).unwrap().unwrap().len(), 7);
    }

    #[test]
    fn multiplication_table_of_cyclic_group() {
        let fm = FiniteMonoid::build(&cyclic(4)).unwrap();
        let z = fm.generator_element(0);
        assert_eq!(fm.pow(z, 4), fm.one());
        assert_ne!(fm.pow(z, 2), fm.one());
        assert_eq!(fm.mul(z, ZERO), ZERO);
        assert_eq!(fm.units().len(), 4);
    }

    #[test]
    fn nilpotent_truncation() {
        // x^3 = 0
        let m = MonoidPresentation::new(
            vec!["x".into()],
            vec![(MonoidWord::power(0, 3), MonoidWord::zero())],
        )
        .unwrap();
        let fm = FiniteMonoid::build(&m).unwrap();
        assert_eq!(fm.len(), 4);
        let x = fm.generator_element(0);
        assert_eq!(fm.pow(x, 3), ZERO);
        assert_eq!(fm.index_of(&MonoidWord::power(0, 17)), ZERO);
    }

    #[test]
    fn two_generator_relations() {
        // x^2 = y, y^2 = 1: cyclic of order 4 generated by x, y = x^2
        let m = MonoidPresentation::new(
            vec!["x".into(), "y".into()],
            vec![
                (MonoidWord::power(0, 2), MonoidWord::generator(1)),
                (MonoidWord::power(1, 2), MonoidWord::one()),
            ],
        )
        .unwrap();
        let fm = FiniteMonoid::build(&m).unwrap();
        assert_eq!(fm.len(), 5);
        let x = fm.generator_element(0);
        let y = fm.generator_element(1);
        assert_eq!(fm.mul(x, x), y);
        assert_eq!(fm.pow(x, 4), fm.one());
    }

    #[test]
    fn canonical_words_are_deterministic() {
        let a = FiniteMonoid::build(&cyclic(3)).unwrap();
        let b = FiniteMonoid::build(&cyclic(3)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn undeclared_generator_rejected() {
        let err = MonoidPresentation::new(
            vec!["x".into()],
            vec![(MonoidWord::generator(1), MonoidWord::one())],
        )
        .unwrap_err();
        assert!(matches!(err, Error::UndeclaredGenerator { .. }));
    }
}
