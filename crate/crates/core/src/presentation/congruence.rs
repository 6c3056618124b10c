//! Congruences on free commutative monoids `N^k`, i.e. on formal sums.
//!
//! A pre-addition generated by relations is the smallest congruence on
//! `N[A]` containing the relations multiplied by every monoid element; on
//! the additive monoid `N^k` that is the equivalence closure of elementary
//! moves `w + u -> w + v`. Derivations are searched breadth-first under a
//! degree bound; refutations come from two homomorphisms out of the quotient
//! monoid: to the group `Z^k / L` (integer lattice of differences) and to
//! the Boolean semiring (support of the non-unit coordinates).

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::smith::Lattice;
use crate::Result;

/// A multiset over `dim` coordinates.
pub type CountVec = Vec<u32>;

pub const DEFAULT_DEPTH: u32 = 6;
pub const DEFAULT_DEGREE: u32 = 8;

const MAX_STATES: usize = 400_000;

/// Outcome of a bounded decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<Y = (), N = ()> {
    Yes(Y),
    No(N),
    Unknown,
}

impl<Y, N> Verdict<Y, N> {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }
    pub fn is_no(&self) -> bool {
        matches!(self, Verdict::No(_))
    }
    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown)
    }
}

/// Search limits for derivations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Closure rounds; round `r` composes chains of up to `2^(r-1)` moves.
    pub depth: u32,
    /// Maximal total degree of intermediate sums.
    pub degree: u32,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { depth: DEFAULT_DEPTH, degree: DEFAULT_DEGREE }
    }
}

impl Bounds {
    pub fn new(depth: u32, degree: u32) -> Self {
        Bounds { depth: depth.max(1), degree }
    }

    pub fn max_moves(&self) -> usize {
        1usize << (self.depth.saturating_sub(1)).min(20)
    }
}

/// One elementary move of a derivation: `(before, after)`.
pub type Step = (CountVec, CountVec);

/// A congruence on `N^dim` generated by pairs.
#[derive(Clone, Debug)]
pub struct Congruence {
    dim: usize,
    pairs: Vec<(CountVec, CountVec)>,
    lattice: Lattice,
    boolean_support: BTreeSet<usize>,
}

pub fn degree(v: &[u32]) -> u32 {
    v.iter().sum()
}

pub fn difference(a: &[u32], b: &[u32]) -> Vec<i128> {
    a.iter().zip(b).map(|(&x, &y)| x as i128 - y as i128).collect()
}

impl Congruence {
    pub fn new(dim: usize, pairs: impl IntoIterator<Item = (CountVec, CountVec)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in pairs {
            debug_assert!(u.len() == dim && v.len() == dim);
            if u != v {
                let p = if u <= v { (u, v) } else { (v, u) };
                set.insert(p);
            }
        }
        let pairs: Vec<_> = set.into_iter().collect();
        let rows: Vec<Vec<i128>> = pairs.iter().map(|(u, v)| difference(u, v)).collect();
        let lattice = Lattice::new(dim, &rows)?;
        let boolean_support = greatest_boolean_support(dim, &pairs);
        Ok(Congruence { dim, pairs, lattice, boolean_support })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pairs(&self) -> &[(CountVec, CountVec)] {
        &self.pairs
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// Sound refutation: `true` means `a` and `b` are certainly unrelated.
    pub fn refutes(&self, a: &[u32], b: &[u32]) -> Result<bool> {
        if !self.lattice.contains(&difference(a, b))? {
            return Ok(true);
        }
        let hit = |v: &[u32]| v.iter().enumerate().any(|(i, &c)| c > 0 && self.boolean_support.contains(&i));
        Ok(hit(a) != hit(b))
    }

    /// All sums reachable from `v` in one elementary move within `max_degree`.
    pub fn neighbours(&self, v: &[u32], max_degree: u32) -> Vec<CountVec> {
        let mut out = Vec::new();
        let d = degree(v);
        for (u, w) in &self.pairs {
            for (from, to) in [(u, w), (w, u)] {
                if !v.iter().zip(from).all(|(a, b)| a >= b) {
                    continue;
                }
                if d - degree(from) + degree(to) > max_degree {
                    continue;
                }
                out.push(v.iter().zip(from).zip(to).map(|((a, b), c)| a - b + c).collect());
            }
        }
        out
    }

    /// Searches a derivation `a ≐ b`; returns the sequence of sums visited.
    pub fn derive(&self, a: &[u32], b: &[u32], bounds: Bounds) -> Option<Vec<CountVec>> {
        if a == b {
            return Some(vec![a.to_vec()]);
        }
        let max_moves = bounds.max_moves();
        let mut parent: BTreeMap<CountVec, Option<CountVec>> = BTreeMap::new();
        let mut queue = VecDeque::new();
        parent.insert(a.to_vec(), None);
        queue.push_back((a.to_vec(), 0usize));
        while let Some((v, dist)) = queue.pop_front() {
            if dist >= max_moves {
                continue;
            }
            for n in self.neighbours(&v, bounds.degree) {
                if parent.contains_key(&n) {
                    continue;
                }
                parent.insert(n.clone(), Some(v.clone()));
                if n == b {
                    let mut path = vec![n];
                    let mut cur = v;
                    loop {
                        path.push(cur.clone());
                        match parent[&cur].clone() {
                            Some(p) => cur = p,
                            None => break,
                        }
                    }
                    path.reverse();
                    return Some(path);
                }
                if parent.len() > MAX_STATES {
                    return None;
                }
                queue.push_back((n, dist + 1));
            }
        }
        None
    }

    /// YES with a derivation, NO when refuted, UNKNOWN otherwise.
    pub fn holds(&self, a: &[u32], b: &[u32], bounds: Bounds) -> Result<Verdict<Vec<CountVec>>> {
        if a == b {
            return Ok(Verdict::Yes(vec![a.to_vec()]));
        }
        if self.refutes(a, b)? {
            return Ok(Verdict::No(()));
        }
        Ok(match self.derive(a, b, bounds) {
            Some(p) => Verdict::Yes(p),
            None => Verdict::Unknown,
        })
    }

    /// Sums of degree at most `bounds.degree` related to `a` (bounded class).
    pub fn bounded_class(&self, a: &[u32], bounds: Bounds) -> BTreeSet<CountVec> {
        let max_moves = bounds.max_moves();
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(a.to_vec());
        queue.push_back((a.to_vec(), 0usize));
        while let Some((v, dist)) = queue.pop_front() {
            if dist >= max_moves || seen.len() > MAX_STATES {
                continue;
            }
            for n in self.neighbours(&v, bounds.degree) {
                if seen.insert(n.clone()) {
                    queue.push_back((n, dist + 1));
                }
            }
        }
        seen
    }
}

/// The largest coordinate set `T` such that every generating pair has both
/// sides meeting `T` or neither; `z ↦ [supp z ∩ T ≠ ∅]` is then a monoid
/// homomorphism to the Boolean semiring constant on classes.
fn greatest_boolean_support(dim: usize, pairs: &[(CountVec, CountVec)]) -> BTreeSet<usize> {
    let mut t: BTreeSet<usize> = (0..dim).collect();
    let meets = |v: &CountVec, t: &BTreeSet<usize>| v.iter().enumerate().any(|(i, &c)| c > 0 && t.contains(&i));
    loop {
        let mut changed = false;
        for (u, v) in pairs {
            for (x, y) in [(u, v), (v, u)] {
                if meets(x, &t) && !meets(y, &t) {
                    for (i, &c) in x.iter().enumerate() {
                        if c > 0 {
                            changed |= t.remove(&i);
                        }
                    }
                }
            }
        }
        if !changed {
            return t;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancelling_pair() {
        // coordinates (1, e); 1 + e ≐ 0
        let c = Congruence::new(2, [(vec![1, 1], vec![0, 0])]).unwrap();
        let b = Bounds::default();
        assert!(c.holds(&[1, 1], &[0, 0], b).unwrap().is_yes());
        assert!(c.holds(&[2, 1], &[1, 0], b).unwrap().is_yes());
        assert!(c.holds(&[1, 0], &[0, 0], b).unwrap().is_no());
        assert!(c.holds(&[2, 0], &[0, 0], b).unwrap().is_no());
    }

    #[test]
    fn boolean_refutation_catches_idempotent_sums() {
        // 1 + 1 ≐ 1: lattice contains e_1, so only the support homomorphism refutes 1 ≐ 0
        let c = Congruence::new(1, [(vec![2], vec![1])]).unwrap();
        assert!(c.refutes(&[1], &[0]).unwrap());
        assert!(c.holds(&[3], &[1], Bounds::default()).unwrap().is_yes());
    }

    #[test]
    fn cancellative_gap_is_unknown() {
        // a + c ≐ b + c does not give a ≐ b
        let c = Congruence::new(3, [(vec![1, 0, 1], vec![0, 1, 1])]).unwrap();
        let v = c.holds(&[1, 0, 0], &[0, 1, 0], Bounds::default()).unwrap();
        assert!(v.is_unknown());
    }

    #[test]
    fn depth_limits_chain_length() {
        // chain x0 -> x1 -> x2 -> x3 -> x4 needs 4 moves
        let pairs = (0..4).map(|i| {
            let mut u = vec![0; 5];
            let mut v = vec![0; 5];
            u[i] = 1;
            v[i + 1] = 1;
            (u, v)
        });
        let c = Congruence::new(5, pairs).unwrap();
        let (a, b) = (vec![1, 0, 0, 0, 0], vec![0, 0, 0, 0, 1]);
        assert!(c.holds(&a, &b, Bounds::new(2, 8)).unwrap().is_unknown());
        let path = c.derive(&a, &b, Bounds::new(3, 8)).unwrap();
        assert_eq!(path.len(), 5);
    }
}
