//! Finite skeletons of locally blueprinted spaces: points, specialization
//! order and residue descriptors. Fibre products over `Spec F_{1^2}` keep
//! the pairs whose residues admit maps into a common field.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::rational::primes_up_to;
use crate::{Error, Result};

/// Characteristics of the fields a residue maps to.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CharSpectrum {
    All,
    /// Subset of `{0} ∪ primes`.
    Set(BTreeSet<u64>),
}

impl CharSpectrum {
    pub fn single(c: u64) -> CharSpectrum {
        CharSpectrum::Set([c].into_iter().collect())
    }

    pub fn intersect(&self, other: &CharSpectrum) -> CharSpectrum {
        match (self, other) {
            (CharSpectrum::All, x) | (x, CharSpectrum::All) => x.clone(),
            (CharSpectrum::Set(a), CharSpectrum::Set(b)) => CharSpectrum::Set(a.intersection(b).copied().collect()),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, CharSpectrum::Set(s) if s.is_empty())
    }
}

impl fmt::Display for CharSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharSpectrum::All => f.write_str("all"),
            CharSpectrum::Set(s) => {
                let parts: Vec<String> = s.iter().map(|c| c.to_string()).collect();
                write!(f, "{{{}}}", parts.join(","))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ResidueDescriptor {
    /// A monoid with only `1 + (−1) ≐ 0`; maps to fields of every
    /// characteristic by sending `−1` to `−1`.
    MonoidalWithSign,
    /// A field of characteristic `c` (`0` or a prime).
    RingField(u64),
    /// An integral domain of characteristic zero.
    RingDomainCharZero,
}

pub fn char_spectrum(r: ResidueDescriptor) -> CharSpectrum {
    match r {
        ResidueDescriptor::MonoidalWithSign => CharSpectrum::All,
        ResidueDescriptor::RingField(c) => CharSpectrum::single(c),
        ResidueDescriptor::RingDomainCharZero => CharSpectrum::single(0),
    }
}

impl ResidueDescriptor {
    pub fn ring_field(c: u64) -> Result<ResidueDescriptor> {
        if c != 0 && !crate::rational::is_prime_u64(c) {
            return Err(Error::Domain(format!("characteristic {c} is neither 0 nor prime")));
        }
        Ok(ResidueDescriptor::RingField(c))
    }

    /// The descriptor labelling a product point with spectrum `s`.
    /// Intersections of the three kinds are again `all` or a singleton.
    pub fn from_spectrum(s: &CharSpectrum) -> Option<ResidueDescriptor> {
        match s {
            CharSpectrum::All => Some(ResidueDescriptor::MonoidalWithSign),
            CharSpectrum::Set(set) if set.len() == 1 => {
                let c = *set.iter().next()?;
                Some(if c == 0 { ResidueDescriptor::RingDomainCharZero } else { ResidueDescriptor::RingField(c) })
            }
            CharSpectrum::Set(_) => None,
        }
    }
}

impl fmt::Display for ResidueDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResidueDescriptor::MonoidalWithSign => f.write_str("monoidal_with_sign"),
            ResidueDescriptor::RingField(c) => write!(f, "ring_field({c})"),
            ResidueDescriptor::RingDomainCharZero => f.write_str("ring_domain_char_zero"),
        }
    }
}

/// A finite space given by its specialization order.
///
/// `leq[x][y]` means `x ⤳ y`, i.e. `y` lies in the closure of `{x}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceSkeleton {
    labels: Vec<String>,
    leq: Vec<Vec<bool>>,
    residues: Vec<ResidueDescriptor>,
}

impl SpaceSkeleton {
    /// Builds the order generated by `specializations`; cycles are rejected.
    pub fn new(labels: Vec<String>, specializations: &[(usize, usize)], residues: Vec<ResidueDescriptor>) -> Result<SpaceSkeleton> {
        let n = labels.len();
        if residues.len() != n {
            return Err(Error::Malformed(format!("{} residues for {} points", residues.len(), n)));
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(Error::Malformed(format!("duplicate point `{l}`")));
            }
        }
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in specializations {
            if a >= n || b >= n {
                return Err(Error::Malformed(format!("specialization ({a}, {b}) out of range")));
            }
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if leq[i][j] && leq[j][i] {
                    return Err(Error::Malformed(format!("specialization cycle through `{}` and `{}`", labels[i], labels[j])));
                }
            }
        }
        Ok(SpaceSkeleton { labels, leq, residues })
    }

    pub fn point(label: &str, residue: ResidueDescriptor) -> SpaceSkeleton {
        SpaceSkeleton { labels: vec![label.into()], leq: vec![vec![true]], residues: vec![residue] }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn residue(&self, i: usize) -> ResidueDescriptor {
        self.residues[i]
    }

    pub fn residues(&self) -> &[ResidueDescriptor] {
        &self.residues
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `x ⤳ y`.
    pub fn specializes(&self, x: usize, y: usize) -> bool {
        self.leq[x][y]
    }

    /// The strict covering pairs of the order.
    pub fn specializations(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && self.leq[a][b] && !(0..n).any(|c| c != a && c != b && self.leq[a][c] && self.leq[c][b]) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Smallest closed set containing `set`.
    pub fn closure(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        (0..self.len()).filter(|&y| set.iter().any(|&x| self.leq[x][y])).collect()
    }

    pub fn is_closed(&self, set: &BTreeSet<usize>) -> bool {
        self.closure(set) == *set
    }

    pub fn closed_points(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| (0..self.len()).all(|y| y == x || !self.leq[x][y])).collect()
    }
}

/// Spec Z-bar truncated to the primes up to `prime_bound`.
pub fn make_speczbar_skeleton(prime_bound: u64) -> Result<SpaceSkeleton> {
    if prime_bound < 2 {
        return Err(Error::Domain(format!("prime bound {prime_bound} below 2")));
    }
    let mut labels = vec![String::from("eta")];
    labels.extend(primes_up_to(prime_bound).into_iter().map(|p| p.to_string()));
    labels.push("inf".into());
    let n = labels.len();
    let specs: Vec<(usize, usize)> = (1..n).map(|i| (0, i)).collect();
    SpaceSkeleton::new(labels, &specs, vec![ResidueDescriptor::MonoidalWithSign; n])
}

pub fn spec_f12() -> SpaceSkeleton {
    SpaceSkeleton::point("*", ResidueDescriptor::MonoidalWithSign)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Base {
    F1Squared,
    Other(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibreProduct {
    pub space: SpaceSkeleton,
    /// The factor points of each product point.
    pub pairs: Vec<(usize, usize)>,
}

impl FibreProduct {
    pub fn project_left(&self) -> Vec<usize> {
        self.pairs.iter().map(|p| p.0).collect()
    }

    pub fn project_right(&self) -> Vec<usize> {
        self.pairs.iter().map(|p| p.1).collect()
    }
}

/// `x ×_{F_{1^2}} y`.
pub fn fibre_product(x: &SpaceSkeleton, y: &SpaceSkeleton) -> FibreProduct {
    let mut pairs = Vec::new();
    let mut labels = Vec::new();
    let mut residues = Vec::new();
    for a in 0..x.len() {
        for b in 0..y.len() {
            let s = char_spectrum(x.residue(a)).intersect(&char_spectrum(y.residue(b)));
            if let Some(r) = ResidueDescriptor::from_spectrum(&s) {
                pairs.push((a, b));
                labels.push(format!("({},{})", x.label(a), y.label(b)));
                residues.push(r);
            }
        }
    }
    let n = pairs.len();
    let mut leq = vec![vec![false; n]; n];
    for (i, &(a, b)) in pairs.iter().enumerate() {
        for (j, &(c, d)) in pairs.iter().enumerate() {
            leq[i][j] = x.specializes(a, c) && y.specializes(b, d);
        }
    }
    FibreProduct { space: SpaceSkeleton { labels, leq, residues }, pairs }
}

pub fn fibre_product_over(x: &SpaceSkeleton, y: &SpaceSkeleton, base: &Base) -> Result<FibreProduct> {
    match base {
        Base::F1Squared => Ok(fibre_product(x, y)),
        Base::Other(name) => Err(Error::UnsupportedBase(format!("`{name}`: only Spec F_{{1^2}} is supported"))),
    }
}

/// Length of the longest strict specialization chain, and one such chain.
pub fn krull_dimension(s: &SpaceSkeleton) -> Result<(usize, Vec<usize>)> {
    let n = s.len();
    if n == 0 {
        return Err(Error::EmptySpace);
    }
    // longest chain starting at each point, filled in order of decreasing
    // closure size so that every specialization is processed first
    let mut order: Vec<usize> = (0..n).collect();
    let down = |x: usize| (0..n).filter(|&y| s.leq[x][y]).count();
    order.sort_by_key(|&x| down(x));
    let mut best = vec![0usize; n];
    let mut next = vec![None; n];
    for &x in &order {
        for y in 0..n {
            if y != x && s.leq[x][y] && best[y] + 1 > best[x] {
                best[x] = best[y] + 1;
                next[x] = Some(y);
            }
        }
    }
    let start = (0..n).max_by_key(|&x| (best[x], core::cmp::Reverse(x))).unwrap_or(0);
    let mut chain = vec![start];
    let mut cur = start;
    while let Some(y) = next[cur] {
        chain.push(y);
        cur = y;
    }
    Ok((best[start], chain))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn spectra_of_residues() {
        assert_eq!(char_spectrum(ResidueDescriptor::MonoidalWithSign), CharSpectrum::All);
        assert_eq!(char_spectrum(ResidueDescriptor::ring_field(2).unwrap()), CharSpectrum::single(2));
        assert_eq!(char_spectrum(ResidueDescriptor::RingDomainCharZero), CharSpectrum::single(0));
        assert!(ResidueDescriptor::ring_field(4).is_err());
    }

    #[test]
    fn skeleton_of_speczbar() {
        let x = make_speczbar_skeleton(10).unwrap();
        assert_eq!(x.len(), 6);
        assert_eq!(krull_dimension(&x).unwrap().0, 1);
        assert_eq!(make_speczbar_skeleton(2).unwrap().len(), 3);
        assert!(make_speczbar_skeleton(1).is_err());
        // closed sets: sets of closed points, and the whole space
        let n = x.len();
        for mask in 0u32..(1 << n) {
            let set: BTreeSet<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let expected = !set.contains(&0) || set.len() == n;
            assert_eq!(x.is_closed(&set), expected, "{set:?}");
        }
        assert_eq!(x.closed_points(), (1..n).collect::<Vec<_>>());
    }

    #[test]
    fn products() {
        let x = make_speczbar_skeleton(10).unwrap();
        let xx = fibre_product(&x, &x);
        assert_eq!(xx.space.len(), 36);
        let (d, chain) = krull_dimension(&xx.space).unwrap();
        assert_eq!(d, 2);
        assert_eq!(chain.len(), 3);
        assert_eq!(xx.space.label(chain[0]), "(eta,eta)");
        for w in chain.windows(2) {
            assert!(xx.space.specializes(w[0], w[1]) && w[0] != w[1]);
        }
        let f2 = SpaceSkeleton::point("F2", ResidueDescriptor::RingField(2));
        let f3 = SpaceSkeleton::point("F3", ResidueDescriptor::RingField(3));
        assert!(fibre_product(&f2, &f3).space.is_empty());
        assert_eq!(krull_dimension(&fibre_product(&f2, &f3).space), Err(Error::EmptySpace));
        let q = SpaceSkeleton::point("Q", ResidueDescriptor::RingField(0));
        assert_eq!(fibre_product(&f2, &q).space.len(), 0);
        assert_eq!(fibre_product(&x, &f2).space.residue(0), ResidueDescriptor::RingField(2));
        let xs = fibre_product(&x, &spec_f12());
        assert_eq!(xs.space.len(), x.len());
        assert_eq!(krull_dimension(&xs.space).unwrap().0, 1);
        assert!(fibre_product_over(&x, &x, &Base::Other("F1".into())).is_err());
        assert_eq!(krull_dimension(&spec_f12()).unwrap(), (0, vec![0]));
    }

    #[test]
    fn cycles_rejected() {
        let r = vec![ResidueDescriptor::MonoidalWithSign; 2];
        assert!(SpaceSkeleton::new(vec!["a".into(), "b".into()], &[(0, 1), (1, 0)], r).is_err());
    }

    fn arb_skeleton() -> impl Strategy<Value = SpaceSkeleton> {
        (1usize..5, prop::collection::vec((0usize..5, 0usize..5), 0..6), prop::collection::vec(0u8..4, 5)).prop_map(|(n, edges, kinds)| {
            let labels = (0..n).map(|i| format!("p{i}")).collect();
            let specs: Vec<_> = edges.into_iter().filter(|&(a, b)| a < b && b < n).collect();
            let residues = kinds[..n]
                .iter()
                .map(|k| match k {
                    0 => ResidueDescriptor::MonoidalWithSign,
                    1 => ResidueDescriptor::RingField(2),
                    2 => ResidueDescriptor::RingField(3),
                    _ => ResidueDescriptor::RingDomainCharZero,
                })
                .collect();
            SpaceSkeleton::new(labels, &specs, residues).unwrap()
        })
    }

    proptest! {
        #[test]
        fn product_is_symmetric_and_a_subspace(x in arb_skeleton(), y in arb_skeleton()) {
            let xy = fibre_product(&x, &y);
            let yx = fibre_product(&y, &x);
            prop_assert_eq!(xy.space.len(), yx.space.len());
            for (i, &(a, b)) in xy.pairs.iter().enumerate() {
                let j = yx.pairs.iter().position(|&p| p == (b, a)).unwrap();
                prop_assert_eq!(xy.space.residue(i), yx.space.residue(j));
                for (k, &(c, d)) in xy.pairs.iter().enumerate() {
                    prop_assert_eq!(xy.space.specializes(i, k), x.specializes(a, c) && y.specializes(b, d));
                }
            }
        }

        #[test]
        fn dimension_adds_for_monoidal_factors(b1 in 2u64..40, b2 in 2u64..40) {
            let x = make_speczbar_skeleton(b1).unwrap();
            let y = make_speczbar_skeleton(b2).unwrap();
            let p = fibre_product(&x, &y);
            prop_assert_eq!(p.space.len(), x.len() * y.len());
            prop_assert_eq!(krull_dimension(&p.space).unwrap().0, 2);
            let left: BTreeSet<usize> = p.project_left().into_iter().collect();
            prop_assert_eq!(left.len(), x.len());
        }
    }
}
