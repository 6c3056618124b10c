//! Ideals, prime spectra, localizations and residue blueprints of finite
//! blueprints.
//!
//! Subsets of a blueprint are sets of element indices of its enumerated
//! monoid (index 0 is the absorbing element).
//!
//! The additive ideal condition asks that no relation `Σ a_i + c ≐ Σ b_j`
//! with all `a_i, b_j ∈ I` has `c ∉ I`. Dropping the coordinates of `I`
//! turns this into a question about one congruence: such a relation exists
//! iff `c` is related to the empty sum once every element of `I` is erased.
//! Derivations in the erased congruence lift back by adding enough terms
//! from `I` to the starting sum.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::presentation::congruence::{Bounds, Congruence, CountVec, Verdict};
use crate::presentation::{
    check_axiom3, Axiom3, BlueprintPresentation, FiniteBlueprint, FormalSum, MonoidPresentation, MonoidWord, ZERO,
};
use crate::{Error, Result};

pub type Subset = BTreeSet<usize>;

/// Why a subset is not an ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealWitness {
    MissingZero,
    /// `factor · element ∉ I` although `element ∈ I`.
    Absorption { element: usize, factor: usize },
    /// A derived relation `lhs ≐ rhs` where every term lies in `I` except
    /// one occurrence of `outside` on the left.
    Additive { lhs: FormalSum, rhs: FormalSum, outside: usize },
}

fn absorption(fb: &FiniteBlueprint, s: &Subset) -> Option<IdealWitness> {
    if !s.contains(&ZERO) {
        return Some(IdealWitness::MissingZero);
    }
    let m = fb.monoid();
    for &i in s {
        for b in 0..m.len() {
            if !s.contains(&m.mul(i, b)) {
                return Some(IdealWitness::Absorption { element: i, factor: b });
            }
        }
    }
    None
}

/// The congruence with the coordinates of `s` erased, plus the coordinate
/// map `element -> erased coordinate`.
fn erased(fb: &FiniteBlueprint, s: &Subset) -> Result<(Congruence, Vec<Option<usize>>)> {
    let mut map = vec![None; fb.monoid().len()];
    let mut k = 0;
    for (e, slot) in map.iter_mut().enumerate() {
        if !s.contains(&e) {
            *slot = Some(k);
            k += 1;
        }
    }
    let project = |v: &CountVec| -> CountVec {
        let mut out = vec![0; k];
        for (i, &c) in v.iter().enumerate() {
            if let Some(j) = map[i + 1] {
                out[j] += c;
            }
        }
        out
    };
    let pairs: Vec<_> = fb.congruence().pairs().iter().map(|(u, v)| (project(u), project(v))).collect();
    Ok((Congruence::new(k, pairs)?, map))
}

/// Rebuilds a full derivation from one in the erased congruence.
fn lift(fb: &FiniteBlueprint, q: &Congruence, map: &[Option<usize>], path: &[CountVec], outside: usize) -> (FormalSum, FormalSum) {
    let projected = |v: &CountVec| -> CountVec {
        let mut out = vec![0; q.dim()];
        for (i, &c) in v.iter().enumerate() {
            if let Some(j) = map[i + 1] {
                out[j] += c;
            }
        }
        out
    };
    // recover the generating pair used by each step
    let mut moves: Vec<(CountVec, CountVec)> = Vec::new();
    for w in path.windows(2) {
        let (z0, z1) = (&w[0], &w[1]);
        let mv = fb.congruence().pairs().iter().flat_map(|(u, v)| [(u, v), (v, u)]).find(|(from, to)| {
            let (pf, pt) = (projected(from), projected(to));
            z0.iter().zip(&pf).all(|(a, b)| a >= b)
                && z0.iter().zip(&pf).zip(&pt).zip(z1).all(|(((a, b), c), d)| a - b + c == *d)
        });
        let (from, to) = mv.expect("erased step comes from a generating pair");
        moves.push((from.clone(), to.clone()));
    }
    let mut start = fb.element_vector(outside);
    for (from, _) in &moves {
        for (i, &c) in from.iter().enumerate() {
            if map[i + 1].is_none() {
                start[i] += c;
            }
        }
    }
    let mut x = start.clone();
    for (from, to) in &moves {
        for i in 0..x.len() {
            x[i] = x[i] - from[i] + to[i];
        }
    }
    (fb.sum_of(&start), fb.sum_of(&x))
}

/// Decides whether `s` is an ideal: exact absorption check, then the
/// additive condition by refutation certificates or a bounded derivation.
pub fn is_ideal(fb: &FiniteBlueprint, s: &Subset, bounds: Bounds) -> Result<Verdict<(), IdealWitness>> {
    if let Some(w) = absorption(fb, s) {
        return Ok(Verdict::No(w));
    }
    let (q, map) = erased(fb, s)?;
    let zero = vec![0; q.dim()];
    let mut open = Vec::new();
    for c in 1..fb.monoid().len() {
        if let Some(j) = map[c] {
            let mut e = zero.clone();
            e[j] = 1;
            if !q.refutes(&e, &zero)? {
                open.push((c, e));
            }
        }
    }
    let mut unknown = false;
    for (c, e) in open {
        match q.derive(&e, &zero, bounds) {
            Some(path) => {
                let (lhs, rhs) = lift(fb, &q, &map, &path, c);
                return Ok(Verdict::No(IdealWitness::Additive { lhs, rhs, outside: c }));
            }
            None => unknown = true,
        }
    }
    Ok(if unknown { Verdict::Unknown } else { Verdict::Yes(()) })
}

/// Prime: the complement contains 1 and is closed under multiplication.
pub fn is_prime(fb: &FiniteBlueprint, s: &Subset) -> bool {
    let m = fb.monoid();
    if s.contains(&m.one()) {
        return false;
    }
    let comp: Vec<usize> = (0..m.len()).filter(|e| !s.contains(e)).collect();
    comp.iter().all(|&a| comp.iter().all(|&b| !s.contains(&m.mul(a, b))))
}

/// Faces of the monoid: submonoids `F ∌ 0` with `ab ∈ F ⇒ a, b ∈ F`.
/// Each is generated by the generators it contains.
fn faces(fb: &FiniteBlueprint) -> Result<Vec<Subset>> {
    let m = fb.monoid();
    let g = m.generator_count();
    if g > 20 {
        return Err(Error::Precondition(format!("{g} generators are too many for face enumeration")));
    }
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << g) {
        let mut f: Subset = [m.one()].into();
        let mut frontier: Vec<usize> = vec![m.one()];
        let gens: Vec<usize> = (0..g).filter(|i| mask & (1 << i) != 0).map(|i| m.generator_element(i)).collect();
        while let Some(x) = frontier.pop() {
            for &y in &gens {
                let p = m.mul(x, y);
                if f.insert(p) {
                    frontier.push(p);
                }
            }
        }
        if f.contains(&ZERO) {
            continue;
        }
        let is_face = (0..m.len()).all(|a| (0..m.len()).all(|b| !f.contains(&m.mul(a, b)) || (f.contains(&a) && f.contains(&b))));
        if is_face {
            out.insert(f);
        }
    }
    Ok(out.into_iter().collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certificate {
    Exact,
    Bounded(Bounds),
}

/// The prime spectrum of a finite blueprint with its Zariski topology.
#[derive(Clone, Debug)]
pub struct SpectrumSpace {
    presentation: BlueprintPresentation,
    elements: Vec<MonoidWord>,
    /// Prime ideals, ordered by size and then lexicographically.
    pub points: Vec<Subset>,
    pub certificate: Certificate,
    /// Candidates whose ideal status stayed unknown.
    pub undecided: Vec<Subset>,
}

impl SpectrumSpace {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `V(a)`: indices of the points containing element `a`.
    pub fn closed_set(&self, a: usize) -> BTreeSet<usize> {
        (0..self.points.len()).filter(|&i| self.points[i].contains(&a)).collect()
    }

    /// `D(a)`: the basic open complement of `V(a)`.
    pub fn basic_open(&self, a: usize) -> BTreeSet<usize> {
        (0..self.points.len()).filter(|&i| !self.points[i].contains(&a)).collect()
    }

    /// Whether `q` lies in the closure of `p`, i.e. `p ⊆ q`.
    pub fn specializes(&self, p: usize, q: usize) -> bool {
        self.points[p].is_subset(&self.points[q])
    }

    /// Sections over `D(a)`: the localization at the powers of `a`.
    pub fn sections_on_basic_open(&self, a: usize) -> Result<BlueprintPresentation> {
        localize(&self.presentation, &[self.elements[a].clone()])
    }

    /// The stalk at a point: the localization at the complement.
    pub fn stalk(&self, p: usize) -> Result<BlueprintPresentation> {
        let s: Vec<MonoidWord> = (0..self.elements.len())
            .filter(|e| !self.points[p].contains(e))
            .map(|e| self.elements[e].clone())
            .collect();
        localize(&self.presentation, &s)
    }
}

fn spectrum_inner(fb: &FiniteBlueprint, bounds: Bounds) -> Result<SpectrumSpace> {
    let n = fb.monoid().len();
    let mut points = Vec::new();
    let mut undecided = Vec::new();
    for f in faces(fb)? {
        let ideal: Subset = (0..n).filter(|e| !f.contains(e)).collect();
        match is_ideal(fb, &ideal, bounds)? {
            Verdict::Yes(()) => points.push(ideal),
            Verdict::No(_) => {}
            Verdict::Unknown => undecided.push(ideal),
        }
    }
    points.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let certificate = if undecided.is_empty() { Certificate::Exact } else { Certificate::Bounded(bounds) };
    Ok(SpectrumSpace {
        presentation: fb.presentation().clone(),
        elements: fb.monoid().elements().to_vec(),
        points,
        certificate,
        undecided,
    })
}

/// All prime ideals; fails with `Undecided` if some candidate stays open.
pub fn spectrum(fb: &FiniteBlueprint, bounds: Bounds) -> Result<SpectrumSpace> {
    let s = spectrum_inner(fb, bounds)?;
    if !s.undecided.is_empty() {
        return Err(Error::Undecided { candidates: s.undecided.iter().map(|u| u.iter().copied().collect()).collect() });
    }
    Ok(s)
}

/// Like [`spectrum`], but returns a bounded certificate instead of failing.
pub fn spectrum_bounded(fb: &FiniteBlueprint, bounds: Bounds) -> Result<SpectrumSpace> {
    spectrum_inner(fb, bounds)
}

/// `S⁻¹B`: adjoins an inverse `t` with `w·t = 1` for each word `w` of `s`.
/// The multiplicative set is the one generated by `s`.
pub fn localize(b: &BlueprintPresentation, s: &[MonoidWord]) -> Result<BlueprintPresentation> {
    let m = b.monoid();
    let mut gens: Vec<String> = m.generators().to_vec();
    let mut rels = m.relations().to_vec();
    for w in s {
        if w.is_one() {
            continue;
        }
        let mut name = format!("({})^-1", m.format_word(w));
        while gens.contains(&name) {
            name.push('\'');
        }
        rels.push((w.mul(&MonoidWord::generator(gens.len())), MonoidWord::one()));
        gens.push(name);
    }
    BlueprintPresentation::new(MonoidPresentation::new(gens, rels)?, b.preaddition().to_vec())
}

/// Localization at the multiplicative set generated by some elements.
pub fn localize_elements(fb: &FiniteBlueprint, s: &Subset) -> Result<BlueprintPresentation> {
    let words: Vec<MonoidWord> = s.iter().map(|&e| fb.monoid().element(e).clone()).collect();
    localize(fb.presentation(), &words)
}

/// `B/m`: every element of `m` becomes 0, pre-addition by image.
pub fn residue(fb: &FiniteBlueprint, m: &Subset) -> Result<BlueprintPresentation> {
    let p = fb.presentation().monoid();
    let mut rels = p.relations().to_vec();
    for &e in m {
        if e != ZERO {
            rels.push((fb.monoid().element(e).clone(), MonoidWord::zero()));
        }
    }
    BlueprintPresentation::new(MonoidPresentation::new(p.generators().to_vec(), rels)?, fb.presentation().preaddition().to_vec())
}

#[derive(Clone, Debug)]
pub struct LocalData {
    pub maximal_ideals: Vec<Subset>,
    pub is_local: bool,
    /// `B/m` and its axiom (3) status when local.
    pub residue: Option<(BlueprintPresentation, Axiom3)>,
}

/// Maximal ideals (the inclusion-maximal primes) and the residue blueprint.
pub fn local_data(fb: &FiniteBlueprint, bounds: Bounds) -> Result<LocalData> {
    let spec = spectrum(fb, bounds)?;
    let maximal: Vec<Subset> = spec
        .points
        .iter()
        .filter(|p| !spec.points.iter().any(|q| q != *p && p.is_subset(q)))
        .cloned()
        .collect();
    let is_local = maximal.len() == 1;
    let residue = if is_local {
        let r = residue(fb, &maximal[0])?;
        let a3 = check_axiom3(&r, bounds)?;
        Some((r, a3))
    } else {
        None
    };
    Ok(LocalData { maximal_ideals: maximal, is_local, residue })
}
