//! The associated ring `Z[A]/I(R)` of a finite blueprint and ring
//! isomorphism certificates.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::blueprint::{BlueprintMorphismData, FiniteBlueprint};
use super::monoid::{MonoidWord, ZERO};
use crate::smith::{IntMatrix, Lattice, SmithForm};
use crate::{Error, Result};

/// A commutative ring whose additive group is `Z^r ⊕ ⊕ Z/d_i`, given by
/// structure constants on a canonical basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientRing {
    /// Modulus of each coordinate; 0 for free coordinates.
    moduli: Vec<i128>,
    /// `structure[a][b]` = coordinates of `g_a · g_b`.
    structure: Vec<Vec<Vec<i128>>>,
    one: Vec<i128>,
}

fn checked_dot(acc: &mut [i128], x: i128, v: &[i128]) -> Result<()> {
    for (a, &y) in acc.iter_mut().zip(v) {
        *a = a.checked_add(x.checked_mul(y).ok_or(Error::Overflow)?).ok_or(Error::Overflow)?;
    }
    Ok(())
}

impl QuotientRing {
    /// The quotient of `Z^n` (with bilinear multiplication `mul` on unit
    /// vectors) by the row lattice whose Smith form is `smith`.
    fn from_smith(
        n: usize,
        smith: &SmithForm,
        mul: impl Fn(usize, usize) -> Vec<i128>,
        one: &[i128],
    ) -> Result<QuotientRing> {
        let rank = smith.rank();
        let kept: Vec<usize> = (0..n).filter(|&i| i >= rank || smith.invariants[i] != 1).collect();
        let moduli: Vec<i128> = kept.iter().map(|&i| if i < rank { smith.invariants[i] } else { 0 }).collect();
        let mods = moduli.clone();
        let coords = |x: &[i128]| -> Result<Vec<i128>> {
            let y = smith.transform.left_mul(x)?;
            Ok(kept.iter().zip(&mods).map(|(&i, &m)| if m == 0 { y[i] } else { y[i].rem_euclid(m) }).collect())
        };
        let gens: Vec<&[i128]> = kept.iter().map(|&i| smith.inverse.row(i)).collect();
        let mut structure = Vec::with_capacity(kept.len());
        for ga in &gens {
            let mut row = Vec::with_capacity(kept.len());
            for gb in &gens {
                let mut prod = vec![0i128; n];
                for (i, &x) in ga.iter().enumerate().filter(|(_, x)| **x != 0) {
                    for (j, &y) in gb.iter().enumerate().filter(|(_, y)| **y != 0) {
                        let xy = x.checked_mul(y).ok_or(Error::Overflow)?;
                        checked_dot(&mut prod, xy, &mul(i, j))?;
                    }
                }
                row.push(coords(&prod)?);
            }
            structure.push(row);
        }
        Ok(QuotientRing { moduli, structure, one: coords(one)? })
    }

    /// `Z[x]/(f)` for a monic polynomial `f` (coefficients from degree 0).
    pub fn polynomial(f: &[i128]) -> Result<QuotientRing> {
        let d = f.len().checked_sub(1).ok_or_else(|| Error::Malformed("empty polynomial".into()))?;
        if f[d] != 1 {
            return Err(Error::Malformed("polynomial must be monic".into()));
        }
        // x^k mod f for k < 2d
        let mut powers: Vec<Vec<i128>> = Vec::new();
        let mut cur = vec![0i128; d];
        if d > 0 {
            cur[0] = 1;
        }
        for _ in 0..(2 * d).max(1) {
            powers.push(cur.clone());
            if d == 0 {
                break;
            }
            let top = cur[d - 1];
            let mut next = vec![0i128; d];
            next[1..d].copy_from_slice(&cur[..d - 1]);
            for (i, n) in next.iter_mut().enumerate() {
                *n = n.checked_sub(top.checked_mul(f[i]).ok_or(Error::Overflow)?).ok_or(Error::Overflow)?;
            }
            cur = next;
        }
        let smith = SmithForm::compute(&IntMatrix::zeros(0, d))?;
        let one = powers[0].clone();
        Self::from_smith(d, &smith, |i, j| powers[i + j].clone(), &one)
    }

    pub fn dimension(&self) -> usize {
        self.moduli.len()
    }

    pub fn free_rank(&self) -> usize {
        self.moduli.iter().filter(|&&m| m == 0).count()
    }

    /// Torsion invariants `d_1 | d_2 | ...`, all greater than 1.
    pub fn torsion(&self) -> Vec<i128> {
        self.moduli.iter().copied().filter(|&m| m != 0).collect()
    }

    pub fn moduli(&self) -> &[i128] {
        &self.moduli
    }

    pub fn one(&self) -> &[i128] {
        &self.one
    }

    pub fn structure(&self) -> &[Vec<Vec<i128>>] {
        &self.structure
    }

    pub fn reduce(&self, x: &mut [i128]) {
        for (v, &m) in x.iter_mut().zip(&self.moduli) {
            if m != 0 {
                *v = v.rem_euclid(m);
            }
        }
    }

    pub fn mul(&self, x: &[i128], y: &[i128]) -> Result<Vec<i128>> {
        let mut out = vec![0i128; self.dimension()];
        for (a, &xa) in x.iter().enumerate().filter(|(_, v)| **v != 0) {
            for (b, &yb) in y.iter().enumerate().filter(|(_, v)| **v != 0) {
                checked_dot(&mut out, xa.checked_mul(yb).ok_or(Error::Overflow)?, &self.structure[a][b])?;
            }
        }
        self.reduce(&mut out);
        Ok(out)
    }

    /// Image of `x` under the additive map sending generator `k` to `rows[k]`.
    fn apply(&self, rows: &[Vec<i128>], x: &[i128], target: &QuotientRing) -> Result<Vec<i128>> {
        let mut out = vec![0i128; target.dimension()];
        for (k, &xk) in x.iter().enumerate() {
            checked_dot(&mut out, xk, &rows[k])?;
        }
        target.reduce(&mut out);
        Ok(out)
    }

    /// Whether `rows` defines a unital ring homomorphism into `target`.
    pub fn is_homomorphism(&self, rows: &[Vec<i128>], target: &QuotientRing) -> Result<bool> {
        if rows.len() != self.dimension() {
            return Ok(false);
        }
        for (k, r) in rows.iter().enumerate() {
            let m = self.moduli[k];
            if m != 0 {
                let mut t: Vec<i128> = r.iter().map(|v| v * m).collect();
                target.reduce(&mut t);
                if t.iter().any(|&v| v != 0) {
                    return Ok(false);
                }
            }
        }
        if self.apply(rows, &self.one, target)? != target.one {
            return Ok(false);
        }
        for a in 0..self.dimension() {
            for b in a..self.dimension() {
                let lhs = self.apply(rows, &self.structure[a][b], target)?;
                if lhs != target.mul(&rows[a], &rows[b])? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// `Z[A]/I(R)` of a finite blueprint.
#[derive(Clone, Debug)]
pub struct AssociatedRing {
    /// The nonzero monoid elements, a basis of `Z[A]` modulo `[0]`.
    basis: Vec<MonoidWord>,
    /// `basis[i] · basis[j]` as a basis index, `None` for zero.
    products: Vec<Vec<Option<usize>>>,
    relations: Vec<Vec<i128>>,
    smith: SmithForm,
    quotient: QuotientRing,
}

impl AssociatedRing {
    pub fn new(fb: &FiniteBlueprint) -> Result<AssociatedRing> {
        let m = fb.monoid();
        let n = fb.dim();
        let basis: Vec<MonoidWord> = m.elements()[1..].to_vec();
        let products: Vec<Vec<Option<usize>>> = (1..=n)
            .map(|a| (1..=n).map(|b| Some(m.mul(a, b)).filter(|&e| e != ZERO).map(|e| e - 1)).collect())
            .collect();
        let relations: Vec<Vec<i128>> = fb
            .congruence()
            .pairs()
            .iter()
            .map(|(u, v)| super::congruence::difference(u, v))
            .collect();
        let smith = fb.congruence().lattice().smith().clone();
        let unit = |i: Option<usize>| {
            let mut v = vec![0i128; n];
            if let Some(i) = i {
                v[i] = 1;
            }
            v
        };
        let one = unit(Some(m.one() - 1));
        let quotient = QuotientRing::from_smith(n, &smith, |i, j| unit(products[i][j]), &one)?;
        Ok(AssociatedRing { basis, products, relations, smith, quotient })
    }

    pub fn basis(&self) -> &[MonoidWord] {
        &self.basis
    }

    pub fn products(&self) -> &[Vec<Option<usize>>] {
        &self.products
    }

    /// Rows `a·(u − v)` spanning `I(R)` as a group.
    pub fn relation_matrix(&self) -> &[Vec<i128>] {
        &self.relations
    }

    pub fn smith(&self) -> &SmithForm {
        &self.smith
    }

    pub fn quotient(&self) -> &QuotientRing {
        &self.quotient
    }

    pub fn rank(&self) -> usize {
        self.quotient.free_rank()
    }

    pub fn torsion(&self) -> Vec<i128> {
        self.quotient.torsion()
    }

    /// Quotient coordinates of a vector in `Z[A∖0]`.
    pub fn coordinates(&self, x: &[i128]) -> Result<Vec<i128>> {
        let y = self.smith.transform.left_mul(x)?;
        let r = self.smith.rank();
        Ok(y.iter()
            .enumerate()
            .filter(|&(i, _)| i >= r || self.smith.invariants[i] != 1)
            .map(|(i, &v)| if i < r { v.rem_euclid(self.smith.invariants[i]) } else { v })
            .collect())
    }

    /// Quotient coordinates of basis element `i`.
    pub fn image_of_basis(&self, i: usize) -> Result<Vec<i128>> {
        let mut e = vec![0i128; self.basis.len()];
        e[i] = 1;
        self.coordinates(&e)
    }
}

pub fn associated_ring(fb: &FiniteBlueprint) -> Result<AssociatedRing> {
    AssociatedRing::new(fb)
}

/// Whether a morphism maps the relation lattice of the source into that of
/// the target, i.e. induces a map of associated rings.
pub fn induced_map_is_well_defined(f: &BlueprintMorphismData) -> Result<bool> {
    let src = f.source.finite()?;
    let dst = f.target.finite()?;
    let image: Vec<usize> = (1..=src.dim()).map(|e| dst.monoid().index_of(&f.apply_word(src.monoid().element(e)))).collect();
    let lattice: &Lattice = dst.congruence().lattice();
    for (u, v) in src.congruence().pairs() {
        let mut d = vec![0i128; dst.dim()];
        for (i, (&a, &b)) in u.iter().zip(v).enumerate() {
            if image[i] != ZERO {
                d[image[i] - 1] += i128::from(a) - i128::from(b);
            }
        }
        if !lattice.contains(&d)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of [`ring_iso_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingIso {
    /// Images of the generators of the first ring in coordinates of the second.
    Isomorphic(Vec<Vec<i128>>),
    Distinguished(String),
    Unknown,
}

const SEARCH_BUDGET: u64 = 20_000_000;

/// Searches an isomorphism `r1 → r2`.
///
/// Free rings: integer matrices with entries in `[-bound, bound]` and
/// determinant ±1. Finite rings: all additive maps. Mixed: only invariants.
pub fn ring_iso_check(r1: &QuotientRing, r2: &QuotientRing, bound: i128) -> Result<RingIso> {
    if r1.free_rank() != r2.free_rank() {
        return Ok(RingIso::Distinguished(format!("rank {} vs {}", r1.free_rank(), r2.free_rank())));
    }
    if r1.torsion() != r2.torsion() {
        return Ok(RingIso::Distinguished(format!("torsion {:?} vs {:?}", r1.torsion(), r2.torsion())));
    }
    let n = r1.dimension();
    if r1.moduli != r2.moduli {
        // same invariants, different coordinate layout cannot happen for canonical forms
        return Ok(RingIso::Unknown);
    }
    let identity: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect();
    if r1.is_homomorphism(&identity, r2)? {
        return Ok(RingIso::Isomorphic(identity));
    }
    if r1.free_rank() == n {
        free_search(r1, r2, bound)
    } else if r1.free_rank() == 0 {
        torsion_search(r1, r2)
    } else {
        Ok(RingIso::Unknown)
    }
}

fn free_search(r1: &QuotientRing, r2: &QuotientRing, bound: i128) -> Result<RingIso> {
    let n = r1.dimension();
    let candidates: Vec<Vec<i128>> = {
        let mut all = vec![vec![]];
        for _ in 0..n {
            all = all
                .into_iter()
                .flat_map(|v: Vec<i128>| {
                    (-bound..=bound).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
            if all.len() as u64 > SEARCH_BUDGET {
                return Ok(RingIso::Unknown);
            }
        }
        all.into_iter().filter(|v| v.iter().any(|&x| x != 0)).collect()
    };
    let mut rows: Vec<Vec<i128>> = Vec::new();
    let mut budget = SEARCH_BUDGET;
    if backtrack(r1, r2, &candidates, &mut rows, &mut budget)? {
        return Ok(RingIso::Isomorphic(rows));
    }
    Ok(RingIso::Unknown)
}

/// Products `g_a g_b` whose expansion only involves assigned generators.
fn consistent(r1: &QuotientRing, r2: &QuotientRing, rows: &[Vec<i128>]) -> Result<bool> {
    let t = rows.len();
    let last = t - 1;
    for a in 0..t {
        let s = &r1.structure[a][last];
        if s.iter().enumerate().any(|(k, &c)| c != 0 && k >= t) {
            continue;
        }
        let mut lhs = vec![0i128; r2.dimension()];
        for (k, &c) in s.iter().enumerate().filter(|(_, c)| **c != 0) {
            checked_dot(&mut lhs, c, &rows[k])?;
        }
        r2.reduce(&mut lhs);
        if lhs != r2.mul(&rows[a], &rows[last])? {
            return Ok(false);
        }
    }
    // the unit, once all generators in its support are assigned
    if r1.one.iter().enumerate().all(|(k, &c)| c == 0 || k < t) {
        let mut img = vec![0i128; r2.dimension()];
        for (k, &c) in r1.one.iter().enumerate().filter(|(_, c)| **c != 0) {
            checked_dot(&mut img, c, &rows[k])?;
        }
        r2.reduce(&mut img);
        if img != r2.one {
            return Ok(false);
        }
    }
    Ok(true)
}

fn backtrack(
    r1: &QuotientRing,
    r2: &QuotientRing,
    candidates: &[Vec<i128>],
    rows: &mut Vec<Vec<i128>>,
    budget: &mut u64,
) -> Result<bool> {
    let n = r1.dimension();
    if rows.len() == n {
        let det = IntMatrix::from_rows(n, rows).determinant()?;
        return Ok(det.abs() == 1 && r1.is_homomorphism(rows, r2)?);
    }
    for c in candidates {
        if *budget == 0 {
            return Ok(false);
        }
        *budget -= 1;
        rows.push(c.clone());
        if consistent(r1, r2, rows)? && backtrack(r1, r2, candidates, rows, budget)? {
            return Ok(true);
        }
        rows.pop();
    }
    Ok(false)
}

fn torsion_search(r1: &QuotientRing, r2: &QuotientRing) -> Result<RingIso> {
    let moduli = r2.moduli.clone();
    let order: i128 = moduli.iter().product();
    if order > 4096 {
        return Ok(RingIso::Unknown);
    }
    let element = |mut k: i128| -> Vec<i128> {
        moduli
            .iter()
            .map(|&m| {
                let v = k % m;
                k /= m;
                v
            })
            .collect()
    };
    let all: Vec<Vec<i128>> = (0..order).map(element).collect();
    let mut rows = Vec::new();
    let mut budget = SEARCH_BUDGET;
    let found = backtrack_finite(r1, r2, &all, &mut rows, &mut budget)?;
    Ok(if found { RingIso::Isomorphic(rows) } else if budget == 0 { RingIso::Unknown } else {
        RingIso::Distinguished("no additive bijection respects the multiplication".into())
    })
}

fn backtrack_finite(
    r1: &QuotientRing,
    r2: &QuotientRing,
    all: &[Vec<i128>],
    rows: &mut Vec<Vec<i128>>,
    budget: &mut u64,
) -> Result<bool> {
    let n = r1.dimension();
    if rows.len() == n {
        if !r1.is_homomorphism(rows, r2)? {
            return Ok(false);
        }
        // bijective iff injective on the (equal-size) finite group
        let mut seen = alloc::collections::BTreeSet::new();
        for x in all {
            if !seen.insert(r1.apply(rows, x, r2)?) {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    let m = r1.moduli[rows.len()];
    for c in all {
        if *budget == 0 {
            return Ok(false);
        }
        *budget -= 1;
        let mut t: Vec<i128> = c.iter().map(|v| v * m).collect();
        r2.reduce(&mut t);
        if t.iter().any(|&v| v != 0) {
            continue;
        }
        rows.push(c.clone());
        if consistent(r1, r2, rows)? && backtrack_finite(r1, r2, all, rows, budget)? {
            return Ok(true);
        }
        rows.pop();
    }
    Ok(false)
}

/// The `n`-th cyclotomic polynomial, coefficients from degree 0.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i128> {
    assert!(n >= 1);
    // x^n - 1
    let mut f = vec![0i128; n as usize + 1];
    f[0] = -1;
    f[n as usize] = 1;
    for d in (1..n).filter(|d| n % d == 0) {
        f = divide_exact(&f, &cyclotomic_polynomial(d));
    }
    f
}

/// Exact division by a monic polynomial.
fn divide_exact(f: &[i128], g: &[i128]) -> Vec<i128> {
    let (df, dg) = (f.len() - 1, g.len() - 1);
    let mut r = f.to_vec();
    let mut q = vec![0i128; df - dg + 1];
    for k in (0..=df - dg).rev() {
        let c = r[k + dg];
        q[k] = c;
        for (i, &gi) in g.iter().enumerate() {
            r[k + i] -= c * gi;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}
