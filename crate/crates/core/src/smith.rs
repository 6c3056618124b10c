//! Exact integer matrices, Smith normal form and lattice membership.
//!
//! Only the column transform `V` of `U·M·V = D` is tracked: the row lattice
//! of `M` equals the row lattice of `D·V⁻¹`, so `x` lies in the lattice iff
//! every coordinate of `x·V` is divisible by the matching invariant.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from rows; every row must have length `cols`.
    pub fn from_rows(cols: usize, rows: &[Vec<i128>]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row {i} has wrong length");
            m.data[i * cols..(i + 1) * cols].copy_from_slice(r);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[i128] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i128>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Row vector times matrix.
    pub fn left_mul(&self, x: &[i128]) -> Result<Vec<i128>> {
        assert_eq!(x.len(), self.rows);
        let mut out = vec![0i128; self.cols];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let t = xi.checked_mul(self[(i, j)]).ok_or(Error::Overflow)?;
                *o = o.checked_add(t).ok_or(Error::Overflow)?;
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let r = other.left_mul(self.row(i))?;
            out.data[i * other.cols..(i + 1) * other.cols].copy_from_slice(&r);
        }
        Ok(out)
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn determinant(&self) -> Result<i128> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return Ok(1);
        }
        let mut a = self.clone();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[(k, k)] == 0 {
                let Some(p) = (k + 1..n).find(|&i| a[(i, k)] != 0) else {
                    return Ok(0);
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t1 = a[(i, j)].checked_mul(a[(k, k)]).ok_or(Error::Overflow)?;
                    let t2 = a[(i, k)].checked_mul(a[(k, j)]).ok_or(Error::Overflow)?;
                    a[(i, j)] = t1.checked_sub(t2).ok_or(Error::Overflow)? / prev;
                }
            }
            prev = a[(k, k)];
        }
        Ok(sign * a[(n - 1, n - 1)])
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += f * row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: i128) -> Result<()> {
        for j in 0..self.cols {
            let t = self[(src, j)].checked_mul(f).ok_or(Error::Overflow)?;
            self[(dst, j)] = self[(dst, j)].checked_add(t).ok_or(Error::Overflow)?;
        }
        Ok(())
    }

    /// col[dst] += f * col[src]
    fn add_col(&mut self, dst: usize, src: usize, f: i128) -> Result<()> {
        for i in 0..self.rows {
            let t = self[(i, src)].checked_mul(f).ok_or(Error::Overflow)?;
            self[(i, dst)] = self[(i, dst)].checked_add(t).ok_or(Error::Overflow)?;
        }
        Ok(())
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            self[(r, j)] = -self[(r, j)];
        }
    }
}

impl core::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i128;
    fn index(&self, (i, j): (usize, usize)) -> &i128 {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i128 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}

/// Smith normal form data of a relation matrix `M` (rows are relations).
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Nonzero diagonal entries `d_0 | d_1 | ...`, all positive.
    pub invariants: Vec<i128>,
    /// Unimodular column transform `V`.
    pub transform: IntMatrix,
    /// `V⁻¹`.
    pub inverse: IntMatrix,
}

impl SmithForm {
    pub fn compute(m: &IntMatrix) -> Result<SmithForm> {
        let n = m.cols();
        let mut a = m.clone();
        let mut v = IntMatrix::identity(n);
        let mut vinv = IntMatrix::identity(n);
        let mut invariants = Vec::new();

        let mut t = 0;
        while t < a.rows() && t < n {
            // smallest nonzero entry of the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..a.rows() {
                for j in t..n {
                    let x = a[(i, j)];
                    if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            a.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);
            vinv.swap_rows(t, pj);

            loop {
                let mut dirty = false;
                for i in t + 1..a.rows() {
                    if a[(i, t)] != 0 {
                        let q = a[(i, t)].div_euclid(a[(t, t)]);
                        a.add_row(i, t, -q)?;
                        if a[(i, t)] != 0 {
                            a.swap_rows(t, i);
                            dirty = true;
                        }
                    }
                }
                for j in t + 1..n {
                    if a[(t, j)] != 0 {
                        let q = a[(t, j)].div_euclid(a[(t, t)]);
                        a.add_col(j, t, -q)?;
                        v.add_col(j, t, -q)?;
                        vinv.add_row(t, j, q)?;
                        if a[(t, j)] != 0 {
                            a.swap_cols(t, j);
                            v.swap_cols(t, j);
                            vinv.swap_rows(t, j);
                            dirty = true;
                        }
                    }
                }
                if dirty {
                    continue;
                }
                // divisibility of the trailing block
                let p = a[(t, t)];
                let bad = (t + 1..a.rows())
                    .find(|&i| (t + 1..n).any(|j| a[(i, j)] % p != 0));
                match bad {
                    Some(i) => a.add_row(t, i, 1)?,
                    None => break,
                }
            }
            if a[(t, t)] < 0 {
                a.negate_row(t);
            }
            invariants.push(a[(t, t)]);
            t += 1;
        }
        Ok(SmithForm { invariants, transform: v, inverse: vinv })
    }

    pub fn rank(&self) -> usize {
        self.invariants.len()
    }

    pub fn dimension(&self) -> usize {
        self.transform.rows()
    }
}

/// The row lattice of an integer matrix, with exact membership.
#[derive(Clone, Debug)]
pub struct Lattice {
    smith: SmithForm,
}

impl Lattice {
    pub fn new(dim: usize, generators: &[Vec<i128>]) -> Result<Lattice> {
        let m = IntMatrix::from_rows(dim, generators);
        Ok(Lattice { smith: SmithForm::compute(&m)? })
    }

    pub fn contains(&self, x: &[i128]) -> Result<bool> {
        let y = self.smith.transform.left_mul(x)?;
        let r = self.smith.rank();
        Ok(y.iter().enumerate().all(|(i, &yi)| {
            if i < r {
                yi % self.smith.invariants[i] == 0
            } else {
                yi == 0
            }
        }))
    }

    pub fn smith(&self) -> &SmithForm {
        &self.smith
    }
}
