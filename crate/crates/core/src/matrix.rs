//! Dense matrices over `Q(zeta_{p^3})` and exact elimination.
//!
//! Elimination never pivots by magnitude (meaningless in exact
//! arithmetic): the pivot is always the first usable nonzero in row-major
//! scan order, so every computed basis is reproducible bit for bit.
//! Forward elimination uses cross-multiplication (no field inversions) and
//! strips rational content after each combination to keep coefficients
//! small; inverses are only taken when a basis vector or an explicit
//! inverse matrix is actually extracted.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

use crate::cyclo::{CycloNum, OddPrime};

/// Row-major dense matrix with entries in `Q(zeta_{p^3})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloMatrix {
    p: OddPrime,
    rows: usize,
    cols: usize,
    data: Vec<CycloNum>,
}

impl CycloMatrix {
    pub fn zero(p: OddPrime, rows: usize, cols: usize) -> Self {
        CycloMatrix {
            p,
            rows,
            cols,
            data: vec![CycloNum::zero(p); rows * cols],
        }
    }

    pub fn identity(p: OddPrime, n: usize) -> Self {
        let mut m = Self::zero(p, n, n);
        for i in 0..n {
            m.set(i, i, CycloNum::one(p));
        }
        m
    }

    pub fn from_fn(
        p: OddPrime,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> CycloNum,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        CycloMatrix { p, rows, cols, data }
    }

    pub fn prime(&self) -> OddPrime {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &CycloNum {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: CycloNum) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix dimension mismatch");
        let mut out = Self::zero(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let t = a.mul(b);
                    out.data[i * other.cols + j].add_assign(&t);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            a.add_assign(b);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            a.sub_assign(b);
        }
        out
    }

    pub fn scale(&self, v: &CycloNum) -> Self {
        let mut out = self.clone();
        for a in &mut out.data {
            if !a.is_zero() {
                *a = a.mul(v);
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.p, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert_eq!(self.rows, self.cols, "pow of non-square matrix");
        let mut base = self.clone();
        let mut acc = Self::identity(self.p, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn trace(&self) -> CycloNum {
        let mut t = CycloNum::zero(self.p);
        for i in 0..self.rows.min(self.cols) {
            t.add_assign(self.get(i, i));
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let v = self.get(r, c);
                    if r == c {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    /// `Some(s)` when the matrix is `s * I`.
    pub fn as_scalar(&self) -> Option<&CycloNum> {
        if self.rows != self.cols || self.rows == 0 {
            return None;
        }
        let s = self.get(0, 0);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = self.get(r, c);
                if r == c {
                    if v != s {
                        return None;
                    }
                } else if !v.is_zero() {
                    return None;
                }
            }
        }
        Some(s)
    }

    /// Exact rank by elimination.
    pub fn rank(&self) -> usize {
        let rows: Vec<SparseRow> = (0..self.rows)
            .map(|r| SparseRow::from_dense(&self.data[r * self.cols..(r + 1) * self.cols]))
            .collect();
        Echelon::new(self.p, self.cols, rows).rank()
    }

    /// Exact inverse by Gauss-Jordan, `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(self.p, n);
        for col in 0..n {
            let pivot_row = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            if pivot_row != col {
                for c in 0..n {
                    a.data.swap(pivot_row * n + c, col * n + c);
                    inv.data.swap(pivot_row * n + c, col * n + c);
                }
            }
            let scale = a.get(col, col).inv().expect("pivot is nonzero");
            for c in 0..n {
                let v = a.get(col, c).mul(&scale);
                a.set(col, c, v);
                let v = inv.get(col, c).mul(&scale);
                inv.set(col, c, v);
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                for c in 0..n {
                    let t = a.get(col, c).mul(&factor);
                    a.data[r * n + c].sub_assign(&t);
                    let t = inv.get(col, c).mul(&factor);
                    inv.data[r * n + c].sub_assign(&t);
                }
            }
        }
        Some(inv)
    }
}

/// A sparse linear-equation row: sorted nonzero `(column, value)` pairs.
#[derive(Debug, Clone)]
pub struct SparseRow {
    entries: Vec<(usize, CycloNum)>,
}

impl SparseRow {
    /// Builds a row from raw terms, coalescing duplicate columns.
    pub fn new(mut entries: Vec<(usize, CycloNum)>) -> Self {
        entries.sort_by_key(|(c, _)| *c);
        let mut merged: Vec<(usize, CycloNum)> = Vec::with_capacity(entries.len());
        for (c, v) in entries {
            match merged.last_mut() {
                Some((lc, lv)) if *lc == c => lv.add_assign(&v),
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|(_, v)| !v.is_zero());
        SparseRow { entries: merged }
    }

    pub fn from_dense(values: &[CycloNum]) -> Self {
        SparseRow {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(c, v)| (c, v.clone()))
                .collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn lead(&self) -> Option<usize> {
        self.entries.first().map(|(c, _)| *c)
    }

    fn lead_value(&self) -> &CycloNum {
        &self.entries[0].1
    }

    pub fn entries(&self) -> &[(usize, CycloNum)] {
        &self.entries
    }

    /// `self * a - other * b`, merged sparsely.
    fn cross_combine(&self, a: &CycloNum, other: &Self, b: &CycloNum) -> Self {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() || j < other.entries.len() {
            let ci = self.entries.get(i).map(|(c, _)| *c);
            let cj = other.entries.get(j).map(|(c, _)| *c);
            match (ci, cj) {
                (Some(ci), Some(cj)) if ci == cj => {
                    let v = self.entries[i].1.mul(a).sub(&other.entries[j].1.mul(b));
                    if !v.is_zero() {
                        out.push((ci, v));
                    }
                    i += 1;
                    j += 1;
                }
                (Some(ci), Some(cj)) if ci < cj => {
                    out.push((ci, self.entries[i].1.mul(a)));
                    i += 1;
                }
                (Some(_), Some(cj)) => {
                    out.push((cj, other.entries[j].1.mul(b).neg()));
                    j += 1;
                }
                (Some(ci), None) => {
                    out.push((ci, self.entries[i].1.mul(a)));
                    i += 1;
                }
                (None, Some(cj)) => {
                    out.push((cj, other.entries[j].1.mul(b).neg()));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        SparseRow { entries: out }
    }

    /// Divide out the rational content (gcd of numerators over lcm of
    /// denominators) and fix the sign of the leading coefficient, keeping
    /// coefficient growth in check during cross-multiplication.
    fn reduce_content(&mut self, p: OddPrime) {
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for (_, v) in &self.entries {
            for c in v.coeffs() {
                if c.is_zero() {
                    continue;
                }
                num_gcd = num_gcd.gcd(c.numer());
                den_lcm = den_lcm.lcm(c.denom());
            }
        }
        if num_gcd.is_zero() {
            return;
        }
        // Leading coefficient of the leading entry becomes positive.
        let lead_sign = self.entries[0]
            .1
            .coeffs()
            .iter()
            .find(|c| !c.is_zero())
            .map(|c| c.is_negative())
            .unwrap_or(false);
        if lead_sign {
            num_gcd = -num_gcd;
        }
        let scale = BigRational::new(den_lcm, num_gcd);
        if scale.is_one() {
            return;
        }
        let _ = p;
        for (_, v) in &mut self.entries {
            *v = v.scale(&scale);
        }
    }
}

/// Row-echelon form of a sparse system, keyed by pivot column.
pub struct Echelon {
    p: OddPrime,
    nvars: usize,
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    /// Eliminate `rows` in their given order. Cross-multiplication only;
    /// no divisions happen here.
    pub fn new(p: OddPrime, nvars: usize, rows: Vec<SparseRow>) -> Self {
        let mut ech = Echelon {
            p,
            nvars,
            pivots: BTreeMap::new(),
        };
        for row in rows {
            ech.insert(row);
        }
        ech
    }

    fn insert(&mut self, mut row: SparseRow) {
        while let Some(lead) = row.lead() {
            match self.pivots.get(&lead) {
                Some(pivot) => {
                    let a = pivot.lead_value().clone();
                    let b = row.lead_value().clone();
                    row = row.cross_combine(&a, pivot, &b);
                    row.reduce_content(self.p);
                }
                None => {
                    let mut row = row;
                    row.reduce_content(self.p);
                    self.pivots.insert(lead, row);
                    return;
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn nullity(&self) -> usize {
        self.nvars - self.pivots.len()
    }

    /// Nullspace basis, one vector per free column in ascending column
    /// order; each vector is scaled so its first nonzero entry is 1.
    pub fn nullspace_basis(&self) -> Vec<Vec<CycloNum>> {
        let zero = CycloNum::zero(self.p);
        let mut basis = Vec::with_capacity(self.nullity());
        for f in 0..self.nvars {
            if self.pivots.contains_key(&f) {
                continue;
            }
            let mut x = vec![zero.clone(); self.nvars];
            x[f] = CycloNum::one(self.p);
            // Back-substitute pivot rows from the highest lead column down.
            for (&lead, row) in self.pivots.iter().rev() {
                if lead > f {
                    continue;
                }
                let mut s = CycloNum::zero(self.p);
                for (c, v) in row.entries().iter().skip(1) {
                    if !x[*c].is_zero() {
                        s.add_assign(&v.mul(&x[*c]));
                    }
                }
                if !s.is_zero() {
                    let inv = row.lead_value().inv().expect("pivot is nonzero");
                    x[lead] = s.neg().mul(&inv);
                }
            }
            // Canonical scaling: first nonzero entry becomes 1.
            if let Some(first) = x.iter().position(|v| !v.is_zero()) {
                if !x[first].is_one() {
                    let inv = x[first].inv().expect("nonzero");
                    for v in &mut x {
                        if !v.is_zero() {
                            *v = v.mul(&inv);
                        }
                    }
                }
            }
            basis.push(x);
        }
        basis
    }
}
