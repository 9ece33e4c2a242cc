//! Exact linear algebra over Q(ζ_N): sparse vectors, column-sparse and dense
//! matrices, fraction-free rank, reduced row echelon form, kernels and inverses.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::scalars::{Cyclotomic, Field};

/// Sparse vector, sorted by index, with no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseVec(Vec<(usize, Cyclotomic)>);

impl SparseVec {
    pub fn zero() -> Self {
        SparseVec(Vec::new())
    }

    pub fn unit(i: usize, c: Cyclotomic) -> Self {
        if c.is_zero() {
            SparseVec::zero()
        } else {
            SparseVec(vec![(i, c)])
        }
    }

    /// Sums duplicate indices and drops zeros.
    pub fn from_terms<I: IntoIterator<Item = (usize, Cyclotomic)>>(terms: I) -> Self {
        let mut acc: BTreeMap<usize, Cyclotomic> = BTreeMap::new();
        for (i, c) in terms {
            if c.is_zero() {
                continue;
            }
            match acc.get_mut(&i) {
                Some(v) => *v = &*v + &c,
                None => {
                    acc.insert(i, c);
                }
            }
        }
        SparseVec(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, Cyclotomic)> {
        self.0.iter()
    }

    pub fn get(&self, i: usize) -> Option<&Cyclotomic> {
        self.0.binary_search_by_key(&i, |(j, _)| *j).ok().map(|k| &self.0[k].1)
    }

    pub fn scale(&self, c: &Cyclotomic) -> SparseVec {
        if c.is_zero() {
            return SparseVec::zero();
        }
        SparseVec(self.0.iter().map(|(i, v)| (*i, v * c)).collect())
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        self.axpy(other, None)
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        self.axpy(&other.scale(&-Cyclotomic::integer(1)), None)
    }

    /// self + c·other (c = 1 when `None`), merging the sorted supports.
    pub fn axpy(&self, other: &SparseVec, c: Option<&Cyclotomic>) -> SparseVec {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        let y = c.map_or_else(|| y.clone(), |c| y * c);
                        if !y.is_zero() {
                            out.push((*j, y));
                        }
                        b.next();
                    } else {
                        let s = match c {
                            Some(c) => x + &(y * c),
                            None => x + y,
                        };
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    let y = c.map_or_else(|| y.clone(), |c| y * c);
                    if !y.is_zero() {
                        out.push((*j, y));
                    }
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec(out)
    }

    /// Relabels indices through `f`; duplicates are summed.
    pub fn map_indices(&self, f: impl Fn(usize) -> usize) -> SparseVec {
        SparseVec::from_terms(self.0.iter().map(|(i, c)| (f(*i), c.clone())))
    }

    pub fn into_inner(self) -> Vec<(usize, Cyclotomic)> {
        self.0
    }
}

impl FromIterator<(usize, Cyclotomic)> for SparseVec {
    fn from_iter<T: IntoIterator<Item = (usize, Cyclotomic)>>(iter: T) -> Self {
        SparseVec::from_terms(iter)
    }
}

impl fmt::Display for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.0.iter().map(|(i, c)| format!("({})·e{}", c, i)).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Column-sparse matrix: column j holds the image of basis vector j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols: vec![SparseVec::zero(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            rows: n,
            cols: (0..n).map(|i| SparseVec::unit(i, Cyclotomic::integer(1))).collect(),
        }
    }

    pub fn from_columns(rows: usize, cols: Vec<SparseVec>) -> Self {
        debug_assert!(cols.iter().all(|c| c.iter().all(|(i, _)| *i < rows)));
        SparseMatrix { rows, cols }
    }

    pub fn diagonal(entries: Vec<Cyclotomic>) -> Self {
        let n = entries.len();
        SparseMatrix { rows: n, cols: entries.into_iter().enumerate().map(|(i, c)| SparseVec::unit(i, c)).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&Cyclotomic> {
        self.cols[j].get(i)
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new(self.rows);
        for (j, c) in v.iter() {
            acc.add_scaled(&self.cols[*j], c);
        }
        acc.finish()
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols(), other.rows, "dimension mismatch in composition");
        let mut acc = Accumulator::new(self.rows);
        let cols = other
            .cols
            .iter()
            .map(|col| {
                for (k, c) in col.iter() {
                    acc.add_scaled(&self.cols[*k], c);
                }
                acc.finish()
            })
            .collect();
        SparseMatrix { rows: self.rows, cols }
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols()), (other.rows, other.cols()));
        SparseMatrix { rows: self.rows, cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols()), (other.rows, other.cols()));
        SparseMatrix { rows: self.rows, cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, c: &Cyclotomic) -> SparseMatrix {
        SparseMatrix { rows: self.rows, cols: self.cols.iter().map(|v| v.scale(c)).collect() }
    }

    pub fn pow(&self, e: u32) -> SparseMatrix {
        assert_eq!(self.rows, self.cols());
        let mut acc = SparseMatrix::identity(self.rows);
        for _ in 0..e {
            acc = self.compose(&acc);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero())
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    /// Kronecker product; index of (i, j) is `i * other_dim + j` on both sides.
    pub fn kron(&self, other: &SparseMatrix) -> SparseMatrix {
        let rows = self.rows * other.rows;
        let mut cols = Vec::with_capacity(self.cols() * other.cols());
        for a in &self.cols {
            for b in &other.cols {
                let mut terms = Vec::with_capacity(a.len() * b.len());
                for (i, x) in a.iter() {
                    for (j, y) in b.iter() {
                        terms.push((i * other.rows + j, x * y));
                    }
                }
                cols.push(SparseVec(terms.into_iter().filter(|(_, c)| !c.is_zero()).collect()));
            }
        }
        SparseMatrix { rows, cols }
    }

    /// First column where the two matrices differ.
    pub fn first_difference(&self, other: &SparseMatrix) -> Option<usize> {
        (0..self.cols().min(other.cols())).find(|&j| self.cols[j] != other.cols[j])
    }

    pub fn to_dense(&self, field: &Field) -> Matrix {
        let mut m = Matrix::zero(field, self.rows, self.cols());
        for (j, col) in self.cols.iter().enumerate() {
            for (i, c) in col.iter() {
                m.set(*i, j, c.clone());
            }
        }
        m
    }

    pub fn from_dense(m: &Matrix) -> SparseMatrix {
        let cols = (0..m.cols())
            .map(|j| SparseVec((0..m.rows()).filter_map(|i| {
                let c = m.get(i, j);
                (!c.is_zero()).then(|| (i, c.clone()))
            }).collect()))
            .collect();
        SparseMatrix { rows: m.rows(), cols }
    }
}

/// Scratch space for accumulating sparse linear combinations; dense slots for
/// moderate dimensions, a hash map for very tall targets.
pub(crate) enum Accumulator {
    Dense { slots: Vec<Option<Cyclotomic>>, touched: Vec<usize> },
    Sparse(HashMap<usize, Cyclotomic>),
}

const DENSE_LIMIT: usize = 1 << 15;

impl Accumulator {
    pub(crate) fn new(n: usize) -> Self {
        if n <= DENSE_LIMIT {
            Accumulator::Dense { slots: vec![None; n], touched: Vec::new() }
        } else {
            Accumulator::Sparse(HashMap::new())
        }
    }

    pub(crate) fn add_scaled(&mut self, v: &SparseVec, c: &Cyclotomic) {
        let one = c.is_one();
        for (i, x) in v.iter() {
            let t = if one { x.clone() } else { x * c };
            self.add_at(*i, t);
        }
    }

    pub(crate) fn add_at(&mut self, i: usize, t: Cyclotomic) {
        match self {
            Accumulator::Dense { slots, touched } => match &mut slots[i] {
                Some(s) => *s = &*s + &t,
                slot @ None => {
                    *slot = Some(t);
                    touched.push(i);
                }
            },
            Accumulator::Sparse(map) => match map.get_mut(&i) {
                Some(s) => *s = &*s + &t,
                None => {
                    map.insert(i, t);
                }
            },
        }
    }

    pub(crate) fn finish(&mut self) -> SparseVec {
        match self {
            Accumulator::Dense { slots, touched } => {
                touched.sort_unstable();
                let mut out = Vec::with_capacity(touched.len());
                for &i in touched.iter() {
                    if let Some(c) = slots[i].take() {
                        if !c.is_zero() {
                            out.push((i, c));
                        }
                    }
                }
                touched.clear();
                SparseVec(out)
            }
            Accumulator::Sparse(map) => {
                let mut out: Vec<_> = map.drain().filter(|(_, c)| !c.is_zero()).collect();
                out.sort_unstable_by_key(|(i, _)| *i);
                SparseVec(out)
            }
        }
    }
}

/// Dense row-major matrix.
#[derive(Clone, Debug)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Cyclotomic>,
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl Eq for Matrix {}

impl Matrix {
    pub fn zero(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Cyclotomic>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { field: field.clone(), rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Cyclotomic) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Cyclotomic] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zero(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn scaled(&self, c: &Cyclotomic) -> Matrix {
        let mut out = self.clone();
        for v in out.data.iter_mut() {
            *v = &*v * c;
        }
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    /// Rank by fraction-free (Bareiss) elimination, pivoting on the first
    /// nonzero entry of each column.
    pub fn rank(&self) -> usize {
        let mut a = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut prev_inv = self.field.one();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !a[i * cols + c].is_zero()) else {
                continue;
            };
            if p != r {
                for j in c..cols {
                    a.swap(p * cols + j, r * cols + j);
                }
            }
            let piv = a[r * cols + c].clone();
            for i in r + 1..rows {
                let lead = a[i * cols + c].clone();
                let lead_zero = lead.is_zero();
                for j in c + 1..cols {
                    let x = &a[i * cols + j];
                    let rj = &a[r * cols + j];
                    let v = if lead_zero || rj.is_zero() {
                        if x.is_zero() {
                            continue;
                        }
                        &piv * x
                    } else {
                        &(&piv * x) - &(&lead * rj)
                    };
                    a[i * cols + j] = if prev_inv.is_one() { v } else { &v * &prev_inv };
                }
                a[i * cols + c] = self.field.zero();
            }
            prev_inv = piv.inverse().expect("nonzero pivot");
            r += 1;
        }
        r
    }

    /// Reduced row echelon form over the field; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = self.get(r, c).inverse().expect("nonzero pivot");
            for j in c..cols {
                let v = self.get(r, j);
                if !v.is_zero() {
                    let v = v * &inv;
                    self.set(r, j, v);
                }
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..cols {
                    let rv = self.get(r, j);
                    if rv.is_zero() {
                        continue;
                    }
                    let v = self.get(i, j) - &(&f * rv);
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Basis of {v : self · v = 0}.
    pub fn kernel(&self) -> Vec<Vec<Cyclotomic>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![None; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(r);
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -m.get(r, free);
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zero(&self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, self.field.one());
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zero(&self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Some(inv)
    }
}
