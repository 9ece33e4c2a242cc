//! Z/N-graded vector spaces and homogeneous maps in the braided category
//! (Vec_{Z/N}, χ) with χ(i, j) = ζ_N^{c·i·j}.
//!
//! A space is a tensor word of atoms; each atom carries an ordered basis with a
//! degree per basis vector and a dual index (`V^` adds one, `^V` subtracts one).
//! The flat basis of a word is lexicographic, first atom most significant, so
//! ⊗ is strictly associative and the unit is the empty word.

use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};
use thiserror::Error;

use crate::linalg::{Matrix, SparseMatrix, SparseVec};
use crate::scalars::{field, Cyclotomic, Field};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradedError {
    #[error("grading groups differ: Z/{left} vs Z/{right}")]
    GroupMismatch { left: u64, right: u64 },
    #[error("object mismatch: expected {expected}, found {found}")]
    ObjectMismatch { expected: String, found: String },
    #[error("entry ({row}, {col}) breaks homogeneity of degree {shift}")]
    NotHomogeneous { row: usize, col: usize, shift: u64 },
    #[error("shift mismatch: {left} vs {right}")]
    ShiftMismatch { left: u64, right: u64 },
    #[error("matrix is {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    Shape { rows: usize, cols: usize, expected_rows: usize, expected_cols: usize },
}

/// χ(i, j) = ζ_N^{c·i·j} on Z/N.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Bicharacter {
    n: u64,
    c: u64,
}

impl Bicharacter {
    pub fn new(n: u64, c: i64) -> Self {
        assert!(n >= 1, "grading group order must be positive");
        Bicharacter { n, c: c.rem_euclid(n as i64) as u64 }
    }

    /// The symmetric trivial braiding on Z/N.
    pub fn trivial(n: u64) -> Self {
        Bicharacter::new(n, 0)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn c(&self) -> u64 {
        self.c
    }

    pub fn field(&self) -> Field {
        field(self.n)
    }

    pub fn reduce(&self, d: i64) -> u64 {
        d.rem_euclid(self.n as i64) as u64
    }

    fn root(&self, e: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(self.n, e)
    }

    pub fn chi(&self, i: u64, j: u64) -> Cyclotomic {
        self.root((self.c * (i % self.n) * (j % self.n) % self.n) as i64)
    }

    /// ω(i, j) = χ(i, j)χ(j, i).
    pub fn omega(&self, i: u64, j: u64) -> Cyclotomic {
        self.root((2 * self.c * (i % self.n) * (j % self.n) % self.n) as i64)
    }

    /// θ(i) = χ(i, i).
    pub fn theta(&self, i: u64) -> Cyclotomic {
        self.chi(i, i)
    }
}

/// A degree-wise scalar ς(i) on the identity functor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntiTwist {
    chi: Bicharacter,
    values: Vec<Cyclotomic>,
}

impl AntiTwist {
    /// ς(i) = χ(i, −i) = θ(i)^{-1}.
    pub fn canonical(chi: Bicharacter) -> Self {
        Self::with_mu(chi, 0)
    }

    /// ς_μ(i) = ζ_N^{−c·i² − μ·i}, i.e. the canonical anti-twist times λ_{−μ}.
    pub fn with_mu(chi: Bicharacter, mu: i64) -> Self {
        let n = chi.n as i64;
        let values = (0..n)
            .map(|i| Cyclotomic::root_of_unity(chi.n, -(chi.c as i64) * i * i - mu * i))
            .collect();
        AntiTwist { chi, values }
    }

    pub fn from_values(chi: Bicharacter, values: Vec<Cyclotomic>) -> Self {
        assert_eq!(values.len() as u64, chi.n, "one value per degree");
        AntiTwist { chi, values }
    }

    pub fn bicharacter(&self) -> Bicharacter {
        self.chi
    }

    pub fn value(&self, i: u64) -> &Cyclotomic {
        &self.values[(i % self.chi.n) as usize]
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn scaled(&self, s: &Cyclotomic) -> AntiTwist {
        AntiTwist { chi: self.chi, values: self.values.iter().map(|v| v * s).collect() }
    }

    /// Pointwise product with the character λ_t(x) = ζ_N^{t·x}.
    pub fn times_character(&self, t: i64) -> AntiTwist {
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(x, v)| v * &Cyclotomic::root_of_unity(self.chi.n, t * x as i64))
            .collect();
        AntiTwist { chi: self.chi, values }
    }

    /// First (i, j) with ς(i+j)·ω(i,j) ≠ ς(i)ς(j).
    pub fn law_violation(&self) -> Option<(u64, u64)> {
        let n = self.chi.n;
        for i in 0..n {
            for j in 0..n {
                let lhs = self.value(i + j) * &self.chi.omega(i, j);
                if lhs != self.value(i) * self.value(j) {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

#[derive(Debug, PartialEq, Eq)]
struct AtomData {
    name: String,
    degrees: Vec<u64>,
    labels: Vec<String>,
}

#[derive(Debug, Clone)]
struct Atom {
    data: Arc<AtomData>,
    dual: i32,
}

impl PartialEq for Atom {
    fn eq(&self, other: &Self) -> bool {
        self.dual == other.dual && (Arc::ptr_eq(&self.data, &other.data) || self.data == other.data)
    }
}

impl Eq for Atom {}

impl Atom {
    fn dim(&self) -> usize {
        self.data.degrees.len()
    }

    fn degree(&self, k: usize, n: u64) -> u64 {
        let d = self.data.degrees[k];
        if self.dual % 2 == 0 {
            d
        } else {
            (n - d) % n
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dual < 0 {
            for _ in 0..-self.dual {
                f.write_str("^")?;
            }
        }
        f.write_str(&self.data.name)?;
        for _ in 0..self.dual.max(0) {
            f.write_str("^")?;
        }
        Ok(())
    }
}

/// A finite-dimensional Z/N-graded space, presented as a tensor word of atoms.
#[derive(Debug, Clone)]
pub struct GradedSpace {
    n: u64,
    atoms: Vec<Atom>,
    degrees: Arc<Vec<u64>>,
}

impl PartialEq for GradedSpace {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.atoms == other.atoms
    }
}

impl Eq for GradedSpace {}

impl GradedSpace {
    pub fn unit(n: u64) -> Self {
        GradedSpace { n, atoms: Vec::new(), degrees: Arc::new(vec![0]) }
    }

    /// An atom with `dims[d]` basis vectors in degree d, ordered by degree.
    pub fn atom(n: u64, name: &str, dims: &[usize]) -> Self {
        let mut basis = Vec::new();
        for (d, &k) in dims.iter().enumerate() {
            for i in 0..k {
                basis.push(((d as u64) % n, format!("{name}{d}.{i}")));
            }
        }
        Self::atom_with_basis(n, name, basis)
    }

    /// An atom whose basis is given in order, each vector with a degree and label.
    pub fn atom_with_basis(n: u64, name: &str, basis: Vec<(u64, String)>) -> Self {
        let (degrees, labels) = basis.into_iter().map(|(d, l)| (d % n, l)).unzip();
        let data = Arc::new(AtomData { name: name.to_string(), degrees, labels });
        Self::from_atoms(n, vec![Atom { data, dual: 0 }])
    }

    fn from_atoms(n: u64, atoms: Vec<Atom>) -> Self {
        let mut degrees = vec![0u64];
        for a in &atoms {
            let mut next = Vec::with_capacity(degrees.len() * a.dim());
            for &d in &degrees {
                for k in 0..a.dim() {
                    next.push((d + a.degree(k, n)) % n);
                }
            }
            degrees = next;
        }
        GradedSpace { n, atoms, degrees: Arc::new(degrees) }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_unit(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Number of atoms in the tensor word.
    pub fn length(&self) -> usize {
        self.atoms.len()
    }

    pub fn degree(&self, idx: usize) -> u64 {
        self.degrees[idx]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn dims(&self) -> Vec<usize> {
        let mut dims = vec![0; self.n as usize];
        for &d in self.degrees.iter() {
            dims[d as usize] += 1;
        }
        dims
    }

    pub fn basis_in_degree(&self, d: u64) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == d % self.n).collect()
    }

    fn digits(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.atoms.len()];
        for (slot, a) in out.iter_mut().zip(&self.atoms).rev() {
            *slot = idx % a.dim();
            idx /= a.dim();
        }
        out
    }

    pub fn label(&self, idx: usize) -> String {
        if self.atoms.is_empty() {
            return "1".to_string();
        }
        let parts: Vec<String> = self
            .digits(idx)
            .iter()
            .zip(&self.atoms)
            .map(|(&k, a)| match a.dual {
                0 => a.data.labels[k].clone(),
                d if d > 0 => format!("{}{}", a.data.labels[k], "^".repeat(d as usize)),
                d => format!("{}{}", "^".repeat((-d) as usize), a.data.labels[k]),
            })
            .collect();
        parts.join("⊗")
    }

    fn check_group(&self, other: &GradedSpace) -> Result<(), GradedError> {
        if self.n != other.n {
            return Err(GradedError::GroupMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    pub fn tensor(&self, other: &GradedSpace) -> Result<GradedSpace, GradedError> {
        self.check_group(other)?;
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().cloned());
        let mut degrees = Vec::with_capacity(self.dim() * other.dim());
        for &a in self.degrees.iter() {
            for &b in other.degrees.iter() {
                degrees.push((a + b) % self.n);
            }
        }
        Ok(GradedSpace { n: self.n, atoms, degrees: Arc::new(degrees) })
    }

    fn dual_with(&self, step: i32) -> GradedSpace {
        let atoms = self.atoms.iter().rev().map(|a| Atom { data: a.data.clone(), dual: a.dual + step }).collect();
        Self::from_atoms(self.n, atoms)
    }

    /// `V^`, the dual paired by ev: V^ ⊗ V → I.
    pub fn right_dual(&self) -> GradedSpace {
        self.dual_with(1)
    }

    /// `^V`, the dual paired by ev_l: V ⊗ ^V → I.
    pub fn left_dual(&self) -> GradedSpace {
        self.dual_with(-1)
    }

    /// Index in either dual of the functional dual to basis vector `idx`.
    pub fn dual_index(&self, idx: usize) -> usize {
        let digits = self.digits(idx);
        let mut out = 0;
        for (k, a) in digits.iter().zip(&self.atoms).rev() {
            out = out * a.dim() + k;
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({ "n": self.n, "object": self.to_string(), "dims": self.dims() })
    }
}

impl fmt::Display for GradedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return f.write_str("I");
        }
        let parts: Vec<String> = self.atoms.iter().map(|a| a.to_string()).collect();
        f.write_str(&parts.join(" * "))
    }
}

/// A linear map raising degree by `shift`; column j is the image of source basis j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedMap {
    source: GradedSpace,
    target: GradedSpace,
    shift: u64,
    matrix: SparseMatrix,
}

/// Where two maps differ: the source basis vector and both images.
#[derive(Debug, Clone)]
pub struct Witness {
    pub column: usize,
    pub label: String,
    pub left: SparseVec,
    pub right: SparseVec,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "on {} (basis {}): {} vs {}", self.label, self.column, self.left, self.right)
    }
}

impl GradedMap {
    pub fn new(
        source: GradedSpace,
        target: GradedSpace,
        shift: i64,
        matrix: SparseMatrix,
    ) -> Result<GradedMap, GradedError> {
        source.check_group(&target)?;
        let shift = shift.rem_euclid(source.n as i64) as u64;
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(GradedError::Shape {
                rows: matrix.rows(),
                cols: matrix.cols(),
                expected_rows: target.dim(),
                expected_cols: source.dim(),
            });
        }
        for (j, col) in matrix.columns().iter().enumerate() {
            let want = (source.degree(j) + shift) % source.n;
            if let Some((i, _)) = col.iter().find(|(i, _)| target.degree(*i) != want) {
                return Err(GradedError::NotHomogeneous { row: *i, col: j, shift });
            }
        }
        Ok(GradedMap { source, target, shift, matrix })
    }

    pub(crate) fn new_unchecked(source: GradedSpace, target: GradedSpace, shift: u64, matrix: SparseMatrix) -> Self {
        debug_assert!(GradedMap::new(source.clone(), target.clone(), shift as i64, matrix.clone()).is_ok());
        GradedMap { source, target, shift, matrix }
    }

    /// Builds a map column by column.
    pub fn from_fn(
        source: &GradedSpace,
        target: &GradedSpace,
        shift: i64,
        f: impl Fn(usize) -> SparseVec,
    ) -> Result<GradedMap, GradedError> {
        let cols = (0..source.dim()).map(f).collect();
        GradedMap::new(source.clone(), target.clone(), shift, SparseMatrix::from_columns(target.dim(), cols))
    }

    pub fn identity(v: &GradedSpace) -> GradedMap {
        GradedMap { source: v.clone(), target: v.clone(), shift: 0, matrix: SparseMatrix::identity(v.dim()) }
    }

    pub fn zero(source: &GradedSpace, target: &GradedSpace, shift: i64) -> GradedMap {
        let shift = shift.rem_euclid(source.n as i64) as u64;
        GradedMap {
            source: source.clone(),
            target: target.clone(),
            shift,
            matrix: SparseMatrix::zero(target.dim(), source.dim()),
        }
    }

    /// The diagonal map multiplying degree-d vectors by `f(d)`.
    pub fn diagonal(v: &GradedSpace, f: impl Fn(u64) -> Cyclotomic) -> GradedMap {
        let table: Vec<Cyclotomic> = (0..v.n).map(&f).collect();
        let entries = v.degrees().iter().map(|&d| table[d as usize].clone()).collect();
        GradedMap { source: v.clone(), target: v.clone(), shift: 0, matrix: SparseMatrix::diagonal(entries) }
    }

    pub fn source(&self) -> &GradedSpace {
        &self.source
    }

    pub fn target(&self) -> &GradedSpace {
        &self.target
    }

    pub fn shift(&self) -> u64 {
        self.shift
    }

    pub fn matrix(&self) -> &SparseMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        self.matrix.apply(v)
    }

    pub fn image(&self, j: usize) -> &SparseVec {
        self.matrix.column(j)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedMap) -> Result<GradedMap, GradedError> {
        if other.target != self.source {
            return Err(GradedError::ObjectMismatch {
                expected: self.source.to_string(),
                found: other.target.to_string(),
            });
        }
        Ok(GradedMap {
            source: other.source.clone(),
            target: self.target.clone(),
            shift: (self.shift + other.shift) % self.source.n,
            matrix: self.matrix.compose(&other.matrix),
        })
    }

    /// Diagrammatic order: `self` first, then `next`.
    pub fn then(&self, next: &GradedMap) -> Result<GradedMap, GradedError> {
        next.compose(self)
    }

    pub fn tensor(&self, other: &GradedMap) -> Result<GradedMap, GradedError> {
        Ok(GradedMap {
            source: self.source.tensor(&other.source)?,
            target: self.target.tensor(&other.target)?,
            shift: (self.shift + other.shift) % self.source.n,
            matrix: self.matrix.kron(&other.matrix),
        })
    }

    fn check_parallel(&self, other: &GradedMap) -> Result<(), GradedError> {
        if self.source != other.source {
            return Err(GradedError::ObjectMismatch { expected: self.source.to_string(), found: other.source.to_string() });
        }
        if self.target != other.target {
            return Err(GradedError::ObjectMismatch { expected: self.target.to_string(), found: other.target.to_string() });
        }
        if self.shift != other.shift && !self.matrix.is_zero() && !other.matrix.is_zero() {
            return Err(GradedError::ShiftMismatch { left: self.shift, right: other.shift });
        }
        Ok(())
    }

    pub fn add(&self, other: &GradedMap) -> Result<GradedMap, GradedError> {
        self.check_parallel(other)?;
        let shift = if self.matrix.is_zero() { other.shift } else { self.shift };
        Ok(GradedMap { shift, matrix: self.matrix.add(&other.matrix), ..self.clone() })
    }

    pub fn sub(&self, other: &GradedMap) -> Result<GradedMap, GradedError> {
        self.check_parallel(other)?;
        let shift = if self.matrix.is_zero() { other.shift } else { self.shift };
        Ok(GradedMap { shift, matrix: self.matrix.sub(&other.matrix), ..self.clone() })
    }

    pub fn scale(&self, c: &Cyclotomic) -> GradedMap {
        GradedMap { matrix: self.matrix.scale(c), ..self.clone() }
    }

    pub fn pow(&self, e: u32) -> Result<GradedMap, GradedError> {
        if self.source != self.target {
            return Err(GradedError::ObjectMismatch { expected: self.source.to_string(), found: self.target.to_string() });
        }
        Ok(GradedMap {
            shift: (self.shift * e as u64) % self.source.n,
            matrix: self.matrix.pow(e),
            ..self.clone()
        })
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// First basis vector on which the two maps disagree, if any.
    pub fn difference(&self, other: &GradedMap) -> Option<Witness> {
        let cols = self.source.dim().max(other.source.dim());
        (0..cols).find_map(|j| {
            let l = if j < self.matrix.cols() { self.matrix.column(j).clone() } else { SparseVec::zero() };
            let r = if j < other.matrix.cols() { other.matrix.column(j).clone() } else { SparseVec::zero() };
            (l != r).then(|| Witness { column: j, label: if j < self.source.dim() { self.source.label(j) } else { format!("#{j}") }, left: l, right: r })
        })
    }

    /// The block from source degree `d` to target degree `d + shift`, with the
    /// row and column basis indices it uses.
    pub fn block(&self, d: u64) -> (Matrix, Vec<usize>, Vec<usize>) {
        let cols = self.source.basis_in_degree(d);
        let rows = self.target.basis_in_degree(d + self.shift);
        let mut pos = vec![usize::MAX; self.target.dim()];
        for (r, &i) in rows.iter().enumerate() {
            pos[i] = r;
        }
        let f = field(self.source.n);
        let mut m = Matrix::zero(&f, rows.len(), cols.len());
        for (c, &j) in cols.iter().enumerate() {
            for (i, v) in self.matrix.column(j).iter() {
                m.set(pos[*i], c, v.clone());
            }
        }
        (m, rows, cols)
    }

    /// Inverse of a shift-0 endomorphism, computed degree by degree.
    pub fn inverse(&self) -> Option<GradedMap> {
        if self.source.dim() != self.target.dim() {
            return None;
        }
        let n = self.source.n;
        let mut cols = vec![SparseVec::zero(); self.target.dim()];
        for d in 0..n {
            let (m, rows, src) = self.block(d);
            if rows.len() != src.len() {
                return None;
            }
            if rows.is_empty() {
                continue;
            }
            let inv = m.inverse()?;
            for (c, &i) in rows.iter().enumerate() {
                cols[i] = SparseVec::from_terms((0..src.len()).map(|r| (src[r], inv.get(r, c).clone())));
            }
        }
        Some(GradedMap {
            source: self.target.clone(),
            target: self.source.clone(),
            shift: (n - self.shift) % n,
            matrix: SparseMatrix::from_columns(self.source.dim(), cols),
        })
    }

    pub fn to_dense(&self) -> Matrix {
        self.matrix.to_dense(&field(self.source.n))
    }

    pub fn to_json(&self) -> Value {
        let blocks: Vec<Value> = (0..self.source.n)
            .filter_map(|d| {
                let (m, rows, cols) = self.block(d);
                if rows.is_empty() || cols.is_empty() {
                    return None;
                }
                let entries: Vec<Vec<String>> =
                    (0..m.rows()).map(|i| m.row(i).iter().map(|c| c.to_string()).collect()).collect();
                Some(json!({ "degree": d, "entries": entries }))
            })
            .collect();
        json!({
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "shift": self.shift,
            "blocks": blocks,
        })
    }
}

/// Degree-permuting structure maps of (Vec_{Z/N}, χ).
impl Bicharacter {
    fn check(&self, v: &GradedSpace) {
        assert_eq!(self.n, v.n, "bicharacter and space use different grading groups");
    }

    /// τ_{V,W}: v⊗w ↦ χ(|v|, |w|) w⊗v.
    pub fn braiding(&self, v: &GradedSpace, w: &GradedSpace) -> GradedMap {
        self.check(v);
        let (dv, dw) = (v.dim(), w.dim());
        let cols = (0..dv * dw)
            .map(|j| {
                let (a, b) = (j / dw, j % dw);
                SparseVec::unit(b * dv + a, self.chi(v.degree(a), w.degree(b)))
            })
            .collect();
        GradedMap::new_unchecked(
            v.tensor(w).expect("same group"),
            w.tensor(v).expect("same group"),
            0,
            SparseMatrix::from_columns(dv * dw, cols),
        )
    }

    /// τ_{V,W}^{-1}: W⊗V → V⊗W.
    pub fn braiding_inverse(&self, v: &GradedSpace, w: &GradedSpace) -> GradedMap {
        self.check(v);
        let (dv, dw) = (v.dim(), w.dim());
        let cols = (0..dw * dv)
            .map(|j| {
                let (b, a) = (j / dv, j % dv);
                SparseVec::unit(a * dw + b, self.chi(v.degree(a), w.degree(b)).inverse().expect("root of unity"))
            })
            .collect();
        GradedMap::new_unchecked(
            w.tensor(v).expect("same group"),
            v.tensor(w).expect("same group"),
            0,
            SparseMatrix::from_columns(dv * dw, cols),
        )
    }

    /// θ_V(v) = χ(|v|, |v|) v.
    pub fn twist(&self, v: &GradedSpace) -> GradedMap {
        self.check(v);
        GradedMap::diagonal(v, |d| self.theta(d))
    }

    /// E^ς_{X,M}(x⊗m) = ω(|x|, |m|)^{-1} ς(|x|) x⊗m, i.e. τ^{-2}_{X,M} ∘ (ς_X ⊗ id).
    pub fn braided_module_e(&self, x: &GradedSpace, m: &GradedSpace, s: &AntiTwist) -> GradedMap {
        self.check(x);
        let xm = x.tensor(m).expect("same group");
        let dm = m.dim();
        let entries = (0..xm.dim())
            .map(|j| {
                let (a, i) = (x.degree(j / dm), m.degree(j % dm));
                s.value(a) * &self.omega(a, i).inverse().expect("root of unity")
            })
            .collect();
        GradedMap::new_unchecked(xm.clone(), xm, 0, SparseMatrix::diagonal(entries))
    }
}

impl AntiTwist {
    /// ς_V as a diagonal map.
    pub fn on(&self, v: &GradedSpace) -> GradedMap {
        assert_eq!(self.chi.n, v.n, "anti-twist and space use different grading groups");
        GradedMap::diagonal(v, |d| self.value(d).clone())
    }
}

/// Rigid structure of V: (ev, coev, ev_l, coev_l) with
/// ev: V^⊗V → I, coev: I → V⊗V^, ev_l: V⊗^V → I, coev_l: I → ^V⊗V.
pub fn ev_coev(v: &GradedSpace) -> (GradedMap, GradedMap, GradedMap, GradedMap) {
    let n = v.n;
    let unit = GradedSpace::unit(n);
    let d = v.dim();
    let (rd, ld) = (v.right_dual(), v.left_dual());
    let one = || Cyclotomic::integer(1);
    let pairing = |dual: &GradedSpace, dual_first: bool| {
        let src = if dual_first { dual.tensor(v) } else { v.tensor(dual) }.expect("same group");
        let mut cols = vec![SparseVec::zero(); d * d];
        for k in 0..d {
            let j = if dual_first { v.dual_index(k) * d + k } else { k * d + v.dual_index(k) };
            cols[j] = SparseVec::unit(0, one());
        }
        GradedMap::new_unchecked(src, unit.clone(), 0, SparseMatrix::from_columns(1, cols))
    };
    let copairing = |dual: &GradedSpace, dual_first: bool| {
        let tgt = if dual_first { dual.tensor(v) } else { v.tensor(dual) }.expect("same group");
        let col = SparseVec::from_terms((0..d).map(|k| {
            let i = if dual_first { v.dual_index(k) * d + k } else { k * d + v.dual_index(k) };
            (i, one())
        }));
        GradedMap::new_unchecked(unit.clone(), tgt, 0, SparseMatrix::from_columns(d * d, vec![col]))
    };
    (pairing(&rd, true), copairing(&rd, false), pairing(&ld, false), copairing(&ld, true))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xi(n: u64, k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, k)
    }

    #[test]
    fn tensor_degrees() {
        let v = GradedSpace::atom(5, "V", &[0, 1]);
        let w = GradedSpace::atom(5, "W", &[0, 0, 1]);
        let vw = v.tensor(&w).unwrap();
        assert_eq!(vw.dims(), vec![0, 0, 0, 1, 0]);
        assert_eq!(
            GradedMap::identity(&v).tensor(&GradedMap::identity(&w)).unwrap(),
            GradedMap::identity(&vw)
        );
        assert!(v.tensor(&GradedSpace::atom(3, "U", &[1])).is_err());
        let u = GradedSpace::unit(5);
        assert_eq!(u.tensor(&v).unwrap(), v);
    }

    #[test]
    fn braiding_scalars() {
        let chi = Bicharacter::new(3, 1);
        let v = GradedSpace::atom(3, "V", &[0, 1]);
        let w = GradedSpace::atom(3, "W", &[0, 1]);
        let t = chi.braiding(&v, &w);
        assert_eq!(t.image(0), &SparseVec::unit(0, xi(3, 1)));
        let z = GradedSpace::atom(3, "Z", &[1]);
        let flip = chi.braiding(&v, &z);
        assert!(flip.image(0).get(0).unwrap().is_one());
        let back = chi.braiding_inverse(&v, &w);
        assert_eq!(t.then(&back).unwrap(), GradedMap::identity(&v.tensor(&w).unwrap()));
    }

    #[test]
    fn twist_and_anti_twist() {
        let chi = Bicharacter::new(3, 1);
        let v = GradedSpace::atom(3, "V", &[1, 1, 1]);
        let s0 = AntiTwist::canonical(chi);
        assert_eq!(chi.twist(&v).then(&s0.on(&v)).unwrap(), GradedMap::identity(&v));
        assert_eq!(s0.value(1), &xi(3, -1));
        for mu in 0..3 {
            assert!(AntiTwist::with_mu(chi, mu).value(0).is_one());
        }
        let s1 = AntiTwist::with_mu(Bicharacter::new(2, 1), 1);
        assert!(s1.values().iter().all(|v| v.is_one()));
    }

    #[test]
    fn duals() {
        let v = GradedSpace::atom(3, "V", &[0, 2, 1]);
        assert_eq!(v.right_dual().dims(), vec![0, 1, 2]);
        assert_eq!(v.right_dual().right_dual().dims(), v.dims());
        assert_eq!(v.right_dual().left_dual(), v);
        assert_eq!(v.right_dual().to_string(), "V^");
        assert_eq!(v.tensor(&v.left_dual()).unwrap().right_dual().to_string(), "V * V^");
    }

    #[test]
    fn module_e_scalars() {
        let chi = Bicharacter::new(3, 1);
        let s = AntiTwist::canonical(chi);
        let x0 = GradedSpace::atom(3, "X", &[1]);
        let m = GradedSpace::atom(3, "M", &[1, 1, 1]);
        let e = chi.braided_module_e(&x0, &m, &s);
        assert_eq!(e, GradedMap::identity(&x0.tensor(&m).unwrap()));
        let x1 = GradedSpace::atom(3, "X", &[0, 1]);
        let m1 = GradedSpace::atom(3, "M", &[0, 1]);
        let e = chi.braided_module_e(&x1, &m1, &s);
        assert!(e.image(0).get(0).unwrap().is_one());
    }

    #[test]
    fn homogeneity_is_enforced() {
        let v = GradedSpace::atom(3, "V", &[1, 1]);
        let bad = SparseMatrix::from_columns(2, vec![SparseVec::unit(1, Cyclotomic::integer(1)), SparseVec::zero()]);
        assert!(matches!(
            GradedMap::new(v.clone(), v.clone(), 0, bad.clone()),
            Err(GradedError::NotHomogeneous { .. })
        ));
        assert!(GradedMap::new(v.clone(), v, 1, bad).is_ok());
    }
}
