//! Finite-dimensional Z/N-graded algebras, either presented by ordered
//! generators with straightening rules or given by structure constants.
//!
//! Normal monomials of a presentation are g_1^{e_1}⋯g_k^{e_k} with
//! e_i < bound_i; their index is mixed radix with g_1 most significant.

mod builders;
mod element;
mod module;
mod morphism;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::graded::{GradedError, GradedMap, GradedSpace};
use crate::linalg::{Accumulator, Matrix, SparseMatrix, SparseVec};
use crate::report::Check;
use crate::scalars::{Cyclotomic, Field};

pub use builders::{anyonic_line, d_a_mu, dual_anyonic, nilpotent_line, taft, uqsl2};
pub use element::AlgebraElement;
pub use module::AlgebraModule;
pub use morphism::AlgebraMorphism;

pub type Algebra = Arc<FiniteDimAlgebra>;

/// Default guard on brute-force dimension; `BHL_DIM_GUARD` overrides it.
pub const DEFAULT_DIM_GUARD: usize = 350;

pub fn dim_guard() -> usize {
    std::env::var("BHL_DIM_GUARD").ok().and_then(|v| v.parse().ok()).unwrap_or(DEFAULT_DIM_GUARD)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("negative exponent on non-invertible generator {0}")]
    NotInvertible(String),
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("elements belong to different algebras: {0} vs {1}")]
    AlgebraMismatch(String, String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("dimension {dim} exceeds guard {guard}")]
    DimensionGuard { dim: usize, guard: usize },
    #[error(transparent)]
    Graded(#[from] GradedError),
}

pub fn check_guard(dim: usize) -> Result<(), AlgebraError> {
    let guard = dim_guard();
    if dim > guard {
        return Err(AlgebraError::DimensionGuard { dim, guard });
    }
    Ok(())
}

/// What g^bound rewrites to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerRule {
    Zero,
    One,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: u64,
    pub bound: u32,
    pub rule: PowerRule,
}

/// A defining relation `lhs = rhs`, with `lhs` a word of (generator, exponent)
/// and `rhs` a combination of normal monomials given by exponent vectors.
#[derive(Debug, Clone)]
pub struct Relation {
    pub name: String,
    pub lhs: Vec<(usize, u32)>,
    pub rhs: Vec<(Cyclotomic, Vec<u32>)>,
}

/// Generators plus rules g_b·g_a → Σ c·(normal monomial) for b > a; pairs
/// without a rule commute.
#[derive(Debug, Clone)]
pub struct Presentation {
    name: String,
    n: u64,
    field: Field,
    gens: Vec<Generator>,
    swaps: BTreeMap<(usize, usize), Vec<(Cyclotomic, Vec<u32>)>>,
}

impl Presentation {
    pub fn new(name: &str, n: u64, field: &Field) -> Self {
        Presentation { name: name.to_string(), n, field: field.clone(), gens: Vec::new(), swaps: BTreeMap::new() }
    }

    pub fn generator(&mut self, name: &str, degree: i64, bound: u32, rule: PowerRule) -> usize {
        assert!(bound >= 1);
        self.gens.push(Generator {
            name: name.to_string(),
            degree: degree.rem_euclid(self.n as i64) as u64,
            bound,
            rule,
        });
        self.gens.len() - 1
    }

    /// Exponent vector with the given (generator, exponent) entries.
    pub fn monomial(&self, entries: &[(usize, u32)]) -> Vec<u32> {
        let mut e = vec![0; self.gens.len()];
        for &(g, k) in entries {
            e[g] += k;
        }
        e
    }

    /// g_later · g_earlier → rhs.
    pub fn rule(&mut self, later: usize, earlier: usize, rhs: Vec<(Cyclotomic, Vec<u32>)>) {
        assert!(later > earlier, "rules rewrite out-of-order pairs only");
        self.swaps.insert((later, earlier), rhs);
    }

    fn relations(&self) -> Vec<Relation> {
        let k = self.gens.len();
        let mut out = Vec::new();
        for (a, g) in self.gens.iter().enumerate() {
            let rhs = match g.rule {
                PowerRule::Zero => vec![],
                PowerRule::One => vec![(Cyclotomic::integer(1), vec![0; k])],
            };
            let value = if g.rule == PowerRule::Zero { 0 } else { 1 };
            out.push(Relation { name: format!("{}^{} = {value}", g.name, g.bound), lhs: vec![(a, g.bound)], rhs });
        }
        for b in 0..k {
            for a in 0..b {
                let rhs = self.swap_rhs(b, a);
                let (gb, ga) = (&self.gens[b].name, &self.gens[a].name);
                out.push(Relation { name: format!("{gb}·{ga} straightening"), lhs: vec![(b, 1), (a, 1)], rhs });
            }
        }
        out
    }

    fn swap_rhs(&self, b: usize, a: usize) -> Vec<(Cyclotomic, Vec<u32>)> {
        match self.swaps.get(&(b, a)) {
            Some(r) => r.clone(),
            None => vec![(Cyclotomic::integer(1), self.monomial(&[(a, 1), (b, 1)]))],
        }
    }

    pub fn build(self) -> Algebra {
        Rewriter::new(&self).into_algebra(self)
    }
}

enum Slot {
    Empty,
    Busy,
    Done(SparseVec),
}

struct Rewriter {
    bounds: Vec<u32>,
    strides: Vec<usize>,
    dim: usize,
    rules: Vec<PowerRule>,
    swaps: BTreeMap<(usize, usize), Vec<(Cyclotomic, Vec<u32>)>>,
    cache: Vec<Slot>,
}

impl Rewriter {
    fn new(p: &Presentation) -> Self {
        let bounds: Vec<u32> = p.gens.iter().map(|g| g.bound).collect();
        let mut strides = vec![1usize; bounds.len()];
        for i in (0..bounds.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * bounds[i + 1] as usize;
        }
        let dim = bounds.iter().map(|&b| b as usize).product();
        let k = bounds.len();
        let mut swaps = BTreeMap::new();
        for b in 0..k {
            for a in 0..b {
                swaps.insert((b, a), p.swap_rhs(b, a));
            }
        }
        Rewriter {
            bounds,
            strides,
            dim,
            rules: p.gens.iter().map(|g| g.rule).collect(),
            swaps,
            cache: (0..dim * k).map(|_| Slot::Empty).collect(),
        }
    }

    fn index(&self, e: &[u32]) -> usize {
        e.iter().zip(&self.strides).map(|(&x, &s)| x as usize * s).sum()
    }

    fn exponents(&self, mut idx: usize) -> Vec<u32> {
        self.strides
            .iter()
            .zip(&self.bounds)
            .map(|(&s, &b)| {
                let e = idx / s;
                idx %= s;
                debug_assert!(e < b as usize);
                e as u32
            })
            .collect()
    }

    fn bump(&self, mut e: Vec<u32>, a: usize) -> SparseVec {
        e[a] += 1;
        if e[a] == self.bounds[a] {
            match self.rules[a] {
                PowerRule::Zero => return SparseVec::zero(),
                PowerRule::One => e[a] = 0,
            }
        }
        SparseVec::unit(self.index(&e), Cyclotomic::integer(1))
    }

    /// (basis m) · g_a in normal form.
    fn rmul(&mut self, m: usize, a: usize) -> SparseVec {
        let k = self.bounds.len();
        match &self.cache[m * k + a] {
            Slot::Done(v) => return v.clone(),
            Slot::Busy => panic!("straightening rules do not terminate"),
            Slot::Empty => {}
        }
        self.cache[m * k + a] = Slot::Busy;
        let mut e = self.exponents(m);
        let result = match (0..k).rev().find(|&i| e[i] > 0) {
            Some(b) if b > a => {
                e[b] -= 1;
                let prefix = SparseVec::unit(self.index(&e), Cyclotomic::integer(1));
                let rhs = self.swaps[&(b, a)].clone();
                let mut terms = Vec::new();
                for (c, w) in rhs {
                    let mut v = prefix.clone();
                    for (g, &x) in w.iter().enumerate() {
                        for _ in 0..x {
                            v = self.mul_gen(&v, g);
                        }
                    }
                    terms.extend(v.scale(&c).into_inner());
                }
                SparseVec::from_terms(terms)
            }
            _ => self.bump(e, a),
        };
        self.cache[m * k + a] = Slot::Done(result.clone());
        result
    }

    fn mul_gen(&mut self, v: &SparseVec, a: usize) -> SparseVec {
        let mut acc = Accumulator::new(self.dim);
        for (m, c) in v.iter() {
            let r = self.rmul(*m, a);
            acc.add_scaled(&r, c);
        }
        acc.finish()
    }

    fn into_algebra(mut self, p: Presentation) -> Algebra {
        let k = self.bounds.len();
        let rmul: Vec<Vec<SparseVec>> = (0..self.dim).map(|m| (0..k).map(|a| self.rmul(m, a)).collect()).collect();
        let exps: Vec<Vec<u32>> = (0..self.dim).map(|m| self.exponents(m)).collect();
        let degrees = exps
            .iter()
            .map(|e| e.iter().zip(&p.gens).map(|(&x, g)| x as u64 * g.degree).sum::<u64>() % p.n)
            .collect();
        let labels = exps.iter().map(|e| monomial_label(&p.gens, e)).collect();
        let gen_index = (0..k).map(|a| if p.gens[a].bound > 1 { self.strides[a] } else { 0 }).collect();
        let relations = p.relations();
        Arc::new(FiniteDimAlgebra {
            name: p.name,
            n: p.n,
            field: p.field,
            generators: p.gens,
            gen_index,
            labels,
            degrees,
            exponents: Some(exps),
            relations,
            rmul,
            table: OnceLock::new(),
            space: OnceLock::new(),
        })
    }
}

fn monomial_label(gens: &[Generator], e: &[u32]) -> String {
    let parts: Vec<String> = gens
        .iter()
        .zip(e)
        .filter(|(_, &x)| x > 0)
        .map(|(g, &x)| if x == 1 { g.name.clone() } else { format!("{}^{x}", g.name) })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join(" ")
    }
}

/// A finite-dimensional algebra with a fixed basis (basis 0 is the unit).
pub struct FiniteDimAlgebra {
    name: String,
    n: u64,
    field: Field,
    generators: Vec<Generator>,
    gen_index: Vec<usize>,
    labels: Vec<String>,
    degrees: Vec<u64>,
    exponents: Option<Vec<Vec<u32>>>,
    relations: Vec<Relation>,
    rmul: Vec<Vec<SparseVec>>,
    table: OnceLock<Vec<SparseVec>>,
    space: OnceLock<GradedSpace>,
}

impl fmt::Debug for FiniteDimAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteDimAlgebra({}, dim {})", self.name, self.dim())
    }
}

impl FiniteDimAlgebra {
    /// An algebra from structure constants: `table[i * dim + j] = e_i · e_j`.
    /// Generators are named basis elements.
    #[allow(clippy::too_many_arguments)]
    pub fn from_structure_constants(
        name: &str,
        n: u64,
        field: &Field,
        basis: Vec<(u64, String)>,
        table: Vec<SparseVec>,
        generators: Vec<(Generator, usize)>,
    ) -> Algebra {
        let dim = basis.len();
        assert_eq!(table.len(), dim * dim, "structure constants must be dim × dim");
        let (degrees, labels): (Vec<u64>, Vec<String>) = basis.into_iter().map(|(d, l)| (d % n, l)).unzip();
        let rmul = (0..dim).map(|i| generators.iter().map(|(_, g)| table[i * dim + g].clone()).collect()).collect();
        let (generators, gen_index) = generators.into_iter().unzip();
        let cell = OnceLock::new();
        cell.set(table).expect("fresh cell");
        Arc::new(FiniteDimAlgebra {
            name: name.to_string(),
            n,
            field: field.clone(),
            generators,
            gen_index,
            labels,
            degrees,
            exponents: None,
            relations: Vec::new(),
            rmul,
            table: cell,
            space: OnceLock::new(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn degree(&self, i: usize) -> u64 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator_index(&self, name: &str) -> Result<usize, AlgebraError> {
        self.generators
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| AlgebraError::UnknownGenerator(name.to_string()))
    }

    /// Exponent vector of a basis monomial (presented algebras only).
    pub fn exponents(&self, i: usize) -> Option<&[u32]> {
        self.exponents.as_ref().map(|e| e[i].as_slice())
    }

    /// Basis index of a normal monomial.
    pub fn monomial_index(&self, e: &[u32]) -> Option<usize> {
        self.exponents.as_ref()?.iter().position(|x| x == e)
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn is_presented(&self) -> bool {
        self.exponents.is_some()
    }

    /// The underlying graded space, one atom named after the algebra.
    pub fn space(&self) -> &GradedSpace {
        self.space.get_or_init(|| {
            let basis = self.degrees.iter().zip(&self.labels).map(|(&d, l)| (d, l.clone())).collect();
            GradedSpace::atom_with_basis(self.n, &self.name, basis)
        })
    }

    /// Basis index of generator `a`.
    pub fn gen_basis(&self, a: usize) -> usize {
        self.gen_index[a]
    }

    /// Letters of a basis monomial, in order.
    fn word(&self, i: usize) -> Vec<usize> {
        let e = &self.exponents.as_ref().expect("presented algebra")[i];
        e.iter().enumerate().flat_map(|(g, &x)| std::iter::repeat(g).take(x as usize)).collect()
    }

    /// v · g_a.
    pub(crate) fn mul_gen(&self, v: &SparseVec, a: usize) -> SparseVec {
        let mut acc = Accumulator::new(self.dim());
        for (m, c) in v.iter() {
            acc.add_scaled(&self.rmul[*m][a], c);
        }
        acc.finish()
    }

    fn table(&self) -> &[SparseVec] {
        self.table.get_or_init(|| {
            let dim = self.dim();
            let words: Vec<Vec<usize>> = (0..dim).map(|j| self.word(j)).collect();
            let mut out = Vec::with_capacity(dim * dim);
            for i in 0..dim {
                for w in &words {
                    let mut v = SparseVec::unit(i, Cyclotomic::integer(1));
                    for &a in w {
                        v = self.mul_gen(&v, a);
                    }
                    out.push(v);
                }
            }
            out
        })
    }

    /// e_i · e_j.
    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.table()[i * self.dim() + j]
    }

    pub fn mul_vec(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let t = self.table();
        let dim = self.dim();
        let mut acc = Accumulator::new(dim);
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                acc.add_scaled(&t[i * dim + j], &(x * y));
            }
        }
        acc.finish()
    }

    pub fn left_mult_operator(&self, a: &AlgebraElement) -> SparseMatrix {
        let cols = (0..self.dim()).map(|j| self.mul_vec(a.coeffs(), &SparseVec::unit(j, Cyclotomic::integer(1)))).collect();
        SparseMatrix::from_columns(self.dim(), cols)
    }

    pub fn right_mult_operator(&self, a: &AlgebraElement) -> SparseMatrix {
        let cols = (0..self.dim()).map(|j| self.mul_vec(&SparseVec::unit(j, Cyclotomic::integer(1)), a.coeffs())).collect();
        SparseMatrix::from_columns(self.dim(), cols)
    }

    /// Left multiplication by a homogeneous element, as a map of degree |a|.
    pub fn left_mult_map(&self, a: &AlgebraElement) -> Result<GradedMap, AlgebraError> {
        let shift = a.degree().unwrap_or(0);
        let v = self.space();
        Ok(GradedMap::new(v.clone(), v.clone(), shift as i64, self.left_mult_operator(a))?)
    }
}

/// (e_i e_j) e_k = e_i (e_j e_k) on every basis triple, and unitality of basis 0.
pub fn verify_associativity(alg: &FiniteDimAlgebra) -> Result<Vec<Check>, AlgebraError> {
    check_guard(alg.dim())?;
    let dim = alg.dim();
    let t = alg.table();
    let one = Cyclotomic::integer(1);
    let mut acc = Accumulator::new(dim);
    let mut failure = None;
    'outer: for i in 0..dim {
        for j in 0..dim {
            let ij = &t[i * dim + j];
            for k in 0..dim {
                for (s, c) in ij.iter() {
                    acc.add_scaled(&t[s * dim + k], c);
                }
                let lhs = acc.finish();
                for (s, c) in t[j * dim + k].iter() {
                    acc.add_scaled(&t[i * dim + s], c);
                }
                let rhs = acc.finish();
                if lhs != rhs {
                    failure = Some(format!(
                        "({})({})({}): {} vs {}",
                        alg.label(i),
                        alg.label(j),
                        alg.label(k),
                        lhs,
                        rhs
                    ));
                    break 'outer;
                }
            }
        }
    }
    let assoc = Check::from_witness(
        "associativity",
        format!("{} basis triples of {}", dim * dim * dim, alg.name()),
        failure,
    );
    let unit_fail = (0..dim).find(|&i| {
        let e = SparseVec::unit(i, one.clone());
        t[i] != e || t[i * dim] != e
    });
    let unital = Check::from_witness(
        "unitality",
        format!("1·e = e·1 = e on {dim} basis elements"),
        unit_fail.map(|i| format!("basis element {}", alg.label(i))),
    );
    Ok(vec![assoc, unital])
}

/// φ(e_i e_j) = φ(e_i)φ(e_j) on all basis pairs and φ(1) = 1, for a linear map
/// given by its matrix on the normal bases.
pub fn verify_multiplicative(source: &FiniteDimAlgebra, target: &FiniteDimAlgebra, phi: &SparseMatrix) -> Check {
    let witness = (|| {
        if phi.column(0) != &SparseVec::unit(0, Cyclotomic::integer(1)) {
            return Some("unit is not preserved".to_string());
        }
        for i in 0..source.dim() {
            for j in 0..source.dim() {
                let lhs = phi.apply(source.mul_basis(i, j));
                let rhs = target.mul_vec(phi.column(i), phi.column(j));
                if lhs != rhs {
                    return Some(format!("on {} · {}: {} vs {}", source.label(i), source.label(j), lhs, rhs));
                }
            }
        }
        None
    })();
    Check::from_witness("multiplicative", format!("{} -> {}", source.name(), target.name()), witness)
}

/// Basis of the center, from [a, g] = 0 for every generator g.
pub fn compute_center(alg: &Algebra) -> Result<Vec<AlgebraElement>, AlgebraError> {
    check_guard(alg.dim())?;
    let dim = alg.dim();
    let gens: Vec<usize> = (0..alg.generators().len()).map(|a| alg.gen_basis(a)).collect();
    let mut m = Matrix::zero(alg.field(), dim * gens.len(), dim);
    for (r, &g) in gens.iter().enumerate() {
        for i in 0..dim {
            let c = alg.mul_basis(i, g).sub(alg.mul_basis(g, i));
            for (row, v) in c.iter() {
                m.set(r * dim + row, i, v.clone());
            }
        }
    }
    Ok(m
        .kernel()
        .into_iter()
        .map(|v| AlgebraElement::from_vec(alg, SparseVec::from_terms(v.into_iter().enumerate())))
        .collect())
}

/// dim ker((L_{1−a})^k) for each requested power k.
pub fn kernel_dims(a: &AlgebraElement, powers: &[u32]) -> Result<Vec<usize>, AlgebraError> {
    let alg = a.algebra();
    check_guard(alg.dim())?;
    let op = alg.left_mult_operator(&(&AlgebraElement::one(alg) - a));
    Ok(powers.iter().map(|&k| {
        let m = op.pow(k).to_dense(alg.field());
        alg.dim() - m.rank()
    }).collect())
}
