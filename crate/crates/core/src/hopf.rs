//! Hopf algebras in (Vec_{Z/N}, χ) with structure maps as graded maps, braided
//! tensor products of algebras and modules, and transmutation between Taft
//! modules and Z/p-graded modules over the anyonic line.
//!
//! Tensor squares use the flat index `i * dim + j` for e_i⊗e_j.

use crate::algebra::{
    anyonic_line, check_guard, taft, Algebra, AlgebraElement, AlgebraError, AlgebraModule, FiniteDimAlgebra, Generator,
};
use crate::graded::{Bicharacter, GradedMap, GradedSpace};
use crate::linalg::{Accumulator, Matrix, SparseMatrix, SparseVec};
use crate::report::Check;
use crate::scalars::Cyclotomic;

fn one() -> Cyclotomic {
    Cyclotomic::integer(1)
}

fn unit_vec(i: usize) -> SparseVec {
    SparseVec::unit(i, one())
}

/// (a⊗b)(c⊗d) = χ(|b|, |c|) ac⊗bd in A⊗^τA.
fn braided_mul(alg: &FiniteDimAlgebra, chi: &Bicharacter, u: &SparseVec, v: &SparseVec) -> SparseVec {
    let d = alg.dim();
    let mut acc = Accumulator::new(d * d);
    for (ab, x) in u.iter() {
        let (a, b) = (ab / d, ab % d);
        for (cd, y) in v.iter() {
            let (c, e) = (cd / d, cd % d);
            let s = &(x * y) * &chi.chi(alg.degree(b), alg.degree(c));
            let ac = alg.mul_basis(a, c);
            let be = alg.mul_basis(b, e);
            for (p, cp) in ac.iter() {
                let sp = &s * cp;
                for (q, cq) in be.iter() {
                    acc.add_at(p * d + q, &sp * cq);
                }
            }
        }
    }
    acc.finish()
}

/// u·v in H⊗^τH.
pub fn braided_product(h: &HopfData, u: &SparseVec, v: &SparseVec) -> SparseVec {
    braided_mul(&h.alg, &h.chi, u, v)
}

/// Letters of a normal monomial, in order.
fn letters(alg: &FiniteDimAlgebra, i: usize) -> Vec<usize> {
    let e = alg.exponents(i).expect("presented algebra");
    e.iter().enumerate().flat_map(|(g, &k)| std::iter::repeat_n(g, k as usize)).collect()
}

/// A Hopf algebra in (Vec_{Z/N}, χ) over a presented algebra, with Δ, ε and S
/// fixed on generators and extended as braided (anti)homomorphisms.
pub struct HopfData {
    alg: Algebra,
    chi: Bicharacter,
    mult: GradedMap,
    unit: GradedMap,
    delta: GradedMap,
    counit: GradedMap,
    antipode: GradedMap,
}

impl std::fmt::Debug for HopfData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "HopfData({}, c = {})", self.alg.name(), self.chi.c())
    }
}

impl HopfData {
    /// Δ(g_a) ∈ H⊗H, ε(g_a) and S(g_a) per generator, in generator order.
    pub fn new(
        alg: &Algebra,
        chi: Bicharacter,
        delta_gens: Vec<SparseVec>,
        eps_gens: Vec<Cyclotomic>,
        s_gens: Vec<SparseVec>,
    ) -> Result<HopfData, AlgebraError> {
        if !alg.is_presented() {
            return Err(AlgebraError::Unsupported(format!("{} has no presentation", alg.name())));
        }
        if chi.n() != alg.n() {
            return Err(AlgebraError::Invalid(format!("bicharacter on Z/{} for an algebra graded by Z/{}", chi.n(), alg.n())));
        }
        let k = alg.generators().len();
        if delta_gens.len() != k || eps_gens.len() != k || s_gens.len() != k {
            return Err(AlgebraError::Invalid(format!("expected data for {k} generators")));
        }
        let d = alg.dim();
        let h = alg.space().clone();
        let hh = h.tensor(&h)?;
        let unit_space = GradedSpace::unit(alg.n());

        let mut delta_cols = Vec::with_capacity(d);
        let mut eps_cols = Vec::with_capacity(d);
        let mut s_cols = Vec::with_capacity(d);
        for i in 0..d {
            let mut dv = unit_vec(0);
            let mut ev = one();
            let mut sv = unit_vec(0);
            let mut deg = 0u64;
            for a in letters(alg, i) {
                dv = braided_mul(alg, &chi, &dv, &delta_gens[a]);
                ev = &ev * &eps_gens[a];
                // S(w·a) = χ(|w|, |a|) S(a) S(w)
                let da = alg.generators()[a].degree;
                sv = alg.mul_vec(&s_gens[a], &sv).scale(&chi.chi(deg, da));
                deg = (deg + da) % alg.n();
            }
            delta_cols.push(dv);
            eps_cols.push(if ev.is_zero() { SparseVec::zero() } else { SparseVec::unit(0, ev) });
            s_cols.push(sv);
        }
        let mult_cols = (0..d * d).map(|ij| alg.mul_basis(ij / d, ij % d).clone()).collect();
        Ok(HopfData {
            alg: alg.clone(),
            chi,
            mult: GradedMap::new(hh.clone(), h.clone(), 0, SparseMatrix::from_columns(d, mult_cols))?,
            unit: GradedMap::new(unit_space.clone(), h.clone(), 0, SparseMatrix::from_columns(d, vec![unit_vec(0)]))?,
            delta: GradedMap::new(h.clone(), hh, 0, SparseMatrix::from_columns(d * d, delta_cols))?,
            counit: GradedMap::new(h.clone(), unit_space, 0, SparseMatrix::from_columns(1, eps_cols))?,
            antipode: GradedMap::new(h.clone(), h, 0, SparseMatrix::from_columns(d, s_cols))?,
        })
    }

    /// k[x]/x^p with x primitive of degree 1, braided by χ(i, j) = ζ_p^{cij}.
    /// Only c ≢ 0 gives a bialgebra.
    pub fn anyonic_line(p: u64, c: i64) -> Result<HopfData, AlgebraError> {
        let alg = anyonic_line(p)?;
        let x = alg.gen_basis(0);
        let d = alg.dim();
        let delta = SparseVec::from_terms([(x * d, one()), (x, one())]);
        let s = SparseVec::unit(x, Cyclotomic::integer(-1));
        HopfData::new(&alg, Bicharacter::new(p, c), vec![delta], vec![Cyclotomic::integer(0)], vec![s])
    }

    /// T_p(ξ) in Vec: Δg = g⊗g, Δx = x⊗1 + g⊗x, ε(g) = 1, ε(x) = 0,
    /// S(g) = g^{-1}, S(x) = −g^{-1}x.
    pub fn taft(p: u64) -> Result<HopfData, AlgebraError> {
        let alg = taft(p)?;
        let d = alg.dim();
        let (g, x) = (alg.gen_basis(0), alg.gen_basis(1));
        let pm1 = (p - 1) as u32;
        let ginv = alg.monomial_index(&[pm1, 0]).expect("normal monomial");
        let ginv_x = alg.monomial_index(&[pm1, 1]).expect("normal monomial");
        let delta = vec![SparseVec::unit(g * d + g, one()), SparseVec::from_terms([(x * d, one()), (g * d + x, one())])];
        let eps = vec![one(), Cyclotomic::integer(0)];
        let s = vec![SparseVec::unit(ginv, one()), SparseVec::unit(ginv_x, Cyclotomic::integer(-1))];
        HopfData::new(&alg, Bicharacter::trivial(1), delta, eps, s)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn bicharacter(&self) -> Bicharacter {
        self.chi
    }

    pub fn space(&self) -> &GradedSpace {
        self.alg.space()
    }

    /// m: H⊗H → H.
    pub fn mult(&self) -> &GradedMap {
        &self.mult
    }

    /// u: I → H.
    pub fn unit(&self) -> &GradedMap {
        &self.unit
    }

    /// Δ: H → H⊗H.
    pub fn delta(&self) -> &GradedMap {
        &self.delta
    }

    /// ε: H → I.
    pub fn counit(&self) -> &GradedMap {
        &self.counit
    }

    /// S: H → H.
    pub fn antipode(&self) -> &GradedMap {
        &self.antipode
    }

    pub fn s_squared(&self) -> GradedMap {
        self.antipode.compose(&self.antipode).expect("endomorphism")
    }

    /// v^n in H⊗^τH.
    pub fn braided_power(&self, v: &SparseVec, n: u32) -> SparseVec {
        let mut acc = unit_vec(0);
        for _ in 0..n {
            acc = braided_mul(&self.alg, &self.chi, &acc, v);
        }
        acc
    }

    /// Δ(a) as a vector on H⊗H.
    pub fn coproduct(&self, a: &AlgebraElement) -> SparseVec {
        self.delta.apply(a.coeffs())
    }

    /// The map H⊗H → H⊗H, a⊗b ↦ Δ(a)Δ(b) computed as (m⊗m)(id⊗τ_{H,H}⊗id)(Δ⊗Δ).
    fn delta_product_map(&self) -> GradedMap {
        let d = self.alg.dim();
        let hh = self.delta.target().clone();
        let deg = |i: usize| self.alg.degree(i);
        let col = |ij: usize| {
            let (da, db) = (self.delta.image(ij / d), self.delta.image(ij % d));
            let mut acc = Accumulator::new(d * d);
            for (pq, x) in da.iter() {
                let (p, q) = (pq / d, pq % d);
                for (rs, y) in db.iter() {
                    let (r, s) = (rs / d, rs % d);
                    // e_p⊗e_q⊗e_r⊗e_s ↦ χ(|q|,|r|) e_p⊗e_r⊗e_q⊗e_s ↦ χ(|q|,|r|) e_pe_r⊗e_qe_s
                    let c = &(x * y) * &self.chi.chi(deg(q), deg(r));
                    let pr = self.alg.mul_basis(p, r);
                    let qs = self.alg.mul_basis(q, s);
                    for (u, cu) in pr.iter() {
                        let cu = &c * cu;
                        for (v, cv) in qs.iter() {
                            acc.add_at(u * d + v, &cu * cv);
                        }
                    }
                }
            }
            acc.finish()
        };
        GradedMap::from_fn(&hh, &hh, 0, col).expect("homogeneous")
    }
}

fn compare(name: &str, details: &str, lhs: Result<GradedMap, AlgebraError>, rhs: Result<GradedMap, AlgebraError>) -> Check {
    match (lhs, rhs) {
        (Ok(l), Ok(r)) if l.source() == r.source() && l.target() == r.target() => {
            Check::from_witness(name, details, l.difference(&r).map(|w| w.to_string()))
        }
        (Ok(l), Ok(r)) => Check::fail(
            name,
            details,
            vec![format!("{} -> {} vs {} -> {}", l.source(), l.target(), r.source(), r.target())],
        ),
        (Err(e), _) | (_, Err(e)) => Check::fail(name, details, vec![e.to_string()]),
    }
}

/// Δm = (m⊗m)(id⊗τ⊗id)(Δ⊗Δ), Δu = u⊗u, εm = ε⊗ε and εu = id, plus
/// coassociativity and counitality.
pub fn verify_bialgebra(h: &HopfData) -> Result<Vec<Check>, AlgebraError> {
    check_guard(h.alg.dim())?;
    let (m, u, delta, eps) = (&h.mult, &h.unit, &h.delta, &h.counit);
    let id = GradedMap::identity(h.space());
    let mut out = vec![
        compare("Δ∘m", "Δ(ab) = Δ(a)Δ(b) in H⊗^τH", Ok(delta.compose(m)?), Ok(h.delta_product_map())),
        compare("Δ∘u", "Δ(1) = 1⊗1", Ok(delta.compose(u)?), Ok(u.tensor(u)?)),
        compare("ε∘m", "ε(ab) = ε(a)ε(b)", Ok(eps.compose(m)?), Ok(eps.tensor(eps)?)),
        compare("ε∘u", "ε(1) = 1", Ok(eps.compose(u)?), Ok(GradedMap::identity(u.source()))),
    ];
    out.push(compare(
        "coassociativity",
        "(Δ⊗id)Δ = (id⊗Δ)Δ",
        delta.tensor(&id).and_then(|l| l.compose(delta)).map_err(Into::into),
        id.tensor(delta).and_then(|r| r.compose(delta)).map_err(Into::into),
    ));
    out.push(compare("counit left", "(ε⊗id)Δ = id", Ok(eps.tensor(&id)?.compose(delta)?), Ok(id.clone())));
    out.push(compare("counit right", "(id⊗ε)Δ = id", Ok(id.tensor(eps)?.compose(delta)?), Ok(id)));
    Ok(out)
}

/// m(S⊗id)Δ = uε = m(id⊗S)Δ, Sm = m(S⊗S)τ and ΔS = (S⊗S)τΔ.
pub fn verify_antipode(h: &HopfData) -> Result<Vec<Check>, AlgebraError> {
    check_guard(h.alg.dim())?;
    let (m, u, delta, eps, s) = (&h.mult, &h.unit, &h.delta, &h.counit, &h.antipode);
    let v = h.space();
    let id = GradedMap::identity(v);
    let tau = h.chi.braiding(v, v);
    let ue = u.compose(eps)?;
    let ss = s.tensor(s)?;
    Ok(vec![
        compare("m(S⊗id)Δ = uε", "left antipode", Ok(m.compose(&s.tensor(&id)?)?.compose(delta)?), Ok(ue.clone())),
        compare("m(id⊗S)Δ = uε", "right antipode", Ok(m.compose(&id.tensor(s)?)?.compose(delta)?), Ok(ue)),
        compare("S∘m = m(S⊗S)τ", "braided anti-multiplicativity", Ok(s.compose(m)?), Ok(m.compose(&ss)?.compose(&tau)?)),
        compare("Δ∘S = (S⊗S)τΔ", "braided anti-comultiplicativity", Ok(delta.compose(s)?), Ok(ss.compose(&tau)?.compose(delta)?)),
    ])
}

/// Gaussian binomial [n, k]_q by the recurrence [n, k] = [n−1, k−1] + q^k [n−1, k].
pub fn gaussian_binomial(n: u32, k: u32, q: &Cyclotomic) -> Cyclotomic {
    if k > n {
        return Cyclotomic::integer(0);
    }
    let mut row = vec![one()];
    for m in 1..=n as usize {
        let mut next = vec![one(); m + 1];
        let mut qk = q.clone();
        for j in 1..m {
            next[j] = &row[j - 1] + &(&qk * &row[j]);
            qk = &qk * q;
        }
        row = next;
    }
    row[k as usize].clone()
}

/// Σ_i [n, i]_q x^i⊗x^{n−i} with q = χ(1, 1), truncated at x^p = 0.
pub fn anyonic_coproduct_formula(h: &HopfData, n: u32) -> SparseVec {
    let d = h.alg.dim() as u32;
    let q = h.chi.chi(1, 1);
    SparseVec::from_terms((0..=n).filter(|&i| i < d && n - i < d).map(|i| {
        let idx = (i * d + (n - i)) as usize;
        (idx, gaussian_binomial(n, i, &q))
    }))
}

/// Which braiding enters the product of a braided tensor product of algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Crossing {
    /// (a⊗b)(a'⊗b') = χ(|b|, |a'|) aa'⊗bb'.
    Tau,
    /// (a⊗b)(a'⊗b') = χ(|a'|, |b|)^{-1} aa'⊗bb'.
    TauInverse,
}

/// A⊗B with the product (m_A⊗m_B)(id⊗c⊗id), c = τ_{B,A} or τ_{A,B}^{-1}.
pub fn braided_tensor_algebra(a: &Algebra, b: &Algebra, chi: Bicharacter, crossing: Crossing) -> Result<Algebra, AlgebraError> {
    if a.n() != b.n() || chi.n() != a.n() {
        return Err(AlgebraError::Invalid("algebras and bicharacter use different grading groups".into()));
    }
    let (da, db) = (a.dim(), b.dim());
    check_guard(da * db)?;
    let field = if a.field().order() >= b.field().order() { a.field() } else { b.field() };
    let basis = (0..da * db)
        .map(|ij| {
            let (i, j) = (ij / db, ij % db);
            ((a.degree(i) + b.degree(j)) % a.n(), format!("{}⊗{}", a.label(i), b.label(j)))
        })
        .collect();
    let mut table = Vec::with_capacity(da * db * da * db);
    for ij in 0..da * db {
        let (i, j) = (ij / db, ij % db);
        for kl in 0..da * db {
            let (k, l) = (kl / db, kl % db);
            let s = match crossing {
                Crossing::Tau => chi.chi(b.degree(j), a.degree(k)),
                Crossing::TauInverse => chi.chi(a.degree(k), b.degree(j)).inverse().expect("root of unity"),
            };
            let mut acc = Accumulator::new(da * db);
            for (p, cp) in a.mul_basis(i, k).iter() {
                let sp = &s * cp;
                for (q, cq) in b.mul_basis(j, l).iter() {
                    acc.add_at(p * db + q, &sp * cq);
                }
            }
            table.push(acc.finish());
        }
    }
    let mut gens: Vec<(Generator, usize)> = Vec::new();
    for (g, gen) in a.generators().iter().enumerate() {
        gens.push((Generator { name: format!("{}⊗1", gen.name), ..gen.clone() }, a.gen_basis(g) * db));
    }
    for (g, gen) in b.generators().iter().enumerate() {
        gens.push((Generator { name: format!("1⊗{}", gen.name), ..gen.clone() }, b.gen_basis(g)));
    }
    let tag = match crossing {
        Crossing::Tau => "τ",
        Crossing::TauInverse => "τ^-1",
    };
    let name = format!("{}⊗^{tag}{}", a.name(), b.name());
    Ok(FiniteDimAlgebra::from_structure_constants(&name, a.n(), field, basis, table, gens))
}

/// Modules over a Hopf algebra are modules over its underlying algebra.
pub type HopfModule = AlgebraModule;

/// The unit object with H acting through ε.
pub fn trivial_module(h: &HopfData) -> HopfModule {
    let unit = GradedSpace::unit(h.alg.n());
    let actions = (0..h.alg.generators().len())
        .map(|a| {
            let e = h.counit.image(h.alg.gen_basis(a)).get(0).cloned().unwrap_or_else(|| Cyclotomic::integer(0));
            let col = if e.is_zero() { SparseVec::zero() } else { SparseVec::unit(0, e) };
            SparseMatrix::from_columns(1, vec![col])
        })
        .collect();
    AlgebraModule::new(&h.alg, unit, actions).expect("ε is homogeneous")
}

/// V ⊛ W: h·(v⊗w) = Σ χ(|h₂|, |v|) h₁v⊗h₂w over the terms h₁⊗h₂ of Δ(h).
pub fn module_tensor(h: &HopfData, v: &HopfModule, w: &HopfModule) -> Result<HopfModule, AlgebraError> {
    let space = v.space().tensor(w.space())?;
    let d = h.alg.dim();
    let vdeg = v.space().degrees();
    let dw = w.space().dim();
    let mut actions = Vec::with_capacity(h.alg.generators().len());
    for a in 0..h.alg.generators().len() {
        let mut total = SparseMatrix::zero(space.dim(), space.dim());
        for (ij, c) in h.delta.image(h.alg.gen_basis(a)).iter() {
            let (i, j) = (ij / d, ij % d);
            let dj = h.alg.degree(j);
            let signs = SparseMatrix::diagonal((0..space.dim()).map(|k| h.chi.chi(dj, vdeg[k / dw])).collect());
            let term = v.basis_action(&h.alg, i).kron(&w.basis_action(&h.alg, j)).compose(&signs);
            total = total.add(&term.scale(c));
        }
        actions.push(total);
    }
    AlgebraModule::new(&h.alg, space, actions)
}

/// Taft module → module over the anyonic line: V_i = ker(g − ξ^i) in degree i,
/// with x acting unchanged. Also returns the change of basis, whose columns
/// are the eigenvectors in the new basis order.
pub fn transmute(taft: &HopfData, anyonic: &HopfData, m: &HopfModule) -> Result<(HopfModule, Matrix), AlgebraError> {
    let p = anyonic.alg.n();
    let f = anyonic.alg.field().clone();
    let dim = m.space().dim();
    let g = m.action(&taft.alg, "g")?.matrix().to_dense(&f);
    let x = m.action(&taft.alg, "x")?.matrix().to_dense(&f);
    let mut vectors: Vec<Vec<Cyclotomic>> = Vec::with_capacity(dim);
    let mut basis = Vec::with_capacity(dim);
    for i in 0..p {
        let shifted = g.sub(&Matrix::identity(&f, dim).scaled(&Cyclotomic::root_of_unity(p, i as i64)));
        for (k, v) in shifted.kernel().into_iter().enumerate() {
            basis.push((i, format!("v{i}.{k}")));
            vectors.push(v);
        }
    }
    if vectors.len() != dim {
        return Err(AlgebraError::Invalid(format!("g has eigenspaces of total dimension {} on a {dim}-dimensional module", vectors.len())));
    }
    let t = Matrix::from_rows(&f, (0..dim).map(|r| vectors.iter().map(|v| v[r].clone()).collect()).collect());
    let tinv = t.inverse().ok_or_else(|| AlgebraError::Invalid("eigenvectors are dependent".into()))?;
    let x_new = SparseMatrix::from_dense(&tinv.mul(&x).mul(&t));
    let space = GradedSpace::atom_with_basis(p, &format!("T({})", m.space()), basis);
    let out = AlgebraModule::new(&anyonic.alg, space, vec![x_new])?;
    Ok((out, t))
}

/// Module over the anyonic line → Taft module: g acts by ξ^i on degree i.
pub fn untransmute(taft: &HopfData, anyonic: &HopfData, m: &HopfModule) -> Result<HopfModule, AlgebraError> {
    let p = anyonic.alg.n();
    let space = GradedSpace::atom(1, &format!("U({})", m.space()), &[m.space().dim()]);
    let g = SparseMatrix::diagonal(m.space().degrees().iter().map(|&d| Cyclotomic::root_of_unity(p, d as i64)).collect());
    let x = m.action(&anyonic.alg, "x")?.matrix().clone();
    let (gi, xi) = (taft.alg.generator_index("g")?, taft.alg.generator_index("x")?);
    let mut actions = vec![SparseMatrix::zero(0, 0); 2];
    actions[gi] = g;
    actions[xi] = x;
    AlgebraModule::new(&taft.alg, space, actions)
}
