//! The verification routines behind each subcommand.

use bhl_core::algebra::{
    compute_center, d_a_mu, dual_anyonic, nilpotent_line, uqsl2, verify_associativity, AlgebraElement, AlgebraError,
    AlgebraMorphism,
};
use bhl_core::ayd::{
    ribbon_element, ribbon_prefactor, stable_analysis, stable_checks, sweedler_checks, verify_ayd, verify_ribbon_identity,
    AydModule, RegularAyd,
};
use bhl_core::decompose::{decompose_vec_g, rep_g_checks, CayleyGroup};
use bhl_core::dsl::{check_script, Environment};
use bhl_core::graded::Bicharacter;
use bhl_core::hopf::{
    anyonic_coproduct_formula, braided_product, verify_antipode, verify_bialgebra, HopfData,
};
use bhl_core::linalg::SparseVec;
use bhl_core::report::Check;
use bhl_core::scalars::{balanced_q_factorial, is_prime, q_factorial, Cyclotomic};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

/// Checks plus the computed values they are about.
#[derive(Debug, Default)]
pub struct Outcome {
    pub checks: Vec<Check>,
    pub data: Option<Value>,
}

impl Outcome {
    fn checks(checks: Vec<Check>) -> Outcome {
        Outcome { checks, data: None }
    }
}

/// A usage-level problem: bad parameters or unreadable input.
pub type CmdResult = Result<Outcome, String>;

fn xi(p: u64, k: i64) -> Cyclotomic {
    Cyclotomic::root_of_unity(p, k)
}

fn q_pow(p: u64, k: i64) -> Cyclotomic {
    xi(p, ((p as i64 - 1) / 2) * k)
}

fn prefixed(prefix: &str, checks: Vec<Check>) -> Vec<Check> {
    if prefix.is_empty() {
        return checks;
    }
    checks.into_iter().map(|c| c.prefixed(prefix)).collect()
}

/// Check-name prefix for one μ, used only when a command runs over all μ.
fn mu_tag(mu: Option<i64>, m: i64) -> String {
    if mu.is_some() {
        String::new()
    } else {
        format!("μ={m}")
    }
}

/// Turns an exceeded dimension guard into a SKIP and any other error into a
/// usage error.
fn guarded(name: &str, r: Result<Vec<Check>, AlgebraError>) -> Result<Vec<Check>, String> {
    match r {
        Ok(c) => Ok(c),
        Err(e @ AlgebraError::DimensionGuard { .. }) => Ok(vec![Check::skip(name, e.to_string())]),
        Err(e) => Err(e.to_string()),
    }
}

fn require_prime(p: u64) -> Result<(), String> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(format!("--p must be prime, got {p}"))
    }
}

fn require_odd_prime(p: u64) -> Result<(), String> {
    require_prime(p)?;
    if p == 2 {
        return Err("--p must be an odd prime for this check".into());
    }
    Ok(())
}

/// The μ values to run: the given one reduced mod p, or all of them.
pub fn mus(p: u64, mu: Option<i64>) -> Vec<i64> {
    match mu {
        Some(m) => vec![m.rem_euclid(p as i64)],
        None => (0..p as i64).collect(),
    }
}

fn random_element(rng: &mut ChaCha8Rng, dim: usize) -> SparseVec {
    SparseVec::from_terms((0..dim).map(|i| (i, Cyclotomic::integer(rng.gen_range(-3..=3)))))
}

fn hopf_checks(h: &HopfData) -> Result<Vec<Check>, AlgebraError> {
    let mut out = verify_bialgebra(h)?;
    out.extend(verify_antipode(h)?);
    Ok(out)
}

/// Δ(ab) = Δ(a)Δ(b) in H⊗^τH on seeded random elements.
fn random_multiplicativity(h: &HopfData, seed: u64, samples: usize) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alg = h.algebra();
    for s in 0..samples {
        let a = random_element(&mut rng, alg.dim());
        let b = random_element(&mut rng, alg.dim());
        let ab = AlgebraElement::from_vec(alg, alg.mul_vec(&a, &b));
        let lhs = h.coproduct(&ab);
        let rhs = braided_product(h, &h.coproduct(&AlgebraElement::from_vec(alg, a.clone())), &h.coproduct(&AlgebraElement::from_vec(alg, b.clone())));
        if lhs != rhs {
            return Check::fail(
                "random multiplicativity",
                format!("seed {seed}"),
                vec![format!("sample {s}: a = {}, b = {}", AlgebraElement::from_vec(alg, a), AlgebraElement::from_vec(alg, b))],
            );
        }
    }
    Check::pass("random multiplicativity", format!("{samples} samples, seed {seed}"))
}

/// Hopf axioms for the anyonic line at character ζ^c and for the Taft algebra.
pub fn hopf_axioms(p: u64, c: i64, seed: u64) -> CmdResult {
    require_prime(p)?;
    let mut out = Vec::new();

    let h = HopfData::anyonic_line(p, c).map_err(|e| e.to_string())?;
    out.extend(prefixed("anyonic_line", guarded("axioms", hopf_checks(&h))?));
    let s2 = h.s_squared();
    let bad = (0..p).find_map(|n| {
        let e = SparseVec::unit(n as usize, xi(p, c * (n * n.saturating_sub(1)) as i64));
        (s2.image(n as usize) != &e).then(|| format!("n = {n}: {:?}", s2.image(n as usize)))
    });
    out.push(Check::from_witness("anyonic_line.S²(x^n) = ζ^{cn(n−1)} x^n", format!("c = {c}"), bad));
    let dx = h.coproduct(&AlgebraElement::generator(h.algebra(), "x").map_err(|e| e.to_string())?);
    for n in 0..p as u32 {
        let expected = anyonic_coproduct_formula(&h, n);
        let power = h.braided_power(&dx, n);
        let witness = if power != expected {
            Some(format!("Δ(x)^{n} = {power:?}"))
        } else if h.delta().image(n as usize) != &expected {
            Some(format!("Δ(x^{n}) = {:?}", h.delta().image(n as usize)))
        } else {
            None
        };
        out.push(Check::from_witness(format!("anyonic_line.coproduct_power n={n}"), "Δ(x^n) = Δ(x)^n = Σ binomial terms", witness));
    }
    out.push(random_multiplicativity(&h, seed, 8).prefixed("anyonic_line"));

    let t = HopfData::taft(p).map_err(|e| e.to_string())?;
    out.extend(prefixed("taft", guarded("axioms", hopf_checks(&t))?));
    let (g, x) = (t.algebra().gen_basis(0), t.algebra().gen_basis(1));
    let s2 = t.s_squared();
    let bad = if s2.image(x) != &SparseVec::unit(x, xi(p, -1)) {
        Some(format!("S²(x) = {:?}", s2.image(x)))
    } else if s2.image(g) != &SparseVec::unit(g, Cyclotomic::integer(1)) {
        Some(format!("S²(g) = {:?}", s2.image(g)))
    } else {
        None
    };
    out.push(Check::from_witness("taft.S²(x) = ξ^{−1}x", "S²(g) = g", bad));
    out.push(random_multiplicativity(&t, seed, 8).prefixed("taft"));
    Ok(Outcome::checks(out))
}

/// The dual anyonic line and its identification with k[z]/(z^p).
pub fn dual_algebra(p: u64) -> CmdResult {
    require_prime(p)?;
    let a = dual_anyonic(p).map_err(|e| e.to_string())?;
    let mut out = prefixed("dual_anyonic", guarded("associativity", verify_associativity(&a))?);
    let src = nilpotent_line("k[z]/z^p", "z", p, -1).map_err(|e| e.to_string())?;
    let e = AlgebraElement::generator(&a, "e").map_err(|e| e.to_string())?;
    let phi = AlgebraMorphism::new(&src, &a, &[("z", e)]).map_err(|e| e.to_string())?;
    out.extend(prefixed("isomorphism", phi.verify()));
    let bad = (0..p).find_map(|i| {
        let c = &xi(p, -(((i as i64 - 1) * i as i64) / 2)) * &q_factorial(i, &xi(p, 1));
        let expected = AlgebraElement::basis(&a, i as usize).scale(&c);
        let got = phi.on_basis(i as usize);
        (got != expected).then(|| format!("z^{i} ↦ {got}, expected {expected}"))
    });
    out.push(Check::from_witness("isomorphism.z^i ↦ ξ^{−(i−1)i/2}(i)_ξ! ^ie", format!("p = {p}"), bad));
    Ok(Outcome::checks(out))
}

/// (n)_ξ! = q^{−n(n−1)/2}[n]_q! for n < p, with q = ξ^{(p−1)/2}.
pub fn q_combinatorics(p: u64) -> CmdResult {
    require_odd_prime(p)?;
    let q = q_pow(p, 1);
    let mut bad = None;
    for n in 0..p {
        let lhs = q_factorial(n, &xi(p, 1));
        let bal = balanced_q_factorial(n, &q).map_err(|e| e.to_string())?;
        let rhs = &q_pow(p, -((n * n.saturating_sub(1)) as i64 / 2)) * &bal;
        if lhs != rhs {
            bad = Some(format!("n = {n}: {lhs} vs {rhs}"));
            break;
        }
    }
    Ok(Outcome::checks(vec![Check::from_witness("(n)_ξ! = q^{−n(n−1)/2}[n]_q!", format!("p = {p}, n < {p}"), bad)]))
}

fn uqsl2_iso_one(p: u64, mu: i64) -> Result<Vec<Check>, AlgebraError> {
    let d = d_a_mu(p, mu)?;
    let u = uqsl2(p)?;
    let w = |alg, letters: &[(&str, i64)]| AlgebraElement::word(alg, letters);
    let images = [
        ("x", w(&u, &[("E", 1)])?.scale(&q_pow(p, mu - 1))),
        ("z", w(&u, &[("F", 1), ("K", 1)])?.scale(&q_pow(p, 1 - mu))),
        ("g", w(&u, &[("K", -1)])?.scale(&q_pow(p, mu - 1))),
    ];
    let phi = AlgebraMorphism::new(&d, &u, &images)?;
    let back = [
        ("E", w(&d, &[("x", 1)])?.scale(&q_pow(p, 1 - mu))),
        ("F", w(&d, &[("z", 1), ("g", 1)])?),
        ("K", w(&d, &[("g", -1)])?.scale(&q_pow(p, mu - 1))),
    ];
    let psi = AlgebraMorphism::new(&u, &d, &back)?;
    let mut out = prefixed("D→u", phi.verify());
    out.extend(prefixed("u→D", psi.check_relations()));
    let round = (0..d.dim()).find_map(|i| {
        let b = AlgebraElement::basis(&d, i);
        let r = psi.apply(&phi.apply(&b));
        (r != b).then(|| format!("{b} ↦ {r}"))
    });
    out.push(Check::from_witness("round trip", "ψ∘φ = id on the basis of D^a_μ", round));
    Ok(out)
}

/// D^a_μ ≅ u_q(sl2) via x ↦ q^{μ−1}E, z ↦ q^{1−μ}FK, g ↦ q^{μ−1}K^{−1}.
pub fn uqsl2_iso(p: u64, mu: Option<i64>) -> CmdResult {
    require_odd_prime(p)?;
    let mut out = Vec::new();
    for m in mus(p, mu) {
        let name = mu_tag(mu, m);
        out.extend(prefixed(&name, guarded("isomorphism", uqsl2_iso_one(p, m))?));
    }
    Ok(Outcome::checks(out))
}

/// ς^H_μ = q^{m(μ²−1)} v_0; the prefactor only depends on μ² mod p.
pub fn ribbon(p: u64, mu: Option<i64>) -> CmdResult {
    require_odd_prime(p)?;
    let mut out = Vec::new();
    for m in mus(p, mu) {
        let name = mu_tag(mu, m);
        out.extend(prefixed(&name, guarded("ribbon_identity", verify_ribbon_identity(p, m))?));
        let pre = ribbon_prefactor(p, m);
        let bad = (0..p as i64)
            .filter(|nu| (nu * nu - m * m).rem_euclid(p as i64) == 0)
            .find_map(|nu| (ribbon_prefactor(p, nu) != pre).then(|| format!("μ' = {nu}: {}", ribbon_prefactor(p, nu))));
        out.extend(prefixed(&name, vec![Check::from_witness("prefactor depends on μ² only", format!("q^{{m(μ²−1)}} = {pre}"), bad)]));
    }
    Ok(Outcome::checks(out))
}

fn center_checks(p: u64) -> Result<(Vec<Check>, usize), AlgebraError> {
    let r = ribbon_element(p)?;
    let bad = ["E", "F", "K"].iter().find_map(|g| {
        let x = AlgebraElement::generator(&r.algebra, g).expect("generator");
        let c = r.v_0.commutator(&x);
        (!c.is_zero()).then(|| format!("[v_0, {g}] = {c}"))
    });
    let mut out = vec![Check::from_witness("v_0 central", "[v_0, E] = [v_0, F] = [v_0, K] = 0", bad)];
    let z = compute_center(&r.algebra)?;
    let expected = 1 + 3 * (p as usize - 1) / 2;
    out.push(Check::from_witness(
        "center dimension",
        format!("dim Z(u_q(sl2)) = {}, expected 1 + 3(p−1)/2 = {expected}", z.len()),
        (z.len() != expected).then(|| format!("found {}", z.len())),
    ));
    Ok((out, z.len()))
}

/// Centrality of v_0 and dim Z(u_q(sl2)).
pub fn center(p: u64) -> CmdResult {
    require_odd_prime(p)?;
    match center_checks(p) {
        Ok((checks, dim)) => Ok(Outcome { checks, data: Some(serde_json::json!({ "p": p, "center_dim": dim })) }),
        Err(e) => Ok(Outcome::checks(guarded("center", Err(e))?)),
    }
}

fn commutes(m: &AydModule) -> Check {
    let s = m.varsigma_h();
    let bad = [("x", m.x()), ("z", m.z())].into_iter().find_map(|(name, op)| {
        let l = s.compose(op).expect("endomorphisms");
        let r = op.compose(&s).expect("endomorphisms");
        l.difference(&r).map(|w| format!("ς^H{name} vs {name}ς^H: {w}"))
    });
    Check::from_witness("ς^H is a module map", "ς^H x = x ς^H and ς^H z = z ς^H", bad)
}

fn ayd_module_checks(m: &AydModule) -> Result<Vec<Check>, AlgebraError> {
    let mut out = verify_ayd(m);
    out.push(commutes(m));
    if m.p() > 2 {
        let u = uqsl2(m.p())?;
        out.extend(prefixed("u_q(sl2) module", m.to_uqsl2(&u)?.verify(&u)));
    }
    Ok(out)
}

/// AYD checks on a module file, or on the regular representation for each μ.
pub fn ayd(p: u64, mu: Option<i64>, module: Option<&Value>) -> CmdResult {
    if let Some(v) = module {
        let m = AydModule::from_json(v).map_err(|e| e.to_string())?;
        return Ok(Outcome::checks(prefixed("module", guarded("checks", ayd_module_checks(&m))?)));
    }
    require_prime(p)?;
    let mut out = Vec::new();
    for m in mus(p, mu) {
        let name = mu_tag(mu, m);
        let checks = RegularAyd::new(p, m).and_then(|r| ayd_module_checks(&r.module));
        out.extend(prefixed(&name, guarded("regular", checks)?));
        if p == 2 {
            let sweedler = prefixed("sweedler", guarded("regular", sweedler_checks(m))?);
            out.extend(prefixed(&name, sweedler));
        }
    }
    Ok(Outcome::checks(out))
}

/// Kernel dimensions of (1 − ς^H)^k on the regular representation.
pub fn stable_dim(p: u64, mu: Option<i64>) -> CmdResult {
    require_prime(p)?;
    let mut out = Vec::new();
    let mut data = Vec::new();
    for m in mus(p, mu) {
        let name = mu_tag(mu, m);
        match stable_analysis(p, m) {
            Ok(s) => {
                out.extend(prefixed(&name, stable_checks(&s)));
                data.push(s.to_json());
            }
            Err(e) => out.extend(prefixed(&name, guarded("stable", Err(e))?)),
        }
    }
    Ok(Outcome { checks: out, data: Some(Value::Array(data)) })
}

/// Decomposition of Vec_{Z/N} under the bicharacter ζ^{c·ij}.
pub fn decompose_vec(n: u64, c: i64) -> CmdResult {
    if n == 0 {
        return Err("--n must be positive".into());
    }
    let (checks, data) = decompose_vec_g(Bicharacter::new(n, c));
    Ok(Outcome { checks, data: Some(data) })
}

/// Conjugacy classes of a finite group given by its Cayley table.
pub fn decompose_rep(table: &Value) -> CmdResult {
    let g = CayleyGroup::from_json(table)?;
    let (checks, data) = rep_g_checks(&g);
    Ok(Outcome { checks, data: Some(data) })
}

/// Checks a diagram script. Parse and type errors are a single FAIL.
pub fn dsl_check(text: &str, n: u64, c: i64, mu: i64) -> CmdResult {
    if n == 0 {
        return Err("--n must be positive".into());
    }
    let checks = match check_script(text, Environment::new(n, c, mu)) {
        Ok(c) => c,
        Err(e) => vec![Check::fail("script", "parse or type error", vec![e.to_string()])],
    };
    Ok(Outcome::checks(checks))
}

/// The JSON summary line for `decompose vec-g` in text mode.
pub fn vec_g_table(data: &Value) -> String {
    let mut s = String::new();
    if let (Some(i), Some(m)) = (data["I"].as_array(), data["multiplicities"].as_array()) {
        s.push_str("  θ-packets:\n");
        for (v, k) in i.iter().zip(m) {
            s.push_str(&format!("    {}  n = {}\n", v.as_str().unwrap_or_default(), k));
        }
    }
    if let Some(cls) = data["stable_classes"].as_array() {
        s.push_str(&format!("  stable classes: {}\n", Value::Array(cls.clone())));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn all_pass(o: &Outcome) -> bool {
        o.checks.iter().all(|c| c.passed())
    }

    #[test]
    fn small_primes() {
        assert!(all_pass(&hopf_axioms(3, 1, 0).unwrap()));
        assert!(all_pass(&hopf_axioms(5, 2, 7).unwrap()));
        assert!(all_pass(&dual_algebra(3).unwrap()));
        assert!(all_pass(&q_combinatorics(7).unwrap()));
        assert!(all_pass(&uqsl2_iso(3, None).unwrap()));
        assert!(all_pass(&ribbon(3, Some(4)).unwrap()));
        assert!(all_pass(&ayd(2, None, None).unwrap()));
        assert!(all_pass(&stable_dim(3, None).unwrap()));
    }

    #[test]
    fn usage_errors() {
        assert!(hopf_axioms(4, 1, 0).is_err());
        assert!(ribbon(2, None).is_err());
        assert!(decompose_rep(&json!([[0, 1], [0, 1]])).is_err());
        assert!(ayd(3, None, Some(&json!({"p": 3}))).is_err());
    }

    #[test]
    fn dsl_errors_are_failures() {
        let o = dsl_check("assert id[V] == id[V]", 3, 1, 0).unwrap();
        assert_eq!(o.checks.len(), 1);
        assert!(!o.checks[0].passed());
        assert!(o.checks[0].witnesses[0].contains("unknown object"));
    }

    #[test]
    fn mu_values() {
        assert_eq!(mus(5, Some(-1)), vec![4]);
        assert_eq!(mus(3, None), vec![0, 1, 2]);
    }
}
