//! The named algebras, all over Q(ξ) with ξ = ζ_p.

use super::{Algebra, AlgebraError, FiniteDimAlgebra, Generator, PowerRule, Presentation};
use crate::linalg::SparseVec;
use crate::scalars::{field, is_prime, q_factorial, Cyclotomic};

fn require_prime(p: u64) -> Result<(), AlgebraError> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(AlgebraError::NotPrime(p))
    }
}

fn xi(p: u64, k: i64) -> Cyclotomic {
    Cyclotomic::root_of_unity(p, k)
}

fn one() -> Cyclotomic {
    Cyclotomic::integer(1)
}

/// k[var]/var^p with var of the given degree in Z/p.
pub fn nilpotent_line(name: &str, var: &str, p: u64, degree: i64) -> Result<Algebra, AlgebraError> {
    require_prime(p)?;
    let mut pr = Presentation::new(name, p, &field(p));
    pr.generator(var, degree, p as u32, PowerRule::Zero);
    Ok(pr.build())
}

/// H = k[x]/x^p, x of degree 1, an object of (Vec_{Z/p}, ξ).
pub fn anyonic_line(p: u64) -> Result<Algebra, AlgebraError> {
    nilpotent_line(&format!("anyonic_line({p})"), "x", p, 1)
}

/// T_p(ξ) over Vec (trivial grading): g^p = 1, x^p = 0, gx = ξxg.
pub fn taft(p: u64) -> Result<Algebra, AlgebraError> {
    require_prime(p)?;
    let mut pr = Presentation::new(&format!("taft({p})"), 1, &field(p));
    let g = pr.generator("g", 0, p as u32, PowerRule::One);
    let x = pr.generator("x", 0, p as u32, PowerRule::Zero);
    let gx = pr.monomial(&[(g, 1), (x, 1)]);
    pr.rule(x, g, vec![(xi(p, -1), gx)]);
    Ok(pr.build())
}

/// *H for the anyonic line: ^ie·^je = ξ^{−ij}(i+j)_ξ!/((i)_ξ!(j)_ξ!) ^{i+j}e, zero once i+j ≥ p.
pub fn dual_anyonic(p: u64) -> Result<Algebra, AlgebraError> {
    require_prime(p)?;
    let f = field(p);
    let x = xi(p, 1);
    let fact: Vec<Cyclotomic> = (0..p).map(|n| q_factorial(n, &x)).collect();
    let mut table = Vec::with_capacity((p * p) as usize);
    for i in 0..p {
        for j in 0..p {
            if i + j >= p {
                table.push(SparseVec::zero());
                continue;
            }
            let c = &(&xi(p, -((i * j) as i64)) * &fact[(i + j) as usize]) / &(&fact[i as usize] * &fact[j as usize]);
            table.push(SparseVec::unit((i + j) as usize, c));
        }
    }
    let basis = (0..p).map(|i| ((p - i) % p, format!("^{i}e"))).collect();
    let e = Generator { name: "e".into(), degree: (p - 1) % p, bound: p as u32, rule: PowerRule::Zero };
    let gen = if p > 1 { 1 } else { 0 };
    Ok(FiniteDimAlgebra::from_structure_constants(&format!("dual_anyonic({p})"), p, &f, basis, table, vec![(e, gen)]))
}

/// D^a_μ(T_p(ξ)) on generators (z, g, x): x^p = z^p = 0, g^p = 1,
/// gxg^{-1} = ξx, gzg^{-1} = ξ^{-1}z, xz − ξzx = ξ^{1−μ}g^{−2} − 1.
pub fn d_a_mu(p: u64, mu: i64) -> Result<Algebra, AlgebraError> {
    require_prime(p)?;
    let mu = mu.rem_euclid(p as i64);
    let mut pr = Presentation::new(&format!("d_a_mu({p},{mu})"), p, &field(p));
    let z = pr.generator("z", -1, p as u32, PowerRule::Zero);
    let g = pr.generator("g", 0, p as u32, PowerRule::One);
    let x = pr.generator("x", 1, p as u32, PowerRule::Zero);
    let zg = pr.monomial(&[(z, 1), (g, 1)]);
    let gx = pr.monomial(&[(g, 1), (x, 1)]);
    let zx = pr.monomial(&[(z, 1), (x, 1)]);
    let g_minus_2 = pr.monomial(&[(g, ((p as i64 - 2).rem_euclid(p as i64)) as u32)]);
    let unit = pr.monomial(&[]);
    pr.rule(g, z, vec![(xi(p, -1), zg)]);
    pr.rule(x, g, vec![(xi(p, -1), gx)]);
    pr.rule(x, z, vec![(xi(p, 1), zx), (xi(p, 1 - mu), g_minus_2), (-one(), unit)]);
    Ok(pr.build())
}

/// u_q(sl2) on generators (F, K, E), q = ξ^m with p = 2m + 1:
/// KEK^{-1} = q²E, KFK^{-1} = q^{-2}F, [E,F] = K − K^{-1}, E^p = F^p = 0, K^p = 1.
pub fn uqsl2(p: u64) -> Result<Algebra, AlgebraError> {
    require_prime(p)?;
    if p == 2 {
        return Err(AlgebraError::Unsupported("u_q(sl2) needs an odd prime".into()));
    }
    let m = ((p - 1) / 2) as i64;
    let q = |k: i64| xi(p, m * k);
    let mut pr = Presentation::new(&format!("uqsl2({p})"), p, &field(p));
    let f = pr.generator("F", -1, p as u32, PowerRule::Zero);
    let k = pr.generator("K", 0, p as u32, PowerRule::One);
    let e = pr.generator("E", 1, p as u32, PowerRule::Zero);
    let fk = pr.monomial(&[(f, 1), (k, 1)]);
    let ke = pr.monomial(&[(k, 1), (e, 1)]);
    let fe = pr.monomial(&[(f, 1), (e, 1)]);
    let kk = pr.monomial(&[(k, 1)]);
    let kinv = pr.monomial(&[(k, (p - 1) as u32)]);
    pr.rule(k, f, vec![(q(-2), fk)]);
    pr.rule(e, k, vec![(q(-2), ke)]);
    pr.rule(e, f, vec![(one(), fe), (one(), kk), (-one(), kinv)]);
    Ok(pr.build())
}
