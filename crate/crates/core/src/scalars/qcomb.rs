//! q-integers, q-factorials and quadratic Gauss sums.

use super::{Cyclotomic, ScalarError};

/// (n)_ξ = 1 + ξ + … + ξ^{n−1}.
pub fn q_int(n: u64, xi: &Cyclotomic) -> Cyclotomic {
    let mut acc = Cyclotomic::zero(xi.field());
    let mut term = Cyclotomic::one(xi.field());
    for _ in 0..n {
        acc = &acc + &term;
        term = &term * xi;
    }
    acc
}

/// (n)_ξ! with (0)_ξ! = 1.
pub fn q_factorial(n: u64, xi: &Cyclotomic) -> Cyclotomic {
    (1..=n).fold(Cyclotomic::one(xi.field()), |acc, k| &acc * &q_int(k, xi))
}

/// [n]_q = (q^n − q^{−n}) / (q − q^{−1}), with [0]_q = 0 and [1]_q = 1.
pub fn balanced_q_int(n: u64, q: &Cyclotomic) -> Result<Cyclotomic, ScalarError> {
    match n {
        0 => return Ok(Cyclotomic::zero(q.field())),
        1 => return Ok(Cyclotomic::one(q.field())),
        _ => {}
    }
    let qinv = q.inverse()?;
    let den = q - &qinv;
    if den.is_zero() {
        return Err(ScalarError::DegenerateQ(n));
    }
    let num = q.pow(n as i64)? - qinv.pow(n as i64)?;
    num.checked_div(&den)
}

/// [n]_q! with [0]_q! = 1.
pub fn balanced_q_factorial(n: u64, q: &Cyclotomic) -> Result<Cyclotomic, ScalarError> {
    let mut acc = Cyclotomic::one(q.field());
    for k in 1..=n {
        acc = &acc * &balanced_q_int(k, q)?;
    }
    Ok(acc)
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Σ_{i=0}^{p−1} q^{m i²} for a primitive p-th root of unity q, p an odd prime.
pub fn gauss_sum(p: u64, q: &Cyclotomic, m: u64) -> Result<Cyclotomic, ScalarError> {
    if p % 2 == 0 || !is_prime(p) {
        return Err(ScalarError::InvalidArgument(format!("{p} is not an odd prime")));
    }
    if !q.pow(p as i64)?.is_one() || q.is_one() {
        return Err(ScalarError::InvalidArgument(format!("{q} is not a primitive {p}-th root of unity")));
    }
    let mut acc = Cyclotomic::zero(q.field());
    for i in 0..p {
        let e = (m * i * i) % p;
        acc = &acc + &q.pow(e as i64)?;
    }
    if acc.is_zero() {
        return Err(ScalarError::Internal(format!("vanishing Gauss sum for p = {p}, m = {m}")));
    }
    Ok(acc)
}
