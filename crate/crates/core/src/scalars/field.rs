use std::collections::HashMap;
use std::sync::{Arc, LazyLock, Mutex};

use num_bigint::BigInt;
use num_traits::Zero;

use super::Cyclotomic;

/// The field Q(ζ_N) together with its reduction data.
#[derive(Debug)]
pub struct CyclotomicField {
    order: u64,
    /// Φ_N, lowest coefficient first, monic.
    poly: Vec<i64>,
    /// ζ^k in the power basis, for 0 ≤ k < max(N, 2φ(N) − 1).
    powers: Vec<Vec<i64>>,
}

pub type Field = Arc<CyclotomicField>;

static REGISTRY: LazyLock<Mutex<HashMap<u64, Field>>> = LazyLock::new(|| Mutex::new(HashMap::new()));

/// The shared handle for Q(ζ_N). `field(1)` is Q itself.
pub fn field(order: u64) -> Field {
    assert!(order >= 1, "cyclotomic order must be positive");
    let mut reg = REGISTRY.lock().expect("field registry poisoned");
    reg.entry(order).or_insert_with(|| Arc::new(CyclotomicField::build(order))).clone()
}

/// Φ_N by exact division of x^N − 1 by Φ_d for every proper divisor d.
pub fn cyclotomic_polynomial(order: u64) -> Vec<i64> {
    let n = order as usize;
    let mut num = vec![0i64; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in 1..n {
        if n % d == 0 {
            num = exact_divide(&num, &cyclotomic_polynomial(d as u64));
        }
    }
    num
}

fn exact_divide(num: &[i64], den: &[i64]) -> Vec<i64> {
    // den is monic
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qlen = num.len() - dd;
    let mut q = vec![0i64; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dd];
        q[k] = c;
        if c != 0 {
            for (i, d) in den.iter().enumerate() {
                rem[k + i] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|v| *v == 0), "inexact cyclotomic division");
    q
}

impl CyclotomicField {
    fn build(order: u64) -> Self {
        let poly = cyclotomic_polynomial(order);
        let d = poly.len() - 1;
        let count = (order as usize).max(2 * d);
        let mut powers = Vec::with_capacity(count);
        let mut cur = vec![0i64; d];
        cur[0] = 1;
        for _ in 0..count {
            powers.push(cur.clone());
            // multiply by x and reduce with x^d = −Σ poly_i x^i
            let top = cur[d - 1];
            for i in (1..d).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..d {
                    cur[i] -= top * poly[i];
                }
            }
        }
        CyclotomicField { order, poly, powers }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// φ(N), the dimension over Q.
    pub fn degree(&self) -> usize {
        self.poly.len() - 1
    }

    pub fn polynomial(&self) -> &[i64] {
        &self.poly
    }

    pub(crate) fn power_of_root(&self, k: usize) -> &[i64] {
        if k < self.powers.len() {
            &self.powers[k]
        } else {
            &self.powers[k % self.order as usize]
        }
    }

    pub(crate) fn reduce_big(&self, coeffs: &[BigInt]) -> Vec<BigInt> {
        let d = self.degree();
        let mut out: Vec<BigInt> = vec![BigInt::zero(); d];
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, p) in out.iter_mut().zip(self.power_of_root(k)) {
                if *p != 0 {
                    *slot += c * BigInt::from(*p);
                }
            }
        }
        out
    }

    pub fn zero(self: &Arc<Self>) -> Cyclotomic {
        Cyclotomic::zero(self)
    }

    pub fn one(self: &Arc<Self>) -> Cyclotomic {
        Cyclotomic::one(self)
    }

    /// ζ_N^k
    pub fn root(self: &Arc<Self>, k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(self.order, k)
    }

    pub fn int(self: &Arc<Self>, v: i64) -> Cyclotomic {
        Cyclotomic::from_i64(self, v)
    }
}
