//! Exact arithmetic in cyclotomic fields Q(ζ_N) and the q-combinatorics built
//! on top of it.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{φ(N)-1}` modulo the
//! N-th cyclotomic polynomial, so two elements are equal exactly when their
//! (reduced) coefficient vectors are equal. Coefficients share one positive
//! denominator. Small values live in machine integers and transparently
//! spill into `BigInt` when an operation would overflow.

mod field;
mod int;
mod parse;
mod qcomb;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use smallvec::SmallVec;

pub use field::{cyclotomic_polynomial, field, CyclotomicField, Field};
pub use parse::parse_scalar;
pub use qcomb::{balanced_q_factorial, balanced_q_int, gauss_sum, is_prime, q_factorial, q_int};

use int::normalize;

/// Arbitrary-precision reduced fraction.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot mix Q(zeta_{left}) and Q(zeta_{right})")]
    OrderMismatch { left: u64, right: u64 },
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("q^2 = 1, balanced q-integer [{0}]_q is undefined")]
    DegenerateQ(u64),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

#[derive(Clone, Debug)]
enum Coeffs {
    Small { num: SmallVec<[i64; 8]>, den: i64 },
    Big { num: Vec<BigInt>, den: BigInt },
}

/// An exact element of Q(ζ_N).
#[derive(Clone)]
pub struct Cyclotomic {
    field: Field,
    coeffs: Coeffs,
}

impl Cyclotomic {
    pub fn zero(field: &Field) -> Self {
        Cyclotomic {
            field: field.clone(),
            coeffs: Coeffs::Small { num: SmallVec::from_elem(0, field.degree()), den: 1 },
        }
    }

    pub fn one(field: &Field) -> Self {
        Self::from_i64(field, 1)
    }

    pub fn from_i64(field: &Field, value: i64) -> Self {
        let mut num = SmallVec::from_elem(0, field.degree());
        num[0] = value;
        Cyclotomic { field: field.clone(), coeffs: Coeffs::Small { num, den: 1 } }
    }

    /// An integer in Q (order 1); promotes into any Q(ζ_N) on use.
    pub fn integer(value: i64) -> Self {
        Self::from_i64(&field(1), value)
    }

    pub fn from_rational(field: &Field, value: &Rational) -> Self {
        let mut num = vec![BigInt::zero(); field.degree()];
        num[0] = value.numer().clone();
        Self::from_big_parts(field, num, value.denom().clone())
    }

    pub fn rational(value: &Rational) -> Self {
        Self::from_rational(&field(1), value)
    }

    /// Builds `Σ num_i ζ^i / den` from power-basis coefficients (length φ(N)).
    pub fn from_coefficients(field: &Field, num: &[i64], den: i64) -> Result<Self, ScalarError> {
        if num.len() != field.degree() {
            return Err(ScalarError::InvalidArgument(format!(
                "expected {} coefficients, got {}",
                field.degree(),
                num.len()
            )));
        }
        if den == 0 {
            return Err(ScalarError::DivisionByZero);
        }
        let wide: Vec<i128> = num.iter().map(|&v| v as i128).collect();
        Ok(Self::from_wide(field, normalize(wide, den as i128)))
    }

    fn from_big_parts(field: &Field, num: Vec<BigInt>, den: BigInt) -> Self {
        Self::from_bigs(field, normalize(num, den))
    }

    fn from_wide(field: &Field, (num, den): (Vec<i128>, i128)) -> Self {
        let small = num.iter().all(|v| fits(*v)) && fits(den);
        let coeffs = if small {
            Coeffs::Small { num: num.iter().map(|&v| v as i64).collect(), den: den as i64 }
        } else {
            Coeffs::Big { num: num.into_iter().map(BigInt::from).collect(), den: BigInt::from(den) }
        };
        Cyclotomic { field: field.clone(), coeffs }
    }

    fn from_bigs(field: &Field, (num, den): (Vec<BigInt>, BigInt)) -> Self {
        let small = num.iter().all(|v| v.to_i64().is_some_and(|x| x != i64::MIN))
            && den.to_i64().is_some_and(|x| x != i64::MIN);
        let coeffs = if small {
            Coeffs::Small {
                num: num.iter().map(|v| v.to_i64().unwrap()).collect(),
                den: den.to_i64().unwrap(),
            }
        } else {
            Coeffs::Big { num, den }
        };
        Cyclotomic { field: field.clone(), coeffs }
    }

    /// ζ_N^k, for any integer k.
    pub fn root_of_unity(order: u64, k: i64) -> Self {
        let f = field(order);
        let e = k.rem_euclid(order as i64) as usize;
        let num: SmallVec<[i64; 8]> = f.power_of_root(e).iter().copied().collect();
        Cyclotomic { field: f, coeffs: Coeffs::Small { num, den: 1 } }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn order(&self) -> u64 {
        self.field.order()
    }

    pub fn is_zero(&self) -> bool {
        match &self.coeffs {
            Coeffs::Small { num, .. } => num.iter().all(|v| *v == 0),
            Coeffs::Big { num, .. } => num.iter().all(|v| v.is_zero()),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.coeffs {
            Coeffs::Small { num, den } => *den == 1 && num[0] == 1 && num[1..].iter().all(|v| *v == 0),
            Coeffs::Big { .. } => false,
        }
    }

    pub fn is_rational(&self) -> bool {
        match &self.coeffs {
            Coeffs::Small { num, .. } => num[1..].iter().all(|v| *v == 0),
            Coeffs::Big { num, .. } => num[1..].iter().all(|v| v.is_zero()),
        }
    }

    pub fn to_rational(&self) -> Option<Rational> {
        if !self.is_rational() {
            return None;
        }
        let (num, den) = self.big_parts();
        Some(Rational::new(num[0].clone(), den))
    }

    /// Power-basis numerators and the common denominator.
    pub fn big_parts(&self) -> (Vec<BigInt>, BigInt) {
        match &self.coeffs {
            Coeffs::Small { num, den } => {
                (num.iter().map(|&v| BigInt::from(v)).collect(), BigInt::from(*den))
            }
            Coeffs::Big { num, den } => (num.clone(), den.clone()),
        }
    }

    /// Power-basis coefficients as rationals.
    pub fn coefficients(&self) -> Vec<Rational> {
        let (num, den) = self.big_parts();
        num.into_iter().map(|n| Rational::new(n, den.clone())).collect()
    }

    /// The same number in Q(ζ_order), via ζ_k = ζ_order^{order/k}; requires k | order.
    pub fn in_order(&self, order: u64) -> Result<Cyclotomic, ScalarError> {
        let k = self.field.order();
        if k == order {
            return Ok(self.clone());
        }
        if self.field.degree() == 1 {
            return Ok(self.embed(&field::field(order)));
        }
        if order % k != 0 {
            return Err(ScalarError::OrderMismatch { left: k, right: order });
        }
        let step = (order / k) as i64;
        let mut acc = Cyclotomic::zero(&field::field(order));
        for (i, c) in self.coefficients().iter().enumerate() {
            if !c.is_zero() {
                let term = Cyclotomic::root_of_unity(order, step * i as i64).checked_mul(&Cyclotomic::rational(c))?;
                acc = acc.checked_add(&term)?;
            }
        }
        Ok(acc)
    }

    fn embed(&self, target: &Field) -> Cyclotomic {
        if self.field.order() == target.order() {
            return self.clone();
        }
        debug_assert_eq!(self.field.degree(), 1);
        match &self.coeffs {
            Coeffs::Small { num, den } => {
                Cyclotomic::from_coefficients_unchecked_small(target, num[0], *den)
            }
            Coeffs::Big { num, den } => {
                let mut v = vec![BigInt::zero(); target.degree()];
                v[0] = num[0].clone();
                Cyclotomic { field: target.clone(), coeffs: Coeffs::Big { num: v, den: den.clone() } }
            }
        }
    }

    fn from_coefficients_unchecked_small(target: &Field, c0: i64, den: i64) -> Cyclotomic {
        let mut num = SmallVec::from_elem(0, target.degree());
        num[0] = c0;
        Cyclotomic { field: target.clone(), coeffs: Coeffs::Small { num, den } }
    }

    fn common_field(&self, other: &Cyclotomic) -> Result<Field, ScalarError> {
        let (a, b) = (&self.field, &other.field);
        if a.order() == b.order() {
            Ok(a.clone())
        } else if a.degree() == 1 {
            Ok(b.clone())
        } else if b.degree() == 1 {
            Ok(a.clone())
        } else {
            Err(ScalarError::OrderMismatch { left: a.order(), right: b.order() })
        }
    }

    pub fn checked_add(&self, other: &Cyclotomic) -> Result<Cyclotomic, ScalarError> {
        if self.field.order() == other.field.order() {
            return Ok(combine(self, other, &self.field, Op::Add));
        }
        let f = self.common_field(other)?;
        Ok(combine(&self.embed(&f), &other.embed(&f), &f, Op::Add))
    }

    pub fn checked_sub(&self, other: &Cyclotomic) -> Result<Cyclotomic, ScalarError> {
        if self.field.order() == other.field.order() {
            return Ok(combine(self, other, &self.field, Op::Sub));
        }
        let f = self.common_field(other)?;
        Ok(combine(&self.embed(&f), &other.embed(&f), &f, Op::Sub))
    }

    pub fn checked_mul(&self, other: &Cyclotomic) -> Result<Cyclotomic, ScalarError> {
        if self.field.order() == other.field.order() {
            return Ok(combine(self, other, &self.field, Op::Mul));
        }
        let f = self.common_field(other)?;
        Ok(combine(&self.embed(&f), &other.embed(&f), &f, Op::Mul))
    }

    pub fn checked_div(&self, other: &Cyclotomic) -> Result<Cyclotomic, ScalarError> {
        let f = self.common_field(other)?;
        let inv = other.embed(&f).inverse()?;
        Ok(combine(&self.embed(&f), &inv, &f, Op::Mul))
    }

    /// Multiplicative inverse; solves `a · v = 1` in the power basis.
    pub fn inverse(&self) -> Result<Cyclotomic, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let f = &self.field;
        let d = f.degree();
        if let Coeffs::Small { num, den } = &self.coeffs {
            if num[1..].iter().all(|v| *v == 0) {
                let (n, dd) = if num[0] < 0 { (-*den, -num[0]) } else { (*den, num[0]) };
                return Ok(Cyclotomic::from_coefficients_unchecked_small(f, n, dd));
            }
        }
        let (num, den) = self.big_parts();
        // Column j of the multiplication matrix is num · ζ^j reduced.
        let mut m: Vec<Vec<Rational>> = vec![vec![Rational::zero(); d + 1]; d];
        for j in 0..d {
            let mut prod = vec![BigInt::zero(); 2 * d];
            for (i, c) in num.iter().enumerate() {
                prod[i + j] += c;
            }
            let red = f.reduce_big(&prod);
            for i in 0..d {
                m[i][j] = Rational::from_integer(red[i].clone());
            }
        }
        m[0][d] = Rational::one();
        // Gauss-Jordan over Q.
        for col in 0..d {
            let piv = (col..d).find(|&r| !m[r][col].is_zero()).ok_or_else(|| {
                ScalarError::Internal("singular multiplication matrix".into())
            })?;
            m.swap(col, piv);
            let inv = m[col][col].recip();
            for k in col..=d {
                m[col][k] = &m[col][k] * &inv;
            }
            for r in 0..d {
                if r != col && !m[r][col].is_zero() {
                    let factor = m[r][col].clone();
                    for k in col..=d {
                        let t = &factor * &m[col][k];
                        m[r][k] = &m[r][k] - t;
                    }
                }
            }
        }
        // v = den · solution
        let lcm = m.iter().fold(BigInt::one(), |acc, row| num_integer::lcm(acc, row[d].denom().clone()));
        let out: Vec<BigInt> = m
            .iter()
            .map(|row| (row[d].numer() * (&lcm / row[d].denom())) * &den)
            .collect();
        Ok(Cyclotomic::from_big_parts(f, out, lcm))
    }

    pub fn pow(&self, exp: i64) -> Result<Cyclotomic, ScalarError> {
        let base = if exp < 0 { self.inverse()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Cyclotomic::one(&self.field);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    /// Galois automorphism ζ ↦ ζ^k (k coprime to N).
    pub fn galois(&self, k: i64) -> Cyclotomic {
        let f = &self.field;
        let n = f.order() as i64;
        let (num, den) = self.big_parts();
        let mut out = vec![BigInt::zero(); f.degree()];
        for (i, c) in num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = ((i as i64) * k).rem_euclid(n) as usize;
            for (slot, p) in out.iter_mut().zip(f.power_of_root(e)) {
                *slot += c * BigInt::from(*p);
            }
        }
        Cyclotomic::from_big_parts(f, out, den)
    }

    /// Complex conjugation ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> Cyclotomic {
        self.galois(-1)
    }
}

fn fits(v: i128) -> bool {
    v > i64::MIN as i128 && v <= i64::MAX as i128
}

#[derive(Clone, Copy)]
enum Op {
    Add,
    Sub,
    Mul,
}

fn combine(a: &Cyclotomic, b: &Cyclotomic, f: &Field, op: Op) -> Cyclotomic {
    if let (Coeffs::Small { num: an, den: ad }, Coeffs::Small { num: bn, den: bd }) = (&a.coeffs, &b.coeffs)
    {
        let an: SmallVec<[i128; 8]> = an.iter().map(|&v| v as i128).collect();
        let bn: SmallVec<[i128; 8]> = bn.iter().map(|&v| v as i128).collect();
        if let Some(res) = combine_in(&an, &(*ad as i128), &bn, &(*bd as i128), f, op) {
            return Cyclotomic::from_wide(f, normalize(res.0, res.1));
        }
    }
    let (an, ad) = a.big_parts();
    let (bn, bd) = b.big_parts();
    let res = combine_in(&an, &ad, &bn, &bd, f, op).expect("big integer arithmetic cannot overflow");
    Cyclotomic::from_big_parts(f, res.0, res.1)
}

fn combine_in<I: int::Int>(an: &[I], ad: &I, bn: &[I], bd: &I, f: &Field, op: Op) -> Option<(Vec<I>, I)> {
    match op {
        Op::Add | Op::Sub => {
            let sub = matches!(op, Op::Sub);
            if ad == bd {
                let num = an
                    .iter()
                    .zip(bn)
                    .map(|(x, y)| if sub { x.sub(y) } else { x.add(y) })
                    .collect::<Option<Vec<I>>>()?;
                return Some((num, ad.clone()));
            }
            let g = ad.gcd(bd);
            let fa = bd.div_exact(&g);
            let fb = ad.div_exact(&g);
            let den = ad.mul(&fa)?;
            let num = an
                .iter()
                .zip(bn)
                .map(|(x, y)| {
                    let l = x.mul(&fa)?;
                    let r = y.mul(&fb)?;
                    if sub {
                        l.sub(&r)
                    } else {
                        l.add(&r)
                    }
                })
                .collect::<Option<Vec<I>>>()?;
            Some((num, den))
        }
        Op::Mul => {
            let d = f.degree();
            let mut prod: Vec<I> = vec![I::zero(); 2 * d - 1];
            for (i, x) in an.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in bn.iter().enumerate() {
                    if y.is_zero() {
                        continue;
                    }
                    prod[i + j] = prod[i + j].add(&x.mul(y)?)?;
                }
            }
            let mut out: Vec<I> = prod[..d].to_vec();
            for (k, c) in prod.iter().enumerate().skip(d) {
                if c.is_zero() {
                    continue;
                }
                for (slot, p) in out.iter_mut().zip(f.power_of_root(k)) {
                    if *p != 0 {
                        *slot = slot.add(&c.mul(&I::from_i64(*p))?)?;
                    }
                }
            }
            let den = ad.mul(bd)?;
            Some((out, den))
        }
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.field.order() != other.field.order() {
            if !(self.is_rational() && other.is_rational()) {
                return false;
            }
            return self.to_rational() == other.to_rational();
        }
        match (&self.coeffs, &other.coeffs) {
            (Coeffs::Small { num: a, den: ad }, Coeffs::Small { num: b, den: bd }) => ad == bd && a == b,
            (Coeffs::Big { num: a, den: ad }, Coeffs::Big { num: b, den: bd }) => ad == bd && a == b,
            _ => false,
        }
    }
}

impl Eq for Cyclotomic {}

impl Hash for Cyclotomic {
    fn hash<H: Hasher>(&self, state: &mut H) {
        if self.is_rational() {
            // Rationals compare equal across fields, so the order is left out.
            match &self.coeffs {
                Coeffs::Small { num, den } => (0u8, num[0], *den).hash(state),
                Coeffs::Big { num, den } => (1u8, &num[0], den).hash(state),
            }
        } else {
            self.field.order().hash(state);
            match &self.coeffs {
                Coeffs::Small { num, den } => (0u8, num.as_slice(), *den).hash(state),
                Coeffs::Big { num, den } => (1u8, num, den).hash(state),
            }
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{}", e))
            }
        }
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$method(rhs)
            }
        }
        impl $tr<Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        let coeffs = match &self.coeffs {
            Coeffs::Small { num, den } => Coeffs::Small { num: num.iter().map(|v| -v).collect(), den: *den },
            Coeffs::Big { num, den } => Coeffs::Big { num: num.iter().map(|v| -v).collect(), den: den.clone() },
        };
        Cyclotomic { field: self.field.clone(), coeffs }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

fn fmt_rational(n: &BigInt, d: &BigInt) -> String {
    if d.is_one() {
        n.to_string()
    } else {
        format!("{}/{}", n, d)
    }
}

/// Scalar syntax: `3`, `-1/2`, `1 + 2*q(3,1)`, `1/2*q(5,2) - q(5,3)`.
impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, den) = self.big_parts();
        let n = self.field.order();
        let mut first = true;
        let mut out = String::new();
        for (i, c) in num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let r = Rational::new(c.clone(), den.clone());
            let neg = r.is_negative();
            let a = r.abs();
            if first {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            first = false;
            let mag = fmt_rational(a.numer(), a.denom());
            if i == 0 {
                out.push_str(&mag);
            } else if a.is_one() {
                out.push_str(&format!("q({},{})", n, i));
            } else {
                out.push_str(&format!("{}*q({},{})", mag, n, i));
            }
        }
        if first {
            out.push('0');
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic[{}]({})", self.field.order(), self)
    }
}

impl serde::Serialize for Cyclotomic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests;
