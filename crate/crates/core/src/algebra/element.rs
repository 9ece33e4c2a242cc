use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde_json::{Map, Value};

use super::{Algebra, AlgebraError, PowerRule};
use crate::linalg::SparseVec;
use crate::scalars::Cyclotomic;

/// An element of a finite-dimensional algebra in its normal basis.
#[derive(Clone)]
pub struct AlgebraElement {
    alg: Algebra,
    coeffs: SparseVec,
}

impl AlgebraElement {
    pub fn from_vec(alg: &Algebra, coeffs: SparseVec) -> Self {
        debug_assert!(coeffs.iter().all(|(i, _)| *i < alg.dim()));
        AlgebraElement { alg: alg.clone(), coeffs }
    }

    pub fn zero(alg: &Algebra) -> Self {
        Self::from_vec(alg, SparseVec::zero())
    }

    pub fn one(alg: &Algebra) -> Self {
        Self::scalar(alg, Cyclotomic::integer(1))
    }

    pub fn scalar(alg: &Algebra, c: Cyclotomic) -> Self {
        Self::from_vec(alg, SparseVec::unit(0, c))
    }

    pub fn basis(alg: &Algebra, i: usize) -> Self {
        Self::from_vec(alg, SparseVec::unit(i, Cyclotomic::integer(1)))
    }

    pub fn generator(alg: &Algebra, name: &str) -> Result<Self, AlgebraError> {
        let a = alg.generator_index(name)?;
        Ok(Self::basis(alg, alg.gen_basis(a)))
    }

    /// Normal form of a word of (generator name, exponent); negative exponents
    /// are allowed on generators with g^bound = 1.
    pub fn word(alg: &Algebra, letters: &[(&str, i64)]) -> Result<Self, AlgebraError> {
        let mut v = SparseVec::unit(0, Cyclotomic::integer(1));
        for &(name, e) in letters {
            let a = alg.generator_index(name)?;
            let g = &alg.generators()[a];
            let e = if e < 0 {
                if g.rule != PowerRule::One {
                    return Err(AlgebraError::NotInvertible(name.to_string()));
                }
                e.rem_euclid(g.bound as i64)
            } else {
                e
            };
            for _ in 0..e {
                v = alg.mul_gen(&v, a);
            }
        }
        Ok(Self::from_vec(alg, v))
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn coeffs(&self) -> &SparseVec {
        &self.coeffs
    }

    pub fn coefficient(&self, i: usize) -> Cyclotomic {
        self.coeffs.get(i).cloned().unwrap_or_else(|| Cyclotomic::integer(0))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    /// The common degree of all terms, if homogeneous (zero has degree 0).
    pub fn degree(&self) -> Option<u64> {
        let mut degs = self.coeffs.iter().map(|(i, _)| self.alg.degree(*i));
        let first = degs.next().unwrap_or(0);
        degs.all(|d| d == first).then_some(first)
    }

    fn same_algebra(&self, other: &Self) -> Result<(), AlgebraError> {
        if Arc::ptr_eq(&self.alg, &other.alg) {
            Ok(())
        } else {
            Err(AlgebraError::AlgebraMismatch(self.alg.name().to_string(), other.alg.name().to_string()))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_algebra(other)?;
        Ok(Self::from_vec(&self.alg, self.coeffs.add(&other.coeffs)))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_algebra(other)?;
        Ok(Self::from_vec(&self.alg, self.coeffs.sub(&other.coeffs)))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_algebra(other)?;
        Ok(Self::from_vec(&self.alg, self.alg.mul_vec(&self.coeffs, &other.coeffs)))
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        Self::from_vec(&self.alg, self.coeffs.scale(c))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.alg);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (i, c) in self.coeffs.iter() {
            let key = match self.alg.exponents(*i) {
                Some(e) => format!("({})", e.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")),
                None => self.alg.label(*i).to_string(),
            };
            m.insert(key, Value::String(c.to_string()));
        }
        Value::Object(m)
    }
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.alg, &other.alg) && self.coeffs == other.coeffs
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.alg.name(), self)
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(i, c)| {
                let l = self.alg.label(*i);
                if l == "1" {
                    format!("({c})")
                } else if c.is_one() {
                    l.to_string()
                } else {
                    format!("({c})*{l}")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&AlgebraElement> for &AlgebraElement {
            type Output = AlgebraElement;
            fn $m(self, rhs: &AlgebraElement) -> AlgebraElement {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<AlgebraElement> for AlgebraElement {
            type Output = AlgebraElement;
            fn $m(self, rhs: AlgebraElement) -> AlgebraElement {
                (&self).$m(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scale(&Cyclotomic::integer(-1))
    }
}
