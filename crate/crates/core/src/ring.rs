//! Coefficient rings.
//!
//! Every class, series and polynomial in this crate is generic over a [`Coeff`],
//! an exact commutative ring with unit. Two instantiations exist: [`BigInt`]
//! (evaluated mode, a concrete Chern triple substituted) and
//! [`PolyABC`](crate::poly::PolyABC) (symbolic mode over `Z[a,b,c]`).

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

/// An exact commutative ring usable as a coefficient of classes and series.
pub trait Coeff: Clone + Debug + PartialEq + Zero + One + Send + Sync {
    fn from_int(v: i64) -> Self;
    fn from_bigint(v: &BigInt) -> Self;

    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;

    fn add_assign_ref(&mut self, other: &Self) {
        *self = self.add_ref(other);
    }

    fn sub_assign_ref(&mut self, other: &Self) {
        *self = self.sub_ref(other);
    }

    /// Multiplicative inverse when `self` is a unit (`±1`), `None` otherwise.
    fn unit_inverse(&self) -> Option<Self>;

    fn to_json(&self) -> Value;
    fn from_json(value: &Value) -> Result<Self>;

    fn pow_u32(&self, exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }
}

impl Coeff for BigInt {
    fn from_int(v: i64) -> Self {
        BigInt::from(v)
    }

    fn from_bigint(v: &BigInt) -> Self {
        v.clone()
    }

    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn neg_ref(&self) -> Self {
        -self
    }

    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }

    fn sub_assign_ref(&mut self, other: &Self) {
        *self -= other;
    }

    fn unit_inverse(&self) -> Option<Self> {
        if self.abs().is_one() {
            Some(self.clone())
        } else {
            None
        }
    }

    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_json(value: &Value) -> Result<Self> {
        match value {
            Value::String(s) => s
                .parse::<BigInt>()
                .map_err(|_| Error::Json(format!("bad integer string {s:?}"))),
            Value::Number(n) => n
                .as_i64()
                .map(BigInt::from)
                .ok_or_else(|| Error::Json(format!("bad integer {n}"))),
            other => Err(Error::Json(format!("expected integer, got {other}"))),
        }
    }
}

/// Binomial coefficient `C(n, k)` as an exact integer; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for t in 0..k {
        acc = acc * BigInt::from(n - t) / BigInt::from(t + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, t| acc * BigInt::from(t))
}

/// Converts a small exact integer to `i64`, for triples and loop bounds.
pub fn to_i64(v: &BigInt) -> Option<i64> {
    v.to_i64()
}
