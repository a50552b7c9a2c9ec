//! Sparse polynomials in the Chern-data variables `a`, `b`, `c`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::ring::Coeff;

/// Exponents `(e_a, e_b, e_c)` of a monomial `a^e_a b^e_b c^e_c`.
/// The derived `Ord` is lexicographic, which fixes serialization order.
pub type Exponents = [u32; 3];

/// Element of `Z[a,b,c]`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PolyABC {
    terms: BTreeMap<Exponents, BigInt>,
}

impl PolyABC {
    pub fn constant(v: impl Into<BigInt>) -> Self {
        Self::monomial(v, [0, 0, 0])
    }

    pub fn monomial(coeff: impl Into<BigInt>, exps: Exponents) -> Self {
        let coeff = coeff.into();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exps, coeff);
        }
        Self { terms }
    }

    pub fn a() -> Self {
        Self::monomial(1, [1, 0, 0])
    }

    pub fn b() -> Self {
        Self::monomial(1, [0, 1, 0])
    }

    pub fn c() -> Self {
        Self::monomial(1, [0, 0, 1])
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, BigInt)>,
    {
        let mut p = Self::default();
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: Exponents) -> BigInt {
        self.terms.get(&exps).cloned().unwrap_or_default()
    }

    /// The constant coefficient if the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&[0, 0, 0]).cloned(),
            _ => None,
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e[0] + e[1] + e[2]).max()
    }

    fn add_term(&mut self, exps: Exponents, coeff: &BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exps).or_default();
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    /// Exact value at an integer triple.
    pub fn evaluate(&self, a: &BigInt, b: &BigInt, c: &BigInt) -> BigInt {
        let mut cache: [BTreeMap<u32, BigInt>; 3] = Default::default();
        let vals = [a, b, c];
        let mut total = BigInt::zero();
        for (e, coeff) in &self.terms {
            let mut t = coeff.clone();
            for v in 0..3 {
                if e[v] == 0 {
                    continue;
                }
                let p = cache[v]
                    .entry(e[v])
                    .or_insert_with(|| vals[v].pow(e[v]))
                    .clone();
                t *= p;
            }
            total += t;
        }
        total
    }

    pub fn evaluate_i64(&self, a: i64, b: i64, c: i64) -> BigInt {
        self.evaluate(&BigInt::from(a), &BigInt::from(b), &BigInt::from(c))
    }

    /// Substitutes a polynomial for each variable.
    pub fn substitute(&self, a: &PolyABC, b: &PolyABC, c: &PolyABC) -> PolyABC {
        let vals = [a, b, c];
        let mut total = PolyABC::zero();
        for (e, coeff) in &self.terms {
            let mut t = PolyABC::constant(coeff.clone());
            for v in 0..3 {
                if e[v] > 0 {
                    t = t.mul_ref(&vals[v].pow_u32(e[v]));
                }
            }
            total.add_assign_ref(&t);
        }
        total
    }

    pub fn to_serial(&self) -> PolySerial {
        PolySerial {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermSerial {
                    ea: e[0],
                    eb: e[1],
                    ec: e[2],
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }

    pub fn from_serial(s: &PolySerial) -> Result<Self> {
        let mut p = Self::default();
        for t in &s.terms {
            let c = t
                .coeff
                .parse::<BigInt>()
                .map_err(|_| Error::Json(format!("bad coefficient {:?}", t.coeff)))?;
            p.add_term([t.ea, t.eb, t.ec], &c);
        }
        Ok(p)
    }
}

/// Wire form: `{"terms":[{"ea":..,"eb":..,"ec":..,"coeff":"decimal"}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolySerial {
    pub terms: Vec<TermSerial>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermSerial {
    pub ea: u32,
    pub eb: u32,
    pub ec: u32,
    pub coeff: String,
}

impl Zero for PolyABC {
    fn zero() -> Self {
        Self::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for PolyABC {
    fn one() -> Self {
        Self::constant(1)
    }
}

impl Add for PolyABC {
    type Output = PolyABC;
    fn add(self, rhs: Self) -> Self {
        self.add_ref(&rhs)
    }
}

impl Sub for PolyABC {
    type Output = PolyABC;
    fn sub(self, rhs: Self) -> Self {
        self.sub_ref(&rhs)
    }
}

impl Mul for PolyABC {
    type Output = PolyABC;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl Neg for PolyABC {
    type Output = PolyABC;
    fn neg(self) -> Self {
        self.neg_ref()
    }
}

impl Coeff for PolyABC {
    fn from_int(v: i64) -> Self {
        Self::constant(v)
    }

    fn from_bigint(v: &BigInt) -> Self {
        Self::constant(v.clone())
    }

    fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_ref(other);
        out
    }

    fn sub_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.sub_assign_ref(other);
        out
    }

    fn add_assign_ref(&mut self, other: &Self) {
        for (e, c) in &other.terms {
            self.add_term(*e, c);
        }
    }

    fn sub_assign_ref(&mut self, other: &Self) {
        for (e, c) in &other.terms {
            self.add_term(*e, &-c);
        }
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]];
                out.add_term(e, &(c1 * c2));
            }
        }
        out
    }

    fn neg_ref(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    fn unit_inverse(&self) -> Option<Self> {
        let k = self.as_constant()?;
        if k.abs().is_one() {
            Some(self.clone())
        } else {
            None
        }
    }

    fn to_json(&self) -> Value {
        serde_json::to_value(self.to_serial()).expect("serializable")
    }

    fn from_json(value: &Value) -> Result<Self> {
        let s: PolySerial =
            serde_json::from_value(value.clone()).map_err(|e| Error::Json(e.to_string()))?;
        Self::from_serial(&s)
    }
}

impl fmt::Display for PolyABC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest total degree first, reads closer to hand-written formulas
        let mut items: Vec<_> = self.terms.iter().collect();
        items.sort_by(|(x, _), (y, _)| {
            let dx = x[0] + x[1] + x[2];
            let dy = y[0] + y[1] + y[2];
            dy.cmp(&dx).then(y.cmp(x))
        });
        for (idx, (e, c)) in items.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let vars: Vec<String> = ["a", "b", "c"]
                .iter()
                .zip(e.iter())
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| if k == 1 { v.to_string() } else { format!("{v}^{k}") })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}
