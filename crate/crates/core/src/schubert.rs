//! The cohomology ring of Gr(2,m) in the Schubert basis.
//!
//! A class is a sparse map from partitions `(i,j)` to coefficients. With a
//! finite ambient every stored key satisfies `m-2 >= i >= j >= 0`; anything
//! outside that box is zero and gets dropped on construction.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::PolyABC;
use crate::ring::{factorial, Coeff};
use crate::series::TruncSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ambient {
    /// Gr(2,m) with `m >= 2`.
    Finite(u32),
    /// No box truncation; the inverse limit over all `m`.
    Stable,
}

impl Ambient {
    pub fn m(self) -> Option<u32> {
        match self {
            Ambient::Finite(m) => Some(m),
            Ambient::Stable => None,
        }
    }

    pub fn require_m(self) -> Result<u32> {
        self.m().ok_or(Error::StableAmbient)
    }

    pub fn contains(self, p: Partition2) -> bool {
        match self {
            Ambient::Finite(m) => p.i + 2 <= m,
            Ambient::Stable => true,
        }
    }

    /// Complex dimension `2m-4`, the degree of the point class.
    pub fn top_degree(self) -> Option<u32> {
        self.m().map(|m| 2 * m - 4)
    }

    pub fn to_json(self) -> Value {
        match self {
            Ambient::Finite(m) => json!(m),
            Ambient::Stable => json!("stable"),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) if s == "stable" => Ok(Ambient::Stable),
            Value::Number(n) => n
                .as_u64()
                .map(|m| Ambient::Finite(m as u32))
                .ok_or_else(|| Error::Json(format!("bad ambient {n}"))),
            other => Err(Error::Json(format!("bad ambient {other}"))),
        }
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ambient::Finite(m) => write!(f, "Gr(2,{m})"),
            Ambient::Stable => write!(f, "stable"),
        }
    }
}

/// Type `(i,j)` of the Schubert cycle `ω_{i,j}`, with `i >= j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition2 {
    pub i: u32,
    pub j: u32,
}

impl Partition2 {
    pub fn new(i: u32, j: u32) -> Result<Self> {
        if i < j {
            return Err(Error::InvalidPartition {
                i: i as i64,
                j: j as i64,
            });
        }
        Ok(Self { i, j })
    }

    pub fn degree(self) -> u32 {
        self.i + self.j
    }
}

impl fmt::Display for Partition2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

fn check_in_box(m: u32, p: Partition2) -> Result<()> {
    if p.i + 2 > m {
        return Err(Error::OutsideBox {
            partition: p.to_string(),
            d: 2,
            m,
        });
    }
    Ok(())
}

/// `ω_p · ω_q` in the basis; every coefficient of a product of two basis
/// cycles on Gr(2,m) is 0 or 1, so a list of partitions is enough.
///
/// Factor `ω_{i,j} = ω_{i-j,0} ω_{1,1}^j`, multiply the two special cycles
/// with the two-row Pieri rule, then shift by `ω_{1,1}^{j+l}`.
pub fn basis_product(ambient: Ambient, p: Partition2, q: Partition2) -> Vec<Partition2> {
    let s = p.i - p.j;
    let t = q.i - q.j;
    let base = p.j + q.j;
    let hi = s.min(t);
    // first index s+t-u+base must stay <= m-2
    let lo = match ambient {
        Ambient::Finite(m) => {
            let cap = m as i64 - 2;
            (s as i64 + t as i64 + base as i64 - cap).max(0)
        }
        Ambient::Stable => 0,
    };
    if lo > hi as i64 {
        return Vec::new();
    }
    (lo as u32..=hi)
        .map(|u| Partition2 {
            i: s + t - u + base,
            j: u + base,
        })
        .collect()
}

/// Dual cycle `(m-2-j, m-2-i)`: pairs to 1 with `ω_{i,j}`.
pub fn dual_cycle(m: u32, p: Partition2) -> Result<Partition2> {
    check_in_box(m, p)?;
    Ok(Partition2 {
        i: m - 2 - p.j,
        j: m - 2 - p.i,
    })
}

/// Top-degree value of `ω_{i,j} · ω_{1,0}^{2m-4-i-j}`:
/// `(2m-4-i-j)! (i-j+1) / ((m-2-i)! (m-1-j)!)`, the hook-length count of
/// standard tableaux on the complementary two-row shape.
///
/// The variant with `(i-j+1)!` in the numerator circulates too; it agrees
/// only for `i - j <= 1` (at m = 4 it gives 2 for `ω_{2,0}`, the true value is 1).
pub fn degree_of(m: u32, p: Partition2) -> Result<BigInt> {
    check_in_box(m, p)?;
    let (m, i, j) = (m as u64, p.i as u64, p.j as u64);
    let num = factorial(2 * m - 4 - i - j) * BigInt::from(i - j + 1);
    let den = factorial(m - 2 - i) * factorial(m - 1 - j);
    Ok(num / den)
}

/// All partitions in the box of Gr(2,m) of a given degree, ordered by `j`.
pub fn basis_of_degree(m: u32, k: u32) -> Vec<Partition2> {
    let cap = m.saturating_sub(2);
    (0..=k / 2)
        .filter_map(|j| {
            let i = k - j;
            (i <= cap).then_some(Partition2 { i, j })
        })
        .collect()
}

/// Every partition in the box of Gr(2,m), in lexicographic order.
pub fn full_basis(m: u32) -> Vec<Partition2> {
    let cap = m.saturating_sub(2);
    let mut out = Vec::new();
    for i in 0..=cap {
        for j in 0..=i {
            out.push(Partition2 { i, j });
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct SchubertClass<C> {
    ambient: Ambient,
    terms: BTreeMap<Partition2, C>,
}

impl<C: Coeff> SchubertClass<C> {
    pub fn zero(ambient: Ambient) -> Self {
        Self {
            ambient,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ambient: Ambient) -> Self {
        Self::term(ambient, Partition2 { i: 0, j: 0 }, C::one())
    }

    /// `coeff · ω_p`; zero when `p` falls outside the box.
    pub fn term(ambient: Ambient, p: Partition2, coeff: C) -> Self {
        let mut out = Self::zero(ambient);
        out.add_term(p, &coeff);
        out
    }

    /// The basis cycle `ω_{i,j}`; `i < j` is rejected.
    pub fn cycle(ambient: Ambient, i: u32, j: u32) -> Result<Self> {
        Ok(Self::term(ambient, Partition2::new(i, j)?, C::one()))
    }

    pub fn from_terms<I>(ambient: Ambient, terms: I) -> Self
    where
        I: IntoIterator<Item = (Partition2, C)>,
    {
        let mut out = Self::zero(ambient);
        for (p, c) in terms {
            out.add_term(p, &c);
        }
        out
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition2, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, p: Partition2) -> C {
        self.terms.get(&p).cloned().unwrap_or_else(C::zero)
    }

    pub fn coeff_ij(&self, i: u32, j: u32) -> C {
        self.coeff(Partition2 { i, j })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, p: Partition2, coeff: &C) {
        if coeff.is_zero() || !self.ambient.contains(p) {
            return;
        }
        match self.terms.get_mut(&p) {
            Some(slot) => {
                slot.add_assign_ref(coeff);
                if slot.is_zero() {
                    self.terms.remove(&p);
                }
            }
            None => {
                self.terms.insert(p, coeff.clone());
            }
        }
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch {
                left: self.ambient.to_string(),
                right: other.ambient.to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(*p, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(*p, &c.neg_ref());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg_ref())
    }

    pub fn scale(&self, k: &C) -> Self {
        let mut out = Self::zero(self.ambient);
        for (p, c) in &self.terms {
            out.add_term(*p, &c.mul_ref(k));
        }
        out
    }

    /// Product in the ring, with box truncation.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        Ok(self.mul_unchecked(other, None))
    }

    /// Product keeping only pieces of degree `<= max_degree`.
    pub fn mul_upto(&self, other: &Self, max_degree: u32) -> Result<Self> {
        self.check_ambient(other)?;
        Ok(self.mul_unchecked(other, Some(max_degree)))
    }

    fn mul_unchecked(&self, other: &Self, max_degree: Option<u32>) -> Self {
        let mut out = Self::zero(self.ambient);
        for (p, x) in &self.terms {
            for (q, y) in &other.terms {
                if max_degree.is_some_and(|d| p.degree() + q.degree() > d) {
                    continue;
                }
                let xy = x.mul_ref(y);
                for r in basis_product(self.ambient, *p, *q) {
                    out.add_term(r, &xy);
                }
            }
        }
        out
    }

    pub fn pow(&self, exp: u32) -> Self {
        self.pow_upto(exp, None)
    }

    /// Binary exponentiation, dropping degrees above `max_degree` as it goes.
    pub fn pow_upto(&self, exp: u32, max_degree: Option<u32>) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.ambient);
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base, max_degree);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base, max_degree);
            }
        }
        acc
    }

    /// Degree of the single graded piece, `None` for zero or mixed classes.
    pub fn pure_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|p| p.degree());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|p| p.degree()).max()
    }

    pub fn graded_piece(&self, k: u32) -> Self {
        Self {
            ambient: self.ambient,
            terms: self
                .terms
                .iter()
                .filter(|(p, _)| p.degree() == k)
                .map(|(p, c)| (*p, c.clone()))
                .collect(),
        }
    }

    /// Degree pieces `0..=max_degree`; absent degrees give zero classes.
    pub fn graded_pieces(&self, max_degree: u32) -> Vec<Self> {
        let mut out = vec![Self::zero(self.ambient); max_degree as usize + 1];
        for (p, c) in &self.terms {
            if p.degree() <= max_degree {
                out[p.degree() as usize].terms.insert(*p, c.clone());
            }
        }
        out
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> SchubertClass<D> {
        let mut out = SchubertClass::zero(self.ambient);
        for (p, c) in &self.terms {
            out.add_term(*p, &f(c));
        }
        out
    }

    /// Coefficient of the point class `ω_{m-2,m-2}`.
    pub fn top_value(&self) -> Result<C> {
        let m = self.ambient.require_m()?;
        Ok(self.coeff_ij(m - 2, m - 2))
    }

    /// Intersection number of two classes of complementary degree.
    pub fn pairing(&self, other: &Self) -> Result<C> {
        self.check_ambient(other)?;
        let m = self.ambient.require_m()?;
        let top = 2 * m - 4;
        let (dl, dr) = match (self.degree_or_zero()?, other.degree_or_zero()?) {
            (None, _) | (_, None) => return Ok(C::zero()),
            (Some(l), Some(r)) => (l, r),
        };
        if dl + dr != top {
            return Err(Error::DegreeMismatch {
                left: dl,
                right: dr,
                top,
            });
        }
        let mut acc = C::zero();
        for (p, x) in &self.terms {
            let q = dual_cycle(m, *p)?;
            if let Some(y) = other.terms.get(&q) {
                acc.add_assign_ref(&x.mul_ref(y));
            }
        }
        Ok(acc)
    }

    fn degree_or_zero(&self) -> Result<Option<u32>> {
        if self.is_zero() {
            return Ok(None);
        }
        self.pure_degree().map(Some).ok_or(Error::NotHomogeneous)
    }

    /// `ω_{1,0}^p ω_{1,1}^q`.
    pub fn monomial(ambient: Ambient, p: u32, q: u32) -> Self {
        // ω_{1,1}^q is the single cycle ω_{q,q}
        let w11q = Self::term(ambient, Partition2 { i: q, j: q }, C::one());
        let w10 = Self::term(ambient, Partition2 { i: 1, j: 0 }, C::one());
        let mut acc = w11q;
        for _ in 0..p {
            acc = acc.mul_unchecked(&w10, None);
        }
        acc
    }

    /// Coordinates in the monomial basis `ω_{1,0}^{k-2i} ω_{1,1}^i`, `i = 0..=k/2`.
    ///
    /// The monomial with index `i` has leading cycle `ω_{k-i,i}`, so the
    /// conversion is a triangular solve from `i = 0` upward.
    pub fn to_monomial_deg(&self, k: u32) -> Result<Vec<C>> {
        if self.terms.keys().any(|p| p.degree() != k) {
            return Err(Error::NotHomogeneous);
        }
        if let Ambient::Finite(m) = self.ambient {
            if k + 2 > m {
                return Err(Error::DegreeTooHigh {
                    degree: k,
                    limit: m - 2,
                });
            }
        }
        let mut rest = self.clone();
        let mut out = Vec::with_capacity(k as usize / 2 + 1);
        for i in 0..=k / 2 {
            let lead = rest.coeff_ij(k - i, i);
            if !lead.is_zero() {
                let mono = Self::monomial(self.ambient, k - 2 * i, i);
                rest = rest.sub(&mono.scale(&lead))?;
            }
            out.push(lead);
        }
        debug_assert!(rest.is_zero());
        Ok(out)
    }

    /// As [`to_monomial_deg`](Self::to_monomial_deg), inferring the degree
    /// (the zero class counts as degree 0).
    pub fn to_monomial(&self) -> Result<Vec<C>> {
        let k = self.degree_or_zero()?.unwrap_or_default();
        self.to_monomial_deg(k)
    }

    /// Inverse of [`to_monomial_deg`](Self::to_monomial_deg).
    pub fn from_monomial(ambient: Ambient, k: u32, coords: &[C]) -> Self {
        let mut out = Self::zero(ambient);
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = Self::monomial(ambient, k - 2 * i as u32, i as u32);
            for (p, x) in &mono.terms {
                out.add_term(*p, &x.mul_ref(c));
            }
        }
        out
    }

    /// Image in `Z[x]/(x^{m-1})` under `ω_{1,0} ↦ x`, `ω_{1,1} ↦ 0`.
    ///
    /// The `x^k` coefficient is the `ω_{1,0}^k` coordinate of the degree-k
    /// piece; pieces above `m-2` vanish there.
    pub fn project_q10(&self) -> Result<TruncSeries<C>> {
        let m = self.ambient.require_m()?;
        let order = (m - 1) as usize;
        let pieces = self.graded_pieces(m - 2);
        let mut coeffs = Vec::with_capacity(order);
        for (k, piece) in pieces.iter().enumerate() {
            let coords = piece.to_monomial_deg(k as u32)?;
            coeffs.push(coords[0].clone());
        }
        Ok(TruncSeries::new(order, coeffs))
    }

    /// Image in `Z[y]/(y^{⌊(m-2)/2⌋+1})` under `ω_{1,0} ↦ 0`, `ω_{1,1} ↦ y`.
    pub fn project_q11(&self) -> Result<TruncSeries<C>> {
        let m = self.ambient.require_m()?;
        let order = ((m - 2) / 2 + 1) as usize;
        let pieces = self.graded_pieces(m - 2);
        let mut coeffs = Vec::with_capacity(order);
        for k in 0..order {
            let deg = 2 * k as u32;
            let coords = pieces[deg as usize].to_monomial_deg(deg)?;
            coeffs.push(coords[k].clone());
        }
        Ok(TruncSeries::new(order, coeffs))
    }

    /// Re-embeds the class in another ambient, dropping out-of-box terms.
    pub fn with_ambient(&self, ambient: Ambient) -> Self {
        Self::from_terms(ambient, self.terms.iter().map(|(p, c)| (*p, c.clone())))
    }

    /// `{"m": int | "stable", "terms": [{"i","j","coeff"}]}`, terms sorted by `(i,j)`.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(p, c)| json!({"i": p.i, "j": p.j, "coeff": c.to_json()}))
            .collect();
        json!({"m": self.ambient.to_json(), "terms": terms})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let ambient = Ambient::from_json(&v["m"])?;
        let terms = v["terms"]
            .as_array()
            .ok_or_else(|| Error::Json("missing terms".into()))?;
        let mut out = Self::zero(ambient);
        for t in terms {
            let get = |k: &str| {
                t[k].as_u64()
                    .map(|x| x as u32)
                    .ok_or_else(|| Error::Json(format!("missing {k}")))
            };
            let p = Partition2::new(get("i")?, get("j")?)?;
            if let Ambient::Finite(m) = ambient {
                check_in_box(m, p)?;
            }
            out.add_term(p, &C::from_json(&t["coeff"])?);
        }
        Ok(out)
    }
}

impl SchubertClass<PolyABC> {
    pub fn evaluate(&self, a: &BigInt, b: &BigInt, c: &BigInt) -> SchubertClass<BigInt> {
        self.map(|p| p.evaluate(a, b, c))
    }

    pub fn evaluate_i64(&self, a: i64, b: i64, c: i64) -> SchubertClass<BigInt> {
        self.evaluate(&BigInt::from(a), &BigInt::from(b), &BigInt::from(c))
    }
}

impl SchubertClass<BigInt> {
    /// Every coefficient is `>= 0`.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| c.sign() != num_bigint::Sign::Minus)
    }
}

/// Wraps multi-term coefficients in parentheses when printing a class.
pub trait CoeffDisplay {
    fn fmt_coeff(&self) -> Option<String>;
    fn is_negative_simple(&self) -> bool;
}

impl CoeffDisplay for BigInt {
    fn fmt_coeff(&self) -> Option<String> {
        let mag = if self.sign() == num_bigint::Sign::Minus {
            -self
        } else {
            self.clone()
        };
        (!mag.is_one()).then(|| mag.to_string())
    }

    fn is_negative_simple(&self) -> bool {
        self.sign() == num_bigint::Sign::Minus
    }
}

impl CoeffDisplay for PolyABC {
    fn fmt_coeff(&self) -> Option<String> {
        match self.as_constant() {
            Some(k) => k.fmt_coeff(),
            None if self.num_terms() == 1 => {
                let s = self.to_string();
                Some(s.trim_start_matches('-').to_string())
            }
            None => Some(format!("({self})")),
        }
    }

    fn is_negative_simple(&self) -> bool {
        match self.as_constant() {
            Some(k) => k.is_negative_simple(),
            None => self.num_terms() == 1 && self.to_string().starts_with('-'),
        }
    }
}

impl<C: Coeff + CoeffDisplay> fmt::Display for SchubertClass<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest degree first, then larger first index
        let mut items: Vec<_> = self.terms.iter().collect();
        items.sort_by(|(p, _), (q, _)| q.degree().cmp(&p.degree()).then(q.i.cmp(&p.i)));
        for (idx, (p, c)) in items.into_iter().enumerate() {
            let neg = c.is_negative_simple();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let cs = c.fmt_coeff();
            let is_unit_cycle = p.i == 0 && p.j == 0;
            match (cs, is_unit_cycle) {
                (Some(s), true) => write!(f, "{s}")?,
                (None, true) => write!(f, "1")?,
                (Some(s), false) => write!(f, "{s}ω_{{{},{}}}", p.i, p.j)?,
                (None, false) => write!(f, "ω_{{{},{}}}", p.i, p.j)?,
            }
        }
        Ok(())
    }
}
