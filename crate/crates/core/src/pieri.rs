//! Pieri rule for special classes on Gr(d,m), any `d`.
//!
//! Used as an independent oracle for the two-row product and for the Chern
//! classes of the tautological bundles.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::schubert::{Ambient, Partition2, SchubertClass};

/// Weakly decreasing, non-negative `a_1 >= ... >= a_d`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartitionD(Vec<u32>);

impl PartitionD {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition {
                i: parts[0] as i64,
                j: *parts.last().unwrap() as i64,
            });
        }
        Ok(Self(parts))
    }

    pub fn empty(d: usize) -> Self {
        Self(vec![0; d])
    }

    /// `(h, 0, ..., 0)`.
    pub fn special(d: usize, h: u32) -> Self {
        let mut v = vec![0; d];
        v[0] = h;
        Self(v)
    }

    /// `(1, ..., 1, 0, ..., 0)` with `k` ones.
    pub fn column(d: usize, k: usize) -> Self {
        Self((0..d).map(|t| u32::from(t < k)).collect())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn fits(&self, d: usize, m: u32) -> bool {
        self.0.len() == d && self.0.first().is_none_or(|&a| a + d as u32 <= m)
    }
}

impl fmt::Display for PartitionD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

pub type ClassD = BTreeMap<PartitionD, BigInt>;

/// Partitions `b` with `m-d >= b_1 >= a_1 >= b_2 >= a_2 >= ... >= b_d >= a_d`
/// and `|b| = |a| + h`.
fn interlacing(a: &[u32], cap: u32, h: u32) -> Vec<Vec<u32>> {
    fn go(a: &[u32], t: usize, upper: u32, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if t == a.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let lo = a[t];
        let hi = upper.min(lo + left);
        if hi < lo {
            return;
        }
        for b in lo..=hi {
            cur.push(b);
            go(a, t + 1, a[t], left - (b - lo), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(a, 0, cap, h, &mut Vec::new(), &mut out);
    out
}

/// Linear extension of `ω_a · ω_{h,0,...,0}` on Gr(d,m).
pub fn pieri_special(d: usize, m: u32, cls: &ClassD, h: u32) -> Result<ClassD> {
    let cap = m - d as u32;
    if h > cap {
        return Err(Error::SpecialIndexOutOfRange { h, max: cap });
    }
    let mut out = ClassD::new();
    for (a, coeff) in cls {
        if !a.fits(d, m) {
            return Err(Error::OutsideBox {
                partition: a.to_string(),
                d: d as u32,
                m,
            });
        }
        if coeff.is_zero() {
            continue;
        }
        for b in interlacing(&a.0, cap, h) {
            let slot = out.entry(PartitionD(b)).or_insert_with(BigInt::zero);
            *slot += coeff;
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// `c(E(d,m)) = 1 + Σ_k (-1)^k ω_{1^k}`.
pub fn chern_universal(d: usize, m: u32) -> ClassD {
    debug_assert!(d < m as usize);
    (0..=d)
        .map(|k| {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            (PartitionD::column(d, k), BigInt::from(sign))
        })
        .collect()
}

/// `c(Q(d,m)) = 1 + Σ_{k=1}^{m-d} ω_{k,0,...,0}`.
pub fn chern_quotient(d: usize, m: u32) -> ClassD {
    (0..=m - d as u32)
        .map(|k| (PartitionD::special(d, k), BigInt::one()))
        .collect()
}

/// Reads a `d = 2` class as a [`SchubertClass`] on Gr(2,m).
pub fn to_class2(m: u32, cls: &ClassD) -> Result<SchubertClass<BigInt>> {
    let mut out = SchubertClass::zero(Ambient::Finite(m));
    for (a, c) in cls {
        if a.len() != 2 {
            return Err(Error::InvalidBox(format!("{a} is not a two-row partition")));
        }
        out.add_term(Partition2::new(a.0[0], a.0[1])?, c);
    }
    Ok(out)
}

pub fn from_class2(cls: &SchubertClass<BigInt>) -> ClassD {
    cls.terms()
        .map(|(p, c)| (PartitionD(vec![p.i, p.j]), c.clone()))
        .collect()
}
