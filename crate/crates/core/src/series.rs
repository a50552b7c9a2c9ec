//! Truncated univariate power series `C[x]/(x^k)`.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ring::{binomial, Coeff};

/// A polynomial of degree `< order`; arithmetic discards degrees `>= order`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries<C> {
    coeffs: Vec<C>,
}

impl<C: Coeff> TruncSeries<C> {
    /// Pads with zeros or truncates `coeffs` to exactly `order` entries.
    pub fn new(order: usize, mut coeffs: Vec<C>) -> Self {
        coeffs.resize(order, C::zero());
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(order, Vec::new())
    }

    pub fn one(order: usize) -> Self {
        Self::new(order, vec![C::one()])
    }

    pub fn from_ints(order: usize, coeffs: &[i64]) -> Self {
        Self::new(order, coeffs.iter().map(|&c| C::from_int(c)).collect())
    }

    /// `(1 + x)^e` for any integer exponent, negative ones via the binomial series.
    pub fn one_plus_x_pow(order: usize, e: i64) -> Self {
        let coeffs = (0..order as u64)
            .map(|k| {
                let v = if e >= 0 {
                    binomial(e as u64, k)
                } else {
                    // (1+x)^(-m) = sum (-1)^k C(m+k-1, k) x^k
                    let m = (-e) as u64;
                    let c = binomial(m + k - 1, k);
                    if k % 2 == 0 {
                        c
                    } else {
                        -c
                    }
                };
                C::from_bigint(&v)
            })
            .collect();
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(x, y)| x.add_ref(y))
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(x, y)| x.sub_ref(y))
                .collect(),
        })
    }

    pub fn scale(&self, k: &C) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|x| x.mul_ref(k)).collect(),
        }
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let k = self.order();
        let mut out = vec![C::zero(); k];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs[..k - i].iter().enumerate() {
                if !y.is_zero() {
                    out[i + j].add_assign_ref(&x.mul_ref(y));
                }
            }
        }
        Ok(Self { coeffs: out })
    }

    /// `h` with `h * divisor = self` modulo `x^order`, by forward substitution.
    pub fn div(&self, divisor: &Self) -> Result<Self> {
        self.check_order(divisor)?;
        let k = self.order();
        if k == 0 {
            return Ok(self.clone());
        }
        let inv = divisor.coeffs[0]
            .unit_inverse()
            .ok_or(Error::NonUnitConstant)?;
        let mut out: Vec<C> = Vec::with_capacity(k);
        for t in 0..k {
            let mut acc = self.coeffs[t].clone();
            for (i, h) in out.iter().enumerate() {
                let g = &divisor.coeffs[t - i];
                if !g.is_zero() && !h.is_zero() {
                    acc.sub_assign_ref(&h.mul_ref(g));
                }
            }
            out.push(acc.mul_ref(&inv));
        }
        Ok(Self { coeffs: out })
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order());
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same order");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same order");
            }
        }
        acc
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> TruncSeries<D> {
        TruncSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

impl TruncSeries<BigInt> {
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl<C: Coeff + fmt::Display> fmt::Display for TruncSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " mod x^{}", self.order())
    }
}

impl<C: Coeff> TruncSeries<C> {
    pub fn is_one(&self) -> bool {
        self.coeffs.first().is_some_and(|c| c.is_one())
            && self.coeffs.iter().skip(1).all(|c| c.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyABC;
    use num_traits::One;

    type S = TruncSeries<BigInt>;

    fn s(order: usize, c: &[i64]) -> S {
        S::from_ints(order, c)
    }

    #[test]
    fn difference_of_squares() {
        let f = s(3, &[1, 1]);
        let g = s(3, &[1, -1]);
        assert_eq!(f.mul(&g).unwrap(), s(3, &[1, 0, -1]));
    }

    #[test]
    fn product_with_geometric_series() {
        // (1 + 4x) * (1 - x)^-1 = (1 + 4x)(1 + x + x^2 + ...) = 1 + 5x + 5x^2
        let geo = s(3, &[1, 1, 1]);
        assert_eq!(s(3, &[1, 4]).mul(&geo).unwrap(), s(3, &[1, 5, 5]));
        let via_div = s(3, &[1, 4]).div(&s(3, &[1, -1])).unwrap();
        assert_eq!(via_div, s(3, &[1, 5, 5]));
    }

    #[test]
    fn division_by_one_plus_x() {
        let q = s(5, &[1, 0, -1]).div(&s(5, &[1, 1])).unwrap();
        assert_eq!(q, s(5, &[1, -1]));
    }

    #[test]
    fn identity_divisor() {
        let f = s(4, &[3, -2, 7, 11]);
        assert_eq!(f.div(&S::one(4)).unwrap(), f);
    }

    #[test]
    fn inverse_binomial_power() {
        // 1/(1+x)^m = 1 - m x + C(m+1,2) x^2 mod x^3
        for m in 1..12u64 {
            let inv = S::one(3).div(&S::one_plus_x_pow(3, m as i64)).unwrap();
            let expect = s(3, &[1, -(m as i64), (m * (m + 1) / 2) as i64]);
            assert_eq!(inv, expect);
            assert_eq!(S::one_plus_x_pow(3, -(m as i64)), expect);
        }
    }

    #[test]
    fn errors() {
        assert_eq!(
            s(3, &[1]).mul(&s(4, &[1])),
            Err(Error::OrderMismatch { left: 3, right: 4 })
        );
        assert_eq!(s(3, &[1]).div(&s(3, &[2, 1])), Err(Error::NonUnitConstant));
        assert_eq!(s(3, &[1]).div(&s(3, &[0, 1])), Err(Error::NonUnitConstant));
    }

    #[test]
    fn polynomial_coefficients() {
        type P = TruncSeries<PolyABC>;
        let a = PolyABC::a();
        let f = P::new(3, vec![PolyABC::one(), a.clone()]);
        let sq = f.mul(&f).unwrap();
        assert_eq!(sq.coeff(2), a.clone() * a.clone());
        assert_eq!(sq.div(&f).unwrap(), f);
        let bad = P::new(3, vec![a.clone(), PolyABC::one()]);
        assert_eq!(f.div(&bad), Err(Error::NonUnitConstant));
    }
}
