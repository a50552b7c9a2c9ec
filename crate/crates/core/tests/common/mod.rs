//! Strategies and test-side oracles shared by the integration targets.
#![allow(dead_code)]

use grasslin_core::schubert::{dual_cycle, full_basis, Ambient, Partition2, SchubertClass};
use grasslin_core::{BigInt, IntClass, PolyABC, SymClass, TruncSeries};
use proptest::prelude::*;
use proptest::test_runner::{TestCaseError, TestCaseResult};

pub fn small_int() -> impl Strategy<Value = BigInt> {
    (-30i64..=30).prop_map(BigInt::from)
}

pub fn poly() -> impl Strategy<Value = PolyABC> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -12i64..=12), 0..5).prop_map(|ts| {
        PolyABC::from_terms(ts.into_iter().map(|((x, y, z), k)| ([x, y, z], BigInt::from(k))))
    })
}

pub fn series(order: usize) -> impl Strategy<Value = TruncSeries<BigInt>> {
    prop::collection::vec(-20i64..=20, order).prop_map(move |v| TruncSeries::from_ints(order, &v))
}

/// Series with constant term ±1, hence invertible.
pub fn unit_series(order: usize) -> impl Strategy<Value = TruncSeries<BigInt>> {
    (prop::bool::ANY, prop::collection::vec(-20i64..=20, order)).prop_map(move |(neg, mut v)| {
        if order > 0 {
            v[0] = if neg { -1 } else { 1 };
        }
        TruncSeries::from_ints(order, &v)
    })
}

pub fn class_in(m: u32, max_terms: usize) -> impl Strategy<Value = IntClass> {
    let basis = full_basis(m);
    let n = basis.len();
    prop::collection::vec((0..n, -9i64..=9), 0..=max_terms).prop_map(move |ts| {
        IntClass::from_terms(
            Ambient::Finite(m),
            ts.into_iter().map(|(idx, k)| (basis[idx], BigInt::from(k))),
        )
    })
}

/// `(m, x, y, z)` with three random classes in Gr(2,m), `4 <= m <= 10`.
pub fn class_triple() -> impl Strategy<Value = (u32, IntClass, IntClass, IntClass)> {
    (4u32..=10).prop_flat_map(|m| (Just(m), class_in(m, 4), class_in(m, 4), class_in(m, 4)))
}

pub fn sym_class_in(m: u32) -> impl Strategy<Value = SymClass> {
    let basis = full_basis(m);
    let n = basis.len();
    prop::collection::vec((0..n, poly()), 0..=3).prop_map(move |ts| {
        SymClass::from_terms(Ambient::Finite(m), ts.into_iter().map(|(idx, p)| (basis[idx], p)))
    })
}

/// A homogeneous class of degree `k <= m-2`, returned with `(m, k)`.
pub fn homogeneous_class() -> impl Strategy<Value = (u32, u32, IntClass)> {
    (4u32..=10)
        .prop_flat_map(|m| (Just(m), 0..=m - 2))
        .prop_flat_map(|(m, k)| {
            let cells: Vec<Partition2> = (0..=k / 2).map(|j| Partition2 { i: k - j, j }).collect();
            let len = cells.len();
            (
                Just(m),
                Just(k),
                prop::collection::vec(-9i64..=9, len).prop_map(move |ks| {
                    IntClass::from_terms(
                        Ambient::Finite(m),
                        cells.iter().copied().zip(ks.into_iter().map(BigInt::from)),
                    )
                }),
            )
        })
}

/// `(m, p, q)` with `|p| + |q| = 2m - 4`, both in the box.
pub fn complementary_pair() -> impl Strategy<Value = (u32, Partition2, Partition2)> {
    (4u32..=10).prop_flat_map(|m| {
        let basis = full_basis(m);
        let n = basis.len();
        (Just(m), 0..n, any::<prop::sample::Index>()).prop_map(move |(m, pi, qi)| {
            let p = basis[pi];
            let comp: Vec<Partition2> = basis
                .iter()
                .copied()
                .filter(|q| q.degree() + p.degree() == 2 * m - 4)
                .collect();
            (m, p, comp[qi.index(comp.len())])
        })
    })
}

pub fn ensure(cond: bool, msg: impl Into<String>) -> TestCaseResult {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg.into()))
    }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, TestCaseError> {
    r.map_err(|e| TestCaseError::fail(e.to_string()))
}

pub fn poly_ring_axioms((x, y, z): (PolyABC, PolyABC, PolyABC)) -> TestCaseResult {
    let zero = PolyABC::default();
    let one = PolyABC::constant(1);
    ensure(x.clone() + y.clone() == y.clone() + x.clone(), "add comm")?;
    ensure(x.clone() * y.clone() == y.clone() * x.clone(), "mul comm")?;
    ensure((x.clone() * y.clone()) * z.clone() == x.clone() * (y.clone() * z.clone()), "mul assoc")?;
    ensure((x.clone() + y.clone()) + z.clone() == x.clone() + (y.clone() + z.clone()), "add assoc")?;
    ensure(
        x.clone() * (y.clone() + z.clone()) == x.clone() * y.clone() + x.clone() * z.clone(),
        "distributivity",
    )?;
    ensure(x.clone() * one == x, "unit")?;
    ensure(x.clone() + zero.clone() == x, "zero")?;
    ensure(x.clone() - x.clone() == zero, "inverse")
}

pub fn series_ring_axioms(
    (x, y, u): (TruncSeries<BigInt>, TruncSeries<BigInt>, TruncSeries<BigInt>),
) -> TestCaseResult {
    let order = x.order();
    ensure(ok(x.mul(&y))? == ok(y.mul(&x))?, "mul comm")?;
    ensure(ok(ok(x.mul(&y))?.mul(&u))? == ok(x.mul(&ok(y.mul(&u))?))?, "mul assoc")?;
    ensure(
        ok(x.mul(&ok(y.add(&u))?))? == ok(ok(x.mul(&y))?.add(&ok(x.mul(&u))?))?,
        "distributivity",
    )?;
    ensure(ok(x.mul(&TruncSeries::one(order)))? == x, "unit")?;
    // u is a unit
    ensure(ok(ok(x.mul(&u))?.div(&u))? == x, "div after mul")?;
    ensure(ok(ok(x.div(&u))?.mul(&u))? == x, "mul after div")
}

pub fn schubert_ring_axioms((m, x, y, z): (u32, IntClass, IntClass, IntClass)) -> TestCaseResult {
    let one = IntClass::one(Ambient::Finite(m));
    let xy = ok(x.mul(&y))?;
    ensure(xy == ok(y.mul(&x))?, "mul comm")?;
    ensure(ok(xy.mul(&z))? == ok(x.mul(&ok(y.mul(&z))?))?, "mul assoc")?;
    ensure(
        ok(x.mul(&ok(y.add(&z))?))? == ok(xy.add(&ok(x.mul(&z))?))?,
        "distributivity",
    )?;
    ensure(ok(x.mul(&one))? == x, "unit")?;
    ensure(ok(x.add(&x.neg()))?.is_zero(), "inverse")
}

pub fn pairing_duality((m, p, q): (u32, Partition2, Partition2)) -> TestCaseResult {
    let amb = Ambient::Finite(m);
    let wp = IntClass::term(amb, p, BigInt::from(1));
    let wq = IntClass::term(amb, q, BigInt::from(1));
    let d = ok(dual_cycle(m, p))?;
    ensure(ok(dual_cycle(m, d))? == p, "dual is an involution")?;
    // dual of (i,j) is (m-2-j, m-2-i), written out independently
    ensure(d == Partition2 { i: m - 2 - p.j, j: m - 2 - p.i }, "dual formula")?;
    let v = ok(wp.pairing(&wq))?;
    ensure(v == ok(wq.pairing(&wp))?, "pairing symmetric")?;
    let expect = if q == d { 1 } else { 0 };
    ensure(v == BigInt::from(expect), format!("⟨{p},{q}⟩ = {v} in Gr(2,{m})"))
}

pub fn basis_round_trip((m, k, x): (u32, u32, IntClass)) -> TestCaseResult {
    let coords = ok(x.to_monomial_deg(k))?;
    ensure(coords.len() == (k / 2 + 1) as usize, "coordinate count")?;
    let back = SchubertClass::from_monomial(Ambient::Finite(m), k, &coords);
    ensure(back == x, "from_monomial ∘ to_monomial")?;
    let again = ok(back.to_monomial_deg(k))?;
    ensure(again == coords, "to_monomial ∘ from_monomial")
}

pub fn evaluation_homomorphism(
    (m, x, y, (a, b, c)): (u32, SymClass, SymClass, (BigInt, BigInt, BigInt)),
) -> TestCaseResult {
    let _ = m;
    let ev = |s: &SymClass| s.evaluate(&a, &b, &c);
    ensure(ev(&ok(x.mul(&y))?) == ok(ev(&x).mul(&ev(&y)))?, "product")?;
    ensure(ev(&ok(x.add(&y))?) == ok(ev(&x).add(&ev(&y)))?, "sum")?;
    for (_, p) in x.terms() {
        for (_, q) in y.terms() {
            let lhs = (p.clone() * q.clone()).evaluate(&a, &b, &c);
            ensure(lhs == p.evaluate(&a, &b, &c) * q.evaluate(&a, &b, &c), "polynomial product")?;
        }
    }
    Ok(())
}

pub fn sym_pair_with_point() -> impl Strategy<Value = (u32, SymClass, SymClass, (BigInt, BigInt, BigInt))> {
    (4u32..=10).prop_flat_map(|m| {
        (Just(m), sym_class_in(m), sym_class_in(m), (small_int(), small_int(), small_int()))
    })
}

/// Image of a class under `ω_{1,0} ↦ x`, `ω_{1,1} ↦ 0`, truncated at `x^{m-1}`.
///
/// Since `ω_{i,j} = ω_{1,1}^j ω_{i-j,0}` and `ω_{k,0} ↦ x^k`, only the
/// cycles `ω_{i,0}` with `i <= m-2` survive.
pub fn oracle_q10(x: &IntClass, m: u32) -> Vec<BigInt> {
    let mut out = vec![BigInt::from(0); (m - 1) as usize];
    for (p, c) in x.terms() {
        if p.j == 0 && p.i + 2 <= m {
            out[p.i as usize] += c;
        }
    }
    out
}

/// Image under `ω_{1,0} ↦ 0`, `ω_{1,1} ↦ y`, truncated at `y^{⌊(m-2)/2⌋+1}`.
/// `ω_{2r,0} ↦ (-y)^r` and odd specials vanish.
pub fn oracle_q11(x: &IntClass, m: u32) -> Vec<BigInt> {
    let order = ((m - 2) / 2 + 1) as usize;
    let mut out = vec![BigInt::from(0); order];
    for (p, c) in x.terms() {
        let s = p.i - p.j;
        if s % 2 == 1 || p.degree() > m - 2 {
            continue;
        }
        let r = (p.degree() / 2) as usize;
        if (s / 2) % 2 == 0 {
            out[r] += c;
        } else {
            out[r] -= c;
        }
    }
    out
}

/// Plain truncated polynomial arithmetic on coefficient vectors.
pub fn vmul(x: &[BigInt], y: &[BigInt], order: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::from(0); order];
    for (i, a) in x.iter().enumerate().take(order) {
        for (j, b) in y.iter().enumerate().take(order - i) {
            out[i + j] += a * b;
        }
    }
    out
}

pub fn vpow(x: &[BigInt], e: u32, order: usize) -> Vec<BigInt> {
    let mut acc = vec![BigInt::from(0); order];
    acc[0] = BigInt::from(1);
    for _ in 0..e {
        acc = vmul(&acc, x, order);
    }
    acc
}

/// `num / den` for `den[0] = 1`, by long division.
pub fn vdiv(num: &[BigInt], den: &[BigInt], order: usize) -> Vec<BigInt> {
    assert_eq!(den[0], BigInt::from(1));
    let mut q = vec![BigInt::from(0); order];
    for k in 0..order {
        let mut v = num.get(k).cloned().unwrap_or_default();
        for i in 1..=k {
            if let Some(d) = den.get(i) {
                v -= d * &q[k - i];
            }
        }
        q[k] = v;
    }
    q
}

pub fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}
