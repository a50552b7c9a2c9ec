//! Self-checks run by `grasslin reproduce`: golden values, oracle
//! comparisons and the classification matrix, each reported as one row.

use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chern::{
    chern_factors, cn_total, cn_total_upto, gamma1_closed_form, gamma2_closed_form, refined_eq_10,
    refined_eq_11, ChernData, EmbeddingContext,
};
use crate::ring::factorial;
use crate::schubert::{degree_of, full_basis, Ambient, Partition2, SchubertClass};
use crate::series::TruncSeries;
use crate::solver::{classify, verify_impossible_pairs, Classification, Mode, Verdict, LINEAR, TWISTED};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckRow {
    pub label: String,
    pub pass: bool,
    pub detail: String,
    pub millis: u128,
}

fn row(label: impl Into<String>, start: Instant, result: Result<String, String>) -> CheckRow {
    let (pass, detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CheckRow {
        label: label.into(),
        pass,
        detail,
        millis: start.elapsed().as_millis(),
    }
}

pub fn golden_product() -> CheckRow {
    let t = Instant::now();
    let s = Ambient::Stable;
    let w = |i, j| SchubertClass::<BigInt>::cycle(s, i, j).unwrap();
    let prod = w(8, 5).mul(&w(7, 3)).unwrap();
    let expect = [(15, 8), (14, 9), (13, 10), (12, 11)]
        .iter()
        .fold(SchubertClass::zero(s), |acc, &(i, j)| acc.add(&w(i, j)).unwrap());
    let res = if prod == expect {
        Ok(prod.to_string())
    } else {
        Err(format!("got {prod}"))
    };
    row("stable product ω_{8,5}·ω_{7,3}", t, res)
}

/// `ω_p · ω_{1,0}^{2m-4-|p|}` by repeated multiplication.
pub fn degree_by_products(m: u32, p: Partition2) -> BigInt {
    let amb = Ambient::Finite(m);
    let h = SchubertClass::<BigInt>::cycle(amb, 1, 0).unwrap();
    let mut acc = SchubertClass::term(amb, p, BigInt::from(1));
    for _ in p.degree()..2 * m - 4 {
        acc = acc.mul(&h).unwrap();
    }
    acc.top_value().unwrap()
}

pub fn degree_oracle() -> CheckRow {
    let t = Instant::now();
    let mut count = 0;
    for m in 4..=12 {
        for p in full_basis(m) {
            let closed = degree_of(m, p).unwrap();
            let brute = degree_by_products(m, p);
            if closed != brute {
                return row(
                    "degree formula vs repeated products, m = 4..12",
                    t,
                    Err(format!("m = {m}, {p}: {closed} vs {brute}")),
                );
            }
            count += 1;
        }
    }
    row(
        "degree formula vs repeated products, m = 4..12",
        t,
        Ok(format!("{count} cycles agree")),
    )
}

pub fn low_degree_normal_classes() -> CheckRow {
    let t = Instant::now();
    let contexts = [(4, 5), (5, 6), (8, 9), (10, 12), (12, 15)];
    for (m, n) in contexts {
        let ctx = EmbeddingContext::new(m, n).unwrap();
        let cn = cn_total_upto(ctx, &ChernData::symbolic(), 2);
        if cn.gamma[1] != gamma1_closed_form(ctx) {
            return row("normal class Γ_1, Γ_2 closed forms", t, Err(format!("Γ_1 at ({m},{n})")));
        }
        let (x, y) = gamma2_closed_form(ctx);
        if cn.gamma[2].to_monomial_deg(2).unwrap() != vec![x, y] {
            return row("normal class Γ_1, Γ_2 closed forms", t, Err(format!("Γ_2 at ({m},{n})")));
        }
    }
    row(
        "normal class Γ_1, Γ_2 closed forms",
        t,
        Ok(format!("{} contexts", contexts.len())),
    )
}

/// A triple drawn uniformly per coordinate from the default box.
pub fn random_triple(rng: &mut impl Rng, m: u32) -> (i64, i64, i64) {
    let cap = 4 * m as i64;
    let a = rng.gen_range(1..=cap);
    let b = rng.gen_range(0..=a * a);
    let c = rng.gen_range(-b..=cap);
    (a, b, c)
}

/// Projects both sides of the normal-bundle equation and compares them
/// with the one-variable equations.
pub fn refined_consistency(ctx: EmbeddingContext, t: (i64, i64, i64)) -> Result<(), String> {
    let data = ChernData::triple(t.0, t.1, t.2);
    let cn = cn_total(ctx, &data);
    let f = chern_factors(ctx.ambient(), &data);
    let gamma = cn.total();
    let lhs = gamma
        .mul(&f.bundle_end)
        .and_then(|x| x.mul(&f.taut_dual.pow(ctx.m())))
        .map_err(|e| e.to_string())?;
    let rhs = f.bundle.pow(ctx.n()).mul(&f.taut_end).map_err(|e| e.to_string())?;
    if lhs != rhs {
        return Err(format!("normal-bundle equation fails at {t:?}"));
    }
    let one_plus = |k: usize| TruncSeries::<BigInt>::from_ints(k, &[1, 1]);

    let (l10, r10) = refined_eq_10(ctx, &data, &cn).map_err(|e| e.to_string())?;
    let p = lhs.project_q10().map_err(|e| e.to_string())?;
    let p = p.div(&one_plus(p.order())).map_err(|e| e.to_string())?;
    if p != l10 || p != r10 {
        return Err(format!("ω_{{1,0}} projection differs at {t:?}"));
    }
    let (l11, r11) = refined_eq_11(ctx, &data, &cn).map_err(|e| e.to_string())?;
    let q = lhs.project_q11().map_err(|e| e.to_string())?;
    if q != l11 || q != r11 {
        return Err(format!("ω_{{1,1}} projection differs at {t:?}"));
    }
    Ok(())
}

pub fn refined_equations(samples: usize, seed: u64) -> CheckRow {
    let t = Instant::now();
    let label = format!("refined equations, {samples} triples at (8,9), (10,12), (12,15)");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (m, n) in [(8, 9), (10, 12), (12, 15)] {
        let ctx = EmbeddingContext::new(m, n).unwrap();
        for _ in 0..samples {
            let tr = random_triple(&mut rng, m);
            if let Err(e) = refined_consistency(ctx, tr) {
                return row(label, t, Err(e));
            }
        }
    }
    row(label, t, Ok("all coefficients agree".into()))
}

fn verdict_row(m: u32, n: u32, expect: &[(i64, i64, i64)], class: Classification) -> (CheckRow, Option<Verdict>) {
    let t = Instant::now();
    let label = format!("({m},{n}) → {class}");
    let ctx = EmbeddingContext::new(m, n).unwrap();
    match classify(ctx, Mode::FullPipeline) {
        Ok(v) => {
            let got = v.triples();
            let res = if got == expect && v.classification == class {
                Ok(format!("{got:?}"))
            } else {
                Err(format!("{} {got:?}", v.classification))
            };
            (row(label, t, res), Some(v))
        }
        Err(e) => (row(label, t, Err(e.to_string())), None),
    }
}

/// `c >= 1`, `a^2 > 4b` and `(m-2)!(m-1)! α_{2n-2m} >= (2m-4)! b^{n-2}` for
/// survivors with `n <= (3m-6)/2`.
pub fn derived_facts(v: &Verdict) -> Result<usize, String> {
    let ctx = EmbeddingContext::new(v.m, v.n).map_err(|e| e.to_string())?;
    if !ctx.derived_fact_range() {
        return Ok(0);
    }
    let (m, n) = (ctx.m() as u64, ctx.n() as u64);
    for s in &v.survivors {
        let (a, b, c) = s.triple();
        if c < 1 {
            return Err(format!("c < 1 at {:?}", s.triple()));
        }
        if a * a <= 4 * b {
            return Err(format!("a^2 <= 4b at {:?}", s.triple()));
        }
        let cn = cn_total_upto(ctx, &ChernData::triple(a, b, c), ctx.rho());
        let alpha = &cn.alpha[ctx.rho() as usize];
        let lhs = factorial(m - 2) * factorial(m - 1) * alpha;
        let rhs = factorial(2 * m - 4) * BigInt::from(b).pow((n - 2) as u32);
        if lhs < rhs {
            return Err(format!("α lower bound fails at {:?}", s.triple()));
        }
    }
    Ok(v.survivors.len())
}

pub fn run_all(seed: u64) -> Vec<CheckRow> {
    let mut rows = vec![
        golden_product(),
        degree_oracle(),
        low_degree_normal_classes(),
        refined_equations(200, seed),
    ];
    let mut verdicts = Vec::new();
    let mut matrix = vec![(4, 5, vec![LINEAR, TWISTED], Classification::LinearOrTwisted)];
    for m in 5..=12 {
        matrix.push((m, m + 1, vec![LINEAR], Classification::LinearOnly));
    }
    for (m, n) in [(9, 10), (10, 11), (10, 12), (12, 14), (12, 15), (14, 18)] {
        matrix.push((m, n, vec![LINEAR], Classification::LinearOnly));
    }
    matrix.push((4, 9, vec![], Classification::NoConstraints));
    for (m, n, expect, class) in matrix {
        let (r, v) = verdict_row(m, n, &expect, class);
        rows.push(r);
        verdicts.extend(v);
    }
    for rep in verify_impossible_pairs() {
        let t = Instant::now();
        let label = format!("impossible pair ({},{}), m={}, n={}", rep.a, rep.b, rep.m, rep.n);
        let res = if rep.impossible() {
            let mut anchors: Vec<&str> = rep.first_failures.iter().map(|(_, s)| s.as_str()).collect();
            anchors.sort_unstable();
            anchors.dedup();
            Ok(format!("fails at {}", anchors.join(", ")))
        } else {
            Err(format!("passes for c in {:?}", rep.passing_c))
        };
        rows.push(row(label, t, res));
    }
    let t = Instant::now();
    let mut checked = 0;
    let mut res = Ok(());
    for v in &verdicts {
        match derived_facts(v) {
            Ok(k) => checked += k,
            Err(e) => {
                res = Err(format!("({},{}): {e}", v.m, v.n));
                break;
            }
        }
    }
    rows.push(row(
        "c >= 1, a^2 > 4b and α lower bound on survivors",
        t,
        res.map(|_| format!("{checked} survivors in range")),
    ));
    rows
}
