//! Acceptance gate. Runs every criterion at zero tolerance and prints one
//! PASS/FAIL line each; exits nonzero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use grasslin_core::chern::{chern_factors, cn_total, cn_total_upto, refined_eq_10, refined_eq_11, ChernData, EmbeddingContext};
use grasslin_core::schubert::{degree_of, full_basis, Ambient, Partition2};
use grasslin_core::solver::{classify, verify_impossible_pairs, Classification, Mode, SearchBox, Verdict};
use grasslin_core::{BigInt, IntClass, PolyABC, SymClass};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

type Outcome = Result<String, String>;
type Case = ((u32, u32), Vec<(i64, i64, i64)>, Classification);

fn within(limit: Option<Duration>, took: Duration, res: Outcome) -> Outcome {
    match (res, limit) {
        (Ok(_), Some(l)) if took > l => Err(format!("took {took:?}, limit {l:?}")),
        (r, _) => r,
    }
}

fn criterion_golden() -> Outcome {
    let s = Ambient::Stable;
    let w = |i, j| IntClass::cycle(s, i, j).unwrap();
    let (x, y) = (w(8, 5), w(7, 3));
    let t = Instant::now();
    let prod = x.mul(&y).map_err(|e| e.to_string())?;
    let took = t.elapsed();
    let expect = IntClass::from_terms(
        s,
        [(15, 8), (14, 9), (13, 10), (12, 11)].map(|(i, j)| (Partition2 { i, j }, BigInt::from(1))),
    );
    let res = if prod == expect { Ok(prod.to_string()) } else { Err(format!("got {prod}")) };
    within(Some(Duration::from_millis(1)), took, res)
}

/// Degree of `ω_p` by walking the lattice: `ω_{i,j}·ω_{1,0}` is
/// `ω_{i+1,j} + ω_{i,j+1}` restricted to the box.
fn degree_by_walk(m: u32, p: Partition2) -> BigInt {
    let side = (m - 2) as usize;
    let mut cur = vec![vec![BigInt::from(0); side + 1]; side + 1];
    cur[p.i as usize][p.j as usize] = BigInt::from(1);
    for _ in p.degree()..2 * m - 4 {
        let mut next = vec![vec![BigInt::from(0); side + 1]; side + 1];
        for i in 0..=side {
            for j in 0..=i {
                let v = &cur[i][j];
                if *v == BigInt::from(0) {
                    continue;
                }
                if i < side {
                    next[i + 1][j] += v;
                }
                if j < i {
                    next[i][j + 1] += v;
                }
            }
        }
        cur = next;
    }
    cur[side][side].clone()
}

fn catalan(k: u64) -> BigInt {
    // C_k = prod_{i=2..k} (k+i)/i, accumulated exactly
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for i in 2..=k {
        num *= k + i;
        den *= i;
    }
    num / den
}

fn criterion_degree() -> Outcome {
    let mut count = 0;
    for m in 4..=12u32 {
        for p in full_basis(m) {
            let closed = degree_of(m, p).map_err(|e| e.to_string())?;
            let walk = degree_by_walk(m, p);
            if closed != walk {
                return Err(format!("m = {m}, {p}: {closed} vs {walk}"));
            }
            count += 1;
        }
        let origin = degree_of(m, Partition2 { i: 0, j: 0 }).unwrap();
        if origin != catalan((m - 2) as u64) {
            return Err(format!("m = {m}: degree {origin} is not Catalan"));
        }
    }
    let amb = Ambient::Finite(4);
    let h = IntClass::cycle(amb, 1, 0).unwrap();
    let h4 = h.pow(4).top_value().map_err(|e| e.to_string())?;
    if h4 != BigInt::from(2) {
        return Err(format!("ω_{{1,0}}^4 = {h4} at m = 4"));
    }
    Ok(format!("{count} cycles, Catalan at (0,0), ω_{{1,0}}^4 = 2 at m = 4"))
}

fn expected_gamma2(m: i64, n: i64) -> SymClass {
    let (a, b, c) = (PolyABC::a(), PolyABC::b(), PolyABC::c());
    let k = |v: i64| PolyABC::constant(v);
    let x = k(n * (n - 1) / 2) * a.clone() * a.clone() - k(m * n) * a.clone() + k(m * m)
        - k(m * (m - 1) / 2)
        + a.clone() * a.clone()
        - k(1)
        + k(n - 4) * b;
    let y = k(n - 4) * c - k(m) + k(4);
    // ω_{1,0}^2 = ω_{2,0} + ω_{1,1}
    SymClass::from_terms(
        Ambient::Finite(m as u32),
        [(Partition2 { i: 2, j: 0 }, x.clone()), (Partition2 { i: 1, j: 1 }, x + y)],
    )
}

fn criterion_low_degree() -> Outcome {
    let mut count = 0;
    for m in 4..=12u32 {
        for n in m..=2 * m {
            let ctx = EmbeddingContext::new(m, n).unwrap();
            let cn = cn_total_upto(ctx, &ChernData::symbolic(), 2);
            let g1 = SymClass::term(
                ctx.ambient(),
                Partition2 { i: 1, j: 0 },
                PolyABC::constant(n) * PolyABC::a() - PolyABC::constant(m),
            );
            if cn.gamma[1] != g1 {
                return Err(format!("Γ_1 at ({m},{n}): {}", cn.gamma[1]));
            }
            if cn.gamma[2] != expected_gamma2(m as i64, n as i64) {
                return Err(format!("Γ_2 at ({m},{n}): {}", cn.gamma[2]));
            }
            count += 1;
        }
    }
    Ok(format!("{count} contexts"))
}

fn refined_one(ctx: EmbeddingContext, (a, b, c): (i64, i64, i64)) -> Result<(), String> {
    let m = ctx.m();
    let data = ChernData::triple(a, b, c);
    let cn = cn_total(ctx, &data);
    let gamma = cn.total();
    let f = chern_factors(ctx.ambient(), &data);
    let lhs = gamma
        .mul(&f.bundle_end)
        .and_then(|x| x.mul(&f.taut_dual.pow(m)))
        .map_err(|e| e.to_string())?;
    let rhs = f.bundle.pow(ctx.n()).mul(&f.taut_end).map_err(|e| e.to_string())?;
    if lhs != rhs {
        return Err(format!("total Chern equation fails at {:?}", (a, b, c)));
    }
    let big = BigInt::from;

    let o10 = (m - 1) as usize;
    let q10 = oracle_q10(&gamma, m);
    let binom_row = vpow(&ints(&[1, 1]), m - 1, o10);
    let want_l10 = vmul(&vmul(&q10, &[big(1), big(0), big(4 * b - a * a)], o10), &binom_row, o10);
    let want_r10 = vmul(&vpow(&ints(&[1, a, b]), ctx.n(), o10), &ints(&[1, -1]), o10);
    let (l10, r10) = refined_eq_10(ctx, &data, &cn).map_err(|e| e.to_string())?;
    if want_l10 != want_r10 || l10.coeffs() != &want_l10[..] || r10.coeffs() != &want_r10[..] {
        return Err(format!("ω_{{1,0}} equation differs at {:?}", (a, b, c)));
    }

    let o11 = ((m - 2) / 2 + 1) as usize;
    let q11 = oracle_q11(&gamma, m);
    let want_l11 = vmul(&vmul(&q11, &ints(&[1, 4 * c]), o11), &vpow(&ints(&[1, 1]), m, o11), o11);
    let want_r11 = vmul(&vpow(&ints(&[1, c]), ctx.n(), o11), &ints(&[1, 4]), o11);
    let (l11, r11) = refined_eq_11(ctx, &data, &cn).map_err(|e| e.to_string())?;
    if want_l11 != want_r11 || l11.coeffs() != &want_l11[..] || r11.coeffs() != &want_r11[..] {
        return Err(format!("ω_{{1,1}} equation differs at {:?}", (a, b, c)));
    }
    Ok(())
}

fn criterion_refined() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let mut count = 0;
    for (m, n) in [(8, 9), (10, 12), (12, 15)] {
        let ctx = EmbeddingContext::new(m, n).unwrap();
        let bx = SearchBox::default_for(ctx);
        let (alo, ahi) = bx.a_range();
        for _ in 0..200 {
            let a = rng.gen_range(alo..=ahi);
            let (blo, bhi) = bx.b_range(a);
            let b = rng.gen_range(blo..=bhi);
            let (clo, chi) = bx.c_range(a, b);
            let c = rng.gen_range(clo..=chi);
            refined_one(ctx, (a, b, c))?;
            count += 1;
        }
    }
    Ok(format!("{count} triples, all coefficients agree"))
}

const LINEAR: (i64, i64, i64) = (1, 0, 1);
const TWISTED: (i64, i64, i64) = (1, 1, -1);

fn run_matrix(
    cases: &[Case],
    verdicts: &mut Vec<Verdict>,
) -> Outcome {
    let mut lines = Vec::new();
    for ((m, n), expect, class) in cases {
        let ctx = EmbeddingContext::new(*m, *n).unwrap();
        let v = classify(ctx, Mode::FullPipeline).map_err(|e| e.to_string())?;
        if &v.triples() != expect || v.classification != *class {
            return Err(format!("({m},{n}): {} {:?}", v.classification, v.triples()));
        }
        lines.push(format!("({m},{n})"));
        verdicts.push(v);
    }
    Ok(format!("{} contexts: {}", lines.len(), lines.join(" ")))
}

fn criterion_impossible_pairs() -> Outcome {
    let reports = verify_impossible_pairs();
    if reports.len() != 5 {
        return Err(format!("{} pairs checked", reports.len()));
    }
    for r in &reports {
        if !r.impossible() {
            return Err(format!("({},{}) passes for c in {:?}", r.a, r.b, r.passing_c));
        }
        if r.c_range.0 > r.c_range.1 {
            return Err(format!("({},{}) scanned an empty c range", r.a, r.b));
        }
    }
    // 12 does not divide 5·5·(25 - 5 + 3), so every c fails divisibility
    let r55 = reports.iter().find(|r| (r.a, r.b) == (5, 5)).unwrap();
    if (5 * 5 * (25 - 5 + 3)) % 12 == 0 || r55.first_failures.iter().any(|(_, s)| s != "divisibility-12") {
        return Err("(5,5) does not fail on divisibility".into());
    }
    let pairs: Vec<String> = reports.iter().map(|r| format!("({},{})@({},{})", r.a, r.b, r.m, r.n)).collect();
    Ok(pairs.join(" "))
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, k| acc * k)
}

fn criterion_derived(verdicts: &[Verdict]) -> Outcome {
    let mut checked = 0;
    for v in verdicts {
        let (m, n) = (v.m as u64, v.n as u64);
        if 2 * n + 6 > 3 * m {
            continue;
        }
        for s in &v.survivors {
            let (a, b, c) = s.triple();
            if c < 1 || a * a <= 4 * b {
                return Err(format!("({m},{n}) survivor {:?}", (a, b, c)));
            }
            // α from the ω_{1,0} equation by series division
            let order = (m - 1) as usize;
            let num = vmul(&vpow(&ints(&[1, a, b]), n as u32, order), &ints(&[1, -1]), order);
            let den = vmul(
                &ints(&[1, 0, 4 * b - a * a]),
                &vpow(&ints(&[1, 1]), (m - 1) as u32, order),
                order,
            );
            let alpha = vdiv(&num, &den, order);
            let rho = (2 * n - 2 * m) as usize;
            let lhs = factorial(m - 2) * factorial(m - 1) * &alpha[rho];
            let rhs = factorial(2 * m - 4) * BigInt::from(b).pow((n - 2) as u32);
            if lhs < rhs {
                return Err(format!("α bound fails at ({m},{n}) {:?}", (a, b, c)));
            }
            checked += 1;
        }
    }
    if checked == 0 {
        return Err("no survivors in range".into());
    }
    Ok(format!("{checked} survivors checked"))
}

fn run_property<S: Strategy>(
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), proptest::test_runner::TestCaseError>,
) -> Result<(), String> {
    let config = Config { cases: 1000, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner.run(&strategy, test).map_err(|e| format!("{name}: {e}"))
}

fn criterion_properties() -> Outcome {
    run_property("polynomial ring", (poly(), poly(), poly()), poly_ring_axioms)?;
    run_property(
        "series ring",
        (1usize..=10).prop_flat_map(|k| (series(k), series(k), unit_series(k))),
        series_ring_axioms,
    )?;
    run_property("Schubert ring", class_triple(), schubert_ring_axioms)?;
    run_property("pairing and duality", complementary_pair(), pairing_duality)?;
    run_property("monomial basis round trip", homogeneous_class(), basis_round_trip)?;
    run_property("evaluation homomorphism", sym_pair_with_point(), evaluation_homomorphism)?;
    Ok("6 suites × 1000 cases".into())
}

fn main() -> ExitCode {
    let mut verdicts = Vec::new();
    let mut results: Vec<(u32, &str, Outcome, Duration)> = Vec::new();
    let mut run = |id: u32, name: &'static str, limit: Option<Duration>, f: &mut dyn FnMut() -> Outcome| {
        let t = Instant::now();
        let res = f();
        let took = t.elapsed();
        let res = within(limit, took, res);
        results.push((id, name, res, took));
    };
    let secs = Duration::from_secs;

    run(1, "golden stable product", None, &mut criterion_golden);
    run(2, "degree formula vs lattice walk", Some(secs(5)), &mut criterion_degree);
    run(3, "Γ_1 and Γ_2 closed forms", None, &mut criterion_low_degree);
    run(4, "refined equations vs projections", Some(secs(30)), &mut criterion_refined);

    let mut case_b = vec![((4, 5), vec![LINEAR, TWISTED], Classification::LinearOrTwisted)];
    case_b.extend((5..=12).map(|m| ((m, m + 1), vec![LINEAR], Classification::LinearOnly)));
    run(5, "n = m+1 classification", Some(secs(60)), &mut || run_matrix(&case_b, &mut verdicts));
    let case_a: Vec<_> = [(9, 10), (10, 11), (10, 12), (12, 14), (12, 15), (14, 18)]
        .into_iter()
        .map(|mn| (mn, vec![LINEAR], Classification::LinearOnly))
        .collect();
    run(6, "m >= 9, 2n <= 3m-6 classification", Some(secs(120)), &mut || run_matrix(&case_a, &mut verdicts));

    run(7, "impossible pairs", None, &mut criterion_impossible_pairs);
    let vs = verdicts.clone();
    run(8, "derived facts on survivors", None, &mut || criterion_derived(&vs));
    run(9, "property suites", Some(secs(60)), &mut criterion_properties);

    let mut failed = 0;
    for (id, name, res, took) in &results {
        let (tag, detail) = match res {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {id} {tag} {name} [{:.3}s] {detail}", took.as_secs_f64());
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
