use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use grasslin_core::chern::{chern_e, cn_total, cn_total_upto, euler_class, ChernData, CNSeries, EmbeddingContext, EulerData};
use grasslin_core::checks::{run_all, CheckRow};
use grasslin_core::schubert::{degree_of, dual_cycle, Ambient, Partition2, SchubertClass};
use grasslin_core::solver::{
    build_system, classify_in, symbolic_payload, Classification, Mode, SearchBox, Verdict,
};
use grasslin_core::{Coeff, Error, PolyABC};

const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_NO_CONSTRAINTS: u8 = 3;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "grasslin", version, about = "Schubert calculus on Gr(2,m) and Chern-data constraints for embeddings Gr(2,m) -> Gr(2,n)")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for enumeration.
    #[arg(long, global = true, env = "GRASSLIN_JOBS")]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct AmbientArgs {
    /// Work on Gr(2,M).
    #[arg(short = 'm', long = "ambient", value_name = "M", required_unless_present = "stable")]
    ambient: Option<u32>,

    /// No box truncation.
    #[arg(long, conflicts_with = "ambient")]
    stable: bool,
}

impl AmbientArgs {
    fn ambient(&self) -> Result<Ambient, Error> {
        match (self.stable, self.ambient) {
            (true, _) => Ok(Ambient::Stable),
            (false, Some(m)) if m >= 2 => Ok(Ambient::Finite(m)),
            (false, m) => Err(Error::InvalidBox(format!("bad ambient {m:?}"))),
        }
    }

    fn finite(&self) -> Result<u32, Error> {
        self.ambient()?.require_m()
    }
}

#[derive(Args, Debug)]
struct TripleArg {
    /// Evaluate at the integer triple A,B,C instead of symbolically.
    #[arg(long, value_name = "A,B,C", allow_hyphen_values = true)]
    triple: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Numeric,
    Full,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Multiply Schubert cycles given as I,J (optionally K*I,J for a multiple).
    Mul {
        #[command(flatten)]
        amb: AmbientArgs,
        #[arg(required = true, allow_hyphen_values = true)]
        cycles: Vec<String>,
    },
    /// Top-degree value of ω_{i,j}·ω_{1,0}^{2m-4-i-j}.
    Degree {
        #[command(flatten)]
        amb: AmbientArgs,
        cycle: String,
    },
    /// Dual cycle (m-2-j, m-2-i).
    Dual {
        #[command(flatten)]
        amb: AmbientArgs,
        cycle: String,
    },
    /// Rewrite a homogeneous class in the monomials ω_{1,0}^p ω_{1,1}^q.
    Basis {
        #[command(flatten)]
        amb: AmbientArgs,
        #[arg(required = true, allow_hyphen_values = true)]
        terms: Vec<String>,
    },
    /// Total Chern class of the normal bundle, degree by degree.
    Chern {
        m: u32,
        n: u32,
        #[command(flatten)]
        triple: TripleArg,
        /// Stop after this degree.
        #[arg(long)]
        upto: Option<u32>,
    },
    /// Intersection numbers d_i and the Euler class of the normal bundle.
    Euler {
        m: u32,
        n: u32,
        #[command(flatten)]
        triple: TripleArg,
    },
    /// List the constraint system for (m,n).
    System {
        m: u32,
        n: u32,
        /// Print each constraint symbolically (slow for large m).
        #[arg(long)]
        expand: bool,
    },
    /// Enumerate Chern data surviving the system and classify.
    Solve {
        m: u32,
        n: u32,
        #[arg(long, value_enum, default_value_t = ModeArg::Full)]
        mode: ModeArg,
        /// Override search ranges, e.g. a=1:10,c=-5:20.
        #[arg(long = "box", value_name = "a=LO:HI,b=LO:HI,c=LO:HI", allow_hyphen_values = true)]
        search_box: Option<String>,
    },
    /// Run the full check matrix and print a pass/fail table.
    Reproduce {
        /// Seed for the randomized triples.
        #[arg(long, default_value_t = 20240601)]
        seed: u64,
    },
}

fn parse_partition(tok: &str) -> Result<Partition2, Error> {
    let bad = || Error::InvalidBox(format!("malformed partition {tok:?}, expected I,J"));
    let (i, j) = tok.split_once(',').ok_or_else(bad)?;
    let i: i64 = i.trim().parse().map_err(|_| bad())?;
    let j: i64 = j.trim().parse().map_err(|_| bad())?;
    if i < 0 || j < 0 || i < j {
        return Err(Error::InvalidPartition { i, j });
    }
    Partition2::new(i as u32, j as u32)
}

/// `I,J` or `K*I,J`.
fn parse_term(tok: &str) -> Result<(BigInt, Partition2), Error> {
    match tok.split_once('*') {
        Some((k, p)) => {
            let k = k
                .trim()
                .parse::<BigInt>()
                .map_err(|_| Error::InvalidBox(format!("bad coefficient in {tok:?}")))?;
            Ok((k, parse_partition(p)?))
        }
        None => Ok((BigInt::from(1), parse_partition(tok)?)),
    }
}

fn parse_triple(s: &str) -> Result<(i64, i64, i64), Error> {
    let v: Vec<i64> = s
        .split(',')
        .map(|x| x.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Error::InvalidBox(format!("bad triple {s:?}")))?;
    match v[..] {
        [a, b, c] => Ok((a, b, c)),
        _ => Err(Error::InvalidBox(format!("bad triple {s:?}"))),
    }
}

fn class_of(amb: Ambient, toks: &[String]) -> Result<SchubertClass<BigInt>, Error> {
    let mut out = SchubertClass::zero(amb);
    for t in toks {
        let (k, p) = parse_term(t)?;
        out.add_term(p, &k);
    }
    Ok(out)
}

fn monomial_string(k: u32, coords: &[BigInt]) -> String {
    let mut parts = Vec::new();
    for (i, c) in coords.iter().enumerate() {
        if c == &BigInt::from(0) {
            continue;
        }
        let (p, q) = (k - 2 * i as u32, i as u32);
        let mut mono = String::new();
        if p > 0 {
            mono += "ω_{1,0}";
            if p > 1 {
                mono += &format!("^{p}");
            }
        }
        if q > 0 {
            mono += "ω_{1,1}";
            if q > 1 {
                mono += &format!("^{q}");
            }
        }
        let neg = c.sign() == num_bigint::Sign::Minus;
        let mag = if neg { -c } else { c.clone() };
        let body = match (mono.is_empty(), mag == BigInt::from(1)) {
            (true, _) => mag.to_string(),
            (false, true) => mono,
            (false, false) => format!("{mag}{mono}"),
        };
        parts.push((neg, body));
    }
    if parts.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (idx, (neg, body)) in parts.into_iter().enumerate() {
        match (idx, neg) {
            (0, true) => s += "-",
            (0, false) => {}
            (_, true) => s += " - ",
            (_, false) => s += " + ",
        }
        s += &body;
    }
    s
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn print_table(header: &[&str], rows: &[Vec<String>]) {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<String>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        println!("{}", padded.join("  ").trim_end());
    };
    line(header.iter().map(|s| s.to_string()).collect());
    line(widths.iter().map(|w| "-".repeat(*w)).collect());
    for r in rows {
        line(r.clone());
    }
}

fn cn_text<C: Coeff + std::fmt::Display + grasslin_core::schubert::CoeffDisplay>(cn: &CNSeries<C>) {
    for (k, g) in cn.gamma.iter().enumerate() {
        println!("Γ_{k} = {g}");
    }
    for (k, a) in cn.alpha.iter().enumerate() {
        println!("α_{k} = {a}");
    }
    for (k, b) in cn.beta.iter().enumerate() {
        println!("β_{k} = {b}");
    }
}

fn euler_json<C: Coeff>(ctx: EmbeddingContext, e: &EulerData<C>) -> Value {
    json!({
        "m": ctx.m(),
        "n": ctx.n(),
        "d": e.d.iter().map(|x| x.to_json()).collect::<Vec<_>>(),
        "e": e.e.to_json(),
        "gamma": e.gamma.iter().map(|x| x.to_json()).collect::<Vec<_>>(),
    })
}

fn euler_text<C: Coeff + std::fmt::Display + grasslin_core::schubert::CoeffDisplay>(e: &EulerData<C>) {
    for (i, d) in e.d.iter().enumerate() {
        println!("d_{i} = {d}");
    }
    println!("e = {}", e.e);
    for (i, g) in e.gamma.iter().enumerate() {
        println!("γ_{i} = {g}");
    }
}

fn verdict_text(v: &Verdict) {
    let bx = &v.search_box;
    println!("(m,n) = ({},{})  mode {:?}", v.m, v.n, v.mode);
    println!(
        "box: a in [{}, {}], b in [{}, {}], c in [{}, {}]",
        bx.a.lo, bx.a.hi, bx.b.lo, bx.b.hi, bx.c.lo, bx.c.hi
    );
    println!("family filter: {:?}", v.bv_filter);
    println!("numeric survivors: {:?}", v.numeric_survivors);
    println!("classification: {}", v.classification);
    let rows: Vec<Vec<String>> = v
        .survivors
        .iter()
        .map(|s| {
            let failed: Vec<&str> = s.trace.iter().filter(|e| !e.pass).map(|e| e.anchor.as_str()).collect();
            let trace = if failed.is_empty() {
                format!("all {} constraints pass", s.trace.len())
            } else {
                format!("fails {}", failed.join(", "))
            };
            vec![s.a.to_string(), s.b.to_string(), s.c.to_string(), trace]
        })
        .collect();
    if !rows.is_empty() {
        print_table(&["a", "b", "c", "trace"], &rows);
    }
}

fn exit_for(c: Classification) -> u8 {
    match c {
        Classification::LinearOnly | Classification::LinearOrTwisted => 0,
        Classification::Inconclusive => EXIT_INCONCLUSIVE,
        Classification::NoConstraints => EXIT_NO_CONSTRAINTS,
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    if let Some(j) = cli.jobs {
        if j == 0 {
            return Err(Error::InvalidBox("--jobs must be positive".into()));
        }
        // a second initialization only happens in tests; ignore it
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j).build_global();
    }
    let json = cli.json;
    match cli.command {
        Command::Mul { amb, cycles } => {
            let amb = amb.ambient()?;
            let mut acc = SchubertClass::<BigInt>::one(amb);
            for c in &cycles {
                let (k, p) = parse_term(c)?;
                acc = acc.mul(&SchubertClass::term(amb, p, k))?;
            }
            if json {
                print_json(&acc.to_json());
            } else {
                println!("{acc}");
            }
        }
        Command::Degree { amb, cycle } => {
            let m = amb.finite()?;
            let p = parse_partition(&cycle)?;
            let d = degree_of(m, p)?;
            if json {
                print_json(&json!({"m": m, "i": p.i, "j": p.j, "degree": d.to_string()}));
            } else {
                println!("ω_{{{},{}}}·ω_{{1,0}}^{} = {d}", p.i, p.j, 2 * m - 4 - p.degree());
            }
        }
        Command::Dual { amb, cycle } => {
            let m = amb.finite()?;
            let p = parse_partition(&cycle)?;
            let q = dual_cycle(m, p)?;
            if json {
                print_json(&json!({"m": m, "i": p.i, "j": p.j, "dual": {"i": q.i, "j": q.j}}));
            } else {
                println!("{},{}", q.i, q.j);
            }
        }
        Command::Basis { amb, terms } => {
            let amb = amb.ambient()?;
            let cls = class_of(amb, &terms)?;
            let k = if cls.is_zero() {
                0
            } else {
                cls.pure_degree().ok_or(Error::NotHomogeneous)?
            };
            let coords = cls.to_monomial_deg(k)?;
            if json {
                let monos: Vec<Value> = coords
                    .iter()
                    .enumerate()
                    .map(|(i, c)| json!({"p": k - 2 * i as u32, "q": i, "coeff": c.to_string()}))
                    .collect();
                print_json(&json!({"m": amb.to_json(), "degree": k, "monomials": monos}));
            } else {
                println!("{}", monomial_string(k, &coords));
            }
        }
        Command::Chern { m, n, triple, upto } => {
            let ctx = EmbeddingContext::new(m, n)?;
            let top = upto.unwrap_or(ctx.top_degree());
            match triple.triple.as_deref() {
                Some(s) => {
                    let (a, b, c) = parse_triple(s)?;
                    let t = ChernData::triple(a, b, c);
                    let cn = cn_total_upto(ctx, &t, top);
                    if json {
                        print_json(&cn.to_json());
                    } else {
                        println!("c(E) = {}", chern_e(ctx.ambient(), &t));
                        cn_text(&cn);
                    }
                }
                None => {
                    let t = ChernData::<PolyABC>::symbolic();
                    let cn = if upto.is_some() {
                        cn_total_upto(ctx, &t, top)
                    } else {
                        cn_total(ctx, &t)
                    };
                    if json {
                        print_json(&cn.to_json());
                    } else {
                        println!("c(E) = {}", chern_e(ctx.ambient(), &t));
                        cn_text(&cn);
                    }
                }
            }
        }
        Command::Euler { m, n, triple } => {
            let ctx = EmbeddingContext::new(m, n)?;
            match triple.triple.as_deref() {
                Some(s) => {
                    let (a, b, c) = parse_triple(s)?;
                    let e = euler_class(ctx, &ChernData::triple(a, b, c));
                    if json {
                        print_json(&euler_json(ctx, &e));
                    } else {
                        euler_text(&e);
                    }
                }
                None => {
                    let e = euler_class(ctx, &ChernData::symbolic());
                    if json {
                        print_json(&euler_json(ctx, &e));
                    } else {
                        euler_text(&e);
                    }
                }
            }
        }
        Command::System { m, n, expand } => {
            let ctx = EmbeddingContext::new(m, n)?;
            let sys = build_system(ctx);
            let expanded: Option<Vec<String>> = expand.then(|| {
                let t = ChernData::symbolic();
                let cn = cn_total(ctx, &t);
                let eu = euler_class(ctx, &t);
                sys.constraints
                    .iter()
                    .map(|c| symbolic_payload(&sys, c, &cn, &eu))
                    .collect()
            });
            if json {
                let items: Vec<Value> = sys
                    .constraints
                    .iter()
                    .enumerate()
                    .map(|(idx, c)| {
                        let mut v = json!({
                            "anchor": c.anchor,
                            "kind": format!("{:?}", c.kind),
                            "condition": c.condition,
                            "applicable": c.applicable,
                            "imported": c.imported,
                        });
                        if let Some(e) = &expanded {
                            v["payload"] = json!(e[idx]);
                        }
                        v
                    })
                    .collect();
                print_json(&json!({"m": m, "n": n, "no_constraints": sys.no_constraints(), "constraints": items}));
            } else {
                if sys.no_constraints() {
                    println!("2n-2m = {} exceeds 2m-4 = {}: no constraints", ctx.rho(), ctx.top_degree());
                }
                let rows: Vec<Vec<String>> = sys
                    .constraints
                    .iter()
                    .enumerate()
                    .map(|(idx, c)| {
                        let mut r = vec![
                            c.anchor.clone(),
                            format!("{:?}", c.kind),
                            c.condition.clone(),
                            if c.applicable { "yes" } else { "no" }.to_string(),
                        ];
                        if let Some(e) = &expanded {
                            r.push(e[idx].clone());
                        }
                        r
                    })
                    .collect();
                let mut header = vec!["anchor", "kind", "condition", "applies"];
                if expanded.is_some() {
                    header.push("payload");
                }
                print_table(&header, &rows);
            }
        }
        Command::Solve { m, n, mode, search_box } => {
            let ctx = EmbeddingContext::new(m, n)?;
            let mut bx = SearchBox::default_for(ctx);
            if let Some(spec) = &search_box {
                bx = bx.with_overrides(spec)?;
            }
            let mode = match mode {
                ModeArg::Numeric => Mode::NumericOnly,
                ModeArg::Full => Mode::FullPipeline,
            };
            let v = classify_in(ctx, mode, &bx)?;
            if json {
                println!("{}", v.to_json_string());
            } else {
                verdict_text(&v);
            }
            return Ok(exit_for(v.classification));
        }
        Command::Reproduce { seed } => {
            let rows = run_all(seed);
            let failed = rows.iter().filter(|r| !r.pass).count();
            if json {
                let items: Vec<Value> = rows
                    .iter()
                    .map(|r| json!({"check": r.label, "pass": r.pass, "detail": r.detail, "ms": r.millis}))
                    .collect();
                print_json(&json!({"rows": items, "failed": failed}));
            } else {
                let cells: Vec<Vec<String>> = rows.iter().map(reproduce_row).collect();
                print_table(&["check", "result", "ms", "detail"], &cells);
                println!("{} of {} checks passed", rows.len() - failed, rows.len());
            }
            return Ok(u8::from(failed > 0));
        }
    }
    Ok(0)
}

fn reproduce_row(r: &CheckRow) -> Vec<String> {
    vec![
        r.label.clone(),
        if r.pass { "pass" } else { "FAIL" }.to_string(),
        r.millis.to_string(),
        r.detail.clone(),
    ]
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
