//! The Diophantine system on Chern data `(a,b,c)` and its bounded enumeration.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Roots;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chern::{
    alpha_admissible, beta_admissible, cn_total, euler_class_with, ChernData, CNSeries, EmbeddingContext,
    EulerData, Pullback,
};
use crate::error::{Error, Result};
use crate::poly::PolyABC;
use crate::ring::Coeff;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConstraintKind {
    EqualityClass,
    InequalityPoly,
    Divisibility,
    BoundPredicate,
}

/// What a constraint tests, evaluated exactly at an integer triple.
#[derive(Clone, Debug, PartialEq)]
pub enum Payload {
    /// `modulus | poly(a,b,c)`.
    Divisibility { modulus: u32, poly: PolyABC },
    /// `2a <= bound`.
    TwiceABound { bound: i64 },
    /// Every Schubert coefficient of `c(E)` is non-negative.
    BundleNonneg,
    /// Every Schubert coefficient of `φ*(ω̃_{k,0})` is non-negative.
    PullbackNonneg { k: u32 },
    /// `Γ_k = 0`.
    Vanishing { k: u32 },
    /// `Γ_{2n-2m} = e(N_R)`.
    EulerEquality,
    /// `d_i >= 0`.
    IntersectionNonneg { i: u32 },
    /// Every Schubert coefficient of `Γ_k` is non-negative.
    NormalNonneg { k: u32 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub kind: ConstraintKind,
    pub anchor: String,
    /// Human-readable applicability condition on `(m,n)`.
    pub condition: String,
    pub applicable: bool,
    /// Imported from geometric results rather than derived from Chern classes.
    pub imported: bool,
    pub payload: Payload,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstraintSystem {
    pub ctx: EmbeddingContext,
    pub constraints: Vec<Constraint>,
}

impl ConstraintSystem {
    /// No applicable equalities: the normal rank exceeds the dimension.
    pub fn no_constraints(&self) -> bool {
        !self.ctx.has_constraints()
    }

    pub fn applicable(&self) -> impl Iterator<Item = &Constraint> {
        self.constraints.iter().filter(|c| c.applicable)
    }

    pub fn a_bound_applies(&self) -> bool {
        self.applicable()
            .any(|c| matches!(c.payload, Payload::TwiceABound { .. }))
    }
}

/// `12 | ab(a^2 - b + 3)`, from integrality of the holomorphic Euler characteristic.
pub fn divisibility_poly() -> PolyABC {
    let a = PolyABC::a();
    let b = PolyABC::b();
    a.mul_ref(&b)
        .mul_ref(&a.mul_ref(&a).sub_ref(&b).add_ref(&PolyABC::constant(3)))
}

/// `m >= 9` and `2n <= 3m - 6`: the range where the `a`-bound and the
/// decomposability classification of the bundle are available.
pub fn imported_range(ctx: EmbeddingContext) -> bool {
    ctx.m() >= 9 && ctx.derived_fact_range()
}

pub fn build_system(ctx: EmbeddingContext) -> ConstraintSystem {
    let (m, n) = (ctx.m(), ctx.n());
    let rho = ctx.rho();
    let top = ctx.top_degree();
    let live = ctx.has_constraints();
    let mut out = Vec::new();
    let mut push = |kind, anchor: String, condition: &str, applicable: bool, imported, payload| {
        out.push(Constraint {
            kind,
            anchor,
            condition: condition.to_string(),
            applicable,
            imported,
            payload,
        })
    };

    push(
        ConstraintKind::Divisibility,
        "divisibility-12".into(),
        "m >= 7",
        live && m >= 7,
        false,
        Payload::Divisibility {
            modulus: 12,
            poly: divisibility_poly(),
        },
    );
    push(
        ConstraintKind::BoundPredicate,
        "a-bound[imported]".into(),
        "m >= 9 and 2n <= 3m - 6",
        live && imported_range(ctx),
        true,
        // a < (m-4)/2 over the integers
        Payload::TwiceABound { bound: m as i64 - 5 },
    );
    push(
        ConstraintKind::InequalityPoly,
        "nonneg-bundle".into(),
        "always",
        live,
        false,
        Payload::BundleNonneg,
    );
    for k in 1..=(n - 2).min(top) {
        push(
            ConstraintKind::InequalityPoly,
            format!("nonneg-pullback[{k}]"),
            "always",
            live,
            false,
            Payload::PullbackNonneg { k },
        );
    }
    if live {
        for k in rho + 1..=top {
            push(
                ConstraintKind::EqualityClass,
                format!("vanishing[{k}]"),
                "2n - 2m < k <= 2m - 4",
                true,
                false,
                Payload::Vanishing { k },
            );
        }
        push(
            ConstraintKind::EqualityClass,
            "euler-equality".into(),
            "2n - 2m <= 2m - 4",
            true,
            false,
            Payload::EulerEquality,
        );
    }
    for i in 0..=(n - m) {
        push(
            ConstraintKind::InequalityPoly,
            format!("nonneg-intersection[{i}]"),
            "always",
            live,
            false,
            Payload::IntersectionNonneg { i },
        );
    }
    for k in 1..=rho.min(top) {
        push(
            ConstraintKind::InequalityPoly,
            format!("nonneg-normal[{k}]"),
            "k <= 2n - 2m",
            live,
            false,
            Payload::NormalNonneg { k },
        );
    }
    ConstraintSystem {
        ctx,
        constraints: out,
    }
}

/// Lazily computed evaluated-mode data for one triple.
struct TripleEval {
    ctx: EmbeddingContext,
    t: ChernData<BigInt>,
    pb: Pullback<BigInt>,
    cn: Option<CNSeries<BigInt>>,
    euler: Option<EulerData<BigInt>>,
}

impl TripleEval {
    fn new(ctx: EmbeddingContext, a: i64, b: i64, c: i64) -> Self {
        let t = ChernData::triple(a, b, c);
        Self {
            ctx,
            pb: Pullback::new(ctx, &t),
            t,
            cn: None,
            euler: None,
        }
    }

    fn cn(&mut self) -> &CNSeries<BigInt> {
        if self.cn.is_none() {
            self.cn = Some(cn_total(self.ctx, &self.t));
        }
        self.cn.as_ref().unwrap()
    }

    fn euler(&mut self) -> &EulerData<BigInt> {
        if self.euler.is_none() {
            self.euler = Some(euler_class_with(self.ctx, &mut self.pb));
        }
        self.euler.as_ref().unwrap()
    }

    fn check(&mut self, payload: &Payload) -> bool {
        match payload {
            Payload::Divisibility { modulus, poly } => {
                let v = poly.evaluate(&self.t.a, &self.t.b, &self.t.c);
                (v % BigInt::from(*modulus)).is_zero()
            }
            Payload::TwiceABound { bound } => &self.t.a * 2 <= BigInt::from(*bound),
            Payload::BundleNonneg => {
                crate::chern::chern_e(self.ctx.ambient(), &self.t).is_nonnegative()
            }
            Payload::PullbackNonneg { k } => self.pb.special(*k).is_nonnegative(),
            Payload::Vanishing { k } => self.cn().gamma[*k as usize].is_zero(),
            Payload::EulerEquality => {
                let rho = self.ctx.rho() as usize;
                let g = self.cn().gamma[rho].clone();
                g == self.euler().e
            }
            Payload::IntersectionNonneg { i } => self.euler().d[*i as usize].sign() != Sign::Minus,
            Payload::NormalNonneg { k } => self.cn().gamma[*k as usize].is_nonnegative(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub anchor: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub entries: Vec<TraceEntry>,
}

impl Trace {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn first_failure(&self) -> Option<&str> {
        self.entries.iter().find(|e| !e.pass).map(|e| e.anchor.as_str())
    }

    pub fn failures(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().filter(|e| !e.pass).map(|e| e.anchor.as_str())
    }
}

/// Evaluates every applicable constraint at `(a,b,c)`.
pub fn check_triple(system: &ConstraintSystem, (a, b, c): (i64, i64, i64)) -> Trace {
    let mut ev = TripleEval::new(system.ctx, a, b, c);
    Trace {
        entries: system
            .applicable()
            .map(|k| TraceEntry {
                anchor: k.anchor.clone(),
                pass: ev.check(&k.payload),
            })
            .collect(),
    }
}

/// Same verdict as `check_triple(..).passed()`, stopping at the first failure.
pub fn passes(system: &ConstraintSystem, (a, b, c): (i64, i64, i64)) -> bool {
    if system.no_constraints() {
        return false;
    }
    let mut ev = TripleEval::new(system.ctx, a, b, c);
    system.applicable().all(|k| ev.check(&k.payload))
}

/// One end of a search range: a constant or one of the default expressions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundExpr {
    Const(i64),
    /// `a^2`
    ASquared,
    /// `-b`
    NegB,
}

impl BoundExpr {
    fn eval(self, a: i64, b: i64) -> i64 {
        match self {
            BoundExpr::Const(v) => v,
            BoundExpr::ASquared => a * a,
            BoundExpr::NegB => -b,
        }
    }
}

impl fmt::Display for BoundExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundExpr::Const(v) => write!(f, "{v}"),
            BoundExpr::ASquared => write!(f, "a^2"),
            BoundExpr::NegB => write!(f, "-b"),
        }
    }
}

impl std::str::FromStr for BoundExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "a^2" => Ok(BoundExpr::ASquared),
            "-b" => Ok(BoundExpr::NegB),
            t => t
                .parse::<i64>()
                .map(BoundExpr::Const)
                .map_err(|_| Error::InvalidBox(format!("bad bound {t:?}"))),
        }
    }
}

impl Serialize for BoundExpr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BoundExpr {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Range {
    pub lo: BoundExpr,
    pub hi: BoundExpr,
}

impl Range {
    pub fn new(lo: BoundExpr, hi: BoundExpr) -> Self {
        Self { lo, hi }
    }

    pub fn consts(lo: i64, hi: i64) -> Self {
        Self::new(BoundExpr::Const(lo), BoundExpr::Const(hi))
    }
}

/// Search ranges for `a`, then `b` given `a`, then `c` given `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBox {
    pub a: Range,
    pub b: Range,
    pub c: Range,
}

impl SearchBox {
    /// `a ∈ [1, 4m]`, `b ∈ [0, a^2]`, `c ∈ [-b, 4m]`.
    pub fn default_for(ctx: EmbeddingContext) -> Self {
        let cap = 4 * ctx.m() as i64;
        Self {
            a: Range::consts(1, cap),
            b: Range::new(BoundExpr::Const(0), BoundExpr::ASquared),
            c: Range::new(BoundExpr::NegB, BoundExpr::Const(cap)),
        }
    }

    /// Applies overrides of the form `a=LO:HI,b=LO:HI,c=LO:HI` (any subset).
    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (var, range) = part
                .split_once('=')
                .ok_or_else(|| Error::InvalidBox(format!("expected VAR=LO:HI, got {part:?}")))?;
            let (lo, hi) = range
                .split_once(':')
                .ok_or_else(|| Error::InvalidBox(format!("expected LO:HI, got {range:?}")))?;
            let r = Range::new(lo.parse()?, hi.parse()?);
            match var.trim() {
                "a" => self.a = r,
                "b" => self.b = r,
                "c" => self.c = r,
                v => return Err(Error::InvalidBox(format!("unknown variable {v:?}"))),
            }
        }
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let (BoundExpr::Const(lo), BoundExpr::Const(hi)) = (self.a.lo, self.a.hi) else {
            return Err(Error::InvalidBox("the range of a must be constant".into()));
        };
        if lo > hi {
            return Err(Error::InvalidBox(format!("empty range a = {lo}:{hi}")));
        }
        for (name, r) in [("b", self.b), ("c", self.c)] {
            if let (BoundExpr::Const(lo), BoundExpr::Const(hi)) = (r.lo, r.hi) {
                if lo > hi {
                    return Err(Error::InvalidBox(format!("empty range {name} = {lo}:{hi}")));
                }
            }
            if name == "b" && (r.lo == BoundExpr::NegB || r.hi == BoundExpr::NegB) {
                return Err(Error::InvalidBox("the range of b cannot depend on b".into()));
            }
        }
        Ok(())
    }

    pub fn a_range(&self) -> (i64, i64) {
        (self.a.lo.eval(0, 0), self.a.hi.eval(0, 0))
    }

    pub fn b_range(&self, a: i64) -> (i64, i64) {
        (self.b.lo.eval(a, 0), self.b.hi.eval(a, 0))
    }

    pub fn c_range(&self, a: i64, b: i64) -> (i64, i64) {
        (self.c.lo.eval(a, b), self.c.hi.eval(a, b))
    }

    /// Shrinks the `a` range to `2a <= bound`.
    pub fn clamp_twice_a(mut self, bound: i64) -> Self {
        let (lo, hi) = self.a_range();
        let cap = bound.div_euclid(2);
        self.a = Range::consts(lo, hi.min(cap));
        self
    }

    /// Number of candidate triples in the box.
    pub fn size(&self) -> u64 {
        let (alo, ahi) = self.a_range();
        let mut total = 0u64;
        for a in alo..=ahi {
            let (blo, bhi) = self.b_range(a);
            for b in blo..=bhi {
                let (clo, chi) = self.c_range(a, b);
                total += (chi - clo + 1).max(0) as u64;
            }
        }
        total
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Survivor {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub trace: Vec<TraceEntry>,
}

impl Survivor {
    pub fn triple(&self) -> (i64, i64, i64) {
        (self.a, self.b, self.c)
    }
}

/// Every triple in the box passing the system, in lexicographic order.
///
/// Candidates are screened first by necessary conditions on the
/// one-variable projections of `c(N)`: the `ω_{1,0}` image depends on
/// `(a,b)` only and the `ω_{1,1}` image on `c` only. Both follow from the
/// vanishing and non-negativity constraints, so no survivor is lost.
pub fn enumerate(system: &ConstraintSystem, bx: &SearchBox) -> Result<Vec<(i64, i64, i64)>> {
    bx.validate()?;
    if system.no_constraints() {
        return Ok(Vec::new());
    }
    let ctx = system.ctx;
    let bx = match a_bound(system) {
        Some(bound) => bx.clamp_twice_a(bound),
        None => *bx,
    };
    let (alo, ahi) = bx.a_range();
    if alo > ahi {
        return Ok(Vec::new());
    }

    let mut pairs = Vec::new();
    for a in alo..=ahi {
        let (blo, bhi) = bx.b_range(a);
        for b in blo..=bhi {
            pairs.push((a, b));
        }
    }
    let pairs: Vec<(i64, i64)> = pairs
        .into_par_iter()
        .filter(|&(a, b)| alpha_admissible(ctx, &BigInt::from(a), &BigInt::from(b)))
        .collect();

    let (cmin, cmax) = pairs
        .iter()
        .map(|&(a, b)| bx.c_range(a, b))
        .fold((i64::MAX, i64::MIN), |(l, h), (lo, hi)| (l.min(lo), h.max(hi)));
    let c_ok: Vec<bool> = if cmin <= cmax {
        (cmin..=cmax)
            .into_par_iter()
            .map(|c| beta_admissible(ctx, &BigInt::from(c)))
            .collect()
    } else {
        Vec::new()
    };

    let mut found: Vec<(i64, i64, i64)> = pairs
        .par_iter()
        .flat_map_iter(|&(a, b)| {
            let (clo, chi) = bx.c_range(a, b);
            let c_ok = &c_ok;
            (clo..=chi).filter_map(move |c| {
                (c_ok[(c - cmin) as usize] && passes(system, (a, b, c))).then_some((a, b, c))
            })
        })
        .collect();
    found.sort_unstable();
    Ok(found)
}

/// Enumeration without the projection screens; the reference for testing them.
pub fn enumerate_exhaustive(system: &ConstraintSystem, bx: &SearchBox) -> Result<Vec<(i64, i64, i64)>> {
    bx.validate()?;
    if system.no_constraints() {
        return Ok(Vec::new());
    }
    let (alo, ahi) = bx.a_range();
    let mut out = Vec::new();
    for a in alo..=ahi {
        let (blo, bhi) = bx.b_range(a);
        for b in blo..=bhi {
            let (clo, chi) = bx.c_range(a, b);
            for c in clo..=chi {
                if passes(system, (a, b, c)) {
                    out.push((a, b, c));
                }
            }
        }
    }
    Ok(out)
}

fn a_bound(system: &ConstraintSystem) -> Option<i64> {
    system.applicable().find_map(|c| match c.payload {
        Payload::TwiceABound { bound } => Some(bound),
        _ => None,
    })
}

/// A member of one of the two families left by the decomposability
/// classification of low-rank bundles on Gr(2,m).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BVFamily {
    /// `E ≅ E(2,m)^∨ ⊗ L` with `c_1(L) = r ω_{1,0}`: `(2r+1, r(r+1), 1)`.
    TensorLine { r: i64 },
    /// `E ≅ L_1 ⊕ L_2`: `(r1+r2, r1 r2, 0)`.
    SplitLines { r1: i64, r2: i64 },
}

impl BVFamily {
    pub fn triple(self) -> (i64, i64, i64) {
        match self {
            BVFamily::TensorLine { r } => (2 * r + 1, r * (r + 1), 1),
            BVFamily::SplitLines { r1, r2 } => (r1 + r2, r1 * r2, 0),
        }
    }

    /// The family member with this Chern data, if any, within the licensed
    /// parameter range `2a < m - 4`.
    pub fn recognize(m: u32, (a, b, c): (i64, i64, i64)) -> Option<Self> {
        if 2 * a >= m as i64 - 4 || a < 0 {
            return None;
        }
        match c {
            1 if a % 2 == 1 => {
                let r = (a - 1) / 2;
                (b == r * (r + 1)).then_some(BVFamily::TensorLine { r })
            }
            0 => {
                let disc = a * a - 4 * b;
                if disc < 0 {
                    return None;
                }
                let s = disc.sqrt();
                if s * s != disc || (a + s) % 2 != 0 {
                    return None;
                }
                let (r1, r2) = ((a + s) / 2, (a - s) / 2);
                (r2 >= 0).then_some(BVFamily::SplitLines { r1, r2 })
            }
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BvStatus {
    Applied,
    NotLicensed,
    NotRequested,
}

/// Keeps the survivors that lie in a decomposability family, when licensed.
pub fn bv_filter(ctx: EmbeddingContext, survivors: &[(i64, i64, i64)]) -> (Vec<(i64, i64, i64)>, BvStatus) {
    if !imported_range(ctx) {
        return (survivors.to_vec(), BvStatus::NotLicensed);
    }
    let kept = survivors
        .iter()
        .copied()
        .filter(|&t| BVFamily::recognize(ctx.m(), t).is_some())
        .collect();
    (kept, BvStatus::Applied)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    NumericOnly,
    FullPipeline,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    LinearOnly,
    LinearOrTwisted,
    Inconclusive,
    NoConstraints,
}

pub const LINEAR: (i64, i64, i64) = (1, 0, 1);
pub const TWISTED: (i64, i64, i64) = (1, 1, -1);

impl Classification {
    pub fn of(ctx: EmbeddingContext, survivors: &[(i64, i64, i64)]) -> Self {
        if !ctx.has_constraints() {
            Classification::NoConstraints
        } else if survivors == [LINEAR] {
            Classification::LinearOnly
        } else if survivors == [LINEAR, TWISTED] {
            Classification::LinearOrTwisted
        } else {
            Classification::Inconclusive
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub m: u32,
    pub n: u32,
    pub mode: Mode,
    /// The box actually searched, after any `a`-bound clamp.
    #[serde(rename = "box")]
    pub search_box: SearchBox,
    pub classification: Classification,
    pub survivors: Vec<Survivor>,
    /// Survivors of the numeric system before the family filter.
    pub numeric_survivors: Vec<(i64, i64, i64)>,
    pub bv_filter: BvStatus,
}

impl Verdict {
    pub fn triples(&self) -> Vec<(i64, i64, i64)> {
        self.survivors.iter().map(Survivor::triple).collect()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Json(e.to_string()))
    }
}

pub const BV_ANCHOR: &str = "bv-family[imported]";

pub fn classify(ctx: EmbeddingContext, mode: Mode) -> Result<Verdict> {
    classify_in(ctx, mode, &SearchBox::default_for(ctx))
}

pub fn classify_in(ctx: EmbeddingContext, mode: Mode, bx: &SearchBox) -> Result<Verdict> {
    let system = build_system(ctx);
    let searched = match a_bound(&system) {
        Some(bound) => bx.clamp_twice_a(bound),
        None => *bx,
    };
    let numeric = enumerate(&system, bx)?;
    let (kept, status) = match mode {
        Mode::NumericOnly => (numeric.clone(), BvStatus::NotRequested),
        Mode::FullPipeline => bv_filter(ctx, &numeric),
    };
    let survivors = kept
        .iter()
        .map(|&t| {
            let mut trace = check_triple(&system, t).entries;
            if status == BvStatus::Applied {
                trace.push(TraceEntry {
                    anchor: BV_ANCHOR.into(),
                    pass: true,
                });
            }
            Survivor {
                a: t.0,
                b: t.1,
                c: t.2,
                trace,
            }
        })
        .collect();
    Ok(Verdict {
        m: ctx.m(),
        n: ctx.n(),
        mode,
        search_box: searched,
        classification: Classification::of(ctx, &kept),
        survivors,
        numeric_survivors: numeric,
        bv_filter: status,
    })
}

/// Outcome of scanning every `c` for one `(a,b)` at one `(m,n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pub a: i64,
    pub b: i64,
    pub m: u32,
    pub n: u32,
    pub c_range: (i64, i64),
    /// Values of `c` for which every constraint holds; must be empty.
    pub passing_c: Vec<i64>,
    /// For each `c`, the first constraint that fails.
    pub first_failures: Vec<(i64, String)>,
}

impl PairReport {
    pub fn impossible(&self) -> bool {
        self.passing_c.is_empty()
    }
}

pub fn check_pair(ctx: EmbeddingContext, a: i64, b: i64) -> PairReport {
    let system = build_system(ctx);
    let cap = 4 * ctx.m() as i64;
    let c_range = (-b, cap);
    let traces: Vec<(i64, Trace)> = (c_range.0..=c_range.1)
        .into_par_iter()
        .map(|c| (c, check_triple(&system, (a, b, c))))
        .collect();
    let mut passing_c = Vec::new();
    let mut first_failures = Vec::new();
    for (c, tr) in traces {
        match tr.first_failure() {
            None => passing_c.push(c),
            Some(anchor) => first_failures.push((c, anchor.to_string())),
        }
    }
    PairReport {
        a,
        b,
        m: ctx.m(),
        n: ctx.n(),
        c_range,
        passing_c,
        first_failures,
    }
}

/// Sample contexts for the pairs `(a,b)` that no embedding can realize.
pub fn impossible_pair_samples() -> Vec<((i64, i64), (u32, u32))> {
    vec![
        ((3, 2), (10, 13)),
        ((4, 3), (10, 13)),
        ((5, 4), (10, 13)),
        ((5, 5), (8, 9)),
        ((5, 6), (10, 14)),
    ]
}

pub fn verify_impossible_pairs() -> Vec<PairReport> {
    impossible_pair_samples()
        .into_iter()
        .map(|((a, b), (m, n))| check_pair(EmbeddingContext::new(m, n).expect("valid sample"), a, b))
        .collect()
}

/// Symbolic form of a constraint, for display. Equalities are returned as
/// the class that must vanish; expensive for large `m`.
pub fn symbolic_payload(
    system: &ConstraintSystem,
    c: &Constraint,
    cn: &CNSeries<PolyABC>,
    euler: &EulerData<PolyABC>,
) -> String {
    let ctx = system.ctx;
    let t = ChernData::symbolic();
    match &c.payload {
        Payload::Divisibility { modulus, poly } => format!("{modulus} | {poly}"),
        Payload::TwiceABound { bound } => format!("2a <= {bound}"),
        Payload::BundleNonneg => format!("{} >= 0", crate::chern::chern_e(ctx.ambient(), &t)),
        Payload::PullbackNonneg { k } => {
            let mut pb = Pullback::new(ctx, &t);
            format!("{} >= 0", pb.special(*k))
        }
        Payload::Vanishing { k } => format!("{} = 0", cn.gamma[*k as usize]),
        Payload::EulerEquality => {
            let diff = cn.gamma[ctx.rho() as usize].sub(&euler.e).expect("same ambient");
            format!("{diff} = 0")
        }
        Payload::IntersectionNonneg { i } => format!("{} >= 0", euler.d[*i as usize]),
        Payload::NormalNonneg { k } => format!("{} >= 0", cn.gamma[*k as usize]),
    }
}
