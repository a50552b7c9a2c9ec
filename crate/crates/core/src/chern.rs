//! Chern classes attached to a hypothetical embedding Gr(2,m) → Gr(2,n).
//!
//! The embedding enters only through its Chern data `(a,b,c)`:
//! `c_1(E) = a ω_{1,0}` and `c_2(E) = b ω_{1,0}^2 + c ω_{1,1}`, where `E` is
//! the pullback of the dual universal bundle. Every routine here is generic
//! over the coefficient ring, so the same code runs symbolically over
//! `Z[a,b,c]` and numerically on a fixed integer triple.

use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::PolyABC;
use crate::ring::{binomial, Coeff};
use crate::schubert::{Ambient, Partition2, SchubertClass};
use crate::series::TruncSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EmbeddingContext {
    m: u32,
    n: u32,
}

impl EmbeddingContext {
    pub fn new(m: u32, n: u32) -> Result<Self> {
        if m < 4 || n < m {
            return Err(Error::InvalidContext { m, n });
        }
        Ok(Self { m, n })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Real rank over C of the normal bundle, `2n - 2m`.
    pub fn rho(&self) -> u32 {
        2 * (self.n - self.m)
    }

    /// `2m - 4`, the complex dimension of Gr(2,m).
    pub fn top_degree(&self) -> u32 {
        2 * self.m - 4
    }

    pub fn ambient(&self) -> Ambient {
        Ambient::Finite(self.m)
    }

    pub fn target(&self) -> Ambient {
        Ambient::Finite(self.n)
    }

    /// The normal bundle's top Chern class lives in a nonzero degree.
    pub fn has_constraints(&self) -> bool {
        self.rho() <= self.top_degree()
    }

    /// `2n <= 3m - 2`, where the refined one-variable equations apply.
    pub fn refined_range(&self) -> bool {
        2 * self.n + 2 <= 3 * self.m
    }

    /// `n <= (3m - 6)/2`, the range where the derived facts `c >= 1`, `a^2 > 4b` hold.
    pub fn derived_fact_range(&self) -> bool {
        2 * self.n + 6 <= 3 * self.m
    }

    /// Degrees where the monomial coordinates of `Γ_k` are unique and extracted.
    pub fn coordinate_limit(&self) -> u32 {
        self.rho().min(self.m - 2)
    }
}

/// Chern data `(a,b,c)` over some coefficient ring.
#[derive(Clone, Debug, PartialEq)]
pub struct ChernData<C> {
    pub a: C,
    pub b: C,
    pub c: C,
}

impl ChernData<PolyABC> {
    pub fn symbolic() -> Self {
        Self {
            a: PolyABC::a(),
            b: PolyABC::b(),
            c: PolyABC::c(),
        }
    }
}

impl ChernData<BigInt> {
    pub fn triple(a: i64, b: i64, c: i64) -> Self {
        Self {
            a: BigInt::from(a),
            b: BigInt::from(b),
            c: BigInt::from(c),
        }
    }
}

fn cls<C: Coeff>(amb: Ambient, terms: &[(u32, u32, C)]) -> SchubertClass<C> {
    SchubertClass::from_terms(amb, terms.iter().map(|(i, j, c)| (Partition2 { i: *i, j: *j }, c.clone())))
}

/// `c(E) = 1 + a ω_{1,0} + b ω_{2,0} + (b+c) ω_{1,1}`.
pub fn chern_e<C: Coeff>(amb: Ambient, t: &ChernData<C>) -> SchubertClass<C> {
    cls(
        amb,
        &[
            (0, 0, C::one()),
            (1, 0, t.a.clone()),
            (2, 0, t.b.clone()),
            (1, 1, t.b.add_ref(&t.c)),
        ],
    )
}

/// The four total Chern classes in the normal-bundle equation
/// `c(N) c(Ě⊗E) c(Ě(2,m))^m = c(E)^n c(E(2,m)⊗Ě(2,m))`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChernFactors<C> {
    /// `c(E)`
    pub bundle: SchubertClass<C>,
    /// `c(Ě⊗E) = 1 + (4b - a^2) ω_{1,0}^2 + 4c ω_{1,1}`
    pub bundle_end: SchubertClass<C>,
    /// `c(Ě(2,m)) = 1 + ω_{1,0} + ω_{1,1}`
    pub taut_dual: SchubertClass<C>,
    /// `c(E(2,m)⊗Ě(2,m)) = 1 - ω_{1,0}^2 + 4 ω_{1,1}`
    pub taut_end: SchubertClass<C>,
}

pub fn chern_factors<C: Coeff>(amb: Ambient, t: &ChernData<C>) -> ChernFactors<C> {
    let four = C::from_int(4);
    let disc = four.mul_ref(&t.b).sub_ref(&t.a.mul_ref(&t.a));
    // x ω_{1,0}^2 + y ω_{1,1} = x ω_{2,0} + (x+y) ω_{1,1}
    let bundle_end = cls(
        amb,
        &[
            (0, 0, C::one()),
            (2, 0, disc.clone()),
            (1, 1, disc.add_ref(&four.mul_ref(&t.c))),
        ],
    );
    let one = C::one();
    ChernFactors {
        bundle: chern_e(amb, t),
        bundle_end,
        taut_dual: cls(amb, &[(0, 0, one.clone()), (1, 0, one.clone()), (1, 1, one.clone())]),
        taut_end: cls(amb, &[(0, 0, one.clone()), (2, 0, one.neg_ref()), (1, 1, C::from_int(3))]),
    }
}

/// Pullbacks `φ*(ω̃_{p,q})` of target Schubert cycles.
///
/// With `u = φ*ω̃_{1,0} = a ω_{1,0}` and `v = φ*ω̃_{1,1} = b ω_{1,0}^2 + c ω_{1,1}`,
/// the special cycles obey `P_s = u P_{s-1} - v P_{s-2}` and
/// `φ*(ω̃_{p,q}) = P_{p-q} v^q`.
#[derive(Clone, Debug)]
pub struct Pullback<C> {
    ctx: EmbeddingContext,
    u: SchubertClass<C>,
    v: SchubertClass<C>,
    specials: Vec<SchubertClass<C>>,
    v_powers: Vec<SchubertClass<C>>,
}

impl<C: Coeff> Pullback<C> {
    pub fn new(ctx: EmbeddingContext, t: &ChernData<C>) -> Self {
        let amb = ctx.ambient();
        let u = cls(amb, &[(1, 0, t.a.clone())]);
        let v = cls(amb, &[(2, 0, t.b.clone()), (1, 1, t.b.add_ref(&t.c))]);
        let one = SchubertClass::one(amb);
        Self {
            ctx,
            specials: vec![one.clone(), u.clone()],
            v_powers: vec![one],
            u,
            v,
        }
    }

    pub fn u(&self) -> &SchubertClass<C> {
        &self.u
    }

    pub fn v(&self) -> &SchubertClass<C> {
        &self.v
    }

    /// `φ*(ω̃_{s,0})`.
    pub fn special(&mut self, s: u32) -> &SchubertClass<C> {
        let top = self.ctx.top_degree();
        while self.specials.len() <= s as usize {
            let k = self.specials.len();
            let next = if k as u32 > top {
                SchubertClass::zero(self.ctx.ambient())
            } else {
                let up = self.u.mul(&self.specials[k - 1]).expect("same ambient");
                let down = self.v.mul(&self.specials[k - 2]).expect("same ambient");
                up.sub(&down).expect("same ambient")
            };
            self.specials.push(next);
        }
        &self.specials[s as usize]
    }

    pub fn v_power(&mut self, q: u32) -> &SchubertClass<C> {
        while self.v_powers.len() <= q as usize {
            let next = self.v_powers.last().unwrap().mul(&self.v).expect("same ambient");
            self.v_powers.push(next);
        }
        &self.v_powers[q as usize]
    }

    /// `φ*(ω̃_{p,q})` for `p` in the box of Gr(2,n).
    pub fn cycle(&mut self, p: Partition2) -> Result<SchubertClass<C>> {
        if p.i + 2 > self.ctx.n() {
            return Err(Error::OutsideBox {
                partition: p.to_string(),
                d: 2,
                m: self.ctx.n(),
            });
        }
        if p.degree() > self.ctx.top_degree() {
            return Ok(SchubertClass::zero(self.ctx.ambient()));
        }
        let s = self.special(p.i - p.j).clone();
        let vq = self.v_power(p.j).clone();
        s.mul(&vq)
    }
}

pub fn pullback_cycle<C: Coeff>(
    ctx: EmbeddingContext,
    t: &ChernData<C>,
    p: Partition2,
) -> Result<SchubertClass<C>> {
    Pullback::new(ctx, t).cycle(p)
}

/// Intersection numbers and the Euler class of the real normal bundle.
#[derive(Clone, Debug, PartialEq)]
pub struct EulerData<C> {
    /// `d_i = X · ω̃_{n-2-i, 2m-n-2+i}` for `i = 0..=n-m`.
    pub d: Vec<C>,
    /// `e(N_R) = Σ d_i φ*(ω̃_{2n-2m-i, i})`.
    pub e: SchubertClass<C>,
    /// `γ_i`: the `ω_{2n-2m-2i,0}` coefficient of `φ*(ω̃_{2n-2m-2i,0})`.
    pub gamma: Vec<C>,
}

pub fn euler_class<C: Coeff>(ctx: EmbeddingContext, t: &ChernData<C>) -> EulerData<C> {
    let mut pb = Pullback::new(ctx, t);
    euler_class_with(ctx, &mut pb)
}

pub fn euler_class_with<C: Coeff>(ctx: EmbeddingContext, pb: &mut Pullback<C>) -> EulerData<C> {
    let (m, n) = (ctx.m() as i64, ctx.n() as i64);
    let rho = ctx.rho();
    let amb = ctx.ambient();
    let mut d = Vec::new();
    let mut e = SchubertClass::zero(amb);
    let mut gamma = Vec::new();
    for i in 0..=(n - m) {
        let q = 2 * m - n - 2 + i;
        let s = rho - 2 * i as u32;
        // the dual target cycle has a negative second index: it does not exist
        let di = if q < 0 {
            C::zero()
        } else {
            let p = pb.special(s).clone();
            let vq = pb.v_power(q as u32).clone();
            p.mul(&vq).expect("same ambient").top_value().expect("finite ambient")
        };
        if !di.is_zero() && rho <= ctx.top_degree() {
            let p = pb.special(s).clone();
            let vi = pb.v_power(i as u32).clone();
            let term = p.mul(&vi).expect("same ambient").scale(&di);
            e = e.add(&term).expect("same ambient");
        }
        gamma.push(pb.special(s).coeff_ij(s, 0));
        d.push(di);
    }
    EulerData { d, e, gamma }
}

/// The total Chern class of the normal bundle split into degree pieces.
#[derive(Clone, Debug, PartialEq)]
pub struct CNSeries<C> {
    pub m: u32,
    pub n: u32,
    /// `Γ_0, ..., Γ_K`, each a pure class of its degree.
    pub gamma: Vec<SchubertClass<C>>,
    /// `α_k`: the `ω_{1,0}^k` coordinate of `Γ_k`, for `k <= min(2n-2m, m-2)`.
    pub alpha: Vec<C>,
    /// `β_k`: the last monomial coordinate of `Γ_k` (`ω_{1,1}^{k/2}` for even `k`).
    pub beta: Vec<C>,
}

impl<C: Coeff> CNSeries<C> {
    pub fn total(&self) -> SchubertClass<C> {
        let amb = Ambient::Finite(self.m);
        self.gamma
            .iter()
            .fold(SchubertClass::zero(amb), |acc, g| acc.add(g).expect("same ambient"))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "m": self.m,
            "n": self.n,
            "gamma": self.gamma.iter().map(|g| g.to_json()).collect::<Vec<_>>(),
            "alpha": self.alpha.iter().map(|x| x.to_json()).collect::<Vec<_>>(),
            "beta": self.beta.iter().map(|x| x.to_json()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let num = |k: &str| {
            v[k].as_u64()
                .map(|x| x as u32)
                .ok_or_else(|| Error::Json(format!("missing {k}")))
        };
        let arr = |k: &str| {
            v[k].as_array()
                .cloned()
                .ok_or_else(|| Error::Json(format!("missing {k}")))
        };
        Ok(Self {
            m: num("m")?,
            n: num("n")?,
            gamma: arr("gamma")?
                .iter()
                .map(SchubertClass::from_json)
                .collect::<Result<_>>()?,
            alpha: arr("alpha")?.iter().map(C::from_json).collect::<Result<_>>()?,
            beta: arr("beta")?.iter().map(C::from_json).collect::<Result<_>>()?,
        })
    }
}

pub fn cn_total<C: Coeff>(ctx: EmbeddingContext, t: &ChernData<C>) -> CNSeries<C> {
    cn_total_upto(ctx, t, ctx.top_degree())
}

/// Solves for `Γ_0..=Γ_K`, `K = min(max_degree, 2m-4)`, degree by degree:
/// `Γ_k = R_k - Σ_{i<k} Γ_i M_{k-i}` with `M = c(Ě⊗E) c(Ě(2,m))^m` and
/// `R = c(E)^n c(E(2,m)⊗Ě(2,m))`. `M_0 = 1`, so the solution is unique.
pub fn cn_total_upto<C: Coeff>(ctx: EmbeddingContext, t: &ChernData<C>, max_degree: u32) -> CNSeries<C> {
    let amb = ctx.ambient();
    let top = max_degree.min(ctx.top_degree());
    let f = chern_factors(amb, t);
    let mult = f
        .taut_dual
        .pow_upto(ctx.m(), Some(top))
        .mul_upto(&f.bundle_end, top)
        .expect("same ambient");
    let rhs = f
        .bundle
        .pow_upto(ctx.n(), Some(top))
        .mul_upto(&f.taut_end, top)
        .expect("same ambient");
    let mult = mult.graded_pieces(top);
    let rhs = rhs.graded_pieces(top);

    let mut gamma: Vec<SchubertClass<C>> = Vec::with_capacity(top as usize + 1);
    for k in 0..=top as usize {
        let mut g = rhs[k].clone();
        for (i, gi) in gamma.iter().enumerate() {
            if gi.is_zero() || mult[k - i].is_zero() {
                continue;
            }
            g = g.sub(&gi.mul(&mult[k - i]).expect("same ambient")).expect("same ambient");
        }
        gamma.push(g);
    }

    let lim = ctx.coordinate_limit().min(top);
    let mut alpha = Vec::new();
    let mut beta = Vec::new();
    for k in 0..=lim {
        let coords = gamma[k as usize]
            .to_monomial_deg(k)
            .expect("degree within the independent range");
        alpha.push(coords[0].clone());
        beta.push(coords.last().unwrap().clone());
    }
    CNSeries {
        m: ctx.m(),
        n: ctx.n(),
        gamma,
        alpha,
        beta,
    }
}

/// Both sides of the `ω_{1,0}` equation at order `m-1`:
/// `(Σ α_k x^k)(1 + (4b-a^2)x^2)(1+x)^{m-1} = (1 + ax + bx^2)^n (1-x)`.
///
/// `Σ α_k x^k` is the full projection of `Γ`, which agrees with the
/// truncated sum up to `2n-2m` once the vanishing equations hold.
pub fn refined_eq_10<C: Coeff>(
    ctx: EmbeddingContext,
    t: &ChernData<C>,
    cn: &CNSeries<C>,
) -> Result<(TruncSeries<C>, TruncSeries<C>)> {
    check_refined(ctx)?;
    let alpha = cn.total().project_q10()?;
    Ok((
        alpha.mul(&q10_multiplier(ctx, t))?,
        q10_rhs(ctx, t),
    ))
}

/// Both sides of the `ω_{1,1}` equation at order `⌊(m-2)/2⌋+1`:
/// `(Σ β_{2k} y^k)(1 + 4cy)(1+y)^m = (1 + cy)^n (1 + 4y)`.
pub fn refined_eq_11<C: Coeff>(
    ctx: EmbeddingContext,
    t: &ChernData<C>,
    cn: &CNSeries<C>,
) -> Result<(TruncSeries<C>, TruncSeries<C>)> {
    check_refined(ctx)?;
    let beta = cn.total().project_q11()?;
    Ok((beta.mul(&q11_multiplier(ctx, t))?, q11_rhs(ctx, t)))
}

fn check_refined(ctx: EmbeddingContext) -> Result<()> {
    if !ctx.refined_range() {
        return Err(Error::Hypothesis(format!(
            "need 2n <= 3m - 2, got m = {}, n = {}",
            ctx.m(),
            ctx.n()
        )));
    }
    Ok(())
}

fn q10_order(ctx: EmbeddingContext) -> usize {
    (ctx.m() - 1) as usize
}

fn q11_order(ctx: EmbeddingContext) -> usize {
    ((ctx.m() - 2) / 2 + 1) as usize
}

fn q10_multiplier<C: Coeff>(ctx: EmbeddingContext, t: &ChernData<C>) -> TruncSeries<C> {
    let k = q10_order(ctx);
    let disc = C::from_int(4).mul_ref(&t.b).sub_ref(&t.a.mul_ref(&t.a));
    TruncSeries::new(k, vec![C::one(), C::zero(), disc])
        .mul(&TruncSeries::one_plus_x_pow(k, ctx.m() as i64 - 1))
        .expect("same order")
}

fn q10_rhs<C: Coeff>(ctx: EmbeddingContext, t: &ChernData<C>) -> TruncSeries<C> {
    let k = q10_order(ctx);
    TruncSeries::new(k, vec![C::one(), t.a.clone(), t.b.clone()])
        .pow(ctx.n())
        .mul(&TruncSeries::from_ints(k, &[1, -1]))
        .expect("same order")
}

fn q11_multiplier<C: Coeff>(ctx: EmbeddingContext, t: &ChernData<C>) -> TruncSeries<C> {
    let k = q11_order(ctx);
    TruncSeries::new(k, vec![C::one(), C::from_int(4).mul_ref(&t.c)])
        .mul(&TruncSeries::one_plus_x_pow(k, ctx.m() as i64))
        .expect("same order")
}

fn q11_rhs<C: Coeff>(ctx: EmbeddingContext, t: &ChernData<C>) -> TruncSeries<C> {
    let k = q11_order(ctx);
    TruncSeries::new(k, vec![C::one(), t.c.clone()])
        .pow(ctx.n())
        .mul(&TruncSeries::from_ints(k, &[1, 4]))
        .expect("same order")
}

/// The `Q_{1,0}` image of `c(N)`, which depends on `(a,b)` only:
/// the `x^k` coefficient is `α_k`.
pub fn alpha_series<C: Coeff>(ctx: EmbeddingContext, a: &C, b: &C) -> TruncSeries<C> {
    let t = ChernData {
        a: a.clone(),
        b: b.clone(),
        c: C::zero(),
    };
    q10_rhs(ctx, &t)
        .div(&q10_multiplier(ctx, &t))
        .expect("unit constant term")
}

/// The `Q_{1,1}` image of `c(N)`, which depends on `c` only:
/// the `y^k` coefficient is the `ω_{1,1}^k` coordinate of `Γ_{2k}`.
pub fn beta_series<C: Coeff>(ctx: EmbeddingContext, c: &C) -> TruncSeries<C> {
    let t = ChernData {
        a: C::zero(),
        b: C::zero(),
        c: c.clone(),
    };
    q11_rhs(ctx, &t)
        .div(&q11_multiplier(ctx, &t))
        .expect("unit constant term")
}

/// Necessary conditions on `(a,b)` read off [`alpha_series`]: with
/// `Γ_k = 0` above `2n-2m` and `Γ_k >= 0` below, `α_k` must vanish for
/// `2n-2m < k <= m-2` and be non-negative for `k <= min(2n-2m, m-2)`.
pub fn alpha_admissible(ctx: EmbeddingContext, a: &BigInt, b: &BigInt) -> bool {
    let s = alpha_series(ctx, a, b);
    let rho = ctx.rho() as usize;
    s.coeffs().iter().enumerate().all(|(k, x)| {
        if k > rho {
            x.sign() == num_bigint::Sign::NoSign
        } else {
            x.sign() != num_bigint::Sign::Minus
        }
    })
}

/// `β`'s counterpart: the `ω_{1,1}^k` coordinate of `Γ_{2k}` vanishes once `2k > 2n-2m`.
pub fn beta_admissible(ctx: EmbeddingContext, c: &BigInt) -> bool {
    let s = beta_series(ctx, c);
    let half = (ctx.n() - ctx.m()) as usize;
    s.coeffs()
        .iter()
        .enumerate()
        .all(|(k, x)| k <= half || x.sign() == num_bigint::Sign::NoSign)
}

/// Closed-form `Γ_1 = (an - m) ω_{1,0}`, used as a cross-check.
pub fn gamma1_closed_form(ctx: EmbeddingContext) -> SchubertClass<PolyABC> {
    let n = BigInt::from(ctx.n());
    let m = PolyABC::constant(ctx.m());
    let x = PolyABC::a().scale(&n).sub_ref(&m);
    SchubertClass::term(ctx.ambient(), Partition2 { i: 1, j: 0 }, x)
}

/// Closed-form `Γ_2` as `(ω_{1,0}^2, ω_{1,1})` coordinates:
/// `C(n,2)a^2 - amn + m^2 - C(m,2) + a^2 - 1 + b(n-4)` and `c(n-4) - m + 4`.
pub fn gamma2_closed_form(ctx: EmbeddingContext) -> (PolyABC, PolyABC) {
    let (m, n) = (ctx.m() as i64, ctx.n() as i64);
    let a = PolyABC::a();
    let a2 = a.mul_ref(&a);
    let x = a2
        .scale(&binomial(n as u64, 2))
        .sub_ref(&a.scale(&BigInt::from(m * n)))
        .add_ref(&PolyABC::constant(m * m))
        .sub_ref(&PolyABC::constant(binomial(m as u64, 2)))
        .add_ref(&a2)
        .sub_ref(&PolyABC::one())
        .add_ref(&PolyABC::b().scale(&BigInt::from(n - 4)));
    let y = PolyABC::c()
        .scale(&BigInt::from(n - 4))
        .sub_ref(&PolyABC::constant(m - 4));
    (x, y)
}
