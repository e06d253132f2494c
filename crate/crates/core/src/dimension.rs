//! Global dimension, self-injectivity, budgeted finitistic-dimension estimates and
//! evaluation of the dimension inequalities for the matrix rings of [`crate::builder`].
//!
//! Finitistic dimensions are only ever bracketed: the lower end comes from explicit
//! witness modules of finite projective dimension, the upper end from a finite global
//! dimension (or `0` for self-injective algebras). All statements are about finitely
//! generated modules.

use std::fmt;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::FdAlgebra;
use crate::builder::{build_block_extension, build_lambda, build_tiled_triangular, BlockExtensionSpec, BuiltRing, LambdaSpec, TiledTriangularSpec};
use crate::decompose::AlgebraCtx;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{unit_vec, Matrix, Subspace};
use crate::module::{ext_dim_from, finite_pd_within, proj_dim, resolution_stages, LeftModule, PdValue};

/// Integers extended by `±∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ExtInt {
    NegInf,
    Fin(i64),
    PosInf,
}

impl ExtInt {
    /// `∞ + k = ∞`; `-∞` (a zero ring or module) counts as `0` in sums.
    pub fn add(self, other: ExtInt) -> ExtInt {
        match (self, other) {
            (ExtInt::PosInf, _) | (_, ExtInt::PosInf) => ExtInt::PosInf,
            (ExtInt::Fin(a), ExtInt::Fin(b)) => ExtInt::Fin(a + b),
            (ExtInt::Fin(a), ExtInt::NegInf) | (ExtInt::NegInf, ExtInt::Fin(a)) => ExtInt::Fin(a),
            (ExtInt::NegInf, ExtInt::NegInf) => ExtInt::NegInf,
        }
    }

    pub fn plus(self, k: i64) -> ExtInt {
        match self {
            ExtInt::Fin(a) => ExtInt::Fin(a + k),
            other => other,
        }
    }

    pub fn is_finite(self) -> bool {
        !matches!(self, ExtInt::PosInf)
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::NegInf => write!(f, "-inf"),
            ExtInt::Fin(k) => write!(f, "{k}"),
            ExtInt::PosInf => write!(f, "inf"),
        }
    }
}

/// A closed interval known to contain a dimension. `cutoff` marks an upper end that is
/// infinite only because a resolution was cut off.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: ExtInt,
    pub hi: ExtInt,
    pub cutoff: bool,
}

impl Interval {
    pub fn exact(v: ExtInt) -> Self {
        Interval { lo: v, hi: v, cutoff: false }
    }

    pub fn fin(k: i64) -> Self {
        Self::exact(ExtInt::Fin(k))
    }

    pub fn from_pd(pd: PdValue) -> Self {
        match pd {
            PdValue::MinusInfinity => Self::exact(ExtInt::NegInf),
            PdValue::Exact(k) => Self::fin(k as i64),
            PdValue::Infinite => Self::exact(ExtInt::PosInf),
            PdValue::AtLeast(k) => Interval { lo: ExtInt::Fin(k as i64), hi: ExtInt::PosInf, cutoff: true },
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn add(self, o: Interval) -> Interval {
        Interval { lo: self.lo.add(o.lo), hi: self.hi.add(o.hi), cutoff: self.cutoff || o.cutoff }
    }

    pub fn plus(self, k: i64) -> Interval {
        Interval { lo: self.lo.plus(k), hi: self.hi.plus(k), cutoff: self.cutoff }
    }

    pub fn max(self, o: Interval) -> Interval {
        Interval { lo: self.lo.max(o.lo), hi: self.hi.max(o.hi), cutoff: self.cutoff || o.cutoff }
    }

    pub fn sum(items: impl IntoIterator<Item = Interval>) -> Interval {
        items.into_iter().fold(Interval::fin(0), Interval::add)
    }

    pub fn max_of(items: impl IntoIterator<Item = Interval>) -> Interval {
        items.into_iter().fold(Interval::exact(ExtInt::NegInf), Interval::max)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    /// Proven from the computed values.
    Holds,
    /// Proven violated.
    Fails,
    /// Not decided, but compatible with the computed bracket.
    Consistent,
    /// Not decided because a resolution was cut off or a hypothesis could not be verified.
    Inconclusive,
    NotApplicable,
}

/// One evaluated inequality `lhs ≤ rhs`.
#[derive(Clone, Debug, Serialize)]
pub struct BoundCheck {
    pub name: String,
    pub lhs: Interval,
    pub rhs: Interval,
    pub status: CheckStatus,
    /// Named sub-computations, e.g. `("gldim A", "1")`.
    pub inputs: Vec<(String, String)>,
    pub note: String,
}

impl BoundCheck {
    pub fn compare(name: impl Into<String>, lhs: Interval, rhs: Interval, inputs: Vec<(String, String)>) -> Self {
        let status = if lhs.hi <= rhs.lo {
            CheckStatus::Holds
        } else if lhs.lo > rhs.hi {
            CheckStatus::Fails
        } else if lhs.cutoff || rhs.cutoff {
            CheckStatus::Inconclusive
        } else {
            CheckStatus::Consistent
        };
        BoundCheck { name: name.into(), lhs, rhs, status, inputs, note: String::new() }
    }

    fn not_applicable(name: impl Into<String>, note: impl Into<String>) -> Self {
        BoundCheck {
            name: name.into(),
            lhs: Interval::exact(ExtInt::NegInf),
            rhs: Interval::exact(ExtInt::PosInf),
            status: CheckStatus::NotApplicable,
            inputs: Vec::new(),
            note: note.into(),
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }
}

/// Search parameters of the finitistic-dimension estimator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Largest module or syzygy dimension the search resolves.
    pub max_dim: usize,
    /// Random generator samples per indecomposable projective.
    pub samples: usize,
    /// Resolution depth.
    pub depth: usize,
    pub seed: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_dim: 64, samples: 6, depth: 8, seed: 0 }
    }
}

impl Budget {
    /// Parses `max_dim,samples,depth`.
    pub fn parse(s: &str, seed: u64) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let nums = parts
            .iter()
            .map(|p| p.parse::<usize>().map_err(|_| Error::Parse(format!("budget component '{p}' is not a number"))))
            .collect::<Result<Vec<_>>>()?;
        match nums.as_slice() {
            [m, s, d] => Ok(Budget { max_dim: *m, samples: *s, depth: *d, seed }),
            _ => Err(Error::Parse("budget must be max_dim,samples,depth".into())),
        }
    }
}

pub fn global_dimension<F: Field>(ctx: &Arc<AlgebraCtx<F>>, depth: usize) -> PdValue {
    let pds: Vec<PdValue> = LeftModule::simples(ctx).iter().map(|s| proj_dim(s, depth)).collect();
    combine_sup(&pds)
}

/// Supremum of projective dimensions, ignoring zero modules.
pub fn combine_sup(pds: &[PdValue]) -> PdValue {
    let mut out = PdValue::MinusInfinity;
    for &p in pds {
        out = match (out, p) {
            (PdValue::Infinite, _) | (_, PdValue::Infinite) => PdValue::Infinite,
            (x, PdValue::MinusInfinity) | (PdValue::MinusInfinity, x) => x,
            (PdValue::Exact(a), PdValue::Exact(b)) => PdValue::Exact(a.max(b)),
            (PdValue::AtLeast(a), PdValue::AtLeast(b)) => PdValue::AtLeast(a.max(b)),
            (PdValue::AtLeast(a), PdValue::Exact(b)) | (PdValue::Exact(b), PdValue::AtLeast(a)) => PdValue::AtLeast(a.max(b)),
        };
    }
    out
}

/// `Ext^1(S, A) = 0` for every simple `S`, i.e. the regular module is injective.
pub fn is_self_injective<F: Field>(ctx: &Arc<AlgebraCtx<F>>) -> bool {
    let reg = LeftModule::regular(ctx.clone());
    LeftModule::simples(ctx).iter().all(|s| {
        let res = resolution_stages(s, 2);
        ext_dim_from(&res, &reg, 1) == Some(0)
    })
}

/// A module of the estimator family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Primitive index of the projective `A e_p` it is a quotient of.
    pub prim: usize,
    /// `simple`, a cyclic submodule `cyclic(b)`, or `P/U` for `U` one of `rad^k`,
    /// `cyclic(b)`, `gen(sample, count)`.
    pub kind: String,
    pub dim: usize,
    pub pd: PdValue,
}

#[derive(Clone, Debug, Serialize)]
pub struct FindimEstimate {
    pub lower: usize,
    /// Global dimension when finite.
    pub upper: Option<PdValue>,
    pub budget: Budget,
    /// A module realizing `lower`, when positive.
    pub witness: Option<Witness>,
    pub family_size: usize,
}

/// Lower bound for the finitistic dimension. When gldim is finite it equals fd and is
/// returned directly. Otherwise the family searched is, for each indecomposable
/// projective `P`: `P/rad^k P`, the cyclic submodules `A·b` and quotients `P/A·b` for
/// each basis vector `b` of `P`, and `P/U` with `U` generated by one or two sampled elements.
pub fn findim_estimate<F: Field>(ctx: &Arc<AlgebraCtx<F>>, budget: &Budget) -> FindimEstimate {
    let gl = global_dimension(ctx, budget.depth);
    findim_estimate_with(ctx, budget, gl)
}

fn findim_estimate_with<F: Field>(ctx: &Arc<AlgebraCtx<F>>, budget: &Budget, gl: PdValue) -> FindimEstimate {
    let f = ctx.field();
    let upper = matches!(gl, PdValue::Exact(_) | PdValue::MinusInfinity).then_some(gl);
    if let PdValue::Exact(k) = gl {
        let simples = LeftModule::simples(ctx);
        let witness = simples.iter().enumerate().find_map(|(c, s)| {
            let pd = proj_dim(s, budget.depth);
            (pd == gl && k > 0).then(|| Witness { prim: ctx.decomposition.class_reps[c], kind: "simple".into(), dim: s.dim(), pd })
        });
        return FindimEstimate { lower: k, upper, budget: *budget, witness, family_size: simples.len() };
    }
    let mut lower = 0;
    let mut witness = None;
    let mut family_size = 0;
    let mut consider = |m: &LeftModule<F>, prim: usize, kind: String| {
        if m.is_zero() || m.dim() > budget.max_dim {
            return;
        }
        family_size += 1;
        if let Some(k) = finite_pd_within(m, budget.depth, budget.max_dim) {
            if k > lower {
                lower = k;
                witness = Some(Witness { prim, kind, dim: m.dim(), pd: PdValue::Exact(k) });
            }
        }
    };
    for &p in &ctx.decomposition.class_reps {
        let proj = LeftModule::projective(ctx, p);
        // (U, label, also test U itself); repeated U are skipped
        let mut subs: Vec<(Subspace<F>, String, bool)> = Vec::new();
        let mut push = |u: Subspace<F>, kind: String, with_sub: bool| {
            if !subs.iter().any(|(v, _, _)| *v == u) {
                subs.push((u, kind, with_sub));
            }
        };
        let mut layer = Subspace::full(f, proj.dim());
        let mut k = 0;
        while !layer.is_zero() {
            k += 1;
            layer = radical_times(&proj, &layer);
            push(layer.clone(), format!("rad^{k}"), false);
        }
        for b in 0..proj.dim() {
            push(proj.generated(&[unit_vec(f, proj.dim(), b)]), format!("cyclic({b})"), true);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(budget.seed ^ (p as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        for s in 0..budget.samples {
            let u: Vec<F::El> = (0..proj.dim()).map(|_| f.random(&mut rng)).collect();
            let v: Vec<F::El> = (0..proj.dim()).map(|_| f.random(&mut rng)).collect();
            push(proj.generated(&[u.clone()]), format!("gen({s},1)"), false);
            push(proj.generated(&[u, v]), format!("gen({s},2)"), false);
        }
        for (u, kind, with_sub) in subs {
            if with_sub {
                let (m, _) = proj.submodule(&u).expect("generated submodule");
                consider(&m, p, kind.clone());
            }
            let (q, _) = proj.quotient(&u).expect("generated submodule");
            consider(&q, p, format!("P/{kind}"));
        }
    }
    FindimEstimate { lower, upper, budget: *budget, witness, family_size }
}

/// `rad(A)·U` for a submodule `U`.
fn radical_times<F: Field>(m: &LeftModule<F>, u: &Subspace<F>) -> Subspace<F> {
    let vecs: Vec<Vec<F::El>> = m
        .ctx()
        .radical
        .basis()
        .iter()
        .flat_map(|r| {
            let a = m.action_of(r);
            u.basis().iter().map(move |v| a.mul_vec(v)).collect::<Vec<_>>()
        })
        .collect();
    Subspace::span(m.field(), m.dim(), vecs)
}

/// Global and finitistic dimension data of one algebra.
#[derive(Clone, Debug, Serialize)]
pub struct DimReport {
    pub gldim: PdValue,
    pub self_injective: bool,
    pub findim_lower: usize,
    pub findim_upper: Option<PdValue>,
    pub budget: Budget,
    pub witness: Option<Witness>,
}

impl DimReport {
    /// Bracket for fd: exact `0` for self-injective algebras, otherwise
    /// `[estimator lower, gldim]` with an open upper end when gldim is not finite.
    pub fn fd_interval(&self) -> Interval {
        if self.self_injective {
            return Interval::fin(0);
        }
        let hi = match self.gldim {
            PdValue::Exact(k) => ExtInt::Fin(k as i64),
            PdValue::MinusInfinity => ExtInt::NegInf,
            _ => ExtInt::PosInf,
        };
        Interval { lo: ExtInt::Fin(self.findim_lower as i64), hi, cutoff: false }
    }

    pub fn gld_interval(&self) -> Interval {
        Interval::from_pd(self.gldim)
    }
}

pub fn dim_report<F: Field>(ctx: &Arc<AlgebraCtx<F>>, budget: &Budget) -> DimReport {
    let gldim = global_dimension(ctx, budget.depth);
    let est = findim_estimate_with(ctx, budget, gldim);
    DimReport {
        gldim,
        self_injective: is_self_injective(ctx),
        findim_lower: est.lower,
        findim_upper: est.upper,
        budget: *budget,
        witness: est.witness,
    }
}

/// Dimension data of an algebra, with `None` standing for the zero ring.
fn report_of<F: Field>(alg: Option<FdAlgebra<F>>, start: Option<&[Vec<F::El>]>, budget: &Budget) -> Result<Option<DimReport>> {
    match alg {
        None => Ok(None),
        Some(a) => {
            let ctx = AlgebraCtx::new(a, start)?;
            Ok(Some(dim_report(&ctx, budget)))
        }
    }
}

fn fd_of(r: &Option<DimReport>) -> Interval {
    r.as_ref().map_or(Interval::exact(ExtInt::NegInf), DimReport::fd_interval)
}

fn gld_of(r: &Option<DimReport>) -> Interval {
    r.as_ref().map_or(Interval::exact(ExtInt::NegInf), DimReport::gld_interval)
}

fn describe(name: &str, r: &Option<DimReport>) -> Vec<(String, String)> {
    match r {
        None => vec![(format!("{name}"), "zero ring".into())],
        Some(r) => vec![
            (format!("gldim {name}"), r.gldim.to_string()),
            (format!("fd {name}"), r.fd_interval().to_string()),
        ],
    }
}

/// `S / I` or `None` when `I = S`.
fn subquotient_or_zero<F: Field>(base: &FdAlgebra<F>, s: &Subspace<F>, unit: &[F::El], ideal: &Subspace<F>) -> Result<Option<FdAlgebra<F>>> {
    if ideal == s {
        return Ok(None);
    }
    base.subquotient(s, unit, ideal).map(Some)
}

/// Dimension data for the algebras entering the Λ inequalities.
pub struct LambdaDims {
    pub a: Option<DimReport>,
    /// `A_i / I_i` for `i = 2..n`.
    pub ai_mod_ii: Vec<Option<DimReport>>,
    /// `A / I_i` for `i = 2..n`.
    pub a_mod_ii: Vec<Option<DimReport>>,
    pub lambda: Option<DimReport>,
}

pub fn lambda_dims<F: Field>(spec: &LambdaSpec<F>, budget: &Budget) -> Result<LambdaDims> {
    let base = &spec.base;
    let unit = base.unit().to_vec();
    let full = base.full_space();
    let a = report_of(Some(base.clone()), None, budget)?;
    let mut ai_mod_ii = Vec::new();
    let mut a_mod_ii = Vec::new();
    for i in 2..=spec.n {
        ai_mod_ii.push(report_of(subquotient_or_zero(base, spec.a(i), &unit, spec.ideal(i))?, None, budget)?);
        a_mod_ii.push(report_of(subquotient_or_zero(base, &full, &unit, spec.ideal(i))?, None, budget)?);
    }
    let lam = build_lambda(spec)?;
    let lambda = report_of(Some(lam.algebra.clone()), Some(&lam.idems), budget)?;
    Ok(LambdaDims { a, ai_mod_ii, a_mod_ii, lambda })
}

fn lambda_inputs(d: &LambdaDims) -> Vec<(String, String)> {
    let mut inputs = describe("A", &d.a);
    for (k, r) in d.ai_mod_ii.iter().enumerate() {
        inputs.extend(describe(&format!("A_{0}/I_{0}", k + 2), r));
    }
    for (k, r) in d.a_mod_ii.iter().enumerate() {
        inputs.extend(describe(&format!("A/I_{}", k + 2), r));
    }
    inputs.extend(describe("Lambda", &d.lambda));
    inputs
}

/// `fd(A) − 1 ≤ fd(Λ) ≤ n + Σ fd(A_i/I_i) + fd(A)`.
pub fn cor_1_2_fd<F: Field>(spec: &LambdaSpec<F>, budget: &Budget) -> Result<Vec<BoundCheck>> {
    let d = lambda_dims(spec, budget)?;
    Ok(cor_1_2_fd_from(spec.n, &d))
}

pub fn cor_1_2_fd_from(n: usize, d: &LambdaDims) -> Vec<BoundCheck> {
    let inputs = lambda_inputs(d);
    let fd_a = fd_of(&d.a);
    let fd_l = fd_of(&d.lambda);
    let rhs = Interval::sum(d.ai_mod_ii.iter().map(fd_of)).add(fd_a).plus(n as i64);
    vec![
        BoundCheck::compare("cor_1_2_fd.lower", fd_a.plus(-1), fd_l, inputs.clone()),
        BoundCheck::compare("cor_1_2_fd.upper", fd_l, rhs, inputs),
    ]
}

/// `max{gld(A_i/I_i), gld(A)} − 1 ≤ gld(Λ) ≤ Σ gld(A/I_i) + gld(A) + n`.
pub fn cor_1_2_gld<F: Field>(spec: &LambdaSpec<F>, budget: &Budget) -> Result<Vec<BoundCheck>> {
    let d = lambda_dims(spec, budget)?;
    Ok(cor_1_2_gld_from(spec.n, &d))
}

pub fn cor_1_2_gld_from(n: usize, d: &LambdaDims) -> Vec<BoundCheck> {
    let inputs = lambda_inputs(d);
    let gld_a = gld_of(&d.a);
    let gld_l = gld_of(&d.lambda);
    let lhs = Interval::max_of(d.ai_mod_ii.iter().map(gld_of)).max(gld_a).plus(-1);
    let rhs = Interval::sum(d.a_mod_ii.iter().map(gld_of)).add(gld_a).plus(n as i64);
    vec![
        BoundCheck::compare("prop_4_8.lower", lhs, gld_l, inputs.clone()),
        BoundCheck::compare("prop_4_8.upper", gld_l, rhs, inputs),
    ]
}

/// Alias: the global-dimension form of the two-sided bound.
pub fn prop_4_8<F: Field>(spec: &LambdaSpec<F>, budget: &Budget) -> Result<Vec<BoundCheck>> {
    cor_1_2_gld(spec, budget)
}

/// Whether `spec` has `A_i = A` and `I_ij = I_j` (the shape of the triangular-pattern ring).
pub fn is_row_pattern<F: Field>(spec: &LambdaSpec<F>) -> bool {
    let full = spec.base.full_space();
    (2..=spec.n).all(|i| spec.a(i) == &full) && (2..=spec.n).all(|i| (2..i).all(|j| spec.ideal_ij(i, j) == spec.ideal(j)))
}

/// `max{gld(A/I_i) − 1, gld(A) − 1, pd(_A I_i)} ≤ gld(Γ) ≤ max{gld(A/I_i) + pd(_A I_j) + 3, gld(A) + 1}`
/// for the row-pattern ring Γ.
pub fn cor_4_11<F: Field>(spec: &LambdaSpec<F>, budget: &Budget) -> Result<Vec<BoundCheck>> {
    if !is_row_pattern(spec) {
        return Ok(vec![BoundCheck::not_applicable("cor_4_11", "needs A_i = A and I_ij = I_j")]);
    }
    let d = lambda_dims(spec, budget)?;
    let base = &spec.base;
    let actx = AlgebraCtx::new(base.clone(), None)?;
    let reg = LeftModule::regular(actx);
    let mut pds = Vec::new();
    for i in 2..=spec.n {
        let (sub, _) = reg.submodule(spec.ideal(i))?;
        pds.push(Interval::from_pd(proj_dim(&sub, budget.depth)));
    }
    let mut inputs = lambda_inputs(&d);
    for (k, p) in pds.iter().enumerate() {
        inputs.push((format!("pd I_{}", k + 2), p.to_string()));
    }
    let gld_a = gld_of(&d.a);
    let gld_g = gld_of(&d.lambda);
    let mut lhs = gld_a.plus(-1);
    for (q, p) in d.a_mod_ii.iter().zip(&pds) {
        lhs = lhs.max(gld_of(q).plus(-1)).max(*p);
    }
    let mut rhs = gld_a.plus(1);
    for q in &d.a_mod_ii {
        for p in &pds {
            rhs = rhs.max(gld_of(q).add(*p).plus(3));
        }
    }
    Ok(vec![
        BoundCheck::compare("cor_4_11.lower", lhs, gld_g, inputs.clone()),
        BoundCheck::compare("cor_4_11.upper", gld_g, rhs, inputs),
    ])
}

/// Dimension data for the block-extension inequalities.
pub struct BlockDims {
    pub a: Option<DimReport>,
    /// `A_j / I_ji` for every block `j` and `i = 2..n_j`.
    pub quotients: Vec<((usize, usize), Option<DimReport>)>,
    pub p: Option<DimReport>,
    pub offset: i64,
}

pub fn block_dims<F: Field>(spec: &BlockExtensionSpec<F>, budget: &Budget) -> Result<BlockDims> {
    let base = &spec.base;
    let a = report_of(Some(base.clone()), None, budget)?;
    let mut quotients = Vec::new();
    for (j, e) in spec.idems.iter().enumerate() {
        let aj = base.corner_unchecked(e, e);
        for (k, ideal) in spec.diag[j].ideals.iter().enumerate() {
            let alg = subquotient_or_zero(base, &aj, e, ideal)?;
            quotients.push(((j + 1, k + 2), report_of(alg, None, budget)?));
        }
    }
    let ring = build_block_extension(spec)?;
    let p = report_of(Some(ring.algebra.clone()), Some(&ring.idems), budget)?;
    let offset = spec.sizes.iter().sum::<usize>() as i64 - spec.sizes.len() as i64;
    Ok(BlockDims { a, quotients, p, offset })
}

fn block_inputs(d: &BlockDims) -> Vec<(String, String)> {
    let mut inputs = describe("A", &d.a);
    for ((j, i), r) in &d.quotients {
        inputs.extend(describe(&format!("A_{j}/I_{j}{i}"), r));
    }
    inputs.extend(describe("P", &d.p));
    inputs.push(("sum n_i - m".into(), d.offset.to_string()));
    inputs
}

/// `fd(A) − 1 ≤ fd(P) ≤ fd(A) + Σ fd(A_j/I_ji) + Σ n_i − m`.
pub fn thm_4_6<F: Field>(spec: &BlockExtensionSpec<F>, budget: &Budget) -> Result<Vec<BoundCheck>> {
    let d = block_dims(spec, budget)?;
    Ok(thm_4_6_from(&d))
}

pub fn thm_4_6_from(d: &BlockDims) -> Vec<BoundCheck> {
    let inputs = block_inputs(d);
    let fd_a = fd_of(&d.a);
    let fd_p = fd_of(&d.p);
    let rhs = Interval::sum(d.quotients.iter().map(|(_, r)| fd_of(r))).add(fd_a).plus(d.offset);
    vec![
        BoundCheck::compare("thm_4_6.lower", fd_a.plus(-1), fd_p, inputs.clone()),
        BoundCheck::compare("thm_4_6.upper", fd_p, rhs, inputs),
    ]
}

/// Finiteness of `fd(P)` from finiteness of `fd(A)` and every `fd(A_j/I_ji)`.
pub fn cor_4_9<F: Field>(spec: &BlockExtensionSpec<F>, budget: &Budget) -> Result<BoundCheck> {
    let d = block_dims(spec, budget)?;
    Ok(cor_4_9_from(&d))
}

pub fn cor_4_9_from(d: &BlockDims) -> BoundCheck {
    let inputs = block_inputs(d);
    let hyps_finite = fd_of(&d.a).hi.is_finite() && d.quotients.iter().all(|(_, r)| fd_of(r).hi.is_finite());
    let fd_p = fd_of(&d.p);
    let bound = Interval::sum(d.quotients.iter().map(|(_, r)| fd_of(r))).add(fd_of(&d.a)).plus(d.offset);
    if !hyps_finite {
        let mut c = BoundCheck::compare("cor_4_9", fd_p, bound, inputs).with_note("hypotheses not certified finite");
        if c.status != CheckStatus::Fails {
            c.status = CheckStatus::Inconclusive;
        }
        return c;
    }
    BoundCheck::compare("cor_4_9", fd_p, bound, inputs).with_note("fd(P) bracketed against the finite bound")
}

/// For a block extension of a self-injective algebra: `fd(P) ≤ Σ n_i − m`.
pub fn cor_4_10<F: Field>(spec: &BlockExtensionSpec<F>, budget: &Budget) -> Result<BoundCheck> {
    let actx = AlgebraCtx::new(spec.base.clone(), None)?;
    let qf = is_self_injective(&actx);
    let ring = build_block_extension(spec)?;
    let pctx = AlgebraCtx::new(ring.algebra.clone(), Some(&ring.idems))?;
    let rep = dim_report(&pctx, budget);
    let offset = spec.sizes.iter().sum::<usize>() as i64 - spec.sizes.len() as i64;
    let inputs = vec![
        ("A self-injective".to_string(), qf.to_string()),
        ("gldim P".into(), rep.gldim.to_string()),
        ("fd P".into(), rep.fd_interval().to_string()),
        ("sum n_i - m".into(), offset.to_string()),
    ];
    let mut c = BoundCheck::compare("cor_4_10", rep.fd_interval(), Interval::fin(offset), inputs);
    if !qf {
        c.note = "base algebra is not self-injective".into();
        if c.status != CheckStatus::Fails {
            c.status = CheckStatus::NotApplicable;
        }
    }
    Ok(c)
}

/// For a ring `[[R, 0], [M, S]]` split after position `split` (1-based, the `R` block
/// being positions `1..=split`): the fd bounds `fd(S) ≤ fd(Λ) ≤ 1 + fd(R) + fd(S)` and the
/// gldim bounds `max{gld R, gld S, pd(_S M) + 1} ≤ gld Λ ≤ max{gld R + pd(_S M) + 1, gld S}`.
pub fn lemma_4_3_triangular<F: Field>(ring: &BuiltRing<F>, split: usize, budget: &Budget) -> Result<Vec<BoundCheck>> {
    let alg = &ring.algebra;
    let f = alg.field();
    if split == 0 || split >= ring.n {
        return Err(Error::Invalid("split must leave both blocks nonempty".into()));
    }
    let sum = |range: std::ops::Range<usize>| {
        range.fold(alg.zero_elem(), |acc, i| alg.add(&acc, &ring.idems[i]))
    };
    let e = sum(0..split);
    let g = sum(split..ring.n);
    if !alg.corner_unchecked(&e, &g).is_zero() {
        return Ok(vec![BoundCheck::not_applicable("lemma_4_3", "upper-right block is not zero")]);
    }
    let r = alg.corner_algebra(&e)?;
    let s = alg.corner_algebra(&g)?;
    let m_space = alg.corner_unchecked(&g, &e);
    let rr = report_of(Some(r.algebra.clone()), None, budget)?;
    let sr = report_of(Some(s.algebra.clone()), None, budget)?;
    let lr = report_of(Some(alg.clone()), Some(&ring.idems), budget)?;
    // M as a left S-module
    let sctx = AlgebraCtx::new(s.algebra.clone(), None)?;
    let action: Vec<Matrix<F>> = (0..s.algebra.dim())
        .map(|k| {
            let x = s.inclusion.col(k);
            let cols: Vec<Vec<F::El>> = m_space
                .basis()
                .iter()
                .map(|v| m_space.coordinates(&alg.mul(&x, v)).expect("S M ⊆ M"))
                .collect();
            Matrix::from_cols(f, m_space.dim(), &cols)
        })
        .collect();
    let pd_m = if m_space.is_zero() {
        Interval::exact(ExtInt::NegInf)
    } else {
        Interval::from_pd(proj_dim(&LeftModule::new(sctx, action)?, budget.depth))
    };
    let mut inputs = describe("R", &rr);
    inputs.extend(describe("S", &sr));
    inputs.extend(describe("Lambda", &lr));
    inputs.push(("pd_S M".into(), pd_m.to_string()));
    let (fd_r, fd_s, fd_l) = (fd_of(&rr), fd_of(&sr), fd_of(&lr));
    let (gl_r, gl_s, gl_l) = (gld_of(&rr), gld_of(&sr), gld_of(&lr));
    let gl_lower = gl_r.max(gl_s).max(pd_m.plus(1));
    let gl_upper = gl_r.add(pd_m).plus(1).max(gl_s);
    Ok(vec![
        BoundCheck::compare("lemma_4_3.fd_lower", fd_s, fd_l, inputs.clone()),
        BoundCheck::compare("lemma_4_3.fd_upper", fd_l, fd_r.add(fd_s).plus(1), inputs.clone()),
        BoundCheck::compare("lemma_4_3.gld_lower", gl_lower, gl_l, inputs.clone()),
        BoundCheck::compare("lemma_4_3.gld_upper", gl_l, gl_upper, inputs),
    ])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Verified,
    Refuted,
    Inconclusive,
}

/// One hypothesis `pd_{A/I_{i,i+1}} (I_{i+1,j+1} / I_{i,j+1}) < ∞`.
#[derive(Clone, Debug, Serialize)]
pub struct PdHypothesis {
    pub i: usize,
    pub j: usize,
    pub module_dim: usize,
    pub pd: PdValue,
}

#[derive(Clone, Debug, Serialize)]
pub struct Prop412Report {
    pub pd_hypotheses: Vec<PdHypothesis>,
    /// `fd` brackets of `A` and of each `A/I_{i,i+1}` (`None` for a zero ring).
    pub fd_a: Interval,
    pub fd_quotients: Vec<(usize, Option<Interval>)>,
    pub verdict: Verdict,
    /// Estimator run on Φ when the hypotheses are verified.
    pub phi_estimate: Option<FindimEstimate>,
    /// Finite cap on fd(Φ) from its global dimension, when available.
    pub cap: Option<usize>,
}

impl Prop412Report {
    /// No finite-pd witness exceeds the cap.
    pub fn estimate_within_cap(&self) -> bool {
        match (&self.phi_estimate, self.cap) {
            (Some(e), Some(c)) => e.lower <= c,
            _ => true,
        }
    }
}

pub fn check_prop_4_12_hypotheses<F: Field>(spec: &TiledTriangularSpec<F>, budget: &Budget) -> Result<Prop412Report> {
    let phi = build_tiled_triangular(spec)?;
    let a = &spec.base;
    let f = a.field();
    let n = spec.n;
    let a_rep = report_of(Some(a.clone()), None, budget)?;
    let fd_a = fd_of(&a_rep);
    let mut fd_quotients = Vec::new();
    let mut pd_hypotheses = Vec::new();
    let mut refuted = false;
    let mut unknown = !fd_a.hi.is_finite();
    for i in 1..n {
        let ii = spec.ideal(i, i + 1);
        if ii.is_full() {
            fd_quotients.push((i, None));
            // modules over the zero ring are zero
            for j in i + 1..n {
                pd_hypotheses.push(PdHypothesis { i, j, module_dim: 0, pd: PdValue::MinusInfinity });
            }
            continue;
        }
        let q = a.quotient(ii)?;
        let qctx = AlgebraCtx::new(q.algebra.clone(), None)?;
        let qr = dim_report(&qctx, budget);
        let fd_q = qr.fd_interval();
        unknown |= !fd_q.hi.is_finite();
        fd_quotients.push((i, Some(fd_q)));
        for j in i + 1..n {
            let top = spec.ideal(i + 1, j + 1);
            let bottom = spec.ideal(i, j + 1);
            if !bottom.is_subspace_of(top) {
                return Err(Error::Invalid(format!("I_{i},{} ⊄ I_{},{}", j + 1, i + 1, j + 1)));
            }
            // basis of top/bottom: non-pivot complement of bottom inside top
            let reps: Vec<Vec<F::El>> = {
                let mut ech = bottom.to_echelon();
                top.basis().iter().filter(|v| ech.insert((*v).clone())).cloned().collect()
            };
            let mdim = reps.len();
            let pd = if mdim == 0 {
                PdValue::MinusInfinity
            } else {
                let mut cols = reps.clone();
                cols.extend(bottom.basis().iter().cloned());
                let frame = Matrix::from_cols(f, a.dim(), &cols);
                let coords = |v: &[F::El]| -> Vec<F::El> {
                    let sol = frame.solve(v).expect("top is a left ideal");
                    sol[..mdim].to_vec()
                };
                let action: Vec<Matrix<F>> = (0..q.algebra.dim())
                    .map(|k| {
                        let x = q.lift(&q.algebra.basis_elem(k));
                        let cols: Vec<Vec<F::El>> = reps.iter().map(|v| coords(&a.mul(&x, v))).collect();
                        Matrix::from_cols(f, mdim, &cols)
                    })
                    .collect();
                let module = LeftModule::new(qctx.clone(), action)?;
                proj_dim(&module, budget.depth)
            };
            match pd {
                PdValue::Infinite => refuted = true,
                PdValue::AtLeast(_) => unknown = true,
                _ => {}
            }
            pd_hypotheses.push(PdHypothesis { i, j, module_dim: mdim, pd });
        }
    }
    let verdict = if refuted {
        Verdict::Refuted
    } else if unknown {
        Verdict::Inconclusive
    } else {
        Verdict::Verified
    };
    let (phi_estimate, cap) = if verdict == Verdict::Verified {
        let pctx = AlgebraCtx::new(phi.algebra.clone(), Some(&phi.idems))?;
        let est = findim_estimate(&pctx, budget);
        let cap = match est.upper {
            Some(PdValue::Exact(k)) => Some(k),
            _ => None,
        };
        (Some(est), cap)
    } else {
        (None, None)
    };
    Ok(Prop412Report { pd_hypotheses, fd_a, fd_quotients, verdict, phi_estimate, cap })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::presets::*;
    use crate::field::Rationals;

    fn ctx(a: FdAlgebra<Rationals>) -> Arc<AlgebraCtx<Rationals>> {
        AlgebraCtx::new(a, None).unwrap()
    }

    #[test]
    fn global_dimensions() {
        assert_eq!(global_dimension(&ctx(ground(Rationals)), 5), PdValue::Exact(0));
        assert_eq!(global_dimension(&ctx(lower_triangular(Rationals, 2)), 5), PdValue::Exact(1));
        assert_eq!(global_dimension(&ctx(truncated_poly(Rationals, 3)), 5), PdValue::Infinite);
    }

    #[test]
    fn self_injectivity() {
        assert!(is_self_injective(&ctx(truncated_poly(Rationals, 3))));
        assert!(is_self_injective(&ctx(full_matrix(Rationals, 2))));
        assert!(!is_self_injective(&ctx(lower_triangular(Rationals, 2))));
    }

    #[test]
    fn estimator_brackets() {
        let b = Budget::default();
        let e = findim_estimate(&ctx(truncated_poly(Rationals, 2)), &b);
        assert_eq!((e.lower, e.upper), (0, None));
        let e = findim_estimate(&ctx(lower_triangular(Rationals, 2)), &b);
        assert_eq!((e.lower, e.upper), (1, Some(PdValue::Exact(1))));
        let e = findim_estimate(&ctx(product_of_fields(Rationals, 2)), &b);
        assert_eq!((e.lower, e.upper), (0, Some(PdValue::Exact(0))));
    }

    #[test]
    fn interval_comparisons() {
        let c = BoundCheck::compare("x", Interval::fin(1), Interval::fin(2), vec![]);
        assert_eq!(c.status, CheckStatus::Holds);
        let c = BoundCheck::compare("x", Interval::fin(3), Interval::fin(2), vec![]);
        assert_eq!(c.status, CheckStatus::Fails);
        let open = Interval { lo: ExtInt::Fin(0), hi: ExtInt::PosInf, cutoff: false };
        assert_eq!(BoundCheck::compare("x", open, Interval::fin(2), vec![]).status, CheckStatus::Consistent);
        let cut = Interval { cutoff: true, ..open };
        assert_eq!(BoundCheck::compare("x", cut, Interval::fin(2), vec![]).status, CheckStatus::Inconclusive);
        assert_eq!(ExtInt::PosInf.plus(3), ExtInt::PosInf);
        assert!(BoundCheck::compare("x", Interval::fin(5), Interval::exact(ExtInt::PosInf), vec![]).status == CheckStatus::Holds);
    }
}
