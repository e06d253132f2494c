//! The tilting module `T = L_2 ⊕ … ⊕ L_n ⊕ Λe_1`, its endomorphism ring, the explicit ring
//! map `Σ → End(T)`, D-split sequences and derived invariants.
//!
//! Endomorphism rings compose maps left to right: in `End(T)` the product `f·g` means
//! "first `f`, then `g`", so the `(a, b)` block is `Hom(T_a, T_b)` and block matrices
//! multiply like ordinary matrices.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{sparsify, FdAlgebra};
use crate::builder::{BuiltRing, LambdaSpec};
use crate::decompose::{integer_det, AlgebraCtx};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{is_zero_vec, Matrix, Subspace};
use crate::module::{
    cokernel, ext_dim_from, hom_dim, hom_space, proj_dim, resolution_stages, right_multiplication, HomSpace,
    LeftModule, ModuleMap, PdValue,
};

/// `0 → R e_i → R e_h → L → 0`, the inclusion being right multiplication by `E_{ih}(u)`.
#[derive(Clone, Debug)]
pub struct DefiningSequence<F: Field> {
    /// Position of the head projective `R e_h`.
    pub head: usize,
    /// Position `i` of the included projective.
    pub pos: usize,
    pub inclusion: ModuleMap<F>,
    pub projection: ModuleMap<F>,
    pub cokernel: LeftModule<F>,
    /// A linear section of `projection`.
    pub section: Matrix<F>,
}

impl<F: Field> DefiningSequence<F> {
    pub fn is_exact(&self) -> bool {
        let comp = self.projection.mat.mul(&self.inclusion.mat);
        self.inclusion.is_injective()
            && self.projection.is_surjective()
            && comp.is_zero()
            && self.inclusion.rank() + self.projection.rank() == self.inclusion.target.dim()
    }
}

/// A position projective `R e_i` with its basis inside `R`.
#[derive(Clone, Debug)]
pub struct PositionProjective<F: Field> {
    pub module: LeftModule<F>,
    pub basis: Subspace<F>,
}

/// Projectives of all positions of a built ring.
pub fn position_projectives<F: Field>(ring: &BuiltRing<F>, ctx: &Arc<AlgebraCtx<F>>) -> Result<Vec<PositionProjective<F>>> {
    ring.idems
        .iter()
        .map(|e| {
            let (module, basis) = LeftModule::projective_with_basis(ctx.clone(), e)?;
            Ok(PositionProjective { module, basis })
        })
        .collect()
}

/// The sequence `0 → R e_pos → R e_head → L → 0` with inclusion `x ↦ x·E_{pos,head}(unit)`.
pub fn defining_sequence<F: Field>(
    ring: &BuiltRing<F>,
    projs: &[PositionProjective<F>],
    head: usize,
    pos: usize,
    unit: &[F::El],
) -> Result<DefiningSequence<F>> {
    let y = ring
        .element_at(pos, head, unit)
        .ok_or_else(|| Error::Invalid(format!("entry ({}, {}) lacks the block unit", pos + 1, head + 1)))?;
    let (src, tgt) = (&projs[pos], &projs[head]);
    let inclusion = right_multiplication(&src.module, &src.basis, &tgt.module, &tgt.basis, &y)?;
    if !inclusion.is_injective() {
        return Err(Error::Invalid(format!("inclusion of position {} into {} is not injective", pos + 1, head + 1)));
    }
    let (coker, projection) = cokernel(&inclusion);
    let keep = inclusion.image_subspace().non_pivots();
    let f = ring.field();
    let mut section = Matrix::zeros(f, tgt.module.dim(), coker.dim());
    for (t, &c) in keep.iter().enumerate() {
        section.set(c, t, f.one());
    }
    Ok(DefiningSequence { head, pos, inclusion, projection, cokernel: coker, section })
}

/// Λ together with `L_2, …, L_n`, their defining sequences and the summands of `T`.
#[derive(Clone, Debug)]
pub struct TiltingBundle<F: Field> {
    pub spec: LambdaSpec<F>,
    pub lambda: BuiltRing<F>,
    pub ctx: Arc<AlgebraCtx<F>>,
    /// `Λe_1, …, Λe_n`.
    pub projectives: Vec<PositionProjective<F>>,
    /// Sequences for `L_2, …, L_n` (entry `i - 2`).
    pub sequences: Vec<DefiningSequence<F>>,
    /// `T_0, …, T_{n-1}` = `L_2, …, L_n, Λe_1`.
    pub summands: Vec<LeftModule<F>>,
}

impl<F: Field> TiltingBundle<F> {
    pub fn n(&self) -> usize {
        self.lambda.n
    }

    /// `L_i` for `2 ≤ i ≤ n`.
    pub fn l(&self, i: usize) -> &LeftModule<F> {
        &self.sequences[i - 2].cokernel
    }

    pub fn t(&self) -> LeftModule<F> {
        LeftModule::direct_sum_all(&self.ctx, &self.summands)
    }
}

/// Builds Λ, its position projectives and the cokernels `L_i` of `Λe_i ↪ Λe_1`.
pub fn cokernel_modules<F: Field>(spec: &LambdaSpec<F>) -> Result<TiltingBundle<F>> {
    let lambda = crate::builder::build_lambda(spec)?;
    let ctx = AlgebraCtx::new(lambda.algebra.clone(), Some(&lambda.idems))?;
    let projectives = position_projectives(&lambda, &ctx)?;
    let unit = spec.base.unit().to_vec();
    let sequences = (1..lambda.n)
        .map(|i| defining_sequence(&lambda, &projectives, 0, i, &unit))
        .collect::<Result<Vec<_>>>()?;
    if let Some(bad) = sequences.iter().find(|s| !s.is_exact()) {
        return Err(Error::Invalid(format!("sequence for L_{} is not exact", bad.pos + 1)));
    }
    let mut summands: Vec<LeftModule<F>> = sequences.iter().map(|s| s.cokernel.clone()).collect();
    summands.push(projectives[0].module.clone());
    Ok(TiltingBundle { spec: spec.clone(), lambda, ctx, projectives, sequences, summands })
}

/// `End(⊕ T_a)` with basis the union of the `Hom(T_a, T_b)` bases (row-major in `(a, b)`).
#[derive(Clone, Debug)]
pub struct EndAlgebra<F: Field> {
    pub algebra: FdAlgebra<F>,
    pub homs: Vec<Vec<HomSpace<F>>>,
    offsets: Vec<usize>,
    k: usize,
}

impl<F: Field> EndAlgebra<F> {
    pub fn block_range(&self, a: usize, b: usize) -> std::ops::Range<usize> {
        let t = a * self.k + b;
        self.offsets[t]..self.offsets[t + 1]
    }

    pub fn block_dims(&self) -> Vec<Vec<usize>> {
        self.homs.iter().map(|row| row.iter().map(|h| h.dim()).collect()).collect()
    }

    /// Element of `End(T)` with the map `mat: T_a → T_b` in block `(a, b)`.
    pub fn element(&self, a: usize, b: usize, mat: &Matrix<F>) -> Option<Vec<F::El>> {
        let coords = self.homs[a][b].coordinates(mat)?;
        let mut v = self.algebra.zero_elem();
        for (t, c) in self.block_range(a, b).zip(coords) {
            v[t] = c;
        }
        Some(v)
    }
}

pub fn endomorphism_algebra<F: Field>(summands: &[LeftModule<F>]) -> Result<EndAlgebra<F>> {
    let k = summands.len();
    let homs = summands
        .iter()
        .map(|m| summands.iter().map(|n| hom_space(m, n)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let mut offsets = vec![0];
    let mut owner = Vec::new();
    for (a, row) in homs.iter().enumerate() {
        for (b, h) in row.iter().enumerate() {
            offsets.push(offsets.last().expect("nonempty") + h.dim());
            owner.extend((0..h.dim()).map(|t| (a, b, t)));
        }
    }
    let dim = *offsets.last().expect("nonempty");
    let field = summands.first().map(|m| m.field()).ok_or_else(|| Error::Invalid("no summands".into()))?;
    if dim == 0 {
        return Err(Error::ZeroRing("endomorphism ring of the zero module".into()));
    }
    let mut table = Vec::with_capacity(dim * dim);
    for &(a, b, s) in &owner {
        for &(c, d, t) in &owner {
            if b != c {
                table.push(Vec::new());
                continue;
            }
            let prod = homs[c][d].basis[t].mat.mul(&homs[a][b].basis[s].mat);
            let coords = homs[a][d].coordinates(&prod).expect("composites are homomorphisms");
            let mut v = vec![field.zero(); dim];
            let start = offsets[a * k + d];
            for (u, x) in coords.into_iter().enumerate() {
                v[start + u] = x;
            }
            table.push(sparsify(field, &v));
        }
    }
    let mut unit = vec![field.zero(); dim];
    for (a, m) in summands.iter().enumerate() {
        let coords = homs[a][a].coordinates(&Matrix::identity(field, m.dim())).expect("identity is a homomorphism");
        let start = offsets[a * k + a];
        for (u, x) in coords.into_iter().enumerate() {
            unit[start + u] = x;
        }
    }
    let algebra = FdAlgebra::new(field, dim, table, unit, None)?;
    Ok(EndAlgebra { algebra, homs, offsets, k })
}

/// Outcome of checking a linear map `Σ → End(T)` for being a ring isomorphism.
#[derive(Clone, Debug, Serialize)]
pub struct IsoCertificate {
    pub additive: bool,
    pub multiplicative: bool,
    pub unital: bool,
    pub bijective: bool,
    pub dim_source: usize,
    pub dim_target: usize,
    pub rank: usize,
    /// First basis pair `(s, t)` with `φ(b_s b_t) ≠ φ(b_s) φ(b_t)`.
    pub mult_witness: Option<(usize, usize)>,
    /// First basis pair whose sum is not mapped to the sum of images.
    pub add_witness: Option<(usize, usize)>,
}

impl IsoCertificate {
    pub fn is_valid(&self) -> bool {
        self.additive && self.multiplicative && self.unital && self.bijective
    }
}

/// The map `Σ → End(T)` assembled from right multiplications by `E_11(b)`.
#[derive(Clone, Debug)]
pub struct PhiMap<F: Field> {
    pub sigma: BuiltRing<F>,
    pub end: EndAlgebra<F>,
    /// `dim End(T) × dim Σ`.
    pub matrix: Matrix<F>,
}

fn right_mult_head<F: Field>(bundle: &TiltingBundle<F>, a: &[F::El]) -> Result<Matrix<F>> {
    let head = &bundle.projectives[0];
    let y = bundle.lambda.element_at(0, 0, a).ok_or_else(|| Error::Invalid("element not in A".into()))?;
    Ok(right_multiplication(&head.module, &head.basis, &head.module, &head.basis, &y)?.mat)
}

/// The map `T_r → T_c` attached to the representative `a ∈ A` of position `(r, c)` of Σ.
pub fn phi_block<F: Field>(bundle: &TiltingBundle<F>, r: usize, c: usize, a: &[F::El]) -> Result<Matrix<F>> {
    let last = bundle.n() - 1;
    let f = bundle.lambda.field();
    let rmul = right_mult_head(bundle, a)?;
    Ok(match (r == last, c == last) {
        (true, true) => rmul,
        (true, false) => bundle.sequences[c].projection.mat.mul(&rmul),
        (false, false) => {
            let seq_r = &bundle.sequences[r];
            let seq_c = &bundle.sequences[c];
            seq_c.projection.mat.mul(&rmul).mul(&seq_r.section)
        }
        (false, true) => Matrix::zeros(f, bundle.summands[last].dim(), bundle.summands[r].dim()),
    })
}

/// Image in `End(T)` of an arbitrary element of Σ.
pub fn phi_apply<F: Field>(bundle: &TiltingBundle<F>, sigma: &BuiltRing<F>, end: &EndAlgebra<F>, x: &[F::El]) -> Result<Vec<F::El>> {
    let f = sigma.field();
    let n = sigma.n;
    let mut out = end.algebra.zero_elem();
    for r in 0..n {
        for c in 0..n {
            if sigma.entry_dim(r, c) == 0 || is_zero_vec(f, &x[sigma.entry_range(r, c)]) {
                continue;
            }
            let a = sigma.component(x, r, c);
            let mat = phi_block(bundle, r, c, &a)?;
            let v = end
                .element(r, c, &mat)
                .ok_or_else(|| Error::Invalid(format!("image of position ({}, {}) is not a homomorphism", r + 1, c + 1)))?;
            for (o, y) in out.iter_mut().zip(v) {
                *o = f.add(o, &y);
            }
        }
    }
    Ok(out)
}

pub fn construct_phi<F: Field>(bundle: &TiltingBundle<F>, end: EndAlgebra<F>) -> Result<PhiMap<F>> {
    let sigma = crate::builder::build_sigma(&bundle.spec)?;
    let f = sigma.field();
    let cols = (0..sigma.algebra.dim())
        .map(|s| phi_apply(bundle, &sigma, &end, &sigma.algebra.basis_elem(s)))
        .collect::<Result<Vec<_>>>()?;
    let matrix = Matrix::from_cols(f, end.algebra.dim(), &cols);
    Ok(PhiMap { sigma, end, matrix })
}

/// Checks a linear map between algebras for being a unital ring isomorphism.
///
/// `recompute` evaluates the map on an arbitrary source element independently of `phi`;
/// additivity is checked on `pairs` sampled pairs of basis elements.
pub fn certify<F: Field>(
    source: &FdAlgebra<F>,
    target: &FdAlgebra<F>,
    phi: &Matrix<F>,
    recompute: Option<&dyn Fn(&[F::El]) -> Result<Vec<F::El>>>,
    pairs: usize,
    seed: u64,
) -> IsoCertificate {
    let f = source.field();
    let d = source.dim();
    let mut add_witness = None;
    if let Some(rec) = recompute {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..pairs {
            let (s, t) = (rng.gen_range(0..d), rng.gen_range(0..d));
            let x = source.add(&source.basis_elem(s), &source.basis_elem(t));
            let expected = phi.mul_vec(&x);
            if rec(&x).map_or(true, |v| v != expected) {
                add_witness = Some((s, t));
                break;
            }
        }
    }
    let images: Vec<Vec<F::El>> = (0..d).map(|s| phi.col(s)).collect();
    let mut mult_witness = None;
    'outer: for s in 0..d {
        for t in 0..d {
            let lhs = phi.mul_vec(&source.basis_product(s, t));
            let rhs = target.mul(&images[s], &images[t]);
            if lhs != rhs {
                mult_witness = Some((s, t));
                break 'outer;
            }
        }
    }
    let unital = phi.mul_vec(source.unit()) == target.unit();
    let rank = phi.rank();
    let _ = f;
    IsoCertificate {
        additive: add_witness.is_none(),
        multiplicative: mult_witness.is_none(),
        unital,
        bijective: rank == d && rank == target.dim(),
        dim_source: d,
        dim_target: target.dim(),
        rank,
        mult_witness,
        add_witness,
    }
}

/// Full certificate for `Σ ≅ End(T)` built from the explicit map.
pub fn phi_certificate<F: Field>(bundle: &TiltingBundle<F>, phi: &PhiMap<F>) -> IsoCertificate {
    let rec = |x: &[F::El]| phi_apply(bundle, &phi.sigma, &phi.end, x);
    let pairs = phi.sigma.algebra.dim().max(16);
    certify(&phi.sigma.algebra, &phi.end.algebra, &phi.matrix, Some(&rec), pairs, 0)
}

/// Copy of `alg` with one structure constant changed: the first nonzero product `b_i b_j`
/// gets `1` added to its first coefficient.
pub fn mutate_structure<F: Field>(alg: &FdAlgebra<F>) -> Option<(FdAlgebra<F>, (usize, usize))> {
    let f = alg.field();
    let d = alg.dim();
    for i in 0..d {
        for j in 0..d {
            let mut p = alg.basis_product(i, j);
            if let Some(k) = p.iter().position(|c| !f.is_zero(c)) {
                p[k] = f.add(&p[k], &f.one());
                let table = (0..d * d)
                    .map(|t| if t == i * d + j { sparsify(f, &p) } else { alg.structure(t / d, t % d).to_vec() })
                    .collect();
                let m = FdAlgebra::new(f, d, table, alg.unit().to_vec(), None).ok()?;
                return Some((m, (i, j)));
            }
        }
    }
    None
}

/// One `dim Hom(L_i, L_j)` comparison.
#[derive(Clone, Debug, Serialize)]
pub struct HomLatticeEntry {
    pub i: usize,
    pub j: usize,
    pub hom_dim: usize,
    pub expected: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomLatticeReport {
    pub entries: Vec<HomLatticeEntry>,
    /// `(i, dim Hom(L_i, Λe_1), dim Hom(L_i, Λe_i))`
    pub vanishing: Vec<(usize, usize, usize)>,
}

impl HomLatticeReport {
    pub fn holds(&self) -> bool {
        self.entries.iter().all(|e| e.hom_dim == e.expected) && self.vanishing.iter().all(|&(_, a, b)| a == 0 && b == 0)
    }
}

/// `dim Hom(L_i, L_j)` against `dim e_iΛe_j − dim I_j`.
pub fn hom_lattice<F: Field>(bundle: &TiltingBundle<F>) -> HomLatticeReport {
    let n = bundle.n();
    let mut entries = Vec::new();
    for i in 2..=n {
        for j in 2..=n {
            let hom = hom_dim(bundle.l(i), bundle.l(j));
            let expected = bundle.lambda.entry_dim(i - 1, j - 1) - bundle.spec.ideal(j).dim();
            entries.push(HomLatticeEntry { i, j, hom_dim: hom, expected });
        }
    }
    let vanishing = (2..=n)
        .map(|i| {
            (i, hom_dim(bundle.l(i), &bundle.projectives[0].module), hom_dim(bundle.l(i), &bundle.projectives[i - 1].module))
        })
        .collect();
    HomLatticeReport { entries, vanishing }
}

/// A candidate D-split sequence `X → M → Y` with `D = add(category_d)`.
#[derive(Clone, Debug)]
pub struct DSplitInstance<F: Field> {
    pub f: ModuleMap<F>,
    pub g: ModuleMap<F>,
    pub category_d: Vec<LeftModule<F>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DSplitReport {
    pub composite_zero: bool,
    pub middle_in_d: bool,
    pub left_approximation: bool,
    pub right_approximation: bool,
    pub kernel: bool,
    pub cokernel: bool,
}

impl DSplitReport {
    pub fn passes(&self) -> bool {
        self.failed().is_empty()
    }

    /// Names of the failed conditions.
    pub fn failed(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        for (ok, name) in [
            (self.composite_zero, "composite zero"),
            (self.middle_in_d, "middle term in add(D)"),
            (self.left_approximation, "left D-approximation"),
            (self.right_approximation, "right D-approximation"),
            (self.kernel, "f is a kernel of g"),
            (self.cokernel, "g is a cokernel of f"),
        ] {
            if !ok {
                out.push(name);
            }
        }
        out
    }
}

/// `M ∈ add(D)`: the identity of `M` lies in the span of composites `M → D_k → M`.
pub fn in_add<F: Field>(m: &LeftModule<F>, category: &[LeftModule<F>]) -> Result<bool> {
    if m.is_zero() {
        return Ok(true);
    }
    let f = m.field();
    let dm = m.dim();
    let mut ech = crate::linalg::Echelon::new(f, dm * dm);
    for d in category {
        let to = hom_space(m, d)?;
        let from = hom_space(d, m)?;
        for u in &to.basis {
            for v in &from.basis {
                let comp = v.mat.mul(&u.mat);
                ech.insert(comp.entries().to_vec());
                if ech.is_full() {
                    return Ok(true);
                }
            }
        }
    }
    Ok(ech.contains(Matrix::identity(f, dm).entries()))
}

/// Rank of the span of `{op(h) : h ∈ basis}` as flattened matrices.
fn span_rank<F: Field>(f: F, maps: impl Iterator<Item = Matrix<F>>) -> usize {
    let mut ech: Option<crate::linalg::Echelon<F>> = None;
    for m in maps {
        let e = ech.get_or_insert_with(|| crate::linalg::Echelon::new(f, m.rows() * m.cols()));
        e.insert(m.entries().to_vec());
    }
    ech.map_or(0, |e| e.dim())
}

pub fn check_d_split<F: Field>(inst: &DSplitInstance<F>) -> Result<DSplitReport> {
    let (fm, gm) = (&inst.f, &inst.g);
    let fld = fm.source.field();
    let composable = fm.target.dim() == gm.source.dim();
    if !composable {
        return Err(Error::Dimension("f and g are not composable".into()));
    }
    let composite_zero = gm.mat.mul(&fm.mat).is_zero();
    let middle_in_d = in_add(&fm.target, &inst.category_d)?;
    let mut left_approximation = true;
    let mut right_approximation = true;
    for d in &inst.category_d {
        let from_m = hom_space(&fm.target, d)?;
        let from_x_dim = hom_dim(&fm.source, d);
        let r = span_rank(fld, from_m.basis.iter().map(|h| h.mat.mul(&fm.mat)));
        if r != from_x_dim {
            left_approximation = false;
        }
        let into_m = hom_space(d, &gm.source)?;
        let into_y_dim = hom_dim(d, &gm.target);
        let r = span_rank(fld, into_m.basis.iter().map(|h| gm.mat.mul(&h.mat)));
        if r != into_y_dim {
            right_approximation = false;
        }
    }
    let ker_g = gm.kernel_subspace();
    let im_f = fm.image_subspace();
    let exact_middle = composite_zero && im_f == ker_g;
    Ok(DSplitReport {
        composite_zero,
        middle_in_d,
        left_approximation,
        right_approximation,
        kernel: fm.is_injective() && exact_middle,
        cokernel: gm.is_surjective() && exact_middle,
    })
}

/// `0 → Λ → Γ → L → 0` with `Γ = M_n(A)` restricted to Λ, and `D = add(Λe_1)`.
pub fn lambda_gamma_sequence<F: Field>(bundle: &TiltingBundle<F>) -> Result<DSplitInstance<F>> {
    let gamma = crate::builder::build_full_matrix(&bundle.spec.base, bundle.n())?;
    let incl = bundle.lambda.inclusion_into(&gamma)?;
    let g_action: Vec<Matrix<F>> = (0..gamma.algebra.dim())
        .map(|k| gamma.algebra.left_mult_matrix(&gamma.algebra.basis_elem(k)))
        .collect();
    let gamma_mod = LeftModule::restrict(bundle.ctx.clone(), &g_action, &incl)?;
    let lam = LeftModule::regular(bundle.ctx.clone());
    let f = ModuleMap::new(lam, gamma_mod, incl)?;
    let (_, g) = cokernel(&f);
    Ok(DSplitInstance { f, g, category_d: vec![bundle.projectives[0].module.clone()] })
}

/// The three mutation controls for a D-split instance: enlarged cokernel, zero `f`,
/// and `D` replaced by `add(Y)`.
pub fn d_split_mutations<F: Field>(inst: &DSplitInstance<F>) -> Vec<(&'static str, DSplitInstance<F>)> {
    let ctx = inst.f.source.ctx().clone();
    let extra = LeftModule::simple(&ctx, 0);
    let y_big = inst.g.target.direct_sum(&extra);
    let fld = ctx.field();
    let g_big = ModuleMap {
        source: inst.g.source.clone(),
        target: y_big.clone(),
        mat: inst.g.mat.vstack(&Matrix::zeros(fld, extra.dim(), inst.g.source.dim())),
    };
    let zero_f = ModuleMap::zero(&inst.f.source, &inst.f.target);
    vec![
        ("g not surjective", DSplitInstance { f: inst.f.clone(), g: g_big, category_d: inst.category_d.clone() }),
        ("f zero", DSplitInstance { f: zero_f, g: inst.g.clone(), category_d: inst.category_d.clone() }),
        ("D = add(Y)", DSplitInstance { f: inst.f.clone(), g: inst.g.clone(), category_d: vec![inst.g.target.clone()] }),
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct TiltingReport {
    /// Projective dimension of each summand of `T`.
    pub summand_pd: Vec<PdValue>,
    pub ext1_total: Option<usize>,
    /// Exactness of `0 → Λe_i → Λe_1 → L_i → 0` for `i = 2..n`.
    pub sequences_exact: Vec<bool>,
    /// For every `Λe_i`, whether a left `add(T)`-approximation is injective with cokernel in `add(T)`.
    pub generation: Vec<bool>,
}

impl TiltingReport {
    pub fn pd_at_most_one(&self) -> bool {
        self.summand_pd.iter().all(|p| matches!(p, PdValue::Exact(k) if *k <= 1) || *p == PdValue::MinusInfinity)
    }

    pub fn passes(&self) -> bool {
        self.pd_at_most_one()
            && self.ext1_total == Some(0)
            && self.sequences_exact.iter().all(|&b| b)
            && self.generation.iter().all(|&b| b)
    }
}

/// `Σ_{a,b} dim Ext^1(T_a, T_b)`.
pub fn ext1_between<F: Field>(summands: &[LeftModule<F>]) -> Option<usize> {
    let mut total = 0;
    for a in summands {
        let res = resolution_stages(a, 2);
        for b in summands {
            total += ext_dim_from(&res, b, 1)?;
        }
    }
    Some(total)
}

/// Whether `P` has an exact sequence `0 → P → T^0 → T^1 → 0` with `T^0, T^1 ∈ add(T)`,
/// tested with the universal left approximation `P → ⊕_{h} T_a`.
pub fn resolved_by_add<F: Field>(p: &LeftModule<F>, summands: &[LeftModule<F>]) -> Result<bool> {
    let ctx = p.ctx().clone();
    let mut targets = Vec::new();
    let mut rows: Vec<Matrix<F>> = Vec::new();
    for t in summands {
        for h in hom_space(p, t)?.basis {
            targets.push(t.clone());
            rows.push(h.mat);
        }
    }
    if targets.is_empty() {
        return Ok(p.is_zero());
    }
    let big = LeftModule::direct_sum_all(&ctx, &targets);
    let mat = rows.iter().skip(1).fold(rows[0].clone(), |acc, m| acc.vstack(m));
    let approx = ModuleMap { source: p.clone(), target: big, mat };
    if !approx.is_injective() {
        return Ok(false);
    }
    let (coker, _) = cokernel(&approx);
    in_add(&coker, summands)
}

pub fn tilting_conditions<F: Field>(bundle: &TiltingBundle<F>, summands: &[LeftModule<F>], depth: usize) -> Result<TiltingReport> {
    let summand_pd = summands.iter().map(|m| proj_dim(m, depth)).collect();
    let ext1_total = ext1_between(summands);
    let sequences_exact = bundle.sequences.iter().map(|s| s.is_exact()).collect();
    let generation = bundle
        .projectives
        .iter()
        .map(|p| resolved_by_add(&p.module, summands))
        .collect::<Result<Vec<_>>>()?;
    Ok(TiltingReport { summand_pd, ext1_total, sequences_exact, generation })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub simples: (usize, usize),
    pub cartan_det: (i64, i64),
    pub center_dim: (usize, usize),
}

impl InvariantReport {
    pub fn all_equal(&self) -> bool {
        self.simples.0 == self.simples.1 && self.cartan_det.0 == self.cartan_det.1 && self.center_dim.0 == self.center_dim.1
    }
}

/// Number of simples, `|det C|` and `dim Z` for two algebras.
pub fn derived_invariant_report<F: Field>(r1: &AlgebraCtx<F>, r2: &AlgebraCtx<F>) -> InvariantReport {
    let det = |c: &AlgebraCtx<F>| integer_det(&c.cartan_matrix()).abs();
    InvariantReport {
        simples: (r1.num_simples(), r2.num_simples()),
        cartan_det: (det(r1), det(r2)),
        center_dim: (r1.center_dim(), r2.center_dim()),
    }
}

/// Everything the main theorem promises for one Λ-spec.
#[derive(Clone, Debug, Serialize)]
pub struct Theorem1Report {
    pub dim_lambda: usize,
    pub dim_sigma: usize,
    pub dim_end_t: usize,
    pub end_block_dims: Vec<Vec<usize>>,
    pub certificate: IsoCertificate,
    pub tilting: TiltingReport,
    pub hom_lattice: HomLatticeReport,
    pub d_split: DSplitReport,
    pub invariants: InvariantReport,
}

impl Theorem1Report {
    pub fn passes(&self) -> bool {
        self.certificate.is_valid()
            && self.dim_end_t == self.dim_sigma
            && self.tilting.passes()
            && self.hom_lattice.holds()
            && self.d_split.passes()
            && self.invariants.all_equal()
    }
}

pub fn verify_theorem1<F: Field>(spec: &LambdaSpec<F>, depth: usize) -> Result<Theorem1Report> {
    let bundle = cokernel_modules(spec)?;
    let end = endomorphism_algebra(&bundle.summands)?;
    let end_block_dims = end.block_dims();
    let phi = construct_phi(&bundle, end)?;
    let certificate = phi_certificate(&bundle, &phi);
    let tilting = tilting_conditions(&bundle, &bundle.summands, depth)?;
    let hom_lattice = hom_lattice(&bundle);
    let d_split = check_d_split(&lambda_gamma_sequence(&bundle)?)?;
    let sigma_ctx = AlgebraCtx::new(phi.sigma.algebra.clone(), Some(&phi.sigma.idems))?;
    let invariants = derived_invariant_report(&bundle.ctx, &sigma_ctx);
    Ok(Theorem1Report {
        dim_lambda: bundle.lambda.algebra.dim(),
        dim_sigma: phi.sigma.algebra.dim(),
        dim_end_t: phi.end.algebra.dim(),
        end_block_dims,
        certificate,
        tilting,
        hom_lattice,
        d_split,
        invariants,
    })
}

/// Hom-vanishing for the cokernels of a block extension: for blocks `p < q` all
/// `Hom(L_{p,i}, L_{q,j})`, and inside a block `Hom(L_{p,i}, L_{p,j})` for `i < j`.
#[derive(Clone, Debug, Serialize)]
pub struct BlockVanishing {
    /// `((p, i), (q, j), dim Hom)` with 1-based block and in-block indices.
    pub checks: Vec<((usize, usize), (usize, usize), usize)>,
}

impl BlockVanishing {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.2 == 0)
    }
}

/// `blocks[p] = (start position, size, block unit in A)`.
pub fn block_hom_vanishing<F: Field>(ring: &BuiltRing<F>, blocks: &[(usize, usize, Vec<F::El>)]) -> Result<BlockVanishing> {
    let ctx = AlgebraCtx::new(ring.algebra.clone(), Some(&ring.idems))?;
    let projs = position_projectives(ring, &ctx)?;
    let mut ls: Vec<Vec<LeftModule<F>>> = Vec::new();
    for (start, size, unit) in blocks {
        let mut row = Vec::new();
        for t in 1..*size {
            row.push(defining_sequence(ring, &projs, *start, start + t, unit)?.cokernel);
        }
        ls.push(row);
    }
    let mut checks = Vec::new();
    for p in 0..blocks.len() {
        for q in p..blocks.len() {
            for (a, lp) in ls[p].iter().enumerate() {
                for (b, lq) in ls[q].iter().enumerate() {
                    if p == q && a >= b {
                        continue;
                    }
                    checks.push(((p + 1, a + 2), (q + 1, b + 2), hom_dim(lp, lq)));
                }
            }
        }
    }
    Ok(BlockVanishing { checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::presets::*;
    use crate::field::Rationals;

    fn dual_spec() -> LambdaSpec<Rationals> {
        let a = truncated_poly(Rationals, 2);
        let x = a.span([a.basis_elem(1)]);
        LambdaSpec::new(a, vec![x]).unwrap()
    }

    #[test]
    fn dual_numbers_cokernel_and_homs() {
        let b = cokernel_modules(&dual_spec()).unwrap();
        assert_eq!(b.projectives[0].module.dim(), 4);
        assert_eq!(b.projectives[1].module.dim(), 3);
        assert_eq!(b.l(2).dim(), 1);
        assert_eq!(hom_dim(&b.projectives[0].module, &b.projectives[0].module), 2);
        assert_eq!(hom_dim(b.l(2), &b.projectives[0].module), 0);
        assert_eq!(proj_dim(b.l(2), 5), PdValue::Exact(1));
    }

    #[test]
    fn dual_numbers_theorem() {
        let r = verify_theorem1(&dual_spec(), 10).unwrap();
        assert_eq!(r.dim_end_t, 4);
        assert_eq!(r.dim_sigma, 4);
        assert!(r.certificate.is_valid(), "{:?}", r.certificate);
        assert!(r.passes(), "{r:?}");
    }

    #[test]
    fn mutated_sigma_is_caught() {
        let b = cokernel_modules(&dual_spec()).unwrap();
        let end = endomorphism_algebra(&b.summands).unwrap();
        let phi = construct_phi(&b, end).unwrap();
        let (bad, _) = mutate_structure(&phi.sigma.algebra).unwrap();
        let cert = certify(&bad, &phi.end.algebra, &phi.matrix, None, 0, 0);
        assert!(!cert.multiplicative);
        assert!(cert.mult_witness.is_some());
    }

    #[test]
    fn head_alone_does_not_generate() {
        let b = cokernel_modules(&dual_spec()).unwrap();
        let only_head = vec![b.projectives[0].module.clone()];
        assert!(!resolved_by_add(&b.projectives[1].module, &only_head).unwrap());
        assert!(resolved_by_add(&b.projectives[1].module, &b.summands).unwrap());
    }

    #[test]
    fn invariants_separate_k_and_k_times_k() {
        let k = AlgebraCtx::new(ground(Rationals), None).unwrap();
        let kk = AlgebraCtx::new(product_of_fields(Rationals, 2), None).unwrap();
        let r = derived_invariant_report(&k, &kk);
        assert!(!r.all_equal());
        assert_eq!(r.simples, (1, 2));
    }
}
