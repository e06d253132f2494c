//! Complete sets of primitive orthogonal idempotents, isomorphism classes of
//! indecomposable projectives, Cartan matrices and algebra generators adapted to them.

use std::sync::{Arc, OnceLock};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{FdAlgebra, Quotient};
use crate::error::{Error, Result};
use crate::field::{field_roots, Field, Rationals, Rat};
use crate::linalg::{Echelon, Matrix, Subspace};
use crate::poly;

const SPLIT_SEED: u64 = 0x5eed_1dea;
const RANDOM_CANDIDATES: usize = 48;

/// Checks that `elems` are pairwise orthogonal idempotents summing to 1.
pub fn check_idempotents<F: Field>(alg: &FdAlgebra<F>, elems: &[Vec<F::El>]) -> Result<()> {
    if elems.is_empty() {
        return Err(Error::Invalid("empty idempotent list".into()));
    }
    let mut sum = alg.zero_elem();
    for (i, e) in elems.iter().enumerate() {
        if e.len() != alg.dim() {
            return Err(Error::Dimension(format!("idempotent {i} has wrong length")));
        }
        if !alg.is_idempotent(e) {
            return Err(Error::Invalid(format!("element {i} is not idempotent")));
        }
        if alg.is_zero(e) {
            return Err(Error::Invalid(format!("idempotent {i} is zero")));
        }
        for (j, g) in elems.iter().enumerate() {
            if i != j && !alg.is_zero(&alg.mul(e, g)) {
                return Err(Error::Invalid(format!("idempotents {i} and {j} are not orthogonal")));
            }
        }
        sum = alg.add(&sum, e);
    }
    if sum != alg.unit() {
        return Err(Error::Invalid("idempotents do not sum to 1".into()));
    }
    Ok(())
}

/// An algebra element lying in `e_tgt · A · e_src` for primitive idempotents.
#[derive(Clone, Debug)]
pub struct Generator<F: Field> {
    pub elem: Vec<F::El>,
    pub tgt: usize,
    pub src: usize,
    pub is_idempotent: bool,
}

#[derive(Clone, Debug)]
pub struct Decomposition<F: Field> {
    /// Primitive orthogonal idempotents summing to 1.
    pub prims: Vec<Vec<F::El>>,
    /// For each primitive, the index of the starting idempotent it refines.
    pub origin: Vec<usize>,
    /// Isomorphism class of `A·e` for each primitive `e`.
    pub class_of: Vec<usize>,
    /// A representative primitive for each class, in order of first appearance.
    pub class_reps: Vec<usize>,
}

/// An algebra with everything the module engine needs precomputed.
#[derive(Clone, Debug)]
pub struct AlgebraCtx<F: Field> {
    pub algebra: FdAlgebra<F>,
    pub radical: Subspace<F>,
    pub decomposition: Decomposition<F>,
    pub generators: Vec<Generator<F>>,
    /// Lazily built `A·e_p` for each primitive `e_p`: basis (inside `A`) and action matrices.
    pub(crate) proj_cache: Vec<OnceLock<ProjData<F>>>,
}

#[derive(Clone, Debug)]
pub(crate) struct ProjData<F: Field> {
    pub basis: Subspace<F>,
    pub action: Arc<Vec<Matrix<F>>>,
}

impl<F: Field> AlgebraCtx<F> {
    /// Decomposes `algebra`, refining `start` (orthogonal idempotents summing to 1) when given.
    pub fn new(algebra: FdAlgebra<F>, start: Option<&[Vec<F::El>]>) -> Result<Arc<Self>> {
        let radical = algebra.radical()?;
        let decomposition = decompose(&algebra, &radical, start)?;
        let generators = adapted_generators(&algebra, &radical, &decomposition.prims);
        let proj_cache = (0..decomposition.prims.len()).map(|_| OnceLock::new()).collect();
        Ok(Arc::new(AlgebraCtx { algebra, radical, decomposition, generators, proj_cache }))
    }

    pub fn field(&self) -> F {
        self.algebra.field()
    }

    pub fn num_prims(&self) -> usize {
        self.decomposition.prims.len()
    }

    pub fn num_simples(&self) -> usize {
        self.decomposition.class_reps.len()
    }

    pub fn prim(&self, p: usize) -> &[F::El] {
        &self.decomposition.prims[p]
    }

    /// Cartan matrix `C[s][t] = dim e_s A e_t` over class representatives.
    pub fn cartan_matrix(&self) -> Vec<Vec<usize>> {
        let reps = &self.decomposition.class_reps;
        reps.iter()
            .map(|&s| {
                reps.iter()
                    .map(|&t| self.algebra.corner_unchecked(self.prim(s), self.prim(t)).dim())
                    .collect()
            })
            .collect()
    }

    pub fn center_dim(&self) -> usize {
        self.algebra.center().dim()
    }
}

/// Cartan matrix for a given complete set of primitive idempotents.
pub fn cartan_matrix<F: Field>(alg: &FdAlgebra<F>, prims: Option<&[Vec<F::El>]>) -> Result<Vec<Vec<usize>>> {
    if let Some(p) = prims {
        check_idempotents(alg, p)?;
        let rad = alg.radical()?;
        for (i, e) in p.iter().enumerate() {
            let corner = alg.corner_unchecked(e, e);
            if corner.dim() - corner.intersection(&rad).dim() != 1 {
                return Err(Error::Invalid(format!("idempotent {i} is not primitive with split top")));
            }
        }
    }
    let ctx = AlgebraCtx::new(alg.clone(), prims)?;
    Ok(ctx.cartan_matrix())
}

pub fn integer_det(m: &[Vec<usize>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mat = Matrix::from_fn(Rationals, n, n, |i, j| Rat::from_int(m[i][j] as i64));
    mat.det().to_i64().expect("integer determinant fits in i64")
}

fn decompose<F: Field>(
    alg: &FdAlgebra<F>,
    rad: &Subspace<F>,
    start: Option<&[Vec<F::El>]>,
) -> Result<Decomposition<F>> {
    let start: Vec<Vec<F::El>> = match start {
        Some(s) => {
            check_idempotents(alg, s)?;
            s.to_vec()
        }
        None => vec![alg.unit().to_vec()],
    };
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    let mut prims = Vec::new();
    let mut origin = Vec::new();
    for (o, e) in start.iter().enumerate() {
        let mut stack = vec![e.clone()];
        let mut done = Vec::new();
        while let Some(e) = stack.pop() {
            match split_idempotent(alg, rad, &e, &mut rng)? {
                None => done.push(e),
                Some((a, b)) => {
                    // keep left-to-right order: process `a` before `b`
                    stack.push(b);
                    stack.push(a);
                }
            }
        }
        for e in done {
            prims.push(e);
            origin.push(o);
        }
    }
    let mut class_of = vec![usize::MAX; prims.len()];
    let mut class_reps = Vec::new();
    for i in 0..prims.len() {
        if class_of[i] != usize::MAX {
            continue;
        }
        let c = class_reps.len();
        class_reps.push(i);
        for j in i..prims.len() {
            if class_of[j] == usize::MAX && !alg.corner_unchecked(&prims[i], &prims[j]).is_subspace_of(rad) {
                class_of[j] = c;
            }
        }
    }
    Ok(Decomposition { prims, origin, class_of, class_reps })
}

/// Splits `e` into two nonzero orthogonal idempotents, or returns `None` if `e` is
/// primitive with top `k`.
fn split_idempotent<F: Field>(
    alg: &FdAlgebra<F>,
    rad: &Subspace<F>,
    e: &[F::El],
    rng: &mut ChaCha8Rng,
) -> Result<Option<(Vec<F::El>, Vec<F::El>)>> {
    let sub = alg.corner_algebra(e)?;
    let b = &sub.algebra;
    let corner_rad = sub.subspace.intersection(rad);
    let rad_b = Subspace::span(
        b.field(),
        b.dim(),
        corner_rad
            .basis()
            .iter()
            .map(|v| sub.subspace.coordinates(v).expect("inside corner")),
    );
    if b.dim() - rad_b.dim() == 1 {
        return Ok(None);
    }
    let q = b.quotient(&rad_b)?;
    let Some(idem) = find_split(&q, rng) else {
        return Err(Error::NonSplit(format!(
            "a corner with semisimple part of dimension {} admits no proper idempotent over the ground field",
            q.algebra.dim()
        )));
    };
    let mut c = q.lift(&idem);
    for _ in 0..64 {
        let c2 = b.mul(&c, &c);
        if c2 == c {
            break;
        }
        let c3 = b.mul(&c2, &c);
        let f = b.field();
        let three = f.from_i64(3);
        let two = f.from_i64(2);
        c = b.sub(&b.scale(&three, &c2), &b.scale(&two, &c3));
    }
    if !b.is_idempotent(&c) {
        return Err(Error::Invalid("idempotent lifting did not converge".into()));
    }
    let c_a = sub.inclusion.mul_vec(&c);
    let rest = alg.sub(e, &c_a);
    Ok(Some((c_a, rest)))
}

fn find_split<F: Field>(q: &Quotient<F>, rng: &mut ChaCha8Rng) -> Option<Vec<F::El>> {
    let alg = &q.algebra;
    let f = alg.field();
    let d = alg.dim();
    let mut candidates: Vec<Vec<F::El>> = (0..d).map(|i| alg.basis_elem(i)).collect();
    for i in 0..d {
        for j in i + 1..d {
            candidates.push(alg.add(&alg.basis_elem(i), &alg.basis_elem(j)));
        }
    }
    for _ in 0..RANDOM_CANDIDATES {
        candidates.push((0..d).map(|_| f.random(rng)).collect());
    }
    for cand in candidates {
        let m = poly::min_poly(alg, &cand);
        if m.len() <= 2 {
            continue;
        }
        for r in field_roots(f, &m) {
            let shift: Vec<F::El> = alg.unit().iter().map(|u| f.mul(u, &r)).collect();
            let y = alg.sub(&cand, &shift);
            if let Some(idem) = fitting_idempotent(alg, &y) {
                return Some(idem);
            }
            // y is nilpotent: multiply by basis elements to find a non-nilpotent zero divisor
            for k in 0..d {
                let bk = alg.basis_elem(k);
                for z in [alg.mul(&y, &bk), alg.mul(&bk, &y)] {
                    if let Some(idem) = fitting_idempotent(alg, &z) {
                        return Some(idem);
                    }
                }
            }
        }
    }
    None
}

/// For `y` neither invertible nor nilpotent, the idempotent projecting onto the
/// invertible part of its Fitting decomposition.
fn fitting_idempotent<F: Field>(alg: &FdAlgebra<F>, y: &[F::El]) -> Option<Vec<F::El>> {
    let f = alg.field();
    if alg.is_zero(y) {
        return None;
    }
    let m = poly::min_poly(alg, y);
    let j = m.iter().position(|c| !f.is_zero(c)).expect("monic");
    if j == 0 || j == m.len() - 1 {
        return None;
    }
    let h = m[j..].to_vec();
    let mut xj = vec![f.zero(); j];
    xj.push(f.one());
    let (_, u, _) = poly::gcd_ext(f, &xj, &h);
    let idem = poly::eval_in(alg, &poly::mul(f, &u, &xj), y);
    debug_assert!(alg.is_idempotent(&idem));
    Some(idem)
}

/// Elements `e_a x e_b` that, with the primitives, span `A` modulo `rad²`; such a set
/// generates `A` as an algebra.
fn adapted_generators<F: Field>(alg: &FdAlgebra<F>, rad: &Subspace<F>, prims: &[Vec<F::El>]) -> Vec<Generator<F>> {
    let rad2 = alg.product_space(rad, rad);
    let mut ech: Echelon<F> = rad2.to_echelon();
    let mut gens = Vec::new();
    for (a, e) in prims.iter().enumerate() {
        ech.insert(e.clone());
        gens.push(Generator { elem: e.clone(), tgt: a, src: a, is_idempotent: true });
    }
    for (a, ea) in prims.iter().enumerate() {
        for (b, eb) in prims.iter().enumerate() {
            let corner = alg.corner_unchecked(ea, eb);
            for x in corner.basis() {
                if ech.is_full() {
                    return gens;
                }
                if ech.insert(x.clone()) {
                    gens.push(Generator { elem: x.clone(), tgt: a, src: b, is_idempotent: false });
                }
            }
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::presets::*;
    use crate::field::PrimeField;

    #[test]
    fn cartan_small_algebras() {
        let f = Rationals;
        assert_eq!(cartan_matrix(&truncated_poly(f, 2), None).unwrap(), vec![vec![2]]);
        assert_eq!(cartan_matrix(&product_of_fields(f, 2), None).unwrap(), vec![vec![1, 0], vec![0, 1]]);
        let lt = lower_triangular(f, 2);
        let prims = vec![lt.basis_elem(0), lt.basis_elem(2)];
        assert_eq!(cartan_matrix(&lt, Some(&prims)).unwrap(), vec![vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn full_matrix_splits_into_one_class() {
        let f = Rationals;
        let ctx = AlgebraCtx::new(full_matrix(f, 3), None).unwrap();
        assert_eq!(ctx.num_prims(), 3);
        assert_eq!(ctx.num_simples(), 1);
        assert_eq!(ctx.cartan_matrix(), vec![vec![1]]);
    }

    #[test]
    fn product_of_fields_from_unit() {
        let f = PrimeField::new(101).unwrap();
        let ctx = AlgebraCtx::new(product_of_fields(f, 3), None).unwrap();
        assert_eq!(ctx.num_simples(), 3);
    }

    #[test]
    fn nonsplit_field_extension_detected() {
        // Q(i) as a 2-dim algebra over Q
        let f = Rationals;
        let one = Rat::one();
        let z = Rat::zero();
        let a = FdAlgebra::from_products(
            f,
            2,
            |i, j| match (i, j) {
                (0, k) | (k, 0) => if k == 0 { vec![one.clone(), z.clone()] } else { vec![z.clone(), one.clone()] },
                _ => vec![Rat::from_int(-1), z.clone()],
            },
            vec![one.clone(), z.clone()],
            None,
        )
        .unwrap();
        assert!(matches!(AlgebraCtx::new(a, None), Err(Error::NonSplit(_))));
    }
}
