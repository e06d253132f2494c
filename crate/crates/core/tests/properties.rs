use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tiltkit::algebra::presets::{full_matrix, lower_triangular, product_of_fields, truncated_poly};
use tiltkit::algebra::FdAlgebra;
use tiltkit::builder::{build_lambda, build_sigma, LambdaSpec};
use tiltkit::decompose::AlgebraCtx;
use tiltkit::field::{Field, PrimeField, Rat, Rationals};
use tiltkit::linalg::{Matrix, Subspace};
use tiltkit::module::{hom_dim, minimal_resolution, LeftModule};

fn f101() -> PrimeField {
    PrimeField::new(101).unwrap()
}

fn big(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn rat(n: i64, d: i64) -> Rat {
    Rationals.from_rat(&format!("{n}/{d}").parse::<Rat>().unwrap()).unwrap()
}

fn base_algebra(f: PrimeField, pick: usize) -> FdAlgebra<PrimeField> {
    match pick % 5 {
        0 => truncated_poly(f, 2),
        1 => truncated_poly(f, 3),
        2 => lower_triangular(f, 2),
        3 => product_of_fields(f, 2),
        _ => full_matrix(f, 2),
    }
}

fn sparse_vec(f: PrimeField, d: usize, rng: &mut ChaCha8Rng) -> Vec<u64> {
    (0..d).map(|_| if rng.gen_bool(0.5) { 0 } else { f.random(rng) }).collect()
}

/// A spec with a random ideal chain and random enlargements below the diagonal;
/// may be invalid.
fn random_spec(seed: u64) -> LambdaSpec<PrimeField> {
    let f = f101();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = base_algebra(f, rng.gen_range(0..5));
    let n = rng.gen_range(2..=3);
    let d = a.dim();
    let mut pool = vec![a.zero_space(), a.radical().unwrap(), a.full_space()];
    for _ in 0..2 {
        let x = sparse_vec(f, d, &mut rng);
        pool.push(a.ideal_generated(&[x]));
    }
    let mut ideals = vec![pool[rng.gen_range(0..pool.len())].clone()];
    for _ in 3..=n {
        let next = ideals.last().unwrap().intersection(&pool[rng.gen_range(0..pool.len())]);
        ideals.push(next);
    }
    let mut spec = LambdaSpec::new(a, ideals).unwrap();
    for i in 3..=n {
        for j in 2..i {
            if rng.gen_bool(0.4) {
                let bigger = spec.ideal(j).sum(&pool[rng.gen_range(0..pool.len())]);
                spec.set_ideal_ij(i, j, bigger);
            }
        }
    }
    spec
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_arithmetic_matches_bigrational(
        a in any::<i64>(), b in 1i64..i64::MAX, c in any::<i64>(), d in 1i64..i64::MAX,
    ) {
        let (x, y) = (rat(a, b), rat(c, d));
        let (bx, by) = (big(a, b), big(c, d));
        prop_assert_eq!(Rationals.add(&x, &y).to_big(), &bx + &by);
        prop_assert_eq!(Rationals.sub(&x, &y).to_big(), &bx - &by);
        prop_assert_eq!(Rationals.mul(&x, &y).to_big(), &bx * &by);
        if c != 0 {
            prop_assert_eq!(Rationals.mul(&x, &Rationals.inv(&y).unwrap()).to_big(), &bx / &by);
        }
        prop_assert_eq!(Rationals.add(&x, &y) == Rationals.add(&y, &x), true);
    }

    #[test]
    fn subspace_dimension_formula(seed in any::<u64>(), k in 0usize..6, l in 0usize..6) {
        let f = f101();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = Subspace::span(f, 6, (0..k).map(|_| sparse_vec(f, 6, &mut rng)));
        let v = Subspace::span(f, 6, (0..l).map(|_| sparse_vec(f, 6, &mut rng)));
        let s = u.sum(&v);
        let m = u.intersection(&v);
        prop_assert_eq!(s.dim() + m.dim(), u.dim() + v.dim());
        prop_assert!(m.is_subspace_of(&u) && m.is_subspace_of(&v));
        prop_assert!(u.is_subspace_of(&s) && v.is_subspace_of(&s));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn valid_specs_build_lawful_rings(seed in any::<u64>()) {
        let spec = random_spec(seed);
        let report = spec.validate();
        let built = build_lambda(&spec);
        if !report.is_valid() {
            prop_assert!(built.is_err());
            return Ok(());
        }
        let lam = built.unwrap();
        prop_assert!(lam.algebra.validate().is_valid());
        prop_assert!(lam.entry_mismatches().is_empty());
        let expected: usize = (1..=spec.n).flat_map(|i| (1..=spec.n).map(move |j| (i, j)))
            .map(|(i, j)| spec.lambda_entry(i, j).dim()).sum();
        prop_assert_eq!(lam.algebra.dim(), expected);
        if let Ok(sigma) = build_sigma(&spec) {
            prop_assert!(sigma.algebra.validate().is_valid());
            prop_assert!(sigma.entry_mismatches().is_empty());
        }
    }

    #[test]
    fn resolutions_are_exact(seed in any::<u64>(), pick in 0usize..5) {
        let f = f101();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ctx = AlgebraCtx::new(base_algebra(f, pick), None).unwrap();
        let reg = LeftModule::regular(ctx.clone());
        let sub = reg.generated(&[sparse_vec(f, reg.dim(), &mut rng)]);
        let (m, _) = reg.quotient(&sub).unwrap();
        let res = minimal_resolution(&m, 6, seed);
        prop_assert!(res.check_exactness());
    }

    #[test]
    fn hom_dimension_ignores_the_basis(seed in any::<u64>(), pick in 0usize..5) {
        let f = f101();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ctx = AlgebraCtx::new(base_algebra(f, pick), None).unwrap();
        let reg = LeftModule::regular(ctx.clone());
        let modules: Vec<LeftModule<PrimeField>> = (0..2)
            .map(|_| reg.quotient(&reg.generated(&[sparse_vec(f, reg.dim(), &mut rng)])).unwrap().0)
            .collect();
        let change = |m: &LeftModule<PrimeField>, rng: &mut ChaCha8Rng| loop {
            let p = Matrix::from_fn(f, m.dim(), m.dim(), |_, _| f.random(rng));
            if let Ok(c) = m.conjugate(&p) {
                return c;
            }
        };
        let before = hom_dim(&modules[0], &modules[1]);
        let after = hom_dim(&change(&modules[0], &mut rng), &change(&modules[1], &mut rng));
        prop_assert_eq!(before, after);
    }
}
