use std::time::Instant;

use tiltkit::algebra::presets::*;
use tiltkit::builder::{build_cor33_shape, Cor33Variant, LambdaSpec};
use tiltkit::field::{PrimeField, Rationals};
use tiltkit::tilting::verify_theorem1;

fn powers_spec(n: usize, m: usize, variant: Cor33Variant) -> LambdaSpec<Rationals> {
    let a = truncated_poly(Rationals, m);
    let rad = a.span([a.basis_elem(1)]);
    let ideals = (1..n).map(|k| a.power_space(&rad, k)).collect();
    build_cor33_shape(&a, ideals, variant).unwrap()
}

#[test]
fn example_one_shape() {
    let t = Instant::now();
    let spec = powers_spec(4, 4, Cor33Variant::RowPattern);
    let r = verify_theorem1(&spec, 8).unwrap();
    assert!(r.passes(), "{r:?}");
    assert_eq!(r.dim_end_t, r.dim_sigma);
    eprintln!("example one: {:?}", t.elapsed());
}

#[test]
fn lower_full_shape_over_fp() {
    let f = PrimeField::new(101).unwrap();
    let a = truncated_poly(f, 3);
    let rad = a.span([a.basis_elem(1)]);
    let ideals = (1..3).map(|k| a.power_space(&rad, k)).collect();
    let spec = build_cor33_shape(&a, ideals, Cor33Variant::LowerFull).unwrap();
    assert!(verify_theorem1(&spec, 8).unwrap().passes());
}
