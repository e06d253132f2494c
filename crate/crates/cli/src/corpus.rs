//! Bundled spec files: the worked examples and small control cases.

use std::collections::BTreeMap;

use tiltkit::algebra::presets::{full_matrix, ground, lower_triangular, truncated_poly};
use tiltkit::algebra::FdAlgebra;
use tiltkit::field::{FieldSpec, Rat, Rationals};

use crate::format::{AlgebraSource, AlgebraTable, BlockBlock, FileOptions, LambdaBlock, SpecFile, SubspaceExpr, TiledBlock};
use crate::quiver::{Arrow, QuiverSpec, Relation};

/// Structure constants of an algebra over `Q` in file form.
pub fn table_of(a: &FdAlgebra<Rationals>) -> AlgebraTable {
    let d = a.dim();
    let mut mult = Vec::new();
    for i in 0..d {
        for j in 0..d {
            for (k, c) in a.structure(i, j) {
                mult.push((i, j, *k, c.clone()));
            }
        }
    }
    mult.sort_by(|x, y| (x.0, x.1, x.2).cmp(&(y.0, y.1, y.2)));
    AlgebraTable { dim: d, labels: a.labels().map(<[String]>::to_vec), unit: a.unit().to_vec(), mult }
}

fn unit(d: usize, i: usize) -> Vec<Rat> {
    (0..d).map(|k| if k == i { Rat::one() } else { Rat::zero() }).collect()
}

fn spec(name: &str, notes: &[&str], alg: &FdAlgebra<Rationals>) -> SpecFile {
    SpecFile {
        name: name.into(),
        notes: notes.iter().map(|s| s.to_string()).collect(),
        field: FieldSpec::Rationals,
        algebra: AlgebraSource::Table(table_of(alg)),
        elements: Vec::new(),
        subspaces: Vec::new(),
        lambda: None,
        block: None,
        tiled: None,
        options: FileOptions::default(),
    }
}

fn sub(s: &mut SpecFile, name: &str, e: SubspaceExpr) {
    s.subspaces.push((name.into(), e));
}

fn lambda(n: usize, ideals: &[&str]) -> LambdaBlock {
    LambdaBlock {
        n,
        ideals: ideals.iter().map(|s| s.to_string()).collect(),
        subrings: BTreeMap::new(),
        ideals_ij: BTreeMap::new(),
        lower_full: false,
    }
}

/// `k[x]/(x^m)` with `I = (x)` and its powers `I2, I3`.
fn poly_with_powers(name: &str, notes: &[&str], m: usize) -> SpecFile {
    let a = truncated_poly(Rationals, m);
    let mut s = spec(name, notes, &a);
    sub(&mut s, "I", SubspaceExpr::Ideal(vec![unit(m, 1.min(m - 1))]));
    sub(&mut s, "I2", SubspaceExpr::Power("I".into(), 2));
    sub(&mut s, "I3", SubspaceExpr::Power("I".into(), 3));
    s
}

pub fn example1_display() -> SpecFile {
    let mut s = poly_with_powers(
        "example1-display",
        &["4x4 ring with A, I, I^2, I^3 above the diagonal over A = k[x]/(x^4), I = (x), exactly as displayed: entry (4,3) is I"],
        4,
    );
    let mut l = lambda(4, &["I", "I2", "I3"]);
    l.ideals_ij.insert((4, 3), "I".into());
    s.lambda = Some(l);
    s
}

pub fn example1_row_pattern() -> SpecFile {
    let mut s = poly_with_powers(
        "example1-row-pattern",
        &["same ring with I_ij = I_j below the diagonal, so entry (4,3) is I^2"],
        4,
    );
    s.lambda = Some(lambda(4, &["I", "I2", "I3"]));
    s
}

pub fn example2(m: usize) -> SpecFile {
    let mut s = spec(
        &format!("example2-m{m}"),
        &[
            "A = k[x]/(x^m), I = rad A; lambda: A below the diagonal, I^(j-1) in column j above it",
            "tiled: I_ij = I^(j-i) above the diagonal (entry (2,4) is I^2; the displayed I^3 is not closed under products)",
        ],
        &truncated_poly(Rationals, m),
    );
    sub(&mut s, "rad", SubspaceExpr::Radical);
    sub(&mut s, "I2", SubspaceExpr::Power("rad".into(), 2));
    sub(&mut s, "I3", SubspaceExpr::Power("rad".into(), 3));
    let mut l = lambda(4, &["rad", "I2", "I3"]);
    l.lower_full = true;
    s.lambda = Some(l);
    s.tiled = Some(TiledBlock { n: 4, powers: Some("rad".into()), ideals: BTreeMap::new() });
    s
}

pub fn dual_n2() -> SpecFile {
    let mut s = spec("dual-n2", &["A = k[x]/(x^2), n = 2, I_2 = (x)"], &truncated_poly(Rationals, 2));
    sub(&mut s, "I", SubspaceExpr::Ideal(vec![unit(2, 1)]));
    s.lambda = Some(lambda(2, &["I"]));
    s
}

pub fn field_n(n: usize) -> SpecFile {
    let mut s = spec(&format!("field-n{n}"), &["A = k with zero ideals: lambda is lower triangular"], &ground(Rationals));
    sub(&mut s, "Z", SubspaceExpr::Zero);
    s.lambda = Some(lambda(n, &vec!["Z"; n - 1]));
    s
}

pub fn matrix_m2() -> SpecFile {
    let mut s = spec("matrix-m2k-n2", &["A = M_2(k), n = 2, I_2 = 0"], &full_matrix(Rationals, 2));
    sub(&mut s, "Z", SubspaceExpr::Zero);
    s.lambda = Some(lambda(2, &["Z"]));
    s
}

pub fn lower_triangular_n(n: usize) -> SpecFile {
    let mut s = spec(
        &format!("lower-triangular-n{n}"),
        &["A = lower-triangular 2x2 matrices, every I_i = rad A (the strictly lower entry)"],
        &lower_triangular(Rationals, 2),
    );
    sub(&mut s, "rad", SubspaceExpr::Radical);
    s.lambda = Some(lambda(n, &vec!["rad"; n - 1]));
    s
}

pub fn example3_quiver() -> QuiverSpec {
    let path = |c: i64, p: &str| (Rat::from_int(c), p.split('*').map(str::to_string).collect());
    QuiverSpec {
        vertices: 2,
        arrows: vec![
            Arrow { label: "alpha".into(), source: 1, target: 1 },
            Arrow { label: "beta".into(), source: 1, target: 2 },
            Arrow { label: "delta".into(), source: 2, target: 1 },
        ],
        relations: vec![
            Relation { terms: vec![path(1, "alpha*alpha*alpha"), path(-1, "beta*delta")] },
            Relation { terms: vec![path(1, "alpha*beta")] },
            Relation { terms: vec![path(1, "delta*alpha")] },
        ],
        bound: 5,
    }
}

pub fn example3() -> SpecFile {
    SpecFile {
        name: "example3".into(),
        notes: vec![
            "loop alpha at 1, beta: 1 -> 2, delta: 2 -> 1, relations alpha^3 = beta*delta, alpha*beta = 0, delta*alpha = 0".into(),
            "block extension P(3,2) built from the block recipe; the extended-quiver presentation of P(3,2) is not encoded (unverified)".into(),
        ],
        field: FieldSpec::Rationals,
        algebra: AlgebraSource::Quiver(example3_quiver()),
        elements: Vec::new(),
        subspaces: Vec::new(),
        lambda: None,
        block: Some(BlockBlock {
            idempotents: vec!["e1".into(), "e2".into()],
            sizes: vec![3, 2],
            strict_case2: true,
            subrings: BTreeMap::new(),
            ideals: BTreeMap::new(),
            ideals_pq: BTreeMap::new(),
            off: BTreeMap::new(),
        }),
        tiled: None,
        options: FileOptions::default(),
    }
}

pub fn qf_block_dual() -> SpecFile {
    let mut s = spec("qf-block-dual", &["block extension of R = k[x]/(x^2) with m = 1, n_1 = 2"], &truncated_poly(Rationals, 2));
    s.elements.push(("one".into(), unit(2, 0)));
    s.block = Some(BlockBlock {
        idempotents: vec!["one".into()],
        sizes: vec![2],
        strict_case2: true,
        subrings: BTreeMap::new(),
        ideals: BTreeMap::new(),
        ideals_pq: BTreeMap::new(),
        off: BTreeMap::new(),
    });
    s
}

pub fn tiled_full() -> SpecFile {
    let mut s = spec(
        "tiled-full-control",
        &["every I_ij = A, so the tiled ring is M_3(A) and all hypothesis modules are zero"],
        &truncated_poly(Rationals, 2),
    );
    sub(&mut s, "A", SubspaceExpr::Full);
    s.tiled = Some(TiledBlock { n: 3, powers: Some("A".into()), ideals: BTreeMap::new() });
    s
}

/// All bundled entries, sorted by name.
pub fn corpus() -> Vec<SpecFile> {
    let mut out = vec![
        example1_display(),
        example1_row_pattern(),
        example2(2),
        example2(3),
        example2(4),
        example3(),
        dual_n2(),
        field_n(2),
        field_n(3),
        matrix_m2(),
        lower_triangular_n(2),
        lower_triangular_n(3),
        qf_block_dual(),
        tiled_full(),
    ];
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}

pub fn find(name: &str) -> Option<SpecFile> {
    corpus().into_iter().find(|s| s.name == name)
}
