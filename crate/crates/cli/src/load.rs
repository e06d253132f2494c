//! Turns a [`SpecFile`] into typed algebra objects over a chosen field.

use std::collections::BTreeMap;

use tiltkit::algebra::FdAlgebra;
use tiltkit::builder::{BlockExtensionSpec, LambdaSpec, TiledTriangularSpec};
use tiltkit::error::{Error, Result};
use tiltkit::field::{Field, Rat};
use tiltkit::linalg::Subspace;

use crate::format::{AlgebraSource, SpecFile, SubspaceExpr};
use crate::quiver::build_path_algebra;

/// Everything a spec file defines, over the field `F`. Ring specs are not validated here.
#[derive(Clone, Debug)]
pub struct Loaded<F: Field> {
    pub field: F,
    pub base: FdAlgebra<F>,
    pub elements: BTreeMap<String, Vec<F::El>>,
    pub subspaces: BTreeMap<String, Subspace<F>>,
    pub lambda: Option<LambdaSpec<F>>,
    pub block: Option<BlockExtensionSpec<F>>,
    pub tiled: Option<TiledTriangularSpec<F>>,
}

fn convert<F: Field>(field: F, v: &[Rat], dim: usize, what: &str) -> Result<Vec<F::El>> {
    if v.len() != dim {
        return Err(Error::Dimension(format!("{what} has length {} but the algebra has dimension {dim}", v.len())));
    }
    v.iter()
        .map(|r| field.from_rat(r).ok_or_else(|| Error::InvalidField(format!("{what}: {r} is undefined in {}", field.spec()))))
        .collect()
}

pub fn base_algebra<F: Field>(file: &SpecFile, field: F, cap: usize) -> Result<(FdAlgebra<F>, Vec<(String, Vec<F::El>)>)> {
    match &file.algebra {
        AlgebraSource::Table(t) => {
            if t.dim > cap {
                return Err(Error::TooLarge(format!("algebra dimension {} exceeds {cap}", t.dim)));
            }
            let mut products: BTreeMap<(usize, usize), Vec<F::El>> = BTreeMap::new();
            for (i, j, k, c) in &t.mult {
                let c = field
                    .from_rat(c)
                    .ok_or_else(|| Error::InvalidField(format!("mult {i} {j} {k}: {c} is undefined")))?;
                let row = products.entry((*i, *j)).or_insert_with(|| vec![field.zero(); t.dim]);
                row[*k] = field.add(&row[*k], &c);
            }
            let unit = convert(field, &t.unit, t.dim, "unit")?;
            let alg = FdAlgebra::from_products(
                field,
                t.dim,
                |i, j| products.get(&(i, j)).cloned().unwrap_or_else(|| vec![field.zero(); t.dim]),
                unit,
                t.labels.clone(),
            )?;
            Ok((alg, Vec::new()))
        }
        AlgebraSource::Quiver(q) => {
            let p = build_path_algebra(q, field, cap)?;
            let idems = p.vertex_idems.into_iter().enumerate().map(|(v, e)| (format!("e{}", v + 1), e)).collect();
            Ok((p.algebra, idems))
        }
    }
}

pub fn load<F: Field>(file: &SpecFile, field: F, cap: usize) -> Result<Loaded<F>> {
    let (base, vertex) = base_algebra(file, field, cap)?;
    let d = base.dim();
    let mut elements = BTreeMap::new();
    for (name, e) in vertex {
        elements.insert(name, e);
    }
    for (name, v) in &file.elements {
        elements.insert(name.clone(), convert(field, v, d, &format!("element {name}"))?);
    }
    let mut subspaces: BTreeMap<String, Subspace<F>> = BTreeMap::new();
    for (name, expr) in &file.subspaces {
        let get = |n: &str| -> Result<Subspace<F>> {
            subspaces.get(n).cloned().ok_or_else(|| Error::Invalid(format!("subspace {name} refers to undefined subspace {n}")))
        };
        let elem = |n: &str| -> Result<Vec<F::El>> {
            elements.get(n).cloned().ok_or_else(|| Error::Invalid(format!("subspace {name} refers to undefined element {n}")))
        };
        let vecs = |vs: &[Vec<Rat>]| -> Result<Vec<Vec<F::El>>> {
            vs.iter().map(|v| convert(field, v, d, &format!("subspace {name}"))).collect()
        };
        let s = match expr {
            SubspaceExpr::Full => base.full_space(),
            SubspaceExpr::Zero => base.zero_space(),
            SubspaceExpr::Radical => base.radical()?,
            SubspaceExpr::Span(vs) => base.span(vecs(vs)?),
            SubspaceExpr::Ideal(vs) => base.ideal_generated(&vecs(vs)?),
            SubspaceExpr::Power(s, k) => base.power_space(&get(s)?, *k),
            SubspaceExpr::Corner(a, b) => base.corner_unchecked(&elem(a)?, &elem(b)?),
            SubspaceExpr::Sum(a, b) => get(a)?.sum(&get(b)?),
            SubspaceExpr::Meet(a, b) => get(a)?.intersection(&get(b)?),
        };
        subspaces.insert(name.clone(), s);
    }
    let sub = |n: &str, ctx: &str| -> Result<Subspace<F>> {
        subspaces.get(n).cloned().ok_or_else(|| Error::Invalid(format!("{ctx} refers to undefined subspace {n}")))
    };

    let lambda = match &file.lambda {
        None => None,
        Some(l) => {
            let ideals = l.ideals.iter().map(|n| sub(n, "lambda")).collect::<Result<Vec<_>>>()?;
            let mut spec = LambdaSpec::new(base.clone(), ideals)?;
            if l.lower_full {
                for v in spec.ideals_ij.values_mut() {
                    *v = base.full_space();
                }
            }
            for (&i, n) in &l.subrings {
                spec.set_subring(i, sub(n, "lambda subring")?);
            }
            for (&(i, j), n) in &l.ideals_ij {
                spec.set_ideal_ij(i, j, sub(n, "lambda ideal_ij")?);
            }
            Some(spec)
        }
    };

    let block = match &file.block {
        None => None,
        Some(b) => {
            let idems = b
                .idempotents
                .iter()
                .map(|n| elements.get(n).cloned().ok_or_else(|| Error::Invalid(format!("block refers to undefined element {n}"))))
                .collect::<Result<Vec<_>>>()?;
            let mut spec = BlockExtensionSpec::basic(base.clone(), idems, b.sizes.clone())?;
            spec.strict_case2 = b.strict_case2;
            let m = b.sizes.len();
            let in_range = |blk: usize, idx: &[usize], limit: usize| blk >= 1 && blk <= m && idx.iter().all(|&x| x >= 1 && x <= limit);
            for (&(blk, q), n) in &b.subrings {
                if !in_range(blk, &[q], b.sizes.get(blk.wrapping_sub(1)).copied().unwrap_or(0)) || q < 2 {
                    return Err(Error::Invalid(format!("diag_subring {blk} {q} is out of range")));
                }
                spec.diag[blk - 1].subrings[q - 2] = sub(n, "block")?;
            }
            for (&(blk, q), n) in &b.ideals {
                if !in_range(blk, &[q], b.sizes.get(blk.wrapping_sub(1)).copied().unwrap_or(0)) || q < 2 {
                    return Err(Error::Invalid(format!("diag_ideal {blk} {q} is out of range")));
                }
                spec.diag[blk - 1].ideals[q - 2] = sub(n, "block")?;
            }
            for (&(blk, p, q), n) in &b.ideals_pq {
                if !in_range(blk, &[p, q], b.sizes.get(blk.wrapping_sub(1)).copied().unwrap_or(0)) || !(2 <= q && q < p) {
                    return Err(Error::Invalid(format!("diag_ideal_pq {blk} {p} {q} is out of range")));
                }
                spec.diag[blk - 1].ideals_pq.insert((p, q), sub(n, "block")?);
            }
            for (&(i, s, p, q), n) in &b.off {
                let ok = i != s && (1..=m).contains(&i) && (1..=m).contains(&s) && p >= 1 && p <= b.sizes[i - 1] && q >= 1 && q <= b.sizes[s - 1];
                if !ok {
                    return Err(Error::Invalid(format!("off {i} {s} {p} {q} is out of range")));
                }
                let grid = spec.off.get_mut(&(i - 1, s - 1)).expect("filled by basic");
                grid[p - 1][q - 1] = sub(n, "block")?;
            }
            Some(spec)
        }
    };

    let tiled = match &file.tiled {
        None => None,
        Some(t) => {
            let mut spec = match &t.powers {
                Some(p) => TiledTriangularSpec::powers(base.clone(), t.n, &sub(p, "tiled")?),
                None => TiledTriangularSpec { base: base.clone(), n: t.n, ideals: BTreeMap::new() },
            };
            for (&(i, j), n) in &t.ideals {
                spec.ideals.insert((i, j), sub(n, "tiled")?);
            }
            Some(spec)
        }
    };

    Ok(Loaded { field, base, elements, subspaces, lambda, block, tiled })
}
