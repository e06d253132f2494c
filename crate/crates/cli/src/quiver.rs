//! Bound quiver algebras `kQ / I`.
//!
//! Paths compose left to right: `a*b` is `a` followed by `b`, so the product of two
//! paths `p · q` is their concatenation when `p` ends where `q` starts. Vertices are
//! numbered from 1. `e_i A e_j` is spanned by the paths from `i` to `j`.

use std::collections::BTreeMap;
use std::fmt;

use tiltkit::algebra::FdAlgebra;
use tiltkit::error::{Error, Result};
use tiltkit::field::{Field, Rat};
use tiltkit::linalg::{reduce_mod, unit_vec, zero_vec, Subspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

/// `Σ c · path`, each path a list of arrow labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(Rat, Vec<String>)>,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one = Rat::one();
        for (k, (c, path)) in self.terms.iter().enumerate() {
            let p = path.join("*");
            if k == 0 {
                if *c == one {
                    write!(f, "{p}")?;
                } else {
                    write!(f, "{c} {p}")?;
                }
                continue;
            }
            let (op, mag) = if c.is_negative() { ("-", c.neg()) } else { ("+", c.clone()) };
            if mag == one {
                write!(f, " {op} {p}")?;
            } else {
                write!(f, " {op} {mag} {p}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverSpec {
    pub vertices: usize,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Relation>,
    /// Paths of length `≥ bound` are zero.
    pub bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Path {
    start: usize,
    end: usize,
    arrows: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct PathAlgebra<F: Field> {
    pub algebra: FdAlgebra<F>,
    /// `e_1, ..., e_m` in the algebra basis.
    pub vertex_idems: Vec<Vec<F::El>>,
    /// Basis labels, e.g. `e1`, `alpha`, `beta*delta`.
    pub basis_paths: Vec<String>,
}

/// Paths of length `< bound`, all of them when the count stays under `cap`.
fn enumerate_paths(q: &QuiverSpec, cap: usize) -> Result<Vec<Path>> {
    let mut out: Vec<Path> = (1..=q.vertices).map(|v| Path { start: v, end: v, arrows: vec![] }).collect();
    let mut frontier: Vec<Path> = out.clone();
    for _ in 1..q.bound {
        let mut next = Vec::new();
        for p in &frontier {
            for (k, a) in q.arrows.iter().enumerate() {
                if a.source == p.end {
                    let mut arrows = p.arrows.clone();
                    arrows.push(k);
                    next.push(Path { start: p.start, end: a.target, arrows });
                }
            }
        }
        if next.is_empty() {
            break;
        }
        out.extend(next.iter().cloned());
        if out.len() > cap {
            return Err(Error::TooLarge(format!("more than {cap} paths below length {}", q.bound)));
        }
        frontier = next;
    }
    Ok(out)
}

fn check_quiver(q: &QuiverSpec) -> Result<BTreeMap<&str, usize>> {
    if q.vertices == 0 {
        return Err(Error::Invalid("quiver needs at least one vertex".into()));
    }
    if q.bound == 0 {
        return Err(Error::Invalid("path length bound must be positive".into()));
    }
    let mut labels = BTreeMap::new();
    for (k, a) in q.arrows.iter().enumerate() {
        for v in [a.source, a.target] {
            if v == 0 || v > q.vertices {
                return Err(Error::Invalid(format!("arrow {} uses vertex {v} outside 1..{}", a.label, q.vertices)));
            }
        }
        if labels.insert(a.label.as_str(), k).is_some() {
            return Err(Error::Invalid(format!("arrow label {} used twice", a.label)));
        }
    }
    Ok(labels)
}

/// `kQ / (I + paths of length ≥ bound)`. The basis consists of residues of the shortest
/// paths not reducible modulo the relations, ordered by length.
pub fn build_path_algebra<F: Field>(q: &QuiverSpec, field: F, cap: usize) -> Result<PathAlgebra<F>> {
    let labels = check_quiver(q)?;
    let mut paths = enumerate_paths(q, cap.saturating_mul(16).max(64))?;
    // longest paths first, so pivots land on long paths and residues are short
    paths.sort_by(|a, b| b.arrows.len().cmp(&a.arrows.len()).then_with(|| a.cmp(b)));
    let index: BTreeMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let n = paths.len();

    let concat = |a: &Path, b: &Path| -> Option<usize> {
        if a.end != b.start || a.arrows.len() + b.arrows.len() >= q.bound {
            return None;
        }
        let mut arrows = a.arrows.clone();
        arrows.extend(&b.arrows);
        index.get(&Path { start: a.start, end: b.end, arrows }).copied()
    };

    // relations as vectors in the truncated path space
    let mut rel_vecs = Vec::new();
    for r in &q.relations {
        let mut v = zero_vec(field, n);
        let mut ends = None;
        for (c, word) in &r.terms {
            if word.len() < 2 {
                return Err(Error::Invalid(format!("relation `{r}` has a path of length below 2")));
            }
            let mut arrows = Vec::with_capacity(word.len());
            for w in word {
                arrows.push(*labels.get(w.as_str()).ok_or_else(|| Error::Invalid(format!("unknown arrow {w}")))?);
            }
            for pair in arrows.windows(2) {
                if q.arrows[pair[0]].target != q.arrows[pair[1]].source {
                    return Err(Error::Invalid(format!("`{}` is not a path", word.join("*"))));
                }
            }
            let se = (q.arrows[arrows[0]].source, q.arrows[*arrows.last().unwrap()].target);
            if *ends.get_or_insert(se) != se {
                return Err(Error::Invalid(format!("relation `{r}` mixes paths with different ends")));
            }
            let c = field
                .from_rat(c)
                .ok_or_else(|| Error::InvalidField(format!("coefficient {c} is undefined in the field")))?;
            if arrows.len() < q.bound {
                let p = Path { start: se.0, end: se.1, arrows };
                let i = index[&p];
                v[i] = field.add(&v[i], &c);
            }
        }
        rel_vecs.push((ends.unwrap_or((1, 1)), v));
    }

    // two-sided ideal: u · r · w over paths u, w
    let mut gens = Vec::new();
    for ((s, e), r) in &rel_vecs {
        for u in paths.iter().filter(|u| u.end == *s) {
            for w in paths.iter().filter(|w| w.start == *e) {
                let mut out = zero_vec(field, n);
                for (i, c) in r.iter().enumerate() {
                    if field.is_zero(c) {
                        continue;
                    }
                    if let Some(uk) = concat(u, &paths[i]) {
                        if let Some(k) = concat(&paths[uk], w) {
                            out[k] = field.add(&out[k], c);
                        }
                    }
                }
                gens.push(out);
            }
        }
    }
    let ideal = Subspace::span(field, n, gens);
    let mut basis = ideal.non_pivots();
    basis.sort_by(|&a, &b| paths[a].arrows.len().cmp(&paths[b].arrows.len()).then_with(|| paths[a].cmp(&paths[b])));
    let dim = basis.len();
    if dim > cap {
        return Err(Error::TooLarge(format!("path algebra has dimension {dim} > {cap}")));
    }
    let coords = |v: &[F::El]| -> Vec<F::El> {
        let r = reduce_mod(&ideal, v);
        basis.iter().map(|&c| r[c].clone()).collect()
    };
    let mut unit = zero_vec(field, n);
    for v in 1..=q.vertices {
        unit[index[&Path { start: v, end: v, arrows: vec![] }]] = field.one();
    }
    let label = |p: &Path| -> String {
        if p.arrows.is_empty() {
            format!("e{}", p.start)
        } else {
            p.arrows.iter().map(|&a| q.arrows[a].label.as_str()).collect::<Vec<_>>().join("*")
        }
    };
    let basis_paths: Vec<String> = basis.iter().map(|&b| label(&paths[b])).collect();
    let algebra = FdAlgebra::from_products(
        field,
        dim,
        |a, b| match concat(&paths[basis[a]], &paths[basis[b]]) {
            Some(k) => coords(&unit_vec(field, n, k)),
            None => zero_vec(field, dim),
        },
        coords(&unit),
        Some(basis_paths.clone()),
    )?;
    let vertex_idems = (1..=q.vertices)
        .map(|v| coords(&unit_vec(field, n, index[&Path { start: v, end: v, arrows: vec![] }])))
        .collect();
    Ok(PathAlgebra { algebra, vertex_idems, basis_paths })
}

#[cfg(test)]
mod tests {
    use super::*;
    use tiltkit::field::Rationals;

    fn rel(terms: &[(i64, &str)]) -> Relation {
        Relation {
            terms: terms
                .iter()
                .map(|(c, p)| (Rat::from_int(*c), p.split('*').map(str::to_string).collect()))
                .collect(),
        }
    }

    fn arrow(label: &str, source: usize, target: usize) -> Arrow {
        Arrow { label: label.into(), source, target }
    }

    #[test]
    fn single_vertex() {
        let q = QuiverSpec { vertices: 1, arrows: vec![], relations: vec![], bound: 3 };
        assert_eq!(build_path_algebra(&q, Rationals, 512).unwrap().algebra.dim(), 1);
        let q = QuiverSpec { vertices: 1, arrows: vec![arrow("x", 1, 1)], relations: vec![rel(&[(1, "x*x")])], bound: 2 };
        let a = build_path_algebra(&q, Rationals, 512).unwrap();
        assert_eq!(a.algebra.dim(), 2);
        assert!(a.algebra.validate().is_valid());
    }

    #[test]
    fn kronecker_and_left_to_right() {
        // 1 -a-> 2 -b-> 3 with no relations: a*b is the only length-2 path
        let q = QuiverSpec { vertices: 3, arrows: vec![arrow("a", 1, 2), arrow("b", 2, 3)], relations: vec![], bound: 4 };
        let p = build_path_algebra(&q, Rationals, 512).unwrap();
        assert_eq!(p.algebra.dim(), 6);
        assert!(p.basis_paths.contains(&"a*b".to_string()));
        let a = p.algebra.basis_elem(p.basis_paths.iter().position(|s| s == "a").unwrap());
        let b = p.algebra.basis_elem(p.basis_paths.iter().position(|s| s == "b").unwrap());
        assert!(!p.algebra.is_zero(&p.algebra.mul(&a, &b)));
        assert!(p.algebra.is_zero(&p.algebra.mul(&b, &a)));
        // e_1 A e_2 is spanned by a
        let c = p.algebra.corner_unchecked(&p.vertex_idems[0], &p.vertex_idems[1]);
        assert_eq!(c.dim(), 1);
    }

    #[test]
    fn rejects_non_admissible() {
        let q = QuiverSpec { vertices: 1, arrows: vec![arrow("x", 1, 1)], relations: vec![rel(&[(1, "x")])], bound: 3 };
        assert!(build_path_algebra(&q, Rationals, 512).is_err());
        let q = QuiverSpec {
            vertices: 2,
            arrows: vec![arrow("a", 1, 2), arrow("b", 2, 1)],
            relations: vec![rel(&[(1, "a*b"), (-1, "b*a")])],
            bound: 3,
        };
        assert!(build_path_algebra(&q, Rationals, 512).is_err());
    }
}
