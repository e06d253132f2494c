//! Finite-dimensional unital associative algebras given by structure constants.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{check_len, is_zero_vec, reduce_mod, unit_vec, zero_vec, Echelon, Matrix, Subspace};

/// Sparse row of structure constants: `b_i · b_j = Σ coef · b_k`.
pub type SparseVec<E> = Vec<(usize, E)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FdAlgebra<F: Field> {
    field: F,
    dim: usize,
    table: Vec<SparseVec<F::El>>,
    unit: Vec<F::El>,
    labels: Option<Vec<String>>,
}

/// Outcome of checking the algebra axioms on basis elements.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlgebraReport {
    /// Basis triples `(i, j, k)` with `(b_i b_j) b_k ≠ b_i (b_j b_k)`.
    pub associativity_failures: Vec<(usize, usize, usize)>,
    /// Basis indices `i` with `1·b_i ≠ b_i` or `b_i·1 ≠ b_i`.
    pub unit_failures: Vec<usize>,
}

impl AlgebraReport {
    pub fn is_valid(&self) -> bool {
        self.associativity_failures.is_empty() && self.unit_failures.is_empty()
    }
}

/// A quotient algebra together with the projection from the original algebra.
#[derive(Clone, Debug)]
pub struct Quotient<F: Field> {
    pub algebra: FdAlgebra<F>,
    /// `dim(A/I) × dim(A)`; column `j` is the image of `b_j`.
    pub projection: Matrix<F>,
    /// Basis indices of `A` whose images form the quotient basis.
    pub lifts: Vec<usize>,
}

impl<F: Field> Quotient<F> {
    pub fn project(&self, v: &[F::El]) -> Vec<F::El> {
        self.projection.mul_vec(v)
    }

    /// Lift of a quotient vector along the standard section.
    pub fn lift(&self, v: &[F::El]) -> Vec<F::El> {
        let f = self.algebra.field();
        let mut out = zero_vec(f, self.projection.cols());
        for (c, &i) in v.iter().zip(&self.lifts) {
            out[i] = c.clone();
        }
        out
    }
}

/// A subalgebra (possibly with a different unit, as for corners `eAe`) with its inclusion.
#[derive(Clone, Debug)]
pub struct SubAlgebra<F: Field> {
    pub algebra: FdAlgebra<F>,
    /// `dim(A) × dim(B)`; column `j` is the image of the `j`-th basis element.
    pub inclusion: Matrix<F>,
    pub subspace: Subspace<F>,
}

impl<F: Field> FdAlgebra<F> {
    pub fn new(
        field: F,
        dim: usize,
        table: Vec<SparseVec<F::El>>,
        unit: Vec<F::El>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroRing("algebra of dimension 0".into()));
        }
        check_len(table.len(), dim * dim, "structure-constant table")?;
        check_len(unit.len(), dim, "unit vector")?;
        if let Some(l) = &labels {
            check_len(l.len(), dim, "labels")?;
        }
        let mut clean = Vec::with_capacity(table.len());
        for row in table {
            let mut dense = zero_vec(field, dim);
            for (k, c) in row {
                if k >= dim {
                    return Err(Error::Dimension(format!("basis index {k} out of range (dim {dim})")));
                }
                dense[k] = field.add(&dense[k], &c);
            }
            clean.push(sparsify(field, &dense));
        }
        Ok(FdAlgebra { field, dim, table: clean, unit, labels })
    }

    /// Algebra whose basis products are given densely by `prod(i, j)`.
    pub fn from_products(
        field: F,
        dim: usize,
        mut prod: impl FnMut(usize, usize) -> Vec<F::El>,
        unit: Vec<F::El>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let mut table = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let p = prod(i, j);
                check_len(p.len(), dim, "basis product")?;
                table.push(sparsify(field, &p));
            }
        }
        Self::new(field, dim, table, unit, labels)
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[F::El] {
        &self.unit
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        check_len(labels.len(), self.dim, "labels")?;
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => format!("b{i}"),
        }
    }

    pub fn basis_elem(&self, i: usize) -> Vec<F::El> {
        unit_vec(self.field, self.dim, i)
    }

    pub fn zero_elem(&self) -> Vec<F::El> {
        zero_vec(self.field, self.dim)
    }

    /// Structure constants of `b_i b_j`.
    pub fn structure(&self, i: usize, j: usize) -> &[(usize, F::El)] {
        &self.table[i * self.dim + j]
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Vec<F::El> {
        let mut out = self.zero_elem();
        for (k, c) in self.structure(i, j) {
            out[*k] = c.clone();
        }
        out
    }

    /// Bilinear product of coordinate vectors.
    pub fn multiply(&self, u: &[F::El], v: &[F::El]) -> Result<Vec<F::El>> {
        check_len(u.len(), self.dim, "left factor")?;
        check_len(v.len(), self.dim, "right factor")?;
        Ok(self.mul(u, v))
    }

    /// Product without length checks (callers guarantee shapes).
    pub fn mul(&self, u: &[F::El], v: &[F::El]) -> Vec<F::El> {
        let f = self.field;
        let mut out = self.zero_elem();
        for (i, a) in u.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if f.is_zero(b) {
                    continue;
                }
                let ab = f.mul(a, b);
                for (k, c) in &self.table[i * self.dim + j] {
                    f.add_mul_assign(&mut out[*k], &ab, c);
                }
            }
        }
        out
    }

    pub fn add(&self, u: &[F::El], v: &[F::El]) -> Vec<F::El> {
        u.iter().zip(v).map(|(a, b)| self.field.add(a, b)).collect()
    }

    pub fn sub(&self, u: &[F::El], v: &[F::El]) -> Vec<F::El> {
        u.iter().zip(v).map(|(a, b)| self.field.sub(a, b)).collect()
    }

    pub fn scale(&self, c: &F::El, u: &[F::El]) -> Vec<F::El> {
        u.iter().map(|a| self.field.mul(c, a)).collect()
    }

    pub fn is_zero(&self, u: &[F::El]) -> bool {
        is_zero_vec(self.field, u)
    }

    pub fn is_idempotent(&self, e: &[F::El]) -> bool {
        self.mul(e, e) == e
    }

    pub fn pow(&self, u: &[F::El], k: usize) -> Vec<F::El> {
        let mut acc = self.unit.clone();
        for _ in 0..k {
            acc = self.mul(&acc, u);
        }
        acc
    }

    pub fn validate(&self) -> AlgebraReport {
        let mut report = AlgebraReport::default();
        for i in 0..self.dim {
            let b = self.basis_elem(i);
            if self.mul(&self.unit, &b) != b || self.mul(&b, &self.unit) != b {
                report.unit_failures.push(i);
            }
        }
        // (b_i b_j) b_k versus b_i (b_j b_k), using the sparse table directly
        let f = self.field;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ij = self.structure(i, j);
                for k in 0..self.dim {
                    let mut lhs = self.zero_elem();
                    for (m, c) in ij {
                        for (t, d) in self.structure(*m, k) {
                            f.add_mul_assign(&mut lhs[*t], c, d);
                        }
                    }
                    let mut rhs = self.zero_elem();
                    for (m, c) in self.structure(j, k) {
                        for (t, d) in self.structure(i, *m) {
                            f.add_mul_assign(&mut rhs[*t], c, d);
                        }
                    }
                    if lhs != rhs {
                        report.associativity_failures.push((i, j, k));
                    }
                }
            }
        }
        report
    }

    /// Matrix of `v ↦ a·v`.
    pub fn left_mult_matrix(&self, a: &[F::El]) -> Matrix<F> {
        let cols: Vec<Vec<F::El>> = (0..self.dim).map(|j| self.mul(a, &self.basis_elem(j))).collect();
        Matrix::from_cols(self.field, self.dim, &cols)
    }

    /// Matrix of `v ↦ v·a`.
    pub fn right_mult_matrix(&self, a: &[F::El]) -> Matrix<F> {
        let cols: Vec<Vec<F::El>> = (0..self.dim).map(|j| self.mul(&self.basis_elem(j), a)).collect();
        Matrix::from_cols(self.field, self.dim, &cols)
    }

    fn check_radical_guard(&self) -> Result<()> {
        let p = self.field.characteristic();
        if p != 0 && p as usize <= self.dim {
            return Err(Error::InvalidField(format!(
                "radical needs characteristic 0 or p > dim; got p = {p}, dim = {}",
                self.dim
            )));
        }
        Ok(())
    }

    /// Jacobson radical, as the kernel of the trace form `(a, b) ↦ tr(L_{ab})`.
    pub fn radical(&self) -> Result<Subspace<F>> {
        self.check_radical_guard()?;
        let f = self.field;
        let d = self.dim;
        // t_k = tr(L_{b_k}) = Σ_m c_{km}^m
        let traces: Vec<F::El> = (0..d)
            .map(|k| {
                let mut t = f.zero();
                for m in 0..d {
                    for (idx, c) in self.structure(k, m) {
                        if *idx == m {
                            t = f.add(&t, c);
                        }
                    }
                }
                t
            })
            .collect();
        let gram = Matrix::from_fn(f, d, d, |i, j| {
            let mut s = f.zero();
            for (k, c) in self.structure(i, j) {
                f.add_mul_assign(&mut s, c, &traces[*k]);
            }
            s
        });
        Ok(Subspace::span(f, d, gram.nullspace()))
    }

    pub fn is_semisimple(&self) -> Result<bool> {
        Ok(self.radical()?.is_zero())
    }

    /// Span of all products `u·v` with `u ∈ U`, `v ∈ V`.
    pub fn product_space(&self, u: &Subspace<F>, v: &Subspace<F>) -> Subspace<F> {
        let mut ech = Echelon::new(self.field, self.dim);
        'outer: for a in u.basis() {
            for b in v.basis() {
                ech.insert(self.mul(a, b));
                if ech.is_full() {
                    break 'outer;
                }
            }
        }
        ech.into_subspace()
    }

    /// `U^k` (with `U^0 = A`).
    pub fn power_space(&self, u: &Subspace<F>, k: usize) -> Subspace<F> {
        let mut acc = Subspace::full(self.field, self.dim);
        for _ in 0..k {
            acc = self.product_space(&acc, u);
        }
        acc
    }

    pub fn full_space(&self) -> Subspace<F> {
        Subspace::full(self.field, self.dim)
    }

    pub fn zero_space(&self) -> Subspace<F> {
        Subspace::zero(self.field, self.dim)
    }

    pub fn span(&self, elems: impl IntoIterator<Item = Vec<F::El>>) -> Subspace<F> {
        Subspace::span(self.field, self.dim, elems)
    }

    /// Two-sided ideal generated by the given elements.
    pub fn ideal_generated(&self, elems: &[Vec<F::El>]) -> Subspace<F> {
        let mut ech = Echelon::new(self.field, self.dim);
        for x in elems {
            for i in 0..self.dim {
                let bx = self.mul(&self.basis_elem(i), x);
                for j in 0..self.dim {
                    ech.insert(self.mul(&bx, &self.basis_elem(j)));
                }
            }
        }
        ech.into_subspace()
    }

    /// Left ideal `A·x_1 + … + A·x_r`.
    pub fn left_ideal_generated(&self, elems: &[Vec<F::El>]) -> Subspace<F> {
        let mut ech = Echelon::new(self.field, self.dim);
        for x in elems {
            for i in 0..self.dim {
                ech.insert(self.mul(&self.basis_elem(i), x));
            }
        }
        ech.into_subspace()
    }

    /// Smallest subalgebra containing the unit and the given elements.
    pub fn subring_generated(&self, elems: &[Vec<F::El>]) -> Subspace<F> {
        let mut ech = Echelon::new(self.field, self.dim);
        ech.insert(self.unit.clone());
        for x in elems {
            ech.insert(x.clone());
        }
        loop {
            let current = ech.clone().into_subspace();
            let mut grew = false;
            for a in current.basis() {
                for b in current.basis() {
                    grew |= ech.insert(self.mul(a, b));
                }
            }
            if !grew {
                return ech.into_subspace();
            }
        }
    }

    pub fn is_left_ideal(&self, s: &Subspace<F>) -> bool {
        s.basis()
            .iter()
            .all(|r| (0..self.dim).all(|i| s.contains(&self.mul(&self.basis_elem(i), r))))
    }

    pub fn is_right_ideal(&self, s: &Subspace<F>) -> bool {
        s.basis()
            .iter()
            .all(|r| (0..self.dim).all(|i| s.contains(&self.mul(r, &self.basis_elem(i)))))
    }

    pub fn is_ideal(&self, s: &Subspace<F>) -> bool {
        self.is_left_ideal(s) && self.is_right_ideal(s)
    }

    /// Closed under multiplication (no unit requirement).
    pub fn is_closed(&self, s: &Subspace<F>) -> bool {
        s.basis().iter().all(|a| s.basis().iter().all(|b| s.contains(&self.mul(a, b))))
    }

    /// Unital subalgebra: contains 1 and is closed under multiplication.
    pub fn is_subring(&self, s: &Subspace<F>) -> bool {
        s.contains(&self.unit) && self.is_closed(s)
    }

    pub fn quotient(&self, ideal: &Subspace<F>) -> Result<Quotient<F>> {
        check_len(ideal.ambient(), self.dim, "ideal ambient")?;
        if !self.is_ideal(ideal) {
            return Err(Error::NotIdeal("subspace is not a two-sided ideal".into()));
        }
        if ideal.is_full() {
            return Err(Error::ZeroRing("quotient by the whole algebra".into()));
        }
        let f = self.field;
        let lifts = ideal.non_pivots();
        let q = lifts.len();
        let project = |v: &[F::El]| -> Vec<F::El> {
            let r = reduce_mod(ideal, v);
            lifts.iter().map(|&c| r[c].clone()).collect()
        };
        let projection = Matrix::from_cols(
            f,
            q,
            &(0..self.dim).map(|j| project(&self.basis_elem(j))).collect::<Vec<_>>(),
        );
        let labels = self.labels.as_ref().map(|l| lifts.iter().map(|&c| l[c].clone()).collect());
        let algebra = FdAlgebra::from_products(
            f,
            q,
            |a, b| project(&self.basis_product(lifts[a], lifts[b])),
            project(&self.unit),
            labels,
        )?;
        Ok(Quotient { algebra, projection, lifts })
    }

    pub fn center(&self) -> Subspace<F> {
        let d = self.dim;
        let mut ech = Echelon::new(self.field, d);
        // row per (j, output coordinate): Σ_i z_i ([b_i, b_j])_t = 0
        for j in 0..d {
            let comms: Vec<Vec<F::El>> = (0..d)
                .map(|i| self.sub(&self.basis_product(i, j), &self.basis_product(j, i)))
                .collect();
            for t in 0..d {
                let row: Vec<F::El> = comms.iter().map(|c| c[t].clone()).collect();
                ech.insert(row);
            }
        }
        Subspace::span(self.field, d, ech.kernel_basis())
    }

    /// `e·A·f = span{e b f}`.
    pub fn corner(&self, e: &[F::El], f: &[F::El]) -> Result<Subspace<F>> {
        check_len(e.len(), self.dim, "idempotent")?;
        check_len(f.len(), self.dim, "idempotent")?;
        if !self.is_idempotent(e) || !self.is_idempotent(f) {
            return Err(Error::Invalid("corner requires idempotents".into()));
        }
        Ok(self.corner_unchecked(e, f))
    }

    pub fn corner_unchecked(&self, e: &[F::El], f: &[F::El]) -> Subspace<F> {
        let mut ech = Echelon::new(self.field, self.dim);
        for i in 0..self.dim {
            let eb = self.mul(e, &self.basis_elem(i));
            ech.insert(self.mul(&eb, f));
        }
        ech.into_subspace()
    }

    /// Algebra structure on a multiplicatively closed subspace whose identity is `unit`.
    pub fn subalgebra(&self, s: &Subspace<F>, unit: &[F::El]) -> Result<SubAlgebra<F>> {
        let unit_coords = s
            .coordinates(unit)
            .ok_or_else(|| Error::Invalid("unit not in subspace".into()))?;
        let basis = s.basis();
        let mut err = None;
        let algebra = FdAlgebra::from_products(
            self.field,
            s.dim(),
            |a, b| match s.coordinates(&self.mul(&basis[a], &basis[b])) {
                Some(c) => c,
                None => {
                    err = Some(Error::Invalid("subspace not closed under multiplication".into()));
                    zero_vec(self.field, s.dim())
                }
            },
            unit_coords,
            None,
        )?;
        if let Some(e) = err {
            return Err(e);
        }
        if !algebra.validate().unit_failures.is_empty() {
            return Err(Error::Invalid("given element is not an identity of the subspace".into()));
        }
        let inclusion = Matrix::from_cols(self.field, self.dim, basis);
        Ok(SubAlgebra { algebra, inclusion, subspace: s.clone() })
    }

    /// `S / I` for a subalgebra `S` with identity `unit` and an ideal `I ⊆ S` of `S`.
    pub fn subquotient(&self, s: &Subspace<F>, unit: &[F::El], ideal: &Subspace<F>) -> Result<FdAlgebra<F>> {
        let sub = self.subalgebra(s, unit)?;
        let coords = ideal
            .basis()
            .iter()
            .map(|v| s.coordinates(v).ok_or_else(|| Error::Invalid("ideal not inside the subalgebra".into())))
            .collect::<Result<Vec<_>>>()?;
        let inner = Subspace::span(self.field, s.dim(), coords);
        Ok(sub.algebra.quotient(&inner)?.algebra)
    }

    /// The corner algebra `eAe` with identity `e`.
    pub fn corner_algebra(&self, e: &[F::El]) -> Result<SubAlgebra<F>> {
        let s = self.corner(e, e)?;
        self.subalgebra(&s, e)
    }

    /// Direct product `A × B` (basis of `A` first).
    pub fn product(&self, other: &FdAlgebra<F>) -> Result<FdAlgebra<F>> {
        let (d1, d2) = (self.dim, other.dim);
        let mut table = Vec::with_capacity((d1 + d2) * (d1 + d2));
        for i in 0..d1 + d2 {
            for j in 0..d1 + d2 {
                let row = if i < d1 && j < d1 {
                    self.structure(i, j).to_vec()
                } else if i >= d1 && j >= d1 {
                    other.structure(i - d1, j - d1).iter().map(|(k, c)| (k + d1, c.clone())).collect()
                } else {
                    Vec::new()
                };
                table.push(row);
            }
        }
        let mut unit = self.unit.clone();
        unit.extend(other.unit.iter().cloned());
        let labels = match (&self.labels, &other.labels) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).cloned().collect()),
            _ => None,
        };
        FdAlgebra::new(self.field, d1 + d2, table, unit, labels)
    }

    /// Same algebra with a permuted/changed basis: `new_basis[k]` is the coordinate
    /// vector (old basis) of the k-th new basis element.
    pub fn change_basis(&self, new_basis: &[Vec<F::El>]) -> Result<FdAlgebra<F>> {
        let d = self.dim;
        check_len(new_basis.len(), d, "new basis")?;
        let p = Matrix::from_cols(self.field, d, new_basis);
        let pinv = p
            .inverse()
            .ok_or_else(|| Error::Invalid("change of basis is singular".into()))?;
        FdAlgebra::from_products(
            self.field,
            d,
            |a, b| pinv.mul_vec(&self.mul(&new_basis[a], &new_basis[b])),
            pinv.mul_vec(&self.unit),
            None,
        )
    }

    /// Nilpotency index of a subspace under products, if at most `dim + 1`.
    pub fn nilpotency_index(&self, s: &Subspace<F>) -> Option<usize> {
        let mut acc = s.clone();
        for k in 1..=self.dim + 1 {
            if acc.is_zero() {
                return Some(k - 1);
            }
            acc = self.product_space(&acc, s);
        }
        if acc.is_zero() {
            Some(self.dim + 1)
        } else {
            None
        }
    }

    /// Trace of left multiplication by `a`.
    pub fn trace_left(&self, a: &[F::El]) -> F::El {
        let f = self.field;
        let mut t = f.zero();
        for (i, x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for m in 0..self.dim {
                for (k, c) in self.structure(i, m) {
                    if *k == m {
                        f.add_mul_assign(&mut t, x, c);
                    }
                }
            }
        }
        t
    }
}

pub fn sparsify<F: Field>(field: F, v: &[F::El]) -> SparseVec<F::El> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !field.is_zero(c))
        .map(|(k, c)| (k, c.clone()))
        .collect()
}

/// Small algebras used throughout tests and the corpus.
pub mod presets {
    use super::*;

    /// The ground field as a 1-dimensional algebra.
    pub fn ground<F: Field>(field: F) -> FdAlgebra<F> {
        truncated_poly(field, 1)
    }

    /// `k[x]/(x^n)` with basis `1, x, …, x^{n-1}`.
    pub fn truncated_poly<F: Field>(field: F, n: usize) -> FdAlgebra<F> {
        let labels = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        FdAlgebra::from_products(
            field,
            n,
            |i, j| {
                if i + j < n {
                    unit_vec(field, n, i + j)
                } else {
                    zero_vec(field, n)
                }
            },
            unit_vec(field, n, 0),
            Some(labels),
        )
        .expect("well-formed preset")
    }

    /// Full matrix algebra `M_n(k)` with matrix units `E_ij` in row-major order.
    pub fn full_matrix<F: Field>(field: F, n: usize) -> FdAlgebra<F> {
        let d = n * n;
        let mut unit = zero_vec(field, d);
        for i in 0..n {
            unit[i * n + i] = field.one();
        }
        let labels = (0..d).map(|k| format!("E{}{}", k / n + 1, k % n + 1)).collect();
        FdAlgebra::from_products(
            field,
            d,
            |a, b| {
                let (i, j) = (a / n, a % n);
                let (k, l) = (b / n, b % n);
                if j == k {
                    unit_vec(field, d, i * n + l)
                } else {
                    zero_vec(field, d)
                }
            },
            unit,
            Some(labels),
        )
        .expect("well-formed preset")
    }

    /// Lower-triangular `n × n` matrices over `k`, basis `E_ij` (i ≥ j) row-major.
    pub fn lower_triangular<F: Field>(field: F, n: usize) -> FdAlgebra<F> {
        let pos: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..=i).map(move |j| (i, j))).collect();
        let d = pos.len();
        let index = |i: usize, j: usize| pos.iter().position(|&p| p == (i, j));
        let mut unit = zero_vec(field, d);
        for i in 0..n {
            unit[index(i, i).expect("diagonal")] = field.one();
        }
        let labels = pos.iter().map(|(i, j)| format!("E{}{}", i + 1, j + 1)).collect();
        FdAlgebra::from_products(
            field,
            d,
            |a, b| {
                let (i, j) = pos[a];
                let (k, l) = pos[b];
                if j == k {
                    unit_vec(field, d, index(i, l).expect("lower"))
                } else {
                    zero_vec(field, d)
                }
            },
            unit,
            Some(labels),
        )
        .expect("well-formed preset")
    }

    /// `k × k × … × k` (`n` copies), basis the primitive idempotents.
    pub fn product_of_fields<F: Field>(field: F, n: usize) -> FdAlgebra<F> {
        let labels = (0..n).map(|i| format!("e{}", i + 1)).collect();
        FdAlgebra::from_products(
            field,
            n,
            |i, j| if i == j { unit_vec(field, n, i) } else { zero_vec(field, n) },
            vec![field.one(); n],
            Some(labels),
        )
        .expect("well-formed preset")
    }
}

#[cfg(test)]
mod tests {
    use super::presets::*;
    use super::*;
    use crate::field::{PrimeField, Rat, Rationals};

    #[test]
    fn presets_are_valid() {
        let f = Rationals;
        for a in [ground(f), truncated_poly(f, 4), full_matrix(f, 2), lower_triangular(f, 3), product_of_fields(f, 3)] {
            assert!(a.validate().is_valid());
        }
    }

    #[test]
    fn wrong_unit_reported() {
        let f = Rationals;
        let a = FdAlgebra::from_products(
            f,
            2,
            |i, j| if i == 1 && j == 1 { vec![Rat::zero(), Rat::one()] } else { vec![Rat::zero(), Rat::zero()] },
            vec![Rat::zero(), Rat::one()],
            None,
        )
        .unwrap();
        assert!(!a.validate().unit_failures.is_empty());
    }

    #[test]
    fn radical_examples() {
        let f = Rationals;
        assert_eq!(truncated_poly(f, 2).radical().unwrap().dim(), 1);
        assert!(full_matrix(f, 2).radical().unwrap().is_zero());
        let lt = lower_triangular(f, 2);
        let r = lt.radical().unwrap();
        assert_eq!(r.dim(), 1);
        assert!(r.contains(&lt.basis_elem(1)));
        let small = PrimeField::new(2).unwrap();
        assert!(truncated_poly(small, 3).radical().is_err());
    }

    #[test]
    fn quotient_truncation() {
        let f = Rationals;
        let a = truncated_poly(f, 3);
        let i = a.span(vec![a.basis_elem(2)]);
        let q = a.quotient(&i).unwrap();
        assert_eq!(q.algebra.dim(), 2);
        assert!(q.algebra.is_zero(&q.algebra.mul(&q.algebra.basis_elem(1), &q.algebra.basis_elem(1))));
        assert!(a.quotient(&a.full_space()).is_err());
        let bad = a.span(vec![a.unit().to_vec()]);
        assert!(a.quotient(&bad).is_err());
    }

    #[test]
    fn centers() {
        let f = Rationals;
        assert_eq!(truncated_poly(f, 3).center().dim(), 3);
        assert_eq!(full_matrix(f, 2).center().dim(), 1);
        assert_eq!(lower_triangular(f, 2).center().dim(), 1);
    }

    #[test]
    fn matrix_unit_product() {
        let f = Rationals;
        let m = full_matrix(f, 2);
        assert_eq!(m.multiply(&m.basis_elem(0), &m.basis_elem(1)).unwrap(), m.basis_elem(1));
        assert!(m.multiply(&m.basis_elem(0), &[Rat::one()]).is_err());
    }
}
