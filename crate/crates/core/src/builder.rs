//! Matrix-shaped rings over a base algebra: the rings Λ, Σ and M_n(A), general block
//! extensions and tiled triangular rings.
//!
//! Every ring here is a subquotient of `M_N(A)`: position `(i, j)` holds `num/den` for
//! subspaces `den ⊆ num ⊆ A`. The basis is row-major over positions; inside a position
//! it is the reduced echelon basis of `num` reduced modulo `den`.

use std::collections::BTreeMap;
use std::ops::Range;

use crate::algebra::FdAlgebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{reduce_mod, unit_vec, zero_vec, Matrix, Subspace};

/// One matrix position: the subquotient `num / den` of the base algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry<F: Field> {
    pub num: Subspace<F>,
    pub den: Option<Subspace<F>>,
}

impl<F: Field> Entry<F> {
    pub fn plain(num: Subspace<F>) -> Self {
        Entry { num, den: None }
    }

    pub fn quotient(num: Subspace<F>, den: Subspace<F>) -> Self {
        Entry { num, den: Some(den) }
    }

    pub fn zero(field: F, ambient: usize) -> Self {
        Entry { num: Subspace::zero(field, ambient), den: None }
    }

    fn reduce(&self, v: &[F::El]) -> Vec<F::El> {
        match &self.den {
            Some(d) => reduce_mod(d, v),
            None => v.to_vec(),
        }
    }
}

/// Basis data of one position of a built ring.
#[derive(Clone, Debug)]
pub struct EntryBasis<F: Field> {
    pub entry: Entry<F>,
    /// Representatives in `A`-coordinates, one per basis element of this position.
    pub reps: Subspace<F>,
}

impl<F: Field> EntryBasis<F> {
    pub fn dim(&self) -> usize {
        self.reps.dim()
    }

    /// Coordinates of the class of `v ∈ num` in this position's basis.
    pub fn coordinates(&self, v: &[F::El]) -> Option<Vec<F::El>> {
        if !self.entry.num.contains(v) {
            return None;
        }
        self.reps.coordinates(&self.entry.reduce(v))
    }
}

/// A ring of matrices over `base` together with its position idempotents.
#[derive(Clone, Debug)]
pub struct BuiltRing<F: Field> {
    pub algebra: FdAlgebra<F>,
    pub base: FdAlgebra<F>,
    pub n: usize,
    /// `E_ii(1_i)` for each position `i`, where `1_i` is the identity of entry `(i, i)`.
    pub idems: Vec<Vec<F::El>>,
    entries: Vec<EntryBasis<F>>,
    offsets: Vec<usize>,
}

impl<F: Field> BuiltRing<F> {
    pub fn field(&self) -> F {
        self.algebra.field()
    }

    pub fn entry(&self, i: usize, j: usize) -> &EntryBasis<F> {
        &self.entries[i * self.n + j]
    }

    pub fn entry_dim(&self, i: usize, j: usize) -> usize {
        self.entry(i, j).dim()
    }

    pub fn entry_range(&self, i: usize, j: usize) -> Range<usize> {
        let k = i * self.n + j;
        self.offsets[k]..self.offsets[k + 1]
    }

    /// Position `(i, j)` of the basis element with index `b`.
    pub fn position_of(&self, b: usize) -> (usize, usize) {
        let k = self.offsets.partition_point(|&o| o <= b) - 1;
        (k / self.n, k % self.n)
    }

    /// Ring element with `a` at position `(i, j)` and zeros elsewhere.
    pub fn element_at(&self, i: usize, j: usize, a: &[F::El]) -> Option<Vec<F::El>> {
        let coords = self.entry(i, j).coordinates(a)?;
        let mut v = zero_vec(self.field(), self.algebra.dim());
        for (t, c) in self.entry_range(i, j).zip(coords) {
            v[t] = c;
        }
        Some(v)
    }

    /// The `(i, j)` component of `x` as an element of `A` (a representative for quotients).
    pub fn component(&self, x: &[F::El], i: usize, j: usize) -> Vec<F::El> {
        let eb = self.entry(i, j);
        eb.reps.combine(&x[self.entry_range(i, j)])
    }

    /// Subspace of the ring spanned by the basis elements of position `(i, j)`.
    pub fn position_space(&self, i: usize, j: usize) -> Subspace<F> {
        let d = self.algebra.dim();
        Subspace::span(self.field(), d, self.entry_range(i, j).map(|t| unit_vec(self.field(), d, t)))
    }

    /// Positions where `e_i R e_j` differs from the declared entry.
    pub fn entry_mismatches(&self) -> Vec<(usize, usize)> {
        let mut bad = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                let corner = self.algebra.corner_unchecked(&self.idems[i], &self.idems[j]);
                if corner != self.position_space(i, j) {
                    bad.push((i, j));
                }
            }
        }
        bad
    }

    /// Matrix (`dim other × dim self`) of the position-preserving map into `other`,
    /// defined when every entry of `self` is a plain subspace of the corresponding entry of `other`.
    pub fn inclusion_into(&self, other: &BuiltRing<F>) -> Result<Matrix<F>> {
        if self.n != other.n || self.base.dim() != other.base.dim() {
            return Err(Error::Dimension("rings have different shapes".into()));
        }
        let mut cols = Vec::with_capacity(self.algebra.dim());
        for i in 0..self.n {
            for j in 0..self.n {
                for rep in self.entry(i, j).reps.basis() {
                    let v = other
                        .element_at(i, j, rep)
                        .ok_or_else(|| Error::Invalid(format!("entry ({}, {}) not contained", i + 1, j + 1)))?;
                    cols.push(v);
                }
            }
        }
        Ok(Matrix::from_cols(self.field(), other.algebra.dim(), &cols))
    }

    /// Dimensions of all entries, row by row.
    pub fn entry_dims(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.entry_dim(i, j)).collect()).collect()
    }
}

/// Builds the ring of `n × n` matrices with the given entries (row-major).
pub fn build_matrix_ring<F: Field>(base: &FdAlgebra<F>, n: usize, entries: Vec<Entry<F>>) -> Result<BuiltRing<F>> {
    build_matrix_ring_with_units(base, n, entries, &vec![base.unit().to_vec(); n])
}

/// As [`build_matrix_ring`], with diagonal position `i` having identity `diag_units[i]`
/// (an idempotent of `A`) instead of `1`.
pub fn build_matrix_ring_with_units<F: Field>(
    base: &FdAlgebra<F>,
    n: usize,
    entries: Vec<Entry<F>>,
    diag_units: &[Vec<F::El>],
) -> Result<BuiltRing<F>> {
    let f = base.field();
    if diag_units.len() != n {
        return Err(Error::Dimension(format!("expected {n} diagonal units, got {}", diag_units.len())));
    }
    let d = base.dim();
    if entries.len() != n * n {
        return Err(Error::Dimension(format!("expected {} entries, got {}", n * n, entries.len())));
    }
    let mut bases = Vec::with_capacity(n * n);
    for (k, e) in entries.into_iter().enumerate() {
        if e.num.ambient() != d {
            return Err(Error::Dimension(format!("entry ({}, {}) lives in the wrong algebra", k / n + 1, k % n + 1)));
        }
        if let Some(den) = &e.den {
            if !den.is_subspace_of(&e.num) {
                return Err(Error::Invalid(format!(
                    "entry ({}, {}): denominator not contained in numerator",
                    k / n + 1,
                    k % n + 1
                )));
            }
        }
        let reps = Subspace::span(f, d, e.num.basis().iter().map(|v| e.reduce(v)));
        bases.push(EntryBasis { entry: e, reps });
    }
    let mut offsets = vec![0];
    for b in &bases {
        offsets.push(offsets.last().expect("nonempty") + b.dim());
    }
    let dim = *offsets.last().expect("nonempty");
    if dim == 0 {
        return Err(Error::ZeroRing("all entries are zero".into()));
    }
    check_compatibility(base, n, &bases)?;

    // global basis: (position, representative)
    let mut owner = Vec::with_capacity(dim);
    for (k, b) in bases.iter().enumerate() {
        for r in b.reps.basis() {
            owner.push((k / n, k % n, r.clone()));
        }
    }
    let mut unit = zero_vec(f, dim);
    let mut idems = Vec::with_capacity(n);
    for i in 0..n {
        let b = &bases[i * n + i];
        let one = b.coordinates(&diag_units[i]).ok_or_else(|| {
            Error::ZeroRing(format!("diagonal entry ({}, {}) does not contain the identity", i + 1, i + 1))
        })?;
        if b.dim() == 0 {
            return Err(Error::ZeroRing(format!("diagonal entry ({}, {}) is the zero ring", i + 1, i + 1)));
        }
        let mut e = zero_vec(f, dim);
        for (t, c) in (offsets[i * n + i]..offsets[i * n + i + 1]).zip(one) {
            unit[t] = c.clone();
            e[t] = c;
        }
        idems.push(e);
    }
    let mut failure = None;
    let labels = owner
        .iter()
        .map(|(i, j, r)| {
            let name = match r.iter().position(|x| !f.is_zero(x)) {
                Some(k) if *r == unit_vec(f, d, k) => base.label(k),
                _ => "v".to_string(),
            };
            format!("{}{}:{}", i + 1, j + 1, name)
        })
        .collect();
    let algebra = FdAlgebra::from_products(
        f,
        dim,
        |a, b| {
            let (i, j, x) = &owner[a];
            let (k, l, y) = &owner[b];
            let mut out = zero_vec(f, dim);
            if j != k {
                return out;
            }
            let xy = base.mul(x, y);
            let target = &bases[i * n + l];
            match target.coordinates(&xy) {
                Some(c) => {
                    for (t, v) in (offsets[i * n + l]..offsets[i * n + l + 1]).zip(c) {
                        out[t] = v;
                    }
                }
                None => {
                    failure.get_or_insert(Error::Invalid(format!(
                        "not closed: product of entries ({}, {}) and ({}, {}) leaves entry ({}, {})",
                        i + 1,
                        j + 1,
                        k + 1,
                        l + 1,
                        i + 1,
                        l + 1
                    )));
                }
            }
            out
        },
        unit,
        Some(labels),
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    // labels with duplicated names are made unique by index
    let labels: Vec<String> = algebra.labels().expect("set above").to_vec();
    let mut seen = std::collections::HashMap::new();
    let labels = labels
        .into_iter()
        .map(|l| {
            let c = seen.entry(l.clone()).or_insert(0usize);
            *c += 1;
            if *c == 1 {
                l
            } else {
                format!("{l}#{c}")
            }
        })
        .collect();
    let algebra = algebra.with_labels(labels)?;
    Ok(BuiltRing { algebra, base: base.clone(), n, idems, entries: bases, offsets })
}

/// Products of numerators must land in the target numerator, and must respect denominators.
fn check_compatibility<F: Field>(base: &FdAlgebra<F>, n: usize, bases: &[EntryBasis<F>]) -> Result<()> {
    let f = base.field();
    let d = base.dim();
    let zero = Subspace::zero(f, d);
    for i in 0..n {
        for j in 0..n {
            let a = &bases[i * n + j].entry;
            if a.num.is_zero() {
                continue;
            }
            for l in 0..n {
                let b = &bases[j * n + l].entry;
                if b.num.is_zero() {
                    continue;
                }
                let target = &bases[i * n + l].entry;
                let prod = base.product_space(&a.num, &b.num);
                let pos = |x: usize, y: usize| format!("({}, {})", x + 1, y + 1);
                if !prod.is_subspace_of(&target.num) {
                    return Err(Error::Invalid(format!(
                        "not closed: entries {} · {} ⊄ entry {}",
                        pos(i, j),
                        pos(j, l),
                        pos(i, l)
                    )));
                }
                let tden = target.den.as_ref().unwrap_or(&zero);
                if let Some(ad) = &a.den {
                    if !base.product_space(ad, &b.num).is_subspace_of(tden) {
                        return Err(Error::Invalid(format!(
                            "multiplication not well defined on quotients: {} · {} → {}",
                            pos(i, j),
                            pos(j, l),
                            pos(i, l)
                        )));
                    }
                }
                if let Some(bd) = &b.den {
                    if !base.product_space(&a.num, bd).is_subspace_of(tden) {
                        return Err(Error::Invalid(format!(
                            "multiplication not well defined on quotients: {} · {} → {}",
                            pos(i, j),
                            pos(j, l),
                            pos(i, l)
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Named pass/fail conditions of a specification.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub failures: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }

    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }
}

/// Data defining Λ and Σ: subrings `A_2..A_n`, ideals `I_2..I_n` and `I_ij` (`2 ≤ j < i ≤ n`).
/// All indices in the accessors are 1-based, as in the matrix displays.
#[derive(Clone, Debug)]
pub struct LambdaSpec<F: Field> {
    pub base: FdAlgebra<F>,
    pub n: usize,
    pub subrings: Vec<Subspace<F>>,
    pub ideals: Vec<Subspace<F>>,
    pub ideals_ij: BTreeMap<(usize, usize), Subspace<F>>,
}

impl<F: Field> LambdaSpec<F> {
    /// Spec with every `A_i = A` and every `I_ij = I_j`, to be adjusted by the caller.
    pub fn new(base: FdAlgebra<F>, ideals: Vec<Subspace<F>>) -> Result<Self> {
        let n = ideals.len() + 1;
        if n < 2 {
            return Err(Error::Invalid("need n ≥ 2".into()));
        }
        let full = base.full_space();
        let mut ideals_ij = BTreeMap::new();
        for i in 3..=n {
            for j in 2..i {
                ideals_ij.insert((i, j), ideals[j - 2].clone());
            }
        }
        Ok(LambdaSpec { subrings: vec![full; n - 1], base, n, ideals, ideals_ij })
    }

    pub fn a(&self, i: usize) -> &Subspace<F> {
        &self.subrings[i - 2]
    }

    pub fn ideal(&self, i: usize) -> &Subspace<F> {
        &self.ideals[i - 2]
    }

    pub fn ideal_ij(&self, i: usize, j: usize) -> &Subspace<F> {
        &self.ideals_ij[&(i, j)]
    }

    pub fn set_subring(&mut self, i: usize, s: Subspace<F>) {
        self.subrings[i - 2] = s;
    }

    pub fn set_ideal_ij(&mut self, i: usize, j: usize, s: Subspace<F>) {
        self.ideals_ij.insert((i, j), s);
    }

    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::default();
        let a = &self.base;
        let d = a.dim();
        let shape_ok = self.n >= 2
            && self.subrings.len() == self.n - 1
            && self.ideals.len() == self.n - 1
            && (3..=self.n).all(|i| (2..i).all(|j| self.ideals_ij.contains_key(&(i, j))))
            && self.subrings.iter().chain(&self.ideals).chain(self.ideals_ij.values()).all(|s| s.ambient() == d);
        if !shape_ok {
            r.failures.push("shape: subspace lists do not match n or the base algebra".into());
            return r;
        }
        for i in 2..=self.n {
            r.require(a.is_subring(self.a(i)), || format!("subring: A_{i} is not a unital subring of A"));
            r.require(a.is_ideal(self.ideal(i)), || format!("ideal: I_{i} is not a two-sided ideal of A"));
            r.require(self.ideal(i).is_subspace_of(self.a(i)), || format!("containment: I_{i} ⊆ A_{i}"));
            if i > 2 {
                r.require(self.ideal(i).is_subspace_of(self.ideal(i - 1)), || {
                    format!("chain: I_{i} ⊆ I_{}", i - 1)
                });
            }
        }
        for i in 3..=self.n {
            for j in 2..i {
                let iij = self.ideal_ij(i, j);
                r.require(a.is_ideal(iij), || format!("ideal: I_{i}{j} is not a two-sided ideal of A"));
                r.require(self.ideal(j).is_subspace_of(iij), || format!("containment: I_{j} ⊆ I_{i}{j}"));
                let mut sum = a.zero_space();
                for l in j + 1..i {
                    sum = sum.sum(&a.product_space(self.ideal_ij(i, l), self.ideal_ij(l, j)));
                }
                r.require(sum.is_subspace_of(iij), || format!("product: Σ_l I_{i}l·I_l{j} ⊆ I_{i}{j}"));
            }
        }
        r
    }

    fn ensure_valid(&self) -> Result<()> {
        let r = self.validate();
        if r.is_valid() {
            Ok(())
        } else {
            Err(Error::Invalid(r.failures.join("; ")))
        }
    }

    /// Entry of Λ at 1-based position `(i, j)`.
    pub fn lambda_entry(&self, i: usize, j: usize) -> Subspace<F> {
        let full = self.base.full_space();
        if j == 1 {
            full
        } else if j > i {
            self.ideal(j).clone()
        } else if i == j {
            self.a(i).clone()
        } else {
            self.ideal_ij(i, j).clone()
        }
    }
}

pub fn validate_lambda_spec<F: Field>(spec: &LambdaSpec<F>) -> ValidationReport {
    spec.validate()
}

pub fn build_lambda<F: Field>(spec: &LambdaSpec<F>) -> Result<BuiltRing<F>> {
    spec.ensure_valid()?;
    let n = spec.n;
    let entries = (1..=n)
        .flat_map(|i| (1..=n).map(move |j| (i, j)))
        .map(|(i, j)| Entry::plain(spec.lambda_entry(i, j)))
        .collect();
    build_matrix_ring(&spec.base, n, entries)
}

/// Σ: position `k` (1-based) stands for `L_{k+1}` when `k < n` and for `Λe_1` when `k = n`.
pub fn build_sigma<F: Field>(spec: &LambdaSpec<F>) -> Result<BuiltRing<F>> {
    spec.ensure_valid()?;
    let n = spec.n;
    let a = &spec.base;
    for i in 2..=n {
        if spec.a(i) == spec.ideal(i) {
            return Err(Error::ZeroRing(format!("A_{i} = I_{i} makes the diagonal entry A_{i}/I_{i} zero")));
        }
    }
    let mut entries = Vec::with_capacity(n * n);
    for r in 1..=n {
        for c in 1..=n {
            let e = if r == n && c == n {
                Entry::plain(a.full_space())
            } else if r == n {
                Entry::quotient(a.full_space(), spec.ideal(c + 1).clone())
            } else if c == n || c > r {
                Entry::zero(a.field(), a.dim())
            } else if c == r {
                Entry::quotient(spec.a(r + 1).clone(), spec.ideal(r + 1).clone())
            } else {
                Entry::quotient(spec.ideal_ij(r + 1, c + 1).clone(), spec.ideal(c + 1).clone())
            };
            entries.push(e);
        }
    }
    build_matrix_ring(a, n, entries)
}

/// `M_n(A)`.
pub fn build_full_matrix<F: Field>(base: &FdAlgebra<F>, n: usize) -> Result<BuiltRing<F>> {
    if n == 0 {
        return Err(Error::Invalid("n must be at least 1".into()));
    }
    build_matrix_ring(base, n, vec![Entry::plain(base.full_space()); n * n])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cor33Variant {
    /// `I_ij = I_j`: every column below the first repeats its ideal off the diagonal.
    RowPattern,
    /// `I_ij = A`: everything below the diagonal is `A`.
    LowerFull,
}

/// The two special shapes with `A_i = A`.
pub fn build_cor33_shape<F: Field>(
    base: &FdAlgebra<F>,
    ideals: Vec<Subspace<F>>,
    variant: Cor33Variant,
) -> Result<LambdaSpec<F>> {
    for (k, w) in ideals.windows(2).enumerate() {
        if !w[1].is_subspace_of(&w[0]) {
            return Err(Error::Invalid(format!("chain: I_{} ⊆ I_{}", k + 3, k + 2)));
        }
    }
    let mut spec = LambdaSpec::new(base.clone(), ideals)?;
    if variant == Cor33Variant::LowerFull {
        for v in spec.ideals_ij.values_mut() {
            *v = base.full_space();
        }
    }
    spec.ensure_valid()?;
    Ok(spec)
}

/// Case I data of one diagonal block (1-based indices as in the display; all subspaces of `A`
/// lying in `A_i = e_i A e_i`).
#[derive(Clone, Debug)]
pub struct BlockDiag<F: Field> {
    /// `B_i2..B_in`
    pub subrings: Vec<Subspace<F>>,
    /// `I_i2..I_in`
    pub ideals: Vec<Subspace<F>>,
    /// `I_ipq` for `2 ≤ q < p ≤ n_i`
    pub ideals_pq: BTreeMap<(usize, usize), Subspace<F>>,
}

#[derive(Clone, Debug)]
pub struct BlockExtensionSpec<F: Field> {
    pub base: FdAlgebra<F>,
    pub idems: Vec<Vec<F::El>>,
    pub sizes: Vec<usize>,
    pub diag: Vec<BlockDiag<F>>,
    /// Off-diagonal blocks `(i, s)`, `i ≠ s` (0-based), as `n_i × n_s` grids of subspaces
    /// of `e_i A e_s`. The first column must be `e_i A e_s`.
    pub off: BTreeMap<(usize, usize), Vec<Vec<Subspace<F>>>>,
    /// Require the rows of every case II block (`i < s`) to coincide.
    pub strict_case2: bool,
}

impl<F: Field> BlockExtensionSpec<F> {
    fn corner(&self, i: usize, s: usize) -> Subspace<F> {
        self.base.corner_unchecked(&self.idems[i], &self.idems[s])
    }

    /// The block extension of a basic algebra: diagonal blocks with `A_i` on and below the
    /// diagonal and `rad A_i` above it, off-diagonal blocks constant `e_i A e_s`.
    pub fn basic(base: FdAlgebra<F>, idems: Vec<Vec<F::El>>, sizes: Vec<usize>) -> Result<Self> {
        let rad = base.radical()?;
        let m = idems.len();
        let mut diag = Vec::with_capacity(m);
        for (i, e) in idems.iter().enumerate() {
            let ai = base.corner_unchecked(e, e);
            let rad_i = ai.intersection(&rad);
            let ni = sizes[i];
            let mut ideals_pq = BTreeMap::new();
            for p in 3..=ni {
                for q in 2..p {
                    ideals_pq.insert((p, q), ai.clone());
                }
            }
            diag.push(BlockDiag {
                subrings: vec![ai.clone(); ni.saturating_sub(1)],
                ideals: vec![rad_i; ni.saturating_sub(1)],
                ideals_pq,
            });
        }
        let mut spec = BlockExtensionSpec { base, idems, sizes, diag, off: BTreeMap::new(), strict_case2: true };
        spec.fill_constant_off();
        Ok(spec)
    }

    /// Sets every off-diagonal block to the constant grid `e_i A e_s`.
    pub fn fill_constant_off(&mut self) {
        let m = self.idems.len();
        for i in 0..m {
            for s in 0..m {
                if i != s {
                    let c = self.corner(i, s);
                    self.off.insert((i, s), vec![vec![c; self.sizes[s]]; self.sizes[i]]);
                }
            }
        }
    }

    pub fn total_size(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// Entry at block `(i, s)`, inner 1-based position `(p, q)`.
    pub fn entry(&self, i: usize, p: usize, s: usize, q: usize) -> Subspace<F> {
        if i == s {
            let ai = self.corner(i, i);
            let d = &self.diag[i];
            if q == 1 {
                ai
            } else if p == q {
                d.subrings[q - 2].clone()
            } else if q > p {
                d.ideals[q - 2].clone()
            } else {
                d.ideals_pq[&(p, q)].clone()
            }
        } else {
            self.off[&(i, s)][p - 1][q - 1].clone()
        }
    }

    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::default();
        let a = &self.base;
        let m = self.idems.len();
        if m == 0 || self.sizes.len() != m || self.diag.len() != m || self.sizes.iter().any(|&s| s == 0) {
            r.failures.push("shape: idempotents, sizes and diagonal data disagree".into());
            return r;
        }
        if let Err(e) = crate::decompose::check_idempotents(a, &self.idems) {
            r.failures.push(format!("idempotents: {e}"));
            return r;
        }
        for i in 0..m {
            let ni = self.sizes[i];
            let d = &self.diag[i];
            if d.subrings.len() != ni - 1
                || d.ideals.len() != ni - 1
                || (3..=ni).any(|p| (2..p).any(|q| !d.ideals_pq.contains_key(&(p, q))))
            {
                r.failures.push(format!("shape: block {} diagonal data has the wrong size", i + 1));
                continue;
            }
            let ai = self.corner(i, i);
            let ei = &self.idems[i];
            let ideal_of_ai = |s: &Subspace<F>| {
                s.is_subspace_of(&ai)
                    && s.basis().iter().all(|x| {
                        ai.basis().iter().all(|y| s.contains(&a.mul(x, y)) && s.contains(&a.mul(y, x)))
                    })
            };
            for l in 2..=ni {
                let b = &d.subrings[l - 2];
                let il = &d.ideals[l - 2];
                r.require(b.is_subspace_of(&ai) && b.contains(ei) && a.is_closed(b), || {
                    format!("subring: B_{}{} is not a subring of A_{} with identity e_{}", i + 1, l, i + 1, i + 1)
                });
                r.require(ideal_of_ai(il), || format!("ideal: I_{}{} is not an ideal of A_{}", i + 1, l, i + 1));
                r.require(il.is_subspace_of(b), || format!("containment: I_{}{} ⊆ B_{}{}", i + 1, l, i + 1, l));
                if l > 2 {
                    r.require(il.is_subspace_of(&d.ideals[l - 3]), || {
                        format!("chain: I_{}{} ⊆ I_{}{}", i + 1, l, i + 1, l - 1)
                    });
                }
            }
            for (&(p, q), ipq) in &d.ideals_pq {
                r.require(ideal_of_ai(ipq), || format!("ideal: I_{}{}{} is not an ideal of A_{}", i + 1, p, q, i + 1));
                r.require(d.ideals[q - 2].is_subspace_of(ipq), || {
                    format!("containment: I_{}{} ⊆ I_{}{}{}", i + 1, q, i + 1, p, q)
                });
            }
        }
        for i in 0..m {
            for s in 0..m {
                if i == s {
                    continue;
                }
                let Some(grid) = self.off.get(&(i, s)) else {
                    r.failures.push(format!("shape: missing block ({}, {})", i + 1, s + 1));
                    continue;
                };
                if grid.len() != self.sizes[i] || grid.iter().any(|row| row.len() != self.sizes[s]) {
                    r.failures.push(format!("shape: block ({}, {}) has the wrong size", i + 1, s + 1));
                    continue;
                }
                let ais = self.corner(i, s);
                for (p, row) in grid.iter().enumerate() {
                    r.require(row[0] == ais, || {
                        format!("first column: block ({}, {}) row {} must start with e_{}Ae_{}", i + 1, s + 1, p + 1, i + 1, s + 1)
                    });
                    for (q, sub) in row.iter().enumerate() {
                        r.require(sub.is_subspace_of(&ais), || {
                            format!("containment: P_{}{},{}{} ⊆ e_{}Ae_{}", i + 1, p + 1, s + 1, q + 1, i + 1, s + 1)
                        });
                    }
                }
                if i < s && self.strict_case2 {
                    r.require(grid.iter().all(|row| *row == grid[0]), || {
                        format!("case II: rows of block ({}, {}) must coincide", i + 1, s + 1)
                    });
                }
            }
        }
        if r.is_valid() {
            if let Err(e) = self.build_unchecked() {
                r.failures.push(format!("closure: {e}"));
            }
        }
        r
    }

    fn entries(&self) -> Vec<Entry<F>> {
        let mut index = Vec::new();
        for (i, &ni) in self.sizes.iter().enumerate() {
            for p in 1..=ni {
                index.push((i, p));
            }
        }
        let mut entries = Vec::with_capacity(index.len() * index.len());
        for &(i, p) in &index {
            for &(s, q) in &index {
                entries.push(Entry::plain(self.entry(i, p, s, q)));
            }
        }
        entries
    }

    fn build_unchecked(&self) -> Result<BuiltRing<F>> {
        let units: Vec<Vec<F::El>> =
            self.idems.iter().zip(&self.sizes).flat_map(|(e, &ni)| std::iter::repeat(e.clone()).take(ni)).collect();
        build_matrix_ring_with_units(&self.base, self.total_size(), self.entries(), &units)
    }
}

pub fn build_block_extension<F: Field>(spec: &BlockExtensionSpec<F>) -> Result<BuiltRing<F>> {
    let r = spec.validate();
    if !r.is_valid() {
        return Err(Error::Invalid(r.failures.join("; ")));
    }
    spec.build_unchecked()
}

/// Rings with `A` on and below the diagonal and ideals `I_ij` above it (1-based `i < j`).
#[derive(Clone, Debug)]
pub struct TiledTriangularSpec<F: Field> {
    pub base: FdAlgebra<F>,
    pub n: usize,
    pub ideals: BTreeMap<(usize, usize), Subspace<F>>,
}

impl<F: Field> TiledTriangularSpec<F> {
    /// Every `I_ij = rad^{j-i}` for the given radical-like ideal.
    pub fn powers(base: FdAlgebra<F>, n: usize, ideal: &Subspace<F>) -> Self {
        let mut ideals = BTreeMap::new();
        for i in 1..=n {
            for j in i + 1..=n {
                ideals.insert((i, j), base.power_space(ideal, j - i));
            }
        }
        TiledTriangularSpec { base, n, ideals }
    }

    pub fn ideal(&self, i: usize, j: usize) -> &Subspace<F> {
        &self.ideals[&(i, j)]
    }

    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::default();
        let a = &self.base;
        if self.n < 1 || (1..=self.n).any(|i| (i + 1..=self.n).any(|j| !self.ideals.contains_key(&(i, j)))) {
            r.failures.push("shape: missing ideals above the diagonal".into());
            return r;
        }
        for (&(i, j), s) in &self.ideals {
            r.require(s.ambient() == a.dim() && a.is_ideal(s), || format!("ideal: I_{i}{j} is not an ideal of A"));
        }
        if r.is_valid() {
            if let Err(e) = self.build_unchecked() {
                r.failures.push(format!("closure: {e}"));
            }
        }
        r
    }

    fn build_unchecked(&self) -> Result<BuiltRing<F>> {
        let n = self.n;
        let entries = (1..=n)
            .flat_map(|i| (1..=n).map(move |j| (i, j)))
            .map(|(i, j)| {
                if j <= i {
                    Entry::plain(self.base.full_space())
                } else {
                    Entry::plain(self.ideal(i, j).clone())
                }
            })
            .collect();
        build_matrix_ring(&self.base, n, entries)
    }
}

pub fn build_tiled_triangular<F: Field>(spec: &TiledTriangularSpec<F>) -> Result<BuiltRing<F>> {
    let r = spec.validate();
    if !r.is_valid() {
        return Err(Error::Invalid(r.failures.join("; ")));
    }
    spec.build_unchecked()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::presets::*;
    use crate::field::Rationals;

    fn dual_numbers_spec() -> LambdaSpec<Rationals> {
        let a = truncated_poly(Rationals, 2);
        let i2 = a.span(vec![a.basis_elem(1)]);
        LambdaSpec::new(a, vec![i2]).unwrap()
    }

    #[test]
    fn lambda_and_sigma_dims() {
        let spec = dual_numbers_spec();
        assert!(spec.validate().is_valid());
        let l = build_lambda(&spec).unwrap();
        assert_eq!(l.algebra.dim(), 7);
        assert!(l.algebra.validate().is_valid());
        assert!(l.entry_mismatches().is_empty());
        assert_eq!(l.algebra.corner(&l.idems[0], &l.idems[1]).unwrap().dim(), 1);
        assert_eq!(l.algebra.corner(&l.idems[1], &l.idems[0]).unwrap().dim(), 2);
        let s = build_sigma(&spec).unwrap();
        assert_eq!(s.algebra.dim(), 4);
        assert!(s.algebra.validate().is_valid());
        assert!(s.entry_mismatches().is_empty());
    }

    #[test]
    fn zero_diagonal_rejected() {
        let a = truncated_poly(Rationals, 2);
        let spec = LambdaSpec::new(a.clone(), vec![a.full_space()]).unwrap();
        assert!(matches!(build_sigma(&spec), Err(Error::ZeroRing(_))));
    }

    #[test]
    fn chain_violation_reported() {
        let a = truncated_poly(Rationals, 2);
        let x = a.span(vec![a.basis_elem(1)]);
        let spec = LambdaSpec::new(a.clone(), vec![x, a.full_space()]).unwrap();
        let r = spec.validate();
        assert!(r.failures.iter().any(|f| f.starts_with("chain: I_3 ⊆ I_2")));
    }

    #[test]
    fn full_matrix_radical() {
        let a = truncated_poly(Rationals, 2);
        let g = build_full_matrix(&a, 3).unwrap();
        assert_eq!(g.algebra.dim(), 18);
        assert_eq!(g.algebra.radical().unwrap().dim(), 9);
        assert_eq!(build_full_matrix(&a, 1).unwrap().algebra.dim(), 2);
    }

    #[test]
    fn single_block_extension_is_lambda() {
        let a = truncated_poly(Rationals, 3);
        let rad = a.radical().unwrap();
        let rad2 = a.power_space(&rad, 2);
        let spec = build_cor33_shape(&a, vec![rad.clone(), rad2.clone()], Cor33Variant::RowPattern).unwrap();
        let lambda = build_lambda(&spec).unwrap();
        let mut ideals_pq = BTreeMap::new();
        ideals_pq.insert((3, 2), rad.clone());
        let be = BlockExtensionSpec {
            base: a.clone(),
            idems: vec![a.unit().to_vec()],
            sizes: vec![3],
            diag: vec![BlockDiag { subrings: vec![a.full_space(); 2], ideals: vec![rad, rad2], ideals_pq }],
            off: BTreeMap::new(),
            strict_case2: true,
        };
        let p = build_block_extension(&be).unwrap();
        assert_eq!(p.algebra, lambda.algebra);
    }

    #[test]
    fn tiled_closure() {
        let a = truncated_poly(Rationals, 3);
        let rad = a.radical().unwrap();
        let spec = TiledTriangularSpec::powers(a.clone(), 3, &rad);
        let phi = build_tiled_triangular(&spec).unwrap();
        assert!(phi.algebra.validate().is_valid());
        let mut bad = spec.clone();
        bad.ideals.insert((1, 3), a.zero_space());
        assert!(!bad.validate().is_valid());
    }
}
