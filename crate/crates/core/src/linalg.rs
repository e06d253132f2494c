//! Dense exact matrices, canonical subspaces and an incremental row reducer.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;

/// `dst += c * src`
pub fn axpy<F: Field>(field: F, dst: &mut [F::El], c: &F::El, src: &[F::El]) {
    if field.is_zero(c) {
        return;
    }
    for (d, s) in dst.iter_mut().zip(src) {
        if !field.is_zero(s) {
            field.add_mul_assign(d, c, s);
        }
    }
}

pub fn scale_vec<F: Field>(field: F, v: &mut [F::El], c: &F::El) {
    for x in v.iter_mut() {
        if !field.is_zero(x) {
            *x = field.mul(x, c);
        }
    }
}

pub fn is_zero_vec<F: Field>(field: F, v: &[F::El]) -> bool {
    v.iter().all(|x| field.is_zero(x))
}

pub fn zero_vec<F: Field>(field: F, n: usize) -> Vec<F::El> {
    vec![field.zero(); n]
}

pub fn unit_vec<F: Field>(field: F, n: usize, i: usize) -> Vec<F::El> {
    let mut v = zero_vec(field, n);
    v[i] = field.one();
    v
}

pub fn add_vec<F: Field>(field: F, a: &[F::El], b: &[F::El]) -> Vec<F::El> {
    a.iter().zip(b).map(|(x, y)| field.add(x, y)).collect()
}

pub fn sub_vec<F: Field>(field: F, a: &[F::El], b: &[F::El]) -> Vec<F::El> {
    a.iter().zip(b).map(|(x, y)| field.sub(x, y)).collect()
}

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::El>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_rows(field: F, cols: usize, rows: Vec<Vec<F::El>>) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged row");
            data.extend(row);
        }
        Matrix { field, rows: r, cols, data }
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_cols(field: F, rows: usize, cols: &[Vec<F::El>]) -> Self {
        let mut m = Self::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged column");
            for (i, x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        m
    }

    pub fn from_fn(field: F, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F::El) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { field, rows, cols, data }
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::El {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::El) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::El] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [F::El] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<F::El> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F::El>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[F::El] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(self.field, &self.data)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.field, self.rows)
    }

    pub fn mul(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if f.is_zero(a) {
                    continue;
                }
                axpy(f, out_row, a, other.row(k));
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F::El]) -> Vec<F::El> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let f = self.field;
        let mut out = zero_vec(f, self.rows);
        for (j, x) in v.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for i in 0..self.rows {
                let a = &self.data[i * self.cols + j];
                if !f.is_zero(a) {
                    f.add_mul_assign(&mut out[i], a, x);
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[F::El]) -> Vec<F::El> {
        assert_eq!(self.rows, v.len(), "vector-matrix shape mismatch");
        let mut out = zero_vec(self.field, self.cols);
        for (i, x) in v.iter().enumerate() {
            axpy(self.field, &mut out, x, self.row(i));
        }
        out
    }

    pub fn add(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = add_vec(self.field, &self.data, &other.data);
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = sub_vec(self.field, &self.data, &other.data);
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &F::El) -> Matrix<F> {
        let mut m = self.clone();
        scale_vec(self.field, &mut m.data, c);
        m
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: &F::El, other: &Matrix<F>) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        axpy(self.field, &mut self.data, c, &other.data);
    }

    pub fn transpose(&self) -> Matrix<F> {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn vstack(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix<F> {
        Matrix::from_fn(self.field, rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Matrix<F>) -> Matrix<F> {
        let mut m = Matrix::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    /// In-place reduced row echelon form; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !f.is_zero(&self.data[i * cols + c])) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(&self.data[r * cols + c]).expect("nonzero pivot");
            scale_vec(f, &mut self.data[r * cols..(r + 1) * cols], &inv);
            let pivot_row: Vec<F::El> = self.row(r).to_vec();
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.data[i * cols + c].clone();
                if f.is_zero(&factor) {
                    continue;
                }
                let neg = f.neg(&factor);
                axpy(f, &mut self.data[i * cols..(i + 1) * cols], &neg, &pivot_row);
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Matrix<F>, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref_in_place();
        (m, p)
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.field, self.cols);
        for i in 0..self.rows {
            ech.insert(self.row(i).to_vec());
        }
        ech.dim()
    }

    /// Basis of `{x : self · x = 0}` in canonical form (one vector per free column,
    /// with a 1 in that column).
    pub fn nullspace(&self) -> Vec<Vec<F::El>> {
        let f = self.field;
        let mut ech = Echelon::new(f, self.cols);
        for i in 0..self.rows {
            ech.insert(self.row(i).to_vec());
        }
        ech.kernel_basis()
    }

    /// One solution of `self · x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[F::El]) -> Option<Vec<F::El>> {
        assert_eq!(b.len(), self.rows);
        let f = self.field;
        let aug = self.hstack(&Matrix::from_cols(f, self.rows, &[b.to_vec()]));
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = zero_vec(f, self.cols);
        for (k, &c) in pivots.iter().enumerate() {
            x[c] = r.get(k, self.cols).clone();
        }
        Some(x)
    }

    /// Solve `self · X = B` column by column.
    pub fn solve_matrix(&self, b: &Matrix<F>) -> Option<Matrix<F>> {
        assert_eq!(b.rows, self.rows);
        let f = self.field;
        let aug = self.hstack(b);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(f, self.cols, b.cols);
        for (k, &c) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(c, j, r.get(k, self.cols + j).clone());
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix<F>> {
        if self.rows != self.cols {
            return None;
        }
        let x = self.solve_matrix(&Matrix::identity(self.field, self.rows))?;
        if self.mul(&x).is_identity() {
            Some(x)
        } else {
            None
        }
    }

    pub fn det(&self) -> F::El {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let f = self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !f.is_zero(m.get(i, c))) else {
                return f.zero();
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = f.neg(&det);
            }
            let piv = m.get(c, c).clone();
            det = f.mul(&det, &piv);
            let inv = f.inv(&piv).expect("nonzero pivot");
            let prow: Vec<F::El> = m.row(c).to_vec();
            for i in c + 1..n {
                let factor = f.mul(m.get(i, c), &inv);
                if f.is_zero(&factor) {
                    continue;
                }
                let neg = f.neg(&factor);
                axpy(f, m.row_mut(i), &neg, &prow);
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

/// Incrementally maintained reduced row echelon basis.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    ambient: usize,
    rows: Vec<Vec<F::El>>,
    pivots: Vec<usize>,
    row_of_col: Vec<Option<usize>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, ambient: usize) -> Self {
        Echelon { field, ambient, rows: Vec::new(), pivots: Vec::new(), row_of_col: vec![None; ambient] }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    /// Residue of `v` after clearing all pivot columns.
    pub fn reduce(&self, mut v: Vec<F::El>) -> Vec<F::El> {
        let f = self.field;
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p].clone();
            if !f.is_zero(&c) {
                let neg = f.neg(&c);
                axpy(f, &mut v, &neg, r);
            }
        }
        v
    }

    pub fn contains(&self, v: &[F::El]) -> bool {
        assert_eq!(v.len(), self.ambient);
        is_zero_vec(self.field, &self.reduce(v.to_vec()))
    }

    /// Adds `v` to the span; returns `true` when the dimension grew.
    pub fn insert(&mut self, v: Vec<F::El>) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let f = self.field;
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[p]).expect("nonzero");
        scale_vec(f, &mut v, &inv);
        for r in self.rows.iter_mut() {
            let c = r[p].clone();
            if !f.is_zero(&c) {
                let neg = f.neg(&c);
                axpy(f, r, &neg, &v);
            }
        }
        self.row_of_col[p] = Some(self.rows.len());
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    /// Rows sorted by pivot column: the canonical RREF basis.
    pub fn into_sorted(self) -> (Vec<Vec<F::El>>, Vec<usize>) {
        let mut idx: Vec<usize> = (0..self.rows.len()).collect();
        idx.sort_by_key(|&i| self.pivots[i]);
        let pivots = idx.iter().map(|&i| self.pivots[i]).collect();
        let mut rows: Vec<Option<Vec<F::El>>> = self.rows.into_iter().map(Some).collect();
        let rows = idx.iter().map(|&i| rows[i].take().expect("each row once")).collect();
        (rows, pivots)
    }

    pub fn into_subspace(self) -> Subspace<F> {
        let field = self.field;
        let ambient = self.ambient;
        let (rows, pivots) = self.into_sorted();
        Subspace { field, ambient, rows, pivots }
    }

    /// Basis of the orthogonal kernel `{x : r·x = 0 for every row r}`.
    pub fn kernel_basis(&self) -> Vec<Vec<F::El>> {
        let f = self.field;
        let mut out = Vec::new();
        for free in 0..self.ambient {
            if self.row_of_col[free].is_some() {
                continue;
            }
            let mut x = unit_vec(f, self.ambient, free);
            for (r, &p) in self.rows.iter().zip(&self.pivots) {
                if !f.is_zero(&r[free]) {
                    x[p] = f.neg(&r[free]);
                }
            }
            out.push(x);
        }
        out
    }
}

/// A subspace of `F^n` stored as its canonical reduced row echelon basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    rows: Vec<Vec<F::El>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: F, ambient: usize) -> Self {
        Subspace { field, ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: F, ambient: usize) -> Self {
        let rows = (0..ambient).map(|i| unit_vec(field, ambient, i)).collect();
        Subspace { field, ambient, rows, pivots: (0..ambient).collect() }
    }

    pub fn span<I>(field: F, ambient: usize, vecs: I) -> Self
    where
        I: IntoIterator<Item = Vec<F::El>>,
    {
        let mut ech = Echelon::new(field, ambient);
        for v in vecs {
            if ech.is_full() {
                break;
            }
            ech.insert(v);
        }
        ech.into_subspace()
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vec<F::El>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Columns that are not pivots: their standard vectors span a complement.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    pub fn to_matrix(&self) -> Matrix<F> {
        Matrix::from_rows(self.field, self.ambient, self.rows.clone())
    }

    pub fn to_echelon(&self) -> Echelon<F> {
        let mut row_of_col = vec![None; self.ambient];
        for (k, &p) in self.pivots.iter().enumerate() {
            row_of_col[p] = Some(k);
        }
        Echelon {
            field: self.field,
            ambient: self.ambient,
            rows: self.rows.clone(),
            pivots: self.pivots.clone(),
            row_of_col,
        }
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is not in the subspace.
    pub fn coordinates(&self, v: &[F::El]) -> Option<Vec<F::El>> {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let f = self.field;
        let coords: Vec<F::El> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (c, r) in coords.iter().zip(&self.rows) {
            let neg = f.neg(c);
            axpy(f, &mut residual, &neg, r);
        }
        if is_zero_vec(f, &residual) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[F::El]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Subspace<F>) -> bool {
        self.dim() <= other.dim() && self.rows.iter().all(|r| other.contains(r))
    }

    /// Linear combination of the basis with the given coordinates.
    pub fn combine(&self, coords: &[F::El]) -> Vec<F::El> {
        assert_eq!(coords.len(), self.dim());
        let mut v = zero_vec(self.field, self.ambient);
        for (c, r) in coords.iter().zip(&self.rows) {
            axpy(self.field, &mut v, c, r);
        }
        v
    }

    pub fn sum(&self, other: &Subspace<F>) -> Subspace<F> {
        let mut ech = self.to_echelon();
        for r in &other.rows {
            ech.insert(r.clone());
        }
        ech.into_subspace()
    }

    pub fn intersection(&self, other: &Subspace<F>) -> Subspace<F> {
        let f = self.field;
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(f, self.ambient);
        }
        // solve Σ a_i u_i − Σ b_j w_j = 0
        let cols: Vec<Vec<F::El>> = self
            .rows
            .iter()
            .cloned()
            .chain(other.rows.iter().map(|w| w.iter().map(|x| f.neg(x)).collect()))
            .collect();
        let sys = Matrix::from_cols(f, self.ambient, &cols);
        let r = self.dim();
        let vecs = sys.nullspace().into_iter().map(|sol| self.combine(&sol[..r]));
        Subspace::span(f, self.ambient, vecs)
    }

    /// Image of the subspace under the linear map `v ↦ m·v`.
    pub fn image(&self, m: &Matrix<F>) -> Subspace<F> {
        Subspace::span(self.field, m.rows(), self.rows.iter().map(|r| m.mul_vec(r)))
    }
}

/// Reduces `v` modulo `sub` so that its entries at `sub`'s pivot columns vanish.
pub fn reduce_mod<F: Field>(sub: &Subspace<F>, v: &[F::El]) -> Vec<F::El> {
    let f = sub.field();
    let mut out = v.to_vec();
    for (r, &p) in sub.basis().iter().zip(sub.pivots()) {
        let c = out[p].clone();
        if !f.is_zero(&c) {
            let neg = f.neg(&c);
            axpy(f, &mut out, &neg, r);
        }
    }
    out
}

pub fn check_len(got: usize, want: usize, what: &str) -> Result<()> {
    if got != want {
        return Err(Error::Dimension(format!("{what}: expected length {want}, got {got}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rat, Rationals};

    fn q(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| Rat::from_int(x)).collect()
    }

    #[test]
    fn rref_and_rank() {
        let m = Matrix::from_rows(Rationals, 3, vec![q(&[1, 2, 3]), q(&[2, 4, 6]), q(&[1, 0, 1])]);
        assert_eq!(m.rank(), 2);
        let (r, p) = m.rref();
        assert_eq!(p, vec![0, 1]);
        assert_eq!(r.row(0), q(&[1, 0, 1]).as_slice());
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(is_zero_vec(Rationals, &m.mul_vec(&ns[0])));
    }

    #[test]
    fn inverse_and_det() {
        let m = Matrix::from_rows(Rationals, 2, vec![q(&[2, 1]), q(&[5, 3])]);
        assert_eq!(m.det(), Rat::one());
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        let s = Matrix::from_rows(Rationals, 2, vec![q(&[1, 2]), q(&[2, 4])]);
        assert!(s.inverse().is_none());
        assert!(Rationals.is_zero(&s.det()));
    }

    #[test]
    fn subspace_canonical_and_intersection() {
        let f = PrimeField::new(7).unwrap();
        let a = Subspace::span(f, 3, vec![vec![1, 1, 0], vec![0, 1, 1]]);
        let b = Subspace::span(f, 3, vec![vec![1, 2, 1], vec![1, 0, 6]]);
        assert_eq!(a, b);
        let c = Subspace::span(f, 3, vec![vec![1, 0, 0], vec![0, 0, 1]]);
        let i = a.intersection(&c);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&[1, 0, 6]));
        assert_eq!(a.sum(&c).dim(), 3);
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = Matrix::from_rows(Rationals, 2, vec![q(&[1, 1]), q(&[1, 1])]);
        assert!(m.solve(&q(&[1, 2])).is_none());
        let x = m.solve(&q(&[3, 3])).unwrap();
        assert_eq!(m.mul_vec(&x), q(&[3, 3]));
    }
}
