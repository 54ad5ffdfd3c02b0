//! Dense exact linear algebra: matrices, canonical subspaces, kernels,
//! images, linear solves and pullbacks.

use std::fmt;

use crate::error::{ensure_dim, Error, Result};
use crate::field::{FieldSpec, Scalar};

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_neg(a: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|x| -x).collect()
}

pub fn vec_scale(c: &Scalar, a: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|x| c * x).collect()
}

pub fn is_zero_vec(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}

/// `(u, v) -> u ++ v`
pub fn concat(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().chain(b).cloned().collect()
}

pub(crate) fn check_vector(field: FieldSpec, v: &[Scalar], len: usize, context: &'static str) -> Result<()> {
    ensure_dim(context, len, v.len())?;
    if let Some(bad) = v.iter().find(|s| s.field() != field) {
        return Err(Error::FieldMismatch(field.to_string(), bad.field().to_string()));
    }
    Ok(())
}

/// A dense row-major matrix over a single field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn new(field: FieldSpec, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        ensure_dim("matrix entries", rows * cols, data.len())?;
        check_vector(field, &data, rows * cols, "matrix entries")?;
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(field: FieldSpec, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            ensure_dim("matrix row", cols, r.len())?;
            data.extend(r);
        }
        Matrix::new(field, n, cols, data)
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[Vec<Scalar>]) -> Result<Self> {
        for c in columns {
            check_vector(field, c, rows, "matrix column")?;
        }
        Ok(Matrix::from_fn(field, rows, columns.len(), |r, c| columns[c][r].clone()))
    }

    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: field.zeros(rows * cols),
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        Matrix::from_fn(field, n, n, |r, c| if r == c { field.one() } else { field.zero() })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    /// `self * v`.
    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        check_vector(self.field, v, self.cols, "matrix-vector product")?;
        Ok(self.mul_vec(v))
    }

    pub(crate) fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        debug_assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Matrix product `self * rhs`, i.e. the composite "first `rhs`, then `self`".
    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_field(rhs)?;
        ensure_dim("matrix product", self.cols, rhs.rows)?;
        Ok(Matrix::from_fn(self.field, self.rows, rhs.cols, |r, c| {
            let mut acc = self.field.zero();
            for k in 0..self.cols {
                let a = self.get(r, k);
                let b = rhs.get(k, c);
                if !a.is_zero() && !b.is_zero() {
                    acc += &(a * b);
                }
            }
            acc
        }))
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_same_shape(rhs)?;
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: vec_add(&self.data, &rhs.data),
        })
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_same_shape(rhs)?;
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: vec_sub(&self.data, &rhs.data),
        })
    }

    pub fn neg(&self) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: vec_neg(&self.data),
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    /// `[self | rhs]`
    pub fn hstack(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_field(rhs)?;
        ensure_dim("horizontal stack", self.rows, rhs.rows)?;
        Ok(Matrix::from_fn(self.field, self.rows, self.cols + rhs.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                rhs.get(r, c - self.cols).clone()
            }
        }))
    }

    /// `[self ; rhs]`
    pub fn vstack(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_field(rhs)?;
        ensure_dim("vertical stack", self.cols, rhs.cols)?;
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        Ok(Matrix {
            field: self.field,
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn block_diag(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_field(rhs)?;
        let f = self.field;
        Ok(Matrix::from_fn(f, self.rows + rhs.rows, self.cols + rhs.cols, |r, c| {
            match (r < self.rows, c < self.cols) {
                (true, true) => self.get(r, c).clone(),
                (false, false) => rhs.get(r - self.rows, c - self.cols).clone(),
                _ => f.zero(),
            }
        }))
    }

    /// Reduced row-echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut rows: Vec<Vec<Scalar>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let pivots = rref_in_place(&mut rows, self.cols);
        let m = Matrix::from_fn(self.field, self.rows, self.cols, |r, c| rows[r][c].clone());
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let f = self.field;
        let mut basis = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = f.zeros(self.cols);
            v[free] = f.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(i, free);
            }
            basis.push(v);
        }
        Subspace::span_unchecked(f, self.cols, basis)
    }

    pub fn image(&self) -> Subspace {
        let cols = (0..self.cols).map(|c| self.column(c)).collect();
        Subspace::span_unchecked(self.field, self.rows, cols)
    }

    /// Kernel and image; `dim kernel + dim image == cols`.
    pub fn kernel_image(&self) -> (Subspace, Subspace) {
        (self.kernel(), self.image())
    }

    /// A particular solution of `self * x = b`, or `Ok(None)` when `b` is not
    /// in the image. A wrong-length `b` is an error.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        check_vector(self.field, b, self.rows, "right-hand side")?;
        let mut rows: Vec<Vec<Scalar>> = (0..self.rows)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.push(b[r].clone());
                row
            })
            .collect();
        let pivots = rref_in_place(&mut rows, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = self.field.zeros(self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = rows[i][self.cols].clone();
        }
        Ok(Some(x))
    }

    pub fn is_bijective(&self) -> bool {
        self.rows == self.cols && self.rank() == self.cols
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.cols
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Matrix::zeros(self.field, 0, 0));
        }
        let aug = self.hstack(&Matrix::identity(self.field, n)).ok()?;
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Matrix::from_fn(self.field, n, n, |i, j| r.get(i, n + j).clone()))
    }

    /// A left inverse `L` with `L * self = I`, when `self` has full column rank.
    pub fn left_inverse(&self) -> Option<Matrix> {
        if !self.is_injective() {
            return None;
        }
        // Rows of a full-column-rank matrix contain an invertible square block;
        // pick it from the pivots of the transpose.
        let (_, pivots) = self.transpose().rref();
        let block = Matrix::from_fn(self.field, self.cols, self.cols, |i, j| {
            self.get(pivots[i], j).clone()
        });
        let inv = block.inverse()?;
        Some(Matrix::from_fn(self.field, self.cols, self.rows, |i, r| {
            match pivots.iter().position(|&p| p == r) {
                Some(k) => inv.get(i, k).clone(),
                None => self.field.zero(),
            }
        }))
    }

    fn check_field(&self, rhs: &Matrix) -> Result<()> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch(self.field.to_string(), rhs.field.to_string()));
        }
        Ok(())
    }

    fn check_same_shape(&self, rhs: &Matrix) -> Result<()> {
        self.check_field(rhs)?;
        ensure_dim("matrix rows", self.rows, rhs.rows)?;
        ensure_dim("matrix cols", self.cols, rhs.cols)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|s| s.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Gauss-Jordan elimination on the first `ncols` columns; returns pivot columns.
fn rref_in_place(rows: &mut [Vec<Scalar>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut lead = 0;
    for col in 0..ncols {
        if lead == rows.len() {
            break;
        }
        let Some(pr) = (lead..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(lead, pr);
        let inv = rows[lead][col].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for x in rows[lead].iter_mut() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = rows[lead].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == lead || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &(&factor * p);
                }
            }
        }
        pivots.push(col);
        lead += 1;
    }
    pivots
}

/// A linear subspace stored by its unique reduced row-echelon basis, so that
/// equal subspaces compare equal regardless of how they were produced.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: FieldSpec,
    ambient_dim: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(field: FieldSpec, ambient_dim: usize, vectors: Vec<Vec<Scalar>>) -> Result<Self> {
        for v in &vectors {
            check_vector(field, v, ambient_dim, "spanning vector")?;
        }
        Ok(Subspace::span_unchecked(field, ambient_dim, vectors))
    }

    pub(crate) fn span_unchecked(field: FieldSpec, ambient_dim: usize, mut vectors: Vec<Vec<Scalar>>) -> Self {
        let pivots = rref_in_place(&mut vectors, ambient_dim);
        vectors.truncate(pivots.len());
        Subspace {
            field,
            ambient_dim,
            basis: vectors,
            pivots,
        }
    }

    pub fn zero(field: FieldSpec, ambient_dim: usize) -> Self {
        Subspace {
            field,
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient_dim: usize) -> Self {
        Subspace {
            field,
            ambient_dim,
            basis: (0..ambient_dim).map(|i| field.unit(ambient_dim, i)).collect(),
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The canonical (reduced row-echelon) basis.
    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` is outside
    /// the subspace. Because the basis is reduced, the coordinates are the
    /// entries of `v` at the pivot columns.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if v.len() != self.ambient_dim {
            return None;
        }
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        (self.combine(&coords) == v).then_some(coords)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    /// `sum_i coords[i] * basis[i]`
    pub fn combine(&self, coords: &[Scalar]) -> Vec<Scalar> {
        debug_assert_eq!(coords.len(), self.dim());
        let mut out = self.field.zeros(self.ambient_dim);
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b) {
                if !x.is_zero() {
                    *o += &(c * x);
                }
            }
        }
        out
    }

    /// Matrix whose columns are the canonical basis vectors.
    pub fn inclusion(&self) -> Matrix {
        Matrix::from_fn(self.field, self.ambient_dim, self.dim(), |r, c| self.basis[c][r].clone())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim && self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let vectors = self.basis.iter().chain(&other.basis).cloned().collect();
        Ok(Subspace::span_unchecked(self.field, self.ambient_dim, vectors))
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        // Solve sum a_i u_i - sum b_j w_j = 0 and map the `a` part back.
        let k = self.dim();
        let stacked = self.inclusion().hstack(&other.inclusion().neg())?;
        let vectors = stacked
            .kernel()
            .basis()
            .iter()
            .map(|sol| self.combine(&sol[..k]))
            .collect();
        Ok(Subspace::span_unchecked(self.field, self.ambient_dim, vectors))
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        ensure_dim("subspace ambient dimension", self.ambient_dim, other.ambient_dim)
    }
}

/// `point + direction`, e.g. the star of an internal groupoid at an object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSubspace {
    pub point: Vec<Scalar>,
    pub direction: Subspace,
}

impl AffineSubspace {
    pub fn contains(&self, v: &[Scalar]) -> bool {
        v.len() == self.point.len() && self.direction.contains(&vec_sub(v, &self.point))
    }
}

pub fn kernel_image(m: &Matrix) -> (Subspace, Subspace) {
    m.kernel_image()
}

pub fn solve(m: &Matrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    m.solve(b)
}

pub fn is_bijective(m: &Matrix) -> bool {
    m.is_bijective()
}

/// Basis of `{(u, v) in U (+) V : f(u) = g(v)}` for `f: U -> W`, `g: V -> W`,
/// computed as the kernel of `(u, v) -> f(u) - g(v)`.
pub fn pullback_basis(f: &Matrix, g: &Matrix) -> Result<Subspace> {
    if f.field() != g.field() {
        return Err(Error::FieldMismatch(f.field().to_string(), g.field().to_string()));
    }
    ensure_dim("pullback target", f.rows(), g.rows())?;
    Ok(f.hstack(&g.neg())?.kernel())
}
