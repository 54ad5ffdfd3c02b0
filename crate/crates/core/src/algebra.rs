//! Leibniz algebras given by structure constants, and linear maps between them.

use std::sync::Arc;

use crate::error::{ensure_dim, Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{check_vector, is_zero_vec, vec_add, vec_sub, Matrix, Subspace};
use crate::tensor::Tensor3;

/// Outcome of checking a candidate structure-constant tensor.
///
/// All three flags are decided on basis elements only. Bilinearity makes that
/// exact; no sampling is involved.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AlgebraReport {
    pub leibniz_ok: bool,
    pub abelian: bool,
    pub lie: bool,
}

/// Checks a candidate `n x n x n` tensor against the Leibniz identity
/// `[x,[y,z]] = [[x,y],z] - [[x,z],y]` on all basis triples.
///
/// `lie` uses the polarized form of `[x,x] = 0`: `c[i][i] = 0` and
/// `c[i][j] + c[j][i] = 0`, which is correct in characteristic 2 as well.
pub fn validate_algebra(c: &Tensor3) -> Result<AlgebraReport> {
    let [a, b, k] = c.dims();
    if a != b || b != k {
        return Err(Error::Malformed(format!(
            "structure constants must be n x n x n, got {a} x {b} x {k}"
        )));
    }
    let n = a;
    let mut leibniz_ok = true;
    'outer: for i in 0..n {
        for j in 0..n {
            let ij = c.basis_product(i, j);
            for l in 0..n {
                let lhs = c.eval_unchecked(&unit(c.field(), n, i), c.basis_product(j, l));
                let t1 = c.eval_unchecked(ij, &unit(c.field(), n, l));
                let t2 = c.eval_unchecked(c.basis_product(i, l), &unit(c.field(), n, j));
                if lhs != vec_sub(&t1, &t2) {
                    leibniz_ok = false;
                    break 'outer;
                }
            }
        }
    }
    let abelian = c.is_zero();
    let lie = (0..n).all(|i| is_zero_vec(c.basis_product(i, i)))
        && (0..n).all(|i| {
            (i + 1..n).all(|j| is_zero_vec(&vec_add(c.basis_product(i, j), c.basis_product(j, i))))
        });
    Ok(AlgebraReport {
        leibniz_ok,
        abelian,
        lie,
    })
}

fn unit(f: FieldSpec, n: usize, i: usize) -> Vec<Scalar> {
    f.unit(n, i)
}

pub(crate) fn default_basis(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("e{i}")).collect()
}

/// A finite-dimensional Leibniz algebra. Values of this type have passed
/// [`validate_algebra`]; raw tensors are the unvalidated form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LeibnizAlgebra {
    tensor: Tensor3,
    basis: Vec<String>,
}

impl LeibnizAlgebra {
    /// Validates `tensor` and wraps it. Basis labels default to `e1..en`.
    pub fn new(tensor: Tensor3, basis: Option<Vec<String>>) -> Result<Self> {
        let report = validate_algebra(&tensor)?;
        if !report.leibniz_ok {
            return Err(Error::Invalid(
                "structure constants violate the Leibniz identity".into(),
            ));
        }
        let n = tensor.dims()[0];
        let basis = match basis {
            Some(b) => {
                ensure_dim("basis labels", n, b.len())?;
                b
            }
            None => default_basis(n),
        };
        Ok(LeibnizAlgebra { tensor, basis })
    }

    pub fn abelian(field: FieldSpec, n: usize) -> Self {
        LeibnizAlgebra {
            tensor: Tensor3::zeros(field, n, n, n),
            basis: default_basis(n),
        }
    }

    pub fn zero(field: FieldSpec) -> Self {
        LeibnizAlgebra::abelian(field, 0)
    }

    pub fn field(&self) -> FieldSpec {
        self.tensor.field()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn tensor(&self) -> &Tensor3 {
        &self.tensor
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn with_basis_names(mut self, names: Vec<String>) -> Result<Self> {
        ensure_dim("basis labels", self.dim(), names.len())?;
        self.basis = names;
        Ok(self)
    }

    pub fn report(&self) -> AlgebraReport {
        validate_algebra(&self.tensor).expect("validated tensor is square")
    }

    pub fn is_abelian(&self) -> bool {
        self.tensor.is_zero()
    }

    /// `[x, y]`
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        self.tensor.eval(x, y)
    }

    pub(crate) fn br(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.tensor.eval_unchecked(x, y)
    }

    /// `[e_i, e_j]`
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Scalar] {
        self.tensor.basis_product(i, j)
    }

    pub fn unit(&self, i: usize) -> Vec<Scalar> {
        self.field().unit(self.dim(), i)
    }

    pub fn zero_vector(&self) -> Vec<Scalar> {
        self.field().zeros(self.dim())
    }

    pub fn check_vector(&self, v: &[Scalar]) -> Result<()> {
        check_vector(self.field(), v, self.dim(), "algebra element")
    }

    /// True iff `[a, s]` and `[s, a]` both lie in `s`, checked on basis pairs.
    pub fn is_ideal(&self, s: &Subspace) -> Result<bool> {
        self.check_subspace(s)?;
        for b in s.basis() {
            for i in 0..self.dim() {
                let e = self.unit(i);
                if !s.contains(&self.br(&e, b)) || !s.contains(&self.br(b, &e)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> Result<bool> {
        self.check_subspace(s)?;
        Ok(s.basis()
            .iter()
            .all(|a| s.basis().iter().all(|b| s.contains(&self.br(a, b)))))
    }

    /// The subalgebra carried by `s`, in the coordinates of the canonical basis of `s`.
    pub fn subalgebra(&self, s: &Subspace) -> Result<LeibnizAlgebra> {
        self.check_subspace(s)?;
        let basis = s.basis();
        let mut data = Vec::with_capacity(basis.len().pow(3));
        for a in basis {
            for b in basis {
                let coords = s.coordinates(&self.br(a, b)).ok_or_else(|| {
                    Error::Invalid("subspace is not closed under the bracket".into())
                })?;
                data.extend(coords);
            }
        }
        let k = basis.len();
        let tensor = Tensor3::from_flat(self.field(), [k, k, k], data)?;
        LeibnizAlgebra::new(tensor, None)
    }

    /// `self x other` with componentwise bracket; coordinates are `(a, b)`.
    pub fn direct_product(&self, other: &LeibnizAlgebra) -> Result<LeibnizAlgebra> {
        same_field(self.field(), other.field())?;
        let (n, m) = (self.dim(), other.dim());
        let f = self.field();
        let tensor = Tensor3::from_fn(f, [n + m, n + m, n + m], |i, j| {
            let mut out = f.zeros(n + m);
            if i < n && j < n {
                out[..n].clone_from_slice(self.bracket_basis(i, j));
            } else if i >= n && j >= n {
                out[n..].clone_from_slice(other.bracket_basis(i - n, j - n));
            }
            out
        });
        let names = self
            .basis
            .iter()
            .map(|a| format!("({a},0)"))
            .chain(other.basis.iter().map(|b| format!("(0,{b})")))
            .collect();
        LeibnizAlgebra::new(tensor, Some(names))
    }

    fn check_subspace(&self, s: &Subspace) -> Result<()> {
        same_field(self.field(), s.field())?;
        ensure_dim("subspace ambient dimension", self.dim(), s.ambient_dim())
    }
}

pub(crate) fn same_field(a: FieldSpec, b: FieldSpec) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::FieldMismatch(a.to_string(), b.to_string()))
    }
}

pub fn direct_product(a: &LeibnizAlgebra, b: &LeibnizAlgebra) -> Result<LeibnizAlgebra> {
    a.direct_product(b)
}

pub fn is_ideal(a: &LeibnizAlgebra, s: &Subspace) -> Result<bool> {
    a.is_ideal(s)
}

/// A linear map between the underlying spaces of two algebras. The matrix is
/// `target.dim x source.dim`; whether it respects brackets is a separate check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMorphism {
    source: Arc<LeibnizAlgebra>,
    target: Arc<LeibnizAlgebra>,
    matrix: Matrix,
}

impl LinearMorphism {
    pub fn new(source: Arc<LeibnizAlgebra>, target: Arc<LeibnizAlgebra>, matrix: Matrix) -> Result<Self> {
        same_field(source.field(), target.field())?;
        same_field(source.field(), matrix.field())?;
        ensure_dim("morphism rows", target.dim(), matrix.rows())?;
        ensure_dim("morphism cols", source.dim(), matrix.cols())?;
        Ok(LinearMorphism {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(a: Arc<LeibnizAlgebra>) -> Self {
        let matrix = Matrix::identity(a.field(), a.dim());
        LinearMorphism {
            source: a.clone(),
            target: a,
            matrix,
        }
    }

    pub fn zero(source: Arc<LeibnizAlgebra>, target: Arc<LeibnizAlgebra>) -> Result<Self> {
        let m = Matrix::zeros(source.field(), target.dim(), source.dim());
        LinearMorphism::new(source, target, m)
    }

    pub fn source(&self) -> &Arc<LeibnizAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<LeibnizAlgebra> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.matrix.apply(v)
    }

    pub(crate) fn at(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(v)
    }

    /// `self . first`
    pub fn compose(&self, first: &LinearMorphism) -> Result<LinearMorphism> {
        if first.target != self.source {
            return Err(Error::Malformed("composite of non-adjacent morphisms".into()));
        }
        LinearMorphism::new(first.source.clone(), self.target.clone(), self.matrix.mul(&first.matrix)?)
    }

    /// `f[e_i, e_j] = [f e_i, f e_j]` for all basis pairs.
    pub fn check_morphism(&self) -> bool {
        let n = self.source.dim();
        let images: Vec<Vec<Scalar>> = (0..n).map(|c| self.matrix.column(c)).collect();
        (0..n).all(|i| {
            (0..n).all(|j| self.at(self.source.bracket_basis(i, j)) == self.target.br(&images[i], &images[j]))
        })
    }

    pub fn kernel(&self) -> Subspace {
        self.matrix.kernel()
    }

    pub fn image(&self) -> Subspace {
        self.matrix.image()
    }

    pub fn is_bijective(&self) -> bool {
        self.matrix.is_bijective()
    }
}

pub fn check_morphism(f: &LinearMorphism) -> bool {
    f.check_morphism()
}
