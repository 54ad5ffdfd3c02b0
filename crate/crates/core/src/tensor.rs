use crate::error::{ensure_dim, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::check_vector;

/// A bilinear map `K^a x K^b -> K^c` stored by its values on basis pairs:
/// `get(i, j, k)` is the coefficient of `e_k` in the image of `(e_i, e_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tensor3 {
    field: FieldSpec,
    dims: [usize; 3],
    data: Vec<Scalar>,
}

impl Tensor3 {
    pub fn zeros(field: FieldSpec, left: usize, right: usize, out: usize) -> Self {
        Tensor3 {
            field,
            dims: [left, right, out],
            data: field.zeros(left * right * out),
        }
    }

    /// Flat data in `(i, j, k)` lexicographic order.
    pub fn from_flat(field: FieldSpec, dims: [usize; 3], data: Vec<Scalar>) -> Result<Self> {
        let len = dims[0] * dims[1] * dims[2];
        ensure_dim("tensor entries", len, data.len())?;
        check_vector(field, &data, len, "tensor entries")?;
        Ok(Tensor3 { field, dims, data })
    }

    pub fn from_fn(
        field: FieldSpec,
        dims: [usize; 3],
        mut f: impl FnMut(usize, usize) -> Vec<Scalar>,
    ) -> Self {
        let mut data = Vec::with_capacity(dims[0] * dims[1] * dims[2]);
        for i in 0..dims[0] {
            for j in 0..dims[1] {
                let v = f(i, j);
                debug_assert_eq!(v.len(), dims[2]);
                data.extend(v);
            }
        }
        Tensor3 { field, dims, data }
    }

    /// Builds a tensor from sparse `(i, j, k, c)` entries; repeated positions add.
    pub fn from_entries(
        field: FieldSpec,
        dims: [usize; 3],
        entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
    ) -> Result<Self> {
        let mut t = Tensor3::zeros(field, dims[0], dims[1], dims[2]);
        for (i, j, k, c) in entries {
            for (idx, bound) in [(i, dims[0]), (j, dims[1]), (k, dims[2])] {
                if idx >= bound {
                    return Err(crate::Error::Malformed(format!(
                        "tensor index {idx} out of range 0..{bound}"
                    )));
                }
            }
            check_vector(field, std::slice::from_ref(&c), 1, "tensor entry")?;
            let pos = t.offset(i, j) + k;
            t.data[pos] += &c;
        }
        Ok(t)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn flat(&self) -> &[Scalar] {
        &self.data
    }

    fn offset(&self, i: usize, j: usize) -> usize {
        (i * self.dims[1] + j) * self.dims[2]
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.data[self.offset(i, j) + k]
    }

    /// Image of the basis pair `(e_i, e_j)`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[Scalar] {
        let o = self.offset(i, j);
        &self.data[o..o + self.dims[2]]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Nonzero entries in `(i, j, k)` order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> + '_ {
        let [_, b, c] = self.dims;
        self.data
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_zero())
            .map(move |(n, s)| (n / (b * c), (n / c) % b, n % c, s))
    }

    pub(crate) fn eval_unchecked(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.field.zeros(self.dims[2]);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (o, t) in out.iter_mut().zip(self.basis_product(i, j)) {
                    if !t.is_zero() {
                        *o += &(&c * t);
                    }
                }
            }
        }
        out
    }

    /// `sum_ij x_i y_j T[i][j][.]`
    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        check_vector(self.field, x, self.dims[0], "left argument")?;
        check_vector(self.field, y, self.dims[1], "right argument")?;
        Ok(self.eval_unchecked(x, y))
    }
}
