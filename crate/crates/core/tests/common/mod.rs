#![allow(dead_code)]

use std::sync::Arc;

use leibniz_core::enumerate::{enumerate_xmods, small_algebras};
use leibniz_core::{CrossedModule, FieldSpec, LeibnizAlgebra, Matrix, Scalar, Tensor3};

pub fn gf(p: u32) -> FieldSpec {
    FieldSpec::prime(p).unwrap()
}

pub fn vec_of(f: FieldSpec, xs: &[i64]) -> Vec<Scalar> {
    xs.iter().map(|&x| f.from_i64(x)).collect()
}

pub fn matrix_of(f: FieldSpec, rows: usize, cols: usize, xs: &[i64]) -> Matrix {
    Matrix::new(f, rows, cols, xs.iter().map(|&x| f.from_i64(x)).collect()).unwrap()
}

/// All valid crossed modules over GF(p) with both algebras of dimension at
/// most `max_dim`.
pub fn all_xmods(max_dim: usize, p: u32) -> Vec<CrossedModule> {
    let algs = small_algebras(max_dim, p).unwrap();
    let mut out = Vec::new();
    for l1 in &algs {
        for l0 in &algs {
            out.extend(enumerate_xmods(l1, l0).unwrap());
        }
    }
    out
}

/// `a` with its bracket transported along the invertible `t`:
/// `[u, v]' = t [t^-1 u, t^-1 v]`.
pub fn transport(a: &LeibnizAlgebra, t: &Matrix) -> LeibnizAlgebra {
    let inv = t.inverse().expect("invertible");
    let n = a.dim();
    let f = a.field();
    let tensor = Tensor3::from_fn(f, [n, n, n], |i, j| {
        let u = inv.apply(&f.unit(n, i)).unwrap();
        let v = inv.apply(&f.unit(n, j)).unwrap();
        t.apply(&a.bracket(&u, &v).unwrap()).unwrap()
    });
    LeibnizAlgebra::new(tensor, None).unwrap()
}

pub fn arc(a: LeibnizAlgebra) -> Arc<LeibnizAlgebra> {
    Arc::new(a)
}
