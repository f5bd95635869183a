//! Small helpers over complex dense matrices.

use nalgebra::{DMatrix, DVector, Dim, Matrix, RawStorage};

use crate::tolerances::RANK_REL;
use crate::C64;

pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

pub fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

pub fn singular_values(m: &CMat) -> Vec<f64> {
    if m.ncols() == 0 || m.nrows() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.partial_cmp(a).unwrap());
    s
}

/// Number of singular values above RANK_REL times the largest.
pub fn numerical_rank(m: &CMat) -> usize {
    let s = singular_values(m);
    match s.first() {
        None => 0,
        Some(&top) if top == 0.0 => 0,
        Some(&top) => s.iter().filter(|v| **v > RANK_REL * top).count(),
    }
}

/// Orthonormal basis of the column span.
pub fn orthonormal_basis(m: &CMat) -> CMat {
    let rows = m.nrows();
    if m.ncols() == 0 {
        return CMat::zeros(rows, 0);
    }
    let r = numerical_rank(m);
    let svd = m.clone().svd(true, false);
    let u = svd.u.expect("u requested");
    let mut idx: Vec<usize> = (0..svd.singular_values.len()).collect();
    idx.sort_by(|a, b| svd.singular_values[*b].partial_cmp(&svd.singular_values[*a]).unwrap());
    let cols: Vec<CVec> = idx[..r].iter().map(|&i| u.column(i).into_owned()).collect();
    if cols.is_empty() {
        CMat::zeros(rows, 0)
    } else {
        CMat::from_columns(&cols)
    }
}

/// Orthogonal projector onto the column span.
pub fn projector(m: &CMat) -> CMat {
    let q = orthonormal_basis(m);
    &q * q.adjoint()
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

pub fn max_abs(m: &CMat) -> f64 {
    cmax(m)
}

/// Largest entry modulus of any complex matrix.
pub fn cmax<R: Dim, C: Dim, S: RawStorage<C64, R, C>>(m: &Matrix<C64, R, C, S>) -> f64 {
    m.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()))
}

pub fn vec_norm(v: &CVec) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn from_real4(m: &nalgebra::Matrix4<f64>) -> CMat {
    CMat::from_fn(4, 4, |i, j| c(m[(i, j)]))
}

pub fn from_c2(m: &nalgebra::Matrix2<C64>) -> CMat {
    CMat::from_fn(2, 2, |i, j| m[(i, j)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_projector() {
        let m = CMat::from_row_slice(3, 2, &[c(1.0), c(2.0), c(0.0), c(0.0), c(1.0), c(2.0)]);
        assert_eq!(numerical_rank(&m), 1);
        let p = projector(&m);
        assert!(max_abs(&(&p * &p - &p)) < 1e-14);
        assert_eq!(numerical_rank(&CMat::zeros(4, 0)), 0);
    }
}
