//! Higher helicities.
//!
//! Two families live here. The symmetric powers Sym^{2s}(C^2) carry the
//! helicity characters but do not admit a gauge subspace making them a
//! perception model: Phi(B) epsilon(|->) picks up b^{2s} epsilon(|+>), which
//! no little-group invariant complement of epsilon(C^2) can absorb. They are
//! kept for comparison and fail `validate_model`.
//!
//! The working tower uses tensor-spinors. For integer s the space is
//! Sym^s(C^4) with Phi = Sym^s(kappa); for half-integer s it is
//! Sym^{s-1/2}(C^4) (x) C^4 with the Dirac factor diag(A, A^dagger^{-1}).
//! epsilon sends |+-> to eps_+-^s (times a Weyl spinor), and W is spanned by
//! the symmetric products eps_+-^{n-j} p0^j with j >= 1. s = 1 reproduces
//! the photon and s = 2 the graviton quotient metric.

use std::sync::Arc;

use crate::linalg::{c, from_c2, CMat, CVec};
use crate::little_group::{Helicity, LittleGroupElement};
use crate::lorentz::{kappa, rotation, Sl2c};
use crate::mass_shell::MomentumPoint;
use crate::perception::{fiber_at, PerceptionModel};
use crate::photon::{four_to_cvec, polarization};
use crate::little_group::reference_momentum;
use crate::{Result, C64};

/// Multisets of size n from 0..d as nondecreasing index lists, lexicographic.
pub fn multisets(d: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(d: usize, n: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in start..d {
            cur.push(i);
            rec(d, n, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, n, 0, &mut Vec::with_capacity(n), &mut out);
    out
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn multiplicity_factor(m: &[usize]) -> f64 {
    let mut f = 1.0;
    let mut i = 0;
    while i < m.len() {
        let mut j = i;
        while j < m.len() && m[j] == m[i] {
            j += 1;
        }
        f *= factorial(j - i);
        i = j;
    }
    f
}

/// Permanent by Ryser's formula with Gray-code updates.
pub fn permanent(a: &CMat) -> C64 {
    let n = a.nrows();
    if n == 0 {
        return c(1.0);
    }
    let mut rows = vec![c(0.0); n];
    let mut total = c(0.0);
    let mut gray: usize = 0;
    for k in 1..(1usize << n) {
        let g = k ^ (k >> 1);
        let j = (g ^ gray).trailing_zeros() as usize;
        let added = g & (1 << j) != 0;
        for (i, r) in rows.iter_mut().enumerate() {
            if added {
                *r += a[(i, j)];
            } else {
                *r -= a[(i, j)];
            }
        }
        gray = g;
        let prod: C64 = rows.iter().product();
        if g.count_ones() % 2 == n as u32 % 2 {
            total += prod;
        } else {
            total -= prod;
        }
    }
    total
}

/// Sym^n(T) in the orthonormal monomial basis ordered by `multisets`.
pub fn symmetric_power(t: &CMat, n: usize) -> CMat {
    let d = t.nrows();
    let basis = multisets(d, n);
    let norms: Vec<f64> = basis.iter().map(|m| multiplicity_factor(m).sqrt()).collect();
    let dim = basis.len();
    let mut out = CMat::zeros(dim, dim);
    for (r, mr) in basis.iter().enumerate() {
        for (cidx, mc) in basis.iter().enumerate() {
            let sub = CMat::from_fn(n, n, |i, j| t[(mr[i], mc[j])]);
            out[(r, cidx)] = permanent(&sub) / (norms[r] * norms[cidx]);
        }
    }
    out
}

pub fn multiset_index(d: usize, m: &[usize]) -> usize {
    let mut sorted = m.to_vec();
    sorted.sort_unstable();
    multisets(d, m.len()).iter().position(|x| *x == sorted).expect("valid multiset")
}

/// Sigma_s(A) = Sym^{2s}(A) on C^2. Basis index j counts |-> factors.
pub fn sym_power_matrix(two_s: usize, a: &Sl2c) -> CMat {
    symmetric_power(&from_c2(a.matrix()), two_s)
}

fn binomial(n: usize, k: usize) -> f64 {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Coefficients of Sigma_s(B) epsilon(|->) for B = [[z, b], [0, conj z]]:
/// entry j is sqrt(C(2s, j)) b^{2s-j} conj(z)^j.
pub fn lowering_expansion(two_s: usize, k: &LittleGroupElement) -> CVec {
    CVec::from_iterator(
        two_s + 1,
        (0..=two_s).map(|j| k.b.powi((two_s - j) as i32) * k.z.conj().powi(j as i32) * binomial(two_s, j).sqrt()),
    )
}

fn unit(dim: usize, i: usize) -> CVec {
    let mut v = CVec::zeros(dim);
    v[i] = c(1.0);
    v
}

/// Sym^{2s}(C^2) with epsilon at the extreme weights and W spanned by the
/// intermediate weights.
pub fn build_sympower_model(two_s: i32) -> PerceptionModel {
    let n = two_s.max(1) as usize;
    let dim = n + 1;
    let eps = CMat::from_columns(&[unit(dim, 0), unit(dim, n)]);
    let w_cols: Vec<CVec> = (1..n).map(|j| unit(dim, j)).collect();
    let w = if w_cols.is_empty() { CMat::zeros(dim, 0) } else { CMat::from_columns(&w_cols) };
    PerceptionModel {
        name: format!("sympow:{two_s}"),
        helicity: Helicity::from_twice(n as i32),
        dim,
        phi: Arc::new(move |a| sym_power_matrix(n, a)),
        epsilon: eps,
        w_basis: w,
    }
}

/// Unitary whose columns are eps_+, eps_-, p0/sqrt 2, (1,0,0,-1)/sqrt 2.
fn helicity_frame() -> CMat {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let p = four_to_cvec(&reference_momentum()) * c(h);
    let q = CVec::from_vec(vec![c(h), c(0.0), c(0.0), c(-h)]);
    CMat::from_columns(&[polarization(true), polarization(false), p, q])
}

/// Dirac representation diag(A, A^dagger^{-1}).
pub fn dirac(a: &Sl2c) -> CMat {
    let m = crate::parity::phi_embed(a);
    CMat::from_fn(4, 4, |i, j| m[(i, j)])
}

pub fn build_spin_model(two_s: i32) -> PerceptionModel {
    let two_s = two_s.max(1);
    let half = two_s % 2 == 1;
    let n = (two_s / 2) as usize;
    let frame = symmetric_power(&helicity_frame(), n);
    let mono = |plus: usize, gauge: usize| -> CVec {
        let mut m = vec![if plus == 0 { 0 } else { 1 }; n - gauge];
        m.extend(std::iter::repeat_n(2, gauge));
        frame.column(multiset_index(4, &m)).into_owned()
    };
    let spinor_plus = unit(4, 0);
    let spinor_minus = unit(4, 3);
    let attach = |v: CVec, spin: &CVec| if half { v.kronecker(spin) } else { v };
    let eps = CMat::from_columns(&[attach(mono(0, 0), &spinor_plus), attach(mono(1, 0), &spinor_minus)]);
    let mut w_cols = Vec::new();
    for j in 1..=n {
        w_cols.push(attach(mono(0, j), &spinor_plus));
        if half || j < n {
            w_cols.push(attach(mono(1, j), &spinor_minus));
        }
    }
    let base_dim = frame.nrows();
    let dim = if half { base_dim * 4 } else { base_dim };
    let w = if w_cols.is_empty() { CMat::zeros(dim, 0) } else { CMat::from_columns(&w_cols) };
    let phi: crate::perception::PhiFn = Arc::new(move |a: &Sl2c| {
        let k = crate::linalg::from_real4(&kappa(a).0);
        let sym = symmetric_power(&k, n);
        if half {
            sym.kronecker(&dirac(a))
        } else {
            sym
        }
    });
    PerceptionModel {
        name: format!("spin:{two_s}"),
        helicity: Helicity::from_twice(two_s),
        dim,
        phi,
        epsilon: eps,
        w_basis: w,
    }
}

pub fn gauge_dimension(two_s: i32) -> usize {
    (two_s - 1).max(0) as usize
}

pub fn numerical_gauge_rank(m: &PerceptionModel, p: &MomentumPoint) -> Result<usize> {
    Ok(crate::linalg::numerical_rank(&fiber_at(m, p)?.d_basis))
}

/// Eigenvalues of i d/dtheta Phi(exp(theta J3)) at theta = 0, ascending.
pub fn j3_spectrum(m: &PerceptionModel) -> Vec<f64> {
    let h = 1e-4;
    let g = (m.phi(&rotation(3, h)) - m.phi(&rotation(3, -h))) * C64::new(0.0, 1.0 / (2.0 * h));
    let herm = (&g + g.adjoint()) * c(0.5);
    let mut ev: Vec<f64> = herm.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ev
}
